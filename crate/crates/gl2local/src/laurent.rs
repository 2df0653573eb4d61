//! Finitely supported complex Laurent polynomials in a formal variable t.
//!
//! Carrier of the dual-Kirillov components F(ν, t) and the C-functions.
//! Products of geometric expansions are truncated to a declared window
//! [lo, hi]; a `truncated` flag records when a computation touched the
//! window edge.

use num_complex::Complex64;
use std::collections::BTreeMap;

/// Degree window [lo, hi] for truncated expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty window [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    /// Mirror image under t -> 1/t.
    pub fn flipped(&self) -> Self {
        Self {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

/// Sum of c_n t^n with finitely many nonzero c_n.
#[derive(Debug, Clone, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Complex64>,
    /// set when some operation dropped terms outside a declared window
    pub truncated: bool,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(n: i64, c: Complex64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c.norm() > 0.0 {
            coeffs.insert(n, c);
        }
        Self {
            coeffs,
            truncated: false,
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let mut p = Self::zero();
        for (n, c) in terms {
            p.add_term(n, c);
        }
        p
    }

    /// Geometric series of a^k t^k over k >= 0, restricted to the window.
    pub fn geometric(a: Complex64, window: Window) -> Self {
        let mut coeffs = BTreeMap::new();
        let mut acc = Complex64::new(1.0, 0.0);
        for k in 0..=window.hi.max(0) {
            if window.contains(k) {
                coeffs.insert(k, acc);
            }
            acc *= a;
        }
        Self {
            coeffs,
            truncated: true,
        }
    }

    pub fn add_term(&mut self, n: i64, c: Complex64) {
        let entry = self.coeffs.entry(n).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if entry.norm() == 0.0 {
            self.coeffs.remove(&n);
        }
    }

    pub fn coeff(&self, n: i64) -> Complex64 {
        self.coeffs
            .get(&n)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.coeffs.keys().next()?, *self.coeffs.keys().last()?))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&n, &c)| (n, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.truncated |= other.truncated;
        for (n, c) in other.terms() {
            out.add_term(n, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&n, &v)| (n, c * v)).collect(),
            truncated: self.truncated,
        }
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&n, &v)| (n + k, v)).collect(),
            truncated: self.truncated,
        }
    }

    /// Full product on the natural (finite) support.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        out.truncated = self.truncated || other.truncated;
        for (n1, c1) in self.terms() {
            for (n2, c2) in other.terms() {
                out.add_term(n1 + n2, c1 * c2);
            }
        }
        out
    }

    /// Product truncated to the window; sets the truncation flag if any
    /// cross term fell outside.
    pub fn mul_windowed(&self, other: &Self, window: Window) -> Self {
        let mut out = Self::zero();
        out.truncated = self.truncated || other.truncated;
        for (n1, c1) in self.terms() {
            for (n2, c2) in other.terms() {
                let n = n1 + n2;
                if window.contains(n) {
                    out.add_term(n, c1 * c2);
                } else {
                    out.truncated = true;
                }
            }
        }
        out
    }

    /// Substitution t -> t^{-1} z^{-1}: the degree-n term c t^n becomes
    /// c z^{-n} t^{-n}.
    pub fn substitute_inv_scaled(&self, z: Complex64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&n, &c)| (-n, c * z.powi(-n as i32)))
                .collect(),
            truncated: self.truncated,
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&n, &c)| (n, c.conj())).collect(),
            truncated: self.truncated,
        }
    }

    /// Sum of |c_n|^2.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum()
    }

    /// Sum of c_{n+j} conj(c_n): the degree-j diagonal pairing behind matrix
    /// coefficients.
    pub fn shifted_inner(&self, j: i64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (n, c) in self.terms() {
            let other = self.coeff(n - j);
            s += c * other.conj();
        }
        s
    }

    /// Restrict to the window (flags truncation if terms were dropped).
    pub fn truncate(&self, window: Window) -> Self {
        let mut out = Self::zero();
        out.truncated = self.truncated;
        for (n, c) in self.terms() {
            if window.contains(n) {
                out.add_term(n, c);
            } else {
                out.truncated = true;
            }
        }
        out
    }

    /// Max |c_n| over the support.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }
}
