//! Arithmetic in a non-archimedean local field at finite precision.
//!
//! The field is Q_p with prime residue field (q = p, uniformizer p); elements
//! are p^val · unit with the unit part kept modulo p^prec. Unit-group
//! characters are indexed through a fixed primitive root of (Z/p^prec)^×,
//! which is cyclic for odd p. The additive character has conductor p^{-d},
//! mirroring v(ψ) = -d.

use num_complex::Complex64;
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LocalFieldError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("precision must be >= 1")]
    BadPrecision,
    #[error("level {level} out of range 1..={prec}")]
    LevelOutOfRange { level: u32, prec: u32 },
    #[error("element not representable at precision {prec}: needs {needed} digits")]
    PrecisionExceeded { needed: u32, prec: u32 },
    #[error("operation undefined at zero")]
    ZeroArgument,
    #[error("full cancellation: valuation not determined at current precision")]
    CancellationLoss,
    #[error("mismatched fields: ({0}, prec {1}) vs ({2}, prec {3})")]
    FieldMismatch(u64, u32, u64, u32),
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut k = 3;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

/// A non-archimedean local field at desk scale: residue characteristic `p`,
/// additive conductor exponent `d`, working precision `prec` (units are kept
/// mod p^prec).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteLocalField {
    p: u64,
    d: u32,
    prec: u32,
}

impl FiniteLocalField {
    pub fn new(p: u64, d: u32, prec: u32) -> Result<Self, LocalFieldError> {
        if !is_odd_prime(p) {
            return Err(LocalFieldError::NotOddPrime(p));
        }
        if prec < 1 {
            return Err(LocalFieldError::BadPrecision);
        }
        Ok(Self { p, d, prec })
    }

    /// Residue-field cardinality q (= p here).
    pub fn q(&self) -> u64 {
        self.p
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// p^prec, the modulus carried by unit parts.
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.prec)
    }

    /// Same field with a different additive conductor exponent.
    pub fn with_d(&self, d: u32) -> Self {
        Self { d, ..*self }
    }

    pub fn element(&self, val: i64, unit: u64) -> Result<LocalElement, LocalFieldError> {
        let m = self.modulus();
        let u = unit % m;
        if u == 0 || u % self.p == 0 {
            return Err(LocalFieldError::ZeroArgument);
        }
        Ok(LocalElement::NonZero { val, unit: u })
    }

    /// Build an element from a nonzero integer times p^val.
    pub fn from_integer(&self, val: i64, n: i64) -> Result<LocalElement, LocalFieldError> {
        if n == 0 {
            return Ok(LocalElement::Zero);
        }
        let m = self.modulus() as i64;
        let mut u = n.rem_euclid(m);
        let mut v = val;
        if u == 0 {
            // n divisible by p^prec: valuation below precision
            return Err(LocalFieldError::PrecisionExceeded {
                needed: self.prec + 1,
                prec: self.prec,
            });
        }
        while u % self.p as i64 == 0 {
            u /= self.p as i64;
            v += 1;
        }
        Ok(LocalElement::NonZero {
            val: v,
            unit: u as u64,
        })
    }

    pub fn mul(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        match (a, b) {
            (LocalElement::Zero, _) | (_, LocalElement::Zero) => LocalElement::Zero,
            (
                LocalElement::NonZero { val: v1, unit: u1 },
                LocalElement::NonZero { val: v2, unit: u2 },
            ) => LocalElement::NonZero {
                val: v1 + v2,
                unit: mulmod(*u1, *u2, self.modulus()),
            },
        }
    }

    /// Addition with cancellation detection: errors out when the sum is
    /// indistinguishable from zero at the working precision.
    pub fn add(&self, a: &LocalElement, b: &LocalElement) -> Result<LocalElement, LocalFieldError> {
        let (v1, u1, v2, u2) = match (a, b) {
            (LocalElement::Zero, _) => return Ok(*b),
            (_, LocalElement::Zero) => return Ok(*a),
            (
                LocalElement::NonZero { val: v1, unit: u1 },
                LocalElement::NonZero { val: v2, unit: u2 },
            ) => {
                if v1 <= v2 {
                    (*v1, *u1, *v2, *u2)
                } else {
                    (*v2, *u2, *v1, *u1)
                }
            }
        };
        let shift = (v2 - v1) as u32;
        if shift >= self.prec {
            // the second term is below the precision window of the first
            return Ok(LocalElement::NonZero { val: v1, unit: u1 });
        }
        let m = self.modulus();
        let w = (u1 + mulmod(self.p.pow(shift), u2, m)) % m;
        if w == 0 {
            return Err(LocalFieldError::CancellationLoss);
        }
        let mut u = w;
        let mut extra = 0i64;
        while u % self.p == 0 {
            u /= self.p;
            extra += 1;
        }
        Ok(LocalElement::NonZero {
            val: v1 + extra,
            unit: u,
        })
    }

    pub fn neg(&self, a: &LocalElement) -> LocalElement {
        match a {
            LocalElement::Zero => LocalElement::Zero,
            LocalElement::NonZero { val, unit } => LocalElement::NonZero {
                val: *val,
                unit: self.modulus() - unit,
            },
        }
    }

    /// Representatives of O^× / (1 + p^level O): integers in [1, p^level)
    /// coprime to p, exactly (p-1) p^(level-1) of them.
    pub fn unit_reps(&self, level: u32) -> Result<Vec<LocalElement>, LocalFieldError> {
        if level < 1 || level > self.prec {
            return Err(LocalFieldError::LevelOutOfRange {
                level,
                prec: self.prec,
            });
        }
        let m = self.p.pow(level);
        Ok((1..m)
            .filter(|u| u % self.p != 0)
            .map(|u| LocalElement::NonZero { val: 0, unit: u })
            .collect())
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// A nonzero element is p^val · unit with unit in (Z/p^prec)^×; zero is a
/// separate tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalElement {
    Zero,
    NonZero { val: i64, unit: u64 },
}

impl LocalElement {
    pub fn is_zero(&self) -> bool {
        matches!(self, LocalElement::Zero)
    }

    pub fn val(&self) -> Option<i64> {
        match self {
            LocalElement::Zero => None,
            LocalElement::NonZero { val, .. } => Some(*val),
        }
    }

    pub fn unit(&self) -> Option<u64> {
        match self {
            LocalElement::Zero => None,
            LocalElement::NonZero { unit, .. } => Some(*unit),
        }
    }

    pub fn one() -> Self {
        LocalElement::NonZero { val: 0, unit: 1 }
    }

    /// The uniformizer power p^n.
    pub fn uniformizer_pow(n: i64) -> Self {
        LocalElement::NonZero { val: n, unit: 1 }
    }
}

/// The cyclic unit group (Z/p^prec)^× together with a discrete-log table for
/// a fixed primitive root. Characters are evaluated through this table.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    field: FiniteLocalField,
    generator: u64,
    order: u64,
    dlog: Vec<u32>,
}

impl UnitGroup {
    pub fn new(field: &FiniteLocalField) -> Self {
        let p = field.p();
        let m = field.modulus();
        let generator = primitive_root(p, m);
        let order = (p - 1) * p.pow(field.prec() - 1);
        let mut dlog = vec![u32::MAX; m as usize];
        let mut x = 1u64;
        for i in 0..order {
            dlog[x as usize] = i as u32;
            x = mulmod(x, generator, m);
        }
        debug_assert_eq!(x, 1, "generator order mismatch");
        Self {
            field: *field,
            generator,
            order,
            dlog,
        }
    }

    pub fn field(&self) -> &FiniteLocalField {
        &self.field
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Discrete log of a unit w.r.t. the fixed generator.
    pub fn dlog(&self, u: u64) -> u64 {
        let r = self.dlog[(u % self.field.modulus()) as usize];
        debug_assert_ne!(r, u32::MAX, "dlog of a non-unit {u}");
        r as u64
    }

    pub fn inverse(&self, u: u64) -> u64 {
        let k = self.dlog(u);
        self.pow_gen((self.order - k) % self.order)
    }

    fn pow_gen(&self, e: u64) -> u64 {
        let m = self.field.modulus();
        let mut acc = 1u64;
        let mut base = self.generator;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base, m);
            }
            base = mulmod(base, base, m);
            e >>= 1;
        }
        acc
    }

    /// The character sending the generator to exp(2πi · index / order).
    pub fn char(&self, index: u64) -> UnitChar {
        UnitChar {
            p: self.field.p(),
            prec: self.field.prec(),
            index: index % self.order,
        }
    }

    pub fn trivial_char(&self) -> UnitChar {
        self.char(0)
    }

    /// χ(u) for a unit u (given mod p^prec).
    pub fn eval(&self, chi: &UnitChar, u: u64) -> Complex64 {
        self.check_char(chi);
        let k = self.dlog(u);
        let angle =
            TAU * ((chi.index as u128 * k as u128) % self.order as u128) as f64 / self.order as f64;
        Complex64::from_polar(1.0, angle)
    }

    /// Conductor exponent: minimal r ≥ 0 with χ trivial on 1 + p^r O.
    ///
    /// χ_k is trivial on the subgroup of order p^(prec-r) iff p^(prec-r) | k,
    /// so the conductor falls out of the p-adic valuation of the index.
    pub fn conductor(&self, chi: &UnitChar) -> u32 {
        self.check_char(chi);
        if chi.index == 0 {
            return 0;
        }
        let p = self.field.p();
        let mut k = chi.index;
        let mut vp = 0u32;
        while k % p == 0 {
            k /= p;
            vp += 1;
        }
        (self.field.prec() - vp).max(1)
    }

    /// All characters of conductor exactly `r` (r = 0 gives the trivial one).
    pub fn chars_of_conductor(&self, r: u32) -> Vec<UnitChar> {
        assert!(r <= self.field.prec());
        (0..self.order)
            .map(|k| self.char(k))
            .filter(|c| self.conductor(c) == r)
            .collect()
    }

    fn check_char(&self, chi: &UnitChar) {
        assert!(
            chi.p == self.field.p() && chi.prec == self.field.prec(),
            "character belongs to a different unit group"
        );
    }
}

fn primitive_root(p: u64, modulus: u64) -> u64 {
    // prime factors of p-1
    let mut fac = Vec::new();
    let mut n = p - 1;
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            fac.push(k);
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        fac.push(n);
    }
    let powmod = |mut b: u64, mut e: u64, m: u64| -> u64 {
        let mut acc = 1u64;
        b %= m;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b, m);
            }
            b = mulmod(b, b, m);
            e >>= 1;
        }
        acc
    };
    for g in 2..p {
        if fac.iter().all(|&q| powmod(g, (p - 1) / q, p) != 1) {
            // primitive mod p; ensure primitive mod p^2 (then mod all p^n)
            if modulus == p || powmod(g, p - 1, p * p) != 1 {
                return g;
            }
            return g + p;
        }
    }
    unreachable!("no primitive root found for prime {p}")
}

/// A character of O^× of some conductor, indexed against the cyclic group
/// (Z/p^prec)^×.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitChar {
    p: u64,
    prec: u32,
    index: u64,
}

impl UnitChar {
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    fn order(&self) -> u64 {
        (self.p - 1) * self.p.pow(self.prec - 1)
    }

    pub fn inverse(&self) -> UnitChar {
        UnitChar {
            index: (self.order() - self.index) % self.order(),
            ..*self
        }
    }

    pub fn product(&self, other: &UnitChar) -> UnitChar {
        assert!(self.p == other.p && self.prec == other.prec);
        UnitChar {
            index: (self.index + other.index) % self.order(),
            ..*self
        }
    }

    /// Extend to F^× by a value at the uniformizer.
    pub fn extend(&self, at_uniformizer: Complex64) -> MultChar {
        MultChar {
            unit_part: *self,
            at_uniformizer,
        }
    }
}

/// A character of F^×: a unit-group character together with its value at the
/// uniformizer (unit modulus for unitary characters, q^{-s} for |·|^s twists).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultChar {
    pub unit_part: UnitChar,
    pub at_uniformizer: Complex64,
}

impl MultChar {
    /// The unramified character |·|^s, i.e. trivial on units with value
    /// q^{-s} at the uniformizer.
    pub fn abs_power(group: &UnitGroup, s: Complex64) -> MultChar {
        let q = group.field().q() as f64;
        MultChar {
            unit_part: group.trivial_char(),
            at_uniformizer: (-s * q.ln()).exp(),
        }
    }

    pub fn inverse(&self) -> MultChar {
        MultChar {
            unit_part: self.unit_part.inverse(),
            at_uniformizer: 1.0 / self.at_uniformizer,
        }
    }

    /// χ(x) = at_uniformizer^val(x) · unit_part(unit(x)). Errors at x = 0.
    pub fn eval(&self, group: &UnitGroup, x: &LocalElement) -> Result<Complex64, LocalFieldError> {
        match x {
            LocalElement::Zero => Err(LocalFieldError::ZeroArgument),
            LocalElement::NonZero { val, unit } => {
                Ok(self.at_uniformizer.powi(*val as i32) * group.eval(&self.unit_part, *unit))
            }
        }
    }
}

/// The additive character ψ of conductor p^{-d}: ψ(x) = e^{2πi frac(p^d x)}
/// where frac is the p-adic fractional part.
#[derive(Debug, Clone, Copy)]
pub struct AddChar {
    pub field: FiniteLocalField,
}

impl AddChar {
    pub fn new(field: &FiniteLocalField) -> Self {
        Self { field: *field }
    }

    /// ψ(x); equals 1 whenever val(x) ≥ -d.
    pub fn eval(&self, x: &LocalElement) -> Result<Complex64, LocalFieldError> {
        match x {
            LocalElement::Zero => Ok(Complex64::new(1.0, 0.0)),
            LocalElement::NonZero { val, unit } => {
                let shifted = val + self.field.d() as i64;
                if shifted >= 0 {
                    return Ok(Complex64::new(1.0, 0.0));
                }
                let e = (-shifted) as u32;
                if e > self.field.prec() {
                    return Err(LocalFieldError::PrecisionExceeded {
                        needed: e,
                        prec: self.field.prec(),
                    });
                }
                let pe = self.field.p().pow(e);
                Ok(Complex64::from_polar(
                    1.0,
                    TAU * (unit % pe) as f64 / pe as f64,
                ))
            }
        }
    }

    /// ψ(p^{-shift} x): the twist appearing in translated zeta integrals.
    pub fn eval_shifted(&self, x: &LocalElement, shift: i64) -> Result<Complex64, LocalFieldError> {
        match x {
            LocalElement::Zero => Ok(Complex64::new(1.0, 0.0)),
            LocalElement::NonZero { val, unit } => self.eval(&LocalElement::NonZero {
                val: val - shift,
                unit: *unit,
            }),
        }
    }
}
