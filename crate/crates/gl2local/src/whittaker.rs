//! Finite-place Whittaker values and local zeta integrals.
//!
//! Covers the spherical values q^{-m/2}(α1^{m+1}-α2^{m+1})/(α1-α2), the
//! K⁰[m]-invariant vectors described by their double-coset sequence f_n, the
//! translated zeta integral ζ(s+1/2, n(ϖ^{-l})W, χ, ψ) in its four
//! ramification cases, and the eight closed-form Rankin–Selberg local factors
//! Σ_v, each paired with a brute-force oracle.

use crate::gauss::{gauss_sum, GaussError};
use crate::localfield::{
    AddChar, FiniteLocalField, LocalFieldError, MultChar, UnitChar, UnitGroup,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WhittakerError {
    #[error(transparent)]
    Field(#[from] LocalFieldError),
    #[error(transparent)]
    Gauss(#[from] GaussError),
    #[error("series tail not negligible: last terms ~ {tail:.3e}")]
    NonConvergentTail { tail: f64 },
    #[error("sigma case must be 1..=8, got {0}")]
    BadSigmaCase(u8),
    #[error("outside the convergence region: Re(s) = {re_s} needs > {threshold}")]
    OutsideConvergence { re_s: f64, threshold: f64 },
}

/// Spherical Whittaker value W(a(ϖ^m)) for Satake parameters (α1, α2),
/// normalized by W(1) = 1; zero for m < 0. Equal parameters use the
/// confluent limit (m+1) α^m q^{-m/2}.
pub fn unramified_whittaker(alpha1: Complex64, alpha2: Complex64, q: u64, m: i64) -> Complex64 {
    if m < 0 {
        return Complex64::new(0.0, 0.0);
    }
    let qf = q as f64;
    let scale = qf.powf(-(m as f64) / 2.0);
    if alpha1 == alpha2 {
        return scale * (m + 1) as f64 * alpha1.powi(m as i32);
    }
    scale * (alpha1.powi(m as i32 + 1) - alpha2.powi(m as i32 + 1)) / (alpha1 - alpha2)
}

/// A Whittaker function restricted to the diagonal, known on a finite window
/// of valuations, transforming by `transform_char` under a(O^×).
#[derive(Debug, Clone)]
pub struct WhittakerSeq {
    values: BTreeMap<i64, Complex64>,
    transform_char: UnitChar,
}

impl WhittakerSeq {
    pub fn new(values: BTreeMap<i64, Complex64>, transform_char: UnitChar) -> Self {
        Self {
            values,
            transform_char,
        }
    }

    /// New vector of an unramified principal series at d = 0, stored up to
    /// the given horizon.
    pub fn unramified_new_vector(
        group: &UnitGroup,
        alpha1: Complex64,
        alpha2: Complex64,
        horizon: i64,
    ) -> Self {
        let q = group.field().q();
        let values = (0..=horizon)
            .map(|m| (m, unramified_whittaker(alpha1, alpha2, q, m)))
            .collect();
        Self {
            values,
            transform_char: group.trivial_char(),
        }
    }

    /// Whittaker function of a K⁰[m]-invariant vector of π(ξ, ξ^{-1}),
    /// tabulated from the double-coset sequence.
    pub fn from_invariant_vector(
        group: &UnitGroup,
        xi_at_uniformizer: Complex64,
        f: &InvariantVectorSeq,
        horizon: i64,
    ) -> Self {
        let field = group.field();
        let d = field.d() as i64;
        let values = (-d..=horizon)
            .map(|v| (v, k0m_whittaker(field, xi_at_uniformizer, f, v)))
            .collect();
        Self {
            values,
            transform_char: group.trivial_char(),
        }
    }

    pub fn value(&self, m: i64) -> Complex64 {
        self.values
            .get(&m)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn transform_char(&self) -> &UnitChar {
        &self.transform_char
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self.values.keys().next()?;
        let hi = self.values.keys().last()?;
        Some((*lo, *hi))
    }

    /// Σ_m |W(a(ϖ^m))|² under Vol(O^×) = 1.
    pub fn norm_sq(&self) -> f64 {
        self.values.values().map(|v| v.norm_sqr()).sum()
    }
}

/// Values f_0..f_m of a B(O)-invariant vector on the double cosets D_0..D_m,
/// extended by constancy: f_n = f_m for n ≥ m (K⁰[m]-invariance).
#[derive(Debug, Clone)]
pub struct InvariantVectorSeq {
    f: Vec<Complex64>,
}

impl InvariantVectorSeq {
    pub fn new(f: Vec<Complex64>) -> Self {
        assert!(!f.is_empty(), "need at least f_0");
        Self { f }
    }

    pub fn level(&self) -> usize {
        self.f.len() - 1
    }

    pub fn get(&self, n: i64) -> Complex64 {
        if n < 0 {
            return Complex64::new(0.0, 0.0);
        }
        let idx = (n as usize).min(self.level());
        self.f[idx]
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            f: self.f.iter().map(|x| c * x).collect(),
        }
    }
}

/// W(a(y)) for the K⁰[m]-invariant vector with double-coset values f and
/// ξ(ϖ) = t:
///
/// q^{-d/2} ξ^{-1}(y) |y|^{1/2} 1_{v(y) ≥ -d}
///   (f_0 - q^{-1} f_{v+d+1} t^{2(v+d+1)} + (1-q^{-1}) Σ_{n=1}^{v+d} f_n t^{2n}),
///
/// with f extended by constancy past its level; v = v(y).
pub fn k0m_whittaker(
    field: &FiniteLocalField,
    t: Complex64,
    f: &InvariantVectorSeq,
    y_val: i64,
) -> Complex64 {
    let d = field.d() as i64;
    if y_val < -d {
        return Complex64::new(0.0, 0.0);
    }
    let q = field.q() as f64;
    let v = y_val;
    let mut inner = f.get(0);
    inner -= f.get(v + d + 1) * t.powi(2 * (v + d + 1) as i32) / q;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..=(v + d) {
        sum += f.get(n) * t.powi(2 * n as i32);
    }
    inner += (1.0 - 1.0 / q) * sum;
    let prefactor = q.powf(-(d as f64) / 2.0) * t.powi(-v as i32) * q.powf(-(v as f64) / 2.0);
    prefactor * inner
}

/// Invariant-model norm of a K⁰[m]-invariant vector, ∫_K |f(k)|² dk:
/// (1+q^{-1})^{-1} (|f_0|² + Σ_{n=1}^{m-1} |f_n|² q^{-n}(1-q^{-1}) + |f_m|² q^{-m}),
/// collapsing to |f_0|² at m = 0.
///
/// The diagonal Whittaker sum Σ_m |W_f(a(ϖ^m))|² equals this times the
/// Schur constant of the intertwiner, [`kirillov_norm_ratio`].
pub fn k0m_norm_sq(f: &InvariantVectorSeq, q: u64) -> f64 {
    let qf = q as f64;
    let m = f.level();
    if m == 0 {
        return f.get(0).norm_sqr();
    }
    let mut s = f.get(0).norm_sqr();
    for n in 1..m {
        s += f.get(n as i64).norm_sqr() * qf.powi(-(n as i32)) * (1.0 - 1.0 / qf);
    }
    s += f.get(m as i64).norm_sqr() * qf.powi(-(m as i32));
    s / (1.0 + 1.0 / qf)
}

/// Schur constant of the Whittaker intertwiner
/// f ↦ ξ^{-1}(y)|y|^{1/2} ∫ f(wn(x)) ψ(-xy) dx for π(ξ, ξ^{-1}):
/// Σ_m |W_f(a(ϖ^m))|² = (q+1)/(q-1) · ∫_K |f|² dk, independent of f, ξ, d.
pub fn kirillov_norm_ratio(q: u64) -> f64 {
    (q as f64 + 1.0) / (q as f64 - 1.0)
}

/// Mass of the double coset D_n in K under Vol(K) = 1:
/// q/(q+1) for n = 0 and q^{-(n-1)}(1-q^{-1})/(q+1) for n ≥ 1.
pub fn double_coset_mass(n: u32, q: u64) -> BigRational {
    let q = BigInt::from(q);
    let one = BigInt::from(1);
    if n == 0 {
        BigRational::new(q.clone(), &q + &one)
    } else {
        // equal to (q-1) / (q^n (q+1))
        BigRational::new(&q - &one, q.pow(n) * (&q + &one))
    }
}

/// ζ(s+1/2, n(ϖ^{-l})W, χ, ψ) by the four case formulas, split on
/// r = v(ωχ|_{O^×}) and l (convention n(ϖ^0) = 1, so l = 0 means no
/// unipotent translation).
pub fn local_zeta(
    group: &UnitGroup,
    w: &WhittakerSeq,
    chi: &MultChar,
    psi: &AddChar,
    s: Complex64,
    l: i64,
) -> Result<Complex64, WhittakerError> {
    let field = psi.field;
    let q = field.q() as f64;
    let d = field.d() as i64;
    let omega_chi = w.transform_char().product(&chi.unit_part);
    let r = group.conductor(&omega_chi) as i64;
    let x = chi.at_uniformizer * (-s * q.ln()).exp(); // χ(ϖ) q^{-s}

    if r >= 1 && l == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if r >= 1 {
        let m0 = l - r - d;
        let g = gauss_sum(group, &omega_chi, psi, r + d)?;
        return Ok(w.value(m0) * x.powi(m0 as i32) * g.value);
    }
    // r = 0: series over the stored support
    let Some((lo, hi)) = w.support() else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let mut sum = Complex64::new(0.0, 0.0);
    if l != 0 {
        for k in (l - d).max(lo)..=hi {
            sum += w.value(k) * x.powi(k as i32);
        }
        let k1 = l - d - 1;
        sum -= w.value(k1) * x.powi(k1 as i32) / (q - 1.0);
    } else {
        for k in lo..=hi {
            sum += w.value(k) * x.powi(k as i32);
        }
    }
    // the stored window must already carry a negligible tail
    let tail: f64 = (hi - 4..=hi)
        .map(|k| (w.value(k) * x.powi(k as i32)).norm())
        .fold(0.0, f64::max);
    if tail > 1e-10 * (1.0 + sum.norm()) {
        return Err(WhittakerError::NonConvergentTail { tail });
    }
    Ok(sum)
}

/// Oracle for [`local_zeta`]: the raw double sum
/// Σ_m W(a(ϖ^m)) χ(ϖ)^m q^{-ms} · avg_{u ∈ O^×} (ωχ)(u) ψ(ϖ^{m-l} u),
/// with the unit average enumerated directly (mass-one convention).
pub fn local_zeta_bruteforce(
    group: &UnitGroup,
    w: &WhittakerSeq,
    chi: &MultChar,
    psi: &AddChar,
    s: Complex64,
    l: i64,
) -> Result<Complex64, WhittakerError> {
    let field = psi.field;
    let q = field.q() as f64;
    let d = field.d() as i64;
    let omega_chi = w.transform_char().product(&chi.unit_part);
    let r = group.conductor(&omega_chi) as i64;
    let x = chi.at_uniformizer * (-s * q.ln()).exp();
    let Some((lo, hi)) = w.support() else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let mut total = Complex64::new(0.0, 0.0);
    for m in lo..=hi {
        let unit_avg = if l == 0 {
            // no additive twist: plain character average
            let level = r.max(1) as u32;
            let reps = field.unit_reps(level)?;
            let mut s0 = Complex64::new(0.0, 0.0);
            for u in &reps {
                s0 += group.eval(&omega_chi, u.unit().unwrap());
            }
            s0 / reps.len() as f64
        } else {
            let shift = l - m;
            let level = r.max(shift - d).max(1) as u32;
            if level > field.prec() || (shift - d) > field.prec() as i64 {
                return Err(WhittakerError::Field(LocalFieldError::PrecisionExceeded {
                    needed: level.max((shift - d).max(0) as u32),
                    prec: field.prec(),
                }));
            }
            let reps = field.unit_reps(level)?;
            let mut s0 = Complex64::new(0.0, 0.0);
            for u in &reps {
                let cu = group.eval(&omega_chi, u.unit().unwrap());
                let au = psi.eval_shifted(u, shift)?;
                s0 += cu * au;
            }
            s0 / reps.len() as f64
        };
        total += w.value(m) * x.powi(m as i32) * unit_avg;
    }
    Ok(total)
}

/// The local L-factor L(s, π ⊗ χ) = Π_i (1 - α_i χ(ϖ) q^{-s})^{-1} for an
/// unramified π and unramified χ.
pub fn unramified_l_factor(
    alpha: (Complex64, Complex64),
    chi_at_uniformizer: Complex64,
    q: u64,
    s: Complex64,
) -> Complex64 {
    let x = chi_at_uniformizer * (-s * (q as f64).ln()).exp();
    1.0 / ((1.0 - alpha.0 * x) * (1.0 - alpha.1 * x))
}

/// The translation pair (v(u_v), v(u_v')) for each of the eight Σ_v cases,
/// in the frozen order (ϖ,1), (1,ϖ), (ϖ^{-1},1), (1,ϖ^{-1}), (ϖ,ϖ^{-1}),
/// (ϖ^{-1},ϖ), (ϖ,ϖ), (ϖ^{-1},ϖ^{-1}).
pub const SIGMA_SHIFTS: [(i64, i64); 8] = [
    (1, 0),
    (0, 1),
    (-1, 0),
    (0, -1),
    (1, -1),
    (-1, 1),
    (1, 1),
    (-1, -1),
];

fn q_pow(q: u64, z: Complex64) -> Complex64 {
    (z * (q as f64).ln()).exp()
}

/// ζ_v(2s+2) / L(s+1, π_v × π̄_v) for unramified π with Satake (α1, α2).
fn sigma_prefactor(alpha: (Complex64, Complex64), q: u64, s: Complex64) -> Complex64 {
    let zeta = 1.0 / (1.0 - q_pow(q, -(2.0 * s + 2.0)));
    let x = q_pow(q, -(s + 1.0));
    let mut l_inv = Complex64::new(1.0, 0.0);
    for &a in &[alpha.0, alpha.1] {
        for &b in &[alpha.0, alpha.1] {
            l_inv *= 1.0 - a * b.conj() * x;
        }
    }
    zeta * l_inv
}

/// Closed-form Σ_v for one of the eight translation cases of an unramified
/// place. Convergence needs Re(s) > -1/2 + 2θ' with q^θ' = max |α_i|.
pub fn sigma_v(
    case: u8,
    alpha: (Complex64, Complex64),
    q: u64,
    s: Complex64,
    d: u32,
) -> Result<Complex64, WhittakerError> {
    if !(1..=8).contains(&case) {
        return Err(WhittakerError::BadSigmaCase(case));
    }
    let theta = alpha.0.norm().max(alpha.1.norm()).ln() / (q as f64).ln();
    let threshold = -0.5 + 2.0 * theta;
    if s.re <= threshold {
        return Err(WhittakerError::OutsideConvergence {
            re_s: s.re,
            threshold,
        });
    }
    let qf = q as f64;
    let tr = alpha.0 + alpha.1;
    let nn = alpha.0 * alpha.1;
    let xs1 = q_pow(q, -(s + 1.0)); // q^{-s-1}
    let denom = 1.0 - q_pow(q, -(2.0 * s + 2.0));
    let half = |k: f64| qf.powf(-k / 2.0);
    let qs = q_pow(q, s); // q^{s}
    let v = match case {
        1 => half(d as f64 + 1.0) * (tr - nn * tr.conj() * xs1) / denom,
        2 => half(d as f64 + 1.0) * (tr.conj() - nn.conj() * tr * xs1) / denom,
        3 => half(d as f64 + 1.0) / qs * (tr.conj() - nn.conj() * tr * xs1) / denom,
        4 => half(d as f64 + 1.0) / qs * (tr - nn * tr.conj() * xs1) / denom,
        5 => {
            half(d as f64) / qf / qs
                * (tr * tr - nn - nn * tr.norm_sqr() * xs1
                    + nn * nn.norm_sqr() * q_pow(q, -2.0 * (s + 1.0)))
                / denom
        }
        6 => {
            half(d as f64) / qf / qs
                * (tr.conj() * tr.conj() - nn.conj() - nn.conj() * tr.norm_sqr() * xs1
                    + nn.conj() * nn.norm_sqr() * q_pow(q, -2.0 * (s + 1.0)))
                / denom
        }
        7 => half(d as f64) * qs,
        8 => half(d as f64) / qs,
        _ => unreachable!(),
    };
    Ok(v)
}

/// Oracle for [`sigma_v`]: the truncated sum of shifted Whittaker products
/// q^{-d/2} ζ_v(2s+2)/L(s+1, π×π̄) Σ_m W_{m+a} conj(W_{m+b}) q^{-ms}.
pub fn sigma_v_bruteforce(
    case: u8,
    alpha: (Complex64, Complex64),
    q: u64,
    s: Complex64,
    d: u32,
    horizon: i64,
) -> Result<Complex64, WhittakerError> {
    if !(1..=8).contains(&case) {
        return Err(WhittakerError::BadSigmaCase(case));
    }
    let (a, b) = SIGMA_SHIFTS[case as usize - 1];
    let mut sum = Complex64::new(0.0, 0.0);
    for m in (-a).max(-b).min(0)..=horizon {
        if m + a < 0 || m + b < 0 {
            continue;
        }
        let wa = unramified_whittaker(alpha.0, alpha.1, q, m + a);
        let wb = unramified_whittaker(alpha.0, alpha.1, q, m + b);
        sum += wa * wb.conj() * q_pow(q, -s * m as f64);
    }
    let qf = q as f64;
    Ok(qf.powf(-(d as f64) / 2.0) * sigma_prefactor(alpha, q, s) * sum)
}
