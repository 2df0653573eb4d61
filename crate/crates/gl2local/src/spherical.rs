//! Harish-Chandra spherical functions φ_λ and Ξ at real, complex and finite
//! places, and the translated-torus Ξ-integrals.
//!
//! The building blocks are the f-functions
//!   complex: f(λ, T) = (T^λ - T^{-λ})/λ,
//!   real:    f(λ, r) = ∫₀^{2π} (cosh r + sinh r cos u)^{(λ-1)/2} du,
//!   finite:  f(λ, m) = q^{λm/2} + q^{-λm/2} + (1-q^{-1}) Σ_{k=1}^{m-1} q^{(k-m/2)λ},
//! with φ_λ = f(λ,·)/f(1,·) and Ξ = φ₀. The finite-place translated
//! integral ∫ Ξ(n(-T)a(y)n(T))^{1-2θ} d^×y is evaluated in closed form and
//! cross-checked by enumerating the Cartan projection through elementary
//! divisors of 2×2 matrices.

use crate::localfield::{FiniteLocalField, LocalElement, LocalFieldError};
use crate::quad::{integrate, QuadError, QuadOptions};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SphericalError {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Field(#[from] LocalFieldError),
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("θ = {0} must be in [0, 1/2) for convergence")]
    ThetaOutOfRange(f64),
}

/// Place tag with its complementary parameter λ ∈ [0, 1).
#[derive(Debug, Clone, Copy)]
pub struct SphericalParams {
    pub place: Place,
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Place {
    Real,
    Complex,
    Finite(u64),
}

impl SphericalParams {
    pub fn new(place: Place, lambda: f64) -> Result<Self, SphericalError> {
        if !(0.0..1.0).contains(&lambda) {
            return Err(SphericalError::BadParameter(format!(
                "lambda = {lambda} outside [0, 1)"
            )));
        }
        Ok(Self { place, lambda })
    }

    /// f_v(λ, g) in the place's own coordinate (T ≥ 1, r ≥ 0, or integer m).
    pub fn f(&self, g: f64) -> Result<f64, SphericalError> {
        match self.place {
            Place::Real => hc_f_real(self.lambda, g),
            Place::Complex => hc_f_complex(self.lambda, g),
            Place::Finite(q) => Ok(hc_f_finite(q, self.lambda, g.round() as i64)),
        }
    }

    /// φ_λ(g) = f(λ, g) / f(1, g).
    pub fn phi(&self, g: f64) -> Result<f64, SphericalError> {
        match self.place {
            Place::Real => Ok(hc_f_real(self.lambda, g)? / hc_f_real(1.0, g)?),
            Place::Complex => phi_complex(self.lambda, g),
            Place::Finite(q) => Ok(phi_finite(q, self.lambda, g.round() as i64)),
        }
    }
}

/// Real-place f(λ, r) by adaptive quadrature of the integral representation,
/// written as (e^r cos²(u/2) + e^{-r} sin²(u/2))^{(λ-1)/2} for stability at
/// the u = π spike.
pub fn hc_f_real(lambda: f64, r: f64) -> Result<f64, SphericalError> {
    if r < 0.0 {
        return Err(SphericalError::BadParameter(format!("r = {r} < 0")));
    }
    if lambda == 1.0 {
        return Ok(2.0 * PI); // integrand ≡ 1
    }
    let er = r.exp();
    let emr = (-r).exp();
    let f = |u: f64| {
        let c = (u / 2.0).cos();
        let s = (u / 2.0).sin();
        (er * c * c + emr * s * s).powf((lambda - 1.0) / 2.0)
    };
    let opts = QuadOptions {
        abs_tol: 1e-12,
        rel_tol: 1e-11,
        max_evals: 2_000_000,
    };
    // symmetric around π; split near the peak
    let half = crate::quad::integrate_complex_split(
        |u| num_complex::Complex64::new(f(u), 0.0),
        0.0,
        PI,
        &[PI - 0.1, PI - 0.01],
        opts,
    )?;
    Ok(2.0 * half.value.re)
}

/// Complex-place f(λ, T) = (T^λ - T^{-λ})/λ for T ≥ 1, with 2 log T at λ=0.
pub fn hc_f_complex(lambda: f64, t: f64) -> Result<f64, SphericalError> {
    if t < 1.0 {
        return Err(SphericalError::BadParameter(format!("T = {t} < 1")));
    }
    if lambda == 0.0 {
        return Ok(2.0 * t.ln());
    }
    Ok((t.powf(lambda) - t.powf(-lambda)) / lambda)
}

/// Finite-place f(λ, m) for m ≥ 0.
pub fn hc_f_finite(q: u64, lambda: f64, m: i64) -> f64 {
    let m = m.abs();
    let qf = q as f64;
    let mut s = qf.powf(lambda * m as f64 / 2.0) + qf.powf(-lambda * m as f64 / 2.0);
    for k in 1..m {
        s += (1.0 - 1.0 / qf) * qf.powf((k as f64 - m as f64 / 2.0) * lambda);
    }
    s
}

pub fn phi_finite(q: u64, lambda: f64, m: i64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    hc_f_finite(q, lambda, m) / hc_f_finite(q, 1.0, m)
}

pub fn phi_complex(lambda: f64, t: f64) -> Result<f64, SphericalError> {
    if t == 1.0 {
        return Ok(1.0); // both f's vanish; the ratio tends to 1
    }
    Ok(hc_f_complex(lambda, t)? / hc_f_complex(1.0, t)?)
}

/// Macdonald value Ξ(a(ϖ^m)) = q^{-|m|/2}(1 + |m|(1-q^{-1})/(1+q^{-1})).
pub fn xi_finite(q: u64, m: i64) -> f64 {
    let qf = q as f64;
    let m = m.abs() as f64;
    qf.powf(-m / 2.0) * (1.0 + m * (1.0 - 1.0 / qf) / (1.0 + 1.0 / qf))
}

/// Exact rational q^{m/2} Ξ(m) via the f-function route:
/// f(0,m) / (q^{-m/2} f(1,m)).
pub fn xi_finite_scaled_exact_via_f(q: u64, m: u32) -> BigRational {
    let qq = BigRational::from(BigInt::from(q));
    let one = BigRational::from(BigInt::from(1));
    if m == 0 {
        return one;
    }
    // f(0,m) = 2 + (m-1)(1 - 1/q); q^{-m/2} f(1,m) = 1 + 1/q (both exact)
    let f0 = BigRational::from(BigInt::from(2))
        + BigRational::from(BigInt::from(m as i64 - 1)) * (&one - qq.recip());
    let f1_scaled = &one + qq.recip();
    f0 / f1_scaled
}

/// Exact rational q^{m/2} Ξ(m) via the displayed Macdonald formula:
/// 1 + m (1-1/q) / (1+1/q).
pub fn xi_finite_scaled_exact_display(q: u64, m: u32) -> BigRational {
    let qq = BigRational::from(BigInt::from(q));
    let one = BigRational::from(BigInt::from(1));
    &one + BigRational::from(BigInt::from(m)) * (&one - qq.recip()) / (&one + qq.recip())
}

/// Real-place Ξ(r) = P_{-1/2}(cosh r) through the AGM form of the complete
/// elliptic integral: Ξ(r) = 1 / AGM(1, cosh(r/2)). Cross-validated against
/// the quadrature route in tests; used in integral hot loops.
pub fn xi_real_agm(r: f64) -> f64 {
    let mut a: f64 = 1.0;
    let mut b = (r / 2.0).cosh();
    for _ in 0..64 {
        let (na, nb) = ((a + b) / 2.0, (a * b).sqrt());
        if (na - nb).abs() < 1e-16 * na {
            return 1.0 / na;
        }
        a = na;
        b = nb;
    }
    1.0 / a
}

/// Complex-place Ξ(diag(t, 1/t)) = 2 log t / (t - 1/t) for t ≥ 1.
pub fn xi_complex(t: f64) -> f64 {
    if t <= 1.0 + 1e-12 {
        return 1.0;
    }
    2.0 * t.ln() / (t - 1.0 / t)
}

/// Report of the interpolation check A(ε)^{-1} φ₀^{1-λ+ε} ≤ φ_λ ≤ φ₀^{1-λ}.
#[derive(Debug, Clone)]
pub struct InterpReport {
    /// worst violation of the upper bound (≤ 0 means it holds everywhere)
    pub max_upper_excess: f64,
    /// min over the grid of φ_λ / φ₀^{1-λ+ε}; its inverse is the smallest
    /// admissible A(ε)
    pub empirical_a_inv: f64,
    /// the explicit finite-place constant, when applicable
    pub explicit_a_inv: Option<f64>,
}

/// Check the spherical interpolation inequality over a grid.
pub fn spherical_interp_check(
    place: Place,
    lambdas: &[f64],
    g_grid: &[f64],
    eps: f64,
) -> Result<InterpReport, SphericalError> {
    assert!(eps > 0.0);
    let mut max_upper_excess = f64::NEG_INFINITY;
    let mut min_lower_ratio = f64::INFINITY;
    for &lambda in lambdas {
        let params = SphericalParams::new(place, lambda)?;
        let xi_params = SphericalParams::new(place, 0.0)?;
        for &g in g_grid {
            let phi_l = params.phi(g)?;
            let xi = xi_params.phi(g)?;
            max_upper_excess = max_upper_excess.max(phi_l - xi.powf(1.0 - lambda));
            min_lower_ratio = min_lower_ratio.min(phi_l / xi.powf(1.0 - lambda + eps));
        }
    }
    let explicit_a_inv = match place {
        Place::Finite(q) => {
            let qf = q as f64;
            let lnq = qf.ln();
            Some(
                (eps * lnq / (2.0 * (1.0 + eps))).powf(1.0 + eps)
                    * (1.0 + 1.0 / qf).powf(eps)
                    * qf.powf((1.0 + eps) / lnq - eps / 2.0),
            )
        }
        _ => None,
    };
    Ok(InterpReport {
        max_upper_excess,
        empirical_a_inv: min_lower_ratio,
        explicit_a_inv,
    })
}

/// Elementary-divisor gap of an invertible 2×2 matrix over the local field:
/// divisors (p^a, p^b) with a ≤ b give n = b - a = v(det) - 2 min v(entries).
pub fn cartan_n(
    field: &FiniteLocalField,
    m: &[[LocalElement; 2]; 2],
) -> Result<u32, SphericalError> {
    let ad = field.mul(&m[0][0], &m[1][1]);
    let bc = field.mul(&m[0][1], &m[1][0]);
    let det = field.add(&ad, &field.neg(&bc))?;
    let det_val = det.val().ok_or(SphericalError::SingularMatrix)?;
    let min_val = m
        .iter()
        .flatten()
        .filter_map(|e| e.val())
        .min()
        .ok_or(SphericalError::SingularMatrix)?;
    let n = det_val - 2 * min_val;
    debug_assert!(n >= 0, "elementary divisor gap must be non-negative");
    Ok(n as u32)
}

/// n(-T) a(y) n(T) = [[y, T(y-1)], [0, 1]] for T = p^{t_val}.
pub fn translated_torus_element(
    field: &FiniteLocalField,
    t_val: i64,
    y: &LocalElement,
) -> Result<[[LocalElement; 2]; 2], SphericalError> {
    let one = LocalElement::one();
    let y_minus_1 = if *y == one {
        LocalElement::Zero
    } else {
        field.add(y, &field.neg(&one))?
    };
    let t = LocalElement::uniformizer_pow(t_val);
    Ok([[*y, field.mul(&t, &y_minus_1)], [LocalElement::Zero, one]])
}

/// Translated-torus spec: valuation of T and the decay parameter θ < 1/2.
#[derive(Debug, Clone, Copy)]
pub struct TranslatedTorusSpec {
    pub t_val: i64,
    pub theta: f64,
}

impl TranslatedTorusSpec {
    pub fn new(t_val: i64, theta: f64) -> Result<Self, SphericalError> {
        if !(0.0..0.5).contains(&theta) {
            return Err(SphericalError::ThetaOutOfRange(theta));
        }
        Ok(Self { t_val, theta })
    }

    /// d = max(0, -v(T)).
    pub fn depth(&self) -> u32 {
        (-self.t_val).max(0) as u32
    }
}

/// Both normalizations of the finite-place translated Ξ-integral: the plain
/// mass-one d^×y value, and the same value carrying the q^{d_v/2} prefactor
/// of the displayed evaluation.
#[derive(Debug, Clone, Copy)]
pub struct XiFiniteIntegral {
    /// ∫ Ξ(n(-T)a(y)n(T))^{1-2θ} d^×y with Vol(O^×) = 1
    pub unit_haar: f64,
    /// q^{d_v/2} times the above
    pub with_psi_factor: f64,
}

/// Closed evaluation of the finite-place translated Ξ-integral:
///
/// 2 Σ_{n>2d} Ξ(n)^{1-2θ}
///   + Σ_{n=1}^{d-1} (q^{d-n}-q^{d-n-1})/(q^d-q^{d-1}) Ξ(2(d-n))^{1-2θ}
///   + Ξ(0)^{1-2θ}/(q^d-q^{d-1}) + (q^d-2q^{d-1})/(q^d-q^{d-1}) Ξ(2d)^{1-2θ},
///
/// degenerating to 1 + 2 Σ_{n>0} Ξ(n)^{1-2θ} at d = 0.
pub fn xi_integral_finite(
    spec: &TranslatedTorusSpec,
    q: u64,
    d_v: u32,
) -> Result<XiFiniteIntegral, SphericalError> {
    let theta = spec.theta;
    if theta >= 0.5 {
        return Err(SphericalError::ThetaOutOfRange(theta));
    }
    let d = spec.depth();
    let e = 1.0 - 2.0 * theta;
    let qf = q as f64;

    // off-unit valuations contribute Ξ(|m| + 2d) with shell mass 1 each
    let mut total = 0.0;
    let mut n = 2 * d as i64 + 1;
    loop {
        let term = 2.0 * xi_finite(q, n).powf(e);
        total += term;
        if term < 1e-14 * (1.0 + total) {
            break;
        }
        n += 1;
    }

    // the unit shell splits by v(τ-1) over classes mod p^d
    if d == 0 {
        total += 1.0; // single class, Ξ(0) = 1
    } else {
        let classes = (qf - 1.0) * qf.powi(d as i32 - 1);
        for k in 1..d {
            let weight = (qf - 1.0) * qf.powi((d - k) as i32 - 1) / classes;
            total += weight * xi_finite(q, 2 * (d - k) as i64).powf(e);
        }
        total += xi_finite(q, 0).powf(e) / classes;
        total += (qf - 2.0) * qf.powi(d as i32 - 1) / classes * xi_finite(q, 2 * d as i64).powf(e);
    }
    Ok(XiFiniteIntegral {
        unit_haar: total,
        with_psi_factor: qf.powf(d_v as f64 / 2.0) * total,
    })
}

/// Brute-force oracle for [`xi_integral_finite`]: enumerate y over
/// valuations |v(y)| ≤ `val_range` and unit classes mod p^max(d,1), run each
/// matrix through [`cartan_n`], and sum Ξ(n)^{1-2θ} with mass-one weights.
pub fn xi_integral_finite_bruteforce(
    spec: &TranslatedTorusSpec,
    field: &FiniteLocalField,
    val_range: i64,
) -> Result<f64, SphericalError> {
    let theta = spec.theta;
    let q = field.q();
    let d = spec.depth();
    let e = 1.0 - 2.0 * theta;
    let level = d.max(1);
    if level + 1 > field.prec() {
        return Err(SphericalError::Field(LocalFieldError::PrecisionExceeded {
            needed: level + 1,
            prec: field.prec(),
        }));
    }
    let reps = field.unit_reps(level)?;
    let weight = 1.0 / reps.len() as f64;
    let mut total = 0.0;
    for m in -val_range..=val_range {
        for u in &reps {
            let y = LocalElement::NonZero {
                val: m,
                unit: u.unit().unwrap(),
            };
            let mat = translated_torus_element(field, spec.t_val, &y)?;
            let n = cartan_n(field, &mat)?;
            total += weight * xi_finite(q, n as i64).powf(e);
        }
    }
    Ok(total)
}

/// Archimedean translated Ξ-integral ∫ Ξ(n(-T)a(y)n(T))^{1-2θ} d^×y by
/// adaptive quadrature (d^×y = dy/|y| on R^×, dρ/ρ · dφ on C^×).
pub fn xi_integral_arch(place: Place, t_shift: f64, theta: f64) -> Result<f64, SphericalError> {
    if !(0.0..0.5).contains(&theta) {
        return Err(SphericalError::ThetaOutOfRange(theta));
    }
    let e = 1.0 - 2.0 * theta;
    match place {
        Place::Real => {
            // cosh r = (y² + T²(y-1)² + 1) / (2|y|)
            let xi_pow = |y: f64| -> f64 {
                let ch =
                    (y * y + t_shift * t_shift * (y - 1.0) * (y - 1.0) + 1.0) / (2.0 * y.abs());
                let r = if ch <= 1.0 {
                    0.0
                } else {
                    (ch + (ch * ch - 1.0).sqrt()).ln()
                };
                xi_real_agm(r).powf(e)
            };
            let u_cap = (40.0 * std::f64::consts::LN_10 / (e / 2.0)).min(4000.0);
            let opts = QuadOptions {
                abs_tol: 1e-12,
                rel_tol: 1e-8,
                max_evals: 4_000_000,
            };
            let f = |u: f64| xi_pow(u.exp()) + xi_pow(-u.exp());
            Ok(integrate(f, -u_cap, u_cap, opts)?)
        }
        Place::Complex => {
            // t² + t^{-2} = ρ + 1/ρ + T²(ρ - 2cosφ + 1/ρ), y = ρ e^{iφ}
            let xi_pow = |rho: f64, cosphi: f64| -> f64 {
                let big_r = rho + 1.0 / rho + t_shift * t_shift * (rho - 2.0 * cosphi + 1.0 / rho);
                // t² solves s + 1/s = R
                let s = (big_r + (big_r * big_r - 4.0).max(0.0).sqrt()) / 2.0;
                xi_complex(s.sqrt()).powf(e)
            };
            let inner_opts = QuadOptions {
                abs_tol: 1e-13,
                rel_tol: 1e-9,
                max_evals: 400_000,
            };
            let radial = |u: f64| -> f64 {
                let rho = u.exp();
                // angular integral over [0, π], doubled (cos φ symmetric)
                2.0 * integrate(|phi: f64| xi_pow(rho, phi.cos()), 0.0, PI, inner_opts)
                    .unwrap_or(0.0)
            };
            let u_cap = (40.0 * std::f64::consts::LN_10 / e).min(4000.0);
            let opts = QuadOptions {
                abs_tol: 1e-10,
                rel_tol: 1e-7,
                max_evals: 2_000_000,
            };
            // y ↔ 1/y symmetry: integrate ρ ≥ 1 and double
            let upper = integrate(radial, 0.0, u_cap, opts)?;
            Ok(2.0 * upper)
        }
        Place::Finite(_) => Err(SphericalError::BadParameter(
            "finite places go through xi_integral_finite".into(),
        )),
    }
}
