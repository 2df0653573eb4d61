//! Gauss sums and their archimedean analogues.
//!
//! Finite place: G(χ, ψ) = ∫_{O^×} χ(t) ψ(t) d^×t, vanishing unless the
//! additive level matches the conductor of χ, with |G| = q^{-r/2} ζ(1) under
//! the mass-one normalization. Two Haar conventions coexist (Vol(O^×) = 1
//! versus Vol(O^×) = 1 - 1/q); every result carries a tag saying which one
//! produced it so they cannot be mixed silently.
//!
//! Real place: G_φ(χ, t) = ∫ φ(x) ψ(tx) χ(x) dx evaluated by oscillatory
//! panel quadrature, with the scan locating the |t| ≍ C resonance.

use crate::localfield::{AddChar, LocalElement, LocalFieldError, UnitChar, UnitGroup};
use crate::quad::{integrate_complex_split, QuadError, QuadOptions};
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GaussError {
    #[error(transparent)]
    Field(#[from] LocalFieldError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("root number needs conductor n >= 1")]
    UnramifiedRootNumber,
    #[error("root number requires an additive character with d = 0")]
    NonzeroAdditiveConductor,
    #[error("character parameter |phi| = {0} outside the quadrature validity envelope (<= 500)")]
    PhiOutOfRange(f64),
}

/// Which Haar measure on F^× a value was computed under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Vol(O^×) = 1.
    UnitMassOne,
    /// d^×x = dx/|x|, Vol(O^×) = 1 - 1/q.
    DxOverAbs,
}

#[derive(Debug, Clone, Copy)]
pub struct GaussSumResult {
    pub value: Complex64,
    pub normalization: Normalization,
}

/// G(χ, ψ(p^{-l}·)) = (1/#reps) Σ_u χ(u) ψ(p^{-l} u) over O^×/(1+p^L),
/// L = max(r, l-d, 1). Mass-one normalization.
///
/// The twisted additive character has level l - d; for r ≥ 1 the sum
/// vanishes unless that level equals r, and then |G| = q^{-r/2} (1-1/q)^{-1}.
pub fn gauss_sum(
    group: &UnitGroup,
    chi: &UnitChar,
    psi: &AddChar,
    shift: i64,
) -> Result<GaussSumResult, GaussError> {
    let field = psi.field;
    let r = group.conductor(chi) as i64;
    let additive_level = shift - field.d() as i64;
    let level = r.max(additive_level).max(1) as u32;
    if level > field.prec() || additive_level > field.prec() as i64 {
        return Err(GaussError::Field(LocalFieldError::PrecisionExceeded {
            needed: level.max(additive_level.max(0) as u32),
            prec: field.prec(),
        }));
    }
    let reps = field.unit_reps(level)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for u in &reps {
        let cu = group.eval(chi, u.unit().unwrap());
        let au = psi.eval_shifted(u, shift)?;
        sum += cu * au;
    }
    Ok(GaussSumResult {
        value: sum / reps.len() as f64,
        normalization: Normalization::UnitMassOne,
    })
}

/// η(μ, p^yval) = ∫_{O^×} μ(x) ψ(x p^yval) d^×x under d^×x = dx/|x|
/// (Vol(O^×) = 1 - 1/q), the convention of the root-number formula.
pub fn eta(
    group: &UnitGroup,
    mu: &UnitChar,
    psi: &AddChar,
    yval: i64,
) -> Result<GaussSumResult, GaussError> {
    let field = psi.field;
    let r = group.conductor(mu) as i64;
    let additive_level = -yval - field.d() as i64;
    let level = r.max(additive_level).max(1) as u32;
    if level > field.prec() {
        return Err(GaussError::Field(LocalFieldError::PrecisionExceeded {
            needed: level,
            prec: field.prec(),
        }));
    }
    let reps = field.unit_reps(level)?;
    let weight = field.q().pow(level) as f64; // each coset has dx/|x| mass q^{-level}
    let mut sum = Complex64::new(0.0, 0.0);
    for u in &reps {
        let LocalElement::NonZero { unit, .. } = u else {
            unreachable!()
        };
        let x = LocalElement::NonZero {
            val: yval,
            unit: *unit,
        };
        sum += group.eval(mu, *unit) * psi.eval(&x)?;
    }
    Ok(GaussSumResult {
        value: sum / weight,
        normalization: Normalization::DxOverAbs,
    })
}

/// r(μ) = μ(-1) μ(ϖ)^n η(μ, ϖ^{-n})^{-1} q^{-n/2} for v(μ) = n ≥ 1 and
/// v(ψ) = 0. Unit modulus under the dx/|x| normalization of η.
pub fn root_number(
    group: &UnitGroup,
    mu: &UnitChar,
    at_uniformizer: Complex64,
    psi: &AddChar,
) -> Result<Complex64, GaussError> {
    if psi.field.d() != 0 {
        return Err(GaussError::NonzeroAdditiveConductor);
    }
    let n = group.conductor(mu);
    if n == 0 {
        return Err(GaussError::UnramifiedRootNumber);
    }
    let field = psi.field;
    let minus_one = field.modulus() - 1;
    let mu_minus_one = group.eval(mu, minus_one);
    let eta_val = eta(group, mu, psi, -(n as i64))?.value;
    let q = field.q() as f64;
    Ok(mu_minus_one * at_uniformizer.powi(n as i32) / eta_val * q.powf(-(n as f64) / 2.0))
}

/// A unitary character of R^×: sgn(x)^m |x|^{iφ}.
#[derive(Debug, Clone, Copy)]
pub struct ArchChar {
    /// parity m ∈ {0, 1}
    pub parity: u8,
    /// imaginary-exponent parameter φ
    pub phi: f64,
}

impl ArchChar {
    pub fn new(parity: u8, phi: f64) -> Self {
        assert!(parity <= 1);
        Self { parity, phi }
    }

    /// Analytic conductor C = 2 + |(m + iφ)/2|.
    pub fn conductor(&self) -> f64 {
        2.0 + 0.5 * self.phi.hypot(self.parity as f64)
    }
}

/// Test function on F_v^× for the archimedean Gauss integral.
#[derive(Clone)]
pub enum TestFunction {
    /// exp(-(|x| + 1/|x|)) · sgn(x)^m, Schwartz on R^× for either parity m.
    Default,
    /// A caller-supplied function with its effective support on (0, ∞);
    /// it is evaluated on both half-lines.
    Custom {
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        support: (f64, f64),
    },
}

impl TestFunction {
    fn eval(&self, x: f64, parity: u8) -> f64 {
        match self {
            TestFunction::Default => {
                if x == 0.0 {
                    return 0.0;
                }
                let a = x.abs();
                let sgn = if x < 0.0 && parity == 1 { -1.0 } else { 1.0 };
                sgn * (-(a + 1.0 / a)).exp()
            }
            TestFunction::Custom { f, .. } => f(x),
        }
    }

    fn support(&self) -> (f64, f64) {
        match self {
            // e^{-(x+1/x)} < 4e-17 outside
            TestFunction::Default => (1.0 / 38.0, 38.0),
            TestFunction::Custom { support, .. } => *support,
        }
    }
}

/// G_φ(χ, t) = ∫_R φ(x) e^{2πitx} χ(x) dx by oscillatory panel quadrature.
///
/// The positive half-line carries the phase 2πtx + φ log x; panels are sized
/// to about one half-period from the local frequency and split at the
/// stationary point. Absolute error target 1e-8, hard cap 10^6 evaluations.
pub fn arch_gauss(phi_fn: &TestFunction, chi: &ArchChar, t: f64) -> Result<Complex64, GaussError> {
    if chi.phi.abs() > 500.0 {
        return Err(GaussError::PhiOutOfRange(chi.phi));
    }
    let (lo, hi) = phi_fn.support();
    let parity = chi.parity;
    let phi = chi.phi;
    let sign = if parity == 1 { -1.0 } else { 1.0 };
    // x > 0 side contributes φ(x) x^{iφ} e^{2πitx};
    // x < 0 side contributes (-1)^m φ(-x) x^{iφ} e^{-2πitx}.
    let f = move |x: f64| -> Complex64 {
        let osc = Complex64::from_polar(1.0, TAU * t * x);
        let xi_phi = Complex64::from_polar(1.0, phi * x.ln());
        let plus = phi_fn.eval(x, parity);
        let minus = phi_fn.eval(-x, parity);
        xi_phi * (plus * osc + sign * minus * osc.conj())
    };

    let mut breaks = Vec::new();
    // stationary point of 2π|t|x ± φ log x
    if phi != 0.0 && t != 0.0 {
        let xs = (phi / (TAU * t)).abs();
        if xs > lo && xs < hi {
            breaks.push(xs);
        }
    }
    // oscillation panels: step ≈ π / (local frequency)
    let freq = |x: f64| TAU * t.abs() + phi.abs() / x;
    let mut x = lo;
    while x < hi {
        let step = (PI / (freq(x) + 1.0)).max(1e-4);
        x += step;
        if x < hi {
            breaks.push(x);
        }
    }
    let opts = QuadOptions {
        abs_tol: 1e-9,
        rel_tol: 1e-11,
        max_evals: 1_000_000,
    };
    let r = integrate_complex_split(f, lo, hi, &breaks, opts)?;
    Ok(r.value)
}

/// Scan |G_φ(χ, ·)| over a log-spaced grid of `n_points ≥ 200` points with
/// |t| ∈ [C^{1-ε}, C^{1+ε}]; returns the argmax and its value.
pub fn arch_gauss_scan(
    phi_fn: &TestFunction,
    chi: &ArchChar,
    epsilon: f64,
    n_points: usize,
) -> Result<(f64, Complex64), GaussError> {
    let n = n_points.max(200);
    let c = chi.conductor();
    let t_lo = c.powf(1.0 - epsilon);
    let t_hi = c.powf(1.0 + epsilon);
    let mut best = (t_lo, Complex64::new(0.0, 0.0));
    for i in 0..n {
        let t = t_lo * (t_hi / t_lo).powf(i as f64 / (n - 1) as f64);
        let g = arch_gauss(phi_fn, chi, t)?;
        if g.norm() > best.1.norm() {
            best = (t, g);
        }
    }
    Ok(best)
}

/// ∫_R |φ(x)|² dx for the chosen test function (Plancherel reference).
pub fn test_function_l2_norm_sq(phi_fn: &TestFunction) -> f64 {
    let (lo, hi) = phi_fn.support();
    let f = |x: f64| {
        let p = phi_fn.eval(x, 0);
        let m = phi_fn.eval(-x, 0);
        p * p + m * m
    };
    crate::quad::integrate(f, lo, hi, QuadOptions::with_abs_tol(1e-12)).expect("smooth integrand")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::FiniteLocalField;
    use crate::quad;

    fn zeta1(q: u64) -> f64 {
        1.0 / (1.0 - 1.0 / q as f64)
    }

    #[test]
    fn gauss_sum_modulus_q5_r1() {
        let f = FiniteLocalField::new(5, 0, 3).unwrap();
        let g = UnitGroup::new(&f);
        let psi = AddChar::new(&f);
        // conductor-1 character, additive level 1 (shift 1, d=0)
        let chi = g.chars_of_conductor(1)[0];
        let gs = gauss_sum(&g, &chi, &psi, 1).unwrap();
        let expected = 5f64.powf(-0.5) * zeta1(5);
        assert!((gs.value.norm() - expected).abs() < 1e-10);
        assert!((gs.value.norm() - 0.559_016_994_374_947).abs() < 1e-9);
        assert_eq!(gs.normalization, Normalization::UnitMassOne);
    }

    #[test]
    fn gauss_sum_vanishing_law_exhaustive() {
        // r >= 1: zero unless additive level == r; r = 0: 1 / (-1/(q-1)) / 0
        for &q in &[3u64, 5, 7] {
            let f = FiniteLocalField::new(q, 0, 4).unwrap();
            let g = UnitGroup::new(&f);
            let psi = AddChar::new(&f);
            for r in 0..=2u32 {
                for chi in g.chars_of_conductor(r) {
                    for l in 0..=3i64 {
                        let gs = gauss_sum(&g, &chi, &psi, l).unwrap().value;
                        let a = l; // additive level (d = 0)
                        if r >= 1 {
                            if a == r as i64 {
                                let expected = (q as f64).powf(-(r as f64) / 2.0) * zeta1(q);
                                assert!(
                                    (gs.norm() - expected).abs() < 1e-10,
                                    "q={q} r={r} l={l}: |G|={}",
                                    gs.norm()
                                );
                            } else {
                                assert!(gs.norm() < 1e-10, "q={q} r={r} l={l} not zero");
                            }
                        } else {
                            let expected = if a <= 0 {
                                1.0
                            } else if a == 1 {
                                -1.0 / (q as f64 - 1.0)
                            } else {
                                0.0
                            };
                            assert!((gs.re - expected).abs() < 1e-10);
                            assert!(gs.im.abs() < 1e-10);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gauss_sum_with_additive_conductor_shift() {
        // d = 1: the twisted character ψ(p^{-l}·) has level l - d
        let f = FiniteLocalField::new(5, 1, 4).unwrap();
        let g = UnitGroup::new(&f);
        let psi = AddChar::new(&f);
        let chi = g.chars_of_conductor(1)[0];
        // level l - 1 == 1 needs l = 2
        let hit = gauss_sum(&g, &chi, &psi, 2).unwrap().value;
        assert!((hit.norm() - 5f64.powf(-0.5) * zeta1(5)).abs() < 1e-10);
        let miss = gauss_sum(&g, &chi, &psi, 1).unwrap().value;
        assert!(miss.norm() < 1e-12);
    }

    #[test]
    fn gauss_sum_trivial_character_trivial_psi() {
        let f = FiniteLocalField::new(7, 0, 2).unwrap();
        let g = UnitGroup::new(&f);
        let psi = AddChar::new(&f);
        let gs = gauss_sum(&g, &g.trivial_char(), &psi, 0).unwrap();
        assert!((gs.value - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn root_number_unit_modulus() {
        for &q in &[3u64, 5, 7, 11] {
            let f = FiniteLocalField::new(q, 0, 3).unwrap();
            let g = UnitGroup::new(&f);
            let psi = AddChar::new(&f);
            for n in 1..=2u32 {
                for mu in g.chars_of_conductor(n) {
                    let r = root_number(&g, &mu, Complex64::new(1.0, 0.0), &psi).unwrap();
                    assert!(
                        (r.norm() - 1.0).abs() < 1e-9,
                        "q={q} n={n} idx={} |r|={}",
                        mu.index(),
                        r.norm()
                    );
                }
            }
        }
    }

    #[test]
    fn root_number_conjugate_consistency() {
        // r(μ̄) agrees with the brute-force recomputation through μ^{-1}
        let f = FiniteLocalField::new(5, 0, 2).unwrap();
        let g = UnitGroup::new(&f);
        let psi = AddChar::new(&f);
        for mu in g.chars_of_conductor(1) {
            let z = Complex64::from_polar(1.0, 0.77);
            let r = root_number(&g, &mu, z, &psi).unwrap();
            let rbar = root_number(&g, &mu.inverse(), z.conj(), &psi).unwrap();
            // η(μ̄, y) = conj(η(μ, ȳ)) at real-rep level: check via μ(-1) symmetry
            let m1 = g.eval(&mu, f.modulus() - 1);
            let lhs = rbar;
            let rhs = r.conj() * m1;
            assert!(
                (lhs - rhs).norm() < 1e-10,
                "idx={} lhs={lhs} rhs={rhs}",
                mu.index()
            );
        }
    }

    #[test]
    fn root_number_rejects_bad_inputs() {
        let f = FiniteLocalField::new(5, 0, 2).unwrap();
        let g = UnitGroup::new(&f);
        let psi = AddChar::new(&f);
        assert!(matches!(
            root_number(&g, &g.trivial_char(), Complex64::new(1.0, 0.0), &psi),
            Err(GaussError::UnramifiedRootNumber)
        ));
        let f1 = FiniteLocalField::new(5, 1, 2).unwrap();
        let psi1 = AddChar::new(&f1);
        let chi = g.chars_of_conductor(1)[0];
        assert!(matches!(
            root_number(&g, &chi, Complex64::new(1.0, 0.0), &psi1),
            Err(GaussError::NonzeroAdditiveConductor)
        ));
    }

    #[test]
    fn root_number_independent_of_rep_choice() {
        // recompute η with higher-level representatives: same r(μ) to 1e-12
        let f = FiniteLocalField::new(7, 0, 3).unwrap();
        let g = UnitGroup::new(&f);
        let psi = AddChar::new(&f);
        let mu = g.chars_of_conductor(1)[1];
        let r1 = root_number(&g, &mu, Complex64::new(1.0, 0.0), &psi).unwrap();
        // manual η with level-3 representatives
        let reps = f.unit_reps(3).unwrap();
        let mut s = Complex64::new(0.0, 0.0);
        for u in &reps {
            let x = LocalElement::NonZero {
                val: -1,
                unit: u.unit().unwrap(),
            };
            s += g.eval(&mu, u.unit().unwrap()) * psi.eval(&x).unwrap();
        }
        let eta3 = s / 7f64.powi(3);
        let m1 = g.eval(&mu, f.modulus() - 1);
        let r2 = m1 / eta3 * 7f64.powf(-0.5);
        assert!((r1 - r2).norm() < 1e-12);
    }

    #[test]
    fn arch_gauss_at_zero_is_plain_integral() {
        let chi = ArchChar::new(0, 0.0);
        let g0 = arch_gauss(&TestFunction::Default, &chi, 0.0).unwrap();
        let direct = quad::integrate(
            |x: f64| 2.0 * (-(x + 1.0 / x)).exp(),
            1.0 / 38.0,
            38.0,
            QuadOptions::with_abs_tol(1e-12),
        )
        .unwrap();
        assert!((g0.re - direct).abs() < 1e-8);
        assert!(g0.im.abs() < 1e-9);
    }

    #[test]
    fn arch_gauss_oscillatory_cross_check() {
        // moderate oscillation, compared against a brute-force fine Simpson sum
        let chi = ArchChar::new(0, 40.0);
        let t = 9.0;
        let g = arch_gauss(&TestFunction::Default, &chi, t).unwrap();
        let n = 400_000;
        let (lo, hi) = (1.0 / 38.0, 38.0);
        let h = (hi - lo) / n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..=n {
            let x: f64 = lo + i as f64 * h;
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let v = 2.0
                * (-(x + 1.0 / x)).exp()
                * Complex64::from_polar(1.0, chi.phi * x.ln())
                * (TAU * t * x).cos();
            acc += w * v;
        }
        acc *= h / 3.0;
        assert!((g - acc).norm() < 1e-7, "g={g} simpson={acc}");
    }

    #[test]
    fn arch_gauss_rejects_large_phi() {
        let chi = ArchChar::new(0, 600.0);
        assert!(matches!(
            arch_gauss(&TestFunction::Default, &chi, 1.0),
            Err(GaussError::PhiOutOfRange(_))
        ));
    }

    #[test]
    fn plancherel_sanity() {
        // ∫|φ|² dx ≈ ∫|G_φ(χ,t)|² dt within 2%
        let chi = ArchChar::new(0, 3.0);
        let phi_l2 = test_function_l2_norm_sq(&TestFunction::Default);
        let g2 = |t: f64| {
            arch_gauss(&TestFunction::Default, &chi, t)
                .unwrap()
                .norm_sqr()
        };
        // G is even in t for the default φ; integrate the positive axis
        let mut total = 0.0;
        let mut prev = f64::INFINITY;
        let panels = [0.0, 2.0, 5.0, 10.0, 20.0, 40.0];
        for w in panels.windows(2) {
            let v = quad::integrate(g2, w[0], w[1], QuadOptions::with_abs_tol(1e-8)).unwrap();
            total += v;
            prev = v;
        }
        assert!(
            prev < 0.005 * total,
            "tail not negligible: {prev} vs {total}"
        );
        let fourier_l2 = 2.0 * total;
        let rel = (fourier_l2 - phi_l2).abs() / phi_l2;
        assert!(rel < 0.02, "Plancherel mismatch: {fourier_l2} vs {phi_l2}");
    }

    #[test]
    fn scan_refinement_is_monotone() {
        let chi = ArchChar::new(0, 30.0);
        let (_, g1) = arch_gauss_scan(&TestFunction::Default, &chi, 0.1, 200).unwrap();
        let (_, g2) = arch_gauss_scan(&TestFunction::Default, &chi, 0.1, 400).unwrap();
        assert!(g2.norm() >= g1.norm() - 1e-6);
    }

    #[test]
    fn scan_at_minimal_conductor() {
        // φ = 0 gives C = 2; the scan window sits at unit scale and the
        // maximum stays above a fixed constant (0.0032 observed, frozen)
        let chi = ArchChar::new(0, 0.0);
        let (t_best, g) = arch_gauss_scan(&TestFunction::Default, &chi, 0.1, 200).unwrap();
        assert!((1.0..=2.5).contains(&t_best), "t_best = {t_best}");
        assert!(g.norm() >= 0.003, "|G| = {}", g.norm());
    }
}
