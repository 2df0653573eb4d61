//! The verification suite: every module's headline identity and bound as a
//! pass/fail check with a machine-readable residual.
//!
//! Each check compares a closed form against an independent oracle (brute
//! force, series summation, quadrature, or exhaustive enumeration) at a
//! pinned tolerance. The CLI `verify-all` subcommand and the acceptance
//! integration test both run these.

use crate::amplify::{self, classify_tuple, count_tuples, optimize_exponents, rat, TupleType};
use crate::dualkirillov::{
    branching_dimension, branching_dimension_oracle, matrix_coefficient, DkContext, LocalRepr,
};
use crate::gauss::{arch_gauss, gauss_sum, ArchChar, TestFunction};
use crate::laurent::Window;
use crate::localfield::{AddChar, FiniteLocalField, MultChar, UnitGroup};
use crate::spherical::{
    xi_finite, xi_finite_scaled_exact_display, xi_finite_scaled_exact_via_f, xi_integral_finite,
    xi_integral_finite_bruteforce, TranslatedTorusSpec,
};
use crate::su2::{intertwining_eigenvalue, intertwining_eigenvalue_quadrature};
use crate::whittaker::{
    local_zeta, sigma_v, sigma_v_bruteforce, unramified_l_factor, WhittakerSeq,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};
use std::time::Instant;

/// Outcome of one verification check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// worst residual observed, in the check's own metric
    pub max_residual: f64,
    pub tolerance: f64,
    pub detail: String,
    pub seconds: f64,
}

impl CheckResult {
    fn finish(
        name: &'static str,
        started: Instant,
        max_residual: f64,
        tolerance: f64,
        detail: String,
    ) -> Self {
        CheckResult {
            name,
            passed: max_residual <= tolerance,
            max_residual,
            tolerance,
            detail,
            seconds: started.elapsed().as_secs_f64(),
        }
    }
}

/// Run every check; `quick` caps grid sizes for a fast smoke pass.
pub fn run_all(quick: bool) -> Vec<CheckResult> {
    vec![
        check_gauss_sum_law(quick),
        check_new_vector_zeta(quick),
        check_sigma_closed_forms(quick),
        check_matrix_coefficients(quick),
        check_branching(quick),
        check_macdonald(quick),
        check_xi_translated(quick),
        check_intertwining(quick),
        check_optimizer(quick),
        check_arch_gauss_scan(quick),
        check_tuples(quick),
    ]
}

/// Gauss-sum law: vanishing off the matched level and
/// |G| = q^{-r/2}(1-1/q)^{-1} on it.
pub fn check_gauss_sum_law(quick: bool) -> CheckResult {
    let t0 = Instant::now();
    let qs: &[u64] = if quick { &[3, 5] } else { &[3, 5, 7, 11] };
    let mut worst = 0.0f64;
    let mut cases = 0usize;
    for &q in qs {
        let field = FiniteLocalField::new(q, 0, 4).unwrap();
        let group = UnitGroup::new(&field);
        let psi = AddChar::new(&field);
        for r in 0..=2u32 {
            for chi in group.chars_of_conductor(r) {
                for level in 0..=3i64 {
                    let g = gauss_sum(&group, &chi, &psi, level).unwrap().value;
                    let expected = if r >= 1 {
                        if level == r as i64 {
                            (q as f64).powf(-(r as f64) / 2.0) / (1.0 - 1.0 / q as f64)
                        } else {
                            0.0
                        }
                    } else if level <= 0 {
                        1.0
                    } else if level == 1 {
                        1.0 / (q as f64 - 1.0)
                    } else {
                        0.0
                    };
                    worst = worst.max((g.norm() - expected).abs());
                    cases += 1;
                }
            }
        }
    }
    CheckResult::finish(
        "gauss-sum-law",
        t0,
        worst,
        1e-10,
        format!("{cases} (q, χ, level) cases"),
    )
}

/// New-vector zeta identity ζ(s+1/2, W₀, χ, ψ) = L(s+1/2, π⊗χ).
pub fn check_new_vector_zeta(quick: bool) -> CheckResult {
    let t0 = Instant::now();
    let draws = if quick { 15 } else { 50 };
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let field = FiniteLocalField::new(7, 0, 4).unwrap();
    let group = UnitGroup::new(&field);
    let psi = AddChar::new(&field);
    let mut worst = 0.0f64;
    for _ in 0..draws {
        let phase = rng.gen_range(0.0..TAU);
        let (a1, a2) = if rng.gen_bool(0.7) {
            (
                Complex64::from_polar(1.0, phase),
                Complex64::from_polar(1.0, -phase),
            )
        } else {
            let sigma: f64 = rng.gen_range(0.02..0.2);
            let z = Complex64::from_polar(1.0, phase);
            (z * 7f64.powf(sigma), z * 7f64.powf(-sigma))
        };
        let s = Complex64::new(rng.gen_range(0.0..0.5), rng.gen_range(-2.0..2.0));
        let chi = MultChar::abs_power(&group, Complex64::new(0.0, rng.gen_range(-1.0..1.0)));
        let w = WhittakerSeq::unramified_new_vector(&group, a1, a2, 220);
        let z = local_zeta(&group, &w, &chi, &psi, s, 0).unwrap();
        let lf = unramified_l_factor((a1, a2), chi.at_uniformizer, 7, s + 0.5);
        worst = worst.max((z - lf).norm());
    }
    CheckResult::finish(
        "new-vector-zeta",
        t0,
        worst,
        1e-9,
        format!("{draws} random (α, s) draws, series vs Euler factor"),
    )
}

/// The eight Σ_v closed forms vs shifted-Whittaker sums, plus the tempered
/// bounds with displayed constants at Re(s) = 0.05.
pub fn check_sigma_closed_forms(quick: bool) -> CheckResult {
    let t0 = Instant::now();
    let draws = if quick { 12 } else { 50 };
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst = 0.0f64;
    let mut bound_excess = 0.0f64;
    for case in 1..=8u8 {
        for _ in 0..draws {
            let q = [3u64, 5, 7][rng.gen_range(0..3)];
            let phase = rng.gen_range(0.0..TAU);
            let (a1, a2) = if rng.gen_bool(0.6) {
                (
                    Complex64::from_polar(1.0, phase),
                    Complex64::from_polar(1.0, -phase),
                )
            } else {
                let sigma: f64 = rng.gen_range(0.0..0.2);
                let z = Complex64::from_polar(1.0, phase);
                ((q as f64).powf(sigma) * z, (q as f64).powf(-sigma) * z)
            };
            let d = rng.gen_range(0..3u32);
            let s = Complex64::new(rng.gen_range(0.05..0.6), rng.gen_range(-2.0..2.0));
            let closed = sigma_v(case, (a1, a2), q, s, d).unwrap();
            let brute = sigma_v_bruteforce(case, (a1, a2), q, s, d, 400).unwrap();
            worst = worst.max((closed - brute).norm());
        }
        // tempered bound at Re(s) = ε = 0.05 with the displayed constants
        let eps = 0.05;
        for _ in 0..draws.min(25) {
            let q = [3u64, 5, 7, 11][rng.gen_range(0..4)];
            let phase = rng.gen_range(0.0..TAU);
            let a = (
                Complex64::from_polar(1.0, phase),
                Complex64::from_polar(1.0, -phase),
            );
            let d = rng.gen_range(0..2u32);
            let s = Complex64::new(eps, rng.gen_range(-3.0..3.0));
            let v = sigma_v(case, a, q, s, d).unwrap().norm();
            let qf = q as f64;
            let tr = (a.0 + a.1).norm();
            let denom = 1.0 - qf.powf(-2.0 - 2.0 * eps);
            let bound = match case {
                1 | 2 => {
                    (1.0 + qf.powf(-1.0 - eps)) / denom * qf.powf(-(d as f64 + 1.0) / 2.0) * tr
                }
                3 | 4 => {
                    (1.0 + qf.powf(-1.0 - eps)) / denom
                        * qf.powf(-(d as f64 + 1.0) / 2.0 - eps)
                        * tr
                }
                5 | 6 => {
                    (1.0 + qf.powf(-1.0 - eps) + qf.powf(-2.0 - 2.0 * eps)) / denom
                        * qf.powf(-(d as f64) / 2.0 - 1.0 - eps)
                        * (tr * tr + 1.0)
                }
                7 => qf.powf(-(d as f64) / 2.0 + eps),
                8 => qf.powf(-(d as f64) / 2.0 - eps),
                _ => unreachable!(),
            };
            bound_excess = bound_excess.max(v - bound);
        }
    }
    let residual = worst.max(bound_excess.max(0.0));
    CheckResult::finish(
        "sigma-local-factors",
        t0,
        residual,
        1e-8,
        format!("8 cases × {draws} draws vs brute force; tempered bounds at Re(s)=0.05"),
    )
}

/// Matrix-coefficient corollaries for every series, plus the tempered
/// Harish-Chandra envelope.
pub fn check_matrix_coefficients(quick: bool) -> CheckResult {
    let t0 = Instant::now();
    let qs: &[u64] = if quick { &[3] } else { &[3, 5, 7] };
    let mut worst = 0.0f64;
    let mut xi_excess = 0.0f64;
    for &q in qs {
        let ctx = DkContext::new(q, 3).unwrap();
        let qf = q as f64;
        let window = Window::new(-30, 260);
        let mut rng = ChaCha8Rng::seed_from_u64(q + 7);
        // case (2): unramified μ1 ≠ μ2, N = 0 and 1
        for _ in 0..4 {
            let ph1 = rng.gen_range(0.1..TAU);
            let ph2 = rng.gen_range(0.1..TAU);
            if (ph1 - ph2).abs() < 0.05 {
                continue;
            }
            let (t1, t2) = (
                Complex64::from_polar(1.0, ph1),
                Complex64::from_polar(1.0, ph2),
            );
            let s = |k: i64| (t1.powi(k as i32) - t2.powi(k as i32)) / (t1 - t2);
            let repr = LocalRepr::Unramified {
                alpha1: t1,
                alpha2: t2,
            };
            for j in -6i64..=6 {
                let jj = j.abs();
                let mc0 = matrix_coefficient(&ctx, &repr, 0, j, window).unwrap();
                let exp0 = qf.powf(-(jj as f64) / 2.0) / (1.0 + 1.0 / qf)
                    * (s(jj + 1) - t1 * t2 / qf * s(jj - 1)).norm();
                worst = worst.max((mc0.norm() - exp0).abs());
                xi_excess = xi_excess.max(mc0.norm() - xi_finite(q, j));
                let mc1 = matrix_coefficient(&ctx, &repr, 1, j, window).unwrap();
                let exp1 = qf.powf(-(jj as f64) / 2.0) / (1.0 + 1.0 / qf)
                    * (s(jj + 1) / qf - t1 * t2 * s(jj - 1)).norm();
                worst = worst.max((mc1.norm() - exp1).abs());
                xi_excess = xi_excess.max(mc1.norm() - xi_finite(q, j));
            }
        }
        // case (3): μ1 = μ2, N = 0 and 1
        let a = Complex64::from_polar(1.0, 1.234);
        let repr = LocalRepr::Unramified {
            alpha1: a,
            alpha2: a,
        };
        for j in -6i64..=6 {
            let jj = j.abs() as f64;
            let mc0 = matrix_coefficient(&ctx, &repr, 0, j, window).unwrap();
            let exp0 = qf.powf(-jj / 2.0) * (1.0 + jj * (1.0 - 1.0 / qf) / (1.0 + 1.0 / qf));
            worst = worst.max((mc0.norm() - exp0).abs());
            xi_excess = xi_excess.max(mc0.norm() - xi_finite(q, j));
            let mc1 = matrix_coefficient(&ctx, &repr, 1, j, window).unwrap();
            let exp1 = qf.powf(-jj / 2.0) * (1.0 - jj * (1.0 - 1.0 / qf) / (1.0 + 1.0 / qf)).abs();
            worst = worst.max((mc1.norm() - exp1).abs());
        }
        // case (1): mixed ramified/unramified at N = c
        let chi = ctx.group.chars_of_conductor(1)[0];
        let repr = LocalRepr::PrincipalOrComplementary {
            mu1: chi.extend(Complex64::from_polar(1.0, 0.77)),
            mu2: ctx
                .group
                .trivial_char()
                .extend(Complex64::from_polar(1.0, -0.3)),
        };
        for j in -6i64..=6 {
            let mc = matrix_coefficient(&ctx, &repr, 1, j, window).unwrap();
            let expected = qf.powf(-(j.abs() as f64) / 2.0);
            worst = worst.max((mc.norm() - expected).abs());
            xi_excess = xi_excess.max(mc.norm() - xi_finite(q, j));
        }
        // special q-power case: v(μ) = 0, N = 1 gives q^{-|j|}
        let repr = LocalRepr::Special {
            mu: ctx
                .group
                .trivial_char()
                .extend(Complex64::from_polar(1.0, 0.5)),
        };
        for j in -6i64..=6 {
            let mc = matrix_coefficient(&ctx, &repr, 1, j, window).unwrap();
            worst = worst.max((mc.norm() - qf.powf(-(j.abs() as f64))).abs());
            xi_excess = xi_excess.max(mc.norm() - xi_finite(q, j));
        }
        // supercuspidal vanishing off the unit shell
        let mut n_nu = std::collections::BTreeMap::new();
        let mut c0 = std::collections::BTreeMap::new();
        n_nu.insert(ctx.group.trivial_char(), -2i64);
        c0.insert(ctx.group.trivial_char(), Complex64::from_polar(1.0, 0.9));
        let sc = LocalRepr::SupercuspidalInterface {
            n_nu,
            c0,
            central: ctx.group.trivial_char().extend(Complex64::new(1.0, 0.0)),
        };
        for j in -6i64..=6 {
            let mc = matrix_coefficient(&ctx, &sc, 2, j, window).unwrap();
            let expected = if j == 0 { 1.0 } else { 0.0 };
            worst = worst.max((mc.norm() - expected).abs());
        }
    }
    let residual = worst.max(xi_excess.max(0.0));
    CheckResult::finish(
        "matrix-coefficients",
        t0,
        residual,
        1e-8,
        format!("closed forms and Ξ envelope at q ∈ {qs:?}, |j| ≤ 6"),
    )
}

/// Branching dimension d_N = N+1-v(χ₁χ₂^{-1}) vs the double-coset oracle,
/// exhaustively at q = 3.
pub fn check_branching(_quick: bool) -> CheckResult {
    let t0 = Instant::now();
    let field = FiniteLocalField::new(3, 0, 3).unwrap();
    let group = UnitGroup::new(&field);
    let mut chars = group.chars_of_conductor(0);
    chars.extend(group.chars_of_conductor(1));
    chars.extend(group.chars_of_conductor(2));
    let mut worst = 0.0f64;
    let mut cases = 0usize;
    for chi1 in &chars {
        for chi2 in &chars {
            let min_n = group.conductor(chi1).max(group.conductor(chi2));
            for n in min_n..=3 {
                let formula = branching_dimension(&group, chi1, chi2, n).unwrap();
                let oracle = branching_dimension_oracle(&group, chi1, chi2, n).unwrap();
                worst = worst.max((formula as f64 - oracle as f64).abs());
                cases += 1;
            }
        }
    }
    CheckResult::finish(
        "branching-dimension",
        t0,
        worst,
        0.0,
        format!("{cases} exact (χ₁, χ₂, N) cases at q = 3"),
    )
}

/// Macdonald consistency in exact rational arithmetic.
pub fn check_macdonald(_quick: bool) -> CheckResult {
    let t0 = Instant::now();
    let mut mismatches = 0u32;
    for &q in &[2u64, 3, 5, 7, 11] {
        for m in 0..=50 {
            if xi_finite_scaled_exact_via_f(q, m) != xi_finite_scaled_exact_display(q, m) {
                mismatches += 1;
            }
        }
    }
    CheckResult::finish(
        "macdonald-consistency",
        t0,
        mismatches as f64,
        0.0,
        "255 exact rational comparisons, m ≤ 50, q ∈ {2,3,5,7,11}".to_string(),
    )
}

/// Translated Ξ-integral: closed four-term evaluation vs the cartan_n
/// enumeration, plus the d = 0 series identity.
pub fn check_xi_translated(quick: bool) -> CheckResult {
    let t0 = Instant::now();
    let qs: &[u64] = if quick { &[3] } else { &[3, 5] };
    let d_max = if quick { 2 } else { 3 };
    let range = 120; // keeps the neglected Ξ-tail below 1e-9 at θ = 0.25
    let mut worst = 0.0f64;
    for &q in qs {
        let field = FiniteLocalField::new(q, 0, 8).unwrap();
        for d in 0..=d_max {
            for &theta in &[0.0, 0.1, 0.25] {
                let spec = TranslatedTorusSpec::new(-d, theta).unwrap();
                let closed = xi_integral_finite(&spec, q, 0).unwrap().unit_haar;
                let brute = xi_integral_finite_bruteforce(&spec, &field, range).unwrap();
                worst = worst.max((closed - brute).abs());
            }
        }
    }
    // d = 0 equals the series 1 + 2Σ Ξ(n)^{1-2θ}
    for &theta in &[0.0, 0.25] {
        let spec = TranslatedTorusSpec::new(0, theta).unwrap();
        let v = xi_integral_finite(&spec, 5, 0).unwrap().unit_haar;
        let mut series = 1.0;
        for n in 1..6000 {
            let t = 2.0 * xi_finite(5, n).powf(1.0 - 2.0 * theta);
            series += t;
            if t < 1e-15 {
                break;
            }
        }
        worst = worst.max((v - series).abs());
    }
    CheckResult::finish(
        "xi-translated-integral",
        t0,
        worst,
        1e-8,
        format!("closed form vs cartan oracle, q ∈ {qs:?}, d ≤ {d_max}, θ ∈ {{0, 0.1, 0.25}}"),
    )
}

/// Intertwining eigenvalues: exact low cases, quadrature oracle, recurrence.
pub fn check_intertwining(quick: bool) -> CheckResult {
    let t0 = Instant::now();
    let n_max = if quick { 6 } else { 8 };
    let mut worst = 0.0f64;
    // λ_{0,0}(s) = π/s and λ_{2,1}(s) = -π(s-1)/(s(s+1)) at several points
    for &s0 in &[0.37, 0.9, 1.6] {
        let s = Complex64::new(s0, 0.41);
        let l0 = intertwining_eigenvalue(s, 0, 0).unwrap();
        worst = worst.max((l0 - PI / s).norm());
        let l2 = intertwining_eigenvalue(s, 2, 1).unwrap();
        worst = worst.max((l2 + PI * (s - 1.0) / (s * (s + 1.0))).norm());
    }
    // closed form vs quadrature oracle
    for &s in &[0.3, 0.7, 1.4] {
        for n in (0..=n_max).step_by(2) {
            let closed = intertwining_eigenvalue(Complex64::new(s, 0.0), n, n / 2).unwrap();
            let quad = intertwining_eigenvalue_quadrature(s, n).unwrap();
            worst = worst.max((closed.re - quad).abs());
        }
    }
    // recurrence residual < 1e-10 folded into the same residual metric
    for &s0 in &[0.3, 0.7, 1.4] {
        let s = Complex64::new(s0, 0.0);
        for k in 1..=(n_max / 2) {
            let lhs = intertwining_eigenvalue(s, 2 * k + 2, k + 1).unwrap();
            let a = intertwining_eigenvalue(s + 1.0, 2 * k, k).unwrap();
            let b = intertwining_eigenvalue(s, 2 * k - 2, k - 1).unwrap();
            worst = worst.max((lhs - (2.0 * (2.0 * k as f64 + 1.0) / s * a + b)).norm());
        }
    }
    CheckResult::finish(
        "intertwining-eigenvalues",
        t0,
        worst,
        1e-8,
        format!("closed forms, quadrature oracle and recurrence, n ≤ {n_max}"),
    )
}

/// Exact exponent optimizer: δ = (1-2θ)/8 with verified witnesses.
pub fn check_optimizer(_quick: bool) -> CheckResult {
    let t0 = Instant::now();
    let mut failures = 0u32;
    for i in 0..20i128 {
        let theta = rat(i, 41);
        let report = optimize_exponents(theta).unwrap();
        let expected = (rat(1, 1) - rat(2, 1) * theta) / rat(8, 1);
        if report.delta != expected || !report.witness_attains {
            failures += 1;
        }
    }
    let r0 = optimize_exponents(rat(0, 1)).unwrap();
    if r0.delta != rat(1, 8) {
        failures += 1;
    }
    let rks = optimize_exponents(rat(7, 64)).unwrap();
    if rks.delta != rat(25, 256) {
        failures += 1;
    }
    CheckResult::finish(
        "exponent-optimizer",
        t0,
        failures as f64,
        0.0,
        "20 grid θ values plus δ(0) = 1/8 and δ(7/64) = 25/256, exact".to_string(),
    )
}

/// Frozen calibration constants of the archimedean Gauss scan: the lower
/// resonance constant (|G(t)| ≥ c·C^{-0.6} somewhere in the window,
/// calibrated at C = 20) and the upper envelope constant K.
pub const ARCH_SCAN_LOWER_C: f64 = 0.04;
pub const ARCH_SCAN_ENVELOPE_K: f64 = 0.05;

/// Archimedean Gauss scan: resonance lower bound and envelope dominance on
/// a log grid |t| ∈ [C^{0.9}, C^{1.1}].
pub fn check_arch_gauss_scan(quick: bool) -> CheckResult {
    let t0 = Instant::now();
    let cs: &[f64] = if quick {
        &[20.0, 50.0]
    } else {
        &[20.0, 50.0, 100.0, 200.0]
    };
    let n_grid = if quick { 60 } else { 200 };
    let tf = TestFunction::Default;
    let mut lower_margin = f64::INFINITY; // min over C of max|G| - c·C^{-0.6}
    let mut envelope_excess = 0.0f64;
    for &c_target in cs {
        let phi = 2.0 * (c_target - 2.0);
        let chi = ArchChar::new(0, phi);
        let c = chi.conductor();
        let t_lo = c.powf(0.9);
        let t_hi = c.powf(1.1);
        let mut best = 0.0f64;
        for i in 0..n_grid {
            let t = t_lo * (t_hi / t_lo).powf(i as f64 / (n_grid - 1) as f64);
            let g = arch_gauss(&tf, &chi, t).unwrap().norm();
            best = best.max(g);
            envelope_excess = envelope_excess.max(g - ARCH_SCAN_ENVELOPE_K * c.min(t).powf(-0.4));
        }
        lower_margin = lower_margin.min(best - ARCH_SCAN_LOWER_C * c.powf(-0.6));
    }
    let residual = envelope_excess.max(if lower_margin < 0.0 {
        -lower_margin
    } else {
        0.0
    });
    CheckResult::finish(
        "arch-gauss-scan",
        t0,
        residual,
        0.0,
        format!(
            "C ∈ {cs:?}: resonance ≥ {ARCH_SCAN_LOWER_C}·C^-0.6 (margin {lower_margin:.2e}), envelope K = {ARCH_SCAN_ENVELOPE_K}"
        ),
    )
}

/// Tuple combinatorics: exhaustive classification and exact counts.
pub fn check_tuples(_quick: bool) -> CheckResult {
    let t0 = Instant::now();
    let mut failures = 0u32;
    let labels = [0u8, 1, 2, 3, 4];
    let mut counts = [0u128; 9];
    for &a in &labels {
        for &b in &labels {
            for &c in &labels {
                for &d in &labels {
                    let t = classify_tuple(&a, &b, &c, &d);
                    if !(1..=9).contains(&t.0) {
                        failures += 1;
                    } else {
                        counts[t.0 as usize - 1] += 1;
                    }
                }
            }
        }
    }
    for ty in 1..=9u8 {
        if counts[ty as usize - 1] != count_tuples(5, TupleType(ty)) {
            failures += 1;
        }
    }
    for m in 4..=12u64 {
        let total: u128 = (1..=9).map(|t| count_tuples(m, TupleType(t))).sum();
        if total != (m as u128).pow(4) {
            failures += 1;
        }
    }
    // the contribution table is internally consistent: type 1 dominates
    let table = amplify::contribution_forms();
    let (e_s, k_s, th) = (rat(1, 10), rat(1, 3), rat(1, 10));
    for class in [
        amplify::SigmaClass::Constant,
        amplify::SigmaClass::Cuspidal,
        amplify::SigmaClass::Eisenstein,
    ] {
        let t1 = table[&(class, TupleType(1))].form.exponent(e_s, k_s, th);
        for ty in 2..=9u8 {
            if table[&(class, TupleType(ty))].form.exponent(e_s, k_s, th) > t1 {
                failures += 1;
            }
        }
    }
    CheckResult::finish(
        "tuple-combinatorics",
        t0,
        failures as f64,
        0.0,
        "625 exhaustive classifications; counts sum to M⁴ for M ≤ 12".to_string(),
    )
}
