//! Amplification bookkeeping: tuple-type combinatorics, exponent-form
//! contribution tables, the exact min-max exponent optimizer, and the
//! Mellin-transform truncation bounds.
//!
//! Bounds are carried as Q^{a(θ) + b·e + c·κ} with exact rational
//! coefficients (a affine in the Ramanujan parameter θ), E = Q^e. The
//! optimizer solves min_{e ≥ 0, κ ∈ (0,1)} max of the four competing forms
//! by exact vertex enumeration and reports the optimal face together with a
//! verification of the closed-form witness.

use crate::quad::{integrate_complex, QuadError, QuadOptions};
use num_complex::Complex64;
use num_rational::Ratio;
use std::collections::BTreeMap;
use thiserror::Error;

pub type Rat = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rat {
    Ratio::new(n, d)
}

#[derive(Debug, Error)]
pub enum AmplifyError {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("θ = {0} must lie in [0, 1/2)")]
    ThetaOutOfRange(String),
    #[error("derivative order {0} outside the frozen table 1..=4")]
    BadDerivativeOrder(u32),
}

/// A rational affine function of θ: c0 + c1·θ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatAffine {
    pub c0: Rat,
    pub c1: Rat,
}

impl RatAffine {
    pub fn constant(c0: Rat) -> Self {
        Self { c0, c1: rat(0, 1) }
    }

    pub fn eval(&self, theta: Rat) -> Rat {
        self.c0 + self.c1 * theta
    }
}

/// An exponent form Q^{a(θ) + b·e + c·κ} with E = Q^e.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentForm {
    pub a: RatAffine,
    pub b: Rat,
    pub c: Rat,
}

impl ExponentForm {
    pub fn new(a: RatAffine, b: Rat, c: Rat) -> Self {
        Self { a, b, c }
    }

    /// The Q-exponent at the point (e, κ) for the given θ — exact.
    pub fn exponent(&self, e: Rat, kappa: Rat, theta: Rat) -> Rat {
        self.a.eval(theta) + self.b * e + self.c * kappa
    }
}

/// The nine coincidence patterns of an ordered 4-tuple (v₁, v₁', v₂, v₂').
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TupleType(pub u8);

/// Classify the coincidence pattern; total over all inputs.
pub fn classify_tuple<T: PartialEq>(v1: &T, v1p: &T, v2: &T, v2p: &T) -> TupleType {
    let pairs = [
        (v1, v1p),
        (v1, v2),
        (v1, v2p),
        (v1p, v2),
        (v1p, v2p),
        (v2, v2p),
    ];
    let eq: Vec<bool> = pairs.iter().map(|(x, y)| x == y).collect();
    let [e_11p, e_12, e_12p, e_1p2, e_1p2p, e_22p] = eq[..] else {
        unreachable!()
    };
    let mut count = 1;
    let items = [v1, v1p, v2, v2p];
    for i in 1..4 {
        if !(0..i).any(|j| items[i] == items[j]) {
            count += 1;
        }
    }
    match count {
        4 => TupleType(1),
        3 => {
            if e_12 || e_1p2p {
                TupleType(2)
            } else if e_12p || e_1p2 {
                TupleType(3)
            } else {
                TupleType(4) // v1 = v1' or v2 = v2'
            }
        }
        2 => {
            if e_12 && e_1p2p {
                TupleType(5)
            } else if e_12p && e_1p2 {
                TupleType(6)
            } else if e_11p && e_22p {
                TupleType(7)
            } else {
                TupleType(8) // a triple plus a singleton
            }
        }
        _ => TupleType(9),
    }
}

/// Exact count of ordered 4-tuples of each type drawn from an M-element set.
pub fn count_tuples(m: u64, tuple_type: TupleType) -> u128 {
    let m = m as u128;
    let falling = |k: u128| -> u128 {
        let mut acc = 1u128;
        for i in 0..k {
            acc *= m.saturating_sub(i);
        }
        acc
    };
    match tuple_type.0 {
        1 => falling(4),
        2 | 3 | 4 => 2 * falling(3),
        5 | 6 | 7 => falling(2),
        8 => 4 * falling(2),
        9 => m,
        _ => panic!("tuple type out of range"),
    }
}

/// Which spectral piece a contribution bound belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SigmaClass {
    /// Σ₁, the one-dimensional (constant) contribution
    Constant,
    /// Σ₂, the cuspidal contribution
    Cuspidal,
    /// Σ₃, the Eisenstein contribution
    Eisenstein,
}

/// A tabulated contribution bound: the ε-free exponent form plus the
/// ε-degrees carried separately (the bound reads
/// Q^{(qε_const + qε_κ·κ)ε} E^{ε·eε} × [κ·] Q^{form}).
#[derive(Debug, Clone, Copy)]
pub struct ContributionEntry {
    pub form: ExponentForm,
    pub eps_e_degree: Rat,
    pub eps_q_const: Rat,
    pub eps_q_kappa: Rat,
    /// whether the bound carries a multiplicative κ prefactor
    pub kappa_prefactor: bool,
}

/// The frozen table of dominant exponent forms per (spectral piece, tuple
/// type). Σ₁ entries are the per-type refinements; Σ₂/Σ₃ carry the typical
/// (type 1) bound with the E-order deficit of the rarer types folded in.
pub fn contribution_forms() -> BTreeMap<(SigmaClass, TupleType), ContributionEntry> {
    let mut table = BTreeMap::new();
    let zero = rat(0, 1);
    // Σ₁: E-exponents per type 1..9
    let sigma1_b = [-2i128, -2, -2, -2, -2, -4, -2, -3, -3];
    for (i, &b) in sigma1_b.iter().enumerate() {
        table.insert(
            (SigmaClass::Constant, TupleType(i as u8 + 1)),
            ContributionEntry {
                form: ExponentForm::new(RatAffine::constant(zero), rat(b, 1), zero),
                eps_e_degree: rat(1, 1),
                eps_q_const: rat(2, 1),
                eps_q_kappa: rat(1, 1),
                kappa_prefactor: true,
            },
        );
    }
    // tuple-count order: how many free indices each type has
    let order = [4i128, 3, 3, 3, 2, 2, 2, 2, 1];
    for (i, &ord) in order.iter().enumerate() {
        // Σ₂: typical E² Q^{-(1/2-θ)}, scaled down by the count deficit
        table.insert(
            (SigmaClass::Cuspidal, TupleType(i as u8 + 1)),
            ContributionEntry {
                form: ExponentForm::new(
                    RatAffine {
                        c0: rat(-1, 2),
                        c1: rat(1, 1),
                    },
                    rat(2 + (ord - 4), 1),
                    zero,
                ),
                eps_e_degree: rat(1, 1),
                eps_q_const: rat(1, 1),
                eps_q_kappa: zero,
                kappa_prefactor: false,
            },
        );
        // Σ₃: typical E Q^{(κ-1)/2}
        table.insert(
            (SigmaClass::Eisenstein, TupleType(i as u8 + 1)),
            ContributionEntry {
                form: ExponentForm::new(
                    RatAffine::constant(rat(-1, 2)),
                    rat(1 + (ord - 4), 1),
                    rat(1, 2),
                ),
                eps_e_degree: rat(1, 1),
                eps_q_const: rat(1, 1),
                eps_q_kappa: zero,
                kappa_prefactor: false,
            },
        );
    }
    table
}

/// The four competing exponent forms of the final optimization:
/// E^{-1}, E Q^{-1/4+θ/2}, Q^{-κ/2}, E^{1/2} Q^{(κ-1)/4}.
pub fn minmax_forms() -> [ExponentForm; 4] {
    let zero = rat(0, 1);
    [
        ExponentForm::new(RatAffine::constant(zero), rat(-1, 1), zero),
        ExponentForm::new(
            RatAffine {
                c0: rat(-1, 4),
                c1: rat(1, 2),
            },
            rat(1, 1),
            zero,
        ),
        ExponentForm::new(RatAffine::constant(zero), zero, rat(-1, 2)),
        ExponentForm::new(RatAffine::constant(rat(-1, 4)), rat(1, 2), rat(1, 4)),
    ]
}

/// Result of the exact min-max optimization.
#[derive(Debug, Clone)]
pub struct OptimizeReport {
    /// the optimum value of max_i(exponent_i); the saving is δ = -optimum
    pub optimum: Rat,
    pub delta: Rat,
    /// vertices of the optimal face {(e, κ): all forms ≤ optimum}
    pub face_vertices: Vec<(Rat, Rat)>,
    /// the closed-form witness (e, κ) = ((1-2θ)/8, 1/4 + θ/6)
    pub witness: (Rat, Rat),
    /// whether the witness is feasible and attains the optimum exactly
    pub witness_attains: bool,
    /// indices (0-based) of the forms active at the witness
    pub witness_active: Vec<usize>,
    /// slack of each form at the witness: optimum - exponent_i ≥ 0
    pub witness_slacks: Vec<Rat>,
}

/// Exact min over e ≥ 0, κ ∈ [0, 1] of the max of the four exponent forms,
/// by vertex enumeration of the epigraph LP (pairwise/triple equalities and
/// variable bounds), all in rational arithmetic.
pub fn optimize_exponents(theta: Rat) -> Result<OptimizeReport, AmplifyError> {
    if theta < rat(0, 1) || theta >= rat(1, 2) {
        return Err(AmplifyError::ThetaOutOfRange(theta.to_string()));
    }
    let forms = minmax_forms();
    let eval_max = |e: Rat, k: Rat| -> Rat {
        forms
            .iter()
            .map(|f| f.exponent(e, k, theta))
            .max()
            .expect("nonempty")
    };
    let feasible = |e: Rat, k: Rat| e >= rat(0, 1) && k >= rat(0, 1) && k <= rat(1, 1);

    let mut candidates: Vec<(Rat, Rat)> = Vec::new();
    // boundary constraints as lines α·e + β·κ = γ
    let bounds = [
        (rat(1, 1), rat(0, 1), rat(0, 1)), // e = 0
        (rat(0, 1), rat(1, 1), rat(0, 1)), // κ = 0
        (rat(0, 1), rat(1, 1), rat(1, 1)), // κ = 1
    ];
    // line of f_i = f_j: (b_i-b_j) e + (c_i-c_j) κ = a_j - a_i
    let form_line = |i: usize, j: usize| -> (Rat, Rat, Rat) {
        (
            forms[i].b - forms[j].b,
            forms[i].c - forms[j].c,
            forms[j].a.eval(theta) - forms[i].a.eval(theta),
        )
    };
    let mut lines: Vec<(Rat, Rat, Rat)> = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            lines.push(form_line(i, j));
        }
    }
    lines.extend_from_slice(&bounds);
    // all pairwise intersections of the lines
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let (a1, b1, c1) = lines[i];
            let (a2, b2, c2) = lines[j];
            let det = a1 * b2 - a2 * b1;
            if det == rat(0, 1) {
                continue;
            }
            let e = (c1 * b2 - c2 * b1) / det;
            let k = (a1 * c2 - a2 * c1) / det;
            if feasible(e, k) {
                candidates.push((e, k));
            }
        }
    }
    let (mut best_val, mut best_pt) = (None::<Rat>, (rat(0, 1), rat(0, 1)));
    for &(e, k) in &candidates {
        let v = eval_max(e, k);
        if best_val.is_none_or(|bv| v < bv) {
            best_val = Some(v);
            best_pt = (e, k);
        }
    }
    let optimum = best_val.expect("candidate set nonempty");
    let _ = best_pt;

    // optimal face: vertices of {max ≤ optimum} within the bounds
    let mut face: Vec<(Rat, Rat)> = candidates
        .iter()
        .copied()
        .filter(|&(e, k)| eval_max(e, k) == optimum)
        .collect();
    face.sort();
    face.dedup();

    // closed-form witness
    let we = (rat(1, 1) - rat(2, 1) * theta) / rat(8, 1);
    let wk = rat(1, 4) + theta / rat(6, 1);
    let wvals: Vec<Rat> = forms.iter().map(|f| f.exponent(we, wk, theta)).collect();
    let wmax = *wvals.iter().max().expect("nonempty");
    let witness_attains = feasible(we, wk) && wmax == optimum;
    let witness_active: Vec<usize> = wvals
        .iter()
        .enumerate()
        .filter(|(_, v)| **v == wmax)
        .map(|(i, _)| i)
        .collect();
    let witness_slacks = wvals.iter().map(|v| optimum - v).collect();

    Ok(OptimizeReport {
        optimum,
        delta: -optimum,
        face_vertices: face,
        witness: (we, wk),
        witness_attains,
        witness_active,
        witness_slacks,
    })
}

/// The fixed truncation bump: 1 on (0,1], smooth descent to 0 on [1,2]
/// through the exp(-1/x) partition function.
pub fn h0(t: f64) -> f64 {
    if t <= 1.0 {
        if t <= 0.0 {
            return 0.0;
        }
        return 1.0;
    }
    if t >= 2.0 {
        return 0.0;
    }
    let u = t - 1.0;
    let f = |x: f64| if x > 0.0 { (-1.0 / x).exp() } else { 0.0 };
    f(1.0 - u) / (f(u) + f(1.0 - u))
}

/// Frozen sup-norms ‖h₀^{(n)}‖_∞ for n = 1..=4, precomputed once by dense
/// high-precision differentiation of the bump and padded by 1%.
pub const H0_DERIVATIVE_SUP: [f64; 4] = [2.02, 9.94, 111.7, 2303.0];

/// The explicit Mellin truncation bound for h = h_{0,Q^{κ-1}} - h_{0,Q^{-κ-1}}:
///
/// |M(h)(s)| ≤ 2κ|s| log Q · max(Q^{(κ-1)Re s}, Q^{-(κ+1)Re s})
///             · ‖h₀^{(n)}‖_∞ · ∫₁² t^{Re s + n} d^×t / |s(s+1)⋯(s+n-1)|,
///
/// valid for n ≥ 1; for Re(s) ≥ 0 the max is the Q^{(κ-1)Re s} branch of
/// the displayed bound.
pub fn mellin_truncation_bound(
    q_cond: f64,
    kappa: f64,
    s: Complex64,
    n: u32,
) -> Result<f64, AmplifyError> {
    if n == 0 || n as usize > H0_DERIVATIVE_SUP.len() {
        return Err(AmplifyError::BadDerivativeOrder(n));
    }
    let sup = H0_DERIVATIVE_SUP[n as usize - 1];
    let sigma = s.re;
    let scale = (q_cond.powf((kappa - 1.0) * sigma)).max(q_cond.powf(-(kappa + 1.0) * sigma));
    let mut denom = s.norm();
    for j in 1..n {
        denom *= (s + j as f64).norm();
    }
    // ∫₁² t^σ' d^×t = (2^σ' - 1)/σ' with σ' = Re(s) + n
    let sp = sigma + n as f64;
    let be = if sp.abs() < 1e-12 {
        std::f64::consts::LN_2
    } else {
        (2f64.powf(sp) - 1.0) / sp
    };
    Ok(2.0 * kappa * s.norm() * q_cond.ln() * scale * sup * be / denom)
}

/// Numeric Mellin transform M(h)(s) = ∫ h(t) t^{s} d^×t of the truncation
/// window h = h_{0,Q^{κ-1}} - h_{0,Q^{-κ-1}} by quadrature in log t.
pub fn mellin_numeric(q_cond: f64, kappa: f64, s: Complex64) -> Result<Complex64, AmplifyError> {
    let a = q_cond.powf(kappa - 1.0);
    let b = q_cond.powf(-kappa - 1.0);
    let lo = b.ln(); // support starts at t = B (where both bumps are 1)
    let hi = (2.0 * a).ln();
    let f = move |u: f64| -> Complex64 {
        let t = u.exp();
        let h = h0(t / a) - h0(t / b);
        h * (s * u).exp()
    };
    let opts = QuadOptions {
        abs_tol: 1e-12,
        rel_tol: 1e-10,
        max_evals: 2_000_000,
    };
    Ok(integrate_complex(f, lo, hi, opts)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate;

    #[test]
    fn classify_examples() {
        assert_eq!(classify_tuple(&'a', &'b', &'c', &'d'), TupleType(1));
        assert_eq!(classify_tuple(&'a', &'a', &'a', &'a'), TupleType(9));
        // v1 = v2' and v1' = v2
        assert_eq!(classify_tuple(&'a', &'b', &'b', &'a'), TupleType(6));
        assert_eq!(classify_tuple(&'a', &'b', &'a', &'b'), TupleType(5));
        assert_eq!(classify_tuple(&'a', &'a', &'b', &'b'), TupleType(7));
        assert_eq!(classify_tuple(&'a', &'a', &'a', &'b'), TupleType(8));
        assert_eq!(classify_tuple(&'a', &'b', &'a', &'c'), TupleType(2));
        assert_eq!(classify_tuple(&'a', &'b', &'c', &'a'), TupleType(3));
        assert_eq!(classify_tuple(&'a', &'a', &'b', &'c'), TupleType(4));
    }

    #[test]
    fn classification_total_and_partition() {
        // exhaustive over all 4-tuples from a 5-element label set
        let labels = [0u8, 1, 2, 3, 4];
        let mut counts = [0u64; 9];
        for &a in &labels {
            for &b in &labels {
                for &c in &labels {
                    for &d in &labels {
                        let t = classify_tuple(&a, &b, &c, &d);
                        assert!((1..=9).contains(&t.0));
                        counts[t.0 as usize - 1] += 1;
                    }
                }
            }
        }
        assert_eq!(counts.iter().sum::<u64>(), 625);
        // counts match the closed forms at M = 5
        for ty in 1..=9u8 {
            assert_eq!(
                counts[ty as usize - 1] as u128,
                count_tuples(5, TupleType(ty)),
                "type {ty}"
            );
        }
    }

    #[test]
    fn counts_sum_to_m4() {
        for m in 4..=12u64 {
            let total: u128 = (1..=9).map(|t| count_tuples(m, TupleType(t))).sum();
            assert_eq!(total, (m as u128).pow(4), "M={m}");
        }
        // examples
        assert_eq!(count_tuples(7, TupleType(1)), 7 * 6 * 5 * 4);
        assert_eq!(count_tuples(7, TupleType(9)), 7);
        let total: u128 = (1..=9).map(|t| count_tuples(7, TupleType(t))).sum();
        assert_eq!(total, 2401);
    }

    #[test]
    fn contribution_table_entries() {
        let table = contribution_forms();
        // (Σ₂, Type 1): b = 2, a = -(1/2 - θ)
        let e = table[&(SigmaClass::Cuspidal, TupleType(1))];
        assert_eq!(e.form.b, rat(2, 1));
        assert_eq!(e.form.a.c0, rat(-1, 2));
        assert_eq!(e.form.a.c1, rat(1, 1));
        // (Σ₁, Type 6): b = -4
        let e6 = table[&(SigmaClass::Constant, TupleType(6))];
        assert_eq!(e6.form.b, rat(-4, 1));
        assert!(e6.kappa_prefactor);
        // the dominant form of each Σ over types is the type-1 entry
        // (ties allowed), compared at a sample point
        let (e_s, k_s, th) = (rat(1, 10), rat(1, 3), rat(1, 10));
        for class in [
            SigmaClass::Constant,
            SigmaClass::Cuspidal,
            SigmaClass::Eisenstein,
        ] {
            let t1 = table[&(class, TupleType(1))].form.exponent(e_s, k_s, th);
            for ty in 2..=9u8 {
                let v = table[&(class, TupleType(ty))].form.exponent(e_s, k_s, th);
                assert!(v <= t1, "{class:?} type {ty} dominates type 1");
            }
        }
    }

    #[test]
    fn optimizer_reproduces_closed_form_delta() {
        // 20 rational θ values across [0, 1/2)
        for i in 0..20i128 {
            let theta = rat(i, 41);
            let report = optimize_exponents(theta).unwrap();
            let expected_delta = (rat(1, 1) - rat(2, 1) * theta) / rat(8, 1);
            assert_eq!(report.delta, expected_delta, "θ = {theta}");
            assert!(report.witness_attains, "witness fails at θ = {theta}");
            assert!(report.witness_slacks.iter().all(|s| *s >= rat(0, 1)));
        }
    }

    #[test]
    fn optimizer_benchmark_values() {
        // θ = 0: δ = 1/8, all four forms active at the witness
        let r0 = optimize_exponents(rat(0, 1)).unwrap();
        assert_eq!(r0.delta, rat(1, 8));
        assert_eq!(r0.witness, (rat(1, 8), rat(1, 4)));
        assert!(r0.witness_active.len() >= 3);
        assert_eq!(r0.face_vertices.len(), 1, "θ=0 optimum is a point");
        // θ = 7/64: δ = 25/256
        let r = optimize_exponents(rat(7, 64)).unwrap();
        assert_eq!(r.delta, rat(25, 256));
        // for θ > 0 the optimal κ is a nondegenerate interval at fixed e
        assert!(r.face_vertices.len() >= 2);
        let es: Vec<Rat> = r.face_vertices.iter().map(|v| v.0).collect();
        assert!(es.iter().all(|&e| e == es[0]), "optimal e is unique");
        let (kmin, kmax) = (
            r.face_vertices.iter().map(|v| v.1).min().unwrap(),
            r.face_vertices.iter().map(|v| v.1).max().unwrap(),
        );
        // κ-interval [(1-2θ)/4, (1+6θ)/4] from the two slack constraints
        let theta = rat(7, 64);
        assert_eq!(kmin, (rat(1, 1) - rat(2, 1) * theta) / rat(4, 1));
        assert_eq!(kmax, (rat(1, 1) + rat(6, 1) * theta) / rat(4, 1));
        // the closed-form witness κ sits inside the face
        assert!(r.witness.1 >= kmin && r.witness.1 <= kmax);
        // θ → 1/2 limit: δ → 0
        let r_half = optimize_exponents(rat(49, 100)).unwrap();
        assert_eq!(r_half.delta, rat(1, 400));
        assert!(optimize_exponents(rat(1, 2)).is_err());
    }

    #[test]
    fn bump_shape_and_mellin_sanity() {
        assert_eq!(h0(0.5), 1.0);
        assert_eq!(h0(1.0), 1.0);
        assert_eq!(h0(2.0), 0.0);
        assert!(h0(1.5) > 0.0 && h0(1.5) < 1.0);
        assert!((h0(1.5) - 0.5).abs() < 1e-12); // symmetric midpoint
                                                // M(h0)(1) = ∫ h0 dt by plain quadrature
        let direct = integrate(h0, 0.0, 2.0, QuadOptions::with_abs_tol(1e-12)).unwrap();
        let mellin = integrate(
            |u: f64| {
                let t = u.exp();
                h0(t) * t
            },
            -30.0,
            2f64.ln(),
            QuadOptions::with_abs_tol(1e-12),
        )
        .unwrap();
        assert!((direct - mellin).abs() < 1e-9);
        assert!(direct > 1.0 && direct < 2.0);
    }

    #[test]
    fn frozen_derivative_sups_dominate_sampled_ones() {
        // coarse finite-difference scan must stay below the frozen constants
        for n in 1..=4usize {
            let mut sup: f64 = 0.0;
            let steps = 2000;
            let h = 1e-4;
            for i in 1..steps {
                let t = 1.0 + i as f64 / steps as f64;
                // central differences of order n
                let d = match n {
                    1 => (h0(t + h) - h0(t - h)) / (2.0 * h),
                    2 => (h0(t + h) - 2.0 * h0(t) + h0(t - h)) / (h * h),
                    3 => {
                        (h0(t + 2.0 * h) - 2.0 * h0(t + h) + 2.0 * h0(t - h) - h0(t - 2.0 * h))
                            / (2.0 * h * h * h)
                    }
                    _ => {
                        (h0(t + 2.0 * h) - 4.0 * h0(t + h) + 6.0 * h0(t) - 4.0 * h0(t - h)
                            + h0(t - 2.0 * h))
                            / (h * h * h * h)
                    }
                };
                sup = sup.max(d.abs());
            }
            assert!(
                sup <= H0_DERIVATIVE_SUP[n - 1],
                "n={n}: sampled {sup} above frozen {}",
                H0_DERIVATIVE_SUP[n - 1]
            );
        }
    }

    #[test]
    fn mellin_bound_dominates_numeric_transform() {
        let q_cond = 1e4;
        let kappa = 0.25;
        for n in 1..=3u32 {
            for &im in &[0.5, 2.0, 8.0] {
                for &re in &[0.0, 0.3] {
                    let s = Complex64::new(re, im);
                    let numeric = mellin_numeric(q_cond, kappa, s).unwrap().norm();
                    let bound = mellin_truncation_bound(q_cond, kappa, s, n).unwrap();
                    assert!(
                        numeric <= bound,
                        "n={n} s={s}: |M(h)| = {numeric} > bound {bound}"
                    );
                }
            }
        }
    }

    #[test]
    fn mellin_bound_large_s_decay() {
        // at Re(s) = 0 the bound decays like |s|^{-(n-1)}
        let q_cond = 1e4;
        let kappa = 0.25;
        for n in 2..=4u32 {
            let b1 = mellin_truncation_bound(q_cond, kappa, Complex64::new(0.0, 40.0), n).unwrap();
            let b2 = mellin_truncation_bound(q_cond, kappa, Complex64::new(0.0, 80.0), n).unwrap();
            let ratio = b2 / b1;
            let expected = 0.5f64.powi(n as i32 - 1);
            assert!(
                (ratio - expected).abs() < 0.15 * expected,
                "n={n}: ratio {ratio} vs {expected}"
            );
        }
        assert!(mellin_truncation_bound(q_cond, kappa, Complex64::new(0.0, 1.0), 0).is_err());
    }
}
