//! Archimedean isotypic calculus: Jacobi polynomials, SU(2)/SO(2) isotypic
//! vectors, Lie-algebra ladder coefficients, isotypic norms, and the
//! intertwining eigenvalues λ_{n,k}(s).
//!
//! Complex-place basis vectors e_{n,k}^{(n₀)} evaluate on rotations through
//! (cos β)^{(n+n₀)/2-k} (sin β)^{k-(n-n₀)/2} P_{(n-n₀)/2}^{((n₀-n)/2+k, (n₀+n)/2-k)}(cos 2β),
//! with negative Jacobi parameters removed by the degree-reduction
//! identities. The independent oracle expands the matrix coefficient
//! ⟨ρ_n(u) z₁^{n-k} z₂^k, z₁^{n-k₀} z₂^{k₀}⟩ through binomial sums.

use crate::quad::{integrate, QuadError, QuadOptions};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Su2Error {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("invalid isotypic index (n={n}, k={k}, n0={n0})")]
    BadIndex { n: i64, k: i64, n0: i64 },
    #[error("jacobi parameters must satisfy α, β > -1, got ({0}, {1})")]
    BadJacobiParams(f64, f64),
    #[error("s = {0} hits a pole of the intertwining eigenvalue")]
    IntertwiningPole(Complex64),
    #[error("the quadrature oracle needs Re(s) > 0, got {0}")]
    OracleNeedsPositiveRe(f64),
    #[error("series parameter out of range: {0}")]
    BadSeriesParam(String),
}

/// P_k^{(α,β)}(x) by the forward three-term recursion in the degree.
pub fn jacobi(k: u32, alpha: f64, beta: f64, x: f64) -> Result<f64, Su2Error> {
    if alpha <= -1.0 || beta <= -1.0 {
        return Err(Su2Error::BadJacobiParams(alpha, beta));
    }
    if k == 0 {
        return Ok(1.0);
    }
    let mut pm1 = 1.0;
    let mut p = (alpha - beta) / 2.0 + (alpha + beta + 2.0) * x / 2.0;
    for n in 2..=k as i64 {
        let nf = n as f64;
        let c = 2.0 * nf + alpha + beta;
        let a1 = 2.0 * nf * (nf + alpha + beta) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * x + alpha * alpha - beta * beta);
        let a3 = 2.0 * (nf + alpha - 1.0) * (nf + beta - 1.0) * c;
        let next = (a2 * p - a3 * pm1) / a1;
        pm1 = p;
        p = next;
    }
    Ok(p)
}

/// Index of an isotypic basis vector e_{n,k}^{(n₀)}: 0 ≤ k ≤ n, |n₀| ≤ n,
/// n ≡ |n₀| mod 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct IsotypicIndex {
    pub n: i64,
    pub k: i64,
    pub n0: i64,
}

impl IsotypicIndex {
    pub fn new(n: i64, k: i64, n0: i64) -> Result<Self, Su2Error> {
        if n < 0 || k < 0 || k > n || n0.abs() > n || (n - n0.abs()) % 2 != 0 {
            return Err(Su2Error::BadIndex { n, k, n0 });
        }
        Ok(Self { n, k, n0 })
    }

    /// k₀ with n - 2k₀ = n₀ (the torus-normalization column).
    pub fn k0(&self) -> i64 {
        (self.n - self.n0) / 2
    }
}

fn factorial(n: i64) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn binomial(n: i64, k: i64) -> f64 {
    if k < 0 || k > n {
        return 0.0;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// e_{n,k}^{(n₀)} at the rotation by β, via the Jacobi closed form.
///
/// Negative upper parameters are removed with
/// P_m^{(-l,b)} = [(m+b)!(m-l)!/((m+b-l)! m!)] ((x-1)/2)^l P_{m-l}^{(l,b)},
/// and the mirrored identity for the lower parameter; the prefactor powers
/// of sin β / cos β absorb the ((x∓1)/2)^l factors, so every index is
/// regular.
pub fn isotypic_eval(idx: &IsotypicIndex, beta: f64) -> Result<f64, Su2Error> {
    let m = (idx.n - idx.n0) / 2;
    let a = idx.k - m; // (n0-n)/2 + k
    let b = (idx.n + idx.n0) / 2 - idx.k;
    eval_reduced(m, a, b, beta)
}

/// cos^b sin^a P_m^{(a,b)}(cos 2β) with negative integer parameters removed
/// one at a time (n₀ < 0 can make both negative, hence the recursion).
fn eval_reduced(m: i64, a: i64, b: i64, beta: f64) -> Result<f64, Su2Error> {
    if a < 0 {
        let l = -a;
        let coeff = factorial(m + b) * factorial(m - l) / (factorial(m + b - l) * factorial(m));
        // ((x-1)/2)^l = (-sin²β)^l absorbs the sin^{-l} prefactor
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(sign * coeff * eval_reduced(m - l, l, b, beta)?);
    }
    if b < 0 {
        let l = -b;
        let coeff = factorial(m + a) * factorial(m - l) / (factorial(m + a - l) * factorial(m));
        // ((x+1)/2)^l = (cos²β)^l absorbs the cos^{-l} prefactor
        return Ok(coeff * eval_reduced(m - l, a, l, beta)?);
    }
    let x = (2.0 * beta).cos();
    let p = jacobi(m as u32, a as f64, b as f64, x)?;
    Ok(beta.cos().powi(b as i32) * beta.sin().powi(a as i32) * p)
}

/// Oracle for [`isotypic_eval`]: the coefficient of z₁^{n-k₀} z₂^{k₀} in
/// (z₁ cos β - z₂ sin β)^{n-k} (z₁ sin β + z₂ cos β)^k.
pub fn isotypic_eval_monomial_oracle(idx: &IsotypicIndex, beta: f64) -> f64 {
    let (n, k) = (idx.n, idx.k);
    let k0 = idx.k0();
    let (c, s) = (beta.cos(), beta.sin());
    let mut total = 0.0;
    for i in 0..=(n - k).min(k0) {
        let j = k0 - i;
        if j > k {
            continue;
        }
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        total += sign
            * binomial(n - k, i)
            * binomial(k, j)
            * c.powi((n - k - i + j) as i32)
            * s.powi((i + k - j) as i32);
    }
    total
}

/// Real-place ladder operators on the SO(2)-isotypic line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealLadder {
    H,
    VPlus,
    VMinus,
    Delta,
}

/// (coefficient, target index) of a real-place ladder operator on e_k:
/// H.e_k = ik e_k, V±.e_k = (s+1±k) e_{k±2}, Δ.e_k = ((1-s²)/8 + k²/4) e_k.
pub fn real_ladder_term(op: RealLadder, s: Complex64, k: i64) -> (Complex64, i64) {
    let kf = k as f64;
    match op {
        RealLadder::H => (Complex64::new(0.0, kf), k),
        RealLadder::VPlus => (s + 1.0 + kf, k + 2),
        RealLadder::VMinus => (s + 1.0 - kf, k - 2),
        RealLadder::Delta => ((1.0 - s * s) / 8.0 + kf * kf / 4.0, k),
    }
}

/// Complex-place ladder operators on the SU(2)-isotypic lattice (n₀ fixed).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CplxLadder {
    H1,
    H2,
    XPlus,
    XMinus,
    YPlus,
    YMinus,
    Delta,
}

pub type IsotypicVec = BTreeMap<(i64, i64), Complex64>;

/// Terms of a complex-place ladder operator applied to e_{n,k}^{(n₀)}.
pub fn cplx_ladder_terms(
    op: CplxLadder,
    s: Complex64,
    n0: i64,
    n: i64,
    k: i64,
) -> Vec<(Complex64, (i64, i64))> {
    let valid = |nn: i64, kk: i64| nn >= n0.abs() && kk >= 0 && kk <= nn;
    let nf = n as f64;
    let kf = k as f64;
    let n0f = n0 as f64;
    let terms: Vec<(Complex64, (i64, i64))> = match op {
        CplxLadder::H2 => vec![(Complex64::new(0.0, nf - 2.0 * kf), (n, k))],
        CplxLadder::XPlus => vec![(Complex64::new(nf - kf, 0.0), (n, k + 1))],
        CplxLadder::XMinus => vec![(Complex64::new(kf, 0.0), (n, k - 1))],
        CplxLadder::Delta => vec![(
            (1.0 - s * s - n0f * n0f) / 8.0 + nf * (nf + 2.0) / 4.0,
            (n, k),
        )],
        CplxLadder::H1 => {
            if n == 0 {
                vec![(2.0 * (s + 1.0), (2, 1))]
            } else {
                vec![
                    (
                        (s + nf / 2.0 + 1.0) * (nf - n0f + 2.0) * (nf + n0f + 2.0)
                            / ((nf + 1.0) * (nf + 2.0)),
                        (n + 2, k + 1),
                    ),
                    (2.0 * s * n0f * (nf - 2.0 * kf) / (nf * (nf + 2.0)), (n, k)),
                    (
                        (s - nf / 2.0) * 4.0 * kf * (nf - kf) / (nf * (nf + 1.0)),
                        (n - 2, k - 1),
                    ),
                ]
            }
        }
        CplxLadder::YPlus => {
            return compose_commutator(CplxLadder::XPlus, s, n0, n, k);
        }
        CplxLadder::YMinus => {
            return compose_commutator(CplxLadder::XMinus, s, n0, n, k);
        }
    };
    terms
        .into_iter()
        .filter(|(c, (nn, kk))| c.norm() > 0.0 && valid(*nn, *kk))
        .collect()
}

/// Y± = [X±, H₁] acting on a basis vector, expanded through composition.
fn compose_commutator(
    x_op: CplxLadder,
    s: Complex64,
    n0: i64,
    n: i64,
    k: i64,
) -> Vec<(Complex64, (i64, i64))> {
    let mut v: IsotypicVec = BTreeMap::new();
    v.insert((n, k), Complex64::new(1.0, 0.0));
    let xh = apply_cplx_ladder(x_op, s, n0, &apply_cplx_ladder(CplxLadder::H1, s, n0, &v));
    let hx = apply_cplx_ladder(CplxLadder::H1, s, n0, &apply_cplx_ladder(x_op, s, n0, &v));
    let mut out: IsotypicVec = xh;
    for (idx, c) in hx {
        let e = out.entry(idx).or_insert(Complex64::new(0.0, 0.0));
        *e -= c;
    }
    out.into_iter()
        .filter(|(_, c)| c.norm() > 1e-15)
        .map(|(idx, c)| (c, idx))
        .collect()
}

/// Apply a ladder operator to a finitely supported isotypic vector.
pub fn apply_cplx_ladder(op: CplxLadder, s: Complex64, n0: i64, v: &IsotypicVec) -> IsotypicVec {
    let mut out: IsotypicVec = BTreeMap::new();
    for (&(n, k), &coeff) in v {
        for (c, idx) in cplx_ladder_terms(op, s, n0, n, k) {
            let e = out.entry(idx).or_insert(Complex64::new(0.0, 0.0));
            *e += coeff * c;
        }
    }
    out.retain(|_, c| c.norm() > 0.0);
    out
}

/// Series parameters at an archimedean place.
#[derive(Debug, Clone, Copy)]
pub enum SeriesKind {
    RealPrincipal,
    RealComplementary,
    /// discrete series of weight parameter p ≥ 1
    RealDiscrete(u32),
    CplxPrincipal,
    CplxComplementary,
}

/// Squared norm of e_{n,k}^{(n₀)} in the complex unitary principal series:
/// (n-k)! k! / (((n-n₀)/2)! ((n+n₀)/2)! (n+1)).
pub fn norm_sq_cplx_principal(idx: &IsotypicIndex) -> f64 {
    factorial(idx.n - idx.k) * factorial(idx.k)
        / (factorial((idx.n - idx.n0) / 2) * factorial((idx.n + idx.n0) / 2))
        / (idx.n as f64 + 1.0)
}

/// Squared norm in the complex complementary series (n₀ = 0, 0 < s < 1):
/// λ_{n,n/2}(s) times the principal-series factorial factor.
pub fn norm_sq_cplx_complementary(s: f64, idx: &IsotypicIndex) -> Result<f64, Su2Error> {
    if !(0.0 < s && s < 1.0) {
        return Err(Su2Error::BadSeriesParam(format!(
            "complementary s = {s} outside (0,1)"
        )));
    }
    if idx.n0 != 0 || idx.n % 2 != 0 {
        return Err(Su2Error::BadIndex {
            n: idx.n,
            k: idx.k,
            n0: idx.n0,
        });
    }
    let lam = intertwining_eigenvalue(Complex64::new(s, 0.0), idx.n, idx.k)?;
    Ok(lam.re * norm_sq_cplx_principal(idx))
}

/// Squared norm of e_k at a real place: 1 for the principal series, the
/// ratio ladder |(s-1∓k)/(s+1±k)| from the parity anchor for the
/// complementary series, and π 4^{-p} B((|k|-p-1)/2+1, p) for the discrete
/// series of parameter p.
pub fn norm_sq_real(kind: SeriesKind, s: f64, k: i64) -> Result<f64, Su2Error> {
    match kind {
        SeriesKind::RealPrincipal => Ok(1.0),
        SeriesKind::RealComplementary => {
            if !(0.0 < s && s < 1.0) {
                return Err(Su2Error::BadSeriesParam(format!(
                    "complementary s = {s} outside (0,1)"
                )));
            }
            // anchor at the lowest |k| of the parity class, norm 1 there
            let parity = k.rem_euclid(2);
            let mut norm: f64 = 1.0;
            let mut j = parity;
            while j + 2 <= k.abs() {
                let jf = j as f64;
                norm *= ((s - 1.0 - jf) / (s + 1.0 + jf)).abs();
                j += 2;
            }
            Ok(norm)
        }
        SeriesKind::RealDiscrete(p) => {
            let p = p as i64;
            if k.abs() < p + 1 || (k.abs() - p - 1) % 2 != 0 {
                return Err(Su2Error::BadIndex { n: 0, k, n0: p });
            }
            let a = (k.abs() - p - 1) / 2 + 1;
            // B(a, p) for integers = (a-1)!(p-1)!/(a+p-1)!
            let beta = factorial(a - 1) * factorial(p - 1) / factorial(a + p - 1);
            Ok(PI * 4f64.powi(-(p as i32)) * beta)
        }
        _ => Err(Su2Error::BadSeriesParam(
            "complex-place norms go through norm_sq_cplx_*".into(),
        )),
    }
}

/// λ_{n,k}(s) = (-1)^{n/2} π (s-1)⋯(s-n/2) / (s(s+1)⋯(s+n/2)), independent
/// of k; poles at s ∈ {0, -1, …, -n/2}.
pub fn intertwining_eigenvalue(s: Complex64, n: i64, _k: i64) -> Result<Complex64, Su2Error> {
    if n < 0 || n % 2 != 0 {
        return Err(Su2Error::BadIndex { n, k: _k, n0: 0 });
    }
    let half = n / 2;
    for j in 0..=half {
        if (s + j as f64).norm() < 1e-12 {
            return Err(Su2Error::IntertwiningPole(s));
        }
    }
    let mut num = Complex64::new(1.0, 0.0);
    for j in 1..=half {
        num *= s - j as f64;
    }
    let mut den = Complex64::new(1.0, 0.0);
    for j in 0..=half {
        den *= s + j as f64;
    }
    let sign = if half % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * PI * num / den)
}

/// Quadrature oracle (π/2) ∫_{-1}^1 ((1-t)/2)^{s-1} P_{n/2}(t) dt for real
/// s > 0, evaluated after the substitution w = ξ^{1/s} that removes the
/// endpoint singularity.
pub fn intertwining_eigenvalue_quadrature(s: f64, n: i64) -> Result<f64, Su2Error> {
    if s <= 0.0 {
        return Err(Su2Error::OracleNeedsPositiveRe(s));
    }
    if n < 0 || n % 2 != 0 {
        return Err(Su2Error::BadIndex { n, k: 0, n0: 0 });
    }
    let half = (n / 2) as u32;
    // 2 ∫_0^1 w^{s-1} P(1-2w) dw = (2/s) ∫_0^1 P(1 - 2ξ^{1/s}) dξ
    let f = |xi: f64| -> f64 {
        let w = xi.powf(1.0 / s);
        jacobi(half, 0.0, 0.0, 1.0 - 2.0 * w).unwrap_or(f64::NAN)
    };
    let v = integrate(f, 0.0, 1.0, QuadOptions::with_abs_tol(1e-11))?;
    Ok(PI / 2.0 * 2.0 / s * v)
}

/// Report of the finite-window Sobolev-equivalence probe.
#[derive(Debug, Clone)]
pub struct SobolevProbeReport {
    /// max over draws and ladder operators of ‖X.v‖ / (‖Δ.v‖ + ‖v‖)
    pub max_ratio: f64,
    pub draws: usize,
}

/// Deterministic scan of the ratio ‖X.e‖ / (‖Δ.e‖ + ‖e‖) over single basis
/// vectors e_{n,k} with n ≤ n_max (n₀ = 0). The ratio peaks at small n and
/// decays like 1/n, so it is stable under window doubling.
pub fn sobolev_basis_scan(kind: SeriesKind, s: Complex64, n_max: i64) -> Result<f64, Su2Error> {
    let norm_sq = |n: i64, k: i64| -> Result<f64, Su2Error> {
        let idx = IsotypicIndex::new(n, k, 0)?;
        match kind {
            SeriesKind::CplxPrincipal => Ok(norm_sq_cplx_principal(&idx)),
            SeriesKind::CplxComplementary => norm_sq_cplx_complementary(s.re, &idx),
            _ => Err(Su2Error::BadSeriesParam("need a complex-place kind".into())),
        }
    };
    let mut max_ratio: f64 = 0.0;
    for n in (0..=n_max).step_by(2) {
        for k in 0..=n {
            let mut v: IsotypicVec = BTreeMap::new();
            v.insert((n, k), Complex64::new(1.0, 0.0));
            let mut base = 0.0;
            for (&(nn, kk), c) in &v {
                base += c.norm_sqr() * norm_sq(nn, kk)?;
            }
            let base = base.sqrt();
            let dv = apply_cplx_ladder(CplxLadder::Delta, s, 0, &v);
            let mut delta = 0.0;
            for (&(nn, kk), c) in &dv {
                delta += c.norm_sqr() * norm_sq(nn, kk)?;
            }
            let delta = delta.sqrt();
            for op in [
                CplxLadder::H1,
                CplxLadder::H2,
                CplxLadder::XPlus,
                CplxLadder::XMinus,
            ] {
                let xv = apply_cplx_ladder(op, s, 0, &v);
                let mut xn = 0.0;
                for (&(nn, kk), c) in &xv {
                    xn += c.norm_sqr() * norm_sq(nn, kk)?;
                }
                max_ratio = max_ratio.max(xn.sqrt() / (delta + base));
            }
        }
    }
    Ok(max_ratio)
}

/// Probe ‖X.v‖ ≪ ‖Δ.v‖ + ‖v‖ on random finitely supported vectors of a
/// complex-place series (n₀ = 0), with norms from the isotypic norm tables.
pub fn sobolev_equiv_probe_cplx(
    kind: SeriesKind,
    s: Complex64,
    n_max: i64,
    draws: usize,
    seed: u64,
) -> Result<SobolevProbeReport, Su2Error> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let norm_sq = |n: i64, k: i64| -> Result<f64, Su2Error> {
        let idx = IsotypicIndex::new(n, k, 0)?;
        match kind {
            SeriesKind::CplxPrincipal => Ok(norm_sq_cplx_principal(&idx)),
            SeriesKind::CplxComplementary => norm_sq_cplx_complementary(s.re, &idx),
            _ => Err(Su2Error::BadSeriesParam("need a complex-place kind".into())),
        }
    };
    let vec_norm = |v: &IsotypicVec| -> Result<f64, Su2Error> {
        let mut acc = 0.0;
        for (&(n, k), c) in v {
            acc += c.norm_sqr() * norm_sq(n, k)?;
        }
        Ok(acc.sqrt())
    };
    let mut max_ratio: f64 = 0.0;
    for _ in 0..draws {
        let mut v: IsotypicVec = BTreeMap::new();
        let terms = rng.gen_range(1..=12);
        for _ in 0..terms {
            let n = 2 * rng.gen_range(0..=(n_max / 2));
            let k = rng.gen_range(0..=n);
            v.insert(
                (n, k),
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            );
        }
        let base = vec_norm(&v)?;
        let delta = vec_norm(&apply_cplx_ladder(CplxLadder::Delta, s, 0, &v))?;
        for op in [
            CplxLadder::H1,
            CplxLadder::H2,
            CplxLadder::XPlus,
            CplxLadder::XMinus,
        ] {
            let xv = vec_norm(&apply_cplx_ladder(op, s, 0, &v))?;
            max_ratio = max_ratio.max(xv / (delta + base));
        }
    }
    Ok(SobolevProbeReport { max_ratio, draws })
}
