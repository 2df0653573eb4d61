//! Batch front end over the gl2local library: evaluate any operation family
//! on a parameter grid, emit JSON/CSV/tables, and run the verification
//! suite with a pass/fail exit status.

use clap::{Args, Parser, Subcommand, ValueEnum};
use gl2local::amplify::{self, rat, Rat};
use gl2local::dualkirillov::{matrix_coefficient, DkContext, LocalRepr};
use gl2local::gauss::{arch_gauss, arch_gauss_scan, gauss_sum, ArchChar, TestFunction};
use gl2local::laurent::Window;
use gl2local::localfield::{AddChar, FiniteLocalField, UnitGroup};
use gl2local::spherical::{
    self, xi_integral_arch, xi_integral_finite, xi_integral_finite_bruteforce, Place,
    SphericalParams, TranslatedTorusSpec,
};
use gl2local::su2::{
    intertwining_eigenvalue, intertwining_eigenvalue_quadrature, isotypic_eval,
    isotypic_eval_monomial_oracle, IsotypicIndex,
};
use gl2local::verify;
use gl2local::whittaker::{
    local_zeta, local_zeta_bruteforce, sigma_v, sigma_v_bruteforce, WhittakerSeq,
};
use num_complex::Complex64;
use serde_json::{json, Value};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "gl2local",
    version,
    about = "Local GL(2) computations: Gauss sums, zeta integrals, matrix coefficients, spherical functions and exponent optimization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads for grid evaluation (default: GL2LOCAL_JOBS or 1)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Finite-place Gauss sums over characters of a given conductor
    Gauss(GaussArgs),
    /// Archimedean generalized Gauss integral G_φ(χ, t), or its resonance scan
    ArchGauss(ArchGaussArgs),
    /// Translated local zeta integral ζ(s+1/2, n(ϖ^{-l})W, χ, ψ) with oracle
    Zeta(ZetaArgs),
    /// The eight Rankin–Selberg local factors Σ_v with brute-force residuals
    Sigma(SigmaArgs),
    /// Matrix coefficients of classical vectors with the Ξ envelope
    Matcoef(MatcoefArgs),
    /// Branching dimensions d_N vs the double-coset oracle
    Branching(BranchingArgs),
    /// Translated Ξ-integrals at finite or archimedean places
    Xi(XiArgs),
    /// Spherical functions f(λ, g) and φ_λ(g)
    Spherical(SphericalArgs),
    /// Isotypic vectors and intertwining eigenvalues
    Su2(Su2Args),
    /// Exact min-max exponent optimization
    Optimize(OptimizeArgs),
    /// Tuple-type classification counts
    Tuples(TuplesArgs),
    /// Mellin truncation bound vs the numeric transform
    Mellin(MellinArgs),
    /// Run the full verification suite; exit 0 iff every check passes
    VerifyAll(VerifyArgs),
}

#[derive(Args)]
struct GaussArgs {
    #[arg(long, default_value_t = 5)]
    q: u64,
    #[arg(long, default_value_t = 0)]
    d: u32,
    /// conductor of the characters to enumerate
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// maximal shift l of the additive twist ψ(p^{-l}·)
    #[arg(long, default_value_t = 3)]
    shift_max: i64,
    #[arg(long, default_value_t = 4)]
    prec: u32,
}

#[derive(Args)]
struct ArchGaussArgs {
    /// parity m of the character sgn^m |·|^{iφ}
    #[arg(long, default_value_t = 0)]
    parity: u8,
    /// imaginary exponent φ
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    /// evaluate at a single t (otherwise run the resonance scan)
    #[arg(long)]
    t: Option<f64>,
    /// scan window exponent ε: |t| ∈ [C^(1-ε), C^(1+ε)]
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 200)]
    points: usize,
}

#[derive(Args)]
struct ZetaArgs {
    #[arg(long, default_value_t = 5)]
    q: u64,
    #[arg(long, default_value_t = 0)]
    d: u32,
    /// Satake phase: α = e^{±iφ}
    #[arg(long, default_value_t = 0.7)]
    alpha_phase: f64,
    #[arg(long, default_value_t = 0.5)]
    s_re: f64,
    #[arg(long, default_value_t = 0.0)]
    s_im: f64,
    /// conductor of the twisting character χ
    #[arg(long, default_value_t = 0)]
    chi_cond: u32,
    /// maximal unipotent shift l
    #[arg(long, default_value_t = 4)]
    l_max: i64,
    #[arg(long, default_value_t = 8)]
    prec: u32,
}

#[derive(Args)]
struct SigmaArgs {
    /// case 1..=8, or 0 for all
    #[arg(long, default_value_t = 0)]
    case: u8,
    #[arg(long, default_value_t = 5)]
    q: u64,
    #[arg(long, default_value_t = 0)]
    d: u32,
    #[arg(long, default_value_t = 0.9)]
    alpha_phase: f64,
    #[arg(long, default_value_t = 0.05)]
    s_re: f64,
    #[arg(long, default_value_t = 0.0)]
    s_im: f64,
    #[arg(long, default_value_t = 400)]
    horizon: i64,
}

#[derive(Args)]
struct MatcoefArgs {
    /// representation: unramified | ps-ramified | special | supercuspidal
    #[arg(long, default_value = "unramified")]
    repr: String,
    #[arg(long, default_value_t = 5)]
    q: u64,
    #[arg(long, default_value_t = 0.7)]
    t1_phase: f64,
    #[arg(long, default_value_t = -0.4, allow_hyphen_values = true)]
    t2_phase: f64,
    /// level N of the classical vector (defaults to the conductor)
    #[arg(long)]
    n: Option<i64>,
    #[arg(long, default_value_t = 6)]
    jmax: i64,
}

#[derive(Args)]
struct BranchingArgs {
    #[arg(long, default_value_t = 3)]
    q: u64,
    #[arg(long, default_value_t = 3)]
    n_max: u32,
    #[arg(long, default_value_t = 2)]
    level_max: u32,
}

#[derive(Args)]
struct XiArgs {
    /// finite | real | complex
    #[arg(long, default_value = "finite")]
    place: String,
    #[arg(long, default_value_t = 5)]
    q: u64,
    /// valuation of T at a finite place (d = max(0, -t_val))
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    t_val: i64,
    /// |T| at an archimedean place
    #[arg(long, default_value_t = 10.0)]
    t: f64,
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    /// additive conductor exponent entering the q^{d_v/2} tag
    #[arg(long, default_value_t = 0)]
    d_v: u32,
    /// also run the cartan_n brute-force oracle (finite place)
    #[arg(long, default_value_t = false)]
    oracle: bool,
}

#[derive(Args)]
struct SphericalArgs {
    /// finite | real | complex
    #[arg(long, default_value = "finite")]
    place: String,
    #[arg(long, default_value_t = 5)]
    q: u64,
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,
    /// group parameter: integer m / radial r / torus T per place
    #[arg(long, default_value_t = 2.0)]
    g: f64,
}

#[derive(Args)]
struct Su2Args {
    /// isotypic evaluation: n k n0 beta
    #[arg(long, num_args = 4, value_names = ["N", "K", "N0", "BETA"], allow_hyphen_values = true)]
    isotypic: Option<Vec<f64>>,
    /// intertwining eigenvalue: n s
    #[arg(long, num_args = 2, value_names = ["N", "S"], allow_hyphen_values = true)]
    intertwining: Option<Vec<f64>>,
}

#[derive(Args)]
struct OptimizeArgs {
    /// θ as an exact rational p/q (e.g. 0, 7/64, 1/10)
    #[arg(long, default_value = "0")]
    theta: String,
}

#[derive(Args)]
struct TuplesArgs {
    #[arg(long, default_value_t = 7)]
    m: u64,
}

#[derive(Args)]
struct MellinArgs {
    #[arg(long, default_value_t = 1e4)]
    q_cond: f64,
    #[arg(long, default_value_t = 0.25)]
    kappa: f64,
    #[arg(long, default_value_t = 0.0)]
    s_re: f64,
    #[arg(long, default_value_t = 2.0)]
    s_im: f64,
    #[arg(long, default_value_t = 3)]
    n: u32,
}

#[derive(Args)]
struct VerifyArgs {
    /// reduced grids, < 30 s total
    #[arg(long, default_value_t = false)]
    quick: bool,
}

/// A uniform tabular report; exact rationals travel as strings.
struct Report {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
}

impl Report {
    fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn emit(&self, format: Format) {
        match format {
            Format::Json => {
                let objs: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let mut m = serde_json::Map::new();
                        for (c, v) in self.columns.iter().zip(r) {
                            m.insert(c.to_string(), v.clone());
                        }
                        Value::Object(m)
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&objs).unwrap());
            }
            Format::Csv => {
                let mut wtr = csv::Writer::from_writer(std::io::stdout());
                wtr.write_record(&self.columns).unwrap();
                for r in &self.rows {
                    let rec: Vec<String> = r.iter().map(plain).collect();
                    wtr.write_record(&rec).unwrap();
                }
                wtr.flush().unwrap();
            }
            Format::Table => {
                let widths: Vec<usize> = self
                    .columns
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        self.rows
                            .iter()
                            .map(|r| plain(&r[i]).len())
                            .chain([c.len()])
                            .max()
                            .unwrap_or(c.len())
                    })
                    .collect();
                let header: Vec<String> = self
                    .columns
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                println!("{}", header.join("  "));
                for r in &self.rows {
                    let cells: Vec<String> = r
                        .iter()
                        .zip(&widths)
                        .map(|(v, w)| format!("{:<w$}", plain(v)))
                        .collect();
                    println!("{}", cells.join("  "));
                }
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn cnum(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    if let Some((n, d)) = s.split_once('/') {
        let n = i128::from_str(n.trim()).map_err(|e| e.to_string())?;
        let d = i128::from_str(d.trim()).map_err(|e| e.to_string())?;
        if d == 0 {
            return Err("zero denominator".into());
        }
        Ok(rat(n, d))
    } else {
        Ok(rat(i128::from_str(s.trim()).map_err(|e| e.to_string())?, 1))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli
        .jobs
        .or_else(|| {
            std::env::var("GL2LOCAL_JOBS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1);
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .ok();

    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let format = cli.format;
    match cli.command {
        Command::Gauss(a) => {
            let field = FiniteLocalField::new(a.q, a.d, a.prec).map_err(|e| e.to_string())?;
            let group = UnitGroup::new(&field);
            let psi = AddChar::new(&field);
            let mut rep = Report::new(vec![
                "q",
                "char_index",
                "conductor",
                "shift",
                "value",
                "abs",
            ]);
            for chi in group.chars_of_conductor(a.r) {
                for l in 0..=a.shift_max {
                    let g = gauss_sum(&group, &chi, &psi, l).map_err(|e| e.to_string())?;
                    rep.push(vec![
                        json!(a.q),
                        json!(chi.index()),
                        json!(a.r),
                        json!(l),
                        cnum(g.value),
                        json!(g.value.norm()),
                    ]);
                }
            }
            rep.emit(format);
        }
        Command::ArchGauss(a) => {
            let chi = ArchChar::new(a.parity, a.phi);
            let mut rep = Report::new(vec!["conductor", "t", "value", "abs"]);
            if let Some(t) = a.t {
                let g = arch_gauss(&TestFunction::Default, &chi, t).map_err(|e| e.to_string())?;
                rep.push(vec![
                    json!(chi.conductor()),
                    json!(t),
                    cnum(g),
                    json!(g.norm()),
                ]);
            } else {
                let (t_best, g) =
                    arch_gauss_scan(&TestFunction::Default, &chi, a.epsilon, a.points)
                        .map_err(|e| e.to_string())?;
                rep.push(vec![
                    json!(chi.conductor()),
                    json!(t_best),
                    cnum(g),
                    json!(g.norm()),
                ]);
            }
            rep.emit(format);
        }
        Command::Zeta(a) => {
            let field = FiniteLocalField::new(a.q, a.d, a.prec).map_err(|e| e.to_string())?;
            let group = UnitGroup::new(&field);
            let psi = AddChar::new(&field);
            let (a1, a2) = (
                Complex64::from_polar(1.0, a.alpha_phase),
                Complex64::from_polar(1.0, -a.alpha_phase),
            );
            let w = WhittakerSeq::unramified_new_vector(&group, a1, a2, 220);
            let s = Complex64::new(a.s_re, a.s_im);
            let chis = group.chars_of_conductor(a.chi_cond);
            let chi = chis
                .first()
                .ok_or("no character of the requested conductor")?
                .extend(Complex64::new(1.0, 0.0));
            let rows: Vec<(i64, Complex64, Complex64)> = run_grid((0..=a.l_max).collect(), |&l| {
                let z = local_zeta(&group, &w, &chi, &psi, s, l).unwrap();
                let zb = local_zeta_bruteforce(&group, &w, &chi, &psi, s, l).unwrap();
                (l, z, zb)
            });
            let mut rep = Report::new(vec!["l", "zeta", "bruteforce", "residual"]);
            for (l, z, zb) in rows {
                rep.push(vec![json!(l), cnum(z), cnum(zb), json!((z - zb).norm())]);
            }
            rep.emit(format);
        }
        Command::Sigma(a) => {
            let cases: Vec<u8> = if a.case == 0 {
                (1..=8).collect()
            } else {
                vec![a.case]
            };
            let alpha = (
                Complex64::from_polar(1.0, a.alpha_phase),
                Complex64::from_polar(1.0, -a.alpha_phase),
            );
            let s = Complex64::new(a.s_re, a.s_im);
            let rows: Vec<(u8, Complex64, Complex64)> = run_grid(cases, |&c| {
                let closed = sigma_v(c, alpha, a.q, s, a.d).unwrap();
                let brute = sigma_v_bruteforce(c, alpha, a.q, s, a.d, a.horizon).unwrap();
                (c, closed, brute)
            });
            let mut rep = Report::new(vec!["case", "closed", "bruteforce", "residual"]);
            for (c, closed, brute) in rows {
                rep.push(vec![
                    json!(c),
                    cnum(closed),
                    cnum(brute),
                    json!((closed - brute).norm()),
                ]);
            }
            rep.emit(format);
        }
        Command::Matcoef(a) => {
            let ctx = DkContext::new(a.q, 3).map_err(|e| e.to_string())?;
            let repr = match a.repr.as_str() {
                "unramified" => LocalRepr::Unramified {
                    alpha1: Complex64::from_polar(1.0, a.t1_phase),
                    alpha2: Complex64::from_polar(1.0, a.t2_phase),
                },
                "ps-ramified" => {
                    let chi = *ctx
                        .group
                        .chars_of_conductor(1)
                        .first()
                        .ok_or("no conductor-1 character")?;
                    LocalRepr::PrincipalOrComplementary {
                        mu1: chi.extend(Complex64::from_polar(1.0, a.t1_phase)),
                        mu2: ctx
                            .group
                            .trivial_char()
                            .extend(Complex64::from_polar(1.0, a.t2_phase)),
                    }
                }
                "special" => LocalRepr::Special {
                    mu: ctx
                        .group
                        .trivial_char()
                        .extend(Complex64::from_polar(1.0, a.t1_phase)),
                },
                "supercuspidal" => {
                    let mut n_nu = std::collections::BTreeMap::new();
                    let mut c0 = std::collections::BTreeMap::new();
                    n_nu.insert(ctx.group.trivial_char(), -2i64);
                    c0.insert(ctx.group.trivial_char(), Complex64::new(1.0, 0.0));
                    LocalRepr::SupercuspidalInterface {
                        n_nu,
                        c0,
                        central: ctx.group.trivial_char().extend(Complex64::new(1.0, 0.0)),
                    }
                }
                other => return Err(format!("unknown repr {other:?}")),
            };
            let n = match a.n {
                Some(n) => n,
                None => repr.conductor(&ctx.group).map_err(|e| e.to_string())?,
            };
            let window = Window::new(-40, 300);
            let js: Vec<i64> = (-a.jmax..=a.jmax).collect();
            let rows: Vec<(i64, Complex64, f64)> = run_grid(js, |&j| {
                let mc = matrix_coefficient(&ctx, &repr, n, j, window).unwrap();
                (j, mc, spherical::xi_finite(a.q, j))
            });
            let mut rep = Report::new(vec!["j", "coefficient", "abs", "xi_envelope"]);
            for (j, mc, xi) in rows {
                rep.push(vec![json!(j), cnum(mc), json!(mc.norm()), json!(xi)]);
            }
            rep.emit(format);
        }
        Command::Branching(a) => {
            let prec = a.n_max.max(a.level_max).max(1);
            let field = FiniteLocalField::new(a.q, 0, prec).map_err(|e| e.to_string())?;
            let group = UnitGroup::new(&field);
            let mut chars = Vec::new();
            for r in 0..=a.level_max {
                chars.extend(group.chars_of_conductor(r));
            }
            let mut rep = Report::new(vec!["chi1", "chi2", "N", "d_N", "oracle"]);
            for c1 in &chars {
                for c2 in &chars {
                    let min_n = group.conductor(c1).max(group.conductor(c2));
                    for n in min_n..=a.n_max {
                        let f = gl2local::dualkirillov::branching_dimension(&group, c1, c2, n)
                            .map_err(|e| e.to_string())?;
                        let o =
                            gl2local::dualkirillov::branching_dimension_oracle(&group, c1, c2, n)
                                .map_err(|e| e.to_string())?;
                        rep.push(vec![
                            json!(c1.index()),
                            json!(c2.index()),
                            json!(n),
                            json!(f),
                            json!(o),
                        ]);
                    }
                }
            }
            rep.emit(format);
        }
        Command::Xi(a) => {
            let mut rep = Report::new(vec!["place", "T", "theta", "value", "extra"]);
            match a.place.as_str() {
                "finite" => {
                    let spec =
                        TranslatedTorusSpec::new(a.t_val, a.theta).map_err(|e| e.to_string())?;
                    let v = xi_integral_finite(&spec, a.q, a.d_v).map_err(|e| e.to_string())?;
                    let second = if a.oracle {
                        let field = FiniteLocalField::new(a.q, 0, 8).map_err(|e| e.to_string())?;
                        json!({
                            "bruteforce": xi_integral_finite_bruteforce(&spec, &field, 120)
                                .map_err(|e| e.to_string())?
                        })
                    } else {
                        json!({ "with_psi_factor": v.with_psi_factor })
                    };
                    rep.push(vec![
                        json!(format!("finite(q={})", a.q)),
                        json!(format!("p^{}", a.t_val)),
                        json!(a.theta),
                        json!(v.unit_haar),
                        second,
                    ]);
                }
                "real" | "complex" => {
                    let place = if a.place == "real" {
                        Place::Real
                    } else {
                        Place::Complex
                    };
                    let v = xi_integral_arch(place, a.t, a.theta).map_err(|e| e.to_string())?;
                    rep.push(vec![
                        json!(a.place),
                        json!(a.t),
                        json!(a.theta),
                        json!(v),
                        json!(null),
                    ]);
                }
                other => return Err(format!("unknown place {other:?}")),
            }
            rep.emit(format);
        }
        Command::Spherical(a) => {
            let place = match a.place.as_str() {
                "finite" => Place::Finite(a.q),
                "real" => Place::Real,
                "complex" => Place::Complex,
                other => return Err(format!("unknown place {other:?}")),
            };
            let params = SphericalParams::new(place, a.lambda).map_err(|e| e.to_string())?;
            let f = params.f(a.g).map_err(|e| e.to_string())?;
            let phi = params.phi(a.g).map_err(|e| e.to_string())?;
            let mut rep = Report::new(vec!["place", "lambda", "g", "f", "phi"]);
            rep.push(vec![
                json!(a.place),
                json!(a.lambda),
                json!(a.g),
                json!(f),
                json!(phi),
            ]);
            rep.emit(format);
        }
        Command::Su2(a) => {
            let mut rep = Report::new(vec!["kind", "input", "value", "oracle"]);
            if let Some(v) = a.isotypic {
                let idx = IsotypicIndex::new(v[0] as i64, v[1] as i64, v[2] as i64)
                    .map_err(|e| e.to_string())?;
                let beta = v[3];
                let val = isotypic_eval(&idx, beta).map_err(|e| e.to_string())?;
                let oracle = isotypic_eval_monomial_oracle(&idx, beta);
                rep.push(vec![
                    json!("isotypic"),
                    json!(format!(
                        "e[n={},k={},n0={}](beta={beta})",
                        idx.n, idx.k, idx.n0
                    )),
                    json!(val),
                    json!(oracle),
                ]);
            }
            if let Some(v) = a.intertwining {
                let n = v[0] as i64;
                let s = v[1];
                let val = intertwining_eigenvalue(Complex64::new(s, 0.0), n, n / 2)
                    .map_err(|e| e.to_string())?;
                let oracle = if s > 0.0 {
                    json!(intertwining_eigenvalue_quadrature(s, n).map_err(|e| e.to_string())?)
                } else {
                    json!(null)
                };
                rep.push(vec![
                    json!("intertwining"),
                    json!(format!("lambda[n={n}](s={s})")),
                    json!(val.re),
                    oracle,
                ]);
            }
            if rep.rows.is_empty() {
                return Err("pass --isotypic N K N0 BETA and/or --intertwining N S".into());
            }
            rep.emit(format);
        }
        Command::Optimize(a) => {
            let theta = parse_rat(&a.theta)?;
            let report = amplify::optimize_exponents(theta).map_err(|e| e.to_string())?;
            let face: Vec<Value> = report
                .face_vertices
                .iter()
                .map(|(e, k)| json!({ "e": e.to_string(), "kappa": k.to_string() }))
                .collect();
            match format {
                Format::Json => {
                    let out = json!({
                        "theta": theta.to_string(),
                        "delta": report.delta.to_string(),
                        "e": report.witness.0.to_string(),
                        "kappa_witness": report.witness.1.to_string(),
                        "kappa_face": face,
                        "witness_attains": report.witness_attains,
                        "active_forms": report.witness_active,
                    });
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
                _ => {
                    let mut rep =
                        Report::new(vec!["theta", "delta", "e", "kappa_witness", "face_size"]);
                    rep.push(vec![
                        json!(theta.to_string()),
                        json!(report.delta.to_string()),
                        json!(report.witness.0.to_string()),
                        json!(report.witness.1.to_string()),
                        json!(face.len()),
                    ]);
                    rep.emit(format);
                }
            }
        }
        Command::Tuples(a) => {
            let mut rep = Report::new(vec!["type", "count"]);
            let mut total: u128 = 0;
            for t in 1..=9u8 {
                let c = amplify::count_tuples(a.m, amplify::TupleType(t));
                total += c;
                rep.push(vec![json!(t), json!(c.to_string())]);
            }
            rep.push(vec![json!("total"), json!(total.to_string())]);
            rep.emit(format);
        }
        Command::Mellin(a) => {
            let s = Complex64::new(a.s_re, a.s_im);
            let bound = amplify::mellin_truncation_bound(a.q_cond, a.kappa, s, a.n)
                .map_err(|e| e.to_string())?;
            let numeric =
                amplify::mellin_numeric(a.q_cond, a.kappa, s).map_err(|e| e.to_string())?;
            let mut rep = Report::new(vec!["s", "n", "numeric_abs", "bound", "dominated"]);
            rep.push(vec![
                json!(format!("{}+{}i", s.re, s.im)),
                json!(a.n),
                json!(numeric.norm()),
                json!(bound),
                json!(numeric.norm() <= bound),
            ]);
            rep.emit(format);
        }
        Command::VerifyAll(a) => {
            let results = verify::run_all(a.quick);
            let mut rep = Report::new(vec![
                "check",
                "status",
                "residual",
                "tolerance",
                "seconds",
                "detail",
            ]);
            let mut all_pass = true;
            for r in &results {
                all_pass &= r.passed;
                rep.push(vec![
                    json!(r.name),
                    json!(if r.passed { "PASS" } else { "FAIL" }),
                    json!(r.max_residual),
                    json!(r.tolerance),
                    json!(r.seconds),
                    json!(r.detail),
                ]);
            }
            rep.emit(format);
            if !all_pass {
                let failing: Vec<&str> = results
                    .iter()
                    .filter(|r| !r.passed)
                    .map(|r| r.name)
                    .collect();
                eprintln!("failing checks: {failing:?}");
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Evaluate a function over grid points on the worker pool, preserving the
/// input order.
fn run_grid<T: Send + Sync, U: Send, F: Fn(&T) -> U + Sync>(points: Vec<T>, f: F) -> Vec<U> {
    use rayon::prelude::*;
    points.par_iter().map(&f).collect()
}
