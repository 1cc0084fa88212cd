//! Command-line front end: argument parsing, JSON output, exit codes and
//! the scan ledger. Every verb is a thin wrapper around library calls.

mod ledger;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::charp::{
    self, beta_n, cartier_pattern, congruence_check, degree_report, extract_bc, honda_bound,
    honda_witness, p_curvature, prefix_comparison, prime_context, verify_mod_solution, CharpError,
};
use crate::families::{
    self, discriminant_report, family, match_cusps, reduction_scan, FamilyError, FamilyModel,
};
use crate::numring::{parse_rational, primes_up_to, QuadNum, Ring};
use crate::picardfuchs::{compare_printed, derive_ode, exactness_certificate, FuchsOp, PfError};
use crate::series::{holomorphic_solution, integrality_report, printed_prefix, SeriesError};
use crate::teich::{enumerate_prototypes, normal_form, spin, TeichError};

pub use ledger::{ledger_append, ledger_path, LedgerRecord, LEDGER_ENV};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "teichfuchs", version, about = "Picard-Fuchs operators of genus-two Teichmueller curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Target {
    /// Discriminant.
    #[arg(long = "D")]
    d: i64,
    /// Spin component (D = 17 only).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
    eps: u8,
}

#[derive(Args, Debug, Clone, Copy)]
struct Output {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Splitting prototypes with spin and cusp normal form.
    Prototypes {
        #[arg(long = "D")]
        d: i64,
        #[command(flatten)]
        out: Output,
    },
    /// The explicit family, its cusp matching and optionally one fiber.
    Family {
        #[command(flatten)]
        target: Target,
        /// Fiber to print, as `t=<rational>`.
        #[arg(long)]
        fiber: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Reduction type for every prime up to `--pmax`, one JSON line each.
    Reduction {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 100)]
        pmax: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Derived Picard-Fuchs operator of form 1 or 2.
    Pf {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        form: u8,
        /// Compare with the published operator and check exactness.
        #[arg(long)]
        verify_printed: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Holomorphic solution at t = 0 and its integrality.
    Series {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        form: u8,
        /// Number of coefficients after the constant term.
        #[arg(long = "N", default_value_t = 200)]
        n: usize,
        /// Allowed denominator primes; defaults to the family's exceptional set.
        #[arg(long = "S", value_delimiter = ',')]
        s: Option<Vec<u64>>,
        #[command(flatten)]
        out: Output,
    },
    /// Characteristic-p checks modulo p^n.
    Charp {
        #[command(flatten)]
        target: Target,
        /// Odd prime of good reduction.
        #[arg(long)]
        p: u64,
        /// Work modulo p^n.
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Which check to run.
        #[arg(long, value_enum, default_value_t = What::Solutions)]
        what: What,
        /// Degree bound for the polynomial-solution search.
        #[arg(long)]
        honda_bound: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// p-curvature and Honda test for every good odd prime up to `--pmax`.
    NilpotenceScan {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 50)]
        pmax: u64,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Reruns the main checks for one family.
    Reproduce {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum What {
    Solutions,
    Cartier,
    Congruence,
    Beta,
    Honda,
    Pcurv,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Check(String),
}

impl From<TeichError> for CliError {
    fn from(e: TeichError) -> Self {
        match e {
            TeichError::EmptyLocus(_) => CliError::Check(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::UnsupportedDiscriminant(_) => CliError::Usage(e.to_string()),
            _ => CliError::Check(e.to_string()),
        }
    }
}

impl From<CharpError> for CliError {
    fn from(e: CharpError) -> Self {
        match e {
            CharpError::ExceptionalPrime(_) | CharpError::Num(_) => CliError::Usage(e.to_string()),
            _ => CliError::Check(e.to_string()),
        }
    }
}

impl From<PfError> for CliError {
    fn from(e: PfError) -> Self {
        CliError::Check(e.to_string())
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Check(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Check(format!("ledger: {e}"))
    }
}

/// One unit of output: a JSON object (or JSON line), its text rendering and
/// whether the checks it carries passed.
struct Item {
    json: Value,
    text: String,
    ok: bool,
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// Parses `argv` (including the program name), runs the verb and returns
/// the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let json = match &cli.command {
        Command::Prototypes { out, .. }
        | Command::Family { out, .. }
        | Command::Pf { out, .. }
        | Command::Series { out, .. }
        | Command::Charp { out, .. }
        | Command::Reproduce { out, .. } => out.json,
        // Scans always stream JSON lines.
        Command::Reduction { .. } | Command::NilpotenceScan { .. } => true,
    };
    let result = match cli.command {
        Command::Prototypes { d, .. } => prototypes(d),
        Command::Family { target, fiber, .. } => family_cmd(target, fiber.as_deref()),
        Command::Reduction { target, pmax, .. } => reduction(target, pmax),
        Command::Pf {
            target,
            form,
            verify_printed,
            ..
        } => pf(target, form as usize, verify_printed),
        Command::Series { target, form, n, s, .. } => series(target, form as usize, n, s),
        Command::Charp {
            target,
            p,
            n,
            what,
            honda_bound,
            ..
        } => {
            if p > 13 || n > 3 {
                let _ = writeln!(err, "warning: p = {p}, n = {n} is beyond the default sweep and may be slow");
            }
            charp_cmd(target, p, n, what, honda_bound)
        }
        Command::NilpotenceScan { target, pmax, jobs, .. } => nilpotence_scan(target, pmax, jobs),
        Command::Reproduce { target, .. } => reproduce(target),
    };
    match result {
        Ok(items) => {
            for it in &items {
                let line = if json {
                    it.json.to_string()
                } else {
                    it.text.clone()
                };
                if writeln!(out, "{line}").is_err() {
                    return EXIT_CHECK_FAILED;
                }
            }
            if items.iter().all(|it| it.ok) {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(CliError::Check(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_CHECK_FAILED
        }
    }
}

fn model(t: Target) -> Result<FamilyModel, CliError> {
    if t.d == 13 && t.eps != 1 {
        return Err(CliError::Usage("D = 13 has a single component; omit --eps".into()));
    }
    Ok(family(t.d, t.eps)?)
}

fn label(fm: &FamilyModel) -> String {
    match fm.eps {
        Some(e) => format!("D = {}, eps = {e}", fm.d),
        None => format!("D = {}", fm.d),
    }
}

fn prototypes(d: i64) -> Result<Vec<Item>, CliError> {
    let protos = enumerate_prototypes(d)?;
    let rows: Vec<Value> = protos
        .iter()
        .map(|pt| json!({"prototype": pt, "spin": spin(pt), "normal_form": normal_form(pt)}))
        .collect();
    let mut text = format!("D = {d}: {} prototypes\n", protos.len());
    for pt in &protos {
        let s = spin(pt);
        text += &format!(
            "  (a, b, c, e) = ({}, {}, {}, {})  spin {}{}  mu = {}\n",
            pt.a,
            pt.b,
            pt.c,
            pt.e,
            s.value,
            if s.separating { "" } else { " (not separating)" },
            normal_form(pt).mu
        );
    }
    Ok(vec![Item {
        json: json!({"D": d, "count": protos.len(), "prototypes": rows}),
        text: text.trim_end().to_string(),
        ok: !protos.is_empty(),
    }])
}

fn family_cmd(t: Target, fiber: Option<&str>) -> Result<Vec<Item>, CliError> {
    let fm = model(t)?;
    let invariants_ok = fm.check_invariants();
    let matches = match_cusps(&fm);
    let finite = fm
        .cusps
        .iter()
        .filter(|c| !matches!(c, families::Cusp::Infinity))
        .count();
    let matched = fm
        .cusps
        .iter()
        .filter(|c| matches.iter().any(|m| &&m.cusp == c))
        .count();
    let fiber_poly = match fiber {
        None => None,
        Some(spec) => {
            let v = spec
                .strip_prefix("t=")
                .ok_or_else(|| CliError::Usage(format!("--fiber expects t=<rational>, got {spec}")))?;
            let q = parse_rational(v).map_err(|e| CliError::Usage(e.to_string()))?;
            Some(families::fiber(&fm, &QuadNum::from_rational(q, fm.d)))
        }
    };
    let ok = invariants_ok && matched == finite;
    let mut text = format!("{}\n", label(&fm));
    for (k, c) in fm.c.iter().enumerate() {
        text += &format!("  c_{k} = {c}\n");
    }
    text += &format!("  invariants: {}\n", if invariants_ok { "ok" } else { "FAILED" });
    for m in &matches {
        let p = m.prototype;
        text += &format!(
            "  cusp {} ~ prototype ({}, {}, {}, {})\n",
            to_json(&m.cusp),
            p.a,
            p.b,
            p.c,
            p.e
        );
    }
    if let Some(f) = &fiber_poly {
        text += &format!("  fiber: {f}\n");
    }
    Ok(vec![Item {
        json: json!({
            "model": fm,
            "invariants_ok": invariants_ok,
            "cusp_matches": matches,
            "fiber": fiber_poly,
        }),
        text: text.trim_end().to_string(),
        ok,
    }])
}

fn reduction(t: Target, pmax: u64) -> Result<Vec<Item>, CliError> {
    let fm = model(t)?;
    Ok(reduction_scan(&fm, pmax)
        .into_iter()
        .map(|r| Item {
            text: String::new(),
            json: json!({"D": fm.d, "eps": fm.eps, "report": r}),
            ok: true,
        })
        .collect())
}

fn pf(t: Target, form: usize, verify: bool) -> Result<Vec<Item>, CliError> {
    let fm = model(t)?;
    let l = derive_ode(&fm, form)?;
    let mut obj = json!({
        "D": fm.d,
        "eps": fm.eps,
        "form": form,
        "A": l.a,
        "B": l.b,
        "singularities": l.singularities,
        "exponents": exponent_table(&l),
    });
    let mut text = format!("L_{form}: u'' + A u' + B u\n  A = {}\n  B = {}\n", l.a, l.b);
    for s in &l.singularities {
        text += &format!("  {}: exponents ({}, {})\n", s.point, s.exponents.0, s.exponents.1);
    }
    let mut ok = true;
    if verify {
        let cmp = compare_printed(&l, fm.d, t.eps, form)?;
        let exact = exactness_certificate(&fm, &l, form)?.is_zero();
        ok = cmp.a_equal && cmp.b_equal && exact;
        text += &format!(
            "  printed A: {}, printed B: {}, exactness: {}\n",
            verdict(cmp.a_equal),
            verdict(cmp.b_equal),
            verdict(exact)
        );
        if !cmp.mismatched_powers.is_empty() {
            text += &format!("  B numerators differ at t^{:?}\n", cmp.mismatched_powers);
        }
        obj["verify_printed"] = json!({"comparison": cmp, "exact": exact});
    }
    Ok(vec![Item {
        json: obj,
        text: text.trim_end().to_string(),
        ok,
    }])
}

fn exponent_table(l: &FuchsOp) -> Value {
    Value::Array(
        l.singularities
            .iter()
            .map(|s| json!({"point": s.point.to_string(), "exponents": to_json(&s)["exponents"]}))
            .collect(),
    )
}

fn verdict(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn series(t: Target, form: usize, n: usize, s: Option<Vec<u64>>) -> Result<Vec<Item>, CliError> {
    let fm = model(t)?;
    let l = derive_ode(&fm, form)?;
    let s = s.unwrap_or_else(|| fm.s_exceptional.clone());
    let rep = integrality_report(&l, &s, n)?;
    let mut text = format!("u_{form} to order {n}, S = {s:?}\n");
    for (j, c) in rep.prefix.coeffs().iter().take(8).enumerate() {
        text += &format!("  u[{j}] = {c}\n");
    }
    if n >= 8 {
        text += "  ...\n";
    }
    text += &format!(
        "  denominator primes {:?}, violations {}\n",
        rep.denominator_primes,
        rep.violations.len()
    );
    Ok(vec![Item {
        ok: rep.violations.is_empty(),
        json: json!({"D": fm.d, "eps": fm.eps, "form": form, "report": rep}),
        text: text.trim_end().to_string(),
    }])
}

/// Checks of one `charp --what` kind; `Ok((payload, passed))`.
fn charp_payload(
    fm: &FamilyModel,
    ops: &[FuchsOp; 2],
    p: u64,
    n: u32,
    what: What,
    bound: Option<usize>,
) -> Result<(Value, bool), CliError> {
    let ctx = prime_context(fm, p, n)?;
    match what {
        What::Solutions => {
            let bc = extract_bc(fm, &ctx)?;
            let mut checks = serde_json::Map::new();
            let mut ok = true;
            for k in 1..=2 {
                let b = verify_mod_solution(&ops[0], bc.b(k))?;
                let c = verify_mod_solution(&ops[1], bc.c(k))?;
                checks.insert(format!("L1(B{k})"), b.into());
                checks.insert(format!("L2(C{k})"), c.into());
                ok &= b && c;
            }
            let deg = degree_report(fm, &ctx)?;
            ok &= deg.bounds_ok && deg.attained;
            Ok((json!({"polys": bc, "annihilated": checks, "degrees": deg}), ok))
        }
        What::Cartier => {
            let r = cartier_pattern(fm, p)?;
            let ok = r.ok;
            Ok((to_json(&r), ok))
        }
        What::Congruence => {
            let r = congruence_check(fm, p, n)?;
            let ok = r.ok;
            Ok((to_json(&r), ok))
        }
        What::Beta => {
            let r1 = beta_n(fm, &ops[0], 1, &ctx)?;
            let r2 = beta_n(fm, &ops[1], 2, &ctx)?;
            let u = holomorphic_solution(&ops[0], r1.beta as usize)?;
            let cmp = prefix_comparison(&u, &r1)?;
            let ok = [&r1, &r2].iter().all(|r| r.congruence_ok && r.bound_ok) && cmp.agree;
            Ok((json!({"forms": [r1, r2], "prefix_agreement": cmp}), ok))
        }
        What::Honda => {
            let bound = bound.unwrap_or_else(|| honda_bound(p));
            let mut rows = Vec::new();
            let mut ok = true;
            for (i, l) in ops.iter().enumerate() {
                let w = honda_witness(l, &ctx, bound)?;
                ok &= w.is_some();
                rows.push(json!({"form": i + 1, "bound": bound, "witness": w}));
            }
            Ok((Value::Array(rows), ok))
        }
        What::Pcurv => {
            let mut rows = Vec::new();
            let mut ok = true;
            for (i, l) in ops.iter().enumerate() {
                let pc = p_curvature(l, &ctx)?;
                ok &= pc.nilpotent && !pc.zero;
                rows.push(json!({"form": i + 1, "p_curvature": pc}));
            }
            Ok((Value::Array(rows), ok))
        }
    }
}

fn operators(fm: &FamilyModel) -> Result<[FuchsOp; 2], CliError> {
    Ok([derive_ode(fm, 1)?, derive_ode(fm, 2)?])
}

fn charp_cmd(t: Target, p: u64, n: u32, what: What, bound: Option<usize>) -> Result<Vec<Item>, CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let fm = model(t)?;
    let ops = operators(&fm)?;
    let (payload, ok) = charp_payload(&fm, &ops, p, n, what, bound)?;
    let name = format!("{what:?}").to_lowercase();
    Ok(vec![Item {
        text: format!("D = {}, p^n = {p}^{n}, {name}: {}\n{payload:#}", fm.d, verdict(ok)),
        json: json!({"D": fm.d, "eps": fm.eps, "p": p, "n": n, "what": name, "ok": ok, "result": payload}),
        ok,
    }])
}

#[derive(Serialize)]
struct FormVerdict {
    form: usize,
    nilpotent: bool,
    zero: bool,
    honda: bool,
}

fn nilpotence_scan(t: Target, pmax: u64, jobs: Option<usize>) -> Result<Vec<Item>, CliError> {
    let fm = model(t)?;
    let ops = operators(&fm)?;
    let primes: Vec<u64> = primes_up_to(pmax)
        .into_iter()
        .filter(|&p| p > 2 && prime_context(&fm, p, 1).is_ok())
        .collect();
    let scan = |p: u64| -> Result<(u64, Vec<FormVerdict>), CharpError> {
        let ctx = prime_context(&fm, p, 1)?;
        ops.iter()
            .enumerate()
            .map(|(i, l)| {
                let pc = p_curvature(l, &ctx)?;
                Ok(FormVerdict {
                    form: i + 1,
                    nilpotent: pc.nilpotent,
                    zero: pc.zero,
                    honda: charp::honda_test(l, &ctx, None)?,
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(|v| (p, v))
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let results = pool.install(|| primes.par_iter().map(|&p| scan(p)).collect::<Vec<_>>());
    let stamp = ledger::timestamp();
    let mut items = Vec::new();
    let mut records = Vec::new();
    for r in results {
        let (p, forms) = r?;
        let ok = forms.iter().all(|f| f.nilpotent && !f.zero && f.honda == f.nilpotent);
        let verdict = if forms.iter().any(|f| f.honda != f.nilpotent) {
            "honda_disagrees"
        } else if forms.iter().any(|f| !f.nilpotent) {
            "not_nilpotent"
        } else if forms.iter().any(|f| f.zero) {
            "zero"
        } else {
            "nilpotent"
        };
        records.push(LedgerRecord {
            d: fm.d,
            eps: fm.eps,
            p,
            n: 1,
            check: "nilpotence".into(),
            verdict: verdict.into(),
            timestamp: stamp,
        });
        items.push(Item {
            json: json!({"D": fm.d, "eps": fm.eps, "p": p, "verdict": verdict, "forms": forms}),
            text: String::new(),
            ok,
        });
    }
    ledger_append(&ledger_path(), &records)?;
    Ok(items)
}

#[derive(Serialize)]
struct Check {
    check: String,
    ok: bool,
    detail: Value,
}

fn check(name: impl Into<String>, ok: bool, detail: Value) -> Check {
    Check {
        check: name.into(),
        ok,
        detail,
    }
}

const SWEEP: [u64; 5] = [3, 5, 7, 11, 13];

fn reproduce(t: Target) -> Result<Vec<Item>, CliError> {
    let fm = model(t)?;
    let d = fm.d;
    let mut checks = Vec::new();

    let protos = enumerate_prototypes(d)?;
    let classes = [0u8, 1].map(|v| protos.iter().filter(|p| spin(p).value == v).count());
    let expected = if d == 17 { 6 } else { 3 };
    let spin_ok = d != 17 || classes.iter().all(|&c| c > 0);
    checks.push(check(
        "prototypes",
        protos.len() == expected && spin_ok,
        json!({"count": protos.len(), "expected": expected, "spin_classes": classes}),
    ));

    let disc = discriminant_report(&fm);
    let ratio = &disc.ratio_to_printed;
    let unit_ok = disc.unit_norm_primes.iter().all(|p| fm.s_exceptional.contains(p));
    checks.push(check(
        "discriminant",
        disc.pattern_ok && unit_ok && plus_minus_one(ratio),
        json!({"pattern": disc.pattern, "unit_norm_primes": disc.unit_norm_primes, "ratio_to_printed": ratio}),
    ));

    let ops = operators(&fm)?;
    for (i, l) in ops.iter().enumerate() {
        let cmp = compare_printed(l, d, t.eps, i + 1)?;
        let exact = exactness_certificate(&fm, l, i + 1)?.is_zero();
        checks.push(check(
            format!("operator L{}", i + 1),
            cmp.a_equal && cmp.b_equal && exact,
            json!({"A": cmp.a_equal, "B": cmp.b_equal, "exact": exact, "mismatched_powers": cmp.mismatched_powers}),
        ));
    }

    for (i, l) in ops.iter().enumerate() {
        if let Some(printed) = printed_prefix(d, t.eps, i + 1) {
            let u = holomorphic_solution(l, printed.len() - 1)?;
            checks.push(check(
                format!("prefix u{}", i + 1),
                u.coeffs() == printed.as_slice(),
                json!({"coefficients": u.coeffs()}),
            ));
        }
    }

    for (i, l) in ops.iter().enumerate() {
        let rep = integrality_report(l, &fm.s_exceptional, 200)?;
        checks.push(check(
            format!("integrality u{}", i + 1),
            rep.violations.is_empty(),
            json!({"N": 200, "S": fm.s_exceptional, "denominator_primes": rep.denominator_primes, "violations": rep.violations}),
        ));
    }

    let good: Vec<u64> = SWEEP
        .iter()
        .copied()
        .filter(|&p| prime_context(&fm, p, 1).is_ok())
        .collect();
    let sweep: Vec<(u64, Result<Vec<(String, bool)>, CliError>)> = good
        .par_iter()
        .map(|&p| {
            let run = || -> Result<Vec<(String, bool)>, CliError> {
                let mut out = Vec::new();
                out.push(("cartier".into(), charp_payload(&fm, &ops, p, 1, What::Cartier, None)?.1));
                for n in 1..=2 {
                    for w in [What::Solutions, What::Congruence] {
                        let ok = charp_payload(&fm, &ops, p, n, w, None)?.1;
                        out.push((format!("{w:?}^{n}").to_lowercase(), ok));
                    }
                    let ctx = prime_context(&fm, p, n)?;
                    let ok = (1..=2).try_fold(true, |acc, i| {
                        let r = beta_n(&fm, &ops[i - 1], i, &ctx)?;
                        Ok::<_, CliError>(acc && r.congruence_ok && r.bound_ok)
                    })?;
                    out.push((format!("beta^{n}"), ok));
                }
                Ok(out)
            };
            (p, run())
        })
        .collect();
    for (p, r) in sweep {
        let parts = r?;
        let ok = parts.iter().all(|(_, b)| *b);
        let detail: serde_json::Map<String, Value> =
            parts.into_iter().map(|(k, b)| (k, Value::Bool(b))).collect();
        checks.push(check(format!("charp p={p}"), ok, Value::Object(detail)));
    }

    let ok = checks.iter().all(|c| c.ok);
    let mut text = format!("reproduce {}\n", label(&fm));
    for c in &checks {
        text += &format!("  {:<4} {}\n", if c.ok { "ok" } else { "FAIL" }, c.check);
    }
    Ok(vec![Item {
        json: json!({"D": d, "eps": fm.eps, "ok": ok, "checks": checks}),
        text: text.trim_end().to_string(),
        ok,
    }])
}

fn plus_minus_one(x: &QuadNum) -> bool {
    x.is_one() || x.neg().is_one()
}
