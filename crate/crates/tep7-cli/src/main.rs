//! `tep7`: derivation, verification, instantiation and scanning of the
//! degree-4 ideal solutions of the Tarry-Escott problem of degree seven.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use tep7::pipeline::{self, RootResult};
use tep7::tep::{FamilyJson, ScanRecord, SolutionFamily};
use tep7::{fixtures, verifier};

#[derive(Parser)]
#[command(name = "tep7", version, about = "Quartic ideal solutions of the Tarry-Escott problem of degree seven", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check a family's multigrade identities symbolically plus a randomized
    /// numeric cross-check.
    Verify {
        /// `builtin:1`..`builtin:4` or a path to a family JSON file.
        #[arg(long)]
        family: String,
        /// Degree set, e.g. `1..7` or `8`.
        #[arg(long, default_value = "1..7")]
        degrees: String,
    },
    /// Walk the construction: both parameters free prints the first
    /// condition and the branch menu; one free prints that branch's second
    /// condition and roots; both fixed assembles the family.
    Derive {
        /// Rational value for f, or `free`.
        #[arg(long, default_value = "free", allow_hyphen_values = true)]
        f: String,
        /// Rational value for g, or `free`.
        #[arg(long, default_value = "free", allow_hyphen_values = true)]
        g: String,
    },
    /// Instantiate a family at one parameter value (canonical instance).
    Instantiate {
        #[arg(long)]
        family: String,
        /// Integer or rational (`p/q`) parameter value.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Instantiate a family over an inclusive integer range, one JSONL
    /// record per nondegenerate t, ascending.
    Scan {
        #[arg(long)]
        family: String,
        /// Range `lo..hi`, inclusive.
        #[arg(long, allow_hyphen_values = true)]
        t_range: String,
        /// Output path; `-` or absent writes to stdout. Relative paths are
        /// resolved against `TEP7_OUT_DIR` when that variable is set.
        #[arg(long)]
        out: Option<String>,
    },
    /// Print a vanishing condition in canonical text form.
    Conditions {
        /// `first` or `second`.
        #[arg(long)]
        stage: String,
        /// Branch for the second stage, e.g. `f=-2` (also accepts the
        /// factor form `f+2`).
        #[arg(long)]
        branch: Option<String>,
    },
    /// Regression of every computed object against the stored displays.
    Fixtures,
}

fn main() {
    // die quietly when a downstream pipe closes early (head, grep -m, ...)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: &Cli) -> Result<i32, String> {
    match &cli.command {
        Command::Verify { family, degrees } => cmd_verify(family, degrees, cli.json),
        Command::Derive { f, g } => cmd_derive(f, g, cli.json),
        Command::Instantiate { family, t } => cmd_instantiate(family, t, cli.json),
        Command::Scan {
            family,
            t_range,
            out,
        } => cmd_scan(family, t_range, out.as_deref(), cli.json),
        Command::Conditions { stage, branch } => cmd_conditions(stage, branch.as_deref(), cli.json),
        Command::Fixtures => cmd_fixtures(cli.json),
    }
}

// ---------------------------------------------------------------------------
// argument parsing helpers
// ---------------------------------------------------------------------------

fn load_family(spec: &str) -> Result<SolutionFamily, String> {
    if let Some(idx) = spec.strip_prefix("builtin:") {
        let i: usize = idx
            .parse()
            .map_err(|_| format!("bad builtin index {:?}", idx))?;
        if !(1..=4).contains(&i) {
            return Err(format!("builtin index {} out of range 1..4", i));
        }
        return Ok(fixtures::builtin_family(i));
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| format!("cannot read family file {:?}: {}", spec, e))?;
    let json: FamilyJson =
        serde_json::from_str(&text).map_err(|e| format!("bad family JSON: {}", e))?;
    SolutionFamily::from_json(&json).map_err(|e| e.to_string())
}

fn parse_degrees(spec: &str) -> Result<BTreeSet<u32>, String> {
    let parse_one = |s: &str| -> Result<u32, String> {
        s.trim()
            .parse::<u32>()
            .map_err(|_| format!("bad degree {:?}", s))
    };
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo = parse_one(lo)?;
        let hi = parse_one(hi)?;
        if lo == 0 || hi < lo {
            return Err(format!("bad degree range {:?}", spec));
        }
        Ok((lo..=hi).collect())
    } else {
        let d = parse_one(spec)?;
        if d == 0 {
            return Err("degree must be positive".into());
        }
        Ok([d].into_iter().collect())
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num = BigInt::from_str(n.trim()).map_err(|_| format!("bad rational {:?}", s))?;
        let den = BigInt::from_str(d.trim()).map_err(|_| format!("bad rational {:?}", s))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(num, den))
    } else {
        let num = BigInt::from_str(s).map_err(|_| format!("bad rational {:?}", s))?;
        Ok(BigRational::from_integer(num))
    }
}

fn parse_t_range(spec: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = spec
        .split_once("..")
        .ok_or_else(|| format!("bad range {:?}, expected lo..hi", spec))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad bound {:?}", lo))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad bound {:?}", hi))?;
    if hi < lo {
        return Err(format!("empty range {:?}", spec));
    }
    Ok((lo, hi))
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct VerifyOut {
    family: String,
    degrees: Vec<u32>,
    symbolic: Vec<(u32, bool)>,
    numeric_cross_check: bool,
    trivial: bool,
    first_failure_degree: Option<u32>,
    first_failure_residual: Option<String>,
}

fn cmd_verify(family: &str, degrees: &str, json: bool) -> Result<i32, String> {
    let fam = load_family(family)?;
    let degs = parse_degrees(degrees)?;
    let report = fam.verify(&degs);
    // numeric second opinion on every residual in the set
    let numeric_ok = degs.iter().all(|&r| {
        let res = fam.residual(r);
        verifier::numeric_identity_check(&res, verifier::DEFAULT_TRIALS, verifier::DEFAULT_BOUND)
            == res.is_zero()
    });
    let all_pass = report.all_zero() && numeric_ok;
    let out = VerifyOut {
        family: fam.label.clone(),
        degrees: degs.iter().copied().collect(),
        symbolic: report.per_degree.clone(),
        numeric_cross_check: numeric_ok,
        trivial: report.trivial,
        first_failure_degree: report.first_failure.as_ref().map(|(r, _)| *r),
        first_failure_residual: report.first_failure.as_ref().map(|(_, p)| p.to_string()),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("family {}", out.family);
        for (r, ok) in &out.symbolic {
            println!("  degree {}: {}", r, if *ok { "identically zero" } else { "NONZERO" });
        }
        println!("  numeric cross-check: {}", if numeric_ok { "consistent" } else { "INCONSISTENT" });
        if out.trivial {
            println!("  note: family is trivial (equal sides)");
        }
        if let Some((r, res)) = &report.first_failure {
            println!("  first failing degree {}: residual = {}", r, res);
        }
    }
    Ok(if all_pass { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// derive
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct BranchStub {
    factor: String,
    substitution: String,
    free: String,
}

#[derive(Serialize)]
struct MenuOut {
    first_condition_factors: Vec<String>,
    first_condition_constant: String,
    branches: Vec<BranchStub>,
}

#[derive(Serialize)]
struct BranchOut {
    factor: String,
    substitution: String,
    free: String,
    stripped_a1: u32,
    stripped_a3: u32,
    square_part: String,
    cofactor: String,
    second_condition: String,
    rational_roots: Vec<String>,
}

#[derive(Serialize)]
struct AttemptOut {
    factor: String,
    substitution: String,
    root: String,
    outcome: String,
    conic: Option<String>,
    alpha1: Option<String>,
    alpha2: Option<String>,
    alpha3: Option<String>,
    y_sqrt: Option<String>,
}

#[derive(Serialize)]
struct DeriveOut {
    f: String,
    g: String,
    attempts: Vec<AttemptOut>,
    family: Option<FamilyJson>,
    equivalent_builtin: Option<usize>,
}

fn cmd_derive(f: &str, g: &str, json: bool) -> Result<i32, String> {
    let f_free = f.eq_ignore_ascii_case("free");
    let g_free = g.eq_ignore_ascii_case("free");
    match (f_free, g_free) {
        (true, true) => derive_menu(json),
        (false, true) | (true, false) => {
            let (fixed_var, value) = if g_free {
                ("f", parse_rational(f)?)
            } else {
                ("g", parse_rational(g)?)
            };
            derive_branch(fixed_var, &value, json)
        }
        (false, false) => derive_full(&parse_rational(f)?, &parse_rational(g)?, json),
    }
}

fn derive_menu(json: bool) -> Result<i32, String> {
    let constant = pipeline::first_condition()
        .divide_exact(fixtures::first_condition_product())
        .and_then(|q| q.as_constant())
        .map(|c| c.to_string())
        .unwrap_or_else(|| "MISMATCH".into());
    let out = MenuOut {
        first_condition_factors: fixtures::FIRST_CONDITION_FACTORS_SRC
            .iter()
            .map(|s| s.to_string())
            .collect(),
        first_condition_constant: constant,
        branches: pipeline::linear_factor_choices()
            .iter()
            .map(|b| BranchStub {
                factor: b.factor_src.to_string(),
                substitution: b.substitution(),
                free: b.free.to_string(),
            })
            .collect(),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("first condition (a1-discriminant of the substituted sextic, pure powers stripped)");
        println!("  = {} x product of:", out.first_condition_constant);
        for f in &out.first_condition_factors {
            println!("    {}", f);
        }
        println!("ten linear-factor branches:");
        for b in &out.branches {
            println!("  {:12} -> {} (free: {})", b.factor, b.substitution, b.free);
        }
    }
    Ok(0)
}

fn derive_branch(fixed_var: &str, value: &BigRational, json: bool) -> Result<i32, String> {
    let branch = pipeline::linear_factor_choices()
        .into_iter()
        .find(|b| {
            b.fixed.to_string() == fixed_var
                && b.replacement().is_constant()
                && b.replacement().as_constant().map(BigRational::from_integer).as_ref()
                    == Some(value)
        })
        .ok_or_else(|| {
            format!(
                "{} = {} does not annihilate any linear factor identically; \
                 valid constant choices are f = -2, f = 1, g = -2, g = 1",
                fixed_var, value
            )
        })?;
    let red = pipeline::reduce_once(&branch).map_err(|e| e.to_string())?;
    let cond = pipeline::second_condition_of(&red).map_err(|e| e.to_string())?;
    let roots = pipeline::rational_roots(&cond, branch.free);
    let out = BranchOut {
        factor: branch.factor_src.to_string(),
        substitution: branch.substitution(),
        free: branch.free.to_string(),
        stripped_a1: red.stripped_a1,
        stripped_a3: red.stripped_a3,
        square_part: red.square_part.to_string(),
        cofactor: red.cofactor.to_string(),
        second_condition: cond.to_string(),
        rational_roots: roots.iter().map(|r| r.to_string()).collect(),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("branch {}: {}", out.factor, out.substitution);
        println!("  stripped pure powers: a1^{} a3^{}", out.stripped_a1, out.stripped_a3);
        println!("  squared factor: {}", out.square_part);
        println!("  quartic cofactor: {}", out.cofactor);
        println!("  second condition ({} free): {}", out.free, out.second_condition);
        println!("  rational roots: {}", out.rational_roots.join(", "));
    }
    Ok(0)
}

fn derive_full(f0: &BigRational, g0: &BigRational, json: bool) -> Result<i32, String> {
    let outcome = pipeline::derive_at(f0, g0);
    if outcome.attempts.is_empty() {
        return Err(format!(
            "(f, g) = ({}, {}) does not annihilate any of the ten linear factors",
            f0, g0
        ));
    }
    let attempts: Vec<AttemptOut> = outcome
        .attempts
        .iter()
        .map(|(b, res)| {
            let (conic, a1p, a2p, a3p, y) = match res {
                RootResult::Family(d) => (
                    Some(d.state.conic.to_string()),
                    Some(d.state.alpha1.to_string()),
                    Some(d.state.alpha2.to_string()),
                    Some(d.state.alpha3.to_string()),
                    Some(d.state.y_sqrt.to_string()),
                ),
                _ => (None, None, None, None, None),
            };
            AttemptOut {
                factor: b.factor_src.to_string(),
                substitution: b.substitution(),
                root: if b.free == tep7::vars::F {
                    f0.to_string()
                } else {
                    g0.to_string()
                },
                outcome: res.label(),
                conic,
                alpha1: a1p,
                alpha2: a2p,
                alpha3: a3p,
                y_sqrt: y,
            }
        })
        .collect();
    let equivalent_builtin = outcome.family.as_ref().and_then(|fam| {
        (1..=4).find(|&i| pipeline::equivalent(fam, &fixtures::builtin_family(i)))
    });
    let out = DeriveOut {
        f: f0.to_string(),
        g: g0.to_string(),
        attempts,
        family: outcome.family.as_ref().map(|f| f.to_json()),
        equivalent_builtin,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("derivation at f = {}, g = {}", out.f, out.g);
        for a in &out.attempts {
            println!("  branch {} ({}), root {}: {}", a.factor, a.substitution, a.root, a.outcome);
            if let Some(c) = &a.conic {
                println!("    conic: {}", c);
            }
            if let (Some(a1p), Some(a2p), Some(a3p)) = (&a.alpha1, &a.alpha2, &a.alpha3) {
                println!("    a1(t) = {}", a1p);
                println!("    a2(t) = {}", a2p);
                println!("    a3(t) = {}", a3p);
            }
            if let Some(y) = &a.y_sqrt {
                println!("    y(t) = {}", y);
            }
        }
        match (&outcome.family, equivalent_builtin) {
            (Some(fam), Some(i)) => {
                print_family(fam);
                println!("equivalent to builtin:{}", i);
            }
            (Some(fam), None) => print_family(fam),
            (None, _) => println!("no family assembled (degenerate outcomes above)"),
        }
    }
    Ok(0)
}

fn print_family(fam: &SolutionFamily) {
    println!("family {} (first half; second half is the negation):", fam.label);
    for (i, p) in fam.xs.iter().take(4).enumerate() {
        println!("  x{} = {}", i + 1, p);
    }
    for (i, p) in fam.ys.iter().take(4).enumerate() {
        println!("  y{} = {}", i + 1, p);
    }
}

// ---------------------------------------------------------------------------
// instantiate / scan
// ---------------------------------------------------------------------------

fn cmd_instantiate(family: &str, t: &str, json: bool) -> Result<i32, String> {
    let fam = load_family(family)?;
    let t0 = parse_rational(t)?;
    match fam.instantiate(&t0) {
        Ok(inst) => {
            if json {
                let rec = ScanRecord::new(
                    &BigInt::zero(), // placeholder, replaced below for rational t
                    &inst,
                );
                let mut val = serde_json::to_value(&rec).unwrap();
                val["t"] = serde_json::Value::String(t0.to_string());
                println!("{}", serde_json::to_string_pretty(&val).unwrap());
            } else {
                println!("t = {}", t0);
                println!("  xs: {}", side_string(&inst.xs));
                println!("  ys: {}", side_string(&inst.ys));
                let trivial = inst.is_trivial();
                println!("  trivial: {}", trivial);
            }
            Ok(0)
        }
        Err(e) => Err(format!("t = {}: {}", t0, e)),
    }
}

fn side_string(side: &[BigInt; 8]) -> String {
    side.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_scan(family: &str, t_range: &str, out: Option<&str>, _json: bool) -> Result<i32, String> {
    let fam = load_family(family)?;
    let (lo, hi) = parse_t_range(t_range)?;
    let mut sink: Box<dyn Write> = match out {
        None | Some("-") => Box::new(std::io::stdout()),
        Some(path) => {
            let mut p = PathBuf::from(path);
            if p.is_relative() {
                if let Ok(dir) = std::env::var("TEP7_OUT_DIR") {
                    p = PathBuf::from(dir).join(p);
                }
            }
            Box::new(
                std::fs::File::create(&p)
                    .map_err(|e| format!("cannot create {:?}: {}", p, e))?,
            )
        }
    };
    for t0 in lo..=hi {
        match fam.instantiate_int(t0) {
            Ok(inst) => {
                let rec = ScanRecord::new(&BigInt::from(t0), &inst);
                writeln!(sink, "{}", serde_json::to_string(&rec).unwrap())
                    .map_err(|e| format!("write failed: {}", e))?;
            }
            Err(_) => {
                eprintln!("note: t = {} degenerate, skipped", t0);
            }
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// conditions / fixtures
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ConditionOut {
    stage: String,
    branch: Option<String>,
    factors: Vec<String>,
    constant_multiple: String,
    expanded: String,
}

fn cmd_conditions(stage: &str, branch: Option<&str>, json: bool) -> Result<i32, String> {
    let out = match stage {
        "first" => {
            let computed = pipeline::first_condition();
            let constant = computed
                .divide_exact(fixtures::first_condition_product())
                .and_then(|q| q.as_constant())
                .map(|c| c.to_string())
                .unwrap_or_else(|| "MISMATCH".into());
            ConditionOut {
                stage: "first".into(),
                branch: None,
                factors: fixtures::FIRST_CONDITION_FACTORS_SRC
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
                constant_multiple: constant,
                expanded: computed.to_string(),
            }
        }
        "second" => {
            let spec = branch.ok_or("--branch is required for --stage second")?;
            let norm: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
            let b = pipeline::linear_factor_choices()
                .into_iter()
                .find(|b| {
                    b.substitution().replace(' ', "") == norm
                        || b.factor_src.replace(' ', "") == norm
                })
                .ok_or_else(|| format!("unknown branch {:?}", spec))?;
            let cond = pipeline::second_condition(&b).map_err(|e| e.to_string())?;
            let (factors, constant) = if b.factor_src == "f + 2" {
                let c = cond
                    .divide_exact(fixtures::second_condition_product())
                    .and_then(|q| q.as_constant())
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| "MISMATCH".into());
                (
                    fixtures::SECOND_CONDITION_FACTORS_SRC
                        .iter()
                        .map(|s| s.to_string())
                        .collect(),
                    c,
                )
            } else {
                (Vec::new(), "1".into())
            };
            ConditionOut {
                stage: "second".into(),
                branch: Some(b.substitution()),
                factors,
                constant_multiple: constant,
                expanded: cond.to_string(),
            }
        }
        other => return Err(format!("unknown stage {:?}, expected first|second", other)),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        match &out.branch {
            Some(b) => println!("second condition on branch {}", b),
            None => println!("first condition"),
        }
        if !out.factors.is_empty() {
            println!("  = {} x product of:", out.constant_multiple);
            for f in &out.factors {
                println!("    {}", f);
            }
        }
        println!("  expanded: {}", out.expanded);
    }
    Ok(0)
}

fn cmd_fixtures(json: bool) -> Result<i32, String> {
    let report = verifier::fixture_regression();
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("fixture regression (checksum {})", report.checksum);
        for e in &report.entries {
            let status = match &e.result {
                verifier::MatchKind::Exact => "exact".to_string(),
                verifier::MatchKind::ConstantMultiple(c) => format!("x {}", c),
                verifier::MatchKind::Equivalent => "equivalent".to_string(),
                verifier::MatchKind::Mismatch => "MISMATCH".to_string(),
            };
            println!("  {:55} {}", e.name, status);
        }
    }
    Ok(if report.pass() { 0 } else { 1 })
}
