//! `g2verify`: batch front end for the G2 unramified verification suite.
//!
//! Exit status is 0 when every executed check passes, 1 when a check fails
//! or cannot be run, and 2 on a usage error.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use g2_unramified::adjoint::{AdjointModel, Calibration};
use g2_unramified::audit::{run_audit, AuditConfig, Expectation, IdentityReport};
use g2_unramified::localmodels::EpsChoice;
use g2_unramified::oracle::{run_suite, suite_points, ComparisonReport, OracleConfig, Verdict};
use g2_unramified::rootsys::{double_coset_reps, parabolic_subgroup, stabilizer_data, unfolding_representatives,
    LeviIntersection, Simple};
use g2_unramified::zeta::{product_formula_text, verify_main_identity, lemma_suite, LemmaCheck};

#[derive(Parser, Debug)]
#[command(name = "g2verify", version, about = "Exact verification of the unramified local zeta integral on G2")]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print every individual check, not only failures and summaries.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Audit the group identities in the adjoint model.
    VerifyGroup(GroupArgs),
    /// Double cosets of the unfolding and their stabilizers.
    UnfoldCosets,
    /// Lemma closed forms against their defining sums.
    VerifyLemmas(LemmaArgs),
    /// The local factor against the expected ratio of L-factors.
    ClosedForm(ClosedArgs),
    /// Numeric comparison of closed forms with truncated sums.
    Oracle(OracleArgs),
    /// Everything above.
    All(AllArgs),
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    /// Random rational samples per identity.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    group_seed: u64,
    /// Skip the check with indeterminate parameters.
    #[arg(long)]
    no_symbolic: bool,
}

#[derive(Args, Debug, Clone)]
struct LemmaArgs {
    /// Largest n for the J, R lemmas.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(i64).range(0..=40))]
    nmax: i64,
    /// Largest n for I.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(i64).range(0..=40))]
    nmax_i: i64,
}

#[derive(Args, Debug, Clone)]
struct ClosedArgs {
    /// `+1`, `-1` or `sym`; all three when omitted.
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<EpsChoice>,
}

#[derive(Args, Debug, Clone)]
struct OracleArgs {
    #[arg(long, default_value_t = 9.0)]
    q: f64,
    #[arg(long, default_value_t = 2.0)]
    s: f64,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    points: u64,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    nmax: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args, Debug, Clone)]
struct AllArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[command(flatten)]
    oracle: OracleArgs,
}

impl Default for AllArgs {
    fn default() -> Self {
        let parsed = Cli::parse_from(["g2verify", "all"]);
        match parsed.command {
            Some(Command::All(a)) => a,
            _ => unreachable!("`all` parses to Command::All"),
        }
    }
}

#[derive(Serialize)]
struct GroupSection {
    samples: usize,
    seed: u64,
    symbolic: bool,
    calibration: Calibration,
    reports: Vec<IdentityReport>,
    pass: bool,
}

#[derive(Serialize)]
struct CosetOut {
    representative: String,
    elements: Vec<String>,
}

#[derive(Serialize)]
struct StabilizerOut {
    representative: String,
    v_roots: Vec<String>,
    levi: LeviIntersection,
}

#[derive(Serialize)]
struct CosetSection {
    cosets: Vec<CosetOut>,
    stabilizers: Vec<StabilizerOut>,
    pass: bool,
}

#[derive(Serialize)]
struct LemmaSection {
    nmax: i64,
    nmax_i: i64,
    checks: Vec<LemmaCheck>,
    pass: bool,
}

#[derive(Serialize)]
struct ClosedOut {
    eps: &'static str,
    product_formula: String,
    local_factor: String,
    target: String,
    equal: bool,
    witness: Option<String>,
}

#[derive(Serialize)]
struct ClosedSection {
    entries: Vec<ClosedOut>,
    pass: bool,
}

#[derive(Serialize)]
struct OracleSection {
    config: OracleConfig,
    reports: Vec<ComparisonReport>,
    pass: bool,
}

#[derive(Serialize, Default)]
struct Output {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<GroupSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cosets: Option<CosetSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lemmas: Option<LemmaSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<ClosedSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleSection>,
    pass: bool,
}

struct Printer {
    json: bool,
    verbose: bool,
}

impl Printer {
    fn line(&self, s: impl AsRef<str>) {
        if !self.json {
            println!("{}", s.as_ref());
        }
    }

    fn detail(&self, ok: bool, s: impl AsRef<str>) {
        if self.verbose || !ok {
            self.line(s);
        }
    }

    fn section(&self, title: &str, pass: bool, start: Instant) {
        self.line(format!(
            "== {title}: {} ({:.2} s)\n",
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        ));
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok  "
    } else {
        "FAIL"
    }
}

fn verify_group(args: &GroupArgs, p: &Printer) -> Result<GroupSection, String> {
    let start = Instant::now();
    let model = AdjointModel::shared().map_err(|e| e.to_string())?;
    let cfg = AuditConfig { samples: args.samples as usize, seed: args.group_seed, symbolic: !args.no_symbolic };
    let reports = run_audit(model, &cfg);
    p.line(format!("group identities: {} samples each, calibration signs {:?}", cfg.samples, model.calibration().signs));
    let mut group = None;
    for r in &reports {
        if group != Some(r.group) {
            group = Some(r.group);
            p.line(format!("  [{}]", r.group.label()));
        }
        let sym = match r.symbolic {
            Some(true) => "symbolic ok",
            Some(false) => "symbolic FAIL",
            None => "samples only",
        };
        let tag = if r.expectation == Expectation::Fails { " (expected to fail as stated)" } else { "" };
        p.line(format!("  {} {:<26} {:<13} {}{tag}", mark(r.pass), r.name, sym, r.statement));
        if let Some(e) = &r.error {
            p.line(format!("       error: {e}"));
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    p.section("verify-group", pass, start);
    Ok(GroupSection {
        samples: cfg.samples,
        seed: cfg.seed,
        symbolic: cfg.symbolic,
        calibration: model.calibration().clone(),
        reports,
        pass,
    })
}

fn unfold_cosets(p: &Printer) -> Result<CosetSection, String> {
    let start = Instant::now();
    let cosets = double_coset_reps(&parabolic_subgroup(Simple::Alpha), &parabolic_subgroup(Simple::Beta));
    let reps = unfolding_representatives();
    p.line(format!("{{1, s_a}} \\ W / {{1, s_b}}: {} double cosets", cosets.len()));
    let mut out = Vec::new();
    for c in &cosets {
        let elements: Vec<String> = c.elements.iter().map(|e| e.word_string()).collect();
        p.line(format!("  {:<16} {} elements: {}", c.representative.word_string(), elements.len(), elements.join(", ")));
        out.push(CosetOut { representative: c.representative.word_string(), elements });
    }
    let mut stabilizers = Vec::new();
    for r in &reps {
        let d = stabilizer_data(r).map_err(|e| e.to_string())?;
        let roots: Vec<String> = d.v_roots.iter().map(|g| g.to_string()).collect();
        p.line(format!("  V^{} = {{{}}}, Levi meets the conjugate of P' in {:?}", r.word_string(), roots.join(", "),
            d.levi));
        stabilizers.push(StabilizerOut { representative: r.word_string(), v_roots: roots, levi: d.levi });
    }
    let found: Vec<_> = cosets.iter().map(|c| c.representative.clone()).collect();
    let gamma = stabilizer_data(&reps[2]).map_err(|e| e.to_string())?;
    let pass = found == reps.to_vec()
        && gamma.v_roots == [g2_unramified::rootsys::ALPHA_BETA]
        && gamma.levi == LeviIntersection::Borel;
    p.section("unfold-cosets", pass, start);
    Ok(CosetSection { cosets: out, stabilizers, pass })
}

fn verify_lemmas(args: &LemmaArgs, p: &Printer) -> LemmaSection {
    let start = Instant::now();
    let checks = lemma_suite(args.nmax_i, args.nmax);
    let mut names: Vec<&str> = Vec::new();
    for c in &checks {
        if !names.contains(&c.name) {
            names.push(c.name);
        }
    }
    for name in names {
        let rows: Vec<&LemmaCheck> = checks.iter().filter(|c| c.name == name).collect();
        let ok = rows.iter().all(|c| c.equal);
        let top = rows.iter().map(|c| c.n).max().unwrap_or(0);
        p.line(format!("  {} {:<30} n = 0..={top}", mark(ok), name));
        for c in rows.iter().filter(|c| !c.equal) {
            p.line(format!("       n = {}: {}", c.n, c.error.as_deref().unwrap_or("sides differ")));
        }
    }
    let pass = checks.iter().all(|c| c.equal);
    p.section("verify-lemmas", pass, start);
    LemmaSection { nmax: args.nmax, nmax_i: args.nmax_i, checks, pass }
}

fn closed_form(args: &ClosedArgs, p: &Printer) -> Result<ClosedSection, String> {
    let start = Instant::now();
    let choices = match args.eps {
        Some(e) => vec![e],
        None => vec![EpsChoice::Minus, EpsChoice::Plus, EpsChoice::Symbolic],
    };
    let mut entries = Vec::new();
    for eps in choices {
        let report = verify_main_identity(eps).map_err(|e| e.to_string())?;
        let product = product_formula_text(eps);
        p.line(format!("eps = {}", eps.label()));
        p.line(format!("  product formula (X = q^-(3s-3/2), H = q^1/2):\n    {product}"));
        p.detail(report.equal, format!("  local factor:\n    {}", report.computed));
        p.detail(report.equal, format!("  L-factor ratio:\n    {}", report.target));
        p.line(format!("  {} local factor = L-factor ratio (exact)", mark(report.equal)));
        if let Some(w) = &report.witness {
            p.line(format!("  residue: {w}"));
        }
        entries.push(ClosedOut {
            eps: eps.label(),
            product_formula: product,
            local_factor: report.computed,
            target: report.target,
            equal: report.equal,
            witness: report.witness,
        });
    }
    let pass = entries.iter().all(|e| e.equal);
    p.section("closed-form", pass, start);
    Ok(ClosedSection { entries, pass })
}

fn oracle(args: &OracleArgs, p: &Printer) -> Result<OracleSection, String> {
    let start = Instant::now();
    let cfg = OracleConfig {
        q: args.q,
        s: args.s,
        points: args.points as usize,
        nmax: args.nmax as usize,
        tol: args.tol,
        seed: args.seed,
    };
    if !(cfg.q > 1.0) {
        return Err(format!("q must exceed 1, got {}", cfg.q));
    }
    let reports = run_suite(&suite_points(&cfg), &cfg).map_err(|e| e.to_string())?;
    p.line(format!(
        "oracle: q = {}, s = {}, {} points, {} terms, tolerance {:e}",
        cfg.q, cfg.s, cfg.points, cfg.nmax, cfg.tol
    ));
    let mut labels: Vec<&str> = Vec::new();
    for r in &reports {
        if !labels.contains(&r.label.as_str()) {
            labels.push(&r.label);
        }
    }
    for label in labels {
        let rows: Vec<&ComparisonReport> = reports.iter().filter(|r| r.label == label).collect();
        let ok = rows.iter().all(|r| r.pass);
        let worst = rows.iter().map(|r| r.relative_error).fold(0.0f64, f64::max);
        let tail = rows.iter().map(|r| r.tail_bound).fold(0.0f64, f64::max);
        p.line(format!("  {} {:<38} max rel err {worst:.2e}, max tail bound {tail:.2e}", mark(ok), label));
        for r in &rows {
            let line = format!(
                "       seed {} eps {:+}: {:?}, rel err {:.2e}, tail {:.2e}{}",
                r.seed,
                r.eps,
                r.verdict,
                r.relative_error,
                r.tail_bound,
                r.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default()
            );
            p.detail(r.verdict == Verdict::Pass, line);
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    p.section("oracle", pass, start);
    Ok(OracleSection { config: cfg, reports, pass })
}

fn run(cli: &Cli) -> Result<Output, String> {
    let p = Printer { json: cli.json, verbose: cli.verbose };
    let default_all = Command::All(AllArgs::default());
    let command = cli.command.as_ref().unwrap_or(&default_all);
    let mut out = Output::default();
    match command {
        Command::VerifyGroup(a) => {
            out.command = "verify-group";
            out.group = Some(verify_group(a, &p)?);
        }
        Command::UnfoldCosets => {
            out.command = "unfold-cosets";
            out.cosets = Some(unfold_cosets(&p)?);
        }
        Command::VerifyLemmas(a) => {
            out.command = "verify-lemmas";
            out.lemmas = Some(verify_lemmas(a, &p));
        }
        Command::ClosedForm(a) => {
            out.command = "closed-form";
            out.closed_form = Some(closed_form(a, &p)?);
        }
        Command::Oracle(a) => {
            out.command = "oracle";
            out.oracle = Some(oracle(a, &p)?);
        }
        Command::All(a) => {
            out.command = "all";
            out.group = Some(verify_group(&a.group, &p)?);
            out.cosets = Some(unfold_cosets(&p)?);
            out.lemmas = Some(verify_lemmas(&LemmaArgs { nmax: 6, nmax_i: 8 }, &p));
            out.closed_form = Some(closed_form(&ClosedArgs { eps: None }, &p)?);
            out.oracle = Some(oracle(&a.oracle, &p)?);
        }
    }
    out.pass = [
        out.group.as_ref().map(|s| s.pass),
        out.cosets.as_ref().map(|s| s.pass),
        out.lemmas.as_ref().map(|s| s.pass),
        out.closed_form.as_ref().map(|s| s.pass),
        out.oracle.as_ref().map(|s| s.pass),
    ]
    .into_iter()
    .flatten()
    .all(|x| x);
    p.line(if out.pass { "all checks passed" } else { "some checks FAILED" });
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                match serde_json::to_string_pretty(&out) {
                    Ok(s) => println!("{s}"),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(1);
                    }
                }
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
