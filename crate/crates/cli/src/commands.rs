//! Command implementations. Each returns a process exit code and writes
//! machine-readable JSON: results on stdout (or `--output`), structured
//! errors on stderr.

use std::fs;
use std::path::{Path, PathBuf};

use indirank::axioms::{
    enumerate_macrovertices, scm_audit, scm_violation_search, splitting_balance_check,
    GeneratorConfig, MacrovertexReading, Requirement,
};
use indirank::fixtures;
use indirank::procedures::{
    grs_max_epsilon, least_squares_scores, row_sum_scores, wei_scores, CombineMode, Direction,
    Method, PairEval,
};
use indirank::profile::Profile;
use indirank::Error;

use crate::document::{parse_csv, ProfileDocument};
use crate::report::{
    AuditReport, BalanceDocument, CounterexampleDocument, ErrorReport, MacrovertexDocument,
    ScoreReport, SearchReport, ViolationDocument,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INAPPLICABLE: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;
pub const EXIT_REPRODUCE_FAIL: i32 = 5;

/// Classifies a library error into the exit-code contract: 1 invalid input,
/// 2 method inapplicable, 3 solver failure.
pub fn exit_code_for(e: &Error) -> i32 {
    match e.code() {
        "SELF_COMPARISON" | "DUPLICATE_PAIR" | "UNKNOWN_ALTERNATIVE" | "DUPLICATE_ALTERNATIVE"
        | "EMPTY" | "UNKNOWN_FIXTURE" => EXIT_INVALID,
        "NOT_INDIVISIBLE" | "DISCONNECTED" | "ISOLATED_ALTERNATIVE" | "EPSILON_OUT_OF_RANGE"
        | "DIVIDE_BY_ZERO" | "NOT_A_MACROVERTEX" | "TOO_LARGE" => EXIT_INAPPLICABLE,
        "NO_CONVERGENCE" | "DOMAIN_EXIT" | "SINGULAR" => EXIT_NO_CONVERGENCE,
        _ => EXIT_INVALID,
    }
}

fn emit_error(e: &Error) -> i32 {
    eprintln!(
        "{}",
        serde_json::to_string_pretty(&ErrorReport::from_error(e)).unwrap()
    );
    exit_code_for(e)
}

fn emit_invalid(message: String) -> i32 {
    eprintln!(
        "{}",
        serde_json::to_string_pretty(&ErrorReport::invalid(message)).unwrap()
    );
    EXIT_INVALID
}

fn emit_report<T: serde::Serialize>(report: &T, output: Option<&Path>) -> Result<(), String> {
    let json = serde_json::to_string_pretty(report).expect("reports serialize");
    match output {
        Some(path) => fs::write(path, json + "\n").map_err(|e| format!("{}: {e}", path.display())),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

/// Method-parameter flags shared by `rate`, `audit`, and `search`.
#[derive(Debug, Default, Clone)]
pub struct MethodFlags {
    pub epsilon: Option<f64>,
    pub variant: Option<String>,
    pub direction: Option<String>,
    pub combine: Option<String>,
}

/// Resolves a method name plus flags into a concrete method, rejecting
/// flags the method does not take.
pub fn resolve_method(name: &str, flags: &MethodFlags) -> Result<Method, String> {
    let mut method =
        Method::parse(name).ok_or_else(|| format!("unknown method {name:?}"))?;
    if let Some(direction) = &flags.direction {
        let direction = match direction.as_str() {
            "win" => Direction::Win,
            "loss" => Direction::Loss,
            other => return Err(format!("unknown direction {other:?} (win or loss)")),
        };
        method = match method {
            Method::Wei(_) => Method::Wei(direction),
            Method::Ktt {
                epsilon,
                variant,
                eval: PairEval::Single(_),
            } => Method::Ktt {
                epsilon,
                variant,
                eval: PairEval::Single(direction),
            },
            Method::FairBets(PairEval::Single(_)) => {
                Method::FairBets(PairEval::Single(direction))
            }
            other => return Err(format!("--direction does not apply to {}", other.name())),
        };
    }
    if let Some(combine) = &flags.combine {
        let mode = match combine.as_str() {
            "difference" => CombineMode::Difference,
            "ratio" => CombineMode::Ratio,
            other => {
                return Err(format!(
                    "unknown combine mode {other:?} (difference or ratio)"
                ))
            }
        };
        method = match method {
            Method::Ktt {
                epsilon,
                variant,
                eval: PairEval::Single(Direction::Win),
            } => Method::Ktt {
                epsilon,
                variant,
                eval: PairEval::Combined(mode),
            },
            Method::FairBets(PairEval::Single(Direction::Win)) => {
                Method::FairBets(PairEval::Combined(mode))
            }
            other => {
                return Err(format!(
                    "--combine does not apply to {} (hasse and ramanujacharyulu are the combined eigenvector methods)",
                    other.name()
                ))
            }
        };
    }
    if let Some(variant) = &flags.variant {
        let variant = match variant.as_str() {
            "a" => indirank::procedures::MatrixVariant::Outcomes,
            "c" => indirank::procedures::MatrixVariant::Margins,
            other => return Err(format!("unknown matrix variant {other:?} (a or c)")),
        };
        method = match method {
            Method::Ktt { epsilon, eval, .. } => Method::Ktt {
                epsilon,
                variant,
                eval,
            },
            other => return Err(format!("--variant does not apply to {}", other.name())),
        };
    }
    if let Some(eps) = flags.epsilon {
        method = match method {
            Method::Ktt { variant, eval, .. } => Method::Ktt {
                epsilon: Some(eps),
                variant,
                eval,
            },
            Method::Grs { .. } => Method::Grs { epsilon: Some(eps) },
            other => return Err(format!("--epsilon does not apply to {}", other.name())),
        };
    }
    Ok(method)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Auto,
    Json,
    Csv,
}

impl InputFormat {
    pub fn parse(s: Option<&str>) -> Result<InputFormat, String> {
        match s {
            None | Some("auto") => Ok(InputFormat::Auto),
            Some("json") => Ok(InputFormat::Json),
            Some("csv") => Ok(InputFormat::Csv),
            Some(other) => Err(format!("unknown format {other:?} (auto, json, or csv)")),
        }
    }
}

/// Reads and validates a profile document from disk.
pub fn load_profile(path: &Path, format: InputFormat) -> Result<(Profile, ProfileDocument), i32> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => return Err(emit_invalid(format!("{}: {e}", path.display()))),
    };
    let is_csv = match format {
        InputFormat::Csv => true,
        InputFormat::Json => false,
        InputFormat::Auto => path.extension().is_some_and(|ext| ext == "csv"),
    };
    let document = if is_csv {
        match parse_csv(&text) {
            Ok(doc) => doc,
            Err(e) => return Err(emit_invalid(e)),
        }
    } else {
        match serde_json::from_str::<ProfileDocument>(&text) {
            Ok(doc) => doc,
            Err(e) => return Err(emit_invalid(format!("{}: {e}", path.display()))),
        }
    };
    match document.to_profile() {
        Ok(profile) => Ok((profile, document)),
        Err(e) => Err(emit_error(&e)),
    }
}

pub struct RateArgs {
    pub input: PathBuf,
    pub format: InputFormat,
    pub method: String,
    pub flags: MethodFlags,
    pub output: Option<PathBuf>,
}

pub fn cmd_rate(args: &RateArgs) -> i32 {
    let method = match resolve_method(&args.method, &args.flags) {
        Ok(m) => m,
        Err(e) => return emit_invalid(e),
    };
    let (profile, _) = match load_profile(&args.input, args.format) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let sv = match method.scores(&profile) {
        Ok(sv) => sv,
        Err(e) => return emit_error(&e),
    };
    let report = ScoreReport::new(profile.alternatives(), &sv);
    match emit_report(&report, args.output.as_deref()) {
        Ok(()) => EXIT_OK,
        Err(e) => emit_invalid(e),
    }
}

pub struct AuditArgs {
    pub input: PathBuf,
    pub format: InputFormat,
    pub method: String,
    pub flags: MethodFlags,
    pub splitting_balance: bool,
    pub macrovertex: bool,
    pub output: Option<PathBuf>,
}

pub fn cmd_audit(args: &AuditArgs) -> i32 {
    let method = match resolve_method(&args.method, &args.flags) {
        Ok(m) => m,
        Err(e) => return emit_invalid(e),
    };
    let (profile, _) = match load_profile(&args.input, args.format) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let sv = match method.scores(&profile) {
        Ok(sv) => sv,
        Err(e) => return emit_error(&e),
    };
    let labels = profile.alternatives();
    let violations = scm_audit(&profile, &sv.scores);
    let balance = if args.splitting_balance {
        match splitting_balance_check(&profile, &sv.scores) {
            Ok(verdict) => Some(verdict),
            Err(e) => return emit_error(&e),
        }
    } else {
        None
    };
    let macrovertices = if args.macrovertex {
        match enumerate_macrovertices(&profile, MacrovertexReading::default()) {
            Ok(scan) => Some(scan),
            Err(e) => return emit_error(&e),
        }
    } else {
        None
    };
    let any_violation = !violations.is_empty()
        || matches!(
            balance,
            Some(indirank::axioms::BalanceVerdict::Fail { .. })
        );
    let report = AuditReport {
        method: sv.method.clone(),
        violations: violations
            .iter()
            .map(|v| ViolationDocument::new(labels, &sv.scores, v))
            .collect(),
        splitting_balance: balance.as_ref().map(|b| BalanceDocument::new(labels, b)),
        macrovertices: macrovertices
            .as_ref()
            .map(|scan| MacrovertexDocument::new(labels, scan)),
        scores: ScoreReport::new(labels, &sv),
    };
    match emit_report(&report, args.output.as_deref()) {
        Ok(()) => {
            if any_violation {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            }
        }
        Err(e) => emit_invalid(e),
    }
}

pub struct SearchArgs {
    pub method: String,
    pub flags: MethodFlags,
    pub seed: u64,
    pub budget: u64,
    pub n_min: usize,
    pub n_max: usize,
    pub m_min: usize,
    pub m_max: usize,
    pub indivisible_only: bool,
    pub draw_prob: f64,
    pub output: Option<PathBuf>,
}

pub fn cmd_search(args: &SearchArgs) -> i32 {
    let method = match resolve_method(&args.method, &args.flags) {
        Ok(m) => m,
        Err(e) => return emit_invalid(e),
    };
    if args.n_min < 1 || args.n_min > args.n_max || args.m_min < 1 || args.m_min > args.m_max {
        return emit_invalid("empty n or m range".to_string());
    }
    if !(0.0..=1.0).contains(&args.draw_prob) {
        return emit_invalid("draw probability must lie in [0, 1]".to_string());
    }
    let config = GeneratorConfig {
        n_range: (args.n_min, args.n_max),
        m_range: (args.m_min, args.m_max),
        draw_probability: args.draw_prob,
        indivisible_only: args.indivisible_only,
        ..GeneratorConfig::default()
    };
    let result = scm_violation_search(&method, &config, args.seed, args.budget);
    let report = SearchReport {
        method: method.name(),
        seed: args.seed,
        budget: args.budget,
        found: result.is_some(),
        counterexample: result.as_ref().map(CounterexampleDocument::new),
    };
    if result.is_none() {
        eprintln!("no violation in {} trials", args.budget);
    }
    match emit_report(&report, args.output.as_deref()) {
        Ok(()) => EXIT_OK,
        Err(e) => emit_invalid(e),
    }
}

/// One reproduction step: named check, pass/fail, detail line.
struct Reproduction {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn reproduce_fig1() -> Reproduction {
    let profile = fixtures::fixture("fig1").unwrap().profile.unwrap();
    let row_sum = row_sum_scores(&profile);
    let mut passed = row_sum.scores == vec![4.5, 1.5, 1.5, 1.5];
    let violations = scm_audit(&profile, &row_sum.scores);
    let flags_34 = violations
        .iter()
        .any(|v| v.pair == (2, 3) && v.requirement == Requirement::Strict);
    passed &= flags_34;
    let grs = indirank::procedures::grs_scores(&profile, None);
    let grs_clean = match &grs {
        Ok(sv) => scm_audit(&profile, &sv.scores).is_empty(),
        Err(_) => false,
    };
    passed &= grs_clean;
    Reproduction {
        name: "fig1",
        passed,
        detail: format!(
            "row-sum scores {:?}, audit flags (3,4) strict: {}, grs(eps=1/{}) audit clean: {}",
            row_sum.scores,
            flags_34,
            (1.0 / grs_max_epsilon(profile.n(), profile.m())).round(),
            grs_clean
        ),
    }
}

fn reproduce_prop2() -> Reproduction {
    let profile = fixtures::fixture("prop2").unwrap().profile.unwrap();
    let (sv, _) = match wei_scores(&profile.cumulative(), Direction::Win) {
        Ok(result) => result,
        Err(e) => {
            return Reproduction {
                name: "prop2",
                passed: false,
                detail: format!("eigenvector scores failed: {e}"),
            }
        }
    };
    let tied = (sv.scores[1] - sv.scores[2]).abs() <= 1e-9;
    let flagged = scm_audit(&profile, &sv.scores)
        .iter()
        .any(|v| v.pair == (1, 2));
    Reproduction {
        name: "prop2",
        passed: tied && flagged,
        detail: format!(
            "|s_2 - s_3| = {:.3e}, audit flags (2,3): {}",
            (sv.scores[1] - sv.scores[2]).abs(),
            flagged
        ),
    }
}

fn reproduce_prop10() -> Reproduction {
    let profile = fixtures::fixture("prop10").unwrap().profile.unwrap();
    match least_squares_scores(&profile) {
        Ok(sv) => {
            let violations = scm_audit(&profile, &sv.scores);
            let surplus_win = violations.iter().any(|v| {
                v.requirement == Requirement::Strict
                    && v.witness
                        .as_ref()
                        .is_some_and(|w| !w.i_unmatched.is_empty())
            });
            Reproduction {
                name: "prop10",
                passed: surplus_win,
                detail: format!(
                    "least-squares audit violations: {}, surplus-win witness: {}",
                    violations.len(),
                    surplus_win
                ),
            }
        }
        Err(e) => Reproduction {
            name: "prop10",
            passed: false,
            detail: format!("least squares failed: {e}"),
        },
    }
}

pub fn cmd_reproduce(target: &str) -> i32 {
    let runs: Vec<Reproduction> = match target {
        "fig1" => vec![reproduce_fig1()],
        "prop2" => vec![reproduce_prop2()],
        "prop10" => vec![reproduce_prop10()],
        "all" => vec![reproduce_fig1(), reproduce_prop2(), reproduce_prop10()],
        other => {
            return emit_invalid(format!(
                "unknown reproduction target {other:?} (fig1, prop2, prop10, or all)"
            ))
        }
    };
    let mut all_passed = true;
    for run in &runs {
        let status = if run.passed { "PASS" } else { "FAIL" };
        println!("reproduce {}: {} - {}", run.name, status, run.detail);
        all_passed &= run.passed;
    }
    if all_passed {
        EXIT_OK
    } else {
        EXIT_REPRODUCE_FAIL
    }
}

pub fn cmd_fixture(name: &str, output: Option<&Path>) -> i32 {
    let fixture = match fixtures::fixture(name) {
        Ok(f) => f,
        Err(e) => return emit_error(&e),
    };
    emit_fixture(&fixture, output)
}

fn emit_fixture(fixture: &fixtures::Fixture, output: Option<&Path>) -> i32 {
    if let Some(profile) = &fixture.profile {
        let doc = ProfileDocument::from_profile(profile);
        match emit_report(&doc, output) {
            Ok(()) => EXIT_OK,
            Err(e) => emit_invalid(e),
        }
    } else if let Some(scenario) = &fixture.scenario {
        #[derive(serde::Serialize)]
        struct ScenarioDocument<'a> {
            note: &'a str,
            u_i: &'a [(f64, f64)],
            u_j: &'a [(f64, f64)],
        }
        let doc = ScenarioDocument {
            note: fixture.note,
            u_i: &scenario.u_i,
            u_j: &scenario.u_j,
        };
        match emit_report(&doc, output) {
            Ok(()) => EXIT_OK,
            Err(e) => emit_invalid(e),
        }
    } else {
        emit_invalid(format!("fixture {:?} has nothing to export", fixture.name))
    }
}
