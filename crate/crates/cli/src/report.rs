//! Machine-readable output documents: score reports, audit reports, search
//! results, and structured errors.

use indirank::axioms::{
    BalanceVerdict, ConfrontationVerdict, CounterexampleReport, MacrovertexScan, Requirement,
};
use indirank::procedures::{
    CombineMode, Direction, MatrixVariant, MethodParams, ScoreVector,
};
use indirank::Error;
use serde::Serialize;

use crate::document::ProfileDocument;

#[derive(Debug, Serialize)]
pub struct ScoreReport {
    pub method: String,
    pub params: ParamsDocument,
    pub scores: Vec<ScoreEntry>,
    /// Labels sorted by descending score, ties broken by input order.
    pub ranking: Vec<String>,
    /// Tie groups of two or more labels whose scores coincide.
    pub ties: Vec<Vec<String>>,
    pub diagnostics: DiagnosticsDocument,
}

#[derive(Debug, Serialize)]
pub struct ScoreEntry {
    pub alternative: String,
    pub score: f64,
}

#[derive(Debug, Serialize, Default)]
pub struct ParamsDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combine: Option<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct DiagnosticsDocument {
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
}

impl ParamsDocument {
    fn from_params(p: &MethodParams) -> ParamsDocument {
        ParamsDocument {
            epsilon: p.epsilon,
            gamma: p.gamma,
            variant: p.variant.map(|v| match v {
                MatrixVariant::Outcomes => "a",
                MatrixVariant::Margins => "c",
            }),
            direction: p.direction.map(|d| match d {
                Direction::Win => "win",
                Direction::Loss => "loss",
            }),
            combine: p.combine.map(|c| match c {
                CombineMode::Difference => "difference",
                CombineMode::Ratio => "ratio",
            }),
        }
    }
}

/// The score tie tolerance used when grouping the ranking.
const RANKING_TIE_TOL: f64 = 1e-9;

impl ScoreReport {
    pub fn new(labels: &[String], sv: &ScoreVector) -> ScoreReport {
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by(|&a, &b| {
            sv.scores[b]
                .partial_cmp(&sv.scores[a])
                .unwrap()
                .then(a.cmp(&b))
        });
        let mut ties: Vec<Vec<String>> = Vec::new();
        let mut group: Vec<usize> = Vec::new();
        for &idx in &order {
            match group.last() {
                Some(&prev) if (sv.scores[prev] - sv.scores[idx]).abs() <= RANKING_TIE_TOL => {
                    group.push(idx)
                }
                _ => {
                    if group.len() > 1 {
                        ties.push(group.iter().map(|&i| labels[i].clone()).collect());
                    }
                    group = vec![idx];
                }
            }
        }
        if group.len() > 1 {
            ties.push(group.iter().map(|&i| labels[i].clone()).collect());
        }
        ScoreReport {
            method: sv.method.clone(),
            params: ParamsDocument::from_params(&sv.params),
            scores: labels
                .iter()
                .zip(&sv.scores)
                .map(|(l, &s)| ScoreEntry {
                    alternative: l.clone(),
                    score: s,
                })
                .collect(),
            ranking: order.iter().map(|&i| labels[i].clone()).collect(),
            ties,
            diagnostics: DiagnosticsDocument {
                iterations: sv.diagnostics.iterations,
                residual: sv.diagnostics.residual,
                converged: sv.diagnostics.converged,
                lambda: sv.params.lambda,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ViolationDocument {
    pub i: String,
    pub j: String,
    pub requirement: &'static str,
    pub score_i: f64,
    pub score_j: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDocument>,
}

#[derive(Debug, Serialize)]
pub struct WitnessDocument {
    /// Positions into i's outcome multiset left unmatched (surplus wins).
    pub i_unmatched: Vec<usize>,
    /// Positions into j's outcome multiset left unmatched (surplus losses).
    pub j_unmatched: Vec<usize>,
    /// Matched multiset positions (i side, j side).
    pub matching: Vec<(usize, usize)>,
}

pub fn requirement_name(r: Requirement) -> &'static str {
    match r {
        Requirement::None => "none",
        Requirement::Weak => "weak",
        Requirement::Strict => "strict",
    }
}

impl ViolationDocument {
    pub fn new(labels: &[String], scores: &[f64], v: &ConfrontationVerdict) -> ViolationDocument {
        ViolationDocument {
            i: labels[v.pair.0].clone(),
            j: labels[v.pair.1].clone(),
            requirement: requirement_name(v.requirement),
            score_i: scores[v.pair.0],
            score_j: scores[v.pair.1],
            witness: v.witness.as_ref().map(|w| WitnessDocument {
                i_unmatched: w.i_unmatched.clone(),
                j_unmatched: w.j_unmatched.clone(),
                matching: w.matching.clone(),
            }),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AuditReport {
    pub method: String,
    pub scores: ScoreReport,
    pub violations: Vec<ViolationDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting_balance: Option<BalanceDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub macrovertices: Option<MacrovertexDocument>,
}

#[derive(Debug, Serialize)]
pub struct BalanceDocument {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j1: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j2: Option<Vec<String>>,
}

impl BalanceDocument {
    pub fn new(labels: &[String], verdict: &BalanceVerdict) -> BalanceDocument {
        match verdict {
            BalanceVerdict::Pass => BalanceDocument {
                verdict: "pass",
                j1: None,
                j2: None,
            },
            BalanceVerdict::Fail { j1, j2 } => BalanceDocument {
                verdict: "fail",
                j1: Some(j1.iter().map(|&i| labels[i].clone()).collect()),
                j2: Some(j2.iter().map(|&i| labels[i].clone()).collect()),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MacrovertexDocument {
    pub proper: Vec<Vec<String>>,
    pub singleton_count: usize,
    pub full_set_qualifies: bool,
}

impl MacrovertexDocument {
    pub fn new(labels: &[String], scan: &MacrovertexScan) -> MacrovertexDocument {
        MacrovertexDocument {
            proper: scan
                .proper
                .iter()
                .map(|m| m.iter().map(|&i| labels[i].clone()).collect())
                .collect(),
            singleton_count: scan.singleton_count,
            full_set_qualifies: scan.full_set_qualifies,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SearchReport {
    pub method: String,
    pub seed: u64,
    pub budget: u64,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleDocument>,
}

#[derive(Debug, Serialize)]
pub struct CounterexampleDocument {
    pub trial: u64,
    pub profile: ProfileDocument,
    pub violation: ViolationDocument,
    pub scores: ScoreReport,
}

impl CounterexampleDocument {
    pub fn new(report: &CounterexampleReport) -> CounterexampleDocument {
        let labels = report.profile.alternatives();
        CounterexampleDocument {
            trial: report.trial,
            profile: ProfileDocument::from_profile(&report.profile),
            violation: ViolationDocument::new(labels, &report.scores.scores, &report.verdict),
            scores: ScoreReport::new(labels, &report.scores),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

impl ErrorReport {
    pub fn from_error(e: &Error) -> ErrorReport {
        ErrorReport {
            error: ErrorBody {
                code: e.code().to_string(),
                message: e.to_string(),
            },
        }
    }

    pub fn invalid(message: impl Into<String>) -> ErrorReport {
        ErrorReport {
            error: ErrorBody {
                code: "INVALID_INPUT".to_string(),
                message: message.into(),
            },
        }
    }
}
