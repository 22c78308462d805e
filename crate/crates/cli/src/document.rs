//! On-disk profile representation: a JSON document of per-judge comparison
//! lists, plus a CSV adapter (one comparison per row) that normalizes
//! spreadsheet exports into the same document.

use indirank::profile::{Outcome, Profile};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ProfileDocument {
    pub alternatives: Vec<String>,
    pub judges: Vec<JudgeDocument>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JudgeDocument {
    pub comparisons: Vec<ComparisonDocument>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ComparisonDocument {
    pub a: String,
    pub b: String,
    pub outcome: OutcomeDocument,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeDocument {
    AWins,
    BWins,
    Draw,
}

impl From<OutcomeDocument> for Outcome {
    fn from(o: OutcomeDocument) -> Outcome {
        match o {
            OutcomeDocument::AWins => Outcome::AWins,
            OutcomeDocument::BWins => Outcome::BWins,
            OutcomeDocument::Draw => Outcome::Draw,
        }
    }
}

impl From<Outcome> for OutcomeDocument {
    fn from(o: Outcome) -> OutcomeDocument {
        match o {
            Outcome::AWins => OutcomeDocument::AWins,
            Outcome::BWins => OutcomeDocument::BWins,
            Outcome::Draw => OutcomeDocument::Draw,
        }
    }
}

impl ProfileDocument {
    pub fn to_profile(&self) -> indirank::Result<Profile> {
        let judges = self
            .judges
            .iter()
            .map(|j| {
                j.comparisons
                    .iter()
                    .map(|c| (c.a.clone(), c.b.clone(), c.outcome.into()))
                    .collect()
            })
            .collect();
        Profile::new(self.alternatives.clone(), judges)
    }

    pub fn from_profile(p: &Profile) -> ProfileDocument {
        ProfileDocument {
            alternatives: p.alternatives().to_vec(),
            judges: p
                .judges()
                .iter()
                .map(|ballot| JudgeDocument {
                    comparisons: ballot
                        .comparisons
                        .iter()
                        .map(|c| ComparisonDocument {
                            a: p.label(c.a).to_string(),
                            b: p.label(c.b).to_string(),
                            outcome: c.outcome.into(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Parses `judge,a,b,outcome` rows into a document. Alternatives appear in
/// first-occurrence order; ballots are grouped by judge identifier, also in
/// first-occurrence order. Blank lines, `#` comments, and a literal header
/// row are skipped.
pub fn parse_csv(text: &str) -> Result<ProfileDocument, String> {
    let mut alternatives: Vec<String> = Vec::new();
    let mut judge_ids: Vec<String> = Vec::new();
    let mut ballots: Vec<Vec<ComparisonDocument>> = Vec::new();
    let register = |alternatives: &mut Vec<String>, label: &str| {
        if !alternatives.iter().any(|l| l == label) {
            alternatives.push(label.to_string());
        }
    };
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields == ["judge", "a", "b", "outcome"] {
            continue;
        }
        if fields.len() != 4 {
            return Err(format!(
                "line {}: expected 4 fields (judge,a,b,outcome), found {}",
                line_no + 1,
                fields.len()
            ));
        }
        let outcome = match fields[3] {
            "a_wins" => OutcomeDocument::AWins,
            "b_wins" => OutcomeDocument::BWins,
            "draw" => OutcomeDocument::Draw,
            other => {
                return Err(format!(
                    "line {}: unknown outcome {:?} (expected a_wins, b_wins, or draw)",
                    line_no + 1,
                    other
                ))
            }
        };
        register(&mut alternatives, fields[1]);
        register(&mut alternatives, fields[2]);
        let judge = fields[0].to_string();
        let slot = match judge_ids.iter().position(|j| *j == judge) {
            Some(pos) => pos,
            None => {
                judge_ids.push(judge);
                ballots.push(Vec::new());
                ballots.len() - 1
            }
        };
        ballots[slot].push(ComparisonDocument {
            a: fields[1].to_string(),
            b: fields[2].to_string(),
            outcome,
        });
    }
    Ok(ProfileDocument {
        alternatives,
        judges: ballots
            .into_iter()
            .map(|comparisons| JudgeDocument { comparisons })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_round_trips_through_profile() {
        let doc = ProfileDocument {
            alternatives: vec!["x".into(), "y".into(), "z".into()],
            judges: vec![
                JudgeDocument {
                    comparisons: vec![
                        ComparisonDocument {
                            a: "x".into(),
                            b: "y".into(),
                            outcome: OutcomeDocument::AWins,
                        },
                        ComparisonDocument {
                            a: "z".into(),
                            b: "x".into(),
                            outcome: OutcomeDocument::Draw,
                        },
                    ],
                },
                JudgeDocument { comparisons: vec![] },
            ],
        };
        let profile = doc.to_profile().unwrap();
        assert_eq!(ProfileDocument::from_profile(&profile), doc);
    }

    #[test]
    fn csv_adapter_groups_by_judge() {
        let csv = "judge,a,b,outcome\n# comment\nj1,x,y,a_wins\nj2,x,y,draw\nj1,y,z,b_wins\n";
        let doc = parse_csv(csv).unwrap();
        assert_eq!(doc.alternatives, vec!["x", "y", "z"]);
        assert_eq!(doc.judges.len(), 2);
        assert_eq!(doc.judges[0].comparisons.len(), 2);
        assert_eq!(doc.judges[1].comparisons.len(), 1);
        assert_eq!(doc.judges[0].comparisons[1].outcome, OutcomeDocument::BWins);
    }

    #[test]
    fn csv_adapter_rejects_malformed_rows() {
        assert!(parse_csv("j1,x,y").is_err());
        assert!(parse_csv("j1,x,y,maybe").is_err());
    }
}
