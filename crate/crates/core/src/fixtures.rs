//! Canned profiles with machine-checked constraint blocks. Every fixture is
//! re-validated on load; a failing constraint is a bug, not a warning.

use crate::axioms::{self, OutcomeEntry, Requirement};
use crate::error::{Error, Result};
use crate::procedures::{self, Direction};
use crate::profile::{Outcome, Profile};

/// A named canned input: either a profile or a raw confrontation scenario.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    /// What the fixture encodes and which constraints pin it down.
    pub note: &'static str,
    pub profile: Option<Profile>,
    pub scenario: Option<ConfrontationScenario>,
}

/// Multiset-level confrontation input: outcome values paired with the
/// presumed scores of the opponents they were earned against.
#[derive(Debug, Clone)]
pub struct ConfrontationScenario {
    pub u_i: Vec<OutcomeEntry>,
    pub u_j: Vec<OutcomeEntry>,
}

pub const FIXTURE_NAMES: [&str; 4] = ["fig1", "fig2_scenario", "prop2", "prop10"];

/// Loads a fixture by name and runs its constraint checks.
pub fn fixture(name: &str) -> Result<Fixture> {
    match name {
        "fig1" => Ok(fig1()),
        "fig2_scenario" => Ok(fig2_scenario()),
        "prop2" => Ok(prop2()),
        "prop10" => Ok(prop10()),
        other => Err(Error::UnknownFixture {
            name: other.to_string(),
        }),
    }
}

/// Nine judges over four alternatives: three report "1 beats 2", three a
/// draw between 1 and 3, three a draw between 2 and 4. The pair (3, 4) is
/// never compared directly, yet 3's opponent outranks 4's.
fn fig1() -> Fixture {
    let mut judges = Vec::new();
    for _ in 0..3 {
        judges.push(vec![("1".to_string(), "2".to_string(), Outcome::AWins)]);
    }
    for _ in 0..3 {
        judges.push(vec![("1".to_string(), "3".to_string(), Outcome::Draw)]);
    }
    for _ in 0..3 {
        judges.push(vec![("2".to_string(), "4".to_string(), Outcome::Draw)]);
    }
    let profile = Profile::new(
        vec!["1".into(), "2".into(), "3".into(), "4".into()],
        judges,
    )
    .expect("fig1 is valid");
    let c = profile.cumulative();
    assert_eq!(profile.n(), 4, "fig1: four alternatives");
    assert_eq!(profile.m(), 9, "fig1: nine judges");
    assert_eq!(c.outcomes().get(0, 1), 3.0, "fig1: three wins of 1 over 2");
    assert_eq!(c.outcomes().get(0, 2), 1.5, "fig1: three draws of 1 and 3");
    assert_eq!(c.outcomes().get(1, 3), 1.5, "fig1: three draws of 2 and 4");
    assert_eq!(c.count(2, 3), 0, "fig1: 3 and 4 never compared");
    Fixture {
        name: "fig1",
        note: "Nine judges, four alternatives: 3x '1 beats 2', 3x '1 draws 3', 3x '2 draws 4'. \
               Divisible; the uncompared pair (3, 4) separates procedures that track opponent \
               strength from those that do not.",
        profile: Some(profile),
        scenario: None,
    }
}

/// A raw confrontation bundle: i lost to a, beat c and e, and holds three
/// extra wins; j lost to b, beat d, drew f, and holds two extra losses.
/// With the preconceptions s_a > s_b, s_c > s_d, s_e > s_f the verdict must
/// be strict.
fn fig2_scenario() -> Fixture {
    let (s_a, s_b) = (6.0, 5.0);
    let (s_c, s_d) = (4.0, 3.0);
    let (s_e, s_f) = (2.0, 1.0);
    let filler = 0.0; // opponents of the surplus outcomes never matter
    let u_i = vec![
        (0.0, s_a),
        (1.0, s_c),
        (1.0, s_e),
        (1.0, filler),
        (1.0, filler),
        (1.0, filler),
    ];
    let u_j = vec![(0.0, s_b), (1.0, s_d), (0.5, s_f), (0.0, filler), (0.0, filler)];
    let (req, witness) = axioms::confront_multisets(&u_i, &u_j);
    assert_eq!(req, Requirement::Strict, "fig2_scenario: verdict must be strict");
    assert!(witness.is_some(), "fig2_scenario: a witness must be produced");
    Fixture {
        name: "fig2_scenario",
        note: "Multiset-level confrontation: a loss to a stronger opponent, wins over stronger \
               opponents, a win against a draw, three surplus wins and two surplus losses; \
               every clause of the strictness condition fires.",
        profile: None,
        scenario: Some(ConfrontationScenario { u_i, u_j }),
    }
}

/// Five alternatives, one judge per comparison: wins 1>3, 2>4, 3>4 and draws
/// of 5 with everyone. Alternative 5's draws make the profile indivisible;
/// rows 2 and 3 of the cumulative matrix coincide, so eigenvector scores tie
/// 2 and 3 although 3 carries an extra loss (to 1).
fn prop2() -> Fixture {
    let comparisons = [
        ("1", "3", Outcome::AWins),
        ("2", "4", Outcome::AWins),
        ("3", "4", Outcome::AWins),
        ("5", "1", Outcome::Draw),
        ("5", "2", Outcome::Draw),
        ("5", "3", Outcome::Draw),
        ("5", "4", Outcome::Draw),
    ];
    let judges = comparisons
        .iter()
        .map(|(a, b, o)| vec![(a.to_string(), b.to_string(), *o)])
        .collect();
    let profile = Profile::new(
        vec!["1".into(), "2".into(), "3".into(), "4".into(), "5".into()],
        judges,
    )
    .expect("prop2 is valid");
    let c = profile.cumulative();
    assert!(c.is_indivisible(), "prop2: must be indivisible");
    assert_eq!(c.outcomes().get(0, 2), 1.0, "prop2: 1 beat 3");
    assert_eq!(c.outcomes().get(2, 0), 0.0, "prop2: 3 scored nothing against 1");
    // rows of 2 and 3 reduce to s_4 + s_5/2
    for j in 0..5 {
        let expected = match j {
            3 => 1.0,
            4 => 0.5,
            _ => 0.0,
        };
        assert_eq!(c.outcomes().get(1, j), expected, "prop2: row of alternative 2");
        assert_eq!(c.outcomes().get(2, j), expected, "prop2: row of alternative 3");
    }
    Fixture {
        name: "prop2",
        note: "Minimal indivisible digraph whose eigenvector equations for alternatives 2 and 3 \
               coincide (both reduce to s_4 + s_5/2) while 3 holds an extra loss to 1; win-side \
               eigenvector scores must therefore tie a pair the axiom orders strictly.",
        profile: Some(profile),
        scenario: None,
    }
}

/// A profile on which least squares ties an alternative with a strict
/// outcome-superset of another's record. Frozen from the seeded generator
/// stream (seed 42); the violation is re-verified on load.
fn prop10() -> Fixture {
    let profile = prop10_profile();
    let c = profile.cumulative();
    assert!(c.is_indivisible(), "prop10: must be indivisible");
    let sv = procedures::least_squares_scores(&profile).expect("prop10: least squares applies");
    let violations = axioms::scm_audit(&profile, &sv.scores);
    let surplus_win = violations.iter().find(|v| {
        v.requirement == Requirement::Strict
            && v.witness
                .as_ref()
                .map(|w| !w.i_unmatched.is_empty())
                .unwrap_or(false)
    });
    assert!(
        surplus_win.is_some(),
        "prop10: least squares must be caught leveling a pair where the winner holds extra wins"
    );
    // eigenvector scores stay applicable on this fixture
    procedures::wei_scores(&c, Direction::Win).expect("prop10: indivisible, eigenvector applies");
    Fixture {
        name: "prop10",
        note: "Frozen counterexample from the seeded stream: least squares equalizes or inverts \
               a pair although one side's record is a strict superset of the other's (extra \
               wins); indivisible so the eigenvector family applies too.",
        profile: Some(profile),
        scenario: None,
    }
}

/// First hit of the seeded generator stream (seed 42, trial 1008, n 3..6,
/// m 1..3, indivisible only) when filtering for a least-squares violation
/// whose witness carries surplus wins. One judge, five alternatives;
/// alternative 3's record is 4's record plus a win over 2, yet least squares
/// ties them at 0.4.
fn prop10_profile() -> Profile {
    let ballot = vec![
        ("1".to_string(), "2".to_string(), Outcome::Draw),
        ("1".to_string(), "3".to_string(), Outcome::Draw),
        ("1".to_string(), "4".to_string(), Outcome::Draw),
        ("1".to_string(), "5".to_string(), Outcome::Draw),
        ("2".to_string(), "3".to_string(), Outcome::BWins),
        ("2".to_string(), "5".to_string(), Outcome::BWins),
        ("3".to_string(), "4".to_string(), Outcome::Draw),
        ("3".to_string(), "5".to_string(), Outcome::AWins),
        ("4".to_string(), "5".to_string(), Outcome::AWins),
    ];
    Profile::new(
        vec!["1".into(), "2".into(), "3".into(), "4".into(), "5".into()],
        vec![ballot],
    )
    .expect("prop10 is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::procedures::wei_scores;
    use approx::assert_abs_diff_eq;

    #[test]
    fn all_fixtures_load() {
        for name in FIXTURE_NAMES {
            let f = fixture(name).unwrap();
            assert_eq!(f.name, name);
            assert!(!f.note.is_empty());
        }
    }

    #[test]
    fn unknown_fixture_rejected() {
        assert_eq!(fixture("fig9").unwrap_err().code(), "UNKNOWN_FIXTURE");
    }

    #[test]
    fn fig1_cumulative_anchor() {
        let f = fixture("fig1").unwrap();
        let p = f.profile.unwrap();
        assert_eq!(p.n(), 4);
        assert_eq!(p.m(), 9);
        assert_eq!(p.cumulative().outcomes().get(0, 1), 3.0);
    }

    #[test]
    fn prop2_wei_ties_two_and_three() {
        let p = fixture("prop2").unwrap().profile.unwrap();
        let (sv, _) = wei_scores(&p.cumulative(), Direction::Win).unwrap();
        assert_abs_diff_eq!(sv.scores[1], sv.scores[2], epsilon = 1e-9);
        let violations = axioms::scm_audit(&p, &sv.scores);
        assert!(violations.iter().any(|v| v.pair == (1, 2)));
    }

    #[test]
    fn prop10_violation_reverifies() {
        let p = fixture("prop10").unwrap().profile.unwrap();
        let sv = procedures::least_squares_scores(&p).unwrap();
        let violations = axioms::scm_audit(&p, &sv.scores);
        assert!(violations.iter().any(|v| {
            v.requirement == Requirement::Strict
                && v.witness.as_ref().is_some_and(|w| !w.i_unmatched.is_empty())
        }));
    }
}
