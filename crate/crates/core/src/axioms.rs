//! Executable axiom checks: self-consistent monotonicity as a decision
//! procedure over outcome multisets (confrontation), the all-pairs audit, a
//! seeded counterexample search, and the macrovertex-independence and
//! splitting-balance conditions.

use crate::error::{Error, Result};
use crate::procedures::{Method, ScoreVector};
use crate::profile::{Comparison, Outcome, Profile};

/// Scores closer than this are treated as tied, both when matching opponent
/// scores and when judging whether a demanded inequality holds. Iterative
/// solvers produce near-ties; exact comparison would manufacture violations.
pub const SCORE_TIE_TOL: f64 = 1e-9;

/// Tolerance for the macrovertex independence check.
pub const INDEPENDENCE_TOL: f64 = 1e-7;

/// Alternatives above this count are rejected by the exhaustive subset scans.
pub const EXHAUSTIVE_SCAN_LIMIT: usize = 20;

/// What a confrontation demands of the pair's scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Requirement {
    /// No witness: the axiom is silent on this ordered pair.
    None,
    /// A witness exists: `s_i >= s_j` demanded.
    Weak,
    /// A witness with surplus wins, surplus losses, or a strictly dominating
    /// matched pair: `s_i > s_j` demanded.
    Strict,
}

/// A split-and-matching certificate. Indices refer to positions in the
/// outcome multisets of the confronted pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Unmatched elements of the dominating side; each has outcome value 1.
    pub i_unmatched: Vec<usize>,
    /// Unmatched elements of the dominated side; each has outcome value 0.
    pub j_unmatched: Vec<usize>,
    /// The one-to-one correspondence over the remaining elements.
    pub matching: Vec<(usize, usize)>,
}

/// Result of confronting one ordered pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfrontationVerdict {
    pub pair: (usize, usize),
    pub requirement: Requirement,
    pub witness: Option<Witness>,
    pub satisfied: bool,
}

/// One multiset element as the matcher sees it: outcome value and the score
/// of the opponent it was earned against.
pub type OutcomeEntry = (f64, f64);

fn dominates(u: OutcomeEntry, v: OutcomeEntry) -> bool {
    u.0 >= v.0 && u.1 >= v.1 - SCORE_TIE_TOL
}

fn dominates_strictly(u: OutcomeEntry, v: OutcomeEntry) -> bool {
    dominates(u, v) && (u.0 > v.0 || u.1 > v.1 + SCORE_TIE_TOL)
}

/// Bipartite matcher with required-vertex coverage. Left vertices with
/// outcome value below 1 and right vertices with value above 0 must be
/// matched; everything else may stay unmatched (and lands in the witness's
/// unmatched sets).
struct Matcher<'a> {
    left: &'a [OutcomeEntry],
    right: &'a [OutcomeEntry],
    banned_left: Option<usize>,
    banned_right: Option<usize>,
    // a forced pair is immovable: never stolen, never dropped
    pinned_left: Option<usize>,
    pinned_right: Option<usize>,
    match_of_left: Vec<Option<usize>>,
    match_of_right: Vec<Option<usize>>,
}

impl<'a> Matcher<'a> {
    fn new(left: &'a [OutcomeEntry], right: &'a [OutcomeEntry]) -> Matcher<'a> {
        Matcher {
            left,
            right,
            banned_left: None,
            banned_right: None,
            pinned_left: None,
            pinned_right: None,
            match_of_left: vec![None; left.len()],
            match_of_right: vec![None; right.len()],
        }
    }

    fn ban_left(mut self, u: usize) -> Self {
        self.banned_left = Some(u);
        self
    }

    fn ban_right(mut self, v: usize) -> Self {
        self.banned_right = Some(v);
        self
    }

    fn force(mut self, u: usize, v: usize) -> Self {
        self.match_of_left[u] = Some(v);
        self.match_of_right[v] = Some(u);
        self.pinned_left = Some(u);
        self.pinned_right = Some(v);
        self
    }

    fn usable_left(&self, u: usize) -> bool {
        self.banned_left != Some(u) && self.pinned_left != Some(u)
    }

    fn usable_right(&self, v: usize) -> bool {
        self.banned_right != Some(v) && self.pinned_right != Some(v)
    }

    /// Alternating search for a partner of left vertex `u`. A path may end
    /// at an unmatched right vertex, at a droppable (non-required) matched
    /// left vertex, or continue by re-augmenting a required one.
    fn augment_from_left(&mut self, u: usize, visited: &mut [bool]) -> bool {
        for v in 0..self.right.len() {
            if visited[v] || !self.usable_right(v) || !dominates(self.left[u], self.right[v]) {
                continue;
            }
            visited[v] = true;
            let take = match self.match_of_right[v] {
                None => true,
                // a matched left vertex with outcome value 1 may simply be
                // unmatched: it moves to the surplus-win set
                Some(u2) => self.left[u2].0 >= 1.0 || self.augment_from_left(u2, visited),
            };
            if take {
                if let Some(u2) = self.match_of_right[v] {
                    if self.match_of_left[u2] == Some(v) {
                        self.match_of_left[u2] = None;
                    }
                }
                self.match_of_left[u] = Some(v);
                self.match_of_right[v] = Some(u);
                return true;
            }
        }
        false
    }

    /// Mirror image of `augment_from_left`: a path may end at an unmatched
    /// left vertex or drop a non-required (value 0) matched right vertex.
    fn augment_from_right(&mut self, v: usize, visited: &mut [bool]) -> bool {
        for u in 0..self.left.len() {
            if visited[u] || !self.usable_left(u) || !dominates(self.left[u], self.right[v]) {
                continue;
            }
            visited[u] = true;
            let take = match self.match_of_left[u] {
                None => true,
                // a matched right vertex with outcome value 0 may be
                // unmatched: it moves to the surplus-loss set
                Some(v2) => self.right[v2].0 <= 0.0 || self.augment_from_right(v2, visited),
            };
            if take {
                if let Some(v2) = self.match_of_left[u] {
                    if self.match_of_right[v2] == Some(u) {
                        self.match_of_right[v2] = None;
                    }
                }
                self.match_of_left[u] = Some(v);
                self.match_of_right[v] = Some(u);
                return true;
            }
        }
        false
    }

    /// Finds a matching covering all required vertices on both sides, or
    /// reports infeasibility. A required vertex, once matched, never becomes
    /// unmatched again (only value-1 left and value-0 right vertices are
    /// dropped), so the left phase's coverage survives the right phase.
    fn solve(mut self) -> Option<Witness> {
        for u in 0..self.left.len() {
            if !self.usable_left(u) || self.left[u].0 >= 1.0 || self.match_of_left[u].is_some() {
                continue;
            }
            let mut visited = vec![false; self.right.len()];
            if !self.augment_from_left(u, &mut visited) {
                return None;
            }
        }
        for v in 0..self.right.len() {
            if !self.usable_right(v) || self.right[v].0 <= 0.0 || self.match_of_right[v].is_some() {
                continue;
            }
            let mut visited = vec![false; self.left.len()];
            if !self.augment_from_right(v, &mut visited) {
                return None;
            }
        }
        let matching: Vec<(usize, usize)> = self
            .match_of_left
            .iter()
            .enumerate()
            .filter_map(|(u, v)| v.map(|v| (u, v)))
            .collect();
        let i_unmatched = (0..self.left.len())
            .filter(|&u| self.match_of_left[u].is_none())
            .collect();
        let j_unmatched = (0..self.right.len())
            .filter(|&v| self.match_of_right[v].is_none())
            .collect();
        Some(Witness {
            i_unmatched,
            j_unmatched,
            matching,
        })
    }
}

/// Decides the requirement for a pair of outcome multisets given as
/// `(value, opponent score)` entries, returning the witness that proves it.
///
/// A witness is a matching that covers every left entry below 1 and every
/// right entry above 0; unmatched entries form the surplus-win and
/// surplus-loss sets. Strictness holds when some witness has a surplus
/// entry on either side or a strictly dominating matched pair; the three
/// cases are probed directly (banning a candidate surplus entry, or forcing
/// a strict pair), which together cover every strict witness shape.
pub fn confront_multisets(
    u_i: &[OutcomeEntry],
    u_j: &[OutcomeEntry],
) -> (Requirement, Option<Witness>) {
    let base = match Matcher::new(u_i, u_j).solve() {
        Some(w) => w,
        None => return (Requirement::None, None),
    };
    // Unequal sizes leave surplus entries in every witness.
    if u_i.len() != u_j.len() {
        return (Requirement::Strict, Some(base));
    }
    for u in 0..u_i.len() {
        if u_i[u].0 >= 1.0 {
            if let Some(w) = Matcher::new(u_i, u_j).ban_left(u).solve() {
                return (Requirement::Strict, Some(w));
            }
        }
    }
    for v in 0..u_j.len() {
        if u_j[v].0 <= 0.0 {
            if let Some(w) = Matcher::new(u_i, u_j).ban_right(v).solve() {
                return (Requirement::Strict, Some(w));
            }
        }
    }
    for u in 0..u_i.len() {
        for v in 0..u_j.len() {
            if dominates_strictly(u_i[u], u_j[v]) {
                if let Some(w) = Matcher::new(u_i, u_j).force(u, v).solve() {
                    return (Requirement::Strict, Some(w));
                }
            }
        }
    }
    (Requirement::Weak, Some(base))
}

/// Re-validates a witness against the axiom's two clauses by direct
/// inspection, plus the strictness condition when `strict` is claimed.
pub fn witness_is_valid(
    u_i: &[OutcomeEntry],
    u_j: &[OutcomeEntry],
    witness: &Witness,
    strict: bool,
) -> bool {
    let mut seen_i = vec![0u8; u_i.len()];
    let mut seen_j = vec![0u8; u_j.len()];
    for &u in &witness.i_unmatched {
        seen_i[u] += 1;
        if u_i[u].0 != 1.0 {
            return false;
        }
    }
    for &v in &witness.j_unmatched {
        seen_j[v] += 1;
        if u_j[v].0 != 0.0 {
            return false;
        }
    }
    let mut any_strict_pair = false;
    for &(u, v) in &witness.matching {
        seen_i[u] += 1;
        seen_j[v] += 1;
        if !dominates(u_i[u], u_j[v]) {
            return false;
        }
        any_strict_pair |= dominates_strictly(u_i[u], u_j[v]);
    }
    if seen_i.iter().any(|&c| c != 1) || seen_j.iter().any(|&c| c != 1) {
        return false;
    }
    if strict {
        return !witness.i_unmatched.is_empty()
            || !witness.j_unmatched.is_empty()
            || any_strict_pair;
    }
    true
}

fn requirement_satisfied(req: Requirement, s_i: f64, s_j: f64) -> bool {
    match req {
        Requirement::None => true,
        Requirement::Weak => s_i >= s_j - SCORE_TIE_TOL,
        Requirement::Strict => s_i - s_j > SCORE_TIE_TOL,
    }
}

fn multiset_entries(p: &Profile, scores: &[f64], i: usize) -> Vec<OutcomeEntry> {
    p.outcome_multiset(i)
        .elements
        .iter()
        .map(|e| (e.value, scores[e.opponent]))
        .collect()
}

/// Applies self-consistent monotonicity to one ordered pair.
pub fn scm_confront(p: &Profile, scores: &[f64], i: usize, j: usize) -> ConfrontationVerdict {
    assert!(i != j, "confrontation needs two distinct alternatives");
    assert_eq!(scores.len(), p.n());
    let u_i = multiset_entries(p, scores, i);
    let u_j = multiset_entries(p, scores, j);
    let (requirement, witness) = confront_multisets(&u_i, &u_j);
    ConfrontationVerdict {
        pair: (i, j),
        requirement,
        witness,
        satisfied: requirement_satisfied(requirement, scores[i], scores[j]),
    }
}

/// Confronts every ordered pair and returns the violated verdicts only; an
/// empty result certifies the axiom for this profile and score vector.
///
/// Pairs whose actual scores already exceed by more than the tie tolerance
/// cannot be violated and are skipped without solving the matching.
pub fn scm_audit(p: &Profile, scores: &[f64]) -> Vec<ConfrontationVerdict> {
    assert_eq!(scores.len(), p.n());
    let n = p.n();
    let entries: Vec<Vec<OutcomeEntry>> = (0..n).map(|i| multiset_entries(p, scores, i)).collect();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || scores[i] - scores[j] > SCORE_TIE_TOL {
                continue;
            }
            let (requirement, witness) = confront_multisets(&entries[i], &entries[j]);
            if !requirement_satisfied(requirement, scores[i], scores[j]) {
                violations.push(ConfrontationVerdict {
                    pair: (i, j),
                    requirement,
                    witness,
                    satisfied: false,
                });
            }
        }
    }
    violations
}

/// Configuration of the random profile stream used by the violation search.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub n_range: (usize, usize),
    pub m_range: (usize, usize),
    /// Probability that a reported comparison is a draw.
    pub draw_probability: f64,
    /// Probability that a judge reports each pair.
    pub pair_probability: f64,
    /// Reject divisible profiles (up to 1000 redraws per trial).
    pub indivisible_only: bool,
}

impl Default for GeneratorConfig {
    fn default() -> GeneratorConfig {
        GeneratorConfig {
            n_range: (3, 6),
            m_range: (1, 3),
            draw_probability: 1.0 / 3.0,
            pair_probability: 0.7,
            indivisible_only: false,
        }
    }
}

/// Counter-based pseudo-random stream (splitmix64). Each (seed, trial) pair
/// yields an independent deterministic stream, so trial ranges can be
/// evaluated in any order or split across workers without changing results.
#[derive(Debug, Clone)]
pub struct TrialRng {
    state: u64,
}

impl TrialRng {
    pub fn new(seed: u64, trial: u64) -> TrialRng {
        TrialRng {
            state: seed ^ trial.wrapping_mul(0xA24B_AED4_963E_E407),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform draw from an inclusive range.
    pub fn next_in(&mut self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi);
        lo + (self.next_u64() % (hi - lo + 1) as u64) as usize
    }
}

fn random_profile_once(rng: &mut TrialRng, config: &GeneratorConfig) -> Profile {
    let n = rng.next_in(config.n_range.0, config.n_range.1);
    let m = rng.next_in(config.m_range.0, config.m_range.1);
    let alternatives: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut judges = Vec::with_capacity(m);
    for _ in 0..m {
        let mut ballot = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if rng.next_f64() >= config.pair_probability {
                    continue;
                }
                let outcome = if rng.next_f64() < config.draw_probability {
                    Outcome::Draw
                } else if rng.next_f64() < 0.5 {
                    Outcome::AWins
                } else {
                    Outcome::BWins
                };
                ballot.push((alternatives[a].clone(), alternatives[b].clone(), outcome));
            }
        }
        judges.push(ballot);
    }
    Profile::new(alternatives, judges).expect("generated profiles are valid by construction")
}

/// Draws the profile for one trial of the stream, honoring the
/// indivisible-only flag by rejection (capped at 1000 redraws).
pub fn random_profile(seed: u64, trial: u64, config: &GeneratorConfig) -> Option<Profile> {
    let mut rng = TrialRng::new(seed, trial);
    for _ in 0..1000 {
        let p = random_profile_once(&mut rng, config);
        if !config.indivisible_only || p.cumulative().is_indivisible() {
            return Some(p);
        }
    }
    None
}

/// A reproducible counterexample: the profile, the method, the violated
/// verdict, and the stream coordinates that produced it.
#[derive(Debug, Clone)]
pub struct CounterexampleReport {
    pub profile: Profile,
    pub method: Method,
    pub pair: (usize, usize),
    pub verdict: ConfrontationVerdict,
    pub scores: ScoreVector,
    pub seed: u64,
    pub trial: u64,
}

impl CounterexampleReport {
    /// Re-runs the method on the stored profile and confirms the stored pair
    /// is violated again.
    pub fn reverify(&self) -> bool {
        match self.method.scores(&self.profile) {
            Ok(sv) => scm_audit(&self.profile, &sv.scores)
                .iter()
                .any(|v| v.pair == self.pair && v.requirement == self.verdict.requirement),
            Err(_) => false,
        }
    }
}

/// Searches the seeded profile stream for the first trial on which the
/// method's scores violate self-consistent monotonicity. Trials where the
/// generator hits its rejection cap or the method is inapplicable are
/// skipped. `None` after the budget is a valid outcome.
pub fn scm_violation_search(
    method: &Method,
    config: &GeneratorConfig,
    seed: u64,
    budget: u64,
) -> Option<CounterexampleReport> {
    for trial in 0..budget {
        let Some(profile) = random_profile(seed, trial, config) else {
            continue;
        };
        let Ok(scores) = method.scores(&profile) else {
            continue;
        };
        let violations = scm_audit(&profile, &scores.scores);
        if let Some(verdict) = violations.into_iter().next() {
            return Some(CounterexampleReport {
                profile,
                method: method.clone(),
                pair: verdict.pair,
                verdict,
                scores,
                seed,
                trial,
            });
        }
    }
    None
}

/// Which reading of the macrovertex condition to apply. The condition as
/// printed ("n_ij = n_jk") mixes a within-subset count into the uniformity
/// requirement; the reading consistent with the defined symbols compares the
/// members' counts against each outside alternative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MacrovertexReading {
    /// For all members i, j and outsiders k: `n_ik = n_jk`.
    #[default]
    MemberUniform,
    /// For all members i, j and outsiders k: `n_ij = n_jk`.
    Literal,
}

/// Outcome of the exhaustive macrovertex scan. Singleton subsets and the full
/// alternative set qualify vacuously and are reported separately from the
/// proper ones.
#[derive(Debug, Clone, PartialEq)]
pub struct MacrovertexScan {
    pub proper: Vec<Vec<usize>>,
    pub singleton_count: usize,
    pub full_set_qualifies: bool,
}

/// Tests a single subset against the chosen reading.
pub fn is_macrovertex(p: &Profile, members: &[usize], reading: MacrovertexReading) -> bool {
    let n = p.n();
    if members.len() < 2 {
        return true;
    }
    let c = p.cumulative();
    let outside: Vec<usize> = (0..n).filter(|k| !members.contains(k)).collect();
    match reading {
        MacrovertexReading::MemberUniform => outside.iter().all(|&k| {
            let first = c.count(members[0], k);
            members.iter().all(|&i| c.count(i, k) == first)
        }),
        MacrovertexReading::Literal => {
            let mut counts = Vec::new();
            for (pos, &i) in members.iter().enumerate() {
                for &j in &members[pos + 1..] {
                    counts.push(c.count(i, j));
                }
            }
            for &j in members {
                for &k in &outside {
                    counts.push(c.count(j, k));
                }
            }
            counts.windows(2).all(|w| w[0] == w[1])
        }
    }
}

/// Enumerates every macrovertex of the profile by exhaustive subset scan
/// (limited to 20 alternatives).
pub fn enumerate_macrovertices(
    p: &Profile,
    reading: MacrovertexReading,
) -> Result<MacrovertexScan> {
    let n = p.n();
    if n > EXHAUSTIVE_SCAN_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: EXHAUSTIVE_SCAN_LIMIT,
        });
    }
    let mut proper = Vec::new();
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size < 2 || size == n {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if is_macrovertex(p, &members, reading) {
            proper.push(members);
        }
    }
    Ok(MacrovertexScan {
        proper,
        singleton_count: n,
        full_set_qualifies: true,
    })
}

/// Verdict of the macrovertex independence probe.
#[derive(Debug, Clone, PartialEq)]
pub enum IndependenceVerdict {
    Independent {
        perturbations_checked: usize,
    },
    Dependent {
        witness: Box<Profile>,
        outside_index: usize,
        delta: f64,
        perturbation: usize,
    },
}

/// Perturbs only the outcomes of within-macrovertex comparisons (counts are
/// untouched) and reports whether any outside score moves by more than
/// 1e-7. Perturbations on which the method becomes inapplicable are skipped;
/// they carry no comparable score vector.
pub fn macrovertex_independence_test(
    method: &Method,
    p: &Profile,
    members: &[usize],
    perturbations: usize,
    seed: u64,
) -> Result<IndependenceVerdict> {
    if !is_macrovertex(p, members, MacrovertexReading::MemberUniform) {
        return Err(Error::NotAMacrovertex {
            members: members.to_vec(),
        });
    }
    let base = method.scores(p)?;
    let mut checked = 0;
    for k in 0..perturbations {
        let mut rng = TrialRng::new(seed, k as u64);
        let perturbed = perturb_within(p, members, &mut rng);
        let Ok(scores) = method.scores(&perturbed) else {
            continue;
        };
        checked += 1;
        for outside in (0..p.n()).filter(|i| !members.contains(i)) {
            let delta = (scores.scores[outside] - base.scores[outside]).abs();
            if delta > INDEPENDENCE_TOL {
                return Ok(IndependenceVerdict::Dependent {
                    witness: Box::new(perturbed),
                    outside_index: outside,
                    delta,
                    perturbation: k,
                });
            }
        }
    }
    Ok(IndependenceVerdict::Independent {
        perturbations_checked: checked,
    })
}

fn perturb_within(p: &Profile, members: &[usize], rng: &mut TrialRng) -> Profile {
    let alternatives: Vec<String> = p.alternatives().to_vec();
    let judges: Vec<Vec<(String, String, Outcome)>> = p
        .judges()
        .iter()
        .map(|ballot| {
            ballot
                .comparisons
                .iter()
                .map(|c: &Comparison| {
                    let outcome = if members.contains(&c.a) && members.contains(&c.b) {
                        match rng.next_in(0, 2) {
                            0 => Outcome::AWins,
                            1 => Outcome::BWins,
                            _ => Outcome::Draw,
                        }
                    } else {
                        c.outcome
                    };
                    (
                        alternatives[c.a].clone(),
                        alternatives[c.b].clone(),
                        outcome,
                    )
                })
                .collect()
        })
        .collect();
    Profile::new(alternatives, judges).expect("perturbation preserves validity")
}

/// Verdict of the splitting balance condition.
#[derive(Debug, Clone, PartialEq)]
pub enum BalanceVerdict {
    Pass,
    /// A split where `J2` scored nothing against `J1` and yet every `J1`
    /// score falls below every `J2` score.
    Fail { j1: Vec<usize>, j2: Vec<usize> },
}

/// Checks the splitting balance condition: for every split `(J1, J2)` with
/// `a[j][i] = 0` for all `j` in `J2`, `i` in `J1`, some `J1` member must
/// score at least some `J2` member. Exhaustive over splits (n <= 20).
pub fn splitting_balance_check(p: &Profile, scores: &[f64]) -> Result<BalanceVerdict> {
    let n = p.n();
    if n > EXHAUSTIVE_SCAN_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: EXHAUSTIVE_SCAN_LIMIT,
        });
    }
    assert_eq!(scores.len(), n);
    let c = p.cumulative();
    for mask in 1u32..((1u32 << n) - 1) {
        let j2: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let j1: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) == 0).collect();
        let valid_split = j2
            .iter()
            .all(|&j| j1.iter().all(|&i| c.outcomes().get(j, i) == 0.0));
        if !valid_split {
            continue;
        }
        let balanced = j1
            .iter()
            .any(|&i| j2.iter().any(|&j| scores[i] >= scores[j] - SCORE_TIE_TOL));
        if !balanced {
            return Ok(BalanceVerdict::Fail { j1, j2 });
        }
    }
    Ok(BalanceVerdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::procedures::row_sum_scores;

    fn fig1() -> Profile {
        fixtures::fixture("fig1").unwrap().profile.unwrap()
    }

    #[test]
    fn fig2_scenario_is_strict() {
        let scenario = fixtures::fixture("fig2_scenario").unwrap().scenario.unwrap();
        let (req, witness) = confront_multisets(&scenario.u_i, &scenario.u_j);
        assert_eq!(req, Requirement::Strict);
        assert!(witness_is_valid(
            &scenario.u_i,
            &scenario.u_j,
            &witness.unwrap(),
            true
        ));
    }

    #[test]
    fn identical_records_force_equality() {
        // both records are a single win over the same opponent
        let u = vec![(1.0, 3.0)];
        let (req_ij, _) = confront_multisets(&u, &u);
        assert_eq!(req_ij, Requirement::Weak);
    }

    #[test]
    fn fig1_row_sum_violations() {
        let p = fig1();
        let scores = row_sum_scores(&p).scores;
        let verdict = scm_confront(&p, &scores, 2, 3);
        assert_eq!(verdict.requirement, Requirement::Strict);
        assert!(!verdict.satisfied);

        let violations = scm_audit(&p, &scores);
        let pairs: Vec<(usize, usize)> = violations.iter().map(|v| v.pair).collect();
        assert!(pairs.contains(&(2, 3)));
        // the full violation set of this profile and score vector
        assert_eq!(pairs, vec![(2, 1), (2, 3), (3, 1)]);
        for v in &violations {
            assert_eq!(v.requirement, Requirement::Strict);
        }
    }

    #[test]
    fn fig1_preconception_scores_pass() {
        let p = fig1();
        // ranking (4, 2, 1, 3): SCM is silent on every pair
        let scores = [2.0, 3.0, 1.0, 4.0];
        assert!(scm_audit(&p, &scores).is_empty());
    }

    #[test]
    fn fig1_splitting_balance() {
        let p = fig1();
        let row_sum = row_sum_scores(&p).scores;
        assert_eq!(
            splitting_balance_check(&p, &row_sum).unwrap(),
            BalanceVerdict::Pass
        );

        let preconception = [2.0, 3.0, 1.0, 4.0];
        match splitting_balance_check(&p, &preconception).unwrap() {
            BalanceVerdict::Fail { j1, j2 } => {
                assert_eq!(j1, vec![0, 2]);
                assert_eq!(j2, vec![1, 3]);
            }
            BalanceVerdict::Pass => panic!("expected a failing split"),
        }
    }

    #[test]
    fn single_win_balance_passes() {
        let p = Profile::new(
            vec!["1".into(), "2".into()],
            vec![vec![("1".into(), "2".into(), Outcome::AWins)]],
        )
        .unwrap();
        assert_eq!(
            splitting_balance_check(&p, &[1.0, 0.0]).unwrap(),
            BalanceVerdict::Pass
        );
    }

    #[test]
    fn strict_implies_reverse_none() {
        let p = fig1();
        let scores = row_sum_scores(&p).scores;
        for i in 0..p.n() {
            for j in 0..p.n() {
                if i == j {
                    continue;
                }
                let forward = scm_confront(&p, &scores, i, j);
                if forward.requirement == Requirement::Strict {
                    let backward = scm_confront(&p, &scores, j, i);
                    assert_eq!(backward.requirement, Requirement::None);
                }
            }
        }
    }

    #[test]
    fn search_zero_budget_finds_nothing() {
        let config = GeneratorConfig::default();
        assert!(scm_violation_search(
            &Method::Wei(crate::procedures::Direction::Win),
            &config,
            42,
            0
        )
        .is_none());
    }

    #[test]
    fn search_is_deterministic() {
        let config = GeneratorConfig {
            indivisible_only: true,
            ..GeneratorConfig::default()
        };
        let method = Method::Wei(crate::procedures::Direction::Win);
        let first = scm_violation_search(&method, &config, 42, 500).expect("violation exists");
        let second = scm_violation_search(&method, &config, 42, 500).expect("violation exists");
        assert_eq!(first.trial, second.trial);
        assert_eq!(first.pair, second.pair);
        assert_eq!(first.profile, second.profile);
        assert!(first.reverify());
    }

    #[test]
    fn generator_is_counter_based() {
        let config = GeneratorConfig::default();
        let a = random_profile(7, 3, &config).unwrap();
        let b = random_profile(7, 3, &config).unwrap();
        assert_eq!(a, b);
        // different trials give different profiles (overwhelmingly)
        let c = random_profile(7, 4, &config).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn macrovertex_complete_profile() {
        let p = Profile::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![vec![
                ("1".into(), "2".into(), Outcome::AWins),
                ("1".into(), "3".into(), Outcome::Draw),
                ("2".into(), "3".into(), Outcome::BWins),
            ]],
        )
        .unwrap();
        let scan = enumerate_macrovertices(&p, MacrovertexReading::MemberUniform).unwrap();
        assert_eq!(scan.proper.len(), 3); // every 2-subset of a uniform-count profile
        assert_eq!(scan.singleton_count, 3);
        assert!(scan.full_set_qualifies);
    }

    #[test]
    fn macrovertex_fig1_has_none() {
        let scan = enumerate_macrovertices(&fig1(), MacrovertexReading::MemberUniform).unwrap();
        assert!(scan.proper.is_empty());
    }

    fn pair_macrovertex_profile() -> Profile {
        // (1,3) and (2,3) once each, (1,2) five times: {1,2} is a macrovertex
        let mut judges = vec![vec![
            ("1".into(), "3".into(), Outcome::Draw),
            ("2".into(), "3".into(), Outcome::Draw),
            ("1".into(), "2".into(), Outcome::Draw),
        ]];
        for _ in 0..4 {
            judges.push(vec![("1".into(), "2".into(), Outcome::Draw)]);
        }
        Profile::new(vec!["1".into(), "2".into(), "3".into()], judges).unwrap()
    }

    #[test]
    fn macrovertex_readings_differ() {
        let p = pair_macrovertex_profile();
        assert!(is_macrovertex(&p, &[0, 1], MacrovertexReading::MemberUniform));
        // five within comparisons against single outside ones
        assert!(!is_macrovertex(&p, &[0, 1], MacrovertexReading::Literal));
        let scan = enumerate_macrovertices(&p, MacrovertexReading::MemberUniform).unwrap();
        assert_eq!(scan.proper, vec![vec![0, 1]]);
    }

    #[test]
    fn row_sum_is_macrovertex_independent() {
        let p = pair_macrovertex_profile();
        let verdict = macrovertex_independence_test(&Method::RowSum, &p, &[0, 1], 50, 7).unwrap();
        assert!(matches!(verdict, IndependenceVerdict::Independent { .. }));
    }

    #[test]
    fn independence_requires_macrovertex() {
        let err = macrovertex_independence_test(&Method::RowSum, &fig1(), &[0, 1], 10, 7)
            .unwrap_err();
        assert_eq!(err.code(), "NOT_A_MACROVERTEX");
    }

    #[test]
    fn wei_independence_verdict_is_reproducible() {
        let p = pair_macrovertex_profile();
        let method = Method::Wei(crate::procedures::Direction::Win);
        let first = macrovertex_independence_test(&method, &p, &[0, 1], 100, 11).unwrap();
        let second = macrovertex_independence_test(&method, &p, &[0, 1], 100, 11).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn too_large_guards() {
        let n = 21;
        let alternatives: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let p = Profile::new(
            alternatives,
            vec![vec![("1".into(), "2".into(), Outcome::AWins)]],
        )
        .unwrap();
        assert_eq!(
            enumerate_macrovertices(&p, MacrovertexReading::MemberUniform)
                .unwrap_err()
                .code(),
            "TOO_LARGE"
        );
        let scores = vec![0.0; n];
        assert_eq!(
            splitting_balance_check(&p, &scores).unwrap_err().code(),
            "TOO_LARGE"
        );
    }
}
