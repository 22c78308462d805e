//! Domain data model: profiles of per-judge incomplete paired comparisons,
//! the cumulative outcome matrix, degree summaries, per-alternative outcome
//! multisets, and the structural predicates (indivisibility, connectivity)
//! the scoring procedures use as preconditions.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::numerics::Matrix;

/// A single judge's response on one pair of alternatives.
///
/// The fourth possible response, "no opinion on this pair", is encoded by the
/// absence of the pair from the ballot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    AWins,
    BWins,
    Draw,
}

/// One reported comparison; `a` and `b` are indices into the alternative list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Comparison {
    pub a: usize,
    pub b: usize,
    pub outcome: Outcome,
}

impl Comparison {
    /// Outcome value credited to `a` (1 win, 1/2 draw, 0 loss).
    pub fn value_for_a(&self) -> f64 {
        match self.outcome {
            Outcome::AWins => 1.0,
            Outcome::BWins => 0.0,
            Outcome::Draw => 0.5,
        }
    }

    /// Outcome value credited to `b`.
    pub fn value_for_b(&self) -> f64 {
        match self.outcome {
            Outcome::AWins => 0.0,
            Outcome::BWins => 1.0,
            Outcome::Draw => 0.5,
        }
    }
}

/// The comparisons reported by one judge. At most one comparison per
/// unordered pair; an empty ballot is allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JudgeBallot {
    pub comparisons: Vec<Comparison>,
}

/// A validated profile: an ordered set of alternative labels plus one ballot
/// per judge. Immutable after construction; every accessor is a pure function.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    alternatives: Vec<String>,
    judges: Vec<JudgeBallot>,
}

impl Profile {
    /// Validates a raw document (labels plus per-judge comparison triples)
    /// into a `Profile`.
    ///
    /// Rejects self-comparisons, two responses on the same unordered pair in
    /// one ballot, references to unlisted alternatives, duplicate labels, and
    /// empty alternative or judge sets.
    pub fn new(
        alternatives: Vec<String>,
        judges: Vec<Vec<(String, String, Outcome)>>,
    ) -> Result<Profile> {
        if alternatives.is_empty() || judges.is_empty() {
            return Err(Error::Empty);
        }
        let mut index = HashMap::with_capacity(alternatives.len());
        for (i, label) in alternatives.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateAlternative { label: label.clone() });
            }
        }
        let n = alternatives.len();
        let mut ballots = Vec::with_capacity(judges.len());
        let mut seen = vec![false; n * n];
        for (judge, raw) in judges.into_iter().enumerate() {
            seen.iter_mut().for_each(|s| *s = false);
            let mut comparisons = Vec::with_capacity(raw.len());
            for (a, b, outcome) in raw {
                let ia = *index.get(&a).ok_or(Error::UnknownAlternative {
                    judge,
                    label: a.clone(),
                })?;
                let ib = *index.get(&b).ok_or(Error::UnknownAlternative {
                    judge,
                    label: b.clone(),
                })?;
                if ia == ib {
                    return Err(Error::SelfComparison { judge, label: a });
                }
                let (lo, hi) = (ia.min(ib), ia.max(ib));
                if seen[lo * n + hi] {
                    return Err(Error::DuplicatePair { judge, a, b });
                }
                seen[lo * n + hi] = true;
                comparisons.push(Comparison { a: ia, b: ib, outcome });
            }
            ballots.push(JudgeBallot { comparisons });
        }
        Ok(Profile {
            alternatives,
            judges: ballots,
        })
    }

    /// Number of alternatives.
    pub fn n(&self) -> usize {
        self.alternatives.len()
    }

    /// Number of judges.
    pub fn m(&self) -> usize {
        self.judges.len()
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn label(&self, i: usize) -> &str {
        &self.alternatives[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.alternatives.iter().position(|l| l == label)
    }

    pub fn judges(&self) -> &[JudgeBallot] {
        &self.judges
    }

    /// Sums the per-judge outcomes into the cumulative matrix; pairs no judge
    /// reported contribute zero.
    pub fn cumulative(&self) -> CumulativeMatrix {
        let n = self.n();
        let mut a = Matrix::zeros(n);
        let mut counts = vec![vec![0u32; n]; n];
        for ballot in &self.judges {
            for c in &ballot.comparisons {
                *a.get_mut(c.a, c.b) += c.value_for_a();
                *a.get_mut(c.b, c.a) += c.value_for_b();
                counts[c.a][c.b] += 1;
                counts[c.b][c.a] += 1;
            }
        }
        let mut skew = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                *skew.get_mut(i, j) = a.get(i, j) - a.get(j, i);
            }
        }
        CumulativeMatrix { a, counts, skew }
    }

    /// True iff the undirected comparison multigraph (one edge per reported
    /// comparison) is connected. A single alternative is trivially connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let mut adjacent = vec![Vec::new(); n];
        for ballot in &self.judges {
            for c in &ballot.comparisons {
                adjacent[c.a].push(c.b);
                adjacent[c.b].push(c.a);
            }
        }
        let mut visited = vec![false; n];
        let mut stack = vec![0];
        visited[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adjacent[v] {
                if !visited[w] {
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
        visited.into_iter().all(|v| v)
    }

    /// The multiset of comparison outcomes of alternative `i` across all
    /// judges: one element per defined comparison.
    pub fn outcome_multiset(&self, i: usize) -> OutcomeMultiset {
        assert!(i < self.n(), "alternative index out of range");
        let mut elements = Vec::new();
        for (judge, ballot) in self.judges.iter().enumerate() {
            for c in &ballot.comparisons {
                if c.a == i {
                    elements.push(OutcomeElement {
                        value: c.value_for_a(),
                        opponent: c.b,
                        judge,
                    });
                } else if c.b == i {
                    elements.push(OutcomeElement {
                        value: c.value_for_b(),
                        opponent: c.a,
                        judge,
                    });
                }
            }
        }
        OutcomeMultiset { owner: i, elements }
    }

    /// Relabels alternatives: position `i` of the new profile is old position
    /// `perm[i]`. Used by neutrality tests.
    pub fn permute_alternatives(&self, perm: &[usize]) -> Profile {
        assert_eq!(perm.len(), self.n());
        let mut inverse = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        Profile {
            alternatives: perm.iter().map(|&old| self.alternatives[old].clone()).collect(),
            judges: self
                .judges
                .iter()
                .map(|b| JudgeBallot {
                    comparisons: b
                        .comparisons
                        .iter()
                        .map(|c| Comparison {
                            a: inverse[c.a],
                            b: inverse[c.b],
                            outcome: c.outcome,
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Reorders judges by `perm` (anonymity tests).
    pub fn permute_judges(&self, perm: &[usize]) -> Profile {
        assert_eq!(perm.len(), self.m());
        Profile {
            alternatives: self.alternatives.clone(),
            judges: perm.iter().map(|&p| self.judges[p].clone()).collect(),
        }
    }
}

/// Total comparison outcomes: `a[i][j]` sums the defined per-judge outcomes
/// of `i` against `j`, `counts[i][j]` is the number of comparisons of the
/// pair, and `skew[i][j] = a[i][j] - a[j][i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulativeMatrix {
    a: Matrix,
    counts: Vec<Vec<u32>>,
    skew: Matrix,
}

impl CumulativeMatrix {
    /// Builds a cumulative matrix directly from outcome totals, deriving
    /// counts (`a_ij + a_ji`) and skew. Intended for matrix-level inputs such
    /// as integer tournaments; profile-level code should use
    /// [`Profile::cumulative`].
    pub fn from_outcome_totals(a: Matrix) -> CumulativeMatrix {
        let n = a.n();
        let mut counts = vec![vec![0u32; n]; n];
        let mut skew = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    counts[i][j] = (a.get(i, j) + a.get(j, i)).round() as u32;
                }
                *skew.get_mut(i, j) = a.get(i, j) - a.get(j, i);
            }
        }
        CumulativeMatrix { a, counts, skew }
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn outcomes(&self) -> &Matrix {
        &self.a
    }

    pub fn skew(&self) -> &Matrix {
        &self.skew
    }

    pub fn count(&self, i: usize, j: usize) -> u32 {
        self.counts[i][j]
    }

    /// Per-alternative win totals, loss totals, and comparison counts.
    pub fn degree_summary(&self) -> DegreeSummary {
        let n = self.n();
        let mut win_total = vec![0.0; n];
        let mut loss_total = vec![0.0; n];
        let mut comparisons = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                win_total[i] += self.a.get(i, j);
                loss_total[i] += self.a.get(j, i);
                comparisons[i] += self.counts[i][j];
            }
        }
        DegreeSummary {
            win_total,
            loss_total,
            comparisons,
        }
    }

    /// True iff the alternatives cannot be split into nonempty `(J1, J2)`
    /// with `a[j][i] = 0` for every `j` in `J2`, `i` in `J1`; equivalently,
    /// the digraph with an arc `i -> j` whenever `a[i][j] > 0` is strongly
    /// connected (irreducibility of the matrix). `n = 1` counts as
    /// indivisible.
    pub fn is_indivisible(&self) -> bool {
        self.divisibility_witness().is_none()
    }

    /// For a divisible matrix, returns a concrete witness split `(J1, J2)`
    /// such that `a[j][i] = 0` for all `j` in `J2`, `i` in `J1`.
    pub fn divisibility_witness(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.n();
        let components = strongly_connected_components(n, |i, j| self.a.get(i, j) > 0.0);
        if components.len() <= 1 {
            return None;
        }
        // A sink component has no outgoing arcs at all, so taking it as J2
        // leaves nothing flowing from J2 into the rest.
        'outer: for comp in &components {
            for &j in comp {
                for i in 0..n {
                    if !comp.contains(&i) && self.a.get(j, i) > 0.0 {
                        continue 'outer;
                    }
                }
            }
            let j2 = comp.clone();
            let j1 = (0..n).filter(|i| !j2.contains(i)).collect();
            return Some((j1, j2));
        }
        unreachable!("a finite digraph condensation always has a sink component")
    }
}

/// Per-alternative totals: wins `c_i^+`, losses `c_i^-`, and the number of
/// comparisons `m_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeSummary {
    pub win_total: Vec<f64>,
    pub loss_total: Vec<f64>,
    pub comparisons: Vec<u32>,
}

/// One defined comparison outcome of the owning alternative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeElement {
    /// 1 for a win, 1/2 for a draw, 0 for a loss.
    pub value: f64,
    pub opponent: usize,
    pub judge: usize,
}

/// The multiset of all defined comparison outcomes of one alternative.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeMultiset {
    pub owner: usize,
    pub elements: Vec<OutcomeElement>,
}

/// Tarjan's algorithm over an implicit adjacency predicate. Returns the
/// components in reverse topological order of the condensation.
pub(crate) fn strongly_connected_components<F: Fn(usize, usize) -> bool>(
    n: usize,
    arc: F,
) -> Vec<Vec<usize>> {
    struct State<'f, F> {
        arc: &'f F,
        n: usize,
        index: Vec<Option<usize>>,
        lowlink: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next_index: usize,
        components: Vec<Vec<usize>>,
    }

    fn visit<F: Fn(usize, usize) -> bool>(s: &mut State<F>, v: usize) {
        s.index[v] = Some(s.next_index);
        s.lowlink[v] = s.next_index;
        s.next_index += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        for w in 0..s.n {
            if w == v || !(s.arc)(v, w) {
                continue;
            }
            if s.index[w].is_none() {
                visit(s, w);
                s.lowlink[v] = s.lowlink[v].min(s.lowlink[w]);
            } else if s.on_stack[w] {
                s.lowlink[v] = s.lowlink[v].min(s.index[w].unwrap());
            }
        }
        if s.lowlink[v] == s.index[v].unwrap() {
            let mut comp = Vec::new();
            loop {
                let w = s.stack.pop().unwrap();
                s.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            s.components.push(comp);
        }
    }

    let mut state = State {
        arc: &arc,
        n,
        index: vec![None; n],
        lowlink: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next_index: 0,
        components: Vec::new(),
    };
    for v in 0..n {
        if state.index[v].is_none() {
            visit(&mut state, v);
        }
    }
    state.components
}
