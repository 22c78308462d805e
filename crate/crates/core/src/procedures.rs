//! The scoring procedures: row sums, eigenvector win/loss scores and their
//! difference/ratio combinations, attenuated path-count scores, fair-bets
//! scores, least squares, the generalized row sum, and the implicit systems
//! solved by fixed-point iteration (Zermelo/Bradley-Terry, Daniels, Cowden,
//! generalized row sum).

use crate::error::{Error, Result};
use crate::numerics::{
    self, fixed_point, power_iteration, solve_linear, Matrix, SolveDiagnostics, DEFAULT_MAX_ITER,
    DEFAULT_TOL,
};
use crate::profile::{strongly_connected_components, CumulativeMatrix, Profile};

/// Normalization applied to a score vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    SumOne,
    SumZero,
    SumHalfN,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Win,
    Loss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineMode {
    Difference,
    Ratio,
}

/// Which matrix the attenuated path-count scores walk over: raw outcome
/// totals, or the nonnegative margins matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixVariant {
    Outcomes,
    Margins,
}

/// Parameters a method actually used, for reporting.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MethodParams {
    pub epsilon: Option<f64>,
    pub gamma: Option<f64>,
    pub variant: Option<MatrixVariant>,
    pub direction: Option<Direction>,
    pub combine: Option<CombineMode>,
    pub lambda: Option<f64>,
}

/// A named score vector with its normalization tag and solver diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    pub method: String,
    pub scores: Vec<f64>,
    pub normalization: Normalization,
    pub diagnostics: SolveDiagnostics,
    pub params: MethodParams,
}

impl ScoreVector {
    fn new(
        method: &str,
        scores: Vec<f64>,
        normalization: Normalization,
        diagnostics: SolveDiagnostics,
        params: MethodParams,
    ) -> ScoreVector {
        let sv = ScoreVector {
            method: method.to_string(),
            scores,
            normalization,
            diagnostics,
            params,
        };
        assert!(sv.scores.iter().all(|s| s.is_finite()), "scores must be finite");
        assert!(sv.normalization_holds(1e-9), "normalization tag mismatch");
        sv
    }

    /// Checks that the tag matches the scores within `tol`.
    pub fn normalization_holds(&self, tol: f64) -> bool {
        let sum: f64 = self.scores.iter().sum();
        match self.normalization {
            Normalization::SumOne => (sum - 1.0).abs() <= tol,
            Normalization::SumZero => sum.abs() <= tol,
            Normalization::SumHalfN => (sum - self.scores.len() as f64 / 2.0).abs() <= tol,
            Normalization::None => true,
        }
    }
}

/// Win-scores and loss-scores of one procedure family, prior to combination.
#[derive(Debug, Clone, PartialEq)]
pub struct WinLossPair {
    pub win_scores: Vec<f64>,
    pub loss_scores: Vec<f64>,
}

fn not_indivisible(c: &CumulativeMatrix) -> Option<Error> {
    c.divisibility_witness()
        .map(|(j1, j2)| Error::NotIndivisible { j1, j2 })
}

/// Row-sum scores: `s_i = c_i^+`, the total outcome of `i` over all judges.
pub fn row_sum_scores(p: &Profile) -> ScoreVector {
    let degrees = p.cumulative().degree_summary();
    ScoreVector::new(
        "row_sum",
        degrees.win_total,
        Normalization::None,
        SolveDiagnostics::exact(0.0),
        MethodParams::default(),
    )
}

/// Dominant-eigenvector scores of the cumulative matrix (win direction) or
/// its transpose (loss direction). Requires an indivisible profile; returns
/// the positive eigenvector normalized to sum one, plus the eigenvalue.
pub fn wei_scores(c: &CumulativeMatrix, direction: Direction) -> Result<(ScoreVector, f64)> {
    if let Some(err) = not_indivisible(c) {
        return Err(err);
    }
    let m = match direction {
        Direction::Win => c.outcomes().clone(),
        Direction::Loss => c.outcomes().transpose(),
    };
    // the kernel tolerance is relative to the eigenvalue; scale it so the
    // absolute residual stays within 1e-10 even for heavy profiles
    let tol = DEFAULT_TOL.min(1e-10 / (1.0 + m.max_row_sum()));
    let (lambda, v, diag) = power_iteration(&m, tol, DEFAULT_MAX_ITER)?;
    if v.iter().any(|&x| x <= 0.0) {
        return Err(Error::NoConvergence { diag });
    }
    let params = MethodParams {
        direction: Some(direction),
        lambda: Some(lambda),
        ..MethodParams::default()
    };
    let name = match direction {
        Direction::Win => "wei",
        Direction::Loss => "wei-loss",
    };
    Ok((
        ScoreVector::new(name, v, Normalization::SumOne, diag, params),
        lambda,
    ))
}

/// Combines a win/loss pair into ultimate scores, by difference or ratio.
pub fn combine(wl: &WinLossPair, mode: CombineMode) -> Result<ScoreVector> {
    let scores = match mode {
        CombineMode::Difference => wl
            .win_scores
            .iter()
            .zip(&wl.loss_scores)
            .map(|(w, l)| w - l)
            .collect(),
        CombineMode::Ratio => {
            if let Some(index) = wl.loss_scores.iter().position(|&l| l == 0.0) {
                return Err(Error::DivideByZero { index });
            }
            wl.win_scores
                .iter()
                .zip(&wl.loss_scores)
                .map(|(w, l)| w / l)
                .collect()
        }
    };
    let params = MethodParams {
        combine: Some(mode),
        ..MethodParams::default()
    };
    let name = match mode {
        CombineMode::Difference => "difference",
        CombineMode::Ratio => "ratio",
    };
    Ok(ScoreVector::new(
        name,
        scores,
        Normalization::None,
        SolveDiagnostics::exact(0.0),
        params,
    ))
}

/// The nonnegative margins matrix: `C_ij = max(a_ij - a_ji, 0)`.
pub fn taylor_matrix(c: &CumulativeMatrix) -> Matrix {
    let n = c.n();
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            *out.get_mut(i, j) = c.skew().get(i, j).max(0.0);
        }
    }
    out
}

/// Spectral radius of a nonnegative matrix, computed blockwise over the
/// strongly connected components so that reducible and nilpotent matrices are
/// handled exactly (an acyclic matrix has radius zero).
pub fn spectral_radius(m: &Matrix) -> Result<f64> {
    let n = m.n();
    let mut radius: f64 = (0..n).map(|i| m.get(i, i)).fold(0.0, f64::max);
    for comp in strongly_connected_components(n, |i, j| m.get(i, j) > 0.0) {
        if comp.len() < 2 {
            continue;
        }
        let mut block = Matrix::zeros(comp.len());
        for (bi, &i) in comp.iter().enumerate() {
            for (bj, &j) in comp.iter().enumerate() {
                *block.get_mut(bi, bj) = m.get(i, j);
            }
        }
        let (lambda, _, _) = power_iteration(&block, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
        radius = radius.max(lambda);
    }
    Ok(radius)
}

fn ktt_matrix(c: &CumulativeMatrix, variant: MatrixVariant) -> Matrix {
    match variant {
        MatrixVariant::Outcomes => c.outcomes().clone(),
        MatrixVariant::Margins => taylor_matrix(c),
    }
}

/// Attenuated path-count scores `w = M (I - eps*M)^{-1} 1` over the chosen
/// matrix (outcome totals or margins); the loss direction uses the transpose.
/// Requires `0 <= eps < 1/r` with `r` the spectral radius of the matrix; when
/// `eps` is not given, `eps = 0.5/r` is used (0.5 if `r = 0`).
pub fn ktt_scores(
    c: &CumulativeMatrix,
    epsilon: Option<f64>,
    variant: MatrixVariant,
    direction: Direction,
) -> Result<ScoreVector> {
    let base = ktt_matrix(c, variant);
    let radius = spectral_radius(&base)?;
    let eps = epsilon.unwrap_or(if radius > 0.0 { 0.5 / radius } else { 0.5 });
    let max = if radius > 0.0 { 1.0 / radius } else { f64::INFINITY };
    if eps < 0.0 || eps >= max {
        return Err(Error::EpsilonOutOfRange {
            epsilon: eps,
            min: 0.0,
            max,
        });
    }
    let m = match direction {
        Direction::Win => base,
        Direction::Loss => base.transpose(),
    };
    let n = m.n();
    // (I - eps*M) x = 1, then w = M x
    let mut system = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            *system.get_mut(i, j) = if i == j { 1.0 } else { 0.0 } - eps * m.get(i, j);
        }
    }
    let ones = vec![1.0; n];
    let x = solve_linear(&system, &ones)?;
    let scores = m.mul_vec(&x);
    let residual = numerics::max_abs_diff(&system.mul_vec(&x), &ones);
    let params = MethodParams {
        epsilon: Some(eps),
        variant: Some(variant),
        direction: Some(direction),
        ..MethodParams::default()
    };
    let name = match direction {
        Direction::Win => "ktt",
        Direction::Loss => "ktt-loss",
    };
    Ok(ScoreVector::new(
        name,
        scores,
        Normalization::None,
        SolveDiagnostics {
            iterations: 0,
            residual,
            converged: true,
        },
        params,
    ))
}

/// Truncated series evaluation of the attenuated path-count scores,
/// `(M + eps M^2 + ... + eps^{terms-1} M^terms) 1`. Reference route for the
/// closed form above.
pub fn ktt_series(m: &Matrix, epsilon: f64, terms: usize) -> Vec<f64> {
    let n = m.n();
    let mut power = vec![1.0; n]; // M^k 1, starting at k = 0
    let mut sum = vec![0.0; n];
    let mut coeff = 1.0;
    for k in 0..terms {
        power = m.mul_vec(&power);
        for i in 0..n {
            sum[i] += coeff * power[i];
        }
        if k + 1 < terms {
            coeff *= epsilon;
        }
    }
    sum
}

/// Fair-bets scores: the positive solution of `w_i * c_i^- = sum_j a_ij w_j`
/// (win direction) or `l_i * c_i^+ = sum_j a_ji l_j` (loss direction),
/// normalized to sum one. Requires an indivisible profile, which guarantees
/// all `c_i^+` and `c_i^-` are positive.
pub fn fair_bets_scores(c: &CumulativeMatrix, direction: Direction) -> Result<ScoreVector> {
    if let Some(err) = not_indivisible(c) {
        return Err(err);
    }
    let n = c.n();
    let name = match direction {
        Direction::Win => "fair_bets",
        Direction::Loss => "fair_bets-loss",
    };
    let params = MethodParams {
        direction: Some(direction),
        ..MethodParams::default()
    };
    if n == 1 {
        return Ok(ScoreVector::new(
            name,
            vec![1.0],
            Normalization::SumOne,
            SolveDiagnostics::exact(0.0),
            params,
        ));
    }
    let degrees = c.degree_summary();
    let (outcome, diag_weights) = match direction {
        Direction::Win => (c.outcomes().clone(), degrees.loss_total.clone()),
        Direction::Loss => (c.outcomes().transpose(), degrees.win_total.clone()),
    };
    // diag(weights) - outcome has rank n-1 with zero column sums, so any row
    // may be replaced by the normalization sum(w) = 1.
    let mut system = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            *system.get_mut(i, j) = if i == j { diag_weights[i] } else { 0.0 } - outcome.get(i, j);
        }
    }
    for j in 0..n {
        *system.get_mut(n - 1, j) = 1.0;
    }
    let mut rhs = vec![0.0; n];
    rhs[n - 1] = 1.0;
    let scores = solve_linear(&system, &rhs)?;
    let mut residual = 0.0f64;
    for i in 0..n {
        let mut balance = scores[i] * diag_weights[i];
        for j in 0..n {
            balance -= outcome.get(i, j) * scores[j];
        }
        residual = residual.max(balance.abs());
    }
    if residual > 1e-10 || scores.iter().any(|&s| s <= 0.0) {
        return Err(Error::NoConvergence {
            diag: SolveDiagnostics {
                iterations: 0,
                residual,
                converged: false,
            },
        });
    }
    Ok(ScoreVector::new(
        name,
        scores,
        Normalization::SumOne,
        SolveDiagnostics {
            iterations: 0,
            residual,
            converged: true,
        },
        params,
    ))
}

/// Solves a linear system and runs one iterative refinement pass.
fn solve_refined(m: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    let mut x = solve_linear(m, b)?;
    let mx = m.mul_vec(&x);
    let correction_rhs: Vec<f64> = b.iter().zip(&mx).map(|(bi, mi)| bi - mi).collect();
    if let Ok(correction) = solve_linear(m, &correction_rhs) {
        for (xi, ci) in x.iter_mut().zip(&correction) {
            *xi += ci;
        }
    }
    Ok(x)
}

/// Least-squares scores: the minimizer of the squared deviations between the
/// per-judge skew outcomes and score differences, pinned by `sum(s) = 0`.
/// Requires a connected comparison multigraph with every alternative compared
/// at least once.
pub fn least_squares_scores(p: &Profile) -> Result<ScoreVector> {
    if !p.is_connected() {
        return Err(Error::Disconnected);
    }
    let c = p.cumulative();
    let degrees = c.degree_summary();
    if let Some(index) = degrees.comparisons.iter().position(|&m| m == 0) {
        return Err(Error::IsolatedAlternative { index });
    }
    let n = p.n();
    // Normal equations: m_i s_i - sum_j n_ij s_j = sum_j r_ij, a graph
    // Laplacian of rank n-1; the last row is replaced by sum(s) = 0.
    let mut laplacian = Matrix::zeros(n);
    let mut rhs = vec![0.0; n];
    for i in 0..n {
        *laplacian.get_mut(i, i) = degrees.comparisons[i] as f64;
        for j in 0..n {
            if i != j {
                *laplacian.get_mut(i, j) -= c.count(i, j) as f64;
            }
            rhs[i] += c.skew().get(i, j);
        }
    }
    let mut system = laplacian.clone();
    let mut system_rhs = rhs.clone();
    for j in 0..n {
        *system.get_mut(n - 1, j) = 1.0;
    }
    system_rhs[n - 1] = 0.0;
    let mut scores = solve_refined(&system, &system_rhs)?;
    // Shifting by a constant leaves the normal equations untouched; re-center
    // so the tag holds exactly.
    let mean = scores.iter().sum::<f64>() / n as f64;
    scores.iter_mut().for_each(|s| *s -= mean);
    let residual = numerics::max_abs_diff(&laplacian.mul_vec(&scores), &rhs);
    Ok(ScoreVector::new(
        "least_squares",
        scores,
        Normalization::SumZero,
        SolveDiagnostics {
            iterations: 0,
            residual,
            converged: true,
        },
        MethodParams::default(),
    ))
}

/// Largest admissible epsilon for the generalized row sum: `1/(m(n-2))` for
/// `n >= 3`; unbounded for smaller profiles.
pub fn grs_max_epsilon(n: usize, m: usize) -> f64 {
    if n >= 3 {
        1.0 / (m as f64 * (n - 2) as f64)
    } else {
        f64::INFINITY
    }
}

fn grs_default_epsilon(n: usize, m: usize) -> f64 {
    if n >= 3 {
        grs_max_epsilon(n, m)
    } else {
        1.0 / m as f64
    }
}

/// Generalized row sum scores: the unique solution of
/// `(1 + eps*m_i) s_i - eps * sum_j n_ij s_j = eps * gamma * sum_j r_ij` with
/// `gamma = mn + 1/eps`. Applicable to every profile; defaults to the largest
/// admissible epsilon.
pub fn grs_scores(p: &Profile, epsilon: Option<f64>) -> Result<ScoreVector> {
    let (n, m) = (p.n(), p.m());
    let max = grs_max_epsilon(n, m);
    let eps = epsilon.unwrap_or_else(|| grs_default_epsilon(n, m));
    if !(eps > 0.0 && eps <= max) {
        return Err(Error::EpsilonOutOfRange {
            epsilon: eps,
            min: 0.0,
            max,
        });
    }
    let gamma = (m * n) as f64 + 1.0 / eps;
    let c = p.cumulative();
    let degrees = c.degree_summary();
    let mut system = Matrix::zeros(n);
    let mut rhs = vec![0.0; n];
    for i in 0..n {
        *system.get_mut(i, i) = 1.0 + eps * degrees.comparisons[i] as f64;
        for j in 0..n {
            if i != j {
                *system.get_mut(i, j) -= eps * c.count(i, j) as f64;
            }
            rhs[i] += c.skew().get(i, j);
        }
        rhs[i] *= eps * gamma;
    }
    let scores = solve_refined(&system, &rhs)?;
    // Judge-wise residual of the defining equations, straight off the profile.
    let residual = grs_residuals(p, &scores, eps, gamma)
        .iter()
        .fold(0.0f64, |acc, r| acc.max(r.abs()));
    if residual > 1e-10 {
        return Err(Error::NoConvergence {
            diag: SolveDiagnostics {
                iterations: 0,
                residual,
                converged: false,
            },
        });
    }
    Ok(ScoreVector::new(
        "grs",
        scores,
        Normalization::None,
        SolveDiagnostics {
            iterations: 0,
            residual,
            converged: true,
        },
        MethodParams {
            epsilon: Some(eps),
            gamma: Some(gamma),
            ..MethodParams::default()
        },
    ))
}

fn grs_residuals(p: &Profile, s: &[f64], eps: f64, gamma: f64) -> Vec<f64> {
    let mut residuals = vec![0.0; p.n()];
    for ballot in p.judges() {
        for cmp in &ballot.comparisons {
            let skew_a = cmp.value_for_a() - cmp.value_for_b();
            residuals[cmp.a] += eps * (gamma * skew_a - (s[cmp.a] - s[cmp.b]));
            residuals[cmp.b] += eps * (gamma * -skew_a - (s[cmp.b] - s[cmp.a]));
        }
    }
    for (i, r) in residuals.iter_mut().enumerate() {
        *r -= s[i];
    }
    residuals
}

/// One of the implicit score systems `f_i(s) = 0` of the self-consistent
/// family, bundling the residual, the feasible region, the fixed-point step,
/// and the normalization it pins its solutions with.
#[derive(Debug, Clone, PartialEq)]
pub struct ImplicitSystem {
    kind: SystemKind,
    epsilon: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SystemKind {
    ZermeloBt,
    Daniels,
    Cowden,
    Grs,
}

impl ImplicitSystem {
    /// Zermelo / Bradley-Terry: `f_i = sum_{j,p} (a_ij^p - s_i/(s_i+s_j))`.
    pub fn zermelo_bt() -> ImplicitSystem {
        ImplicitSystem {
            kind: SystemKind::ZermeloBt,
            epsilon: None,
        }
    }

    /// Daniels: `f_i = sum_j (a_ij s_j/s_i - a_ji s_i/s_j)` over cumulative
    /// outcomes.
    pub fn daniels() -> ImplicitSystem {
        ImplicitSystem {
            kind: SystemKind::Daniels,
            epsilon: None,
        }
    }

    /// Cowden: `f_i = sum_j (a_ij s_j (1-s_i) - a_ji s_i (1-s_j))` over
    /// cumulative outcomes, scores kept inside (0, 1).
    pub fn cowden() -> ImplicitSystem {
        ImplicitSystem {
            kind: SystemKind::Cowden,
            epsilon: None,
        }
    }

    /// Generalized row sum in implicit form,
    /// `f_i = eps * sum_{j,p} (gamma r_ij^p - (s_i - s_j)) - s_i`; solved
    /// exactly by the linear route.
    pub fn grs(epsilon: Option<f64>) -> ImplicitSystem {
        ImplicitSystem {
            kind: SystemKind::Grs,
            epsilon,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            SystemKind::ZermeloBt => "zermelo_bt",
            SystemKind::Daniels => "daniels",
            SystemKind::Cowden => "cowden",
            SystemKind::Grs => "grs",
        }
    }

    /// Whether the system's domain is restricted to indivisible profiles.
    pub fn requires_indivisible(&self) -> bool {
        !matches!(self.kind, SystemKind::Grs)
    }

    pub fn normalization(&self) -> Normalization {
        match self.kind {
            SystemKind::ZermeloBt | SystemKind::Daniels => Normalization::SumOne,
            SystemKind::Cowden | SystemKind::Grs => Normalization::None,
        }
    }

    /// The per-alternative residuals `f_i(s)`.
    pub fn residuals(&self, p: &Profile, s: &[f64]) -> Vec<f64> {
        let n = p.n();
        match self.kind {
            SystemKind::ZermeloBt => {
                let mut f = vec![0.0; n];
                for ballot in p.judges() {
                    for cmp in &ballot.comparisons {
                        let share_a = s[cmp.a] / (s[cmp.a] + s[cmp.b]);
                        f[cmp.a] += cmp.value_for_a() - share_a;
                        f[cmp.b] += cmp.value_for_b() - (1.0 - share_a);
                    }
                }
                f
            }
            SystemKind::Daniels => {
                let a = p.cumulative();
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                a.outcomes().get(i, j) * s[j] / s[i]
                                    - a.outcomes().get(j, i) * s[i] / s[j]
                            })
                            .sum()
                    })
                    .collect()
            }
            SystemKind::Cowden => {
                let a = p.cumulative();
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                a.outcomes().get(i, j) * s[j] * (1.0 - s[i])
                                    - a.outcomes().get(j, i) * s[i] * (1.0 - s[j])
                            })
                            .sum()
                    })
                    .collect()
            }
            SystemKind::Grs => {
                let eps = self
                    .epsilon
                    .unwrap_or_else(|| grs_default_epsilon(n, p.m()));
                let gamma = (p.m() * n) as f64 + 1.0 / eps;
                grs_residuals(p, s, eps, gamma)
            }
        }
    }

    /// Whether `s` lies in the system's feasible region.
    pub fn feasible(&self, s: &[f64]) -> bool {
        match self.kind {
            SystemKind::ZermeloBt | SystemKind::Daniels => s.iter().all(|&x| x > 0.0),
            SystemKind::Cowden => s.iter().all(|&x| x > 0.0 && x < 1.0),
            SystemKind::Grs => true,
        }
    }

    fn initial(&self, n: usize) -> Vec<f64> {
        match self.kind {
            SystemKind::ZermeloBt | SystemKind::Daniels => vec![1.0 / n as f64; n],
            SystemKind::Cowden => vec![0.5; n],
            SystemKind::Grs => vec![0.0; n],
        }
    }

    /// The fixed-point update. Zermelo and Daniels steps renormalize to sum
    /// one; Cowden's step maps into (0, 1) componentwise.
    pub fn step(&self, p: &Profile, c: &CumulativeMatrix, s: &[f64]) -> Vec<f64> {
        let n = p.n();
        let a = c.outcomes();
        match self.kind {
            SystemKind::ZermeloBt => {
                let degrees = c.degree_summary();
                let mut next: Vec<f64> = (0..n)
                    .map(|i| {
                        let denom: f64 = (0..n)
                            .map(|j| c.count(i, j) as f64 / (s[i] + s[j]))
                            .sum();
                        degrees.win_total[i] / denom
                    })
                    .collect();
                let total: f64 = next.iter().sum();
                next.iter_mut().for_each(|x| *x /= total);
                next
            }
            SystemKind::Daniels => {
                let mut next: Vec<f64> = (0..n)
                    .map(|i| {
                        let num: f64 = (0..n).map(|j| a.get(i, j) * s[j]).sum();
                        let den: f64 = (0..n).map(|j| a.get(j, i) / s[j]).sum();
                        (num / den).sqrt()
                    })
                    .collect();
                let total: f64 = next.iter().sum();
                next.iter_mut().for_each(|x| *x /= total);
                next
            }
            SystemKind::Cowden => (0..n)
                .map(|i| {
                    let p_i: f64 = (0..n).map(|j| a.get(i, j) * s[j]).sum();
                    let q_i: f64 = (0..n).map(|j| a.get(j, i) * (1.0 - s[j])).sum();
                    p_i / (p_i + q_i)
                })
                .collect(),
            SystemKind::Grs => s.to_vec(),
        }
    }
}

/// Solves an implicit system on a profile: domain check, fixed-point
/// iteration from the system's deterministic start, then a residual check of
/// the defining equations at 1e-10.
pub fn implicit_scores(sys: &ImplicitSystem, p: &Profile) -> Result<ScoreVector> {
    let c = p.cumulative();
    if sys.requires_indivisible() {
        if let Some(err) = not_indivisible(&c) {
            return Err(err);
        }
    }
    if let SystemKind::Grs = sys.kind {
        let mut sv = grs_scores(p, sys.epsilon)?;
        sv.method = sys.name().to_string();
        return Ok(sv);
    }
    let n = p.n();
    if n == 1 {
        let score = sys.initial(1);
        return Ok(ScoreVector::new(
            sys.name(),
            if sys.normalization() == Normalization::SumOne {
                vec![1.0]
            } else {
                score
            },
            sys.normalization(),
            SolveDiagnostics::exact(0.0),
            MethodParams::default(),
        ));
    }
    let (solution, diag) = fixed_point(
        |s| sys.step(p, &c, s),
        |s| sys.feasible(s),
        sys.initial(n),
        1.0,
        1e-13,
        DEFAULT_MAX_ITER,
    )?;
    let residual = sys
        .residuals(p, &solution)
        .iter()
        .fold(0.0f64, |acc, r| acc.max(r.abs()));
    if residual > 1e-10 {
        return Err(Error::NoConvergence {
            diag: SolveDiagnostics {
                iterations: diag.iterations,
                residual,
                converged: false,
            },
        });
    }
    Ok(ScoreVector::new(
        sys.name(),
        solution,
        sys.normalization(),
        SolveDiagnostics {
            iterations: diag.iterations,
            residual,
            converged: true,
        },
        MethodParams::default(),
    ))
}

/// How a win/loss score family is turned into a single score vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairEval {
    Single(Direction),
    Combined(CombineMode),
}

/// A fully specified scoring method, dispatchable on any profile.
#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    RowSum,
    Wei(Direction),
    Hasse,
    Ramanujacharyulu,
    Ktt {
        epsilon: Option<f64>,
        variant: MatrixVariant,
        eval: PairEval,
    },
    FairBets(PairEval),
    LeastSquares,
    Grs {
        epsilon: Option<f64>,
    },
    ZermeloBt,
    Daniels,
    Cowden,
}

impl Method {
    /// Canonical method name as used by the CLI and in reports.
    pub fn name(&self) -> String {
        match self {
            Method::RowSum => "row_sum".into(),
            Method::Wei(Direction::Win) => "wei".into(),
            Method::Wei(Direction::Loss) => "wei-loss".into(),
            Method::Hasse => "hasse".into(),
            Method::Ramanujacharyulu => "ramanujacharyulu".into(),
            Method::Ktt { eval, .. } => match eval {
                PairEval::Single(Direction::Win) => "ktt".into(),
                PairEval::Single(Direction::Loss) => "ktt-loss".into(),
                PairEval::Combined(CombineMode::Difference) => "ktt-difference".into(),
                PairEval::Combined(CombineMode::Ratio) => "ktt-ratio".into(),
            },
            Method::FairBets(eval) => match eval {
                PairEval::Single(Direction::Win) => "fair_bets".into(),
                PairEval::Single(Direction::Loss) => "fair_bets-loss".into(),
                PairEval::Combined(CombineMode::Difference) => "fair_bets-difference".into(),
                PairEval::Combined(CombineMode::Ratio) => "fair_bets-ratio".into(),
            },
            Method::LeastSquares => "least_squares".into(),
            Method::Grs { .. } => "grs".into(),
            Method::ZermeloBt => "zermelo_bt".into(),
            Method::Daniels => "daniels".into(),
            Method::Cowden => "cowden".into(),
        }
    }

    /// Parses a method name, including the `-difference` / `-ratio` /
    /// `-loss` compound forms.
    pub fn parse(name: &str) -> Option<Method> {
        Some(match name {
            "row_sum" => Method::RowSum,
            "wei" => Method::Wei(Direction::Win),
            "wei-loss" => Method::Wei(Direction::Loss),
            "hasse" => Method::Hasse,
            "ramanujacharyulu" => Method::Ramanujacharyulu,
            "ktt" => Method::Ktt {
                epsilon: None,
                variant: MatrixVariant::Outcomes,
                eval: PairEval::Single(Direction::Win),
            },
            "ktt-loss" => Method::Ktt {
                epsilon: None,
                variant: MatrixVariant::Outcomes,
                eval: PairEval::Single(Direction::Loss),
            },
            "ktt-difference" => Method::Ktt {
                epsilon: None,
                variant: MatrixVariant::Outcomes,
                eval: PairEval::Combined(CombineMode::Difference),
            },
            "ktt-ratio" => Method::Ktt {
                epsilon: None,
                variant: MatrixVariant::Outcomes,
                eval: PairEval::Combined(CombineMode::Ratio),
            },
            "fair_bets" => Method::FairBets(PairEval::Single(Direction::Win)),
            "fair_bets-loss" => Method::FairBets(PairEval::Single(Direction::Loss)),
            "fair_bets-difference" => Method::FairBets(PairEval::Combined(CombineMode::Difference)),
            "fair_bets-ratio" => Method::FairBets(PairEval::Combined(CombineMode::Ratio)),
            "least_squares" => Method::LeastSquares,
            "grs" => Method::Grs { epsilon: None },
            "zermelo_bt" => Method::ZermeloBt,
            "daniels" => Method::Daniels,
            "cowden" => Method::Cowden,
            _ => return None,
        })
    }

    /// Computes this method's scores on a profile.
    pub fn scores(&self, p: &Profile) -> Result<ScoreVector> {
        let c = p.cumulative();
        match self {
            Method::RowSum => Ok(row_sum_scores(p)),
            Method::Wei(direction) => Ok(wei_scores(&c, *direction)?.0),
            Method::Hasse => {
                let sv = combined_wei(&c, CombineMode::Difference)?;
                Ok(rename(sv, "hasse"))
            }
            Method::Ramanujacharyulu => {
                let sv = combined_wei(&c, CombineMode::Ratio)?;
                Ok(rename(sv, "ramanujacharyulu"))
            }
            Method::Ktt {
                epsilon,
                variant,
                eval,
            } => match eval {
                PairEval::Single(direction) => ktt_scores(&c, *epsilon, *variant, *direction),
                PairEval::Combined(mode) => {
                    let win = ktt_scores(&c, *epsilon, *variant, Direction::Win)?;
                    let loss = ktt_scores(&c, *epsilon, *variant, Direction::Loss)?;
                    let pair = WinLossPair {
                        win_scores: win.scores,
                        loss_scores: loss.scores,
                    };
                    let mut sv = combine(&pair, *mode)?;
                    sv.params.epsilon = win.params.epsilon;
                    sv.params.variant = Some(*variant);
                    Ok(rename(sv, &self.name()))
                }
            },
            Method::FairBets(eval) => match eval {
                PairEval::Single(direction) => fair_bets_scores(&c, *direction),
                PairEval::Combined(mode) => {
                    let win = fair_bets_scores(&c, Direction::Win)?;
                    let loss = fair_bets_scores(&c, Direction::Loss)?;
                    let pair = WinLossPair {
                        win_scores: win.scores,
                        loss_scores: loss.scores,
                    };
                    let sv = combine(&pair, *mode)?;
                    Ok(rename(sv, &self.name()))
                }
            },
            Method::LeastSquares => least_squares_scores(p),
            Method::Grs { epsilon } => grs_scores(p, *epsilon),
            Method::ZermeloBt => implicit_scores(&ImplicitSystem::zermelo_bt(), p),
            Method::Daniels => implicit_scores(&ImplicitSystem::daniels(), p),
            Method::Cowden => implicit_scores(&ImplicitSystem::cowden(), p),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name())
    }
}

fn combined_wei(c: &CumulativeMatrix, mode: CombineMode) -> Result<ScoreVector> {
    let (win, lambda) = wei_scores(c, Direction::Win)?;
    let (loss, _) = wei_scores(c, Direction::Loss)?;
    let pair = WinLossPair {
        win_scores: win.scores,
        loss_scores: loss.scores,
    };
    let mut sv = combine(&pair, mode)?;
    sv.params.lambda = Some(lambda);
    sv.diagnostics = SolveDiagnostics {
        iterations: win.diagnostics.iterations.max(loss.diagnostics.iterations),
        residual: win.diagnostics.residual.max(loss.diagnostics.residual),
        converged: true,
    };
    Ok(sv)
}

fn rename(mut sv: ScoreVector, name: &str) -> ScoreVector {
    sv.method = name.to_string();
    sv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::profile::Outcome;
    use approx::assert_abs_diff_eq;

    fn fig1() -> Profile {
        fixtures::fixture("fig1").unwrap().profile.unwrap()
    }

    fn three_cycle() -> Profile {
        Profile::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![vec![
                ("1".into(), "2".into(), Outcome::AWins),
                ("2".into(), "3".into(), Outcome::AWins),
                ("3".into(), "1".into(), Outcome::AWins),
            ]],
        )
        .unwrap()
    }

    /// 1 beats 2 twice, 2 beats 1 once.
    fn two_one() -> Profile {
        Profile::new(
            vec!["1".into(), "2".into()],
            vec![
                vec![("1".into(), "2".into(), Outcome::AWins)],
                vec![("1".into(), "2".into(), Outcome::AWins)],
                vec![("1".into(), "2".into(), Outcome::BWins)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn row_sum_examples() {
        assert_eq!(row_sum_scores(&fig1()).scores, vec![4.5, 1.5, 1.5, 1.5]);

        let win = Profile::new(
            vec!["1".into(), "2".into()],
            vec![vec![("1".into(), "2".into(), Outcome::AWins)]],
        )
        .unwrap();
        assert_eq!(row_sum_scores(&win).scores, vec![1.0, 0.0]);

        let draw = Profile::new(
            vec!["1".into(), "2".into()],
            vec![vec![("1".into(), "2".into(), Outcome::Draw)]],
        )
        .unwrap();
        assert_eq!(row_sum_scores(&draw).scores, vec![0.5, 0.5]);
    }

    #[test]
    fn wei_three_cycle_uniform() {
        let (sv, lambda) = wei_scores(&three_cycle().cumulative(), Direction::Win).unwrap();
        assert_abs_diff_eq!(lambda, 1.0, epsilon = 1e-9);
        for s in sv.scores {
            assert_abs_diff_eq!(s, 1.0 / 3.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn wei_two_player() {
        let (sv, lambda) = wei_scores(&two_one().cumulative(), Direction::Win).unwrap();
        let sqrt2 = 2.0_f64.sqrt();
        assert_abs_diff_eq!(lambda, sqrt2, epsilon = 1e-9);
        assert_abs_diff_eq!(sv.scores[0], sqrt2 / (1.0 + sqrt2), epsilon = 1e-9);
        assert_abs_diff_eq!(sv.scores[1], 1.0 / (1.0 + sqrt2), epsilon = 1e-9);
        assert!(sv.diagnostics.residual <= 1e-10);
    }

    #[test]
    fn wei_rejects_divisible() {
        let err = wei_scores(&fig1().cumulative(), Direction::Win).unwrap_err();
        assert_eq!(err.code(), "NOT_INDIVISIBLE");
    }

    #[test]
    fn wei_directions_coincide_on_symmetric() {
        let p = Profile::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![vec![
                ("1".into(), "2".into(), Outcome::Draw),
                ("2".into(), "3".into(), Outcome::Draw),
                ("1".into(), "3".into(), Outcome::Draw),
            ]],
        )
        .unwrap();
        let c = p.cumulative();
        let (win, _) = wei_scores(&c, Direction::Win).unwrap();
        let (loss, _) = wei_scores(&c, Direction::Loss).unwrap();
        let pair = WinLossPair {
            win_scores: win.scores,
            loss_scores: loss.scores,
        };
        let diff = combine(&pair, CombineMode::Difference).unwrap();
        for d in diff.scores {
            assert_abs_diff_eq!(d, 0.0, epsilon = 1e-9);
        }
        let ratio = combine(&pair, CombineMode::Ratio).unwrap();
        for r in ratio.scores {
            assert_abs_diff_eq!(r, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn combine_two_player_values() {
        let pair = WinLossPair {
            win_scores: vec![2.0 / 3.0, 1.0 / 3.0],
            loss_scores: vec![1.0 / 3.0, 2.0 / 3.0],
        };
        let diff = combine(&pair, CombineMode::Difference).unwrap();
        assert_abs_diff_eq!(diff.scores[0], 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(diff.scores[1], -1.0 / 3.0, epsilon = 1e-12);
        let ratio = combine(&pair, CombineMode::Ratio).unwrap();
        assert_abs_diff_eq!(ratio.scores[0], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ratio.scores[1], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn combine_ratio_zero_loss() {
        let pair = WinLossPair {
            win_scores: vec![1.0, 1.0],
            loss_scores: vec![1.0, 0.0],
        };
        assert_eq!(
            combine(&pair, CombineMode::Ratio).unwrap_err().code(),
            "DIVIDE_BY_ZERO"
        );
    }

    #[test]
    fn taylor_matrix_examples() {
        let c = fig1().cumulative();
        let t = taylor_matrix(&c);
        assert_eq!(t.get(0, 1), 3.0);
        for i in 0..4 {
            for j in 0..4 {
                if (i, j) != (0, 1) {
                    assert_eq!(t.get(i, j), 0.0);
                }
            }
        }

        // pure-win digraph: margins equal outcomes
        let c = three_cycle().cumulative();
        assert_eq!(taylor_matrix(&c), c.outcomes().clone());

        let draw = Profile::new(
            vec!["1".into(), "2".into()],
            vec![vec![("1".into(), "2".into(), Outcome::Draw)]],
        )
        .unwrap();
        let t = taylor_matrix(&draw.cumulative());
        assert_eq!(t.get(0, 1), 0.0);
        assert_eq!(t.get(1, 0), 0.0);
    }

    #[test]
    fn ktt_zero_epsilon_is_row_sums() {
        let c = fig1().cumulative();
        let sv = ktt_scores(&c, Some(0.0), MatrixVariant::Outcomes, Direction::Win).unwrap();
        let expected = vec![4.5, 1.5, 1.5, 1.5];
        for (s, e) in sv.scores.iter().zip(&expected) {
            assert_abs_diff_eq!(s, e, epsilon = 1e-10);
        }
    }

    #[test]
    fn ktt_three_cycle_symmetric() {
        let c = three_cycle().cumulative();
        let sv = ktt_scores(&c, Some(0.5), MatrixVariant::Outcomes, Direction::Win).unwrap();
        assert_abs_diff_eq!(sv.scores[0], sv.scores[1], epsilon = 1e-10);
        assert_abs_diff_eq!(sv.scores[1], sv.scores[2], epsilon = 1e-10);
    }

    #[test]
    fn ktt_nilpotent_any_epsilon() {
        let a = Matrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        let c = CumulativeMatrix::from_outcome_totals(a);
        for eps in [0.0, 1.0, 5.0, 100.0] {
            let sv = ktt_scores(&c, Some(eps), MatrixVariant::Outcomes, Direction::Win).unwrap();
            assert_abs_diff_eq!(sv.scores[0], 1.0, epsilon = 1e-10);
            assert_abs_diff_eq!(sv.scores[1], 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn ktt_loss_direction_over_margins() {
        // fig1's margins matrix has a single entry C_12 = 3, so at eps = 0
        // the loss scores are its column sums
        let c = fig1().cumulative();
        let sv = ktt_scores(&c, Some(0.0), MatrixVariant::Margins, Direction::Loss).unwrap();
        let expected = [0.0, 3.0, 0.0, 0.0];
        for (s, e) in sv.scores.iter().zip(&expected) {
            assert_abs_diff_eq!(s, e, epsilon = 1e-10);
        }
    }

    #[test]
    fn ktt_epsilon_out_of_range() {
        let c = three_cycle().cumulative(); // spectral radius 1
        for eps in [1.0, 2.0, -0.1] {
            let err = ktt_scores(&c, Some(eps), MatrixVariant::Outcomes, Direction::Win)
                .unwrap_err();
            assert_eq!(err.code(), "EPSILON_OUT_OF_RANGE");
        }
    }

    #[test]
    fn ktt_closed_form_matches_series() {
        let c = two_one().cumulative();
        let r = spectral_radius(c.outcomes()).unwrap();
        let eps = 0.5 / r;
        let sv = ktt_scores(&c, Some(eps), MatrixVariant::Outcomes, Direction::Win).unwrap();
        let series = ktt_series(c.outcomes(), eps, 50);
        for (a, b) in sv.scores.iter().zip(&series) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-8);
        }
    }

    #[test]
    fn spectral_radius_cases() {
        let nilpotent = Matrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        assert_eq!(spectral_radius(&nilpotent).unwrap(), 0.0);

        let cycle = three_cycle().cumulative();
        assert_abs_diff_eq!(spectral_radius(cycle.outcomes()).unwrap(), 1.0, epsilon = 1e-9);

        let two = two_one().cumulative();
        assert_abs_diff_eq!(
            spectral_radius(two.outcomes()).unwrap(),
            2.0_f64.sqrt(),
            epsilon = 1e-9
        );
    }

    #[test]
    fn fair_bets_three_cycle_uniform() {
        let sv = fair_bets_scores(&three_cycle().cumulative(), Direction::Win).unwrap();
        for s in sv.scores {
            assert_abs_diff_eq!(s, 1.0 / 3.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn fair_bets_two_player() {
        let c = two_one().cumulative();
        let win = fair_bets_scores(&c, Direction::Win).unwrap();
        assert_abs_diff_eq!(win.scores[0], 2.0 / 3.0, epsilon = 1e-10);
        assert_abs_diff_eq!(win.scores[1], 1.0 / 3.0, epsilon = 1e-10);
        assert!(win.diagnostics.residual <= 1e-10);

        let loss = fair_bets_scores(&c, Direction::Loss).unwrap();
        assert_abs_diff_eq!(loss.scores[0], 1.0 / 3.0, epsilon = 1e-10);
        assert_abs_diff_eq!(loss.scores[1], 2.0 / 3.0, epsilon = 1e-10);
    }

    #[test]
    fn fair_bets_matches_arborescence_oracle() {
        use crate::oracles::arborescence_weights;
        // weighted 3-cycle plus a back arc
        let a = Matrix::from_rows(&[
            vec![0.0, 2.0, 0.5],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
        ]);
        let c = CumulativeMatrix::from_outcome_totals(a);
        let sv = fair_bets_scores(&c, Direction::Win).unwrap();
        let weights = arborescence_weights(c.outcomes());
        let total: f64 = weights.iter().sum();
        for (s, w) in sv.scores.iter().zip(&weights) {
            assert_abs_diff_eq!(*s, w / total, epsilon = 1e-8);
        }
    }

    #[test]
    fn least_squares_fig1() {
        let sv = least_squares_scores(&fig1()).unwrap();
        let expected = [0.5, -0.5, 0.5, -0.5];
        for (s, e) in sv.scores.iter().zip(&expected) {
            assert_abs_diff_eq!(s, e, epsilon = 1e-9);
        }
        assert_eq!(sv.normalization, Normalization::SumZero);
        assert!(sv.diagnostics.residual <= 1e-10);
    }

    #[test]
    fn least_squares_chain() {
        let p = Profile::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![vec![
                ("1".into(), "2".into(), Outcome::AWins),
                ("2".into(), "3".into(), Outcome::AWins),
            ]],
        )
        .unwrap();
        let sv = least_squares_scores(&p).unwrap();
        let expected = [1.0, 0.0, -1.0];
        for (s, e) in sv.scores.iter().zip(&expected) {
            assert_abs_diff_eq!(s, e, epsilon = 1e-9);
        }
    }

    #[test]
    fn least_squares_preconditions() {
        let disconnected = Profile::new(
            vec!["1".into(), "2".into(), "3".into(), "4".into()],
            vec![vec![
                ("1".into(), "2".into(), Outcome::AWins),
                ("3".into(), "4".into(), Outcome::AWins),
            ]],
        )
        .unwrap();
        assert_eq!(
            least_squares_scores(&disconnected).unwrap_err().code(),
            "DISCONNECTED"
        );

        let isolated = Profile::new(vec!["1".into()], vec![vec![]]).unwrap();
        assert_eq!(
            least_squares_scores(&isolated).unwrap_err().code(),
            "ISOLATED_ALTERNATIVE"
        );
    }

    #[test]
    fn grs_symmetric_profiles_zero() {
        let even = Profile::new(
            vec!["1".into(), "2".into()],
            vec![
                vec![("1".into(), "2".into(), Outcome::AWins)],
                vec![("1".into(), "2".into(), Outcome::BWins)],
            ],
        )
        .unwrap();
        let sv = grs_scores(&even, None).unwrap();
        for s in sv.scores {
            assert_abs_diff_eq!(s, 0.0, epsilon = 1e-12);
        }

        let sv = grs_scores(&three_cycle(), Some(1.0)).unwrap();
        for s in sv.scores {
            assert_abs_diff_eq!(s, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn grs_fig1_hand_solution() {
        // eps = 1/18 means gamma = 54. Row 3 gives (7/6)s3 = (1/6)s1, and the
        // 1<->2, 3<->4 antisymmetry gives s2 = -s1; substituting into row 1
        // leaves s1 (4/3 + 1/6 - 1/42) = 9, i.e. s1 = 189/31.
        let sv = grs_scores(&fig1(), Some(1.0 / 18.0)).unwrap();
        assert_abs_diff_eq!(sv.params.gamma.unwrap(), 54.0, epsilon = 1e-12);
        let expected = [189.0 / 31.0, -189.0 / 31.0, 27.0 / 31.0, -27.0 / 31.0];
        for (s, e) in sv.scores.iter().zip(&expected) {
            assert_abs_diff_eq!(s, e, epsilon = 1e-9);
        }
        assert!(sv.scores[0] > sv.scores[1]);
        assert!(sv.scores[2] > sv.scores[3]);
        assert!(sv.diagnostics.residual <= 1e-10);
    }

    #[test]
    fn grs_epsilon_out_of_range() {
        let err = grs_scores(&fig1(), Some(1.0)).unwrap_err();
        assert_eq!(err.code(), "EPSILON_OUT_OF_RANGE");
        let err = grs_scores(&fig1(), Some(0.0)).unwrap_err();
        assert_eq!(err.code(), "EPSILON_OUT_OF_RANGE");
    }

    #[test]
    fn grs_bound_degenerates_below_three() {
        assert_eq!(grs_max_epsilon(2, 5), f64::INFINITY);
        let even = Profile::new(
            vec!["1".into(), "2".into()],
            vec![vec![("1".into(), "2".into(), Outcome::AWins)]],
        )
        .unwrap();
        assert!(grs_scores(&even, Some(10.0)).is_ok());
    }

    #[test]
    fn zermelo_two_player_ratio_two() {
        let sv = implicit_scores(&ImplicitSystem::zermelo_bt(), &two_one()).unwrap();
        assert_abs_diff_eq!(sv.scores[0] / sv.scores[1], 2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(sv.scores[0], 2.0 / 3.0, epsilon = 1e-8);
    }

    #[test]
    fn daniels_two_player_ratio_sqrt_two() {
        let sv = implicit_scores(&ImplicitSystem::daniels(), &two_one()).unwrap();
        assert_abs_diff_eq!(sv.scores[0] / sv.scores[1], 2.0_f64.sqrt(), epsilon = 1e-8);
    }

    #[test]
    fn cowden_two_player_fixed_point() {
        let sv = implicit_scores(&ImplicitSystem::cowden(), &two_one()).unwrap();
        // the solution family cut by s1 + s2 = 1 has s1 = 2 - sqrt(2)
        assert_abs_diff_eq!(sv.scores[0], 2.0 - 2.0_f64.sqrt(), epsilon = 1e-8);
        assert_abs_diff_eq!(sv.scores[1], 2.0_f64.sqrt() - 1.0, epsilon = 1e-8);
    }

    #[test]
    fn implicit_symmetric_profile_equal_scores() {
        let even = Profile::new(
            vec!["1".into(), "2".into()],
            vec![
                vec![("1".into(), "2".into(), Outcome::AWins)],
                vec![("1".into(), "2".into(), Outcome::BWins)],
            ],
        )
        .unwrap();
        for sys in [
            ImplicitSystem::zermelo_bt(),
            ImplicitSystem::daniels(),
            ImplicitSystem::cowden(),
            ImplicitSystem::grs(None),
        ] {
            let sv = implicit_scores(&sys, &even).unwrap();
            assert_abs_diff_eq!(sv.scores[0], sv.scores[1], epsilon = 1e-9);
        }
    }

    #[test]
    fn implicit_grs_delegates_to_linear_route() {
        let direct = grs_scores(&fig1(), Some(1.0 / 18.0)).unwrap();
        let implicit = implicit_scores(&ImplicitSystem::grs(Some(1.0 / 18.0)), &fig1()).unwrap();
        assert_eq!(direct.scores, implicit.scores);
    }

    #[test]
    fn residual_formulas_match_hand_values() {
        let p = two_one();
        let at_half = [0.5, 0.5];

        let z = ImplicitSystem::zermelo_bt().residuals(&p, &at_half);
        assert_abs_diff_eq!(z[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(z[1], -0.5, epsilon = 1e-12);

        let d = ImplicitSystem::daniels().residuals(&p, &at_half);
        assert_abs_diff_eq!(d[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d[1], -1.0, epsilon = 1e-12);

        let c = ImplicitSystem::cowden().residuals(&p, &at_half);
        assert_abs_diff_eq!(c[0], 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(c[1], -0.25, epsilon = 1e-12);

        let grs = ImplicitSystem::grs(Some(1.0 / 18.0));
        let solution = grs_scores(&fig1(), Some(1.0 / 18.0)).unwrap();
        for r in grs.residuals(&fig1(), &solution.scores) {
            assert_abs_diff_eq!(r, 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn implicit_domain_check() {
        for sys in [
            ImplicitSystem::zermelo_bt(),
            ImplicitSystem::daniels(),
            ImplicitSystem::cowden(),
        ] {
            assert_eq!(
                implicit_scores(&sys, &fig1()).unwrap_err().code(),
                "NOT_INDIVISIBLE"
            );
        }
        assert!(implicit_scores(&ImplicitSystem::grs(None), &fig1()).is_ok());
    }

    #[test]
    fn method_names_round_trip() {
        for name in [
            "row_sum",
            "wei",
            "wei-loss",
            "hasse",
            "ramanujacharyulu",
            "ktt",
            "ktt-loss",
            "ktt-difference",
            "ktt-ratio",
            "fair_bets",
            "fair_bets-loss",
            "fair_bets-difference",
            "fair_bets-ratio",
            "least_squares",
            "grs",
            "zermelo_bt",
            "daniels",
            "cowden",
        ] {
            let method = Method::parse(name).unwrap();
            assert_eq!(method.name(), name);
        }
        assert!(Method::parse("nope").is_none());
    }
}
