//! Small dense numerical kernels with explicit tolerance contracts: dominant
//! eigenpair by power iteration, linear solve by partial-pivot elimination,
//! and a damped fixed-point driver. Desk-scale only; no sparse machinery.

use crate::error::{Error, Result};

/// Default tolerance for the iterative kernels.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default iteration cap for the iterative kernels.
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Outcome report attached to every solver result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveDiagnostics {
    pub iterations: usize,
    /// Max-norm residual of the contract the solver advertises.
    pub residual: f64,
    pub converged: bool,
}

impl SolveDiagnostics {
    pub fn exact(residual: f64) -> SolveDiagnostics {
        SolveDiagnostics {
            iterations: 0,
            residual,
            converged: true,
        }
    }
}

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Matrix {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Matrix {
        let n = rows.len();
        let mut m = Matrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                *m.get_mut(i, j) = v;
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                *t.get_mut(j, i) = self.get(i, j);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        let mut out = vec![0.0; self.n];
        for i in 0..self.n {
            let mut acc = 0.0;
            for j in 0..self.n {
                acc += self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn max_row_sum(&self) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).sum())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Dominant eigenpair of a nonnegative matrix by power iteration.
///
/// The caller guarantees irreducibility (checked upstream through
/// indivisibility). Iterates on `M + sigma*I` so that periodic matrices such
/// as pure cycles still converge; the shift leaves the eigenvector unchanged
/// and is subtracted from the reported eigenvalue.
///
/// Returns `(lambda, v, diag)` with `v > 0`, `sum(v) = 1`, and
/// `||M v - lambda v||_inf <= tol * lambda`.
pub fn power_iteration(m: &Matrix, tol: f64, max_iter: usize) -> Result<(f64, Vec<f64>, SolveDiagnostics)> {
    let n = m.n();
    let start = vec![1.0 / n as f64; n];
    power_iteration_from(m, start, tol, max_iter)
}

/// Power iteration from an explicit positive start vector. Exposed so tests
/// can confirm the result is start-independent.
pub fn power_iteration_from(
    m: &Matrix,
    start: Vec<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<(f64, Vec<f64>, SolveDiagnostics)> {
    let n = m.n();
    assert!(n > 0 && start.len() == n);
    assert!(tol > 0.0);
    let sigma = 0.5 * m.max_row_sum();
    let mut v = start;
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= s);
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for it in 0..=max_iter {
        let mv = m.mul_vec(&v);
        lambda = mv.iter().sum();
        residual = mv
            .iter()
            .zip(&v)
            .map(|(&mvi, &vi)| (mvi - lambda * vi).abs())
            .fold(0.0, f64::max);
        if residual <= tol * lambda.max(f64::MIN_POSITIVE) {
            return Ok((
                lambda,
                v,
                SolveDiagnostics {
                    iterations: it,
                    residual,
                    converged: true,
                },
            ));
        }
        if it == max_iter {
            break;
        }
        let mut next: Vec<f64> = mv.iter().zip(&v).map(|(&mvi, &vi)| mvi + sigma * vi).collect();
        let total: f64 = next.iter().sum();
        if total <= 0.0 {
            // zero matrix with zero shift: the start vector is already an
            // eigenvector for lambda = 0
            return Ok((
                0.0,
                v,
                SolveDiagnostics {
                    iterations: it,
                    residual: 0.0,
                    converged: true,
                },
            ));
        }
        next.iter_mut().for_each(|x| *x /= total);
        v = next;
    }
    let _ = lambda;
    Err(Error::NoConvergence {
        diag: SolveDiagnostics {
            iterations: max_iter,
            residual,
            converged: false,
        },
    })
}

/// Solves `M x = b` by Gaussian elimination with partial pivoting.
///
/// Fails with `SINGULAR` if a pivot falls below 1e-12, or if the recomputed
/// residual violates `||Mx - b||_inf <= 1e-10 * (1 + ||b||_inf)` (the
/// post-condition is self-checking).
pub fn solve_linear(m: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    const PIVOT_MIN: f64 = 1e-12;
    const RESIDUAL_BOUND: f64 = 1e-10;
    let n = m.n();
    assert_eq!(b.len(), n);
    let mut aug = m.clone();
    let mut rhs = b.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();

    for col in 0..n {
        let (pivot_row, pivot_abs) = (col..n)
            .map(|r| (r, aug.get(perm[r], col).abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if pivot_abs < PIVOT_MIN {
            return Err(Error::Singular { pivot: pivot_abs });
        }
        perm.swap(col, pivot_row);
        let p = perm[col];
        let pivot = aug.get(p, col);
        for r in (col + 1)..n {
            let row = perm[r];
            let factor = aug.get(row, col) / pivot;
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                *aug.get_mut(row, c) -= factor * aug.get(p, c);
            }
            rhs[row] -= factor * rhs[p];
        }
    }

    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let row = perm[col];
        let mut acc = rhs[row];
        for c in (col + 1)..n {
            acc -= aug.get(row, c) * x[c];
        }
        x[col] = acc / aug.get(row, col);
    }

    let b_norm = b.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let residual = max_abs_diff(&m.mul_vec(&x), b);
    if residual > RESIDUAL_BOUND * (1.0 + b_norm) {
        return Err(Error::Singular { pivot: residual });
    }
    Ok(x)
}

/// Damped fixed-point iteration for `x = step(x)`.
///
/// `feasible` guards the iterate; leaving the region aborts with
/// `DOMAIN_EXIT`. Damping below 1 blends `x` with `step(x)`. If the residual
/// fails to decrease for ten consecutive iterations (a plateau or a
/// two-cycle), the damping drops to 0.5 once and the iteration continues.
pub fn fixed_point<S, F>(
    step: S,
    feasible: F,
    init: Vec<f64>,
    damping: f64,
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<f64>, SolveDiagnostics)>
where
    S: Fn(&[f64]) -> Vec<f64>,
    F: Fn(&[f64]) -> bool,
{
    assert!(damping > 0.0 && damping <= 1.0);
    assert!(tol > 0.0);
    let mut x = init;
    if !feasible(&x) {
        return Err(Error::DomainExit { iteration: 0 });
    }
    let mut damping = damping;
    let mut best_residual = f64::INFINITY;
    let mut stalled = 0usize;
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        let target = step(&x);
        residual = max_abs_diff(&x, &target);
        if residual <= tol {
            return Ok((
                x,
                SolveDiagnostics {
                    iterations: it,
                    residual,
                    converged: true,
                },
            ));
        }
        if residual < best_residual {
            best_residual = residual;
            stalled = 0;
        } else {
            stalled += 1;
            if stalled >= 10 && damping > 0.5 {
                damping = 0.5;
                stalled = 0;
            }
        }
        if damping == 1.0 {
            x = target;
        } else {
            for (xi, ti) in x.iter_mut().zip(&target) {
                *xi = (1.0 - damping) * *xi + damping * ti;
            }
        }
        if !feasible(&x) {
            return Err(Error::DomainExit { iteration: it });
        }
    }
    Err(Error::NoConvergence {
        diag: SolveDiagnostics {
            iterations: max_iter,
            residual: if max_iter == 0 { f64::INFINITY } else { residual },
            converged: false,
        },
    })
}
