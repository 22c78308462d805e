//! Brute-force reference implementations backing the test suites. These
//! enumerate rather than solve: they are slow, independent of the production
//! code paths, and intended only as ground truth in tests.

use crate::axioms::{OutcomeEntry, Requirement};
use crate::numerics::Matrix;

/// Weighted count of spanning arborescences diverging from each vertex: the
/// sum over spanning out-trees rooted there of the product of arc weights,
/// arcs being `u -> v` wherever `a[u][v] > 0`.
///
/// Enumerates one incoming arc per non-root vertex and keeps the acyclic
/// assignments; fine for the handful of vertices the tests use.
pub fn arborescence_weights(a: &Matrix) -> Vec<f64> {
    let n = a.n();
    (0..n).map(|root| arborescence_weight_for_root(a, root)).collect()
}

fn arborescence_weight_for_root(a: &Matrix, root: usize) -> f64 {
    let n = a.n();
    if n == 1 {
        return 1.0;
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let candidates: Vec<Vec<usize>> = others
        .iter()
        .map(|&v| (0..n).filter(|&u| u != v && a.get(u, v) > 0.0).collect())
        .collect();
    let mut parent = vec![usize::MAX; n];
    let mut total = 0.0;
    enumerate_parents(a, root, &others, &candidates, 0, 1.0, &mut parent, &mut total);
    total
}

#[allow(clippy::too_many_arguments)]
fn enumerate_parents(
    a: &Matrix,
    root: usize,
    others: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    product: f64,
    parent: &mut Vec<usize>,
    total: &mut f64,
) {
    if depth == others.len() {
        // every non-root vertex must reach the root through its parent chain
        for &start in others {
            let mut hops = 0;
            let mut v = start;
            while v != root {
                v = parent[v];
                hops += 1;
                if hops > others.len() {
                    return; // cycle
                }
            }
        }
        *total += product;
        return;
    }
    let v = others[depth];
    for &u in &candidates[depth] {
        parent[v] = u;
        enumerate_parents(
            a,
            root,
            others,
            candidates,
            depth + 1,
            product * a.get(u, v),
            parent,
            total,
        );
    }
    parent[v] = usize::MAX;
}

/// Exhaustive confrontation decision: enumerates every split of the two
/// multisets (surplus elements must be wins on the dominating side and
/// losses on the dominated side) and every bijection over the remainders,
/// comparing outcome values and opponent scores directly.
pub fn requirement_oracle(u_i: &[OutcomeEntry], u_j: &[OutcomeEntry], tol: f64) -> Requirement {
    let ones: Vec<usize> = (0..u_i.len()).filter(|&u| u_i[u].0 == 1.0).collect();
    let zeros: Vec<usize> = (0..u_j.len()).filter(|&v| u_j[v].0 == 0.0).collect();
    let mut best = Requirement::None;
    for i_mask in 0u32..(1 << ones.len()) {
        let set_aside_i: Vec<usize> = ones
            .iter()
            .enumerate()
            .filter(|(bit, _)| i_mask & (1 << bit) != 0)
            .map(|(_, &u)| u)
            .collect();
        let rem_i: Vec<usize> = (0..u_i.len()).filter(|u| !set_aside_i.contains(u)).collect();
        for j_mask in 0u32..(1 << zeros.len()) {
            let set_aside_j: Vec<usize> = zeros
                .iter()
                .enumerate()
                .filter(|(bit, _)| j_mask & (1 << bit) != 0)
                .map(|(_, &v)| v)
                .collect();
            let rem_j: Vec<usize> = (0..u_j.len()).filter(|v| !set_aside_j.contains(v)).collect();
            if rem_i.len() != rem_j.len() {
                continue;
            }
            let surplus = !set_aside_i.is_empty() || !set_aside_j.is_empty();
            let mut used = vec![false; rem_j.len()];
            let mut found_plain = false;
            if bijections(
                u_i, u_j, tol, &rem_i, &rem_j, 0, false, surplus, &mut used, &mut found_plain,
            ) {
                return Requirement::Strict;
            }
            if found_plain {
                best = Requirement::Weak;
            }
        }
    }
    best
}

/// Recursively tries every bijection; returns true once a strict witness is
/// complete, and flags `found_plain` when any witness completes.
#[allow(clippy::too_many_arguments)]
fn bijections(
    u_i: &[OutcomeEntry],
    u_j: &[OutcomeEntry],
    tol: f64,
    rem_i: &[usize],
    rem_j: &[usize],
    depth: usize,
    strict_so_far: bool,
    surplus: bool,
    used: &mut Vec<bool>,
    found_plain: &mut bool,
) -> bool {
    if depth == rem_i.len() {
        *found_plain = true;
        return surplus || strict_so_far;
    }
    let u = rem_i[depth];
    for slot in 0..rem_j.len() {
        if used[slot] {
            continue;
        }
        let v = rem_j[slot];
        let dominated = u_i[u].0 >= u_j[v].0 && u_i[u].1 >= u_j[v].1 - tol;
        if !dominated {
            continue;
        }
        let strict_pair = u_i[u].0 > u_j[v].0 || u_i[u].1 > u_j[v].1 + tol;
        used[slot] = true;
        if bijections(
            u_i,
            u_j,
            tol,
            rem_i,
            rem_j,
            depth + 1,
            strict_so_far || strict_pair,
            surplus,
            used,
            found_plain,
        ) {
            used[slot] = false;
            return true;
        }
        used[slot] = false;
    }
    false
}
