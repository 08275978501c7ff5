//! Anyon condensation at the multiplicity level: condensable-algebra
//! screening, the Frobenius-reciprocity engine (integer factorization of the
//! hom-count matrix plus an integer solve for the condensed fusion rules),
//! confinement flags, and the induced comonad object map.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fusion::{quantum_dimensions, validate_fusion_ring, FusionRing, ObjectVector};
use crate::num::C64;
use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum CondError {
    #[error("no nonnegative integer factorization D^T D = M exists")]
    FactorizationNotFound,
    #[error("no associative condensed fusion rules satisfy the constraints")]
    FusionInconsistent,
    #[error("input carries no twist data")]
    MissingTwists,
    #[error("given condensation data is inconsistent: {0}")]
    InconsistentData(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Braided input for condensation: a fusion ring with twists and quantum
/// dimensions.
#[derive(Debug, Clone)]
pub struct BraidedInput {
    pub ring: FusionRing,
    pub twists: Option<Vec<C64>>,
    pub qdims: Vec<f64>,
}

impl BraidedInput {
    pub fn new(ring: FusionRing, twists: Option<Vec<C64>>) -> Result<Self, CondError> {
        let qdims = quantum_dimensions(&ring)
            .map_err(|e| CondError::InvalidInput(format!("quantum dimensions: {e}")))?;
        if let Some(t) = &twists {
            if t.len() != ring.rank() {
                return Err(CondError::InvalidInput("twist vector length".into()));
            }
        }
        Ok(BraidedInput { ring, twists, qdims })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CondensationResult {
    pub condensed: FusionRing,
    /// `d[c][X]` = multiplicity of condensed simple `c` in `D(X)`.
    pub d: Vec<Vec<u32>>,
    /// `e[c][X]` = multiplicity of `X` in `E(c)`; equals `d` entrywise.
    pub e: Vec<Vec<u32>>,
    /// `t[c'][c] = (D D^T)_{c'c}`, the comonad object map.
    pub t_object: Vec<Vec<u32>>,
    pub confined: Option<Vec<bool>>,
    /// Number of fusion solutions compatible with the constraints (the
    /// lexicographically smallest is the one reported).
    pub fusion_solutions: usize,
}

/// `M[X][Y] = dim Hom(X, A ⊗ Y)`.
pub fn hom_count_matrix(ring: &FusionRing, algebra: &ObjectVector) -> Vec<Vec<u32>> {
    let r = ring.rank();
    let mut m = vec![vec![0u32; r]; r];
    for x in 0..r {
        for y in 0..r {
            m[x][y] = (0..r).map(|a| algebra.0[a] * ring.n[a][y][x]).sum();
        }
    }
    m
}

/// All minimal-row nonnegative integer factorizations `D^T D = M`, up to row
/// permutation (rows are activated in canonical order during the search).
/// Columns are assigned in decreasing diagonal order, the unit column first.
pub fn factor_hom_matrix(m: &[Vec<u32>], unit: usize) -> Vec<Vec<Vec<u32>>> {
    let n = m.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(m[x][x]));
    if let Some(pos) = order.iter().position(|&x| x == unit) {
        order.remove(pos);
        order.insert(0, unit);
    }
    let max_rows: usize = m.iter().enumerate().map(|(x, row)| row[x] as usize).sum::<usize>().max(1);
    for rows in 1..=max_rows {
        let mut results: Vec<Vec<Vec<u32>>> = Vec::new();
        let mut cols: Vec<Vec<u32>> = vec![vec![0; rows]; n];
        assign_column(m, &order, 0, rows, &mut cols, &mut results);
        if !results.is_empty() {
            let mut seen = std::collections::BTreeSet::new();
            let mut out = Vec::new();
            for d in results {
                let mut canon: Vec<Vec<u32>> = (0..rows)
                    .map(|r| (0..n).map(|x| d[x][r]).collect::<Vec<u32>>())
                    .collect();
                canon.sort();
                if seen.insert(canon) {
                    out.push(to_row_major(&d, rows));
                }
            }
            return out;
        }
    }
    Vec::new()
}

fn to_row_major(cols: &[Vec<u32>], rows: usize) -> Vec<Vec<u32>> {
    (0..rows).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
}

fn assign_column(
    m: &[Vec<u32>],
    order: &[usize],
    pos: usize,
    rows: usize,
    cols: &mut Vec<Vec<u32>>,
    results: &mut Vec<Vec<Vec<u32>>>,
) {
    if results.len() >= 64 {
        return;
    }
    if pos == order.len() {
        results.push(cols.clone());
        return;
    }
    let x = order[pos];
    let targets: Vec<(usize, u32)> = order[..pos].iter().map(|&y| (y, m[x][y])).collect();
    let used = (0..rows)
        .rev()
        .find(|&r| order[..pos].iter().any(|&y| cols[y][r] > 0))
        .map(|r| r + 1)
        .unwrap_or(0);
    let mut current = vec![0u32; rows];
    let mut stack_emit = |v: &Vec<u32>, cols: &mut Vec<Vec<u32>>, results: &mut Vec<Vec<Vec<u32>>>| {
        for &(y, want) in &targets {
            let dot: u32 = (0..rows).map(|r| v[r] * cols[y][r]).sum();
            if dot != want {
                return;
            }
        }
        cols[x] = v.clone();
        assign_column(m, order, pos + 1, rows, cols, results);
        cols[x] = vec![0; rows];
    };
    gen_vectors(m[x][x], 0, rows, used, &targets, cols, &mut current, &mut stack_emit, results);
}

#[allow(clippy::too_many_arguments)]
fn gen_vectors(
    norm_left: u32,
    row: usize,
    rows: usize,
    used: usize,
    targets: &[(usize, u32)],
    cols: &mut Vec<Vec<u32>>,
    current: &mut Vec<u32>,
    emit: &mut impl FnMut(&Vec<u32>, &mut Vec<Vec<u32>>, &mut Vec<Vec<Vec<u32>>>),
    results: &mut Vec<Vec<Vec<u32>>>,
) {
    if row == rows {
        if norm_left == 0 {
            let v = current.clone();
            emit(&v, cols, results);
        }
        return;
    }
    // beyond the first unused row, entries in the fresh-row block must be
    // non-increasing so row permutations are not enumerated twice
    let cap = (norm_left as f64).sqrt().floor() as u32;
    let cap = if row > used { cap.min(current[row - 1]) } else { cap };
    for v in (0..=cap).rev() {
        let mut ok = true;
        for &(y, want) in targets {
            let mut dot = v * cols[y][row];
            for r in 0..row {
                dot += current[r] * cols[y][r];
            }
            if dot > want {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        current[row] = v;
        gen_vectors(norm_left - v * v, row + 1, rows, used, targets, cols, current, emit, results);
        current[row] = 0;
    }
}

/// Screening report for a condensable-algebra candidate: connectedness,
/// trivial twists on the support, symmetry of the hom-count matrix, and the
/// existence of a full condensation (factorization plus fusion rules).
pub fn check_condensable(input: &BraidedInput, algebra: &ObjectVector) -> ValidationReport {
    let mut report = ValidationReport::new(1e-9);
    let ring = &input.ring;
    if algebra.rank() != ring.rank() || algebra.is_zero() {
        report.fail("algebra object has the wrong rank or is zero");
        return report;
    }
    report.record(
        || "connectedness: Hom(1, A) is one-dimensional".into(),
        (algebra.0[ring.unit] as f64 - 1.0).abs(),
    );
    if let Some(theta) = &input.twists {
        for a in 0..ring.rank() {
            if algebra.0[a] > 0 {
                report.record(
                    || format!("trivial twist on {}", ring.labels[a]),
                    (theta[a] - C64::new(1.0, 0.0)).norm(),
                );
            }
        }
    } else {
        report.note("no twist data; trivial-twist screen skipped");
    }
    let m = hom_count_matrix(ring, algebra);
    for x in 0..ring.rank() {
        for y in 0..x {
            report.record(
                || format!("hom-count symmetry ({},{})", ring.labels[x], ring.labels[y]),
                (m[x][y] as f64 - m[y][x] as f64).abs(),
            );
        }
    }
    if report.pass() {
        match condense(input, algebra) {
            Ok(_) => {}
            Err(CondError::FactorizationNotFound) => {
                report.fail("no integer factorization of the hom-count matrix")
            }
            Err(CondError::FusionInconsistent) => {
                report.fail("no associative condensed fusion rules exist")
            }
            Err(e) => report.fail(format!("condensation failed: {e}")),
        }
    }
    report.note("object-level screen only; separability as a splitting morphism is not verified");
    report
}

/// Full condensation: factor the hom-count matrix, solve for the condensed
/// fusion rules, classify confinement when twists are available.
pub fn condense(input: &BraidedInput, algebra: &ObjectVector) -> Result<CondensationResult, CondError> {
    let ring = &input.ring;
    if algebra.rank() != ring.rank() || algebra.is_zero() {
        return Err(CondError::InvalidInput("algebra object".into()));
    }
    if algebra.0[ring.unit] != 1 {
        return Err(CondError::InvalidInput("algebra is not connected".into()));
    }
    let m = hom_count_matrix(ring, algebra);
    let candidates = factor_hom_matrix(&m, ring.unit);
    if candidates.is_empty() {
        return Err(CondError::FactorizationNotFound);
    }
    let dim_a: f64 = (0..ring.rank()).map(|a| algebra.0[a] as f64 * input.qdims[a]).sum();
    let mut fusion_err = CondError::FusionInconsistent;
    for d in candidates {
        match solve_condensed_fusion(ring, &input.qdims, dim_a, &d) {
            Ok((condensed, solutions)) => {
                let rows = d.len();
                let mut t_object = vec![vec![0u32; rows]; rows];
                for c1 in 0..rows {
                    for c2 in 0..rows {
                        t_object[c1][c2] = (0..ring.rank()).map(|x| d[c1][x] * d[c2][x]).sum();
                    }
                }
                let confined = input.twists.as_ref().map(|theta| {
                    (0..rows)
                        .map(|c| {
                            let phases: Vec<C64> = (0..ring.rank())
                                .filter(|&x| d[c][x] > 0)
                                .map(|x| theta[x])
                                .collect();
                            !phases.windows(2).all(|w| (w[0] - w[1]).norm() < 1e-6)
                        })
                        .collect()
                });
                return Ok(CondensationResult {
                    condensed,
                    e: d.clone(),
                    d,
                    t_object,
                    confined,
                    fusion_solutions: solutions,
                });
            }
            Err(e) => fusion_err = e,
        }
    }
    Err(fusion_err)
}

/// Solve `D(X) ⊗ D(Y) = D(X ⊗ Y)` for the condensed fusion coefficients, with
/// dimension bookkeeping and associativity as filters. Returns the
/// lexicographically smallest valid solution and the count of solutions.
fn solve_condensed_fusion(
    ring: &FusionRing,
    qdims: &[f64],
    dim_a: f64,
    d: &[Vec<u32>],
) -> Result<(FusionRing, usize), CondError> {
    let rows = d.len();
    let n = ring.rank();
    let unit_row = (0..rows)
        .find(|&c| d[c][ring.unit] == 1)
        .ok_or(CondError::FusionInconsistent)?;
    let dprime: Vec<f64> = (0..rows)
        .map(|c| (0..n).map(|x| d[c][x] as f64 * qdims[x]).sum::<f64>() / dim_a)
        .collect();
    let mut rhs = vec![vec![vec![0u32; rows]; n]; n];
    for x in 0..n {
        for y in 0..n {
            for k in 0..rows {
                rhs[x][y][k] = (0..n).map(|z| ring.n[x][y][z] * d[k][z]).sum();
            }
        }
    }
    let ub = |c1: usize, c2: usize| -> Vec<u32> {
        let mut best = vec![u32::MAX; rows];
        for x in 0..n {
            if d[c1][x] == 0 {
                continue;
            }
            for y in 0..n {
                if d[c2][y] == 0 {
                    continue;
                }
                let w = d[c1][x] * d[c2][y];
                for k in 0..rows {
                    best[k] = best[k].min(rhs[x][y][k] / w);
                }
            }
        }
        best
    };
    let mut pair_candidates: Vec<Vec<Vec<u32>>> = Vec::with_capacity(rows * rows);
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(rows * rows);
    for c1 in 0..rows {
        for c2 in 0..rows {
            pairs.push((c1, c2));
            if c1 == unit_row || c2 == unit_row {
                let other = if c1 == unit_row { c2 } else { c1 };
                let mut v = vec![0u32; rows];
                v[other] = 1;
                pair_candidates.push(vec![v]);
                continue;
            }
            let bound = ub(c1, c2);
            let want = dprime[c1] * dprime[c2];
            let mut out = Vec::new();
            let mut cur = vec![0u32; rows];
            enumerate_dims(&bound, &dprime, want, 0, &mut cur, &mut out);
            if out.is_empty() {
                return Err(CondError::FusionInconsistent);
            }
            pair_candidates.push(out);
        }
    }
    let mut res = rhs.clone();
    let mut assigned: Vec<Option<usize>> = vec![None; pairs.len()];
    for (pi, &(c1, c2)) in pairs.iter().enumerate() {
        if c1 == unit_row || c2 == unit_row {
            let v = pair_candidates[pi][0].clone();
            for x in 0..n {
                for y in 0..n {
                    let w = d[c1][x] * d[c2][y];
                    if w == 0 {
                        continue;
                    }
                    for k in 0..rows {
                        let need = w * v[k];
                        if res[x][y][k] < need {
                            return Err(CondError::FusionInconsistent);
                        }
                        res[x][y][k] -= need;
                    }
                }
            }
            assigned[pi] = Some(0);
        }
    }
    let mut solutions = FusionSolutions { valid: std::collections::BTreeSet::new(), raw_budget: 2_000_000 };
    dfs_fusion(&pairs, &pair_candidates, d, n, rows, unit_row, &mut res, &mut assigned, &mut solutions);
    let mut valid: Vec<Vec<Vec<Vec<u32>>>> = solutions.valid.into_iter().collect();
    if valid.is_empty() {
        return Err(CondError::FusionInconsistent);
    }
    valid.sort();
    valid.dedup();
    let count = valid.len();
    let nt = valid.into_iter().next().unwrap();
    let duals: Vec<usize> = (0..rows)
        .map(|c| (0..rows).find(|&cc| nt[c][cc][unit_row] > 0).unwrap())
        .collect();
    Ok((
        FusionRing {
            labels: (0..rows).map(|c| format!("c{c}")).collect(),
            unit: unit_row,
            dual: duals,
            n: nt,
        },
        count,
    ))
}

fn enumerate_dims(
    bound: &[u32],
    dims: &[f64],
    want: f64,
    k: usize,
    cur: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if out.len() > 5000 {
        return;
    }
    if k == bound.len() {
        if want.abs() < 1e-6 {
            out.push(cur.clone());
        }
        return;
    }
    if want < -1e-6 {
        return;
    }
    let cap = if bound[k] == u32::MAX {
        ((want / dims[k].max(1e-9)) + 1e-6).floor() as u32
    } else {
        bound[k].min(((want / dims[k].max(1e-9)) + 1e-6).floor() as u32)
    };
    for v in 0..=cap {
        cur[k] = v;
        enumerate_dims(bound, dims, want - v as f64 * dims[k], k + 1, cur, out);
        cur[k] = 0;
    }
}

/// Collector for the fusion search: validated tensors plus a budget on raw
/// completions so underdetermined systems terminate.
struct FusionSolutions {
    valid: std::collections::BTreeSet<Vec<Vec<Vec<u32>>>>,
    raw_budget: u64,
}

/// Assemble a raw pair assignment into a fusion tensor and keep it only if
/// it passes the full ring validation (unit, duality, associativity).
fn assemble_valid(
    pairs: &[(usize, usize)],
    sol: &[Vec<u32>],
    rows: usize,
) -> Option<Vec<Vec<Vec<u32>>>> {
    let mut nt = vec![vec![vec![0u32; rows]; rows]; rows];
    for (pi, &(c1, c2)) in pairs.iter().enumerate() {
        nt[c1][c2] = sol[pi].clone();
    }
    let unit_row = (0..rows).find(|&c| (0..rows).all(|x| nt[c][x][x] == 1))?;
    let duals: Option<Vec<usize>> = (0..rows)
        .map(|c| {
            let hits: Vec<usize> = (0..rows).filter(|&cc| nt[c][cc][unit_row] > 0).collect();
            if hits.len() == 1 && nt[c][hits[0]][unit_row] == 1 {
                Some(hits[0])
            } else {
                None
            }
        })
        .collect();
    let cand = FusionRing {
        labels: (0..rows).map(|c| format!("c{c}")).collect(),
        unit: unit_row,
        dual: duals?,
        n: nt,
    };
    if validate_fusion_ring(&cand, 1e-9).map(|r| r.pass()).unwrap_or(false) {
        Some(cand.n)
    } else {
        None
    }
}

struct FusionSearch<'a> {
    pairs: &'a [(usize, usize)],
    candidates: &'a [Vec<Vec<u32>>],
    d: &'a [Vec<u32>],
    n: usize,
    rows: usize,
    unit_row: usize,
    order: Vec<usize>,
    /// partially assembled fusion tensor (meaningful on assigned pairs only)
    nt: Vec<Vec<Vec<u32>>>,
    assigned_pair: Vec<Vec<bool>>,
}

impl<'a> FusionSearch<'a> {
    /// Check every associativity instance that involves the entry `(c1,c2)`
    /// and whose participating entries are all assigned.
    fn associativity_ok_after(&self, c1: usize, c2: usize) -> bool {
        let rows = self.rows;
        let mut instances: Vec<(usize, usize, usize)> = Vec::new();
        for t in 0..rows {
            instances.push((c1, c2, t));
            instances.push((t, c1, c2));
        }
        for a in 0..rows {
            for b in 0..rows {
                if self.assigned_pair[a][b] && self.nt[a][b][c1] > 0 {
                    instances.push((a, b, c2));
                }
                if self.assigned_pair[a][b] && self.nt[a][b][c2] > 0 {
                    instances.push((c1, a, b));
                }
            }
        }
        instances.sort_unstable();
        instances.dedup();
        'inst: for (a, b, c) in instances {
            if !self.assigned_pair[a][b] || !self.assigned_pair[b][c] {
                continue;
            }
            for e in 0..rows {
                if self.nt[a][b][e] > 0 && !self.assigned_pair[e][c] {
                    continue 'inst;
                }
                if self.nt[b][c][e] > 0 && !self.assigned_pair[a][e] {
                    continue 'inst;
                }
            }
            for dd in 0..rows {
                let lhs: u64 = (0..rows)
                    .map(|e| self.nt[a][b][e] as u64 * self.nt[e][c][dd] as u64)
                    .sum();
                let rhs: u64 = (0..rows)
                    .map(|f| self.nt[b][c][f] as u64 * self.nt[a][f][dd] as u64)
                    .sum();
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Weak duality screen on the assigned part: unit multiplicities stay
    /// 0/1 and each row/column meets the unit at most once.
    fn duality_ok_after(&self, c1: usize, c2: usize) -> bool {
        if self.nt[c1][c2][self.unit_row] > 1 {
            return false;
        }
        if self.nt[c1][c2][self.unit_row] == 1 {
            for cc in 0..self.rows {
                if cc != c2 && self.assigned_pair[c1][cc] && self.nt[c1][cc][self.unit_row] > 0 {
                    return false;
                }
                if cc != c1 && self.assigned_pair[cc][c2] && self.nt[cc][c2][self.unit_row] > 0 {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, pos: usize, res: &mut Vec<Vec<Vec<u32>>>, solutions: &mut FusionSolutions) {
        if solutions.valid.len() >= 9 || solutions.raw_budget == 0 {
            return;
        }
        if pos == self.order.len() {
            solutions.raw_budget = solutions.raw_budget.saturating_sub(1);
            if res.iter().all(|mm| mm.iter().all(|r| r.iter().all(|&x| x == 0))) {
                let sol: Vec<Vec<u32>> = self
                    .pairs
                    .iter()
                    .map(|&(c1, c2)| self.nt[c1][c2].clone())
                    .collect();
                if let Some(valid) = assemble_valid(self.pairs, &sol, self.rows) {
                    solutions.valid.insert(valid);
                }
            }
            return;
        }
        let pi = self.order[pos];
        let (c1, c2) = self.pairs[pi];
        'cand: for ci in 0..self.candidates[pi].len() {
            let v = self.candidates[pi][ci].clone();
            for x in 0..self.n {
                if self.d[c1][x] == 0 {
                    continue;
                }
                for y in 0..self.n {
                    let w = self.d[c1][x] * self.d[c2][y];
                    if w == 0 {
                        continue;
                    }
                    for k in 0..self.rows {
                        if w * v[k] > res[x][y][k] {
                            continue 'cand;
                        }
                    }
                }
            }
            for x in 0..self.n {
                for y in 0..self.n {
                    let w = self.d[c1][x] * self.d[c2][y];
                    if w == 0 {
                        continue;
                    }
                    for k in 0..self.rows {
                        res[x][y][k] -= w * v[k];
                    }
                }
            }
            self.nt[c1][c2] = v.clone();
            self.assigned_pair[c1][c2] = true;
            if self.duality_ok_after(c1, c2) && self.associativity_ok_after(c1, c2) {
                self.run(pos + 1, res, solutions);
            }
            self.assigned_pair[c1][c2] = false;
            self.nt[c1][c2] = vec![0; self.rows];
            for x in 0..self.n {
                for y in 0..self.n {
                    let w = self.d[c1][x] * self.d[c2][y];
                    if w == 0 {
                        continue;
                    }
                    for k in 0..self.rows {
                        res[x][y][k] += w * v[k];
                    }
                }
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn dfs_fusion(
    pairs: &[(usize, usize)],
    candidates: &[Vec<Vec<u32>>],
    d: &[Vec<u32>],
    n: usize,
    rows: usize,
    unit_row: usize,
    res: &mut Vec<Vec<Vec<u32>>>,
    assigned: &mut Vec<Option<usize>>,
    solutions: &mut FusionSolutions,
) {
    // most-constrained pairs first so the forced cascade assigns early
    let mut order: Vec<usize> = (0..pairs.len()).filter(|&pi| assigned[pi].is_none()).collect();
    order.sort_by_key(|&pi| (candidates[pi].len(), pi));
    let mut nt = vec![vec![vec![0u32; rows]; rows]; rows];
    let mut assigned_pair = vec![vec![false; rows]; rows];
    for (pi, &(c1, c2)) in pairs.iter().enumerate() {
        if let Some(ci) = assigned[pi] {
            nt[c1][c2] = candidates[pi][ci].clone();
            assigned_pair[c1][c2] = true;
        }
    }
    let mut search =
        FusionSearch { pairs, candidates, d, n, rows, unit_row, order, nt, assigned_pair };
    search.run(0, res, solutions);
}

/// Deconfinement flags recomputed from twists: a condensed simple is
/// deconfined iff every constituent of its lift shares one twist value.
pub fn classify_confinement(
    input: &BraidedInput,
    res: &CondensationResult,
) -> Result<Vec<bool>, CondError> {
    let theta = input.twists.as_ref().ok_or(CondError::MissingTwists)?;
    Ok((0..res.d.len())
        .map(|c| {
            let phases: Vec<C64> = (0..input.ring.rank())
                .filter(|&x| res.e[c][x] > 0)
                .map(|x| theta[x])
                .collect();
            !phases.windows(2).all(|w| (w[0] - w[1]).norm() < 1e-6)
        })
        .collect())
}

/// Description of the comonad object map `T = D ∘ E`: either a single object
/// `W` with `T(X) = W ⊗ X`, or a partition of the condensed simples into
/// blocks with one `W` per block.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum ComonadShape {
    Tensor { w: ObjectVector },
    Blocks { blocks: Vec<(Vec<usize>, ObjectVector)> },
    Irregular,
}

fn w_solutions(ring: &FusionRing, c: usize, target: &ObjectVector) -> Vec<ObjectVector> {
    let rows = ring.rank();
    let bound: u32 = target.0.iter().sum();
    let mut out = Vec::new();
    let mut cur = ObjectVector::zero(rows);
    fn rec(
        ring: &FusionRing,
        c: usize,
        target: &ObjectVector,
        bound: u32,
        k: usize,
        cur: &mut ObjectVector,
        out: &mut Vec<ObjectVector>,
    ) {
        if k == cur.0.len() {
            let prod = ring
                .decompose_product(cur, &ObjectVector::simple(cur.0.len(), c))
                .expect("rank");
            if &prod == target {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..=bound {
            cur.0[k] = v;
            rec(ring, c, target, bound, k + 1, cur, out);
        }
        cur.0[k] = 0;
    }
    rec(ring, c, target, bound, 0, &mut cur, &mut out);
    out
}

pub fn comonad_object_map(res: &CondensationResult) -> (Vec<Vec<u32>>, ComonadShape) {
    let t = res.t_object.clone();
    let ring = &res.condensed;
    let rows = t.len();
    let t_col = |c: usize| -> ObjectVector { ObjectVector((0..rows).map(|r| t[r][c]).collect()) };
    let w0 = t_col(ring.unit);
    let matches_w = |w: &ObjectVector, c: usize| -> bool {
        ring.decompose_product(w, &ObjectVector::simple(rows, c)).expect("rank") == t_col(c)
    };
    if (0..rows).all(|c| matches_w(&w0, c)) {
        return (t, ComonadShape::Tensor { w: w0 });
    }
    let mut remaining: Vec<usize> = (0..rows).collect();
    let mut blocks: Vec<(Vec<usize>, ObjectVector)> = Vec::new();
    while let Some(&first) = remaining.first() {
        let cands = w_solutions(ring, first, &t_col(first));
        if cands.is_empty() {
            return (t, ComonadShape::Irregular);
        }
        let mut best: Option<(Vec<usize>, ObjectVector)> = None;
        for w in cands {
            let members: Vec<usize> =
                remaining.iter().copied().filter(|&c| matches_w(&w, c)).collect();
            if best.as_ref().map(|(m, _)| members.len() > m.len()).unwrap_or(true) {
                best = Some((members, w));
            }
        }
        let (members, w) = best.expect("candidate exists");
        remaining.retain(|c| !members.contains(c));
        blocks.push((members, w));
    }
    (t, ComonadShape::Blocks { blocks })
}

/// Exact integers in `Z[δ]` with `δ² = 1 + pδ`, for the doubled-Haagerup
/// dimension bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZDelta {
    pub a: i64,
    pub b: i64,
    pub p: i64,
}

impl ZDelta {
    pub fn new(a: i64, b: i64, p: i64) -> Self {
        ZDelta { a, b, p }
    }

    pub fn add(self, o: ZDelta) -> ZDelta {
        ZDelta { a: self.a + o.a, b: self.b + o.b, p: self.p }
    }

    pub fn mul(self, o: ZDelta) -> ZDelta {
        ZDelta {
            a: self.a * o.a + self.b * o.b,
            b: self.a * o.b + self.b * o.a + self.p * self.b * o.b,
            p: self.p,
        }
    }

    pub fn scale(self, k: i64) -> ZDelta {
        ZDelta { a: self.a * k, b: self.b * k, p: self.p }
    }
}

/// A condensation stated as explicit `D`/`E` maps with exact dimensions, for
/// cases where the ambient fusion ring is not fully specified.
#[derive(Debug, Clone)]
pub struct GivenCondensation {
    pub input_labels: Vec<String>,
    pub condensed_labels: Vec<String>,
    /// `d[c][X]`.
    pub d: Vec<Vec<u32>>,
    /// `e[c][X]`, stated independently and checked against `d`.
    pub e: Vec<Vec<u32>>,
    pub input_dims: Vec<ZDelta>,
    pub condensed_dims: Vec<ZDelta>,
    /// Multiplicity of each input simple in the algebra object.
    pub algebra: Vec<u32>,
    /// Stated object map `t[c'][c]`, to be reproduced by `D·E`.
    pub stated_t: Vec<Vec<u32>>,
}

/// The condensation data of the doubled Haagerup-type category at an odd
/// prime `p`: inputs `1, b, a_h, d_l` of dimensions `1, pδ+1, pδ+2, pδ`;
/// condensed simples `D(Z_p) ∪ {X}` with `T(1) = 2 + X`,
/// `T(α) = α + α* + X`, and `T(X) = D(Z_p) + (p²+2) X`.
pub fn dhaag_given(p: u32) -> GivenCondensation {
    let p = p as usize;
    let n_a = (p * p - 1) / 2;
    let n_d = (p * p + 3) / 2;
    let mut input_labels = vec!["1".to_string(), "b".to_string()];
    input_labels.extend((1..=n_a).map(|h| format!("a{h}")));
    input_labels.extend((1..=n_d).map(|l| format!("d{l}")));
    let input_rank = input_labels.len();
    let mut condensed_labels: Vec<String> = Vec::new();
    for i in 0..p {
        for j in 0..p {
            condensed_labels.push(if i == 0 && j == 0 { "1".into() } else { format!("al{i}{j}") });
        }
    }
    condensed_labels.push("X".into());
    let rows = condensed_labels.len();
    let x_row = rows - 1;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut seen = vec![false; p * p];
    for g in 1..p * p {
        if seen[g] {
            continue;
        }
        let (i, j) = (g / p, g % p);
        let inv = ((p - i) % p) * p + (p - j) % p;
        seen[g] = true;
        seen[inv] = true;
        pairs.push((g, inv));
    }
    assert_eq!(pairs.len(), n_a);
    let mut d = vec![vec![0u32; input_rank]; rows];
    d[0][0] = 1;
    d[0][1] = 1;
    d[x_row][1] = 1;
    for (h, &(g, ginv)) in pairs.iter().enumerate() {
        let col = 2 + h;
        d[g][col] = 1;
        d[ginv][col] = 1;
        d[x_row][col] = 1;
    }
    for l in 0..n_d {
        d[x_row][2 + n_a + l] = 1;
    }
    let pp = p as i64;
    let one = ZDelta::new(1, 0, pp);
    let pdelta = ZDelta::new(0, pp, pp);
    let mut input_dims = vec![one, pdelta.add(one)];
    input_dims.extend(vec![pdelta.add(ZDelta::new(2, 0, pp)); n_a]);
    input_dims.extend(vec![pdelta; n_d]);
    let mut condensed_dims = vec![one; p * p];
    condensed_dims.push(pdelta);
    let mut algebra = vec![0u32; input_rank];
    algebra[0] = 1;
    algebra[1] = 1;
    let mut stated_t = vec![vec![0u32; rows]; rows];
    stated_t[0][0] = 2;
    stated_t[x_row][0] = 1;
    for g in 1..p * p {
        let (i, j) = (g / p, g % p);
        let inv = ((p - i) % p) * p + (p - j) % p;
        stated_t[g][g] = 1;
        stated_t[inv][g] = 1;
        stated_t[x_row][g] = 1;
    }
    stated_t[0][x_row] = 1;
    for g in 1..p * p {
        stated_t[g][x_row] = 1;
    }
    stated_t[x_row][x_row] = (p * p + 2) as u32;
    GivenCondensation {
        input_labels,
        condensed_labels,
        e: d.clone(),
        d,
        input_dims,
        condensed_dims,
        algebra,
        stated_t,
    }
}

/// Internal consistency of stated condensation data: `E = D` entrywise,
/// `D·Eᵀ` reproduces the stated object map, and the exact dimension balance
/// `Σ_X E_{cX} d_X = dim(A) · d'_c` holds for every condensed simple.
pub fn verify_given_condensation(g: &GivenCondensation) -> ValidationReport {
    let mut report = ValidationReport::new(0.5);
    let rows = g.d.len();
    let cols = g.input_labels.len();
    for c in 0..rows {
        for x in 0..cols {
            report.record(
                || format!("E = D^T at ({}, {})", g.condensed_labels[c], g.input_labels[x]),
                (g.d[c][x] as f64 - g.e[c][x] as f64).abs(),
            );
        }
    }
    for c1 in 0..rows {
        for c2 in 0..rows {
            let t: u32 = (0..cols).map(|x| g.d[c1][x] * g.e[c2][x]).sum();
            report.record(
                || format!("T = D·E at ({}, {})", g.condensed_labels[c1], g.condensed_labels[c2]),
                (t as f64 - g.stated_t[c1][c2] as f64).abs(),
            );
        }
    }
    let p = g.input_dims[0].p;
    let dim_a = g
        .algebra
        .iter()
        .zip(&g.input_dims)
        .fold(ZDelta::new(0, 0, p), |acc, (&m, dim)| acc.add(dim.scale(m as i64)));
    for c in 0..rows {
        let lhs = (0..cols)
            .fold(ZDelta::new(0, 0, p), |acc, x| acc.add(g.input_dims[x].scale(g.e[c][x] as i64)));
        let rhs = dim_a.mul(g.condensed_dims[c]);
        report.record(
            || format!("dimension balance at {}", g.condensed_labels[c]),
            if lhs == rhs { 0.0 } else { 1.0 },
        );
    }
    report
}
