//! Skeletal tensor functors and Hopf monads.
//!
//! A Hopf monad on a multiplicity-free category is the data
//! `{T_ab, H^{ab}_c, ε_α, η_{a,α}}`: an integer object map, a family of
//! invertible fusion-operator matrices, and unit/counit vectors. The
//! checkers validate the heptagon and the four triangle identities; the
//! mirrored (right) fusion operator is checked by the mirrored identities
//! when present. Constructors produce this data from group actions and from
//! categorical Hopf algebras, and both must be accepted by the checkers.
//!
//! Index conventions (left operator): `H^{ab}_c` has
//! rows `(f,γ; g,θ)` with `γ ≤ T_{fa}`, `θ ≤ T_{gb}`, `N_{fg}^c = 1`,
//! ordered lexicographically in `(f, γ, g, θ)`, and
//! columns `(d,α; e,β)` with `α ≤ T_{db}`, `N_{ad}^e = 1`, `β ≤ T_{ce}`,
//! ordered lexicographically in `(d, α, e, β)`. The right operator replaces
//! the column constraints by `α ≤ T_{da}`, `N_{db}^e = 1`, `β ≤ T_{ce}`.

use std::collections::HashMap;

use thiserror::Error;

use crate::engine::{BasisElem, Ctx, Morphism, Tree};
use crate::fusion::{FusionRing, Label, ObjectVector};
use crate::groups::FiniteGroup;
use crate::hopf::HopfAlgebraData;
use crate::linalg::CMat;
use crate::num::{c64, C64};
use crate::report::ValidationReport;
use crate::skel::{SkelError, SkeletalData};

#[derive(Debug, Error)]
pub enum MonadError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("fusion operator H({0}) is singular")]
    SingularH(String),
    #[error("permutation is not a monoidal automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("underlying Hopf algebra fails its axioms: {0}")]
    AxiomViolation(String),
    #[error(transparent)]
    Skel(#[from] SkelError),
}

type Quad = (Label, u32, Label, u32);

/// Skeletal data of a tensor functor `source -> target`.
#[derive(Debug, Clone)]
pub struct TensorFunctorData {
    pub source: SkeletalData,
    pub target: SkeletalData,
    /// `t[a][b]` = multiplicity of target simple `a` in `T(b)`.
    pub t: Vec<Vec<u32>>,
    /// `T2` matrices keyed `(a, b, c)` with `a, b` source simples and `c` a
    /// target simple; rows `(f, γ)`, columns `(d, α; e, β)`.
    pub t2: HashMap<(Label, Label, Label), CMat>,
}

impl TensorFunctorData {
    pub fn t2_rows(&self, a: Label, b: Label, c: Label) -> Vec<(Label, u32)> {
        let mut out = Vec::new();
        for f in 0..self.source.rank() {
            if !self.source.ring.admissible(a, b, f) {
                continue;
            }
            for g in 0..self.t[c][f] {
                out.push((f, g));
            }
        }
        out
    }

    pub fn t2_cols(&self, a: Label, b: Label, c: Label) -> Vec<Quad> {
        let mut out = Vec::new();
        for d in 0..self.target.rank() {
            for alpha in 0..self.t[d][a] {
                for e in 0..self.target.rank() {
                    if !self.target.ring.admissible(d, e, c) {
                        continue;
                    }
                    for beta in 0..self.t[e][b] {
                        out.push((d, alpha, e, beta));
                    }
                }
            }
        }
        out
    }
}

/// Cached index lookup for one family of keyed matrices.
struct Indexed {
    mat: CMat,
    rows: HashMap<Quad, usize>,
    cols: HashMap<Quad, usize>,
}

impl Indexed {
    fn entry(&self, row: Quad, col: Quad) -> C64 {
        match (self.rows.get(&row), self.cols.get(&col)) {
            (Some(&ri), Some(&ci)) => self.mat[(ri, ci)],
            _ => c64(0.0, 0.0),
        }
    }
}

struct FunctorIndexed {
    mat: CMat,
    rows: HashMap<(Label, u32), usize>,
    cols: HashMap<Quad, usize>,
}

impl FunctorIndexed {
    fn entry(&self, row: (Label, u32), col: Quad) -> C64 {
        match (self.rows.get(&row), self.cols.get(&col)) {
            (Some(&ri), Some(&ci)) => self.mat[(ri, ci)],
            _ => c64(0.0, 0.0),
        }
    }
}

/// Hexagon and unit identities for a tensor functor.
pub fn check_tensor_functor(
    data: &TensorFunctorData,
    tol: f64,
) -> Result<ValidationReport, MonadError> {
    let mut report = ValidationReport::new(tol);
    let src = &data.source;
    let tgt = &data.target;
    let rs = src.rank();
    let rt = tgt.rank();
    for a in 0..rt {
        let want = u32::from(a == tgt.ring.unit);
        report.record(
            || format!("T unit column at {}", tgt.ring.labels[a]),
            (data.t[a][src.ring.unit] as f64 - want as f64).abs(),
        );
    }
    let mut idx: HashMap<(Label, Label, Label), FunctorIndexed> = HashMap::new();
    for a in 0..rs {
        for b in 0..rs {
            for c in 0..rt {
                let rows = data.t2_rows(a, b, c);
                let cols = data.t2_cols(a, b, c);
                if rows.len() != cols.len() {
                    report.fail(format!(
                        "T2({},{};{}) is {}x{}",
                        src.ring.labels[a],
                        src.ring.labels[b],
                        tgt.ring.labels[c],
                        rows.len(),
                        cols.len()
                    ));
                    continue;
                }
                if rows.is_empty() {
                    continue;
                }
                let mat = match data.t2.get(&(a, b, c)) {
                    Some(m) if m.rows == rows.len() && m.cols == cols.len() => m.clone(),
                    _ => {
                        report.fail(format!(
                            "T2({},{};{}) missing or misshapen",
                            src.ring.labels[a], src.ring.labels[b], tgt.ring.labels[c]
                        ));
                        continue;
                    }
                };
                if mat.inverse().is_none() {
                    report.fail(format!(
                        "T2({},{};{}) singular",
                        src.ring.labels[a], src.ring.labels[b], tgt.ring.labels[c]
                    ));
                    continue;
                }
                idx.insert(
                    (a, b, c),
                    FunctorIndexed {
                        mat,
                        rows: rows.into_iter().enumerate().map(|(i, r)| (r, i)).collect(),
                        cols: cols.into_iter().enumerate().map(|(i, r)| (r, i)).collect(),
                    },
                );
            }
        }
    }
    if !report.pass() {
        return Ok(report);
    }
    let ent = |a: Label, b: Label, c: Label, row: (Label, u32), col: Quad| -> C64 {
        idx.get(&(a, b, c)).map(|m| m.entry(row, col)).unwrap_or_else(|| c64(0.0, 0.0))
    };

    // unit identities
    let u = src.ring.unit;
    for a in 0..rs {
        for b in 0..rt {
            for alpha in 0..data.t[b][a] {
                for beta in 0..data.t[b][a] {
                    let want = if alpha == beta { 1.0 } else { 0.0 };
                    let lhs = ent(u, a, b, (a, beta), (tgt.ring.unit, 0, b, alpha));
                    report.record(
                        || format!("T2 left unit ({}; {})", src.ring.labels[a], tgt.ring.labels[b]),
                        (lhs - c64(want, 0.0)).norm(),
                    );
                    let rhs = ent(a, u, b, (a, beta), (b, alpha, tgt.ring.unit, 0));
                    report.record(
                        || format!("T2 right unit ({}; {})", src.ring.labels[a], tgt.ring.labels[b]),
                        (rhs - c64(want, 0.0)).norm(),
                    );
                }
            }
        }
    }

    // hexagon per (a, b, c; d)
    for a in 0..rs {
        for b in 0..rs {
            for c in 0..rs {
                for d in 0..rt {
                    let mut worst = 0.0_f64;
                    // source basis (e,α, f,β, h, g,γ); target basis (k, j, θ)
                    for k in 0..rs {
                        if !src.ring.admissible(b, c, k) {
                            continue;
                        }
                        for j in 0..rs {
                            if !src.ring.admissible(a, k, j) {
                                continue;
                            }
                            for theta in 0..data.t[d][j] {
                                for e in 0..rt {
                                    for alpha in 0..data.t[e][a] {
                                        for f in 0..rt {
                                            for beta in 0..data.t[f][b] {
                                                for h in 0..rt {
                                                    if !tgt.ring.admissible(e, f, h) {
                                                        continue;
                                                    }
                                                    for g in 0..rt {
                                                        if !tgt.ring.admissible(h, g, d) {
                                                            continue;
                                                        }
                                                        for gamma in 0..data.t[g][c] {
                                                            let mut top = c64(0.0, 0.0);
                                                            for i in 0..rs {
                                                                if !src.ring.admissible(a, b, i) {
                                                                    continue;
                                                                }
                                                                for om in 0..data.t[h][i] {
                                                                    top += ent(
                                                                        a,
                                                                        b,
                                                                        h,
                                                                        (i, om),
                                                                        (e, alpha, f, beta),
                                                                    ) * ent(
                                                                        i,
                                                                        c,
                                                                        d,
                                                                        (j, theta),
                                                                        (h, om, g, gamma),
                                                                    ) * src
                                                                        .f_entry(a, b, c, j, k, i)?;
                                                                }
                                                            }
                                                            let mut bottom = c64(0.0, 0.0);
                                                            for l in 0..rt {
                                                                let ftgt = tgt
                                                                    .f_entry(e, f, g, d, l, h)?;
                                                                if ftgt.norm_sqr() == 0.0 {
                                                                    continue;
                                                                }
                                                                for lm in 0..data.t[l][k] {
                                                                    bottom += ftgt
                                                                        * ent(
                                                                            b,
                                                                            c,
                                                                            l,
                                                                            (k, lm),
                                                                            (f, beta, g, gamma),
                                                                        )
                                                                        * ent(
                                                                            a,
                                                                            k,
                                                                            d,
                                                                            (j, theta),
                                                                            (e, alpha, l, lm),
                                                                        );
                                                                }
                                                            }
                                                            worst =
                                                                worst.max((top - bottom).norm());
                                                        }
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                    report.record(
                        || {
                            format!(
                                "T2 hexagon ({},{},{};{})",
                                src.ring.labels[a],
                                src.ring.labels[b],
                                src.ring.labels[c],
                                tgt.ring.labels[d]
                            )
                        },
                        worst,
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Skeletal data of a Hopf monad: object map, left (and optionally right)
/// fusion operators, counit vector and unit vectors.
#[derive(Debug, Clone)]
pub struct HopfMonadData {
    pub cat: SkeletalData,
    pub t: Vec<Vec<u32>>,
    pub h_left: HashMap<(Label, Label, Label), CMat>,
    pub h_right: Option<HashMap<(Label, Label, Label), CMat>>,
    /// `ε_α`, `1 ≤ α ≤ T_{11}`.
    pub eps: Vec<C64>,
    /// `η_{a,α}`, `1 ≤ α ≤ T_{aa}`.
    pub eta: Vec<Vec<C64>>,
}

impl HopfMonadData {
    pub fn rank(&self) -> usize {
        self.cat.rank()
    }

    pub fn h_rows(&self, a: Label, b: Label, c: Label) -> Vec<Quad> {
        let mut out = Vec::new();
        for f in 0..self.rank() {
            for gamma in 0..self.t[f][a] {
                for g in 0..self.rank() {
                    if !self.cat.ring.admissible(f, g, c) {
                        continue;
                    }
                    for theta in 0..self.t[g][b] {
                        out.push((f, gamma, g, theta));
                    }
                }
            }
        }
        out
    }

    pub fn hl_cols(&self, a: Label, b: Label, c: Label) -> Vec<Quad> {
        let mut out = Vec::new();
        for d in 0..self.rank() {
            for alpha in 0..self.t[d][b] {
                for e in 0..self.rank() {
                    if !self.cat.ring.admissible(a, d, e) {
                        continue;
                    }
                    for beta in 0..self.t[c][e] {
                        out.push((d, alpha, e, beta));
                    }
                }
            }
        }
        out
    }

    pub fn hr_cols(&self, a: Label, b: Label, c: Label) -> Vec<Quad> {
        let mut out = Vec::new();
        for d in 0..self.rank() {
            for alpha in 0..self.t[d][a] {
                for e in 0..self.rank() {
                    if !self.cat.ring.admissible(d, b, e) {
                        continue;
                    }
                    for beta in 0..self.t[c][e] {
                        out.push((d, alpha, e, beta));
                    }
                }
            }
        }
        out
    }

    /// The object map applied to an object vector.
    pub fn apply_object(&self, x: &ObjectVector) -> ObjectVector {
        let rnk = self.rank();
        let mut out = ObjectVector::zero(rnk);
        for a in 0..rnk {
            for b in 0..rnk {
                out.0[a] += self.t[a][b] * x.0[b];
            }
        }
        out
    }
}

fn index_family(
    data: &HopfMonadData,
    right: bool,
) -> Result<HashMap<(Label, Label, Label), Indexed>, MonadError> {
    let rnk = data.rank();
    let source = if right { data.h_right.as_ref().unwrap() } else { &data.h_left };
    let mut out = HashMap::new();
    for a in 0..rnk {
        for b in 0..rnk {
            for c in 0..rnk {
                let rows = data.h_rows(a, b, c);
                let cols = if right { data.hr_cols(a, b, c) } else { data.hl_cols(a, b, c) };
                if rows.is_empty() && cols.is_empty() {
                    continue;
                }
                let mat = match source.get(&(a, b, c)) {
                    Some(m) => m.clone(),
                    None => CMat::zeros(rows.len(), cols.len()),
                };
                if mat.rows != rows.len() || mat.cols != cols.len() {
                    return Err(MonadError::ShapeMismatch(format!(
                        "H({a},{b};{c}) is {}x{}, expected {}x{}",
                        mat.rows,
                        mat.cols,
                        rows.len(),
                        cols.len()
                    )));
                }
                out.insert(
                    (a, b, c),
                    Indexed {
                        mat,
                        rows: rows.into_iter().enumerate().map(|(i, r)| (r, i)).collect(),
                        cols: cols.into_iter().enumerate().map(|(i, r)| (r, i)).collect(),
                    },
                );
            }
        }
    }
    Ok(out)
}

/// Heptagon and triangle identities for the left operator, plus the mirrored
/// identities when a right operator is present.
pub fn check_hopf_monad(data: &HopfMonadData, tol: f64) -> Result<ValidationReport, MonadError> {
    let mut report = ValidationReport::new(tol);
    let rnk = data.rank();
    let labels = data.cat.ring.labels.clone();
    for a in 0..rnk {
        for b in 0..rnk {
            for c in 0..rnk {
                let rows = data.h_rows(a, b, c);
                let cols = data.hl_cols(a, b, c);
                if rows.len() != cols.len() {
                    report.fail(format!(
                        "H({},{};{}) row/column counts {} vs {}",
                        labels[a],
                        labels[b],
                        labels[c],
                        rows.len(),
                        cols.len()
                    ));
                    continue;
                }
                if rows.is_empty() {
                    continue;
                }
                match data.h_left.get(&(a, b, c)) {
                    Some(m) if m.rows == rows.len() && m.cols == cols.len() => {
                        match m.condition_estimate() {
                            Some(k) if k < 1e8 => {}
                            _ => report
                                .fail(format!("H({},{};{}) singular", labels[a], labels[b], labels[c])),
                        }
                    }
                    _ => report.fail(format!(
                        "H({},{};{}) missing or misshapen",
                        labels[a], labels[b], labels[c]
                    )),
                }
                if let Some(hr) = &data.h_right {
                    let rcols = data.hr_cols(a, b, c);
                    if rcols.len() != rows.len() {
                        report.fail(format!(
                            "right H({},{};{}) row/column counts {} vs {}",
                            labels[a],
                            labels[b],
                            labels[c],
                            rows.len(),
                            rcols.len()
                        ));
                        continue;
                    }
                    match hr.get(&(a, b, c)) {
                        Some(m) if m.rows == rows.len() => match m.condition_estimate() {
                            Some(k) if k < 1e8 => {}
                            _ => report.fail(format!(
                                "right H({},{};{}) singular",
                                labels[a], labels[b], labels[c]
                            )),
                        },
                        _ => report.fail(format!(
                            "right H({},{};{}) missing or misshapen",
                            labels[a], labels[b], labels[c]
                        )),
                    }
                }
            }
        }
    }
    if !report.pass() {
        return Ok(report);
    }
    let left = index_family(data, false)?;
    triangle_identities(data, &left, &mut report, false);
    heptagon_left(data, &left, &mut report)?;
    if data.h_right.is_some() {
        let right = index_family(data, true)?;
        triangle_identities(data, &right, &mut report, true);
        heptagon_right(data, &right, &mut report)?;
    }
    Ok(report)
}

fn triangle_identities(
    data: &HopfMonadData,
    idx: &HashMap<(Label, Label, Label), Indexed>,
    report: &mut ValidationReport,
    right: bool,
) {
    let rnk = data.rank();
    let u = data.cat.ring.unit;
    let labels = &data.cat.ring.labels;
    let side = if right { "right" } else { "left" };
    let ent = |a: Label, b: Label, c: Label, row: Quad, col: Quad| -> C64 {
        idx.get(&(a, b, c)).map(|m| m.entry(row, col)).unwrap_or_else(|| c64(0.0, 0.0))
    };

    // triangle 1: H ∘ η_{...} equals η ⊗ id (left) or id ⊗ η (right)
    for a in 0..rnk {
        for b in 0..rnk {
            for c in 0..rnk {
                let firsts: Vec<(Label, u32)> = if right {
                    (0..rnk)
                        .filter(|&d| data.cat.ring.admissible(d, b, c))
                        .flat_map(|d| (0..data.t[d][a]).map(move |al| (d, al)))
                        .collect()
                } else {
                    (0..rnk)
                        .filter(|&d| data.cat.ring.admissible(a, d, c))
                        .flat_map(|d| (0..data.t[d][b]).map(move |al| (d, al)))
                        .collect()
                };
                for &(d, alpha) in &firsts {
                    for &(f, gamma, g, theta) in &data.h_rows(a, b, c) {
                        let mut lhs = c64(0.0, 0.0);
                        for (beta, &etab) in data.eta[c].iter().enumerate() {
                            lhs += etab
                                * ent(a, b, c, (f, gamma, g, theta), (d, alpha, c, beta as u32));
                        }
                        let rhs = if right {
                            if f == d && gamma == alpha && g == b {
                                data.eta[b][theta as usize]
                            } else {
                                c64(0.0, 0.0)
                            }
                        } else if g == d && theta == alpha && f == a {
                            data.eta[a][gamma as usize]
                        } else {
                            c64(0.0, 0.0)
                        };
                        report.record(
                            || format!("{side} triangle 1 ({},{};{})", labels[a], labels[b], labels[c]),
                            (lhs - rhs).norm(),
                        );
                    }
                }
            }
        }
    }

    // triangle 2: Σ η_{1,α} ε_α = 1
    let pairing: C64 = data.eta[u].iter().zip(&data.eps).map(|(x, y)| x * y).sum();
    report.record(|| format!("{side} triangle 2"), (pairing - c64(1.0, 0.0)).norm());

    // triangle 3
    for a in 0..rnk {
        for b in 0..rnk {
            let cols = if right { data.hr_cols(u, a, b) } else { data.hl_cols(a, u, b) };
            for &(cc, alpha, dd, beta) in &cols {
                for gamma in 0..data.t[b][a] {
                    let mut lhs = c64(0.0, 0.0);
                    if right {
                        for (gp, &e) in data.eps.iter().enumerate() {
                            lhs += e * ent(u, a, b, (u, gp as u32, b, gamma), (cc, alpha, dd, beta));
                        }
                    } else {
                        for (th, &e) in data.eps.iter().enumerate() {
                            lhs += ent(a, u, b, (b, gamma, u, th as u32), (cc, alpha, dd, beta)) * e;
                        }
                    }
                    let rhs = if cc == u && dd == a && gamma == beta {
                        data.eps[alpha as usize]
                    } else {
                        c64(0.0, 0.0)
                    };
                    report.record(
                        || format!("{side} triangle 3 ({};{})", labels[a], labels[b]),
                        (lhs - rhs).norm(),
                    );
                }
            }
        }
    }

    // triangle 4
    for a in 0..rnk {
        for b in 0..rnk {
            if data.t[b][a] == 0 {
                continue;
            }
            for alpha in 0..data.t[b][a] {
                for out_copy in 0..data.t[b][a] {
                    let mut lhs = c64(0.0, 0.0);
                    for (beta, &etab) in data.eta[a].iter().enumerate() {
                        if right {
                            for (th, &e) in data.eps.iter().enumerate() {
                                lhs += etab
                                    * ent(
                                        a,
                                        u,
                                        b,
                                        (b, out_copy, u, th as u32),
                                        (a, beta as u32, a, alpha),
                                    )
                                    * e;
                            }
                        } else {
                            for (gm, &e) in data.eps.iter().enumerate() {
                                lhs += ent(
                                    u,
                                    a,
                                    b,
                                    (u, gm as u32, b, out_copy),
                                    (a, beta as u32, a, alpha),
                                ) * etab
                                    * e;
                            }
                        }
                    }
                    let rhs = if out_copy == alpha { c64(1.0, 0.0) } else { c64(0.0, 0.0) };
                    report.record(
                        || format!("{side} triangle 4 ({};{})", labels[a], labels[b]),
                        (lhs - rhs).norm(),
                    );
                }
            }
        }
    }
}

fn heptagon_left(
    data: &HopfMonadData,
    idx: &HashMap<(Label, Label, Label), Indexed>,
    report: &mut ValidationReport,
) -> Result<(), MonadError> {
    let rnk = data.rank();
    let ring = &data.cat.ring;
    let labels = &ring.labels;
    let ent = |a: Label, b: Label, c: Label, row: Quad, col: Quad| -> C64 {
        idx.get(&(a, b, c)).map(|m| m.entry(row, col)).unwrap_or_else(|| c64(0.0, 0.0))
    };
    for a in 0..rnk {
        for b in 0..rnk {
            for c in 0..rnk {
                for d in 0..rnk {
                    let mut worst = 0.0_f64;
                    // B1: (e,α) in T(c), f = (b e), (g,β) in T(f), h = (a g), (d,γ) in T(h)
                    let mut b1 = Vec::new();
                    for e in 0..rnk {
                        for alpha in 0..data.t[e][c] {
                            for f in 0..rnk {
                                if !ring.admissible(b, e, f) {
                                    continue;
                                }
                                for g in 0..rnk {
                                    for beta in 0..data.t[g][f] {
                                        for h in 0..rnk {
                                            if !ring.admissible(a, g, h) {
                                                continue;
                                            }
                                            for gamma in 0..data.t[d][h] {
                                                b1.push((e, alpha, f, g, beta, h, gamma));
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                    // B3: (g',β') in T(a), h' vertex, (e',α') in T(b), (f',γ') in T(c)
                    let mut b3 = Vec::new();
                    for gp in 0..rnk {
                        for bp in 0..data.t[gp][a] {
                            for hp in 0..rnk {
                                if !ring.admissible(gp, hp, d) {
                                    continue;
                                }
                                for ep in 0..rnk {
                                    for ap in 0..data.t[ep][b] {
                                        for fp in 0..rnk {
                                            if !ring.admissible(ep, fp, hp) {
                                                continue;
                                            }
                                            for cp in 0..data.t[fp][c] {
                                                b3.push((gp, bp, hp, ep, ap, fp, cp));
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                    for &(gp, bp, hp, ep, ap, fp, cp) in &b3 {
                        for &(e, alpha, f, g, beta, h, gamma) in &b1 {
                            let mut lhs = c64(0.0, 0.0);
                            for theta in 0..data.t[hp][f] {
                                lhs += ent(a, f, d, (gp, bp, hp, theta), (g, beta, h, gamma))
                                    * ent(b, c, hp, (ep, ap, fp, cp), (e, alpha, f, theta));
                            }
                            let mut rhs = c64(0.0, 0.0);
                            for et in 0..rnk {
                                for at in 0..data.t[et][b] {
                                    for ft in 0..rnk {
                                        if !ring.admissible(et, ft, g) {
                                            continue;
                                        }
                                        for bt in 0..data.t[ft][c] {
                                            let h1 = ent(
                                                b,
                                                c,
                                                g,
                                                (et, at, ft, bt),
                                                (e, alpha, f, beta),
                                            );
                                            if h1.norm_sqr() == 0.0 {
                                                continue;
                                            }
                                            let fmat = data.cat.f_matrix(a, et, ft, h)?;
                                            let finv = match fmat.inverse() {
                                                Some(m) => m,
                                                None => {
                                                    return Err(MonadError::SingularH(format!(
                                                        "F({a},{et},{ft};{h})"
                                                    )))
                                                }
                                            };
                                            let grows = data.cat.f_cols(a, et, ft, h);
                                            let gcols = data.cat.f_rows(a, et, ft, h);
                                            let gpos = match gcols.iter().position(|&x| x == g) {
                                                Some(p) => p,
                                                None => continue,
                                            };
                                            for (gi, &gt) in grows.iter().enumerate() {
                                                let fi = finv[(gi, gpos)];
                                                if fi.norm_sqr() == 0.0 {
                                                    continue;
                                                }
                                                for fh in 0..rnk {
                                                    for bh in 0..data.t[fh][gt] {
                                                        let h2 = ent(
                                                            gt,
                                                            c,
                                                            d,
                                                            (fh, bh, fp, cp),
                                                            (ft, bt, h, gamma),
                                                        );
                                                        if h2.norm_sqr() == 0.0 {
                                                            continue;
                                                        }
                                                        let h3 = ent(
                                                            a,
                                                            b,
                                                            fh,
                                                            (gp, bp, ep, ap),
                                                            (et, at, gt, bh),
                                                        );
                                                        if h3.norm_sqr() == 0.0 {
                                                            continue;
                                                        }
                                                        let fout = data
                                                            .cat
                                                            .f_entry(gp, ep, fp, d, hp, fh)?;
                                                        rhs += h1 * fi * h2 * h3 * fout;
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                            worst = worst.max((lhs - rhs).norm());
                        }
                    }
                    report.record(
                        || {
                            format!(
                                "left heptagon ({},{},{};{})",
                                labels[a], labels[b], labels[c], labels[d]
                            )
                        },
                        worst,
                    );
                }
            }
        }
    }
    Ok(())
}

fn heptagon_right(
    data: &HopfMonadData,
    idx: &HashMap<(Label, Label, Label), Indexed>,
    report: &mut ValidationReport,
) -> Result<(), MonadError> {
    let rnk = data.rank();
    let ring = &data.cat.ring;
    let labels = &ring.labels;
    let ent = |a: Label, b: Label, c: Label, row: Quad, col: Quad| -> C64 {
        idx.get(&(a, b, c)).map(|m| m.entry(row, col)).unwrap_or_else(|| c64(0.0, 0.0))
    };
    for a in 0..rnk {
        for b in 0..rnk {
            for c in 0..rnk {
                for d in 0..rnk {
                    let mut worst = 0.0_f64;
                    // B1: (e,α) in T(a), f = (e b), (g,β) in T(f), h = (g c), (d,γ) in T(h)
                    let mut b1 = Vec::new();
                    for e in 0..rnk {
                        for alpha in 0..data.t[e][a] {
                            for f in 0..rnk {
                                if !ring.admissible(e, b, f) {
                                    continue;
                                }
                                for g in 0..rnk {
                                    for beta in 0..data.t[g][f] {
                                        for h in 0..rnk {
                                            if !ring.admissible(g, c, h) {
                                                continue;
                                            }
                                            for gamma in 0..data.t[d][h] {
                                                b1.push((e, alpha, f, g, beta, h, gamma));
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                    // B3: (p,π) in T(a), (q,χ) in T(b), fp = (p q), (r,ρ) in T(c), (fp r d)
                    let mut b3 = Vec::new();
                    for p in 0..rnk {
                        for pi in 0..data.t[p][a] {
                            for q in 0..rnk {
                                for chi in 0..data.t[q][b] {
                                    for fp in 0..rnk {
                                        if !ring.admissible(p, q, fp) {
                                            continue;
                                        }
                                        for r in 0..rnk {
                                            if !ring.admissible(fp, r, d) {
                                                continue;
                                            }
                                            for rho in 0..data.t[r][c] {
                                                b3.push((p, pi, q, chi, fp, r, rho));
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                    for &(p, pi, q, chi, fp, r, rho) in &b3 {
                        for &(e, alpha, f, g, beta, h, gamma) in &b1 {
                            // LHS: Σ_σ Hr^{fc}_d[(fp,σ; r,ρ),(g,β; h,γ)]
                            //          Hr^{ab}_{fp}[(p,π; q,χ),(e,α; f,σ)]
                            let mut lhs = c64(0.0, 0.0);
                            for sigma in 0..data.t[fp][f] {
                                lhs += ent(f, c, d, (fp, sigma, r, rho), (g, beta, h, gamma))
                                    * ent(a, b, fp, (p, pi, q, chi), (e, alpha, f, sigma));
                            }
                            // RHS: Hr^{ab}_g, F, Hr^{a g~}_d, Hr^{bc}_{w}, F^{-1}
                            let mut rhs = c64(0.0, 0.0);
                            for et in 0..rnk {
                                for gt in 0..data.t[et][a] {
                                    for ft in 0..rnk {
                                        if !ring.admissible(et, ft, g) {
                                            continue;
                                        }
                                        for tt in 0..data.t[ft][b] {
                                            let h1 = ent(
                                                a,
                                                b,
                                                g,
                                                (et, gt, ft, tt),
                                                (e, alpha, f, beta),
                                            );
                                            if h1.norm_sqr() == 0.0 {
                                                continue;
                                            }
                                            for gtt in 0..rnk {
                                                if !ring.admissible(ft, c, gtt)
                                                    || !ring.admissible(et, gtt, h)
                                                {
                                                    continue;
                                                }
                                                let fm =
                                                    data.cat.f_entry(et, ft, c, h, gtt, g)?;
                                                if fm.norm_sqr() == 0.0 {
                                                    continue;
                                                }
                                                for w in 0..rnk {
                                                    for tau in 0..data.t[w][gtt] {
                                                        let h2 = ent(
                                                            a,
                                                            gtt,
                                                            d,
                                                            (p, pi, w, tau),
                                                            (et, gt, h, gamma),
                                                        );
                                                        if h2.norm_sqr() == 0.0 {
                                                            continue;
                                                        }
                                                        let h3 = ent(
                                                            b,
                                                            c,
                                                            w,
                                                            (q, chi, r, rho),
                                                            (ft, tt, gtt, tau),
                                                        );
                                                        if h3.norm_sqr() == 0.0 {
                                                            continue;
                                                        }
                                                        let fmat =
                                                            data.cat.f_matrix(p, q, r, d)?;
                                                        let finv = match fmat.inverse() {
                                                            Some(m) => m,
                                                            None => {
                                                                return Err(
                                                                    MonadError::SingularH(
                                                                        format!(
                                                                        "F({p},{q},{r};{d})"
                                                                    ),
                                                                    ),
                                                                )
                                                            }
                                                        };
                                                        let frows =
                                                            data.cat.f_cols(p, q, r, d);
                                                        let fcols =
                                                            data.cat.f_rows(p, q, r, d);
                                                        let (ri, ci) = match (
                                                            frows
                                                                .iter()
                                                                .position(|&x| x == fp),
                                                            fcols.iter().position(|&x| x == w),
                                                        ) {
                                                            (Some(ri), Some(ci)) => (ri, ci),
                                                            _ => continue,
                                                        };
                                                        rhs += h1 * fm * h2 * h3
                                                            * finv[(ri, ci)];
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                            worst = worst.max((lhs - rhs).norm());
                        }
                    }
                    report.record(
                        || {
                            format!(
                                "right heptagon ({},{},{};{})",
                                labels[a], labels[b], labels[c], labels[d]
                            )
                        },
                        worst,
                    );
                }
            }
        }
    }
    Ok(())
}

/// Check that a label permutation is an automorphism of the fusion ring that
/// also preserves the stored F-matrices.
fn check_action(skel: &SkeletalData, perm: &[Label]) -> Result<(), MonadError> {
    let ring = &skel.ring;
    let rnk = ring.rank();
    if perm.len() != rnk || perm[ring.unit] != ring.unit {
        return Err(MonadError::NotAnAutomorphism("wrong length or moves the unit".into()));
    }
    let mut seen = vec![false; rnk];
    for &p in perm {
        if p >= rnk || seen[p] {
            return Err(MonadError::NotAnAutomorphism("not a permutation".into()));
        }
        seen[p] = true;
    }
    for a in 0..rnk {
        for b in 0..rnk {
            for c in 0..rnk {
                if ring.n[a][b][c] != ring.n[perm[a]][perm[b]][perm[c]] {
                    return Err(MonadError::NotAnAutomorphism(format!(
                        "fusion rule broken at ({},{};{})",
                        ring.labels[a], ring.labels[b], ring.labels[c]
                    )));
                }
            }
        }
    }
    for a in 0..rnk {
        for b in 0..rnk {
            for c in 0..rnk {
                for d in 0..rnk {
                    if skel.f_rows(a, b, c, d).is_empty() {
                        continue;
                    }
                    let m1 = skel.f_matrix(a, b, c, d)?;
                    let m2 = skel.f_matrix(perm[a], perm[b], perm[c], perm[d])?;
                    if m1.max_abs_diff(&m2) > 1e-9 {
                        return Err(MonadError::NotAnAutomorphism(format!(
                            "F-symbols broken at ({},{},{};{})",
                            ring.labels[a], ring.labels[b], ring.labels[c], ring.labels[d]
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The Hopf monad `T_G = ⊕_g T_g` of a strict group action by fusion-ring
/// automorphisms with trivial tensorators. Copies of `a` in `T(b)` are the
/// group elements `g` with `σ_g(b) = a`, ordered by element index.
pub fn from_group_action(
    skel: &SkeletalData,
    group: &FiniteGroup,
    action: &[Vec<Label>],
) -> Result<HopfMonadData, MonadError> {
    let rnk = skel.rank();
    let n = group.order();
    if action.len() != n {
        return Err(MonadError::NotAnAutomorphism("one permutation per group element".into()));
    }
    for (g, perm) in action.iter().enumerate() {
        check_action(skel, perm)?;
        // must be a homomorphism too
        for h in 0..n {
            let gh = group.mul(g, h);
            for x in 0..rnk {
                if action[gh][x] != action[g][action[h][x]] {
                    return Err(MonadError::NotAnAutomorphism(
                        "assignment is not a group homomorphism".into(),
                    ));
                }
            }
        }
    }
    let mut t = vec![vec![0u32; rnk]; rnk];
    for b in 0..rnk {
        for g in 0..n {
            t[action[g][b]][b] += 1;
        }
    }
    // copy index of g in the list { h : σ_h(b) = a } ordered by h
    let copy_of = |a: Label, b: Label, g: usize| -> u32 {
        (0..g).filter(|&h| action[h][b] == a).count() as u32
    };
    let data_shell = HopfMonadData {
        cat: skel.clone(),
        t: t.clone(),
        h_left: HashMap::new(),
        h_right: None,
        eps: vec![c64(1.0, 0.0); n],
        eta: (0..rnk)
            .map(|a| {
                let copies = (0..n).filter(|&g| action[g][a] == a).count();
                let mut v = vec![c64(0.0, 0.0); copies];
                // the identity element is g = 0, hence always copy 0
                v[0] = c64(1.0, 0.0);
                v
            })
            .collect(),
    };
    let mut h_left = HashMap::new();
    let mut h_right = HashMap::new();
    for a in 0..rnk {
        for b in 0..rnk {
            for c in 0..rnk {
                let rows = data_shell.h_rows(a, b, c);
                if rows.is_empty() {
                    continue;
                }
                let row_index: HashMap<Quad, usize> =
                    rows.iter().copied().enumerate().map(|(i, r)| (r, i)).collect();
                // left operator
                let cols = data_shell.hl_cols(a, b, c);
                let mut m = CMat::zeros(rows.len(), cols.len());
                for (j, &(d, alpha, e, beta)) in cols.iter().enumerate() {
                    let g_in = (0..n)
                        .filter(|&g| action[g][b] == d)
                        .nth(alpha as usize)
                        .expect("copy exists");
                    let g_out = (0..n)
                        .filter(|&g| action[g][e] == c)
                        .nth(beta as usize)
                        .expect("copy exists");
                    let f = action[g_out][a];
                    let prod = group.mul(g_out, g_in);
                    let gprime = action[prod][b];
                    let row = (f, copy_of(f, a, g_out), gprime, copy_of(gprime, b, prod));
                    let i = row_index[&row];
                    m[(i, j)] = c64(1.0, 0.0);
                }
                h_left.insert((a, b, c), m);
                // right operator
                let cols = data_shell.hr_cols(a, b, c);
                let mut m = CMat::zeros(rows.len(), cols.len());
                for (j, &(d, alpha, e, beta)) in cols.iter().enumerate() {
                    let g_in = (0..n)
                        .filter(|&g| action[g][a] == d)
                        .nth(alpha as usize)
                        .expect("copy exists");
                    let g_out = (0..n)
                        .filter(|&g| action[g][e] == c)
                        .nth(beta as usize)
                        .expect("copy exists");
                    let prod = group.mul(g_out, g_in);
                    let f = action[prod][a];
                    let gprime = action[g_out][b];
                    let row = (f, copy_of(f, a, prod), gprime, copy_of(gprime, b, g_out));
                    let i = row_index[&row];
                    m[(i, j)] = c64(1.0, 0.0);
                }
                h_right.insert((a, b, c), m);
            }
        }
    }
    Ok(HopfMonadData { h_left, h_right: Some(h_right), ..data_shell })
}

/// Position of the pair `(x, i)` among the copies of `outer` in
/// `H ⊗ inner`, i.e. in the engine basis of `Hom(outer, Node(H, inner))`.
fn t_copy_index(
    skel: &SkeletalData,
    h_obj: &ObjectVector,
    x: Label,
    i: u32,
    inner: Label,
    outer: Label,
) -> u32 {
    let mut pos = 0u32;
    for u in 0..skel.rank() {
        if !skel.ring.admissible(u, inner, outer) {
            continue;
        }
        for copy in 0..h_obj.0[u] {
            if u == x && copy == i {
                return pos;
            }
            pos += 1;
        }
    }
    panic!("copy index out of range")
}

/// The Hopf monad `T = H ⊗ −` of a categorical Hopf algebra, both fusion
/// operators assembled through the tree engine.
pub fn from_hopf_algebra(h: &HopfAlgebraData) -> Result<HopfMonadData, MonadError> {
    let check = crate::hopf::check_hopf_axioms(h, 1e-8)
        .map_err(|e| MonadError::AxiomViolation(e.to_string()))?;
    if !check.pass() {
        return Err(MonadError::AxiomViolation(format!(
            "max residual {:.3e}",
            check.max_residual
        )));
    }
    let skel = h.ambient();
    let ctx = Ctx::new(skel);
    let rnk = skel.rank();
    let h_obj = &h.algebra.object;
    let mut t = vec![vec![0u32; rnk]; rnk];
    for b in 0..rnk {
        for x in 0..rnk {
            for a in 0..rnk {
                t[a][b] += h_obj.0[x] * skel.ring.n[x][b][a];
            }
        }
    }
    let h_leaf = Tree::leaf(h_obj.clone());
    let simple = |a: Label| Tree::leaf(ObjectVector::simple(rnk, a));

    // T2(X, Y) on Node(H, Node(X, Y)): Δ, regroup, braid the inner H past X,
    // regroup to Node(Node(H,X), Node(H,Y))
    let t2_on = |x: &Tree, y: &Tree| -> Result<Morphism, MonadError> {
        let src = Tree::node(h_leaf.clone(), Tree::node(x.clone(), y.clone()));
        let d0 = ctx.apply_at(&src, &[0], &h.delta)?;
        let mid = Tree::node(
            Tree::node(h_leaf.clone(), Tree::node(h_leaf.clone(), x.clone())),
            y.clone(),
        );
        let f1 = ctx.f_move(&d0.dst, &mid)?;
        let braid = ctx.r_move(&mid, &[0, 1], false)?;
        let grouped = Tree::node(
            Tree::node(h_leaf.clone(), x.clone()),
            Tree::node(h_leaf.clone(), y.clone()),
        );
        let f2 = ctx.f_move(&braid.dst, &grouped)?;
        Ok(ctx.compose_all(&[&d0, &f1, &braid, &f2]))
    };
    // μ on Node(H, Node(H, Y)) -> Node(H, Y)
    let mu_on = |y: &Tree| -> Result<Morphism, MonadError> {
        let src = Tree::node(h_leaf.clone(), Tree::node(h_leaf.clone(), y.clone()));
        let grouped = Tree::node(Tree::node(h_leaf.clone(), h_leaf.clone()), y.clone());
        let f = ctx.f_move(&src, &grouped)?;
        let m = ctx.apply_at(&grouped, &[0], &h.algebra.mul)?;
        Ok(ctx.compose(&m, &f))
    };

    let shell = HopfMonadData {
        cat: skel.clone(),
        t: t.clone(),
        h_left: HashMap::new(),
        h_right: None,
        eps: Vec::new(),
        eta: Vec::new(),
    };

    // decode an engine element of Node(H, w-leaf) at a channel into (x, i)
    let decode_pair = |elem: &BasisElem| -> (Label, u32, BasisElem) {
        match elem {
            BasisElem::Node { lch, rch: _, l, r } => match &**l {
                BasisElem::Leaf { copy } => (*lch, *copy, (**r).clone()),
                _ => unreachable!(),
            },
            _ => unreachable!("expected an H ⊗ _ node"),
        }
    };

    let mut h_left: HashMap<(Label, Label, Label), CMat> = HashMap::new();
    let mut h_right: HashMap<(Label, Label, Label), CMat> = HashMap::new();
    for a in 0..rnk {
        for b in 0..rnk {
            // left operator on T(a ⊗ T(b))
            let tb = Tree::node(h_leaf.clone(), simple(b));
            let t2 = t2_on(&simple(a), &tb)?;
            let mu = mu_on(&simple(b))?;
            let mu_applied = ctx.apply_at(&t2.dst, &[1], &mu)?;
            let left = ctx.compose(&mu_applied, &t2);
            for c in 0..rnk {
                let rows = shell.h_rows(a, b, c);
                let cols = shell.hl_cols(a, b, c);
                if rows.is_empty() {
                    continue;
                }
                let row_pos: HashMap<Quad, usize> =
                    rows.iter().copied().enumerate().map(|(i, r)| (r, i)).collect();
                let col_pos: HashMap<Quad, usize> =
                    cols.iter().copied().enumerate().map(|(i, r)| (r, i)).collect();
                let block = match left.blocks.get(&c) {
                    Some(m) => m.clone(),
                    None => CMat::zeros(rows.len(), cols.len()),
                };
                let src_basis = ctx.basis(&left.src, c);
                let dst_basis = ctx.basis(&left.dst, c);
                let mut m = CMat::zeros(rows.len(), cols.len());
                for (je, col_elem) in src_basis.iter().enumerate() {
                    // Node{x2, e, Leaf i2, Node{a, d, Leaf 0, Node{x1, b, ...}}}
                    let (x2, i2, rest) = decode_pair(col_elem);
                    let (e, d, inner) = match &rest {
                        BasisElem::Node { lch: _, rch, l: _, r } => {
                            let (x1, i1, _) = decode_pair(r);
                            let d = match &**r {
                                BasisElem::Node { .. } => col_elem
                                    .channel_at(c, &[1, 1]),
                                _ => unreachable!(),
                            };
                            (*rch, d, (x1, i1))
                        }
                        _ => unreachable!(),
                    };
                    // rch of the root is the channel of Node(a, Node(H, b));
                    // recompute e from the element itself
                    let e = {
                        let _ = e;
                        col_elem.channel_at(c, &[1])
                    };
                    let alpha = t_copy_index(skel, h_obj, inner.0, inner.1, b, d);
                    let beta = t_copy_index(skel, h_obj, x2, i2, e, c);
                    let j = col_pos[&(d, alpha, e, beta)];
                    for (ie, row_elem) in dst_basis.iter().enumerate() {
                        let v = block[(ie, je)];
                        if v.norm_sqr() == 0.0 {
                            continue;
                        }
                        // Node{f, g, Node{x3, a, ..}, Node{x4, b, ..}}
                        let (f, g) = match row_elem {
                            BasisElem::Node { lch, rch, .. } => (*lch, *rch),
                            _ => unreachable!(),
                        };
                        let (x3, i3, _) = match row_elem {
                            BasisElem::Node { l, .. } => decode_pair(l),
                            _ => unreachable!(),
                        };
                        let (x4, i4, _) = match row_elem {
                            BasisElem::Node { r, .. } => decode_pair(r),
                            _ => unreachable!(),
                        };
                        let gamma = t_copy_index(skel, h_obj, x3, i3, a, f);
                        let theta = t_copy_index(skel, h_obj, x4, i4, b, g);
                        let i = row_pos[&(f, gamma, g, theta)];
                        m[(i, j)] += v;
                    }
                }
                h_left.insert((a, b, c), m);
            }
            // right operator on T(T(a) ⊗ b)
            let ta = Tree::node(h_leaf.clone(), simple(a));
            let t2r = t2_on(&ta, &simple(b))?;
            let mur = mu_on(&simple(a))?;
            let mu_applied = ctx.apply_at(&t2r.dst, &[0], &mur)?;
            let right = ctx.compose(&mu_applied, &t2r);
            for c in 0..rnk {
                let rows = shell.h_rows(a, b, c);
                let cols = shell.hr_cols(a, b, c);
                if rows.is_empty() {
                    continue;
                }
                let row_pos: HashMap<Quad, usize> =
                    rows.iter().copied().enumerate().map(|(i, r)| (r, i)).collect();
                let col_pos: HashMap<Quad, usize> =
                    cols.iter().copied().enumerate().map(|(i, r)| (r, i)).collect();
                let block = match right.blocks.get(&c) {
                    Some(m) => m.clone(),
                    None => CMat::zeros(rows.len(), cols.len()),
                };
                let src_basis = ctx.basis(&right.src, c);
                let dst_basis = ctx.basis(&right.dst, c);
                let mut m = CMat::zeros(rows.len(), cols.len());
                for (je, col_elem) in src_basis.iter().enumerate() {
                    // Node{x2, e, Leaf i2, Node{d, b, Node{x1, a,..}, Leaf 0}}
                    let (x2, i2, rest) = decode_pair(col_elem);
                    let (d, inner) = match &rest {
                        BasisElem::Node { lch, l, .. } => {
                            let (x1, i1, _) = match &**l {
                                BasisElem::Node { .. } => decode_pair(l),
                                _ => unreachable!(),
                            };
                            (*lch, (x1, i1))
                        }
                        _ => unreachable!(),
                    };
                    let e = col_elem.channel_at(c, &[1]);
                    let alpha = t_copy_index(skel, h_obj, inner.0, inner.1, a, d);
                    let beta = t_copy_index(skel, h_obj, x2, i2, e, c);
                    let j = col_pos[&(d, alpha, e, beta)];
                    for (ie, row_elem) in dst_basis.iter().enumerate() {
                        let v = block[(ie, je)];
                        if v.norm_sqr() == 0.0 {
                            continue;
                        }
                        let (f, g) = match row_elem {
                            BasisElem::Node { lch, rch, .. } => (*lch, *rch),
                            _ => unreachable!(),
                        };
                        let (x3, i3, _) = match row_elem {
                            BasisElem::Node { l, .. } => decode_pair(l),
                            _ => unreachable!(),
                        };
                        let (x4, i4, _) = match row_elem {
                            BasisElem::Node { r, .. } => decode_pair(r),
                            _ => unreachable!(),
                        };
                        let gamma = t_copy_index(skel, h_obj, x3, i3, a, f);
                        let theta = t_copy_index(skel, h_obj, x4, i4, b, g);
                        let i = row_pos[&(f, gamma, g, theta)];
                        m[(i, j)] += v;
                    }
                }
                h_right.insert((a, b, c), m);
            }
        }
    }
    // ε from the counit on the unit copies of H; η from the algebra unit
    let u = skel.ring.unit;
    let eps: Vec<C64> = {
        let b = h.counit.blocks.get(&u).expect("counit has a unit block");
        (0..h_obj.0[u] as usize).map(|i| b[(0, i)]).collect()
    };
    let eta_coeffs: Vec<C64> = {
        let b = h.algebra.unit.blocks.get(&u).expect("unit has a unit block");
        (0..h_obj.0[u] as usize).map(|i| b[(i, 0)]).collect()
    };
    let eta: Vec<Vec<C64>> = (0..rnk)
        .map(|a| {
            let mut v = vec![c64(0.0, 0.0); t[a][a] as usize];
            for (i, &coeff) in eta_coeffs.iter().enumerate() {
                let pos = t_copy_index(skel, h_obj, u, i as u32, a, a);
                v[pos as usize] = coeff;
            }
            v
        })
        .collect();
    Ok(HopfMonadData { cat: skel.clone(), t, h_left, h_right: Some(h_right), eps, eta })
}

/// Derived multiplication `μ` and comonoidal `T2` of a left Hopf monad.
///
/// `mu[(y, x)]` maps the `T²(x)` basis `(d, α, β)` (with `α ≤ T_dx`,
/// `β ≤ T_yd`) to the copies of `y` in `T(x)`; `t2[(x, y, c)]` maps copies
/// of `c` in `T(xy)`-components `(e, β)` to the `H`-rows `(f, γ; g, θ)`.
#[derive(Debug, Clone)]
pub struct DerivedStructure {
    pub mu: HashMap<(Label, Label), CMat>,
    pub t2: HashMap<(Label, Label, Label), CMat>,
}

pub fn t2_basis_cols(data: &HopfMonadData, x: Label, y: Label, c: Label) -> Vec<(Label, u32)> {
    let mut out = Vec::new();
    for e in 0..data.rank() {
        if !data.cat.ring.admissible(x, y, e) {
            continue;
        }
        for beta in 0..data.t[c][e] {
            out.push((e, beta));
        }
    }
    out
}

pub fn mu_cols(data: &HopfMonadData, y: Label, x: Label) -> Vec<(Label, u32, u32)> {
    let mut out = Vec::new();
    for d in 0..data.rank() {
        for alpha in 0..data.t[d][x] {
            for beta in 0..data.t[y][d] {
                out.push((d, alpha, beta));
            }
        }
    }
    out
}

pub fn derived_structure(data: &HopfMonadData) -> Result<DerivedStructure, MonadError> {
    let rnk = data.rank();
    let u = data.cat.ring.unit;
    let idx = index_family(data, false)?;
    let ent = |a: Label, b: Label, c: Label, row: Quad, col: Quad| -> C64 {
        idx.get(&(a, b, c)).map(|m| m.entry(row, col)).unwrap_or_else(|| c64(0.0, 0.0))
    };
    let mut mu = HashMap::new();
    for y in 0..rnk {
        for x in 0..rnk {
            let cols = mu_cols(data, y, x);
            if cols.is_empty() || data.t[y][x] == 0 {
                if !cols.is_empty() || data.t[y][x] > 0 {
                    mu.insert((y, x), CMat::zeros(data.t[y][x] as usize, cols.len()));
                }
                continue;
            }
            let mut m = CMat::zeros(data.t[y][x] as usize, cols.len());
            for (j, &(d, alpha, beta)) in cols.iter().enumerate() {
                for gamma in 0..data.t[y][x] {
                    // μ = (T0 ⊗ id) H_{1,x}: rows with the unit in the first slot
                    let mut acc = c64(0.0, 0.0);
                    for (gp, &e) in data.eps.iter().enumerate() {
                        acc += e * ent(u, x, y, (u, gp as u32, y, gamma), (d, alpha, d, beta));
                    }
                    m[(gamma as usize, j)] = acc;
                }
            }
            mu.insert((y, x), m);
        }
    }
    let mut t2 = HashMap::new();
    for x in 0..rnk {
        for y in 0..rnk {
            for c in 0..rnk {
                let cols = t2_basis_cols(data, x, y, c);
                let rows = data.h_rows(x, y, c);
                if cols.is_empty() && rows.is_empty() {
                    continue;
                }
                let mut m = CMat::zeros(rows.len(), cols.len());
                for (j, &(e, beta)) in cols.iter().enumerate() {
                    for (i, &row) in rows.iter().enumerate() {
                        // T2 = H ∘ T(id ⊗ η): sum η over the inner copy
                        let mut acc = c64(0.0, 0.0);
                        for (al, &etav) in data.eta[y].iter().enumerate() {
                            acc += etav * ent(x, y, c, row, (y, al as u32, e, beta));
                        }
                        m[(i, j)] = acc;
                    }
                }
                t2.insert((x, y, c), m);
            }
        }
    }
    Ok(DerivedStructure { mu, t2 })
}

/// Associativity and unit laws for a derived multiplication.
pub fn check_derived_mu(
    data: &HopfMonadData,
    derived: &DerivedStructure,
    tol: f64,
) -> ValidationReport {
    let rnk = data.rank();
    let mut report = ValidationReport::new(tol);
    // units: μ ∘ T(η) = id and μ ∘ η_T = id
    for x in 0..rnk {
        for y in 0..rnk {
            let txy = data.t[y][x] as usize;
            if txy == 0 {
                continue;
            }
            let cols = mu_cols(data, y, x);
            let m = &derived.mu[&(y, x)];
            for g_out in 0..txy {
                for g_in in 0..txy {
                    let want = if g_out == g_in { 1.0 } else { 0.0 };
                    let mut via_teta = c64(0.0, 0.0);
                    let mut via_etat = c64(0.0, 0.0);
                    for (j, &(d, alpha, beta)) in cols.iter().enumerate() {
                        // T(η_x): picks d = x, α over η_x, β = incoming copy
                        if d == x && beta == g_in as u32 {
                            if let Some(&e) = data.eta[x].get(alpha as usize) {
                                via_teta += e * m[(g_out, j)];
                            }
                        }
                        // η_{T(x)}: picks d = y, α = incoming copy, β over η_y
                        if d == y && alpha == g_in as u32 {
                            if let Some(&e) = data.eta[y].get(beta as usize) {
                                via_etat += e * m[(g_out, j)];
                            }
                        }
                    }
                    report.record(
                        || format!("mu unit T(eta) ({},{})", x, y),
                        (via_teta - c64(want, 0.0)).norm(),
                    );
                    report.record(
                        || format!("mu unit eta_T ({},{})", x, y),
                        (via_etat - c64(want, 0.0)).norm(),
                    );
                }
            }
        }
    }
    // associativity μ ∘ Tμ = μ ∘ μT on T³
    for x in 0..rnk {
        for y in 0..rnk {
            if data.t[y][x] == 0 && (0..rnk).all(|d| data.t[d][x] == 0 || data.t[y][d] == 0) {
                continue;
            }
            // T³ basis: (d, α ≤ T_dx, e, β ≤ T_ed, γ ≤ T_ye)
            for d in 0..rnk {
                for alpha in 0..data.t[d][x] {
                    for e in 0..rnk {
                        for beta in 0..data.t[e][d] {
                            for gamma in 0..data.t[y][e] {
                                for out in 0..data.t[y][x] {
                                    // μ ∘ T(μ): inner (d,α,β at channel e) then outer (e,·,γ)
                                    let mut lhs = c64(0.0, 0.0);
                                    if let Some(inner) = derived.mu.get(&(e, x)) {
                                        let icols = mu_cols(data, e, x);
                                        let j = icols
                                            .iter()
                                            .position(|&t| t == (d, alpha, beta))
                                            .unwrap();
                                        for th in 0..data.t[e][x] {
                                            let outer = &derived.mu[&(y, x)];
                                            let ocols = mu_cols(data, y, x);
                                            let oj = ocols
                                                .iter()
                                                .position(|&t| t == (e, th, gamma))
                                                .unwrap();
                                            lhs += inner[(th as usize, j)]
                                                * outer[(out as usize, oj)];
                                        }
                                    }
                                    // μ ∘ μT: outer pair (e,β,γ at object d) then (d,α,·)
                                    let mut rhs = c64(0.0, 0.0);
                                    if let Some(outer_op) = derived.mu.get(&(y, d)) {
                                        let icols = mu_cols(data, y, d);
                                        let j = icols
                                            .iter()
                                            .position(|&t| t == (e, beta, gamma))
                                            .unwrap();
                                        for th in 0..data.t[y][d] {
                                            let outer = &derived.mu[&(y, x)];
                                            let ocols = mu_cols(data, y, x);
                                            let oj = ocols
                                                .iter()
                                                .position(|&t| t == (d, alpha, th))
                                                .unwrap();
                                            rhs += outer_op[(th as usize, j)]
                                                * outer[(out as usize, oj)];
                                        }
                                    }
                                    report.record(
                                        || format!("mu associativity ({x},{y})"),
                                        (lhs - rhs).norm(),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

/// Object map of the double `D_T = Z_T ∘ T` with
/// `Z_T(x) = ⊕_i dual(T(x_i)) ⊗ x ⊗ x_i`; multiplicities only.
pub fn double_object_map(ring: &FusionRing, t: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let rnk = ring.rank();
    let mut z = vec![vec![0u32; rnk]; rnk];
    for x in 0..rnk {
        let mut total = ObjectVector::zero(rnk);
        for xi in 0..rnk {
            // dual(T(x_i))
            let mut dual_t = ObjectVector::zero(rnk);
            for a in 0..rnk {
                dual_t.0[ring.dual[a]] += t[a][xi];
            }
            let mid = ring
                .decompose_product(&dual_t, &ObjectVector::simple(rnk, x))
                .expect("rank match");
            let full = ring
                .decompose_product(&mid, &ObjectVector::simple(rnk, xi))
                .expect("rank match");
            total = total.add(&full);
        }
        for ylab in 0..rnk {
            z[ylab][x] = total.0[ylab];
        }
    }
    // D = Z · T
    let mut d = vec![vec![0u32; rnk]; rnk];
    for y in 0..rnk {
        for x in 0..rnk {
            d[y][x] = (0..rnk).map(|m| z[y][m] * t[m][x]).sum();
        }
    }
    d
}

/// The identity tensor functor on skeletal data (baseline for checks).
pub fn identity_functor(skel: &SkeletalData) -> TensorFunctorData {
    let rnk = skel.rank();
    let mut t = vec![vec![0u32; rnk]; rnk];
    for a in 0..rnk {
        t[a][a] = 1;
    }
    let shell =
        TensorFunctorData { source: skel.clone(), target: skel.clone(), t, t2: HashMap::new() };
    let mut t2 = HashMap::new();
    for a in 0..rnk {
        for b in 0..rnk {
            for c in 0..rnk {
                let n = shell.t2_rows(a, b, c).len();
                if n > 0 {
                    t2.insert((a, b, c), CMat::identity(n));
                }
            }
        }
    }
    TensorFunctorData { t2, ..shell }
}

/// The identity monad (useful as a baseline and for the double examples).
pub fn identity_monad(skel: &SkeletalData) -> HopfMonadData {
    let group = FiniteGroup::trivial();
    let action = vec![(0..skel.rank()).collect::<Vec<_>>()];
    from_group_action(skel, &group, &action).expect("trivial action is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{hopf_two_plus_e, hopf_two_plus_tau};
    use crate::skel::{builtin_skeletal, fib_skeletal, SkelKey};

    #[test]
    fn identity_functor_passes() {
        for skel in [fib_skeletal(), builtin_skeletal(&SkelKey::VecGTrivial(vec![2])).unwrap()] {
            let f = identity_functor(&skel);
            let rep = check_tensor_functor(&f, 1e-9).unwrap();
            assert!(rep.pass(), "{rep}");
        }
    }

    #[test]
    fn forgetful_functor_vec_z2_to_vec_passes() {
        let source = builtin_skeletal(&SkelKey::VecGTrivial(vec![2])).unwrap();
        let target = builtin_skeletal(&SkelKey::VecGTrivial(vec![1])).unwrap();
        let t = vec![vec![1u32, 1u32]];
        let shell = TensorFunctorData { source, target, t, t2: HashMap::new() };
        let mut t2 = HashMap::new();
        for a in 0..2 {
            for b in 0..2 {
                let n = shell.t2_rows(a, b, 0).len();
                if n > 0 {
                    t2.insert((a, b, 0), CMat::identity(n));
                }
            }
        }
        let data = TensorFunctorData { t2, ..shell };
        let rep = check_tensor_functor(&data, 1e-9).unwrap();
        assert!(rep.pass(), "{rep}");
    }

    #[test]
    fn negated_t2_entry_fails_with_location() {
        let skel = fib_skeletal();
        let mut f = identity_functor(&skel);
        let key = (1usize, 1usize, 0usize);
        let mut m = f.t2[&key].clone();
        m[(0, 0)] = -m[(0, 0)];
        f.t2.insert(key, m);
        let rep = check_tensor_functor(&f, 1e-9).unwrap();
        assert!(!rep.pass());
        assert!(rep.failures.iter().any(|x| x.what.contains("hexagon")));
    }

    #[test]
    fn trivial_group_action_monads_pass() {
        for skel in [fib_skeletal(), builtin_skeletal(&SkelKey::VecGTrivial(vec![3])).unwrap()] {
            let data = identity_monad(&skel);
            let rep = check_hopf_monad(&data, 1e-9).unwrap();
            assert!(rep.pass(), "{rep}");
        }
    }

    #[test]
    fn z2_trivial_action_on_vec_z2_passes() {
        let skel = builtin_skeletal(&SkelKey::VecGTrivial(vec![2])).unwrap();
        let group = FiniteGroup::cyclic(2);
        let action = vec![vec![0, 1], vec![0, 1]];
        let data = from_group_action(&skel, &group, &action).unwrap();
        assert_eq!(data.t, vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(data.eps.len(), 2);
        let pairing: C64 = data.eta[0].iter().zip(&data.eps).map(|(a, b)| a * b).sum();
        assert!((pairing - c64(1.0, 0.0)).norm() < 1e-12);
        let rep = check_hopf_monad(&data, 1e-9).unwrap();
        assert!(rep.pass(), "{rep}");
    }

    #[test]
    fn z2_swap_action_on_vec_z3_passes() {
        let skel = builtin_skeletal(&SkelKey::VecGTrivial(vec![3])).unwrap();
        let group = FiniteGroup::cyclic(2);
        // nontrivial element swaps g1 and g2
        let action = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let data = from_group_action(&skel, &group, &action).unwrap();
        assert_eq!(data.t[1][1], 1);
        assert_eq!(data.t[2][1], 1);
        let rep = check_hopf_monad(&data, 1e-9).unwrap();
        assert!(rep.pass(), "{rep}");
    }

    #[test]
    fn non_automorphism_rejected() {
        let skel = builtin_skeletal(&SkelKey::VecGTrivial(vec![3])).unwrap();
        let group = FiniteGroup::cyclic(2);
        let action = vec![vec![0, 1, 2], vec![1, 0, 2]];
        assert!(matches!(
            from_group_action(&skel, &group, &action),
            Err(MonadError::NotAnAutomorphism(_))
        ));
    }

    #[test]
    fn monad_from_two_plus_e_passes() {
        let h = hopf_two_plus_e();
        let data = from_hopf_algebra(&h).unwrap();
        assert_eq!(data.t, vec![vec![2, 1], vec![1, 2]]);
        let rep = check_hopf_monad(&data, 1e-9).unwrap();
        assert!(rep.pass(), "{rep}");
    }

    #[test]
    fn monad_from_two_plus_tau_passes() {
        let h = hopf_two_plus_tau();
        let data = from_hopf_algebra(&h).unwrap();
        // T(1) = 2·1 + τ, T(τ) = 1 + 3τ
        assert_eq!(data.t, vec![vec![2, 1], vec![1, 3]]);
        let rep = check_hopf_monad(&data, 1e-9).unwrap();
        assert!(rep.pass(), "{rep}");
    }

    #[test]
    fn perturbed_monad_fails() {
        let skel = builtin_skeletal(&SkelKey::VecGTrivial(vec![2])).unwrap();
        let group = FiniteGroup::cyclic(2);
        let action = vec![vec![0, 1], vec![0, 1]];
        let mut data = from_group_action(&skel, &group, &action).unwrap();
        let key = (0usize, 0usize, 0usize);
        let mut m = data.h_left[&key].clone();
        m[(0, 0)] += c64(0.01, 0.0);
        data.h_left.insert(key, m);
        let rep = check_hopf_monad(&data, 1e-9).unwrap();
        assert!(!rep.pass());
        // zeroing an η vector breaks triangle 2
        let mut data = from_group_action(&skel, &group, &action).unwrap();
        data.eta[0] = vec![c64(0.0, 0.0); 2];
        let rep = check_hopf_monad(&data, 1e-9).unwrap();
        assert!(rep
            .failures
            .iter()
            .any(|f| f.what.contains("triangle 2")));
    }

    #[test]
    fn derived_mu_of_group_monad_is_group_algebra() {
        let skel = builtin_skeletal(&SkelKey::VecGTrivial(vec![2])).unwrap();
        let group = FiniteGroup::cyclic(2);
        let action = vec![vec![0, 1], vec![0, 1]];
        let data = from_group_action(&skel, &group, &action).unwrap();
        let derived = derived_structure(&data).unwrap();
        let rep = check_derived_mu(&data, &derived, 1e-9);
        assert!(rep.pass(), "{rep}");
        // μ on T²(1) is the multiplication table of C[Z2]
        let m = &derived.mu[&(0, 0)];
        let cols = mu_cols(&data, 0, 0);
        for (j, &(_, alpha, beta)) in cols.iter().enumerate() {
            let g = group.mul(beta as usize, alpha as usize);
            for out in 0..2usize {
                let want = if out == g { 1.0 } else { 0.0 };
                assert!((m[(out, j)] - c64(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn derived_mu_of_hopf_monad_matches_algebra() {
        let h = hopf_two_plus_e();
        let data = from_hopf_algebra(&h).unwrap();
        let derived = derived_structure(&data).unwrap();
        let rep = check_derived_mu(&data, &derived, 1e-8);
        assert!(rep.pass(), "{rep}");
    }

    #[test]
    fn identity_monad_derived_mu_is_identity() {
        let skel = fib_skeletal();
        let data = identity_monad(&skel);
        let derived = derived_structure(&data).unwrap();
        for ((y, x), m) in &derived.mu {
            if data.t[*y][*x] > 0 {
                assert!(m.max_abs_diff(&CMat::identity(1)) < 1e-12);
            }
        }
    }

    #[test]
    fn double_object_maps() {
        // identity monad on Vec_Z2: D(x) = sum_i x_i* x x_i applied twice
        let skel = builtin_skeletal(&SkelKey::VecGTrivial(vec![2])).unwrap();
        let data = identity_monad(&skel);
        let d = double_object_map(&skel.ring, &data.t);
        assert_eq!(d, vec![vec![2, 0], vec![0, 2]]);
        // identity monad on Fib: D(1) = 2·1 + τ
        let skel = fib_skeletal();
        let data = identity_monad(&skel);
        let d = double_object_map(&skel.ring, &data.t);
        assert_eq!(d[0][0], 2);
        assert_eq!(d[1][0], 1);
        // rank-1 category
        let skel = builtin_skeletal(&SkelKey::VecGTrivial(vec![1])).unwrap();
        let data = identity_monad(&skel);
        let d = double_object_map(&skel.ring, &data.t);
        assert_eq!(d, vec![vec![1]]);
    }
}
