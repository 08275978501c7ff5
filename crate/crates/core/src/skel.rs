//! Skeletal data for multiplicity-free fusion categories: F-symbols, optional
//! R-symbols and twists, pentagon/hexagon validation, and hom-space bases.
//!
//! Conventions. `F^{abc}_d` is the matrix of the associator
//! `(a⊗b)⊗c → a⊗(b⊗c)` in the splitting-tree bases: columns are indexed by
//! the left-nested internal label `f` (the `a⊗b` channel), rows by the
//! right-nested internal label `e` (the `b⊗c` channel), so that
//! `a ∘ X_f = Σ_e F^{abc}_{d;ef} Y_e`. Unit isomorphisms are identities and
//! every F-matrix with a unit leg is the identity matrix. `R^{ab}_c` is the
//! braiding phase on the `c` channel: `c_{a,b} ∘ V_c^{ab} = R^{ab}_c V_c^{ba}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fusion::{quantum_dimensions, FusionRing, Label};
use crate::linalg::CMat;
use crate::num::{c64, unit_phase, C64};
use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum SkelError {
    #[error("fusion ring has multiplicities; skeletal data requires a multiplicity-free ring")]
    MultiplicityNotFree,
    #[error("missing F entry at ({0},{1},{2};{3})")]
    MissingFEntry(String, String, String, String),
    #[error("missing R data")]
    MissingREntry,
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("missing symbol: {0}")]
    MissingSymbol(String),
    #[error("unknown skeletal catalog key: {0}")]
    UnknownKey(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

#[derive(Debug, Clone)]
pub struct SkeletalData {
    pub ring: FusionRing,
    /// `f[(a,b,c,d)]` stored only for keys where the matrix is not forced to
    /// be an identity by the unit convention.
    f: HashMap<(Label, Label, Label, Label), CMat>,
    /// `r[a][b][c]` braiding phases on admissible channels.
    pub r: Option<Vec<Vec<Vec<C64>>>>,
    pub theta: Option<Vec<C64>>,
}

impl SkeletalData {
    pub fn new(ring: FusionRing) -> Result<Self, SkelError> {
        if !ring.is_multiplicity_free() {
            return Err(SkelError::MultiplicityNotFree);
        }
        Ok(SkeletalData { ring, f: HashMap::new(), r: None, theta: None })
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    /// Internal labels `f` of the left-nested tree `((a b)_f c) -> d`.
    pub fn f_cols(&self, a: Label, b: Label, c: Label, d: Label) -> Vec<Label> {
        (0..self.rank())
            .filter(|&f| self.ring.admissible(a, b, f) && self.ring.admissible(f, c, d))
            .collect()
    }

    /// Internal labels `e` of the right-nested tree `(a (b c)_e) -> d`.
    pub fn f_rows(&self, a: Label, b: Label, c: Label, d: Label) -> Vec<Label> {
        (0..self.rank())
            .filter(|&e| self.ring.admissible(b, c, e) && self.ring.admissible(a, e, d))
            .collect()
    }

    pub fn set_f(&mut self, a: Label, b: Label, c: Label, d: Label, m: CMat) {
        self.f.insert((a, b, c, d), m);
    }

    pub fn stored_f_keys(&self) -> impl Iterator<Item = &(Label, Label, Label, Label)> {
        self.f.keys()
    }

    /// The F-matrix, defaulting to the identity pairing of row/column labels
    /// when no entry is stored (catalog data stores only non-trivial keys).
    pub fn f_matrix(&self, a: Label, b: Label, c: Label, d: Label) -> Result<CMat, SkelError> {
        let rows = self.f_rows(a, b, c, d);
        let cols = self.f_cols(a, b, c, d);
        if let Some(m) = self.f.get(&(a, b, c, d)) {
            if m.rows != rows.len() || m.cols != cols.len() {
                return Err(SkelError::ShapeMismatch(format!(
                    "F({},{},{};{}) is {}x{}, expected {}x{}",
                    self.ring.labels[a],
                    self.ring.labels[b],
                    self.ring.labels[c],
                    self.ring.labels[d],
                    m.rows,
                    m.cols,
                    rows.len(),
                    cols.len()
                )));
            }
            return Ok(m.clone());
        }
        if rows.len() != cols.len() {
            return Err(SkelError::MissingFEntry(
                self.ring.labels[a].clone(),
                self.ring.labels[b].clone(),
                self.ring.labels[c].clone(),
                self.ring.labels[d].clone(),
            ));
        }
        // Default: identity in the enumeration order. Catalog data stores
        // every matrix this convention does not cover; the unit-leg matrices
        // in particular are all 1x1 identities.
        Ok(CMat::identity(rows.len()))
    }

    pub fn f_entry(
        &self,
        a: Label,
        b: Label,
        c: Label,
        d: Label,
        e: Label,
        f: Label,
    ) -> Result<C64, SkelError> {
        let rows = self.f_rows(a, b, c, d);
        let cols = self.f_cols(a, b, c, d);
        let (ri, ci) = match (rows.iter().position(|&x| x == e), cols.iter().position(|&x| x == f)) {
            (Some(ri), Some(ci)) => (ri, ci),
            _ => return Ok(c64(0.0, 0.0)),
        };
        Ok(self.f_matrix(a, b, c, d)?[(ri, ci)])
    }

    pub fn r_phase(&self, a: Label, b: Label, c: Label) -> Result<C64, SkelError> {
        let r = self.r.as_ref().ok_or(SkelError::MissingREntry)?;
        Ok(r[a][b][c])
    }

    pub fn has_braiding(&self) -> bool {
        self.r.is_some()
    }

    pub fn qdims(&self) -> Vec<f64> {
        quantum_dimensions(&self.ring).expect("skeletal ring is validated")
    }
}

/// Pentagon identity over all admissible label tuples; returns residuals per
/// instance `(a,b,c,d -> root e)`.
pub fn check_pentagon(data: &SkeletalData, tol: f64) -> Result<ValidationReport, SkelError> {
    let ring = &data.ring;
    let rnk = ring.rank();
    let mut report = ValidationReport::new(tol);
    for a in 0..rnk {
        for b in 0..rnk {
            for c in 0..rnk {
                for d in 0..rnk {
                    let rows = data.f_rows(a, b, c, d);
                    if rows.is_empty() {
                        continue;
                    }
                    let m = data.f_matrix(a, b, c, d)?;
                    if m.rows != m.cols || m.inverse().is_none() {
                        report.fail(format!(
                            "F({},{},{};{}) not invertible",
                            ring.labels[a], ring.labels[b], ring.labels[c], ring.labels[d]
                        ));
                    }
                }
            }
        }
    }
    for a in 0..rnk {
        for b in 0..rnk {
            for c in 0..rnk {
                for d in 0..rnk {
                    for e in 0..rnk {
                        let residual = pentagon_instance(data, a, b, c, d, e)?;
                        if residual < 0.0 {
                            continue;
                        }
                        report.record(
                            || {
                                format!(
                                    "pentagon ({},{},{},{};{})",
                                    ring.labels[a],
                                    ring.labels[b],
                                    ring.labels[c],
                                    ring.labels[d],
                                    ring.labels[e]
                                )
                            },
                            residual,
                        );
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Max residual of the pentagon at one label tuple, or -1.0 when no
/// admissible internal labelings exist.
fn pentagon_instance(
    data: &SkeletalData,
    a: Label,
    b: Label,
    c: Label,
    d: Label,
    e: Label,
) -> Result<f64, SkelError> {
    let ring = &data.ring;
    let rnk = ring.rank();
    // source basis (f, g): ((ab)_f c)_g d -> e
    let src: Vec<(Label, Label)> = (0..rnk)
        .flat_map(|f| (0..rnk).map(move |g| (f, g)))
        .filter(|&(f, g)| {
            ring.admissible(a, b, f) && ring.admissible(f, c, g) && ring.admissible(g, d, e)
        })
        .collect();
    // target basis (k, l): a (b (c d)_l)_k -> e
    let dst: Vec<(Label, Label)> = (0..rnk)
        .flat_map(|k| (0..rnk).map(move |l| (k, l)))
        .filter(|&(k, l)| {
            ring.admissible(c, d, l) && ring.admissible(b, l, k) && ring.admissible(a, k, e)
        })
        .collect();
    if src.is_empty() && dst.is_empty() {
        return Ok(-1.0);
    }
    let mut worst = 0.0_f64;
    for &(f, g) in &src {
        for &(k, l) in &dst {
            // two-step path: F^{fcd}_e then F^{abl}_e
            let two = data.f_entry(f, c, d, e, l, g)? * data.f_entry(a, b, l, e, k, f)?;
            // three-step path: sum over h = (bc) channel
            let mut three = c64(0.0, 0.0);
            for h in 0..rnk {
                three += data.f_entry(a, b, c, g, h, f)?
                    * data.f_entry(a, h, d, e, k, g)?
                    * data.f_entry(b, c, d, k, l, h)?;
            }
            worst = worst.max((two - three).norm());
        }
    }
    Ok(worst)
}

/// Both hexagon identities (braiding and inverse braiding) over all labels.
pub fn check_hexagon(data: &SkeletalData, tol: f64) -> Result<ValidationReport, SkelError> {
    if !data.has_braiding() {
        return Err(SkelError::MissingREntry);
    }
    let ring = &data.ring;
    let rnk = ring.rank();
    let mut report = ValidationReport::new(tol);
    for a in 0..rnk {
        for b in 0..rnk {
            for c in 0..rnk {
                for d in 0..rnk {
                    for f in 0..rnk {
                        if !(ring.admissible(a, b, f) && ring.admissible(f, c, d)) {
                            continue;
                        }
                        for g in 0..rnk {
                            if !(ring.admissible(c, a, g) && ring.admissible(b, g, d)) {
                                continue;
                            }
                            let mut lhs = c64(0.0, 0.0);
                            let mut lhs_inv = c64(0.0, 0.0);
                            for e in 0..rnk {
                                if !(ring.admissible(b, c, e) && ring.admissible(a, e, d)) {
                                    continue;
                                }
                                let ff = data.f_entry(a, b, c, d, e, f)?;
                                let fb = data.f_entry(b, c, a, d, g, e)?;
                                lhs += fb * data.r_phase(a, e, d)? * ff;
                                let rinv = data.r_phase(e, a, d)?;
                                if rinv.norm() < 1e-300 {
                                    return Err(SkelError::MissingSymbol(format!(
                                        "R({},{};{}) vanishes",
                                        ring.labels[e], ring.labels[a], ring.labels[d]
                                    )));
                                }
                                lhs_inv += fb * ff / rinv;
                            }
                            let fmid = data.f_entry(b, a, c, d, g, f)?;
                            let rhs = data.r_phase(a, c, g)? * fmid * data.r_phase(a, b, f)?;
                            let rhs_inv = fmid / (data.r_phase(c, a, g)? * data.r_phase(b, a, f)?);
                            report.record(
                                || {
                                    format!(
                                        "hexagon ({},{},{};{}) {}->{}",
                                        ring.labels[a],
                                        ring.labels[b],
                                        ring.labels[c],
                                        ring.labels[d],
                                        ring.labels[f],
                                        ring.labels[g]
                                    )
                                },
                                (lhs - rhs).norm(),
                            );
                            report.record(
                                || {
                                    format!(
                                        "hexagon-inv ({},{},{};{}) {}->{}",
                                        ring.labels[a],
                                        ring.labels[b],
                                        ring.labels[c],
                                        ring.labels[d],
                                        ring.labels[f],
                                        ring.labels[g]
                                    )
                                },
                                (lhs_inv - rhs_inv).norm(),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Twists from the ribbon formula `θ_a = Σ_c (d_c/d_a) R^{aa}_c`.
pub fn twists_from_r(data: &SkeletalData) -> Result<Vec<C64>, SkelError> {
    if !data.has_braiding() {
        return Err(SkelError::MissingREntry);
    }
    let d = data.qdims();
    let rnk = data.rank();
    let mut theta = Vec::with_capacity(rnk);
    for a in 0..rnk {
        let mut t = c64(0.0, 0.0);
        for c in 0..rnk {
            if data.ring.admissible(a, a, c) {
                t += data.r_phase(a, a, c)? * (d[c] / d[a]);
            }
        }
        theta.push(t);
    }
    Ok(theta)
}

/// A hom-space basis for `Hom(target, word_1 ⊗ ... ⊗ word_n)` with the word
/// bracketed left-nested: each element is a sequence of internal labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomBasis {
    pub word: Vec<Label>,
    pub target: Label,
    /// Interior internal labels of the left comb (empty for words of
    /// length <= 2, whose labeling is forced by the target).
    pub labelings: Vec<Vec<Label>>,
}

pub fn hom_basis(data: &SkeletalData, word: &[Label], target: Label) -> HomBasis {
    let ring = &data.ring;
    let mut partial: Vec<(Label, Vec<Label>)> = vec![(word[0], Vec::new())];
    for &next in &word[1..] {
        let mut grown = Vec::new();
        for (ch, labels) in &partial {
            for c in 0..ring.rank() {
                if ring.admissible(*ch, next, c) {
                    let mut l2 = labels.clone();
                    l2.push(c);
                    grown.push((c, l2));
                }
            }
        }
        partial = grown;
    }
    let labelings = partial
        .into_iter()
        .filter(|(ch, _)| *ch == target)
        .map(|(_, mut ls)| {
            ls.pop();
            ls
        })
        .collect();
    HomBasis { word: word.to_vec(), target, labelings }
}

/// Built-in skeletal data.
#[derive(Debug, Clone, PartialEq)]
pub enum SkelKey {
    /// `Vec_G` for abelian `G`, trivial cocycle, symmetric braiding.
    VecGTrivial(Vec<u32>),
    Fib,
    /// Double of `Z_N`: `Vec_{Z_N x Z_N}` with braiding `exp(2πi a_2 b_1 / N)`.
    DZn(u32),
    /// Pointed data from a quadratic-form class; see [`crate::pointed`].
    Pointed(crate::pointed::PointedClass),
}

impl SkelKey {
    pub fn parse(s: &str) -> Result<SkelKey, SkelError> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("fib") {
            return Ok(SkelKey::Fib);
        }
        if let Some(rest) = s.strip_prefix("VecZ(").and_then(|r| r.strip_suffix(')')) {
            let n: u32 = rest.trim().parse().map_err(|_| SkelError::UnknownKey(s.into()))?;
            return Ok(SkelKey::VecGTrivial(vec![n]));
        }
        if let Some(rest) = s.strip_prefix("VecG(").and_then(|r| r.strip_suffix(')')) {
            let factors: Result<Vec<u32>, _> = rest.split(',').map(|t| t.trim().parse()).collect();
            return Ok(SkelKey::VecGTrivial(factors.map_err(|_| SkelError::UnknownKey(s.into()))?));
        }
        if let Some(rest) = s.strip_prefix("DZn(").and_then(|r| r.strip_suffix(')')) {
            let n: u32 = rest.trim().parse().map_err(|_| SkelError::UnknownKey(s.into()))?;
            return Ok(SkelKey::DZn(n));
        }
        if let Some(rest) = s.strip_prefix("Pointed(").and_then(|r| r.strip_suffix(')')) {
            let class = crate::pointed::PointedClass::parse(rest)
                .map_err(|e| SkelError::UnknownKey(format!("{s}: {e}")))?;
            return Ok(SkelKey::Pointed(class));
        }
        Err(SkelError::UnknownKey(s.to_string()))
    }
}

pub fn builtin_skeletal(key: &SkelKey) -> Result<SkeletalData, SkelError> {
    match key {
        SkelKey::VecGTrivial(factors) => {
            let ring = crate::catalog::vec_g_ring(&crate::groups::FiniteGroup::abelian(factors));
            let rnk = ring.rank();
            let mut data = SkeletalData::new(ring)?;
            data.r = Some(trivial_r(&data.ring, rnk));
            data.theta = Some(vec![c64(1.0, 0.0); rnk]);
            Ok(data)
        }
        SkelKey::Fib => Ok(fib_skeletal()),
        SkelKey::DZn(n) => dzn_skeletal(*n),
        SkelKey::Pointed(class) => {
            let form = crate::pointed::build_pointed(class)
                .map_err(|e| SkelError::UnknownKey(format!("{e}")))?;
            Ok(crate::pointed::pointed_skeletal(&form))
        }
    }
}

fn trivial_r(ring: &FusionRing, rnk: usize) -> Vec<Vec<Vec<C64>>> {
    let mut r = vec![vec![vec![c64(0.0, 0.0); rnk]; rnk]; rnk];
    for a in 0..rnk {
        for b in 0..rnk {
            for c in 0..rnk {
                if ring.admissible(a, b, c) {
                    r[a][b][c] = c64(1.0, 0.0);
                }
            }
        }
    }
    r
}

/// Fibonacci with the standard golden-ratio F-matrix and one braiding
/// chirality (`R^{tt}_1 = e^{-4πi/5}`, `R^{tt}_t = e^{3πi/5}`).
pub fn fib_skeletal() -> SkeletalData {
    let ring = crate::catalog::fib_ring();
    let t = 1usize;
    let mut data = SkeletalData::new(ring).unwrap();
    let phi = crate::num::phi();
    let m = CMat::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => c64(1.0 / phi, 0.0),
        (0, 1) | (1, 0) => c64(1.0 / phi.sqrt(), 0.0),
        (1, 1) => c64(-1.0 / phi, 0.0),
        _ => unreachable!(),
    });
    data.set_f(t, t, t, t, m);
    let rnk = 2;
    let mut r = trivial_r(&data.ring, rnk);
    r[t][t][0] = unit_phase(-2.0 / 5.0);
    r[t][t][t] = unit_phase(3.0 / 10.0);
    data.r = Some(r);
    data.theta = Some(vec![c64(1.0, 0.0), unit_phase(2.0 / 5.0)]);
    data
}

fn dzn_skeletal(n: u32) -> Result<SkeletalData, SkelError> {
    let ring = crate::catalog::vec_g_ring(&crate::groups::FiniteGroup::abelian(&[n, n]));
    let rnk = ring.rank();
    let mut data = SkeletalData::new(ring)?;
    let nn = n as usize;
    let comp = |x: usize| -> (usize, usize) { (x / nn, x % nn) };
    let mut r = vec![vec![vec![c64(0.0, 0.0); rnk]; rnk]; rnk];
    for a in 0..rnk {
        for b in 0..rnk {
            let (_, a2) = comp(a);
            let (b1, _) = comp(b);
            let c = data.ring.n[a][b].iter().position(|&m| m > 0).unwrap();
            r[a][b][c] = unit_phase((a2 * b1) as f64 / n as f64);
        }
    }
    data.r = Some(r);
    let theta = twists_from_r(&data)?;
    data.theta = Some(theta);
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin_ring, CatalogKey};

    #[test]
    fn rejects_rings_with_multiplicity() {
        let ring = builtin_ring(&CatalogKey::FibP(3)).unwrap();
        assert!(matches!(SkeletalData::new(ring), Err(SkelError::MultiplicityNotFree)));
    }

    #[test]
    fn vec_g_trivial_passes_pentagon_and_hexagon() {
        for key in [SkelKey::VecGTrivial(vec![2]), SkelKey::VecGTrivial(vec![3])] {
            let data = builtin_skeletal(&key).unwrap();
            assert!(check_pentagon(&data, 1e-9).unwrap().pass());
            assert!(check_hexagon(&data, 1e-9).unwrap().pass());
        }
    }

    #[test]
    fn fib_passes_pentagon_and_hexagon() {
        let data = fib_skeletal();
        let p = check_pentagon(&data, 1e-9).unwrap();
        assert!(p.pass(), "{p}");
        let h = check_hexagon(&data, 1e-9).unwrap();
        assert!(h.pass(), "{h}");
    }

    #[test]
    fn perturbed_fib_fails_pentagon_with_location() {
        let mut data = fib_skeletal();
        let mut m = data.f_matrix(1, 1, 1, 1).unwrap();
        m[(1, 1)] += c64(0.01, 0.0);
        data.set_f(1, 1, 1, 1, m);
        let report = check_pentagon(&data, 1e-9).unwrap();
        assert!(!report.pass());
        assert!(report.failures.iter().any(|f| f.what.contains("pentagon (t,t,t,t;t)")));
    }

    #[test]
    fn fib_with_inconsistent_r_fails_hexagon() {
        let mut data = fib_skeletal();
        let mut r = data.r.clone().unwrap();
        r[1][1][0] = r[1][1][0].conj();
        data.r = Some(r);
        assert!(!check_hexagon(&data, 1e-9).unwrap().pass());
    }

    #[test]
    fn dzn2_passes_and_has_fermion_twist() {
        let data = builtin_skeletal(&SkelKey::DZn(2)).unwrap();
        assert!(check_pentagon(&data, 1e-9).unwrap().pass());
        assert!(check_hexagon(&data, 1e-9).unwrap().pass());
        // labels: (0,0),(0,1),(1,0),(1,1) -> twists 1,1,1,-1
        let theta = data.theta.clone().unwrap();
        assert!((theta[0] - c64(1.0, 0.0)).norm() < 1e-9);
        assert!((theta[1] - c64(1.0, 0.0)).norm() < 1e-9);
        assert!((theta[2] - c64(1.0, 0.0)).norm() < 1e-9);
        assert!((theta[3] - c64(-1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn fib_twists_match_ribbon_formula() {
        let data = fib_skeletal();
        let theta = twists_from_r(&data).unwrap();
        assert!((theta[0] - c64(1.0, 0.0)).norm() < 1e-9);
        assert!((theta[1] - unit_phase(2.0 / 5.0)).norm() < 1e-9);
    }

    #[test]
    fn hom_basis_sizes_match_fusion_multiplicities() {
        let data = fib_skeletal();
        let t = 1usize;
        assert_eq!(hom_basis(&data, &[t, t], 0).labelings.len(), 1);
        assert_eq!(hom_basis(&data, &[t, t, t], t).labelings.len(), 2);
        let reps3 = builtin_ring(&CatalogKey::RepS3).unwrap();
        let data = SkeletalData::new(reps3).unwrap();
        let c = 2usize;
        assert_eq!(hom_basis(&data, &[c, c], c).labelings.len(), 1);
    }

    #[test]
    fn symmetric_vec_g_twists_are_trivial() {
        let data = builtin_skeletal(&SkelKey::VecGTrivial(vec![3])).unwrap();
        let theta = twists_from_r(&data).unwrap();
        assert!(theta.iter().all(|t| (t - c64(1.0, 0.0)).norm() < 1e-9));
    }
}
