//! Fusion rings: labels, fusion coefficients `N[a][b][c]`, validation,
//! product decomposition, quantum dimensions, and isomorphism search.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::ValidationReport;

pub type Label = usize;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown catalog key: {0}")]
    UnknownKey(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("group too large: order {order} exceeds bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("Perron-Frobenius iteration failed to converge")]
    ConvergenceFailure,
}

/// A fusion ring. Multiplicities are allowed here; the skeletal layer imposes
/// multiplicity-freeness separately where F-symbols are involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionRing {
    pub labels: Vec<String>,
    pub unit: Label,
    pub dual: Vec<Label>,
    /// `n[a][b][c]` = multiplicity of `c` in `a ⊗ b`.
    #[serde(rename = "N")]
    pub n: Vec<Vec<Vec<u32>>>,
}

/// An object as a multiplicity vector over the simple labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ObjectVector(pub Vec<u32>);

impl ObjectVector {
    pub fn zero(rank: usize) -> Self {
        ObjectVector(vec![0; rank])
    }

    pub fn simple(rank: usize, a: Label) -> Self {
        let mut v = vec![0; rank];
        v[a] = 1;
        ObjectVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &ObjectVector) -> ObjectVector {
        ObjectVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl FusionRing {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn label_index(&self, name: &str) -> Option<Label> {
        self.labels.iter().position(|l| l == name)
    }

    /// Parse an additive expression like `A+C`, `2+e`, `1+2e`, `11+tt` against
    /// this ring's label set. `1` and bare integers refer to multiples of the
    /// unit object unless a label with that exact name exists.
    pub fn parse_object(&self, expr: &str) -> Result<ObjectVector, RingError> {
        let mut v = ObjectVector::zero(self.rank());
        for term in expr.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(RingError::InvalidParameter(format!("empty term in '{expr}'")));
            }
            if let Some(idx) = self.label_index(term) {
                v.0[idx] += 1;
                continue;
            }
            if let Ok(k) = term.parse::<u32>() {
                v.0[self.unit] += k;
                continue;
            }
            // split leading integer multiplier from a label name
            let digits: String = term.chars().take_while(|c| c.is_ascii_digit()).collect();
            let rest = &term[digits.len()..];
            let mult: u32 = if digits.is_empty() { 1 } else { digits.parse().unwrap() };
            match self.label_index(rest) {
                Some(idx) => v.0[idx] += mult,
                None => {
                    return Err(RingError::InvalidParameter(format!(
                        "unknown label '{term}' (labels: {})",
                        self.labels.join(",")
                    )))
                }
            }
        }
        Ok(v)
    }

    pub fn format_object(&self, v: &ObjectVector) -> String {
        let mut parts = Vec::new();
        for (a, &m) in v.0.iter().enumerate() {
            match m {
                0 => {}
                1 => parts.push(self.labels[a].clone()),
                k => parts.push(format!("{k}{}", self.labels[a])),
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    pub fn shape_ok(&self) -> Result<(), RingError> {
        let r = self.rank();
        if self.unit >= r || self.dual.len() != r || self.n.len() != r {
            return Err(RingError::DimensionMismatch(format!(
                "rank {r}, unit {}, dual len {}, N len {}",
                self.unit,
                self.dual.len(),
                self.n.len()
            )));
        }
        for row in &self.n {
            if row.len() != r {
                return Err(RingError::DimensionMismatch("N is not rank^3".into()));
            }
            for col in row {
                if col.len() != r {
                    return Err(RingError::DimensionMismatch("N is not rank^3".into()));
                }
            }
        }
        Ok(())
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.n
            .iter()
            .all(|row| row.iter().all(|col| col.iter().all(|&m| m <= 1)))
    }

    /// Admissible triples `(a, b, c)` with `N[a][b][c] > 0`.
    pub fn admissible(&self, a: Label, b: Label, c: Label) -> bool {
        self.n[a][b][c] > 0
    }

    /// Bilinear extension of the fusion product to object vectors.
    pub fn decompose_product(
        &self,
        x: &ObjectVector,
        y: &ObjectVector,
    ) -> Result<ObjectVector, RingError> {
        let r = self.rank();
        if x.rank() != r || y.rank() != r {
            return Err(RingError::DimensionMismatch(format!(
                "object ranks {} and {} against ring rank {r}",
                x.rank(),
                y.rank()
            )));
        }
        let mut out = ObjectVector::zero(r);
        for a in 0..r {
            if x.0[a] == 0 {
                continue;
            }
            for b in 0..r {
                if y.0[b] == 0 {
                    continue;
                }
                let m = x.0[a] * y.0[b];
                for c in 0..r {
                    out.0[c] += m * self.n[a][b][c];
                }
            }
        }
        Ok(out)
    }

    /// Multiplicity of `c` in `a ⊗ b` for simple labels.
    pub fn product_simple(&self, a: Label, b: Label) -> ObjectVector {
        ObjectVector(self.n[a][b].clone())
    }
}

/// Checks unit, associativity and duality axioms; the report lists every
/// violated instance.
pub fn validate_fusion_ring(ring: &FusionRing, tol: f64) -> Result<ValidationReport, RingError> {
    ring.shape_ok()?;
    let mut report = ValidationReport::new(tol);
    let r = ring.rank();
    let u = ring.unit;
    for a in 0..r {
        for b in 0..r {
            let want = u32::from(a == b);
            let left = ring.n[u][a][b];
            let right = ring.n[a][u][b];
            report.record(
                || format!("unit N[1][{}][{}]", ring.labels[a], ring.labels[b]),
                (left as f64 - want as f64).abs(),
            );
            report.record(
                || format!("unit N[{}][1][{}]", ring.labels[a], ring.labels[b]),
                (right as f64 - want as f64).abs(),
            );
        }
    }
    for a in 0..r {
        for b in 0..r {
            let want = u32::from(b == ring.dual[a]);
            report.record(
                || format!("duality N[{}][{}][1]", ring.labels[a], ring.labels[b]),
                (ring.n[a][b][u] as f64 - want as f64).abs(),
            );
        }
    }
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    let lhs: u64 = (0..r).map(|e| ring.n[a][b][e] as u64 * ring.n[e][c][d] as u64).sum();
                    let rhs: u64 = (0..r).map(|f| ring.n[b][c][f] as u64 * ring.n[a][f][d] as u64).sum();
                    report.record(
                        || {
                            format!(
                                "associativity ({},{},{};{})",
                                ring.labels[a], ring.labels[b], ring.labels[c], ring.labels[d]
                            )
                        },
                        (lhs as f64 - rhs as f64).abs(),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Per-label quantum (Frobenius–Perron) dimensions via power iteration on the
/// total fusion matrix; the common eigenvector is normalised so the unit has
/// dimension 1.
pub fn quantum_dimensions(ring: &FusionRing) -> Result<Vec<f64>, RingError> {
    ring.shape_ok()?;
    let r = ring.rank();
    // M[c][b] = sum_a N[a][b][c]: multiplying the full object by anything.
    let mut v = vec![1.0_f64; r];
    let mut prev = v.clone();
    for iter in 0..20_000 {
        let mut next = vec![0.0_f64; r];
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    next[c] += ring.n[a][b][c] as f64 * v[b];
                }
            }
        }
        let norm = next.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(RingError::ConvergenceFailure);
        }
        for x in next.iter_mut() {
            *x /= norm;
        }
        let delta = next
            .iter()
            .zip(prev.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        prev = next.clone();
        v = next;
        if delta < 1e-15 && iter > 10 {
            break;
        }
    }
    let unit = v[ring.unit];
    if unit.abs() < 1e-12 {
        return Err(RingError::ConvergenceFailure);
    }
    Ok(v.into_iter().map(|x| x / unit).collect())
}

/// Searches for a unit-preserving bijection of labels carrying one fusion
/// tensor onto the other. Backtracking with dimension and dual pruning keeps
/// this fast well past the ranks used here.
pub fn find_isomorphism(a: &FusionRing, b: &FusionRing) -> Option<Vec<Label>> {
    if a.rank() != b.rank() {
        return None;
    }
    let r = a.rank();
    let da = quantum_dimensions(a).ok()?;
    let db = quantum_dimensions(b).ok()?;
    let mut map = vec![usize::MAX; r];
    let mut used = vec![false; r];
    map[a.unit] = b.unit;
    used[b.unit] = true;

    fn consistent(a: &FusionRing, b: &FusionRing, map: &[usize]) -> bool {
        let r = a.rank();
        for x in 0..r {
            if map[x] == usize::MAX {
                continue;
            }
            if map[a.dual[x]] != usize::MAX && map[a.dual[x]] != b.dual[map[x]] {
                return false;
            }
            for y in 0..r {
                if map[y] == usize::MAX {
                    continue;
                }
                for z in 0..r {
                    if map[z] == usize::MAX {
                        continue;
                    }
                    if a.n[x][y][z] != b.n[map[x]][map[y]][map[z]] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn rec(
        a: &FusionRing,
        b: &FusionRing,
        da: &[f64],
        db: &[f64],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        let r = a.rank();
        let mut x = next;
        while x < r && map[x] != usize::MAX {
            x += 1;
        }
        if x == r {
            return true;
        }
        for y in 0..r {
            if used[y] || (da[x] - db[y]).abs() > 1e-6 {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if consistent(a, b, map) && rec(a, b, da, db, map, used, x + 1) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    if rec(a, b, &da, &db, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn fib_ring_is_valid() {
        let fib = catalog::builtin_ring(&catalog::CatalogKey::Fib).unwrap();
        assert!(validate_fusion_ring(&fib, 1e-9).unwrap().pass());
    }

    // Zeroing N[t][t][t] in Fib turns it into the (valid) Z2 group ring, so a
    // mutation that genuinely breaks associativity comes from Vec_Z3 instead.
    #[test]
    fn flipped_fib_channel_gives_z2_ring() {
        let mut fib = catalog::builtin_ring(&catalog::CatalogKey::Fib).unwrap();
        let t = fib.label_index("t").unwrap();
        fib.n[t][t][t] = 0;
        assert!(validate_fusion_ring(&fib, 1e-9).unwrap().pass());
    }

    #[test]
    fn broken_vec_z3_fails_associativity() {
        let mut ring = catalog::builtin_ring(&catalog::CatalogKey::VecG(vec![3])).unwrap();
        let g1 = ring.label_index("g1").unwrap();
        let g2 = ring.label_index("g2").unwrap();
        ring.n[g1][g1][g2] = 0;
        let report = validate_fusion_ring(&ring, 1e-9).unwrap();
        assert!(!report.pass());
        assert!(report.failures.iter().any(|f| f.what.contains("associativity (g2,g1,g1;g1)")));
    }

    #[test]
    fn unit_product_is_identity() {
        let ring = catalog::builtin_ring(&catalog::CatalogKey::RepS3).unwrap();
        let c = ring.parse_object("C").unwrap();
        let unit = ObjectVector::simple(ring.rank(), ring.unit);
        assert_eq!(ring.decompose_product(&unit, &c).unwrap(), c);
    }

    #[test]
    fn rep_s3_c_squared() {
        let ring = catalog::builtin_ring(&catalog::CatalogKey::RepS3).unwrap();
        let c = ring.parse_object("C").unwrap();
        let prod = ring.decompose_product(&c, &c).unwrap();
        assert_eq!(prod, ring.parse_object("A+B+C").unwrap());
    }

    #[test]
    fn haag_p3_rho_squared() {
        let ring = catalog::builtin_ring(&catalog::CatalogKey::HaagP(3)).unwrap();
        let rho = ring.parse_object("r0").unwrap();
        let prod = ring.decompose_product(&rho, &rho).unwrap();
        assert_eq!(prod, ring.parse_object("1+r0+r1+r2").unwrap());
    }

    #[test]
    fn fib_quantum_dimension_is_golden() {
        let fib = catalog::builtin_ring(&catalog::CatalogKey::Fib).unwrap();
        let d = quantum_dimensions(&fib).unwrap();
        let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
        assert!((d[fib.label_index("t").unwrap()] - phi).abs() < 1e-9);
    }

    #[test]
    fn dhaag_condensed_dimension() {
        let ring = catalog::builtin_ring(&catalog::CatalogKey::DHaagCondensed(3)).unwrap();
        let d = quantum_dimensions(&ring).unwrap();
        let delta = (3.0 + 13.0_f64.sqrt()) / 2.0;
        let x = ring.label_index("X").unwrap();
        assert!((d[x] - 3.0 * delta).abs() < 1e-9);
    }
}
