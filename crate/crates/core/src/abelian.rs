//! Finite abelian groups with exact Q/Z arithmetic: subgroup and
//! skew-symmetric bicharacter enumeration, module-category labels over
//! `Vec_G`, the orthogonal-complement/pushforward bimodule tensor product,
//! and the braiding-induced module-to-bimodule conversion for `D(Z_N)`.
//!
//! Everything here is exact: multiplicities must come out as integers, so no
//! floats appear anywhere in this module.

use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const ABELIAN_ORDER_BOUND: usize = 256;

#[derive(Debug, Error)]
pub enum GroupModError {
    #[error("group too large: order {order} exceeds bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("multiplicity came out non-integral: {0}")]
    NonIntegerMultiplicity(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// An element of Q/Z as a reduced rational in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QZ(Rational64);

impl QZ {
    pub fn zero() -> Self {
        QZ(Rational64::zero())
    }

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0);
        let r = Rational64::new(num, den);
        QZ(r - r.floor())
    }

    pub fn from_rational(r: Rational64) -> Self {
        QZ(r - r.floor())
    }

    pub fn rational(&self) -> Rational64 {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// The canonical half: numerator over doubled denominator.
    pub fn half(&self) -> QZ {
        QZ::from_rational(self.0 / 2)
    }

    pub fn as_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl std::ops::Add for QZ {
    type Output = QZ;
    fn add(self, rhs: QZ) -> QZ {
        QZ::from_rational(self.0 + rhs.0)
    }
}

impl std::ops::Sub for QZ {
    type Output = QZ;
    fn sub(self, rhs: QZ) -> QZ {
        QZ::from_rational(self.0 - rhs.0)
    }
}

impl std::ops::Neg for QZ {
    type Output = QZ;
    fn neg(self) -> QZ {
        QZ::from_rational(-self.0)
    }
}

impl std::ops::Mul<i64> for QZ {
    type Output = QZ;
    fn mul(self, rhs: i64) -> QZ {
        QZ::from_rational(self.0 * rhs)
    }
}

impl std::fmt::Display for QZ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// A finite abelian group presented as a product of cyclic factors; elements
/// are tuples reduced mod the factor orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    pub factors: Vec<u32>,
}

pub type Elem = Vec<u32>;

impl FiniteAbelianGroup {
    pub fn new(factors: &[u32]) -> Self {
        FiniteAbelianGroup { factors: factors.to_vec() }
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&n| n as usize).product::<usize>().max(1)
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.factors.len()]
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter()
            .zip(b.iter())
            .zip(self.factors.iter())
            .map(|((x, y), &n)| (x + y) % n)
            .collect()
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        a.iter().zip(self.factors.iter()).map(|(x, &n)| (n - x) % n).collect()
    }

    pub fn elements(&self) -> Vec<Elem> {
        let mut out = vec![self.zero()];
        for (k, &n) in self.factors.iter().enumerate() {
            let mut grown = Vec::with_capacity(out.len() * n as usize);
            for e in &out {
                for v in 0..n {
                    let mut e2 = e.clone();
                    e2[k] = v;
                    grown.push(e2);
                }
            }
            out = grown;
        }
        out
    }

    /// Direct sum `G ⊕ H` with concatenated coordinates.
    pub fn direct_sum(&self, other: &FiniteAbelianGroup) -> FiniteAbelianGroup {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        FiniteAbelianGroup { factors }
    }

    /// All subgroups as sorted element sets. Fine for desk-scale orders.
    pub fn subgroups(&self) -> Result<Vec<Subgroup>, GroupModError> {
        self.subgroups_bounded(ABELIAN_ORDER_BOUND)
    }

    /// Subgroup enumeration with an explicit order bound (the pointed-class
    /// scans go slightly past the module-category bound).
    pub fn subgroups_bounded(&self, bound: usize) -> Result<Vec<Subgroup>, GroupModError> {
        if self.order() > bound {
            return Err(GroupModError::GroupTooLarge {
                order: self.order(),
                bound,
            });
        }
        let elements = self.elements();
        let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
        let trivial = vec![self.zero()];
        seen.insert(trivial.clone());
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            for g in &elements {
                if h.contains(g) {
                    continue;
                }
                let grown = self.closure_with(&h, g);
                if seen.insert(grown.clone()) {
                    frontier.push(grown);
                }
            }
        }
        Ok(seen.into_iter().map(|elements| Subgroup { elements }).collect())
    }

    fn closure_with(&self, h: &[Elem], g: &Elem) -> Vec<Elem> {
        let mut set: BTreeSet<Elem> = h.iter().cloned().collect();
        let mut frontier: Vec<Elem> = vec![g.clone()];
        set.insert(g.clone());
        while let Some(x) = frontier.pop() {
            let snapshot: Vec<Elem> = set.iter().cloned().collect();
            for y in snapshot {
                let s = self.add(&x, &y);
                if set.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
        set.into_iter().collect()
    }

    /// An independent generating set `(g_i, d_i)` for a subgroup, with
    /// `H = ⊕ <g_i>` and `|<g_i>| = d_i`; used to parameterize bicharacters.
    pub fn subgroup_basis(&self, sub: &Subgroup) -> Vec<(Elem, u32)> {
        let mut basis: Vec<(Elem, u32)> = Vec::new();
        let mut span: BTreeSet<Elem> = [self.zero()].into_iter().collect();
        while span.len() < sub.elements.len() {
            // pick the element with the largest order modulo the span
            let mut best: Option<(Elem, u32)> = None;
            for g in &sub.elements {
                if span.contains(g) {
                    continue;
                }
                let mut x = g.clone();
                let mut k = 1u32;
                while !span.contains(&x) {
                    x = self.add(&x, g);
                    k += 1;
                }
                if best.as_ref().map(|(_, bk)| k > *bk).unwrap_or(true) {
                    best = Some((g.clone(), k));
                }
            }
            let (g, k) = best.expect("subgroup closure invariant");
            let snapshot: Vec<Elem> = span.iter().cloned().collect();
            for s in snapshot {
                let mut x = s;
                for _ in 0..k {
                    span.insert(x.clone());
                    x = self.add(&x, &g);
                }
            }
            basis.push((g, k));
        }
        basis
    }

    /// Coordinates of every subgroup element in the given basis.
    fn subgroup_coords(&self, sub: &Subgroup, basis: &[(Elem, u32)]) -> Vec<Vec<u32>> {
        let mut table: Vec<(Elem, Vec<u32>)> = vec![(self.zero(), vec![0; basis.len()])];
        for (i, (g, d)) in basis.iter().enumerate() {
            let mut grown = Vec::with_capacity(table.len() * *d as usize);
            for (e, c) in &table {
                let mut x = e.clone();
                for k in 0..*d {
                    let mut c2 = c.clone();
                    c2[i] = k;
                    grown.push((x.clone(), c2));
                    x = self.add(&x, g);
                }
            }
            table = grown;
        }
        sub.elements
            .iter()
            .map(|e| {
                table
                    .iter()
                    .find(|(x, _)| x == e)
                    .expect("element in subgroup span")
                    .1
                    .clone()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    /// Sorted element list, closed under addition.
    pub elements: Vec<Elem>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, e: &Elem) -> bool {
        self.elements.binary_search(e).is_ok()
    }

    pub fn trivial(g: &FiniteAbelianGroup) -> Subgroup {
        Subgroup { elements: vec![g.zero()] }
    }

    pub fn full(g: &FiniteAbelianGroup) -> Subgroup {
        Subgroup { elements: g.elements().into_iter().collect::<BTreeSet<_>>().into_iter().collect() }
    }
}

/// A bicharacter on a subgroup, stored as an exact Q/Z value per element
/// pair; skew-symmetry here means `b(x,x) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bicharacter {
    pub domain: Subgroup,
    /// `values[i][j] = b(domain.elements[i], domain.elements[j])`.
    pub values: Vec<Vec<QZ>>,
}

impl Bicharacter {
    pub fn trivial(domain: Subgroup) -> Bicharacter {
        let n = domain.order();
        Bicharacter { domain, values: vec![vec![QZ::zero(); n]; n] }
    }

    pub fn eval(&self, x: &Elem, y: &Elem) -> QZ {
        let i = self.domain.elements.binary_search(x).expect("x in domain");
        let j = self.domain.elements.binary_search(y).expect("y in domain");
        self.values[i][j]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|row| row.iter().all(|v| v.is_zero()))
    }

    pub fn is_biadditive(&self, g: &FiniteAbelianGroup) -> bool {
        let els = &self.domain.elements;
        for x in els {
            for y in els {
                for z in els {
                    let xy = g.add(x, y);
                    if self.eval(&xy, z) != self.eval(x, z) + self.eval(y, z) {
                        return false;
                    }
                    if self.eval(z, &xy) != self.eval(z, x) + self.eval(z, y) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_skew(&self, g: &FiniteAbelianGroup) -> bool {
        self.is_biadditive(g) && self.domain.elements.iter().all(|x| self.eval(x, x).is_zero())
    }
}

/// A module-category label `M(H, ψ)` over `Vec_G`: subgroup plus
/// skew-symmetric bicharacter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleCatLabel {
    pub group: FiniteAbelianGroup,
    pub subgroup: Subgroup,
    pub psi: Bicharacter,
}

impl ModuleCatLabel {
    pub fn rank(&self) -> usize {
        self.group.order() / self.subgroup.order()
    }
}

/// All `(H, ψ)` labels: every subgroup paired with every skew-symmetric
/// bicharacter on it, enumerated exactly.
pub fn enumerate_module_cats(g: &FiniteAbelianGroup) -> Result<Vec<ModuleCatLabel>, GroupModError> {
    let mut out = Vec::new();
    for sub in g.subgroups()? {
        for psi in skew_bicharacters(g, &sub) {
            out.push(ModuleCatLabel { group: g.clone(), subgroup: sub.clone(), psi });
        }
    }
    Ok(out)
}

/// Skew-symmetric bicharacters on a subgroup: parameterized by values on
/// basis pairs `(g_i, g_j)`, `i < j`, in `(1/gcd(d_i, d_j))Z / Z`.
pub fn skew_bicharacters(g: &FiniteAbelianGroup, sub: &Subgroup) -> Vec<Bicharacter> {
    let basis = g.subgroup_basis(sub);
    let coords = g.subgroup_coords(sub, &basis);
    let r = basis.len();
    let mut pair_ranges: Vec<(usize, usize, u32)> = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let gcd = {
                let (mut a, mut b) = (basis[i].1, basis[j].1);
                while b != 0 {
                    let t = a % b;
                    a = b;
                    b = t;
                }
                a
            };
            pair_ranges.push((i, j, gcd));
        }
    }
    let mut assignments: Vec<Vec<u32>> = vec![vec![]];
    for &(_, _, gcd) in &pair_ranges {
        let mut grown = Vec::new();
        for a in &assignments {
            for v in 0..gcd {
                let mut a2 = a.clone();
                a2.push(v);
                grown.push(a2);
            }
        }
        assignments = grown;
    }
    let n = sub.order();
    assignments
        .into_iter()
        .map(|a| {
            let mut values = vec![vec![QZ::zero(); n]; n];
            for (xi, cx) in coords.iter().enumerate() {
                for (yi, cy) in coords.iter().enumerate() {
                    let mut acc = QZ::zero();
                    for (k, &(i, j, gcd)) in pair_ranges.iter().enumerate() {
                        // b(g_i, g_j) = a_k / gcd, b(g_j, g_i) = -a_k / gcd
                        let v = QZ::new(a[k] as i64, gcd as i64);
                        acc = acc + v * (cx[i] as i64 * cy[j] as i64)
                            - v * (cx[j] as i64 * cy[i] as i64);
                    }
                    values[xi][yi] = acc;
                }
            }
            Bicharacter { domain: sub.clone(), values }
        })
        .collect()
}

/// The nontrivial skew-symmetric bicharacter on `Z2 ⊕ Z2` (value 1/2 on
/// every pair of distinct nonzero elements).
pub fn nontrivial_bicharacter_z2z2() -> Bicharacter {
    let g = FiniteAbelianGroup::new(&[2, 2]);
    let sub = Subgroup::full(&g);
    skew_bicharacters(&g, &sub)
        .into_iter()
        .find(|b| !b.is_trivial())
        .expect("Z2xZ2 carries a nontrivial skew bicharacter")
}

/// Result of a bimodule tensor product: a multiplicity and a label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleProduct {
    pub multiplicity: u64,
    pub label: ModuleCatLabel,
}

/// Tensor product of a `Vec_{A1}`-`Vec_{A2}` bimodule with a
/// `Vec_{A2}`-`Vec_{A3}` bimodule over `Vec_{A2}`.
///
/// `left.group` must be `A1 ⊕ A2` and `right.group` must be `A2 ⊕ A3`;
/// `mid` tells how many trailing coordinates of `left` (and leading
/// coordinates of `right`) form `A2`.
pub fn bimodule_tensor(
    left: &ModuleCatLabel,
    right: &ModuleCatLabel,
    mid: usize,
) -> Result<BimoduleProduct, GroupModError> {
    let a1_len = left.group.factors.len() - mid;
    let a3_len = right.group.factors.len() - mid;
    if left.group.factors[a1_len..] != right.group.factors[..mid] {
        return Err(GroupModError::InvalidInput("middle groups do not match".into()));
    }
    let a2 = FiniteAbelianGroup::new(&left.group.factors[a1_len..]);
    let big = FiniteAbelianGroup::new(
        &[
            &left.group.factors[..],
            &right.group.factors[..],
        ]
        .concat(),
    );

    // H ∘ H' = elements ((a1, -a2), (a2, a3)) of H ⊕ H'
    let mut circ: Vec<Elem> = Vec::new();
    for h in &left.subgroup.elements {
        for hp in &right.subgroup.elements {
            let h_a2 = &h[a1_len..];
            let hp_a2 = &hp[..mid];
            let neg = a2.neg(&hp_a2.to_vec());
            if h_a2 == neg.as_slice() {
                let mut e = h.clone();
                e.extend_from_slice(hp);
                circ.push(e);
            }
        }
    }
    circ.sort();

    // H ∩ H' inside A2, embedded anti-diagonally x ↦ (0, -x, x, 0)
    let mut antidiag: Vec<Elem> = Vec::new();
    for x in a2.elements() {
        let mut lhs = vec![0u32; a1_len];
        lhs.extend(a2.neg(&x));
        let mut rhs = x.clone();
        rhs.extend(vec![0u32; a3_len]);
        if left.subgroup.contains(&lhs) && right.subgroup.contains(&rhs) {
            let mut e = lhs;
            e.extend(rhs);
            antidiag.push(e);
        }
    }
    let cap_order = antidiag.len();

    // pairing of psi x psi' restricted to H ∘ H'
    let pair = |x: &Elem, y: &Elem| -> QZ {
        let (xl, xr) = x.split_at(a1_len + mid);
        let (yl, yr) = y.split_at(a1_len + mid);
        left.psi.eval(&xl.to_vec(), &yl.to_vec()) + right.psi.eval(&xr.to_vec(), &yr.to_vec())
    };

    // orthogonal complement of the anti-diagonal inside H ∘ H'
    let perp: Vec<Elem> = circ
        .iter()
        .filter(|g| antidiag.iter().all(|x| pair(x, g).is_zero()))
        .cloned()
        .collect();

    // projection to A1 ⊕ A3 and pushforward bicharacter
    let proj = |e: &Elem| -> Elem {
        let mut out = e[..a1_len].to_vec();
        out.extend_from_slice(&e[a1_len + 2 * mid..]);
        out
    };
    let mut image: Vec<Elem> = perp.iter().map(|e| proj(e)).collect();
    image.sort();
    image.dedup();
    let out_group = FiniteAbelianGroup::new(
        &[&left.group.factors[..a1_len], &right.group.factors[mid..]].concat(),
    );
    let out_sub = Subgroup { elements: image.clone() };

    // well-definedness of the pushforward is a spec property, checked in
    // tests over all preimage pairs; here we take the first preimage.
    let pre = |u: &Elem| -> &Elem {
        perp.iter().find(|e| proj(e) == *u).expect("u in image")
    };
    let n_out = image.len();
    let mut values = vec![vec![QZ::zero(); n_out]; n_out];
    for (i, u) in image.iter().enumerate() {
        for (j, v) in image.iter().enumerate() {
            values[i][j] = pair(pre(u), pre(v));
        }
    }
    let psi_out = Bicharacter { domain: out_sub.clone(), values };

    let num = (cap_order as u64) * (perp.len() as u64) * (a2.order() as u64);
    let den = (left.subgroup.order() as u64) * (right.subgroup.order() as u64);
    if num % den != 0 {
        return Err(GroupModError::NonIntegerMultiplicity(format!("{num}/{den}")));
    }
    let _ = big;
    Ok(BimoduleProduct {
        multiplicity: num / den,
        label: ModuleCatLabel { group: out_group, subgroup: out_sub, psi: psi_out },
    })
}

/// Check that the pushforward in [`bimodule_tensor`] is independent of the
/// chosen preimages (exhaustively, for tests and the property suite).
pub fn pushforward_well_defined(
    left: &ModuleCatLabel,
    right: &ModuleCatLabel,
    mid: usize,
) -> Result<bool, GroupModError> {
    let a1_len = left.group.factors.len() - mid;
    let a2 = FiniteAbelianGroup::new(&left.group.factors[a1_len..]);
    let mut circ: Vec<Elem> = Vec::new();
    for h in &left.subgroup.elements {
        for hp in &right.subgroup.elements {
            let h_a2 = &h[a1_len..];
            let neg = a2.neg(&hp[..mid].to_vec());
            if h_a2 == neg.as_slice() {
                let mut e = h.clone();
                e.extend_from_slice(hp);
                circ.push(e);
            }
        }
    }
    let mut antidiag: Vec<Elem> = Vec::new();
    for x in a2.elements() {
        let mut lhs = vec![0u32; a1_len];
        lhs.extend(a2.neg(&x));
        let mut rhs = x.clone();
        rhs.extend(vec![0u32; right.group.factors.len() - mid]);
        if left.subgroup.contains(&lhs) && right.subgroup.contains(&rhs) {
            let mut e = lhs;
            e.extend(rhs);
            antidiag.push(e);
        }
    }
    let pair = |x: &Elem, y: &Elem| -> QZ {
        let (xl, xr) = x.split_at(a1_len + mid);
        let (yl, yr) = y.split_at(a1_len + mid);
        left.psi.eval(&xl.to_vec(), &yl.to_vec()) + right.psi.eval(&xr.to_vec(), &yr.to_vec())
    };
    let perp: Vec<Elem> = circ
        .iter()
        .filter(|g| antidiag.iter().all(|x| pair(x, g).is_zero()))
        .cloned()
        .collect();
    let proj = |e: &Elem| -> Elem {
        let mut out = e[..a1_len].to_vec();
        out.extend_from_slice(&e[a1_len + 2 * mid..]);
        out
    };
    for x in &perp {
        for x2 in &perp {
            if proj(x) != proj(x2) {
                continue;
            }
            for y in &perp {
                for y2 in &perp {
                    if proj(y) != proj(y2) {
                        continue;
                    }
                    if pair(x, y) != pair(x2, y2) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// The six `Vec_{Z2}`-bimodule labels in the conventional order
/// `M2, M11, M12, M4, M21, M22`.
pub fn z2_bimodule_labels() -> Vec<(String, ModuleCatLabel)> {
    let g = FiniteAbelianGroup::new(&[2, 2]);
    let diag = Subgroup { elements: vec![vec![0, 0], vec![1, 1]] };
    let full = Subgroup::full(&g);
    let first = Subgroup { elements: vec![vec![0, 0], vec![1, 0]] };
    let second = Subgroup { elements: vec![vec![0, 0], vec![0, 1]] };
    let trivial = Subgroup::trivial(&g);
    let xi = nontrivial_bicharacter_z2z2();
    let mk = |sub: &Subgroup, psi: Option<Bicharacter>| ModuleCatLabel {
        group: g.clone(),
        subgroup: sub.clone(),
        psi: psi.unwrap_or_else(|| Bicharacter::trivial(sub.clone())),
    };
    vec![
        ("M2".into(), mk(&diag, None)),
        ("M1,1".into(), mk(&full, None)),
        ("M1,2".into(), mk(&full, Some(xi))),
        ("M4".into(), mk(&trivial, None)),
        ("M2,1".into(), mk(&first, None)),
        ("M2,2".into(), mk(&second, None)),
    ]
}

/// Identify a product label among the named `Vec_{Z2}` labels.
pub fn identify_z2_label(label: &ModuleCatLabel) -> Option<String> {
    for (name, cand) in z2_bimodule_labels() {
        if cand.subgroup == label.subgroup {
            // compare bicharacters up to the stored value table
            if cand.psi.values == label.psi.values {
                return Some(name);
            }
        }
    }
    None
}

/// Conversion of a `D(Z_N)` module `M(A, ρ)` (ρ trivial) into a bimodule
/// label over `Vec_{Z_N^2 ⊕ Z_N^2}` using the braiding: the subgroup is
/// `B = {(x, y) : x + y ∈ A}` and the 2-cocycle from the braiding is
/// skew-symmetrized with denominator 2N.
pub fn braided_module_to_bimodule(
    n: u32,
    a: &Subgroup,
) -> Result<ModuleCatLabel, GroupModError> {
    let zn2 = FiniteAbelianGroup::new(&[n, n]);
    let big = zn2.direct_sum(&zn2);
    if big.order() > ABELIAN_ORDER_BOUND {
        return Err(GroupModError::GroupTooLarge { order: big.order(), bound: ABELIAN_ORDER_BOUND });
    }
    let mut elements: Vec<Elem> = Vec::new();
    for x in zn2.elements() {
        for y in zn2.elements() {
            let s = zn2.add(&x, &y);
            if a.contains(&s) {
                let mut e = x.clone();
                e.extend(y);
                elements.push(e);
            }
        }
    }
    elements.sort();
    let sub = Subgroup { elements };
    // raw 2-cocycle from the braiding: psi(g, g') = y'_2 (x_1 + y_1) / N,
    // with the sum reduced mod N before use
    let raw = |g1: &Elem, g2: &Elem| -> QZ {
        let x1 = g1[0];
        let y1 = g1[2];
        let y2p = g2[3];
        QZ::new((y2p as i64) * ((x1 + y1) % n) as i64, n as i64)
    };
    let m = sub.order();
    let mut values = vec![vec![QZ::zero(); m]; m];
    for (i, g1) in sub.elements.iter().enumerate() {
        for (j, g2) in sub.elements.iter().enumerate() {
            values[i][j] = raw(g1, g2).half() - raw(g2, g1).half();
        }
    }
    Ok(ModuleCatLabel { group: big, subgroup: sub, psi: Bicharacter { domain: Subgroup { elements: Vec::new() }, values } }
        .normalize_psi_domain())
}

impl ModuleCatLabel {
    fn normalize_psi_domain(mut self) -> Self {
        self.psi.domain = self.subgroup.clone();
        self
    }
}

/// The two worked `D(Z2)` bimodule self-products, with the subgroup labels
/// of the inputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DZ2Products {
    /// `A = 0 x Z2`: multiplicity and whether the result equals the input label.
    pub second_axis: (u64, bool),
    /// `A = Z2 x 0`: multiplicity and the resulting subgroup in `Z2^2 ⊕ Z2^2`.
    pub first_axis: (u64, Vec<Elem>),
}

pub fn dz2_bimodule_products() -> Result<DZ2Products, GroupModError> {
    let zn2 = FiniteAbelianGroup::new(&[2, 2]);
    let all = zn2.elements();
    let axis = |coord: usize| -> Subgroup {
        Subgroup {
            elements: all.iter().filter(|e| e[1 - coord] == 0).cloned().collect(),
        }
    };
    // A = 0 x Z2 (second coordinate free)
    let m22 = braided_module_to_bimodule(2, &axis(1))?;
    let p22 = bimodule_tensor(&m22, &m22, 2)?;
    let second_axis = (p22.multiplicity, p22.label.subgroup == m22.subgroup && p22.label.psi.is_trivial());
    // A = Z2 x 0
    let m21 = braided_module_to_bimodule(2, &axis(0))?;
    let p21 = bimodule_tensor(&m21, &m21, 2)?;
    let first_axis = (p21.multiplicity, p21.label.subgroup.elements.clone());
    Ok(DZ2Products { second_axis, first_axis })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2z2_has_six_labels() {
        let g = FiniteAbelianGroup::new(&[2, 2]);
        let labels = enumerate_module_cats(&g).unwrap();
        assert_eq!(labels.len(), 6);
        // nontrivial bicharacter appears only on the full subgroup
        for l in &labels {
            if !l.psi.is_trivial() {
                assert_eq!(l.subgroup.order(), 4);
            }
        }
    }

    #[test]
    fn trivial_group_has_one_label() {
        let g = FiniteAbelianGroup::new(&[]);
        assert_eq!(enumerate_module_cats(&g).unwrap().len(), 1);
    }

    #[test]
    fn z3z3_subgroup_count_and_bicharacters() {
        let g = FiniteAbelianGroup::new(&[3, 3]);
        let subs = g.subgroups().unwrap();
        assert_eq!(subs.len(), 6); // 1, four Z3's, full
        for sub in &subs {
            let skews = skew_bicharacters(&g, sub);
            if sub.order() == 9 {
                assert_eq!(skews.len(), 3); // values t/3
                assert_eq!(skews.iter().filter(|b| !b.is_trivial()).count(), 2);
            } else {
                assert_eq!(skews.len(), 1);
            }
            for b in &skews {
                assert!(b.is_skew(&g));
            }
        }
    }

    #[test]
    fn xi_values() {
        let xi = nontrivial_bicharacter_z2z2();
        let g = FiniteAbelianGroup::new(&[2, 2]);
        for x in g.elements() {
            assert!(xi.eval(&x, &x).is_zero());
            assert!(xi.eval(&x, &g.zero()).is_zero());
        }
        assert_eq!(xi.eval(&vec![1, 0], &vec![0, 1]), QZ::new(1, 2));
        assert_eq!(xi.eval(&vec![1, 1], &vec![0, 1]), QZ::new(1, 2));
        assert_eq!(xi.eval(&vec![1, 1], &vec![1, 0]), QZ::new(1, 2));
    }

    #[test]
    fn m2_is_unit() {
        let labels = z2_bimodule_labels();
        let m2 = &labels[0].1;
        for (name, l) in &labels {
            let p = bimodule_tensor(m2, l, 1).unwrap();
            assert_eq!(p.multiplicity, 1, "M2 x {name}");
            assert_eq!(identify_z2_label(&p.label).as_deref(), Some(name.as_str()));
            let q = bimodule_tensor(l, m2, 1).unwrap();
            assert_eq!(q.multiplicity, 1);
            assert_eq!(identify_z2_label(&q.label).as_deref(), Some(name.as_str()));
        }
    }

    #[test]
    fn sample_products() {
        let labels = z2_bimodule_labels();
        let by_name = |n: &str| labels.iter().find(|(m, _)| m == n).unwrap().1.clone();
        // M1,2 x M1,2 = M2
        let p = bimodule_tensor(&by_name("M1,2"), &by_name("M1,2"), 1).unwrap();
        assert_eq!(p.multiplicity, 1);
        assert_eq!(identify_z2_label(&p.label).as_deref(), Some("M2"));
        // M1,1 x M1,1 = 2 M1,1
        let p = bimodule_tensor(&by_name("M1,1"), &by_name("M1,1"), 1).unwrap();
        assert_eq!(p.multiplicity, 2);
        assert_eq!(identify_z2_label(&p.label).as_deref(), Some("M1,1"));
    }

    #[test]
    fn dz2_products_match_worked_values() {
        let out = dz2_bimodule_products().unwrap();
        assert_eq!(out.second_axis, (2, true));
        // first-axis case: multiplicity 1 onto (Z2x0, Z2x0)
        assert_eq!(out.first_axis.0, 1);
        let want: Vec<Elem> = vec![
            vec![0, 0, 0, 0],
            vec![0, 0, 1, 0],
            vec![1, 0, 0, 0],
            vec![1, 0, 1, 0],
        ];
        assert_eq!(out.first_axis.1, want);
    }

    #[test]
    fn pushforward_independence_on_z2_cases() {
        let labels = z2_bimodule_labels();
        for (_, a) in &labels {
            for (_, b) in &labels {
                assert!(pushforward_well_defined(a, b, 1).unwrap());
            }
        }
    }
}
