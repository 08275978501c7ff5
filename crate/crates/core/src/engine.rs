//! The labelled-tree morphism calculus.
//!
//! Objects are bracketed tensor words of multiplicity vectors ([`Tree`]);
//! a morphism between two words is a family of complex matrices, one per
//! simple channel, written in the splitting-tree bases enumerated by
//! [`Ctx::basis`]. Structural moves (associator rebracketings, braidings,
//! unit absorption) and coefficient-tensor generators all become matrices
//! in these bases, and every higher-level check in the crate is a short
//! composite of them.

use std::collections::{BTreeMap, HashMap};

use crate::fusion::{Label, ObjectVector};
use crate::linalg::CMat;
use crate::num::{c64, C64};
use crate::skel::{SkelError, SkeletalData};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf(ObjectVector),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn leaf(obj: ObjectVector) -> Tree {
        Tree::Leaf(obj)
    }

    pub fn node(l: Tree, r: Tree) -> Tree {
        Tree::Node(Box::new(l), Box::new(r))
    }

    /// Left comb over the given leaves.
    pub fn left_comb(leaves: &[ObjectVector]) -> Tree {
        let mut it = leaves.iter();
        let mut t = Tree::leaf(it.next().expect("nonempty word").clone());
        for obj in it {
            t = Tree::node(t, Tree::leaf(obj.clone()));
        }
        t
    }

    pub fn leaves(&self) -> Vec<&ObjectVector> {
        match self {
            Tree::Leaf(o) => vec![o],
            Tree::Node(l, r) => {
                let mut v = l.leaves();
                v.extend(r.leaves());
                v
            }
        }
    }

    pub fn subtree(&self, path: &[u8]) -> &Tree {
        let mut t = self;
        for &d in path {
            match t {
                Tree::Node(l, r) => t = if d == 0 { l } else { r },
                Tree::Leaf(_) => panic!("path walks past a leaf"),
            }
        }
        t
    }

    pub fn replace(&self, path: &[u8], new: Tree) -> Tree {
        if path.is_empty() {
            return new;
        }
        match self {
            Tree::Node(l, r) => {
                if path[0] == 0 {
                    Tree::node(l.replace(&path[1..], new), (**r).clone())
                } else {
                    Tree::node((**l).clone(), r.replace(&path[1..], new))
                }
            }
            Tree::Leaf(_) => panic!("path walks past a leaf"),
        }
    }

    fn is_left_comb(&self) -> bool {
        match self {
            Tree::Leaf(_) => true,
            Tree::Node(l, r) => matches!(**r, Tree::Leaf(_)) && l.is_left_comb(),
        }
    }

    /// Path to the first node whose right child is itself a node.
    fn first_right_violation(&self, path: &mut Vec<u8>) -> bool {
        match self {
            Tree::Leaf(_) => false,
            Tree::Node(l, r) => {
                if matches!(**r, Tree::Node(_, _)) {
                    return true;
                }
                path.push(0);
                if l.first_right_violation(path) {
                    return true;
                }
                path.pop();
                path.push(1);
                if r.first_right_violation(path) {
                    return true;
                }
                path.pop();
                false
            }
        }
    }
}

/// A basis element of `Hom(channel, tree)`: copy indices at leaves, channel
/// pairs at nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasisElem {
    Leaf { copy: u32 },
    Node { lch: Label, rch: Label, l: Box<BasisElem>, r: Box<BasisElem> },
}

impl BasisElem {
    pub fn sub(&self, path: &[u8]) -> &BasisElem {
        let mut e = self;
        for &d in path {
            match e {
                BasisElem::Node { l, r, .. } => e = if d == 0 { l } else { r },
                BasisElem::Leaf { .. } => panic!("path walks past a leaf"),
            }
        }
        e
    }

    /// Channel of the subtree at `path` (`root` is the overall channel).
    pub fn channel_at(&self, root: Label, path: &[u8]) -> Label {
        let mut e = self;
        let mut ch = root;
        for &d in path {
            match e {
                BasisElem::Node { lch, rch, l, r } => {
                    if d == 0 {
                        ch = *lch;
                        e = l;
                    } else {
                        ch = *rch;
                        e = r;
                    }
                }
                BasisElem::Leaf { .. } => panic!("path walks past a leaf"),
            }
        }
        ch
    }

    pub fn replace(&self, path: &[u8], new: BasisElem) -> BasisElem {
        if path.is_empty() {
            return new;
        }
        match self {
            BasisElem::Node { lch, rch, l, r } => {
                if path[0] == 0 {
                    BasisElem::Node {
                        lch: *lch,
                        rch: *rch,
                        l: Box::new(l.replace(&path[1..], new)),
                        r: r.clone(),
                    }
                } else {
                    BasisElem::Node {
                        lch: *lch,
                        rch: *rch,
                        l: l.clone(),
                        r: Box::new(r.replace(&path[1..], new)),
                    }
                }
            }
            BasisElem::Leaf { .. } => panic!("path walks past a leaf"),
        }
    }
}

/// A morphism between bracketed words, block per simple channel. The block
/// for channel `s` has shape `dim Hom(s, dst) x dim Hom(s, src)`.
#[derive(Debug, Clone)]
pub struct Morphism {
    pub src: Tree,
    pub dst: Tree,
    pub blocks: BTreeMap<Label, CMat>,
}

impl Morphism {
    pub fn block(&self, s: Label) -> Option<&CMat> {
        self.blocks.get(&s)
    }

    pub fn max_abs_diff(&self, other: &Morphism) -> f64 {
        assert_eq!(self.src, other.src, "source mismatch");
        assert_eq!(self.dst, other.dst, "target mismatch");
        let mut worst = 0.0_f64;
        for (s, m) in &self.blocks {
            match other.blocks.get(s) {
                Some(o) => worst = worst.max(m.max_abs_diff(o)),
                None => worst = worst.max(m.max_abs()),
            }
        }
        for (s, o) in &other.blocks {
            if !self.blocks.contains_key(s) {
                worst = worst.max(o.max_abs());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.values().map(|m| m.max_abs()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: C64) -> Morphism {
        Morphism {
            src: self.src.clone(),
            dst: self.dst.clone(),
            blocks: self.blocks.iter().map(|(k, m)| (*k, m.scale(s))).collect(),
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        assert_eq!(self.src, other.src);
        assert_eq!(self.dst, other.dst);
        let mut blocks = self.blocks.clone();
        for (s, m) in &other.blocks {
            blocks
                .entry(*s)
                .and_modify(|b| *b = b.add(m))
                .or_insert_with(|| m.clone());
        }
        Morphism { src: self.src.clone(), dst: self.dst.clone(), blocks }
    }

    /// Inverse of a block-invertible morphism (structural moves are).
    pub fn inverse(&self) -> Option<Morphism> {
        let mut blocks = BTreeMap::new();
        for (s, m) in &self.blocks {
            blocks.insert(*s, m.inverse()?);
        }
        Some(Morphism { src: self.dst.clone(), dst: self.src.clone(), blocks })
    }
}

pub struct Ctx<'a> {
    pub skel: &'a SkeletalData,
}

impl<'a> Ctx<'a> {
    pub fn new(skel: &'a SkeletalData) -> Self {
        Ctx { skel }
    }

    fn rank(&self) -> usize {
        self.skel.ring.rank()
    }

    pub fn basis(&self, tree: &Tree, channel: Label) -> Vec<BasisElem> {
        match tree {
            Tree::Leaf(obj) => (0..obj.0[channel]).map(|copy| BasisElem::Leaf { copy }).collect(),
            Tree::Node(l, r) => {
                let mut out = Vec::new();
                for u in 0..self.rank() {
                    for v in 0..self.rank() {
                        if !self.skel.ring.admissible(u, v, channel) {
                            continue;
                        }
                        let lb = self.basis(l, u);
                        if lb.is_empty() {
                            continue;
                        }
                        let rb = self.basis(r, v);
                        for le in &lb {
                            for re in &rb {
                                out.push(BasisElem::Node {
                                    lch: u,
                                    rch: v,
                                    l: Box::new(le.clone()),
                                    r: Box::new(re.clone()),
                                });
                            }
                        }
                    }
                }
                out
            }
        }
    }

    pub fn dim(&self, tree: &Tree, channel: Label) -> usize {
        self.basis(tree, channel).len()
    }

    pub fn identity(&self, tree: &Tree) -> Morphism {
        let mut blocks = BTreeMap::new();
        for s in 0..self.rank() {
            let d = self.dim(tree, s);
            if d > 0 {
                blocks.insert(s, CMat::identity(d));
            }
        }
        Morphism { src: tree.clone(), dst: tree.clone(), blocks }
    }

    /// `f ∘ g` (first `g`, then `f`).
    pub fn compose(&self, f: &Morphism, g: &Morphism) -> Morphism {
        assert_eq!(f.src, g.dst, "compose: shape mismatch");
        let mut blocks = BTreeMap::new();
        for (s, fm) in &f.blocks {
            if let Some(gm) = g.blocks.get(s) {
                blocks.insert(*s, fm.matmul(gm));
            }
        }
        Morphism { src: g.src.clone(), dst: f.dst.clone(), blocks }
    }

    pub fn compose_all(&self, steps: &[&Morphism]) -> Morphism {
        let mut acc = steps[0].clone();
        for m in &steps[1..] {
            acc = self.compose(m, &acc);
        }
        acc
    }

    /// Build a morphism from an entrywise rule.
    pub fn from_fn(
        &self,
        src: &Tree,
        dst: &Tree,
        f: impl Fn(Label, &BasisElem, &BasisElem) -> C64,
    ) -> Morphism {
        let mut blocks = BTreeMap::new();
        for s in 0..self.rank() {
            let cols = self.basis(src, s);
            let rows = self.basis(dst, s);
            if rows.is_empty() || cols.is_empty() {
                continue;
            }
            let m = CMat::from_fn(rows.len(), cols.len(), |i, j| f(s, &rows[i], &cols[j]));
            blocks.insert(s, m);
        }
        Morphism { src: src.clone(), dst: dst.clone(), blocks }
    }

    /// One associator move `X ⊗ (Y ⊗ Z) → (X ⊗ Y) ⊗ Z` at `path`
    /// (post-composition with the inverse associator).
    fn rotate_to_left(&self, tree: &Tree, path: &[u8]) -> Result<Morphism, SkelError> {
        let sub = tree.subtree(path);
        let (x, y, z) = match sub {
            Tree::Node(l, r) => match &**r {
                Tree::Node(rl, rr) => ((**l).clone(), (**rl).clone(), (**rr).clone()),
                _ => panic!("rotate_to_left: right child is a leaf"),
            },
            _ => panic!("rotate_to_left at a leaf"),
        };
        let new_sub = Tree::node(Tree::node(x, y), z);
        let dst = tree.replace(path, new_sub);
        let mut blocks = BTreeMap::new();
        for s in 0..self.rank() {
            let cols = self.basis(tree, s);
            if cols.is_empty() {
                continue;
            }
            let rows = self.basis(&dst, s);
            let row_index: HashMap<&BasisElem, usize> =
                rows.iter().enumerate().map(|(i, e)| (e, i)).collect();
            let mut m = CMat::zeros(rows.len(), cols.len());
            for (j, col) in cols.iter().enumerate() {
                let t = col.channel_at(s, path);
                let node = col.sub(path);
                let (u, e_ch, le, re) = match node {
                    BasisElem::Node { lch, rch, l, r } => (*lch, *rch, (**l).clone(), (**r).clone()),
                    _ => unreachable!(),
                };
                let (v, w, lb, lc) = match re {
                    BasisElem::Node { lch, rch, l, r } => (lch, rch, (*l).clone(), (*r).clone()),
                    _ => unreachable!(),
                };
                // a^{-1} ∘ Y_e = Σ_f (F^{-1})^{uvw}_{t; f e} X_f
                let fmat = self.f_inverse(u, v, w, t)?;
                let frows = self.skel.f_cols(u, v, w, t); // f labels
                let fcols = self.skel.f_rows(u, v, w, t); // e labels
                let e_pos = fcols.iter().position(|&x| x == e_ch).expect("admissible e");
                for (fi, &f_ch) in frows.iter().enumerate() {
                    let coeff = fmat[(fi, e_pos)];
                    if coeff.norm_sqr() == 0.0 {
                        continue;
                    }
                    let new_node = BasisElem::Node {
                        lch: f_ch,
                        rch: w,
                        l: Box::new(BasisElem::Node {
                            lch: u,
                            rch: v,
                            l: Box::new(le.clone()),
                            r: Box::new(lb.clone()),
                        }),
                        r: Box::new(lc.clone()),
                    };
                    let new_elem = col.replace(path, new_node);
                    let i = row_index[&new_elem];
                    m[(i, j)] += coeff;
                }
            }
            blocks.insert(s, m);
        }
        Ok(Morphism { src: tree.clone(), dst, blocks })
    }

    /// `(F^{uvw}_t)^{-1}` with rows indexed by the left-nested internal
    /// labels and columns by the right-nested ones.
    fn f_inverse(&self, u: Label, v: Label, w: Label, t: Label) -> Result<CMat, SkelError> {
        let m = self.skel.f_matrix(u, v, w, t)?;
        m.inverse().ok_or_else(|| {
            SkelError::ShapeMismatch(format!("singular F at ({u},{v},{w};{t})"))
        })
    }

    /// Structural rebracketing to the left comb.
    pub fn to_left_comb(&self, tree: &Tree) -> Result<Morphism, SkelError> {
        let mut acc = self.identity(tree);
        let mut current = tree.clone();
        while !current.is_left_comb() {
            let mut path = Vec::new();
            assert!(current.first_right_violation(&mut path));
            let step = self.rotate_to_left(&current, &path)?;
            current = step.dst.clone();
            acc = self.compose(&step, &acc);
        }
        Ok(acc)
    }

    /// The canonical structural isomorphism between two bracketings of the
    /// same word.
    pub fn f_move(&self, src: &Tree, dst: &Tree) -> Result<Morphism, SkelError> {
        let src_leaves: Vec<_> = src.leaves();
        let dst_leaves: Vec<_> = dst.leaves();
        if src_leaves != dst_leaves {
            return Err(SkelError::BasisMismatch("f_move: different words".into()));
        }
        let a = self.to_left_comb(src)?;
        let b = self.to_left_comb(dst)?;
        let b_inv = b.inverse().ok_or_else(|| SkelError::BasisMismatch("singular comb move".into()))?;
        Ok(self.compose(&b_inv, &a))
    }

    /// Braiding of the two children at `path`; `inverse` uses the inverse
    /// braiding `c^{-1}_{B,A}` instead of `c_{A,B}`.
    pub fn r_move(&self, tree: &Tree, path: &[u8], inverse: bool) -> Result<Morphism, SkelError> {
        if !self.skel.has_braiding() {
            return Err(SkelError::MissingREntry);
        }
        let (l, r) = match tree.subtree(path) {
            Tree::Node(l, r) => ((**l).clone(), (**r).clone()),
            _ => panic!("r_move at a leaf"),
        };
        let dst = tree.replace(path, Tree::node(r, l));
        let mut blocks = BTreeMap::new();
        for s in 0..self.rank() {
            let cols = self.basis(tree, s);
            if cols.is_empty() {
                continue;
            }
            let rows = self.basis(&dst, s);
            let row_index: HashMap<&BasisElem, usize> =
                rows.iter().enumerate().map(|(i, e)| (e, i)).collect();
            let mut m = CMat::zeros(rows.len(), cols.len());
            for (j, col) in cols.iter().enumerate() {
                let t = col.channel_at(s, path);
                let (u, v, le, re) = match col.sub(path) {
                    BasisElem::Node { lch, rch, l, r } => (*lch, *rch, (**l).clone(), (**r).clone()),
                    _ => unreachable!(),
                };
                let phase = if inverse {
                    let p = self.skel.r_phase(v, u, t)?;
                    c64(1.0, 0.0) / p
                } else {
                    self.skel.r_phase(u, v, t)?
                };
                let new_node =
                    BasisElem::Node { lch: v, rch: u, l: Box::new(re), r: Box::new(le) };
                let new_elem = col.replace(path, new_node);
                let i = row_index[&new_elem];
                m[(i, j)] += phase;
            }
            blocks.insert(s, m);
        }
        Ok(Morphism { src: tree.clone(), dst, blocks })
    }

    /// Apply a generator morphism to the subtree at `path` (identity
    /// elsewhere). The subtree must equal `gen.src`.
    pub fn apply_at(&self, tree: &Tree, path: &[u8], gen: &Morphism) -> Result<Morphism, SkelError> {
        let plan = self.apply_plan(tree, path, &gen.src, &gen.dst)?;
        Ok(plan.apply(gen))
    }

    /// Precompute the index scatter of [`Ctx::apply_at`] so repeated
    /// applications with varying generator entries avoid re-enumerating
    /// bases (the Hopf-structure solver leans on this).
    pub fn apply_plan(
        &self,
        tree: &Tree,
        path: &[u8],
        gen_src: &Tree,
        gen_dst: &Tree,
    ) -> Result<ApplyPlan, SkelError> {
        if tree.subtree(path) != gen_src {
            return Err(SkelError::BasisMismatch(format!(
                "apply_at: subtree at {path:?} does not match generator source"
            )));
        }
        let dst = tree.replace(path, gen_dst.clone());
        let mut blocks = BTreeMap::new();
        let mut gen_bases: HashMap<Label, (Vec<BasisElem>, HashMap<BasisElem, usize>)> =
            HashMap::new();
        for s in 0..self.rank() {
            let cols = self.basis(tree, s);
            if cols.is_empty() {
                continue;
            }
            let rows = self.basis(&dst, s);
            let row_index: HashMap<&BasisElem, usize> =
                rows.iter().enumerate().map(|(i, e)| (e, i)).collect();
            let mut scatter = Vec::new();
            for (j, col) in cols.iter().enumerate() {
                let w = col.channel_at(s, path);
                let sub = col.sub(path).clone();
                let (gen_rows, gen_col_index) = gen_bases.entry(w).or_insert_with(|| {
                    let rows_w = self.basis(gen_dst, w);
                    let cols_w = self.basis(gen_src, w);
                    let index: HashMap<BasisElem, usize> =
                        cols_w.into_iter().enumerate().map(|(i, e)| (e, i)).collect();
                    (rows_w, index)
                });
                let cj = gen_col_index[&sub];
                for (ri, row_sub) in gen_rows.iter().enumerate() {
                    let new_elem = col.replace(path, row_sub.clone());
                    let i = row_index[&new_elem];
                    scatter.push((i, j, w, ri, cj));
                }
            }
            blocks.insert(s, (rows.len(), cols.len(), scatter));
        }
        Ok(ApplyPlan { src: tree.clone(), dst, blocks })
    }

    /// Remove a unit-object leaf sitting as the `side` child of the node at
    /// `parent` (unit isomorphisms are identities).
    pub fn absorb_unit(&self, tree: &Tree, parent: &[u8], side: u8) -> Result<Morphism, SkelError> {
        let unit = self.skel.ring.unit;
        let node = tree.subtree(parent);
        let (l, r) = match node {
            Tree::Node(l, r) => ((**l).clone(), (**r).clone()),
            _ => panic!("absorb_unit at a leaf"),
        };
        let (gone, kept) = if side == 0 { (l, r) } else { (r, l) };
        match &gone {
            Tree::Leaf(obj) if obj.0.iter().enumerate().all(|(i, &m)| (i == unit) == (m == 1)) => {}
            _ => {
                return Err(SkelError::BasisMismatch(
                    "absorb_unit: child is not the unit object".into(),
                ))
            }
        }
        let dst = tree.replace(parent, kept);
        Ok(self.from_fn(tree, &dst, |_s, row, col| {
            let sub = col.sub(parent);
            let (inner, uch) = match sub {
                BasisElem::Node { lch, rch, l, r } => {
                    if side == 0 {
                        ((**r).clone(), *lch)
                    } else {
                        ((**l).clone(), *rch)
                    }
                }
                _ => unreachable!(),
            };
            if uch != unit {
                return c64(0.0, 0.0);
            }
            let want = col.replace(parent, inner);
            if &want == row {
                c64(1.0, 0.0)
            } else {
                c64(0.0, 0.0)
            }
        }))
    }

    /// Inverse of [`Ctx::absorb_unit`]: insert a unit leaf next to the
    /// subtree at `path` (on the given side of a new node).
    pub fn introduce_unit(&self, tree: &Tree, path: &[u8], side: u8) -> Result<Morphism, SkelError> {
        let unit = self.skel.ring.unit;
        let unit_obj = ObjectVector::simple(self.rank(), unit);
        let sub = tree.subtree(path).clone();
        let new_sub = if side == 0 {
            Tree::node(Tree::leaf(unit_obj), sub)
        } else {
            Tree::node(sub, Tree::leaf(unit_obj))
        };
        let dst = tree.replace(path, new_sub);
        let absorbing = self.absorb_unit(&dst, path, side)?;
        absorbing
            .inverse()
            .ok_or_else(|| SkelError::BasisMismatch("unit introduction not invertible".into()))
    }
}

/// Precomputed index scatter for applying a generator at a fixed position:
/// `result[s][(i, j)] += gen[w][(r, c)]` for each stored tuple.
#[derive(Debug, Clone)]
pub struct ApplyPlan {
    pub src: Tree,
    pub dst: Tree,
    blocks: BTreeMap<Label, (usize, usize, Vec<(usize, usize, Label, usize, usize)>)>,
}

impl ApplyPlan {
    pub fn apply(&self, gen: &Morphism) -> Morphism {
        let mut blocks = BTreeMap::new();
        for (s, (rows, cols, scatter)) in &self.blocks {
            let mut m = CMat::zeros(*rows, *cols);
            for &(i, j, w, r, c) in scatter {
                if let Some(g) = gen.blocks.get(&w) {
                    let v = g[(r, c)];
                    if v.norm_sqr() != 0.0 {
                        m[(i, j)] += v;
                    }
                }
            }
            blocks.insert(*s, m);
        }
        Morphism { src: self.src.clone(), dst: self.dst.clone(), blocks }
    }
}

/// A step of an explicit diagram program.
#[derive(Debug, Clone)]
pub enum Step {
    /// Rebracket the current word to the given shape.
    FMoveTo(Tree),
    /// Braid the children of the node at `path`.
    RMove { path: Vec<u8>, inverse: bool },
    /// Apply a generator at `path`.
    Apply { path: Vec<u8>, gen: Morphism },
    /// Remove a unit leaf (child `side` of the node at `parent`).
    AbsorbUnit { parent: Vec<u8>, side: u8 },
}

/// Evaluate a program as the composite of its steps, starting from the
/// identity on `start`. An empty program returns the identity morphism.
pub fn evaluate_diagram(
    skel: &SkeletalData,
    start: &Tree,
    steps: &[Step],
) -> Result<Morphism, SkelError> {
    let ctx = Ctx::new(skel);
    let mut acc = ctx.identity(start);
    for step in steps {
        let m = match step {
            Step::FMoveTo(shape) => ctx.f_move(&acc.dst, shape)?,
            Step::RMove { path, inverse } => ctx.r_move(&acc.dst, path, *inverse)?,
            Step::Apply { path, gen } => ctx.apply_at(&acc.dst, path, gen)?,
            Step::AbsorbUnit { parent, side } => ctx.absorb_unit(&acc.dst, parent, *side)?,
        };
        acc = ctx.compose(&m, &acc);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skel::{builtin_skeletal, fib_skeletal, SkelKey};

    fn simple_leaf(rank: usize, a: Label) -> Tree {
        Tree::leaf(ObjectVector::simple(rank, a))
    }

    #[test]
    fn f_move_round_trip_is_identity() {
        let skel = fib_skeletal();
        let ctx = Ctx::new(&skel);
        let t = 1;
        let left = Tree::node(
            Tree::node(simple_leaf(2, t), simple_leaf(2, t)),
            simple_leaf(2, t),
        );
        let right = Tree::node(
            simple_leaf(2, t),
            Tree::node(simple_leaf(2, t), simple_leaf(2, t)),
        );
        let f = ctx.f_move(&left, &right).unwrap();
        let back = ctx.f_move(&right, &left).unwrap();
        let round = ctx.compose(&back, &f);
        assert!(round.max_abs_diff(&ctx.identity(&left)) < 1e-12);
    }

    #[test]
    fn fib_f_move_matches_f_matrix() {
        let skel = fib_skeletal();
        let ctx = Ctx::new(&skel);
        let t = 1;
        let left = Tree::node(
            Tree::node(simple_leaf(2, t), simple_leaf(2, t)),
            simple_leaf(2, t),
        );
        let right = Tree::node(
            simple_leaf(2, t),
            Tree::node(simple_leaf(2, t), simple_leaf(2, t)),
        );
        let f = ctx.f_move(&left, &right).unwrap();
        // channel t: 2x2 block equal to F^{ttt}_t (bases ordered 1 < t)
        let block = f.block(t).unwrap();
        let want = skel.f_matrix(t, t, t, t).unwrap();
        assert!(block.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn rebracketing_vec_z2_is_identity_matrix() {
        let skel = builtin_skeletal(&SkelKey::VecGTrivial(vec![2])).unwrap();
        let ctx = Ctx::new(&skel);
        let e = 1;
        let left = Tree::node(
            Tree::node(simple_leaf(2, e), simple_leaf(2, e)),
            simple_leaf(2, e),
        );
        let right = Tree::node(
            simple_leaf(2, e),
            Tree::node(simple_leaf(2, e), simple_leaf(2, e)),
        );
        let f = ctx.f_move(&left, &right).unwrap();
        let block = f.block(e).unwrap();
        assert!(block.max_abs_diff(&CMat::identity(1)) < 1e-12);
    }

    #[test]
    fn double_braid_equals_twist_ratio() {
        // R^2 on (t,t) per channel c must equal θ_c / (θ_t θ_t)
        let skel = fib_skeletal();
        let ctx = Ctx::new(&skel);
        let t = 1;
        let pair = Tree::node(simple_leaf(2, t), simple_leaf(2, t));
        let b1 = ctx.r_move(&pair, &[], false).unwrap();
        let b2 = ctx.r_move(&b1.dst, &[], false).unwrap();
        let mono = ctx.compose(&b2, &b1);
        let theta = skel.theta.clone().unwrap();
        for (c, block) in &mono.blocks {
            let want = theta[*c] / (theta[t] * theta[t]);
            assert!((block[(0, 0)] - want).norm() < 1e-12, "channel {c}");
        }
    }

    #[test]
    fn braid_then_inverse_is_identity() {
        let skel = fib_skeletal();
        let ctx = Ctx::new(&skel);
        let t = 1;
        let pair = Tree::node(simple_leaf(2, t), simple_leaf(2, t));
        let b = ctx.r_move(&pair, &[], false).unwrap();
        let binv = ctx.r_move(&b.dst, &[], true).unwrap();
        let round = ctx.compose(&binv, &b);
        assert!(round.max_abs_diff(&ctx.identity(&pair)) < 1e-12);
    }

    #[test]
    fn empty_program_is_identity() {
        let skel = fib_skeletal();
        let t = 1;
        let tree = Tree::node(simple_leaf(2, t), simple_leaf(2, t));
        let m = evaluate_diagram(&skel, &tree, &[]).unwrap();
        let ctx = Ctx::new(&skel);
        assert!(m.max_abs_diff(&ctx.identity(&tree)) < 1e-15);
    }

    #[test]
    fn absorb_and_introduce_unit_round_trip() {
        let skel = fib_skeletal();
        let ctx = Ctx::new(&skel);
        let t = 1;
        let tree = Tree::node(simple_leaf(2, 0), simple_leaf(2, t));
        let absorb = ctx.absorb_unit(&tree, &[], 0).unwrap();
        let intro = ctx.introduce_unit(&absorb.dst, &[], 0).unwrap();
        let round = ctx.compose(&intro, &absorb);
        assert!(round.max_abs_diff(&ctx.identity(&tree)) < 1e-12);
    }

    #[test]
    fn functoriality_under_program_reassociation() {
        // composing (f3 ∘ f2) ∘ f1 and f3 ∘ (f2 ∘ f1) gives the same matrix
        let skel = fib_skeletal();
        let ctx = Ctx::new(&skel);
        let t = 1;
        let w = Tree::left_comb(&[
            ObjectVector::simple(2, t),
            ObjectVector::simple(2, t),
            ObjectVector::simple(2, t),
        ]);
        let right = Tree::node(
            simple_leaf(2, t),
            Tree::node(simple_leaf(2, t), simple_leaf(2, t)),
        );
        let f1 = ctx.f_move(&w, &right).unwrap();
        let f2 = ctx.r_move(&right, &[1], false).unwrap();
        let f3 = ctx.f_move(&f2.dst, &w).unwrap();
        let a = ctx.compose(&ctx.compose(&f3, &f2), &f1);
        let b = ctx.compose(&f3, &ctx.compose(&f2, &f1));
        assert!(a.max_abs_diff(&b) < 1e-12);
    }
}
