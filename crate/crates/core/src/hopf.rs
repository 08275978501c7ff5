//! Categorical algebras and Hopf algebras inside a braided skeletal
//! category: axiom verification through the tree engine, the built-in
//! structures on `2+e`, `1 ⊕ Vec_Z3` and `2+τ`, integrals, antipode order,
//! (co)commutativity flags, and central-idempotent algebra decomposition.

use std::collections::HashMap;

use thiserror::Error;

use crate::engine::{Ctx, Morphism, Tree};
use crate::fusion::{Label, ObjectVector};
use crate::linalg::CMat;
use crate::num::{c64, phi, poly_roots, C64, SplitMix64};
use crate::report::ValidationReport;
use crate::skel::{fib_skeletal, SkelError, SkeletalData};

#[derive(Debug, Error)]
pub enum HopfError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ambient category has no braiding")]
    MissingBraiding,
    #[error("no two-sided integral found")]
    NoIntegralFound,
    #[error("unknown builtin Hopf algebra: {0}")]
    UnknownKey(String),
    #[error("solver budget exceeded after {0} restarts")]
    SolverBudgetExceeded(usize),
    #[error(transparent)]
    Skel(#[from] SkelError),
}

/// Coefficients of a multiplication tensor `(a,i),(b,j) -> (c,k)`.
pub type MulCoeffs = HashMap<((Label, u32), (Label, u32), (Label, u32)), C64>;
/// Coefficients of a comultiplication tensor `(c,k) -> (a,i),(b,j)`.
pub type DeltaCoeffs = HashMap<((Label, u32), (Label, u32), (Label, u32)), C64>;

#[derive(Debug, Clone)]
pub struct AlgebraData {
    pub ambient: SkeletalData,
    pub object: ObjectVector,
    /// `A ⊗ A -> A`.
    pub mul: Morphism,
    /// `1 -> A`.
    pub unit: Morphism,
}

#[derive(Debug, Clone)]
pub struct HopfAlgebraData {
    pub algebra: AlgebraData,
    /// `A -> A ⊗ A`.
    pub delta: Morphism,
    /// `A -> 1`.
    pub counit: Morphism,
    /// `A -> A`.
    pub antipode: Morphism,
}

impl AlgebraData {
    pub fn a_leaf(&self) -> Tree {
        Tree::leaf(self.object.clone())
    }

    pub fn unit_leaf(&self) -> Tree {
        Tree::leaf(ObjectVector::simple(self.ambient.rank(), self.ambient.ring.unit))
    }

    pub fn pair(&self) -> Tree {
        Tree::node(self.a_leaf(), self.a_leaf())
    }
}

impl HopfAlgebraData {
    pub fn ambient(&self) -> &SkeletalData {
        &self.algebra.ambient
    }
}

/// Build a multiplication morphism `A ⊗ A -> A` from coefficient entries.
pub fn mul_morphism(skel: &SkeletalData, obj: &ObjectVector, coeffs: &MulCoeffs) -> Morphism {
    let ctx = Ctx::new(skel);
    let a = Tree::leaf(obj.clone());
    let src = Tree::node(a.clone(), a.clone());
    ctx.from_fn(&src, &a, |s, row, col| {
        let k = match row {
            crate::engine::BasisElem::Leaf { copy } => *copy,
            _ => unreachable!(),
        };
        match col {
            crate::engine::BasisElem::Node { lch, rch, l, r } => {
                let (i, j) = match (&**l, &**r) {
                    (
                        crate::engine::BasisElem::Leaf { copy: i },
                        crate::engine::BasisElem::Leaf { copy: j },
                    ) => (*i, *j),
                    _ => unreachable!(),
                };
                coeffs.get(&((*lch, i), (*rch, j), (s, k))).copied().unwrap_or_else(|| c64(0.0, 0.0))
            }
            _ => unreachable!(),
        }
    })
}

/// Build a comultiplication morphism `A -> A ⊗ A` from coefficient entries.
pub fn delta_morphism(skel: &SkeletalData, obj: &ObjectVector, coeffs: &DeltaCoeffs) -> Morphism {
    let ctx = Ctx::new(skel);
    let a = Tree::leaf(obj.clone());
    let dst = Tree::node(a.clone(), a.clone());
    ctx.from_fn(&a, &dst, |s, row, col| {
        let k = match col {
            crate::engine::BasisElem::Leaf { copy } => *copy,
            _ => unreachable!(),
        };
        match row {
            crate::engine::BasisElem::Node { lch, rch, l, r } => {
                let (i, j) = match (&**l, &**r) {
                    (
                        crate::engine::BasisElem::Leaf { copy: i },
                        crate::engine::BasisElem::Leaf { copy: j },
                    ) => (*i, *j),
                    _ => unreachable!(),
                };
                coeffs.get(&((s, k), (*lch, i), (*rch, j))).copied().unwrap_or_else(|| c64(0.0, 0.0))
            }
            _ => unreachable!(),
        }
    })
}

/// Endomorphism of `A` from per-label copy matrices `(a, j) -> (a, i)`,
/// keyed `(label, i, j)`.
pub fn endo_morphism(
    skel: &SkeletalData,
    obj: &ObjectVector,
    entries: &HashMap<(Label, u32, u32), C64>,
) -> Morphism {
    let ctx = Ctx::new(skel);
    let a = Tree::leaf(obj.clone());
    ctx.from_fn(&a, &a, |s, row, col| {
        let (i, j) = match (row, col) {
            (
                crate::engine::BasisElem::Leaf { copy: i },
                crate::engine::BasisElem::Leaf { copy: j },
            ) => (*i, *j),
            _ => unreachable!(),
        };
        entries.get(&(s, i, j)).copied().unwrap_or_else(|| c64(0.0, 0.0))
    })
}

/// Label-preserving map between two objects from copy matrices, keyed
/// `(label, dst copy, src copy)`.
pub fn endo_like(
    skel: &SkeletalData,
    src_obj: &ObjectVector,
    dst_obj: &ObjectVector,
    entries: &HashMap<(Label, u32, u32), C64>,
) -> Morphism {
    let ctx = Ctx::new(skel);
    let src = Tree::leaf(src_obj.clone());
    let dst = Tree::leaf(dst_obj.clone());
    ctx.from_fn(&src, &dst, |s, row, col| {
        let (i, j) = match (row, col) {
            (
                crate::engine::BasisElem::Leaf { copy: i },
                crate::engine::BasisElem::Leaf { copy: j },
            ) => (*i, *j),
            _ => unreachable!(),
        };
        entries.get(&(s, i, j)).copied().unwrap_or_else(|| c64(0.0, 0.0))
    })
}

/// Vector `1 -> A` supported on the unit copies of `A`.
pub fn unit_vector(skel: &SkeletalData, obj: &ObjectVector, coeffs: &[C64]) -> Morphism {
    let ctx = Ctx::new(skel);
    let u = Tree::leaf(ObjectVector::simple(skel.rank(), skel.ring.unit));
    let a = Tree::leaf(obj.clone());
    ctx.from_fn(&u, &a, |s, row, _col| {
        if s != skel.ring.unit {
            return c64(0.0, 0.0);
        }
        match row {
            crate::engine::BasisElem::Leaf { copy } => coeffs[*copy as usize],
            _ => unreachable!(),
        }
    })
}

/// Covector `A -> 1` supported on the unit copies of `A`.
pub fn counit_vector(skel: &SkeletalData, obj: &ObjectVector, coeffs: &[C64]) -> Morphism {
    let ctx = Ctx::new(skel);
    let u = Tree::leaf(ObjectVector::simple(skel.rank(), skel.ring.unit));
    let a = Tree::leaf(obj.clone());
    ctx.from_fn(&a, &u, |s, _row, col| {
        if s != skel.ring.unit {
            return c64(0.0, 0.0);
        }
        match col {
            crate::engine::BasisElem::Leaf { copy } => coeffs[*copy as usize],
            _ => unreachable!(),
        }
    })
}

/// Associativity and unit laws of an algebra object, via the tree engine.
pub fn check_algebra(alg: &AlgebraData, tol: f64) -> Result<ValidationReport, HopfError> {
    let ctx = Ctx::new(&alg.ambient);
    let mut report = ValidationReport::new(tol);
    let a = alg.a_leaf();
    let left_tree = Tree::node(Tree::node(a.clone(), a.clone()), a.clone());
    let right_tree = Tree::node(a.clone(), Tree::node(a.clone(), a.clone()));

    let m_inner_l = ctx.apply_at(&left_tree, &[0], &alg.mul)?;
    let left = ctx.compose(&alg.mul, &m_inner_l);
    let m_inner_r = ctx.apply_at(&right_tree, &[1], &alg.mul)?;
    let right = ctx.compose(&alg.mul, &m_inner_r);
    let assoc_move = ctx.f_move(&left_tree, &right_tree)?;
    let right_moved = ctx.compose(&right, &assoc_move);
    report.record(|| "algebra associativity".into(), left.max_abs_diff(&right_moved));

    // unit laws against unit absorption
    let lu_tree = Tree::node(alg.unit_leaf(), a.clone());
    let lu = ctx.apply_at(&lu_tree, &[0], &alg.unit)?;
    let left_unit = ctx.compose(&alg.mul, &lu);
    let absorb_l = ctx.absorb_unit(&lu_tree, &[], 0)?;
    report.record(|| "algebra left unit".into(), left_unit.max_abs_diff(&absorb_l));

    let ru_tree = Tree::node(a.clone(), alg.unit_leaf());
    let ru = ctx.apply_at(&ru_tree, &[1], &alg.unit)?;
    let right_unit = ctx.compose(&alg.mul, &ru);
    let absorb_r = ctx.absorb_unit(&ru_tree, &[], 1)?;
    report.record(|| "algebra right unit".into(), right_unit.max_abs_diff(&absorb_r));
    Ok(report)
}

/// All Hopf-algebra axioms: (co)associativity, (co)units, the bialgebra
/// compatibility through the ambient braiding, and the antipode laws.
pub fn check_hopf_axioms(h: &HopfAlgebraData, tol: f64) -> Result<ValidationReport, HopfError> {
    let skel = h.ambient();
    if !skel.has_braiding() {
        return Err(HopfError::MissingBraiding);
    }
    let ctx = Ctx::new(skel);
    let mut report = check_algebra(&h.algebra, tol)?;
    let a = h.algebra.a_leaf();
    let pair = h.algebra.pair();
    let unit_leaf = h.algebra.unit_leaf();

    // coassociativity
    let left_tree = Tree::node(pair.clone(), a.clone());
    let right_tree = Tree::node(a.clone(), pair.clone());
    let dl = ctx.apply_at(&Tree::node(a.clone(), a.clone()), &[0], &h.delta)?;
    let co_left = ctx.compose(&dl, &h.delta);
    let dr = ctx.apply_at(&Tree::node(a.clone(), a.clone()), &[1], &h.delta)?;
    let co_right = ctx.compose(&dr, &h.delta);
    let assoc_move = ctx.f_move(&left_tree, &right_tree)?;
    report.record(
        || "coassociativity".into(),
        ctx.compose(&assoc_move, &co_left).max_abs_diff(&co_right),
    );

    // counit laws
    let eps_l = ctx.apply_at(&pair, &[0], &h.counit)?;
    let absorb_l = ctx.absorb_unit(&eps_l.dst, &[], 0)?;
    let counit_l = ctx.compose(&absorb_l, &ctx.compose(&eps_l, &h.delta));
    report.record(|| "left counit".into(), counit_l.max_abs_diff(&ctx.identity(&a)));
    let eps_r = ctx.apply_at(&pair, &[1], &h.counit)?;
    let absorb_r = ctx.absorb_unit(&eps_r.dst, &[], 1)?;
    let counit_r = ctx.compose(&absorb_r, &ctx.compose(&eps_r, &h.delta));
    report.record(|| "right counit".into(), counit_r.max_abs_diff(&ctx.identity(&a)));

    // bialgebra: Δ∘m = (m⊗m)(id⊗c⊗id)(Δ⊗Δ)
    let lhs = ctx.compose(&h.delta, &h.algebra.mul);
    let d0 = ctx.apply_at(&pair, &[0], &h.delta)?;
    let d1 = ctx.apply_at(&d0.dst, &[1], &h.delta)?;
    // ((A A)(A A)) -> ((A (A A)) A) to braid the middle pair
    let mid = Tree::node(Tree::node(a.clone(), pair.clone()), a.clone());
    let f1 = ctx.f_move(&d1.dst, &mid)?;
    let braid = ctx.r_move(&mid, &[0, 1], false)?;
    let back = ctx.f_move(&braid.dst, &Tree::node(pair.clone(), pair.clone()))?;
    let m0 = ctx.apply_at(&back.dst, &[0], &h.algebra.mul)?;
    let m1 = ctx.apply_at(&m0.dst, &[1], &h.algebra.mul)?;
    let rhs = ctx.compose_all(&[&d0, &d1, &f1, &braid, &back, &m0, &m1]);
    report.record(|| "bialgebra compatibility".into(), lhs.max_abs_diff(&rhs));

    // counit is an algebra map: ε∘m = (ε⊗ε)
    let lhs = ctx.compose(&h.counit, &h.algebra.mul);
    let e0 = ctx.apply_at(&pair, &[0], &h.counit)?;
    let e1 = ctx.apply_at(&e0.dst, &[1], &h.counit)?;
    let ab = ctx.absorb_unit(&e1.dst, &[], 0)?;
    let rhs = ctx.compose_all(&[&e0, &e1, &ab]);
    report.record(|| "counit multiplicative".into(), lhs.max_abs_diff(&rhs));

    // Δ is unital: Δ∘η = η⊗η
    let lhs = ctx.compose(&h.delta, &h.algebra.unit);
    let intro = ctx.introduce_unit(&unit_leaf, &[], 1)?;
    let u0 = ctx.apply_at(&intro.dst, &[0], &h.algebra.unit)?;
    let u1 = ctx.apply_at(&u0.dst, &[1], &h.algebra.unit)?;
    let rhs = ctx.compose_all(&[&intro, &u0, &u1]);
    report.record(|| "comultiplication unital".into(), lhs.max_abs_diff(&rhs));

    // ε∘η = id
    let lhs = ctx.compose(&h.counit, &h.algebra.unit);
    report.record(|| "counit of unit".into(), lhs.max_abs_diff(&ctx.identity(&unit_leaf)));

    // antipode laws: m(S⊗id)Δ = η∘ε = m(id⊗S)Δ
    let eta_eps = ctx.compose(&h.algebra.unit, &h.counit);
    let s0 = ctx.apply_at(&pair, &[0], &h.antipode)?;
    let lhs = ctx.compose_all(&[&h.delta, &s0, &h.algebra.mul]);
    report.record(|| "antipode left".into(), lhs.max_abs_diff(&eta_eps));
    let s1 = ctx.apply_at(&pair, &[1], &h.antipode)?;
    let rhs = ctx.compose_all(&[&h.delta, &s1, &h.algebra.mul]);
    report.record(|| "antipode right".into(), rhs.max_abs_diff(&eta_eps));

    Ok(report)
}

/// Least `n <= bound` with `S^n = id`, or `None` past the bound.
pub fn antipode_order(h: &HopfAlgebraData, bound: u32, tol: f64) -> Option<u32> {
    let ctx = Ctx::new(h.ambient());
    let id = ctx.identity(&h.algebra.a_leaf());
    let mut power = h.antipode.clone();
    for n in 1..=bound {
        if power.max_abs_diff(&id) < tol {
            return Some(n);
        }
        power = ctx.compose(&h.antipode, &power);
    }
    None
}

#[derive(Debug, Clone)]
pub struct Integral {
    /// Coefficients over the unit copies of `A`.
    pub vector: Vec<C64>,
    pub counit_value: C64,
    pub semisimple: bool,
}

/// Solve the two-sided integral equations `m(id⊗Λ) = Λ∘ε = m(Λ⊗id)`.
pub fn find_integral(h: &HopfAlgebraData, tol: f64) -> Result<Integral, HopfError> {
    let skel = h.ambient();
    let ctx = Ctx::new(skel);
    let a = h.algebra.a_leaf();
    let n_unit = h.algebra.object.0[skel.ring.unit] as usize;
    if n_unit == 0 {
        return Err(HopfError::NoIntegralFound);
    }
    let mut columns: Vec<Vec<C64>> = Vec::with_capacity(n_unit);
    for i in 0..n_unit {
        let mut coeffs = vec![c64(0.0, 0.0); n_unit];
        coeffs[i] = c64(1.0, 0.0);
        let lam = unit_vector(skel, &h.algebra.object, &coeffs);
        let intro_r = ctx.introduce_unit(&a, &[], 1)?;
        let ap_r = ctx.apply_at(&intro_r.dst, &[1], &lam)?;
        let right_mul = ctx.compose_all(&[&intro_r, &ap_r, &h.algebra.mul]);
        let intro_l = ctx.introduce_unit(&a, &[], 0)?;
        let ap_l = ctx.apply_at(&intro_l.dst, &[0], &lam)?;
        let left_mul = ctx.compose_all(&[&intro_l, &ap_l, &h.algebra.mul]);
        let proj = ctx.compose(&lam, &h.counit);
        let mut col = Vec::new();
        for m in [&right_mul, &left_mul] {
            for (s, b) in &m.blocks {
                let zero = CMat::zeros(b.rows, b.cols);
                let pb = proj.blocks.get(s).unwrap_or(&zero);
                col.extend(b.sub(pb).data.iter().copied());
            }
        }
        columns.push(col);
    }
    let rows = columns[0].len();
    let sys = CMat::from_fn(rows, n_unit, |i, j| columns[j][i]);
    let ns = sys.nullspace(1e-10);
    if ns.cols == 0 {
        return Err(HopfError::NoIntegralFound);
    }
    let mut vector: Vec<C64> = (0..n_unit).map(|i| ns[(i, 0)]).collect();
    let eps_on = |v: &[C64]| -> C64 {
        let lam = unit_vector(skel, &h.algebra.object, v);
        let m = ctx.compose(&h.counit, &lam);
        m.blocks
            .get(&skel.ring.unit)
            .map(|b| b[(0, 0)])
            .unwrap_or_else(|| c64(0.0, 0.0))
    };
    let mut value = eps_on(&vector);
    let semisimple = value.norm() > tol;
    if semisimple {
        let scale = c64(1.0, 0.0) / value;
        for x in vector.iter_mut() {
            *x *= scale;
        }
        value = c64(1.0, 0.0);
    } else {
        let norm = vector.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for x in vector.iter_mut() {
            *x /= norm;
        }
    }
    Ok(Integral { vector, counit_value: value, semisimple })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureFlags {
    pub commutative: bool,
    pub cocommutative: bool,
}

pub fn structure_flags(h: &HopfAlgebraData, tol: f64) -> Result<StructureFlags, HopfError> {
    let skel = h.ambient();
    if !skel.has_braiding() {
        return Err(HopfError::MissingBraiding);
    }
    let ctx = Ctx::new(skel);
    let pair = h.algebra.pair();
    let braid = ctx.r_move(&pair, &[], false)?;
    let commutative = ctx.compose(&h.algebra.mul, &braid).max_abs_diff(&h.algebra.mul) < tol;
    let cocommutative = ctx.compose(&braid, &h.delta).max_abs_diff(&h.delta) < tol;
    Ok(StructureFlags { commutative, cocommutative })
}

/// Left multiplication by a degree-zero vector, as an endomorphism of `A`.
pub fn left_mul_by(
    alg: &AlgebraData,
    coeffs: &[C64],
) -> Result<Morphism, HopfError> {
    let ctx = Ctx::new(&alg.ambient);
    let a = alg.a_leaf();
    let lam = unit_vector(&alg.ambient, &alg.object, coeffs);
    let intro = ctx.introduce_unit(&a, &[], 0)?;
    let ap = ctx.apply_at(&intro.dst, &[0], &lam)?;
    Ok(ctx.compose_all(&[&intro, &ap, &alg.mul]))
}

fn right_mul_by(alg: &AlgebraData, coeffs: &[C64]) -> Result<Morphism, HopfError> {
    let ctx = Ctx::new(&alg.ambient);
    let a = alg.a_leaf();
    let lam = unit_vector(&alg.ambient, &alg.object, coeffs);
    let intro = ctx.introduce_unit(&a, &[], 1)?;
    let ap = ctx.apply_at(&intro.dst, &[1], &lam)?;
    Ok(ctx.compose_all(&[&intro, &ap, &alg.mul]))
}

/// Decomposition of an algebra into indecomposable two-sided summands via
/// central idempotents; returns the supports (as object vectors) and the
/// idempotent coefficient vectors over the unit copies.
pub fn decompose_algebra(
    alg: &AlgebraData,
    seed: u64,
    tol: f64,
) -> Result<Vec<(ObjectVector, Vec<C64>)>, HopfError> {
    let skel = &alg.ambient;
    let n_unit = alg.object.0[skel.ring.unit] as usize;
    // center = { v in Hom(1, A) : L_v = R_v }
    let mut columns = Vec::new();
    for i in 0..n_unit {
        let mut v = vec![c64(0.0, 0.0); n_unit];
        v[i] = c64(1.0, 0.0);
        let l = left_mul_by(alg, &v)?;
        let r = right_mul_by(alg, &v)?;
        let mut col = Vec::new();
        for (s, b) in &l.blocks {
            let rb = &r.blocks[s];
            col.extend(b.sub(rb).data.iter().copied());
        }
        columns.push(col);
    }
    let sys = CMat::from_fn(columns[0].len(), n_unit, |i, j| columns[j][i]);
    let center = sys.nullspace(1e-10);
    let dim_z = center.cols;
    if dim_z == 0 {
        return Err(HopfError::ShapeMismatch("algebra has empty degree-zero center".into()));
    }
    let center_vec = |coeffs: &[C64]| -> Vec<C64> {
        (0..n_unit)
            .map(|i| (0..dim_z).map(|k| center[(i, k)] * coeffs[k]).sum())
            .collect()
    };
    // multiplication by a generic central element, restricted to the center
    let mut rng = SplitMix64::new(seed);
    let xi: Vec<C64> = (0..dim_z).map(|_| c64(0.5 + rng.next_f64(), 0.0)).collect();
    let lx = left_mul_by(alg, &center_vec(&xi))?;
    let unit_block = skel.ring.unit;
    let mut op = CMat::zeros(dim_z, dim_z);
    let cmat = CMat::from_fn(n_unit, dim_z, |i, k| center[(i, k)]);
    for k in 0..dim_z {
        let mut e = vec![c64(0.0, 0.0); dim_z];
        e[k] = c64(1.0, 0.0);
        let v = center_vec(&e);
        let lam = unit_vector(skel, &alg.object, &v);
        let prod = Ctx::new(skel).compose(&lx, &lam);
        let b = prod.blocks.get(&unit_block).expect("unit block");
        let out = CMat::from_fn(n_unit, 1, |i, _| b[(i, 0)]);
        let sol = cmat
            .lstsq_damped(&out, 1e-12)
            .ok_or_else(|| HopfError::ShapeMismatch("center projection failed".into()))?;
        for i in 0..dim_z {
            op[(i, k)] = sol[(i, 0)];
        }
    }
    // eigenvalues via the minimal polynomial of op
    let mut powers: Vec<CMat> = vec![CMat::identity(dim_z)];
    for _ in 0..dim_z {
        let last = powers.last().unwrap();
        powers.push(op.matmul(last));
    }
    let mut eigenvalues: Vec<C64> = Vec::new();
    for d in 1..=dim_z {
        let rows = dim_z * dim_z;
        let sys = CMat::from_fn(rows, d + 1, |i, j| powers[j].data[i]);
        let ns = sys.nullspace(1e-9);
        if ns.cols > 0 {
            let coeffs: Vec<C64> = (0..=d).map(|j| ns[(j, 0)]).collect();
            eigenvalues = poly_roots(&coeffs);
            break;
        }
    }
    // coordinates of the algebra unit in the center
    let unit_coeffs: Vec<C64> = {
        let b = alg.unit.blocks.get(&unit_block).expect("unit block").clone();
        let out = CMat::from_fn(n_unit, 1, |i, _| b[(i, 0)]);
        let sol = cmat.lstsq_damped(&out, 1e-12).expect("unit lies in the center");
        (0..dim_z).map(|k| sol[(k, 0)]).collect()
    };
    let mut out = Vec::new();
    for (i, &li) in eigenvalues.iter().enumerate() {
        let mut proj = CMat::identity(dim_z);
        for (j, &lj) in eigenvalues.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut shifted = op.clone();
            for k in 0..dim_z {
                shifted[(k, k)] -= lj;
            }
            proj = proj.matmul(&shifted.scale(c64(1.0, 0.0) / (li - lj)));
        }
        let e_center: Vec<C64> = (0..dim_z)
            .map(|r| (0..dim_z).map(|k| proj[(r, k)] * unit_coeffs[k]).sum())
            .collect();
        let e_vec = center_vec(&e_center);
        if e_vec.iter().map(|x| x.norm()).sum::<f64>() < tol {
            continue;
        }
        let le = left_mul_by(alg, &e_vec)?;
        let mut support = ObjectVector::zero(skel.rank());
        for (s, b) in &le.blocks {
            support.0[*s] = b.rank(1e-8) as u32;
        }
        out.push((support, e_vec));
    }
    out.sort_by_key(|(s, _)| s.0.clone());
    Ok(out)
}

/// Catalog of built-in Hopf structures.
pub fn builtin_hopf(name: &str) -> Result<HopfAlgebraData, HopfError> {
    match name {
        "2+e" => Ok(hopf_two_plus_e()),
        "1+VecZ3" | "1+vecz3" => Ok(hopf_one_plus_vec_z3()),
        "2+tau" | "2+t" => Ok(hopf_two_plus_tau()),
        _ => Err(HopfError::UnknownKey(name.to_string())),
    }
}

/// The algebra `1 ⊕ Vec_Zp` in `Vec_Zp`, identified with
/// `C[y]/(y^{p+1} − y)` graded by `deg y = 1`. Copy order on the unit
/// label: the algebra unit first, then `y^p`.
pub fn one_plus_vec_zp_algebra(p: u32) -> AlgebraData {
    let ambient = crate::skel::builtin_skeletal(&crate::skel::SkelKey::VecGTrivial(vec![p]))
        .expect("vec_zp skeletal");
    let rank = ambient.rank();
    let mut obj = ObjectVector::zero(rank);
    obj.0[0] = 2;
    for g in 1..rank {
        obj.0[g] = 1;
    }
    let exp_of = |label: Label, copy: u32| -> u32 {
        if label == 0 {
            if copy == 0 {
                0
            } else {
                p
            }
        } else {
            label as u32
        }
    };
    let of_exp = |e: u32| -> (Label, u32) {
        if e == 0 {
            return (0, 0);
        }
        let r = ((e - 1) % p) + 1;
        if r == p {
            (0, 1)
        } else {
            (r as usize, 0)
        }
    };
    let mut mul = MulCoeffs::new();
    for la in 0..rank {
        for ia in 0..obj.0[la] {
            for lb in 0..rank {
                for ib in 0..obj.0[lb] {
                    let e = exp_of(la, ia) + exp_of(lb, ib);
                    let (lc, ic) = of_exp(e);
                    mul.insert(((la, ia), (lb, ib), (lc, ic)), c64(1.0, 0.0));
                }
            }
        }
    }
    let mul = mul_morphism(&ambient, &obj, &mul);
    let unit = unit_vector(&ambient, &obj, &[c64(1.0, 0.0), c64(0.0, 0.0)]);
    AlgebraData { ambient, object: obj, mul, unit }
}

/// The unique Hopf structure on `2+e` in `Vec_Z2` (basis `1, x, y` with
/// `x = y^2`).
pub fn hopf_two_plus_e() -> HopfAlgebraData {
    let algebra = one_plus_vec_zp_algebra(2);
    let skel = algebra.ambient.clone();
    let obj = algebra.object.clone();
    let one = (0usize, 0u32);
    let x = (0usize, 1u32);
    let y = (1usize, 0u32);
    let mut delta = DeltaCoeffs::new();
    let mut ins = |c: (usize, u32), a: (usize, u32), b: (usize, u32), v: f64| {
        delta.insert((c, a, b), c64(v, 0.0));
    };
    ins(one, one, one, 1.0);
    ins(x, one, x, 1.0);
    ins(x, x, one, 1.0);
    ins(x, x, x, -1.5);
    ins(x, y, y, 0.5);
    ins(y, one, y, 1.0);
    ins(y, y, one, 1.0);
    ins(y, x, y, -1.5);
    ins(y, y, x, -1.5);
    let delta = delta_morphism(&skel, &obj, &delta);
    let counit = counit_vector(&skel, &obj, &[c64(1.0, 0.0), c64(0.0, 0.0)]);
    let mut s = HashMap::new();
    s.insert((0, 0, 0), c64(1.0, 0.0));
    s.insert((0, 1, 1), c64(1.0, 0.0));
    s.insert((1, 0, 0), c64(-1.0, 0.0));
    let antipode = endo_morphism(&skel, &obj, &s);
    HopfAlgebraData { algebra, delta, counit, antipode }
}

/// The unique Hopf structure on `1 ⊕ Vec_Z3` (basis `1, u = y^3, y, y^2`).
pub fn hopf_one_plus_vec_z3() -> HopfAlgebraData {
    let algebra = one_plus_vec_zp_algebra(3);
    let skel = algebra.ambient.clone();
    let obj = algebra.object.clone();
    let one = (0usize, 0u32);
    let u = (0usize, 1u32);
    let a = (1usize, 0u32);
    let b = (2usize, 0u32);
    let mut delta = DeltaCoeffs::new();
    let mut ins = |c: (usize, u32), l: (usize, u32), r: (usize, u32), v: f64| {
        delta.insert((c, l, r), c64(v, 0.0));
    };
    let third = 1.0 / 3.0;
    ins(one, one, one, 1.0);
    ins(u, one, u, 1.0);
    ins(u, u, one, 1.0);
    ins(u, u, u, -4.0 * third);
    ins(u, a, b, -third);
    ins(u, b, a, -third);
    ins(a, one, a, 1.0);
    ins(a, a, one, 1.0);
    ins(a, b, b, 2.0 * third);
    ins(a, a, u, -4.0 * third);
    ins(a, u, a, -4.0 * third);
    ins(b, one, b, 1.0);
    ins(b, b, one, 1.0);
    ins(b, a, a, 2.0 * third);
    ins(b, b, u, -4.0 * third);
    ins(b, u, b, -4.0 * third);
    let delta = delta_morphism(&skel, &obj, &delta);
    let counit = counit_vector(&skel, &obj, &[c64(1.0, 0.0), c64(0.0, 0.0)]);
    let mut s = HashMap::new();
    s.insert((0, 0, 0), c64(1.0, 0.0));
    s.insert((0, 1, 1), c64(1.0, 0.0));
    s.insert((1, 0, 0), c64(1.0, 0.0));
    s.insert((2, 0, 0), c64(1.0, 0.0));
    let antipode = endo_morphism(&skel, &obj, &s);
    HopfAlgebraData { algebra, delta, counit, antipode }
}

/// Closed-form constants of the `2+τ` structure: the `τ⊗τ` coefficient of
/// `Δ(1_2)`, the `τ⊗τ` coefficient of `Δ(τ)` (negated), and `S(τ)`.
pub fn two_plus_tau_constants() -> (C64, C64, C64) {
    let ph = phi();
    let v = c64(-1.0 / (2.0 * ph * ph), 5.0_f64.powf(0.25) / (2.0 * ph.sqrt()));
    let s5 = 5.0_f64.sqrt();
    let inner = c64(5.0 * (-9.0 + 4.0 * s5), -5.0 * (1525.0 - 682.0 * s5).sqrt());
    let root = C64::from_polar(inner.norm().powf(0.25), inner.arg() / 4.0);
    let u = c64(0.0, 1.0) * root / 2.0_f64.powf(0.75);
    let s_tau = -c64(1.0 / (2.0 * ph), 5.0_f64.powf(0.25) * ph.sqrt() / 2.0);
    (v, u, s_tau)
}

/// The unique Hopf structure on `2+τ` in Fib (basis `1_1, 1_2, τ`).
pub fn hopf_two_plus_tau() -> HopfAlgebraData {
    let ambient = fib_skeletal();
    let mut obj = ObjectVector::zero(2);
    obj.0[0] = 2;
    obj.0[1] = 1;
    let one1 = (0usize, 0u32);
    let one2 = (0usize, 1u32);
    let tau = (1usize, 0u32);
    let (v, u, s_tau) = two_plus_tau_constants();
    let ph = phi();
    let sqrt2_phi34 = 2.0_f64.sqrt() * ph.powf(-0.75);

    let mut mul = MulCoeffs::new();
    let mut mins = |a: (usize, u32), b: (usize, u32), c: (usize, u32), x: C64| {
        mul.insert((a, b, c), x);
    };
    mins(one1, one1, one1, c64(1.0, 0.0));
    mins(one1, one2, one2, c64(1.0, 0.0));
    mins(one2, one1, one2, c64(1.0, 0.0));
    mins(one2, one2, one1, c64(1.0, 0.0));
    mins(tau, tau, one1, c64(1.0, 0.0));
    mins(tau, tau, one2, c64(-1.0, 0.0));
    mins(one1, tau, tau, c64(1.0, 0.0));
    mins(one2, tau, tau, c64(-1.0, 0.0));
    mins(tau, one1, tau, c64(1.0, 0.0));
    mins(tau, one2, tau, c64(-1.0, 0.0));
    mins(tau, tau, tau, c64(-sqrt2_phi34, 0.0));
    let mul = mul_morphism(&ambient, &obj, &mul);
    let unit = unit_vector(&ambient, &obj, &[c64(1.0, 0.0), c64(0.0, 0.0)]);

    let mut delta = DeltaCoeffs::new();
    let mut dins = |c: (usize, u32), a: (usize, u32), b: (usize, u32), x: C64| {
        delta.insert((c, a, b), x);
    };
    let h = 1.0 / (2.0 * ph);
    let s5h = 5.0_f64.sqrt() / (2.0 * ph);
    dins(one1, one1, one1, c64(1.0, 0.0));
    dins(one2, one1, one1, c64(-h, 0.0));
    dins(one2, one1, one2, c64(h, 0.0));
    dins(one2, one2, one1, c64(h, 0.0));
    dins(one2, one2, one2, c64(s5h, 0.0));
    dins(one2, tau, tau, v);
    dins(tau, one1, tau, c64(h, 0.0));
    dins(tau, one2, tau, c64(s5h, 0.0));
    dins(tau, tau, one1, c64(h, 0.0));
    dins(tau, tau, one2, c64(s5h, 0.0));
    dins(tau, tau, tau, -u);
    let delta = delta_morphism(&ambient, &obj, &delta);
    let counit = counit_vector(&ambient, &obj, &[c64(1.0, 0.0), c64(1.0, 0.0)]);
    let mut s = HashMap::new();
    s.insert((0, 0, 0), c64(1.0, 0.0));
    s.insert((0, 1, 1), c64(1.0, 0.0));
    s.insert((1, 0, 0), s_tau);
    let antipode = endo_morphism(&ambient, &obj, &s);
    let algebra = AlgebraData { ambient, object: obj, mul, unit };
    HopfAlgebraData { algebra, delta, counit, antipode }
}

/// Group algebra `C[Z_n]` inside trivially-braided `Vec` (rank-1 ambient),
/// mostly for tests and solver baselines.
pub fn group_algebra_in_vec(n: u32) -> HopfAlgebraData {
    let ambient = crate::skel::builtin_skeletal(&crate::skel::SkelKey::VecGTrivial(vec![1]))
        .expect("vec skeletal");
    let obj = ObjectVector(vec![n]);
    let mut mul = MulCoeffs::new();
    for i in 0..n {
        for j in 0..n {
            mul.insert(((0, i), (0, j), (0, (i + j) % n)), c64(1.0, 0.0));
        }
    }
    let mul = mul_morphism(&ambient, &obj, &mul);
    let mut unit_coeffs = vec![c64(0.0, 0.0); n as usize];
    unit_coeffs[0] = c64(1.0, 0.0);
    let unit = unit_vector(&ambient, &obj, &unit_coeffs);
    let mut delta = DeltaCoeffs::new();
    for i in 0..n {
        delta.insert(((0, i), (0, i), (0, i)), c64(1.0, 0.0));
    }
    let delta = delta_morphism(&ambient, &obj, &delta);
    let counit = counit_vector(&ambient, &obj, &vec![c64(1.0, 0.0); n as usize]);
    let mut s = HashMap::new();
    for i in 0..n {
        s.insert((0usize, (n - i) % n, i), c64(1.0, 0.0));
    }
    let antipode = endo_morphism(&ambient, &obj, &s);
    HopfAlgebraData {
        algebra: AlgebraData { ambient, object: obj, mul, unit },
        delta,
        counit,
        antipode,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_algebras_pass() {
        for p in [2u32, 3, 5] {
            let alg = one_plus_vec_zp_algebra(p);
            let rep = check_algebra(&alg, 1e-9).unwrap();
            assert!(rep.pass(), "1+VecZ{p}:\n{rep}");
        }
        let tau = hopf_two_plus_tau();
        let rep = check_algebra(&tau.algebra, 1e-9).unwrap();
        assert!(rep.pass(), "2+tau algebra:\n{rep}");
    }

    #[test]
    fn two_plus_e_is_hopf() {
        let h = hopf_two_plus_e();
        let rep = check_hopf_axioms(&h, 1e-9).unwrap();
        assert!(rep.pass(), "{rep}");
        assert_eq!(antipode_order(&h, 64, 1e-9), Some(2));
        let flags = structure_flags(&h, 1e-9).unwrap();
        assert!(flags.commutative);
        // Δ(x) and Δ(y) are symmetric under the trivial braiding
        assert!(flags.cocommutative);
        let integral = find_integral(&h, 1e-9).unwrap();
        assert!(integral.semisimple);
        // Λ = 1 − x with ε(Λ) = 1
        assert!((integral.vector[0] - c64(1.0, 0.0)).norm() < 1e-8);
        assert!((integral.vector[1] - c64(-1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn one_plus_vec_z3_is_hopf() {
        let h = hopf_one_plus_vec_z3();
        let rep = check_hopf_axioms(&h, 1e-9).unwrap();
        assert!(rep.pass(), "{rep}");
        assert_eq!(antipode_order(&h, 64, 1e-9), Some(1));
        assert!(find_integral(&h, 1e-9).unwrap().semisimple);
    }

    #[test]
    fn two_plus_tau_is_hopf() {
        let h = hopf_two_plus_tau();
        let rep = check_hopf_axioms(&h, 1e-9).unwrap();
        assert!(rep.pass(), "{rep}");
        assert_eq!(antipode_order(&h, 64, 1e-9), Some(10));
        let flags = structure_flags(&h, 1e-9).unwrap();
        assert!(!flags.commutative);
        assert!(!flags.cocommutative);
        let integral = find_integral(&h, 1e-9).unwrap();
        assert!(integral.semisimple);
    }

    #[test]
    fn group_algebra_in_vec_is_hopf() {
        for n in [2u32, 3] {
            let h = group_algebra_in_vec(n);
            let rep = check_hopf_axioms(&h, 1e-9).unwrap();
            assert!(rep.pass(), "C[Z{n}]:\n{rep}");
            let flags = structure_flags(&h, 1e-9).unwrap();
            assert!(flags.commutative && flags.cocommutative);
            let integral = find_integral(&h, 1e-9).unwrap();
            assert!(integral.semisimple);
        }
    }

    #[test]
    fn decompose_two_plus_e() {
        let h = hopf_two_plus_e();
        let blocks = decompose_algebra(&h.algebra, 11, 1e-9).unwrap();
        assert_eq!(blocks.len(), 2);
        let mut supports: Vec<Vec<u32>> = blocks.iter().map(|(s, _)| s.0.clone()).collect();
        supports.sort();
        assert_eq!(supports, vec![vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn decompose_one_plus_vec_z3() {
        let h = hopf_one_plus_vec_z3();
        let blocks = decompose_algebra(&h.algebra, 11, 1e-9).unwrap();
        assert_eq!(blocks.len(), 2);
        let mut supports: Vec<Vec<u32>> = blocks.iter().map(|(s, _)| s.0.clone()).collect();
        supports.sort();
        assert_eq!(supports, vec![vec![1, 0, 0], vec![1, 1, 1]]);
    }

    #[test]
    fn antipode_order_gauge_invariant() {
        // transporting the antipode along a random copy-basis change leaves
        // its order fixed
        let h = hopf_two_plus_tau();
        let skel = h.ambient();
        let ctx = Ctx::new(skel);
        let mut rng = SplitMix64::new(5);
        let g = CMat::from_fn(2, 2, |_, _| rng.next_c64(1.0))
            .add(&CMat::identity(2).scale(c64(2.0, 0.0)));
        let ginv = g.inverse().unwrap();
        let mut ge = HashMap::new();
        let mut gi = HashMap::new();
        for i in 0..2u32 {
            for j in 0..2u32 {
                ge.insert((0usize, i, j), g[(i as usize, j as usize)]);
                gi.insert((0usize, i, j), ginv[(i as usize, j as usize)]);
            }
        }
        ge.insert((1, 0, 0), c64(1.0, 0.0));
        gi.insert((1, 0, 0), c64(1.0, 0.0));
        let gm = endo_morphism(skel, &h.algebra.object, &ge);
        let gmi = endo_morphism(skel, &h.algebra.object, &gi);
        let s2 = ctx.compose(&gm, &ctx.compose(&h.antipode, &gmi));
        let h2 = HopfAlgebraData { antipode: s2, ..h.clone() };
        assert_eq!(antipode_order(&h2, 64, 1e-8), Some(10));
    }
}
