//! Numeric search for Hopf structures on a fixed algebra object: the
//! unknowns are the comultiplication, counit and antipode coefficients, the
//! equations are all Hopf-axiom residuals, and the method is multi-start
//! damped Gauss–Newton. Solutions are deduplicated into orbits by a
//! gauge-invariant fingerprint (antipode order, counit values on the central
//! idempotents, and the module fusion ring). A run that finds nothing is
//! reported as a search outcome, never as a non-existence proof.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{ApplyPlan, Ctx, Morphism, Tree};
use crate::fusion::Label;
use crate::hopf::{
    antipode_order, check_algebra, check_hopf_axioms, decompose_algebra, AlgebraData,
    HopfAlgebraData, HopfError,
};
use crate::linalg::CMat;
use crate::modules::{irreducible_modules, module_fusion_ring};
use crate::num::{c64, C64, SplitMix64};

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub restarts: u32,
    pub seed: u64,
    pub max_iterations: u32,
    /// Residual below which a start counts as converged.
    pub target_residual: f64,
    /// For a `1 ⊕ Vec_Zp` presentation, derive `Δ(y^k)` from `Δ(y)` and only
    /// keep the generator column as unknowns.
    pub generator_power: Option<u32>,
    pub antipode_bound: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            restarts: 100,
            seed: 1,
            max_iterations: 500,
            target_residual: 1e-10,
            generator_power: None,
            antipode_bound: 64,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StartLog {
    pub start: u32,
    pub converged: bool,
    pub final_residual: f64,
    pub iterations: u32,
    pub orbit: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub antipode_order: Option<u32>,
    /// Counit values on the central idempotents, rounded to micro-units.
    pub counit_on_idempotents: Vec<(i64, i64)>,
    /// Canonical flattened fusion tensor of the module category.
    pub module_ring: Vec<u32>,
}

pub struct HopfOrbit {
    pub representative: HopfAlgebraData,
    pub fingerprint: Fingerprint,
    pub hits: u32,
}

pub struct SolverOutcome {
    pub orbits: Vec<HopfOrbit>,
    pub log: Vec<StartLog>,
}

/// Shapes of the unknown blocks and the packing of the unknown vector.
struct Layout {
    delta_shapes: Vec<(Label, usize, usize)>,
    eps_len: usize,
    s_shapes: Vec<(Label, usize)>,
    /// Generator mode: `(p, channel of y, Δ-column height of that channel)`.
    generator: Option<(u32, Label, usize)>,
    total: usize,
}

impl Layout {
    fn unknown_count(&self) -> usize {
        self.total
    }
}

/// Precomputed machinery for fast residual evaluation: every structural move
/// is a fixed matrix and the Δ/ε/S-dependent maps are index scatters.
struct ResidualPlan<'a> {
    alg: &'a AlgebraData,
    layout: Layout,
    unit_label: Label,
    a: Tree,
    aa: Tree,
    assoc_a3: Morphism,
    absorb_l: Morphism,
    absorb_r: Morphism,
    absorb_uu: Morphism,
    mid_chain: Morphism,
    id_a: Morphism,
    id_unit: Morphism,
    delta_left: ApplyPlan,
    delta_right: ApplyPlan,
    delta_right2: ApplyPlan,
    eps_left: ApplyPlan,
    eps_right: ApplyPlan,
    s_left: ApplyPlan,
    s_right: ApplyPlan,
    eta_eta: Morphism,
    /// Sector offsets of `Hom(s, Node(AA, AA))` as `(s1, s2) -> offset`,
    /// used to multiply Δ-columns in generator mode.
    aa_dims: Vec<usize>,
    a4_offsets: BTreeMap<(Label, Label, Label), usize>,
    /// Generator mode: the label of `y^k` for `k = 1..=p` and the copy index
    /// of each power within its label.
    powers: Vec<(Label, u32)>,
}

impl<'a> ResidualPlan<'a> {
    fn new(alg: &'a AlgebraData, generator_power: Option<u32>) -> Result<Self, HopfError> {
        let skel = &alg.ambient;
        if !skel.has_braiding() {
            return Err(HopfError::MissingBraiding);
        }
        let ctx = Ctx::new(skel);
        let rank = skel.rank();
        let a = alg.a_leaf();
        let aa = alg.pair();
        let unit_leaf = alg.unit_leaf();
        let a3l = Tree::node(aa.clone(), a.clone());
        let a3r = Tree::node(a.clone(), aa.clone());
        let assoc_a3 = ctx.f_move(&a3l, &a3r)?;
        let absorb_l = ctx.absorb_unit(&Tree::node(unit_leaf.clone(), a.clone()), &[], 0)?;
        let absorb_r = ctx.absorb_unit(&Tree::node(a.clone(), unit_leaf.clone()), &[], 1)?;
        let absorb_uu =
            ctx.absorb_unit(&Tree::node(unit_leaf.clone(), unit_leaf.clone()), &[], 0)?;
        let a4 = Tree::node(aa.clone(), aa.clone());
        let mid = Tree::node(Tree::node(a.clone(), aa.clone()), a.clone());
        let f1 = ctx.f_move(&a4, &mid)?;
        let braid = ctx.r_move(&mid, &[0, 1], false)?;
        let back = ctx.f_move(&braid.dst, &a4)?;
        let m0 = ctx.apply_at(&a4, &[0], &alg.mul)?;
        let m1 = ctx.apply_at(&m0.dst, &[1], &alg.mul)?;
        let mid_chain = ctx.compose_all(&[&f1, &braid, &back, &m0, &m1]);
        let delta_left = ctx.apply_plan(&aa, &[0], &a, &aa)?;
        let delta_right = ctx.apply_plan(&aa, &[1], &a, &aa)?;
        // second Δ inside the bialgebra chain acts after the first one
        let delta_right2 = ctx.apply_plan(&Tree::node(aa.clone(), a.clone()), &[1], &a, &aa)?;
        let eps_left = ctx.apply_plan(&aa, &[0], &a, &unit_leaf)?;
        let eps_right = ctx.apply_plan(&aa, &[1], &a, &unit_leaf)?;
        let s_left = ctx.apply_plan(&aa, &[0], &a, &a)?;
        let s_right = ctx.apply_plan(&aa, &[1], &a, &a)?;
        // η ⊗ η : 1 -> AA
        let intro_uu = ctx.introduce_unit(&unit_leaf, &[], 1)?;
        let u0 = ctx.apply_at(&intro_uu.dst, &[0], &alg.unit)?;
        let u1 = ctx.apply_at(&u0.dst, &[1], &alg.unit)?;
        let eta_eta = ctx.compose_all(&[&intro_uu, &u0, &u1]);
        // Δ-block shapes and, in generator mode, the power copies
        let delta_shapes: Vec<(Label, usize, usize)> = (0..rank)
            .filter_map(|s| {
                let rows = ctx.dim(&aa, s);
                let cols = ctx.dim(&a, s);
                if rows > 0 && cols > 0 {
                    Some((s, rows, cols))
                } else {
                    None
                }
            })
            .collect();
        let eps_len = alg.object.0[skel.ring.unit] as usize;
        let s_shapes: Vec<(Label, usize)> = (0..rank)
            .filter_map(|s| {
                let n = alg.object.0[s] as usize;
                if n > 0 {
                    Some((s, n))
                } else {
                    None
                }
            })
            .collect();
        let mut powers = Vec::new();
        let generator = match generator_power {
            None => None,
            Some(p) => {
                // copies of 1 ⊕ Vec_Zp: (unit, 0) = algebra unit, (unit, 1) = y^p,
                // (g, 0) = y^g for 0 < g < p
                for k in 1..=p {
                    if k == p {
                        powers.push((skel.ring.unit, 1u32));
                    } else {
                        powers.push((k as usize, 0u32));
                    }
                }
                let gen_channel = 1usize;
                let height = ctx.dim(&aa, gen_channel);
                Some((p, gen_channel, height))
            }
        };
        // ε and S satisfy linear equations once Δ is fixed, so they are
        // projected out (solved exactly per evaluation) rather than searched
        let delta_total: usize = match &generator {
            None => delta_shapes.iter().map(|(_, r, c)| r * c).sum(),
            Some((_, _, h)) => *h,
        };
        let total = delta_total;
        let layout = Layout { delta_shapes, eps_len, s_shapes, generator, total };
        // sector offsets of Hom(s, Node(AA, AA)): enumeration order is
        // (s1 ascending, s2 ascending) with dim(AA,s1)*dim(AA,s2) elements
        let aa_dims: Vec<usize> = (0..rank).map(|s| ctx.dim(&aa, s)).collect();
        let mut a4_offsets = BTreeMap::new();
        for s in 0..rank {
            let mut offset = 0usize;
            for s1 in 0..rank {
                for s2 in 0..rank {
                    if !skel.ring.admissible(s1, s2, s) {
                        continue;
                    }
                    let block = aa_dims[s1] * aa_dims[s2];
                    if block == 0 {
                        continue;
                    }
                    a4_offsets.insert((s, s1, s2), offset);
                    offset += block;
                }
            }
        }
        let id_a = ctx.identity(&a);
        let id_unit = ctx.identity(&unit_leaf);
        Ok(ResidualPlan {
            alg,
            layout,
            unit_label: skel.ring.unit,
            a,
            aa,
            assoc_a3,
            absorb_l,
            absorb_r,
            absorb_uu,
            mid_chain,
            id_a,
            id_unit,
            delta_left,
            delta_right,
            delta_right2,
            eps_left,
            eps_right,
            s_left,
            s_right,
            eta_eta,
            aa_dims,
            a4_offsets,
            powers,
        })
    }

    /// Unpack the unknown vector into the comultiplication morphism.
    fn unpack_delta(&self, z: &[C64]) -> Morphism {
        let mut pos = 0usize;
        let mut delta_blocks: BTreeMap<Label, CMat> = BTreeMap::new();
        match &self.layout.generator {
            None => {
                for &(s, rows, cols) in &self.layout.delta_shapes {
                    let mut m = CMat::zeros(rows, cols);
                    for i in 0..rows {
                        for j in 0..cols {
                            m[(i, j)] = z[pos];
                            pos += 1;
                        }
                    }
                    delta_blocks.insert(s, m);
                }
            }
            Some((p, gen_channel, height)) => {
                // column of Δ(y)
                let gen_col: Vec<C64> = z[pos..pos + height].to_vec();
                pos += height;
                // derive Δ(y^k) by multiplying columns in A ⊗ A
                let mut columns: Vec<(Label, Vec<C64>)> = Vec::with_capacity(*p as usize);
                columns.push((*gen_channel, gen_col.clone()));
                for k in 2..=*p {
                    let (prev_s, prev) = columns.last().unwrap();
                    let next_s = self.powers[(k - 1) as usize].0;
                    let next = self.multiply_columns(*prev_s, prev, *gen_channel, &gen_col, next_s);
                    columns.push((next_s, next));
                }
                // assemble the Δ blocks: unit channel has two copies
                // (the algebra unit and y^p), other channels one copy each
                for &(s, rows, cols) in &self.layout.delta_shapes {
                    let mut m = CMat::zeros(rows, cols);
                    if s == self.unit_label {
                        // copy 0: Δ(1) = η ⊗ η
                        if let Some(b) = self.eta_eta.blocks.get(&self.unit_label) {
                            for i in 0..rows {
                                m[(i, 0)] = b[(i, 0)];
                            }
                        }
                        // copy 1: Δ(y^p)
                        let (_, col) = &columns[(*p - 1) as usize];
                        for i in 0..rows {
                            m[(i, 1)] = col[i];
                        }
                    } else {
                        let (_, col) = columns
                            .iter()
                            .find(|(ch, _)| *ch == s)
                            .expect("every nonunit channel is a power of y");
                        for i in 0..rows {
                            m[(i, 0)] = col[i];
                        }
                    }
                    delta_blocks.insert(s, m);
                }
            }
        }
        let _ = pos;
        Morphism { src: self.a.clone(), dst: self.aa.clone(), blocks: delta_blocks }
    }

    fn eps_basis_vector(&self, j: usize) -> Morphism {
        let mut block = CMat::zeros(1, self.layout.eps_len);
        block[(0, j)] = c64(1.0, 0.0);
        let mut blocks = BTreeMap::new();
        blocks.insert(self.unit_label, block);
        Morphism { src: self.a.clone(), dst: self.alg.unit_leaf(), blocks }
    }

    fn eps_from(&self, coeffs: &[C64]) -> Morphism {
        let mut block = CMat::zeros(1, self.layout.eps_len);
        for (j, &v) in coeffs.iter().enumerate() {
            block[(0, j)] = v;
        }
        let mut blocks = BTreeMap::new();
        blocks.insert(self.unit_label, block);
        Morphism { src: self.a.clone(), dst: self.alg.unit_leaf(), blocks }
    }

    fn s_basis_vector(&self, which: usize) -> Morphism {
        let mut blocks = BTreeMap::new();
        let mut seen = 0usize;
        for &(s, n) in &self.layout.s_shapes {
            let mut m = CMat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    if seen == which {
                        m[(i, j)] = c64(1.0, 0.0);
                    }
                    seen += 1;
                }
            }
            blocks.insert(s, m);
        }
        Morphism { src: self.a.clone(), dst: self.a.clone(), blocks }
    }

    fn s_from(&self, coeffs: &[C64]) -> Morphism {
        let mut blocks = BTreeMap::new();
        let mut pos = 0usize;
        for &(s, n) in &self.layout.s_shapes {
            let mut m = CMat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] = coeffs[pos];
                    pos += 1;
                }
            }
            blocks.insert(s, m);
        }
        Morphism { src: self.a.clone(), dst: self.a.clone(), blocks }
    }

    fn s_unknowns(&self) -> usize {
        self.layout.s_shapes.iter().map(|(_, n)| n * n).sum()
    }

    /// Solve the counit equations for ε given Δ (they are linear in ε) and
    /// return the solved counit.
    fn project_eps(&self, ctx: &Ctx, delta: &Morphism) -> Morphism {
        let ne = self.layout.eps_len;
        let mut columns: Vec<Vec<C64>> = Vec::with_capacity(ne);
        let mut rhs: Vec<C64> = Vec::new();
        let mut rhs_done = false;
        for j in 0..ne {
            let ej = self.eps_basis_vector(j);
            let el = self.eps_left.apply(&ej);
            let er = self.eps_right.apply(&ej);
            let cl = ctx.compose(&self.absorb_l, &ctx.compose(&el, delta));
            let cr = ctx.compose(&self.absorb_r, &ctx.compose(&er, delta));
            let un = ctx.compose(&ej, &self.alg.unit);
            let mut col = Vec::new();
            for m in [&cl, &cr] {
                for (s, b) in &m.blocks {
                    let _ = s;
                    col.extend(b.data.iter().copied());
                }
            }
            col.extend(un.blocks.get(&self.unit_label).map(|b| b.data.clone()).unwrap_or_default());
            if !rhs_done {
                for m in [&cl, &cr] {
                    for (s, b) in &m.blocks {
                        let id = self.id_a.blocks.get(s).expect("identity block");
                        let _ = b;
                        rhs.extend(id.data.iter().copied());
                    }
                }
                rhs.push(c64(1.0, 0.0));
                rhs_done = true;
            }
            columns.push(col);
        }
        let m = rhs.len();
        let sys = CMat::from_fn(m, ne, |i, j| columns[j][i]);
        let b = CMat::from_fn(m, 1, |i, _| rhs[i]);
        let sol = sys.lstsq_damped(&b, 1e-12).unwrap_or_else(|| CMat::zeros(ne, 1));
        self.eps_from(&(0..ne).map(|j| sol[(j, 0)]).collect::<Vec<_>>())
    }

    /// Solve the antipode equations for S given Δ and ε (linear in S).
    fn project_s(&self, ctx: &Ctx, delta: &Morphism, eps: &Morphism) -> Morphism {
        let ns = self.s_unknowns();
        let eta_eps = ctx.compose(&self.alg.unit, eps);
        let mut columns: Vec<Vec<C64>> = Vec::with_capacity(ns);
        let mut rhs: Vec<C64> = Vec::new();
        let mut rhs_done = false;
        for k in 0..ns {
            let sk = self.s_basis_vector(k);
            let sl = self.s_left.apply(&sk);
            let sr = self.s_right.apply(&sk);
            let left = ctx.compose(&self.alg.mul, &ctx.compose(&sl, delta));
            let right = ctx.compose(&self.alg.mul, &ctx.compose(&sr, delta));
            let mut col = Vec::new();
            for m in [&left, &right] {
                for (_, b) in &m.blocks {
                    col.extend(b.data.iter().copied());
                }
            }
            if !rhs_done {
                for m in [&left, &right] {
                    for (s, b) in &m.blocks {
                        let zero = CMat::zeros(b.rows, b.cols);
                        let t = eta_eps.blocks.get(s).unwrap_or(&zero);
                        rhs.extend(t.data.iter().copied());
                    }
                }
                rhs_done = true;
            }
            columns.push(col);
        }
        let m = rhs.len();
        let sys = CMat::from_fn(m, ns, |i, j| columns[j][i]);
        let b = CMat::from_fn(m, 1, |i, _| rhs[i]);
        let sol = sys.lstsq_damped(&b, 1e-12).unwrap_or_else(|| CMat::zeros(ns, 1));
        self.s_from(&(0..ns).map(|k| sol[(k, 0)]).collect::<Vec<_>>())
    }

    /// Product of two `Hom(s_i, A⊗A)` columns inside the algebra `A ⊗ A`:
    /// embed into the `(s1, s2)` sector of `Hom(s1 s2, (A⊗A)⊗(A⊗A))` and push
    /// through the fixed multiplication chain.
    fn multiply_columns(
        &self,
        s1: Label,
        col1: &[C64],
        s2: Label,
        col2: &[C64],
        s_out: Label,
    ) -> Vec<C64> {
        let chain = self
            .mid_chain
            .blocks
            .get(&s_out)
            .expect("product channel present");
        let offset = self.a4_offsets[&(s_out, s1, s2)];
        let d2 = self.aa_dims[s2];
        let out_rows = chain.rows;
        let mut out = vec![c64(0.0, 0.0); out_rows];
        for (i1, &v1) in col1.iter().enumerate() {
            if v1.norm_sqr() == 0.0 {
                continue;
            }
            for (i2, &v2) in col2.iter().enumerate() {
                let v = v1 * v2;
                if v.norm_sqr() == 0.0 {
                    continue;
                }
                let j = offset + i1 * d2 + i2;
                for (r, o) in out.iter_mut().enumerate() {
                    *o += chain[(r, j)] * v;
                }
            }
        }
        out
    }

    /// All Hopf-axiom residual entries for the unknown vector, with ε and S
    /// projected out by exact linear solves.
    fn residual(&self, z: &[C64]) -> Vec<C64> {
        let ctx = Ctx::new(&self.alg.ambient);
        let delta = self.unpack_delta(z);
        let eps = self.project_eps(&ctx, &delta);
        let s = self.project_s(&ctx, &delta, &eps);
        let mut out: Vec<C64> = Vec::new();
        let push_diff = |a: &Morphism, b: &Morphism, out: &mut Vec<C64>| {
            for (ch, m) in &a.blocks {
                match b.blocks.get(ch) {
                    Some(o) => out.extend(m.sub(o).data.iter().copied()),
                    None => out.extend(m.data.iter().copied()),
                }
            }
            for (ch, o) in &b.blocks {
                if !a.blocks.contains_key(ch) {
                    out.extend(o.data.iter().map(|x| -x));
                }
            }
        };
        // coassociativity
        let dl = self.delta_left.apply(&delta);
        let dr = self.delta_right.apply(&delta);
        let co_left = ctx.compose(&dl, &delta);
        let co_right = ctx.compose(&dr, &delta);
        push_diff(&ctx.compose(&self.assoc_a3, &co_left), &co_right, &mut out);
        // counit laws
        let el = self.eps_left.apply(&eps);
        let er = self.eps_right.apply(&eps);
        let cl = ctx.compose(&self.absorb_l, &ctx.compose(&el, &delta));
        let cr = ctx.compose(&self.absorb_r, &ctx.compose(&er, &delta));
        push_diff(&cl, &self.id_a, &mut out);
        push_diff(&cr, &self.id_a, &mut out);
        // bialgebra compatibility: Δ∘m = chain ∘ (Δ⊗Δ)
        let lhs = ctx.compose(&delta, &self.alg.mul);
        let dr2 = self.delta_right2.apply(&delta);
        let dd = ctx.compose(&dr2, &dl);
        let rhs = ctx.compose(&self.mid_chain, &dd);
        push_diff(&lhs, &rhs, &mut out);
        // ε multiplicative
        let lhs = ctx.compose(&eps, &self.alg.mul);
        let rhs = ctx.compose(&self.absorb_uu, &ctx.compose(&self.eps_right_after_left(&eps), &el));
        push_diff(&lhs, &rhs, &mut out);
        // Δ unital
        let lhs = ctx.compose(&delta, &self.alg.unit);
        push_diff(&lhs, &self.eta_eta, &mut out);
        // ε ∘ η = id
        let lhs = ctx.compose(&eps, &self.alg.unit);
        push_diff(&lhs, &self.id_unit, &mut out);
        // antipode laws
        let eta_eps = ctx.compose(&self.alg.unit, &eps);
        let sl = self.s_left.apply(&s);
        let lhs = ctx.compose(&self.alg.mul, &ctx.compose(&sl, &delta));
        push_diff(&lhs, &eta_eps, &mut out);
        let sr = self.s_right.apply(&s);
        let rhs = ctx.compose(&self.alg.mul, &ctx.compose(&sr, &delta));
        push_diff(&rhs, &eta_eps, &mut out);
        out
    }

    /// ε applied on the remaining factor after the left ε: a plan on the
    /// `Node(1, A)` tree.
    fn eps_right_after_left(&self, eps: &Morphism) -> Morphism {
        let ctx = Ctx::new(&self.alg.ambient);
        let tree = Tree::node(self.alg.unit_leaf(), self.a.clone());
        ctx.apply_at(&tree, &[1], eps).expect("shape matches")
    }

    /// Assemble a full Hopf structure from a solution vector.
    fn build(&self, z: &[C64]) -> HopfAlgebraData {
        let ctx = Ctx::new(&self.alg.ambient);
        let delta = self.unpack_delta(z);
        let counit = self.project_eps(&ctx, &delta);
        let antipode = self.project_s(&ctx, &delta, &counit);
        HopfAlgebraData { algebra: self.alg.clone(), delta, counit, antipode }
    }
}

fn residual_norm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// One damped Gauss–Newton run with basin-hopping kicks out of shallow
/// local minima.
fn newton_run(
    plan: &ResidualPlan,
    z0: Vec<C64>,
    config: &SolverConfig,
    rng: &mut SplitMix64,
) -> (Vec<C64>, f64, u32) {
    let n = z0.len();
    let mut z = z0;
    let mut f = plan.residual(&z);
    let mut norm = residual_norm(&f);
    let mut lambda: f64 = 1e-3;
    let mut iters = 0u32;
    let mut kicks = 0u32;
    let mut best = (z.clone(), norm);
    let mut history: Vec<f64> = vec![norm];
    let h = 1e-6;
    for it in 0..config.max_iterations {
        iters = it + 1;
        if norm < config.target_residual {
            break;
        }
        // solutions form gauge orbits, so the Jacobian is rank-deficient at
        // the zero set; residual-proportional damping keeps the rate healthy
        lambda = lambda.min(norm).max(1e-14);
        let m = f.len();
        let mut jac = CMat::zeros(m, n);
        for k in 0..n {
            let mut zp = z.clone();
            zp[k] += c64(h, 0.0);
            let fp = plan.residual(&zp);
            for (i, (a, b)) in fp.iter().zip(f.iter()).enumerate() {
                jac[(i, k)] = (a - b) / h;
            }
        }
        let rhs_vec = CMat::from_fn(m, 1, |i, _| -f[i]);
        let mut improved = false;
        for _ in 0..8 {
            match jac.lstsq_damped(&rhs_vec, lambda) {
                Some(step) => {
                    let z_new: Vec<C64> = (0..n).map(|k| z[k] + step[(k, 0)]).collect();
                    let f_new = plan.residual(&z_new);
                    let norm_new = residual_norm(&f_new);
                    if norm_new < norm {
                        z = z_new;
                        f = f_new;
                        norm = norm_new;
                        lambda = (lambda / 10.0).max(1e-14);
                        improved = true;
                        break;
                    } else {
                        lambda *= 10.0;
                    }
                }
                None => lambda *= 10.0,
            }
        }
        if norm < best.1 {
            best = (z.clone(), norm);
        }
        history.push(norm);
        // stall detection over a window: healthy Newton keeps shrinking the
        // residual by large factors, a trapped run barely moves
        let window = 12;
        let stalled = !improved
            || (history.len() > window
                && norm > history[history.len() - 1 - window] * 0.5);
        if stalled && norm > config.target_residual {
            kicks += 1;
            if kicks > 6 {
                break;
            }
            let radius = 0.4 + 0.6 * (kicks as f64);
            z = best.0.clone();
            for x in z.iter_mut() {
                *x += rng.next_c64(radius);
            }
            f = plan.residual(&z);
            norm = residual_norm(&f);
            lambda = 1e-3;
            history.clear();
            history.push(norm);
        }
    }
    if best.1 < norm {
        let f_best = plan.residual(&best.0);
        return (best.0, residual_norm(&f_best), iters);
    }
    (z, norm, iters)
}

/// Start near the primitive ansatz `Δ(x) ≈ 1⊗x + x⊗1`, `ε ≈ (1, 0, ...)`,
/// `S ≈ id`, with noise whose radius cycles across restarts.
fn random_start(plan: &ResidualPlan, rng: &mut SplitMix64, start_index: u32) -> Vec<C64> {
    let layout = &plan.layout;
    let radius = 0.35 + 0.3 * (start_index % 6) as f64;
    let ctx = Ctx::new(&plan.alg.ambient);
    let mut z = vec![c64(0.0, 0.0); layout.unknown_count()];
    let mut pos = 0usize;
    // Δ blocks (or the generator column): primitive ansatz plus noise
    let unit_label = plan.unit_label;
    let primitive = |s: Label, k: usize| -> CMat {
        // column of 1⊗x_k + x_k⊗1 in the basis of Hom(s, A⊗A)
        let basis = ctx.basis(&plan.aa, s);
        let mut col = CMat::zeros(basis.len(), 1);
        for (i, elem) in basis.iter().enumerate() {
            if let crate::engine::BasisElem::Node { lch, rch, l, r } = elem {
                let (li, ri) = match (&**l, &**r) {
                    (
                        crate::engine::BasisElem::Leaf { copy: li },
                        crate::engine::BasisElem::Leaf { copy: ri },
                    ) => (*li, *ri),
                    _ => unreachable!(),
                };
                if *lch == unit_label && li == 0 && *rch == s && ri as usize == k {
                    col[(i, 0)] += c64(1.0, 0.0);
                }
                if *rch == unit_label && ri == 0 && *lch == s && li as usize == k {
                    col[(i, 0)] += c64(1.0, 0.0);
                }
            }
        }
        col
    };
    match &layout.generator {
        None => {
            for &(s, rows, cols) in &layout.delta_shapes {
                for k in 0..cols {
                    let anchor = primitive(s, k);
                    for i in 0..rows {
                        let base = if s == unit_label && k == 0 {
                            // the algebra unit is grouplike
                            if anchor[(i, 0)].norm() > 0.0 { c64(0.5, 0.0) } else { c64(0.0, 0.0) }
                        } else {
                            anchor[(i, 0)]
                        };
                        z[pos + i * cols + k] = base + rng.next_c64(radius);
                    }
                }
                pos += rows * cols;
            }
        }
        Some((_, gen_channel, height)) => {
            let anchor = primitive(*gen_channel, 0);
            for i in 0..*height {
                z[pos + i] = anchor[(i, 0)] + rng.next_c64(radius);
            }
            pos += height;
        }
    }
    let _ = pos;
    z
}

/// Gauge-invariant fingerprint of a verified Hopf structure.
pub fn fingerprint(h: &HopfAlgebraData, antipode_bound: u32) -> Result<Fingerprint, HopfError> {
    let order = antipode_order(h, antipode_bound, 1e-7);
    // counit values on the central idempotents of the (fixed) algebra
    let blocks = decompose_algebra(&h.algebra, 17, 1e-9)?;
    let ctx = Ctx::new(h.ambient());
    let mut eps_vals: Vec<(i64, i64)> = blocks
        .iter()
        .map(|(_, e_vec)| {
            let lam = crate::hopf::unit_vector(h.ambient(), &h.algebra.object, e_vec);
            let v = ctx.compose(&h.counit, &lam);
            let x = v
                .blocks
                .get(&h.ambient().ring.unit)
                .map(|b| b[(0, 0)])
                .unwrap_or_else(|| c64(0.0, 0.0));
            ((x.re * 1e6).round() as i64, (x.im * 1e6).round() as i64)
        })
        .collect();
    eps_vals.sort_unstable();
    // module fusion ring, canonicalized over unit-fixing label permutations
    let module_ring = match irreducible_modules(h, 23) {
        Ok(irr) => match module_fusion_ring(h, &irr) {
            Ok(ring) => canonical_ring_form(&ring),
            Err(_) => Vec::new(),
        },
        Err(_) => Vec::new(),
    };
    Ok(Fingerprint { antipode_order: order, counit_on_idempotents: eps_vals, module_ring })
}

fn canonical_ring_form(ring: &crate::fusion::FusionRing) -> Vec<u32> {
    let r = ring.rank();
    if r > 7 {
        // fall back to a sorted invariant for large rings
        let mut rows: Vec<Vec<u32>> = ring
            .n
            .iter()
            .flat_map(|m| m.iter().cloned())
            .collect();
        rows.sort();
        return rows.into_iter().flatten().collect();
    }
    let others: Vec<usize> = (0..r).filter(|&x| x != ring.unit).collect();
    let mut best: Option<Vec<u32>> = None;
    permute(&others, &mut Vec::new(), &mut vec![false; others.len()], &mut |perm| {
        let mut map = vec![0usize; r];
        map[ring.unit] = 0;
        for (i, &p) in perm.iter().enumerate() {
            map[others[p]] = i + 1;
        }
        let mut flat = vec![0u32; r * r * r];
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    flat[(map[a] * r + map[b]) * r + map[c]] = ring.n[a][b][c];
                }
            }
        }
        if best.as_ref().map(|b| flat < *b).unwrap_or(true) {
            best = Some(flat);
        }
    });
    best.unwrap_or_default()
}

fn permute(
    items: &[usize],
    current: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut impl FnMut(&[usize]),
) {
    if current.len() == items.len() {
        visit(current);
        return;
    }
    for i in 0..items.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        current.push(i);
        permute(items, current, used, visit);
        current.pop();
        used[i] = false;
    }
}

/// Multi-start search for Hopf structures on a fixed algebra.
pub fn solve_hopf_structures(
    alg: &AlgebraData,
    config: &SolverConfig,
) -> Result<SolverOutcome, HopfError> {
    let algebra_check = check_algebra(alg, 1e-8)?;
    if !algebra_check.pass() {
        return Err(HopfError::ShapeMismatch(format!(
            "algebra fails its own axioms (max residual {:.2e})",
            algebra_check.max_residual
        )));
    }
    let plan = ResidualPlan::new(alg, config.generator_power)?;
    let starts: Vec<(u32, Vec<C64>)> = (0..config.restarts)
        .map(|i| {
            let mut rng = SplitMix64::new(config.seed.wrapping_add(i as u64).wrapping_mul(0x9e37));
            (i, random_start(&plan, &mut rng, i))
        })
        .collect();
    let runs: Vec<(u32, Vec<C64>, f64, u32)> = starts
        .into_par_iter()
        .map(|(i, z0)| {
            let mut rng =
                SplitMix64::new(config.seed.wrapping_mul(31).wrapping_add(i as u64 ^ 0xabcd));
            let (z, norm, iters) = newton_run(&plan, z0, config, &mut rng);
            (i, z, norm, iters)
        })
        .collect();
    let mut orbits: Vec<HopfOrbit> = Vec::new();
    let mut log = Vec::new();
    for (i, z, norm, iters) in runs {
        let mut entry = StartLog {
            start: i,
            converged: norm < config.target_residual,
            final_residual: norm,
            iterations: iters,
            orbit: None,
        };
        if entry.converged {
            let candidate = plan.build(&z);
            // round-trip verification against the full checker
            let verified = check_hopf_axioms(&candidate, 1e-8)
                .map(|r| r.pass())
                .unwrap_or(false);
            if verified {
                let fp = fingerprint(&candidate, config.antipode_bound)?;
                match orbits.iter_mut().enumerate().find(|(_, o)| o.fingerprint == fp) {
                    Some((k, orbit)) => {
                        orbit.hits += 1;
                        entry.orbit = Some(k);
                    }
                    None => {
                        entry.orbit = Some(orbits.len());
                        orbits.push(HopfOrbit { representative: candidate, fingerprint: fp, hits: 1 });
                    }
                }
            } else {
                entry.converged = false;
            }
        }
        log.push(entry);
    }
    Ok(SolverOutcome { orbits, log })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{hopf_two_plus_e, one_plus_vec_zp_algebra};

    fn pack_delta(plan: &ResidualPlan, h: &crate::hopf::HopfAlgebraData) -> Vec<C64> {
        let mut z = Vec::new();
        for &(s, rows, cols) in &plan.layout.delta_shapes {
            let b = h.delta.blocks.get(&s).cloned().unwrap_or(CMat::zeros(rows, cols));
            for i in 0..rows {
                for j in 0..cols {
                    z.push(b[(i, j)]);
                }
            }
        }
        z
    }

    #[test]
    fn residual_vanishes_on_builtin() {
        let h = hopf_two_plus_e();
        let plan = ResidualPlan::new(&h.algebra, None).unwrap();
        let z = pack_delta(&plan, &h);
        assert_eq!(z.len(), plan.layout.unknown_count());
        let f = plan.residual(&z);
        assert!(residual_norm(&f) < 1e-10);
        // the projected counit and antipode reproduce the builtin structure
        let built = plan.build(&z);
        assert!(built.counit.max_abs_diff(&h.counit) < 1e-8);
        assert!(built.antipode.max_abs_diff(&h.antipode) < 1e-8);
    }

    #[test]
    fn generator_mode_reproduces_builtin_delta() {
        let h = crate::hopf::hopf_one_plus_vec_z3();
        let plan = ResidualPlan::new(&h.algebra, Some(3)).unwrap();
        let gen_block = h.delta.blocks.get(&1).unwrap();
        let z: Vec<C64> = (0..gen_block.rows).map(|i| gen_block[(i, 0)]).collect();
        assert_eq!(z.len(), plan.layout.unknown_count());
        let delta = plan.unpack_delta(&z);
        for (s, b) in &h.delta.blocks {
            let d = delta.blocks.get(s).expect("block present");
            assert!(d.max_abs_diff(b) < 1e-9, "channel {s} mismatch");
        }
        let f = plan.residual(&z);
        assert!(residual_norm(&f) < 1e-9);
    }

    #[test]
    fn solver_finds_two_plus_e() {
        let alg = one_plus_vec_zp_algebra(2);
        let config = SolverConfig { restarts: 24, seed: 7, ..Default::default() };
        let out = solve_hopf_structures(&alg, &config).unwrap();
        assert_eq!(out.orbits.len(), 1, "expected a unique orbit");
        assert!(out.orbits[0].hits >= 1);
        assert_eq!(out.orbits[0].fingerprint.antipode_order, Some(2));
        // matches the builtin fingerprint
        let builtin_fp = fingerprint(&hopf_two_plus_e(), 64).unwrap();
        assert_eq!(out.orbits[0].fingerprint, builtin_fp);
    }
}
