//! Pointed modular categories presented as metric groups `(G, q)`:
//! the catalog of prime classes, condensable-subgroup search, primality and
//! simplicity scans, and the `SU(2)_k` normal-algebra analysis.
//!
//! A class is stored as the quadratic form `q : G → Q/Z` (twists are
//! `θ_a = e^{2πi q(a)}`) together with a braiding exponent `c` with
//! `c(a,a) = q(a)` and, for the even cyclic classes, the associator
//! 3-cocycle it requires. The derived bilinear form is the polarization
//! `b(x,y) = q(x+y) − q(x) − q(y)`, which is also what the catalog tables
//! display for the rank-2 classes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{Elem, FiniteAbelianGroup, Subgroup, QZ};
use crate::catalog;
use crate::num::{c64, unit_phase};
use crate::skel::SkeletalData;

#[derive(Debug, Error)]
pub enum PointedError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate form: {0}")]
    DegenerateForm(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointedClass {
    /// `Z_{p^k}` for odd prime `p`, polarization `u x y / p^k`, `(p,u) = 1`.
    OmegaPK { p: u32, k: u32, u: u32 },
    /// `Z_{2^k}` with `q(x) = u x^2 / 2^{k+1}` and the carry 3-cocycle.
    Omega2K { k: u32, u: u32 },
    /// `Z_{2^k}^2` with `q(x,y) = xy / 2^k`.
    EK(u32),
    /// `Z_{2^k}^2` with `q(x,y) = (x^2 + xy + y^2) / 2^k`.
    FK(u32),
}

impl PointedClass {
    pub fn parse(s: &str) -> Result<PointedClass, PointedError> {
        let s = s.trim();
        let (head, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], &s[i + 1..s.len() - 1]),
            _ => (s, ""),
        };
        let ints: Result<Vec<u32>, _> = args
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<u32>())
            .collect();
        let ints = ints.map_err(|_| PointedError::InvalidParameter(format!("bad integers in '{s}'")))?;
        match (head, ints.as_slice()) {
            ("omega_p_k", [p, k, u]) => Ok(PointedClass::OmegaPK { p: *p, k: *k, u: *u }),
            ("omega_2_k", [k, u]) => Ok(PointedClass::Omega2K { k: *k, u: *u }),
            ("e_k", [k]) => Ok(PointedClass::EK(*k)),
            ("f_k", [k]) => Ok(PointedClass::FK(*k)),
            _ => Err(PointedError::InvalidParameter(format!("unknown pointed class '{s}'"))),
        }
    }
}

/// A quadratic form on a finite abelian group, with the braiding exponent and
/// optional associator data needed to export skeletal data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadraticForm {
    pub group: FiniteAbelianGroup,
    /// `q` indexed like `group.elements()`.
    pub q: Vec<QZ>,
    /// Braiding exponent `c(x,y)` with `c(x,x) = q(x)`.
    pub braid: Vec<Vec<QZ>>,
    /// Nontrivial associator exponent, when the class requires one.
    pub omega: Option<OmegaCocycle>,
}

/// Carry 3-cocycle `ω(x,y,z) = u x̄ / 2` when `ȳ + z̄` wraps past `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaCocycle {
    pub n: u32,
    pub u: u32,
}

impl OmegaCocycle {
    pub fn eval(&self, x: u32, y: u32, z: u32) -> QZ {
        if y + z >= self.n {
            QZ::new((self.u as i64) * (x as i64), 2)
        } else {
            QZ::zero()
        }
    }
}

impl QuadraticForm {
    fn index_of(&self, e: &Elem) -> usize {
        let mut i = 0usize;
        for (k, &n) in self.group.factors.iter().enumerate() {
            i = i * n as usize + e[k] as usize;
        }
        i
    }

    pub fn q_at(&self, e: &Elem) -> QZ {
        self.q[self.index_of(e)]
    }

    pub fn braid_at(&self, x: &Elem, y: &Elem) -> QZ {
        self.braid[self.index_of(x)][self.index_of(y)]
    }

    /// Polarization `b(x,y) = q(x+y) − q(x) − q(y)`.
    pub fn bilinear(&self, x: &Elem, y: &Elem) -> QZ {
        self.q_at(&self.group.add(x, y)) - self.q_at(x) - self.q_at(y)
    }

    /// `q` is nondegenerate iff the polarization has trivial radical.
    pub fn is_nondegenerate(&self) -> bool {
        let els = self.group.elements();
        for x in &els {
            if x == &self.group.zero() {
                continue;
            }
            if els.iter().all(|y| self.bilinear(x, y).is_zero()) {
                return false;
            }
        }
        true
    }
}

fn is_odd_prime(p: u32) -> bool {
    p >= 3 && p % 2 == 1 && (3..p).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn legendre(a: i64, p: u32) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    // Euler's criterion by fast modular exponentiation
    let mut base = a % p as u64;
    let mut exp = (p as u64 - 1) / 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

pub fn build_pointed(class: &PointedClass) -> Result<QuadraticForm, PointedError> {
    match class {
        PointedClass::OmegaPK { p, k, u } => {
            if !is_odd_prime(*p) {
                return Err(PointedError::InvalidParameter(format!("p = {p} must be an odd prime")));
            }
            if *k == 0 || *u == 0 || u % p == 0 {
                return Err(PointedError::InvalidParameter("need k >= 1 and (p, u) = 1".into()));
            }
            let n = p.pow(*k) as i64;
            let inv2 = (n + 1) / 2; // 2^{-1} mod p^k for odd p
            let group = FiniteAbelianGroup::new(&[n as u32]);
            let els = group.elements();
            let q: Vec<QZ> = els
                .iter()
                .map(|e| QZ::new(inv2 * (*u as i64) * (e[0] as i64) * (e[0] as i64), n))
                .collect();
            let braid = els
                .iter()
                .map(|x| {
                    els.iter()
                        .map(|y| QZ::new(inv2 * (*u as i64) * (x[0] as i64) * (y[0] as i64), n))
                        .collect()
                })
                .collect();
            Ok(QuadraticForm { group, q, braid, omega: None })
        }
        PointedClass::Omega2K { k, u } => {
            if *k == 0 || u % 2 == 0 {
                return Err(PointedError::InvalidParameter("need k >= 1 and u odd".into()));
            }
            if (u % 8 == 3 || u % 8 == 5) && *k < 2 {
                return Err(PointedError::InvalidParameter(
                    "epsilon = ±5 classes need k >= 2".into(),
                ));
            }
            let n = 2u32.pow(*k);
            let group = FiniteAbelianGroup::new(&[n]);
            let els = group.elements();
            let q: Vec<QZ> = els
                .iter()
                .map(|e| QZ::new((*u as i64) * (e[0] as i64) * (e[0] as i64), 2 * n as i64))
                .collect();
            let braid = els
                .iter()
                .map(|x| {
                    els.iter()
                        .map(|y| QZ::new((*u as i64) * (x[0] as i64) * (y[0] as i64), 2 * n as i64))
                        .collect()
                })
                .collect();
            Ok(QuadraticForm { group, q, braid, omega: Some(OmegaCocycle { n, u: *u }) })
        }
        PointedClass::EK(k) => {
            if *k == 0 {
                return Err(PointedError::InvalidParameter("need k >= 1".into()));
            }
            let n = 2u32.pow(*k);
            let group = FiniteAbelianGroup::new(&[n, n]);
            let els = group.elements();
            let q: Vec<QZ> = els
                .iter()
                .map(|e| QZ::new((e[0] as i64) * (e[1] as i64), n as i64))
                .collect();
            let braid = els
                .iter()
                .map(|x| {
                    els.iter()
                        .map(|y| QZ::new((x[1] as i64) * (y[0] as i64), n as i64))
                        .collect()
                })
                .collect();
            Ok(QuadraticForm { group, q, braid, omega: None })
        }
        PointedClass::FK(k) => {
            if *k == 0 {
                return Err(PointedError::InvalidParameter("need k >= 1".into()));
            }
            let n = 2u32.pow(*k);
            let group = FiniteAbelianGroup::new(&[n, n]);
            let els = group.elements();
            let q: Vec<QZ> = els
                .iter()
                .map(|e| {
                    let (x, y) = (e[0] as i64, e[1] as i64);
                    QZ::new(x * x + x * y + y * y, n as i64)
                })
                .collect();
            let braid = els
                .iter()
                .map(|x| {
                    els.iter()
                        .map(|y| {
                            let (x1, x2) = (x[0] as i64, x[1] as i64);
                            let (y1, y2) = (y[0] as i64, y[1] as i64);
                            QZ::new(x1 * y1 + x1 * y2 + x2 * y2, n as i64)
                        })
                        .collect()
                })
                .collect();
            Ok(QuadraticForm { group, q, braid, omega: None })
        }
    }
}

/// The Legendre label ε of an odd cyclic class, from its q-coefficient.
pub fn omega_pk_epsilon(p: u32, u: u32) -> i32 {
    legendre(2 * u as i64, p)
}

/// All nontrivial subgroups on which both the twists and the mutual
/// monodromy vanish: `q|_H = 0` and `b|_{H×H} = 0`.
pub fn condensable_subgroups(form: &QuadraticForm) -> Vec<Subgroup> {
    let subs = form.group.subgroups_bounded(1024).expect("catalog groups are within bound");
    subs.into_iter()
        .filter(|h| h.order() > 1)
        .filter(|h| {
            h.elements.iter().all(|x| form.q_at(x).is_zero())
                && h.elements
                    .iter()
                    .all(|x| h.elements.iter().all(|y| form.bilinear(x, y).is_zero()))
        })
        .collect()
}

/// Exhaustive search for an orthogonal splitting `G = H1 ⊕ H2` with both
/// restrictions nondegenerate. Returns the factors when one exists.
pub fn is_prime_pointed(
    form: &QuadraticForm,
) -> Result<(bool, Option<(Subgroup, Subgroup)>), PointedError> {
    if !form.is_nondegenerate() {
        return Err(PointedError::DegenerateForm("polarization has a radical".into()));
    }
    let subs = form.group.subgroups_bounded(1024).expect("within bound");
    let total = form.group.order();
    let restricted_nondegenerate = |h: &Subgroup| -> bool {
        h.elements
            .iter()
            .filter(|x| **x != form.group.zero())
            .all(|x| h.elements.iter().any(|y| !form.bilinear(x, y).is_zero()))
    };
    for (i, h1) in subs.iter().enumerate() {
        if h1.order() == 1 || h1.order() == total {
            continue;
        }
        for h2 in subs.iter().skip(i) {
            if h1.order() * h2.order() != total {
                continue;
            }
            // trivial intersection
            let trivial_meet = h1
                .elements
                .iter()
                .filter(|e| h2.contains(e))
                .count()
                == 1;
            if !trivial_meet {
                continue;
            }
            let orthogonal = h1
                .elements
                .iter()
                .all(|x| h2.elements.iter().all(|y| form.bilinear(x, y).is_zero()));
            if !orthogonal {
                continue;
            }
            if restricted_nondegenerate(h1) && restricted_nondegenerate(h2) {
                return Ok((false, Some((h1.clone(), h2.clone()))));
            }
        }
    }
    Ok((true, None))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum SimplicityWitness {
    CondensableSubgroup(Subgroup),
    Splitting(Subgroup, Subgroup),
}

/// Simple = prime with no nontrivial condensable subgroup.
pub fn is_simple(form: &QuadraticForm) -> Result<(bool, Option<SimplicityWitness>), PointedError> {
    let (prime, factors) = is_prime_pointed(form)?;
    if !prime {
        let (h1, h2) = factors.unwrap();
        return Ok((false, Some(SimplicityWitness::Splitting(h1, h2))));
    }
    let cond = condensable_subgroups(form);
    if let Some(h) = cond.into_iter().next() {
        return Ok((false, Some(SimplicityWitness::CondensableSubgroup(h))));
    }
    Ok((true, None))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Su2kReport {
    pub k: u32,
    /// `0 + k` is a condensable algebra (the current is a boson).
    pub condensable_0k: bool,
    /// The category splits off the `{0, k}` semion sector.
    pub splits: bool,
    pub simple: bool,
}

/// Twists `θ_j = e^{2πi j(j+2)/(4(k+2))}`; `0+k` condensable iff the simple
/// current `k` is a boson, split iff the `{0,k}` sector is modular on its
/// own (θ_k = ±i), simple iff neither happens.
pub fn su2k_report(k: u32) -> Su2kReport {
    let ring = catalog::builtin_ring(&catalog::CatalogKey::SU2k(k)).expect("su2k builds");
    let theta: Vec<_> = (0..=k)
        .map(|j| unit_phase((j * (j + 2)) as f64 / (4 * (k + 2)) as f64))
        .collect();
    let top = k as usize;
    let invertible = ring.n[top][top].iter().enumerate().all(|(c, &m)| (c == 0) == (m == 1));
    let boson = (theta[top] - c64(1.0, 0.0)).norm() < 1e-9;
    let condensable_0k = invertible && boson && k > 0;
    let semionic = (theta[top] - c64(0.0, 1.0)).norm() < 1e-9
        || (theta[top] - c64(0.0, -1.0)).norm() < 1e-9;
    let splits = invertible && semionic;
    Su2kReport { k, condensable_0k, splits, simple: !condensable_0k && !splits }
}

/// Skeletal data of a pointed class: one-dimensional F/R matrices from the
/// associator and braiding exponents, twists from `q`.
pub fn pointed_skeletal(form: &QuadraticForm) -> SkeletalData {
    let ring = catalog::vec_g_ring(&crate::groups::FiniteGroup::abelian(&form.group.factors));
    let rnk = ring.rank();
    let mut data = SkeletalData::new(ring).unwrap();
    let els = form.group.elements();
    if let Some(om) = &form.omega {
        for (a, ea) in els.iter().enumerate() {
            for (b, eb) in els.iter().enumerate() {
                for (c, ec) in els.iter().enumerate() {
                    let w = om.eval(ea[0], eb[0], ec[0]);
                    if !w.is_zero() {
                        let d = {
                            let ab = form.group.add(ea, eb);
                            let abc = form.group.add(&ab, ec);
                            els.iter().position(|e| *e == abc).unwrap()
                        };
                        let m = crate::linalg::CMat::from_fn(1, 1, |_, _| unit_phase(w.as_f64()));
                        data.set_f(a, b, c, d, m);
                    }
                }
            }
        }
    }
    let mut r = vec![vec![vec![c64(0.0, 0.0); rnk]; rnk]; rnk];
    for (a, ea) in els.iter().enumerate() {
        for (b, eb) in els.iter().enumerate() {
            let ab = form.group.add(ea, eb);
            let c = els.iter().position(|e| *e == ab).unwrap();
            r[a][b][c] = unit_phase(form.braid_at(ea, eb).as_f64());
        }
    }
    data.r = Some(r);
    data.theta = Some(els.iter().map(|e| unit_phase(form.q_at(e).as_f64())).collect());
    data
}
