//! Built-in fusion rings: group rings, Fib and its near-group relatives,
//! Rep(S3), quantum doubles of finite groups, SU(2)_k, the condensed doubled
//! Haagerup rings, and the gauged SO(8)_1 theory.

use crate::fusion::{FusionRing, ObjectVector, RingError};
use crate::groups::{FiniteGroup, GROUP_ORDER_BOUND};
use crate::linalg::CMat;
use crate::num::C64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogKey {
    /// Group ring of a finite abelian group given by cyclic factor orders.
    VecG(Vec<u32>),
    Fib,
    /// Near-group ring `Z_p + X`, `X^2 = sum(g) + pX`; `p = 1` is Fib.
    FibP(u32),
    /// `2p` simples `a^i, r_i` with `r^2 = 1 + sum_i r_i`.
    HaagP(u32),
    RepS3,
    DoubleOfGroup(FiniteGroup),
    SU2k(u32),
    /// `D(Z_p)` plus one extra simple `X` with `X^2 = D(Z_p) + p^2 X`.
    DHaagCondensed(u32),
    /// The rank-12 gauged `SO(8)_1` theory.
    SO8GaugedS3,
}

impl CatalogKey {
    /// Stable textual names used by the CLI; see the README catalog table.
    pub fn parse(s: &str) -> Result<CatalogKey, RingError> {
        let s = s.trim();
        let (head, arg) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            _ => (s, None),
        };
        let ints = |arg: Option<&str>| -> Result<Vec<u32>, RingError> {
            arg.unwrap_or("")
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| RingError::InvalidParameter(format!("bad integer in '{s}'")))
                })
                .collect()
        };
        match head {
            "VecZ" | "vec_z" => {
                let v = ints(arg)?;
                if v.len() != 1 {
                    return Err(RingError::InvalidParameter("VecZ takes one order".into()));
                }
                Ok(CatalogKey::VecG(v))
            }
            "VecG" | "vec_g" => Ok(CatalogKey::VecG(ints(arg)?)),
            "Fib" | "fib" => Ok(CatalogKey::Fib),
            "FibP" | "fib_p" => Ok(CatalogKey::FibP(one(ints(arg)?, s)?)),
            "HaagP" | "haag_p" => Ok(CatalogKey::HaagP(one(ints(arg)?, s)?)),
            "RepS3" | "rep_s3" => Ok(CatalogKey::RepS3),
            "DoubleZ" | "double_z" => {
                Ok(CatalogKey::DoubleOfGroup(FiniteGroup::cyclic(one(ints(arg)?, s)?)))
            }
            "DoubleG" | "double_g" => Ok(CatalogKey::DoubleOfGroup(FiniteGroup::abelian(&ints(arg)?))),
            "DoubleS3" | "double_s3" => Ok(CatalogKey::DoubleOfGroup(FiniteGroup::s3())),
            "SU2k" | "su2_k" => Ok(CatalogKey::SU2k(one(ints(arg)?, s)?)),
            "DHaagCondensed" | "dhaag_condensed" => {
                Ok(CatalogKey::DHaagCondensed(one(ints(arg)?, s)?))
            }
            "SO8GaugedS3" | "so8_gauged_s3" => Ok(CatalogKey::SO8GaugedS3),
            _ => Err(RingError::UnknownKey(s.to_string())),
        }
    }

    pub fn all_names() -> Vec<&'static str> {
        vec![
            "VecZ(n)",
            "VecG(n1,n2,...)",
            "Fib",
            "FibP(p)",
            "HaagP(p)",
            "RepS3",
            "DoubleZ(n)",
            "DoubleG(n1,...)",
            "DoubleS3",
            "SU2k(k)",
            "DHaagCondensed(p)",
            "SO8GaugedS3",
        ]
    }
}

fn one(v: Vec<u32>, ctx: &str) -> Result<u32, RingError> {
    if v.len() == 1 {
        Ok(v[0])
    } else {
        Err(RingError::InvalidParameter(format!("'{ctx}' takes one integer")))
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn ring_from_products(
    labels: Vec<String>,
    unit: usize,
    products: impl Fn(usize, usize) -> Vec<(usize, u32)>,
) -> FusionRing {
    let r = labels.len();
    let mut n = vec![vec![vec![0u32; r]; r]; r];
    for a in 0..r {
        for b in 0..r {
            for (c, m) in products(a, b) {
                n[a][b][c] += m;
            }
        }
    }
    let dual: Vec<usize> = (0..r)
        .map(|a| (0..r).find(|&b| n[a][b][unit] > 0).expect("every simple needs a dual"))
        .collect();
    FusionRing { labels, unit, dual, n }
}

pub fn builtin_ring(key: &CatalogKey) -> Result<FusionRing, RingError> {
    match key {
        CatalogKey::VecG(factors) => Ok(vec_g_ring(&FiniteGroup::abelian(factors))),
        CatalogKey::Fib => Ok(fib_ring()),
        CatalogKey::FibP(p) => fib_p_ring(*p),
        CatalogKey::HaagP(p) => haag_p_ring(*p),
        CatalogKey::RepS3 => Ok(rep_s3_ring()),
        CatalogKey::DoubleOfGroup(g) => drinfeld_double_of_group(g).map(|(r, _)| r),
        CatalogKey::SU2k(k) => su2k_ring(*k),
        CatalogKey::DHaagCondensed(p) => dhaag_condensed_ring(*p),
        CatalogKey::SO8GaugedS3 => Ok(so8_gauged_s3_ring()),
    }
}

pub fn vec_g_ring(g: &FiniteGroup) -> FusionRing {
    let order = g.order();
    let labels: Vec<String> = (0..order)
        .map(|i| if i == 0 { "1".to_string() } else { format!("g{i}") })
        .collect();
    ring_from_products(labels, 0, |a, b| vec![(g.mul(a, b), 1)])
}

pub fn fib_ring() -> FusionRing {
    ring_from_products(vec!["1".into(), "t".into()], 0, |a, b| match (a, b) {
        (0, x) | (x, 0) => vec![(x, 1)],
        (1, 1) => vec![(0, 1), (1, 1)],
        _ => unreachable!(),
    })
}

fn fib_p_ring(p: u32) -> Result<FusionRing, RingError> {
    if p == 1 {
        return Ok(fib_ring());
    }
    if !is_prime(p) {
        return Err(RingError::InvalidParameter(format!("FibP needs p prime, got {p}")));
    }
    let p = p as usize;
    let mut labels: Vec<String> = (0..p)
        .map(|i| if i == 0 { "1".to_string() } else { format!("g{i}") })
        .collect();
    labels.push("X".into());
    let x = p;
    Ok(ring_from_products(labels, 0, move |a, b| {
        if a < p && b < p {
            vec![((a + b) % p, 1)]
        } else if a == x && b == x {
            let mut v: Vec<(usize, u32)> = (0..p).map(|g| (g, 1)).collect();
            v.push((x, p as u32));
            v
        } else {
            vec![(x, 1)]
        }
    }))
}

fn haag_p_ring(p: u32) -> Result<FusionRing, RingError> {
    if !is_prime(p) && p != 2 {
        return Err(RingError::InvalidParameter(format!("HaagP needs p prime, got {p}")));
    }
    let p = p as usize;
    let mut labels: Vec<String> = (0..p)
        .map(|i| if i == 0 { "1".to_string() } else { format!("a{i}") })
        .collect();
    labels.extend((0..p).map(|i| format!("r{i}")));
    // indices: 0..p are a^i, p..2p are r_i = a^i r
    Ok(ring_from_products(labels, 0, move |x, y| {
        let (ax, rx) = if x < p { (Some(x), None) } else { (None, Some(x - p)) };
        let (ay, ry) = if y < p { (Some(y), None) } else { (None, Some(y - p)) };
        match (ax, rx, ay, ry) {
            (Some(i), _, Some(j), _) => vec![((i + j) % p, 1)],
            (Some(i), _, _, Some(j)) => vec![(p + (i + j) % p, 1)],
            (_, Some(i), Some(j), _) => vec![(p + (i + p - j) % p, 1)],
            (_, Some(i), _, Some(j)) => {
                let mut v = vec![((i + p - j) % p, 1)];
                v.extend((0..p).map(|k| (p + k, 1)));
                v
            }
            _ => unreachable!(),
        }
    }))
}

pub fn rep_s3_ring() -> FusionRing {
    ring_from_products(vec!["A".into(), "B".into(), "C".into()], 0, |a, b| match (a, b) {
        (0, x) | (x, 0) => vec![(x, 1)],
        (1, 1) => vec![(0, 1)],
        (1, 2) | (2, 1) => vec![(2, 1)],
        (2, 2) => vec![(0, 1), (1, 1), (2, 1)],
        _ => unreachable!(),
    })
}

fn su2k_ring(k: u32) -> Result<FusionRing, RingError> {
    let k = k as usize;
    let labels: Vec<String> = (0..=k).map(|j| j.to_string()).collect();
    Ok(ring_from_products(labels, 0, move |a, b| {
        let mut v = Vec::new();
        let lo = a.abs_diff(b);
        let hi = (a + b).min(2 * k - a - b);
        let mut c = lo;
        while c <= hi {
            v.push((c, 1));
            c += 2;
        }
        v
    }))
}

fn dhaag_condensed_ring(p: u32) -> Result<FusionRing, RingError> {
    if !is_prime(p) || p == 2 {
        return Err(RingError::InvalidParameter(format!(
            "DHaagCondensed needs odd prime p, got {p}"
        )));
    }
    let p = p as usize;
    let n = p * p;
    let mut labels: Vec<String> = Vec::with_capacity(n + 1);
    for i in 0..p {
        for j in 0..p {
            labels.push(if i == 0 && j == 0 { "1".into() } else { format!("a{i}{j}") });
        }
    }
    labels.push("X".into());
    let x = n;
    Ok(ring_from_products(labels, 0, move |a, b| {
        if a < n && b < n {
            let (i1, j1) = (a / p, a % p);
            let (i2, j2) = (b / p, b % p);
            vec![(((i1 + i2) % p) * p + (j1 + j2) % p, 1)]
        } else if a == x && b == x {
            let mut v: Vec<(usize, u32)> = (0..n).map(|g| (g, 1)).collect();
            v.push((x, (n) as u32));
            v
        } else {
            vec![(x, 1)]
        }
    }))
}

/// Fusion rules of the `S3`-gauged `SO(8)_1` theory.
///
/// Labels: `A, B, C` (the Rep(S3) part), `X, aX, asX` (dimension 4),
/// `Y+, Y-` (dimension 3), and the four defects `X++, X+-, X--, X-+`
/// (dimension `3√2`).
pub fn so8_gauged_s3_ring() -> FusionRing {
    let labels: Vec<String> = ["A", "B", "C", "X", "aX", "asX", "Y+", "Y-", "X++", "X+-", "X--", "X-+"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let idx = |s: &str| labels.iter().position(|l| l == s).unwrap();
    let (a, b, c) = (idx("A"), idx("B"), idx("C"));
    let (x, ax, asx) = (idx("X"), idx("aX"), idx("asX"));
    let (yp, ym) = (idx("Y+"), idx("Y-"));
    let (dpp, dpm, dmm, dmp) = (idx("X++"), idx("X+-"), idx("X--"), idx("X-+"));
    let mut pairs: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    {
        let mut rule = |u: usize, v: usize, out: Vec<usize>| pairs.push((u, v, out));
        rule(b, b, vec![a]);
        rule(b, c, vec![c]);
        rule(b, yp, vec![ym]);
        rule(b, ym, vec![yp]);
        rule(b, x, vec![x]);
        rule(b, ax, vec![ax]);
        rule(b, asx, vec![asx]);
        rule(b, dpp, vec![dpm]);
        rule(b, dpm, vec![dpp]);
        rule(b, dmm, vec![dmp]);
        rule(b, dmp, vec![dmm]);
        rule(c, c, vec![a, b, c]);
        rule(c, yp, vec![yp, ym]);
        rule(c, ym, vec![yp, ym]);
        rule(c, x, vec![ax, asx]);
        rule(c, ax, vec![x, asx]);
        rule(c, asx, vec![x, ax]);
        rule(c, dpp, vec![dpp, dpm]);
        rule(c, dpm, vec![dpm, dpp]);
        rule(c, dmm, vec![dmm, dmp]);
        rule(c, dmp, vec![dmp, dmm]);
        rule(yp, yp, vec![a, c, yp, ym]);
        rule(ym, ym, vec![a, c, yp, ym]);
        rule(yp, ym, vec![b, c, yp, ym]);
        for z in [x, ax, asx] {
            rule(yp, z, vec![x, ax, asx]);
            rule(ym, z, vec![x, ax, asx]);
        }
        rule(x, x, vec![a, b, yp, ym, x, asx]);
        rule(x, ax, vec![c, yp, ym, ax, asx]);
        rule(x, asx, vec![c, yp, ym, x, ax]);
        rule(ax, ax, vec![a, b, yp, ym, x, ax]);
        rule(ax, asx, vec![c, yp, ym, x, asx]);
        rule(asx, asx, vec![a, b, yp, ym, ax, asx]);
        for z in [x, ax, asx] {
            for d in [dpp, dpm, dmm, dmp] {
                rule(z, d, vec![dpp, dpm, dmm, dmp]);
            }
        }
        // Y_± against the defects
        rule(yp, dpp, vec![dpp, dmp, dmm]);
        rule(yp, dpm, vec![dpm, dmp, dmm]);
        rule(yp, dmp, vec![dpp, dpm, dmm]);
        rule(yp, dmm, vec![dpp, dpm, dmp]);
        rule(ym, dpp, vec![dpm, dmp, dmm]);
        rule(ym, dpm, vec![dpp, dmp, dmm]);
        rule(ym, dmp, vec![dpp, dpm, dmp]);
        rule(ym, dmm, vec![dpp, dpm, dmm]);
        // defect times defect: same first sign
        rule(dpp, dpp, vec![a, c, yp, x, ax, asx]);
        rule(dpm, dpm, vec![a, c, yp, x, ax, asx]);
        rule(dmm, dmm, vec![a, c, ym, x, ax, asx]);
        rule(dmp, dmp, vec![a, c, ym, x, ax, asx]);
        rule(dpp, dpm, vec![b, c, ym, x, ax, asx]);
        rule(dmp, dmm, vec![b, c, yp, x, ax, asx]);
        // opposite first sign: second superscripts independent
        for dp in [dpp, dpm] {
            for dm in [dmm, dmp] {
                rule(dp, dm, vec![yp, ym, x, ax, asx]);
            }
        }
    }
    let r = labels.len();
    let mut n = vec![vec![vec![0u32; r]; r]; r];
    for u in 0..r {
        n[a][u][u] = 1;
        if u != a {
            n[u][a][u] = 1;
        }
    }
    for (u, v, out) in pairs {
        for w in out {
            n[u][v][w] = 1;
            if v != u {
                n[v][u][w] = 1;
            }
        }
    }
    let dual: Vec<usize> = (0..r).map(|u| (0..r).find(|&v| n[u][v][a] > 0).unwrap()).collect();
    FusionRing { labels, unit: a, dual, n }
}

/// Quantum double of a finite group: simples are (conjugacy class,
/// centralizer irrep) pairs, fusion from the Verlinde formula applied to the
/// standard S-matrix, twists `θ_(c,χ) = χ(g_c)/χ(1)`.
///
/// For `G = S3` the labels follow the usual `A..H` convention so that
/// `{A, B, C}` is the canonical Rep(S3) subring.
pub fn drinfeld_double_of_group(g: &FiniteGroup) -> Result<(FusionRing, Vec<C64>), RingError> {
    if g.order() > GROUP_ORDER_BOUND {
        return Err(RingError::GroupTooLarge { order: g.order(), bound: GROUP_ORDER_BOUND });
    }
    let n = g.order();
    let classes = g.conjugacy_classes();
    // simples: (class index, irrep index of the centralizer of the class rep)
    struct Simple {
        class: usize,
        rep: usize,
        irrep: usize,
    }
    let mut simples: Vec<Simple> = Vec::new();
    let mut centralizers: Vec<Vec<usize>> = Vec::new();
    let mut char_tables: Vec<Vec<Vec<C64>>> = Vec::new();
    for (ci, class) in classes.iter().enumerate() {
        let rep = class[0];
        let z = g.centralizer(rep);
        let chars = g.subgroup_characters(&z)?;
        for irrep in 0..chars.len() {
            simples.push(Simple { class: ci, rep, irrep });
        }
        centralizers.push(z);
        char_tables.push(chars);
    }
    let rank = simples.len();

    // chi_x(h) for h in the centralizer of x's class representative
    let chi = |x: &Simple, h: usize| -> Option<C64> {
        let z = &centralizers[x.class];
        z.iter()
            .position(|&e| e == h)
            .map(|p| char_tables[x.class][x.irrep][p])
    };

    // S_{(a,χ),(b,ψ)} = (1/(|Z(a)||Z(b)|)) Σ_{h: [a, h b h⁻¹] = 1} χ*(h b h⁻¹) ψ*(h⁻¹ a h)
    let mut s = CMat::zeros(rank, rank);
    for (xi, x) in simples.iter().enumerate() {
        for (yi, y) in simples.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for h in 0..n {
                let hy = g.mul(g.mul(h, y.rep), g.inv(h));
                if g.mul(x.rep, hy) != g.mul(hy, x.rep) {
                    continue;
                }
                let hx = g.mul(g.mul(g.inv(h), x.rep), h);
                let cx = chi(x, hy).expect("hy lies in the centralizer by construction");
                let cy = chi(y, hx).expect("hx lies in the centralizer by construction");
                acc += cx.conj() * cy.conj();
            }
            let norm = (centralizers[x.class].len() * centralizers[y.class].len()) as f64;
            s[(xi, yi)] = acc / norm;
        }
    }
    let unitary_defect = s.matmul(&s.adjoint()).max_abs_diff(&CMat::identity(rank));
    if unitary_defect > 1e-8 {
        return Err(RingError::ConvergenceFailure);
    }

    // Identify the unit: the (identity class, trivial irrep) simple.
    let unit = simples
        .iter()
        .position(|x| {
            classes[x.class][0] == g.identity()
                && char_tables[x.class][x.irrep].iter().all(|v| (v - C64::new(1.0, 0.0)).norm() < 1e-9)
        })
        .expect("trivial simple exists");

    // Verlinde
    let mut nt = vec![vec![vec![0u32; rank]; rank]; rank];
    for a in 0..rank {
        for b in 0..rank {
            for c in 0..rank {
                let mut acc = C64::new(0.0, 0.0);
                for w in 0..rank {
                    acc += s[(a, w)] * s[(b, w)] * s[(c, w)].conj() / s[(unit, w)];
                }
                let m = acc.re.round();
                if (acc - C64::new(m, 0.0)).norm() > 1e-6 || m < -0.5 {
                    return Err(RingError::ConvergenceFailure);
                }
                nt[a][b][c] = m as u32;
            }
        }
    }

    let twists: Vec<C64> = simples
        .iter()
        .map(|x| {
            let at_rep = chi(x, x.rep).expect("class rep centralizes itself");
            let at_one = chi(x, g.identity()).unwrap();
            at_rep / at_one
        })
        .collect();

    let labels: Vec<String> = if g.name == "S3" {
        // order: (e,triv),(e,sgn),(e,std),(t,+),(t,-),(c,1),(c,w),(c,w2)
        let mut names = vec![String::new(); rank];
        let mut next = 0usize;
        for (i, x) in simples.iter().enumerate() {
            let letter = char::from(b'A' + next as u8);
            let _ = x;
            names[i] = letter.to_string();
            next += 1;
        }
        names
    } else {
        simples
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if i == unit {
                    "1".to_string()
                } else {
                    format!("c{}x{}", classes[x.class][0], x.irrep)
                }
            })
            .collect()
    };

    let dual: Vec<usize> = (0..rank)
        .map(|a| (0..rank).find(|&b| nt[a][b][unit] > 0).expect("dual exists"))
        .collect();

    let ring = FusionRing { labels, unit, dual, n: nt };
    Ok((ring, twists))
}

/// Default twists for catalog rings that carry them (used by condensation).
pub fn builtin_twists(key: &CatalogKey) -> Option<Vec<C64>> {
    match key {
        CatalogKey::DoubleOfGroup(g) => drinfeld_double_of_group(g).ok().map(|(_, t)| t),
        CatalogKey::RepS3 => Some(vec![C64::new(1.0, 0.0); 3]),
        _ => None,
    }
}

/// Multiplicity of each simple in an object expression, as a convenience.
pub fn object(ring: &FusionRing, expr: &str) -> ObjectVector {
    ring.parse_object(expr).expect("valid object expression")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{quantum_dimensions, validate_fusion_ring};

    fn assert_valid(key: CatalogKey) -> FusionRing {
        let ring = builtin_ring(&key).unwrap();
        let report = validate_fusion_ring(&ring, 1e-9).unwrap();
        assert!(report.pass(), "{key:?} failed validation:\n{report}");
        ring
    }

    #[test]
    fn all_catalog_rings_are_valid() {
        assert_valid(CatalogKey::VecG(vec![2]));
        assert_valid(CatalogKey::VecG(vec![3]));
        assert_valid(CatalogKey::VecG(vec![2, 2]));
        assert_valid(CatalogKey::Fib);
        assert_valid(CatalogKey::FibP(3));
        assert_valid(CatalogKey::HaagP(2));
        assert_valid(CatalogKey::HaagP(3));
        assert_valid(CatalogKey::RepS3);
        assert_valid(CatalogKey::SU2k(3));
        assert_valid(CatalogKey::SU2k(4));
        assert_valid(CatalogKey::SU2k(6));
        assert_valid(CatalogKey::DHaagCondensed(3));
        assert_valid(CatalogKey::SO8GaugedS3);
        assert_valid(CatalogKey::DoubleOfGroup(FiniteGroup::trivial()));
        assert_valid(CatalogKey::DoubleOfGroup(FiniteGroup::cyclic(2)));
        assert_valid(CatalogKey::DoubleOfGroup(FiniteGroup::cyclic(3)));
        assert_valid(CatalogKey::DoubleOfGroup(FiniteGroup::s3()));
    }

    #[test]
    fn fib_p_three_objects_and_rule() {
        let ring = assert_valid(CatalogKey::FibP(3));
        assert_eq!(ring.rank(), 4);
        let x = ring.label_index("X").unwrap();
        let sq = ring.product_simple(x, x);
        assert_eq!(sq.0, vec![1, 1, 1, 3]);
        for gl in ["1", "g1", "g2"] {
            let g = ring.label_index(gl).unwrap();
            assert_eq!(ring.product_simple(g, x).0, vec![0, 0, 0, 1]);
            assert_eq!(ring.product_simple(x, g).0, vec![0, 0, 0, 1]);
        }
    }

    #[test]
    fn haag_p2_is_psu2_6() {
        // PSU(2)_6 = integer-spin sector of SU(2)_6: simples 0,2,4,6.
        let ring = assert_valid(CatalogKey::HaagP(2));
        let su26 = builtin_ring(&CatalogKey::SU2k(6)).unwrap();
        let keep = [0usize, 2, 4, 6];
        let pos = |j: usize| keep.iter().position(|&x| x == j).unwrap();
        let mut n = vec![vec![vec![0u32; 4]; 4]; 4];
        for (ai, &a) in keep.iter().enumerate() {
            for (bi, &b) in keep.iter().enumerate() {
                for (ci, &c) in keep.iter().enumerate() {
                    n[ai][bi][ci] = su26.n[a][b][c];
                    let _ = (pos(a), ci);
                }
            }
        }
        let psu = FusionRing {
            labels: keep.iter().map(|j| j.to_string()).collect(),
            unit: 0,
            dual: vec![0, 1, 2, 3],
            n,
        };
        assert!(crate::fusion::find_isomorphism(&ring, &psu).is_some());
    }

    #[test]
    fn dhaag_condensed_rule() {
        let ring = assert_valid(CatalogKey::DHaagCondensed(3));
        assert_eq!(ring.rank(), 10);
        let x = ring.label_index("X").unwrap();
        let sq = ring.product_simple(x, x);
        assert_eq!(sq.0[x], 9);
        assert!(sq.0[..9].iter().all(|&m| m == 1));
    }

    #[test]
    fn double_z2_is_toric_with_fermion() {
        let (ring, twists) = drinfeld_double_of_group(&FiniteGroup::cyclic(2)).unwrap();
        assert_eq!(ring.rank(), 4);
        // group ring Z2 x Z2
        let expect = vec_g_ring(&FiniteGroup::abelian(&[2, 2]));
        assert!(crate::fusion::find_isomorphism(&ring, &expect).is_some());
        // exactly one simple has twist -1, the others +1
        let minus: Vec<usize> = (0..4)
            .filter(|&i| (twists[i] - C64::new(-1.0, 0.0)).norm() < 1e-9)
            .collect();
        assert_eq!(minus.len(), 1);
    }

    #[test]
    fn double_of_trivial_group_is_rank_one() {
        let (ring, _) = drinfeld_double_of_group(&FiniteGroup::trivial()).unwrap();
        assert_eq!(ring.rank(), 1);
    }

    #[test]
    fn double_s3_shape() {
        let (ring, twists) = drinfeld_double_of_group(&FiniteGroup::s3()).unwrap();
        assert_eq!(ring.rank(), 8);
        let d = quantum_dimensions(&ring).unwrap();
        let mut dims: Vec<i64> = d.iter().map(|x| x.round() as i64).collect();
        assert!(d.iter().zip(&dims).all(|(x, &r)| (x - r as f64).abs() < 1e-8));
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 2, 2, 2, 2, 3, 3]);
        // canonical Rep(S3) subring {A,B,C}
        let (a, b, c) = (0usize, 1usize, 2usize);
        assert_eq!(ring.n[b][b][a], 1);
        assert_eq!(ring.n[b][c][c], 1);
        assert_eq!(ring.n[c][c][a], 1);
        assert_eq!(ring.n[c][c][b], 1);
        assert_eq!(ring.n[c][c][c], 1);
        // twists: A,B,C trivial; one -1 among dimension-3 simples; two
        // primitive cube roots among dimension-2 simples.
        for i in [a, b, c] {
            assert!((twists[i] - C64::new(1.0, 0.0)).norm() < 1e-9);
        }
        let omega = crate::num::unit_phase(1.0 / 3.0);
        let count_omega = (0..8)
            .filter(|&i| (twists[i] - omega).norm() < 1e-9 || (twists[i] - omega.conj()).norm() < 1e-9)
            .count();
        assert_eq!(count_omega, 2);
        assert_eq!(
            (0..8).filter(|&i| (twists[i] - C64::new(-1.0, 0.0)).norm() < 1e-9).count(),
            1
        );
    }

    #[test]
    fn su2k_validated_by_associativity() {
        for k in 1..=8 {
            assert_valid(CatalogKey::SU2k(k));
        }
    }

    #[test]
    fn catalog_key_parsing() {
        assert_eq!(CatalogKey::parse("fib").unwrap(), CatalogKey::Fib);
        assert_eq!(CatalogKey::parse("FibP(3)").unwrap(), CatalogKey::FibP(3));
        assert_eq!(CatalogKey::parse("vec_g(2,2)").unwrap(), CatalogKey::VecG(vec![2, 2]));
        assert!(CatalogKey::parse("nope").is_err());
    }
}
