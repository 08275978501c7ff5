//! Wire formats. Fusion rings serialize through serde directly; skeletal
//! data keys F-matrices by `"a,b,c,d"` label strings with complex entries as
//! `[re, im]` pairs, Hopf coefficient tensors use `"(a,i),(b,j)->(c,k)"`
//! keys, and Hopf-monad data mirrors the row/column index tuples.

use serde_json::{json, Map, Value};

use crate::engine::{BasisElem, Ctx, Morphism, Tree};
use crate::fusion::{FusionRing, ObjectVector};
use crate::hopf::HopfAlgebraData;
use crate::linalg::CMat;
use crate::monad::HopfMonadData;
use crate::num::{c64, C64};
use crate::skel::{SkelError, SkeletalData};

fn complex(v: C64) -> Value {
    json!([v.re, v.im])
}

fn parse_complex(v: &Value) -> Option<C64> {
    let arr = v.as_array()?;
    Some(c64(arr.first()?.as_f64()?, arr.get(1)?.as_f64()?))
}

pub fn fusion_ring_to_json(ring: &FusionRing) -> Value {
    serde_json::to_value(ring).expect("fusion ring serializes")
}

pub fn fusion_ring_from_json(v: &Value) -> Result<FusionRing, String> {
    serde_json::from_value(v.clone()).map_err(|e| e.to_string())
}

pub fn skeletal_to_json(data: &SkeletalData) -> Value {
    let labels = &data.ring.labels;
    let mut f_entries = Map::new();
    let rnk = data.rank();
    for a in 0..rnk {
        for b in 0..rnk {
            for c in 0..rnk {
                for d in 0..rnk {
                    let rows = data.f_rows(a, b, c, d);
                    let cols = data.f_cols(a, b, c, d);
                    if rows.is_empty() || cols.is_empty() {
                        continue;
                    }
                    let m = match data.f_matrix(a, b, c, d) {
                        Ok(m) => m,
                        Err(_) => continue,
                    };
                    let key = format!("{},{},{},{}", labels[a], labels[b], labels[c], labels[d]);
                    let entry = json!({
                        "rows": rows.iter().map(|&e| labels[e].clone()).collect::<Vec<_>>(),
                        "cols": cols.iter().map(|&f| labels[f].clone()).collect::<Vec<_>>(),
                        "matrix": (0..m.rows)
                            .map(|i| (0..m.cols).map(|j| complex(m[(i, j)])).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                    });
                    f_entries.insert(key, entry);
                }
            }
        }
    }
    let r = data.r.as_ref().map(|r| {
        let mut entries = Map::new();
        for a in 0..rnk {
            for b in 0..rnk {
                for c in 0..rnk {
                    if data.ring.admissible(a, b, c) {
                        entries.insert(
                            format!("{},{},{}", labels[a], labels[b], labels[c]),
                            complex(r[a][b][c]),
                        );
                    }
                }
            }
        }
        Value::Object(entries)
    });
    let mut out = Map::new();
    out.insert("ring".into(), fusion_ring_to_json(&data.ring));
    out.insert("F".into(), Value::Object(f_entries));
    if let Some(r) = r {
        out.insert("R".into(), r);
    }
    if let Some(theta) = &data.theta {
        out.insert(
            "theta".into(),
            Value::Array(theta.iter().map(|t| complex(*t)).collect()),
        );
    }
    Value::Object(out)
}

pub fn skeletal_from_json(v: &Value) -> Result<SkeletalData, String> {
    let ring = fusion_ring_from_json(v.get("ring").ok_or("missing ring")?)?;
    let label_index = |name: &str| -> Result<usize, String> {
        ring.label_index(name).ok_or_else(|| format!("unknown label {name}"))
    };
    let mut data = SkeletalData::new(ring.clone()).map_err(|e: SkelError| e.to_string())?;
    if let Some(fmap) = v.get("F").and_then(|x| x.as_object()) {
        for (key, entry) in fmap {
            let parts: Vec<&str> = key.split(',').collect();
            if parts.len() != 4 {
                return Err(format!("bad F key {key}"));
            }
            let (a, b, c, d) = (
                label_index(parts[0])?,
                label_index(parts[1])?,
                label_index(parts[2])?,
                label_index(parts[3])?,
            );
            let rows = entry.get("matrix").and_then(|m| m.as_array()).ok_or("bad F matrix")?;
            let nrows = rows.len();
            let ncols = rows.first().and_then(|r| r.as_array()).map(|r| r.len()).unwrap_or(0);
            let mut m = CMat::zeros(nrows, ncols);
            for (i, row) in rows.iter().enumerate() {
                for (j, cell) in row.as_array().ok_or("bad F row")?.iter().enumerate() {
                    m[(i, j)] = parse_complex(cell).ok_or("bad complex entry")?;
                }
            }
            data.set_f(a, b, c, d, m);
        }
    }
    if let Some(rmap) = v.get("R").and_then(|x| x.as_object()) {
        let rnk = data.rank();
        let mut r = vec![vec![vec![c64(0.0, 0.0); rnk]; rnk]; rnk];
        for (key, entry) in rmap {
            let parts: Vec<&str> = key.split(',').collect();
            if parts.len() != 3 {
                return Err(format!("bad R key {key}"));
            }
            let (a, b, c) =
                (label_index(parts[0])?, label_index(parts[1])?, label_index(parts[2])?);
            r[a][b][c] = parse_complex(entry).ok_or("bad complex entry")?;
        }
        data.r = Some(r);
    }
    if let Some(theta) = v.get("theta").and_then(|x| x.as_array()) {
        let t: Option<Vec<C64>> = theta.iter().map(parse_complex).collect();
        data.theta = Some(t.ok_or("bad theta")?);
    }
    Ok(data)
}

/// Object vectors as label -> multiplicity maps.
pub fn object_to_json(ring: &FusionRing, v: &ObjectVector) -> Value {
    let mut out = Map::new();
    for (a, &m) in v.0.iter().enumerate() {
        if m > 0 {
            out.insert(ring.labels[a].clone(), json!(m));
        }
    }
    Value::Object(out)
}

/// Hopf coefficient tensors keyed `"(a,i),(b,j)->(c,k)"`.
fn coeff_tensor_to_json(
    skel: &SkeletalData,
    obj: &ObjectVector,
    m: &Morphism,
    comul: bool,
) -> Value {
    let ctx = Ctx::new(skel);
    let labels = &skel.ring.labels;
    let a_leaf = Tree::leaf(obj.clone());
    let mut out = Map::new();
    for (s, block) in &m.blocks {
        let pair_basis = if comul {
            ctx.basis(&m.dst, *s)
        } else {
            ctx.basis(&m.src, *s)
        };
        let single = ctx.basis(&a_leaf, *s);
        for (pi, pair_elem) in pair_basis.iter().enumerate() {
            let (lch, li, rch, ri) = match pair_elem {
                BasisElem::Node { lch, rch, l, r } => match (&**l, &**r) {
                    (BasisElem::Leaf { copy: li }, BasisElem::Leaf { copy: ri }) => {
                        (*lch, *li, *rch, *ri)
                    }
                    _ => continue,
                },
                _ => continue,
            };
            for (si, _) in single.iter().enumerate() {
                let value = if comul { block[(pi, si)] } else { block[(si, pi)] };
                if value.norm() < 1e-14 {
                    continue;
                }
                let key = if comul {
                    format!(
                        "({},{})->({},{}),({},{})",
                        labels[*s], si, labels[lch], li, labels[rch], ri
                    )
                } else {
                    format!(
                        "({},{}),({},{})->({},{})",
                        labels[lch], li, labels[rch], ri, labels[*s], si
                    )
                };
                out.insert(key, complex(value));
            }
        }
    }
    Value::Object(out)
}

pub fn hopf_to_json(h: &HopfAlgebraData) -> Value {
    let skel = h.ambient();
    let obj = &h.algebra.object;
    let mut endo = Map::new();
    for (s, block) in &h.antipode.blocks {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let v = block[(i, j)];
                if v.norm() > 1e-14 {
                    endo.insert(
                        format!("({},{})->({},{})", skel.ring.labels[*s], j, skel.ring.labels[*s], i),
                        complex(v),
                    );
                }
            }
        }
    }
    let eps = h
        .counit
        .blocks
        .get(&skel.ring.unit)
        .map(|b| (0..b.cols).map(|j| complex(b[(0, j)])).collect::<Vec<_>>())
        .unwrap_or_default();
    let eta = h
        .algebra
        .unit
        .blocks
        .get(&skel.ring.unit)
        .map(|b| (0..b.rows).map(|i| complex(b[(i, 0)])).collect::<Vec<_>>())
        .unwrap_or_default();
    json!({
        "object": object_to_json(&skel.ring, obj),
        "multiplication": coeff_tensor_to_json(skel, obj, &h.algebra.mul, false),
        "comultiplication": coeff_tensor_to_json(skel, obj, &h.delta, true),
        "unit": eta,
        "counit": eps,
        "antipode": Value::Object(endo),
    })
}

/// Hopf-monad data: `H` matrices keyed `"a,b,c"` with spelled index tuples.
pub fn monad_to_json(data: &HopfMonadData) -> Value {
    let labels = &data.cat.ring.labels;
    let rnk = data.rank();
    let spell = |q: (usize, u32, usize, u32)| -> String {
        format!("({},{};{},{})", labels[q.0], q.1 + 1, labels[q.2], q.3 + 1)
    };
    let family = |h: &std::collections::HashMap<(usize, usize, usize), CMat>, right: bool| {
        let mut out = Map::new();
        for a in 0..rnk {
            for b in 0..rnk {
                for c in 0..rnk {
                    let rows = data.h_rows(a, b, c);
                    let cols = if right { data.hr_cols(a, b, c) } else { data.hl_cols(a, b, c) };
                    if rows.is_empty() {
                        continue;
                    }
                    let m = match h.get(&(a, b, c)) {
                        Some(m) => m,
                        None => continue,
                    };
                    out.insert(
                        format!("{},{},{}", labels[a], labels[b], labels[c]),
                        json!({
                            "rows": rows.iter().map(|&q| spell(q)).collect::<Vec<_>>(),
                            "cols": cols.iter().map(|&q| spell(q)).collect::<Vec<_>>(),
                            "matrix": (0..m.rows)
                                .map(|i| (0..m.cols).map(|j| complex(m[(i, j)])).collect::<Vec<_>>())
                                .collect::<Vec<_>>(),
                        }),
                    );
                }
            }
        }
        Value::Object(out)
    };
    let mut out = Map::new();
    out.insert(
        "T".into(),
        json!(data.t),
    );
    out.insert("H_left".into(), family(&data.h_left, false));
    if let Some(hr) = &data.h_right {
        out.insert("H_right".into(), family(hr, true));
    }
    out.insert("eps".into(), Value::Array(data.eps.iter().map(|v| complex(*v)).collect()));
    out.insert(
        "eta".into(),
        Value::Array(
            data.eta
                .iter()
                .map(|v| Value::Array(v.iter().map(|x| complex(*x)).collect()))
                .collect(),
        ),
    );
    Value::Object(out)
}
