//! Finite groups as explicit multiplication tables, with conjugacy classes,
//! centralizers, and the centralizer character tables needed for doubles.
//!
//! Only the cases the catalog uses are supported: finite abelian groups in
//! product-of-cyclics form, and `S3`. Centralizer character tables are
//! computed generically for abelian (sub)groups and hardcoded for `S3`.

use crate::fusion::RingError;
use crate::num::{unit_phase, C64};

pub const GROUP_ORDER_BOUND: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    mul: Vec<Vec<usize>>,
    /// Cyclic factor orders when the group was built as a product of cyclics.
    pub abelian_factors: Option<Vec<u32>>,
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        FiniteGroup::abelian(&[])
    }

    pub fn cyclic(n: u32) -> Self {
        FiniteGroup::abelian(&[n])
    }

    /// Direct product of cyclic groups `Z_{n_1} x ... x Z_{n_k}`.
    pub fn abelian(factors: &[u32]) -> Self {
        assert!(factors.iter().all(|&n| n >= 1));
        let order: usize = factors.iter().map(|&n| n as usize).product::<usize>().max(1);
        let decode = |mut i: usize| -> Vec<u32> {
            let mut t = Vec::with_capacity(factors.len());
            for &n in factors.iter().rev() {
                t.push((i % n as usize) as u32);
                i /= n as usize;
            }
            t.reverse();
            t
        };
        let encode = |t: &[u32]| -> usize {
            let mut i = 0usize;
            for (k, &n) in factors.iter().enumerate() {
                i = i * n as usize + t[k] as usize;
            }
            i
        };
        let mut mul = vec![vec![0usize; order]; order];
        for i in 0..order {
            for j in 0..order {
                let a = decode(i);
                let b = decode(j);
                let sum: Vec<u32> = a
                    .iter()
                    .zip(b.iter())
                    .zip(factors.iter())
                    .map(|((x, y), &n)| (x + y) % n)
                    .collect();
                mul[i][j] = encode(&sum);
            }
        }
        let name = if factors.is_empty() {
            "1".to_string()
        } else {
            factors.iter().map(|n| format!("Z{n}")).collect::<Vec<_>>().join("x")
        };
        FiniteGroup { name, mul, abelian_factors: Some(factors.to_vec()) }
    }

    /// Symmetric group on three letters; elements are the permutations
    /// `e, (12), (13), (23), (123), (132)` in that order.
    pub fn s3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] {
            // (p*q)(x) = p(q(x))
            [p[q[0]], p[q[1]], p[q[2]]]
        };
        let mut mul = vec![vec![0usize; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                let r = compose(&perms[i], &perms[j]);
                mul[i][j] = perms.iter().position(|p| *p == r).unwrap();
            }
        }
        FiniteGroup { name: "S3".to_string(), mul, abelian_factors: None }
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul[a][b] == 0).unwrap()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Conjugacy classes, each sorted, with the class of the identity first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let mut class: Vec<usize> = (0..n)
                .map(|g| self.mul(self.mul(g, a), self.inv(g)))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        (0..self.order()).filter(|&g| self.mul(g, a) == self.mul(a, g)).collect()
    }

    /// Character table of the subgroup given by `elements` (closed under the
    /// group law): rows are irreducible characters, columns follow
    /// `elements`. Supports abelian subgroups and the full `S3`.
    pub fn subgroup_characters(&self, elements: &[usize]) -> Result<Vec<Vec<C64>>, RingError> {
        let h = elements.len();
        let pos = |x: usize| elements.iter().position(|&e| e == x).unwrap();
        let abelian = elements
            .iter()
            .all(|&a| elements.iter().all(|&b| self.mul(a, b) == self.mul(b, a)));
        if abelian {
            return self.abelian_subgroup_characters(elements, pos);
        }
        if h == 6 {
            // S3: trivial, sign, and the 2-dimensional irrep, with character
            // values determined by element order (1 / transposition / 3-cycle).
            let mut rows = vec![Vec::with_capacity(h); 3];
            for &g in elements {
                let (sgn, std) = match self.element_order(g) {
                    1 => (1.0, 2.0),
                    2 => (-1.0, 0.0),
                    3 => (1.0, -1.0),
                    _ => return Err(RingError::InvalidParameter("unexpected S3 element order".into())),
                };
                rows[0].push(C64::new(1.0, 0.0));
                rows[1].push(C64::new(sgn, 0.0));
                rows[2].push(C64::new(std, 0.0));
            }
            return Ok(rows);
        }
        Err(RingError::InvalidParameter(format!(
            "character table for nonabelian subgroup of order {h} not supported"
        )))
    }

    fn abelian_subgroup_characters(
        &self,
        elements: &[usize],
        pos: impl Fn(usize) -> usize,
    ) -> Result<Vec<Vec<C64>>, RingError> {
        let h = elements.len();
        // Find a cyclic decomposition greedily: repeatedly take the highest
        // order element of the quotient. Subgroups encountered here have
        // order at most the group bound, so brute force is fine.
        let mut gens: Vec<usize> = Vec::new();
        let mut gen_orders: Vec<usize> = Vec::new();
        let mut span: Vec<usize> = vec![0];
        while span.len() < h {
            let mut best = None;
            let mut best_gain = 1usize;
            for &g in elements {
                if span.contains(&g) {
                    continue;
                }
                // order of g modulo current span
                let mut k = 1;
                let mut x = g;
                while !span.contains(&x) {
                    x = self.mul(x, g);
                    k += 1;
                }
                if k > best_gain {
                    best_gain = k;
                    best = Some(g);
                }
            }
            let g = best.ok_or_else(|| RingError::InvalidParameter("subgroup closure error".into()))?;
            gens.push(g);
            gen_orders.push(best_gain);
            let mut new_span = Vec::new();
            for &s in &span {
                let mut x = s;
                for _ in 0..best_gain {
                    new_span.push(x);
                    x = self.mul(x, g);
                }
            }
            new_span.sort_unstable();
            new_span.dedup();
            span = new_span;
        }
        // Coordinates of each element with respect to the generators.
        let coords: Vec<Vec<usize>> = {
            let mut table = vec![None; self.order()];
            let mut stack = vec![(0usize, vec![0usize; gens.len()])];
            table[0] = Some(vec![0usize; gens.len()]);
            while let Some((x, cs)) = stack.pop() {
                for (i, &g) in gens.iter().enumerate() {
                    let y = self.mul(x, g);
                    if table[y].is_none() {
                        let mut cs2 = cs.clone();
                        cs2[i] = (cs2[i] + 1) % gen_orders[i];
                        table[y] = Some(cs2.clone());
                        stack.push((y, cs2));
                    }
                }
            }
            elements.iter().map(|&e| table[e].clone().unwrap()).collect()
        };
        let _ = pos;
        let mut rows = Vec::with_capacity(h);
        let mut ks = vec![0usize; gens.len()];
        loop {
            let row: Vec<C64> = coords
                .iter()
                .map(|c| {
                    let t: f64 = c
                        .iter()
                        .zip(ks.iter())
                        .zip(gen_orders.iter())
                        .map(|((&ci, &ki), &ni)| (ci * ki) as f64 / ni as f64)
                        .sum();
                    unit_phase(t)
                })
                .collect();
            rows.push(row);
            // increment multi-index
            let mut i = 0;
            loop {
                if i == ks.len() {
                    return Ok(rows);
                }
                ks[i] += 1;
                if ks[i] < gen_orders[i] {
                    break;
                }
                ks[i] = 0;
                i += 1;
            }
            if ks.iter().all(|&k| k == 0) {
                return Ok(rows);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_structure() {
        let g = FiniteGroup::s3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let classes = g.conjugacy_classes();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        let chars = g.subgroup_characters(&(0..6).collect::<Vec<_>>()).unwrap();
        assert_eq!(chars.len(), 3);
        // column orthogonality at the identity: 1 + 1 + 4 = 6
        let norm: f64 = chars.iter().map(|r| r[0].norm_sqr()).sum();
        assert!((norm - 6.0).abs() < 1e-12);
    }

    #[test]
    fn abelian_characters_are_orthogonal() {
        let g = FiniteGroup::abelian(&[2, 2]);
        let elems: Vec<usize> = (0..4).collect();
        let chars = g.subgroup_characters(&elems).unwrap();
        assert_eq!(chars.len(), 4);
        for a in 0..4 {
            for b in 0..4 {
                let dot: C64 = (0..4).map(|x| chars[a][x] * chars[b][x].conj()).sum();
                let want = if a == b { 4.0 } else { 0.0 };
                assert!((dot - C64::new(want, 0.0)).norm() < 1e-12);
            }
        }
    }
}
