//! Small numeric utilities: complex shorthand, a deterministic PRNG, and a
//! polynomial root finder for the idempotent-splitting machinery.

use num_complex::Complex64;

pub type C64 = Complex64;

pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Golden ratio.
pub fn phi() -> f64 {
    (1.0 + 5.0_f64.sqrt()) / 2.0
}

/// `e^{2πi t}`.
pub fn unit_phase(t: f64) -> C64 {
    C64::from_polar(1.0, std::f64::consts::TAU * t)
}

/// SplitMix64: tiny deterministic generator, good enough for solver restarts
/// and randomised splitting. All randomness in the crate flows through this
/// so runs are reproducible from a single seed.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in `[-r, r]` on both components.
    pub fn next_c64(&mut self, r: f64) -> C64 {
        c64(
            r * (2.0 * self.next_f64() - 1.0),
            r * (2.0 * self.next_f64() - 1.0),
        )
    }

    pub fn next_range(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// All roots of a monic-ish complex polynomial `c[0] + c[1] x + ... + c[d] x^d`
/// by Durand–Kerner iteration. Degrees here are tiny (bounded by endomorphism
/// algebra dimensions), so plain simultaneous iteration is plenty.
pub fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let mut c: Vec<C64> = coeffs.to_vec();
    while let Some(last) = c.last() {
        if last.norm() < 1e-13 && c.len() > 1 {
            c.pop();
        } else {
            break;
        }
    }
    let d = c.len().saturating_sub(1);
    if d == 0 {
        return vec![];
    }
    let lead = c[d];
    let monic: Vec<C64> = c.iter().map(|x| x / lead).collect();
    let radius = 1.0
        + monic[..d]
            .iter()
            .map(|x| x.norm())
            .fold(0.0_f64, f64::max);
    // Start from non-symmetric points on a circle.
    let mut roots: Vec<C64> = (0..d)
        .map(|k| C64::from_polar(radius * 0.7, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64))
        .collect();
    let eval = |z: C64| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &ck in monic.iter().rev() {
            acc = acc * z + ck;
        }
        acc
    };
    for _ in 0..500 {
        let mut moved = 0.0_f64;
        for i in 0..d {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..d {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-14 {
            break;
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_quadratic() {
        // x^2 - 3x + 2 = (x-1)(x-2)
        let mut r = poly_roots(&[c64(2.0, 0.0), c64(-3.0, 0.0), c64(1.0, 0.0)]);
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((r[0] - c64(1.0, 0.0)).norm() < 1e-10);
        assert!((r[1] - c64(2.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(7);
        let mut b = SplitMix64::new(7);
        for _ in 0..10 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }
}
