//! Dominant weights of Spin(7) in Dynkin labels.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Rational;

/// Dominant weight `a ω₁ + b ω₂ + c ω₃` (ω₃ the spin weight).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Weight {
    pub const fn new(a: u32, b: u32, c: u32) -> Self {
        Weight { a, b, c }
    }

    pub fn labels(&self) -> [u32; 3] {
        [self.a, self.b, self.c]
    }

    /// `a + b + c`.
    pub fn level(&self) -> u32 {
        self.a + self.b + self.c
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// All dominant weights with `a + b + c ≤ max_level`, sorted lexicographically.
pub fn enumerate_weights(max_level: u32) -> Vec<Weight> {
    let mut out = Vec::new();
    for a in 0..=max_level {
        for b in 0..=max_level - a {
            for c in 0..=max_level - a - b {
                out.push(Weight::new(a, b, c));
            }
        }
    }
    out.sort();
    out
}

/// Orthonormal `ε`-coordinates of `a ω₁ + b ω₂ + c ω₃`, doubled so that they
/// are integers.
pub(crate) fn eps2(labels: [i64; 3]) -> [i64; 3] {
    let [a, b, c] = labels;
    [2 * a + 2 * b + c, 2 * b + c, c]
}

fn positive_roots_eps() -> Vec<[i64; 3]> {
    let mut roots = Vec::new();
    for i in 0..3 {
        let mut e = [0; 3];
        e[i] = 1;
        roots.push(e);
        for j in i + 1..3 {
            for s in [1, -1] {
                let mut v = [0; 3];
                v[i] = 1;
                v[j] = s;
                roots.push(v);
            }
        }
    }
    roots
}

fn dot(u: [i64; 3], v: [i64; 3]) -> i64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

/// Weyl dimension formula for `B₃`.
pub fn weyl_dimension(w: Weight) -> usize {
    let [a, b, c] = w.labels().map(i64::from);
    let lam_rho = eps2([a + 1, b + 1, c + 1]);
    let rho = eps2([1, 1, 1]);
    let (mut num, mut den) = (1i128, 1i128);
    for r in positive_roots_eps() {
        num *= i128::from(dot(lam_rho, r));
        den *= i128::from(dot(rho, r));
    }
    assert_eq!(num % den, 0, "Weyl dimension must be integral");
    (num / den) as usize
}

/// `⟨λ, λ + 2ρ⟩` in the `ε`-inner product, the eigenvalue of
/// `−Σ ρ(E_ab)²` over the `E_ab` basis of skew matrices.
pub fn casimir_raw(w: Weight) -> Rational {
    let [a, b, c] = w.labels().map(i64::from);
    let lam = eps2([a, b, c]);
    let rho2 = eps2([2, 2, 2]);
    let sum = [lam[0] + rho2[0], lam[1] + rho2[1], lam[2] + rho2[2]];
    Rational::new(dot(lam, sum) as i128, 4)
}

/// Casimir scaled to the round metric: the eigenvalue of the function
/// Laplacian on the trivial `G₂`-type, `(4/3)·⟨λ, λ+2ρ⟩`.
pub fn casimir_pinned(w: Weight) -> Rational {
    casimir_raw(w) * Rational::new(4, 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_weights(0), vec![Weight::new(0, 0, 0)]);
        assert_eq!(
            enumerate_weights(1),
            vec![Weight::new(0, 0, 0), Weight::new(0, 0, 1), Weight::new(0, 1, 0), Weight::new(1, 0, 0)]
        );
        assert_eq!(enumerate_weights(3).len(), 20);
    }

    #[test]
    fn dimensions() {
        let table = [
            ((0, 0, 0), 1),
            ((1, 0, 0), 7),
            ((0, 0, 1), 8),
            ((0, 1, 0), 21),
            ((0, 0, 2), 35),
            ((2, 0, 0), 27),
            ((1, 0, 1), 48),
            ((0, 3, 0), 825),
            ((1, 1, 1), 512),
            ((3, 0, 0), 77),
        ];
        for ((a, b, c), d) in table {
            assert_eq!(weyl_dimension(Weight::new(a, b, c)), d, "({a},{b},{c})");
        }
    }

    #[test]
    fn casimirs() {
        assert_eq!(casimir_raw(Weight::new(1, 0, 0)), Rational::from_integer(6));
        assert_eq!(casimir_raw(Weight::new(0, 0, 1)), Rational::new(21, 4));
        assert_eq!(casimir_pinned(Weight::new(0, 0, 1)), Rational::from_integer(7));
    }
}
