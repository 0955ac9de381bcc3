//! The cross product on R^7, its 3-form, the octonions and the bilinear
//! form induced by a 3-form.

mod exterior;
mod octonion;

use std::sync::OnceLock;

pub use exterior::{induced_bilinear, Form, Trilinear};
pub use octonion::{associator, Octonion};

use crate::linalg::Vec7;
use crate::scalar::Scalar;

/// Structure constants `e_i × e_j = sign · e_k` (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossTable {
    table: [[Option<(usize, i8)>; 7]; 7],
}

impl CrossTable {
    /// `e_i × e_{i+1} = e_{i+3}` with indices mod 7, extended cyclically
    /// and antisymmetrically.
    pub fn standard() -> Self {
        let mut table = [[None; 7]; 7];
        for i in 0..7 {
            let (a, b, c) = (i, (i + 1) % 7, (i + 3) % 7);
            for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                table[x][y] = Some((z, 1));
                table[y][x] = Some((z, -1));
            }
        }
        CrossTable { table }
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<(usize, i8)> {
        self.table[i][j]
    }

    /// Anticommutativity and a full set of 42 nonzero products.
    pub fn is_anticommutative(&self) -> bool {
        (0..7).all(|i| {
            self.table[i][i].is_none()
                && (0..7).filter(|&j| j != i).all(|j| match (self.table[i][j], self.table[j][i]) {
                    (Some((k, s)), Some((k2, s2))) => k == k2 && s == -s2,
                    _ => false,
                })
        })
    }

    pub fn cross(&self, x: &Vec7, y: &Vec7) -> Vec7 {
        let mut out = Vec7::zero();
        for i in 0..7 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..7 {
                if y[j].is_zero() {
                    continue;
                }
                if let Some((k, s)) = self.table[i][j] {
                    let p = &x[i] * &y[j];
                    if s > 0 {
                        out[k] += &p;
                    } else {
                        out[k] -= &p;
                    }
                }
            }
        }
        out
    }
}

pub fn table() -> &'static CrossTable {
    static TABLE: OnceLock<CrossTable> = OnceLock::new();
    TABLE.get_or_init(CrossTable::standard)
}

pub fn cross(x: &Vec7, y: &Vec7) -> Vec7 {
    table().cross(x, y)
}

/// `Ω(x, y, z) = ⟨x × y, z⟩`
pub fn omega(x: &Vec7, y: &Vec7, z: &Vec7) -> Scalar {
    cross(x, y).dot(z)
}

/// Ω as a trilinear form on the canonical basis.
pub fn omega_form() -> Trilinear {
    Trilinear::from_fn(|a, b, c| omega(&Vec7::e(a + 1), &Vec7::e(b + 1), &Vec7::e(c + 1)))
}
