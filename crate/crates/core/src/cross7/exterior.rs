use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// An element of the exterior algebra of (R^7)*, one coefficient per
/// blade `e^{i_1} ∧ … ∧ e^{i_k}` indexed by the bit mask of `{i_1, …, i_k}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form {
    coeffs: Vec<Scalar>,
}

pub const TOP: usize = 0b111_1111;

impl Form {
    pub fn zero() -> Self {
        Form { coeffs: vec![Scalar::zero(); 128] }
    }

    pub fn coeff(&self, mask: usize) -> &Scalar {
        &self.coeffs[mask]
    }

    pub fn add_blade(&mut self, mask: usize, c: &Scalar) {
        self.coeffs[mask] += c;
    }

    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::zero();
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() || a & b != 0 {
                    continue;
                }
                let p = ca * cb;
                if blade_sign(a, b) > 0 {
                    out.coeffs[a | b] += &p;
                } else {
                    out.coeffs[a | b] -= &p;
                }
            }
        }
        out
    }
}

/// Sign of the permutation sorting `blade(a) ++ blade(b)`: one transposition
/// for every pair `i ∈ a`, `j ∈ b` with `i > j`.
fn blade_sign(a: usize, b: usize) -> i8 {
    let mut inversions = 0;
    for i in 0..7 {
        if a & (1 << i) != 0 {
            inversions += (b & ((1 << i) - 1)).count_ones();
        }
    }
    if inversions % 2 == 0 { 1 } else { -1 }
}

/// A trilinear form on R^7 given by its values on basis triples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trilinear {
    t: Vec<Scalar>,
}

impl Trilinear {
    pub fn from_fn(mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Self {
        let mut t = Vec::with_capacity(343);
        for a in 0..7 {
            for b in 0..7 {
                for c in 0..7 {
                    t.push(f(a, b, c));
                }
            }
        }
        Trilinear { t }
    }

    pub fn zero() -> Self {
        Trilinear::from_fn(|_, _, _| Scalar::zero())
    }

    pub fn at(&self, a: usize, b: usize, c: usize) -> &Scalar {
        &self.t[49 * a + 7 * b + c]
    }

    pub fn is_alternating(&self) -> bool {
        (0..7).all(|a| {
            (0..7).all(|b| {
                (0..7).all(|c| {
                    let v = self.at(a, b, c);
                    if a == b || b == c || a == c {
                        return v.is_zero();
                    }
                    &-v == self.at(b, a, c) && &-v == self.at(a, c, b)
                })
            })
        })
    }

    /// `γ(e_u, ·, ·)` as a 2-form.
    fn contract(&self, u: usize) -> Form {
        let mut f = Form::zero();
        for a in 0..7 {
            for b in a + 1..7 {
                f.add_blade((1 << a) | (1 << b), self.at(u, a, b));
            }
        }
        f
    }

    fn as_form(&self) -> Form {
        let mut f = Form::zero();
        for a in 0..7 {
            for b in a + 1..7 {
                for c in b + 1..7 {
                    f.add_blade((1 << a) | (1 << b) | (1 << c), self.at(a, b, c));
                }
            }
        }
        f
    }
}

/// `β_γ(u, v)`: the coefficient of `e^1 ∧ … ∧ e^7` in
/// `−(1/3) γ(u,·,·) ∧ γ(v,·,·) ∧ γ`.
pub fn induced_bilinear(gamma: &Trilinear) -> Result<Matrix> {
    if !gamma.is_alternating() {
        return Err(Error::Precondition("trilinear form is not alternating".into()));
    }
    let g = gamma.as_form();
    let two: Vec<Form> = (0..7).map(|u| gamma.contract(u)).collect();
    let third = Scalar::frac(-1, 3);
    Ok(Matrix::from_fn(7, 7, |u, v| &two[u].wedge(&two[v]).wedge(&g).coeff(TOP).clone() * &third))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cross7::omega_form;

    #[test]
    fn blade_signs() {
        // e1 ∧ e2 = +, e2 ∧ e1 = −
        assert_eq!(blade_sign(0b01, 0b10), 1);
        assert_eq!(blade_sign(0b10, 0b01), -1);
        // (e2 ∧ e3) ∧ e1 = e1 ∧ e2 ∧ e3
        assert_eq!(blade_sign(0b110, 0b001), 1);
    }

    #[test]
    fn beta_of_zero_and_omega() {
        assert_eq!(induced_bilinear(&Trilinear::zero()).unwrap(), Matrix::zeros(7, 7));
        let beta = induced_bilinear(&omega_form()).unwrap();
        assert!(beta[(0, 1)].is_zero());
        let c = beta[(0, 0)].clone();
        assert_eq!(beta, Matrix::identity(7).scale(&c));
        assert_eq!(c.sign(), 1);
    }

    #[test]
    fn rejects_non_alternating() {
        let t = Trilinear::from_fn(|a, b, c| Scalar::int((a == 0 && b == 0 && c == 1) as i64));
        assert!(induced_bilinear(&t).is_err());
    }
}
