use crate::linalg::Vec7;
use crate::scalar::Scalar;

use super::cross;

/// `re · 1 + im` with `im ∈ R^7 = 1^⊥`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Octonion {
    pub re: Scalar,
    pub im: Vec7,
}

impl Octonion {
    pub fn new(re: Scalar, im: Vec7) -> Self {
        Octonion { re, im }
    }

    pub fn one() -> Self {
        Octonion::real(Scalar::one())
    }

    pub fn real(re: Scalar) -> Self {
        Octonion { re, im: Vec7::zero() }
    }

    pub fn pure(im: Vec7) -> Self {
        Octonion { re: Scalar::zero(), im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `(a + x)(b + y) = ab − ⟨x,y⟩ + ay + bx + x × y`
    pub fn mul(&self, other: &Octonion) -> Octonion {
        let re = &(&self.re * &other.re) - &self.im.dot(&other.im);
        let im = &(&other.im.scale(&self.re) + &self.im.scale(&other.re)) + &cross(&self.im, &other.im);
        Octonion { re, im }
    }

    pub fn add(&self, other: &Octonion) -> Octonion {
        Octonion { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn sub(&self, other: &Octonion) -> Octonion {
        Octonion { re: &self.re - &other.re, im: &self.im - &other.im }
    }

    pub fn scale(&self, s: &Scalar) -> Octonion {
        Octonion { re: &self.re * s, im: self.im.scale(s) }
    }

    pub fn conj(&self) -> Octonion {
        Octonion { re: self.re.clone(), im: -&self.im }
    }

    /// `n(a + x) = a² + ⟨x, x⟩`
    pub fn norm(&self) -> Scalar {
        &(&self.re * &self.re) + &self.im.norm2()
    }

    /// `[p, q] = pq − qp`
    pub fn commutator(&self, other: &Octonion) -> Octonion {
        self.mul(other).sub(&other.mul(self))
    }
}

impl std::fmt::Debug for Octonion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Octonion({} ; {:?})", self.re, self.im)
    }
}

/// `(x, y, z) = (xy)z − x(yz)`
pub fn associator(x: &Octonion, y: &Octonion, z: &Octonion) -> Octonion {
    x.mul(y).mul(z).sub(&x.mul(&y.mul(z)))
}
