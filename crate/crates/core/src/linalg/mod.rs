//! Exact dense linear algebra over [`Scalar`].

mod matrix;
mod poly;
mod subspace;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

pub use matrix::Matrix;
pub use poly::Poly;
pub use subspace::Subspace;

use crate::scalar::Scalar;

/// Linear maps of R^7, acting on column vectors.
pub type LinMap7 = Matrix;

/// A vector of R^7 in the canonical basis e_1..e_7.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Vec7(pub [Scalar; 7]);

impl Vec7 {
    pub fn zero() -> Self {
        Vec7::default()
    }

    /// The basis vector `e_i`, 1-based.
    pub fn e(i: usize) -> Self {
        assert!((1..=7).contains(&i), "basis index {i} outside 1..=7");
        let mut v = Vec7::zero();
        v.0[i - 1] = Scalar::one();
        v
    }

    pub fn from_ints(c: [i64; 7]) -> Self {
        Vec7(c.map(Scalar::int))
    }

    pub fn from_slice(s: &[Scalar]) -> Self {
        assert_eq!(s.len(), 7);
        Vec7(std::array::from_fn(|i| s[i].clone()))
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.0
    }

    pub fn to_vec(&self) -> Vec<Scalar> {
        self.0.to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn dot(&self, other: &Vec7) -> Scalar {
        dot(&self.0, &other.0)
    }

    pub fn norm2(&self) -> Scalar {
        self.dot(self)
    }

    pub fn scale(&self, s: &Scalar) -> Vec7 {
        Vec7(std::array::from_fn(|i| &self.0[i] * s))
    }

    pub fn apply(m: &LinMap7, v: &Vec7) -> Vec7 {
        Vec7::from_slice(&m.mul_vec(&v.0))
    }
}

impl Index<usize> for Vec7 {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec7 {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl Add for &Vec7 {
    type Output = Vec7;
    fn add(self, rhs: &Vec7) -> Vec7 {
        Vec7(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Sub for &Vec7 {
    type Output = Vec7;
    fn sub(self, rhs: &Vec7) -> Vec7 {
        Vec7(std::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
    }
}

impl Neg for &Vec7 {
    type Output = Vec7;
    fn neg(self) -> Vec7 {
        Vec7(std::array::from_fn(|i| -&self.0[i]))
    }
}

impl fmt::Debug for Vec7 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// `Σ c_i v_i`
pub fn lin_comb(c: &[Scalar], vs: &[Vec<Scalar>]) -> Vec<Scalar> {
    assert_eq!(c.len(), vs.len());
    let n = vs.first().map_or(0, Vec::len);
    let mut out = vec![Scalar::zero(); n];
    for (ci, v) in c.iter().zip(vs) {
        if ci.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += &(ci * x);
            }
        }
    }
    out
}

/// Signs of the leading principal minors decide definiteness.
pub fn is_positive_definite(gram: &Matrix) -> bool {
    (1..=gram.rows()).all(|k| gram.block(0, k, 0, k).det().sign() == 1)
}

pub fn is_negative_definite(gram: &Matrix) -> bool {
    is_positive_definite(&gram.neg())
}
