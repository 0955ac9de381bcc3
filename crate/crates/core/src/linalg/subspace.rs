use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::Matrix;

/// A subspace of `F^n`, held as the nonzero rows of a reduced row echelon
/// matrix. The representation is canonical, so `==` is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { n, rows: vec![], pivots: vec![] }
    }

    pub fn full(n: usize) -> Self {
        Subspace::from_span(n, (0..n).map(|i| unit(n, i)).collect())
    }

    pub fn from_span(n: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == n), "vector length differs from ambient dimension");
        if vectors.is_empty() {
            return Subspace::zero(n);
        }
        let (r, pivots) = Matrix::from_rows(vectors).rref();
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { n, rows, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates on the canonical basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.n, "vector length differs from ambient dimension");
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        (self.combine(&c) == v).then_some(c)
    }

    /// `Σ c_i b_i` over the canonical basis.
    pub fn combine(&self, c: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(c.len(), self.dim());
        let mut out = vec![Scalar::zero(); self.n];
        for (ci, row) in c.iter().zip(&self.rows) {
            if ci.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                if !x.is_zero() {
                    *o += &(ci * x);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        Ok(())
    }

    /// `other ⊆ self`
    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_same(other)?;
        Ok(other.rows.iter().all(|r| self.contains(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Ok(Subspace::from_span(self.n, all))
    }

    /// Intersection via the kernel of `[U | −W]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.n));
        }
        let p = self.dim();
        let mut cols: Vec<Vec<Scalar>> = self.rows.clone();
        cols.extend(other.rows.iter().map(|r| r.iter().map(|x| -x).collect()));
        let k = Matrix::from_cols(&cols).kernel();
        let vecs = k.basis().iter().map(|sol| self.combine(&sol[..p])).collect();
        Ok(Subspace::from_span(self.n, vecs))
    }

    /// Complement with respect to the standard dot product.
    pub fn orthogonal_complement(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.n);
        }
        Matrix::from_rows(self.rows.clone()).kernel()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn extend(&mut self, v: Vec<Scalar>) -> bool {
        if self.contains(&v) {
            return false;
        }
        let mut all = std::mem::take(&mut self.rows);
        all.push(v);
        *self = Subspace::from_span(self.n, all);
        true
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {{", self.dim(), self.n)?;
        for r in &self.rows {
            write!(f, " {:?}", r.iter().map(ToString::to_string).collect::<Vec<_>>())?;
        }
        write!(f, " }}")
    }
}
