//! The projection model of G2/SO(4): 3-dimensional subspaces of R^7 as
//! symmetric idempotents, their tangent spaces, the LTS M_{3,4}(R)^- and
//! the twisted LTS structure on sl3(R).

mod sl3;

pub use sl3::{
    alpha, curvature_check, d_st, doslts, from_sl3, gamma, l_minus_l_plus, metric, sl3_catalog, sl3_product, sl3_space,
    sl3_to_g2, sl3_triple, to_sl3, CurvatureReport, Sl3Kind,
};

use crate::cross7::{cross, omega};
use crate::error::{Error, Result};
use crate::g2alg::{Frame, G2};
use crate::linalg::{LinMap7, Matrix, Subspace, Vec7};
use crate::scalar::Scalar;

/// A symmetric idempotent of rank 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    p: LinMap7,
}

impl Projection {
    pub fn new(p: LinMap7) -> Result<Self> {
        if p.shape() != (7, 7) {
            return Err(Error::DimensionMismatch { expected: 7, got: p.rows() });
        }
        if p.mul(&p) != p || p.transpose() != p {
            return Err(Error::Precondition("not a symmetric idempotent".into()));
        }
        if p.trace() != Scalar::int(3) {
            return Err(Error::Precondition(format!("trace {} ≠ 3", p.trace())));
        }
        Ok(Projection { p })
    }

    /// Orthogonal projection `B (BᵀB)⁻¹ Bᵀ` onto the span of the columns.
    pub fn onto(vectors: &[Vec7]) -> Result<Self> {
        let b = Matrix::from_cols(&vectors.iter().map(Vec7::to_vec).collect::<Vec<_>>());
        let inv = b.transpose().mul(&b).inverse()?;
        Projection::new(b.mul(&inv).mul(&b.transpose()))
    }

    pub fn matrix(&self) -> &LinMap7 {
        &self.p
    }

    /// `π' = 1 − π`
    pub fn complement(&self) -> LinMap7 {
        Matrix::identity(7).sub(&self.p)
    }

    /// `θ = 2π − 1`
    pub fn theta(&self) -> LinMap7 {
        self.p.scale(&Scalar::int(2)).sub(&Matrix::identity(7))
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_span(7, (0..7).map(|c| self.p.col(c)).collect())
    }

    pub fn apply(&self, v: &Vec7) -> Vec7 {
        Vec7::apply(&self.p, v)
    }
}

/// `Ω(πx, πy, π'z) = 0` for all basis triples.
pub fn in_ms_prime(p: &Projection) -> bool {
    let q = p.complement();
    let e: Vec<Vec7> = (1..=7).map(Vec7::e).collect();
    let pe: Vec<Vec7> = e.iter().map(|v| p.apply(v)).collect();
    let qe: Vec<Vec7> = e.iter().map(|v| Vec7::apply(&q, v)).collect();
    pe.iter().all(|x| pe.iter().all(|y| qe.iter().all(|z| omega(x, y, z).is_zero())))
}

/// Kernel of a linear map on 7×7 matrices given by its values on units.
fn kernel_of(f: impl Fn(&Matrix) -> Vec<Scalar>) -> Subspace {
    let cols: Vec<Vec<Scalar>> = (0..49).map(|p| f(&Matrix::unit(7, 7, p / 7, p % 7))).collect();
    Matrix::from_cols(&cols).kernel()
}

fn gr3_conditions(p: &Projection, d: &Matrix) -> Vec<Scalar> {
    let pm = p.matrix();
    let mut out = d.mul(pm).add(&pm.mul(d)).sub(d).into_flat();
    out.extend(d.sub(&d.transpose()).into_flat());
    out.push(d.trace());
    out
}

/// `π'[d(x) × π(y) + π(x) × d(y)] − d(π(x) × π(y))` on basis pairs.
fn idnoc_conditions(p: &Projection, d: &Matrix) -> Vec<Scalar> {
    let q = p.complement();
    let mut out = Vec::with_capacity(343);
    for a in 1..=7 {
        for b in 1..=7 {
            let (x, y) = (Vec7::e(a), Vec7::e(b));
            let (px, py) = (p.apply(&x), p.apply(&y));
            let lhs = &cross(&Vec7::apply(d, &x), &py) + &cross(&px, &Vec7::apply(d, &y));
            let v = &Vec7::apply(&q, &lhs) - &Vec7::apply(d, &cross(&px, &py));
            out.extend(v.0);
        }
    }
    out
}

/// `{d : dπ + πd = d, dᵀ = d, tr d = 0}` as a subspace of F^49.
pub fn gr3_tangent(p: &Projection) -> Subspace {
    kernel_of(|d| gr3_conditions(p, d))
}

/// Does `d` satisfy the linearised `M'_S` condition on all basis pairs?
pub fn satisfies_idnoc(p: &Projection, d: &Matrix) -> bool {
    idnoc_conditions(p, d).iter().all(Scalar::is_zero)
}

/// Tangent space of `M'_S` at `π` with the row-matrix coordinates of a
/// frame `{i, j, k}` of `Fix(π)` and `v_0 = ℓ ∈ ker(π)`.
#[derive(Clone, Debug)]
pub struct MsTangent {
    pub frame: Frame,
    pub projection: Projection,
    pub space: Subspace,
}

pub fn ms_tangent(p: &Projection, frame: &Frame) -> Result<MsTangent> {
    let fix = p.image();
    for u in frame.uvw() {
        if !fix.contains(u.as_slice()) {
            return Err(Error::Precondition("frame does not span Fix(π)".into()));
        }
    }
    if !p.apply(&frame.l).is_zero() {
        return Err(Error::Precondition("ℓ is not in ker(π)".into()));
    }
    let space = kernel_of(|d| {
        let mut c = gr3_conditions(p, d);
        c.extend(idnoc_conditions(p, d));
        c
    });
    Ok(MsTangent { frame: frame.clone(), projection: p.clone(), space })
}

impl MsTangent {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<Matrix> {
        self.space.basis().iter().map(|r| Matrix::from_flat(7, 7, r.clone())).collect()
    }

    pub fn contains(&self, d: &Matrix) -> bool {
        self.space.contains(d.as_flat())
    }

    /// `R[r][c] = ⟨d(u_r), v_c⟩` for `u = (i, j, k)`.
    pub fn row_matrix(&self, d: &LinMap7) -> Matrix {
        row_matrix(&self.frame, d)
    }

    /// The unique tangent vector with `d(i) = Σ a_c v_c`, `d(j) = Σ b_c v_c`.
    pub fn from_ab(&self, a: &[Scalar; 4], b: &[Scalar; 4]) -> Result<Matrix> {
        let basis = self.basis();
        let rows: Vec<Matrix> = basis.iter().map(|d| self.row_matrix(d)).collect();
        // unknown coefficients on the basis; equations on the first two rows
        let sys = Matrix::from_fn(8, basis.len(), |e, q| rows[q][(e / 4, e % 4)].clone());
        let rhs: Vec<Scalar> = a.iter().chain(b.iter()).cloned().collect();
        let c = sys.solve(&rhs).ok_or_else(|| Error::Precondition("no tangent vector with these images".into()))?;
        if sys.rank() != basis.len() {
            return Err(Error::Inconsistent("tangent vector is not unique".into()));
        }
        let mut d = Matrix::zeros(7, 7);
        for (ci, bi) in c.iter().zip(&basis) {
            d.axpy(ci, bi);
        }
        Ok(d)
    }

    /// Map with the given row matrix: `u_r ↦ Σ_c R[r][c] v_c` and
    /// `v_c ↦ s·Σ_r R[r][c] u_r` (`s = 1`: self-adjoint, `s = −1`: skew).
    pub fn map_from_rows(&self, r: &Matrix, s: i64) -> LinMap7 {
        map_from_rows(&self.frame, r, s)
    }

    /// The unique odd skew derivation agreeing with `d` on `Fix(π)`:
    /// `d̃ = dπ − πd`.
    pub fn lift_to_derivation(&self, d: &Matrix) -> Result<LinMap7> {
        if !self.contains(d) {
            return Err(Error::NotMember("T_π(M'_S)".into()));
        }
        let p = self.projection.matrix();
        let lift = d.mul(p).sub(&p.mul(d));
        if !G2::get().contains(&lift) {
            return Err(Error::NotMember("g2 (lifted tangent vector)".into()));
        }
        Ok(lift)
    }
}

pub fn row_matrix(frame: &Frame, d: &LinMap7) -> Matrix {
    let u = frame.uvw();
    let v = frame.v();
    Matrix::from_fn(3, 4, |r, c| Vec7::apply(d, &u[r]).dot(&v[c]))
}

pub fn map_from_rows(frame: &Frame, r: &Matrix, s: i64) -> LinMap7 {
    let u = frame.uvw();
    let v = frame.v();
    let sc = Scalar::int(s);
    let mut images: [Vec7; 7] = Default::default();
    for row in 0..3 {
        let mut img = Vec7::zero();
        for c in 0..4 {
            img = &img + &v[c].scale(&r[(row, c)]);
        }
        images[row] = img;
    }
    for c in 0..4 {
        let mut img = Vec7::zero();
        for row in 0..3 {
            img = &img + &u[row].scale(&r[(row, c)]);
        }
        images[3 + c] = img.scale(&sc);
    }
    frame.map_from_images(&images)
}

/// Third row forced by the derivation condition:
/// `(a_2 − b_1, a_3 + b_0, b_3 − a_0, −a_1 − b_2)`.
pub fn template_third_row(r: &Matrix) -> [Scalar; 4] {
    let a = |c: usize| &r[(0, c)];
    let b = |c: usize| &r[(1, c)];
    [a(2) - b(1), a(3) + b(0), b(3) - a(0), -(a(1) + b(2))]
}

pub fn matches_template(r: &Matrix) -> bool {
    r.shape() == (3, 4) && (0..4).all(|c| r[(2, c)] == template_third_row(r)[c])
}

/// `ab^tc − ba^tc + cb^ta − ca^tb`
pub fn m34_triple(a: &Matrix, b: &Matrix, c: &Matrix) -> Matrix {
    let at = a.transpose();
    let bt = b.transpose();
    a.mul(&bt).mul(c).sub(&b.mul(&at).mul(c)).add(&c.mul(&bt).mul(a)).sub(&c.mul(&at).mul(b))
}

/// `b ↦ [[0, b], [bᵗ, 0]]`, under which the M_{3,4} product is `[[X, Y], Z]`.
pub fn symmetric_block(b: &Matrix) -> Matrix {
    let (r, c) = b.shape();
    let n = r + c;
    Matrix::from_fn(n, n, |i, j| {
        if i < r && j >= r {
            b[(i, j - r)].clone()
        } else if i >= r && j < r {
            b[(j, i - r)].clone()
        } else {
            Scalar::zero()
        }
    })
}

/// A basis of the row matrices of `T_π(M'_S)`, each a difference or sum of
/// two elementary 3×4 matrices.
pub fn row_basis() -> Vec<Matrix> {
    let u = |i: usize, j: usize| Matrix::unit(3, 4, i - 1, j - 1);
    vec![
        u(1, 1).sub(&u(3, 3)),
        u(1, 2).sub(&u(3, 4)),
        u(1, 3).add(&u(3, 1)),
        u(1, 4).add(&u(3, 2)),
        u(2, 1).add(&u(3, 2)),
        u(2, 2).sub(&u(3, 1)),
        u(2, 3).sub(&u(3, 4)),
        u(2, 4).add(&u(3, 3)),
    ]
}

/// The standard projection onto `V^1 = ⟨e_1, e_2, e_4⟩` with its frame.
pub fn standard_tangent() -> MsTangent {
    let frame = Frame::standard();
    let p = Projection::onto(&frame.uvw()).expect("V^1 is 3-dimensional");
    ms_tangent(&p, &frame).expect("standard frame matches V^1")
}
