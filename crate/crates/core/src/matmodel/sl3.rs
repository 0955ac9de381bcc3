use rayon::prelude::*;

use super::{m34_triple, map_from_rows, matches_template};
use crate::error::{Error, Result};
use crate::g2alg::Frame;
use crate::linalg::{LinMap7, Matrix, Subspace};
use crate::lts::{Ambient, LtsCarrier};
use crate::scalar::Scalar;

/// `(a23 − a32, a31 − a13, a12 − a21)`
pub fn alpha(m: &Matrix) -> [Scalar; 3] {
    [&m[(1, 2)] - &m[(2, 1)], &m[(2, 0)] - &m[(0, 2)], &m[(0, 1)] - &m[(1, 0)]]
}

fn alpha_col(m: &Matrix) -> Matrix {
    Matrix::from_cols(&[alpha(m).to_vec()])
}

/// The untwisted product `m1 m2ᵗ m3 − m2 m1ᵗ m3 + m3 m2ᵗ m1 − m3 m1ᵗ m2`.
pub fn doslts(m1: &Matrix, m2: &Matrix, m3: &Matrix) -> Matrix {
    m34_triple(m1, m2, m3)
}

pub fn gamma(m1: &Matrix, m2: &Matrix, m3: &Matrix) -> Matrix {
    let (a1, a2, a3) = (alpha_col(m1), alpha_col(m2), alpha_col(m3));
    let skew = a1.mul(&a2.transpose()).sub(&a2.mul(&a1.transpose()));
    skew.mul(m3).add(&a3.mul(&a2.transpose()).mul(m1)).sub(&a3.mul(&a1.transpose()).mul(m2))
}

/// `{m1, m2, m3} = [m1, m2, m3] + γ(m1, m2, m3)`, without the trace check.
pub fn sl3_product(m1: &Matrix, m2: &Matrix, m3: &Matrix) -> Matrix {
    doslts(m1, m2, m3).add(&gamma(m1, m2, m3))
}

fn require_sl3(m: &Matrix) -> Result<()> {
    if m.shape() != (3, 3) {
        return Err(Error::DimensionMismatch { expected: 3, got: m.rows() });
    }
    if !m.trace().is_zero() {
        return Err(Error::Precondition(format!("trace {} ≠ 0", m.trace())));
    }
    Ok(())
}

pub fn sl3_triple(m1: &Matrix, m2: &Matrix, m3: &Matrix) -> Result<Matrix> {
    for m in [m1, m2, m3] {
        require_sl3(m)?;
    }
    let out = sl3_product(m1, m2, m3);
    if !out.trace().is_zero() {
        return Err(Error::Invariant("twisted product left sl3".into()));
    }
    Ok(out)
}

/// Forget the first column of a tangent row matrix.
pub fn to_sl3(r: &Matrix) -> Result<Matrix> {
    if !matches_template(r) {
        return Err(Error::Precondition("row matrix does not match the M'_S template".into()));
    }
    Ok(r.block(0, 3, 1, 4))
}

/// Inverse of [`to_sl3`]: `f ↦ (α(f) | f)`.
pub fn from_sl3(f: &Matrix) -> Result<Matrix> {
    require_sl3(f)?;
    let a = alpha(f);
    Ok(Matrix::from_fn(3, 4, |r, c| if c == 0 { a[r].clone() } else { f[(r, c - 1)].clone() }))
}

/// Matrix of `L⁻L⁺ : u ↦ ℓ × (ℓ × u)` on `{i, j, k}`.
pub fn l_minus_l_plus(frame: &Frame) -> Matrix {
    let u = frame.uvw();
    Matrix::from_fn(3, 3, |r, c| {
        let img = crate::cross7::cross(&frame.l, &crate::cross7::cross(&frame.l, &u[c]));
        img.dot(&u[r])
    })
}

/// The odd skew derivation of g2 matching `f` in the standard frame.
pub fn sl3_to_g2(f: &Matrix) -> Result<LinMap7> {
    Ok(map_from_rows(&Frame::standard(), &from_sl3(f)?, -1))
}

/// `⟨d, d'⟩ = α(d)ᵗα(d') + tr(d d'ᵗ)`
pub fn metric(m1: &Matrix, m2: &Matrix) -> Scalar {
    let (a, b) = (alpha(m1), alpha(m2));
    crate::linalg::dot(&a, &b) + m1.frobenius(m2)
}

/// `d_{s,t}`, the matrix form of `⟨h_2, h_3⟩`.
pub fn d_st(s: &Scalar, t: &Scalar) -> Matrix {
    let r = Scalar::sqrt15() * Scalar::frac(1, 3);
    let z = Scalar::zero();
    Matrix::from_rows(vec![
        vec![-(s * &Scalar::int(2)), z.clone(), z],
        vec![-(&r * t), s.clone(), t.clone()],
        vec![&r * s, -t, s.clone()],
    ])
}

/// Traceless 3×3 matrices, flattened row-major.
pub fn sl3_space() -> Subspace {
    Matrix::from_rows(vec![Matrix::identity(3).into_flat()]).kernel()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sl3Kind {
    Sphere,
    Sym5,
    Col4,
    Refl4,
    /// Metric orthocomplement of `Refl4`.
    Gotro,
}

impl Sl3Kind {
    pub const MAXIMAL: [Sl3Kind; 4] = [Sl3Kind::Sphere, Sl3Kind::Sym5, Sl3Kind::Col4, Sl3Kind::Refl4];

    pub fn name(self) -> &'static str {
        match self {
            Sl3Kind::Sphere => "sphere",
            Sl3Kind::Sym5 => "sym5",
            Sl3Kind::Col4 => "col4",
            Sl3Kind::Refl4 => "refl4",
            Sl3Kind::Gotro => "gotro",
        }
    }

    pub fn basis(self) -> Vec<Matrix> {
        let m = |rows: &[&[i64]]| Matrix::from_ints(rows);
        match self {
            Sl3Kind::Sphere => vec![d_st(&Scalar::one(), &Scalar::zero()), d_st(&Scalar::zero(), &Scalar::one())],
            Sl3Kind::Sym5 => vec![
                m(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, -1]]),
                m(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
                m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]),
                m(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]]),
                m(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]),
            ],
            Sl3Kind::Col4 => vec![
                m(&[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]),
                m(&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]),
                m(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
                m(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]),
            ],
            Sl3Kind::Refl4 => vec![
                m(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, -1]]),
                m(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
                m(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]),
                m(&[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]),
            ],
            Sl3Kind::Gotro => vec![
                m(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]),
                m(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]),
                m(&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]),
                m(&[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]),
            ],
        }
    }

    pub fn space(self) -> Subspace {
        Subspace::from_span(9, self.basis().into_iter().map(Matrix::into_flat).collect())
    }
}

/// The twisted triple system on sl3, or one of its catalogued subsystems.
pub fn sl3_catalog(kind: Option<Sl3Kind>) -> Result<LtsCarrier> {
    let space = kind.map_or_else(sl3_space, Sl3Kind::space);
    LtsCarrier::new(Ambient::Sl3Twisted, space)
}

/// Outcome of the constant-curvature check on the sphere family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureReport {
    /// `c` with `{d1, d2, d3} = c (s1t2 − s2t1) d_{t3,−s3}`.
    pub triple_coefficient: Scalar,
    /// `c` with `⟨d1,d3⟩d2 − ⟨d2,d3⟩d1 = c (s1t2 − s2t1) d_{t3,−s3}`.
    pub metric_coefficient: Scalar,
    /// `κ` with `R(x, y)z = κ (⟨x,z⟩y − ⟨y,z⟩x)`, `R = −{·,·,·}`.
    pub curvature: Scalar,
    pub samples: usize,
}

/// Fit `lhs = c·rhs` over all samples; `rhs = 0` forces `lhs = 0`.
fn common_factor(pairs: &[(Matrix, Matrix)]) -> Result<Scalar> {
    let mut c: Option<Scalar> = None;
    for (lhs, rhs) in pairs {
        if rhs.is_zero() {
            if !lhs.is_zero() {
                return Err(Error::Inconsistent("nonzero value where the model predicts 0".into()));
            }
            continue;
        }
        let p = rhs.as_flat().iter().position(|x| !x.is_zero()).expect("nonzero rhs");
        let here = lhs.as_flat()[p].checked_div(&rhs.as_flat()[p])?;
        if lhs != &rhs.scale(&here) {
            return Err(Error::Inconsistent("values are not proportional to the model".into()));
        }
        match &c {
            None => c = Some(here),
            Some(prev) if *prev != here => {
                return Err(Error::Inconsistent(format!("factor {here} differs from {prev}")));
            }
            _ => {}
        }
    }
    c.ok_or_else(|| Error::Inconsistent("only degenerate samples".into()))
}

/// Evaluate both sphere identities on `s_i, t_i ∈ range` (all 6-tuples)
/// and extract the constants.
pub fn curvature_check(range: std::ops::RangeInclusive<i64>) -> Result<CurvatureReport> {
    let vals: Vec<i64> = range.collect();
    let pts: Vec<(i64, i64)> = vals.iter().flat_map(|&s| vals.iter().map(move |&t| (s, t))).collect();
    let mut tuples = Vec::with_capacity(pts.len().pow(3));
    for &p in &pts {
        for &q in &pts {
            for &r in &pts {
                tuples.push([p, q, r]);
            }
        }
    }
    let d = |(s, t): (i64, i64)| d_st(&Scalar::int(s), &Scalar::int(t));
    let rows: Vec<Result<[(Matrix, Matrix); 3]>> = tuples
        .par_iter()
        .map(|&[p, q, r]| {
            let (d1, d2, d3) = (d(p), d(q), d(r));
            let delta = Scalar::int(p.0 * q.1 - q.0 * p.1);
            let model = d((r.1, -r.0)).scale(&delta);
            let prod = sl3_triple(&d1, &d2, &d3)?;
            let form = d2.scale(&metric(&d1, &d3)).sub(&d1.scale(&metric(&d2, &d3)));
            Ok([(prod.clone(), model.clone()), (form.clone(), model), (prod.neg(), form)])
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let column = |k: usize| rows.iter().map(|r| r[k].clone()).collect::<Vec<_>>();
    Ok(CurvatureReport {
        triple_coefficient: common_factor(&column(0))?,
        metric_coefficient: common_factor(&column(1))?,
        curvature: common_factor(&column(2))?,
        samples: rows.len(),
    })
}
