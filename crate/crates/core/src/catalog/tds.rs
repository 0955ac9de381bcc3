use rand::Rng;

use super::{g2_span, is_automorphism, is_subalgebra, AssocSubalg};
use crate::cross7::cross;
use crate::error::{Error, Result};
use crate::g2alg::{d_op, Frame, G2};
use crate::linalg::{LinMap7, Matrix, Poly, Subspace, Vec7};
use crate::scalar::Scalar;

/// A principal three-dimensional subalgebra with a basis satisfying
/// `[h_i, h_{i+1}] = h_{i+2}` (indices mod 3).
#[derive(Clone, Debug)]
pub struct PrincipalTds {
    pub frame: Frame,
    /// Normalised basis.
    pub h: [LinMap7; 3],
    /// The defining combinations of `D` operators, unnormalised; their
    /// `h_2, h_3` are twice the normalised ones.
    pub literal: [LinMap7; 3],
}

/// `λ(λ² + 1)(λ² + 4)(λ² + 9)`
pub fn principal_char_poly() -> Poly {
    let q = |c: i64| Poly::from_ints(&[c, 0, 1]);
    Poly::x().mul(&q(1)).mul(&q(4)).mul(&q(9))
}

/// `[h_1,h_2] = h_3`, `[h_2,h_3] = h_1`, `[h_3,h_1] = h_2`; a failing relation
/// is reported as e.g. `[h2,h3]=4·h1` when the bracket is a multiple.
pub fn bracket_relations(h: &[LinMap7; 3]) -> Vec<(String, bool)> {
    (0..3)
        .map(|i| {
            let (a, b, c) = (i, (i + 1) % 3, (i + 2) % 3);
            let br = h[a].commutator(&h[b]);
            let ok = br == h[c];
            let label = if ok {
                format!("[h{},h{}]=h{}", a + 1, b + 1, c + 1)
            } else {
                describe_multiple(&br, &h[c], &format!("[h{},h{}]", a + 1, b + 1), &format!("h{}", c + 1))
            };
            (label, ok)
        })
        .collect()
}

fn describe_multiple(x: &Matrix, y: &Matrix, xl: &str, yl: &str) -> String {
    let p = y.as_flat().iter().position(|v| !v.is_zero());
    if let Some(p) = p {
        if let Ok(c) = x.as_flat()[p].checked_div(&y.as_flat()[p]) {
            if *x == y.scale(&c) {
                return format!("{xl}={c}·{yl}");
            }
        }
    }
    format!("{xl}∉R·{yl}")
}

impl PrincipalTds {
    pub fn span(&self) -> Subspace {
        g2_span(&self.h).expect("basis lies in g2")
    }
}

/// The principal subalgebra built from `D` operators on a frame
/// `{i, j, k, ℓ}`; every defining property is re-verified.
pub fn principal_tds(frame: &Frame) -> Result<PrincipalTds> {
    frame.validate()?;
    let Frame { i, j, k, l } = frame;
    let il = cross(i, l);
    let d = |x: &Vec7, y: &Vec7| d_op(x, y);
    let r32 = Scalar::sqrt6() * Scalar::frac(1, 2);
    let r52_3 = Scalar::sqrt10() * Scalar::frac(1, 6);
    let h1 = d(l, &il)?.scale(&Scalar::int(4)).add(&d(j, k)?.scale(&Scalar::int(5))).scale(&Scalar::frac(1, 6));
    let h2 = d(i, &il)?.scale(&r32).add(&d(l, j)?.add(&d(&il, k)?).scale(&r52_3));
    let h3 = d(i, l)?.scale(&r32).neg().add(&d(l, k)?.sub(&d(&il, j)?).scale(&r52_3));
    let half = Scalar::frac(1, 2);
    let h = [h1.clone(), h2.scale(&half), h3.scale(&half)];
    let tds = PrincipalTds { frame: frame.clone(), h, literal: [h1, h2, h3] };

    for (label, ok) in bracket_relations(&tds.h) {
        if !ok {
            return Err(Error::Invariant(format!("principal basis: {label}")));
        }
    }
    if tds.h[0].char_poly() != principal_char_poly() {
        return Err(Error::Invariant(format!("char poly of h1 is {}", tds.h[0].char_poly())));
    }
    let s = tds.span();
    if s.dim() != 3 || G2::get().normalizer(&s)? != s {
        return Err(Error::Invariant("principal subalgebra is not self-normalising".into()));
    }
    Ok(tds)
}

/// Three-dimensional subalgebra of g2 whose commutant in gl(7) is the
/// scalars, i.e. acting absolutely irreducibly on R^7.
pub fn is_principal(h: &Subspace) -> bool {
    if h.dim() != 3 || !is_subalgebra(h) {
        return false;
    }
    let g = G2::get();
    let ms: Vec<Matrix> = h.basis().iter().map(|c| g.element(c)).collect();
    let cols: Vec<Vec<Scalar>> = (0..49)
        .map(|p| {
            let x = Matrix::unit(7, 7, p / 7, p % 7);
            ms.iter().flat_map(|m| x.commutator(m).into_flat()).collect()
        })
        .collect();
    Matrix::from_cols(&cols).kernel().dim() == 1
}

/// Both adaptedness criteria for a principal `h` and an associative `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Adaptedness {
    /// `p_V(h) ⊆ h` with `p_V(d) = (d − θdθ)/2`.
    pub homogeneous: bool,
    pub odd_dim: usize,
}

impl Adaptedness {
    pub fn by_dimension(&self) -> bool {
        self.odd_dim == 2
    }
}

/// `h` is adapted to `V` iff it is graded; this must agree with
/// `dim(h ∩ m_4^V) = 2`, otherwise an internal-consistency error is raised.
pub fn is_adapted(h: &Subspace, v: &AssocSubalg) -> Result<Adaptedness> {
    if !is_principal(h) {
        return Err(Error::Precondition("not a principal subalgebra".into()));
    }
    let g = G2::get();
    let t = v.theta();
    let half = Scalar::frac(1, 2);
    let homogeneous = h.basis().iter().all(|c| {
        let d = g.element(c);
        let p = d.sub(&t.mul(&d).mul(&t)).scale(&half);
        g.coords(&p).map(|pc| h.contains(&pc)).unwrap_or(false)
    });
    let odd_dim = h.intersect(&v.grading().odd)?.dim();
    let a = Adaptedness { homogeneous, odd_dim };
    if a.homogeneous != a.by_dimension() {
        return Err(Error::Inconsistent(format!("homogeneity {homogeneous} but dim(h ∩ m_4^V) = {odd_dim}")));
    }
    Ok(a)
}

/// `cos t, sin t` for the rational point of the unit circle with slope `u`.
fn circle_point(u: &Scalar) -> Result<(Scalar, Scalar)> {
    let u2 = u * u;
    let den = (Scalar::one() + &u2).inv()?;
    Ok(((Scalar::one() - &u2) * &den, Scalar::int(2) * u * &den))
}

/// `exp(tH)` for `H` with the principal spectrum `{0, ±i, ±2i, ±3i}`, where
/// `(cos t, sin t)` is the rational circle point of slope `u`:
/// `P_0 + Σ_k cos(kt) P_k + (sin(kt)/k) H P_k` with `P_k` the spectral
/// projectors of `H²`.
pub fn exp_of(h: &LinMap7, u: &Scalar) -> Result<LinMap7> {
    if h.char_poly() != principal_char_poly() {
        return Err(Error::Precondition("generator does not have the principal spectrum".into()));
    }
    let (c1, s1) = circle_point(u)?;
    let c2 = &(&c1 * &c1) - &(&s1 * &s1);
    let s2 = Scalar::int(2) * &s1 * &c1;
    let c3 = &(&c1 * &c2) - &(&s1 * &s2);
    let s3 = &(&s1 * &c2) + &(&c1 * &s2);
    let cs = [(Scalar::one(), Scalar::zero()), (c1, s1), (c2, s2), (c3, s3)];
    let a = h.mul(h);
    let id = Matrix::identity(7);
    let mut f = Matrix::zeros(7, 7);
    for k in 0..4i64 {
        let mut p = id.clone();
        for j in (0..4i64).filter(|&j| j != k) {
            let factor = a.add(&id.scale(&Scalar::int(j * j))).scale(&Scalar::frac(1, j * j - k * k));
            p = p.mul(&factor);
        }
        let (c, s) = &cs[k as usize];
        f.axpy(c, &p);
        if k > 0 {
            f.axpy(&(s * &Scalar::frac(1, k)), &h.mul(&p));
        }
    }
    if f.transpose().mul(&f) != id || !is_automorphism(&f) {
        return Err(Error::Invariant("exp(tH) is not an automorphism".into()));
    }
    Ok(f)
}

/// `F(V)` for `F = exp(tH)`, `H = a·h_2 + b·h_3` an odd element of the
/// principal subalgebra; `(a, b)` and `t` come from the slopes `w`, `u`.
/// Such `F` normalises `h`, so `h` stays adapted to `F(V)`.
pub fn adapted_conjugate(tds: &PrincipalTds, v: &AssocSubalg, u: &Scalar, w: &Scalar) -> Result<AssocSubalg> {
    let (a, b) = circle_point(w)?;
    let gen = tds.h[1].scale(&a).add(&tds.h[2].scale(&b));
    let f = exp_of(&gen, u)?;
    let image: Vec<Vec<Scalar>> = v.space().basis().iter().map(|x| f.mul_vec(x)).collect();
    AssocSubalg::unframed(Subspace::from_span(7, image))
}

/// `⟨x, y, x × y⟩` for small random integer `x, y`.
pub fn generic_assoc(rng: &mut impl Rng) -> AssocSubalg {
    loop {
        let x = Vec7::from_ints(std::array::from_fn(|_| rng.gen_range(-3..=3)));
        let y = Vec7::from_ints(std::array::from_fn(|_| rng.gen_range(-3..=3)));
        let xy = cross(&x, &y);
        if xy.is_zero() {
            continue;
        }
        let s = Subspace::from_span(7, vec![x.to_vec(), y.to_vec(), xy.to_vec()]);
        return AssocSubalg::unframed(s).expect("two independent vectors generate a quaternion subalgebra");
    }
}
