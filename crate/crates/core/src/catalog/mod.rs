//! Associative subalgebras of (R^7, ×), the gradings they induce on g2,
//! the explicit principal subalgebra and the maximal subtriples of m_4^V.

mod maximal;
mod tds;

pub use maximal::{maximal_lts, maximality_probe, odd_carrier, MaximalKind, ProbeReport};
pub use tds::{
    adapted_conjugate, bracket_relations, exp_of, generic_assoc, is_adapted, is_principal, principal_char_poly, principal_tds,
    Adaptedness, PrincipalTds,
};

use crate::cross7::cross;
use crate::error::{Error, Result};
use crate::g2alg::{Frame, G2};
use crate::linalg::{LinMap7, Matrix, Subspace, Vec7};
use crate::matmodel::Projection;

/// `dim V = 3` and `V × V ⊆ V`.
pub fn is_associative(v: &Subspace) -> bool {
    if v.ambient_dim() != 7 || v.dim() != 3 {
        return false;
    }
    let b: Vec<Vec7> = v.basis().iter().map(|r| Vec7::from_slice(r)).collect();
    b.iter().all(|x| b.iter().all(|y| v.contains(cross(x, y).as_slice())))
}

/// Is `f` an automorphism of `(R^7, ×)`? Checked on basis pairs.
pub fn is_automorphism(f: &LinMap7) -> bool {
    (1..=7).all(|a| {
        (a + 1..=7).all(|b| {
            let (x, y) = (Vec7::e(a), Vec7::e(b));
            Vec7::apply(f, &cross(&x, &y)) == cross(&Vec7::apply(f, &x), &Vec7::apply(f, &y))
        })
    })
}

fn normalize(v: &Vec7) -> Result<Vec7> {
    let n = v.norm2().sqrt().map_err(|_| {
        Error::SqrtOutsideField(format!("|{v:?}| is not in the working field; supply a frame-friendly basis"))
    })?;
    Ok(v.scale(&n.inv()?))
}

fn subspace_of(vs: &[Vec7]) -> Subspace {
    Subspace::from_span(7, vs.iter().map(Vec7::to_vec).collect())
}

/// An associative subalgebra `V`, optionally with an orthonormal frame
/// `{i, j, k = i × j}` and a unit `ℓ ⊥ V`.
#[derive(Clone, Debug)]
pub struct AssocSubalg {
    space: Subspace,
    frame: Option<Frame>,
    projection: Projection,
}

impl AssocSubalg {
    /// Gram–Schmidt over the field; fails when a norm has no square root in it.
    pub fn new(space: Subspace) -> Result<Self> {
        let mut a = AssocSubalg::unframed(space)?;
        let b: Vec<Vec7> = a.space.basis().iter().map(|r| Vec7::from_slice(r)).collect();
        let i = normalize(&b[0])?;
        let j0 = &b[1] - &i.scale(&b[1].dot(&i));
        let j = normalize(&j0)?;
        let perp = a.space.orthogonal_complement();
        let l = normalize(&Vec7::from_slice(&perp.basis()[0]))?;
        a.frame = Some(Frame::new(i, j, l)?);
        Ok(a)
    }

    /// Only associativity is required; the frame stays unset.
    pub fn unframed(space: Subspace) -> Result<Self> {
        if !is_associative(&space) {
            return Err(Error::Precondition("subspace is not an associative subalgebra".into()));
        }
        let basis: Vec<Vec7> = space.basis().iter().map(|r| Vec7::from_slice(r)).collect();
        let projection = Projection::onto(&basis)?;
        Ok(AssocSubalg { space, frame: None, projection })
    }

    pub fn from_frame(frame: Frame) -> Result<Self> {
        frame.validate()?;
        let mut a = AssocSubalg::unframed(subspace_of(&frame.uvw()))?;
        a.frame = Some(frame);
        Ok(a)
    }

    /// `V^1 = ⟨e_1, e_2, e_4⟩` with the standard frame.
    pub fn standard() -> Self {
        AssocSubalg::from_frame(Frame::standard()).expect("standard frame")
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn complement(&self) -> Subspace {
        self.space.orthogonal_complement()
    }

    pub fn frame(&self) -> Result<&Frame> {
        self.frame.as_ref().ok_or_else(|| Error::Precondition("subalgebra carries no frame".into()))
    }

    pub fn projection(&self) -> &Projection {
        &self.projection
    }

    /// `θ_V = 2π_V − 1`: the identity on `V`, minus the identity on `V^⊥`.
    pub fn theta(&self) -> LinMap7 {
        self.projection.theta()
    }

    pub fn grading(&self) -> Grading {
        let g = G2::get();
        let t = self.theta();
        let zero = Subspace::zero(49);
        let even = g.preimage(&zero, |d| d.mul(&t).sub(&t.mul(d)).into_flat());
        let odd = g.preimage(&zero, |d| d.mul(&t).add(&t.mul(d)).into_flat());
        Grading { even, odd }
    }
}

/// `g2 = h_4^V ⊕ m_4^V` in g2 coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub even: Subspace,
    pub odd: Subspace,
}

impl Grading {
    /// Direct sum filling g2 and `[g_i, g_j] ⊆ g_{i+j}` on bases.
    pub fn is_consistent(&self) -> bool {
        let g = G2::get();
        let sum = self.even.sum(&self.odd).expect("same ambient");
        if sum.dim() != g.dim() || self.even.dim() + self.odd.dim() != g.dim() {
            return false;
        }
        let parts = [&self.even, &self.odd];
        (0..2).all(|a| {
            (0..2).all(|b| {
                let target = parts[(a + b) % 2];
                parts[a].basis().iter().all(|x| parts[b].basis().iter().all(|y| target.contains(&g.bracket(x, y))))
            })
        })
    }
}

/// `h_2^u = {d ∈ g2 : d(u) = 0}`
pub fn annihilator_subalg(u: &Vec7) -> Result<Subspace> {
    if u.is_zero() {
        return Err(Error::Precondition("annihilator of the zero vector".into()));
    }
    Ok(G2::get().preimage(&Subspace::zero(7), |d| Vec7::apply(d, u).to_vec()))
}

/// Is the subspace of g2 closed under the bracket?
pub fn is_subalgebra(s: &Subspace) -> bool {
    let g = G2::get();
    let b = s.basis();
    b.iter().all(|x| b.iter().all(|y| s.contains(&g.bracket(x, y))))
}

/// `(dim V∩W, dim V∩W^⊥, dim V^⊥∩W, dim V^⊥∩W^⊥)`
pub fn intersection_profile(v: &AssocSubalg, w: &AssocSubalg) -> [usize; 4] {
    let (vp, wp) = (v.complement(), w.complement());
    let i = |a: &Subspace, b: &Subspace| a.intersect(b).expect("same ambient").dim();
    [i(v.space(), w.space()), i(v.space(), &wp), i(&vp, w.space()), i(&vp, &wp)]
}

/// The configurations an intersection profile can exhibit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileCase {
    Equal,
    /// `W ∩ V ≠ 0 ≠ W ∩ V^⊥`
    Meeting,
    /// `V ∩ W ≠ 0`, `W ∩ V^⊥ = 0`
    A,
    /// `V ∩ W = 0`, the three other intersections are lines
    B,
    /// only `V^⊥ ∩ W^⊥` is nonzero, and it is a line
    C,
}

pub fn classify_profile(p: [usize; 4]) -> Option<ProfileCase> {
    match p {
        [3, 0, 0, 4] => Some(ProfileCase::Equal),
        [1, 2, 2, 2] => Some(ProfileCase::Meeting),
        [a, _, 0, _] if a > 0 => Some(ProfileCase::A),
        [0, 1, 1, 1] => Some(ProfileCase::B),
        [0, 0, 0, 1] => Some(ProfileCase::C),
        _ => None,
    }
}

/// `θ_V θ_W = θ_W θ_V` and `θ_W(V) ⊆ V`, in that order.
pub fn theta_commutation(v: &AssocSubalg, w: &AssocSubalg) -> (bool, bool) {
    let (tv, tw) = (v.theta(), w.theta());
    let commute = tv.mul(&tw) == tw.mul(&tv);
    let invariant = v.space().basis().iter().all(|x| v.space().contains(&tw.mul_vec(x)));
    (commute, invariant)
}

/// `W = ⟨e_1, e_3, e_7⟩`, meeting `V^1` in `⟨i⟩` and `V^{1⊥}` in `⟨ℓ, i × ℓ⟩`.
pub fn meeting_partner() -> AssocSubalg {
    let f = Frame::standard();
    AssocSubalg::from_frame(Frame::new(f.i.clone(), f.l.clone(), f.j.clone()).expect("frame")).expect("associative")
}

pub(crate) fn g2_span(ms: &[Matrix]) -> Result<Subspace> {
    G2::get().span(ms)
}
