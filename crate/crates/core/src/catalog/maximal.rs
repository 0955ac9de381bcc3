use rand::Rng;

use super::AssocSubalg;
use crate::error::{Error, Result};
use crate::g2alg::G2;
use crate::linalg::{Subspace, Vec7};
use crate::lts::{generated_subtriple, Ambient, LtsCarrier};
use crate::scalar::Scalar;

use super::{annihilator_subalg, tds::is_adapted};

/// The four families of maximal subtriples of `m_4^V`.
#[derive(Clone, Debug)]
pub enum MaximalKind {
    /// `h ∩ m_4^V` for a principal `h` adapted to `V`.
    T1(Subspace),
    /// `h_2^ℓ ∩ m_4^V`, `0 ≠ ℓ ∈ V^⊥`.
    T2(Vec7),
    /// `h_2^i ∩ m_4^V`, `0 ≠ i ∈ V`.
    T3(Vec7),
    /// `h_4^W ∩ m_4^V` with `W ∩ V ≠ 0 ≠ W ∩ V^⊥`.
    T4(AssocSubalg),
}

impl MaximalKind {
    pub fn expected_dim(&self) -> usize {
        match self {
            MaximalKind::T1(_) => 2,
            MaximalKind::T2(_) => 5,
            MaximalKind::T3(_) | MaximalKind::T4(_) => 4,
        }
    }
}

/// `m_4^V` as a triple system inside g2.
pub fn odd_carrier(v: &AssocSubalg) -> Result<LtsCarrier> {
    LtsCarrier::new(Ambient::G2(G2::shared()), v.grading().odd)
}

pub fn maximal_lts(v: &AssocSubalg, kind: &MaximalKind) -> Result<LtsCarrier> {
    let odd = v.grading().odd;
    let part = match kind {
        MaximalKind::T1(h) => {
            if !is_adapted(h, v)?.homogeneous {
                return Err(Error::Precondition("principal subalgebra is not adapted to V".into()));
            }
            h.clone()
        }
        MaximalKind::T2(l) => {
            if l.is_zero() || !v.complement().contains(l.as_slice()) {
                return Err(Error::Precondition("ℓ must be a nonzero vector of V^⊥".into()));
            }
            annihilator_subalg(l)?
        }
        MaximalKind::T3(i) => {
            if i.is_zero() || !v.space().contains(i.as_slice()) {
                return Err(Error::Precondition("i must be a nonzero vector of V".into()));
            }
            annihilator_subalg(i)?
        }
        MaximalKind::T4(w) => {
            let meets_v = !v.space().intersect(w.space())?.is_zero();
            let meets_perp = !v.complement().intersect(w.space())?.is_zero();
            if !(meets_v && meets_perp) {
                // the remaining configurations reduce to T2 or T3, or give a
                // non-maximal subtriple
                return Err(Error::Precondition(format!(
                    "W must meet both V and V^⊥ (W ∩ V ≠ 0: {meets_v}, W ∩ V^⊥ ≠ 0: {meets_perp})"
                )));
            }
            w.grading().even
        }
    };
    let space = part.intersect(&odd)?;
    if space.dim() != kind.expected_dim() {
        return Err(Error::Invariant(format!("dimension {} (expected {})", space.dim(), kind.expected_dim())));
    }
    LtsCarrier::new(Ambient::G2(G2::shared()), space)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub trials: usize,
    pub passes: usize,
    /// Dimension of the first proper closure together with the trial index.
    pub witness: Option<(usize, usize)>,
}

impl ProbeReport {
    pub fn all_pass(&self) -> bool {
        self.passes == self.trials
    }
}

/// Adjoin a random element of `ambient \ t` (integer coordinates in ±3 on
/// the ambient basis) and close; maximality predicts the whole ambient.
pub fn maximality_probe(t: &LtsCarrier, ambient: &LtsCarrier, trials: usize, rng: &mut impl Rng) -> Result<ProbeReport> {
    if !ambient.space().contains_subspace(t.space())? {
        return Err(Error::Precondition("subtriple is not inside the ambient".into()));
    }
    if t.dim() == ambient.dim() {
        return Err(Error::Precondition("subtriple equals the ambient".into()));
    }
    let seed = Subspace::from_span(ambient.dim(), t.space().basis().iter().map(|v| ambient.to_coords(v)).collect::<Result<_>>()?);
    let mut passes = 0;
    let mut witness = None;
    for trial in 0..trials {
        let x = loop {
            let c: Vec<Scalar> = (0..ambient.dim()).map(|_| Scalar::int(rng.gen_range(-3..=3))).collect();
            if !seed.contains(&c) {
                break c;
            }
        };
        let mut s = seed.clone();
        s.extend(x);
        let start = Subspace::from_span(ambient.space().ambient_dim(), s.basis().iter().map(|c| ambient.from_coords(c)).collect());
        let closure = generated_subtriple(&start, ambient)?;
        if closure.dim() == ambient.dim() {
            passes += 1;
        } else if witness.is_none() {
            witness = Some((trial, closure.dim()));
        }
    }
    Ok(ProbeReport { trials, passes, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{meeting_partner, principal_tds};
    use crate::g2alg::Frame;
    use crate::lts::{check_axioms, envelope_dim};
    use rand::SeedableRng;

    fn kinds() -> Vec<MaximalKind> {
        let f = Frame::standard();
        let h = principal_tds(&f).unwrap().span();
        vec![MaximalKind::T1(h), MaximalKind::T2(f.l.clone()), MaximalKind::T3(f.i.clone()), MaximalKind::T4(meeting_partner())]
    }

    #[test]
    fn dims_axioms_envelopes() {
        let v = AssocSubalg::standard();
        let mut env = Vec::new();
        for k in kinds() {
            let t = maximal_lts(&v, &k).unwrap();
            assert_eq!(t.dim(), k.expected_dim());
            assert!(check_axioms(&t).all_pass());
            env.push(envelope_dim(&t).unwrap());
        }
        assert_eq!(env, [3, 8, 8, 6]);
    }

    #[test]
    fn preconditions() {
        let v = AssocSubalg::standard();
        assert!(maximal_lts(&v, &MaximalKind::T2(Vec7::e(1))).is_err());
        assert!(maximal_lts(&v, &MaximalKind::T3(Vec7::e(3))).is_err());
        assert!(maximal_lts(&v, &MaximalKind::T4(v.clone())).is_err());
    }

    #[test]
    fn probe_t2() {
        let v = AssocSubalg::standard();
        let amb = odd_carrier(&v).unwrap();
        let t = maximal_lts(&v, &MaximalKind::T2(Vec7::e(3))).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let r = maximality_probe(&t, &amb, 3, &mut rng).unwrap();
        assert!(r.all_pass());
        assert!(maximality_probe(&amb, &amb, 1, &mut rng).is_err());
    }

    #[test]
    fn probe_rejects_non_maximal() {
        // a single vector generates only its own line
        let amb = odd_carrier(&AssocSubalg::standard()).unwrap();
        let zero = LtsCarrier::new(amb.ambient().clone(), Subspace::zero(amb.space().ambient_dim())).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let r = maximality_probe(&zero, &amb, 4, &mut rng).unwrap();
        assert_eq!((r.passes, r.witness), (0, Some((0, 1))));
    }
}
