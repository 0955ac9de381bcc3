//! The check registry. Every check returns `Err(witness)` on failure.

use std::sync::{Arc, OnceLock};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::{
    adapted_conjugate, annihilator_subalg, bracket_relations, classify_profile, generic_assoc, intersection_profile,
    is_adapted, maximal_lts, maximality_probe, meeting_partner, odd_carrier, principal_char_poly, principal_tds,
    AssocSubalg, Grading, MaximalKind, PrincipalTds, ProfileCase,
};
use crate::cross7::{self, associator, cross, induced_bilinear, omega, omega_form, Octonion};
use crate::error::Error;
use crate::g2alg::{d_op, is_derivation, is_skew, Frame, G2};
use crate::linalg::{is_negative_definite, Matrix, Poly, Subspace, Vec7};
use crate::lts::{abstract_envelope_dim, check_axioms, envelope_dim, AbstractProduct, Ambient, LtsCarrier};
use crate::matmodel::{
    curvature_check, from_sl3, gr3_tangent, in_ms_prime, l_minus_l_plus, m34_triple, matches_template, metric, row_basis,
    satisfies_idnoc, sl3_catalog, sl3_space, sl3_triple, standard_tangent, template_third_row, to_sl3, CurvatureReport,
    MsTangent, Sl3Kind,
};
use crate::scalar::Scalar;

pub type Outcome = std::result::Result<(), String>;

/// Shared, read-only inputs of a run.
#[derive(Clone)]
pub struct Context {
    pub g2: Arc<G2>,
    pub trials: usize,
}

pub struct Check {
    pub id: &'static str,
    pub anchor: &'static str,
    /// Checks whose failure makes this one meaningless.
    pub requires: &'static [&'static str],
    pub run: fn(&Context, &mut ChaCha8Rng) -> Outcome,
}

impl Check {
    /// The module stage, i.e. the first component of the id.
    pub fn stage(&self) -> &str {
        self.id.split('.').next().unwrap_or(self.id)
    }
}

/// Stage order; a stage only depends on the ones before it.
pub const STAGES: [&str; 7] = ["scalar", "linalg", "cross7", "g2alg", "lts", "catalog", "matmodel"];

fn w(e: Error) -> String {
    e.to_string()
}

fn ensure(cond: bool, witness: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

fn rand_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let mut c = || rng.gen_range(-3..=3);
    Scalar::from_ints(c(), c(), c(), c())
}

fn rand_vec7(rng: &mut ChaCha8Rng) -> Vec7 {
    Vec7::from_ints(std::array::from_fn(|_| rng.gen_range(-3..=3)))
}

fn rand_ratio(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

struct Standard {
    v: AssocSubalg,
    grading: Grading,
    tds: PrincipalTds,
    odd: LtsCarrier,
}

fn standard() -> &'static Standard {
    static S: OnceLock<Standard> = OnceLock::new();
    S.get_or_init(|| {
        let v = AssocSubalg::standard();
        let grading = v.grading();
        let tds = principal_tds(&Frame::standard()).expect("principal subalgebra in the standard frame");
        let odd = odd_carrier(&v).expect("m_4^V is closed");
        Standard { v, grading, tds, odd }
    })
}

fn kinds() -> [MaximalKind; 4] {
    let f = Frame::standard();
    [
        MaximalKind::T1(standard().tds.span()),
        MaximalKind::T2(f.l.clone()),
        MaximalKind::T3(f.i.clone()),
        MaximalKind::T4(meeting_partner()),
    ]
}

fn maximal(n: usize) -> std::result::Result<LtsCarrier, String> {
    static T: OnceLock<Vec<std::result::Result<LtsCarrier, String>>> = OnceLock::new();
    let all = T.get_or_init(|| kinds().iter().map(|k| maximal_lts(&standard().v, k).map_err(w)).collect());
    all[n].clone()
}

fn curvature() -> std::result::Result<CurvatureReport, String> {
    static C: OnceLock<std::result::Result<CurvatureReport, String>> = OnceLock::new();
    C.get_or_init(|| curvature_check(-2..=2).map_err(w)).clone()
}

fn tangent() -> &'static MsTangent {
    static T: OnceLock<MsTangent> = OnceLock::new();
    T.get_or_init(standard_tangent)
}

// ---- scalar ----

fn scalar_sign(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let cases = [
        (Scalar::from_ints(5, -2, 0, 0), 1),
        (Scalar::from_ints(-5, 2, 0, 0), -1),
        (Scalar::from_ints(-1, -1, 0, 1), 1),
        (Scalar::from_ints(0, 1, 1, -1), 1),
        (Scalar::zero(), 0),
    ];
    for (x, s) in cases {
        ensure(x.sign() == s, || format!("sign({x}) = {} (expected {s})", x.sign()))?;
    }
    ensure(&Scalar::sqrt6() * &Scalar::sqrt10() == &Scalar::int(2) * &Scalar::sqrt15(), || "√6·√10 ≠ 2√15".into())
}

fn scalar_field(ctx: &Context, rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..ctx.trials {
        let (x, y, z) = (rand_scalar(rng), rand_scalar(rng), rand_scalar(rng));
        if !x.is_zero() {
            ensure(&x * &x.inv().map_err(w)? == Scalar::one(), || format!("x·x⁻¹ ≠ 1 for x = {x}"))?;
        }
        ensure(&x * &(&y + &z) == &(&x * &y) + &(&x * &z), || format!("distributivity fails on {x}, {y}, {z}"))?;
        ensure(x.sign() * y.sign() == (&x * &y).sign(), || format!("sign is not multiplicative on {x}, {y}"))?;
    }
    Ok(())
}

// ---- linalg ----

fn rand_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix {
    // sparse enough for the rank to vary
    Matrix::from_fn(r, c, |_, _| if rng.gen_bool(0.4) { rand_scalar(rng) } else { Scalar::zero() })
}

fn linalg_rank_nullity(ctx: &Context, rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..ctx.trials {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=7));
        let a = rand_matrix(rng, r, c);
        let k = a.kernel();
        ensure(a.rank() + k.dim() == c, || format!("rank + nullity ≠ {c} for {a}"))?;
        for v in k.basis() {
            ensure(a.mul_vec(v).iter().all(Scalar::is_zero), || "kernel vector not annihilated".into())?;
        }
    }
    Ok(())
}

fn linalg_modular(ctx: &Context, rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..ctx.trials {
        let mut span = |n: usize| Subspace::from_span(7, (0..n).map(|_| rand_matrix(rng, 1, 7).into_flat()).collect());
        let (u, v) = (span(3), span(4));
        let (s, i) = (u.sum(&v).map_err(w)?, u.intersect(&v).map_err(w)?);
        ensure(u.dim() + v.dim() == s.dim() + i.dim(), || format!("dim formula fails for {u:?}, {v:?}"))?;
    }
    Ok(())
}

fn linalg_char_poly(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let d = Matrix::from_ints(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, -2]]);
    let p = d.char_poly();
    ensure(p == Poly::from_ints(&[0, -4, 0, 1]), || format!("char_poly(diag(0,2,−2)) = {p}"))
}

// ---- cross7 ----

fn cross_table(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    ensure(cross7::table().is_anticommutative(), || "table is not anticommutative".into())?;
    for i in 1..=7 {
        let m = |k: usize| Vec7::e((i + k - 1) % 7 + 1);
        ensure(cross(&m(0), &m(1)) == m(3), || format!("e_{i} × e_{{i+1}} ≠ e_{{i+3}}"))?;
        ensure(cross(&m(1), &m(3)) == m(0), || format!("e_{{i+1}} × e_{{i+3}} ≠ e_{i}"))?;
        ensure(cross(&m(3), &m(0)) == m(1), || format!("e_{{i+3}} × e_{i} ≠ e_{{i+1}}"))?;
    }
    Ok(())
}

fn cross_identity(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    for a in 1..=7 {
        for b in 1..=7 {
            for c in 1..=7 {
                let (x, y, z) = (Vec7::e(a), Vec7::e(b), Vec7::e(c));
                let lhs = &cross(&cross(&x, &y), &z) + &cross(&x, &cross(&y, &z));
                let two = Scalar::int(2);
                let rhs = &(&y.scale(&(&two * &x.dot(&z))) - &x.scale(&y.dot(&z))) - &z.scale(&x.dot(&y));
                ensure(lhs == rhs, || format!("(x×y)×z + x×(y×z) identity fails on (e{a}, e{b}, e{c})"))?;
                ensure(cross(&x, &y).dot(&z) == x.dot(&cross(&y, &z)), || format!("⟨x×y,z⟩ ≠ ⟨x,y×z⟩ on (e{a}, e{b}, e{c})"))?;
            }
        }
    }
    ensure(omega(&Vec7::e(1), &Vec7::e(2), &Vec7::e(4)) == Scalar::one(), || "Ω(e1,e2,e4) ≠ 1".into())
}

fn cross_gram(ctx: &Context, rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..ctx.trials {
        let (x, y) = (rand_vec7(rng), rand_vec7(rng));
        let p = cross(&x, &y);
        ensure(p.dot(&x).is_zero() && p.dot(&y).is_zero(), || format!("x×y not orthogonal for {x:?}, {y:?}"))?;
        let gram = &(&x.norm2() * &y.norm2()) - &(&x.dot(&y) * &x.dot(&y));
        ensure(p.norm2() == gram, || format!("‖x×y‖² ≠ Gram determinant for {x:?}, {y:?}"))?;
    }
    Ok(())
}

fn cross_beta(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let b = induced_bilinear(&omega_form()).map_err(w)?;
    let c = b[(0, 0)].clone();
    ensure(b == Matrix::identity(7).scale(&c), || format!("β_Ω is not a multiple of the identity: {b}"))?;
    ensure(c.sign() > 0, || format!("β_Ω = {c}·I is not positive"))
}

fn octonion_norm(ctx: &Context, rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..ctx.trials {
        let p = Octonion::new(Scalar::int(rng.gen_range(-3..=3)), rand_vec7(rng));
        let q = Octonion::new(Scalar::int(rng.gen_range(-3..=3)), rand_vec7(rng));
        ensure(p.mul(&q).norm() == &p.norm() * &q.norm(), || format!("n(pq) ≠ n(p)n(q) for {p:?}, {q:?}"))?;
        ensure(associator(&p, &p, &q).is_zero(), || format!("(p,p,q) ≠ 0 for {p:?}, {q:?}"))?;
    }
    let e = |i| Octonion::pure(Vec7::e(i));
    ensure(!associator(&e(1), &e(2), &e(3)).is_zero(), || "(e1,e2,e3) = 0".into())
}

// ---- g2alg ----

fn g2_dim(ctx: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let g = &ctx.g2;
    ensure(g.dim() == 14, || format!("dim Der(R^7,×) = {}", g.dim()))?;
    for (n, b) in g.basis().iter().enumerate() {
        ensure(is_skew(b) && is_derivation(b), || format!("basis element {n} is not a skew derivation"))?;
    }
    Ok(())
}

fn g2_jacobi(ctx: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let g = &ctx.g2;
    let n = g.dim();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (x, y, z) = (unit(n, a), unit(n, b), unit(n, c));
                let mut s = g.bracket(&g.bracket(&x, &y), &z);
                for t in [g.bracket(&g.bracket(&y, &z), &x), g.bracket(&g.bracket(&z, &x), &y)] {
                    for (u, v) in s.iter_mut().zip(t) {
                        *u += &v;
                    }
                }
                ensure(s.iter().all(Scalar::is_zero), || format!("Jacobi identity fails on basis triple ({a}, {b}, {c})"))?;
            }
        }
    }
    Ok(())
}

fn g2_cyclic(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let mut count = 0;
    for a in 1..=7 {
        for b in a + 1..=7 {
            for c in b + 1..=7 {
                let (x, y, z) = (Vec7::e(a), Vec7::e(b), Vec7::e(c));
                let s = d_op(&cross(&x, &y), &z)
                    .map_err(w)?
                    .add(&d_op(&cross(&y, &z), &x).map_err(w)?)
                    .add(&d_op(&cross(&z, &x), &y).map_err(w)?);
                ensure(s.is_zero(), || format!("cyclic sum of D fails on (e{a}, e{b}, e{c})"))?;
                count += 1;
            }
        }
    }
    ensure(count == 35, || format!("{count} triples"))
}

fn g2_lambda_rho(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let f = Frame::standard();
    let two = Scalar::int(2);
    let names = ["i", "j", "k"];
    for (na, a) in names.iter().zip(f.uvw()) {
        for (nb, b) in names.iter().zip(f.uvw()) {
            let ab = cross(&a, &b);
            let (la, lb, ra, rb) = (f.lambda(&a), f.lambda(&b), f.rho(&a), f.rho(&b));
            let (la, lb, ra, rb) = (la.map_err(w)?, lb.map_err(w)?, ra.map_err(w)?, rb.map_err(w)?);
            ensure(la.commutator(&lb) == f.lambda(&ab).map_err(w)?.scale(&two), || format!("[λ_{na}, λ_{nb}] ≠ 2λ_{{{na}×{nb}}}"))?;
            ensure(la.commutator(&rb).is_zero(), || format!("[λ_{na}, ρ_{nb}] ≠ 0"))?;
            ensure(ra.commutator(&rb) == f.rho(&ab).map_err(w)?.scale(&two), || format!("[ρ_{na}, ρ_{nb}] ≠ 2ρ_{{{na}×{nb}}}"))?;
        }
    }
    Ok(())
}

fn g2_killing(ctx: &Context, _: &mut ChaCha8Rng) -> Outcome {
    ensure(is_negative_definite(&ctx.g2.killing_gram()), || "Killing form is not negative definite".into())
}

// ---- lts ----

fn lts_g2(ctx: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let t = LtsCarrier::full(Ambient::G2(ctx.g2.clone())).map_err(w)?;
    let r = check_axioms(&t);
    ensure(r.all_pass(), || r.witness.unwrap_or_default())
}

fn lts_counterexample(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    // [e1, e2, e1] = e1 and its antisymmetric partner, nothing else
    let p = AbstractProduct::antisymmetric(2, &[(0, 1, 0, 0, Scalar::one())]);
    let t = LtsCarrier::full(Ambient::Abstract(Arc::new(p))).map_err(w)?;
    let r = check_axioms(&t);
    ensure(r.abstract_pass(), || format!("fails an axiom before (iv): {r:?}"))?;
    ensure(!r.derivation, || "the two-dimensional system satisfies (iv)".into())
}

fn lts_m34(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let t = LtsCarrier::full(Ambient::M34).map_err(w)?;
    let r = check_axioms(&t);
    ensure(r.all_pass(), || r.witness.clone().unwrap_or_default())?;
    let basis = row_basis();
    let span = Subspace::from_span(12, basis.iter().map(|m| m.as_flat().to_vec()).collect());
    ensure(span.dim() == 8, || format!("row basis spans {}", span.dim()))?;
    for (p, a) in basis.iter().enumerate() {
        for (q, b) in basis.iter().enumerate() {
            for (s, c) in basis.iter().enumerate() {
                let x = m34_triple(a, b, c);
                ensure(span.contains(x.as_flat()), || format!("[b{p}, b{q}, b{s}] leaves the span"))?;
            }
        }
    }
    Ok(())
}

// ---- catalog ----

fn catalog_dims(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let s = standard();
    let f = Frame::standard();
    let got = [s.tds.span().dim(), annihilator_subalg(&f.l).map_err(w)?.dim(), s.grading.even.dim(), s.grading.odd.dim()];
    ensure(got == [3, 8, 6, 8], || format!("dims (h, h_2^ℓ, h_4^V, m_4^V) = {got:?}"))
}

fn relations_outcome(rel: Vec<(String, bool)>) -> Outcome {
    let bad: Vec<String> = rel.into_iter().filter(|(_, ok)| !ok).map(|(l, _)| l).collect();
    ensure(bad.is_empty(), || bad.join(", "))
}

fn tds_literal(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    relations_outcome(bracket_relations(&standard().tds.literal))
}

fn tds_normalized(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    relations_outcome(bracket_relations(&standard().tds.h))
}

fn tds_char_poly(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let p = standard().tds.literal[0].char_poly();
    ensure(p == principal_char_poly(), || format!("char_poly(h1) = {p}"))
}

fn tds_normalizer(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let g = G2::get();
    let h = standard().tds.span();
    let n = g.normalizer(&h).map_err(w)?;
    ensure(n == h, || format!("normalizer has dimension {}", n.dim()))?;
    let c = g.centralizer(&h).map_err(w)?;
    ensure(c.is_zero(), || format!("centralizer has dimension {}", c.dim()))
}

fn catalog_adapted(ctx: &Context, rng: &mut ChaCha8Rng) -> Outcome {
    let s = standard();
    let h = s.tds.span();
    let a = is_adapted(&h, &s.v).map_err(w)?;
    ensure(a.homogeneous && a.odd_dim == 2, || format!("standard pair: {a:?}"))?;
    for n in 0..ctx.trials {
        let (u, v) = (rand_ratio(rng), rand_ratio(rng));
        let conj = adapted_conjugate(&s.tds, &s.v, &u, &v).map_err(w)?;
        let a = is_adapted(&h, &conj).map_err(|e| format!("conjugate {n}: {e}"))?;
        ensure(a.homogeneous, || format!("conjugate {n} (u = {u}, w = {v}) is not adapted"))?;
        is_adapted(&h, &generic_assoc(rng)).map_err(|e| format!("generic subalgebra {n}: {e}"))?;
    }
    Ok(())
}

fn catalog_profiles(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let v = &standard().v;
    let w = meeting_partner();
    let p = intersection_profile(v, &w);
    ensure(classify_profile(p) == Some(ProfileCase::Meeting) && p == [1, 2, 2, 2], || format!("profile {p:?}"))?;
    let q = intersection_profile(v, v);
    ensure(classify_profile(q) == Some(ProfileCase::Equal), || format!("profile of V with itself {q:?}"))
}

fn catalog_killing(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let g = G2::get();
    let s = standard();
    for x in s.grading.even.basis() {
        for y in s.grading.odd.basis() {
            ensure(g.killing(x, y).is_zero(), || "κ(h_4^V, m_4^V) ≠ 0".into())?;
        }
    }
    Ok(())
}

const EXPECTED_ENVELOPE: [usize; 4] = [3, 8, 6, 6];

fn t_dim(n: usize) -> Outcome {
    let t = maximal(n)?;
    let e = kinds()[n].expected_dim();
    ensure(t.dim() == e, || format!("T{} has dimension {} (expected {e})", n + 1, t.dim()))
}

fn t_axioms(n: usize) -> Outcome {
    let r = check_axioms(&maximal(n)?);
    ensure(r.all_pass(), || r.witness.unwrap_or_default())
}

fn t_envelope(n: usize) -> Outcome {
    let d = envelope_dim(&maximal(n)?).map_err(w)?;
    ensure(d == EXPECTED_ENVELOPE[n], || format!("envelope of T{} has dimension {d} (expected {})", n + 1, EXPECTED_ENVELOPE[n]))
}

fn t_maximal(n: usize, ctx: &Context, rng: &mut ChaCha8Rng) -> Outcome {
    let r = maximality_probe(&maximal(n)?, &standard().odd, ctx.trials, rng).map_err(w)?;
    ensure(r.all_pass(), || {
        let (trial, dim) = r.witness.unwrap_or_default();
        format!("trial {trial} closed to a {dim}-dimensional subtriple ({}/{} passed)", r.passes, r.trials)
    })
}

macro_rules! t_checks {
    ($($n:literal => $dim:ident, $ax:ident, $env:ident, $max:ident;)*) => {$(
        fn $dim(_: &Context, _: &mut ChaCha8Rng) -> Outcome { t_dim($n) }
        fn $ax(_: &Context, _: &mut ChaCha8Rng) -> Outcome { t_axioms($n) }
        fn $env(_: &Context, _: &mut ChaCha8Rng) -> Outcome { t_envelope($n) }
        fn $max(ctx: &Context, rng: &mut ChaCha8Rng) -> Outcome { t_maximal($n, ctx, rng) }
    )*};
}

t_checks! {
    0 => t1_dim, t1_axioms, t1_envelope, t1_maximal;
    1 => t2_dim, t2_axioms, t2_envelope, t2_maximal;
    2 => t3_dim, t3_axioms, t3_envelope, t3_maximal;
    3 => t4_dim, t4_axioms, t4_envelope, t4_maximal;
}

// ---- matmodel ----

fn mm_tangents(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let t = tangent();
    ensure(in_ms_prime(&t.projection), || "π is not in M'_S".into())?;
    let g = gr3_tangent(&t.projection).dim();
    ensure(g == 12 && t.dim() == 8, || format!("dim T(Gr_3) = {g}, dim T(M'_S) = {}", t.dim()))
}

fn mm_idnoc(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let t = tangent();
    for (n, d) in t.basis().iter().enumerate() {
        ensure(satisfies_idnoc(&t.projection, d), || format!("tangent basis element {n} violates the M'_S condition"))?;
        t.lift_to_derivation(d).map_err(|e| format!("tangent basis element {n}: {e}"))?;
    }
    Ok(())
}

fn mm_template(ctx: &Context, rng: &mut ChaCha8Rng) -> Outcome {
    let t = tangent();
    for (n, d) in t.basis().iter().enumerate() {
        let r = t.row_matrix(d);
        ensure(matches_template(&r), || format!("basis element {n}: third row {:?}", template_third_row(&r)))?;
    }
    for _ in 0..ctx.trials {
        let a: [Scalar; 4] = std::array::from_fn(|_| Scalar::int(rng.gen_range(-3..=3)));
        let b: [Scalar; 4] = std::array::from_fn(|_| Scalar::int(rng.gen_range(-3..=3)));
        let r = t.row_matrix(&t.from_ab(&a, &b).map_err(w)?);
        let rows_ok = (0..4).all(|c| r[(0, c)] == a[c] && r[(1, c)] == b[c]);
        ensure(rows_ok && matches_template(&r), || format!("from_ab({a:?}, {b:?}) has rows {r}"))?;
    }
    let rows = Subspace::from_span(12, t.basis().iter().map(|d| t.row_matrix(d).into_flat()).collect());
    let listed = Subspace::from_span(12, row_basis().into_iter().map(Matrix::into_flat).collect());
    ensure(rows == listed, || "listed row basis does not span the tangent space".into())
}

fn sl3_basis() -> Vec<Matrix> {
    sl3_space().basis().iter().map(|r| Matrix::from_flat(3, 3, r.clone())).collect()
}

fn mm_sl3_roundtrip(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    for f in sl3_basis() {
        let back = to_sl3(&from_sl3(&f).map_err(w)?).map_err(w)?;
        ensure(back == f, || format!("round trip fails on {f}"))?;
    }
    let l = l_minus_l_plus(&Frame::standard());
    ensure(l == Matrix::identity(3).neg(), || format!("L⁻L⁺ = {l}"))
}

/// The recorded sign relating the bracket of lifts to the sl3 product.
pub const LIFT_SIGN: i64 = -1;

fn mm_sl3_isomorphism(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let t = tangent();
    let basis = t.basis();
    let lifts: Vec<Matrix> = basis.iter().map(|d| t.lift_to_derivation(d)).collect::<crate::Result<_>>().map_err(w)?;
    let images: Vec<Matrix> = basis.iter().map(|d| to_sl3(&t.row_matrix(d))).collect::<crate::Result<_>>().map_err(w)?;
    let sign = Scalar::int(LIFT_SIGN);
    let mut count = 0;
    for a in 0..8 {
        for b in 0..8 {
            for c in 0..8 {
                let lhs = lifts[a].commutator(&lifts[b]).commutator(&lifts[c]);
                let rhs = sl3_triple(&images[a], &images[b], &images[c]).map_err(w)?;
                let got = to_sl3(&t.row_matrix(&lhs)).map_err(w)?;
                ensure(got == rhs.scale(&sign), || format!("triple ({a}, {b}, {c}): {got} vs {rhs}"))?;
                // the tangent product itself, without the lift
                let m = m34_triple(&t.row_matrix(&basis[a]), &t.row_matrix(&basis[b]), &t.row_matrix(&basis[c]));
                ensure(to_sl3(&m).map_err(w)? == rhs, || format!("M34 triple ({a}, {b}, {c}) differs"))?;
                count += 1;
            }
        }
    }
    ensure(count == 512, || format!("{count} triples"))
}

fn mm_sl3_envelope(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let t = tangent();
    let lifts: Vec<Matrix> = t.basis().iter().map(|d| t.lift_to_derivation(d)).collect::<crate::Result<_>>().map_err(w)?;
    let carrier = LtsCarrier::new(Ambient::g2(), G2::get().span(&lifts).map_err(w)?).map_err(w)?;
    let d = envelope_dim(&carrier).map_err(w)?;
    ensure(d == 14, || format!("envelope of the lifted tangent space has dimension {d}"))?;
    let a = abstract_envelope_dim(&sl3_catalog(None).map_err(w)?);
    ensure(a == 14, || format!("abstract envelope of sl3 has dimension {a}"))
}

fn mm_sphere_triple(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let c = curvature()?;
    ensure(c.triple_coefficient == Scalar::frac(2, 3), || format!("coefficient {} over {} samples", c.triple_coefficient, c.samples))
}

fn mm_sphere_curvature(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let c = curvature()?;
    ensure(c.metric_coefficient == Scalar::frac(-28, 3), || format!("metric coefficient {}", c.metric_coefficient))?;
    let ratio = -&c.triple_coefficient.checked_div(&c.metric_coefficient).map_err(w)?;
    ensure(c.curvature == ratio && ratio == Scalar::frac(1, 14), || format!("curvature {} vs ratio {ratio}", c.curvature))
}

fn mm_catalog_dims(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    let mut dims = Vec::new();
    for k in Sl3Kind::MAXIMAL {
        let t = sl3_catalog(Some(k)).map_err(|e| format!("{}: {e}", k.name()))?;
        let r = check_axioms(&t);
        ensure(r.all_pass(), || format!("{}: {}", k.name(), r.witness.clone().unwrap_or_default()))?;
        dims.push(t.dim());
    }
    ensure(dims == [2, 5, 4, 4], || format!("dims {dims:?}"))
}

fn mm_catalog_maximal(ctx: &Context, rng: &mut ChaCha8Rng) -> Outcome {
    let amb = sl3_catalog(None).map_err(w)?;
    for k in Sl3Kind::MAXIMAL {
        let t = sl3_catalog(Some(k)).map_err(w)?;
        let r = maximality_probe(&t, &amb, ctx.trials, rng).map_err(w)?;
        ensure(r.all_pass(), || format!("{}: {r:?}", k.name()))?;
    }
    Ok(())
}

fn mm_gotro(_: &Context, _: &mut ChaCha8Rng) -> Outcome {
    sl3_catalog(Some(Sl3Kind::Gotro)).map_err(|e| format!("gotro: {e}"))?;
    for a in Sl3Kind::Refl4.basis() {
        for b in Sl3Kind::Gotro.basis() {
            ensure(metric(&a, &b).is_zero(), || format!("⟨{a}, {b}⟩ ≠ 0"))?;
        }
    }
    let sum = Sl3Kind::Refl4.space().sum(&Sl3Kind::Gotro.space()).map_err(w)?;
    ensure(sum == sl3_space(), || "refl4 and gotro do not fill sl3".into())
}

macro_rules! c {
    ($id:literal, $anchor:literal, [$($req:literal),*], $f:expr) => {
        Check { id: $id, anchor: $anchor, requires: &[$($req),*], run: $f }
    };
}

pub fn registry() -> Vec<Check> {
    vec![
        c!("scalar.sign", "exact sign in Q(√6,√10)", [], scalar_sign),
        c!("scalar.field", "field axioms in Q(√6,√10)", [], scalar_field),
        c!("linalg.rank_nullity", "rank + nullity = columns", [], linalg_rank_nullity),
        c!("linalg.dim_formula", "dim U + dim W = dim(U+W) + dim(U∩W)", [], linalg_modular),
        c!("linalg.char_poly", "exact characteristic polynomial", [], linalg_char_poly),
        c!("cross7.table", "e_i × e_{i+1} = e_{i+3}", [], cross_table),
        c!("cross7.identity", "(x×y)×z + x×(y×z) = 2⟨x,z⟩y − ⟨y,z⟩x − ⟨x,y⟩z", ["cross7.table"], cross_identity),
        c!("cross7.gram", "‖x×y‖² = Gram determinant", ["cross7.table"], cross_gram),
        c!("cross7.beta", "β_Ω = c·I, c > 0", ["cross7.table"], cross_beta),
        c!("cross7.octonion", "n(xy) = n(x)n(y)", ["cross7.table"], octonion_norm),
        c!("g2alg.dim", "dim Der(R^7,×) = 14", [], g2_dim),
        c!("g2alg.jacobi", "Jacobi identity in g2", ["g2alg.dim"], g2_jacobi),
        c!("g2alg.cyclic", "D_{x×y,z} + D_{y×z,x} + D_{z×x,y} = 0", [], g2_cyclic),
        c!("g2alg.lambda_rho", "[λ_a,λ_b] = 2λ_{a×b}, [λ_a,ρ_b] = 0, [ρ_a,ρ_b] = 2ρ_{a×b}", [], g2_lambda_rho),
        c!("g2alg.killing", "Killing form of g2 negative definite", ["g2alg.dim"], g2_killing),
        c!("lts.g2", "g2 with [[x,y],z] is a Lie triple system", ["g2alg.jacobi"], lts_g2),
        c!("lts.counterexample", "[e1,e2,e1] = e1 is not a Lie triple system", [], lts_counterexample),
        c!("lts.m34", "M_{3,4}(R)^- is a Lie triple system; the 8-element basis closes", [], lts_m34),
        c!("catalog.dims", "dims of h, h_2^ℓ, h_4^V, m_4^V are 3, 8, 6, 8", [], catalog_dims),
        c!("catalog.tds.literal", "[h_i, h_{i+1}] = h_{i+2} for the D-operator basis", [], tds_literal),
        c!("catalog.tds.normalized", "[h_i, h_{i+1}] = h_{i+2} after normalisation", [], tds_normalized),
        c!("catalog.tds.char_poly", "h_1 has eigenvalues 0, ±i, ±2i, ±3i", [], tds_char_poly),
        c!("catalog.tds.normalizer", "principal subalgebra is self-normalising", [], tds_normalizer),
        c!("catalog.adapted", "h adapted to V iff dim(h ∩ m_4^V) = 2", ["catalog.tds.normalized"], catalog_adapted),
        c!("catalog.profiles", "W meeting V and V^⊥ has profile (1,2,2,2)", [], catalog_profiles),
        c!("catalog.killing", "h_4^V ⊥ m_4^V under the Killing form", [], catalog_killing),
        c!("catalog.t1.dim", "dim h ∩ m_4^V = 2", [], t1_dim),
        c!("catalog.t1.axioms", "h ∩ m_4^V is a Lie triple system", ["catalog.t1.dim"], t1_axioms),
        c!("catalog.t1.envelope", "envelope of h ∩ m_4^V has dimension 3", ["catalog.t1.dim"], t1_envelope),
        c!("catalog.t1.maximal", "h ∩ m_4^V is maximal in m_4^V", ["catalog.t1.dim"], t1_maximal),
        c!("catalog.t2.dim", "dim h_2^ℓ ∩ m_4^V = 5", [], t2_dim),
        c!("catalog.t2.axioms", "h_2^ℓ ∩ m_4^V is a Lie triple system", ["catalog.t2.dim"], t2_axioms),
        c!("catalog.t2.envelope", "envelope of h_2^ℓ ∩ m_4^V has dimension 8", ["catalog.t2.dim"], t2_envelope),
        c!("catalog.t2.maximal", "h_2^ℓ ∩ m_4^V is maximal in m_4^V", ["catalog.t2.dim"], t2_maximal),
        c!("catalog.t3.dim", "dim h_2^i ∩ m_4^V = 4", [], t3_dim),
        c!("catalog.t3.axioms", "h_2^i ∩ m_4^V is a Lie triple system", ["catalog.t3.dim"], t3_axioms),
        c!("catalog.t3.envelope", "envelope of h_2^i ∩ m_4^V has dimension 6", ["catalog.t3.dim"], t3_envelope),
        c!("catalog.t3.maximal", "h_2^i ∩ m_4^V is maximal in m_4^V", ["catalog.t3.dim"], t3_maximal),
        c!("catalog.t4.dim", "dim h_4^W ∩ m_4^V = 4", [], t4_dim),
        c!("catalog.t4.axioms", "h_4^W ∩ m_4^V is a Lie triple system", ["catalog.t4.dim"], t4_axioms),
        c!("catalog.t4.envelope", "envelope of h_4^W ∩ m_4^V has dimension 6", ["catalog.t4.dim"], t4_envelope),
        c!("catalog.t4.maximal", "h_4^W ∩ m_4^V is maximal in m_4^V", ["catalog.t4.dim"], t4_maximal),
        c!("matmodel.tangents", "dim T_π(Gr_3) = 12, dim T_π(M'_S) = 8", [], mm_tangents),
        c!("matmodel.idnoc", "π'[d(x)×π(y) + π(x)×d(y)] = d(π(x)×π(y))", ["matmodel.tangents"], mm_idnoc),
        c!("matmodel.template", "third row (a2−b1, a3+b0, b3−a0, −a1−b2)", ["matmodel.tangents"], mm_template),
        c!("matmodel.sl3.roundtrip", "M_{3,4} tangent ≅ sl3 as vector spaces, L⁻L⁺ = −1", [], mm_sl3_roundtrip),
        c!("matmodel.sl3.isomorphism", "T_π(M'_S) ≅ (sl3, {·,·,·}) as triple systems", ["matmodel.template"], mm_sl3_isomorphism),
        c!("matmodel.sl3.envelope", "standard envelope of the tangent LTS is g2", ["matmodel.idnoc"], mm_sl3_envelope),
        c!("matmodel.sphere.triple", "{d1,d2,d3} = (2/3)(s1t2 − s2t1) d_{t3,−s3}", [], mm_sphere_triple),
        c!("matmodel.sphere.curvature", "⟨d1,d3⟩d2 − ⟨d2,d3⟩d1 = −(28/3)(s1t2 − s2t1) d_{t3,−s3}", [], mm_sphere_curvature),
        c!("matmodel.catalog.dims", "sphere, sym5, col4, refl4 have dims 2, 5, 4, 4", [], mm_catalog_dims),
        c!("matmodel.catalog.maximal", "the four subsystems of sl3 are maximal", ["matmodel.catalog.dims"], mm_catalog_maximal),
        c!("matmodel.catalog.gotro", "refl4^⊥ is another Lie triple subsystem", [], mm_gotro),
    ]
}
