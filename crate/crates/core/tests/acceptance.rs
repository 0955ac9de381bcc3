//! Acceptance suite: one PASS/FAIL line per criterion, all exact.
//!
//! Runs without the libtest harness so that the report is always printed.
//! Each criterion is evaluated as stated. Two of them are known not to hold
//! exactly as stated (see `KNOWN_FAILURES`); for those the run requires the
//! recorded witness, so any change in either direction fails the target.

use std::process::{Command, ExitCode};
use std::sync::{Arc, OnceLock};

use g2lts::catalog::{
    adapted_conjugate, generic_assoc, is_adapted, maximal_lts, maximality_probe, meeting_partner, odd_carrier, principal_tds,
    AssocSubalg, MaximalKind,
};
use g2lts::cross7::{cross, induced_bilinear, omega, omega_form, Octonion};
use g2lts::g2alg::{d_op, Frame, G2};
use g2lts::linalg::{Matrix, Poly, Subspace, Vec7};
use g2lts::lts::{check_axioms, AbstractProduct, Ambient, LtsCarrier};
use g2lts::matmodel::{curvature_check, sl3_catalog, sl3_space, standard_tangent, Sl3Kind};
use g2lts::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<(), String>;

/// Criteria evaluated faithfully whose stated expectation is not met, with
/// the witness each must produce.
const KNOWN_FAILURES: [(usize, &str); 2] = [
    // the D-operator combinations give [h2,h3] = 4·h1; rescaling h2 and h3
    // by 1/2 gives the stated relations
    (3, "[h2,h3]=4·h1"),
    // h_2^i ∩ m_4^V generates all of h_2^i ≅ su(3)
    (6, "T3 envelope has dimension 8 (expected 6)"),
];

fn ensure(cond: bool, witness: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

fn s(n: i64) -> Scalar {
    Scalar::int(n)
}

fn e(i: usize) -> Vec7 {
    Vec7::e(i)
}

fn d(x: &Vec7, y: &Vec7) -> Matrix {
    d_op(x, y).unwrap()
}

fn flat_span(n: usize, ms: &[Matrix]) -> Subspace {
    Subspace::from_span(n, ms.iter().map(|m| m.as_flat().to_vec()).collect())
}

/// `T + [T, T]` for a set of 7×7 matrices.
fn envelope(ms: &[Matrix]) -> usize {
    let mut all = ms.to_vec();
    for a in ms {
        for b in ms {
            all.push(a.commutator(b));
        }
    }
    flat_span(49, &all).dim()
}

/// Coordinates `c` (on the g2 basis) for which every listed linear
/// condition on `Σ c_b g_b` vanishes.
fn g2_kernel(conds: &[&dyn Fn(&Matrix) -> Vec<Scalar>]) -> Subspace {
    let g = G2::get();
    let cols: Vec<Vec<Scalar>> = g.basis().iter().map(|b| conds.iter().flat_map(|f| f(b)).collect()).collect();
    Matrix::from_cols(&cols).kernel()
}

fn diag7(signs: [i64; 7]) -> Matrix {
    Matrix::from_fn(7, 7, |r, c| if r == c { s(signs[r]) } else { Scalar::zero() })
}

/// θ for `V^1 = ⟨e1, e2, e4⟩`
fn theta_v() -> Matrix {
    diag7([1, 1, -1, 1, -1, -1, -1])
}

/// θ for `W = ⟨e1, e3, e7⟩`
fn theta_w() -> Matrix {
    diag7([1, -1, 1, -1, -1, -1, 1])
}

fn even_cond(t: Matrix) -> impl Fn(&Matrix) -> Vec<Scalar> {
    move |m: &Matrix| m.mul(&t).sub(&t.mul(m)).into_flat()
}

fn odd_cond(t: Matrix) -> impl Fn(&Matrix) -> Vec<Scalar> {
    move |m: &Matrix| m.mul(&t).add(&t.mul(m)).into_flat()
}

fn kills(v: Vec7) -> impl Fn(&Matrix) -> Vec<Scalar> {
    move |m: &Matrix| m.mul_vec(v.as_slice())
}

/// The principal subalgebra written with `D` operators in the frame
/// `i = e1, j = e2, k = e4, ℓ = e3`.
fn literal_h() -> [Matrix; 3] {
    let (i, j, l) = (e(1), e(2), e(3));
    let k = cross(&i, &j);
    let il = cross(&i, &l);
    let r32 = Scalar::sqrt6() * Scalar::frac(1, 2); // √(3/2)
    let r52 = Scalar::sqrt10() * Scalar::frac(1, 2); // √(5/2)
    let third = &r52 * &Scalar::frac(1, 3);
    let h1 = d(&l, &il).scale(&s(4)).add(&d(&j, &k).scale(&s(5))).scale(&Scalar::frac(1, 6));
    let h2 = d(&i, &il).scale(&r32).add(&d(&l, &j).add(&d(&il, &k)).scale(&third));
    let h3 = d(&i, &l).scale(&-&r32).add(&d(&l, &k).sub(&d(&il, &j)).scale(&third));
    [h1, h2, h3]
}

fn multiple_of(x: &Matrix, y: &Matrix) -> Option<Scalar> {
    let p = y.as_flat().iter().position(|v| !v.is_zero())?;
    let c = x.as_flat()[p].checked_div(&y.as_flat()[p]).ok()?;
    (*x == y.scale(&c)).then_some(c)
}

// ---- independent sl3 oracles ----

fn alpha(m: &Matrix) -> Matrix {
    Matrix::from_cols(&[vec![&m[(1, 2)] - &m[(2, 1)], &m[(2, 0)] - &m[(0, 2)], &m[(0, 1)] - &m[(1, 0)]]])
}

fn twisted(m1: &Matrix, m2: &Matrix, m3: &Matrix) -> Matrix {
    let t = |m: &Matrix| m.transpose();
    let plain = m1.mul(&t(m2)).mul(m3).sub(&m2.mul(&t(m1)).mul(m3)).add(&m3.mul(&t(m2)).mul(m1)).sub(&m3.mul(&t(m1)).mul(m2));
    let (a1, a2, a3) = (alpha(m1), alpha(m2), alpha(m3));
    let g = a1
        .mul(&t(&a2))
        .sub(&a2.mul(&t(&a1)))
        .mul(m3)
        .add(&a3.mul(&t(&a2)).mul(m1))
        .sub(&a3.mul(&t(&a1)).mul(m2));
    plain.add(&g)
}

fn metric(m1: &Matrix, m2: &Matrix) -> Scalar {
    alpha(m1).transpose().mul(&alpha(m2))[(0, 0)].clone() + m1.mul(&m2.transpose()).trace()
}

fn d_st(sv: i64, tv: i64) -> Matrix {
    let r = Scalar::sqrt15() * Scalar::frac(1, 3); // √(5/3)
    let (sv, tv) = (s(sv), s(tv));
    let z = Scalar::zero();
    Matrix::from_rows(vec![
        vec![-(&sv * &s(2)), z.clone(), z],
        vec![-(&r * &tv), sv.clone(), tv.clone()],
        vec![&r * &sv, -tv.clone(), sv],
    ])
}

fn m34(a: &Matrix, b: &Matrix, c: &Matrix) -> Matrix {
    let (at, bt) = (a.transpose(), b.transpose());
    a.mul(&bt).mul(c).sub(&b.mul(&at).mul(c)).add(&c.mul(&bt).mul(a)).sub(&c.mul(&at).mul(b))
}

/// `R[r][c] = ⟨d u_r, v_c⟩` in the standard frame.
fn row_matrix(m: &Matrix) -> Matrix {
    let (i, j, l) = (e(1), e(2), e(3));
    let u = [i.clone(), j.clone(), cross(&i, &j)];
    let v = [l.clone(), cross(&u[0], &l), cross(&u[1], &l), cross(&u[2], &l)];
    Matrix::from_fn(3, 4, |r, c| Vec7::apply(m, &u[r]).dot(&v[c]))
}

fn pi_v() -> Matrix {
    diag7([1, 1, 0, 1, 0, 0, 0])
}

// ---- criteria ----

fn c1() -> Outcome {
    // Leibniz system for an unknown 7×7 matrix, solved from scratch
    let mut cols = Vec::new();
    for p in 0..49 {
        let m = Matrix::unit(7, 7, p / 7, p % 7);
        let mut col = Vec::new();
        for a in 1..=7 {
            for b in a + 1..=7 {
                let (x, y) = (e(a), e(b));
                let lhs = Vec7::apply(&m, &cross(&x, &y));
                let rhs = &cross(&Vec7::apply(&m, &x), &y) + &cross(&x, &Vec7::apply(&m, &y));
                col.extend((&lhs - &rhs).0);
            }
        }
        cols.push(col);
    }
    let ker = Matrix::from_cols(&cols).kernel();
    ensure(ker.dim() == 14, || format!("Leibniz kernel has dimension {}", ker.dim()))?;
    let g = G2::get();
    ensure(g.dim() == 14 && flat_span(49, g.basis()) == ker, || "library g2 differs from the kernel".into())?;
    for (n, b) in ker.basis().iter().enumerate() {
        let m = Matrix::from_flat(7, 7, b.clone());
        ensure(m.transpose() == m.neg(), || format!("kernel basis element {n} is not skew"))?;
    }
    Ok(())
}

fn c2() -> Outcome {
    let tds = principal_tds(&Frame::standard()).map_err(|e| e.to_string())?;
    let h = tds.span().dim();
    let hl = g2_kernel(&[&kills(e(3))]).dim();
    let even = g2_kernel(&[&even_cond(theta_v())]).dim();
    let odd = g2_kernel(&[&odd_cond(theta_v())]).dim();
    let got = [h, hl, even, odd];
    let gr = AssocSubalg::standard().grading();
    ensure(got == [3, 8, 6, 8] && gr.even.dim() == 6 && gr.odd.dim() == 8, || format!("dimensions {got:?}"))
}

fn c3() -> Outcome {
    let h = literal_h();
    let lib = principal_tds(&Frame::standard()).map_err(|e| e.to_string())?;
    ensure(lib.literal == h, || "library D-operator basis differs".into())?;
    let mut bad = Vec::new();
    for a in 0..3 {
        let (b, c) = ((a + 1) % 3, (a + 2) % 3);
        let br = h[a].commutator(&h[b]);
        if br != h[c] {
            bad.push(match multiple_of(&br, &h[c]) {
                Some(k) => format!("[h{},h{}]={k}·h{}", a + 1, b + 1, c + 1),
                None => format!("[h{},h{}]∉R·h{}", a + 1, b + 1, c + 1),
            });
        }
    }
    // λ(λ²+1)(λ²+4)(λ²+9) = λ⁷ + 14λ⁵ + 49λ³ + 36λ
    let p = h[0].char_poly();
    if p != Poly::from_ints(&[0, 36, 0, 49, 0, 14, 0, 1]) {
        bad.push(format!("char_poly(h1) = {p}"));
    }
    ensure(bad.is_empty(), || bad.join(", "))
}

fn c4() -> Outcome {
    let g = G2::get();
    let h = literal_h();
    let hc: Vec<Vec<Scalar>> = h.iter().map(|m| g.coords(m).unwrap()).collect();
    let hs = Subspace::from_span(14, hc);
    // unknowns: 14 coefficients of d, then x_{ij} with [d, h_i] = Σ_j x_{ij} h_j
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for b in g.basis() {
        cols.push(h.iter().flat_map(|hi| b.commutator(hi).into_flat()).collect());
    }
    for i in 0..3 {
        for hj in &h {
            let mut col = vec![Scalar::zero(); 3 * 49];
            for (p, v) in hj.as_flat().iter().enumerate() {
                col[49 * i + p] = -v;
            }
            cols.push(col);
        }
    }
    let ker = Matrix::from_cols(&cols).kernel();
    let normalizer = Subspace::from_span(14, ker.basis().iter().map(|v| v[..14].to_vec()).collect());
    ensure(normalizer == hs, || format!("normalizer has dimension {}", normalizer.dim()))?;
    let central = Matrix::from_cols(&cols[..14]).kernel();
    ensure(central.is_zero(), || format!("centralizer has dimension {}", central.dim()))?;
    ensure(g.normalizer(&hs).unwrap() == hs && g.centralizer(&hs).unwrap().is_zero(), || "library disagrees".into())
}

/// `(dim h ∩ even, dim h ∩ odd)` for the grading of θ, computed on 7×7 matrices.
fn graded_dims(h: &[Matrix; 3], theta: &Matrix) -> (usize, usize) {
    let sys = |sign: i64| {
        let cols: Vec<Vec<Scalar>> =
            h.iter().map(|m| theta.mul(m).mul(theta).sub(&m.scale(&s(sign))).into_flat()).collect();
        Matrix::from_cols(&cols).kernel().dim()
    };
    (sys(1), sys(-1))
}

fn theta_of(v: &AssocSubalg) -> Matrix {
    let b = Matrix::from_cols(v.space().basis());
    let bt = b.transpose();
    let p = b.mul(&bt.mul(&b).inverse().unwrap()).mul(&bt);
    p.scale(&s(2)).sub(&Matrix::identity(7))
}

fn c5() -> Outcome {
    let tds = principal_tds(&Frame::standard()).map_err(|e| e.to_string())?;
    let h = tds.h.clone();
    let hs = tds.span();
    let (ev, od) = graded_dims(&h, &theta_v());
    ensure(ev + od == 3 && od == 2, || format!("standard pair: even {ev}, odd {od}"))?;
    let v = AssocSubalg::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut adapted_seen = 0;
    for n in 0..100 {
        let conj = if n % 2 == 0 {
            let u = Scalar::frac(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            let w = Scalar::frac(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            adapted_conjugate(&tds, &v, &u, &w).map_err(|e| format!("conjugate {n}: {e}"))?
        } else {
            generic_assoc(&mut rng)
        };
        let (ev, od) = graded_dims(&h, &theta_of(&conj));
        let (homogeneous, by_dim) = (ev + od == 3, od == 2);
        ensure(homogeneous == by_dim, || format!("conjugate {n}: criteria disagree (even {ev}, odd {od})"))?;
        let lib = is_adapted(&hs, &conj).map_err(|e| format!("conjugate {n}: {e}"))?;
        ensure(lib.homogeneous == homogeneous && lib.odd_dim == od, || format!("conjugate {n}: library reports {lib:?}"))?;
        if n % 2 == 0 {
            ensure(homogeneous, || format!("conjugate {n} should be adapted"))?;
        }
        adapted_seen += homogeneous as usize;
    }
    ensure(adapted_seen >= 50, || format!("{adapted_seen} adapted"))
}

fn kinds() -> [MaximalKind; 4] {
    let f = Frame::standard();
    let h = principal_tds(&f).unwrap().span();
    [MaximalKind::T1(h), MaximalKind::T2(f.l.clone()), MaximalKind::T3(f.i.clone()), MaximalKind::T4(meeting_partner())]
}

fn maximal_family() -> &'static Vec<LtsCarrier> {
    static T: OnceLock<Vec<LtsCarrier>> = OnceLock::new();
    T.get_or_init(|| {
        let v = AssocSubalg::standard();
        kinds().iter().map(|k| maximal_lts(&v, k).unwrap()).collect()
    })
}

fn c6() -> Outcome {
    let g = G2::get();
    // independent descriptions as kernels
    let h = principal_tds(&Frame::standard()).unwrap().h;
    let hs = Subspace::from_span(14, h.iter().map(|m| g.coords(m).unwrap()).collect());
    let odd_v = g2_kernel(&[&odd_cond(theta_v())]);
    let own = [
        hs.intersect(&odd_v).unwrap(),
        g2_kernel(&[&odd_cond(theta_v()), &kills(e(3))]),
        g2_kernel(&[&odd_cond(theta_v()), &kills(e(1))]),
        g2_kernel(&[&odd_cond(theta_v()), &even_cond(theta_w())]),
    ];
    let dims: Vec<usize> = own.iter().map(Subspace::dim).collect();
    ensure(dims == [2, 5, 4, 4], || format!("dims {dims:?}"))?;
    let expected_env = [3, 8, 6, 6];
    let mut bad = Vec::new();
    for (n, (t, lib)) in own.iter().zip(maximal_family()).enumerate() {
        ensure(lib.space() == t, || format!("T{} differs from its kernel description", n + 1))?;
        let ms: Vec<Matrix> = t.basis().iter().map(|c| g.element(c)).collect();
        for x in &ms {
            for y in &ms {
                for z in &ms {
                    let p = g.coords(&x.commutator(y).commutator(z)).unwrap();
                    ensure(t.contains(&p), || format!("T{} is not closed", n + 1))?;
                }
            }
        }
        let r = check_axioms(lib);
        ensure(r.all_pass(), || format!("T{}: {}", n + 1, r.witness.clone().unwrap_or_default()))?;
        let env = envelope(&ms);
        if env != expected_env[n] {
            bad.push(format!("T{} envelope has dimension {env} (expected {})", n + 1, expected_env[n]));
        }
    }
    ensure(bad.is_empty(), || bad.join(", "))
}

fn c7() -> Outcome {
    let v = AssocSubalg::standard();
    let amb = odd_carrier(&v).unwrap();
    ensure(amb.dim() == 8, || format!("ambient dimension {}", amb.dim()))?;
    for (n, t) in maximal_family().iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(42 + n as u64);
        let r = maximality_probe(t, &amb, 25, &mut rng).map_err(|e| e.to_string())?;
        ensure(r.trials == 25 && r.all_pass(), || format!("T{}: {r:?}", n + 1))?;
    }
    Ok(())
}

fn c8() -> Outcome {
    let f = Frame::standard();
    for a in f.uvw() {
        for b in f.uvw() {
            let ab = cross(&a, &b);
            let (la, lb) = (f.lambda(&a).unwrap(), f.lambda(&b).unwrap());
            let (ra, rb) = (f.rho(&a).unwrap(), f.rho(&b).unwrap());
            ensure(la.commutator(&lb) == f.lambda(&ab).unwrap().scale(&s(2)), || format!("[λ_a,λ_b] for {a:?}, {b:?}"))?;
            ensure(la.commutator(&rb).is_zero(), || format!("[λ_a,ρ_b] for {a:?}, {b:?}"))?;
            ensure(ra.commutator(&rb) == f.rho(&ab).unwrap().scale(&s(2)), || format!("[ρ_a,ρ_b] for {a:?}, {b:?}"))?;
        }
    }
    Ok(())
}

fn c9() -> Outcome {
    let mut n = 0;
    for a in 1..=7 {
        for b in a + 1..=7 {
            for c in b + 1..=7 {
                let (x, y, z) = (e(a), e(b), e(c));
                let sum = d(&cross(&x, &y), &z).add(&d(&cross(&y, &z), &x)).add(&d(&cross(&z, &x), &y));
                ensure(sum.is_zero(), || format!("(e{a}, e{b}, e{c})"))?;
                n += 1;
            }
        }
    }
    ensure(n == 35, || format!("{n} triples"))
}

fn c10() -> Outcome {
    let g = G2::get();
    let n = g.dim();
    let unit = |a: usize| (0..n).map(|b| if a == b { Scalar::one() } else { Scalar::zero() }).collect::<Vec<_>>();
    let ads: Vec<Matrix> = (0..n).map(|a| g.ad(&unit(a))).collect();
    let kappa = Matrix::from_fn(n, n, |a, b| ads[a].mul(&ads[b]).trace());
    let form = |x: &[Scalar], y: &[Scalar]| -> Scalar {
        let kx = kappa.mul_vec(y);
        x.iter().zip(&kx).fold(Scalar::zero(), |acc, (p, q)| acc + p * q)
    };
    let even = g2_kernel(&[&even_cond(theta_v())]);
    let odd = g2_kernel(&[&odd_cond(theta_v())]);
    for x in even.basis() {
        for y in odd.basis() {
            ensure(form(x, y).is_zero(), || "κ(h_4^V, m_4^V) ≠ 0".into())?;
        }
    }
    // Sylvester: (−1)^k det of the leading k×k minor is positive
    for k in 1..=n {
        let m = kappa.block(0, k, 0, k).det();
        let sign = if k % 2 == 0 { m.sign() } else { -m.sign() };
        ensure(sign > 0, || format!("leading minor {k} has sign {}", m.sign()))?;
    }
    Ok(())
}

fn idnoc(pi: &Matrix, m: &Matrix) -> bool {
    let pp = Matrix::identity(7).sub(pi);
    (1..=7).all(|a| {
        (1..=7).all(|b| {
            let (x, y) = (e(a), e(b));
            let (px, py) = (Vec7::apply(pi, &x), Vec7::apply(pi, &y));
            let lhs = Vec7::apply(&pp, &(&cross(&Vec7::apply(m, &x), &py) + &cross(&px, &Vec7::apply(m, &y))));
            lhs == Vec7::apply(m, &cross(&px, &py))
        })
    })
}

fn c11() -> Outcome {
    let pi = pi_v();
    let gr_conds = |m: &Matrix| -> Vec<Scalar> {
        let mut c = m.mul(&pi).add(&pi.mul(m)).sub(m).into_flat();
        c.extend(m.sub(&m.transpose()).into_flat());
        c.push(m.trace());
        c
    };
    let units: Vec<Matrix> = (0..49).map(|p| Matrix::unit(7, 7, p / 7, p % 7)).collect();
    let gr = Matrix::from_cols(&units.iter().map(gr_conds).collect::<Vec<_>>()).kernel();
    let pp = Matrix::identity(7).sub(&pi);
    let ms_conds = |m: &Matrix| -> Vec<Scalar> {
        let mut c = gr_conds(m);
        for a in 1..=7 {
            for b in 1..=7 {
                let (px, py) = (Vec7::apply(&pi, &e(a)), Vec7::apply(&pi, &e(b)));
                let lhs = Vec7::apply(&pp, &(&cross(&Vec7::apply(m, &e(a)), &py) + &cross(&px, &Vec7::apply(m, &e(b)))));
                c.extend((&lhs - &Vec7::apply(m, &cross(&px, &py))).0);
            }
        }
        c
    };
    let ms = Matrix::from_cols(&units.iter().map(ms_conds).collect::<Vec<_>>()).kernel();
    ensure(gr.dim() == 12 && ms.dim() == 8, || format!("dims {} and {}", gr.dim(), ms.dim()))?;
    let t = standard_tangent();
    ensure(t.dim() == 8 && t.space == ms, || "library tangent space differs".into())?;
    for (n, m) in t.basis().iter().enumerate() {
        ensure(idnoc(&pi, m), || format!("basis element {n} violates the condition"))?;
        let r = row_matrix(m);
        let (a, b) = (|c: usize| r[(0, c)].clone(), |c: usize| r[(1, c)].clone());
        let third = [&a(2) - &b(1), &a(3) + &b(0), &b(3) - &a(0), -(&a(1) + &b(2))];
        ensure((0..4).all(|c| r[(2, c)] == third[c]), || format!("basis element {n}: rows {r}"))?;
    }
    Ok(())
}

fn listed_basis() -> Vec<Matrix> {
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

fn c12() -> Outcome {
    let full = LtsCarrier::full(Ambient::M34).unwrap();
    let r = check_axioms(&full);
    ensure(r.all_pass(), || r.witness.clone().unwrap_or_default())?;
    let b = listed_basis();
    let span = flat_span(12, &b);
    ensure(span.dim() == 8, || format!("listed basis spans {}", span.dim()))?;
    for x in &b {
        for y in &b {
            for z in &b {
                ensure(span.contains(m34(x, y, z).as_flat()), || format!("[{x}, {y}, {z}] leaves the span"))?;
            }
        }
    }
    let sub = LtsCarrier::new(Ambient::M34, span).map_err(|e| e.to_string())?;
    let r = check_axioms(&sub);
    ensure(r.all_pass(), || r.witness.clone().unwrap_or_default())
}

fn c13() -> Outcome {
    let g = G2::get();
    let t = standard_tangent();
    let pi = pi_v();
    let basis = t.basis();
    let lifts: Vec<Matrix> = basis.iter().map(|m| m.mul(&pi).sub(&pi.mul(m))).collect();
    ensure(lifts.iter().all(|l| g.contains(l)), || "a lift is not a derivation".into())?;
    let forget = |r: &Matrix| r.block(0, 3, 1, 4);
    let imgs: Vec<Matrix> = basis.iter().map(|m| forget(&row_matrix(m))).collect();
    ensure(flat_span(9, &imgs) == sl3_space(), || "images do not span sl3".into())?;
    let mut sign: Option<Scalar> = None;
    let mut count = 0;
    for a in 0..8 {
        for b in 0..8 {
            for c in 0..8 {
                let lhs = forget(&row_matrix(&lifts[a].commutator(&lifts[b]).commutator(&lifts[c])));
                let rhs = twisted(&imgs[a], &imgs[b], &imgs[c]);
                count += 1;
                if rhs.is_zero() {
                    ensure(lhs.is_zero(), || format!("({a},{b},{c}): nonzero where the product vanishes"))?;
                    continue;
                }
                let k = multiple_of(&lhs, &rhs).ok_or_else(|| format!("({a},{b},{c}): not proportional"))?;
                match &sign {
                    None => {
                        ensure(k == s(1) || k == s(-1), || format!("global factor {k}"))?;
                        sign = Some(k);
                    }
                    Some(sg) => ensure(*sg == k, || format!("({a},{b},{c}): factor {k} vs {sg}"))?,
                }
            }
        }
    }
    ensure(count == 512 && sign == Some(s(-1)), || format!("{count} triples, sign {sign:?}"))?;
    ensure(envelope(&lifts) == 14, || format!("envelope dimension {}", envelope(&lifts)))
}

struct Sphere {
    triple: Result<Scalar, String>,
    metric: Result<Scalar, String>,
}

fn fit(c: &mut Option<Scalar>, lhs: &Matrix, rhs: &Matrix) -> Outcome {
    if rhs.is_zero() {
        return ensure(lhs.is_zero(), || "nonzero where the model vanishes".into());
    }
    let k = multiple_of(lhs, rhs).ok_or_else(|| "not proportional to the model".to_string())?;
    match c {
        None => *c = Some(k),
        Some(prev) => ensure(*prev == k, || format!("factor {k} vs {prev}"))?,
    }
    Ok(())
}

fn sphere() -> &'static Sphere {
    static S: OnceLock<Sphere> = OnceLock::new();
    S.get_or_init(|| {
        let vals: Vec<(i64, i64)> = (-2..=2).flat_map(|a| (-2..=2).map(move |b| (a, b))).collect();
        let mats: Vec<Matrix> = vals.iter().map(|&(a, b)| d_st(a, b)).collect();
        let per_first: Vec<(Result<Option<Scalar>, String>, Result<Option<Scalar>, String>)> = (0..vals.len())
            .into_par_iter()
            .map(|p| {
                let (mut ct, mut cm) = (None, None);
                let (mut et, mut em) = (Ok(()), Ok(()));
                for q in 0..vals.len() {
                    for r in 0..vals.len() {
                        let ((s1, t1), (s2, t2), (s3, _)) = (vals[p], vals[q], vals[r]);
                        let t3 = vals[r].1;
                        let model = d_st(t3, -s3).scale(&s(s1 * t2 - s2 * t1));
                        let (d1, d2, d3) = (&mats[p], &mats[q], &mats[r]);
                        if et.is_ok() {
                            et = fit(&mut ct, &twisted(d1, d2, d3), &model);
                        }
                        if em.is_ok() {
                            let lhs = d2.scale(&metric(d1, d3)).sub(&d1.scale(&metric(d2, d3)));
                            em = fit(&mut cm, &lhs, &model);
                        }
                    }
                }
                (et.map(|_| ct), em.map(|_| cm))
            })
            .collect();
        let merge = |parts: Vec<Result<Option<Scalar>, String>>| -> Result<Scalar, String> {
            let mut c: Option<Scalar> = None;
            for p in parts {
                if let Some(k) = p? {
                    match &c {
                        None => c = Some(k),
                        Some(prev) if *prev != k => return Err(format!("factor {k} vs {prev}")),
                        _ => {}
                    }
                }
            }
            c.ok_or_else(|| "only degenerate samples".into())
        };
        let (t, m): (Vec<_>, Vec<_>) = per_first.into_iter().unzip();
        Sphere { triple: merge(t), metric: merge(m) }
    })
}

fn c14() -> Outcome {
    let c = sphere().triple.clone()?;
    ensure(c == Scalar::frac(2, 3), || format!("coefficient {c}"))
}

fn c15() -> Outcome {
    let sp = sphere();
    let (t, m) = (sp.triple.clone()?, sp.metric.clone()?);
    ensure(m == Scalar::frac(-28, 3), || format!("metric coefficient {m}"))?;
    // R = −{·,·,·} = κ (⟨x,z⟩y − ⟨y,z⟩x)  ⇒  κ = −t/m
    let kappa = -&t.checked_div(&m).unwrap();
    let lib = curvature_check(-2..=2).map_err(|e| e.to_string())?;
    let stated_ratio = -&Scalar::frac(2, 3).checked_div(&Scalar::frac(-28, 3)).unwrap();
    ensure(lib.curvature == kappa && kappa == stated_ratio, || format!("κ = {kappa}, library {}", lib.curvature))?;
    ensure(lib.triple_coefficient == t && lib.metric_coefficient == m, || "library constants differ".into())
}

fn mats(kind: Sl3Kind) -> Vec<Matrix> {
    kind.basis()
}

fn closed(b: &[Matrix]) -> bool {
    let span = flat_span(9, b);
    b.iter().all(|x| b.iter().all(|y| b.iter().all(|z| span.contains(twisted(x, y, z).as_flat()))))
}

fn c16() -> Outcome {
    let amb = sl3_catalog(None).unwrap();
    let mut dims = Vec::new();
    for (n, k) in Sl3Kind::MAXIMAL.into_iter().enumerate() {
        let b = mats(k);
        ensure(closed(&b), || format!("{} is not closed", k.name()))?;
        let t = sl3_catalog(Some(k)).map_err(|e| e.to_string())?;
        let r = check_axioms(&t);
        ensure(r.all_pass(), || format!("{}: {}", k.name(), r.witness.clone().unwrap_or_default()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(16 + n as u64);
        let p = maximality_probe(&t, &amb, 25, &mut rng).map_err(|e| e.to_string())?;
        ensure(p.all_pass(), || format!("{}: {p:?}", k.name()))?;
        dims.push(flat_span(9, &b).dim());
    }
    ensure(dims == [2, 5, 4, 4], || format!("dims {dims:?}"))?;
    let (refl, gotro) = (mats(Sl3Kind::Refl4), mats(Sl3Kind::Gotro));
    for a in &refl {
        for b in &gotro {
            ensure(metric(a, b).is_zero(), || format!("⟨{a}, {b}⟩ ≠ 0"))?;
        }
    }
    ensure(flat_span(9, &[refl.clone(), gotro.clone()].concat()) == sl3_space(), || "refl4 ⊕ gotro ≠ sl3".into())?;
    ensure(closed(&gotro), || "gotro is not closed".into())
}

/// Sign of a permutation of 0..n.
fn perm_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn c17() -> Outcome {
    // (ι_u Ω ∧ ι_v Ω ∧ Ω)(e1..e7) as an alternating sum over S7
    let om = |a: usize, b: usize, c: usize| -> i64 {
        let v = omega(&e(a + 1), &e(b + 1), &e(c + 1));
        v.as_rational().map(|r| r.to_integer().try_into().unwrap()).unwrap()
    };
    let perms = permutations(7);
    let beta = |u: usize, v: usize| -> Scalar {
        let total: i64 = perms.iter().map(|p| perm_sign(p) * om(u, p[0], p[1]) * om(v, p[2], p[3]) * om(p[4], p[5], p[6])).sum();
        // 2!·2!·3! shuffles per wedge term, then the factor −1/3
        Scalar::frac(-total, 3 * 24)
    };
    let oracle = Matrix::from_fn(7, 7, beta);
    let lib = induced_bilinear(&omega_form()).map_err(|e| e.to_string())?;
    ensure(lib == oracle, || format!("library {lib} vs oracle {oracle}"))?;
    let c = oracle[(0, 0)].clone();
    ensure(oracle == Matrix::identity(7).scale(&c) && c.sign() > 0, || format!("β_Ω = {oracle}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let rv = |rng: &mut ChaCha8Rng| Vec7::from_ints(std::array::from_fn(|_| rng.gen_range(-3..=3)));
    for n in 0..100 {
        let (a, b) = (s(rng.gen_range(-3..=3)), s(rng.gen_range(-3..=3)));
        let (x, y) = (rv(&mut rng), rv(&mut rng));
        let (p, q) = (Octonion::new(a.clone(), x.clone()), Octonion::new(b.clone(), y.clone()));
        // (a, x)(b, y) = (ab − ⟨x,y⟩, ay + bx + x×y)
        let re = &(&a * &b) - &x.dot(&y);
        let im = &(&y.scale(&a) + &x.scale(&b)) + &cross(&x, &y);
        let pq = p.mul(&q);
        ensure(pq.re == re && pq.im == im, || format!("pair {n}: product rule"))?;
        let norm = |r: &Scalar, v: &Vec7| r * r + v.norm2();
        ensure(norm(&re, &im) == &norm(&a, &x) * &norm(&b, &y), || format!("pair {n}: n(pq) ≠ n(p)n(q)"))?;
        ensure(pq.norm() == norm(&re, &im), || format!("pair {n}: library norm"))?;
    }
    Ok(())
}

fn c18() -> Outcome {
    // [e1,e2,e1] = e1, [e2,e1,e1] = −e1, all other basis products zero
    let tp = |x: &[Scalar; 2], y: &[Scalar; 2], z: &[Scalar; 2]| -> [Scalar; 2] {
        let c = &(&(&x[0] * &y[1]) - &(&x[1] * &y[0])) * &z[0];
        [c, Scalar::zero()]
    };
    let e1 = [Scalar::one(), Scalar::zero()];
    let e2 = [Scalar::zero(), Scalar::one()];
    let add = |a: [Scalar; 2], b: [Scalar; 2]| [&a[0] + &b[0], &a[1] + &b[1]];
    let inner = tp(&e1, &e2, &e1);
    let lhs = tp(&e1, &e2, &inner);
    let rhs = add(add(tp(&tp(&e1, &e2, &e1), &e2, &e1), tp(&e1, &tp(&e1, &e2, &e2), &e1)), tp(&e1, &e2, &tp(&e1, &e2, &e1)));
    ensure(lhs != rhs, || "the derivation identity holds on (e1,e2,e1,e2,e1)".into())?;
    let p = AbstractProduct::antisymmetric(2, &[(0, 1, 0, 0, Scalar::one())]);
    let t = LtsCarrier::full(Ambient::Abstract(Arc::new(p))).unwrap();
    for (x, y, z) in [(&e1, &e2, &e1), (&e2, &e1, &e1), (&e1, &e1, &e2), (&e2, &e2, &e1)] {
        ensure(t.triple_coords(x, y, z) == tp(x, y, z).to_vec(), || "library product differs".into())?;
    }
    let r = check_axioms(&t);
    ensure(r.abstract_pass() && !r.derivation, || format!("{r:?}"))
}

fn c19() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_verify"))
            .args(["--seed", "42", "--filter", "catalog.*", "--format", "json", "--no-timing"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.code().is_some() && a.status.code() != Some(2), || format!("exit status {:?}", a.status))?;
    let parsed: serde_json::Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    let n = parsed.as_array().map_or(0, Vec::len);
    ensure(n > 0, || "empty report".into())?;
    ensure(a.stdout == b.stdout && a.status.code() == b.status.code(), || "reports differ".into())
}

const CRITERIA: [(&str, fn() -> Outcome); 19] = [
    ("Der(R^7,×) is a 14-dimensional kernel of skew maps", c1),
    ("dims of principal TDS, h_2^ℓ, h_4^V, m_4^V are 3, 8, 6, 8", c2),
    ("D-operator basis satisfies [h_i,h_{i+1}] = h_{i+2}; char_poly(h1)", c3),
    ("principal TDS is self-normalizing with zero centralizer", c4),
    ("adaptedness: homogeneity and dim(h ∩ m_4^V) = 2 agree on 100 conjugates", c5),
    ("T1–T4: dims 2/5/4/4, closed, axioms, envelopes 3/8/6/6", c6),
    ("maximality probes for T1–T4, 25 trials each", c7),
    ("λ/ρ bracket table", c8),
    ("cyclic identity of D on 35 basis triples", c9),
    ("Killing orthogonality and negative definiteness", c10),
    ("Grassmannian tangents 12/8, linearised condition, third-row template", c11),
    ("M_{3,4}^- axioms and closure of the 8-element basis", c12),
    ("tangent LTS ≅ twisted sl3 on 512 triples; envelope 14", c13),
    ("sphere triple coefficient 2/3 on s,t ∈ {−2..2}", c14),
    ("metric identity −28/3 and curvature ratio", c15),
    ("sl3 catalogue: dims, closure, maximality, refl4 ⊥ gotro", c16),
    ("β_Ω = c·I with c > 0; octonion norm multiplicativity", c17),
    ("the 2-dimensional system fails the derivation identity", c18),
    ("verify is deterministic for a fixed seed and filter", c19),
];

fn main() -> ExitCode {
    let outcomes: Vec<Outcome> = CRITERIA
        .par_iter()
        .map(|(_, f)| std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into())))
        .collect();
    let mut unexpected = 0;
    for (n, ((name, _), out)) in CRITERIA.iter().zip(&outcomes).enumerate() {
        let id = n + 1;
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id).map(|(_, w)| *w);
        match out {
            Ok(()) => println!("PASS  {id:2}  {name}"),
            Err(w) => println!("FAIL  {id:2}  {name}  witness: {w}"),
        }
        let as_recorded = match (out, known) {
            (Ok(()), None) => true,
            (Err(w), Some(k)) => w == k,
            _ => false,
        };
        if !as_recorded {
            unexpected += 1;
            println!("      ^ not as recorded (known failure: {known:?})");
        }
    }
    let passed = outcomes.iter().filter(|o| o.is_ok()).count();
    println!("{passed}/{} criteria pass; {} known failures; {unexpected} unexpected", CRITERIA.len(), KNOWN_FAILURES.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
