//! Lie triple systems: axioms, carriers inside concrete ambient triple
//! systems, generated subtriples, ideals and envelopes.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::g2alg::G2;
use crate::linalg::{lin_comb, Matrix, Subspace};
use crate::matmodel;
use crate::scalar::Scalar;

/// `[[x, y], z]` for square matrices of equal size.
pub fn triple_in_lie(x: &Matrix, y: &Matrix, z: &Matrix) -> Result<Matrix> {
    for m in [y, z] {
        if m.shape() != x.shape() {
            return Err(Error::DimensionMismatch { expected: x.rows(), got: m.rows() });
        }
    }
    if !x.is_square() {
        return Err(Error::DimensionMismatch { expected: x.rows(), got: x.cols() });
    }
    Ok(x.commutator(y).commutator(z))
}

/// Structure constants of a triple product on `K^n`:
/// `[e_a, e_b, e_c] = Σ_d c[(a·n + b)·n + c][d] e_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractProduct {
    dim: usize,
    c: Vec<Vec<Scalar>>,
}

impl AbstractProduct {
    pub fn zero(dim: usize) -> Self {
        AbstractProduct { dim, c: vec![vec![Scalar::zero(); dim]; dim * dim * dim] }
    }

    /// Constants `c_{abcd}` (0-based) given for `a < b` only, extended by
    /// `[e_b, e_a, e_c] = −[e_a, e_b, e_c]`; unspecified constants are zero.
    pub fn antisymmetric(dim: usize, entries: &[(usize, usize, usize, usize, Scalar)]) -> Self {
        let mut p = AbstractProduct::zero(dim);
        for (a, b, c, d, v) in entries {
            assert!(a < b, "constants are given for a < b");
            p.c[(a * dim + b) * dim + c][*d] += v;
            p.c[(b * dim + a) * dim + c][*d] -= v;
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, a: usize, b: usize, c: usize) -> &[Scalar] {
        &self.c[(a * self.dim + b) * self.dim + c]
    }

    pub fn triple(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let p = xa * yb;
                for (c, zc) in z.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    let q = &p * zc;
                    for (o, k) in out.iter_mut().zip(self.at(a, b, c)) {
                        if !k.is_zero() {
                            *o += &(&q * k);
                        }
                    }
                }
            }
        }
        out
    }
}

/// The triple system a carrier lives in. Vectors are coordinate vectors:
/// g2 coordinates, row-major 3×4 or 3×3 entries, row-major n×n entries,
/// or abstract coordinates.
#[derive(Clone)]
pub enum Ambient {
    /// `[[x, y], z]` in g2.
    G2(Arc<G2>),
    /// `ab^tc − ba^tc + cb^ta − ca^tb` on 3×4 matrices.
    M34,
    /// The twisted product `{m1, m2, m3}` on traceless 3×3 matrices.
    Sl3Twisted,
    /// `[[x, y], z]` in gl(n).
    Gl(usize),
    Abstract(Arc<AbstractProduct>),
}

impl Ambient {
    pub fn g2() -> Self {
        Ambient::G2(G2::shared())
    }

    pub fn space_dim(&self) -> usize {
        match self {
            Ambient::G2(g) => g.dim(),
            Ambient::M34 => 12,
            Ambient::Sl3Twisted => 9,
            Ambient::Gl(n) => n * n,
            Ambient::Abstract(p) => p.dim(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Ambient::G2(_) => "g2",
            Ambient::M34 => "M34",
            Ambient::Sl3Twisted => "sl3-twisted",
            Ambient::Gl(_) => "gl",
            Ambient::Abstract(_) => "abstract",
        }
    }

    pub fn triple(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        match self {
            Ambient::G2(g) => g.bracket(&g.bracket(x, y), z),
            Ambient::M34 => {
                let m = |v: &[Scalar]| Matrix::from_flat(3, 4, v.to_vec());
                matmodel::m34_triple(&m(x), &m(y), &m(z)).into_flat()
            }
            Ambient::Sl3Twisted => {
                let m = |v: &[Scalar]| Matrix::from_flat(3, 3, v.to_vec());
                matmodel::sl3_product(&m(x), &m(y), &m(z)).into_flat()
            }
            Ambient::Gl(n) => {
                let m = |v: &[Scalar]| Matrix::from_flat(*n, *n, v.to_vec());
                m(x).commutator(&m(y)).commutator(&m(z)).into_flat()
            }
            Ambient::Abstract(p) => p.triple(x, y, z),
        }
    }

    /// An embedding into a Lie algebra of matrices under which the triple
    /// product becomes `±[[X, Y], Z]` (one global sign), when one is known.
    fn embed(&self, v: &[Scalar]) -> Option<Embedded> {
        match self {
            Ambient::G2(_) => Some(Embedded::G2(v.to_vec())),
            Ambient::Gl(n) => Some(Embedded::Matrix(Matrix::from_flat(*n, *n, v.to_vec()))),
            Ambient::M34 => Some(Embedded::Matrix(matmodel::symmetric_block(&Matrix::from_flat(3, 4, v.to_vec())))),
            Ambient::Sl3Twisted => {
                let g = G2::get();
                let lifted = matmodel::sl3_to_g2(&Matrix::from_flat(3, 3, v.to_vec())).ok()?;
                Some(Embedded::G2(g.coords(&lifted).ok()?))
            }
            Ambient::Abstract(_) => None,
        }
    }
}

enum Embedded {
    G2(Vec<Scalar>),
    Matrix(Matrix),
}

impl fmt::Debug for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ambient({})", self.name())
    }
}

/// A subspace of an ambient triple system together with the structure
/// constants of the restricted product on its canonical basis. Building
/// the constants certifies closure `[T, T, T] ⊆ T`.
#[derive(Clone, Debug)]
pub struct LtsCarrier {
    ambient: Ambient,
    space: Subspace,
    structure: AbstractProduct,
}

impl LtsCarrier {
    pub fn new(ambient: Ambient, space: Subspace) -> Result<Self> {
        if space.ambient_dim() != ambient.space_dim() {
            return Err(Error::DimensionMismatch { expected: ambient.space_dim(), got: space.ambient_dim() });
        }
        let n = space.dim();
        let basis = space.basis();
        let triples: Vec<(usize, usize, usize)> =
            (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))).collect();
        let coords: Vec<Result<Vec<Scalar>>> = triples
            .par_iter()
            .map(|&(a, b, c)| {
                let t = ambient.triple(&basis[a], &basis[b], &basis[c]);
                space.coords(&t).ok_or_else(|| {
                    Error::NotMember(format!("carrier: [b{a}, b{b}, b{c}] leaves the subspace"))
                })
            })
            .collect();
        let c = coords.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(LtsCarrier { ambient, space, structure: AbstractProduct { dim: n, c } })
    }

    /// The whole ambient space.
    pub fn full(ambient: Ambient) -> Result<Self> {
        let n = ambient.space_dim();
        LtsCarrier::new(ambient, Subspace::full(n))
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn constants(&self) -> &AbstractProduct {
        &self.structure
    }

    /// Product of carrier-coordinate vectors.
    pub fn triple_coords(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        self.structure.triple(x, y, z)
    }

    pub fn to_coords(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.space.coords(v).ok_or_else(|| Error::NotMember("carrier".into()))
    }

    pub fn from_coords(&self, c: &[Scalar]) -> Vec<Scalar> {
        self.space.combine(c)
    }

    /// Sub-carrier on `sub ⊆ self`.
    pub fn restrict(&self, sub: &Subspace) -> Result<LtsCarrier> {
        if !self.space.contains_subspace(sub)? {
            return Err(Error::Precondition("subspace is not inside the carrier".into()));
        }
        LtsCarrier::new(self.ambient.clone(), sub.clone())
    }

    /// Left multiplication `L_{x,y} = [x, y, ·]` on carrier coordinates.
    pub fn left_mult(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|c| self.triple_coords(x, y, &unit(n, c))).collect();
        if n == 0 {
            return Matrix::zeros(0, 0);
        }
        Matrix::from_cols(&cols)
    }
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub trilinear: bool,
    pub antisymmetric: bool,
    pub cyclic: bool,
    pub derivation: bool,
    /// The first violation found, if any.
    pub witness: Option<String>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.trilinear && self.antisymmetric && self.cyclic && self.derivation
    }

    /// Axioms (i)–(iii): an abstract Lie triple system.
    pub fn abstract_pass(&self) -> bool {
        self.trilinear && self.antisymmetric && self.cyclic
    }
}

fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Exhaustive check of axioms (i)–(iv) on basis tuples.
///
/// (i) is checked on the ambient product with two fixed combinations per
/// slot; (ii) and (iii) on all basis triples; (iv) in the operator form
/// `[L_{x,y}, L_{a,b}] = L_{L_{x,y}a, b} + L_{a, L_{x,y}b}`, whose columns
/// are exactly the identities for all `c`. When (ii) holds the pairs
/// `x < y`, `a < b` suffice; otherwise every ordered pair is tested.
pub fn check_axioms(t: &LtsCarrier) -> AxiomReport {
    let n = t.dim();
    let s = t.constants();
    let mut witness = None;

    let trilinear = check_trilinear(t);
    if !trilinear {
        witness.get_or_insert_with(|| "(i) the ambient product is not trilinear".to_string());
    }

    let mut antisymmetric = true;
    let mut cyclic = true;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let ab = s.at(a, b, c);
                let sum: Vec<Scalar> = ab.iter().zip(s.at(b, a, c)).map(|(x, y)| x + y).collect();
                if antisymmetric && !is_zero_vec(&sum) {
                    antisymmetric = false;
                    witness.get_or_insert_with(|| format!("(ii) fails at (b{a}, b{b}, b{c})"));
                }
                let cyc: Vec<Scalar> = (0..n).map(|d| &(&ab[d] + &s.at(b, c, a)[d]) + &s.at(c, a, b)[d]).collect();
                if cyclic && !is_zero_vec(&cyc) {
                    cyclic = false;
                    witness.get_or_insert_with(|| format!("(iii) fails at (b{a}, b{b}, b{c})"));
                }
            }
        }
    }

    let pairs: Vec<(usize, usize)> = if antisymmetric {
        (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect()
    } else {
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect()
    };
    let ops: Vec<Matrix> = (0..n * n).map(|p| t.left_mult(&unit(n, p / n), &unit(n, p % n))).collect();
    let l = |u: &[Scalar], v: &[Scalar]| {
        let mut m = Matrix::zeros(n, n);
        for (p, up) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (q, vq) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                m.axpy(&(up * vq), &ops[p * n + q]);
            }
        }
        m
    };
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(x, y)| {
            let lxy = &ops[x * n + y];
            for &(a, b) in &pairs {
                let lab = &ops[a * n + b];
                let lhs = lxy.commutator(lab);
                let la = lxy.col(a);
                let lb = lxy.col(b);
                let rhs = l(&la, &unit(n, b)).add(&l(&unit(n, a), &lb));
                if lhs != rhs {
                    let c = (0..n).find(|&c| lhs.col(c) != rhs.col(c)).unwrap_or(0);
                    return Some(format!("(iv) fails at (b{x}, b{y}, b{a}, b{b}, b{c})"));
                }
            }
            None
        })
        .collect();
    let derivation = failures.is_empty();
    if let Some(f) = failures.into_iter().next() {
        witness.get_or_insert(f);
    }

    AxiomReport { trilinear, antisymmetric, cyclic, derivation, witness }
}

fn check_trilinear(t: &LtsCarrier) -> bool {
    let n = t.dim();
    if n == 0 {
        return true;
    }
    let amb = t.ambient();
    let basis = t.space().basis();
    let u = lin_comb(&(0..n).map(|i| Scalar::int(i as i64 + 1)).collect::<Vec<_>>(), basis);
    let w = lin_comb(&(0..n).map(|i| Scalar::int(if i % 2 == 0 { -2 } else { 3 })).collect::<Vec<_>>(), basis);
    let (p, q) = (Scalar::int(3), Scalar::frac(-1, 2));
    let mix: Vec<Scalar> = u.iter().zip(&w).map(|(a, b)| &(&p * a) + &(&q * b)).collect();
    let lin = |f: &dyn Fn(&[Scalar]) -> Vec<Scalar>| {
        let lhs = f(&mix);
        let rhs: Vec<Scalar> = f(&u).iter().zip(f(&w)).map(|(a, b)| &(&p * a) + &(&q * &b)).collect();
        lhs == rhs
    };
    let (b0, b1) = (&basis[0], &basis[n - 1]);
    lin(&|v| amb.triple(v, b0, b1)) && lin(&|v| amb.triple(b0, v, b1)) && lin(&|v| amb.triple(b0, b1, v))
}

fn check_seed(seed: &Subspace, t: &LtsCarrier) -> Result<Vec<Vec<Scalar>>> {
    if !t.space().contains_subspace(seed)? {
        return Err(Error::Precondition("seed is not inside the carrier".into()));
    }
    seed.basis().iter().map(|v| t.to_coords(v)).collect()
}

/// Least subtriple of `t` containing `seed`, by saturating
/// `S ← S + [S, S, S]`; stops as soon as `S` fills the carrier.
pub fn generated_subtriple(seed: &Subspace, t: &LtsCarrier) -> Result<Subspace> {
    let n = t.dim();
    let mut gens = check_seed(seed, t)?;
    let mut span = Subspace::from_span(n, gens.clone());
    gens = span.basis().to_vec();
    // Triples (a, b, c) with max(a, b, c) ≥ `done` are still unprocessed.
    let mut done = 0;
    while done < gens.len() && span.dim() < n {
        let top = gens.len();
        'outer: for a in 0..top {
            for b in 0..top {
                for c in 0..top {
                    if a.max(b).max(c) < done {
                        continue;
                    }
                    let v = t.triple_coords(&gens[a], &gens[b], &gens[c]);
                    if span.extend(v.clone()) {
                        gens.push(v);
                        if span.dim() == n {
                            break 'outer;
                        }
                    }
                }
            }
        }
        done = top;
    }
    let vecs = span.basis().iter().map(|c| t.from_coords(c)).collect();
    Ok(Subspace::from_span(t.space().ambient_dim(), vecs))
}

/// `[I, T, T], [T, I, T], [T, T, I] ⊆ I`
pub fn is_ideal(ideal: &Subspace, t: &LtsCarrier) -> Result<bool> {
    let ic = Subspace::from_span(t.dim(), check_seed(ideal, t)?);
    let n = t.dim();
    let tb: Vec<Vec<Scalar>> = (0..n).map(|i| unit(n, i)).collect();
    for i in ic.basis() {
        for x in &tb {
            for y in &tb {
                for v in [t.triple_coords(i, x, y), t.triple_coords(x, i, y), t.triple_coords(x, y, i)] {
                    if !ic.contains(&v) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// `dim(T + [T, T])` inside the Lie algebra the ambient embeds into.
pub fn envelope_dim(t: &LtsCarrier) -> Result<usize> {
    let basis = t.space().basis();
    let emb: Vec<Embedded> = basis
        .iter()
        .map(|v| t.ambient().embed(v))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Precondition(format!("no matrix embedding for the {} ambient", t.ambient().name())))?;
    if emb.is_empty() {
        return Ok(0);
    }
    let g = G2::get();
    let mut all = Vec::new();
    for (p, x) in emb.iter().enumerate() {
        match x {
            Embedded::G2(c) => all.push(c.clone()),
            Embedded::Matrix(m) => all.push(m.as_flat().to_vec()),
        }
        for y in &emb[p + 1..] {
            match (x, y) {
                (Embedded::G2(a), Embedded::G2(b)) => all.push(g.bracket(a, b)),
                (Embedded::Matrix(a), Embedded::Matrix(b)) => all.push(a.commutator(b).into_flat()),
                _ => unreachable!("one ambient embeds uniformly"),
            }
        }
    }
    let len = all[0].len();
    Ok(Subspace::from_span(len, all).dim())
}

/// `dim T + dim span{L_{x,y}}`, the dimension of `InnDer(T) ⊕ T` when the
/// `L_{x,y}` already span a Lie algebra (true for Lie triple systems).
pub fn abstract_envelope_dim(t: &LtsCarrier) -> usize {
    let n = t.dim();
    let ops: Vec<Vec<Scalar>> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .map(|(x, y)| t.left_mult(&unit(n, x), &unit(n, y)).into_flat())
        .collect();
    n + Subspace::from_span(n * n, ops).dim()
}
