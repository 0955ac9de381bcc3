//! g2 = Der(R^7, ×) as a 14-dimensional space of 7×7 matrices.
//!
//! Elements are mostly handled through their coordinates on the canonical
//! (row-reduced) basis of the solution space of the Leibniz system, with
//! the bracket evaluated from cached structure constants.

use std::sync::{Arc, OnceLock};

use crate::cross7::{associator, cross, Octonion};
use crate::error::{Error, Result};
use crate::linalg::{LinMap7, Matrix, Subspace, Vec7};
use crate::scalar::Scalar;

pub const DIM: usize = 14;

/// Sparse structure constants: `[B_a, B_b] = Σ c · B_k` over `(k, c)`.
type Structure = Vec<Vec<Vec<(usize, Scalar)>>>;

#[derive(Clone, Debug)]
pub struct G2 {
    basis: Vec<Matrix>,
    flat: Subspace,
    structure: Structure,
}

/// Builds the linear system `d(e_a × e_b) − d(e_a) × e_b − e_a × d(e_b) = 0`
/// over all 21 pairs `a < b`, the 49 unknowns being the entries of `d`.
fn leibniz_system() -> Matrix {
    let mut rows = Vec::with_capacity(147);
    for a in 1..=7 {
        for b in a + 1..=7 {
            let (ea, eb) = (Vec7::e(a), Vec7::e(b));
            let cols: Vec<Vec7> = (0..49)
                .map(|p| {
                    let d = Matrix::unit(7, 7, p / 7, p % 7);
                    let lhs = Vec7::apply(&d, &cross(&ea, &eb));
                    let r1 = cross(&Vec7::apply(&d, &ea), &eb);
                    let r2 = cross(&ea, &Vec7::apply(&d, &eb));
                    &(&lhs - &r1) - &r2
                })
                .collect();
            for comp in 0..7 {
                rows.push(cols.iter().map(|c| c[comp].clone()).collect());
            }
        }
    }
    Matrix::from_rows(rows)
}

impl G2 {
    /// Solves the Leibniz system and caches the bracket table.
    pub fn derivation_algebra() -> Self {
        let flat = leibniz_system().kernel();
        let basis: Vec<Matrix> = flat.basis().iter().map(|r| Matrix::from_flat(7, 7, r.clone())).collect();
        let mut g = G2 { basis, flat, structure: vec![] };
        let n = g.dim();
        let mut structure = vec![vec![vec![]; n]; n];
        for a in 0..n {
            for b in a + 1..n {
                let c = g.coords(&g.basis[a].commutator(&g.basis[b])).expect("g2 is closed under the bracket");
                let sparse: Vec<(usize, Scalar)> = c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                structure[b][a] = sparse.iter().map(|(k, x)| (*k, -x)).collect();
                structure[a][b] = sparse;
            }
        }
        g.structure = structure;
        g
    }

    /// Shared instance; construction is deterministic.
    pub fn get() -> &'static G2 {
        Self::instance()
    }

    pub fn shared() -> Arc<G2> {
        Self::instance().clone()
    }

    fn instance() -> &'static Arc<G2> {
        static G: OnceLock<Arc<G2>> = OnceLock::new();
        G.get_or_init(|| Arc::new(G2::derivation_algebra()))
    }

    /// A copy whose bracket table has one entry perturbed, for exercising
    /// the failure paths of the verification suite.
    #[doc(hidden)]
    pub fn with_corrupted_constant(&self) -> G2 {
        let mut g = self.clone();
        let (a, b) = (0, 1);
        let (k, c) = match g.structure[a][b].first() {
            Some((k, c)) => (*k, c + &Scalar::one()),
            None => (0, Scalar::one()),
        };
        g.structure[a][b].retain(|(j, _)| *j != k);
        g.structure[a][b].push((k, c.clone()));
        g.structure[b][a].retain(|(j, _)| *j != k);
        g.structure[b][a].push((k, -c));
        g
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// The 14-dimensional space as a subspace of gl(7) = F^49.
    pub fn flat(&self) -> &Subspace {
        &self.flat
    }

    pub fn contains(&self, m: &LinMap7) -> bool {
        self.flat.contains(m.as_flat())
    }

    pub fn coords(&self, m: &LinMap7) -> Result<Vec<Scalar>> {
        self.flat.coords(m.as_flat()).ok_or_else(|| Error::NotMember("g2".into()))
    }

    pub fn element(&self, c: &[Scalar]) -> Matrix {
        Matrix::from_flat(7, 7, self.flat.combine(c))
    }

    /// Bracket in coordinates, from the structure constants.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let p = xa * yb;
                for (k, c) in &self.structure[a][b] {
                    out[*k] += &(&p * c);
                }
            }
        }
        out
    }

    pub fn structure(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.structure[a][b]
    }

    /// Matrix of `ad x` on the coordinate space.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for b in 0..n {
                for (k, c) in &self.structure[a][b] {
                    m[(*k, b)] += &(xa * c);
                }
            }
        }
        m
    }

    /// `κ(x, y) = tr(ad x ∘ ad y)`
    pub fn killing(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.ad(x).mul(&self.ad(y)).trace()
    }

    /// `tr(x y)` on R^7.
    pub fn trace_form(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.element(x).mul(&self.element(y)).trace()
    }

    pub fn killing_gram(&self) -> Matrix {
        let ads: Vec<Matrix> = (0..self.dim()).map(|a| self.ad(&unit(self.dim(), a))).collect();
        Matrix::from_fn(self.dim(), self.dim(), |a, b| ads[a].mul(&ads[b]).trace())
    }

    pub fn span(&self, ms: &[Matrix]) -> Result<Subspace> {
        let cs = ms.iter().map(|m| self.coords(m)).collect::<Result<Vec<_>>>()?;
        Ok(Subspace::from_span(self.dim(), cs))
    }

    fn check_sub(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: s.ambient_dim() });
        }
        Ok(())
    }

    /// `{d ∈ g2 : [d, S] ⊆ S}`
    pub fn normalizer(&self, s: &Subspace) -> Result<Subspace> {
        self.check_sub(s)?;
        let perp = s.orthogonal_complement();
        if perp.is_zero() {
            return Ok(Subspace::full(self.dim()));
        }
        let a = Matrix::from_rows(perp.basis().to_vec());
        // [d, s] = −ad(s) d, and ⟨row of A, ·⟩ = 0 characterises S.
        let mut m = Matrix::zeros(0, self.dim());
        for v in s.basis() {
            m = m.vstack(&a.mul(&self.ad(v)));
        }
        Ok(m.kernel())
    }

    /// `{d ∈ g2 : [d, S] = 0}`
    pub fn centralizer(&self, s: &Subspace) -> Result<Subspace> {
        self.check_sub(s)?;
        let mut m = Matrix::zeros(0, self.dim());
        for v in s.basis() {
            m = m.vstack(&self.ad(v));
        }
        if s.is_zero() {
            return Ok(Subspace::full(self.dim()));
        }
        Ok(m.kernel())
    }

    /// Subspace of coordinates mapped into `target` by the linear map
    /// `d ↦ f(element(d))` for each basis element.
    pub fn preimage(&self, target: &Subspace, f: impl Fn(&Matrix) -> Vec<Scalar>) -> Subspace {
        let perp = target.orthogonal_complement();
        let cols: Vec<Vec<Scalar>> = self.basis.iter().map(|b| f(b)).collect();
        let img = Matrix::from_cols(&cols);
        if perp.is_zero() {
            return Subspace::full(self.dim());
        }
        Matrix::from_rows(perp.basis().to_vec()).mul(&img).kernel()
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// Leibniz rule on all basis pairs.
pub fn is_derivation(d: &LinMap7) -> bool {
    (1..=7).all(|a| {
        (1..=7).all(|b| {
            let (x, y) = (Vec7::e(a), Vec7::e(b));
            Vec7::apply(d, &cross(&x, &y))
                == &cross(&Vec7::apply(d, &x), &y) + &cross(&x, &Vec7::apply(d, &y))
        })
    })
}

pub fn is_skew(d: &LinMap7) -> bool {
    d.add(&d.transpose()).is_zero()
}

/// `D_{x,y}(z) = [[x,y],z] + 3(x,z,y)` computed in the octonions.
pub fn d_op(x: &Vec7, y: &Vec7) -> Result<LinMap7> {
    let (ox, oy) = (Octonion::pure(x.clone()), Octonion::pure(y.clone()));
    let xy = ox.commutator(&oy);
    let mut cols = Vec::with_capacity(7);
    for c in 1..=7 {
        let z = Octonion::pure(Vec7::e(c));
        let v = xy.commutator(&z).add(&associator(&ox, &z, &oy).scale(&Scalar::int(3)));
        if !v.re.is_zero() {
            return Err(Error::Invariant(format!("D_{{x,y}}(e_{c}) has a real part")));
        }
        cols.push(v.im.to_vec());
    }
    Ok(Matrix::from_cols(&cols))
}

/// An orthonormal `{i, j, k = i × j}` spanning an associative subalgebra,
/// plus a unit `ℓ` orthogonal to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub i: Vec7,
    pub j: Vec7,
    pub k: Vec7,
    pub l: Vec7,
}

impl Frame {
    pub fn new(i: Vec7, j: Vec7, l: Vec7) -> Result<Self> {
        let k = cross(&i, &j);
        let f = Frame { i, j, k, l };
        f.validate()?;
        Ok(f)
    }

    /// `i = e_1, j = e_2, k = e_4, ℓ = e_3`.
    pub fn standard() -> Self {
        Frame::new(Vec7::e(1), Vec7::e(2), Vec7::e(3)).expect("standard frame is valid")
    }

    pub fn validate(&self) -> Result<()> {
        let v = [&self.i, &self.j, &self.k, &self.l];
        for (a, x) in v.iter().enumerate() {
            for (b, y) in v.iter().enumerate() {
                let expect = if a == b { Scalar::one() } else { Scalar::zero() };
                if x.dot(y) != expect {
                    return Err(Error::Precondition("frame is not orthonormal".into()));
                }
            }
        }
        if cross(&self.i, &self.j) != self.k {
            return Err(Error::Precondition("frame has k ≠ i × j".into()));
        }
        Ok(())
    }

    /// `v_0 = ℓ, v_1 = i×ℓ, v_2 = j×ℓ, v_3 = k×ℓ`.
    pub fn v(&self) -> [Vec7; 4] {
        [self.l.clone(), cross(&self.i, &self.l), cross(&self.j, &self.l), cross(&self.k, &self.l)]
    }

    /// `{i, j, k, ℓ, i×ℓ, j×ℓ, k×ℓ}`, an orthonormal basis of R^7.
    pub fn basis(&self) -> [Vec7; 7] {
        let [v0, v1, v2, v3] = self.v();
        [self.i.clone(), self.j.clone(), self.k.clone(), v0, v1, v2, v3]
    }

    pub fn uvw(&self) -> [Vec7; 3] {
        [self.i.clone(), self.j.clone(), self.k.clone()]
    }

    /// The linear map with prescribed images of the frame basis.
    pub fn map_from_images(&self, images: &[Vec7; 7]) -> LinMap7 {
        // Orthonormal basis F: M = Img · Fᵀ.
        let f = Matrix::from_cols(&self.basis().iter().map(Vec7::to_vec).collect::<Vec<_>>());
        let img = Matrix::from_cols(&images.iter().map(Vec7::to_vec).collect::<Vec<_>>());
        img.mul(&f.transpose())
    }

    fn check_in_v(&self, a: &Vec7) -> Result<()> {
        let proj = &(&self.i.scale(&a.dot(&self.i)) + &self.j.scale(&a.dot(&self.j))) + &self.k.scale(&a.dot(&self.k));
        if &proj != a {
            return Err(Error::Precondition("vector is not in span{i, j, k}".into()));
        }
        Ok(())
    }

    /// `λ_a(v) = 0, λ_a(ℓ) = a×ℓ, λ_a(v×ℓ) = (a×v)×ℓ − ⟨v,a⟩ℓ` for `v ∈ V`.
    pub fn lambda(&self, a: &Vec7) -> Result<LinMap7> {
        self.check_in_v(a)?;
        let l = &self.l;
        let v = self.uvw();
        let side = |x: &Vec7| &cross(&cross(a, x), l) - &l.scale(&x.dot(a));
        let images = [
            Vec7::zero(),
            Vec7::zero(),
            Vec7::zero(),
            cross(a, l),
            side(&v[0]),
            side(&v[1]),
            side(&v[2]),
        ];
        in_g2(self.map_from_images(&images), "λ_a")
    }

    /// `ρ_a(v) = 2a×v, ρ_a(ℓ) = −a×ℓ, ρ_a(v×ℓ) = (a×v)×ℓ + ⟨v,a⟩ℓ` for `v ∈ V`.
    pub fn rho(&self, a: &Vec7) -> Result<LinMap7> {
        self.check_in_v(a)?;
        let l = &self.l;
        let v = self.uvw();
        let two = Scalar::int(2);
        let side = |x: &Vec7| &cross(&cross(a, x), l) + &l.scale(&x.dot(a));
        let images = [
            cross(a, &v[0]).scale(&two),
            cross(a, &v[1]).scale(&two),
            cross(a, &v[2]).scale(&two),
            -&cross(a, l),
            side(&v[0]),
            side(&v[1]),
            side(&v[2]),
        ];
        in_g2(self.map_from_images(&images), "ρ_a")
    }
}

fn in_g2(m: LinMap7, what: &str) -> Result<LinMap7> {
    if G2::get().contains(&m) {
        Ok(m)
    } else {
        Err(Error::NotMember(format!("g2 ({what})")))
    }
}
