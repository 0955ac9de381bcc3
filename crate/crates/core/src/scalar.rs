//! The real field Q(√6, √10), stored on the basis {1, √6, √10, √15}.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign, Div};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Squarefree radicands of the basis, in coordinate order.
pub const RADICANDS: [u32; 4] = [1, 6, 10, 15];

/// `a + b√6 + c√10 + d√15` with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    c: [BigRational; 4],
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Scalar { c: [a, b, c, d] }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    pub fn int(n: i64) -> Self {
        Scalar::rational(q(n))
    }

    pub fn rational(r: BigRational) -> Self {
        Scalar { c: [r, BigRational::zero(), BigRational::zero(), BigRational::zero()] }
    }

    /// `num/den` as a rational scalar. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        Scalar::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Integer coordinates on {1, √6, √10, √15}.
    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Scalar { c: [q(a), q(b), q(c), q(d)] }
    }

    pub fn sqrt6() -> Self {
        Scalar::from_ints(0, 1, 0, 0)
    }

    pub fn sqrt10() -> Self {
        Scalar::from_ints(0, 0, 1, 0)
    }

    pub fn sqrt15() -> Self {
        Scalar::from_ints(0, 0, 0, 1)
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.is_rational()
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.c[0])
    }

    fn conj_by(&self, flips: [bool; 4]) -> Scalar {
        let mut out = self.clone();
        for (x, f) in out.c.iter_mut().zip(flips) {
            if f {
                *x = -x.clone();
            }
        }
        out
    }

    /// Multiplicative inverse: multiply by the conjugates that kill √10,
    /// then √6, leaving a rational norm.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Scalar::rational(r.recip()));
        }
        // σ: √10 ↦ −√10 (so √15 ↦ −√15); τ: √6 ↦ −√6 (so √15 ↦ −√15).
        let s1 = self.conj_by([false, false, true, true]);
        let p = self * &s1; // in Q(√6)
        let s2 = p.conj_by([false, true, false, true]);
        let n = &p * &s2;
        let n = n.as_rational().expect("norm of Q(√6,√10) element is rational").clone();
        let factor = Scalar::rational(n.recip());
        Ok(&(&s1 * &s2) * &factor)
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &BigRational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar { c: std::array::from_fn(|i| &self.c[i] * r) }
    }

    /// Sign under the real embedding with positive square roots.
    pub fn sign(&self) -> i8 {
        if self.is_rational() {
            return sign_q(&self.c[0]);
        }
        let mut bits = 8u32;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    /// A rational interval containing the real value, built from
    /// `isqrt(r·4^bits) / 2^bits ≤ √r < (isqrt + 1) / 2^bits`.
    fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let scale = BigInt::one() << bits;
        let mut lo = self.c[0].clone();
        let mut hi = self.c[0].clone();
        for k in 1..4 {
            let coef = &self.c[k];
            if coef.is_zero() {
                continue;
            }
            let n = BigUint::from(RADICANDS[k]) << (2 * bits);
            let root = BigInt::from_biguint(Sign::Plus, n.sqrt());
            let r_lo = BigRational::new(root.clone(), scale.clone());
            let r_hi = BigRational::new(root + 1, scale.clone());
            if coef.is_positive() {
                lo += coef * &r_lo;
                hi += coef * &r_hi;
            } else {
                lo += coef * &r_hi;
                hi += coef * &r_lo;
            }
        }
        (lo, hi)
    }

    pub fn cmp_real(&self, other: &Scalar) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Square root of a non-negative rational, when it lies in the field.
    pub fn sqrt_rational(r: &BigRational) -> Result<Scalar> {
        if r.is_negative() {
            return Err(Error::SqrtOutsideField(r.to_string()));
        }
        if r.is_zero() {
            return Ok(Scalar::zero());
        }
        // √(p/q) = √(pq)/q
        let m = r.numer() * r.denom();
        for (k, &f) in RADICANDS.iter().enumerate() {
            let f = BigInt::from(f);
            let (quot, rem) = m.div_rem(&f);
            if !rem.is_zero() {
                continue;
            }
            let s = quot.sqrt();
            if &s * &s == quot {
                let mut c: [BigRational; 4] = Default::default();
                c[k] = BigRational::new(s, r.denom().clone());
                return Ok(Scalar { c });
            }
        }
        Err(Error::SqrtOutsideField(r.to_string()))
    }

    pub fn sqrt(&self) -> Result<Scalar> {
        match self.as_rational() {
            Some(r) => Scalar::sqrt_rational(r),
            None => Err(Error::SqrtOutsideField(self.to_string())),
        }
    }

    /// Floating-point approximation, for diagnostics only.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        RADICANDS
            .iter()
            .zip(&self.c)
            .map(|(&r, x)| x.to_f64().unwrap_or(f64::NAN) * f64::from(r).sqrt())
            .sum()
    }
}

fn sign_q(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn mul_coords(x: &[BigRational; 4], y: &[BigRational; 4]) -> [BigRational; 4] {
    // (1, √6, √10, √15) products: √6√10 = 2√15, √6√15 = 3√10, √10√15 = 5√6.
    const TABLE: [[(usize, i64); 4]; 4] = [
        [(0, 1), (1, 1), (2, 1), (3, 1)],
        [(1, 1), (0, 6), (3, 2), (2, 3)],
        [(2, 1), (3, 2), (0, 10), (1, 5)],
        [(3, 1), (2, 3), (1, 5), (0, 15)],
    ];
    let mut out: [BigRational; 4] = Default::default();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let (k, m) = TABLE[i][j];
            let p = xi * yj;
            if m == 1 {
                out[k] += p;
            } else {
                out[k] += p * BigInt::from(m);
            }
        }
    }
    out
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar { c: mul_coords(&self.c, &rhs.c) }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { c: std::array::from_fn(|i| &self.c[i] + &rhs.c[i]) }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { c: std::array::from_fn(|i| &self.c[i] - &rhs.c[i]) }
    }
}

/// Panics on a zero divisor; use [`Scalar::checked_div`] for an error value.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("Scalar division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (x, y) in self.c.iter_mut().zip(&rhs.c) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (x, y) in self.c.iter_mut().zip(&rhs.c) {
            if !y.is_zero() {
                *x -= y;
            }
        }
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.c = mul_coords(&self.c, &rhs.c);
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { c: self.c.map(|x| -x) }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::rational(r)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        let mut acc = Scalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

const NAMES: [&str; 4] = ["", "r6", "r10", "r15"];

fn fmt_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Format: `p/q + p/q*r6 + p/q*r10 + p/q*r15`, with zero terms omitted,
/// integer coefficients written without a denominator and unit radical
/// coefficients dropped (`r6`, `-r10`).
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mag = x.abs();
            let body = if k == 0 {
                fmt_ratio(&mag)
            } else if mag.is_one() {
                NAMES[k].to_string()
            } else {
                format!("{}*{}", fmt_ratio(&mag), NAMES[k])
            };
            match (first, x.is_negative()) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        let bad = || Error::ParseScalar(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        // Split into signed terms at every +/- that is not leading.
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for (i, ch) in compact.char_indices() {
            // `p/q` with negative p after " + " gives "+-p/q": one term
            if i > 0 && (ch == '+' || ch == '-') && !matches!(bytes[i - 1], b'+' | b'-') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut c: [BigRational; 4] = Default::default();
        for term in terms {
            let (neg, body) = match term.as_bytes() {
                [b'+', b'-', ..] => (true, &term[2..]),
                [b'-', ..] => (true, &term[1..]),
                [b'+', ..] => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coef, slot) = match body.find('r') {
                None => (body, 0),
                Some(pos) => {
                    let slot = NAMES.iter().position(|n| *n == &body[pos..]).filter(|&k| k > 0).ok_or_else(bad)?;
                    let coef = &body[..pos];
                    let coef = if coef.is_empty() {
                        "1"
                    } else {
                        coef.strip_suffix('*').filter(|c| !c.is_empty()).ok_or_else(bad)?
                    };
                    (coef, slot)
                }
            };
            if coef.starts_with(['+', '-']) {
                return Err(bad());
            }
            let mut v = BigRational::from_str(coef).map_err(|_| bad())?;
            if neg {
                v = -v;
            }
            c[slot] += v;
        }
        Ok(Scalar { c })
    }
}
