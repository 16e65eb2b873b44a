//! Exact arithmetic in the number field Q(i, √2, √3) and a complex
//! floating-point layer with a uniform relative-tolerance policy.
//!
//! An [`ExactScalar`] is stored as eight rationals: the real and imaginary
//! coordinates on the basis {1, √2, √3, √6}. Products of basis elements
//! reduce through √2·√3 = √6, √2·√6 = 2√3, √3·√6 = 3√2 and i² = −1, so the
//! representation is closed under the field operations and equality of
//! coordinates is equality in the field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Names of the four radical basis elements, in coordinate order.
const BASIS_NAMES: [&str; 4] = ["1", "sqrt2", "sqrt3", "sqrt6"];

/// Reduction table for products of basis elements: entry `[j][k]` is the
/// target coordinate and the integer factor of `basis[j] * basis[k]`.
const BASIS_MUL: [[(usize, i64); 4]; 4] = [
    [(0, 1), (1, 1), (2, 1), (3, 1)],
    [(1, 1), (0, 2), (3, 1), (2, 2)],
    [(2, 1), (3, 1), (0, 3), (1, 3)],
    [(3, 1), (2, 2), (1, 3), (0, 6)],
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero in Q(i, sqrt2, sqrt3)")]
    DivisionByZero,
    #[error("{0} is not a divisor of 24, no exact root of unity available")]
    UnsupportedRootOrder(u32),
}

/// An element of Q(i, √2, √3), kept in lowest terms coordinate-wise.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactScalar {
    re: [BigRational; 4],
    im: [BigRational; 4],
}

fn zero4() -> [BigRational; 4] {
    std::array::from_fn(|_| BigRational::zero())
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self { re: zero4(), im: zero4() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        let mut s = Self::zero();
        s.re[0] = big(n);
        s
    }

    /// The rational number `num/den`.
    ///
    /// # Panics
    /// Panics if `den == 0`.
    pub fn rational(num: i64, den: i64) -> Self {
        let mut s = Self::zero();
        s.re[0] = BigRational::new(BigInt::from(num), BigInt::from(den));
        s
    }

    pub fn from_ratio(r: BigRational) -> Self {
        let mut s = Self::zero();
        s.re[0] = r;
        s
    }

    /// Builds a scalar from explicit real and imaginary coordinates on
    /// {1, √2, √3, √6}.
    pub fn from_coords(re: [BigRational; 4], im: [BigRational; 4]) -> Self {
        Self { re, im }
    }

    pub fn sqrt2() -> Self {
        Self::radical(1)
    }

    pub fn sqrt3() -> Self {
        Self::radical(2)
    }

    pub fn sqrt6() -> Self {
        Self::radical(3)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        let mut s = Self::zero();
        s.im[0] = BigRational::one();
        s
    }

    fn radical(idx: usize) -> Self {
        let mut s = Self::zero();
        s.re[idx] = BigRational::one();
        s
    }

    pub fn is_zero(&self) -> bool {
        self.re.iter().all(Zero::is_zero) && self.im.iter().all(Zero::is_zero)
    }

    /// True when the value lies in Q (all radical and imaginary coordinates vanish).
    pub fn is_rational(&self) -> bool {
        self.re[1..].iter().all(Zero::is_zero) && self.im.iter().all(Zero::is_zero)
    }

    /// The rational part, when [`is_rational`](Self::is_rational) holds.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.re[0])
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        let mut s = self.clone();
        for c in s.im.iter_mut() {
            *c = -std::mem::take(c);
        }
        s
    }

    /// Multiplication by the imaginary unit.
    pub fn mul_i(&self) -> Self {
        let mut s = Self::zero();
        for k in 0..4 {
            s.re[k] = -self.im[k].clone();
            s.im[k] = self.re[k].clone();
        }
        s
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut s = self.clone();
        for c in s.re.iter_mut().chain(s.im.iter_mut()) {
            *c = &*c * r;
        }
        s
    }

    /// Applies the Galois automorphism flipping the signs of √2, √3 and/or i.
    fn galois(&self, flip2: bool, flip3: bool, flip_i: bool) -> Self {
        let mut s = self.clone();
        // √6 flips whenever exactly one of √2, √3 flips.
        let flips = [false, flip2, flip3, flip2 ^ flip3];
        for k in 0..4 {
            if flips[k] {
                s.re[k] = -std::mem::take(&mut s.re[k]);
                s.im[k] = -std::mem::take(&mut s.im[k]);
            }
            if flip_i {
                s.im[k] = -std::mem::take(&mut s.im[k]);
            }
        }
        s
    }

    /// The multiplicative inverse, computed as the product of the seven
    /// nontrivial Galois conjugates divided by the rational field norm.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut prod = ExactScalar::one();
        for mask in 1u8..8 {
            let sigma = self.galois(mask & 1 != 0, mask & 2 != 0, mask & 4 != 0);
            prod = &prod * &sigma;
        }
        let norm = self * &prod;
        let n = norm
            .as_rational()
            .expect("product over the full Galois orbit is rational")
            .clone();
        debug_assert!(!n.is_zero());
        Ok(prod.scale(&n.recip()))
    }

    pub fn powu(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// The primitive root of unity `exp(2πi·k/n)` for any `n` dividing 24.
    ///
    /// All such roots live in Q(i, √2, √3): their real and imaginary parts
    /// are the cosines and sines of multiples of 15 degrees.
    pub fn root_of_unity(k: i64, n: u32) -> Result<Self, ScalarError> {
        if n == 0 || 24 % n != 0 {
            return Err(ScalarError::UnsupportedRootOrder(n));
        }
        let step = (24 / n) as i64;
        let a = (k * step).rem_euclid(24) as u32;
        let mut s = Self::zero();
        s.re = cos_15deg(a);
        s.im = cos_15deg((a + 18) % 24); // sin θ = cos(θ − 90°)
        Ok(s)
    }

    /// Evaluates to double-precision complex using float values of √2, √3, √6.
    pub fn to_f64(&self) -> Complex64 {
        let radicals = [1.0, std::f64::consts::SQRT_2, 3f64.sqrt(), 6f64.sqrt()];
        let eval = |coords: &[BigRational; 4]| {
            coords
                .iter()
                .zip(radicals)
                .map(|(c, r)| c.to_f64().unwrap_or(f64::NAN) * r)
                .sum::<f64>()
        };
        Complex64::new(eval(&self.re), eval(&self.im))
    }
}

/// Coordinates of cos(a·15°) on {1, √2, √3, √6}, for 0 ≤ a < 24.
fn cos_15deg(a: u32) -> [BigRational; 4] {
    // First quadrant values; the rest follow from reflection symmetries.
    fn quadrant(a: u32) -> [BigRational; 4] {
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        match a {
            0 => [q(1, 1), q(0, 1), q(0, 1), q(0, 1)],
            1 => [q(0, 1), q(1, 4), q(0, 1), q(1, 4)], // (√6 + √2)/4
            2 => [q(0, 1), q(0, 1), q(1, 2), q(0, 1)],
            3 => [q(0, 1), q(1, 2), q(0, 1), q(0, 1)],
            4 => [q(1, 2), q(0, 1), q(0, 1), q(0, 1)],
            5 => [q(0, 1), q(-1, 4), q(0, 1), q(1, 4)], // (√6 − √2)/4
            _ => [q(0, 1), q(0, 1), q(0, 1), q(0, 1)],  // a == 6
        }
    }
    let (reflect, negate) = match a {
        0..=6 => (a, false),
        7..=12 => (12 - a, true),
        13..=18 => (a - 12, true),
        _ => (24 - a, false),
    };
    let mut c = quadrant(reflect);
    if negate {
        for x in c.iter_mut() {
            *x = -std::mem::take(x);
        }
    }
    c
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let mut s = self.clone();
        for k in 0..4 {
            s.re[k] += &rhs.re[k];
            s.im[k] += &rhs.im[k];
        }
        s
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        let mut s = self.clone();
        for k in 0..4 {
            s.re[k] -= &rhs.re[k];
            s.im[k] -= &rhs.im[k];
        }
        s
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for j in 0..4 {
            if self.re[j].is_zero() && self.im[j].is_zero() {
                continue;
            }
            for k in 0..4 {
                if rhs.re[k].is_zero() && rhs.im[k].is_zero() {
                    continue;
                }
                let (m, f) = BASIS_MUL[j][k];
                let f = big(f);
                out.re[m] += &f * (&self.re[j] * &rhs.re[k] - &self.im[j] * &rhs.im[k]);
                out.im[m] += &f * (&self.re[j] * &rhs.im[k] + &self.im[j] * &rhs.re[k]);
            }
        }
        out
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        let mut s = self.clone();
        for c in s.re.iter_mut().chain(s.im.iter_mut()) {
            *c = -std::mem::take(c);
        }
        s
    }
}

macro_rules! forward_owned_ops {
    ($($op:ident :: $f:ident),*) => {$(
        impl $op for ExactScalar {
            type Output = ExactScalar;
            fn $f(self, rhs: ExactScalar) -> ExactScalar { (&self).$f(&rhs) }
        }
        impl $op<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $f(self, rhs: &ExactScalar) -> ExactScalar { (&self).$f(rhs) }
        }
    )*};
}
forward_owned_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for (coords, unit) in [(&self.re, ""), (&self.im, "*i")] {
            for (k, c) in coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let base = if k == 0 {
                    String::new()
                } else {
                    format!("*{}", BASIS_NAMES[k])
                };
                terms.push(format!("{c}{base}{unit}"));
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

fn ratio_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn ratio_from_string(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer: BigInt = n.trim().parse().ok()?;
    let denom: BigInt = d.trim().parse().ok()?;
    if denom.is_zero() {
        return None;
    }
    Some(BigRational::new(numer, denom))
}

#[derive(Serialize, Deserialize)]
struct ExactScalarRepr {
    re: [String; 4],
    im: [String; 4],
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = ExactScalarRepr {
            re: std::array::from_fn(|k| ratio_to_string(&self.re[k])),
            im: std::array::from_fn(|k| ratio_to_string(&self.im[k])),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ExactScalarRepr::deserialize(deserializer)?;
        let parse = |a: &[String; 4]| -> Result<[BigRational; 4], D::Error> {
            let mut out = zero4();
            for (k, s) in a.iter().enumerate() {
                out[k] = ratio_from_string(s)
                    .ok_or_else(|| D::Error::custom(format!("invalid rational {s:?}")))?;
            }
            Ok(out)
        };
        Ok(ExactScalar { re: parse(&repr.re)?, im: parse(&repr.im)? })
    }
}

/// Relative comparison tolerance: `x ≈ y` iff `|x − y| ≤ tol·max(1, |x|, |y|)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance(pub f64);

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(1e-9)
    }
}

impl Tolerance {
    pub fn approx_eq(self, x: Complex64, y: Complex64) -> bool {
        (x - y).norm() <= self.0 * 1f64.max(x.norm()).max(y.norm())
    }

    pub fn approx_eq_f64(self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.0 * 1f64.max(x.abs()).max(y.abs())
    }
}

/// Common interface of the exact and floating scalar types, so matrix and
/// multiplier code can run on either.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_complex(&self) -> Complex64;

    fn powu(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Equality at the type's native precision: exact for exact scalars,
    /// tolerance-relative for floats.
    fn close_to(&self, rhs: &Self, tol: Tolerance) -> bool;
}

impl Scalar for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        ExactScalar::conj(self)
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        ExactScalar::rational(num, den)
    }
    fn to_complex(&self) -> Complex64 {
        self.to_f64()
    }
    fn powu(&self, k: u32) -> Self {
        ExactScalar::powu(self, k)
    }
    fn close_to(&self, rhs: &Self, _tol: Tolerance) -> bool {
        self == rhs
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn close_to(&self, rhs: &Self, tol: Tolerance) -> bool {
        tol.approx_eq(*self, *rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> ExactScalar {
        // −1/2 + i/(2√3) = −1/2 + (√3/6)i
        let mut re = zero4();
        let mut im = zero4();
        re[0] = BigRational::new(BigInt::from(-1), BigInt::from(2));
        im[2] = BigRational::new(BigInt::from(1), BigInt::from(6));
        ExactScalar::from_coords(re, im)
    }

    fn cube_root_j() -> ExactScalar {
        ExactScalar::root_of_unity(1, 3).unwrap()
    }

    #[test]
    fn basis_products_reduce() {
        assert_eq!(&ExactScalar::sqrt2() * &ExactScalar::sqrt3(), ExactScalar::sqrt6());
        assert_eq!(
            &ExactScalar::sqrt2() * &ExactScalar::sqrt6(),
            ExactScalar::sqrt3().scale(&big(2))
        );
        assert_eq!(
            &ExactScalar::sqrt3() * &ExactScalar::sqrt6(),
            ExactScalar::sqrt2().scale(&big(3))
        );
        assert_eq!(&ExactScalar::i() * &ExactScalar::i(), ExactScalar::from_int(-1));
    }

    #[test]
    fn modulus_of_b_is_one_third() {
        let b = b();
        assert_eq!(&b * &b.conj(), ExactScalar::rational(1, 3));
    }

    #[test]
    fn cube_root_of_unity_cubes_to_one() {
        let j = cube_root_j();
        assert_eq!(
            &j * &ExactScalar::rational(2, 1),
            ExactScalar::from_coords(
                {
                    let mut re = zero4();
                    re[0] = big(-1);
                    re
                },
                {
                    let mut im = zero4();
                    im[2] = big(1);
                    im
                }
            ),
            "j = (−1 + i√3)/2"
        );
        assert_eq!(j.powu(3), ExactScalar::one());
        assert!((&(&j * &j) + &j + ExactScalar::one()).is_zero(), "1 + j + j² = 0");
    }

    #[test]
    fn inverse_by_galois_norm() {
        let x = &(&ExactScalar::rational(3, 7) + &ExactScalar::sqrt2().scale(&big(2)))
            + &ExactScalar::i().mul_i().mul_i(); // 3/7 + 2√2 − i
        let inv = x.inv().unwrap();
        assert_eq!(&x * &inv, ExactScalar::one());
        assert!(ExactScalar::zero().inv().is_err());
    }

    #[test]
    fn float_images() {
        let delta = ExactScalar::sqrt2().scale(&BigRational::new(BigInt::one(), BigInt::from(3)));
        let f = delta.to_f64();
        assert!((f.re - 0.4714045208).abs() < 1e-9 && f.im == 0.0);

        let bf = b().to_f64();
        assert!((bf.re - (-0.5)).abs() < 1e-15);
        assert!((bf.im - 0.2886751346).abs() < 1e-9);

        assert_eq!(ExactScalar::one().to_f64(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn roots_of_unity_have_exact_order() {
        for n in [1u32, 2, 3, 4, 6, 8, 12, 24] {
            let z = ExactScalar::root_of_unity(1, n).unwrap();
            assert_eq!(z.powu(n), ExactScalar::one(), "order {n}");
            for k in 1..n {
                assert_ne!(z.powu(k), ExactScalar::one(), "primitive, order {n}, power {k}");
            }
        }
        assert!(ExactScalar::root_of_unity(1, 5).is_err());
        // i as the order-4 root
        assert_eq!(ExactScalar::root_of_unity(1, 4).unwrap(), ExactScalar::i());
    }

    #[test]
    fn serde_round_trip() {
        let x = &b() * &ExactScalar::sqrt6();
        let json = serde_json::to_string(&x).unwrap();
        let back: ExactScalar = serde_json::from_str(&json).unwrap();
        assert_eq!(x, back);
        assert!(json.contains("\"re\""));
    }

    #[test]
    fn tolerance_policy() {
        let tol = Tolerance::default();
        assert!(tol.approx_eq(Complex64::new(1.0, 0.0), Complex64::new(1.0 + 1e-10, 0.0)));
        assert!(!tol.approx_eq(Complex64::new(1.0, 0.0), Complex64::new(1.1, 0.0)));
        // relative on large values
        assert!(tol.approx_eq(Complex64::new(1e9, 0.0), Complex64::new(1e9 + 0.1, 0.0)));
    }
}
