//! Arbitrary-precision arithmetic, roots of unity and the tolerance policy.
//!
//! Real values are MPFR floats (via `rug`); complex values are pairs of them.
//! Every oracle evaluation runs at `precision_bits + GUARD_BITS` and is compared
//! at `precision_bits` through [`PrecisionContext::accepts`].

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Integer};

use crate::error::{Error, Result};

pub use rug::{Float, Rational};

pub const DEFAULT_PRECISION_BITS: u32 = 256;
pub const MIN_PRECISION_BITS: u32 = 64;
/// Extra mantissa bits carried by all oracle computations.
pub const GUARD_BITS: u32 = 32;

/// Working precision and the comparison tolerance derived from it.
#[derive(Clone, Debug)]
pub struct PrecisionContext {
    precision_bits: u32,
    tolerance: Float,
}

/// Builds a context with tolerance `2^-(precision_bits - 32)`.
pub fn make_context(precision_bits: u32) -> Result<PrecisionContext> {
    PrecisionContext::new(precision_bits)
}

impl PrecisionContext {
    pub fn new(precision_bits: u32) -> Result<Self> {
        if precision_bits < MIN_PRECISION_BITS {
            return Err(Error::InvalidPrecision(precision_bits));
        }
        let tolerance = Float::with_val(precision_bits, 1u32) >> (precision_bits - 32);
        Ok(PrecisionContext {
            precision_bits,
            tolerance,
        })
    }

    /// Replaces the policy tolerance. It must lie in `(0, 2^-32]`.
    pub fn with_tolerance(mut self, tolerance: Float) -> Result<Self> {
        let ceiling = Float::with_val(64, 1u32) >> 32u32;
        if !(tolerance.is_finite() && tolerance > 0 && tolerance <= ceiling) {
            return Err(Error::InvalidTolerance(format!(
                "{} is outside (0, 2^-32]",
                tolerance.to_string_radix(10, Some(8))
            )));
        }
        self.tolerance = Float::with_val(self.precision_bits, tolerance);
        Ok(self)
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn tolerance(&self) -> &Float {
        &self.tolerance
    }

    /// Precision used for intermediate oracle arithmetic.
    pub fn work_bits(&self) -> u32 {
        self.precision_bits + GUARD_BITS
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.work_bits(), Constant::Pi)
    }

    /// `|diff| <= tolerance * max(1, reference_abs)`.
    pub fn accepts(&self, diff: &Float, reference_abs: &Float) -> bool {
        let scale = if *reference_abs > 1 {
            reference_abs.clone()
        } else {
            Float::with_val(self.precision_bits, 1u32)
        };
        let bound = Float::with_val(self.work_bits(), &self.tolerance * &scale);
        diff.is_finite() && *diff <= bound
    }
}

/// `|a - b| <= tolerance * max(1, |b|)`.
pub fn approx_equal(ctx: &PrecisionContext, a: &HighComplex, b: &HighComplex) -> bool {
    let diff = (a - b).abs();
    ctx.accepts(&diff, &b.abs())
}

/// Exact Horner evaluation of `coeffs[0] + coeffs[1] x + ...`.
pub fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::new();
    for c in coeffs.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

/// Convenience constructor for `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

pub fn rat_int(v: impl Into<Integer>) -> Rational {
    Rational::from(v.into())
}

/// Renders a rational as `n/d`, including integers (`5/1`).
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal rendering with enough digits to represent `bits` of mantissa.
pub fn float_string(x: &Float, bits: u32) -> String {
    let digits = (f64::from(bits) * std::f64::consts::LOG10_2).ceil() as usize + 1;
    x.to_string_radix(10, Some(digits))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

pub fn require_coprime(a: i64, b: i64) -> Result<()> {
    if gcd(a, b) == 1 {
        Ok(())
    } else {
        Err(Error::Coprimality(a, b))
    }
}

/// `(sin(pi num/den), cos(pi num/den))` at `bits` of precision.
///
/// Multiples of `pi/2` are returned exactly so that factors such as
/// `cot(pi/2)` vanish identically.
pub fn sin_cos_pi_ratio(bits: u32, num: i64, den: i64) -> (Float, Float) {
    assert!(den != 0, "zero denominator in angle");
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    let r = num.rem_euclid(2 * den);
    let exact = |s: i32, c: i32| (Float::with_val(bits, s), Float::with_val(bits, c));
    if (2 * r) % den == 0 {
        return match (2 * r) / den {
            0 => exact(0, 1),
            1 => exact(1, 0),
            2 => exact(0, -1),
            _ => exact(-1, 0),
        };
    }
    let mut theta = Float::with_val(bits, Constant::Pi);
    theta *= r;
    theta /= den;
    let (s, c) = theta.sin_cos(Float::new(bits));
    (s, c)
}

pub fn sin_pi_ratio(bits: u32, num: i64, den: i64) -> Float {
    sin_cos_pi_ratio(bits, num, den).0
}

pub fn cos_pi_ratio(bits: u32, num: i64, den: i64) -> Float {
    sin_cos_pi_ratio(bits, num, den).1
}

/// `cot(pi num/den)`; the caller guarantees `den` does not divide `num`.
pub fn cot_pi_ratio(bits: u32, num: i64, den: i64) -> Float {
    let (s, c) = sin_cos_pi_ratio(bits, num, den);
    c / s
}

/// `e^{2 pi i n/k}`, computed from a single `2 pi` constant after reducing `n` mod `k`.
pub fn root_of_unity(ctx: &PrecisionContext, k: i64, n: i64) -> Result<HighComplex> {
    root_of_unity_bits(ctx.work_bits(), k, n)
}

pub fn root_of_unity_bits(bits: u32, k: i64, n: i64) -> Result<HighComplex> {
    if k <= 0 {
        return Err(Error::InvalidModulus(format!("root of unity order {k}")));
    }
    let r = n.rem_euclid(k);
    let (s, c) = sin_cos_pi_ratio(bits, 2 * r, k);
    Ok(HighComplex::new(c, s))
}

/// All `k`-th roots `z_0 = 1, z_1, ..., z_{k-1}`.
pub fn roots_of_unity(bits: u32, k: i64) -> Result<Vec<HighComplex>> {
    (0..k.max(0))
        .map(|n| root_of_unity_bits(bits, k, n))
        .collect()
}

/// Exact complex number with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::new(),
        }
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::new(), Rational::from(1))
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), Rational::from(-&self.im))
    }

    pub fn norm_sqr(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let n = rhs.norm_sqr();
        let num = self * &rhs.conj();
        Some(GaussianRational::new(num.re / &n, num.im / n))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        GaussianRational::new(Rational::from(&self.re * s), Rational::from(&self.im * s))
    }

    pub fn to_complex(&self, bits: u32) -> HighComplex {
        HighComplex::new(
            Float::with_val(bits, &self.re),
            Float::with_val(bits, &self.im),
        )
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0 {
            write!(f, "{}", rational_string(&self.re))
        } else if self.im < 0 {
            let m = Rational::from(-&self.im);
            write!(
                f,
                "{} - {}i",
                rational_string(&self.re),
                rational_string(&m)
            )
        } else {
            write!(
                f,
                "{} + {}i",
                rational_string(&self.re),
                rational_string(&self.im)
            )
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            Rational::from(&self.re + &rhs.re),
            Rational::from(&self.im + &rhs.im),
        )
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            Rational::from(&self.re - &rhs.re),
            Rational::from(&self.im - &rhs.im),
        )
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        let re = Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re);
        GaussianRational::new(re, im)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

/// Complex number with MPFR real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct HighComplex {
    pub re: Float,
    pub im: Float,
}

impl HighComplex {
    pub fn new(re: Float, im: Float) -> Self {
        HighComplex { re, im }
    }

    pub fn zero(bits: u32) -> Self {
        HighComplex::new(Float::new(bits), Float::new(bits))
    }

    pub fn one(bits: u32) -> Self {
        HighComplex::from_int(bits, 1)
    }

    pub fn i(bits: u32) -> Self {
        HighComplex::new(Float::new(bits), Float::with_val(bits, 1))
    }

    pub fn from_int(bits: u32, v: i64) -> Self {
        HighComplex::new(Float::with_val(bits, v), Float::new(bits))
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        HighComplex { re, im }
    }

    pub fn from_rational(bits: u32, r: &Rational) -> Self {
        HighComplex::from_real(Float::with_val(bits, r))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, bits: u32) -> Self {
        HighComplex::new(
            Float::with_val(bits, &self.re),
            Float::with_val(bits, &self.im),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        HighComplex::new(self.re.clone(), Float::with_val(self.im.prec(), -&self.im))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let mut n = Float::with_val(p, self.re.square_ref());
        n += Float::with_val(p, self.im.square_ref());
        n
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let p = self.prec();
        HighComplex::new(
            Float::with_val(p, &self.re / &n),
            Float::with_val(p, -Float::with_val(p, &self.im / &n)),
        )
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec();
        HighComplex::new(
            Float::with_val(p, &self.re * s),
            Float::with_val(p, &self.im * s),
        )
    }

    pub fn scale_int(&self, s: i64) -> Self {
        let p = self.prec();
        HighComplex::new(
            Float::with_val(p, &self.re * s),
            Float::with_val(p, &self.im * s),
        )
    }

    pub fn scale_rational(&self, s: &Rational) -> Self {
        let p = self.prec();
        HighComplex::new(
            Float::with_val(p, &self.re * s),
            Float::with_val(p, &self.im * s),
        )
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        HighComplex::new(Float::with_val(self.prec(), -&self.im), self.re.clone())
    }

    /// Integer power by binary exponentiation; negative exponents invert.
    pub fn powi(&self, e: i64) -> Self {
        let p = self.prec();
        let mut base = if e < 0 { self.recip() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = HighComplex::one(p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `e^{i theta}` for real `theta`.
    pub fn cis(theta: &Float) -> Self {
        let (s, c) = sin_cos_of(theta);
        HighComplex::new(c, s)
    }

    pub fn exp(&self) -> Self {
        let m = Float::with_val(self.prec(), self.re.exp_ref());
        HighComplex::cis(&self.im).scale(&m)
    }

    pub fn sin(&self) -> Self {
        let (s, c) = sin_cos_of(&self.re);
        let (sh, ch) = sinh_cosh_of(&self.im);
        HighComplex::new(s * ch, c * sh)
    }

    pub fn cos(&self) -> Self {
        let (s, c) = sin_cos_of(&self.re);
        let (sh, ch) = sinh_cosh_of(&self.im);
        HighComplex::new(c * ch, -(s * sh))
    }

    /// Rounds both parts to rationals (exact for the binary values stored).
    pub fn to_rational_parts(&self) -> Option<(Rational, Rational)> {
        Some((self.re.to_rational()?, self.im.to_rational()?))
    }

    /// `|self - other|`.
    pub fn dist(&self, other: &HighComplex) -> Float {
        (self - other).abs()
    }

    /// `re + im i` with both parts rendered to `bits` of mantissa.
    pub fn to_decimal(&self, bits: u32) -> String {
        let re = float_string(&self.re, bits);
        if self.im.is_zero() {
            return re;
        }
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        let im = float_string(&Float::with_val(self.im.prec(), self.im.abs_ref()), bits);
        format!("{re} {sign} {im}i")
    }
}

impl<'a> Add<&'a HighComplex> for &'a HighComplex {
    type Output = HighComplex;
    fn add(self, rhs: &HighComplex) -> HighComplex {
        let p = self.prec().max(rhs.prec());
        HighComplex::new(
            Float::with_val(p, &self.re + &rhs.re),
            Float::with_val(p, &self.im + &rhs.im),
        )
    }
}

impl<'a> Sub<&'a HighComplex> for &'a HighComplex {
    type Output = HighComplex;
    fn sub(self, rhs: &HighComplex) -> HighComplex {
        let p = self.prec().max(rhs.prec());
        HighComplex::new(
            Float::with_val(p, &self.re - &rhs.re),
            Float::with_val(p, &self.im - &rhs.im),
        )
    }
}

impl<'a> Mul<&'a HighComplex> for &'a HighComplex {
    type Output = HighComplex;
    fn mul(self, rhs: &HighComplex) -> HighComplex {
        let p = self.prec().max(rhs.prec());
        let mut re = Float::with_val(p, &self.re * &rhs.re);
        re -= Float::with_val(p, &self.im * &rhs.im);
        let mut im = Float::with_val(p, &self.re * &rhs.im);
        im += Float::with_val(p, &self.im * &rhs.re);
        HighComplex::new(re, im)
    }
}

impl<'a> Div<&'a HighComplex> for &'a HighComplex {
    type Output = HighComplex;
    fn div(self, rhs: &HighComplex) -> HighComplex {
        let p = self.prec().max(rhs.prec());
        let n = rhs.norm_sqr();
        let mut re = Float::with_val(p, &self.re * &rhs.re);
        re += Float::with_val(p, &self.im * &rhs.im);
        let mut im = Float::with_val(p, &self.im * &rhs.re);
        im -= Float::with_val(p, &self.re * &rhs.im);
        HighComplex::new(re / &n, im / &n)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<HighComplex> for HighComplex {
            type Output = HighComplex;
            fn $m(self, rhs: HighComplex) -> HighComplex { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a HighComplex> for HighComplex {
            type Output = HighComplex;
            fn $m(self, rhs: &HighComplex) -> HighComplex { (&self).$m(rhs) }
        }
        impl<'a> $tr<HighComplex> for &'a HighComplex {
            type Output = HighComplex;
            fn $m(self, rhs: HighComplex) -> HighComplex { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for HighComplex {
    type Output = HighComplex;
    fn neg(self) -> HighComplex {
        HighComplex::new(-self.re, -self.im)
    }
}

impl Neg for &HighComplex {
    type Output = HighComplex;
    fn neg(self) -> HighComplex {
        -self.clone()
    }
}

impl AddAssign<&HighComplex> for HighComplex {
    fn add_assign(&mut self, rhs: &HighComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign<HighComplex> for HighComplex {
    fn add_assign(&mut self, rhs: HighComplex) {
        *self += &rhs;
    }
}

impl SubAssign<&HighComplex> for HighComplex {
    fn sub_assign(&mut self, rhs: &HighComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl SubAssign<HighComplex> for HighComplex {
    fn sub_assign(&mut self, rhs: HighComplex) {
        *self -= &rhs;
    }
}

impl MulAssign<&HighComplex> for HighComplex {
    fn mul_assign(&mut self, rhs: &HighComplex) {
        *self = &*self * rhs;
    }
}

fn sin_cos_of(x: &Float) -> (Float, Float) {
    let (mut s, mut c) = (Float::new(x.prec()), Float::new(x.prec()));
    (&mut s, &mut c).assign(x.sin_cos_ref());
    (s, c)
}

fn sinh_cosh_of(x: &Float) -> (Float, Float) {
    let (mut s, mut c) = (Float::new(x.prec()), Float::new(x.prec()));
    (&mut s, &mut c).assign(x.sinh_cosh_ref());
    (s, c)
}

/// Real power helper used by the trigonometric families.
pub fn powi_real(x: &Float, e: i32) -> Float {
    Float::with_val(x.prec(), x.pow(e))
}

/// Sums an iterator of complex values at `bits` precision.
pub fn sum_complex(bits: u32, it: impl IntoIterator<Item = HighComplex>) -> HighComplex {
    let mut acc = HighComplex::zero(bits);
    for v in it {
        acc += &v;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        make_context(256).unwrap()
    }

    #[test]
    fn context_tolerance_policy() {
        let c = make_context(256).unwrap();
        assert_eq!(*c.tolerance(), Float::with_val(256, 1u32) >> 224u32);
        let c = make_context(64).unwrap();
        assert_eq!(*c.tolerance(), Float::with_val(64, 1u32) >> 32u32);
        assert_eq!(make_context(32).unwrap_err(), Error::InvalidPrecision(32));
    }

    #[test]
    fn tolerance_override_bounds() {
        let c = ctx();
        assert!(c.clone().with_tolerance(Float::with_val(64, 1e-60)).is_ok());
        assert!(c.clone().with_tolerance(Float::with_val(64, 0.5)).is_err());
        assert!(c.with_tolerance(Float::new(64)).is_err());
    }

    #[test]
    fn roots_at_special_angles() {
        let c = ctx();
        let i = root_of_unity(&c, 4, 1).unwrap();
        assert!(i.re.is_zero() && i.im == 1);
        let one = root_of_unity(&c, 1, 7).unwrap();
        assert!(one.re == 1 && one.im.is_zero());
        assert!(matches!(
            root_of_unity(&c, 0, 1),
            Err(Error::InvalidModulus(_))
        ));
    }

    #[test]
    fn cube_root_matches_series_value() {
        let c = ctx();
        let w = root_of_unity(&c, 3, 1).unwrap();
        let sqrt3 = Float::with_val(c.work_bits(), 3u32).sqrt();
        let expect = HighComplex::new(Float::with_val(c.work_bits(), -0.5), sqrt3 / 2u32);
        assert!(approx_equal(&c, &w, &expect));
    }

    #[test]
    fn approx_equal_examples() {
        let c = ctx();
        let one = HighComplex::one(256);
        assert!(approx_equal(&c, &one, &one));
        let tiny = HighComplex::from_real(Float::with_val(256, 1u32) >> 256u32);
        assert!(approx_equal(&c, &HighComplex::zero(256), &tiny));
        let off = HighComplex::from_real(
            Float::with_val(256, 1u32) + (Float::with_val(256, 1u32) >> 16u32),
        );
        assert!(!approx_equal(&c, &one, &off));
    }

    #[test]
    fn horner() {
        let cs = [rat(3, 1), rat(4, 1), rat(3, 1), rat(2, 1)];
        assert_eq!(eval_poly(&cs, &rat(5, 1)), 348);
        assert_eq!(eval_poly(&[rat(-2, 3)], &rat(11, 1)), rat(-2, 3));
        assert_eq!(eval_poly(&[rat(0, 1), rat(1, 1)], &rat(7, 2)), rat(7, 2));
    }

    #[test]
    fn gaussian_arithmetic() {
        let a = GaussianRational::new(rat(1, 2), rat(3, 1));
        let b = GaussianRational::new(rat(-2, 1), rat(1, 5));
        let q = (&a * &b).checked_div(&b).unwrap();
        assert_eq!(q, a);
        assert!(a.checked_div(&GaussianRational::default()).is_none());
        assert_eq!(
            format!("{}", GaussianRational::new(rat(5, 2), rat(-5, 2))),
            "5/2 - 5/2i"
        );
    }

    #[test]
    fn complex_transcendentals() {
        let z = HighComplex::new(Float::with_val(128, 0.3), Float::with_val(128, -0.7));
        let s = z.sin();
        let c = z.cos();
        let one = &(&s * &s) + &(&c * &c);
        assert!((one - HighComplex::one(128)).abs() < 1e-35);
        let e = z.exp();
        assert!((&e * &(-z.clone()).exp() - HighComplex::one(128)).abs() < 1e-35);
        assert!((z.powi(-3) * z.powi(3) - HighComplex::one(128)).abs() < 1e-35);
    }
}
