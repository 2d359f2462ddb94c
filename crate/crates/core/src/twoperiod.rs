//! Sums of cotangent products with two coprime periods.

use rug::Float;

use crate::check::{CheckReport, Params, Value};
use crate::error::{Error, Result};
use crate::numeric::{
    rat, require_coprime, root_of_unity_bits, sin_cos_pi_ratio, HighComplex, PrecisionContext,
    Rational,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwoPeriodKernel {
    /// Divide by `sin^2(pi n/(pq))`.
    Csc2,
    /// Divide by `cos^2(pi n/(pq))`.
    Sec2,
}

impl TwoPeriodKernel {
    pub fn tag(self) -> &'static str {
        match self {
            TwoPeriodKernel::Csc2 => "csc2",
            TwoPeriodKernel::Sec2 => "sec2",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        match s {
            "csc2" => Some(TwoPeriodKernel::Csc2),
            "sec2" => Some(TwoPeriodKernel::Sec2),
            _ => None,
        }
    }
}

/// `sum cot(pi n/p) cot(pi n/q) / {sin^2, cos^2}(pi n/(pq))` over `0 < n < pq`
/// with `p` and `q` not dividing `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoPeriodSpec {
    pub p: i64,
    pub q: i64,
    pub kernel: TwoPeriodKernel,
}

impl TwoPeriodSpec {
    pub fn new(p: i64, q: i64, kernel: TwoPeriodKernel) -> Result<Self> {
        if p < 2 || q < 2 {
            return Err(Error::InvalidModulus(format!(
                "p = {p}, q = {q} must be >= 2"
            )));
        }
        require_coprime(p, q)?;
        if kernel == TwoPeriodKernel::Sec2 && (p % 2 == 0 || q % 2 == 0) {
            return Err(Error::Hypothesis(format!(
                "sec2 kernel needs odd p, q; got ({p}, {q})"
            )));
        }
        Ok(TwoPeriodSpec { p, q, kernel })
    }

    pub fn params(&self) -> Params {
        Params::new().int("p", self.p).int("q", self.q)
    }

    pub fn identity(&self) -> String {
        format!("twoperiod.{}", self.kernel.tag())
    }
}

pub fn two_period_bruteforce(ctx: &PrecisionContext, spec: &TwoPeriodSpec) -> Result<HighComplex> {
    let bits = ctx.work_bits();
    let (p, q) = (spec.p, spec.q);
    let mut acc = Float::new(bits);
    for n in 1..p * q {
        if n % p == 0 || n % q == 0 {
            continue;
        }
        let (sp, cp) = sin_cos_pi_ratio(bits, n, p);
        let (sq, cq) = sin_cos_pi_ratio(bits, n, q);
        let (s, c) = sin_cos_pi_ratio(bits, n, p * q);
        let d = match spec.kernel {
            TwoPeriodKernel::Csc2 => s,
            TwoPeriodKernel::Sec2 => c,
        };
        let d2 = Float::with_val(bits, d.square_ref());
        if d2.is_zero() {
            return Err(Error::SingularTerm(format!("n = {n}")));
        }
        acc += cp / sp * cq / sq / d2;
    }
    Ok(HighComplex::from_real(acc))
}

/// Polynomial part plus two residual sums over the nontrivial `p`-th roots `w`.
pub fn two_period_semiclosed(ctx: &PrecisionContext, spec: &TwoPeriodSpec) -> Result<HighComplex> {
    let bits = ctx.work_bits();
    let (p, q) = (spec.p, spec.q);
    let one = HighComplex::one(bits);
    let mut s1 = HighComplex::zero(bits);
    let mut s2 = HighComplex::zero(bits);
    for j in 1..p {
        let w = root_of_unity_bits(bits, p, j)?;
        let wq1 = root_of_unity_bits(bits, p, j * q)? - &one;
        let shifted = match spec.kernel {
            TwoPeriodKernel::Csc2 => &w - &one,
            TwoPeriodKernel::Sec2 => &w + &one,
        };
        s1 += &w / &(shifted.powi(3) * &wq1);
        s2 += &w / &(shifted.powi(2) * wq1.powi(2));
    }
    let (p2, q2) = (p * p, q * q);
    let (poly, c1, c2) = match spec.kernel {
        TwoPeriodKernel::Csc2 => (
            rat(
                p2 * p2 * q2 * q - 5 * p2 * p2 * q + 4 * q2 * q - 5 * p2 * q2 * q
                    + 55 * p2 * q
                    + 30 * p2
                    - 50 * q
                    - 30,
                45 * p,
            ),
            rat(32, p),
            rat(32 * q, p),
        ),
        TwoPeriodKernel::Sec2 => (
            rat(2 * (p2 - 1) * (5 * q + 3), 3 * p),
            rat(32, p),
            rat(-32 * q, p),
        ),
    };
    Ok(HighComplex::from_rational(bits, &poly) + s1.scale_rational(&c1) + s2.scale_rational(&c2))
}

/// Exact value when `q = +-1 (mod p)`; other residues are unsupported.
pub fn two_period_closed_special(spec: &TwoPeriodSpec) -> Result<Rational> {
    let (p, q) = (spec.p, spec.q);
    let r = q.rem_euclid(p);
    let plus = r == 1 % p;
    let minus = r == p - 1;
    let p2 = p * p;
    match spec.kernel {
        TwoPeriodKernel::Csc2 if plus => Ok(rat(
            (p2 - 1) * (p2 - 4) * (q - 1) * (q - 1) * (q + 2),
            45 * p,
        )),
        TwoPeriodKernel::Csc2 if minus => Ok(rat(
            (p2 - 1) * (p2 - 4) * (q + 1) * (q + 1) * (q - 2),
            45 * p,
        )),
        TwoPeriodKernel::Sec2 if plus => Ok(rat(2 * (p2 - 1) * (q - 1), p)),
        TwoPeriodKernel::Sec2 if minus => Ok(rat(2 * (p2 - 1) * (q + 1), p)),
        _ => Err(Error::Unsupported(format!(
            "no closed form for q = {q} mod p = {p} (residue {r})"
        ))),
    }
}

/// Brute force against the semi-closed form.
pub fn two_period_check(ctx: &PrecisionContext, spec: &TwoPeriodSpec) -> Result<CheckReport> {
    let lhs = two_period_bruteforce(ctx, spec)?;
    let rhs = two_period_semiclosed(ctx, spec)?;
    Ok(CheckReport::compare(
        ctx,
        spec.identity(),
        spec.params(),
        Value::Approx(lhs),
        Value::Approx(rhs),
    ))
}

/// Brute force against the special closed value.
pub fn two_period_special_check(
    ctx: &PrecisionContext,
    spec: &TwoPeriodSpec,
) -> Result<CheckReport> {
    let rhs = two_period_closed_special(spec)?;
    let lhs = two_period_bruteforce(ctx, spec)?;
    Ok(CheckReport::compare(
        ctx,
        format!("{}.special", spec.identity()),
        spec.params(),
        Value::Approx(lhs),
        Value::Exact(rhs),
    ))
}
