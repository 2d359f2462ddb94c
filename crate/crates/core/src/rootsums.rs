//! Sums over roots of unity: pole sums, two-modulus identities and
//! partial-fraction decompositions.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

use crate::check::{CheckReport, Params, Value};
use crate::error::{Error, Result};
use crate::numeric::{
    rat, require_coprime, root_of_unity_bits, roots_of_unity, GaussianRational, HighComplex,
    PrecisionContext, Rational,
};

/// The point subtracted from `z_n` in `sum z_n^a / (z_n - pole)^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pole {
    PlusOne,
    MinusOne,
    PlusI,
    MinusI,
}

impl Pole {
    pub const ALL: [Pole; 4] = [Pole::PlusOne, Pole::MinusOne, Pole::PlusI, Pole::MinusI];

    pub fn exact(self) -> GaussianRational {
        match self {
            Pole::PlusOne => GaussianRational::real(rat(1, 1)),
            Pole::MinusOne => GaussianRational::real(rat(-1, 1)),
            Pole::PlusI => GaussianRational::i(),
            Pole::MinusI => -GaussianRational::i(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Pole::PlusOne => "+1",
            Pole::MinusOne => "-1",
            Pole::PlusI => "+i",
            Pole::MinusI => "-i",
        }
    }

    /// Whether `z_n = e^{2 pi i n/k}` coincides with this pole.
    fn hits(self, k: i64, n: i64) -> bool {
        let n = n.rem_euclid(k);
        match self {
            Pole::PlusOne => n == 0,
            Pole::MinusOne => 2 * n == k,
            Pole::PlusI => 4 * n == k,
            Pole::MinusI => 4 * n == 3 * k,
        }
    }
}

impl fmt::Display for Pole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Pole {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+1" | "1" => Ok(Pole::PlusOne),
            "-1" => Ok(Pole::MinusOne),
            "+i" | "i" => Ok(Pole::PlusI),
            "-i" => Ok(Pole::MinusI),
            _ => Err(Error::Unsupported(format!("pole {s:?}"))),
        }
    }
}

/// Index range of a pole sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SumRange {
    /// `n = 1..=k`
    Full,
    /// `n = 1..=k-1`
    OmitPole,
}

impl SumRange {
    pub fn label(self) -> &'static str {
        match self {
            SumRange::Full => "full",
            SumRange::OmitPole => "omit_pole",
        }
    }

    fn last(self, k: i64) -> i64 {
        match self {
            SumRange::Full => k,
            SumRange::OmitPole => k - 1,
        }
    }
}

impl FromStr for SumRange {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(SumRange::Full),
            "omit_pole" | "omit" => Ok(SumRange::OmitPole),
            _ => Err(Error::Unsupported(format!("range {s:?}"))),
        }
    }
}

/// `sum_{n in range} z_n^a / (z_n - pole)^m` with `z_n = e^{2 pi i n/k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PoleSpec {
    pub k: i64,
    pub pole: Pole,
    pub m: u32,
    pub a: u32,
    pub range: SumRange,
}

impl PoleSpec {
    pub fn new(k: i64, pole: Pole, m: u32, a: u32, range: SumRange) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidModulus(format!("k = {k}")));
        }
        if !(1..=4).contains(&m) || a > m {
            return Err(Error::Unsupported(format!("order m = {m}, power a = {a}")));
        }
        Ok(PoleSpec {
            k,
            pole,
            m,
            a,
            range,
        })
    }

    pub fn params(&self) -> Params {
        Params::new()
            .int("k", self.k)
            .text("pole", self.pole.label())
            .int("m", i64::from(self.m))
            .int("a", i64::from(self.a))
            .text("range", self.range.label())
    }

    /// Every tabulated (pole, m, a, range) combination admissible for this `k`.
    pub fn tabulated(k: i64) -> Vec<PoleSpec> {
        let mut out = Vec::new();
        let mut push = |pole, m, a, range| {
            if let Ok(s) = PoleSpec::new(k, pole, m, a, range) {
                if pole_sum_closed(&s).is_ok() {
                    out.push(s);
                }
            }
        };
        for m in 1..=4 {
            push(Pole::PlusI, m, 0, SumRange::Full);
            push(Pole::MinusI, m, 0, SumRange::Full);
            for a in 0..=m {
                push(Pole::PlusOne, m, a, SumRange::OmitPole);
                push(Pole::MinusOne, m, a, SumRange::OmitPole);
            }
        }
        out
    }
}

/// Direct summation at the context's working precision.
pub fn pole_sum_bruteforce(ctx: &PrecisionContext, spec: &PoleSpec) -> Result<HighComplex> {
    let bits = ctx.work_bits();
    let pole = spec.pole.exact().to_complex(bits);
    let mut acc = HighComplex::zero(bits);
    for n in 1..=spec.range.last(spec.k) {
        if spec.pole.hits(spec.k, n) {
            return Err(Error::SingularTerm(format!(
                "z_{n} = {} for k = {}",
                spec.pole, spec.k
            )));
        }
        let z = root_of_unity_bits(bits, spec.k, n)?;
        let num = z.powi(i64::from(spec.a));
        let den = (&z - &pole).powi(i64::from(spec.m));
        acc += &(num / den);
    }
    Ok(acc)
}

/// Residue class of an odd `k` modulo 4, selecting between the two `+-i` tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mod4Branch {
    One,
    Three,
}

impl Mod4Branch {
    pub fn of(k: i64) -> Option<Self> {
        match k.rem_euclid(4) {
            1 => Some(Mod4Branch::One),
            3 => Some(Mod4Branch::Three),
            _ => None,
        }
    }

    pub fn other(self) -> Self {
        match self {
            Mod4Branch::One => Mod4Branch::Three,
            Mod4Branch::Three => Mod4Branch::One,
        }
    }
}

/// Exact value of a tabulated pole sum.
pub fn pole_sum_closed(spec: &PoleSpec) -> Result<GaussianRational> {
    match spec.pole {
        Pole::PlusI | Pole::MinusI => {
            let branch = Mod4Branch::of(spec.k)
                .ok_or_else(|| Error::Hypothesis(format!("k = {} must be odd", spec.k)))?;
            imaginary_pole_closed(spec, branch)
        }
        _ => real_pole_closed(spec),
    }
}

/// Closed form for a pole at `+-i` evaluated on a chosen mod-4 branch,
/// whether or not it is the branch matching `k`.
pub fn pole_sum_closed_with_branch(
    spec: &PoleSpec,
    branch: Mod4Branch,
) -> Result<GaussianRational> {
    if !matches!(spec.pole, Pole::PlusI | Pole::MinusI) {
        return Err(Error::Unsupported(
            "branch selection applies to poles +-i".into(),
        ));
    }
    imaginary_pole_closed(spec, branch)
}

fn g(re: Rational, im: Rational) -> GaussianRational {
    GaussianRational::new(re, im)
}

fn gr(v: Rational) -> GaussianRational {
    GaussianRational::real(v)
}

fn gi(v: Rational) -> GaussianRational {
    g(Rational::new(), v)
}

fn imaginary_pole_closed(spec: &PoleSpec, branch: Mod4Branch) -> Result<GaussianRational> {
    if spec.range != SumRange::Full || spec.a != 0 {
        return Err(Error::Unsupported(format!(
            "pole {} is tabulated for a = 0 over the full range",
            spec.pole
        )));
    }
    if spec.k % 2 == 0 {
        return Err(Error::Hypothesis(format!("k = {} must be odd", spec.k)));
    }
    // pole = -s i, i.e. s = +1 for "z + i" and s = -1 for "z - i"
    let s: i64 = if spec.pole == Pole::MinusI { 1 } else { -1 };
    let k = spec.k;
    let kr = rat(k, 1);
    let (d, t) = match branch {
        Mod4Branch::One => (g(rat(s, 1), rat(1, 1)), 1),
        Mod4Branch::Three => (g(rat(-s, 1), rat(1, 1)), -1),
    };
    let over_d = |v: GaussianRational| v.checked_div(&d).expect("nonzero denominator");
    let k1 = k - 1;
    let k2 = k - 2;
    let k3 = k - 3;
    let val = match spec.m {
        1 => over_d(gr(rat(s * k, 1))),
        2 => {
            let a = over_d(gi(rat(k * k1, 1)));
            &a - &gi(rat(t * s * k * k, 2))
        }
        3 => {
            let num = g(rat(-s * k * k1 * k2, 2), rat(-t * k * k * k, 2));
            let a = over_d(num);
            &a + &gr(rat(t * 3 * k * k * k1, 4))
        }
        4 => {
            let a = over_d(gi(rat(-k * k1 * k2 * k3, 6)));
            let b = over_d(gr(rat(t * s * k * k * k * k1, 1)));
            let c = gi(rat(t * s * k * k * k1 * (7 * k - 11), 12));
            let e = gr((-kr.clone().square()) * kr.clone().square() / 4);
            let ab = &a + &b;
            let abc = &ab + &c;
            &abc + &e
        }
        _ => unreachable!(),
    };
    Ok(val)
}

fn real_pole_closed(spec: &PoleSpec) -> Result<GaussianRational> {
    if spec.range != SumRange::OmitPole {
        return Err(Error::Unsupported(format!(
            "pole {} is tabulated over n = 1..k-1",
            spec.pole
        )));
    }
    let k = spec.k;
    let kk = k * k;
    let v = match spec.pole {
        Pole::PlusOne => match (spec.m, spec.a) {
            (1, 0) => rat(-(k - 1), 2),
            (2, 0) => rat(-(k - 1) * (k - 5), 12),
            (3, 0) => rat((k - 1) * (k - 3), 8),
            (4, 0) | (4, 4) => rat((k - 1) * (k * kk + kk - 109 * k + 251), 720),
            (1, 1) => rat(k - 1, 2),
            (2, 1) => rat(-(kk - 1), 12),
            (2, 2) => rat(-(k - 1) * (k - 5), 12),
            (3, 1) => rat(kk - 1, 24),
            (3, 2) => rat(-(kk - 1), 24),
            (3, 3) => rat(-(k - 1) * (k - 3), 8),
            (4, 1) | (4, 3) => rat((kk - 1) * (kk - 19), 720),
            (4, 2) => rat((kk - 1) * (kk + 11), 720),
            _ => unreachable!(),
        },
        Pole::MinusOne => {
            if k % 2 == 0 {
                return Err(Error::Hypothesis(format!("k = {k} must be odd")));
            }
            match (spec.m, spec.a) {
                (1, 0) | (1, 1) => rat(k - 1, 2),
                (2, 0) | (2, 2) => rat(-(k - 1) * (k - 1), 4),
                (3, 0) | (3, 3) => rat(-(k - 1) * (3 * k - 1), 8),
                (4, 0) | (4, 4) => rat((k - 1) * (k * kk + kk - 21 * k + 3), 48),
                (2, 1) => rat(kk - 1, 4),
                (3, 1) | (3, 2) => rat(kk - 1, 8),
                (4, 1) | (4, 3) => rat(-(kk - 1) * (kk - 3), 48),
                (4, 2) => rat((kk - 1) * (kk + 3), 48),
                _ => unreachable!(),
            }
        }
        _ => unreachable!(),
    };
    Ok(GaussianRational::real(v))
}

/// Brute force against closed form for one tabulated pole sum.
pub fn pole_sum_check(ctx: &PrecisionContext, spec: &PoleSpec) -> Result<CheckReport> {
    let closed = pole_sum_closed(spec)?;
    let brute = pole_sum_bruteforce(ctx, spec)?;
    Ok(CheckReport::compare(
        ctx,
        "rootsum.pole",
        spec.params(),
        Value::Approx(brute),
        Value::Gaussian(closed),
    ))
}

/// `sum xi^b / ((xi - s)^e1 (xi^p - 1)^e2)` over the nontrivial `q`-th roots `xi`,
/// with `s = +1` or `s = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MixedShape {
    pub numerator_power: u32,
    pub shift_plus: bool,
    pub e1: u32,
    pub e2: u32,
}

impl MixedShape {
    pub const fn new(numerator_power: u32, shift_plus: bool, e1: u32, e2: u32) -> Self {
        MixedShape {
            numerator_power,
            shift_plus,
            e1,
            e2,
        }
    }

    /// `sum xi / ((xi - 1)^2 (xi^p - 1))`
    pub const XI_OVER_1SQ_P: MixedShape = MixedShape::new(1, false, 2, 1);

    pub fn describe(&self) -> String {
        let num = if self.numerator_power == 1 { "xi" } else { "1" };
        let sh = if self.shift_plus { "xi+1" } else { "xi-1" };
        format!("{num}/(({sh})^{}(xi^p-1)^{})", self.e1, self.e2)
    }
}

/// Direct sum of a mixed shape over the nontrivial `q`-th roots of unity.
pub fn mixed_sum_bruteforce(
    ctx: &PrecisionContext,
    p: i64,
    q: i64,
    shape: MixedShape,
) -> Result<HighComplex> {
    if p < 1 || q < 2 {
        return Err(Error::InvalidModulus(format!("p = {p}, q = {q}")));
    }
    require_coprime(p, q)?;
    if shape.shift_plus && q % 2 == 0 {
        return Err(Error::Hypothesis(format!(
            "q = {q} must be odd: xi = -1 is a pole"
        )));
    }
    let bits = ctx.work_bits();
    let one = HighComplex::one(bits);
    let mut acc = HighComplex::zero(bits);
    for n in 1..q {
        let x = root_of_unity_bits(bits, q, n)?;
        let y = root_of_unity_bits(bits, q, n * p)?;
        let shifted = if shape.shift_plus {
            &x + &one
        } else {
            &x - &one
        };
        let den = shifted.powi(i64::from(shape.e1)) * (&y - &one).powi(i64::from(shape.e2));
        let num = x.powi(i64::from(shape.numerator_power));
        acc += &(num / den);
    }
    Ok(acc)
}

/// Two-modulus identities, each checked as stated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(non_camel_case_types)]
pub enum MixedIdentityId {
    LEMR1,
    LEMR2,
    LEMR4,
    LEMR21,
    LEMR22,
    LEMR21P,
    LEMR23,
    LEMR24,
    LEMR1_1,
    LEMR2_1,
}

impl MixedIdentityId {
    pub const ALL: [MixedIdentityId; 10] = [
        MixedIdentityId::LEMR1,
        MixedIdentityId::LEMR2,
        MixedIdentityId::LEMR4,
        MixedIdentityId::LEMR21,
        MixedIdentityId::LEMR22,
        MixedIdentityId::LEMR21P,
        MixedIdentityId::LEMR23,
        MixedIdentityId::LEMR24,
        MixedIdentityId::LEMR1_1,
        MixedIdentityId::LEMR2_1,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            MixedIdentityId::LEMR1 => "lemr1",
            MixedIdentityId::LEMR2 => "lemr2",
            MixedIdentityId::LEMR4 => "lemr4",
            MixedIdentityId::LEMR21 => "lemr21",
            MixedIdentityId::LEMR22 => "lemr22",
            MixedIdentityId::LEMR21P => "lemr21p",
            MixedIdentityId::LEMR23 => "lemr23",
            MixedIdentityId::LEMR24 => "lemr24",
            MixedIdentityId::LEMR1_1 => "lemr1_1",
            MixedIdentityId::LEMR2_1 => "lemr2_1",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.tag() == s)
    }

    /// Hypotheses beyond `p, q >= 2` coprime.
    pub fn check_hypotheses(self, p: i64, q: i64) -> Result<()> {
        if p < 2 || q < 2 {
            return Err(Error::Hypothesis(format!("p = {p}, q = {q} must be >= 2")));
        }
        require_coprime(p, q)?;
        match self {
            MixedIdentityId::LEMR21 if q % 2 == 0 => {
                Err(Error::Hypothesis(format!("q = {q} must be odd")))
            }
            MixedIdentityId::LEMR21P | MixedIdentityId::LEMR23 | MixedIdentityId::LEMR24
                if p % 2 == 0 || q % 2 == 0 =>
            {
                Err(Error::Hypothesis(format!(
                    "p = {p} and q = {q} must both be odd"
                )))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for MixedIdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Closed rational part of each mixed identity.
pub fn mixed_identity_rhs(id: MixedIdentityId, p: i64, q: i64) -> Rational {
    let (p2, q2) = (p * p, q * q);
    match id {
        MixedIdentityId::LEMR1 => rat(q2 - 1, 24),
        MixedIdentityId::LEMR2 => rat(
            p2 * p2 + q2 * q2 - 5 * p2 * q2 - 15 * p2 * q - 15 * p * q2 + 15 * p + 15 * q + 3,
            720,
        ),
        MixedIdentityId::LEMR4 => rat(
            -(3 * p2 * p2 - q2 * q2 - 25 * p2 + 25 * q2 - 5 * p2 * q2 - 30 * p2 * q + 30 * q + 3),
            720,
        ),
        MixedIdentityId::LEMR21 => rat(-(q2 - 1), 8),
        MixedIdentityId::LEMR22 => rat(-(p2 + q2 - 9 * p * q + 3 * p + 3 * q + 1), 12),
        MixedIdentityId::LEMR21P => rat(-(3 * p * q - p - q - 1), 4),
        MixedIdentityId::LEMR23 => rat(p2 * q + p * q2 + p + q - 6 * p * q + 2, 8),
        MixedIdentityId::LEMR24 => rat(3 * p2 * q2 + 6 * p2 * q + 5 * p2 - 5 * q2 - 6 * q - 3, 48),
        MixedIdentityId::LEMR1_1 => rat(
            p2 * q + p * q2 + 2 * p2 + 2 * q2 - 18 * p * q + 5 * p + 5 * q + 2,
            24,
        ),
        MixedIdentityId::LEMR2_1 => rat(
            p2 * p2 + q2 * q2 - 5 * p2 * q2 - 45 * p2 * q - 45 * p * q2 - 60 * p2 - 60 * q2
                + 540 * p * q
                - 135 * p
                - 135 * q
                - 57,
            720,
        ),
    }
}

/// Left side (and, for the relational identities, the residual sum on the right).
pub fn mixed_identity_check(
    ctx: &PrecisionContext,
    p: i64,
    q: i64,
    id: MixedIdentityId,
) -> Result<CheckReport> {
    id.check_hypotheses(p, q)?;
    let a = |pp: i64, qq: i64, shape: MixedShape| mixed_sum_bruteforce(ctx, pp, qq, shape);
    let sym = |shape: MixedShape| -> Result<HighComplex> {
        Ok(a(p, q, shape)?.scale_int(p) + a(q, p, shape)?.scale_int(q))
    };
    let closed = mixed_identity_rhs(id, p, q);
    let (lhs, residual) = match id {
        MixedIdentityId::LEMR1 => (a(p, q, MixedShape::XI_OVER_1SQ_P)?, None),
        MixedIdentityId::LEMR2 => (sym(MixedShape::new(1, false, 3, 1))?, None),
        MixedIdentityId::LEMR4 => {
            let s = MixedShape::new(1, false, 2, 2);
            let l = a(p, q, s)?.scale_int(p * p) - a(q, p, s)?.scale_int(q * q);
            let r = a(q, p, MixedShape::new(1, false, 3, 1))?.scale_int(2 * q);
            (l, Some(r))
        }
        MixedIdentityId::LEMR21 => (a(p, q, MixedShape::new(1, true, 2, 1))?, None),
        MixedIdentityId::LEMR22 => (sym(MixedShape::new(0, false, 1, 1))?, None),
        MixedIdentityId::LEMR21P => (sym(MixedShape::new(0, true, 1, 1))?, None),
        MixedIdentityId::LEMR23 => (sym(MixedShape::new(0, true, 2, 1))?, None),
        MixedIdentityId::LEMR24 => {
            let s = MixedShape::new(1, true, 2, 2);
            let l = a(q, p, s)?.scale_int(q * q) - a(p, q, s)?.scale_int(p * p);
            let r = a(q, p, MixedShape::new(1, true, 3, 1))?.scale_int(2 * q);
            (l, Some(r))
        }
        MixedIdentityId::LEMR1_1 => (sym(MixedShape::new(0, false, 2, 1))?, None),
        MixedIdentityId::LEMR2_1 => (sym(MixedShape::new(0, false, 3, 1))?, None),
    };
    let rhs = match residual {
        None => Value::Exact(closed),
        Some(r) => Value::Approx(HighComplex::from_rational(ctx.work_bits(), &closed) + r),
    };
    Ok(CheckReport::compare(
        ctx,
        format!("rootsum.mixed.{}", id.tag()),
        Params::new().int("p", p).int("q", q),
        Value::Approx(lhs),
        rhs,
    ))
}

/// Partial-fraction and logarithmic-derivative identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(non_camel_case_types)]
pub enum DecompId {
    /// `sum_n (x - z_n)^{-m}` from derivatives of `log(x^k - 1)`; args `(k, m)`.
    F_LOG,
    /// `1/(x^k - 1) = (1/k) sum z_j/(x - z_j)`; args `(k)`.
    XP1,
    /// `sum_{j<k} 1/(x - z_j)`; args `(k)`.
    ONE_XZ,
    /// `sum_{j<k} 1/(x - z_j)^2`; args `(k)`.
    ONE_XZ2,
    /// `x(x^p+1)(x^q+1)/((x-1)^2(x^p-1)(x^q-1))`; args `(p, q)`.
    R,
    /// `x(x^p+1)(x^q+1)/((x+1)^2(x^p-1)(x^q-1))`; args `(p, q)`, both odd.
    R2,
    /// `x/((x-1)^2(x^k-1)^2)`; args `(k)`.
    XK2,
    /// `x/((x+1)^2(x^k-1)^2)`; args `(k)`, odd.
    PXK2,
}

impl DecompId {
    pub const ALL: [DecompId; 8] = [
        DecompId::F_LOG,
        DecompId::XP1,
        DecompId::ONE_XZ,
        DecompId::ONE_XZ2,
        DecompId::R,
        DecompId::R2,
        DecompId::XK2,
        DecompId::PXK2,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            DecompId::F_LOG => "f_log",
            DecompId::XP1 => "xp1",
            DecompId::ONE_XZ => "one_xz",
            DecompId::ONE_XZ2 => "one_xz2",
            DecompId::R => "r",
            DecompId::R2 => "r2",
            DecompId::XK2 => "xk2",
            DecompId::PXK2 => "pxk2",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.tag() == s)
    }

    pub fn arity(self) -> usize {
        match self {
            DecompId::F_LOG | DecompId::R | DecompId::R2 => 2,
            _ => 1,
        }
    }

    fn param_names(self) -> &'static [&'static str] {
        match self {
            DecompId::F_LOG => &["k", "m"],
            DecompId::R | DecompId::R2 => &["p", "q"],
            _ => &["k"],
        }
    }

    fn validate(self, args: &[i64]) -> Result<()> {
        if args.len() != self.arity() {
            return Err(Error::Unsupported(format!(
                "{} takes {} parameter(s)",
                self.tag(),
                self.arity()
            )));
        }
        match self {
            DecompId::F_LOG => {
                if args[0] < 1 || !(1..=4).contains(&args[1]) {
                    return Err(Error::Hypothesis(format!(
                        "k >= 1 and 1 <= m <= 4, got {args:?}"
                    )));
                }
            }
            DecompId::R | DecompId::R2 => {
                let (p, q) = (args[0], args[1]);
                if p < 2 || q < 2 {
                    return Err(Error::Hypothesis(format!("p = {p}, q = {q} must be >= 2")));
                }
                require_coprime(p, q)?;
                if self == DecompId::R2 && (p % 2 == 0 || q % 2 == 0) {
                    return Err(Error::Hypothesis(format!(
                        "p = {p} and q = {q} must both be odd"
                    )));
                }
            }
            DecompId::XK2 => {
                if args[0] < 2 {
                    return Err(Error::Hypothesis(format!("k = {} must be >= 2", args[0])));
                }
            }
            DecompId::PXK2 => {
                if args[0] < 2 || args[0] % 2 == 0 {
                    return Err(Error::Hypothesis(format!(
                        "k = {} must be odd and >= 3",
                        args[0]
                    )));
                }
            }
            _ => {
                if args[0] < 1 {
                    return Err(Error::Hypothesis(format!("k = {} must be >= 1", args[0])));
                }
            }
        }
        Ok(())
    }

    /// Poles of both sides of the identity.
    fn poles(self, bits: u32, args: &[i64]) -> Result<Vec<HighComplex>> {
        let mut out = match self {
            DecompId::R | DecompId::R2 => {
                let mut v = roots_of_unity(bits, args[0])?;
                v.extend(roots_of_unity(bits, args[1])?);
                v
            }
            _ => roots_of_unity(bits, args[0])?,
        };
        if matches!(self, DecompId::R2 | DecompId::PXK2) {
            out.push(HighComplex::from_int(bits, -1));
        }
        Ok(out)
    }
}

/// Minimum distance from an evaluation point to any pole.
pub const POLE_GUARD: f64 = 0.125;

fn ensure_clear_of_poles(x: &HighComplex, poles: &[HighComplex]) -> Result<()> {
    let guard = Float::with_val(x.prec(), POLE_GUARD);
    for p in poles {
        if x.dist(p) < guard {
            return Err(Error::NearSingular(format!(
                "|x - {}| < 1/8",
                p.to_decimal(24)
            )));
        }
    }
    Ok(())
}

fn decomp_sides(
    bits: u32,
    id: DecompId,
    args: &[i64],
    x: &HighComplex,
) -> Result<(HighComplex, HighComplex)> {
    let one = HighComplex::one(bits);
    let xm1 = x - &one;
    let xp1 = x + &one;
    let inv = |z: &HighComplex| z.recip();
    let scale_r = |z: HighComplex, r: Rational| z.scale_rational(&r);
    Ok(match id {
        DecompId::F_LOG => {
            let (k, m) = (args[0], args[1]);
            let zs = roots_of_unity(bits, k)?;
            let lhs = zs
                .iter()
                .fold(HighComplex::zero(bits), |acc, z| acc + (x - z).powi(-m));
            let u = x.powi(k) - &one;
            let term = |c: Rational, xe: i64, ue: i64| -> HighComplex {
                if c == 0 {
                    HighComplex::zero(bits)
                } else {
                    scale_r(x.powi(xe) / u.powi(ue), c)
                }
            };
            let kk = rat(k, 1);
            let rhs = match m {
                1 => term(kk.clone(), k - 1, 1),
                2 => term(rat(-k * (k - 1), 1), k - 2, 1) + term(rat(k * k, 1), 2 * k - 2, 2),
                3 => {
                    term(rat(k * (k - 1) * (k - 2), 2), k - 3, 1)
                        + term(rat(-3 * k * k * (k - 1), 2), 2 * k - 3, 2)
                        + term(rat(k * k * k, 1), 3 * k - 3, 3)
                }
                _ => {
                    term(rat(-k * (k - 1) * (k - 2) * (k - 3), 6), k - 4, 1)
                        + term(rat(k * k * (k - 1) * (7 * k - 11), 6), 2 * k - 4, 2)
                        + term(rat(-2 * k * k * k * (k - 1), 1), 3 * k - 4, 3)
                        + term(kk.clone().square().square(), 4 * k - 4, 4)
                }
            };
            (lhs, rhs)
        }
        DecompId::XP1 => {
            let k = args[0];
            let zs = roots_of_unity(bits, k)?;
            let lhs = inv(&(x.powi(k) - &one));
            let s = zs
                .iter()
                .fold(HighComplex::zero(bits), |acc, z| acc + z / &(x - z));
            (lhs, scale_r(s, rat(1, k)))
        }
        DecompId::ONE_XZ => {
            let k = args[0];
            let zs = roots_of_unity(bits, k)?;
            let lhs = zs[1..]
                .iter()
                .fold(HighComplex::zero(bits), |acc, z| acc + inv(&(x - z)));
            let rhs = (x.powi(k - 1) / (x.powi(k) - &one)).scale_int(k) - inv(&xm1);
            (lhs, rhs)
        }
        DecompId::ONE_XZ2 => {
            let k = args[0];
            let zs = roots_of_unity(bits, k)?;
            let lhs = zs[1..]
                .iter()
                .fold(HighComplex::zero(bits), |acc, z| acc + (x - z).powi(-2));
            let u = x.powi(k) - &one;
            let rhs = -xm1.powi(-2) - (x.powi(k - 2) / &u).scale_int(k * (k - 1))
                + (x.powi(2 * k - 2) / u.powi(2)).scale_int(k * k);
            (lhs, rhs)
        }
        DecompId::R | DecompId::R2 => {
            let (p, q) = (args[0], args[1]);
            let plus = id == DecompId::R2;
            let shifted = if plus { &xp1 } else { &xm1 };
            let lhs = x * &(x.powi(p) + &one) * (x.powi(q) + &one)
                / (shifted.powi(2) * (x.powi(p) - &one) * (x.powi(q) - &one));
            let pq = p * q;
            let mut rhs = if plus {
                scale_r(inv(&xm1), rat(1, pq)) + scale_r(xm1.powi(-2), rat(1, pq))
            } else {
                scale_r(inv(&xm1), rat(p * p + q * q + 1, 3 * pq))
                    + scale_r(xm1.powi(-2), rat(p * p + q * q + 13, 3 * pq))
                    + scale_r(xm1.powi(-3), rat(8, pq))
                    + scale_r(xm1.powi(-4), rat(4, pq))
            };
            for (m, other) in [(p, q), (q, p)] {
                let ws = roots_of_unity(bits, m)?;
                let mut s = HighComplex::zero(bits);
                for w in &ws[1..] {
                    let ws1 = if plus { w + &one } else { w - &one };
                    let wo = w.powi(other);
                    s += &(w.powi(2) * (&wo + &one) / (ws1.powi(2) * (&wo - &one) * (x - w)));
                }
                rhs += &scale_r(s, rat(2, m));
            }
            (lhs, rhs)
        }
        DecompId::XK2 | DecompId::PXK2 => {
            let k = args[0];
            let plus = id == DecompId::PXK2;
            let shifted = if plus { &xp1 } else { &xm1 };
            let u = x.powi(k) - &one;
            let lhs = x / &(shifted.powi(2) * u.powi(2));
            let k2 = k * k;
            let mut rhs = if plus {
                scale_r(inv(&xm1), rat(-(k - 1), 4 * k2))
                    + scale_r(xm1.powi(-2), rat(1, 4 * k2))
                    + scale_r(inv(&xp1), rat(-(k - 1), 4))
                    + scale_r(xp1.powi(-2), rat(-1, 4))
            } else {
                scale_r(inv(&xm1), rat(-(k - 1) * (k2 - 4 * k + 1), 12 * k2))
                    + scale_r(xm1.powi(-2), rat((k - 1) * (5 * k - 13), 12 * k2))
                    + scale_r(xm1.powi(-3), rat(-(k - 2), k2))
                    + scale_r(xm1.powi(-4), rat(1, k2))
            };
            let zs = roots_of_unity(bits, k)?;
            let (mut s1, mut s2) = (HighComplex::zero(bits), HighComplex::zero(bits));
            for z in &zs[1..] {
                let zs1 = if plus { z + &one } else { z - &one };
                let z2 = z.powi(2);
                let a = (&z2 / &zs1.powi(2)).scale_int(k);
                let b = (&z2 / &zs1.powi(3)).scale_int(if plus { -2 } else { 2 });
                s1 += &((a + b) / (x - z));
                s2 += &(z.powi(3) / (zs1.powi(2) * (x - z).powi(2)));
            }
            rhs = rhs - scale_r(s1, rat(1, k2)) + scale_r(s2, rat(1, k2));
            (lhs, rhs)
        }
    })
}

/// Evaluates both sides of a decomposition at `x`.
pub fn partial_fraction_check(
    ctx: &PrecisionContext,
    id: DecompId,
    args: &[i64],
    x: &HighComplex,
) -> Result<CheckReport> {
    id.validate(args)?;
    let bits = ctx.work_bits();
    let x = x.with_prec(bits);
    ensure_clear_of_poles(&x, &id.poles(bits, args)?)?;
    let (lhs, rhs) = decomp_sides(bits, id, args, &x)?;
    let mut params = Params::new();
    for (name, v) in id.param_names().iter().zip(args) {
        params = params.int(name, *v);
    }
    params = params.text("x", x.to_decimal(40));
    Ok(CheckReport::compare(
        ctx,
        format!("rootsum.decomp.{}", id.tag()),
        params,
        Value::Approx(lhs),
        Value::Approx(rhs),
    ))
}

/// `count` pseudo-random points in `[-2, 2]^2` at least `1/8` from every pole,
/// drawn from a ChaCha generator seeded with `seed`.
pub fn decomposition_points(
    bits: u32,
    id: DecompId,
    args: &[i64],
    seed: u64,
    count: usize,
) -> Result<Vec<HighComplex>> {
    id.validate(args)?;
    let poles = id.poles(bits, args)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let re: f64 = rng.gen_range(-2.0..2.0);
        let im: f64 = rng.gen_range(-2.0..2.0);
        let x = HighComplex::new(Float::with_val(bits, re), Float::with_val(bits, im));
        if ensure_clear_of_poles(&x, &poles).is_ok() {
            out.push(x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{approx_equal, make_context};

    fn ctx() -> PrecisionContext {
        make_context(256).unwrap()
    }

    fn spec(k: i64, pole: Pole, m: u32, a: u32, range: SumRange) -> PoleSpec {
        PoleSpec::new(k, pole, m, a, range).unwrap()
    }

    #[test]
    fn bruteforce_examples() {
        let c = ctx();
        let v = pole_sum_bruteforce(&c, &spec(5, Pole::PlusOne, 1, 0, SumRange::OmitPole)).unwrap();
        assert!(approx_equal(&c, &v, &HighComplex::from_int(256, -2)));
        let v = pole_sum_bruteforce(&c, &spec(3, Pole::PlusOne, 2, 0, SumRange::OmitPole)).unwrap();
        assert!(approx_equal(
            &c,
            &v,
            &HighComplex::from_rational(256, &rat(1, 3))
        ));
        let v = pole_sum_bruteforce(&c, &spec(1, Pole::MinusOne, 1, 0, SumRange::Full)).unwrap();
        assert!(approx_equal(
            &c,
            &v,
            &HighComplex::from_rational(256, &rat(1, 2))
        ));
    }

    #[test]
    fn bruteforce_rejects_singular_terms() {
        let c = ctx();
        let r = pole_sum_bruteforce(&c, &spec(5, Pole::PlusOne, 1, 0, SumRange::Full));
        assert!(matches!(r, Err(Error::SingularTerm(_))));
        let r = pole_sum_bruteforce(&c, &spec(4, Pole::MinusOne, 1, 0, SumRange::OmitPole));
        assert!(matches!(r, Err(Error::SingularTerm(_))));
        let r = pole_sum_bruteforce(&c, &spec(8, Pole::PlusI, 1, 0, SumRange::Full));
        assert!(matches!(r, Err(Error::SingularTerm(_))));
    }

    #[test]
    fn closed_examples() {
        // z_n - i summed for k = 5 gives 5/(1 - i)
        let v = pole_sum_closed(&spec(5, Pole::PlusI, 1, 0, SumRange::Full)).unwrap();
        assert_eq!(v, GaussianRational::new(rat(5, 2), rat(5, 2)));
        let v = pole_sum_closed(&spec(5, Pole::MinusI, 1, 0, SumRange::Full)).unwrap();
        assert_eq!(v, GaussianRational::new(rat(5, 2), rat(-5, 2)));
        let v = pole_sum_closed(&spec(5, Pole::PlusOne, 4, 1, SumRange::OmitPole)).unwrap();
        assert_eq!(v, GaussianRational::real(rat(1, 5)));
        let e = pole_sum_closed(&spec(4, Pole::MinusOne, 1, 0, SumRange::OmitPole)).unwrap_err();
        assert!(matches!(e, Error::Hypothesis(_)));
        let e = pole_sum_closed(&spec(5, Pole::MinusOne, 1, 0, SumRange::Full)).unwrap_err();
        assert!(matches!(e, Error::Unsupported(_)));
    }

    #[test]
    fn tabulated_sets() {
        assert_eq!(PoleSpec::tabulated(7).len(), 8 + 14 + 14);
        assert_eq!(PoleSpec::tabulated(8).len(), 14);
    }

    #[test]
    fn tables_match_oracle_small_k() {
        let c = ctx();
        for k in 1..=13 {
            for s in PoleSpec::tabulated(k) {
                let r = pole_sum_check(&c, &s).unwrap();
                assert!(r.pass, "{}: {:?}", s.params(), r.abs_diff);
            }
        }
    }

    #[test]
    fn mixed_examples() {
        let c = ctx();
        let v = mixed_sum_bruteforce(&c, 2, 3, MixedShape::XI_OVER_1SQ_P).unwrap();
        assert!(approx_equal(
            &c,
            &v,
            &HighComplex::from_rational(256, &rat(1, 3))
        ));
        let v = mixed_sum_bruteforce(&c, 3, 5, MixedShape::XI_OVER_1SQ_P).unwrap();
        assert!(approx_equal(&c, &v, &HighComplex::one(256)));
        assert_eq!(
            mixed_sum_bruteforce(&c, 2, 4, MixedShape::XI_OVER_1SQ_P).unwrap_err(),
            Error::Coprimality(2, 4)
        );
        assert_eq!(
            mixed_identity_rhs(MixedIdentityId::LEMR22, 2, 3),
            rat(25, 12)
        );
        assert!(
            mixed_identity_check(&c, 2, 3, MixedIdentityId::LEMR22)
                .unwrap()
                .pass
        );
        assert!(
            mixed_identity_check(&c, 3, 5, MixedIdentityId::LEMR1)
                .unwrap()
                .pass
        );
        assert!(matches!(
            mixed_identity_check(&c, 3, 9, MixedIdentityId::LEMR1),
            Err(Error::Coprimality(3, 9))
        ));
        assert!(matches!(
            mixed_identity_check(&c, 2, 5, MixedIdentityId::LEMR21P),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn decomposition_examples() {
        let c = ctx();
        let x = HighComplex::from_int(256, 2);
        let r = partial_fraction_check(&c, DecompId::ONE_XZ, &[3], &x).unwrap();
        assert!(r.pass);
        let five_sevenths = HighComplex::from_rational(c.work_bits(), &rat(5, 7));
        assert!(approx_equal(
            &c,
            &r.lhs.to_complex(c.work_bits()),
            &five_sevenths
        ));
        let x = HighComplex::new(Float::with_val(256, 2), Float::with_val(256, 1));
        assert!(
            partial_fraction_check(&c, DecompId::R, &[2, 3], &x)
                .unwrap()
                .pass
        );
        let near = HighComplex::from_real(Float::with_val(256, 1) + Float::with_val(256, 1e-10));
        assert!(matches!(
            partial_fraction_check(&c, DecompId::XK2, &[5], &near),
            Err(Error::NearSingular(_))
        ));
    }

    #[test]
    fn parity_restricted_decompositions_fail_off_hypothesis() {
        // The odd-modulus decompositions are genuinely false for even moduli.
        let c = ctx();
        let bits = c.work_bits();
        let x = HighComplex::new(Float::with_val(bits, 0.7), Float::with_val(bits, 1.3));
        let (l, r) = decomp_sides(bits, DecompId::PXK2, &[4], &x).unwrap();
        assert!(!approx_equal(&c, &l, &r));
        let (l, r) = decomp_sides(bits, DecompId::R2, &[2, 3], &x).unwrap();
        assert!(!approx_equal(&c, &l, &r));
    }

    #[test]
    fn seeded_points_are_reproducible() {
        let a = decomposition_points(128, DecompId::R, &[3, 4], 7, 5).unwrap();
        let b = decomposition_points(128, DecompId::R, &[3, 4], 7, 5).unwrap();
        assert_eq!(a, b);
    }
}
