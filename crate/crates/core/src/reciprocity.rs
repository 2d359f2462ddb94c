//! Dedekind-type sums and their reciprocity laws.

use rug::Float;

use crate::check::{CheckReport, Params, Value};
use crate::error::{Error, Result};
use crate::numeric::{
    gcd, rat, require_coprime, root_of_unity_bits, sin_cos_pi_ratio, HighComplex, PrecisionContext,
    Rational,
};
use crate::rootsums::{mixed_sum_bruteforce, MixedShape};

/// `((x))`: `x - floor(x) - 1/2` off the integers, zero on them.
pub fn sawtooth(x: &Rational) -> Rational {
    if *x.denom() == 1 {
        return Rational::new();
    }
    let fl = Rational::from(x.floor_ref());
    (x - fl) - rat(1, 2)
}

fn require_positive_coprime(p: i64, q: i64) -> Result<()> {
    if q < 1 {
        return Err(Error::InvalidModulus(format!("q = {q}")));
    }
    require_coprime(p, q)
}

/// Exact `s(p, q) = sum_{n=1}^{q} ((pn/q)) ((n/q))`.
pub fn dedekind_sum(p: i64, q: i64) -> Result<Rational> {
    require_positive_coprime(p, q)?;
    let mut acc = Rational::new();
    for n in 1..q {
        acc += sawtooth(&rat(p * n, q)) * sawtooth(&rat(n, q));
    }
    Ok(acc)
}

/// `(1/(4q)) sum_{n=1}^{q-1} cot(pi n p/q) cot(pi n/q)`, numerically.
pub fn dedekind_cot(ctx: &PrecisionContext, p: i64, q: i64) -> Result<HighComplex> {
    let s = cot_pair_sum(ctx, p, q, CotKernel::Plain)?;
    Ok(s.scale_rational(&rat(1, 4 * q)))
}

fn bernoulli3(x: &Rational) -> Rational {
    let x2 = Rational::from(x * x);
    let x3 = Rational::from(&x2 * x);
    x3 - x2 * rat(3, 2) + Rational::from(x / 2)
}

/// Exact `s_3(h, k) = sum_{n=1}^{k-1} (n/k) B_3({hn/k})`.
pub fn s3(h: i64, k: i64) -> Result<Rational> {
    require_positive_coprime(h, k)?;
    let mut acc = Rational::new();
    for n in 1..k {
        let x = rat(h * n, k);
        let frac = &x - Rational::from(x.floor_ref());
        acc += rat(n, k) * bernoulli3(&frac);
    }
    Ok(acc)
}

/// `-3/(8k^3) sum_{n=1}^{k-1} cot(pi hn/k) cot(pi n/k) / sin^2(pi n/k)`.
pub fn s3_cot(ctx: &PrecisionContext, h: i64, k: i64) -> Result<HighComplex> {
    let s = cot_pair_sum(ctx, h, k, CotKernel::Csc2)?;
    Ok(s.scale_rational(&rat(-3, 8 * k * k * k)))
}

/// Second factor `K(pi n/q)` in `sum_{n=1}^{q-1} cot(pi n p/q) K(pi n/q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CotKernel {
    Plain,
    Cot3,
    Csc2,
    Sec2,
    /// `cot^3 / cos^2`, evaluated as `cos / sin^3` so that `n = q/2` contributes zero.
    Cot3Sec2,
    Csc4,
    Csc6,
}

impl CotKernel {
    fn eval(self, bits: u32, n: i64, q: i64) -> Float {
        let (s, c) = sin_cos_pi_ratio(bits, n, q);
        let cot = Float::with_val(bits, &c / &s);
        let s2 = Float::with_val(bits, s.square_ref());
        match self {
            CotKernel::Plain => cot,
            CotKernel::Cot3 => Float::with_val(bits, cot.square_ref()) * cot,
            CotKernel::Csc2 => cot / s2,
            CotKernel::Sec2 => cot / Float::with_val(bits, c.square_ref()),
            CotKernel::Cot3Sec2 => c / (s2 * s),
            CotKernel::Csc4 => cot / Float::with_val(bits, s2.square_ref()),
            CotKernel::Csc6 => cot / (Float::with_val(bits, s2.square_ref()) * s2),
        }
    }
}

/// `sum_{n=1}^{q-1} cot(pi n p/q) K(pi n/q)`.
pub fn cot_pair_sum(
    ctx: &PrecisionContext,
    p: i64,
    q: i64,
    kernel: CotKernel,
) -> Result<HighComplex> {
    if q < 1 {
        return Err(Error::InvalidModulus(format!("q = {q}")));
    }
    require_coprime(p, q)?;
    if kernel == CotKernel::Sec2 && q % 2 == 0 {
        return Err(Error::Hypothesis(format!(
            "sec2 kernel needs odd q, got {q}"
        )));
    }
    let bits = ctx.work_bits();
    let mut acc = Float::new(bits);
    for n in 1..q {
        let (s, c) = sin_cos_pi_ratio(bits, n * p, q);
        acc += c / s * kernel.eval(bits, n, q);
    }
    Ok(HighComplex::from_real(acc))
}

/// Single-modulus theorems expressing a cotangent sum through root-of-unity residuals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(non_camel_case_types)]
pub enum SingleTheorem {
    CPC,
    CPC3,
    S3T,
    CPC3C2,
    CPCC2,
}

impl SingleTheorem {
    pub const ALL: [SingleTheorem; 5] = [
        SingleTheorem::CPC,
        SingleTheorem::CPC3,
        SingleTheorem::S3T,
        SingleTheorem::CPC3C2,
        SingleTheorem::CPCC2,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            SingleTheorem::CPC => "cpc",
            SingleTheorem::CPC3 => "cpc3",
            SingleTheorem::S3T => "s3t",
            SingleTheorem::CPC3C2 => "cpc3c2",
            SingleTheorem::CPCC2 => "cpcc2",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.tag() == s)
    }

    fn kernel(self) -> CotKernel {
        match self {
            SingleTheorem::CPC => CotKernel::Plain,
            SingleTheorem::CPC3 => CotKernel::Cot3,
            SingleTheorem::S3T => CotKernel::Csc2,
            SingleTheorem::CPC3C2 => CotKernel::Cot3Sec2,
            SingleTheorem::CPCC2 => CotKernel::Sec2,
        }
    }
}

/// Right-hand side of a single-modulus theorem.
pub fn single_theorem_rhs(
    ctx: &PrecisionContext,
    p: i64,
    q: i64,
    theorem: SingleTheorem,
) -> Result<HighComplex> {
    if p < 1 || q < 2 {
        return Err(Error::InvalidModulus(format!("p = {p}, q = {q}")));
    }
    require_coprime(p, q)?;
    let bits = ctx.work_bits();
    let r = |n, d| HighComplex::from_rational(bits, &rat(n, d));
    let m = |b, e1, e2| mixed_sum_bruteforce(ctx, p, q, MixedShape::new(b, false, e1, e2));
    Ok(match theorem {
        SingleTheorem::CPC => r(q - 1, 1) - m(0, 1, 1)?.scale_int(4),
        SingleTheorem::CPC3 => {
            r((q - 1) * (q - 1), 2) + m(0, 2, 1)?.scale_int(12) + m(0, 3, 1)?.scale_int(16)
        }
        SingleTheorem::S3T | SingleTheorem::CPC3C2 => r(q * q - 1, 3) + m(1, 3, 1)?.scale_int(16),
        SingleTheorem::CPCC2 => {
            if q % 2 == 0 {
                return Err(Error::Hypothesis(format!("q = {q} must be odd")));
            }
            let one = HighComplex::one(bits);
            let mut acc = HighComplex::zero(bits);
            for n in 1..q {
                let x = root_of_unity_bits(bits, q, n)?;
                let y = root_of_unity_bits(bits, q, n * p)?;
                acc += &x / &((&x * &x - &one) * (y - &one));
            }
            acc.scale_int(-8)
        }
    })
}

pub fn single_theorem_check(
    ctx: &PrecisionContext,
    p: i64,
    q: i64,
    theorem: SingleTheorem,
) -> Result<CheckReport> {
    let rhs = single_theorem_rhs(ctx, p, q, theorem)?;
    let lhs = cot_pair_sum(ctx, p, q, theorem.kernel())?;
    Ok(CheckReport::compare(
        ctx,
        format!("reciprocity.theorem.{}", theorem.tag()),
        Params::new().int("p", p).int("q", q),
        Value::Approx(lhs),
        Value::Approx(rhs),
    ))
}

/// Two-term laws `p S(p, q) + q S(q, p) = R(p, q)` (or `s(p,q) + s(q,p)` for `DEDEKIND_S`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(non_camel_case_types)]
pub enum ReciprocityLaw {
    DEDEKIND_S,
    DEDEKIND_COT,
    COT3,
    T_LAW,
    SEC2_LAW,
    COT3SEC2_LAW,
    CSC4_LAW,
    CSC6_LAW,
}

impl ReciprocityLaw {
    pub const ALL: [ReciprocityLaw; 8] = [
        ReciprocityLaw::DEDEKIND_S,
        ReciprocityLaw::DEDEKIND_COT,
        ReciprocityLaw::COT3,
        ReciprocityLaw::T_LAW,
        ReciprocityLaw::SEC2_LAW,
        ReciprocityLaw::COT3SEC2_LAW,
        ReciprocityLaw::CSC4_LAW,
        ReciprocityLaw::CSC6_LAW,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ReciprocityLaw::DEDEKIND_S => "dedekind_s",
            ReciprocityLaw::DEDEKIND_COT => "dedekind_cot",
            ReciprocityLaw::COT3 => "cot3",
            ReciprocityLaw::T_LAW => "t_law",
            ReciprocityLaw::SEC2_LAW => "sec2_law",
            ReciprocityLaw::COT3SEC2_LAW => "cot3sec2_law",
            ReciprocityLaw::CSC4_LAW => "csc4_law",
            ReciprocityLaw::CSC6_LAW => "csc6_law",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.tag() == s)
    }

    pub fn requires_odd(self) -> bool {
        matches!(
            self,
            ReciprocityLaw::SEC2_LAW | ReciprocityLaw::CSC4_LAW | ReciprocityLaw::CSC6_LAW
        )
    }

    fn kernel(self) -> Option<CotKernel> {
        match self {
            ReciprocityLaw::DEDEKIND_S => None,
            ReciprocityLaw::DEDEKIND_COT => Some(CotKernel::Plain),
            ReciprocityLaw::COT3 => Some(CotKernel::Cot3),
            ReciprocityLaw::T_LAW => Some(CotKernel::Csc2),
            ReciprocityLaw::SEC2_LAW => Some(CotKernel::Sec2),
            ReciprocityLaw::COT3SEC2_LAW => Some(CotKernel::Cot3Sec2),
            ReciprocityLaw::CSC4_LAW => Some(CotKernel::Csc4),
            ReciprocityLaw::CSC6_LAW => Some(CotKernel::Csc6),
        }
    }

    pub fn check_hypotheses(self, p: i64, q: i64) -> Result<()> {
        let min = if self == ReciprocityLaw::DEDEKIND_S {
            1
        } else {
            2
        };
        if p < min || q < min {
            return Err(Error::InvalidModulus(format!("p = {p}, q = {q}")));
        }
        require_coprime(p, q)?;
        if self.requires_odd() && (p % 2 == 0 || q % 2 == 0) {
            return Err(Error::Hypothesis(format!("{} needs odd p, q", self.tag())));
        }
        Ok(())
    }
}

/// Which right-hand side to use for a reciprocity law.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RhsVariant {
    /// The polynomial as published.
    Stated,
    /// Corrected polynomial; differs from the stated one only for `CSC6_LAW`.
    Amended,
}

/// Exact right-hand side of a reciprocity law.
pub fn reciprocity_rhs(law: ReciprocityLaw, p: i64, q: i64, variant: RhsVariant) -> Rational {
    let (p2, q2) = (p * p, q * q);
    let (p4, q4) = (p2 * p2, q2 * q2);
    let (p6, q6) = (p4 * p2, q4 * q2);
    match law {
        ReciprocityLaw::DEDEKIND_S => rat(-1, 4) + (rat(p, q) + rat(1, p * q) + rat(q, p)) / 12,
        ReciprocityLaw::DEDEKIND_COT => rat(p2 + q2 - 3 * p * q + 1, 3),
        ReciprocityLaw::COT3 => rat(
            p4 + q4 - 5 * p2 * q2 - 15 * p2 - 15 * q2 + 45 * p * q - 12,
            45,
        ),
        ReciprocityLaw::T_LAW | ReciprocityLaw::COT3SEC2_LAW => rat(p4 + q4 - 5 * p2 * q2 + 3, 45),
        ReciprocityLaw::SEC2_LAW => rat(p2 + q2 - 2, 3),
        ReciprocityLaw::CSC4_LAW => rat(
            2 * p6 + 2 * q6 - 7 * p4 * q2 - 7 * p2 * q4 + 7 * p4 + 7 * q4 - 35 * p2 * q2 + 31,
            945,
        ),
        ReciprocityLaw::CSC6_LAW => {
            let stated = 3 * p4 * p4 + 3 * q4 * q4 + 20 * p6 + 20 * q6 + 56 * p4 + 56 * q4
                - 280 * p2 * q2
                - 10 * p6 * q2
                - 10 * p2 * q6
                - 7 * p4 * q4
                + 289;
            let correction = match variant {
                RhsVariant::Stated => 0,
                RhsVariant::Amended => -70 * p4 * q2 - 70 * p2 * q4,
            };
            rat(stated + correction, 14175)
        }
    }
}

/// Left-hand side `p S(p,q) + q S(q,p)`; exact for `DEDEKIND_S`.
pub fn reciprocity_lhs(
    ctx: &PrecisionContext,
    law: ReciprocityLaw,
    p: i64,
    q: i64,
) -> Result<Value> {
    law.check_hypotheses(p, q)?;
    match law.kernel() {
        None => Ok(Value::Exact(dedekind_sum(p, q)? + dedekind_sum(q, p)?)),
        Some(k) => {
            let a = cot_pair_sum(ctx, p, q, k)?.scale_int(p);
            let b = cot_pair_sum(ctx, q, p, k)?.scale_int(q);
            Ok(Value::Approx(a + b))
        }
    }
}

fn law_params(p: i64, q: i64) -> Params {
    Params::new().int("p", p).int("q", q)
}

/// Checks a law against its stated right-hand side.
pub fn reciprocity_check(
    ctx: &PrecisionContext,
    p: i64,
    q: i64,
    law: ReciprocityLaw,
) -> Result<CheckReport> {
    reciprocity_check_variant(ctx, p, q, law, RhsVariant::Stated)
}

pub fn reciprocity_check_variant(
    ctx: &PrecisionContext,
    p: i64,
    q: i64,
    law: ReciprocityLaw,
    variant: RhsVariant,
) -> Result<CheckReport> {
    let lhs = reciprocity_lhs(ctx, law, p, q)?;
    let rhs = reciprocity_rhs(law, p, q, variant);
    let identity = match variant {
        RhsVariant::Stated => format!("reciprocity.{}", law.tag()),
        RhsVariant::Amended => format!("reciprocity.{}.amended", law.tag()),
    };
    Ok(CheckReport::compare(
        ctx,
        identity,
        law_params(p, q),
        lhs,
        Value::Exact(rhs),
    ))
}

/// Negative control: the stated right-hand side shifted by `delta`.
pub fn reciprocity_check_perturbed(
    ctx: &PrecisionContext,
    p: i64,
    q: i64,
    law: ReciprocityLaw,
    delta: &Rational,
) -> Result<CheckReport> {
    let lhs = reciprocity_lhs(ctx, law, p, q)?;
    let rhs = reciprocity_rhs(law, p, q, RhsVariant::Stated) + delta;
    Ok(CheckReport::compare(
        ctx,
        format!("reciprocity.{}.perturbed", law.tag()),
        law_params(p, q).text("delta", crate::numeric::rational_string(delta)),
        lhs,
        Value::Exact(rhs),
    ))
}

/// `T_LAW` through the residual forms of `S3T` on both orderings.
pub fn t_law_residual_route_check(ctx: &PrecisionContext, p: i64, q: i64) -> Result<CheckReport> {
    ReciprocityLaw::T_LAW.check_hypotheses(p, q)?;
    let a = single_theorem_rhs(ctx, p, q, SingleTheorem::S3T)?.scale_int(p);
    let b = single_theorem_rhs(ctx, q, p, SingleTheorem::S3T)?.scale_int(q);
    let rhs = reciprocity_rhs(ReciprocityLaw::T_LAW, p, q, RhsVariant::Stated);
    Ok(CheckReport::compare(
        ctx,
        "reciprocity.t_law.residual_route",
        law_params(p, q),
        Value::Approx(a + b),
        Value::Exact(rhs),
    ))
}

/// Right-hand side of the four-modulus law over `1890 pqrs` (stated) or `945 pqrs` (amended).
pub fn four_sum_rhs(m: [i64; 4], variant: RhsVariant) -> Rational {
    let sq: Vec<i64> = m.iter().map(|v| v * v).collect();
    let mut triples = 0;
    for skip in 0..4 {
        triples += (0..4)
            .filter(|&i| i != skip)
            .map(|i| sq[i])
            .product::<i64>();
    }
    let mut pairs = 0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                pairs += sq[i] * sq[i] * sq[j];
            }
        }
    }
    let sum6: i64 = sq.iter().map(|s| s * s * s).sum();
    let sum2: i64 = sq.iter().sum();
    let num = 35 * triples - 7 * pairs + 2 * sum6 - 21 * sum2 + 20;
    let prod: i64 = m.iter().product();
    let den = match variant {
        RhsVariant::Stated => 1890 * prod,
        RhsVariant::Amended => 945 * prod,
    };
    rat(num, den)
}

/// `sum_i (1/m_i) sum_{n=1}^{m_i-1} cot(pi n/m_i) prod_{j != i} cot(pi m_j n/m_i) / sin^2(pi n/m_i)`.
pub fn four_sum_lhs(ctx: &PrecisionContext, m: [i64; 4]) -> Result<HighComplex> {
    let bits = ctx.work_bits();
    let mut total = Float::new(bits);
    for i in 0..4 {
        let mi = m[i];
        let mut inner = Float::new(bits);
        for n in 1..mi {
            let (s, c) = sin_cos_pi_ratio(bits, n, mi);
            let s2 = Float::with_val(bits, s.square_ref());
            let mut term = c / s / s2;
            for (j, &mj) in m.iter().enumerate() {
                if j != i {
                    let (sj, cj) = sin_cos_pi_ratio(bits, mj * n, mi);
                    term *= cj / sj;
                }
            }
            inner += term;
        }
        total += inner / mi;
    }
    Ok(HighComplex::from_real(total))
}

/// Four-modulus law for distinct, odd, pairwise coprime moduli.
///
/// A modulus equal to 1 is evaluated (its inner sum is empty) but flagged in the notes.
pub fn four_sum_check(
    ctx: &PrecisionContext,
    m: [i64; 4],
    variant: RhsVariant,
) -> Result<CheckReport> {
    for (i, &a) in m.iter().enumerate() {
        if a < 1 {
            return Err(Error::InvalidModulus(format!("modulus {a}")));
        }
        if a % 2 == 0 {
            return Err(Error::Hypothesis(format!("modulus {a} must be odd")));
        }
        for &b in &m[i + 1..] {
            if a == b {
                return Err(Error::Hypothesis(format!(
                    "moduli must be distinct, {a} repeated"
                )));
            }
            if gcd(a, b) != 1 {
                return Err(Error::Coprimality(a, b));
            }
        }
    }
    let lhs = four_sum_lhs(ctx, m)?;
    let rhs = four_sum_rhs(m, variant);
    let identity = match variant {
        RhsVariant::Stated => "reciprocity.four_sum".to_string(),
        RhsVariant::Amended => "reciprocity.four_sum.amended".to_string(),
    };
    let params = Params::new()
        .int("p", m[0])
        .int("q", m[1])
        .int("r", m[2])
        .int("s", m[3]);
    let mut report =
        CheckReport::compare(ctx, identity, params, Value::Approx(lhs), Value::Exact(rhs));
    if m.contains(&1) {
        report = report.with_note("modulus 1 lies outside the stated hypotheses");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::make_context;

    fn ctx() -> PrecisionContext {
        make_context(192).unwrap()
    }

    fn near(c: &PrecisionContext, z: &HighComplex, r: Rational) -> bool {
        crate::numeric::approx_equal(c, z, &HighComplex::from_rational(c.work_bits(), &r))
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind_sum(1, 3).unwrap(), rat(1, 18));
        assert_eq!(dedekind_sum(2, 3).unwrap(), rat(-1, 18));
        assert_eq!(dedekind_sum(1, 5).unwrap(), rat(1, 5));
        assert_eq!(dedekind_sum(7, 1).unwrap(), 0);
        assert_eq!(
            dedekind_sum(3, 1).unwrap() + dedekind_sum(1, 3).unwrap(),
            rat(1, 18)
        );
        assert!(matches!(dedekind_sum(2, 4), Err(Error::Coprimality(2, 4))));
    }

    #[test]
    fn cot_form_matches_exact() {
        let c = ctx();
        for (p, q) in [(1, 3), (2, 3), (1, 5), (3, 7), (5, 12)] {
            let v = dedekind_cot(&c, p, q).unwrap();
            assert!(near(&c, &v, dedekind_sum(p, q).unwrap()), "{p} {q}");
        }
    }

    #[test]
    fn s3_examples() {
        assert_eq!(s3(1, 3).unwrap(), rat(-1, 81));
        assert_eq!(s3(2, 3).unwrap(), rat(1, 81));
        assert_eq!(s3(1, 2).unwrap(), 0);
        let c = ctx();
        assert!(near(&c, &s3_cot(&c, 1, 3).unwrap(), rat(-1, 81)));
        assert!(near(&c, &s3_cot(&c, 3, 8).unwrap(), s3(3, 8).unwrap()));
    }

    #[test]
    fn cot_pair_values() {
        let c = ctx();
        assert!(near(
            &c,
            &cot_pair_sum(&c, 2, 3, CotKernel::Csc2).unwrap(),
            rat(-8, 9)
        ));
        assert!(near(
            &c,
            &cot_pair_sum(&c, 2, 3, CotKernel::Plain).unwrap(),
            rat(-2, 3)
        ));
        assert!(near(
            &c,
            &cot_pair_sum(&c, 3, 2, CotKernel::Csc2).unwrap(),
            rat(0, 1)
        ));
    }

    #[test]
    fn single_theorems() {
        let c = ctx();
        for t in SingleTheorem::ALL {
            for (p, q) in [(2, 3), (4, 9), (5, 7), (3, 11)] {
                match single_theorem_check(&c, p, q, t) {
                    Ok(r) => assert!(r.pass, "{t:?} {p} {q}"),
                    Err(e) => assert!(e.is_hypothesis()),
                }
            }
        }
    }

    #[test]
    fn law_examples() {
        let c = ctx();
        let r = reciprocity_check(&c, 2, 3, ReciprocityLaw::T_LAW).unwrap();
        assert!(r.pass);
        assert_eq!(r.rhs, Value::Exact(rat(-80, 45)));
        assert!(
            reciprocity_check(&c, 1, 3, ReciprocityLaw::DEDEKIND_S)
                .unwrap()
                .pass
        );
        for law in ReciprocityLaw::ALL {
            if law != ReciprocityLaw::CSC6_LAW {
                assert!(reciprocity_check(&c, 3, 5, law).unwrap().pass, "{law:?}");
            }
        }
        assert!(matches!(
            reciprocity_check(&c, 2, 5, ReciprocityLaw::SEC2_LAW),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn csc6_stated_fails_and_amended_holds() {
        let c = ctx();
        let stated = reciprocity_check(&c, 3, 5, ReciprocityLaw::CSC6_LAW).unwrap();
        assert!(!stated.pass);
        let amended =
            reciprocity_check_variant(&c, 3, 5, ReciprocityLaw::CSC6_LAW, RhsVariant::Amended)
                .unwrap();
        assert!(amended.pass);
    }

    #[test]
    fn perturbed_rhs_fails() {
        let c = ctx();
        let r = reciprocity_check_perturbed(&c, 2, 3, ReciprocityLaw::T_LAW, &rat(1, 1)).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn four_sum_amended() {
        let c = ctx();
        let m = [3, 5, 7, 11];
        assert!(!four_sum_check(&c, m, RhsVariant::Stated).unwrap().pass);
        assert!(four_sum_check(&c, m, RhsVariant::Amended).unwrap().pass);
        let r = four_sum_check(&c, [1, 3, 5, 7], RhsVariant::Amended).unwrap();
        assert!(!r.notes.is_empty());
        assert!(matches!(
            four_sum_check(&c, [3, 5, 9, 7], RhsVariant::Amended),
            Err(Error::Coprimality(3, 9))
        ));
    }

    #[test]
    fn t_law_two_routes() {
        let c = ctx();
        assert!(t_law_residual_route_check(&c, 4, 7).unwrap().pass);
    }
}
