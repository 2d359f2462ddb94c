//! Single-period trigonometric sums with rational closed forms.

use std::fmt;

use rug::Float;

use crate::check::{CheckReport, Params, Value};
use crate::error::{Error, Result};
use crate::numeric::{rat, sin_cos_pi_ratio, HighComplex, PrecisionContext, Rational};
use crate::rootsums::Mod4Branch;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(non_camel_case_types)]
pub enum TrigFamilyId {
    /// `sum_{n=1}^{k} cos^2(pi n/k) / cos^4(2 pi n/k)`
    COS2_OVER_COS4,
    /// `sum_{n=1}^{k} 1 / cos^4(2 pi n/k)`
    INV_COS4,
    /// `sum_{n=1}^{k} sin^2(pi n/k) / cos^4(2 pi n/k)`
    SIN2_OVER_COS4,
    /// `sum_{n=1}^{k-1} sin^2(pi n/k) / sin^4(2 pi n/k)`
    SIN2_OVER_SIN4,
    /// `sum_{n=1}^{k-1} 1 / sin^4(pi n/k)`
    INV_SIN4,
    /// `sum_{n=1}^{k-1} 1 / sin^4(2 pi n/k)`
    INV_SIN4_DOUBLE,
    /// `sum_{n=1}^{k-1} cos^2(pi n/k) / sin^4(2 pi n/k)`
    COS2_OVER_SIN4,
    /// `sum_{n=1}^{k-1} 1 / sin^2(pi n/k)`
    INV_SIN2,
    /// `sum_{n=1}^{k} 1 / cos^2(pi n/k)`
    INV_COS2,
    /// `sum_{n=1}^{k} tan^2(pi n/k) / cos^2(pi n/k)`
    TAN2_SEC2,
    /// `sum_{n=1}^{k} cos(2 pi n/k) / cos^4(pi n/k)`
    COS2N_SEC4,
    /// `-3/(8k^3) sum_{n=1}^{k-1} cot^2(pi n/k) / sin^2(pi n/k)`
    S3_COT2_CSC2,
    /// `-3/(8k^3) sum_{n=1}^{k-1} cot(2 pi n/k) cot(pi n/k) / sin^2(pi n/k)`
    S3_COT_COT2_CSC2,
}

impl TrigFamilyId {
    pub const ALL: [TrigFamilyId; 13] = [
        TrigFamilyId::COS2_OVER_COS4,
        TrigFamilyId::INV_COS4,
        TrigFamilyId::SIN2_OVER_COS4,
        TrigFamilyId::SIN2_OVER_SIN4,
        TrigFamilyId::INV_SIN4,
        TrigFamilyId::INV_SIN4_DOUBLE,
        TrigFamilyId::COS2_OVER_SIN4,
        TrigFamilyId::INV_SIN2,
        TrigFamilyId::INV_COS2,
        TrigFamilyId::TAN2_SEC2,
        TrigFamilyId::COS2N_SEC4,
        TrigFamilyId::S3_COT2_CSC2,
        TrigFamilyId::S3_COT_COT2_CSC2,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            TrigFamilyId::COS2_OVER_COS4 => "cos2_over_cos4",
            TrigFamilyId::INV_COS4 => "inv_cos4",
            TrigFamilyId::SIN2_OVER_COS4 => "sin2_over_cos4",
            TrigFamilyId::SIN2_OVER_SIN4 => "sin2_over_sin4",
            TrigFamilyId::INV_SIN4 => "inv_sin4",
            TrigFamilyId::INV_SIN4_DOUBLE => "inv_sin4_double",
            TrigFamilyId::COS2_OVER_SIN4 => "cos2_over_sin4",
            TrigFamilyId::INV_SIN2 => "inv_sin2",
            TrigFamilyId::INV_COS2 => "inv_cos2",
            TrigFamilyId::TAN2_SEC2 => "tan2_sec2",
            TrigFamilyId::COS2N_SEC4 => "cos2n_sec4",
            TrigFamilyId::S3_COT2_CSC2 => "s3_cot2_csc2",
            TrigFamilyId::S3_COT_COT2_CSC2 => "s3_cot_cot2_csc2",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.tag() == s)
    }

    /// Whether the stated range runs to `n = k` (otherwise to `k - 1`).
    pub fn includes_k(self) -> bool {
        matches!(
            self,
            TrigFamilyId::COS2_OVER_COS4
                | TrigFamilyId::INV_COS4
                | TrigFamilyId::SIN2_OVER_COS4
                | TrigFamilyId::INV_COS2
                | TrigFamilyId::TAN2_SEC2
                | TrigFamilyId::COS2N_SEC4
        )
    }

    pub fn requires_odd(self) -> bool {
        !matches!(self, TrigFamilyId::INV_SIN4 | TrigFamilyId::INV_SIN2)
    }

    pub fn admissible(self, k: i64) -> bool {
        k >= 1 && (!self.requires_odd() || k % 2 == 1)
    }

    /// Exact value of the `n = k` term for families whose range includes it.
    fn endpoint_term(self) -> Rational {
        match self {
            TrigFamilyId::COS2_OVER_COS4
            | TrigFamilyId::INV_COS4
            | TrigFamilyId::INV_COS2
            | TrigFamilyId::COS2N_SEC4 => rat(1, 1),
            _ => Rational::new(),
        }
    }

    /// Exact value of the self-paired `n = k/2` term for even `k`.
    fn center_term(self) -> Rational {
        match self {
            TrigFamilyId::INV_SIN4 | TrigFamilyId::INV_SIN2 => rat(1, 1),
            _ => Rational::new(),
        }
    }

    /// Summand at index `n` for modulus `k`.
    fn term(self, bits: u32, k: i64, n: i64) -> Float {
        let (s1, c1) = sin_cos_pi_ratio(bits, n, k);
        let (s2, c2) = sin_cos_pi_ratio(bits, 2 * n, k);
        let sq = |x: &Float| Float::with_val(bits, x.square_ref());
        let p4 = |x: &Float| Float::with_val(bits, x.square_ref()).square();
        match self {
            TrigFamilyId::COS2_OVER_COS4 => sq(&c1) / p4(&c2),
            TrigFamilyId::INV_COS4 => p4(&c2).recip(),
            TrigFamilyId::SIN2_OVER_COS4 => sq(&s1) / p4(&c2),
            TrigFamilyId::SIN2_OVER_SIN4 => sq(&s1) / p4(&s2),
            TrigFamilyId::INV_SIN4 => p4(&s1).recip(),
            TrigFamilyId::INV_SIN4_DOUBLE => p4(&s2).recip(),
            TrigFamilyId::COS2_OVER_SIN4 => sq(&c1) / p4(&s2),
            TrigFamilyId::INV_SIN2 => sq(&s1).recip(),
            TrigFamilyId::INV_COS2 => sq(&c1).recip(),
            TrigFamilyId::TAN2_SEC2 => sq(&s1) / p4(&c1),
            TrigFamilyId::COS2N_SEC4 => c2 / p4(&c1),
            TrigFamilyId::S3_COT2_CSC2 => s3_prefactor(bits, k) * sq(&c1) / p4(&s1),
            TrigFamilyId::S3_COT_COT2_CSC2 => {
                s3_prefactor(bits, k) * (c2 / s2) * (c1 / &s1) / sq(&s1)
            }
        }
    }
}

fn s3_prefactor(bits: u32, k: i64) -> Float {
    Float::with_val(bits, &rat(-3, 8 * k * k * k))
}

impl fmt::Display for TrigFamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TrigRange {
    /// The range the closed form is stated for.
    Stated,
    /// `0 < n < k/2`.
    Half,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrigFamily {
    pub id: TrigFamilyId,
    pub k: i64,
    pub range: TrigRange,
}

impl TrigFamily {
    pub fn new(id: TrigFamilyId, k: i64, range: TrigRange) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidModulus(format!("k = {k}")));
        }
        if !id.admissible(k) {
            return Err(Error::Hypothesis(format!(
                "{id} requires odd k, got k = {k}"
            )));
        }
        Ok(TrigFamily { id, k, range })
    }

    pub fn stated(id: TrigFamilyId, k: i64) -> Result<Self> {
        Self::new(id, k, TrigRange::Stated)
    }

    pub fn half(id: TrigFamilyId, k: i64) -> Result<Self> {
        Self::new(id, k, TrigRange::Half)
    }

    fn last_index(&self) -> i64 {
        match self.range {
            TrigRange::Stated if self.id.includes_k() => self.k,
            TrigRange::Stated => self.k - 1,
            TrigRange::Half => (self.k - 1) / 2,
        }
    }

    pub fn params(&self) -> Params {
        let range = match self.range {
            TrigRange::Stated => "stated",
            TrigRange::Half => "half",
        };
        Params::new().int("k", self.k).text("range", range)
    }
}

/// Exact value together with the mod-4 branch used, where the closed form has two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub value: Rational,
    pub branch: Option<Mod4Branch>,
}

/// Direct summation; returned as a complex value with zero imaginary part.
pub fn trig_sum_bruteforce(ctx: &PrecisionContext, family: &TrigFamily) -> Result<HighComplex> {
    let bits = ctx.work_bits();
    let mut acc = Float::new(bits);
    for n in 1..=family.last_index() {
        let t = family.id.term(bits, family.k, n);
        if !t.is_finite() {
            return Err(Error::SingularTerm(format!("{} at n = {n}", family.id)));
        }
        acc += t;
    }
    Ok(HighComplex::from_real(acc))
}

/// Exact closed form over the stated range at the natural branch of `k`.
fn stated_closed(id: TrigFamilyId, k: i64, branch: Option<Mod4Branch>) -> Rational {
    let k2 = k * k;
    let k3 = k2 * k;
    let k4 = k2 * k2;
    match id {
        TrigFamilyId::COS2_OVER_COS4 => match branch.expect("branch") {
            Mod4Branch::One => rat(k * (3 + 4 * k + 3 * k2 + 2 * k3), 12),
            Mod4Branch::Three => rat(k * (-3 + 4 * k - 3 * k2 + 2 * k3), 12),
        },
        TrigFamilyId::INV_COS4 => rat(k2 * (k2 + 2), 3),
        TrigFamilyId::SIN2_OVER_COS4 => match branch.expect("branch") {
            Mod4Branch::One => rat(2 * k4 - 3 * k3 + 4 * k2 - 3 * k, 12),
            Mod4Branch::Three => rat(2 * k4 + 3 * k3 + 4 * k2 + 3 * k, 12),
        },
        TrigFamilyId::SIN2_OVER_SIN4 => rat(k4 + 6 * k2 - 7, 48),
        TrigFamilyId::INV_SIN4 | TrigFamilyId::INV_SIN4_DOUBLE => rat(k4 + 10 * k2 - 11, 45),
        TrigFamilyId::COS2_OVER_SIN4 => rat(k4 + 70 * k2 - 71, 720),
        TrigFamilyId::INV_SIN2 => rat(k2 - 1, 3),
        TrigFamilyId::INV_COS2 => rat(k2, 1),
        TrigFamilyId::TAN2_SEC2 => rat(k2 * (k2 - 1), 3),
        TrigFamilyId::COS2N_SEC4 => rat(-k2 * (k2 - 4), 3),
        TrigFamilyId::S3_COT2_CSC2 => rat(-(k2 - 1) * (k2 - 4), 120 * k3),
        TrigFamilyId::S3_COT_COT2_CSC2 => rat(-(k2 - 1) * (k2 - 19), 240 * k3),
    }
}

fn has_branches(id: TrigFamilyId) -> bool {
    matches!(
        id,
        TrigFamilyId::COS2_OVER_COS4 | TrigFamilyId::SIN2_OVER_COS4
    )
}

/// Exact closed form; the mod-4 branch is selected from `k` where applicable.
pub fn trig_sum_closed(family: &TrigFamily) -> Result<ClosedForm> {
    let branch = if has_branches(family.id) {
        Mod4Branch::of(family.k)
    } else {
        None
    };
    trig_sum_closed_at(family, branch)
}

/// Closed form evaluated on an explicitly chosen branch (used by negative controls).
pub fn trig_sum_closed_with_branch(family: &TrigFamily, branch: Mod4Branch) -> Result<ClosedForm> {
    if !has_branches(family.id) {
        return Err(Error::Unsupported(format!(
            "{} has a single closed form",
            family.id
        )));
    }
    trig_sum_closed_at(family, Some(branch))
}

fn trig_sum_closed_at(family: &TrigFamily, branch: Option<Mod4Branch>) -> Result<ClosedForm> {
    if !family.id.admissible(family.k) {
        return Err(Error::Hypothesis(format!("{} requires odd k", family.id)));
    }
    let full = stated_closed(family.id, family.k, branch);
    let value = match family.range {
        TrigRange::Stated => full,
        TrigRange::Half => {
            let mut boundary = Rational::new();
            if family.id.includes_k() {
                boundary += family.id.endpoint_term();
            }
            if family.k % 2 == 0 {
                boundary += family.id.center_term();
            }
            (full - boundary) / 2
        }
    };
    Ok(ClosedForm { value, branch })
}

/// Brute force against closed form.
pub fn trig_sum_check(ctx: &PrecisionContext, family: &TrigFamily) -> Result<CheckReport> {
    let closed = trig_sum_closed(family)?;
    let brute = trig_sum_bruteforce(ctx, family)?;
    Ok(CheckReport::compare(
        ctx,
        format!("trig.{}", family.id),
        family.params(),
        Value::Approx(brute),
        Value::Exact(closed.value),
    ))
}

/// Full-range sum against twice the half-range sum plus the unpaired terms.
pub fn half_range_relation_check(
    ctx: &PrecisionContext,
    id: TrigFamilyId,
    k: i64,
) -> Result<CheckReport> {
    let full = trig_sum_bruteforce(ctx, &TrigFamily::stated(id, k)?)?;
    let half = trig_sum_bruteforce(ctx, &TrigFamily::half(id, k)?)?;
    let mut boundary = Rational::new();
    if id.includes_k() {
        boundary += id.endpoint_term();
    }
    if k % 2 == 0 {
        boundary += id.center_term();
    }
    let rhs = half.scale_int(2) + HighComplex::from_rational(ctx.work_bits(), &boundary);
    Ok(CheckReport::compare(
        ctx,
        format!("trig.half_range.{id}"),
        Params::new().int("k", k),
        Value::Approx(full),
        Value::Approx(rhs),
    ))
}

/// `T(n) = n(n+1)/2`.
pub fn triangular(n: i64) -> i64 {
    n * (n + 1) / 2
}

/// `sum_{n=1}^{m} sin^2(pi n/k)/sin^4(2 pi n/k) = (4/3) T(T(m))` with `k = 2m + 1`.
///
/// The left side is summed directly; the verdict additionally requires the exact
/// half-range closed form to equal the right side.
pub fn triangular_identity_check(ctx: &PrecisionContext, m: i64) -> Result<CheckReport> {
    if m < 1 {
        return Err(Error::Hypothesis(format!("m = {m} must be >= 1")));
    }
    let k = 2 * m + 1;
    let family = TrigFamily::half(TrigFamilyId::SIN2_OVER_SIN4, k)?;
    let lhs = trig_sum_bruteforce(ctx, &family)?;
    let tt = triangular(triangular(m));
    let rhs = rat(4 * tt, 3);
    let exact = trig_sum_closed(&family)?.value;
    let exact_ok = exact == rhs;
    let mut report = CheckReport::compare(
        ctx,
        "trig.triangular",
        Params::new().int("m", m),
        Value::Approx(lhs),
        Value::Exact(rhs),
    );
    report.pass &= exact_ok;
    Ok(report.with_note(format!(
        "exact half-range value equals (4/3)T(T(m)): {exact_ok}"
    )))
}

/// Both sides of the exact cross-identities between families at odd `k`.
pub fn corollary_sides(k: i64) -> Result<Vec<(&'static str, Rational, Rational)>> {
    if k < 1 || k % 2 == 0 {
        return Err(Error::Hypothesis(format!("k = {k} must be odd")));
    }
    let c = |id| trig_sum_closed(&TrigFamily::stated(id, k)?).map(|v| v.value);
    use TrigFamilyId::*;
    Ok(vec![
        (
            "sin2_over_cos4 = inv_cos4 - cos2_over_cos4",
            c(SIN2_OVER_COS4)?,
            c(INV_COS4)? - c(COS2_OVER_COS4)?,
        ),
        (
            "tan2_sec2 = inv_cos4 - inv_cos2",
            c(TAN2_SEC2)?,
            c(INV_COS4)? - c(INV_COS2)?,
        ),
        (
            "cos2n_sec4 = 2 inv_cos2 - inv_cos4",
            c(COS2N_SEC4)?,
            (2 * c(INV_COS2)?) - c(INV_COS4)?,
        ),
        (
            "inv_sin4_double = inv_sin4",
            c(INV_SIN4_DOUBLE)?,
            c(INV_SIN4)?,
        ),
        (
            "cos2_over_sin4 = inv_sin4_double - sin2_over_sin4",
            c(COS2_OVER_SIN4)?,
            c(INV_SIN4_DOUBLE)? - c(SIN2_OVER_SIN4)?,
        ),
    ])
}

/// Exact cross-identities between families at odd `k`, as verdicts.
pub fn corollary_identities(k: i64) -> Result<Vec<(&'static str, bool)>> {
    Ok(corollary_sides(k)?
        .into_iter()
        .map(|(n, l, r)| (n, l == r))
        .collect())
}

/// Exact cross-identities as zero-tolerance reports.
pub fn corollary_checks(ctx: &PrecisionContext, k: i64) -> Result<Vec<CheckReport>> {
    Ok(corollary_sides(k)?
        .into_iter()
        .map(|(name, l, r)| {
            CheckReport::compare(
                ctx,
                "trig.corollary",
                Params::new().int("k", k).text("relation", name),
                Value::Exact(l),
                Value::Exact(r),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::make_context;

    fn ctx() -> PrecisionContext {
        make_context(256).unwrap()
    }

    fn closed(id: TrigFamilyId, k: i64) -> Rational {
        trig_sum_closed(&TrigFamily::stated(id, k).unwrap())
            .unwrap()
            .value
    }

    #[test]
    fn brute_examples() {
        let c = ctx();
        let v = |id, k| trig_sum_bruteforce(&c, &TrigFamily::stated(id, k).unwrap()).unwrap();
        let near = |z: HighComplex, r: i64| (z - HighComplex::from_int(288, r)).abs() < 1e-60;
        assert!(near(v(TrigFamilyId::COS2_OVER_COS4, 3), 9));
        assert!(near(v(TrigFamilyId::INV_COS4, 3), 33));
        assert!(near(v(TrigFamilyId::INV_SIN2, 4), 5));
    }

    #[test]
    fn closed_examples() {
        assert_eq!(closed(TrigFamilyId::COS2_OVER_COS4, 5), 145);
        assert_eq!(closed(TrigFamilyId::COS2_OVER_COS4, 7), 329);
        assert_eq!(closed(TrigFamilyId::S3_COT2_CSC2, 3), rat(-1, 81));
        assert_eq!(closed(TrigFamilyId::S3_COT_COT2_CSC2, 3), rat(1, 81));
        assert!(matches!(
            TrigFamily::stated(TrigFamilyId::INV_COS4, 4),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn half_range_values() {
        let h = |id, k| {
            trig_sum_closed(&TrigFamily::half(id, k).unwrap())
                .unwrap()
                .value
        };
        assert_eq!(h(TrigFamilyId::COS2_OVER_COS4, 5), rat(4 * 18, 1));
        assert_eq!(h(TrigFamilyId::COS2_OVER_COS4, 7), rat(4 * 41, 1));
        assert_eq!(h(TrigFamilyId::SIN2_OVER_SIN4, 7), 28);
        let c = ctx();
        assert!(
            half_range_relation_check(&c, TrigFamilyId::COS2_OVER_COS4, 5)
                .unwrap()
                .pass
        );
        assert!(
            half_range_relation_check(&c, TrigFamilyId::SIN2_OVER_SIN4, 7)
                .unwrap()
                .pass
        );
        assert!(
            half_range_relation_check(&c, TrigFamilyId::INV_SIN2, 2)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn triangular_examples() {
        let c = ctx();
        for (m, v) in [(1, rat(4, 3)), (3, rat(28, 1)), (4, rat(220, 3))] {
            let r = triangular_identity_check(&c, m).unwrap();
            assert!(r.pass);
            assert_eq!(r.rhs, Value::Exact(v));
        }
    }

    #[test]
    fn all_families_small_k() {
        let c = ctx();
        for k in 1..=15 {
            for id in TrigFamilyId::ALL {
                if let Ok(f) = TrigFamily::stated(id, k) {
                    let r = trig_sum_check(&c, &f).unwrap();
                    assert!(r.pass, "{id} k={k}");
                }
            }
        }
    }

    #[test]
    fn wrong_branch_is_detected() {
        let c = ctx();
        let f = TrigFamily::stated(TrigFamilyId::COS2_OVER_COS4, 9).unwrap();
        let wrong = trig_sum_closed_with_branch(&f, Mod4Branch::Three).unwrap();
        let brute = trig_sum_bruteforce(&c, &f).unwrap();
        let r = CheckReport::compare(&c, "x", Params::new(), brute.into(), wrong.value.into());
        assert!(!r.pass);
    }

    #[test]
    fn corollaries_hold() {
        for k in (1..=31).step_by(2) {
            for (name, ok) in corollary_identities(k).unwrap() {
                assert!(ok, "{name} at k={k}");
            }
        }
    }
}
