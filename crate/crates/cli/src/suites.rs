//! Named verification suites over parameter grids.

use std::fmt;
use std::str::FromStr;

use cotsum::charsums::{
    a5_candidates_check, char_sum_bruteforce, char_sum_check, characters_mod, class_number,
    factorization_check, gauss_sum_one, legendre_character, CharFilter, CharSumSpec,
};
use cotsum::numeric::{gcd, rat};
use cotsum::reciprocity::{
    dedekind_cot, dedekind_sum, four_sum_check, reciprocity_check, reciprocity_check_perturbed,
    reciprocity_check_variant, reciprocity_lhs, reciprocity_rhs, s3, s3_cot, single_theorem_check,
    t_law_residual_route_check, ReciprocityLaw, RhsVariant, SingleTheorem,
};
use cotsum::residues::{
    half_range_sum, residue_at, residue_closed, residue_symmetry_check, contour_check, KernelId,
    MeromorphicSpec, PoleClass,
};
use cotsum::rootsums::{
    decomposition_points, mixed_identity_check, partial_fraction_check, pole_sum_check, DecompId,
    MixedIdentityId, PoleSpec,
};
use cotsum::trigsums::{
    corollary_checks, half_range_relation_check, triangular_identity_check, trig_sum_bruteforce,
    trig_sum_check, trig_sum_closed, trig_sum_closed_with_branch, TrigFamily, TrigFamilyId,
};
use cotsum::twoperiod::{
    two_period_bruteforce, two_period_check, two_period_closed_special, two_period_special_check,
    TwoPeriodKernel, TwoPeriodSpec,
};
use cotsum::{CheckReport, Error, Float, HighComplex, Params, PrecisionContext, Rational, Value};

use crate::report::Expectation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Rootsums,
    Trig,
    TwoPeriod,
    Reciprocity,
    Residues,
    Characters,
    ClassNumbers,
    NegativeControls,
    All,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Rootsums,
        Suite::Trig,
        Suite::TwoPeriod,
        Suite::Reciprocity,
        Suite::Residues,
        Suite::Characters,
        Suite::ClassNumbers,
        Suite::NegativeControls,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rootsums => "rootsums",
            Suite::Trig => "trig",
            Suite::TwoPeriod => "twoperiod",
            Suite::Reciprocity => "reciprocity",
            Suite::Residues => "residues",
            Suite::Characters => "characters",
            Suite::ClassNumbers => "class-numbers",
            Suite::NegativeControls => "negative-controls",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite {s:?}; expected one of {}", names.join(", "))
            })
    }
}

/// Grid bounds and run settings for one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Upper bound on single moduli; each suite has its own default.
    pub max_k: Option<i64>,
    /// Upper bound on paired moduli; each suite has its own default.
    pub max: Option<i64>,
    /// Seed for random evaluation points.
    pub seed: u64,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            max_k: None,
            max: None,
            seed: DEFAULT_SEED,
            jobs: 0,
        }
    }
}

pub const DEFAULT_SEED: u64 = 0x5eed_c075;

/// Moduli at which the class-number table is checked.
pub const CLASS_NUMBERS: [(i64, u64); 10] = [
    (7, 1),
    (11, 1),
    (19, 1),
    (23, 3),
    (31, 3),
    (43, 1),
    (47, 5),
    (59, 3),
    (67, 1),
    (71, 7),
];

pub const FOUR_SUM_MODULI: [[i64; 4]; 4] =
    [[3, 5, 7, 11], [3, 5, 7, 13], [5, 7, 9, 11], [1, 3, 5, 7]];

type Runner = Box<dyn Fn(&PrecisionContext) -> cotsum::Result<Vec<CheckReport>> + Send + Sync>;

/// One unit of work; may produce several reports.
pub struct Task {
    pub identity: String,
    pub params: Params,
    pub expectation: Expectation,
    run: Runner,
}

impl Task {
    pub fn run(&self, ctx: &PrecisionContext) -> cotsum::Result<Vec<CheckReport>> {
        (self.run)(ctx)
    }
}

fn one<F>(identity: impl Into<String>, params: Params, f: F) -> Task
where
    F: Fn(&PrecisionContext) -> cotsum::Result<CheckReport> + Send + Sync + 'static,
{
    Task {
        identity: identity.into(),
        params,
        expectation: Expectation::Holds,
        run: Box::new(move |c| f(c).map(|r| vec![r])),
    }
}

fn many<F>(identity: impl Into<String>, params: Params, f: F) -> Task
where
    F: Fn(&PrecisionContext) -> cotsum::Result<Vec<CheckReport>> + Send + Sync + 'static,
{
    Task {
        identity: identity.into(),
        params,
        expectation: Expectation::Holds,
        run: Box::new(f),
    }
}

fn expecting(mut t: Task, e: Expectation) -> Task {
    t.expectation = e;
    t
}

fn pq(p: i64, q: i64) -> Params {
    Params::new().int("p", p).int("q", q)
}

fn coprime_pairs(lo: i64, hi: i64, ordered: bool) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for p in lo..=hi {
        for q in lo..=hi {
            if p != q && gcd(p, q) == 1 && (ordered || p < q) {
                out.push((p, q));
            }
        }
    }
    out
}

pub fn odd_primes_up_to(n: i64) -> Vec<i64> {
    (3..=n)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

/// Every task in the suite, in a fixed order.
pub fn build(cfg: &SuiteConfig) -> Vec<Task> {
    match cfg.suite {
        Suite::Rootsums => rootsums(cfg),
        Suite::Trig => trig(cfg),
        Suite::TwoPeriod => twoperiod(cfg),
        Suite::Reciprocity => reciprocity(cfg),
        Suite::Residues => residues(cfg),
        Suite::Characters => characters(cfg),
        Suite::ClassNumbers => class_numbers(),
        Suite::NegativeControls => negative_controls(cfg),
        Suite::All => Suite::ALL
            .into_iter()
            .filter(|s| *s != Suite::All)
            .flat_map(|s| {
                build(&SuiteConfig {
                    suite: s,
                    ..cfg.clone()
                })
            })
            .collect(),
    }
}

fn rootsums(cfg: &SuiteConfig) -> Vec<Task> {
    let mut tasks = Vec::new();
    for k in 1..=cfg.max_k.unwrap_or(101) {
        for spec in PoleSpec::tabulated(k) {
            tasks.push(one("rootsum.pole", spec.params(), move |c| {
                pole_sum_check(c, &spec)
            }));
        }
    }
    let max = cfg.max.unwrap_or(13);
    for id in MixedIdentityId::ALL {
        for (p, q) in coprime_pairs(2, max, true) {
            tasks.push(one(
                format!("rootsum.mixed.{}", id.tag()),
                pq(p, q),
                move |c| mixed_identity_check(c, p, q, id),
            ));
        }
    }
    let mut grid: Vec<(DecompId, Params, Vec<i64>)> = Vec::new();
    for k in 1..=10 {
        for m in 1..=4 {
            grid.push((
                DecompId::F_LOG,
                Params::new().int("k", k).int("m", m),
                vec![k, m],
            ));
        }
    }
    for id in [
        DecompId::XP1,
        DecompId::ONE_XZ,
        DecompId::ONE_XZ2,
        DecompId::XK2,
        DecompId::PXK2,
    ] {
        for k in 1..=13 {
            grid.push((id, Params::new().int("k", k), vec![k]));
        }
    }
    for (p, q) in coprime_pairs(2, 9, true) {
        grid.push((DecompId::R, pq(p, q), vec![p, q]));
        grid.push((DecompId::R2, pq(p, q), vec![p, q]));
    }
    for (i, (id, params, args)) in grid.into_iter().enumerate() {
        let seed = cfg
            .seed
            .wrapping_add((i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        tasks.push(many(
            format!("rootsum.decomp.{}", id.tag()),
            params,
            move |c| {
                decomposition_points(c.work_bits(), id, &args, seed, 3)?
                    .iter()
                    .map(|x| partial_fraction_check(c, id, &args, x))
                    .collect()
            },
        ));
    }
    tasks
}

/// `sum_{0<n<k/2} term`, scaled, against a literal value; the exact half-range
/// closed form must give the same literal.
fn literal_half(
    c: &PrecisionContext,
    id: TrigFamilyId,
    k: i64,
    scale: Rational,
    expected: i64,
    summand: &str,
) -> cotsum::Result<CheckReport> {
    let family = TrigFamily::half(id, k)?;
    let direct = trig_sum_bruteforce(c, &family)?.scale_rational(&scale);
    let closed = trig_sum_closed(&family)?.value * &scale;
    let closed_ok = closed == expected;
    let mut r = CheckReport::compare(
        c,
        "trig.literal",
        Params::new().text("family", id.tag()).int("k", k),
        Value::Approx(direct),
        Value::Exact(rat(expected, 1)),
    );
    r.pass &= closed_ok;
    Ok(
        r.with_note(format!("direct sum of {summand} over 0 < n < k/2"))
            .with_note(format!(
                "exact half-range closed form gives {closed}: {closed_ok}"
            )),
    )
}

fn trig(cfg: &SuiteConfig) -> Vec<Task> {
    let max_k = cfg.max_k.unwrap_or(101);
    let mut tasks = Vec::new();
    for id in TrigFamilyId::ALL {
        for k in 1..=max_k {
            let identity = format!("trig.{}", id.tag());
            let params = Params::new().int("k", k).text("range", "stated");
            tasks.push(one(identity.clone(), params, move |c| {
                trig_sum_check(c, &TrigFamily::stated(id, k)?)
            }));
            let params = Params::new().int("k", k).text("range", "half");
            tasks.push(one(identity, params, move |c| {
                trig_sum_check(c, &TrigFamily::half(id, k)?)
            }));
            tasks.push(one(
                format!("trig.half_range.{}", id.tag()),
                Params::new().int("k", k),
                move |c| half_range_relation_check(c, id, k),
            ));
        }
    }
    for m in 1..=50 {
        tasks.push(one(
            "trig.triangular",
            Params::new().int("m", m),
            move |c| triangular_identity_check(c, m),
        ));
    }
    for k in (1..=max_k).step_by(2) {
        tasks.push(many(
            "trig.corollary",
            Params::new().int("k", k),
            move |c| corollary_checks(c, k),
        ));
    }
    let cos = "(cos(pi n/k) / (2 cos^2(2 pi n/k)))^2";
    let sin = "sin^2(pi n/k) / sin^4(2 pi n/k)";
    for (id, k, scale, expected, summand) in [
        (TrigFamilyId::COS2_OVER_COS4, 5, rat(1, 4), 18, cos),
        (TrigFamilyId::COS2_OVER_COS4, 7, rat(1, 4), 41, cos),
        (TrigFamilyId::SIN2_OVER_SIN4, 7, rat(1, 1), 28, sin),
    ] {
        let params = Params::new().text("family", id.tag()).int("k", k);
        tasks.push(one("trig.literal", params, move |c| {
            literal_half(c, id, k, scale.clone(), expected, summand)
        }));
    }
    tasks
}

fn twoperiod(cfg: &SuiteConfig) -> Vec<Task> {
    let max = cfg.max.unwrap_or(25);
    let mut tasks = Vec::new();
    for (p, q) in coprime_pairs(2, max, true) {
        for kernel in [TwoPeriodKernel::Csc2, TwoPeriodKernel::Sec2] {
            tasks.push(one(
                format!("twoperiod.{}", kernel.tag()),
                pq(p, q),
                move |c| two_period_check(c, &TwoPeriodSpec::new(p, q, kernel)?),
            ));
            let r = q.rem_euclid(p);
            if r == 1 % p || r == p - 1 {
                tasks.push(one(
                    format!("twoperiod.{}.special", kernel.tag()),
                    pq(p, q),
                    move |c| two_period_special_check(c, &TwoPeriodSpec::new(p, q, kernel)?),
                ));
            }
        }
    }
    for (p, q, kernel, value) in [
        (2, 3, TwoPeriodKernel::Csc2, 0),
        (3, 4, TwoPeriodKernel::Csc2, 16),
        (3, 7, TwoPeriodKernel::Csc2, 96),
        (3, 5, TwoPeriodKernel::Sec2, 32),
    ] {
        let params = pq(p, q).text("kernel", kernel.tag());
        tasks.push(one("twoperiod.literal", params.clone(), move |c| {
            let spec = TwoPeriodSpec::new(p, q, kernel)?;
            let closed = two_period_closed_special(&spec)?;
            let closed_ok = closed == value;
            let mut r = CheckReport::compare(
                c,
                "twoperiod.literal",
                params.clone(),
                Value::Approx(two_period_bruteforce(c, &spec)?),
                Value::Exact(rat(value, 1)),
            );
            r.pass &= closed_ok;
            Ok(r.with_note(format!("special closed form gives {closed}: {closed_ok}")))
        }));
    }
    tasks
}

fn reciprocity(cfg: &SuiteConfig) -> Vec<Task> {
    let max = cfg.max.unwrap_or(31);
    let mut tasks = Vec::new();
    for law in ReciprocityLaw::ALL {
        let lo = if law == ReciprocityLaw::DEDEKIND_S {
            1
        } else {
            2
        };
        for (p, q) in coprime_pairs(lo, max, false) {
            tasks.push(one(
                format!("reciprocity.{}", law.tag()),
                pq(p, q),
                move |c| reciprocity_check(c, p, q, law),
            ));
        }
    }
    for (p, q) in coprime_pairs(2, max, false) {
        let law = ReciprocityLaw::CSC6_LAW;
        tasks.push(one(
            format!("reciprocity.{}.amended", law.tag()),
            pq(p, q),
            move |c| reciprocity_check_variant(c, p, q, law, RhsVariant::Amended),
        ));
        tasks.push(one(
            "reciprocity.t_law.residual_route",
            pq(p, q),
            move |c| t_law_residual_route_check(c, p, q),
        ));
    }
    for (p, q) in coprime_pairs(1, max, false) {
        tasks.push(one("reciprocity.dedekind.paths", pq(p, q), move |c| {
            let exact = dedekind_sum(p, q)?;
            Ok(CheckReport::compare(
                c,
                "reciprocity.dedekind.paths",
                pq(p, q),
                Value::Approx(dedekind_cot(c, p, q)?),
                Value::Exact(exact),
            ))
        }));
        tasks.push(one("reciprocity.s3.paths", pq(p, q), move |c| {
            let exact = s3(p, q)?;
            Ok(CheckReport::compare(
                c,
                "reciprocity.s3.paths",
                pq(p, q),
                Value::Approx(s3_cot(c, p, q)?),
                Value::Exact(exact),
            ))
        }));
    }
    for theorem in SingleTheorem::ALL {
        for (p, q) in coprime_pairs(1, max, true) {
            if q < 2 {
                continue;
            }
            tasks.push(one(
                format!("reciprocity.theorem.{}", theorem.tag()),
                pq(p, q),
                move |c| single_theorem_check(c, p, q, theorem),
            ));
        }
    }
    // The T law is conventionally quoted with both sides multiplied by 45.
    for (law, p, q, scale, value) in [
        (ReciprocityLaw::DEDEKIND_S, 1, 3, rat(1, 1), rat(1, 18)),
        (ReciprocityLaw::T_LAW, 2, 3, rat(45, 1), rat(-80, 1)),
    ] {
        let params = pq(p, q).text("law", law.tag());
        tasks.push(one("reciprocity.literal", params.clone(), move |c| {
            law.check_hypotheses(p, q)?;
            let rhs = reciprocity_rhs(law, p, q, RhsVariant::Stated) * &scale;
            let rhs_ok = rhs == value;
            let lhs = match reciprocity_lhs(c, law, p, q)? {
                Value::Exact(r) => Value::Exact(r * &scale),
                Value::Gaussian(g) => Value::Gaussian(g.scale(&scale)),
                Value::Approx(z) => Value::Approx(z.scale_rational(&scale)),
            };
            let mut r = CheckReport::compare(
                c,
                "reciprocity.literal",
                params.clone().text("scale", scale.to_string()),
                lhs,
                Value::Exact(value.clone()),
            );
            r.pass &= rhs_ok;
            Ok(r.with_note(format!(
                "scaled polynomial right side gives {rhs}: {rhs_ok}"
            )))
        }));
    }
    for m in FOUR_SUM_MODULI {
        let params = Params::new()
            .int("p", m[0])
            .int("q", m[1])
            .int("r", m[2])
            .int("s", m[3]);
        tasks.push(one("reciprocity.four_sum", params.clone(), move |c| {
            four_sum_check(c, m, RhsVariant::Stated)
        }));
        tasks.push(one("reciprocity.four_sum.amended", params, move |c| {
            four_sum_check(c, m, RhsVariant::Amended)
        }));
    }
    tasks
}

fn residues(cfg: &SuiteConfig) -> Vec<Task> {
    let max_k = cfg.max_k.unwrap_or(41);
    let mut tasks = Vec::new();
    for k in (5..=max_k).filter(|k| k % 2 == 1) {
        for id in [KernelId::F_COS, KernelId::G_SIN] {
            for a in 1..=3u32 {
                let params = Params::new().int("k", k).int("a", i64::from(a));
                tasks.push(one(format!("residues.{}", id.tag()), params, move |c| {
                    contour_check(c, &MeromorphicSpec::new(id, k, a)?)
                }));
            }
            let params = Params::new().int("k", k).int("a", 1).int("n", 1);
            tasks.push(one(
                format!("residues.{}.symmetry", id.tag()),
                params,
                move |c| residue_symmetry_check(c, &MeromorphicSpec::new(id, k, 1)?, 1),
            ));
        }
        for class in [
            PoleClass::K4,
            PoleClass::K34,
            PoleClass::Zero,
            PoleClass::KHalf,
        ] {
            let params = Params::new()
                .int("k", k)
                .text("class", format!("{class:?}"));
            tasks.push(one("residues.closed", params.clone(), move |c| {
                let spec = MeromorphicSpec::new(class.kernel(), k, 1)?;
                let numeric = residue_at(c, &spec, &class.location(k))?;
                let closed = residue_closed(c, &spec, class)?;
                Ok(CheckReport::compare(
                    c,
                    "residues.closed",
                    params.clone(),
                    Value::Approx(numeric),
                    Value::Approx(closed),
                ))
            }));
        }
        tasks.push(one(
            "residues.g_sin.value",
            Params::new().int("k", k),
            move |c| {
                let spec = MeromorphicSpec::new(KernelId::G_SIN, k, 1)?;
                let k2 = k * k;
                Ok(CheckReport::compare(
                    c,
                    "residues.g_sin.value",
                    Params::new().int("k", k),
                    Value::Approx(half_range_sum(c, &spec)),
                    Value::Exact(rat(k2 * k2 + 6 * k2 - 7, 96)),
                ))
            },
        ));
    }
    tasks.push(one(
        "residues.literal",
        Params::new().int("k", 7).int("a", 1),
        move |c| {
            let r = contour_check(c, &MeromorphicSpec::new(KernelId::G_SIN, 7, 1)?)?;
            let mut out = CheckReport::compare(
                c,
                "residues.literal",
                Params::new().int("k", 7).int("a", 1),
                r.rhs.clone(),
                Value::Exact(rat(28, 1)),
            );
            out.pass &= r.pass;
            Ok(out.with_note("residue expression for the sine kernel against 28"))
        },
    ));
    tasks
}

fn characters(cfg: &SuiteConfig) -> Vec<Task> {
    let max = cfg.max.unwrap_or(31);
    let primes = odd_primes_up_to(max);
    let even = CharFilter::EVEN.and(CharFilter::NONPRINCIPAL);
    let mut tasks = Vec::new();
    for &p in &primes {
        let chars = characters_mod(p, even).expect("prime modulus");
        for chi in &chars {
            for a in (3..=(2 * p + 1).min(15)).step_by(2) {
                for cosine in [false, true] {
                    let spec = if cosine {
                        CharSumSpec::cos_ratio(chi.clone(), a)
                    } else {
                        CharSumSpec::sin_ratio(chi.clone(), a)
                    };
                    let identity = if cosine {
                        "charsum.cos_ratio"
                    } else {
                        "charsum.sin_ratio"
                    };
                    let params = Params::new()
                        .int("p", p)
                        .text("chi", chi.label())
                        .int("a", a);
                    tasks.push(one(identity, params, move |c| {
                        char_sum_check(c, &spec.clone()?)
                    }));
                }
            }
            let chi = chi.clone();
            let params = Params::new().int("p", p).text("chi", chi.label());
            let expectation = if chi.is_real() {
                Expectation::Holds
            } else {
                Expectation::Fails
            };
            tasks.push(expecting(
                one("charsum.gauss_sqrt_claim", params.clone(), move |c| {
                    let bits = c.work_bits();
                    let root = HighComplex::from_real(Float::with_val(bits, p).sqrt());
                    let r = CheckReport::compare(
                        c,
                        "charsum.gauss_sqrt_claim",
                        params.clone(),
                        Value::Approx(gauss_sum_one(c, &chi)),
                        Value::Approx(root),
                    );
                    let kind = if chi.is_real() { "real" } else { "complex" };
                    Ok(r.with_note(format!("{kind} character of order {}", chi.order())))
                }),
                expectation,
            ));
        }
        if p % 4 == 1 {
            for cosine in [false, true] {
                let kind = if cosine { "cos" } else { "sin" };
                let params = Params::new().int("p", p).text("kind", kind);
                tasks.push(one("charsum.example_sqrt", params.clone(), move |c| {
                    let chi = legendre_character(p)?;
                    let spec = if cosine {
                        CharSumSpec::cos_ratio(chi, 3)?
                    } else {
                        CharSumSpec::sin_ratio(chi, 3)?
                    };
                    let bits = c.work_bits();
                    Ok(CheckReport::compare(
                        c,
                        "charsum.example_sqrt",
                        params.clone(),
                        Value::Approx(char_sum_bruteforce(c, &spec)?),
                        Value::Approx(HighComplex::from_real(Float::with_val(bits, p).sqrt())),
                    ))
                }));
                tasks.push(one(
                    format!("charsum.a5_candidates.{kind}"),
                    Params::new().int("p", p),
                    move |c| a5_candidates_check(c, p, cosine),
                ));
            }
        }
    }
    for &p in primes.iter().filter(|&&p| p <= 13) {
        for chi in characters_mod(p, CharFilter::NONPRINCIPAL).expect("prime modulus") {
            for n in 0..p {
                let chi = chi.clone();
                let params = Params::new().text("chi", chi.label()).int("n", n);
                tasks.push(one("charsum.factorization", params, move |c| {
                    factorization_check(c, &chi, n)
                }));
            }
        }
    }
    for p in [13, 17] {
        for chi in characters_mod(p, even).expect("prime modulus") {
            for list in [vec![3, 3], vec![3, 5], vec![3, 5, 7]] {
                let chi = chi.clone();
                let text: Vec<String> = list.iter().map(i64::to_string).collect();
                let params = Params::new()
                    .int("p", p)
                    .text("chi", chi.label())
                    .text("a", text.join(","));
                tasks.push(one("charsum.multi_sin", params, move |c| {
                    char_sum_check(c, &CharSumSpec::multi_sin(chi.clone(), list.clone())?)
                }));
            }
        }
    }
    for (p, q) in [(5, 7), (3, 7), (5, 11)] {
        for b1 in [2, 4] {
            for b2 in [2, 4] {
                let params = pq(p, q)
                    .int("a1", 1)
                    .int("a2", 1)
                    .int("b1", b1)
                    .int("b2", b2);
                tasks.push(one("charsum.two_char", params, move |c| {
                    let spec = CharSumSpec::two_char(
                        legendre_character(p)?,
                        legendre_character(q)?,
                        (1, 1),
                        (b1, b2),
                    )?;
                    char_sum_check(c, &spec)
                }));
            }
        }
    }
    tasks
}

fn class_numbers() -> Vec<Task> {
    CLASS_NUMBERS
        .into_iter()
        .map(|(k, h)| {
            let params = Params::new().int("k", k);
            one("charsum.class_number", params.clone(), move |c| {
                let v = class_number(k)?;
                Ok(CheckReport::compare(
                    c,
                    "charsum.class_number",
                    params.clone(),
                    Value::Exact(rat(v as i64, 1)),
                    Value::Exact(rat(h as i64, 1)),
                ))
            })
        })
        .collect()
}

fn negative_controls(cfg: &SuiteConfig) -> Vec<Task> {
    let max_k = cfg.max_k.unwrap_or(101);
    let mut tasks = Vec::new();
    for (id, k) in [TrigFamilyId::COS2_OVER_COS4, TrigFamilyId::SIN2_OVER_COS4]
        .into_iter()
        .flat_map(|id| (5..=max_k).step_by(2).map(move |k| (id, k)))
    {
        let identity = format!("control.trig.{}.wrong_branch", id.tag());
        let params = Params::new().int("k", k);
        let task = one(identity.clone(), params.clone(), move |c| {
            let family = TrigFamily::stated(id, k)?;
            let right = trig_sum_closed(&family)?;
            let branch = right
                .branch
                .ok_or_else(|| Error::Unsupported("no branch".into()))?;
            let wrong = trig_sum_closed_with_branch(&family, branch.other())?;
            Ok(CheckReport::compare(
                c,
                identity.clone(),
                params.clone(),
                Value::Approx(trig_sum_bruteforce(c, &family)?),
                Value::Exact(wrong.value),
            ))
        });
        tasks.push(expecting(task, Expectation::Fails));
    }
    for law in ReciprocityLaw::ALL {
        let (p, q) = if law.check_hypotheses(2, 3).is_ok() {
            (2, 3)
        } else {
            (3, 5)
        };
        let identity = format!("control.reciprocity.{}.perturbed", law.tag());
        let params = pq(p, q);
        let task = one(identity.clone(), params.clone(), move |c| {
            let mut r = reciprocity_check_perturbed(c, p, q, law, &rat(1, 1))?;
            r.identity = identity.clone();
            Ok(r)
        });
        tasks.push(expecting(task, Expectation::Fails));
    }
    tasks
}
