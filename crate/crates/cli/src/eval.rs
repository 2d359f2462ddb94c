//! Single-identity evaluation for the `eval` subcommand.

use std::fmt::Write as _;

use clap::Args;
use cotsum::charsums::{
    a5_candidates_check, char_sum_check, characters_mod, legendre_character, CharFilter,
    CharSumSpec, DirichletCharacter,
};
use cotsum::numeric::float_string;
use cotsum::reciprocity::{
    dedekind_cot, dedekind_sum, four_sum_check, reciprocity_check_variant, s3, s3_cot,
    single_theorem_check, ReciprocityLaw, RhsVariant, SingleTheorem,
};
use cotsum::residues::{contour_check, KernelId, MeromorphicSpec};
use cotsum::rootsums::{
    mixed_identity_check, pole_sum_check, MixedIdentityId, Pole, PoleSpec, SumRange,
};
use cotsum::trigsums::{
    half_range_relation_check, triangular_identity_check, trig_sum_check, TrigFamily, TrigFamilyId,
};
use cotsum::twoperiod::{
    two_period_check, two_period_special_check, TwoPeriodKernel, TwoPeriodSpec,
};
use cotsum::{CheckReport, Params, PrecisionContext, Value};

use crate::CliError;

/// Identity tag and its parameters.
#[derive(Args, Clone, Debug, Default)]
pub struct EvalArgs {
    /// Identity tag, e.g. `trig.cos2_over_cos4`, `dedekind.s`, `reciprocity.t_law`.
    pub tag: String,
    #[arg(long)]
    pub k: Option<i64>,
    #[arg(long)]
    pub p: Option<i64>,
    #[arg(long)]
    pub q: Option<i64>,
    #[arg(long)]
    pub r: Option<i64>,
    #[arg(long)]
    pub s: Option<i64>,
    #[arg(long)]
    pub m: Option<i64>,
    /// Integer or comma-separated list, depending on the identity.
    #[arg(long)]
    pub a: Option<String>,
    /// Comma-separated pair `b1,b2` for two-character sums.
    #[arg(long)]
    pub b: Option<String>,
    /// Pole of a root-of-unity sum: `+1`, `-1`, `+i`, `-i`.
    #[arg(long)]
    pub pole: Option<String>,
    /// `stated` or `half` for trigonometric families; `full` or `omit_pole` for pole sums.
    #[arg(long)]
    pub range: Option<String>,
    /// Character label as printed in reports; defaults to the Legendre symbol.
    #[arg(long)]
    pub chi: Option<String>,
}

fn need(v: Option<i64>, name: &str) -> Result<i64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing --{name}")))
}

fn int_list(v: &Option<String>, name: &str) -> Result<Vec<i64>, CliError> {
    let s = v
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("missing --{name}")))?;
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("--{name}: {t:?} is not an integer")))
        })
        .collect()
}

fn single_int(v: &Option<String>, name: &str) -> Result<i64, CliError> {
    match int_list(v, name)?.as_slice() {
        [x] => Ok(*x),
        _ => Err(CliError::Usage(format!("--{name} takes one integer"))),
    }
}

fn pair(v: &Option<String>, name: &str) -> Result<(i64, i64), CliError> {
    match int_list(v, name)?.as_slice() {
        [x, y] => Ok((*x, *y)),
        _ => Err(CliError::Usage(format!(
            "--{name} takes two integers `x,y`"
        ))),
    }
}

fn character(p: i64, label: &Option<String>) -> Result<DirichletCharacter, CliError> {
    match label {
        None => Ok(legendre_character(p)?),
        Some(l) => characters_mod(p, CharFilter::ALL)?
            .into_iter()
            .find(|c| c.label() == l)
            .ok_or_else(|| CliError::Usage(format!("no character {l:?} modulo {p}"))),
    }
}

fn unknown(tag: &str) -> CliError {
    CliError::Usage(format!("unknown identity tag {tag:?}"))
}

/// Evaluates one identity and returns its report.
pub fn evaluate(ctx: &PrecisionContext, args: &EvalArgs) -> Result<CheckReport, CliError> {
    let tag = args.tag.as_str();
    let (head, rest) = tag.split_once('.').unwrap_or((tag, ""));
    let report = match head {
        "trig" => match rest {
            "triangular" => triangular_identity_check(ctx, need(args.m, "m")?)?,
            _ if rest.starts_with("half_range.") => {
                let id = TrigFamilyId::from_tag(&rest["half_range.".len()..])
                    .ok_or_else(|| unknown(tag))?;
                half_range_relation_check(ctx, id, need(args.k, "k")?)?
            }
            _ => {
                let id = TrigFamilyId::from_tag(rest).ok_or_else(|| unknown(tag))?;
                let k = need(args.k, "k")?;
                let family = match args.range.as_deref() {
                    None | Some("stated") => TrigFamily::stated(id, k)?,
                    Some("half") => TrigFamily::half(id, k)?,
                    Some(other) => return Err(CliError::Usage(format!("--range {other:?}"))),
                };
                trig_sum_check(ctx, &family)?
            }
        },
        "rootsum" => match rest {
            "pole" => {
                let pole: Pole = args
                    .pole
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("missing --pole".into()))?
                    .parse()?;
                let range = match args.range.as_deref() {
                    Some(r) => r.parse::<SumRange>()?,
                    None if matches!(pole, Pole::PlusI | Pole::MinusI) => SumRange::Full,
                    None => SumRange::OmitPole,
                };
                let m = args.m.unwrap_or(1);
                let a = match &args.a {
                    Some(_) => single_int(&args.a, "a")?,
                    None => 0,
                };
                let to_u32 = |v: i64, n: &str| {
                    u32::try_from(v).map_err(|_| CliError::Usage(format!("--{n} must be >= 0")))
                };
                let spec = PoleSpec::new(
                    need(args.k, "k")?,
                    pole,
                    to_u32(m, "m")?,
                    to_u32(a, "a")?,
                    range,
                )?;
                pole_sum_check(ctx, &spec)?
            }
            _ => {
                let id = rest
                    .strip_prefix("mixed.")
                    .and_then(MixedIdentityId::from_tag)
                    .ok_or_else(|| unknown(tag))?;
                mixed_identity_check(ctx, need(args.p, "p")?, need(args.q, "q")?, id)?
            }
        },
        "twoperiod" => {
            let (kernel, special) = match rest.split_once('.') {
                Some((k, "special")) => (k, true),
                None => (rest, false),
                _ => return Err(unknown(tag)),
            };
            let kernel = TwoPeriodKernel::from_tag(kernel).ok_or_else(|| unknown(tag))?;
            let spec = TwoPeriodSpec::new(need(args.p, "p")?, need(args.q, "q")?, kernel)?;
            if special {
                two_period_special_check(ctx, &spec)?
            } else {
                two_period_check(ctx, &spec)?
            }
        }
        "dedekind" => {
            let (p, q) = (need(args.p, "p")?, need(args.q, "q")?);
            let (exact, oracle) = match rest {
                "s" => (dedekind_sum(p, q)?, dedekind_cot(ctx, p, q)?),
                "s3" => (s3(p, q)?, s3_cot(ctx, p, q)?),
                _ => return Err(unknown(tag)),
            };
            CheckReport::compare(
                ctx,
                tag,
                Params::new().int("p", p).int("q", q),
                Value::Approx(oracle),
                Value::Exact(exact),
            )
        }
        "reciprocity" => {
            let (name, variant) = match rest.strip_suffix(".amended") {
                Some(n) => (n, RhsVariant::Amended),
                None => (rest, RhsVariant::Stated),
            };
            if name == "four_sum" {
                let m = [
                    need(args.p, "p")?,
                    need(args.q, "q")?,
                    need(args.r, "r")?,
                    need(args.s, "s")?,
                ];
                four_sum_check(ctx, m, variant)?
            } else if let Some(t) = name.strip_prefix("theorem.") {
                let theorem = SingleTheorem::from_tag(t).ok_or_else(|| unknown(tag))?;
                single_theorem_check(ctx, need(args.p, "p")?, need(args.q, "q")?, theorem)?
            } else {
                let law = ReciprocityLaw::from_tag(name).ok_or_else(|| unknown(tag))?;
                reciprocity_check_variant(
                    ctx,
                    need(args.p, "p")?,
                    need(args.q, "q")?,
                    law,
                    variant,
                )?
            }
        }
        "residues" => {
            let id = KernelId::from_tag(rest).ok_or_else(|| unknown(tag))?;
            let a = match &args.a {
                Some(_) => single_int(&args.a, "a")?,
                None => 1,
            };
            let a = u32::try_from(a).map_err(|_| CliError::Usage("--a must be >= 1".into()))?;
            contour_check(ctx, &MeromorphicSpec::new(id, need(args.k, "k")?, a)?)?
        }
        "charsum" => match rest {
            "sin_ratio" | "cos_ratio" => {
                let p = need(args.p, "p")?;
                let chi = character(p, &args.chi)?;
                let a = single_int(&args.a, "a")?;
                let spec = if rest == "sin_ratio" {
                    CharSumSpec::sin_ratio(chi, a)?
                } else {
                    CharSumSpec::cos_ratio(chi, a)?
                };
                char_sum_check(ctx, &spec)?
            }
            "multi_sin" => {
                let p = need(args.p, "p")?;
                let spec =
                    CharSumSpec::multi_sin(character(p, &args.chi)?, int_list(&args.a, "a")?)?;
                char_sum_check(ctx, &spec)?
            }
            "two_char" => {
                let (p, q) = (need(args.p, "p")?, need(args.q, "q")?);
                let spec = CharSumSpec::two_char(
                    legendre_character(p)?,
                    legendre_character(q)?,
                    pair(&args.a, "a")?,
                    pair(&args.b, "b")?,
                )?;
                char_sum_check(ctx, &spec)?
            }
            "a5_candidates.sin" => a5_candidates_check(ctx, need(args.p, "p")?, false)?,
            "a5_candidates.cos" => a5_candidates_check(ctx, need(args.p, "p")?, true)?,
            _ => return Err(unknown(tag)),
        },
        _ => return Err(unknown(tag)),
    };
    Ok(report)
}

/// Human-readable rendering of an evaluated identity.
pub fn render(report: &CheckReport, bits: u32) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} ({})", report.identity, report.params);
    let _ = writeln!(out, "oracle:    {}", report.lhs.decimal_string(bits));
    if let Some(e) = report.lhs.exact_string() {
        let _ = writeln!(out, "           = {e}");
    }
    let _ = writeln!(out, "closed:    {}", report.rhs.decimal_string(bits));
    if let Some(e) = report.rhs.exact_string() {
        let _ = writeln!(out, "           = {e}");
    }
    let _ = writeln!(out, "diff:      {}", float_string(&report.abs_diff, 64));
    let _ = writeln!(out, "tolerance: {}", float_string(&report.tolerance, 64));
    for n in &report.notes {
        let _ = writeln!(out, "note:      {n}");
    }
    let _ = writeln!(out, "{}", if report.pass { "pass" } else { "FAIL" });
    out
}
