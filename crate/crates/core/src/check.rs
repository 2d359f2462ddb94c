//! Comparison records shared by every module.

use std::fmt;

use rug::Float;

use crate::numeric::{rational_string, GaussianRational, HighComplex, PrecisionContext, Rational};

/// A parameter value attached to a check.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamValue {
    Int(i64),
    Text(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

/// Ordered parameter record, e.g. `k=5, pole=+i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Params(pub Vec<(String, ParamValue)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn int(mut self, name: &str, v: i64) -> Self {
        self.0.push((name.to_string(), ParamValue::Int(v)));
        self
    }

    pub fn text(mut self, name: &str, v: impl Into<String>) -> Self {
        self.0.push((name.to_string(), ParamValue::Text(v.into())));
        self
    }

    pub fn get(&self, name: &str) -> Option<&ParamValue> {
        self.0.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(", "))
    }
}

/// One side of an identity.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Gaussian(GaussianRational),
    Approx(HighComplex),
}

impl Value {
    pub fn to_complex(&self, bits: u32) -> HighComplex {
        match self {
            Value::Exact(r) => HighComplex::from_rational(bits, r),
            Value::Gaussian(g) => g.to_complex(bits),
            Value::Approx(z) => z.with_prec(bits.max(z.prec())),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Value::Approx(_))
    }

    /// `n/d` (or `a/b + c/di`) when the value is exact.
    pub fn exact_string(&self) -> Option<String> {
        match self {
            Value::Exact(r) => Some(rational_string(r)),
            Value::Gaussian(g) => Some(g.to_string()),
            Value::Approx(_) => None,
        }
    }

    pub fn decimal_string(&self, bits: u32) -> String {
        self.to_complex(bits + 8).to_decimal(bits)
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Exact(r)
    }
}

impl From<GaussianRational> for Value {
    fn from(g: GaussianRational) -> Self {
        Value::Gaussian(g)
    }
}

impl From<HighComplex> for Value {
    fn from(z: HighComplex) -> Self {
        Value::Approx(z)
    }
}

/// One identity instance: both sides, their distance, the tolerance and the verdict.
///
/// `pass` holds exactly when `abs_diff <= tolerance * max(1, |rhs|)`. When both
/// sides are exact the tolerance is zero and the comparison is structural.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub identity: String,
    pub params: Params,
    pub lhs: Value,
    pub rhs: Value,
    pub abs_diff: Float,
    pub tolerance: Float,
    pub pass: bool,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn compare(
        ctx: &PrecisionContext,
        identity: impl Into<String>,
        params: Params,
        lhs: Value,
        rhs: Value,
    ) -> Self {
        let bits = ctx.work_bits();
        if lhs.is_exact() && rhs.is_exact() {
            let l = exact_gaussian(&lhs);
            let r = exact_gaussian(&rhs);
            let equal = l == r;
            let d = (&l - &r).to_complex(bits).abs();
            return CheckReport {
                identity: identity.into(),
                params,
                lhs,
                rhs,
                abs_diff: d,
                tolerance: Float::new(ctx.precision_bits()),
                pass: equal,
                notes: Vec::new(),
            };
        }
        let l = lhs.to_complex(bits);
        let r = rhs.to_complex(bits);
        let diff = (&l - &r).abs();
        let pass = ctx.accepts(&diff, &r.abs());
        CheckReport {
            identity: identity.into(),
            params,
            lhs,
            rhs,
            abs_diff: diff,
            tolerance: ctx.tolerance().clone(),
            pass,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

fn exact_gaussian(v: &Value) -> GaussianRational {
    match v {
        Value::Exact(r) => GaussianRational::real(r.clone()),
        Value::Gaussian(g) => g.clone(),
        Value::Approx(_) => unreachable!("approximate value in exact comparison"),
    }
}
