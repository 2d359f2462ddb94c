//! Residues of the meromorphic kernels behind the half-range sums, by contour quadrature.

use rug::Float;

use crate::check::{CheckReport, Params, Value};
use crate::error::{Error, Result};
use crate::numeric::{rat, sin_cos_pi_ratio, HighComplex, PrecisionContext, Rational};
use crate::rootsums::Mod4Branch;

/// Extra bits on top of the context's working precision for quadrature.
pub const QUADRATURE_GUARD_BITS: u32 = 64;
pub const DEFAULT_RADIUS: (i64, i64) = (1, 8);
pub const DEFAULT_NODES: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(non_camel_case_types)]
pub enum KernelId {
    /// `cos^{2a}(pi z/k) / (cos^{2a+2}(2 pi z/k) (e^{2 pi i z} - 1))`
    F_COS,
    /// `sin^{2a}(pi z/k) / (sin^{2a+2}(2 pi z/k) (e^{2 pi i z} - 1))`
    G_SIN,
}

impl KernelId {
    pub fn tag(self) -> &'static str {
        match self {
            KernelId::F_COS => "f_cos",
            KernelId::G_SIN => "g_sin",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        match s {
            "f_cos" => Some(KernelId::F_COS),
            "g_sin" => Some(KernelId::G_SIN),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeromorphicSpec {
    pub id: KernelId,
    pub k: i64,
    pub a: u32,
}

impl MeromorphicSpec {
    pub fn new(id: KernelId, k: i64, a: u32) -> Result<Self> {
        if k < 1 || k % 2 == 0 {
            return Err(Error::Hypothesis(format!(
                "k = {k} must be odd and positive"
            )));
        }
        if a < 1 {
            return Err(Error::Hypothesis("a must be >= 1".into()));
        }
        Ok(MeromorphicSpec { id, k, a })
    }

    pub fn params(&self) -> Params {
        Params::new().int("k", self.k).int("a", i64::from(self.a))
    }

    /// Evaluates the kernel at a complex point.
    pub fn eval(&self, z: &HighComplex, pi: &Float) -> HighComplex {
        let bits = z.prec();
        let pz_k = z.scale(pi).scale_rational(&rat(1, self.k));
        let two = pz_k.scale_int(2);
        let (num, den) = match self.id {
            KernelId::F_COS => (pz_k.cos(), two.cos()),
            KernelId::G_SIN => (pz_k.sin(), two.sin()),
        };
        let a = i64::from(self.a);
        let e = z.scale(pi).scale_int(2).mul_i().exp() - HighComplex::one(bits);
        num.powi(2 * a) / (den.powi(2 * a + 2) * e)
    }

    /// Poles with real part in `[lo, hi]`, sorted and deduplicated.
    pub fn poles_between(&self, lo: i64, hi: i64) -> Vec<Rational> {
        let mut out: Vec<Rational> = (lo..=hi).map(|n| rat(n, 1)).collect();
        let (num0, step, den) = match self.id {
            KernelId::F_COS => (self.k, 2 * self.k, 4),
            KernelId::G_SIN => (0, self.k, 2),
        };
        let jlo = (lo * den - num0).div_euclid(step) - 1;
        let jhi = (hi * den - num0).div_euclid(step) + 1;
        for j in jlo..=jhi {
            let p = rat(num0 + j * step, den);
            if p >= lo && p <= hi {
                out.push(p);
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Circle `|z - center| = radius` sampled at `nodes` points offset by half a step.
#[derive(Clone, Debug)]
pub struct ContourSpec {
    pub center: HighComplex,
    pub radius: Float,
    pub nodes: usize,
}

impl ContourSpec {
    pub fn new(center: HighComplex, radius: Float, nodes: usize) -> Result<Self> {
        if nodes < 256 || !nodes.is_power_of_two() {
            return Err(Error::Contour(format!(
                "{nodes} nodes: need a power of two >= 256"
            )));
        }
        if !(radius.is_finite() && radius > 0) {
            return Err(Error::Contour("radius must be positive".into()));
        }
        Ok(ContourSpec {
            center,
            radius,
            nodes,
        })
    }

    /// Default contour (radius 1/8, 1024 nodes) around a real point.
    pub fn around(bits: u32, center: &Rational) -> Self {
        let r = Float::with_val(bits, &rat(DEFAULT_RADIUS.0, DEFAULT_RADIUS.1));
        ContourSpec::new(HighComplex::from_rational(bits, center), r, DEFAULT_NODES)
            .expect("default contour is valid")
    }

    pub fn with_nodes(mut self, nodes: usize) -> Result<Self> {
        self = ContourSpec::new(self.center, self.radius, nodes)?;
        Ok(self)
    }
}

fn validate_contour(spec: &MeromorphicSpec, contour: &ContourSpec) -> Result<()> {
    let c = &contour.center;
    let r = &contour.radius;
    let span = r.to_f64().ceil() as i64 + 1;
    let mid = c.re.to_f64().round() as i64;
    let bits = c.prec();
    let margin = Float::with_val(bits, r / 1024u32);
    let mut inside = 0;
    for p in spec.poles_between(mid - span, mid + span) {
        let d = c.dist(&HighComplex::from_rational(bits, &p));
        let gap = Float::with_val(bits, &d - r).abs();
        if gap < margin {
            return Err(Error::Contour(format!("contour passes through pole {p}")));
        }
        if d < *r {
            inside += 1;
        }
    }
    match inside {
        1 => Ok(()),
        0 => Err(Error::Contour("no pole enclosed".into())),
        n => Err(Error::Contour(format!("{n} poles enclosed"))),
    }
}

/// `(1/2 pi i) * contour integral` by the trapezoidal rule.
pub fn residue_numeric(
    ctx: &PrecisionContext,
    spec: &MeromorphicSpec,
    contour: &ContourSpec,
) -> Result<HighComplex> {
    validate_contour(spec, contour)?;
    let bits = ctx.work_bits() + QUADRATURE_GUARD_BITS;
    let pi = Float::with_val(bits, rug::float::Constant::Pi);
    let center = contour.center.with_prec(bits);
    let radius = Float::with_val(bits, &contour.radius);
    let n = contour.nodes as i64;
    let mut acc = HighComplex::zero(bits);
    for j in 0..n {
        let (s, c) = sin_cos_pi_ratio(bits, 2 * j + 1, n);
        let offset = HighComplex::new(c, s).scale(&radius);
        let z = &center + &offset;
        acc += spec.eval(&z, &pi) * offset;
    }
    Ok(acc.scale_rational(&rat(1, n)).with_prec(ctx.work_bits()))
}

/// Residue at a real point using the default contour.
pub fn residue_at(
    ctx: &PrecisionContext,
    spec: &MeromorphicSpec,
    center: &Rational,
) -> Result<HighComplex> {
    let contour = ContourSpec::around(ctx.work_bits() + QUADRATURE_GUARD_BITS, center);
    residue_numeric(ctx, spec, &contour)
}

/// Pole classes with explicit residue formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PoleClass {
    /// `z = k/4` of `F_COS`.
    K4,
    /// `z = 3k/4` of `F_COS`.
    K34,
    /// `z = 0` of `G_SIN`.
    Zero,
    /// `z = k/2` of `G_SIN`.
    KHalf,
}

impl PoleClass {
    pub fn location(self, k: i64) -> Rational {
        match self {
            PoleClass::K4 => rat(k, 4),
            PoleClass::K34 => rat(3 * k, 4),
            PoleClass::Zero => Rational::new(),
            PoleClass::KHalf => rat(k, 2),
        }
    }

    pub fn kernel(self) -> KernelId {
        match self {
            PoleClass::K4 | PoleClass::K34 => KernelId::F_COS,
            PoleClass::Zero | PoleClass::KHalf => KernelId::G_SIN,
        }
    }
}

/// Explicit residue for `a = 1`.
pub fn residue_closed(
    ctx: &PrecisionContext,
    spec: &MeromorphicSpec,
    which: PoleClass,
) -> Result<HighComplex> {
    if spec.a != 1 {
        return Err(Error::Unsupported(format!(
            "explicit residues need a = 1, got {}",
            spec.a
        )));
    }
    if which.kernel() != spec.id {
        return Err(Error::Unsupported(format!(
            "{which:?} is not a pole class of {}",
            spec.id.tag()
        )));
    }
    let bits = ctx.work_bits();
    let k = spec.k;
    let (k2, k3) = (k * k, k * k * k);
    let pi = ctx.pi();
    // Every formula is (i / pi) times a Gaussian rational u + v i.
    let (u, v) = match which {
        PoleClass::K4 | PoleClass::K34 => {
            let (re, im) = match (Mod4Branch::of(k).expect("odd k"), which) {
                (Mod4Branch::One, PoleClass::K4) => (3 + 4 * k + 3 * k2 + 2 * k3, -3),
                (Mod4Branch::One, _) => (3 + 4 * k + 3 * k2 + 2 * k3, 3),
                (Mod4Branch::Three, PoleClass::K4) => (-3 + 4 * k - 3 * k2 + 2 * k3, -3),
                (Mod4Branch::Three, _) => (-3 + 4 * k - 3 * k2 + 2 * k3, 3),
            };
            (rat(k * re, 48), rat(k * im, 48))
        }
        PoleClass::Zero => (rat(k2 - 7, 96), Rational::new()),
        PoleClass::KHalf => (rat(k2 * (5 + k2), 96), Rational::new()),
    };
    let g = HighComplex::new(Float::with_val(bits, &u), Float::with_val(bits, &v));
    Ok(g.mul_i().scale(&Float::with_val(bits, pi.recip_ref())))
}

/// Direct half-range sum `sum_{0<n<k/2} f^{2a}(pi n/k) / f^{2a+2}(2 pi n/k)`.
pub fn half_range_sum(ctx: &PrecisionContext, spec: &MeromorphicSpec) -> HighComplex {
    let bits = ctx.work_bits();
    let a = spec.a as i32;
    let mut acc = Float::new(bits);
    for n in 1..=(spec.k - 1) / 2 {
        let (s1, c1) = sin_cos_pi_ratio(bits, n, spec.k);
        let (s2, c2) = sin_cos_pi_ratio(bits, 2 * n, spec.k);
        let (x, y) = match spec.id {
            KernelId::F_COS => (c1, c2),
            KernelId::G_SIN => (s1, s2),
        };
        acc += crate::numeric::powi_real(&x, 2 * a) / crate::numeric::powi_real(&y, 2 * a + 2);
    }
    HighComplex::from_real(acc)
}

/// Half-range sum against its residue expression.
///
/// Residues come from quadrature; for `a = 1` they are also compared with the
/// explicit formulas and the verdict requires that agreement as well.
pub fn contour_check(ctx: &PrecisionContext, spec: &MeromorphicSpec) -> Result<CheckReport> {
    let classes = match spec.id {
        KernelId::F_COS => [PoleClass::K4, PoleClass::K34],
        KernelId::G_SIN => [PoleClass::Zero, PoleClass::KHalf],
    };
    let bits = ctx.work_bits();
    let mut residues = Vec::with_capacity(2);
    for c in classes {
        residues.push(residue_at(ctx, spec, &c.location(spec.k))?);
    }
    let mut notes = Vec::new();
    let mut closed_ok = true;
    if spec.a == 1 {
        for (c, r) in classes.iter().zip(&residues) {
            let closed = residue_closed(ctx, spec, *c)?;
            let ok = crate::numeric::approx_equal(ctx, r, &closed);
            closed_ok &= ok;
            notes.push(format!("{c:?} residue matches explicit formula: {ok}"));
        }
    }
    let sum = &residues[0] + &residues[1];
    let pi = ctx.pi();
    let mut rhs = sum.mul_i().scale(&pi).scale_int(-1);
    if spec.id == KernelId::F_COS {
        rhs -= HighComplex::from_rational(bits, &rat(1, 2));
    }
    let lhs = half_range_sum(ctx, spec);
    let mut report = CheckReport::compare(
        ctx,
        format!("residues.{}", spec.id.tag()),
        spec.params(),
        Value::Approx(lhs),
        Value::Approx(rhs),
    );
    report.pass &= closed_ok;
    report.notes.extend(notes);
    Ok(report)
}

/// `R_n = R_{k-n}` at an integer pole `0 < n < k`.
pub fn residue_symmetry_check(
    ctx: &PrecisionContext,
    spec: &MeromorphicSpec,
    n: i64,
) -> Result<CheckReport> {
    if n <= 0 || n >= spec.k {
        return Err(Error::Hypothesis(format!("need 0 < n < k, got n = {n}")));
    }
    let l = residue_at(ctx, spec, &rat(n, 1))?;
    let r = residue_at(ctx, spec, &rat(spec.k - n, 1))?;
    Ok(CheckReport::compare(
        ctx,
        format!("residues.{}.symmetry", spec.id.tag()),
        spec.params().int("n", n),
        Value::Approx(l),
        Value::Approx(r),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{approx_equal, make_context};

    fn ctx() -> PrecisionContext {
        make_context(128).unwrap()
    }

    #[test]
    fn quadrature_matches_explicit_formulas() {
        let c = ctx();
        for k in [5, 7] {
            let f = MeromorphicSpec::new(KernelId::F_COS, k, 1).unwrap();
            let g = MeromorphicSpec::new(KernelId::G_SIN, k, 1).unwrap();
            for (s, w) in [
                (f, PoleClass::K4),
                (f, PoleClass::K34),
                (g, PoleClass::Zero),
                (g, PoleClass::KHalf),
            ] {
                let num = residue_at(&c, &s, &w.location(k)).unwrap();
                let closed = residue_closed(&c, &s, w).unwrap();
                assert!(approx_equal(&c, &num, &closed), "k={k} {w:?}");
            }
        }
    }

    #[test]
    fn explicit_examples() {
        let c = ctx();
        let g = MeromorphicSpec::new(KernelId::G_SIN, 5, 1).unwrap();
        let z = residue_closed(&c, &g, PoleClass::Zero).unwrap();
        let expect = Float::with_val(c.work_bits(), 3) / (c.pi() * 16u32);
        assert!(z.re.is_zero());
        assert!(Float::with_val(160, &z.im - &expect).abs() < 1e-35);
        let f2 = MeromorphicSpec::new(KernelId::F_COS, 7, 2).unwrap();
        assert!(matches!(
            residue_closed(&c, &f2, PoleClass::K4),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn contour_examples() {
        let c = ctx();
        for (id, k, a) in [
            (KernelId::G_SIN, 7, 1),
            (KernelId::F_COS, 5, 1),
            (KernelId::G_SIN, 9, 2),
        ] {
            let r = contour_check(&c, &MeromorphicSpec::new(id, k, a).unwrap()).unwrap();
            assert!(r.pass, "{id:?} {k} {a}");
        }
        let g = MeromorphicSpec::new(KernelId::G_SIN, 7, 1).unwrap();
        let s = half_range_sum(&c, &g);
        assert!(approx_equal(&c, &s, &HighComplex::from_int(160, 28)));
    }

    #[test]
    fn contour_validation() {
        let f = MeromorphicSpec::new(KernelId::F_COS, 5, 1).unwrap();
        let c = ctx();
        let wide = ContourSpec::new(
            HighComplex::from_rational(200, &rat(5, 4)),
            Float::with_val(200, 0.5),
            1024,
        )
        .unwrap();
        assert!(matches!(
            residue_numeric(&c, &f, &wide),
            Err(Error::Contour(_))
        ));
        let touching = ContourSpec::new(
            HighComplex::from_rational(200, &rat(9, 8)),
            Float::with_val(200, 0.125),
            1024,
        )
        .unwrap();
        assert!(matches!(
            residue_numeric(&c, &f, &touching),
            Err(Error::Contour(_))
        ));
        assert!(ContourSpec::around(200, &rat(0, 1))
            .with_nodes(300)
            .is_err());
    }

    #[test]
    fn integer_residue_symmetry() {
        let c = ctx();
        let f = MeromorphicSpec::new(KernelId::F_COS, 7, 2).unwrap();
        assert!(residue_symmetry_check(&c, &f, 2).unwrap().pass);
    }
}
