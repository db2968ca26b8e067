//! Commands behind the `salemkit` binary. Each returns a [`Report`].

pub mod format;
pub mod suite;

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use salemkit::builtins::{e8_components, e8_graph, gamma, gamma_trace_form, resolve_poly, resolve_selector};
use salemkit::certroots::{select_root, ComplexInterval};
use salemkit::factor::{salem_classify, spectral_classify};
use salemkit::fixpoint::{
    enriques_obstruction, propagate_chain, quadratic_roots, solve_unknown_point, torus_entropy, CurveChainGraph,
    FixedComponent,
};
use salemkit::interval::{Precision, RealEnclosure};
use salemkit::k3::k3_verify;
use salemkit::matrix::{char_poly, IntMatrix};
use salemkit::numfield::{nf_embed, NumberField};
use salemkit::surfgeom::{coxeter_element, RootSystemSpec};

use format::{complex, real};

pub const VERSION: &str = concat!("salemkit ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] salemkit::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use salemkit::Error as E;
        match self {
            CliError::Core(E::Parse(_)) | CliError::Io { .. } | CliError::Json(_) => 2,
            CliError::Core(E::PrecisionExhausted { .. }) => 4,
            CliError::Core(_) => 3,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub certificates: Value,
    pub precision_bits_used: u32,
    pub version: &'static str,
}

/// Shared options.
#[derive(Debug)]
pub struct Ctx {
    pub exact: bool,
    pub prec: Precision,
    pub seed: u64,
}

impl Ctx {
    pub fn new(exact: bool, precision_cap: u32, seed: u64) -> Self {
        Self {
            exact,
            prec: Precision::new(precision_cap),
            seed,
        }
    }

    fn report(&self, command: &str, inputs: Value, results: Value, certificates: Value) -> Report {
        Report {
            command: command.into(),
            inputs,
            results,
            certificates,
            precision_bits_used: self.prec.used(),
            version: VERSION,
        }
    }
}

fn opt_real(e: &Option<RealEnclosure>, exact: bool) -> Value {
    e.as_ref().map_or(Value::Null, |e| real(e, exact))
}

pub fn cmd_salem(ctx: &Ctx, poly: &str) -> CliResult<Report> {
    let p = resolve_poly(poly)?;
    let r = salem_classify(&p);
    let results = json!({
        "polynomial": p.to_string(),
        "is_salem": r.is_salem,
        "is_monic": r.is_monic,
        "is_reciprocal": r.is_reciprocal,
        "is_irreducible": r.is_irreducible,
        "real_roots_off_circle": r.real_roots_off_circle,
        "salem_number": opt_real(&r.salem_number, ctx.exact),
    });
    Ok(ctx.report("salem", json!({ "poly": poly }), results, serde_json::to_value(&r)?))
}

pub fn cmd_k3_verify(ctx: &Ctx, poly: &str, root: &str, conjugate: Option<&str>) -> CliResult<Report> {
    let p = resolve_poly(poly)?;
    let sel = resolve_selector(root)?;
    let conj = conjugate.map(resolve_selector).transpose()?;
    let v = k3_verify(&p, &sel, conj.as_ref(), &ctx.prec)?;
    let x = ctx.exact;
    let independence = serde_json::to_value(&v.verdict.independence)?;
    let decisive = match &v.verdict.independence {
        salemkit::fixpoint::IndependenceCertificate::Decisive { check, .. } => json!({
            "ordinal": check.ordinal,
            "conjugate": complex(&check.conjugate.bx, x),
            "roots": [complex(&check.roots[0], x), complex(&check.roots[1], x)],
            "moduli_vs_one": check.moduli_vs_one,
        }),
        _ => Value::Null,
    };
    let results = json!({
        "polynomial": p.to_string(),
        "root": complex(&v.root.bx, x),
        "root_ordinal": v.root_ordinal,
        "salem_number": opt_real(&v.spectrum.salem_number, x),
        "entropy": real(&v.spectrum.entropy, x),
        "h2_char_poly": v.isometry.char_poly.to_string(),
        "isometry_certified": v.isometry_certificate.certified,
        "signature": v.isometry_certificate.signature,
        "fixed_points": v.fixed_points,
        "known_euler_sum": v.known_euler_sum,
        "remaining_points": v.remaining_points,
        "quadratic": {
            "trace": v.trace.to_string(),
            "det": v.det.to_string(),
            "trace_equals_gamma": v.trace_equals_gamma,
            "gamma": gamma().to_string(),
            "gamma_f1": gamma_trace_form().0.to_string(),
            "gamma_f2": gamma_trace_form().1.to_string(),
        },
        "k": v.verdict.unit_modulus.k_embedding.as_ref().map_or(Value::Null, |k| complex(k, x)),
        "eigenvalues": [complex(&v.verdict.eigenvalues[0], x), complex(&v.verdict.eigenvalues[1], x)],
        "condition_algebraic": v.verdict.condition_algebraic,
        "condition_unit_modulus": v.verdict.condition_unit_modulus,
        "condition_mult_independent": v.verdict.condition_mult_independent,
        "independence": independence.get("kind").cloned().unwrap_or(Value::Null),
        "decisive_conjugate": decisive,
        "has_siegel_disk": v.verdict.has_siegel_disk,
        "not_claimed": v.not_claimed,
    });
    Ok(ctx.report(
        "k3-verify",
        json!({ "poly": poly, "root": root, "conjugate": conjugate }),
        results,
        serde_json::to_value(&v)?,
    ))
}

pub fn cmd_enriques(ctx: &Ctx, poly: &str) -> CliResult<Report> {
    let p = resolve_poly(poly)?;
    let v = enriques_obstruction(&p)?;
    let results = json!({
        "polynomial": p.to_string(),
        "mod2_factors": v.mod2_factors.iter().map(|(f, m)| json!({"factor": f.to_string(), "multiplicity": m})).collect::<Vec<_>>(),
        "has_degree5_factor": v.has_degree5_factor,
        "admissible_orders": v.admissible_orders,
        "obstructed": v.obstructed,
        "rationale": v.rationale,
    });
    Ok(ctx.report("enriques", json!({ "poly": poly }), results, serde_json::to_value(&v)?))
}

pub fn cmd_coxeter(ctx: &Ctx, spec: &str) -> CliResult<Report> {
    let s: RootSystemSpec = spec.parse()?;
    let m = coxeter_element(&s);
    let cp = char_poly(&m)?;
    let d = spectral_classify(&cp)?;
    let results = json!({
        "root_system": s.to_string(),
        "degenerate": s.is_degenerate(),
        "coxeter_matrix": m,
        "char_poly": cp.to_string(),
        "cyclotomic_factors": d.cyclotomic_factors.iter().map(|(f, k)| json!({"factor": f.to_string(), "multiplicity": k})).collect::<Vec<_>>(),
        "salem_factor": d.salem_factor.as_ref().map(|f| f.to_string()),
        "salem_number": opt_real(&d.salem_number, ctx.exact),
        "entropy": real(&d.entropy, ctx.exact),
    });
    Ok(ctx.report("coxeter", json!({ "spec": spec }), results, serde_json::to_value(&d)?))
}

/// JSON input of the `lefschetz` command.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct LefschetzSpec {
    /// Polynomial or built-in name; its root class is the generator.
    pub modulus: String,
    #[serde(default = "one")]
    pub det_exponent: i64,
    /// Propagated first; its components precede `components`.
    #[serde(default)]
    pub graph: Option<CurveChainGraph>,
    #[serde(default)]
    pub components: Vec<FixedComponent>,
    /// Root selector for numerical embeddings.
    #[serde(default)]
    pub root: Option<String>,
}

fn one() -> i64 {
    1
}

impl LefschetzSpec {
    /// E8 configuration over the degree-14 Lehmer-type field at `delta`.
    pub fn e8() -> Self {
        let comps = e8_components();
        Self {
            modulus: "phi14".into(),
            det_exponent: 1,
            graph: Some(e8_graph()),
            components: comps.into_iter().filter(|c| c.label == "Q").collect(),
            root: Some("delta".into()),
        }
    }
}

pub fn load_lefschetz_spec(arg: &str) -> CliResult<LefschetzSpec> {
    if arg == "e8" {
        return Ok(LefschetzSpec::e8());
    }
    let text = std::fs::read_to_string(Path::new(arg)).map_err(|source| CliError::Io {
        path: arg.into(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

pub fn cmd_lefschetz(ctx: &Ctx, spec: &LefschetzSpec) -> CliResult<Report> {
    let p = resolve_poly(&spec.modulus)?;
    let field = NumberField::new(p.clone())?;
    let mut components = Vec::new();
    if let Some(g) = &spec.graph {
        components.extend(propagate_chain(g)?.components);
    }
    components.extend(spec.components.iter().cloned());
    let sol = solve_unknown_point(&components, &field, spec.det_exponent)?;
    let root = spec
        .root
        .as_deref()
        .map(|r| resolve_selector(r).and_then(|s| select_root(&p, &s, &ctx.prec)))
        .transpose()?;
    let width = num_rational::BigRational::new(1.into(), num_bigint::BigInt::from(1) << 64usize);
    let emb = |e: &salemkit::numfield::NumberFieldElement| -> CliResult<Value> {
        Ok(match &root {
            Some(r) => complex(&nf_embed(e, r, &width, &ctx.prec)?, ctx.exact),
            None => Value::Null,
        })
    };
    let mut results = json!({
        "modulus": p.to_string(),
        "components": components.len(),
        "rhs": sol.rhs.to_string(),
        "known_sum": sol.known_sum.to_string(),
    });
    if let (Some(f), Some(t), Some(d)) = (&sol.f, &sol.trace, &sol.det) {
        results["mode"] = json!("solve");
        results["f"] = json!(f.to_string());
        results["trace"] = json!(t.to_string());
        results["det"] = json!(d.to_string());
        let one = salemkit::numfield::NumberFieldElement::one(&field);
        let closing = sol.known_sum.add(&one.sub(t)?.add(d)?.inv()?)?.sub(&sol.rhs)?;
        results["residual_with_solution_is_zero"] = json!(closing.is_zero());
        results["trace_embedding"] = emb(t)?;
        results["det_embedding"] = emb(d)?;
        results["eigenvalues"] = match &root {
            Some(r) => {
                let q: [ComplexInterval; 2] = quadratic_roots(t, d, r, &width, &ctx.prec)?;
                json!([complex(&q[0], ctx.exact), complex(&q[1], ctx.exact)])
            }
            None => Value::Null,
        };
    } else if let Some(res) = &sol.residual {
        results["mode"] = json!("consistency");
        results["residual"] = json!(res.to_string());
        results["residual_is_zero"] = json!(res.is_zero());
    }
    let certificates = json!({
        "components": components,
        "rhs": sol.rhs,
        "known_sum": sol.known_sum,
        "f": sol.f,
        "trace": sol.trace,
        "det": sol.det,
        "residual": sol.residual,
    });
    Ok(ctx.report("lefschetz", serde_json::to_value(spec)?, results, certificates))
}

/// Parses `a,b;c,d`.
pub fn parse_matrix(s: &str) -> CliResult<IntMatrix> {
    let bad = || salemkit::Error::Parse(format!("expected an integer matrix like \"a,b;c,d\", got {s:?}"));
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|r| r.split(',').map(|v| v.trim().parse::<i64>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    Ok(IntMatrix::from_rows(&rows).map_err(|_| bad())?)
}

pub fn cmd_torus(ctx: &Ctx, matrix: &str) -> CliResult<Report> {
    let m = parse_matrix(matrix)?;
    let t = torus_entropy(&m)?;
    let results = json!({
        "char_poly": t.char_poly.to_string(),
        "moduli": [real(&t.moduli[0], ctx.exact), real(&t.moduli[1], ctx.exact)],
        "case": t.case,
        "entropy": real(&t.entropy, ctx.exact),
    });
    Ok(ctx.report("torus", json!({ "matrix": matrix }), results, serde_json::to_value(&t)?))
}

pub fn cmd_paper_suite(ctx: &Ctx) -> CliResult<(Report, bool)> {
    let outcomes = suite::run(&ctx.prec, ctx.seed);
    let ok = outcomes.iter().all(|o| o.pass);
    let results = json!({
        "criteria": outcomes,
        "all_passed": ok,
    });
    Ok((ctx.report("paper-suite", json!({ "seed": ctx.seed }), results, Value::Null), ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Ctx {
        Ctx::new(false, 8192, 0)
    }

    #[test]
    fn matrix_parsing() {
        assert_eq!(parse_matrix("2, 1; 1, 1").unwrap().rows(), 2);
        assert_eq!(parse_matrix("2,x;1,1").unwrap_err().exit_code(), 2);
        assert_eq!(parse_matrix("1,2;3").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(cmd_salem(&ctx(), "x^^2").unwrap_err().exit_code(), 2);
        assert_eq!(cmd_enriques(&ctx(), "x^8+1").unwrap_err().exit_code(), 3);
        assert_eq!(cmd_torus(&ctx(), "1,2;2,4").unwrap_err().exit_code(), 3);
        let tight = Ctx::new(false, 8, 0);
        assert_eq!(cmd_k3_verify(&tight, "phi14", "delta", None).unwrap_err().exit_code(), 4);
    }

    #[test]
    fn lefschetz_modes() {
        let r = cmd_lefschetz(&ctx(), &LefschetzSpec::e8()).unwrap();
        assert_eq!(r.results["mode"], "solve");
        let mut spec = LefschetzSpec::e8();
        spec.components.push(FixedComponent::unknown("R"));
        assert_eq!(cmd_lefschetz(&ctx(), &spec).unwrap_err().exit_code(), 3);
    }
}
