use std::time::Instant;

use cartanweil::engine::serialize;
use cartanweil::error::Error;
use cartanweil::gforms::GFormComplex;
use cartanweil::lie::{load_algebra, parse_polynomial, InvariantPolynomial, LieAlgebra};
use cartanweil::mq::TensorComplex;
use cartanweil::report::Report;
use cartanweil::string::{based_string_class, universal_string_class, Variant};
use cartanweil::suites::{run_suite, Suite, SuiteConfig};
use cartanweil::transgression::{
    equivariant_transgress_closed, equivariant_transgress_integral, hat_presentation, transgress_closed, transgress_integral,
};
use cartanweil::{Oracle, Q};
use serde_json::{json, Map, Value};

use crate::{Common, Format};

pub const SEED_ENV: &str = "CARTANWEIL_SEED";

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

pub struct Output {
    pub text: String,
    pub pass: bool,
}

type Res<T> = std::result::Result<T, Failure>;

fn seed(common: &Common) -> Res<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(std::env::VarError::NotPresent) => Ok(common.seed),
        Err(e) => Err(Failure::Usage(format!("{SEED_ENV}: {e}"))),
    }
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn algebra(common: &Common) -> Res<LieAlgebra<Q>> {
    load_algebra(&common.algebra).map_err(usage)
}

fn polynomial(alg: &LieAlgebra<Q>, spec: &str) -> Res<InvariantPolynomial<Q>> {
    parse_polynomial(alg, spec).map_err(usage)
}

/// Structural validation of a loaded algebra; failures are rendered like
/// suite output and end the command with a verification failure.
fn invalid_algebra(alg: &LieAlgebra<Q>, common: &Common, command: &str, seed: u64) -> Res<Option<Output>> {
    let mut cfg = SuiteConfig::new(alg.clone(), common.samples as usize, seed);
    cfg.elements = 0;
    let reports = run_suite(Suite::Algebra, &cfg)?;
    if reports.iter().all(|r| r.pass) {
        return Ok(None);
    }
    let failures: Vec<Report> = reports.into_iter().filter(|r| !r.pass).collect();
    let text = match common.format {
        Format::Json => {
            let v = json!({
                "command": command,
                "algebra": alg.name(),
                "pass": false,
                "checks": failures.iter().map(|r| r.to_json(common.timings)).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        _ => failures.iter().map(|r| format!("{}\n", r.line())).collect(),
    };
    Ok(Some(Output { text, pass: false }))
}

fn insert_runtime(m: &mut Map<String, Value>, timings: bool, start: Instant) {
    if timings {
        m.insert("runtime_ms".into(), json!(start.elapsed().as_millis()));
    }
}

fn finish_json(m: Map<String, Value>) -> String {
    format!("{}\n", serde_json::to_string_pretty(&Value::Object(m)).expect("json"))
}

pub fn transgress(common: &Common, equivariant: bool) -> Res<Output> {
    let start = Instant::now();
    let seed = seed(common)?;
    let alg = algebra(common)?;
    if let Some(out) = invalid_algebra(&alg, common, "transgress", seed)? {
        return Ok(out);
    }
    let p = polynomial(&alg, common.poly.as_deref().unwrap_or("metric"))?;
    let gf = GFormComplex::new(&alg)?;
    let (integral, closed) = if equivariant {
        (equivariant_transgress_integral(&gf, &p)?, equivariant_transgress_closed(&gf, &p)?)
    } else {
        (transgress_integral(&gf, &p)?, transgress_closed(&gf, &p)?)
    };
    if integral.form != closed.form {
        return Err(Failure::Internal("integral and closed-form transgressions differ".into()));
    }
    let closedness = if equivariant {
        let oracle = Oracle::new(&alg, common.samples as usize, seed)?;
        closed.form.is_closed(&gf, &oracle)?.equal
    } else {
        gf.d().apply(closed.form.element())?.is_zero()
    };
    if !closedness {
        return Err(Failure::Internal("transgression is not closed".into()));
    }
    let structured = if equivariant { hat_presentation(&closed.structured) } else { closed.structured.clone() };
    let element = closed.form.element();
    let text = match common.format {
        Format::Text => format!("{structured}\n{}\n", element.to_pretty()),
        Format::Latex => format!("{}\n", structured.to_latex()),
        Format::Json => {
            let mut m = Map::new();
            m.insert("command".into(), json!("transgress"));
            m.insert("algebra".into(), json!(alg.name()));
            m.insert("polynomial".into(), json!(p.label()));
            m.insert("degree".into(), json!(closed.degree));
            m.insert("equivariant".into(), json!(equivariant));
            m.insert("structured".into(), json!(structured.to_string()));
            m.insert("structured_latex".into(), json!(structured.to_latex()));
            m.insert("form".into(), serialize::to_json(element));
            m.insert(
                "checks".into(),
                json!([
                    { "claim": "closed", "pass": true },
                    { "claim": "integral_equals_closed", "pass": true },
                ]),
            );
            m.insert("seed".into(), json!(seed));
            m.insert("samples".into(), json!(common.samples));
            insert_runtime(&mut m, common.timings, start);
            finish_json(m)
        }
    };
    Ok(Output { text, pass: true })
}

pub fn string_universal(common: &Common, based: bool, variant: &str) -> Res<Output> {
    let start = Instant::now();
    let seed = seed(common)?;
    let variant = Variant::parse(variant).map_err(usage)?;
    let alg = algebra(common)?;
    if let Some(out) = invalid_algebra(&alg, common, "string-universal", seed)? {
        return Ok(out);
    }
    let p = polynomial(&alg, common.poly.as_deref().unwrap_or("metric-normalized"))?;
    let complex = TensorComplex::new(&alg)?;
    let oracle = Oracle::new(&alg, common.samples as usize, seed)?;

    // (class, pass, witness)
    let (class, pass, witness) = if based {
        let class = based_string_class(&alg, &p)?;
        let tau = transgress_closed(complex.gforms(), &p)?;
        let diff = &class - tau.form.element();
        let w = (!diff.is_zero()).then(|| json!({ "residual": diff.to_pretty() }));
        (Some(class), diff.is_zero(), w)
    } else {
        match universal_string_class(&complex, &p, variant, &oracle) {
            Ok(c) => {
                let tau = equivariant_transgress_integral(complex.gforms(), &p)?;
                let v = oracle.equal(c.form.element(), tau.form.element());
                let phi = c.phi_agrees != Some(false);
                let w = if !phi {
                    Some(json!({ "stage": "mq_phi_agreement" }))
                } else if !v.equal {
                    Some(v.witness.as_ref().map(|w| w.to_json()).unwrap_or(Value::Null))
                } else {
                    None
                };
                (Some(c.form.into_element()), phi && v.equal, w)
            }
            Err(Error::NotBasic(msg)) => (None, false, Some(json!({ "stage": "basicness", "error": msg }))),
            Err(e) => return Err(e.into()),
        }
    };

    let claim = if based { "based_class_equals_transgression" } else { "string_class_equals_equivariant_transgression" };
    let verdict = if pass { "PASS" } else { "FAIL" };
    let text = match common.format {
        Format::Text => {
            let mut s = String::new();
            if let Some(c) = &class {
                s.push_str(&c.to_pretty());
                s.push('\n');
            }
            s.push_str(&format!("{verdict} {claim} [{} / {}]\n", alg.name(), p.label()));
            if let Some(w) = &witness {
                s.push_str(&format!("witness: {w}\n"));
            }
            s
        }
        Format::Latex => {
            let mut s = String::new();
            if let Some(c) = &class {
                s.push_str(&serialize::to_latex(c));
                s.push('\n');
            }
            s.push_str(&format!("% {verdict} {claim}\n"));
            s
        }
        Format::Json => {
            let mut m = Map::new();
            m.insert("command".into(), json!("string-universal"));
            m.insert("algebra".into(), json!(alg.name()));
            m.insert("polynomial".into(), json!(p.label()));
            m.insert("based".into(), json!(based));
            m.insert("variant".into(), json!(variant.name()));
            m.insert("form".into(), class.as_ref().map(serialize::to_json).unwrap_or(Value::Null));
            let mut check = Map::new();
            check.insert("claim".into(), json!(claim));
            check.insert("pass".into(), json!(pass));
            if let Some(w) = witness {
                check.insert("witness".into(), w);
            }
            m.insert("checks".into(), json!([Value::Object(check)]));
            m.insert("pass".into(), json!(pass));
            m.insert("seed".into(), json!(seed));
            m.insert("samples".into(), json!(common.samples));
            insert_runtime(&mut m, common.timings, start);
            finish_json(m)
        }
    };
    Ok(Output { text, pass })
}

pub fn verify(common: &Common, suite: &str) -> Res<Output> {
    let start = Instant::now();
    let seed = seed(common)?;
    let suite = Suite::parse(suite).map_err(usage)?;
    let alg = algebra(common)?;
    let mut cfg = SuiteConfig::new(alg.clone(), common.samples as usize, seed);
    if let Some(spec) = &common.poly {
        // An invalid algebra is reported by the suite itself, so only
        // resolve the polynomial once the algebra validates.
        if alg.validate().pass() {
            cfg.polynomial = Some(polynomial(&alg, spec)?);
        }
    }
    let reports = run_suite(suite, &cfg)?;
    let pass = reports.iter().all(|r| r.pass);
    let text = match common.format {
        Format::Json => {
            let mut m = Map::new();
            m.insert("command".into(), json!("verify"));
            m.insert("suite".into(), json!(suite.name()));
            m.insert("algebra".into(), json!(alg.name()));
            m.insert("seed".into(), json!(seed));
            m.insert("samples".into(), json!(common.samples));
            m.insert("pass".into(), json!(pass));
            m.insert("reports".into(), Value::Array(reports.iter().map(|r| r.to_json(common.timings)).collect()));
            insert_runtime(&mut m, common.timings, start);
            finish_json(m)
        }
        Format::Text | Format::Latex => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&r.line());
                if common.timings {
                    if let Some(ms) = r.runtime_ms {
                        s.push_str(&format!(" ({ms} ms)"));
                    }
                }
                s.push('\n');
                if let (false, Some(w)) = (r.pass, &r.witness) {
                    s.push_str(&format!("  witness: {w}\n"));
                }
            }
            s
        }
    };
    Ok(Output { text, pass })
}
