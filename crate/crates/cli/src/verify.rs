//! The `verify` suites.

use cobinv_core::equivariant::{check_decomposition, decompose, evaluate, is_normal_bundle_class, theta, Fixture};
use cobinv_core::verdicts::{
    bound_suite, isolated_points_check, sharpness_witnesses, shipped_corpus, theta_matches, witness_status, Status,
};
use cobinv_core::{Context, Error, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Bounds,
    Examples,
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Satisfied
    } else {
        Status::Violated
    }
}

fn tagged(mut v: Value, fixture: &str, suite: &str) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("fixture".into(), json!(fixture));
        m.insert("suite".into(), json!(suite));
    }
    v
}

/// Reports for one fixture, bounds first.
pub fn fixture_items(ctx: &Context, name: &str, f: &Fixture, suite: Suite) -> Result<Vec<Value>> {
    let data = evaluate(ctx, f)?;
    let mut out = Vec::new();
    if suite != Suite::Examples {
        for r in bound_suite(ctx, &data)? {
            out.push(tagged(serde_json::to_value(&r).expect("reports serialize"), name, "bounds"));
        }
    }
    if suite == Suite::Bounds {
        return Ok(out);
    }
    let mut ex = |check: &str, st: Status, detail: Value| {
        out.push(tagged(json!({"check": check, "status": st, "detail": detail}), name, "examples"));
    };
    let inv = decompose(ctx, f)?;
    let checks = check_decomposition(ctx, data.d, &inv, Some(&data.nu))?;
    ex("decomposition", status(checks.all()), serde_json::to_value(&checks).expect("checks serialize"));
    if let (Some(kind), false) = (&f.source, f.components.is_empty()) {
        let t = theta(ctx, f)?;
        if let Some(ok) = theta_matches(kind, &t)? {
            ex(
                "theta",
                status(ok),
                json!({"d": t.d, "fixed": t.fixed.to_string(), "normal": t.normal.to_string()}),
            );
        }
    }
    if data.d == Some(0) {
        let c = isolated_points_check(&data)?;
        ex("isolated_points", status(c.realizable), serde_json::to_value(&c).expect("serializes"));
    }
    match is_normal_bundle_class(ctx, &data.nu) {
        Ok(r) => ex(
            "realizable",
            status(r.realizable && r.integrality),
            json!({"realizable": r.realizable, "integrality": r.integrality}),
        ),
        // Too large for the window; not a verdict either way.
        Err(e @ Error::Window(_)) => out.push(tagged(
            json!({"check": "realizable", "status": "skipped", "detail": e.to_string()}),
            name,
            "examples",
        )),
        Err(e) => return Err(e),
    }
    Ok(out)
}

/// Everything shipped, plus the sharpness witnesses.
pub fn corpus_items(ctx: &Context, suite: Suite) -> Result<Vec<Value>> {
    let corpus = shipped_corpus()?;
    let per: Vec<Result<Vec<Value>>> =
        corpus.par_iter().map(|(name, f)| fixture_items(ctx, name, f, suite)).collect();
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    if suite != Suite::Examples {
        for w in sharpness_witnesses()? {
            let (st, hits) = witness_status(ctx, &w)?;
            out.push(json!({
                "suite": "sharpness",
                "fixture": w.fixture.name,
                "label": w.label,
                "theorem": w.theorem,
                "status": st,
                "reports": serde_json::to_value(&hits).expect("reports serialize"),
            }));
        }
    }
    Ok(out)
}

pub fn any_violated(items: &[Value]) -> bool {
    items.iter().any(|v| v["status"] == "violated")
}

pub fn table(items: &[Value]) -> String {
    let mut s = String::new();
    for v in items {
        let what = v.get("theorem").or_else(|| v.get("check")).and_then(Value::as_str).unwrap_or("?");
        let st = v["status"].as_str().unwrap_or("?");
        let extra = match (v.get("observed"), v.get("bound")) {
            (Some(o), Some(b)) if !b.is_null() => format!("  {o} <= {}", b.as_str().unwrap_or("?")),
            _ => String::new(),
        };
        s.push_str(&format!(
            "{:<10} {:<24} {:<18} {st}{extra}\n",
            v["suite"].as_str().unwrap_or(""),
            v["fixture"].as_str().unwrap_or(""),
            what
        ));
    }
    s
}
