//! Reading the JSON payloads the subcommands accept.

use std::path::Path;

use cobinv_core::algebra::GradedPoly;
use cobinv_core::chow::{kclass_from_specs, LineSpec, Variety, VarietyDescriptor};
use cobinv_core::equivariant::{evaluate, Fixture};
use cobinv_core::mring::bundle_class;
use cobinv_core::{Context, Error, Result};
use serde::Deserialize;
use serde_json::Value;

use crate::CliError;

pub fn read_json(path: &Path) -> std::result::Result<Value, CliError> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::from(Error::Parse(format!("{}: {e}", path.display()))))
}

/// What a file holds, judged by its keys.
pub enum Payload {
    Variety(VarietyDescriptor),
    Fixture(Fixture),
    Bundle(BundleSpec),
    Poly(Value),
}

#[derive(Deserialize)]
pub struct BundleSpec {
    pub base: VarietyDescriptor,
    pub bundle: Vec<LineSpec>,
}

pub fn classify(v: Value) -> Result<Payload> {
    let has = |k: &str| v.get(k).is_some();
    if has("type") {
        let d = serde_json::from_value(v).map_err(|e| Error::Parse(format!("variety descriptor: {e}")))?;
        Ok(Payload::Variety(d))
    } else if has("base") && has("bundle") {
        let b = serde_json::from_value(v).map_err(|e| Error::Parse(format!("bundle: {e}")))?;
        Ok(Payload::Bundle(b))
    } else if has("vars") && has("terms") {
        Ok(Payload::Poly(v))
    } else if has("components") || has("factors") {
        Ok(Payload::Fixture(Fixture::from_json(&v)?))
    } else {
        Err(Error::Parse("unrecognized payload: expected a variety, fixture, bundle or polynomial".into()))
    }
}

/// `⟦X⟧` of a variety, or of the variety underlying a fixture.
pub fn ambient_class(ctx: &Context, p: &Payload) -> Result<(String, u32, GradedPoly)> {
    match p {
        Payload::Variety(d) => {
            let x = Variety::from_descriptor(d)?;
            Ok((d.label(), x.dim(), ctx.lazard().class_of(&x)?))
        }
        Payload::Fixture(f) => {
            let data = evaluate(ctx, f)?;
            Ok((f.name.clone(), data.n, data.ambient.clone()))
        }
        Payload::Poly(v) => {
            let x = GradedPoly::from_json(v, &ctx.symbols().alpha)?;
            if !ctx.symbols().is_lazard(&x) {
                return Err(Error::Invalid("expected a polynomial in b1, b2, ...".into()));
            }
            let n = match x.homogeneous_components().keys().copied().collect::<Vec<_>>()[..] {
                [] => 0,
                [d] if d <= 0 => (-d) as u32,
                _ => return Err(Error::Invalid("class is not homogeneous of nonpositive degree".into())),
            };
            Ok(("class".into(), n, x))
        }
        Payload::Bundle(_) => Err(Error::Invalid("expected a variety or a fixture, got a bundle".into())),
    }
}

/// `⟦E → S⟧` of a `{base, bundle}` payload.
pub fn bundle_over_base(ctx: &Context, b: &BundleSpec) -> Result<GradedPoly> {
    let s = Variety::from_descriptor(&b.base)?;
    let e = kclass_from_specs(s.ring(), &b.bundle)?;
    bundle_class(ctx.symbols(), &s, &e)
}
