//! `cobinv`: JSON in, JSON out.

mod input;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cobinv_core::algebra::GradedPoly;
use cobinv_core::equivariant::{
    check_decomposition, decompose, evaluate, express_in_x, fixed_dim, is_normal_bundle_class, shipped_varieties,
    split_expression,
};
use cobinv_core::lazard::{c_alpha, chern_table, genus, Genus};
use cobinv_core::partitions;
use cobinv_core::verdicts::{curve_check, curve_table, shipped_corpus};
use cobinv_core::{Config, Context, Error};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use input::{ambient_class, bundle_over_base, classify, read_json, Payload};
use verify::Suite;

#[derive(Parser)]
#[command(name = "cobinv", version, about = "Cobordism classes of involutions, computed exactly")]
struct Cli {
    /// Degree bound D.
    #[arg(long, global = true, env = "COBINV_DEGREE")]
    degree: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Class in the Lazard ring and its Chern numbers.
    Class { file: PathBuf },
    /// Chern numbers c_α; the whole table without --alpha.
    ChernNumbers {
        file: PathBuf,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// ν of a fixture, or the class of a bundle `{"base":…, "bundle":[…]}`.
    BundleClass { file: PathBuf },
    /// A_i coefficients of a fixture or of a class in ℳ.
    Decompose { file: PathBuf },
    /// Whether a class in ℳ is ν of some involution.
    Realizable { file: PathBuf },
    Genus {
        file: PathBuf,
        #[arg(long, value_parser = ["euler", "psi"])]
        which: String,
    },
    /// Realizability of a curve-data class, by the table and by the lattice test.
    CurveCheck {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        b: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        c: BigInt,
    },
    /// Bound reports and example checks; the shipped corpus without a file.
    Verify {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// The shipped fixtures.
    Catalog {
        /// Write every fixture file into this directory.
        #[arg(long)]
        write: Option<PathBuf>,
        /// Print one fixture by file stem.
        #[arg(long, conflicts_with = "write")]
        show: Option<String>,
    },
}

#[derive(Debug)]
pub struct CliError {
    code: &'static str,
    message: String,
    exit: u8,
}

impl CliError {
    fn io(message: String) -> Self {
        CliError { code: "io", message, exit: 2 }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::Window(_) => 3,
            Error::Parse(_) | Error::Invalid(_) | Error::AlphabetMismatch | Error::NegativeExponent(_) => 2,
            _ => 4,
        };
        CliError { code: e.code(), message: e.to_string(), exit }
    }
}

/// A command's result: JSON, its table rendering, and the exit code.
struct Out {
    json: Value,
    table: String,
    exit: u8,
}

impl Out {
    fn new(json: Value, table: String) -> Self {
        Out { json, table, exit: 0 }
    }
}

type Res = std::result::Result<Out, CliError>;

fn load(path: &Path) -> std::result::Result<Payload, CliError> {
    Ok(classify(read_json(path)?)?)
}

fn chern_json(t: &std::collections::BTreeMap<Vec<u32>, BigInt>) -> Value {
    Value::Object(t.iter().map(|(a, c)| (partitions::render(a), json!(c.to_string()))).collect())
}

fn cmd_class(ctx: &Context, file: &Path) -> Res {
    let p = load(file)?;
    let (name, n, x) = ambient_class(ctx, &p)?;
    let t = chern_table(ctx.symbols(), &x);
    let mut table = format!("{name} (dim {n})\n[X] = {x}\n");
    for (a, c) in &t {
        table.push_str(&format!("c_({}) = {c}\n", partitions::render(a)));
    }
    Ok(Out::new(json!({"name": name, "dim": n, "class": x.to_json(), "chern_numbers": chern_json(&t)}), table))
}

fn cmd_chern(ctx: &Context, file: &Path, alpha: Option<&str>) -> Res {
    let (name, n, x) = ambient_class(ctx, &load(file)?)?;
    match alpha {
        Some(s) => {
            let a = partitions::parse(s).ok_or_else(|| Error::Parse(format!("bad partition {s:?}")))?;
            let c = c_alpha(ctx.symbols(), &x, &a);
            let r = partitions::render(&a);
            Ok(Out::new(json!({"name": name, "dim": n, "alpha": a, "value": c.to_string()}), format!("c_({r}) = {c}\n")))
        }
        None => {
            let t = chern_table(ctx.symbols(), &x);
            let table = t.iter().map(|(a, c)| format!("c_({}) = {c}\n", partitions::render(a))).collect();
            Ok(Out::new(json!({"name": name, "dim": n, "chern_numbers": chern_json(&t)}), table))
        }
    }
}

fn cmd_bundle_class(ctx: &Context, file: &Path) -> Res {
    match load(file)? {
        Payload::Fixture(f) => {
            let data = evaluate(ctx, &f)?;
            let fixed: Map<String, Value> = data.fixed.iter().map(|(k, p)| (k.to_string(), p.to_json())).collect();
            let mut table = format!("{} (n = {}, d = {:?})\nnu = {}\n", f.name, data.n, data.d, data.nu);
            for (k, p) in &data.fixed {
                table.push_str(&format!("[F_{k}] = {p}\n"));
            }
            Ok(Out::new(
                json!({
                    "name": f.name, "n": data.n, "d": data.d, "nu": data.nu.to_json(),
                    "ambient": data.ambient.to_json(), "fixed": fixed, "e": f.e,
                }),
                table,
            ))
        }
        Payload::Bundle(b) => {
            let m = bundle_over_base(ctx, &b)?;
            Ok(Out::new(json!({"class": m.to_json()}), format!("{m}\n")))
        }
        _ => Err(Error::Invalid("bundle-class takes a fixture or a bundle".into()).into()),
    }
}

fn m_poly(ctx: &Context, v: &Value) -> std::result::Result<GradedPoly, CliError> {
    Ok(GradedPoly::from_json(v, &ctx.symbols().alpha)?)
}

fn cmd_decompose(ctx: &Context, file: &Path) -> Res {
    let (inv, checks) = match load(file)? {
        Payload::Fixture(f) => {
            let inv = decompose(ctx, &f)?;
            let data = evaluate(ctx, &f)?;
            let checks = check_decomposition(ctx, fixed_dim(&f)?, &inv, Some(&data.nu))?;
            (inv, checks)
        }
        Payload::Poly(v) => {
            let m = m_poly(ctx, &v)?;
            let n = match m.homogeneous_components().keys().copied().collect::<Vec<_>>()[..] {
                [d] if d <= 0 => (-d) as u32,
                _ => return Err(Error::Invalid("decompose needs a nonzero homogeneous class".into()).into()),
            };
            let inv = split_expression(ctx, n, &express_in_x(ctx, &m)?)?;
            let checks = check_decomposition(ctx, None, &inv, Some(&m))?;
            (inv, checks)
        }
        _ => return Err(Error::Invalid("decompose takes a fixture or a class in M".into()).into()),
    };
    let mut table = format!("A0 = {}\n", inv.a_i(ctx, 0));
    for (i, p) in inv.a.iter().filter(|(i, _)| **i > 0) {
        table.push_str(&format!("A{i} = {p}\n"));
    }
    let mut j = inv.to_json(ctx);
    j["checks"] = serde_json::to_value(&checks).expect("checks serialize");
    Ok(Out::new(j, table))
}

fn cmd_realizable(ctx: &Context, file: &Path) -> Res {
    let m = match load(file)? {
        Payload::Poly(v) => m_poly(ctx, &v)?,
        Payload::Fixture(f) => evaluate(ctx, &f)?.nu.clone(),
        Payload::Bundle(b) => bundle_over_base(ctx, &b)?,
        Payload::Variety(_) => return Err(Error::Invalid("realizable takes a class in M".into()).into()),
    };
    let r = is_normal_bundle_class(ctx, &m)?;
    let table = format!("{}\n", if r.realizable { "yes" } else { "no" });
    Ok(Out::new(serde_json::to_value(&r).expect("verdict serializes"), table))
}

fn cmd_genus(ctx: &Context, file: &Path, which: &str) -> Res {
    let g = Genus::parse(which)?;
    let (name, n, x) = ambient_class(ctx, &load(file)?)?;
    let val = genus(ctx.symbols(), &x, g)?;
    Ok(Out::new(json!({"name": name, "dim": n, "genus": g, "value": val.to_string()}), format!("{val}\n")))
}

fn cmd_curve(ctx: &Context, n: u32, a: &BigInt, b: &BigInt, c: &BigInt) -> Res {
    let v = curve_check(ctx, n, a, b, c)?;
    let yes = curve_table(n, a, b, c);
    let mut j = serde_json::to_value(&v).expect("verdict serializes");
    j["verdict"] = json!(if yes { "yes" } else { "no" });
    j["agree"] = json!(v.agree());
    j["input"] = json!({"n": n, "a": a.to_string(), "b": b.to_string(), "c": c.to_string()});
    Ok(Out::new(j, format!("{}\n", if yes { "yes" } else { "no" })))
}

fn cmd_verify(ctx: &Context, file: Option<&Path>, suite: Suite) -> Res {
    let items = match file {
        Some(p) => match load(p)? {
            Payload::Fixture(f) => verify::fixture_items(ctx, &f.name.clone(), &f, suite)?,
            _ => return Err(Error::Invalid("verify takes a fixture".into()).into()),
        },
        None => verify::corpus_items(ctx, suite)?,
    };
    let exit = if verify::any_violated(&items) { 1 } else { 0 };
    let table = verify::table(&items);
    Ok(Out { json: Value::Array(items), table, exit })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn catalog_files() -> std::result::Result<Vec<(String, Value)>, CliError> {
    let mut out: Vec<(String, Value)> = shipped_varieties()
        .into_iter()
        .map(|(s, d)| (s, serde_json::to_value(d).expect("descriptors serialize")))
        .collect();
    for (s, f) in shipped_corpus()? {
        out.push((s, f.to_json()));
    }
    Ok(out)
}

fn cmd_catalog(write: Option<&Path>, show: Option<&str>) -> Res {
    let files = catalog_files()?;
    if let Some(stem) = show {
        let (_, v) = files
            .iter()
            .find(|(s, _)| s == stem)
            .ok_or_else(|| Error::Invalid(format!("no shipped fixture {stem:?}")))?;
        return Ok(Out::new(v.clone(), pretty(v)));
    }
    if let Some(dir) = write {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("{}: {e}", dir.display())))?;
        for (s, v) in &files {
            let p = dir.join(format!("{s}.json"));
            std::fs::write(&p, pretty(v)).map_err(|e| CliError::io(format!("{}: {e}", p.display())))?;
        }
    }
    let mut list = Vec::new();
    let mut table = String::new();
    for (s, v) in &files {
        let (kind, name) = match v.get("type") {
            Some(_) => ("variety", v["type"].as_str().unwrap_or("").to_string()),
            None => ("involution", v["name"].as_str().unwrap_or("").to_string()),
        };
        table.push_str(&format!("{s:<24} {kind:<11} {name}\n"));
        list.push(json!({"file": format!("{s}.json"), "kind": kind, "name": name}));
    }
    Ok(Out::new(json!({"fixtures": list, "written": write.map(|d| d.display().to_string())}), table))
}

fn run(cli: &Cli) -> Res {
    let config = match cli.degree {
        Some(d) => Config::with_degree(d),
        None => Config::default(),
    };
    config.validate()?;
    let ctx = Context::new(config)?;
    match &cli.cmd {
        Cmd::Class { file } => cmd_class(&ctx, file),
        Cmd::ChernNumbers { file, alpha } => cmd_chern(&ctx, file, alpha.as_deref()),
        Cmd::BundleClass { file } => cmd_bundle_class(&ctx, file),
        Cmd::Decompose { file } => cmd_decompose(&ctx, file),
        Cmd::Realizable { file } => cmd_realizable(&ctx, file),
        Cmd::Genus { file, which } => cmd_genus(&ctx, file, which),
        Cmd::CurveCheck { n, a, b, c } => cmd_curve(&ctx, *n, a, b, c),
        Cmd::Verify { file, suite } => cmd_verify(&ctx, file.as_deref(), *suite),
        Cmd::Catalog { write, show } => cmd_catalog(write.as_deref(), show.as_deref()),
    }
}

fn fail(e: CliError) -> ExitCode {
    let v = json!({"error": {"code": e.code, "message": e.message}});
    eprintln!("{}", serde_json::to_string(&v).expect("errors serialize"));
    ExitCode::from(e.exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            return fail(CliError { code: "parse", message: e.render().to_string().trim().to_string(), exit: 2 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.output {
                Output::Json => print!("{}", pretty(&out.json)),
                Output::Table => print!("{}", out.table),
            }
            ExitCode::from(out.exit)
        }
        Err(e) => fail(e),
    }
}
