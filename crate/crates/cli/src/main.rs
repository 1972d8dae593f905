//! `clucat` — command-line front end for the cluster-core engine.
//!
//! Every command selects a quiver (via `--type`/`--arrows`/`--preset` or a
//! config file), runs one library computation or verification, and emits a
//! deterministic JSON artifact. Exit codes: 0 all assertions passed,
//! 1 assertion failure or computation failure, 2 parse/usage error,
//! 3 budget exceeded.

mod config;
mod objspec;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use cluster_core::category::{
    ext1_dim_cc, middle_chi, middle_terms, tilting_objects, CCObject,
};
use cluster_core::ccmap::{denominator, x_of};
use cluster_core::context::QuiverContext;
use cluster_core::filtration::{fan_check, toric_leading_check};
use cluster_core::grassmann::{euler_char, grassmann_poly, sub_dimension_vectors};
use cluster_core::hall::{
    chain_weight_sweep, expand_in_basis, hall_multiply, hall_polynomial, verify_multiplication,
    ChainConvention,
};
use cluster_core::mutation::{exchange_graph, Seed};
use cluster_core::quiver::IntVec;
use cluster_core::{Error, Result};

use config::RunConfig;
use objspec::{object_name, parse_module, parse_object};
use report::Artifact;

#[derive(Parser)]
#[command(
    name = "clucat",
    version,
    about = "Exact engine for cluster algebras of simply laced finite type"
)]
struct Cli {
    #[command(flatten)]
    globals: Globals,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Globals {
    /// Dynkin type label (A1..A8, D4..D6, E6..E8)
    #[arg(long = "type", global = true, value_name = "LABEL")]
    type_label: Option<String>,

    /// Explicit arrows between 1-based vertices, e.g. "2->1,2->3"
    #[arg(long, global = true, value_name = "LIST")]
    arrows: Option<String>,

    /// Orientation preset used when no explicit arrows are given
    #[arg(long, global = true, value_parser = ["alternating", "linear"])]
    preset: Option<String>,

    /// TOML or JSON configuration file
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Write the artifact to this file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output format; "dot" applies to mutate-bfs only
    #[arg(long, global = true, value_parser = ["json", "dot"], default_value = "json")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// List the positive roots of the selected type
    Roots,
    /// List the indecomposable objects of the cluster category
    Indecomposables,
    /// Compute the cluster variable attached to an object
    ClusterVar {
        /// Object specification, e.g. "S1", "2*S1+S2", "SP2", "root:[1,1]"
        object: String,
    },
    /// Explore the exchange graph breadth-first from the initial seed
    MutateBfs,
    /// Check the multiplication identity on object pairs with extensions
    VerifyMult {
        /// "all" for the full indecomposable sweep, or one pair "OBJ;OBJ"
        #[arg(long, default_value = "all")]
        pairs: String,
    },
    /// Check that each variable's denominator is its dimension vector
    VerifyDenominators,
    /// Check coefficient positivity and submodule-count consistency
    VerifyPositivity,
    /// Enumerate the maximal rigid objects
    Tilting,
    /// Locate seeded sample points in the simplicial index-vector cones
    FanCheck,
    /// Resolve every index vector in a box to its basis element
    Basis {
        /// Box radius: all vectors with |entry| <= this bound
        #[arg(long = "box", default_value_t = 3, value_name = "RADIUS")]
        box_radius: i64,
    },
    /// Expand a product of object variables in the triangular basis
    Expand {
        /// One or more objects; their variables are multiplied
        #[arg(required = true)]
        objects: Vec<String>,
    },
    /// Count filtrations of TOTAL with submodule SUB and quotient QUOTIENT
    HallPoly {
        quotient: String,
        sub: String,
        total: String,
    },
    /// Multiply two variables through degeneration chains
    HallMult {
        first: String,
        second: String,
        /// Self-extension convention used for chain denominators
        #[arg(long, value_parser = ["module-ext", "cluster-ext"], default_value = "module-ext")]
        convention: String,
    },
    /// Check unitary leading monomials under principal coefficients
    ToricCheck,
    /// Sweep chain weights over objects with bounded multiplicities
    ChainSweep {
        /// Largest summand multiplicity included in the sweep
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Roots => "roots",
            Command::Indecomposables => "indecomposables",
            Command::ClusterVar { .. } => "cluster-var",
            Command::MutateBfs => "mutate-bfs",
            Command::VerifyMult { .. } => "verify-mult",
            Command::VerifyDenominators => "verify-denominators",
            Command::VerifyPositivity => "verify-positivity",
            Command::Tilting => "tilting",
            Command::FanCheck => "fan-check",
            Command::Basis { .. } => "basis",
            Command::Expand { .. } => "expand",
            Command::HallPoly { .. } => "hall-poly",
            Command::HallMult { .. } => "hall-mult",
            Command::ToricCheck => "toric-check",
            Command::ChainSweep { .. } => "chain-sweep",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            let code = exit_code_for(&err);
            if code == 2 {
                eprintln!("error: {err}");
            } else {
                let doc = json!({
                    "passed": false,
                    "error": err.to_string(),
                    "failures": [err.to_string()],
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
            }
            ExitCode::from(code)
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::InvalidInput(_)
        | Error::DimensionMismatch(_)
        | Error::UnsupportedType(_)
        | Error::QuiverShape(_) => 2,
        _ => 1,
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let file_cfg = match &cli.globals.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let quiver = config::resolve_quiver(
        cli.globals.type_label.as_deref(),
        cli.globals.arrows.as_deref(),
        cli.globals.preset.as_deref(),
        &file_cfg.quiver,
    )?;
    let ctx = QuiverContext::with_config(quiver, file_cfg.engine_config())?;
    let out = cli
        .globals
        .out
        .clone()
        .or_else(|| file_cfg.out.as_ref().map(PathBuf::from));

    if cli.globals.format == "dot" {
        if let Command::MutateBfs = cli.command {
            let graph = exchange_graph(&ctx, &Seed::initial(&ctx))?;
            report::emit(&graph.to_dot(), out.as_deref())?;
            return Ok(0);
        }
        return Err(Error::InvalidInput(
            "--format dot applies only to mutate-bfs".into(),
        ));
    }

    let mut artifact = Artifact::new(cli.command.name(), &ctx);
    execute(&cli.command, &ctx, &mut artifact)?;
    report::emit(&artifact.render(), out.as_deref())?;
    Ok(if artifact.passed { 0 } else { 1 })
}

fn execute(cmd: &Command, ctx: &QuiverContext, art: &mut Artifact) -> Result<()> {
    match cmd {
        Command::Roots => cmd_roots(ctx, art),
        Command::Indecomposables => cmd_indecomposables(ctx, art),
        Command::ClusterVar { object } => cmd_cluster_var(ctx, art, object),
        Command::MutateBfs => cmd_mutate_bfs(ctx, art),
        Command::VerifyMult { pairs } => cmd_verify_mult(ctx, art, pairs),
        Command::VerifyDenominators => cmd_verify_denominators(ctx, art),
        Command::VerifyPositivity => cmd_verify_positivity(ctx, art),
        Command::Tilting => cmd_tilting(ctx, art),
        Command::FanCheck => cmd_fan_check(ctx, art),
        Command::Basis { box_radius } => cmd_basis(ctx, art, *box_radius),
        Command::Expand { objects } => cmd_expand(ctx, art, objects),
        Command::HallPoly {
            quotient,
            sub,
            total,
        } => cmd_hall_poly(ctx, art, quotient, sub, total),
        Command::HallMult {
            first,
            second,
            convention,
        } => cmd_hall_mult(ctx, art, first, second, convention),
        Command::ToricCheck => cmd_toric_check(ctx, art),
        Command::ChainSweep { bound } => cmd_chain_sweep(ctx, art, *bound),
    }
}

/// All indecomposable objects: one per positive root, one shifted projective
/// per vertex.
fn indec_objects(ctx: &QuiverContext) -> Vec<CCObject> {
    let mut out: Vec<CCObject> = ctx
        .roots
        .iter()
        .cloned()
        .map(CCObject::single_module)
        .collect();
    for i in 0..ctx.rank() {
        out.push(CCObject::single_sp(i));
    }
    out
}

fn cmd_roots(ctx: &QuiverContext, art: &mut Artifact) -> Result<()> {
    let roots: Vec<Value> = ctx
        .roots
        .iter()
        .enumerate()
        .map(|(k, r)| {
            json!({
                "index": k,
                "dim": r.0,
                "name": ctx.name_of_root(r),
            })
        })
        .collect();
    art.result = json!({ "count": roots.len(), "roots": roots });
    Ok(())
}

fn cmd_indecomposables(ctx: &QuiverContext, art: &mut Artifact) -> Result<()> {
    let objects: Vec<Value> = indec_objects(ctx)
        .iter()
        .map(|obj| {
            let kind = if obj.sp.is_empty() {
                "module"
            } else {
                "shifted_projective"
            };
            json!({ "name": object_name(ctx, obj), "kind": kind })
        })
        .collect();
    art.result = json!({ "count": objects.len(), "objects": objects });
    Ok(())
}

fn cmd_cluster_var(ctx: &QuiverContext, art: &mut Artifact, spec: &str) -> Result<()> {
    let obj = parse_object(ctx, spec)?;
    let x = x_of(ctx, &obj)?;
    art.result = json!({
        "object": object_name(ctx, &obj),
        "variable": x.to_json(),
        "denominator": denominator(&x).to_string(),
    });
    Ok(())
}

fn cmd_mutate_bfs(ctx: &QuiverContext, art: &mut Artifact) -> Result<()> {
    let graph = exchange_graph(ctx, &Seed::initial(ctx))?;
    art.result = json!({
        "clusters": graph.nodes.len(),
        "variables": graph.variables.len(),
        "edges": graph.edges.len(),
        "graph": graph.to_json(),
    });
    Ok(())
}

/// Extension strata for an ordered pair: exact point-count polynomials when
/// the counting kernel supports the pair, Euler characteristics otherwise.
fn strata_json(ctx: &QuiverContext, n: &CCObject, m: &CCObject) -> Result<Value> {
    match middle_terms(ctx, n, m) {
        Ok(tc) => {
            let classes: Vec<Value> = tc
                .by_middle
                .iter()
                .map(|(mid, poly)| {
                    json!({
                        "middle": object_name(ctx, mid),
                        "count_polynomial": poly.coeffs,
                    })
                })
                .collect();
            Ok(json!({
                "method": "counted",
                "ext_dim": tc.ext_dim,
                "classes": classes,
            }))
        }
        Err(Error::Unsupported(_)) => {
            let chi = middle_chi(ctx, n, m)?;
            let classes: Vec<Value> = chi
                .iter()
                .map(|(mid, c)| {
                    json!({
                        "middle": object_name(ctx, mid),
                        "euler_characteristic": c,
                    })
                })
                .collect();
            Ok(json!({ "method": "euler", "classes": classes }))
        }
        Err(e) => Err(e),
    }
}

fn cmd_verify_mult(ctx: &QuiverContext, art: &mut Artifact, pairs: &str) -> Result<()> {
    let mut entries = Vec::new();
    let mut checked = 0usize;
    if pairs == "all" {
        let objects = indec_objects(ctx);
        for n in &objects {
            for m in &objects {
                if ext1_dim_cc(ctx, n, m)? == 0 {
                    continue;
                }
                let rep = verify_multiplication(ctx, n, m)?;
                checked += 1;
                let entry = json!({
                    "first": object_name(ctx, n),
                    "second": object_name(ctx, m),
                    "ext_dim": rep.ext_dim,
                    "holds": rep.holds,
                    "strata": strata_json(ctx, n, m)?,
                });
                if !rep.holds {
                    art.fail(entry.clone());
                }
                entries.push(entry);
            }
        }
    } else {
        let (a, b) = pairs.split_once(';').ok_or_else(|| {
            Error::InvalidInput(format!(
                "--pairs expects \"all\" or \"OBJ;OBJ\", got '{pairs}'"
            ))
        })?;
        let n = parse_object(ctx, a)?;
        let m = parse_object(ctx, b)?;
        let rep = verify_multiplication(ctx, &n, &m)?;
        checked = 1;
        let entry = json!({
            "first": object_name(ctx, &n),
            "second": object_name(ctx, &m),
            "ext_dim": rep.ext_dim,
            "holds": rep.holds,
            "strata": strata_json(ctx, &n, &m)?,
            "strata_reversed": strata_json(ctx, &m, &n)?,
        });
        if !rep.holds {
            art.fail(entry.clone());
        }
        entries.push(entry);
    }
    art.result = json!({ "pairs_checked": checked, "pairs": entries });
    Ok(())
}

fn cmd_verify_denominators(ctx: &QuiverContext, art: &mut Artifact) -> Result<()> {
    let mut checked = 0usize;
    for root in &ctx.roots {
        let obj = CCObject::single_module(root.clone());
        let den = denominator(&x_of(ctx, &obj)?);
        checked += 1;
        if den != *root {
            art.fail(json!({
                "module": object_name(ctx, &obj),
                "expected": root.to_string(),
                "denominator": den.to_string(),
            }));
        }
    }
    art.result = json!({ "modules_checked": checked, "all_match": art.passed });
    Ok(())
}

fn cmd_verify_positivity(ctx: &QuiverContext, art: &mut Artifact) -> Result<()> {
    let zero = BigInt::from(0);
    let mut modules = 0usize;
    let mut coefficients = 0usize;
    let mut strata = 0usize;
    for root in &ctx.roots {
        let obj = CCObject::single_module(root.clone());
        let name = object_name(ctx, &obj);
        modules += 1;
        let x = x_of(ctx, &obj)?;
        for e in x.support() {
            coefficients += 1;
            if x.coeff(&e) <= zero {
                art.fail(json!({
                    "module": name,
                    "exponent": e.to_string(),
                    "coefficient": x.coeff(&e).to_string(),
                }));
            }
        }
        let t = obj.module.clone();
        for e in sub_dimension_vectors(root) {
            strata += 1;
            let chi = euler_char(ctx, &t, &e)?;
            if chi < 0 {
                art.fail(json!({
                    "module": name,
                    "sub_dimension": e.to_string(),
                    "euler_characteristic": chi,
                }));
            }
            if chi == 0 && !grassmann_poly(ctx, &t, &e)?.is_zero() {
                art.fail(json!({
                    "module": name,
                    "sub_dimension": e.to_string(),
                    "euler_characteristic": 0,
                    "note": "nonzero point counts with zero Euler characteristic",
                }));
            }
        }
    }
    art.result = json!({
        "modules_checked": modules,
        "coefficients_checked": coefficients,
        "gr_strata_checked": strata,
    });
    Ok(())
}

fn cmd_tilting(ctx: &QuiverContext, art: &mut Artifact) -> Result<()> {
    let objects = tilting_objects(ctx)?;
    let listed: Vec<Value> = objects
        .iter()
        .map(|t| {
            let summands: Vec<String> = t
                .summands()
                .into_iter()
                .map(|(part, _)| object_name(ctx, &part))
                .collect();
            json!(summands)
        })
        .collect();
    art.result = json!({ "count": objects.len(), "objects": listed });
    Ok(())
}

fn cmd_fan_check(ctx: &QuiverContext, art: &mut Artifact) -> Result<()> {
    let rep = fan_check(ctx, ctx.config.fan_samples, ctx.config.rng_seed)?;
    if rep.unique_cone_hits != rep.samples {
        art.fail(json!({
            "samples": rep.samples,
            "unique_cone_hits": rep.unique_cone_hits,
        }));
    }
    art.result = rep.to_json();
    Ok(())
}

fn cmd_basis(ctx: &QuiverContext, art: &mut Artifact, box_radius: i64) -> Result<()> {
    if box_radius < 0 {
        return Err(Error::InvalidInput(format!(
            "--box must be nonnegative, got {box_radius}"
        )));
    }
    let rank = ctx.rank();
    let width = (2 * box_radius + 1) as u128;
    let total = width.pow(rank as u32);
    let cap = ctx.config.expansion_cap as u128;
    if total > cap {
        return Err(Error::BudgetExceeded {
            what: "index-vector box scan".into(),
            estimate: total,
            cap,
        });
    }
    let mut entries = Vec::new();
    let mut resolved = 0usize;
    let mut v = vec![-box_radius; rank];
    'scan: loop {
        let lam = IntVec(v.clone());
        match cluster_core::category::exceptional_from_lambda(ctx, &lam) {
            Ok(obj) => {
                resolved += 1;
                entries.push(json!({
                    "lambda": lam.to_string(),
                    "object": object_name(ctx, &obj),
                }));
            }
            Err(Error::InvalidInput(_)) => {
                art.fail(json!({
                    "lambda": lam.to_string(),
                    "note": "no rigid object carries this index vector",
                }));
            }
            Err(e) => return Err(e),
        }
        // Odometer increment in lex order; falling off the end ends the scan.
        let mut i = rank;
        while i > 0 {
            i -= 1;
            if v[i] < box_radius {
                v[i] += 1;
                for w in v.iter_mut().skip(i + 1) {
                    *w = -box_radius;
                }
                continue 'scan;
            }
        }
        break;
    }
    art.result = json!({
        "box_radius": box_radius,
        "lattice_points": total as u64,
        "resolved": resolved,
        "basis": entries,
    });
    Ok(())
}

fn cmd_expand(ctx: &QuiverContext, art: &mut Artifact, specs: &[String]) -> Result<()> {
    let mut factors = Vec::new();
    let mut product = cluster_core::laurent::LaurentPoly::one(ctx.rank());
    for spec in specs {
        let obj = parse_object(ctx, spec)?;
        factors.push(object_name(ctx, &obj));
        product = product.mul(&x_of(ctx, &obj)?);
    }
    let expansion = expand_in_basis(ctx, &product)?;
    let terms: Vec<Value> = expansion
        .coeffs
        .iter()
        .map(|(obj, c)| json!({ "object": object_name(ctx, obj), "coeff": c.to_string() }))
        .collect();
    if !expansion.is_integral() {
        art.fail(json!({ "note": "non-integral expansion coefficients" }));
    }
    art.result = json!({
        "factors": factors,
        "terms": terms,
        "integral": expansion.is_integral(),
    });
    Ok(())
}

fn cmd_hall_poly(
    ctx: &QuiverContext,
    art: &mut Artifact,
    quotient: &str,
    sub: &str,
    total: &str,
) -> Result<()> {
    let m = parse_module(ctx, quotient)?;
    let n = parse_module(ctx, sub)?;
    let x = parse_module(ctx, total)?;
    let poly = hall_polynomial(ctx, &m, &n, &x)?;
    art.result = json!({
        "quotient": object_name(ctx, &CCObject { module: m, sp: Default::default() }),
        "sub": object_name(ctx, &CCObject { module: n, sp: Default::default() }),
        "total": object_name(ctx, &CCObject { module: x, sp: Default::default() }),
        "coefficients": poly.coeffs,
        "at_one": poly.at_one(),
    });
    Ok(())
}

fn cmd_hall_mult(
    ctx: &QuiverContext,
    art: &mut Artifact,
    first: &str,
    second: &str,
    convention: &str,
) -> Result<()> {
    let conv = match convention {
        "cluster-ext" => ChainConvention::ClusterExt,
        _ => ChainConvention::ModuleExt,
    };
    let a = parse_object(ctx, first)?;
    let b = parse_object(ctx, second)?;
    let expansion = hall_multiply(ctx, &a, &b, conv)?;
    let terms: Vec<Value> = expansion
        .coeffs
        .iter()
        .map(|(obj, c)| json!({ "object": object_name(ctx, obj), "coeff": c.to_string() }))
        .collect();
    art.result = json!({
        "first": object_name(ctx, &a),
        "second": object_name(ctx, &b),
        "convention": conv.label(),
        "terms": terms,
        "integral": expansion.is_integral(),
    });
    Ok(())
}

fn cmd_toric_check(ctx: &QuiverContext, art: &mut Artifact) -> Result<()> {
    let rep = toric_leading_check(ctx)?;
    if !rep.passed() {
        art.fail(rep.to_json());
    }
    art.result = rep.to_json();
    Ok(())
}

fn cmd_chain_sweep(ctx: &QuiverContext, art: &mut Artifact, bound: u32) -> Result<()> {
    let rep = chain_weight_sweep(ctx, bound)?;
    art.result = rep.to_json();
    Ok(())
}
