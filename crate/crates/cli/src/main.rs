//! `torsite`: command-line front end. Reports go to stdout (or `--output`)
//! as JSON; diagnostics go to stderr.
//!
//! Exit codes: 0 pass, 1 predicate false, 2 input error, 3 budget exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use torsite_core::algebra::{validate_algebra, validate_presheaf, AlgebraPresheaf};
use torsite_core::fincat::FiniteCategory;
use torsite_core::grskew::{is_linear_topology, linearize_topology, GrCategory, SkewAlgebra};
use torsite_core::modcat::{describe, describe_sieve, is_sheaf, is_torsion, perpendicular_check, psi_to_gr, validate_module_presheaf};
use torsite_core::recollement::verify_recollement;
use torsite_core::report::ValidationReport;
use torsite_core::topology::{enumerate_topologies, is_topology, matching_subcategory, GrothendieckTopology};
use torsite_core::torsion::classify;
use torsite_core::{acceptance, io, Budget, Error};

#[derive(Parser)]
#[command(name = "torsite", version, about = "Sheaves, torsion theories and recollements over ringed finite sites")]
struct Cli {
    /// Largest module dimension in enumerated universes.
    #[arg(long, global = true, default_value_t = 3)]
    dim_bound: usize,

    /// Cap on the size of any brute-force enumeration.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_LIMIT)]
    budget: u64,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a category, presheaf, topology or module file.
    ///
    /// Topology files need the category or presheaf as CONTEXT; module
    /// files need the presheaf.
    Validate { file: PathBuf, context: Option<PathBuf> },
    /// Enumerate every Grothendieck topology on a category (or a presheaf's category).
    Topologies { file: PathBuf },
    /// Emit the skew category algebra of a presheaf.
    Skew { presheaf: PathBuf },
    /// Emit hom ranks and the composition table of the linear Grothendieck construction.
    Gr { presheaf: PathBuf },
    /// Emit the linear topology induced by a Grothendieck topology.
    Linearize { presheaf: PathBuf, topology: PathBuf },
    /// Decide whether a module is a sheaf; exit 1 if not.
    CheckSheaf { presheaf: PathBuf, topology: PathBuf, module: PathBuf },
    /// Decide whether a module is torsion; exit 1 if not.
    CheckTorsion { presheaf: PathBuf, topology: PathBuf, module: PathBuf },
    /// Classify hereditary torsion pairs, TTF triples and split TTF triples.
    Classify { presheaf: PathBuf, topology: PathBuf },
    /// Verify the recollement along an idempotent of the skew algebra.
    Recollement {
        presheaf: PathBuf,
        /// Coordinates (`1,0,0`) or basis names (`1@id1 + 1@id2`).
        #[arg(long)]
        idempotent: String,
    },
    /// Run the acceptance suite.
    Selftest,
}

/// A finished command: the report and whether its predicate held.
struct Outcome {
    report: Value,
    pass: bool,
}

fn ok(report: Value) -> Outcome {
    Outcome { report, pass: true }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget::new(cli.budget);
    let outcome = match run(&cli.command, cli.dim_bound, budget) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("torsite: {e}");
            return ExitCode::from(match e {
                Error::BudgetExceeded { .. } => 3,
                _ => 2,
            });
        }
    };
    let text = match io::to_pretty(&outcome.report) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("torsite: {e}");
            return ExitCode::from(2);
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("torsite: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(if outcome.pass { 0 } else { 1 })
}

fn run(command: &Command, bound: usize, budget: Budget) -> torsite_core::Result<Outcome> {
    match command {
        Command::Validate { file, context } => validate(file, context.as_deref()),
        Command::Topologies { file } => topologies(file, budget),
        Command::Skew { presheaf } => skew(presheaf),
        Command::Gr { presheaf } => gr(presheaf),
        Command::Linearize { presheaf, topology } => linearize(presheaf, topology, budget),
        Command::CheckSheaf { presheaf, topology, module } => check_module(presheaf, topology, module, budget, false),
        Command::CheckTorsion { presheaf, topology, module } => check_module(presheaf, topology, module, budget, true),
        Command::Classify { presheaf, topology } => {
            let r = load_presheaf(presheaf)?;
            let j = load_topology(r.category(), topology)?;
            let report = classify(&r, &j, bound, budget)?;
            let pass = report.verified;
            Ok(Outcome { report: serde_json::to_value(report)?, pass })
        }
        Command::Recollement { presheaf, idempotent } => {
            let r = load_presheaf(presheaf)?;
            let s = SkewAlgebra::build(&r)?;
            let e = io::parse_element(s.algebra(), idempotent)?;
            let report = verify_recollement(s.algebra(), &e, bound, budget)?;
            let pass = report.passes;
            let mut v = serde_json::to_value(report)?;
            v["idempotent_names"] = json!(describe(&s, &e));
            Ok(Outcome { report: v, pass })
        }
        Command::Selftest => {
            let results = acceptance::run_all(budget);
            for r in &results {
                eprintln!("{}", r.line());
            }
            let pass = results.iter().all(|r| r.passed);
            Ok(Outcome {
                report: json!({"passed": pass, "criteria": results}),
                pass,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Category,
    Presheaf,
    Topology,
    Module,
}

/// File kind from its `schema`, or from its keys when there is none.
fn kind_of(v: &Value) -> Kind {
    match io::schema_of(v) {
        Some(io::CATEGORY_SCHEMA) => Kind::Category,
        Some(io::PRESHEAF_SCHEMA) => Kind::Presheaf,
        Some(io::TOPOLOGY_SCHEMA) => Kind::Topology,
        Some(io::MODULE_SCHEMA) => Kind::Module,
        _ if v.get("category").is_some() => Kind::Presheaf,
        _ if v.get("morphisms").is_some_and(Value::is_array) => Kind::Category,
        _ if v.get("objects").is_some_and(Value::is_object) => Kind::Module,
        _ => Kind::Topology,
    }
}

fn load_presheaf(path: &Path) -> torsite_core::Result<AlgebraPresheaf> {
    let r = io::parse_presheaf(&io::read_json(path)?)?;
    validate_presheaf(&r).into_result("presheaf of algebras")?;
    Ok(r)
}

/// A category, read from a category file or a presheaf file.
fn load_category(path: &Path) -> torsite_core::Result<FiniteCategory> {
    let v = io::read_json(path)?;
    match kind_of(&v) {
        Kind::Presheaf => Ok(io::parse_presheaf(&v)?.category().clone()),
        _ => io::parse_category(&v),
    }
}

fn load_topology(cat: &FiniteCategory, path: &Path) -> torsite_core::Result<GrothendieckTopology> {
    let j = io::parse_topology(cat, &io::read_json(path)?)?;
    is_topology(cat, &j).into_result("Grothendieck topology")?;
    Ok(j)
}

fn validation(kind: &str, report: ValidationReport) -> Outcome {
    Outcome {
        pass: report.passes(),
        report: json!({"kind": kind, "valid": report.passes(), "violations": report.violations}),
    }
}

fn validate(file: &Path, context: Option<&Path>) -> torsite_core::Result<Outcome> {
    let v = io::read_json(file)?;
    let need = |what: &str| Error::Format(format!("validating a {what} file needs a context file"));
    match kind_of(&v) {
        Kind::Category => match io::parse_category(&v) {
            Ok(_) => Ok(validation("category", ValidationReport::new())),
            Err(Error::Invalid { report, .. }) => Ok(validation("category", report)),
            Err(e) => Err(e),
        },
        Kind::Presheaf => {
            let r = io::parse_presheaf(&v)?;
            let mut report = ValidationReport::new();
            for a in r.algebras() {
                report.extend(validate_algebra(a));
            }
            report.extend(validate_presheaf(&r));
            Ok(validation("presheaf", report))
        }
        Kind::Topology => {
            let cat = load_category(context.ok_or_else(|| need("topology"))?)?;
            let j = io::parse_topology(&cat, &v)?;
            Ok(validation("topology", is_topology(&cat, &j)))
        }
        Kind::Module => {
            let r = load_presheaf(context.ok_or_else(|| need("module"))?)?;
            let m = io::parse_module(&r, &v)?;
            Ok(validation("module", validate_module_presheaf(&r, &m)))
        }
    }
}

fn topologies(file: &Path, budget: Budget) -> torsite_core::Result<Outcome> {
    let cat = load_category(file)?;
    let list = enumerate_topologies(&cat, budget)?;
    let items: Vec<Value> = list
        .iter()
        .map(|j| {
            let d = matching_subcategory(&cat, j).ok().flatten();
            json!({
                "covers": io::topology_covers_json(&cat, j),
                "subcategory": d.map(|d| d.object_names().iter().map(|s| s.to_string()).collect::<Vec<_>>()),
            })
        })
        .collect();
    Ok(ok(json!({"count": list.len(), "topologies": items})))
}

fn skew(path: &Path) -> torsite_core::Result<Outcome> {
    let s = SkewAlgebra::build(&load_presheaf(path)?)?;
    let mut v = io::algebra_to_json(s.algebra());
    v["dim"] = json!(s.dim());
    Ok(ok(v))
}

fn gr(path: &Path) -> torsite_core::Result<Outcome> {
    let r = load_presheaf(path)?;
    let g = GrCategory::build(&r)?;
    let cat = r.category();
    let n = cat.num_objects();
    let basis_names = |x: usize, y: usize| -> Vec<String> {
        g.hom_basis(x, y)
            .iter()
            .map(|&(f, i)| format!("{}@{}", r.algebra(x).basis_names()[i], cat.morphism_name(f)))
            .collect()
    };
    let describe_in = |x: usize, z: usize, v: &[u32]| -> String {
        let names = basis_names(x, z);
        let terms: Vec<String> = v
            .iter()
            .zip(&names)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, name)| if c == 1 { name.clone() } else { format!("{c}·{name}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    };
    let mut compose = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (dxy, dyz) = (g.hom_rank(x, y), g.hom_rank(y, z));
                for (a, fname) in basis_names(x, y).iter().enumerate() {
                    for (b, gname) in basis_names(y, z).iter().enumerate() {
                        let mut r_vec = vec![0; dxy];
                        r_vec[a] = 1;
                        let mut s_vec = vec![0; dyz];
                        s_vec[b] = 1;
                        let c = g.compose(x, y, z, &s_vec, &r_vec);
                        compose.push(json!([gname, fname, describe_in(x, z, &c)]));
                    }
                }
            }
        }
    }
    let ranks: serde_json::Map<String, Value> = (0..n)
        .map(|x| {
            let row: serde_json::Map<String, Value> = (0..n)
                .map(|y| (cat.object_name(y).to_string(), json!(g.hom_rank(x, y))))
                .collect();
            (cat.object_name(x).to_string(), Value::Object(row))
        })
        .collect();
    Ok(ok(json!({"objects": cat.objects(), "hom_ranks": ranks, "compose": compose})))
}

fn linearize(presheaf: &Path, topology: &Path, budget: Budget) -> torsite_core::Result<Outcome> {
    let r = load_presheaf(presheaf)?;
    let j = load_topology(r.category(), topology)?;
    let s = SkewAlgebra::build(&r)?;
    let lt = linearize_topology(&s, &j, budget)?;
    let report = is_linear_topology(&s, &lt, budget)?;
    let covers: serde_json::Map<String, Value> = (0..s.num_objects())
        .map(|x| {
            let sieves: Vec<Vec<String>> = lt.covers(x).iter().map(|t| describe_sieve(&s, t)).collect();
            (r.category().object_name(x).to_string(), json!(sieves))
        })
        .collect();
    Ok(Outcome {
        pass: report.passes(),
        report: json!({"covers": covers, "is_linear_topology": report.passes(), "violations": report.violations}),
    })
}

fn check_module(presheaf: &Path, topology: &Path, module: &Path, budget: Budget, torsion: bool) -> torsite_core::Result<Outcome> {
    let r = load_presheaf(presheaf)?;
    let j = load_topology(r.category(), topology)?;
    let m = io::parse_module(&r, &io::read_json(module)?)?;
    validate_module_presheaf(&r, &m).into_result("module presheaf")?;
    let s = SkewAlgebra::build(&r)?;
    let lt = linearize_topology(&s, &j, budget)?;
    let v = psi_to_gr(&s, &m)?;
    if torsion {
        let w = is_torsion(&s, &v, &lt, budget)?;
        Ok(Outcome {
            pass: w.is_torsion,
            report: serde_json::to_value(w)?,
        })
    } else {
        let w = is_sheaf(&s, &v, &lt);
        let p = perpendicular_check(&s, &v, &lt)?;
        Ok(Outcome {
            pass: w.is_sheaf,
            report: json!({"is_sheaf": w.is_sheaf, "failures": w.failures, "perpendicular": p}),
        })
    }
}
