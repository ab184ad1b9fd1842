//! Batch CLI over the enriched-order-theory engine: validation of JSON
//! documents, presheaf enumeration, ideal classification, cocompleteness,
//! continuity and algebraicity reports, the saturation harness, and
//! cross-validation against the classical poset oracle.
//!
//! Exit codes: 0 success, 1 negative verdict under `--assert`,
//! 2 validation failure, 3 parse failure, 4 enumeration cap exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use qdomain::category::QCategory;
use qdomain::continuity::{
    algebraic_equivalence, check_algebraic, check_continuous, phi_s, way_below,
};
use qdomain::error::{CapError, EngineError};
use qdomain::ideal::{check_cocomplete, membership, phi_category, saturation_harness, IdealClassId};
use qdomain::json::{
    dump_category, dump_distributor, dump_presheaf, dump_quantaloid, load_category,
    load_distributor, load_functor, load_presheaf, load_quantaloid, DocError, Report,
};
use qdomain::models;
use qdomain::oracle::{all_posets_up_to_iso, cross_validate, named_posets};
use qdomain::presheaf::{enumerate_presheaves, Presheaf, PresheafCategory, DEFAULT_ENUM_CAP};

#[derive(Parser)]
#[command(name = "qdomain", version, about = "finite enriched order theory, batch verdicts")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit the machine-readable JSON report instead of the table rendering
    #[arg(long, global = true)]
    json: bool,
    /// Exit with code 1 when the verdict is negative
    #[arg(long, global = true)]
    assert: bool,
    /// Enumeration cap (overrides QDOMAIN_CAP and the built-in default)
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Seed for sampled harness runs
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Load and validate JSON documents
    Validate {
        #[arg(long)]
        quantaloid: PathBuf,
        /// Category documents over the quantaloid (repeatable)
        #[arg(long)]
        category: Vec<PathBuf>,
        /// Functor document; first --category is the domain, last the codomain
        #[arg(long)]
        functor: Option<PathBuf>,
        /// Distributor document; first --category is the domain, last the codomain
        #[arg(long)]
        distributor: Option<PathBuf>,
    },
    /// Enumerate the presheaves of a fixture as JSON lines
    Enumerate {
        #[arg(long)]
        fixture: String,
        /// Restrict to one type (ambient object id)
        #[arg(long = "type")]
        typ: Option<String>,
    },
    /// Decide membership of one presheaf in an ideal class
    CheckIdeal {
        #[arg(long)]
        fixture: String,
        #[arg(long, value_parser = parse_class)]
        class: IdealClassId,
        /// Presheaf document; defaults to the empty presheaf at --type
        #[arg(long)]
        presheaf: Option<PathBuf>,
        #[arg(long = "type")]
        typ: Option<String>,
    },
    /// Build the subcategory of class members inside the presheaf category
    PhiCat {
        #[arg(long)]
        fixture: String,
        #[arg(long, value_parser = parse_class)]
        class: IdealClassId,
    },
    /// Decide whether every class ideal has a supremum
    CheckCocomplete {
        #[arg(long)]
        fixture: String,
        #[arg(long, value_parser = parse_class)]
        class: IdealClassId,
    },
    /// Compute the approximation (way-below) matrix
    WayBelow {
        #[arg(long)]
        fixture: String,
        #[arg(long, value_parser = parse_class)]
        class: IdealClassId,
    },
    /// Decide continuity for the class
    CheckContinuous {
        #[arg(long)]
        fixture: String,
        #[arg(long, value_parser = parse_class)]
        class: IdealClassId,
    },
    /// Decide algebraicity for the class
    CheckAlgebraic {
        #[arg(long)]
        fixture: String,
        #[arg(long, value_parser = parse_class)]
        class: IdealClassId,
    },
    /// Reconstruct the category from its compact part and check the round trip
    Equivalence {
        #[arg(long)]
        fixture: String,
        #[arg(long, value_parser = parse_class)]
        class: IdealClassId,
    },
    /// Closure evidence that a class behaves like a saturated class
    SaturationHarness {
        #[arg(long, value_parser = parse_class)]
        class: IdealClassId,
        /// Category fixtures to run over (repeatable)
        #[arg(long, default_values_t = ["fix-v".to_string(), "fix-2".to_string(), "fix-bg3cat".to_string()])]
        fixture: Vec<String>,
    },
    /// Compare the engine with the classical poset oracle
    CrossValidate {
        /// Exhaustive poset corpus up to this size (max 4), plus named posets
        #[arg(long, default_value_t = 4)]
        max_poset: usize,
        /// Restrict to one class; default runs all poset-compatible classes
        #[arg(long, value_parser = parse_class)]
        class: Option<IdealClassId>,
    },
    /// Fixture catalog
    Fixtures {
        #[command(subcommand)]
        cmd: FixturesCmd,
    },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// List all named fixtures with descriptions
    List,
}

fn parse_class(s: &str) -> Result<IdealClassId, String> {
    IdealClassId::parse(s).ok_or_else(|| {
        format!(
            "unknown class `{s}`; expected one of {}",
            IdealClassId::ALL_CLASSES.map(|c| c.name()).join("|")
        )
    })
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Failure {
        match e {
            DocError::Parse(_) => Failure::new(3, e.to_string()),
            DocError::Validation(_) => Failure::new(2, e.to_string()),
        }
    }
}

impl From<CapError> for Failure {
    fn from(e: CapError) -> Failure {
        Failure::new(4, e.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Failure {
        match e {
            EngineError::Cap(c) => c.into(),
            other => Failure::new(2, other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::new(2, e.to_string())
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    Ok(std::fs::read_to_string(path)?)
}

fn category_fixture(name: &str) -> Result<Arc<QCategory>, Failure> {
    models::fixture_category(name)
        .ok_or_else(|| Failure::new(2, format!("`{name}` is not a category fixture")))
}

fn class_context(
    name: &str,
    class: IdealClassId,
    cap: usize,
) -> Result<(Arc<QCategory>, qdomain::ideal::PhiCategory), Failure> {
    let cat = category_fixture(name)?;
    let pa = Arc::new(PresheafCategory::build(cat.clone(), cap)?);
    Ok((cat, phi_category(class, pa, cap)?))
}

fn element_ids(cat: &QCategory, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| cat.id(x).to_string()).collect()
}

fn run(cli: &Cli, cap: usize) -> Result<Report, Failure> {
    match &cli.cmd {
        Cmd::Validate { quantaloid, category, functor, distributor } => {
            let q = Arc::new(load_quantaloid(&read(quantaloid)?)?);
            let mut report = Report::new("validate");
            let mut cats = Vec::new();
            for path in category {
                cats.push(Arc::new(load_category(&read(path)?, q.clone())?));
            }
            let endpoints = || -> Result<(Arc<QCategory>, Arc<QCategory>), Failure> {
                match (cats.first(), cats.last()) {
                    (Some(d), Some(c)) => Ok((d.clone(), c.clone())),
                    _ => Err(Failure::new(2, "--functor/--distributor need at least one --category")),
                }
            };
            if let Some(path) = functor {
                let (d, c) = endpoints()?;
                load_functor(&read(path)?, d, c)?;
            }
            if let Some(path) = distributor {
                let (d, c) = endpoints()?;
                load_distributor(&read(path)?, d, c)?;
            }
            report.verdict = Some(true);
            report.disclosures.extend(q.disclosures().iter().cloned());
            report.data = json!({
                "objects": q.objects().len(),
                "categories": cats.iter().map(|c| c.len()).collect::<Vec<_>>(),
            });
            Ok(report)
        }
        Cmd::Enumerate { fixture, typ } => {
            let cat = category_fixture(fixture)?;
            let q = cat.ambient();
            let types: Vec<usize> = match typ {
                Some(t) => vec![q
                    .object_index(t)
                    .ok_or_else(|| Failure::new(2, format!("unknown type `{t}`")))?],
                None => (0..q.objects().len()).collect(),
            };
            let mut count = 0usize;
            for t in types {
                for mu in enumerate_presheaves(&cat, t, cap)? {
                    println!("{}", serde_json::to_string(&dump_presheaf(&cat, &mu)).unwrap());
                    count += 1;
                }
            }
            let mut report = Report::new("enumerate");
            report.verdict = Some(true);
            report.data = json!({"count": count});
            Ok(report)
        }
        Cmd::CheckIdeal { fixture, class, presheaf, typ } => {
            let cat = category_fixture(fixture)?;
            let q = cat.ambient();
            let mu: Presheaf = match (presheaf, typ) {
                (Some(path), _) => load_presheaf(&read(path)?, &cat)?,
                (None, Some(t)) => {
                    let ti = q
                        .object_index(t)
                        .ok_or_else(|| Failure::new(2, format!("unknown type `{t}`")))?;
                    let values = (0..cat.len())
                        .map(|x| q.hom(cat.typ(x), ti).bottom())
                        .collect();
                    Presheaf::validate(&cat, ti, values)
                        .map_err(|e| Failure::new(2, e.to_string()))?
                }
                (None, None) => return Err(Failure::new(2, "--presheaf or --type required")),
            };
            let pa = PresheafCategory::build(cat.clone(), cap)?;
            let verdict = membership(*class, &pa, &mu, cap)?;
            let mut report = Report::new("check-ideal");
            report.verdict = Some(verdict);
            report.data = json!({
                "class": class.name(),
                "presheaf": dump_presheaf(&cat, &mu),
            });
            Ok(report)
        }
        Cmd::PhiCat { fixture, class } => {
            let (cat, phi) = class_context(fixture, *class, cap)?;
            let mut report = Report::new("phi-cat");
            report.verdict = Some(true);
            report.data = json!({
                "class": class.name(),
                "size": phi.len(),
                "members": phi
                    .ideals()
                    .map(|mu| dump_presheaf(&cat, mu))
                    .collect::<Vec<_>>(),
            });
            Ok(report)
        }
        Cmd::CheckCocomplete { fixture, class } => {
            let (cat, phi) = class_context(fixture, *class, cap)?;
            let r = check_cocomplete(&phi);
            let mut report = Report::new("check-cocomplete");
            report.verdict = Some(r.verdict);
            for &m in &r.missing {
                report.witnesses.push(format!(
                    "no supremum for ideal {}",
                    serde_json::to_string(&dump_presheaf(&cat, phi.ideal(m))).unwrap()
                ));
            }
            report.data = json!({
                "class": class.name(),
                "sups": r
                    .sup_table
                    .iter()
                    .map(|s| s.canonical.map(|c| cat.id(c).to_string()))
                    .collect::<Vec<_>>(),
                "adjunction": r.adjunction_ok,
            });
            Ok(report)
        }
        Cmd::WayBelow { fixture, class } => {
            let (_, phi) = class_context(fixture, *class, cap)?;
            let phis = phi_s(&phi).map_err(EngineError::from)?;
            let wb = way_below(&phis).map_err(EngineError::from)?;
            let mut report = Report::new("way-below");
            report.verdict = Some(true);
            report.data = json!({
                "class": class.name(),
                "matrix": dump_distributor(&wb)["matrix"],
            });
            Ok(report)
        }
        Cmd::CheckContinuous { fixture, class } => {
            let (cat, phi) = class_context(fixture, *class, cap)?;
            let phis = phi_s(&phi).map_err(EngineError::from)?;
            let r = check_continuous(&phis, cap)?;
            let mut report = Report::new("check-continuous");
            report.verdict = Some(r.verdict);
            for (x, pe) in r.per_element.iter().enumerate() {
                if !(pe.in_phi_s && pe.sup_ok) {
                    report.witnesses.push(format!(
                        "element `{}`: approximating ideal {}",
                        cat.id(x),
                        if pe.in_phi_s { "has the wrong supremum" } else { "is not a class ideal with a supremum" }
                    ));
                }
            }
            report.data = json!({
                "class": class.name(),
                "approximating": r.approx_ok,
                "adjunction": r.adjunction_ok,
            });
            Ok(report)
        }
        Cmd::CheckAlgebraic { fixture, class } => {
            let (cat, phi) = class_context(fixture, *class, cap)?;
            let phis = phi_s(&phi).map_err(EngineError::from)?;
            let r = check_algebraic(&phis, cap)?;
            let mut report = Report::new("check-algebraic");
            report.verdict = Some(r.verdict);
            if !r.verdict {
                report.witnesses.push(format!(
                    "compact elements {:?} do not generate every element",
                    element_ids(&cat, &r.compacts)
                ));
            }
            report.data = json!({
                "class": class.name(),
                "compacts": element_ids(&cat, &r.compacts),
                "continuous": r.continuous,
                "compactGeneration": r.s_equals_fdown,
            });
            Ok(report)
        }
        Cmd::Equivalence { fixture, class } => {
            let (cat, phi) = class_context(fixture, *class, cap)?;
            let phis = phi_s(&phi).map_err(EngineError::from)?;
            let mut report = Report::new("equivalence");
            match algebraic_equivalence(&phis, cap) {
                Ok(eq) => {
                    report.verdict = Some(eq.round_trip_iso && eq.ideal_round_trip_exact);
                    report.data = json!({
                        "class": class.name(),
                        "compactPart": eq.a_c.ids(),
                        "roundTripIso": eq.round_trip_iso,
                        "idealRoundTripExact": eq.ideal_round_trip_exact,
                    });
                }
                Err(EngineError::PreconditionFailed(msg)) => {
                    report.verdict = Some(false);
                    report.witnesses.push(msg);
                    report.data = json!({"class": class.name()});
                }
                Err(e) => return Err(e.into()),
            }
            let _ = cat;
            Ok(report)
        }
        Cmd::SaturationHarness { class, fixture } => {
            let mut fixtures = Vec::new();
            for name in fixture {
                fixtures.push((name.clone(), category_fixture(name)?));
            }
            let r = saturation_harness(*class, &fixtures, cli.seed, cap)?;
            let mut report = Report::new("saturation-harness");
            report.verdict = Some(r.pass());
            for c in &r.checks {
                if let Some(w) = &c.witness {
                    report.witnesses.push(format!("{}: {w}", c.name));
                }
                if c.sampled {
                    report
                        .disclosures
                        .push(format!("{}: sampled {} candidates", c.name, c.cases));
                }
            }
            report.data = json!({
                "class": class.name(),
                "checks": r
                    .checks
                    .iter()
                    .map(|c| json!({"name": c.name, "pass": c.pass, "cases": c.cases, "sampled": c.sampled}))
                    .collect::<Vec<_>>(),
            });
            Ok(report)
        }
        Cmd::CrossValidate { max_poset, class } => {
            if *max_poset > 4 {
                return Err(Failure::new(2, "--max-poset is limited to 4"));
            }
            let classes = match class {
                Some(c) => vec![*c],
                None => vec![
                    IdealClassId::InhabitedFlat,
                    IdealClassId::InhabitedIrreducible,
                    IdealClassId::ConicalIdeal,
                ],
            };
            let mut report = Report::new("cross-validate");
            let mut corpus: Vec<(String, qdomain::category::Preorder)> = Vec::new();
            for n in 1..=*max_poset {
                for (i, p) in all_posets_up_to_iso(n).into_iter().enumerate() {
                    corpus.push((format!("poset-{n}-{i}"), p));
                }
            }
            corpus.extend(named_posets());
            let mut checked = 0usize;
            for class in &classes {
                for (name, p) in &corpus {
                    let cv = cross_validate(p, *class, cap)?;
                    checked += 1;
                    for m in &cv.mismatches {
                        report.witnesses.push(format!("{name} [{}]: {m}", class.name()));
                    }
                }
            }
            report.verdict = Some(report.witnesses.is_empty());
            report.data = json!({
                "classes": classes.iter().map(|c| c.name()).collect::<Vec<_>>(),
                "posets": corpus.len(),
                "comparisons": checked,
            });
            Ok(report)
        }
        Cmd::Fixtures { cmd: FixturesCmd::List } => {
            let mut report = Report::new("fixtures list");
            report.verdict = Some(true);
            report.data = json!(models::catalog()
                .iter()
                .map(|e| {
                    let kind = match &e.fixture {
                        models::Fixture::Category(c) => json!({
                            "kind": "category",
                            "document": dump_category(c),
                        }),
                        models::Fixture::Quantale(q) => json!({
                            "kind": "quantale",
                            "document": dump_quantaloid(q.suspension()),
                        }),
                        models::Fixture::Quantaloid(q) => json!({
                            "kind": "quantaloid",
                            "document": dump_quantaloid(q),
                        }),
                    };
                    json!({"name": e.name, "description": e.description, "fixture": kind})
                })
                .collect::<Vec<_>>());
            Ok(report)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = cli
        .cap
        .or_else(|| std::env::var("QDOMAIN_CAP").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(DEFAULT_ENUM_CAP);
    let started = Instant::now();
    match run(&cli, cap) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_table());
                println!("time       {:.1?}", started.elapsed());
            }
            if cli.assert && report.verdict == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
