use std::collections::BTreeMap;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use unipoiss::algebra::{Field, FiniteAbelianGroup, TermOrder};
use unipoiss::bialgebra::{automorphism_group, reduced_delta, universal_bialgebra_with_order, verify_bialgebra, verify_comodule};
use unipoiss::gradings::{classify_gradings, enumerate_gradings, Grading};
use unipoiss::modules::{emit_u_presentation_in, emit_v_presentation, tensor_module, ModulePresentation};
use unipoiss::poisson::{verify_poisson, verify_poisson_module, PoissonStructure};
use unipoiss::universal::{eta, hom_poisson, universal_algebra, UniversalPresentation};

use crate::documents::{
    module_document, parse_a_module, parse_algebra, parse_algebra_unchecked, parse_module, AModuleDocument,
    AlgebraDocument, ModuleDocument,
};
use crate::error::{CliError, CliResult};
use crate::report::{failure_json, law_json, scalar_matrix, InputDigest, Report};

#[derive(Debug, Parser)]
#[command(name = "unipoiss", version, about = "Universal algebras of finite-dimensional Poisson algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Degrevlex,
    Lex,
}

impl From<OrderArg> for TermOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Degrevlex => TermOrder::DegRevLex,
            OrderArg::Lex => TermOrder::Lex,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AdjointArg {
    #[value(name = "U")]
    U,
    #[value(name = "V")]
    V,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Poisson algebra axioms.
    Verify { algebra: String },
    /// Presentation of the universal algebra of P and Q.
    Universal {
        p: String,
        q: String,
        #[arg(long)]
        unital: bool,
        #[arg(long, value_enum, default_value = "degrevlex")]
        order: OrderArg,
    },
    /// Comultiplication, counit and law checks for the universal bialgebra of P.
    Bialgebra {
        algebra: String,
        #[arg(long, value_enum, default_value = "degrevlex")]
        order: OrderArg,
    },
    /// All Poisson endomorphisms over a prime field.
    Endomorphisms {
        algebra: String,
        #[arg(long)]
        field: String,
    },
    /// The Poisson automorphism group over a prime field, with multiplication table.
    Automorphisms {
        algebra: String,
        #[arg(long)]
        field: String,
    },
    /// Gradings by a finite abelian group over a prime field.
    Gradings {
        algebra: String,
        /// e.g. Z2 or Z2xZ3
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
        /// Report orbit representatives under the automorphism group.
        #[arg(long)]
        classify: bool,
    },
    /// The induced Poisson Q-module on U ⊗ V.
    TensorModule {
        p: String,
        q: String,
        module_u: String,
        amodule_v: String,
    },
    /// Generators and relations of a left adjoint: `U P Q <module U> <module W>` or
    /// `V P Q <A-module V> <module W>`.
    Presentation {
        #[arg(value_enum)]
        kind: AdjointArg,
        p: String,
        q: String,
        first: String,
        w: String,
    },
}

/// The printed text and the process exit code of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let args: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { text: e.to_string(), code: 0 };
            }
            let mut report = Report::new(args.get(1).map_or("", |s| s.as_str()), args.iter().skip(2).cloned().collect());
            report.status = "input_error".into();
            report.failures.push(json!({ "message": e.to_string() }));
            return Outcome { text: report.to_text(), code: 2 };
        }
    };
    let name = args.get(1).cloned().unwrap_or_default();
    let mut report = Report::new(&name, args.iter().skip(2).cloned().collect());
    let code = match dispatch(cli.command, &mut report) {
        Ok(()) => 0,
        Err(e) => {
            report.status = e.status().into();
            match e {
                CliError::Verification { message, details } => {
                    report.failures.push(json!({ "message": message }));
                    report.failures.extend(details);
                    1
                }
                other => {
                    report.failures.push(json!({ "message": other.to_string() }));
                    other.exit_code()
                }
            }
        }
    };
    Outcome { text: report.to_text(), code }
}

fn load<T: DeserializeOwned>(report: &mut Report, path: &str) -> CliResult<T> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    report.inputs.push(InputDigest::new(path, &bytes));
    serde_json::from_slice(&bytes).map_err(|source| CliError::Json { path: path.into(), source })
}

fn load_algebra(report: &mut Report, path: &str) -> CliResult<PoissonStructure> {
    let doc: AlgebraDocument = load(report, path)?;
    parse_algebra(&doc)
}

fn same_field(p: &PoissonStructure, q: &PoissonStructure) -> CliResult<()> {
    if p.field() != q.field() {
        return Err(CliError::Usage(format!("algebras over different fields ({} and {})", p.field(), q.field())));
    }
    Ok(())
}

/// `F<p>` or `Fp<p>`.
pub fn parse_prime_field(text: &str) -> CliResult<Field> {
    let digits = text
        .strip_prefix("Fp")
        .or_else(|| text.strip_prefix('F'))
        .ok_or_else(|| CliError::Usage(format!("field must look like F3, got {text:?}")))?;
    let p: u32 = digits
        .parse()
        .map_err(|_| CliError::Usage(format!("field must look like F3, got {text:?}")))?;
    Ok(Field::prime(p)?)
}

fn dispatch(command: Command, report: &mut Report) -> CliResult<()> {
    match command {
        Command::Verify { algebra } => verify(report, &algebra),
        Command::Universal { p, q, unital, order } => universal(report, &p, &q, unital, order.into()),
        Command::Bialgebra { algebra, order } => bialgebra(report, &algebra, order.into()),
        Command::Endomorphisms { algebra, field } => endomorphisms(report, &algebra, &field),
        Command::Automorphisms { algebra, field } => automorphisms(report, &algebra, &field),
        Command::Gradings {
            algebra,
            group,
            field,
            classify,
        } => gradings(report, &algebra, &group, &field, classify),
        Command::TensorModule { p, q, module_u, amodule_v } => tensor(report, &p, &q, &module_u, &amodule_v),
        Command::Presentation { kind, p, q, first, w } => presentation(report, kind, &p, &q, &first, &w),
    }
}

fn verify(report: &mut Report, path: &str) -> CliResult<()> {
    let doc: AlgebraDocument = load(report, path)?;
    let p = parse_algebra_unchecked(&doc)?;
    report.output("dim", p.dim());
    report.output("field", p.field().to_string());
    let result = verify_poisson(&p);
    report.output("poisson", result.is_empty());
    if result.is_empty() {
        return Ok(());
    }
    Err(CliError::Verification {
        message: format!("not a Poisson algebra: {}", result.failures[0]),
        details: result.failures.iter().map(failure_json).collect(),
    })
}

fn presentation_outputs(report: &mut Report, u: &UniversalPresentation) {
    report.output("order", u.order().to_string());
    report.output("variables", u.ring().variables());
    report.output("generated", u.relations().generated);
    report.output(
        "relations",
        u.relations()
            .relations
            .iter()
            .map(|r| json!({ "label": r.label(), "polynomial": r.polynomial.to_string() }))
            .collect::<Vec<_>>(),
    );
    report.output(
        "unit_relations",
        u.unit_relations().iter().map(|r| r.polynomial.to_string()).collect::<Vec<_>>(),
    );
    report.output(
        "groebner_basis",
        u.ideal().basis().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
    );
    report.output(
        "surviving_generators",
        u.surviving_generators()
            .into_iter()
            .map(|(s, i)| u.generator_name(s, i).to_string())
            .collect::<Vec<_>>(),
    );
    let e = eta(u);
    let images: BTreeMap<String, String> = u
        .target()
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), e.image_string(i)))
        .collect();
    report.output("eta", images);
}

fn universal(report: &mut Report, p: &str, q: &str, unital: bool, order: TermOrder) -> CliResult<()> {
    let p = load_algebra(report, p)?;
    let q = load_algebra(report, q)?;
    same_field(&p, &q)?;
    let u = universal_algebra(&p, &q, unital, order)?;
    presentation_outputs(report, &u);
    Ok(())
}

fn bialgebra(report: &mut Report, path: &str, order: TermOrder) -> CliResult<()> {
    let p = load_algebra(report, path)?;
    let (u, c) = universal_bialgebra_with_order(&p, order)?;
    presentation_outputs(report, &u);
    let names = u.ring().variables().to_vec();
    let width = names.len();
    let reduced = reduced_delta(&u, &c)?;
    let delta: BTreeMap<String, String> = u
        .surviving_generators()
        .into_iter()
        .map(|(s, i)| {
            let k = u.var_index(s, i);
            (names[k].clone(), unipoiss::bialgebra::tensor_string(&reduced[k], &names, width))
        })
        .collect();
    report.output("delta", delta);
    report.output("counit", scalar_matrix(c.counit()));
    let counit_on_survivors: BTreeMap<String, String> = u
        .surviving_generators()
        .into_iter()
        .map(|(s, i)| (names[u.var_index(s, i)].clone(), c.counit().get(s, i).to_string()))
        .collect();
    report.output("counit_on_survivors", counit_on_survivors);
    let mut laws = verify_bialgebra(&u, &c)?;
    laws.failures.extend(verify_comodule(&u, &c)?.failures);
    report.output("laws_hold", laws.is_empty());
    if laws.is_empty() {
        return Ok(());
    }
    Err(CliError::Verification {
        message: format!("bialgebra laws fail: {}", laws.failures[0]),
        details: laws.failures.iter().map(law_json).collect(),
    })
}

fn endomorphisms(report: &mut Report, path: &str, field: &str) -> CliResult<()> {
    let p = load_algebra(report, path)?;
    let f = parse_prime_field(field)?;
    let maps = hom_poisson(&p, &p, f)?;
    report.output("field", f.to_string());
    report.output("count", maps.len());
    report.output("maps", maps.iter().map(|m| scalar_matrix(m.matrix())).collect::<Vec<_>>());
    Ok(())
}

fn automorphisms(report: &mut Report, path: &str, field: &str) -> CliResult<()> {
    let p = load_algebra(report, path)?;
    let f = parse_prime_field(field)?;
    let g = automorphism_group(&p, f)?;
    report.output("field", f.to_string());
    report.output("order", g.order());
    report.output("abelian", g.is_abelian());
    report.output("identity", g.identity());
    report.output(
        "elements",
        g.elements().iter().map(|e| scalar_matrix(e.matrix())).collect::<Vec<_>>(),
    );
    report.output(
        "element_orders",
        (0..g.order()).map(|a| g.element_order(a)).collect::<Vec<_>>(),
    );
    report.output("table", g.table());
    Ok(())
}

fn grading_json(g: &Grading) -> Value {
    let comps: Vec<Value> = g
        .components()
        .iter()
        .map(|(deg, basis)| {
            json!({
                "degree": deg.to_string(),
                "basis": basis.iter().map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        })
        .collect();
    Value::Array(comps)
}

fn gradings(report: &mut Report, path: &str, group: &str, field: &str, classify: bool) -> CliResult<()> {
    let p = load_algebra(report, path)?;
    let f = parse_prime_field(field)?;
    let g = FiniteAbelianGroup::parse(group)?;
    let all = enumerate_gradings(&p, &g, f)?;
    report.output("field", f.to_string());
    report.output("group", group);
    report.output("count", all.len());
    report.output("gradings", all.iter().map(grading_json).collect::<Vec<_>>());
    if classify {
        let classes = classify_gradings(&p, &g, f)?;
        report.output("class_count", classes.len());
        report.output(
            "classes",
            classes
                .iter()
                .map(|c| json!({ "representative": grading_json(&c.representative), "size": c.size }))
                .collect::<Vec<_>>(),
        );
    }
    Ok(())
}

fn tensor(report: &mut Report, p: &str, q: &str, u: &str, v: &str) -> CliResult<()> {
    let p = load_algebra(report, p)?;
    let q = load_algebra(report, q)?;
    same_field(&p, &q)?;
    let udoc: ModuleDocument = load(report, u)?;
    let vdoc: AModuleDocument = load(report, v)?;
    let a = universal_algebra(&p, &q, false, TermOrder::DegRevLex)?;
    let u = parse_module(&udoc, &p)?;
    let v = parse_a_module(&vdoc, &a)?;
    let t = tensor_module(&u, &v)?;
    report.output("module", module_document(&t));
    let axioms = verify_poisson_module(&t)?;
    report.output("poisson_module", axioms.is_empty());
    if axioms.is_empty() {
        return Ok(());
    }
    Err(CliError::Verification {
        message: format!("induced structure is not a Poisson module: {}", axioms.failures[0]),
        details: axioms.failures.iter().map(failure_json).collect(),
    })
}

fn presentation_json(report: &mut Report, pres: &ModulePresentation) {
    report.output("kind", pres.kind().to_string());
    report.output("generators", pres.generators());
    report.output("generated", pres.generated());
    report.output(
        "relations",
        pres.relations()
            .iter()
            .map(|r| {
                json!({
                    "family": r.family.to_string(),
                    "indices": r.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "relation": pres.relation_text(r),
                })
            })
            .collect::<Vec<_>>(),
    );
    report.output("structure_map", pres.structure_map());
}

fn presentation(report: &mut Report, kind: AdjointArg, p: &str, q: &str, first: &str, w: &str) -> CliResult<()> {
    let p = load_algebra(report, p)?;
    let q = load_algebra(report, q)?;
    same_field(&p, &q)?;
    let a = universal_algebra(&p, &q, false, TermOrder::DegRevLex)?;
    let pres = match kind {
        AdjointArg::U => {
            let udoc: ModuleDocument = load(report, first)?;
            let wdoc: ModuleDocument = load(report, w)?;
            let u = parse_module(&udoc, &p)?;
            let w = parse_module(&wdoc, &q)?;
            emit_u_presentation_in(&a, &u, &w)?
        }
        AdjointArg::V => {
            let vdoc: AModuleDocument = load(report, first)?;
            let wdoc: ModuleDocument = load(report, w)?;
            let v = parse_a_module(&vdoc, &a)?;
            let w = parse_module(&wdoc, &q)?;
            emit_v_presentation(&v, &w)?
        }
    };
    presentation_json(report, &pres);
    Ok(())
}
