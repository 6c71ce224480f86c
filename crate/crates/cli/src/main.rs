use std::path::{Path, PathBuf};
use std::process::ExitCode;

use biunitary::biunitarity::{hadamard_rotation_check, qls_rotation_check, ueb_rotation_check};
use biunitary::equivalence::{commutativity_graph, hadamard_equivalent, ueb_normalize};
use biunitary::io::{self, Document};
use biunitary::reproduction::{embedded_fixture, load_fixture, reproduce_appendix_a};
use biunitary::samples::twisted_fourier;
use biunitary::structures::{cyclic_latin, fourier, pauli_ueb, qls_from_latin, Structure};
use biunitary::{BiunitaryReport, ControlledFamily, Error, Tolerance};
use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

mod construct;

/// Build and check Hadamard matrices, quantum Latin squares and unitary error bases.
#[derive(Debug, Parser)]
#[command(name = "biunitary", version)]
struct Cli {
    /// Tolerance for verifying defining equations.
    #[arg(long, global = true, default_value_t = 1e-10, value_parser = positive)]
    tol: f64,

    /// Tolerance for entrywise comparisons and equivalence witnesses.
    #[arg(long, global = true, default_value_t = 1e-12, value_parser = positive)]
    compare_tol: f64,

    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("{s:?} is not a positive number")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Hadamard,
    Qls,
    Ueb,
    Latin,
    Controlled,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Hadamard => "hadamard",
            Kind::Qls => "qls",
            Kind::Ueb => "ueb",
            Kind::Latin => "latin",
            Kind::Controlled => "controlled",
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a structure against its defining equations and its rotation form.
    Verify { kind: Kind, file: PathBuf },

    /// Run a construction on input files and write the result.
    Construct {
        #[command(subcommand)]
        construction: construct::Construction,
    },

    /// Decide equivalence of two structures.
    Equiv {
        #[command(subcommand)]
        what: EquivCommand,
    },

    /// Graphs derived from an error basis.
    Graph {
        #[command(subcommand)]
        what: GraphCommand,
    },

    /// Left-multiply a basis by the adjoint of one element so that it becomes the identity.
    Normalize {
        file: PathBuf,
        /// 1-based label of the pivot element, e.g. `1,1,1`.
        #[arg(long, value_delimiter = ',', required = true)]
        pivot: Vec<usize>,
        /// Output file; the document is printed when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Rebuild the tabulated eight-dimensional basis and run both obstruction checks.
    Reproduce {
        #[command(subcommand)]
        what: ReproduceCommand,
    },

    /// Write a standard structure to a file.
    Generate {
        #[arg(value_enum)]
        which: Generator,
        n: usize,
        /// Wrap the result in a constant family with these control dimensions.
        #[arg(long, value_delimiter = ',')]
        controls: Option<Vec<usize>>,
        /// Seed for randomly twisted structures.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum EquivCommand {
    /// Search for permutations and phases mapping the first matrix to the second.
    Hadamard { a: PathBuf, b: PathBuf },
}

#[derive(Debug, Subcommand)]
enum GraphCommand {
    /// Commutativity graph of an error basis.
    Commute {
        file: PathBuf,
        /// Also report a maximum clique.
        #[arg(long)]
        max_clique: bool,
        /// Drop elements proportional to the identity.
        #[arg(long)]
        exclude_identity: bool,
    },
}

#[derive(Debug, Subcommand)]
enum ReproduceCommand {
    /// The 64-element basis in dimension eight.
    #[command(name = "appendix-a")]
    AppendixA {
        /// Fixture to compare against instead of the embedded one.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Generator {
    /// Fourier matrix.
    Fourier,
    /// Fourier matrix with random row and column phases.
    TwistedFourier,
    /// Cyclic Latin square.
    Latin,
    /// Quantum Latin square of basis vectors from the cyclic Latin square.
    Qls,
    /// Shift-and-clock error basis.
    Pauli,
}

/// A finished command: text for humans, JSON for machines, and whether the
/// domain check succeeded.
pub(crate) struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    pub(crate) fn new(text: String, json: Value, ok: bool) -> Self {
        Self { text, json, ok }
    }
}

pub(crate) fn load(path: &Path) -> biunitary::Result<Document> {
    io::load(path)
}

fn report_text(label: &str, r: &BiunitaryReport) -> String {
    let mut s = format!("{label}: {}\n", r.summary());
    for (axiom, res) in &r.detail {
        s.push_str(&format!("  {axiom}: {res:.3e}\n"));
    }
    s
}

fn verify(kind: Kind, file: &Path, tol: &Tolerance) -> biunitary::Result<Outcome> {
    let doc = load(file)?;
    if doc.kind() != kind.name() {
        return Err(Error::InvalidInput(format!(
            "{} holds a {} document, not {}",
            file.display(),
            doc.kind(),
            kind.name()
        )));
    }
    let report = doc.verify(tol)?;
    let rotation = match &doc {
        Document::Hadamard(m) => Some(hadamard_rotation_check(m, tol)),
        Document::Qls(g) => Some(qls_rotation_check(g, tol)),
        Document::Ueb { elements, .. } => Some(ueb_rotation_check(elements, tol)),
        Document::Latin(_) => Some(qls_rotation_check(&doc.qls(tol)?.to_grid(), tol)),
        Document::Controlled { .. } => None,
    };
    let ok = report.passed() && rotation.as_ref().is_none_or(BiunitaryReport::passed);
    let mut text = format!("{}\n", report.summary());
    text.push_str(&report_text("equations", &report));
    if let Some(r) = &rotation {
        text.push_str(&report_text("rotation", r));
    }
    let json = json!({ "kind": kind.name(), "passed": ok, "equations": report, "rotation": rotation });
    Ok(Outcome::new(text.trim_end().to_string(), json, ok))
}

fn equiv_hadamard(a: &Path, b: &Path, tol: &Tolerance) -> biunitary::Result<Outcome> {
    let h = load(a)?.hadamard(tol)?;
    let w = load(b)?.hadamard(tol)?;
    let found = hadamard_equivalent(h.matrix(), w.matrix(), tol)?;
    Ok(match found {
        Some(witness) => {
            let one_based = |p: &[usize]| p.iter().map(|i| i + 1).collect::<Vec<_>>();
            let phases = |z: &[biunitary::C64]| z.iter().map(|c| format!("{:.6}{:+.6}i", c.re, c.im)).collect::<Vec<_>>();
            let text = format!(
                "equivalent\n  row permutation: {:?}\n  column permutation: {:?}\n  row phases: [{}]\n  column phases: [{}]",
                one_based(&witness.row_perm),
                one_based(&witness.col_perm),
                phases(&witness.row_phases).join(", "),
                phases(&witness.col_phases).join(", "),
            );
            let json = json!({
                "equivalent": true,
                "row_perm": one_based(&witness.row_perm),
                "col_perm": one_based(&witness.col_perm),
                "row_phases": witness.row_phases,
                "col_phases": witness.col_phases,
            });
            Outcome::new(text, json, true)
        }
        None => Outcome::new("not equivalent".into(), json!({ "equivalent": false }), false),
    })
}

fn graph_commute(file: &Path, max_clique: bool, exclude_identity: bool, tol: &Tolerance) -> biunitary::Result<Outcome> {
    let u = load(file)?.ueb(tol)?;
    let graph = commutativity_graph(&u, tol, exclude_identity);
    let edges: Vec<[String; 2]> = graph
        .edges()
        .into_iter()
        .map(|(i, j)| [graph.labels[i].clone(), graph.labels[j].clone()])
        .collect();
    let mut text = format!("{} vertices, {} edges\n", graph.len(), edges.len());
    for [a, b] in &edges {
        text.push_str(&format!("{a} {b}\n"));
    }
    let mut json = json!({ "vertices": graph.labels, "edges": edges, "identity_excluded": exclude_identity });
    if max_clique {
        let clique: Vec<String> = graph.max_clique().iter().map(|&v| graph.labels[v].clone()).collect();
        text.push_str(&format!("max clique: {} {{{}}}\n", clique.len(), clique.join(", ")));
        json["max_clique"] = json!({ "size": clique.len(), "members": clique });
    }
    Ok(Outcome::new(text.trim_end().to_string(), json, true))
}

fn normalize(file: &Path, pivot: &[usize], output: Option<&Path>, tol: &Tolerance) -> biunitary::Result<Outcome> {
    let u = load(file)?.ueb(tol)?;
    let index = u.index_of_label(pivot)?;
    let v = ueb_normalize(&u, index, tol)?;
    let doc = Document::from(&v);
    match output {
        Some(path) => {
            io::save(&doc, path)?;
            let label = u.label_string(index);
            Ok(Outcome::new(
                format!("normalized at {label}; wrote {}", path.display()),
                json!({ "pivot": label, "output": path.display().to_string() }),
                true,
            ))
        }
        None => {
            let text = io::to_json_string(&doc)?;
            let json: Value = serde_json::from_str(&text).expect("valid JSON");
            Ok(Outcome::new(text.trim_end().to_string(), json, true))
        }
    }
}

fn reproduce(fixture: Option<&Path>, tol: &Tolerance) -> biunitary::Result<Outcome> {
    let fixture = match fixture {
        Some(path) => load_fixture(path, tol)?,
        None => embedded_fixture(tol)?,
    };
    let report = reproduce_appendix_a(&fixture, tol)?;
    let mut text = report.summary();
    text.push_str(&format!("\nmax entrywise deviation: {:.3e}", report.comparison.max_deviation));
    if !report.comparison.mismatched.is_empty() {
        text.push_str(&format!("\nmismatched: {}", report.comparison.mismatched.join(" ")));
    }
    let ok = report.passed();
    Ok(Outcome::new(text, json!({ "passed": ok, "summary": report.summary(), "report": report }), ok))
}

fn generate(
    which: Generator,
    n: usize,
    controls: Option<Vec<usize>>,
    seed: u64,
    output: &Path,
) -> biunitary::Result<Outcome> {
    let base = match which {
        Generator::Fourier => Document::from(&fourier(n)?),
        Generator::TwistedFourier => {
            if n == 0 {
                return Err(Error::InvalidInput("dimension must be positive".into()));
            }
            Document::from(&twisted_fourier(n, &mut StdRng::seed_from_u64(seed)))
        }
        Generator::Latin => Document::from(&cyclic_latin(n)?),
        Generator::Qls => Document::from(&qls_from_latin(&cyclic_latin(n)?)),
        Generator::Pauli => Document::from(&pauli_ueb(n)?),
    };
    let doc = match controls {
        None => base,
        Some(dims) => {
            let candidate = base
                .candidate()
                .ok_or_else(|| Error::InvalidInput("Latin squares cannot form a controlled family".into()))?;
            let count: usize = dims.iter().product();
            if dims.is_empty() || count == 0 {
                return Err(Error::InvalidInput(format!("invalid control dimensions {dims:?}")));
            }
            Document::Controlled {
                control_dims: dims,
                items: vec![candidate; count],
            }
        }
    };
    io::save(&doc, output)?;
    Ok(written(&doc, output))
}

pub(crate) fn written(doc: &Document, path: &Path) -> Outcome {
    Outcome::new(
        format!("wrote {} (n={}) to {}", doc.kind(), doc.dimension(), path.display()),
        json!({ "kind": doc.kind(), "n": doc.dimension(), "output": path.display().to_string() }),
        true,
    )
}

fn run(cli: &Cli) -> biunitary::Result<Outcome> {
    let tol = Tolerance::new(cli.tol, cli.compare_tol)?;
    match &cli.command {
        Command::Verify { kind, file } => verify(*kind, file, &tol),
        Command::Construct { construction } => construct::run(construction, &tol),
        Command::Equiv {
            what: EquivCommand::Hadamard { a, b },
        } => equiv_hadamard(a, b, &tol),
        Command::Graph {
            what: GraphCommand::Commute {
                file,
                max_clique,
                exclude_identity,
            },
        } => graph_commute(file, *max_clique, *exclude_identity, &tol),
        Command::Normalize { file, pivot, output } => normalize(file, pivot, output.as_deref(), &tol),
        Command::Reproduce {
            what: ReproduceCommand::AppendixA { fixture },
        } => reproduce(fixture.as_deref(), &tol),
        Command::Generate {
            which,
            n,
            controls,
            seed,
            output,
        } => generate(*which, *n, controls.clone(), *seed, output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&outcome.json).expect("serializable"));
            } else {
                println!("{}", outcome.text);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}

/// Lifts a base document to a constant family over `dims`; controlled
/// documents are taken as they are.
pub(crate) fn family<T: Structure>(
    doc: &Document,
    dims: &[usize],
    tol: &Tolerance,
) -> biunitary::Result<ControlledFamily<T>> {
    match doc {
        Document::Controlled { .. } => doc.family(tol),
        _ => {
            let candidate = match doc {
                Document::Latin(_) => Document::from(&doc.qls(tol)?).candidate(),
                _ => doc.candidate(),
            }
            .ok_or_else(|| Error::InvalidInput(format!("a {} document cannot be lifted to a family", doc.kind())))?;
            ControlledFamily::constant(dims.to_vec(), T::from_candidate(&candidate, tol)?)
        }
    }
}
