mod gallery;
mod workspace;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sesq_core::darrow::q_of_form;
use sesq_core::decide::{
    isometry_bruteforce, isometry_transfer, springer_check, summand_enumerate, witt_cancellation_check, DecisionReport,
    DEFAULT_CAP,
};
use sesq_core::endoring::{endo_of_form, herm_classes};
use sesq_core::fixtures::small_module_library;
use sesq_core::form::{gbilinear_to_sesq, random_form, sesq_to_gbilinear};
use sesq_core::io::{
    adjoints_json, classes_json, decision_json, document_to_string, endoring_json, qobject_json, springer_json,
    summands_json, to_canonical, witt_json,
};
use sesq_core::{Document, Error, Field, InvAlgebra, Verdict};

use workspace::Workspace;

const EXIT_VIOLATION: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_INVALID: u8 = 65;

#[derive(Parser, Debug)]
#[command(name = "sesq", version, about = "Exact sesquilinear forms over algebras with involution")]
struct Cli {
    /// Print machine-readable JSON reports.
    #[arg(long, global = true)]
    json: bool,
    /// Enumeration cap.
    #[arg(long, global = true, env = "SESQ_CAP", default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a document of any kind.
    Validate { file: PathBuf },
    /// Print a document in canonical form.
    Canon {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Left and right adjoints of a form.
    Adjoints { form: PathBuf },
    /// The double-arrow object and hermitian form attached to a form or system.
    Qobject { form: PathBuf },
    /// Endomorphism ring with involution of the object of a form.
    Endoring { form: PathBuf },
    /// Congruence classes of symmetric units, for an algebra or the endomorphism ring of a form.
    Classes { input: PathBuf },
    /// Decide whether two forms (or systems) are isometric.
    Isometry {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Bruteforce)]
        method: MethodArg,
    },
    /// Seeded cancellation trials over the small module library.
    Witt {
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare isometry over the base field and over an extension of degree `deg`.
    Springer {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        deg: usize,
    },
    /// Group ring with its canonical involution.
    Groupring {
        group: PathBuf,
        #[arg(long)]
        field: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// G-invariant bilinear form to sesquilinear form.
    G2s {
        bilinear: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Sesquilinear form over a group ring to G-invariant bilinear form.
    S2g {
        sesq: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Isometry classes of orthogonal summands.
    Summands { form: PathBuf },
    /// Seeded random form on a module.
    RandomForm {
        module: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        unimodular: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write the fixture gallery into a directory.
    Gallery { dir: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Bruteforce,
    Transfer,
}

/// What a command produced.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                print!("{}", to_canonical(&out.json));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            let code = match e.downcast_ref::<Error>() {
                Some(Error::EnumTooLarge { .. }) => EXIT_UNDECIDED,
                Some(_) => EXIT_INVALID,
                None => EXIT_USAGE,
            };
            match e.downcast_ref::<Error>() {
                Some(err) => eprintln!("error: {}: {err}", variant_name(err)),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::from(code)
        }
    }
}

/// `NotAssociative(0, 1, 1)` → `NotAssociative`.
fn variant_name(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or_default()
        .to_string()
}

/// `F_3`, `F3`, `3`, `F_9`, `9` or `Q`.
fn parse_field(s: &str) -> anyhow::Result<Field> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(Field::rational());
    }
    let digits = t.trim_start_matches(['F', 'f']).trim_start_matches('_');
    let q: u64 = digits
        .parse()
        .map_err(|_| anyhow::anyhow!("cannot read field {s:?}; expected F_q or Q"))?;
    let p = (2..=q)
        .find(|d| q.is_multiple_of(*d))
        .ok_or_else(|| anyhow::anyhow!("field order must be at least 2"))?;
    let mut rest = q;
    let mut deg = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        deg += 1;
    }
    anyhow::ensure!(rest == 1, "{q} is not a prime power");
    Ok(if deg == 1 {
        Field::prime(p)?
    } else {
        Field::extension_of_degree(p, deg)?
    })
}

fn emit_document(doc: &Document, out: &Option<PathBuf>) -> anyhow::Result<Output> {
    let text = document_to_string(doc);
    if let Some(path) = out {
        std::fs::write(path, &text)?;
    }
    let json: Value = serde_json::from_str(&text)?;
    Ok(Output::ok(text, json))
}

fn decision_output(k: &Field, r: &DecisionReport) -> Output {
    let code = match r.verdict {
        Verdict::Undecided => EXIT_UNDECIDED,
        _ => 0,
    };
    let mut text = format!("verdict: {} (method {}, {} candidates)\n", r.verdict.name(), r.method.name(), r.search_size);
    if let Some(w) = r.verdict.witness() {
        text.push_str("witness:\n");
        for row in w.row_vecs() {
            let cells: Vec<String> = row.iter().map(|x| k.format_elem(x)).collect();
            text.push_str(&format!("  [{}]\n", cells.join(", ")));
        }
    }
    Output {
        text,
        json: decision_json(k, r),
        code,
    }
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let mut ws = Workspace::new(cli.cap);
    let cap = ws.cap();
    match &cli.command {
        Command::Validate { file } => {
            let doc = ws.load(file)?;
            let kind = doc.kind();
            Ok(Output::ok(format!("valid {kind}\n"), json!({ "valid": true, "kind": kind })))
        }
        Command::Canon { file, out } => {
            let doc = ws.load(file)?.clone();
            emit_document(&doc, out)
        }
        Command::Adjoints { form } => {
            let s = ws.form(form)?;
            let adj = s.adjoints();
            let json = adjoints_json(s.field(), &adj);
            let text = format!(
                "dim V* = {}; left adjoint rank {}; right adjoint rank {}; unimodular: {}\n",
                adj.dual.dim(),
                adj.left.rank(s.field()),
                adj.right.rank(s.field()),
                s.is_unimodular()
            );
            Ok(Output::ok(text, json))
        }
        Command::Qobject { form } => {
            let q = q_of_form(&ws.system(form)?)?;
            let text = format!(
                "object: dim V = {}, dim W = {}, {} arrow pair(s)\n",
                q.object.v().dim(),
                q.object.w().dim(),
                q.object.arrows().len()
            );
            Ok(Output::ok(text, qobject_json(&q)))
        }
        Command::Endoring { form } => {
            let e = endo_of_form(&q_of_form(&ws.system(form)?)?)?;
            let text = format!("End(q) has dimension {}\n", e.dim());
            Ok(Output::ok(text, endoring_json(&e)))
        }
        Command::Classes { input } => {
            let alg: InvAlgebra = match ws.load(input)?.clone() {
                Document::Algebra(a) => a,
                Document::Form(s) => endo_of_form(&q_of_form(&s.into())?)?.to_algebra()?,
                Document::System(s) => endo_of_form(&q_of_form(&s)?)?.to_algebra()?,
                other => anyhow::bail!("classes expects an algebra, form or system, got {}", other.kind()),
            };
            let k = alg.field();
            let classes = herm_classes(&alg, cap)?;
            let reps: Vec<String> = classes
                .representatives
                .iter()
                .map(|r| r.iter().map(|x| k.format_elem(x)).collect::<Vec<_>>().join(","))
                .collect();
            let text = format!("{} classes: {}\n", classes.len(), reps.join("; "));
            Ok(Output::ok(text, classes_json(k, &classes)))
        }
        Command::Isometry { a, b, method } => {
            let s = ws.system(a)?;
            let t = ws.system(b)?;
            let report = match method {
                MethodArg::Bruteforce => isometry_bruteforce(&s, &t, cap)?,
                MethodArg::Transfer => isometry_transfer(&s, &t, cap)?,
            };
            Ok(decision_output(s.module().field(), &report))
        }
        Command::Witt { field, trials, seed } => {
            let k = parse_field(field)?;
            let report = witt_cancellation_check(&small_module_library(&k), *trials, *seed, cap)?;
            let code = if report.violations > 0 {
                EXIT_VIOLATION
            } else if report.undecided > 0 {
                EXIT_UNDECIDED
            } else {
                0
            };
            let text = format!(
                "{}: {} trials (seed {}), {} planted, {} sums isometric, {} violations, {} undecided\n",
                report.field, report.trials, report.seed, report.planted, report.sums_isometric, report.violations, report.undecided
            );
            Ok(Output {
                text,
                json: witt_json(&report),
                code,
            })
        }
        Command::Springer { a, b, deg } => {
            let s = ws.system(a)?;
            let t = ws.system(b)?;
            let r = springer_check(&s, &t, *deg, cap)?;
            let code = if r.violation {
                EXIT_VIOLATION
            } else if r.base == Verdict::Undecided || r.extension == Verdict::Undecided {
                EXIT_UNDECIDED
            } else {
                0
            };
            let text = format!(
                "over {}: {}; over {}: {}; violation: {}\n",
                r.base_field,
                r.base.name(),
                r.extension_field,
                r.extension.name(),
                r.violation
            );
            Ok(Output {
                text,
                json: springer_json(&r),
                code,
            })
        }
        Command::Groupring { group, field, out } => {
            let k = parse_field(field)?;
            let g = match ws.load(group)? {
                Document::Group(g) => g.clone(),
                other => anyhow::bail!("groupring expects a group, got {}", other.kind()),
            };
            let alg = InvAlgebra::group_ring(&k, &g)?;
            emit_document(&Document::Algebra(alg), out)
        }
        Command::G2s { bilinear, out } => {
            let b = match ws.load(bilinear)? {
                Document::Bilinear(b) => b.clone(),
                other => anyhow::bail!("g2s expects a bilinear form, got {}", other.kind()),
            };
            emit_document(&Document::Form(gbilinear_to_sesq(&b)), out)
        }
        Command::S2g { sesq, out } => {
            let s = ws.form(sesq)?;
            emit_document(&Document::Bilinear(sesq_to_gbilinear(&s)?), out)
        }
        Command::Summands { form } => {
            let s = ws.form(form)?;
            let classes = summand_enumerate(&s, cap)?;
            let dims: Vec<String> = classes.iter().map(|c| c.dim().to_string()).collect();
            let text = format!("{} summand classes, dimensions {}\n", classes.len(), dims.join(", "));
            Ok(Output::ok(text, summands_json(&classes)))
        }
        Command::RandomForm {
            module,
            seed,
            unimodular,
            out,
        } => {
            let m = match ws.load(module)? {
                Document::Module(m) => m.clone(),
                other => anyhow::bail!("random-form expects a module, got {}", other.kind()),
            };
            let s = random_form(&m, *seed, *unimodular, 1000)?;
            emit_document(&Document::Form(s), out)
        }
        Command::Gallery { dir } => {
            let written = gallery::write(dir)?;
            let text = written.iter().map(|n| format!("{n}\n")).collect();
            Ok(Output::ok(text, json!({ "written": written })))
        }
    }
}
