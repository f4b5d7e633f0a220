mod input;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nilcox_core::affine_perm::{elements_up_to, MAX_LENGTH};
use nilcox_core::fomin_stanley::{kschur_h_expansion, noncomm_kschur};
use nilcox_core::pieri_ops::verify;
use nilcox_core::strip_graphs::{StrongGraph, WeakGraph};
use nilcox_core::symfunc::{strong_schur, Basis};
use nilcox_core::{golden, Error, NilCoxElem, OpSpec, Rank, SymFunc};
use serde_json::json;

use input::{format_word, parse_element, parse_partition};

#[derive(Parser)]
#[command(name = "nilcox", version, about = "Affine nilCoxeter algebra, Pieri operators and k-Schur functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Weak,
    Strong,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrongBasis {
    #[value(name = "F")]
    F,
    #[value(name = "m")]
    M,
    #[value(name = "h")]
    H,
    #[value(name = "kschur")]
    KSchur,
    #[value(name = "all")]
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KSchurBasis {
    U,
    H,
}

#[derive(Subcommand)]
enum Command {
    /// List affine permutations up to a length bound.
    Elements {
        #[arg(short)]
        k: usize,
        #[arg(short = 'L', long = "max-length")]
        max_length: usize,
        /// Only 0-Grassmannian elements.
        #[arg(long)]
        grassmannian: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Export the weak or marked strong order graph.
    Graph {
        #[arg(short)]
        k: usize,
        #[arg(short = 'L', long = "max-length")]
        max_length: usize,
        #[arg(long, value_enum)]
        which: Which,
        /// Restrict the strong graph to everything below these elements.
        #[arg(long = "top")]
        tops: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        /// Directory for cached graph output.
        #[arg(long, env = "NILCOX_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
    },
    /// Noncommutative k-Schur function.
    Kschur {
        #[arg(short)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = KSchurBasis::U)]
        basis: KSchurBasis,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Apply an operator such as `U2`, `D1`, `D[2,1]` or `D1.U2`.
    Apply {
        #[arg(short)]
        k: usize,
        #[arg(long)]
        op: String,
        #[arg(long)]
        elem: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Strong Schur function Strong_{u/v}.
    Strong {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        u: String,
        #[arg(short, default_value = "e")]
        v: String,
        #[arg(long, value_enum, default_value_t = StrongBasis::All)]
        basis: StrongBasis,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run verification sweeps and print a JSON report per identity.
    Verify {
        #[arg(short)]
        k: usize,
        #[arg(short = 'L', long = "max-length")]
        max_length: usize,
        /// Run every identity.
        #[arg(long, conflicts_with = "identity")]
        all: bool,
        #[arg(long)]
        identity: Vec<String>,
    },
    /// Check the published worked examples and graph drawings.
    Reproduce {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

enum Failure {
    Mismatch(String),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<String, Failure>;

fn rank(k: usize) -> Result<Rank, Error> {
    Rank::new(k)
}

fn check_length(max_length: usize) -> Result<(), Error> {
    if max_length > MAX_LENGTH {
        return Err(Error::LengthBound { requested: max_length, max: MAX_LENGTH });
    }
    Ok(())
}

fn unsupported(format: Format) -> Failure {
    let name = match format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Latex => "latex",
    };
    Failure::Input(Error::Parse(format!("format {name} is not available for this command")))
}

fn elem_latex(e: &NilCoxElem) -> String {
    e.to_string().replace("u_", "\\mathbf{u}_")
}

fn render_elem(e: &NilCoxElem, format: Format) -> Outcome {
    match format {
        Format::Text => Ok(e.to_string()),
        Format::Json => Ok(serde_json::to_string_pretty(e).expect("serializable")),
        Format::Latex => Ok(elem_latex(e)),
        Format::Dot => Err(unsupported(format)),
    }
}

fn render_symfunc(f: &SymFunc, format: Format) -> Outcome {
    match format {
        Format::Text => Ok(f.to_string()),
        Format::Json => Ok(serde_json::to_string_pretty(f).expect("serializable")),
        Format::Latex => Ok(f.to_latex()),
        Format::Dot => Err(unsupported(format)),
    }
}

fn cmd_elements(k: usize, max_length: usize, grassmannian: bool, format: Format) -> Outcome {
    check_length(max_length)?;
    let levels = elements_up_to(rank(k)?, max_length)?;
    let elems = levels.iter().flatten().filter(|w| !grassmannian || w.is_grassmannian());
    match format {
        Format::Text => {
            let mut out = String::new();
            for w in elems {
                writeln!(out, "{}\t{}\t{:?}", w.length(), w, w.window()).unwrap();
            }
            Ok(out.trim_end().to_string())
        }
        Format::Json => {
            let list: Vec<_> =
                elems.map(|w| json!({"word": format_word(w), "window": w.window(), "length": w.length()})).collect();
            Ok(serde_json::to_string_pretty(&list).expect("serializable"))
        }
        other => Err(unsupported(other)),
    }
}

fn graph_output(k: usize, max_length: usize, which: Which, tops: &[String], format: Format) -> Outcome {
    check_length(max_length)?;
    let r = rank(k)?;
    match which {
        Which::Weak => {
            let g = WeakGraph::up_to_length(r, max_length)?;
            match format {
                Format::Dot => Ok(g.to_dot()),
                Format::Json => {
                    let edges: Vec<_> = g
                        .edges
                        .iter()
                        .map(|(v, w, i)| json!({"src": v.window(), "dst": w.window(), "label": i}))
                        .collect();
                    let vertices: Vec<_> = g.vertices.iter().map(|w| w.window()).collect();
                    Ok(serde_json::to_string_pretty(&json!({"k": k, "vertices": vertices, "edges": edges}))
                        .expect("serializable"))
                }
                other => Err(unsupported(other)),
            }
        }
        Which::Strong => {
            let g = if tops.is_empty() {
                StrongGraph::up_to_length(r, max_length)?
            } else {
                let tops = tops.iter().map(|t| parse_element(r, t)).collect::<Result<Vec<_>, _>>()?;
                if let Some(t) = tops.iter().find(|t| t.length() > max_length) {
                    return Err(Error::LengthBound { requested: t.length(), max: max_length }.into());
                }
                StrongGraph::below(r, &tops)
            };
            match format {
                Format::Dot => Ok(g.to_dot()),
                Format::Json => {
                    let vertices: Vec<_> = g.vertices.iter().map(|w| w.window()).collect();
                    Ok(serde_json::to_string_pretty(&json!({"k": k, "vertices": vertices, "edges": g.edge_list()}))
                        .expect("serializable"))
                }
                other => Err(unsupported(other)),
            }
        }
    }
}

fn cmd_graph(
    k: usize,
    max_length: usize,
    which: Which,
    tops: &[String],
    format: Format,
    cache_dir: Option<PathBuf>,
) -> Outcome {
    let Some(dir) = cache_dir.filter(|_| tops.is_empty() && matches!(format, Format::Dot | Format::Json)) else {
        return graph_output(k, max_length, which, tops, format);
    };
    let name = format!(
        "graph-{}-k{k}-L{max_length}.{}",
        if which == Which::Weak { "weak" } else { "strong" },
        if format == Format::Dot { "dot" } else { "json" }
    );
    let path = dir.join(name);
    if let Ok(cached) = std::fs::read_to_string(&path) {
        return Ok(cached);
    }
    let out = graph_output(k, max_length, which, tops, format)?;
    // Caching is best effort; an unwritable directory only costs recomputation.
    if std::fs::create_dir_all(&dir).is_ok() {
        let _ = std::fs::write(&path, &out);
    }
    Ok(out)
}

fn cmd_kschur(k: usize, lambda: &str, basis: KSchurBasis, format: Format) -> Outcome {
    let r = rank(k)?;
    let lambda = parse_partition(lambda)?;
    match basis {
        KSchurBasis::U => render_elem(&noncomm_kschur(r, &lambda)?, format),
        KSchurBasis::H => {
            let e = kschur_h_expansion(r, &lambda)?;
            render_symfunc(&SymFunc::from_b_expansion(&e, lambda.size())?, format)
        }
    }
}

fn cmd_apply(k: usize, op: &str, elem: &str, format: Format) -> Outcome {
    let r = rank(k)?;
    let op: OpSpec = op.parse()?;
    let w = parse_element(r, elem)?;
    render_elem(&op.apply(&NilCoxElem::basis(w)), format)
}

fn cmd_strong(k: usize, u: &str, v: &str, basis: StrongBasis, format: Format) -> Outcome {
    let r = rank(k)?;
    let u = parse_element(r, u)?;
    let v = parse_element(r, v)?;
    let s = strong_schur(&u, &v)?;
    let pick = |b: StrongBasis| match b {
        StrongBasis::F => &s.f,
        StrongBasis::M => &s.m,
        StrongBasis::H => &s.h,
        _ => &s.kschur,
    };
    if basis != StrongBasis::All {
        return render_symfunc(pick(basis), format);
    }
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&s).expect("serializable")),
        Format::Dot => Err(unsupported(format)),
        _ => {
            let mut out = String::new();
            for (b, tag) in [
                (StrongBasis::F, Basis::Fundamental),
                (StrongBasis::M, Basis::Monomial),
                (StrongBasis::H, Basis::Homogeneous),
                (StrongBasis::KSchur, Basis::KSchur),
            ] {
                writeln!(out, "{}: {}", tag.tag(), render_symfunc(pick(b), format)?).unwrap();
            }
            Ok(out.trim_end().to_string())
        }
    }
}

fn cmd_verify(k: usize, max_length: usize, all: bool, identities: &[String]) -> Outcome {
    check_length(max_length)?;
    rank(k)?;
    let names: Vec<&str> = if all || identities.is_empty() {
        verify::IDENTITIES.to_vec()
    } else {
        identities.iter().map(String::as_str).collect()
    };
    let reports = names.iter().map(|name| verify::run_identity(name, k, max_length)).collect::<Result<Vec<_>, _>>()?;
    let text = serde_json::to_string_pretty(&reports).expect("serializable");
    if reports.iter().all(|r| r.passed) {
        Ok(text)
    } else {
        Err(Failure::Mismatch(text))
    }
}

fn cmd_reproduce(format: Format) -> Outcome {
    let checks = golden::reproduce()?;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&checks).expect("serializable"),
        Format::Text => checks
            .iter()
            .map(|c| format!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail))
            .collect::<Vec<_>>()
            .join("\n"),
        other => return Err(unsupported(other)),
    };
    if golden::all_passed(&checks) {
        Ok(text)
    } else {
        Err(Failure::Mismatch(text))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Elements { k, max_length, grassmannian, format } => cmd_elements(k, max_length, grassmannian, format),
        Command::Graph { k, max_length, which, tops, format, cache_dir } => {
            cmd_graph(k, max_length, which, &tops, format, cache_dir)
        }
        Command::Kschur { k, lambda, basis, format } => cmd_kschur(k, &lambda, basis, format),
        Command::Apply { k, op, elem, format } => cmd_apply(k, &op, &elem, format),
        Command::Strong { k, u, v, basis, format } => cmd_strong(k, &u, &v, basis, format),
        Command::Verify { k, max_length, all, identity } => cmd_verify(k, max_length, all, &identity),
        Command::Reproduce { format } => cmd_reproduce(format),
    }
}

fn emit(out: &str) {
    use std::io::Write;
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(out)) => {
            emit(&out);
            ExitCode::from(1)
        }
        Err(Failure::Input(e @ Error::LengthBound { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
