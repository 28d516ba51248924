use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mgs_core::assoc::mgs_for_type_a_rooted;
use mgs_core::direct_sum::decompose;
use mgs_core::embedding::embed;
use mgs_core::green::{census, exchange_graph, is_maximal_green, verify_green, Verdict};
use mgs_core::matrix_model::verify_model;
use mgs_core::perm_model::check_sigma_identities;
use mgs_core::type_a::is_type_a;
use mgs_core::{ExtMatrix, MutationSequence, Quiver};

#[derive(Parser)]
#[command(name = "mgs", version, about = "Quiver mutation and maximal green sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Quiver file (`quiver N` / `arrow i j [mult]` lines)
    file: PathBuf,
}

#[derive(Args)]
struct Rooted {
    #[command(flatten)]
    input: Input,
    /// Root 3-cycle as a comma-separated vertex triple
    #[arg(long)]
    root: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a mutation sequence to the framed quiver and print the result
    Mutate {
        #[command(flatten)]
        input: Input,
        /// Vertices in application order
        #[arg(long)]
        seq: String,
        /// Print the quiver without frozen vertices instead of the matrix
        #[arg(long)]
        quiver: bool,
    },
    /// Check the type-A characterization condition by condition
    CheckTypeA(Input),
    /// Split into irreducible summands
    Decompose(Input),
    /// Embed an irreducible quiver with 3-cycles
    Embed(Rooted),
    /// Construct a maximal green sequence of a type-A quiver
    Mgs {
        #[command(flatten)]
        rooted: Rooted,
        /// Also print the sequence as a right-to-left composition
        #[arg(long)]
        paper_order: bool,
    },
    /// Check whether a sequence is a maximal green sequence
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        seq: String,
    },
    /// List every maximal green sequence
    Enumerate {
        #[command(flatten)]
        input: Input,
        /// Length bound; required for quivers not of type A
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        paper_order: bool,
    },
    /// Oriented exchange graph of the framed quiver
    Graph {
        #[command(flatten)]
        input: Input,
        /// Write Graphviz output to this file
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        max_nodes: usize,
    },
    /// Compare the closed-form stage matrices and permutation identities
    /// with direct mutation
    ModelCheck(Rooted),
}

enum Failure {
    /// A verification ran and failed; the report is already on stdout.
    Verification,
    Input(String),
}

impl From<mgs_core::Error> for Failure {
    fn from(e: mgs_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_quiver(path: &Path) -> Result<Quiver, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Quiver::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_root(root: &Option<String>) -> Result<Option<[usize; 3]>, Failure> {
    let Some(s) = root else { return Ok(None) };
    let parts: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Input(format!("bad --root `{s}`")))?;
    <[usize; 3]>::try_from(parts)
        .map(Some)
        .map_err(|_| Failure::Input(format!("--root needs three vertices, got `{s}`")))
}

fn parse_seq(s: &str, q: &Quiver) -> Result<MutationSequence, Failure> {
    let seq = MutationSequence::parse(s)?;
    seq.validate(q.n())?;
    Ok(seq)
}

fn run(cli: Cli, out: &mut String) -> Result<(), Failure> {
    match cli.command {
        Command::Mutate { input, seq, quiver } => {
            let q = read_quiver(&input.file)?;
            let m = ExtMatrix::frame(&q).apply_sequence(&parse_seq(&seq, &q)?)?;
            out.push_str(&if quiver { m.principal_quiver().to_text() } else { m.to_text() });
        }
        Command::CheckTypeA(input) => {
            let q = read_quiver(&input.file)?;
            out.push_str(&is_type_a(&q).to_text());
        }
        Command::Decompose(input) => {
            let q = read_quiver(&input.file)?;
            out.push_str(&decompose(&q).to_text(&q));
        }
        Command::Embed(r) => {
            let q = read_quiver(&r.input.file)?;
            let e = embed(&q, parse_root(&r.root)?)?;
            let [x, y, z] = e.root();
            let _ = writeln!(out, "root: {x},{y},{z}");
            out.push_str(&e.to_text());
        }
        Command::Mgs { rooted, paper_order } => {
            let q = read_quiver(&rooted.input.file)?;
            let seq = mgs_for_type_a_rooted(&q, parse_root(&rooted.root)?)?;
            let report = is_maximal_green(&q, &seq)?;
            let _ = writeln!(out, "mgs length={}", seq.len());
            let _ = writeln!(out, "{seq}");
            if paper_order {
                let _ = writeln!(out, "{}", seq.paper_order());
            }
            match &report.induced {
                Some(p) => {
                    let _ = writeln!(out, "permutation: {p}");
                }
                None => out.push_str("permutation: none\n"),
            }
            let _ = writeln!(out, "verified: {}", report.is_maximal);
            if !report.is_maximal {
                return Err(Failure::Verification);
            }
        }
        Command::Verify { input, seq } => {
            let q = read_quiver(&input.file)?;
            let seq = parse_seq(&seq, &q)?;
            let trace = verify_green(&q, &seq)?;
            for s in &trace.steps {
                let _ = writeln!(out, "step {}: mutate {} ({})", s.index, s.vertex, s.color);
            }
            match trace.verdict {
                Verdict::Violation { step } => {
                    let _ = writeln!(out, "violation: step {step} mutates red vertex {}", seq.steps()[step - 1]);
                    out.push_str("maximal green: false\n");
                    return Err(Failure::Verification);
                }
                Verdict::AllGreen => {
                    let report = is_maximal_green(&q, &seq)?;
                    if let Some(p) = &report.induced {
                        let _ = writeln!(out, "permutation: {p}");
                    } else {
                        let green: Vec<String> = (1..=q.n())
                            .filter(|&i| trace.final_colors[i - 1] == mgs_core::Color::Green)
                            .map(|i| i.to_string())
                            .collect();
                        let _ = writeln!(out, "green vertices remain: {}", green.join(" "));
                    }
                    let _ = writeln!(out, "maximal green: {}", report.is_maximal);
                    if !report.is_maximal {
                        return Err(Failure::Verification);
                    }
                }
            }
        }
        Command::Enumerate { input, max_len, paper_order } => {
            let q = read_quiver(&input.file)?;
            if max_len.is_none() && !is_type_a(&q).verdict {
                return Err(mgs_core::Error::MissingDepthGuard.into());
            }
            let c = census(&q, max_len);
            let _ = writeln!(out, "count: {}", c.sequences.len());
            for s in &c.sequences {
                if paper_order {
                    let _ = writeln!(out, "{}", s.paper_order());
                } else {
                    let _ = writeln!(out, "{s}");
                }
            }
            if c.truncated {
                let _ = writeln!(out, "truncated at length {}", max_len.unwrap_or(0));
            }
        }
        Command::Graph { input, dot, max_nodes } => {
            let q = read_quiver(&input.file)?;
            let g = exchange_graph(&q, max_nodes)?;
            let _ = writeln!(out, "nodes: {}", g.nodes.len());
            let _ = writeln!(out, "edges: {}", g.edges.len());
            let _ = writeln!(out, "maximal chains: {}", g.count_maximal_chains());
            if let Some(path) = dot {
                std::fs::write(&path, g.to_dot()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                out.push_str("dot: written\n");
            }
        }
        Command::ModelCheck(r) => {
            let q = read_quiver(&r.input.file)?;
            let e = embed(&q, parse_root(&r.root)?)?;
            let model = verify_model(&e)?;
            let lemmas = check_sigma_identities(&e);
            out.push_str(&model.to_text());
            out.push_str(&lemmas.to_text());
            if !model.ok() || !lemmas.ok() {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = String::new();
    let result = run(cli, &mut out);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
