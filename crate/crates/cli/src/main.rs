//! `qgrass`: batch front end for the qgrass library.
//!
//! Output is newline-delimited JSON unless `--dot` or `--text` is given.
//! Exit codes: 0 on success, 1 when a verification suite fails, 2 on bad input.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qgrass::positroid::{
    membership_witness, necklace, plucker_set, polynormal_sequence, positroid_bases, separating_set, HPrimePoset,
};
use qgrass::postnikov::{PathSystem, PostnikovGraph};
use qgrass::qtorus::{path_matrix, path_matrix_minor};
use qgrass::shapes::{enumerate_hprime_keys, DiagramJson, HPrimeKey, IndexSet};
use qgrass::suites::{self, Suite};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "qgrass", version, about = "H-primes of quantum Grassmannians and Cauchon-Le diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every H-prime key of Gr(m, n) as JSON lines.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Only keys with this γ, e.g. `1,3,5`.
        #[arg(long, value_delimiter = ',')]
        gamma: Option<Vec<usize>>,
    },
    /// The Postnikov graph of a diagram.
    Graph {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Entries of the path matrix.
    Pathmatrix {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        text: bool,
    },
    /// A path-matrix minor and whether it vanishes.
    Minor {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        rows: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        cols: Vec<usize>,
        #[arg(long)]
        text: bool,
    },
    /// Whether a Plücker coordinate lies in the H-prime, with a witness system when it does not.
    Member {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<usize>,
    },
    /// Bases of the positroid.
    Positroid {
        #[arg(long)]
        diagram: PathBuf,
    },
    /// The Grassmann necklace.
    Necklace {
        #[arg(long)]
        diagram: PathBuf,
    },
    /// Generators of the separating set.
    Separating {
        #[arg(long)]
        diagram: PathBuf,
    },
    /// The polynormal sequence of Plücker coordinates.
    Polynormal {
        #[arg(long)]
        diagram: PathBuf,
        /// Drop repeated coordinates.
        #[arg(long)]
        dedupe: bool,
    },
    /// The containment poset of all H-primes of Gr(m, n).
    Poset {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    Input(String),
    Verification,
}

impl From<qgrass::Error> for Failure {
    fn from(e: qgrass::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_key(path: &PathBuf) -> Result<HPrimeKey, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let json: DiagramJson = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: malformed diagram JSON: {e}", path.display())))?;
    Ok(HPrimeKey::try_from(json)?)
}

/// Writes to stdout; a closed pipe (e.g. `| head`) ends the program quietly.
fn out(text: &str) {
    let mut stdout = io::stdout().lock();
    if let Err(e) = stdout.write_all(text.as_bytes()) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

fn emit(v: &Value) {
    out(&format!("{v}\n"));
}

fn system_json(s: &PathSystem) -> Value {
    let paths: Vec<Vec<String>> =
        s.paths.iter().map(|p| p.vertices.iter().map(ToString::to_string).collect()).collect();
    json!(paths)
}

fn check_grassmannian(m: usize, n: usize) -> Result<(), Failure> {
    if m == 0 || m >= n {
        return Err(Failure::Input(format!("need 1 <= m < n, got m={m}, n={n}")));
    }
    Ok(())
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Enumerate { m, n, gamma } => {
            check_grassmannian(m, n)?;
            let gamma = gamma.map(|g| IndexSet::new(g, m, n)).transpose()?;
            for key in enumerate_hprime_keys(m, n) {
                if gamma.as_ref().is_none_or(|g| *g == key.gamma) {
                    emit(&json!(key.to_json()));
                }
            }
        }
        Command::Graph { diagram, dot } => {
            let key = read_key(&diagram)?;
            let g = PostnikovGraph::build(&key.diagram);
            if dot {
                out(&g.to_dot());
            } else {
                let vertices: Vec<String> = g.vertices().map(|v| v.to_string()).collect();
                let edges: Vec<Value> = g
                    .edges()
                    .iter()
                    .map(|e| {
                        json!({
                            "from": e.from.to_string(),
                            "to": e.to.to_string(),
                            "kind": format!("{:?}", e.kind).to_lowercase(),
                            "weight": e.weight.to_string(),
                        })
                    })
                    .collect();
                emit(&json!({ "vertices": vertices, "edges": edges }));
            }
        }
        Command::Pathmatrix { diagram, text } => {
            let key = read_key(&diagram)?;
            let m = path_matrix(&key.diagram);
            for i in 1..=m.rows() {
                for j in 1..=m.cols() {
                    let value = m.get(i, j).to_string();
                    if text {
                        out(&format!("{i} {j} {value}\n"));
                    } else {
                        emit(&json!({ "i": i, "j": j, "value": value }));
                    }
                }
            }
        }
        Command::Minor { diagram, rows, cols, text } => {
            let key = read_key(&diagram)?;
            let value = path_matrix_minor(&path_matrix(&key.diagram), &rows, &cols)?;
            if text {
                out(&format!("{value}\n"));
            } else {
                emit(&json!({
                    "rows": rows,
                    "cols": cols,
                    "value": value.to_string(),
                    "vanishing": value.is_zero(),
                }));
            }
        }
        Command::Member { diagram, alpha } => {
            let key = read_key(&diagram)?;
            let alpha = IndexSet::new(alpha, key.m, key.n)?;
            let witness = membership_witness(&key, &alpha)?;
            emit(&json!({
                "alpha": alpha,
                "member": witness.is_none(),
                "witness": witness.as_ref().map(system_json),
            }));
        }
        Command::Positroid { diagram } => emit(&json!(positroid_bases(&read_key(&diagram)?)?)),
        Command::Necklace { diagram } => {
            let key = read_key(&diagram)?;
            emit(&json!(necklace(&plucker_set(&key)?, key.m, key.n)?));
        }
        Command::Separating { diagram } => emit(&json!(separating_set(&read_key(&diagram)?)?)),
        Command::Polynormal { diagram, dedupe } => {
            emit(&json!(polynormal_sequence(&read_key(&diagram)?, dedupe)?));
        }
        Command::Poset { m, n, dot } => {
            check_grassmannian(m, n)?;
            let p = HPrimePoset::by_necklaces(m, n)?;
            if dot {
                out(&p.to_dot());
            } else {
                emit(&p.to_json());
            }
        }
        Command::Verify { suite, m, n } => {
            let suite: Suite = suite.parse()?;
            let report = suites::run(suite, m, n)?;
            emit(&json!(report));
            if !report.ok() {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
