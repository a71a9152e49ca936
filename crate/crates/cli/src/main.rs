//! `vlink`: command-line front end for the virtual link library.
//!
//! Diagrams are read from a file argument or `-` for stdin, either as signed
//! Gauss code text or as the JSON diagram format (detected by a leading `{`).

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use vlink::search::{default_quandles, equivalent_with, minimize};
use vlink::{
    bracket, classify_corpus, diagram_from_gauss, enumerate_moves, f_poly, quandle_colorings,
    simplify_greedy, Diagram, MoveKind, Quandle, RibbonSurface, SearchBounds,
};

#[derive(Parser)]
#[command(name = "vlink", version, about = "Virtual link diagrams, moves, surfaces and invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical Gauss code.
    Canon { input: PathBuf },
    /// Crossings, link components, writhe and free loops.
    Stats { input: PathBuf },
    /// Genus of each component of the supporting surface.
    Genus { input: PathBuf },
    /// Kauffman bracket in A.
    Bracket { input: PathBuf },
    /// Normalized bracket; with --jones, in t = A^-4.
    Fpoly {
        input: PathBuf,
        #[arg(long)]
        jones: bool,
    },
    /// Count colorings by a quandle given by name (R3, T2, A5_2) or table file.
    Colorings {
        input: PathBuf,
        #[arg(long, default_value = "R3")]
        quandle: String,
    },
    /// List move sites, optionally restricted to kinds such as R1+,R2-.
    Moves {
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        kinds: Vec<MoveKind>,
    },
    /// Greedily apply crossing-removing moves.
    Simplify { input: PathBuf },
    /// Print the diagram in the JSON format.
    Json { input: PathBuf },
    /// Decide equivalence within bounds. Exit 0 equivalent, 1 distinguished, 2 unknown.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Search the bounded orbit for the least (genus, crossings) diagram.
    Minimize {
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Partition a corpus file (one `name: code` per line) into classes.
    Classify {
        corpus: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 8)]
    max_crossings: usize,
    #[arg(long, default_value_t = 12)]
    max_depth: usize,
    #[arg(long, default_value_t = 100_000)]
    max_states: usize,
    /// Comma-separated quandle names or table files used to tell diagrams apart.
    #[arg(long, value_delimiter = ',')]
    quandles: Vec<String>,
}

impl SearchArgs {
    fn bounds(&self) -> SearchBounds {
        SearchBounds {
            max_crossings: self.max_crossings,
            max_depth: self.max_depth,
            max_states: self.max_states,
        }
    }

    fn quandles(&self) -> Result<Vec<Quandle>> {
        if self.quandles.is_empty() {
            return Ok(default_quandles());
        }
        self.quandles.iter().map(|q| load_quandle(q)).collect()
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_diagram(text: &str) -> Result<Diagram> {
    let text = text.trim();
    if text.starts_with('{') {
        return Ok(Diagram::from_json(text)?);
    }
    // comments and blank lines are allowed around a single code
    let code: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    Ok(diagram_from_gauss(&code.join(" "))?)
}

fn load(path: &Path) -> Result<Diagram> {
    parse_diagram(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_quandle(arg: &str) -> Result<Quandle> {
    if let Ok(q) = Quandle::by_name(arg) {
        return Ok(q);
    }
    let path = Path::new(arg);
    if !path.exists() {
        bail!("{arg} is neither a known quandle name nor a file");
    }
    let name = path.file_stem().map_or(arg.into(), |s| s.to_string_lossy().into_owned());
    Ok(Quandle::parse(name, &read_text(path)?)?)
}

fn load_corpus(path: &Path) -> Result<Vec<(String, Diagram)>> {
    let mut entries = Vec::new();
    for (n, line) in read_text(path)?.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, code) = match line.split_once(':') {
            Some((name, code)) => (name.trim().to_string(), code),
            None => (format!("d{}", entries.len() + 1), line),
        };
        let d = diagram_from_gauss(code).with_context(|| format!("line {}", n + 1))?;
        entries.push((name, d));
    }
    Ok(entries)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Canon { input } => println!("{}", load(&input)?.canonical_string()),
        Command::Stats { input } => {
            let d = load(&input)?;
            let s = d.stats();
            println!("crossings {}", s.crossings);
            println!("components {}", s.components);
            println!("writhe {}", s.writhe);
            println!("free loops {}", d.free_loops());
        }
        Command::Genus { input } => println!("{}", RibbonSurface::build(&load(&input)?)),
        Command::Bracket { input } => println!("{}", bracket(&load(&input)?)?),
        Command::Fpoly { input, jones } => {
            let f = f_poly(&load(&input)?)?;
            if jones {
                println!("{}", f.display_in_t());
            } else {
                println!("{f}");
            }
        }
        Command::Colorings { input, quandle } => {
            let q = load_quandle(&quandle)?;
            println!("{} {}", q.name(), quandle_colorings(&load(&input)?, &q));
        }
        Command::Moves { input, kinds } => {
            let kinds = if kinds.is_empty() { MoveKind::ALL.to_vec() } else { kinds };
            for site in enumerate_moves(&load(&input)?, &kinds) {
                println!("{site}");
            }
        }
        Command::Simplify { input } => println!("{}", simplify_greedy(&load(&input)?).canonical_string()),
        Command::Json { input } => println!("{}", load(&input)?.to_json()),
        Command::Equiv { first, second, search } => {
            let (a, b) = (load(&first)?, load(&second)?);
            let out = equivalent_with(&a, &b, &search.bounds(), &search.quandles()?);
            println!("{out}");
            return Ok(ExitCode::from(out.verdict.exit_code() as u8));
        }
        Command::Minimize { input, search } => println!("{}", minimize(&load(&input)?, &search.bounds())),
        Command::Classify { corpus, search } => {
            let entries = load_corpus(&corpus)?;
            let report = classify_corpus(&entries, &search.bounds(), &search.quandles()?);
            println!("{report}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            // distinct from the verdict codes
            ExitCode::from(3)
        }
    }
}
