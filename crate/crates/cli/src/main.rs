use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dihedral_loci::classify::{self, node_cap_from_env, ToMarkdown};
use dihedral_loci::covers::CoverType;
use dihedral_loci::group::{automorphisms, automorphisms_fixing, GroupType, DEFAULT_ORDER_BOUND};
use dihedral_loci::hurwitz::{orbit, HurwitzVector};
use dihedral_loci::notation::{format_vector, parse_pair_list};
use serde::Serialize;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "dloci", version, about = "Classify Hurwitz vectors for pairs of dihedral symmetry groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every admissible vector
    Enumerate {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        output: Output,
    },
    /// Partition the admissible vectors into equivalence classes
    Classify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        output: Output,
    },
    /// Recompute the result tables for one n
    Tables {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Run every verification for the default n values up to --n-max
    VerifyAll {
        #[arg(long, default_value_t = 12)]
        n_max: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Orbit of a single vector, e.g. "((y,1),(y,1),(yx,1),(yx,1),(e,1),(e,1))"
    Orbit {
        #[arg(long)]
        vector: String,
        #[arg(long, default_value = "1", value_parser = parse_group_type)]
        group_type: GroupType,
        #[arg(long)]
        n: u32,
        /// Automorphisms acting alongside the braid group
        #[arg(long, value_enum, default_value_t = AutScope::FixingH)]
        automorphisms: AutScope,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Target {
    #[arg(long, value_parser = parse_cover_type)]
    cover_type: CoverType,
    #[arg(long, default_value = "1", value_parser = parse_group_type)]
    group_type: GroupType,
    #[arg(long)]
    n: u32,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Maximum orbit size before a search is abandoned (default from
    /// DLOCI_NODE_CAP, else 10^7)
    #[arg(long)]
    node_cap: Option<usize>,
    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Output {
    fn node_cap(&self) -> usize {
        self.node_cap.unwrap_or_else(node_cap_from_env)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum AutScope {
    None,
    FixingH,
    All,
}

fn parse_cover_type(s: &str) -> Result<CoverType, String> {
    s.parse().map_err(|e: dihedral_loci::Error| e.to_string())
}

fn parse_group_type(s: &str) -> Result<GroupType, String> {
    s.trim_start_matches(|c: char| c.is_ascii_alphabetic())
        .parse::<u8>()
        .ok()
        .and_then(GroupType::from_number)
        .ok_or_else(|| format!("unknown group type {s:?} (expected 1, 2 or 3)"))
}

/// Pass/fail state of a finished command.
struct Outcome {
    passed: bool,
    complete: bool,
}

impl Outcome {
    fn code(&self) -> ExitCode {
        if !self.complete {
            ExitCode::from(EXIT_CAP)
        } else if !self.passed {
            ExitCode::from(EXIT_MISMATCH)
        } else {
            ExitCode::SUCCESS
        }
    }
}

fn emit<T: Serialize + ToMarkdown>(report: &T, output: &Output) -> Result<(), String> {
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(report).map_err(|e| e.to_string())? + "\n",
        Format::Md => report.to_markdown(),
    };
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct Enumeration {
    schema: u32,
    cover_type: CoverType,
    group_type: GroupType,
    n: u32,
    count: usize,
    vectors: Vec<String>,
}

impl ToMarkdown for Enumeration {
    fn to_markdown(&self) -> String {
        let mut s = format!("## Admissible vectors: cover type {}, {}, n = {}\n\n", self.cover_type, self.group_type, self.n);
        s += &format!("{} vectors\n\n", self.count);
        for v in &self.vectors {
            s += &format!("- `{v}`\n");
        }
        s
    }
}

#[derive(Serialize)]
struct OrbitReport {
    schema: u32,
    vector: String,
    group: String,
    automorphisms: usize,
    size: usize,
    exhausted: bool,
    representative: String,
}

impl ToMarkdown for OrbitReport {
    fn to_markdown(&self) -> String {
        format!(
            "## Orbit of `{}` in {}\n\n- automorphisms: {}\n- size: {}{}\n- representative: `{}`\n",
            self.vector,
            self.group,
            self.automorphisms,
            self.size,
            if self.exhausted { "" } else { " (node cap reached)" },
            self.representative
        )
    }
}

fn run(cli: Cli) -> Result<Outcome, String> {
    let err = |e: dihedral_loci::Error| e.to_string();
    match cli.command {
        Command::Enumerate { target, output } => {
            let vs = classify::enumerate(target.cover_type, target.group_type, target.n).map_err(err)?;
            let report = Enumeration {
                schema: classify::REPORT_SCHEMA,
                cover_type: target.cover_type,
                group_type: target.group_type,
                n: target.n,
                count: vs.len(),
                vectors: vs.iter().map(|v| format_vector(v, true)).collect(),
            };
            emit(&report, &output)?;
            Ok(Outcome { passed: true, complete: true })
        }
        Command::Classify { target, output } => {
            let r = classify::classify(target.cover_type, target.group_type, target.n, output.node_cap()).map_err(err)?;
            emit(&r, &output)?;
            Ok(Outcome { passed: r.passed, complete: r.complete })
        }
        Command::Tables { n, output } => {
            let r = classify::verify_tables(n, output.node_cap()).map_err(err)?;
            emit(&r, &output)?;
            Ok(Outcome { passed: r.passed, complete: r.complete })
        }
        Command::VerifyAll { n_max, output } => {
            let r = classify::verify_all(n_max, output.node_cap()).map_err(err)?;
            emit(&r, &output)?;
            Ok(Outcome { passed: r.passed, complete: r.complete })
        }
        Command::Orbit { vector, group_type, n, automorphisms: scope, output } => {
            let (g, h) = classify::setting(CoverType::I, group_type, n).map_err(err)?;
            let entries = parse_pair_list(&vector, n).map_err(err)?;
            let v = HurwitzVector::from_elements(&g, &[], &entries).map_err(err)?;
            if !v.product_one() {
                return Err(format!("{vector} does not satisfy the product-one relation"));
            }
            let auts = match scope {
                AutScope::None => Vec::new(),
                AutScope::FixingH => automorphisms_fixing(&g, &h, DEFAULT_ORDER_BOUND).map_err(err)?,
                AutScope::All => automorphisms(&g, DEFAULT_ORDER_BOUND).map_err(err)?,
            };
            let o = orbit(&v, &auts, output.node_cap()).map_err(err)?;
            let report = OrbitReport {
                schema: classify::REPORT_SCHEMA,
                vector: format_vector(&v, true),
                group: g.name().to_string(),
                automorphisms: auts.len(),
                size: o.size,
                exhausted: o.exhausted,
                representative: format_vector(&o.representative, true),
            };
            emit(&report, &output)?;
            Ok(Outcome { passed: true, complete: o.exhausted })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => outcome.code(),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
