use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use context_calculus::dot::emit_dot;
use context_calculus::heyting::{parse_lattice_spec, HeytingAlgebra};
use context_calculus::hfset::Ordinal;
use context_calculus::kripke::countermodel_search;
use context_calculus::logic::{
    diag_table, encode, fixed_point, nor_complete_survey, parse, to_n_form, TruthTable,
};
use context_calculus::machines::{enumerate, parse_input, MachineSpec};
use context_calculus::subject::{affinity, homogeneity_flag, ledger, rearticulate};
use context_calculus::workspace::{replay, CitationChain};

/// Ordinals, intuitionistic logic, Heyting algebras, merge workspaces,
/// subject vectors and small Turing machines, checked at desk scale.
#[derive(Parser)]
#[command(name = "context-calculus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the von Neumann ordinal K as a hereditarily finite set
    Ordinal { k: usize },
    /// Parse a formula and print it back in canonical form
    Parse {
        formula: String,
        /// Also print the structural code of the formula
        #[arg(long)]
        code: bool,
    },
    /// Print the classical truth table (first atom is the high bit)
    Table { formula: String },
    /// Rewrite a formula using N (joint denial) only
    Nform {
        #[arg(required_unless_present = "survey")]
        formula: Option<String>,
        /// Realize all 16 binary truth functions with N alone
        #[arg(long, conflicts_with = "formula")]
        survey: bool,
    },
    /// Search for a Kripke countermodel in canonical order
    Countermodel {
        formula: String,
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        /// Print the frame of the countermodel as a DOT graph
        #[arg(long)]
        dot: bool,
    },
    /// Finite Heyting algebras
    Heyting {
        #[command(subcommand)]
        command: HeytingCommand,
    },
    /// Replay a derivation script and print the final workspace
    Merge {
        #[arg(long)]
        script: PathBuf,
    },
    /// Build a citation chain: the first assertion starts it, each further
    /// one cites the head
    Chain {
        #[arg(required = true)]
        assertions: Vec<String>,
        /// Resolve a name along the chain from its head
        #[arg(long)]
        resolve: Option<String>,
    },
    /// External witnesses n²−n needed for n names
    Ledger { n: u64 },
    /// Homogeneity verdict 1/(n²−n)
    Homogeneity { n: u64 },
    /// Pair two classes index by index, optionally shifted
    Affinity {
        #[arg(long, value_delimiter = ',', required = true)]
        left: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        right: Vec<String>,
        #[arg(long, default_value_t = 0)]
        shift: usize,
    },
    /// Diagonalize a seeded random table, or build a fixed point
    Diag {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of rows; each row has this many columns
        #[arg(long, default_value_t = 5)]
        size: usize,
        /// Largest table entry
        #[arg(long, default_value_t = 9)]
        max: u64,
        /// Context formula for the fixed-point construction
        #[arg(long, requires = "hole")]
        context: Option<String>,
        /// Atom of the context standing for the hole
        #[arg(long, requires = "context")]
        hole: Option<String>,
    },
    /// Turing machines with an explicit halt target
    Machines {
        #[command(subcommand)]
        command: MachinesCommand,
    },
}

#[derive(Args)]
struct AlgebraSource {
    /// Lattice spec file
    #[arg(long, conflicts_with = "chain")]
    lattice: Option<PathBuf>,
    /// Chain with this many elements
    #[arg(long)]
    chain: Option<usize>,
}

#[derive(Subcommand)]
enum HeytingCommand {
    /// Check the Heyting algebra laws
    Check {
        #[command(flatten)]
        source: AlgebraSource,
    },
    /// Print a → b
    Imp {
        #[command(flatten)]
        source: AlgebraSource,
        a: String,
        b: String,
    },
    /// Quotient by the filter generated by the given elements
    Quotient {
        #[command(flatten)]
        source: AlgebraSource,
        generators: Vec<String>,
    },
    /// Print the Hasse diagram
    Hasse {
        #[command(flatten)]
        source: AlgebraSource,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand)]
enum MachinesCommand {
    /// Run a machine file on an input
    Run {
        file: PathBuf,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, default_value_t = 1000)]
        budget: u64,
    },
    /// Run every 2-state machine on a blank tape
    Enumerate {
        #[arg(long, default_value_t = 2)]
        symbols: usize,
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        /// Write the report here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn algebra(source: &AlgebraSource) -> Result<(HeytingAlgebra, String)> {
    match (&source.lattice, source.chain) {
        (Some(path), _) => {
            let poset = parse_lattice_spec(&read(path)?)
                .with_context(|| format!("in {}", path.display()))?;
            let name = path
                .file_stem()
                .map_or("lattice".into(), |s| s.to_string_lossy().into_owned());
            Ok((HeytingAlgebra::from_lattice(poset)?, name))
        }
        (None, Some(n)) => Ok((HeytingAlgebra::chain(n)?, format!("chain{n}"))),
        (None, None) => bail!("one of --lattice or --chain is required"),
    }
}

fn heyting(cmd: &HeytingCommand) -> Result<String> {
    let mut out = String::new();
    match cmd {
        HeytingCommand::Check { source } => {
            let (h, _) = algebra(source)?;
            let report = h.check_laws();
            out += &report.to_string();
            if !report.passed() {
                bail!("{out}law check failed");
            }
        }
        HeytingCommand::Imp { source, a, b } => {
            let (h, _) = algebra(source)?;
            let r = h.imp(h.element(a)?, h.element(b)?);
            out += &format!("{}\n", h.label(r));
        }
        HeytingCommand::Quotient { source, generators } => {
            let (h, _) = algebra(source)?;
            let gens = generators
                .iter()
                .map(|g| h.element(g))
                .collect::<Result<Vec<_>, _>>()?;
            let f = h.generate(&gens)?;
            let q = h.quotient(&f)?;
            out += &format!("filter: {{{}}}\n", f.labels(&h).join(", "));
            for (c, members) in q.classes.iter().enumerate() {
                let labels: Vec<&str> = members.iter().map(|&m| h.label(m)).collect();
                out += &format!("{} = {{{}}}\n", q.algebra.label(c), labels.join(", "));
            }
            for (a, b) in q.algebra.hasse_edges() {
                out += &format!("{} < {}\n", q.algebra.label(a), q.algebra.label(b));
            }
            out += &q.algebra.check_laws().to_string();
        }
        HeytingCommand::Hasse { source, dot } => {
            let (h, name) = algebra(source)?;
            if *dot {
                out += &emit_dot(h.poset(), &name);
            } else {
                for (a, b) in h.hasse_edges() {
                    out += &format!("{} < {}\n", h.label(a), h.label(b));
                }
            }
        }
    }
    Ok(out)
}

fn machines(cmd: &MachinesCommand) -> Result<String> {
    match cmd {
        MachinesCommand::Run {
            file,
            input,
            budget,
        } => {
            let m: MachineSpec = read(file)?
                .parse()
                .with_context(|| format!("in {}", file.display()))?;
            let input = parse_input(input, m.symbols())?;
            Ok(m.run(&input, *budget)?.to_string())
        }
        MachinesCommand::Enumerate {
            symbols,
            budget,
            out,
        } => {
            let report = enumerate(2, *symbols, *budget)?.to_string();
            match out {
                Some(path) => {
                    fs::write(path, &report)
                        .with_context(|| format!("cannot write {}", path.display()))?;
                    Ok(String::new())
                }
                None => Ok(report),
            }
        }
    }
}

fn diag(seed: u64, size: usize, max: u64) -> Result<String> {
    if size == 0 {
        bail!("--size must be at least 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<u64>> = (0..size)
        .map(|_| (0..size).map(|_| rng.gen_range(0..=max)).collect())
        .collect();
    let g = diag_table(&rows, size - 1)?;
    let mut out = String::new();
    for (n, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        out += &format!("f{n}: {}\n", cells.join(" "));
    }
    let cells: Vec<String> = g.values.iter().map(u64::to_string).collect();
    out += &format!("g:  {}\n", cells.join(" "));
    let ok = g.differs_from_all(&rows);
    out += &format!("differs from every row: {}\n", if ok { "yes" } else { "no" });
    Ok(out)
}

fn run(cli: Cli) -> Result<String> {
    let out = match cli.command {
        Command::Ordinal { k } => format!("{}\n", Ordinal::from_nat(k)?),
        Command::Parse { formula, code } => {
            let f = parse(&formula)?;
            if code {
                format!("{f}\ncode: {}\n", encode(&f))
            } else {
                format!("{f}\n")
            }
        }
        Command::Table { formula } => TruthTable::of(&parse(&formula)?)?.to_string(),
        Command::Nform { formula, survey } => {
            if survey {
                let report = nor_complete_survey()?;
                if !report.all_verified() {
                    bail!("{report}survey failed");
                }
                report.to_string()
            } else {
                let f = parse(formula.as_deref().expect("clap requires it"))?;
                format!("{}\n", to_n_form(&f))
            }
        }
        Command::Countermodel {
            formula,
            max_worlds,
            dot,
        } => {
            let f = parse(&formula)?;
            match countermodel_search(&f, max_worlds)? {
                Some(c) if dot => emit_dot(c.model.frame().order(), "countermodel"),
                Some(c) => c.to_string(),
                None => format!("no countermodel with at most {max_worlds} worlds\n"),
            }
        }
        Command::Heyting { command } => heyting(&command)?,
        Command::Merge { script } => {
            let r = replay(&read(&script)?).with_context(|| format!("in {}", script.display()))?;
            let mut out = r.workspace.to_string();
            for t in &r.triples {
                out += &format!("triple: {t}\n");
            }
            for z in r.endowment.entries() {
                out += &format!("zero: {} at {}\n", z.label, z.acquired);
            }
            out
        }
        Command::Chain {
            assertions,
            resolve,
        } => {
            let mut chain = CitationChain::start(&assertions[0]);
            for a in &assertions[1..] {
                chain = chain.cite(chain.head(), a)?;
            }
            let mut out = chain.to_string();
            if let Some(name) = resolve {
                let found = chain.resolve_from(chain.head(), &name);
                out += &match found {
                    Some(i) => format!("{name}: {}\n", CitationChain::label(i)),
                    None => format!("{name}: not found\n"),
                };
            }
            out
        }
        Command::Ledger { n } => format!("{}\n", ledger(n)),
        Command::Homogeneity { n } => format!("{}\n", homogeneity_flag(n)?),
        Command::Affinity { left, right, shift } => {
            let p = affinity(&left, &right)?;
            let p = if shift > 0 { rearticulate(&p, shift)? } else { p };
            p.to_string()
        }
        Command::Diag {
            seed,
            size,
            max,
            context,
            hole,
        } => match (context, hole) {
            (Some(c), Some(h)) => {
                let fp = fixed_point(&parse(&c)?, &h)?;
                let mut out = format!("B = {}\n", fp.diagonalized.formula);
                out += &format!("D = {}\n", fp.sentence.formula);
                out += &format!("code(D) = {}\n", fp.sentence.code);
                out += &format!("D expands to {}\n", fp.expansion);
                if !fp.verify() {
                    bail!("{out}fixed-point check failed");
                }
                out + "fixed point verified\n"
            }
            _ => diag(seed, size, max)?,
        },
        Command::Machines { command } => machines(&command)?,
    };
    Ok(out)
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
