mod analyze;
mod gen;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read as _, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use pamona::enumerate::{census, pa_classes, CensusMode};
use pamona::format::{emit_semigroup, j_order_dot, natural_order_dot, parse_semigroup, sub_lattice_dot};
use pamona::isotest::{anti_isomorphisms, isomorphisms, pa_isomorphic_monoids};
use pamona::pam::{pa_monoid, pai_monoid, PaMonoid, PaOptions, DEFAULT_CAP};
use pamona::sublat::SubLattice;
use pamona::verify::{run_verify, Profile};
use pamona::{Error, Semigroup};

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Lib(#[from] Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::SizeCapExceeded { .. } | Error::CarrierTooLarge { .. } | Error::OrderTooLarge(_)) => 3,
            _ => 2,
        }
    }
}

#[derive(Parser)]
#[command(name = "pamona", version, about = "Finite semigroups and their partial automorphism monoids")]
struct Cli {
    /// Worker threads for parallel searches.
    #[arg(long, global = true, env = "PAMONA_JOBS")]
    jobs: Option<usize>,
    /// Largest partial automorphism monoid to build.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DotKind {
    Natural,
    J,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named construction in the interchange format.
    #[command(after_help = gen::USAGE)]
    Gen {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        spec: Vec<String>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Report structural properties of a semigroup.
    Analyze {
        file: String,
        #[arg(long)]
        machine: bool,
        /// Print a Hasse diagram instead of the report.
        #[arg(long, value_enum)]
        dot: Option<DotKind>,
    },
    /// Enumerate the lattice of (inverse) subsemigroups.
    Lattice {
        file: String,
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Build the monoid of partial automorphisms.
    Pa {
        file: String,
        #[arg(long)]
        inverse_only: bool,
        /// Write the composition table in the interchange format.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Decide isomorphism (or anti-isomorphism with --anti).
    Iso {
        first: String,
        second: String,
        #[arg(long)]
        anti: bool,
    },
    /// Decide whether the partial automorphism monoids are isomorphic.
    Paiso {
        first: String,
        second: String,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Enumerate semigroups of a small order up to isomorphism.
    Census {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        anti: bool,
        /// Also group the members by PA-isomorphism.
        #[arg(long)]
        pa_classes: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in verification suite.
    Verify {
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        #[arg(long)]
        full: bool,
        #[arg(long)]
        machine: bool,
    },
}

pub fn read_semigroup(path: &str) -> Result<Semigroup, Failure> {
    let mut text = String::new();
    let io_err = |source| Failure::Io { path: path.to_string(), source };
    if path == "-" {
        io::stdin().read_to_string(&mut text).map_err(io_err)?;
    } else {
        text = fs::read_to_string(path).map_err(io_err)?;
    }
    parse_semigroup(&text).map_err(|e| match e {
        Error::Parse { .. } => Failure::Usage(format!("{path}: {e}")),
        other => Failure::Lib(other),
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|source| Failure::Io { path: path.display().to_string(), source })
}

/// Exit status of a successful run: affirmative or negative verdict.
enum Verdict {
    Yes,
    No,
}

fn pa_of(s: &Semigroup, inverse_only: bool, opts: PaOptions) -> Result<PaMonoid, Failure> {
    Ok(if inverse_only { pai_monoid(s, opts)? } else { pa_monoid(s, opts)? })
}

fn run(cli: Cli, out: &mut String) -> Result<Verdict, Failure> {
    let opts = PaOptions { cap: cli.cap };
    match cli.command {
        Command::Gen { spec, out: file } => {
            let text = emit_semigroup(&gen::build(&spec)?);
            match file {
                Some(path) => write_file(&path, &text)?,
                None => out.push_str(&text),
            }
        }
        Command::Analyze { file, machine, dot } => {
            let s = read_semigroup(&file)?;
            match dot {
                Some(DotKind::Natural) => out.push_str(&natural_order_dot(&s)?),
                Some(DotKind::J) => out.push_str(&j_order_dot(&s)),
                None => out.push_str(&analyze::render(&analyze::report(&s)?, machine)),
            }
        }
        Command::Lattice { file, inverse, dot } => {
            let s = read_semigroup(&file)?;
            let lat = if inverse { SubLattice::subi(&s)? } else { SubLattice::sub(&s) };
            if dot {
                out.push_str(&sub_lattice_dot(&lat));
            } else {
                let _ = writeln!(out, "members\t{}", lat.len());
                let _ = writeln!(out, "atoms\t{}", lat.atoms().len());
                let _ = writeln!(out, "covers\t{}", lat.hasse().len());
            }
        }
        Command::Pa { file, inverse_only, table } => {
            let s = read_semigroup(&file)?;
            let m = pa_of(&s, inverse_only, opts)?;
            let _ = writeln!(out, "order\t{}", m.order());
            let _ = writeln!(out, "idempotents\t{}", m.monoid().semigroup().idempotents().len());
            let _ = writeln!(out, "lattice_members\t{}", m.lattice().len());
            if let Some(path) = table {
                write_file(&path, &emit_semigroup(&m.monoid().as_semigroup()))?;
            }
        }
        Command::Iso { first, second, anti } => {
            let (s, t) = (read_semigroup(&first)?, read_semigroup(&second)?);
            let mut found = isomorphisms(&s, &t, Some(1));
            if anti && found.is_empty() {
                found = anti_isomorphisms(&s, &t, Some(1));
            }
            let Some(w) = found.pop() else {
                out.push_str("not isomorphic\n");
                return Ok(Verdict::No);
            };
            let _ = writeln!(out, "{:?}", w.kind);
            let pairs: Vec<String> = w.map.iter().enumerate().map(|(x, &y)| format!("{}>{}", s.label(x), t.label(y))).collect();
            let _ = writeln!(out, "map\t{}", pairs.join(" "));
        }
        Command::Paiso { first, second, witness } => {
            let (s, t) = (read_semigroup(&first)?, read_semigroup(&second)?);
            let (a, b) = (Arc::new(pa_monoid(&s, opts)?), Arc::new(pa_monoid(&t, opts)?));
            let verdict = pa_isomorphic_monoids(&a, &b)?;
            if !verdict.isomorphic {
                let _ = writeln!(out, "not PA-isomorphic");
                if let Some(reason) = verdict.separated_by {
                    let _ = writeln!(out, "separated_by\t{reason}");
                }
                return Ok(Verdict::No);
            }
            let _ = writeln!(out, "PA-isomorphic");
            let _ = writeln!(out, "pa_order\t{}", a.order());
            let mut text = String::new();
            if let Some(e) = &verdict.phi_e {
                let _ = writeln!(text, "phi_e\t{e}");
            }
            if let Some(assoc) = &verdict.associated {
                let _ = writeln!(text, "associated\t{}", assoc.map);
                for (x, case) in &assoc.cases {
                    let _ = writeln!(text, "case\t{}\t{case:?}", s.label(*x));
                }
            }
            out.push_str(&text);
            if let (Some(path), Some(phi)) = (witness, &verdict.phi) {
                for (i, &j) in phi.map().iter().enumerate() {
                    let _ = writeln!(text, "map\t{}\t{}", a.monoid().element(i), b.monoid().element(j));
                }
                write_file(&path, &text)?;
            }
        }
        Command::Census { n, inverse, anti, pa_classes: with_classes, out: dir } => {
            let c = census(n, CensusMode { anti, inverse_only: inverse })?;
            let classes = if with_classes { Some(pa_classes(&c, opts)?) } else { None };
            let mut index = String::from("index\tfile\tinverse\tcombinatorial\tgroup\tsemilattice\tcommutative\tpa_class\n");
            for (i, e) in c.entries.iter().enumerate() {
                let class = classes.as_ref().and_then(|p| p.class_of(i)).map_or("-".to_string(), |k| k.to_string());
                let name = format!("order{n}_{i:04}.sg");
                let _ = writeln!(
                    index,
                    "{i}\t{name}\t{}\t{}\t{}\t{}\t{}\t{class}",
                    e.inverse, e.combinatorial, e.group, e.semilattice, e.commutative
                );
                if let Some(dir) = &dir {
                    write_file(&dir.join(&name), &emit_semigroup(&e.semigroup))?;
                }
            }
            let _ = writeln!(out, "members\t{}", c.len());
            if let Some(p) = &classes {
                let _ = writeln!(out, "pa_classes\t{}", p.classes.len());
            }
            match &dir {
                Some(dir) => write_file(&dir.join("index.tsv"), &index)?,
                None => out.push_str(&index),
            }
        }
        Command::Verify { quick, full: _, machine } => {
            let report = run_verify(if quick { Profile::Quick } else { Profile::Full });
            out.push_str(&if machine { report.machine() } else { report.human() });
            if !report.passed() {
                return Ok(Verdict::No);
            }
        }
    }
    Ok(Verdict::Yes)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("pamona: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = String::new();
    let result = run(cli, &mut out);
    let _ = io::stdout().write_all(out.as_bytes());
    match result {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("pamona: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
