mod report;
mod tiers;
mod words;

use ak_monodromy::amodule::ModuleModel;
use anyhow::{bail, Result};
use clap::{Parser, ValueEnum};
use report::{Report, SCHEMA};
use std::collections::BTreeSet;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Tier {
    Reps,
    Homology,
    Pairing,
    Monodromy,
    Lattice,
    Nonnormal,
    #[value(name = "tier2-words")]
    Tier2Words,
}

impl Tier {
    fn name(self) -> &'static str {
        match self {
            Tier::Reps => "reps",
            Tier::Homology => "homology",
            Tier::Pairing => "pairing",
            Tier::Monodromy => "monodromy",
            Tier::Lattice => "lattice",
            Tier::Nonnormal => "nonnormal",
            Tier::Tier2Words => "tier2-words",
        }
    }

    fn requires(self) -> &'static [Tier] {
        match self {
            Tier::Lattice => &[Tier::Monodromy],
            Tier::Monodromy => &[Tier::Pairing],
            Tier::Pairing => &[Tier::Homology],
            Tier::Nonnormal | Tier::Tier2Words => &[Tier::Homology],
            Tier::Reps | Tier::Homology => &[],
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Exact verification pipeline for Heisenberg covers of surface bundles.
#[derive(Parser, Debug)]
#[command(name = "ak-monodromy", version)]
struct Args {
    /// genus of the base surface
    #[arg(long)]
    g0: u32,
    /// Heisenberg modulus
    #[arg(long)]
    m: u32,
    /// comma separated tiers, or `all` (prerequisites are added)
    #[arg(long, default_value = "all")]
    tiers: String,
    /// witness word file for tier2-words
    #[arg(long)]
    words: Option<String>,
    /// report file, stdout when absent
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn parse_tiers(s: &str, with_words: bool) -> Result<BTreeSet<Tier>> {
    let mut out = BTreeSet::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if tok == "all" {
            out.extend([Tier::Reps, Tier::Homology, Tier::Pairing, Tier::Monodromy, Tier::Lattice, Tier::Nonnormal]);
            if with_words {
                out.insert(Tier::Tier2Words);
            }
            continue;
        }
        match Tier::from_str(tok, true) {
            Ok(t) => {
                out.insert(t);
            }
            Err(_) => bail!("unknown tier `{tok}`"),
        }
    }
    loop {
        let extra: Vec<Tier> = out.iter().flat_map(|t| t.requires()).filter(|t| !out.contains(t)).copied().collect();
        if extra.is_empty() {
            break;
        }
        out.extend(extra);
    }
    Ok(out)
}

fn validate(args: &Args, tiers: &BTreeSet<Tier>) -> Result<()> {
    if args.m < 2 {
        bail!("m must be at least 2");
    }
    if args.g0 < 2 {
        bail!("g0 must be at least 2");
    }
    if tiers.contains(&Tier::Lattice) && args.g0 < 5 {
        bail!("the lattice tier needs g0 >= 5 for the corrected G-classes (got g0 = {})", args.g0);
    }
    if tiers.contains(&Tier::Monodromy) && args.g0 < 3 {
        bail!("the monodromy tier needs g0 >= 3 (got g0 = {})", args.g0);
    }
    if tiers.contains(&Tier::Tier2Words) {
        if args.words.is_none() {
            bail!("tier2-words requested without --words");
        }
        if args.g0 < 3 {
            bail!("tier2-words needs g0 >= 3");
        }
    }
    Ok(())
}

fn run(args: &Args) -> Result<Report> {
    let tiers = parse_tiers(&args.tiers, args.words.is_some())?;
    validate(args, &tiers)?;
    let (g0, m) = (args.g0, args.m);
    let mut sections = Vec::new();
    let needs_model = tiers.iter().any(|t| matches!(t, Tier::Monodromy | Tier::Lattice | Tier::Tier2Words))
        || (tiers.contains(&Tier::Nonnormal) && g0 >= 3);
    let model = if needs_model { Some(ModuleModel::new(g0, m)?) } else { None };
    for t in &tiers {
        let sec = match t {
            Tier::Reps => tiers::reps(m)?,
            Tier::Homology => tiers::homology(g0, m)?,
            Tier::Pairing => tiers::pairing(g0, m)?,
            Tier::Monodromy => tiers::monodromy(model.as_ref().expect("model"))?,
            Tier::Lattice => tiers::lattice(model.as_ref().expect("model"))?,
            Tier::Nonnormal => tiers::nonnormal(g0, m, model.as_ref())?,
            Tier::Tier2Words => words::run(model.as_ref().expect("model"), args.words.as_deref().expect("words"))?,
        };
        sections.push(sec);
    }
    let passed = sections.iter().all(|s| s.passed());
    Ok(Report { schema: SCHEMA, g0, m, tiers: tiers.iter().map(|t| t.name().to_string()).collect(), passed, sections })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let report = match run(&args) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let body = match args.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => report.to_text(),
    };
    match &args.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &body) {
                eprintln!("error: writing {p}: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
