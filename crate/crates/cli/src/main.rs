use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tiltlab::indec::IndecTable;
use tiltlab::io::{export_poset, import_labels, import_poset, reconstruction_json, Format, Label};
use tiltlab::iso::poset_isomorphisms;
use tiltlab::pipeline::{build, check_levels, verify_poset};
use tiltlab::poset::AbstractPoset;
use tiltlab::quiver::{parse_quiver, Quiver};
use tiltlab::reconstruct::{extract_tilting, extract_tilting_dense};
use tiltlab::stilt::{check_tau_automorphism, StiltPoset};

#[derive(Parser)]
#[command(name = "tiltlab", version, about = "Support tilting posets of Dynkin quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// List indecomposables and support tilting modules.
    Enumerate { quiver: PathBuf },
    /// Export the support tilting poset.
    Poset {
        quiver: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Attach summand dimension vectors and supports.
        #[arg(long)]
        labeled: bool,
    },
    /// Recover the tilting elements of an unlabeled poset.
    Reconstruct { poset: PathBuf },
    /// Compare reconstruction with the labeled tilting set and injective tower.
    Verify {
        quiver: PathBuf,
        /// Also rebuild the dead-end class from translates over subquivers.
        #[arg(long)]
        deep_check: bool,
    },
    /// Isomorphisms between two posets and whether each preserves tilting elements.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 1)]
        limit: usize,
    },
    /// Check that Tau is an automorphism of the cover graph.
    TauCheck { quiver: PathBuf },
}

/// Exit status 1: the input was fine but a check failed.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_quiver(path: &Path) -> Result<Quiver> {
    parse_quiver(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_poset(path: &Path) -> Result<AbstractPoset> {
    import_poset(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn names(q: &Quiver, vs: impl IntoIterator<Item = usize>) -> String {
    vs.into_iter().map(|v| q.name(v)).collect::<Vec<_>>().join(",")
}

fn listing(table: &IndecTable, poset: &StiltPoset) -> String {
    let q = table.quiver();
    let mut out = format!("indecomposables: {}\n", table.len());
    for (id, m) in table.iter() {
        let _ = write!(out, "  {id} {}", m.dims());
        for (tag, at) in [("P", m.projective_at), ("I", m.injective_at), ("S", m.simple_at)] {
            if let Some(a) = at {
                let _ = write!(out, " {tag}({})", q.name(a));
            }
        }
        out.push('\n');
    }
    let _ = writeln!(out, "support tilting modules: {}", poset.len());
    for (id, m) in poset.elements().iter().enumerate() {
        let summands: Vec<String> = m.summands().iter().map(|x| x.to_string()).collect();
        let _ = write!(
            out,
            "  {id} {{{}}} support {{{}}}",
            summands.join(","),
            names(q, m.support().iter().copied())
        );
        if poset.tilting().contains(&id) {
            out.push_str(" tilting");
        }
        out.push('\n');
    }
    out
}

fn set_text(ids: impl IntoIterator<Item = u64>) -> String {
    format!(
        "{{{}}}",
        ids.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
    )
}

/// Tilting elements from labels: those with full support.
fn labeled_tilting(labels: &BTreeMap<u64, Label>) -> BTreeSet<u64> {
    let full = labels.values().map(|l| l.support.len()).max().unwrap_or(0);
    labels
        .iter()
        .filter(|(_, l)| l.support.len() == full)
        .map(|(&id, _)| id)
        .collect()
}

fn tilting_ids(p: &AbstractPoset, labels: Option<&BTreeMap<u64, Label>>) -> Result<BTreeSet<u64>> {
    match labels {
        Some(l) => Ok(labeled_tilting(l)),
        None => Ok(extract_tilting_dense(p)?.2.into_iter().map(|x| p.id(x)).collect()),
    }
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Enumerate { quiver } => {
            let (table, poset) = build(&load_quiver(&quiver)?)?;
            Ok(listing(&table, &poset))
        }
        Command::Poset {
            quiver,
            format,
            labeled,
        } => {
            let (table, poset) = build(&load_quiver(&quiver)?)?;
            let format = match format {
                FormatArg::Json => Format::Json,
                FormatArg::Dot => Format::Dot,
            };
            Ok(export_poset(&poset, &table, format, labeled)?)
        }
        Command::Reconstruct { poset } => Ok(reconstruction_json(&extract_tilting(&load_poset(&poset)?)?)),
        Command::Verify { quiver, deep_check } => {
            let (table, poset) = build(&load_quiver(&quiver)?)?;
            let report = verify_poset(&poset).map_err(|e| CheckFailed(e.to_string()))?;
            let ids = |v: &[usize]| set_text(v.iter().map(|&x| x as u64));
            if !report.matches() {
                return Err(CheckFailed(format!(
                    "MISMATCH: labeled tilting {} tower {:?}, reconstructed tilting {} tower {:?}",
                    ids(&report.labeled_tilting),
                    report.labeled_tower,
                    ids(&report.reconstructed_tilting),
                    report.reconstructed_tower
                ))
                .into());
            }
            check_levels(&poset, &table, deep_check).map_err(|e| CheckFailed(format!("MISMATCH: {e}")))?;
            Ok(format!(
                "VERIFIED: tilting {} matches reconstruction ({} elements, tower length {})\n",
                ids(&report.labeled_tilting),
                report.elements,
                report.labeled_tower.len()
            ))
        }
        Command::Iso { first, second, limit } => {
            let (t1, t2) = (read(&first)?, read(&second)?);
            let p1 = import_poset(&t1).with_context(|| format!("{}", first.display()))?;
            let p2 = import_poset(&t2).with_context(|| format!("{}", second.display()))?;
            let maps = poset_isomorphisms(&p1, &p2, limit);
            if maps.is_empty() {
                return Ok("no isomorphism\n".into());
            }
            let (l1, l2) = (import_labels(&t1)?, import_labels(&t2)?);
            let (l1, l2) = match (l1, l2) {
                (Some(a), Some(b)) => (Some(a), Some(b)),
                _ => (None, None),
            };
            let tilt1 = tilting_ids(&p1, l1.as_ref())?;
            let tilt2 = tilting_ids(&p2, l2.as_ref())?;
            let mut out = String::new();
            let mut all_ok = true;
            for (k, map) in maps.iter().enumerate() {
                let pairs: Vec<String> = (0..p1.len())
                    .map(|v| format!("{}->{}", p1.id(v), p2.id(map[v])))
                    .collect();
                let image: BTreeSet<u64> = tilt1
                    .iter()
                    .map(|&id| p2.id(map[p1.index_of(id).expect("tilting ids come from the poset")]))
                    .collect();
                let ok = image == tilt2;
                all_ok &= ok;
                let verdict = if ok {
                    "tilting preserved"
                } else {
                    "tilting NOT preserved"
                };
                let _ = writeln!(
                    out,
                    "isomorphism {}: {} ; {verdict} {}",
                    k + 1,
                    pairs.join(" "),
                    set_text(image)
                );
            }
            if all_ok {
                Ok(out)
            } else {
                print!("{out}");
                Err(CheckFailed("an isomorphism does not preserve the tilting elements".into()).into())
            }
        }
        Command::TauCheck { quiver } => {
            let (table, poset) = build(&load_quiver(&quiver)?)?;
            if check_tau_automorphism(&poset, &table)? {
                Ok(format!("Tau automorphism: OK ({} elements)\n", poset.len()))
            } else {
                Err(CheckFailed("Tau is not an automorphism of the cover graph".into()).into())
            }
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<CheckFailed>().is_some() {
        return 1;
    }
    match err.downcast_ref::<tiltlab::Error>() {
        Some(tiltlab::Error::Inconsistent(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("TILTLAB_LOG")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
