//! Command-line surface: deterministic table/JSON emission, the optional
//! coefficient cache, and exit-code conventions (0 success, 1 verification
//! failure, 2 usage).

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::chains::{Chain, ChainSet};
use crate::dirac::{self, DiracSeriesRep, SweepOptions};
use crate::error::Error;
use crate::partitions::cache;
use crate::weights::{InfChar, Weight};
use crate::{blattner, chains};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Resolved run configuration: one command plus the global options.
#[derive(Parser, Debug)]
#[command(
    name = "dirac-series",
    version,
    about = "Dirac series of GL(n,H): chain calculus, spin lowest K-types, Blattner multiplicities",
    after_help = "Chain-set literals are comma-separated chains, each 's:top-bottom' \
                  (or 's:top' for a singleton) or 'u:r' for the unipotent chain \
                  [2r-1,...,1]; whitespace and brackets are ignored, so \
                  '{s:[15-13], u:[4]}' parses too. Weights and infinitesimal \
                  characters are comma-separated integers."
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Optional coefficient cache file, loaded before and saved after the run.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Worker threads (default: all cores). Output does not depend on this.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Allow long-running configurations (verify with n > 6).
    #[arg(long, global = true)]
    pub long: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every chain decomposition of an infinitesimal character with
    /// per-representation summaries.
    Enumerate {
        /// Strictly decreasing positive integers, e.g. "3,1" (may be empty).
        #[arg(long, default_value = "")]
        infchar: String,
    },
    /// Enumerate the FS-scattered representations of GL(n,H) and check the
    /// 2^{n-2} count.
    Scattered {
        #[arg(long)]
        n: usize,
    },
    /// Spin lowest K-type report for one chain set.
    Slkt {
        #[arg(long)]
        chains: String,
    },
    /// Multiplicity of one K-type in the representation of a chain set.
    Multiplicity {
        #[arg(long)]
        chains: String,
        /// K-type highest weight, e.g. "1,0".
        #[arg(long)]
        tau: String,
    },
    /// Exhaustive uniqueness/multiplicity-one sweep over all chain sets with
    /// n entries drawn from {1..max-entry}.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 11)]
        max_entry: i64,
        /// Also run the spin-norm window check with this margin.
        #[arg(long)]
        spin_window: Option<i64>,
    },
}

/// Entry point used by the binary. Parses arguments (clap reports usage
/// errors with exit code 2) and runs the command.
pub fn main_entry() -> i32 {
    let config = RunConfig::parse();
    match run(&config, &mut std::io::stdout()) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::TheoremViolation(_) => EXIT_VERIFICATION,
                _ => EXIT_USAGE,
            }
        }
    }
}

/// Run one command, writing the deterministic report to `out`.
pub fn run(config: &RunConfig, out: &mut impl Write) -> Result<(), Error> {
    if let Some(path) = &config.cache {
        cache::load(path)?;
    }
    let result = match config.jobs {
        None => dispatch(config, out),
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
            let mut buffered = Vec::new();
            let run = pool.install(|| dispatch(config, &mut buffered));
            out.write_all(&buffered)?;
            run
        }
    };
    // The cache is an accelerator: save whatever was learned even when a
    // verification fails, but not on usage errors.
    if let Some(path) = &config.cache {
        if result.is_ok() || matches!(result, Err(Error::TheoremViolation(_))) {
            cache::save(path)?;
        }
    }
    result
}

fn dispatch(config: &RunConfig, out: &mut impl Write) -> Result<(), Error> {
    match &config.command {
        Command::Enumerate { infchar } => cmd_enumerate(infchar, config.format, out),
        Command::Scattered { n } => cmd_scattered(*n, config.format, out),
        Command::Slkt { chains } => cmd_slkt(chains, config.format, out),
        Command::Multiplicity { chains, tau } => cmd_multiplicity(chains, tau, config.format, out),
        Command::Verify { n, max_entry, spin_window } => {
            cmd_verify(*n, *max_entry, *spin_window, config.long, config.format, out)
        }
    }
}

/// Parse a comma-separated integer weight; the empty string is rank zero.
pub fn parse_weight(text: &str) -> Result<Weight, Error> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(Weight::new(vec![]));
    }
    let coords = t
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{p:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Weight::new(coords))
}

pub fn parse_infchar(text: &str) -> Result<InfChar, Error> {
    InfChar::new(parse_weight(text)?)
}

/// Parse a chain-set literal: comma-separated chains, each "s:top-bottom"
/// (or "s:top") or "u:r". Whitespace and bracket characters are ignored.
pub fn parse_chain_set(text: &str) -> Result<ChainSet, Error> {
    let cleaned: String = text.chars().filter(|c| !" \t[]{}".contains(*c)).collect();
    let mut schains = Vec::new();
    let mut uchain: Option<Chain> = None;
    for item in cleaned.split(',').filter(|s| !s.is_empty()) {
        let (kind, body) = item
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("chain {item:?}: expected 'kind:data'")))?;
        match kind {
            "s" => {
                let (top_text, bottom_text) = match body.split_once('-') {
                    Some((a, b)) => (a, b),
                    None => (body, body),
                };
                let top = top_text
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("chain {item:?}: {e}")))?;
                let bottom = bottom_text
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("chain {item:?}: {e}")))?;
                schains.push(Chain::span_s(top, bottom)?);
            }
            "u" => {
                let r = body
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("chain {item:?}: {e}")))?;
                if r == 0 {
                    return Err(Error::Parse("u-chain needs r >= 1".into()));
                }
                if uchain.replace(Chain::unipotent(r)).is_some() {
                    return Err(Error::Parse("more than one u-chain".into()));
                }
            }
            other => return Err(Error::Parse(format!("unknown chain kind {other:?}"))),
        }
    }
    ChainSet::new(schains, uchain)
}

/// Canonical literal for a chain set; round-trips through `parse_chain_set`.
pub fn chain_set_literal(cs: &ChainSet) -> String {
    let mut items: Vec<String> = cs
        .schains()
        .iter()
        .map(|c| {
            if c.top() == c.bottom() {
                format!("s:{}", c.top())
            } else {
                format!("s:{}-{}", c.top(), c.bottom())
            }
        })
        .collect();
    if let Some(u) = cs.uchain() {
        items.push(format!("u:{}", u.len()));
    }
    items.join(",")
}

#[derive(Serialize)]
struct RepSummary {
    chains: ChainSet,
    rep: chains::RepParams,
    lowest_ktype: Weight,
    fs_scattered: bool,
}

fn weight_text(w: &Weight) -> String {
    w.coords().iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_enumerate(infchar_text: &str, format: Format, out: &mut impl Write) -> Result<(), Error> {
    let l = parse_infchar(infchar_text)?;
    let rows: Vec<RepSummary> = chains::decompositions(&l)
        .into_iter()
        .map(|cs| {
            let rep = DiracSeriesRep::from_chains(cs);
            RepSummary {
                fs_scattered: dirac::is_fs_scattered(&rep),
                lowest_ktype: dirac::lowest_ktype(rep.params()),
                rep: rep.params().clone(),
                chains: rep.chains().clone(),
            }
        })
        .collect();
    match format {
        Format::Json => {
            let doc = json!({
                "infchar": l.restricted(),
                "count": rows.len(),
                "reps": rows,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Tsv => {
            writeln!(out, "chains\taq\tr\tlowest_ktype\tfs_scattered")?;
            for row in &rows {
                let aq: Vec<String> =
                    row.rep.aq_factors.iter().map(|f| format!("{}:{}", f.k, f.b)).collect();
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    chain_set_literal(&row.chains),
                    aq.join(";"),
                    row.rep.r,
                    weight_text(&row.lowest_ktype),
                    row.fs_scattered
                )?;
            }
        }
    }
    Ok(())
}

fn cmd_scattered(n: usize, format: Format, out: &mut impl Write) -> Result<(), Error> {
    let reps = chains::enumerate_fs_scattered(n)?;
    let expected = 1usize << (n - 2);
    match format {
        Format::Json => {
            let doc = json!({
                "n": n,
                "count": reps.len(),
                "expected": expected,
                "reps": reps,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Tsv => {
            writeln!(out, "chains")?;
            for cs in &reps {
                writeln!(out, "{}", chain_set_literal(cs))?;
            }
        }
    }
    if reps.len() != expected {
        return Err(Error::TheoremViolation(format!(
            "FS-scattered count {} differs from 2^(n-2) = {expected} at n = {n}",
            reps.len()
        )));
    }
    Ok(())
}

fn cmd_slkt(chain_text: &str, format: Format, out: &mut impl Write) -> Result<(), Error> {
    let cs = parse_chain_set(chain_text)?;
    let rep = DiracSeriesRep::from_chains(cs);
    let report = dirac::slkt(&rep)?;
    let fs = dirac::is_fs_scattered(&rep);
    let dirac_weight = dirac::dirac_cohomology_weight(&rep);
    match format {
        Format::Json => {
            let doc = json!({
                "chains": rep.chains(),
                "infchar": rep.infchar().restricted(),
                "slkt": report.slkt,
                "multiplicity": report.multiplicity,
                "fs_scattered": fs,
                "dirac_weight": dirac_weight,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Tsv => {
            writeln!(out, "chains\tinfchar\tslkt\tmultiplicity\tfs_scattered\tdirac_weight")?;
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                chain_set_literal(rep.chains()),
                weight_text(rep.infchar().restricted()),
                weight_text(&report.slkt),
                report.multiplicity,
                fs,
                weight_text(&dirac_weight)
            )?;
        }
    }
    Ok(())
}

fn cmd_multiplicity(
    chain_text: &str,
    tau_text: &str,
    format: Format,
    out: &mut impl Write,
) -> Result<(), Error> {
    let cs = parse_chain_set(chain_text)?;
    let rep = DiracSeriesRep::from_chains(cs);
    let tau = parse_weight(tau_text)?;
    if tau.rank() != rep.rank() {
        return Err(Error::Parse(format!(
            "K-type {tau} has rank {}, chain set has rank {}",
            tau.rank(),
            rep.rank()
        )));
    }
    if !crate::weights::is_ktype(&tau) {
        return Err(Error::Parse(format!("{tau} is not a K-type highest weight")));
    }
    let m = blattner::ktype_multiplicity(rep.params(), &tau)?;
    match format {
        Format::Json => {
            let doc = json!({
                "chains": rep.chains(),
                "tau": tau,
                "multiplicity": m,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Tsv => {
            writeln!(out, "chains\ttau\tmultiplicity")?;
            writeln!(out, "{}\t{}\t{}", chain_set_literal(rep.chains()), weight_text(&tau), m)?;
        }
    }
    Ok(())
}

fn cmd_verify(
    n: usize,
    max_entry: i64,
    spin_window: Option<i64>,
    long: bool,
    format: Format,
    out: &mut impl Write,
) -> Result<(), Error> {
    if n > 6 && !long {
        return Err(Error::Unsupported(format!(
            "verify with n = {n} > 6 is long-running; pass --long to allow it"
        )));
    }
    let report = dirac::verify_uniqueness_sweep(n, max_entry, SweepOptions { spin_window })?;
    match format {
        Format::Json => {
            let doc = json!({
                "n": report.n,
                "max_entry": report.max_entry,
                "infchars": report.infchars,
                "reps_checked": report.reps_checked,
                "max_candidates": report.max_candidates,
                "window_types_checked": report.window_types_checked,
                "status": "pass",
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Tsv => {
            writeln!(out, "n\tmax_entry\tinfchars\treps_checked\tmax_candidates\twindow_types_checked\tstatus")?;
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\tpass",
                report.n,
                report.max_entry,
                report.infchars,
                report.reps_checked,
                report.max_candidates,
                report.window_types_checked
            )?;
        }
    }
    Ok(())
}
