use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use bleval::aggregate::{aggregate, evaluate_pairs, render_csv, render_json};
use bleval::geometry::normalize_chain;
use bleval::ingest::{format_plain, load_chains, load_pairs, Format};
use bleval::perturb::{jitter_chain, merge_chains, split_chain};
use bleval::tolerance::compute_tolerances;
use bleval::{EvalConfig, PolyChain};

#[derive(Parser)]
#[command(name = "bleval", version, about = "Evaluate text baseline detection against ground truth")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Pagexml,
    Plain,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Pagexml => Format::PageXml,
            FormatArg::Plain => Format::Plain,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Operator {
    Split,
    Jitter,
    Merge,
}

#[derive(Subcommand)]
enum Command {
    /// Score HY files against GT files listed line by line.
    Eval {
        /// List file of GT baseline files.
        #[arg(long)]
        gt: PathBuf,
        /// List file of HY baseline files, paired line by line with --gt.
        #[arg(long)]
        hyp: PathBuf,
        /// Input format; by default `.xml` is PAGE XML and `.txt` is plain.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Use this tolerance (pixels) for every GT line.
        #[arg(long = "fixed-tol")]
        fixed_tol: Option<f64>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Worker threads.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: u16,
    },
    /// Apply a degradation to every baseline of a file; writes plain text.
    Perturb {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        op: Operator,
        /// split: arc-length fraction; jitter: amplitude in pixels;
        /// merge: number of consecutive baselines joined into one.
        #[arg(long)]
        param: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Show vertex counts and tolerances of one GT file.
    Inspect {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long = "fixed-tol")]
        fixed_tol: Option<f64>,
    },
}

fn config_for(fixed_tol: Option<f64>) -> Result<EvalConfig> {
    let config = EvalConfig {
        fixed_tolerance: fixed_tol,
        ..EvalConfig::default()
    };
    config.validate()?;
    Ok(config)
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn run_eval(
    gt: &Path,
    hyp: &Path,
    format: Option<Format>,
    fixed_tol: Option<f64>,
    json: Option<&Path>,
    csv: Option<&Path>,
    jobs: usize,
) -> Result<()> {
    let config = config_for(fixed_tol)?;
    let pairs = load_pairs(gt, hyp)?;
    let pages = evaluate_pairs(&pairs, format, &config, jobs)?;
    let corpus = aggregate(pages, config)?;
    if let Some(path) = json {
        write(path, &render_json(&corpus)?)?;
    }
    if let Some(path) = csv {
        write(path, &render_csv(&corpus)?)?;
    }
    println!("R {:.4}", corpus.mean_r);
    println!("P {:.4}", corpus.mean_p);
    println!("F {:.4}", corpus.f_of_means);
    Ok(())
}

fn perturb_chains(chains: &[PolyChain], op: Operator, param: f64, seed: u64) -> Result<Vec<PolyChain>> {
    let mut out = Vec::new();
    match op {
        Operator::Split => {
            for c in chains {
                if c.len() < 2 {
                    out.push(c.clone());
                    continue;
                }
                let (a, b) = split_chain(c, param)?;
                out.extend([a, b]);
            }
        }
        Operator::Jitter => {
            if !(param >= 0.0 && param.fract() == 0.0 && param <= f64::from(u32::MAX)) {
                bail!("jitter amplitude must be a non-negative integer, got {param}");
            }
            for (i, c) in chains.iter().enumerate() {
                let jittered = jitter_chain(c, param as u32, seed.wrapping_add(i as u64));
                // Keep coordinates readable by the ingest rules.
                let clamped = jittered
                    .vertices()
                    .iter()
                    .map(|p| bleval::Point::new(p.x.max(0), p.y.max(0)))
                    .collect();
                out.push(PolyChain::new(clamped)?);
            }
        }
        Operator::Merge => {
            if !(param >= 1.0 && param.fract() == 0.0) {
                bail!("merge group size must be a positive integer, got {param}");
            }
            for group in chains.chunks(param as usize) {
                let merged = group[1..]
                    .iter()
                    .fold(group[0].clone(), |acc, c| merge_chains(&acc, c));
                out.push(merged);
            }
        }
    }
    Ok(out)
}

fn run_perturb(input: &Path, op: Operator, param: f64, seed: u64, out: &Path, format: Option<Format>) -> Result<()> {
    if Format::from_path(out) == Some(Format::PageXml) {
        bail!("perturb writes plain text; use a .txt output path");
    }
    let chains = load_chains(input, format)?;
    let perturbed = perturb_chains(&chains, op, param, seed)?;
    write(out, &format_plain(&perturbed))
}

fn run_inspect(input: &Path, format: Option<Format>, fixed_tol: Option<f64>) -> Result<()> {
    let config = config_for(fixed_tol)?;
    let chains = load_chains(input, format)?;
    let dense: Vec<PolyChain> = chains.iter().map(normalize_chain).collect();
    let tol = compute_tolerances(&dense, &config);
    println!("baselines {}", chains.len());
    if let Some(mean) = tol.inter_line_mean {
        println!("mean_distance {mean:.4}");
    }
    println!("index\tvertices\tnormalized\tdistance\ttolerance");
    for (i, (raw, norm)) in chains.iter().zip(&dense).enumerate() {
        let distance = match tol.distances.get(i) {
            Some(Some(d)) => format!("{d:.4}"),
            Some(None) => "default".to_string(),
            None => "-".to_string(),
        };
        println!(
            "{i}\t{}\t{}\t{distance}\t{:.4}",
            raw.len(),
            norm.len(),
            tol.values[i]
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval {
            gt,
            hyp,
            format,
            fixed_tol,
            json,
            csv,
            jobs,
        } => run_eval(
            &gt,
            &hyp,
            format.map(Into::into),
            fixed_tol,
            json.as_deref(),
            csv.as_deref(),
            usize::from(jobs),
        ),
        Command::Perturb {
            input,
            op,
            param,
            seed,
            out,
            format,
        } => run_perturb(&input, op, param, seed, &out, format.map(Into::into)),
        Command::Inspect {
            input,
            format,
            fixed_tol,
        } => run_inspect(&input, format.map(Into::into), fixed_tol),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
