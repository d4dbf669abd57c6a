//! Corpus-level macro averaging and report files.
//!
//! Every page is scored on its own and the page scores are averaged with
//! equal weight, so a page with many lines counts as much as a page with
//! few.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::ingest::{load_chains, FilePairList, Format};
use crate::model::{EvalConfig, Page, PageEval};
use crate::page_metrics::{evaluate_page, f_value};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusEval {
    pub pages: Vec<PageEval>,
    pub mean_r: f64,
    pub mean_p: f64,
    /// Harmonic mean of `mean_r` and `mean_p`; the headline F.
    pub f_of_means: f64,
    /// Arithmetic mean of the per-page F values.
    pub mean_f: f64,
    pub total_gt: usize,
    pub total_hyp: usize,
    pub config: EvalConfig,
}

fn mean(values: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = values.len() as f64;
    values.sum::<f64>() / n
}

pub fn aggregate(pages: Vec<PageEval>, config: EvalConfig) -> Result<CorpusEval> {
    if pages.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mean_r = mean(pages.iter().map(|p| p.r_value));
    let mean_p = mean(pages.iter().map(|p| p.p_value));
    let mean_f = mean(pages.iter().map(|p| p.f_value));
    Ok(CorpusEval {
        mean_r,
        mean_p,
        f_of_means: f_value(mean_r, mean_p),
        mean_f,
        total_gt: pages.iter().map(|p| p.gt_count).sum(),
        total_hyp: pages.iter().map(|p| p.hyp_count).sum(),
        pages,
        config,
    })
}

fn with_pool<T: Send>(jobs: usize, work: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}

/// Evaluates pages on `jobs` worker threads; results keep input order.
pub fn evaluate_pages(pages: &[Page], config: &EvalConfig, jobs: usize) -> Result<Vec<PageEval>> {
    config.validate()?;
    Ok(with_pool(jobs, || {
        pages.par_iter().map(|p| evaluate_page(p, config)).collect()
    }))
}

/// Loads and evaluates every GT/HY pair. The first failing pair in list
/// order aborts the run.
pub fn evaluate_pairs(
    pairs: &FilePairList,
    format: Option<Format>,
    config: &EvalConfig,
    jobs: usize,
) -> Result<Vec<PageEval>> {
    config.validate()?;
    let results: Vec<Result<PageEval>> = with_pool(jobs, || {
        pairs
            .pairs
            .par_iter()
            .map(|(gt_path, hyp_path)| {
                let page = Page::new(
                    gt_path.display().to_string(),
                    load_chains(gt_path, format)?,
                    load_chains(hyp_path, format)?,
                );
                Ok(evaluate_page(&page, config))
            })
            .collect()
    });
    results.into_iter().collect()
}

#[derive(Serialize)]
struct Summary<'a> {
    mean_r: f64,
    mean_p: f64,
    f_of_means: f64,
    mean_f: f64,
    pages: usize,
    total_gt: usize,
    total_hyp: usize,
    config: &'a EvalConfig,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    summary: Summary<'a>,
    pages: &'a [PageEval],
}

/// The JSON report as text.
pub fn render_json(corpus: &CorpusEval) -> Result<String> {
    let report = JsonReport {
        summary: Summary {
            mean_r: corpus.mean_r,
            mean_p: corpus.mean_p,
            f_of_means: corpus.f_of_means,
            mean_f: corpus.mean_f,
            pages: corpus.pages.len(),
            total_gt: corpus.total_gt,
            total_hyp: corpus.total_hyp,
            config: &corpus.config,
        },
        pages: &corpus.pages,
    };
    let mut text = serde_json::to_string_pretty(&report).map_err(|e| Error::Report(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// The per-page CSV report as text.
pub fn render_csv(corpus: &CorpusEval) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let err = |e: csv::Error| Error::Report(e.to_string());
    w.write_record(["page_id", "gt_count", "hyp_count", "r", "p", "f"])
        .map_err(err)?;
    for p in &corpus.pages {
        w.write_record([
            p.id.clone(),
            p.gt_count.to_string(),
            p.hyp_count.to_string(),
            format!("{:.6}", p.r_value),
            format!("{:.6}", p.p_value),
            format!("{:.6}", p.f_value),
        ])
        .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Report(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Report(e.to_string()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_reports(corpus: &CorpusEval, json_path: &Path, csv_path: &Path) -> Result<()> {
    write_file(json_path, &render_json(corpus)?)?;
    write_file(csv_path, &render_csv(corpus)?)
}
