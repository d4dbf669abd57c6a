//! Reading baselines from PAGE XML and plain-text files, and pairing GT
//! with HY files from list files.
//!
//! Plain-text format: one baseline per line, `x,y` pairs joined by `;`.
//! Blank lines and lines starting with `#` are ignored.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::model::{Point, PolyChain};
use crate::{Error, Result};

const UNNAMED: &str = "<input>";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    PageXml,
    Plain,
}

impl Format {
    /// `.xml` is PAGE XML, `.txt` is plain text.
    pub fn from_path(path: &Path) -> Option<Format> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "xml" => Some(Format::PageXml),
            "txt" => Some(Format::Plain),
            _ => None,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "pagexml" => Ok(Format::PageXml),
            "plain" => Ok(Format::Plain),
            other => Err(format!("unknown format '{other}' (expected pagexml or plain)")),
        }
    }
}

/// Baselines of one PAGE XML document.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PageXmlBaselines {
    pub chains: Vec<PolyChain>,
    /// `TextLine` elements that carry no usable `Baseline`.
    pub lines_without_baseline: usize,
}

fn malformed(line: u32, token: &str, reason: impl Into<String>) -> Error {
    Error::MalformedPoint {
        path: UNNAMED.to_string(),
        line,
        token: token.to_string(),
        reason: reason.into(),
    }
}

fn parse_point(token: &str, line: u32) -> Result<Point> {
    let (xs, ys) = token
        .split_once(',')
        .ok_or_else(|| malformed(line, token, "expected 'x,y'"))?;
    let coord = |s: &str| -> Result<i32> {
        let v: i64 = s
            .trim()
            .parse()
            .map_err(|_| malformed(line, token, format!("'{}' is not an integer", s.trim())))?;
        if v < 0 {
            return Err(malformed(line, token, "negative coordinate"));
        }
        i32::try_from(v).map_err(|_| malformed(line, token, "coordinate too large"))
    };
    Ok(Point::new(coord(xs)?, coord(ys)?))
}

fn to_chain(points: Vec<Point>, line: u32, source: &str) -> Result<PolyChain> {
    PolyChain::new(points).map_err(|e| malformed(line, source, e.to_string()))
}

/// Extracts every `Baseline` element in document order. Elements are
/// matched by local name, so any PAGE namespace version is accepted.
pub fn parse_page_xml(document_text: &str) -> Result<PageXmlBaselines> {
    let doc = roxmltree::Document::parse(document_text).map_err(|source| Error::Xml {
        path: UNNAMED.to_string(),
        source,
    })?;
    let mut out = PageXmlBaselines::default();
    for node in doc.descendants().filter(|n| n.is_element()) {
        match node.tag_name().name() {
            "TextLine" => {
                let has_baseline = node.children().any(|c| {
                    c.is_element()
                        && c.tag_name().name() == "Baseline"
                        && c.attribute("points").is_some_and(|p| !p.trim().is_empty())
                });
                if !has_baseline {
                    out.lines_without_baseline += 1;
                }
            }
            "Baseline" => {
                let Some(points) = node.attribute("points") else {
                    continue;
                };
                if points.trim().is_empty() {
                    continue;
                }
                let line = doc.text_pos_at(node.range().start).row;
                let pts = points
                    .split_whitespace()
                    .map(|tok| parse_point(tok, line))
                    .collect::<Result<Vec<_>>>()?;
                out.chains.push(to_chain(pts, line, points)?);
            }
            _ => {}
        }
    }
    Ok(out)
}

/// Parses the plain-text baseline format.
pub fn parse_plain(document_text: &str) -> Result<Vec<PolyChain>> {
    let mut chains = Vec::new();
    for (i, raw) in document_text.lines().enumerate() {
        let line_no = (i + 1) as u32;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let pts = text
            .split(';')
            .map(|tok| parse_point(tok.trim(), line_no))
            .collect::<Result<Vec<_>>>()?;
        chains.push(to_chain(pts, line_no, text)?);
    }
    Ok(chains)
}

/// Inverse of [`parse_plain`].
pub fn format_plain(chains: &[PolyChain]) -> String {
    let mut out = String::new();
    for c in chains {
        let line: Vec<String> = c.vertices().iter().map(|p| format!("{},{}", p.x, p.y)).collect();
        out.push_str(&line.join(";"));
        out.push('\n');
    }
    out
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads the baselines of one file. `format` defaults to detection by
/// file extension.
pub fn load_chains(path: &Path, format: Option<Format>) -> Result<Vec<PolyChain>> {
    let format = match format.or_else(|| Format::from_path(path)) {
        Some(f) => f,
        None => return Err(Error::UnknownFormat(path.to_path_buf())),
    };
    let text = read_text(path)?;
    let name = path.display().to_string();
    let chains = match format {
        Format::PageXml => parse_page_xml(&text).map(|p| p.chains),
        Format::Plain => parse_plain(&text),
    };
    chains.map_err(|e| e.in_file(&name))
}

/// GT/HY file pairs, in list order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilePairList {
    pub pairs: Vec<(PathBuf, PathBuf)>,
}

fn read_list(list_path: &Path) -> Result<Vec<PathBuf>> {
    let text = read_text(list_path)?;
    let base = list_path.parent().unwrap_or_else(|| Path::new(""));
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| base.join(l))
        .collect())
}

fn check_readable(path: &Path) -> Result<()> {
    fs::File::open(path).map(drop).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Pairs line `i` of the GT list with line `i` of the HY list. Relative
/// entries resolve against the directory of their list file.
pub fn load_pairs(gt_list_path: &Path, hyp_list_path: &Path) -> Result<FilePairList> {
    let gt = read_list(gt_list_path)?;
    let hyp = read_list(hyp_list_path)?;
    if gt.len() != hyp.len() {
        return Err(Error::CountMismatch {
            gt: gt.len(),
            hyp: hyp.len(),
        });
    }
    for p in gt.iter().chain(&hyp) {
        check_readable(p)?;
    }
    Ok(FilePairList {
        pairs: gt.into_iter().zip(hyp).collect(),
    })
}
