//! The "TMS v1" text format for metric spaces with a self-map.
//!
//! ```text
//! tms 1
//! # comment lines start with '#'
//! points a b c
//! metric
//! 0 1 1
//! 1 0 1
//! 1 1 0
//! map
//! a -> b
//! b -> c
//! c -> c
//! ```
//!
//! The header is `tms 1`; `points` lists all labels on one line; `metric` is
//! followed by n rows of n whitespace-separated rationals (`p/q` or bare
//! integers); `map` is followed by one `<label> -> <label>` line per mapped
//! point. Ordinary instances map every point; partial maps are permitted at
//! parse time and rejected by any consumer that needs a total map. Parsing is
//! whitespace-tolerant; labels are ASCII tokens without whitespace.

use std::fmt::Write as _;

use crate::rational::Rational;
use crate::space::{FiniteMetricSpace, SelfMap, SpaceError};

/// A parsed TMS file: the space plus a possibly partial map.
#[derive(Debug, Clone)]
pub struct TmsFile {
    pub space: FiniteMetricSpace,
    /// `images[i]` is the image of point `i`, if the file mapped it.
    pub images: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct TmsError {
    pub line: usize,
    pub msg: String,
}

impl TmsFile {
    /// The total self-map, or an error naming the first unmapped point.
    pub fn total_map(&self) -> Result<SelfMap, TmsError> {
        let image = self
            .images
            .iter()
            .enumerate()
            .map(|(i, img)| {
                img.ok_or_else(|| TmsError {
                    line: 0,
                    msg: format!("point `{}` has no map entry", self.space.label(i)),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        SelfMap::new(image, &self.space).map_err(|e| TmsError {
            line: 0,
            msg: e.to_string(),
        })
    }
}

fn err(line: usize, msg: impl Into<String>) -> TmsError {
    TmsError {
        line,
        msg: msg.into(),
    }
}

/// Parses TMS v1 text.
pub fn parse(input: &str) -> Result<TmsFile, TmsError> {
    // (1-based line number, significant content)
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, header) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["tms", "1"] {
        return Err(err(ln, format!("expected header `tms 1`, got `{header}`")));
    }

    let (ln, points_line) = lines
        .next()
        .ok_or_else(|| err(ln, "missing `points` line"))?;
    let mut tokens = points_line.split_whitespace();
    if tokens.next() != Some("points") {
        return Err(err(ln, format!("expected `points ...`, got `{points_line}`")));
    }
    let labels: Vec<String> = tokens.map(str::to_string).collect();
    let n = labels.len();
    if n < 3 {
        return Err(err(ln, format!("need at least three points, got {n}")));
    }

    let (ln, metric_kw) = lines
        .next()
        .ok_or_else(|| err(ln, "missing `metric` section"))?;
    if metric_kw != "metric" {
        return Err(err(ln, format!("expected `metric`, got `{metric_kw}`")));
    }

    let mut dist = Vec::with_capacity(n);
    let mut last_ln = ln;
    for row in 0..n {
        let (ln, row_line) = lines
            .next()
            .ok_or_else(|| err(last_ln, format!("missing metric row {}", row + 1)))?;
        last_ln = ln;
        let entries = row_line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Rational>()
                    .map_err(|_| err(ln, format!("invalid rational `{tok}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if entries.len() != n {
            return Err(err(
                ln,
                format!("metric row has {} entries, expected {n}", entries.len()),
            ));
        }
        dist.push(entries);
    }

    let space = FiniteMetricSpace::new(labels, dist).map_err(|e: SpaceError| match e {
        SpaceError::DuplicateLabel(l) => err(last_ln, format!("duplicate point label `{l}`")),
        other => err(last_ln, other.to_string()),
    })?;

    let mut images: Vec<Option<usize>> = vec![None; n];
    if let Some((ln, map_kw)) = lines.next() {
        if map_kw != "map" {
            return Err(err(ln, format!("expected `map`, got `{map_kw}`")));
        }
        for (ln, map_line) in lines {
            let parts: Vec<&str> = map_line.split_whitespace().collect();
            if parts.len() != 3 || parts[1] != "->" {
                return Err(err(ln, format!("expected `<label> -> <label>`, got `{map_line}`")));
            }
            let from = space
                .index_of_label(parts[0])
                .ok_or_else(|| err(ln, format!("unknown point `{}`", parts[0])))?;
            let to = space
                .index_of_label(parts[2])
                .ok_or_else(|| err(ln, format!("unknown point `{}`", parts[2])))?;
            if images[from].is_some() {
                return Err(err(ln, format!("point `{}` mapped twice", parts[0])));
            }
            images[from] = Some(to);
        }
    }

    Ok(TmsFile { space, images })
}

/// Writes a space and total map in canonical TMS v1 form.
pub fn write(space: &FiniteMetricSpace, map: &SelfMap) -> String {
    let images: Vec<Option<usize>> = map.image().iter().map(|&i| Some(i)).collect();
    write_partial(space, &images)
}

/// Writes a space with map lines only for points that have an image.
pub fn write_partial(space: &FiniteMetricSpace, images: &[Option<usize>]) -> String {
    let n = space.len();
    let mut out = String::new();
    out.push_str("tms 1\n");
    out.push_str("points");
    for p in space.points() {
        out.push(' ');
        out.push_str(&p.label);
    }
    out.push('\n');
    out.push_str("metric\n");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| space.d(i, j).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out.push_str("map\n");
    for (i, img) in images.iter().enumerate() {
        if let Some(j) = img {
            let _ = writeln!(out, "{} -> {}", space.label(i), space.label(*j));
        }
    }
    out
}
