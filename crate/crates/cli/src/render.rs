//! Text, CSV and JSON renderings of block matrices.

use serde::{Deserialize, Serialize};

use schur2::{BlockSpec, CartanMatrix, MultiplicityMatrix, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixKind {
    Decomposition,
    Tilting,
    Cartan,
    RingelCartan,
}

impl MatrixKind {
    /// Decomposition and tilting matrices are lower unitriangular 0/1.
    pub fn is_unitriangular(&self) -> bool {
        matches!(self, MatrixKind::Decomposition | MatrixKind::Tilting)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Style {
    #[default]
    Figure,
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct RenderOptions {
    pub style: Style,
    /// Separator period for rows and columns; the prime when unset.
    pub group: Option<u64>,
    pub zero: String,
    pub one: String,
    pub labels: bool,
    /// Label rows by absolute weight instead of block index.
    pub absolute: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            style: Style::Figure,
            group: None,
            zero: ".".into(),
            one: "1".into(),
            labels: true,
            absolute: false,
        }
    }
}

/// A matrix together with the block it belongs to; this is also the JSON
/// export format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub kind: MatrixKind,
    pub variant: Variant,
    pub p: u64,
    pub ell: u64,
    pub lowest: u64,
    pub size: u64,
    /// Nonzero columns of each row.
    pub rows: Vec<Vec<u64>>,
    /// Entries at those columns; omitted for 0/1 matrices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Vec<u64>>>,
}

impl MatrixDoc {
    fn header(kind: MatrixKind, spec: &BlockSpec) -> Self {
        MatrixDoc {
            kind,
            variant: spec.variant,
            p: spec.p,
            ell: spec.ell,
            lowest: spec.lowest,
            size: spec.size,
            rows: Vec::new(),
            values: None,
        }
    }

    pub fn from_multiplicity(kind: MatrixKind, spec: &BlockSpec, m: &MultiplicityMatrix) -> Self {
        MatrixDoc {
            rows: m.rows().iter().map(|r| r.as_slice().to_vec()).collect(),
            ..Self::header(kind, spec)
        }
    }

    pub fn from_cartan(kind: MatrixKind, spec: &BlockSpec, c: &CartanMatrix) -> Self {
        let entries: Vec<Vec<(u64, u64)>> = (0..c.size()).map(|m| c.row_entries(m)).collect();
        MatrixDoc {
            rows: entries.iter().map(|r| r.iter().map(|e| e.0).collect()).collect(),
            values: Some(entries.iter().map(|r| r.iter().map(|e| e.1).collect()).collect()),
            ..Self::header(kind, spec)
        }
    }

    pub fn spec(&self) -> BlockSpec {
        BlockSpec { variant: self.variant, p: self.p, ell: self.ell, lowest: self.lowest, size: self.size }
    }

    pub fn entry(&self, m: u64, n: u64) -> u64 {
        let row = &self.rows[m as usize];
        match row.binary_search(&n) {
            Ok(i) => self.values.as_ref().map_or(1, |v| v[m as usize][i]),
            Err(_) => 0,
        }
    }
}

pub fn render(doc: &MatrixDoc, opts: &RenderOptions) -> anyhow::Result<String> {
    match opts.style {
        Style::Figure => Ok(figure(doc, opts)),
        Style::Csv => csv(doc),
        Style::Json => Ok(serde_json::to_string_pretty(doc)? + "\n"),
    }
}

pub fn parse_json(text: &str) -> anyhow::Result<MatrixDoc> {
    Ok(serde_json::from_str(text)?)
}

fn figure(doc: &MatrixDoc, opts: &RenderOptions) -> String {
    let w = doc.size;
    let group = opts.group.unwrap_or(doc.p).max(1);
    let spec = doc.spec();
    let labels: Vec<String> = (0..w)
        .map(|m| if opts.absolute { spec.weight_of_index(m).unwrap_or(m) } else { m }.to_string())
        .collect();
    let label_width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let glyph = |v: u64| match v {
        0 => opts.zero.clone(),
        1 => opts.one.clone(),
        v => v.to_string(),
    };
    let last_column = |m: u64| if doc.kind.is_unitriangular() { m } else { w - 1 };
    let cell_width = (0..w)
        .flat_map(|m| (0..=last_column(m)).map(move |n| (m, n)))
        .map(|(m, n)| glyph(doc.entry(m, n)).chars().count())
        .max()
        .unwrap_or(1);

    let line = |m: u64, upto: u64| {
        let mut tokens = Vec::new();
        for n in 0..=upto {
            if n > 0 && n % group == 0 {
                tokens.push("|".to_string());
            }
            tokens.push(format!("{:>cell_width$}", glyph(doc.entry(m, n))));
        }
        let body = tokens.join(" ");
        if opts.labels {
            format!("{:>label_width$} | {body}", labels[m as usize])
        } else {
            body
        }
    };

    let rule_width = if w == 0 { 0 } else { line(w - 1, w - 1).chars().count() };
    let mut out = String::new();
    for m in 0..w {
        if m > 0 && m % group == 0 {
            out.push_str(&"-".repeat(rule_width));
            out.push('\n');
        }
        out.push_str(line(m, last_column(m)).trim_end());
        out.push('\n');
    }
    out
}

fn csv(doc: &MatrixDoc) -> anyhow::Result<String> {
    let mut wtr = ::csv::Writer::from_writer(Vec::new());
    let mut header = vec!["m".to_string()];
    header.extend((0..doc.size).map(|n| n.to_string()));
    wtr.write_record(&header)?;
    for m in 0..doc.size {
        let mut record = vec![m.to_string()];
        record.extend((0..doc.size).map(|n| doc.entry(m, n).to_string()));
        wtr.write_record(&record)?;
    }
    Ok(String::from_utf8(wtr.into_inner()?)?)
}
