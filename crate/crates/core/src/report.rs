//! Deterministic rendering of every pipeline product to text, CSV, or JSON.
//!
//! All output is byte-stable: iteration orders are fixed by label index, and
//! floats are serialized with 17 significant digits so values round-trip.

use std::io::{self, Write};

use num_complex::Complex;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::catalog::{CatalogEntry, CategoryFile};
use crate::error::Result;
use crate::fusion::FusionTensor;
use crate::indicator::{certify, IndicatorSource, IndicatorTable};
use crate::model::{Label, ValidationReport};
use crate::phase::phase_to_pair;
use crate::rsymbol::{RSymbolTable, YEntry};
use crate::scalar::{Real, Tolerance};

/// Output format selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

// ---------------------------------------------------------------------------
// 17-significant-digit JSON

struct SigFigFormatter<'a> {
    inner: PrettyFormatter<'a>,
}

impl SigFigFormatter<'_> {
    fn new() -> Self {
        SigFigFormatter { inner: PrettyFormatter::new() }
    }
}

fn fmt_f64(value: f64) -> String {
    // normalize -0.0 so output does not depend on rounding direction
    let v = if value == 0.0 { 0.0 } else { value };
    format!("{v:.16e}")
}

impl Formatter for SigFigFormatter<'_> {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        writer.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.inner.begin_array(writer)
    }

    fn end_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.inner.begin_object(writer)
    }

    fn end_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.inner.end_object_value(writer)
    }
}

/// Serialize any document with the crate's JSON conventions.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFigFormatter::new());
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serializer emits UTF-8")
}

fn complex_pair<F: Real>(z: Complex<F>) -> [f64; 2] {
    [z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN)]
}

/// `re+im i` form used in CSV cells.
fn complex_cell(pair: [f64; 2]) -> String {
    let im = fmt_f64(pair[1]);
    let sign = if im.starts_with('-') { "" } else { "+" };
    format!("{}{}{}i", fmt_f64(pair[0]), sign, im)
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

// ---------------------------------------------------------------------------
// wire documents

#[derive(Serialize)]
pub struct CheckDoc {
    pub name: &'static str,
    pub residual: f64,
    pub pass: bool,
    pub witness: bool,
}

#[derive(Serialize)]
pub struct ValidationDoc {
    pub name: String,
    pub rank: usize,
    pub global_dim: f64,
    pub checks: Vec<CheckDoc>,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct FusionDoc {
    pub labels: Vec<String>,
    pub fusion: Vec<Vec<Vec<u64>>>,
}

#[derive(Clone, Serialize)]
pub struct IndicatorsDoc {
    pub labels: Vec<String>,
    pub source: &'static str,
    /// `nu[c][a]`
    pub nu: Vec<Vec<[f64; 2]>>,
    /// The certified integers `nu / sqrt(theta_c)`.
    pub m: Vec<Vec<i64>>,
}

#[derive(Serialize)]
pub struct RBlockDoc {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub case: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_plus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_minus: Option<u64>,
    pub diag: Vec<[f64; 2]>,
}

#[derive(Serialize)]
pub struct RTableDoc {
    pub sqrt_branch: Vec<[i64; 2]>,
    pub blocks: Vec<RBlockDoc>,
}

#[derive(Serialize)]
pub struct YRowDoc {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub y: i64,
    pub triple_dim: u64,
    pub raw: [f64; 2],
}

#[derive(Serialize)]
pub struct YTableDoc {
    pub labels: Vec<String>,
    pub entries: Vec<YRowDoc>,
}

#[derive(Serialize)]
pub struct ReportDoc {
    pub category: CategoryFile,
    pub validation: ValidationDoc,
    pub fusion: FusionDoc,
    pub indicators: IndicatorsDoc,
    pub r_table: RTableDoc,
}

#[derive(Serialize)]
pub struct CatalogItemDoc {
    pub name: String,
    pub rank: usize,
    pub labels: Vec<String>,
    pub comment: Option<String>,
}

// ---------------------------------------------------------------------------
// document builders

fn names(labels: &[Label]) -> Vec<String> {
    labels.iter().map(|l| l.name.clone()).collect()
}

pub fn validation_doc<F: Real>(entry: &CatalogEntry<F>, report: &ValidationReport) -> ValidationDoc {
    ValidationDoc {
        name: entry.name.clone(),
        rank: entry.data.rank(),
        global_dim: entry.data.global_dim().to_f64().unwrap_or(f64::NAN),
        checks: report
            .checks
            .iter()
            .map(|c| CheckDoc { name: c.name, residual: c.residual, pass: c.pass, witness: c.witness })
            .collect(),
        passed: report.passed(),
    }
}

pub fn fusion_doc(labels: &[Label], n: &FusionTensor) -> FusionDoc {
    let r = n.rank();
    FusionDoc {
        labels: names(labels),
        fusion: (0..r)
            .map(|a| (0..r).map(|b| (0..r).map(|c| n.get(a, b, c)).collect()).collect())
            .collect(),
    }
}

pub fn indicators_doc<F: Real>(
    labels: &[Label],
    twists: &[crate::phase::ExactPhase],
    fusion: &FusionTensor,
    table: &IndicatorTable<F>,
    tol: &Tolerance<F>,
) -> Result<IndicatorsDoc> {
    let r = table.rank();
    let label_names = names(labels);
    let mut nu = Vec::with_capacity(r);
    let mut m = Vec::with_capacity(r);
    for c in 0..r {
        let mut nu_row = Vec::with_capacity(r);
        let mut m_row = Vec::with_capacity(r);
        for a in 0..r {
            nu_row.push(complex_pair(table.get(c, a)));
            m_row.push(certify(
                table.get(c, a),
                twists[c].halve(),
                fusion.get(a, a, c),
                tol,
                &label_names[a],
                &label_names[c],
            )?);
        }
        nu.push(nu_row);
        m.push(m_row);
    }
    let source = match table.source() {
        IndicatorSource::FromModularFormula => "modular_formula",
        IndicatorSource::FromCenterFormula => "center_formula",
        IndicatorSource::FromInput => "input",
    };
    Ok(IndicatorsDoc { labels: label_names, source, nu, m })
}

pub fn rtable_doc(table: &RSymbolTable) -> RTableDoc {
    RTableDoc {
        sqrt_branch: table.sqrt_branch.iter().map(phase_to_pair).collect(),
        blocks: table
            .blocks()
            .map(|block| RBlockDoc {
                a: block.a,
                b: block.b,
                c: block.c,
                case: block.case.as_str(),
                d_plus: block.d_plus,
                d_minus: block.d_minus,
                diag: block.diag_values::<f64>().into_iter().map(complex_pair).collect(),
            })
            .collect(),
    }
}

pub fn y_doc<F: Real>(labels: &[Label], entries: &[YEntry<F>]) -> YTableDoc {
    YTableDoc {
        labels: names(labels),
        entries: entries
            .iter()
            .map(|e| YRowDoc {
                a: e.a,
                b: e.b,
                c: e.c,
                y: e.y,
                triple_dim: e.triple_dim,
                raw: complex_pair(e.raw),
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// renderers

pub fn render_validation<F: Real>(
    entry: &CatalogEntry<F>,
    report: &ValidationReport,
    format: Format,
) -> String {
    match format {
        Format::Json => to_json_string(&validation_doc(entry, report)),
        Format::Csv => {
            let mut out = String::from("check,residual,pass,witness\n");
            for c in &report.checks {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    c.name,
                    fmt_f64(c.residual),
                    c.pass,
                    c.witness
                ));
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "category {} (rank {}, dim {:.6})\n",
                entry.name,
                entry.data.rank(),
                entry.data.global_dim()
            );
            for c in &report.checks {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                let kind = if c.witness { " (witness)" } else { "" };
                out.push_str(&format!(
                    "  {:<24} {}  residual {:.3e}{}\n",
                    c.name, tag, c.residual, kind
                ));
            }
            out.push_str(&format!(
                "overall: {}\n",
                if report.passed() { "PASS" } else { "FAIL" }
            ));
            out
        }
    }
}

pub fn render_fusion(labels: &[Label], n: &FusionTensor, format: Format) -> String {
    match format {
        Format::Json => to_json_string(&fusion_doc(labels, n)),
        Format::Csv => {
            let mut out = String::from("a,b,c,n\n");
            let r = n.rank();
            for a in 0..r {
                for b in 0..r {
                    for c in 0..r {
                        let v = n.get(a, b, c);
                        if v > 0 {
                            out.push_str(&format!(
                                "{},{},{},{}\n",
                                csv_escape(&labels[a].name),
                                csv_escape(&labels[b].name),
                                csv_escape(&labels[c].name),
                                v
                            ));
                        }
                    }
                }
            }
            out
        }
        Format::Text => {
            let mut out = String::from("fusion rules (nonzero N^{a,b}_c):\n");
            let r = n.rank();
            for a in 0..r {
                for b in 0..r {
                    let channels: Vec<String> = (0..r)
                        .filter(|&c| n.get(a, b, c) > 0)
                        .map(|c| {
                            if n.get(a, b, c) == 1 {
                                labels[c].name.clone()
                            } else {
                                format!("{}*{}", n.get(a, b, c), labels[c].name)
                            }
                        })
                        .collect();
                    out.push_str(&format!(
                        "  {} x {} = {}\n",
                        labels[a].name,
                        labels[b].name,
                        channels.join(" + ")
                    ));
                }
            }
            out
        }
    }
}

pub fn render_indicators(doc: &IndicatorsDoc, format: Format) -> String {
    match format {
        Format::Json => to_json_string(doc),
        Format::Csv => {
            let mut out = String::from("c,a,nu,m\n");
            for (c, row) in doc.nu.iter().enumerate() {
                for (a, pair) in row.iter().enumerate() {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        csv_escape(&doc.labels[c]),
                        csv_escape(&doc.labels[a]),
                        csv_escape(&complex_cell(*pair)),
                        doc.m[c][a]
                    ));
                }
            }
            out
        }
        Format::Text => {
            let mut out = format!("indicators nu_(2,1) (source: {}):\n", doc.source);
            for (c, row) in doc.nu.iter().enumerate() {
                for (a, pair) in row.iter().enumerate() {
                    out.push_str(&format!(
                        "  nu^iota({})({}) = {:.6}{:+.6}i   m = {}\n",
                        doc.labels[c], doc.labels[a], pair[0], pair[1], doc.m[c][a]
                    ));
                }
            }
            out
        }
    }
}

fn rtable_csv_rows(name: &str, labels: &[Label], table: &RSymbolTable, out: &mut String) {
    for block in table.blocks() {
        let d_plus = block.d_plus.map(|v| v.to_string()).unwrap_or_default();
        let d_minus = block.d_minus.map(|v| v.to_string()).unwrap_or_default();
        let diag: Vec<String> = block
            .diag_values::<f64>()
            .into_iter()
            .map(|z| csv_escape(&complex_cell(complex_pair(z))))
            .collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}",
            csv_escape(name),
            csv_escape(&labels[block.a].name),
            csv_escape(&labels[block.b].name),
            csv_escape(&labels[block.c].name),
            block.case.as_str(),
            d_plus,
            d_minus
        ));
        for cell in diag {
            out.push(',');
            out.push_str(&cell);
        }
        out.push('\n');
    }
}

pub fn render_rtable(name: &str, labels: &[Label], table: &RSymbolTable, format: Format) -> String {
    match format {
        Format::Json => to_json_string(&rtable_doc(table)),
        Format::Csv => {
            let mut out = String::from("name,a,b,c,case,d_plus,d_minus,diag\n");
            rtable_csv_rows(name, labels, table, &mut out);
            out
        }
        Format::Text => {
            let mut out = String::from("R-symbols (canonical diagonal gauge):\n");
            out.push_str("  sqrt branch: ");
            let branch: Vec<String> = table
                .sqrt_branch
                .iter()
                .enumerate()
                .map(|(i, p)| format!("sqrt(theta_{}) = {}", labels[i].name, p))
                .collect();
            out.push_str(&branch.join(", "));
            out.push('\n');
            for block in table.blocks() {
                let diag: Vec<String> = block.diag.iter().map(|p| p.to_string()).collect();
                let mult = match (block.d_plus, block.d_minus) {
                    (Some(p), Some(m)) => format!("  d+={p} d-={m}"),
                    _ => String::new(),
                };
                out.push_str(&format!(
                    "  R^{}_({},{})  {:<5} [{}]{}\n",
                    labels[block.c].name,
                    labels[block.a].name,
                    labels[block.b].name,
                    block.case.as_str(),
                    diag.join(", "),
                    mult
                ));
            }
            out
        }
    }
}

pub fn render_y(doc: &YTableDoc, format: Format) -> String {
    match format {
        Format::Json => to_json_string(doc),
        Format::Csv => {
            let mut out = String::from("a,b,c,y,triple_dim\n");
            for e in &doc.entries {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    csv_escape(&doc.labels[e.a]),
                    csv_escape(&doc.labels[e.b]),
                    csv_escape(&doc.labels[e.c]),
                    e.y,
                    e.triple_dim
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::from("Y tensor (integer certified; dim = dim C(c, a x a x b)):\n");
            for e in &doc.entries {
                out.push_str(&format!(
                    "  Y^{}_({},{}) = {:>3}   dim = {}\n",
                    doc.labels[e.c], doc.labels[e.a], doc.labels[e.b], e.y, e.triple_dim
                ));
            }
            out
        }
    }
}

pub struct FullReport<'a, F> {
    pub entry: &'a CatalogEntry<F>,
    pub report: &'a ValidationReport,
    pub fusion: &'a FusionTensor,
    pub indicators: IndicatorsDoc,
    pub rtable: &'a RSymbolTable,
}

pub fn render_report<F: Real>(full: &FullReport<'_, F>, format: Format) -> String {
    match format {
        Format::Json => {
            let doc = ReportDoc {
                category: full.entry.to_file(),
                validation: validation_doc(full.entry, full.report),
                fusion: fusion_doc(full.entry.data.labels(), full.fusion),
                indicators: IndicatorsDoc {
                    labels: full.indicators.labels.clone(),
                    source: full.indicators.source,
                    nu: full.indicators.nu.clone(),
                    m: full.indicators.m.clone(),
                },
                r_table: rtable_doc(full.rtable),
            };
            to_json_string(&doc)
        }
        Format::Csv => {
            let mut out = String::from("name,a,b,c,case,d_plus,d_minus,diag\n");
            rtable_csv_rows(&full.entry.name, full.entry.data.labels(), full.rtable, &mut out);
            out
        }
        Format::Text => {
            let mut out = render_validation(full.entry, full.report, Format::Text);
            out.push('\n');
            out.push_str(&render_fusion(full.entry.data.labels(), full.fusion, Format::Text));
            out.push('\n');
            out.push_str(&render_indicators(&full.indicators, Format::Text));
            out.push('\n');
            out.push_str(&render_rtable(
                &full.entry.name,
                full.entry.data.labels(),
                full.rtable,
                Format::Text,
            ));
            out
        }
    }
}

pub fn render_catalog_list(items: &[CatalogItemDoc], format: Format) -> String {
    match format {
        Format::Json => to_json_string(&items),
        Format::Csv => {
            let mut out = String::from("name,rank,labels\n");
            for item in items {
                out.push_str(&format!(
                    "{},{},{}\n",
                    csv_escape(&item.name),
                    item.rank,
                    csv_escape(&item.labels.join(" "))
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for item in items {
                out.push_str(&format!(
                    "{:<12} rank {}  [{}]{}\n",
                    item.name,
                    item.rank,
                    item.labels.join(", "),
                    item.comment.as_deref().map(|c| format!("  {c}")).unwrap_or_default()
                ));
            }
            out
        }
    }
}
