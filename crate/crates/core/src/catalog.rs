//! The JSON schema, the builtin catalog, and the pipeline that turns a loaded
//! entry into the premodular data the R-symbol engine consumes.

use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::{verlinde, FusionTensor, Provenance};
use crate::indicator::{indicator_table_center, indicator_table_modular, IndicatorTable};
use crate::model::{CenterData, ModularData, PremodularData, SConvention, ValidationReport};
use crate::phase::{phase_from_pair, phase_to_pair, ExactPhase};
use crate::scalar::{Real, Tolerance};

/// Names of the categories shipped with the crate, in catalog order.
pub const BUILTIN_NAMES: [&str; 6] =
    ["trivial", "semion", "toric", "fibonacci", "ising", "su2_2"];

const BUILTIN_FILES: [(&str, &str); 6] = [
    ("trivial", include_str!("../data/trivial.json")),
    ("semion", include_str!("../data/semion.json")),
    ("toric", include_str!("../data/toric.json")),
    ("fibonacci", include_str!("../data/fibonacci.json")),
    ("ising", include_str!("../data/ising.json")),
    ("su2_2", include_str!("../data/su2_2.json")),
];

/// `s_convention` wire values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConventionTag {
    #[serde(rename = "unitary")]
    Unitary,
    #[serde(rename = "unnormalized")]
    Unnormalized,
}

impl From<ConventionTag> for SConvention {
    fn from(tag: ConventionTag) -> Self {
        match tag {
            ConventionTag::Unitary => SConvention::Unitary,
            ConventionTag::Unnormalized => SConvention::Unnormalized,
        }
    }
}

/// Center block of the file schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CenterFile {
    pub labels: Vec<String>,
    pub s_matrix: Vec<Vec<[f64; 2]>>,
    pub s_convention: ConventionTag,
    pub t_phases: Vec<[i64; 2]>,
    pub forgetful: Vec<Vec<i64>>,
    pub iota: Vec<usize>,
}

/// One category per file. Field names are the wire format.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    pub labels: Vec<String>,
    pub s_matrix: Vec<Vec<[f64; 2]>>,
    pub s_convention: ConventionTag,
    pub t_phases: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fusion: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu_table: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<CenterFile>,
}

/// A loaded category: the modular data plus whatever optional blocks the file
/// supplied. Optional blocks are validated structurally at load time and
/// cross-checked against computed values when the pipeline runs.
#[derive(Clone, Debug)]
pub struct CatalogEntry<F> {
    pub name: String,
    pub comment: Option<String>,
    pub data: ModularData<F>,
    pub fusion: Option<FusionTensor>,
    pub nu_raw: Option<Vec<Vec<Complex<F>>>>,
    pub center: Option<CenterData<F>>,
}

fn complex_rows<F: Real>(raw: &[Vec<[f64; 2]>]) -> Vec<Vec<Complex<F>>> {
    raw.iter()
        .map(|row| {
            row.iter()
                .map(|[re, im]| {
                    Complex::new(F::from_f64(*re).unwrap(), F::from_f64(*im).unwrap())
                })
                .collect()
        })
        .collect()
}

fn parse_phases(pairs: &[[i64; 2]]) -> Result<Vec<ExactPhase>> {
    pairs.iter().map(|p| phase_from_pair(*p)).collect()
}

impl<F: Real> CatalogEntry<F> {
    /// Interpret a parsed file. `origin` only decorates error messages.
    pub fn from_file(file: &CategoryFile, origin: &str) -> Result<Self> {
        let t = parse_phases(&file.t_phases)?;
        let data = ModularData::new(
            file.labels.clone(),
            complex_rows::<F>(&file.s_matrix),
            file.s_convention.into(),
            t,
        )?;
        let rank = data.rank();

        let fusion = match &file.fusion {
            None => None,
            Some(entries) => {
                let mut flat = Vec::with_capacity(rank * rank * rank);
                if entries.len() != rank {
                    return Err(Error::RankMismatch { s_rank: rank, field: "fusion", len: entries.len() });
                }
                for plane in entries {
                    if plane.len() != rank {
                        return Err(Error::RankMismatch { s_rank: rank, field: "fusion", len: plane.len() });
                    }
                    for row in plane {
                        if row.len() != rank {
                            return Err(Error::RankMismatch { s_rank: rank, field: "fusion", len: row.len() });
                        }
                        for &v in row {
                            if v < 0 {
                                return Err(Error::Parse {
                                    path: origin.to_string(),
                                    message: format!("fusion entry {v} is negative"),
                                });
                            }
                            flat.push(v as u64);
                        }
                    }
                }
                let tensor = FusionTensor::from_entries(rank, flat, Provenance::FromInput)?;
                tensor.validate_axioms(data.labels())?;
                Some(tensor)
            }
        };

        let nu_raw = match &file.nu_table {
            None => None,
            Some(rows) => {
                if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
                    return Err(Error::RankMismatch { s_rank: rank, field: "nu_table", len: rows.len() });
                }
                Some(complex_rows::<F>(rows))
            }
        };

        let center = match &file.center {
            None => None,
            Some(cf) => {
                let forgetful = cf
                    .forgetful
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|&v| {
                                if v < 0 {
                                    Err(Error::Parse {
                                        path: origin.to_string(),
                                        message: format!("center.forgetful entry {v} is negative"),
                                    })
                                } else {
                                    Ok(v as u64)
                                }
                            })
                            .collect::<Result<Vec<u64>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let cd = CenterData::new(
                    cf.labels.clone(),
                    complex_rows::<F>(&cf.s_matrix),
                    cf.s_convention.into(),
                    parse_phases(&cf.t_phases)?,
                    forgetful,
                    cf.iota.clone(),
                    rank,
                )?;
                cd.validate_against_base(data.twists())?;
                Some(cd)
            }
        };

        Ok(CatalogEntry {
            name: file.name.clone(),
            comment: file.comment.clone(),
            data,
            fusion,
            nu_raw,
            center,
        })
    }

    pub fn validation(&self, tol: &Tolerance<F>) -> ValidationReport {
        self.data.validate(tol)
    }

    /// True when the modular fast path applies.
    pub fn is_modular(&self, tol: &Tolerance<F>) -> bool {
        self.data.validate(tol).pipeline_ready()
    }

    /// Fusion coefficients: Verlinde on the modular path (cross-checked
    /// against a supplied block), the supplied block otherwise.
    pub fn fusion_tensor(&self, tol: &Tolerance<F>) -> Result<FusionTensor> {
        if self.is_modular(tol) {
            let computed = verlinde(&self.data, tol)?;
            if let Some(supplied) = &self.fusion {
                for a in 0..self.data.rank() {
                    for b in 0..self.data.rank() {
                        for c in 0..self.data.rank() {
                            if computed.get(a, b, c) != supplied.get(a, b, c) {
                                return Err(Error::CrossCheckMismatch {
                                    what: "fusion",
                                    at: format!(
                                        "({},{},{})",
                                        self.data.label_name(a),
                                        self.data.label_name(b),
                                        self.data.label_name(c)
                                    ),
                                    residual: (computed.get(a, b, c) as f64
                                        - supplied.get(a, b, c) as f64)
                                        .abs(),
                                });
                            }
                        }
                    }
                }
            }
            Ok(computed)
        } else {
            self.fusion.clone().ok_or_else(|| Error::Validation {
                summary: format!(
                    "`{}` is not modular (S fails {:?}) and carries no fusion block",
                    self.name,
                    self.data.validate(tol).failed_names()
                ),
            })
        }
    }

    /// The indicator table for this entry.
    ///
    /// Modular path: the double-sum formula, cross-checked against the center
    /// formula and the supplied table when present. Premodular path: the
    /// center formula if center data is present, otherwise the supplied table.
    pub fn indicator_table(
        &self,
        fusion: &FusionTensor,
        tol: &Tolerance<F>,
    ) -> Result<IndicatorTable<F>> {
        let names: Vec<String> = self.data.labels().iter().map(|l| l.name.clone()).collect();
        let eps = tol.eps_matrix;

        let table = if self.is_modular(tol) {
            let computed = indicator_table_modular(&self.data, fusion, tol)?;
            if let Some(center) = &self.center {
                let from_center =
                    indicator_table_center(center, self.data.twists(), fusion, &names, tol)?;
                let dev = computed.max_deviation(&from_center);
                if dev >= eps {
                    return Err(Error::CrossCheckMismatch {
                        what: "center nu",
                        at: self.name.clone(),
                        residual: dev.to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
            computed
        } else if let Some(center) = &self.center {
            indicator_table_center(center, self.data.twists(), fusion, &names, tol)?
        } else if let Some(nu) = &self.nu_raw {
            IndicatorTable::from_input(nu.clone(), fusion, self.data.twists(), &names, tol)?
        } else {
            return Err(Error::Validation {
                summary: format!(
                    "`{}` is not modular and carries neither a nu_table nor center data",
                    self.name
                ),
            });
        };

        if let Some(nu) = &self.nu_raw {
            let mut worst = F::zero();
            for c in 0..self.data.rank() {
                for a in 0..self.data.rank() {
                    worst = worst.max((table.get(c, a) - nu[c][a]).norm());
                }
            }
            if worst >= eps {
                return Err(Error::CrossCheckMismatch {
                    what: "nu_table",
                    at: self.name.clone(),
                    residual: worst.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(table)
    }

    /// Everything `assemble_r` needs, with all cross-checks applied.
    pub fn premodular(&self, tol: &Tolerance<F>) -> Result<PremodularData<F>> {
        let fusion = self.fusion_tensor(tol)?;
        let nu = self.indicator_table(&fusion, tol)?;
        PremodularData::new(
            self.data.labels().to_vec(),
            fusion,
            self.data.twists().to_vec(),
            nu,
        )
    }

    /// Rebuild the wire form (canonical unitary convention).
    pub fn to_file(&self) -> CategoryFile {
        let complex_out = |rows: &[Vec<Complex<F>>]| -> Vec<Vec<[f64; 2]>> {
            rows.iter()
                .map(|row| {
                    row.iter()
                        .map(|z| [z.re.to_f64().unwrap(), z.im.to_f64().unwrap()])
                        .collect()
                })
                .collect()
        };
        let fusion = self.fusion.as_ref().map(|n| {
            let r = n.rank();
            (0..r)
                .map(|a| {
                    (0..r)
                        .map(|b| (0..r).map(|c| n.get(a, b, c) as i64).collect())
                        .collect()
                })
                .collect()
        });
        let nu_table = self.nu_raw.as_ref().map(|rows| complex_out(rows));
        let center = self.center.as_ref().map(|cd| CenterFile {
            labels: cd.labels().iter().map(|l| l.name.clone()).collect(),
            s_matrix: complex_out(cd.s_matrix()),
            s_convention: ConventionTag::Unitary,
            t_phases: cd.twists().iter().map(phase_to_pair).collect(),
            forgetful: cd
                .forgetful_rows()
                .iter()
                .map(|row| row.iter().map(|&v| v as i64).collect())
                .collect(),
            iota: cd.iota_list().to_vec(),
        });
        CategoryFile {
            name: self.name.clone(),
            comment: self.comment.clone(),
            labels: self.data.labels().iter().map(|l| l.name.clone()).collect(),
            s_matrix: complex_out(self.data.s_matrix()),
            s_convention: ConventionTag::Unitary,
            t_phases: self.data.twists().iter().map(phase_to_pair).collect(),
            fusion,
            nu_table,
            center,
        }
    }
}

/// Parse a category from JSON text.
pub fn parse<F: Real>(json: &str, origin: &str) -> Result<CatalogEntry<F>> {
    let file: CategoryFile = serde_json::from_str(json).map_err(|e| Error::Parse {
        path: origin.to_string(),
        message: e.to_string(),
    })?;
    CatalogEntry::from_file(&file, origin)
}

/// Load a builtin by name.
pub fn builtin<F: Real>(name: &str) -> Result<CatalogEntry<F>> {
    BUILTIN_FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(n, text)| parse(text, &format!("builtin:{n}")))
        .transpose()?
        .ok_or_else(|| Error::UnknownInput { name: name.to_string() })
}

/// Load from a file path.
pub fn load_path<F: Real>(path: &Path) -> Result<CatalogEntry<F>> {
    let text = std::fs::read_to_string(path)?;
    parse(&text, &path.display().to_string())
}

/// Load a builtin name or, failing that, a path.
pub fn load<F: Real>(spec: &str) -> Result<CatalogEntry<F>> {
    if BUILTIN_NAMES.contains(&spec) {
        return builtin(spec);
    }
    let path = Path::new(spec);
    if path.exists() {
        return load_path(path);
    }
    Err(Error::UnknownInput { name: spec.to_string() })
}

/// A pinned expected diagonal for regression checks on builtins.
#[derive(Clone, Debug)]
pub struct ExpectedRBlock {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub diag: Vec<ExactPhase>,
}

/// Known diagonal blocks under the canonical branch, frozen per builtin.
pub fn expected_r_blocks(name: &str) -> Vec<ExpectedRBlock> {
    let ph = |n, d| ExactPhase::new(n, d).unwrap();
    let block = |a, b, c, diag: Vec<ExactPhase>| ExpectedRBlock { a, b, c, diag };
    match name {
        "trivial" => vec![block(0, 0, 0, vec![ph(0, 1)])],
        "semion" => vec![block(1, 1, 0, vec![ph(1, 4)])],
        "toric" => vec![
            block(1, 1, 0, vec![ph(0, 1)]),
            block(2, 2, 0, vec![ph(0, 1)]),
            block(3, 3, 0, vec![ph(1, 2)]),
        ],
        "fibonacci" => vec![
            block(1, 1, 0, vec![ph(3, 5)]),
            block(1, 1, 1, vec![ph(3, 10)]),
        ],
        "ising" => vec![
            block(1, 1, 0, vec![ph(15, 16)]),
            block(1, 1, 2, vec![ph(3, 16)]),
        ],
        "su2_2" => vec![
            block(1, 1, 0, vec![ph(5, 16)]),
            block(1, 1, 2, vec![ph(1, 16)]),
            block(2, 2, 0, vec![ph(1, 2)]),
        ],
        _ => vec![],
    }
}
