//! Shared data model: labels, modular data, center data, and validation.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fusion::FusionTensor;
use crate::indicator::IndicatorTable;
use crate::phase::ExactPhase;
use crate::scalar::{Real, Tolerance};

/// A simple object: its position in the input order plus a display name.
///
/// Index 0 is always the unit object, and the index order is the complete
/// order used everywhere a case split on `a < b` appears.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label {
    pub index: usize,
    pub name: String,
}

/// Which normalization an input S-matrix uses.
///
/// `Unitary` means `S[0][0] = 1/sqrt(dim C)`; `Unnormalized` means the first
/// row carries the dimensions themselves. Internally everything is converted
/// to the unitary form once, at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SConvention {
    Unitary,
    Unnormalized,
}

/// One named validation check with its numeric residual.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub pass: bool,
    /// Witness checks are reported but do not gate the computation pipeline.
    pub witness: bool,
}

/// The outcome of `validate`: every invariant with its residual.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    /// All checks pass, witnesses included.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// All non-witness checks pass; this is what the engines require.
    pub fn pipeline_ready(&self) -> bool {
        self.checks.iter().filter(|c| !c.witness).all(|c| c.pass)
    }

    pub fn failed_names(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    fn push(&mut self, name: &'static str, residual: f64, pass: bool) {
        self.checks.push(Check { name, residual, pass, witness: false });
    }

    fn push_witness(&mut self, name: &'static str, residual: f64, pass: bool) {
        self.checks.push(Check { name, residual, pass, witness: true });
    }
}

/// Modular data `(S, T)` in the internal canonical form.
///
/// `s` is the normalized unitary S-matrix; `t` holds the exact twist
/// exponents, so `theta_a = e^{2 pi i t_a}`. Dimensions, the global dimension
/// and the charge-conjugation permutation are derived once at construction.
/// Immutable after construction and safe to share across threads.
#[derive(Clone, Debug)]
pub struct ModularData<F> {
    labels: Vec<Label>,
    s: Vec<Vec<Complex<F>>>,
    t: Vec<ExactPhase>,
    dims: Vec<F>,
    global_dim: F,
    dual: Vec<usize>,
}

impl<F: Real> ModularData<F> {
    /// Build from raw parts, converting `convention` to the internal unitary
    /// form and deriving dimensions and duality.
    pub fn new(
        label_names: Vec<String>,
        s_raw: Vec<Vec<Complex<F>>>,
        convention: SConvention,
        t: Vec<ExactPhase>,
    ) -> Result<Self> {
        let rank = s_raw.len();
        for (row, r) in s_raw.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::NonSquareInput { rows: rank, row, cols: r.len() });
            }
        }
        if label_names.len() != rank {
            return Err(Error::RankMismatch { s_rank: rank, field: "labels", len: label_names.len() });
        }
        if t.len() != rank {
            return Err(Error::RankMismatch { s_rank: rank, field: "t_phases", len: t.len() });
        }
        if rank == 0 {
            return Err(Error::RankMismatch { s_rank: 0, field: "labels", len: 0 });
        }

        let (s, dims, global_dim) = match convention {
            SConvention::Unitary => {
                let s00 = s_raw[0][0];
                let dims: Vec<F> = s_raw[0].iter().map(|z| (*z / s00).re).collect();
                let global_dim = F::one() / s00.norm_sqr();
                (s_raw, dims, global_dim)
            }
            SConvention::Unnormalized => {
                let dims: Vec<F> = s_raw[0].iter().map(|z| z.re).collect();
                let global_dim = dims.iter().fold(F::zero(), |acc, d| acc + *d * *d);
                let scale = global_dim.sqrt();
                let s = s_raw
                    .into_iter()
                    .map(|row| row.into_iter().map(|z| z / scale).collect())
                    .collect();
                (s, dims, global_dim)
            }
        };

        // charge conjugation candidate from S^2; validated by `validate`
        let s2 = mat_mul(&s, &s);
        let dual = s2
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .max_by(|(_, x), (_, y)| x.norm_sqr().partial_cmp(&y.norm_sqr()).unwrap())
                    .map(|(j, _)| j)
                    .unwrap_or(0)
            })
            .collect();

        let labels = label_names
            .into_iter()
            .enumerate()
            .map(|(index, name)| Label { index, name })
            .collect();

        Ok(ModularData { labels, s, t, dims, global_dim, dual })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label_name(&self, a: usize) -> &str {
        &self.labels[a].name
    }

    /// Look a label up by name.
    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.name == name)
    }

    /// Normalized unitary S-matrix entry.
    pub fn s(&self, a: usize, b: usize) -> Complex<F> {
        self.s[a][b]
    }

    /// The whole normalized S-matrix, row-major.
    pub fn s_matrix(&self) -> &[Vec<Complex<F>>] {
        &self.s
    }

    /// Unnormalized S-matrix entry `sqrt(dim C) * S[a][b]` (first row = dims).
    pub fn s_unnormalized(&self, a: usize, b: usize) -> Complex<F> {
        self.s[a][b] * self.global_dim.sqrt()
    }

    pub fn twist(&self, a: usize) -> ExactPhase {
        self.t[a]
    }

    pub fn twists(&self) -> &[ExactPhase] {
        &self.t
    }

    pub fn dim(&self, a: usize) -> F {
        self.dims[a]
    }

    pub fn global_dim(&self) -> F {
        self.global_dim
    }

    /// Charge conjugation read off `S^2`.
    pub fn dual_of(&self, a: usize) -> usize {
        self.dual[a]
    }

    /// Run every structural invariant and report residuals.
    pub fn validate(&self, tol: &Tolerance<F>) -> ValidationReport {
        let n = self.rank();
        let eps = tol.eps_matrix.to_f64().unwrap_or(1e-9);
        let mut report = ValidationReport::default();

        // S symmetric
        let mut sym = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let d = (self.s[a][b] - self.s[b][a]).norm().to_f64().unwrap_or(f64::NAN);
                sym = sym.max(d);
            }
        }
        report.push("s_symmetric", sym, sym < eps);

        // S unitary: S * conj(S)^T = I
        let mut uni = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let mut acc = Complex::new(F::zero(), F::zero());
                for x in 0..n {
                    acc = acc + self.s[a][x] * self.s[b][x].conj();
                }
                let want = if a == b { F::one() } else { F::zero() };
                let d = (acc - Complex::new(want, F::zero())).norm();
                uni = uni.max(d.to_f64().unwrap_or(f64::NAN));
            }
        }
        report.push("s_unitary", uni, uni < eps);

        // first row real and strictly positive
        let mut row0_im = 0.0f64;
        let mut row0_pos = true;
        for b in 0..n {
            row0_im = row0_im.max(self.s[0][b].im.abs().to_f64().unwrap_or(f64::NAN));
            if self.s[0][b].re <= F::zero() {
                row0_pos = false;
            }
        }
        let row0_res = if row0_pos { row0_im } else { row0_im.max(1.0) };
        report.push("s_row0_real_positive", row0_res, row0_pos && row0_im < eps);

        // unit twist trivial (exact)
        let t0_ok = self.t[0].is_one();
        report.push("t_unit_trivial", if t0_ok { 0.0 } else { 1.0 }, t0_ok);

        // S^2 is the charge-conjugation permutation; involution fixing 0
        let s2 = mat_mul(&self.s, &self.s);
        let mut perm_res = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let want = if self.dual[a] == b { F::one() } else { F::zero() };
                let d = (s2[a][b] - Complex::new(want, F::zero())).norm();
                perm_res = perm_res.max(d.to_f64().unwrap_or(f64::NAN));
            }
        }
        let mut seen = vec![false; n];
        let mut bijective = true;
        for &j in &self.dual {
            if seen[j] {
                bijective = false;
            }
            seen[j] = true;
        }
        report.push("s_squared_permutation", perm_res, bijective && perm_res < eps);

        let involution = (0..n).all(|a| self.dual[self.dual[a]] == a);
        report.push("dual_involution", if involution { 0.0 } else { 1.0 }, involution);
        let fixes_unit = self.dual[0] == 0;
        report.push("dual_fixes_unit", if fixes_unit { 0.0 } else { 1.0 }, fixes_unit);

        // Gauss sums p+- = sum d_a^2 theta_a^{+-1}; |p+ p- - dim| < eps * dim.
        // Nondegeneracy witness only: it depends on T, and a corrupted twist
        // must still reach the indicator certificates, which carry the
        // actionable diagnostic.
        let mut p_plus = Complex::new(F::zero(), F::zero());
        let mut p_minus = Complex::new(F::zero(), F::zero());
        for a in 0..n {
            let d2 = self.dims[a] * self.dims[a];
            p_plus = p_plus + self.t[a].value::<F>() * d2;
            p_minus = p_minus + self.t[a].inv().value::<F>() * d2;
        }
        let gauss = (p_plus * p_minus - Complex::new(self.global_dim, F::zero())).norm();
        let gauss_res = (gauss / self.global_dim).to_f64().unwrap_or(f64::NAN);
        report.push_witness("gauss_nondegenerate", gauss_res, gauss_res < eps);

        report
    }
}

fn mat_mul<F: Real>(a: &[Vec<Complex<F>>], b: &[Vec<Complex<F>>]) -> Vec<Vec<Complex<F>>> {
    let n = a.len();
    let mut out = vec![vec![Complex::new(F::zero(), F::zero()); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex::new(F::zero(), F::zero());
            for k in 0..n {
                acc = acc + a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

/// The general input of the reconstruction: fusion rules, twists, and the
/// indicator table. Built either from modular data (fast path) or supplied
/// directly alongside center data.
#[derive(Clone, Debug)]
pub struct PremodularData<F> {
    pub labels: Vec<Label>,
    pub fusion: FusionTensor,
    pub t: Vec<ExactPhase>,
    pub nu: IndicatorTable<F>,
}

impl<F: Real> PremodularData<F> {
    pub fn new(
        labels: Vec<Label>,
        fusion: FusionTensor,
        t: Vec<ExactPhase>,
        nu: IndicatorTable<F>,
    ) -> Result<Self> {
        let rank = labels.len();
        if fusion.rank() != rank {
            return Err(Error::RankMismatch { s_rank: rank, field: "fusion", len: fusion.rank() });
        }
        if t.len() != rank {
            return Err(Error::RankMismatch { s_rank: rank, field: "t_phases", len: t.len() });
        }
        if nu.rank() != rank {
            return Err(Error::RankMismatch { s_rank: rank, field: "nu_table", len: nu.rank() });
        }
        fusion.validate_axioms(&labels)?;
        Ok(PremodularData { labels, fusion, t, nu })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn label_name(&self, a: usize) -> &str {
        &self.labels[a].name
    }
}

/// Modular data of the center together with the forgetful multiplicities and
/// the embedding of the base category.
///
/// `s` is stored in the normalized unitary convention over the center labels;
/// `forgetful[x][a]` is the multiplicity of the base simple `a` in the image
/// of the center simple `x`; `iota[c]` names the center label the base simple
/// `c` embeds onto.
#[derive(Clone, Debug)]
pub struct CenterData<F> {
    labels: Vec<Label>,
    s: Vec<Vec<Complex<F>>>,
    t: Vec<ExactPhase>,
    forgetful: Vec<Vec<u64>>,
    iota: Vec<usize>,
}

impl<F: Real> CenterData<F> {
    pub fn new(
        label_names: Vec<String>,
        s_raw: Vec<Vec<Complex<F>>>,
        convention: SConvention,
        t: Vec<ExactPhase>,
        forgetful: Vec<Vec<u64>>,
        iota: Vec<usize>,
        base_rank: usize,
    ) -> Result<Self> {
        let n = s_raw.len();
        for (row, r) in s_raw.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NonSquareInput { rows: n, row, cols: r.len() });
            }
        }
        if label_names.len() != n {
            return Err(Error::RankMismatch { s_rank: n, field: "center.labels", len: label_names.len() });
        }
        if t.len() != n {
            return Err(Error::RankMismatch { s_rank: n, field: "center.t_phases", len: t.len() });
        }
        if forgetful.len() != n {
            return Err(Error::RankMismatch { s_rank: n, field: "center.forgetful", len: forgetful.len() });
        }
        for row in &forgetful {
            if row.len() != base_rank {
                return Err(Error::RankMismatch {
                    s_rank: base_rank,
                    field: "center.forgetful row",
                    len: row.len(),
                });
            }
        }
        if iota.len() != base_rank {
            return Err(Error::RankMismatch { s_rank: base_rank, field: "center.iota", len: iota.len() });
        }
        let mut seen = vec![false; n];
        for &x in &iota {
            if x >= n {
                return Err(Error::Validation {
                    summary: format!("center.iota entry {x} out of range for {n} center labels"),
                });
            }
            if seen[x] {
                return Err(Error::Validation {
                    summary: format!("center.iota is not injective at center label {x}"),
                });
            }
            seen[x] = true;
        }

        let s = match convention {
            SConvention::Unitary => s_raw,
            SConvention::Unnormalized => {
                let unit = iota[0];
                let dim_z = s_raw[unit].iter().fold(F::zero(), |acc, z| acc + z.norm_sqr());
                let scale = dim_z.sqrt();
                s_raw
                    .into_iter()
                    .map(|row| row.into_iter().map(|z| z / scale).collect())
                    .collect()
            }
        };

        let labels = label_names
            .into_iter()
            .enumerate()
            .map(|(index, name)| Label { index, name })
            .collect();

        Ok(CenterData { labels, s, t, forgetful, iota })
    }

    pub fn center_rank(&self) -> usize {
        self.labels.len()
    }

    pub fn base_rank(&self) -> usize {
        self.iota.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn s(&self, x: usize, y: usize) -> Complex<F> {
        self.s[x][y]
    }

    pub fn s_matrix(&self) -> &[Vec<Complex<F>>] {
        &self.s
    }

    pub fn twist(&self, x: usize) -> ExactPhase {
        self.t[x]
    }

    pub fn twists(&self) -> &[ExactPhase] {
        &self.t
    }

    pub fn forgetful(&self, x: usize, a: usize) -> u64 {
        self.forgetful[x][a]
    }

    pub fn forgetful_rows(&self) -> &[Vec<u64>] {
        &self.forgetful
    }

    pub fn iota_list(&self) -> &[usize] {
        &self.iota
    }

    pub fn iota(&self, c: usize) -> Result<usize> {
        self.iota.get(c).copied().ok_or_else(|| Error::MissingIota { c: format!("#{c}") })
    }

    /// Global dimension of the center, read at the image of the unit.
    pub fn global_dim(&self) -> F {
        let unit = self.iota[0];
        F::one() / self.s[unit][unit].norm_sqr()
    }

    /// Global dimension of the base category, `sqrt(dim Z(C))`.
    pub fn base_global_dim(&self) -> F {
        self.global_dim().sqrt()
    }

    /// Check the embedding against the base twists.
    ///
    /// The base category sits inside its center via the inverse braiding, i.e.
    /// in the reversed factor, so the center twist at `iota(c)` is the
    /// conjugate of `theta_c`. This is exact on the exponents.
    pub fn validate_against_base(&self, base_t: &[ExactPhase]) -> Result<()> {
        if base_t.len() != self.base_rank() {
            return Err(Error::RankMismatch {
                s_rank: self.base_rank(),
                field: "t_phases",
                len: base_t.len(),
            });
        }
        for (c, &tc) in base_t.iter().enumerate() {
            let x = self.iota(c)?;
            if self.t[x] != tc.inv() {
                return Err(Error::Validation {
                    summary: format!(
                        "center twist at iota({c}) is {} but the base twist requires {}",
                        self.t[x],
                        tc.inv()
                    ),
                });
            }
        }
        Ok(())
    }
}
