//! Second generalized Frobenius-Schur indicators.
//!
//! Two routes produce the same table: a double sum over the category's own
//! modular data (modular case), and a single sum over the modular data of the
//! center weighted by forgetful multiplicities (premodular case). Both are
//! certified on the spot: `nu / sqrt(theta_c)` must be an integer, bounded by
//! `N^{a,a}_c`, with the same parity.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fusion::FusionTensor;
use crate::model::{CenterData, ModularData};
use crate::phase::ExactPhase;
use crate::scalar::{round_to_int, Real, Tolerance};

/// Where an indicator table came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndicatorSource {
    FromModularFormula,
    FromCenterFormula,
    FromInput,
}

/// The rank x rank table of indicators; entry `(c, a)` holds
/// `nu_{2,1}^{iota(c)}(a)`.
#[derive(Clone, Debug)]
pub struct IndicatorTable<F> {
    nu: Vec<Vec<Complex<F>>>,
    source: IndicatorSource,
}

impl<F: Real> IndicatorTable<F> {
    pub fn rank(&self) -> usize {
        self.nu.len()
    }

    pub fn get(&self, c: usize, a: usize) -> Complex<F> {
        self.nu[c][a]
    }

    pub fn source(&self) -> IndicatorSource {
        self.source
    }

    /// Wrap a user-supplied table after certifying every entry against the
    /// fusion tensor and twists.
    pub fn from_input(
        nu: Vec<Vec<Complex<F>>>,
        fusion: &FusionTensor,
        t: &[ExactPhase],
        names: &[String],
        tol: &Tolerance<F>,
    ) -> Result<Self> {
        let table = IndicatorTable { nu, source: IndicatorSource::FromInput };
        table.certify_all(fusion, t, names, tol)?;
        Ok(table)
    }

    /// Run the integer/bound/parity certificate on every `(c, a)` pair.
    pub fn certify_all(
        &self,
        fusion: &FusionTensor,
        t: &[ExactPhase],
        names: &[String],
        tol: &Tolerance<F>,
    ) -> Result<()> {
        for c in 0..self.rank() {
            for a in 0..self.rank() {
                certify(
                    self.nu[c][a],
                    t[c].halve(),
                    fusion.get(a, a, c),
                    tol,
                    &names[a],
                    &names[c],
                )?;
            }
        }
        Ok(())
    }

    /// Largest entrywise deviation from another table.
    pub fn max_deviation(&self, other: &IndicatorTable<F>) -> F {
        let mut worst = F::zero();
        for c in 0..self.rank() {
            for a in 0..self.rank() {
                worst = worst.max((self.nu[c][a] - other.nu[c][a]).norm());
            }
        }
        worst
    }
}

/// The certificate behind every reconstruction step: `nu / sqrt(theta_c)`
/// rounds to an integer `m` with `|m| <= N^{a,a}_c` and `m = N^{a,a}_c (mod 2)`.
/// Returns `m`.
pub fn certify<F: Real>(
    nu: Complex<F>,
    sqrt_tc: ExactPhase,
    n_aac: u64,
    tol: &Tolerance<F>,
    a_name: &str,
    c_name: &str,
) -> Result<i64> {
    let z = nu * sqrt_tc.inv().value::<F>();
    let m = round_to_int(z, tol.eps_int).ok_or_else(|| Error::NonIntegerCertificate {
        a: a_name.to_string(),
        c: c_name.to_string(),
        re: z.re.to_f64().unwrap_or(f64::NAN),
        im: z.im.to_f64().unwrap_or(f64::NAN),
    })?;
    if m.unsigned_abs() > n_aac {
        return Err(Error::BoundViolation {
            a: a_name.to_string(),
            c: c_name.to_string(),
            m,
            bound: n_aac,
        });
    }
    if (m.rem_euclid(2) as u64) != n_aac % 2 {
        return Err(Error::ParityViolation {
            a: a_name.to_string(),
            c: c_name.to_string(),
            m,
            bound: n_aac,
        });
    }
    Ok(m)
}

/// Indicator from the category's own modular data:
/// `nu = (1/dim C) sum_{k,l} d_k conj(S~_{c,l}) N^{k,l}_a theta_k^2 / theta_l^2`
/// with `S~` the unnormalized S-matrix (first row = dimensions).
pub fn nu_modular<F: Real>(
    data: &ModularData<F>,
    fusion: &FusionTensor,
    c: usize,
    a: usize,
    tol: &Tolerance<F>,
) -> Result<Complex<F>> {
    let value = nu_modular_raw(data, fusion, c, a);
    certify(
        value,
        data.twist(c).halve(),
        fusion.get(a, a, c),
        tol,
        data.label_name(a),
        data.label_name(c),
    )?;
    Ok(value)
}

fn nu_modular_raw<F: Real>(
    data: &ModularData<F>,
    fusion: &FusionTensor,
    c: usize,
    a: usize,
) -> Complex<F> {
    let r = data.rank();
    let mut acc = Complex::new(F::zero(), F::zero());
    for k in 0..r {
        for l in 0..r {
            let n = fusion.get(k, l, a);
            if n == 0 {
                continue;
            }
            let twist_ratio = data.twist(k).square() / data.twist(l).square();
            let term = data.s_unnormalized(c, l).conj()
                * twist_ratio.value::<F>()
                * data.dim(k)
                * F::from_u64(n).unwrap();
            acc = acc + term;
        }
    }
    acc / data.global_dim()
}

/// The full table from the modular formula, certified entrywise.
pub fn indicator_table_modular<F: Real>(
    data: &ModularData<F>,
    fusion: &FusionTensor,
    tol: &Tolerance<F>,
) -> Result<IndicatorTable<F>> {
    let r = data.rank();
    let mut nu = vec![vec![Complex::new(F::zero(), F::zero()); r]; r];
    for c in 0..r {
        for a in 0..r {
            nu[c][a] = nu_modular(data, fusion, c, a, tol)?;
        }
    }
    Ok(IndicatorTable { nu, source: IndicatorSource::FromModularFormula })
}

/// Indicator from center data:
/// `nu = (1/dim C) sum_X [x:a] S~_{iota(c),X} theta_X^2`
/// with the center S-matrix unnormalized and `dim C = sqrt(dim Z(C))`.
/// Only the integrality certificate runs here; bound and parity need the
/// fusion tensor and run at table level.
pub fn nu_center<F: Real>(
    center: &CenterData<F>,
    base_t: &[ExactPhase],
    c: usize,
    a: usize,
    tol: &Tolerance<F>,
) -> Result<Complex<F>> {
    let ic = center.iota(c)?;
    // dim C = sqrt(dim Z); the unnormalized center S entry is s * sqrt(dim Z)
    let dim_c = center.base_global_dim();
    let mut acc = Complex::new(F::zero(), F::zero());
    for x in 0..center.center_rank() {
        let mult = center.forgetful(x, a);
        if mult == 0 {
            continue;
        }
        let term = center.s(ic, x)
            * dim_c
            * center.twist(x).square().value::<F>()
            * F::from_u64(mult).unwrap();
        acc = acc + term;
    }
    let value = acc / dim_c;
    let z = value * base_t[c].halve().inv().value::<F>();
    if round_to_int(z, tol.eps_int).is_none() {
        return Err(Error::NonIntegerCertificate {
            a: format!("#{a}"),
            c: format!("#{c}"),
            re: z.re.to_f64().unwrap_or(f64::NAN),
            im: z.im.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(value)
}

/// The full table from the center formula, certified against `fusion`.
pub fn indicator_table_center<F: Real>(
    center: &CenterData<F>,
    base_t: &[ExactPhase],
    fusion: &FusionTensor,
    names: &[String],
    tol: &Tolerance<F>,
) -> Result<IndicatorTable<F>> {
    center.validate_against_base(base_t)?;
    let r = center.base_rank();
    let mut nu = vec![vec![Complex::new(F::zero(), F::zero()); r]; r];
    for c in 0..r {
        for a in 0..r {
            let value = nu_center(center, base_t, c, a, tol).map_err(|e| match e {
                Error::NonIntegerCertificate { re, im, .. } => Error::NonIntegerCertificate {
                    a: names[a].clone(),
                    c: names[c].clone(),
                    re,
                    im,
                },
                other => other,
            })?;
            certify(value, base_t[c].halve(), fusion.get(a, a, c), tol, &names[a], &names[c])?;
            nu[c][a] = value;
        }
    }
    Ok(IndicatorTable { nu, source: IndicatorSource::FromCenterFormula })
}

/// Outcome of the trace relation `Tr[R^c_{a,a}] = theta_a^{-1} nu`.
#[derive(Clone, Copy, Debug)]
pub struct TraceCheck<F> {
    pub residual: F,
    pub pass: bool,
}

/// Compare the trace of an assembled diagonal block against the indicator.
/// Never fails; the caller decides what to do with a failing check.
pub fn trace_check<F: Real>(
    nu: Complex<F>,
    r_diag: &[Complex<F>],
    t_a: ExactPhase,
    tol: &Tolerance<F>,
) -> TraceCheck<F> {
    let trace = r_diag
        .iter()
        .fold(Complex::new(F::zero(), F::zero()), |acc, z| acc + *z);
    let expected = nu * t_a.inv().value::<F>();
    let residual = (trace - expected).norm();
    TraceCheck { residual, pass: residual < tol.eps_matrix }
}
