//! Fusion coefficients: the Verlinde formula and the fusion-ring axioms.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::{Label, ModularData};
use crate::scalar::{round_to_int, Real, Tolerance};

/// Where a tensor's entries came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    FromVerlinde,
    FromInput,
}

/// The rank^3 tensor of fusion coefficients `N^{a,b}_c`, stored flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTensor {
    rank: usize,
    n: Vec<u64>,
    provenance: Provenance,
}

impl FusionTensor {
    pub fn from_entries(rank: usize, n: Vec<u64>, provenance: Provenance) -> Result<Self> {
        if n.len() != rank * rank * rank {
            return Err(Error::RankMismatch { s_rank: rank, field: "fusion", len: n.len() });
        }
        Ok(FusionTensor { rank, n, provenance })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// `N^{a,b}_c`
    pub fn get(&self, a: usize, b: usize, c: usize) -> u64 {
        self.n[(a * self.rank + b) * self.rank + c]
    }

    /// Charge conjugation read off the unit column: `dual(a)` is the unique
    /// `b` with `N^{a,b}_1 = 1`. Returns `None` if no such permutation exists.
    pub fn dual_permutation(&self) -> Option<Vec<usize>> {
        let mut dual = Vec::with_capacity(self.rank);
        for a in 0..self.rank {
            let mut found = None;
            for b in 0..self.rank {
                match self.get(a, b, 0) {
                    0 => {}
                    1 if found.is_none() => found = Some(b),
                    _ => return None,
                }
            }
            dual.push(found?);
        }
        let mut seen = vec![false; self.rank];
        for &b in &dual {
            if seen[b] {
                return None;
            }
            seen[b] = true;
        }
        Some(dual)
    }

    /// Unit rows/columns, associativity, and commutativity; exact integer
    /// checks. `labels` is only used for diagnostics.
    pub fn validate_axioms(&self, labels: &[Label]) -> Result<()> {
        let r = self.rank;
        let name = |i: usize| {
            labels.get(i).map(|l| l.name.clone()).unwrap_or_else(|| format!("#{i}"))
        };
        for b in 0..r {
            for c in 0..r {
                let want = u64::from(b == c);
                if self.get(0, b, c) != want {
                    return Err(Error::FusionAxiom {
                        axiom: "unit",
                        detail: format!("N^(1,{})_{} = {}", name(b), name(c), self.get(0, b, c)),
                    });
                }
                if self.get(b, 0, c) != want {
                    return Err(Error::FusionAxiom {
                        axiom: "unit",
                        detail: format!("N^({},1)_{} = {}", name(b), name(c), self.get(b, 0, c)),
                    });
                }
            }
        }
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    if self.get(a, b, c) != self.get(b, a, c) {
                        return Err(Error::FusionAxiom {
                            axiom: "commutativity",
                            detail: format!("N^({0},{1})_{2} != N^({1},{0})_{2}", name(a), name(b), name(c)),
                        });
                    }
                    for d in 0..r {
                        let lhs: u64 = (0..r).map(|e| self.get(a, b, e) * self.get(e, c, d)).sum();
                        let rhs: u64 = (0..r).map(|f| self.get(b, c, f) * self.get(a, f, d)).sum();
                        if lhs != rhs {
                            return Err(Error::FusionAxiom {
                                axiom: "associativity",
                                detail: format!(
                                    "(({}x{})x{} -> {}) gives {} vs {}",
                                    name(a), name(b), name(c), name(d), lhs, rhs
                                ),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Frobenius reciprocity against a duality permutation:
    /// `N^{a,b}_c = N^{b,c*}_{a*} = N^{c*,a}_{b*}`.
    pub fn check_frobenius(&self, dual: &[usize]) -> Result<()> {
        let r = self.rank;
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let n = self.get(a, b, c);
                    if n != self.get(b, dual[c], dual[a]) || n != self.get(dual[c], a, dual[b]) {
                        return Err(Error::FusionAxiom {
                            axiom: "frobenius_reciprocity",
                            detail: format!("at ({a},{b},{c})"),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Fusion coefficients from the S-matrix:
/// `N^{a,b}_c = sum_x S_{a,x} S_{b,x} conj(S_{c,x}) / S_{0,x}`
/// over the normalized unitary S. Every entry must round to a nonnegative
/// integer; on failure the worst offending triple is reported.
pub fn verlinde<F: Real>(data: &ModularData<F>, tol: &Tolerance<F>) -> Result<FusionTensor> {
    let r = data.rank();
    let mut n = vec![0u64; r * r * r];
    let mut worst: Option<(usize, usize, usize, Complex<F>, F)> = None;
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                let mut acc = Complex::new(F::zero(), F::zero());
                for x in 0..r {
                    acc = acc + data.s(a, x) * data.s(b, x) * data.s(c, x).conj() / data.s(0, x);
                }
                match round_to_int(acc, tol.eps_int) {
                    Some(v) if v >= 0 => {
                        n[(a * r + b) * r + c] = v as u64;
                    }
                    Some(v) => {
                        return Err(Error::NegativeFusion {
                            a: data.label_name(a).to_string(),
                            b: data.label_name(b).to_string(),
                            c: data.label_name(c).to_string(),
                            value: v,
                        });
                    }
                    None => {
                        let residual = acc.im.abs().max((acc.re - acc.re.round()).abs());
                        let is_worse = worst.map(|(.., w)| residual > w).unwrap_or(true);
                        if is_worse {
                            worst = Some((a, b, c, acc, residual));
                        }
                    }
                }
            }
        }
    }
    if let Some((a, b, c, value, residual)) = worst {
        return Err(Error::NonIntegerFusion {
            a: data.label_name(a).to_string(),
            b: data.label_name(b).to_string(),
            c: data.label_name(c).to_string(),
            value: value.re.to_f64().unwrap_or(f64::NAN),
            residual: residual.to_f64().unwrap_or(f64::NAN),
        });
    }
    FusionTensor::from_entries(r, n, Provenance::FromVerlinde)
}

/// `dim C(c, a (x) a (x) b) = sum_e N^{a,a}_e N^{e,b}_c`
pub fn triple_dim(n: &FusionTensor, c: usize, a: usize, b: usize) -> u64 {
    (0..n.rank()).map(|e| n.get(a, a, e) * n.get(e, b, c)).sum()
}
