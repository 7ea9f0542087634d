//! The R-symbol table in the canonical diagonal gauge, the eigenvalue
//! multiplicities `d+-`, and the Y-tensor with its certificates.
//!
//! In the canonical gauge every `[R^c_{a,b}]` is diagonal:
//!   - `a > b`: the identity,
//!   - `a < b`: `theta_c / (theta_a theta_b)` times the identity,
//!   - `a = b`: `sqrt(theta_c)/theta_a` times a signed diagonal with `d_plus`
//!     entries `+1` first, then `d_minus` entries `-1`.
//!
//! All diagonal entries are roots of unity, so blocks store exact phases; a
//! `-1` sign is folded into the exponent as `+1/2`.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fusion::{triple_dim, FusionTensor};
use crate::indicator::certify;
use crate::model::{ModularData, PremodularData};
use crate::phase::ExactPhase;
use crate::scalar::{round_to_int, Real, Tolerance};

/// Position of a block's `(a, b)` pair in the label order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockCase {
    Above,
    Below,
    Diagonal,
}

impl BlockCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            BlockCase::Above => "above",
            BlockCase::Below => "below",
            BlockCase::Diagonal => "diag",
        }
    }
}

/// One diagonal block `[R^c_{a,b}]`, stored as exact phases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RBlock {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub case: BlockCase,
    /// Diagonal entries; length `N^{a,b}_c`.
    pub diag: Vec<ExactPhase>,
    /// Eigenvalue multiplicities, present only for diagonal blocks.
    pub d_plus: Option<u64>,
    pub d_minus: Option<u64>,
}

impl RBlock {
    /// Render the exact diagonal to complex numbers.
    pub fn diag_values<F: Real>(&self) -> Vec<Complex<F>> {
        self.diag.iter().map(|p| p.value::<F>()).collect()
    }
}

/// The complete table: one block per triple with `N^{a,b}_c > 0`, plus the
/// square-root branch it was assembled under.
#[derive(Clone, Debug)]
pub struct RSymbolTable {
    pub sqrt_branch: Vec<ExactPhase>,
    blocks: BTreeMap<(usize, usize, usize), RBlock>,
}

impl RSymbolTable {
    pub fn get(&self, a: usize, b: usize, c: usize) -> Option<&RBlock> {
        self.blocks.get(&(a, b, c))
    }

    /// Blocks in lexicographic `(a, b, c)` order.
    pub fn blocks(&self) -> impl Iterator<Item = &RBlock> {
        self.blocks.values()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// The canonical square-root branch for every twist.
pub fn canonical_branch(t: &[ExactPhase]) -> Vec<ExactPhase> {
    t.iter().map(|p| p.halve()).collect()
}

/// Eigenvalue multiplicities `d+- = (N^{a,a}_c +- nu/sqrt(theta_c)) / 2`.
pub fn compute_d_pm<F: Real>(
    n_aac: u64,
    nu: Complex<F>,
    sqrt_tc: ExactPhase,
    tol: &Tolerance<F>,
    a_name: &str,
    c_name: &str,
) -> Result<(u64, u64)> {
    let m = certify(nu, sqrt_tc, n_aac, tol, a_name, c_name)?;
    let d_plus = (n_aac as i64 + m) / 2;
    let d_minus = (n_aac as i64 - m) / 2;
    Ok((d_plus as u64, d_minus as u64))
}

/// Assemble the full R-symbol table under the given square-root branch.
///
/// `sqrt_branch[c]` must square to `theta_c`; this is checked exactly.
pub fn assemble_r<F: Real>(
    premod: &PremodularData<F>,
    sqrt_branch: Vec<ExactPhase>,
    tol: &Tolerance<F>,
) -> Result<RSymbolTable> {
    let r = premod.rank();
    if sqrt_branch.len() != r {
        return Err(Error::RankMismatch { s_rank: r, field: "sqrt_branch", len: sqrt_branch.len() });
    }
    for (c, branch) in sqrt_branch.iter().enumerate() {
        if branch.square() != premod.t[c] {
            return Err(Error::Validation {
                summary: format!(
                    "sqrt_branch[{c}] = {} does not square to theta = {}",
                    branch, premod.t[c]
                ),
            });
        }
    }

    let mut blocks = BTreeMap::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                let n = premod.fusion.get(a, b, c);
                if n == 0 {
                    continue;
                }
                let block = match a.cmp(&b) {
                    std::cmp::Ordering::Greater => RBlock {
                        a,
                        b,
                        c,
                        case: BlockCase::Above,
                        diag: vec![ExactPhase::one(); n as usize],
                        d_plus: None,
                        d_minus: None,
                    },
                    std::cmp::Ordering::Less => {
                        let entry = premod.t[c] / (premod.t[a] * premod.t[b]);
                        RBlock {
                            a,
                            b,
                            c,
                            case: BlockCase::Below,
                            diag: vec![entry; n as usize],
                            d_plus: None,
                            d_minus: None,
                        }
                    }
                    std::cmp::Ordering::Equal => {
                        let (d_plus, d_minus) = compute_d_pm(
                            n,
                            premod.nu.get(c, a),
                            sqrt_branch[c],
                            tol,
                            premod.label_name(a),
                            premod.label_name(c),
                        )?;
                        let base = sqrt_branch[c] / premod.t[a];
                        let mut diag = vec![base; d_plus as usize];
                        diag.extend(vec![base.negate(); d_minus as usize]);
                        RBlock {
                            a,
                            b,
                            c,
                            case: BlockCase::Diagonal,
                            diag,
                            d_plus: Some(d_plus),
                            d_minus: Some(d_minus),
                        }
                    }
                };
                blocks.insert((a, b, c), block);
            }
        }
    }
    Ok(RSymbolTable { sqrt_branch, blocks })
}

/// One entry of the Y-tensor with its certificate data.
#[derive(Clone, Copy, Debug)]
pub struct YEntry<F> {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// Raw value of the double sum before rounding.
    pub raw: Complex<F>,
    /// The certified integer value.
    pub y: i64,
    /// `dim C(c, a (x) a (x) b)`.
    pub triple_dim: u64,
}

/// `Y^c_{a,b} = sqrt(theta_b)/(sqrt(theta_c) dim C) *
///   sum_{k,l} conj(S~_{b,k}) conj(S~_{c,l}) N^{k,l}_a theta_k^2/theta_l^2`
/// under the canonical square-root branch.
///
/// Certified: the value rounds to an integer `y`, and
/// `dim C(c, a (x) a (x) b) +- y` is nonnegative and even.
pub fn compute_y<F: Real>(
    data: &ModularData<F>,
    fusion: &FusionTensor,
    a: usize,
    b: usize,
    c: usize,
    tol: &Tolerance<F>,
) -> Result<YEntry<F>> {
    let r = data.rank();
    let mut acc = Complex::new(F::zero(), F::zero());
    for k in 0..r {
        for l in 0..r {
            let n = fusion.get(k, l, a);
            if n == 0 {
                continue;
            }
            let twist_ratio = data.twist(k).square() / data.twist(l).square();
            let term = data.s_unnormalized(b, k).conj()
                * data.s_unnormalized(c, l).conj()
                * twist_ratio.value::<F>()
                * F::from_u64(n).unwrap();
            acc = acc + term;
        }
    }
    let branch_ratio = data.twist(b).halve() / data.twist(c).halve();
    let raw = acc * branch_ratio.value::<F>() / data.global_dim();

    let triple = format!(
        "({},{},{})",
        data.label_name(a),
        data.label_name(b),
        data.label_name(c)
    );
    let c_name = data.label_name(c).to_string();
    let y = round_to_int(raw, tol.eps_int).ok_or_else(|| Error::NonIntegerCertificate {
        a: triple.clone(),
        c: c_name.clone(),
        re: raw.re.to_f64().unwrap_or(f64::NAN),
        im: raw.im.to_f64().unwrap_or(f64::NAN),
    })?;
    let td = triple_dim(fusion, c, a, b);
    if (td as i64 + y) < 0 || (td as i64 - y) < 0 {
        return Err(Error::BoundViolation { a: triple, c: c_name, m: y, bound: td });
    }
    if (td as i64 + y) % 2 != 0 {
        return Err(Error::ParityViolation { a: triple, c: c_name, m: y, bound: td });
    }
    Ok(YEntry { a, b, c, raw, y, triple_dim: td })
}

/// The whole Y-table in lexicographic `(a, b, c)` order.
pub fn y_table<F: Real>(
    data: &ModularData<F>,
    fusion: &FusionTensor,
    tol: &Tolerance<F>,
) -> Result<Vec<YEntry<F>>> {
    let r = data.rank();
    let mut out = Vec::with_capacity(r * r * r);
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                out.push(compute_y(data, fusion, a, b, c, tol)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::fusion::verlinde;
    use crate::indicator::{indicator_table_modular, trace_check};
    use num_complex::Complex64;

    fn premod_for(name: &str) -> PremodularData<f64> {
        let entry = catalog::builtin::<f64>(name).unwrap();
        let tol = Tolerance::default();
        entry.premodular(&tol).unwrap()
    }

    #[test]
    fn d_pm_examples() {
        let tol = Tolerance::default();
        let one = ExactPhase::one();
        // semion: N = 1, nu = -1, sqrt(theta_1) = 1 -> (0, 1)
        assert_eq!(
            compute_d_pm(1, Complex64::new(-1.0, 0.0), one, &tol, "s", "1").unwrap(),
            (0, 1)
        );
        // empty space
        assert_eq!(
            compute_d_pm(0, Complex64::new(0.0, 0.0), one, &tol, "a", "c").unwrap(),
            (0, 0)
        );
        // Ising a=sigma, c=1: N = 1, nu = 1 -> (1, 0)
        assert_eq!(
            compute_d_pm(1, Complex64::new(1.0, 0.0), one, &tol, "sigma", "1").unwrap(),
            (1, 0)
        );
    }

    #[test]
    fn semion_self_block_is_i() {
        let premod = premod_for("semion");
        let table =
            assemble_r(&premod, canonical_branch(&premod.t), &Tolerance::default()).unwrap();
        let block = table.get(1, 1, 0).expect("block (s,s,1)");
        assert_eq!(block.case, BlockCase::Diagonal);
        assert_eq!((block.d_plus, block.d_minus), (Some(0), Some(1)));
        assert_eq!(block.diag, vec![ExactPhase::new(1, 4).unwrap()]);
        let v: Vec<Complex64> = block.diag_values();
        assert_eq!(v, vec![Complex64::new(0.0, 1.0)]);
    }

    #[test]
    fn above_blocks_are_identity() {
        let premod = premod_for("ising");
        let table =
            assemble_r(&premod, canonical_branch(&premod.t), &Tolerance::default()).unwrap();
        // (sigma, 1, sigma): a > b
        let block = table.get(1, 0, 1).unwrap();
        assert_eq!(block.case, BlockCase::Above);
        assert_eq!(block.diag, vec![ExactPhase::one()]);
    }

    #[test]
    fn below_blocks_carry_twist_ratio() {
        let premod = premod_for("ising");
        let table =
            assemble_r(&premod, canonical_branch(&premod.t), &Tolerance::default()).unwrap();
        // (1, sigma, sigma): a < b, entry theta_sigma/(theta_1 theta_sigma) = 1
        let block = table.get(0, 1, 1).unwrap();
        assert_eq!(block.case, BlockCase::Below);
        assert_eq!(block.diag, vec![ExactPhase::one()]);
        // (sigma, psi, sigma): entry theta_sigma/(theta_sigma theta_psi) = -1
        let block = table.get(1, 2, 1).unwrap();
        assert_eq!(block.case, BlockCase::Below);
        assert_eq!(block.diag, vec![ExactPhase::new(1, 2).unwrap()]);
    }

    #[test]
    fn completeness_matches_fusion_support() {
        let premod = premod_for("toric");
        let table =
            assemble_r(&premod, canonical_branch(&premod.t), &Tolerance::default()).unwrap();
        let r = premod.rank();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    assert_eq!(table.get(a, b, c).is_some(), premod.fusion.get(a, b, c) > 0);
                }
            }
        }
    }

    #[test]
    fn diagonal_blocks_satisfy_trace_relation() {
        for name in catalog::BUILTIN_NAMES {
            let premod = premod_for(name);
            let tol = Tolerance::default();
            let table = assemble_r(&premod, canonical_branch(&premod.t), &tol).unwrap();
            for block in table.blocks() {
                if block.case != BlockCase::Diagonal {
                    continue;
                }
                let check = trace_check(
                    premod.nu.get(block.c, block.a),
                    &block.diag_values::<f64>(),
                    premod.t[block.a],
                    &tol,
                );
                assert!(check.pass, "{name} ({},{},{}): {}", block.a, block.b, block.c, check.residual);
            }
        }
    }

    #[test]
    fn squared_eigenvalue_law_is_exact() {
        for name in catalog::BUILTIN_NAMES {
            let premod = premod_for(name);
            let table =
                assemble_r(&premod, canonical_branch(&premod.t), &Tolerance::default()).unwrap();
            for block in table.blocks() {
                if block.case != BlockCase::Diagonal {
                    continue;
                }
                let want = premod.t[block.c] / premod.t[block.a].square();
                for entry in &block.diag {
                    assert_eq!(entry.square(), want, "{name}");
                }
            }
        }
    }

    /// Flipping `sqrt_branch[c]` relabels which root is called `+sqrt(theta_c)`:
    /// the multiplicities swap, the branch-relative signs all negate, and the
    /// eigenvalue multiset — the actual operator — is unchanged.
    #[test]
    fn branch_flip_swaps_multiplicities_and_fixes_eigenvalues() {
        let premod = premod_for("fibonacci");
        let tol = Tolerance::default();
        let canonical = canonical_branch(&premod.t);
        let mut flipped = canonical.clone();
        flipped[1] = flipped[1].negate();
        let base = assemble_r(&premod, canonical.clone(), &tol).unwrap();
        let alt = assemble_r(&premod, flipped, &tol).unwrap();
        for block in base.blocks() {
            let other = alt.get(block.a, block.b, block.c).unwrap();
            if block.case == BlockCase::Diagonal && block.c == 1 {
                assert_eq!(block.d_plus, other.d_minus);
                assert_eq!(block.d_minus, other.d_plus);
                // same eigenvalue multiset
                let mut lhs = block.diag.clone();
                let mut rhs = other.diag.clone();
                lhs.sort();
                rhs.sort();
                assert_eq!(lhs, rhs);
                // branch-relative signed diagonal negates
                let rel = |table: &RSymbolTable, b: &RBlock| -> Vec<ExactPhase> {
                    b.diag
                        .iter()
                        .map(|p| *p / (table.sqrt_branch[b.c] / premod.t[b.a]))
                        .collect()
                };
                let mut lhs: Vec<ExactPhase> = rel(&base, block).iter().map(|p| p.negate()).collect();
                let mut rhs = rel(&alt, other);
                lhs.sort();
                rhs.sort();
                assert_eq!(lhs, rhs);
            } else {
                assert_eq!(block, other);
            }
        }
    }

    #[test]
    fn wrong_branch_rejected() {
        let premod = premod_for("semion");
        let bad = vec![ExactPhase::one(), ExactPhase::new(1, 4).unwrap()];
        // (1/4)^2 = 1/2 != 1/4: not a square root of theta_s
        let err = assemble_r(&premod, bad, &Tolerance::default()).unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
    }

    #[test]
    fn y_collapses_to_indicator_at_unit_b() {
        for name in catalog::BUILTIN_NAMES {
            let entry = catalog::builtin::<f64>(name).unwrap();
            let tol = Tolerance::default();
            let n = verlinde(&entry.data, &tol).unwrap();
            let table = indicator_table_modular(&entry.data, &n, &tol).unwrap();
            for a in 0..entry.data.rank() {
                for c in 0..entry.data.rank() {
                    let y = compute_y(&entry.data, &n, a, 0, c, &tol).unwrap();
                    let lhs = y.raw * entry.data.twist(c).halve().value::<f64>();
                    assert!((lhs - table.get(c, a)).norm() < 1e-9, "{name} ({a},{c})");
                }
            }
        }
    }

    #[test]
    fn y_values_frozen() {
        let tol = Tolerance::default();
        // trivial: Y^1_{1,1} = 1
        let entry = catalog::builtin::<f64>("trivial").unwrap();
        let n = verlinde(&entry.data, &tol).unwrap();
        assert_eq!(compute_y(&entry.data, &n, 0, 0, 0, &tol).unwrap().y, 1);
        // fibonacci: Y^tau_{tau,tau} = 0 with triple_dim 2
        let entry = catalog::builtin::<f64>("fibonacci").unwrap();
        let n = verlinde(&entry.data, &tol).unwrap();
        let y = compute_y(&entry.data, &n, 1, 1, 1, &tol).unwrap();
        assert_eq!((y.y, y.triple_dim), (0, 2));
    }
}
