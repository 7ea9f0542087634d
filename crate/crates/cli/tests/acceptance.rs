//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Criterion 4 is checked against `oracle`, a brute-force evaluation of the
//! indicator double sum and the multiplicity formula written from scratch on
//! raw catalog JSON — it shares no code with the engine.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;

use braidrec::catalog::{self, BUILTIN_NAMES};
use braidrec::fusion::{triple_dim, verlinde};
use braidrec::indicator::{indicator_table_center, indicator_table_modular, trace_check};
use braidrec::rsymbol::{assemble_r, canonical_branch, y_table, BlockCase};
use braidrec::scalar::Tolerance;

const EPS_MATRIX: f64 = 1e-9;
const EPS_INT: f64 = 1e-6;

fn tol() -> Tolerance<f64> {
    Tolerance::new(EPS_MATRIX, EPS_INT)
}

/// Brute-force oracle: raw JSON in, R diagonal out. No engine code.
mod oracle {
    pub type C = (f64, f64);

    pub fn mul(x: C, y: C) -> C {
        (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)
    }

    pub fn conj(x: C) -> C {
        (x.0, -x.1)
    }

    pub fn cis(angle: f64) -> C {
        (angle.cos(), angle.sin())
    }

    pub fn dist(x: C, y: C) -> f64 {
        ((x.0 - y.0).powi(2) + (x.1 - y.1).powi(2)).sqrt()
    }

    pub struct RawData {
        pub s: Vec<Vec<C>>,
        /// twist exponents as (num, den)
        pub t: Vec<(f64, f64)>,
        /// pinned fusion block, NOT derived from S
        pub n: Vec<Vec<Vec<i64>>>,
    }

    pub fn parse(json: &str) -> RawData {
        let v: serde_json::Value = serde_json::from_str(json).unwrap();
        let s = v["s_matrix"]
            .as_array()
            .unwrap()
            .iter()
            .map(|row| {
                row.as_array()
                    .unwrap()
                    .iter()
                    .map(|z| {
                        let p = z.as_array().unwrap();
                        (p[0].as_f64().unwrap(), p[1].as_f64().unwrap())
                    })
                    .collect()
            })
            .collect();
        let t = v["t_phases"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| {
                let p = p.as_array().unwrap();
                (p[0].as_f64().unwrap(), p[1].as_f64().unwrap())
            })
            .collect();
        let n = v["fusion"]
            .as_array()
            .unwrap()
            .iter()
            .map(|plane| {
                plane
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|row| {
                        row.as_array()
                            .unwrap()
                            .iter()
                            .map(|x| x.as_i64().unwrap())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        RawData { s, t, n }
    }

    fn theta(raw: &RawData, k: usize, power: f64) -> C {
        cis(std::f64::consts::TAU * raw.t[k].0 / raw.t[k].1 * power)
    }

    /// canonical square root: half the reduced exponent
    fn sqrt_theta(raw: &RawData, k: usize) -> C {
        theta(raw, k, 0.5)
    }

    /// indicator by the unnormalized double sum
    pub fn nu(raw: &RawData, c: usize, a: usize) -> C {
        let r = raw.s.len();
        let s00 = raw.s[0][0].0;
        let dim = 1.0 / (s00 * s00);
        let scale = dim.sqrt();
        let mut acc = (0.0, 0.0);
        for k in 0..r {
            for l in 0..r {
                if raw.n[k][l][a] == 0 {
                    continue;
                }
                let d_k = raw.s[0][k].0 / s00;
                let s_cl = (raw.s[c][l].0 * scale, raw.s[c][l].1 * scale);
                let ratio = mul(theta(raw, k, 2.0), theta(raw, l, -2.0));
                let term = mul(mul(conj(s_cl), ratio), (d_k * raw.n[k][l][a] as f64, 0.0));
                acc = (acc.0 + term.0, acc.1 + term.1);
            }
        }
        (acc.0 / dim, acc.1 / dim)
    }

    /// diagonal of [R^c_{a,a}] via the multiplicity formula, + entries first
    pub fn r_diag(raw: &RawData, a: usize, c: usize) -> Vec<C> {
        let v = nu(raw, c, a);
        let z = mul(v, conj(sqrt_theta(raw, c)));
        assert!(z.1.abs() < 1e-9, "certificate imaginary part {}", z.1);
        let m = z.0.round();
        assert!((z.0 - m).abs() < 1e-9, "certificate off-integer {}", z.0);
        let n_aac = raw.n[a][a][c];
        let d_plus = ((n_aac as f64 + m) / 2.0) as usize;
        let d_minus = ((n_aac as f64 - m) / 2.0) as usize;
        let base = mul(sqrt_theta(raw, c), conj(theta(raw, a, 1.0)));
        let mut out = vec![base; d_plus];
        out.extend(vec![(-base.0, -base.1); d_minus]);
        out
    }
}

fn builtin_json(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data")
        .join(format!("{name}.json"));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn criterion_1_verlinde_oracle() {
    for name in BUILTIN_NAMES {
        let entry = catalog::builtin::<f64>(name).unwrap();
        let computed = verlinde(&entry.data, &tol()).unwrap();
        let pinned = entry.fusion.as_ref().expect("catalog pins the fusion tensor");
        let r = entry.data.rank();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    assert_eq!(
                        computed.get(a, b, c),
                        pinned.get(a, b, c),
                        "{name}: N[{a}][{b}][{c}]"
                    );
                }
            }
        }
    }
    println!("criterion 1 (verlinde oracle): PASS");
}

#[test]
fn criterion_2_indicator_certificate() {
    let mut violations = 0;
    for name in BUILTIN_NAMES {
        let entry = catalog::builtin::<f64>(name).unwrap();
        let n = verlinde(&entry.data, &tol()).unwrap();
        let table = indicator_table_modular(&entry.data, &n, &tol()).unwrap();
        for c in 0..entry.data.rank() {
            for a in 0..entry.data.rank() {
                let z = table.get(c, a) * entry.data.twist(c).halve().inv().value::<f64>();
                let m = z.re.round();
                let integral = z.im.abs() < EPS_INT && (z.re - m).abs() < EPS_INT;
                let bound = m.abs() as u64 <= n.get(a, a, c);
                let parity = (m.abs() as u64) % 2 == n.get(a, a, c) % 2;
                if !(integral && bound && parity) {
                    violations += 1;
                    eprintln!("{name} ({c},{a}): z = {z}");
                }
            }
        }
    }
    assert_eq!(violations, 0);
    println!("criterion 2 (indicator certificate): PASS");
}

#[test]
fn criterion_3_trace_relation() {
    for name in BUILTIN_NAMES {
        let entry = catalog::builtin::<f64>(name).unwrap();
        let premod = entry.premodular(&tol()).unwrap();
        let table = assemble_r(&premod, canonical_branch(&premod.t), &tol()).unwrap();
        for block in table.blocks() {
            if block.case != BlockCase::Diagonal {
                continue;
            }
            let check = trace_check(
                premod.nu.get(block.c, block.a),
                &block.diag_values::<f64>(),
                premod.t[block.a],
                &tol(),
            );
            assert!(
                check.pass && check.residual < EPS_MATRIX,
                "{name} ({},{},{}): residual {}",
                block.a,
                block.b,
                block.c,
                check.residual
            );
        }
    }
    println!("criterion 3 (trace relation): PASS");
}

#[test]
fn criterion_4_known_r_values_against_brute_force() {
    let pi = std::f64::consts::PI;
    // (builtin, a, c, expected diagonal entry under the canonical branch)
    let cases = [
        ("semion", 1, 0, oracle::cis(pi / 2.0)),
        ("ising", 1, 0, oracle::cis(-pi / 8.0)),
        ("ising", 1, 2, oracle::cis(3.0 * pi / 8.0)),
        ("fibonacci", 1, 0, oracle::cis(-4.0 * pi / 5.0)),
        ("fibonacci", 1, 1, oracle::cis(3.0 * pi / 5.0)),
    ];
    for (name, a, c, expected) in cases {
        let raw = oracle::parse(&builtin_json(name));
        let brute = oracle::r_diag(&raw, a, c);
        assert_eq!(brute.len(), 1, "{name}: multiplicity-one block");
        assert!(
            oracle::dist(brute[0], expected) < 1e-12,
            "{name} ({a},{a},{c}): oracle {brute:?} vs expected {expected:?}"
        );

        let entry = catalog::builtin::<f64>(name).unwrap();
        let premod = entry.premodular(&tol()).unwrap();
        let table = assemble_r(&premod, canonical_branch(&premod.t), &tol()).unwrap();
        let block = table.get(a, a, c).unwrap();
        let engine = block.diag_values::<f64>();
        assert_eq!(engine.len(), 1);
        assert!(
            oracle::dist((engine[0].re, engine[0].im), brute[0]) < EPS_MATRIX,
            "{name} ({a},{a},{c}): engine {engine:?} vs oracle {brute:?}"
        );
    }
    println!("criterion 4 (known R-values vs brute force): PASS");
}

#[test]
fn criterion_5_y_tensor_certificates() {
    for name in BUILTIN_NAMES {
        let entry = catalog::builtin::<f64>(name).unwrap();
        let n = verlinde(&entry.data, &tol()).unwrap();
        let entries = y_table(&entry.data, &n, &tol()).unwrap();
        let r = entry.data.rank();
        assert_eq!(entries.len(), r * r * r);
        for e in &entries {
            // integrality at EPS_INT
            assert!(e.raw.im.abs() < EPS_INT && (e.raw.re - e.y as f64).abs() < EPS_INT);
            let td = triple_dim(&n, e.c, e.a, e.b) as i64;
            assert!(td + e.y >= 0 && td - e.y >= 0, "{name}: bound at ({},{},{})", e.a, e.b, e.c);
            assert_eq!((td + e.y) % 2, 0, "{name}: parity at ({},{},{})", e.a, e.b, e.c);
            assert_eq!((td - e.y) % 2, 0);
        }
        // Y^c_{a,1} * sqrt(theta_c) equals the indicator
        let table = indicator_table_modular(&entry.data, &n, &tol()).unwrap();
        for e in entries.iter().filter(|e| e.b == 0) {
            let lhs = e.raw * entry.data.twist(e.c).halve().value::<f64>();
            let diff = (lhs - table.get(e.c, e.a)).norm();
            assert!(diff < EPS_MATRIX, "{name} ({},{}): {diff}", e.a, e.c);
        }
    }
    println!("criterion 5 (Y-tensor certificates): PASS");
}

// -- CLI-level criteria ------------------------------------------------------

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_braidrec"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

type BlockKey = (u64, u64, u64);

fn blocks_by_key(doc: &serde_json::Value) -> BTreeMap<BlockKey, serde_json::Value> {
    doc["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| {
            (
                (
                    b["a"].as_u64().unwrap(),
                    b["b"].as_u64().unwrap(),
                    b["c"].as_u64().unwrap(),
                ),
                b.clone(),
            )
        })
        .collect()
}

fn sorted_diag(block: &serde_json::Value) -> Vec<(String, String)> {
    let mut entries: Vec<(String, String)> = block["diag"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            let p = p.as_array().unwrap();
            (p[0].to_string(), p[1].to_string())
        })
        .collect();
    entries.sort();
    entries
}

/// Flipping the square-root branch at `c` relabels the eigenvalue names:
/// `(d+, d-)` swap and the signed diagonal negates relative to the recorded
/// branch, so the eigenvalue multiset itself is unchanged, as is every block
/// away from `c` and every above/below block.
#[test]
fn criterion_6_branch_covariance_via_json_diff() {
    for name in BUILTIN_NAMES {
        let entry = catalog::builtin::<f64>(name).unwrap();
        let labels: Vec<String> =
            entry.data.labels().iter().map(|l| l.name.clone()).collect();
        let (code, base_out, _) = run_cli(&["rsymbols", name, "--format", "json"]);
        assert_eq!(code, 0);
        let base: serde_json::Value = serde_json::from_str(&base_out).unwrap();
        for (flip, label) in labels.iter().enumerate() {
            let (code, flip_out, _) =
                run_cli(&["rsymbols", name, "--format", "json", "--sqrt-flip", label]);
            assert_eq!(code, 0, "{name} --sqrt-flip {label}");
            let flipped: serde_json::Value = serde_json::from_str(&flip_out).unwrap();

            // the recorded branch moves by a half turn at the flipped label only
            let b0 = base["sqrt_branch"].as_array().unwrap();
            let b1 = flipped["sqrt_branch"].as_array().unwrap();
            for (i, (x, y)) in b0.iter().zip(b1).enumerate() {
                if i == flip {
                    assert_ne!(x, y, "{name}: branch at {label} must change");
                } else {
                    assert_eq!(x, y);
                }
            }

            let base_blocks = blocks_by_key(&base);
            let flip_blocks = blocks_by_key(&flipped);
            assert_eq!(base_blocks.len(), flip_blocks.len());
            for (key, block) in &base_blocks {
                let other = &flip_blocks[key];
                let diagonal_at_flip =
                    block["case"] == "diag" && key.2 == flip as u64;
                if diagonal_at_flip {
                    assert_eq!(block["d_plus"], other["d_minus"], "{name} {key:?}");
                    assert_eq!(block["d_minus"], other["d_plus"], "{name} {key:?}");
                    assert_eq!(
                        sorted_diag(block),
                        sorted_diag(other),
                        "{name} {key:?}: eigenvalue multiset changed"
                    );
                } else {
                    assert_eq!(block, other, "{name} {key:?}: untouched block changed");
                }
            }
        }
    }
    println!("criterion 6 (branch covariance, JSON structural diff): PASS");
}

#[test]
fn criterion_7_center_cross_check() {
    let entry = catalog::builtin::<f64>("semion").unwrap();
    let center = entry.center.as_ref().expect("semion ships its 4-object center");
    assert_eq!(center.center_rank(), 4);
    let n = verlinde(&entry.data, &tol()).unwrap();
    let names: Vec<String> = entry.data.labels().iter().map(|l| l.name.clone()).collect();
    let from_center =
        indicator_table_center(center, entry.data.twists(), &n, &names, &tol()).unwrap();
    let from_modular = indicator_table_modular(&entry.data, &n, &tol()).unwrap();
    for c in 0..2 {
        for a in 0..2 {
            let diff = (from_center.get(c, a) - from_modular.get(c, a)).norm();
            assert!(diff < EPS_MATRIX, "({c},{a}): {diff}");
        }
    }
    println!("criterion 7 (center cross-check on the semion): PASS");
}

#[test]
fn criterion_8_corrupted_twist_exits_2_naming_the_pair() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data/semion_corrupt_t.json");
    let (code, _, stderr) = run_cli(&["rsymbols", path.to_str().unwrap()]);
    assert_eq!(code, 2, "certificate violations exit with status 2; stderr: {stderr}");
    assert!(
        stderr.contains("does not round to an integer") || stderr.contains("parity"),
        "{stderr}"
    );
    assert!(stderr.contains("a=s") && stderr.contains("c=1"), "{stderr}");
    println!("criterion 8 (negative test, exit 2 at (s,1)): PASS");
}
