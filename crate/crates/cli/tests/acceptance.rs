//! Acceptance suite. Each criterion prints one PASS/FAIL line; run with
//! `cargo test -p fm-fidelity-cli --test acceptance -- --nocapture`.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use fm_fidelity::cohomology::{
    binomial, box_cohomology, cech_oracle, euler_characteristic, euler_characteristic_polynomial,
    line_bundle_cohomology, serre_dual_degree, CohomologyTable, MultiDegree, MultiProjSpace,
};
use fm_fidelity::criteria::{gv_equivalence_harness, GvScenario, LocusDim, SupportLocusTable};
use fm_fidelity::scenarios::{
    flip_verdict, flop_verdict, poincare_ff_check, poincare_gv_scenario, FlipParams, FlopParams,
    PolarizationType,
};
use fm_fidelity::transform::{pushforward_split, Rank, SplitObject, SupportLabel, Verdict};
use fm_fidelity_cli::envelope::*;
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;

const BUDGET: Duration = Duration::from_secs(1);

fn report(id: u32, name: &str, outcome: Result<String, String>) {
    match &outcome {
        Ok(detail) => println!("criterion {id} {name}: PASS ({detail})"),
        Err(why) => println!("criterion {id} {name}: FAIL ({why})"),
    }
    if let Err(why) = outcome {
        panic!("criterion {id} failed: {why}");
    }
}

fn within_budget(start: Instant) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    if elapsed < BUDGET {
        Ok(elapsed)
    } else {
        Err(format!("took {elapsed:?}, budget {BUDGET:?}"))
    }
}

#[test]
fn criterion_1_flip_threshold() {
    let run = || {
        let start = Instant::now();
        let mut cases = 0;
        for k in 1..=8 {
            for l in 1..=8 {
                let v = flip_verdict(FlipParams::new(k, l).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                if v.is_fully_faithful() != (k >= l) {
                    return Err(format!("k={k} l={l}: {v}"));
                }
                cases += 1;
            }
        }
        let elapsed = within_budget(start)?;
        Ok(format!("{cases} cases in {elapsed:?}"))
    };
    report(1, "flip threshold", run());
}

/// Lowest-|degree| obstruction computed from the higher tors
/// tor_i = O(0, -l, -k+i)^{C(l-1,i)} and Bott on the ℙ^k factor alone.
fn rederived_witness(k: u32, l: u32) -> Option<(i64, BigUint)> {
    let mut best: Option<(i64, BigUint)> = None;
    for i in 1..l {
        let mult = binomial(u64::from(l - 1), u64::from(i));
        for (j, h) in line_bundle_cohomology(k, i64::from(i) - i64::from(k)).iter() {
            let degree = j - i64::from(i);
            let closer = best.as_ref().is_none_or(|(d, _)| degree.abs() < d.abs());
            if closer {
                best = Some((degree, &mult * h));
            }
        }
    }
    best
}

#[test]
fn criterion_2_flip_witnesses() {
    let run = || {
        let mut cases = 0;
        for l in 2..=8u32 {
            for k in 1..l {
                let v = flip_verdict(FlipParams::new(k, l).unwrap()).map_err(|e| e.to_string())?;
                let (w, degree) = v.witness().ok_or(format!("k={k} l={l}: no witness"))?;
                let rank = match w.rank() {
                    Rank::Exact(r) => r.clone(),
                    Rank::Generic { .. } => return Err(format!("k={k} l={l}: generic rank")),
                };
                let expected = (-i64::from(k), binomial(u64::from(l - 1), u64::from(k)));
                if (degree, rank.clone()) != expected {
                    return Err(format!(
                        "k={k} l={l}: got ({degree}, {rank}), want {expected:?}"
                    ));
                }
                if rederived_witness(k, l) != Some(expected.clone()) {
                    return Err(format!(
                        "k={k} l={l}: re-derivation gives {:?}",
                        rederived_witness(k, l)
                    ));
                }
                cases += 1;
            }
        }
        Ok(format!("{cases} cases"))
    };
    report(2, "flip witnesses", run());
}

#[test]
fn criterion_3_mukai_flop() {
    let run = || {
        let start = Instant::now();
        for n in 3..=10u32 {
            let v = flop_verdict(FlopParams::new(n).unwrap()).map_err(|e| e.to_string())?;
            let Verdict::NotFullyFaithful { total_degree, .. } = &v else {
                return Err(format!("n={n}: {v}"));
            };
            let (w, _) = v.witness().unwrap();
            if *total_degree != i64::from(n) - 2
                || w.rank() != &Rank::generic(1u32)
                || w.support() != SupportLabel::CenterProduct
            {
                return Err(format!("n={n}: witness {w:?} at degree {total_degree}"));
            }
        }
        let elapsed = within_budget(start)?;
        Ok(format!("n = 3..=10 in {elapsed:?}"))
    };
    report(3, "mukai flop", run());
}

fn polarization_types(g: u32) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..g {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u64>| {
                (1..=3).map(move |d| {
                    let mut q = p.clone();
                    q.push(d);
                    q
                })
            })
            .collect();
    }
    out
}

fn all_poincare_types() -> Vec<PolarizationType> {
    (1..=4)
        .flat_map(|g| {
            polarization_types(g)
                .into_iter()
                .map(move |d| PolarizationType::new(g, d).unwrap())
        })
        .collect()
}

#[test]
fn criterion_4_poincare_count() {
    let run = || {
        let start = Instant::now();
        let types = all_poincare_types();
        for t in &types {
            let p: BigUint = t.divisors().iter().map(|&d| BigUint::from(d)).product();
            let h0_l2 = BigUint::from(2u32).pow(t.g()) * &p;
            let r = poincare_ff_check(t).map_err(|e| e.to_string())?;
            let g = i64::from(t.g());
            let ok = r.passed
                && r.kunneth == CohomologyTable::single(g, &p * &p * &h0_l2)
                && r.isogeny_degree == &p * &p
                && r.quotient == h0_l2
                && r.h0_l2 == h0_l2;
            if !ok {
                return Err(format!("type {:?}: {r:?}", t.divisors()));
            }
        }
        let elapsed = within_budget(start)?;
        Ok(format!("{} types in {elapsed:?}", types.len()))
    };
    report(4, "poincare count", run());
}

#[test]
fn criterion_5_bott_vs_cech() {
    let run = || {
        let mut cases = 0;
        for n in 0..=3 {
            for d in -6..=6 {
                let cech = cech_oracle(n, d).map_err(|e| e.to_string())?;
                if cech != line_bundle_cohomology(n, d) {
                    return Err(format!("n={n} d={d}: čech {cech}"));
                }
                cases += 1;
            }
        }
        Ok(format!("{cases} cases"))
    };
    report(5, "bott vs cech", run());
}

/// χ(ℙ^n, O(d)) = (d+1)(d+2)…(d+n) / n!, evaluated directly.
fn chi_oracle(n: u32, d: i64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 1..=i64::from(n) {
        num *= d + j;
        den *= j;
    }
    num / den
}

fn random_split_object(rng: &mut ChaCha8Rng) -> SplitObject {
    let r = rng.gen_range(1..=3);
    let space = MultiProjSpace::new((0..r).map(|_| rng.gen_range(0..=4)).collect::<Vec<u32>>());
    let mut obj = SplitObject::zero(space);
    for _ in 0..rng.gen_range(1..=4) {
        let deg = MultiDegree::new((0..r).map(|_| rng.gen_range(-6..=6)).collect::<Vec<i64>>());
        obj.add(
            deg,
            rng.gen_range(-2..=2),
            BigUint::from(rng.gen_range(1u32..=5)),
        )
        .unwrap();
    }
    obj
}

#[test]
fn criterion_6_property_suites() {
    let run = || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..1000 {
            let n = rng.gen_range(0..=12u32);
            let d = rng.gen_range(-40..=40i64);
            let space = MultiProjSpace::new([n]);
            let deg = MultiDegree::new([d]);
            let h = line_bundle_cohomology(n, d);
            let dual_deg = serre_dual_degree(&space, &deg).map_err(|e| e.to_string())?;
            let dual = line_bundle_cohomology(n, dual_deg.degrees()[0]);
            if (0..=i64::from(n)).any(|i| h.get(i) != dual.get(i64::from(n) - i)) {
                return Err(format!("serre duality fails at n={n} d={d}"));
            }
            let chi = euler_characteristic(&space, &deg).map_err(|e| e.to_string())?;
            let poly = euler_characteristic_polynomial(&space, &deg).map_err(|e| e.to_string())?;
            if chi != h.alternating_sum() || chi != poly || chi != chi_oracle(n, d) {
                return Err(format!("χ mismatch at n={n} d={d}"));
            }
        }
        for _ in 0..200 {
            let ns: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=6)).collect();
            let ds: Vec<i64> = (0..3).map(|_| rng.gen_range(-12..=12)).collect();
            let chi = box_cohomology(
                &MultiProjSpace::new(ns.clone()),
                &MultiDegree::new(ds.clone()),
            )
            .map_err(|e| e.to_string())?
            .alternating_sum();
            let product: BigInt = ns
                .iter()
                .zip(&ds)
                .map(|(&n, &d)| chi_oracle(n, d))
                .product();
            if chi != product {
                return Err(format!("künneth χ fails on {ns:?} {ds:?}"));
            }
        }
        for _ in 0..500 {
            let obj = random_split_object(&mut rng);
            let r = obj.space().num_factors();
            let mask = rng.gen_range(1..(1u32 << r));
            let set: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
            let pushed = pushforward_split(&obj, &set).map_err(|e| e.to_string())?;
            if pushed.hypercohomology() != obj.hypercohomology() {
                return Err(format!("leray fails on {obj} along {set:?}"));
            }
        }
        Ok("1000 serre/χ, 200 künneth χ, 500 leray; 0 failures".to_string())
    };
    report(6, "property suites", run());
}

fn corruptions(base: &GvScenario) -> Vec<(&'static str, GvScenario)> {
    let g = base.dim_y.unwrap();
    let mut bumped = base.clone();
    let loci = base.support_loci.as_ref().unwrap();
    let entries: Vec<(i64, LocusDim)> = loci
        .entries()
        .map(|(i, d)| {
            if i == 2 {
                (i, LocusDim::Dim(1))
            } else {
                (i, d)
            }
        })
        .collect();
    bumped.support_loci = Some(SupportLocusTable::new(loci.ambient_dim(), entries).unwrap());

    let mut extra = base.clone();
    extra.transform.as_mut().unwrap().add(g - 1, BigUint::one());

    let mut top = base.clone();
    top.condition_c.as_mut().unwrap().expected_top += 1;

    vec![
        ("V^2 dimension bumped", bumped),
        ("extra transform entry", extra),
        ("h-table top changed", top),
    ]
}

#[test]
fn criterion_7_gv_agreement() {
    let run = || {
        let types = all_poincare_types();
        for t in &types {
            let r = gv_equivalence_harness(&poincare_gv_scenario(t).unwrap())
                .map_err(|e| e.to_string())?;
            if !(r.agree && r.geometric_gv) {
                return Err(format!("type {:?}: {r:?}", t.divisors()));
            }
        }
        let base = poincare_gv_scenario(&PolarizationType::new(2, vec![1, 2]).unwrap()).unwrap();
        for (name, bad) in corruptions(&base) {
            let r = gv_equivalence_harness(&bad).map_err(|e| e.to_string())?;
            if r.agree {
                return Err(format!("corruption '{name}' went unnoticed"));
            }
        }
        Ok(format!(
            "{} scenarios agree, 3 corruptions flagged",
            types.len()
        ))
    };
    report(7, "gv agreement", run());
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fm-fidelity"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn round_trip<T: Serialize + DeserializeOwned>(stdout: &str) -> Result<(), String> {
    let raw: serde_json::Value = serde_json::from_str(stdout).map_err(|e| e.to_string())?;
    let typed: T = serde_json::from_value(raw.clone()).map_err(|e| e.to_string())?;
    let back = serde_json::to_value(&typed).map_err(|e| e.to_string())?;
    if back != raw {
        return Err(format!("round trip changed {raw} into {back}"));
    }
    Ok(())
}

type Check = fn(&str) -> Result<(), String>;

fn write(dir: &Path, name: &str, value: serde_json::Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, value.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn criterion_8_cli_contract() {
    let dir = tempfile::tempdir().unwrap();
    let gv_ok = write(
        dir.path(),
        "gv_ok.json",
        serde_json::json!({"ambient_dim": 2, "entries": [{"i": 0, "dim": 0}, {"i": 1, "dim": 0}, {"i": 2, "dim": 0}]}),
    );
    let gv_bad = write(
        dir.path(),
        "gv_bad.json",
        serde_json::json!({"ambient_dim": 2, "entries": [{"i": 2, "dim": 1}]}),
    );
    let wit = write(
        dir.path(),
        "wit.json",
        serde_json::json!({"dims": {"2": "32"}}),
    );
    let bo_ok = write(
        dir.path(),
        "bo_ok.json",
        serde_json::json!({"dim_x": 2, "classes": [{"i": -1, "class": "empty"}, {"i": 0, "class": "contained_in_diagonal"},
            {"i": 2, "class": "contained_in_diagonal"}], "hom": {"diag_hom_dim": 1, "offdiag_vanishes": true}}),
    );
    let bo_bad = write(
        dir.path(),
        "bo_bad.json",
        serde_json::json!({"dim_x": 2, "classes": [], "hom": {"diag_hom_dim": 2, "offdiag_vanishes": true}}),
    );
    let scenario = poincare_gv_scenario(&PolarizationType::new(2, vec![1, 2]).unwrap()).unwrap();
    let scen_ok = write(
        dir.path(),
        "scenario.json",
        serde_json::to_value(&scenario).unwrap(),
    );
    let mut broken = scenario.clone();
    broken.condition_c.as_mut().unwrap().expected_top += 1;
    let scen_bad = write(
        dir.path(),
        "scenario_bad.json",
        serde_json::to_value(&broken).unwrap(),
    );
    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, "{\"ambient_dim\": 2, \"entr").unwrap();
    let truncated = truncated.to_str().unwrap().to_string();

    let json_cases: Vec<(Vec<&str>, i32, Check)> = vec![
        (vec!["bott", "2", "-3"], 0, round_trip::<BottEnvelope>),
        (
            vec!["kunneth", "2,2", "1,-3"],
            0,
            round_trip::<KunnethEnvelope>,
        ),
        (vec!["flip", "1", "3"], 0, round_trip::<FlipEnvelope>),
        (vec!["flip", "3", "1"], 0, round_trip::<FlipEnvelope>),
        (vec!["flip-sweep", "4", "4"], 0, round_trip::<SweepEnvelope>),
        (vec!["flop", "4"], 0, round_trip::<FlopEnvelope>),
        (
            vec!["poincare", "2", "1", "2"],
            0,
            round_trip::<PoincareEnvelope>,
        ),
        (vec!["gv-check", &gv_ok], 0, round_trip::<GvCheckEnvelope>),
        (vec!["gv-check", &gv_bad], 2, round_trip::<GvCheckEnvelope>),
        (
            vec!["wit-check", &wit, "--dim-y", "2"],
            0,
            round_trip::<WitEnvelope>,
        ),
        (
            vec!["wit-check", &wit, "--dim-y", "1"],
            2,
            round_trip::<WitEnvelope>,
        ),
        (vec!["bo-check", &bo_ok], 0, round_trip::<BoEnvelope>),
        (vec!["bo-check", &bo_bad], 2, round_trip::<BoEnvelope>),
        (
            vec!["equivalence", &scen_ok],
            0,
            round_trip::<EquivalenceEnvelope>,
        ),
        (
            vec!["equivalence", &scen_bad],
            2,
            round_trip::<EquivalenceEnvelope>,
        ),
        (
            vec!["equivalence", "--poincare", "3", "1", "1", "2"],
            0,
            round_trip::<EquivalenceEnvelope>,
        ),
    ];
    let usage_cases: Vec<Vec<&str>> = vec![
        vec!["flop", "1"],
        vec!["poincare", "2", "1", "0"],
        vec!["kunneth", "2,2", "1"],
        vec!["gv-check", &truncated],
        vec!["gv-check", "/nonexistent/loci.json"],
        vec!["frobnicate"],
        vec!["bott", "x", "1"],
    ];

    let run = || {
        let mut failures = Vec::new();
        for (args, code, check) in &json_cases {
            let mut full = args.clone();
            full.extend(["--format", "json"]);
            let (got, stdout) = cli(&full);
            if got != *code {
                failures.push(format!("{args:?}: exit {got}, want {code}"));
            }
            if let Err(e) = check(&stdout) {
                failures.push(format!("{args:?}: {e}"));
            }
            let (table_code, _) = cli(args);
            if table_code != *code {
                failures.push(format!("{args:?} (table): exit {table_code}"));
            }
        }
        for args in &usage_cases {
            let (got, _) = cli(args);
            if got != 1 {
                failures.push(format!("{args:?}: exit {got}, want 1"));
            }
        }
        let (quiet_code, quiet_out) = cli(&["bott", "1", "3", "--quiet"]);
        if quiet_code != 0 || !quiet_out.is_empty() {
            failures.push("--quiet still prints".to_string());
        }
        if failures.is_empty() {
            Ok(format!(
                "{} json round trips, {} usage errors",
                json_cases.len(),
                usage_cases.len()
            ))
        } else {
            Err(failures.join("; "))
        }
    };
    report(8, "cli contract", run());
}
