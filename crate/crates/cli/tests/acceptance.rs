//! Acceptance suite. Each criterion prints one `PASS`/`FAIL` line; run with
//! `cargo test -p sicfair-cli --test acceptance -- --nocapture` to see them.
//!
//! Seeds are fixed below so every run checks the same instances.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::seq::SliceRandom;
use sicfair_core::generate::{self, GenKind, GenParams};
use sicfair_core::oracle::configs_per_receiver;
use sicfair_core::{
    brute_force_maxmin, enumerate_orders, gaussian_fast_order, gaussian_rate_formula,
    greedy_order, greedy_profile, rate_vector, validate_rank_axioms, DecodingOrder,
    DecodingProfile, EnumerationBudget, GaussianChannel, RankFunctionSet, SolveOptions, UserSet,
};

const OPTIMALITY_TOL: f64 = 1e-9;
const AXIOM_TOL: f64 = 1e-9;
const FAST_PATH_RATE_TOL: f64 = 1e-12;
const FIXTURE_TOL: f64 = 1e-9;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn optimality_gap(rs: &RankFunctionSet) -> f64 {
    let greedy = greedy_profile(rs, &SolveOptions::default()).unwrap();
    let oracle = brute_force_maxmin(rs, &EnumerationBudget::default()).unwrap();
    (greedy.min_rate - oracle.opt_min_rate).abs()
}

fn ac1_greedy_optimal_gaussian() -> Verdict {
    let mut worst = 0.0f64;
    let mut count = 0;
    for (k, n) in [(2usize, 200u64), (3, 200), (4, 50)] {
        for i in 0..n {
            let seed = 1_000 * k as u64 + i;
            let rs = generate::generate(GenKind::Gaussian, &GenParams::new(k, seed)).unwrap();
            let gap = optimality_gap(&rs);
            if gap > OPTIMALITY_TOL {
                return Err(format!("K={k} seed={seed}: gap {gap:e}"));
            }
            worst = worst.max(gap);
            count += 1;
        }
    }
    Ok(format!("{count} Gaussian instances (K=2,3,4), worst gap {worst:e}"))
}

fn ac2_greedy_optimal_tabulated() -> Verdict {
    let mut worst = 0.0f64;
    for i in 0..100u64 {
        let seed = 20_000 + i;
        let rs = generate::generate(GenKind::TabulatedSubmodular, &GenParams::new(3, seed)).unwrap();
        let gap = optimality_gap(&rs);
        if gap > OPTIMALITY_TOL {
            return Err(format!("seed={seed}: gap {gap:e}"));
        }
        worst = worst.max(gap);
    }
    Ok(format!("100 tabulated-submodular instances (K=3), worst gap {worst:e}"))
}

fn ac3_dmc_rank_axioms() -> Verdict {
    let (mut mono, mut sub) = (0.0f64, 0.0f64);
    for (k, n) in [(2usize, 50u64), (3, 20)] {
        for i in 0..n {
            let seed = 30_000 + 100 * k as u64 + i;
            let rs = RankFunctionSet::Dmc(generate::dmc(k, seed).unwrap());
            for j in 0..k {
                let f0 = rs.eval(j, UserSet::empty(k)).unwrap();
                if f0 != 0.0 {
                    return Err(format!("K={k} seed={seed} rx{}: f(empty) = {f0:e}", j + 1));
                }
            }
            let report = validate_rank_axioms(&rs, AXIOM_TOL).unwrap();
            if !report.passed() {
                return Err(format!("K={k} seed={seed}: {:?}", report.failures().next()));
            }
            for r in &report.receivers {
                mono = mono.max(r.monotonicity.worst_violation);
                sub = sub.max(r.submodularity.worst_violation);
            }
        }
    }
    Ok(format!("70 binary DMCs, worst monotonicity {mono:e}, submodularity {sub:e}"))
}

fn ac4_fast_path_equivalence() -> Verdict {
    let mut worst = 0.0f64;
    for i in 0..500u64 {
        let k = 2 + (i % 5) as usize;
        let seed = 40_000 + i;
        let ch = generate::gaussian(&GenParams::new(k, seed)).unwrap();
        let rs = RankFunctionSet::Gaussian(ch.clone());
        for j in 0..k {
            let slow = greedy_order(&rs, j, &SolveOptions::default()).unwrap();
            let fast = gaussian_fast_order(&ch, j).unwrap();
            if slow.perm() != fast.perm() || slow.decoded_from() != fast.decoded_from() {
                return Err(format!("K={k} seed={seed} rx{}: {slow} vs {fast}", j + 1));
            }
        }
        let greedy = greedy_profile(&rs, &SolveOptions::default()).unwrap();
        let formula = gaussian_rate_formula(&ch);
        for u in 0..k {
            let d = (greedy.rates[u] - formula[u]).abs();
            if d > FAST_PATH_RATE_TOL {
                return Err(format!("K={k} seed={seed} user {}: rate diff {d:e}", u + 1));
            }
            worst = worst.max(d);
        }
    }
    Ok(format!("500 Gaussian instances (K=2..6), orders identical, worst rate diff {worst:e}"))
}

fn ac5_worked_fixture() -> Verdict {
    let ch = GaussianChannel::new(
        vec![vec![1.0, 2.0], vec![0.1, 1.0]],
        vec![1.0, 1.0],
        vec![1.0, 1.0],
    )
    .unwrap();
    let rs = RankFunctionSet::Gaussian(ch);
    let report = greedy_profile(&rs, &SolveOptions::default()).unwrap();
    let expected_profile = DecodingProfile::from_decode_sequences(&[vec![1, 0], vec![1]]).unwrap();
    if report.profile != expected_profile {
        return Err(format!("profile {}", report.profile));
    }
    let expected = [1.0, (21.0f64 / 11.0).log2()];
    for (u, want) in expected.iter().enumerate() {
        if (report.rates[u] - want).abs() > FIXTURE_TOL {
            return Err(format!("rate of user {} is {}", u + 1, report.rates[u]));
        }
    }
    // all 2 x 2 profiles, enumerated here by hand
    let mut best = f64::NEG_INFINITY;
    for rx1 in [vec![0], vec![1, 0]] {
        for rx2 in [vec![1], vec![0, 1]] {
            let p = DecodingProfile::from_decode_sequences(&[rx1.clone(), rx2]).unwrap();
            let rv = rate_vector(&rs, &p).unwrap();
            best = best.max(rv[0].min(rv[1]));
        }
    }
    if (best - report.min_rate).abs() > FIXTURE_TOL {
        return Err(format!("best of 4 profiles {best} vs greedy {}", report.min_rate));
    }
    Ok(format!("rates ({:.6}, {:.6}), optimal among 4 profiles", report.rates[0], report.rates[1]))
}

fn ac6_prefix_invariance() -> Verdict {
    let mut rng = generate::rng(60_000);
    for i in 0..100u64 {
        let k = 2 + (i % 5) as usize;
        let kind = if i % 2 == 0 {
            GenKind::Gaussian
        } else {
            GenKind::TabulatedSubmodular
        };
        let rs = generate::generate(kind, &GenParams::new(k, 60_000 + i)).unwrap();
        let mut orders = Vec::new();
        let mut shuffled = Vec::new();
        for j in 0..k {
            let mut perm: Vec<usize> = (0..k).collect();
            perm.shuffle(&mut rng);
            let o = DecodingOrder::new(j, perm.clone()).unwrap();
            perm[..o.decoded_from()].shuffle(&mut rng);
            shuffled.push(DecodingOrder::new(j, perm).unwrap());
            orders.push(o);
        }
        let a = rate_vector(&rs, &DecodingProfile::new(orders).unwrap()).unwrap();
        let b = rate_vector(&rs, &DecodingProfile::new(shuffled).unwrap()).unwrap();
        let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        if bits(a.as_slice()) != bits(b.as_slice()) {
            return Err(format!("pair {i}: {a} vs {b}"));
        }
    }
    Ok("100 (instance, profile) pairs bit-identical after prefix shuffles".into())
}

// Decoded sets containing j, each with every ordering of its other members.
fn count_recursively(k: usize, j: usize) -> usize {
    fn extend(k: usize, j: usize, used: &mut Vec<bool>) -> usize {
        let mut n = 1;
        for u in 0..k {
            if u != j && !used[u] {
                used[u] = true;
                n += extend(k, j, used);
                used[u] = false;
            }
        }
        n
    }
    extend(k, j, &mut vec![false; k])
}

fn ac7_enumeration_counts() -> Verdict {
    let budget = EnumerationBudget::default();
    let mut seen = Vec::new();
    for (k, expected) in [(1usize, 1usize), (2, 2), (3, 5), (4, 16)] {
        let closed = configs_per_receiver(k) as usize;
        for j in 0..k {
            let n = enumerate_orders(k, j, &budget).unwrap().len();
            let rec = count_recursively(k, j);
            if n != expected || closed != expected || rec != expected {
                return Err(format!("K={k} j={}: enumerated {n}, closed form {closed}, recursion {rec}", j + 1));
            }
        }
        seen.push(expected);
    }
    Ok(format!("counts {seen:?} for K = 1..4"))
}

fn ac8_cli_determinism() -> Verdict {
    let exe = env!("CARGO_BIN_EXE_sicfair");
    let scenarios = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    let dir = tempfile::tempdir().unwrap();
    let k4 = dir.path().join("k4.toml");
    let gen = Command::new(exe)
        .args(["gen", "--kind", "gaussian", "--k", "4", "--seed", "8008", "--out"])
        .arg(&k4)
        .status()
        .unwrap();
    if !gen.success() {
        return Err("gen failed".into());
    }
    let mut checked = 0;
    for path in [scenarios.join("two_user.toml"), k4] {
        for cmd in ["solve", "certify"] {
            for format in ["human", "structured"] {
                let mut outputs = Vec::new();
                for jobs in [None, Some("1"), Some("2"), Some("4"), None] {
                    let mut c = Command::new(exe);
                    c.args([cmd, "--format", format, "--scenario"]).arg(&path);
                    if let Some(n) = jobs {
                        c.args(["--jobs", n]);
                    }
                    let out = c.output().unwrap();
                    if out.status.code() != Some(0) {
                        return Err(format!("{cmd} exited with {:?}", out.status.code()));
                    }
                    outputs.push(out.stdout);
                }
                if outputs.iter().any(|o| *o != outputs[0]) {
                    return Err(format!("{cmd} --format {format} differs across runs/jobs on {}", path.display()));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} command/format/scenario combinations byte-identical over 5 runs"))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        ("AC1 greedy optimal on Gaussian channels", ac1_greedy_optimal_gaussian),
        ("AC2 greedy optimal on tabulated rank functions", ac2_greedy_optimal_tabulated),
        ("AC3 DMC rank axioms", ac3_dmc_rank_axioms),
        ("AC4 Gaussian fast path equals generic greedy", ac4_fast_path_equivalence),
        ("AC5 worked two-user fixture", ac5_worked_fixture),
        ("AC6 undecoded-prefix invariance", ac6_prefix_invariance),
        ("AC7 enumeration counts", ac7_enumeration_counts),
        ("AC8 CLI determinism", ac8_cli_determinism),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let start = Instant::now();
        let verdict = check();
        let secs = start.elapsed().as_secs_f64();
        match &verdict {
            Ok(detail) => println!("PASS  {name}: {detail} [{secs:.2}s]"),
            Err(detail) => {
                println!("FAIL  {name}: {detail} [{secs:.2}s]");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
