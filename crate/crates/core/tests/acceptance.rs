//! One pass/fail line per acceptance criterion. Exits nonzero on any failure.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fibshift::builders::{build_lsd, build_msd, lsd_k, msd_state_bound, predicted_lsd_states};
use fibshift::fibword::{methods, FibWordMethod, Morphic};
use fibshift::oracle::{brute_min_dfao_stable, lemma_checks, SequenceOracle};
use fibshift::{Dfao, Order};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c10_automata() -> Outcome {
    let start = Instant::now();
    let lsd = build_lsd(10).map_err(|e| e.to_string())?.0.minimize();
    ensure(lsd.len() == 13, || format!("minimized lsd(10) has {} states", lsd.len()))?;
    let reference_lsd10 = common::reference_lsd10();
    ensure(lsd.equivalent(&reference_lsd10).unwrap() == None, || "lsd(10) differs from the 13-state reference".into())?;
    if let Some(n) = common::agree_up_to(&lsd, &reference_lsd10, 10_000) {
        return Err(format!("lsd(10) and the reference disagree at n={n}"));
    }
    let msd = build_msd(10).map_err(|e| e.to_string())?.0;
    ensure(common::matches_msd10(&msd), || "msd(10) labels or transitions differ from the reference".into())?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    Ok(format!("lsd 13 states equivalent, msd 8 labelled states exact, {took:.2?}"))
}

fn count_formula() -> Outcome {
    let bad: Vec<u64> = (5..=2000u64)
        .into_par_iter()
        .filter(|&c| build_lsd(c).unwrap().0.minimize().len() != predicted_lsd_states(c).unwrap())
        .collect();
    ensure(bad.is_empty(), || format!("formula fails at c={bad:?}"))?;
    let brute_bad: Vec<u64> = (5..=500u64)
        .into_par_iter()
        .filter(|&c| {
            let (m, _) = brute_min_dfao_stable(&SequenceOracle::new(c), Order::Lsd).unwrap();
            m.len() != predicted_lsd_states(c).unwrap()
        })
        .collect();
    ensure(brute_bad.is_empty(), || format!("learned count differs at c={brute_bad:?}"))?;
    Ok("5 <= c <= 2000 formula exact, learned counts equal for c <= 500".into())
}

fn correctness() -> Outcome {
    const N: u64 = 5000;
    const C: u64 = 2000;
    let len = (C + N) as usize;
    let word = Morphic::new().prefix(len);
    for m in methods() {
        ensure(m.prefix(len) == word, || format!("generator {} disagrees", m.name()))?;
    }
    let bad: Vec<String> = (0..=C)
        .into_par_iter()
        .flat_map_iter(|c| {
            let lsd = build_lsd(c).unwrap().0;
            let msd = build_msd(c).unwrap().0;
            let word = &word;
            [("lsd", lsd), ("msd", msd)].into_iter().filter_map(move |(name, m)| {
                (0..N)
                    .find(|&i| m.eval_int(i) != word[(c + i) as usize])
                    .map(|i| format!("{name} c={c} i={i}"))
            })
        })
        .collect();
    ensure(bad.is_empty(), || bad.join(", "))?;
    Ok(format!("both orders match f(i+c) for c <= {C}, i < {N}"))
}

fn log_phi(x: f64) -> f64 {
    x.ln() / ((1.0 + 5f64.sqrt()) / 2.0).ln()
}

fn log_growth() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut samples: Vec<u64> = (0..400).map(|_| (rng.gen_range(0.0..(100_001f64).ln())).exp() as u64 - 1).collect();
    samples.extend([0, 1, 2, 3, 10, 100_000]);
    samples.sort_unstable();
    samples.dedup();
    let rows: Vec<(u64, usize, usize, usize, usize)> = samples
        .par_iter()
        .map(|&c| {
            let lsd = build_lsd(c).unwrap().0.len();
            let msd = build_msd(c).unwrap().0.len();
            (c, lsd, msd, lsd_k(c), msd_state_bound(c).unwrap())
        })
        .collect();
    let mut fitted: f64 = 0.0;
    for &(c, lsd, msd, k, bound) in &rows {
        let cap = 4.0 * log_phi(c as f64 + 2.0) + 10.0;
        ensure(lsd as f64 <= cap && msd as f64 <= cap, || format!("c={c}: lsd {lsd}, msd {msd} exceed {cap:.1}"))?;
        ensure(lsd <= 2 * k + 3, || format!("c={c}: lsd {lsd} > 2k+3 = {}", 2 * k + 3))?;
        ensure(msd <= bound, || format!("c={c}: msd {msd} > endpoint bound {bound}"))?;
        if c >= 10 {
            fitted = fitted.max(msd as f64 / log_phi(c as f64 + 2.0));
        }
    }
    Ok(format!("{} sampled c <= 100000; fitted msd constant {fitted:.3} states per log_phi(c+2)", rows.len()))
}

fn lemmas() -> Outcome {
    let reports: Vec<_> = lemma_checks().iter().map(|c| c.run(c.default_bounds())).collect();
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.to_string()).collect();
    ensure(failed.is_empty(), || failed.join("; "))?;
    Ok(format!("{} suites at default bounds", reports.len()))
}

fn base_cases() -> Outcome {
    let start = Instant::now();
    let lsd = build_lsd(0).unwrap().0.minimize().len();
    let msd = build_msd(0).unwrap().0.minimize().len();
    ensure(lsd == 5 && msd == 2, || format!("lsd {lsd}, msd {msd}"))?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    Ok(format!("lsd 5 states, msd 2 states, {took:.2?}"))
}

fn make(c: u64, order: Order, minimized: bool) -> Dfao {
    let m = match order {
        Order::Lsd => build_lsd(c).unwrap().0,
        Order::Msd => build_msd(c).unwrap().0,
    };
    if minimized {
        m.minimize()
    } else {
        m
    }
}

fn exports() -> Outcome {
    let mut checked = 0;
    for c in (0..=200u64).chain([1000, 10_000, 100_000]) {
        for order in [Order::Lsd, Order::Msd] {
            for minimized in [false, true] {
                let m = make(c, order, minimized);
                let back = Dfao::parse_walnut(&m.export_walnut()).map_err(|e| format!("c={c}: {e}"))?;
                ensure(back.equivalent(&m).unwrap() == None, || format!("c={c} {order}: reimport differs"))?;
                let dot = m.export_dot();
                ensure(dot == m.export_dot() && dot == make(c, order, minimized).export_dot(), || {
                    format!("c={c} {order}: DOT output not stable")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} automata round-trip through Walnut text, DOT stable"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("exact c = 10 automata", c10_automata),
        ("minimal lsd state count formula", count_formula),
        ("correctness of both constructions", correctness),
        ("logarithmic state growth", log_growth),
        ("lemma suites", lemmas),
        ("base-case automata", base_cases),
        ("export round-trip", exports),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let took = start.elapsed();
        match outcome {
            Ok(msg) => println!("PASS {}. {name}: {msg} [{took:.1?}]", i + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL {}. {name}: {msg} [{took:.1?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
