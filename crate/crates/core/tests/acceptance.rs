//! End-to-end checks of the classification theorems against exhaustive
//! catalogs. Prints one PASS/FAIL line per criterion and exits nonzero if
//! any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gorlat::exact;
use gorlat::families;
use gorlat::gorenstein;
use gorlat::oracle::{self, Classifier, CrossCheckReport};
use gorlat::simplex;
use gorlat::Result;

struct Outcome {
    detail: String,
    problems: Vec<String>,
}

fn cross_checks(cases: &[(usize, u64)], classifier: Classifier) -> Result<(Outcome, Vec<CrossCheckReport>)> {
    let mut reports = Vec::new();
    let mut problems = Vec::new();
    let mut classes = 0;
    for &(d, m) in cases {
        let report = oracle::cross_check(d, m, classifier)?;
        classes += report.matched.len();
        problems.extend(report.discrepancies().into_iter().map(|p| format!("d={d} m={m}: {p}")));
        reports.push(report);
    }
    let detail = format!("{} (d, m) pairs, {classes} Gorenstein classes matched", cases.len());
    Ok((Outcome { detail, problems }, reports))
}

fn prime_cases() -> Vec<(usize, u64)> {
    [2u64, 3, 5].iter().flat_map(|&p| (1..=6).map(move |d| (d, p))).collect()
}

fn prime_squared_cases() -> Vec<(usize, u64)> {
    (1..=5).map(|d| (d, 4)).chain((1..=4).map(|d| (d, 9))).collect()
}

fn pq_cases() -> Vec<(usize, u64)> {
    (1..=5).map(|d| (d, 6)).collect()
}

fn dual_volumes(reports: &[CrossCheckReport]) -> Result<Outcome> {
    let mut problems = Vec::new();
    let mut entries = 0;
    for report in reports {
        for (h, predictions) in &report.matched {
            let s = simplex::simplex_from_hnf(h)?;
            let cert = gorenstein::certificate(&s)?.expect("matched classes are Gorenstein");
            entries += 1;
            for inst in predictions {
                let predicted = families::predicted_dual_volume(inst)?;
                if predicted != cert.dual_volume {
                    problems.push(format!(
                        "{:?}: {inst:?} predicts {predicted}, geometric {}",
                        h.to_rows(),
                        cert.dual_volume
                    ));
                }
            }
        }
    }
    let samples = oracle::sample_family_instances(50, 2024)?;
    for inst in &samples {
        problems.extend(oracle::check_dual_volume(inst)?);
    }
    let kinds = |k: &str| samples.iter().filter(|i| i.kind() == k).count();
    Ok(Outcome {
        detail: format!(
            "{entries} catalog classes, {} sampled instances (one_row {}, power {}, pq {})",
            samples.len(),
            kinds("one_row"),
            kinds("power"),
            kinds("pq")
        ),
        problems,
    })
}

fn group_order_identity() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut problems = Vec::new();
    for k in 0..100 {
        let d = 1 + k % 5;
        let s = oracle::random_simplex(&mut rng, d, 9);
        let group = simplex::lambda_group(&s)?;
        let volume = simplex::normalized_volume(&s);
        let product: BigInt = group.invariant_factors().iter().product();
        if group.order() != &volume || product != volume {
            problems.push(format!("{s:?}: order {} vs volume {volume}", group.order()));
        }
    }
    Ok(Outcome { detail: "100 random simplices, d <= 5".into(), problems })
}

fn pyramid_law(reports: &[CrossCheckReport]) -> Result<Outcome> {
    let mut problems = Vec::new();
    let mut count = 0;
    for report in reports {
        for (h, _) in &report.matched {
            count += 1;
            problems.extend(oracle::check_pyramid_law(&simplex::simplex_from_hnf(h)?)?);
        }
    }
    Ok(Outcome { detail: format!("{count} Gorenstein classes lifted"), problems })
}

fn power_family() -> Result<Outcome> {
    let mut problems = Vec::new();
    let mut count = 0;
    for p in [2u64, 3] {
        for l in 1..=3 {
            for d in 1..=7 {
                for spec in families::enumerate_power_specs(p, l, d)? {
                    count += 1;
                    problems.extend(oracle::check_power_spec(&spec)?);
                }
            }
        }
    }
    Ok(Outcome { detail: format!("{count} power-family instances"), problems })
}

fn hermite_smith() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut problems = Vec::new();
    for k in 0..500 {
        let d = 1 + k % 5;
        let m = oracle::random_nonsingular(&mut rng, d, 9);
        let det = exact::det(&m)?;
        let hnf = exact::hnf_decompose(&m)?;
        if m.mul(&hnf.u)? != hnf.h {
            problems.push(format!("{:?}: M U != H", m.to_rows()));
        }
        if !exact::det(&hnf.u)?.abs().is_one() {
            problems.push(format!("{:?}: U is not unimodular", m.to_rows()));
        }
        if !oracle::has_hermite_shape(&hnf.h) {
            problems.push(format!("{:?}: H violates the Hermite shape", m.to_rows()));
        }
        let factors = exact::snf_invariant_factors(&m)?;
        if factors.iter().product::<BigInt>() != det.abs() {
            problems.push(format!("{:?}: invariant factors {factors:?} vs det {det}", m.to_rows()));
        }
    }
    Ok(Outcome { detail: "500 random nonsingular matrices, d <= 5".into(), problems })
}

fn report(n: usize, name: &str, started: Instant, outcome: Result<Outcome>) -> bool {
    let secs = started.elapsed().as_secs_f64();
    match outcome {
        Ok(o) if o.problems.is_empty() => {
            println!("PASS criterion {n}: {name} [{}; {secs:.1}s]", o.detail);
            true
        }
        Ok(o) => {
            println!("FAIL criterion {n}: {name} [{}; {} problems; {secs:.1}s]", o.detail, o.problems.len());
            for p in o.problems.iter().take(20) {
                println!("    {p}");
            }
            false
        }
        Err(e) => {
            println!("FAIL criterion {n}: {name} [error: {e}; {secs:.1}s]");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut ok = true;
    let mut reports = Vec::new();

    let t = Instant::now();
    let r = cross_checks(&prime_cases(), Classifier::Prime).map(|(o, rs)| {
        reports.extend(rs);
        o
    });
    ok &= report(1, "prime volume classification", t, r);

    let t = Instant::now();
    let r = cross_checks(&prime_squared_cases(), Classifier::PrimeSquared).map(|(o, rs)| {
        reports.extend(rs);
        o
    });
    ok &= report(2, "volume p^2 classification", t, r);

    let t = Instant::now();
    let r = cross_checks(&pq_cases(), Classifier::Pq).map(|(o, rs)| {
        reports.extend(rs);
        o
    });
    ok &= report(3, "volume pq classification", t, r);

    let t = Instant::now();
    ok &= report(4, "dual volume closed forms", t, dual_volumes(&reports));

    let t = Instant::now();
    ok &= report(5, "group order equals normalized volume", t, group_order_identity());

    let t = Instant::now();
    ok &= report(6, "pyramid raises the index by one", t, pyramid_law(&reports));

    let t = Instant::now();
    ok &= report(7, "power family", t, power_family());

    let t = Instant::now();
    ok &= report(8, "Hermite and Smith normal form properties", t, hermite_smith());

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
