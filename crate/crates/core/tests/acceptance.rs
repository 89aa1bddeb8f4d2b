//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always print. Exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use symbreak_core::automorphism::{automorphisms, AutGroup};
use symbreak_core::indices::{
    distinguishing_number, is_distinguishing, motion_lower_bound, phi, phi_from_varphi, phi_grid,
    phi_square_grid, phi_table, saturation_check, theta_cycle, theta_path, threshold,
    varphi_closed, varphi_from_phi, BruteForce, CountingProblem, SATURATION_SEED,
};
use symbreak_core::product::{
    is_distinguishing_product, theta_power, theta_product_distinct, CheckMode, Factorization,
};
use symbreak_core::{cartesian_product, Budget, Coloring, FamilySpec, Graph, Result};

fn fam(s: &str) -> Graph {
    s.parse::<FamilySpec>().unwrap().build().unwrap()
}

fn product(specs: &[&str]) -> Graph {
    let factors: Vec<Graph> = specs.iter().map(|s| fam(s)).collect();
    cartesian_product(&factors).unwrap().into_graph()
}

/// `N_k / |Aut|` by exhaustive enumeration.
fn brute_phi(g: &Graph, k: u32) -> Result<BigUint> {
    let aut = automorphisms(g)?;
    phi(
        &CountingProblem::new(g, &aut, Budget::unlimited()),
        &BruteForce,
        k,
    )
}

/// Collects mismatches; an empty list means the criterion passed.
type Outcome = Result<Vec<String>>;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

/// Name, factors, 1-based red cells, expected verdict.
type GridExample = (&'static str, [&'static str; 2], &'static [[usize; 2]], bool);

fn mismatch<T: PartialEq + std::fmt::Debug>(
    fails: &mut Vec<String>,
    what: String,
    got: T,
    want: T,
) {
    if got != want {
        fails.push(format!("{what}: got {got:?}, want {want:?}"));
    }
}

fn grid_formula() -> Outcome {
    let mut fails = Vec::new();
    for (m, n) in [(2, 3), (2, 4), (3, 4)] {
        let g = product(&[&format!("path:{m}"), &format!("path:{n}")]);
        for k in [2, 3] {
            mismatch(
                &mut fails,
                format!("Phi_{k}(P{m}xP{n})"),
                phi_grid(m, n, k)?,
                brute_phi(&g, k)?,
            );
        }
    }
    mismatch(
        &mut fails,
        "Phi_2(P2xP3)".into(),
        phi_grid(2, 3, 2)?,
        BigUint::from(10u32),
    );
    Ok(fails)
}

fn square_grid_formula() -> Outcome {
    let mut fails = Vec::new();
    let g = product(&["path:3", "path:3"]);
    for (k, want) in [(2, 36u32), (3, 2106)] {
        let brute = brute_phi(&g, k)?;
        mismatch(
            &mut fails,
            format!("Phi_{k}(P3^2) formula"),
            phi_square_grid(3, k)?,
            brute.clone(),
        );
        mismatch(
            &mut fails,
            format!("Phi_{k}(P3^2) value"),
            brute,
            BigUint::from(want),
        );
    }
    Ok(fails)
}

fn path_cycle_thresholds() -> Outcome {
    let mut fails = Vec::new();
    for m in 2..=10u32 {
        let aut = automorphisms(&fam(&format!("path:{m}")))?;
        mismatch(
            &mut fails,
            format!("theta(P{m})"),
            threshold(&aut),
            theta_path(m)?,
        );
    }
    for n in 3..=10u32 {
        let aut = automorphisms(&fam(&format!("cycle:{n}")))?;
        mismatch(
            &mut fails,
            format!("theta(C{n})"),
            threshold(&aut),
            theta_cycle(n)?,
        );
    }
    Ok(fails)
}

fn oracle_theta(g: &Graph) -> Result<u64> {
    Ok(u64::from(threshold(&automorphisms(g)?)))
}

fn distinct_products() -> Outcome {
    let mut fails = Vec::new();
    for (specs, want) in [
        (["path:2", "path:3"], 5u64),
        (["path:2", "cycle:3"], 5),
        (["path:4", "path:5"], 13),
    ] {
        let fact = Factorization::from_factors(&specs.map(fam))?;
        let formula = theta_product_distinct(&fact)?;
        mismatch(
            &mut fails,
            format!("{specs:?} formula"),
            formula,
            oracle_theta(fact.product().graph())?,
        );
        mismatch(&mut fails, format!("{specs:?} value"), formula, want);
    }
    Ok(fails)
}

fn powers() -> Outcome {
    let mut fails = Vec::new();
    for (base, t, want) in [
        ("complete:2", 2, 4u64),
        ("complete:3", 2, 7),
        ("complete:2", 3, 7),
    ] {
        let g = fam(base);
        let formula = theta_power(&g, t)?;
        let built = cartesian_product(&vec![g; t])?.into_graph();
        mismatch(
            &mut fails,
            format!("{base}^{t} formula"),
            formula,
            oracle_theta(&built)?,
        );
        mismatch(&mut fails, format!("{base}^{t} value"), formula, want);
    }
    mismatch(
        &mut fails,
        "K2^2 vs C4".into(),
        theta_power(&fam("complete:2"), 2)?,
        oracle_theta(&fam("cycle:4"))?,
    );
    Ok(fails)
}

fn reds(fact: &Factorization, cells: &[[usize; 2]]) -> Result<Coloring> {
    let p = fact.product();
    let mut colors = vec![1; p.graph().order()];
    for c in cells {
        colors[p.vertex(&[c[0] - 1, c[1] - 1])?] = 2;
    }
    Coloring::new(colors, 2)
}

fn layerwise_checker() -> Outcome {
    let mut fails = Vec::new();
    let fact = Factorization::from_factors(&[fam("path:2"), fam("path:3")])?;
    let g = fact.product().graph();
    let aut = automorphisms(g)?;
    for mask in 0u32..64 {
        let c = Coloring::new((0..6).map(|v| 1 + (mask >> v & 1)).collect(), 2)?;
        let direct = is_distinguishing(g, &aut, &c)?;
        for mode in [CheckMode::Full, CheckMode::AutF] {
            let layered = is_distinguishing_product(&fact, &c, mode)?.distinguishing;
            mismatch(
                &mut fails,
                format!("mask {mask:06b} {mode:?}"),
                layered,
                direct,
            );
        }
    }
    let examples: [GridExample; 3] = [
        (
            "first 4x5 example",
            ["path:4", "path:5"],
            &[[2, 2], [3, 4]],
            false,
        ),
        (
            "5x6 example",
            ["path:5", "path:6"],
            &[[2, 2], [2, 3], [2, 4], [4, 5]],
            true,
        ),
        (
            "second 4x5 example",
            ["path:4", "path:5"],
            &[[2, 4], [3, 2], [3, 3]],
            true,
        ),
    ];
    for (name, specs, cells, want) in examples {
        let fact = Factorization::from_factors(&specs.map(fam))?;
        let c = reds(&fact, cells)?;
        for mode in [CheckMode::Full, CheckMode::AutF] {
            let got = is_distinguishing_product(&fact, &c, mode)?.distinguishing;
            mismatch(&mut fails, format!("{name} {mode:?}"), got, want);
        }
    }
    Ok(fails)
}

fn exact_count_closed_form() -> Outcome {
    let mut fails = Vec::new();
    for s in ["path:3", "path:4", "cycle:4", "cycle:5"] {
        let g = fam(s);
        let aut = automorphisms(&g)?;
        let n = g.order() as u32;
        let problem = CountingProblem::new(&g, &aut, Budget::default());
        let phis = phi_table(&problem, &BruteForce, n)?;
        let varphis = varphi_from_phi(&phis, g.order())?;
        for k in threshold(&aut)..=n {
            mismatch(
                &mut fails,
                format!("varphi_{k}({s})"),
                varphi_closed(&g, &aut, k)?,
                varphis[k as usize].clone(),
            );
        }
        mismatch(
            &mut fails,
            format!("round trip {s}"),
            phi_from_varphi(&varphis),
            phis,
        );
    }
    Ok(fails)
}

fn distinguishing_numbers() -> Outcome {
    let mut fails = Vec::new();
    let mut cases: Vec<(String, u32)> = (2..=6).map(|n| (format!("path:{n}"), 2)).collect();
    cases.extend(
        [
            ("cycle:5", 3),
            ("cycle:6", 2),
            ("complete:4", 4),
            ("kbipartite:3,3", 4),
            ("hypercube:4", 2),
        ]
        .map(|(s, d)| (s.to_string(), d)),
    );
    for (s, want) in cases {
        let g = fam(&s);
        let d = distinguishing_number(&g, &automorphisms(&g)?, Budget::default())?;
        mismatch(&mut fails, format!("D({s})"), d.number, want);
    }
    Ok(fails)
}

/// Every symmetric graph the suite touches.
fn fixtures() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for n in 2..=10 {
        out.push((format!("path:{n}"), fam(&format!("path:{n}"))));
    }
    for n in 3..=10 {
        out.push((format!("cycle:{n}"), fam(&format!("cycle:{n}"))));
    }
    for s in ["complete:4", "kbipartite:3,3", "hypercube:3", "hypercube:4"] {
        out.push((s.to_string(), fam(s)));
    }
    for specs in [
        &["path:2", "path:3"][..],
        &["path:2", "path:4"],
        &["path:3", "path:4"],
        &["path:3", "path:3"],
        &["path:2", "cycle:3"],
        &["path:4", "path:5"],
        &["complete:2", "complete:2"],
        &["complete:3", "complete:3"],
        &["complete:2", "complete:2", "complete:2"],
        &["complete:2", "complete:2", "path:3"],
    ] {
        out.push((specs.join(" x "), product(specs)));
    }
    out
}

fn motion_bound(fixtures: &[(String, Graph, AutGroup)]) -> Outcome {
    let mut fails = Vec::new();
    for (name, g, aut) in fixtures {
        let (theta, bound) = (threshold(aut), motion_lower_bound(g, aut)?);
        if theta < bound {
            fails.push(format!("{name}: theta {theta} < bound {bound}"));
        }
    }
    Ok(fails)
}

fn saturation(fixtures: &[(String, Graph, AutGroup)]) -> Outcome {
    let mut fails = Vec::new();
    for (name, g, aut) in fixtures {
        let s = saturation_check(g, aut, 200, SATURATION_SEED)?;
        if !s.failures.is_empty() {
            fails.push(format!(
                "{name}: {} sampled colourings not distinguishing",
                s.failures.len()
            ));
        }
        match &s.below {
            Some((_, false)) => {}
            Some((c, true)) => fails.push(format!(
                "{name}: orbit colouring {:?} is distinguishing",
                c.colors()
            )),
            None => fails.push(format!("{name}: no orbit colouring built")),
        }
    }
    Ok(fails)
}

fn main() -> ExitCode {
    let symmetric: Vec<(String, Graph, AutGroup)> = fixtures()
        .into_iter()
        .map(|(name, g)| {
            let aut = automorphisms(&g).expect("fixture group fits");
            assert!(!aut.is_trivial(), "{name} is asymmetric");
            (name, g, aut)
        })
        .collect();

    let criteria: Vec<Criterion<'_>> = vec![
        ("grid formula vs enumeration", Box::new(grid_formula)),
        (
            "square grid formula vs enumeration",
            Box::new(square_grid_formula),
        ),
        ("path and cycle thresholds", Box::new(path_cycle_thresholds)),
        (
            "threshold of products of distinct factors",
            Box::new(distinct_products),
        ),
        ("threshold of powers", Box::new(powers)),
        (
            "layer-wise distinguishing test",
            Box::new(layerwise_checker),
        ),
        (
            "exact-colour counts closed form",
            Box::new(exact_count_closed_form),
        ),
        ("distinguishing numbers", Box::new(distinguishing_numbers)),
        ("motion lower bound", Box::new(|| motion_bound(&symmetric))),
        ("threshold saturation", Box::new(|| saturation(&symmetric))),
    ];

    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(fails) if fails.is_empty() => println!("PASS {:>2} {name} ({secs:.2}s)", i + 1),
            Ok(fails) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {}", i + 1, fails.join("; "));
            }
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
