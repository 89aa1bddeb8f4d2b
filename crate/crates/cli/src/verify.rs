//! `symbreak verify`: closed forms against independent computations.
//!
//! Each check compares a formula with a value obtained another way (counted
//! colourings, the automorphism group, a direct distinguishing test). The
//! first mismatch aborts the run and becomes the error message.

use std::fmt::Display;
use std::io::Write;

use serde_json::json;
use symbreak_core::automorphism::automorphisms;
use symbreak_core::indices::{
    is_distinguishing, motion_lower_bound, phi, phi_from_varphi, phi_grid, phi_square_grid,
    phi_table, saturation_check, theta_cycle, theta_path, threshold, varphi_closed,
    varphi_from_phi, CountingBackend, CountingProblem,
};
use symbreak_core::product::{
    is_distinguishing_product, theta_for, theta_general, theta_power, theta_product_distinct,
    CheckMode, Factorization,
};
use symbreak_core::{cartesian_product, Budget, Coloring, FamilySpec, Graph};

use crate::args::{KRange, VerifyTarget};
use crate::error::{CliError, CliResult};
use crate::output::{self, Format};

pub struct Options<'a> {
    pub m: KRange,
    pub n: KRange,
    pub k: KRange,
    pub backend: &'a dyn CountingBackend,
    pub budget: Budget,
    pub seed: u64,
    pub samples: usize,
}

struct Checker<'w> {
    out: &'w mut dyn Write,
    format: Format,
    results: Vec<[String; 3]>,
}

impl Checker<'_> {
    fn expect(
        &mut self,
        label: String,
        formula: impl Display,
        oracle: impl Display,
    ) -> CliResult<()> {
        let (formula, oracle) = (formula.to_string(), oracle.to_string());
        if formula != oracle {
            return Err(CliError::Verify(format!(
                "{label}: closed form {formula}, oracle {oracle}"
            )));
        }
        if self.format == Format::Human {
            writeln!(self.out, "ok  {label} = {formula}")?;
        }
        self.results.push([label, formula, oracle]);
        Ok(())
    }

    fn holds(&mut self, label: String, ok: bool) -> CliResult<()> {
        self.expect(label, ok, true)
    }

    fn finish(self, target: VerifyTarget) -> CliResult<()> {
        match self.format {
            Format::Human => writeln!(self.out, "{} checks passed", self.results.len())?,
            Format::Json => output::json(
                self.out,
                &json!({
                    "target": format!("{target:?}").to_lowercase(),
                    "passed": true,
                    "checks": self.results.iter().map(|[l, f, o]| json!({
                        "check": l, "formula": f, "oracle": o,
                    })).collect::<Vec<_>>(),
                }),
            )?,
            Format::Csv => output::csv(
                self.out,
                &["check", "formula", "oracle"].map(String::from),
                &self.results.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
            )?,
        }
        Ok(())
    }
}

pub fn run(
    out: &mut dyn Write,
    format: Format,
    target: VerifyTarget,
    opts: &Options<'_>,
) -> CliResult<()> {
    let mut c = Checker {
        out,
        format,
        results: Vec::new(),
    };
    match target {
        VerifyTarget::Grids => grids(&mut c, opts)?,
        VerifyTarget::Thresholds => thresholds(&mut c, opts)?,
        VerifyTarget::Products => products(&mut c)?,
        VerifyTarget::All => {
            grids(&mut c, opts)?;
            thresholds(&mut c, opts)?;
            products(&mut c)?;
        }
    }
    c.finish(target)
}

fn family(spec: FamilySpec) -> CliResult<Graph> {
    Ok(spec.build()?)
}

fn grids(c: &mut Checker<'_>, opts: &Options<'_>) -> CliResult<()> {
    if opts.m.lo < 2 || opts.n.lo < 2 {
        return Err(CliError::Usage("grid sides start at 2".into()));
    }
    for m in opts.m.iter() {
        for n in opts.n.iter() {
            // P_2 □ P_2 is C_4, outside both grid formulas.
            if m == n && m < 3 {
                continue;
            }
            let p = cartesian_product(&[
                family(FamilySpec::Path(m as usize))?,
                family(FamilySpec::Path(n as usize))?,
            ])?;
            let aut = automorphisms(p.graph())?;
            let problem = CountingProblem::new(p.graph(), &aut, opts.budget);
            for k in opts.k.iter() {
                let closed = if m == n {
                    phi_square_grid(n, k)?
                } else {
                    phi_grid(m, n, k)?
                };
                let counted = phi(&problem, opts.backend, k)?;
                c.expect(format!("Phi_{k}(P_{m} x P_{n})"), closed, counted)?;
            }
        }
    }
    Ok(())
}

fn thresholds(c: &mut Checker<'_>, opts: &Options<'_>) -> CliResult<()> {
    let mut fixtures = Vec::new();
    for m in 2..=10 {
        let g = family(FamilySpec::Path(m))?;
        let aut = automorphisms(&g)?;
        c.expect(
            format!("theta(P_{m})"),
            theta_path(m as u32)?,
            threshold(&aut),
        )?;
        fixtures.push((format!("P_{m}"), g, aut));
    }
    for n in 3..=10 {
        let g = family(FamilySpec::Cycle(n))?;
        let aut = automorphisms(&g)?;
        c.expect(
            format!("theta(C_{n})"),
            theta_cycle(n as u32)?,
            threshold(&aut),
        )?;
        fixtures.push((format!("C_{n}"), g, aut));
    }
    for spec in [
        FamilySpec::Complete(4),
        FamilySpec::CompleteBipartite(3, 3),
        FamilySpec::Hypercube(3),
    ] {
        let g = family(spec)?;
        let aut = automorphisms(&g)?;
        fixtures.push((spec.to_string(), g, aut));
    }

    for (name, g, aut) in &fixtures {
        let theta = threshold(aut);
        let bound = motion_lower_bound(g, aut)?;
        c.holds(
            format!("theta({name}) = {theta} >= n - m + 2 = {bound}"),
            theta >= bound,
        )?;
        let s = saturation_check(g, aut, opts.samples, opts.seed)?;
        c.holds(
            format!(
                "saturation({name}): {} samples at {theta} colours",
                s.samples
            ),
            s.holds(),
        )?;
    }

    for spec in [
        FamilySpec::Path(3),
        FamilySpec::Path(4),
        FamilySpec::Cycle(4),
        FamilySpec::Cycle(5),
    ] {
        let g = family(spec)?;
        let aut = automorphisms(&g)?;
        let n = g.order() as u32;
        let problem = CountingProblem::new(&g, &aut, opts.budget);
        let phis = phi_table(&problem, opts.backend, n)?;
        let varphis = varphi_from_phi(&phis, g.order())?;
        for k in threshold(&aut)..=n {
            c.expect(
                format!("varphi_{k}({spec})"),
                varphi_closed(&g, &aut, k)?,
                &varphis[k as usize],
            )?;
        }
        c.holds(
            format!("Phi <-> varphi round trip on {spec}"),
            phi_from_varphi(&varphis) == phis,
        )?;
    }
    Ok(())
}

fn products(c: &mut Checker<'_>) -> CliResult<()> {
    let path = |n| family(FamilySpec::Path(n));
    let k = |n| family(FamilySpec::Complete(n));
    let oracle = |factors: &[Graph]| -> CliResult<u32> {
        Ok(threshold(&automorphisms(
            cartesian_product(factors)?.graph(),
        )?))
    };

    for (name, factors) in [
        ("P_2 x P_3", vec![path(2)?, path(3)?]),
        ("P_2 x P_4", vec![path(2)?, path(4)?]),
        ("P_2 x C_3", vec![path(2)?, family(FamilySpec::Cycle(3))?]),
        ("P_4 x P_5", vec![path(4)?, path(5)?]),
    ] {
        let fact = Factorization::from_factors(&factors)?;
        c.expect(
            format!("theta({name})"),
            theta_product_distinct(&fact)?,
            oracle(&factors)?,
        )?;
    }
    for (name, base, t) in [
        ("K_2^2", k(2)?, 2),
        ("K_3^2", k(3)?, 2),
        ("K_2^3", k(2)?, 3),
    ] {
        let factors = vec![base.clone(); t];
        c.expect(
            format!("theta({name})"),
            theta_power(&base, t)?,
            oracle(&factors)?,
        )?;
    }
    let general = theta_general(&[(k(2)?, 2), (path(3)?, 1)])?;
    let factors = [k(2)?, k(2)?, path(3)?];
    c.expect(
        "theta(K_2^2 x P_3)".into(),
        general.value,
        oracle(&factors)?,
    )?;
    c.expect(
        "theta(K_2 x P_3 x K_2), factor order".into(),
        theta_for(&Factorization::from_factors(&[k(2)?, path(3)?, k(2)?])?)?.value,
        general.value,
    )?;

    // layer-wise test against the direct one on every 2-colouring of P_2 x P_3
    let fact = Factorization::from_factors(&[path(2)?, path(3)?])?;
    let g = fact.product().graph();
    let aut = automorphisms(g)?;
    let mut agree = true;
    for mask in 0u32..64 {
        let col = Coloring::new((0..6).map(|v| 1 + (mask >> v & 1)).collect(), 2)?;
        let direct = is_distinguishing(g, &aut, &col)?;
        for mode in [CheckMode::Full, CheckMode::AutF] {
            agree &= is_distinguishing_product(&fact, &col, mode)?.distinguishing == direct;
        }
    }
    c.holds(
        "layer-wise = direct on all 2-colourings of P_2 x P_3".into(),
        agree,
    )?;

    for (name, m, n, reds, expected) in [
        (
            "P_4 x P_5 red (2,2),(3,4)",
            4,
            5,
            &[[2, 2], [3, 4]][..],
            false,
        ),
        (
            "P_5 x P_6 red (2,2),(2,3),(2,4),(4,5)",
            5,
            6,
            &[[2, 2], [2, 3], [2, 4], [4, 5]][..],
            true,
        ),
        (
            "P_4 x P_5 red (2,4),(3,2),(3,3)",
            4,
            5,
            &[[2, 4], [3, 2], [3, 3]][..],
            true,
        ),
    ] {
        let fact = Factorization::from_factors(&[path(m)?, path(n)?])?;
        let p = fact.product();
        let mut colors = vec![1; p.graph().order()];
        for r in reds {
            colors[p.vertex(&[r[0] - 1, r[1] - 1])?] = 2;
        }
        let col = Coloring::new(colors, 2)?;
        let direct = is_distinguishing(p.graph(), &automorphisms(p.graph())?, &col)?;
        c.expect(format!("direct({name})"), expected, direct)?;
        for mode in [CheckMode::Full, CheckMode::AutF] {
            let layered = is_distinguishing_product(&fact, &col, mode)?.distinguishing;
            c.expect(format!("layer-wise {mode:?}({name})"), expected, layered)?;
        }
    }
    Ok(())
}
