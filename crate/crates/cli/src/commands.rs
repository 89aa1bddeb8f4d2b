use std::io::Write;

use serde_json::json;
use symbreak_core::automorphism::automorphisms;
use symbreak_core::indices::{
    distinguishing_number, first_preserving, is_distinguishing, phi_table, threshold,
    threshold_witness, varphi_closed, varphi_from_phi, BackendRegistry, CountingProblem,
};
use symbreak_core::product::{
    is_distinguishing_product, theta_for, theta_product_distinct, CheckMode, Factorization,
};
use symbreak_core::{Budget, Coloring, Error, IndexReport, ProductGraph};

use crate::args::{Cli, Command, GlobalOpts, KRange, Mode};
use crate::error::{CliError, CliResult};
use crate::output::{self, Format};
use crate::spec::{parse_graph_spec, ParsedGraph};
use crate::verify;

/// Executes one command, writing its report to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    if let Some(n) = cli.global.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        // A pool configured earlier in the same process is kept.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let ctx = Ctx::new(&cli.global);
    match cli.command {
        Command::Aut { graph, elements } => ctx.aut(out, &graph, elements),
        Command::Indices { graph, k, backend } => ctx.indices(out, &graph, k, &backend),
        Command::Dnum { graph } => ctx.dnum(out, &graph),
        Command::Theta { graph } => ctx.theta(out, &graph),
        Command::Phi { graph, k, backend } => ctx.counts(out, &graph, k, &backend, Count::Phi),
        Command::Varphi {
            graph,
            k,
            backend,
            closed,
        } => {
            let which = if closed {
                Count::VarphiClosed
            } else {
                Count::Varphi
            };
            ctx.counts(out, &graph, k, &backend, which)
        }
        Command::Check {
            graph,
            coloring,
            mode,
        } => ctx.check(out, &graph, &coloring, mode),
        Command::ProductTheta { graph, oracle } => ctx.product_theta(out, &graph, oracle),
        Command::Verify {
            target,
            m,
            n,
            k,
            backend,
            seed,
            samples,
        } => {
            let backends = BackendRegistry::default();
            let opts = verify::Options {
                m,
                n,
                k,
                backend: backends.get(&backend)?,
                budget: ctx.budget,
                seed,
                samples,
            };
            verify::run(out, ctx.format, target, &opts)
        }
    }
}

#[derive(Clone, Copy)]
enum Count {
    Phi,
    Varphi,
    VarphiClosed,
}

struct Ctx {
    format: Format,
    budget: Budget,
    backends: BackendRegistry,
}

impl Ctx {
    fn new(opts: &GlobalOpts) -> Self {
        Self {
            format: Format::from_opts(opts),
            budget: opts.budget.map_or_else(Budget::default, Budget::new),
            backends: BackendRegistry::default(),
        }
    }

    /// Single values print bare in human mode; everything else is a table.
    fn scalar(&self, out: &mut dyn Write, graph: &str, key: &str, value: String) -> CliResult<()> {
        match self.format {
            Format::Human => writeln!(out, "{value}")?,
            Format::Json => output::json(out, &json!({ "graph": graph, key: value }))?,
            Format::Csv => output::csv(
                out,
                &["graph".into(), key.into()],
                &[vec![graph.into(), value]],
            )?,
        }
        Ok(())
    }

    fn aut(&self, out: &mut dyn Write, spec: &str, elements: bool) -> CliResult<()> {
        let g = parse_graph_spec(spec)?;
        let aut = automorphisms(g.graph())?;
        let motion = aut.motion().ok();
        let max_cycles = aut.max_cycle_count();
        let orbits = aut.orbits().len();
        match self.format {
            Format::Json => {
                let mut v = aut.to_json(elements);
                v["graph"] = json!(spec);
                v["orbits"] = json!(orbits);
                v["motion"] = json!(motion);
                v["max_cycle_count"] = json!(max_cycles);
                output::json(out, &v)?;
            }
            Format::Csv => output::csv(
                out,
                &[
                    "graph",
                    "degree",
                    "order",
                    "orbits",
                    "motion",
                    "max_cycle_count",
                ]
                .map(String::from),
                &[vec![
                    spec.to_string(),
                    aut.degree().to_string(),
                    aut.order().to_string(),
                    orbits.to_string(),
                    dash(motion),
                    dash(max_cycles),
                ]],
            )?,
            Format::Human => {
                writeln!(out, "order       {}", aut.order())?;
                writeln!(out, "degree      {}", aut.degree())?;
                writeln!(out, "orbits      {orbits}")?;
                writeln!(out, "motion      {}", dash(motion))?;
                writeln!(out, "max cycles  {}", dash(max_cycles))?;
                for (i, gen) in aut.generators().iter().enumerate() {
                    let label = if i == 0 { "generators" } else { "" };
                    writeln!(out, "{label:<10}  {gen}")?;
                }
                if elements {
                    for a in aut.elements() {
                        writeln!(out, "  {a}")?;
                    }
                }
            }
        }
        Ok(())
    }

    fn indices(&self, out: &mut dyn Write, spec: &str, k: KRange, backend: &str) -> CliResult<()> {
        let g = parse_graph_spec(spec)?;
        let ks: Vec<u32> = k.iter().collect();
        let report = IndexReport::compute(
            spec,
            g.graph(),
            &ks,
            self.backends.get(backend)?,
            self.budget,
        )?;
        match self.format {
            Format::Json => output::json(out, &report.to_json()),
            Format::Csv => output::csv(out, &report.header(), &[report.row()]),
            Format::Human => output::table(out, &report.header(), &[report.row()]),
        }
    }

    fn dnum(&self, out: &mut dyn Write, spec: &str) -> CliResult<()> {
        let g = parse_graph_spec(spec)?;
        let aut = automorphisms(g.graph())?;
        let d = distinguishing_number(g.graph(), &aut, self.budget)?;
        if self.format == Format::Json {
            return output::json(
                out,
                &json!({
                    "graph": spec,
                    "D": d.number,
                    "certificate": d.certificate.colors(),
                    "explored": d.explored,
                }),
            );
        }
        self.scalar(out, spec, "D", d.number.to_string())
    }

    fn theta(&self, out: &mut dyn Write, spec: &str) -> CliResult<()> {
        let g = parse_graph_spec(spec)?;
        let aut = automorphisms(g.graph())?;
        let theta = threshold(&aut);
        if self.format == Format::Json {
            return output::json(
                out,
                &json!({
                    "graph": spec,
                    "theta": theta,
                    "witness": threshold_witness(&aut).map(|a| a.to_string()),
                }),
            );
        }
        self.scalar(out, spec, "theta", theta.to_string())
    }

    fn counts(
        &self,
        out: &mut dyn Write,
        spec: &str,
        k: KRange,
        backend: &str,
        which: Count,
    ) -> CliResult<()> {
        let g = parse_graph_spec(spec)?;
        let g = g.graph();
        let aut = automorphisms(g)?;
        let (key, values) = match which {
            Count::VarphiClosed => {
                let vs = k
                    .iter()
                    .map(|i| varphi_closed(g, &aut, i))
                    .collect::<Result<Vec<_>, _>>()?;
                ("varphi", vs)
            }
            Count::Phi | Count::Varphi => {
                let problem = CountingProblem::new(g, &aut, self.budget);
                let phis = phi_table(&problem, self.backends.get(backend)?, k.hi)?;
                let table = match which {
                    Count::Phi => phis,
                    _ => varphi_from_phi(&phis, g.order())?,
                };
                let key = if matches!(which, Count::Phi) {
                    "Phi"
                } else {
                    "varphi"
                };
                (key, table[k.lo as usize..].to_vec())
            }
        };
        if k.is_single() && self.format != Format::Json {
            return self.scalar(out, spec, &format!("{key}_{}", k.lo), values[0].to_string());
        }
        let rows: Vec<Vec<String>> = k
            .iter()
            .zip(&values)
            .map(|(i, v)| vec![i.to_string(), v.to_string()])
            .collect();
        match self.format {
            Format::Json => {
                let table: serde_json::Map<_, _> =
                    rows.iter().map(|r| (r[0].clone(), json!(r[1]))).collect();
                output::json(out, &json!({ "graph": spec, key: table }))
            }
            Format::Csv => output::csv(out, &["k".into(), key.into()], &rows),
            Format::Human => output::table(out, &["k".into(), key.into()], &rows),
        }
    }

    fn check(&self, out: &mut dyn Write, spec: &str, text: &str, mode: Mode) -> CliResult<()> {
        let g = parse_graph_spec(spec)?;
        let coloring = parse_coloring(text, &g)?;
        if coloring.len() != g.graph().order() {
            return Err(CliError::Usage(format!(
                "colouring has {} entries but the graph has {} vertices",
                coloring.len(),
                g.graph().order()
            )));
        }

        // Direct test against the full automorphism group, when it fits.
        let direct = match automorphisms(g.graph()) {
            Ok(aut) => Some((
                is_distinguishing(g.graph(), &aut, &coloring)?,
                first_preserving(&aut, &coloring).map(|a| a.to_string()),
            )),
            Err(Error::Capacity(_)) => None,
            Err(e) => return Err(e.into()),
        };
        let layered = match g.product() {
            Some(p) if p.factor_count() >= 2 => {
                let mode = match mode {
                    Mode::Full => CheckMode::Full,
                    Mode::AutF => CheckMode::AutF,
                };
                Some(is_distinguishing_product(
                    &Factorization::new(p.clone()),
                    &coloring,
                    mode,
                )?)
            }
            _ => None,
        };
        let verdict = match (&direct, &layered) {
            (Some((d, _)), Some(l)) if *d != l.distinguishing => {
                return Err(Error::Invariant(format!(
                    "direct test says {d}, layer-wise test says {}",
                    l.distinguishing
                ))
                .into())
            }
            (Some((d, _)), _) => *d,
            (None, Some(l)) => l.distinguishing,
            (None, None) => unreachable!("graphs without a product structure fit the search bound"),
        };
        let automorphism = direct.as_ref().and_then(|(_, a)| a.clone());
        let witness = layered.as_ref().and_then(|l| l.witness.as_ref());

        match self.format {
            Format::Json => output::json(
                out,
                &json!({
                    "graph": spec,
                    "distinguishing": verdict,
                    "preserving_automorphism": automorphism,
                    "witness": witness.map(|w| w.to_json()),
                }),
            )?,
            Format::Csv => output::csv(
                out,
                &["graph".into(), "distinguishing".into()],
                &[vec![spec.into(), verdict.to_string()]],
            )?,
            Format::Human => {
                let word = if verdict {
                    "distinguishing"
                } else {
                    "not distinguishing"
                };
                writeln!(out, "{word}")?;
                if let Some(a) = automorphism {
                    writeln!(out, "preserved by {a}")?;
                }
                if let Some(w) = witness {
                    writeln!(out, "witness {}", w.to_json())?;
                }
            }
        }
        Ok(())
    }

    fn product_theta(&self, out: &mut dyn Write, spec: &str, oracle: bool) -> CliResult<()> {
        let g = parse_graph_spec(spec)?;
        let p = g.product().ok_or_else(|| {
            CliError::Usage(format!(
                "`{spec}` is not a product; separate factors with `x`"
            ))
        })?;
        let fact = Factorization::new(p.clone());
        let (formula, value, note) = if fact.pairwise_non_isomorphic() {
            ("distinct", theta_product_distinct(&fact)?, None)
        } else {
            let r = theta_for(&fact)?;
            let shape = if fact.multiplicities().len() == 1 {
                "power"
            } else {
                "general"
            };
            let note = (shape == "general").then_some(r.note);
            (shape, r.value, note)
        };
        let oracle = if oracle {
            Some(threshold(&automorphisms(p.graph())?))
        } else {
            None
        };
        match self.format {
            Format::Json => output::json(
                out,
                &json!({
                    "graph": spec,
                    "theta": value,
                    "formula": formula,
                    "multiplicities": multiplicities(&fact),
                    "note": note,
                    "oracle": oracle,
                }),
            )?,
            Format::Csv => output::csv(
                out,
                &["graph", "theta", "formula", "oracle"].map(String::from),
                &[vec![
                    spec.into(),
                    value.to_string(),
                    formula.into(),
                    dash(oracle),
                ]],
            )?,
            Format::Human => {
                writeln!(out, "{value}")?;
                writeln!(out, "formula: {formula}")?;
                if let Some(n) = note {
                    writeln!(out, "note: {n}")?;
                }
                if let Some(o) = oracle {
                    writeln!(out, "oracle: {o}")?;
                }
            }
        }
        if let Some(o) = oracle {
            if u64::from(o) != value {
                return Err(CliError::Verify(format!(
                    "closed form gives {value} but the automorphism group gives {o}"
                )));
            }
        }
        Ok(())
    }
}

fn multiplicities(fact: &Factorization) -> Vec<serde_json::Value> {
    fact.multiplicities()
        .iter()
        .map(|(g, t)| json!({ "order": g.order(), "edges": g.size(), "exponent": t }))
        .collect()
}

fn dash<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

/// `1,2,1,...` in vertex order, or `red=(i,j),(k,l)` with 1-based product
/// coordinates.
pub(crate) fn parse_coloring(text: &str, g: &ParsedGraph) -> CliResult<Coloring> {
    let text = text.trim();
    match text.strip_prefix("red=") {
        Some(cells) => {
            let p = g
                .product()
                .ok_or_else(|| CliError::Usage("`red=` coordinates need a product graph".into()))?;
            red_cells(p, cells)
        }
        None => {
            let colors = text
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| CliError::Usage(format!("`{t}` is not a colour")))
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Coloring::from_colors(colors)?)
        }
    }
}

fn red_cells(p: &ProductGraph, cells: &str) -> CliResult<Coloring> {
    let mut colors = vec![1; p.graph().order()];
    let cells = cells.trim();
    if !cells.is_empty() {
        let inner = cells
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| CliError::Usage(format!("expected `(i,j),...`, got `{cells}`")))?;
        for cell in inner.split(')') {
            let cell = cell.trim_start_matches(',').trim().trim_start_matches('(');
            let coords = cell
                .split(',')
                .map(|t| match t.trim().parse::<usize>() {
                    Ok(c) if c >= 1 => Ok(c - 1),
                    _ => Err(CliError::Usage(format!(
                        "`{t}` is not a 1-based coordinate"
                    ))),
                })
                .collect::<CliResult<Vec<_>>>()?;
            if coords.len() != p.factor_count() {
                return Err(CliError::Usage(format!(
                    "cell ({cell}) has {} coordinates for {} factors",
                    coords.len(),
                    p.factor_count()
                )));
            }
            colors[p.vertex(&coords)?] = 2;
        }
    }
    Ok(Coloring::new(colors, 2)?)
}
