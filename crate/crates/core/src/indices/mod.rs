//! Symmetry-breaking indices of a single graph.
//!
//! All counts are exact [`BigUint`]s. `Φ_k(G)` is `N_k / |Aut(G)|`, where
//! `N_k` comes from one of the [`counting`] backends; `φ_k(G)` follows from
//! the binomial recursion `Φ_k = Σ_i C(k, i) φ_i`.

pub mod counting;
pub mod formulas;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::automorphism::{automorphisms, AutGroup, Permutation};
use crate::error::{capacity, domain, input, Error, Result};
use crate::graph::Graph;

pub use counting::{
    count_brute, count_moebius, Auto, BackendRegistry, BruteForce, Budget, CountingBackend,
    CountingProblem, Moebius,
};
pub use formulas::{
    binomial, factorial, phi_complete, phi_grid, phi_path, phi_square_grid, stirling2, theta_cycle,
    theta_path,
};

/// Seed used by [`saturation_check`] unless the caller picks another.
pub const SATURATION_SEED: u64 = 0x5eed_2021;

/// Vertex colouring with colours `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<u32>,
    k: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, k: u32) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c > k) {
            return input(format!("colour {c} outside the palette 1..={k}"));
        }
        Ok(Self { colors, k })
    }

    /// Palette size taken as the largest colour used.
    pub fn from_colors(colors: Vec<u32>) -> Result<Self> {
        let k = colors.iter().copied().max().unwrap_or(1);
        Self::new(colors, k)
    }

    pub fn constant(n: usize) -> Self {
        Self {
            colors: vec![1; n],
            k: 1,
        }
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn palette(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    #[inline]
    pub fn get(&self, v: usize) -> u32 {
        self.colors[v]
    }

    /// Number of distinct colours actually used.
    pub fn used(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    pub fn is_preserved_by(&self, a: &Permutation) -> bool {
        (0..self.colors.len()).all(|v| self.colors[v] == self.colors[a.apply(v)])
    }
}

/// True iff no non-identity element of `aut` preserves `c`.
pub fn is_distinguishing(g: &Graph, aut: &AutGroup, c: &Coloring) -> Result<bool> {
    if c.len() != g.order() || aut.degree() != g.order() {
        return input(format!(
            "colouring has {} entries for a graph on {} vertices",
            c.len(),
            g.order()
        ));
    }
    Ok(first_preserving(aut, c).is_none())
}

/// The first non-identity automorphism that preserves `c`, if any.
pub fn first_preserving<'a>(aut: &'a AutGroup, c: &Coloring) -> Option<&'a Permutation> {
    aut.non_identity().find(|a| c.is_preserved_by(a))
}

/// Result of the distinguishing-number search.
#[derive(Debug, Clone)]
pub struct Distinguishing {
    pub number: u32,
    /// A distinguishing colouring using exactly `number` colours.
    pub certificate: Coloring,
    /// Complete colourings examined.
    pub explored: u64,
}

/// `D(G)`: the least palette admitting a distinguishing colouring.
///
/// Palettes are tried in increasing size. For a palette of size `d` the
/// search walks restricted growth strings with exactly `d` colours, which
/// enumerates colour-class partitions rather than raw colourings (renaming
/// colours never changes whether a colouring is distinguishing).
pub fn distinguishing_number(g: &Graph, aut: &AutGroup, budget: Budget) -> Result<Distinguishing> {
    let n = g.order();
    if aut.degree() != n {
        return input("automorphism group degree does not match the graph");
    }
    if aut.is_trivial() {
        return Ok(Distinguishing {
            number: 1,
            certificate: Coloring::constant(n),
            explored: 1,
        });
    }
    let moved: Vec<Vec<(usize, usize)>> = aut
        .non_identity()
        .map(|a| {
            (0..n)
                .filter(|&v| a.apply(v) != v)
                .map(|v| (v, a.apply(v)))
                .collect()
        })
        .collect();

    let mut explored = 0u64;
    for d in 2..=n {
        let mut colors = vec![0u32; n];
        let mut search = RgsSearch {
            n,
            d: d as u32,
            moved: &moved,
            colors: &mut colors,
            explored: &mut explored,
            budget,
        };
        if search.walk(0, 0)? {
            let certificate = Coloring::new(colors.iter().map(|c| c + 1).collect(), d as u32)?;
            return Ok(Distinguishing {
                number: d as u32,
                certificate,
                explored,
            });
        }
    }
    Err(Error::Invariant(
        "no distinguishing colouring found even with all-distinct colours".into(),
    ))
}

struct RgsSearch<'a> {
    n: usize,
    d: u32,
    moved: &'a [Vec<(usize, usize)>],
    colors: &'a mut [u32],
    explored: &'a mut u64,
    budget: Budget,
}

impl RgsSearch<'_> {
    fn walk(&mut self, pos: usize, used: u32) -> Result<bool> {
        if pos == self.n {
            if used < self.d {
                return Ok(false);
            }
            *self.explored += 1;
            if *self.explored > self.budget.max_colorings {
                return capacity(format!(
                    "distinguishing-number search exceeded the budget of {} colourings",
                    self.budget.max_colorings
                ));
            }
            let colors = &*self.colors;
            let fixed = self
                .moved
                .iter()
                .any(|pairs| pairs.iter().all(|&(u, v)| colors[u] == colors[v]));
            return Ok(!fixed);
        }
        // not enough vertices left to introduce the missing colours
        if (self.n - pos) < (self.d - used) as usize {
            return Ok(false);
        }
        for c in 0..(used + 1).min(self.d) {
            self.colors[pos] = c;
            if self.walk(pos + 1, used.max(c + 1))? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// `θ(G) = max{|α| : α ≠ id} + 1`, and `1` for asymmetric graphs.
pub fn threshold(aut: &AutGroup) -> u32 {
    aut.max_cycle_count().map_or(1, |m| m as u32 + 1)
}

/// A non-identity automorphism with the largest number of cycles.
pub fn threshold_witness(aut: &AutGroup) -> Option<&Permutation> {
    aut.non_identity()
        .max_by(|a, b| a.cycle_count().cmp(&b.cycle_count()).then_with(|| b.cmp(a)))
}

/// `|G| − m(G) + 2`, a lower bound on `θ(G)`.
pub fn motion_lower_bound(g: &Graph, aut: &AutGroup) -> Result<u32> {
    let m = aut.motion()?;
    Ok((g.order() - m + 2) as u32)
}

/// `Φ_k(G) = N_k / |Aut(G)|`.
pub fn phi(
    problem: &CountingProblem<'_>,
    backend: &dyn CountingBackend,
    k: u32,
) -> Result<BigUint> {
    let n_k = backend.count(problem, k)?;
    let order = BigUint::from(problem.aut.order());
    let (q, r) = n_k.div_rem(&order);
    if !r.is_zero() {
        return Err(Error::Invariant(format!(
            "N_{k} = {n_k} is not divisible by |Aut| = {order} (backend {})",
            backend.name()
        )));
    }
    Ok(q)
}

/// `Φ_0 .. Φ_k` in one pass.
pub fn phi_table(
    problem: &CountingProblem<'_>,
    backend: &dyn CountingBackend,
    k: u32,
) -> Result<Vec<BigUint>> {
    (0..=k)
        .map(|i| {
            if i == 0 && problem.graph.order() > 0 {
                Ok(BigUint::zero())
            } else {
                phi(problem, backend, i)
            }
        })
        .collect()
}

/// Solves `Φ_k = Σ_{i ≤ k} C(k, i) φ_i` for `φ_0 .. φ_k`, given `Φ_0 .. Φ_k`.
///
/// `n` is the graph order; `φ_k` is forced to zero for `k > n` and a
/// non-zero value there is reported as an invariant violation.
pub fn varphi_from_phi(phis: &[BigUint], n: usize) -> Result<Vec<BigUint>> {
    let mut out: Vec<BigUint> = Vec::with_capacity(phis.len());
    for (k, p) in phis.iter().enumerate() {
        let mut v = BigInt::from(p.clone());
        for (i, prev) in out.iter().enumerate() {
            v -= BigInt::from(binomial(k as u32, i as u32) * prev);
        }
        if v.is_negative() || (k > n && !v.is_zero()) {
            return Err(Error::Invariant(format!(
                "φ_{k} came out as {v}; the Φ table is inconsistent"
            )));
        }
        out.push(v.magnitude().clone());
    }
    Ok(out)
}

/// Inverse of [`varphi_from_phi`].
pub fn phi_from_varphi(varphis: &[BigUint]) -> Vec<BigUint> {
    (0..varphis.len())
        .map(|k| {
            varphis[..=k]
                .iter()
                .enumerate()
                .map(|(i, v)| binomial(k as u32, i as u32) * v)
                .sum()
        })
        .collect()
}

/// `φ_k(G)` via the recursion over `Φ_1 .. Φ_k`.
pub fn varphi(
    problem: &CountingProblem<'_>,
    backend: &dyn CountingBackend,
    k: u32,
) -> Result<BigUint> {
    let phis = phi_table(problem, backend, k)?;
    let mut all = varphi_from_phi(&phis, problem.graph.order())?;
    Ok(all.swap_remove(k as usize))
}

/// `φ_k(G) = k! S(n, k) / |Aut(G)|`, valid once `k ≥ θ(G)`.
pub fn varphi_closed(g: &Graph, aut: &AutGroup, k: u32) -> Result<BigUint> {
    let theta = threshold(aut);
    if k < theta {
        return domain(format!(
            "closed form for φ_k needs k ≥ θ(G) = {theta}, got k = {k}"
        ));
    }
    let num = factorial(k) * stirling2(g.order() as u32, k);
    let order = BigUint::from(aut.order());
    let (q, r) = num.div_rem(&order);
    if !r.is_zero() {
        return Err(Error::Invariant(format!(
            "k! S(n, k) = {num} is not divisible by |Aut| = {order}"
        )));
    }
    Ok(q)
}

/// Colours every cycle of `a` with its own colour. The result uses exactly
/// `|a|` colours and is preserved by `a`.
pub fn orbit_coloring(a: &Permutation) -> Coloring {
    let mut colors = vec![0; a.degree()];
    let cycles = a.cycles();
    for (i, cycle) in cycles.iter().enumerate() {
        for &v in cycle {
            colors[v] = i as u32 + 1;
        }
    }
    Coloring {
        colors,
        k: cycles.len() as u32,
    }
}

/// A uniformly random assignment of `k` colours to `n` vertices that uses
/// every colour at least once. Needs `1 ≤ k ≤ n`.
pub fn random_surjective_coloring(rng: &mut impl Rng, n: usize, k: u32) -> Result<Coloring> {
    if k == 0 || k as usize > n {
        return input(format!("cannot use exactly {k} colours on {n} vertices"));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut colors = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        colors[v] = if i < k as usize {
            i as u32 + 1
        } else {
            rng.gen_range(1..=k)
        };
    }
    Coloring::new(colors, k)
}

/// Empirical check that `θ(G)` is sharp.
#[derive(Debug, Clone)]
pub struct Saturation {
    pub theta: u32,
    pub samples: usize,
    /// Sampled `θ`-colourings that failed to be distinguishing.
    pub failures: Vec<Coloring>,
    /// A `(θ − 1)`-colouring preserved by a maximum-cycle automorphism, when
    /// `θ ≥ 2`, and whether it turned out distinguishing (it must not).
    pub below: Option<(Coloring, bool)>,
}

impl Saturation {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.below.as_ref().is_none_or(|(_, d)| !d)
    }
}

/// Samples `samples` colourings with exactly `θ(G)` colours and checks they
/// are all distinguishing, then builds a `(θ − 1)`-colouring that is not.
pub fn saturation_check(
    g: &Graph,
    aut: &AutGroup,
    samples: usize,
    seed: u64,
) -> Result<Saturation> {
    let theta = threshold(aut);
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    if theta as usize <= n {
        for _ in 0..samples {
            let c = random_surjective_coloring(&mut rng, n, theta)?;
            if !is_distinguishing(g, aut, &c)? {
                failures.push(c);
            }
        }
    }
    let below = match threshold_witness(aut) {
        Some(a) => {
            let c = orbit_coloring(a);
            let d = is_distinguishing(g, aut, &c)?;
            Some((c, d))
        }
        None => None,
    };
    Ok(Saturation {
        theta,
        samples,
        failures,
        below,
    })
}

/// Every index of one graph.
#[derive(Debug, Clone)]
pub struct IndexReport {
    pub graph: String,
    pub order: usize,
    pub aut_order: usize,
    pub distinguishing_number: u32,
    pub threshold: u32,
    pub motion: Option<usize>,
    pub phi: BTreeMap<u32, BigUint>,
    pub varphi: BTreeMap<u32, BigUint>,
}

impl IndexReport {
    /// Computes the report for the palette sizes in `ks`.
    pub fn compute(
        name: impl Into<String>,
        g: &Graph,
        ks: &[u32],
        backend: &dyn CountingBackend,
        budget: Budget,
    ) -> Result<Self> {
        let aut = automorphisms(g)?;
        let d = distinguishing_number(g, &aut, budget)?;
        let problem = CountingProblem::new(g, &aut, budget);
        let kmax = ks.iter().copied().max().unwrap_or(0);
        let phis = phi_table(&problem, backend, kmax)?;
        let varphis = varphi_from_phi(&phis, g.order())?;
        Ok(Self {
            graph: name.into(),
            order: g.order(),
            aut_order: aut.order(),
            distinguishing_number: d.number,
            threshold: threshold(&aut),
            motion: aut.motion().ok(),
            phi: ks.iter().map(|&k| (k, phis[k as usize].clone())).collect(),
            varphi: ks
                .iter()
                .map(|&k| (k, varphis[k as usize].clone()))
                .collect(),
        })
    }

    /// Exact integers are emitted as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let table = |m: &BTreeMap<u32, BigUint>| -> serde_json::Map<String, serde_json::Value> {
            m.iter()
                .map(|(k, v)| (k.to_string(), json!(v.to_string())))
                .collect()
        };
        json!({
            "graph": self.graph,
            "vertices": self.order,
            "aut_order": self.aut_order,
            "D": self.distinguishing_number,
            "theta": self.threshold,
            "motion": self.motion,
            "Phi": table(&self.phi),
            "varphi": table(&self.varphi),
        })
    }

    /// Column headers matching [`IndexReport::row`].
    pub fn header(&self) -> Vec<String> {
        let mut h: Vec<String> = ["graph", "|V|", "|Aut|", "D", "theta", "motion"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        for k in self.phi.keys() {
            h.push(format!("Phi_{k}"));
            h.push(format!("varphi_{k}"));
        }
        h
    }

    pub fn row(&self) -> Vec<String> {
        let mut r = vec![
            self.graph.clone(),
            self.order.to_string(),
            self.aut_order.to_string(),
            self.distinguishing_number.to_string(),
            self.threshold.to_string(),
            self.motion
                .map_or_else(|| "-".to_string(), |m| m.to_string()),
        ];
        for (k, p) in &self.phi {
            r.push(p.to_string());
            r.push(self.varphi[k].to_string());
        }
        r
    }
}
