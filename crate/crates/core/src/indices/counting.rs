//! Counting distinguishing colourings, `N_k(G)`: the number of maps
//! `V(G) → {1..k}` whose stabilizer in `Aut(G)` is trivial.
//!
//! Backends implement [`CountingBackend`] and are looked up by name in a
//! [`BackendRegistry`]. Two independent routes ship by default:
//!
//! * `brute`: enumerate every colouring and test it against every
//!   non-identity automorphism.
//! * `moebius`: Möbius inversion over the subgroup lattice,
//!   `N_k = Σ_H μ(1, H) k^{orbits(H)}`.
//!
//! `auto` picks `moebius` when the lattice fits and `brute` otherwise.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use rayon::prelude::*;

use crate::automorphism::{AutGroup, SubgroupLattice, MAX_LATTICE_ORDER};
use crate::error::{input, Error, Result};
use crate::graph::Graph;

/// Upper bound on the number of colourings an enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_colorings: u64,
}

impl Budget {
    pub const DEFAULT_MAX: u64 = 20_000_000;

    pub fn new(max_colorings: u64) -> Self {
        Self { max_colorings }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(Self::DEFAULT_MAX)
    }
}

/// One counting question, with the subgroup lattice computed lazily and
/// shared across every `k` asked of it.
pub struct CountingProblem<'a> {
    pub graph: &'a Graph,
    pub aut: &'a AutGroup,
    pub budget: Budget,
    lattice: OnceLock<Result<SubgroupLattice>>,
}

impl<'a> CountingProblem<'a> {
    pub fn new(graph: &'a Graph, aut: &'a AutGroup, budget: Budget) -> Self {
        Self {
            graph,
            aut,
            budget,
            lattice: OnceLock::new(),
        }
    }

    pub fn lattice(&self) -> Result<&SubgroupLattice> {
        self.lattice
            .get_or_init(|| SubgroupLattice::new(self.aut))
            .as_ref()
            .map_err(Clone::clone)
    }
}

pub trait CountingBackend: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// `N_k`: colourings with colours from `{1..k}` fixed by no non-identity
    /// automorphism.
    fn count(&self, problem: &CountingProblem<'_>, k: u32) -> Result<BigUint>;
}

impl fmt::Debug for dyn CountingBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CountingBackend({})", self.name())
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct BruteForce;

impl CountingBackend for BruteForce {
    fn name(&self) -> &'static str {
        "brute"
    }

    fn description(&self) -> &'static str {
        "enumerate all k^n colourings in parallel"
    }

    fn count(&self, problem: &CountingProblem<'_>, k: u32) -> Result<BigUint> {
        count_brute(problem.graph, problem.aut, k, problem.budget).map(BigUint::from)
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Moebius;

impl CountingBackend for Moebius {
    fn name(&self) -> &'static str {
        "moebius"
    }

    fn description(&self) -> &'static str {
        "Möbius inversion over the subgroup lattice"
    }

    fn count(&self, problem: &CountingProblem<'_>, k: u32) -> Result<BigUint> {
        count_moebius(problem.lattice()?, k)
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Auto;

impl CountingBackend for Auto {
    fn name(&self) -> &'static str {
        "auto"
    }

    fn description(&self) -> &'static str {
        "moebius when |Aut| fits the lattice bound, brute otherwise"
    }

    fn count(&self, problem: &CountingProblem<'_>, k: u32) -> Result<BigUint> {
        if problem.aut.order() <= MAX_LATTICE_ORDER {
            match Moebius.count(problem, k) {
                Err(Error::Capacity(_)) => {}
                other => return other,
            }
        }
        BruteForce.count(problem, k)
    }
}

/// Name-indexed set of counting backends.
pub struct BackendRegistry {
    backends: BTreeMap<&'static str, Box<dyn CountingBackend>>,
}

impl BackendRegistry {
    pub fn empty() -> Self {
        Self {
            backends: BTreeMap::new(),
        }
    }

    /// Replaces any backend already registered under the same name.
    pub fn register(&mut self, backend: Box<dyn CountingBackend>) {
        self.backends.insert(backend.name(), backend);
    }

    pub fn get(&self, name: &str) -> Result<&dyn CountingBackend> {
        self.backends.get(name).map(|b| b.as_ref()).ok_or_else(|| {
            Error::Input(format!(
                "unknown counting backend `{name}` (available: {})",
                self.names().collect::<Vec<_>>().join(", ")
            ))
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.backends.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn CountingBackend> {
        self.backends.values().map(|b| b.as_ref())
    }
}

impl Default for BackendRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(BruteForce));
        r.register(Box::new(Moebius));
        r.register(Box::new(Auto));
        r
    }
}

/// Exhaustive count of distinguishing colourings with colours `0..k`.
///
/// The index space `0..k^n` is cut into chunks that are scanned in
/// parallel; each chunk walks its colourings as a base-`k` odometer.
pub fn count_brute(g: &Graph, aut: &AutGroup, k: u32, budget: Budget) -> Result<u64> {
    let n = g.order();
    if aut.degree() != n {
        return input("automorphism group degree does not match the graph");
    }
    let total = u64::from(k)
        .checked_pow(n as u32)
        .filter(|&t| t <= budget.max_colorings)
        .ok_or_else(|| {
            Error::Capacity(format!(
                "{k}^{n} colourings exceed the enumeration budget of {}",
                budget.max_colorings
            ))
        })?;
    if aut.is_trivial() {
        return Ok(total);
    }
    if k <= 1 {
        return Ok(0);
    }

    // For each non-identity automorphism, the pairs (v, α(v)) with v moved.
    // A colouring is fixed by α iff it agrees on every such pair.
    let moved: Vec<Vec<(usize, usize)>> = aut
        .non_identity()
        .map(|a| {
            (0..n)
                .filter(|&v| a.apply(v) != v)
                .map(|v| (v, a.apply(v)))
                .collect()
        })
        .collect();

    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    let count = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut colors = vec![0u32; n];
            let mut x = start;
            for slot in colors.iter_mut() {
                *slot = (x % u64::from(k)) as u32;
                x /= u64::from(k);
            }
            let mut hits = 0u64;
            for _ in start..end {
                let fixed = moved
                    .iter()
                    .any(|pairs| pairs.iter().all(|&(u, v)| colors[u] == colors[v]));
                if !fixed {
                    hits += 1;
                }
                for slot in colors.iter_mut() {
                    *slot += 1;
                    if *slot < k {
                        break;
                    }
                    *slot = 0;
                }
            }
            hits
        })
        .sum();
    Ok(count)
}

/// `N_k = Σ_H μ(1, H) k^{orbits(H)}` over all subgroups `H`.
pub fn count_moebius(lattice: &SubgroupLattice, k: u32) -> Result<BigUint> {
    let k = BigInt::from(k);
    let sum: BigInt = lattice
        .subgroups()
        .iter()
        .filter(|h| h.moebius != 0)
        .map(|h| BigInt::from(h.moebius) * num_traits::pow(k.clone(), h.orbits))
        .sum();
    if sum.is_negative() {
        return Err(Error::Invariant(format!("Möbius sum is negative ({sum})")));
    }
    Ok(sum.magnitude().clone())
}
