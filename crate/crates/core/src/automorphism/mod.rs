//! Automorphism groups of small graphs.
//!
//! Groups are stored as their full element lists. Every downstream count
//! (thresholds, Burnside-type sums, the subgroup lattice) iterates over the
//! elements, and the orders handled here are at most a few hundred thousand.

mod lattice;
mod perm;

use std::collections::HashSet;

use serde_json::json;

use crate::error::{capacity, domain, input, Result};
use crate::graph::{enumerate_automorphisms, Graph};

pub use lattice::{Subgroup, SubgroupLattice, MAX_LATTICE_ORDER};
pub use perm::Permutation;

/// Largest graph accepted by [`automorphisms`].
pub const MAX_AUT_VERTICES: usize = 64;
/// Largest group order [`automorphisms`] will materialize.
pub const MAX_GROUP_ORDER: usize = 1 << 20;

/// A fully enumerated permutation group.
///
/// `elements` are sorted lexicographically by image array, so the identity
/// comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

/// Enumerates `Aut(g)`.
pub fn automorphisms(g: &Graph) -> Result<AutGroup> {
    automorphisms_colored(g, &vec![0; g.order()])
}

/// Enumerates the automorphisms of `g` that also preserve a vertex colouring.
pub fn automorphisms_colored(g: &Graph, colors: &[u32]) -> Result<AutGroup> {
    if g.order() > MAX_AUT_VERTICES {
        return capacity(format!(
            "automorphism enumeration is limited to {MAX_AUT_VERTICES} vertices, got {}",
            g.order()
        ));
    }
    if colors.len() != g.order() {
        return input("colouring length does not match the graph order");
    }
    let elements: Vec<Permutation> = enumerate_automorphisms(g, colors, MAX_GROUP_ORDER)?
        .into_iter()
        .map(Permutation::from_images_unchecked)
        .collect();
    Ok(AutGroup::from_sorted(g.order(), elements))
}

impl AutGroup {
    fn from_sorted(degree: usize, elements: Vec<Permutation>) -> Self {
        let generators = greedy_generators(degree, &elements);
        Self {
            degree,
            elements,
            generators,
        }
    }

    /// Builds a group from an explicit element list, checking that it is
    /// closed under composition and contains the identity.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Result<Self> {
        if elements.iter().any(|p| p.degree() != degree) {
            return input("element degree mismatch");
        }
        elements.sort_unstable();
        elements.dedup();
        if elements.len() > MAX_GROUP_ORDER {
            return capacity(format!("group order exceeds {MAX_GROUP_ORDER}"));
        }
        if !is_closed(&elements) {
            return input("element set is not closed under composition");
        }
        if elements.first().is_none_or(|p| !p.is_identity()) {
            return input("element set does not contain the identity");
        }
        Ok(Self::from_sorted(degree, elements))
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        Self::from_sorted(degree, vec![Permutation::identity(degree)])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn non_identity(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter().skip(1)
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    /// Every element maps edges of `g` to edges.
    pub fn preserves(&self, g: &Graph) -> bool {
        self.elements.iter().all(|a| {
            g.edges()
                .iter()
                .all(|&(u, v)| g.has_edge(a.apply(u), a.apply(v)))
        })
    }

    /// `m(G)`: least number of points moved by a non-identity element.
    pub fn motion(&self) -> Result<usize> {
        match self.non_identity().map(Permutation::motion).min() {
            Some(m) => Ok(m),
            None => domain("motion is undefined for the trivial group"),
        }
    }

    /// Largest cycle count over non-identity elements, if any.
    pub fn max_cycle_count(&self) -> Option<usize> {
        self.non_identity().map(Permutation::cycle_count).max()
    }

    /// Vertex orbits under the whole group.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn to_json(&self, include_elements: bool) -> serde_json::Value {
        let mut v = json!({
            "order": self.order(),
            "degree": self.degree,
            "generators": self.generators,
        });
        if include_elements {
            v["elements"] = json!(self.elements);
        }
        v
    }
}

fn is_closed(sorted: &[Permutation]) -> bool {
    sorted.iter().all(|a| {
        sorted
            .iter()
            .all(|b| sorted.binary_search(&a.compose(b)).is_ok())
    })
}

/// Walks the elements in order, keeping each one that is not already in the
/// subgroup generated by the ones kept so far.
fn greedy_generators(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
    for e in elements {
        if span.len() == elements.len() {
            break;
        }
        if span.contains(e) {
            continue;
        }
        gens.push(e.clone());
        let mut frontier: Vec<Permutation> = span.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = g.compose(&x);
                if span.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

pub(crate) fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in gens {
        for x in 0..degree {
            let (a, b) = (find(&mut parent, x), find(&mut parent, g.apply(x)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); degree];
    for x in 0..degree {
        let r = find(&mut parent, x);
        groups[r].push(x);
    }
    groups.into_iter().filter(|g| !g.is_empty()).collect()
}

/// Number of orbits of a subgroup given by its full element list.
///
/// The list must be closed under composition; anything else is rejected.
pub fn orbit_count(subgroup: &[Permutation]) -> Result<usize> {
    let Some(first) = subgroup.first() else {
        return input("empty permutation set");
    };
    let degree = first.degree();
    if subgroup.iter().any(|p| p.degree() != degree) {
        return input("permutations of different degrees");
    }
    let set: HashSet<&Permutation> = subgroup.iter().collect();
    for a in subgroup {
        for b in subgroup {
            if !set.contains(&a.compose(b)) {
                return input(format!("set is not closed: {a} ∘ {b} is missing"));
            }
        }
    }
    Ok(orbits_of(degree, subgroup).len())
}

/// `m(G)` for a graph; a domain error when `Aut(G)` is trivial.
pub fn motion_of(g: &Graph) -> Result<usize> {
    automorphisms(g)?.motion()
}
