//! Subgroup lattice of a small permutation group with the Möbius function
//! `μ(1, H)` measured from the trivial subgroup.
//!
//! Subgroups are found by closing every known subgroup under one extra
//! element at a time, starting from the trivial group, which reaches every
//! subgroup since each one is generated by a chain of elements. Subsets of
//! the group are `u128` bitmasks over element indices, hence the order bound.

use std::collections::HashMap;

use super::{orbits_of, AutGroup, Permutation};
use crate::error::{capacity, Result};

/// Largest group order accepted by [`SubgroupLattice::new`].
pub const MAX_LATTICE_ORDER: usize = 128;
/// Give up once this many subgroups have been found.
pub const MAX_SUBGROUPS: usize = 200_000;

#[derive(Debug, Clone)]
pub struct Subgroup {
    /// Indices into the parent group's element list, ascending.
    pub elements: Vec<usize>,
    /// Number of vertex orbits of this subgroup.
    pub orbits: usize,
    /// `μ(1, H)`.
    pub moebius: i64,
    mask: u128,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// All subgroups of an [`AutGroup`], ordered by increasing order (ties by
/// element set), so the trivial subgroup is first and the full group last.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
}

impl SubgroupLattice {
    pub fn new(group: &AutGroup) -> Result<Self> {
        let order = group.order();
        if order > MAX_LATTICE_ORDER {
            return capacity(format!(
                "subgroup lattice is limited to groups of order {MAX_LATTICE_ORDER}, got {order}"
            ));
        }
        let elems = group.elements();
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| group.index_of(&a.compose(b)).expect("group is closed"))
                    .collect()
            })
            .collect();

        let closure = |gens: &[usize]| -> u128 {
            let mut mask = 1u128;
            let mut members = vec![0usize];
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for &g in gens {
                    let y = table[g][x];
                    if mask & (1 << y) == 0 {
                        mask |= 1 << y;
                        members.push(y);
                    }
                }
                i += 1;
            }
            mask
        };

        // one representative generator per cyclic subgroup
        let mut cyclic_seen = HashMap::new();
        for e in 1..order {
            cyclic_seen.entry(closure(&[e])).or_insert(e);
        }
        let mut cyclic: Vec<usize> = cyclic_seen.into_values().collect();
        cyclic.sort_unstable();

        let mut found: HashMap<u128, usize> = HashMap::from([(1u128, 0)]);
        let mut gens: Vec<Vec<usize>> = vec![Vec::new()];
        let mut masks: Vec<u128> = vec![1];
        let mut next = 0;
        while next < masks.len() {
            let mask = masks[next];
            for &c in &cyclic {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let mut g = gens[next].clone();
                g.push(c);
                let joined = closure(&g);
                if let std::collections::hash_map::Entry::Vacant(slot) = found.entry(joined) {
                    slot.insert(masks.len());
                    masks.push(joined);
                    gens.push(g);
                    if masks.len() > MAX_SUBGROUPS {
                        return capacity(format!("more than {MAX_SUBGROUPS} subgroups"));
                    }
                }
            }
            next += 1;
        }

        let mut order_of: Vec<(u32, u128)> = masks.iter().map(|&m| (m.count_ones(), m)).collect();
        order_of.sort_unstable();

        let mut subgroups: Vec<Subgroup> = Vec::with_capacity(order_of.len());
        for &(_, mask) in &order_of {
            let elements: Vec<usize> = (0..order).filter(|&i| mask & (1 << i) != 0).collect();
            let perms: Vec<Permutation> = elements.iter().map(|&i| elems[i].clone()).collect();
            let orbits = orbits_of(group.degree(), &perms).len();
            let moebius = if mask == 1 {
                1
            } else {
                -subgroups
                    .iter()
                    .filter(|k| k.mask & mask == k.mask)
                    .map(|k| k.moebius)
                    .sum::<i64>()
            };
            subgroups.push(Subgroup {
                elements,
                orbits,
                moebius,
                mask,
            });
        }
        Ok(Self { subgroups })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    /// Whether subgroup `a` is contained in subgroup `b`.
    pub fn contains(&self, a: usize, b: usize) -> bool {
        let (ma, mb) = (self.subgroups[a].mask, self.subgroups[b].mask);
        ma & mb == ma
    }

    pub fn full(&self) -> &Subgroup {
        self.subgroups
            .last()
            .expect("lattice always holds the full group")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::automorphisms;
    use crate::graph::{cartesian_product, FamilySpec, Graph};

    fn fam(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().build().unwrap()
    }

    fn lattice(g: &Graph) -> SubgroupLattice {
        SubgroupLattice::new(&automorphisms(g).unwrap()).unwrap()
    }

    #[test]
    fn order_two() {
        let l = lattice(&fam("path:4"));
        assert_eq!(l.len(), 2);
        let mu: Vec<i64> = l.subgroups().iter().map(|s| s.moebius).collect();
        assert_eq!(mu, vec![1, -1]);
    }

    #[test]
    fn klein_four() {
        let g = cartesian_product(&[fam("path:2"), fam("path:3")]).unwrap();
        let l = lattice(g.graph());
        assert_eq!(l.len(), 5);
        assert_eq!(l.full().order(), 4);
        assert_eq!(l.full().moebius, 2);
    }

    #[test]
    fn dihedral_of_order_eight() {
        let p3 = fam("path:3");
        let g = cartesian_product(&[p3.clone(), p3]).unwrap();
        let l = lattice(g.graph());
        assert_eq!(l.full().order(), 8);
        assert_eq!(l.len(), 10);
        // μ(1, D_8) = 0 for the dihedral group of order 8
        assert_eq!(l.full().moebius, 0);
    }

    #[test]
    fn known_subgroup_counts() {
        // S_3, S_4 and D_5
        assert_eq!(lattice(&fam("complete:3")).len(), 6);
        assert_eq!(lattice(&fam("complete:4")).len(), 30);
        assert_eq!(lattice(&fam("cycle:5")).len(), 8);
    }

    #[test]
    fn moebius_defining_sum() {
        for s in ["cycle:6", "complete:4", "hypercube:3", "kbipartite:2,3"] {
            let l = lattice(&fam(s));
            for h in 0..l.len() {
                let sum: i64 = (0..l.len())
                    .filter(|&k| l.contains(k, h))
                    .map(|k| l.subgroups()[k].moebius)
                    .sum();
                assert_eq!(sum, i64::from(h == 0), "{s}, subgroup {h}");
            }
        }
    }

    #[test]
    fn order_bound() {
        let a = automorphisms(&fam("hypercube:4")).unwrap();
        assert!(matches!(
            SubgroupLattice::new(&a),
            Err(crate::Error::Capacity(_))
        ));
    }
}
