//! Isomorphism and automorphism search by joint colour refinement and
//! individualization.
//!
//! Both graphs carry a vertex colouring in a shared colour space. At every
//! search node the two colourings are refined together to the coarsest
//! equitable partition (colour plus multiset of neighbour colours). A node
//! is pruned as soon as the two sides disagree on cell sizes. Otherwise the
//! smallest non-singleton cell is split by individualizing its least vertex
//! on the left against every vertex of the matching cell on the right.
//! Discrete leaves determine a bijection, which is verified before it is
//! reported.

use std::collections::HashMap;
use std::ops::ControlFlow;

use super::Graph;
use crate::error::{capacity, Result};

/// Largest graph accepted by [`is_isomorphic`] and friends.
pub const MAX_SEARCH_VERTICES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SearchOutcome {
    Exhausted,
    Stopped,
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    base_g: &'a [u32],
    base_h: &'a [u32],
}

impl Search<'_> {
    /// Refines both colourings in place. Returns `false` on a mismatch.
    fn refine(&self, cl: &mut [u32], cr: &mut [u32]) -> bool {
        let n = cl.len();
        let mut classes = count_distinct(cl);
        loop {
            let sig = |graph: &Graph, colors: &[u32], v: usize| {
                let mut nb: Vec<u32> = graph.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            };
            let left: Vec<_> = (0..n).map(|v| sig(self.g, cl, v)).collect();
            let right: Vec<_> = (0..n).map(|v| sig(self.h, cr, v)).collect();

            let mut all: Vec<&(u32, Vec<u32>)> = left.iter().chain(right.iter()).collect();
            all.sort_unstable();
            all.dedup();
            let rank: HashMap<&(u32, Vec<u32>), u32> = all
                .iter()
                .enumerate()
                .map(|(i, s)| (*s, i as u32))
                .collect();

            for v in 0..n {
                cl[v] = rank[&left[v]];
                cr[v] = rank[&right[v]];
            }
            let mut sl = cl.to_vec();
            let mut sr = cr.to_vec();
            sl.sort_unstable();
            sr.sort_unstable();
            if sl != sr {
                return false;
            }
            let now = count_distinct(cl);
            if now == classes {
                return true;
            }
            classes = now;
        }
    }

    fn run(
        &self,
        mut cl: Vec<u32>,
        mut cr: Vec<u32>,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> SearchOutcome {
        if !self.refine(&mut cl, &mut cr) {
            return SearchOutcome::Exhausted;
        }
        let n = cl.len();

        let mut sizes: HashMap<u32, usize> = HashMap::new();
        for &c in &cl {
            *sizes.entry(c).or_default() += 1;
        }
        let target = sizes
            .iter()
            .filter(|(_, &s)| s > 1)
            .min_by_key(|(&c, &s)| (s, c))
            .map(|(&c, _)| c);

        let Some(cell) = target else {
            let at: HashMap<u32, usize> = (0..n).map(|w| (cr[w], w)).collect();
            let map: Vec<usize> = (0..n).map(|v| at[&cl[v]]).collect();
            if self.verify(&map) {
                if let ControlFlow::Break(()) = visit(&map) {
                    return SearchOutcome::Stopped;
                }
            }
            return SearchOutcome::Exhausted;
        };

        let v = (0..n).find(|&v| cl[v] == cell).expect("cell is non-empty");
        let fresh = cl.iter().chain(cr.iter()).max().map_or(0, |m| m + 1);
        for w in (0..n).filter(|&w| cr[w] == cell) {
            let mut nl = cl.clone();
            let mut nr = cr.clone();
            nl[v] = fresh;
            nr[w] = fresh;
            if self.run(nl, nr, visit) == SearchOutcome::Stopped {
                return SearchOutcome::Stopped;
            }
        }
        SearchOutcome::Exhausted
    }

    fn verify(&self, map: &[usize]) -> bool {
        (0..map.len()).all(|v| self.base_g[v] == self.base_h[map[v]])
            && self.g.size() == self.h.size()
            && self
                .g
                .edges()
                .iter()
                .all(|&(u, v)| self.h.has_edge(map[u], map[v]))
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Normalizes two arbitrary colourings into one dense colour space. Returns
/// `None` if the colour multisets differ.
fn shared_colors(cg: &[u32], ch: &[u32]) -> Option<(Vec<u32>, Vec<u32>)> {
    let mut a = cg.to_vec();
    let mut b = ch.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    a.dedup();
    let rank: HashMap<u32, u32> = a.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    Some((
        cg.iter().map(|c| rank[c]).collect(),
        ch.iter().map(|c| rank[c]).collect(),
    ))
}

pub(crate) fn search_isomorphisms(
    g: &Graph,
    cg: &[u32],
    h: &Graph,
    ch: &[u32],
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> SearchOutcome {
    if g.order() != h.order() || g.size() != h.size() {
        return SearchOutcome::Exhausted;
    }
    let Some((cl, cr)) = shared_colors(cg, ch) else {
        return SearchOutcome::Exhausted;
    };
    let search = Search {
        g,
        h,
        base_g: cg,
        base_h: ch,
    };
    search.run(cl, cr, visit)
}

/// A colour-preserving isomorphism `g → h` (`map[v]` is the image of `v`),
/// if one exists.
pub fn colored_isomorphism(g: &Graph, cg: &[u32], h: &Graph, ch: &[u32]) -> Option<Vec<usize>> {
    assert_eq!(
        cg.len(),
        g.order(),
        "colouring length must match graph order"
    );
    assert_eq!(
        ch.len(),
        h.order(),
        "colouring length must match graph order"
    );
    if g.order() > MAX_SEARCH_VERTICES || h.order() > MAX_SEARCH_VERTICES {
        panic!("isomorphism search is limited to {MAX_SEARCH_VERTICES} vertices");
    }
    let mut found = None;
    search_isomorphisms(g, cg, h, ch, &mut |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// An isomorphism `g → h`, if one exists.
pub fn isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    let zeros = vec![0; g.order()];
    colored_isomorphism(g, &zeros, h, &zeros)
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    isomorphism(g, h).is_some()
}

/// Every automorphism of `g` preserving `colors`, as image arrays sorted
/// lexicographically. Fails once more than `limit` have been found.
pub(crate) fn enumerate_automorphisms(
    g: &Graph,
    colors: &[u32],
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    let mut found = Vec::new();
    let outcome = search_isomorphisms(g, colors, g, colors, &mut |m| {
        found.push(m.to_vec());
        if found.len() > limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    if outcome == SearchOutcome::Stopped {
        return capacity(format!("automorphism group has more than {limit} elements"));
    }
    found.sort_unstable();
    Ok(found)
}
