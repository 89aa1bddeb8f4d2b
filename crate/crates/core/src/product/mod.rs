//! Symmetry breaking in Cartesian products.
//!
//! A colouring `f` of `G = G_1 □ .. □ G_k` (prime, connected factors) is
//! distinguishing exactly when
//!
//! 1. no colour-preserving automorphism of `G` carries the `G_i`-fibres onto
//!    the `G_j`-fibres for `i ≠ j`, and
//! 2. for every `i`, every `α` acting on `Q_i` and every non-identity `β` in
//!    `Aut(G_i)`, some vertex `v` of `G_i` has a `Q_i`-layer that the lifting
//!    of `α` does not carry colour-preservingly onto the layer through
//!    `β(v)`.
//!
//! [`is_distinguishing_product`] decides both conditions factor by factor.
//! The thresholds in [`theta`] are closed forms for products of primes.

mod holographic;
mod theta;

use serde_json::json;

use crate::automorphism::{automorphisms, AutGroup, Permutation, MAX_GROUP_ORDER};
use crate::error::{capacity, domain, input, Result};
use crate::graph::{colored_isomorphism, is_isomorphic, Graph, ProductGraph};
use crate::indices::Coloring;

pub use holographic::{
    alpha_equivalent, holographic_color, holographic_factor_coloring, lifts_onto, HolographicColor,
    HolographicFactorColoring,
};
pub use theta::{
    theta_for, theta_general, theta_power, theta_product_distinct, GeneralThreshold,
    GENERAL_THRESHOLD_NOTE,
};

/// A product whose factors the caller asserts are prime. Factor classes up
/// to isomorphism are computed here.
#[derive(Debug, Clone)]
pub struct Factorization {
    product: ProductGraph,
    classes: Vec<usize>,
}

impl Factorization {
    pub fn new(product: ProductGraph) -> Self {
        let factors = product.factors();
        let mut classes: Vec<usize> = Vec::with_capacity(factors.len());
        for (i, f) in factors.iter().enumerate() {
            let class = (0..i)
                .find(|&j| is_isomorphic(&factors[j], f))
                .map_or(i, |j| classes[j]);
            classes.push(class);
        }
        Self { product, classes }
    }

    pub fn from_factors(factors: &[Graph]) -> Result<Self> {
        Ok(Self::new(crate::graph::cartesian_product(factors)?))
    }

    pub fn product(&self) -> &ProductGraph {
        &self.product
    }

    /// Isomorphism class of each factor, named by its first member.
    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn pairwise_non_isomorphic(&self) -> bool {
        self.classes.iter().enumerate().all(|(i, &c)| c == i)
    }

    /// `(G_i, t_i)` for each isomorphism class, in order of first
    /// appearance.
    pub fn multiplicities(&self) -> Vec<(Graph, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &c in &self.classes {
            match out.iter_mut().find(|(k, _)| *k == c) {
                Some((_, t)) => *t += 1,
                None => out.push((c, 1)),
            }
        }
        out.into_iter()
            .map(|(c, t)| (self.product.factors()[c].clone(), t))
            .collect()
    }
}

/// Which automorphisms of `Q_i` condition 2 ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheckMode {
    /// All of `Aut(Q_i)`.
    #[default]
    Full,
    /// Only the factor-wise subgroup `Aut(G_1) ⊕ .. ` acting on `Q_i`.
    AutF,
}

impl std::str::FromStr for CheckMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(CheckMode::Full),
            "aut_f" | "autf" | "aut-f" => Ok(CheckMode::AutF),
            other => input(format!("unknown check mode `{other}` (full, aut_f)")),
        }
    }
}

/// Why a colouring fails the product test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A colour-preserving automorphism of `G` taking `G_i`-fibres to
    /// `G_j`-fibres.
    FactorSwap {
        factor_i: usize,
        factor_j: usize,
        automorphism: Permutation,
    },
    /// `(α, β)` preserves `f`: the lifting of `α` carries every `Q_i`-layer
    /// through `v` onto the layer through `β(v)`.
    Layer {
        factor_i: usize,
        alpha: Permutation,
        beta: Permutation,
    },
}

impl Witness {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Witness::FactorSwap {
                factor_i,
                factor_j,
                automorphism,
            } => json!({
                "condition": "i",
                "factor_i": factor_i,
                "factor_j": factor_j,
                "automorphism": automorphism.to_string(),
            }),
            Witness::Layer {
                factor_i,
                alpha,
                beta,
            } => json!({
                "condition": "ii",
                "factor_i": factor_i,
                "alpha": alpha.to_string(),
                "beta": beta.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCheck {
    pub distinguishing: bool,
    pub witness: Option<Witness>,
}

/// Decides whether `f` distinguishes the product, factor by factor.
///
/// Witnesses are deterministic: the first failing factor pair for
/// condition 1, else the first `(i, α, β)` in factor order and then element
/// order of the two groups.
pub fn is_distinguishing_product(
    fact: &Factorization,
    f: &Coloring,
    mode: CheckMode,
) -> Result<ProductCheck> {
    let p = fact.product();
    let k = p.factor_count();
    if k < 2 {
        return input("the product test needs at least two factors");
    }
    if f.len() != p.graph().order() {
        return input(format!(
            "colouring has {} entries for a product on {} vertices",
            f.len(),
            p.graph().order()
        ));
    }
    if let Some(i) = p.factors().iter().position(|g| !g.is_connected()) {
        return domain(format!("factor {i} is disconnected"));
    }

    for i in 0..k {
        for j in i + 1..k {
            if fact.classes()[i] != fact.classes()[j] {
                continue;
            }
            if let Some(automorphism) = fibre_swap(p, f, i, j) {
                return Ok(ProductCheck {
                    distinguishing: false,
                    witness: Some(Witness::FactorSwap {
                        factor_i: i,
                        factor_j: j,
                        automorphism,
                    }),
                });
            }
        }
    }

    for i in 0..k {
        let betas = automorphisms(&p.factors()[i])?;
        if betas.is_trivial() {
            continue;
        }
        let q = p.quotient(i)?;
        let alphas = match mode {
            CheckMode::Full => automorphisms(q.graph())?,
            CheckMode::AutF => factorwise_group(&q)?,
        };
        let holo = holographic_factor_coloring(p, i, f)?.colors;
        for alpha in alphas.elements() {
            for beta in betas.non_identity() {
                let preserved =
                    (0..holo.len()).all(|v| lifts_onto(&holo[v], &holo[beta.apply(v)], alpha));
                if preserved {
                    return Ok(ProductCheck {
                        distinguishing: false,
                        witness: Some(Witness::Layer {
                            factor_i: i,
                            alpha: alpha.clone(),
                            beta: beta.clone(),
                        }),
                    });
                }
            }
        }
    }
    Ok(ProductCheck {
        distinguishing: true,
        witness: None,
    })
}

/// A colour-preserving automorphism of the product mapping `G_i`-edges onto
/// `G_j`-edges, found as a colour-preserving isomorphism between two
/// subdivisions of `G` that mark the `i`- and `j`-edges respectively.
fn fibre_swap(p: &ProductGraph, f: &Coloring, i: usize, j: usize) -> Option<Permutation> {
    let g = p.graph();
    let n = g.order();
    let direction = |u: usize, v: usize| -> usize {
        let (a, b) = (p.coords(u), p.coords(v));
        (0..a.len())
            .find(|&t| a[t] != b[t])
            .expect("edge endpoints differ")
    };
    const MARKED: u32 = u32::MAX;
    const UNMARKED: u32 = u32::MAX - 1;

    let mut edges = Vec::with_capacity(2 * g.size());
    let mut dirs = Vec::with_capacity(g.size());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        edges.push((u, n + e));
        edges.push((v, n + e));
        dirs.push(direction(u, v));
    }
    let subdivided = Graph::new(n + g.size(), edges).expect("subdivision is simple");
    let colors_for = |marked: usize| -> Vec<u32> {
        f.colors()
            .iter()
            .copied()
            .chain(
                dirs.iter()
                    .map(|&d| if d == marked { MARKED } else { UNMARKED }),
            )
            .collect()
    };
    let map = colored_isomorphism(&subdivided, &colors_for(i), &subdivided, &colors_for(j))?;
    Some(
        Permutation::from_images(map[..n].to_vec())
            .expect("isomorphism restricts to a bijection on product vertices"),
    )
}

/// `⊕_t Aut(G_t)` acting coordinate-wise on a product.
pub fn factorwise_group(p: &ProductGraph) -> Result<AutGroup> {
    let groups: Vec<AutGroup> = p
        .factors()
        .iter()
        .map(automorphisms)
        .collect::<Result<_>>()?;
    let order = groups
        .iter()
        .try_fold(1usize, |acc, g| acc.checked_mul(g.order()))
        .filter(|&o| o <= MAX_GROUP_ORDER);
    if order.is_none() {
        return capacity(format!(
            "factor-wise group exceeds {MAX_GROUP_ORDER} elements"
        ));
    }
    let n = p.graph().order();
    let mut elements = vec![Permutation::identity(n)];
    for (t, group) in groups.iter().enumerate() {
        let mut next = Vec::with_capacity(elements.len() * group.order());
        for lifted in group.elements().iter().map(|a| lift_factor(p, t, a)) {
            next.extend(elements.iter().map(|e| lifted.compose(e)));
        }
        elements = next;
    }
    AutGroup::from_elements(n, elements)
}

/// The automorphism of the product acting as `a` on coordinate `t`.
fn lift_factor(p: &ProductGraph, t: usize, a: &Permutation) -> Permutation {
    let images = (0..p.graph().order())
        .map(|v| {
            let mut c = p.coords(v);
            c[t] = a.apply(c[t]);
            p.vertex(&c).expect("image coordinates are in range")
        })
        .collect();
    Permutation::from_images(images).expect("coordinate-wise map is a bijection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;
    use crate::indices::is_distinguishing;

    fn fam(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().build().unwrap()
    }

    fn fact(specs: &[&str]) -> Factorization {
        Factorization::from_factors(&specs.iter().map(|s| fam(s)).collect::<Vec<_>>()).unwrap()
    }

    fn reds(p: &ProductGraph, cells: &[[usize; 2]]) -> Coloring {
        let mut colors = vec![1; p.graph().order()];
        for c in cells {
            colors[p.vertex(&[c[0] - 1, c[1] - 1]).unwrap()] = 2;
        }
        Coloring::new(colors, 2).unwrap()
    }

    #[test]
    fn classes_and_multiplicities() {
        let f = fact(&["complete:2", "path:3", "path:2"]);
        assert_eq!(f.classes(), &[0, 1, 0]);
        assert!(!f.pairwise_non_isomorphic());
        let m = f.multiplicities();
        assert_eq!(
            m.iter().map(|(g, t)| (g.order(), *t)).collect::<Vec<_>>(),
            vec![(2, 2), (3, 1)]
        );
    }

    #[test]
    fn factorwise_group_orders() {
        let f = fact(&["path:2", "path:3", "cycle:4"]);
        let g = factorwise_group(f.product()).unwrap();
        assert_eq!(g.order(), 2 * 2 * 8);
        assert!(g.preserves(f.product().graph()));
    }

    #[test]
    fn examples_on_grids() {
        let f = fact(&["path:4", "path:5"]);
        let p = f.product();
        for mode in [CheckMode::Full, CheckMode::AutF] {
            let r = is_distinguishing_product(&f, &reds(p, &[[2, 2], [3, 4]]), mode).unwrap();
            assert!(!r.distinguishing);
            match r.witness.unwrap() {
                Witness::Layer { alpha, beta, .. } => {
                    assert!(!alpha.is_identity());
                    assert!(!beta.is_identity());
                }
                w => panic!("unexpected witness {w:?}"),
            }
            let r =
                is_distinguishing_product(&f, &reds(p, &[[2, 4], [3, 2], [3, 3]]), mode).unwrap();
            assert!(r.distinguishing);
        }
        let f = fact(&["path:5", "path:6"]);
        let c = reds(f.product(), &[[2, 2], [2, 3], [2, 4], [4, 5]]);
        assert!(
            is_distinguishing_product(&f, &c, CheckMode::Full)
                .unwrap()
                .distinguishing
        );
    }

    #[test]
    fn factor_swap_detected() {
        // symmetric colouring of P_3 □ P_3 under the transpose
        let f = fact(&["path:3", "path:3"]);
        let p = f.product();
        let c = reds(p, &[[1, 2], [2, 1]]);
        let r = is_distinguishing_product(&f, &c, CheckMode::AutF).unwrap();
        assert!(!r.distinguishing);
        let Some(Witness::FactorSwap { automorphism, .. }) = r.witness else {
            panic!("expected a factor swap");
        };
        assert!(c.is_preserved_by(&automorphism));
        let j = Witness::FactorSwap {
            factor_i: 0,
            factor_j: 1,
            automorphism,
        }
        .to_json();
        assert_eq!(j["condition"], "i");
    }

    #[test]
    fn agrees_with_direct_check_on_all_small_colorings() {
        let f = fact(&["path:2", "path:3"]);
        let g = f.product().graph();
        let aut = automorphisms(g).unwrap();
        for mask in 0u32..64 {
            let c = Coloring::new((0..6).map(|v| 1 + (mask >> v & 1)).collect(), 2).unwrap();
            let direct = is_distinguishing(g, &aut, &c).unwrap();
            for mode in [CheckMode::Full, CheckMode::AutF] {
                assert_eq!(
                    is_distinguishing_product(&f, &c, mode)
                        .unwrap()
                        .distinguishing,
                    direct,
                    "mask {mask:06b}"
                );
            }
        }
    }

    #[test]
    fn input_errors() {
        let f = fact(&["path:2", "path:3"]);
        assert!(is_distinguishing_product(&f, &Coloring::constant(5), CheckMode::Full).is_err());
        let single = fact(&["path:3"]);
        assert!(
            is_distinguishing_product(&single, &Coloring::constant(3), CheckMode::Full).is_err()
        );
        assert!("sideways".parse::<CheckMode>().is_err());
    }
}
