//! Holographic colourings: a product colouring viewed from one factor.
//!
//! For factor `i`, each vertex `v` of `G_i` is "coloured" by the colouring
//! that `f` induces on the `Q_i`-layer through `v`, read in `Q_i`'s own
//! (row-major) vertex order.

use serde::Serialize;

use crate::automorphism::Permutation;
use crate::error::{input, Result};
use crate::graph::ProductGraph;
use crate::indices::Coloring;

/// The colouring induced by `f` on the `Q_i`-layer through factor vertex
/// `anchor`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HolographicColor {
    pub factor: usize,
    pub anchor: usize,
    pub induced: Vec<u32>,
}

/// The holographic colouring of `G_i`: one [`HolographicColor`] per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HolographicFactorColoring {
    pub factor: usize,
    pub colors: Vec<HolographicColor>,
}

fn check_coloring(p: &ProductGraph, f: &Coloring) -> Result<()> {
    if f.len() != p.graph().order() {
        return input(format!(
            "colouring has {} entries for a product on {} vertices",
            f.len(),
            p.graph().order()
        ));
    }
    Ok(())
}

pub fn holographic_color(
    p: &ProductGraph,
    i: usize,
    v: usize,
    f: &Coloring,
) -> Result<HolographicColor> {
    check_coloring(p, f)?;
    let layer = p.quotient_layer(i, v)?;
    Ok(HolographicColor {
        factor: i,
        anchor: v,
        induced: layer.iter().map(|&x| f.get(x)).collect(),
    })
}

pub fn holographic_factor_coloring(
    p: &ProductGraph,
    i: usize,
    f: &Coloring,
) -> Result<HolographicFactorColoring> {
    check_coloring(p, f)?;
    if i >= p.factor_count() {
        return input(format!("factor index {i} out of range"));
    }
    let colors = (0..p.dims()[i])
        .map(|v| holographic_color(p, i, v, f))
        .collect::<Result<_>>()?;
    Ok(HolographicFactorColoring { factor: i, colors })
}

/// Whether the lifting of `alpha` carries `a`'s colouring onto `b`'s, i.e.
/// `a[x] == b[alpha(x)]` for every quotient vertex `x`.
pub fn lifts_onto(a: &HolographicColor, b: &HolographicColor, alpha: &Permutation) -> bool {
    a.induced.len() == alpha.degree()
        && b.induced.len() == alpha.degree()
        && (0..alpha.degree()).all(|x| a.induced[x] == b.induced[alpha.apply(x)])
}

/// `a` and `b` are α-equivalent when the lifting of `alpha` or of its
/// inverse is colour-preserving from `a` onto `b`.
pub fn alpha_equivalent(
    a: &HolographicColor,
    b: &HolographicColor,
    alpha: &Permutation,
) -> Result<bool> {
    if a.factor != b.factor || a.induced.len() != b.induced.len() {
        return input("holographic colours live over different quotients");
    }
    if alpha.degree() != a.induced.len() {
        return input(format!(
            "α acts on {} points but the quotient has {}",
            alpha.degree(),
            a.induced.len()
        ));
    }
    Ok(lifts_onto(a, b, alpha) || lifts_onto(a, b, &alpha.inverse()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::automorphisms;
    use crate::graph::{cartesian_product, FamilySpec, Graph};
    use proptest::prelude::*;

    fn fam(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().build().unwrap()
    }

    fn reds(p: &ProductGraph, cells: &[[usize; 2]]) -> Coloring {
        let mut colors = vec![1; p.graph().order()];
        for c in cells {
            colors[p.vertex(&[c[0] - 1, c[1] - 1]).unwrap()] = 2;
        }
        Coloring::new(colors, 2).unwrap()
    }

    #[test]
    fn constant_coloring() {
        let p = cartesian_product(&[fam("path:3"), fam("cycle:4")]).unwrap();
        let f = Coloring::constant(12);
        for i in 0..2 {
            let h = holographic_factor_coloring(&p, i, &f).unwrap();
            assert!(h.colors.iter().all(|c| c.induced.iter().all(|&x| x == 1)));
        }
    }

    #[test]
    fn distinct_coloring_gives_distinct_triples() {
        let p = cartesian_product(&[fam("path:2"), fam("path:3")]).unwrap();
        let f = Coloring::from_colors((1..=6).collect()).unwrap();
        let h = holographic_factor_coloring(&p, 0, &f).unwrap();
        assert_eq!(h.colors.len(), 2);
        assert_eq!(h.colors[0].induced, vec![1, 2, 3]);
        assert_eq!(h.colors[1].induced, vec![4, 5, 6]);
    }

    #[test]
    fn row_through_both_red_cells() {
        // 4x5 grid with red cells at (2,4), (3,2), (3,3)
        let p = cartesian_product(&[fam("path:4"), fam("path:5")]).unwrap();
        let f = reds(&p, &[[2, 4], [3, 2], [3, 3]]);
        let row = holographic_color(&p, 0, 2, &f).unwrap();
        assert_eq!(row.induced.iter().filter(|&&c| c == 2).count(), 2);
    }

    #[test]
    fn rows_related_by_half_turn() {
        // red (2,2) and (3,4): rows 2 and 3 differ by the P_5 reflection
        let p = cartesian_product(&[fam("path:4"), fam("path:5")]).unwrap();
        let f = reds(&p, &[[2, 2], [3, 4]]);
        let r2 = holographic_color(&p, 0, 1, &f).unwrap();
        let r3 = holographic_color(&p, 0, 2, &f).unwrap();
        let aut_p5 = automorphisms(&fam("path:5")).unwrap();
        let (id, refl) = (&aut_p5.elements()[0], &aut_p5.elements()[1]);
        assert!(alpha_equivalent(&r2, &r3, refl).unwrap());
        assert!(!alpha_equivalent(&r2, &r3, id).unwrap());
    }

    #[test]
    fn each_quotient_automorphism_counts_separately() {
        // 5x6 grid, red (2,2), (2,3), (2,4), (4,5); view from the P_6
        // factor, so the holographic colours are the columns (P_5 layers).
        let p = cartesian_product(&[fam("path:5"), fam("path:6")]).unwrap();
        let f = reds(&p, &[[2, 2], [2, 3], [2, 4], [4, 5]]);
        let cols = holographic_factor_coloring(&p, 1, &f).unwrap().colors;
        let aut_p5 = automorphisms(&fam("path:5")).unwrap();
        let (id, refl) = (&aut_p5.elements()[0], &aut_p5.elements()[1]);
        // The P_6 reflection pairs columns (1,6), (2,5), (3,4).
        // Under the identity, columns 2 and 5 differ ...
        assert!(!alpha_equivalent(&cols[1], &cols[4], id).unwrap());
        // ... and under the reflection, columns 3 and 4 differ,
        assert!(!alpha_equivalent(&cols[2], &cols[3], refl).unwrap());
        // yet every pair is related by some colour-preserving isomorphism.
        for (a, b) in [(0, 5), (1, 4), (2, 3)] {
            assert!(
                alpha_equivalent(&cols[a], &cols[b], id).unwrap()
                    || alpha_equivalent(&cols[a], &cols[b], refl).unwrap()
            );
        }
    }

    #[test]
    fn mismatched_quotients() {
        let p = cartesian_product(&[fam("path:2"), fam("path:3")]).unwrap();
        let f = Coloring::constant(6);
        let a = holographic_color(&p, 0, 0, &f).unwrap();
        let b = holographic_color(&p, 1, 0, &f).unwrap();
        assert!(alpha_equivalent(&a, &b, &Permutation::identity(3)).is_err());
        assert!(alpha_equivalent(&a, &a, &Permutation::identity(2)).is_err());
        assert!(holographic_color(&p, 0, 0, &Coloring::constant(5)).is_err());
        assert!(holographic_color(&p, 2, 0, &f).is_err());
    }

    proptest! {
        #[test]
        fn equivalence_is_symmetric_and_reflexive(
            colors in proptest::collection::vec(1u32..=3, 15),
            ai in 0usize..10,
        ) {
            let p = cartesian_product(&[fam("path:3"), fam("cycle:5")]).unwrap();
            let f = Coloring::new(colors, 3).unwrap();
            let aut_c5 = automorphisms(&fam("cycle:5")).unwrap();
            let alpha = &aut_c5.elements()[ai];
            let h = holographic_factor_coloring(&p, 0, &f).unwrap().colors;
            for a in &h {
                prop_assert!(alpha_equivalent(a, a, &Permutation::identity(5)).unwrap());
                for b in &h {
                    prop_assert_eq!(
                        alpha_equivalent(a, b, alpha).unwrap(),
                        alpha_equivalent(b, a, alpha).unwrap()
                    );
                }
            }
        }
    }
}
