//! Closed-form thresholds of Cartesian products of connected prime graphs.

use crate::automorphism::automorphisms;
use crate::error::{capacity, domain, Result};
use crate::graph::{is_isomorphic, Graph};
use crate::indices::threshold;

use super::Factorization;

fn factor_theta(g: &Graph) -> Result<u64> {
    if !g.is_connected() {
        return domain("product thresholds need connected factors");
    }
    Ok(u64::from(threshold(&automorphisms(g)?)))
}

fn overflow() -> crate::Error {
    crate::Error::Capacity("threshold does not fit in 64 bits".into())
}

fn checked_pow(base: u64, exp: usize) -> Result<u64> {
    base.checked_pow(u32::try_from(exp).map_err(|_| overflow())?)
        .ok_or_else(overflow)
}

/// `θ(G_1 □ .. □ G_k) = max_i (θ(G_i) − 1)|Q_i| + 1` for pairwise
/// non-isomorphic factors.
pub fn theta_product_distinct(fact: &Factorization) -> Result<u64> {
    if !fact.pairwise_non_isomorphic() {
        return domain("factors are not pairwise non-isomorphic");
    }
    let total = fact.product().graph().order() as u64;
    let mut best = 0;
    for g in fact.product().factors() {
        let q = total / g.order() as u64;
        let term = (factor_theta(g)? - 1).checked_mul(q).ok_or_else(overflow)?;
        best = best.max(term);
    }
    Ok(best + 1)
}

/// `θ(G^k) = |G|^{k−1} max{(|G|+1)/2, θ(G) − 1} + 1` for `k ≥ 2`.
pub fn theta_power(g: &Graph, k: usize) -> Result<u64> {
    if k < 2 {
        return domain("theta_power needs an exponent of at least 2");
    }
    let n = g.order() as u64;
    let t = factor_theta(g)?;
    // Work with twice the maximum so the half-integer case stays exact;
    // n^{k-1}(n+1) is even whenever k ≥ 2.
    let doubled = checked_pow(n, k - 1)?
        .checked_mul((n + 1).max(2 * (t - 1)))
        .ok_or_else(overflow)?;
    Ok(doubled / 2 + 1)
}

/// Result of the mixed-multiplicity threshold formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralThreshold {
    /// `max_term + 1`.
    pub value: u64,
    /// `max_i (θ(G_i^{t_i}) − 1) |G| / |G_i^{t_i}|`.
    pub max_term: u64,
    pub note: &'static str,
}

pub const GENERAL_THRESHOLD_NOTE: &str = "value is max_term + 1, the reading that agrees with \
     the largest cycle count of the full automorphism group on every tested product";

/// Threshold of `G_1^{t_1} □ .. □ G_r^{t_r}` for pairwise non-isomorphic
/// prime `G_i`.
pub fn theta_general(parts: &[(Graph, usize)]) -> Result<GeneralThreshold> {
    if parts.is_empty() {
        return domain("theta_general needs at least one factor");
    }
    if let Some(&(_, t)) = parts.iter().find(|(_, t)| *t == 0) {
        return domain(format!("multiplicity {t} must be at least 1"));
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if is_isomorphic(&parts[i].0, &parts[j].0) {
                return domain(format!(
                    "factors {i} and {j} are isomorphic; merge their multiplicities"
                ));
            }
        }
    }
    let sizes = parts
        .iter()
        .map(|(g, t)| checked_pow(g.order() as u64, *t))
        .collect::<Result<Vec<_>>>()?;
    let total = sizes
        .iter()
        .try_fold(1u64, |acc, &s| acc.checked_mul(s))
        .ok_or_else(overflow)?;
    let mut max_term = 0;
    for ((g, t), size) in parts.iter().zip(&sizes) {
        let theta = if *t == 1 {
            factor_theta(g)?
        } else {
            theta_power(g, *t)?
        };
        let term = (theta - 1).checked_mul(total / size).ok_or_else(overflow)?;
        max_term = max_term.max(term);
    }
    if max_term == u64::MAX {
        return capacity("threshold does not fit in 64 bits");
    }
    Ok(GeneralThreshold {
        value: max_term + 1,
        max_term,
        note: GENERAL_THRESHOLD_NOTE,
    })
}

/// Picks the formula matching the factor multiplicities.
pub fn theta_for(fact: &Factorization) -> Result<GeneralThreshold> {
    let parts = fact.multiplicities();
    match parts.as_slice() {
        [(g, t)] if *t >= 2 => {
            let value = theta_power(g, *t)?;
            Ok(GeneralThreshold {
                value,
                max_term: value - 1,
                note: GENERAL_THRESHOLD_NOTE,
            })
        }
        _ => theta_general(&parts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cartesian_product, FamilySpec};

    fn fam(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().build().unwrap()
    }

    fn oracle(factors: &[Graph]) -> u64 {
        let p = cartesian_product(factors).unwrap();
        u64::from(threshold(&automorphisms(p.graph()).unwrap()))
    }

    #[test]
    fn distinct_factors() {
        for (specs, want) in [
            (&["path:2", "path:3"][..], 5),
            (&["path:2", "cycle:3"][..], 5),
            (&["path:4", "path:5"][..], 13),
            (&["path:2", "path:4"][..], 5),
        ] {
            let factors: Vec<Graph> = specs.iter().map(|s| fam(s)).collect();
            let f = Factorization::from_factors(&factors).unwrap();
            assert_eq!(theta_product_distinct(&f).unwrap(), want, "{specs:?}");
            assert_eq!(oracle(&factors), want, "{specs:?}");
        }
        let same = Factorization::from_factors(&[fam("path:3"), fam("path:3")]).unwrap();
        assert!(theta_product_distinct(&same).is_err());
    }

    #[test]
    fn powers() {
        let k2 = fam("complete:2");
        let k3 = fam("complete:3");
        assert_eq!(theta_power(&k2, 2).unwrap(), 4);
        assert_eq!(theta_power(&k3, 2).unwrap(), 7);
        assert_eq!(theta_power(&k2, 3).unwrap(), 7);
        assert_eq!(oracle(&[k2.clone(), k2.clone()]), 4);
        assert_eq!(oracle(&[k3.clone(), k3.clone()]), 7);
        assert_eq!(oracle(&[k2.clone(), k2.clone(), k2.clone()]), 7);
        assert_eq!(theta_power(&fam("path:3"), 2).unwrap(), 7);
        assert_eq!(oracle(&[fam("path:3"), fam("path:3")]), 7);
        assert!(theta_power(&k2, 1).is_err());
    }

    #[test]
    fn mixed_multiplicities() {
        let r = theta_general(&[(fam("complete:2"), 2), (fam("path:3"), 1)]).unwrap();
        assert_eq!((r.max_term, r.value), (9, 10));
        assert_eq!(
            oracle(&[fam("complete:2"), fam("complete:2"), fam("path:3")]),
            10
        );
        // reduces to the other two formulas
        let r = theta_general(&[(fam("path:4"), 1), (fam("path:5"), 1)]).unwrap();
        assert_eq!(r.value, 13);
        let r = theta_general(&[(fam("complete:3"), 2)]).unwrap();
        assert_eq!(r.value, 7);
        assert!(theta_general(&[(fam("path:3"), 1), (fam("path:3"), 1)]).is_err());
        assert!(theta_general(&[(fam("path:3"), 0)]).is_err());
        assert!(theta_general(&[]).is_err());
    }

    #[test]
    fn dispatch_by_shape() {
        let f = Factorization::from_factors(&[fam("complete:2"), fam("path:3"), fam("complete:2")])
            .unwrap();
        assert_eq!(theta_for(&f).unwrap().value, 10);
        let f = Factorization::from_factors(&vec![fam("complete:2"); 3]).unwrap();
        assert_eq!(theta_for(&f).unwrap().value, 7);
    }
}
