use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{input, Error, Result};

/// A named graph family with its parameters.
///
/// Canonical numberings: paths and cycles are consecutive, `kbipartite:a,b`
/// puts the first part on `0..a`, hypercubes use binary coordinates (first
/// coordinate is the most significant bit), grids are row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Hypercube(usize),
    Grid(usize, usize),
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            FamilySpec::Path(n) => n >= 1,
            FamilySpec::Cycle(n) => n >= 3,
            FamilySpec::Complete(n) => n >= 1,
            FamilySpec::CompleteBipartite(a, b) => a >= 1 && b >= 1,
            FamilySpec::Hypercube(k) => (1..=20).contains(&k),
            FamilySpec::Grid(m, n) => m >= 2 && n >= 2,
        };
        if ok {
            Ok(())
        } else {
            input(format!("invalid parameters for `{self}`"))
        }
    }

    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        match *self {
            FamilySpec::Path(n) => Graph::new(n, (1..n).map(|i| (i - 1, i))),
            FamilySpec::Cycle(n) => Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))),
            FamilySpec::Complete(n) => {
                Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            }
            FamilySpec::CompleteBipartite(a, b) => {
                Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            }
            FamilySpec::Hypercube(k) => {
                let n = 1usize << k;
                Graph::new(
                    n,
                    (0..n).flat_map(|u| {
                        (0..k)
                            .map(move |bit| (u, u ^ (1 << bit)))
                            .filter(|&(u, v)| u < v)
                    }),
                )
            }
            FamilySpec::Grid(m, n) => {
                let mut edges = Vec::new();
                for r in 0..m {
                    for c in 0..n {
                        let v = r * n + c;
                        if c + 1 < n {
                            edges.push((v, v + 1));
                        }
                        if r + 1 < m {
                            edges.push((v, v + n));
                        }
                    }
                }
                Graph::new(m * n, edges)
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::CompleteBipartite(a, b) => write!(f, "kbipartite:{a},{b}"),
            FamilySpec::Hypercube(k) => write!(f, "hypercube:{k}"),
            FamilySpec::Grid(m, n) => write!(f, "grid:{m}x{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses `path:4`, `cycle:6`, `complete:5`, `kbipartite:3,3`,
    /// `hypercube:4`, `grid:4x5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, params) = s
            .split_once(':')
            .ok_or_else(|| Error::Input(format!("`{s}`: expected `family:params`")))?;
        let num = |t: &str| -> Result<usize> {
            t.trim()
                .parse()
                .map_err(|_| Error::Input(format!("`{s}`: `{t}` is not a non-negative integer")))
        };
        let two = |sep: char| -> Result<(usize, usize)> {
            let (a, b) = params
                .split_once(sep)
                .ok_or_else(|| Error::Input(format!("`{s}`: expected two parameters")))?;
            Ok((num(a)?, num(b)?))
        };
        let spec = match kind.trim() {
            "path" => FamilySpec::Path(num(params)?),
            "cycle" => FamilySpec::Cycle(num(params)?),
            "complete" => FamilySpec::Complete(num(params)?),
            "kbipartite" => {
                let (a, b) = two(',')?;
                FamilySpec::CompleteBipartite(a, b)
            }
            "hypercube" => FamilySpec::Hypercube(num(params)?),
            "grid" => {
                let (m, n) = two('x')?;
                FamilySpec::Grid(m, n)
            }
            other => return input(format!("unknown graph family `{other}`")),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;

    fn build(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().build().unwrap()
    }

    #[test]
    fn path_edges() {
        assert_eq!(build("path:4").edges(), &[(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn triangle_is_complete() {
        assert_eq!(build("cycle:3"), build("complete:3"));
    }

    #[test]
    fn square_hypercube_is_four_cycle() {
        let q2 = build("hypercube:2");
        assert_eq!(q2.size(), 4);
        assert!(is_isomorphic(&q2, &build("cycle:4")));
    }

    #[test]
    fn family_sizes() {
        assert_eq!(build("kbipartite:3,3").size(), 9);
        assert_eq!(build("hypercube:4").size(), 32);
        assert_eq!(build("grid:4x5").size(), 31);
        assert_eq!(build("complete:5").size(), 10);
    }

    #[test]
    fn rejects_invalid() {
        for bad in [
            "cycle:2", "path:0", "grid:1x4", "torus:3", "path", "grid:3", "path:-1",
        ] {
            assert!(bad.parse::<FamilySpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "path:4",
            "cycle:6",
            "complete:5",
            "kbipartite:3,3",
            "hypercube:4",
            "grid:4x5",
        ] {
            assert_eq!(s.parse::<FamilySpec>().unwrap().to_string(), s);
        }
    }
}
