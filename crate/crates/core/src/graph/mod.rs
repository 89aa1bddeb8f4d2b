//! Simple undirected graphs, named families and Cartesian products.

mod family;
mod iso;
mod product;

use std::fmt;

use crate::error::{input, Result};

pub use family::FamilySpec;
pub(crate) use iso::enumerate_automorphisms;
pub use iso::{colored_isomorphism, is_isomorphic, isomorphism, MAX_SEARCH_VERTICES};
pub use product::{cartesian_product, Layer, ProductGraph};

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted. Adjacency lists
/// and an adjacency matrix are built at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return input(format!("edge ({u}, {v}) has an endpoint outside 0..{n}"));
            }
            if u == v {
                return input(format!("self-loop at vertex {u}"));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        canon.dedup();

        let mut adj = vec![Vec::new(); n];
        let mut matrix = vec![false; n * n];
        for &(u, v) in &canon {
            adj[u].push(v);
            adj[v].push(u);
            matrix[u * n + v] = true;
            matrix[v * n + u] = true;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self {
            n,
            edges: canon,
            adj,
            matrix,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, []).expect("edgeless graph is always valid")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Induced subgraph on `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return input(format!("vertex {v} out of range 0..{}", self.n));
            }
            if pos[v] != usize::MAX {
                return input(format!("vertex {v} listed twice"));
            }
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        Self::new(vertices.len(), edges)
    }

    /// Parses the edge-list text format: a header line `n m` followed by `m`
    /// lines `u v`. Blank lines and `#` comments are ignored.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = match lines.next() {
            Some(h) => h,
            None => return input("edge list is empty"),
        };
        let (n, m) = parse_pair(header)
            .map_err(|e| crate::Error::Input(format!("line {hline}: header {e}")))?;

        let mut edges = Vec::with_capacity(m);
        for (lineno, line) in lines {
            let pair =
                parse_pair(line).map_err(|e| crate::Error::Input(format!("line {lineno}: {e}")))?;
            edges.push(pair);
        }
        if edges.len() != m {
            return input(format!("header declares {m} edges, found {}", edges.len()));
        }
        Self::new(n, edges)
    }

    /// Inverse of [`Graph::from_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn parse_pair(line: &str) -> std::result::Result<(usize, usize), String> {
    let mut it = line.split_whitespace();
    let a = it.next().ok_or("expected two integers")?;
    let b = it.next().ok_or("expected two integers")?;
    if it.next().is_some() {
        return Err(format!("expected two integers, got `{line}`"));
    }
    let a = a
        .parse()
        .map_err(|_| format!("`{a}` is not a non-negative integer"))?;
    let b = b
        .parse()
        .map_err(|_| format!("`{b}` is not a non-negative integer"))?;
    Ok((a, b))
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_edge() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
        assert!(g.has_edge(1, 0));
    }

    #[test]
    fn path_construction() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.degree(0), 1);
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn duplicates_collapse() {
        let g = Graph::new(4, [(0, 1), (1, 0), (2, 3), (0, 1)]).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.size(), 2);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(crate::Error::Input(_))
        ));
        assert!(matches!(
            Graph::new(3, [(1, 1)]),
            Err(crate::Error::Input(_))
        ));
    }

    #[test]
    fn edge_list_format() {
        let text = "# triangle\n3 3\n0 1\n1 2 # closing\n\n2 0\n";
        let g = Graph::from_edge_list(text).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(Graph::from_edge_list(&g.to_edge_list()).unwrap(), g);

        assert!(Graph::from_edge_list("3 2\n0 1\n").is_err());
        assert!(Graph::from_edge_list("3 1\n0 x\n").is_err());
        assert!(Graph::from_edge_list("").is_err());
    }

    #[test]
    fn induced_subgraph() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.induced(&[3, 2, 1]).unwrap();
        assert_eq!(h.edges(), &[(0, 1), (1, 2)]);
        assert!(g.induced(&[0, 0]).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(Graph::new(3, [(0, 1), (1, 2)]).unwrap().is_connected());
        assert!(!Graph::new(3, [(0, 1)]).unwrap().is_connected());
    }
}
