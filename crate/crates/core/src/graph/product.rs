use super::Graph;
use crate::error::{input, Result};

/// A Cartesian product together with its factorization.
///
/// Vertices are numbered row-major in their coordinate tuples, last
/// coordinate fastest, so `(x_0, .., x_{k-1})` has index
/// `((x_0 * n_1 + x_1) * n_2 + ..) + x_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGraph {
    graph: Graph,
    factors: Vec<Graph>,
    dims: Vec<usize>,
}

/// A `G_i`-layer: the induced subgraph together with its embedding
/// (`embedding[j]` is the product vertex whose `i`-th coordinate is `j`).
#[derive(Debug, Clone)]
pub struct Layer {
    pub graph: Graph,
    pub embedding: Vec<usize>,
}

/// Builds `factors[0] □ factors[1] □ ..`.
pub fn cartesian_product(factors: &[Graph]) -> Result<ProductGraph> {
    if factors.is_empty() {
        return input("a Cartesian product needs at least one factor");
    }
    if let Some(i) = factors.iter().position(|f| f.order() == 0) {
        return input(format!("factor {i} has no vertices"));
    }
    let dims: Vec<usize> = factors.iter().map(Graph::order).collect();
    let n = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or_else(|| crate::Error::Capacity("product order overflows".into()))?;

    let mut edges = Vec::new();
    let mut coords = vec![0; dims.len()];
    for v in 0..n {
        decode(&dims, v, &mut coords);
        for (i, f) in factors.iter().enumerate() {
            let x = coords[i];
            for &y in f.neighbors(x) {
                if y > x {
                    coords[i] = y;
                    edges.push((v, encode(&dims, &coords)));
                    coords[i] = x;
                }
            }
        }
    }
    Ok(ProductGraph {
        graph: Graph::new(n, edges)?,
        factors: factors.to_vec(),
        dims,
    })
}

fn decode(dims: &[usize], mut v: usize, out: &mut [usize]) {
    for i in (0..dims.len()).rev() {
        out[i] = v % dims[i];
        v /= dims[i];
    }
}

fn encode(dims: &[usize], coords: &[usize]) -> usize {
    dims.iter().zip(coords).fold(0, |acc, (&d, &x)| acc * d + x)
}

impl ProductGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn factors(&self) -> &[Graph] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn coords(&self, v: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        decode(&self.dims, v, &mut out);
        out
    }

    pub fn vertex(&self, coords: &[usize]) -> Result<usize> {
        if coords.len() != self.dims.len() {
            return input(format!(
                "expected {} coordinates, got {}",
                self.dims.len(),
                coords.len()
            ));
        }
        if let Some(i) = (0..coords.len()).find(|&i| coords[i] >= self.dims[i]) {
            return input(format!(
                "coordinate {} out of range 0..{} for factor {i}",
                coords[i], self.dims[i]
            ));
        }
        Ok(encode(&self.dims, coords))
    }

    fn check_factor(&self, i: usize) -> Result<()> {
        if i >= self.factors.len() {
            return input(format!(
                "factor index {i} out of range 0..{}",
                self.factors.len()
            ));
        }
        Ok(())
    }

    /// The `G_i`-layer through `anchor`.
    pub fn layer(&self, i: usize, anchor: usize) -> Result<Layer> {
        self.check_factor(i)?;
        if anchor >= self.graph.order() {
            return input(format!("anchor {anchor} is not a product vertex"));
        }
        let mut coords = self.coords(anchor);
        let embedding: Vec<usize> = (0..self.dims[i])
            .map(|x| {
                coords[i] = x;
                encode(&self.dims, &coords)
            })
            .collect();
        Ok(Layer {
            graph: self.graph.induced(&embedding)?,
            embedding,
        })
    }

    /// The `i`-th quotient `Q_i`: the product of every factor but the `i`-th.
    pub fn quotient(&self, i: usize) -> Result<ProductGraph> {
        if self.factors.len() < 2 {
            return input("the quotient needs a product of at least two factors");
        }
        self.check_factor(i)?;
        let rest: Vec<Graph> = self
            .factors
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, f)| f.clone())
            .collect();
        cartesian_product(&rest)
    }

    /// Product vertices of the `Q_i`-layer through the factor-`i` vertex `x`,
    /// listed in `Q_i`'s own vertex order.
    pub fn quotient_layer(&self, i: usize, x: usize) -> Result<Vec<usize>> {
        self.check_factor(i)?;
        if x >= self.dims[i] {
            return input(format!("vertex {x} out of range for factor {i}"));
        }
        let rest: Vec<usize> = (0..self.dims.len())
            .filter(|&j| j != i)
            .map(|j| self.dims[j])
            .collect();
        let q_order: usize = rest.iter().product();
        let mut qc = vec![0; rest.len()];
        let mut full = vec![0; self.dims.len()];
        Ok((0..q_order)
            .map(|q| {
                decode(&rest, q, &mut qc);
                let mut it = qc.iter();
                for (j, slot) in full.iter_mut().enumerate() {
                    *slot = if j == i { x } else { *it.next().unwrap() };
                }
                encode(&self.dims, &full)
            })
            .collect())
    }
}
