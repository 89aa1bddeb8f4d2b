//! Graph arguments.
//!
//! ```text
//! spec    := factor (SEP factor)*
//! factor  := family ':' params | 'file:' PATH
//! SEP     := 'x' | '□'
//! ```
//!
//! An `x` separates factors unless it sits between two digits, so
//! `grid:4x5` is one factor and `path:4xpath:5` is two. A `file:` factor
//! runs until the next whitespace-delimited ` x ` or `□`, so paths may
//! contain `x`. `grid:MxN` expands to the product `P_M □ P_N`.

use std::path::Path;

use symbreak_core::{cartesian_product, FamilySpec, Graph, ProductGraph};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone)]
pub enum ParsedGraph {
    Single(Graph),
    Product(ProductGraph),
}

impl ParsedGraph {
    pub fn graph(&self) -> &Graph {
        match self {
            ParsedGraph::Single(g) => g,
            ParsedGraph::Product(p) => p.graph(),
        }
    }

    pub fn product(&self) -> Option<&ProductGraph> {
        match self {
            ParsedGraph::Single(_) => None,
            ParsedGraph::Product(p) => Some(p),
        }
    }
}

pub fn parse_graph_spec(text: &str) -> CliResult<ParsedGraph> {
    let mut factors = Vec::new();
    for (pos, term) in split_factors(text)? {
        factors.extend(parse_factor(pos, term)?);
    }
    if factors.len() == 1 {
        Ok(ParsedGraph::Single(factors.pop().expect("one factor")))
    } else {
        Ok(ParsedGraph::Product(cartesian_product(&factors)?))
    }
}

fn syntax(pos: usize, message: impl Into<String>) -> CliError {
    CliError::Syntax {
        pos,
        message: message.into(),
    }
}

/// Splits `text` into trimmed factor terms with their byte offsets.
fn split_factors(text: &str) -> CliResult<Vec<(usize, &str)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut terms = Vec::new();
    let mut start = 0;
    let mut idx = 0;
    while idx <= chars.len() {
        let at_end = idx == chars.len();
        let here = if at_end { text.len() } else { chars[idx].0 };
        let term_so_far = &text[start..here];
        let in_file = term_so_far.trim_start().starts_with("file:");
        let is_sep = !at_end && {
            let c = chars[idx].1;
            let prev = idx.checked_sub(1).map(|j| chars[j].1);
            let next = chars.get(idx + 1).map(|&(_, c)| c);
            if in_file {
                c == '□'
                    || (c == 'x'
                        && prev.is_some_and(char::is_whitespace)
                        && next.is_some_and(char::is_whitespace))
            } else {
                c == '□'
                    || (c == 'x'
                        && !(prev.is_some_and(|p| p.is_ascii_digit())
                            && next.is_some_and(|n| n.is_ascii_digit())))
            }
        };
        if at_end || is_sep {
            let lead = term_so_far.len() - term_so_far.trim_start().len();
            let term = term_so_far.trim();
            if term.is_empty() {
                return Err(syntax(start, "expected a graph"));
            }
            terms.push((start + lead, term));
            if !at_end {
                start = here + chars[idx].1.len_utf8();
            }
        }
        idx += 1;
    }
    Ok(terms)
}

fn parse_factor(pos: usize, term: &str) -> CliResult<Vec<Graph>> {
    if let Some(path) = term.strip_prefix("file:") {
        return Ok(vec![read_edge_list(Path::new(path.trim()))?]);
    }
    let spec: FamilySpec = term.parse().map_err(|e: symbreak_core::Error| {
        syntax(
            pos,
            e.to_string()
                .trim_start_matches("input error: ")
                .to_string(),
        )
    })?;
    Ok(match spec {
        FamilySpec::Grid(m, n) => vec![FamilySpec::Path(m).build()?, FamilySpec::Path(n).build()?],
        other => vec![other.build()?],
    })
}

pub fn read_edge_list(path: &Path) -> CliResult<Graph> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(Graph::from_edge_list(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terms(s: &str) -> Vec<(usize, &str)> {
        split_factors(s).unwrap()
    }

    #[test]
    fn splitting() {
        assert_eq!(terms("path:5"), vec![(0, "path:5")]);
        assert_eq!(terms("grid:4x5"), vec![(0, "grid:4x5")]);
        assert_eq!(terms("path:4 x path:5"), vec![(0, "path:4"), (9, "path:5")]);
        assert_eq!(terms("path:4xpath:5"), vec![(0, "path:4"), (7, "path:5")]);
        assert_eq!(terms("path:2□cycle:3"), vec![(0, "path:2"), (9, "cycle:3")]);
        assert_eq!(
            terms("file:/tmp/x1.el x path:2"),
            vec![(0, "file:/tmp/x1.el"), (18, "path:2")]
        );
    }

    #[test]
    fn products_and_grids() {
        let g = parse_graph_spec("grid:4x5").unwrap();
        assert_eq!(g.product().unwrap().dims(), &[4, 5]);
        let g = parse_graph_spec("complete:2 x complete:2 x path:3").unwrap();
        assert_eq!(g.product().unwrap().dims(), &[2, 2, 3]);
        assert_eq!(g.graph().order(), 12);
        assert!(parse_graph_spec("cycle:7").unwrap().product().is_none());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_graph_spec("path:4 x wheel:5") {
            Err(CliError::Syntax { pos, message }) => {
                assert_eq!(pos, 9);
                assert!(message.contains("wheel"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_graph_spec("path:4 x "),
            Err(CliError::Syntax { pos: 8, .. })
        ));
        assert!(matches!(
            parse_graph_spec("file:/definitely/not/here.el"),
            Err(CliError::Io { .. })
        ));
    }
}
