//! Graph functionals: real-valued, pure, total maps of a graph, evaluated
//! through its sufficient statistics in `O(n + m)` time.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formulas::{cosmo_edge_count, tri_edge_count};
use crate::graph::{Graph, GraphStats};

/// A pure, total, deterministic real-valued map of a graph. Evaluation on
/// toggled graphs must be well-defined (no hidden state).
pub trait GraphFunctional: Sync {
    fn label(&self) -> &str;
    fn eval(&self, g: &Graph) -> f64;
}

/// The built-in counting functionals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Functional {
    /// Polytope edge count `9*C(m,2) + m + leaves`.
    CosmoEdges,
    /// Triangulation edge count `16*C(m,2) + C(ñ,2) + 4ñm`.
    TriEdges,
    /// Arc count `m`.
    Arcs,
    /// Leaf count.
    Leaves,
}

impl Functional {
    pub const ALL: [Functional; 4] = [
        Functional::CosmoEdges,
        Functional::TriEdges,
        Functional::Arcs,
        Functional::Leaves,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Functional::CosmoEdges => "cosmo_edges",
            Functional::TriEdges => "tri_edges",
            Functional::Arcs => "arcs",
            Functional::Leaves => "leaves",
        }
    }
}

impl FromStr for Functional {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cosmo_edges" => Ok(Functional::CosmoEdges),
            "tri_edges" => Ok(Functional::TriEdges),
            "arcs" => Ok(Functional::Arcs),
            "leaves" => Ok(Functional::Leaves),
            other => Err(Error::domain(format!(
                "unknown functional {other:?} (expected cosmo_edges, tri_edges, arcs, or leaves)"
            ))),
        }
    }
}

impl std::fmt::Display for Functional {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluates a counting functional from sufficient statistics alone; the
/// polytope is never materialized.
pub fn evaluate_functional(stats: &GraphStats, functional: Functional) -> Result<u128> {
    match functional {
        Functional::CosmoEdges => cosmo_edge_count(stats.m, stats.leaves),
        Functional::TriEdges => tri_edge_count(stats.m, stats.non_isolated),
        Functional::Arcs => Ok(stats.m as u128),
        Functional::Leaves => Ok(stats.leaves as u128),
    }
}

impl GraphFunctional for Functional {
    fn label(&self) -> &str {
        self.name()
    }

    fn eval(&self, g: &Graph) -> f64 {
        evaluate_functional(&g.stats(), *self).expect("stats from a real graph are consistent")
            as f64
    }
}

/// Wraps a closure as a functional, mainly for tests and examples.
pub struct FnFunctional<F: Fn(&Graph) -> f64 + Sync> {
    label: String,
    f: F,
}

impl<F: Fn(&Graph) -> f64 + Sync> FnFunctional<F> {
    pub fn new(label: impl Into<String>, f: F) -> Self {
        FnFunctional {
            label: label.into(),
            f,
        }
    }
}

impl<F: Fn(&Graph) -> f64 + Sync> GraphFunctional for FnFunctional<F> {
    fn label(&self) -> &str {
        &self.label
    }

    fn eval(&self, g: &Graph) -> f64 {
        (self.f)(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_examples() {
        let triangle = Graph::complete(3);
        assert_eq!(
            evaluate_functional(&triangle.stats(), Functional::CosmoEdges).unwrap(),
            30
        );
        let single = Graph::from_node_pairs(2, &[(1, 2)]).unwrap();
        assert_eq!(
            evaluate_functional(&single.stats(), Functional::TriEdges).unwrap(),
            9
        );
        assert_eq!(
            evaluate_functional(&triangle.stats(), Functional::Arcs).unwrap(),
            3
        );
        assert_eq!(
            evaluate_functional(&triangle.stats(), Functional::Leaves).unwrap(),
            0
        );
    }

    #[test]
    fn name_round_trip() {
        for f in Functional::ALL {
            assert_eq!(f.name().parse::<Functional>().unwrap(), f);
        }
        assert!("polytope".parse::<Functional>().is_err());
    }

    #[test]
    fn closure_functional() {
        let f = FnFunctional::new("const", |_: &Graph| 7.0);
        assert_eq!(f.eval(&Graph::empty(3)), 7.0);
        assert_eq!(f.label(), "const");
    }
}
