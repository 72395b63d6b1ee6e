//! Edge sets of cosmological polytopes three ways: the supporting-functional
//! LP oracle over the exact vertex coordinates, the graph-theoretic edge
//! rules, and the closed-form count `9*C(m,2) + m + leaves`.
//!
//! Run with: `cargo run --release --example polytope_edges`

use cosmopolytope::formulas::cosmo_edge_count;
use cosmopolytope::geometry::{characterized_cosmo_edges, cosmo_vertices, oracle_edge_set};
use cosmopolytope::graph::Graph;

fn main() {
    let graphs = [
        ("single arc", Graph::from_node_pairs(2, &[(1, 2)]).unwrap()),
        ("path on 3", Graph::from_node_pairs(3, &[(1, 2), (2, 3)]).unwrap()),
        ("triangle", Graph::complete(3)),
        (
            "star K_{1,3}",
            Graph::from_node_pairs(4, &[(1, 2), (1, 3), (1, 4)]).unwrap(),
        ),
        (
            "4-cycle",
            Graph::from_node_pairs(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap(),
        ),
    ];

    println!("{:<12} {:>8} {:>9} {:>12} {:>12} {:>9}", "graph", "vertices", "LP edges", "rule edges", "formula", "agree");
    for (name, g) in graphs {
        let stats = g.stats();
        let vertices = cosmo_vertices(&g);
        let oracle = oracle_edge_set(&g).expect("within the oracle cap");
        let rules = characterized_cosmo_edges(&g);
        let formula = cosmo_edge_count(stats.m, stats.leaves).unwrap();
        let agree = oracle == rules && oracle.len() as u128 == formula;
        println!(
            "{:<12} {:>8} {:>9} {:>12} {:>12} {:>9}",
            name,
            vertices.len(),
            oracle.len(),
            rules.len(),
            formula,
            agree
        );
    }

    // The vertex coordinates behind the single-arc polytope: a triangle in
    // the plane x1 + x2 + x3 = 1.
    println!("\nsingle-arc vertex coordinates (nodes 1,2 then the arc):");
    for v in cosmo_vertices(&Graph::from_node_pairs(2, &[(1, 2)]).unwrap()) {
        println!("  {:?}  <- {:?}", v.coords, v.kind);
    }
}
