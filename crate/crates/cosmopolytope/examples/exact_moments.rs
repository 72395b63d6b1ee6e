//! Exact rational moments of the edge counts under the Erdős–Rényi law:
//! closed forms against weighted enumeration over all graphs, plus the
//! Cauchy-Schwarz variance bracket.
//!
//! Run with: `cargo run --release --example exact_moments`

use cosmopolytope::formulas::{
    mean_cosmo, mean_tri, var_core_exact, var_leaves, var_pairs_of_arcs, variance_interval_cosmo,
};
use cosmopolytope::functional::{FnFunctional, Functional, GraphFunctional};
use cosmopolytope::graph::Graph;
use cosmopolytope::ratio::{format_rational, rat};
use cosmopolytope::stein::exact_expectation;

fn main() {
    let p = rat(1, 3);
    println!("p = 1/3, closed form vs exhaustive enumeration:\n");
    for n in [2u32, 3, 4] {
        let closed = mean_cosmo(n, &p).unwrap();
        let enumerated = exact_expectation(&Functional::CosmoEdges, n, &p).unwrap();
        println!(
            "  E[polytope edges]      n={n}: {:>10}  (enumeration {:>10}, equal: {})",
            format_rational(&closed),
            format_rational(&enumerated),
            closed == enumerated
        );
        let closed = mean_tri(n, &p).unwrap();
        let enumerated = exact_expectation(&Functional::TriEdges, n, &p).unwrap();
        println!(
            "  E[triangulation edges] n={n}: {:>10}  (enumeration {:>10}, equal: {})",
            format_rational(&closed),
            format_rational(&enumerated),
            closed == enumerated
        );
    }

    // Variance components of the arc-driven part at n=4.
    let n = 4u32;
    println!("\nvariance components at n={n}, p=1/3:");
    println!(
        "  Var(C(E,2))      = {}",
        format_rational(&var_pairs_of_arcs(n, &p).unwrap())
    );
    println!(
        "  Var(leaf count)  = {}",
        format_rational(&var_leaves(n, &p).unwrap())
    );
    println!(
        "  Var(9C(E,2) + E) = {}",
        format_rational(&var_core_exact(n, &p).unwrap())
    );

    // The full variance is only bracketed (the arc/leaf covariance has no
    // closed form); the exact enumerated value must land inside.
    let cosmo = Functional::CosmoEdges;
    let mean = exact_expectation(&cosmo, n, &p).unwrap();
    let square = FnFunctional::new("square", move |g: &Graph| {
        let v = cosmo.eval(g);
        v * v
    });
    let second = exact_expectation(&square, n, &p).unwrap();
    let exact_var = second - &mean * &mean;
    let (lo, hi) = variance_interval_cosmo(n, &p).unwrap();
    println!(
        "\n  Var(polytope edges) = {} and the bracket is [{}, {}] (inside: {})",
        format_rational(&exact_var),
        format_rational(&lo),
        format_rational(&hi),
        lo <= exact_var && exact_var <= hi
    );
}
