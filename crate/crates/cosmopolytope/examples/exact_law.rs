//! The exact law of an edge count at small n: atoms with rational
//! probabilities, exact moments, and the exact Kolmogorov distance to the
//! Gaussian with matching mean and variance.
//!
//! Run with: `cargo run --release --example exact_law`

use cosmopolytope::functional::Functional;
use cosmopolytope::ratio::{format_rational, rat, to_f64};
use cosmopolytope::stein::{exact_distribution, exact_kolmogorov_distance};

fn main() {
    let p = rat(1, 2);
    for n in [2u32, 3, 4] {
        let dist = exact_distribution(&Functional::CosmoEdges, n, &p).unwrap();
        let mean = dist.mean();
        let variance = dist.variance();
        println!(
            "polytope edge count at n={n}, p=1/2: {} atoms, mean {}, variance {}",
            dist.atoms().len(),
            format_rational(&mean),
            format_rational(&variance)
        );
        if n <= 3 {
            for (value, prob) in dist.atoms() {
                println!("   P(K = {value:>3}) = {}", format_rational(prob));
            }
        }
        let dk =
            exact_kolmogorov_distance(&dist, to_f64(&mean), to_f64(&variance).sqrt()).unwrap();
        println!("   exact Kolmogorov distance to the Gaussian: {dk:.4}\n");
    }
    println!("the distance shrinks as n grows: the central limit theorem taking hold.");
}
