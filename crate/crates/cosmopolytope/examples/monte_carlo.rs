//! One Monte Carlo experiment: sample Erdős–Rényi graphs, evaluate the
//! polytope edge count from sufficient statistics, and compare the
//! streaming moments and KS statistic against the closed-form references.
//!
//! Run with: `cargo run --release --example monte_carlo`

use cosmopolytope::functional::Functional;
use cosmopolytope::sim::{run_experiment, ExperimentConfig, ProbabilitySpec, Standardization};

fn main() {
    let cfg = ExperimentConfig {
        n: 256,
        p: ProbabilitySpec::Literal(0.1),
        replications: 5_000,
        master_seed: 42,
        functional: Functional::CosmoEdges,
        standardization: Standardization::Theoretical,
    };
    let summary = run_experiment(&cfg).unwrap();

    println!(
        "n={}, p={}, {} replications, seed {}",
        summary.config.n, summary.p, summary.count, summary.config.master_seed
    );
    println!("  sample mean        {:>16.2}", summary.mean);
    println!("  closed-form mean   {:>16.2}", summary.theoretical_mean);
    println!(
        "  relative deviation {:>16.2e}",
        (summary.mean / summary.theoretical_mean - 1.0).abs()
    );
    println!("  sample variance    {:>16.3e}", summary.variance);
    if let (Some(lo), Some(hi)) = (summary.theoretical_var_lo, summary.theoretical_var_hi) {
        println!("  variance bracket   [{lo:>12.3e}, {hi:>12.3e}]");
        // The bracket holds the true variance; the sample variance carries
        // about sqrt(2/R) relative noise, so compare with that guard.
        let guard = 5.0 * (2.0 / summary.count as f64).sqrt();
        println!(
            "  inside guarded     {:>16}",
            lo * (1.0 - guard) <= summary.variance && summary.variance <= hi * (1.0 + guard)
        );
    }
    println!(
        "  KS to Gaussian     {:>16.4}  (reference rate 1/(n sqrt(pq)) = {:.4})",
        summary.ks_statistic, summary.clt_rate
    );
    println!("  wall seconds       {:>16.2}", summary.wall_seconds);

    // The same configuration replays bit-identically.
    let replay = run_experiment(&cfg).unwrap();
    println!(
        "  replay identical   {:>16}",
        replay.mean == summary.mean && replay.ks_statistic == summary.ks_statistic
    );
}
