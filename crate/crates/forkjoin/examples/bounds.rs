//! Mean cycle time bounds for each service-time model family, evaluated by
//! every applicable method, plus the moments-only dominance bound.
//!
//! Run with: cargo run --example bounds

use forkjoin::experiment::fork_join_5;
use forkjoin::stochastic::{
    cycle_time_lower_bound, cycle_time_upper_bound, estimate_mean_cycle_time,
    gumbel_hartley_bound, harmonic, ServiceModel, UpperBoundMethod, UpperBoundOpts,
};

fn main() {
    let opts = UpperBoundOpts { mc_draws: 2_000_000, seed: 7, ..UpperBoundOpts::default() };

    let models = [
        ("deterministic", ServiceModel::deterministic(vec![1.0, 3.0, 2.0, 1.5, 0.5]).unwrap()),
        ("iid exponential", ServiceModel::independent_exponential(vec![1.0; 5]).unwrap()),
        ("hot-node exponential", ServiceModel::independent_exponential(vec![1.0, 1.0, 1.0, 5.0, 1.0]).unwrap()),
        ("scaled erlang r=4", ServiceModel::scaled_erlang(4, 5).unwrap()),
        ("mixture a=1/2", ServiceModel::mixture_family(5, 0.5).unwrap()),
        ("mixture a=1/5", ServiceModel::mixture_family(5, 0.2).unwrap()),
    ];

    println!("{:<22} {:>8}  {:>12}  method", "model", "lower", "upper");
    for (name, model) in &models {
        let lower = cycle_time_lower_bound(model);
        let upper = cycle_time_upper_bound(model, UpperBoundMethod::Auto, &opts).unwrap();
        println!("{name:<22} {lower:>8.4}  {:>12.6}  {} (err ≤ {:.2e})", upper.value, upper.method, upper.abs_error);
    }

    // the same bound through different routes
    let iid = &models[1].1;
    println!("\nE[max of 5 unit exponentials] by every route:");
    println!("  closed form (harmonic sum) = {:.9}", harmonic(5));
    for method in [UpperBoundMethod::ClosedForm, UpperBoundMethod::Quadrature, UpperBoundMethod::MonteCarlo] {
        let b = cycle_time_upper_bound(iid, method, &opts).unwrap();
        println!("  {:<12} = {:.9} (err ≤ {:.2e})", b.method.to_string(), b.value, b.abs_error);
    }

    // knowing only mean and variance still bounds the maximum from above
    let moment_bound = gumbel_hartley_bound(1.0, 1.0, 5);
    println!("\nmoments-only bound for 5 i.i.d. variables with mean 1, variance 1:");
    println!("  {moment_bound:.6} ≥ {:.6} (the exponential exact value)", harmonic(5));

    // a precision goal that cannot be met inside the budget is an error
    // carrying the partial estimate
    let strict = UpperBoundOpts { mc_draws: 1000, mc_target_std_err: Some(1e-9), ..opts };
    match cycle_time_upper_bound(iid, UpperBoundMethod::MonteCarlo, &strict) {
        Err(e) => println!("\nimpossible precision goal: {e}"),
        Ok(_) => unreachable!(),
    }

    // bounds plus a seeded simulation in one report
    let report = estimate_mean_cycle_time(iid, &fork_join_5(), 20_000, 7).unwrap();
    println!("\nfull report for the fork-join network under i.i.d. exponentials:");
    print!("{report}");
}
