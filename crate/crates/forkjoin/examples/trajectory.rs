//! Evolving the state recursion x(k) = A(k) ⊗ x(k−1): deterministic
//! pipelines, the event-level oracle, and the per-cycle norm envelopes.
//!
//! Run with: cargo run --example trajectory

use forkjoin::dynamics::{direct_recursion, run, step, transition_matrix, ServiceSample};
use forkjoin::experiment::{fork_join_5, tandem};
use forkjoin::maxplus::MaxPlus;
use forkjoin::stochastic::{ModelSampler, ServiceModel};

fn main() {
    // a deterministic pipeline fills up and then departs one customer per
    // cycle: ‖x(k)‖ = k + n − 1 for unit services on an n-node tandem
    let line = tandem(5);
    let unit = ServiceSample::new(vec![1.0; 5]).unwrap();
    let traj = run(&line, std::iter::repeat(unit), 100, false).unwrap();
    println!("tandem of 5, unit services:");
    println!("  ‖x(100)‖ = {} (= cycles + depth)", traj.cycle_norm(100));
    println!("  mean cycle estimate = {}", traj.mean_cycle_estimate());

    // one cycle of the fork-join diamond, by matrix and by event recursion
    let network = fork_join_5();
    let sample = ServiceSample::new(vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
    let a = transition_matrix(
        &sample,
        &network.standard_adjacency(),
        network.longest_path_length(),
    )
    .unwrap();
    println!("\ntransition matrix for services (1, 2, 3, 4, 5):\n{a}");
    let x0 = vec![MaxPlus::ZERO; 5];
    let by_matrix = step(&x0, &a).unwrap();
    let by_events = direct_recursion(&x0, &sample, &network).unwrap();
    assert_eq!(by_matrix, by_events);
    println!("first-cycle departures (both routes agree): {by_matrix:?}");

    // a stochastic run keeps ‖x(k)‖ between its algebraic envelopes
    let model = ServiceModel::independent_exponential(vec![1.0; 5]).unwrap();
    let sampler = ModelSampler::new(&model, 2024, 0);
    let cycles = 50;
    let traj = run(&network, sampler, cycles, true).unwrap();
    println!("\nexponential services, seed 2024:");
    println!("{:>6} {:>12} {:>12} {:>12}", "cycle", "lower", "norm", "upper");
    for k in (10..=cycles).step_by(10) {
        println!(
            "{k:>6} {:>12.4} {:>12.4} {:>12.4}",
            traj.lower_envelope()[k - 1],
            traj.cycle_norm(k),
            traj.upper_envelope()[k - 1]
        );
    }
    let states = traj.states().unwrap();
    println!("(recorded {} states, x(0) through x({cycles}))", states.len());
    println!("mean cycle estimate: {:.4}", traj.mean_cycle_estimate());
}
