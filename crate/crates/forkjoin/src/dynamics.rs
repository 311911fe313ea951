//! Network dynamics: the max-plus state recursion and its oracles.
//!
//! With x_i(k) the k-th departure epoch at node i and x(0) = 0, one service
//! cycle advances the state by
//!
//! ```text
//! x(k) = A(k) ⊗ x(k-1),    A(k) = (E ⊕ T(k) ⊗ Gᵀ)^⊗p ⊗ T(k),
//! ```
//!
//! where `T(k) = diag(τ_1k, …, τ_nk)` holds the cycle's service times, `G`
//! is the standard adjacency matrix and `p` the longest path length. The
//! k-th cycle completes when every server finishes its k-th service, at
//! time `max_i x_i(k) = ‖x(k)‖`.
//!
//! [`direct_recursion`] evolves the same state straight from the queueing
//! semantics — serve the k-th customer once the server is free and one
//! customer from every predecessor has arrived — and is kept deliberately
//! independent of the matrix route so either side can check the other.
//!
//! A single run is inherently sequential in k; independent runs share no
//! mutable state and may execute concurrently.

use crate::matrix::{MaxPlusMatrix, ShapeError};
use crate::maxplus::MaxPlus;
use crate::network::Topology;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DynamicsError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("service time for node {node} is {value}, but must be a finite non-negative number")]
    InvalidServiceTime { node: usize, value: f64 },
    #[error("sample has {got} service times but the network has {expected} nodes")]
    SampleLength { got: usize, expected: usize },
    #[error("a run needs at least one cycle")]
    ZeroCycles,
    #[error("sample source ran out after {got} of {needed} cycles")]
    SampleUnderrun { got: usize, needed: usize },
    #[error("state vector has length {got}, expected {expected}")]
    StateLength { got: usize, expected: usize },
}

/// One cycle's service times, one finite non-negative value per node.
#[derive(Debug, Clone, PartialEq)]
pub struct ServiceSample {
    tau: Vec<f64>,
}

impl ServiceSample {
    pub fn new(tau: Vec<f64>) -> Result<Self, DynamicsError> {
        for (i, &t) in tau.iter().enumerate() {
            if !(t.is_finite() && t >= 0.0) {
                return Err(DynamicsError::InvalidServiceTime { node: i + 1, value: t });
            }
        }
        Ok(Self { tau })
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.tau
    }

    /// The diagonal service matrix T = diag(τ_1, …, τ_n).
    pub fn service_matrix(&self) -> MaxPlusMatrix {
        let d: Vec<MaxPlus> = self.tau.iter().map(|&t| MaxPlus::new(t)).collect();
        MaxPlusMatrix::diag(&d)
    }

    /// max_i τ_i, the norm of the service matrix (0 for an empty sample).
    pub fn norm(&self) -> f64 {
        self.tau.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
    }
}

/// Builds the cycle transition matrix `(E ⊕ T ⊗ Gᵀ)^⊗p ⊗ T` from one
/// sample, the standard adjacency matrix and the longest path length.
pub fn transition_matrix(
    sample: &ServiceSample,
    adjacency: &MaxPlusMatrix,
    longest_path: usize,
) -> Result<MaxPlusMatrix, DynamicsError> {
    if sample.len() != adjacency.rows() {
        return Err(DynamicsError::SampleLength { got: sample.len(), expected: adjacency.rows() });
    }
    let t = sample.service_matrix();
    let g_t = adjacency.transpose();
    let e = MaxPlusMatrix::identity(sample.len());
    let core = e.oplus(&t.otimes(&g_t)?)?;
    let powered = core.pow(longest_path as u32)?;
    Ok(powered.otimes(&t)?)
}

/// One step of the state recursion: x(k) = A ⊗ x(k−1).
pub fn step(state: &[MaxPlus], a: &MaxPlusMatrix) -> Result<Vec<MaxPlus>, DynamicsError> {
    Ok(a.mul_vec(state)?)
}

/// Event-level oracle for one cycle, evaluated in topological order:
///
/// ```text
/// x_i(k) = τ_ik + max( x_i(k-1),  max over predecessors j of x_j(k) )
/// ```
///
/// Node i starts its k-th service once it has released its previous
/// customer and the join has received the k-th customer from every
/// predecessor. Agrees exactly with `step(state, transition_matrix(...))`.
pub fn direct_recursion(
    state: &[MaxPlus],
    sample: &ServiceSample,
    topology: &Topology,
) -> Result<Vec<MaxPlus>, DynamicsError> {
    let n = topology.node_count();
    if state.len() != n {
        return Err(DynamicsError::StateLength { got: state.len(), expected: n });
    }
    if sample.len() != n {
        return Err(DynamicsError::SampleLength { got: sample.len(), expected: n });
    }
    let mut next = vec![MaxPlus::EPS; n];
    for &v in topology.topo_order_internal() {
        let mut ready = state[v];
        for &u in &topology.preds_internal()[v] {
            ready = ready.oplus(next[u]);
        }
        next[v] = MaxPlus::new(sample.as_slice()[v]).otimes(ready);
    }
    Ok(next)
}

/// A simulated trajectory: per-cycle completion norms and their running
/// algebraic envelopes, plus (optionally) the full state history.
#[derive(Debug, Clone)]
pub struct Trajectory {
    cycles: usize,
    norms: Vec<f64>,
    lower_envelope: Vec<f64>,
    upper_envelope: Vec<f64>,
    states: Option<Vec<Vec<MaxPlus>>>,
    final_state: Vec<MaxPlus>,
}

impl Trajectory {
    pub fn cycles(&self) -> usize {
        self.cycles
    }

    /// ‖x(k)‖ for k = 1..=cycles.
    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    pub fn cycle_norm(&self, k: usize) -> f64 {
        self.norms[k - 1]
    }

    /// Per-cycle lower envelope max_i Σ_{l≤k} τ_il.
    pub fn lower_envelope(&self) -> &[f64] {
        &self.lower_envelope
    }

    /// Per-cycle upper envelope Σ_{l≤k} ‖T(l)‖ + p · max_{l≤k} ‖T(l)‖.
    pub fn upper_envelope(&self) -> &[f64] {
        &self.upper_envelope
    }

    /// State history x(0)..=x(k) when recorded.
    pub fn states(&self) -> Option<&[Vec<MaxPlus>]> {
        self.states.as_deref()
    }

    pub fn final_state(&self) -> &[MaxPlus] {
        &self.final_state
    }

    /// The finite-horizon mean cycle time estimate ‖x(k)‖ / k.
    pub fn mean_cycle_estimate(&self) -> f64 {
        *self.norms.last().expect("trajectory has at least one cycle") / self.cycles as f64
    }

    /// Standard error of the mean cycle estimate by batch means: the k
    /// cycles are cut into `batches` equal spans whose per-cycle increments
    /// are treated as near-independent observations. `None` when there are
    /// fewer than two cycles per batch.
    pub fn batch_means_std_err(&self, batches: usize) -> Option<f64> {
        assert!(batches >= 2, "need at least two batches");
        let span = self.cycles / batches;
        if span < 2 {
            return None;
        }
        let mut means = Vec::with_capacity(batches);
        for b in 0..batches {
            let start_norm = if b == 0 { 0.0 } else { self.norms[b * span - 1] };
            let end_norm = self.norms[(b + 1) * span - 1];
            means.push((end_norm - start_norm) / span as f64);
        }
        let m = means.iter().sum::<f64>() / batches as f64;
        let var = means.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (batches as f64 - 1.0);
        Some((var / batches as f64).sqrt())
    }
}

/// Iterates the state recursion for `cycles` cycles from x(0) = 0,
/// recording ‖x(k)‖ and the algebraic envelopes each cycle. The state
/// history is only kept when `record_states` is set, so long runs stay
/// O(n) in memory apart from the per-cycle scalars.
pub fn run<I>(
    topology: &Topology,
    samples: I,
    cycles: usize,
    record_states: bool,
) -> Result<Trajectory, DynamicsError>
where
    I: IntoIterator<Item = ServiceSample>,
{
    if cycles == 0 {
        return Err(DynamicsError::ZeroCycles);
    }
    let n = topology.node_count();
    let adjacency = topology.standard_adjacency();
    let p = topology.longest_path_length();

    let mut state = vec![MaxPlus::ZERO; n];
    let mut norms = Vec::with_capacity(cycles);
    let mut lower_envelope = Vec::with_capacity(cycles);
    let mut upper_envelope = Vec::with_capacity(cycles);
    let mut states = record_states.then(|| vec![state.clone()]);

    let mut node_sums = vec![0.0f64; n];
    let mut norm_sum = 0.0f64;
    let mut norm_max = f64::NEG_INFINITY;

    let mut produced = 0;
    let mut source = samples.into_iter();
    while produced < cycles {
        let sample = source
            .next()
            .ok_or(DynamicsError::SampleUnderrun { got: produced, needed: cycles })?;
        let a = transition_matrix(&sample, &adjacency, p)?;
        state = step(&state, &a)?;
        produced += 1;

        let norm = state
            .iter()
            .map(|x| x.finite().expect("states stay finite from x(0) = 0"))
            .fold(f64::NEG_INFINITY, f64::max);
        norms.push(norm);

        for (acc, &t) in node_sums.iter_mut().zip(sample.as_slice()) {
            *acc += t;
        }
        let t_norm = sample.norm();
        norm_sum += t_norm;
        norm_max = norm_max.max(t_norm);
        lower_envelope.push(node_sums.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b)));
        upper_envelope.push(norm_sum + p as f64 * norm_max);

        if let Some(history) = states.as_mut() {
            history.push(state.clone());
        }
    }

    Ok(Trajectory {
        cycles,
        norms,
        lower_envelope,
        upper_envelope,
        states,
        final_state: state,
    })
}

/// Algebraic bracket for the k-th completion norm directly from samples:
///
/// ```text
/// max_i Σ_{l≤k} τ_il  ≤  ‖x(k)‖  ≤  Σ_{l≤k} ‖T(l)‖ + p · max_{l≤k} ‖T(l)‖
/// ```
///
/// The left side is the time any single node needs for k services; the
/// right side charges every cycle its worst service plus at most p extra
/// services along the longest chain.
pub fn cycle_norm_bounds(
    samples: &[ServiceSample],
    longest_path: usize,
    cycles: usize,
) -> Result<(f64, f64), DynamicsError> {
    if cycles == 0 {
        return Err(DynamicsError::ZeroCycles);
    }
    if samples.len() < cycles {
        return Err(DynamicsError::SampleUnderrun { got: samples.len(), needed: cycles });
    }
    let n = samples[0].len();
    let mut node_sums = vec![0.0f64; n];
    let mut norm_sum = 0.0;
    let mut norm_max = f64::NEG_INFINITY;
    for sample in &samples[..cycles] {
        if sample.len() != n {
            return Err(DynamicsError::SampleLength { got: sample.len(), expected: n });
        }
        for (acc, &t) in node_sums.iter_mut().zip(sample.as_slice()) {
            *acc += t;
        }
        let t_norm = sample.norm();
        norm_sum += t_norm;
        norm_max = norm_max.max(t_norm);
    }
    let lower = node_sums.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    Ok((lower, norm_sum + longest_path as f64 * norm_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond5() -> Topology {
        Topology::new(5, &[(1, 3), (1, 4), (2, 4), (3, 5), (4, 5)]).unwrap()
    }

    fn tandem(n: usize) -> Topology {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        Topology::new(n, &edges).unwrap()
    }

    fn sample(tau: &[f64]) -> ServiceSample {
        ServiceSample::new(tau.to_vec()).unwrap()
    }

    fn zeros(n: usize) -> Vec<MaxPlus> {
        vec![MaxPlus::ZERO; n]
    }

    #[test]
    fn negative_service_time_is_rejected() {
        let err = ServiceSample::new(vec![1.0, -0.5]).unwrap_err();
        assert!(matches!(err, DynamicsError::InvalidServiceTime { node: 2, .. }));
    }

    #[test]
    fn single_node_transition_is_the_service_time() {
        let t = Topology::new(1, &[]).unwrap();
        let a = transition_matrix(&sample(&[3.5]), &t.standard_adjacency(), 0).unwrap();
        assert_eq!(a, MaxPlusMatrix::from_rows(&[vec![3.5]]));
        let x = step(&zeros(1), &a).unwrap();
        assert_eq!(x, vec![MaxPlus::new(3.5)]);
    }

    #[test]
    fn zero_services_give_the_reachability_closure() {
        let t = diamond5();
        let g = t.standard_adjacency();
        let a = transition_matrix(&sample(&[0.0; 5]), &g, 2).unwrap();
        let closure = MaxPlusMatrix::identity(5)
            .oplus(&g.transpose())
            .unwrap()
            .pow(2)
            .unwrap();
        assert_eq!(a, closure);
    }

    #[test]
    fn transition_matrix_entries_accumulate_path_services() {
        // services (1, 2, 3, 4, 5): entry (i, j) of A is the largest total
        // service along a path from j to i that serves each visited node once
        let t = diamond5();
        let a = transition_matrix(&sample(&[1.0, 2.0, 3.0, 4.0, 5.0]), &t.standard_adjacency(), 2)
            .unwrap();
        assert_eq!(a.get(0, 0), MaxPlus::new(1.0));
        assert_eq!(a.get(2, 0), MaxPlus::new(4.0)); // 3 after 1
        assert_eq!(a.get(3, 0), MaxPlus::new(5.0)); // 4 after 1
        assert_eq!(a.get(3, 1), MaxPlus::new(6.0)); // 4 after 2
        assert_eq!(a.get(4, 0), MaxPlus::new(10.0)); // 5 after 4 after 1
        assert_eq!(a.get(4, 1), MaxPlus::new(11.0)); // 5 after 4 after 2
        assert_eq!(a.get(4, 4), MaxPlus::new(5.0));
        assert_eq!(a.get(0, 4), MaxPlus::EPS); // nothing flows upstream
    }

    #[test]
    fn transition_matrix_equals_straight_line_composition() {
        // compose (E ⊕ T ⊗ Gᵀ)^⊗p ⊗ T term by term with plain repeated
        // products, no squaring shortcut
        let t = diamond5();
        let s = sample(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let g = t.standard_adjacency();
        let p = t.longest_path_length();

        let service = s.service_matrix();
        let core = MaxPlusMatrix::identity(5)
            .oplus(&service.otimes(&g.transpose()).unwrap())
            .unwrap();
        let mut powered = MaxPlusMatrix::identity(5);
        for _ in 0..p {
            powered = powered.otimes(&core).unwrap();
        }
        let reference = powered.otimes(&service).unwrap();

        assert_eq!(transition_matrix(&s, &g, p).unwrap(), reference);
    }

    #[test]
    fn transition_matrix_checks_sample_length() {
        let t = diamond5();
        let err = transition_matrix(&sample(&[1.0, 2.0]), &t.standard_adjacency(), 2).unwrap_err();
        assert!(matches!(err, DynamicsError::SampleLength { got: 2, expected: 5 }));
    }

    #[test]
    fn identity_step_keeps_the_state() {
        let e = MaxPlusMatrix::identity(3);
        let x = vec![MaxPlus::new(1.0), MaxPlus::EPS, MaxPlus::new(-2.0)];
        assert_eq!(step(&x, &e).unwrap(), x);
    }

    #[test]
    fn two_node_pipeline_startup() {
        let t = tandem(2);
        let x = direct_recursion(&zeros(2), &sample(&[2.0, 3.0]), &t).unwrap();
        assert_eq!(x, vec![MaxPlus::new(2.0), MaxPlus::new(5.0)]);
    }

    #[test]
    fn first_cycle_of_the_diamond_takes_the_longest_chain() {
        let t = diamond5();
        let x = direct_recursion(&zeros(5), &sample(&[1.0; 5]), &t).unwrap();
        assert_eq!(x[4], MaxPlus::new(3.0)); // three services on the longest chain
    }

    #[test]
    fn matrix_step_equals_direct_recursion() {
        let t = diamond5();
        let s = sample(&[0.5, 2.0, 1.25, 0.0, 3.75]);
        let a = transition_matrix(&s, &t.standard_adjacency(), t.longest_path_length()).unwrap();
        let x0 = vec![
            MaxPlus::new(1.0),
            MaxPlus::new(0.25),
            MaxPlus::EPS,
            MaxPlus::new(2.5),
            MaxPlus::ZERO,
        ];
        assert_eq!(step(&x0, &a).unwrap(), direct_recursion(&x0, &s, &t).unwrap());
    }

    #[test]
    fn deterministic_unit_services_single_node() {
        let t = Topology::new(1, &[]).unwrap();
        let samples = vec![sample(&[1.0]); 10];
        let traj = run(&t, samples, 10, false).unwrap();
        assert_eq!(traj.cycle_norm(10), 10.0);
        assert_eq!(traj.mean_cycle_estimate(), 1.0);
    }

    #[test]
    fn deterministic_pipeline_norm_is_cycles_plus_depth() {
        let n = 5;
        let t = tandem(n);
        let cycles = 100;
        let samples = vec![sample(&[1.0; 5]); cycles];
        let traj = run(&t, samples, cycles, false).unwrap();
        assert_eq!(traj.cycle_norm(cycles), (cycles + n - 1) as f64);
        assert_eq!(traj.mean_cycle_estimate(), 1.04);
    }

    #[test]
    fn diamond_cycle_increments_settle_at_the_bottleneck() {
        let t = diamond5();
        let cycles = 50;
        let samples = vec![sample(&[1.0; 5]); cycles];
        let traj = run(&t, samples, cycles, false).unwrap();
        for k in 2..=cycles {
            assert_eq!(traj.cycle_norm(k) - traj.cycle_norm(k - 1), 1.0);
        }
    }

    #[test]
    fn run_records_states_only_on_request() {
        let t = tandem(3);
        let samples = vec![sample(&[1.0, 0.5, 0.25]); 4];
        let lean = run(&t, samples.clone(), 4, false).unwrap();
        assert!(lean.states().is_none());
        let full = run(&t, samples, 4, true).unwrap();
        let states = full.states().unwrap();
        assert_eq!(states.len(), 5); // x(0) through x(4)
        assert_eq!(states[0], zeros(3));
        // departures never decrease from cycle to cycle
        for w in states.windows(2) {
            for (a, b) in w[0].iter().zip(&w[1]) {
                assert!(a <= b);
            }
        }
    }

    #[test]
    fn run_reports_sample_underrun_and_zero_cycles() {
        let t = tandem(2);
        let samples = vec![sample(&[1.0, 1.0]); 3];
        let err = run(&t, samples.clone(), 5, false).unwrap_err();
        assert!(matches!(err, DynamicsError::SampleUnderrun { got: 3, needed: 5 }));
        let err = run(&t, samples, 0, false).unwrap_err();
        assert!(matches!(err, DynamicsError::ZeroCycles));
    }

    #[test]
    fn norm_bounds_bracket_and_meet_the_known_cases() {
        // single cycle: lower = ‖T‖ and upper = ‖T‖ + p·‖T‖
        let s = vec![sample(&[2.0, 7.0, 1.0])];
        let (lo, hi) = cycle_norm_bounds(&s, 3, 1).unwrap();
        assert_eq!(lo, 7.0);
        assert_eq!(hi, 7.0 + 3.0 * 7.0);

        // constant unit services: lower = k, upper = k + p
        let s = vec![sample(&[1.0; 4]); 6];
        let (lo, hi) = cycle_norm_bounds(&s, 2, 6).unwrap();
        assert_eq!(lo, 6.0);
        assert_eq!(hi, 8.0);
    }

    #[test]
    fn envelopes_bracket_every_simulated_norm() {
        let t = diamond5();
        let samples: Vec<ServiceSample> = (0..40)
            .map(|k| {
                sample(&[
                    (k % 3) as f64 * 0.5,
                    1.0,
                    (k % 5) as f64 * 0.25,
                    2.0,
                    (k % 2) as f64,
                ])
            })
            .collect();
        let traj = run(&t, samples.clone(), 40, false).unwrap();
        for k in 1..=40 {
            let (lo, hi) = cycle_norm_bounds(&samples, t.longest_path_length(), k).unwrap();
            assert_eq!(traj.lower_envelope()[k - 1], lo);
            assert_eq!(traj.upper_envelope()[k - 1], hi);
            assert!(lo <= traj.cycle_norm(k) && traj.cycle_norm(k) <= hi);
        }
    }

    #[test]
    fn batch_means_std_err_of_constant_increments_is_zero() {
        let t = Topology::new(1, &[]).unwrap();
        let samples = vec![sample(&[2.0]); 100];
        let traj = run(&t, samples, 100, false).unwrap();
        assert_eq!(traj.batch_means_std_err(20), Some(0.0));
        let short = run(&t, vec![sample(&[2.0]); 3], 3, false).unwrap();
        assert_eq!(short.batch_means_std_err(20), None);
    }
}
