//! Service-time models, seeded sampling and mean cycle time bounds.
//!
//! For i.i.d. service cycles the long-run mean cycle time γ = lim ‖x(k)‖/k
//! of the network dynamics is bracketed by two one-cycle quantities,
//!
//! ```text
//! max_i E[τ_i]  ≤  γ  ≤  E[max_i τ_i],
//! ```
//!
//! the largest mean service time from below and the mean of the largest
//! service time from above. The lower bound is analytic for every model
//! here; the upper bound — an expected maximum — is evaluated by closed
//! form, by quadrature of the survival function `∫₀^∞ (1 − Π_i F_i(t)) dt`,
//! or by seeded Monte Carlo, whichever the model admits.

use crate::dynamics::{self, DynamicsError, ServiceSample};
use crate::network::Topology;
use crate::quad::{self, QuadError};
use crate::rng::{stream_id, stream_rng, StreamContext};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("{what} must be positive and finite, got {value}")]
    InvalidParameter { what: &'static str, value: f64 },
    #[error("{what} must be finite and non-negative, got {value}")]
    NegativeParameter { what: &'static str, value: f64 },
    #[error("erlang shape must be at least 1")]
    ZeroShape,
    #[error("model needs at least one node")]
    NoNodes,
    #[error("coefficient matrix must be square with one row per node, got a row of {rows} for {nodes} nodes")]
    CoefficientShape { rows: usize, nodes: usize },
    #[error("coefficient ({row}, {col}) is {value}, but must be finite and non-negative")]
    InvalidCoefficient { row: usize, col: usize, value: f64 },
    #[error("mixture weight a = {a} outside [{min:.6}, 1] for {nodes} nodes")]
    MixtureWeightRange { a: f64, min: f64, nodes: usize },
    #[error("model spec: {0}")]
    Parse(String),
}

/// A stochastic (or degenerate) specification of one cycle's service times
/// τ_1, …, τ_n, sampled i.i.d. across cycles.
#[derive(Debug, Clone, PartialEq)]
pub enum ServiceModel {
    /// Fixed service times; zero variance.
    Deterministic { values: Vec<f64> },
    /// τ_i ~ Exp(mean mᵢ), independent across nodes.
    IndependentExponential { means: Vec<f64> },
    /// τ_i = ξ_i / r with ξ_i a sum of r unit exponentials, i.i.d. per
    /// node, so E[τ_i] = 1 and Var[τ_i] = 1/r.
    ScaledErlang { shape: u32, nodes: usize },
    /// τ_i = Σ_j a_ij ξ_j over a shared pool of i.i.d. unit-exponential
    /// factors ξ_j; the rows of `coefficients` couple the nodes.
    LinearMixture { coefficients: Vec<Vec<f64>> },
}

impl ServiceModel {
    pub fn deterministic(values: Vec<f64>) -> Result<Self, ModelError> {
        if values.is_empty() {
            return Err(ModelError::NoNodes);
        }
        for &v in &values {
            if !(v.is_finite() && v >= 0.0) {
                return Err(ModelError::NegativeParameter { what: "service time", value: v });
            }
        }
        Ok(Self::Deterministic { values })
    }

    pub fn independent_exponential(means: Vec<f64>) -> Result<Self, ModelError> {
        if means.is_empty() {
            return Err(ModelError::NoNodes);
        }
        for &m in &means {
            if !(m.is_finite() && m > 0.0) {
                return Err(ModelError::InvalidParameter { what: "exponential mean", value: m });
            }
        }
        Ok(Self::IndependentExponential { means })
    }

    pub fn scaled_erlang(shape: u32, nodes: usize) -> Result<Self, ModelError> {
        if shape == 0 {
            return Err(ModelError::ZeroShape);
        }
        if nodes == 0 {
            return Err(ModelError::NoNodes);
        }
        Ok(Self::ScaledErlang { shape, nodes })
    }

    pub fn linear_mixture(coefficients: Vec<Vec<f64>>) -> Result<Self, ModelError> {
        let n = coefficients.len();
        if n == 0 {
            return Err(ModelError::NoNodes);
        }
        for (i, row) in coefficients.iter().enumerate() {
            if row.len() != n {
                return Err(ModelError::CoefficientShape { rows: row.len(), nodes: n });
            }
            for (j, &v) in row.iter().enumerate() {
                if !(v.is_finite() && v >= 0.0) {
                    return Err(ModelError::InvalidCoefficient { row: i + 1, col: j + 1, value: v });
                }
            }
        }
        Ok(Self::LinearMixture { coefficients })
    }

    /// The one-parameter mixture family: weight `a` on a node's own factor
    /// and `(1−a)/(n−1)` on every other factor, so each row sums to one and
    /// E[τ_i] = 1. `a = 1` makes the nodes independent; `a = 1/n` makes all
    /// service times identical. Requires `1/n ≤ a ≤ 1` so every weight
    /// stays non-negative.
    pub fn mixture_family(nodes: usize, a: f64) -> Result<Self, ModelError> {
        if nodes < 2 {
            return Err(ModelError::NoNodes);
        }
        let min = 1.0 / nodes as f64;
        if !(a.is_finite() && a >= min && a <= 1.0) {
            return Err(ModelError::MixtureWeightRange { a, min, nodes });
        }
        let off = (1.0 - a) / (nodes - 1) as f64;
        let coefficients = (0..nodes)
            .map(|i| (0..nodes).map(|j| if i == j { a } else { off }).collect())
            .collect();
        Ok(Self::LinearMixture { coefficients })
    }

    pub fn nodes(&self) -> usize {
        match self {
            Self::Deterministic { values } => values.len(),
            Self::IndependentExponential { means } => means.len(),
            Self::ScaledErlang { nodes, .. } => *nodes,
            Self::LinearMixture { coefficients } => coefficients.len(),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            Self::Deterministic { .. } => "deterministic",
            Self::IndependentExponential { .. } => "exponential",
            Self::ScaledErlang { .. } => "erlang",
            Self::LinearMixture { .. } => "mixture",
        }
    }

    /// E[τ_i] per node. Mixture rows are summed pairwise with the diagonal
    /// added last, so rows designed to have unit mean come out exactly 1.
    pub fn mean_service_times(&self) -> Vec<f64> {
        match self {
            Self::Deterministic { values } => values.clone(),
            Self::IndependentExponential { means } => means.clone(),
            Self::ScaledErlang { nodes, .. } => vec![1.0; *nodes],
            Self::LinearMixture { coefficients } => coefficients
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let off: Vec<f64> = row
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, &v)| v)
                        .collect();
                    pairwise_sum(&off) + row[i]
                })
                .collect(),
        }
    }

    /// (mean, variance) of one component when the components are i.i.d.
    /// Identical mixture rows make the components equal rather than
    /// independent, so mixtures always return `None`.
    pub fn iid_component_moments(&self) -> Option<(f64, f64)> {
        match self {
            Self::Deterministic { values } => {
                let c = values[0];
                values.iter().all(|&v| v == c).then_some((c, 0.0))
            }
            Self::IndependentExponential { means } => {
                let m = means[0];
                means.iter().all(|&v| v == m).then_some((m, m * m))
            }
            Self::ScaledErlang { shape, .. } => Some((1.0, 1.0 / f64::from(*shape))),
            Self::LinearMixture { .. } => None,
        }
    }

    /// Parses the model spec format against a known node count:
    ///
    /// ```text
    /// model deterministic c1 ... cn
    /// model exponential m1 ... mn
    /// model erlang r
    /// model mixture a
    /// model mixture-full a11 ... a1n a21 ... ann
    /// ```
    ///
    /// The leading `model` keyword is optional; `#` comments run to the end
    /// of their line.
    pub fn parse(spec: &str, nodes: usize) -> Result<Self, ModelError> {
        let cleaned: Vec<&str> = spec
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(str::split_whitespace)
            .collect();
        let mut tokens = cleaned.as_slice();
        if tokens.first() == Some(&"model") {
            tokens = &tokens[1..];
        }
        let (family, rest) =
            tokens.split_first().ok_or_else(|| ModelError::Parse("empty model spec".into()))?;
        let model = match *family {
            "deterministic" => Self::deterministic(parse_floats(rest, nodes, "service time")?)?,
            "exponential" => Self::independent_exponential(parse_floats(rest, nodes, "mean")?)?,
            "erlang" => {
                let [tok] = rest else {
                    return Err(ModelError::Parse(format!(
                        "`erlang` takes exactly one shape parameter, got {}",
                        rest.len()
                    )));
                };
                let shape = tok
                    .parse::<u32>()
                    .map_err(|_| ModelError::Parse(format!("invalid erlang shape `{tok}`")))?;
                Self::scaled_erlang(shape, nodes)?
            }
            "mixture" => {
                let [tok] = rest else {
                    return Err(ModelError::Parse(format!(
                        "`mixture` takes exactly one weight, got {}",
                        rest.len()
                    )));
                };
                let a = parse_float(tok, "mixture weight")?;
                Self::mixture_family(nodes, a)?
            }
            "mixture-full" => {
                let flat = parse_floats(rest, nodes * nodes, "coefficient")?;
                let rows = flat.chunks(nodes).map(<[f64]>::to_vec).collect();
                Self::linear_mixture(rows)?
            }
            other => return Err(ModelError::Parse(format!("unknown model family `{other}`"))),
        };
        Ok(model)
    }
}

fn parse_float(tok: &str, what: &str) -> Result<f64, ModelError> {
    tok.parse::<f64>().map_err(|_| ModelError::Parse(format!("invalid {what} `{tok}`")))
}

fn parse_floats(tokens: &[&str], expected: usize, what: &str) -> Result<Vec<f64>, ModelError> {
    if tokens.len() != expected {
        return Err(ModelError::Parse(format!(
            "expected {expected} {what} values, got {}",
            tokens.len()
        )));
    }
    tokens.iter().map(|t| parse_float(t, what)).collect()
}

fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

/// Draws one cycle's service times per call; infinite, and deterministic
/// given `(model, seed, replication)`. Each node (or mixture factor) owns
/// its own stream, see [`crate::rng`].
#[derive(Debug, Clone)]
pub struct ModelSampler {
    model: ServiceModel,
    streams: Vec<ChaCha8Rng>,
}

impl ModelSampler {
    pub fn new(model: &ServiceModel, seed: u64, replication: u32) -> Self {
        Self::with_context(model, seed, replication, StreamContext::Simulation)
    }

    pub(crate) fn with_context(
        model: &ServiceModel,
        seed: u64,
        replication: u32,
        context: StreamContext,
    ) -> Self {
        let streams = (0..model.nodes())
            .map(|j| stream_rng(seed, stream_id(context, replication, j as u32)))
            .collect();
        Self { model: model.clone(), streams }
    }

    pub fn sample(&mut self) -> ServiceSample {
        let tau = match &self.model {
            ServiceModel::Deterministic { values } => values.clone(),
            ServiceModel::IndependentExponential { means } => {
                means.iter().zip(&mut self.streams).map(|(&m, rng)| exp_draw(rng, m)).collect()
            }
            ServiceModel::ScaledErlang { shape, nodes } => {
                let r = *shape;
                (0..*nodes)
                    .map(|i| {
                        let rng = &mut self.streams[i];
                        let sum: f64 = (0..r).map(|_| exp_draw(rng, 1.0)).sum();
                        sum / f64::from(r)
                    })
                    .collect()
            }
            ServiceModel::LinearMixture { coefficients } => {
                let factors: Vec<f64> =
                    self.streams.iter_mut().map(|rng| exp_draw(rng, 1.0)).collect();
                coefficients
                    .iter()
                    .map(|row| row.iter().zip(&factors).map(|(&a, &x)| a * x).sum())
                    .collect()
            }
        };
        ServiceSample::new(tau).expect("sampled service times are finite and non-negative")
    }
}

impl Iterator for ModelSampler {
    type Item = ServiceSample;

    fn next(&mut self) -> Option<ServiceSample> {
        Some(self.sample())
    }
}

/// Inverse-CDF exponential draw with the given mean.
fn exp_draw(rng: &mut ChaCha8Rng, mean: f64) -> f64 {
    let u: f64 = rng.random();
    -mean * (1.0 - u).ln()
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum EstimateError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("model has {model_nodes} nodes but the topology has {topology_nodes}")]
    NodeMismatch { model_nodes: usize, topology_nodes: usize },
    #[error("no closed form for the expected maximum of the {family} model")]
    NoClosedForm { family: &'static str },
    #[error("{method} evaluation is not available for the {family} model")]
    MethodUnsupported { family: &'static str, method: &'static str },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(
        "monte carlo budget of {draws} draws exhausted before the target standard error \
         {target:.3e} (partial estimate {partial:.9} ± {std_err:.3e})"
    )]
    McBudgetExhausted { draws: u64, target: f64, partial: f64, std_err: f64 },
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// How to evaluate the expected-maximum upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperBoundMethod {
    /// Closed form when available, else quadrature, else Monte Carlo.
    Auto,
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

/// How an upper bound actually was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperBoundKind {
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

impl fmt::Display for UpperBoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ClosedForm => "closed-form",
            Self::Quadrature => "quadrature",
            Self::MonteCarlo => "monte-carlo",
        })
    }
}

/// An evaluated upper bound with its provenance and error estimate.
#[derive(Debug, Clone, Copy)]
pub struct UpperBound {
    pub value: f64,
    /// Absolute error estimate: 0 for closed forms, the quadrature error
    /// bound plus the tail cutoff, or the Monte Carlo standard error.
    pub abs_error: f64,
    pub method: UpperBoundKind,
}

/// Knobs for [`cycle_time_upper_bound`].
#[derive(Debug, Clone, Copy)]
pub struct UpperBoundOpts {
    /// Absolute tolerance for the survival-function quadrature.
    pub quad_abs_tol: f64,
    /// The integration cutoff grows until the analytic bound on the tail
    /// of the integrand falls below this.
    pub quad_tail_tol: f64,
    pub quad_max_panels: usize,
    /// Monte Carlo draw budget.
    pub mc_draws: u64,
    /// Optional precision goal: stop once the standard error drops below
    /// this, or fail if the budget runs out first.
    pub mc_target_std_err: Option<f64>,
    pub seed: u64,
    pub replication: u32,
}

impl Default for UpperBoundOpts {
    fn default() -> Self {
        Self {
            quad_abs_tol: 1e-10,
            quad_tail_tol: 1e-12,
            quad_max_panels: 4096,
            mc_draws: 10_000_000,
            mc_target_std_err: None,
            seed: 42,
            replication: 0,
        }
    }
}

/// The lower bound max_i E[τ_i]: the network can never cycle faster than
/// its slowest node on average.
pub fn cycle_time_lower_bound(model: &ServiceModel) -> f64 {
    model.mean_service_times().into_iter().fold(f64::NEG_INFINITY, f64::max)
}

/// The upper bound E[max_i τ_i] on the mean cycle time.
pub fn cycle_time_upper_bound(
    model: &ServiceModel,
    method: UpperBoundMethod,
    opts: &UpperBoundOpts,
) -> Result<UpperBound, EstimateError> {
    match method {
        UpperBoundMethod::Auto => {
            if let Ok(b) = upper_closed_form(model) {
                Ok(b)
            } else if quadrature_supported(model) {
                upper_quadrature(model, opts)
            } else {
                upper_monte_carlo(model, opts)
            }
        }
        UpperBoundMethod::ClosedForm => upper_closed_form(model),
        UpperBoundMethod::Quadrature => {
            if quadrature_supported(model) {
                upper_quadrature(model, opts)
            } else {
                Err(EstimateError::MethodUnsupported {
                    family: model.family(),
                    method: "quadrature",
                })
            }
        }
        UpperBoundMethod::MonteCarlo => upper_monte_carlo(model, opts),
    }
}

/// Σ_{i=1..n} 1/i, the expected maximum of n i.i.d. unit exponentials.
pub fn harmonic(n: usize) -> f64 {
    (1..=n).map(|i| 1.0 / i as f64).sum()
}

fn upper_closed_form(model: &ServiceModel) -> Result<UpperBound, EstimateError> {
    let value = match model {
        ServiceModel::Deterministic { values } => {
            values.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
        }
        ServiceModel::IndependentExponential { means } => {
            let m = means[0];
            if !means.iter().all(|&v| v == m) {
                return Err(EstimateError::NoClosedForm { family: model.family() });
            }
            m * harmonic(means.len())
        }
        ServiceModel::ScaledErlang { shape: 1, nodes } => harmonic(*nodes),
        ServiceModel::ScaledErlang { .. } => {
            return Err(EstimateError::NoClosedForm { family: model.family() })
        }
        ServiceModel::LinearMixture { coefficients } => {
            // identical rows mean identical service times: the maximum is
            // any single component, whose mean is the row sum
            let first = &coefficients[0];
            if !coefficients.iter().all(|row| row == first) {
                return Err(EstimateError::NoClosedForm { family: model.family() });
            }
            model.mean_service_times()[0]
        }
    };
    Ok(UpperBound { value, abs_error: 0.0, method: UpperBoundKind::ClosedForm })
}

fn quadrature_supported(model: &ServiceModel) -> bool {
    matches!(
        model,
        ServiceModel::IndependentExponential { .. } | ServiceModel::ScaledErlang { .. }
    )
}

fn upper_quadrature(
    model: &ServiceModel,
    opts: &UpperBoundOpts,
) -> Result<UpperBound, EstimateError> {
    type F = Box<dyn Fn(f64) -> f64>;
    let (survival, tail): (F, F) = match model {
        ServiceModel::IndependentExponential { means } => {
            let means = means.clone();
            let tail_means = means.clone();
            (
                Box::new(move |t: f64| {
                    1.0 - means.iter().map(|&m| 1.0 - (-t / m).exp()).product::<f64>()
                }),
                // union bound on the tail: ∫_T^∞ Σ e^{-t/mᵢ} dt = Σ mᵢ e^{-T/mᵢ}
                Box::new(move |t: f64| tail_means.iter().map(|&m| m * (-t / m).exp()).sum()),
            )
        }
        ServiceModel::ScaledErlang { shape, nodes } => {
            let r = *shape;
            let n = *nodes;
            (
                Box::new(move |t: f64| 1.0 - erlang_cdf(r, f64::from(r) * t).powi(n as i32)),
                Box::new(move |t: f64| n as f64 * scaled_erlang_tail_integral(r, t)),
            )
        }
        _ => unreachable!("caller checks quadrature_supported"),
    };

    let mut cutoff: f64 = 1.0;
    while tail(cutoff) >= opts.quad_tail_tol && cutoff < 1e12 {
        cutoff *= 2.0;
    }
    let tail_bound = tail(cutoff);
    let r = quad::integrate(survival, 0.0, cutoff, opts.quad_abs_tol, opts.quad_max_panels)?;
    Ok(UpperBound {
        value: r.value,
        abs_error: r.error_bound + tail_bound,
        method: UpperBoundKind::Quadrature,
    })
}

/// CDF of a rate-1 Erlang (integer-shape gamma) variate.
fn erlang_cdf(shape: u32, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    // survival = e^{-x} Σ_{j<r} x^j/j!, accumulated through the Poisson
    // pmf recurrence so no individual term overflows
    let mut term = (-x).exp();
    if term == 0.0 {
        return 1.0;
    }
    let mut survival = term;
    for j in 1..shape {
        term *= x / f64::from(j);
        survival += term;
    }
    (1.0 - survival).clamp(0.0, 1.0)
}

/// ∫_T^∞ P(ξ/r > t) dt for ξ ~ Erlang(shape r, rate 1), in closed form:
/// e^{-rT}/r · Σ_{l<r} (r−l)(rT)^l/l!.
fn scaled_erlang_tail_integral(shape: u32, t: f64) -> f64 {
    let r = f64::from(shape);
    let x = r * t;
    let mut pmf = (-x).exp();
    if pmf == 0.0 {
        return 0.0;
    }
    let mut sum = r * pmf;
    for l in 1..shape {
        pmf *= x / f64::from(l);
        sum += (r - f64::from(l)) * pmf;
    }
    sum / r
}

fn upper_monte_carlo(
    model: &ServiceModel,
    opts: &UpperBoundOpts,
) -> Result<UpperBound, EstimateError> {
    assert!(opts.mc_draws >= 2, "monte carlo needs at least two draws");
    let mut sampler =
        ModelSampler::with_context(model, opts.seed, opts.replication, StreamContext::Estimator);
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    let mut draws = 0u64;
    const BLOCK: u64 = 65_536;

    fn stats(sum: f64, sum_sq: f64, n: u64) -> (f64, f64) {
        let n = n as f64;
        let mean = sum / n;
        let var = ((sum_sq - sum * sum / n) / (n - 1.0)).max(0.0);
        (mean, (var / n).sqrt())
    }

    loop {
        let block = BLOCK.min(opts.mc_draws - draws);
        for _ in 0..block {
            let s = sampler.sample();
            let max = s.as_slice().iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
            sum += max;
            sum_sq += max * max;
        }
        draws += block;
        let (mean, se) = stats(sum, sum_sq, draws);
        match opts.mc_target_std_err {
            Some(target) if se <= target => {
                return Ok(UpperBound { value: mean, abs_error: se, method: UpperBoundKind::MonteCarlo });
            }
            Some(target) if draws >= opts.mc_draws => {
                return Err(EstimateError::McBudgetExhausted {
                    draws,
                    target,
                    partial: mean,
                    std_err: se,
                });
            }
            None if draws >= opts.mc_draws => {
                return Ok(UpperBound { value: mean, abs_error: se, method: UpperBoundKind::MonteCarlo });
            }
            _ => {}
        }
    }
}

/// Moment bound on the expected maximum of `count` i.i.d. variables:
///
/// ```text
/// E[max ξ_i] ≤ mean + (count − 1)/√(2·count − 1) · √variance
/// ```
///
/// (Gumbel 1954; Hartley & David 1954.) Exact moments in, a guaranteed
/// dominating value out — no distributional detail needed.
pub fn gumbel_hartley_bound(mean: f64, variance: f64, count: u64) -> f64 {
    assert!(variance >= 0.0, "variance must be non-negative");
    assert!(count >= 1, "need at least one variable");
    let k = count as f64;
    mean + (k - 1.0) / (2.0 * k - 1.0).sqrt() * variance.sqrt()
}

/// A finite-horizon simulation estimate γ̂ = ‖x(k)‖ / k.
#[derive(Debug, Clone, Copy)]
pub struct CycleEstimate {
    pub gamma: f64,
    /// Batch-means standard error; `None` for very short runs.
    pub std_err: Option<f64>,
    pub cycles: usize,
    pub seed: u64,
}

/// The two analytic bounds, how the upper one was computed, and optionally
/// a simulation estimate that should fall between them.
#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub lower: f64,
    pub upper: UpperBound,
    pub estimate: Option<CycleEstimate>,
}

impl BoundsReport {
    /// True when the estimate escapes `[lower, upper]` by more than three
    /// standard errors — a bug, or far too few cycles. Finite-horizon
    /// estimates sit a pipeline-fill term of order 1/k above the asymptotic
    /// rate and fluctuate around it, so noise-sized excursions are normal.
    pub fn bracketing_violated(&self) -> bool {
        match &self.estimate {
            None => false,
            Some(e) => {
                let guard = 3.0 * e.std_err.unwrap_or(0.0);
                e.gamma < self.lower - guard || e.gamma > self.upper.value + guard
            }
        }
    }
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lower bound (max mean service time): {:.6}", self.lower)?;
        writeln!(
            f,
            "upper bound (mean max service time): {:.6}  [{}, err <= {:.3e}]",
            self.upper.value, self.upper.method, self.upper.abs_error
        )?;
        if let Some(e) = &self.estimate {
            match e.std_err {
                Some(se) => writeln!(
                    f,
                    "mean cycle time estimate:            {:.6} ± {:.6}  (cycles {}, seed {})",
                    e.gamma, se, e.cycles, e.seed
                )?,
                None => writeln!(
                    f,
                    "mean cycle time estimate:            {:.6}  (cycles {}, seed {})",
                    e.gamma, e.cycles, e.seed
                )?,
            }
            let status = if self.bracketing_violated() { "VIOLATED" } else { "ok" };
            writeln!(f, "bracketing: {status}")?;
        }
        Ok(())
    }
}

/// Simulates `cycles` service cycles and returns γ̂ with its batch-means
/// standard error. Deterministic in `(model, seed, replication)`.
pub fn simulate_mean_cycle(
    model: &ServiceModel,
    topology: &Topology,
    cycles: usize,
    seed: u64,
    replication: u32,
) -> Result<CycleEstimate, EstimateError> {
    if model.nodes() != topology.node_count() {
        return Err(EstimateError::NodeMismatch {
            model_nodes: model.nodes(),
            topology_nodes: topology.node_count(),
        });
    }
    let mut sampler = ModelSampler::new(model, seed, replication);
    let traj = dynamics::run(topology, &mut sampler, cycles, false)?;
    Ok(CycleEstimate {
        gamma: traj.mean_cycle_estimate(),
        std_err: traj.batch_means_std_err(20),
        cycles,
        seed,
    })
}

/// Full report: the analytic bounds plus a γ̂ simulation, all derived from
/// one master seed.
pub fn estimate_mean_cycle_time(
    model: &ServiceModel,
    topology: &Topology,
    cycles: usize,
    seed: u64,
) -> Result<BoundsReport, EstimateError> {
    let opts = UpperBoundOpts { seed, ..UpperBoundOpts::default() };
    let upper = cycle_time_upper_bound(model, UpperBoundMethod::Auto, &opts)?;
    let estimate = simulate_mean_cycle(model, topology, cycles, seed, 0)?;
    Ok(BoundsReport { lower: cycle_time_lower_bound(model), upper, estimate: Some(estimate) })
}
