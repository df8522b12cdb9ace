//! Exact samplers for the marked Hawkes process started empty at time 0.
//!
//! Two independent constructions are provided: Ogata thinning driven by the
//! conditional intensity, and the immigration-birth (cluster) construction.
//! Both produce an [`EventStream`] on `[0, T)`.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`) seeded with
//! `seed_from_u64(seed)` and positioned on stream `stream`; the output for a
//! given [`RngSpec`] is identical on every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HawkesError, Result};
use crate::model::{HawkesModel, KernelSpec};

/// Default cap on the number of events in one replica.
pub const DEFAULT_MAX_EVENTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSpec {
    pub seed: u64,
    pub stream: u64,
}

impl RngSpec {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngSpec { seed, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }

    /// Spec of the `i`-th replica derived from this one.
    pub fn replica(&self, i: u64) -> Self {
        RngSpec { seed: self.seed, stream: self.stream.wrapping_add(i) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub time: f64,
    pub mark: f64,
}

/// Time-ordered marked events on `[0, horizon)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventStream {
    pub horizon: f64,
    pub events: Vec<Event>,
}

impl EventStream {
    /// `N_T`.
    pub fn count(&self) -> usize {
        self.events.len()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.events.iter().map(|e| e.time)
    }

    pub fn first_time(&self) -> Option<f64> {
        self.events.first().map(|e| e.time)
    }
}

/// Which exact construction to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Sampler {
    #[default]
    Thinning,
    Cluster,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimOptions {
    pub max_events: usize,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions { max_events: DEFAULT_MAX_EVENTS }
    }
}

/// Diagnostics of one cluster-construction run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClusterStats {
    pub immigrants: usize,
    /// Events whose offspring were drawn (every retained event).
    pub parents: usize,
    /// Offspring drawn, including those pruned beyond the horizon.
    pub offspring: usize,
}

fn check_inputs(model: &HawkesModel, horizon: f64) -> Result<()> {
    model.check()?;
    model.require_stable()?;
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(HawkesError::invalid(format!("horizon {horizon} must be > 0")));
    }
    Ok(())
}

/// Excitation `Z_t` kept incrementally for the exponential kernel and by
/// direct summation otherwise.
enum Excitation {
    Exp { beta: f64, level: f64, at: f64 },
    Direct { kernel: KernelSpec, events: Vec<(f64, f64)> },
}

impl Excitation {
    fn new(kernel: KernelSpec) -> Self {
        match kernel {
            KernelSpec::Exp { beta } => Excitation::Exp { beta, level: 0.0, at: 0.0 },
            k => Excitation::Direct { kernel: k, events: Vec::new() },
        }
    }

    /// `sum h(t - tau_i, a_i)` over recorded events (all of which precede `t`).
    fn at(&self, t: f64) -> f64 {
        match self {
            Excitation::Exp { beta, level, at } => level * (-beta * (t - at)).exp(),
            Excitation::Direct { kernel, events } => {
                events.iter().map(|&(tau, a)| kernel.h(t - tau, a)).sum()
            }
        }
    }

    fn advance(&mut self, t: f64) {
        if let Excitation::Exp { beta, level, at } = self {
            *level *= (-*beta * (t - *at)).exp();
            *at = t;
        }
    }

    fn push(&mut self, t: f64, a: f64) {
        match self {
            Excitation::Exp { beta, level, at } => {
                *level = *level * (-*beta * (t - *at)).exp() + a * *beta;
                *at = t;
            }
            Excitation::Direct { events, .. } => events.push((t, a)),
        }
    }
}

pub fn simulate_thinning(model: &HawkesModel, horizon: f64, rng: RngSpec) -> Result<EventStream> {
    simulate_thinning_with(model, horizon, rng, SimOptions::default())
}

/// Ogata thinning. Both kernel families are non-increasing in time, so the
/// intensity just after the current clock dominates the intensity until the
/// next accepted event.
pub fn simulate_thinning_with(
    model: &HawkesModel,
    horizon: f64,
    rng: RngSpec,
    opts: SimOptions,
) -> Result<EventStream> {
    check_inputs(model, horizon)?;
    let mut rng = rng.rng();
    let mut excitation = Excitation::new(model.kernel);
    let mut events = Vec::new();
    let mut t = 0.0;
    loop {
        let bound = model.nu + excitation.at(t);
        t += Exp::new(bound).expect("positive bound").sample(&mut rng);
        if t >= horizon {
            break;
        }
        let intensity = model.nu + excitation.at(t);
        // no acceptance draw when the bound is attained (e.g. zero excitation)
        if intensity >= bound || rand::Rng::random::<f64>(&mut rng) * bound <= intensity {
            let mark = model.marks.sample(&mut rng);
            excitation.push(t, mark);
            events.push(Event { time: t, mark });
            if events.len() > opts.max_events {
                return Err(HawkesError::ExplosionGuard(opts.max_events));
            }
        } else {
            excitation.advance(t);
        }
    }
    Ok(EventStream { horizon, events })
}

pub fn simulate_cluster(model: &HawkesModel, horizon: f64, rng: RngSpec) -> Result<EventStream> {
    simulate_cluster_with(model, horizon, rng, SimOptions::default()).map(|(s, _)| s)
}

/// Immigration-birth construction: Poisson(`nu`) immigrants on `[0, T)`; each
/// event draws its mark, then `K ~ Poisson(H(a))` children at i.i.d. delays
/// with density `h(s, a) / H(a)`. Children at or beyond `T` are pruned together
/// with their descendants.
pub fn simulate_cluster_with(
    model: &HawkesModel,
    horizon: f64,
    rng: RngSpec,
    opts: SimOptions,
) -> Result<(EventStream, ClusterStats)> {
    check_inputs(model, horizon)?;
    let mut rng = rng.rng();
    let poisson = |mean: f64, rng: &mut ChaCha8Rng| -> usize {
        if mean > 0.0 {
            Poisson::new(mean).expect("finite mean").sample(rng) as usize
        } else {
            0
        }
    };

    let immigrants = poisson(model.nu * horizon, &mut rng);
    let mut pending: Vec<f64> = (0..immigrants)
        .map(|_| horizon * rand::Rng::random::<f64>(&mut rng))
        .collect();
    let mut stats = ClusterStats { immigrants, ..Default::default() };
    let mut events = Vec::with_capacity(immigrants);

    while let Some(t) = pending.pop() {
        let mark = model.marks.sample(&mut rng);
        events.push(Event { time: t, mark });
        if events.len() > opts.max_events {
            return Err(HawkesError::ExplosionGuard(opts.max_events));
        }
        stats.parents += 1;
        let children = poisson(model.kernel.integrated(mark), &mut rng);
        stats.offspring += children;
        for _ in 0..children {
            let child = t + model.kernel.sample_offset(&mut rng);
            if child < horizon {
                pending.push(child);
            }
        }
    }
    events.sort_by(|a, b| a.time.total_cmp(&b.time));
    Ok((EventStream { horizon, events }, stats))
}

pub fn simulate(model: &HawkesModel, horizon: f64, rng: RngSpec, sampler: Sampler) -> Result<EventStream> {
    match sampler {
        Sampler::Thinning => simulate_thinning(model, horizon, rng),
        Sampler::Cluster => simulate_cluster(model, horizon, rng),
    }
}

/// `lambda_t = nu + sum_{tau_i < t} h(t - tau_i, a_i)` at each grid time.
pub fn intensity_path(model: &HawkesModel, stream: &EventStream, grid: &[f64]) -> Vec<f64> {
    grid.iter()
        .map(|&t| {
            model.nu
                + stream
                    .events
                    .iter()
                    .take_while(|e| e.time < t)
                    .map(|e| model.kernel.h(t - e.time, e.mark))
                    .sum::<f64>()
        })
        .collect()
}

/// Compensator `int_0^t lambda_s ds`, exact for both kernel families.
pub fn integrated_intensity(model: &HawkesModel, stream: &EventStream, t: f64) -> f64 {
    model.nu * t
        + stream
            .events
            .iter()
            .take_while(|e| e.time < t)
            .map(|e| model.kernel.integrated(e.mark) * model.kernel.profile_cdf(t - e.time))
            .sum::<f64>()
}

/// Excitation still owed after `t` by events before `t`:
/// `sum_{tau_i < t} int_t^inf h(s - tau_i, a_i) ds`.
pub fn residual_excitation(model: &HawkesModel, stream: &EventStream, t: f64) -> f64 {
    stream
        .events
        .iter()
        .take_while(|e| e.time < t)
        .map(|e| model.kernel.integrated(e.mark) * model.kernel.profile_tail(t - e.time))
        .sum()
}

/// Runs `f` on `replicas` independent streams in parallel; output order
/// follows replica index, so results do not depend on the thread count.
pub fn replicate<T, F>(rng: RngSpec, replicas: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(RngSpec) -> Result<T> + Sync,
{
    (0..replicas as u64).into_par_iter().map(|i| f(rng.replica(i))).collect()
}
