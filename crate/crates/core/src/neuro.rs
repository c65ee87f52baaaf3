//! Gap-junction channel model: thermal noise, binary-input Gaussian channel
//! capacity, information-flow time bounds, and the star-topology check for trees.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NeuroError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("signal levels must satisfy v0 <= v1, got v0={v0}, v1={v1}")]
    InvalidLevels { v0: f64, v1: f64 },
    #[error("entropy integral did not reach {target:e} bits (achieved {achieved:e})")]
    Integration { target: f64, achieved: f64 },
    #[error("junction count must be at least 1")]
    ZeroCount,
    #[error("tree enumeration supports 3 <= n <= 9, got {0}")]
    OutOfRange(usize),
}

pub const BOLTZMANN: f64 = 1.38e-23;

/// Absolute tolerance of the mixture-entropy integral, in bits.
pub const ENTROPY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    /// Ohms.
    pub resistance: f64,
    /// Kelvin.
    pub temperature: f64,
    /// Hertz; also the symbol rate.
    pub bandwidth: f64,
    /// Volts.
    pub v0: f64,
    pub v1: f64,
    pub boltzmann: f64,
}

impl Default for ChannelModel {
    /// A C. elegans gap junction between plateau potentials of -70 mV and -35 mV.
    fn default() -> Self {
        Self {
            resistance: 5e9,
            temperature: 298.0,
            bandwidth: 1700.0,
            v0: -70e-3,
            v1: -35e-3,
            boltzmann: BOLTZMANN,
        }
    }
}

fn positive(name: &'static str, value: f64) -> Result<(), NeuroError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(NeuroError::NonPositive { name, value })
    }
}

fn non_negative(name: &'static str, value: f64) -> Result<(), NeuroError> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(NeuroError::NonPositive { name, value })
    }
}

/// Johnson-Nyquist RMS noise voltage `sqrt(4 k_B T R df)`.
pub fn thermal_noise_rms(m: &ChannelModel) -> Result<f64, NeuroError> {
    non_negative("resistance", m.resistance)?;
    non_negative("temperature", m.temperature)?;
    non_negative("bandwidth", m.bandwidth)?;
    positive("boltzmann", m.boltzmann)?;
    Ok((4.0 * m.boltzmann * m.temperature * m.resistance * m.bandwidth).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityResult {
    pub noise_rms: f64,
    pub snr: f64,
    pub bits_per_use: f64,
    pub bits_per_second: f64,
    /// `None` when the channel carries no information.
    pub seconds_per_bit: Option<f64>,
}

pub fn gap_junction_capacity(m: &ChannelModel) -> Result<CapacityResult, NeuroError> {
    positive("resistance", m.resistance)?;
    positive("temperature", m.temperature)?;
    positive("bandwidth", m.bandwidth)?;
    if !(m.v0 <= m.v1) {
        return Err(NeuroError::InvalidLevels { v0: m.v0, v1: m.v1 });
    }
    let noise_rms = thermal_noise_rms(m)?;
    let amplitude = (m.v1 - m.v0) / 2.0;
    let snr = (amplitude / noise_rms).powi(2);
    let bits_per_use = binary_awgn_bits_per_use(snr)?;
    let bits_per_second = bits_per_use * m.bandwidth;
    Ok(CapacityResult {
        noise_rms,
        snr,
        bits_per_use,
        bits_per_second,
        seconds_per_bit: (bits_per_second > 0.0).then(|| 1.0 / bits_per_second),
    })
}

/// Capacity in bits per channel use of `Y = X + N`, `X` equiprobable on
/// `{-sqrt(snr), +sqrt(snr)}`, `N` standard normal: `h(Y) - log2(2 pi e) / 2`.
pub fn binary_awgn_bits_per_use(snr: f64) -> Result<f64, NeuroError> {
    non_negative("snr", snr)?;
    let h = mixture_entropy_bits(snr.sqrt())?;
    Ok((h - gaussian_entropy_bits()).clamp(0.0, 1.0))
}

fn gaussian_entropy_bits() -> f64 {
    0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E).log2()
}

/// `ln p(y)` for the equal mixture of unit normals at `+-a`, computed stably.
fn mixture_ln_density(y: f64, a: f64) -> f64 {
    let l1 = -0.5 * (y - a) * (y - a);
    let l2 = -0.5 * (y + a) * (y + a);
    let hi = l1.max(l2);
    let ln_sum = hi + ((l1 - hi).exp() + (l2 - hi).exp()).ln();
    ln_sum - 0.5 * (2.0 * std::f64::consts::PI).ln() - std::f64::consts::LN_2
}

/// Differential entropy in bits of the mixture with means `+-a`.
fn mixture_entropy_bits(a: f64) -> Result<f64, NeuroError> {
    let integrand = |y: f64| {
        let lp = mixture_ln_density(y, a);
        -lp.exp() * lp / std::f64::consts::LN_2
    };
    // The density is even; integrate [0, a + 10] and double.
    let upper = a + 10.0;
    let panels = (upper / 0.25).ceil().max(1.0) as usize;
    let step = upper / panels as f64;
    let per_panel = ENTROPY_TOLERANCE / 2.0 / panels as f64;
    let mut total = 0.0;
    let mut err = 0.0;
    for i in 0..panels {
        let lo = i as f64 * step;
        let hi = if i + 1 == panels { upper } else { lo + step };
        let (v, e) = adaptive_simpson(&integrand, lo, hi, per_panel, 40);
        total += v;
        err += e;
    }
    if 2.0 * err > ENTROPY_TOLERANCE {
        return Err(NeuroError::Integration {
            target: ENTROPY_TOLERANCE,
            achieved: 2.0 * err,
        });
    }
    Ok(2.0 * total)
}

/// Integral of `f` over `[a, b]` with its estimated absolute error.
fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> (f64, f64) {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> (f64, f64) {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return (left + right + delta / 15.0, delta.abs() / 15.0);
    }
    let (lv, le) = simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1);
    let (rv, re) = simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
    (lv + rv, le + re)
}

/// Capacity of `count` independent junctions in parallel, bits per second.
pub fn parallel_capacity(r: &CapacityResult, count: u32) -> Result<f64, NeuroError> {
    if count == 0 {
        return Err(NeuroError::ZeroCount);
    }
    Ok(f64::from(count) * r.bits_per_second)
}

/// Capacity of a link carrying `mean_count` junctions on average.
pub fn expected_link_capacity(r: &CapacityResult, mean_count: f64) -> Result<f64, NeuroError> {
    positive("mean junction count", mean_count)?;
    Ok(mean_count * r.bits_per_second)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundInput {
    /// Effective diameter in hops (or capacity-weighted units).
    pub effective_diameter: f64,
    /// `log M`, bits.
    pub message_bits: f64,
    /// Bits per second.
    pub capacity: f64,
}

/// Lower bound `D_e log M / C` in seconds on network-wide consensus.
pub fn consensus_time_bound(b: &BoundInput) -> Result<f64, NeuroError> {
    positive("effective diameter", b.effective_diameter)?;
    positive("message volume", b.message_bits)?;
    positive("capacity", b.capacity)?;
    Ok(b.effective_diameter * b.message_bits / b.capacity)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HubSpokeReport {
    pub nodes: usize,
    pub trees: u64,
    pub min_diameter: usize,
    pub minimizers: u64,
    pub stars: u64,
    pub minimizers_are_stars: bool,
}

impl HubSpokeReport {
    /// Minimum diameter 2, attained only by stars.
    pub fn confirms(&self) -> bool {
        self.min_diameter == 2 && self.minimizers_are_stars && self.minimizers == self.stars
    }
}

/// Enumerates every labeled tree on `n` nodes through its Pruefer sequence and
/// records which trees attain the smallest diameter.
pub fn verify_hub_and_spoke(n: usize) -> Result<HubSpokeReport, NeuroError> {
    if !(3..=9).contains(&n) {
        return Err(NeuroError::OutOfRange(n));
    }
    let len = n - 2;
    let total = (n as u64).pow(len as u32);
    // Partition by the leading symbol; each worker walks its suffixes in order.
    let chunk = total / n as u64;
    let partial: Vec<Tally> = (0..n as u64)
        .into_par_iter()
        .map(|first| {
            let mut t = Tally::default();
            let mut seq = vec![0usize; len];
            let mut adj = vec![Vec::with_capacity(n); n];
            for idx in first * chunk..(first + 1) * chunk {
                let mut rest = idx;
                for slot in seq.iter_mut().rev() {
                    *slot = (rest % n as u64) as usize;
                    rest /= n as u64;
                }
                decode_pruefer(&seq, n, &mut adj);
                let d = tree_diameter(&adj);
                let star = adj.iter().any(|a| a.len() == n - 1);
                t.add(d, star);
            }
            t
        })
        .collect();
    let mut all = Tally::default();
    for t in partial {
        all.merge(t);
    }
    Ok(HubSpokeReport {
        nodes: n,
        trees: total,
        min_diameter: all.min_diameter,
        minimizers: all.minimizers,
        stars: all.stars,
        minimizers_are_stars: all.non_star_minimizers == 0,
    })
}

#[derive(Debug, Clone, Copy)]
struct Tally {
    min_diameter: usize,
    minimizers: u64,
    non_star_minimizers: u64,
    stars: u64,
}

impl Default for Tally {
    fn default() -> Self {
        Self {
            min_diameter: usize::MAX,
            minimizers: 0,
            non_star_minimizers: 0,
            stars: 0,
        }
    }
}

impl Tally {
    fn add(&mut self, d: usize, star: bool) {
        self.stars += u64::from(star);
        if d < self.min_diameter {
            self.min_diameter = d;
            self.minimizers = 0;
            self.non_star_minimizers = 0;
        }
        if d == self.min_diameter {
            self.minimizers += 1;
            self.non_star_minimizers += u64::from(!star);
        }
    }

    fn merge(&mut self, o: Tally) {
        self.stars += o.stars;
        if o.min_diameter < self.min_diameter {
            self.min_diameter = o.min_diameter;
            self.minimizers = o.minimizers;
            self.non_star_minimizers = o.non_star_minimizers;
        } else if o.min_diameter == self.min_diameter {
            self.minimizers += o.minimizers;
            self.non_star_minimizers += o.non_star_minimizers;
        }
    }
}

/// Fills `adj` with the tree encoded by `seq` (length `n - 2`).
fn decode_pruefer(seq: &[usize], n: usize, adj: &mut [Vec<usize>]) {
    for a in adj.iter_mut() {
        a.clear();
    }
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let link = |u: usize, v: usize, adj: &mut [Vec<usize>]| {
        adj[u].push(v);
        adj[v].push(u);
    };
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        link(leaf, s, adj);
        degree[leaf] = 0;
        degree[s] -= 1;
    }
    let mut last = (0..n).filter(|&v| degree[v] == 1);
    let u = last.next().expect("two nodes remain");
    let v = last.next().expect("two nodes remain");
    link(u, v, adj);
}

/// Diameter of a tree by two breadth-first sweeps.
fn tree_diameter(adj: &[Vec<usize>]) -> usize {
    let far = |start: usize| {
        let mut dist = vec![usize::MAX; adj.len()];
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        let mut last = start;
        while let Some(u) = queue.pop_front() {
            last = u;
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        (last, dist[last])
    };
    let (end, _) = far(0);
    far(end).1
}
