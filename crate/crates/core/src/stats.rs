//! All-pairs distance distributions: quantiles, effective diameter, survival
//! curves, and three-parameter gamma fits with goodness-of-fit statistics.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Gamma};
use statrs::function::gamma::{digamma, ln_gamma};
use thiserror::Error;

use crate::distance::{Distance, DistanceMatrix};

pub const DEFAULT_THRESHOLD: f64 = 0.95;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("distribution has no finite distances")]
    Empty,
    #[error("probability {0} is outside (0, 1)")]
    InvalidProbability(f64),
    #[error("gamma fit needs at least {need} finite samples, got {got}")]
    TooFewSamples { got: usize, need: usize },
    #[error("sample is constant ({0}); a gamma fit is degenerate")]
    Degenerate(f64),
    #[error("shape estimate did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("invalid fit option: {0}")]
    InvalidOption(String),
}

/// Sorted multiset of finite pairwise distances, plus the number of pairs
/// whose distance is infinite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceDistribution {
    values: Vec<f64>,
    unreachable: usize,
}

impl DistanceDistribution {
    /// Collects the `C(n, 2)` unordered pairs of a distance matrix.
    pub fn from_matrix(m: &DistanceMatrix) -> Self {
        Self::from_distances(m.upper_pairs().map(|(_, _, d)| d))
    }

    pub fn from_distances(ds: impl IntoIterator<Item = Distance>) -> Self {
        let mut values = Vec::new();
        let mut unreachable = 0;
        for d in ds {
            match d {
                Distance::Finite(v) => values.push(v),
                Distance::Unreachable => unreachable += 1,
            }
        }
        values.sort_by(f64::total_cmp);
        Self {
            values,
            unreachable,
        }
    }

    /// Arbitrary samples; non-finite values count as unreachable.
    pub fn from_values(vs: impl IntoIterator<Item = f64>) -> Self {
        Self::from_distances(vs.into_iter().map(|v| {
            if v.is_finite() {
                Distance::Finite(v)
            } else {
                Distance::Unreachable
            }
        }))
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn unreachable_pairs(&self) -> usize {
        self.unreachable
    }

    pub fn total_pairs(&self) -> usize {
        self.values.len() + self.unreachable
    }

    /// Fraction of finite distances `<= x`.
    pub fn cdf(&self, x: f64) -> f64 {
        if self.values.is_empty() {
            return f64::NAN;
        }
        self.values.partition_point(|&v| v <= x) as f64 / self.values.len() as f64
    }

    pub fn mean(&self) -> Result<f64, StatsError> {
        if self.values.is_empty() {
            return Err(StatsError::Empty);
        }
        Ok(self.values.iter().sum::<f64>() / self.values.len() as f64)
    }

    /// `Q(p) = inf { x : p <= F(x) }` over the empirical cdf of finite distances.
    pub fn quantile(&self, p: f64) -> Result<f64, StatsError> {
        if !(p > 0.0 && p < 1.0) {
            return Err(StatsError::InvalidProbability(p));
        }
        let n = self.values.len();
        if n == 0 {
            return Err(StatsError::Empty);
        }
        let nf = n as f64;
        // Smallest count k with k/n >= p, using the same division F does.
        let mut k = ((p * nf).ceil() as usize).clamp(1, n);
        while k > 1 && (k - 1) as f64 / nf >= p {
            k -= 1;
        }
        while k < n && (k as f64 / nf) < p {
            k += 1;
        }
        Ok(self.values[k - 1])
    }

    pub fn effective_diameter(&self, threshold: f64) -> Result<f64, StatsError> {
        self.quantile(threshold)
    }

    pub fn diameter(&self) -> Result<Diameter, StatsError> {
        let value = *self.values.last().ok_or(StatsError::Empty)?;
        Ok(Diameter {
            value,
            has_unreachable: self.unreachable > 0,
        })
    }

    /// `S(x) = 1 - F(x)` at every distinct finite distance.
    pub fn survival(&self) -> Result<SurvivalCurve, StatsError> {
        if self.values.is_empty() {
            return Err(StatsError::Empty);
        }
        let n = self.values.len();
        let mut points = Vec::new();
        let mut i = 0;
        while i < n {
            let x = self.values[i];
            let upto = i + self.values[i..].partition_point(|&v| v <= x);
            points.push((x, (n - upto) as f64 / n as f64));
            i = upto;
        }
        Ok(SurvivalCurve { points })
    }

    pub fn summary(&self, threshold: f64) -> Result<DistributionSummary, StatsError> {
        let d = self.diameter()?;
        Ok(DistributionSummary {
            pairs: self.len(),
            unreachable_pairs: self.unreachable,
            diameter: d.value,
            effective_diameter: self.effective_diameter(threshold)?,
            threshold,
            mean: self.mean()?,
        })
    }
}

/// Largest finite distance; `has_unreachable` flags disconnected inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diameter {
    pub value: f64,
    pub has_unreachable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionSummary {
    pub pairs: usize,
    pub unreachable_pairs: usize,
    pub diameter: f64,
    pub effective_diameter: f64,
    pub threshold: f64,
    pub mean: f64,
}

/// `(distance, fraction of pairs strictly farther apart)` at each distinct distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurvivalCurve {
    pub points: Vec<(f64, f64)>,
}

impl SurvivalCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("distance,survival\n");
        for (x, s) in &self.points {
            let _ = writeln!(out, "{x},{s}");
        }
        out
    }

    /// Step-function value at `x` (1 left of the first point).
    pub fn at(&self, x: f64) -> f64 {
        let idx = self.points.partition_point(|&(v, _)| v <= x);
        if idx == 0 {
            1.0
        } else {
            self.points[idx - 1].1
        }
    }
}

/// How the gamma location parameter is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LocationMode {
    /// Profile likelihood over a grid below the sample minimum. Location 0 is
    /// kept unless another grid point beats it by more than `LOCATION_LR_MARGIN`
    /// log-likelihood units.
    Grid,
    Fixed(f64),
}

/// Half the 95% chi-square(1) critical value: a nonzero location must improve the
/// log-likelihood by this much before it replaces location 0.
pub const LOCATION_LR_MARGIN: f64 = 1.920_729_410_347_062;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaFitOptions {
    pub location: LocationMode,
    /// Chi-square bin count; defaults to `clamp(n / 50, 5, 20)`.
    pub bins: Option<usize>,
    pub min_samples: usize,
    pub grid_points: usize,
}

impl Default for GammaFitOptions {
    fn default() -> Self {
        Self {
            location: LocationMode::Grid,
            bins: None,
            min_samples: 50,
            grid_points: 60,
        }
    }
}

/// Three-parameter gamma fit (shape `k`, location, scale `theta`) with
/// chi-square and Kolmogorov-Smirnov goodness of fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaFit {
    pub shape: f64,
    pub location: f64,
    pub scale: f64,
    pub chi_square: f64,
    pub p_value: f64,
    pub ks_statistic: f64,
    pub bins: usize,
    pub degrees_of_freedom: usize,
    pub log_likelihood: f64,
    pub samples: usize,
}

pub fn fit_gamma(d: &DistanceDistribution, opts: &GammaFitOptions) -> Result<GammaFit, StatsError> {
    let xs = d.values();
    let n = xs.len();
    if n == 0 {
        return Err(StatsError::Empty);
    }
    if xs[0] == xs[n - 1] {
        return Err(StatsError::Degenerate(xs[0]));
    }
    if n < opts.min_samples {
        return Err(StatsError::TooFewSamples {
            got: n,
            need: opts.min_samples,
        });
    }
    let bins = opts.bins.unwrap_or_else(|| (n / 50).clamp(5, 20));
    if bins < 5 {
        return Err(StatsError::InvalidOption(format!(
            "need at least 5 bins for 3 fitted parameters, got {bins}"
        )));
    }

    let (location, shape, scale, log_likelihood) = match opts.location {
        LocationMode::Fixed(loc) => {
            if loc >= xs[0] {
                return Err(StatsError::InvalidOption(format!(
                    "location {loc} must lie below the sample minimum {}",
                    xs[0]
                )));
            }
            let (k, theta, ll) = fit_shape_scale(xs, loc)?;
            (loc, k, theta, ll)
        }
        LocationMode::Grid => profile_location(xs, opts.grid_points)?,
    };

    let dist = Gamma::new(shape, 1.0 / scale).expect("fitted shape and scale are positive");
    let cdf = |x: f64| dist.cdf(x - location);

    let edges: Vec<f64> = (1..bins)
        .map(|i| location + dist.inverse_cdf(i as f64 / bins as f64))
        .collect();
    let mut observed = vec![0usize; bins];
    for &x in xs {
        observed[edges.partition_point(|&e| e < x)] += 1;
    }
    let expected = n as f64 / bins as f64;
    let chi_square = observed
        .iter()
        .map(|&o| (o as f64 - expected).powi(2) / expected)
        .sum::<f64>();
    let degrees_of_freedom = bins - 1 - 3;
    let p_value = ChiSquared::new(degrees_of_freedom as f64)
        .expect("positive degrees of freedom")
        .sf(chi_square);

    let ks_statistic = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n as f64).max((i + 1) as f64 / n as f64 - f)
        })
        .fold(0.0, f64::max);

    Ok(GammaFit {
        shape,
        location,
        scale,
        chi_square,
        p_value,
        ks_statistic,
        bins,
        degrees_of_freedom,
        log_likelihood,
        samples: n,
    })
}

fn profile_location(xs: &[f64], grid_points: usize) -> Result<(f64, f64, f64, f64), StatsError> {
    let min = xs[0];
    let range = xs[xs.len() - 1] - min;
    let mut candidates = Vec::with_capacity(grid_points + 1);
    // Offsets below the minimum, log-spaced from 1e-4 to 10 times the range.
    for i in 0..grid_points {
        let e = -4.0 + 5.0 * i as f64 / (grid_points.max(2) - 1) as f64;
        candidates.push(min - range * 10f64.powf(e));
    }
    let zero_allowed = min > 0.0;
    if zero_allowed {
        candidates.push(0.0);
    }

    let mut best: Option<(f64, f64, f64, f64)> = None;
    let mut at_zero = None;
    for loc in candidates {
        let Ok((k, theta, ll)) = fit_shape_scale(xs, loc) else {
            continue;
        };
        if loc == 0.0 {
            at_zero = Some((loc, k, theta, ll));
        }
        if best.is_none_or(|b| ll > b.3) {
            best = Some((loc, k, theta, ll));
        }
    }
    let best = best.ok_or(StatsError::NonConvergence {
        iterations: 0,
        residual: f64::NAN,
    })?;
    Ok(match at_zero {
        Some(zero) if best.3 - zero.3 <= LOCATION_LR_MARGIN => zero,
        _ => best,
    })
}

/// Maximum-likelihood shape and scale of `x - loc`, with the log-likelihood.
fn fit_shape_scale(xs: &[f64], loc: f64) -> Result<(f64, f64, f64), StatsError> {
    let n = xs.len() as f64;
    let mean = xs.iter().map(|&x| x - loc).sum::<f64>() / n;
    let mean_ln = xs.iter().map(|&x| (x - loc).ln()).sum::<f64>() / n;
    let s = mean.ln() - mean_ln;
    if !(s.is_finite() && s > 0.0) {
        return Err(StatsError::Degenerate(mean + loc));
    }
    // Solve ln k - digamma(k) = s, starting from the Minka approximation.
    let mut k = (3.0 - s + ((s - 3.0).powi(2) + 24.0 * s).sqrt()) / (12.0 * s);
    const MAX_ITER: usize = 100;
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_ITER {
        residual = k.ln() - digamma(k) - s;
        let slope = 1.0 / k - trigamma(k);
        let mut next = k - residual / slope;
        if !(next > 0.0) || !next.is_finite() {
            next = k / 2.0;
        }
        let converged = ((next - k) / k).abs() < 1e-12;
        k = next;
        if converged {
            residual = k.ln() - digamma(k) - s;
            break;
        }
    }
    if residual.abs() > 1e-9 * s.max(1.0) {
        return Err(StatsError::NonConvergence {
            iterations: MAX_ITER,
            residual,
        });
    }
    let theta = mean / k;
    let ll = (k - 1.0) * n * mean_ln - n * mean / theta - n * ln_gamma(k) - n * k * theta.ln();
    Ok((k, theta, ll))
}

/// Derivative of the digamma function: recurrence up to `x >= 12`, then the
/// asymptotic series.
fn trigamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 12.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    acc + inv
        + inv2 / 2.0
        + inv * inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 / 30.0)))
}
