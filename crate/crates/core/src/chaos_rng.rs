//! Random numbers from the logistic map.
//!
//! The raw orbit of `4x(1−x)` is distributed with the arcsine law
//! `F(x) = (2/π)·asin(√x)`; pushing it through that same function gives
//! uniform values, and an inverse CDF then shapes them into any target
//! distribution. On a machine with finitely many binary digits the underlying
//! doubling map collapses every seed to zero, which [`doubling_collapse`]
//! shows with exact integer arithmetic.

use std::f64::consts::PI;

use crate::conjugacy::Homeomorphism;
use crate::error::{Error, Result};
use crate::interval::{closed_grid, interior_grid, monotone_solve};
use crate::map_core::{orbit, MapDescriptor, Orbit};

/// Seed used when none is given. 0, ½, ¾ and 1 are degenerate seeds.
pub const DEFAULT_SEED: f64 = 0.123456789;

pub const MAX_WORD_BITS: u32 = 63;
/// Widest word accepted by [`exhaustive_collapse`].
pub const MAX_EXHAUSTIVE_BITS: u32 = 24;

/// The `b`-bit binary fraction `value / 2^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FixedPointWord {
    bits: u32,
    value: u64,
}

impl FixedPointWord {
    pub fn new(bits: u32, value: u64) -> Result<Self> {
        if !(1..=MAX_WORD_BITS).contains(&bits) {
            return Err(Error::param(format!("word width {bits} must be in 1..={MAX_WORD_BITS}")));
        }
        if value >> bits != 0 {
            return Err(Error::param(format!("{value} does not fit in {bits} bits")));
        }
        Ok(FixedPointWord { bits, value })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(2·value) mod 2^b`: the binary digits shift left by one.
    pub fn doubled(&self) -> Self {
        let mask = (1u64 << self.bits) - 1;
        FixedPointWord {
            bits: self.bits,
            value: (self.value << 1) & mask,
        }
    }

    pub fn as_fraction(&self) -> f64 {
        self.value as f64 / (1u64 << self.bits) as f64
    }
}

/// Number of doublings until the word reaches zero, or `None` past `max_steps`.
pub fn doubling_collapse(word: FixedPointWord, max_steps: usize) -> Option<usize> {
    let mut w = word;
    for step in 0..=max_steps {
        if w.value == 0 {
            return Some(step);
        }
        w = w.doubled();
    }
    None
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollapseReport {
    pub steps_to_zero: Option<usize>,
    /// `α_k`, the doubling orbit of the word as fractions.
    pub alphas: Vec<f64>,
    /// `x_k = sin²(π·α_k)`, the logistic orbit it encodes.
    pub xs: Vec<f64>,
}

/// Runs the word through `n` doublings and reports the logistic values
/// `sin²(π·α_k)` alongside; once the word is zero so is every later `x_k`.
pub fn fixed_precision_logistic(word: FixedPointWord, n: usize) -> CollapseReport {
    let mut alphas = Vec::with_capacity(n + 1);
    let mut w = word;
    for _ in 0..=n {
        alphas.push(w.as_fraction());
        w = w.doubled();
    }
    let xs = alphas.iter().map(|a| (PI * a).sin().powi(2)).collect();
    CollapseReport {
        steps_to_zero: doubling_collapse(word, word.bits as usize),
        alphas,
        xs,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExhaustiveCollapse {
    pub bits: u32,
    pub words_tested: u64,
    /// Longest collapse observed.
    pub max_steps: usize,
    /// Words that did not reach zero within `bits` doublings.
    pub failures: u64,
    /// Mean steps over every word, the zero word counting 0.
    pub mean_steps: f64,
}

/// Runs [`doubling_collapse`] with a budget of `bits` steps on every `bits`-bit word.
pub fn exhaustive_collapse(bits: u32) -> Result<ExhaustiveCollapse> {
    if !(1..=MAX_EXHAUSTIVE_BITS).contains(&bits) {
        return Err(Error::Range(format!(
            "exhaustive collapse supports 1..={MAX_EXHAUSTIVE_BITS} bits, got {bits}"
        )));
    }
    let mut max_steps = 0;
    let mut failures = 0;
    let mut total = 0u64;
    let count = 1u64 << bits;
    for value in 0..count {
        match doubling_collapse(FixedPointWord::new(bits, value)?, bits as usize) {
            Some(s) => {
                max_steps = max_steps.max(s);
                total += s as u64;
            }
            None => failures += 1,
        }
    }
    Ok(ExhaustiveCollapse {
        bits,
        words_tested: count,
        max_steps,
        failures,
        mean_steps: total as f64 / count as f64,
    })
}

/// A target distribution on `[0,1]` given by its CDF.
#[derive(Debug, Clone, PartialEq)]
pub enum DistributionSpec {
    Uniform,
    /// `F(x) = (2/π)·asin(√x)`, the invariant law of the logistic map.
    Arcsine,
    /// `F(x) = x^k`
    Power { exponent: f64 },
    /// Any non-decreasing map of `[0,1]` onto itself; inverted by bisection.
    Map(MapDescriptor),
}

impl DistributionSpec {
    pub fn cdf(&self, x: f64) -> Result<f64> {
        match self {
            DistributionSpec::Uniform => crate::interval::Interval::UNIT.admit(x),
            // the conjugacy and the invariant CDF are one function
            DistributionSpec::Arcsine => Homeomorphism::UlamArcsin.apply(x),
            DistributionSpec::Power { exponent } => Homeomorphism::power(*exponent)?.apply(x),
            DistributionSpec::Map(m) => m.eval(x),
        }
    }

    pub fn inverse_cdf(&self, u: f64) -> Result<f64> {
        match self {
            DistributionSpec::Uniform => crate::interval::Interval::UNIT.admit(u),
            DistributionSpec::Arcsine => Homeomorphism::UlamArcsin.invert(u),
            DistributionSpec::Power { exponent } => Homeomorphism::power(*exponent)?.invert(u),
            DistributionSpec::Map(m) => {
                let u = crate::interval::Interval::UNIT.admit(u)?;
                monotone_solve(|x| m.eval(x), u, 0.0, 1.0, true)
            }
        }
    }

    /// `F(0) = 0`, `F(1) = 1`, non-decreasing on a 10³ grid and
    /// `|F(F⁻¹(u)) − u| < 1e−9` on an interior grid.
    pub fn validate(&self) -> Result<()> {
        if self.cdf(0.0)?.abs() > 1e-12 || (self.cdf(1.0)? - 1.0).abs() > 1e-12 {
            return Err(Error::param("a CDF must satisfy F(0) = 0 and F(1) = 1"));
        }
        let values = closed_grid(0.0, 1.0, 1000)
            .into_iter()
            .map(|x| self.cdf(x))
            .collect::<Result<Vec<_>>>()?;
        if !values.windows(2).all(|w| w[0] <= w[1]) {
            return Err(Error::param("a CDF must be non-decreasing"));
        }
        for u in interior_grid(0.0, 1.0, 1000) {
            if (self.cdf(self.inverse_cdf(u)?)? - u).abs() >= 1e-9 {
                return Err(Error::param(format!("inverse CDF fails the round trip at {u}")));
            }
        }
        Ok(())
    }
}

/// The logistic orbit of `x0 ∈ (0,1)` with `n + 1` values.
pub fn logistic_sequence(x0: f64, n: usize) -> Result<Orbit> {
    if !(x0 > 0.0 && x0 < 1.0) {
        return Err(Error::domain(x0, "(0, 1)"));
    }
    if n == 0 {
        return Err(Error::param("sequence length n must be at least 1"));
    }
    orbit(&MapDescriptor::Logistic, x0, n)
}

/// Applies `(2/π)·asin(√x)` to every orbit value.
pub fn uniformize(orbit: &Orbit) -> Result<Vec<f64>> {
    orbit
        .values
        .iter()
        .map(|&x| Homeomorphism::UlamArcsin.apply(x))
        .collect()
}

/// Applies the inverse CDF of `dist` to values in `[0,1]`.
pub fn transform_to(uniform: &[f64], dist: &DistributionSpec) -> Result<Vec<f64>> {
    uniform.iter().map(|&u| dist.inverse_cdf(u)).collect()
}

/// Two-sided Kolmogorov–Smirnov distance between the empirical CDF of
/// `sample` and `cdf`.
pub fn ks_distance<F>(sample: &[f64], cdf: F) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    Ok(sorted
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let f = cdf(s);
            ((i + 1) as f64 / n - f).abs().max((f - i as f64 / n).abs())
        })
        .fold(0.0, f64::max))
}

/// Equal-width bin counts over `[0,1]`; 1.0 lands in the last bin.
pub fn histogram(sample: &[f64], bins: usize) -> Result<Vec<usize>> {
    if bins == 0 {
        return Err(Error::param("histogram needs at least one bin"));
    }
    let mut counts = vec![0; bins];
    for &x in sample {
        let x = crate::interval::Interval::UNIT.admit(x)?;
        let i = ((x * bins as f64) as usize).min(bins - 1);
        counts[i] += 1;
    }
    Ok(counts)
}
