//! Real intervals, sample grids and the monotone bisection shared by the
//! inverse computations.

use std::fmt;

use crate::error::{Error, Result};

/// Points this close to a closed endpoint are snapped onto it before evaluation.
pub const ENDPOINT_SLACK: f64 = 1e-12;

/// An interval of the real line. Endpoints may be infinite; an infinite
/// endpoint is always treated as open.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub const fn closed(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_open: false,
            hi_open: false,
        }
    }

    /// `[lo, hi)`
    pub const fn right_open(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_open: false,
            hi_open: true,
        }
    }

    pub const fn real_line() -> Self {
        Interval {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
            lo_open: true,
            hi_open: true,
        }
    }

    pub const UNIT: Interval = Interval::closed(0.0, 1.0);

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi };
        above && below
    }

    /// Returns `x` (possibly snapped onto a closed endpoint) if it belongs to the interval.
    pub fn admit(&self, x: f64) -> Result<f64> {
        if self.contains(x) {
            return Ok(x);
        }
        if x.is_finite() {
            if !self.lo_open && self.lo.is_finite() && (x - self.lo).abs() <= ENDPOINT_SLACK {
                return Ok(self.lo);
            }
            if !self.hi_open && self.hi.is_finite() && (x - self.hi).abs() <= ENDPOINT_SLACK {
                return Ok(self.hi);
            }
        }
        Err(Error::domain(x, self))
    }

    /// Intersection, or `None` when empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_open) = match self.lo.partial_cmp(&other.lo)? {
            std::cmp::Ordering::Greater => (self.lo, self.lo_open),
            std::cmp::Ordering::Less => (other.lo, other.lo_open),
            std::cmp::Ordering::Equal => (self.lo, self.lo_open || other.lo_open),
        };
        let (hi, hi_open) = match self.hi.partial_cmp(&other.hi)? {
            std::cmp::Ordering::Less => (self.hi, self.hi_open),
            std::cmp::Ordering::Greater => (other.hi, other.hi_open),
            std::cmp::Ordering::Equal => (self.hi, self.hi_open || other.hi_open),
        };
        if lo > hi || (lo == hi && (lo_open || hi_open)) {
            None
        } else {
            Some(Interval {
                lo,
                hi,
                lo_open: lo_open || lo.is_infinite(),
                hi_open: hi_open || hi.is_infinite(),
            })
        }
    }

    /// Interval spanned by two endpoint images, sorted.
    pub(crate) fn spanning(a: f64, b: f64, a_open: bool, b_open: bool) -> Interval {
        let (lo, lo_open, hi, hi_open) = if a <= b {
            (a, a_open, b, b_open)
        } else {
            (b, b_open, a, a_open)
        };
        Interval {
            lo,
            hi,
            lo_open: lo_open || lo.is_infinite(),
            hi_open: hi_open || hi.is_infinite(),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            self.lo,
            self.hi,
            if self.hi_open { ')' } else { ']' }
        )
    }
}

/// `samples` equispaced points in `[lo, hi]`, endpoints included.
pub fn closed_grid(lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    match samples {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (samples - 1) as f64;
            (0..samples)
                .map(|i| if i + 1 == samples { hi } else { lo + i as f64 * step })
                .collect()
        }
    }
}

/// `samples` cell midpoints of `[lo, hi]`: the endpoints are never sampled.
pub fn interior_grid(lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let step = (hi - lo) / samples as f64;
    (0..samples).map(|i| lo + (i as f64 + 0.5) * step).collect()
}

pub(crate) fn bounded_domain(domain: Interval) -> Result<Interval> {
    if domain.is_bounded() {
        Ok(domain)
    } else {
        Err(Error::param(format!(
            "a sample grid needs a bounded domain, got {domain}"
        )))
    }
}

/// Bisection tolerance used by every monotone inverse.
pub const INVERSE_TOL: f64 = 1e-14;
/// Iteration cap for the monotone inverses.
pub const INVERSE_MAX_ITER: usize = 100;

/// Solves `f(x) = target` on `[lo, hi]` for a monotone `f` by bisection.
///
/// `increasing` gives the direction of monotonicity. A midpoint hitting the
/// target exactly is returned as is, so targets representable on the
/// bisection lattice are recovered without error.
pub fn monotone_solve<F>(f: F, target: f64, lo: f64, hi: f64, increasing: bool) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    for (end, value) in [(a, f(a)?), (b, f(b)?)] {
        if value == target {
            return Ok(end);
        }
    }
    for _ in 0..INVERSE_MAX_ITER {
        if b - a <= INVERSE_TOL {
            break;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let value = f(mid)?;
        if value == target {
            return Ok(mid);
        }
        if (value < target) == increasing {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
