use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::interval::{closed_grid, interior_grid, monotone_solve, Interval};
use crate::map_core::PiecewiseLinear;

/// Minimum distance of `a·b` from 1 for a Möbius coordinate change.
pub const MOBIUS_DEGENERACY_TOL: f64 = 1e-9;

/// An invertible, strictly monotone change of coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum Homeomorphism {
    /// `x ↦ (2/π)·asin(√x)`, `[0,1] → [0,1]`.
    UlamArcsin,
    /// `x ↦ (1/π)·asin(√x)`, `[0,1] → [0,½]`.
    AlphaArcsin,
    /// `x ↦ slope·x + offset` on the real line.
    Affine { slope: f64, offset: f64 },
    /// `x ↦ x^exponent` on `[0,1]`.
    Power { exponent: f64 },
    Mobius(Mobius),
    PiecewiseLinear(PiecewiseLinear),
    /// `x ↦ 1 − x` on `[0,1]`.
    Reflect,
    /// `outer ∘ inner`
    Composition {
        outer: Arc<Homeomorphism>,
        inner: Arc<Homeomorphism>,
    },
    Inverse(Arc<Homeomorphism>),
}

/// `x ↦ −(a + x)/(1 + b·x)` restricted to an interval that avoids the pole.
#[derive(Debug, Clone, PartialEq)]
pub struct Mobius {
    a: f64,
    b: f64,
    domain: Interval,
}

impl Mobius {
    pub fn new(a: f64, b: f64, lo: f64, hi: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::param("Möbius coefficients must be finite"));
        }
        if (a * b - 1.0).abs() <= MOBIUS_DEGENERACY_TOL {
            return Err(Error::param(format!(
                "Möbius map with a·b = {} ≈ 1 is constant",
                a * b
            )));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::param(format!("bad Möbius interval [{lo}, {hi}]")));
        }
        let (d_lo, d_hi) = (1.0 + b * lo, 1.0 + b * hi);
        if d_lo == 0.0 || d_hi == 0.0 || (d_lo < 0.0) != (d_hi < 0.0) {
            return Err(Error::param(format!(
                "pole x = {} lies in [{lo}, {hi}]",
                -1.0 / b
            )));
        }
        Ok(Mobius {
            a,
            b,
            domain: Interval::closed(lo, hi),
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    fn formula(&self, x: f64) -> f64 {
        -(self.a + x) / (1.0 + self.b * x)
    }
}

impl Homeomorphism {
    pub fn affine(slope: f64, offset: f64) -> Result<Self> {
        if slope == 0.0 || !slope.is_finite() || !offset.is_finite() {
            return Err(Error::param(format!("affine slope {slope} must be finite and nonzero")));
        }
        Ok(Homeomorphism::Affine { slope, offset })
    }

    pub fn identity() -> Self {
        Homeomorphism::Affine {
            slope: 1.0,
            offset: 0.0,
        }
    }

    pub fn power(exponent: f64) -> Result<Self> {
        if !(exponent > 0.0 && exponent.is_finite()) {
            return Err(Error::param(format!("power exponent {exponent} must be positive")));
        }
        Ok(Homeomorphism::Power { exponent })
    }

    /// Knots must have strictly monotone ordinates as well as abscissae.
    pub fn piecewise_linear(knots: Vec<(f64, f64)>) -> Result<Self> {
        let pwl = PiecewiseLinear::new(knots)?;
        let ys: Vec<f64> = pwl.knots().iter().map(|k| k.1).collect();
        let up = ys.windows(2).all(|w| w[0] < w[1]);
        let down = ys.windows(2).all(|w| w[0] > w[1]);
        if !(up || down) {
            return Err(Error::param("piecewise-linear homeomorphism knots must be strictly monotone"));
        }
        Ok(Homeomorphism::PiecewiseLinear(pwl))
    }

    pub fn compose(outer: Homeomorphism, inner: Homeomorphism) -> Self {
        Homeomorphism::Composition {
            outer: Arc::new(outer),
            inner: Arc::new(inner),
        }
    }

    pub fn inverse(self) -> Self {
        Homeomorphism::Inverse(Arc::new(self))
    }

    pub fn domain(&self) -> Interval {
        match self {
            Homeomorphism::UlamArcsin
            | Homeomorphism::AlphaArcsin
            | Homeomorphism::Power { .. }
            | Homeomorphism::Reflect => Interval::UNIT,
            Homeomorphism::Affine { .. } => Interval::real_line(),
            Homeomorphism::Mobius(m) => m.domain,
            Homeomorphism::PiecewiseLinear(p) => p.domain(),
            Homeomorphism::Composition { inner, .. } => inner.domain(),
            Homeomorphism::Inverse(base) => base.range(),
        }
    }

    pub fn range(&self) -> Interval {
        match self {
            Homeomorphism::UlamArcsin | Homeomorphism::Power { .. } | Homeomorphism::Reflect => {
                Interval::UNIT
            }
            Homeomorphism::AlphaArcsin => Interval::closed(0.0, 0.5),
            Homeomorphism::Affine { .. } => Interval::real_line(),
            Homeomorphism::Mobius(m) => {
                let d = m.domain;
                Interval::spanning(m.formula(d.lo), m.formula(d.hi), false, false)
            }
            Homeomorphism::PiecewiseLinear(p) => {
                let (first, last) = (p.knots()[0].1, p.knots()[p.knots().len() - 1].1);
                Interval::closed(first.min(last), first.max(last))
            }
            Homeomorphism::Composition { .. } => self.image(self.domain()),
            Homeomorphism::Inverse(base) => base.domain(),
        }
    }

    /// Image of an interval lying inside the domain.
    pub fn image(&self, iv: Interval) -> Interval {
        Interval::spanning(self.raw(iv.lo), self.raw(iv.hi), iv.lo_open, iv.hi_open)
    }

    pub fn is_increasing(&self) -> bool {
        match self {
            Homeomorphism::UlamArcsin
            | Homeomorphism::AlphaArcsin
            | Homeomorphism::Power { .. } => true,
            Homeomorphism::Affine { slope, .. } => *slope > 0.0,
            // derivative is (a·b − 1)/(1 + b·x)²
            Homeomorphism::Mobius(m) => m.a * m.b > 1.0,
            Homeomorphism::PiecewiseLinear(p) => p.knots()[1].1 > p.knots()[0].1,
            Homeomorphism::Reflect => false,
            Homeomorphism::Composition { outer, inner } => {
                outer.is_increasing() == inner.is_increasing()
            }
            Homeomorphism::Inverse(base) => base.is_increasing(),
        }
    }

    pub fn apply(&self, x: f64) -> Result<f64> {
        match self {
            Homeomorphism::Composition { outer, inner } => return outer.apply(inner.apply(x)?),
            Homeomorphism::Inverse(base) => return base.invert(x),
            _ => {}
        }
        let x = self.domain().admit(x)?;
        Ok(match self {
            Homeomorphism::UlamArcsin => FRAC_2_PI * x.sqrt().asin(),
            Homeomorphism::AlphaArcsin => x.sqrt().asin() / PI,
            Homeomorphism::Affine { slope, offset } => {
                if *slope == 0.0 {
                    return Err(Error::param("affine slope is zero"));
                }
                slope * x + offset
            }
            Homeomorphism::Power { exponent } => {
                if *exponent <= 0.0 {
                    return Err(Error::param("power exponent must be positive"));
                }
                x.powf(*exponent)
            }
            Homeomorphism::Mobius(m) => m.formula(x),
            Homeomorphism::PiecewiseLinear(p) => p.eval_unchecked(x),
            Homeomorphism::Reflect => 1.0 - x,
            Homeomorphism::Composition { .. } | Homeomorphism::Inverse(_) => unreachable!(),
        })
    }

    pub fn invert(&self, y: f64) -> Result<f64> {
        match self {
            Homeomorphism::Composition { outer, inner } => return inner.invert(outer.invert(y)?),
            Homeomorphism::Inverse(base) => return base.apply(y),
            _ => {}
        }
        let y = self.range().admit(y)?;
        Ok(match self {
            Homeomorphism::UlamArcsin => (FRAC_PI_2 * y).sin().powi(2),
            Homeomorphism::AlphaArcsin => (PI * y).sin().powi(2),
            Homeomorphism::Affine { slope, offset } => {
                if *slope == 0.0 {
                    return Err(Error::param("affine slope is zero"));
                }
                (y - offset) / slope
            }
            Homeomorphism::Power { exponent } => {
                if *exponent <= 0.0 {
                    return Err(Error::param("power exponent must be positive"));
                }
                y.powf(exponent.recip())
            }
            // the Möbius family is its own inverse: solving y = −(a+x)/(1+bx) for x
            // gives x = −(a+y)/(1+by)
            Homeomorphism::Mobius(m) => m.formula(y),
            Homeomorphism::PiecewiseLinear(p) => {
                let d = p.domain();
                let up = self.is_increasing();
                monotone_solve(|x| Ok(p.eval_unchecked(x)), y, d.lo, d.hi, up)?
            }
            Homeomorphism::Reflect => 1.0 - y,
            Homeomorphism::Composition { .. } | Homeomorphism::Inverse(_) => unreachable!(),
        })
    }

    // Endpoint evaluation that tolerates infinite endpoints of affine changes.
    fn raw(&self, x: f64) -> f64 {
        match self {
            Homeomorphism::Affine { slope, offset } => slope * x + offset,
            Homeomorphism::Composition { outer, inner } => outer.raw(inner.raw(x)),
            Homeomorphism::Inverse(base) => base.raw_inverse(x),
            _ => self.apply(x).unwrap_or(f64::NAN),
        }
    }

    fn raw_inverse(&self, y: f64) -> f64 {
        match self {
            Homeomorphism::Affine { slope, offset } => (y - offset) / slope,
            Homeomorphism::Composition { outer, inner } => inner.raw_inverse(outer.raw_inverse(y)),
            Homeomorphism::Inverse(base) => base.raw(y),
            _ => self.invert(y).unwrap_or(f64::NAN),
        }
    }

    /// Checks strict monotonicity on a closed grid of `samples` points and the
    /// round trip `h⁻¹(h(x)) = x` to 1e−10 on an interior grid. Unbounded
    /// domains are checked on `[-1e3, 1e3]`.
    pub fn validate(&self, samples: usize) -> Result<()> {
        let d = self.domain();
        let (lo, hi) = if d.is_bounded() { (d.lo, d.hi) } else { (-1e3, 1e3) };
        let values = closed_grid(lo, hi, samples)
            .into_iter()
            .map(|x| self.apply(x))
            .collect::<Result<Vec<_>>>()?;
        let up = self.is_increasing();
        if !values.windows(2).all(|w| if up { w[0] < w[1] } else { w[0] > w[1] }) {
            return Err(Error::param(format!("{self} is not strictly monotone")));
        }
        for x in interior_grid(lo, hi, samples) {
            let back = self.invert(self.apply(x)?)?;
            if (back - x).abs() >= 1e-10 {
                return Err(Error::param(format!(
                    "{self} fails the round trip at {x}: got {back}"
                )));
            }
        }
        Ok(())
    }

    fn is_atomic(&self) -> bool {
        !matches!(self, Homeomorphism::Composition { .. } | Homeomorphism::Inverse(_))
    }
}

impl fmt::Display for Homeomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Homeomorphism::UlamArcsin => f.write_str("ulam"),
            Homeomorphism::AlphaArcsin => f.write_str("alpha"),
            Homeomorphism::Affine { slope, offset } => write!(f, "affine:p={slope},q={offset}"),
            Homeomorphism::Power { exponent } => write!(f, "power:g={exponent}"),
            Homeomorphism::Mobius(m) => write!(
                f,
                "mobius:a={},b={},lo={},hi={}",
                m.a, m.b, m.domain.lo, m.domain.hi
            ),
            Homeomorphism::PiecewiseLinear(p) => write!(f, "pwlh:{}", p.knot_list()),
            Homeomorphism::Reflect => f.write_str("reflect"),
            Homeomorphism::Composition { outer, inner } => {
                write!(f, "{outer} o ")?;
                if inner.is_atomic() {
                    write!(f, "{inner}")
                } else {
                    write!(f, "({inner})")
                }
            }
            Homeomorphism::Inverse(base) => {
                if base.is_atomic() {
                    write!(f, "inv:{base}")
                } else {
                    write!(f, "inv:({base})")
                }
            }
        }
    }
}
