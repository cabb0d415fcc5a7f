//! Points on the 1-torus and on finite products, with the two metrics used
//! throughout: Euclidean distance to the nearest integer on each circle
//! coordinate, L1 (taxicab) sums across product coordinates, and the 2^(-j)
//! ultrametric on odometer digit prefixes.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{Bounds, Rational};

/// A point of ℝ/ℤ carried as a rational representative in [0, 1) together
/// with a certified radius. Radius zero means the point is exact; every
/// certificate downstream must stay valid for any true value inside the
/// enclosure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusPoint {
    value: Rational,
    radius: Rational,
}

impl TorusPoint {
    pub fn exact(q: Rational) -> Self {
        TorusPoint {
            value: q.frac_mod1(),
            radius: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        TorusPoint::exact(Rational::zero())
    }

    pub fn tracked(value: Rational, radius: Rational) -> Self {
        assert!(!radius.is_negative(), "negative radius");
        TorusPoint {
            value: value.frac_mod1(),
            radius,
        }
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    pub fn is_exact(&self) -> bool {
        self.radius.is_zero()
    }

    /// The exact representative, or `None` when only an enclosure is known.
    pub fn exact_value(&self) -> Option<&Rational> {
        if self.is_exact() {
            Some(&self.value)
        } else {
            None
        }
    }

    pub fn add(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint {
            value: (&self.value + &other.value).frac_mod1(),
            radius: &self.radius + &other.radius,
        }
    }

    pub fn sub(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint {
            value: (&self.value - &other.value).frac_mod1(),
            radius: &self.radius + &other.radius,
        }
    }

    pub fn neg(&self) -> TorusPoint {
        TorusPoint {
            value: (-&self.value).frac_mod1(),
            radius: self.radius.clone(),
        }
    }

    pub fn add_rational(&self, q: &Rational) -> TorusPoint {
        TorusPoint {
            value: (&self.value + q).frac_mod1(),
            radius: self.radius.clone(),
        }
    }

    pub fn scale_int(&self, k: i64) -> TorusPoint {
        self.scale_bigint(&BigInt::from(k))
    }

    pub fn scale_bigint(&self, k: &BigInt) -> TorusPoint {
        let factor = Rational::from_bigint(k.clone());
        TorusPoint {
            value: (&self.value * &factor).frac_mod1(),
            radius: &self.radius * factor.abs(),
        }
    }

    /// `‖t‖`, the distance to 0 on the torus, as a certified enclosure in
    /// [0, 1/2]. Exact points give zero-width bounds.
    pub fn dist_to_zero(&self) -> Bounds {
        if self.is_exact() {
            Bounds::exact(self.value.dist_to_nearest_int())
        } else {
            norm_interval(&(&self.value - &self.radius), &(&self.value + &self.radius))
        }
    }

    /// Torus distance `‖a − b‖` between two enclosed points.
    pub fn dist(&self, other: &TorusPoint) -> Bounds {
        self.sub(other).dist_to_zero()
    }
}

/// Reduces a rational to its torus representative. `7/4 → 3/4`, `-1/3 → 2/3`.
pub fn reduce_mod1(q: &Rational) -> TorusPoint {
    TorusPoint::exact(q.clone())
}

/// `‖t‖ ∈ [0, 1/2]` for a (possibly error-tracked) torus point.
pub fn dist_to_zero(t: &TorusPoint) -> Bounds {
    t.dist_to_zero()
}

/// Range of `x ↦ dist(x, ℤ)` over the real interval [lo, hi].
///
/// The map is piecewise linear with minima 0 at integers and maxima 1/2 at
/// half-integers, so the extrema are decided by whether the interval straddles
/// such a point.
pub(crate) fn norm_interval(lo: &Rational, hi: &Rational) -> Bounds {
    debug_assert!(lo <= hi);
    let one = Rational::one();
    if (hi - lo) >= one {
        return Bounds::new(Rational::zero(), Rational::new(1, 2));
    }
    let norm_lo = lo.dist_to_nearest_int();
    let norm_hi = hi.dist_to_nearest_int();
    let contains_integer = lo.frac_mod1() > hi.frac_mod1() || lo.frac_mod1().is_zero();
    let half = Rational::new(1, 2);
    let shifted_lo = lo - &half;
    let shifted_hi = hi - &half;
    let contains_half =
        shifted_lo.frac_mod1() > shifted_hi.frac_mod1() || shifted_lo.frac_mod1().is_zero();
    let min = if contains_integer {
        Rational::zero()
    } else {
        norm_lo.clone().min(norm_hi.clone())
    };
    let max = if contains_half {
        half
    } else {
        norm_lo.max(norm_hi)
    };
    Bounds::new(min, max)
}

/// Point of a base system: either a vector of circle coordinates (toral
/// rotation) or a finite digit prefix of an odometer point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasePoint {
    Torus(Vec<TorusPoint>),
    Odometer(Vec<u64>),
}

impl BasePoint {
    pub fn torus1(t: TorusPoint) -> Self {
        BasePoint::Torus(vec![t])
    }

    /// L1 distance between two base points of identical shape.
    ///
    /// Odometer prefixes that agree to depth `j` (first disagreement at digit
    /// index `j`) are at distance exactly `2^(-j)`; prefixes that agree
    /// entirely only certify an upper bound of `2^(-len)`.
    pub fn dist(&self, other: &BasePoint) -> Result<Bounds> {
        match (self, other) {
            (BasePoint::Torus(a), BasePoint::Torus(b)) => {
                if a.len() != b.len() {
                    return Err(Error::ShapeMismatch(format!(
                        "torus dimensions {} vs {}",
                        a.len(),
                        b.len()
                    )));
                }
                let mut total = Bounds::exact(Rational::zero());
                for (x, y) in a.iter().zip(b) {
                    total = total.add(&x.dist(y));
                }
                Ok(total)
            }
            (BasePoint::Odometer(a), BasePoint::Odometer(b)) => {
                if a.len() != b.len() {
                    return Err(Error::ShapeMismatch(format!(
                        "odometer depths {} vs {}",
                        a.len(),
                        b.len()
                    )));
                }
                match a.iter().zip(b).position(|(x, y)| x != y) {
                    Some(j) => Ok(Bounds::exact(Rational::pow2_neg(j as u32))),
                    None => Ok(Bounds::new(
                        Rational::zero(),
                        Rational::pow2_neg(a.len() as u32),
                    )),
                }
            }
            _ => Err(Error::ShapeMismatch(
                "torus base point compared with odometer base point".into(),
            )),
        }
    }
}

/// A point of `X × 𝕋^k`: base coordinate plus ordered fiber coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductPoint {
    pub base: BasePoint,
    pub fibers: Vec<TorusPoint>,
}

impl ProductPoint {
    pub fn new(base: BasePoint, fibers: Vec<TorusPoint>) -> Self {
        ProductPoint { base, fibers }
    }
}

/// L1 (taxicab) distance on products: base metric plus the sum of circle
/// norms of the fiber differences.
pub fn l1_dist(a: &ProductPoint, b: &ProductPoint) -> Result<Bounds> {
    if a.fibers.len() != b.fibers.len() {
        return Err(Error::ShapeMismatch(format!(
            "fiber counts {} vs {}",
            a.fibers.len(),
            b.fibers.len()
        )));
    }
    let mut total = a.base.dist(&b.base)?;
    for (x, y) in a.fibers.iter().zip(&b.fibers) {
        total = total.add(&x.dist(y));
    }
    Ok(total)
}
