//! Certified rational enclosures for cos(2πx) and sin(2πx) at rational x.
//!
//! The argument is reduced to [-1/2, 1/2) on the torus, scaled by a two-sided
//! rational enclosure of 2π, and fed through the Taylor series with a Lagrange
//! remainder. Interval endpoints are rounded outward to a fixed dyadic grid
//! after every step so denominators stay bounded.

use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

use crate::rational::{Bounds, Rational};

const SERIES_TERMS: usize = 20;
const DYADIC_BITS: u32 = 192;

fn pi_enclosure() -> &'static Bounds {
    static PI: OnceLock<Bounds> = OnceLock::new();
    PI.get_or_init(|| {
        let den = BigInt::from(10u8).pow(38);
        let lo = BigInt::from_str("314159265358979323846264338327950288419").unwrap();
        let hi = &lo + BigInt::one();
        Bounds::new(
            Rational::from_bigs(lo, den.clone()).unwrap(),
            Rational::from_bigs(hi, den).unwrap(),
        )
    })
}

fn factorials() -> &'static Vec<Rational> {
    static FACT: OnceLock<Vec<Rational>> = OnceLock::new();
    FACT.get_or_init(|| {
        let mut out = Vec::with_capacity(2 * SERIES_TERMS + 2);
        let mut acc = BigInt::one();
        out.push(Rational::one());
        for k in 1..=(2 * SERIES_TERMS + 1) {
            acc *= BigInt::from(k as u64);
            out.push(Rational::from_bigint(acc.clone()));
        }
        out
    })
}

/// Outward rounding to denominator 2^bits. Keeps enclosures sound while
/// capping coefficient growth.
fn round_out(b: &Bounds, bits: u32) -> Bounds {
    let scale = Rational::from_bigint(BigInt::one() << bits);
    let lo = Rational::from_bigs((b.lo() * &scale).floor_int(), BigInt::one() << bits).unwrap();
    let hi_scaled = b.hi() * &scale;
    let mut hi_num = hi_scaled.floor_int();
    if Rational::from_bigint(hi_num.clone()) < hi_scaled {
        hi_num += BigInt::one();
    }
    let hi = Rational::from_bigs(hi_num, BigInt::one() << bits).unwrap();
    Bounds::new(lo, hi)
}

fn clamp_unit(b: Bounds) -> Bounds {
    let one = Rational::one();
    let neg_one = -&one;
    let lo = if b.lo() < &neg_one {
        neg_one.clone()
    } else {
        b.lo().clone()
    };
    let hi = if b.hi() > &one { one } else { b.hi().clone() };
    Bounds::new(lo, hi)
}

/// Angle 2πt for the torus representative of x shifted into [-1/2, 1/2).
fn theta(x: &Rational) -> Bounds {
    let mut t = x.frac_mod1();
    if t >= Rational::new(1, 2) {
        t = t - Rational::one();
    }
    let two_pi = pi_enclosure().scale(&Rational::from_int(2));
    round_out(&two_pi.scale(&t), DYADIC_BITS)
}

/// |θ|^n / n! with everything rounded up; used for the Lagrange remainder.
fn remainder_bound(theta_sq: &Bounds, odd_factor: Option<&Bounds>, n: usize) -> Rational {
    // n = 2*SERIES_TERMS (+1 when odd_factor is present)
    let mut acc = Bounds::exact(Rational::one());
    for _ in 0..SERIES_TERMS {
        acc = round_out(&acc.mul(theta_sq), DYADIC_BITS);
    }
    if let Some(extra) = odd_factor {
        acc = round_out(&acc.mul(extra), DYADIC_BITS);
    }
    let max_abs = acc.abs().hi().clone();
    max_abs / factorials()[n].clone()
}

/// Certified enclosure of cos(2πx) for exact rational x.
pub(crate) fn cos2pi(x: &Rational) -> Bounds {
    let th = theta(x);
    let th_sq = round_out(&th.mul(&th), DYADIC_BITS);
    // Horner in θ²: sum_{j<N} (-1)^j θ^(2j) / (2j)!
    let mut acc = Bounds::exact(Rational::zero());
    for j in (0..SERIES_TERMS).rev() {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let coeff = Rational::from_int(sign) / factorials()[2 * j].clone();
        acc = round_out(&acc.mul(&th_sq).add(&Bounds::exact(coeff)), DYADIC_BITS);
    }
    let rem = remainder_bound(&th_sq, None, 2 * SERIES_TERMS);
    clamp_unit(acc.add(&Bounds::new(-&rem, rem.clone())))
}

/// Certified enclosure of sin(2πx) for exact rational x.
pub(crate) fn sin2pi(x: &Rational) -> Bounds {
    let th = theta(x);
    let th_sq = round_out(&th.mul(&th), DYADIC_BITS);
    // θ · sum_{j<N} (-1)^j θ^(2j) / (2j+1)!
    let mut acc = Bounds::exact(Rational::zero());
    for j in (0..SERIES_TERMS).rev() {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let coeff = Rational::from_int(sign) / factorials()[2 * j + 1].clone();
        acc = round_out(&acc.mul(&th_sq).add(&Bounds::exact(coeff)), DYADIC_BITS);
    }
    acc = round_out(&acc.mul(&th), DYADIC_BITS);
    let rem = remainder_bound(&th_sq, Some(&th.abs()), 2 * SERIES_TERMS + 1);
    clamp_unit(acc.add(&Bounds::new(-&rem, rem.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_tight_around(b: &Bounds, expected: f64) {
        let lo = b.lo().to_f64_lossy();
        let hi = b.hi().to_f64_lossy();
        assert!(lo <= expected + 1e-12 && expected - 1e-12 <= hi, "{expected} not in [{lo}, {hi}]");
        assert!(hi - lo < 1e-25, "enclosure too wide: {}", hi - lo);
    }

    #[test]
    fn special_angles() {
        assert_tight_around(&cos2pi(&Rational::zero()), 1.0);
        assert_tight_around(&cos2pi(&Rational::new(1, 2)), -1.0);
        assert_tight_around(&cos2pi(&Rational::new(1, 4)), 0.0);
        assert_tight_around(&sin2pi(&Rational::new(1, 4)), 1.0);
        assert_tight_around(&sin2pi(&Rational::new(1, 2)), 0.0);
        assert_tight_around(&cos2pi(&Rational::new(1, 3)), -0.5);
        assert_tight_around(&sin2pi(&Rational::new(1, 6)), 0.8660254037844386);
    }

    #[test]
    fn periodicity_and_symmetry() {
        let x = Rational::new(3, 7);
        let shifted = &x + &Rational::from_int(5);
        assert_eq!(cos2pi(&x), cos2pi(&shifted));
        // cos is even: cos(2π(1-x)) = cos(2πx) up to rounding slack
        let c1 = cos2pi(&x);
        let c2 = cos2pi(&(Rational::one() - &x));
        assert!(c1.lo() <= c2.hi() && c2.lo() <= c1.hi());
    }

    #[test]
    fn pythagorean_identity_holds_inside_enclosures() {
        for (n, d) in [(1i64, 5i64), (2, 7), (3, 11), (5, 13), (7, 9)] {
            let x = Rational::new(n, d);
            let c = cos2pi(&x);
            let s = sin2pi(&x);
            let sum = c.mul(&c).add(&s.mul(&s));
            assert!(sum.contains(&Rational::one()), "x = {n}/{d}");
        }
    }
}
