//! Continued fractions: convergents, certified evaluation of `‖nα‖`, growth
//! checks, and the fast-growing quotient schedules used by the hidden
//! frequency counterexample.
//!
//! An irrational rotation number is never materialized. Consumers receive a
//! convergent `p_J/q_J` together with a certified error bound and must carry
//! that error through their own inequalities.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{Bounds, Rational};
use crate::torus::norm_interval;

/// Simple continued fraction `1/(a_1 + 1/(a_2 + ...))` given by its positive
/// partial quotients, with convergents `(p_i, q_i)` precomputed from the
/// recurrence `q_i = a_i q_{i-1} + q_{i-2}`, `q_0 = 1`, `q_1 = a_1`.
///
/// Convergents are always recomputed from the quotients, never trusted from
/// serialized data.
#[derive(Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    quotients: Vec<BigInt>,
    convergents: Vec<(BigInt, BigInt)>,
    smoothness_order: Option<u32>,
}

/// Convergent pairs `(p_i, q_i)` for `i = 0..=J`, starting from `(0, 1)`.
pub fn convergents(quotients: &[BigInt]) -> Result<Vec<(BigInt, BigInt)>> {
    if quotients.is_empty() {
        return Err(Error::EmptyQuotients);
    }
    if quotients.iter().any(|a| a < &BigInt::one()) {
        return Err(Error::Invalid("partial quotients must be >= 1".into()));
    }
    let mut out = Vec::with_capacity(quotients.len() + 1);
    // p_{-1}/q_{-1} = 1/0, p_0/q_0 = 0/1
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p, mut q) = (BigInt::zero(), BigInt::one());
    out.push((p.clone(), q.clone()));
    for a in quotients {
        let p_next = a * &p + &p_prev;
        let q_next = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push((p.clone(), q.clone()));
    }
    Ok(out)
}

impl ContinuedFraction {
    pub fn new(quotients: Vec<BigInt>) -> Result<Self> {
        let convergents = convergents(&quotients)?;
        Ok(ContinuedFraction {
            quotients,
            convergents,
            smoothness_order: None,
        })
    }

    pub fn from_u64s(quotients: &[u64]) -> Result<Self> {
        Self::new(quotients.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn with_smoothness_order(mut self, k: u32) -> Self {
        self.smoothness_order = Some(k);
        self
    }

    pub fn smoothness_order(&self) -> Option<u32> {
        self.smoothness_order
    }

    pub fn quotients(&self) -> &[BigInt] {
        &self.quotients
    }

    pub fn convergents(&self) -> &[(BigInt, BigInt)] {
        &self.convergents
    }

    /// Largest convergent index available (equals the number of quotients).
    pub fn max_index(&self) -> usize {
        self.quotients.len()
    }

    pub fn convergent(&self, j: usize) -> Result<Rational> {
        let (p, q) = self.convergents.get(j).ok_or(Error::ConvergentIndex {
            index: j,
            available: self.convergents.len(),
        })?;
        Rational::from_bigs(p.clone(), q.clone())
    }

    /// `p_J/q_J` together with the certified bound `|α − p_J/q_J| < 1/(q_J q_{J+1})`.
    /// Requires convergent `J + 1` to exist.
    pub fn approx_with_error(&self, j: usize) -> Result<(Rational, Rational)> {
        if j + 1 >= self.convergents.len() {
            return Err(Error::ConvergentIndex {
                index: j + 1,
                available: self.convergents.len(),
            });
        }
        let (p, q) = &self.convergents[j];
        let (_, q_next) = &self.convergents[j + 1];
        let value = Rational::from_bigs(p.clone(), q.clone())?;
        let err = Rational::from_bigs(BigInt::one(), q * q_next)?;
        Ok((value, err))
    }

    /// Deepest certified enclosure valid for every continuation of the
    /// quotient sequence: any further quotient `a_{J+1} >= 1` forces
    /// `q_{J+1} >= q_J + q_{J-1}`, so `|α − p_J/q_J| < 1/(q_J (q_J + q_{J-1}))`.
    pub fn deepest_approx(&self) -> (Rational, Rational) {
        let j = self.convergents.len() - 1;
        let (p, q) = &self.convergents[j];
        let (_, q_prev) = &self.convergents[j - 1];
        let value = Rational::from_bigs(p.clone(), q.clone()).expect("q_J >= 1");
        let err = Rational::from_bigs(BigInt::one(), q * (q + q_prev)).expect("positive");
        (value, err)
    }

    /// Growth check per index: `a_{i+1} >= q_i^(2K)` (smoothness-order mode)
    /// or `a_{i+1} >= q_i^8` (counterexample schedule).
    pub fn check_growth(&self, mode: GrowthMode) -> GrowthReport {
        let exponent: u32 = match mode {
            GrowthMode::SmoothnessOrder(k) => 2 * k,
            GrowthMode::EighthPower => 8,
        };
        let mut per_index = Vec::new();
        for i in 1..self.quotients.len() {
            let (_, q_i) = &self.convergents[i];
            let a_next = &self.quotients[i]; // a_{i+1} (quotients are 1-based)
            per_index.push(a_next >= &q_i.pow(exponent));
        }
        let all = per_index.iter().all(|&b| b);
        GrowthReport { per_index, all }
    }
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cf{:?}", self.quotients)
    }
}

impl Serialize for ContinuedFraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.quotients.iter().map(|a| a.to_string()).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ContinuedFraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let quotients: std::result::Result<Vec<BigInt>, _> = strings
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(de::Error::custom))
            .collect();
        ContinuedFraction::new(quotients?).map_err(de::Error::custom)
    }
}

/// Per-index growth verdicts; `all` is their conjunction.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub per_index: Vec<bool>,
    pub all: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthMode {
    /// `a_{i+1} >= q_i^(2K)` for a K-times differentiable skewing function.
    SmoothnessOrder(u32),
    /// `a_{i+1} >= q_i^8`, the schedule behind the explicit counterexample.
    EighthPower,
}

/// A rotation coordinate: exact rational or a continued fraction standing in
/// for an irrational.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum AlphaSpec {
    Rational(Rational),
    Cf(ContinuedFraction),
}

impl AlphaSpec {
    /// Midpoint/radius enclosure of the rotation number.
    pub fn enclosure(&self) -> (Rational, Rational) {
        match self {
            AlphaSpec::Rational(q) => (q.clone(), Rational::zero()),
            AlphaSpec::Cf(cf) => cf.deepest_approx(),
        }
    }
}

/// Certified interval containing `‖nα‖`.
///
/// Exact (zero-width) for rational `α`. For a continued fraction the shallowest
/// convergent meeting `tol` is used; with `tol = None` the deepest one. When
/// even the deepest convergent leaves the interval wider than `tol`, the call
/// fails with `InsufficientDepth`.
pub fn norm_multiple(alpha: &AlphaSpec, n: &BigInt, tol: Option<&Rational>) -> Result<Bounds> {
    if n < &BigInt::one() {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let n_rat = Rational::from_bigint(n.clone());
    match alpha {
        AlphaSpec::Rational(q) => Ok(Bounds::exact((&n_rat * q).dist_to_nearest_int())),
        AlphaSpec::Cf(cf) => {
            let deepest = cf.max_index();
            for j in 1..=deepest {
                let (value, err) = if j < deepest {
                    cf.approx_with_error(j)?
                } else {
                    cf.deepest_approx()
                };
                let center = &n_rat * &value;
                let radius = &n_rat * &err;
                let bounds = norm_interval(&(&center - &radius), &(&center + &radius));
                match tol {
                    Some(t) => {
                        if &bounds.width() <= t {
                            return Ok(bounds);
                        }
                        if j == deepest {
                            return Err(Error::InsufficientDepth(format!(
                                "‖{n}α‖ enclosure width {} exceeds tolerance {t}",
                                bounds.width()
                            )));
                        }
                    }
                    None => {
                        if j == deepest {
                            return Ok(bounds);
                        }
                    }
                }
            }
            unreachable!("loop returns at the deepest index")
        }
    }
}

/// Quotients with `a_{i+1} = n_i^8` exactly: the minimal schedule meeting the
/// counterexample's growth constraint. `depth` is the number of quotients.
pub fn build_eighth_power_quotients(depth: usize, a1: u64) -> Result<ContinuedFraction> {
    if depth < 2 {
        return Err(Error::OutOfRange("depth must be at least 2".into()));
    }
    if a1 < 1 {
        return Err(Error::OutOfRange("a1 must be at least 1".into()));
    }
    let mut quotients = vec![BigInt::from(a1)];
    let mut n_prev = BigInt::one(); // n_0
    let mut n = BigInt::from(a1); // n_1
    while quotients.len() < depth {
        let a_next = n.pow(8);
        let n_next = &a_next * &n + &n_prev;
        quotients.push(a_next);
        n_prev = std::mem::replace(&mut n, n_next);
    }
    Ok(ContinuedFraction::new(quotients)?.with_smoothness_order(4))
}
