//! The hidden-frequency counterexample pipeline: the quartic skewing function,
//! its Riemann-sum closed form and bound, the fast-growth rotation number, a
//! constructive search for the frequency β, and the certified inequality chain
//! showing that `‖H_m(x) + mβ‖ > 1/6` for every x at the selected times m.
//!
//! Every inequality is checked in exact arithmetic; the rotation number is
//! only ever used through a convergent with its certified error bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cfrac::{build_eighth_power_quotients, ContinuedFraction, GrowthMode};
use crate::dynsys::{lipschitz_bound, SkewMap};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// The explicit skewing function x⁴ − 2x³ + x² − 1/30 as a polynomial lift.
/// Zero mean, equal values at 0 and 1, third derivative jumping at the seam.
pub fn quartic_skew_map() -> SkewMap {
    SkewMap::poly_lift(vec![
        Rational::new(-1, 30),
        Rational::zero(),
        Rational::one(),
        Rational::new(-2, 1),
        Rational::one(),
    ])
    .expect("boundary values match")
}

/// Exact value of the lift on [0, 1].
pub fn quartic_eval(x: &Rational) -> Result<Rational> {
    if x < &Rational::zero() || x > &Rational::one() {
        return Err(Error::OutOfRange(format!("x = {x} outside [0, 1]")));
    }
    let x2 = x * x;
    let x3 = &x2 * x;
    let x4 = &x3 * x;
    Ok(x4 - Rational::from_int(2) * x3 + x2 - Rational::new(1, 30))
}

/// Closed form for the Riemann-type sum Σ_{i<n} H̃(x + i/n) on 0 ≤ x ≤ 1/n:
/// n x⁴ − 2x³ + (1/n) x² − 1/(30 n³).
pub fn riemann_closed_form(n: u64, x: &Rational) -> Result<Rational> {
    if n < 1 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    let n_rat = Rational::from_int(n as i64);
    if x < &Rational::zero() || x > &n_rat.recip()? {
        return Err(Error::OutOfRange(format!("x = {x} outside [0, 1/{n}]")));
    }
    let x2 = x * x;
    let x3 = &x2 * x;
    let x4 = &x3 * x;
    Ok(&n_rat * x4 - Rational::from_int(2) * x3 + x2 / &n_rat
        - Rational::new(1, 30) / (&n_rat * &n_rat * &n_rat))
}

/// 121/(30n³) for n ≥ 4, verified below 1/12. Bounds |Σ_{i<n} H̃(x + i/n)|
/// for every x.
pub fn riemann_bound(n: u64) -> Result<Rational> {
    if n < 4 {
        return Err(Error::OutOfRange(format!(
            "the bound needs n >= 4, got {n}"
        )));
    }
    let n_rat = Rational::from_int(n as i64);
    let bound = Rational::new(121, 30) / (&n_rat * &n_rat * &n_rat);
    debug_assert!(bound < Rational::new(1, 12));
    Ok(bound)
}

/// Outcome of the constructive β search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BetaSelection {
    pub beta: Rational,
    /// Indices into the input list whose norms exceed the threshold.
    pub satisfied: Vec<usize>,
    /// ‖n_t β‖ for every input entry.
    pub norms: Vec<Rational>,
}

/// Searches rationals β = num/den in lowest terms, den ≤ cap, maximizing the
/// number of entries with exact ‖n_t β‖ > threshold. Ties are broken by the
/// larger total norm, then by the smaller denominator and numerator, which
/// makes the output deterministic.
pub fn select_beta(
    n_list: &[BigInt],
    threshold: &Rational,
    denominator_cap: u64,
) -> Result<BetaSelection> {
    if n_list.is_empty() {
        return Err(Error::Invalid("empty list of times".into()));
    }
    let mut best: Option<(usize, Rational, BetaSelection)> = None;
    for den in 2..=denominator_cap {
        let den_big = BigInt::from(den);
        for num in 1..den {
            if num.gcd(&den) != 1 {
                continue;
            }
            let mut norms = Vec::with_capacity(n_list.len());
            let mut satisfied = Vec::new();
            let mut total = Rational::zero();
            for (t, n) in n_list.iter().enumerate() {
                let residue = (n * BigInt::from(num)).mod_floor(&den_big);
                let flipped = &den_big - &residue;
                let min_res = residue.min(flipped);
                let norm = Rational::from_bigs(min_res, den_big.clone())?;
                if &norm > threshold {
                    satisfied.push(t);
                }
                total += &norm;
                norms.push(norm);
            }
            let count = satisfied.len();
            let better = match &best {
                None => count > 0,
                Some((best_count, best_total, _)) => {
                    count > *best_count || (count == *best_count && &total > best_total)
                }
            };
            if better {
                best = Some((
                    count,
                    total,
                    BetaSelection {
                        beta: Rational::from_bigs(BigInt::from(num), den_big.clone())?,
                        satisfied,
                        norms,
                    },
                ));
            }
        }
    }
    match best {
        Some((_, _, selection)) => Ok(selection),
        None => Err(Error::NoBeta(denominator_cap)),
    }
}

/// Parameters of a certified counterexample instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HiddenFrequencyConfig {
    pub alpha: ContinuedFraction,
    pub beta: Rational,
    pub delta: Rational,
    pub lipschitz: Rational,
    /// Continued-fraction indices i whose denominators q_i = n_i form the
    /// candidate recurrence times.
    pub selected_indices: Vec<usize>,
}

impl HiddenFrequencyConfig {
    /// Builds the desk-scale instance: minimal growth schedule with the given
    /// first quotient, the coefficient-sum Lipschitz bound for the quartic,
    /// and β from the constructive search over the candidate times q_1..q_{J-1}.
    pub fn desk_scale(
        depth: usize,
        a1: u64,
        delta: Rational,
        beta_cap: u64,
    ) -> Result<(Self, BetaSelection)> {
        let alpha = build_eighth_power_quotients(depth, a1)?;
        let lipschitz = lipschitz_bound(&quartic_skew_map())?;
        let max_delta = (Rational::from_int(12) * &lipschitz).recip()?;
        if delta <= Rational::zero() || delta >= max_delta {
            return Err(Error::OutOfRange(format!(
                "delta must lie in (0, 1/(12L)) = (0, {max_delta})"
            )));
        }
        // candidate times: q_i for 1 <= i < max index (the error bound at the
        // deepest index has no successor convergent)
        let candidates: Vec<usize> = (1..alpha.max_index()).collect();
        let n_list: Vec<BigInt> = candidates
            .iter()
            .map(|&i| alpha.convergents()[i].1.clone())
            .collect();
        let selection = select_beta(&n_list, &Rational::new(1, 3), beta_cap)?;
        let mut selected_indices = Vec::new();
        for (slot, &i) in candidates.iter().enumerate() {
            if !selection.satisfied.contains(&slot) {
                continue;
            }
            // certified n_i ‖n_i α‖ < q_i / q_{i+1}
            let (_, q_i) = &alpha.convergents()[i];
            let (_, q_next) = &alpha.convergents()[i + 1];
            let bound = Rational::from_bigs(q_i.clone(), q_next.clone())?;
            if bound < delta {
                selected_indices.push(i);
            }
        }
        let config = HiddenFrequencyConfig {
            alpha,
            beta: selection.beta.clone(),
            delta,
            lipschitz,
            selected_indices,
        };
        Ok((config, selection))
    }

    /// Same instance with β replaced; used to probe failing chains.
    pub fn with_beta(mut self, beta: Rational) -> Self {
        self.beta = beta;
        self
    }
}

/// One checked inequality of the chain. The relation for each link name is
/// fixed (see [`link_relation`]); `holds` records whether lhs relates to rhs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainLink {
    pub link: String,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkRelation {
    Lt,
    Le,
    Eq,
}

/// Relation asserted by a link, keyed by name prefix. Audits re-verify
/// transcripts through this table.
pub fn link_relation(name: &str) -> LinkRelation {
    if name.starts_with("growth_schedule") || name.starts_with("riemann_precondition") {
        LinkRelation::Le
    } else if name.starts_with("coprime") || name.starts_with("sigma_bijective") {
        LinkRelation::Eq
    } else {
        LinkRelation::Lt
    }
}

pub fn relation_holds(relation: LinkRelation, lhs: &Rational, rhs: &Rational) -> bool {
    match relation {
        LinkRelation::Lt => lhs < rhs,
        LinkRelation::Le => lhs <= rhs,
        LinkRelation::Eq => lhs == rhs,
    }
}

// big integers travel as decimal strings in artifacts
mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        v: &BigInt,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigInt, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(de::Error::custom)
    }
}

/// Certified conclusion of a successful chain.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertifiedMargin {
    pub index: usize,
    #[serde(with = "bigint_string")]
    pub m: BigInt,
    pub sup_bound_on_hm: Rational,
    pub beta_norm_lower: Rational,
    pub margin: Rational,
}

/// Full transcript of a certification attempt.
#[derive(Clone, Debug, Serialize)]
pub struct CertifyReport {
    pub index: usize,
    pub links: Vec<ChainLink>,
    pub margin: Option<CertifiedMargin>,
    pub failed_link: Option<String>,
}

impl CertifyReport {
    pub fn succeeded(&self) -> bool {
        self.failed_link.is_none()
    }
}

const MAX_PERMUTATION_M: u64 = 1 << 26;

struct ChainBuilder {
    links: Vec<ChainLink>,
    failed: Option<String>,
}

impl ChainBuilder {
    fn new() -> Self {
        ChainBuilder {
            links: Vec::new(),
            failed: None,
        }
    }

    /// Records the link and returns whether it holds; the first failure stops
    /// the chain.
    fn check(&mut self, name: &str, lhs: Rational, rhs: Rational) -> bool {
        let holds = relation_holds(link_relation(name), &lhs, &rhs);
        self.links.push(ChainLink {
            link: name.to_string(),
            lhs,
            rhs,
            holds,
        });
        if !holds && self.failed.is_none() {
            self.failed = Some(name.to_string());
        }
        holds
    }
}

/// Runs the certified inequality chain at cf index `i` (so m = q_i):
/// growth schedule, δ < 1/(12L), nearest integer and coprimality of p_i,
/// the convergent error against δ/m², bijectivity of σ(i') = i'k mod m, the
/// term-wise rearrangement sum against δ, the Riemann bound, and finally
/// ‖mβ‖ − (Lδ + 1/12) > 1/6.
pub fn certify_gap(config: &HiddenFrequencyConfig, i: usize) -> Result<CertifyReport> {
    let cf = &config.alpha;
    if i < 1 || i + 1 > cf.max_index() {
        return Err(Error::ConvergentIndex {
            index: i,
            available: cf.max_index(),
        });
    }
    let mut chain = ChainBuilder::new();

    // The quotient growth schedule: the hypothesis under which the skew
    // product built on this rotation number is minimal.
    let growth = cf.check_growth(GrowthMode::EighthPower);
    for (t, &ok) in growth.per_index.iter().enumerate() {
        let idx = t + 1;
        let (_, q_t) = &cf.convergents()[idx];
        let a_next = &cf.quotients()[idx];
        let _ = ok;
        chain.check(
            &format!("growth_schedule_{idx}"),
            Rational::from_bigint(q_t.pow(8)),
            Rational::from_bigint(a_next.clone()),
        );
    }

    let l = &config.lipschitz;
    let delta = &config.delta;
    let twelfth_inv = (Rational::from_int(12) * l).recip()?;
    chain.check("delta_range", delta.clone(), twelfth_inv);

    let (p_i, q_i) = cf.convergents()[i].clone();
    let (_, q_next) = cf.convergents()[i + 1].clone();
    let m_big = q_i.clone();
    let m_rat = Rational::from_bigint(m_big.clone());
    // |α − p_i/q_i| < err
    let err = Rational::from_bigs(BigInt::one(), &q_i * &q_next)?;

    // (a) p_i is the nearest integer to mα: |mα − p_i| ≤ m·err < 1/2,
    //     and gcd(p_i, m) = 1.
    let near = &m_rat * &err;
    chain.check("nearest_integer", near.clone(), Rational::new(1, 2));
    chain.check(
        "coprime",
        Rational::from_bigint(p_i.gcd(&m_big)),
        Rational::one(),
    );

    // (b) |α − k/m| < δ/m²
    chain.check(
        "alpha_convergent_error",
        err.clone(),
        delta / &(&m_rat * &m_rat),
    );

    if chain.failed.is_none() {
        let m_u64 = m_big.to_u64().filter(|&m| m <= MAX_PERMUTATION_M);
        match m_u64 {
            None => {
                return Err(Error::BudgetExceeded(format!(
                    "m = {m_big} is too large for the permutation links"
                )))
            }
            Some(m) => {
                // (c) σ(i') = i'k mod m is a bijection, and the rearrangement
                //     sum Σ ‖i'α − σ(i')/m‖ is bounded term-wise by i'·err.
                let k_mod = p_i.mod_floor(&m_big).to_u64().expect("reduced below m");
                let mut seen = vec![false; m as usize];
                let mut distinct = 0u64;
                let mut sigma = 0u64;
                let mut numerator_sum: u128 = 0;
                for t in 0..m {
                    if !seen[sigma as usize] {
                        seen[sigma as usize] = true;
                        distinct += 1;
                    }
                    numerator_sum += t as u128;
                    sigma += k_mod;
                    if sigma >= m {
                        sigma -= m;
                    }
                }
                chain.check(
                    "sigma_bijective",
                    Rational::from_int(distinct as i64),
                    m_rat.clone(),
                );
                let sum_bound = &err * &Rational::from_bigint(BigInt::from(numerator_sum));
                chain.check("rearrangement_sum", sum_bound, delta.clone());

                // (d) the Riemann-sum bound needs m ≥ 4
                chain.check(
                    "riemann_precondition",
                    Rational::from_int(4),
                    m_rat.clone(),
                );
                if chain.failed.is_none() {
                    let rb = riemann_bound(m)?;
                    chain.check("riemann_bound", rb, Rational::new(1, 12));
                }
            }
        }
    }

    // sup_x |H_m(x)| ≤ Lδ + 1/12 < 1/6, then the frequency gap
    let sup_bound = l * delta + Rational::new(1, 12);
    chain.check("hm_sup_below_sixth", sup_bound.clone(), Rational::new(1, 6));
    let beta_norm = (&m_rat * &config.beta).dist_to_nearest_int();
    chain.check("beta_norm_above_third", Rational::new(1, 3), beta_norm.clone());
    let margin = &beta_norm - &sup_bound;
    chain.check("margin_above_sixth", Rational::new(1, 6), margin.clone());

    let failed = chain.failed.clone();
    let margin_record = failed.is_none().then_some(CertifiedMargin {
        index: i,
        m: m_big,
        sup_bound_on_hm: sup_bound,
        beta_norm_lower: beta_norm,
        margin,
    });
    Ok(CertifyReport {
        index: i,
        links: chain.links,
        margin: margin_record,
        failed_link: failed,
    })
}

/// Sampled minimum of ‖H_m(x) + mβ‖ over random exact rationals x, with α
/// replaced by its deepest convergent. Requires a successful certificate;
/// the sampled minimum must then exceed 1/6.
#[derive(Clone, Debug, Serialize)]
pub struct SpotReport {
    pub index: usize,
    #[serde(with = "bigint_string")]
    pub m: BigInt,
    pub samples: u64,
    pub min_norm: Option<Rational>,
    pub min_at: Option<Rational>,
}

const SAMPLE_DENOM_BITS: u32 = 30;

pub fn spot_check_gap(
    config: &HiddenFrequencyConfig,
    i: usize,
    sample_count: u64,
    seed: u64,
) -> Result<SpotReport> {
    let report = certify_gap(config, i)?;
    if !report.succeeded() {
        return Err(Error::Uncertifiable(format!(
            "certificate failed at link {:?}; the spot check has nothing to verify",
            report.failed_link
        )));
    }
    let m_big = report.margin.as_ref().expect("succeeded").m.clone();
    let m = m_big.to_u64().expect("checked in certify_gap");

    if sample_count == 0 {
        return Ok(SpotReport {
            index: i,
            m: m_big,
            samples: 0,
            min_norm: None,
            min_at: None,
        });
    }

    let deepest = config.alpha.max_index();
    let (p_j, q_j) = config.alpha.convergents()[deepest].clone();

    let sample_den = BigInt::one() << SAMPLE_DENOM_BITS;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<BigInt> = vec![BigInt::zero()]; // always include x = 0
    for _ in 1..sample_count {
        xs.push(BigInt::from(rng.gen_range(0u64..(1u64 << SAMPLE_DENOM_BITS))));
    }

    // common denominator D = q_J · 2^bits; orbit numerators advance by
    // p_J · 2^bits mod D, and H̃(a/D) = (a(D−a))²/D⁴ − 1/30
    let big_d = &q_j * &sample_den;
    let step = (&p_j * &sample_den).mod_floor(&big_d);
    let d4_times_30 = {
        let d2 = &big_d * &big_d;
        BigInt::from(30) * &d2 * &d2
    };
    let m_beta = (&Rational::from_bigint(m_big.clone()) * &config.beta).frac_mod1();

    let norms: Vec<Rational> = xs
        .par_iter()
        .map(|x_num| {
            let mut a = (x_num * &q_j).mod_floor(&big_d);
            let mut total = BigInt::zero();
            let d4 = &d4_times_30 / BigInt::from(30);
            for _ in 0..m {
                let b = &a * (&big_d - &a);
                total += BigInt::from(30) * (&b * &b) - &d4;
                a += &step;
                if a >= big_d {
                    a -= &big_d;
                }
            }
            let h_m = Rational::from_bigs(total, d4_times_30.clone()).expect("positive denom");
            (h_m + &m_beta).dist_to_nearest_int()
        })
        .collect();

    let mut min_idx = 0usize;
    for (idx, norm) in norms.iter().enumerate() {
        if norm < &norms[min_idx] {
            min_idx = idx;
        }
    }
    Ok(SpotReport {
        index: i,
        m: m_big,
        samples: sample_count,
        min_norm: Some(norms[min_idx].clone()),
        min_at: Some(
            Rational::from_bigs(xs[min_idx].clone(), sample_den).expect("positive denom"),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    /// Independent oracle: the n-term direct sum through `quartic_eval` alone.
    fn direct_riemann_sum(n: u64, x: &Rational) -> Rational {
        let n_rat = Rational::from_int(n as i64);
        let mut total = Rational::zero();
        for i in 0..n {
            let arg = (x + &(Rational::from_int(i as i64) / &n_rat)).frac_mod1();
            total = total + quartic_eval(&arg).unwrap();
        }
        total
    }

    #[test]
    fn quartic_eval_examples() {
        assert_eq!(quartic_eval(&Rational::zero()).unwrap(), r(-1, 30));
        assert_eq!(quartic_eval(&Rational::one()).unwrap(), r(-1, 30));
        assert_eq!(quartic_eval(&r(1, 2)).unwrap(), r(7, 240));
        assert!(quartic_eval(&r(3, 2)).is_err());
        assert!(quartic_eval(&r(-1, 10)).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            riemann_closed_form(4, &Rational::zero()).unwrap(),
            r(-1, 1920)
        );
        assert_eq!(
            riemann_closed_form(1, &Rational::zero()).unwrap(),
            r(-1, 30)
        );
        // closed form equals the independent direct sum
        let x = r(1, 8);
        assert_eq!(
            riemann_closed_form(4, &x).unwrap(),
            direct_riemann_sum(4, &x)
        );
        assert!(riemann_closed_form(4, &r(1, 2)).is_err());
    }

    #[test]
    fn closed_form_equals_direct_sum_on_small_grid() {
        for n in 1u64..=24 {
            for step in 0..=6u64 {
                let x = r(step as i64, (6 * n) as i64);
                assert_eq!(
                    riemann_closed_form(n, &x).unwrap(),
                    direct_riemann_sum(n, &x),
                    "n = {n}, x = {x}"
                );
            }
        }
    }

    #[test]
    fn riemann_sum_is_inverse_n_periodic() {
        for n in [3u64, 4, 7] {
            for num in 0..5i64 {
                let x = r(num, (8 * n) as i64);
                let shifted = &x + &r(1, n as i64);
                assert_eq!(direct_riemann_sum(n, &x), direct_riemann_sum(n, &shifted));
            }
        }
    }

    #[test]
    fn closed_form_stays_below_bound_on_fine_grid() {
        // |closed form| <= 121/(30n^3) on a 1/1024-step grid of [0, 1/n]
        let step = Rational::new(1, 1024);
        for n in 4u64..=256 {
            let bound = riemann_bound(n).unwrap();
            let last = Rational::new(1, n as i64);
            let mut x = Rational::zero();
            while x <= last {
                let v = riemann_closed_form(n, &x).unwrap();
                assert!(v.abs() <= bound, "n = {n}, x = {x}");
                x += &step;
            }
            // include the right endpoint exactly
            let v = riemann_closed_form(n, &last).unwrap();
            assert!(v.abs() <= bound);
        }
    }

    #[test]
    fn riemann_bound_examples() {
        assert_eq!(riemann_bound(4).unwrap(), r(121, 1920));
        assert!(riemann_bound(4).unwrap() < r(1, 12));
        assert_eq!(riemann_bound(10).unwrap(), r(121, 30000));
        assert!(riemann_bound(3).is_err());
    }

    #[test]
    fn select_beta_examples() {
        let sel = select_beta(&[BigInt::from(2), BigInt::from(3)], &r(1, 3), 8).unwrap();
        assert_eq!(sel.beta, r(1, 5));
        assert_eq!(sel.satisfied, vec![0, 1]);

        let sel = select_beta(&[BigInt::from(1)], &r(1, 3), 8).unwrap();
        assert_eq!(sel.beta, r(1, 2));

        // no β can beat 1/3 on both 2 and 4; the search reports the best subset
        let sel = select_beta(&[BigInt::from(2), BigInt::from(4)], &r(1, 3), 8).unwrap();
        assert_eq!(sel.satisfied.len(), 1);
        for &t in &sel.satisfied {
            assert!(sel.norms[t] > r(1, 3));
        }

        assert!(matches!(
            select_beta(&[BigInt::from(2)], &r(499, 1000), 2),
            Err(Error::NoBeta(2))
        ));
    }

    fn desk_config() -> (HiddenFrequencyConfig, BetaSelection) {
        HiddenFrequencyConfig::desk_scale(3, 3, r(1, 145), 64).unwrap()
    }

    #[test]
    fn desk_scale_selects_both_indices() {
        let (config, selection) = desk_config();
        assert_eq!(config.selected_indices, vec![1, 2]);
        assert_eq!(selection.satisfied.len(), 2);
        // both norms strictly beat 1/3
        for norm in &selection.norms {
            assert!(norm > &r(1, 3));
        }
        // ‖q_2 β‖ = 1/2 is the best possible at index 2
        assert_eq!(selection.norms[1], r(1, 2));
    }

    #[test]
    fn certify_gap_succeeds_at_index_two() {
        let (config, _) = desk_config();
        let report = certify_gap(&config, 2).unwrap();
        assert!(report.succeeded(), "failed at {:?}", report.failed_link);
        let margin = report.margin.unwrap();
        assert!(margin.margin > r(1, 6));
        assert_eq!(margin.m, BigInt::from(19684u64));
        // every link re-verifies from its own lhs/rhs
        for link in &report.links {
            assert!(link.holds);
            assert!(relation_holds(
                link_relation(&link.link),
                &link.lhs,
                &link.rhs
            ));
        }
    }

    #[test]
    fn certify_gap_fails_at_small_m() {
        // index 1 has m = 3 < 4: the Riemann precondition link must fail
        let (config, _) = desk_config();
        let report = certify_gap(&config, 1).unwrap();
        assert!(!report.succeeded());
        assert_eq!(report.failed_link.as_deref(), Some("riemann_precondition"));
    }

    #[test]
    fn certify_gap_reports_bad_beta() {
        let (config, _) = desk_config();
        // β = 1/3 gives ‖mβ‖ ∈ {0, 1/3}, never above 1/3
        let bad = config.with_beta(r(1, 3));
        let report = certify_gap(&bad, 2).unwrap();
        assert_eq!(report.failed_link.as_deref(), Some("beta_norm_above_third"));
    }

    #[test]
    fn certify_gap_checks_index_range() {
        let (config, _) = desk_config();
        assert!(certify_gap(&config, 0).is_err());
        assert!(certify_gap(&config, 3).is_err());
    }

    #[test]
    fn spot_check_small_sample() {
        let (config, _) = desk_config();
        let report = spot_check_gap(&config, 2, 8, 7).unwrap();
        let min = report.min_norm.unwrap();
        assert!(min > r(1, 6), "sampled min {min}");

        let empty = spot_check_gap(&config, 2, 0, 7).unwrap();
        assert!(empty.min_norm.is_none());

        assert!(spot_check_gap(&config, 1, 4, 7).is_err());
    }

    #[test]
    fn spot_check_at_zero_matches_direct_summation() {
        // The internal numerator arithmetic must agree with a plain rational
        // summation of H̃ along the proxy orbit.
        let (config, _) = desk_config();
        let report = spot_check_gap(&config, 2, 1, 0).unwrap();
        let m = 19684u64;
        let deepest = config.alpha.max_index();
        let (p, q) = config.alpha.convergents()[deepest].clone();
        let alpha_proxy = Rational::from_bigs(p, q).unwrap();
        let mut sum = Rational::zero();
        let mut pos = Rational::zero();
        for _ in 0..m {
            sum = sum + quartic_eval(&pos.frac_mod1()).unwrap();
            pos += &alpha_proxy;
        }
        let m_beta = &Rational::from_int(m as i64) * &config.beta;
        let expected = (sum + m_beta).dist_to_nearest_int();
        assert_eq!(report.min_norm.unwrap(), expected);
    }

    #[test]
    fn sigma_is_a_permutation_when_coprime() {
        for (k, m) in [(7u64, 19684u64), (3, 16), (5, 12)] {
            let mut seen = vec![false; m as usize];
            let mut sigma = 0u64;
            let mut distinct = 0u64;
            for _ in 0..m {
                if !seen[sigma as usize] {
                    seen[sigma as usize] = true;
                    distinct += 1;
                }
                sigma = (sigma + k) % m;
            }
            let coprime = num_integer::gcd(k, m) == 1;
            assert_eq!(distinct == m, coprime, "k = {k}, m = {m}");
        }
    }
}
