//! Base systems (toral rotations, odometers), the closed class of skewing
//! maps with computable winding number / lift / mean / Lipschitz bound,
//! cocycle sums, tower iteration, and the closed form for towers whose upper
//! fibers are skewed by the identity.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cfrac::{norm_multiple, AlphaSpec};
use crate::error::{Error, Result};
use crate::rational::{Bounds, Rational};
use crate::torus::{BasePoint, ProductPoint, TorusPoint};
use crate::trig;

/// Closed class of skewing maps. Circle variants are maps 𝕋 → 𝕋; cylinder
/// maps are locally constant maps from an odometer base to 𝕋.
///
/// Invariants: `PolyLift` coefficients (ascending degree) satisfy p(0) = p(1);
/// `Sum` holds no nested `Sum` and no `CylinderMap`; a `CylinderMap` table has
/// one entry per depth-j cylinder of its base.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SkewMap {
    /// x ↦ kx mod 1.
    LinearWinding(i64),
    /// x ↦ p(x) mod 1 for a polynomial lift p with p(0) = p(1).
    PolyLift(Vec<Rational>),
    /// x ↦ c₀ + Σ_k (a_k cos(2πkx) + b_k sin(2πkx)) mod 1.
    TrigPoly {
        constant: Rational,
        cos: Vec<Rational>,
        sin: Vec<Rational>,
    },
    Constant(TorusPoint),
    Sum(Vec<SkewMap>),
    /// Value depends only on the first `depth` odometer digits; the table is
    /// indexed by the mixed-radix value of that prefix.
    CylinderMap { depth: usize, table: Vec<TorusPoint> },
}

impl SkewMap {
    pub fn poly_lift(coeffs: Vec<Rational>) -> Result<SkewMap> {
        let at_zero = coeffs.first().cloned().unwrap_or_else(Rational::zero);
        let at_one = coeffs
            .iter()
            .fold(Rational::zero(), |acc, c| acc + c);
        if at_zero != at_one {
            return Err(Error::Invalid(
                "polynomial lift must satisfy p(0) = p(1)".into(),
            ));
        }
        Ok(SkewMap::PolyLift(coeffs))
    }

    /// Flattens nested sums. Cylinder maps cannot be summed.
    pub fn sum(parts: Vec<SkewMap>) -> Result<SkewMap> {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                SkewMap::Sum(inner) => flat.extend(inner),
                SkewMap::CylinderMap { .. } => {
                    return Err(Error::DomainMismatch(
                        "cylinder maps cannot appear inside a sum".into(),
                    ))
                }
                other => flat.push(other),
            }
        }
        Ok(SkewMap::Sum(flat))
    }

    pub fn constant_rational(c: Rational) -> SkewMap {
        SkewMap::Constant(TorusPoint::exact(c))
    }

    fn is_circle_map(&self) -> bool {
        !matches!(self, SkewMap::CylinderMap { .. })
    }

    /// Structural invariants (polynomial boundary condition, sum flatness).
    pub fn validate(&self) -> Result<()> {
        match self {
            SkewMap::PolyLift(coeffs) => {
                SkewMap::poly_lift(coeffs.clone())?;
            }
            SkewMap::Sum(parts) => {
                for p in parts {
                    if matches!(p, SkewMap::Sum(_) | SkewMap::CylinderMap { .. }) {
                        return Err(Error::Invalid("sum must be flat and cylinder-free".into()));
                    }
                    p.validate()?;
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// h(t) for circle-typed maps. Radius of tracked inputs is transferred
    /// through the map's Lipschitz bound; trig values contribute their own
    /// enclosure width.
    pub fn eval_circle(&self, t: &TorusPoint) -> Result<TorusPoint> {
        match self {
            SkewMap::LinearWinding(k) => Ok(t.scale_int(*k)),
            SkewMap::PolyLift(coeffs) => {
                let value = eval_poly(coeffs, t.value());
                let radius = if t.is_exact() {
                    Rational::zero()
                } else {
                    lipschitz_bound(self)? * t.radius()
                };
                Ok(TorusPoint::tracked(value, radius))
            }
            SkewMap::TrigPoly { .. } => {
                let b = self.trig_eval(t.value());
                let mid = (b.lo() + b.hi()) * Rational::new(1, 2);
                let own = b.width() * Rational::new(1, 2);
                let carried = lipschitz_bound(self)? * t.radius();
                Ok(TorusPoint::tracked(mid, own + carried))
            }
            SkewMap::Constant(c) => Ok(c.clone()),
            SkewMap::Sum(parts) => {
                let mut acc = TorusPoint::zero();
                for p in parts {
                    acc = acc.add(&p.eval_circle(t)?);
                }
                Ok(acc)
            }
            SkewMap::CylinderMap { .. } => Err(Error::DomainMismatch(
                "cylinder map is not a circle map".into(),
            )),
        }
    }

    /// h(x) for a point of the given base system.
    pub fn eval_on_base(&self, base: &BaseSystem, x: &BasePoint) -> Result<TorusPoint> {
        match (self, x) {
            (SkewMap::Constant(c), _) => Ok(c.clone()),
            (SkewMap::CylinderMap { depth, table }, BasePoint::Odometer(digits)) => {
                let bases = match base {
                    BaseSystem::Odometer { bases } => bases,
                    _ => {
                        return Err(Error::DomainMismatch(
                            "cylinder map needs an odometer base".into(),
                        ))
                    }
                };
                if *depth > digits.len() || *depth > bases.len() {
                    return Err(Error::DomainMismatch(format!(
                        "cylinder depth {depth} exceeds available digits"
                    )));
                }
                let mut index = 0usize;
                let mut stride = 1usize;
                for i in 0..*depth {
                    index += (digits[i] as usize) * stride;
                    stride *= bases[i] as usize;
                }
                table
                    .get(index)
                    .cloned()
                    .ok_or_else(|| Error::DomainMismatch("cylinder table too small".into()))
            }
            (m, BasePoint::Torus(coords)) if m.is_circle_map() => {
                if coords.len() != 1 {
                    return Err(Error::DomainMismatch(
                        "circle-typed skewing maps need a 1-dimensional rotation base".into(),
                    ));
                }
                m.eval_circle(&coords[0])
            }
            _ => Err(Error::DomainMismatch(
                "skewing map domain does not match the base point".into(),
            )),
        }
    }

    fn trig_eval(&self, x: &Rational) -> Bounds {
        match self {
            SkewMap::TrigPoly { constant, cos, sin } => {
                let mut acc = Bounds::exact(constant.clone());
                for (k, a) in cos.iter().enumerate() {
                    let arg = x * &Rational::from_int((k + 1) as i64);
                    acc = acc.add(&trig::cos2pi(&arg).scale(a));
                }
                for (k, b) in sin.iter().enumerate() {
                    let arg = x * &Rational::from_int((k + 1) as i64);
                    acc = acc.add(&trig::sin2pi(&arg).scale(b));
                }
                acc
            }
            _ => unreachable!("trig_eval only called on TrigPoly"),
        }
    }
}

fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Winding number: the slope class of the map's lift. Sums are additive;
/// cylinder maps live on a totally disconnected base where winding has no
/// meaning.
pub fn winding(h: &SkewMap) -> Result<i64> {
    match h {
        SkewMap::LinearWinding(k) => Ok(*k),
        SkewMap::PolyLift(_) | SkewMap::TrigPoly { .. } | SkewMap::Constant(_) => Ok(0),
        SkewMap::Sum(parts) => {
            let mut total = 0i64;
            for p in parts {
                total += winding(p)?;
            }
            Ok(total)
        }
        SkewMap::CylinderMap { .. } => Err(Error::WindingUndefined),
    }
}

/// Continuous real lift of a zero-winding circle map, evaluable at exact
/// rationals. Polynomial and constant pieces are exact; trigonometric pieces
/// return certified enclosures.
pub struct Lift<'a> {
    map: &'a SkewMap,
}

pub fn lift(h: &SkewMap) -> Result<Lift<'_>> {
    match winding(h)? {
        0 => Ok(Lift { map: h }),
        w => Err(Error::NonzeroWinding(w)),
    }
}

impl Lift<'_> {
    pub fn eval(&self, x: &Rational) -> Bounds {
        lift_eval_part(self.map, &x.frac_mod1())
    }

    /// Exact evaluation when no trigonometric part is involved.
    pub fn eval_exact(&self, x: &Rational) -> Option<Rational> {
        self.eval(x).exact_value().cloned()
    }
}

// Part-lifts: inside a zero-winding sum, a LinearWinding(k) term contributes
// the sawtooth k·{x}; the jumps cancel across the sum exactly when the total
// winding is zero.
fn lift_eval_part(h: &SkewMap, x: &Rational) -> Bounds {
    match h {
        SkewMap::LinearWinding(k) => Bounds::exact(x * &Rational::from_int(*k)),
        SkewMap::PolyLift(coeffs) => Bounds::exact(eval_poly(coeffs, x)),
        SkewMap::TrigPoly { .. } => h.trig_eval(x),
        SkewMap::Constant(c) => Bounds::from_midpoint(c.value(), c.radius()),
        SkewMap::Sum(parts) => parts
            .iter()
            .fold(Bounds::exact(Rational::zero()), |acc, p| {
                acc.add(&lift_eval_part(p, x))
            }),
        SkewMap::CylinderMap { .. } => unreachable!("winding() rejects cylinder maps"),
    }
}

/// Exact integral over [0, 1] of the canonical lift. Requires zero total
/// winding.
pub fn mean(h: &SkewMap) -> Result<Rational> {
    match winding(h)? {
        0 => Ok(mean_part(h)),
        w => Err(Error::NonzeroWinding(w)),
    }
}

fn mean_part(h: &SkewMap) -> Rational {
    match h {
        // ∫ k{x} dx = k/2 for the sawtooth part-lift
        SkewMap::LinearWinding(k) => Rational::new(*k, 2),
        SkewMap::PolyLift(coeffs) => coeffs
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, c)| {
                acc + c / &Rational::from_int((i + 1) as i64)
            }),
        // the oscillatory terms integrate to zero
        SkewMap::TrigPoly { constant, .. } => constant.clone(),
        SkewMap::Constant(c) => c.value().clone(),
        SkewMap::Sum(parts) => parts
            .iter()
            .fold(Rational::zero(), |acc, p| acc + mean_part(p)),
        SkewMap::CylinderMap { .. } => unreachable!("winding() rejects cylinder maps"),
    }
}

/// Certified upper bound for the map's Lipschitz constant, valid in the torus
/// metric (coefficient-sum over-approximations, never exact maximization).
pub fn lipschitz_bound(h: &SkewMap) -> Result<Rational> {
    match h {
        SkewMap::LinearWinding(k) => Ok(Rational::from_int(k.abs())),
        SkewMap::PolyLift(coeffs) => Ok(coeffs
            .iter()
            .enumerate()
            .skip(1)
            .fold(Rational::zero(), |acc, (i, c)| {
                acc + Rational::from_int(i as i64) * c.abs()
            })),
        SkewMap::TrigPoly { cos, sin, .. } => {
            // |f'(x)| <= Σ 2πk(|a_k| + |b_k|), with π rounded up to 355/113
            let two_pi_ub = Rational::new(710, 113);
            let mut acc = Rational::zero();
            for (k, a) in cos.iter().enumerate() {
                acc = acc + &two_pi_ub * &Rational::from_int((k + 1) as i64) * a.abs();
            }
            for (k, b) in sin.iter().enumerate() {
                acc = acc + &two_pi_ub * &Rational::from_int((k + 1) as i64) * b.abs();
            }
            Ok(acc)
        }
        SkewMap::Constant(_) => Ok(Rational::zero()),
        SkewMap::Sum(parts) => {
            let mut acc = Rational::zero();
            for p in parts {
                acc = acc + lipschitz_bound(p)?;
            }
            Ok(acc)
        }
        SkewMap::CylinderMap { .. } => Err(Error::DomainMismatch(
            "no Lipschitz bound for cylinder maps".into(),
        )),
    }
}

/// An equicontinuous base system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum BaseSystem {
    /// x ↦ x + α⃗ on 𝕋^d.
    TorusRotation { alphas: Vec<AlphaSpec> },
    /// Add-one-with-carry on a finite truncation of Π ℤ/b_iℤ.
    Odometer { bases: Vec<u64> },
}

impl BaseSystem {
    pub fn rotation1(alpha: AlphaSpec) -> Self {
        BaseSystem::TorusRotation {
            alphas: vec![alpha],
        }
    }

    pub fn rotation_rational(alpha: Rational) -> Self {
        Self::rotation1(AlphaSpec::Rational(alpha))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            BaseSystem::TorusRotation { alphas } => {
                if alphas.is_empty() {
                    return Err(Error::Invalid("rotation needs dimension >= 1".into()));
                }
            }
            BaseSystem::Odometer { bases } => {
                if bases.is_empty() {
                    return Err(Error::Invalid("odometer needs at least one base".into()));
                }
                if bases.iter().any(|&b| b < 2) {
                    return Err(Error::Invalid("odometer bases must be >= 2".into()));
                }
            }
        }
        Ok(())
    }

    pub fn shape_ok(&self, x: &BasePoint) -> bool {
        match (self, x) {
            (BaseSystem::TorusRotation { alphas }, BasePoint::Torus(coords)) => {
                alphas.len() == coords.len()
            }
            (BaseSystem::Odometer { bases }, BasePoint::Odometer(digits)) => {
                bases.len() == digits.len()
                    && digits.iter().zip(bases).all(|(d, b)| d < b)
            }
            _ => false,
        }
    }

    /// Rotation coordinates as torus points (tracked when α comes from a
    /// continued fraction).
    fn alpha_points(&self) -> Result<Vec<TorusPoint>> {
        match self {
            BaseSystem::TorusRotation { alphas } => Ok(alphas
                .iter()
                .map(|a| {
                    let (value, radius) = a.enclosure();
                    TorusPoint::tracked(value, radius)
                })
                .collect()),
            _ => Err(Error::DomainMismatch("not a rotation".into())),
        }
    }

    pub fn step(&self, x: &BasePoint) -> Result<BasePoint> {
        self.advance(x, 1)
    }

    /// m-fold application of the base map.
    pub fn advance(&self, x: &BasePoint, m: u64) -> Result<BasePoint> {
        if !self.shape_ok(x) {
            return Err(Error::ShapeMismatch("base point has wrong shape".into()));
        }
        match (self, x) {
            (BaseSystem::TorusRotation { .. }, BasePoint::Torus(coords)) => {
                let alphas = self.alpha_points()?;
                let m_big = BigInt::from(m);
                let moved = coords
                    .iter()
                    .zip(&alphas)
                    .map(|(c, a)| c.add(&a.scale_bigint(&m_big)))
                    .collect();
                Ok(BasePoint::Torus(moved))
            }
            (BaseSystem::Odometer { bases }, BasePoint::Odometer(digits)) => {
                let mut out = digits.clone();
                let mut carry = m as u128;
                for (d, &b) in out.iter_mut().zip(bases) {
                    if carry == 0 {
                        break;
                    }
                    let total = *d as u128 + carry;
                    *d = (total % b as u128) as u64;
                    carry = total / b as u128;
                }
                // carry past the truncation depth affects only unseen digits
                Ok(BasePoint::Odometer(out))
            }
            _ => unreachable!("shape checked above"),
        }
    }

    /// `sup_x d(x, T^m x)`, which for these isometric bases does not depend
    /// on x: Σ‖mα_j‖ for rotations, 2^(-j(m)) for odometers where j(m) is the
    /// deepest digit level whose modulus divides m.
    pub fn return_distance(&self, m: u64) -> Result<Bounds> {
        if m == 0 {
            return Ok(Bounds::exact(Rational::zero()));
        }
        match self {
            BaseSystem::TorusRotation { alphas } => {
                let m_big = BigInt::from(m);
                let mut total = Bounds::exact(Rational::zero());
                for a in alphas {
                    total = total.add(&norm_multiple(a, &m_big, None)?);
                }
                Ok(total)
            }
            BaseSystem::Odometer { bases } => {
                let mut j = 0u32;
                let mut modulus: u128 = 1;
                for &b in bases {
                    match modulus.checked_mul(b as u128) {
                        Some(next) if (m as u128).is_multiple_of(next) => {
                            modulus = next;
                            j += 1;
                        }
                        _ => break,
                    }
                }
                if j as usize == bases.len() {
                    // all truncated digits return; deeper behaviour unseen
                    Ok(Bounds::new(Rational::zero(), Rational::pow2_neg(j)))
                } else {
                    Ok(Bounds::exact(Rational::pow2_neg(j)))
                }
            }
        }
    }

    /// Number of depth-j cylinders (odometer only).
    pub fn cylinder_count(&self, depth: usize) -> Result<usize> {
        match self {
            BaseSystem::Odometer { bases } => {
                if depth > bases.len() {
                    return Err(Error::OutOfRange("cylinder depth exceeds truncation".into()));
                }
                let mut count = 1usize;
                for &b in &bases[..depth] {
                    count = count
                        .checked_mul(b as usize)
                        .ok_or_else(|| Error::BudgetExceeded("cylinder count overflow".into()))?;
                }
                Ok(count)
            }
            _ => Err(Error::DomainMismatch("not an odometer".into())),
        }
    }
}

/// Tower of skew products over an equicontinuous base:
/// (x, t₁, …, t_d) ↦ (Tx, t₁ + h₁(x), t₂ + h₂(t₁), …, t_d + h_d(t_{d-1})).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkewTower {
    base: BaseSystem,
    maps: Vec<SkewMap>,
}

impl SkewTower {
    pub fn new(base: BaseSystem, maps: Vec<SkewMap>) -> Result<Self> {
        base.validate()?;
        if maps.is_empty() {
            return Err(Error::Invalid("tower needs at least one skewing map".into()));
        }
        for m in &maps {
            m.validate()?;
        }
        // h1 domain must match the base
        match (&maps[0], &base) {
            (SkewMap::Constant(_), _) => {}
            (SkewMap::CylinderMap { depth, table }, BaseSystem::Odometer { .. }) => {
                let expected = base.cylinder_count(*depth)?;
                if table.len() != expected {
                    return Err(Error::Invalid(format!(
                        "cylinder table has {} entries, expected {expected}",
                        table.len()
                    )));
                }
            }
            (m, BaseSystem::TorusRotation { alphas }) if m.is_circle_map() => {
                if alphas.len() != 1 {
                    return Err(Error::DomainMismatch(
                        "circle-typed h1 needs a 1-dimensional rotation base".into(),
                    ));
                }
            }
            _ => {
                return Err(Error::DomainMismatch(
                    "h1 domain does not match the base system".into(),
                ))
            }
        }
        for m in &maps[1..] {
            if !m.is_circle_map() {
                return Err(Error::DomainMismatch(
                    "fiber maps h₂.. must be circle maps".into(),
                ));
            }
        }
        Ok(SkewTower { base, maps })
    }

    pub fn base(&self) -> &BaseSystem {
        &self.base
    }

    pub fn maps(&self) -> &[SkewMap] {
        &self.maps
    }

    /// Number of fiber coordinates.
    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    pub fn shape_ok(&self, p: &ProductPoint) -> bool {
        self.base.shape_ok(&p.base) && p.fibers.len() == self.dim()
    }

    pub fn step(&self, p: &ProductPoint) -> Result<ProductPoint> {
        if !self.shape_ok(p) {
            return Err(Error::ShapeMismatch("point does not fit the tower".into()));
        }
        let mut fibers = Vec::with_capacity(self.dim());
        fibers.push(p.fibers[0].add(&self.maps[0].eval_on_base(&self.base, &p.base)?));
        for j in 1..self.dim() {
            fibers.push(p.fibers[j].add(&self.maps[j].eval_circle(&p.fibers[j - 1])?));
        }
        Ok(ProductPoint::new(self.base.step(&p.base)?, fibers))
    }

    /// Whether every skewing map is a constant; such towers are products of
    /// rotations and iterate in closed form.
    pub fn all_constant(&self) -> bool {
        self.maps
            .iter()
            .all(|m| matches!(m, SkewMap::Constant(_)))
    }
}

/// n-fold application of the tower map; n = 0 is the identity.
pub fn tower_orbit(tower: &SkewTower, p: &ProductPoint, n: u64) -> Result<ProductPoint> {
    if !tower.shape_ok(p) {
        return Err(Error::ShapeMismatch("point does not fit the tower".into()));
    }
    if tower.all_constant() {
        // constants commute with themselves: T^n adds n·c to each fiber
        let n_big = BigInt::from(n);
        let fibers = p
            .fibers
            .iter()
            .zip(tower.maps())
            .map(|(t, m)| match m {
                SkewMap::Constant(c) => t.add(&c.scale_bigint(&n_big)),
                _ => unreachable!("all_constant checked"),
            })
            .collect();
        return Ok(ProductPoint::new(tower.base.advance(&p.base, n)?, fibers));
    }
    let mut current = p.clone();
    for _ in 0..n {
        current = tower.step(&current)?;
    }
    Ok(current)
}

/// Result of an m-step cocycle sum: the torus value h_m(x), plus the exact
/// real lift sum H_m(x) whenever the skewing map has a continuous real lift.
#[derive(Clone, Debug)]
pub struct CocycleSum {
    pub torus_value: TorusPoint,
    pub lift_sum: Option<Bounds>,
}

/// h_m(x) = Σ_{i<m} h(Tⁱx), with h₀ ≡ 0.
pub fn cocycle_sum(
    base: &BaseSystem,
    h: &SkewMap,
    m: u64,
    x: &BasePoint,
) -> Result<CocycleSum> {
    if !base.shape_ok(x) {
        return Err(Error::ShapeMismatch("base point has wrong shape".into()));
    }
    let has_lift = match h {
        SkewMap::CylinderMap { .. } => true, // locally constant: representatives lift it
        _ => winding(h)? == 0,
    };
    let mut torus_acc = TorusPoint::zero();
    let mut lift_acc = has_lift.then(|| Bounds::exact(Rational::zero()));
    let mut current = x.clone();
    for _ in 0..m {
        let value = h.eval_on_base(base, &current)?;
        if let Some(acc) = lift_acc.as_mut() {
            let term = match (h, &current) {
                (SkewMap::CylinderMap { .. }, _) => {
                    Bounds::from_midpoint(value.value(), value.radius())
                }
                (_, BasePoint::Torus(coords)) => lift_eval_part(h, coords[0].value()),
                _ => Bounds::from_midpoint(value.value(), value.radius()),
            };
            *acc = acc.add(&term);
        }
        torus_acc = torus_acc.add(&value);
        current = base.step(&current)?;
    }
    if torus_acc.radius() > &Rational::new(1, 2) {
        return Err(Error::Uncertifiable(
            "accumulated radius exceeds 1/2, torus value carries no information".into(),
        ));
    }
    Ok(CocycleSum {
        torus_value: torus_acc,
        lift_sum: lift_acc,
    })
}

/// State (x, t₁, …, t_k) for towers with identity fiber maps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IteratedSkewState {
    pub x: BasePoint,
    pub t_vec: Vec<TorusPoint>,
}

impl IteratedSkewState {
    pub fn new(x: BasePoint, t_vec: Vec<TorusPoint>) -> Result<Self> {
        if t_vec.is_empty() {
            return Err(Error::Invalid("need at least one fiber coordinate".into()));
        }
        Ok(IteratedSkewState { x, t_vec })
    }
}

/// p_{t⃗_j}(n) = Σ_{i=0}^{j-1} C(n, i) · t_{j-i}, reduced mod 1, with exact
/// integer binomials.
pub fn binom_poly(t_vec: &[TorusPoint], n: u64) -> TorusPoint {
    let j = t_vec.len();
    let mut acc = TorusPoint::zero();
    let mut binom = BigInt::one();
    let n_big = BigInt::from(n);
    for i in 0..j {
        acc = acc.add(&t_vec[j - 1 - i].scale_bigint(&binom));
        // C(n, i+1) = C(n, i) * (n - i) / (i + 1)
        binom = binom * (&n_big - BigInt::from(i as u64)) / BigInt::from((i + 1) as u64);
        if binom.is_zero() {
            break;
        }
    }
    acc
}

/// Closed form for T^n applied to (x, t₁, …, t_k) in the tower whose fiber
/// maps above h are all the identity: coordinate j is
/// p_{t⃗_j}(n) + h_{j,n}(x), where h_{j,·} is the iterated prefix-sum of the
/// cocycle row h_{0,m} = h(T^m x).
pub fn iterated_id_closed_form(
    base: &BaseSystem,
    h: &SkewMap,
    state: &IteratedSkewState,
    n: u64,
) -> Result<ProductPoint> {
    let k = state.t_vec.len();
    if !base.shape_ok(&state.x) {
        return Err(Error::ShapeMismatch("base point has wrong shape".into()));
    }
    let n_usize = usize::try_from(n)
        .map_err(|_| Error::BudgetExceeded("orbit length does not fit in memory".into()))?;

    // row(0): h(T^m x) for m < n
    let mut row = Vec::with_capacity(n_usize);
    let mut current = state.x.clone();
    for _ in 0..n_usize {
        row.push(h.eval_on_base(base, &current)?);
        current = base.step(&current)?;
    }

    let mut fibers = Vec::with_capacity(k);
    for j in 1..=k {
        // h_{j,n} is the full sum of row(j-1)
        let h_jn = row
            .iter()
            .fold(TorusPoint::zero(), |acc, v| acc.add(v));
        fibers.push(binom_poly(&state.t_vec[..j], n).add(&h_jn));
        if j < k {
            // row(j)[i] = Σ_{m<i} row(j-1)[m]
            let mut acc = TorusPoint::zero();
            for entry in row.iter_mut() {
                let old = std::mem::replace(entry, acc.clone());
                acc = acc.add(&old);
            }
        }
    }
    Ok(ProductPoint::new(base.advance(&state.x, n)?, fibers))
}

/// All closed-form points for n = 0..=n_max, maintained incrementally via
/// h_{j,n+1} = h_{j,n} + h_{j-1,n}. Cheaper than calling the single-shot
/// closed form once per n.
pub fn iterated_id_orbit(
    base: &BaseSystem,
    h: &SkewMap,
    state: &IteratedSkewState,
    n_max: u64,
) -> Result<Vec<ProductPoint>> {
    let k = state.t_vec.len();
    if !base.shape_ok(&state.x) {
        return Err(Error::ShapeMismatch("base point has wrong shape".into()));
    }
    let mut out = Vec::with_capacity(n_max as usize + 1);
    // v[j] = h_{j,n}; v[0] = h(T^n x) refreshed each step
    let mut v = vec![TorusPoint::zero(); k + 1];
    let mut current = state.x.clone();
    for n in 0..=n_max {
        let mut fibers = Vec::with_capacity(k);
        #[allow(clippy::needless_range_loop)] // j is the fiber level
        for j in 1..=k {
            fibers.push(binom_poly(&state.t_vec[..j], n).add(&v[j]));
        }
        out.push(ProductPoint::new(base.advance(&state.x, n)?, fibers));
        v[0] = h.eval_on_base(base, &current)?;
        for j in (1..=k).rev() {
            v[j] = v[j].add(&v[j - 1]);
        }
        current = base.step(&current)?;
    }
    Ok(out)
}
