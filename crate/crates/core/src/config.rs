//! Declarative key-value descriptions of towers and experiment parameters.
//!
//! Format: one `key = value` per line, `#` comments. Rotation bases take
//! `alpha` as a comma-separated list of `p/q` entries or `cf:a1,a2,...`
//! quotient lists; odometers take `bases = b1,b2,...`. Skewing maps are
//! tagged coefficient lists:
//!
//! ```text
//! base  = rotation
//! alpha = 1/4
//! h1    = poly:-1/30,0,1,-2,1
//! h2    = linear:1
//! h3    = const:1/8
//! ```
//!
//! Other map tags: `trig:c0;cos_1,cos_2,...;sin_1,...`, `sum:part|part`,
//! `cyl:depth;t_0,t_1,...`.

use std::collections::BTreeMap;

use crate::cfrac::{AlphaSpec, ContinuedFraction};
use crate::dynsys::{BaseSystem, SkewMap, SkewTower};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::torus::TorusPoint;

/// Parses `key = value` lines into an ordered map. Later duplicates win.
pub fn parse_kv(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {}: expected key = value", lineno + 1))
        })?;
        out.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

pub fn alpha_spec_from_str(s: &str) -> Result<AlphaSpec> {
    let s = s.trim();
    if let Some(quotients) = s.strip_prefix("cf:") {
        let parsed: Result<Vec<_>> = quotients
            .split(',')
            .map(|q| {
                q.trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("bad quotient {q:?}")))
            })
            .collect();
        Ok(AlphaSpec::Cf(ContinuedFraction::new(parsed?)?))
    } else {
        Ok(AlphaSpec::Rational(s.parse()?))
    }
}

fn rational_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|p| p.trim().parse()).collect()
}

pub fn skew_map_from_str(s: &str) -> Result<SkewMap> {
    let s = s.trim();
    let (tag, body) = s
        .split_once(':')
        .ok_or_else(|| Error::Config(format!("skew map needs a tag: {s:?}")))?;
    match tag.trim() {
        "linear" => {
            let k: i64 = body
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad winding {body:?}")))?;
            Ok(SkewMap::LinearWinding(k))
        }
        "poly" => SkewMap::poly_lift(rational_list(body)?),
        "const" => Ok(SkewMap::Constant(TorusPoint::exact(body.trim().parse()?))),
        "trig" => {
            let mut parts = body.split(';');
            let constant = parts
                .next()
                .ok_or_else(|| Error::Config("trig needs a constant term".into()))?
                .trim()
                .parse()?;
            let cos = rational_list(parts.next().unwrap_or(""))?;
            let sin = rational_list(parts.next().unwrap_or(""))?;
            Ok(SkewMap::TrigPoly { constant, cos, sin })
        }
        "sum" => {
            let parts: Result<Vec<_>> = body.split('|').map(skew_map_from_str).collect();
            SkewMap::sum(parts?)
        }
        "cyl" => {
            let (depth, table) = body
                .split_once(';')
                .ok_or_else(|| Error::Config("cyl needs depth;table".into()))?;
            let depth: usize = depth
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad cylinder depth {depth:?}")))?;
            let table = rational_list(table)?
                .into_iter()
                .map(TorusPoint::exact)
                .collect();
            Ok(SkewMap::CylinderMap { depth, table })
        }
        other => Err(Error::Config(format!("unknown skew map tag {other:?}"))),
    }
}

/// Builds a tower from a parsed key-value map: `base`, `alpha` or `bases`,
/// and consecutively numbered `h1`, `h2`, ....
pub fn tower_from_kv(map: &BTreeMap<String, String>) -> Result<SkewTower> {
    let base_kind = map
        .get("base")
        .ok_or_else(|| Error::Config("missing key: base".into()))?;
    let base = match base_kind.as_str() {
        "rotation" => {
            let alpha = map
                .get("alpha")
                .ok_or_else(|| Error::Config("rotation base needs alpha".into()))?;
            let alphas: Result<Vec<_>> = if alpha.starts_with("cf:") {
                Ok(vec![alpha_spec_from_str(alpha)?])
            } else {
                alpha.split(',').map(alpha_spec_from_str).collect()
            };
            BaseSystem::TorusRotation { alphas: alphas? }
        }
        "odometer" => {
            let bases = map
                .get("bases")
                .ok_or_else(|| Error::Config("odometer base needs bases".into()))?;
            let parsed: Result<Vec<u64>> = bases
                .split(',')
                .map(|b| {
                    b.trim()
                        .parse()
                        .map_err(|_| Error::Config(format!("bad odometer base {b:?}")))
                })
                .collect();
            BaseSystem::Odometer { bases: parsed? }
        }
        other => return Err(Error::Config(format!("unknown base kind {other:?}"))),
    };
    let mut maps = Vec::new();
    for i in 1.. {
        match map.get(&format!("h{i}")) {
            Some(spec) => maps.push(skew_map_from_str(spec)?),
            None => break,
        }
    }
    if maps.is_empty() {
        return Err(Error::Config("tower needs at least h1".into()));
    }
    SkewTower::new(base, maps)
}

pub fn tower_from_str(text: &str) -> Result<SkewTower> {
    tower_from_kv(&parse_kv(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rotation_tower() {
        let text = "\
# the hidden-frequency shape
base  = rotation
alpha = 1/4
h1    = poly:-1/30,0,1,-2,1
h2    = linear:1
h3    = const:1/8
";
        let tower = tower_from_str(text).unwrap();
        assert_eq!(tower.dim(), 3);
        assert!(matches!(tower.maps()[0], SkewMap::PolyLift(_)));
        assert!(matches!(tower.maps()[1], SkewMap::LinearWinding(1)));
    }

    #[test]
    fn parses_odometer_tower_with_cylinder_map() {
        let text = "base = odometer\nbases = 2,3\nh1 = cyl:1;0/1,1/2\n";
        let tower = tower_from_str(text).unwrap();
        assert!(matches!(
            tower.maps()[0],
            SkewMap::CylinderMap { depth: 1, .. }
        ));
    }

    #[test]
    fn parses_cf_alpha_and_sum_maps() {
        let text = "base = rotation\nalpha = cf:3,6561\nh1 = sum:linear:1|const:1/4\n";
        let tower = tower_from_str(text).unwrap();
        assert!(matches!(tower.maps()[0], SkewMap::Sum(_)));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(tower_from_str("base = rotation\n").is_err());
        assert!(tower_from_str("base = fancy\nalpha = 1/2\nh1 = linear:1\n").is_err());
        assert!(parse_kv("no equals sign here").is_err());
        assert!(skew_map_from_str("poly:1,2").is_err()); // p(0) != p(1)
        assert!(skew_map_from_str("warp:1").is_err());
    }

    #[test]
    fn trig_map_round_trip() {
        let m = skew_map_from_str("trig:3/7;1/2,0;0,1/3").unwrap();
        match &m {
            SkewMap::TrigPoly { constant, cos, sin } => {
                assert_eq!(constant, &Rational::new(3, 7));
                assert_eq!(cos.len(), 2);
                assert_eq!(sin.len(), 2);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(crate::dynsys::mean(&m).unwrap(), Rational::new(3, 7));
    }
}
