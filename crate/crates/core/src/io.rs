//! JSON file format for curve pairs. Rationals are strings (`"3"`, `"-5/8"`).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Pt, Rat};
use crate::surface::{Curve, CurveError, CurvePair, Deck, SurfaceKind};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("malformed rational {0:?}: expected \"n\" or \"p/q\" with q > 0")]
    Rational(String),
    #[error("unknown surface {0:?}")]
    UnknownSurface(String),
    #[error("unsupported surface {0:?}: higher genus needs a hyperbolic covering model, which is not implemented")]
    Unsupported(String),
    #[error("invalid pair: {}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<CurveError>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    pub vertices: Vec<[String; 2]>,
    pub deck: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFile {
    pub surface: String,
    pub alpha: CurveFile,
    pub beta: CurveFile,
}

pub fn parse_rational(s: &str) -> Result<Rat, IoError> {
    let bad = || IoError::Rational(s.to_string());
    let t = s.trim();
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p, q),
        None => (t, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if !q.is_positive() || q.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(p, q))
}

pub fn parse_surface(s: &str) -> Result<SurfaceKind, IoError> {
    match s.to_ascii_lowercase().as_str() {
        "plane" => Ok(SurfaceKind::Plane),
        "sphere" => Ok(SurfaceKind::Sphere),
        "annulus" => Ok(SurfaceKind::Annulus),
        "torus" => Ok(SurfaceKind::Torus),
        other if other.starts_with("genus") => Err(IoError::Unsupported(s.to_string())),
        _ => Err(IoError::UnknownSurface(s.to_string())),
    }
}

fn to_curve(c: &CurveFile) -> Result<Curve, IoError> {
    let vertices = c
        .vertices
        .iter()
        .map(|[x, y]| Ok(Pt::new(parse_rational(x)?, parse_rational(y)?)))
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(Curve::new(vertices, Deck(c.deck[0], c.deck[1])))
}

fn from_curve(c: &Curve) -> CurveFile {
    CurveFile {
        vertices: c.vertices.iter().map(|p| [p.x.to_string(), p.y.to_string()]).collect(),
        deck: [c.deck.0, c.deck.1],
    }
}

impl PairFile {
    pub fn parse(text: &str) -> Result<PairFile, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
    }

    /// Surface and curves without validation.
    pub fn parts(&self) -> Result<(SurfaceKind, Curve, Curve), IoError> {
        Ok((
            parse_surface(&self.surface)?,
            to_curve(&self.alpha)?,
            to_curve(&self.beta)?,
        ))
    }

    pub fn to_pair(&self) -> Result<CurvePair, IoError> {
        let (s, a, b) = self.parts()?;
        CurvePair::new(s, a, b).map_err(IoError::Invalid)
    }

    pub fn from_pair(pair: &CurvePair) -> PairFile {
        PairFile {
            surface: pair.surface.name().to_string(),
            alpha: from_curve(&pair.alpha),
            beta: from_curve(&pair.beta),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

pub fn load_pair(text: &str) -> Result<CurvePair, IoError> {
    PairFile::parse(text)?.to_pair()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geom::rat;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational("-5/8").unwrap(), rat(-5, 8));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        for bad in ["1/0", "1/-2", "0.5", "", "a/b", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn round_trip_every_fixture() {
        for (name, pair) in fixtures::all() {
            let f = PairFile::from_pair(&pair);
            let text = f.to_json();
            let back = PairFile::parse(&text).unwrap();
            assert_eq!(back, f, "{name}");
            let p2 = back.to_pair().unwrap();
            assert_eq!(p2.alpha, pair.alpha);
            assert_eq!(p2.beta, pair.beta);
            assert_eq!(p2.points, pair.points);
        }
    }

    #[test]
    fn shipped_files_match_fixtures() {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
        for (name, pair) in fixtures::all() {
            let text = std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
            let p = load_pair(&text).unwrap();
            assert_eq!(
                (p.alpha, p.beta, p.surface),
                (pair.alpha, pair.beta, pair.surface),
                "{name}"
            );
        }
    }

    #[test]
    fn surface_tags() {
        assert_eq!(parse_surface("Torus").unwrap(), SurfaceKind::Torus);
        assert!(matches!(parse_surface("genus-2"), Err(IoError::Unsupported(_))));
        assert!(matches!(parse_surface("klein"), Err(IoError::UnknownSurface(_))));
    }

    #[test]
    fn overlapping_curves_are_rejected() {
        let text = r#"{"surface":"plane",
            "alpha":{"vertices":[["0","0"],["2","0"],["2","2"],["0","2"]],"deck":[0,0]},
            "beta":{"vertices":[["1","0"],["3","0"],["3","1"],["1","1"]],"deck":[0,0]}}"#;
        match load_pair(text) {
            Err(IoError::Invalid(errs)) => {
                assert!(errs.iter().any(|e| matches!(e, CurveError::NotTransverse { .. })))
            }
            other => panic!("{other:?}"),
        }
    }
}
