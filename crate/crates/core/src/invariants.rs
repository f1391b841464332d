//! Per-edge intersection numbers and Euler characteristics, assembled into
//! boundary slopes, boundary-circle counts and generalized genus.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::farey::{LinkParams, Rational};
use crate::paths::{EdgeLabel, EdgePath, PathEdge, PathError, PathName, Regime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("weights violate {invariant}: alpha={alpha}, beta={beta}")]
    Weights {
        invariant: &'static str,
        alpha: i64,
        beta: i64,
    },
    #[error("branching number n={n} at edge {edge} outside 0..={max}")]
    Branching { edge: usize, n: i64, max: i64 },
    #[error("{0} has no closed-form row")]
    NotTabulated(PathName),
}

pub type Result<T> = std::result::Result<T, InvariantError>;

/// Sheet counts of a carried surface: alpha at L1, beta at L2, and the
/// branching number n (a default plus per-edge overrides).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weights {
    pub alpha: i64,
    pub beta: i64,
    pub n: i64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub n_map: BTreeMap<usize, i64>,
}

impl Weights {
    pub fn new(alpha: i64, beta: i64) -> Self {
        Weights {
            alpha,
            beta,
            n: 0,
            n_map: BTreeMap::new(),
        }
    }

    pub fn with_n(mut self, n: i64) -> Self {
        self.n = n;
        self
    }

    pub fn with_edge_n(mut self, edge: usize, n: i64) -> Self {
        self.n_map.insert(edge, n);
        self
    }

    pub fn n_at(&self, edge: usize) -> i64 {
        self.n_map.get(&edge).copied().unwrap_or(self.n)
    }

    fn err(&self, invariant: &'static str) -> InvariantError {
        InvariantError::Weights {
            invariant,
            alpha: self.alpha,
            beta: self.beta,
        }
    }

    /// Checks the weights against every edge of a path.
    pub fn validate(&self, path: &EdgePath) -> Result<()> {
        self.validate_edges(path.regime, &path.edges)
    }

    pub fn validate_edges(&self, regime: Regime, edges: &[PathEdge]) -> Result<()> {
        let has = |l: EdgeLabel| edges.iter().any(|e| e.label == l);
        let (a, b) = (self.alpha, self.beta);
        if a < 1 || b < 0 {
            return Err(self.err("alpha >= 1, beta >= 0"));
        }
        if a < b {
            return Err(self.err("alpha >= beta"));
        }
        match regime {
            Regime::D1 if a != b => return Err(self.err("alpha = beta on D1")),
            Regime::Dinf if b != 0 => return Err(self.err("beta = 0 on D_inf")),
            Regime::Dt if has(EdgeLabel::C) && a == b => {
                return Err(self.err("alpha > beta on paths with C edges"))
            }
            _ => {}
        }
        if has(EdgeLabel::B) && (a - b) % 2 != 0 {
            return Err(self.err("alpha = beta mod 2 on paths with B edges"));
        }
        for (i, e) in edges.iter().enumerate() {
            let max = match e.label {
                EdgeLabel::A | EdgeLabel::C => b,
                EdgeLabel::D => a - b,
                EdgeLabel::B => 0,
            };
            let n = self.n_at(i);
            if n < 0 || n > max {
                return Err(InvariantError::Branching { edge: i, n, max });
            }
        }
        Ok(())
    }
}

/// Contribution of one edge to (i1, i2). `n` matters only for C at t = 1.
pub fn edge_contribution(edge: &PathEdge, weights: &Weights, n: i64) -> (i64, i64) {
    let x = edge.matrix.neg_d_over_c();
    let (a, b) = (weights.alpha, weights.beta);
    let (p, q) = (x.num(), x.den());
    let inf = x.is_infinite();
    let neg = !inf && p < 0;
    let zero = !inf && p == 0;
    let in_unit = !inf && p > 0 && p < q;
    let one = !inf && p == q;
    let (i1, i2) = match (edge.label, edge.regime) {
        (EdgeLabel::C, Regime::D1) => {
            if zero || one {
                (b - 2 * n, -(b - 2 * n))
            } else if in_unit {
                (-2 * n, -2 * (b - n))
            } else {
                (2 * (b - n), 2 * n)
            }
        }
        (EdgeLabel::A, _) => {
            if inf || zero {
                (0, 0)
            } else if neg {
                (b, b)
            } else {
                (-b, -b)
            }
        }
        (EdgeLabel::B, _) => {
            if inf || zero {
                (0, 0)
            } else if neg {
                (-(a - b), 0)
            } else {
                (a - b, 0)
            }
        }
        (EdgeLabel::C, _) => {
            if in_unit {
                (-2 * b, 0)
            } else if zero || one {
                (-b, b)
            } else {
                (0, 2 * b)
            }
        }
        (EdgeLabel::D, _) => {
            let half = !inf && 2 * p == q;
            if inf || half {
                (0, a - b)
            } else if 2 * p > q {
                (a - b, a - b)
            } else {
                (-(a - b), a - b)
            }
        }
    };
    if edge.orientation_matched {
        (i1, i2)
    } else {
        (-i1, -i2)
    }
}

/// Euler characteristic of the part of the surface over one edge.
pub fn edge_euler(label: EdgeLabel, weights: &Weights) -> Result<i64> {
    let (a, b) = (weights.alpha, weights.beta);
    Ok(match label {
        EdgeLabel::A | EdgeLabel::C => a,
        EdgeLabel::D => 2 * b,
        EdgeLabel::B => {
            if (a - b) % 2 != 0 {
                return Err(weights.err("alpha = beta mod 2 on paths with B edges"));
            }
            2 * b + (a - b) / 2
        }
    })
}

/// Slope of the preferred longitude against the construction longitude.
pub fn longitude_correction(link: &LinkParams) -> i64 {
    let d = (link.r() - link.s()) / 2;
    if link.s_positive() {
        d
    } else {
        d - 2
    }
}

/// Twice a half-integer, so that g' stays exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn twice(&self) -> i64 {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.0 as f64 / 2.0)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let x = f64::deserialize(d)? * 2.0;
        if x.fract() != 0.0 {
            return Err(serde::de::Error::custom("not a half-integer"));
        }
        Ok(HalfInt(x as i64))
    }
}

/// Greatest common measure with GCM(x, 0) = |x|.
pub fn gcm(x: i64, y: i64) -> i64 {
    x.gcd(&y)
}

/// Invariants of a carried surface. Slope pairs are (longitudinal,
/// meridional); the reduced slope is meridional/longitudinal, 1/0 for the
/// meridian, absent when the surface misses that boundary torus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceData {
    pub alpha: i64,
    pub beta: i64,
    pub i1: i64,
    pub i2: i64,
    pub raw_slope1: (i64, i64),
    pub raw_slope2: (i64, i64),
    pub slope_pair1: (i64, i64),
    pub slope_pair2: (i64, i64),
    pub slope1: Option<Rational>,
    pub slope2: Option<Rational>,
    pub chi: i64,
    pub b1: i64,
    pub b2: i64,
    pub gprime: HalfInt,
    /// beta = 0: L2 is only met in meridians.
    pub meridional: bool,
}

fn reduced(pair: (i64, i64)) -> Option<Rational> {
    Rational::new(pair.1, pair.0).ok()
}

impl SurfaceData {
    /// Builds the record from intersection numbers and chi, with b1, b2 read
    /// off the corrected pairs.
    pub fn from_parts(alpha: i64, beta: i64, i1: i64, i2: i64, chi: i64, ell: i64) -> Self {
        let p1 = (alpha, i1 - ell * alpha);
        let p2 = (beta, i2 - ell * beta);
        let (b1, b2) = (gcm(p1.0, p1.1), gcm(p2.0, p2.1));
        SurfaceData {
            alpha,
            beta,
            i1,
            i2,
            raw_slope1: (alpha, i1),
            raw_slope2: (beta, i2),
            slope_pair1: p1,
            slope_pair2: p2,
            slope1: reduced(p1),
            slope2: reduced(p2),
            chi,
            b1,
            b2,
            gprime: HalfInt(2 - chi - b1 - b2),
            meridional: beta == 0,
        }
    }

    /// Names of the fields where two records differ, in declaration order.
    pub fn differing_fields(&self, o: &SurfaceData) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut check = |name, same: bool| {
            if !same {
                out.push(name)
            }
        };
        check("alpha", self.alpha == o.alpha);
        check("beta", self.beta == o.beta);
        check("i1", self.i1 == o.i1);
        check("i2", self.i2 == o.i2);
        check("raw_slope1", self.raw_slope1 == o.raw_slope1);
        check("raw_slope2", self.raw_slope2 == o.raw_slope2);
        check("slope_pair1", self.slope_pair1 == o.slope_pair1);
        check("slope_pair2", self.slope_pair2 == o.slope_pair2);
        check("slope1", self.slope1 == o.slope1);
        check("slope2", self.slope2 == o.slope2);
        check("chi", self.chi == o.chi);
        check("b1", self.b1 == o.b1);
        check("b2", self.b2 == o.b2);
        check("gprime", self.gprime == o.gprime);
        check("meridional", self.meridional == o.meridional);
        out
    }
}

/// Sums edge contributions along a path.
pub fn assemble(path: &EdgePath, weights: &Weights) -> Result<SurfaceData> {
    assemble_edges(&path.link, path.regime, &path.edges, weights)
}

/// As [`assemble`], for an edge sequence that need not be a named path.
pub fn assemble_edges(
    link: &LinkParams,
    regime: Regime,
    edges: &[PathEdge],
    weights: &Weights,
) -> Result<SurfaceData> {
    weights.validate_edges(regime, edges)?;
    let (mut i1, mut i2, mut chi) = (0i64, 0i64, 0i64);
    for (i, e) in edges.iter().enumerate() {
        let (x, y) = edge_contribution(e, weights, weights.n_at(i));
        i1 += x;
        i2 += y;
        chi += edge_euler(e.label, weights)?;
    }
    let k = edges.len() as i64;
    chi -= (k - 1) * (weights.alpha + weights.beta);
    let ell = longitude_correction(link);
    Ok(SurfaceData::from_parts(
        weights.alpha,
        weights.beta,
        i1,
        i2,
        chi,
        ell,
    ))
}

/// Exchanges the roles of the two components.
pub fn swap_components(d: &SurfaceData) -> SurfaceData {
    SurfaceData {
        alpha: d.beta,
        beta: d.alpha,
        i1: d.i2,
        i2: d.i1,
        raw_slope1: d.raw_slope2,
        raw_slope2: d.raw_slope1,
        slope_pair1: d.slope_pair2,
        slope_pair2: d.slope_pair1,
        slope1: d.slope2,
        slope2: d.slope1,
        chi: d.chi,
        b1: d.b2,
        b2: d.b1,
        gprime: d.gprime,
        meridional: d.alpha == 0,
    }
}

/// Which reading of a summary-table row to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transcription {
    /// The formula as printed.
    Printed,
    /// The printed formula with known errata fixed.
    Corrected,
}

/// A printed closed form that disagrees with per-edge assembly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub family: PathName,
    pub fields: &'static [&'static str],
    pub printed: &'static str,
    pub corrected: &'static str,
}

pub const ERRATA: &[Erratum] = &[
    Erratum {
        family: PathName::D06,
        fields: &["i1", "raw_slope1", "slope_pair1", "slope1", "b1", "gprime"],
        printed: "slope on L1 (alpha, (w+u+1)beta), b1 = GCM(alpha, (w+u+1)beta)",
        corrected: "slope on L1 (alpha, (w-u-1)beta), b1 = GCM(alpha, (w-u-1)beta)",
    },
    Erratum {
        family: PathName::D26,
        fields: &["chi"],
        printed: "chi = -(w-u-2)(alpha-beta) + beta",
        corrected: "chi = -(w-u-2)(alpha-beta) - beta",
    },
];

pub fn erratum_for(family: PathName) -> Option<&'static Erratum> {
    ERRATA.iter().find(|e| e.family == family)
}

/// Printed row: pair1, pair2, chi, b1, b2, and 2g' as a function of b1 + b2.
type Row = (
    (i64, i64),
    (i64, i64),
    i64,
    i64,
    i64,
    Box<dyn Fn(i64) -> i64>,
);

/// Evaluates the summary-table row of a family: corrected slope pairs,
/// chi, b1, b2 and g' each by its own printed formula.
pub fn closed_form(
    family: PathName,
    link: &LinkParams,
    alpha: i64,
    beta: i64,
    n: i64,
    reading: Transcription,
) -> Result<SurfaceData> {
    use PathName::*;
    if family.for_positive_s() != link.s_positive() {
        return Err(InvariantError::Path(PathError::WrongFamily {
            name: family,
            family: if family.for_positive_s() {
                "c (s > 0)"
            } else {
                "d (s < 0)"
            },
            s: link.s(),
        }));
    }
    let (w, u, a, b) = (link.w(), link.u(), alpha, beta);
    let fixed = reading == Transcription::Corrected;
    let (p1, p2, chi, b1, b2, g2): Row = match family {
        C2 | D2 => (
            (b, -(w - u + 1) * b + 2 * n),
            (b, -(w - u - 1) * b - 2 * n),
            -b,
            gcm(b, 2 * n),
            gcm(b, 2 * n),
            Box::new(move |bb| b - bb + 2),
        ),
        C14 | D14 => (
            (a, (u + 1) * a + w * b),
            (b, w * a + (u + 1) * b),
            -w * (a + b),
            gcm(a, w * b),
            gcm(b, w * a),
            Box::new(move |bb| w * (a + b) - bb + 2),
        ),
        C16 => (
            (a, (w + u + 1) * b),
            (b, (w + u + 1) * a),
            -(w + u) * (a - b) - 2 * w * b,
            gcm(a, (w + u + 1) * b),
            gcm(b, (w + u + 1) * a),
            Box::new(move |bb| (w + u) * (a - b) + 2 * w * b - bb + 2),
        ),
        D16 => (
            (a, (w + u + 1) * b),
            (b, (w + u + 1) * a),
            -(w - u - 2) * (a - b) - 2 * w * b,
            gcm(a, (w + u + 1) * b),
            gcm(b, (w + u + 1) * a),
            Box::new(move |bb| (w - u - 2) * (a - b) + 2 * w * b - bb + 2),
        ),
        C24 | D24 => (
            (a, (u + 1) * a - w * b),
            (b, -w * a + (u - 1) * b),
            -w * (a - b) - b,
            gcm(a, w * b),
            gcm(b, w * a),
            Box::new(move |bb| w * (a - b) + b - bb + 2),
        ),
        C25 | D25 => (
            (a, -(w - u - 1) * a),
            (b, -(w - u + 1) * b),
            -a,
            a,
            b,
            Box::new(move |_| -b + 2),
        ),
        D06 => {
            let k1 = if fixed { w - u - 1 } else { w + u + 1 };
            (
                (a, k1 * b),
                (b, (w - u - 1) * a),
                -(w - u - 2) * (a + b),
                gcm(a, k1 * b),
                gcm(b, (w - u - 1) * a),
                Box::new(move |bb| (w - u - 2) * (a + b) - bb + 2),
            )
        }
        D26 => (
            (a, -(w - u - 1) * b),
            (b, -(w - u - 1) * a - 2 * b),
            -(w - u - 2) * (a - b) + if fixed { -b } else { b },
            gcm(a, (w - u - 1) * b),
            gcm(b, (w - u - 1) * a),
            Box::new(move |bb| (w - u - 2) * (a - b) + b - bb + 2),
        ),
        D27 => (
            (a, -(w - u + 1) * a),
            (b, -(w - u - 1) * b),
            -a,
            a,
            b,
            Box::new(move |_| -b + 2),
        ),
        _ => return Err(InvariantError::NotTabulated(family)),
    };
    let (a, b) = match family {
        C2 | D2 => (beta, beta),
        _ => (alpha, beta),
    };
    let ell = longitude_correction(link);
    Ok(SurfaceData {
        alpha: a,
        beta: b,
        i1: p1.1 + ell * a,
        i2: p2.1 + ell * b,
        raw_slope1: (a, p1.1 + ell * a),
        raw_slope2: (b, p2.1 + ell * b),
        slope_pair1: p1,
        slope_pair2: p2,
        slope1: reduced(p1),
        slope2: reduced(p2),
        chi,
        b1,
        b2,
        gprime: HalfInt(g2(b1 + b2)),
        meridional: b == 0,
    })
}
