//! Genus-zero solutions, reducible surgeries, and the torus, cable and
//! satellite knots obtained by surgery on one component.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::farey::{self, expand_all, ExpansionPattern, FareyError, GMatrix, LinkParams, Rational};
use crate::invariants::{self, assemble, InvariantError, SurfaceData, Weights};
use crate::paths::{path_edges_of, EdgeLabel, EdgeTag, PathEdge, PathName, Point, Regime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("{0} has no [odd, odd] expansion")]
    NotOddOdd(Rational),
    #[error("{0} is a torus link")]
    TorusLink(Rational),
    #[error("brute-force bound {0} is below 8")]
    Bound(i64),
}

pub type Result<T> = std::result::Result<T, ClassifyError>;

/// A weight choice making g' vanish, with the data it produces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusZeroSolution {
    pub family: PathName,
    pub w: i64,
    pub u: i64,
    pub alpha: i64,
    pub beta: i64,
    pub n: Option<i64>,
    /// w - u - 1 (= w + u'), recorded where the solution pins it.
    pub m: Option<i64>,
    pub witness: SurfaceData,
}

/// Closed-form genus-zero weights of a family on L([2w+1, 2u+1]); `alpha`
/// runs up to `brute_bound` where it is free. Meridional (beta = 0) data is
/// not a surgery surface and is never returned.
pub fn genus_zero_solutions(
    family: PathName,
    w: i64,
    u: i64,
    brute_bound: i64,
) -> Result<Vec<GenusZeroSolution>> {
    use PathName::*;
    if brute_bound < 8 {
        return Err(ClassifyError::Bound(brute_bound));
    }
    let link = LinkParams::from_wu(w, u)?;
    let Ok(path) = path_edges_of(family, &link) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    let mut push = |alpha: i64, beta: i64, n: Option<i64>, m: Option<i64>| -> Result<()> {
        let weights = Weights::new(alpha, beta).with_n(n.unwrap_or(0));
        let witness = assemble(&path, &weights)?;
        out.push(GenusZeroSolution {
            family,
            w,
            u,
            alpha,
            beta,
            n,
            m,
            witness,
        });
        Ok(())
    };
    match family {
        C2 | D2 => {
            for n in 0..=2 {
                push(2, 2, Some(n), None)?;
            }
        }
        C25 | D25 | D27 | C27 => {
            for alpha in 3..=brute_bound {
                if Weights::new(alpha, 2).validate(&path).is_ok() {
                    push(alpha, 2, None, None)?;
                }
            }
        }
        D26 if w - u - 1 == 2 => push(4, 2, None, Some(2))?,
        _ => {}
    }
    Ok(out)
}

/// Whether a planar surface obeys chi >= -(alpha + beta) + 2.
pub fn planar_chi_bound_holds(d: &SurfaceData) -> bool {
    !(d.gprime.is_zero() && d.alpha >= d.beta && d.beta > 0) || d.chi >= -(d.alpha + d.beta) + 2
}

/// A pair of surgery slopes giving a reducible manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducibleSlopes {
    pub gamma1: i64,
    pub gamma2: i64,
    /// True for the exceptional pair of L([3, -3]).
    pub exceptional: bool,
}

/// Slope pairs (up to component order and mirror image) whose surgery on
/// L([2w+1, 2u+1]) is reducible.
pub fn reducible_surgeries(w: i64, u: i64) -> Result<Vec<ReducibleSlopes>> {
    LinkParams::from_wu(w, u)?;
    let g = -w + u;
    let mut out = vec![
        ReducibleSlopes {
            gamma1: g + 1,
            gamma2: g - 1,
            exceptional: false,
        },
        ReducibleSlopes {
            gamma1: g,
            gamma2: g,
            exceptional: false,
        },
    ];
    if (w, u) == (1, -2) {
        out.push(ReducibleSlopes {
            gamma1: -1,
            gamma2: -6,
            exceptional: true,
        });
    }
    Ok(out)
}

/// l L + m M on the boundary torus of the second component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    pub l: i64,
    pub m: i64,
}

impl CurveClass {
    pub const L: CurveClass = CurveClass { l: 1, m: 0 };
    pub const M: CurveClass = CurveClass { l: 0, m: 1 };

    pub fn new(l: i64, m: i64) -> Self {
        CurveClass { l, m }
    }

    /// The slope-gamma curve L + gamma M.
    pub fn slope(gamma: i64) -> Self {
        CurveClass { l: 1, m: gamma }
    }

    pub fn scale(self, k: i64) -> Self {
        CurveClass {
            l: k * self.l,
            m: k * self.m,
        }
    }

    pub fn plus(self, o: CurveClass) -> Self {
        CurveClass {
            l: self.l + o.l,
            m: self.m + o.m,
        }
    }
}

/// Algebraic intersection number with L . M = +1.
pub fn pairing(x: CurveClass, y: CurveClass) -> i64 {
    x.l * y.m - x.m * y.l
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurgeryKind {
    Reducible,
    TorusKnotInLensSpace,
    CableOfTorusKnot,
    TorusKnotInS3,
    Trefoil,
    /// The cable companion is a core of the lens space, so the knot is a
    /// torus knot there rather than a cable.
    CoreDegenerate,
    None,
}

/// A curve on the boundary torus read as a cable of the two cores: of C
/// (longitude M, meridian the new meridian) and of C' (longitude M,
/// meridian L).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CablePosition {
    pub class: CurveClass,
    pub on_c: (i64, i64),
    pub on_c_prime: (i64, i64),
}

impl CablePosition {
    fn of(class: CurveClass, meridian: CurveClass) -> Self {
        CablePosition {
            class,
            on_c: (pairing(class, meridian), pairing(class, CurveClass::M)),
            on_c_prime: (
                pairing(class, CurveClass::L),
                -pairing(class, CurveClass::M),
            ),
        }
    }

    fn mirrored(self) -> Self {
        CablePosition {
            class: CurveClass::new(self.class.l, -self.class.m),
            on_c: (self.on_c.0, -self.on_c.1),
            on_c_prime: (self.on_c_prime.0, -self.on_c_prime.1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotPayload {
    /// The surgered manifold is the (lens, 1)-lens space: S^3 at +-1.
    pub lens: i64,
    /// The knot itself, when it lies on the boundary torus.
    pub knot: Option<CablePosition>,
    /// The companion K of which the knot is a (2, k)-cable.
    pub companion: Option<CablePosition>,
    /// Torus knot type in S^3 (the knot, or the companion for cables).
    pub torus_pair: Option<(i64, i64)>,
    /// (2, k) when k is determined.
    pub cable_pair: Option<(i64, i64)>,
    /// Computed on the mirror image and reflected back.
    pub mirror: bool,
}

impl KnotPayload {
    fn mirrored(self) -> Self {
        let flip = |p: (i64, i64)| (p.0, -p.1);
        KnotPayload {
            lens: -self.lens,
            knot: self.knot.map(CablePosition::mirrored),
            companion: self.companion.map(CablePosition::mirrored),
            torus_pair: self.torus_pair.map(flip),
            cable_pair: self.cable_pair.map(flip),
            mirror: !self.mirror,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    Knot(KnotPayload),
    Reducible { slopes: ReducibleSlopes },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryClassification {
    pub w: i64,
    pub u: i64,
    pub gamma: Vec<i64>,
    pub kind: SurgeryKind,
    pub payload: Option<Payload>,
}

impl SurgeryClassification {
    pub fn knot(&self) -> Option<&KnotPayload> {
        match &self.payload {
            Some(Payload::Knot(k)) => Some(k),
            _ => None,
        }
    }
}

/// Torus pair of a knot on the boundary torus when the surgery gives S^3.
fn s3_torus_pair(x: CurveClass, meridian: CurveClass) -> (i64, i64) {
    let sigma = pairing(CurveClass::L, meridian);
    (sigma * pairing(x, meridian), -pairing(x, CurveClass::L))
}

fn knot_kind(lens: i64, lens_kind: SurgeryKind) -> SurgeryKind {
    if lens.abs() == 1 {
        SurgeryKind::TorusKnotInS3
    } else {
        lens_kind
    }
}

/// Classifies the knot left by slope-gamma surgery on the second component of
/// L([2w+1, 2u+1]).
pub fn surgery_knot(w: i64, u: i64, gamma: i64) -> Result<SurgeryClassification> {
    LinkParams::from_wu(w, u)?;
    let (kind, payload) = surgery_payload(w, u, gamma);
    Ok(SurgeryClassification {
        w,
        u,
        gamma: vec![gamma],
        kind,
        payload: payload.map(Payload::Knot),
    })
}

fn surgery_payload(w: i64, u: i64, gamma: i64) -> (SurgeryKind, Option<KnotPayload>) {
    let meridian = CurveClass::slope(gamma);
    let g0 = -w + u;
    if (w, u, gamma) == (1, -2, -1) {
        let payload = KnotPayload {
            lens: gamma,
            knot: None,
            companion: None,
            torus_pair: Some((2, -3)),
            cable_pair: None,
            mirror: false,
        };
        return (SurgeryKind::Trefoil, Some(payload));
    }
    if gamma == g0 {
        let x = CurveClass::L
            .scale(-2)
            .plus(CurveClass::M.scale(-(2 * u + 1)));
        let s3 = gamma.abs() == 1;
        let payload = KnotPayload {
            lens: gamma,
            knot: Some(CablePosition::of(x, meridian)),
            companion: None,
            torus_pair: s3.then(|| s3_torus_pair(x, meridian)),
            cable_pair: None,
            mirror: false,
        };
        return (
            knot_kind(gamma, SurgeryKind::TorusKnotInLensSpace),
            Some(payload),
        );
    }
    let eps = gamma - g0;
    if eps.abs() != 1 {
        return (SurgeryKind::None, None);
    }
    if (u, eps) == (1, -1) && (w, eps) != (1, 1) {
        // mirror image of the (w, eps) = (1, 1) case with w and u exchanged
        let (kind, p) = surgery_payload(u, w, -gamma);
        return (kind, p.map(KnotPayload::mirrored));
    }
    let h = (2 * u + 1 + eps) / 2;
    let k = CurveClass::new(-1, -h);
    let special = if (w, eps) == (1, 1) {
        Some(k.scale(2).plus(meridian.scale(-1)))
    } else if (u, eps) == (-2, 1) {
        Some(k.scale(2).plus(CurveClass::L.scale(-1)))
    } else {
        None
    };
    let s3 = gamma.abs() == 1;
    let payload = match special {
        Some(x) => KnotPayload {
            lens: gamma,
            knot: Some(CablePosition::of(x, meridian)),
            companion: None,
            torus_pair: s3.then(|| s3_torus_pair(x, meridian)),
            cable_pair: None,
            mirror: false,
        },
        None => {
            let torus = s3.then(|| s3_torus_pair(k, meridian));
            KnotPayload {
                lens: gamma,
                knot: None,
                companion: Some(CablePosition::of(k, meridian)),
                torus_pair: torus,
                // two parallel copies of K joined through one -eps crossing
                cable_pair: torus.map(|(p, q)| (2, 2 * p * q - eps)),
                mirror: false,
            }
        }
    };
    let kind = if special.is_some() {
        knot_kind(gamma, SurgeryKind::CoreDegenerate)
    } else {
        SurgeryKind::CableOfTorusKnot
    };
    (kind, Some(payload))
}

/// Classifies a two-slope surgery: reducible or not.
pub fn classify_pair(w: i64, u: i64, gamma1: i64, gamma2: i64) -> Result<SurgeryClassification> {
    let hit = reducible_surgeries(w, u)?.into_iter().find(|s| {
        (s.gamma1, s.gamma2) == (gamma1, gamma2) || (s.gamma2, s.gamma1) == (gamma1, gamma2)
    });
    Ok(SurgeryClassification {
        w,
        u,
        gamma: vec![gamma1, gamma2],
        kind: if hit.is_some() {
            SurgeryKind::Reducible
        } else {
            SurgeryKind::None
        },
        payload: hit.map(|slopes| Payload::Reducible { slopes }),
    })
}

/// Whether two knot pairs agree up to (a,b) ~ (b,a) ~ (-a,-b).
pub fn pairs_equivalent(x: (i64, i64), y: (i64, i64)) -> bool {
    [y, (-y.0, -y.1), (y.1, y.0), (-y.1, -y.0)].contains(&x)
}

/// Representative with a > 0 (or a = 0, b >= 0) and |a| <= |b|.
pub fn normalize_pair(p: (i64, i64)) -> (i64, i64) {
    let (a, b) = if p.0.abs() <= p.1.abs() {
        p
    } else {
        (p.1, p.0)
    };
    if a < 0 || (a == 0 && b < 0) {
        (-a, -b)
    } else {
        (a, b)
    }
}

/// One of the listed torus-knot surgeries matched by a fraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusKnotSurgery {
    pub expansion: [i64; 2],
    pub gamma: i64,
    pub torus_pair: (i64, i64),
    /// Which item of the list matched: 1 for [p+2, p], 2 for [3, 3], 3 for [-3, 3].
    pub item: u8,
    pub mirror: bool,
}

fn listed_torus_surgery(r: i64, s: i64) -> Option<(u8, i64, (i64, i64))> {
    match (r, s) {
        (3, 3) => Some((2, 1, (2, -5))),
        (-3, 3) => Some((3, -1, (2, -3))),
        _ if r == s + 2 && s.abs() >= 3 && r.abs() >= 3 => Some((1, 1, (s, -r))),
        _ => None,
    }
}

fn odd_odd(p: Rational) -> Result<Vec<[i64; 2]>> {
    let all = expand_all(p, ExpansionPattern::OddOdd);
    if all.is_empty() {
        return Err(ClassifyError::NotOddOdd(p));
    }
    if all.iter().any(|e| e[0].abs() == 1 || e[1].abs() == 1) {
        return Err(ClassifyError::TorusLink(p));
    }
    Ok(all.into_iter().map(|e| [e[0], e[1]]).collect())
}

/// The listed surgeries on L(p) that yield a non-trivial torus knot in S^3,
/// matched on each [odd, odd] expansion and on its mirror.
pub fn torus_knot_surgeries(p: Rational) -> Result<Vec<TorusKnotSurgery>> {
    let mut out = Vec::new();
    for [r, s] in odd_odd(p)? {
        if let Some((item, gamma, pair)) = listed_torus_surgery(r, s) {
            out.push(TorusKnotSurgery {
                expansion: [r, s],
                gamma,
                torus_pair: pair,
                item,
                mirror: false,
            });
        }
        if let Some((item, gamma, pair)) = listed_torus_surgery(-r, -s) {
            out.push(TorusKnotSurgery {
                expansion: [r, s],
                gamma: -gamma,
                torus_pair: (pair.0, -pair.1),
                item,
                mirror: true,
            });
        }
    }
    Ok(out)
}

/// How a listed torus-knot surgery was recovered from `surgery_knot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reconciliation {
    /// Continued fraction read backwards (components exchanged).
    pub reversed: bool,
    /// Matched on the mirror image.
    pub mirrored: bool,
    pub w: i64,
    pub u: i64,
    pub gamma: i64,
}

/// Finds a way to read a listed torus-knot surgery as a `surgery_knot`
/// outcome on a standard L([2w+1, 2u+1]); `None` is a residual mismatch.
pub fn reconcile(t: &TorusKnotSurgery) -> Option<Reconciliation> {
    let [r, s] = t.expansion;
    for reversed in [false, true] {
        let (a, b) = if reversed { (s, r) } else { (r, s) };
        for mirrored in [false, true] {
            let (a, b, gamma, want) = if mirrored {
                (-a, -b, -t.gamma, (t.torus_pair.0, -t.torus_pair.1))
            } else {
                (a, b, t.gamma, t.torus_pair)
            };
            let Ok(link) = LinkParams::from_rs(a, b) else {
                continue;
            };
            let Ok(c) = surgery_knot(link.w(), link.u(), gamma) else {
                continue;
            };
            let Some(k) = c.knot() else { continue };
            let got = match c.kind {
                SurgeryKind::TorusKnotInS3 | SurgeryKind::Trefoil => k.torus_pair,
                _ => None,
            };
            if got.is_some_and(|g| pairs_equivalent(g, want)) {
                return Some(Reconciliation {
                    reversed,
                    mirrored,
                    w: link.w(),
                    u: link.u(),
                    gamma,
                });
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SatelliteVerdict {
    /// The surgery is a satellite (a cable of a torus knot).
    Satellite {
        w: i64,
        u: i64,
        mirror: bool,
    },
    /// Shape allowed for a prime satellite; not decided here.
    Candidate {
        w: i64,
        v: i64,
        u: i64,
    },
    NotSatellite,
}

/// Checks L(p)[gamma] against the two shapes a prime satellite can take.
pub fn satellite_candidates(p: Rational, gamma: Rational) -> SatelliteVerdict {
    for e in expand_all(p, ExpansionPattern::OddOdd) {
        for [r, s] in [[e[0], e[1]], [e[1], e[0]]] {
            let mirror = r < 0;
            let (r, s, g) = if mirror {
                (-r, -s, -gamma)
            } else {
                (r, s, gamma)
            };
            let Ok(link) = LinkParams::from_rs(r, s) else {
                continue;
            };
            let (w, u) = (link.w(), link.u());
            if w >= 2 && (u >= 2 || u <= -3) && g.is_integer() && !g.is_infinite() {
                let g = g.num();
                if g == -w + u + 1 || g == -w + u - 1 {
                    return SatelliteVerdict::Satellite { w, u, mirror };
                }
            }
        }
    }
    for e in expand_all(p, ExpansionPattern::EvenAnyEven) {
        let (w, v, u) = (e[0] / 2, e[1], e[2] / 2);
        if w.abs() >= 2 && v.abs() >= 2 && u.abs() >= 2 {
            return SatelliteVerdict::Candidate { w, v, u };
        }
    }
    SatelliteVerdict::NotSatellite
}

/// Invariants of a surface meeting only the first component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneSidedSurface {
    pub alpha: i64,
    pub beta: i64,
    pub chi: i64,
    pub genus: i64,
    pub boundary_circles: i64,
    pub integral_slope: bool,
}

/// The surface carried by a path of 2m edges all labelled B.
pub fn all_b_invariants(m: i64) -> OneSidedSurface {
    OneSidedSurface {
        alpha: 2,
        beta: 0,
        chi: -2 * m + 2,
        genus: m - 1,
        boundary_circles: 2,
        integral_slope: true,
    }
}

/// The B-edge path 1/0, 0, 1/2, 1/3, ..., 1/(2m) in the D_inf diagram.
pub fn all_b_path(m: i64) -> farey::Result<Vec<PathEdge>> {
    let mut pts = vec![Rational::INFINITY, Rational::ZERO];
    for q in 2..=2 * m {
        pts.push(Rational::new(1, q)?);
    }
    pts.windows(2)
        .map(|ab| {
            let (a, b) = (ab[0], ab[1]);
            let (even, odd) = if a.parity_even() { (a, b) } else { (b, a) };
            Ok(PathEdge {
                label: EdgeLabel::B,
                regime: Regime::Dinf,
                matrix: GMatrix::from_edge(even, odd)?,
                orientation_matched: a == odd,
                tag: EdgeTag::Farey,
                from: Point::Vertex(a),
                to: Point::Vertex(b),
            })
        })
        .collect()
}

/// Reads the one-sided invariants off assembled data at (alpha, beta) = (2, 0).
pub fn one_sided_from(d: &SurfaceData) -> OneSidedSurface {
    OneSidedSurface {
        alpha: d.alpha,
        beta: d.beta,
        chi: d.chi,
        genus: d.gprime.twice() / 2,
        boundary_circles: d.b1 + d.b2,
        integral_slope: d.slope1.is_some_and(|s| s.is_integer() && !s.is_infinite()),
    }
}

/// Assembles the all-B path of length 2m for L([r, s]).
pub fn assemble_all_b(link: &LinkParams, m: i64) -> Result<OneSidedSurface> {
    let edges = all_b_path(m)?;
    let d = invariants::assemble_edges(link, Regime::Dinf, &edges, &Weights::new(2, 0))?;
    Ok(one_sided_from(&d))
}
