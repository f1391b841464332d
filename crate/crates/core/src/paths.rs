//! The diagrams D1, D_inf and D_t over the quadrilateral sequence, the named
//! minimal edge-paths from 1/0 to [r, s], and their expansion into
//! matrix-tagged edges.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::farey::{self, FareyError, GMatrix, LinkParams, Rational, Sequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error("unknown path name {0:?}")]
    UnknownName(String),
    #[error("{name} belongs to the {family} family, but s = {s}")]
    WrongFamily {
        name: PathName,
        family: &'static str,
        s: i64,
    },
    #[error("{name} is not minimal for L([{r},{s}])")]
    NotMinimal { name: PathName, r: i64, s: i64 },
    #[error("no {regime:?} edge joins {from} and {to}")]
    NoEdge {
        regime: Regime,
        from: Point,
        to: Point,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Regime {
    /// t = 1
    D1,
    /// t = infinity
    Dinf,
    /// 1 < t < infinity
    Dt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeLabel {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::D1 => "D1",
            Regime::Dinf => "Dinf",
            Regime::Dt => "Dt",
        })
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A vertex of the diagram: a Farey vertex, or the midpoint of a quad side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Point {
    Vertex(Rational),
    Mid(Rational, Rational),
}

impl Point {
    pub fn mid(a: Rational, b: Rational) -> Point {
        if a <= b {
            Point::Mid(a, b)
        } else {
            Point::Mid(b, a)
        }
    }

    pub fn map(&self, f: impl Fn(Rational) -> farey::Result<Rational>) -> farey::Result<Point> {
        Ok(match *self {
            Point::Vertex(v) => Point::Vertex(f(v)?),
            Point::Mid(a, b) => Point::mid(f(a)?, f(b)?),
        })
    }

    pub fn apply(&self, m: &GMatrix) -> farey::Result<Point> {
        self.map(|v| m.apply(v))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Vertex(v) => write!(f, "{v}"),
            Point::Mid(a, b) => write!(f, "mid({a},{b})"),
        }
    }
}

/// Where an edge sits: the image of a model edge under f_k, g_k or h_k of a
/// given quadrilateral, the t = 1 edge C' carried by (1,0; r-1,1), or a
/// bare Farey edge outside any quadrilateral sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeTag {
    Quad {
        sequence: Sequence,
        index: i64,
        k: u8,
    },
    SpecialC,
    Farey,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathEdge {
    pub label: EdgeLabel,
    pub regime: Regime,
    pub matrix: GMatrix,
    /// False when the path runs against the image of the model orientation.
    pub orientation_matched: bool,
    pub tag: EdgeTag,
    pub from: Point,
    pub to: Point,
}

impl PathEdge {
    /// Label with a leading minus sign for reversed edges, e.g. "-D".
    pub fn signed_label(&self) -> String {
        if self.orientation_matched {
            self.label.to_string()
        } else {
            format!("-{}", self.label)
        }
    }
}

macro_rules! path_names {
    ($($v:ident => $s:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum PathName { $($v),* }

        impl PathName {
            pub const ALL: &'static [PathName] = &[$(PathName::$v),*];

            pub fn as_str(&self) -> &'static str {
                match self { $(PathName::$v => $s),* }
            }
        }

        impl FromStr for PathName {
            type Err = PathError;
            fn from_str(s: &str) -> Result<Self, PathError> {
                match s.trim().to_ascii_lowercase().as_str() {
                    $($s => Ok(PathName::$v),)*
                    _ => Err(PathError::UnknownName(s.to_string())),
                }
            }
        }
    };
}

path_names! {
    C1 => "c1", C2 => "c2", C3 => "c3", C4 => "c4", C5 => "c5", C6 => "c6", C7 => "c7", C8 => "c8",
    C14 => "c14", C16 => "c16", C24 => "c24", C25 => "c25", C27 => "c27", C28 => "c28",
    C36 => "c36", C38 => "c38",
    D0 => "d0", D1 => "d1", D2 => "d2", D3 => "d3", D4 => "d4", D5 => "d5", D6 => "d6",
    D7 => "d7", D8 => "d8",
    D06 => "d06", D14 => "d14", D16 => "d16", D24 => "d24", D25 => "d25", D26 => "d26",
    D27 => "d27", D28 => "d28", D36 => "d36", D38 => "d38",
}

impl fmt::Display for PathName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for PathName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for PathName {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl PathName {
    /// True for the c-family (s > 0), false for the d-family (s < 0).
    pub fn for_positive_s(&self) -> bool {
        self.as_str().starts_with('c')
    }

    /// The (i, j) of a composite path c_ij or d_ij.
    pub fn generators(&self) -> Option<(u8, u8)> {
        let digits = &self.as_str()[1..];
        (digits.len() == 2).then(|| {
            let b = digits.as_bytes();
            (b[0] - b'0', b[1] - b'0')
        })
    }

    pub fn regime(&self) -> Regime {
        use PathName::*;
        match self {
            C1 | C2 | C3 | D0 | D1 | D2 | D3 => Regime::D1,
            C4 | C5 | C6 | C7 | C8 | D4 | D5 | D6 | D7 | D8 => Regime::Dinf,
            _ => Regime::Dt,
        }
    }

    /// For paths obtained by the rotation symmetry: the path on the rotated
    /// link whose reversed image this is.
    pub fn rotation_source(&self) -> Option<PathName> {
        use PathName::*;
        Some(match self {
            C3 => C1,
            C7 => C5,
            C8 => C4,
            C38 => C14,
            C36 => C16,
            C28 => C24,
            C27 => C25,
            D3 => D1,
            D8 => D4,
            D38 => D14,
            D36 => D16,
            D28 => D24,
            _ => return None,
        })
    }

    /// Whether the path has a closed-form row in the summary tables.
    pub fn tabulated(&self) -> bool {
        use PathName::*;
        matches!(
            self,
            C2 | C14 | C16 | C24 | C25 | D2 | D06 | D14 | D16 | D24 | D25 | D26 | D27
        )
    }

    fn family(&self) -> &'static str {
        if self.for_positive_s() {
            "c (s > 0)"
        } else {
            "d (s < 0)"
        }
    }
}

/// Named paths for a regime, in catalog order, before minimality exclusions.
pub fn all_names(link: &LinkParams, regime: Regime) -> Vec<PathName> {
    use PathName::*;
    let list: &[PathName] = match (link.s_positive(), regime) {
        (true, Regime::D1) => &[C1, C2, C3],
        (true, Regime::Dinf) => &[C4, C5, C6, C7, C8],
        (true, Regime::Dt) => &[C14, C16, C24, C25, C27, C28, C36, C38],
        (false, Regime::D1) => &[D0, D1, D2, D3],
        (false, Regime::Dinf) => &[D4, D5, D6, D7, D8],
        (false, Regime::Dt) => &[D06, D14, D16, D24, D25, D26, D27, D28, D36, D38],
    };
    list.to_vec()
}

/// Whether a named path fails to be minimal for this link.
pub fn is_excluded(name: PathName, link: &LinkParams) -> bool {
    use PathName::*;
    let (r, s) = (link.r(), link.s());
    if let Some((_, j)) = name.generators() {
        let base = match (name.for_positive_s(), j) {
            (true, 4) => C4,
            (true, 5) => C5,
            (true, 6) => C6,
            (true, 7) => C7,
            (true, 8) => C8,
            (false, 4) => D4,
            (false, 5) => D5,
            (false, 6) => D6,
            (false, 7) => D7,
            (false, 8) => D8,
            _ => unreachable!("composite paths end in 4..=8"),
        };
        return is_excluded(base, link);
    }
    match name {
        C5 => r == 3,
        C7 => s == 3,
        D4 => s == -3,
        D5 => r == 3 || s == -3,
        D8 => r == 3,
        _ => false,
    }
}

/// The minimal edge-paths of a regime for L([r, s]).
pub fn catalog(r: i64, s: i64, regime: Regime) -> Result<Vec<PathName>, PathError> {
    let link = LinkParams::from_rs(r, s)?;
    Ok(catalog_of(&link, regime))
}

pub fn catalog_of(link: &LinkParams, regime: Regime) -> Vec<PathName> {
    all_names(link, regime)
        .into_iter()
        .filter(|n| !is_excluded(*n, link))
        .collect()
}

type FaceId = (usize, u8);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramEdge {
    pub label: EdgeLabel,
    /// Image of the model edge's start point.
    pub start: Point,
    pub end: Point,
    pub matrix: GMatrix,
    pub tag: EdgeTag,
    pub faces: Vec<FaceId>,
}

/// The part of a diagram lying in the quadrilaterals from 1/0 to [r, s].
#[derive(Debug, Clone)]
pub struct Diagram {
    pub link: LinkParams,
    pub regime: Regime,
    pub edges: Vec<DiagramEdge>,
    index: HashMap<(Point, Point), usize>,
}

fn key(a: Point, b: Point) -> (Point, Point) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Model edge (start, end) for each label of a regime.
pub fn model_edge(regime: Regime, label: EdgeLabel) -> Option<(Point, Point)> {
    let inf = Rational::INFINITY;
    let zero = Rational::ZERO;
    let one = Rational::ONE;
    let half = Rational::new(1, 2).expect("1/2");
    let v = Point::Vertex;
    Some(match (regime, label) {
        (Regime::Dt, EdgeLabel::A) => (v(inf), Point::mid(inf, zero)),
        (Regime::Dt, EdgeLabel::B) => (v(zero), Point::mid(inf, zero)),
        (Regime::Dt, EdgeLabel::C) => (Point::mid(inf, one), Point::mid(inf, zero)),
        (Regime::Dt, EdgeLabel::D) => (Point::mid(zero, half), Point::mid(inf, zero)),
        (Regime::D1, EdgeLabel::A) => (v(inf), v(zero)),
        (Regime::D1, EdgeLabel::C) => (v(one), v(zero)),
        (Regime::Dinf, EdgeLabel::B) => (v(zero), v(inf)),
        (Regime::Dinf, EdgeLabel::D) => (v(half), v(inf)),
        _ => return None,
    })
}

impl Diagram {
    pub fn build(link: &LinkParams, regime: Regime) -> Result<Diagram, PathError> {
        let seq = farey::quads_of(link)?;
        let mut d = Diagram {
            link: *link,
            regime,
            edges: Vec::new(),
            index: HashMap::new(),
        };
        for (qi, quad) in seq.quads.iter().enumerate() {
            let tag = |k: u8| EdgeTag::Quad {
                sequence: quad.sequence,
                index: quad.index,
                k,
            };
            let m = &quad.matrices;
            use EdgeLabel::*;
            match regime {
                Regime::Dt => {
                    // triangles at e0, o1, e2, o0, then the central rectangle
                    let faces: [(u8, [(EdgeLabel, u8); 3]); 4] = [
                        (0, [(A, 0), (A, 1), (C, 0)]),
                        (1, [(B, 1), (B, 2), (D, 2)]),
                        (2, [(A, 2), (A, 3), (C, 2)]),
                        (3, [(B, 3), (B, 0), (D, 0)]),
                    ];
                    for (f, members) in faces {
                        for (label, k) in members {
                            let mut fs = vec![(qi, f)];
                            if matches!(label, C | D) {
                                fs.push((qi, 4));
                            }
                            d.add(label, &m[k as usize], tag(k), &fs)?;
                        }
                    }
                }
                Regime::D1 => {
                    for k in 0..4u8 {
                        d.add(A, &m[k as usize], tag(k), &[(qi, k / 2)])?;
                    }
                    let special = quad.sequence == Sequence::First && quad.index == link.w() + 1;
                    let t = if special { EdgeTag::SpecialC } else { tag(0) };
                    d.add(C, &m[0], t, &[(qi, 0), (qi, 1)])?;
                }
                Regime::Dinf => {
                    for k in 0..4u8 {
                        let f = if k == 0 || k == 3 { 0 } else { 1 };
                        d.add(B, &m[k as usize], tag(k), &[(qi, f)])?;
                    }
                    d.add(D, &m[0], tag(0), &[(qi, 0), (qi, 1)])?;
                }
            }
        }
        Ok(d)
    }

    fn add(
        &mut self,
        label: EdgeLabel,
        m: &GMatrix,
        tag: EdgeTag,
        faces: &[FaceId],
    ) -> Result<(), PathError> {
        let (s0, e0) = model_edge(self.regime, label).expect("label belongs to regime");
        let (start, end) = (s0.apply(m)?, e0.apply(m)?);
        let k = key(start, end);
        if let Some(&i) = self.index.get(&k) {
            let e = &mut self.edges[i];
            assert_eq!(e.label, label, "edge {start}-{end} carries two labels");
            assert!(e.start == start && e.matrix.neg_d_over_c() == m.neg_d_over_c());
            for f in faces {
                if !e.faces.contains(f) {
                    e.faces.push(*f);
                }
            }
        } else {
            self.index.insert(k, self.edges.len());
            self.edges.push(DiagramEdge {
                label,
                start,
                end,
                matrix: *m,
                tag,
                faces: faces.to_vec(),
            });
        }
        Ok(())
    }

    pub fn edge_between(&self, a: Point, b: Point) -> Option<&DiagramEdge> {
        self.index.get(&key(a, b)).map(|&i| &self.edges[i])
    }

    /// Neighbours of a point, in a fixed order.
    pub fn neighbours(&self, p: Point) -> Vec<Point> {
        let mut out: Vec<Point> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.start == p {
                    Some(e.end)
                } else if e.end == p {
                    Some(e.start)
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        out
    }

    pub fn trace(&self, points: &[Point]) -> Result<Vec<PathEdge>, PathError> {
        points
            .windows(2)
            .map(|w| {
                let e = self.edge_between(w[0], w[1]).ok_or(PathError::NoEdge {
                    regime: self.regime,
                    from: w[0],
                    to: w[1],
                })?;
                Ok(PathEdge {
                    label: e.label,
                    regime: self.regime,
                    matrix: e.matrix,
                    orientation_matched: e.start == w[0],
                    tag: e.tag,
                    from: w[0],
                    to: w[1],
                })
            })
            .collect()
    }

    /// No two consecutive edges on a common face.
    pub fn is_minimal(&self, points: &[Point]) -> bool {
        let mut prev: Option<&DiagramEdge> = None;
        for w in points.windows(2) {
            let Some(e) = self.edge_between(w[0], w[1]) else {
                return false;
            };
            if let Some(p) = prev {
                if p.faces.iter().any(|f| e.faces.contains(f)) {
                    return false;
                }
            }
            prev = Some(e);
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePath {
    pub name: PathName,
    pub link: LinkParams,
    pub regime: Regime,
    pub points: Vec<Point>,
    pub edges: Vec<PathEdge>,
}

impl EdgePath {
    pub fn label_string(&self) -> String {
        self.edges
            .iter()
            .map(|e| e.signed_label())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn has_label(&self, l: EdgeLabel) -> bool {
        self.edges.iter().any(|e| e.label == l)
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator pair")
}

/// [r, k] = k/(rk+1)
fn cf(r: i64, k: i64) -> Rational {
    rat(k, r * k + 1)
}

/// Point sequence of a path that is not obtained by rotation.
fn primary_points(name: PathName, link: &LinkParams) -> Vec<Point> {
    use PathName::*;
    let (w, r) = (link.w(), link.r());
    let v = Point::Vertex;
    let m = Point::mid;
    let o = Rational::ZERO;
    let big_r = rat(1, r);
    let end = link.fraction();
    let p = |i: i64| rat(1, 2 * i - 2);
    let q = |i: i64| rat(1, 2 * i - 1);
    let x = |j: i64| cf(r, 2 * j - 3);
    let vv = |j: i64| cf(r, -2 * j + 3);
    let ww = |j: i64| cf(r, -2 * j + 2);
    let u = link.u();
    let up = -u - 1;

    // 1/0 to 1/(r-1) through A and -A edges around 0/1
    let ada = || {
        let mut out = Vec::new();
        for i in 1..=w {
            out.extend([v(p(i)), m(p(i), q(i)), m(p(i + 1), q(i))]);
        }
        out.push(v(p(w + 1)));
        out
    };
    // 1/0, then midpoints of the sides at 0/1 up to mid(1/(r-1), 0/1)
    let d_near_zero = || {
        let mut out = vec![v(p(1)), m(p(1), o)];
        out.extend((1..=w).map(|i| m(p(i + 1), o)));
        out
    };
    let zigzag = || {
        let mut out = vec![v(p(1))];
        for i in 1..=w {
            out.extend([v(q(i)), v(p(i + 1))]);
        }
        out
    };
    let tail_r = [m(p(w + 1), big_r), v(big_r), m(big_r, end), v(end)];
    let cat = |mut a: Vec<Point>, b: &[Point]| {
        a.extend_from_slice(b);
        a
    };
    match name {
        C1 | D1 => cat(zigzag(), &[v(big_r), v(end)]),
        C2 | D2 => vec![v(p(1)), v(o), v(big_r), v(end)],
        C4 | D4 => cat((1..=w + 1).map(|i| v(p(i))).collect(), &[v(big_r), v(end)]),
        C5 | D5 => vec![v(p(1)), v(o), v(p(w + 1)), v(big_r), v(end)],
        C6 => {
            let mut out: Vec<Point> = (1..=w + 1).map(|i| v(p(i))).collect();
            out.extend((2..=u + 2).map(|j| v(x(j))));
            out
        }
        C14 | D14 => cat(ada(), &tail_r),
        C16 => {
            let mut out = ada();
            out.push(m(p(w + 1), big_r));
            out.extend((2..=u + 2).map(|j| m(x(j), big_r)));
            out.push(v(end));
            out
        }
        C24 | D24 => cat(d_near_zero(), &tail_r),
        C25 | D25 => cat(vec![v(p(1)), m(p(1), o), v(o), m(p(w + 1), o)], &tail_r),
        D0 => {
            let mut out = zigzag();
            for j in 2..=up + 1 {
                out.extend([v(ww(j)), v(vv(j + 1))]);
            }
            out
        }
        D6 => {
            let mut out: Vec<Point> = (1..=w + 1).map(|i| v(p(i))).collect();
            out.extend((3..=up + 2).map(|j| v(vv(j))));
            out
        }
        D7 => vec![v(p(1)), v(o), v(vv(1)), v(big_r), v(end)],
        D06 => {
            let mut out = ada();
            for j in 2..=up + 1 {
                out.extend([m(vv(j), ww(j)), m(vv(j + 1), ww(j)), v(vv(j + 1))]);
            }
            out
        }
        D16 => {
            let mut out = ada();
            out.extend((2..=up + 2).map(|j| m(vv(j), big_r)));
            out.push(v(end));
            out
        }
        D26 => {
            let mut out = d_near_zero();
            out.extend((2..=up + 2).map(|j| m(vv(j), big_r)));
            out.push(v(end));
            out
        }
        D27 => cat(
            vec![v(p(1)), m(p(1), o), v(o), m(vv(1), o), m(vv(1), big_r)],
            &[v(big_r), m(big_r, end), v(end)],
        ),
        _ => unreachable!("{name} is a rotated path"),
    }
}

/// The point sequence of a named path, minimal or not.
pub fn path_points(name: PathName, link: &LinkParams) -> Result<Vec<Point>, PathError> {
    if name.for_positive_s() != link.s_positive() {
        return Err(PathError::WrongFamily {
            name,
            family: name.family(),
            s: link.s(),
        });
    }
    let Some(src) = name.rotation_source() else {
        return Ok(primary_points(name, link));
    };
    let other = link.rotated();
    let mm = link.symmetry_matrix();
    let reflect = !link.s_positive();
    let mut pts = primary_points(src, &other)
        .iter()
        .map(|pt| pt.map(|v| mm.apply(if reflect { -v } else { v })))
        .collect::<farey::Result<Vec<_>>>()?;
    pts.reverse();
    Ok(pts)
}

/// Expands a named path into edges without checking minimality.
pub fn trace_path(name: PathName, link: &LinkParams) -> Result<EdgePath, PathError> {
    let points = path_points(name, link)?;
    let regime = name.regime();
    let diagram = Diagram::build(link, regime)?;
    let edges = diagram.trace(&points)?;
    Ok(EdgePath {
        name,
        link: *link,
        regime,
        points,
        edges,
    })
}

/// Expands a cataloged path for L([2w+1, 2u+1]) into matrix-tagged edges.
pub fn path_edges(name: PathName, w: i64, u: i64) -> Result<EdgePath, PathError> {
    let link = LinkParams::from_wu(w, u)?;
    path_edges_of(name, &link)
}

pub fn path_edges_of(name: PathName, link: &LinkParams) -> Result<EdgePath, PathError> {
    let path = trace_path(name, link)?;
    if is_excluded(name, link) {
        return Err(PathError::NotMinimal {
            name,
            r: link.r(),
            s: link.s(),
        });
    }
    Ok(path)
}
