//! Exact rationals on the extended line, the subgroup G of PSL2(Z), and the
//! quadrilateral sequence carried by the continued fraction [r, s].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FareyError {
    #[error("empty list of partial quotients")]
    EmptyQuotients,
    #[error("partial quotient must be nonzero")]
    ZeroQuotient,
    #[error("continued fraction divides by zero before the last step")]
    DivisionByZero,
    #[error("0/0 is not a rational")]
    Indeterminate,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("matrix ({a},{b};{c},{d}) is not in G (needs det +1 and even c)")]
    NotInGroup { a: i64, b: i64, c: i64, d: i64 },
    #[error("invalid link parameters r={r}, s={s}: need odd r >= 3 and odd s with |s| >= 3")]
    InvalidLink { r: i64, s: i64 },
    #[error("quadrilateral index {index} out of range 1..={max} for the {sequence:?} sequence")]
    IndexOutOfRange {
        sequence: Sequence,
        index: i64,
        max: i64,
    },
    #[error("edge position k={0} not in 0..=3")]
    BadPosition(u8),
    #[error("{0} and {1} are not joined by a Farey edge with even/odd ends")]
    NotFareyEdge(Rational, Rational),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, FareyError>;

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(FareyError::Overflow)
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(FareyError::Overflow)
}

/// Reduced fraction `num/den` with `den >= 0`; `1/0` is the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub const INFINITY: Rational = Rational { num: 1, den: 0 };
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if num == 0 && den == 0 {
            return Err(FareyError::Indeterminate);
        }
        if den == 0 {
            return Ok(Self::INFINITY);
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = n.checked_neg().ok_or(FareyError::Overflow)?;
            d = d.checked_neg().ok_or(FareyError::Overflow)?;
        }
        Ok(Rational { num: n, den: d })
    }

    pub fn integer(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn parity_even(&self) -> bool {
        self.den % 2 == 0
    }
}

/// Total order on the extended line with 1/0 placed after every finite value.
impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => {
                let l = self.num as i128 * other.den as i128;
                let r = other.num as i128 * self.den as i128;
                l.cmp(&r)
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Negation; fixes 1/0.
impl std::ops::Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        if self.is_infinite() {
            self
        } else {
            Rational {
                num: -self.num,
                den: self.den,
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || FareyError::Parse(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n = n.trim().parse().map_err(|_| bad())?;
                let d = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => Ok(Rational::integer(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", self.num, self.den))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Element of G: integer matrix with determinant +1 and even lower-left entry,
/// acting by p/q -> (ap+bq)/(cp+dq).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GMatrix {
    pub const IDENTITY: GMatrix = GMatrix {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = (a as i128) * (d as i128) - (b as i128) * (c as i128);
        if det != 1 || c % 2 != 0 {
            return Err(FareyError::NotInGroup { a, b, c, d });
        }
        Ok(GMatrix { a, b, c, d })
    }

    /// The matrix whose columns are the even vertex and the odd vertex of a
    /// Farey edge, with the odd column negated if needed for determinant +1.
    pub fn from_edge(even: Rational, odd: Rational) -> Result<Self> {
        let (a, c) = (even.num, even.den);
        let (mut b, mut d) = (odd.num, odd.den);
        let det = (a as i128) * (d as i128) - (b as i128) * (c as i128);
        if det == -1 {
            b = -b;
            d = -d;
        } else if det != 1 {
            return Err(FareyError::NotFareyEdge(even, odd));
        }
        GMatrix::new(a, b, c, d).map_err(|_| FareyError::NotFareyEdge(even, odd))
    }

    pub fn apply(&self, v: Rational) -> Result<Rational> {
        let p = add(mul(self.a, v.num)?, mul(self.b, v.den)?)?;
        let q = add(mul(self.c, v.num)?, mul(self.d, v.den)?)?;
        Rational::new(p, q)
    }

    pub fn compose(&self, o: &GMatrix) -> Result<GMatrix> {
        let e = |x: i64, y: i64, z: i64, t: i64| add(mul(x, y)?, mul(z, t)?);
        Ok(GMatrix {
            a: e(self.a, o.a, self.b, o.c)?,
            b: e(self.a, o.b, self.b, o.d)?,
            c: e(self.c, o.a, self.d, o.c)?,
            d: e(self.c, o.b, self.d, o.d)?,
        })
    }

    /// The preimage of 1/0, i.e. -d/c (1/0 when c = 0).
    pub fn neg_d_over_c(&self) -> Rational {
        Rational::new(-self.d, self.c).expect("det 1 rules out c = d = 0")
    }

    /// Equality in PSL2(Z).
    pub fn projectively_eq(&self, o: &GMatrix) -> bool {
        self == o || (self.a == -o.a && self.b == -o.b && self.c == -o.c && self.d == -o.d)
    }
}

impl fmt::Display for GMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)
    }
}

/// Evaluates 1/(a1 + 1/(a2 + ... + 1/an)).
pub fn from_partial_quotients(quotients: &[i64]) -> Result<Rational> {
    let (&last, rest) = quotients.split_last().ok_or(FareyError::EmptyQuotients)?;
    if quotients.contains(&0) {
        return Err(FareyError::ZeroQuotient);
    }
    // running value as num/den, starting from the innermost quotient
    let (mut num, mut den) = (last, 1i64);
    for &a in rest.iter().rev() {
        if num == 0 {
            return Err(FareyError::DivisionByZero);
        }
        // a + den/num
        let n = add(mul(a, num)?, den)?;
        den = num;
        num = n;
    }
    Rational::new(den, num)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExpansionPattern {
    /// [odd, odd]
    OddOdd,
    /// [even, any, even]
    EvenAnyEven,
}

/// Every expansion of `p` matching `pattern`, in a fixed order.
pub fn expand_all(p: Rational, pattern: ExpansionPattern) -> Vec<Vec<i64>> {
    let (n, d) = (p.num as i128, p.den as i128);
    let mut out = Vec::new();
    if p.is_infinite() || n == 0 {
        return out;
    }
    let fits = |x: i128| i64::try_from(x).ok();
    match pattern {
        ExpansionPattern::OddOdd => {
            // s/(rs+1) is reduced, so (s, rs+1) = +-(n, d)
            for sg in [1i128, -1] {
                let (s, big) = (sg * n, sg * d);
                if (big - 1) % s != 0 {
                    continue;
                }
                let r = (big - 1) / s;
                if r != 0 && r % 2 != 0 && s % 2 != 0 {
                    if let (Some(r), Some(s)) = (fits(r), fits(s)) {
                        out.push(vec![r, s]);
                    }
                }
            }
        }
        ExpansionPattern::EvenAnyEven => {
            // [a,b,c] = (bc+1)/(a(bc+1)+c) is reduced; with N = bc+1, D = aN+c,
            // c = D - aN divides N - 1, which pins a to within one of D/N.
            for sg in [1i128, -1] {
                let (big_n, big_d) = (sg * n, sg * d);
                if big_n == 1 {
                    continue;
                }
                let centre = big_d.div_euclid(big_n);
                for a in centre - 3..=centre + 3 {
                    if a == 0 || a % 2 != 0 {
                        continue;
                    }
                    let c = big_d - a * big_n;
                    if c == 0 || c % 2 != 0 || (big_n - 1) % c != 0 {
                        continue;
                    }
                    let b = (big_n - 1) / c;
                    if let (Some(a), Some(b), Some(c)) = (fits(a), fits(b), fits(c)) {
                        out.push(vec![a, b, c]);
                    }
                }
            }
        }
    }
    out
}

/// First expansion of `p` matching `pattern`, if any.
pub fn expand_as(p: Rational, pattern: ExpansionPattern) -> Option<Vec<i64>> {
    expand_all(p, pattern).into_iter().next()
}

/// A two-bridge link L([r, s]) with r = 2w+1 and s = 2u+1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkParams {
    w: i64,
    u: i64,
}

impl LinkParams {
    pub fn from_rs(r: i64, s: i64) -> Result<Self> {
        if r % 2 == 0 || s % 2 == 0 || r < 3 || s.abs() < 3 {
            return Err(FareyError::InvalidLink { r, s });
        }
        Ok(LinkParams {
            w: (r - 1) / 2,
            u: (s - 1).div_euclid(2),
        })
    }

    pub fn from_wu(w: i64, u: i64) -> Result<Self> {
        let r = w.checked_mul(2).and_then(|x| x.checked_add(1));
        let s = u.checked_mul(2).and_then(|x| x.checked_add(1));
        match (r, s) {
            (Some(r), Some(s)) => Self::from_rs(r, s),
            _ => Err(FareyError::Overflow),
        }
    }

    pub fn r(&self) -> i64 {
        2 * self.w + 1
    }

    pub fn s(&self) -> i64 {
        2 * self.u + 1
    }

    pub fn w(&self) -> i64 {
        self.w
    }

    pub fn u(&self) -> i64 {
        self.u
    }

    pub fn s_positive(&self) -> bool {
        self.u > 0
    }

    /// u' = -u-1 for s < 0.
    pub fn u_prime(&self) -> Option<i64> {
        (self.u < 0).then_some(-self.u - 1)
    }

    /// Number of quadrilaterals in the second sequence, counting the one
    /// shared with the first.
    pub fn second_len(&self) -> i64 {
        match self.u_prime() {
            None => self.u + 1,
            Some(up) => up + 1,
        }
    }

    /// The fraction [r, s].
    pub fn fraction(&self) -> Rational {
        from_partial_quotients(&[self.r(), self.s()]).expect("valid link parameters")
    }

    /// The link L([s, r]) (s > 0) or L([-s, -r]) (s < 0) whose diagram the
    /// rotation `symmetry_matrix` carries onto this one.
    pub fn rotated(&self) -> LinkParams {
        if self.s_positive() {
            LinkParams::from_rs(self.s(), self.r()).expect("s >= 3")
        } else {
            LinkParams::from_rs(-self.s(), -self.r()).expect("-s >= 3")
        }
    }

    /// (s, -1; sr+1, -r): maps the diagram of `rotated()` onto this one
    /// (composed with p -> -p when s < 0).
    pub fn symmetry_matrix(&self) -> GMatrix {
        let (r, s) = (self.r(), self.s());
        GMatrix::new(s, -1, s * r + 1, -r).expect("det +1, sr+1 even")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sequence {
    First,
    Second,
}

/// One quadrilateral, stored by its four sides as (even, odd) vertex pairs
/// together with the G-matrix carrying the model side onto each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quad {
    pub sequence: Sequence,
    pub index: i64,
    pub sides: [(Rational, Rational); 4],
    pub matrices: [GMatrix; 4],
}

impl Quad {
    /// Vertices (e0, o1, e2, o0) in cyclic order.
    pub fn vertices(&self) -> [Rational; 4] {
        [
            self.sides[0].0,
            self.sides[1].1,
            self.sides[2].0,
            self.sides[0].1,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadSequence {
    pub link: LinkParams,
    pub quads: Vec<Quad>,
    /// Number of quadrilaterals in the first sequence (w+1).
    pub split_index: usize,
}

/// The matrix f_k (first sequence), g_k (second, s > 0) or h_k (second,
/// s < 0) at index i or j.
pub fn edge_matrix(link: &LinkParams, sequence: Sequence, index: i64, k: u8) -> Result<GMatrix> {
    if k > 3 {
        return Err(FareyError::BadPosition(k));
    }
    let max = match sequence {
        Sequence::First => link.w + 1,
        Sequence::Second => link.second_len(),
    };
    if index < 1 || index > max {
        return Err(FareyError::IndexOutOfRange {
            sequence,
            index,
            max,
        });
    }
    let r = link.r();
    let (a, b, c, d) = match sequence {
        Sequence::First => {
            let i = index;
            match k {
                0 => (1, 0, 2 * i - 2, 1),
                1 => (1, 1, 2 * i - 2, 2 * i - 1),
                2 => (1, -1, 2 * i, -(2 * i - 1)),
                _ => (1, 0, 2 * i, 1),
            }
        }
        Sequence::Second if link.s_positive() => {
            let j = index;
            let (p, q) = (2 * j - 3, 2 * j - 2);
            match k {
                0 => (-p, q, -(p * r + 1), q * r + 1),
                1 => (-p, 1, -(p * r + 1), r),
                2 => (2 * j - 1, -1, (2 * j - 1) * r + 1, -r),
                _ => (2 * j - 1, q, (2 * j - 1) * r + 1, q * r + 1),
            }
        }
        Sequence::Second => {
            let j = index;
            let p = -2 * j + 1;
            let q = -2 * j + 2;
            let t = -2 * j + 3;
            match k {
                0 => (-p, q, -(p * r + 1), q * r + 1),
                1 => (-p, 1, -(p * r + 1), r),
                2 => (t, -1, t * r + 1, -r),
                _ => (t, q, t * r + 1, q * r + 1),
            }
        }
    };
    GMatrix::new(a, b, c, d)
}

fn build_quad(link: &LinkParams, sequence: Sequence, index: i64) -> Result<Quad> {
    let mut matrices = [GMatrix::IDENTITY; 4];
    let mut sides = [(Rational::ZERO, Rational::ZERO); 4];
    for k in 0..4u8 {
        let m = edge_matrix(link, sequence, index, k)?;
        matrices[k as usize] = m;
        sides[k as usize] = (m.apply(Rational::INFINITY)?, m.apply(Rational::ZERO)?);
    }
    Ok(Quad {
        sequence,
        index,
        sides,
        matrices,
    })
}

/// The quadrilaterals from 1/0 to [r, s]: w+1 around 0/1, then the rest
/// around 1/r (the second sequence's first quadrilateral is the first
/// sequence's last, so it is not repeated).
pub fn quad_sequence(r: i64, s: i64) -> Result<QuadSequence> {
    let link = LinkParams::from_rs(r, s)?;
    quads_of(&link)
}

pub fn quads_of(link: &LinkParams) -> Result<QuadSequence> {
    let mut quads = Vec::new();
    for i in 1..=link.w + 1 {
        quads.push(build_quad(link, Sequence::First, i)?);
    }
    let split_index = quads.len();
    for j in 2..=link.second_len() {
        quads.push(build_quad(link, Sequence::Second, j)?);
    }
    Ok(QuadSequence {
        link: *link,
        quads,
        split_index,
    })
}
