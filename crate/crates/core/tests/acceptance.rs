//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion deviates from its expected outcome. Two
//! criteria fail on documented source conflicts; for those the run checks
//! that the deviation is exactly the documented one.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use twobridge::classify::{
    all_b_invariants, all_b_path, one_sided_from, pairing, pairs_equivalent,
    planar_chi_bound_holds, reducible_surgeries, surgery_knot, CurveClass, SurgeryKind,
};
use twobridge::farey::{edge_matrix, GMatrix, LinkParams, Rational, Sequence};
use twobridge::invariants::{
    assemble, assemble_edges, edge_contribution, edge_euler, longitude_correction, swap_components,
    SurfaceData, Weights,
};
use twobridge::oracle::{verify_closed_forms, verify_genus_zero, GridPoint, SweepSpec};
use twobridge::paths::{
    catalog_of, path_edges, path_edges_of, EdgeLabel, EdgePath, EdgeTag, PathEdge, PathName, Point,
    Regime,
};

struct Verdict {
    pass: bool,
    detail: String,
    /// Deviations found, compared against the documented set when failing.
    deviations: BTreeSet<String>,
}

impl Verdict {
    fn from_deviations(deviations: BTreeSet<String>, detail: String) -> Self {
        Verdict {
            pass: deviations.is_empty(),
            detail,
            deviations,
        }
    }
}

fn link_grid() -> Vec<LinkParams> {
    SweepSpec::default().links()
}

// ---------------------------------------------------------------- criterion 1

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Seq {
    First,
    Positive,
    Negative,
}

impl Seq {
    fn name(self) -> &'static str {
        match self {
            Seq::First => "first sequence",
            Seq::Positive => "second sequence s>0",
            Seq::Negative => "second sequence s<0",
        }
    }
}

/// The matrices carrying the model edge onto each side, copied from the
/// source formulas independently of the library.
fn transcribed(seq: Seq, idx: i64, r: i64, k: u8) -> (i64, i64, i64, i64) {
    match seq {
        Seq::First => {
            let i = idx;
            match k {
                0 => (1, 0, 2 * i - 2, 1),
                1 => (1, 1, 2 * i - 2, 2 * i - 1),
                2 => (1, -1, 2 * i, -(2 * i - 1)),
                _ => (1, 0, 2 * i, 1),
            }
        }
        Seq::Positive => {
            let j = idx;
            match k {
                0 => (
                    -(2 * j - 3),
                    2 * j - 2,
                    -((2 * j - 3) * r + 1),
                    (2 * j - 2) * r + 1,
                ),
                1 => (-(2 * j - 3), 1, -((2 * j - 3) * r + 1), r),
                2 => (2 * j - 1, -1, (2 * j - 1) * r + 1, -r),
                _ => (
                    2 * j - 1,
                    2 * j - 2,
                    (2 * j - 1) * r + 1,
                    (2 * j - 2) * r + 1,
                ),
            }
        }
        Seq::Negative => {
            let j = idx;
            match k {
                0 => (
                    -(-2 * j + 1),
                    -2 * j + 2,
                    -((-2 * j + 1) * r + 1),
                    (-2 * j + 2) * r + 1,
                ),
                1 => (-(-2 * j + 1), 1, -((-2 * j + 1) * r + 1), r),
                2 => (-2 * j + 3, -1, (-2 * j + 3) * r + 1, -r),
                _ => (
                    -2 * j + 3,
                    -2 * j + 2,
                    (-2 * j + 3) * r + 1,
                    (-2 * j + 2) * r + 1,
                ),
            }
        }
    }
}

/// Printed rows: side, then (-d/c, i1, i2) for the first index and for the
/// later indices. `a` is alpha and `b` is beta.
type Row = (&'static str, [&'static str; 6]);

const FIRST: &[Row] = &[
    ("A0", ["inf", "0", "0", "neg", "b", "b"]),
    ("B0", ["inf", "0", "0", "neg", "-(a-b)", "0"]),
    ("C0", ["inf", "0", "2b", "neg", "0", "2b"]),
    ("D0", ["inf", "0", "a-b", "neg", "-(a-b)", "a-b"]),
    ("A1", ["inf", "0", "0", "neg", "b", "b"]),
    ("B1", ["inf", "0", "0", "neg", "-(a-b)", "0"]),
    ("A2", ["1/2", "-b", "-b", "(1/2,1)", "-b", "-b"]),
    ("B2", ["1/2", "a-b", "0", "(1/2,1)", "a-b", "0"]),
    ("C2", ["1/2", "-2b", "0", "(1/2,1)", "-2b", "0"]),
    ("D2", ["1/2", "0", "a-b", "(1/2,1)", "a-b", "a-b"]),
    ("A3", ["neg", "b", "b", "neg", "b", "b"]),
    ("B3", ["neg", "-(a-b)", "0", "neg", "-(a-b)", "0"]),
];

const POSITIVE: &[Row] = &[
    ("A0", ["neg", "b", "b", "(1,inf)", "-b", "-b"]),
    ("B0", ["neg", "-(a-b)", "0", "(1,inf)", "a-b", "0"]),
    ("C0", ["neg", "0", "2b", "(1,inf)", "0", "2b"]),
    ("D0", ["neg", "-(a-b)", "a-b", "(1,inf)", "a-b", "a-b"]),
    ("A1", ["neg", "b", "b", "(0,1)", "-b", "-b"]),
    ("B1", ["neg", "-(a-b)", "0", "(0,1)", "a-b", "0"]),
    ("A2", ["(1/2,1)", "-b", "-b", "(0,1/2)", "-b", "-b"]),
    ("B2", ["(1/2,1)", "a-b", "0", "(0,1/2)", "a-b", "0"]),
    ("C2", ["(1/2,1)", "-2b", "0", "(0,1/2)", "-2b", "0"]),
    ("D2", ["(1/2,1)", "a-b", "a-b", "(0,1/2)", "-(a-b)", "a-b"]),
    ("A3", ["neg", "b", "b", "neg", "b", "b"]),
    ("B3", ["neg", "-(a-b)", "0", "neg", "-(a-b)", "0"]),
];

const NEGATIVE: &[Row] = &[
    ("A0", ["neg", "b", "b", "(1/2,1)", "-b", "-b"]),
    ("B0", ["neg", "-(a-b)", "0", "(1/2,1)", "a-b", "0"]),
    ("C0", ["neg", "0", "2b", "(1/2,1)", "-2b", "0"]),
    ("D0", ["neg", "-(a-b)", "a-b", "(1/2,1)", "a-b", "a-b"]),
    ("A1", ["neg", "b", "b", "neg", "b", "b"]),
    ("B1", ["neg", "-(a-b)", "0", "neg", "-(a-b)", "0"]),
    ("A2", ["(1/2,1)", "-b", "-b", "neg", "b", "b"]),
    ("B2", ["(1/2,1)", "a-b", "0", "neg", "-(a-b)", "0"]),
    ("C2", ["(1/2,1)", "-2b", "0", "neg", "0", "2b"]),
    ("D2", ["(1/2,1)", "a-b", "a-b", "neg", "-(a-b)", "a-b"]),
    ("A3", ["(0,1/2]", "-b", "-b", "neg", "b", "b"]),
    ("B3", ["(0,1/2]", "a-b", "0", "neg", "-(a-b)", "0"]),
];

/// The only rows whose printed first-index cells disagree with the printed
/// matrices.
const KNOWN_TABLE_CONFLICTS: &[&str] = &[
    "second sequence s<0 index 1 A3",
    "second sequence s<0 index 1 B3",
];

fn cell_value(expr: &str, a: i64, b: i64) -> i64 {
    match expr {
        "0" => 0,
        "b" => b,
        "-b" => -b,
        "2b" => 2 * b,
        "-2b" => -2 * b,
        "a-b" => a - b,
        "-(a-b)" => -(a - b),
        other => panic!("unknown cell {other}"),
    }
}

fn cond_holds(cond: &str, x: Rational) -> bool {
    let q = |n, d| Rational::new(n, d).unwrap();
    let finite = !x.is_infinite();
    match cond {
        "inf" => x.is_infinite(),
        "neg" => finite && x.num() < 0,
        "1/2" => x == q(1, 2),
        "(1/2,1)" => finite && x > q(1, 2) && x < q(1, 1),
        "(0,1)" => finite && x > q(0, 1) && x < q(1, 1),
        "(0,1/2)" => finite && x > q(0, 1) && x < q(1, 2),
        "(0,1/2]" => finite && x > q(0, 1) && x <= q(1, 2),
        "(1,inf)" => finite && x > q(1, 1),
        other => panic!("unknown condition {other}"),
    }
}

fn label_of(c: char) -> EdgeLabel {
    match c {
        'A' => EdgeLabel::A,
        'B' => EdgeLabel::B,
        'C' => EdgeLabel::C,
        _ => EdgeLabel::D,
    }
}

fn model_edge(label: EdgeLabel, regime: Regime, m: GMatrix) -> PathEdge {
    PathEdge {
        label,
        regime,
        matrix: m,
        orientation_matched: true,
        tag: EdgeTag::Farey,
        from: Point::Vertex(Rational::INFINITY),
        to: Point::Vertex(Rational::ZERO),
    }
}

fn regimes_for(label: EdgeLabel, a: i64, b: i64) -> Option<Regime> {
    match (label, a == b, b == 0) {
        (EdgeLabel::C, true, _) => None,
        (_, _, true) => Some(Regime::Dinf),
        (_, true, _) => Some(Regime::D1),
        _ => Some(Regime::Dt),
    }
}

fn criterion_1() -> Verdict {
    let mut bad_rows: BTreeSet<String> = BTreeSet::new();
    let mut bad_cells: Vec<String> = Vec::new();
    let mut cells = 0usize;
    let mut matrix_mismatch = 0usize;
    let rs = [3i64, 5, 7, 9, 11, 13];
    for (seq, rows) in [
        (Seq::First, FIRST),
        (Seq::Positive, POSITIVE),
        (Seq::Negative, NEGATIVE),
    ] {
        for (side, printed) in rows {
            let label = label_of(side.chars().next().unwrap());
            let k: u8 = side[1..].parse().unwrap();
            for col in 0..2 {
                let [cond, e1, e2] = [printed[3 * col], printed[3 * col + 1], printed[3 * col + 2]];
                let indices: Vec<i64> = if col == 0 { vec![1] } else { (2..=7).collect() };
                let (mut ok_cond, mut ok1, mut ok2) = (true, true, true);
                for &r in &rs {
                    for &idx in &indices {
                        let (a_, b_, c_, d_) = transcribed(seq, idx, r, k);
                        let m = GMatrix::new(a_, b_, c_, d_).expect("printed matrix lies in G");
                        let s = if seq == Seq::Negative { -13 } else { 13 };
                        let link = LinkParams::from_rs(r, s).unwrap();
                        let sequence = if seq == Seq::First {
                            Sequence::First
                        } else {
                            Sequence::Second
                        };
                        if let Ok(engine) = edge_matrix(&link, sequence, idx, k) {
                            if engine != m {
                                matrix_mismatch += 1;
                            }
                        }
                        ok_cond &= cond_holds(cond, m.neg_d_over_c());
                        for a in 1..=6 {
                            for b in 0..=a {
                                let Some(regime) = regimes_for(label, a, b) else {
                                    continue;
                                };
                                let got = edge_contribution(
                                    &model_edge(label, regime, m),
                                    &Weights::new(a, b),
                                    0,
                                );
                                ok1 &= got.0 == cell_value(e1, a, b);
                                ok2 &= got.1 == cell_value(e2, a, b);
                            }
                        }
                    }
                }
                cells += 3;
                let row = format!(
                    "{} index {} {}",
                    seq.name(),
                    if col == 0 { "1" } else { ">=2" },
                    side
                );
                for (ok, what) in [(ok_cond, "-d/c"), (ok1, "i1"), (ok2, "i2")] {
                    if !ok {
                        bad_cells.push(format!("{row} {what}"));
                        bad_rows.insert(row.clone());
                    }
                }
            }
        }
    }
    // The C edge at t = 1, carried by (1,0; r-1,1), with the branching number.
    for &r in &rs {
        let m = GMatrix::new(1, 0, r - 1, 1).unwrap();
        let mut ok = cond_holds("neg", m.neg_d_over_c());
        for b in 1..=6 {
            for n in 0..=b {
                let got = edge_contribution(
                    &model_edge(EdgeLabel::C, Regime::D1, m),
                    &Weights::new(b, b),
                    n,
                );
                ok &= got == (2 * (b - n), 2 * n);
            }
        }
        if !ok {
            bad_rows.insert(format!("t=1 C edge r={r}"));
        }
    }
    cells += 3;
    if matrix_mismatch > 0 {
        bad_rows.insert(format!(
            "{matrix_mismatch} library matrices differ from the printed ones"
        ));
    }
    let detail = if bad_cells.is_empty() {
        format!("{cells} cells reproduced")
    } else {
        format!(
            "{} of {cells} cells disagree: {}",
            bad_cells.len(),
            bad_cells.join("; ")
        )
    };
    Verdict::from_deviations(bad_rows, detail)
}

// ---------------------------------------------------------------- criterion 2

/// Linear totals over a path: (i1, i2, chi-sum) as coefficients of
/// (alpha - beta) and beta.
fn totals(path: &EdgePath) -> [(i64, i64); 3] {
    let eval = |a: i64, b: i64| {
        let w = Weights::new(a, b);
        let mut t = (0, 0, 0);
        for e in &path.edges {
            let (x, y) = edge_contribution(e, &w, 0);
            t.0 += x;
            t.1 += y;
            t.2 += edge_euler(e.label, &w).unwrap();
        }
        t
    };
    let (x, y) = (eval(1, 0), eval(1, 1));
    [(x.0, y.0), (x.1, y.1), (x.2, y.2)]
}

fn criterion_2() -> Verdict {
    let mut dev = BTreeSet::new();
    let mut checked = 0;
    for w in 1..=6 {
        for u in (1..=6).chain(-7..=-2) {
            let (name, expect) = if u > 0 {
                (
                    PathName::C16,
                    [
                        (w - u, 2 * w + 1),
                        (w + u + 1, 2 * w + 1),
                        (2 * (w + 1), 2 * (2 * w + u + 2)),
                    ],
                )
            } else {
                let up = -u - 1;
                (
                    PathName::D26,
                    [(w + up - 1, -1), (-(w + up), -3), (3, 2 * w + 2 * up + 3)],
                )
            };
            let path = match path_edges(name, w, u) {
                Ok(p) => p,
                Err(e) => {
                    dev.insert(format!("{name} at ({w},{u}): {e}"));
                    continue;
                }
            };
            checked += 1;
            let t = totals(&path);
            if t != expect {
                dev.insert(format!(
                    "{name} at ({w},{u}): totals {t:?}, expected {expect:?}"
                ));
            }
            // The assembled record uses the same totals.
            let (a, b) = (7, 3);
            let d = assemble(&path, &Weights::new(a, b)).unwrap();
            let k = path.edges.len() as i64;
            let lin = |c: (i64, i64)| c.0 * (a - b) + c.1 * b;
            let chi = lin(t[2]) - (k - 1) * (a + b);
            if (d.i1, d.i2, d.chi) != (lin(t[0]), lin(t[1]), chi) {
                dev.insert(format!(
                    "{name} at ({w},{u}): assembled record disagrees with totals"
                ));
            }
        }
    }
    let detail = format!("{checked} links, c16 on s>0 and d26 on s<0");
    Verdict::from_deviations(dev, detail)
}

// ---------------------------------------------------------------- criterion 3

fn criterion_3() -> Verdict {
    let report = verify_closed_forms(&SweepSpec::default()).unwrap();
    let mut dev = BTreeSet::new();
    for m in report.unexplained().take(20) {
        dev.insert(format!("{} differs in {}", m.at, m.fields.join(",")));
    }
    let named: Vec<String> = report
        .by_family()
        .into_iter()
        .map(|(f, n, e)| {
            format!(
                "{f}: {n} points, {}",
                e.unwrap_or_else(|| "unexplained".into())
            )
        })
        .collect();
    let detail = format!(
        "{} weight choices; named errata: {}",
        report.checked,
        named.join(" | ")
    );
    Verdict::from_deviations(dev, detail)
}

// ---------------------------------------------------------------- criterion 4

/// The one documented deviation: the untabulated reflection of c25.
const KNOWN_GENUS_ZERO_EXTRA: &str = "c27 has beta=2 solutions";

fn criterion_4(found: &[GridPoint], spec: &SweepSpec) -> Verdict {
    use PathName::*;
    let mut dev = BTreeSet::new();
    let mut by_family: BTreeMap<PathName, Vec<&GridPoint>> = BTreeMap::new();
    for p in found {
        by_family.entry(p.family).or_default().push(p);
    }
    for (fam, pts) in &by_family {
        match fam {
            C2 | D2 => {
                if pts
                    .iter()
                    .any(|p| p.beta != 2 || !matches!(p.n, Some(0..=2)))
                {
                    dev.insert(format!("{fam} has a solution off beta=2, n in 0..2"));
                }
            }
            C25 | D25 | D27 => {
                if pts.iter().any(|p| p.beta != 2) {
                    dev.insert(format!("{fam} has a solution with beta != 2"));
                }
            }
            D26 => {
                let got: Vec<(i64, i64, i64, i64)> =
                    pts.iter().map(|p| (p.w, p.u, p.alpha, p.beta)).collect();
                if got != vec![(1, -2, 4, 2)] {
                    dev.insert(format!("d26 solutions {got:?}"));
                }
            }
            C27 if pts.iter().all(|p| p.beta == 2) => {
                dev.insert(KNOWN_GENUS_ZERO_EXTRA.to_string());
            }
            other => {
                dev.insert(format!("{other} has {} solutions", pts.len()));
            }
        }
    }
    // Completeness: every admissible beta = 2 choice of the listed families is found.
    let set: BTreeSet<&GridPoint> = found.iter().collect();
    for link in spec.links() {
        for fam in [C2, D2, C25, D25, D27] {
            let Ok(path) = path_edges_of(fam, &link) else {
                continue;
            };
            for alpha in 1..=spec.alpha_max {
                if Weights::new(alpha, 2).validate(&path).is_err() {
                    continue;
                }
                let ns: Vec<Option<i64>> = if path.regime == Regime::D1 {
                    (0..=2).map(Some).collect()
                } else {
                    vec![None]
                };
                for n in ns {
                    let p = GridPoint {
                        family: fam,
                        w: link.w(),
                        u: link.u(),
                        alpha,
                        beta: 2,
                        n,
                    };
                    if !set.contains(&p) {
                        dev.insert(format!("missing {p}"));
                    }
                }
            }
        }
    }
    let counts: Vec<String> = by_family
        .iter()
        .map(|(f, p)| format!("{f}:{}", p.len()))
        .collect();
    let detail = format!(
        "alpha <= {}, solutions {}",
        spec.alpha_max,
        counts.join(" ")
    );
    Verdict::from_deviations(dev, detail)
}

// ---------------------------------------------------------------- criterion 5

fn norm(p: (i64, i64)) -> (i64, i64) {
    (p.0.max(p.1), p.0.min(p.1))
}

fn criterion_5(found: &[GridPoint]) -> Verdict {
    let mut dev = BTreeSet::new();
    let mut witnessed: BTreeMap<(i64, i64), BTreeSet<(i64, i64)>> = BTreeMap::new();
    let mut exceptional_circles = None;
    for p in found {
        let path = path_edges(p.family, p.w, p.u).unwrap();
        let d = assemble(
            &path,
            &Weights::new(p.alpha, p.beta).with_n(p.n.unwrap_or(0)),
        )
        .unwrap();
        let (Some(s1), Some(s2)) = (d.slope1, d.slope2) else {
            dev.insert(format!("{p}: witness has an unreduced slope"));
            continue;
        };
        if !s1.is_integer() || !s2.is_integer() || s1.is_infinite() || s2.is_infinite() {
            dev.insert(format!("{p}: non-integral slopes {s1}, {s2}"));
            continue;
        }
        let pair = (s1.num(), s2.num());
        witnessed.entry((p.w, p.u)).or_default().insert(norm(pair));
        if (p.w, p.u, pair) == (1, -2, (-1, -6)) {
            exceptional_circles = Some((d.b1, d.b2));
        }
    }
    for link in link_grid() {
        let (w, u) = (link.w(), link.u());
        let listed = reducible_surgeries(w, u).unwrap();
        let claimed: BTreeSet<(i64, i64)> =
            listed.iter().map(|s| norm((s.gamma1, s.gamma2))).collect();
        let seen = witnessed.get(&(w, u)).cloned().unwrap_or_default();
        if claimed != seen {
            dev.insert(format!("({w},{u}): listed {claimed:?}, witnessed {seen:?}"));
        }
        for s in &listed {
            if s.exceptional != ((w, u, s.gamma1, s.gamma2) == (1, -2, -1, -6)) {
                dev.insert(format!(
                    "({w},{u}): exceptional flag on ({}, {})",
                    s.gamma1, s.gamma2
                ));
            }
        }
    }
    if exceptional_circles != Some((4, 2)) {
        dev.insert(format!(
            "(-1,-6) on L([3,-3]) has circles {exceptional_circles:?}"
        ));
    }
    let detail = format!(
        "{} links; (-1,-6) with circles {:?}",
        link_grid().len(),
        exceptional_circles
    );
    Verdict::from_deviations(dev, detail)
}

// ---------------------------------------------------------------- criterion 6

fn criterion_6() -> Verdict {
    let mut dev = BTreeSet::new();
    let mut checks = 0;
    for w in 1..=6 {
        for u in 1..=6 {
            let l1 = CurveClass::new(-2, -(2 * u + 1));
            if pairing(l1, CurveClass::slope(-w + u)) != 2 * w + 1 {
                dev.insert(format!("pairing at ({w},{u})"));
            }
            checks += 1;
        }
    }
    let expect = |w: i64,
                  u: i64,
                  g: i64,
                  kind: SurgeryKind,
                  torus: (i64, i64),
                  cable: Option<(i64, i64)>| {
        let c = match surgery_knot(w, u, g) {
            Ok(c) => c,
            Err(e) => return Some(format!("({w},{u})[{g}]: {e}")),
        };
        let Some(k) = c.knot() else {
            return Some(format!("({w},{u})[{g}]: no knot payload"));
        };
        let t_ok = k.torus_pair.is_some_and(|t| pairs_equivalent(t, torus));
        let c_ok = match cable {
            Some(x) => k.cable_pair.is_some_and(|y| pairs_equivalent(x, y)),
            None => true,
        };
        (c.kind != kind || !t_ok || !c_ok).then(|| {
            format!(
                "({w},{u})[{g}]: {:?} torus {:?} cable {:?}",
                c.kind, k.torus_pair, k.cable_pair
            )
        })
    };
    let mut record = |r: Option<String>| {
        checks += 1;
        if let Some(r) = r {
            dev.insert(r);
        }
    };
    record(expect(1, 1, 1, SurgeryKind::TorusKnotInS3, (2, -5), None));
    record(expect(1, -2, -1, SurgeryKind::Trefoil, (2, -3), None));
    for w in 2..=6 {
        let cable = (2, -2 * w * w - 2 * w - 1);
        record(expect(
            w,
            w,
            1,
            SurgeryKind::CableOfTorusKnot,
            (w, -w - 1),
            Some(cable),
        ));
    }
    for u in 1..=4 {
        let w = u + 2;
        let cable = (2, 2 * w * w - 2 * w - 1);
        record(expect(
            w,
            u,
            -1,
            SurgeryKind::CableOfTorusKnot,
            (-w, -w + 1),
            Some(cable),
        ));
    }
    Verdict::from_deviations(dev, format!("{checks} values"))
}

// ---------------------------------------------------------------- criterion 7

fn criterion_7() -> Verdict {
    let mut dev = BTreeSet::new();
    let mut checks = 0;
    for m in 1..=8 {
        let expect = all_b_invariants(m);
        if (
            expect.chi,
            expect.genus,
            expect.boundary_circles,
            expect.integral_slope,
        ) != (-2 * m + 2, m - 1, 2, true)
        {
            dev.insert(format!("all_b_invariants({m}) = {expect:?}"));
        }
        let edges = all_b_path(m).unwrap();
        if edges.len() as i64 != 2 * m {
            dev.insert(format!("all-B path for m={m} has {} edges", edges.len()));
        }
        for link in link_grid() {
            let d = assemble_edges(&link, Regime::Dinf, &edges, &Weights::new(2, 0)).unwrap();
            checks += 1;
            if one_sided_from(&d) != expect {
                dev.insert(format!(
                    "m={m} on ({},{}): {:?}",
                    link.w(),
                    link.u(),
                    one_sided_from(&d)
                ));
            }
        }
    }
    // Catalogued paths made only of B edges.
    let mut catalogued = 0;
    for link in link_grid() {
        for name in catalog_of(&link, Regime::Dinf) {
            let path = path_edges_of(name, &link).unwrap();
            if !path.edges.iter().all(|e| e.label == EdgeLabel::B) {
                continue;
            }
            let m = path.edges.len() as i64 / 2;
            let d = assemble(&path, &Weights::new(2, 0)).unwrap();
            catalogued += 1;
            if !path.edges.len().is_multiple_of(2) || one_sided_from(&d) != all_b_invariants(m) {
                dev.insert(format!(
                    "{name} on ({},{}): {:?}",
                    link.w(),
                    link.u(),
                    one_sided_from(&d)
                ));
            }
        }
    }
    Verdict::from_deviations(
        dev,
        format!("{checks} synthetic and {catalogued} catalogued all-B paths"),
    )
}

// ---------------------------------------------------------------- criterion 8

fn criterion_8() -> Verdict {
    let mut dev = BTreeSet::new();
    let mut checks = 0;
    for link in link_grid() {
        let (w, u) = (link.w(), link.u());
        let expect = if link.s_positive() { w - u } else { w - u - 2 };
        let mut seen = 0;
        for name in catalog_of(&link, Regime::Dinf) {
            let path = path_edges_of(name, &link).unwrap();
            if !path.edges.iter().all(|e| e.label == EdgeLabel::D) {
                continue;
            }
            seen += 1;
            checks += 1;
            let d = assemble(&path, &Weights::new(1, 0)).unwrap();
            if d.i1 != expect {
                dev.insert(format!(
                    "{name} on ({w},{u}): i1 = {}, expected {expect}",
                    d.i1
                ));
            }
        }
        if seen == 0 {
            dev.insert(format!("no D-only path on ({w},{u})"));
        }
        if longitude_correction(&link) != expect {
            dev.insert(format!("longitude correction on ({w},{u})"));
        }
    }
    Verdict::from_deviations(dev, format!("{checks} D-only paths"))
}

// ---------------------------------------------------------------- criterion 9

fn n_range(label: EdgeLabel, w: &Weights) -> i64 {
    match label {
        EdgeLabel::A | EdgeLabel::C => w.beta,
        EdgeLabel::D => w.alpha - w.beta,
        EdgeLabel::B => 0,
    }
}

fn run_property<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Option<String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, test)
        .err()
        .map(|e| format!("{name}: {e}"))
}

fn g_word() -> impl Strategy<Value = GMatrix> {
    proptest::collection::vec(0usize..4, 0..10).prop_map(|word| {
        let gens = [
            GMatrix::new(1, 1, 0, 1).unwrap(),
            GMatrix::new(1, -1, 0, 1).unwrap(),
            GMatrix::new(1, 0, 2, 1).unwrap(),
            GMatrix::new(1, 0, -2, 1).unwrap(),
        ];
        word.iter()
            .fold(GMatrix::IDENTITY, |m, &i| m.compose(&gens[i]).unwrap())
    })
}

fn criterion_9(found: &[GridPoint]) -> Verdict {
    let mut dev = BTreeSet::new();
    let paths = SweepSpec::default().paths();
    let off_d1: Vec<EdgePath> = paths
        .iter()
        .filter(|p| p.regime != Regime::D1)
        .cloned()
        .collect();
    let weights = (1i64..=12, 0i64..=12).prop_filter("alpha >= beta", |(a, b)| a >= b);

    if let Some(e) = run_property(
        "n-independence off t=1",
        512,
        (
            0..off_d1.len(),
            weights.clone(),
            proptest::collection::vec(0u32..1000, 64),
        ),
        |(i, (a, b), seeds)| {
            let p = &off_d1[i];
            let base = Weights::new(a, b);
            prop_assume!(base.validate(p).is_ok());
            let mut w = base.clone();
            for (k, e) in p.edges.iter().enumerate() {
                let n = seeds[k % seeds.len()] as i64 % (n_range(e.label, &base) + 1);
                w = w.with_edge_n(k, n);
            }
            prop_assert!(w.validate(p).is_ok());
            prop_assert_eq!(assemble(p, &w).unwrap(), assemble(p, &base).unwrap());
            Ok(())
        },
    ) {
        dev.insert(e);
    }

    if let Some(e) = run_property(
        "swap involution",
        512,
        (0..paths.len(), weights, 0i64..=12),
        |(i, (a, b), n)| {
            let p = &paths[i];
            let n = if p.regime == Regime::D1 {
                n % (b + 1)
            } else {
                0
            };
            let w = Weights::new(a, b).with_n(n);
            prop_assume!(w.validate(p).is_ok());
            let d: SurfaceData = assemble(p, &w).unwrap();
            prop_assert_eq!(swap_components(&swap_components(&d)), d);
            Ok(())
        },
    ) {
        dev.insert(e);
    }

    if let Some(e) = run_property(
        "group action",
        1024,
        (g_word(), g_word(), -60i64..60, 1i64..60),
        |(x, y, n, d)| {
            let v = Rational::new(n, d).unwrap();
            let xy = x.compose(&y).unwrap();
            prop_assert_eq!(xy.apply(v).unwrap(), x.apply(y.apply(v).unwrap()).unwrap());
            for m in [x, y, xy] {
                prop_assert_eq!(m.a * m.d - m.b * m.c, 1);
                prop_assert_eq!(m.c.rem_euclid(2), 0);
            }
            Ok(())
        },
    ) {
        dev.insert(e);
    }

    let link_strategy = (1i64..12, prop_oneof![1i64..12, -12i64..-1]);
    if let Some(e) = run_property("edge matrices in G", 256, link_strategy, |(w, u)| {
        let link = LinkParams::from_wu(w, u).unwrap();
        for (seq, max) in [
            (Sequence::First, w + 1),
            (Sequence::Second, link.second_len()),
        ] {
            for idx in 1..=max {
                for k in 0..4 {
                    let m = edge_matrix(&link, seq, idx, k).unwrap();
                    prop_assert_eq!(m.a * m.d - m.b * m.c, 1);
                    prop_assert_eq!(m.c.rem_euclid(2), 0);
                }
            }
        }
        Ok(())
    }) {
        dev.insert(e);
    }

    // The planar Euler bound on every genus-zero witness of the sweep.
    let mut witnesses = 0;
    for p in found {
        let path = path_edges(p.family, p.w, p.u).unwrap();
        let d = assemble(
            &path,
            &Weights::new(p.alpha, p.beta).with_n(p.n.unwrap_or(0)),
        )
        .unwrap();
        witnesses += 1;
        if !planar_chi_bound_holds(&d) || d.chi < -(d.alpha + d.beta) + 2 {
            dev.insert(format!("planar bound fails at {p}"));
        }
    }
    Verdict::from_deviations(
        dev,
        format!("4 properties, planar bound on {witnesses} witnesses"),
    )
}

// ---------------------------------------------------------------- driver

fn main() -> ExitCode {
    let start = Instant::now();
    let spec = SweepSpec::default();
    let genus_zero = verify_genus_zero(&spec).expect("default sweep is valid");
    let found = genus_zero.found.clone();

    let known: BTreeMap<u8, BTreeSet<String>> = BTreeMap::from([
        (
            1,
            KNOWN_TABLE_CONFLICTS
                .iter()
                .map(|s| s.to_string())
                .collect(),
        ),
        (4, BTreeSet::from([KNOWN_GENUS_ZERO_EXTRA.to_string()])),
    ]);
    let titles = [
        "edge contributions reproduce the printed fixtures",
        "c16 and d26 path totals",
        "closed forms agree with assembly up to named errata",
        "genus-zero sets by brute force",
        "reducible slopes equal genus-zero witness slopes",
        "surgery arithmetic",
        "all-B one-sided surfaces",
        "longitude correction from D-only paths",
        "property suite",
    ];
    let mut unexpected = 0;
    for (idx, title) in titles.iter().enumerate() {
        let n = idx as u8 + 1;
        let t = Instant::now();
        let v = match n {
            1 => criterion_1(),
            2 => criterion_2(),
            3 => criterion_3(),
            4 => criterion_4(&found, &spec),
            5 => criterion_5(&found),
            6 => criterion_6(),
            7 => criterion_7(),
            8 => criterion_8(),
            _ => criterion_9(&found),
        };
        let status = if v.pass { "PASS" } else { "FAIL" };
        let expected = match known.get(&n) {
            Some(k) => !v.pass && &v.deviations == k,
            None => v.pass,
        };
        let tag = match (v.pass, expected) {
            (false, true) => " [documented source conflict]",
            (_, false) => " [UNEXPECTED]",
            _ => "",
        };
        println!(
            "criterion {n}: {status}{tag} {title} ({}; {:.2?})",
            v.detail,
            t.elapsed()
        );
        if !v.pass {
            for d in v.deviations.iter().take(12) {
                println!("    {d}");
            }
        }
        if !expected {
            unexpected += 1;
        }
    }
    println!("acceptance finished in {:.2?}", start.elapsed());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria deviate from their expected outcome");
        ExitCode::FAILURE
    }
}
