//! Brute-force sweeps that recheck the closed forms and the genus-zero
//! classification through per-edge assembly only.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{self, planar_chi_bound_holds};
use crate::farey::{LinkParams, Rational};
use crate::invariants::{
    assemble, closed_form, erratum_for, swap_components, HalfInt, SurfaceData, Transcription,
    Weights,
};
use crate::paths::{catalog_of, path_edges_of, EdgePath, PathError, PathName, Regime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("alpha bound {0} is below 8")]
    AlphaMax(i64),
    #[error("u range {0}..={1} meets -1 or 0")]
    URange(i64, i64),
    #[error("w range {0}..={1} is empty or starts below 1")]
    WRange(i64, i64),
}

/// Grid of links, weights and families to sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub w_range: (i64, i64),
    pub u_ranges: Vec<(i64, i64)>,
    /// Largest alpha in genus-zero sweeps.
    pub alpha_max: i64,
    /// Largest alpha in closed-form and symmetry sweeps.
    pub closed_form_alpha_max: i64,
    /// Empty means every family.
    pub families: Vec<PathName>,
    /// Empty means every regime.
    pub regimes: Vec<Regime>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            w_range: (1, 6),
            u_ranges: vec![(1, 6), (-7, -2)],
            alpha_max: 64,
            closed_form_alpha_max: 24,
            families: Vec::new(),
            regimes: Vec::new(),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), OracleError> {
        if self.alpha_max < 8 || self.closed_form_alpha_max < 8 {
            return Err(OracleError::AlphaMax(
                self.alpha_max.min(self.closed_form_alpha_max),
            ));
        }
        let (w0, w1) = self.w_range;
        if w0 < 1 || w1 < w0 {
            return Err(OracleError::WRange(w0, w1));
        }
        for &(a, b) in &self.u_ranges {
            if a <= 0 && b >= -1 {
                return Err(OracleError::URange(a, b));
            }
        }
        Ok(())
    }

    pub fn links(&self) -> Vec<LinkParams> {
        let us: BTreeSet<i64> = self.u_ranges.iter().flat_map(|&(a, b)| a..=b).collect();
        let mut out = Vec::new();
        for w in self.w_range.0..=self.w_range.1 {
            for &u in &us {
                if let Ok(l) = LinkParams::from_wu(w, u) {
                    out.push(l);
                }
            }
        }
        out
    }

    fn wants(&self, name: PathName) -> bool {
        (self.families.is_empty() || self.families.contains(&name))
            && (self.regimes.is_empty() || self.regimes.contains(&name.regime()))
    }

    /// Minimal cataloged paths in the grid, in a fixed order.
    pub fn paths(&self) -> Vec<EdgePath> {
        self.links()
            .par_iter()
            .flat_map_iter(|link| {
                [Regime::D1, Regime::Dinf, Regime::Dt]
                    .into_iter()
                    .flat_map(move |r| catalog_of(link, r))
                    .filter(|&n| self.wants(n))
                    .filter_map(move |n| path_edges_of(n, link).ok())
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

/// Weight choices for a path: (alpha, beta) up to the bound with beta > 0
/// unless `meridional`, and n over its range on D1 paths.
fn weight_grid(path: &EdgePath, alpha_max: i64, meridional: bool) -> Vec<(Weights, Option<i64>)> {
    let mut out = Vec::new();
    for alpha in 1..=alpha_max {
        let lo = if meridional { 0 } else { 1 };
        for beta in lo..=alpha {
            let base = Weights::new(alpha, beta);
            if base.validate(path).is_err() {
                continue;
            }
            if path.regime == Regime::D1 {
                for n in 0..=beta {
                    out.push((base.clone().with_n(n), Some(n)));
                }
            } else {
                out.push((base, None));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPoint {
    pub family: PathName,
    pub w: i64,
    pub u: i64,
    pub alpha: i64,
    pub beta: i64,
    pub n: Option<i64>,
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (w,u)=({},{}) (alpha,beta)=({},{})",
            self.family, self.w, self.u, self.alpha, self.beta
        )?;
        if let Some(n) = self.n {
            write!(f, " n={n}")?;
        }
        Ok(())
    }
}

fn point(path: &EdgePath, w: &Weights, n: Option<i64>) -> GridPoint {
    GridPoint {
        family: path.name,
        w: path.link.w(),
        u: path.link.u(),
        alpha: w.alpha,
        beta: w.beta,
        n,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusZeroReport {
    pub spec: SweepSpec,
    pub checked: usize,
    /// Every grid point with g' = 0, found by assembly.
    pub found: Vec<GridPoint>,
    /// Returned by the classifier but not found.
    pub missing: Vec<GridPoint>,
    /// Found but not returned by the classifier.
    pub unexpected: Vec<GridPoint>,
    /// Witnesses with chi < -(alpha + beta) + 2.
    pub chi_bound_violations: Vec<GridPoint>,
}

impl GenusZeroReport {
    pub fn ok(&self) -> bool {
        self.missing.is_empty()
            && self.unexpected.is_empty()
            && self.chi_bound_violations.is_empty()
    }
}

/// Finds every non-meridional genus-zero grid point and compares the set with
/// the classifier's.
pub fn verify_genus_zero(spec: &SweepSpec) -> Result<GenusZeroReport, OracleError> {
    spec.validate()?;
    let paths = spec.paths();
    let per_path: Vec<(usize, Vec<GridPoint>, Vec<GridPoint>)> = paths
        .par_iter()
        .map(|p| {
            let grid = weight_grid(p, spec.alpha_max, false);
            let mut zero = Vec::new();
            let mut bad = Vec::new();
            for (w, n) in &grid {
                let d = assemble(p, w).expect("grid weights are valid");
                if d.gprime.is_zero() {
                    zero.push(point(p, w, *n));
                }
                if !planar_chi_bound_holds(&d) {
                    bad.push(point(p, w, *n));
                }
            }
            (grid.len(), zero, bad)
        })
        .collect();
    let checked = per_path.iter().map(|x| x.0).sum();
    let found: BTreeSet<GridPoint> = per_path.iter().flat_map(|x| x.1.iter().cloned()).collect();
    let chi_bound_violations: Vec<GridPoint> =
        per_path.iter().flat_map(|x| x.2.iter().cloned()).collect();
    let mut expected = BTreeSet::new();
    for p in &paths {
        let sols = classify::genus_zero_solutions(p.name, p.link.w(), p.link.u(), spec.alpha_max)
            .expect("spec bounds are valid");
        for s in sols {
            expected.insert(GridPoint {
                family: s.family,
                w: s.w,
                u: s.u,
                alpha: s.alpha,
                beta: s.beta,
                n: s.n,
            });
        }
    }
    Ok(GenusZeroReport {
        spec: spec.clone(),
        checked,
        missing: expected.difference(&found).cloned().collect(),
        unexpected: found.difference(&expected).cloned().collect(),
        found: found.into_iter().collect(),
        chi_bound_violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormMismatch {
    pub at: GridPoint,
    pub fields: Vec<String>,
    /// Set when a registered erratum covers the mismatch and its corrected
    /// formula agrees with assembly.
    pub erratum: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormReport {
    pub spec: SweepSpec,
    pub checked: usize,
    pub mismatches: Vec<ClosedFormMismatch>,
}

impl ClosedFormReport {
    pub fn unexplained(&self) -> impl Iterator<Item = &ClosedFormMismatch> {
        self.mismatches.iter().filter(|m| m.erratum.is_none())
    }

    /// Families with a mismatch, each with its erratum name if all of its
    /// mismatches are explained.
    pub fn by_family(&self) -> Vec<(PathName, usize, Option<String>)> {
        let mut out: Vec<(PathName, usize, Option<String>)> = Vec::new();
        for m in &self.mismatches {
            match out.iter_mut().find(|x| x.0 == m.at.family) {
                Some(x) => {
                    x.1 += 1;
                    if x.2 != m.erratum {
                        x.2 = None;
                    }
                }
                None => out.push((m.at.family, 1, m.erratum.clone())),
            }
        }
        out
    }

    pub fn ok(&self) -> bool {
        self.unexplained().next().is_none()
    }
}

/// Compares assembly with the printed summary-table formulas over the grid.
pub fn verify_closed_forms(spec: &SweepSpec) -> Result<ClosedFormReport, OracleError> {
    spec.validate()?;
    let paths: Vec<EdgePath> = spec
        .paths()
        .into_iter()
        .filter(|p| p.name.tabulated())
        .collect();
    let rows: Vec<(usize, Vec<ClosedFormMismatch>)> = paths
        .par_iter()
        .map(|p| {
            let grid = weight_grid(p, spec.closed_form_alpha_max, true);
            let mut bad = Vec::new();
            for (w, n) in &grid {
                let d = assemble(p, w).expect("grid weights are valid");
                let nn = n.unwrap_or(0);
                let c = closed_form(p.name, &p.link, w.alpha, w.beta, nn, Transcription::Printed)
                    .expect("tabulated family");
                let fields = d.differing_fields(&c);
                if fields.is_empty() {
                    continue;
                }
                let erratum = erratum_for(p.name).and_then(|e| {
                    let covered = fields.iter().all(|f| e.fields.contains(f));
                    let fixed = closed_form(
                        p.name,
                        &p.link,
                        w.alpha,
                        w.beta,
                        nn,
                        Transcription::Corrected,
                    )
                    .expect("tabulated family");
                    (covered && fixed == d).then(|| format!("{}: {}", e.family, e.corrected))
                });
                bad.push(ClosedFormMismatch {
                    at: point(p, w, *n),
                    fields: fields.iter().map(|s| s.to_string()).collect(),
                    erratum,
                });
            }
            (grid.len(), bad)
        })
        .collect();
    let mut mismatches: Vec<ClosedFormMismatch> = rows.iter().flat_map(|r| r.1.clone()).collect();
    mismatches.sort_by(|a, b| a.at.cmp(&b.at));
    Ok(ClosedFormReport {
        spec: spec.clone(),
        checked: rows.iter().map(|r| r.0).sum(),
        mismatches,
    })
}

/// The parts of a record that survive a change of link diagram: reduced
/// slopes, circle counts, chi and g'.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceShape {
    pub slope1: Option<Rational>,
    pub slope2: Option<Rational>,
    pub chi: i64,
    pub b1: i64,
    pub b2: i64,
    pub gprime: HalfInt,
}

impl SurfaceShape {
    pub fn of(d: &SurfaceData) -> Self {
        SurfaceShape {
            slope1: d.slope1,
            slope2: d.slope2,
            chi: d.chi,
            b1: d.b1,
            b2: d.b2,
            gprime: d.gprime,
        }
    }

    /// The same surface in the mirror-image link: slopes change sign.
    pub fn mirrored(self) -> Self {
        let neg = |s: Option<Rational>| s.map(|r| -r);
        SurfaceShape {
            slope1: neg(self.slope1),
            slope2: neg(self.slope2),
            ..self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryMismatch {
    pub at: GridPoint,
    pub source: PathName,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub spec: SweepSpec,
    pub checked: usize,
    pub mismatches: Vec<SymmetryMismatch>,
    pub involution_failures: Vec<GridPoint>,
    pub chi_bound_violations: Vec<GridPoint>,
}

impl SymmetryReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
            && self.involution_failures.is_empty()
            && self.chi_bound_violations.is_empty()
    }
}

/// Checks that each rotated family for (r, s) carries the data of its source
/// family for the rotated link (mirrored when s > 0), that component swap is
/// an involution, and the planar chi bound on every genus-zero record.
pub fn verify_symmetries(spec: &SweepSpec) -> Result<SymmetryReport, OracleError> {
    spec.validate()?;
    let spec_all = SweepSpec {
        families: Vec::new(),
        ..spec.clone()
    };
    let items: Vec<(LinkParams, PathName)> = spec_all
        .links()
        .into_iter()
        .flat_map(|l| {
            [Regime::D1, Regime::Dinf, Regime::Dt]
                .into_iter()
                .flat_map(move |r| crate::paths::all_names(&l, r))
                .map(move |n| (l, n))
        })
        .filter(|(_, n)| spec.wants(*n))
        .collect();
    let rows: Vec<SymmetryRow> = items
        .par_iter()
        .map(|(link, name)| symmetry_row(spec, link, *name))
        .collect();
    let mut report = SymmetryReport {
        spec: spec.clone(),
        checked: 0,
        mismatches: Vec::new(),
        involution_failures: Vec::new(),
        chi_bound_violations: Vec::new(),
    };
    for (n, m, inv, chi) in rows {
        report.checked += n;
        report.mismatches.extend(m);
        report.involution_failures.extend(inv);
        report.chi_bound_violations.extend(chi);
    }
    report.mismatches.sort_by(|a, b| a.at.cmp(&b.at));
    report.involution_failures.sort();
    report.chi_bound_violations.sort();
    Ok(report)
}

/// (checked, mismatches, involution failures, chi-bound violations)
type SymmetryRow = (usize, Vec<SymmetryMismatch>, Vec<GridPoint>, Vec<GridPoint>);

fn symmetry_row(spec: &SweepSpec, link: &LinkParams, name: PathName) -> SymmetryRow {
    let mut mismatches = Vec::new();
    let mut involution = Vec::new();
    let mut chi_bound = Vec::new();
    let here = path_edges_of(name, link);
    let source = name
        .rotation_source()
        .map(|src| (src, path_edges_of(src, &link.rotated())));
    let at0 = GridPoint {
        family: name,
        w: link.w(),
        u: link.u(),
        alpha: 0,
        beta: 0,
        n: None,
    };
    if let Some((src, there)) = &source {
        let minimal = |r: &Result<EdgePath, PathError>| r.is_ok();
        if minimal(&here) != minimal(there) {
            mismatches.push(SymmetryMismatch {
                at: at0.clone(),
                source: *src,
                reason: format!(
                    "minimal here: {}, source minimal for the rotated link: {}",
                    minimal(&here),
                    minimal(there)
                ),
            });
        }
    }
    let Ok(path) = here else {
        return (0, mismatches, involution, chi_bound);
    };
    let grid = weight_grid(&path, spec.closed_form_alpha_max, true);
    for (w, n) in &grid {
        let d = assemble(&path, w).expect("grid weights are valid");
        let at = point(&path, w, *n);
        if swap_components(&swap_components(&d)) != d {
            involution.push(at.clone());
        }
        if !planar_chi_bound_holds(&d) {
            chi_bound.push(at.clone());
        }
        let Some((src, Ok(other))) = &source else {
            continue;
        };
        let Ok(e) = assemble(other, w) else {
            mismatches.push(SymmetryMismatch {
                at,
                source: *src,
                reason: "weights invalid on the source path".into(),
            });
            continue;
        };
        let want = if link.s_positive() {
            SurfaceShape::of(&e).mirrored()
        } else {
            SurfaceShape::of(&e)
        };
        if SurfaceShape::of(&d) != want {
            mismatches.push(SymmetryMismatch {
                at,
                source: *src,
                reason: format!("{:?} vs {:?}", SurfaceShape::of(&d), want),
            });
        }
    }
    (grid.len(), mismatches, involution, chi_bound)
}

/// All three sweeps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullReport {
    pub genus_zero: GenusZeroReport,
    pub closed_forms: ClosedFormReport,
    pub symmetries: SymmetryReport,
}

impl FullReport {
    pub fn ok(&self) -> bool {
        self.genus_zero.ok() && self.closed_forms.ok() && self.symmetries.ok()
    }
}

pub fn verify_all(spec: &SweepSpec) -> Result<FullReport, OracleError> {
    Ok(FullReport {
        genus_zero: verify_genus_zero(spec)?,
        closed_forms: verify_closed_forms(spec)?,
        symmetries: verify_symmetries(spec)?,
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

impl fmt::Display for GenusZeroReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "genus zero: {} ({} weight choices, {} with g' = 0)",
            verdict(self.ok()),
            self.checked,
            self.found.len()
        )?;
        let mut fams: Vec<(PathName, usize)> = Vec::new();
        for p in &self.found {
            match fams.iter_mut().find(|x| x.0 == p.family) {
                Some(x) => x.1 += 1,
                None => fams.push((p.family, 1)),
            }
        }
        for (fam, k) in fams {
            writeln!(f, "  {fam}: {k}")?;
        }
        if self.found.len() <= 8 {
            for p in &self.found {
                writeln!(f, "  solution {p}")?;
            }
        }
        for p in &self.missing {
            writeln!(f, "  missing {p}")?;
        }
        for p in &self.unexpected {
            writeln!(f, "  unexpected {p}")?;
        }
        for p in &self.chi_bound_violations {
            writeln!(f, "  chi bound fails {p}")?;
        }
        Ok(())
    }
}

impl fmt::Display for ClosedFormReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "closed forms: {} ({} weight choices, {} mismatches)",
            verdict(self.ok()),
            self.checked,
            self.mismatches.len()
        )?;
        for (fam, k, e) in self.by_family() {
            match e {
                Some(e) => writeln!(f, "  {fam}: {k} mismatches, erratum {e}")?,
                None => writeln!(f, "  {fam}: {k} mismatches, unexplained")?,
            }
        }
        for m in self.unexplained().take(20) {
            writeln!(f, "  {} differs in {}", m.at, m.fields.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for SymmetryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "symmetries: {} ({} weight choices)",
            verdict(self.ok()),
            self.checked
        )?;
        for m in self.mismatches.iter().take(20) {
            writeln!(f, "  {} vs {}: {}", m.at, m.source, m.reason)?;
        }
        for p in self.involution_failures.iter().take(20) {
            writeln!(f, "  swap not an involution at {p}")?;
        }
        for p in self.chi_bound_violations.iter().take(20) {
            writeln!(f, "  chi bound fails {p}")?;
        }
        Ok(())
    }
}

impl fmt::Display for FullReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}",
            self.genus_zero, self.closed_forms, self.symmetries
        )
    }
}
