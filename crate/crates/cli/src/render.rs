use std::io::{self, Write};

use twobridge::classify::{KnotPayload, Payload, SatelliteVerdict};
use twobridge::farey::Rational;
use twobridge::invariants::SurfaceData;

use crate::record::*;
use crate::Format;

/// Writes a record in the chosen format.
pub fn write(out: &mut impl Write, rec: &OutputRecord, format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rec)?;
            writeln!(out)
        }
        Format::Table => table(out, rec),
        Format::Csv => csv_rows(out, rec),
    }
}

fn pair(p: (i64, i64)) -> String {
    format!("({}, {})", p.0, p.1)
}

fn slope(s: Option<Rational>) -> String {
    s.map_or_else(|| "-".to_string(), |r| r.to_string())
}

fn link_line(out: &mut impl Write, i: &Input) -> io::Result<()> {
    if let (Some(r), Some(s), Some(w), Some(u)) = (i.r, i.s, i.w, i.u) {
        writeln!(out, "L([{r},{s}])  (w,u) = ({w},{u})")?;
    }
    Ok(())
}

fn surface_rows(d: &SurfaceData) -> Vec<(&'static str, String)> {
    vec![
        ("alpha", d.alpha.to_string()),
        ("beta", d.beta.to_string()),
        ("i1", d.i1.to_string()),
        ("i2", d.i2.to_string()),
        ("raw_slope1", pair(d.raw_slope1)),
        ("raw_slope2", pair(d.raw_slope2)),
        ("slope_pair1", pair(d.slope_pair1)),
        ("slope_pair2", pair(d.slope_pair2)),
        ("slope1", slope(d.slope1)),
        ("slope2", slope(d.slope2)),
        ("chi", d.chi.to_string()),
        ("b1", d.b1.to_string()),
        ("b2", d.b2.to_string()),
        ("gprime", d.gprime.to_string()),
        ("meridional", d.meridional.to_string()),
    ]
}

fn knot_text(k: &KnotPayload) -> String {
    let mut parts = vec![format!("lens ({}, 1)", k.lens)];
    if let Some(p) = &k.knot {
        parts.push(format!(
            "cable of C {}, of C' {}",
            pair(p.on_c),
            pair(p.on_c_prime)
        ));
    }
    if let Some(p) = &k.companion {
        parts.push(format!(
            "companion: cable of C {}, of C' {}",
            pair(p.on_c),
            pair(p.on_c_prime)
        ));
    }
    if let Some(t) = k.torus_pair {
        parts.push(format!("torus {}", pair(t)));
    }
    match (k.cable_pair, &k.companion) {
        (Some(c), _) => parts.push(format!("cable {}", pair(c))),
        (None, Some(_)) => parts.push("cable (2, k), k undetermined".into()),
        _ => {}
    }
    if k.mirror {
        parts.push("mirror".into());
    }
    parts.join("; ")
}

fn satellite_text(s: &SatelliteVerdict) -> String {
    match s {
        SatelliteVerdict::Satellite { w, u, mirror } => {
            format!(
                "satellite (w,u) = ({w},{u}){}",
                if *mirror { ", mirror" } else { "" }
            )
        }
        SatelliteVerdict::Candidate { w, v, u } => {
            format!("candidate [2w,v,2u] with (w,v,u) = ({w},{v},{u})")
        }
        SatelliteVerdict::NotSatellite => "not a satellite".into(),
    }
}

fn table(out: &mut impl Write, rec: &OutputRecord) -> io::Result<()> {
    match &rec.result {
        CommandResult::Paths(p) => {
            link_line(out, &rec.input)?;
            for cat in &p.regimes {
                writeln!(out, "{}", cat.regime)?;
                for row in &cat.paths {
                    let status = if row.minimal { "minimal" } else { "excluded" };
                    writeln!(
                        out,
                        "  {:<4} {:<8} {:>3} edges  {}",
                        row.name.as_str(),
                        status,
                        row.edges,
                        row.labels
                    )?;
                }
            }
        }
        CommandResult::Invariants(r) => {
            link_line(out, &rec.input)?;
            if let Some(f) = rec.input.family {
                writeln!(out, "family {f} on {}: {}", r.regime, r.labels)?;
            }
            if r.swapped {
                writeln!(out, "components exchanged")?;
            }
            for (k, v) in surface_rows(&r.surface) {
                writeln!(out, "  {k:<12} {v}")?;
            }
            if let Some(c) = &r.closed_form {
                if c.differing_fields.is_empty() {
                    writeln!(out, "closed form agrees")?;
                } else {
                    writeln!(
                        out,
                        "closed form differs in {}",
                        c.differing_fields.join(", ")
                    )?;
                    if let Some(e) = &c.erratum {
                        writeln!(out, "  known erratum, corrected: {e}")?;
                    }
                }
            }
        }
        CommandResult::Classify(c) => {
            link_line(out, &rec.input)?;
            writeln!(out, "reducible slope pairs:")?;
            for s in &c.reducible {
                writeln!(
                    out,
                    "  ({}, {}){}",
                    s.gamma1,
                    s.gamma2,
                    if s.exceptional { "  exceptional" } else { "" }
                )?;
            }
            if let Some(s) = &c.surgery {
                let gs: Vec<String> = s.gamma.iter().map(|g| g.to_string()).collect();
                write!(out, "surgery [{}]: {:?}", gs.join(", "), s.kind)?;
                match &s.payload {
                    Some(Payload::Knot(k)) => writeln!(out, "  {}", knot_text(k))?,
                    Some(Payload::Reducible { slopes }) => {
                        writeln!(out, "  pair ({}, {})", slopes.gamma1, slopes.gamma2)?
                    }
                    None => writeln!(out)?,
                }
            }
            if let Some(s) = &c.satellite {
                writeln!(out, "satellite check: {}", satellite_text(s))?;
            }
            for t in &c.torus_list {
                writeln!(
                    out,
                    "torus-knot surgery: [{},{}] gamma {} gives {}{}",
                    t.expansion[0],
                    t.expansion[1],
                    t.gamma,
                    pair(t.torus_pair),
                    if t.mirror { " (mirror)" } else { "" }
                )?;
            }
            for n in &c.notes {
                writeln!(out, "note: {n}")?;
            }
        }
        CommandResult::Verify(v) => {
            write!(out, "{}", v.report)?;
            for n in &v.notes {
                writeln!(out, "note: {n}")?;
            }
        }
    }
    Ok(())
}

fn csv_rows(out: &mut impl Write, rec: &OutputRecord) -> io::Result<()> {
    let mut wr = csv::Writer::from_writer(out);
    match &rec.result {
        CommandResult::Paths(p) => {
            wr.write_record(["regime", "name", "minimal", "edges", "labels", "note"])?;
            for cat in &p.regimes {
                for row in &cat.paths {
                    wr.write_record([
                        cat.regime.to_string(),
                        row.name.to_string(),
                        row.minimal.to_string(),
                        row.edges.to_string(),
                        row.labels.clone(),
                        row.note.clone().unwrap_or_default(),
                    ])?;
                }
            }
        }
        CommandResult::Invariants(r) => {
            let rows = surface_rows(&r.surface);
            let mut head = vec!["family", "regime", "swapped"];
            head.extend(rows.iter().map(|x| x.0));
            wr.write_record(&head)?;
            let mut vals = vec![
                rec.input.family.map(|f| f.to_string()).unwrap_or_default(),
                r.regime.to_string(),
                r.swapped.to_string(),
            ];
            vals.extend(rows.into_iter().map(|x| x.1));
            wr.write_record(&vals)?;
        }
        CommandResult::Classify(c) => {
            wr.write_record(["section", "gamma1", "gamma2", "kind", "detail"])?;
            for s in &c.reducible {
                wr.write_record([
                    "reducible".to_string(),
                    s.gamma1.to_string(),
                    s.gamma2.to_string(),
                    "Reducible".into(),
                    if s.exceptional {
                        "exceptional".into()
                    } else {
                        String::new()
                    },
                ])?;
            }
            if let Some(s) = &c.surgery {
                let detail = match &s.payload {
                    Some(Payload::Knot(k)) => knot_text(k),
                    Some(Payload::Reducible { .. }) => "reducible pair".into(),
                    None => String::new(),
                };
                wr.write_record([
                    "surgery".to_string(),
                    s.gamma.first().map(|g| g.to_string()).unwrap_or_default(),
                    s.gamma.get(1).map(|g| g.to_string()).unwrap_or_default(),
                    format!("{:?}", s.kind),
                    detail,
                ])?;
            }
            if let Some(s) = &c.satellite {
                wr.write_record([
                    "satellite".to_string(),
                    rec.input.gamma.clone().unwrap_or_default(),
                    String::new(),
                    String::new(),
                    satellite_text(s),
                ])?;
            }
            for t in &c.torus_list {
                wr.write_record([
                    "torus_list".to_string(),
                    t.gamma.to_string(),
                    String::new(),
                    "TorusKnotInS3".into(),
                    pair(t.torus_pair),
                ])?;
            }
        }
        CommandResult::Verify(v) => {
            wr.write_record(["check", "status", "checked", "mismatches"])?;
            let r = &v.report;
            let status = |ok: bool| if ok { "ok" } else { "mismatch" }.to_string();
            wr.write_record([
                "genus_zero".to_string(),
                status(r.genus_zero.ok()),
                r.genus_zero.checked.to_string(),
                (r.genus_zero.missing.len() + r.genus_zero.unexpected.len()).to_string(),
            ])?;
            wr.write_record([
                "closed_forms".to_string(),
                status(r.closed_forms.ok()),
                r.closed_forms.checked.to_string(),
                r.closed_forms.unexplained().count().to_string(),
            ])?;
            wr.write_record([
                "symmetries".to_string(),
                status(r.symmetries.ok()),
                r.symmetries.checked.to_string(),
                r.symmetries.mismatches.len().to_string(),
            ])?;
        }
    }
    wr.flush()
}
