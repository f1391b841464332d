//! `twobridge`: catalogs, surface invariants, surgery classification and
//! verification sweeps for two-bridge links L([r, s]).

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;
use twobridge::classify::{
    classify_pair, reducible_surgeries, satellite_candidates, surgery_knot, torus_knot_surgeries,
};
use twobridge::farey::{LinkParams, Rational};
use twobridge::invariants::{
    assemble, closed_form, erratum_for, swap_components, Transcription, Weights,
};
use twobridge::oracle::{verify_all, SweepSpec};
use twobridge::paths::{all_names, is_excluded, path_edges_of, trace_path, PathName, Regime};

use twobridge_cli::record::*;
use twobridge_cli::{render, Format};

#[derive(Parser, Debug)]
#[command(
    name = "twobridge",
    version,
    about = "Essential surfaces and exceptional surgeries of two-bridge links L([r,s])"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct LinkArgs {
    /// First odd entry r = 2w+1 (with --s).
    #[arg(long, allow_negative_numbers = true)]
    r: Option<i64>,
    /// Second odd entry s = 2u+1 (with --r).
    #[arg(long, allow_negative_numbers = true)]
    s: Option<i64>,
    /// w >= 1 (with --u), instead of --r.
    #[arg(long, allow_negative_numbers = true)]
    w: Option<i64>,
    /// u >= 1 or u <= -2 (with --w), instead of --s.
    #[arg(long, allow_negative_numbers = true)]
    u: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the named minimal edge-paths of each diagram.
    Paths {
        #[command(flatten)]
        link: LinkArgs,
    },
    /// Invariants of the surface carried by one path with given weights.
    Invariants {
        #[command(flatten)]
        link: LinkArgs,
        /// Path name, e.g. c16 or d26.
        #[arg(long)]
        family: PathName,
        #[arg(long)]
        alpha: Option<i64>,
        #[arg(long)]
        beta: Option<i64>,
        /// Branching number at every edge.
        #[arg(long, default_value_t = 0)]
        n: i64,
        /// Report with the components exchanged (the 0 <= t < 1 surface).
        #[arg(long)]
        swap: bool,
    },
    /// Reducible surgeries, and the knot left by a single surgery.
    Classify {
        #[command(flatten)]
        link: LinkArgs,
        /// Slope on the second component (integer or p/q).
        #[arg(long, allow_negative_numbers = true)]
        gamma: Option<String>,
        /// Slope on the first component, for a two-slope surgery.
        #[arg(long, allow_negative_numbers = true, requires = "gamma")]
        gamma2: Option<i64>,
    },
    /// Brute-force sweeps against the closed forms and classification.
    Verify {
        /// Largest alpha in the genus-zero sweep.
        #[arg(long, default_value_t = 64)]
        alpha_max: i64,
        /// Largest alpha in the closed-form and symmetry sweeps.
        #[arg(long, default_value_t = 24)]
        closed_form_alpha_max: i64,
        /// Comma-separated path names; all when omitted.
        #[arg(long, value_delimiter = ',')]
        families: Vec<PathName>,
        #[arg(long, default_value_t = 6)]
        w_max: i64,
        #[arg(long, default_value_t = 6)]
        u_max: i64,
        #[arg(long, default_value_t = -7, allow_negative_numbers = true)]
        u_min: i64,
        /// Count closed-form mismatches covered by a registered erratum as failures.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("verification found mismatches")]
    Mismatch,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Mismatch => 3,
            CliError::Io(_) => 1,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn resolve_link(a: &LinkArgs) -> Result<LinkParams, CliError> {
    match (a.r, a.s, a.w, a.u) {
        (Some(r), Some(s), None, None) => LinkParams::from_rs(r, s).map_err(domain),
        (None, None, Some(w), Some(u)) => LinkParams::from_wu(w, u).map_err(domain),
        _ => Err(CliError::Usage(
            "give either --r and --s, or --w and --u".into(),
        )),
    }
}

fn link_input(l: &LinkParams) -> Input {
    Input {
        r: Some(l.r()),
        s: Some(l.s()),
        w: Some(l.w()),
        u: Some(l.u()),
        ..Input::default()
    }
}

fn cmd_paths(a: &LinkArgs) -> Result<OutputRecord, CliError> {
    let link = resolve_link(a)?;
    let mut regimes = Vec::new();
    for regime in [Regime::D1, Regime::Dinf, Regime::Dt] {
        let mut paths = Vec::new();
        for name in all_names(&link, regime) {
            let traced = trace_path(name, &link).map_err(domain)?;
            let minimal = !is_excluded(name, &link);
            paths.push(PathRow {
                name,
                minimal,
                edges: traced.edges.len(),
                labels: traced.label_string(),
                note: (!minimal).then(|| format!("not minimal for L([{},{}])", link.r(), link.s())),
            });
        }
        regimes.push(RegimeCatalog { regime, paths });
    }
    Ok(OutputRecord {
        schema_version: SCHEMA_VERSION,
        input: link_input(&link),
        result: CommandResult::Paths(PathsResult { regimes }),
    })
}

fn cmd_invariants(
    a: &LinkArgs,
    family: PathName,
    alpha: Option<i64>,
    beta: Option<i64>,
    n: i64,
    swap: bool,
) -> Result<OutputRecord, CliError> {
    let link = resolve_link(a)?;
    let path = path_edges_of(family, &link).map_err(domain)?;
    let (alpha, beta) = match (path.regime, alpha, beta) {
        (Regime::D1, Some(x), None) | (Regime::D1, None, Some(x)) => (x, x),
        (Regime::Dinf, Some(x), None) => (x, 0),
        (_, Some(x), Some(y)) => (x, y),
        _ => {
            return Err(CliError::Usage(format!(
                "{family} lies in {}: give --alpha and --beta (one suffices on D1, beta defaults to 0 on Dinf)",
                path.regime
            )))
        }
    };
    let weights = Weights::new(alpha, beta).with_n(n);
    let d = assemble(&path, &weights).map_err(domain)?;
    let closed = if family.tabulated() {
        let printed =
            closed_form(family, &link, alpha, beta, n, Transcription::Printed).map_err(domain)?;
        let fields: Vec<String> = d
            .differing_fields(&printed)
            .iter()
            .map(|s| s.to_string())
            .collect();
        let erratum = (!fields.is_empty())
            .then(|| erratum_for(family).map(|e| e.corrected.to_string()))
            .flatten();
        Some(ClosedFormCheck {
            printed,
            differing_fields: fields,
            erratum,
        })
    } else {
        None
    };
    let surface = if swap { swap_components(&d) } else { d };
    Ok(OutputRecord {
        schema_version: SCHEMA_VERSION,
        input: Input {
            family: Some(family),
            weights: Some(weights),
            swap,
            ..link_input(&link)
        },
        result: CommandResult::Invariants(InvariantsResult {
            regime: path.regime,
            labels: path.label_string(),
            surface,
            swapped: swap,
            closed_form: closed,
        }),
    })
}

fn cmd_classify(
    a: &LinkArgs,
    gamma: Option<&str>,
    gamma2: Option<i64>,
) -> Result<OutputRecord, CliError> {
    let link = resolve_link(a)?;
    let (w, u) = (link.w(), link.u());
    let reducible = reducible_surgeries(w, u).map_err(domain)?;
    let mut torus_list = torus_knot_surgeries(link.fraction()).map_err(domain)?;
    let mut notes = Vec::new();
    let (mut surgery, mut satellite) = (None, None);
    if let Some(text) = gamma {
        let g: Rational = text
            .parse()
            .map_err(|e| CliError::Usage(format!("--gamma {text}: {e}")))?;
        torus_list.retain(|t| Rational::integer(t.gamma) == g);
        satellite = Some(satellite_candidates(link.fraction(), g));
        if g.is_integer() && !g.is_infinite() {
            surgery = Some(match gamma2 {
                Some(g2) => classify_pair(w, u, g.num(), g2).map_err(domain)?,
                None => surgery_knot(w, u, g.num()).map_err(domain)?,
            });
        } else {
            notes.push(format!(
                "gamma = {g} is not integral; the torus and cable classification covers integral slopes only"
            ));
        }
    }
    Ok(OutputRecord {
        schema_version: SCHEMA_VERSION,
        input: Input {
            gamma: gamma.map(str::to_string),
            gamma2,
            ..link_input(&link)
        },
        result: CommandResult::Classify(ClassifyResult {
            reducible,
            surgery,
            satellite,
            torus_list,
            notes,
        }),
    })
}

fn cmd_verify(
    alpha_max: i64,
    cf_max: i64,
    families: Vec<PathName>,
    w_max: i64,
    u_max: i64,
    u_min: i64,
    strict: bool,
) -> Result<OutputRecord, CliError> {
    let mut notes = Vec::new();
    let mut raise = |v: i64, what: &str| {
        if v < 8 {
            notes.push(format!("{what} {v} raised to the minimum sweep bound 8"));
            8
        } else {
            v
        }
    };
    let spec = SweepSpec {
        w_range: (1, w_max),
        u_ranges: vec![(1, u_max), (u_min, -2)],
        alpha_max: raise(alpha_max, "--alpha-max"),
        closed_form_alpha_max: raise(cf_max, "--closed-form-alpha-max"),
        families,
        regimes: Vec::new(),
    };
    let report = verify_all(&spec).map_err(domain)?;
    let mut ok = report.ok();
    if strict && !report.closed_forms.mismatches.is_empty() {
        ok = false;
        notes.push("strict: registered errata count as mismatches".into());
    }
    Ok(OutputRecord {
        schema_version: SCHEMA_VERSION,
        input: Input::default(),
        result: CommandResult::Verify(VerifyResult { ok, report, notes }),
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let record = match &cli.command {
        Command::Paths { link } => cmd_paths(link)?,
        Command::Invariants {
            link,
            family,
            alpha,
            beta,
            n,
            swap,
        } => cmd_invariants(link, *family, *alpha, *beta, *n, *swap)?,
        Command::Classify {
            link,
            gamma,
            gamma2,
        } => cmd_classify(link, gamma.as_deref(), *gamma2)?,
        Command::Verify {
            alpha_max,
            closed_form_alpha_max,
            families,
            w_max,
            u_max,
            u_min,
            strict,
        } => cmd_verify(
            *alpha_max,
            *closed_form_alpha_max,
            families.clone(),
            *w_max,
            *u_max,
            *u_min,
            *strict,
        )?,
    };
    let mut out = std::io::stdout().lock();
    render::write(&mut out, &record, cli.format)?;
    out.flush()?;
    match &record.result {
        CommandResult::Verify(v) if !v.ok => Err(CliError::Mismatch),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("twobridge: {e}");
            ExitCode::from(e.code())
        }
    }
}
