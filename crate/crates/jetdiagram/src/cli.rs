//! The command line: session-driven subcommands over the library.
//!
//! Every subcommand reads named objects from a `--session` file (see
//! [`crate::session`]) and prints one report, either as text or as JSON
//! (`--format structured`). Exit codes: `0` success, `1` malformed input
//! or usage, `2` a well-formed request the mathematics rejects, `3` an
//! uncertified result (`budget_exceeded`) without `--allow-unstable`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::chevalley::{
    chevalley_estimate, diagram_at_point, ChevalleyOptions, DiagramReport, StabilizationStatus,
};
use crate::ideals::{diagram_of_ideal, standard_basis_truncated, IdealPresentation};
use crate::jets::{FiberTuple, PolynomialMap};
use crate::multiindex::MultiIndex;
use crate::report::{
    staircase_grid, ChevalleySection, DiagramSection, DivisionSection, MembershipSection, Report,
    SampleSection, SemicontinuitySection,
};
use crate::scalar::q_to_string;
use crate::series::{hironaka_divide, TruncatedSeries};
use crate::session::{
    parse_diagram_literal, parse_polynomial, parse_rational_list, parse_session, ParseError,
    SessionFile,
};
use crate::strata::{diagram_along_arc, semicontinuity_check, z_set_membership, ArcOptions, ZMode};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_UNCERTIFIED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "jetdiagram",
    version,
    about = "Local invariants of polynomial maps in exact arithmetic: diagrams of initial \
             exponents, Hironaka division, Hilbert-Samuel functions, jet-order estimates, and \
             arc-level semicontinuity checks."
)]
struct Cli {
    /// Session file declaring maps, ideals, points, fibers, and arcs.
    #[arg(long, global = true, value_name = "FILE")]
    session: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Draw the two-variable staircase picture of the computed diagram.
    #[arg(long, global = true)]
    staircase: bool,
    /// Exit successfully even when the result did not certify.
    #[arg(long, global = true)]
    allow_unstable: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Structured,
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Structured => "structured",
        })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the diagram of initial exponents of an ideal or of the
    /// formal relations of a fiber.
    Diagram(DiagramArgs),
    /// Divide a polynomial by an ideal's generators.
    Divide(DivideArgs),
    /// Tabulate the Hilbert-Samuel function of an ideal.
    Hilbert(HilbertArgs),
    /// Estimate the jet order at which a fiber's relation diagram is visible.
    Chevalley(ChevalleyArgs),
    /// Track diagrams along an arc of fibers and check semicontinuity at
    /// the limit.
    Arc(ArcArgs),
    /// Test whether a fiber lies in the set where the diagram is at least
    /// (or strictly above) a reference diagram.
    Zmember(ZmemberArgs),
}

#[derive(Args, Debug)]
struct DiagramArgs {
    /// Named ideal to take the diagram of.
    #[arg(long, conflicts_with_all = ["map", "fiber", "l", "auto", "window", "lmax", "oracle"])]
    ideal: Option<String>,
    /// Named map; needs --fiber.
    #[arg(long, requires = "fiber")]
    map: Option<String>,
    /// Named fiber tuple or single point over the map.
    #[arg(long, requires = "map")]
    fiber: Option<String>,
    /// Truncation degree of the computed diagram.
    #[arg(long)]
    k: u32,
    /// Fixed jet order (skips the stabilization scan).
    #[arg(long, conflicts_with = "auto")]
    l: Option<u32>,
    /// Scan jet orders until the result stabilizes (the default).
    #[arg(long)]
    auto: bool,
    /// Consecutive unchanged orders the scan requires.
    #[arg(long)]
    window: Option<u32>,
    /// Largest jet order the scan may try.
    #[arg(long)]
    lmax: Option<u32>,
    /// Named ideal of known relations certifying the scan.
    #[arg(long)]
    oracle: Option<String>,
}

#[derive(Args, Debug)]
struct DivideArgs {
    /// Polynomial to divide, written inline in y-variables.
    #[arg(long)]
    target: String,
    /// Named ideal whose generators divide.
    #[arg(long)]
    by: String,
    /// Working degree; the division identity holds modulo this degree.
    #[arg(long)]
    degree: u32,
}

#[derive(Args, Debug)]
struct HilbertArgs {
    /// Named ideal.
    #[arg(long)]
    ideal: String,
    /// Largest argument tabulated.
    #[arg(long)]
    k: u32,
}

#[derive(Args, Debug)]
struct ChevalleyArgs {
    /// Named map.
    #[arg(long)]
    map: String,
    /// Named fiber tuple or single point over the map.
    #[arg(long)]
    fiber: String,
    /// Truncation degree the jet order must resolve.
    #[arg(long)]
    k: u32,
    /// Named ideal of known relations certifying the scan.
    #[arg(long)]
    oracle: Option<String>,
    /// Consecutive unchanged orders the scan requires.
    #[arg(long)]
    window: Option<u32>,
    /// Largest jet order the scan may try.
    #[arg(long)]
    lmax: Option<u32>,
}

#[derive(Args, Debug)]
struct ArcArgs {
    /// Named map the arc was declared for.
    #[arg(long)]
    map: String,
    /// Named arc.
    #[arg(long)]
    arc: String,
    /// Comma-separated parameter values; must include the limit 0.
    #[arg(long)]
    samples: String,
    /// Truncation degree at every sample.
    #[arg(long)]
    k: u32,
    /// Fixed jet order for every sample (skips the scans).
    #[arg(long)]
    l: Option<u32>,
    /// Consecutive unchanged orders the scans require.
    #[arg(long)]
    window: Option<u32>,
    /// Largest jet order the scans may try.
    #[arg(long)]
    lmax: Option<u32>,
    /// Named ideal of known relations certifying the scans.
    #[arg(long)]
    oracle: Option<String>,
}

#[derive(Args, Debug)]
struct ZmemberArgs {
    /// Named map.
    #[arg(long)]
    map: String,
    /// Named fiber tuple or single point over the map.
    #[arg(long)]
    fiber: String,
    /// Reference diagram literal, e.g. "(0,2);(3,1)".
    #[arg(long)]
    diagram: String,
    /// Comparison the membership requires.
    #[arg(long, value_enum)]
    mode: MembershipMode,
    /// Truncation degree; all reference vertices must have degree <= k.
    #[arg(long)]
    k: u32,
    /// Fixed jet order (skips the stabilization scan).
    #[arg(long)]
    l: Option<u32>,
    /// Named ideal of known relations certifying the scan.
    #[arg(long)]
    oracle: Option<String>,
    /// Consecutive unchanged orders the scan requires.
    #[arg(long)]
    window: Option<u32>,
    /// Largest jet order the scan may try.
    #[arg(long)]
    lmax: Option<u32>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MembershipMode {
    /// Diagram at the fiber >= the reference.
    Geq,
    /// Diagram at the fiber strictly above the reference.
    Gt,
}

/// How a failed run exits: bad input text versus a request the library
/// rejects.
#[derive(Debug)]
enum Failure {
    Parse(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(p) => Failure::Parse(p.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

type CmdResult = std::result::Result<(Report, bool), Failure>;

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(std::env::args_os(), &mut out, &mut err)
}

/// Testable entry point writing to supplied streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_PARSE
            } else {
                // --help and --version land here
                let _ = write!(out, "{e}");
                EXIT_OK
            };
        }
    };
    match execute(&cli) {
        Ok((report, uncertified)) => {
            let rendered = match cli.format {
                Format::Text => report.to_text(),
                Format::Structured => report.to_json(),
            };
            let _ = out.write_all(rendered.as_bytes());
            if uncertified && !cli.allow_unstable {
                EXIT_UNCERTIFIED
            } else {
                EXIT_OK
            }
        }
        Err(Failure::Parse(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_PARSE
        }
        Err(Failure::Domain(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_DOMAIN
        }
    }
}

fn execute(cli: &Cli) -> CmdResult {
    let session = load_session(cli)?;
    match &cli.command {
        Command::Diagram(args) => cmd_diagram(&session, args, cli.staircase),
        Command::Divide(args) => cmd_divide(&session, args),
        Command::Hilbert(args) => cmd_hilbert(&session, args, cli.staircase),
        Command::Chevalley(args) => cmd_chevalley(&session, args),
        Command::Arc(args) => cmd_arc(&session, args, cli.staircase),
        Command::Zmember(args) => cmd_zmember(&session, args, cli.staircase),
    }
}

fn load_session(cli: &Cli) -> std::result::Result<SessionFile, Failure> {
    let Some(path) = &cli.session else {
        return Err(Failure::Parse("a --session file is required".into()));
    };
    let text = std::fs::read_to_string(path).map_err(|e| {
        Failure::Parse(format!("cannot read session file {}: {e}", path.display()))
    })?;
    parse_session(&text)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn find_map<'s>(
    session: &'s SessionFile,
    name: &str,
) -> std::result::Result<&'s PolynomialMap, Failure> {
    session
        .map(name)
        .ok_or_else(|| Failure::Domain(format!("unknown map `{name}`")))
}

fn find_ideal<'s>(
    session: &'s SessionFile,
    name: &str,
) -> std::result::Result<&'s IdealPresentation, Failure> {
    session
        .ideal(name)
        .ok_or_else(|| Failure::Domain(format!("unknown ideal `{name}`")))
}

/// Resolves `--fiber` against fiber declarations first, then single points.
fn find_fiber(
    session: &SessionFile,
    map: &PolynomialMap,
    map_name: &str,
    fiber_name: &str,
) -> std::result::Result<FiberTuple, Failure> {
    if let Some(fiber) = session.fiber(fiber_name) {
        if fiber.map() != map {
            return Err(Failure::Domain(format!(
                "fiber `{fiber_name}` was declared over a different map than `{map_name}`"
            )));
        }
        return Ok(fiber.clone());
    }
    if let Some(point) = session.point(fiber_name) {
        return Ok(FiberTuple::single(map.clone(), point.to_vec())?);
    }
    Err(Failure::Domain(format!("unknown fiber or point `{fiber_name}`")))
}

/// Re-embeds an ideal into a larger ambient dimension by padding its
/// exponents; an ideal in `y1, y2` is also one in `y1, y2, y3`.
fn embed_ideal(
    ideal: &IdealPresentation,
    dim: usize,
) -> std::result::Result<IdealPresentation, Failure> {
    if ideal.dim() == dim {
        return Ok(ideal.clone());
    }
    if ideal.dim() > dim {
        return Err(Failure::Domain(format!(
            "ideal `{}` uses {} variables but the map's target has {dim}",
            ideal.label(),
            ideal.dim()
        )));
    }
    let generators = ideal
        .generators()
        .iter()
        .map(|g| {
            let terms: Vec<(MultiIndex, _)> = g
                .terms()
                .map(|(e, c)| {
                    let mut entries = e.entries().to_vec();
                    entries.resize(dim, 0);
                    (MultiIndex::new(entries), c.clone())
                })
                .collect();
            TruncatedSeries::from_terms(dim, g.bound(), terms)
        })
        .collect::<crate::Result<Vec<_>>>()?;
    Ok(IdealPresentation::new(dim, ideal.label(), generators)?)
}

/// Looks up `--oracle`, widens it to the map's target, and recenters it at
/// the fiber's image point, as the scan expects.
fn bind_oracle(
    session: &SessionFile,
    name: &str,
    map: &PolynomialMap,
    base: &[crate::scalar::Q],
) -> std::result::Result<IdealPresentation, Failure> {
    let absolute = embed_ideal(find_ideal(session, name)?, map.target_dim())?;
    Ok(absolute.recenter(base)?)
}

fn ordering_name(o: std::cmp::Ordering) -> &'static str {
    match o {
        std::cmp::Ordering::Less => "less",
        std::cmp::Ordering::Equal => "equal",
        std::cmp::Ordering::Greater => "greater",
    }
}

fn fill_from_diagram_report(report: &mut Report, dr: &DiagramReport) {
    report.diagram = Some(DiagramSection::of(&dr.diagram));
    report.hs = Some(dr.hs_table.clone());
    report.standard_basis =
        Some(dr.standard_basis.iter().map(ToString::to_string).collect());
    report.chevalley = Some(ChevalleySection { l: dr.l_used, status: dr.status.as_str().into() });
    report.status = Some(dr.status.as_str().into());
}

fn cmd_diagram(session: &SessionFile, args: &DiagramArgs, staircase: bool) -> CmdResult {
    let mut report = Report::new("diagram");
    report.set_config("k", args.k.to_string());
    match (&args.ideal, &args.map, &args.fiber) {
        (Some(ideal_name), None, None) => {
            let ideal = find_ideal(session, ideal_name)?;
            report.set_config("ideal", ideal_name);
            let truncated = diagram_of_ideal(ideal, args.k)?;
            report.diagram = Some(DiagramSection::of(&truncated.diagram));
            report.hs = Some(truncated.diagram.hilbert_samuel_table(args.k));
            report.standard_basis = Some(
                standard_basis_truncated(ideal, args.k)?
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
            );
            report.status = Some("exact".into());
            if staircase {
                report.staircase = Some(staircase_grid(&truncated.diagram, args.k)?);
            }
            Ok((report, false))
        }
        (None, Some(map_name), Some(fiber_name)) => {
            let map = find_map(session, map_name)?;
            let fiber = find_fiber(session, map, map_name, fiber_name)?;
            report.set_config("map", map_name);
            report.set_config("fiber", fiber_name);
            let mut options = ChevalleyOptions {
                window: args.window,
                l_max: args.lmax,
                ..ChevalleyOptions::default()
            };
            if let Some(oracle_name) = &args.oracle {
                options.oracle = Some(bind_oracle(session, oracle_name, map, fiber.base())?);
                report.set_config("oracle", oracle_name);
            }
            if let Some(l) = args.l {
                report.set_config("l", l.to_string());
            }
            let dr = diagram_at_point(&fiber, fiber_name.clone(), args.k, args.l, &options)?;
            fill_from_diagram_report(&mut report, &dr);
            if staircase {
                report.staircase = Some(staircase_grid(&dr.diagram, args.k)?);
            }
            Ok((report, dr.status == StabilizationStatus::BudgetExceeded))
        }
        _ => Err(Failure::Parse(
            "give either --ideal, or --map together with --fiber".into(),
        )),
    }
}

fn cmd_divide(session: &SessionFile, args: &DivideArgs) -> CmdResult {
    let ideal = find_ideal(session, &args.by)?;
    let target = parse_polynomial(&args.target, ideal.dim())?;
    let truncated = target.truncate(args.degree)?;
    let division = hironaka_divide(&truncated, ideal.generators())?;
    let mut report = Report::new("divide");
    report.set_config("by", &args.by);
    report.set_config("degree", args.degree.to_string());
    report.set_config("target", &args.target);
    report.division = Some(DivisionSection {
        quotients: division.quotients.iter().map(ToString::to_string).collect(),
        remainder: division.remainder.to_string(),
        working_bound: division.working_bound.unwrap_or(args.degree),
    });
    report.status = Some("exact".into());
    Ok((report, false))
}

fn cmd_hilbert(session: &SessionFile, args: &HilbertArgs, staircase: bool) -> CmdResult {
    let ideal = find_ideal(session, &args.ideal)?;
    let truncated = diagram_of_ideal(ideal, args.k)?;
    let mut report = Report::new("hilbert");
    report.set_config("ideal", &args.ideal);
    report.set_config("k", args.k.to_string());
    report.diagram = Some(DiagramSection::of(&truncated.diagram));
    report.hs = Some(truncated.diagram.hilbert_samuel_table(args.k));
    report.status = Some("exact".into());
    if staircase {
        report.staircase = Some(staircase_grid(&truncated.diagram, args.k)?);
    }
    Ok((report, false))
}

fn cmd_chevalley(session: &SessionFile, args: &ChevalleyArgs) -> CmdResult {
    let map = find_map(session, &args.map)?;
    let fiber = find_fiber(session, map, &args.map, &args.fiber)?;
    let mut report = Report::new("chevalley");
    report.set_config("map", &args.map);
    report.set_config("fiber", &args.fiber);
    report.set_config("k", args.k.to_string());
    let mut options = ChevalleyOptions {
        window: args.window,
        l_max: args.lmax,
        ..ChevalleyOptions::default()
    };
    if let Some(oracle_name) = &args.oracle {
        options.oracle = Some(bind_oracle(session, oracle_name, map, fiber.base())?);
        report.set_config("oracle", oracle_name);
    }
    let (l, status) = chevalley_estimate(&fiber, args.k, &options)?;
    report.chevalley = Some(ChevalleySection { l, status: status.as_str().into() });
    report.status = Some(status.as_str().into());
    Ok((report, status == StabilizationStatus::BudgetExceeded))
}

fn cmd_arc(session: &SessionFile, args: &ArcArgs, staircase: bool) -> CmdResult {
    let map = find_map(session, &args.map)?;
    let arc = session
        .arc(&args.arc)
        .ok_or_else(|| Failure::Domain(format!("unknown arc `{}`", args.arc)))?;
    if arc.map() != map {
        return Err(Failure::Domain(format!(
            "arc `{}` was declared for a different map than `{}`",
            args.arc, args.map
        )));
    }
    let samples = parse_rational_list(&args.samples)?;
    let mut report = Report::new("arc");
    report.set_config("arc", &args.arc);
    report.set_config("k", args.k.to_string());
    report.set_config("map", &args.map);
    report.set_config("samples", &args.samples);
    let mut options = ArcOptions {
        explicit_l: args.l,
        window: args.window,
        l_max: args.lmax,
        ..ArcOptions::default()
    };
    if let Some(oracle_name) = &args.oracle {
        options.oracle = Some(embed_ideal(find_ideal(session, oracle_name)?, map.target_dim())?);
        report.set_config("oracle", oracle_name);
    }
    let along = diagram_along_arc(arc, &samples, args.k, &options)?;
    let verdict = semicontinuity_check(&along)?;
    report.samples = Some(
        along
            .samples
            .iter()
            .zip(&along.reports)
            .map(|(t, r)| SampleSection {
                t: q_to_string(t),
                vertices: DiagramSection::of(&r.diagram).vertices,
                hs: r.hs_table.clone(),
                l: r.l_used,
                status: r.status.as_str().into(),
            })
            .collect(),
    );
    let limit = along.limit_report();
    report.diagram = Some(DiagramSection::of(&limit.diagram));
    report.hs = Some(limit.hs_table.clone());
    report.semicontinuity = Some(SemicontinuitySection {
        comparison: ordering_name(verdict.diagram_comparison).into(),
        hs_margins: verdict.hs_margins.clone(),
        sampling_disagreement: verdict.sampling_disagreement,
        all_certified: verdict.all_certified,
    });
    report.verdict = Some(if verdict.pass { "pass" } else { "fail" }.into());
    let exceeded = along
        .reports
        .iter()
        .any(|r| r.status == StabilizationStatus::BudgetExceeded);
    report.status = Some(
        if exceeded {
            "budget_exceeded"
        } else if verdict.all_certified {
            "matched_oracle"
        } else {
            "stabilized_window"
        }
        .into(),
    );
    if staircase {
        report.staircase = Some(staircase_grid(&limit.diagram, args.k)?);
    }
    Ok((report, exceeded))
}

fn cmd_zmember(session: &SessionFile, args: &ZmemberArgs, staircase: bool) -> CmdResult {
    let map = find_map(session, &args.map)?;
    let fiber = find_fiber(session, map, &args.map, &args.fiber)?;
    let reference = parse_diagram_literal(&args.diagram, map.target_dim())?;
    let mut report = Report::new("zmember");
    report.set_config("diagram", &args.diagram);
    report.set_config("fiber", &args.fiber);
    report.set_config("k", args.k.to_string());
    report.set_config("map", &args.map);
    report.set_config(
        "mode",
        match args.mode {
            MembershipMode::Geq => "geq",
            MembershipMode::Gt => "gt",
        },
    );
    let mut options = ChevalleyOptions {
        window: args.window,
        l_max: args.lmax,
        ..ChevalleyOptions::default()
    };
    if let Some(oracle_name) = &args.oracle {
        options.oracle = Some(bind_oracle(session, oracle_name, map, fiber.base())?);
        report.set_config("oracle", oracle_name);
    }
    let mode = match args.mode {
        MembershipMode::Geq => ZMode::Geq,
        MembershipMode::Gt => ZMode::Gt,
    };
    let zm = z_set_membership(&fiber, &reference, mode, args.k, args.l, &options)?;
    report.membership = Some(MembershipSection {
        mode: match args.mode {
            MembershipMode::Geq => "geq",
            MembershipMode::Gt => "gt",
        }
        .into(),
        member: zm.member,
        equality_truncation_caveat: zm.equality_truncation_caveat,
        computed_vertices: DiagramSection::of(&zm.computed).vertices,
        comparison: ordering_name(zm.comparison).into(),
    });
    report.diagram = Some(DiagramSection::of(&zm.computed));
    report.status = Some(zm.status.as_str().into());
    report.verdict = Some(if zm.member { "member" } else { "not_member" }.into());
    if staircase {
        report.staircase = Some(staircase_grid(&zm.computed, args.k)?);
    }
    Ok((report, zm.status == StabilizationStatus::BudgetExceeded))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SESSION: &str =
        concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/curves.session");

    fn run_cli(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let full: Vec<&str> = std::iter::once("jetdiagram").chain(args.iter().copied()).collect();
        let code = run_with(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ideal_diagram_with_staircase() {
        let (code, out, err) = run_cli(&[
            "diagram", "--session", SESSION, "--ideal", "I", "--k", "4", "--staircase",
        ]);
        assert_eq!((code, err.as_str()), (EXIT_OK, ""));
        assert!(out.contains("diagram: {(0,2)}"), "{out}");
        assert!(out.contains("hilbert-samuel: 1, 3, 5, 7, 9"), "{out}");
        assert!(out.contains("y2^2 - y1^3"), "{out}");
        assert!(out.contains("  #####\n"), "{out}");
    }

    #[test]
    fn fiber_diagram_certifies_with_the_oracle() {
        let (code, out, err) = run_cli(&[
            "diagram", "--session", SESSION, "--map", "cusp", "--fiber", "F", "--k", "2",
            "--oracle", "I",
        ]);
        assert_eq!((code, err.as_str()), (EXIT_OK, ""));
        assert!(out.contains("chevalley bound: l = 5 (matched_oracle)"), "{out}");
        assert!(out.contains("status: matched_oracle"), "{out}");
    }

    #[test]
    fn points_stand_in_for_fibers() {
        let (code, out, _) = run_cli(&[
            "diagram", "--session", SESSION, "--map", "cusp", "--fiber", "o1", "--k", "1",
        ]);
        assert_eq!(code, EXIT_OK);
        // the relation has order 2, so nothing shows at degree <= 1
        assert!(out.contains("diagram: {}"), "{out}");
        assert!(out.contains("status: stabilized_window"), "{out}");
    }

    #[test]
    fn structured_output_round_trips() {
        let (code, out, _) = run_cli(&[
            "chevalley", "--session", SESSION, "--map", "cusp", "--fiber", "F", "--k", "1",
            "--oracle", "I", "--format", "structured",
        ]);
        assert_eq!(code, EXIT_OK);
        let report = Report::from_json(&out).unwrap();
        assert_eq!(report.command, "chevalley");
        assert_eq!(report.chevalley.as_ref().unwrap().l, 3);
        assert_eq!(report.to_json(), out);
    }

    #[test]
    fn missing_session_and_bad_routes_are_usage_errors() {
        let (code, _, err) = run_cli(&["diagram", "--ideal", "I", "--k", "2"]);
        assert_eq!(code, EXIT_PARSE);
        assert!(err.contains("--session"), "{err}");

        let (code, _, _) = run_cli(&["diagram", "--session", SESSION, "--k", "2"]);
        assert_eq!(code, EXIT_PARSE);

        // clap rejects mixing the two routes outright
        let (code, _, _) = run_cli(&[
            "diagram", "--session", SESSION, "--ideal", "I", "--map", "cusp", "--fiber", "F",
            "--k", "2",
        ]);
        assert_eq!(code, EXIT_PARSE);
    }

    #[test]
    fn unknown_names_are_domain_errors() {
        let (code, _, err) = run_cli(&[
            "hilbert", "--session", SESSION, "--ideal", "nosuch", "--k", "2",
        ]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.contains("unknown ideal `nosuch`"), "{err}");
    }

    #[test]
    fn budget_exhaustion_exits_three_unless_allowed() {
        let args = [
            "chevalley", "--session", SESSION, "--map", "cusp", "--fiber", "F", "--k", "2",
            "--lmax", "3",
        ];
        let (code, out, _) = run_cli(&args);
        assert_eq!(code, EXIT_UNCERTIFIED);
        assert!(out.contains("budget_exceeded"), "{out}");

        let mut allowed = args.to_vec();
        allowed.push("--allow-unstable");
        let (code, out, _) = run_cli(&allowed);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("budget_exceeded"), "{out}");
    }

    #[test]
    fn help_exits_cleanly() {
        let (code, out, _) = run_cli(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("diagram"));
    }

    #[test]
    fn divide_reports_quotients_and_remainder() {
        let (code, out, err) = run_cli(&[
            "divide", "--session", SESSION, "--target", "y2^2", "--by", "I", "--degree", "6",
        ]);
        assert_eq!((code, err.as_str()), (EXIT_OK, ""));
        assert!(out.contains("quotient 1: 1"), "{out}");
        assert!(out.contains("remainder: y1^3"), "{out}");
    }

    #[test]
    fn ideals_embed_into_larger_targets() {
        let small = IdealPresentation::new(
            2,
            "I",
            vec![parse_polynomial("y2^2 - y1^3", 2).unwrap()],
        )
        .unwrap();
        let wide = embed_ideal(&small, 3).unwrap();
        assert_eq!(wide.dim(), 3);
        assert_eq!(wide.generators()[0].to_string(), "y2^2 - y1^3");
        assert!(embed_ideal(&wide, 2).is_err());
    }
}
