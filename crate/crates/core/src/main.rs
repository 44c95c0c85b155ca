//! Command-line front end: verification runs, phase maps, loop phases, and
//! coordinate-space Dirac residuals.
//!
//! Exit codes: 0 success/pass, 1 verification failure, 2 usage or
//! configuration error, 3 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spinpair::maps::{format_float, phase_map_csv};
use spinpair::report::{report_csv, report_json, report_summary};
use spinpair::{
    dirac_residual_coordinate, loop_phase, phase_map, run_verification, EigenPair, Event4,
    FourMomentum, GaugeField, GridRange, LoopSpec, OutputFormat, PhaseMapSpec, RunConfig, UnitAxis,
};

#[derive(Parser)]
#[command(name = "spinpair", version, about = "Rotation-pair spinor algebra and gauge-phase checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run every verification suite and emit a machine report.
    Verify {
        /// Override the tolerance of all residual checks.
        #[arg(long)]
        tol: Option<f64>,
        /// Random seed; fixed seeds give byte-identical reports.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trials per randomized check.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Write the machine report here (stdout shows the summary table).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Tabulate the phase over a 2-coordinate slice (CSV: qa,qb,theta).
    PhaseMap {
        /// Rapidity of the momentum.
        #[arg(long)]
        u: f64,
        /// Momentum axis as "x,y,z".
        #[arg(long)]
        axis: String,
        /// Field preset: zero | constant:A1,A2,A3,A4 | solenoid:FLUX.
        #[arg(long)]
        field: String,
        /// Coupling charge of the field.
        #[arg(long, default_value_t = 1.0)]
        charge: f64,
        /// Varied coordinate pair, e.g. "q1,q4".
        #[arg(long)]
        plane: String,
        /// Fixed values for the other coordinates, e.g. "q2=0,q3=0".
        #[arg(long)]
        fix: Option<String>,
        /// Grid range "start:stop:count" applied to both axes.
        #[arg(long)]
        range: String,
        /// Quadrature segments per anchor path.
        #[arg(long, default_value_t = 64)]
        segments: usize,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate a circular loop and compare with the expected circulation.
    LoopPhase {
        /// Field preset: zero | constant:A1,A2,A3,A4 | solenoid:FLUX.
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 1.0)]
        charge: f64,
        /// Loop radius in the q1-q2 plane.
        #[arg(long)]
        radius: f64,
        /// Windings about the flux axis; 0 probes a non-enclosing loop.
        #[arg(long)]
        windings: i32,
        /// Chords per revolution.
        #[arg(long, default_value_t = 10_000)]
        segments: usize,
        /// Loop center "x,y"; defaults to the axis (or a non-enclosing
        /// offset when windings is 0).
        #[arg(long)]
        center: Option<String>,
    },
    /// Coordinate-space Dirac residual for a plane-wave state.
    DiracResidual {
        /// Rapidity of the underlying pair.
        #[arg(long)]
        u: f64,
        /// Pair axis as "x,y,z".
        #[arg(long)]
        axis: String,
        /// Field preset: zero | constant:A1,A2,A3,A4 (single-valued kinds).
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 1.0)]
        charge: f64,
        /// Central-difference step.
        #[arg(long, default_value_t = 1e-4)]
        h: f64,
        /// Rotation angle carried by the pair.
        #[arg(long, default_value_t = 0.9)]
        theta: f64,
        /// Evaluation event "q1,q2,q3,q4".
        #[arg(long, default_value = "0.3,-0.2,0.5,0.7")]
        at: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Verify { tol, seed, trials, out, format } => {
            if trials == 0 {
                return Err("trial count must be at least 1".into());
            }
            if let Some(t) = tol {
                if !(t > 0.0) {
                    return Err(format!("tolerance must be positive (got {t})"));
                }
            }
            let config = RunConfig {
                tolerance: tol,
                seed,
                trials,
                format: match format {
                    Format::Json => OutputFormat::Json,
                    Format::Csv => OutputFormat::Csv,
                },
            };
            let report = run_verification(&config);
            print!("{}", report_summary(&report));
            if let Some(path) = out {
                let body = match config.format {
                    OutputFormat::Json => report_json(&report),
                    OutputFormat::Csv => report_csv(&report),
                };
                if let Err(err) = std::fs::write(&path, body) {
                    eprintln!("error: cannot write {}: {err}", path.display());
                    return Ok(ExitCode::from(3));
                }
                println!("report written to {}", path.display());
            }
            Ok(if report.overall_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::PhaseMap { u, axis, field, charge, plane, fix, range, segments, out } => {
            let spec = PhaseMapSpec {
                momentum: FourMomentum::from_rapidity(u, &parse_axis(&axis)?),
                field: parse_field(&field, charge)?,
                plane: parse_plane(&plane)?,
                fixed: parse_fixed(fix.as_deref())?,
                range: parse_range(&range)?,
                segments,
            };
            let rows = phase_map(&spec).map_err(|e| e.to_string())?;
            let csv = phase_map_csv(&rows);
            match out {
                Some(path) => {
                    if let Err(err) = std::fs::write(&path, csv) {
                        eprintln!("error: cannot write {}: {err}", path.display());
                        return Ok(ExitCode::from(3));
                    }
                    let flagged = rows.iter().filter(|r| r.flagged).count();
                    println!("{} rows written to {} ({} flagged)", rows.len(), path.display(), flagged);
                }
                None => print!("{csv}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::LoopPhase { field, charge, radius, windings, segments, center } => {
            if !(radius > 0.0) {
                return Err(format!("radius must be positive (got {radius})"));
            }
            let center = match center {
                Some(text) => parse_pair_f64(&text)?,
                // Windings 0 probes a loop that stays clear of the axis.
                None if windings == 0 => (2.0 * radius, 0.0),
                None => (0.0, 0.0),
            };
            let turns = if windings == 0 { 1 } else { windings };
            let spec = LoopSpec {
                field: parse_field(&field, charge)?,
                radius,
                center,
                turns,
                segments_per_turn: segments,
            };
            let report = loop_phase(&spec).map_err(|e| e.to_string())?;
            println!("loop phase        = {}", format_float(report.measured));
            println!("expected (2 e flux w) = {}", format_float(report.expected));
            println!("difference        = {}", format_float(report.difference));
            println!(
                "turns = {}  winding about axis = {}  encloses axis = {}",
                report.turns, report.winding_about_axis, report.encloses_axis
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::DiracResidual { u, axis, field, charge, h, theta, at } => {
            let pair = EigenPair::new(parse_axis(&axis)?, theta, u, 1.0).map_err(|e| e.to_string())?;
            let field = parse_field(&field, charge)?;
            let q = parse_event(&at)?;
            let residual = dirac_residual_coordinate(&pair, &field, &q, h).map_err(|e| e.to_string())?;
            println!("coordinate Dirac residual = {} (step {})", format_float(residual), format_float(h));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_f64(text: &str, what: &str) -> Result<f64, String> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| format!("cannot parse {what} from '{text}'"))
}

fn parse_axis(text: &str) -> Result<UnitAxis, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("axis needs three comma-separated components (got '{text}')"));
    }
    let x = parse_f64(parts[0], "axis component")?;
    let y = parse_f64(parts[1], "axis component")?;
    let z = parse_f64(parts[2], "axis component")?;
    UnitAxis::new(x, y, z).map_err(|e| e.to_string())
}

fn parse_field(text: &str, charge: f64) -> Result<GaugeField, String> {
    let (kind, rest) = match text.split_once(':') {
        Some((kind, rest)) => (kind, Some(rest)),
        None => (text, None),
    };
    match kind {
        "zero" => Ok(GaugeField::zero(charge)),
        "constant" => {
            let rest = rest.ok_or("constant field needs components 'constant:A1,A2,A3,A4'")?;
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 4 {
                return Err(format!("constant field needs four components (got '{rest}')"));
            }
            let mut a = [0.0; 4];
            for (slot, part) in a.iter_mut().zip(&parts) {
                *slot = parse_f64(part, "potential component")?;
            }
            Ok(GaugeField::constant(a, charge))
        }
        "solenoid" => {
            let rest = rest.ok_or("solenoid field needs a flux 'solenoid:FLUX'")?;
            Ok(GaugeField::solenoid(parse_f64(rest, "flux")?, charge))
        }
        other => Err(format!("unknown field kind '{other}' (use zero | constant:... | solenoid:...)")),
    }
}

fn parse_coordinate_name(text: &str) -> Result<usize, String> {
    let trimmed = text.trim();
    let digits = trimmed.strip_prefix('q').unwrap_or(trimmed);
    match digits.parse::<usize>() {
        Ok(k) if (1..=4).contains(&k) => Ok(k),
        _ => Err(format!("coordinate must be q1..q4 (got '{text}')")),
    }
}

fn parse_plane(text: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("plane needs two coordinates like 'q1,q4' (got '{text}')"));
    }
    let a = parse_coordinate_name(parts[0])?;
    let b = parse_coordinate_name(parts[1])?;
    if a == b {
        return Err("plane coordinates must differ".into());
    }
    Ok((a, b))
}

fn parse_fixed(text: Option<&str>) -> Result<[f64; 4], String> {
    let mut fixed = [0.0; 4];
    if let Some(text) = text {
        for assignment in text.split(',') {
            let (name, value) = assignment
                .split_once('=')
                .ok_or_else(|| format!("fix entries look like 'q2=0.5' (got '{assignment}')"))?;
            let index = parse_coordinate_name(name)?;
            fixed[index - 1] = parse_f64(value, "fixed coordinate")?;
        }
    }
    Ok(fixed)
}

fn parse_range(text: &str) -> Result<GridRange, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("range looks like 'start:stop:count' (got '{text}')"));
    }
    let start = parse_f64(parts[0], "range start")?;
    let stop = parse_f64(parts[1], "range stop")?;
    let count = parts[2]
        .trim()
        .parse::<usize>()
        .map_err(|_| format!("cannot parse grid count from '{}'", parts[2]))?;
    if count == 0 {
        return Err("grid count must be at least 1".into());
    }
    Ok(GridRange { start, stop, count })
}

fn parse_pair_f64(text: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected 'x,y' (got '{text}')"));
    }
    Ok((parse_f64(parts[0], "center")?, parse_f64(parts[1], "center")?))
}

fn parse_event(text: &str) -> Result<Event4, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("event needs four coordinates 'q1,q2,q3,q4' (got '{text}')"));
    }
    let mut q = [0.0; 4];
    for (slot, part) in q.iter_mut().zip(&parts) {
        *slot = parse_f64(part, "event coordinate")?;
    }
    Ok(Event4::new(q[0], q[1], q[2], q[3]))
}
