use std::path::{Path, PathBuf};
use std::process::exit;

use clap::{Parser, ValueEnum};
use realslice::cli::{run_job, Command, JobOverrides, JobSpec, PencilSource, EXIT_INPUT};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    /// Certified real base points.
    Solve,
    /// Base points with their coorientations.
    Certify,
    /// Linking number by both algorithms.
    Link,
    /// Full identity report for one instance.
    Verify,
    /// SVG plot in the chart z = 1.
    Plot,
    /// Randomized sweep of generated instances.
    Batch,
    /// The acceptance suite.
    Selftest,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Solve => Command::Solve,
            Cmd::Certify => Command::Certify,
            Cmd::Link => Command::Link,
            Cmd::Verify => Command::Verify,
            Cmd::Plot => Command::Plot,
            Cmd::Batch => Command::Batch,
            Cmd::Selftest => Command::Selftest,
        }
    }
}

/// Real base points of pencils of plane curves and their linking numbers.
#[derive(Parser, Debug)]
#[command(name = "realslice", version)]
struct Args {
    /// Command; may instead come from the job file.
    command: Option<Cmd>,
    /// Job file with `key = value` lines; flags override its values.
    #[arg(long)]
    job: Option<PathBuf>,
    /// Pencil as `R;S`, e.g. `x^2+y^2-z^2;xy`.
    #[arg(long, allow_hyphen_values = true)]
    pencil: Option<String>,
    /// File holding the pencil as `R;S` or on two lines.
    #[arg(long, conflicts_with = "pencil")]
    pencil_file: Option<PathBuf>,
    /// Line through `u;v`, e.g. `1,0,0;0,1,0`, oriented by increasing t in t·u + v.
    #[arg(long, allow_hyphen_values = true)]
    line: Option<String>,
    /// `+` keeps the orientation of the line, `-` reverses it.
    #[arg(long, allow_hyphen_values = true)]
    orient: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of batch instances.
    #[arg(long)]
    count: Option<usize>,
    /// Degree or range such as `1-4`.
    #[arg(long)]
    degrees: Option<String>,
    /// Plot window `xmin,xmax,ymin,ymax`.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the SVG here (plot only).
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn fail(msg: &str) -> ! {
    eprintln!("realslice: {msg}");
    exit(EXIT_INPUT)
}

fn write(path: &Path, text: &str) {
    if let Err(e) = std::fs::write(path, text) {
        fail(&format!("cannot write {}: {e}", path.display()));
    }
}

fn main() {
    let args = Args::parse();
    let file = match &args.job {
        Some(p) => {
            let text = std::fs::read_to_string(p).unwrap_or_else(|e| fail(&format!("cannot read {}: {e}", p.display())));
            let dir = p.parent().unwrap_or(Path::new("."));
            JobOverrides::parse(&text, dir).unwrap_or_else(|e| fail(&e.to_string()))
        }
        None => JobOverrides::default(),
    };
    let flags = JobOverrides {
        command: args.command.map(Command::from),
        pencil: args.pencil.map(PencilSource::Inline).or(args.pencil_file.map(PencilSource::File)),
        line: args.line,
        orient: args.orient,
        seed: args.seed,
        count: args.count,
        degrees: args.degrees,
        window: args.window,
        out: args.out,
        svg: args.svg,
    };
    let job = JobSpec::from_overrides(file.overridden_by(flags)).unwrap_or_else(|e| fail(&e.to_string()));
    if job.command == Command::Selftest {
        eprintln!("running the acceptance suite...");
    }
    let report = run_job(&job);
    match (&report.svg, &job.svg) {
        (Some(svg), Some(path)) => write(path, svg),
        (Some(svg), None) if job.out.is_some() => print!("{svg}"),
        _ => {}
    }
    let json = report.to_json();
    match &job.out {
        Some(path) => write(path, &json),
        None if report.svg.is_some() && job.svg.is_none() => eprint!("{json}"),
        None => print!("{json}"),
    }
    if let Some(e) = &report.error {
        eprintln!("realslice: {} error ({}): {}", e.module, e.kind, e.message);
    }
    exit(report.exit_code);
}
