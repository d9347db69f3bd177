//! Job files: one `key = value` per line, `#` starts a comment.
//!
//! Keys: `command`, `pencil` (`R;S`), `pencil_file`, `line` (`u;v` with
//! comma-separated rational coordinates), `orient` (`+` or `-`), `seed`,
//! `count`, `degrees` (`d` or `lo-hi`), `window` (`xmin,xmax,ymin,ymax`),
//! `out`, `svg`.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use super::CliError;
use crate::linking::OrientedLine;
use crate::poly::{parse_poly, HomPoly, Rational, RationalPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Solve,
    Certify,
    Link,
    Verify,
    Plot,
    Batch,
    Selftest,
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "solve" => Command::Solve,
            "certify" => Command::Certify,
            "link" => Command::Link,
            "verify" => Command::Verify,
            "plot" => Command::Plot,
            "batch" => Command::Batch,
            "selftest" => Command::Selftest,
            _ => return Err(CliError::input(format!("unknown command `{s}`"))),
        })
    }
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Solve => "solve",
            Command::Certify => "certify",
            Command::Link => "link",
            Command::Verify => "verify",
            Command::Plot => "plot",
            Command::Batch => "batch",
            Command::Selftest => "selftest",
        }
    }

    fn needs_pencil(self) -> bool {
        !matches!(self, Command::Batch | Command::Selftest)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PencilSource {
    Inline(String),
    File(PathBuf),
}

/// Plot window in the chart `z = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Window {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Default for Window {
    fn default() -> Self {
        Window { xmin: -3.0, xmax: 3.0, ymin: -3.0, ymax: 3.0 }
    }
}

/// Values from a job file or the command line; unset fields fall through.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct JobOverrides {
    pub command: Option<Command>,
    pub pencil: Option<PencilSource>,
    pub line: Option<String>,
    pub orient: Option<String>,
    pub seed: Option<u64>,
    pub count: Option<usize>,
    pub degrees: Option<String>,
    pub window: Option<String>,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl JobOverrides {
    /// Parses a job file; relative paths are resolved against `dir`.
    pub fn parse(text: &str, dir: &Path) -> Result<Self, CliError> {
        let mut o = JobOverrides::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::input(format!("job line {}: expected key = value", n + 1)))?;
            let value = value.trim().to_string();
            match key.trim() {
                "command" => o.command = Some(value.parse()?),
                "pencil" => o.pencil = Some(PencilSource::Inline(value)),
                "pencil_file" => o.pencil = Some(PencilSource::File(dir.join(value))),
                "line" => o.line = Some(value),
                "orient" => o.orient = Some(value),
                "seed" => o.seed = Some(parse_num(&value, "seed")?),
                "count" => o.count = Some(parse_num(&value, "count")?),
                "degrees" => o.degrees = Some(value),
                "window" => o.window = Some(value),
                "out" => o.out = Some(dir.join(value)),
                "svg" => o.svg = Some(dir.join(value)),
                k => return Err(CliError::input(format!("job line {}: unknown key `{k}`", n + 1))),
            }
        }
        Ok(o)
    }

    /// `self` with every field set in `top` replaced.
    pub fn overridden_by(self, top: JobOverrides) -> JobOverrides {
        JobOverrides {
            command: top.command.or(self.command),
            pencil: top.pencil.or(self.pencil),
            line: top.line.or(self.line),
            orient: top.orient.or(self.orient),
            seed: top.seed.or(self.seed),
            count: top.count.or(self.count),
            degrees: top.degrees.or(self.degrees),
            window: top.window.or(self.window),
            out: top.out.or(self.out),
            svg: top.svg.or(self.svg),
        }
    }
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T, CliError> {
    s.trim().parse().map_err(|_| CliError::input(format!("invalid {what} `{s}`")))
}

/// A validated job.
#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    pub pencil: Option<(HomPoly, HomPoly)>,
    pub pencil_text: Option<String>,
    pub line: OrientedLine,
    pub reversed: bool,
    pub seed: u64,
    pub count: usize,
    pub degrees: (u32, u32),
    pub window: Window,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

pub const DEFAULT_LINE: &str = "1,0,0;0,1,0";

impl JobSpec {
    pub fn from_overrides(o: JobOverrides) -> Result<Self, CliError> {
        let command = o.command.ok_or_else(|| CliError::input("no command given"))?;
        let pencil_text = match o.pencil {
            Some(PencilSource::Inline(t)) => Some(t),
            Some(PencilSource::File(p)) => Some(
                std::fs::read_to_string(&p)
                    .map_err(|e| CliError::input(format!("cannot read pencil file {}: {e}", p.display())))?,
            ),
            None => None,
        };
        let pencil = match &pencil_text {
            Some(t) => Some(parse_pencil(t)?),
            None if command.needs_pencil() => return Err(CliError::input(format!("`{}` needs a pencil", command.name()))),
            None => None,
        };
        let reversed = match o.orient.as_deref().map(str::trim) {
            None | Some("+") => false,
            Some("-") => true,
            Some(s) => return Err(CliError::input(format!("orientation must be + or -, got `{s}`"))),
        };
        let mut line = parse_line(o.line.as_deref().unwrap_or(DEFAULT_LINE))?;
        if reversed {
            line = line.reversed();
        }
        let degrees = match &o.degrees {
            Some(d) => parse_degrees(d)?,
            None => (1, 4),
        };
        let window = match &o.window {
            Some(w) => parse_window(w)?,
            None => Window::default(),
        };
        let count = o.count.unwrap_or(50);
        if count == 0 {
            return Err(CliError::input("count must be positive"));
        }
        Ok(JobSpec {
            command,
            pencil,
            pencil_text: pencil_text.map(|t| normalize_pencil_text(&t)),
            line,
            reversed,
            seed: o.seed.unwrap_or(0),
            count,
            degrees,
            window,
            out: o.out,
            svg: o.svg,
        })
    }
}

fn normalize_pencil_text(t: &str) -> String {
    split_pencil(t).map(|(r, s)| format!("{r};{s}")).unwrap_or_else(|| t.trim().to_string())
}

fn split_pencil(t: &str) -> Option<(&str, &str)> {
    if let Some((r, s)) = t.split_once(';') {
        return Some((r.trim(), s.trim()));
    }
    let mut lines = t.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    match (lines.next(), lines.next(), lines.next()) {
        (Some(r), Some(s), None) => Some((r, s)),
        _ => None,
    }
}

/// `R;S`, or `R` and `S` on two lines.
pub fn parse_pencil(t: &str) -> Result<(HomPoly, HomPoly), CliError> {
    let (r, s) = split_pencil(t).ok_or_else(|| CliError::input("pencil must be `R;S` or two lines"))?;
    let parse = |p: &str| parse_poly(p).map_err(|e| CliError::input(format!("cannot parse `{p}`: {e}")));
    Ok((parse(r)?, parse(s)?))
}

pub fn parse_point(t: &str) -> Result<RationalPoint, CliError> {
    let c: Vec<&str> = t.split(',').map(str::trim).collect();
    if c.len() != 3 {
        return Err(CliError::input(format!("point `{t}` needs three coordinates")));
    }
    let mut p: RationalPoint = Default::default();
    for (slot, s) in p.iter_mut().zip(c) {
        *slot = Rational::from_str(s).map_err(|_| CliError::input(format!("invalid coordinate `{s}`")))?;
    }
    Ok(p)
}

/// `u;v`, oriented by increasing `t` in `t u + v`.
pub fn parse_line(t: &str) -> Result<OrientedLine, CliError> {
    let (u, v) = t.split_once(';').ok_or_else(|| CliError::input("line must be `u;v`"))?;
    OrientedLine::new(parse_point(u)?, parse_point(v)?).map_err(|e| CliError::input(format!("line `{t}`: {e}")))
}

pub fn parse_degrees(t: &str) -> Result<(u32, u32), CliError> {
    let t = t.trim();
    let (lo, hi) = match t.split_once('-').or_else(|| t.split_once("..")) {
        Some((a, b)) => (parse_num(a, "degree")?, parse_num(b.trim_start_matches('='), "degree")?),
        None => {
            let d = parse_num(t, "degree")?;
            (d, d)
        }
    };
    if !(1..=6).contains(&lo) || !(1..=6).contains(&hi) || lo > hi {
        return Err(CliError::input(format!("degree range `{t}` must lie within 1-6")));
    }
    Ok((lo, hi))
}

pub fn parse_window(t: &str) -> Result<Window, CliError> {
    let v: Vec<f64> = t.split(',').map(|s| parse_num(s, "window bound")).collect::<Result<_, _>>()?;
    let [xmin, xmax, ymin, ymax] = v[..] else {
        return Err(CliError::input("window must be xmin,xmax,ymin,ymax"));
    };
    Ok(Window { xmin, xmax, ymin, ymax })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn file_values_are_overridden_by_flags() {
        let text = "command = verify\npencil = x;y  # two lines\nseed = 3\n\ndegrees = 2-3\n";
        let file = JobOverrides::parse(text, Path::new("/tmp")).unwrap();
        let flags = JobOverrides { seed: Some(9), orient: Some("-".into()), ..Default::default() };
        let job = JobSpec::from_overrides(file.overridden_by(flags)).unwrap();
        assert_eq!(job.command, Command::Verify);
        assert_eq!(job.seed, 9);
        assert_eq!(job.degrees, (2, 3));
        assert_eq!(job.pencil_text.as_deref(), Some("x;y"));
        assert_eq!(job.line.u(), &[rat(0), rat(1), rat(0)]);
    }

    #[test]
    fn bad_inputs() {
        assert!(parse_degrees("0-3").is_err());
        assert!(parse_degrees("2-7").is_err());
        assert_eq!(parse_degrees("4").unwrap(), (4, 4));
        assert!(parse_line("1,0,0;2,0,0").is_err());
        assert!(parse_line("1,0;0,1,0").is_err());
        assert!(parse_pencil("x^2+").is_err());
        assert!(JobOverrides::parse("colour = red", Path::new(".")).is_err());
        let missing = JobOverrides { command: Some(Command::Solve), ..Default::default() };
        assert!(JobSpec::from_overrides(missing).is_err());
        let file = JobOverrides {
            command: Some(Command::Solve),
            pencil: Some(PencilSource::File("/nonexistent/pencil".into())),
            ..Default::default()
        };
        assert!(JobSpec::from_overrides(file).is_err());
    }

    #[test]
    fn two_line_pencil() {
        let (r, s) = parse_pencil("x^2+y^2-z^2\nxy\n").unwrap();
        assert_eq!((r.degree(), s.degree()), (2, 2));
        assert!(parse_line("1/2,0,0;0,1,0").is_ok());
    }
}
