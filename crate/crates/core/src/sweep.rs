//! Parameter sweeps over evolved coherent states and their CSV form.
//!
//! Every point is independent. Points are evaluated on a rayon pool and
//! collected back in spec order, so the output does not depend on the number
//! of worker threads.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io;

use rayon::prelude::*;

use crate::coherent::BlochAngles;
use crate::correlation::correlation_triple;
use crate::dicke::MAX_ATOMS;
use crate::dynamics::{evolved_coherent, EvolutionSpec};
use crate::error::{Result, SpinError};

pub const CSV_HEADER: &str = "n,theta,phi,tau,m,cx,cy,cz,s,degenerate";

/// Parses an angle given either as radians (`0.785`) or as a multiple of pi
/// (`pi`, `pi/4`, `3pi/4`, `3*pi/4`, `-pi/2`, `2pi`).
pub fn parse_angle(text: &str) -> Result<f64> {
    let bad = || SpinError::InvalidSweep(format!("cannot parse angle '{text}'"));
    let t = text.trim().to_ascii_lowercase();
    let Some(pos) = t.find("pi") else {
        return t
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(bad);
    };
    let coef = t[..pos].trim().trim_end_matches('*').trim();
    let coef = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = t[pos + 2..].trim();
    let denom = if rest.is_empty() {
        1.0
    } else {
        let d = rest.strip_prefix('/').ok_or_else(bad)?;
        d.trim().parse::<f64>().map_err(|_| bad())?
    };
    if denom == 0.0 {
        return Err(bad());
    }
    Ok(coef * PI / denom)
}

/// Inclusive evenly spaced grid `start, start + step, ..., <= end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && end.is_finite() && step.is_finite()) {
            return Err(SpinError::InvalidSweep("non-finite range".into()));
        }
        if step <= 0.0 {
            return Err(SpinError::InvalidSweep(format!(
                "step must be positive, got {step}"
            )));
        }
        if end < start {
            return Err(SpinError::InvalidSweep(format!(
                "empty range {start}..{end}"
            )));
        }
        Ok(Self { start, end, step })
    }

    /// Parses `A:B:STEP`, each part an angle literal.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<_> = text.split(':').collect();
        let [a, b, s] = parts.as_slice() else {
            return Err(SpinError::InvalidSweep(format!(
                "expected A:B:STEP, got '{text}'"
            )));
        };
        Self::new(parse_angle(a)?, parse_angle(b)?, parse_angle(s)?)
    }

    pub fn values(&self) -> Vec<f64> {
        let count = ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| (self.start + i as f64 * self.step).min(self.end))
            .collect()
    }
}

/// Parses `A:B` into an inclusive atom-count range.
pub fn parse_n_range(text: &str) -> Result<(usize, usize)> {
    let bad = || SpinError::InvalidSweep(format!("expected A:B, got '{text}'"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepSpec {
    /// One row per cat order `m`, at `tau = pi/m`.
    Table {
        n: usize,
        theta: f64,
        phi: f64,
        m_list: Vec<u32>,
    },
    /// One row per `N` per `tau`; `tau` is the outer loop.
    SweepN {
        n_start: usize,
        n_end: usize,
        theta: f64,
        phi: f64,
        taus: Vec<f64>,
    },
    /// One row per `theta` per `N`; `N` is the outer loop.
    SweepTheta {
        ns: Vec<usize>,
        thetas: Grid,
        phi: f64,
        tau: f64,
        /// Admit `theta = 0`.
        allow_pole: bool,
    },
    SweepTau {
        n: usize,
        theta: f64,
        phi: f64,
        taus: Grid,
    },
    Point {
        n: usize,
        theta: f64,
        phi: f64,
        tau: f64,
    },
}

impl SweepSpec {
    pub fn default_table() -> Self {
        SweepSpec::Table {
            n: 10,
            theta: PI / 4.0,
            phi: 0.0,
            m_list: (2..=10).collect(),
        }
    }

    pub fn default_sweep_n() -> Self {
        SweepSpec::SweepN {
            n_start: 2,
            n_end: 10,
            theta: PI / 4.0,
            phi: 0.0,
            taus: vec![PI / 8.0, PI / 6.0, PI / 4.0],
        }
    }

    pub fn default_sweep_theta() -> Self {
        SweepSpec::SweepTheta {
            ns: vec![5, 6],
            thetas: Grid {
                start: PI / 314.0,
                end: PI,
                step: PI / 314.0,
            },
            phi: 0.0,
            tau: PI / 3.0,
            allow_pole: false,
        }
    }

    pub fn default_sweep_tau() -> Self {
        SweepSpec::SweepTau {
            n: 10,
            theta: PI / 4.0,
            phi: 0.0,
            taus: Grid {
                start: 0.0,
                end: 7.0,
                step: 0.01,
            },
        }
    }

    /// Validates the spec and expands it into points, in output order.
    pub fn points(&self) -> Result<Vec<SweepPoint>> {
        let check_n = |n: usize| -> Result<()> {
            if n == 0 || n > MAX_ATOMS {
                return invalid(format!("atom count {n} outside [1, {MAX_ATOMS}]"));
            }
            Ok(())
        };
        let check_tau = |tau: f64| -> Result<()> {
            if !tau.is_finite() || tau < 0.0 {
                return invalid(format!("tau must be finite and non-negative, got {tau}"));
            }
            Ok(())
        };
        let check_theta = |theta: f64| -> Result<()> { BlochAngles::new(theta, 0.0).map(|_| ()) };

        let point = |n, theta, phi, tau, m| SweepPoint {
            n,
            theta,
            phi,
            tau,
            m,
        };
        match self {
            SweepSpec::Table {
                n,
                theta,
                phi,
                m_list,
            } => {
                check_n(*n)?;
                check_theta(*theta)?;
                if m_list.is_empty() {
                    return invalid("empty m list".into());
                }
                m_list
                    .iter()
                    .map(|&m| {
                        if m < 2 {
                            return Err(SpinError::InvalidCatOrder(m));
                        }
                        Ok(point(*n, *theta, *phi, PI / m as f64, Some(m)))
                    })
                    .collect()
            }
            SweepSpec::SweepN {
                n_start,
                n_end,
                theta,
                phi,
                taus,
            } => {
                if *n_start < 2 || n_end < n_start || *n_end > MAX_ATOMS {
                    return invalid(format!(
                        "n range {n_start}:{n_end} must lie within [2, {MAX_ATOMS}]"
                    ));
                }
                check_theta(*theta)?;
                if taus.is_empty() {
                    return invalid("empty tau list".into());
                }
                taus.iter().try_for_each(|t| check_tau(*t))?;
                Ok(taus
                    .iter()
                    .flat_map(|&tau| {
                        (*n_start..=*n_end).map(move |n| point(n, *theta, *phi, tau, None))
                    })
                    .collect())
            }
            SweepSpec::SweepTheta {
                ns,
                thetas,
                phi,
                tau,
                allow_pole,
            } => {
                if ns.is_empty() {
                    return invalid("empty N list".into());
                }
                ns.iter().try_for_each(|n| check_n(*n))?;
                check_tau(*tau)?;
                let values = thetas.values();
                for &theta in &values {
                    check_theta(theta)?;
                    if theta == 0.0 && !allow_pole {
                        return invalid("theta = 0 requires --allow-pole".into());
                    }
                }
                Ok(ns
                    .iter()
                    .flat_map(|&n| {
                        values
                            .iter()
                            .map(move |&theta| point(n, theta, *phi, *tau, None))
                    })
                    .collect())
            }
            SweepSpec::SweepTau {
                n,
                theta,
                phi,
                taus,
            } => {
                check_n(*n)?;
                check_theta(*theta)?;
                check_tau(taus.start)?;
                Ok(taus
                    .values()
                    .into_iter()
                    .map(|tau| point(*n, *theta, *phi, tau, None))
                    .collect())
            }
            SweepSpec::Point { n, theta, phi, tau } => {
                check_n(*n)?;
                check_theta(*theta)?;
                check_tau(*tau)?;
                Ok(vec![point(*n, *theta, *phi, *tau, None)])
            }
        }
    }
}

fn invalid<T>(msg: String) -> Result<T> {
    Err(SpinError::InvalidSweep(msg))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub n: usize,
    pub theta: f64,
    pub phi: f64,
    pub tau: f64,
    pub m: Option<u32>,
}

/// One CSV row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub n: usize,
    pub theta: f64,
    pub phi: f64,
    pub tau: f64,
    pub m: Option<u32>,
    pub cx: f64,
    pub cy: f64,
    pub cz: f64,
    pub s: f64,
    pub degenerate: bool,
}

pub fn evaluate_point(point: &SweepPoint) -> Result<SweepRecord> {
    let angles = BlochAngles::new(point.theta, point.phi)?;
    let spec = EvolutionSpec::new(point.n, angles, point.tau)?;
    let triple = correlation_triple(&evolved_coherent(&spec)?)?;
    Ok(SweepRecord {
        n: point.n,
        theta: point.theta,
        phi: point.phi,
        tau: point.tau,
        m: point.m,
        cx: triple.cx,
        cy: triple.cy,
        cz: triple.cz,
        s: triple.s,
        degenerate: triple.degenerate,
    })
}

/// Evaluates all points of `spec` on `threads` workers (0 = rayon default).
pub fn run_sweep(spec: &SweepSpec, threads: usize) -> Result<Vec<SweepRecord>> {
    let points = spec.points()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| SpinError::InvalidSweep(format!("thread pool: {e}")))?;
    pool.install(|| points.par_iter().map(evaluate_point).collect())
}

fn fmt_float(out: &mut String, v: f64) {
    let start = out.len();
    let _ = write!(out, "{v:.6}");
    if &out[start..] == "-0.000000" {
        out.replace_range(start..start + 1, "");
    }
}

pub fn format_record(record: &SweepRecord) -> String {
    let mut line = String::with_capacity(96);
    let _ = write!(line, "{},", record.n);
    for v in [record.theta, record.phi, record.tau] {
        fmt_float(&mut line, v);
        line.push(',');
    }
    if let Some(m) = record.m {
        let _ = write!(line, "{m}");
    }
    line.push(',');
    for v in [record.cx, record.cy, record.cz, record.s] {
        fmt_float(&mut line, v);
        line.push(',');
    }
    line.push(if record.degenerate { '1' } else { '0' });
    line
}

pub fn write_csv<W: io::Write>(records: &[SweepRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", format_record(r))?;
    }
    out.flush()
}

pub fn to_csv_string(records: &[SweepRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV is ASCII")
}
