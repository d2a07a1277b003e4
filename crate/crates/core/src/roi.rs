//! Screening-time and cost savings from narrowing review to cross-validated
//! candidates.
//!
//! With `N` applicants, `n` reviewed, `T`/`t` minutes per applicant for
//! traditional/assisted review and recruiter rate `R` per hour:
//!
//! ```text
//! time saved (h)   = (N·T − n·t) / 60
//! cost saved ($)   = R · (N·T − n·t) / 60
//! speed-up         = (N·T) / (n·t)
//! ```
//!
//! All arithmetic is exact (rationals over `i128`); rounding happens once,
//! at the end, according to [`RoundingMode`].

use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use rust_decimal::Decimal;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

pub type Exact = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoiError {
    #[error("reviewed count {reviewed} exceeds total applicants {total}")]
    ReviewedExceedsTotal { reviewed: u64, total: u64 },
    #[error("invalid ROI parameters: {0}")]
    Params(String),
}

/// How reported hours and dollars are rounded.
///
/// `TableA2` rounds traditional and assisted hours to one decimal first and
/// derives savings from the rounded figures; `DollarsLast` keeps the exact
/// hour difference and rounds only the final numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum RoundingMode {
    #[default]
    TableA2,
    DollarsLast,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoiParams {
    /// Recruiter rate, dollars per hour.
    pub rate: Decimal,
    /// Minutes per applicant without assistance.
    pub traditional_minutes: Decimal,
    /// Minutes per applicant with assistance.
    pub assisted_minutes: Decimal,
}

impl Default for RoiParams {
    fn default() -> Self {
        Self {
            rate: Decimal::from(50),
            traditional_minutes: Decimal::from(10),
            assisted_minutes: Decimal::from(2),
        }
    }
}

fn exact(d: Decimal) -> Exact {
    Ratio::new(d.mantissa(), 10i128.pow(d.scale()))
}

fn count(n: u64) -> Exact {
    Ratio::from_integer(i128::from(n))
}

impl RoiParams {
    pub fn validate(&self) -> Result<(), RoiError> {
        let zero = Decimal::ZERO;
        if self.rate <= zero {
            return Err(RoiError::Params("rate must be positive".into()));
        }
        if self.traditional_minutes <= zero || self.assisted_minutes <= zero {
            return Err(RoiError::Params("review minutes must be positive".into()));
        }
        if self.assisted_minutes > self.traditional_minutes {
            return Err(RoiError::Params(
                "assisted minutes cannot exceed traditional minutes".into(),
            ));
        }
        Ok(())
    }

    fn rate_exact(&self) -> Exact {
        exact(self.rate)
    }
    fn traditional(&self) -> Exact {
        exact(self.traditional_minutes)
    }
    fn assisted(&self) -> Exact {
        exact(self.assisted_minutes)
    }
}

/// Round half away from zero to `decimals` places.
pub fn round_half_up(x: Exact, decimals: u32) -> Exact {
    let scale = Ratio::from_integer(10i128.pow(decimals));
    let shifted = (x.abs() * scale + Ratio::new(1, 2)).floor().to_integer();
    let signed = if x < Ratio::from_integer(0) { -shifted } else { shifted };
    Ratio::new(signed, *scale.numer())
}

fn check(n_total: u64, n_reviewed: u64) -> Result<(), RoiError> {
    if n_reviewed > n_total {
        Err(RoiError::ReviewedExceedsTotal {
            reviewed: n_reviewed,
            total: n_total,
        })
    } else {
        Ok(())
    }
}

fn traditional_hours(n_total: u64, p: &RoiParams) -> Exact {
    count(n_total) * p.traditional() / count(60)
}

fn assisted_hours(n_reviewed: u64, p: &RoiParams) -> Exact {
    count(n_reviewed) * p.assisted() / count(60)
}

/// Exact hours saved, `((N·T) − (n·t)) / 60`.
pub fn time_saved(n_total: u64, n_reviewed: u64, p: &RoiParams) -> Result<Exact, RoiError> {
    check(n_total, n_reviewed)?;
    Ok(traditional_hours(n_total, p) - assisted_hours(n_reviewed, p))
}

/// Hours saved as reported (one decimal) under a rounding mode.
pub fn time_saved_reported(
    n_total: u64,
    n_reviewed: u64,
    p: &RoiParams,
    mode: RoundingMode,
) -> Result<Exact, RoiError> {
    let raw = time_saved(n_total, n_reviewed, p)?;
    Ok(match mode {
        RoundingMode::TableA2 => {
            round_half_up(traditional_hours(n_total, p), 1)
                - round_half_up(assisted_hours(n_reviewed, p), 1)
        }
        RoundingMode::DollarsLast => round_half_up(raw, 1),
    })
}

/// Dollars saved, rounded to whole dollars. `DollarsLast` multiplies the
/// exact hours by the rate; `TableA2` multiplies the rounded hour figure.
pub fn cost_saved(
    n_total: u64,
    n_reviewed: u64,
    p: &RoiParams,
    mode: RoundingMode,
) -> Result<Exact, RoiError> {
    let hours = match mode {
        RoundingMode::TableA2 => time_saved_reported(n_total, n_reviewed, p, mode)?,
        RoundingMode::DollarsLast => time_saved(n_total, n_reviewed, p)?,
    };
    Ok(round_half_up(p.rate_exact() * hours, 0))
}

/// Ratio of traditional to assisted review effort.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Speedup {
    Finite(Exact),
    /// Nothing left to review (`n = 0`).
    Unbounded,
}

impl Speedup {
    /// Rounded to one decimal; `None` when unbounded.
    pub fn rounded(&self) -> Option<f64> {
        match self {
            Speedup::Finite(r) => to_f64(round_half_up(*r, 1)),
            Speedup::Unbounded => None,
        }
    }
}

impl fmt::Display for Speedup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Speedup::Finite(r) => write!(f, "{}×", format_fixed(*r, 1)),
            Speedup::Unbounded => f.write_str("∞"),
        }
    }
}

impl Serialize for Speedup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.rounded() {
            Some(v) => s.serialize_f64(v),
            None => s.serialize_str("∞"),
        }
    }
}

/// `(N·T) / (n·t)`; `n = 0` yields [`Speedup::Unbounded`].
pub fn speed_improvement(n_total: u64, n_reviewed: u64, p: &RoiParams) -> Speedup {
    if n_reviewed == 0 {
        return Speedup::Unbounded;
    }
    Speedup::Finite((count(n_total) * p.traditional()) / (count(n_reviewed) * p.assisted()))
}

/// Reviewed count implied by a published speed-up: `round((N·T)/(speed·t))`.
pub fn invert_reviewed_count(speed: f64, n_total: u64, p: &RoiParams) -> u64 {
    let t_big = p.traditional_minutes.to_f64().unwrap_or(f64::NAN);
    let t_small = p.assisted_minutes.to_f64().unwrap_or(f64::NAN);
    let n = (n_total as f64 * t_big) / (speed * t_small);
    if n.is_finite() && n > 0.0 {
        n.round() as u64
    } else {
        0
    }
}

/// One row of the sensitivity table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoiRow {
    pub volume: u64,
    pub traditional_hours: Exact,
    pub assisted_hours: Exact,
    pub saved_hours: Exact,
    pub cost_saved: Exact,
}

pub const ROI_CSV_HEADER: &str = "volume,traditional_hr,assisted_hr,saved_hr,cost_saved";

impl RoiRow {
    /// Row for `volume` applicants of which `reviewed` go to assisted review.
    pub fn compute(
        volume: u64,
        reviewed: u64,
        p: &RoiParams,
        mode: RoundingMode,
    ) -> Result<Self, RoiError> {
        Ok(Self {
            volume,
            traditional_hours: round_half_up(traditional_hours(volume, p), 1),
            assisted_hours: round_half_up(assisted_hours(reviewed, p), 1),
            saved_hours: time_saved_reported(volume, reviewed, p, mode)?,
            cost_saved: cost_saved(volume, reviewed, p, mode)?,
        })
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.volume,
            format_fixed(self.traditional_hours, 1),
            format_fixed(self.assisted_hours, 1),
            format_fixed(self.saved_hours, 1),
            format_fixed(self.cost_saved, 0)
        )
    }

    /// The row's figures as printed in a report table.
    pub fn display_cells(&self) -> [String; 5] {
        [
            group_thousands(&self.volume.to_string()),
            format_fixed(self.traditional_hours, 1),
            format_fixed(self.assisted_hours, 1),
            format_fixed(self.saved_hours, 1),
            format_dollars(self.cost_saved),
        ]
    }
}

/// Sensitivity rows where every applicant moves from traditional to
/// assisted review, hours rounded to one decimal before differencing.
pub fn sensitivity_table(volumes: &[u64], p: &RoiParams) -> Vec<RoiRow> {
    volumes
        .iter()
        .map(|&v| RoiRow::compute(v, v, p, RoundingMode::TableA2).expect("reviewed == volume"))
        .collect()
}

pub fn sensitivity_csv(rows: &[RoiRow]) -> String {
    let mut out = String::from(ROI_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

/// Aligned text rendering of sensitivity rows.
pub fn sensitivity_text(rows: &[RoiRow], p: &RoiParams) -> String {
    let header = [
        "Applicant Volume".to_string(),
        "Traditional Time (hr)".to_string(),
        "AI-Assisted Time (hr)".to_string(),
        "Time Saved (hr)".to_string(),
        format!("Cost Saved (@ ${}/hr)", p.rate.normalize()),
    ];
    let body: Vec<[String; 5]> = rows.iter().map(RoiRow::display_cells).collect();
    let widths: Vec<usize> = (0..5)
        .map(|i| {
            body.iter()
                .map(|r| r[i].chars().count())
                .chain([header[i].chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let line = |cells: &[String; 5], out: &mut String| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{:>w$}", c, w = *w))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(&header, &mut out);
    for r in &body {
        line(r, &mut out);
    }
    out
}

/// ROI figures for one campaign.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoiResult {
    pub time_saved: f64,
    pub cost_saved: f64,
    pub speed_improvement: Speedup,
}

impl RoiResult {
    pub fn compute(
        n_total: u64,
        n_reviewed: u64,
        p: &RoiParams,
        mode: RoundingMode,
    ) -> Result<Self, RoiError> {
        Ok(Self {
            time_saved: to_f64(time_saved_reported(n_total, n_reviewed, p, mode)?).unwrap_or(0.0),
            cost_saved: to_f64(cost_saved(n_total, n_reviewed, p, mode)?).unwrap_or(0.0),
            speed_improvement: speed_improvement(n_total, n_reviewed, p),
        })
    }
}

fn to_f64(r: Exact) -> Option<f64> {
    // Parse the exact decimal text so tenths land on the nearest double.
    format_fixed(r, 6).parse().ok()
}

/// Exact decimal rendering, rounded half-up to `decimals` places.
pub fn format_fixed(x: Exact, decimals: u32) -> String {
    let r = round_half_up(x, decimals);
    let scaled = (r * Ratio::from_integer(10i128.pow(decimals))).to_integer();
    let neg = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let body = if decimals == 0 {
        digits
    } else {
        let d = decimals as usize;
        let padded = format!("{:0>width$}", digits, width = d + 1);
        let (int, frac) = padded.split_at(padded.len() - d);
        format!("{int}.{frac}")
    };
    if neg && !r.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

fn group_thousands(digits: &str) -> String {
    let (sign, digits) = digits
        .strip_prefix('-')
        .map_or(("", digits), |rest| ("-", rest));
    let mut out = String::new();
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(c);
    }
    format!("{sign}{out}")
}

/// Whole dollars with thousands separators, e.g. `$1,670`.
pub fn format_dollars(x: Exact) -> String {
    let s = format_fixed(x, 0);
    match s.strip_prefix('-') {
        Some(rest) => format!("-${}", group_thousands(rest)),
        None => format!("${}", group_thousands(&s)),
    }
}
