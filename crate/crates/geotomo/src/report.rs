//! Inequality reports: verdict rules and CSV/JSON rendering.
//!
//! A check compares a left-hand estimate against a right-hand estimate whose
//! inequality should hold (lhs <= rhs). Floating-point slack below the
//! relative guard never counts against an inequality; a violation must clear
//! three pooled standard errors before it is called one. Renderings are
//! byte-deterministic: numbers are written with 17 significant digits, which
//! round-trip exactly to the underlying f64.

use crate::radon::Estimate;
use serde::Serialize;
use std::fmt;

/// Relative floating-point guard on the margin.
const MARGIN_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    HoldsWithBound,
    Violated,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Holds => "holds",
            Verdict::HoldsWithBound => "holds-with-bound",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

/// A named constant that entered a bound, with its numeric value and where
/// it came from (registry entry, closed form, certified computation).
#[derive(Debug, Clone, Serialize)]
pub struct ConstantUse {
    pub symbol: String,
    pub value: f64,
    pub provenance: String,
}

impl ConstantUse {
    pub fn new(symbol: &str, value: f64, provenance: &str) -> Self {
        ConstantUse {
            symbol: symbol.into(),
            value,
            provenance: provenance.into(),
        }
    }
}

/// Decide a verdict for lhs <= rhs and return it with the margin measured in
/// pooled standard errors. `exact_bound` is false whenever a non-exact
/// distance bound was substituted into the right-hand side, which caps the
/// positive verdict at HoldsWithBound.
pub fn decide_verdict(lhs: &Estimate, rhs: &Estimate, exact_bound: bool) -> (Verdict, f64) {
    let margin = rhs.value - lhs.value;
    if !margin.is_finite() {
        return (Verdict::Inconclusive, f64::NAN);
    }
    let scale = lhs.value.abs().max(rhs.value.abs());
    let guard = MARGIN_GUARD * scale;
    let pooled = lhs.pooled_se(*rhs);
    let units = margin / pooled.max(guard).max(f64::MIN_POSITIVE);
    let verdict = if margin >= -guard {
        if exact_bound {
            Verdict::Holds
        } else {
            Verdict::HoldsWithBound
        }
    } else if -margin > 3.0 * pooled {
        Verdict::Violated
    } else {
        Verdict::Inconclusive
    };
    (verdict, units)
}

#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub check_id: String,
    pub body_k: String,
    pub body_l: Option<String>,
    pub n: usize,
    pub k: Option<usize>,
    pub p: Option<f64>,
    pub lhs: f64,
    pub lhs_se: f64,
    pub rhs: f64,
    pub rhs_se: f64,
    pub margin_se_units: f64,
    pub constants: Vec<ConstantUse>,
    pub verdict: Verdict,
    pub seconds: f64,
    pub seed: u64,
}

pub struct ReportInputs<'a> {
    pub check_id: &'a str,
    pub body_k: &'a str,
    pub body_l: Option<&'a str>,
    pub n: usize,
    pub k: Option<usize>,
    pub p: Option<f64>,
    pub lhs: Estimate,
    pub rhs: Estimate,
    pub constants: Vec<ConstantUse>,
    pub exact_bound: bool,
    pub seconds: f64,
    pub seed: u64,
}

impl InequalityReport {
    pub fn from_inputs(inp: ReportInputs<'_>) -> Self {
        let (verdict, units) = decide_verdict(&inp.lhs, &inp.rhs, inp.exact_bound);
        InequalityReport {
            check_id: inp.check_id.into(),
            body_k: inp.body_k.into(),
            body_l: inp.body_l.map(str::to_string),
            n: inp.n,
            k: inp.k,
            p: inp.p,
            lhs: inp.lhs.value,
            lhs_se: inp.lhs.std_error,
            rhs: inp.rhs.value,
            rhs_se: inp.rhs.std_error,
            margin_se_units: units,
            constants: inp.constants,
            verdict,
            seconds: inp.seconds,
            seed: inp.seed,
        }
    }

    /// One-line human summary for run logs.
    pub fn summary_line(&self) -> String {
        let bodies = match &self.body_l {
            Some(l) => format!("{}/{}", self.body_k, l),
            None => self.body_k.clone(),
        };
        let k = self.k.map(|k| format!(" k={k}")).unwrap_or_default();
        let p = self.p.map(|p| format!(" p={p}")).unwrap_or_default();
        format!(
            "[{}] {} {} n={}{}{} lhs={:.6} rhs={:.6} margin={:.2} se-units",
            self.verdict, self.check_id, bodies, self.n, k, p, self.lhs, self.rhs, self.margin_se_units
        )
    }
}

pub const CSV_HEADER: &str =
    "check_id,body_k,body_l,n,k,p,lhs,lhs_se,rhs,rhs_se,margin_se_units,constants,verdict,seconds,seed";

fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else {
        format!("{v:.16e}")
    }
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn constants_cell(constants: &[ConstantUse]) -> String {
    constants
        .iter()
        .map(|c| format!("{}={}({})", c.symbol, fmt_f64(c.value), c.provenance))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn render_csv(reports: &[InequalityReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        let row = [
            r.check_id.clone(),
            csv_quote(&r.body_k),
            csv_quote(&r.body_l.clone().unwrap_or_default()),
            r.n.to_string(),
            r.k.map(|k| k.to_string()).unwrap_or_default(),
            r.p.map(|p| p.to_string()).unwrap_or_default(),
            fmt_f64(r.lhs),
            fmt_f64(r.lhs_se),
            fmt_f64(r.rhs),
            fmt_f64(r.rhs_se),
            fmt_f64(r.margin_se_units),
            csv_quote(&constants_cell(&r.constants)),
            r.verdict.to_string(),
            fmt_f64(r.seconds),
            r.seed.to_string(),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn render_json(reports: &[InequalityReport]) -> crate::error::Result<String> {
    serde_json::to_string_pretty(reports)
        .map_err(|e| crate::error::Error::Serialize(e.to_string()))
}
