//! Analysis reports: the machine-readable JSON schema and the aligned
//! human-readable table.
//!
//! JSON field order is fixed by struct order, and floats serialize in
//! shortest round-trip form, so the same input always produces byte-identical
//! output.

use serde::Serialize;

use crate::bounds::{self, BoundsReport};
use crate::corr::{self, CorrelationMatrix};
use crate::error::Result;
use crate::linalg::SortOrder;
use crate::majorization::{self, MajorizationVerdict};

/// Verdict summary of the two-sided variance-majorization check.
#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Summary {
    pub left_holds: bool,
    pub right_holds: bool,
    /// Smallest prefix-variance slack across both sides; absent for n = 2,
    /// where no interior prefixes exist.
    pub min_slack: Option<f64>,
}

/// Ascending spectra of the input and its three comparison matrices.
#[derive(Debug, Clone, Serialize)]
pub struct SpectraReport {
    #[serde(rename = "R")]
    pub r: Vec<f64>,
    #[serde(rename = "Rhat")]
    pub rhat: Vec<f64>,
    #[serde(rename = "Rbar")]
    pub rbar: Vec<f64>,
    #[serde(rename = "Rtilde")]
    pub rtilde: Vec<f64>,
}

/// Full analysis of one correlation matrix.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub n: usize,
    pub r1: f64,
    pub r2: f64,
    pub r_inf: f64,
    #[serde(rename = "det_R")]
    pub det_r: f64,
    #[serde(rename = "det_Rtilde")]
    pub det_rtilde: f64,
    #[serde(rename = "det_Rhat")]
    pub det_rhat: f64,
    #[serde(rename = "det_Rbar")]
    pub det_rbar: f64,
    pub olkin_holds: bool,
    pub sandwich_holds: bool,
    pub improves_olkin: bool,
    pub theorem1: Theorem1Summary,
    pub spectra: SpectraReport,
}

fn min_slack(left: &MajorizationVerdict, right: &MajorizationVerdict) -> Option<f64> {
    left.slacks
        .iter()
        .chain(right.slacks.iter())
        .copied()
        .min_by(f64::total_cmp)
}

/// Run the full analysis: bounds report plus the majorization verdicts and
/// all four spectra.
pub fn analyze(r: &CorrelationMatrix, tol: f64) -> Result<Report> {
    let b: BoundsReport = bounds::bounds_report_with_tol(r, tol);
    let (left, right) = majorization::verify_theorem1(r, tol)?;
    let n = r.n();
    let spectra = SpectraReport {
        r: r.spectrum(SortOrder::Ascending)?.values().to_vec(),
        rhat: corr::equicorrelation_spectrum(n, b.stats.r2)?
            .values()
            .to_vec(),
        rbar: corr::equicorrelation_spectrum(n, -b.stats.r2)?
            .values()
            .to_vec(),
        rtilde: corr::equicorrelation_spectrum(n, b.stats.r1)?
            .values()
            .to_vec(),
    };
    Ok(Report {
        n,
        r1: b.stats.r1,
        r2: b.stats.r2,
        r_inf: b.stats.r_inf,
        det_r: b.det_r,
        det_rtilde: b.det_rtilde,
        det_rhat: b.det_rhat,
        det_rbar: b.det_rbar,
        olkin_holds: b.olkin_holds,
        sandwich_holds: b.sandwich_holds,
        improves_olkin: b.improves_olkin,
        theorem1: Theorem1Summary {
            left_holds: left.holds,
            right_holds: right.holds,
            min_slack: min_slack(&left, &right),
        },
        spectra,
    })
}

impl Report {
    /// True when every property the bounds guarantee actually held.
    pub fn guaranteed_properties_hold(&self) -> bool {
        self.olkin_holds
            && self.sandwich_holds
            && self.theorem1.left_holds
            && self.theorem1.right_holds
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Aligned plain-text table.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let mut row = |k: &str, v: String| {
            out.push_str(&format!("{k:<16} {v}\n"));
        };
        row("n", self.n.to_string());
        row("r1", format!("{:.12}", self.r1));
        row("r2", format!("{:.12}", self.r2));
        row("r_inf", format!("{:.12}", self.r_inf));
        row("det R", format!("{:.12}", self.det_r));
        row("det Rtilde", format!("{:.12}", self.det_rtilde));
        row("det Rhat", format!("{:.12}", self.det_rhat));
        row("det Rbar", format!("{:.12}", self.det_rbar));
        row("olkin", verdict(self.olkin_holds));
        row("sandwich", verdict(self.sandwich_holds));
        row("improves olkin", verdict(self.improves_olkin));
        row(
            "theorem1",
            format!(
                "left {} / right {}{}",
                verdict(self.theorem1.left_holds),
                verdict(self.theorem1.right_holds),
                match self.theorem1.min_slack {
                    Some(s) => format!(" (min slack {s:.3e})"),
                    None => String::new(),
                }
            ),
        );
        row("spectrum R", format_spectrum(&self.spectra.r));
        out
    }
}

fn verdict(b: bool) -> String {
    if b {
        "holds".into()
    } else {
        "VIOLATED".into()
    }
}

fn format_spectrum(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{v:.9}")).collect();
    parts.join(", ")
}
