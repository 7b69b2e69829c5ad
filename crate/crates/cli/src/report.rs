//! Output documents. Machine format is JSON with a stable schema
//! (`schema_version` 1); text format is an aligned human-readable rendering
//! of the same data. Timing lives in its own field so reports are otherwise
//! byte-identical across runs.

use serde::{Deserialize, Serialize};

use pinrank_core::ktheory::{KRankReport, RankMethod};
use pinrank_core::onfamily::GlRow;
use pinrank_core::partitions::PartitionCounts;
use pinrank_core::verify::CheckOutcome;

use crate::input::GroupInputDocument;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InputEcho {
    /// "builtin", "file" or "stdin".
    pub kind: String,
    /// The builtin selector or the path.
    pub spec: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub document: Option<GroupInputDocument>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportBody {
    pub main: KRankReport,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sub_reports: Vec<KRankReport>,
    /// Whether all sub-reports agree with the main ranks (when present).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub input_echo: InputEcho,
    pub report: ReportBody,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

fn method_name(m: RankMethod) -> &'static str {
    match m {
        RankMethod::ClassCount => "class_count",
        RankMethod::PincFormula => "pinc_formula",
        RankMethod::Karoubi => "karoubi",
        RankMethod::PartitionFormula => "partition_formula",
    }
}

fn render_rank_report(out: &mut String, r: &KRankReport, indent: &str) {
    out.push_str(&format!("{indent}method: {}\n", method_name(r.method)));
    out.push_str(&format!("{indent}dim V: {}\n", r.dim_v));
    if let Some(order) = r.group_order {
        out.push_str(&format!("{indent}group order: {order}\n"));
    }
    out.push_str(&format!(
        "{indent}orientation preserving: {}\n",
        if r.orientation_preserving {
            "yes"
        } else {
            "no"
        }
    ));
    if let Some(c) = &r.counts {
        out.push_str(&format!(
            "{indent}class counts: C_Grho={} C_G={} C_Krho={} C_K={}\n",
            c.c_g_rho, c.c_g, c.c_k_rho, c.c_k
        ));
    }
    out.push_str(&format!("{indent}K^0 rank: {}\n", r.rank_k0));
    out.push_str(&format!("{indent}K^1 rank: {}\n", r.rank_k1));
}

impl ReportDocument {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => machine(self),
            Format::Text => {
                let mut out = String::new();
                out.push_str(&format!("schema_version: {}\n", self.schema_version));
                out.push_str(&format!(
                    "input: {} {}\n",
                    self.input_echo.kind, self.input_echo.spec
                ));
                out.push_str("report:\n");
                render_rank_report(&mut out, &self.report.main, "  ");
                for sub in &self.report.sub_reports {
                    out.push_str(&format!("cross-check ({}):\n", method_name(sub.method)));
                    render_rank_report(&mut out, sub, "  ");
                }
                if let Some(agreement) = self.report.agreement {
                    out.push_str(&format!(
                        "agreement: {}\n",
                        if agreement { "yes" } else { "no" }
                    ));
                }
                if let Some(ms) = self.timing_ms {
                    out.push_str(&format!("timing_ms: {ms}\n"));
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub schema_version: u32,
    pub suite: String,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl VerifyDocument {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => machine(self),
            Format::Text => {
                let mut out = String::new();
                out.push_str(&format!(
                    "schema_version: {}\nsuite: {}\n",
                    self.schema_version, self.suite
                ));
                for c in &self.checks {
                    if c.passed {
                        out.push_str(&format!("PASS {:<32} {}\n", c.name, c.detail));
                    } else {
                        out.push_str(&format!("FAIL {:<32} {}\n", c.name, c.detail));
                    }
                }
                out.push_str(&format!(
                    "result: {}\n",
                    if self.passed {
                        "all checks passed"
                    } else {
                        "FAILURES"
                    }
                ));
                if let Some(ms) = self.timing_ms {
                    out.push_str(&format!("timing_ms: {ms}\n"));
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionsDocument {
    pub schema_version: u32,
    pub rows: Vec<PartitionCounts>,
}

impl PartitionsDocument {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => machine(self),
            Format::Text => {
                let mut out = String::from("   n      a_n      b_n      p_n      i_n\n");
                for r in &self.rows {
                    out.push_str(&format!(
                        "{:>4} {:>8} {:>8} {:>8} {:>8}\n",
                        r.n, r.a, r.b, r.p, r.i
                    ));
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GlTableDocument {
    pub schema_version: u32,
    pub rows: Vec<GlRow>,
}

impl GlTableDocument {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => machine(self),
            Format::Text => {
                let mut out = String::from("   n   K_0(C*_r GL(n,R))   K_1(C*_r GL(n,R))\n");
                for r in &self.rows {
                    out.push_str(&format!(
                        "{:>4}   {:<17}   {:<17}\n",
                        r.n,
                        r.k0.to_string(),
                        r.k1.to_string()
                    ));
                }
                out
            }
        }
    }
}

fn machine<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}
