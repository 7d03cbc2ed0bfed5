//! Report assembly and rendering for the CLI: text output prints floats to
//! nine significant digits; JSON output uses exact float representations so
//! reports round-trip byte-identically.

use serde::{Deserialize, Serialize};

use crate::complex::{Diagnostics, Simplex};
use crate::criteria::{self, CriterionReport, ScanReport, STRICT_MARGIN};

/// Formats a float to nine significant digits, fixed notation where
/// reasonable and scientific otherwise.
pub fn fmt_sig(value: f64) -> String {
    if value == 0.0 {
        return "0.00000000".to_string();
    }
    if !value.is_finite() {
        return format!("{value}");
    }
    let exponent = value.abs().log10().floor() as i32;
    if (-4..9).contains(&exponent) {
        let decimals = (8 - exponent).max(0) as usize;
        format!("{value:.decimals$}")
    } else {
        format!("{value:.8e}")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidateOutput {
    pub name: String,
    pub diagnostics: Diagnostics,
    pub valid: bool,
}

impl ValidateOutput {
    pub fn new(name: String, diagnostics: Diagnostics) -> Self {
        let valid = diagnostics.links_ok();
        ValidateOutput {
            name,
            diagnostics,
            valid,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckOutput {
    pub name: String,
    pub report: CriterionReport,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolygonOutput {
    pub m: u32,
    pub s: u32,
    pub t: u32,
    pub lambda: f64,
    /// λ − 1/2, the shift used on the links of a 2-complex.
    pub lambda_bar: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LyonsOutput {
    /// Link gaps: complete bipartite, projective plane s = 5, hexagon s = t = 5.
    pub lambda: [f64; 3],
    pub lambda_bar: [f64; 3],
    /// S values of the three edges of the fundamental triangle.
    pub s_values: [f64; 3],
    /// The worst edge margin; negative, so the edge criterion fails.
    pub zuk_margin: f64,
    pub zuk_pass: bool,
    pub thm1_sum_margin: f64,
    pub thm1_product_margin: f64,
    pub thm1_pass: bool,
    pub verdict: String,
}

/// The worked GAB example: vertex links are a complete bipartite graph, the
/// order-5 projective plane, and the (5,5) generalized hexagon. The edge
/// criterion fails while the triangle criterion passes.
pub fn lyons_report() -> LyonsOutput {
    let lambda = [
        1.0,
        1.0 - 5f64.sqrt() / 6.0,
        1.0 - 15f64.sqrt() / 6.0,
    ];
    let lambda_bar = [lambda[0] - 0.5, lambda[1] - 0.5, lambda[2] - 0.5];
    let s_values = criteria::edge_s_values(lambda_bar);
    let zuk_margin = criteria::zuk_margins(lambda)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let zuk_pass = zuk_margin > STRICT_MARGIN;
    let (thm1_sum_margin, thm1_product_margin) = criteria::thm1_margins(lambda_bar);
    let thm1_pass = thm1_sum_margin > STRICT_MARGIN && thm1_product_margin > STRICT_MARGIN;
    let verdict = if thm1_pass { "PASS" } else { "FAIL" }.to_string();
    LyonsOutput {
        lambda,
        lambda_bar,
        s_values,
        zuk_margin,
        zuk_pass,
        thm1_sum_margin,
        thm1_product_margin,
        thm1_pass,
        verdict,
    }
}

pub fn render_validate(out: &ValidateOutput) -> String {
    let d = &out.diagnostics;
    let mut text = String::new();
    text.push_str(&format!("complex: {}\n", out.name));
    text.push_str(&format!("dimension: {}\n", d.dim));
    text.push_str(&format!(
        "faces by dimension: {}\n",
        d.face_counts
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    text.push_str(&format!(
        "purity: {}\n",
        if d.purity_violations.is_empty() {
            "ok".to_string()
        } else {
            format!("VIOLATED at {}", join_simplices(&d.purity_violations))
        }
    ));
    text.push_str(&format!(
        "complex connected: {}\n",
        if d.complex_connected { "yes" } else { "no" }
    ));
    text.push_str(&format!(
        "links connected: {}\n",
        if d.disconnected_links.is_empty() {
            "ok".to_string()
        } else {
            format!("VIOLATED at {}", join_simplices(&d.disconnected_links))
        }
    ));
    text.push_str(&format!(
        "weight identity: {}\n",
        if d.weight_identity_violations.is_empty() {
            "ok".to_string()
        } else {
            format!(
                "VIOLATED at {}",
                d.weight_identity_violations
                    .iter()
                    .map(|(k, l, s)| format!("(k={k},l={l},{s})"))
                    .collect::<Vec<_>>()
                    .join(" ")
            )
        }
    ));
    text.push_str(&format!(
        "result: {}\n",
        if out.valid { "VALID" } else { "INVALID" }
    ));
    text
}

fn join_simplices(simplices: &[Simplex]) -> String {
    simplices
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_check(out: &CheckOutput) -> String {
    let r = &out.report;
    let mut text = String::new();
    text.push_str(&format!("complex: {}\n", out.name));
    text.push_str(&format!("criterion: {}\n", r.criterion));
    for flag in &r.flags {
        text.push_str(&format!("note: {flag}\n"));
    }
    text.push_str(&format!("anchors: {}\n", r.per_simplex.len()));
    for anchor in &r.per_simplex {
        let margins = anchor
            .margins
            .iter()
            .map(|m| fmt_sig(*m))
            .collect::<Vec<_>>()
            .join(" ");
        text.push_str(&format!(
            "  {}  margin {}  {}\n",
            anchor.anchor,
            margins,
            if anchor.passed { "pass" } else { "FAIL" }
        ));
    }
    match r.epsilon {
        Some(eps) => text.push_str(&format!(
            "result: {} (epsilon {})\n",
            if r.passed { "PASS" } else { "FAIL" },
            fmt_sig(eps)
        )),
        None => text.push_str(&format!(
            "result: {}\n",
            if r.passed { "PASS" } else { "FAIL" }
        )),
    }
    text
}

pub fn render_polygon(out: &PolygonOutput) -> String {
    format!(
        "generalized {}-gon with parameters ({}, {})\nlambda: {}\nlambda_bar: {}\n",
        out.m,
        out.s,
        out.t,
        fmt_sig(out.lambda),
        fmt_sig(out.lambda_bar)
    )
}

pub fn render_scan(out: &ScanReport) -> String {
    let mut text = String::new();
    text.push_str(&format!(
        "diagram labels (m12, m13, m23) = ({}, {}, {}), q up to {}\n",
        out.labels[0], out.labels[1], out.labels[2], out.q_max
    ));
    text.push_str("   q  lambda1      lambda2      lambda3      zuk   thm1\n");
    for row in &out.rows {
        text.push_str(&format!(
            "{:>4}  {:<11}  {:<11}  {:<11}  {}  {}\n",
            row.q,
            fmt_sig(row.lambdas[0]),
            fmt_sig(row.lambdas[1]),
            fmt_sig(row.lambdas[2]),
            if row.zuk_pass { "pass" } else { "FAIL" },
            if row.thm1_pass { "pass" } else { "FAIL" }
        ));
    }
    text.push_str(&format!(
        "minimal q (edge criterion): {}\n",
        out.zuk_minimal_q
            .map_or("none".to_string(), |q| q.to_string())
    ));
    text.push_str(&format!(
        "minimal q (triangle criterion): {}\n",
        out.thm1_minimal_q
            .map_or("none".to_string(), |q| q.to_string())
    ));
    text.push_str(&format!("note: {}\n", out.disclaimer));
    text
}

pub fn render_lyons(out: &LyonsOutput) -> String {
    let mut text = String::new();
    text.push_str("built-in example: rank-3 GAB with links K_{s,t}, PG(2,5), GH(5,5)\n");
    for (i, (l, b)) in out.lambda.iter().zip(&out.lambda_bar).enumerate() {
        text.push_str(&format!(
            "link {}: lambda {}  lambda_bar {}\n",
            i + 1,
            fmt_sig(*l),
            fmt_sig(*b)
        ));
    }
    text.push_str(&format!(
        "edge criterion: worst margin {} -> {}\n",
        fmt_sig(out.zuk_margin),
        if out.zuk_pass { "pass" } else { "FAIL" }
    ));
    text.push_str(&format!(
        "triangle criterion: sum margin {}  product margin {} -> {}\n",
        fmt_sig(out.thm1_sum_margin),
        fmt_sig(out.thm1_product_margin),
        if out.thm1_pass { "pass" } else { "FAIL" }
    ));
    text.push_str(&format!("verdict: {}\n", out.verdict));
    text
}
