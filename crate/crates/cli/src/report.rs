//! Report formatting: aligned human-readable tables and machine-readable
//! JSON records (one record per line, fixed field order, numbers with 12
//! significant digits).

use corrkit::criteria::EqualityTag;
use corrkit::{DemeritReport, EqualityCase, GolayCertificate};

/// Formats a float with 12 significant digits, round-trip safe.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.11e}")
}

/// Incrementally built single-line JSON record with deterministic field
/// order.
pub struct JsonRecord {
    parts: Vec<String>,
}

impl JsonRecord {
    pub fn new(verb: &str) -> Self {
        let mut record = JsonRecord { parts: Vec::new() };
        record.push_str("verb", verb);
        record
    }

    fn push_raw(&mut self, key: &str, raw: &str) {
        self.parts.push(format!("\"{key}\":{raw}"));
    }

    pub fn push_num(&mut self, key: &str, x: f64) {
        self.push_raw(key, &fmt_f64(x));
    }

    pub fn push_int(&mut self, key: &str, x: u64) {
        self.push_raw(key, &x.to_string());
    }

    pub fn push_bool(&mut self, key: &str, x: bool) {
        self.push_raw(key, if x { "true" } else { "false" });
    }

    pub fn push_str(&mut self, key: &str, s: &str) {
        self.push_raw(key, &json_escape(s));
    }

    pub fn push_opt_num(&mut self, key: &str, x: Option<f64>) {
        match x {
            Some(v) => self.push_num(key, v),
            None => self.push_raw(key, "null"),
        }
    }

    pub fn finish(self) -> String {
        format!("{{{}}}", self.parts.join(","))
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Case tag in machine form plus the optional witnesses.
pub fn case_fields(case: &EqualityCase) -> (&'static str, Option<f64>, Option<f64>) {
    match case.tag {
        EqualityTag::MonomialCase => ("monomial", None, None),
        EqualityTag::LowerBoundGolay { lambda } => ("lower_bound_golay", Some(lambda), None),
        EqualityTag::UpperBound { mu } => ("upper_bound", None, Some(mu)),
        EqualityTag::Interior => ("interior", None, None),
    }
}

/// The analysis decision sat close to the tolerance boundary: a boundary
/// case whose witness residual used most of the allowance, or an interior
/// pair within ten tolerances of a bound. Reports flag these instead of
/// classifying silently.
pub fn near_boundary(report: &DemeritReport, case: &EqualityCase, tol: f64) -> bool {
    match case.tag {
        EqualityTag::Interior => report.lower_slack.min(report.upper_slack) <= 10.0 * tol,
        _ => case.residual >= tol / 10.0,
    }
}

fn row(label: &str, value: impl std::fmt::Display) -> String {
    format!("{label:<16}{value}\n")
}

/// Aligned human-readable analysis report.
pub fn human_report(
    report: &DemeritReport,
    case: &EqualityCase,
    cert: Option<&GolayCertificate>,
    tol: f64,
) -> String {
    let mut out = String::new();
    if let Some(cert) = cert {
        out.push_str(&row("length(f)", cert.lengths.0));
        out.push_str(&row("length(g)", cert.lengths.1));
    }
    out.push_str(&row("ADF(f)", report.adf_f));
    out.push_str(&row("ADF(g)", report.adf_g));
    out.push_str(&row("CDF", report.cdf));
    out.push_str(&row("PSC", report.psc));
    out.push_str(&row("lower slack", report.lower_slack));
    out.push_str(&row("upper slack", report.upper_slack));
    let (tag, lambda, mu) = case_fields(case);
    let case_text = match (lambda, mu) {
        (Some(l), _) => format!("{tag} (lambda = {l})"),
        (_, Some(m)) => format!("{tag} (mu = {m})"),
        _ => tag.to_string(),
    };
    out.push_str(&row("case", case_text));
    out.push_str(&row("case residual", case.residual));
    if let Some(cert) = cert {
        out.push_str(&row(
            "golay verdict",
            format!("{} (max residual {})", cert.verdict, cert.max_residual),
        ));
    }
    if near_boundary(report, case, tol) {
        out.push_str(&row("note", "within 10x of the tolerance boundary"));
    }
    out
}

/// Machine-readable analysis record.
pub fn json_report(
    report: &DemeritReport,
    case: &EqualityCase,
    cert: Option<&GolayCertificate>,
    tol: f64,
) -> String {
    let mut rec = JsonRecord::new("analyze");
    if let Some(cert) = cert {
        rec.push_int("len_f", cert.lengths.0 as u64);
        rec.push_int("len_g", cert.lengths.1 as u64);
    }
    rec.push_num("adf_f", report.adf_f);
    rec.push_num("adf_g", report.adf_g);
    rec.push_num("cdf", report.cdf);
    rec.push_num("psc", report.psc);
    rec.push_num("lower_slack", report.lower_slack);
    rec.push_num("upper_slack", report.upper_slack);
    let (tag, lambda, mu) = case_fields(case);
    rec.push_str("case", tag);
    rec.push_opt_num("lambda", lambda);
    rec.push_opt_num("mu", mu);
    rec.push_num("residual", case.residual);
    if let Some(cert) = cert {
        rec.push_bool("golay_verdict", cert.verdict);
        rec.push_num("golay_max_residual", cert.max_residual);
    }
    rec.push_bool("near_boundary", near_boundary(report, case, tol));
    rec.finish()
}
