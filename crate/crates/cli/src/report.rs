//! Human-readable and JSON renderings of a pipeline run.

use serde::Serialize;

use luroth_core::exprparse::{format_ratfunc, format_ypoly};
use luroth_core::luroth::{Classification, LurothResult, SubfieldPresentation};
use luroth_core::membership::MembershipStatus;

/// Symbol used for the univariate representations `R_i`.
pub const REP_VAR: &str = "s";

#[derive(Debug, Serialize)]
pub struct MembershipCheck {
    pub status: &'static str,
    pub degree: u32,
    pub slack_consumed: u32,
}

#[derive(Debug, Serialize)]
pub struct Checks {
    pub d_eq_cf: Option<bool>,
    pub membership: Vec<MembershipCheck>,
    pub jacobian_agreement: Option<bool>,
    pub jacobian_trdeg: Option<usize>,
    pub vanishing: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct StageError {
    pub stage: &'static str,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub field: String,
    pub vars: Vec<String>,
    pub gens: Vec<String>,
    pub classification: Option<&'static str>,
    /// Reduced basis of the elimination ideal, in tag variables `y_i`.
    pub basis: Vec<String>,
    pub v: Option<String>,
    #[serde(rename = "F")]
    pub f: Option<String>,
    pub c: Option<String>,
    pub reps: Vec<String>,
    pub checks: Checks,
    pub limits_hit: bool,
    pub error: Option<StageError>,
}

impl SolveReport {
    pub fn new(pres: &SubfieldPresentation) -> Self {
        SolveReport {
            field: pres.field().to_string(),
            vars: pres.x_vars().to_vec(),
            gens: pres.generators().iter().map(|g| format_ratfunc(g, pres.x_vars())).collect(),
            classification: None,
            basis: Vec::new(),
            v: None,
            f: None,
            c: None,
            reps: Vec::new(),
            checks: Checks {
                d_eq_cf: None,
                membership: Vec::new(),
                jacobian_agreement: None,
                jacobian_trdeg: None,
                vanishing: None,
            },
            limits_hit: false,
            error: None,
        }
    }

    pub fn fill(&mut self, pres: &SubfieldPresentation, res: &LurothResult) {
        let tags = pres.tag_names();
        let x = pres.x_vars();
        let rep_names = [REP_VAR.to_string()];
        self.classification = Some(res.classification.label());
        self.basis = match &res.classification {
            Classification::Trdeg0 => Vec::new(),
            Classification::Trdeg1(g) => vec![format_ypoly(g, &tags, x)],
            Classification::TrdegAtLeast2(gs) => gs.iter().map(|g| format_ypoly(g, &tags, x)).collect(),
        };
        self.checks.vanishing = Some(res.vanishing);
        self.checks.jacobian_trdeg = res.jacobian_trdeg;
        self.checks.jacobian_agreement = res.jacobian_agreement();
        if let Some(cert) = &res.certificate {
            self.v = Some(format_ratfunc(&cert.v, x));
            self.f = Some(format_ypoly(&cert.primitive, &tags, x));
            self.c = Some(cert.c.to_string());
            self.checks.d_eq_cf = Some(true);
            self.reps = cert.reps().iter().map(|r| format_ratfunc(r, &rep_names)).collect();
            self.checks.membership = cert
                .membership
                .iter()
                .map(|a| MembershipCheck {
                    status: match a.status {
                        MembershipStatus::Member(_) => "member",
                        MembershipStatus::NotCertified(_) => "not_certified",
                        MembershipStatus::NotMember => "not_member",
                    },
                    degree: a.degree_used,
                    slack_consumed: a.slack_consumed(),
                })
                .collect();
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("field: {}", self.field));
        line(format!("vars: {}", self.vars.join(", ")));
        for (i, g) in self.gens.iter().enumerate() {
            line(format!("f{} = {}", i + 1, g));
        }
        if let Some(class) = self.classification {
            line(format!("classification: {class}"));
        }
        if self.classification == Some("trdeg >= 2") {
            line("basis witness:".into());
            for g in &self.basis {
                line(format!("  {g}"));
            }
        }
        if let Some(v) = &self.v {
            line(format!("v = {v}"));
            line(format!("F = {}", self.f.as_deref().unwrap_or("")));
            line(format!("c = {}", self.c.as_deref().unwrap_or("")));
            for (i, r) in self.reps.iter().enumerate() {
                line(format!("R{}({REP_VAR}) = {r}", i + 1));
            }
        }
        let mut checks = Vec::new();
        if let Some(ok) = self.checks.d_eq_cf {
            checks.push(format!("D = cF {}", verdict(ok)));
        }
        if !self.checks.membership.is_empty() {
            let all = self.checks.membership.iter().all(|m| m.status == "member");
            let slack: u32 = self.checks.membership.iter().map(|m| m.slack_consumed).max().unwrap_or(0);
            let note = if slack > 0 { format!(" (slack used: {slack})") } else { String::new() };
            checks.push(format!("membership {}{note}", verdict(all)));
        }
        if let Some(ok) = self.checks.vanishing {
            checks.push(format!("vanishing {}", verdict(ok)));
        }
        match (self.checks.jacobian_agreement, self.checks.jacobian_trdeg) {
            (Some(ok), Some(t)) => checks.push(format!("jacobian rank {t} {}", if ok { "agrees" } else { "DISAGREES" })),
            _ if self.classification.is_some() => checks.push("jacobian skipped (positive characteristic)".into()),
            _ => {}
        }
        if !checks.is_empty() {
            line(format!("checks: {}", checks.join("; ")));
        }
        if let Some(e) = &self.error {
            line(format!("error in {}: {}", e.stage, e.message));
        }
        out
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

#[derive(Debug, Serialize)]
pub struct InstanceReport {
    pub index: u64,
    pub passed: bool,
    pub v: Option<String>,
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub count: u64,
    pub passed: u64,
    pub instances: Vec<InstanceReport>,
}
