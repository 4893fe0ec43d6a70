//! Identity-check reports produced by the symbolic verification layer.

use crate::jsonfmt::Json;
use crate::weyl::OperatorExpr;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Informational entry (e.g. a residual reported for traceability);
    /// never counts against `Report::passed`.
    Info,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Info => "info",
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub id: String,
    pub status: CheckStatus,
    /// Residual expression text on failure (or for info entries).
    pub residual: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub title: String,
    pub checks: Vec<IdentityCheck>,
}

impl Report {
    pub fn new(title: &str) -> Self {
        Report { title: title.to_string(), checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    /// Assert lhs == rhs as normal forms; failures carry the residual.
    pub fn check_equal(&mut self, id: &str, lhs: &OperatorExpr, rhs: &OperatorExpr) {
        let diff = lhs.sub(rhs);
        if diff.is_zero() {
            self.pass(id);
        } else {
            self.checks.push(IdentityCheck {
                id: id.to_string(),
                status: CheckStatus::Fail,
                residual: Some(diff.to_text()),
            });
        }
    }

    /// Assert the expression is NOT identically zero (witness checks).
    pub fn check_nonzero(&mut self, id: &str, expr: &OperatorExpr) {
        if expr.is_zero() {
            self.checks.push(IdentityCheck {
                id: id.to_string(),
                status: CheckStatus::Fail,
                residual: Some("expression is identically zero".into()),
            });
        } else {
            self.checks.push(IdentityCheck {
                id: id.to_string(),
                status: CheckStatus::Pass,
                residual: Some(expr.to_text()),
            });
        }
    }

    pub fn check_zero(&mut self, id: &str, expr: &OperatorExpr) {
        self.check_equal(id, expr, &OperatorExpr::zero());
    }

    pub fn pass(&mut self, id: &str) {
        self.checks.push(IdentityCheck {
            id: id.to_string(),
            status: CheckStatus::Pass,
            residual: None,
        });
    }

    pub fn info(&mut self, id: &str, text: &str) {
        self.checks.push(IdentityCheck {
            id: id.to_string(),
            status: CheckStatus::Info,
            residual: Some(text.to_string()),
        });
    }

    pub fn to_json(&self) -> Json {
        let checks = self
            .checks
            .iter()
            .map(|c| {
                let mut obj = Json::object();
                obj.set("id", Json::Str(c.id.clone()));
                obj.set("status", Json::Str(c.status.as_str().to_string()));
                obj.set(
                    "residual",
                    match &c.residual {
                        Some(r) => Json::Str(r.clone()),
                        None => Json::Null,
                    },
                );
                obj
            })
            .collect();
        let mut obj = Json::object();
        obj.set("title", Json::Str(self.title.clone()));
        obj.set("passed", Json::Bool(self.passed()));
        obj.set("checks", Json::Array(checks));
        obj
    }
}
