//! Check results shared by every suite.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(rename = "paperAnchor")]
    pub anchor: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub details: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub weight: Option<[u32; 3]>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a residual; passes iff `residual <= tol` (use `tol = 0` for
    /// exact checks).
    pub fn residual(&mut self, name: &str, anchor: &str, residual: f64, tol: f64, details: impl Into<String>) -> &mut Check {
        let status = if residual.is_finite() && residual <= tol { Status::Pass } else { Status::Fail };
        self.push(Check {
            name: name.into(),
            anchor: anchor.into(),
            status,
            residual: Some(residual),
            details: details.into(),
            weight: None,
        })
    }

    /// Records a boolean outcome without a residual.
    pub fn verdict(&mut self, name: &str, anchor: &str, ok: bool, details: impl Into<String>) -> &mut Check {
        self.push(Check {
            name: name.into(),
            anchor: anchor.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: None,
            details: details.into(),
            weight: None,
        })
    }

    pub fn error(&mut self, name: &str, anchor: &str, details: impl Into<String>) -> &mut Check {
        self.push(Check {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::Error,
            residual: None,
            details: details.into(),
            weight: None,
        })
    }

    fn push(&mut self, check: Check) -> &mut Check {
        self.checks.push(check);
        self.checks.last_mut().expect("just pushed")
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    /// Stable order: by name, then weight.
    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name).then(a.weight.cmp(&b.weight)));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn has_errors(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Error)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status != Status::Pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// All checks with the given name (one per weight for blockwise suites).
    pub fn named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.checks.iter().filter(move |c| c.name == name)
    }

    /// Largest residual among checks with the given name.
    pub fn max_residual(&self, name: &str) -> Option<f64> {
        self.named(name).filter_map(|c| c.residual).reduce(f64::max)
    }
}

impl Check {
    pub fn at(&mut self, weight: [u32; 3]) -> &mut Self {
        self.weight = Some(weight);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_tolerance() {
        let mut r = CheckReport::new();
        r.residual("b", "x", 0.0, 0.0, "");
        r.residual("a", "x", 1e-3, 1e-8, "");
        assert!(!r.all_pass());
        r.sort();
        assert_eq!(r.checks[0].name, "a");
        assert_eq!(r.checks[0].status, Status::Fail);
        assert_eq!(r.checks[1].status, Status::Pass);
    }

    #[test]
    fn serializes_anchor_key() {
        let mut r = CheckReport::new();
        r.verdict("n", "anchor", true, "ok");
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"paperAnchor\":\"anchor\""));
        assert!(json.contains("\"status\":\"pass\""));
    }
}
