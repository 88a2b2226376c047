//! Pass/fail reports produced by the verification suites.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded outcome with no claim attached.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub info: usize,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), checks: Vec::new() }
    }

    pub fn pass(&mut self, id: impl Into<String>) {
        self.checks.push(Check { id: id.into(), status: Status::Pass, witness: None });
    }

    pub fn fail(&mut self, id: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check { id: id.into(), status: Status::Fail, witness: Some(witness.into()) });
    }

    pub fn info(&mut self, id: impl Into<String>, note: impl Into<String>) {
        self.checks.push(Check { id: id.into(), status: Status::Info, witness: Some(note.into()) });
    }

    /// Records a pass, or a failure with the first witness.
    pub fn expect(&mut self, id: impl Into<String>, witness: Option<String>) {
        match witness {
            None => self.pass(id),
            Some(w) => self.fail(id, w),
        }
    }

    /// Appends another report's checks, prefixing their ids.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.id = format!("{prefix}{}", c.id);
            self.checks.push(c);
        }
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for c in &self.checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Info => s.info += 1,
            }
        }
        s
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}
