use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Computed and reported, but not asserted.
    Info,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub check: String,
    pub status: Status,
    pub detail: String,
}

/// Ordered list of check outcomes. Rendering is deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub outcomes: Vec<Outcome>,
}

/// Witnesses kept per failing check.
const MAX_WITNESSES: usize = 4;

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.outcomes.push(Outcome {
            check: check.into(),
            status,
            detail: detail.into(),
        });
    }

    pub fn pass(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.push(check, Status::Pass, detail);
    }

    pub fn fail(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.push(check, Status::Fail, detail);
    }

    pub fn info(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.push(check, Status::Info, detail);
    }

    /// Records one outcome from a list of witnesses: pass when empty.
    pub fn record(&mut self, check: &str, witnesses: Vec<String>) {
        if witnesses.is_empty() {
            self.pass(check, "");
        } else {
            let n = witnesses.len();
            let mut detail: Vec<String> = witnesses.into_iter().take(MAX_WITNESSES).collect();
            if n > MAX_WITNESSES {
                detail.push(format!("... {} more", n - MAX_WITNESSES));
            }
            self.fail(check, detail.join("; "));
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.outcomes.extend(other.outcomes);
    }

    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.status != Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&Outcome> {
        self.outcomes.iter().find(|o| o.status == Status::Fail)
    }

    pub fn failed(&self, check: &str) -> bool {
        self.outcomes
            .iter()
            .any(|o| o.status == Status::Fail && o.check == check)
    }

    pub fn status_of(&self, check: &str) -> Option<Status> {
        self.outcomes
            .iter()
            .find(|o| o.check == check)
            .map(|o| o.status)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            if o.detail.is_empty() {
                writeln!(f, "{} {}", o.status, o.check)?;
            } else {
                writeln!(f, "{} {}: {}", o.status, o.check, o.detail)?;
            }
        }
        Ok(())
    }
}
