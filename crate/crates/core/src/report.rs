use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIP")]
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

/// Accumulates individual checks. A skip reason wins over failures; the
/// theorems being audited are conditional.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub skipped: Option<String>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn skipped(reason: impl Into<String>) -> Report {
        Report { skipped: Some(reason.into()), ..Report::default() }
    }

    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok {
            self.failures.push(msg());
        }
        ok
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.checked += 1;
        self.failures.push(msg.into());
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    pub fn skip(&mut self, reason: impl Into<String>) {
        if self.skipped.is_none() {
            self.skipped = Some(reason.into());
        }
    }

    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
        if self.skipped.is_none() {
            self.skipped = other.skipped;
        }
    }

    /// Like [`absorb`](Self::absorb), prefixing each failure with `scope`.
    pub fn absorb_scoped(&mut self, scope: &str, other: Report) {
        self.checked += other.checked;
        self.failures.extend(other.failures.into_iter().map(|f| format!("{scope}: {f}")));
        self.notes.extend(other.notes);
        if let (None, Some(s)) = (&self.skipped, other.skipped) {
            self.skipped = Some(format!("{scope}: {s}"));
        }
    }

    pub fn status(&self) -> Status {
        if self.skipped.is_some() {
            Status::Skip
        } else if self.failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    /// One-line summary: the skip reason, the first failure, or the notes.
    pub fn detail(&self) -> String {
        if let Some(s) = &self.skipped {
            return format!("hypotheses unmet: {s}");
        }
        if let Some(first) = self.failures.first() {
            let more = self.failures.len() - 1;
            return if more > 0 { format!("{first} (+{more} more)") } else { first.clone() };
        }
        let mut d = format!("{} checks", self.checked);
        for n in &self.notes {
            d.push_str("; ");
            d.push_str(n);
        }
        d
    }
}
