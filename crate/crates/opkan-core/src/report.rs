//! Check reports shared by the verification sweeps and the CLI.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "FAIL"),
            Status::Skipped => write!(f, "skipped"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    pub witness: Option<String>,
    /// Milliseconds, filled in by the harness; zero inside the library.
    pub duration_ms: u64,
}

impl CheckEntry {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckEntry { name: name.into(), status: Status::Pass, witness: None, duration_ms: 0 }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckEntry {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
            duration_ms: 0,
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckEntry {
            name: name.into(),
            status: Status::Skipped,
            witness: Some(reason.into()),
            duration_ms: 0,
        }
    }

    pub fn of(name: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        if ok {
            CheckEntry::pass(name)
        } else {
            CheckEntry::fail(name, witness)
        }
    }
}

/// Outcome of one verification suite: named checks with statuses and
/// witnesses, plus free-form header notes.
#[derive(Debug, Clone)]
pub struct Report {
    pub suite: String,
    pub params: Vec<(String, String)>,
    pub notes: Vec<String>,
    pub entries: Vec<CheckEntry>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), params: Vec::new(), notes: Vec::new(), entries: Vec::new() }
    }

    pub fn param(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: impl Into<String>) {
        self.push(CheckEntry::of(name, ok, witness));
    }

    pub fn passed(&self) -> usize {
        self.entries.iter().filter(|e| e.status == Status::Pass).count()
    }

    pub fn failed(&self) -> usize {
        self.entries.iter().filter(|e| e.status == Status::Fail).count()
    }

    pub fn skipped(&self) -> usize {
        self.entries.iter().filter(|e| e.status == Status::Skipped).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    /// Appends another report's entries and notes, prefixing entry names.
    pub fn absorb(&mut self, other: Report) {
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
        let prefix = other.suite;
        for mut e in other.entries {
            e.name = alloc::format!("{prefix}/{}", e.name);
            self.entries.push(e);
        }
    }
}
