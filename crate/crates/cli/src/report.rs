use std::fmt::Write as _;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

/// Result of one command: echoed inputs, results, checks and provenance.
#[derive(Debug, Default)]
pub struct Report {
    command: String,
    inputs: Vec<(String, String)>,
    results: Vec<(String, String)>,
    checks: Vec<(String, bool)>,
    provenance: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            ..Report::default()
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.push((key.to_string(), value.to_string()));
        self
    }

    pub fn result(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.results.push((key.to_string(), value.to_string()));
        self
    }

    pub fn check(&mut self, name: &str, ok: bool) -> bool {
        self.checks.push((name.to_string(), ok));
        ok
    }

    pub fn provenance(&mut self, note: &str) -> &mut Self {
        self.provenance.push(note.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Machine => self.render_machine(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "{k}: {v}");
        }
        if !self.inputs.is_empty() {
            out.push('\n');
        }
        for (k, v) in &self.results {
            if v.contains('\n') {
                let _ = writeln!(out, "{k}:");
                for line in v.lines() {
                    let _ = writeln!(out, "  {line}");
                }
            } else {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
        if !self.checks.is_empty() {
            out.push('\n');
        }
        for (name, ok) in &self.checks {
            let _ = writeln!(out, "[{}] {name}", if *ok { "PASS" } else { "FAIL" });
        }
        for note in &self.provenance {
            let _ = writeln!(out, "replays: {note}");
        }
        let _ = writeln!(out, "verdict: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }

    fn render_machine(&self) -> String {
        let mut out = String::new();
        let flat = |v: &str| v.replace('\n', "|");
        let _ = writeln!(out, "command={}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "input.{k}={}", flat(v));
        }
        for (k, v) in &self.results {
            let _ = writeln!(out, "result.{k}={}", flat(v));
        }
        for (name, ok) in &self.checks {
            let _ = writeln!(out, "check.{name}={}", if *ok { "PASS" } else { "FAIL" });
        }
        for (i, note) in self.provenance.iter().enumerate() {
            let _ = writeln!(out, "provenance.{i}={note}");
        }
        let _ = writeln!(out, "verdict={}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}
