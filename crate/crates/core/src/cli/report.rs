//! Fixed-format reports: a human-readable table followed by a flat
//! `key=value` block for scripts and tests.

use std::fmt::Display;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    title: String,
    lines: Vec<String>,
    keys: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str, subject: &str) -> Self {
        Self {
            title: format!("== {command}: {subject} =="),
            ..Self::default()
        }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    /// `label ........ value`, aligned.
    pub fn row(&mut self, label: &str, value: impl Display) {
        self.lines.push(format!("{label:<28} {value}"));
    }

    pub fn key(&mut self, key: impl Into<String>, value: impl Display) {
        self.keys.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.keys
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.title);
        out.push('\n');
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str("--\n");
        for (k, v) in &self.keys {
            out.push_str(&format!("{k}={v}\n"));
        }
        out
    }
}

/// Reads a `key=value` block back out of rendered output.
pub fn parse_keys(output: &str) -> Vec<(String, String)> {
    output
        .lines()
        .filter_map(|l| l.split_once('='))
        .filter(|(k, _)| !k.is_empty() && !k.contains(' '))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}
