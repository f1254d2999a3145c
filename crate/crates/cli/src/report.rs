//! Deterministic plain-text and JSON reports.

use serde::Serialize;
use sha2::{Digest, Sha256};

use binfty_core::graded::length_one_part;
use binfty_core::{BInfinity, GradedSpace, LawReport, MultiMap};

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input_sha256: String,
    pub sections: Vec<Section>,
    pub laws: Vec<LawReport>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str, input: &[u8]) -> Self {
        Report {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            input_sha256: hex::encode(Sha256::digest(input)),
            sections: Vec::new(),
            laws: Vec::new(),
            passed: true,
        }
    }

    pub fn section(&mut self, title: impl Into<String>, lines: Vec<String>) {
        self.sections.push(Section {
            title: title.into(),
            lines,
        });
    }

    pub fn law(&mut self, report: LawReport) {
        self.passed &= report.passed();
        self.laws.push(report);
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "{} {}\ncommand: {}\ninput sha256: {}\n",
            self.tool, self.version, self.command, self.input_sha256
        );
        for s in &self.sections {
            out.push_str(&format!("\n== {} ==\n", s.title));
            for line in &s.lines {
                out.push_str(line);
                out.push('\n');
            }
        }
        if !self.laws.is_empty() {
            out.push_str("\n== laws ==\n");
            for l in &self.laws {
                out.push_str(&l.to_string());
            }
        }
        out.push_str(&format!("\nstatus: {}\n", if self.passed { "pass" } else { "violation" }));
        out
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

/// One line per nonzero entry, inputs in length-then-lexicographic order.
pub fn map_lines(space: &GradedSpace, label: &str, m: &MultiMap) -> Vec<String> {
    m.table()
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(w, v)| format!("{label}{} = {}", space.render_word(&w.0), space.render_vector(&length_one_part(v))))
        .collect()
}

/// Tables of every `m_n` and `m_{i,j}` up to `cap`, skipping zero maps.
pub fn structure_sections(report: &mut Report, s: &BInfinity, cap: usize) {
    let sp = s.space();
    let mut a_lines = Vec::new();
    for n in 1..=cap {
        a_lines.extend(map_lines(sp, &format!("m_{n}"), &s.a.m(n)));
    }
    if a_lines.is_empty() {
        a_lines.push("all zero".into());
    }
    report.section("a-infinity maps", a_lines);
    let mut b_lines = Vec::new();
    for total in 2..=cap {
        for i in 1..total {
            let j = total - i;
            b_lines.extend(map_lines(sp, &format!("m_{{{i},{j}}}"), &s.b.m(i, j)));
        }
    }
    if b_lines.is_empty() {
        b_lines.push("all zero".into());
    }
    report.section("multibrace maps", b_lines);
}
