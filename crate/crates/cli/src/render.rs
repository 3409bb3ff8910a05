//! Report structures shared by the text and JSON output modes. The JSON
//! mode serializes these structs directly, so both modes always carry the
//! same numbers.

use serde::Serialize;
use widegraph_core::Matrix;

/// A matrix with optional row labels, rendered exactly.
#[derive(Debug, Serialize)]
pub struct MatrixReport {
    pub rows: usize,
    pub cols: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row_labels: Option<Vec<String>>,
    pub entries: Vec<Vec<String>>,
}

impl MatrixReport {
    pub fn new(m: &Matrix) -> Self {
        MatrixReport {
            rows: m.rows(),
            cols: m.cols(),
            row_labels: None,
            entries: m.entry_strings(),
        }
    }

    pub fn with_row_labels(m: &Matrix, labels: Vec<String>) -> Self {
        MatrixReport {
            rows: m.rows(),
            cols: m.cols(),
            row_labels: Some(labels),
            entries: m.entry_strings(),
        }
    }

    /// Appends the matrix block under a heading, entries right-aligned.
    pub fn render(&self, heading: &str, out: &mut String) {
        out.push_str(&format!("{heading} ({} x {}):\n", self.rows, self.cols));
        let label_width = self
            .row_labels
            .as_ref()
            .map(|ls| ls.iter().map(|l| l.len()).max().unwrap_or(0))
            .unwrap_or(0);
        let mut widths = vec![0usize; self.cols];
        for row in &self.entries {
            for (c, s) in row.iter().enumerate() {
                widths[c] = widths[c].max(s.len());
            }
        }
        if self.rows == 0 {
            out.push_str("  (no rows)\n");
            return;
        }
        for (r, row) in self.entries.iter().enumerate() {
            out.push_str("  ");
            if let Some(labels) = &self.row_labels {
                out.push_str(&format!("{:<label_width$}  ", labels[r]));
            }
            if row.is_empty() {
                out.push_str("(no columns)");
            }
            for (c, s) in row.iter().enumerate() {
                if c > 0 {
                    out.push(' ');
                }
                out.push_str(&format!("{:>width$}", s, width = widths[c]));
            }
            out.push('\n');
        }
    }
}

/// One named check with its outcome.
#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
}

pub fn render_checks(checks: &[Check], out: &mut String) {
    out.push_str("checks:\n");
    for check in checks {
        out.push_str(&format!(
            "  {}: {}\n",
            check.name,
            if check.ok { "ok" } else { "FAILED" }
        ));
    }
}
