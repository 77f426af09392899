//! Small labeled-table renderer for command output: aligned text for
//! humans, comma-separated for pipelines, numeric cells at a caller-chosen
//! number of significant digits.

use std::fmt::Write as _;

/// One table cell: free text or a number formatted at render time.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Num(f64),
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Formats `value` with `sig` significant digits in plain positional
/// notation (no exponent), e.g. `fmt_sig(0.7652855797503654, 6)` is
/// `"0.765286"`.
pub fn fmt_sig(value: f64, sig: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return value.to_string();
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - magnitude).max(0) as usize;
    format!("{value:.decimals$}")
}

/// Headers plus rows of cells; every row must match the header arity.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultTable {
    headers: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl ResultTable {
    pub fn new<S: Into<String>>(headers: Vec<S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.headers.len(),
            "row arity must match the header"
        );
        self.rows.push(row);
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Column-aligned text; numeric cells right-aligned, text left-aligned.
    pub fn render(&self, sig: usize) -> String {
        let formatted: Vec<Vec<(String, bool)>> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| match cell {
                        Cell::Text(s) => (s.clone(), false),
                        Cell::Num(v) => (fmt_sig(*v, sig), true),
                    })
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = self
            .headers
            .iter()
            .enumerate()
            .map(|(c, h)| {
                formatted
                    .iter()
                    .map(|row| row[c].0.len())
                    .chain([h.len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();

        let mut out = String::new();
        for (c, h) in self.headers.iter().enumerate() {
            if c > 0 {
                out.push_str("  ");
            }
            let _ = write!(out, "{h:<width$}", width = widths[c]);
        }
        out.push('\n');
        for (c, w) in widths.iter().enumerate() {
            if c > 0 {
                out.push_str("  ");
            }
            out.push_str(&"-".repeat(*w));
        }
        out.push('\n');
        for row in &formatted {
            for (c, (text, numeric)) in row.iter().enumerate() {
                if c > 0 {
                    out.push_str("  ");
                }
                if *numeric {
                    let _ = write!(out, "{text:>width$}", width = widths[c]);
                } else {
                    let _ = write!(out, "{text:<width$}", width = widths[c]);
                }
            }
            // no trailing padding on the last column
            while out.ends_with(' ') {
                out.pop();
            }
            out.push('\n');
        }
        out
    }

    /// Comma-separated text with a header line; cells containing commas,
    /// quotes, or newlines are quoted.
    pub fn render_csv(&self, sig: usize) -> String {
        fn field(s: &str) -> String {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        }
        let mut out = self
            .headers
            .iter()
            .map(|h| field(h))
            .collect::<Vec<_>>()
            .join(",");
        out.push('\n');
        for row in &self.rows {
            let line = row
                .iter()
                .map(|cell| match cell {
                    Cell::Text(s) => field(s),
                    Cell::Num(v) => fmt_sig(*v, sig),
                })
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0, 6), "0");
        assert_eq!(fmt_sig(0.6, 6), "0.600000");
        assert_eq!(fmt_sig(0.81, 6), "0.810000");
        assert_eq!(fmt_sig(0.7652855797503654, 6), "0.765286");
        assert_eq!(fmt_sig(0.7652855797503654, 12), "0.765285579750");
        assert_eq!(fmt_sig(123.456, 3), "123");
        assert_eq!(fmt_sig(0.000052, 3), "0.0000520");
        assert_eq!(fmt_sig(-0.25, 4), "-0.2500");
        assert_eq!(fmt_sig(64.0, 6), "64.0000");
    }

    #[test]
    fn aligned_rendering() {
        let mut t = ResultTable::new(vec!["alternative", "probability"]);
        t.push(vec!["A".into(), 0.6.into()]);
        t.push(vec!["(no choice)".into(), 0.0.into()]);
        let text = t.render(6);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "alternative  probability");
        assert_eq!(lines[1], "-----------  -----------");
        assert_eq!(lines[2], "A               0.600000");
        assert_eq!(lines[3], "(no choice)            0");
    }

    #[test]
    fn csv_rendering_and_escaping() {
        let mut t = ResultTable::new(vec!["label", "value"]);
        t.push(vec!["plain".into(), 0.5.into()]);
        t.push(vec!["with, comma".into(), 1.0.into()]);
        t.push(vec!["with \"quote\"".into(), 2.0.into()]);
        let csv = t.render_csv(6);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "label,value");
        assert_eq!(lines[1], "plain,0.500000");
        assert_eq!(lines[2], "\"with, comma\",1.00000");
        assert_eq!(lines[3], "\"with \"\"quote\"\"\",2.00000");
    }

    #[test]
    #[should_panic(expected = "row arity")]
    fn arity_mismatch_is_a_programming_error() {
        let mut t = ResultTable::new(vec!["a", "b"]);
        t.push(vec!["only one".into()]);
    }
}
