use clap::ValueEnum;
use serde_json::json;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
    Latex,
}

/// A rectangular table of already-serialized cells. Matrices have no header.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub headers: Option<Vec<String>>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: Some(headers.iter().map(|h| h.to_string()).collect()), rows: Vec::new() }
    }

    pub fn matrix(rows: Vec<Vec<String>>) -> Self {
        Table { headers: None, rows }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
            Format::Latex => self.to_latex(),
        }
    }

    pub fn to_text(&self) -> String {
        let all: Vec<&Vec<String>> = self.headers.iter().chain(self.rows.iter()).collect();
        let cols = all.iter().map(|r| r.len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..cols)
            .map(|c| all.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in all {
            let cells: Vec<String> = row.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        for row in self.headers.iter().chain(self.rows.iter()) {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
    }

    pub fn to_json(&self) -> String {
        let value = match &self.headers {
            Some(h) => json!({ "columns": h, "rows": self.rows }),
            None => json!({ "rows": self.rows }),
        };
        let mut s = serde_json::to_string_pretty(&value).expect("serializes");
        s.push('\n');
        s
    }

    pub fn to_latex(&self) -> String {
        let cols = self.rows.iter().chain(self.headers.iter()).map(|r| r.len()).max().unwrap_or(1);
        let mut out = String::new();
        let bracketed = self.headers.is_none();
        if bracketed {
            out.push_str("\\left(\n");
        }
        out.push_str(&format!("\\begin{{array}}{{{}}}\n", "r".repeat(cols)));
        if let Some(h) = &self.headers {
            out.push_str(&format!("{} \\\\\n\\hline\n", h.join(" & ")));
        }
        let lines: Vec<String> =
            self.rows.iter().map(|r| r.iter().map(|c| latex_cell(c)).collect::<Vec<_>>().join(" & ")).collect();
        out.push_str(&lines.join(" \\\\\n"));
        out.push_str("\n\\end{array}\n");
        if bracketed {
            out.push_str("\\right)\n");
        }
        out
    }
}

/// `a/b` becomes `\frac{a}{b}`; other cells pass through with underscores escaped.
fn latex_cell(cell: &str) -> String {
    match cell.split_once('/') {
        Some((n, d)) if is_int(n) && is_int(d) => {
            let (sign, n) = n.strip_prefix('-').map_or(("", n), |n| ("-", n));
            format!("{sign}\\frac{{{n}}}{{{d}}}")
        }
        _ => cell.replace('_', "\\_"),
    }
}

fn is_int(s: &str) -> bool {
    let s = s.strip_prefix('-').unwrap_or(s);
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic() -> Table {
        Table::matrix(vec![vec!["1".into(), "0".into()], vec!["-1/2".into(), "3".into()]])
    }

    #[test]
    fn csv_and_text() {
        assert_eq!(cubic().to_csv(), "1,0\n-1/2,3\n");
        let mut t = Table::new(&["n", "value"]);
        t.push(vec!["10".into(), "1 + q".into()]);
        assert_eq!(t.to_text(), "n   value\n10  1 + q\n");
        assert_eq!(t.to_csv(), "n,value\n10,1 + q\n");
    }

    #[test]
    fn latex_array() {
        let s = cubic().to_latex();
        assert!(s.starts_with("\\left(\n\\begin{array}{rr}\n1 & 0 \\\\\n-\\frac{1}{2} & 3\n\\end{array}"));
    }

    #[test]
    fn json_rows() {
        let v: serde_json::Value = serde_json::from_str(&cubic().to_json()).unwrap();
        assert_eq!(v["rows"][1][0], "-1/2");
    }
}
