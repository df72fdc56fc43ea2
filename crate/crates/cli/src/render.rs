//! Plain-text tables, CSV and JSON helpers shared by the commands.

use serde::Serialize;

/// Left-aligned columns separated by two spaces, trailing spaces trimmed.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(cell);
            s.extend(std::iter::repeat_n(' ', w - cell.chars().count()));
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out += &line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

/// CSV with a mandatory header. Cells never contain commas by construction;
/// any that do are quoted.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let quote = |c: &str| {
        if c.contains([',', '"', '\n']) {
            format!("\"{}\"", c.replace('"', "\"\""))
        } else {
            c.to_string()
        }
    };
    let mut out = header.join(",") + "\n";
    for row in rows {
        out += &row.iter().map(|c| quote(c)).collect::<Vec<_>>().join(",");
        out.push('\n');
    }
    out
}

pub fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

/// Comment lines (`# ...`) for table output.
pub fn comments<I: IntoIterator<Item = S>, S: AsRef<str>>(lines: I) -> String {
    lines.into_iter().map(|l| format!("# {}\n", l.as_ref())).collect()
}
