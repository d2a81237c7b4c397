//! Plain-text Betti diagrams in the usual `total:` / `k:` layout.
//!
//! ```text
//!        0 1 2
//! total: 1 3 2
//!     0: 1 . .
//!     1: . 3 2
//! ```
//!
//! Column `i` is the homological degree, row `k` holds `β_{i,i+k}`; zeros
//! print as `.`. Every column is right-aligned to its widest cell.

use crate::betti::BettiTable;

pub fn betti_grid(table: &BettiTable) -> String {
    let entries = table.entries();
    let Some(len) = table.length() else {
        return "total:\n".to_string();
    };
    let rows: Vec<i64> = {
        let lo = entries
            .keys()
            .map(|&(i, j)| j as i64 - i as i64)
            .min()
            .unwrap();
        let hi = entries
            .keys()
            .map(|&(i, j)| j as i64 - i as i64)
            .max()
            .unwrap();
        (lo..=hi).collect()
    };

    let cell = |i: usize, k: i64| -> String {
        let j = i as i64 + k;
        match entries.get(&(i, j.max(0) as u32)) {
            Some(&b) if j >= 0 => b.to_string(),
            _ => ".".to_string(),
        }
    };

    let mut lines: Vec<(String, Vec<String>)> = Vec::new();
    lines.push((String::new(), (0..=len).map(|i| i.to_string()).collect()));
    lines.push((
        "total:".to_string(),
        (0..=len).map(|i| table.total(i).to_string()).collect(),
    ));
    for &k in &rows {
        lines.push((format!("{k}:"), (0..=len).map(|i| cell(i, k)).collect()));
    }

    let label_width = lines.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..=len)
        .map(|c| {
            lines
                .iter()
                .map(|(_, cells)| cells[c].len())
                .max()
                .unwrap_or(1)
        })
        .collect();

    let mut out = String::new();
    for (label, cells) in &lines {
        let mut line = format!("{label:>label_width$}");
        for (c, w) in cells.iter().zip(&widths) {
            line.push(' ');
            line.push_str(&format!("{c:>w$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
