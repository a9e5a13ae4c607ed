//! Census rows and their table, CSV and JSON-lines renderings.

use std::fmt::Write as _;

use paucity_core::CensusReport;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const CSV_HEADER: &str = "X,N,T,Tstar,Tdagger";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    #[serde(rename = "X")]
    pub x: u64,
    #[serde(rename = "N")]
    pub n: u128,
    #[serde(rename = "T")]
    pub trivial: u128,
    #[serde(rename = "Tstar")]
    pub tstar: u128,
    #[serde(rename = "Tdagger")]
    pub tdagger: u128,
}

impl CensusRow {
    pub fn nontrivial(&self) -> u128 {
        self.n - self.trivial
    }

    pub fn column(&self, column: Column) -> u128 {
        match column {
            Column::N => self.n,
            Column::T => self.trivial,
            Column::Tstar => self.tstar,
            Column::Tdagger => self.tdagger,
            Column::Nontrivial => self.nontrivial(),
        }
    }
}

impl From<&CensusReport> for CensusRow {
    fn from(r: &CensusReport) -> Self {
        Self { x: r.x_max as u64, n: r.n, trivial: r.trivial, tstar: r.tstar, tdagger: r.tdagger }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Column {
    N,
    T,
    Tstar,
    Tdagger,
    /// `N - T`
    Nontrivial,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Jsonl,
}

pub fn render(rows: &[CensusRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => to_csv(rows),
        OutputFormat::Jsonl => {
            rows.iter().map(|r| serde_json::to_string(r).expect("rows always serialize") + "\n").collect()
        }
        OutputFormat::Table => to_table(rows),
    }
}

pub fn to_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(out, "{},{},{},{},{}", r.x, r.n, r.trivial, r.tstar, r.tdagger).unwrap();
    }
    out
}

fn to_table(rows: &[CensusRow]) -> String {
    let cells: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                r.x.to_string(),
                r.n.to_string(),
                r.trivial.to_string(),
                r.tstar.to_string(),
                r.tdagger.to_string(),
            ]
        })
        .collect();
    let header = ["X", "N", "T", "T*", "T†"];
    let mut width = header.map(|h| h.chars().count());
    for row in &cells {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, items: [&str; 5]| {
        let padded: Vec<String> = items
            .iter()
            .zip(width)
            .map(|(s, w)| format!("{}{s}", " ".repeat(w - s.chars().count())))
            .collect();
        writeln!(out, "{}", padded.join("  ")).unwrap();
    };
    line(&mut out, header);
    for row in &cells {
        line(&mut out, [&row[0], &row[1], &row[2], &row[3], &row[4]]);
    }
    out
}

/// Reads rows written by [`to_csv`]. The header must match exactly.
pub fn parse_csv(text: &str) -> Result<Vec<CensusRow>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let header = reader.headers()?.iter().collect::<Vec<_>>().join(",");
    if header != CSV_HEADER {
        return Err(CliError::Input(format!("expected header {CSV_HEADER}, found {header}")));
    }
    reader.deserialize().map(|row| row.map_err(CliError::from)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows() -> Vec<CensusRow> {
        vec![
            CensusRow { x: 6, n: 86, trivial: 66, tstar: 0, tdagger: 20 },
            CensusRow { x: 10, n: 190, trivial: 190, tstar: 0, tdagger: 0 },
        ]
    }

    #[test]
    fn csv_layout() {
        assert_eq!(to_csv(&rows()), "X,N,T,Tstar,Tdagger\n6,86,66,0,20\n10,190,190,0,0\n");
        assert_eq!(parse_csv(&to_csv(&rows())).unwrap(), rows());
    }

    #[test]
    fn csv_rejects_other_headers() {
        assert!(parse_csv("X,N,T\n1,1,1\n").is_err());
        assert!(parse_csv("X,N,T,Tstar,Tdagger\n1,x,1,0,0\n").is_err());
        assert_eq!(parse_csv("").unwrap(), vec![]);
        assert_eq!(parse_csv(CSV_HEADER).unwrap(), vec![]);
    }

    #[test]
    fn jsonl_layout() {
        let text = render(&rows()[..1], OutputFormat::Jsonl);
        assert_eq!(text, "{\"X\":6,\"N\":86,\"T\":66,\"Tstar\":0,\"Tdagger\":20}\n");
    }

    #[test]
    fn table_is_right_aligned() {
        let text = render(&rows(), OutputFormat::Table);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], " X    N    T  T*  T†");
        assert_eq!(lines[1], " 6   86   66   0  20");
        assert_eq!(lines[2], "10  190  190   0   0");
    }
}
