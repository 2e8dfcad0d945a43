//! Count reports and their three output formats. The machine formats
//! (JSON, CSV) contain only reproducible fields — big integers as decimal
//! strings, no timings — so byte-identical runs stay byte-identical.

use std::time::Duration;

use serde::Serialize;

use invseq::CountTable;

#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    /// Echo of the class argument (pattern set or rule name).
    pub class: String,
    /// Which engine produced the counts.
    pub method: String,
    pub n_max: usize,
    /// Sequence positions are 1-based throughout.
    pub position_convention: &'static str,
    /// counts[n] = number of size-n class members, as a decimal string.
    pub counts: Vec<String>,
    /// Wall-clock time; excluded from the machine formats.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CountReport {
    pub fn new(class: &str, method: &str, table: &CountTable, elapsed: Duration) -> Self {
        let report = Self {
            class: class.to_owned(),
            method: method.to_owned(),
            n_max: table.n_max(),
            position_convention: "1-based",
            counts: table.counts().iter().map(|c| c.to_string()).collect(),
            elapsed,
        };
        debug_assert_eq!(report.counts.len(), report.n_max + 1);
        debug_assert_eq!(report.counts[0], "1");
        report
    }

    pub fn to_json(&self) -> String {
        let mut body = serde_json::to_string_pretty(self).expect("report serializes");
        body.push('\n');
        body
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, count) in self.counts.iter().enumerate() {
            out.push_str(&format!("{n},{count}\n"));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "class: {}\nmethod: {}\n\n{:>4}  count\n",
            self.class, self.method, "n"
        );
        for (n, count) in self.counts.iter().enumerate() {
            out.push_str(&format!("{n:>4}  {count}\n"));
        }
        out.push_str(&format!("\nelapsed: {:.1?}\n", self.elapsed));
        out
    }
}
