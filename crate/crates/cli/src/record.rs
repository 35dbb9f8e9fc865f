//! Sweep output rows and their CSV / JSON encodings.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: [&str; 11] = [
    "N", "alpha", "kernel", "channel", "J", "mu", "delta", "T", "controlled", "qfi", "gamma",
];

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub alpha: Option<f64>,
    pub kernel: String,
    pub channel: String,
    #[serde(rename = "J")]
    pub j: f64,
    pub mu: f64,
    pub delta: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub controlled: bool,
    pub qfi: f64,
    pub gamma: Option<f64>,
    /// Logged, never written, so that outputs stay byte-identical.
    #[serde(skip)]
    pub wall_time_ms: u64,
}

/// 17 significant digits, scientific, locale independent.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_real).unwrap_or_default()
}

impl RunRecord {
    fn csv_fields(&self) -> [String; 11] {
        [
            self.n.to_string(),
            fmt_opt(self.alpha),
            self.kernel.clone(),
            self.channel.clone(),
            fmt_real(self.j),
            fmt_real(self.mu),
            fmt_real(self.delta),
            fmt_real(self.t),
            self.controlled.to_string(),
            fmt_real(self.qfi),
            fmt_opt(self.gamma),
        ]
    }
}

pub fn write_csv<W: Write>(out: W, records: &[RunRecord]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CliError::io(format!("write failed: {e}"));
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in records {
        w.write_record(r.csv_fields()).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::io(format!("write failed: {e}")))
}

pub fn read_csv<R: Read>(input: R) -> CliResult<Vec<RunRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let headers = rd
        .headers()
        .map_err(|e| CliError::invalid(format!("bad CSV header: {e}")))?
        .clone();
    if let Some(missing) = CSV_HEADER.iter().find(|h| !headers.iter().any(|x| x == **h)) {
        return Err(CliError::invalid(format!("CSV is missing column '{missing}'")));
    }
    rd.deserialize()
        .enumerate()
        .map(|(i, r)| r.map_err(|e| CliError::invalid(format!("CSV row {}: {e}", i + 1))))
        .collect()
}

pub fn write_json<W: Write, T: Serialize + ?Sized>(mut out: W, value: &T) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut out, value)
        .map_err(|e| CliError::io(format!("write failed: {e}")))?;
    writeln!(out).map_err(|e| CliError::io(format!("write failed: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(gamma: Option<f64>) -> RunRecord {
        RunRecord {
            schema_version: SCHEMA_VERSION,
            n: 64,
            alpha: Some(0.2),
            kernel: "log".into(),
            channel: "Delta".into(),
            j: 1.0,
            mu: -0.1,
            delta: 1.0 / 3.0,
            t: 2.5,
            controlled: true,
            qfi: std::f64::consts::PI * 1e7,
            gamma,
            wall_time_ms: 12,
        }
    }

    #[test]
    fn csv_round_trip_is_lossless() {
        let recs = vec![sample(Some(0.1 + 0.2)), sample(None)];
        let mut buf = Vec::new();
        write_csv(&mut buf, &recs).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("N,alpha,kernel,channel,J,mu,delta,T,controlled,qfi,gamma\n"));
        let back = read_csv(buf.as_slice()).unwrap();
        for (a, b) in recs.iter().zip(&back) {
            assert_eq!(b.wall_time_ms, 0);
            assert_eq!(RunRecord { wall_time_ms: 0, ..a.clone() }, *b);
        }
    }

    #[test]
    fn json_omits_wall_time() {
        let mut buf = Vec::new();
        write_json(&mut buf, &[sample(None)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\"schema_version\": 1"));
        assert!(!text.contains("wall_time"));
    }

    #[test]
    fn missing_column_is_invalid() {
        let e = read_csv("N,qfi\n4,1\n".as_bytes()).unwrap_err();
        assert_eq!(e.code, 1);
    }
}
