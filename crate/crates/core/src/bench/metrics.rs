//! Per-run measurements and their JSON / CSV documents.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseEntry {
    /// Index of the event that triggered the phase.
    pub event: usize,
    pub level: usize,
    pub x_prime: usize,
    pub moved: usize,
    pub new_pivots: usize,
    pub touches: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryEntry {
    /// Event index of the query.
    pub index: usize,
    pub cover_size: usize,
    pub p_total: usize,
    pub d_total: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opt: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub algo: String,
    pub epsilon: f64,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub f: usize,
    pub events: usize,
    /// Work of building the initial cover, outside `touches_total`.
    pub init_touches: u64,
    /// Sum of `event_touches`.
    pub touches_total: u64,
    pub event_touches: Vec<u64>,
    pub phases: Vec<PhaseEntry>,
    pub queries: Vec<QueryEntry>,
    pub max_moves: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parameter(format!("unknown format {s:?}"))),
        }
    }
}

impl RunMetrics {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("metrics serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
    }

    /// One row per event. Query columns are empty on update rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("event,touches,cumulative,cover_size,p_total,d_total,opt,ratio\n");
        let mut q = self.queries.iter().peekable();
        let mut cum = 0;
        for (i, &t) in self.event_touches.iter().enumerate() {
            cum += t;
            let _ = write!(out, "{i},{t},{cum}");
            match q.next_if(|e| e.index == i) {
                Some(e) => {
                    let opt = e.opt.map(|o| o.to_string()).unwrap_or_default();
                    let ratio = e.ratio.map(|r| r.to_string()).unwrap_or_default();
                    let _ = writeln!(out, ",{},{},{},{opt},{ratio}", e.cover_size, e.p_total, e.d_total);
                }
                None => out.push_str(",,,,,\n"),
            }
        }
        out
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}
