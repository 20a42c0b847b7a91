use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::Format;

/// The JSON envelope written by every command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    /// False only for floating-point output.
    pub exact: bool,
    pub meta: Meta,
}

/// Run metadata, excluded from determinism comparisons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub elapsed_ms: u64,
    pub version: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub suite_elapsed_ms: BTreeMap<String, u64>,
}

/// A command's result in every supported format.
pub(crate) struct Rendered {
    pub record: OutputRecord,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub plain: String,
}

impl Rendered {
    pub fn to_text(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.record).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut writer = csv::Writer::from_writer(Vec::new());
                writer.write_record(&self.header).expect("in-memory write");
                for row in &self.rows {
                    writer.write_record(row).expect("in-memory write");
                }
                String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8")
            }
            Format::Plain => self.plain.clone(),
        }
    }
}
