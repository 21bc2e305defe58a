//! Shared census loader for integration tests.

use kstate::{parse_pd, Diagram};

#[allow(dead_code)] // not every test target reads every field
pub struct Record {
    pub name: String,
    pub pd: String,
    pub det: Option<u64>,
    pub alternating: Option<bool>,
}

impl Record {
    pub fn diagram(&self) -> Diagram {
        parse_pd(&self.pd).unwrap_or_else(|e| panic!("census record {}: {e}", self.name))
    }
}

pub fn census() -> Vec<Record> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/census.csv");
    let text = std::fs::read_to_string(path).expect("census file");
    let mut lines = text.lines();
    let header = lines.next().expect("census header");
    assert!(header.starts_with("name,pd"), "unexpected census header");
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let fields: Vec<&str> = line.split(',').collect();
            assert!(fields.len() >= 2, "bad census line: {line}");
            Record {
                name: fields[0].to_string(),
                pd: fields[1].replace(';', ","),
                det: fields.get(2).and_then(|s| s.parse().ok()),
                alternating: fields.get(3).and_then(|s| s.parse().ok()),
            }
        })
        .collect()
}
