use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{EconomicParams, Instance, Part, Platform};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlatformDoc {
    pub name: String,
    pub length: f64,
    pub width: f64,
    pub height: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartDoc {
    pub name: String,
    pub length: f64,
    pub width: f64,
    pub height: f64,
    pub filling: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EconomicsDoc {
    pub price: f64,
    pub fixed_cost: f64,
    pub variable_cost: f64,
}

/// On-disk instance document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub platform: PlatformDoc,
    pub parts: Vec<PartDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub economics: Option<EconomicsDoc>,
}

impl InstanceFile {
    pub fn validate(&self) -> Result<Instance> {
        let p = &self.platform;
        let platform = Platform::new(p.name.as_str(), p.length, p.width, p.height)?;
        let parts = self
            .parts
            .iter()
            .map(|d| Part::new(d.name.as_str(), d.length, d.width, d.height, d.filling))
            .collect::<Result<Vec<_>>>()?;
        let economics = self
            .economics
            .as_ref()
            .map(|e| EconomicParams::new(e.price, e.fixed_cost, e.variable_cost))
            .transpose()?;
        Instance::new(platform, parts, economics)
    }
}

impl From<&Platform> for PlatformDoc {
    fn from(p: &Platform) -> Self {
        Self {
            name: p.name().to_owned(),
            length: p.length(),
            width: p.width(),
            height: p.height(),
        }
    }
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        Self {
            platform: inst.platform().into(),
            parts: inst
                .parts()
                .iter()
                .map(|p| PartDoc {
                    name: p.name().to_owned(),
                    length: p.length(),
                    width: p.width(),
                    height: p.height(),
                    filling: p.filling(),
                })
                .collect(),
            economics: inst.economics().map(|e| EconomicsDoc {
                price: e.price_per_unit(),
                fixed_cost: e.fixed_cost(),
                variable_cost: e.variable_cost(),
            }),
        }
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(document: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(document)?;
    file.validate()
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| {
        std::io::Error::new(e.kind(), format!("{}: {}", path.display(), describe_io(&e)))
    })?;
    parse_instance(&text)
}

fn describe_io(e: &std::io::Error) -> String {
    match e.kind() {
        std::io::ErrorKind::NotFound => "file not found".to_owned(),
        _ => e.to_string(),
    }
}

pub fn instance_to_json(instance: &Instance) -> String {
    let mut s = serde_json::to_string_pretty(&InstanceFile::from(instance)).expect("serializable");
    s.push('\n');
    s
}

/// Compact canonical form, used for digests.
pub fn instance_to_canonical_json(instance: &Instance) -> String {
    serde_json::to_string(&InstanceFile::from(instance)).expect("serializable")
}

fn column_key(header: &str) -> String {
    header
        .split('(')
        .next()
        .unwrap_or_default()
        .trim()
        .to_ascii_lowercase()
}

/// Imports a parts table with `Name, Length, Width, Height, Filling`
/// columns (header case and unit suffixes ignored, other columns skipped).
/// Tab- or comma-delimited.
pub fn import_parts_table(table: &str, platform: Platform) -> Result<Instance> {
    let first = table.lines().next().unwrap_or_default();
    let delimiter = if first.contains('\t') { b'\t' } else { b',' };
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(table.as_bytes());
    let headers: Vec<String> = reader.headers()?.iter().map(column_key).collect();
    let col = |name: &'static str| {
        headers.iter().position(|h| h == name).ok_or_else(|| {
            Error::Csv(csv::Error::from(std::io::Error::new(
                std::io::ErrorKind::InvalidData,
                format!("missing column `{name}`"),
            )))
        })
    };
    let cols = [
        col("name")?,
        col("length")?,
        col("width")?,
        col("height")?,
        col("filling")?,
    ];

    let mut parts = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let field = |i: usize| record.get(cols[i]).unwrap_or_default();
        let number = |i: usize, what: &'static str| -> Result<f64> {
            field(i).parse::<f64>().map_err(|_| Error::InvalidPart {
                part: format!("{} (row {})", field(0), row + 2),
                field: what,
                expected: "a number",
                value: f64::NAN,
            })
        };
        parts.push(Part::new(
            field(0),
            number(1, "length")?,
            number(2, "width")?,
            number(3, "height")?,
            number(4, "filling")?,
        )?);
    }
    Instance::new(platform, parts, None)
}
