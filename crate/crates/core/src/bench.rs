//! Experiment harness: the ten-part case study, initial-ordering comparison
//! and the height / filling attribute studies.
//!
//! Reports carry the seed and a SHA-256 digest of the canonical instance so
//! every row can be regenerated. Wall times are informational only.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::io::{format_pct, instance_to_canonical_json, parse_instance};
use crate::model::{Instance, Layout};
use crate::oracle::{self, OracleConfig};
use crate::packer::{multi_start, Ordering, SearchConfig, DEFAULT_ITERATIONS};
use crate::wdp;

pub const CASE_STUDY_JSON: &str = include_str!("../fixtures/case_study.json");
pub const ORDERING_15_JSON: &str = include_str!("../fixtures/ordering_15.json");
pub const EQUAL_HEIGHT_JSON: &str = include_str!("../fixtures/equal_height.json");
pub const EQUAL_FILLING_JSON: &str = include_str!("../fixtures/equal_filling.json");

/// Batch with the most material known for the case study.
pub const REFERENCE_MASS_BATCH: [&str; 7] = ["P1", "P9", "P4", "P7", "P5", "P2", "P8"];
/// Batch with the highest coverage known for the case study.
pub const REFERENCE_COVERAGE_BATCH: [&str; 7] = ["P2", "P7", "P1", "P3", "P5", "P6", "P8"];

pub fn case_study_instance() -> Instance {
    parse_instance(CASE_STUDY_JSON).expect("bundled fixture is valid")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub label: String,
    pub parts_allocated: Vec<String>,
    pub covered_area_mm2: f64,
    pub coverage_pct: f64,
    pub total_mass: f64,
    pub part_count: usize,
    pub wall_time_ms: f64,
}

impl ExperimentRow {
    fn new(label: &str, layout: &Layout, started: Instant) -> Self {
        Self {
            label: label.to_owned(),
            parts_allocated: layout.part_names().into_iter().map(str::to_owned).collect(),
            covered_area_mm2: layout.covered_area(),
            coverage_pct: layout.coverage_pct(),
            total_mass: layout.total_mass(),
            part_count: layout.part_count(),
            wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentMeta {
    pub experiment: String,
    pub seed: u64,
    pub iterations: usize,
    pub instance_digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub metadata: ExperimentMeta,
    pub rows: Vec<ExperimentRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn row(&self, label: &str) -> Option<&ExperimentRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "label",
            "parts_allocated",
            "covered_area_mm2",
            "coverage_pct",
            "total_mass_mm3",
            "part_count",
            "wall_time_ms",
        ])
        .expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.label.clone(),
                r.parts_allocated.join(" "),
                r.covered_area_mm2.to_string(),
                format_pct(r.coverage_pct),
                r.total_mass.to_string(),
                r.part_count.to_string(),
                format!("{:.3}", r.wall_time_ms),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

pub fn instance_digest(instance: &Instance) -> String {
    let digest = Sha256::digest(instance_to_canonical_json(instance).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn meta(experiment: &str, instance: &Instance, seed: u64, iterations: usize) -> ExperimentMeta {
    ExperimentMeta {
        experiment: experiment.to_owned(),
        seed,
        iterations,
        instance_digest: instance_digest(instance),
    }
}

/// Largest-first, smallest-first and best-coverage-of-random-restarts.
pub fn run_ordering_experiment(
    instance: &Instance,
    iterations: usize,
    seed: u64,
    threads: usize,
) -> Result<ExperimentReport> {
    let base = SearchConfig {
        iterations: 1,
        master_seed: seed,
        keep_top: 1,
        threads,
        ..Default::default()
    };
    let mut rows = Vec::with_capacity(3);
    for (label, ordering) in [
        ("largest-first", Ordering::LargestFirst),
        ("smallest-first", Ordering::SmallestFirst),
    ] {
        let t = Instant::now();
        let res = multi_start(instance, &SearchConfig { ordering, ..base })?;
        rows.push(ExperimentRow::new(label, &res.best_coverage().layout, t));
    }
    let t = Instant::now();
    let res = multi_start(
        instance,
        &SearchConfig {
            iterations,
            ordering: Ordering::Random,
            ..base
        },
    )?;
    rows.push(ExperimentRow::new("random", &res.best_coverage().layout, t));
    Ok(ExperimentReport {
        metadata: meta("ordering", instance, seed, iterations),
        rows,
        notes: Vec::new(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttributeMode {
    /// All parts share one height; filling varies.
    Height,
    /// All parts share one filling; height varies.
    Filling,
}

impl AttributeMode {
    fn as_str(self) -> &'static str {
        match self {
            AttributeMode::Height => "height",
            AttributeMode::Filling => "filling",
        }
    }
}

fn check_shared_attribute(instance: &Instance, mode: AttributeMode) -> Result<()> {
    let value = |p: &crate::model::Part| match mode {
        AttributeMode::Height => p.height(),
        AttributeMode::Filling => p.filling(),
    };
    let parts = instance.parts();
    let reference = value(&parts[0]);
    match parts.iter().find(|p| value(p) != reference) {
        None => Ok(()),
        Some(p) => Err(Error::ExperimentPrecondition {
            part: p.name().to_owned(),
            mode: mode.as_str(),
            reason: format!(
                "{} {} differs from {} of `{}`",
                mode.as_str(),
                value(p),
                reference,
                parts[0].name()
            ),
        }),
    }
}

/// Winner, densest and most-populated layouts among the kept candidates.
pub fn run_attribute_experiment(
    instance: &Instance,
    mode: AttributeMode,
    iterations: usize,
    seed: u64,
    keep_top: usize,
    threads: usize,
) -> Result<ExperimentReport> {
    check_shared_attribute(instance, mode)?;
    let t = Instant::now();
    let res = multi_start(
        instance,
        &SearchConfig {
            iterations,
            master_seed: seed,
            keep_top,
            threads,
            ..Default::default()
        },
    )?;
    let pool: Vec<Layout> = res
        .candidate_pool()
        .into_iter()
        .map(|c| c.layout.clone())
        .collect();
    let winner = wdp::select_winner(&pool)?;
    let max_area = pool
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| wdp::rank_by_coverage(a, b).then(i.cmp(j)))
        .map(|(_, l)| l)
        .expect("non-empty pool");
    let max_parts = pool
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| {
            b.part_count()
                .cmp(&a.part_count())
                .then_with(|| wdp::rank(a, b))
                .then(i.cmp(j))
        })
        .map(|(_, l)| l)
        .expect("non-empty pool");
    Ok(ExperimentReport {
        metadata: meta(mode.as_str(), instance, seed, iterations),
        rows: vec![
            ExperimentRow::new("winner", winner, t),
            ExperimentRow::new("max-area", max_area, t),
            ExperimentRow::new("max-parts", max_parts, t),
        ],
        notes: Vec::new(),
    })
}

/// Packs exactly the named parts of `instance`, choosing the densest
/// ordering of that subset.
pub fn literal_batch(instance: &Instance, names: &[&str]) -> Result<Layout> {
    let parts = names
        .iter()
        .map(|n| {
            instance
                .parts()
                .iter()
                .find(|p| p.name() == *n)
                .cloned()
                .ok_or_else(|| Error::InvalidConfig(format!("no part named `{n}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let sub = Instance::new(instance.platform().clone(), parts, None)?;
    Ok(oracle::enumerate_optimal(&sub, oracle::DEFAULT_LIMIT)?.best_by_coverage)
}

/// Multi-start search, exhaustive oracle and the two reference batches on
/// the bundled ten-part instance.
pub fn run_case_study(seed: u64, threads: usize) -> Result<ExperimentReport> {
    let instance = case_study_instance();
    let t = Instant::now();
    let res = multi_start(
        &instance,
        &SearchConfig {
            iterations: DEFAULT_ITERATIONS,
            master_seed: seed,
            threads,
            ..Default::default()
        },
    )?;
    let mut rows = vec![
        ExperimentRow::new("winner", &res.winner().layout, t),
        ExperimentRow::new("max-coverage", &res.best_coverage().layout, t),
    ];
    let t = Instant::now();
    let exact = oracle::enumerate_optimal_with(
        &instance,
        &OracleConfig {
            threads,
            ..Default::default()
        },
    )?;
    rows.push(ExperimentRow::new("oracle-mass", &exact.best_by_mass, t));
    rows.push(ExperimentRow::new(
        "oracle-coverage",
        &exact.best_by_coverage,
        t,
    ));

    let t = Instant::now();
    let most_stuff = literal_batch(&instance, &REFERENCE_MASS_BATCH)?;
    rows.push(ExperimentRow::new("reference-max-mass", &most_stuff, t));
    let t = Instant::now();
    let densest = literal_batch(&instance, &REFERENCE_COVERAGE_BATCH)?;
    rows.push(ExperimentRow::new("reference-max-coverage", &densest, t));

    let notes = vec![
        format!(
            "oracle mass gap: {} mm3 ({} canonical orderings)",
            exact.best_by_mass.total_mass() - res.winner().layout.total_mass(),
            exact.canonical_sequences
        ),
        format!(
            "oracle coverage gap: {} mm2",
            exact.best_by_coverage.covered_area() - res.best_coverage().layout.covered_area()
        ),
        format!(
            "reference batches mass difference: {} mm3",
            most_stuff.total_mass() - densest.total_mass()
        ),
    ];
    Ok(ExperimentReport {
        metadata: meta("case-study", &instance, seed, DEFAULT_ITERATIONS),
        rows,
        notes,
    })
}
