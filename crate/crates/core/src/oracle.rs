//! Exhaustive enumeration of the packer's decision space for small instances.
//!
//! Parts with identical dimensions, height and filling are interchangeable,
//! so orderings are enumerated as permutations of a multiset of shape
//! classes: `n! / Π kᵢ!` sequences instead of `n!`. In full-rotation mode
//! every non-square part additionally gets both orientation preferences.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{Instance, Layout, Part};
use crate::packer::{pack_sequence_oriented, PackOptions};
use crate::wdp;

pub const DEFAULT_LIMIT: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Refuse when more than this many packing passes would be needed.
    pub limit: u64,
    /// Enumerate orientation preferences as well as orderings.
    pub full_rotation: bool,
    pub pack: PackOptions,
    pub threads: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            limit: DEFAULT_LIMIT,
            full_rotation: false,
            pack: PackOptions::default(),
            threads: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub best_by_mass: Layout,
    pub best_by_coverage: Layout,
    /// Packing passes run (orderings × orientation masks).
    pub sequences_evaluated: u64,
    /// Distinct orderings after collapsing identical parts.
    pub canonical_sequences: u64,
}

/// Groups identical parts; returns the class of every part and the parts of
/// every class in input order.
fn shape_classes(parts: &[Part]) -> (Vec<usize>, Vec<Vec<Part>>) {
    let mut classes: Vec<Vec<Part>> = Vec::new();
    let mut ids = Vec::with_capacity(parts.len());
    for part in parts {
        match classes.iter().position(|c| c[0].same_shape(part)) {
            Some(i) => {
                classes[i].push(part.clone());
                ids.push(i);
            }
            None => {
                ids.push(classes.len());
                classes.push(vec![part.clone()]);
            }
        }
    }
    (ids, classes)
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Number of distinct orderings, `n! / Π kᵢ!`.
pub fn canonical_count(parts: &[Part]) -> BigUint {
    let (_, classes) = shape_classes(parts);
    classes
        .iter()
        .fold(factorial(parts.len()), |acc, c| acc / factorial(c.len()))
}

/// Rearranges into the next lexicographic permutation; false once the
/// sequence was the last one.
fn next_permutation(seq: &mut [usize]) -> bool {
    let Some(i) = seq.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = seq.iter().rposition(|&x| x > seq[i]).unwrap();
    seq.swap(i, j);
    seq[i + 1..].reverse();
    true
}

struct Best {
    by_mass: Option<Layout>,
    by_coverage: Option<Layout>,
    evaluated: u64,
}

impl Best {
    fn new() -> Self {
        Self {
            by_mass: None,
            by_coverage: None,
            evaluated: 0,
        }
    }

    // Strict improvement only, so the earliest sequence wins ties.
    fn offer(&mut self, layout: Layout) {
        self.evaluated += 1;
        let better = |slot: &Option<Layout>, rank: fn(&Layout, &Layout) -> std::cmp::Ordering| {
            slot.as_ref().is_none_or(|b| rank(&layout, b).is_lt())
        };
        if better(&self.by_coverage, wdp::rank_by_coverage) {
            self.by_coverage = Some(layout.clone());
        }
        if better(&self.by_mass, wdp::rank) {
            self.by_mass = Some(layout);
        }
    }

    fn absorb(&mut self, later: Best) {
        self.evaluated += later.evaluated;
        if let Some(l) = later.by_mass {
            if self
                .by_mass
                .as_ref()
                .is_none_or(|b| wdp::rank(&l, b).is_lt())
            {
                self.by_mass = Some(l);
            }
        }
        if let Some(l) = later.by_coverage {
            if self
                .by_coverage
                .as_ref()
                .is_none_or(|b| wdp::rank_by_coverage(&l, b).is_lt())
            {
                self.by_coverage = Some(l);
            }
        }
    }
}

pub fn enumerate_optimal(instance: &Instance, limit: u64) -> Result<OracleResult> {
    enumerate_optimal_with(
        instance,
        &OracleConfig {
            limit,
            ..Default::default()
        },
    )
}

pub fn enumerate_optimal_with(instance: &Instance, config: &OracleConfig) -> Result<OracleResult> {
    let parts = instance.parts();
    let (mut ids, classes) = shape_classes(parts);
    let canonical = canonical_count(parts);
    let rotatable: Vec<bool> = classes
        .iter()
        .map(|c| c[0].length() != c[0].width())
        .collect();
    let free_bits = if config.full_rotation {
        ids.iter().filter(|&&c| rotatable[c]).count()
    } else {
        0
    };
    let total = &canonical << free_bits;
    if total.to_u64().is_none_or(|t| t > config.limit) {
        return Err(Error::OracleLimitExceeded {
            count: total,
            limit: config.limit,
        });
    }

    ids.sort_unstable();
    let mut heads = ids.clone();
    heads.dedup();
    let platform = instance.platform();

    let partition = |head: usize| -> Best {
        let mut rest = ids.clone();
        let at = rest.iter().position(|&c| c == head).unwrap();
        rest.remove(at);
        let mut best = Best::new();
        let mut order: Vec<Part> = Vec::with_capacity(parts.len());
        let mut prefs = vec![false; parts.len()];
        loop {
            let mut next_in_class = vec![0usize; classes.len()];
            order.clear();
            for c in std::iter::once(head).chain(rest.iter().copied()) {
                order.push(classes[c][next_in_class[c]].clone());
                next_in_class[c] += 1;
            }
            let free: Vec<usize> = (0..order.len())
                .filter(|&i| config.full_rotation && order[i].length() != order[i].width())
                .collect();
            prefs.fill(false);
            for mask in 0u64..(1u64 << free.len()) {
                for (bit, &pos) in free.iter().enumerate() {
                    prefs[pos] = mask >> bit & 1 == 1;
                }
                best.offer(pack_sequence_oriented(
                    platform,
                    &order,
                    &prefs,
                    config.pack,
                ));
            }
            if !next_permutation(&mut rest) {
                break;
            }
        }
        best
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    let partials: Vec<Best> = pool.install(|| heads.par_iter().map(|&h| partition(h)).collect());

    let mut best = Best::new();
    for p in partials {
        best.absorb(p);
    }
    Ok(OracleResult {
        best_by_mass: best.by_mass.expect("at least one sequence"),
        best_by_coverage: best.by_coverage.expect("at least one sequence"),
        sequences_evaluated: best.evaluated,
        canonical_sequences: canonical.to_u64().expect("bounded by limit"),
    })
}
