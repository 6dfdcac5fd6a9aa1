//! Multi-start search: many packing passes over reordered part lists, keeping
//! the best candidates by mass and by coverage.
//!
//! Iteration `i` shuffles with a ChaCha8 generator keyed by
//! `seed_from_u64(master_seed)` on stream `i`, so every iteration's order is
//! fixed by `(master_seed, i)` alone and the result does not depend on how
//! iterations are scheduled across threads.

use std::cmp;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{pack_sequence_with, PackOptions};
use crate::error::{Error, Result};
use crate::model::{Instance, Layout, Part};
use crate::wdp;

pub const DEFAULT_SEED: u64 = 20_210_120;
/// Restarts per search unless configured otherwise. With the default seed
/// this is the smallest round count that reaches the case-study optimum.
pub const DEFAULT_ITERATIONS: usize = 150;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ordering {
    #[default]
    Random,
    LargestFirst,
    SmallestFirst,
    AsGiven,
}

impl Ordering {
    pub fn as_str(self) -> &'static str {
        match self {
            Ordering::Random => "random",
            Ordering::LargestFirst => "largest",
            Ordering::SmallestFirst => "smallest",
            Ordering::AsGiven => "as-given",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub iterations: usize,
    pub master_seed: u64,
    pub ordering: Ordering,
    pub keep_top: usize,
    pub pack: PackOptions,
    /// Worker threads; 0 lets the runtime decide.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            iterations: DEFAULT_ITERATIONS,
            master_seed: DEFAULT_SEED,
            ordering: Ordering::Random,
            keep_top: 8,
            pack: PackOptions::default(),
            threads: 0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::InvalidConfig("iterations must be at least 1".into()));
        }
        if self.keep_top == 0 {
            return Err(Error::InvalidConfig("keep_top must be at least 1".into()));
        }
        Ok(())
    }
}

/// A layout together with the iteration that first produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub layout: Layout,
    pub iteration: usize,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    /// Distinct layouts, best first by the winner rule.
    pub ranked: Vec<Candidate>,
    /// Distinct layouts, densest first.
    pub by_coverage: Vec<Candidate>,
    pub iterations: usize,
}

impl SearchResult {
    pub fn winner(&self) -> &Candidate {
        &self.ranked[0]
    }

    pub fn best_coverage(&self) -> &Candidate {
        &self.by_coverage[0]
    }

    /// Union of both candidate lists without repeats, ranked list first.
    pub fn candidate_pool(&self) -> Vec<&Candidate> {
        let mut pool: Vec<&Candidate> = self.ranked.iter().collect();
        for c in &self.by_coverage {
            if !pool.iter().any(|p| p.layout.same_arrangement(&c.layout)) {
                pool.push(c);
            }
        }
        pool
    }
}

/// Part order for a deterministic ordering; `None` for `Random`.
pub fn ordered_parts(parts: &[Part], ordering: Ordering) -> Option<Vec<Part>> {
    let mut parts = parts.to_vec();
    let by_area = |a: &Part, b: &Part| a.footprint().area().total_cmp(&b.footprint().area());
    match ordering {
        Ordering::Random => return None,
        Ordering::AsGiven => {}
        Ordering::LargestFirst => {
            parts.sort_by(|a, b| by_area(b, a).then_with(|| a.name().cmp(b.name())))
        }
        Ordering::SmallestFirst => {
            parts.sort_by(|a, b| by_area(a, b).then_with(|| a.name().cmp(b.name())))
        }
    }
    Some(parts)
}

/// The part order iteration `iteration` uses under a random ordering.
pub fn shuffled_parts(parts: &[Part], master_seed: u64, iteration: usize) -> Vec<Part> {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(iteration as u64);
    let mut parts = parts.to_vec();
    parts.shuffle(&mut rng);
    parts
}

type Rank = fn(&Layout, &Layout) -> cmp::Ordering;

/// Bounded list of distinct layouts under a total order (rank, then
/// iteration). Merging two of these gives the same result in any order.
#[derive(Debug, Clone)]
struct TopK {
    cap: usize,
    rank: Rank,
    items: Vec<Candidate>,
}

impl TopK {
    fn new(cap: usize, rank: Rank) -> Self {
        Self {
            cap,
            rank,
            items: Vec::with_capacity(cap + 1),
        }
    }

    fn order(&self, a: &Candidate, b: &Candidate) -> cmp::Ordering {
        (self.rank)(&a.layout, &b.layout).then(a.iteration.cmp(&b.iteration))
    }

    fn offer(&mut self, cand: Candidate) {
        if let Some(i) = self
            .items
            .iter()
            .position(|c| c.layout.same_arrangement(&cand.layout))
        {
            if cand.iteration >= self.items[i].iteration {
                return;
            }
            self.items.remove(i);
        }
        if self.items.len() == self.cap
            && self.order(&cand, self.items.last().unwrap()) != cmp::Ordering::Less
        {
            return;
        }
        let at = self
            .items
            .partition_point(|c| self.order(c, &cand) == cmp::Ordering::Less);
        self.items.insert(at, cand);
        self.items.truncate(self.cap);
    }

    fn merge(mut self, other: TopK) -> TopK {
        for c in other.items {
            self.offer(c);
        }
        self
    }
}

pub fn multi_start(instance: &Instance, config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    let fixed = ordered_parts(instance.parts(), config.ordering);
    let platform = instance.platform();
    let run = |i: usize| {
        let layout = match &fixed {
            Some(order) => pack_sequence_with(platform, order, config.pack),
            None => {
                let order = shuffled_parts(instance.parts(), config.master_seed, i);
                pack_sequence_with(platform, &order, config.pack)
            }
        };
        Candidate {
            layout,
            iteration: i,
        }
    };

    let empty = || {
        (
            TopK::new(config.keep_top, wdp::rank),
            TopK::new(config.keep_top, wdp::rank_by_coverage),
        )
    };
    let search = || {
        (0..config.iterations)
            .into_par_iter()
            .fold(empty, |(mut by_mass, mut by_cov), i| {
                let cand = run(i);
                by_cov.offer(cand.clone());
                by_mass.offer(cand);
                (by_mass, by_cov)
            })
            .reduce(empty, |(m1, c1), (m2, c2)| (m1.merge(m2), c1.merge(c2)))
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    let (by_mass, by_cov) = pool.install(search);

    Ok(SearchResult {
        ranked: by_mass.items,
        by_coverage: by_cov.items,
        iterations: config.iterations,
    })
}
