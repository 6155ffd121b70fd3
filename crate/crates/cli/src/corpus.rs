//! Corpus generation.
//!
//! A corpus consists of
//! - the named instances `S1`, `C2`, `A2`, `D`, `Λ` and `P∞(3)` whose size
//!   is at most the largest requested size;
//! - with `all_up_to = k`, one poset from every isomorphism class on
//!   `1..=k` points, named `U{n}-{i}`;
//! - `count` random posets named `R{i}`.
//!
//! Random posets are drawn from a ChaCha8 generator seeded with `seed`
//! through `SeedableRng::seed_from_u64`. For each instance in turn the size
//! is drawn uniformly from `min_size..=max_size`; then for every pair
//! `i < j` in lexicographic order an edge `i < j` is kept with probability
//! 1/2, and the order is the reflexive-transitive closure of the edges.
//! Labels are `0..n-1`.

use std::collections::BTreeMap;
use std::str::FromStr;

use fintop_core::poset::named;
use fintop_core::FinitePoset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::instance::{InstanceFile, Kind};

/// Largest size for the exhaustive part of a corpus.
pub const ALL_UP_TO_MAX: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub max_size: usize,
    pub min_size: usize,
    pub count: usize,
    pub seed: u64,
    pub all_up_to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenSpecError {
    #[error("expected key=value, found `{0}`")]
    Syntax(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("bad value for `{key}`: `{value}`")]
    BadValue { key: String, value: String },
    #[error("max_size must be at least 1 and at least min_size")]
    BadSizes,
    #[error("all_up_to is at most {ALL_UP_TO_MAX}")]
    TooLarge,
}

impl Default for GenSpec {
    /// All posets up to 4 points and 25 random 5-point posets.
    fn default() -> Self {
        GenSpec {
            max_size: 5,
            min_size: 5,
            count: 25,
            seed: 1,
            all_up_to: 4,
        }
    }
}

impl GenSpec {
    pub fn new(max_size: usize, count: usize, seed: u64) -> Self {
        GenSpec {
            max_size,
            min_size: 1,
            count,
            seed,
            all_up_to: 0,
        }
    }

    /// Parses `key=value` pairs separated by commas, starting from `base`.
    /// Keys: `max_size`, `min_size`, `count`, `seed`, `all_up_to`.
    pub fn parse_with(text: &str, base: GenSpec) -> Result<Self, GenSpecError> {
        let mut spec = base;
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| GenSpecError::Syntax(item.to_string()))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = || GenSpecError::BadValue {
                key: key.to_string(),
                value: value.to_string(),
            };
            match key {
                "max_size" => spec.max_size = value.parse().map_err(|_| bad())?,
                "min_size" => spec.min_size = value.parse().map_err(|_| bad())?,
                "count" => spec.count = value.parse().map_err(|_| bad())?,
                "seed" => spec.seed = value.parse().map_err(|_| bad())?,
                "all_up_to" => spec.all_up_to = value.parse().map_err(|_| bad())?,
                other => return Err(GenSpecError::UnknownKey(other.to_string())),
            }
        }
        spec.min_size = spec.min_size.max(1);
        if spec.max_size == 0 || spec.min_size > spec.max_size {
            return Err(GenSpecError::BadSizes);
        }
        if spec.all_up_to > ALL_UP_TO_MAX {
            return Err(GenSpecError::TooLarge);
        }
        Ok(spec)
    }
}

impl FromStr for GenSpec {
    type Err = GenSpecError;

    /// Unset keys default to `min_size=1`, `count=0`, `seed=0`,
    /// `all_up_to=0`; `max_size` is required in effect (it defaults to 1).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GenSpec::parse_with(s, GenSpec::new(1, 0, 0))
    }
}

pub fn named_instances() -> Vec<(&'static str, FinitePoset)> {
    vec![
        ("S1", named::singleton()),
        ("C2", named::chain(2)),
        ("A2", named::antichain2()),
        ("D", named::diamond()),
        ("Λ", named::lambda()),
        ("P∞(3)", named::p_infinity(3)),
    ]
}

pub fn random_poset(rng: &mut ChaCha8Rng, n: usize) -> FinitePoset {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(0.5) {
                edges.push((i, j));
            }
        }
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    FinitePoset::from_generators(labels, &edges).expect("index-ordered edges are acyclic")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Strict order as a bit string over pairs `(i, j)`, `i != j`.
fn relation_key(p: &FinitePoset, perm: &[usize]) -> u64 {
    let n = p.len();
    let mut key = 0u64;
    for i in 0..n {
        for j in 0..n {
            if i != j && p.leq(perm[i], perm[j]) {
                key |= 1 << (i * n + j);
            }
        }
    }
    key
}

/// One representative per isomorphism class of posets on `n` points,
/// relabelled `0..n-1` so that its strict order has the smallest key.
pub fn posets_up_to_isomorphism(n: usize) -> Vec<FinitePoset> {
    let perms = permutations(n);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut classes: BTreeMap<u64, FinitePoset> = BTreeMap::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let p = FinitePoset::from_generators(labels.clone(), &edges).expect("acyclic");
        let (key, perm) = perms
            .iter()
            .map(|perm| (relation_key(&p, perm), perm))
            .min()
            .expect("at least one permutation");
        classes.entry(key).or_insert_with(|| {
            FinitePoset::from_relation(labels.clone(), |i, j| p.leq(perm[i], perm[j]))
                .expect("relabelled poset")
        });
    }
    classes.into_values().collect()
}

/// The corpus for `spec`, sorted by name.
pub fn generate_corpus(spec: &GenSpec) -> Vec<InstanceFile> {
    let largest = spec.max_size.max(spec.all_up_to);
    let mut out: Vec<InstanceFile> = named_instances()
        .into_iter()
        .filter(|(_, p)| p.len() <= largest)
        .map(|(name, p)| InstanceFile::from_poset(name, Kind::Poset, &p))
        .collect();
    for n in 1..=spec.all_up_to {
        for (i, p) in posets_up_to_isomorphism(n).iter().enumerate() {
            out.push(InstanceFile::from_poset(&format!("U{n}-{i:02}"), Kind::Poset, p));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for i in 0..spec.count {
        let n = rng.random_range(spec.min_size..=spec.max_size);
        let p = random_poset(&mut rng, n);
        out.push(InstanceFile::from_poset(&format!("R{i:03}"), Kind::Poset, &p));
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}
