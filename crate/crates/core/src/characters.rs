//! Irreducible characters of `S_m` by the Murnaghan–Nakayama rule, plus the
//! branching and reciprocal sums built on top of them.
//!
//! Conventions: `χ_{(m)}` is the trivial character and `χ_{(1^m)}` is the
//! sign character. All values are exact integers.

use std::collections::HashMap;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::par;
use crate::partitions::{
    add_at, enumerate_partitions, length, remove_corner, removable_corners, sort_to_partition,
    Composition, Partition,
};
use crate::symgroup::{conjugacy_classes, ConjugacyClass, Permutation};

/// Memo for Murnaghan–Nakayama evaluations, keyed on `(shape, cycle type)`.
/// Meant to live for one batch of evaluations.
#[derive(Debug, Default, Clone)]
pub struct CharacterCache {
    memo: HashMap<(Partition, Partition), i64>,
}

impl CharacterCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `χ_shape` on the class of `cycle_type`. Weights must agree.
    pub fn value(&mut self, shape: &Partition, cycle_type: &Partition) -> Result<i64> {
        if shape.weight() != cycle_type.weight() {
            return Err(Error::WeightMismatch {
                expected: shape.weight(),
                got: cycle_type.weight(),
            });
        }
        Ok(self.mn(shape, cycle_type.parts()))
    }

    fn mn(&mut self, shape: &Partition, cycle_type: &[usize]) -> i64 {
        let Some((&k, rest)) = cycle_type.split_first() else {
            return 1;
        };
        let key = (shape.clone(), Partition::new(cycle_type.to_vec()).expect("sorted"));
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut total = 0;
        for (sign, smaller) in rim_hook_removals(shape, k) {
            total += sign * self.mn(&smaller, rest);
        }
        self.memo.insert(key, total);
        total
    }
}

/// Every way to strip a rim hook of length `k` from `shape`, as
/// `(sign, remaining shape)` with sign `(-1)^{height}`.
///
/// Works on the beta-set `{λ_i + l - i}`: a rim hook of length `k` is a bead
/// moving from `b` to the empty slot `b - k`, and its height is the number
/// of beads strictly between.
fn rim_hook_removals(shape: &Partition, k: usize) -> Vec<(i64, Partition)> {
    let l = shape.len();
    let beads: Vec<usize> = shape
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + l - 1 - i)
        .collect();
    let mut out = Vec::new();
    for (idx, &b) in beads.iter().enumerate() {
        if b < k || beads.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let height = beads.iter().filter(|&&c| c > target && c < b).count();
        let mut moved = beads.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|x, y| y.cmp(x));
        let parts = moved
            .iter()
            .enumerate()
            .map(|(i, &c)| c - (l - 1 - i))
            .collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        out.push((sign, Partition::new(parts).expect("beta-set yields a partition")));
    }
    out
}

/// `χ_a` on the class of the composition `b` (sorted internally).
pub fn character_value(a: &Partition, b: &Composition) -> Result<i64> {
    CharacterCache::new().value(a, &sort_to_partition(b))
}

pub fn character_on_perm(a: &Partition, s: &Permutation) -> Result<i64> {
    if a.weight() != s.degree() {
        return Err(Error::DegreeMismatch {
            expected: a.weight(),
            got: s.degree(),
        });
    }
    CharacterCache::new().value(a, &s.cycle_partition())
}

/// `χ_a(1)`.
pub fn degree(a: &Partition) -> i64 {
    CharacterCache::new()
        .value(a, &Partition::single_column(a.weight()))
        .expect("equal weights")
}

/// Character table of `S_m`. Rows are shapes in decreasing lexicographic
/// order; columns are classes in increasing lexicographic order, so the
/// identity class `(1^m)` comes first and the first column holds the degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub m: usize,
    pub shapes: Vec<Partition>,
    pub classes: Vec<ConjugacyClass>,
    /// `values[row][col] = χ_{shapes[row]}(classes[col])`.
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn shape_index(&self, a: &Partition) -> Option<usize> {
        self.shapes.iter().position(|s| s == a)
    }

    pub fn class_index(&self, b: &Partition) -> Option<usize> {
        self.classes.iter().position(|c| &c.cycle_type == b)
    }

    pub fn get(&self, a: &Partition, b: &Partition) -> Option<i64> {
        Some(self.values[self.shape_index(a)?][self.class_index(b)?])
    }

    pub fn row(&self, a: &Partition) -> Option<&[i64]> {
        self.shape_index(a).map(|r| self.values[r].as_slice())
    }
}

pub fn character_table(m: usize) -> Result<CharacterTable> {
    character_table_with(m, &Config::default())
}

pub fn character_table_with(m: usize, config: &Config) -> Result<CharacterTable> {
    if m > config.max_char_degree {
        return Err(Error::LimitExceeded {
            what: "character table degree",
            value: m,
            limit: config.max_char_degree,
        });
    }
    let shapes = enumerate_partitions(m)?;
    let mut classes = conjugacy_classes(m)?;
    classes.reverse();
    let values = par::map(config.execution, &shapes, |shape| {
        let mut cache = CharacterCache::new();
        classes
            .iter()
            .map(|c| cache.value(shape, &c.cycle_type).expect("equal weights"))
            .collect::<Vec<_>>()
    });
    Ok(CharacterTable {
        m,
        shapes,
        classes,
        values,
    })
}

/// `Σ_{i corner} χ_{a-ε_i}(t)` for `t ∈ S_{m-1}`.
pub fn branching_rhs(a: &Partition, t: &Permutation) -> Result<i64> {
    let m = a.weight();
    if m == 0 || t.degree() + 1 != m {
        return Err(Error::DegreeMismatch {
            expected: m.saturating_sub(1),
            got: t.degree(),
        });
    }
    let mut cache = CharacterCache::new();
    let cycle_type = t.cycle_partition();
    removable_corners(a).into_iter().try_fold(0, |acc, i| {
        Ok(acc + cache.value(&remove_corner(a, i)?, &cycle_type)?)
    })
}

fn check_weights(a: &Partition, b: &Composition) -> Result<()> {
    if a.weight() == 0 || b.weight() + 1 != a.weight() {
        return Err(Error::WeightMismatch {
            expected: a.weight().saturating_sub(1),
            got: b.weight(),
        });
    }
    Ok(())
}

/// `Σ_{i corner} (a_i - i) χ_{a-ε_i}(b)` for `b ⊨ m-1`.
pub fn reciprocal_lhs(a: &Partition, b: &Composition) -> Result<i64> {
    check_weights(a, b)?;
    let mut cache = CharacterCache::new();
    let cycle_type = sort_to_partition(b);
    removable_corners(a).into_iter().try_fold(0, |acc, i| {
        let coeff = a.part(i) as i64 - i as i64;
        Ok(acc + coeff * cache.value(&remove_corner(a, i)?, &cycle_type)?)
    })
}

/// `Σ_{j=1}^{l(b)} b_j χ_a(b + ε_j)` for `b ⊨ m-1`.
pub fn reciprocal_rhs(a: &Partition, b: &Composition) -> Result<i64> {
    check_weights(a, b)?;
    let mut cache = CharacterCache::new();
    (1..=length(b)).try_fold(0, |acc, j| {
        let bumped = sort_to_partition(&add_at(b, j)?);
        Ok(acc + b.part(j) as i64 * cache.value(a, &bumped)?)
    })
}
