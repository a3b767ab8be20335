//! Partitions, compositions and the corner arithmetic used by the branching
//! rules. Indices at the API surface are 1-based.

use std::fmt;
use std::str::FromStr;

use num::BigInt;
use serde::{Serialize, Serializer};

use crate::config::DEFAULT_MAX_PARTITION_WEIGHT;
use crate::error::{Error, Result};

/// A nonincreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

/// A finitely supported sequence of nonnegative integers, stored with
/// trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Composition {
    parts: Vec<usize>,
}

fn trim_zeros(parts: &mut Vec<usize>) {
    while parts.last() == Some(&0) {
        parts.pop();
    }
}

fn fmt_parts(parts: &[usize], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str("(")?;
    for (k, p) in parts.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    f.write_str(")")
}

impl Partition {
    /// Builds a partition, trimming trailing zeros. Fails if the parts
    /// increase anywhere.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        trim_zeros(&mut parts);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(k)`, or the empty partition when `k = 0`.
    pub fn single_row(k: usize) -> Self {
        Partition::new(vec![k]).expect("single row")
    }

    /// `(1^k)`.
    pub fn single_column(k: usize) -> Self {
        Partition { parts: vec![1; k] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Part `i` (1-based); zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn to_composition(&self) -> Composition {
        Composition {
            parts: self.parts.clone(),
        }
    }

    /// Multiplicity of each part size: `result[k]` counts parts equal to `k`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut mult = vec![0; self.parts.first().copied().unwrap_or(0) + 1];
        for &p in &self.parts {
            mult[p] += 1;
        }
        mult
    }
}

impl Composition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        trim_zeros(&mut parts);
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Entry `j` (1-based); zero past the end.
    pub fn part(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.parts.get(j - 1).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl From<Partition> for Composition {
    fn from(p: Partition) -> Self {
        Composition { parts: p.parts }
    }
}

impl From<&Partition> for Composition {
    fn from(p: &Partition) -> Self {
        p.to_composition()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.parts, f)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.parts, f)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad part {t:?}: {e}")))
        })
        .collect()
}

/// Parses `2,1` or `(2,1)`. Zero parts are rejected.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_parts(s)?;
        if parts.contains(&0) {
            return Err(Error::NotAPartition(format!("{s:?} has a zero part")));
        }
        Partition::new(parts).map_err(|_| Error::NotAPartition(s.trim().to_string()))
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Composition::new(parse_parts(s)?))
    }
}

/// Largest index with a nonzero entry, 0 for the zero composition.
pub fn length(c: &Composition) -> usize {
    c.parts.len()
}

/// All `i` with `a_i > a_{i+1}`, increasing.
pub fn removable_corners(a: &Partition) -> Vec<usize> {
    (1..=a.len())
        .filter(|&i| a.part(i) > a.part(i + 1))
        .collect()
}

/// `a - ε_i`.
pub fn remove_corner(a: &Partition, i: usize) -> Result<Partition> {
    if i == 0 || i > a.len() || a.part(i) <= a.part(i + 1) {
        return Err(Error::NotACorner {
            partition: a.to_string(),
            index: i,
        });
    }
    let mut parts = a.parts.clone();
    parts[i - 1] -= 1;
    trim_zeros(&mut parts);
    Ok(Partition { parts })
}

/// `c + ε_j`, restricted to `1 <= j <= length(c)`.
pub fn add_at(c: &Composition, j: usize) -> Result<Composition> {
    if j == 0 || j > c.parts.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            len: c.parts.len(),
        });
    }
    let mut parts = c.parts.clone();
    parts[j - 1] += 1;
    Ok(Composition { parts })
}

pub fn sort_to_partition(c: &Composition) -> Partition {
    let mut parts: Vec<usize> = c.parts.iter().copied().filter(|&p| p > 0).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition { parts }
}

/// Partitions of `m` in decreasing lexicographic order.
pub fn enumerate_partitions(m: usize) -> Result<Vec<Partition>> {
    if m > DEFAULT_MAX_PARTITION_WEIGHT {
        return Err(Error::LimitExceeded {
            what: "partition weight",
            value: m,
            limit: DEFAULT_MAX_PARTITION_WEIGHT,
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(m, m, &mut current, &mut out);
    Ok(out)
}

fn fill(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

/// `∏_{(i,j) in a} (n + j - i)` over the cells of the Young diagram.
pub fn hook_content_product(a: &Partition, n: usize) -> BigInt {
    let n = n as i64;
    let mut product = BigInt::from(1);
    for (row, &len) in a.parts.iter().enumerate() {
        let i = row as i64 + 1;
        for j in 1..=len as i64 {
            product *= n + j - i;
        }
    }
    product
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec())
    }

    #[test]
    fn length_examples() {
        assert_eq!(length(&c(&[3, 2])), 2);
        assert_eq!(length(&c(&[])), 0);
        assert_eq!(length(&c(&[2, 0, 1])), 3);
        assert_eq!(length(&c(&[2, 0, 1, 0, 0])), 3);
    }

    #[test]
    fn corners() {
        assert_eq!(removable_corners(&p(&[2, 1])), vec![1, 2]);
        assert_eq!(removable_corners(&p(&[2, 2])), vec![2]);
        assert_eq!(removable_corners(&p(&[3, 1, 1])), vec![1, 3]);
        assert!(removable_corners(&Partition::empty()).is_empty());
    }

    #[test]
    fn remove_corner_examples() {
        assert_eq!(remove_corner(&p(&[2, 1]), 1).unwrap(), p(&[1, 1]));
        assert_eq!(remove_corner(&p(&[2, 1]), 2).unwrap(), p(&[2]));
        assert_eq!(remove_corner(&p(&[1]), 1).unwrap(), Partition::empty());
        assert!(remove_corner(&p(&[2, 2]), 1).is_err());
        assert!(remove_corner(&p(&[2, 2]), 3).is_err());
        assert!(remove_corner(&p(&[2, 2]), 0).is_err());
    }

    #[test]
    fn add_at_examples() {
        assert_eq!(add_at(&c(&[2]), 1).unwrap(), c(&[3]));
        assert_eq!(add_at(&c(&[2, 1]), 2).unwrap(), c(&[2, 2]));
        assert_eq!(add_at(&c(&[3, 2]), 1).unwrap(), c(&[4, 2]));
        assert!(add_at(&c(&[3, 2]), 3).is_err());
        assert!(add_at(&c(&[]), 1).is_err());
    }

    #[test]
    fn sorting() {
        assert_eq!(sort_to_partition(&c(&[1, 3, 2])), p(&[3, 2, 1]));
        assert_eq!(sort_to_partition(&c(&[2, 0, 2])), p(&[2, 2]));
        assert_eq!(sort_to_partition(&c(&[])), Partition::empty());
    }

    #[test]
    fn construction_rejects_increasing() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), p(&[2, 1]));
        assert!("1,2".parse::<Partition>().is_err());
        assert!("0".parse::<Partition>().is_err());
        assert_eq!("2,1".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!("(3,1,1)".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_partitions(3).unwrap(),
            vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]
        );
        assert_eq!(enumerate_partitions(0).unwrap(), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(4).unwrap().len(), 5);
        assert!(enumerate_partitions(DEFAULT_MAX_PARTITION_WEIGHT + 1).is_err());
    }

    #[test]
    fn hook_content_examples() {
        assert_eq!(hook_content_product(&p(&[2, 1]), 2), BigInt::from(6));
        assert_eq!(hook_content_product(&p(&[1, 1, 1]), 2), BigInt::from(0));
        for n in 1..6usize {
            for k in 1..6usize {
                let rising: usize = (0..k).map(|t| n + t).product();
                assert_eq!(hook_content_product(&p(&[k]), n), BigInt::from(rising));
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(p(&[2, 1]).to_string(), "(2,1)");
        assert_eq!(Partition::empty().to_string(), "()");
    }
}
