//! Permutations of `{1..m}`, cycle structure, conjugacy classes and the coset
//! decomposition `S_m = ⋃_i S_{m-1}(i, m)`.

use std::fmt;

use crate::config::DEFAULT_MAX_SYM_DEGREE;
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};

/// Largest `m` whose factorial fits in a `u64`.
pub const MAX_FACTORIAL_DEGREE: usize = 20;

/// A permutation in one-line notation. Points are 1-based at the API; the
/// images are stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

/// Disjoint cycles covering `{1..m}` (1-cycles included), ordered by
/// nonincreasing length, ties broken by smallest contained point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    /// 1-based index of the cycle containing `point`.
    pub fn cycle_of(&self, point: usize) -> Option<usize> {
        self.cycles
            .iter()
            .position(|c| c.contains(&point))
            .map(|j| j + 1)
    }
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m).collect(),
        }
    }

    /// From 1-based one-line notation: `images[k-1] = σ(k)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        let mut zero_based = Vec::with_capacity(m);
        for &x in images {
            if x == 0 || x > m || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={m}"
                )));
            }
            seen[x - 1] = true;
            zero_based.push(x - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    /// Product of the given cycles (1-based points) in `S_m`.
    pub fn from_cycles(m: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut seen = vec![false; m];
        for cycle in cycles {
            for &x in cycle {
                if x == 0 || x > m || seen[x - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint within 1..={m}"
                    )));
                }
                seen[x - 1] = true;
            }
            for (k, &x) in cycle.iter().enumerate() {
                images[x - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// The transposition `(i j)` in `S_m`; the identity when `i == j`.
    pub fn transposition(m: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > m || j > m {
            return Err(Error::InvalidPermutation(format!(
                "({i} {j}) is not in S_{m}"
            )));
        }
        let mut images: Vec<usize> = (0..m).collect();
        images.swap(i - 1, j - 1);
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` or `()` as an element
    /// of `S_m`.
    pub fn parse_cycles(s: &str, m: usize) -> Result<Self> {
        let s = s.trim();
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let points = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad point {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_cycles(m, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `σ(k)` for 1-based `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1] + 1
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub(crate) fn images0(&self) -> &[usize] {
        &self.images
    }

    /// `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                got: other.degree(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&k| self.images[k]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (k, &x) in self.images.iter().enumerate() {
            images[x] = k;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k == x)
    }

    /// Embeds into `S_m` (`m >= degree`), fixing the new points.
    pub fn extend(&self, m: usize) -> Result<Permutation> {
        if m < self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                got: m,
            });
        }
        let mut images = self.images.clone();
        images.extend(self.degree()..m);
        Ok(Permutation { images })
    }

    /// Drops the last point, which must be fixed.
    pub fn restrict(&self) -> Result<Permutation> {
        let m = self.degree();
        if m == 0 || self.images[m - 1] != m - 1 {
            return Err(Error::InvalidPermutation(format!(
                "{self} does not fix {m}"
            )));
        }
        Ok(Permutation {
            images: self.images[..m - 1].to_vec(),
        })
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut cycles = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cycle.push(k + 1);
                k = self.images[k];
            }
            cycles.push(cycle);
        }
        // Each cycle starts at its smallest point and cycles were discovered
        // in increasing order of that point, so a stable sort by length
        // leaves ties ordered by smallest point.
        cycles.sort_by_key(|c| std::cmp::Reverse(c.len()));
        CycleDecomposition { cycles }
    }

    pub fn cycle_partition(&self) -> Partition {
        Partition::new(self.cycle_decomposition().lengths()).expect("cycle lengths sorted")
    }

    pub fn num_cycles(&self) -> usize {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut count = 0;
        for start in 0..m {
            if !seen[start] {
                count += 1;
                let mut k = start;
                while !seen[k] {
                    seen[k] = true;
                    k = self.images[k];
                }
            }
        }
        count
    }

    /// Splits `σ ∈ S_m` as `τ·(i, m)` with `τ ∈ S_{m-1}` and `i = σ⁻¹(m)`.
    pub fn coset_decompose(&self) -> Result<(Permutation, usize)> {
        let m = self.degree();
        if m == 0 {
            return Err(Error::EmptyDegree);
        }
        let i = self.inverse().apply(m);
        let tau = self.compose(&Permutation::transposition(m, i, m)?)?;
        Ok((tau.restrict()?, i))
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation without 1-cycles; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            f.write_str("(")?;
            let mut k = start;
            let mut first = true;
            while !seen[k] {
                seen[k] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{}", k + 1)?;
                first = false;
                k = self.images[k];
            }
            f.write_str(")")?;
            wrote = true;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}

pub fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

/// The `rank`-th permutation of `S_m` in lexicographic order of one-line
/// notation. Lets parallel consumers split `0..m!` without shared state.
pub fn permutation_from_rank(m: usize, mut rank: u64) -> Permutation {
    let mut pool: Vec<usize> = (0..m).collect();
    let mut images = Vec::with_capacity(m);
    for k in (0..m).rev() {
        let f = factorial(k);
        let idx = (rank / f) as usize;
        rank %= f;
        images.push(pool.remove(idx));
    }
    Permutation { images }
}

/// Lexicographic iterator over `S_m`.
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_lex(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { images: current })
    }
}

fn next_lex(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// All of `S_m` in lexicographic order, without a size check.
pub fn permutations(m: usize) -> Permutations {
    Permutations {
        next: Some((0..m).collect()),
    }
}

pub fn enumerate_sym(m: usize) -> Result<Vec<Permutation>> {
    enumerate_sym_with_limit(m, DEFAULT_MAX_SYM_DEGREE)
}

pub fn enumerate_sym_with_limit(m: usize, limit: usize) -> Result<Vec<Permutation>> {
    if m > limit {
        return Err(Error::LimitExceeded {
            what: "symmetric group degree",
            value: m,
            limit,
        });
    }
    Ok(permutations(m).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub cycle_type: Partition,
    pub size: u64,
}

/// `z_β = ∏_k k^{r_k} r_k!`, the centralizer order of a permutation of
/// cycle type `β`.
pub fn centralizer_order(cycle_type: &Partition) -> u64 {
    cycle_type
        .multiplicities()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &r)| (k as u64).pow(r as u32) * factorial(r))
        .product()
}

/// One class per partition of `m`, in decreasing lexicographic order, with
/// sizes `m!/z_β`.
pub fn conjugacy_classes(m: usize) -> Result<Vec<ConjugacyClass>> {
    if m > MAX_FACTORIAL_DEGREE {
        return Err(Error::LimitExceeded {
            what: "conjugacy class degree",
            value: m,
            limit: MAX_FACTORIAL_DEGREE,
        });
    }
    let order = factorial(m);
    Ok(enumerate_partitions(m)?
        .into_iter()
        .map(|cycle_type| {
            let size = order / centralizer_order(&cycle_type);
            ConjugacyClass { cycle_type, size }
        })
        .collect())
}

/// A permutation with the given cycle type, built from consecutive runs.
pub fn class_representative(cycle_type: &Partition) -> Permutation {
    let mut cycles = Vec::new();
    let mut next = 1;
    for &len in cycle_type.parts() {
        cycles.push((next..next + len).collect::<Vec<_>>());
        next += len;
    }
    Permutation::from_cycles(cycle_type.weight(), &cycles).expect("disjoint runs")
}
