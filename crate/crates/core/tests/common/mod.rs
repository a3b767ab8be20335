//! Independent oracles shared by the integration tests. None of these call
//! into the code paths they are used to check.

#![allow(dead_code)]

use symtrace::Partition;

/// Standard Young tableaux of `shape`, counted by removing the cell holding
/// the largest entry (any removable corner) recursively.
pub fn syt_count(shape: &[usize]) -> u64 {
    if shape.iter().all(|&p| p == 0) {
        return 1;
    }
    let mut total = 0;
    for i in 0..shape.len() {
        let next = shape.get(i + 1).copied().unwrap_or(0);
        if shape[i] > next {
            let mut smaller = shape.to_vec();
            smaller[i] -= 1;
            total += syt_count(&smaller);
        }
    }
    total
}

/// Partitions of `m` by backtracking over all compositions and keeping the
/// nonincreasing ones.
pub fn partition_count_backtracking(m: usize) -> usize {
    fn go(remaining: usize, last: usize, count: &mut usize) {
        if remaining == 0 {
            *count += 1;
            return;
        }
        for part in 1..=remaining {
            if part <= last {
                go(remaining - part, part, count);
            }
        }
    }
    let mut count = 0;
    go(m, usize::MAX, &mut count);
    count
}

pub fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

/// `∏_{i,j} (n + j - i)` by explicit double loop over the diagram, in i64.
pub fn hook_content_loop(shape: &Partition, n: i64) -> i64 {
    let mut prod = 1i64;
    for (i, &row) in shape.parts().iter().enumerate() {
        for j in 0..row {
            prod *= n + j as i64 - i as i64;
        }
    }
    prod
}

pub fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}
