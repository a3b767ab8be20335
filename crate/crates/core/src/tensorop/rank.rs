//! Exact rank by fraction-free (Bareiss) elimination.

use num::{BigInt, Integer, One, Zero};

use super::operator::ExactOperator;

/// Rank over the rationals.
///
/// Each row is cleared of denominators, then Bareiss elimination runs over
/// the integers. Every intermediate value is a minor of the scaled matrix,
/// so the divisions are exact. The pivot in each column is the candidate
/// with the shortest numerator.
pub fn rank_exact(t: &ExactOperator) -> usize {
    let d = t.dim();
    let mut rows: Vec<Vec<BigInt>> = t
        .rows()
        .into_iter()
        .map(|row| {
            let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
        })
        .collect();

    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..d {
        if rank == d {
            break;
        }
        let pivot = (rank..d)
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r][col].bits());
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pv = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            for j in col + 1..d {
                let updated = &pv * &row[j] - &factor * &pivot_row[j];
                row[j] = updated / &prev;
            }
        }
        prev = pv;
        rank += 1;
    }
    rank
}
