//! Exact operators on `V^{⊗m}` with `dim V = n`: the multi-index basis,
//! permutation operators, partial traces, symmetrizers, exact rank and the
//! closed-form dimension of a symmetry class.
//!
//! Basis order is row-major with the first tensor factor most significant,
//! so `V^{⊗m} = V^{⊗(m-1)} ⊗ V` splits off the last factor.

mod operator;
mod rank;
mod serial;

use num::{BigInt, Integer, Zero};

pub use operator::{format_scalar, parse_scalar, scalar, ExactOperator, Scalar};
pub use rank::rank_exact;
pub use serial::{from_json, to_json, MatrixJson};

use crate::characters::{degree, CharacterCache};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::par;
use crate::partitions::{hook_content_product, Partition};
use crate::symgroup::{conjugacy_classes, factorial, permutation_from_rank, Permutation};

/// An element of `Γ_{m,n}`: entries in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    entries: Vec<usize>,
    n: usize,
}

impl MultiIndex {
    pub fn new(entries: Vec<usize>, n: usize) -> Result<Self> {
        if n == 0 || entries.iter().any(|&g| g == 0 || g > n) {
            return Err(Error::InvalidMultiIndex(format!(
                "{entries:?} not in Γ_(m,{n})"
            )));
        }
        Ok(MultiIndex { entries, n })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn alphabet(&self) -> usize {
        self.n
    }

    /// Mixed-radix position with `γ_1` most significant.
    pub fn index_of(&self) -> usize {
        self.entries
            .iter()
            .fold(0, |acc, &g| acc * self.n + (g - 1))
    }

    /// Place permutation: `(γσ)_k = γ_{σ(k)}`.
    pub fn place_permute(&self, s: &Permutation) -> Result<MultiIndex> {
        if s.degree() != self.len() {
            return Err(Error::DegreeMismatch {
                expected: self.len(),
                got: s.degree(),
            });
        }
        Ok(MultiIndex {
            entries: (1..=self.len()).map(|k| self.entries[s.apply(k) - 1]).collect(),
            n: self.n,
        })
    }
}

/// `n^m`, or `None` on overflow.
pub fn tensor_dim(m: usize, n: usize) -> Option<usize> {
    n.checked_pow(u32::try_from(m).ok()?)
}

fn guarded_dim(m: usize, n: usize, config: &Config) -> Result<usize> {
    match tensor_dim(m, n) {
        Some(d) if d <= config.max_dim => Ok(d),
        other => Err(Error::LimitExceeded {
            what: "operator dimension",
            value: other.unwrap_or(usize::MAX),
            limit: config.max_dim,
        }),
    }
}

/// Inverse of [`MultiIndex::index_of`].
pub fn multiindex_of(k: usize, m: usize, n: usize) -> Result<MultiIndex> {
    let dim = tensor_dim(m, n).ok_or_else(|| Error::InvalidMultiIndex("n^m overflows".into()))?;
    if n == 0 || k >= dim {
        return Err(Error::InvalidMultiIndex(format!(
            "index {k} outside 0..{dim}"
        )));
    }
    let mut entries = vec![0; m];
    let mut rest = k;
    for slot in entries.iter_mut().rev() {
        *slot = rest % n + 1;
        rest /= n;
    }
    Ok(MultiIndex { entries, n })
}

/// Column map of `P_m(σ)`: column `γ` goes to row `γσ⁻¹`.
fn perm_column_map(s: &Permutation, n: usize, dim: usize) -> Vec<usize> {
    let m = s.degree();
    let inv = s.inverse();
    // weight of source position σ⁻¹(k) when it lands at target position k
    let mut weights = vec![0usize; m];
    for k in 0..m {
        let src = inv.images0()[k];
        weights[src] = n.pow((m - 1 - k) as u32);
    }
    let mut digits = vec![0usize; m];
    let mut map = Vec::with_capacity(dim);
    for _ in 0..dim {
        map.push(digits.iter().zip(&weights).map(|(d, w)| d * w).sum());
        // increment the mixed-radix counter, last digit least significant
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < n {
                break;
            }
            *d = 0;
        }
    }
    map
}

/// `P_m(σ)` with `P_m(σ)(e_γ) = e_{γσ⁻¹}`.
pub fn perm_operator(s: &Permutation, n: usize, config: &Config) -> Result<ExactOperator> {
    if n == 0 {
        return Err(Error::DimensionMismatch("n must be positive".into()));
    }
    let dim = guarded_dim(s.degree(), n, config)?;
    ExactOperator::from_column_map(perm_column_map(s, n, dim))
}

/// `S ⊗ R`.
pub fn tensor_product(
    s: &ExactOperator,
    r: &ExactOperator,
    config: &Config,
) -> Result<ExactOperator> {
    let dim = s.dim().saturating_mul(r.dim());
    if dim > config.max_dim {
        return Err(Error::LimitExceeded {
            what: "operator dimension",
            value: dim,
            limit: config.max_dim,
        });
    }
    Ok(operator::kron(s, r))
}

pub fn trace(t: &ExactOperator) -> Scalar {
    t.trace()
}

/// Partial trace over the trailing factor `B` of `A ⊗ B`.
pub fn partial_trace(t: &ExactOperator, dim_a: usize, dim_b: usize) -> Result<ExactOperator> {
    if dim_a.checked_mul(dim_b) != Some(t.dim()) {
        return Err(Error::DimensionMismatch(format!(
            "{} is not {dim_a} x {dim_b}",
            t.dim()
        )));
    }
    if dim_b == 1 {
        return Ok(t.clone());
    }
    Ok(operator::contract_last(t, dim_a, dim_b))
}

fn check_symmetrizer_args(a: &Partition, n: usize, config: &Config) -> Result<(usize, usize)> {
    let m = a.weight();
    if m == 0 {
        return Err(Error::EmptyDegree);
    }
    if n == 0 {
        return Err(Error::DimensionMismatch("n must be positive".into()));
    }
    if m > config.max_sym_degree {
        return Err(Error::LimitExceeded {
            what: "symmetric group degree",
            value: m,
            limit: config.max_sym_degree,
        });
    }
    Ok((m, guarded_dim(m, n, config)?))
}

/// `T'_α = Σ_{σ ∈ S_m} χ_α(σ) P_m(σ)`, an integer matrix.
pub fn symmetrizer_prime(a: &Partition, n: usize, config: &Config) -> Result<ExactOperator> {
    let (m, dim) = check_symmetrizer_args(a, n, config)?;
    let mut cache = CharacterCache::new();
    let classes = conjugacy_classes(m)?;
    let chi: Vec<(Partition, i64)> = classes
        .into_iter()
        .map(|c| {
            let v = cache.value(a, &c.cycle_type)?;
            Ok((c.cycle_type, v))
        })
        .collect::<Result<_>>()?;
    let value_of = |s: &Permutation| {
        let ct = s.cycle_partition();
        chi.iter().find(|(c, _)| *c == ct).map(|(_, v)| *v).expect("class listed")
    };

    let order = factorial(m) as usize;
    let sum = par::fold_range(
        config.execution,
        order,
        || vec![0i64; dim * dim],
        |mut acc, rank| {
            let s = permutation_from_rank(m, rank as u64);
            let v = value_of(&s);
            if v != 0 {
                for (col, row) in perm_column_map(&s, n, dim).into_iter().enumerate() {
                    acc[row * dim + col] += v;
                }
            }
            acc
        },
        |mut x, y| {
            x.iter_mut().zip(y).for_each(|(a, b)| *a += b);
            x
        },
    );
    Ok(ExactOperator::from_integer_entries(dim, sum))
}

/// `T_α = (χ_α(1)/m!) T'_α`.
pub fn symmetrizer(a: &Partition, n: usize, config: &Config) -> Result<ExactOperator> {
    let prime = symmetrizer_prime(a, n, config)?;
    Ok(prime.scale(&symmetrizer_scale(a)))
}

/// `χ_α(1)/m!`.
pub fn symmetrizer_scale(a: &Partition) -> Scalar {
    Scalar::new(
        BigInt::from(degree(a)),
        BigInt::from(factorial(a.weight())),
    )
}

/// `tr T'_α = Σ_β |C_β| χ_α(β) n^{l(β)}`, without building any operator.
pub fn fast_trace_symmetrizer_prime(a: &Partition, n: usize, config: &Config) -> Result<Scalar> {
    let m = a.weight();
    if m > config.max_char_degree {
        return Err(Error::LimitExceeded {
            what: "character degree",
            value: m,
            limit: config.max_char_degree,
        });
    }
    let mut cache = CharacterCache::new();
    let mut total = BigInt::zero();
    for class in conjugacy_classes(m)? {
        let chi = cache.value(a, &class.cycle_type)?;
        if chi == 0 {
            continue;
        }
        let power = num::pow(BigInt::from(n), class.cycle_type.len());
        total += BigInt::from(class.size) * BigInt::from(chi) * power;
    }
    Ok(Scalar::from_integer(total))
}

/// `(χ_α(1))²/m! · ∏_{(i,j) ∈ α} (n + j - i)`.
pub fn dim_symmetry_class(a: &Partition, n: usize) -> Result<BigInt> {
    let deg = BigInt::from(degree(a));
    let numer = &deg * &deg * hook_content_product(a, n);
    let denom = BigInt::from(factorial(a.weight()));
    let (q, r) = numer.div_rem(&denom);
    if !r.is_zero() || q < BigInt::zero() {
        return Err(Error::NonIntegralDimension(format!("{numer}/{denom}")));
    }
    Ok(q)
}

/// Whether `t·t = t`.
pub fn is_idempotent(t: &ExactOperator) -> Result<bool> {
    Ok(&t.mul(t)? == t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::permutations;

    fn cfg() -> Config {
        Config::default()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn cyc(s: &str, m: usize) -> Permutation {
        Permutation::parse_cycles(s, m).unwrap()
    }

    fn ints(rows: &[Vec<i64>]) -> ExactOperator {
        ExactOperator::from_integer_rows(rows).unwrap()
    }

    #[test]
    fn indexing() {
        assert_eq!(MultiIndex::new(vec![1, 1, 1], 3).unwrap().index_of(), 0);
        assert_eq!(MultiIndex::new(vec![3, 3, 3], 3).unwrap().index_of(), 26);
        assert_eq!(MultiIndex::new(vec![2, 3], 3).unwrap().index_of(), 5);
        assert_eq!(multiindex_of(5, 2, 3).unwrap().entries(), &[2, 3]);
        assert!(multiindex_of(9, 2, 3).is_err());
        assert!(MultiIndex::new(vec![0, 1], 2).is_err());
        assert!(MultiIndex::new(vec![3], 2).is_err());
        for k in 0..81 {
            assert_eq!(multiindex_of(k, 4, 3).unwrap().index_of(), k);
        }
        // m = 0: one basis vector, the empty tuple
        assert_eq!(multiindex_of(0, 0, 2).unwrap().len(), 0);
    }

    #[test]
    fn place_permutation() {
        let g = MultiIndex::new(vec![1, 2, 3], 3).unwrap();
        assert_eq!(g.place_permute(&Permutation::identity(3)).unwrap(), g);
        assert_eq!(
            g.place_permute(&cyc("(1 2)", 3)).unwrap().entries(),
            &[2, 1, 3]
        );
        assert!(g.place_permute(&Permutation::identity(2)).is_err());
        // right action at m = 4, n = 2, exhaustive
        let s4: Vec<_> = permutations(4).collect();
        for k in 0..16 {
            let g = multiindex_of(k, 4, 2).unwrap();
            for s in &s4 {
                for r in &s4 {
                    let lhs = g.place_permute(s).unwrap().place_permute(r).unwrap();
                    let rhs = g.place_permute(&s.compose(r).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn perm_operator_examples() {
        assert_eq!(
            perm_operator(&Permutation::identity(3), 2, &cfg()).unwrap(),
            ExactOperator::identity(8)
        );
        let swap = perm_operator(&cyc("(1 2)", 2), 2, &cfg()).unwrap();
        assert_eq!(
            swap,
            ints(&[
                vec![1, 0, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 0, 1]
            ])
        );
        // matches the definition entry by entry
        let s = cyc("(1 3 2)", 3);
        let op = perm_operator(&s, 2, &cfg()).unwrap();
        for col in 0..8 {
            let g = multiindex_of(col, 3, 2).unwrap();
            let row = g.place_permute(&s.inverse()).unwrap().index_of();
            for r in 0..8 {
                let expect = if r == row { 1 } else { 0 };
                assert_eq!(op.entry(r, col), scalar(expect));
            }
        }
    }

    #[test]
    fn homomorphism_and_transpose() {
        for m in 0..=4 {
            let group: Vec<_> = permutations(m).collect();
            for s in &group {
                let ps = perm_operator(s, 2, &cfg()).unwrap();
                assert_eq!(perm_operator(&s.inverse(), 2, &cfg()).unwrap(), ps.transpose());
                if m <= 3 {
                    for r in &group {
                        let pr = perm_operator(r, 2, &cfg()).unwrap();
                        let psr = perm_operator(&s.compose(r).unwrap(), 2, &cfg()).unwrap();
                        assert_eq!(ps.mul(&pr).unwrap(), psr);
                    }
                }
            }
        }
    }

    #[test]
    fn guard() {
        let small = Config::default().with_max_dim(7);
        assert!(perm_operator(&Permutation::identity(3), 2, &small).is_err());
        assert!(symmetrizer_prime(&p(&[2, 1]), 2, &small).is_err());
        assert!(tensor_product(&ExactOperator::identity(3), &ExactOperator::identity(3), &small).is_err());
        assert!(symmetrizer_prime(&Partition::empty(), 2, &cfg()).is_err());
    }

    #[test]
    fn tensor_products() {
        let s = ints(&[vec![1, 0], vec![0, 2]]);
        let k = tensor_product(&s, &ExactOperator::identity(2), &cfg()).unwrap();
        let diag: Vec<_> = (0..4).map(|i| k.entry(i, i)).collect();
        assert_eq!(diag, vec![scalar(1), scalar(1), scalar(2), scalar(2)]);
        assert!(k.first_difference(&ints(&[vec![1,0,0,0],vec![0,1,0,0],vec![0,0,2,0],vec![0,0,0,2]])).is_none());
        assert_eq!(
            tensor_product(&ExactOperator::identity(2), &ExactOperator::identity(3), &cfg()).unwrap(),
            ExactOperator::identity(6)
        );
        for tau in permutations(2) {
            let lhs = tensor_product(
                &perm_operator(&tau, 2, &cfg()).unwrap(),
                &ExactOperator::identity(2),
                &cfg(),
            )
            .unwrap();
            let rhs = perm_operator(&tau.extend(3).unwrap(), 2, &cfg()).unwrap();
            assert_eq!(lhs, rhs);
        }
        let a = ints(&[vec![1, -2], vec![3, 4]]);
        let b = ints(&[vec![0, 5], vec![-1, 7]]);
        let ab = tensor_product(&a, &b, &cfg()).unwrap();
        assert_eq!(ab.trace(), a.trace() * b.trace());
        assert_eq!(ab.entry(1, 2), scalar(-2 * -1));
    }

    #[test]
    fn traces_of_permutations() {
        for s in permutations(4) {
            let op = perm_operator(&s, 2, &cfg()).unwrap();
            assert_eq!(trace(&op), scalar(1 << s.num_cycles()));
        }
    }

    #[test]
    fn partial_trace_examples() {
        let id = ExactOperator::identity(4);
        assert_eq!(
            partial_trace(&id, 2, 2).unwrap(),
            ExactOperator::identity(2).scale(&scalar(2))
        );
        let swap = perm_operator(&cyc("(1 2)", 2), 2, &cfg()).unwrap();
        assert_eq!(partial_trace(&swap, 2, 2).unwrap(), ExactOperator::identity(2));
        let a = ints(&[vec![1, 2, 0], vec![3, 4, 5], vec![6, 7, 9]]);
        let b = ints(&[vec![2, 1], vec![1, -5]]);
        let ab = tensor_product(&a, &b, &cfg()).unwrap();
        assert_eq!(partial_trace(&ab, 3, 2).unwrap(), a.scale(&b.trace()));
        // the two degenerate splits
        assert_eq!(partial_trace(&a, 3, 1).unwrap(), a);
        assert_eq!(partial_trace(&a, 1, 3).unwrap(), ints(&[vec![14]]));
        assert!(partial_trace(&a, 2, 2).is_err());
    }

    #[test]
    fn symmetrizer_examples() {
        let sp = symmetrizer_prime(&p(&[2]), 2, &cfg()).unwrap();
        assert_eq!(
            sp,
            ints(&[
                vec![2, 0, 0, 0],
                vec![0, 1, 1, 0],
                vec![0, 1, 1, 0],
                vec![0, 0, 0, 2]
            ])
        );
        assert_eq!(
            symmetrizer_prime(&p(&[1, 1]), 1, &cfg()).unwrap(),
            ExactOperator::zero(1)
        );
        for n in 1..4 {
            assert_eq!(
                symmetrizer_prime(&p(&[1]), n, &cfg()).unwrap(),
                ExactOperator::identity(n)
            );
        }
        let t = symmetrizer(&p(&[2]), 2, &cfg()).unwrap();
        assert_eq!(t, sp.scale(&Scalar::new(1.into(), 2.into())));
        let anti = symmetrizer(&p(&[1, 1]), 2, &cfg()).unwrap();
        assert_eq!(rank_exact(&anti), 1);
        assert_eq!(anti.trace(), scalar(1));
        for a in crate::partitions::enumerate_partitions(3).unwrap() {
            assert!(is_idempotent(&symmetrizer(&a, 2, &cfg()).unwrap()).unwrap());
        }
    }

    #[test]
    fn rank_of_symmetrizer() {
        let t = symmetrizer(&p(&[2, 1]), 2, &cfg()).unwrap();
        assert_eq!(rank_exact(&t), 4);
    }

    #[test]
    fn fast_trace_examples() {
        assert_eq!(fast_trace_symmetrizer_prime(&p(&[2]), 2, &cfg()).unwrap(), scalar(6));
        assert_eq!(fast_trace_symmetrizer_prime(&p(&[1, 1]), 1, &cfg()).unwrap(), scalar(0));
        assert_eq!(fast_trace_symmetrizer_prime(&p(&[2, 1]), 2, &cfg()).unwrap(), scalar(12));
        assert_eq!(symmetrizer_prime(&p(&[2, 1]), 2, &cfg()).unwrap().trace(), scalar(12));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_symmetry_class(&p(&[2]), 2).unwrap(), BigInt::from(3));
        assert_eq!(dim_symmetry_class(&p(&[1, 1, 1]), 2).unwrap(), BigInt::from(0));
        assert_eq!(dim_symmetry_class(&p(&[2, 1]), 2).unwrap(), BigInt::from(4));
        assert_eq!(dim_symmetry_class(&p(&[2, 2]), 2).unwrap(), BigInt::from(2));
    }
}
