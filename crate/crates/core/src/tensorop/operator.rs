use std::fmt;

use num::{BigInt, BigRational, Integer, One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `p/q` with the denominator always written, e.g. `3/1`, `-1/2`.
pub fn format_scalar(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = |e: &dyn fmt::Display| Error::Parse(format!("bad rational {s:?}: {e}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|e| bad(&e))?;
            let q: BigInt = q.trim().parse().map_err(|e| bad(&e))?;
            if q.is_zero() {
                return Err(bad(&"zero denominator"));
            }
            Ok(Scalar::new(p, q))
        }
        None => Ok(Scalar::from_integer(s.parse().map_err(|e| bad(&e))?)),
    }
}

#[derive(Debug, Clone)]
enum Repr {
    Dense(Vec<Scalar>),
    /// `map[col] = row` of the single 1 in that column.
    Permutation(Vec<usize>),
}

/// A square matrix of exact rationals, stored densely or, for permutation
/// matrices, as a column-to-row index map.
#[derive(Debug, Clone)]
pub struct ExactOperator {
    dim: usize,
    repr: Repr,
}

impl ExactOperator {
    pub fn identity(dim: usize) -> Self {
        ExactOperator {
            dim,
            repr: Repr::Permutation((0..dim).collect()),
        }
    }

    pub fn zero(dim: usize) -> Self {
        ExactOperator {
            dim,
            repr: Repr::Dense(vec![Scalar::zero(); dim * dim]),
        }
    }

    /// Row-major entries.
    pub fn from_dense(dim: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {dim}x{dim} operator",
                entries.len()
            )));
        }
        Ok(ExactOperator {
            dim,
            repr: Repr::Dense(entries),
        })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        Self::from_dense(dim, rows.into_iter().flatten().collect())
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| scalar(x)).collect())
                .collect(),
        )
    }

    /// Permutation matrix with a 1 at `(map[col], col)`.
    pub fn from_column_map(map: Vec<usize>) -> Result<Self> {
        let dim = map.len();
        let mut seen = vec![false; dim];
        for &row in &map {
            if row >= dim || seen[row] {
                return Err(Error::InvalidPermutation(
                    "column map is not a bijection".into(),
                ));
            }
            seen[row] = true;
        }
        Ok(ExactOperator {
            dim,
            repr: Repr::Permutation(map),
        })
    }

    /// The matrix unit with a single 1 at `(row, col)` (0-based).
    pub fn matrix_unit(dim: usize, row: usize, col: usize) -> Self {
        let mut entries = vec![Scalar::zero(); dim * dim];
        entries[row * dim + col] = Scalar::one();
        ExactOperator {
            dim,
            repr: Repr::Dense(entries),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_permutation(&self) -> bool {
        matches!(self.repr, Repr::Permutation(_))
    }

    /// The column map when stored as a permutation matrix.
    pub fn column_map(&self) -> Option<&[usize]> {
        match &self.repr {
            Repr::Permutation(map) => Some(map),
            Repr::Dense(_) => None,
        }
    }

    /// Entry at `(row, col)`, 0-based.
    pub fn entry(&self, row: usize, col: usize) -> Scalar {
        match &self.repr {
            Repr::Dense(e) => e[row * self.dim + col].clone(),
            Repr::Permutation(map) => {
                if map[col] == row {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }
        }
    }

    /// Row-major entries.
    pub fn to_dense(&self) -> Vec<Scalar> {
        match &self.repr {
            Repr::Dense(e) => e.clone(),
            Repr::Permutation(map) => {
                let mut e = vec![Scalar::zero(); self.dim * self.dim];
                for (col, &row) in map.iter().enumerate() {
                    e[row * self.dim + col] = Scalar::one();
                }
                e
            }
        }
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        let dense = self.to_dense();
        if self.dim == 0 {
            return Vec::new();
        }
        dense.chunks(self.dim).map(<[Scalar]>::to_vec).collect()
    }

    pub fn trace(&self) -> Scalar {
        match &self.repr {
            Repr::Dense(e) => (0..self.dim).map(|k| &e[k * self.dim + k]).sum(),
            Repr::Permutation(map) => {
                let fixed = map.iter().enumerate().filter(|(c, &r)| *c == r).count();
                scalar(fixed as i64)
            }
        }
    }

    pub fn transpose(&self) -> ExactOperator {
        match &self.repr {
            Repr::Permutation(map) => {
                let mut inv = vec![0; self.dim];
                for (col, &row) in map.iter().enumerate() {
                    inv[row] = col;
                }
                ExactOperator {
                    dim: self.dim,
                    repr: Repr::Permutation(inv),
                }
            }
            Repr::Dense(e) => {
                let d = self.dim;
                let mut t = vec![Scalar::zero(); d * d];
                for r in 0..d {
                    for c in 0..d {
                        t[c * d + r] = e[r * d + c].clone();
                    }
                }
                ExactOperator {
                    dim: d,
                    repr: Repr::Dense(t),
                }
            }
        }
    }

    fn check_same_dim(&self, other: &ExactOperator) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &ExactOperator) -> Result<ExactOperator> {
        self.check_same_dim(other)?;
        let mut e = self.to_dense();
        match &other.repr {
            Repr::Dense(o) => e.iter_mut().zip(o).for_each(|(a, b)| *a += b),
            Repr::Permutation(map) => {
                for (col, &row) in map.iter().enumerate() {
                    e[row * self.dim + col] += Scalar::one();
                }
            }
        }
        Self::from_dense(self.dim, e)
    }

    pub fn sub(&self, other: &ExactOperator) -> Result<ExactOperator> {
        self.add(&other.scale(&scalar(-1)))
    }

    pub fn scale(&self, k: &Scalar) -> ExactOperator {
        if k.is_one() {
            return self.clone();
        }
        let e = self.to_dense().into_iter().map(|x| x * k).collect();
        ExactOperator {
            dim: self.dim,
            repr: Repr::Dense(e),
        }
    }

    /// Adds `delta` to a single entry.
    pub fn perturb(&self, row: usize, col: usize, delta: &Scalar) -> ExactOperator {
        let mut e = self.to_dense();
        e[row * self.dim + col] += delta;
        ExactOperator {
            dim: self.dim,
            repr: Repr::Dense(e),
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &ExactOperator) -> Result<ExactOperator> {
        self.check_same_dim(other)?;
        let d = self.dim;
        match (&self.repr, &other.repr) {
            (Repr::Permutation(p), Repr::Permutation(q)) => Ok(ExactOperator {
                dim: d,
                repr: Repr::Permutation(q.iter().map(|&c| p[c]).collect()),
            }),
            // (P·B)[p(c), k] = B[c, k]
            (Repr::Permutation(p), Repr::Dense(b)) => {
                let mut e = vec![Scalar::zero(); d * d];
                for (c, &r) in p.iter().enumerate() {
                    e[r * d..(r + 1) * d].clone_from_slice(&b[c * d..(c + 1) * d]);
                }
                Self::from_dense(d, e)
            }
            // (A·Q)[i, c] = A[i, q(c)]
            (Repr::Dense(a), Repr::Permutation(q)) => {
                let mut e = Vec::with_capacity(d * d);
                for i in 0..d {
                    e.extend(q.iter().map(|&r| a[i * d + r].clone()));
                }
                Self::from_dense(d, e)
            }
            (Repr::Dense(a), Repr::Dense(b)) => Self::from_dense(d, dense_product(d, a, b)),
        }
    }

    /// First `(row, col)` in row-major order where the two operators differ.
    pub fn first_difference(&self, other: &ExactOperator) -> Option<(usize, usize)> {
        if self.dim != other.dim {
            return Some((0, 0));
        }
        if let (Repr::Permutation(p), Repr::Permutation(q)) = (&self.repr, &other.repr) {
            if p == q {
                return None;
            }
        }
        let a = self.to_dense();
        let b = other.to_dense();
        a.iter()
            .zip(&b)
            .position(|(x, y)| x != y)
            .map(|k| (k / self.dim, k % self.dim))
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Dense(e) => e.iter().all(Zero::is_zero),
            Repr::Permutation(_) => self.dim == 0,
        }
    }
}

impl PartialEq for ExactOperator {
    fn eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

impl Eq for ExactOperator {}

fn common_denominator(entries: &[Scalar]) -> BigInt {
    entries
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn to_numerators(entries: &[Scalar], den: &BigInt) -> Vec<BigInt> {
    entries
        .iter()
        .map(|x| x.numer() * (den / x.denom()))
        .collect()
}

/// Dense product over a common denominator so the inner loop stays in
/// integer arithmetic.
fn dense_product(d: usize, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let da = common_denominator(a);
    let db = common_denominator(b);
    let ia = to_numerators(a, &da);
    let ib = to_numerators(b, &db);
    let den = &da * &db;
    let mut acc = vec![BigInt::zero(); d * d];
    for i in 0..d {
        let row = &mut acc[i * d..(i + 1) * d];
        for j in 0..d {
            let x = &ia[i * d + j];
            if x.is_zero() {
                continue;
            }
            for (slot, y) in row.iter_mut().zip(&ib[j * d..(j + 1) * d]) {
                if !y.is_zero() {
                    *slot += x * y;
                }
            }
        }
    }
    acc.into_iter()
        .map(|n| Scalar::new(n, den.clone()))
        .collect()
}

/// `S ⊗ R` with the `S` factor most significant in the basis order.
pub(crate) fn kron(s: &ExactOperator, r: &ExactOperator) -> ExactOperator {
    let (da, db) = (s.dim, r.dim);
    let dim = da * db;
    if let (Repr::Permutation(p), Repr::Permutation(q)) = (&s.repr, &r.repr) {
        let mut map = Vec::with_capacity(dim);
        for &pk in p {
            map.extend(q.iter().map(|&ql| pk * db + ql));
        }
        return ExactOperator {
            dim,
            repr: Repr::Permutation(map),
        };
    }
    let se = s.to_dense();
    let re = r.to_dense();
    let mut e = vec![Scalar::zero(); dim * dim];
    for i in 0..da {
        for k in 0..da {
            let sik = &se[i * da + k];
            if sik.is_zero() {
                continue;
            }
            for j in 0..db {
                for l in 0..db {
                    let rjl = &re[j * db + l];
                    if !rjl.is_zero() {
                        e[(i * db + j) * dim + (k * db + l)] = sik * rjl;
                    }
                }
            }
        }
    }
    ExactOperator {
        dim,
        repr: Repr::Dense(e),
    }
}

/// Contracts the trailing factor of dimension `db`:
/// `out[i, k] = Σ_j T[(i, j), (k, j)]`.
pub(crate) fn contract_last(t: &ExactOperator, da: usize, db: usize) -> ExactOperator {
    match &t.repr {
        Repr::Permutation(map) => {
            let mut counts = vec![0i64; da * da];
            for k in 0..da {
                for j in 0..db {
                    let row = map[k * db + j];
                    if row % db == j {
                        counts[(row / db) * da + k] += 1;
                    }
                }
            }
            ExactOperator {
                dim: da,
                repr: Repr::Dense(counts.into_iter().map(scalar).collect()),
            }
        }
        Repr::Dense(e) => {
            let dim = t.dim;
            let mut out = vec![Scalar::zero(); da * da];
            for i in 0..da {
                for k in 0..da {
                    let slot = &mut out[i * da + k];
                    for j in 0..db {
                        let x = &e[(i * db + j) * dim + (k * db + j)];
                        if !x.is_zero() {
                            *slot += x;
                        }
                    }
                }
            }
            ExactOperator {
                dim: da,
                repr: Repr::Dense(out),
            }
        }
    }
}

impl ExactOperator {
    /// Integer-valued dense operator from row-major counts.
    pub(crate) fn from_integer_entries(dim: usize, entries: Vec<i64>) -> ExactOperator {
        ExactOperator {
            dim,
            repr: Repr::Dense(entries.into_iter().map(scalar).collect()),
        }
    }

    /// Whether every entry is an integer.
    pub fn is_integral(&self) -> bool {
        match &self.repr {
            Repr::Dense(e) => e.iter().all(|x| x.is_integer()),
            Repr::Permutation(_) => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_op(rows: &[Vec<i64>]) -> ExactOperator {
        ExactOperator::from_integer_rows(rows).unwrap()
    }

    #[test]
    fn scalar_text() {
        assert_eq!(format_scalar(&scalar(3)), "3/1");
        assert_eq!(format_scalar(&Scalar::new(BigInt::from(-2), BigInt::from(4))), "-1/2");
        assert_eq!(parse_scalar("6/4").unwrap(), Scalar::new(3.into(), 2.into()));
        assert_eq!(parse_scalar("-7").unwrap(), scalar(-7));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn products_agree_across_storage() {
        let p = ExactOperator::from_column_map(vec![2, 0, 1]).unwrap();
        let q = ExactOperator::from_column_map(vec![1, 2, 0]).unwrap();
        let a = int_op(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]);
        let pd = ExactOperator::from_dense(3, p.to_dense()).unwrap();
        let qd = ExactOperator::from_dense(3, q.to_dense()).unwrap();
        assert_eq!(p.mul(&q).unwrap(), pd.mul(&qd).unwrap());
        assert_eq!(p.mul(&a).unwrap(), pd.mul(&a).unwrap());
        assert_eq!(a.mul(&q).unwrap(), a.mul(&qd).unwrap());
        assert_eq!(p.transpose(), pd.transpose());
        assert_eq!(p.mul(&p.transpose()).unwrap(), ExactOperator::identity(3));
    }

    #[test]
    fn trace_and_equality() {
        assert_eq!(ExactOperator::identity(5).trace(), scalar(5));
        let a = int_op(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.trace(), scalar(5));
        assert_eq!(a.perturb(0, 1, &scalar(1)).first_difference(&a), Some((0, 1)));
        assert_ne!(ExactOperator::zero(2), ExactOperator::identity(2));
        assert!(ExactOperator::from_column_map(vec![0, 0]).is_err());
        assert!(ExactOperator::from_integer_rows(&[vec![1, 2]]).is_err());
    }

    #[test]
    fn rational_product() {
        let half = Scalar::new(1.into(), 2.into());
        let a = ExactOperator::identity(2).scale(&half);
        let b = int_op(&[vec![2, 0], vec![1, 3]]);
        assert_eq!(
            a.mul(&b).unwrap(),
            ExactOperator::from_rows(vec![
                vec![scalar(1), scalar(0)],
                vec![half.clone(), Scalar::new(3.into(), 2.into())]
            ])
            .unwrap()
        );
    }
}
