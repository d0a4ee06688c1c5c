use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::modp::{ModField, ModMatrix};
use super::primes::{is_prime, PRIME_LIMIT};
use crate::error::{Result, WaldError};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(WaldError::MalformedMatrix {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Build from nested rows; all rows must share one length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(WaldError::MalformedMatrix {
                    rows: rows.len(),
                    cols,
                    len: entries.len() + r.len(),
                });
            }
            entries.extend(r.iter().cloned().map(Into::into));
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                out.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries: out,
        }
    }

    /// Exact product M·v.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// True iff M·v = 0, checked row by row with early exit.
    pub fn annihilates(&self, v: &[BigInt]) -> bool {
        if v.len() != self.cols {
            return false;
        }
        (0..self.rows).all(|r| {
            self.row(r)
                .iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
                .is_zero()
        })
    }

    pub fn reduce(&self, field: ModField) -> ModMatrix {
        ModMatrix {
            field,
            rows: self.rows,
            cols: self.cols,
            data: self.entries.iter().map(|x| field.from_bigint(x)).collect(),
        }
    }
}

/// Rank of `m` reduced modulo the prime `p`; never exceeds the rational rank.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    if p >= PRIME_LIMIT || !is_prime(p) {
        return Err(WaldError::Parameter(format!(
            "{p} is not a prime below 2^62"
        )));
    }
    Ok(m.reduce(ModField::new(p)).rank())
}

/// Bits of a Hadamard bound on every minor: the product of the largest
/// min(rows, cols) Euclidean row norms.
pub fn hadamard_bits(m: &IntMatrix) -> u64 {
    let mut norms: Vec<u64> = (0..m.rows)
        .map(|r| {
            let sq: BigInt = m.row(r).iter().map(|x| x * x).sum();
            sq.bits().div_ceil(2)
        })
        .collect();
    norms.sort_unstable_by(|a, b| b.cmp(a));
    norms.iter().take(m.rows.min(m.cols)).sum::<u64>().max(1)
}

/// Rank over Q by fraction-free (Bareiss) elimination.
///
/// Every intermediate entry is a minor of the input, so each division by the
/// previous pivot is exact.
pub fn rank_exact(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(piv, rank);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pv = &pivot_row[c];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = pv * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = top[rank][c].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn rank_mod_p_examples() {
        assert_eq!(rank_mod_p(&IntMatrix::identity(3), 5).unwrap(), 3);
        assert_eq!(rank_mod_p(&m(&[vec![2, 4], vec![1, 2]]), 7).unwrap(), 1);
        assert_eq!(rank_mod_p(&m(&[vec![5, 0], vec![0, 1]]), 5).unwrap(), 1);
    }

    #[test]
    fn rank_mod_p_rejects_composite() {
        assert!(matches!(
            rank_mod_p(&IntMatrix::identity(2), 9),
            Err(WaldError::Parameter(_))
        ));
        assert!(rank_mod_p(&IntMatrix::identity(2), 1).is_err());
    }

    #[test]
    fn rank_exact_examples() {
        assert_eq!(rank_exact(&m(&[vec![5, 0], vec![0, 1]])), 2);
        assert_eq!(rank_exact(&IntMatrix::zeros(4, 6)), 0);
        assert_eq!(
            rank_exact(&m(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]])),
            2
        );
        // skipped column in the middle of elimination
        assert_eq!(
            rank_exact(&m(&[vec![1, 2, 1, 0], vec![2, 4, 3, 1], vec![3, 6, 4, 1]])),
            2
        );
    }

    #[test]
    fn malformed_is_rejected() {
        assert!(IntMatrix::new(2, 2, vec![BigInt::one(); 3]).is_err());
        assert!(IntMatrix::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn mul_vec_and_annihilates() {
        let a = m(&[vec![1, 1, 1], vec![0, 2, -2]]);
        let v: Vec<BigInt> = [-2, 1, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(a.mul_vec(&v), vec![BigInt::zero(), BigInt::zero()]);
        assert!(a.annihilates(&v));
        assert!(!a.annihilates(&v[..2]));
    }
}
