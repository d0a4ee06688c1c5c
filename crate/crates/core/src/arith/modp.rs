//! Dense linear algebra over Z/pZ for p < 2^62.
//!
//! Odd moduli use Montgomery representation (R = 2^64); entries of a
//! [`ModMatrix`] are stored in that form. p = 2 falls back to plain
//! remainders. Zero is zero in either representation, so rank and pivot
//! structure never need to leave Montgomery form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModField {
    p: u64,
    /// -p^{-1} mod 2^64 (unused when p is even)
    ninv: u64,
    /// 2^128 mod p
    r2: u64,
    montgomery: bool,
}

impl ModField {
    /// `p` must be a prime below 2^62; primality is the caller's contract.
    pub fn new(p: u64) -> Self {
        debug_assert!((2..(1 << 62)).contains(&p));
        if p.is_multiple_of(2) {
            return Self {
                p,
                ninv: 0,
                r2: 0,
                montgomery: false,
            };
        }
        let mut inv: u64 = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        debug_assert_eq!(p.wrapping_mul(inv), 1);
        let r1 = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r1 as u128 * r1 as u128) % p as u128) as u64;
        Self {
            p,
            ninv: inv.wrapping_neg(),
            r2,
            montgomery: true,
        }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.ninv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.montgomery {
            self.redc(a as u128 * b as u128)
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Map a canonical residue in [0, p) into internal form.
    #[inline]
    pub fn enter(&self, x: u64) -> u64 {
        if self.montgomery {
            self.redc(x as u128 * self.r2 as u128)
        } else {
            x
        }
    }

    /// Inverse of [`ModField::enter`].
    #[inline]
    pub fn leave(&self, x: u64) -> u64 {
        if self.montgomery {
            self.redc(x as u128)
        } else {
            x
        }
    }

    pub fn one(&self) -> u64 {
        self.enter(1)
    }

    pub fn from_u64(&self, x: u64) -> u64 {
        self.enter(x % self.p)
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        let r = x.rem_euclid(self.p as i64) as u64;
        self.enter(r)
    }

    pub fn from_bigint(&self, x: &BigInt) -> u64 {
        let r = x.mod_floor(&BigInt::from(self.p));
        self.enter(r.to_u64().expect("residue fits in u64"))
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one();
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }
}

/// Residue of a signed big integer in [0, p).
pub fn residue(x: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let r = x % &pb;
    let r = if r.is_negative() { r + pb } else { r };
    r.to_u64().expect("residue fits in u64")
}

/// Row-major dense matrix over Z/pZ, entries in the field's internal form.
#[derive(Debug, Clone)]
pub struct ModMatrix {
    pub field: ModField,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

/// Reduced row echelon form together with its pivot structure.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: ModMatrix,
    pub pivots: Vec<usize>,
}

impl ModMatrix {
    pub fn zeros(field: ModField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let cols = self.cols;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (head, tail) = self.data.split_at_mut(hi * cols);
        head[lo * cols..(lo + 1) * cols].swap_with_slice(&mut tail[..cols]);
    }

    /// row[target] -= factor * row[source], restricted to columns >= from.
    fn axpy_row(&mut self, target: usize, source: usize, factor: u64, from: usize) {
        let cols = self.cols;
        let f = self.field;
        let (t, s) = if target < source {
            let (head, tail) = self.data.split_at_mut(source * cols);
            (&mut head[target * cols..(target + 1) * cols], &tail[..cols])
        } else {
            let (head, tail) = self.data.split_at_mut(target * cols);
            (&mut tail[..cols], &head[source * cols..(source + 1) * cols])
        };
        for (x, &y) in t[from..].iter_mut().zip(&s[from..]) {
            if y != 0 {
                *x = f.sub(*x, f.mul(factor, y));
            }
        }
    }

    fn scale_row(&mut self, r: usize, factor: u64, from: usize) {
        let f = self.field;
        let cols = self.cols;
        for x in &mut self.data[r * cols + from..(r + 1) * cols] {
            *x = f.mul(*x, factor);
        }
    }

    /// Rank by forward elimination; stops early once every column has a pivot.
    pub fn rank(mut self) -> usize {
        let f = self.field;
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            self.swap_rows(piv, rank);
            let inv = f.inv(self.get(rank, c));
            for r in rank + 1..self.rows {
                let x = self.get(r, c);
                if x != 0 {
                    self.axpy_row(r, rank, f.mul(x, inv), c);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss-Jordan elimination; pivot = first nonzero entry in scan order.
    pub fn rref(mut self) -> Rref {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            self.swap_rows(piv, rank);
            let inv = f.inv(self.get(rank, c));
            self.scale_row(rank, inv, c);
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let x = self.get(r, c);
                if x != 0 {
                    self.axpy_row(r, rank, x, c);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        Rref {
            matrix: self,
            pivots,
        }
    }
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.matrix.cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.matrix.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Kernel basis vector attached to free column `free`, as canonical
    /// residues: 1 at `free`, 0 at other free columns.
    pub fn kernel_vector(&self, free: usize) -> Vec<u64> {
        let f = self.matrix.field;
        let mut v = vec![0u64; self.matrix.cols];
        v[free] = 1;
        for (row, &pc) in self.pivots.iter().enumerate() {
            let x = self.matrix.get(row, free);
            v[pc] = f.leave(f.neg(x));
        }
        v
    }
}
