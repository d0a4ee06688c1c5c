//! Certified kernels: modular elimination, Chinese remaindering, rational
//! reconstruction, then exact verification.
//!
//! Nothing leaves this module uncertified. A full-column-rank answer is
//! witnessed by one prime (rank mod p never exceeds rank over Q). A kernel
//! answer is witnessed by integer vectors that were checked against the
//! exact matrix.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{hadamard_bits, IntMatrix};
use super::modp::{residue, ModField, ModMatrix};
use super::primes::PrimeSet;
use crate::error::{Result, WaldError};

/// Running Chinese-remainder image of a vector.
#[derive(Debug, Clone)]
pub struct CrtVector {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl CrtVector {
    pub fn new(residues: &[u64], p: u64) -> Self {
        Self {
            modulus: BigInt::from(p),
            values: residues.iter().map(|&r| BigInt::from(r)).collect(),
        }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Fold in residues modulo a new prime coprime to the current modulus.
    pub fn absorb(&mut self, residues: &[u64], p: u64) {
        assert_eq!(residues.len(), self.values.len());
        let f = ModField::new(p);
        let n_mod = f.enter(residue(&self.modulus, p));
        let n_inv = f.inv(n_mod);
        for (x, &r) in self.values.iter_mut().zip(residues) {
            let cur = f.enter(residue(x, p));
            let delta = f.leave(f.mul(f.sub(f.enter(r % p), cur), n_inv));
            if delta != 0 {
                *x += &self.modulus * BigInt::from(delta);
            }
        }
        self.modulus *= BigInt::from(p);
    }
}

/// Recover a/b from u ≡ a·b⁻¹ (mod n) with |a|, b ≤ sqrt(n/2).
pub fn rational_reconstruct(u: &BigInt, n: &BigInt) -> Option<BigRational> {
    let bound = (n / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (n.clone(), u.mod_floor(n));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Scale a rational vector to a primitive integer vector, keeping the sign
/// of the first nonzero entry.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

fn primitive_from_ints(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut v: Vec<BigInt> = if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    };
    if v.iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.sign() == Sign::Minus)
    {
        for x in &mut v {
            *x = -std::mem::take(x);
        }
    }
    v
}

/// How many kernel vectors a caller needs certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelRequest {
    /// One nonzero vector (existence of a form).
    One,
    /// A full basis, pinning the kernel dimension exactly.
    Basis,
}

/// Outcome of [`certify_kernel`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelCertificate {
    /// The matrix has full column rank modulo `prime`, hence over Q.
    FullColumnRank { prime: u64 },
    /// Exactly verified, linearly independent integer kernel vectors.
    /// With [`KernelRequest::Basis`], `vectors.len()` is the kernel dimension.
    Kernel {
        modular_rank: usize,
        vectors: Vec<Vec<BigInt>>,
        primes: Vec<u64>,
    },
}

struct Accumulator {
    rank: usize,
    pivots: Vec<usize>,
    free: Vec<usize>,
    crt: Vec<CrtVector>,
    primes: Vec<u64>,
}

/// Certify the kernel of an integer matrix given modularly.
///
/// `reduce(p)` must return the matrix modulo `p`, and `verify(v)` must decide
/// M·v = 0 exactly. Primes are consumed in order. A prime whose pivot
/// structure is strictly worse than one already seen is unlucky and skipped;
/// a strictly better one restarts accumulation. After each absorbed prime the
/// requested vectors are reconstructed and, if every entry reconstructs,
/// verified. Running out of primes yields [`WaldError::Inconclusive`].
pub fn certify_kernel<R, V>(
    primes: &[u64],
    request: KernelRequest,
    reduce: R,
    verify: V,
) -> Result<KernelCertificate>
where
    R: Fn(u64) -> ModMatrix,
    V: Fn(&[BigInt]) -> bool,
{
    let mut acc: Option<Accumulator> = None;
    for &p in primes {
        let rref = reduce(p).rref();
        let cols = rref.matrix.cols;
        if rref.rank() == cols {
            return Ok(KernelCertificate::FullColumnRank { prime: p });
        }
        let better = match &acc {
            None => true,
            Some(a) => rref.rank() > a.rank || (rref.rank() == a.rank && rref.pivots < a.pivots),
        };
        let same = acc
            .as_ref()
            .is_some_and(|a| a.rank == rref.rank() && a.pivots == rref.pivots);
        if better {
            let free = rref.free_columns();
            let wanted: Vec<usize> = match request {
                KernelRequest::One => vec![free[0]],
                KernelRequest::Basis => free.clone(),
            };
            let crt = wanted
                .iter()
                .map(|&f| CrtVector::new(&rref.kernel_vector(f), p))
                .collect();
            acc = Some(Accumulator {
                rank: rref.rank(),
                pivots: rref.pivots.clone(),
                free: wanted,
                crt,
                primes: vec![p],
            });
        } else if same {
            let a = acc.as_mut().unwrap();
            for (crt, &f) in a.crt.iter_mut().zip(&a.free) {
                crt.absorb(&rref.kernel_vector(f), p);
            }
            a.primes.push(p);
        } else {
            continue;
        }

        let a = acc.as_ref().unwrap();
        if let Some(vectors) = reconstruct_all(&a.crt) {
            if vectors.iter().all(|v| verify(v)) {
                return Ok(KernelCertificate::Kernel {
                    modular_rank: a.rank,
                    vectors,
                    primes: a.primes.clone(),
                });
            }
        }
    }
    Err(WaldError::Inconclusive(format!(
        "kernel reconstruction failed after {} primes",
        primes.len()
    )))
}

fn reconstruct_all(crts: &[CrtVector]) -> Option<Vec<Vec<BigInt>>> {
    crts.iter()
        .map(|crt| {
            let n = crt.modulus();
            // Common-denominator trick: once a denominator is known, later
            // entries usually reconstruct as integers after scaling.
            let mut den = BigInt::one();
            let mut out: Vec<BigRational> = Vec::with_capacity(crt.values().len());
            for u in crt.values() {
                let scaled = (u * &den).mod_floor(n);
                let q = rational_reconstruct(&scaled, n)?;
                den *= q.denom();
                out.push(q);
            }
            // entries were reconstructed against growing denominators; rescale
            let mut ints = Vec::with_capacity(out.len());
            let mut running = BigInt::one();
            for q in &out {
                // q = u_i * running_i (mod n) where running_i is den before step i
                let num = q.numer() * (&den / (&running * q.denom()));
                ints.push(num);
                running *= q.denom();
            }
            Some(primitive_from_ints(ints))
        })
        .collect()
}

/// One exactly verified rational kernel vector of `m`, or `None` when `m` has
/// full column rank.
pub fn kernel_vector_exact(m: &IntMatrix, primes: &PrimeSet) -> Result<Option<Vec<BigRational>>> {
    if m.cols() == 0 {
        return Ok(None);
    }
    let budget = primes.budget_for_height(hadamard_bits(m));
    let cert = certify_kernel(
        &budget,
        KernelRequest::One,
        |p| m.reduce(ModField::new(p)),
        |v| m.annihilates(v),
    )?;
    Ok(match cert {
        KernelCertificate::FullColumnRank { .. } => None,
        KernelCertificate::Kernel { mut vectors, .. } => Some(
            vectors
                .swap_remove(0)
                .into_iter()
                .map(BigRational::from_integer)
                .collect(),
        ),
    })
}

/// Verified kernel basis of `m` (empty iff full column rank).
pub fn kernel_basis_exact(m: &IntMatrix, primes: &PrimeSet) -> Result<Vec<Vec<BigInt>>> {
    if m.cols() == 0 {
        return Ok(Vec::new());
    }
    let budget = primes.budget_for_height(hadamard_bits(m));
    let cert = certify_kernel(
        &budget,
        KernelRequest::Basis,
        |p| m.reduce(ModField::new(p)),
        |v| m.annihilates(v),
    )?;
    Ok(match cert {
        KernelCertificate::FullColumnRank { .. } => Vec::new(),
        KernelCertificate::Kernel { vectors, .. } => vectors,
    })
}
