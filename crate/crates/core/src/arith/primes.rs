//! Word-sized primes for the modular fast path.

use crate::error::{Result, WaldError};

/// The eight largest primes below 2^62, in descending order.
pub const DEFAULT_PRIMES: [u64; 8] = [
    4611686018427387847, // 2^62 - 57
    4611686018427387817, // 2^62 - 87
    4611686018427387787, // 2^62 - 117
    4611686018427387761, // 2^62 - 143
    4611686018427387751, // 2^62 - 153
    4611686018427387737, // 2^62 - 167
    4611686018427387733, // 2^62 - 171
    4611686018427387709, // 2^62 - 195
];

/// Upper limit (exclusive) for every prime in a [`PrimeSet`].
pub const PRIME_LIMIT: u64 = 1 << 62;

/// Total number of primes the default set may grow to when a kernel lift
/// needs more modulus than the fixed list provides.
pub const DEFAULT_BUDGET: usize = 32;

/// Environment variable overriding the prime list (comma separated).
pub const PRIMES_ENV: &str = "WALD_PRIMES";

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest prime strictly below `n`, if any.
pub fn prev_prime(n: u64) -> Option<u64> {
    (2..n).rev().find(|&c| is_prime(c))
}

/// Ordered list of distinct primes below 2^62.
///
/// `primes` is the full budget. The first [`PrimeSet::base_len`] entries are
/// the ones normally consulted; the remainder is only used to extend the
/// modulus during rational reconstruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSet {
    primes: Vec<u64>,
    base_len: usize,
    /// An explicit list is the whole budget and is never extended.
    pinned: bool,
}

impl PrimeSet {
    /// Build from an explicit list. Every entry must be prime, below 2^62,
    /// and the list must be free of repeats.
    pub fn new(primes: Vec<u64>) -> Result<Self> {
        if primes.is_empty() {
            return Err(WaldError::Parameter("empty prime list".into()));
        }
        for (i, &p) in primes.iter().enumerate() {
            if p >= PRIME_LIMIT || !is_prime(p) {
                return Err(WaldError::Parameter(format!(
                    "{p} is not a prime below 2^62"
                )));
            }
            if primes[..i].contains(&p) {
                return Err(WaldError::Parameter(format!("prime {p} listed twice")));
            }
        }
        let base_len = primes.len();
        Ok(Self {
            primes,
            base_len,
            pinned: true,
        })
    }

    /// The fixed eight-prime list extended deterministically (descending
    /// primes below the last default) up to [`DEFAULT_BUDGET`] entries.
    pub fn standard() -> Self {
        let mut primes = DEFAULT_PRIMES.to_vec();
        let mut next = *primes.last().unwrap();
        while primes.len() < DEFAULT_BUDGET {
            next = prev_prime(next).expect("primes below 2^62 are plentiful");
            primes.push(next);
        }
        Self {
            primes,
            base_len: DEFAULT_PRIMES.len(),
            pinned: false,
        }
    }

    /// Primes for a reconstruction whose numerators and denominators are
    /// bounded by 2^`height_bits`: the standard budget, extended with further
    /// descending primes until their product exceeds 2^(2·height_bits + 1).
    /// An explicit list is returned unchanged.
    pub fn budget_for_height(&self, height_bits: u64) -> Vec<u64> {
        let mut primes = self.primes.clone();
        if self.pinned {
            return primes;
        }
        // each prime contributes just under 62 bits; keep a two-prime margin
        let need = ((2 * height_bits + 1) / 61 + 2) as usize;
        let mut next = *primes.last().unwrap();
        while primes.len() < need {
            next = prev_prime(next).expect("primes below 2^62 are plentiful");
            primes.push(next);
        }
        primes
    }

    /// `standard()` unless `WALD_PRIMES` is set, in which case exactly the
    /// listed primes form the whole budget.
    pub fn from_env() -> Result<Self> {
        match std::env::var(PRIMES_ENV) {
            Ok(raw) if !raw.trim().is_empty() => {
                let parsed = raw
                    .split(',')
                    .map(|t| {
                        t.trim().parse::<u64>().map_err(|_| {
                            WaldError::Parameter(format!("bad prime `{t}` in {PRIMES_ENV}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::new(parsed)
            }
            _ => Ok(Self::standard()),
        }
    }

    pub fn all(&self) -> &[u64] {
        &self.primes
    }

    pub fn base(&self) -> &[u64] {
        &self.primes[..self.base_len]
    }

    pub fn base_len(&self) -> usize {
        self.base_len
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn first(&self) -> u64 {
        self.primes[0]
    }
}

impl Default for PrimeSet {
    fn default() -> Self {
        Self::standard()
    }
}
