//! Exact integer/rational linear algebra with a modular fast path.

pub mod lift;
pub mod matrix;
pub mod modp;
pub mod primes;

pub use lift::{
    certify_kernel, kernel_basis_exact, kernel_vector_exact, rational_reconstruct,
    KernelCertificate, KernelRequest,
};
pub use matrix::{hadamard_bits, rank_exact, rank_mod_p, IntMatrix};
pub use modp::{ModField, ModMatrix};
pub use primes::{is_prime, PrimeSet};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
