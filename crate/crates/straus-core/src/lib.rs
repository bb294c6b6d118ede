//! Constructions of high-density sets that avoid shifted combinatorial
//! configurations, together with the finite certificates that make the
//! avoidance checkable.
//!
//! The crate builds sets `A` of lower density `> 1 - eps` (along a named
//! Følner sequence) in ℤ, in restricted direct sums of cyclic groups, and in
//! `(ℕ, ×)`, such that no shift of `A` contains an infinite configuration of
//! a chosen family: finite sums (IP sets), k-fold sumsets, k-fold product
//! sets, polynomial sum patterns `P(b₁) + b₂ + t`, and product-sum patterns
//! `b₁b₂ + b₃ + t`. Every build produces a finite certificate (per-shift
//! divisor sets, trim cutoffs, exceptional counts, and size bounds `M_t`)
//! and the [`search`] module provides exhaustive oracles that re-check the
//! bounds on concrete windows.
//!
//! The crate is `no_std` + `alloc`; IO, file formats, and the CLI live in
//! the companion `straus-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(any(test, feature = "reference-oracles"))]
extern crate std;

pub mod build;
pub mod cover;
pub mod divisor;
pub mod factor;
pub mod folner;
pub mod group;
pub mod poly;
pub mod primes;
pub mod search;
pub mod sets;
pub mod verify;

/// Exact rational scalar used for all densities, budgets, and error bounds.
pub type Q = num_rational::BigRational;

pub(crate) mod util {
    use super::Q;
    use num_bigint::BigInt;

    /// `a * b mod m` without overflow for any `u64` inputs.
    #[inline]
    pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
        ((a as u128 * b as u128) % (m as u128)) as u64
    }

    /// Euclidean remainder of an `i64` value, as a `u64` in `[0, m)`.
    #[inline]
    pub fn rem_euclid_u64(v: i64, m: u64) -> u64 {
        debug_assert!(m > 0);
        (v as i128).rem_euclid(m as i128) as u64
    }

    pub fn q_from(num: i64, den: i64) -> Q {
        Q::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn q_u64(v: u64) -> Q {
        Q::from_integer(BigInt::from(v))
    }
}
