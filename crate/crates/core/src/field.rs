//! Prime field arithmetic on `u64` residues and matrix rank over it.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

/// The Mersenne prime `2^61 − 1`.
pub const DEFAULT_PRIME: u64 = 2_305_843_009_213_693_951;

/// Smallest accepted modulus.
pub const MIN_PRIME: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    /// Accepts odd primes of at least [`MIN_PRIME`] and below `2^63`.
    pub fn new(p: u64) -> Result<Self> {
        if p < MIN_PRIME {
            return Err(Error::InvalidPrime(
                p,
                format!("must be at least {MIN_PRIME}"),
            ));
        }
        if p >= 1 << 63 {
            return Err(Error::InvalidPrime(p, "must be below 2^63".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p, "not prime".into()));
        }
        Ok(Fp { p })
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn reduce(self, x: u64) -> u64 {
        x % self.p
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u64) -> u64 {
        assert_ne!(a, 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn div(self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    pub fn from_i64(self, c: i64) -> u64 {
        let r = (c as i128).rem_euclid(self.p as i128);
        r as u64
    }

    pub fn from_bigint(self, c: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let mut r = c % &p;
        if r.is_negative() {
            r += &p;
        }
        r.to_u64().expect("residue fits in u64")
    }

    /// Rank of a dense matrix by Gaussian elimination. Entries must be reduced.
    pub fn rank(self, matrix: &[Vec<u64>]) -> usize {
        let mut rows: Vec<Vec<u64>> = matrix.to_vec();
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = self.inv(rows[rank][c]);
            for x in rows[rank].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..rows.len() {
                if r != rank && rows[r][c] != 0 {
                    let factor = rows[r][c];
                    for k in c..cols {
                        let delta = self.mul(factor, rows[rank][k]);
                        rows[r][k] = self.sub(rows[r][k], delta);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            exp >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(is_prime(65_537));
        assert!(!is_prime(65_535));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(Fp::new(2).is_err());
        assert!(Fp::new(65_536).is_err());
        assert!(Fp::new(1_000_000_007).is_ok());
    }

    #[test]
    fn arithmetic() {
        let f = Fp::new(1_000_000_007).unwrap();
        let a = 123_456_789;
        assert_eq!(f.mul(a, f.inv(a)), 1);
        assert_eq!(f.add(f.neg(a), a), 0);
        assert_eq!(f.from_i64(-1), 1_000_000_006);
        assert_eq!(f.from_bigint(&BigInt::from(-3)), 1_000_000_004);
    }

    #[test]
    fn rank_small() {
        let f = Fp::new(DEFAULT_PRIME).unwrap();
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(f.rank(&m), 2);
        assert_eq!(f.rank(&[]), 0);
    }
}
