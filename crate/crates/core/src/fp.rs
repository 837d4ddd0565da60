//! Arithmetic in the prime field F_p.
//!
//! Every scalar carries its modulus so that values from different field
//! configurations cannot be mixed silently. The default modulus is 101; any
//! prime below 2^31 is accepted (products then fit in u64).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::LinAlgError;

/// Default field modulus used by the CLI and the example catalog.
pub const DEFAULT_PRIME: u64 = 101;

const PRIME_LIMIT: u64 = 1 << 31;

/// Checks primality by trial division. Desk-scale moduli only.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Validates a field modulus: prime and small enough for overflow-free u64
/// products.
pub fn check_prime(p: u64) -> Result<(), LinAlgError> {
    if p >= PRIME_LIMIT || !is_prime(p) {
        return Err(LinAlgError::NotPrime(p));
    }
    Ok(())
}

/// An element of F_p. `value` is the canonical residue in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    pub value: u64,
    pub prime: u64,
}

impl Fp {
    pub fn new(value: i64, prime: u64) -> Self {
        let p = prime as i64;
        let v = ((value % p) + p) % p;
        Fp { value: v as u64, prime }
    }

    pub fn zero(prime: u64) -> Self {
        Fp { value: 0, prime }
    }

    pub fn one(prime: u64) -> Self {
        Fp { value: 1 % prime, prime }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Fp> {
        if self.value == 0 {
            return None;
        }
        // extended Euclid on (value, p)
        let (mut r0, mut r1) = (self.prime as i128, self.value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus must be prime");
        let p = self.prime as i128;
        let v = ((t0 % p) + p) % p;
        Some(Fp { value: v as u64, prime: self.prime })
    }

    pub fn pow(&self, mut e: u64) -> Fp {
        let mut base = *self;
        let mut acc = Fp::one(self.prime);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

#[inline]
fn same_prime(a: &Fp, b: &Fp) {
    debug_assert_eq!(a.prime, b.prime, "mixed field moduli {} and {}", a.prime, b.prime);
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        same_prime(&self, &rhs);
        let mut v = self.value + rhs.value;
        if v >= self.prime {
            v -= self.prime;
        }
        Fp { value: v, prime: self.prime }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        same_prime(&self, &rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.prime - rhs.value
        };
        Fp { value: v, prime: self.prime }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        same_prime(&self, &rhs);
        Fp { value: (self.value * rhs.value) % self.prime, prime: self.prime }
    }
}

impl Div for Fp {
    type Output = Fp;
    #[inline]
    fn div(self, rhs: Fp) -> Fp {
        same_prime(&self, &rhs);
        let inv = rhs.inverse().expect("division by zero in F_p");
        self * inv
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            Fp { value: self.prime - self.value, prime: self.prime }
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(101));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
        assert!(check_prime(101).is_ok());
        assert!(check_prime(100).is_err());
    }

    #[test]
    fn field_ops() {
        let p = 101;
        let a = Fp::new(45, p);
        let b = Fp::new(77, p);
        assert_eq!((a + b).value, (45 + 77) % 101);
        assert_eq!((a - b).value, (45 + 101 - 77) % 101);
        assert_eq!((a * b).value, 45 * 77 % 101);
        assert_eq!((a / b * b).value, a.value);
        assert_eq!((-a + a).value, 0);
    }

    #[test]
    fn inverse_of_zero_rejected() {
        assert!(Fp::zero(101).inverse().is_none());
    }

    #[test]
    fn all_units_invertible_mod_13() {
        for v in 1..13 {
            let x = Fp::new(v, 13);
            let inv = x.inverse().unwrap();
            assert_eq!((x * inv).value, 1);
        }
    }
}
