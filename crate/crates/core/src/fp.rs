//! Prime field arithmetic.
//!
//! Scalars are plain `u64` residues in `0..p`; the modulus travels in a
//! [`PrimeField`] context that is passed to every operation. The default
//! modulus used by the samplers is 32003, large enough that random choices
//! are generic with high probability; `p = 2` stays selectable for
//! exhaustive searches.

use alloc::vec::Vec;

/// Default modulus for random constructions.
pub const DEFAULT_PRIME: u64 = 32003;

/// A prime field `F_p` with `p < 2^31`, so products fit in `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Panics if `p` is not a prime below `2^31`.
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 31), "modulus out of range");
        assert!(is_prime(p), "modulus {} is not prime", p);
        PrimeField { p }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
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

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "division by zero in F_p");
        self.pow(a, self.p - 2)
    }

    #[inline]
    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    /// Signed representative in `(-p/2, p/2]`, convenient for display.
    pub fn lift_signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn sum<I: IntoIterator<Item = u64>>(&self, it: I) -> u64 {
        let mut acc = 0u64;
        for x in it {
            acc = self.add(acc, x);
        }
        acc
    }

    /// Dot product of equal-length slices.
    pub fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        debug_assert_eq!(a.len(), b.len());
        let mut acc = 0u64;
        for (x, y) in a.iter().zip(b) {
            acc = (acc + x * y) % self.p;
        }
        acc
    }

    pub fn scale_vec(&self, v: &[u64], c: u64) -> Vec<u64> {
        v.iter().map(|&x| self.mul(x, c)).collect()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_spot_checks() {
        let f = PrimeField::new(32003);
        for a in [0u64, 1, 2, 17, 32002] {
            for b in [1u64, 5, 31999] {
                assert_eq!(f.mul(f.div(a, b), b), a);
                assert_eq!(f.add(f.sub(a, b), b), a);
            }
        }
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.add(f.neg(7), 7), 0);
    }

    #[test]
    fn char_two_works() {
        let f = PrimeField::new(2);
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.inv(1), 1);
    }

    #[test]
    #[should_panic]
    fn composite_modulus_rejected() {
        PrimeField::new(32001);
    }
}
