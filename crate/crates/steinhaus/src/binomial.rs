//! Binomial coefficients modulo a prime via Lucas's theorem, and the direct
//! triangle-entry formula for canonical-basis seeds.

use crate::{Error, Result};

/// A prime modulus, checked deterministically at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeModulus {
    p: u64,
    /// (α choose β) mod p for α, β < p; only built for small p.
    small_table: Option<Vec<Vec<u64>>>,
}

const SMALL_TABLE_LIMIT: u64 = 64;

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let small_table = (p <= SMALL_TABLE_LIMIT).then(|| pascal_table(p as usize, p));
        Ok(Self { p, small_table })
    }

    pub fn value(&self) -> u64 {
        self.p
    }

    /// (α choose β) mod p for digits α, β < p.
    fn digit_binom(&self, alpha: u64, beta: u64) -> u64 {
        if beta > alpha {
            return 0;
        }
        if let Some(table) = &self.small_table {
            return table[alpha as usize][beta as usize];
        }
        // Multiplicative formula with Fermat inverses; exact because p is prime
        // and alpha < p.
        let mut acc = 1u64;
        for i in 0..beta {
            acc = mul_mod(acc, (alpha - i) % self.p, self.p);
            acc = mul_mod(acc, inverse_mod(i + 1, self.p), self.p);
        }
        acc
    }
}

/// Trial division; deterministic for all u64.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pascal_table(size: usize, modulus: u64) -> Vec<Vec<u64>> {
    let mut table = vec![vec![0u64; size]; size];
    for a in 0..size {
        table[a][0] = 1;
        for b in 1..=a {
            table[a][b] = (table[a - 1][b - 1] + if b < a { table[a - 1][b] } else { 0 }) % modulus;
        }
    }
    table
}

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

fn inverse_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Canonical base-`base` expansion of a nonnegative integer, least
/// significant digit first. Zero has an empty digit list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitExpansion {
    pub value: u64,
    pub base: u64,
    pub digits: Vec<u64>,
}

pub fn digits(value: u64, base: u64) -> Result<DigitExpansion> {
    if base < 2 {
        return Err(Error::InvalidInput(format!(
            "base {base} must be at least 2"
        )));
    }
    let mut digits = Vec::new();
    let mut v = value;
    while v > 0 {
        digits.push(v % base);
        v /= base;
    }
    Ok(DigitExpansion {
        value,
        base,
        digits,
    })
}

/// C(r, s) mod p by the digit-wise Lucas product; 0 when `s > r`.
pub fn binom_mod_p(r: u64, s: u64, p: &PrimeModulus) -> u64 {
    let mut r = r;
    let mut s = s;
    let mut acc = 1 % p.value();
    while s > 0 || r > 0 {
        acc = mul_mod(acc, p.digit_binom(r % p.value(), s % p.value()), p.value());
        if acc == 0 {
            return 0;
        }
        r /= p.value();
        s /= p.value();
    }
    acc
}

/// Parity of C(r, s): 1 iff every binary digit of `s` is at most the
/// corresponding digit of `r`, i.e. `s & !r == 0`.
#[inline]
pub fn binom_parity(r: u64, s: u64) -> u64 {
    u64::from(s & !r == 0)
}

/// Entry (r, c) of the triangle generated by `e_k` of length `n`:
/// C(r, k−c) mod 2, and 0 whenever `c > k`.
pub fn entry(k: usize, n: usize, r: usize, c: usize) -> Result<u64> {
    if n == 0 || k > n - 1 {
        return Err(Error::InvalidInput(format!(
            "basis index {k} out of range for size {n}"
        )));
    }
    if r > n - 1 || c > n - 1 - r {
        return Err(Error::InvalidInput(format!(
            "position ({r}, {c}) outside a triangle of size {n}"
        )));
    }
    if c > k {
        return Ok(0);
    }
    Ok(binom_parity(r as u64, (k - c) as u64))
}
