//! Modular arithmetic on `Z/n`: factorization, totients, units and the
//! Chinese remainder split/combine.
//!
//! Moduli are 64-bit. Counts derived from them (totients of powers, census
//! results) are arbitrary precision.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow};

use crate::error::{Error, Result};

/// A prime power `prime^exponent` dividing some modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    /// `prime^exponent`. Callers only build these from divisors of a `u64`.
    pub fn value(&self) -> u64 {
        self.prime.pow(self.exponent)
    }

    /// `phi(prime^exponent) = p^k - p^(k-1)`.
    pub fn totient(&self) -> u64 {
        self.prime.pow(self.exponent - 1) * (self.prime - 1)
    }
}

/// The ring `Z/n` for `n >= 2`, with its factorization cached.
///
/// Cloning is cheap; the factorization is shared.
#[derive(Clone)]
pub struct Modulus {
    inner: Arc<Inner>,
}

struct Inner {
    n: u64,
    factors: Vec<PrimePower>,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        let factors = factorize(n)?;
        Ok(Modulus {
            inner: Arc::new(Inner { n, factors }),
        })
    }

    /// `Z/n` from a possibly negative integer; `Z/n` and `Z/-n` are the same ring.
    pub fn from_signed(n: i128) -> Result<Self> {
        let abs = n.unsigned_abs();
        let n = u64::try_from(abs).map_err(|_| Error::Overflow)?;
        Self::new(n)
    }

    /// `Z/p^k` with the factorization already known.
    pub(crate) fn from_prime_power(pp: PrimePower) -> Self {
        Modulus {
            inner: Arc::new(Inner {
                n: pp.value(),
                factors: alloc::vec![pp],
            }),
        }
    }

    pub fn n(&self) -> u64 {
        self.inner.n
    }

    /// Prime-power factorization, primes strictly increasing.
    pub fn factors(&self) -> &[PrimePower] {
        &self.inner.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.inner.factors.iter().map(|pp| pp.prime)
    }

    pub fn is_prime(&self) -> bool {
        matches!(self.factors(), [pp] if pp.exponent == 1)
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors().len() == 1
    }

    /// One `Z/p^k` ring per prime-power factor, in factor order.
    pub fn components(&self) -> Vec<Modulus> {
        if self.is_prime_power() {
            return alloc::vec![self.clone()];
        }
        self.factors()
            .iter()
            .map(|&pp| Modulus::from_prime_power(pp))
            .collect()
    }

    pub fn residue(&self, value: u64) -> Residue {
        Residue {
            value: value % self.n(),
            modulus: self.clone(),
        }
    }

    pub fn residue_signed(&self, value: i128) -> Residue {
        let r = value.rem_euclid(self.n() as i128) as u64;
        Residue {
            value: r,
            modulus: self.clone(),
        }
    }

    // Raw arithmetic on canonical representatives in [0, n).

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.n() as u128) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.n() - (b - a)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.n() - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.n())
    }

    pub fn inverse(&self, a: u64) -> Option<u64> {
        mod_inverse(a, self.n())
    }
}

impl PartialEq for Modulus {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n()
    }
}

impl Eq for Modulus {}

impl core::hash::Hash for Modulus {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.n().hash(state)
    }
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.n())
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.n())
    }
}

/// An element of `Z/n`, stored as its representative in `[0, n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inverse(&self) -> Option<Residue> {
        self.modulus.inverse(self.value).map(|v| self.modulus.residue(v))
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus.n())
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `n`, if `gcd(a, n) = 1`.
pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(n as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(n as i128) as u64)
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division up to `sqrt(n)`.
pub fn factorize(n: u64) -> Result<Vec<PrimePower>> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut push = |rest: &mut u64, p: u64| {
        let mut exponent = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            exponent += 1;
        }
        if exponent > 0 {
            factors.push(PrimePower { prime: p, exponent });
        }
    };
    push(&mut rest, 2);
    push(&mut rest, 3);
    // Candidates 6k - 1 and 6k + 1. While `rest` is composite its smallest
    // prime factor is at least `p` and at most sqrt(rest).
    let mut p: u64 = 5;
    while rest > 1 && !is_prime(rest) {
        while !rest.is_multiple_of(p) && !rest.is_multiple_of(p + 2) {
            p += 6;
        }
        push(&mut rest, p);
        push(&mut rest, p + 2);
        p += 6;
    }
    if rest > 1 {
        factors.push(PrimePower {
            prime: rest,
            exponent: 1,
        });
    }
    Ok(factors)
}

/// Euler's totient of the modulus.
pub fn totient(m: &Modulus) -> BigUint {
    m.factors()
        .iter()
        .map(|pp| BigUint::from(pp.totient()))
        .product()
}

/// `phi(n^e)`, computed from the factorization of `n`.
pub fn totient_of_power(m: &Modulus, e: u32) -> BigUint {
    m.factors()
        .iter()
        .map(|pp| prime_power_totient(pp.prime, pp.exponent as u64 * e as u64))
        .product()
}

/// `phi(p^e)`; `1` when `e = 0`.
pub fn prime_power_totient(p: u64, e: u64) -> BigUint {
    if e == 0 {
        return BigUint::one();
    }
    let p_big = BigUint::from(p);
    Pow::pow(&p_big, e - 1) * (p_big - 1u32)
}

pub fn is_unit(a: &Residue) -> bool {
    a.value.gcd(&a.modulus.n()) == 1
}

/// Components of `a` under `Z/n = Z/p1^k1 x ... x Z/pm^km`.
pub fn crt_split(a: &Residue) -> Vec<Residue> {
    a.modulus
        .components()
        .into_iter()
        .map(|c| c.residue(a.value))
        .collect()
}

/// The unique residue modulo the product of the parts' moduli that reduces to
/// every part.
pub fn crt_combine(parts: &[Residue]) -> Result<Residue> {
    let Some((first, rest)) = parts.split_first() else {
        return Err(Error::ModulusTooSmall(1));
    };
    let mut value = first.value as u128;
    let mut n = first.modulus.n() as u128;
    for part in rest {
        let m = part.modulus.n() as u128;
        let g = n.gcd(&m);
        if g != 1 {
            return Err(Error::NotCoprime {
                left: n as u64,
                right: m as u64,
            });
        }
        let product = n.checked_mul(m).filter(|&p| p <= u64::MAX as u128);
        let product = product.ok_or(Error::Overflow)?;
        // value + n * t == part (mod m)  =>  t = (part - value) * n^-1 (mod m)
        let n_inv = mod_inverse((n % m) as u64, m as u64).expect("coprime moduli") as u128;
        let diff = (part.value as u128 + m - value % m) % m;
        let t = diff * n_inv % m;
        value += n * t;
        n = product;
    }
    let modulus = Modulus::new(n as u64)?;
    Ok(modulus.residue(value as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(prime: u64, exponent: u32) -> PrimePower {
        PrimePower { prime, exponent }
    }

    fn brute_totient(n: u64) -> u64 {
        (1..=n).filter(|a| a.gcd(&n) == 1).count() as u64
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(120).unwrap(), [pp(2, 3), pp(3, 1), pp(5, 1)]);
        assert_eq!(factorize(7).unwrap(), [pp(7, 1)]);
        let first_fifteen = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
        let expected: Vec<_> = first_fifteen.iter().map(|&p| pp(p, 1)).collect();
        assert_eq!(factorize(614889782588491410).unwrap(), expected);
        assert_eq!(factorize(1), Err(Error::ModulusTooSmall(1)));
        assert_eq!(factorize(0), Err(Error::ModulusTooSmall(0)));
    }

    #[test]
    fn factorize_large_inputs() {
        // Largest 64-bit prime and a product of two 32-bit primes.
        assert_eq!(factorize(18446744073709551557).unwrap(), [pp(18446744073709551557, 1)]);
        assert_eq!(
            factorize(1000003 * 1000033).unwrap(),
            [pp(1000003, 1), pp(1000033, 1)]
        );
        assert_eq!(
            factorize(65521 * 65521 * 4294967291).unwrap(),
            [pp(65521, 2), pp(4294967291, 1)]
        );
        assert_eq!(factorize(1 << 63).unwrap(), [pp(2, 63)]);
    }

    #[test]
    fn factorization_invariants_small_range() {
        for n in 2..5000u64 {
            let f = factorize(n).unwrap();
            assert_eq!(f.iter().map(|p| p.value()).product::<u64>(), n);
            assert!(f.windows(2).all(|w| w[0].prime < w[1].prime));
            assert!(f.iter().all(|p| is_prime(p.prime) && p.exponent >= 1));
        }
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..20_000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "n = {n}");
        }
        // Strong pseudoprimes to several small bases.
        assert!(!is_prime(3215031751));
        assert!(!is_prime(3825123056546413051));
    }

    #[test]
    fn totient_examples() {
        assert_eq!(pp(2, 3).totient(), 4);
        assert_eq!(totient(&Modulus::new(15).unwrap()), BigUint::from(8u32));
        assert_eq!(prime_power_totient(7, 0), BigUint::one());
    }

    #[test]
    fn totient_matches_unit_count() {
        for n in 2..=10_000u64 {
            let m = Modulus::new(n).unwrap();
            assert_eq!(totient(&m), BigUint::from(brute_totient(n)), "n = {n}");
        }
    }

    #[test]
    fn totient_of_power_examples() {
        let four = Modulus::new(4).unwrap();
        assert_eq!(totient_of_power(&four, 2), BigUint::from(8u32));
        let fifteen = Modulus::new(15).unwrap();
        assert_eq!(totient_of_power(&fifteen, 2), BigUint::from(brute_totient(225)));
        assert_eq!(brute_totient(225), 120);
        for p in [2u64, 3, 5, 7, 11] {
            let m = Modulus::new(p).unwrap();
            for d in 1..6u32 {
                let expected = p.pow(d) - p.pow(d - 1);
                assert_eq!(totient_of_power(&m, d), BigUint::from(expected));
            }
        }
    }

    #[test]
    fn totient_of_power_matches_refactorization() {
        for n in 2..=100u64 {
            let m = Modulus::new(n).unwrap();
            for e in 1..=4u32 {
                let direct = totient(&Modulus::new(n.pow(e)).unwrap());
                assert_eq!(totient_of_power(&m, e), direct, "n = {n}, e = {e}");
            }
        }
    }

    #[test]
    fn is_unit_examples() {
        let six = Modulus::new(6).unwrap();
        assert!(!is_unit(&six.residue(3)));
        assert!(is_unit(&six.residue(5)));
        assert!(!is_unit(&Modulus::new(2).unwrap().residue(0)));
    }

    #[test]
    fn is_unit_iff_invertible() {
        for n in 2..=200u64 {
            let m = Modulus::new(n).unwrap();
            for a in 0..n {
                let invertible = (0..n).any(|b| mul_mod(a, b, n) == 1 % n);
                assert_eq!(is_unit(&m.residue(a)), invertible, "{a} mod {n}");
                if let Some(inv) = m.inverse(a) {
                    assert_eq!(m.mul(a, inv), 1);
                }
            }
        }
    }

    #[test]
    fn crt_examples() {
        let twelve = Modulus::new(12).unwrap();
        let parts = crt_split(&twelve.residue(7));
        assert_eq!(parts.iter().map(Residue::value).collect::<Vec<_>>(), [3, 1]);
        assert_eq!(parts[0].modulus().n(), 4);
        assert_eq!(parts[1].modulus().n(), 3);
        assert_eq!(crt_combine(&parts).unwrap(), twelve.residue(7));

        let fifteen = Modulus::new(15).unwrap();
        let parts = crt_split(&fifteen.residue(11));
        assert_eq!(parts.iter().map(Residue::value).collect::<Vec<_>>(), [2, 1]);

        let zero = crt_split(&Modulus::new(360).unwrap().residue(0));
        assert!(zero.iter().all(Residue::is_zero));

        let single = fifteen.residue(4);
        assert_eq!(crt_combine(std::slice::from_ref(&single)).unwrap(), single);
    }

    #[test]
    fn crt_round_trip_mod_360() {
        let m = Modulus::new(360).unwrap();
        for a in 0..360 {
            let r = m.residue(a);
            assert_eq!(crt_combine(&crt_split(&r)).unwrap(), r);
        }
    }

    #[test]
    fn crt_combine_rejects_shared_factors() {
        let a = Modulus::new(4).unwrap().residue(1);
        let b = Modulus::new(6).unwrap().residue(1);
        assert_eq!(
            crt_combine(&[a, b]),
            Err(Error::NotCoprime { left: 4, right: 6 })
        );
    }

    #[test]
    fn from_signed_canonicalizes() {
        assert_eq!(Modulus::from_signed(-12).unwrap().n(), 12);
        assert!(Modulus::from_signed(-1).is_err());
        assert!(Modulus::from_signed(i128::MAX).is_err());
    }

    proptest::proptest! {
        #[test]
        fn crt_round_trip_any_modulus(n in 2u64..1_000_000, a in proptest::num::u64::ANY) {
            let m = Modulus::new(n).unwrap();
            let r = m.residue(a);
            proptest::prop_assert_eq!(crt_combine(&crt_split(&r)).unwrap(), r);
        }
    }
}
