//! Closed-form counts of separable polynomials over `Z/n`.
//!
//! Conventions shared with the enumeration oracle:
//!
//! * monic counts at degree 1 are `n` (every `x - a` is separable) and at
//!   degree 0 are 1 (the constant polynomial 1);
//! * "degree <= d" ranges over all `n^(d+1)` coefficient tuples, zero
//!   polynomial included;
//! * "degree exactly d" means the coefficient of `x^d` is nonzero in `Z/n`.

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Pow, Zero};

use crate::arith::{prime_power_totient, Modulus};
use crate::error::{Error, Result};

/// Which set of coefficient tuples a count ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CountMode {
    /// Monic polynomials of degree exactly `d`.
    MonicExact,
    /// All polynomials of degree at most `d`, including zero.
    AllLeq,
    /// Polynomials whose `x^d` coefficient is nonzero.
    Exact,
}

impl CountMode {
    pub const ALL: [CountMode; 3] = [CountMode::MonicExact, CountMode::AllLeq, CountMode::Exact];

    pub fn as_str(&self) -> &'static str {
        match self {
            CountMode::MonicExact => "monic",
            CountMode::AllLeq => "leq",
            CountMode::Exact => "exact",
        }
    }
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CountMode {
    type Err = UnknownMode;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "monic" | "monic-exact" | "monic-exact-degree" => Ok(CountMode::MonicExact),
            "leq" | "all-leq" | "all-leq-degree" => Ok(CountMode::AllLeq),
            "exact" | "exact-degree" => Ok(CountMode::Exact),
            _ => Err(UnknownMode),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnknownMode;

impl fmt::Display for UnknownMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("mode must be one of monic, leq, exact")
    }
}

/// A count together with the size of the set it was taken from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub count: BigUint,
    pub total: BigUint,
    /// `count / total` in lowest terms.
    pub proportion: Ratio<BigUint>,
}

impl CountResult {
    pub fn new(count: BigUint, total: BigUint) -> Self {
        assert!(!total.is_zero(), "empty sample space");
        assert!(count <= total, "count exceeds total");
        let proportion = Ratio::new(count.clone(), total.clone());
        CountResult {
            count,
            total,
            proportion,
        }
    }
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn power(base: u64, exp: u64) -> BigUint {
    Pow::pow(&big(base), exp)
}

/// Number of coefficient tuples in the set selected by `mode`.
pub fn total_polynomials(m: &Modulus, d: u32, mode: CountMode) -> BigUint {
    let n = m.n();
    let d = d as u64;
    match mode {
        CountMode::MonicExact => power(n, d),
        CountMode::AllLeq => power(n, d + 1),
        CountMode::Exact => big(n - 1) * power(n, d),
    }
}

/// Monic separable polynomials of degree `d` over `Z/p`.
pub fn count_monic_separable_prime(p: u64, d: u32) -> BigUint {
    count_monic_separable_primepower(p, 1, d)
}

/// Monic separable polynomials of degree `d` over `Z/p^k`.
pub fn count_monic_separable_primepower(p: u64, k: u32, d: u32) -> BigUint {
    match d {
        0 => BigUint::one(),
        1 => power(p, k as u64),
        d => prime_power_totient(p, k as u64 * d as u64),
    }
}

/// Monic separable polynomials of degree `d` over `Z/n`: `phi(n^d)` for `d >= 2`.
pub fn count_monic_separable(m: &Modulus, d: u32) -> BigUint {
    m.factors()
        .iter()
        .map(|pp| count_monic_separable_primepower(pp.prime, pp.exponent, d))
        .product()
}

/// Proportion of monic degree-`d` polynomials that are separable, for `d >= 2`.
/// It is `prod (1 - 1/p)` over the primes dividing `n`.
pub fn proportion_monic_separable(m: &Modulus, d: u32) -> Result<Ratio<BigUint>> {
    if d < 2 {
        return Err(Error::DegreeTooSmall { degree: d, minimum: 2 });
    }
    let (num, den) = m
        .primes()
        .fold((BigUint::one(), BigUint::one()), |(num, den), p| {
            (num * big(p - 1), den * big(p))
        });
    Ok(Ratio::new(num, den))
}

/// Separable polynomials of degree at most `d` over `Z/p^k`:
/// `phi(p^k) p^((k-1)d) (p^d + 1)` for `d >= 1`, and `phi(p^k)` for `d = 0`.
pub fn count_separable_leq_primepower(p: u64, k: u32, d: u32) -> BigUint {
    let units = prime_power_totient(p, k as u64);
    if d == 0 {
        return units;
    }
    let d = d as u64;
    units * power(p, (k as u64 - 1) * d) * (power(p, d) + 1u32)
}

/// Separable polynomials of degree at most `d` over `Z/n`, out of `n^(d+1)`.
pub fn count_separable_leq(m: &Modulus, d: u32) -> CountResult {
    let count = m
        .factors()
        .iter()
        .map(|pp| count_separable_leq_primepower(pp.prime, pp.exponent, d))
        .product();
    CountResult::new(count, total_polynomials(m, d, CountMode::AllLeq))
}

/// Separable polynomials whose `x^d` coefficient is nonzero.
pub fn count_separable_exact(m: &Modulus, d: u32) -> BigUint {
    let upto = count_separable_leq(m, d).count;
    if d == 0 {
        return upto;
    }
    upto - count_separable_leq(m, d - 1).count
}

/// The census for one mode, with its sample-space size.
pub fn count(m: &Modulus, d: u32, mode: CountMode) -> CountResult {
    let count = match mode {
        CountMode::MonicExact => count_monic_separable(m, d),
        CountMode::AllLeq => return count_separable_leq(m, d),
        CountMode::Exact => count_separable_exact(m, d),
    };
    CountResult::new(count, total_polynomials(m, d, mode))
}

/// The degree-at-most-`d` count over `Z/p^k` obtained by iterating
/// `a_d = phi(p^(kd)) phi(p^k) + p^(k-1) a_(d-1)` from
/// `a_1 = phi(p^k)(p^k + p^(k-1))`.
pub fn count_leq_recurrence(p: u64, k: u32, d: u32) -> Result<BigUint> {
    if d < 1 {
        return Err(Error::DegreeTooSmall { degree: d, minimum: 1 });
    }
    let k = k as u64;
    let units = prime_power_totient(p, k);
    let lambda = power(p, k - 1);
    let mut a = &units * (power(p, k) + &lambda);
    for e in 2..=d as u64 {
        a = prime_power_totient(p, k * e) * &units + &lambda * a;
    }
    Ok(a)
}

/// `phi(b^d) + l phi(b^(d-1)) + ... + l^(d-2) phi(b^2)` with `b = p^k`,
/// `l = p^(k-1)`, in closed form `p^((k-1)d + 1) (p^(d-1) - 1)`.
pub fn geometric_sum(p: u64, k: u32, d: u32) -> Result<BigUint> {
    if d < 2 {
        return Err(Error::DegreeTooSmall { degree: d, minimum: 2 });
    }
    let (k, d) = (k as u64, d as u64);
    Ok(power(p, (k - 1) * d + 1) * (power(p, d - 1) - 1u32))
}

/// Decimal expansion of `r` rounded half-up to `digits` places. Display only.
pub fn to_decimal(r: &Ratio<BigUint>, digits: usize) -> String {
    use alloc::format;
    let scale = Pow::pow(&big(10), digits);
    let (q, rem) = (r.numer() * &scale).div_rem(r.denom());
    let q = if rem * 2u32 >= *r.denom() { q + 1u32 } else { q };
    let (int, frac) = q.div_rem(&scale);
    if digits == 0 {
        return format!("{int}");
    }
    let frac = format!("{frac}");
    format!("{int}.{}{frac}", "0".repeat(digits - frac.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn zn(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn phi(n: u64) -> u64 {
        (1..=n).filter(|a| a.gcd(&n) == 1).count() as u64
    }

    #[test]
    fn monic_prime_counts() {
        let eleven = count_monic_separable_prime(11, 3);
        assert_eq!(eleven, b(1210));
        assert_eq!(Ratio::new(eleven, b(11u64.pow(3))), Ratio::new(b(10), b(11)));
        assert_eq!(count_monic_separable_prime(2, 2), b(2));
        assert_eq!(count_monic_separable_prime(5, 1), b(5));
        assert_eq!(count_monic_separable_prime(5, 0), b(1));
        for p in [2u64, 3, 5, 7] {
            for d in 2..6u32 {
                assert_eq!(
                    count_monic_separable_prime(p, d),
                    b(p.pow(d) - p.pow(d - 1))
                );
            }
        }
    }

    #[test]
    fn monic_prime_power_counts() {
        assert_eq!(count_monic_separable_primepower(2, 2, 2), b(8));
        assert_eq!(count_monic_separable_primepower(3, 2, 2), b(54));
        assert_eq!(count_monic_separable_primepower(5, 2, 1), b(25));
        for p in [2u64, 3, 5] {
            for d in 0..5 {
                assert_eq!(
                    count_monic_separable_primepower(p, 1, d),
                    count_monic_separable_prime(p, d)
                );
            }
        }
    }

    #[test]
    fn monic_counts_over_zn() {
        assert_eq!(count_monic_separable(&zn(15), 2), b(phi(225)));
        assert_eq!(count_monic_separable(&zn(15), 2), b(120));
        assert_eq!(count_monic_separable(&zn(4), 3), b(32));
        assert_eq!(count_monic_separable(&zn(12), 1), b(12));
        assert_eq!(count_monic_separable(&zn(12), 0), b(1));
        assert_eq!(count_monic_separable(&zn(7), 4), count_monic_separable_prime(7, 4));
        for n in 2..=40u64 {
            assert_eq!(count_monic_separable(&zn(n), 2), b(phi(n * n)), "n = {n}");
        }
    }

    #[test]
    fn monic_proportions() {
        let primorial = zn(614889782588491410);
        let r = proportion_monic_separable(&primorial, 2).unwrap();
        assert_eq!(r, Ratio::new(b(1605264998400), b(11573306655157)));
        assert_eq!(to_decimal(&r, 15), "0.138704092635850");
        assert_eq!(proportion_monic_separable(&primorial, 9).unwrap(), r);
        assert_eq!(
            proportion_monic_separable(&zn(27), 3).unwrap(),
            Ratio::new(b(2), b(3))
        );
        assert_eq!(
            proportion_monic_separable(&zn(6), 2).unwrap(),
            Ratio::new(b(1), b(3))
        );
        assert_eq!(
            proportion_monic_separable(&zn(6), 1),
            Err(Error::DegreeTooSmall { degree: 1, minimum: 2 })
        );
        // Agrees with count / n^d.
        for n in [6u64, 12, 30, 49] {
            let m = zn(n);
            for d in 2..5 {
                let c = count(&m, d, CountMode::MonicExact);
                assert_eq!(c.proportion, proportion_monic_separable(&m, d).unwrap());
            }
        }
    }

    #[test]
    fn leq_prime_power_counts() {
        for (p, k) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2), (5, 3)] {
            let q = p.pow(k);
            let units = phi(q);
            assert_eq!(count_separable_leq_primepower(p, k, 0), b(units));
            assert_eq!(
                count_separable_leq_primepower(p, k, 1),
                b(units * (q + p.pow(k - 1)))
            );
        }
        assert_eq!(count_separable_leq_primepower(2, 1, 2), b(5));
        assert_eq!(count_separable_leq_primepower(2, 2, 2), b(40));
    }

    #[test]
    fn leq_counts_over_zn() {
        let r = count_separable_leq(&zn(120), 3);
        assert_eq!(r.count, b(65028096));
        assert_eq!(r.total, b(120u64.pow(4)));
        assert_eq!(count_separable_leq(&zn(6), 1).count, b(24));
        assert_eq!(count_separable_leq(&zn(6), 2).count, b(100));
        assert_eq!(count_separable_leq(&zn(6), 0).count, b(2));
    }

    #[test]
    fn exact_counts() {
        assert_eq!(count_separable_exact(&zn(15), 2), b(1888));
        assert_eq!(count_separable_exact(&zn(6), 1), b(22));
        for q in [2u64, 4, 8, 9, 25] {
            assert_eq!(count_separable_exact(&zn(q), 0), b(phi(q)));
        }
    }

    #[test]
    fn telescoping_and_bounds() {
        for n in [2u64, 6, 12, 15, 20, 120, 1001] {
            let m = zn(n);
            for d in 0..8u32 {
                let sum: BigUint = (0..=d).map(|e| count_separable_exact(&m, e)).sum();
                let leq = count_separable_leq(&m, d);
                assert_eq!(sum, leq.count);
                assert!(leq.count < leq.total);
            }
        }
    }

    #[test]
    fn recurrence_matches_closed_form() {
        for p in [2u64, 3, 5, 7] {
            for k in 1..=3 {
                for d in 1..=10 {
                    assert_eq!(
                        count_leq_recurrence(p, k, d).unwrap(),
                        count_separable_leq_primepower(p, k, d),
                        "p = {p}, k = {k}, d = {d}"
                    );
                }
            }
        }
        assert_eq!(count_leq_recurrence(2, 1, 3).unwrap(), b(9));
        assert_eq!(count_leq_recurrence(3, 2, 4).unwrap(), b(6 * 81 * 82));
        assert!(count_leq_recurrence(3, 2, 0).is_err());
    }

    #[test]
    fn geometric_sum_matches_direct_summation() {
        let direct = |p: u64, k: u32, d: u32| -> BigUint {
            let lambda = BigUint::from(p).pow(k - 1);
            (2..=d)
                .rev()
                .enumerate()
                .map(|(i, e)| {
                    Pow::pow(&lambda, i) * prime_power_totient(p, k as u64 * e as u64)
                })
                .sum()
        };
        for p in [2u64, 3, 5, 7] {
            for k in 1..=3 {
                for d in 2..=10 {
                    assert_eq!(geometric_sum(p, k, d).unwrap(), direct(p, k, d));
                }
                assert_eq!(
                    geometric_sum(p, k, 2).unwrap(),
                    prime_power_totient(p, 2 * k as u64)
                );
            }
        }
        assert_eq!(geometric_sum(2, 1, 4).unwrap(), b(14));
        // phi(3^6) + 3 phi(3^4) = 486 + 162
        assert_eq!(geometric_sum(3, 2, 3).unwrap(), b(648));
        assert!(geometric_sum(3, 2, 1).is_err());
    }

    #[test]
    fn decimal_rendering() {
        let r = Ratio::new(b(2), b(3));
        assert_eq!(to_decimal(&r, 0), "1");
        assert_eq!(to_decimal(&r, 4), "0.6667");
        assert_eq!(to_decimal(&Ratio::new(b(1), b(20)), 3), "0.050");
        assert_eq!(to_decimal(&Ratio::new(b(7), b(1)), 2), "7.00");
    }

    #[test]
    fn mode_names_round_trip() {
        let names: Vec<_> = CountMode::ALL.iter().map(|m| m.as_str()).collect();
        assert_eq!(names, ["monic", "leq", "exact"]);
        for mode in CountMode::ALL {
            assert_eq!(mode.as_str().parse::<CountMode>(), Ok(mode));
        }
        assert_eq!("all-leq-degree".parse::<CountMode>(), Ok(CountMode::AllLeq));
        assert!("squarefree".parse::<CountMode>().is_err());
    }
}
