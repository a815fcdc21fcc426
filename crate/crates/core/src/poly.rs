//! The polynomial ring `Z/n[x]`.
//!
//! A [`PolyZn`] is a coefficient vector in ascending order with no trailing
//! zeros, so two polynomials are equal exactly when their coefficient tuples
//! are. The zero polynomial has no degree ([`PolyZn::degree`] returns `None`).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{Modulus, Residue};
use crate::error::{Error, Result};
use crate::text;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyZn {
    modulus: Modulus,
    coeffs: Vec<u64>,
}

impl PolyZn {
    /// Builds a polynomial from ascending coefficients, reducing each mod `n`.
    pub fn new(modulus: &Modulus, coeffs: impl IntoIterator<Item = u64>) -> Self {
        let n = modulus.n();
        let coeffs = coeffs.into_iter().map(|c| c % n).collect();
        Self::from_reduced(modulus.clone(), coeffs)
    }

    /// Coefficients must already lie in `[0, n)`; trailing zeros are trimmed.
    pub(crate) fn from_reduced(modulus: Modulus, mut coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < modulus.n()));
        trim(&mut coeffs);
        PolyZn { modulus, coeffs }
    }

    pub fn zero(modulus: &Modulus) -> Self {
        PolyZn {
            modulus: modulus.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(modulus: &Modulus) -> Self {
        Self::constant(modulus, 1)
    }

    pub fn constant(modulus: &Modulus, c: u64) -> Self {
        Self::new(modulus, [c])
    }

    /// `c * x^e`.
    pub fn monomial(modulus: &Modulus, c: u64, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        Self::new(modulus, coeffs)
    }

    pub fn x(modulus: &Modulus) -> Self {
        Self::monomial(modulus, 1, 1)
    }

    pub fn parse(text: &str, modulus: &Modulus) -> Result<Self> {
        text::parse(text, modulus).map_err(Error::from)
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial. Degree `d` means the coefficient of
    /// `x^d` is nonzero in `Z/n`, not necessarily a unit.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient() == Some(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn check_same_ring(&self, other: &PolyZn) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.n(),
                right: other.modulus.n(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PolyZn) -> Result<PolyZn> {
        self.check_same_ring(other)?;
        let m = &self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| m.add(self.coefficient(i), other.coefficient(i)))
            .collect();
        Ok(Self::from_reduced(m.clone(), coeffs))
    }

    pub fn try_sub(&self, other: &PolyZn) -> Result<PolyZn> {
        self.check_same_ring(other)?;
        let m = &self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| m.sub(self.coefficient(i), other.coefficient(i)))
            .collect();
        Ok(Self::from_reduced(m.clone(), coeffs))
    }

    pub fn try_mul(&self, other: &PolyZn) -> Result<PolyZn> {
        self.check_same_ring(other)?;
        let m = &self.modulus;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(m));
        }
        let mut coeffs = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = m.add(coeffs[i + j], m.mul(a, b));
            }
        }
        Ok(Self::from_reduced(m.clone(), coeffs))
    }

    pub fn neg(&self) -> PolyZn {
        let m = &self.modulus;
        let coeffs = self.coeffs.iter().map(|&c| m.neg(c)).collect();
        Self::from_reduced(m.clone(), coeffs)
    }

    /// `c * f`. Scaling by a zero divisor can lower the degree.
    pub fn scale(&self, c: u64) -> PolyZn {
        let m = &self.modulus;
        let c = c % m.n();
        let coeffs = self.coeffs.iter().map(|&a| m.mul(a, c)).collect();
        Self::from_reduced(m.clone(), coeffs)
    }

    pub fn derivative(&self) -> PolyZn {
        let m = &self.modulus;
        let coeffs = derivative_coeffs(&self.coeffs, m.n());
        Self::from_reduced(m.clone(), coeffs)
    }

    /// `f(x + a)`.
    pub fn shift(&self, a: u64) -> PolyZn {
        let m = &self.modulus;
        let a = a % m.n();
        // Horner: acc = acc * (x + a) + c.
        let mut acc: Vec<u64> = Vec::with_capacity(self.coeffs.len());
        for &c in self.coeffs.iter().rev() {
            acc.insert(0, 0);
            for i in 0..acc.len() - 1 {
                let t = m.mul(acc[i + 1], a);
                acc[i] = m.add(acc[i], t);
            }
            acc[0] = m.add(acc[0], c);
        }
        Self::from_reduced(m.clone(), acc)
    }

    pub fn evaluate(&self, at: u64) -> Residue {
        let m = &self.modulus;
        let at = at % m.n();
        let value = self
            .coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| m.add(m.mul(acc, at), c));
        m.residue(value)
    }

    /// The image of `f` in `Z/m[x]` for a divisor `m >= 2` of `n`.
    pub fn reduce_modulus(&self, m: u64) -> Result<PolyZn> {
        let n = self.modulus.n();
        if m < 2 {
            return Err(Error::ModulusTooSmall(m));
        }
        if !n.is_multiple_of(m) {
            return Err(Error::NotADivisor {
                divisor: m,
                modulus: n,
            });
        }
        let target = if m == n {
            self.modulus.clone()
        } else {
            Modulus::new(m)?
        };
        Ok(self.reduce_into(&target))
    }

    /// Reduction into a ring whose modulus divides ours; not checked.
    pub(crate) fn reduce_into(&self, target: &Modulus) -> PolyZn {
        let m = target.n();
        let coeffs = self.coeffs.iter().map(|&c| c % m).collect();
        Self::from_reduced(target.clone(), coeffs)
    }

    /// The monic associate `u^-1 f` over a prime field.
    pub fn make_monic_over_prime_field(&self) -> Result<PolyZn> {
        let p = self.require_prime_field()?;
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut coeffs = self.coeffs.clone();
        make_monic(&mut coeffs, p);
        Ok(Self::from_reduced(self.modulus.clone(), coeffs))
    }

    /// Monic gcd over a prime field; `gcd(0, 0) = 0`.
    pub fn gcd_over_prime_field(&self, other: &PolyZn) -> Result<PolyZn> {
        self.check_same_ring(other)?;
        let p = self.require_prime_field()?;
        let g = gcd_mod_prime(self.coeffs.clone(), other.coeffs.clone(), p);
        Ok(Self::from_reduced(self.modulus.clone(), g))
    }

    /// Remainder of division by a monic polynomial; valid over any `Z/n`.
    pub fn rem_by_monic(&self, divisor: &PolyZn) -> Result<PolyZn> {
        self.check_same_ring(divisor)?;
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        let mut r = self.coeffs.clone();
        rem_monic_in_place(&mut r, &divisor.coeffs, self.modulus.n());
        Ok(Self::from_reduced(self.modulus.clone(), r))
    }

    fn require_prime_field(&self) -> Result<u64> {
        if self.modulus.is_prime() {
            Ok(self.modulus.n())
        } else {
            Err(Error::CompositeModulus(self.modulus.n()))
        }
    }
}

impl fmt::Display for PolyZn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::format(&self.coeffs, f)
    }
}

impl fmt::Debug for PolyZn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self}) in {}[x]", self.modulus)
    }
}

// Slice-level helpers over raw coefficient vectors. The enumeration path uses
// these directly to avoid building a `PolyZn` per candidate.

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn derivative_coeffs(coeffs: &[u64], n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| crate::arith::mul_mod(i as u64 % n, c, n))
        .collect();
    trim(&mut d);
    d
}

/// `a <- a mod b` for trimmed `a` and monic trimmed `b`, over `Z/n`.
pub(crate) fn rem_monic_in_place(a: &mut Vec<u64>, b: &[u64], n: u64) {
    debug_assert_eq!(b.last(), Some(&1));
    let db = b.len() - 1;
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top];
        let shift = top - db;
        for (j, &bj) in b[..db].iter().enumerate() {
            let t = crate::arith::mul_mod(c, bj, n);
            let slot = &mut a[shift + j];
            *slot = if *slot >= t { *slot - t } else { n - (t - *slot) };
        }
        a.pop();
        trim(a);
    }
}

/// Scales a nonzero trimmed vector over `Z/p` so its leading coefficient is 1.
pub(crate) fn make_monic(v: &mut [u64], p: u64) {
    let Some(&lead) = v.last() else { return };
    if lead == 1 {
        return;
    }
    let inv = crate::arith::mod_inverse(lead, p).expect("nonzero element of a field");
    for c in v.iter_mut() {
        *c = crate::arith::mul_mod(*c, inv, p);
    }
}

/// Monic gcd over `Z/p` by the Euclidean algorithm.
pub(crate) fn gcd_mod_prime(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        make_monic(&mut b, p);
        rem_monic_in_place(&mut a, &b, p);
        core::mem::swap(&mut a, &mut b);
    }
    make_monic(&mut a, p);
    a
}
