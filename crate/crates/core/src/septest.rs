//! Separability of polynomials over `Z/n`.
//!
//! Two routes:
//!
//! * monic `f`: `Z/n[x]/f` is free with basis `1, x, ..., x^(N-1)`; build the
//!   trace form `A[i][j] = tr(x^(i+j))` and test whether `det A` is a unit.
//! * any `f`: split `Z/n` into its prime-power components, reduce modulo each
//!   prime `p | n`, and test `gcd(f, f') = 1` over `Z/p`. A nonzero constant
//!   over `Z/p` counts as separable (the quotient is the zero ring) and the zero
//!   polynomial does not.
//!
//! The two routes share no code beyond polynomial arithmetic, which is what
//! makes their agreement a meaningful check.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{Modulus, Residue};
use crate::error::{Error, Result};
use crate::poly::{self, PolyZn};

/// The `N x N` matrix of traces `tr(x^(i+j))` for a monic degree-`N` polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceForm {
    modulus: Modulus,
    dim: usize,
    entries: Vec<u64>,
}

impl TraceForm {
    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Residue {
        self.modulus.residue(self.entries[i * self.dim + j])
    }

    /// Entries as representatives in `[0, n)`, row by row.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.dim).map(<[u64]>::to_vec).collect()
    }

    /// Entries lifted to integers in `[0, n)`.
    pub fn lift(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.dim)
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.entries[i * self.dim + j] == self.entries[j * self.dim + i]))
    }
}

fn require_monic(f: &PolyZn) -> Result<usize> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    match f.degree() {
        Some(0) | None => Err(Error::DegreeTooSmall { degree: 0, minimum: 1 }),
        Some(d) => Ok(d),
    }
}

/// `x * r mod f` for `deg r < deg f`, `f` monic.
fn times_x_mod(r: &[u64], f: &[u64], m: &Modulus) -> Vec<u64> {
    let dim = f.len() - 1;
    let mut out = vec![0; dim];
    let top = r.get(dim - 1).copied().unwrap_or(0);
    for i in (1..dim).rev() {
        out[i] = r.get(i - 1).copied().unwrap_or(0);
    }
    if top != 0 {
        // x^dim = -(f_0 + f_1 x + ... + f_(dim-1) x^(dim-1))
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = m.sub(*slot, m.mul(top, f[i]));
        }
    }
    out
}

/// Trace of multiplication by `g` on `Z/n[x]/f` in the basis `1, x, ..., x^(N-1)`.
pub fn trace(g: &PolyZn, f: &PolyZn) -> Result<Residue> {
    let dim = require_monic(f)?;
    let m = f.modulus();
    let g = g.rem_by_monic(f)?;
    // Column i of the operator is g * x^i mod f; the diagonal entry is its
    // coefficient of x^i.
    let mut column: Vec<u64> = (0..dim).map(|i| g.coefficient(i)).collect();
    let mut acc = column[0];
    for i in 1..dim {
        column = times_x_mod(&column, f.coeffs(), m);
        acc = m.add(acc, column[i]);
    }
    Ok(m.residue(acc))
}

pub fn trace_form(f: &PolyZn) -> Result<TraceForm> {
    let dim = require_monic(f)?;
    let m = f.modulus();
    // traces[k] = tr(x^k mod f) for k = 0 ..= 2N - 2
    let mut traces = Vec::with_capacity(2 * dim - 1);
    let mut power = PolyZn::one(m);
    let x = PolyZn::x(m);
    for _ in 0..2 * dim - 1 {
        traces.push(trace(&power, f)?.value());
        power = power.try_mul(&x)?.rem_by_monic(f)?;
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            entries.push(traces[i + j]);
        }
    }
    Ok(TraceForm {
        modulus: m.clone(),
        dim,
        entries,
    })
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(pivot) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, pivot);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Reduces an integer into `Z/n`.
pub fn reduce_integer(value: &BigInt, m: &Modulus) -> Residue {
    let r = value.mod_floor(&BigInt::from(m.n()));
    m.residue(r.to_u64().expect("reduced below n"))
}

/// `det` of the trace form, as an element of `Z/n`.
pub fn discriminant(f: &PolyZn) -> Result<Residue> {
    let form = trace_form(f)?;
    Ok(reduce_integer(&determinant(&form.lift()), f.modulus()))
}

/// Separability of a monic polynomial via its discriminant.
pub fn is_separable_monic(f: &PolyZn) -> Result<bool> {
    let disc = discriminant(f)?;
    Ok(crate::arith::is_unit(&disc))
}

/// `gcd(f, f') = 1` over `Z/p`, with the constant conventions above.
pub fn is_separable_over_prime_field(f: &PolyZn) -> Result<bool> {
    let m = f.modulus();
    if !m.is_prime() {
        return Err(Error::CompositeModulus(m.n()));
    }
    Ok(separable_mod_prime(f.coeffs(), m.n()))
}

/// Separability of any polynomial over `Z/n`: separable modulo every prime
/// dividing `n`.
pub fn is_separable(f: &PolyZn) -> bool {
    is_separable_coeffs(f.modulus(), f.coeffs())
}

/// [`is_separable`] on a raw ascending coefficient slice (entries in `[0, n)`,
/// trailing zeros allowed).
pub fn is_separable_coeffs(m: &Modulus, coeffs: &[u64]) -> bool {
    m.primes().all(|p| separable_mod_prime(coeffs, p))
}

fn separable_mod_prime(coeffs: &[u64], p: u64) -> bool {
    let mut f: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
    poly::trim(&mut f);
    match f.len() {
        0 => false,
        1 => true,
        _ => {
            poly::make_monic(&mut f, p);
            let d = poly::derivative_coeffs(&f, p);
            poly::gcd_mod_prime(f, d, p) == [1]
        }
    }
}
