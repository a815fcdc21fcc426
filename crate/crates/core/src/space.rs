//! The coefficient space of a census query, indexed as a mixed-radix counter.
//!
//! Digit `i` is the coefficient of `x^i`. In monic mode the top digit is fixed
//! to 1; in exact-degree mode it runs over `1..n`. Every index in
//! `0..size()` names exactly one coefficient tuple, so the space splits into
//! contiguous ranges that can be counted independently.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigUint;

use crate::arith::Modulus;
use crate::census::{total_polynomials, CountMode};
use crate::septest::is_separable_coeffs;

#[derive(Debug, Clone)]
pub struct CoefficientSpace {
    modulus: Modulus,
    degree: u32,
    mode: CountMode,
}

impl CoefficientSpace {
    pub fn new(modulus: &Modulus, degree: u32, mode: CountMode) -> Self {
        CoefficientSpace {
            modulus: modulus.clone(),
            degree,
            mode,
        }
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn mode(&self) -> CountMode {
        self.mode
    }

    pub fn size(&self) -> BigUint {
        total_polynomials(&self.modulus, self.degree, self.mode)
    }

    /// `None` when the space has more than `u64::MAX` points.
    pub fn size_u64(&self) -> Option<u64> {
        u64::try_from(self.size()).ok()
    }

    /// `(radix, offset)` of digit `i`: the coefficient is `offset + digit`.
    fn digit(&self, i: usize) -> (u64, u64) {
        let n = self.modulus.n();
        if i < self.degree as usize {
            return (n, 0);
        }
        match self.mode {
            CountMode::AllLeq => (n, 0),
            CountMode::MonicExact => (1, 1),
            CountMode::Exact => (n - 1, 1),
        }
    }

    /// Coefficients at position `index`.
    pub fn tuple_at(&self, mut index: u64) -> Vec<u64> {
        let len = self.degree as usize + 1;
        let mut coeffs = vec![0; len];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let (radix, offset) = self.digit(i);
            *c = offset + index % radix;
            index /= radix;
        }
        assert_eq!(index, 0, "index outside the coefficient space");
        coeffs
    }

    /// Calls `visit` on every tuple in `range`, in index order. The slice is
    /// reused between calls.
    pub fn for_each(&self, range: Range<u64>, mut visit: impl FnMut(&[u64])) {
        if range.is_empty() {
            return;
        }
        let mut coeffs = self.tuple_at(range.start);
        let radices: Vec<(u64, u64)> = (0..coeffs.len()).map(|i| self.digit(i)).collect();
        for _ in range {
            visit(&coeffs);
            // Odometer step; the final step past the range end wraps harmlessly.
            for (c, &(radix, offset)) in coeffs.iter_mut().zip(&radices) {
                if *c + 1 < offset + radix {
                    *c += 1;
                    break;
                }
                *c = offset;
            }
        }
    }

    /// Separable tuples in `range`.
    pub fn count_separable(&self, range: Range<u64>) -> u64 {
        let mut count = 0;
        self.for_each(range, |coeffs| {
            if is_separable_coeffs(&self.modulus, coeffs) {
                count += 1;
            }
        });
        count
    }
}
