//! Brute-force enumeration of polynomials over `Z/n`.
//!
//! This is the ground truth the closed-form census is checked against. The
//! coefficient space of a query is split into contiguous index ranges, one per
//! worker; each worker counts its range with the pure separability test and the
//! partial counts are summed in range order, so the result does not depend on
//! the number of workers or on scheduling.

use std::num::NonZeroUsize;
use std::thread;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use sepcount_core::census::{self, CountMode};
use sepcount_core::space::CoefficientSpace;
use sepcount_core::Modulus;

/// Default cap on the number of coefficient tuples a single query may visit.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Below this many tuples a query runs on the calling thread.
const PARALLEL_THRESHOLD: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationQuery {
    pub modulus: Modulus,
    pub degree: u32,
    pub mode: CountMode,
}

impl EnumerationQuery {
    pub fn new(modulus: &Modulus, degree: u32, mode: CountMode) -> Self {
        EnumerationQuery {
            modulus: modulus.clone(),
            degree,
            mode,
        }
    }

    pub fn space(&self) -> CoefficientSpace {
        CoefficientSpace::new(&self.modulus, self.degree, self.mode)
    }

    /// Number of tuples a full enumeration visits.
    pub fn size(&self) -> BigUint {
        self.space().size()
    }

    /// The closed-form count this query is compared against.
    pub fn formula_count(&self) -> BigUint {
        census::count(&self.modulus, self.degree, self.mode).count
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("enumeration needs {required} tuples, over the budget of {budget}")]
    BudgetExceeded { required: BigUint, budget: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    /// Not enumerated; the space has `required` tuples.
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub query: EnumerationQuery,
    pub formula_count: BigUint,
    /// `None` when the enumeration was over budget.
    pub oracle_count: Option<BigUint>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn status(&self) -> Status {
        match &self.oracle_count {
            None => Status::Skipped,
            Some(c) if *c == self.formula_count => Status::Match,
            Some(_) => Status::Mismatch,
        }
    }

    pub fn is_match(&self) -> bool {
        self.status() == Status::Match
    }
}

#[derive(Debug, Clone)]
pub struct Oracle {
    workers: usize,
    budget: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        let workers = thread::available_parallelism().map_or(1, NonZeroUsize::get);
        Oracle {
            workers,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    fn checked_size(&self, space: &CoefficientSpace) -> Result<u64, OracleError> {
        let size = space.size();
        match u64::try_from(&size) {
            Ok(s) if s <= self.budget => Ok(s),
            _ => Err(OracleError::BudgetExceeded {
                required: size,
                budget: self.budget,
            }),
        }
    }

    /// Counts the separable tuples of the query by visiting every one of them.
    pub fn enumerate_count(&self, query: &EnumerationQuery) -> Result<BigUint, OracleError> {
        let space = query.space();
        let size = self.checked_size(&space)?;
        Ok(BigUint::from(self.count_space(&space, size)))
    }

    fn count_space(&self, space: &CoefficientSpace, size: u64) -> u64 {
        let workers = self.workers as u64;
        if workers == 1 || size < PARALLEL_THRESHOLD {
            return space.count_separable(0..size);
        }
        let ranges = partition(size, workers);
        let partials: Vec<u64> = thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .iter()
                .map(|r| {
                    let r = r.clone();
                    scope.spawn(move || space.count_separable(r))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        });
        partials.iter().sum()
    }

    /// Enumerates each prime-power component `Z/p^k` separately and combines
    /// the counts. Monic and degree-at-most counts are products over the
    /// components; the exact-degree count is the difference of two
    /// degree-at-most products, since "top coefficient nonzero mod n" is not a
    /// componentwise condition.
    pub fn crt_product_count(&self, query: &EnumerationQuery) -> Result<BigUint, OracleError> {
        match query.mode {
            CountMode::MonicExact | CountMode::AllLeq => {
                self.component_product(&query.modulus, query.degree, query.mode)
            }
            CountMode::Exact => {
                let upto = self.component_product(&query.modulus, query.degree, CountMode::AllLeq)?;
                if query.degree == 0 {
                    return Ok(upto);
                }
                let below =
                    self.component_product(&query.modulus, query.degree - 1, CountMode::AllLeq)?;
                Ok(upto - below)
            }
        }
    }

    fn component_product(
        &self,
        m: &Modulus,
        degree: u32,
        mode: CountMode,
    ) -> Result<BigUint, OracleError> {
        let mut product = BigUint::from(1u32);
        for component in m.components() {
            let space = CoefficientSpace::new(&component, degree, mode);
            let size = self.checked_size(&space)?;
            product *= self.count_space(&space, size);
        }
        Ok(product)
    }

    /// One report per degree `0..=d_max` and per mode, comparing full
    /// enumeration with the closed form. Over-budget queries are reported as
    /// skipped.
    pub fn verify(&self, m: &Modulus, d_max: u32) -> Vec<VerificationReport> {
        let mut reports = Vec::new();
        for degree in 0..=d_max {
            for mode in CountMode::ALL {
                let query = EnumerationQuery::new(m, degree, mode);
                let start = Instant::now();
                let oracle_count = self.enumerate_count(&query).ok();
                reports.push(VerificationReport {
                    formula_count: query.formula_count(),
                    oracle_count,
                    elapsed: start.elapsed(),
                    query,
                });
            }
        }
        reports
    }
}

/// Splits `0..size` into at most `parts` contiguous, non-empty ranges.
fn partition(size: u64, parts: u64) -> Vec<std::ops::Range<u64>> {
    let parts = parts.clamp(1, size.max(1));
    let chunk = size / parts;
    let extra = size % parts;
    let mut start = 0;
    (0..parts)
        .map(|i| {
            let len = chunk + u64::from(i < extra);
            let r = start..start + len;
            start += len;
            r
        })
        .filter(|r| !r.is_empty())
        .collect()
}
