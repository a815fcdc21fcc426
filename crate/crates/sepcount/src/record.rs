//! Machine-readable output: one JSON object per line, with keys in the order
//! `command`, `inputs`, `result`, `provenance`.
//!
//! Big naturals and rationals are written as decimal strings (`"123"`,
//! `"3/8"`) so no consumer loses precision. A decimal rendering of a rational
//! only appears when requested, and is flagged as approximate.

use std::collections::BTreeMap;
use std::io::{self, Write};

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use sepcount_core::census::{to_decimal, CountResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Formula,
    Enumeration,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decimal {
    pub digits: usize,
    pub value: String,
    pub approximate: bool,
}

impl Decimal {
    pub fn of(r: &Ratio<BigUint>, digits: usize) -> Self {
        Decimal {
            digits,
            value: to_decimal(r, digits),
            approximate: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub prime: u64,
    pub exponent: u32,
}

/// The tagged result of a command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum Value {
    Factors(Vec<Factor>),
    Bool(bool),
    Residue {
        value: u64,
        modulus: u64,
    },
    Matrix(Vec<Vec<u64>>),
    Count {
        count: String,
        total: String,
        proportion: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        decimal: Option<Decimal>,
    },
    Rational {
        rational: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        decimal: Option<Decimal>,
    },
    Verification {
        degree: u32,
        mode: String,
        formula: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        oracle: Option<String>,
        status: String,
        elapsed_us: u64,
    },
}

pub fn rational_string(r: &Ratio<BigUint>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl Value {
    pub fn count(result: &CountResult, decimal_digits: Option<usize>) -> Self {
        Value::Count {
            count: result.count.to_string(),
            total: result.total.to_string(),
            proportion: rational_string(&result.proportion),
            decimal: decimal_digits.map(|d| Decimal::of(&result.proportion, d)),
        }
    }

    pub fn rational(r: &Ratio<BigUint>, decimal_digits: Option<usize>) -> Self {
        Value::Rational {
            rational: rational_string(r),
            decimal: decimal_digits.map(|d| Decimal::of(r, d)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: Value,
    pub provenance: Provenance,
}

impl OutputRecord {
    pub fn new(command: &str, result: Value, provenance: Provenance) -> Self {
        OutputRecord {
            command: command.to_owned(),
            inputs: BTreeMap::new(),
            result,
            provenance,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn write_line(&self, out: &mut dyn Write) -> io::Result<()> {
        serde_json::to_writer(&mut *out, self)?;
        out.write_all(b"\n")
    }
}

/// One row of the `table` CSV: header `n,d,mode,count,proportion`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u64,
    pub d: u32,
    pub mode: String,
    pub count: String,
    pub proportion: String,
}
