//! Exact scalars and polynomials in `∂` and a finite list of λ-variables.
//!
//! Every structure constant in the crate is a [`Poly`]: a sparse map from
//! exponent vectors `(e_∂, e_λ1, …, e_λm)` to rationals. The variable list
//! lives in a shared [`VarCtx`]; arithmetic between polynomials in different
//! contexts is an error.

mod poly;

pub use poly::{jproducts_to_lambda, lambda_to_jproducts, Monomial, Poly};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_is_one(r: &Rational) -> bool {
    r.is_one()
}

pub fn rat_is_zero(r: &Rational) -> bool {
    r.is_zero()
}

/// Reserved surface name of `∂`.
pub const D_NAME: &str = "D";

/// Ordered list of λ-variable names. `∂` is always implicitly present at
/// position 0 of every exponent vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarCtx {
    names: Vec<String>,
}

/// Shared handle to a variable context.
pub type Ctx = Arc<VarCtx>;

const CANONICAL_CACHE: usize = 10;

static CANONICAL: Lazy<Vec<Ctx>> = Lazy::new(|| {
    (0..CANONICAL_CACHE)
        .map(|m| {
            Arc::new(VarCtx {
                names: (1..=m).map(|i| format!("l{i}")).collect(),
            })
        })
        .collect()
});

impl VarCtx {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ctx> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n == D_NAME || n == "∂" {
                return Err(Error::InvalidContext(format!("`{n}` is reserved for ∂")));
            }
            if n.is_empty() {
                return Err(Error::InvalidContext("empty variable name".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidContext(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(VarCtx { names }))
    }

    /// The context `l1, …, lm` used for every table of arity `m + 1`.
    pub fn canonical(m: usize) -> Ctx {
        if m < CANONICAL_CACHE {
            CANONICAL[m].clone()
        } else {
            Arc::new(VarCtx {
                names: (1..=m).map(|i| format!("l{i}")).collect(),
            })
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Number of λ-variables (not counting `∂`).
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Position of a λ-variable in exponent vectors (1-based; 0 is `∂`).
    pub fn slot_of(&self, name: &str) -> Option<usize> {
        if name == D_NAME || name == "∂" {
            return Some(0);
        }
        self.names.iter().position(|n| n == name).map(|i| i + 1)
    }
}

impl fmt::Debug for VarCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarCtx(∂; {})", self.names.join(", "))
    }
}

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
