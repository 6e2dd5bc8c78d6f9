use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the arithmetic layer and the experiment drivers.
///
/// Variants split into two families: operational failures (bad input,
/// budget, precision) and [`Error::Identity`], which reports that an exact
/// identity or a proven bound was observed to fail.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operation undefined on the zero polynomial: {0}")]
    ZeroPolynomial(&'static str),

    #[error("invalid field specification: {0}")]
    InvalidField(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("enumeration budget exceeded: need {needed} items, budget is {budget}")]
    Budget { needed: u64, budget: u64 },

    #[error("precision exhausted: need {needed} coefficients below t^0, have {available}")]
    Precision { needed: i64, available: i64 },

    #[error("{0} requires odd characteristic (p > 2)")]
    RequiresOddCharacteristic(&'static str),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An exact identity or proven inequality failed. The message carries
    /// the offending object in its text format.
    #[error("identity violated: {0}")]
    Identity(String),
}

impl Error {
    pub fn is_identity_violation(&self) -> bool {
        matches!(self, Error::Identity(_))
    }
}

/// Upper bound on the number of items an enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1 << 22);

    pub fn check(self, needed: u64) -> Result<()> {
        if needed > self.0 {
            Err(Error::Budget {
                needed,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }

    /// Checks `base^exp` against the budget without overflowing.
    pub fn check_pow(self, base: u64, exp: u32) -> Result<()> {
        match base.checked_pow(exp) {
            Some(n) => self.check(n),
            None => Err(Error::Budget {
                needed: u64::MAX,
                budget: self.0,
            }),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
