//! Operation budget guarding exact scans.
//!
//! Exhaustive testers document their cost in elementary table operations and
//! refuse up front when an invocation would exceed the budget, instead of
//! running for hours.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(200_000_000)
    }
}

impl Budget {
    pub const UNLIMITED: Budget = Budget(u64::MAX);

    pub fn check(&self, operation: &str, estimated: u64) -> Result<()> {
        if estimated > self.0 {
            Err(Error::Budget {
                operation: operation.to_string(),
                estimated,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refusal_names_the_scan() {
        let err = Budget(10).check("subcube mass scan", 11).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("subcube mass scan") && text.contains("11"));
        assert!(Budget(10).check("x", 10).is_ok());
    }
}
