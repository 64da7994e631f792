use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A constraint listing the accepted value tuples for its scope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CspConstraint {
    /// Variable indices, 1-based.
    pub scope: Vec<u32>,
    /// Accepted tuples; entry `i` gives the value of `scope[i]`.
    pub accepted: Vec<Vec<u32>>,
}

/// A CSP with alphabet `[q]` and per-variable allowed-value lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CspInstance {
    pub domain_size: u32,
    /// Allowed values for each variable (values in `1..=domain_size`).
    pub allowed: Vec<BTreeSet<u32>>,
    pub constraints: Vec<CspConstraint>,
}

impl CspInstance {
    pub fn num_vars(&self) -> u32 {
        self.allowed.len() as u32
    }

    pub fn validate(&self) -> Result<()> {
        for (i, set) in self.allowed.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::invalid(format!("variable {} has no allowed values", i + 1)));
            }
            if set.iter().any(|&v| v < 1 || v > self.domain_size) {
                return Err(Error::invalid(format!("variable {} allows out-of-range value", i + 1)));
            }
        }
        for c in &self.constraints {
            for &v in &c.scope {
                if v < 1 || v > self.num_vars() {
                    return Err(Error::invalid(format!("constraint scope variable {v} out of range")));
                }
            }
            for t in &c.accepted {
                if t.len() != c.scope.len() {
                    return Err(Error::invalid("tuple arity differs from scope length"));
                }
                for (pos, &val) in t.iter().enumerate() {
                    let var = c.scope[pos] as usize - 1;
                    if !self.allowed[var].contains(&val) {
                        return Err(Error::invalid(format!(
                            "tuple value {val} not allowed for variable {}",
                            c.scope[pos]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks a total value assignment (`values[i]` for variable `i+1`).
    pub fn eval(&self, values: &[u32]) -> bool {
        values
            .iter()
            .enumerate()
            .all(|(i, v)| self.allowed[i].contains(v))
            && self.constraints.iter().all(|c| {
                let tuple: Vec<u32> =
                    c.scope.iter().map(|&v| values[v as usize - 1]).collect();
                c.accepted.contains(&tuple)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_mismatch_rejected() {
        let csp = CspInstance {
            domain_size: 2,
            allowed: vec![[1, 2].into_iter().collect()],
            constraints: vec![CspConstraint { scope: vec![1], accepted: vec![vec![1, 2]] }],
        };
        assert!(csp.validate().is_err());
    }
}
