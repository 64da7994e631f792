//! Shared problem representations and certificate verifiers.
//!
//! All values here are plain immutable data: construct, validate, share.
//! Variables and graph vertices are 1-based positive integers throughout, for
//! DIMACS compatibility.

mod adag;
mod bp;
mod cert;
mod circuit;
mod csp;
mod graph;

pub use adag::{AnnotatedArc, AnnotatedDag};
pub use bp::{BpNode, BranchingProgram};
pub use cert::{
    verify_backdoor, verify_hub, verify_path_decomposition, verify_tree_depth_forest, BaseClass,
    StructureCertificate,
};
pub use circuit::{circuit_depth, Circuit, Gate, GateId, GateKind};
pub use csp::{CspConstraint, CspInstance};
pub use graph::SimpleGraph;

use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A propositional variable, a positive integer index.
pub type Var = u32;

/// A literal: a variable together with a polarity (`true` = positive).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub var: Var,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: Var) -> Self {
        debug_assert!(var >= 1);
        Literal { var, positive: true }
    }

    pub fn neg(var: Var) -> Self {
        debug_assert!(var >= 1);
        Literal { var, positive: false }
    }

    pub fn negated(self) -> Self {
        Literal { var: self.var, positive: !self.positive }
    }

    /// Value of the literal under an assignment.
    pub fn eval(self, a: &Assignment) -> bool {
        a.get(self.var) == self.positive
    }

    /// DIMACS form: `v` for positive, `-v` for negative.
    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    pub fn from_dimacs(x: i64) -> Result<Self> {
        if x == 0 {
            return Err(Error::invalid("literal 0"));
        }
        Ok(Literal { var: x.unsigned_abs() as Var, positive: x > 0 })
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A disjunction of literals with a positive integer weight (default 1).
///
/// A variable may occur with both polarities (the clause is then a tautology,
/// which is permitted and treated as always satisfied), but the same literal
/// may not occur twice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Clause {
    pub literals: Vec<Literal>,
    pub weight: u64,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Self {
        Clause { literals, weight: 1 }
    }

    pub fn with_weight(literals: Vec<Literal>, weight: u64) -> Self {
        Clause { literals, weight }
    }

    pub fn from_dimacs(lits: &[i64]) -> Result<Self> {
        let literals = lits.iter().map(|&x| Literal::from_dimacs(x)).collect::<Result<_>>()?;
        Ok(Clause::new(literals))
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// Contains a variable with both polarities.
    pub fn is_tautology(&self) -> bool {
        let mut seen = BTreeSet::new();
        for l in &self.literals {
            if seen.contains(&l.negated()) {
                return true;
            }
            seen.insert(*l);
        }
        false
    }

    pub fn eval(&self, a: &Assignment) -> bool {
        self.literals.iter().any(|l| l.eval(a))
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.literals.iter().map(|l| l.var).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.weight < 1 {
            return Err(Error::invalid("clause weight must be >= 1"));
        }
        let mut seen = BTreeSet::new();
        for l in &self.literals {
            if l.var < 1 {
                return Err(Error::invalid("variable indices start at 1"));
            }
            if !seen.insert((l.var, l.positive)) {
                return Err(Error::invalid(format!(
                    "duplicate literal {} in clause",
                    l.to_dimacs()
                )));
            }
        }
        Ok(())
    }
}

/// A CNF formula over variables `1..=num_vars`, optionally with an attached
/// structure certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfInstance {
    pub num_vars: u32,
    pub clauses: Vec<Clause>,
    pub certificate: Option<StructureCertificate>,
}

impl CnfInstance {
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Self {
        CnfInstance { num_vars, clauses, certificate: None }
    }

    pub fn with_certificate(
        num_vars: u32,
        clauses: Vec<Clause>,
        certificate: StructureCertificate,
    ) -> Self {
        CnfInstance { num_vars, clauses, certificate: Some(certificate) }
    }

    pub fn max_arity(&self) -> usize {
        self.clauses.iter().map(|c| c.len()).max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> u64 {
        self.clauses.iter().map(|c| c.weight).sum()
    }

    pub fn eval(&self, a: &Assignment) -> bool {
        self.clauses.iter().all(|c| c.eval(a))
    }

    /// Total weight of satisfied clauses.
    pub fn satisfied_weight(&self, a: &Assignment) -> u64 {
        self.clauses.iter().filter(|c| c.eval(a)).map(|c| c.weight).sum()
    }

    pub fn validate(&self) -> Result<()> {
        for c in &self.clauses {
            c.validate()?;
            for l in &c.literals {
                if l.var > self.num_vars {
                    return Err(Error::invalid(format!(
                        "literal {} out of range (num_vars = {})",
                        l.to_dimacs(),
                        self.num_vars
                    )));
                }
            }
        }
        Ok(())
    }

    /// Runs the verifier matching the attached certificate's kind.
    ///
    /// Returns `true` when no certificate is attached.
    pub fn verify_certificate(&self) -> bool {
        match &self.certificate {
            None => true,
            Some(cert) => match cert {
                StructureCertificate::Backdoor { .. } => verify_backdoor(self, cert),
                StructureCertificate::TreeDepthForest { .. } => {
                    verify_tree_depth_forest(&primal_graph(self), cert)
                }
                StructureCertificate::PathDecomposition { .. } => {
                    verify_path_decomposition(&primal_graph(self), cert)
                }
                StructureCertificate::Hub { .. } => verify_hub(&primal_graph(self), cert),
            },
        }
    }

    /// Fixes the given variables, dropping satisfied clauses and false
    /// literals. The variable set and certificate are left untouched.
    pub fn restrict(&self, fixed: &[(Var, bool)]) -> CnfInstance {
        let mut clauses = Vec::new();
        'clause: for c in &self.clauses {
            let mut lits = Vec::new();
            for l in &c.literals {
                match fixed.iter().find(|(v, _)| *v == l.var) {
                    Some((_, val)) => {
                        if *val == l.positive {
                            continue 'clause; // clause satisfied
                        }
                    }
                    None => lits.push(*l),
                }
            }
            clauses.push(Clause::with_weight(lits, c.weight));
        }
        CnfInstance { num_vars: self.num_vars, clauses, certificate: None }
    }
}

/// The primal graph of a CNF formula: one vertex per variable, an edge
/// between every pair of variables co-occurring in a clause.
///
/// Clause weights and repetitions do not change the result.
pub fn primal_graph(cnf: &CnfInstance) -> SimpleGraph {
    let mut edges = BTreeSet::new();
    for c in &cnf.clauses {
        let vars: Vec<Var> = c.vars().into_iter().collect();
        for i in 0..vars.len() {
            for j in i + 1..vars.len() {
                edges.insert((vars[i], vars[j]));
            }
        }
    }
    SimpleGraph::undirected(cnf.num_vars, edges.into_iter().collect())
}

/// A total truth assignment over variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn all_false(num_vars: u32) -> Self {
        Assignment { values: vec![false; num_vars as usize] }
    }

    /// Assignment from a rank in lexicographic order (variable 1 most
    /// significant, False < True). Rank 0 is all-False.
    pub fn from_rank(rank: u64, num_vars: u32) -> Self {
        let n = num_vars as usize;
        let values = (0..n).map(|i| rank >> (n - 1 - i) & 1 == 1).collect();
        Assignment { values }
    }

    pub fn num_vars(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn get(&self, var: Var) -> bool {
        self.values[(var - 1) as usize]
    }

    pub fn with(&self, var: Var, value: bool) -> Assignment {
        let mut values = self.values.clone();
        values[(var - 1) as usize] = value;
        Assignment { values }
    }

    /// Number of variables set to True.
    pub fn weight(&self) -> u32 {
        self.values.iter().filter(|&&v| v).count() as u32
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// True variables in increasing order.
    pub fn true_vars(&self) -> Vec<Var> {
        (1..=self.num_vars()).filter(|&v| self.get(v)).collect()
    }

    /// All `2^num_vars` assignments in lexicographic order.
    ///
    /// Callers are responsible for capping `num_vars`.
    pub fn enumerate(num_vars: u32) -> impl Iterator<Item = Assignment> {
        assert!(num_vars <= 63, "enumeration limited to 63 variables");
        (0..1u64 << num_vars).map(move |r| Assignment::from_rank(r, num_vars))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", if *v { i as i64 + 1 } else { -(i as i64 + 1) })?;
        }
        Ok(())
    }
}
