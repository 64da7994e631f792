//! A laboratory for answer-preserving reductions between satisfiability-style
//! problems carrying explicit structure certificates (tree-depth forests, path
//! decompositions, hubs, backdoors).
//!
//! The crate is organized in four layers:
//!
//! * [`instance`] — the shared problem representations (CNF formulas, circuits,
//!   branching programs, annotated DAGs, graphs, CSPs) together with
//!   certificate verifiers. Everything is immutable after construction.
//! * [`oracles`] — ground-truth solvers: exhaustive search capped at desk
//!   scale for the hard problems, polynomial algorithms for 2-SAT, Horn-SAT
//!   and circuit evaluation.
//! * [`reductions`] — the reductions themselves, grouped by the equivalence
//!   class they belong to. Each structure-producing reduction emits a
//!   certificate that the corresponding verifier accepts.
//! * [`harness`] — seeded instance generators with planted structure, an
//!   equivalence trial runner, reduction pipelines, and (de)serialization
//!   including DIMACS import/export.

pub mod error;
pub mod expr;
pub mod harness;
pub mod instance;
pub mod oracles;
pub mod reductions;

pub use error::Error;
pub use instance::{
    Assignment, BranchingProgram, Circuit, Clause, CnfInstance, CspInstance, GateId, GateKind,
    Literal, SimpleGraph, StructureCertificate, Var,
};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
