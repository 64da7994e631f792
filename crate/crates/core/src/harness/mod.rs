//! Instance generators with planted structure, the equivalence trial runner,
//! reduction pipelines, and serialization.

pub mod bundle;
pub mod dimacs;
pub mod gen;
pub mod pipeline;
pub mod trial;

pub use bundle::{Bundle, Provenance};
pub use gen::{gen_planted, GenParams, PlantedKind};
pub use pipeline::{gen_pipeline_instance, pipeline_by_name, pipeline_specs, run_pipeline, PipelineSpec};
pub use trial::{run_seeded_trial, run_trial, FaultInjection, ReductionId, SizeBound, TrialReport};

use crate::instance::{AnnotatedDag, BranchingProgram, Circuit, CnfInstance, CspInstance, SimpleGraph};
use serde::{Deserialize, Serialize};

/// Any instance the harness can generate, reduce, solve, or serialize.
// externally tagged: internal tagging buffers values and breaks the
// integer-keyed maps inside certificates
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Instance {
    Cnf(CnfInstance),
    Circuit(Circuit),
    BranchingProgram(BranchingProgram),
    AnnotatedDag(AnnotatedDag),
    Graph(SimpleGraph),
    Csp(CspInstance),
}

impl Instance {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Instance::Cnf(_) => "cnf",
            Instance::Circuit(_) => "circuit",
            Instance::BranchingProgram(_) => "branching-program",
            Instance::AnnotatedDag(_) => "annotated-dag",
            Instance::Graph(_) => "graph",
            Instance::Csp(_) => "csp",
        }
    }

    /// One-line human summary used in trial reports.
    pub fn summary(&self) -> String {
        match self {
            Instance::Cnf(f) => format!(
                "cnf n={} m={} arity={}{}",
                f.num_vars,
                f.clauses.len(),
                f.max_arity(),
                f.certificate
                    .as_ref()
                    .map(|c| format!(" cert={}", c.kind_name()))
                    .unwrap_or_default()
            ),
            Instance::Circuit(c) => format!(
                "circuit inputs={} gates={} depth={}",
                c.num_inputs,
                c.gate_count(),
                crate::instance::circuit_depth(c)
            ),
            Instance::BranchingProgram(bp) => format!(
                "bp vars={} width={} length={}",
                bp.num_vars,
                bp.max_layer_size(),
                bp.length()
            ),
            Instance::AnnotatedDag(d) => format!(
                "adag n={} arcs={} m={}",
                d.vertex_count,
                d.arcs.len(),
                d.annotation_vars
            ),
            Instance::Graph(g) => format!(
                "graph n={} edges={}{}",
                g.vertex_count,
                g.edges.len(),
                if g.directed { " directed" } else { "" }
            ),
            Instance::Csp(c) => format!(
                "csp q={} vars={} constraints={}",
                c.domain_size,
                c.num_vars(),
                c.constraints.len()
            ),
        }
    }
}
