//! Reduction pipelines mirroring the theorem implication chains: typed
//! composition of reductions with end-to-end answer preservation checked
//! against the original instance's oracle verdict.

use super::gen::{gen_monotone_circuit, gen_planted, GenParams, PlantedKind};
use super::trial::{ReductionId, TrialReport};
use super::Instance;
use crate::instance::{Assignment, BranchingProgram, Circuit, CnfInstance};
use crate::oracles::{
    eval_branching_program, eval_circuit, solve_sat_bag_dp, solve_sat_bruteforce,
    solve_weight_k_sat, OracleCaps,
};
use crate::reductions::circuit::{
    barrington_transform, bp_to_cnf_pw5, build_psi_r, formula_to_weight_k,
    weight_k_formula_to_circuit,
};
use crate::reductions::horn::{
    circuit_to_hornbackdoor, circuitsat_to_weightk, hornbackdoor_to_circuit,
    weightk_monotone_to_circuitsat,
};
use crate::{Error, Result};

/// A named reduction chain with its parameter bindings.
#[derive(Debug, Clone)]
pub struct PipelineSpec {
    /// Chain tag, e.g. "circuit-to-pw5-cnf".
    pub name: &'static str,
    pub steps: Vec<ReductionId>,
    /// Weight parameter bound by the weighted steps.
    pub k: u32,
    gen: PipelineGen,
}

#[derive(Debug, Clone, Copy)]
enum PipelineGen {
    NormalizedCircuit,
    TdModulatorCnf,
    HornBackdoorCnf,
    GeneralCircuit,
    MonotoneCircuit,
    Identity,
}

/// The built-in pipelines: the three constructive chains of the
/// linear-depth-circuit theorem and the four of the circuit/Horn theorem,
/// plus the identity pipeline.
pub fn pipeline_specs() -> Vec<PipelineSpec> {
    vec![
        PipelineSpec {
            name: "circuit-to-pw5-cnf",
            steps: vec![ReductionId::BarringtonTransform, ReductionId::BpToCnfPw5],
            k: 0,
            gen: PipelineGen::NormalizedCircuit,
        },
        PipelineSpec {
            name: "td-sat-to-weight-k-formula",
            steps: vec![ReductionId::BuildPsiR, ReductionId::FormulaToWeightK],
            k: 2,
            gen: PipelineGen::TdModulatorCnf,
        },
        PipelineSpec {
            name: "td-sat-to-indexed-circuit",
            steps: vec![
                ReductionId::BuildPsiR,
                ReductionId::FormulaToWeightK,
                ReductionId::WeightKFormulaToCircuit,
            ],
            k: 2,
            gen: PipelineGen::TdModulatorCnf,
        },
        PipelineSpec {
            name: "horn-backdoor-to-circuit",
            steps: vec![ReductionId::HornbackdoorToCircuit],
            k: 0,
            gen: PipelineGen::HornBackdoorCnf,
        },
        PipelineSpec {
            name: "circuit-to-horn-backdoor",
            steps: vec![ReductionId::CircuitToHornbackdoor],
            k: 0,
            gen: PipelineGen::GeneralCircuit,
        },
        PipelineSpec {
            name: "monotone-to-weight-k-circuit",
            steps: vec![ReductionId::WeightkMonotoneToCircuitsat],
            k: 2,
            gen: PipelineGen::MonotoneCircuit,
        },
        PipelineSpec {
            name: "circuit-to-indexed-weight-k",
            steps: vec![ReductionId::CircuitsatToWeightk],
            k: 2,
            gen: PipelineGen::GeneralCircuit,
        },
        PipelineSpec {
            name: "identity",
            steps: vec![],
            k: 0,
            gen: PipelineGen::Identity,
        },
    ]
}

pub fn pipeline_by_name(name: &str) -> Result<PipelineSpec> {
    pipeline_specs()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::precondition(format!("unknown pipeline {name:?}")))
}

/// A value flowing through a pipeline, together with the question asked of
/// it (plain satisfiability or weight-k satisfiability).
enum Value {
    Cnf(CnfInstance),
    Circuit(Circuit),
    Formula(Circuit),
    Bp(BranchingProgram),
    WeightK(Circuit, u32),
}

impl Value {
    fn summary(&self) -> String {
        match self {
            Value::Cnf(f) => format!("cnf n={} m={}", f.num_vars, f.clauses.len()),
            Value::Circuit(c) => format!("circuit inputs={} gates={}", c.num_inputs, c.gate_count()),
            Value::Formula(c) => format!("formula inputs={} gates={}", c.num_inputs, c.gate_count()),
            Value::Bp(b) => format!("bp length={}", b.length()),
            Value::WeightK(c, k) => {
                format!("weight-{k} circuit inputs={} gates={}", c.num_inputs, c.gate_count())
            }
        }
    }

    /// The value's answer under its question.
    fn decide(&self, caps: &OracleCaps) -> Result<bool> {
        match self {
            Value::Cnf(f) => decide_cnf(f, caps),
            Value::Circuit(c) | Value::Formula(c) => {
                if c.num_inputs > caps.sat_vars {
                    return Err(Error::TooLarge {
                        what: "circuit inputs",
                        actual: c.num_inputs as u64,
                        cap: caps.sat_vars as u64,
                    });
                }
                Ok(Assignment::enumerate(c.num_inputs).any(|a| eval_circuit(c, &a)))
            }
            Value::Bp(b) => {
                if b.num_vars > caps.sat_vars {
                    return Err(Error::TooLarge {
                        what: "bp inputs",
                        actual: b.num_vars as u64,
                        cap: caps.sat_vars as u64,
                    });
                }
                Ok(Assignment::enumerate(b.num_vars).any(|a| eval_branching_program(b, &a)))
            }
            Value::WeightK(c, k) => Ok(solve_weight_k_sat(c, *k, caps)?.is_some()),
        }
    }
}

/// Decides CNF satisfiability, exploiting an attached certificate when the
/// formula is too large for plain enumeration: bag DP over a path
/// decomposition, or backdoor enumeration with the polynomial base solver.
fn decide_cnf(f: &CnfInstance, caps: &OracleCaps) -> Result<bool> {
    if f.num_vars <= caps.sat_vars {
        return Ok(solve_sat_bruteforce(f, caps)?.is_some());
    }
    match &f.certificate {
        Some(crate::instance::StructureCertificate::PathDecomposition { .. }) => {
            Ok(solve_sat_bag_dp(f, caps)?.is_some())
        }
        Some(crate::instance::StructureCertificate::Backdoor { variables, base }) => {
            if variables.len() as u32 > caps.ann_vars {
                return Err(Error::TooLarge {
                    what: "backdoor variables",
                    actual: variables.len() as u64,
                    cap: caps.ann_vars as u64,
                });
            }
            let vars: Vec<u32> = variables.iter().copied().collect();
            for a in Assignment::enumerate(vars.len() as u32) {
                let fixed: Vec<(u32, bool)> = vars
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (v, a.get(i as u32 + 1)))
                    .collect();
                let restricted = f.restrict(&fixed);
                let branch = match base {
                    crate::instance::BaseClass::Horn => {
                        crate::oracles::solve_horn_poly(&restricted)?.is_some()
                    }
                    crate::instance::BaseClass::TwoSat => {
                        crate::oracles::solve_2sat_poly(&restricted)?.is_some()
                    }
                };
                if branch {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        _ => Err(Error::TooLarge {
            what: "cnf variables",
            actual: f.num_vars as u64,
            cap: caps.sat_vars as u64,
        }),
    }
}

fn apply(step: ReductionId, value: Value, k: u32) -> Result<Value> {
    match (step, value) {
        (ReductionId::BarringtonTransform, Value::Circuit(c)) => {
            Ok(Value::Bp(barrington_transform(&c)?))
        }
        (ReductionId::BpToCnfPw5, Value::Bp(b)) => Ok(Value::Cnf(bp_to_cnf_pw5(&b)?)),
        (ReductionId::BuildPsiR, Value::Cnf(f)) => {
            Ok(Value::Formula(build_psi_r(&f)?.circuit))
        }
        (ReductionId::FormulaToWeightK, Value::Formula(f)) => {
            let out = formula_to_weight_k(&f, k)?;
            Ok(Value::WeightK(out.circuit, out.k))
        }
        (ReductionId::WeightKFormulaToCircuit, Value::WeightK(f, k)) => {
            // the weight-k question over the formula becomes plain
            // satisfiability of the indexed circuit
            let out = weight_k_formula_to_circuit(&f, k)?;
            Ok(Value::Circuit(out.circuit))
        }
        (ReductionId::HornbackdoorToCircuit, Value::Cnf(f)) => {
            Ok(Value::Circuit(hornbackdoor_to_circuit(&f)?.circuit))
        }
        (ReductionId::CircuitToHornbackdoor, Value::Circuit(c)) => {
            Ok(Value::Cnf(circuit_to_hornbackdoor(&c)?))
        }
        (ReductionId::WeightkMonotoneToCircuitsat, Value::Circuit(c)) => {
            let out = weightk_monotone_to_circuitsat(&c, k)?;
            Ok(Value::WeightK(out.circuit, out.k))
        }
        (ReductionId::CircuitsatToWeightk, Value::WeightK(c, k)) => {
            Ok(Value::Circuit(circuitsat_to_weightk(&c, k)?.circuit))
        }
        (step, value) => Err(Error::precondition(format!(
            "pipeline step {} cannot consume a {}",
            step.name(),
            value.summary()
        ))),
    }
}

/// The initial value (and its question) for a pipeline.
fn initial_value(spec: &PipelineSpec, instance: Instance) -> Result<Value> {
    let value = match instance {
        Instance::Cnf(f) => Value::Cnf(f),
        Instance::Circuit(c) => {
            // the indexed weight-k chain starts from a weight-k question
            if spec.steps.first() == Some(&ReductionId::CircuitsatToWeightk) {
                Value::WeightK(c, spec.k)
            } else {
                Value::Circuit(c)
            }
        }
        Instance::BranchingProgram(b) => Value::Bp(b),
        other => {
            return Err(Error::precondition(format!(
                "pipelines cannot start from a {}",
                other.kind_name()
            )))
        }
    };
    Ok(value)
}

/// Generates a matching instance for the pipeline.
pub fn gen_pipeline_instance(spec: &PipelineSpec, seed: u64) -> Result<Instance> {
    match spec.gen {
        PipelineGen::NormalizedCircuit => gen_planted(
            PlantedKind::CircuitDepthBounded,
            &GenParams { num_vars: 4, depth: 4, ..GenParams::default() },
            seed,
        ),
        PipelineGen::TdModulatorCnf => gen_planted(
            PlantedKind::CnfTdModulator,
            &GenParams {
                num_vars: 4,
                modulator_size: 5,
                clauses: 7,
                depth: 2,
                ..GenParams::default()
            },
            seed,
        ),
        PipelineGen::HornBackdoorCnf => gen_planted(
            PlantedKind::CnfHornBackdoor,
            &GenParams {
                num_vars: 5,
                modulator_size: 5,
                clauses: 9,
                arity: 4,
                ..GenParams::default()
            },
            seed,
        ),
        PipelineGen::GeneralCircuit => gen_planted(
            PlantedKind::CircuitDepthBounded,
            &GenParams { num_vars: 5, depth: 8, and_not_basis: false, ..GenParams::default() },
            seed,
        ),
        PipelineGen::MonotoneCircuit => Ok(Instance::Circuit(gen_monotone_circuit(6, 12, seed))),
        PipelineGen::Identity => gen_planted(
            PlantedKind::CnfTdModulator,
            &GenParams { num_vars: 4, modulator_size: 3, ..GenParams::default() },
            seed,
        ),
    }
}

/// Runs the pipeline end to end and checks that the final answer matches
/// the original instance's oracle verdict.
pub fn run_pipeline(
    spec: &PipelineSpec,
    instance: Instance,
    seed: u64,
    caps: &OracleCaps,
) -> Result<TrialReport> {
    let started = std::time::Instant::now();
    let summary = instance.summary();
    let mut value = initial_value(spec, instance)?;
    let verdict_in = value.decide(caps)?;
    let mut steps = 0;
    for &step in &spec.steps {
        value = apply(step, value, spec.k)?;
        steps += 1;
    }
    let verdict_out = value.decide(caps)?;
    let agreement = verdict_in == verdict_out;
    Ok(TrialReport {
        reduction_id: format!("pipeline:{}", spec.name),
        seed,
        instance_summary: summary,
        oracle_verdict_in: format!("answer={}", if verdict_in { "yes" } else { "no" }),
        oracle_verdict_out: format!(
            "answer={} after {steps} steps ({})",
            if verdict_out { "yes" } else { "no" },
            value.summary()
        ),
        certificate_checks: vec![],
        size_bounds: vec![],
        agreement,
        pass: agreement,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_pipeline_trivially_passes() {
        let caps = OracleCaps::default();
        let spec = pipeline_by_name("identity").unwrap();
        let instance = gen_pipeline_instance(&spec, 3).unwrap();
        let report = run_pipeline(&spec, instance, 3, &caps).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn all_pipelines_preserve_answers() {
        let caps = OracleCaps::trial();
        for spec in pipeline_specs() {
            for seed in 0..10 {
                let instance = gen_pipeline_instance(&spec, seed).unwrap();
                let report = run_pipeline(&spec, instance, seed, &caps).unwrap();
                assert!(report.pass, "{} seed {seed}: {report:?}", spec.name);
            }
        }
    }
}
