//! The Circuit-SETH equivalence class: Horn backdoors and weighted circuit
//! satisfiability.

use crate::instance::{
    BaseClass, Circuit, Clause, CnfInstance, GateId, GateKind, Literal, StructureCertificate,
    Var,
};
use crate::reductions::circuit::{
    build_index_selector, normalize_circuit, IndexedWeightK, NormalForm, SelectorGroup,
};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Output of [`hornbackdoor_to_circuit`]: circuit input `j` stands for
/// backdoor variable `backdoor_map[j-1]`; `propagation_gates[i][t]` is the
/// gate meaning "the Horn fixpoint sets the i-th non-backdoor variable True
/// within t rounds".
#[derive(Debug, Clone)]
pub struct HornCircuit {
    pub circuit: Circuit,
    pub backdoor_map: Vec<Var>,
    pub propagation_gates: Vec<Vec<GateId>>,
}

/// Encodes SAT-with-Horn-backdoor as circuit satisfiability over the
/// backdoor inputs by unrolling Horn unit propagation: per non-backdoor
/// variable and round `t` in `0..=n+1`, a disjunction gate says whether the
/// variable is forced True by round `t` (exactly `n+2` rounds; the
/// pigeonhole argument needs no early exit), with forcing gates per clause
/// in which the variable is the unique positive non-backdoor literal. A
/// copy of the formula over the final round's gates and the inputs closes
/// the circuit.
pub fn hornbackdoor_to_circuit(cnf: &CnfInstance) -> Result<HornCircuit> {
    let Some(StructureCertificate::Backdoor { variables: backdoor, base: BaseClass::Horn }) =
        &cnf.certificate
    else {
        return Err(Error::precondition("expected a Horn backdoor certificate"));
    };
    if !cnf.verify_certificate() {
        return Err(Error::InvalidCertificate("Horn backdoor does not verify".into()));
    }
    let backdoor_map: Vec<Var> = backdoor.iter().copied().collect();
    let bd_index: BTreeMap<Var, usize> =
        backdoor_map.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let outside: Vec<Var> = (1..=cnf.num_vars).filter(|v| !backdoor.contains(v)).collect();
    let out_index: BTreeMap<Var, usize> =
        outside.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = outside.len();

    let mut c = Circuit::new(backdoor_map.len() as u32);
    let inputs: Vec<GateId> = (1..=backdoor_map.len() as u32).map(|v| c.input(v)).collect();
    let neg_inputs: Vec<GateId> = inputs.iter().map(|&g| c.not(g)).collect();
    let backdoor_literal = |c: &mut Circuit, l: &Literal| -> GateId {
        let i = bd_index[&l.var];
        let _ = c;
        if l.positive {
            inputs[i]
        } else {
            neg_inputs[i]
        }
    };
    // x_{i,0} = False
    let const_false = c.push(GateKind::ConstFalse, vec![]);
    let mut grid: Vec<Vec<GateId>> = vec![vec![const_false]; n];
    for t in 1..=n + 1 {
        let mut this_round = Vec::with_capacity(n);
        for (i, &xi) in outside.iter().enumerate() {
            let mut sources = vec![grid[i][t - 1]];
            for clause in &cnf.clauses {
                if !clause.literals.contains(&Literal::pos(xi)) {
                    continue;
                }
                // x_i is forced when every other literal is false
                let mut conj = Vec::new();
                let mut forcing = true;
                for l in &clause.literals {
                    if l.var == xi && l.positive {
                        continue;
                    }
                    if backdoor.contains(&l.var) {
                        conj.push(backdoor_literal(&mut c, &l.negated()));
                    } else if l.positive {
                        // a second positive non-backdoor literal would
                        // violate the Horn backdoor; unreachable
                        forcing = false;
                    } else {
                        conj.push(grid[out_index[&l.var]][t - 1]);
                    }
                }
                if forcing {
                    sources.push(c.and_tree(&conj));
                }
            }
            this_round.push(c.or_tree(&sources));
        }
        for (i, g) in this_round.into_iter().enumerate() {
            grid[i].push(g);
        }
    }
    // trailing copy of the formula over x_{i,n+1} and the inputs
    let final_neg: Vec<GateId> = (0..n).map(|i| c.not(grid[i][n + 1])).collect();
    let mut clause_gates = Vec::new();
    for clause in &cnf.clauses {
        let lits: Vec<GateId> = clause
            .literals
            .iter()
            .map(|l| {
                if backdoor.contains(&l.var) {
                    backdoor_literal(&mut c, l)
                } else if l.positive {
                    grid[out_index[&l.var]][n + 1]
                } else {
                    final_neg[out_index[&l.var]]
                }
            })
            .collect();
        clause_gates.push(c.or_tree(&lits));
    }
    c.output = c.and_tree(&clause_gates);
    debug_assert!(c.validate().is_ok());
    Ok(HornCircuit { circuit: c, backdoor_map, propagation_gates: grid })
}

/// Encodes circuit satisfiability as SAT with a Horn backdoor, via the
/// classical P-completeness reduction from the circuit value problem.
///
/// The circuit is first normalized so negations sit directly on the inputs.
/// Every gate `c` gets variables `c_p`, `c_n` ("evaluates True" / "False"),
/// tied by `(¬c_p v ¬c_n)`, biconditionals to the input variables at the
/// leaves, Horn propagation clauses at AND/OR gates, and units pinning the
/// output. The input variables form the Horn backdoor.
pub fn circuit_to_hornbackdoor(c: &Circuit) -> Result<CnfInstance> {
    let norm = normalize_circuit(c, NormalForm::NegationsAtInputs)?;
    let n = norm.num_inputs;
    let cert = StructureCertificate::Backdoor {
        variables: (1..=n).collect(),
        base: BaseClass::Horn,
    };
    // constant-folded circuits degenerate
    match norm.gates[norm.output].kind {
        GateKind::ConstTrue => {
            return Ok(CnfInstance::with_certificate(n, vec![], cert));
        }
        GateKind::ConstFalse => {
            return Ok(CnfInstance::with_certificate(n, vec![Clause::new(vec![])], cert));
        }
        _ => {}
    }
    let pos = |g: GateId| -> Literal { Literal::pos(n + 2 * g as u32 + 1) };
    let neg_var = |g: GateId| -> Literal { Literal::pos(n + 2 * g as u32 + 2) };
    let mut clauses = Vec::new();
    for (id, gate) in norm.gates.iter().enumerate() {
        let cp = pos(id);
        let cn = neg_var(id);
        clauses.push(Clause::new(vec![cp.negated(), cn.negated()]));
        match gate.kind {
            GateKind::Input(v) => {
                let x = Literal::pos(v);
                clauses.push(Clause::new(vec![x.negated(), cp]));
                clauses.push(Clause::new(vec![x, cp.negated()]));
                clauses.push(Clause::new(vec![x.negated(), cn.negated()]));
                clauses.push(Clause::new(vec![x, cn]));
            }
            GateKind::Not => {
                let GateKind::Input(v) = norm.gates[gate.inputs[0]].kind else {
                    return Err(Error::precondition("negations must sit on inputs"));
                };
                let x = Literal::pos(v);
                clauses.push(Clause::new(vec![x.negated(), cp.negated()]));
                clauses.push(Clause::new(vec![x, cp]));
                clauses.push(Clause::new(vec![x.negated(), cn]));
                clauses.push(Clause::new(vec![x, cn.negated()]));
            }
            GateKind::And | GateKind::Or => {
                let [a, bgate] = gate.inputs.as_slice() else {
                    return Err(Error::precondition("normalized gates have fan-in 2"));
                };
                let (a_p, a_n) = (pos(*a), neg_var(*a));
                let (b_p, b_n) = (pos(*bgate), neg_var(*bgate));
                if matches!(gate.kind, GateKind::And) {
                    clauses.push(Clause::new(vec![a_p.negated(), b_p.negated(), cp]));
                    clauses.push(Clause::new(vec![a_n.negated(), cn]));
                    clauses.push(Clause::new(vec![b_n.negated(), cn]));
                    clauses.push(Clause::new(vec![cp.negated(), a_p]));
                    clauses.push(Clause::new(vec![cp.negated(), b_p]));
                } else {
                    clauses.push(Clause::new(vec![a_n.negated(), b_n.negated(), cn]));
                    clauses.push(Clause::new(vec![a_p.negated(), cp]));
                    clauses.push(Clause::new(vec![b_p.negated(), cp]));
                    clauses.push(Clause::new(vec![cn.negated(), a_n]));
                    clauses.push(Clause::new(vec![cn.negated(), b_n]));
                }
            }
            GateKind::ConstTrue | GateKind::ConstFalse => {
                return Err(Error::precondition("constants fold away during normalization"));
            }
        }
    }
    clauses.push(Clause::new(vec![pos(norm.output)]));
    clauses.push(Clause::new(vec![neg_var(norm.output).negated()]));
    let out = CnfInstance::with_certificate(n + 2 * norm.gates.len() as u32, clauses, cert);
    debug_assert!(out.verify_certificate());
    Ok(out)
}

/// Output of [`weightk_monotone_to_circuitsat`].
#[derive(Debug, Clone)]
pub struct MonotoneWeightK {
    /// Monotone circuit over the selector inputs.
    pub circuit: Circuit,
    pub k: u32,
    pub groups: Vec<SelectorGroup>,
}

/// Rewrites a monotone circuit over selector inputs so that weight-k
/// satisfying assignments of the output correspond to satisfying
/// assignments of the input: the inputs are split into k groups, a selector
/// input per group assignment feeds the old input gates it sets True, and
/// per-group disjunctions conjoined with the old output force one selector
/// per group once the weight budget is k.
///
/// For monotone inputs, plain satisfiability of the output coincides with
/// its weight-k satisfiability (both say the input is satisfiable, i.e.
/// accepts the all-True assignment); the trials check both readings.
pub fn weightk_monotone_to_circuitsat(c: &Circuit, k: u32) -> Result<MonotoneWeightK> {
    if !c.is_monotone() {
        return Err(Error::precondition("expected a monotone circuit"));
    }
    if k < 1 {
        return Err(Error::precondition("k must be at least 1"));
    }
    c.validate()?;
    let n = c.num_inputs;
    let per_group = n.div_ceil(k).max(1);
    let mut groups: Vec<SelectorGroup> = Vec::new();
    let mut cursor: Var = 1;
    let mut next_selector: Var = 1;
    for _ in 0..k {
        let take = per_group.min(n.saturating_sub(cursor - 1));
        let vars: Vec<Var> = (cursor..cursor + take).collect();
        cursor += take;
        let selector_count = 1u32 << vars.len();
        groups.push(SelectorGroup { vars, first_selector: next_selector, selector_count });
        next_selector += selector_count;
    }
    let total_inputs = next_selector - 1;
    let mut out = Circuit::new(total_inputs);
    let selector_gates: Vec<Vec<GateId>> = groups
        .iter()
        .map(|g| (0..g.selector_count).map(|s| out.input(g.first_selector + s)).collect())
        .collect();
    // old input x (group g, position j) := OR of selectors setting it True
    let mut input_sub: BTreeMap<Var, GateId> = BTreeMap::new();
    for (gi, g) in groups.iter().enumerate() {
        for (j, &v) in g.vars.iter().enumerate() {
            let sels: Vec<GateId> = (0..g.selector_count)
                .filter(|s| s >> (g.vars.len() - 1 - j) & 1 == 1)
                .map(|s| selector_gates[gi][s as usize])
                .collect();
            input_sub.insert(v, out.or_tree(&sels));
        }
    }
    let mut mapped = vec![0usize; c.gates.len()];
    for (id, gate) in c.gates.iter().enumerate() {
        mapped[id] = match gate.kind {
            GateKind::Input(v) => input_sub[&v],
            kind => {
                let ins = gate.inputs.iter().map(|&i| mapped[i]).collect();
                out.push(kind, ins)
            }
        };
    }
    let mut conj = vec![mapped[c.output]];
    for (gi, g) in groups.iter().enumerate() {
        let t = out.or_tree(&selector_gates[gi][..g.selector_count as usize]);
        conj.push(t);
    }
    out.output = out.and_tree(&conj);
    debug_assert!(out.is_monotone());
    debug_assert!(out.validate().is_ok());
    Ok(MonotoneWeightK { circuit: out, k, groups })
}

/// Input-budget for the index-decoded circuit.
const WEIGHT_K_INPUT_BUDGET: u32 = 26;

/// Encodes "does the circuit have a satisfying assignment of weight exactly
/// k" as plain circuit satisfiability over `k * ceil(log2 n)` index inputs:
/// per group, decoder conjunctions feed the selected input gate, pairwise
/// gadgets force the k indices to differ, and comparators keep indices
/// below n. The parameter k is the caller's choice (the paper treats it as
/// a hypothesis constant).
pub fn circuitsat_to_weightk(c: &Circuit, k: u32) -> Result<IndexedWeightK> {
    if k < 1 {
        return Err(Error::precondition("k must be at least 1"));
    }
    c.validate()?;
    let n = c.num_inputs;
    if n == 0 {
        return Err(Error::precondition("circuit has no inputs"));
    }
    let bits = (n.max(2) as f64).log2().ceil() as u32;
    if k * bits > WEIGHT_K_INPUT_BUDGET {
        return Err(Error::TooLarge {
            what: "index inputs",
            actual: (k * bits) as u64,
            cap: WEIGHT_K_INPUT_BUDGET as u64,
        });
    }
    build_index_selector(c, n, k, bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen::{gen_monotone_circuit, gen_planted, GenParams, PlantedKind};
    use crate::harness::Instance;
    use crate::instance::Assignment;
    use crate::oracles::{
        eval_circuit, solve_horn_poly, solve_sat_bruteforce, solve_weight_k_sat, OracleCaps,
    };

    fn circuit_satisfiable(c: &Circuit) -> bool {
        Assignment::enumerate(c.num_inputs).any(|a| eval_circuit(c, &a))
    }

    #[test]
    fn horn_circuit_trivial_cases() {
        // backdoor empty, remainder (x)(¬x): constant false
        let f = CnfInstance::with_certificate(
            1,
            vec![Clause::new(vec![Literal::pos(1)]), Clause::new(vec![Literal::neg(1)])],
            StructureCertificate::Backdoor {
                variables: Default::default(),
                base: BaseClass::Horn,
            },
        );
        let out = hornbackdoor_to_circuit(&f).unwrap();
        assert!(!eval_circuit(&out.circuit, &Assignment::new(vec![])));
        // empty remainder: constant true
        let f = CnfInstance::with_certificate(
            0,
            vec![],
            StructureCertificate::Backdoor {
                variables: Default::default(),
                base: BaseClass::Horn,
            },
        );
        let out = hornbackdoor_to_circuit(&f).unwrap();
        assert!(eval_circuit(&out.circuit, &Assignment::new(vec![])));
    }

    #[test]
    fn horn_circuit_per_assignment_agreement() {
        let params = GenParams {
            num_vars: 5,
            modulator_size: 4,
            clauses: 9,
            arity: 4,
            ..GenParams::default()
        };
        for seed in 0..60 {
            let Instance::Cnf(f) =
                gen_planted(PlantedKind::CnfHornBackdoor, &params, seed).unwrap()
            else {
                unreachable!()
            };
            let out = hornbackdoor_to_circuit(&f).unwrap();
            let b = out.backdoor_map.len() as u32;
            for a in Assignment::enumerate(b) {
                let fixed: Vec<(Var, bool)> = out
                    .backdoor_map
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (v, a.get(i as u32 + 1)))
                    .collect();
                let sat = solve_horn_poly(&f.restrict(&fixed)).unwrap().is_some();
                assert_eq!(eval_circuit(&out.circuit, &a), sat, "seed {seed} asst {a}");
            }
        }
    }

    #[test]
    fn horn_circuit_propagation_is_monotone_in_t() {
        let params = GenParams {
            num_vars: 4,
            modulator_size: 3,
            clauses: 7,
            arity: 3,
            ..GenParams::default()
        };
        for seed in 0..30 {
            let Instance::Cnf(f) =
                gen_planted(PlantedKind::CnfHornBackdoor, &params, seed).unwrap()
            else {
                unreachable!()
            };
            let out = hornbackdoor_to_circuit(&f).unwrap();
            let b = out.backdoor_map.len() as u32;
            for a in Assignment::enumerate(b) {
                let values = eval_all_gates(&out.circuit, &a);
                for row in &out.propagation_gates {
                    for t in 1..row.len() {
                        assert!(!values[row[t - 1]] || values[row[t]]);
                    }
                }
            }
        }
    }

    fn eval_all_gates(c: &Circuit, a: &Assignment) -> Vec<bool> {
        let mut val = vec![false; c.gates.len()];
        for (id, g) in c.gates.iter().enumerate() {
            val[id] = match g.kind {
                GateKind::Input(v) => a.get(v),
                GateKind::ConstTrue => true,
                GateKind::ConstFalse => false,
                GateKind::Not => !val[g.inputs[0]],
                GateKind::And => g.inputs.iter().all(|&i| val[i]),
                GateKind::Or => g.inputs.iter().any(|&i| val[i]),
            };
        }
        val
    }

    #[test]
    fn circuit_to_horn_trivial_cases() {
        let caps = OracleCaps::default();
        let mut c = Circuit::new(1);
        c.output = c.push(GateKind::ConstTrue, vec![]);
        let f = circuit_to_hornbackdoor(&c).unwrap();
        assert!(solve_sat_bruteforce(&f, &caps).unwrap().is_some());
        let mut c = Circuit::new(1);
        c.output = c.push(GateKind::ConstFalse, vec![]);
        let f = circuit_to_hornbackdoor(&c).unwrap();
        assert!(solve_sat_bruteforce(&f, &caps).unwrap().is_none());
    }

    #[test]
    fn circuit_to_horn_equisatisfiable_and_certified() {
        use crate::harness::gen::gen_general_circuit;
        for seed in 0..60 {
            let c = gen_general_circuit(4, 12, seed);
            let f = circuit_to_hornbackdoor(&c).unwrap();
            assert!(f.verify_certificate(), "seed {seed}");
            // per backdoor assignment the remainder is Horn: the polynomial
            // solver decides each branch
            let mut sat_formula = false;
            for a in Assignment::enumerate(4) {
                let fixed: Vec<(Var, bool)> = (1..=4).map(|v| (v, a.get(v))).collect();
                let branch = solve_horn_poly(&f.restrict(&fixed)).unwrap().is_some();
                assert_eq!(branch, eval_circuit(&c, &a), "seed {seed} asst {a}");
                sat_formula |= branch;
            }
            assert_eq!(sat_formula, circuit_satisfiable(&c));
        }
    }

    #[test]
    fn monotone_weight_k_examples() {
        let caps = OracleCaps::default();
        // c = x1: satisfiable, so a weight-1 model of the output exists
        let mut c = Circuit::new(1);
        c.output = c.input(1);
        let out = weightk_monotone_to_circuitsat(&c, 1).unwrap();
        assert!(solve_weight_k_sat(&out.circuit, 1, &caps).unwrap().is_some());
        // constant-false circuit: no weight-k model
        let mut c = Circuit::new(1);
        let _ = c.input(1);
        c.output = c.push(GateKind::ConstFalse, vec![]);
        let out = weightk_monotone_to_circuitsat(&c, 1).unwrap();
        assert!(solve_weight_k_sat(&out.circuit, 1, &caps).unwrap().is_none());
        // non-monotone input rejected
        let mut c = Circuit::new(1);
        let x = c.input(1);
        c.output = c.not(x);
        assert!(weightk_monotone_to_circuitsat(&c, 1).is_err());
    }

    #[test]
    fn monotone_weight_k_agreement_and_reading_equivalence() {
        let caps = OracleCaps::default();
        for seed in 0..60 {
            // k >= 2 keeps the selector count k * 2^(n/k) within the caps
            let c = gen_monotone_circuit(6, 12, seed);
            for k in 2..=3 {
                let out = weightk_monotone_to_circuitsat(&c, k).unwrap();
                let weight_k_sat =
                    solve_weight_k_sat(&out.circuit, k, &caps).unwrap().is_some();
                assert_eq!(weight_k_sat, circuit_satisfiable(&c), "seed {seed} k {k}");
                // for monotone inputs the two readings of the output coincide
                assert_eq!(weight_k_sat, circuit_satisfiable(&out.circuit), "seed {seed}");
            }
        }
    }

    #[test]
    fn circuitsat_to_weightk_examples() {
        // circuit accepting exactly {x1, x2} out of 4 inputs, k = 2
        let mut c = Circuit::new(4);
        let g1 = c.input(1);
        let g2 = c.input(2);
        let g3 = c.input(3);
        let g4 = c.input(4);
        let a = c.and(g1, g2);
        let n3 = c.not(g3);
        let n4 = c.not(g4);
        let b = c.and(n3, n4);
        c.output = c.and(a, b);
        let out = circuitsat_to_weightk(&c, 2).unwrap();
        assert!(circuit_satisfiable(&out.circuit));
        // constant-false: unsatisfiable
        let mut c = Circuit::new(2);
        let _ = c.input(1);
        c.output = c.push(GateKind::ConstFalse, vec![]);
        let out = circuitsat_to_weightk(&c, 1).unwrap();
        assert!(!circuit_satisfiable(&out.circuit));
    }

    #[test]
    fn circuitsat_to_weightk_agrees_with_oracle() {
        use crate::harness::gen::gen_general_circuit;
        let caps = OracleCaps::default();
        for seed in 0..60 {
            let n = 3 + (seed % 6) as u32;
            let c = gen_general_circuit(n, 14, seed);
            for k in 1..=2u32.min(n) {
                let out = circuitsat_to_weightk(&c, k).unwrap();
                let direct = solve_weight_k_sat(&c, k, &caps).unwrap().is_some();
                assert_eq!(circuit_satisfiable(&out.circuit), direct, "seed {seed} k {k}");
            }
        }
    }
}
