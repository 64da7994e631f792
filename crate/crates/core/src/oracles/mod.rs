//! Ground-truth solvers: exhaustive search at desk scale for the hard
//! problems, polynomial algorithms for 2-SAT, Horn-SAT and evaluation.
//!
//! All solvers are deterministic — witnesses are chosen lexicographically —
//! so the same input always yields the same answer. Enumeration caps are
//! configuration, not constants; exceeding one is a typed refusal
//! ([`crate::Error::TooLarge`]) distinct from "no solution".

mod decomp;
mod graphs;
mod poly;
mod reach;
mod sat;
mod width;

pub use decomp::{solve_qcoloring_bag_dp, solve_sat_bag_dp};
pub use graphs::{
    degeneracy, solve_csp_bruteforce, solve_degdel_bruteforce, solve_domset_bruteforce,
    solve_knc_bruteforce, solve_maxcut_bruteforce, solve_qcoloring_bruteforce,
};
pub use poly::{solve_2sat_poly, solve_horn_poly};
pub use reach::{solve_ann_nonreach, solve_ann_reach, ReachChecker};
pub use sat::{
    solve_maxsat_bruteforce, solve_sat_bruteforce, solve_weight_k_sat, Evaluate,
};
pub use width::{pathwidth_bruteforce, tree_depth_bruteforce};

use crate::instance::{Assignment, BranchingProgram, Circuit, GateKind};

/// Enumeration caps for the brute-force oracles.
#[derive(Debug, Clone)]
pub struct OracleCaps {
    /// Variable cap for SAT / Max-SAT / weight-k brute force.
    pub sat_vars: u32,
    /// Annotation-variable cap for annotated reachability.
    pub ann_vars: u32,
    /// Vertex cap for q-coloring brute force.
    pub coloring_vertices: u32,
    /// Vertex cap for max-cut brute force.
    pub maxcut_vertices: u32,
    /// Vertex cap for k-neighborhood-cut and degenerate-deletion selection.
    pub selection_vertices: u32,
    /// Vertex cap for the exact width solvers.
    pub width_vertices: u32,
    /// Cap on the search-space product for CSP brute force.
    pub csp_space: u64,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            sat_vars: 24,
            ann_vars: 16,
            coloring_vertices: 12,
            maxcut_vertices: 20,
            selection_vertices: 14,
            width_vertices: 10,
            csp_space: 1 << 24,
        }
    }
}

impl OracleCaps {
    /// Caps loosened for equivalence trials whose reduction outputs are
    /// larger than the defaults but still cheap to enumerate.
    pub fn trial() -> Self {
        OracleCaps {
            sat_vars: 26,
            ann_vars: 16,
            coloring_vertices: 14,
            maxcut_vertices: 24,
            selection_vertices: 64,
            width_vertices: 10,
            csp_space: 1 << 26,
        }
    }
}

/// Evaluates a circuit under an assignment total over its inputs, in
/// topological order.
pub fn eval_circuit(c: &Circuit, a: &Assignment) -> bool {
    debug_assert!(a.num_vars() >= c.num_inputs);
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
    val[c.output]
}

/// Walks a branching program from the start vertex, following the arc
/// matching the assignment at each labeled vertex. Accepts iff the walk ends
/// at the accept vertex.
pub fn eval_branching_program(bp: &BranchingProgram, a: &Assignment) -> bool {
    let mut idx = 0u32;
    for layer in &bp.layers[..bp.layers.len() - 1] {
        let node = &layer[idx as usize];
        let var = node.var.expect("interior vertices are labeled");
        idx = if a.get(var) { node.on_true } else { node.on_false };
    }
    idx == bp.accept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::BpNode;

    #[test]
    fn and_gate_semantics() {
        let mut c = Circuit::new(2);
        let x = c.input(1);
        let y = c.input(2);
        let g = c.and(x, y);
        c.output = g;
        assert!(eval_circuit(&c, &Assignment::new(vec![true, true])));
        assert!(!eval_circuit(&c, &Assignment::new(vec![true, false])));
    }

    #[test]
    fn not_of_const_true() {
        let mut c = Circuit::new(0);
        let t = c.push(GateKind::ConstTrue, vec![]);
        let n = c.not(t);
        c.output = n;
        assert!(!eval_circuit(&c, &Assignment::new(vec![])));
    }

    #[test]
    fn single_variable_walk() {
        let bp = BranchingProgram {
            num_vars: 1,
            width: 5,
            layers: vec![
                vec![BpNode::interior(1, 0, 1)],
                vec![BpNode::terminal(), BpNode::terminal()],
            ],
            accept: 0,
            reject: 1,
        };
        assert!(eval_branching_program(&bp, &Assignment::new(vec![true])));
        assert!(!eval_branching_program(&bp, &Assignment::new(vec![false])));
    }

    /// Independent recursive evaluator used to cross-check `eval_circuit`.
    fn eval_recursive(c: &Circuit, id: usize, a: &Assignment) -> bool {
        let g = &c.gates[id];
        match g.kind {
            GateKind::Input(v) => a.get(v),
            GateKind::ConstTrue => true,
            GateKind::ConstFalse => false,
            GateKind::Not => !eval_recursive(c, g.inputs[0], a),
            GateKind::And => g.inputs.iter().all(|&i| eval_recursive(c, i, a)),
            GateKind::Or => g.inputs.iter().any(|&i| eval_recursive(c, i, a)),
        }
    }

    #[test]
    fn topological_and_recursive_evaluators_agree_on_random_circuits() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=6);
            let mut c = Circuit::new(n);
            for v in 1..=n {
                c.input(v);
            }
            for _ in 0..rng.gen_range(5..20) {
                let a = rng.gen_range(0..c.gates.len());
                let b = rng.gen_range(0..c.gates.len());
                match rng.gen_range(0..3) {
                    0 => c.and(a, b),
                    1 => c.or(a, b),
                    _ => c.not(a),
                };
            }
            c.output = c.gates.len() - 1;
            for a in Assignment::enumerate(n) {
                assert_eq!(eval_circuit(&c, &a), eval_recursive(&c, c.output, &a));
            }
        }
    }
}
