//! A lightweight formula tree used internally by the reductions that build,
//! substitute into, and balance Boolean formulas before emitting them as
//! [`Circuit`] values with out-degree at most 1.

use crate::instance::{Assignment, Circuit, GateId, GateKind, Literal, Var};
use crate::{Error, Result};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(bool),
    Lit(Literal),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
}

impl Expr {
    pub fn var(v: Var) -> Expr {
        Expr::Lit(Literal::pos(v))
    }

    /// Conjunction with constant folding.
    pub fn and(parts: Vec<Expr>) -> Expr {
        let mut kept = Vec::new();
        for p in parts {
            match p {
                Expr::Const(true) => {}
                Expr::Const(false) => return Expr::Const(false),
                other => kept.push(other),
            }
        }
        match kept.len() {
            0 => Expr::Const(true),
            1 => kept.pop().unwrap(),
            _ => Expr::And(kept),
        }
    }

    /// Disjunction with constant folding.
    pub fn or(parts: Vec<Expr>) -> Expr {
        let mut kept = Vec::new();
        for p in parts {
            match p {
                Expr::Const(false) => {}
                Expr::Const(true) => return Expr::Const(true),
                other => kept.push(other),
            }
        }
        match kept.len() {
            0 => Expr::Const(false),
            1 => kept.pop().unwrap(),
            _ => Expr::Or(kept),
        }
    }

    pub fn not(e: Expr) -> Expr {
        match e {
            Expr::Const(b) => Expr::Const(!b),
            Expr::Not(inner) => *inner,
            Expr::Lit(l) => Expr::Lit(l.negated()),
            other => Expr::Not(Box::new(other)),
        }
    }

    /// A clause as a disjunction of literals.
    pub fn clause(lits: &[Literal]) -> Expr {
        Expr::or(lits.iter().map(|&l| Expr::Lit(l)).collect())
    }

    pub fn eval(&self, a: &Assignment) -> bool {
        match self {
            Expr::Const(b) => *b,
            Expr::Lit(l) => l.eval(a),
            Expr::Not(e) => !e.eval(a),
            Expr::And(es) => es.iter().all(|e| e.eval(a)),
            Expr::Or(es) => es.iter().any(|e| e.eval(a)),
        }
    }

    /// Fixes a variable to a constant and folds.
    pub fn substitute(&self, var: Var, value: bool) -> Expr {
        match self {
            Expr::Const(b) => Expr::Const(*b),
            Expr::Lit(l) => {
                if l.var == var {
                    Expr::Const(l.positive == value)
                } else {
                    Expr::Lit(*l)
                }
            }
            Expr::Not(e) => Expr::not(e.substitute(var, value)),
            Expr::And(es) => Expr::and(es.iter().map(|e| e.substitute(var, value)).collect()),
            Expr::Or(es) => Expr::or(es.iter().map(|e| e.substitute(var, value)).collect()),
        }
    }

    /// Replaces every occurrence of a variable by (copies of) an expression.
    pub fn replace_var(&self, var: Var, pos: &Expr, neg: &Expr) -> Expr {
        match self {
            Expr::Const(b) => Expr::Const(*b),
            Expr::Lit(l) if l.var == var => {
                if l.positive {
                    pos.clone()
                } else {
                    neg.clone()
                }
            }
            Expr::Lit(l) => Expr::Lit(*l),
            Expr::Not(e) => Expr::not(e.replace_var(var, pos, neg)),
            Expr::And(es) => {
                Expr::and(es.iter().map(|e| e.replace_var(var, pos, neg)).collect())
            }
            Expr::Or(es) => Expr::or(es.iter().map(|e| e.replace_var(var, pos, neg)).collect()),
        }
    }

    /// Number of leaves (literals and constants).
    pub fn leaf_count(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Lit(_) => 1,
            Expr::Not(e) => e.leaf_count(),
            Expr::And(es) | Expr::Or(es) => es.iter().map(|e| e.leaf_count()).sum(),
        }
    }

    /// Total node count, a proxy for formula size.
    pub fn node_count(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Lit(_) => 1,
            Expr::Not(e) => 1 + e.node_count(),
            Expr::And(es) | Expr::Or(es) => 1 + es.iter().map(|e| e.node_count()).sum::<usize>(),
        }
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut std::collections::BTreeSet<Var>) {
        match self {
            Expr::Const(_) => {}
            Expr::Lit(l) => {
                out.insert(l.var);
            }
            Expr::Not(e) => e.collect_vars(out),
            Expr::And(es) | Expr::Or(es) => es.iter().for_each(|e| e.collect_vars(out)),
        }
    }

    /// Emits the tree as a circuit with out-degree at most 1 (a formula).
    /// Input gates are shared; every other node becomes a fresh gate.
    pub fn to_circuit(&self, num_inputs: u32) -> Circuit {
        let mut c = Circuit::new(num_inputs);
        let mut inputs: BTreeMap<Var, GateId> = BTreeMap::new();
        let out = emit(self, &mut c, &mut inputs);
        c.output = out;
        c
    }
}

fn emit(e: &Expr, c: &mut Circuit, inputs: &mut BTreeMap<Var, GateId>) -> GateId {
    match e {
        Expr::Const(true) => c.push(GateKind::ConstTrue, vec![]),
        Expr::Const(false) => c.push(GateKind::ConstFalse, vec![]),
        Expr::Lit(l) => {
            let g = input_gate(c, inputs, l.var);
            if l.positive {
                g
            } else {
                c.not(g)
            }
        }
        Expr::Not(inner) => {
            let g = emit(inner, c, inputs);
            c.not(g)
        }
        Expr::And(es) => {
            let ids: Vec<GateId> = es.iter().map(|e| emit(e, c, inputs)).collect();
            c.push(GateKind::And, ids)
        }
        Expr::Or(es) => {
            let ids: Vec<GateId> = es.iter().map(|e| emit(e, c, inputs)).collect();
            c.push(GateKind::Or, ids)
        }
    }
}

fn input_gate(c: &mut Circuit, inputs: &mut BTreeMap<Var, GateId>, v: Var) -> GateId {
    if let Some(&g) = inputs.get(&v) {
        return g;
    }
    let g = c.input(v);
    inputs.insert(v, g);
    g
}

/// Reads a formula circuit back into a tree. Fails if the circuit is not a
/// formula (some non-input gate with out-degree above 1 would be duplicated).
pub fn expr_from_formula(c: &Circuit) -> Result<Expr> {
    if !c.is_formula() {
        return Err(Error::precondition("circuit is not a formula (out-degree > 1)"));
    }
    fn walk(c: &Circuit, id: GateId) -> Expr {
        let g = &c.gates[id];
        match g.kind {
            GateKind::Input(v) => Expr::var(v),
            GateKind::ConstTrue => Expr::Const(true),
            GateKind::ConstFalse => Expr::Const(false),
            GateKind::Not => Expr::not(walk(c, g.inputs[0])),
            GateKind::And => Expr::and(g.inputs.iter().map(|&i| walk(c, i)).collect()),
            GateKind::Or => Expr::or(g.inputs.iter().map(|&i| walk(c, i)).collect()),
        }
    }
    Ok(walk(c, c.output))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folding_collapses_constants() {
        let e = Expr::and(vec![Expr::Const(true), Expr::var(1)]);
        assert_eq!(e, Expr::var(1));
        let e = Expr::or(vec![Expr::Const(true), Expr::var(1)]);
        assert_eq!(e, Expr::Const(true));
        assert_eq!(Expr::and(vec![]), Expr::Const(true));
        assert_eq!(Expr::or(vec![]), Expr::Const(false));
    }

    #[test]
    fn circuit_round_trip_preserves_semantics() {
        // (x1 & ~x2) | x3
        let e = Expr::or(vec![
            Expr::and(vec![Expr::var(1), Expr::Lit(Literal::neg(2))]),
            Expr::var(3),
        ]);
        let c = e.to_circuit(3);
        assert!(c.validate().is_ok());
        assert!(c.is_formula());
        let back = expr_from_formula(&c).unwrap();
        for a in Assignment::enumerate(3) {
            assert_eq!(e.eval(&a), back.eval(&a));
        }
    }
}
