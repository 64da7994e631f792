//! The linear-depth-circuit equivalence class: circuit normalization, the
//! width-5 branching-program transform, its pathwidth-5 CNF encoding, the
//! bottom-up modulator formula, weight-k encodings, formula balancing, and
//! the Max-SAT threshold circuit.

use crate::expr::{expr_from_formula, Expr};
use crate::instance::{
    circuit_depth, BpNode, BranchingProgram, Circuit, Clause, CnfInstance, GateId, GateKind,
    Literal, StructureCertificate, Var,
};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

// ---------------------------------------------------------------------------
// normalization

/// Target form for [`normalize_circuit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalForm {
    /// Fan-in-2 {AND, NOT}: disjunctions rewritten by De Morgan. Depth grows
    /// by at most a factor 2 plus one.
    AndNotFanin2,
    /// Fan-in-2 {AND, OR} with negations pushed onto the inputs. Depth grows
    /// by at most one.
    NegationsAtInputs,
}

#[derive(Clone, Copy)]
enum Val {
    Const(bool),
    Gate(GateId),
}

/// Rewrites a circuit into the requested basis, preserving its value on
/// every input. Constants are folded; a circuit that folds entirely becomes
/// a single constant gate.
pub fn normalize_circuit(c: &Circuit, form: NormalForm) -> Result<Circuit> {
    c.validate()?;
    let mut out = Circuit::new(c.num_inputs);
    let mut memo: BTreeMap<(GateId, bool), Val> = BTreeMap::new();
    let mut input_gates: BTreeMap<(Var, bool), GateId> = BTreeMap::new();
    let root = rewrite(c, c.output, false, form, &mut out, &mut memo, &mut input_gates);
    out.output = match root {
        Val::Gate(g) => g,
        Val::Const(b) => {
            out.push(if b { GateKind::ConstTrue } else { GateKind::ConstFalse }, vec![])
        }
    };
    out.fan_in_bound = Some(2);
    debug_assert!(out.validate().is_ok());
    Ok(out)
}

fn rewrite(
    c: &Circuit,
    id: GateId,
    negated: bool,
    form: NormalForm,
    out: &mut Circuit,
    memo: &mut BTreeMap<(GateId, bool), Val>,
    input_gates: &mut BTreeMap<(Var, bool), GateId>,
) -> Val {
    if let Some(&v) = memo.get(&(id, negated)) {
        return v;
    }
    let gate = &c.gates[id];
    let val = match (gate.kind, negated) {
        (GateKind::ConstTrue, n) => Val::Const(!n),
        (GateKind::ConstFalse, n) => Val::Const(n),
        // a NOT directly on an input is legal in both bases
        (GateKind::Input(v), n) => Val::Gate(shared_input(out, input_gates, v, n)),
        (GateKind::Not, n) => rewrite(c, gate.inputs[0], !n, form, out, memo, input_gates),
        (GateKind::And, n) | (GateKind::Or, n) => {
            let is_and = matches!(gate.kind, GateKind::And);
            // under negation, AND becomes OR of negated children and vice versa
            let make_and = is_and != n;
            let child_neg = match form {
                // AND-shaped gates keep their children; OR-shaped gates are
                // built as NOT(AND(NOT children)), so children are negated
                // regardless of our own negation flag (it lands on the top).
                NormalForm::AndNotFanin2 => !is_and,
                NormalForm::NegationsAtInputs => n,
            };
            let mut saw_absorbing = false;
            let mut ids = Vec::new();
            for &i in &gate.inputs {
                match rewrite(c, i, child_neg, form, out, memo, input_gates) {
                    Val::Const(b) => {
                        // in an AND-tree a false child absorbs; symmetric for OR
                        let absorbing = match form {
                            NormalForm::AndNotFanin2 => !b,
                            NormalForm::NegationsAtInputs => b != make_and,
                        };
                        if absorbing {
                            saw_absorbing = true;
                            break;
                        }
                    }
                    Val::Gate(g) => ids.push(g),
                }
            }
            match form {
                NormalForm::AndNotFanin2 => {
                    let negate_top = !make_and;
                    if saw_absorbing {
                        Val::Const(negate_top)
                    } else if ids.is_empty() {
                        Val::Const(!negate_top)
                    } else {
                        let tree = out.and_tree(&ids);
                        if negate_top {
                            Val::Gate(out.not(tree))
                        } else {
                            Val::Gate(tree)
                        }
                    }
                }
                NormalForm::NegationsAtInputs => {
                    if saw_absorbing {
                        Val::Const(!make_and)
                    } else if ids.is_empty() {
                        Val::Const(make_and)
                    } else if make_and {
                        Val::Gate(out.and_tree(&ids))
                    } else {
                        Val::Gate(out.or_tree(&ids))
                    }
                }
            }
        }
    };
    memo.insert((id, negated), val);
    val
}

fn shared_input(
    out: &mut Circuit,
    input_gates: &mut BTreeMap<(Var, bool), GateId>,
    v: Var,
    negated: bool,
) -> GateId {
    if let Some(&g) = input_gates.get(&(v, negated)) {
        return g;
    }
    let g = if negated {
        let base = shared_input(out, input_gates, v, false);
        out.not(base)
    } else {
        out.input(v)
    };
    input_gates.insert((v, negated), g);
    g
}

// ---------------------------------------------------------------------------
// Barrington transform

type Perm = [u8; 5];

const ID: Perm = [0, 1, 2, 3, 4];

/// Function composition: apply `q` first, then `p`.
fn compose(p: Perm, q: Perm) -> Perm {
    let mut r = [0u8; 5];
    for i in 0..5 {
        r[i] = p[q[i] as usize];
    }
    r
}

fn inverse(p: Perm) -> Perm {
    let mut r = [0u8; 5];
    for i in 0..5 {
        r[p[i] as usize] = i as u8;
    }
    r
}

fn is_five_cycle(p: Perm) -> bool {
    let mut x = 0u8;
    for step in 1..=5u8 {
        x = p[x as usize];
        if x == 0 {
            return step == 5;
        }
    }
    false
}

/// Fixed 5-cycles whose commutator (in our composition order) is again a
/// 5-cycle, found by deterministic search so the constants are
/// self-validating.
fn commutator_pair() -> (Perm, Perm, Perm) {
    use std::sync::OnceLock;
    static PAIR: OnceLock<(Perm, Perm, Perm)> = OnceLock::new();
    *PAIR.get_or_init(|| {
        let mut cycles = Vec::new();
        let mut perm: Perm = [0, 1, 2, 3, 4];
        collect_cycles(&mut perm, 0, &mut cycles);
        for &a in &cycles {
            for &b in &cycles {
                let k = compose(compose(inverse(b), inverse(a)), compose(b, a));
                if is_five_cycle(k) {
                    return (a, b, k);
                }
            }
        }
        unreachable!("S_5 is non-solvable; a commutator pair exists")
    })
}

fn collect_cycles(p: &mut Perm, i: usize, out: &mut Vec<Perm>) {
    if i == 5 {
        if is_five_cycle(*p) {
            out.push(*p);
        }
        return;
    }
    for j in i..5 {
        p.swap(i, j);
        collect_cycles(p, i + 1, out);
        p.swap(i, j);
    }
}

/// `g` with `g . x . g^-1 = y`, for 5-cycles `x`, `y`.
fn conjugator(x: Perm, y: Perm) -> Perm {
    let cycle = |p: Perm| -> [u8; 5] {
        let mut c = [0u8; 5];
        for i in 1..5 {
            c[i] = p[c[i - 1] as usize];
        }
        c
    };
    let cx = cycle(x);
    let cy = cycle(y);
    let mut g = [0u8; 5];
    for i in 0..5 {
        g[cx[i] as usize] = cy[i];
    }
    debug_assert_eq!(compose(compose(g, x), inverse(g)), y);
    g
}

#[derive(Clone)]
struct Instr {
    var: Var,
    on_true: Perm,
    on_false: Perm,
}

/// Builds a program whose yield (composition of the chosen permutations,
/// first instruction applied first) is `target` when the gate evaluates to
/// True and the identity otherwise.
fn build_program(c: &Circuit, id: GateId, target: Perm) -> Result<Vec<Instr>> {
    let gate = &c.gates[id];
    match gate.kind {
        GateKind::Input(v) => Ok(vec![Instr { var: v, on_true: target, on_false: ID }]),
        GateKind::ConstTrue => Ok(vec![Instr { var: 1, on_true: target, on_false: target }]),
        GateKind::ConstFalse => Ok(vec![Instr { var: 1, on_true: ID, on_false: ID }]),
        GateKind::Not => {
            // if P computes f against target^-1, composing target onto the
            // final step makes it compute ¬f against target (length +0)
            let mut p = build_program(c, gate.inputs[0], inverse(target))?;
            let last = p.last_mut().expect("programs are nonempty");
            last.on_true = compose(target, last.on_true);
            last.on_false = compose(target, last.on_false);
            Ok(p)
        }
        GateKind::And => match gate.inputs.as_slice() {
            [only] => build_program(c, *only, target),
            [l, r] => {
                let (a, b, k) = commutator_pair();
                let pa = build_program(c, *l, a)?;
                let pb = build_program(c, *r, b)?;
                let mut prog = Vec::with_capacity(2 * (pa.len() + pb.len()));
                prog.extend(pa.iter().cloned());
                prog.extend(pb.iter().cloned());
                prog.extend(invert_program(&pa));
                prog.extend(invert_program(&pb));
                // yield is the commutator k; conjugate the ends to retarget
                let g = conjugator(k, target);
                let gi = inverse(g);
                let first = prog.first_mut().unwrap();
                first.on_true = compose(first.on_true, gi);
                first.on_false = compose(first.on_false, gi);
                let last = prog.last_mut().unwrap();
                last.on_true = compose(g, last.on_true);
                last.on_false = compose(g, last.on_false);
                Ok(prog)
            }
            _ => Err(Error::precondition("barrington transform expects fan-in at most 2")),
        },
        GateKind::Or => Err(Error::precondition(
            "barrington transform expects the {AND, NOT} basis; normalize first",
        )),
    }
}

fn invert_program(p: &[Instr]) -> Vec<Instr> {
    p.iter()
        .rev()
        .map(|i| Instr { var: i.var, on_true: inverse(i.on_true), on_false: inverse(i.on_false) })
        .collect()
}

/// Barrington's transform: an equivalent width-5 branching program.
///
/// Expects a circuit normalized to the fan-in-2 {AND, NOT} basis over its
/// inputs, with at least one declared input. The program's length (arc
/// steps) obeys exactly `length <= 4^depth`: inputs cost 1, negations cost
/// 0, and a conjunction costs twice the lengths of both operands.
pub fn barrington_transform(c: &Circuit) -> Result<BranchingProgram> {
    if c.num_inputs == 0 {
        return Err(Error::precondition("barrington transform needs at least one input"));
    }
    if !c.is_and_not_basis() {
        return Err(Error::precondition(
            "barrington transform expects the {AND, NOT} basis; normalize first",
        ));
    }
    let (sigma, _, _) = commutator_pair();
    let prog = build_program(c, c.output, sigma)?;
    // accepting walks move the start state to sigma(start)
    let start: u8 = 0;
    let accept_state = sigma[start as usize];
    debug_assert_ne!(accept_state, start);

    let mut layers: Vec<Vec<BpNode>> = Vec::with_capacity(prog.len() + 1);
    let mut current: Vec<u8> = vec![start];
    for (t, instr) in prog.iter().enumerate() {
        if t + 1 == prog.len() {
            // last step routes straight to accept/reject
            let nodes = current
                .iter()
                .map(|&s| {
                    let goto = |p: Perm| u32::from(p[s as usize] != accept_state);
                    BpNode::interior(instr.var, goto(instr.on_true), goto(instr.on_false))
                })
                .collect();
            layers.push(nodes);
            break;
        }
        let mut next: Vec<u8> = Vec::new();
        let mut index_of = [u32::MAX; 5];
        let mut nodes = Vec::with_capacity(current.len());
        for &s in &current {
            let mut idx = |state: u8| -> u32 {
                if index_of[state as usize] == u32::MAX {
                    index_of[state as usize] = next.len() as u32;
                    next.push(state);
                }
                index_of[state as usize]
            };
            let t_ix = idx(instr.on_true[s as usize]);
            let f_ix = idx(instr.on_false[s as usize]);
            nodes.push(BpNode::interior(instr.var, t_ix, f_ix));
        }
        layers.push(nodes);
        current = next;
    }
    layers.push(vec![BpNode::terminal(), BpNode::terminal()]);
    let bp = BranchingProgram { num_vars: c.num_inputs, width: 5, layers, accept: 0, reject: 1 };
    debug_assert!(bp.validate().is_ok());
    Ok(bp)
}

/// The exact length bound documented for [`barrington_transform`]:
/// `4^depth` arc steps.
pub fn barrington_length_bound(c: &Circuit) -> u64 {
    4u64.saturating_pow(circuit_depth(c))
}

// ---------------------------------------------------------------------------
// branching program -> pathwidth-5 CNF

/// Encodes a width-(at most 5) branching program as a CNF formula whose
/// variables are the program's inputs (the modulator) plus three
/// vertex-encoding variables per layer, with a width-5 path decomposition of
/// the remainder.
///
/// Layer vertices are numbered 0..4 and encoded in 3 bits; codes naming no
/// vertex are excluded by clauses, transitions are forced bit by bit, and
/// the start and accept vertices are pinned by unit clauses. The formula is
/// satisfiable iff the program accepts some input, and restricting any
/// satisfying assignment to the inputs yields an accepted input.
pub fn bp_to_cnf_pw5(bp: &BranchingProgram) -> Result<CnfInstance> {
    bp.validate()?;
    if bp.max_layer_size() > 5 {
        return Err(Error::precondition("branching program wider than 5"));
    }
    let n = bp.num_vars;
    let layer_count = bp.layers.len();
    // y_{j,t} for j in 0..3, t in 0..layer_count
    let y = |t: usize, j: usize| -> Var { n + (3 * t + j) as u32 + 1 };
    let num_vars = n + 3 * layer_count as u32;
    let mut clauses: Vec<Clause> = Vec::new();

    // clause falsified exactly when layer t holds the given code
    let forbid = |t: usize, code: u32| -> Vec<Literal> {
        (0..3)
            .map(|j| Literal { var: y(t, j), positive: code >> j & 1 == 0 })
            .collect()
    };

    for (t, layer) in bp.layers.iter().enumerate() {
        for code in layer.len() as u32..8 {
            clauses.push(Clause::new(forbid(t, code)));
        }
        if t + 1 == layer_count {
            continue;
        }
        // (code_t = v) & (x = b) -> code_{t+1} = target, bit by bit
        for (v, node) in layer.iter().enumerate() {
            let var = node.var.expect("interior vertices are labeled");
            for (value, target) in [(true, node.on_true), (false, node.on_false)] {
                for j in 0..3 {
                    let mut lits = forbid(t, v as u32);
                    lits.push(Literal { var, positive: !value });
                    lits.push(Literal { var: y(t + 1, j), positive: target >> j & 1 == 1 });
                    clauses.push(Clause::new(lits));
                }
            }
        }
    }
    // pin the start vertex (code 0) and the accept vertex
    for j in 0..3 {
        clauses.push(Clause::new(vec![Literal { var: y(0, j), positive: false }]));
        clauses.push(Clause::new(vec![Literal {
            var: y(layer_count - 1, j),
            positive: bp.accept >> j & 1 == 1,
        }]));
    }

    let modulator: BTreeSet<Var> = (1..=n).collect();
    let bags: Vec<BTreeSet<Var>> = (0..layer_count - 1)
        .map(|t| (0..3).flat_map(|j| [y(t, j), y(t + 1, j)]).collect())
        .collect();
    let cert = StructureCertificate::PathDecomposition { modulator, bags, width: 5 };
    let out = CnfInstance::with_certificate(num_vars, clauses, cert);
    debug_assert!(out.validate().is_ok());
    debug_assert!(out.verify_certificate());
    Ok(out)
}

// ---------------------------------------------------------------------------
// bottom-up modulator formula (psi_r)

/// The formula over the modulator produced by eliminating a tree-depth
/// forest bottom-up, together with the variable renumbering.
#[derive(Debug, Clone)]
pub struct ModulatorFormula {
    /// Formula circuit over inputs `1..=modulator_map.len()`.
    pub circuit: Circuit,
    /// `modulator_map[j-1]` is the original variable that input `j` encodes.
    pub modulator_map: Vec<Var>,
    /// Documented node-count bound `2^(depth+2) * (literal count + 2)`
    /// checked by the harness.
    pub size_bound: u64,
}

/// Builds a formula over the modulator variables only, satisfied by exactly
/// those modulator assignments extendable to satisfy the input.
///
/// Proceeds bottom-up over the certificate forest: for node `b` with
/// variable `x`, children formulas are specialized to both values of `x` and
/// combined with the clauses whose deepest forest variable is `b`:
/// `(C_b^0 & AND_i psi_i^0) | (C_b^1 & AND_i psi_i^1)`. Clauses containing
/// only modulator variables are first padded with a fresh forest variable
/// (`C` becomes `(C v x), (C v ¬x)`).
pub fn build_psi_r(cnf: &CnfInstance) -> Result<ModulatorFormula> {
    let Some(StructureCertificate::TreeDepthForest { modulator, parent, depth }) =
        &cnf.certificate
    else {
        return Err(Error::precondition("expected a tree-depth forest certificate"));
    };
    if !cnf.verify_certificate() {
        return Err(Error::InvalidCertificate("tree-depth forest does not verify".into()));
    }
    let mut parent = parent.clone();
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut pad_var = None;
    for c in &cnf.clauses {
        if c.vars().iter().all(|v| modulator.contains(v)) {
            let x = *pad_var.get_or_insert_with(|| {
                let v = cnf.num_vars + 1;
                parent.insert(v, None);
                v
            });
            let mut with_pos = c.literals.clone();
            with_pos.push(Literal::pos(x));
            let mut with_neg = c.literals.clone();
            with_neg.push(Literal::neg(x));
            clauses.push(with_pos);
            clauses.push(with_neg);
        } else {
            clauses.push(c.literals.clone());
        }
    }
    let mut level: BTreeMap<Var, u32> = BTreeMap::new();
    let mut children: BTreeMap<Var, Vec<Var>> = BTreeMap::new();
    let mut roots: Vec<Var> = Vec::new();
    for (&v, &p) in &parent {
        level_of(v, &parent, &mut level);
        match p {
            Some(p) => children.entry(p).or_default().push(v),
            None => roots.push(v),
        }
    }
    // assign each clause to its deepest forest variable (the non-modulator
    // variables of a clause form a chain, so the deepest is unique)
    let mut assigned: BTreeMap<Var, Vec<usize>> = BTreeMap::new();
    for (i, lits) in clauses.iter().enumerate() {
        let deepest = lits
            .iter()
            .filter(|l| parent.contains_key(&l.var))
            .max_by_key(|l| level[&l.var])
            .expect("every clause has a forest variable after padding");
        assigned.entry(deepest.var).or_default().push(i);
    }

    fn psi(
        b: Var,
        clauses: &[Vec<Literal>],
        assigned: &BTreeMap<Var, Vec<usize>>,
        children: &BTreeMap<Var, Vec<Var>>,
    ) -> Expr {
        let own = Expr::and(
            assigned
                .get(&b)
                .map(|ids| ids.iter().map(|&i| Expr::clause(&clauses[i])).collect())
                .unwrap_or_default(),
        );
        let kids: Vec<Expr> = children
            .get(&b)
            .map(|cs| cs.iter().map(|&c| psi(c, clauses, assigned, children)).collect())
            .unwrap_or_default();
        let branch = |value: bool| {
            let mut parts = vec![own.substitute(b, value)];
            parts.extend(kids.iter().map(|k| k.substitute(b, value)));
            Expr::and(parts)
        };
        Expr::or(vec![branch(false), branch(true)])
    }

    roots.sort_unstable();
    let formula =
        Expr::and(roots.iter().map(|&r| psi(r, &clauses, &assigned, &children)).collect());
    // remap modulator variables to 1..=m
    let modulator_map: Vec<Var> = modulator.iter().copied().collect();
    let position: BTreeMap<Var, Var> =
        modulator_map.iter().enumerate().map(|(i, &v)| (v, i as Var + 1)).collect();
    let remapped = remap_vars(&formula, &position)?;
    let circuit = remapped.to_circuit(modulator_map.len() as u32);
    debug_assert!(circuit.is_formula());
    let lit_count: u64 = cnf.clauses.iter().map(|c| c.len() as u64 + 1).sum::<u64>() + 2;
    let size_bound = lit_count.saturating_mul(1u64 << (depth + 2).min(60));
    Ok(ModulatorFormula { circuit, modulator_map, size_bound })
}

fn level_of(v: Var, parent: &BTreeMap<Var, Option<Var>>, memo: &mut BTreeMap<Var, u32>) -> u32 {
    if let Some(&l) = memo.get(&v) {
        return l;
    }
    let l = match parent[&v] {
        None => 1,
        Some(p) => level_of(p, parent, memo) + 1,
    };
    memo.insert(v, l);
    l
}

fn remap_vars(e: &Expr, map: &BTreeMap<Var, Var>) -> Result<Expr> {
    Ok(match e {
        Expr::Const(b) => Expr::Const(*b),
        Expr::Lit(l) => {
            let var = *map
                .get(&l.var)
                .ok_or_else(|| Error::invalid(format!("variable {} not in the modulator", l.var)))?;
            Expr::Lit(Literal { var, positive: l.positive })
        }
        Expr::Not(x) => Expr::not(remap_vars(x, map)?),
        Expr::And(xs) => Expr::and(xs.iter().map(|x| remap_vars(x, map)).collect::<Result<_>>()?),
        Expr::Or(xs) => Expr::or(xs.iter().map(|x| remap_vars(x, map)).collect::<Result<_>>()?),
    })
}

// ---------------------------------------------------------------------------
// formula -> weight-k formula

/// Selector-variable layout of [`formula_to_weight_k`].
#[derive(Debug, Clone)]
pub struct WeightKFormula {
    pub circuit: Circuit,
    pub k: u32,
    pub groups: Vec<SelectorGroup>,
}

/// One variable group: selecting selector `first_selector + sigma` assigns
/// bit pattern `sigma` to `vars` (most significant bit first).
#[derive(Debug, Clone)]
pub struct SelectorGroup {
    pub vars: Vec<Var>,
    pub first_selector: Var,
    pub selector_count: u32,
}

/// Rewrites a formula on m inputs into one whose weight-k satisfying
/// assignments correspond one-to-one to the satisfying assignments of the
/// input: the inputs are split into k groups, each assignment to a group
/// gets a selector variable, a clause per group requires at least one
/// selector (the weight budget then forces exactly one), and every literal
/// is replaced by the disjunction of the selectors agreeing with it.
pub fn formula_to_weight_k(psi: &Circuit, k: u32) -> Result<WeightKFormula> {
    if k < 1 {
        return Err(Error::precondition("k must be at least 1"));
    }
    let e = expr_from_formula(psi)?;
    let m = psi.num_inputs;
    let per_group = m.div_ceil(k).max(1);
    let mut groups: Vec<SelectorGroup> = Vec::new();
    let mut next_var: Var = 1;
    let mut cursor: Var = 1;
    for _ in 0..k {
        let take = per_group.min(m.saturating_sub(cursor - 1));
        let vars: Vec<Var> = (cursor..cursor + take).collect();
        cursor += take;
        let selector_count = 1u32 << vars.len();
        groups.push(SelectorGroup { vars, first_selector: next_var, selector_count });
        next_var += selector_count;
    }
    let total_inputs = next_var - 1;

    // selector indices overlap the original variable range, so all
    // replacements happen in one simultaneous pass
    let mut substitution: BTreeMap<Var, (Expr, Expr)> = BTreeMap::new();
    for g in &groups {
        for (j, &v) in g.vars.iter().enumerate() {
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            for sigma in 0..g.selector_count {
                let bit = sigma >> (g.vars.len() - 1 - j) & 1 == 1;
                let lit = Expr::var(g.first_selector + sigma);
                if bit {
                    pos.push(lit);
                } else {
                    neg.push(lit);
                }
            }
            substitution.insert(v, (Expr::or(pos), Expr::or(neg)));
        }
    }
    let mut parts = vec![replace_all(&e, &substitution)];
    for g in &groups {
        parts.push(Expr::or(
            (0..g.selector_count).map(|s| Expr::var(g.first_selector + s)).collect(),
        ));
    }
    let circuit = Expr::and(parts).to_circuit(total_inputs);
    debug_assert!(circuit.is_formula());
    Ok(WeightKFormula { circuit, k, groups })
}

/// Simultaneous literal replacement: positive/negative occurrences of mapped
/// variables are rewritten in a single pass.
fn replace_all(e: &Expr, map: &BTreeMap<Var, (Expr, Expr)>) -> Expr {
    match e {
        Expr::Const(b) => Expr::Const(*b),
        Expr::Lit(l) => match map.get(&l.var) {
            Some((pos, neg)) => {
                if l.positive {
                    pos.clone()
                } else {
                    neg.clone()
                }
            }
            None => Expr::Lit(*l),
        },
        Expr::Not(x) => Expr::not(replace_all(x, map)),
        Expr::And(xs) => Expr::and(xs.iter().map(|x| replace_all(x, map)).collect()),
        Expr::Or(xs) => Expr::or(xs.iter().map(|x| replace_all(x, map)).collect()),
    }
}

// ---------------------------------------------------------------------------
// balancing

/// Balances a formula to depth at most `3 log2(leaves) + 3` while preserving
/// its value on every input (Spira-style splitting; negations are pushed to
/// the leaves first so the complement of a subformula costs no extra depth).
pub fn balance_formula(f: &Circuit) -> Result<Circuit> {
    let e = expr_from_formula(f)?;
    let t = BalTree::from_expr(&nnf(&e, false));
    let balanced = balance(&t);
    Ok(balanced.to_circuit(f.num_inputs))
}

/// Negation normal form: And/Or over literal and constant leaves.
fn nnf(e: &Expr, neg: bool) -> Expr {
    match e {
        Expr::Const(b) => Expr::Const(*b != neg),
        Expr::Lit(l) => Expr::Lit(if neg { l.negated() } else { *l }),
        Expr::Not(x) => nnf(x, !neg),
        Expr::And(xs) => {
            let parts = xs.iter().map(|x| nnf(x, neg)).collect();
            if neg {
                Expr::or(parts)
            } else {
                Expr::and(parts)
            }
        }
        Expr::Or(xs) => {
            let parts = xs.iter().map(|x| nnf(x, neg)).collect();
            if neg {
                Expr::and(parts)
            } else {
                Expr::or(parts)
            }
        }
    }
}

#[derive(Clone)]
enum BalTree {
    Leaf(Expr),
    Node { is_and: bool, left: Box<BalTree>, right: Box<BalTree>, leaves: usize },
}

impl BalTree {
    fn from_expr(e: &Expr) -> BalTree {
        match e {
            Expr::And(xs) | Expr::Or(xs) => {
                let is_and = matches!(e, Expr::And(_));
                let parts: Vec<BalTree> = xs.iter().map(BalTree::from_expr).collect();
                BalTree::combine(is_and, parts)
            }
            leaf => BalTree::Leaf(leaf.clone()),
        }
    }

    fn combine(is_and: bool, mut parts: Vec<BalTree>) -> BalTree {
        while parts.len() > 1 {
            let mut next = Vec::with_capacity(parts.len().div_ceil(2));
            let mut it = parts.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => {
                        let leaves = a.leaves() + b.leaves();
                        next.push(BalTree::Node {
                            is_and,
                            left: Box::new(a),
                            right: Box::new(b),
                            leaves,
                        });
                    }
                    None => next.push(a),
                }
            }
            parts = next;
        }
        parts.pop().unwrap_or(BalTree::Leaf(Expr::Const(is_and)))
    }

    fn leaves(&self) -> usize {
        match self {
            BalTree::Leaf(_) => 1,
            BalTree::Node { leaves, .. } => *leaves,
        }
    }

    fn to_expr(&self) -> Expr {
        match self {
            BalTree::Leaf(e) => e.clone(),
            BalTree::Node { is_and, left, right, .. } => {
                let parts = vec![left.to_expr(), right.to_expr()];
                if *is_and {
                    Expr::and(parts)
                } else {
                    Expr::or(parts)
                }
            }
        }
    }

    /// Dual tree computing the negation (valid in NNF: swap the operators,
    /// negate the leaves).
    fn negate(&self) -> BalTree {
        match self {
            BalTree::Leaf(e) => BalTree::Leaf(match e {
                Expr::Const(b) => Expr::Const(!b),
                Expr::Lit(l) => Expr::Lit(l.negated()),
                other => Expr::not(other.clone()),
            }),
            BalTree::Node { is_and, left, right, leaves } => BalTree::Node {
                is_and: !is_and,
                left: Box::new(left.negate()),
                right: Box::new(right.negate()),
                leaves: *leaves,
            },
        }
    }

    /// Replaces the node at `path` (true = left) by a constant leaf.
    fn with_const(&self, path: &[bool], value: bool) -> BalTree {
        if path.is_empty() {
            return BalTree::Leaf(Expr::Const(value));
        }
        match self {
            BalTree::Leaf(_) => unreachable!("path into a leaf"),
            BalTree::Node { is_and, left, right, .. } => {
                let (l, r) = if path[0] {
                    (Box::new(left.with_const(&path[1..], value)), right.clone())
                } else {
                    (left.clone(), Box::new(right.with_const(&path[1..], value)))
                };
                let leaves = l.leaves() + r.leaves();
                BalTree::Node { is_and: *is_and, left: l, right: r, leaves }
            }
        }
    }
}

fn balance(t: &BalTree) -> Expr {
    let total = t.leaves();
    if total <= 3 {
        return t.to_expr();
    }
    // deepest node holding at least half the leaves; its children hold fewer
    let half = total.div_ceil(2);
    let mut path = Vec::new();
    let mut cur = t;
    loop {
        match cur {
            BalTree::Node { left, .. } if left.leaves() >= half => {
                path.push(true);
                cur = left;
            }
            BalTree::Node { right, .. } if right.leaves() >= half => {
                path.push(false);
                cur = right;
            }
            _ => break,
        }
    }
    let pivot_pos = balance_node(cur);
    let pivot_neg = balance_node(&cur.negate());
    let f1 = t.with_const(&path, true);
    let f0 = t.with_const(&path, false);
    Expr::or(vec![
        Expr::and(vec![pivot_pos, balance(&f1)]),
        Expr::and(vec![pivot_neg, balance(&f0)]),
    ])
}

fn balance_node(t: &BalTree) -> Expr {
    match t {
        BalTree::Leaf(e) => e.clone(),
        BalTree::Node { is_and, left, right, .. } => {
            let parts = vec![balance(left), balance(right)];
            if *is_and {
                Expr::and(parts)
            } else {
                Expr::or(parts)
            }
        }
    }
}

/// Depth bound asserted for [`balance_formula`] outputs.
pub fn balance_depth_bound(leaf_count: usize) -> u32 {
    3 * (leaf_count.max(2) as f64).log2().ceil() as u32 + 3
}

// ---------------------------------------------------------------------------
// weight-k formula -> circuit (index decoding)

/// Output of [`weight_k_formula_to_circuit`].
#[derive(Debug, Clone)]
pub struct IndexedWeightK {
    pub circuit: Circuit,
    /// Bits per index group.
    pub bits: u32,
    pub k: u32,
}

/// Encodes "does the formula have a satisfying assignment of weight exactly
/// k" as plain satisfiability of a circuit with `k * ceil(log2 N)` inputs:
/// the inputs spell out k indices, each original input becomes a disjunction
/// over group matches, pairwise gadgets force the k indices to differ, and
/// comparator gadgets keep every index below N (an index in the padding
/// range would select a dummy always-False input).
pub fn weight_k_formula_to_circuit(phi: &Circuit, k: u32) -> Result<IndexedWeightK> {
    if k < 1 {
        return Err(Error::precondition("k must be at least 1"));
    }
    let n = phi.num_inputs;
    if n == 0 {
        return Err(Error::precondition("formula has no inputs"));
    }
    let balanced = balance_formula(phi)?;
    let bits = (n.max(2) as f64).log2().ceil() as u32;
    build_index_selector(&balanced, n, k, bits)
}

/// Shared index-decoder construction also used for general circuits by the
/// Horn module.
pub(crate) fn build_index_selector(
    base: &Circuit,
    n: u32,
    k: u32,
    bits: u32,
) -> Result<IndexedWeightK> {
    let mut c = Circuit::new(k * bits);
    // bit j (0 = most significant) of index group g
    let group_bit: Vec<Vec<GateId>> =
        (0..k).map(|g| (0..bits).map(|j| c.input(g * bits + j + 1)).collect()).collect();
    let mut not_bit: Vec<Vec<GateId>> = Vec::new();
    for g in 0..k as usize {
        let row = (0..bits as usize).map(|j| c.not(group_bit[g][j])).collect();
        not_bit.push(row);
    }
    // original inputs become disjunctions over group matches
    let mut input_sub: Vec<GateId> = Vec::with_capacity(n as usize);
    for i in 0..n {
        let mut matches = Vec::with_capacity(k as usize);
        for g in 0..k as usize {
            let lits: Vec<GateId> = (0..bits as usize)
                .map(|j| {
                    if i >> (bits as usize - 1 - j) & 1 == 1 {
                        group_bit[g][j]
                    } else {
                        not_bit[g][j]
                    }
                })
                .collect();
            matches.push(c.and_tree(&lits));
        }
        input_sub.push(c.or_tree(&matches));
    }
    // base circuit with inputs rewired
    let mut mapped = vec![0usize; base.gates.len()];
    for (id, gate) in base.gates.iter().enumerate() {
        mapped[id] = match gate.kind {
            GateKind::Input(v) => input_sub[(v - 1) as usize],
            kind => {
                let inputs = gate.inputs.iter().map(|&i| mapped[i]).collect();
                c.push(kind, inputs)
            }
        };
    }
    let mut constraints = vec![mapped[base.output]];
    // pairwise distinctness: some bit differs
    for g in 0..k as usize {
        for h in g + 1..k as usize {
            let mut diffs = Vec::with_capacity(2 * bits as usize);
            for j in 0..bits as usize {
                let a = c.and(group_bit[g][j], not_bit[h][j]);
                let b = c.and(not_bit[g][j], group_bit[h][j]);
                diffs.push(a);
                diffs.push(b);
            }
            constraints.push(c.or_tree(&diffs));
        }
    }
    // index < n comparators (omitted when n is a power of two)
    if !n.is_power_of_two() {
        for g in 0..k as usize {
            constraints.push(less_than_const(&mut c, &group_bit[g], &not_bit[g], n));
        }
    }
    let out = c.and_tree(&constraints);
    c.output = out;
    debug_assert!(c.validate().is_ok());
    Ok(IndexedWeightK { circuit: c, bits, k })
}

/// `index < bound` over big-endian bits, for a constant bound.
fn less_than_const(c: &mut Circuit, bits: &[GateId], not_bits: &[GateId], bound: u32) -> GateId {
    let w = bits.len();
    let mut cases = Vec::new();
    for j in 0..w {
        if bound >> (w - 1 - j) & 1 == 0 {
            continue;
        }
        // bits above j equal to the bound, bit j of the index is 0
        let mut conj = vec![not_bits[j]];
        for i in 0..j {
            conj.push(if bound >> (w - 1 - i) & 1 == 1 { bits[i] } else { not_bits[i] });
        }
        cases.push(c.and_tree(&conj));
    }
    c.or_tree(&cases)
}

// ---------------------------------------------------------------------------
// Max-SAT threshold circuit

/// A circuit satisfiable iff clauses of total weight at least `t` can be
/// satisfied simultaneously. The threshold is realized by a carry-save
/// popcount tree over the clause gates (weight w contributes w copies)
/// followed by a constant comparator, keeping the depth logarithmic in the
/// clause count.
pub fn maxsat_to_lindepth_circuit(cnf: &CnfInstance, t: u64) -> Result<Circuit> {
    cnf.validate()?;
    let total = cnf.total_weight();
    let n = cnf.num_vars;
    if t == 0 {
        let mut c = Circuit::new(n);
        c.output = c.push(GateKind::ConstTrue, vec![]);
        return Ok(c);
    }
    if t > total {
        let mut c = Circuit::new(n);
        c.output = c.push(GateKind::ConstFalse, vec![]);
        return Ok(c);
    }
    let mut c = Circuit::new(n);
    let input: Vec<GateId> = (1..=n).map(|v| c.input(v)).collect();
    let ninput: Vec<GateId> = (0..n as usize).map(|v| c.not(input[v])).collect();
    let mut count_bits: Vec<Vec<GateId>> = Vec::new();
    for clause in &cnf.clauses {
        let lits: Vec<GateId> = clause
            .literals
            .iter()
            .map(|l| {
                if l.positive {
                    input[(l.var - 1) as usize]
                } else {
                    ninput[(l.var - 1) as usize]
                }
            })
            .collect();
        let g = c.or_tree(&lits);
        for _ in 0..clause.weight {
            count_bits.push(vec![g]);
        }
    }
    let sum = popcount_sum(&mut c, count_bits);
    c.output = ge_const(&mut c, &sum, t);
    debug_assert!(c.validate().is_ok());
    Ok(c)
}

fn xor2(c: &mut Circuit, a: GateId, b: GateId) -> GateId {
    let na = c.not(a);
    let nb = c.not(b);
    let x = c.and(a, nb);
    let y = c.and(na, b);
    c.or(x, y)
}

/// Carry-save reduction of a list of binary numbers (LSB-first bit vectors)
/// to a single number.
pub(crate) fn popcount_sum(c: &mut Circuit, mut nums: Vec<Vec<GateId>>) -> Vec<GateId> {
    if nums.is_empty() {
        return vec![];
    }
    while nums.len() > 2 {
        let mut next = Vec::with_capacity(nums.len() / 3 * 2 + 2);
        let mut it = nums.into_iter();
        loop {
            match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), Some(z)) => {
                    let (sum, carry) = csa(c, &a, &b, &z);
                    next.push(sum);
                    next.push(carry);
                }
                (Some(a), Some(b), None) => {
                    next.push(a);
                    next.push(b);
                    break;
                }
                (Some(a), None, None) => {
                    next.push(a);
                    break;
                }
                _ => break,
            }
        }
        nums = next;
    }
    let mut it = nums.into_iter();
    let a = it.next().unwrap();
    match it.next() {
        Some(b) => ripple_add(c, &a, &b),
        None => a,
    }
}

/// One 3:2 compressor level: per-bit sum and shifted carry.
fn csa(c: &mut Circuit, a: &[GateId], b: &[GateId], z: &[GateId]) -> (Vec<GateId>, Vec<GateId>) {
    let w = a.len().max(b.len()).max(z.len());
    let mut sum = Vec::with_capacity(w);
    let mut carries: Vec<(usize, GateId)> = Vec::new();
    for i in 0..w {
        let bits: Vec<GateId> = [a.get(i), b.get(i), z.get(i)]
            .into_iter()
            .flatten()
            .copied()
            .collect();
        match bits.as_slice() {
            [x] => sum.push(*x),
            [x, y] => {
                sum.push(xor2(c, *x, *y));
                carries.push((i + 1, c.and(*x, *y)));
            }
            [x, y, v] => {
                let xy = xor2(c, *x, *y);
                sum.push(xor2(c, xy, *v));
                let t1 = c.and(*x, *y);
                let t2 = c.and(*x, *v);
                let t3 = c.and(*y, *v);
                carries.push((i + 1, c.or_tree(&[t1, t2, t3])));
            }
            _ => unreachable!(),
        }
    }
    let carry_width = carries.iter().map(|&(i, _)| i + 1).max().unwrap_or(0);
    let mut carry_bits = Vec::with_capacity(carry_width);
    for i in 0..carry_width {
        match carries.iter().find(|&&(j, _)| j == i) {
            Some(&(_, g)) => carry_bits.push(g),
            None => carry_bits.push(c.push(GateKind::ConstFalse, vec![])),
        }
    }
    (sum, carry_bits)
}

fn ripple_add(c: &mut Circuit, a: &[GateId], b: &[GateId]) -> Vec<GateId> {
    let w = a.len().max(b.len());
    let mut out = Vec::with_capacity(w + 1);
    let mut carry: Option<GateId> = None;
    for i in 0..w {
        let mut bits: Vec<GateId> = Vec::new();
        bits.extend(a.get(i));
        bits.extend(b.get(i));
        bits.extend(carry);
        match bits.as_slice() {
            [] => {
                out.push(c.push(GateKind::ConstFalse, vec![]));
                carry = None;
            }
            [x] => {
                out.push(*x);
                carry = None;
            }
            [x, y] => {
                out.push(xor2(c, *x, *y));
                carry = Some(c.and(*x, *y));
            }
            [x, y, z] => {
                let xy = xor2(c, *x, *y);
                out.push(xor2(c, xy, *z));
                let t1 = c.and(*x, *y);
                let t2 = c.and(*x, *z);
                let t3 = c.and(*y, *z);
                carry = Some(c.or_tree(&[t1, t2, t3]));
            }
            _ => unreachable!(),
        }
    }
    if let Some(g) = carry {
        out.push(g);
    }
    out
}

/// `sum >= t` for an LSB-first bit vector and a constant.
pub(crate) fn ge_const(c: &mut Circuit, sum: &[GateId], t: u64) -> GateId {
    let w = sum.len();
    if w >= 64 || t >= 1u64 << w {
        return c.push(GateKind::ConstFalse, vec![]);
    }
    let not_sum: Vec<GateId> = sum.iter().map(|&g| c.not(g)).collect();
    let t_bit = |i: usize| t >> i & 1 == 1;
    let mut cases = Vec::new();
    // strictly greater at position j with equality above
    for j in 0..w {
        if t_bit(j) {
            continue;
        }
        let mut conj = vec![sum[j]];
        for i in j + 1..w {
            conj.push(if t_bit(i) { sum[i] } else { not_sum[i] });
        }
        cases.push(c.and_tree(&conj));
    }
    // exactly equal
    let eq: Vec<GateId> = (0..w).map(|i| if t_bit(i) { sum[i] } else { not_sum[i] }).collect();
    cases.push(c.and_tree(&eq));
    c.or_tree(&cases)
}
