use crate::instance::{Assignment, CnfInstance, Literal};
use crate::{Error, Result};

/// Polynomial 2-SAT via the implication graph and strongly connected
/// components. Rejects clauses with more than 2 literals.
///
/// Tautological clauses are always satisfied and add no implications. An
/// empty clause makes the formula unsatisfiable.
pub fn solve_2sat_poly(cnf: &CnfInstance) -> Result<Option<Assignment>> {
    let n = cnf.num_vars as usize;
    // node 2(v-1) = positive literal of v, 2(v-1)+1 = negative
    let node = |l: Literal| -> usize {
        2 * (l.var as usize - 1) + if l.positive { 0 } else { 1 }
    };
    let mut adj = vec![Vec::new(); 2 * n];
    for c in &cnf.clauses {
        if c.len() > 2 {
            return Err(Error::precondition(format!(
                "2-SAT solver got a clause of arity {}",
                c.len()
            )));
        }
        if c.is_tautology() {
            continue;
        }
        match c.literals.as_slice() {
            [] => return Ok(None),
            [l] => adj[node(l.negated())].push(node(*l)),
            [l1, l2] => {
                adj[node(l1.negated())].push(node(*l2));
                adj[node(l2.negated())].push(node(*l1));
            }
            _ => unreachable!(),
        }
    }
    let comp = scc(&adj);
    let mut values = Vec::with_capacity(n);
    for v in 0..n {
        let (p, q) = (comp[2 * v], comp[2 * v + 1]);
        if p == q {
            return Ok(None);
        }
        // Tarjan numbers components in reverse topological order, so the
        // smaller index is closer to the sinks of the condensation; choosing
        // the sink-side literal is implication-closed.
        values.push(p < q);
    }
    let a = Assignment::new(values);
    debug_assert!(cnf.eval(&a));
    Ok(Some(a))
}

/// Iterative Tarjan SCC; returns the component index of each node, numbered
/// in reverse topological order of the condensation.
fn scc(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSET; n];
    let mut low = vec![UNSET; n];
    let mut comp = vec![UNSET; n];
    let mut stack = Vec::new();
    let mut on_stack = vec![false; n];
    let mut next_index = 0;
    let mut next_comp = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for start in 0..n {
        if index[start] != UNSET {
            continue;
        }
        call.push((start, 0));
        while let Some(&mut (v, ref mut ei)) = call.last_mut() {
            if *ei == 0 {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if *ei < adj[v].len() {
                let w = adj[v][*ei];
                *ei += 1;
                if index[w] == UNSET {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                if low[v] == index[v] {
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
                call.pop();
                if let Some(&mut (u, _)) = call.last_mut() {
                    low[u] = low[u].min(low[v]);
                }
            }
        }
    }
    comp
}

/// Polynomial Horn-SAT: start from all-False and set variables to True only
/// when forced, for at most `n` rounds. Returns the minimal-True-set model or
/// `None`. Rejects clauses with more than one positive literal.
pub fn solve_horn_poly(cnf: &CnfInstance) -> Result<Option<Assignment>> {
    for c in &cnf.clauses {
        if c.literals.iter().filter(|l| l.positive).count() > 1 {
            return Err(Error::precondition("Horn solver got a non-Horn clause"));
        }
    }
    let mut a = Assignment::all_false(cnf.num_vars);
    loop {
        let mut changed = false;
        for c in &cnf.clauses {
            if c.eval(&a) {
                continue;
            }
            // Unsatisfied clause: every literal false. A positive literal is
            // forced; none means a contradiction unless some negative
            // literal can still flip (it cannot: we only ever raise values).
            match c.literals.iter().find(|l| l.positive) {
                Some(l) => {
                    a = a.with(l.var, true);
                    changed = true;
                }
                None => return Ok(None),
            }
        }
        if !changed {
            break;
        }
    }
    debug_assert!(cnf.eval(&a));
    Ok(Some(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Clause;
    use crate::oracles::{solve_sat_bruteforce, OracleCaps};
    use rand::{Rng, SeedableRng};

    fn cnf(n: u32, clauses: &[&[i64]]) -> CnfInstance {
        CnfInstance::new(n, clauses.iter().map(|c| Clause::from_dimacs(c).unwrap()).collect())
    }

    #[test]
    fn all_four_binary_clauses_unsat() {
        let f = cnf(2, &[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]);
        assert!(solve_2sat_poly(&f).unwrap().is_none());
    }

    #[test]
    fn unit_clause_forces_value() {
        let a = solve_2sat_poly(&cnf(1, &[&[1]])).unwrap().unwrap();
        assert!(a.get(1));
    }

    #[test]
    fn arity_three_rejected() {
        assert!(solve_2sat_poly(&cnf(3, &[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn two_sat_agrees_with_bruteforce_on_random_instances() {
        let caps = OracleCaps::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=16u32);
            let m = rng.gen_range(0..=(2 * n) as usize);
            let mut clauses = Vec::new();
            for _ in 0..m {
                let len = rng.gen_range(1..=2.min(n));
                let mut lits: Vec<Literal> = Vec::new();
                while lits.len() < len as usize {
                    let l = Literal { var: rng.gen_range(1..=n), positive: rng.gen() };
                    if !lits.contains(&l) {
                        lits.push(l);
                    }
                }
                clauses.push(Clause::new(lits));
            }
            let f = CnfInstance::new(n, clauses);
            f.validate().unwrap();
            let fast = solve_2sat_poly(&f).unwrap();
            let slow = solve_sat_bruteforce(&f, &caps).unwrap();
            assert_eq!(fast.is_some(), slow.is_some());
            if let Some(a) = fast {
                assert!(f.eval(&a));
            }
        }
    }

    #[test]
    fn horn_propagation_chains() {
        // (x) ^ (~x v y) forces both
        let a = solve_horn_poly(&cnf(2, &[&[1], &[-1, 2]])).unwrap().unwrap();
        assert!(a.get(1) && a.get(2));
        // (~x) alone: minimal model is all-False
        let a = solve_horn_poly(&cnf(1, &[&[-1]])).unwrap().unwrap();
        assert!(!a.get(1));
    }

    #[test]
    fn horn_agrees_with_bruteforce_on_random_instances() {
        let caps = OracleCaps::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=12u32);
            let m = rng.gen_range(0..=(2 * n) as usize);
            let mut clauses = Vec::new();
            for _ in 0..m {
                let mut vars: Vec<u32> = (1..=n).collect();
                for i in (1..vars.len()).rev() {
                    vars.swap(i, rng.gen_range(0..=i));
                }
                let len = rng.gen_range(1..=3.min(n as usize));
                let mut lits: Vec<Literal> =
                    vars[..len].iter().map(|&v| Literal::neg(v)).collect();
                if rng.gen_bool(0.7) {
                    lits[0] = lits[0].negated();
                }
                clauses.push(Clause::new(lits));
            }
            let f = CnfInstance::new(n, clauses);
            let fast = solve_horn_poly(&f).unwrap();
            let slow = solve_sat_bruteforce(&f, &caps).unwrap();
            assert_eq!(fast.is_some(), slow.is_some());
            if let Some(a) = fast {
                assert!(f.eval(&a));
                // minimality: no model has a strictly smaller True set
                for b in Assignment::enumerate(n) {
                    if f.eval(&b) {
                        assert!(
                            a.true_vars().iter().all(|v| b.get(*v)) || b.weight() >= a.weight()
                        );
                    }
                }
            }
        }
    }
}
