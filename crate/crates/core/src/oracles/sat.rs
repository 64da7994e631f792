use super::{eval_circuit, OracleCaps};
use crate::instance::{Assignment, Circuit, CnfInstance};
use crate::{Error, Result};

/// Anything a truth assignment can be checked against.
pub trait Evaluate {
    fn var_count(&self) -> u32;
    fn accepts(&self, a: &Assignment) -> bool;
}

impl Evaluate for CnfInstance {
    fn var_count(&self) -> u32 {
        self.num_vars
    }

    fn accepts(&self, a: &Assignment) -> bool {
        self.eval(a)
    }
}

impl Evaluate for Circuit {
    fn var_count(&self) -> u32 {
        self.num_inputs
    }

    fn accepts(&self, a: &Assignment) -> bool {
        eval_circuit(self, a)
    }
}

fn check_cap(n: u32, cap: u32) -> Result<()> {
    if n > cap {
        return Err(Error::TooLarge { what: "brute-force variables", actual: n as u64, cap: cap as u64 });
    }
    Ok(())
}

/// Exhaustive satisfiability: the lexicographically first satisfying
/// assignment, or `None`.
pub fn solve_sat_bruteforce(cnf: &CnfInstance, caps: &OracleCaps) -> Result<Option<Assignment>> {
    check_cap(cnf.num_vars, caps.sat_vars)?;
    Ok(Assignment::enumerate(cnf.num_vars).find(|a| cnf.eval(a)))
}

/// Exhaustive Max-SAT: the lexicographically first assignment maximizing the
/// total weight of satisfied clauses, together with that weight.
pub fn solve_maxsat_bruteforce(
    cnf: &CnfInstance,
    caps: &OracleCaps,
) -> Result<(Assignment, u64)> {
    check_cap(cnf.num_vars, caps.sat_vars)?;
    let mut best: Option<(Assignment, u64)> = None;
    for a in Assignment::enumerate(cnf.num_vars) {
        let w = cnf.satisfied_weight(&a);
        if best.as_ref().map_or(true, |(_, bw)| w > *bw) {
            best = Some((a, w));
        }
    }
    Ok(best.expect("at least the empty assignment exists"))
}

/// Exhaustive search over assignments of weight exactly `k`. Witnesses are
/// enumerated by the set of True variables in lexicographic order, so
/// `{x1}` precedes `{x2}`. Rejects `k > n`.
pub fn solve_weight_k_sat<T: Evaluate>(
    target: &T,
    k: u32,
    caps: &OracleCaps,
) -> Result<Option<Assignment>> {
    let n = target.var_count();
    check_cap(n, caps.sat_vars)?;
    if k > n {
        return Err(Error::precondition(format!("weight {k} exceeds variable count {n}")));
    }
    let k = k as usize;
    let mut combo: Vec<u32> = (1..=k as u32).collect();
    loop {
        let mut a = Assignment::all_false(n);
        for &v in &combo {
            a = a.with(v, true);
        }
        if target.accepts(&a) {
            return Ok(Some(a));
        }
        // next k-combination of {1..n} in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if combo[i] < n - (k - 1 - i) as u32 {
                combo[i] += 1;
                for j in i + 1..k {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Clause;

    fn cnf(n: u32, clauses: &[&[i64]]) -> CnfInstance {
        CnfInstance::new(n, clauses.iter().map(|c| Clause::from_dimacs(c).unwrap()).collect())
    }

    #[test]
    fn contradiction_is_unsat() {
        let caps = OracleCaps::default();
        assert!(solve_sat_bruteforce(&cnf(1, &[&[1], &[-1]]), &caps).unwrap().is_none());
    }

    #[test]
    fn empty_formula_yields_all_false() {
        let caps = OracleCaps::default();
        let a = solve_sat_bruteforce(&cnf(3, &[]), &caps).unwrap().unwrap();
        assert_eq!(a.values(), &[false, false, false]);
    }

    #[test]
    fn cap_refusal_is_typed() {
        let caps = OracleCaps { sat_vars: 2, ..OracleCaps::default() };
        let err = solve_sat_bruteforce(&cnf(3, &[]), &caps).unwrap_err();
        assert!(matches!(err, Error::TooLarge { .. }));
    }

    #[test]
    fn maxsat_on_unit_contradiction_is_one() {
        let caps = OracleCaps::default();
        let (_, w) = solve_maxsat_bruteforce(&cnf(1, &[&[1], &[-1]]), &caps).unwrap();
        assert_eq!(w, 1);
    }

    #[test]
    fn maxsat_all_positive_clauses_all_true_optimal() {
        let caps = OracleCaps::default();
        let (a, w) = solve_maxsat_bruteforce(&cnf(3, &[&[1], &[2], &[3], &[1, 2]]), &caps).unwrap();
        assert_eq!(w, 4);
        assert_eq!(a.values(), &[true, true, true]);
    }

    #[test]
    fn maxsat_weight_equals_duplication() {
        use rand::{Rng, SeedableRng};
        let caps = OracleCaps::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(2..=5u32);
            let mut weighted = Vec::new();
            let mut duplicated = Vec::new();
            for _ in 0..rng.gen_range(1..=5) {
                let len = rng.gen_range(1..=3.min(n));
                let mut lits = Vec::new();
                let mut used = std::collections::BTreeSet::new();
                for _ in 0..len {
                    let v = rng.gen_range(1..=n);
                    if used.insert(v) {
                        lits.push(if rng.gen() {
                            crate::instance::Literal::pos(v)
                        } else {
                            crate::instance::Literal::neg(v)
                        });
                    }
                }
                let w = rng.gen_range(1..=3u64);
                weighted.push(Clause::with_weight(lits.clone(), w));
                for _ in 0..w {
                    duplicated.push(Clause::new(lits.clone()));
                }
            }
            let a = CnfInstance::new(n, weighted);
            let b = CnfInstance::new(n, duplicated);
            let (_, wa) = solve_maxsat_bruteforce(&a, &caps).unwrap();
            let (_, wb) = solve_maxsat_bruteforce(&b, &caps).unwrap();
            assert_eq!(wa, wb);
        }
    }

    #[test]
    fn weight_k_basics() {
        let caps = OracleCaps::default();
        // x1 v x2, k = 1: first witness by true-set order is {x1}.
        let f = cnf(2, &[&[1, 2]]);
        let a = solve_weight_k_sat(&f, 1, &caps).unwrap().unwrap();
        assert_eq!(a.values(), &[true, false]);
        // x1 ^ x2, k = 1: none.
        let g = cnf(2, &[&[1], &[2]]);
        assert!(solve_weight_k_sat(&g, 1, &caps).unwrap().is_none());
        assert!(solve_weight_k_sat(&g, 3, &caps).is_err());
    }

    #[test]
    fn weight_k_agrees_with_filtered_enumeration() {
        use rand::{Rng, SeedableRng};
        let caps = OracleCaps::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..60 {
            let n = rng.gen_range(1..=6u32);
            let m = rng.gen_range(1..=6);
            let mut clauses = Vec::new();
            for _ in 0..m {
                let len = rng.gen_range(1..=n);
                let mut used = std::collections::BTreeSet::new();
                let mut lits = Vec::new();
                for _ in 0..len {
                    let v = rng.gen_range(1..=n);
                    if used.insert(v) {
                        lits.push(if rng.gen() {
                            crate::instance::Literal::pos(v)
                        } else {
                            crate::instance::Literal::neg(v)
                        });
                    }
                }
                clauses.push(Clause::new(lits));
            }
            let f = CnfInstance::new(n, clauses);
            for k in 0..=n {
                let fast = solve_weight_k_sat(&f, k, &caps).unwrap();
                let filtered = Assignment::enumerate(n).find(|a| a.weight() == k && f.eval(a));
                assert_eq!(fast.is_some(), filtered.is_some());
                if let Some(a) = fast {
                    assert_eq!(a.weight(), k);
                    assert!(f.eval(&a));
                }
            }
        }
    }
}
