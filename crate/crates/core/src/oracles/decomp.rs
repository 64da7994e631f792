use super::OracleCaps;
use crate::instance::{
    primal_graph, verify_path_decomposition, Assignment, CnfInstance, StructureCertificate, Var,
};
use crate::{Error, Result};
use std::collections::BTreeSet;

/// Decides satisfiability of a CNF carrying a modulator plus path
/// decomposition certificate by enumerating modulator assignments and
/// running a forward DP over the bags for each.
///
/// This is independent of the reductions that emit such certificates: it
/// only uses the decomposition's defining property (every clause's
/// non-modulator variables sit inside some bag, verified before solving).
pub fn solve_sat_bag_dp(cnf: &CnfInstance, caps: &OracleCaps) -> Result<Option<Assignment>> {
    let Some(StructureCertificate::PathDecomposition { modulator, bags, .. }) = &cnf.certificate
    else {
        return Err(Error::precondition("expected a path decomposition certificate"));
    };
    if !verify_path_decomposition(&primal_graph(cnf), cnf.certificate.as_ref().unwrap()) {
        return Err(Error::InvalidCertificate("path decomposition does not verify".into()));
    }
    if modulator.len() as u32 > caps.ann_vars {
        return Err(Error::TooLarge {
            what: "modulator assignments",
            actual: modulator.len() as u64,
            cap: caps.ann_vars as u64,
        });
    }
    let bags: Vec<Vec<Var>> = if bags.is_empty() {
        vec![vec![]]
    } else {
        bags.iter().map(|b| b.iter().copied().collect()).collect()
    };
    // assign each clause to a bag containing its non-modulator variables
    let mut bag_clauses: Vec<Vec<usize>> = vec![Vec::new(); bags.len()];
    let mut modulator_only: Vec<usize> = Vec::new();
    for (ci, clause) in cnf.clauses.iter().enumerate() {
        let outside: BTreeSet<Var> =
            clause.vars().into_iter().filter(|v| !modulator.contains(v)).collect();
        if outside.is_empty() {
            modulator_only.push(ci);
            continue;
        }
        let host = bags
            .iter()
            .position(|b| outside.iter().all(|v| b.contains(v)))
            .ok_or_else(|| {
                Error::InvalidCertificate("clause variables not contained in any bag".into())
            })?;
        bag_clauses[host].push(ci);
    }
    let mod_vars: Vec<Var> = modulator.iter().copied().collect();
    for rank in 0..1u64 << mod_vars.len() {
        let mod_assignment: Vec<(Var, bool)> = mod_vars
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, rank >> (mod_vars.len() - 1 - i) & 1 == 1))
            .collect();
        if let Some(solution) = dp_over_bags(cnf, &bags, &bag_clauses, &modulator_only, &mod_assignment)
        {
            return Ok(Some(solution));
        }
    }
    Ok(None)
}

fn dp_over_bags(
    cnf: &CnfInstance,
    bags: &[Vec<Var>],
    bag_clauses: &[Vec<usize>],
    modulator_only: &[usize],
    mod_assignment: &[(Var, bool)],
) -> Option<Assignment> {
    let lookup = |bag: &[Var], mask: u64, v: Var| -> Option<bool> {
        bag.iter()
            .position(|&b| b == v)
            .map(|i| mask >> i & 1 == 1)
            .or_else(|| mod_assignment.iter().find(|(m, _)| *m == v).map(|(_, b)| *b))
    };
    // modulator-only clauses must hold outright
    for &ci in modulator_only {
        let ok = cnf.clauses[ci]
            .literals
            .iter()
            .any(|l| lookup(&[], 0, l.var) == Some(l.positive));
        if !ok {
            return None;
        }
    }
    let clause_ok = |bag: &[Var], mask: u64, ci: usize| -> bool {
        cnf.clauses[ci]
            .literals
            .iter()
            .any(|l| lookup(bag, mask, l.var) == Some(l.positive))
    };
    // reachable[i] = set of bag-i assignments consistent so far, with a
    // predecessor pointer for witness reconstruction
    let mut reachable: Vec<Vec<(u64, Option<u64>)>> = Vec::with_capacity(bags.len());
    let first = &bags[0];
    let mut layer0 = Vec::new();
    for mask in 0..1u64 << first.len() {
        if bag_clauses[0].iter().all(|&ci| clause_ok(first, mask, ci)) {
            layer0.push((mask, None));
        }
    }
    reachable.push(layer0);
    for i in 1..bags.len() {
        let prev_bag = &bags[i - 1];
        let bag = &bags[i];
        let shared: Vec<(usize, usize)> = bag
            .iter()
            .enumerate()
            .filter_map(|(bi, v)| prev_bag.iter().position(|p| p == v).map(|pi| (bi, pi)))
            .collect();
        let mut layer = Vec::new();
        for mask in 0..1u64 << bag.len() {
            if !bag_clauses[i].iter().all(|&ci| clause_ok(bag, mask, ci)) {
                continue;
            }
            let pred = reachable[i - 1].iter().find(|&&(pmask, _)| {
                shared.iter().all(|&(bi, pi)| mask >> bi & 1 == pmask >> pi & 1)
            });
            if let Some(&(pmask, _)) = pred {
                layer.push((mask, Some(pmask)));
            }
        }
        if layer.is_empty() {
            return None;
        }
        reachable.push(layer);
    }
    // reconstruct one witness
    let mut values = vec![false; cnf.num_vars as usize];
    for &(v, b) in mod_assignment {
        values[(v - 1) as usize] = b;
    }
    let mut chosen = reachable.last().unwrap().first().copied()?;
    for i in (0..bags.len()).rev() {
        let (mask, pred) = chosen;
        for (bi, &v) in bags[i].iter().enumerate() {
            values[(v - 1) as usize] = mask >> bi & 1 == 1;
        }
        if i > 0 {
            let pmask = pred.expect("interior layers have predecessors");
            chosen = *reachable[i - 1]
                .iter()
                .find(|&&(m, _)| m == pmask)
                .expect("predecessor recorded");
        }
    }
    let a = Assignment::new(values);
    debug_assert!(cnf.eval(&a));
    Some(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen::{gen_planted, GenParams, PlantedKind};
    use crate::harness::Instance;
    use crate::oracles::solve_sat_bruteforce;

    #[test]
    fn bag_dp_agrees_with_bruteforce_on_planted_instances() {
        let caps = OracleCaps::default();
        let params = GenParams {
            num_vars: 7,
            modulator_size: 3,
            clauses: 10,
            width: 2,
            ..GenParams::default()
        };
        for seed in 0..150 {
            let Instance::Cnf(f) =
                gen_planted(PlantedKind::CnfPwModulator, &params, seed).unwrap()
            else {
                unreachable!()
            };
            let dp = solve_sat_bag_dp(&f, &caps).unwrap();
            let brute = solve_sat_bruteforce(&f, &caps).unwrap();
            assert_eq!(dp.is_some(), brute.is_some(), "seed {seed}");
            if let Some(a) = dp {
                assert!(f.eval(&a));
            }
        }
    }
}

/// Decides q-colorability of a graph with a modulator + path decomposition
/// certificate: enumerates colorings of the modulator, then runs a forward
/// DP over bag colorings. `pinned` fixes colors of selected vertices; the
/// caller must only pin sets whose colors are forced up to symmetry (a
/// clique), so satisfiability is unaffected.
pub fn solve_qcoloring_bag_dp(
    graph: &crate::instance::SimpleGraph,
    cert: &StructureCertificate,
    q: u32,
    pinned: &[(u32, u32)],
    caps: &OracleCaps,
) -> Result<bool> {
    let StructureCertificate::PathDecomposition { modulator, bags, .. } = cert else {
        return Err(Error::precondition("expected a path decomposition certificate"));
    };
    if !crate::instance::verify_path_decomposition(graph, cert) {
        return Err(Error::InvalidCertificate("path decomposition does not verify".into()));
    }
    let mod_vars: Vec<u32> =
        modulator.iter().copied().filter(|v| !pinned.iter().any(|(p, _)| p == v)).collect();
    let space = (q as u64).saturating_pow(mod_vars.len() as u32);
    if space > caps.csp_space {
        return Err(Error::TooLarge {
            what: "modulator colorings",
            actual: space,
            cap: caps.csp_space,
        });
    }
    let pinned_of = |v: u32| pinned.iter().find(|(p, _)| *p == v).map(|&(_, c)| c);
    let bags: Vec<Vec<u32>> = if bags.is_empty() {
        vec![vec![]]
    } else {
        bags.iter()
            .map(|b| {
                b.iter().copied().filter(|v| pinned_of(*v).is_none()).collect::<Vec<u32>>()
            })
            .collect()
    };
    // assign each edge to the place it gets checked
    let mut fixed_fixed: Vec<(u32, u32)> = Vec::new();
    let mut bag_edges: Vec<Vec<(u32, u32)>> = vec![Vec::new(); bags.len()];
    for &(u, v, _) in &graph.edges {
        let u_fixed = pinned_of(u).is_some() || modulator.contains(&u);
        let v_fixed = pinned_of(v).is_some() || modulator.contains(&v);
        if u_fixed && v_fixed {
            fixed_fixed.push((u, v));
            continue;
        }
        let host = bags
            .iter()
            .position(|b| {
                (u_fixed || b.contains(&u)) && (v_fixed || b.contains(&v))
            })
            .ok_or_else(|| Error::InvalidCertificate("edge not covered by any bag".into()))?;
        bag_edges[host].push((u, v));
    }
    for rank in 0..space {
        // colors of the unpinned modulator vertices
        let mut r = rank;
        let mod_colors: Vec<u32> = mod_vars
            .iter()
            .map(|_| {
                let c = (r % q as u64) as u32 + 1;
                r /= q as u64;
                c
            })
            .collect();
        let fixed_color = |v: u32| -> Option<u32> {
            pinned_of(v).or_else(|| {
                mod_vars.iter().position(|&x| x == v).map(|i| mod_colors[i])
            })
        };
        if fixed_fixed.iter().any(|&(u, v)| fixed_color(u) == fixed_color(v)) {
            continue;
        }
        if color_dp(q, &bags, &bag_edges, &fixed_color) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn color_dp(
    q: u32,
    bags: &[Vec<u32>],
    bag_edges: &[Vec<(u32, u32)>],
    fixed_color: &dyn Fn(u32) -> Option<u32>,
) -> bool {
    use std::collections::HashSet;
    // states are full colorings of the current bag; each new bag extends the
    // distinct projections of the previous layer onto the shared variables,
    // so the work per bag is (projections) x q^(fresh variables)
    let mut prev_bag: &[u32] = &[];
    let mut prev_states: HashSet<Vec<u32>> = HashSet::new();
    prev_states.insert(vec![]);
    for (i, bag) in bags.iter().enumerate() {
        let shared: Vec<(usize, usize)> = bag
            .iter()
            .enumerate()
            .filter_map(|(bi, v)| prev_bag.iter().position(|p| p == v).map(|pi| (bi, pi)))
            .collect();
        let fresh: Vec<usize> = bag
            .iter()
            .enumerate()
            .filter(|(_, v)| !prev_bag.contains(v))
            .map(|(bi, _)| bi)
            .collect();
        let projections: HashSet<Vec<u32>> = prev_states
            .iter()
            .map(|st| shared.iter().map(|&(_, pi)| st[pi]).collect())
            .collect();
        let mut states: HashSet<Vec<u32>> = HashSet::new();
        let fresh_space = (q as u64).saturating_pow(fresh.len() as u32);
        for proj in &projections {
            for code in 0..fresh_space {
                let mut colors = vec![0u32; bag.len()];
                for (slot, &(bi, _)) in shared.iter().enumerate() {
                    colors[bi] = proj[slot];
                }
                let mut c = code;
                for &bi in &fresh {
                    colors[bi] = (c % q as u64) as u32 + 1;
                    c /= q as u64;
                }
                let color = |v: u32| -> Option<u32> {
                    bag.iter()
                        .position(|&x| x == v)
                        .map(|idx| colors[idx])
                        .or_else(|| fixed_color(v))
                };
                if bag_edges[i].iter().all(|&(u, v)| color(u) != color(v)) {
                    states.insert(colors);
                }
            }
        }
        if states.is_empty() {
            return false;
        }
        prev_bag = bag;
        prev_states = states;
    }
    true
}
