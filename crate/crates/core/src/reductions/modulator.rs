//! Modulator elimination: resolving away tree-depth forests, collapsing hub
//! components for Max-SAT, and arity reduction with certificate surgery.

use crate::instance::{
    primal_graph, Clause, CnfInstance, Literal, SimpleGraph, StructureCertificate, Var,
};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// Safety valve for resolution blowup; planted suite instances stay far
/// below this.
const MAX_CLAUSES: usize = 2_000_000;

fn canonical(mut lits: Vec<Literal>) -> Vec<Literal> {
    lits.sort_unstable();
    lits.dedup();
    lits
}

fn is_tautology_sorted(lits: &[Literal]) -> bool {
    lits.windows(2).any(|w| w[0].var == w[1].var && w[0].positive != w[1].positive)
}

/// Exhaustively resolves over variable `x`: adds every resolvent of a clause
/// containing `x` with a clause containing `¬x`, then removes all clauses
/// mentioning `x`.
///
/// Tautological resolvents are dropped and identical clauses are merged (the
/// output is treated as unweighted, weight 1 everywhere). Satisfiability is
/// preserved. Any attached certificate is dropped; callers that maintain one
/// re-attach it.
pub fn exhaustive_resolve(cnf: &CnfInstance, x: Var) -> Result<CnfInstance> {
    let mut kept: BTreeSet<Vec<Literal>> = BTreeSet::new();
    let mut pos: Vec<Vec<Literal>> = Vec::new();
    let mut neg: Vec<Vec<Literal>> = Vec::new();
    for c in &cnf.clauses {
        let lits = canonical(c.literals.clone());
        let has_pos = lits.contains(&Literal::pos(x));
        let has_neg = lits.contains(&Literal::neg(x));
        match (has_pos, has_neg) {
            (false, false) => {
                kept.insert(lits);
            }
            (true, true) => {} // tautological in x: always satisfied, drop
            (true, false) => pos.push(lits.into_iter().filter(|l| l.var != x).collect()),
            (false, true) => neg.push(lits.into_iter().filter(|l| l.var != x).collect()),
        }
    }
    for p in &pos {
        for n in &neg {
            let mut r = p.clone();
            r.extend(n.iter().copied());
            let r = canonical(r);
            if !is_tautology_sorted(&r) {
                kept.insert(r);
            }
            if kept.len() > MAX_CLAUSES {
                return Err(Error::TooLarge {
                    what: "resolution clauses",
                    actual: kept.len() as u64,
                    cap: MAX_CLAUSES as u64,
                });
            }
        }
    }
    Ok(CnfInstance::new(cnf.num_vars, kept.into_iter().map(Clause::new).collect()))
}

/// Eliminates every non-modulator variable of a tree-depth-certified formula
/// by exhaustive resolution, deepest forest level first.
///
/// The output mentions only modulator variables, is equisatisfiable with the
/// input, and obeys the documented bounds: arity at most `2^c * k` and
/// clause count at most `m^(2^c)` (asserted by the harness for `m >= 4`).
pub fn eliminate_treedepth_modulator(cnf: &CnfInstance) -> Result<CnfInstance> {
    let Some(cert @ StructureCertificate::TreeDepthForest { parent, .. }) = &cnf.certificate
    else {
        return Err(Error::precondition("expected a tree-depth forest certificate"));
    };
    if !cnf.verify_certificate() {
        return Err(Error::InvalidCertificate("tree-depth forest does not verify".into()));
    }
    // depth level of every forest vertex (roots at level 1)
    let mut level: BTreeMap<Var, u32> = BTreeMap::new();
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
    for &v in parent.keys() {
        level_of(v, parent, &mut level);
    }
    let max_level = level.values().copied().max().unwrap_or(0);
    let mut current = cnf.clone();
    for l in (1..=max_level).rev() {
        let mut layer: Vec<Var> =
            level.iter().filter(|(_, &lv)| lv == l).map(|(&v, _)| v).collect();
        layer.sort_unstable();
        for v in layer {
            current = exhaustive_resolve(&current, v)?;
        }
    }
    // The input forest still covers the (now clause-free) remainder.
    current.certificate = Some(cert.clone());
    debug_assert!(current.verify_certificate());
    Ok(current)
}

/// Turns a verified hub certificate into a tree-depth forest: each component
/// is ordered into a rooted path, so every intra-component edge joins an
/// ancestor-descendant pair and the depth is the largest component size.
pub fn hub_to_treedepth_cert(
    graph: &SimpleGraph,
    cert: &StructureCertificate,
) -> Result<StructureCertificate> {
    let StructureCertificate::Hub { modulator, .. } = cert else {
        return Err(Error::precondition("expected a hub certificate"));
    };
    if !crate::instance::verify_hub(graph, cert) {
        return Err(Error::InvalidCertificate("hub does not verify".into()));
    }
    let alive: BTreeSet<u32> =
        (1..=graph.vertex_count).filter(|v| !modulator.contains(v)).collect();
    let mut parent: BTreeMap<Var, Option<Var>> = BTreeMap::new();
    let mut depth = 0;
    for comp in graph.components_among(&alive) {
        depth = depth.max(comp.len() as u32);
        parent.insert(comp[0], None);
        for w in comp.windows(2) {
            parent.insert(w[1], Some(w[0]));
        }
    }
    let out = StructureCertificate::TreeDepthForest {
        modulator: modulator.clone(),
        parent,
        depth,
    };
    debug_assert!(crate::instance::verify_tree_depth_forest(graph, &out));
    Ok(out)
}

/// Result of hub elimination for Max-SAT.
#[derive(Debug, Clone)]
pub struct HubMaxsatElimination {
    pub cnf: CnfInstance,
    /// Signed correction: `maxsat(output) + target_offset = maxsat(input)`.
    pub target_offset: i64,
    /// Fresh variables appended after the input's range as dummy hub
    /// neighbors, per padded component.
    pub dummy_neighbors: Vec<Var>,
    /// Virtual component padding (counts only; padded component variables
    /// appear in no clause and are immediately eliminated).
    pub dummy_component_vars: u64,
}

/// Removes every hub component of a weighted Max-SAT instance, replacing its
/// clauses by one clause per neighborhood assignment `s`, falsified exactly
/// by `s`, of weight `sum of w_{s'} over s' != s`.
///
/// Components are padded to exactly `delta` neighbors with fresh dummy
/// variables; under any assignment the new clauses contribute
/// `w_s + (2^delta - 2) * W` where `W = sum of w_{s'}`, so the optimum shifts
/// by a computable constant. With `delta = 0` the per-component shift
/// `-(2^0 - 2) * W = +W` simply folds the component's best weight into the
/// offset (its would-be clause has weight 0 and is skipped).
pub fn eliminate_hub_maxsat(cnf: &CnfInstance) -> Result<HubMaxsatElimination> {
    let Some(StructureCertificate::Hub { modulator, sigma, delta }) = &cnf.certificate else {
        return Err(Error::precondition("expected a hub certificate"));
    };
    if !cnf.verify_certificate() {
        return Err(Error::InvalidCertificate("hub does not verify".into()));
    }
    let graph = primal_graph(cnf);
    let alive: BTreeSet<u32> =
        (1..=cnf.num_vars).filter(|v| !modulator.contains(v)).collect();
    let components = graph.components_among(&alive);
    let adj = graph.adjacency();

    let mut clauses: Vec<Clause> = Vec::new();
    let mut used = vec![false; cnf.clauses.len()];
    let mut next_fresh = cnf.num_vars + 1;
    let mut dummy_neighbors = Vec::new();
    let mut dummy_component_vars = 0u64;
    let mut target_offset: i64 = 0;

    for comp in &components {
        let comp_set: BTreeSet<Var> = comp.iter().copied().collect();
        let mut neighbors: BTreeSet<Var> = BTreeSet::new();
        for &v in comp {
            for &u in &adj[v as usize] {
                if modulator.contains(&u) {
                    neighbors.insert(u);
                }
            }
        }
        let mut neighbor_list: Vec<Var> = neighbors.into_iter().collect();
        // pad to exactly delta neighbors with fresh variables
        while (neighbor_list.len() as u32) < *delta {
            neighbor_list.push(next_fresh);
            dummy_neighbors.push(next_fresh);
            next_fresh += 1;
        }
        dummy_component_vars += (*sigma as u64).saturating_sub(comp.len() as u64);
        // clauses touching this component
        let touching: Vec<usize> = cnf
            .clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| c.vars().iter().any(|v| comp_set.contains(v)))
            .map(|(i, _)| i)
            .collect();
        for &i in &touching {
            used[i] = true;
        }
        let comp_vars: Vec<Var> = comp.to_vec();
        let delta_padded = neighbor_list.len() as u32;
        // w_s for every neighborhood assignment s (dummies do not affect
        // clause evaluation, so their choices inherit the real weight)
        let mut weights = Vec::with_capacity(1 << delta_padded);
        let mut total: u64 = 0;
        for s in 0..1u64 << delta_padded {
            let fixed_n: Vec<(Var, bool)> = neighbor_list
                .iter()
                .enumerate()
                .map(|(j, &v)| (v, s >> (delta_padded as usize - 1 - j) & 1 == 1))
                .collect();
            let mut best = 0u64;
            for t in 0..1u64 << comp_vars.len() {
                let fixed_c: Vec<(Var, bool)> = comp_vars
                    .iter()
                    .enumerate()
                    .map(|(j, &v)| (v, t >> (comp_vars.len() - 1 - j) & 1 == 1))
                    .collect();
                let w: u64 = touching
                    .iter()
                    .filter(|&&i| {
                        clause_satisfied_by(&cnf.clauses[i], &fixed_n, &fixed_c)
                    })
                    .map(|&i| cnf.clauses[i].weight)
                    .sum();
                best = best.max(w);
            }
            weights.push(best);
            total += best;
        }
        // one clause per assignment s, falsified exactly by s
        for (s, &w_s) in weights.iter().enumerate() {
            let weight = total - w_s;
            if weight == 0 {
                continue;
            }
            let lits: Vec<Literal> = neighbor_list
                .iter()
                .enumerate()
                .map(|(j, &v)| {
                    let set_true = s >> (delta_padded as usize - 1 - j) & 1 == 1;
                    // literal false exactly under s
                    if set_true {
                        Literal::neg(v)
                    } else {
                        Literal::pos(v)
                    }
                })
                .collect();
            clauses.push(Clause::with_weight(lits, weight));
        }
        // maxsat(out) = maxsat(in) + (2^delta - 2) * total, per component
        target_offset -= ((1i64 << delta_padded) - 2) * total as i64;
    }
    // modulator-only clauses pass through
    for (i, c) in cnf.clauses.iter().enumerate() {
        if !used[i] {
            clauses.push(c.clone());
        }
    }
    let num_vars = next_fresh - 1;
    let out_cert = StructureCertificate::Hub {
        modulator: (1..=num_vars).collect(),
        sigma: *sigma,
        delta: *delta,
    };
    let out = CnfInstance::with_certificate(num_vars, clauses, out_cert);
    debug_assert!(out.verify_certificate());
    Ok(HubMaxsatElimination { cnf: out, target_offset, dummy_neighbors, dummy_component_vars })
}

fn clause_satisfied_by(c: &Clause, a: &[(Var, bool)], b: &[(Var, bool)]) -> bool {
    c.literals.iter().any(|l| {
        a.iter()
            .chain(b.iter())
            .find(|(v, _)| *v == l.var)
            .map(|(_, val)| *val == l.positive)
            .unwrap_or(false)
    })
}

/// Splits every clause of arity above 3 into a chain
/// `(l1 v l2 v z1) (¬z1 v l3 v z2) ... (¬z_{r-3} v l_{r-1} v l_r)`.
///
/// The result is equisatisfiable and any modulator is preserved. Tree-depth
/// certificates grow by the depth of a balanced arrangement of the longest
/// inserted chain; path decompositions grow by at most 2 in width. Hub
/// certificates are first converted to tree-depth form (a hub is a modulator
/// to tree-depth at most sigma); backdoor certificates do not survive
/// splitting and are dropped.
pub fn reduce_arity_to_3(cnf: &CnfInstance) -> Result<CnfInstance> {
    if cnf.max_arity() <= 3 {
        return Ok(cnf.clone());
    }
    let mut cert = match &cnf.certificate {
        Some(c @ StructureCertificate::Hub { .. }) => {
            Some(hub_to_treedepth_cert(&primal_graph(cnf), c)?)
        }
        Some(StructureCertificate::Backdoor { .. }) => None,
        other => other.clone(),
    };
    if let Some(c) = &cert {
        let ok = match c {
            StructureCertificate::TreeDepthForest { .. } => {
                crate::instance::verify_tree_depth_forest(&primal_graph(cnf), c)
            }
            StructureCertificate::PathDecomposition { .. } => {
                crate::instance::verify_path_decomposition(&primal_graph(cnf), c)
            }
            _ => true,
        };
        if !ok {
            return Err(Error::InvalidCertificate("certificate does not verify".into()));
        }
    }
    let modulator: BTreeSet<Var> =
        cert.as_ref().map(|c| c.modulator().clone()).unwrap_or_default();
    let mut next_fresh = cnf.num_vars + 1;
    let mut clauses = Vec::new();
    let mut max_chain = 0u32;
    // forest depth levels, if we must attach chains below clique vertices
    let mut td_levels: BTreeMap<Var, u32> = BTreeMap::new();
    if let Some(StructureCertificate::TreeDepthForest { parent, .. }) = &cert {
        fn level_of(
            v: Var,
            parent: &BTreeMap<Var, Option<Var>>,
            memo: &mut BTreeMap<Var, u32>,
        ) -> u32 {
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
        for &v in parent.keys() {
            level_of(v, parent, &mut td_levels);
        }
    }

    for c in &cnf.clauses {
        let r = c.len();
        if r <= 3 {
            clauses.push(c.clone());
            continue;
        }
        let zs: Vec<Var> = (0..r - 3).map(|i| next_fresh + i as u32).collect();
        next_fresh += (r - 3) as u32;
        max_chain = max_chain.max(zs.len() as u32);
        let l = &c.literals;
        let mut chain = Vec::with_capacity(r - 2);
        chain.push(Clause::with_weight(
            vec![l[0], l[1], Literal::pos(zs[0])],
            c.weight,
        ));
        for i in 0..r - 4 {
            chain.push(Clause::with_weight(
                vec![Literal::neg(zs[i]), l[i + 2], Literal::pos(zs[i + 1])],
                c.weight,
            ));
        }
        chain.push(Clause::with_weight(
            vec![Literal::neg(zs[r - 4]), l[r - 2], l[r - 1]],
            c.weight,
        ));
        clauses.extend(chain);
        // certificate surgery for the fresh chain variables
        let clique: Vec<Var> =
            c.vars().into_iter().filter(|v| !modulator.contains(v)).collect();
        match &mut cert {
            Some(StructureCertificate::TreeDepthForest { parent, depth, .. }) => {
                let attach = clique.iter().max_by_key(|v| td_levels[v]).copied();
                let attach_level = attach.map(|v| td_levels[&v]).unwrap_or(0);
                let added =
                    insert_balanced_chain(&zs, attach, parent, &mut td_levels, attach_level);
                *depth = (*depth).max(attach_level + added);
            }
            Some(StructureCertificate::PathDecomposition { bags, width, .. }) => {
                let host = bags
                    .iter()
                    .position(|b| clique.iter().all(|v| b.contains(v)))
                    .map(|i| i + 1)
                    .unwrap_or(0);
                let base: BTreeSet<Var> = if host == 0 {
                    BTreeSet::new()
                } else {
                    bags[host - 1].clone()
                };
                let mut inserted = Vec::new();
                if zs.len() == 1 {
                    let mut b = base.clone();
                    b.insert(zs[0]);
                    inserted.push(b);
                } else {
                    for w in zs.windows(2) {
                        let mut b = base.clone();
                        b.insert(w[0]);
                        b.insert(w[1]);
                        inserted.push(b);
                    }
                }
                let at = if host == 0 { 0 } else { host };
                bags.splice(at..at, inserted);
                *width = (*width).max(base.len() as u32 + 1);
            }
            _ => {}
        }
    }
    let out = CnfInstance { num_vars: next_fresh - 1, clauses, certificate: cert };
    debug_assert!(out.validate().is_ok());
    debug_assert!(out.verify_certificate(), "arity-reduction certificate must verify");
    Ok(out)
}

/// Inserts `zs` as a balanced binary arrangement below `attach` (or as new
/// roots); consecutive chain members end up in ancestor-descendant relation.
/// Returns the number of levels added.
fn insert_balanced_chain(
    zs: &[Var],
    attach: Option<Var>,
    parent: &mut BTreeMap<Var, Option<Var>>,
    levels: &mut BTreeMap<Var, u32>,
    attach_level: u32,
) -> u32 {
    fn place(
        zs: &[Var],
        lo: usize,
        hi: usize,
        above: Option<Var>,
        above_level: u32,
        parent: &mut BTreeMap<Var, Option<Var>>,
        levels: &mut BTreeMap<Var, u32>,
    ) -> u32 {
        if lo > hi {
            return 0;
        }
        let mid = (lo + hi) / 2;
        parent.insert(zs[mid], above);
        levels.insert(zs[mid], above_level + 1);
        let mut below = 1;
        if mid > lo {
            below = below
                .max(1 + place(zs, lo, mid - 1, Some(zs[mid]), above_level + 1, parent, levels));
        }
        below = below.max(1 + place(zs, mid + 1, hi, Some(zs[mid]), above_level + 1, parent, levels));
        below
    }
    place(zs, 0, zs.len() - 1, attach, attach_level, parent, levels)
}

/// Bounds claimed by [`eliminate_treedepth_modulator`], for per-instance
/// auditing: clause count at most `m^(2^c)` and arity at most `2^c * k`.
pub fn treedepth_elimination_bounds(input: &CnfInstance) -> Option<(u128, u64)> {
    let Some(StructureCertificate::TreeDepthForest { depth, .. }) = &input.certificate else {
        return None;
    };
    let m = input.clauses.len() as u128;
    let k = input.max_arity() as u64;
    let e = 1u32.checked_shl(*depth)?;
    let clause_bound = m.checked_pow(e)?;
    let arity_bound = (e as u64).checked_mul(k)?;
    Some((clause_bound, arity_bound))
}

/// Literal-count bound documented for [`eliminate_hub_maxsat`]:
/// `4 * 2^(sigma+delta) * (input literals + n + 1)`.
pub fn hub_elimination_size_bound(input: &CnfInstance) -> Option<u64> {
    let Some(StructureCertificate::Hub { sigma, delta, .. }) = &input.certificate else {
        return None;
    };
    let lits: u64 = input.clauses.iter().map(|c| c.len() as u64).sum();
    let factor = 4u64.checked_shl((sigma + delta).min(40))?;
    factor.checked_mul(lits + input.num_vars as u64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen::{gen_planted, GenParams, PlantedKind};
    use crate::harness::Instance;
    use crate::oracles::{solve_maxsat_bruteforce, solve_sat_bruteforce, OracleCaps};

    fn cnf(n: u32, clauses: &[&[i64]]) -> CnfInstance {
        CnfInstance::new(n, clauses.iter().map(|c| Clause::from_dimacs(c).unwrap()).collect())
    }

    #[test]
    fn single_resolvent() {
        // {(x v a), (~x v b)} over x -> {(a v b)}
        let f = cnf(3, &[&[1, 2], &[-1, 3]]);
        let r = exhaustive_resolve(&f, 1).unwrap();
        assert_eq!(r.clauses.len(), 1);
        assert_eq!(r.clauses[0].vars(), [2, 3].into_iter().collect());
    }

    #[test]
    fn empty_clause_preserves_unsat() {
        let f = cnf(1, &[&[1], &[-1]]);
        let r = exhaustive_resolve(&f, 1).unwrap();
        assert_eq!(r.clauses.len(), 1);
        assert!(r.clauses[0].is_empty());
    }

    #[test]
    fn resolution_preserves_satisfiability_on_random_instances() {
        use rand::{Rng, SeedableRng};
        let caps = OracleCaps::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(101);
        for _ in 0..200 {
            let n = 8u32;
            let m = rng.gen_range(1..=12);
            let mut clauses = Vec::new();
            for _ in 0..m {
                let len = rng.gen_range(1..=3);
                let mut lits: Vec<Literal> = Vec::new();
                while lits.len() < len {
                    let l = Literal { var: rng.gen_range(1..=n), positive: rng.gen() };
                    if !lits.contains(&l) {
                        lits.push(l);
                    }
                }
                clauses.push(Clause::new(lits));
            }
            let f = CnfInstance::new(n, clauses);
            let x = rng.gen_range(1..=n);
            let r = exhaustive_resolve(&f, x).unwrap();
            let before = solve_sat_bruteforce(&f, &caps).unwrap().is_some();
            let after = solve_sat_bruteforce(&r, &caps).unwrap().is_some();
            assert_eq!(before, after);
        }
    }

    #[test]
    fn modulator_of_everything_is_identity() {
        let mut f = cnf(3, &[&[1, 2], &[2, 3]]);
        f.certificate = Some(StructureCertificate::TreeDepthForest {
            modulator: [1, 2, 3].into_iter().collect(),
            parent: BTreeMap::new(),
            depth: 0,
        });
        let out = eliminate_treedepth_modulator(&f).unwrap();
        assert_eq!(out.clauses, f.clauses);
    }

    #[test]
    fn hand_resolution_example() {
        // (x v y) ^ (~y v x), M = {x}, forest = {y} -> {(x)}
        let mut f = cnf(2, &[&[1, 2], &[-2, 1]]);
        f.certificate = Some(StructureCertificate::TreeDepthForest {
            modulator: [1].into_iter().collect(),
            parent: [(2, None)].into_iter().collect(),
            depth: 1,
        });
        let out = eliminate_treedepth_modulator(&f).unwrap();
        assert_eq!(out.clauses.len(), 1);
        assert_eq!(out.clauses[0].literals, vec![Literal::pos(1)]);
    }

    #[test]
    fn planted_elimination_is_equisatisfiable_and_bounded() {
        let caps = OracleCaps::default();
        let params = GenParams {
            num_vars: 6,
            modulator_size: 4,
            clauses: 7,
            arity: 3,
            depth: 3,
            ..GenParams::default()
        };
        for seed in 0..60 {
            let Instance::Cnf(f) =
                gen_planted(PlantedKind::CnfTdModulator, &params, seed).unwrap()
            else {
                unreachable!()
            };
            let out = eliminate_treedepth_modulator(&f).unwrap();
            let modulator = f.certificate.as_ref().unwrap().modulator().clone();
            for c in &out.clauses {
                assert!(c.vars().iter().all(|v| modulator.contains(v)));
            }
            let before = solve_sat_bruteforce(&f, &caps).unwrap().is_some();
            let after = solve_sat_bruteforce(&out, &caps).unwrap().is_some();
            assert_eq!(before, after, "seed {seed}");
            let (clause_bound, arity_bound) = treedepth_elimination_bounds(&f).unwrap();
            if f.clauses.len() >= 4 {
                assert!((out.clauses.len() as u128) <= clause_bound);
            }
            assert!((out.max_arity() as u64) <= arity_bound);
        }
    }

    #[test]
    fn hub_chain_cert_examples() {
        // (1,delta)-hub: singleton components become isolated roots
        let g = SimpleGraph::undirected(5, vec![(1, 2), (1, 3), (1, 4), (1, 5)]);
        let hub = StructureCertificate::Hub {
            modulator: [1].into_iter().collect(),
            sigma: 1,
            delta: 1,
        };
        let td = hub_to_treedepth_cert(&g, &hub).unwrap();
        let StructureCertificate::TreeDepthForest { depth, parent, .. } = &td else {
            unreachable!()
        };
        assert_eq!(*depth, 1);
        assert!(parent.values().all(|p| p.is_none()));
        // size-3 component becomes a depth-3 path
        let g = SimpleGraph::undirected(4, vec![(1, 2), (2, 3), (3, 4), (2, 4)]);
        let hub = StructureCertificate::Hub {
            modulator: [1].into_iter().collect(),
            sigma: 3,
            delta: 1,
        };
        let td = hub_to_treedepth_cert(&g, &hub).unwrap();
        let StructureCertificate::TreeDepthForest { depth, .. } = &td else { unreachable!() };
        assert_eq!(*depth, 3);
        assert!(crate::instance::verify_tree_depth_forest(&g, &td));
    }

    #[test]
    fn planted_hub_to_treedepth_verifies() {
        let params = GenParams::default();
        for seed in 0..200 {
            let Instance::Cnf(f) = gen_planted(PlantedKind::CnfHub, &params, seed).unwrap()
            else {
                unreachable!()
            };
            let g = primal_graph(&f);
            let td = hub_to_treedepth_cert(&g, f.certificate.as_ref().unwrap()).unwrap();
            assert!(crate::instance::verify_tree_depth_forest(&g, &td));
        }
    }

    #[test]
    fn hub_elimination_identity_on_trivial_cases() {
        // hub = all variables: no components, output = input, offset 0
        let mut f = cnf(2, &[&[1, 2]]);
        f.certificate = Some(StructureCertificate::Hub {
            modulator: [1, 2].into_iter().collect(),
            sigma: 1,
            delta: 1,
        });
        let out = eliminate_hub_maxsat(&f).unwrap();
        assert_eq!(out.target_offset, 0);
        assert_eq!(out.cnf.clauses, f.clauses);
    }

    #[test]
    fn hub_elimination_preserves_maxsat_optimum() {
        let caps = OracleCaps::default();
        let params = GenParams {
            num_vars: 5,
            modulator_size: 3,
            sigma: 2,
            delta: 2,
            weighted: true,
            ..GenParams::default()
        };
        for seed in 0..60 {
            let Instance::Cnf(f) = gen_planted(PlantedKind::CnfHub, &params, seed).unwrap()
            else {
                unreachable!()
            };
            let out = eliminate_hub_maxsat(&f).unwrap();
            let (_, opt_in) = solve_maxsat_bruteforce(&f, &caps).unwrap();
            let (_, opt_out) = solve_maxsat_bruteforce(&out.cnf, &caps).unwrap();
            assert_eq!(
                opt_out as i64 + out.target_offset,
                opt_in as i64,
                "seed {seed}: {} + {} != {}",
                opt_out,
                out.target_offset,
                opt_in
            );
            // arity bound: max{k, delta}
            assert!(out.cnf.max_arity() as u32 <= (f.max_arity() as u32).max(2));
        }
    }

    #[test]
    fn arity_reduction_examples() {
        let caps = OracleCaps::default();
        // arity <= 3 input unchanged
        let f = cnf(3, &[&[1, 2, 3]]);
        assert_eq!(reduce_arity_to_3(&f).unwrap(), f);
        // (a v b v c v d) splits into two chained clauses, equisatisfiable
        let f = cnf(4, &[&[1, 2, 3, 4]]);
        let out = reduce_arity_to_3(&f).unwrap();
        assert_eq!(out.clauses.len(), 2);
        assert_eq!(out.num_vars, 5);
        for a in crate::instance::Assignment::enumerate(4) {
            let sat_in = f.eval(&a);
            let sat_out = (0..2u64).any(|z| {
                let mut full = a.values().to_vec();
                full.push(z == 1);
                out.eval(&crate::instance::Assignment::new(full))
            });
            assert_eq!(sat_in, sat_out);
        }
        let _ = caps;
    }

    #[test]
    fn arity_reduction_updates_pw_certificate() {
        let params = GenParams {
            num_vars: 6,
            modulator_size: 2,
            clauses: 6,
            arity: 5,
            width: 4,
            ..GenParams::default()
        };
        let caps = OracleCaps::default();
        for seed in 0..60 {
            let Instance::Cnf(f) =
                gen_planted(PlantedKind::CnfPwModulator, &params, seed).unwrap()
            else {
                unreachable!()
            };
            let out = reduce_arity_to_3(&f).unwrap();
            assert!(out.max_arity() <= 3);
            assert!(out.verify_certificate(), "seed {seed}");
            if let (
                Some(StructureCertificate::PathDecomposition { width: w_in, .. }),
                Some(StructureCertificate::PathDecomposition { width: w_out, .. }),
            ) = (&f.certificate, &out.certificate)
            {
                assert!(*w_out <= *w_in + 2);
            }
            let before = solve_sat_bruteforce(&f, &caps).unwrap().is_some();
            let after = solve_sat_bruteforce(&out, &caps).unwrap().is_some();
            assert_eq!(before, after);
        }
    }

    #[test]
    fn arity_reduction_updates_td_certificate() {
        let params = GenParams {
            num_vars: 6,
            modulator_size: 2,
            clauses: 5,
            arity: 5,
            depth: 3,
            ..GenParams::default()
        };
        for seed in 0..60 {
            let Instance::Cnf(f) =
                gen_planted(PlantedKind::CnfTdModulator, &params, seed).unwrap()
            else {
                unreachable!()
            };
            let out = reduce_arity_to_3(&f).unwrap();
            assert!(out.max_arity() <= 3);
            assert!(out.verify_certificate(), "seed {seed}");
        }
    }
}
