//! SAT with a constant-pathwidth modulator reduced to q-coloring with a
//! modulator: 3-CNF, then a CSP with alphabet [q] whose modulator groups
//! q-ary variables, then arity 2 via odd-cycle selectors, then list
//! coloring via weak-edge gadgets, and finally a q-clique simulating the
//! lists.

use crate::instance::{CnfInstance, SimpleGraph, StructureCertificate, Var};
use crate::reductions::modulator::reduce_arity_to_3;
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// Output of [`pwmod_sat_to_qcoloring`].
#[derive(Debug, Clone)]
pub struct SatColoring {
    pub graph: SimpleGraph,
    pub q: u32,
    /// Path decomposition of the remainder (clique vertices ride along in
    /// every bag), with the group variables as the modulator.
    pub certificate: StructureCertificate,
    /// The q clique vertices (their colors are forced up to symmetry, which
    /// the decomposition oracle exploits by pinning them).
    pub clique: Vec<u32>,
    /// Exact modulator size, `ceil(|M| / rho) * gamma`.
    pub modulator_size: u32,
    pub gamma: u32,
    pub rho: u32,
}

/// Encodes satisfiability of a CNF with a modulator plus constant-width
/// path decomposition as q-colorability of a graph with a vertex modulator
/// of size `ceil(m/rho) * gamma` whose removal leaves pathwidth
/// `input + q + 9` at most.
///
/// Chain: arity is reduced to 3; boolean modulator groups of size rho
/// become gamma q-ary group vertices (requires `2^rho < q^gamma`);
/// non-modulator variables become vertices with effective color list {1,2};
/// each clause becomes a constraint whose accepted tuples drive an odd
/// cycle of `2|S|+1` selector vertices (colors {1,2,3} on the selectors
/// force one selector to color 3, pinning the scope to its tuple); all
/// remaining binary constraints are realized by weak edges (length-3 paths
/// with lists ruling out exactly one color pair); a final q-clique
/// simulates the lists.
pub fn pwmod_sat_to_qcoloring(
    cnf: &CnfInstance,
    q: u32,
    gamma: u32,
    rho: u32,
) -> Result<SatColoring> {
    if q < 3 {
        return Err(Error::precondition("q must be at least 3"));
    }
    // 2^rho < q^gamma, exactly
    let mut power: u128 = 1;
    for _ in 0..gamma {
        power = power.saturating_mul(q as u128);
    }
    if rho >= 127 || (1u128 << rho) >= power {
        return Err(Error::precondition("2^rho < q^gamma violated"));
    }
    let phi3 = reduce_arity_to_3(cnf)?;
    let Some(StructureCertificate::PathDecomposition { modulator, bags, width }) =
        &phi3.certificate
    else {
        return Err(Error::precondition("expected a path decomposition certificate"));
    };

    // ---- step 1: variables of the CSP --------------------------------
    let mod_list: Vec<Var> = modulator.iter().copied().collect();
    let groups: Vec<Vec<Var>> = mod_list.chunks(rho.max(1) as usize).map(|c| c.to_vec()).collect();
    let group_of: BTreeMap<Var, (usize, usize)> = groups
        .iter()
        .enumerate()
        .flat_map(|(gi, g)| g.iter().enumerate().map(move |(pos, &v)| (v, (gi, pos))))
        .collect();
    let modulator_size = groups.len() as u32 * gamma;
    // graph vertices: group vars first (the new modulator), then one vertex
    // per non-modulator variable
    let outside: Vec<Var> = (1..=phi3.num_vars).filter(|v| !modulator.contains(v)).collect();
    let out_vertex: BTreeMap<Var, u32> = outside
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, modulator_size + i as u32 + 1))
        .collect();
    let group_vertex = |gi: usize, pos: u32| -> u32 { gi as u32 * gamma + pos + 1 };
    let mut next_vertex = modulator_size + outside.len() as u32 + 1;
    // color lists; vertices without an entry take the full palette
    let mut lists: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &v in out_vertex.values() {
        lists.insert(v, vec![1, 2]);
    }
    let mut edges: Vec<(u32, u32)> = Vec::new();

    // decode a q-ary group valuation into the boolean assignment it encodes
    let decode_group = |values: &[u32], size: usize| -> Option<u64> {
        let mut number: u64 = 0;
        for &val in values {
            number = number * q as u64 + (val - 1) as u64;
        }
        if number < 1u64 << size {
            Some(number)
        } else {
            None
        }
    };

    // ---- step 2: constraints per clause ------------------------------
    struct Constraint {
        host: usize,
        scope: Vec<u32>,            // graph vertices
        scope_lists: Vec<Vec<u32>>, // allowed colors per scope vertex
        accepted: Vec<Vec<u32>>,
    }
    let base_bags: Vec<Vec<Var>> = if bags.is_empty() {
        vec![vec![]]
    } else {
        bags.iter().map(|b| b.iter().copied().collect()).collect()
    };
    let mut constraints: Vec<Constraint> = Vec::new();
    let mut unsatisfiable = false;
    for clause in &phi3.clauses {
        let clause_outside: Vec<Var> =
            clause.vars().into_iter().filter(|v| !modulator.contains(v)).collect();
        let host = base_bags
            .iter()
            .position(|b| clause_outside.iter().all(|v| b.contains(v)))
            .ok_or_else(|| {
                Error::InvalidCertificate("clause variables not contained in any bag".into())
            })?;
        // scope: group vertices of every touched group, then outside vertices
        let touched_groups: BTreeSet<usize> = clause
            .vars()
            .iter()
            .filter_map(|v| group_of.get(v).map(|&(gi, _)| gi))
            .collect();
        let mut scope: Vec<u32> = Vec::new();
        let mut scope_lists: Vec<Vec<u32>> = Vec::new();
        for &gi in &touched_groups {
            for pos in 0..gamma {
                scope.push(group_vertex(gi, pos));
                scope_lists.push((1..=q).collect());
            }
        }
        for &v in &clause_outside {
            scope.push(out_vertex[&v]);
            scope_lists.push(vec![1, 2]);
        }
        // accepted tuples: group valuations must decode to booleans making
        // the clause true together with the outside values (1 = True)
        let mut accepted = Vec::new();
        let mut tuple = vec![0u32; scope.len()];
        enumerate_tuples(&scope_lists, 0, &mut tuple, &mut |t| {
            let mut assignment: BTreeMap<Var, bool> = BTreeMap::new();
            let mut offset = 0usize;
            for &gi in &touched_groups {
                let vals = &t[offset..offset + gamma as usize];
                offset += gamma as usize;
                match decode_group(vals, groups[gi].len()) {
                    None => return, // not the image of a boolean assignment
                    Some(number) => {
                        let size = groups[gi].len();
                        for (pos, &var) in groups[gi].iter().enumerate() {
                            assignment
                                .insert(var, number >> (size - 1 - pos) & 1 == 1);
                        }
                    }
                }
            }
            for (idx, &v) in clause_outside.iter().enumerate() {
                assignment.insert(v, t[offset + idx] == 1);
            }
            if clause.literals.iter().any(|l| assignment.get(&l.var) == Some(&l.positive)) {
                accepted.push(t.to_vec());
            }
        });
        if accepted.is_empty() {
            unsatisfiable = true;
            break;
        }
        constraints.push(Constraint { host, scope, scope_lists, accepted });
    }

    if unsatisfiable {
        // emit a (q+1)-clique: not q-colorable, trivially certified
        let n = q + 1;
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                edges.push((u, v));
            }
        }
        let graph = SimpleGraph::undirected(n, edges);
        let certificate = StructureCertificate::PathDecomposition {
            modulator: BTreeSet::new(),
            bags: vec![(1..=n).collect()],
            width: q,
        };
        return Ok(SatColoring {
            graph,
            q,
            certificate,
            clique: vec![],
            modulator_size,
            gamma,
            rho,
        });
    }

    // ---- step 3: odd cycles and weak edges ----------------------------
    // final bag list: per host bag, the bag itself then the blocks of its
    // constraints
    let mut final_bags: Vec<BTreeSet<u32>> = Vec::new();
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new(); // host -> constraints
    for (ci, c) in constraints.iter().enumerate() {
        blocks.entry(c.host).or_default().push(ci);
    }
    // a weak edge between u and v ruling out exactly (a, b), a != b: a path
    // u - w1 - w2 - v with lists {a, alpha}, {b, alpha} for a third color
    // alpha. For a == b the single path would also block (alpha, alpha), so
    // two exact weak edges are chained through a buffer vertex instead.
    fn add_weak_edge(
        q: u32,
        u: u32,
        v: u32,
        a: u32,
        b: u32,
        next_vertex: &mut u32,
        lists: &mut BTreeMap<u32, Vec<u32>>,
        edges: &mut Vec<(u32, u32)>,
    ) -> Vec<u32> {
        debug_assert_ne!(a, b);
        let alpha = (1..=q).find(|&c| c != a && c != b).expect("q >= 3");
        let w1 = *next_vertex;
        let w2 = *next_vertex + 1;
        *next_vertex += 2;
        lists.insert(w1, vec![a.min(alpha), a.max(alpha)]);
        lists.insert(w2, vec![b.min(alpha), b.max(alpha)]);
        edges.push((u, w1));
        edges.push((w1, w2));
        edges.push((w2, v));
        vec![w1, w2]
    }

    fn add_forbid_pair(
        q: u32,
        u: u32,
        v: u32,
        a: u32,
        b: u32,
        next_vertex: &mut u32,
        lists: &mut BTreeMap<u32, Vec<u32>>,
        edges: &mut Vec<(u32, u32)>,
    ) -> Vec<u32> {
        if a != b {
            return add_weak_edge(q, u, v, a, b, next_vertex, lists, edges);
        }
        // buffer m in {c1, c2}: u = a pushes m to c2, and m = c2 blocks v = a
        let c1 = (1..=q).find(|&c| c != a).expect("q >= 2");
        let c2 = (1..=q).find(|&c| c != a && c != c1).expect("q >= 3");
        let m = *next_vertex;
        *next_vertex += 1;
        lists.insert(m, vec![c1.min(c2), c1.max(c2)]);
        let mut internals = vec![m];
        internals.extend(add_weak_edge(q, u, m, a, c1, next_vertex, lists, edges));
        internals.extend(add_weak_edge(q, m, v, c2, b, next_vertex, lists, edges));
        internals
    }

    for (bi, base) in base_bags.iter().enumerate() {
        let base_vertices: BTreeSet<u32> = base.iter().map(|v| out_vertex[v]).collect();
        final_bags.push(base_vertices.clone());
        let Some(cis) = blocks.get(&bi) else { continue };
        for &ci in cis {
            let c = &constraints[ci];
            if c.scope.is_empty() {
                continue; // vacuously accepted
            }
            if c.scope.len() <= 2 {
                // direct weak edges for the forbidden pairs
                let bag = base_vertices.clone();
                if c.scope.len() == 1 {
                    // unary: shrink the list
                    let allowed: Vec<u32> = c.accepted.iter().map(|t| t[0]).collect();
                    let entry =
                        lists.entry(c.scope[0]).or_insert_with(|| (1..=q).collect());
                    entry.retain(|col| allowed.contains(col));
                    continue;
                }
                let (u, v) = (c.scope[0], c.scope[1]);
                for a in &c.scope_lists[0] {
                    for b in &c.scope_lists[1] {
                        if !c.accepted.iter().any(|t| t[0] == *a && t[1] == *b) {
                            let internals = add_forbid_pair(
                                q, u, v, *a, *b, &mut next_vertex, &mut lists, &mut edges,
                            );
                            let mut wb = bag.clone();
                            wb.extend(internals);
                            if !modulator_vertexless(u, modulator_size) {
                                wb.insert(u);
                            }
                            if !modulator_vertexless(v, modulator_size) {
                                wb.insert(v);
                            }
                            final_bags.push(wb);
                        }
                    }
                }
                continue;
            }
            // odd cycle: 2|S|+1 vertices, selectors at even positions
            let cycle_len = 2 * c.accepted.len() + 1;
            let cycle: Vec<u32> = (0..cycle_len as u32).map(|i| next_vertex + i).collect();
            next_vertex += cycle_len as u32;
            for (pos, &cv) in cycle.iter().enumerate() {
                let selector = pos % 2 == 0 && pos / 2 < c.accepted.len();
                lists.insert(cv, if selector { vec![1, 2, 3] } else { vec![1, 2] });
            }
            for i in 0..cycle_len {
                let (u, v) = (cycle[i], cycle[(i + 1) % cycle_len]);
                // pair bag: base + c_0 + the consecutive pair
                let mut pair_bag = base_vertices.clone();
                pair_bag.insert(cycle[0]);
                pair_bag.insert(u);
                pair_bag.insert(v);
                final_bags.push(pair_bag.clone());
                // inequality constraint along the cycle: forbid equal pairs
                for color in 1..=3u32 {
                    let lu = lists[&u].clone();
                    let lv = lists[&v].clone();
                    if lu.contains(&color) && lv.contains(&color) {
                        let internals = add_forbid_pair(
                            q, u, v, color, color, &mut next_vertex, &mut lists, &mut edges,
                        );
                        let mut wb = pair_bag.clone();
                        wb.extend(internals);
                        final_bags.push(wb);
                    }
                }
                // selector u forces its tuple on the scope
                if i % 2 == 0 && i / 2 < c.accepted.len() {
                    let tuple = &c.accepted[i / 2];
                    for (si, &sv) in c.scope.iter().enumerate() {
                        for val in &c.scope_lists[si] {
                            if *val == tuple[si] {
                                continue;
                            }
                            let internals = add_forbid_pair(
                                q, u, sv, 3, *val, &mut next_vertex, &mut lists, &mut edges,
                            );
                            let mut wb = pair_bag.clone();
                            wb.extend(internals);
                            if !modulator_vertexless(sv, modulator_size) {
                                wb.insert(sv);
                            }
                            final_bags.push(wb);
                        }
                    }
                }
            }
        }
    }

    // ---- step 4: the q-clique simulating lists ------------------------
    let clique: Vec<u32> = (0..q).map(|i| next_vertex + i).collect();
    next_vertex += q;
    for (i, &u) in clique.iter().enumerate() {
        for &v in clique.iter().skip(i + 1) {
            edges.push((u, v));
        }
    }
    for (&v, list) in &lists {
        for color in 1..=q {
            if !list.contains(&color) {
                edges.push((v, clique[(color - 1) as usize]));
            }
        }
    }
    for bag in &mut final_bags {
        bag.extend(clique.iter().copied());
    }
    let graph = SimpleGraph::undirected(next_vertex - 1, edges);
    graph.validate()?;
    let width_out = final_bags.iter().map(|b| b.len()).max().unwrap_or(1) as u32 - 1;
    debug_assert!(width_out <= width + q + 12);
    let certificate = StructureCertificate::PathDecomposition {
        modulator: (1..=modulator_size).collect(),
        bags: final_bags,
        width: width_out,
    };
    debug_assert!(
        crate::instance::verify_path_decomposition(&graph, &certificate),
        "emitted decomposition must verify"
    );
    Ok(SatColoring { graph, q, certificate, clique, modulator_size, gamma, rho })
}

fn modulator_vertexless(v: u32, modulator_size: u32) -> bool {
    v <= modulator_size
}

fn enumerate_tuples(
    lists: &[Vec<u32>],
    i: usize,
    tuple: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]),
) {
    if i == lists.len() {
        f(tuple);
        return;
    }
    for &val in &lists[i] {
        tuple[i] = val;
        enumerate_tuples(lists, i + 1, tuple, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen::{gen_planted, GenParams, PlantedKind};
    use crate::harness::Instance;
    use crate::instance::Clause;
    use crate::oracles::{solve_qcoloring_bag_dp, solve_sat_bruteforce, OracleCaps};
    use crate::reductions::apps::coloring::{choose_gamma_rho, GammaRhoDirection};

    fn colorable(out: &SatColoring, caps: &OracleCaps) -> bool {
        let pinned: Vec<(u32, u32)> =
            out.clique.iter().enumerate().map(|(i, &v)| (v, i as u32 + 1)).collect();
        solve_qcoloring_bag_dp(&out.graph, &out.certificate, out.q, &pinned, caps).unwrap()
    }

    #[test]
    fn trivially_satisfiable_and_empty_clause_inputs() {
        let caps = OracleCaps::trial();
        let (gamma, rho) = choose_gamma_rho(3, 1.0, GammaRhoDirection::SatToColoring).unwrap();
        // single positive unit clause: satisfiable
        let f = CnfInstance::with_certificate(
            1,
            vec![Clause::new(vec![crate::instance::Literal::pos(1)])],
            StructureCertificate::PathDecomposition {
                modulator: BTreeSet::new(),
                bags: vec![[1].into_iter().collect()],
                width: 0,
            },
        );
        let out = pwmod_sat_to_qcoloring(&f, 3, gamma, rho).unwrap();
        assert!(colorable(&out, &caps));
        // empty clause: not colorable
        let f = CnfInstance::with_certificate(
            1,
            vec![Clause::new(vec![])],
            StructureCertificate::PathDecomposition {
                modulator: BTreeSet::new(),
                bags: vec![[1].into_iter().collect()],
                width: 0,
            },
        );
        let out = pwmod_sat_to_qcoloring(&f, 3, gamma, rho).unwrap();
        assert!(!colorable(&out, &caps));
    }

    #[test]
    fn chain_equivalence_on_planted_instances() {
        let caps = OracleCaps::trial();
        let (gamma, rho) = choose_gamma_rho(3, 1.0, GammaRhoDirection::SatToColoring).unwrap();
        let params = GenParams {
            num_vars: 4,
            modulator_size: 2,
            clauses: 4,
            arity: 3,
            width: 1,
            ..GenParams::default()
        };
        for seed in 0..30 {
            let Instance::Cnf(f) =
                gen_planted(PlantedKind::CnfPwModulator, &params, seed).unwrap()
            else {
                unreachable!()
            };
            let out = pwmod_sat_to_qcoloring(&f, 3, gamma, rho).unwrap();
            assert_eq!(
                out.modulator_size,
                (f.certificate.as_ref().unwrap().modulator().len() as u32).div_ceil(rho) * gamma
            );
            let sat = solve_sat_bruteforce(&f, &caps).unwrap().is_some();
            assert_eq!(colorable(&out, &caps), sat, "seed {seed}");
        }
    }

    #[test]
    fn chain_handles_arity_reduction_first() {
        let caps = OracleCaps::trial();
        let (gamma, rho) = choose_gamma_rho(3, 1.0, GammaRhoDirection::SatToColoring).unwrap();
        let params = GenParams {
            num_vars: 4,
            modulator_size: 2,
            clauses: 3,
            arity: 4,
            width: 2,
            ..GenParams::default()
        };
        for seed in 0..8 {
            let Instance::Cnf(f) =
                gen_planted(PlantedKind::CnfPwModulator, &params, seed).unwrap()
            else {
                unreachable!()
            };
            let out = pwmod_sat_to_qcoloring(&f, 3, gamma, rho).unwrap();
            let sat = solve_sat_bruteforce(&f, &caps).unwrap().is_some();
            assert_eq!(colorable(&out, &caps), sat, "seed {seed}");
        }
    }
}
