//! Max-Cut and weighted Max-SAT, both directions, with hub certificates.

use crate::instance::{
    primal_graph, Clause, CnfInstance, Literal, SimpleGraph, StructureCertificate,
};
use crate::{Error, Result};
use std::collections::BTreeSet;

/// Output of [`maxcut_to_maxsat`]: `maxsat(cnf) = total_edge_weight +
/// maxcut(g)`.
#[derive(Debug, Clone)]
pub struct MaxcutMaxsat {
    pub cnf: CnfInstance,
    pub total_edge_weight: u64,
}

/// The easy direction: per edge `uv` of weight `w`, clauses `(x_u v x_v)`
/// and `(¬x_u v ¬x_v)` of weight `w`. A cut edge satisfies both, an uncut
/// edge one, so the optimum shifts by the total edge weight. The primal
/// graph equals the input, so a hub or modulator certificate passes through
/// unchanged (it is re-verified here).
pub fn maxcut_to_maxsat(
    g: &SimpleGraph,
    cert: Option<StructureCertificate>,
) -> Result<MaxcutMaxsat> {
    if g.directed {
        return Err(Error::precondition("max-cut expects an undirected graph"));
    }
    g.validate()?;
    let mut clauses = Vec::new();
    for &(u, v, w) in &g.edges {
        clauses.push(Clause::with_weight(vec![Literal::pos(u), Literal::pos(v)], w));
        clauses.push(Clause::with_weight(vec![Literal::neg(u), Literal::neg(v)], w));
    }
    let mut cnf = CnfInstance::new(g.vertex_count, clauses);
    if let Some(cert) = cert {
        cnf.certificate = Some(cert);
        if !cnf.verify_certificate() {
            return Err(Error::InvalidCertificate(
                "certificate does not verify against the primal graph".into(),
            ));
        }
        debug_assert_eq!(primal_graph(&cnf).edges.len(), {
            let mut dedup: BTreeSet<(u32, u32)> = BTreeSet::new();
            for &(u, v, _) in &g.edges {
                dedup.insert((u.min(v), u.max(v)));
            }
            dedup.len()
        });
    }
    Ok(MaxcutMaxsat { cnf, total_edge_weight: g.total_weight() })
}

/// Output of [`maxsat_to_maxcut`].
#[derive(Debug, Clone)]
pub struct MaxsatMaxcut {
    /// The final unweighted graph and its cut target: "some assignment
    /// satisfies clauses of total weight >= t" iff "some cut has at least
    /// cut_target edges".
    pub graph: SimpleGraph,
    pub cut_target: u64,
    /// The weighted intermediate (before the parallel-path unweighting) and
    /// its target; exposed because desk-scale oracles can only enumerate
    /// cuts of the weighted stage.
    pub weighted_graph: SimpleGraph,
    pub weighted_target: u64,
    /// Hub certificates for both stages: variable vertices plus the cycle
    /// anchor, components of size O(k^2) with at most k+1 hub neighbors.
    pub hub: StructureCertificate,
    pub weighted_hub: StructureCertificate,
    /// The arity bound used by the gadgets.
    pub k: u32,
}

/// The gadget direction: per clause (weight w = w copies), an odd cycle of
/// length 4k+1 through the anchor `x_0` with edges of weight 8k, a pair of
/// unit edges per literal into its variable vertex, and unit leaf edges
/// padding clauses of arity below k. An assignment satisfying at least `t`
/// clauses corresponds to a cut of weight `32 k^2 m + k m + t`. Weights are
/// then removed by replacing every weight-w edge with w parallel length-3
/// paths, raising the target by `2w`.
pub fn maxsat_to_maxcut(cnf: &CnfInstance, t: u64) -> Result<MaxsatMaxcut> {
    cnf.validate()?;
    let k = (cnf.max_arity() as u32).max(1);
    let n = cnf.num_vars;
    let anchor = n + 1; // x_0
    let mut next = n + 2;
    let mut edges: Vec<(u32, u32, u64)> = Vec::new();
    let mut m = 0u64; // clause copies
    for clause in &cnf.clauses {
        for _ in 0..clause.weight {
            m += 1;
            // cycle x_0, p_1, ..., p_4k
            let p: Vec<u32> = (0..4 * k).map(|i| next + i).collect();
            next += 4 * k;
            edges.push((anchor, p[0], 8 * k as u64));
            for w in p.windows(2) {
                edges.push((w[0], w[1], 8 * k as u64));
            }
            edges.push((p[4 * k as usize - 1], anchor, 8 * k as u64));
            // literal edges: literal i (0-based) occupies p_{4i+1..4i+4}
            for (i, lit) in clause.literals.iter().enumerate() {
                let base = 4 * i;
                if lit.positive {
                    edges.push((p[base + 1], lit.var, 1));
                    edges.push((p[base + 2], lit.var, 1));
                } else {
                    edges.push((p[base], lit.var, 1));
                    edges.push((p[base + 1], lit.var, 1));
                }
            }
            // leaves pad the arity to k
            for _ in clause.len()..k as usize {
                let leaf = next;
                next += 1;
                edges.push((p[0], leaf, 1));
            }
        }
    }
    let weighted_graph = SimpleGraph::undirected_weighted(next - 1, edges);
    weighted_graph.validate()?;
    let weighted_target = 32 * (k as u64).pow(2) * m + k as u64 * m + t;
    let modulator: BTreeSet<u32> = (1..=anchor).collect();
    let weighted_hub = planted_hub(&weighted_graph, &modulator);
    let (graph, added) = unweight_graph(&weighted_graph);
    let hub = planted_hub(&graph, &modulator);
    Ok(MaxsatMaxcut {
        cut_target: weighted_target + added,
        graph,
        weighted_graph,
        weighted_target,
        hub,
        weighted_hub,
        k,
    })
}

/// Replaces every weight-w edge by w parallel length-3 paths of unit edges.
/// Any bipartition cuts at least 2 of each path's 3 edges, and all 3 exactly
/// when the endpoints are separated, so `maxcut(out) = maxcut(in) + 2 *
/// total_weight`; the second component returns that `2 * total_weight`.
pub fn unweight_graph(g: &SimpleGraph) -> (SimpleGraph, u64) {
    let mut next = g.vertex_count + 1;
    let mut edges = Vec::new();
    for &(u, v, w) in &g.edges {
        for _ in 0..w {
            let a = next;
            let b = next + 1;
            next += 2;
            edges.push((u, a, 1));
            edges.push((a, b, 1));
            edges.push((b, v, 1));
        }
    }
    (SimpleGraph::undirected_weighted(next - 1, edges), 2 * g.total_weight())
}

/// Exact hub certificate for a graph with a known modulator: components and
/// their neighbor counts are computed and recorded as (sigma, delta).
fn planted_hub(g: &SimpleGraph, modulator: &BTreeSet<u32>) -> StructureCertificate {
    let alive: BTreeSet<u32> =
        (1..=g.vertex_count).filter(|v| !modulator.contains(v)).collect();
    let adj = g.adjacency();
    let mut sigma = 0u32;
    let mut delta = 0u32;
    for comp in g.components_among(&alive) {
        sigma = sigma.max(comp.len() as u32);
        let mut neighbors = BTreeSet::new();
        for &v in &comp {
            for &u in &adj[v as usize] {
                if modulator.contains(&u) {
                    neighbors.insert(u);
                }
            }
        }
        delta = delta.max(neighbors.len() as u32);
    }
    StructureCertificate::Hub { modulator: modulator.clone(), sigma, delta }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::verify_hub;
    use crate::oracles::{solve_maxcut_bruteforce, solve_maxsat_bruteforce, OracleCaps};
    use rand::{Rng, SeedableRng};

    #[test]
    fn single_edge_and_triangle() {
        let caps = OracleCaps::default();
        let g = SimpleGraph::undirected(2, vec![(1, 2)]);
        let out = maxcut_to_maxsat(&g, None).unwrap();
        let (_, opt) = solve_maxsat_bruteforce(&out.cnf, &caps).unwrap();
        assert_eq!(opt, 2);
        let triangle = SimpleGraph::undirected(3, vec![(1, 2), (2, 3), (1, 3)]);
        let out = maxcut_to_maxsat(&triangle, None).unwrap();
        let (_, opt) = solve_maxsat_bruteforce(&out.cnf, &caps).unwrap();
        assert_eq!(opt, 3 + 2);
    }

    #[test]
    fn maxcut_to_maxsat_identity_on_random_graphs() {
        let caps = OracleCaps::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        for _ in 0..80 {
            let n = rng.gen_range(2..=9u32);
            let mut edges = Vec::new();
            for u in 1..=n {
                for v in u + 1..=n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v, rng.gen_range(1..=2)));
                    }
                }
            }
            let g = SimpleGraph::undirected_weighted(n, edges);
            let out = maxcut_to_maxsat(&g, None).unwrap();
            let (_, sat_opt) = solve_maxsat_bruteforce(&out.cnf, &caps).unwrap();
            let (_, cut_opt) = solve_maxcut_bruteforce(&g, &caps).unwrap();
            assert_eq!(sat_opt, out.total_edge_weight + cut_opt);
        }
    }

    #[test]
    fn unweighting_identity_on_small_graphs() {
        let caps = OracleCaps::trial();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(73);
        for _ in 0..60 {
            let n = rng.gen_range(2..=4u32);
            let mut edges = Vec::new();
            let mut budget = 8u64;
            for u in 1..=n {
                for v in u + 1..=n {
                    if budget > 0 && rng.gen_bool(0.6) {
                        let w = rng.gen_range(1..=2.min(budget));
                        budget -= w;
                        edges.push((u, v, w));
                    }
                }
            }
            let g = SimpleGraph::undirected_weighted(n, edges);
            let (unweighted, added) = unweight_graph(&g);
            let (_, w_opt) = solve_maxcut_bruteforce(&g, &caps).unwrap();
            let (_, u_opt) = solve_maxcut_bruteforce(&unweighted, &caps).unwrap();
            assert_eq!(u_opt, w_opt + added);
        }
    }

    #[test]
    fn threshold_sweep_on_the_weighted_stage() {
        let caps = OracleCaps::trial();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(79);
        for trial in 0..40 {
            // sizes keep the weighted gadget within the cut enumeration cap
            let n = rng.gen_range(1..=2u32);
            let m = rng.gen_range(1..=2usize);
            let arity = rng.gen_range(1..=2u32.min(n));
            let mut clauses = Vec::new();
            for _ in 0..m {
                let mut lits: Vec<Literal> = Vec::new();
                while lits.len() < arity as usize {
                    let l = Literal { var: rng.gen_range(1..=n), positive: rng.gen() };
                    if !lits.iter().any(|x| x.var == l.var) {
                        lits.push(l);
                    }
                }
                clauses.push(Clause::new(lits));
            }
            let f = CnfInstance::new(n, clauses);
            let (_, opt) = solve_maxsat_bruteforce(&f, &caps).unwrap();
            let out0 = maxsat_to_maxcut(&f, 0).unwrap();
            let (_, cut_opt) = solve_maxcut_bruteforce(&out0.weighted_graph, &caps).unwrap();
            for t in 0..=f.total_weight() + 1 {
                let out = maxsat_to_maxcut(&f, t).unwrap();
                assert_eq!(out.weighted_target, out0.weighted_target + t);
                assert_eq!(
                    cut_opt >= out.weighted_target,
                    opt >= t,
                    "trial {trial} t {t} opt {opt} cut {cut_opt} target {}",
                    out.weighted_target
                );
            }
        }
    }

    #[test]
    fn emitted_hubs_verify_with_documented_bounds() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(83);
        for _ in 0..30 {
            let n = rng.gen_range(1..=4u32);
            let m = rng.gen_range(1..=3usize);
            let arity = rng.gen_range(1..=3u32.min(n));
            let mut clauses = Vec::new();
            for _ in 0..m {
                let mut lits: Vec<Literal> = Vec::new();
                while lits.len() < arity as usize {
                    let l = Literal { var: rng.gen_range(1..=n), positive: rng.gen() };
                    if !lits.iter().any(|x| x.var == l.var) {
                        lits.push(l);
                    }
                }
                clauses.push(Clause::new(lits));
            }
            let f = CnfInstance::new(n, clauses);
            let out = maxsat_to_maxcut(&f, 1).unwrap();
            let k = out.k;
            assert!(verify_hub(&out.weighted_graph, &out.weighted_hub));
            assert!(verify_hub(&out.graph, &out.hub));
            for hub in [&out.hub, &out.weighted_hub] {
                let StructureCertificate::Hub { sigma, delta, .. } = hub else { unreachable!() };
                // components have O(k^2) vertices and at most k+1 hub
                // neighbors (the anchor plus the clause variables)
                assert!(*sigma <= 64 * k * k + 30 * k + 5);
                assert!(*delta <= k + 1);
            }
        }
    }
}
