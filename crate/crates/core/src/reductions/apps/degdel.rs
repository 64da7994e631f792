//! Degenerate deletion encoded as circuit satisfiability: the converse
//! direction of the degenerate-deletion equivalence (the forward direction
//! goes through external gadget chains and is out of scope).

use crate::instance::{Circuit, GateId, GateKind, SimpleGraph};
use crate::reductions::circuit::{ge_const, popcount_sum};
use crate::{Error, Result};

/// A circuit with `k * ceil(log2 n)` inputs decoding k deletion indices,
/// satisfiable iff deleting the decoded vertices (repeats and padding
/// indices simply weaken the set) leaves an `r`-degenerate graph.
///
/// The circuit simulates `n` rounds of peeling: deleted vertices start
/// marked, and a vertex becomes marked once at most `r` of its neighbors
/// are unmarked (threshold subcircuits via the popcount comparator). It
/// accepts when every vertex ends up marked. Deleted vertices count as
/// permanently marked, matching peeling semantics.
pub fn degdel_to_circuitsat(g: &SimpleGraph, r: u32, k: u32) -> Result<Circuit> {
    if g.directed {
        return Err(Error::precondition("expected an undirected graph"));
    }
    g.validate()?;
    if k < 1 {
        return Err(Error::precondition("k must be at least 1"));
    }
    let n = g.vertex_count;
    if n == 0 {
        let mut c = Circuit::new(k);
        c.output = c.push(GateKind::ConstTrue, vec![]);
        return Ok(c);
    }
    let padded = n.next_power_of_two().max(2);
    let bits = padded.trailing_zeros();
    let mut c = Circuit::new(k * bits);
    let group_bit: Vec<Vec<GateId>> =
        (0..k).map(|g| (0..bits).map(|j| c.input(g * bits + j + 1)).collect()).collect();
    let not_bit: Vec<Vec<GateId>> = {
        let mut rows = Vec::new();
        for g in 0..k as usize {
            rows.push((0..bits as usize).map(|j| c.not(group_bit[g][j])).collect::<Vec<_>>());
        }
        rows
    };
    // marked_0(v): some group decodes v's index
    let adj = g.adjacency();
    let mut marked: Vec<GateId> = (0..n)
        .map(|v| {
            let mut matches = Vec::with_capacity(k as usize);
            for gi in 0..k as usize {
                let lits: Vec<GateId> = (0..bits as usize)
                    .map(|j| {
                        if v >> (bits as usize - 1 - j) & 1 == 1 {
                            group_bit[gi][j]
                        } else {
                            not_bit[gi][j]
                        }
                    })
                    .collect();
                matches.push(c.and_tree(&lits));
            }
            c.or_tree(&matches)
        })
        .collect();
    // n peeling rounds: marked once at most r unmarked neighbors remain
    for _ in 0..n {
        let unmarked: Vec<GateId> = marked.iter().map(|&g| c.not(g)).collect();
        let mut next = Vec::with_capacity(n as usize);
        for v in 1..=n {
            let neighbor_bits: Vec<Vec<GateId>> =
                adj[v as usize].iter().map(|&u| vec![unmarked[(u - 1) as usize]]).collect();
            let sum = popcount_sum(&mut c, neighbor_bits);
            let over = ge_const(&mut c, &sum, r as u64 + 1);
            let low_degree = c.not(over);
            next.push(c.or(marked[(v - 1) as usize], low_degree));
        }
        marked = next;
    }
    c.output = c.and_tree(&marked);
    debug_assert!(c.validate().is_ok());
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Assignment;
    use crate::oracles::{degeneracy, eval_circuit, solve_degdel_bruteforce, OracleCaps};
    use rand::{Rng, SeedableRng};

    fn complete(n: u32) -> SimpleGraph {
        let mut edges = vec![];
        for u in 1..=n {
            for v in u + 1..=n {
                edges.push((u, v));
            }
        }
        SimpleGraph::undirected(n, edges)
    }

    fn circuit_satisfiable(c: &Circuit) -> bool {
        Assignment::enumerate(c.num_inputs).any(|a| eval_circuit(c, &a))
    }

    #[test]
    fn deleting_any_vertex_of_k4_reaches_degeneracy_two() {
        assert_eq!(degeneracy(&complete(4)), 3);
        let c = degdel_to_circuitsat(&complete(4), 2, 1).unwrap();
        assert!(circuit_satisfiable(&c));
        // K_5 needs two deletions for degeneracy 2
        let c = degdel_to_circuitsat(&complete(5), 2, 1).unwrap();
        assert!(!circuit_satisfiable(&c));
        let c = degdel_to_circuitsat(&complete(5), 2, 2).unwrap();
        assert!(circuit_satisfiable(&c));
    }

    #[test]
    fn already_degenerate_graph_is_satisfiable() {
        // a triangle is 2-degenerate; even forced selections only weaken
        let c = degdel_to_circuitsat(&complete(3), 2, 1).unwrap();
        assert!(circuit_satisfiable(&c));
    }

    #[test]
    fn agreement_with_bruteforce_on_random_graphs() {
        let caps = OracleCaps::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(97);
        for trial in 0..60 {
            let n = rng.gen_range(3..=8u32);
            let mut edges = Vec::new();
            for u in 1..=n {
                for v in u + 1..=n {
                    if rng.gen_bool(0.55) {
                        edges.push((u, v));
                    }
                }
            }
            let g = SimpleGraph::undirected(n, edges);
            for k in 1..=2u32 {
                let c = degdel_to_circuitsat(&g, 2, k).unwrap();
                let direct = solve_degdel_bruteforce(&g, 2, k, &caps).unwrap().is_some();
                assert_eq!(circuit_satisfiable(&c), direct, "trial {trial} k {k}");
            }
        }
    }
}
