//! k-neighborhood-cut: selecting k vertices (other than s, t) whose
//! out-neighborhoods, once deleted, disconnect s from t. The designated
//! terminals are never deleted.

use crate::instance::{AnnotatedArc, AnnotatedDag, Literal, SimpleGraph, Var};
use crate::{Error, Result};

/// A k-neighborhood-cut instance: a DAG with designated terminals and a
/// selection budget.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct KncInstance {
    pub graph: SimpleGraph,
    pub source: u32,
    pub sink: u32,
    pub k: u32,
}

/// Selector budget for [`annnonreach_to_knc`].
const SELECTOR_BUDGET: u64 = 1 << 14;

/// Encodes annotated non-reachability as k-neighborhood-cut: the annotation
/// variables are split into k groups; per group assignment a selector
/// vertex, per group a guard `y_i` on an `s -> y_i -> t` path forcing one
/// selection per group; every annotated arc is subdivided and its midpoint
/// is an out-neighbor of exactly the selectors falsifying the annotation.
pub fn annnonreach_to_knc(d: &AnnotatedDag, k: u32) -> Result<KncInstance> {
    d.validate()?;
    if k < 1 {
        return Err(Error::precondition("k must be at least 1"));
    }
    let m = d.annotation_vars;
    let per_group = m.div_ceil(k).max(1);
    if (k as u64) << per_group > SELECTOR_BUDGET {
        return Err(Error::TooLarge {
            what: "selector vertices",
            actual: (k as u64) << per_group,
            cap: SELECTOR_BUDGET,
        });
    }
    // groups of annotation variables (contiguous)
    let mut groups: Vec<Vec<Var>> = Vec::new();
    let mut cursor = 1u32;
    for _ in 0..k {
        let take = per_group.min(m.saturating_sub(cursor - 1));
        groups.push((cursor..cursor + take).collect());
        cursor += take;
    }
    let n = d.vertex_count;
    let mut next = n + 1;
    let mut arcs: Vec<(u32, u32)> = Vec::new();
    // subdivide annotated arcs
    let mut subdivision: Vec<(u32, Literal)> = Vec::new(); // (midpoint, annotation)
    for a in &d.arcs {
        match a.annotation {
            None => arcs.push((a.from, a.to)),
            Some(l) => {
                let z = next;
                next += 1;
                arcs.push((a.from, z));
                arcs.push((z, a.to));
                subdivision.push((z, l));
            }
        }
    }
    // selectors and guards
    let mut selector_base = Vec::new();
    for g in &groups {
        selector_base.push(next);
        next += 1u32 << g.len();
    }
    let guards: Vec<u32> = (0..k).map(|i| next + i).collect();
    next += k;
    for (i, &y) in guards.iter().enumerate() {
        arcs.push((d.source, y));
        arcs.push((y, d.sink));
        for sigma in 0..1u32 << groups[i].len() {
            arcs.push((selector_base[i] + sigma, y));
        }
    }
    // selector -> subdivision arcs for falsified annotations
    for (i, group) in groups.iter().enumerate() {
        for sigma in 0..1u32 << group.len() {
            for &(z, lit) in &subdivision {
                if let Some(pos) = group.iter().position(|&v| v == lit.var) {
                    let value = sigma >> (group.len() - 1 - pos) & 1 == 1;
                    if value != lit.positive {
                        arcs.push((selector_base[i] + sigma, z));
                    }
                }
            }
        }
    }
    let graph = SimpleGraph::directed(next - 1, arcs);
    graph.validate()?;
    Ok(KncInstance { graph, source: d.source, sink: d.sink, k })
}

/// Output of [`knc_to_annnonreach`].
#[derive(Debug, Clone)]
pub struct KncNonReach {
    pub dag: AnnotatedDag,
    /// Bits per selection group (vertex count padded to a power of two).
    pub bits: u32,
    /// Documented vertex bound `max(padded_n, 4)^5`.
    pub vertex_bound: u64,
}

/// Encodes k-neighborhood-cut as annotated non-reachability: every vertex
/// splits into in/out halves joined by k serial gadgets, where gadget i is
/// passable iff the vertex encoded by the i-th index group does not delete
/// it — realized as parallel log(n)-length paths, one per non-deleting
/// candidate, whose arcs spell the candidate's index. Index groups encoding
/// s, t, or padding indices delete nothing, matching the rule that
/// selections avoid the terminals.
pub fn knc_to_annnonreach(g: &SimpleGraph, s: u32, t: u32, k: u32) -> Result<KncNonReach> {
    if !g.directed {
        return Err(Error::precondition("expected a directed graph"));
    }
    g.validate()?;
    if k < 1 {
        return Err(Error::precondition("k must be at least 1"));
    }
    let n = g.vertex_count;
    let padded = n.next_power_of_two().max(2);
    let bits = padded.trailing_zeros();
    let m = k * bits;
    if k > n.saturating_sub(2) {
        // no legal selection exists; emit a one-arc always-path instance
        let dag = AnnotatedDag {
            vertex_count: 2,
            arcs: vec![AnnotatedArc::plain(1, 2)],
            source: 1,
            sink: 2,
            annotation_vars: m,
        };
        return Ok(KncNonReach { dag, bits, vertex_bound: (padded.max(4) as u64).pow(5) });
    }
    let mut next = 0u32;
    let mut vertex = || {
        next += 1;
        next
    };
    let v_in: Vec<u32> = (0..n).map(|_| vertex()).collect();
    let v_out: Vec<u32> = (0..n).map(|_| vertex()).collect();
    let mut arcs: Vec<AnnotatedArc> = Vec::new();
    for &(u, v, _) in &g.edges {
        arcs.push(AnnotatedArc::plain(v_out[(u - 1) as usize], v_in[(v - 1) as usize]));
    }
    let in_adj = g.in_adjacency();
    for u in 1..=n {
        if u == s || u == t {
            // terminal gadgets are never traversed; join directly
            arcs.push(AnnotatedArc::plain(v_in[(u - 1) as usize], v_out[(u - 1) as usize]));
            continue;
        }
        let stages: Vec<u32> = (0..=k).map(|_| vertex()).collect();
        arcs.push(AnnotatedArc::plain(v_in[(u - 1) as usize], stages[0]));
        arcs.push(AnnotatedArc::plain(stages[k as usize], v_out[(u - 1) as usize]));
        for i in 0..k {
            // parallel paths per candidate index that does not delete u
            for code in 0..padded {
                let candidate = code + 1;
                let selectable = candidate <= n && candidate != s && candidate != t;
                let deletes_u = selectable && in_adj[u as usize].contains(&candidate);
                if deletes_u {
                    continue;
                }
                // path of `bits` arcs spelling the code over group i
                let mut cur = stages[i as usize];
                for j in 0..bits {
                    let lit = Literal {
                        var: i * bits + j + 1,
                        positive: code >> (bits - 1 - j) & 1 == 1,
                    };
                    let target =
                        if j + 1 == bits { stages[i as usize + 1] } else { vertex() };
                    arcs.push(AnnotatedArc::annotated(cur, target, lit));
                    cur = target;
                }
            }
        }
    }
    let dag = AnnotatedDag {
        vertex_count: next,
        arcs,
        source: v_out[(s - 1) as usize],
        sink: v_in[(t - 1) as usize],
        annotation_vars: m,
    };
    dag.validate()?;
    let vertex_bound = (padded.max(4) as u64).pow(5);
    if (dag.vertex_count as u64) > vertex_bound {
        return Err(Error::invalid("vertex bound exceeded"));
    }
    Ok(KncNonReach { dag, bits, vertex_bound })
}

/// Dominating set as k-neighborhood-cut: two copies of the vertex set with
/// arcs `u -> v` for `v` in the closed neighborhood of `u`, a source over
/// the second copy and a sink under it. Selecting a dominating set in the
/// first copy deletes the entire second copy.
pub fn dominating_to_knc(g: &SimpleGraph, k: u32) -> Result<KncInstance> {
    if g.directed {
        return Err(Error::precondition("expected an undirected graph"));
    }
    g.validate()?;
    let n = g.vertex_count;
    let copy2 = |v: u32| n + v;
    let s = 2 * n + 1;
    let t = 2 * n + 2;
    let mut arcs = Vec::new();
    let adj = g.adjacency();
    for u in 1..=n {
        arcs.push((u, copy2(u)));
        for &v in &adj[u as usize] {
            arcs.push((u, copy2(v)));
        }
        arcs.push((s, copy2(u)));
        arcs.push((copy2(u), t));
    }
    let graph = SimpleGraph::directed(2 * n + 2, arcs);
    graph.validate()?;
    Ok(KncInstance { graph, source: s, sink: t, k })
}
