use super::OracleCaps;
use crate::instance::{CspInstance, SimpleGraph};
use crate::{Error, Result};
use std::collections::BTreeSet;

fn check_vertices(n: u32, cap: u32, what: &'static str) -> Result<()> {
    if n > cap {
        return Err(Error::TooLarge { what, actual: n as u64, cap: cap as u64 });
    }
    Ok(())
}

/// Exact q-coloring by backtracking in vertex order, trying colors
/// ascending; returns the lexicographically first proper coloring
/// (`result[v-1]` is the color of `v`, in `1..=q`).
pub fn solve_qcoloring_bruteforce(
    g: &SimpleGraph,
    q: u32,
    caps: &OracleCaps,
) -> Result<Option<Vec<u32>>> {
    check_vertices(g.vertex_count, caps.coloring_vertices, "coloring vertices")?;
    let n = g.vertex_count as usize;
    let adj = g.adjacency();
    let mut colors = vec![0u32; n + 1];
    fn go(v: usize, n: usize, q: u32, adj: &[Vec<u32>], colors: &mut [u32]) -> bool {
        if v > n {
            return true;
        }
        'color: for c in 1..=q {
            for &u in &adj[v] {
                if colors[u as usize] == c {
                    continue 'color;
                }
            }
            colors[v] = c;
            if go(v + 1, n, q, adj, colors) {
                return true;
            }
            colors[v] = 0;
        }
        false
    }
    if go(1, n, q, &adj, &mut colors) {
        Ok(Some(colors[1..].to_vec()))
    } else {
        Ok(None)
    }
}

/// Exact max-cut: the lexicographically first optimal bipartition (vertex 1
/// pinned to side `false`) and the total weight of cut edges.
pub fn solve_maxcut_bruteforce(
    g: &SimpleGraph,
    caps: &OracleCaps,
) -> Result<(Vec<bool>, u64)> {
    check_vertices(g.vertex_count, caps.maxcut_vertices, "max-cut vertices")?;
    let n = g.vertex_count as usize;
    if n == 0 {
        return Ok((vec![], 0));
    }
    let mut best_sides = vec![false; n];
    let mut best = cut_weight(g, &best_sides);
    for rank in 1..1u64 << (n - 1) {
        let mut sides = vec![false; n];
        for (i, side) in sides.iter_mut().skip(1).enumerate() {
            *side = rank >> (n - 2 - i) & 1 == 1;
        }
        let w = cut_weight(g, &sides);
        if w > best {
            best = w;
            best_sides = sides;
        }
    }
    Ok((best_sides, best))
}

pub(crate) fn cut_weight(g: &SimpleGraph, sides: &[bool]) -> u64 {
    g.edges
        .iter()
        .filter(|&&(u, v, _)| sides[u as usize - 1] != sides[v as usize - 1])
        .map(|&(_, _, w)| w)
        .sum()
}

/// Exact k-neighborhood-cut on a DAG: find `k` vertices other than `s`, `t`
/// whose out-neighborhoods (excluding `s`, `t`, which are never deleted),
/// once removed, leave `t` unreachable from `s`. Returns the
/// lexicographically first solution.
pub fn solve_knc_bruteforce(
    g: &SimpleGraph,
    s: u32,
    t: u32,
    k: u32,
    caps: &OracleCaps,
) -> Result<Option<Vec<u32>>> {
    debug_assert!(g.directed);
    check_vertices(g.vertex_count, caps.selection_vertices, "k-neighborhood-cut vertices")?;
    let candidates: Vec<u32> = (1..=g.vertex_count).filter(|&v| v != s && v != t).collect();
    if (k as usize) > candidates.len() {
        return Ok(None);
    }
    let adj = g.adjacency();
    let mut found = None;
    for_each_combination(&candidates, k as usize, &mut |sel| {
        if found.is_some() {
            return;
        }
        let mut deleted = vec![false; g.vertex_count as usize + 1];
        for &v in sel {
            for &u in &adj[v as usize] {
                if u != s && u != t {
                    deleted[u as usize] = true;
                }
            }
        }
        if !path_exists_avoiding(&adj, s, t, &deleted) {
            found = Some(sel.to_vec());
        }
    });
    Ok(found)
}

fn path_exists_avoiding(adj: &[Vec<u32>], s: u32, t: u32, deleted: &[bool]) -> bool {
    if deleted[s as usize] || deleted[t as usize] {
        return false;
    }
    if s == t {
        return true;
    }
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![s];
    seen[s as usize] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u as usize] {
            if !deleted[v as usize] && !seen[v as usize] {
                if v == t {
                    return true;
                }
                seen[v as usize] = true;
                stack.push(v);
            }
        }
    }
    false
}

/// All k-combinations of `items` in lexicographic order.
fn for_each_combination(items: &[u32], k: usize, f: &mut impl FnMut(&[u32])) {
    let mut idx: Vec<usize> = (0..k).collect();
    let n = items.len();
    if k > n {
        return;
    }
    loop {
        let sel: Vec<u32> = idx.iter().map(|&i| items[i]).collect();
        f(&sel);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - (k - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            return;
        }
    }
}

/// Graph degeneracy via min-degree peeling.
pub fn degeneracy(g: &SimpleGraph) -> u32 {
    let n = g.vertex_count as usize;
    let adj = g.adjacency();
    let mut alive: Vec<bool> = vec![true; n + 1];
    let mut deg: Vec<usize> = (0..=n).map(|v| adj[v].len()).collect();
    let mut best = 0;
    for _ in 0..n {
        let v = (1..=n).filter(|&v| alive[v]).min_by_key(|&v| deg[v]).unwrap();
        best = best.max(deg[v] as u32);
        alive[v] = false;
        for &u in &adj[v] {
            if alive[u as usize] {
                deg[u as usize] -= 1;
            }
        }
    }
    best
}

/// Exact degenerate-deletion: the lexicographically first vertex set of size
/// at most `k` (smaller sets first) whose removal leaves an `r`-degenerate
/// graph. Duplicate-free; "at most k" matches the index-decoder semantics of
/// the circuit reduction, where repeated indices only weaken the set.
pub fn solve_degdel_bruteforce(
    g: &SimpleGraph,
    r: u32,
    k: u32,
    caps: &OracleCaps,
) -> Result<Option<Vec<u32>>> {
    check_vertices(g.vertex_count, caps.selection_vertices, "degenerate-deletion vertices")?;
    let all: Vec<u32> = (1..=g.vertex_count).collect();
    for size in 0..=k as usize {
        let mut found = None;
        for_each_combination(&all, size, &mut |sel| {
            if found.is_some() {
                return;
            }
            let removed: BTreeSet<u32> = sel.iter().copied().collect();
            if degeneracy(&g.without_vertices(&removed)) <= r {
                found = Some(sel.to_vec());
            }
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Exact dominating set of size at most `k` (every vertex is in the set or
/// adjacent to it), lexicographically first.
pub fn solve_domset_bruteforce(
    g: &SimpleGraph,
    k: u32,
    caps: &OracleCaps,
) -> Result<Option<Vec<u32>>> {
    check_vertices(g.vertex_count, caps.selection_vertices, "dominating-set vertices")?;
    let adj = g.adjacency();
    let all: Vec<u32> = (1..=g.vertex_count).collect();
    for size in 0..=k.min(g.vertex_count) as usize {
        let mut found = None;
        for_each_combination(&all, size, &mut |sel| {
            if found.is_some() {
                return;
            }
            let mut covered = vec![false; g.vertex_count as usize + 1];
            for &v in sel {
                covered[v as usize] = true;
                for &u in &adj[v as usize] {
                    covered[u as usize] = true;
                }
            }
            if covered[1..].iter().all(|&c| c) {
                found = Some(sel.to_vec());
            }
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Exhaustive CSP solving by backtracking over the allowed-value lists.
pub fn solve_csp_bruteforce(csp: &CspInstance, caps: &OracleCaps) -> Result<Option<Vec<u32>>> {
    let mut space: u64 = 1;
    for set in &csp.allowed {
        space = space.saturating_mul(set.len() as u64);
        if space > caps.csp_space {
            return Err(Error::TooLarge { what: "CSP search space", actual: space, cap: caps.csp_space });
        }
    }
    let n = csp.num_vars() as usize;
    let mut values = vec![0u32; n];
    fn go(csp: &CspInstance, i: usize, values: &mut Vec<u32>) -> bool {
        if i == values.len() {
            return csp.eval(values);
        }
        let allowed: Vec<u32> = csp.allowed[i].iter().copied().collect();
        for v in allowed {
            values[i] = v;
            // prune on constraints fully inside the prefix
            let consistent = csp.constraints.iter().all(|c| {
                if c.scope.iter().any(|&s| s as usize > i + 1) {
                    return true;
                }
                let tuple: Vec<u32> = c.scope.iter().map(|&s| values[s as usize - 1]).collect();
                c.accepted.contains(&tuple)
            });
            if consistent && go(csp, i + 1, values) {
                return true;
            }
        }
        false
    }
    if go(csp, 0, &mut values) {
        Ok(Some(values))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SimpleGraph {
        SimpleGraph::undirected(3, vec![(1, 2), (2, 3), (1, 3)])
    }

    fn complete(n: u32) -> SimpleGraph {
        let mut edges = vec![];
        for u in 1..=n {
            for v in u + 1..=n {
                edges.push((u, v));
            }
        }
        SimpleGraph::undirected(n, edges)
    }

    #[test]
    fn triangle_three_colorable_not_two() {
        let caps = OracleCaps::default();
        assert!(solve_qcoloring_bruteforce(&triangle(), 3, &caps).unwrap().is_some());
        assert!(solve_qcoloring_bruteforce(&triangle(), 2, &caps).unwrap().is_none());
    }

    #[test]
    fn k4_maxcut_is_four() {
        let caps = OracleCaps::default();
        let (_, w) = solve_maxcut_bruteforce(&complete(4), &caps).unwrap();
        assert_eq!(w, 4);
    }

    #[test]
    fn complete_graph_degeneracy() {
        for r in 1..=4u32 {
            assert_eq!(degeneracy(&complete(r + 2)), r + 1);
        }
    }

    #[test]
    fn degdel_deletes_one_vertex_of_k4_for_degeneracy_two() {
        let caps = OracleCaps::default();
        let sol = solve_degdel_bruteforce(&complete(4), 2, 1, &caps).unwrap().unwrap();
        assert_eq!(sol, vec![1]);
        // already 2-degenerate: empty deletion preferred
        let sol = solve_degdel_bruteforce(&triangle(), 2, 1, &caps).unwrap().unwrap();
        assert!(sol.is_empty());
    }

    #[test]
    fn domset_on_complete_and_empty_graphs() {
        let caps = OracleCaps::default();
        assert!(solve_domset_bruteforce(&complete(5), 1, &caps).unwrap().is_some());
        let empty = SimpleGraph::undirected(2, vec![]);
        assert!(solve_domset_bruteforce(&empty, 1, &caps).unwrap().is_none());
    }

    #[test]
    fn knc_requires_deleting_the_middle() {
        // s=1 -> 2 -> t=3, plus 4 -> 2. Selecting 4 deletes 2.
        let g = SimpleGraph::directed(4, vec![(1, 2), (2, 3), (4, 2)]);
        let caps = OracleCaps::default();
        let sol = solve_knc_bruteforce(&g, 1, 3, 1, &caps).unwrap().unwrap();
        assert_eq!(sol, vec![4]);
        // s and t are immune: selecting 2 deletes nothing relevant (its only
        // out-neighbor is t), so without vertex 4 there is no solution.
        let g2 = SimpleGraph::directed(3, vec![(1, 2), (2, 3)]);
        assert!(solve_knc_bruteforce(&g2, 1, 3, 1, &caps).unwrap().is_none());
    }
}
