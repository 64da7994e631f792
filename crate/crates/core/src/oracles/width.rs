use super::OracleCaps;
use crate::instance::SimpleGraph;
use crate::{Error, Result};
use std::collections::HashMap;

fn check(g: &SimpleGraph, caps: &OracleCaps) -> Result<()> {
    if g.vertex_count > caps.width_vertices {
        return Err(Error::TooLarge {
            what: "width-solver vertices",
            actual: g.vertex_count as u64,
            cap: caps.width_vertices as u64,
        });
    }
    Ok(())
}

/// Exact tree-depth by exhaustive recursion with memoization on vertex
/// subsets. Depth counts vertices on a root-to-leaf path: a single vertex
/// has tree-depth 1, K_n has tree-depth n.
pub fn tree_depth_bruteforce(g: &SimpleGraph, caps: &OracleCaps) -> Result<u32> {
    check(g, caps)?;
    let n = g.vertex_count as usize;
    let mut nb = vec![0u32; n];
    for &(u, v, _) in &g.edges {
        nb[u as usize - 1] |= 1 << (v - 1);
        nb[v as usize - 1] |= 1 << (u - 1);
    }
    let mut memo: HashMap<u32, u32> = HashMap::new();
    fn td(mask: u32, nb: &[u32], memo: &mut HashMap<u32, u32>) -> u32 {
        if mask == 0 {
            return 0;
        }
        if let Some(&d) = memo.get(&mask) {
            return d;
        }
        // split into connected components first
        let first = mask.trailing_zeros();
        let mut comp = 1u32 << first;
        loop {
            let mut grown = comp;
            let mut bits = comp;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grown |= nb[v] & mask;
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        let d = if comp != mask {
            td(comp, nb, memo).max(td(mask & !comp, nb, memo))
        } else {
            let mut best = u32::MAX;
            let mut bits = mask;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                best = best.min(1 + td(mask & !(1 << v), nb, memo));
            }
            best
        };
        memo.insert(mask, d);
        d
    }
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    Ok(td(full, &nb, &mut memo))
}

/// Exact pathwidth via the vertex-separation formulation: a subset DP over
/// placement prefixes, where the cost of a prefix is the number of its
/// vertices with a neighbor outside.
pub fn pathwidth_bruteforce(g: &SimpleGraph, caps: &OracleCaps) -> Result<u32> {
    check(g, caps)?;
    let n = g.vertex_count as usize;
    if n == 0 {
        return Ok(0);
    }
    let mut nb = vec![0u32; n];
    for &(u, v, _) in &g.edges {
        nb[u as usize - 1] |= 1 << (v - 1);
        nb[v as usize - 1] |= 1 << (u - 1);
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let boundary = |mask: u32| -> u32 {
        let mut count = 0;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if nb[v] & !mask & full != 0 {
                count += 1;
            }
        }
        count
    };
    let mut f = vec![u32::MAX; (full as usize) + 1];
    f[0] = 0;
    for mask in 1..=full {
        let b = boundary(mask);
        let mut best = u32::MAX;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            best = best.min(f[(mask & !(1 << v)) as usize].max(b));
        }
        f[mask as usize] = best;
    }
    Ok(f[full as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u32) -> SimpleGraph {
        SimpleGraph::undirected(n, (1..n).map(|i| (i, i + 1)).collect())
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
    fn path_tree_depths() {
        let caps = OracleCaps::default();
        assert_eq!(tree_depth_bruteforce(&path(1), &caps).unwrap(), 1);
        assert_eq!(tree_depth_bruteforce(&path(2), &caps).unwrap(), 2);
        assert_eq!(tree_depth_bruteforce(&path(3), &caps).unwrap(), 2);
        assert_eq!(tree_depth_bruteforce(&path(4), &caps).unwrap(), 3);
        assert_eq!(tree_depth_bruteforce(&path(7), &caps).unwrap(), 3);
        assert_eq!(tree_depth_bruteforce(&path(8), &caps).unwrap(), 4);
    }

    #[test]
    fn complete_graph_tree_depth_is_n() {
        let caps = OracleCaps::default();
        for n in 1..=6 {
            assert_eq!(tree_depth_bruteforce(&complete(n), &caps).unwrap(), n);
        }
    }

    #[test]
    fn paths_have_pathwidth_one() {
        let caps = OracleCaps::default();
        for n in 2..=8 {
            assert_eq!(pathwidth_bruteforce(&path(n), &caps).unwrap(), 1);
        }
    }

    #[test]
    fn complete_graph_pathwidth_is_n_minus_one() {
        let caps = OracleCaps::default();
        for n in 1..=6 {
            assert_eq!(pathwidth_bruteforce(&complete(n), &caps).unwrap(), n - 1);
        }
    }

    #[test]
    fn cap_enforced() {
        let caps = OracleCaps::default();
        assert!(tree_depth_bruteforce(&path(11), &caps).is_err());
        assert!(pathwidth_bruteforce(&path(11), &caps).is_err());
    }
}
