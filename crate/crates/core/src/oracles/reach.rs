use super::OracleCaps;
use crate::instance::{AnnotatedDag, Assignment, Literal};
use crate::{Error, Result};

/// Reusable reachability checker over an annotated DAG: builds the adjacency
/// once, then answers per-assignment queries by filtering arcs on the fly
/// ("only keep arcs with no annotation or with an annotation set to True").
pub struct ReachChecker {
    adj: Vec<Vec<(u32, Option<Literal>)>>,
    source: u32,
    sink: u32,
    vertex_count: u32,
}

impl ReachChecker {
    pub fn new(dag: &AnnotatedDag) -> Self {
        let mut adj = vec![Vec::new(); dag.vertex_count as usize + 1];
        for a in &dag.arcs {
            adj[a.from as usize].push((a.to, a.annotation));
        }
        ReachChecker { adj, source: dag.source, sink: dag.sink, vertex_count: dag.vertex_count }
    }

    /// Is the sink reachable from the source in the filtered graph?
    pub fn path_exists(&self, a: &Assignment) -> bool {
        if self.source == self.sink {
            return true;
        }
        let mut seen = vec![false; self.vertex_count as usize + 1];
        let mut stack = vec![self.source];
        seen[self.source as usize] = true;
        while let Some(u) = stack.pop() {
            for &(v, ann) in &self.adj[u as usize] {
                if ann.map_or(true, |l| l.eval(a)) && !seen[v as usize] {
                    if v == self.sink {
                        return true;
                    }
                    seen[v as usize] = true;
                    stack.push(v);
                }
            }
        }
        false
    }
}

fn check_cap(dag: &AnnotatedDag, caps: &OracleCaps) -> Result<()> {
    if dag.annotation_vars > caps.ann_vars {
        return Err(Error::TooLarge {
            what: "annotation variables",
            actual: dag.annotation_vars as u64,
            cap: caps.ann_vars as u64,
        });
    }
    Ok(())
}

/// First assignment (in lexicographic order) whose filtered graph has an
/// s -> t path, or `None`.
pub fn solve_ann_reach(dag: &AnnotatedDag, caps: &OracleCaps) -> Result<Option<Assignment>> {
    check_cap(dag, caps)?;
    let checker = ReachChecker::new(dag);
    Ok(Assignment::enumerate(dag.annotation_vars).find(|a| checker.path_exists(a)))
}

/// First assignment whose filtered graph has no s -> t path, or `None`.
pub fn solve_ann_nonreach(dag: &AnnotatedDag, caps: &OracleCaps) -> Result<Option<Assignment>> {
    check_cap(dag, caps)?;
    let checker = ReachChecker::new(dag);
    Ok(Assignment::enumerate(dag.annotation_vars).find(|a| !checker.path_exists(a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::AnnotatedArc;

    #[test]
    fn unannotated_arc_always_reaches() {
        let d = AnnotatedDag {
            vertex_count: 2,
            arcs: vec![AnnotatedArc::plain(1, 2)],
            source: 1,
            sink: 2,
            annotation_vars: 2,
        };
        let caps = OracleCaps::default();
        assert!(solve_ann_reach(&d, &caps).unwrap().is_some());
        assert!(solve_ann_nonreach(&d, &caps).unwrap().is_none());
    }

    #[test]
    fn single_annotated_arc_splits_both_ways() {
        let d = AnnotatedDag {
            vertex_count: 2,
            arcs: vec![AnnotatedArc::annotated(1, 2, Literal::pos(1))],
            source: 1,
            sink: 2,
            annotation_vars: 1,
        };
        let caps = OracleCaps::default();
        let reach = solve_ann_reach(&d, &caps).unwrap().unwrap();
        assert!(reach.get(1));
        let nonreach = solve_ann_nonreach(&d, &caps).unwrap().unwrap();
        assert!(!nonreach.get(1));
    }

    #[test]
    fn witnesses_check_out_under_plain_bfs() {
        use rand::{Rng, SeedableRng};
        let caps = OracleCaps::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for _ in 0..200 {
            let n = rng.gen_range(2..=8u32);
            let m = rng.gen_range(0..=4u32);
            let mut arcs = Vec::new();
            for u in 1..n {
                for v in u + 1..=n {
                    if rng.gen_bool(0.4) {
                        let ann = if m > 0 && rng.gen_bool(0.5) {
                            Some(Literal { var: rng.gen_range(1..=m), positive: rng.gen() })
                        } else {
                            None
                        };
                        arcs.push(AnnotatedArc { from: u, to: v, annotation: ann });
                    }
                }
            }
            let d = AnnotatedDag { vertex_count: n, arcs, source: 1, sink: n, annotation_vars: m };
            d.validate().unwrap();
            let checker = ReachChecker::new(&d);
            let reach = solve_ann_reach(&d, &caps).unwrap();
            let nonreach = solve_ann_nonreach(&d, &caps).unwrap();
            if let Some(a) = &reach {
                assert!(checker.path_exists(a));
            }
            if let Some(a) = &nonreach {
                assert!(!checker.path_exists(a));
            }
            // Both problems may be YES simultaneously, but never through the
            // same assignment, and at least one of them is always YES.
            if let (Some(r), Some(nr)) = (&reach, &nonreach) {
                assert_ne!(r, nr);
            }
            assert!(reach.is_some() || nonreach.is_some());
        }
    }
}
