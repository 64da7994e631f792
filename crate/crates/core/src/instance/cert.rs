use crate::instance::{CnfInstance, SimpleGraph, Var};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseClass {
    TwoSat,
    Horn,
}

/// An explicit, verifiable witness of instance structure.
///
/// Certificates are mandatory outputs of structure-producing reductions;
/// verification never falls back to width computation (which is NP-hard in
/// general — brute-force width solvers live in the oracle module and only for
/// tiny graphs).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructureCertificate {
    /// A modulator plus a rooted forest over the remaining vertices whose
    /// ancestor-descendant closure covers all remaining edges. Depth counts
    /// vertices on a root-to-leaf path (a single root has depth 1).
    TreeDepthForest {
        modulator: BTreeSet<Var>,
        /// Forest vertex -> parent; `None` marks a root. The key set must be
        /// exactly the non-modulator vertices.
        parent: BTreeMap<Var, Option<Var>>,
        depth: u32,
    },
    /// A modulator plus an ordered bag list over the remaining vertices.
    PathDecomposition {
        modulator: BTreeSet<Var>,
        bags: Vec<BTreeSet<Var>>,
        width: u32,
    },
    /// A modulator whose removal leaves components of size at most `sigma`,
    /// each with at most `delta` neighbors in the modulator.
    Hub {
        modulator: BTreeSet<Var>,
        sigma: u32,
        delta: u32,
    },
    /// A strong backdoor to the given base class.
    Backdoor {
        variables: BTreeSet<Var>,
        base: BaseClass,
    },
}

impl StructureCertificate {
    /// The modulator / backdoor variable set.
    pub fn modulator(&self) -> &BTreeSet<Var> {
        match self {
            StructureCertificate::TreeDepthForest { modulator, .. } => modulator,
            StructureCertificate::PathDecomposition { modulator, .. } => modulator,
            StructureCertificate::Hub { modulator, .. } => modulator,
            StructureCertificate::Backdoor { variables, .. } => variables,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            StructureCertificate::TreeDepthForest { .. } => "tree-depth-forest",
            StructureCertificate::PathDecomposition { .. } => "path-decomposition",
            StructureCertificate::Hub { .. } => "hub",
            StructureCertificate::Backdoor { base: BaseClass::TwoSat, .. } => "backdoor-2sat",
            StructureCertificate::Backdoor { base: BaseClass::Horn, .. } => "backdoor-horn",
        }
    }
}

/// Checks a tree-depth forest certificate against a graph.
///
/// True iff the forest covers exactly the non-modulator vertices, its depth
/// is at most the claimed value, and every edge of `graph - modulator` joins
/// an ancestor-descendant pair. Malformed parent maps (cycles, dangling
/// parents) make the certificate invalid rather than being an error.
pub fn verify_tree_depth_forest(graph: &SimpleGraph, cert: &StructureCertificate) -> bool {
    let StructureCertificate::TreeDepthForest { modulator, parent, depth } = cert else {
        return false;
    };
    let expected: BTreeSet<Var> =
        (1..=graph.vertex_count).filter(|v| !modulator.contains(v)).collect();
    let forest: BTreeSet<Var> = parent.keys().copied().collect();
    if forest != expected {
        return false;
    }
    // Depth of every vertex, detecting cycles and dangling parents.
    let mut level: BTreeMap<Var, u32> = BTreeMap::new();
    for &v in parent.keys() {
        let mut chain = vec![];
        let mut cur = v;
        loop {
            if level.contains_key(&cur) {
                break;
            }
            if chain.contains(&cur) {
                return false; // cycle
            }
            chain.push(cur);
            match parent.get(&cur) {
                None => return false, // parent outside the forest
                Some(None) => break,
                Some(Some(p)) => cur = *p,
            }
        }
        let mut d = level.get(&cur).copied().unwrap_or(0);
        for &u in chain.iter().rev() {
            d += 1;
            level.insert(u, d);
            if d > *depth {
                return false;
            }
        }
    }
    // Every surviving edge must join an ancestor-descendant pair.
    let ancestor = |mut a: Var, b: Var| -> bool {
        // does walking up from a reach b?
        loop {
            if a == b {
                return true;
            }
            match parent.get(&a).copied().flatten() {
                Some(p) => a = p,
                None => return false,
            }
        }
    };
    for &(u, v, _) in &graph.edges {
        if modulator.contains(&u) || modulator.contains(&v) {
            continue;
        }
        if !(ancestor(u, v) || ancestor(v, u)) {
            return false;
        }
    }
    true
}

/// Checks a path decomposition certificate against a graph.
///
/// True iff the bags cover all non-modulator vertices and all edges of
/// `graph - modulator`, each vertex's bags are contiguous, and the maximum
/// bag size minus one is at most the claimed width.
pub fn verify_path_decomposition(graph: &SimpleGraph, cert: &StructureCertificate) -> bool {
    let StructureCertificate::PathDecomposition { modulator, bags, width } = cert else {
        return false;
    };
    let remainder: BTreeSet<Var> =
        (1..=graph.vertex_count).filter(|v| !modulator.contains(v)).collect();
    let mut first: BTreeMap<Var, usize> = BTreeMap::new();
    let mut last: BTreeMap<Var, usize> = BTreeMap::new();
    for (i, bag) in bags.iter().enumerate() {
        if bag.len() > *width as usize + 1 {
            return false;
        }
        for &v in bag {
            if !remainder.contains(&v) {
                return false;
            }
            first.entry(v).or_insert(i);
            last.insert(v, i);
        }
    }
    if first.keys().copied().collect::<BTreeSet<_>>() != remainder && !remainder.is_empty() {
        return false;
    }
    // Contiguity: v must occur in every bag between its first and last.
    for (&v, &f) in &first {
        for bag in &bags[f..=last[&v]] {
            if !bag.contains(&v) {
                return false;
            }
        }
    }
    for &(u, v, _) in &graph.edges {
        if modulator.contains(&u) || modulator.contains(&v) {
            continue;
        }
        if !bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return false;
        }
    }
    true
}

/// Checks a hub certificate: components of `graph - modulator`, computed
/// independently here, must have size at most sigma and at most delta
/// neighbors in the modulator.
pub fn verify_hub(graph: &SimpleGraph, cert: &StructureCertificate) -> bool {
    let StructureCertificate::Hub { modulator, sigma, delta } = cert else {
        return false;
    };
    let alive: BTreeSet<u32> =
        (1..=graph.vertex_count).filter(|v| !modulator.contains(v)).collect();
    let adj = graph.adjacency();
    for comp in graph.components_among(&alive) {
        if comp.len() > *sigma as usize {
            return false;
        }
        let mut hub_neighbors = BTreeSet::new();
        for &v in &comp {
            for &u in &adj[v as usize] {
                if modulator.contains(&u) {
                    hub_neighbors.insert(u);
                }
            }
        }
        if hub_neighbors.len() > *delta as usize {
            return false;
        }
    }
    true
}

/// Checks a strong backdoor certificate syntactically.
///
/// For 2-SAT: every clause has at most 2 literals over non-backdoor
/// variables. For Horn: every clause has at most 1 positive literal over
/// non-backdoor variables. These syntactic checks are exactly the strong
/// backdoor property for these base classes.
pub fn verify_backdoor(cnf: &CnfInstance, cert: &StructureCertificate) -> bool {
    let StructureCertificate::Backdoor { variables, base } = cert else {
        return false;
    };
    cnf.clauses.iter().all(|c| {
        let outside = c.literals.iter().filter(|l| !variables.contains(&l.var));
        match base {
            BaseClass::TwoSat => outside.count() <= 2,
            BaseClass::Horn => outside.filter(|l| l.positive).count() <= 1,
        }
    })
}
