//! Seeded generators for instances with planted, certified structure.
//!
//! Every generator is deterministic per seed, and every emitted certificate
//! verifies by construction (the unit tests re-check this).

use super::Instance;
use crate::instance::{
    AnnotatedArc, AnnotatedDag, BaseClass, Circuit, Clause, CnfInstance, Literal,
    SimpleGraph, StructureCertificate, Var,
};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlantedKind {
    CnfTdModulator,
    CnfHub,
    Cnf2satBackdoor,
    CnfHornBackdoor,
    CnfPwModulator,
    CircuitDepthBounded,
    AnnotatedDag,
    Graph,
}

impl PlantedKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "cnf-td-modulator" => PlantedKind::CnfTdModulator,
            "cnf-hub" => PlantedKind::CnfHub,
            "cnf-2sat-backdoor" => PlantedKind::Cnf2satBackdoor,
            "cnf-horn-backdoor" => PlantedKind::CnfHornBackdoor,
            "cnf-pw-modulator" => PlantedKind::CnfPwModulator,
            "circuit-depth-bounded" => PlantedKind::CircuitDepthBounded,
            "annotated-dag" => PlantedKind::AnnotatedDag,
            "graph" => PlantedKind::Graph,
            other => return Err(Error::precondition(format!("unknown generator kind {other:?}"))),
        })
    }
}

/// Generator knobs. Field meaning varies slightly by kind; see `gen_planted`.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct GenParams {
    /// Non-modulator variables (CNF kinds), inputs (circuits), vertices
    /// (graphs and annotated DAGs).
    pub num_vars: u32,
    /// Modulator / backdoor size for CNF kinds.
    pub modulator_size: u32,
    pub clauses: u32,
    /// Maximum clause arity.
    pub arity: u32,
    /// Forest depth (tree-depth kinds) or circuit depth.
    pub depth: u32,
    /// Path decomposition width.
    pub width: u32,
    pub sigma: u32,
    pub delta: u32,
    /// Annotation variables of an annotated DAG.
    pub annotation_vars: u32,
    /// Edge/arc probability.
    pub density: f64,
    /// Use clause/edge weights above 1.
    pub weighted: bool,
    /// Restrict circuits to AND/OR (no negations).
    pub monotone: bool,
    /// Normalize circuits to the fan-in-2 {AND, NOT} basis.
    pub and_not_basis: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            num_vars: 6,
            modulator_size: 3,
            clauses: 8,
            arity: 3,
            depth: 2,
            width: 2,
            sigma: 2,
            delta: 2,
            annotation_vars: 4,
            density: 0.4,
            weighted: false,
            monotone: false,
            and_not_basis: true,
        }
    }
}

impl GenParams {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |e: std::num::ParseIntError| Error::precondition(format!("bad value: {e}"));
        match key {
            "num_vars" | "n" => self.num_vars = value.parse().map_err(bad)?,
            "modulator_size" | "mod" => self.modulator_size = value.parse().map_err(bad)?,
            "clauses" | "m" => self.clauses = value.parse().map_err(bad)?,
            "arity" | "k" => self.arity = value.parse().map_err(bad)?,
            "depth" | "c" => self.depth = value.parse().map_err(bad)?,
            "width" | "w" => self.width = value.parse().map_err(bad)?,
            "sigma" => self.sigma = value.parse().map_err(bad)?,
            "delta" => self.delta = value.parse().map_err(bad)?,
            "annotation_vars" | "ann" => self.annotation_vars = value.parse().map_err(bad)?,
            "density" => {
                self.density = value
                    .parse()
                    .map_err(|e| Error::precondition(format!("bad value: {e}")))?
            }
            "weighted" => self.weighted = value == "true" || value == "1",
            "monotone" => self.monotone = value == "true" || value == "1",
            "and_not_basis" => self.and_not_basis = value == "true" || value == "1",
            other => return Err(Error::precondition(format!("unknown param {other:?}"))),
        }
        Ok(())
    }
}

/// Deterministically generates an instance with a planted, verified
/// structure certificate.
pub fn gen_planted(kind: PlantedKind, params: &GenParams, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inst = match kind {
        PlantedKind::CnfTdModulator => Instance::Cnf(gen_td_modulator(params, &mut rng)?),
        PlantedKind::CnfHub => Instance::Cnf(gen_hub(params, &mut rng)?),
        PlantedKind::Cnf2satBackdoor => {
            Instance::Cnf(gen_backdoor(params, BaseClass::TwoSat, &mut rng)?)
        }
        PlantedKind::CnfHornBackdoor => {
            Instance::Cnf(gen_backdoor(params, BaseClass::Horn, &mut rng)?)
        }
        PlantedKind::CnfPwModulator => Instance::Cnf(gen_pw_modulator(params, &mut rng)?),
        PlantedKind::CircuitDepthBounded => Instance::Circuit(gen_circuit(params, &mut rng)),
        PlantedKind::AnnotatedDag => Instance::AnnotatedDag(gen_adag(params, &mut rng)),
        PlantedKind::Graph => Instance::Graph(gen_graph(params, &mut rng)),
    };
    Ok(inst)
}

fn random_polarity(rng: &mut ChaCha8Rng, var: Var) -> Literal {
    if rng.gen() {
        Literal::pos(var)
    } else {
        Literal::neg(var)
    }
}

fn clause_weight(params: &GenParams, rng: &mut ChaCha8Rng) -> u64 {
    if params.weighted {
        rng.gen_range(1..=3)
    } else {
        1
    }
}

/// CNF whose primal graph minus the modulator is covered by a random rooted
/// forest of bounded depth: the non-modulator variables of every clause lie
/// on one root-to-node chain.
fn gen_td_modulator(params: &GenParams, rng: &mut ChaCha8Rng) -> Result<CnfInstance> {
    let d = params.modulator_size;
    let f = params.num_vars;
    let depth_bound = params.depth.max(1);
    let modulator: BTreeSet<Var> = (1..=d).collect();
    // random forest over vars d+1..=d+f
    let mut parent: BTreeMap<Var, Option<Var>> = BTreeMap::new();
    let mut level: BTreeMap<Var, u32> = BTreeMap::new();
    for v in d + 1..=d + f {
        let candidates: Vec<Var> =
            level.iter().filter(|(_, &l)| l < depth_bound).map(|(&u, _)| u).collect();
        if !candidates.is_empty() && rng.gen_bool(0.7) {
            let p = candidates[rng.gen_range(0..candidates.len())];
            parent.insert(v, Some(p));
            level.insert(v, level[&p] + 1);
        } else {
            parent.insert(v, None);
            level.insert(v, 1);
        }
    }
    let depth = level.values().copied().max().unwrap_or(0);
    // chains: root path per variable
    let chain = |mut v: Var| -> Vec<Var> {
        let mut path = vec![v];
        while let Some(Some(p)) = parent.get(&v) {
            path.push(*p);
            v = *p;
        }
        path
    };
    let mut clauses = Vec::new();
    for _ in 0..params.clauses {
        let mut lits = Vec::new();
        if f > 0 && rng.gen_bool(0.85) {
            let v = d + 1 + rng.gen_range(0..f);
            let path = chain(v);
            let take = rng.gen_range(1..=path.len().min(params.arity as usize));
            for &u in path.iter().take(take) {
                lits.push(random_polarity(rng, u));
            }
        }
        let room = (params.arity as usize).saturating_sub(lits.len());
        if d > 0 {
            for _ in 0..rng.gen_range(0..=room.min(d as usize)) {
                let u = rng.gen_range(1..=d);
                if !lits.iter().any(|l: &Literal| l.var == u) {
                    lits.push(random_polarity(rng, u));
                }
            }
        }
        if lits.is_empty() {
            continue;
        }
        clauses.push(Clause::with_weight(lits, clause_weight(params, rng)));
    }
    let cert = StructureCertificate::TreeDepthForest { modulator, parent, depth };
    let cnf = CnfInstance::with_certificate(d + f, clauses, cert);
    debug_assert!(cnf.verify_certificate());
    Ok(cnf)
}

/// CNF whose primal graph has a planted (sigma, delta)-hub.
fn gen_hub(params: &GenParams, rng: &mut ChaCha8Rng) -> Result<CnfInstance> {
    let d = params.modulator_size;
    let modulator: BTreeSet<Var> = (1..=d).collect();
    let mut next = d + 1;
    let mut clauses = Vec::new();
    let components = params.num_vars.div_ceil(params.sigma.max(1));
    for _ in 0..components {
        let size = rng.gen_range(1..=params.sigma.max(1));
        let comp: Vec<Var> = (next..next + size).collect();
        next += size;
        let mut neighbors: Vec<Var> = (1..=d).collect();
        for i in (1..neighbors.len()).rev() {
            neighbors.swap(i, rng.gen_range(0..=i));
        }
        neighbors.truncate(rng.gen_range(0..=params.delta.min(d)) as usize);
        // clauses touching this component
        for _ in 0..rng.gen_range(1..=3) {
            let first = comp[rng.gen_range(0..comp.len())];
            let mut lits = vec![random_polarity(rng, first)];
            for &u in &comp {
                if lits.len() < params.arity as usize
                    && rng.gen_bool(0.4)
                    && !lits.iter().any(|l| l.var == u)
                {
                    lits.push(random_polarity(rng, u));
                }
            }
            for &u in &neighbors {
                if lits.len() < params.arity.max(2) as usize && rng.gen_bool(0.6) {
                    lits.push(random_polarity(rng, u));
                }
            }
            clauses.push(Clause::with_weight(lits, clause_weight(params, rng)));
        }
    }
    // a few modulator-only clauses
    if d > 0 {
        for _ in 0..rng.gen_range(0..=2) {
            let mut lits = Vec::new();
            for _ in 0..rng.gen_range(1..=params.arity.min(d)) {
                let u = rng.gen_range(1..=d);
                if !lits.iter().any(|l: &Literal| l.var == u) {
                    lits.push(random_polarity(rng, u));
                }
            }
            clauses.push(Clause::with_weight(lits, clause_weight(params, rng)));
        }
    }
    let cert = StructureCertificate::Hub {
        modulator,
        sigma: params.sigma.max(1),
        delta: params.delta,
    };
    let cnf = CnfInstance::with_certificate(next - 1, clauses, cert);
    debug_assert!(cnf.verify_certificate());
    Ok(cnf)
}

/// CNF with a planted strong backdoor: every clause keeps at most two
/// (2-SAT) or at most one positive (Horn) literal outside the backdoor.
fn gen_backdoor(
    params: &GenParams,
    base: BaseClass,
    rng: &mut ChaCha8Rng,
) -> Result<CnfInstance> {
    let b = params.modulator_size;
    let n = params.num_vars;
    let variables: BTreeSet<Var> = (1..=b).collect();
    let mut clauses = Vec::new();
    for _ in 0..params.clauses {
        let mut lits: Vec<Literal> = Vec::new();
        match base {
            BaseClass::TwoSat => {
                for _ in 0..rng.gen_range(0..=2u32.min(n)) {
                    let v = b + rng.gen_range(1..=n);
                    if !lits.iter().any(|l| l.var == v) {
                        lits.push(random_polarity(rng, v));
                    }
                }
            }
            BaseClass::Horn => {
                for _ in 0..rng.gen_range(0..=2u32.min(n)) {
                    let v = b + rng.gen_range(1..=n);
                    if !lits.iter().any(|l| l.var == v) {
                        lits.push(Literal::neg(v));
                    }
                }
                if n > 0 && rng.gen_bool(0.6) {
                    let v = b + rng.gen_range(1..=n);
                    if !lits.iter().any(|l| l.var == v) {
                        lits.push(Literal::pos(v));
                    }
                }
            }
        }
        let room = (params.arity as usize).saturating_sub(lits.len());
        if b > 0 {
            for _ in 0..rng.gen_range(0..=room.min(b as usize)) {
                let v = rng.gen_range(1..=b);
                if !lits.iter().any(|l| l.var == v) {
                    lits.push(random_polarity(rng, v));
                }
            }
        }
        if lits.is_empty() {
            continue;
        }
        clauses.push(Clause::with_weight(lits, clause_weight(params, rng)));
    }
    let cert = StructureCertificate::Backdoor { variables, base };
    let cnf = CnfInstance::with_certificate(b + n, clauses, cert);
    debug_assert!(cnf.verify_certificate());
    Ok(cnf)
}

/// CNF with a modulator plus a sliding-window path decomposition of the
/// remainder: each clause's non-modulator variables sit inside one window.
fn gen_pw_modulator(params: &GenParams, rng: &mut ChaCha8Rng) -> Result<CnfInstance> {
    let d = params.modulator_size;
    let p = params.num_vars;
    let w = params.width.min(p.saturating_sub(1));
    let modulator: BTreeSet<Var> = (1..=d).collect();
    let window = w + 1; // bag size
    let bags: Vec<BTreeSet<Var>> = if p == 0 {
        vec![]
    } else if p <= window {
        vec![(d + 1..=d + p).collect()]
    } else {
        (0..=(p - window))
            .map(|i| (d + 1 + i..=d + i + window).collect())
            .collect()
    };
    let mut clauses = Vec::new();
    for _ in 0..params.clauses {
        let mut lits: Vec<Literal> = Vec::new();
        if !bags.is_empty() && rng.gen_bool(0.9) {
            let bag: Vec<Var> = bags[rng.gen_range(0..bags.len())].iter().copied().collect();
            for _ in 0..rng.gen_range(1..=(params.arity as usize).min(bag.len())) {
                let v = bag[rng.gen_range(0..bag.len())];
                if !lits.iter().any(|l| l.var == v) {
                    lits.push(random_polarity(rng, v));
                }
            }
        }
        let room = (params.arity as usize).saturating_sub(lits.len());
        if d > 0 {
            for _ in 0..rng.gen_range(0..=room.min(d as usize)) {
                let v = rng.gen_range(1..=d);
                if !lits.iter().any(|l| l.var == v) {
                    lits.push(random_polarity(rng, v));
                }
            }
        }
        if lits.is_empty() {
            continue;
        }
        clauses.push(Clause::with_weight(lits, clause_weight(params, rng)));
    }
    let cert = StructureCertificate::PathDecomposition { modulator, bags, width: w };
    let cnf = CnfInstance::with_certificate(d + p, clauses, cert);
    debug_assert!(cnf.verify_certificate());
    Ok(cnf)
}

/// Random circuit of depth at most `params.depth`, in the requested basis.
fn gen_circuit(params: &GenParams, rng: &mut ChaCha8Rng) -> Circuit {
    let n = params.num_vars.max(1);
    let mut c = Circuit::new(n);
    let mut depth: Vec<u32> = Vec::new();
    for v in 1..=n {
        c.input(v);
        depth.push(0);
    }
    let gates = rng.gen_range(params.depth..=3 * params.depth.max(1) + n);
    for _ in 0..gates {
        let budget = params.depth;
        let pool: Vec<usize> = (0..c.gates.len()).filter(|&g| depth[g] < budget).collect();
        if pool.is_empty() {
            break;
        }
        let a = pool[rng.gen_range(0..pool.len())];
        let b = pool[rng.gen_range(0..pool.len())];
        let (id, d) = if params.monotone {
            let id = if rng.gen() { c.and(a, b) } else { c.or(a, b) };
            (id, depth[a].max(depth[b]) + 1)
        } else if params.and_not_basis {
            match rng.gen_range(0..3) {
                0 | 1 => (c.and(a, b), depth[a].max(depth[b]) + 1),
                _ => (c.not(a), depth[a] + 1),
            }
        } else {
            match rng.gen_range(0..3) {
                0 => (c.and(a, b), depth[a].max(depth[b]) + 1),
                1 => (c.or(a, b), depth[a].max(depth[b]) + 1),
                _ => (c.not(a), depth[a] + 1),
            }
        };
        debug_assert_eq!(id, depth.len());
        depth.push(d);
    }
    // deepest gate as output
    let output = (0..c.gates.len()).max_by_key(|&g| depth[g]).unwrap();
    c.output = output;
    debug_assert!(crate::instance::circuit_depth(&c) <= params.depth);
    c
}

/// Random annotated DAG over a topological vertex order with s = 1, t = n.
fn gen_adag(params: &GenParams, rng: &mut ChaCha8Rng) -> AnnotatedDag {
    let n = params.num_vars.max(2);
    let m = params.annotation_vars;
    let mut arcs = Vec::new();
    for u in 1..n {
        for v in u + 1..=n {
            if rng.gen_bool(params.density) {
                let annotation = if m > 0 && rng.gen_bool(0.5) {
                    {
                    let v = rng.gen_range(1..=m);
                    Some(random_polarity(rng, v))
                }
                } else {
                    None
                };
                arcs.push(AnnotatedArc { from: u, to: v, annotation });
            }
        }
    }
    let d = AnnotatedDag { vertex_count: n, arcs, source: 1, sink: n, annotation_vars: m };
    debug_assert!(d.validate().is_ok());
    d
}

fn gen_graph(params: &GenParams, rng: &mut ChaCha8Rng) -> SimpleGraph {
    let n = params.num_vars.max(1);
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(params.density) {
                let w = if params.weighted { rng.gen_range(1..=3) } else { 1 };
                edges.push((u, v, w));
            }
        }
    }
    SimpleGraph::undirected_weighted(n, edges)
}

/// Random layered branching program: every interior vertex gets a random
/// label and random arcs into the next layer; layers are pruned to reachable
/// vertices so the result validates.
pub fn gen_random_bp(
    n: u32,
    width: u32,
    length: u32,
    seed: u64,
) -> crate::instance::BranchingProgram {
    use crate::instance::{BpNode, BranchingProgram};
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n.max(1);
    let width = width.clamp(1, 5);
    let length = length.max(1);
    let mut layers: Vec<Vec<BpNode>> = Vec::with_capacity(length as usize + 1);
    let mut current = 1u32;
    for t in 0..length {
        let is_last = t + 1 == length;
        let next = if is_last { 2 } else { rng.gen_range(1..=width) };
        let mut nodes: Vec<BpNode> = (0..current)
            .map(|_| {
                BpNode::interior(
                    rng.gen_range(1..=n),
                    rng.gen_range(0..next),
                    rng.gen_range(0..next),
                )
            })
            .collect();
        if is_last {
            // terminals may be unreachable, no pruning needed
            layers.push(nodes);
            break;
        }
        // prune the next layer to targets actually hit
        let mut remap = vec![u32::MAX; next as usize];
        let mut reachable = 0u32;
        for node in &nodes {
            for tgt in [node.on_true, node.on_false] {
                if remap[tgt as usize] == u32::MAX {
                    remap[tgt as usize] = reachable;
                    reachable += 1;
                }
            }
        }
        for node in &mut nodes {
            node.on_true = remap[node.on_true as usize];
            node.on_false = remap[node.on_false as usize];
        }
        layers.push(nodes);
        current = reachable;
    }
    layers.push(vec![BpNode::terminal(), BpNode::terminal()]);
    let bp = BranchingProgram { num_vars: n, width: 5, layers, accept: 0, reject: 1 };
    debug_assert!(bp.validate().is_ok(), "{:?}", bp.validate());
    bp
}

/// Tiny unweighted CNF (1-2 variables, 1-2 clauses, arity at most 2) whose
/// max-cut gadget stays within the cut enumeration caps.
pub fn gen_tiny_cnf(seed: u64) -> CnfInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=2u32);
    let m = rng.gen_range(1..=2usize);
    let mut clauses = Vec::new();
    for _ in 0..m {
        let len = rng.gen_range(1..=2.min(n));
        let mut lits: Vec<Literal> = Vec::new();
        while lits.len() < len as usize {
            let l = Literal { var: rng.gen_range(1..=n), positive: rng.gen() };
            if !lits.iter().any(|x| x.var == l.var) {
                lits.push(l);
            }
        }
        clauses.push(Clause::new(lits));
    }
    CnfInstance::new(n, clauses)
}

/// Random monotone circuit (AND/OR over inputs), used by the weighted
/// circuit trials.
pub fn gen_monotone_circuit(n: u32, gates: u32, seed: u64) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n.max(1);
    let mut c = Circuit::new(n);
    for v in 1..=n {
        c.input(v);
    }
    for _ in 0..gates {
        let a = rng.gen_range(0..c.gates.len());
        let b = rng.gen_range(0..c.gates.len());
        if rng.gen() {
            c.and(a, b);
        } else {
            c.or(a, b);
        }
    }
    c.output = c.gates.len() - 1;
    c
}

/// Random general-basis circuit with unrestricted depth.
pub fn gen_general_circuit(n: u32, gates: u32, seed: u64) -> Circuit {
    let params = GenParams {
        num_vars: n,
        depth: gates,
        and_not_basis: false,
        monotone: false,
        ..GenParams::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_circuit(&params, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instance() {
        let params = GenParams::default();
        for kind in [
            PlantedKind::CnfTdModulator,
            PlantedKind::CnfHub,
            PlantedKind::Cnf2satBackdoor,
            PlantedKind::CnfHornBackdoor,
            PlantedKind::CnfPwModulator,
            PlantedKind::CircuitDepthBounded,
            PlantedKind::AnnotatedDag,
            PlantedKind::Graph,
        ] {
            let a = gen_planted(kind, &params, 42).unwrap();
            let b = gen_planted(kind, &params, 42).unwrap();
            assert_eq!(a, b);
            let c = gen_planted(kind, &params, 43).unwrap();
            // overwhelmingly likely to differ; determinism is the real check
            let _ = c;
        }
    }

    #[test]
    fn planted_certificates_verify() {
        let params = GenParams::default();
        for seed in 0..50 {
            for kind in [
                PlantedKind::CnfTdModulator,
                PlantedKind::CnfHub,
                PlantedKind::Cnf2satBackdoor,
                PlantedKind::CnfHornBackdoor,
                PlantedKind::CnfPwModulator,
            ] {
                let Instance::Cnf(cnf) = gen_planted(kind, &params, seed).unwrap() else {
                    panic!("expected cnf");
                };
                cnf.validate().unwrap();
                assert!(cnf.verify_certificate(), "{kind:?} seed {seed}");
            }
        }
    }

    #[test]
    fn planted_circuits_respect_depth() {
        for seed in 0..50 {
            let params = GenParams { depth: 4, ..GenParams::default() };
            let Instance::Circuit(c) =
                gen_planted(PlantedKind::CircuitDepthBounded, &params, seed).unwrap()
            else {
                panic!("expected circuit");
            };
            c.validate().unwrap();
            assert!(crate::instance::circuit_depth(&c) <= 4);
            assert!(c.is_and_not_basis());
        }
    }

    #[test]
    fn planted_dags_are_valid() {
        for seed in 0..50 {
            let params = GenParams::default();
            let Instance::AnnotatedDag(d) =
                gen_planted(PlantedKind::AnnotatedDag, &params, seed).unwrap()
            else {
                panic!("expected dag");
            };
            d.validate().unwrap();
        }
    }
}
