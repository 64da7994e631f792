use crate::error::Error;
use crate::instance::Var;
use crate::Result;
use serde::{Deserialize, Serialize};

/// Index of a gate in [`Circuit::gates`].
pub type GateId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    /// Reads input variable `1..=num_inputs`.
    Input(Var),
    And,
    Or,
    Not,
    ConstTrue,
    ConstFalse,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub inputs: Vec<GateId>,
}

/// A Boolean circuit: a gate DAG with one designated output.
///
/// Gates are stored in topological order (every gate's inputs have smaller
/// ids), which makes the DAG invariant structural. A circuit doubles as a
/// *formula* when every non-input gate feeds at most one other gate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    /// Declared input count; `Input` gates read variables `1..=num_inputs`.
    /// Unreferenced input variables are allowed.
    pub num_inputs: u32,
    pub gates: Vec<Gate>,
    pub output: GateId,
    pub fan_in_bound: Option<u32>,
}

impl Circuit {
    pub fn new(num_inputs: u32) -> Self {
        Circuit { num_inputs, gates: Vec::new(), output: 0, fan_in_bound: None }
    }

    /// Appends a gate; inputs must already exist.
    pub fn push(&mut self, kind: GateKind, inputs: Vec<GateId>) -> GateId {
        for &i in &inputs {
            debug_assert!(i < self.gates.len(), "gate inputs must precede the gate");
        }
        self.gates.push(Gate { kind, inputs });
        self.gates.len() - 1
    }

    pub fn input(&mut self, var: Var) -> GateId {
        self.push(GateKind::Input(var), vec![])
    }

    pub fn and(&mut self, a: GateId, b: GateId) -> GateId {
        self.push(GateKind::And, vec![a, b])
    }

    pub fn or(&mut self, a: GateId, b: GateId) -> GateId {
        self.push(GateKind::Or, vec![a, b])
    }

    pub fn not(&mut self, a: GateId) -> GateId {
        self.push(GateKind::Not, vec![a])
    }

    /// Balanced fan-in-2 conjunction of `ids`; empty input yields ConstTrue.
    pub fn and_tree(&mut self, ids: &[GateId]) -> GateId {
        self.op_tree(GateKind::And, ids)
    }

    /// Balanced fan-in-2 disjunction of `ids`; empty input yields ConstFalse.
    pub fn or_tree(&mut self, ids: &[GateId]) -> GateId {
        self.op_tree(GateKind::Or, ids)
    }

    fn op_tree(&mut self, kind: GateKind, ids: &[GateId]) -> GateId {
        match ids.len() {
            0 => self.push(
                if matches!(kind, GateKind::And) { GateKind::ConstTrue } else { GateKind::ConstFalse },
                vec![],
            ),
            1 => ids[0],
            _ => {
                let mut level: Vec<GateId> = ids.to_vec();
                while level.len() > 1 {
                    let mut next = Vec::with_capacity(level.len().div_ceil(2));
                    for pair in level.chunks(2) {
                        if pair.len() == 2 {
                            next.push(self.push(kind, vec![pair[0], pair[1]]));
                        } else {
                            next.push(pair[0]);
                        }
                    }
                    level = next;
                }
                level[0]
            }
        }
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// Circuit size: the number of arcs of the gate DAG.
    pub fn size(&self) -> usize {
        self.gates.iter().map(|g| g.inputs.len()).sum()
    }

    pub fn max_fan_in(&self) -> usize {
        self.gates.iter().map(|g| g.inputs.len()).max().unwrap_or(0)
    }

    /// True when every non-input gate has out-degree at most 1.
    pub fn is_formula(&self) -> bool {
        let mut out_deg = vec![0usize; self.gates.len()];
        for g in &self.gates {
            for &i in &g.inputs {
                out_deg[i] += 1;
            }
        }
        self.gates.iter().enumerate().all(|(id, g)| {
            matches!(g.kind, GateKind::Input(_)) || out_deg[id] <= 1 || id == self.output
        })
    }

    /// True when only `And`, `Not`, `Input` and constant gates occur, with
    /// fan-in at most 2.
    pub fn is_and_not_basis(&self) -> bool {
        self.gates.iter().all(|g| {
            matches!(
                g.kind,
                GateKind::Input(_) | GateKind::And | GateKind::Not | GateKind::ConstTrue | GateKind::ConstFalse
            ) && g.inputs.len() <= 2
        })
    }

    /// True when no `Not` gates occur.
    pub fn is_monotone(&self) -> bool {
        self.gates.iter().all(|g| !matches!(g.kind, GateKind::Not))
    }

    pub fn validate(&self) -> Result<()> {
        if self.gates.is_empty() {
            return Err(Error::invalid("circuit has no gates"));
        }
        if self.output >= self.gates.len() {
            return Err(Error::invalid("output gate out of range"));
        }
        for (id, g) in self.gates.iter().enumerate() {
            for &i in &g.inputs {
                if i >= id {
                    return Err(Error::invalid(format!(
                        "gate {id} references gate {i}; gates must be topologically ordered"
                    )));
                }
            }
            let arity_ok = match g.kind {
                GateKind::Input(v) => {
                    if v < 1 || v > self.num_inputs {
                        return Err(Error::invalid(format!(
                            "input gate reads variable {v}, declared inputs 1..={}",
                            self.num_inputs
                        )));
                    }
                    g.inputs.is_empty()
                }
                GateKind::ConstTrue | GateKind::ConstFalse => g.inputs.is_empty(),
                GateKind::Not => g.inputs.len() == 1,
                GateKind::And | GateKind::Or => !g.inputs.is_empty(),
            };
            if !arity_ok {
                return Err(Error::invalid(format!("gate {id} has invalid arity")));
            }
            if let Some(b) = self.fan_in_bound {
                if g.inputs.len() > b as usize {
                    return Err(Error::invalid(format!(
                        "gate {id} exceeds declared fan-in bound {b}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The depth of a circuit: the largest distance, counted in arcs, from a
/// source gate (input or constant) to the output.
pub fn circuit_depth(c: &Circuit) -> u32 {
    let mut depth = vec![0u32; c.gates.len()];
    for (id, g) in c.gates.iter().enumerate() {
        depth[id] = g.inputs.iter().map(|&i| depth[i] + 1).max().unwrap_or(0);
    }
    depth[c.output]
}
