use crate::error::Error;
use crate::instance::Var;
use crate::Result;
use serde::{Deserialize, Serialize};

/// A vertex of a branching program layer.
///
/// Interior vertices carry a variable label and one arc per truth value into
/// the next layer (`on_true` / `on_false` are indices there). Final-layer
/// vertices carry no label and no arcs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpNode {
    pub var: Option<Var>,
    pub on_true: u32,
    pub on_false: u32,
}

impl BpNode {
    pub fn interior(var: Var, on_true: u32, on_false: u32) -> Self {
        BpNode { var: Some(var), on_true, on_false }
    }

    pub fn terminal() -> Self {
        BpNode { var: None, on_true: 0, on_false: 0 }
    }
}

/// A layered width-bounded branching program over variables `1..=num_vars`.
///
/// Layer 0 holds the unique start vertex. Every vertex outside the final
/// layer is labeled and has exactly one True-arc and one False-arc into the
/// next layer. The final layer holds exactly the accept and reject vertices.
///
/// The *length* of the program is the number of arc steps, i.e. the number of
/// layers minus one; this is the quantity bounded by `4^d` in the circuit
/// transform.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingProgram {
    pub num_vars: u32,
    /// Declared width bound; every layer must have at most this many vertices.
    pub width: u32,
    pub layers: Vec<Vec<BpNode>>,
    /// Index of the accept vertex within the final layer.
    pub accept: u32,
    /// Index of the reject vertex within the final layer.
    pub reject: u32,
}

impl BranchingProgram {
    /// Number of arc steps (layers minus one).
    pub fn length(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn max_layer_size(&self) -> usize {
        self.layers.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.layers.len() < 2 {
            return Err(Error::invalid("branching program needs at least two layers"));
        }
        if self.layers[0].len() != 1 {
            return Err(Error::invalid("layer 0 must hold exactly the start vertex"));
        }
        let last = self.layers.len() - 1;
        if self.layers[last].len() != 2 {
            return Err(Error::invalid("final layer must hold exactly accept and reject"));
        }
        if self.accept == self.reject || self.accept > 1 || self.reject > 1 {
            return Err(Error::invalid("accept/reject must be the two distinct final vertices"));
        }
        let mut in_deg: Vec<Vec<u32>> = self.layers.iter().map(|l| vec![0; l.len()]).collect();
        for (t, layer) in self.layers.iter().enumerate() {
            if layer.len() > self.width as usize {
                return Err(Error::invalid(format!(
                    "layer {t} has {} vertices, width bound {}",
                    layer.len(),
                    self.width
                )));
            }
            for node in layer {
                if t == last {
                    if node.var.is_some() {
                        return Err(Error::invalid("final-layer vertices must be unlabeled"));
                    }
                    continue;
                }
                let var = node
                    .var
                    .ok_or_else(|| Error::invalid(format!("unlabeled interior vertex in layer {t}")))?;
                if var < 1 || var > self.num_vars {
                    return Err(Error::invalid(format!("vertex label {var} out of range")));
                }
                let next = self.layers[t + 1].len() as u32;
                if node.on_true >= next || node.on_false >= next {
                    return Err(Error::invalid(format!("arc target out of range in layer {t}")));
                }
                in_deg[t + 1][node.on_true as usize] += 1;
                in_deg[t + 1][node.on_false as usize] += 1;
            }
        }
        // Interior vertices past layer 0 must be reachable; accept/reject may
        // have in-degree 0 (constant programs).
        for t in 1..last {
            for (i, d) in in_deg[t].iter().enumerate() {
                if *d == 0 {
                    return Err(Error::invalid(format!(
                        "vertex {i} in layer {t} has in-degree 0"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Variables actually labeling vertices, sorted.
    pub fn labeled_vars(&self) -> Vec<Var> {
        let mut vars: Vec<Var> =
            self.layers.iter().flatten().filter_map(|n| n.var).collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }
}
