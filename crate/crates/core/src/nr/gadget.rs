//! Linear-size reachability gadget: `k` input nodes and `k` output nodes such
//! that input `x` reaches output `y` exactly when `x != y`.
//!
//! Labels are paired (0,1), (2,3), ...; each input has an arc to its
//! partner's output, and every pair funnels through one label of a gadget on
//! `ceil(k/2)` labels, which fans back out to both outputs of the pair. An odd
//! label out has no partner and only the recursive arcs.

use crate::graph::GraphError;

#[derive(Clone, Debug)]
pub struct Gadget {
    pub label_count: usize,
    pub node_count: usize,
    /// `inputs[x]` is the entry node for label `x`.
    pub inputs: Vec<usize>,
    /// `outputs[x]` is the exit node for label `x`.
    pub outputs: Vec<usize>,
    pub arcs: Vec<(usize, usize)>,
}

pub fn build_reachability_gadget(k: usize) -> Result<Gadget, GraphError> {
    if k == 0 {
        return Err(GraphError::EmptyGadget);
    }
    let mut next = 0;
    let mut arcs = Vec::new();
    let (inputs, outputs) = wire_gadget(k, &mut next, &mut arcs);
    Ok(Gadget {
        label_count: k,
        node_count: next,
        inputs,
        outputs,
        arcs,
    })
}

/// Allocates node ids from `next` and appends arcs; returns (inputs, outputs).
pub(crate) fn wire_gadget(
    k: usize,
    next: &mut usize,
    arcs: &mut Vec<(usize, usize)>,
) -> (Vec<usize>, Vec<usize>) {
    let mut alloc = |count: usize| -> Vec<usize> {
        let ids = (*next..*next + count).collect();
        *next += count;
        ids
    };
    let inputs = alloc(k);
    let outputs = alloc(k);
    if k == 1 {
        return (inputs, outputs);
    }
    for x in (0..k - 1).step_by(2) {
        arcs.push((inputs[x], outputs[x + 1]));
        arcs.push((inputs[x + 1], outputs[x]));
    }
    if k == 2 {
        return (inputs, outputs);
    }
    let (sub_in, sub_out) = wire_gadget(k.div_ceil(2), next, arcs);
    for x in 0..k {
        arcs.push((inputs[x], sub_in[x / 2]));
        arcs.push((sub_out[x / 2], outputs[x]));
    }
    (inputs, outputs)
}
