//! Circuit language: gates, the tensor/sequence syntax tree, heights and
//! well-formedness.
//!
//! A circuit is stored as an arena of [`Node`]s. Children always precede
//! their parents in the arena, so per-node quantities such as heights can be
//! computed with a single forward pass and no recursion. Subtrees may be
//! shared, which keeps very long circuits built from repeated columns cheap.

mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parse::{parse_circuit, ParseError, ParseErrorKind};

/// The gate alphabet. `Cx` always controls wire `i` and targets wire `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gate {
    I,
    X,
    Y,
    Z,
    H,
    T,
    #[serde(rename = "SW")]
    Swap,
    #[serde(rename = "CX")]
    Cx,
}

impl Gate {
    pub const ALL: [Gate; 8] = [
        Gate::I,
        Gate::X,
        Gate::Y,
        Gate::Z,
        Gate::H,
        Gate::T,
        Gate::Swap,
        Gate::Cx,
    ];

    /// Number of wires the gate spans.
    pub fn height(self) -> usize {
        match self {
            Gate::Swap | Gate::Cx => 2,
            _ => 1,
        }
    }

    /// The token used for this gate in circuit source text.
    pub fn symbol(self) -> &'static str {
        match self {
            Gate::I => "I",
            Gate::X => "X",
            Gate::Y => "Y",
            Gate::Z => "Z",
            Gate::H => "H",
            Gate::T => "T",
            Gate::Swap => "SW",
            Gate::Cx => "CX",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Gate> {
        Gate::ALL.into_iter().find(|g| g.symbol() == s)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Index of a node inside a [`Circuit`] arena.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NodeId(usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Node {
    Gate(Gate),
    /// Left operand occupies the lower wires, right operand the wires above it.
    Tensor(NodeId, NodeId),
    /// Left operand runs first, then the right operand on the same wires.
    Seq(NodeId, NodeId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("sequence node `{node}` composes circuits of height {left} and {right}")]
pub struct ValidationError {
    pub left: usize,
    pub right: usize,
    /// Canonical rendering of the offending node, shortened if long.
    pub node: String,
}

/// Incrementally builds a circuit arena. Every id handed out refers to a node
/// that already exists, which keeps the children-before-parents ordering.
#[derive(Debug, Default, Clone)]
pub struct CircuitBuilder {
    nodes: Vec<Node>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn gate(&mut self, gate: Gate) -> NodeId {
        self.push(Node::Gate(gate))
    }

    pub fn tensor(&mut self, left: NodeId, right: NodeId) -> NodeId {
        self.check(left);
        self.check(right);
        self.push(Node::Tensor(left, right))
    }

    pub fn seq(&mut self, left: NodeId, right: NodeId) -> NodeId {
        self.check(left);
        self.check(right);
        self.push(Node::Seq(left, right))
    }

    /// Tensor a non-empty list of nodes together, left-associatively.
    pub fn tensor_all(&mut self, parts: &[NodeId]) -> Option<NodeId> {
        let (&first, rest) = parts.split_first()?;
        Some(rest.iter().fold(first, |acc, &p| self.tensor(acc, p)))
    }

    /// Sequence a non-empty list of nodes, left-associatively.
    pub fn seq_all(&mut self, parts: &[NodeId]) -> Option<NodeId> {
        let (&first, rest) = parts.split_first()?;
        Some(rest.iter().fold(first, |acc, &p| self.seq(acc, p)))
    }

    /// Copy another circuit into this arena, returning the id of its root.
    pub fn import(&mut self, other: &Circuit) -> NodeId {
        let offset = self.nodes.len();
        let shift = |id: NodeId| NodeId(id.0 + offset);
        self.nodes.extend(other.nodes.iter().map(|n| match *n {
            Node::Gate(g) => Node::Gate(g),
            Node::Tensor(l, r) => Node::Tensor(shift(l), shift(r)),
            Node::Seq(l, r) => Node::Seq(shift(l), shift(r)),
        }));
        shift(other.root)
    }

    pub fn finish(self, root: NodeId) -> Circuit {
        self.check(root);
        Circuit {
            nodes: self.nodes,
            root,
        }
    }

    fn push(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        NodeId(self.nodes.len() - 1)
    }

    fn check(&self, id: NodeId) {
        assert!(id.0 < self.nodes.len(), "node id {} not in builder", id.0);
    }
}

/// A circuit syntax tree.
#[derive(Debug, Clone)]
pub struct Circuit {
    nodes: Vec<Node>,
    root: NodeId,
}

impl Circuit {
    pub fn gate(gate: Gate) -> Self {
        Circuit {
            nodes: vec![Node::Gate(gate)],
            root: NodeId(0),
        }
    }

    /// `self ** other`: `other` is placed on the wires above `self`.
    pub fn tensor(self, other: Circuit) -> Self {
        self.combine(other, Node::Tensor)
    }

    /// `self oo other`: `other` runs after `self`.
    pub fn seq(self, other: Circuit) -> Self {
        self.combine(other, Node::Seq)
    }

    /// Tensor stack of `k` identity gates; `None` for `k = 0`.
    pub fn identity(k: usize) -> Option<Self> {
        let mut b = CircuitBuilder::new();
        let ids: Vec<_> = (0..k).map(|_| b.gate(Gate::I)).collect();
        let root = b.tensor_all(&ids)?;
        Some(b.finish(root))
    }

    fn combine(self, other: Circuit, make: fn(NodeId, NodeId) -> Node) -> Self {
        let mut b = CircuitBuilder { nodes: self.nodes };
        let left = self.root;
        let right = b.import(&other);
        let root = b.push(make(left, right));
        b.finish(root)
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> Node {
        self.nodes[id.0]
    }

    /// Arena size; shared subtrees are counted once.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Height of every arena node, indexed by [`NodeId::index`].
    fn heights(&self) -> Vec<usize> {
        let mut h = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match *node {
                Node::Gate(g) => g.height(),
                Node::Tensor(l, r) => h[l.0] + h[r.0],
                Node::Seq(l, _) => h[l.0],
            };
            h.push(v);
        }
        h
    }

    /// Number of wires spanned by the circuit.
    pub fn height(&self) -> usize {
        self.height_of(self.root)
    }

    pub fn height_of(&self, id: NodeId) -> usize {
        self.heights()[id.0]
    }

    /// Check that both sides of every sequence node span the same wires and
    /// return the qubit count. The reported node is the first offender in
    /// post-order (leftmost, deepest first).
    pub fn validate(&self) -> Result<usize, ValidationError> {
        let heights = self.heights();
        let mut checked = vec![false; self.nodes.len()];
        let mut stack = vec![(self.root, false)];
        while let Some((id, expanded)) = stack.pop() {
            if checked[id.0] {
                continue;
            }
            match self.nodes[id.0] {
                Node::Gate(_) => checked[id.0] = true,
                Node::Tensor(l, r) | Node::Seq(l, r) if !expanded => {
                    stack.push((id, true));
                    stack.push((r, false));
                    stack.push((l, false));
                }
                Node::Tensor(..) => checked[id.0] = true,
                Node::Seq(l, r) => {
                    let (left, right) = (heights[l.0], heights[r.0]);
                    if left != right {
                        return Err(ValidationError {
                            left,
                            right,
                            node: abbreviate(&self.render(id), 80),
                        });
                    }
                    checked[id.0] = true;
                }
            }
        }
        Ok(heights[self.root.0])
    }

    /// Leaf gates with their base wire index, in interpretation order:
    /// left before right, tensor operands offset by the left height.
    pub fn placements(&self) -> Placements<'_> {
        Placements {
            circuit: self,
            heights: self.heights(),
            stack: vec![(self.root, 0)],
        }
    }

    /// Number of gate applications, counting shared subtrees at every use.
    pub fn leaf_count(&self) -> u64 {
        let mut counts: Vec<u64> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let c = match *node {
                Node::Gate(_) => 1,
                Node::Tensor(l, r) | Node::Seq(l, r) => counts[l.0] + counts[r.0],
            };
            counts.push(c);
        }
        counts[self.root.0]
    }

    /// Canonical source text for the subtree at `id`, with the minimum of
    /// parentheses under `**`-over-`oo` precedence and left associativity.
    pub fn render(&self, id: NodeId) -> String {
        enum Item {
            Node(NodeId),
            Text(&'static str),
        }
        let mut out = String::new();
        let mut stack = vec![Item::Node(id)];
        while let Some(item) = stack.pop() {
            let id = match item {
                Item::Text(t) => {
                    out.push_str(t);
                    continue;
                }
                Item::Node(id) => id,
            };
            match self.nodes[id.0] {
                Node::Gate(g) => out.push_str(g.symbol()),
                Node::Seq(l, r) => {
                    let wrap_right = matches!(self.nodes[r.0], Node::Seq(..));
                    push_operand(&mut stack, r, wrap_right);
                    stack.push(Item::Text(" oo "));
                    stack.push(Item::Node(l));
                }
                Node::Tensor(l, r) => {
                    let wrap_left = matches!(self.nodes[l.0], Node::Seq(..));
                    let wrap_right = !matches!(self.nodes[r.0], Node::Gate(_));
                    push_operand(&mut stack, r, wrap_right);
                    stack.push(Item::Text(" ** "));
                    push_operand(&mut stack, l, wrap_left);
                }
            }
        }
        return out;

        fn push_operand(stack: &mut Vec<Item>, id: NodeId, wrap: bool) {
            if wrap {
                stack.push(Item::Text(")"));
                stack.push(Item::Node(id));
                stack.push(Item::Text("("));
            } else {
                stack.push(Item::Node(id));
            }
        }
    }

    fn same_subtree(&self, a: NodeId, other: &Circuit, b: NodeId) -> bool {
        let mut stack = vec![(a, b)];
        while let Some((a, b)) = stack.pop() {
            match (self.nodes[a.0], other.nodes[b.0]) {
                (Node::Gate(x), Node::Gate(y)) if x == y => {}
                (Node::Tensor(l1, r1), Node::Tensor(l2, r2))
                | (Node::Seq(l1, r1), Node::Seq(l2, r2)) => {
                    stack.push((r1, r2));
                    stack.push((l1, l2));
                }
                _ => return false,
            }
        }
        true
    }
}

/// Structural equality of the trees rooted at each circuit's root.
impl PartialEq for Circuit {
    fn eq(&self, other: &Self) -> bool {
        self.same_subtree(self.root, other, other.root)
    }
}

impl Eq for Circuit {}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.root))
    }
}

impl From<Gate> for Circuit {
    fn from(g: Gate) -> Self {
        Circuit::gate(g)
    }
}

fn abbreviate(s: &str, max: usize) -> String {
    if s.chars().count() <= max {
        s.to_owned()
    } else {
        let head: String = s.chars().take(max).collect();
        format!("{head}...")
    }
}

/// A gate together with the lowest wire it acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Placement {
    pub gate: Gate,
    pub index: usize,
}

/// Iterator returned by [`Circuit::placements`].
pub struct Placements<'a> {
    circuit: &'a Circuit,
    heights: Vec<usize>,
    stack: Vec<(NodeId, usize)>,
}

impl Iterator for Placements<'_> {
    type Item = Placement;

    fn next(&mut self) -> Option<Placement> {
        while let Some((id, base)) = self.stack.pop() {
            match self.circuit.nodes[id.0] {
                Node::Gate(gate) => return Some(Placement { gate, index: base }),
                Node::Tensor(l, r) => {
                    self.stack.push((r, base + self.heights[l.0]));
                    self.stack.push((l, base));
                }
                Node::Seq(l, r) => {
                    self.stack.push((r, base));
                    self.stack.push((l, base));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(gate: Gate) -> Circuit {
        Circuit::gate(gate)
    }

    #[test]
    fn gate_heights() {
        assert_eq!(g(Gate::Cx).height(), 2);
        assert_eq!(g(Gate::Swap).height(), 2);
        for gate in [Gate::I, Gate::X, Gate::Y, Gate::Z, Gate::H, Gate::T] {
            assert_eq!(g(gate).height(), 1);
        }
    }

    #[test]
    fn composite_heights() {
        assert_eq!(g(Gate::H).tensor(g(Gate::I)).height(), 2);
        let bell = g(Gate::H).tensor(g(Gate::I)).seq(g(Gate::Cx));
        assert_eq!(bell.height(), 2);
        assert_eq!(bell.validate(), Ok(2));
    }

    #[test]
    fn single_gate_validates() {
        assert_eq!(g(Gate::I).validate(), Ok(1));
    }

    #[test]
    fn mismatched_sequence_is_rejected() {
        let err = g(Gate::H).seq(g(Gate::Cx)).validate().unwrap_err();
        assert_eq!((err.left, err.right), (1, 2));
        assert_eq!(err.node, "H oo CX");
    }

    #[test]
    fn reports_leftmost_deepest_offender() {
        // (X oo CX) ** (H oo SW) has two bad nodes; the left one wins
        let c = g(Gate::X)
            .seq(g(Gate::Cx))
            .tensor(g(Gate::H).seq(g(Gate::Swap)))
            .seq(g(Gate::I));
        let err = c.validate().unwrap_err();
        assert_eq!(err.node, "X oo CX");
    }

    #[test]
    fn placements_follow_interpretation_order() {
        let c = g(Gate::H)
            .tensor(g(Gate::I))
            .tensor(g(Gate::Cx))
            .seq(g(Gate::Cx).tensor(g(Gate::Swap)));
        let got: Vec<_> = c.placements().map(|p| (p.gate, p.index)).collect();
        assert_eq!(
            got,
            vec![
                (Gate::H, 0),
                (Gate::I, 1),
                (Gate::Cx, 2),
                (Gate::Cx, 0),
                (Gate::Swap, 2)
            ]
        );
        assert_eq!(c.leaf_count(), 5);
    }

    #[test]
    fn render_uses_minimal_parentheses() {
        let c = g(Gate::H).tensor(g(Gate::X).seq(g(Gate::Z)));
        assert_eq!(c.to_string(), "H ** (X oo Z)");
        let c = g(Gate::H).tensor(g(Gate::I)).seq(g(Gate::Cx));
        assert_eq!(c.to_string(), "H ** I oo CX");
        let c = g(Gate::X).seq(g(Gate::Y).seq(g(Gate::Z)));
        assert_eq!(c.to_string(), "X oo (Y oo Z)");
        let c = g(Gate::X).tensor(g(Gate::Y).tensor(g(Gate::Z)));
        assert_eq!(c.to_string(), "X ** (Y ** Z)");
    }

    #[test]
    fn shared_subtrees_are_expanded() {
        let mut b = CircuitBuilder::new();
        let h = b.gate(Gate::H);
        let col = b.tensor(h, h);
        let root = b.seq_all(&[col, col, col]).unwrap();
        let c = b.finish(root);
        assert_eq!(c.node_count(), 4);
        assert_eq!(c.leaf_count(), 6);
        assert_eq!(c.validate(), Ok(2));
        assert_eq!(c.to_string(), "H ** H oo H ** H oo H ** H");
    }

    #[test]
    fn identity_stack() {
        assert!(Circuit::identity(0).is_none());
        assert_eq!(Circuit::identity(3).unwrap().to_string(), "I ** I ** I");
    }

    #[test]
    fn deep_sequence_does_not_recurse() {
        let mut b = CircuitBuilder::new();
        let x = b.gate(Gate::X);
        let mut root = x;
        for _ in 0..200_000 {
            root = b.seq(root, x);
        }
        let c = b.finish(root);
        assert_eq!(c.validate(), Ok(1));
        assert_eq!(c.placements().count(), 200_001);
        assert_eq!(c.clone(), c);
    }
}
