//! Newick rendering with ultrametric branch lengths (`parent height - child
//! height`, leaves at height 0) and a parser back to a [`Dendrogram`].

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{Dendrogram, Merge};
use crate::{Error, Result};

fn quote_label(label: &str) -> String {
    if label.chars().any(|c| "()[]':;, \t\n".contains(c)) {
        format!("'{}'", label.replace('\'', "''"))
    } else {
        label.to_string()
    }
}

/// Newick string terminated by `;`.
pub fn to_newick(dend: &Dendrogram) -> String {
    fn write(dend: &Dendrogram, id: usize, parent_height: f64, out: &mut String) {
        let n = dend.n_leaves();
        if id < n {
            out.push_str(&quote_label(&dend.labels()[id]));
        } else {
            let m = &dend.merges()[id - n];
            out.push('(');
            write(dend, m.left, m.height, out);
            out.push(',');
            write(dend, m.right, m.height, out);
            out.push(')');
        }
        if parent_height.is_finite() {
            out.push_str(&format!(":{}", parent_height - dend.height(id)));
        }
    }
    let mut out = String::new();
    let root = 2 * dend.n_leaves() - 2;
    write(dend, root, f64::NAN, &mut out);
    out.push(';');
    out
}

enum Node {
    Leaf { label: String, branch: f64 },
    Inner { children: Vec<usize>, branch: f64 },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nodes: Vec<Node>,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Newick { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) -> Result<()> {
        loop {
            match self.src.get(self.pos) {
                Some(c) if c.is_ascii_whitespace() => self.pos += 1,
                Some(b'[') => {
                    let end = self.src[self.pos..]
                        .iter()
                        .position(|&c| c == b']')
                        .ok_or_else(|| self.err("unterminated comment"))?;
                    self.pos += end + 1;
                }
                _ => return Ok(()),
            }
        }
    }

    fn peek(&mut self) -> Result<Option<u8>> {
        self.skip_ws()?;
        Ok(self.src.get(self.pos).copied())
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek()? == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn label(&mut self) -> Result<String> {
        if self.peek()? == Some(b'\'') {
            self.pos += 1;
            let mut out = Vec::new();
            loop {
                match self.src.get(self.pos) {
                    None => return Err(self.err("unterminated quoted label")),
                    Some(b'\'') if self.src.get(self.pos + 1) == Some(&b'\'') => {
                        out.push(b'\'');
                        self.pos += 2;
                    }
                    Some(b'\'') => {
                        self.pos += 1;
                        break;
                    }
                    Some(&c) => {
                        out.push(c);
                        self.pos += 1;
                    }
                }
            }
            return String::from_utf8(out).map_err(|_| self.err("label is not UTF-8"));
        }
        let start = self.pos;
        while let Some(&c) = self.src.get(self.pos) {
            if b"()[]':;,".contains(&c) || c.is_ascii_whitespace() {
                break;
            }
            self.pos += 1;
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn branch(&mut self) -> Result<f64> {
        if self.peek()? != Some(b':') {
            return Ok(0.0);
        }
        self.pos += 1;
        self.skip_ws()?;
        let start = self.pos;
        while let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_digit() || b"+-.eE".contains(&c) || c.is_ascii_alphabetic() {
                self.pos += 1;
            } else {
                break;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        text.parse().map_err(|_| self.err(format!("bad branch length `{text}`")))
    }

    fn node(&mut self) -> Result<usize> {
        if self.peek()? == Some(b'(') {
            self.pos += 1;
            let mut children = vec![self.node()?];
            while self.peek()? == Some(b',') {
                self.pos += 1;
                children.push(self.node()?);
            }
            self.expect(b')')?;
            if children.len() != 2 {
                return Err(self.err(format!("internal node has {} children, expected 2", children.len())));
            }
            // internal node names are ignored
            let _ = self.label()?;
            let branch = self.branch()?;
            self.nodes.push(Node::Inner { children, branch });
        } else {
            let label = self.label()?;
            if label.is_empty() {
                return Err(self.err("empty leaf label"));
            }
            let branch = self.branch()?;
            self.nodes.push(Node::Leaf { label, branch });
        }
        Ok(self.nodes.len() - 1)
    }
}

#[derive(PartialEq)]
struct Ready {
    height: f64,
    order: usize,
}

impl Eq for Ready {}

impl PartialOrd for Ready {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ready {
    // min-heap on (height, post-order index)
    fn cmp(&self, other: &Self) -> Ordering {
        other.height.total_cmp(&self.height).then(other.order.cmp(&self.order))
    }
}

/// Parses a binary Newick tree. Heights are rebuilt from the branch lengths
/// of each node's left child; merges are ordered by height, children first.
pub fn parse_newick(text: &str) -> Result<Dendrogram> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, nodes: Vec::new() };
    let root = p.node()?;
    p.expect(b';')?;
    if p.peek()?.is_some() {
        return Err(p.err("trailing input after `;`"));
    }
    let nodes = p.nodes;

    // Post-order storage: children always precede their parent.
    let mut height = vec![0.0; nodes.len()];
    let mut parent = vec![usize::MAX; nodes.len()];
    let mut labels = Vec::new();
    let mut leaf_id = vec![usize::MAX; nodes.len()];
    for (i, node) in nodes.iter().enumerate() {
        match node {
            Node::Leaf { label, .. } => {
                leaf_id[i] = labels.len();
                labels.push(label.clone());
            }
            Node::Inner { children, .. } => {
                let c = children[0];
                let branch = match &nodes[c] {
                    Node::Leaf { branch, .. } | Node::Inner { branch, .. } => *branch,
                };
                height[i] = height[c] + branch;
                for &c in children {
                    parent[c] = i;
                }
            }
        }
    }
    let n = labels.len();
    let mut pending = vec![0usize; nodes.len()];
    let mut heap = BinaryHeap::new();
    for (i, node) in nodes.iter().enumerate() {
        if let Node::Inner { children, .. } = node {
            pending[i] = children.iter().filter(|&&c| matches!(nodes[c], Node::Inner { .. })).count();
            if pending[i] == 0 {
                heap.push(Ready { height: height[i], order: i });
            }
        }
    }
    let mut dend_id = leaf_id.clone();
    let mut size = vec![1usize; nodes.len()];
    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    while let Some(Ready { order, .. }) = heap.pop() {
        let Node::Inner { children, .. } = &nodes[order] else { unreachable!() };
        let (l, r) = (children[0], children[1]);
        size[order] = size[l] + size[r];
        merges.push(Merge { left: dend_id[l], right: dend_id[r], height: height[order], size: size[order] });
        dend_id[order] = n + merges.len() - 1;
        let up = parent[order];
        if up != usize::MAX {
            pending[up] -= 1;
            if pending[up] == 0 {
                heap.push(Ready { height: height[up], order: up });
            }
        }
    }
    debug_assert!(root == nodes.len() - 1);
    Dendrogram::new(labels, merges)
}
