//! Newick reading and writing.
//!
//! Dialect: leaf names are nonnegative integers, an integer after the root's
//! closing parenthesis is the root label, branch lengths on internal edges are
//! weights (`inf` for an infinite weight, missing means 0). Lengths on leaf
//! edges are accepted and dropped.

use super::{ExtWeight, Label, NodeId, PlanarMetricTree, TreeError};

pub fn parse_newick(text: &str) -> Result<PlanarMetricTree, TreeError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let mut tree = PlanarMetricTree::with_root(None);
    p.skip_ws();
    if p.peek() != Some(b'(') {
        return Err(p.error("expected '(' at start of tree"));
    }
    p.children(&mut tree, 0)?;
    p.skip_ws();
    if let Some(label) = p.label()? {
        tree.set_root_label(Some(label));
    }
    p.skip_ws();
    if p.peek() == Some(b':') {
        p.pos += 1;
        p.length()?;
        log::warn!("ignoring branch length on the root");
    }
    p.skip_ws();
    if p.peek() != Some(b';') {
        return Err(p.error("expected ';'"));
    }
    p.pos += 1;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing characters after ';'"));
    }
    tree.validate()?;
    Ok(tree)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> TreeError {
        TreeError::Parse { offset: self.pos, message: message.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    /// Parses `( subtree, subtree, ... )` and attaches the subtrees under `parent`.
    fn children(&mut self, tree: &mut PlanarMetricTree, parent: NodeId) -> Result<(), TreeError> {
        debug_assert_eq!(self.peek(), Some(b'('));
        self.pos += 1;
        loop {
            self.skip_ws();
            self.subtree(tree, parent)?;
            self.skip_ws();
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    return Ok(());
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
    }

    fn subtree(&mut self, tree: &mut PlanarMetricTree, parent: NodeId) -> Result<(), TreeError> {
        if self.peek() == Some(b'(') {
            let id = tree.push_internal(parent, ExtWeight::ZERO);
            self.children(tree, id)?;
            self.skip_ws();
            if self.label()?.is_some() {
                log::warn!("ignoring name on internal node");
            }
            self.skip_ws();
            if self.peek() == Some(b':') {
                self.pos += 1;
                let w = self.length()?;
                tree.set_weight(id, w);
            }
            Ok(())
        } else {
            let start = self.pos;
            let label = self.label()?.ok_or_else(|| self.error("expected leaf label"))?;
            self.skip_ws();
            if self.peek() == Some(b':') {
                self.pos += 1;
                self.length()?;
                log::warn!("ignoring branch length on leaf {label} (byte {start})");
            }
            tree.push_leaf(parent, label);
            Ok(())
        }
    }

    fn label(&mut self) -> Result<Option<Label>, TreeError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            if matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == b'_') {
                return Err(self.error("leaf names must be integers"));
            }
            return Ok(None);
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse::<Label>().map(Some).map_err(|_| TreeError::Parse {
            offset: start,
            message: format!("label {s} out of range"),
        })
    }

    fn length(&mut self) -> Result<ExtWeight, TreeError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || matches!(c, b'.' | b'-' | b'+')) {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let value = if s == "inf" {
            f64::INFINITY
        } else {
            s.parse::<f64>().map_err(|_| TreeError::Parse {
                offset: start,
                message: format!("bad branch length {s:?}"),
            })?
        };
        if value.is_infinite() && s != "inf" {
            return Err(TreeError::Parse { offset: start, message: "infinite length must be written `inf`".into() });
        }
        ExtWeight::new(value).map_err(|_| TreeError::Parse {
            offset: start,
            message: format!("negative or NaN branch length {s:?}"),
        })
    }
}

pub fn write_newick(tree: &PlanarMetricTree) -> String {
    let mut out = String::new();
    write_node(tree, tree.root(), &mut out);
    if let Some(l) = tree.root_label() {
        out.push_str(&l.to_string());
    }
    out.push(';');
    out
}

fn write_node(tree: &PlanarMetricTree, id: NodeId, out: &mut String) {
    if let Some(l) = tree.label(id) {
        out.push_str(&l.to_string());
        return;
    }
    out.push('(');
    for (i, &c) in tree.children(id).iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_node(tree, c, out);
    }
    out.push(')');
    let w = tree.weight(id);
    if id != tree.root() && !w.is_zero() {
        out.push(':');
        out.push_str(&w.to_string());
    }
}
