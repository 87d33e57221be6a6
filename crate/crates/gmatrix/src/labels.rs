//! Sidecar mapping between dense node ids and display labels.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Bidirectional node-id/label map.
///
/// Labeling may be partial (not every node needs a label) but is always a
/// bijection on the labeled subset: a duplicate id or duplicate label is
/// rejected at build time.
#[derive(Debug, Clone, Default)]
pub struct NodeLabelMap {
    by_id: HashMap<NodeId, String>,
    by_label: HashMap<String, NodeId>,
}

impl NodeLabelMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a label for `id`.
    pub fn insert(&mut self, id: NodeId, label: impl Into<String>) -> Result<()> {
        let label = label.into();
        if self.by_id.contains_key(&id) {
            return Err(Error::precondition(format!(
                "node {id} already has a label"
            )));
        }
        if self.by_label.contains_key(&label) {
            return Err(Error::precondition(format!(
                "label {label:?} already maps to node {}",
                self.by_label[&label]
            )));
        }
        self.by_id.insert(id, label.clone());
        self.by_label.insert(label, id);
        Ok(())
    }

    /// Label of `id`, if one was registered.
    pub fn label(&self, id: NodeId) -> Option<&str> {
        self.by_id.get(&id).map(String::as_str)
    }

    /// Label of `id`, or its decimal id as a fallback.
    pub fn label_or_id(&self, id: NodeId) -> String {
        match self.label(id) {
            Some(l) => l.to_owned(),
            None => id.to_string(),
        }
    }

    /// Node id for `label`; unknown labels fail explicitly.
    pub fn id(&self, label: &str) -> Result<NodeId> {
        self.by_label
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    pub fn contains_label(&self, label: &str) -> bool {
        self.by_label.contains_key(label)
    }

    pub fn len(&self) -> usize {
        self.by_id.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_id.is_empty()
    }

    /// Largest labeled id, if any label is present.
    pub fn max_id(&self) -> Option<NodeId> {
        self.by_id.keys().copied().max()
    }
}
