//! Crisp knowledge bases: declarations, a subclass hierarchy and an
//! assertion store over individuals.
//!
//! The store is deliberately simple. The terminology is a set of atomic
//! subclass axioms (closed reflexively and transitively at build time) and
//! the assertions are crisp; graded reasoning enters only through datatype
//! restrictions evaluated against asserted values.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Kind of a data property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataKind {
    Numeric,
    Boolean,
}

/// A concrete data value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Num(f64),
    Bool(bool),
}

impl Value {
    pub fn kind(&self) -> DataKind {
        match self {
            Value::Num(_) => DataKind::Numeric,
            Value::Bool(_) => DataKind::Boolean,
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Num(x) => write!(f, "{x}"),
            Value::Bool(b) => write!(f, "{b}"),
        }
    }
}

/// An immutable knowledge base produced by [`KbBuilder`].
#[derive(Debug, Clone, PartialEq)]
pub struct KnowledgeBase {
    classes: BTreeSet<String>,
    subclass_axioms: BTreeSet<(String, String)>,
    object_properties: BTreeSet<String>,
    data_properties: BTreeMap<String, DataKind>,
    individuals: Vec<String>,
    individual_index: BTreeMap<String, u32>,
    class_assertions: BTreeMap<String, BTreeSet<String>>,
    role_assertions: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    data_assertions: BTreeMap<String, BTreeMap<String, Vec<Value>>>,
    /// Reflexive-transitive superclass closure, computed once at build time.
    closure: BTreeMap<String, BTreeSet<String>>,
}

impl KnowledgeBase {
    pub fn builder() -> KbBuilder {
        KbBuilder::default()
    }

    pub fn classes(&self) -> impl Iterator<Item = &str> {
        self.classes.iter().map(String::as_str)
    }

    pub fn has_class(&self, name: &str) -> bool {
        self.classes.contains(name)
    }

    pub fn subclass_axioms(&self) -> impl Iterator<Item = (&str, &str)> {
        self.subclass_axioms
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn object_properties(&self) -> impl Iterator<Item = &str> {
        self.object_properties.iter().map(String::as_str)
    }

    pub fn data_properties(&self) -> impl Iterator<Item = (&str, DataKind)> {
        self.data_properties.iter().map(|(n, k)| (n.as_str(), *k))
    }

    pub fn data_property_kind(&self, name: &str) -> Option<DataKind> {
        self.data_properties.get(name).copied()
    }

    /// Individuals in a fixed, sorted order; positions are stable indices.
    pub fn individuals(&self) -> &[String] {
        &self.individuals
    }

    pub fn individual_count(&self) -> usize {
        self.individuals.len()
    }

    pub fn individual_index(&self, name: &str) -> Option<u32> {
        self.individual_index.get(name).copied()
    }

    pub fn has_individual(&self, name: &str) -> bool {
        self.individual_index.contains_key(name)
    }

    /// Classes directly asserted for an individual.
    pub fn asserted_classes(&self, ind: &str) -> impl Iterator<Item = &str> {
        self.class_assertions
            .get(ind)
            .into_iter()
            .flatten()
            .map(String::as_str)
    }

    /// Successors of `ind` through object property `prop`.
    pub fn role_successors(&self, ind: &str, prop: &str) -> &[String] {
        self.role_assertions
            .get(ind)
            .and_then(|m| m.get(prop))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Values asserted for `ind` under data property `prop`.
    pub fn data_values(&self, ind: &str, prop: &str) -> &[Value] {
        self.data_assertions
            .get(ind)
            .and_then(|m| m.get(prop))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// All (subject, property, object) role assertions, in sorted order.
    pub fn role_assertions(&self) -> impl Iterator<Item = (&str, &str, &str)> {
        self.role_assertions.iter().flat_map(|(a, m)| {
            m.iter()
                .flat_map(move |(p, bs)| bs.iter().map(move |b| (a.as_str(), p.as_str(), b.as_str())))
        })
    }

    /// All (subject, property, value) data assertions, in sorted order.
    pub fn data_assertion_triples(&self) -> impl Iterator<Item = (&str, &str, Value)> {
        self.data_assertions.iter().flat_map(|(a, m)| {
            m.iter()
                .flat_map(move |(p, vs)| vs.iter().map(move |v| (a.as_str(), p.as_str(), *v)))
        })
    }

    /// All (individual, class) assertions, in sorted order.
    pub fn class_assertion_pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.class_assertions
            .iter()
            .flat_map(|(a, cs)| cs.iter().map(move |c| (a.as_str(), c.as_str())))
    }

    /// Reflexive-transitive superclasses of a declared class.
    ///
    /// Cycles are tolerated: mutually reachable classes share closures.
    pub fn superclasses(&self, class: &str) -> Option<&BTreeSet<String>> {
        self.closure.get(class)
    }

    /// The full closure map (class to its reflexive-transitive superclasses).
    pub fn subclass_closure(&self) -> &BTreeMap<String, BTreeSet<String>> {
        &self.closure
    }

    /// Multiset of values asserted anywhere under a numeric data property.
    pub fn datatype_values(&self, prop: &str) -> Result<Vec<f64>> {
        match self.data_properties.get(prop) {
            None => Err(Error::Undeclared {
                kind: "data property",
                name: prop.to_string(),
            }),
            Some(DataKind::Boolean) => Err(Error::InvalidTask(format!(
                "data property `{prop}` is boolean, not numeric"
            ))),
            Some(DataKind::Numeric) => {
                let mut out = Vec::new();
                for per_ind in self.data_assertions.values() {
                    if let Some(vs) = per_ind.get(prop) {
                        for v in vs {
                            if let Value::Num(x) = v {
                                out.push(*x);
                            }
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// Copy of this KB with every assertion mentioning one of `hidden`
    /// removed (role assertions are dropped when either endpoint is hidden).
    /// Declarations, including the hidden individuals themselves, remain.
    pub fn without_assertions_of(&self, hidden: &BTreeSet<String>) -> KnowledgeBase {
        let mut kb = self.clone();
        kb.class_assertions.retain(|ind, _| !hidden.contains(ind));
        kb.role_assertions.retain(|ind, _| !hidden.contains(ind));
        for succs in kb.role_assertions.values_mut() {
            for bs in succs.values_mut() {
                bs.retain(|b| !hidden.contains(b));
            }
            succs.retain(|_, bs| !bs.is_empty());
        }
        kb.role_assertions.retain(|_, m| !m.is_empty());
        kb.data_assertions.retain(|ind, _| !hidden.contains(ind));
        kb
    }
}

/// Mutable builder; validates declarations before use and kinds of data
/// values, then freezes into a [`KnowledgeBase`].
#[derive(Debug, Default)]
pub struct KbBuilder {
    classes: BTreeSet<String>,
    subclass_axioms: BTreeSet<(String, String)>,
    object_properties: BTreeSet<String>,
    data_properties: BTreeMap<String, DataKind>,
    individuals: BTreeSet<String>,
    class_assertions: BTreeMap<String, BTreeSet<String>>,
    role_assertions: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    data_assertions: BTreeMap<String, BTreeMap<String, Vec<Value>>>,
}

impl KbBuilder {
    pub fn declare_class(&mut self, name: impl Into<String>) -> &mut Self {
        self.classes.insert(name.into());
        self
    }

    pub fn declare_object_property(&mut self, name: impl Into<String>) -> &mut Self {
        self.object_properties.insert(name.into());
        self
    }

    pub fn declare_data_property(&mut self, name: impl Into<String>, kind: DataKind) -> &mut Self {
        self.data_properties.insert(name.into(), kind);
        self
    }

    pub fn declare_individual(&mut self, name: impl Into<String>) -> &mut Self {
        self.individuals.insert(name.into());
        self
    }

    fn need_class(&self, name: &str) -> Result<()> {
        if self.classes.contains(name) {
            Ok(())
        } else {
            Err(Error::Undeclared {
                kind: "class",
                name: name.to_string(),
            })
        }
    }

    fn need_individual(&self, name: &str) -> Result<()> {
        if self.individuals.contains(name) {
            Ok(())
        } else {
            Err(Error::Undeclared {
                kind: "individual",
                name: name.to_string(),
            })
        }
    }

    /// Record `sub` as a subclass of `sup`.
    pub fn add_subclass(&mut self, sub: &str, sup: &str) -> Result<&mut Self> {
        self.need_class(sub)?;
        self.need_class(sup)?;
        self.subclass_axioms
            .insert((sub.to_string(), sup.to_string()));
        Ok(self)
    }

    pub fn assert_class(&mut self, ind: &str, class: &str) -> Result<&mut Self> {
        self.need_individual(ind)?;
        self.need_class(class)?;
        self.class_assertions
            .entry(ind.to_string())
            .or_default()
            .insert(class.to_string());
        Ok(self)
    }

    pub fn assert_role(&mut self, subject: &str, prop: &str, object: &str) -> Result<&mut Self> {
        self.need_individual(subject)?;
        self.need_individual(object)?;
        if !self.object_properties.contains(prop) {
            return Err(Error::Undeclared {
                kind: "object property",
                name: prop.to_string(),
            });
        }
        let succs = self
            .role_assertions
            .entry(subject.to_string())
            .or_default()
            .entry(prop.to_string())
            .or_default();
        if !succs.contains(&object.to_string()) {
            succs.push(object.to_string());
            succs.sort();
        }
        Ok(self)
    }

    pub fn assert_value(&mut self, ind: &str, prop: &str, value: Value) -> Result<&mut Self> {
        self.need_individual(ind)?;
        let kind = self.data_properties.get(prop).ok_or_else(|| Error::Undeclared {
            kind: "data property",
            name: prop.to_string(),
        })?;
        if *kind != value.kind() {
            return Err(Error::InvalidTask(format!(
                "value {value} does not match the declared kind of `{prop}`"
            )));
        }
        self.data_assertions
            .entry(ind.to_string())
            .or_default()
            .entry(prop.to_string())
            .or_default()
            .push(value);
        Ok(self)
    }

    /// Freeze into an immutable KB, computing the subclass closure.
    pub fn build(self) -> KnowledgeBase {
        let individuals: Vec<String> = self.individuals.iter().cloned().collect();
        let individual_index = individuals
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as u32))
            .collect();

        // Direct superclass adjacency, then per-class BFS.
        let mut direct: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (sub, sup) in &self.subclass_axioms {
            direct.entry(sub).or_default().push(sup);
        }
        let mut closure = BTreeMap::new();
        for class in &self.classes {
            let mut reach: BTreeSet<String> = BTreeSet::new();
            let mut queue = vec![class.as_str()];
            while let Some(c) = queue.pop() {
                if reach.insert(c.to_string()) {
                    if let Some(sups) = direct.get(c) {
                        queue.extend(sups.iter().copied());
                    }
                }
            }
            closure.insert(class.clone(), reach);
        }

        KnowledgeBase {
            classes: self.classes,
            subclass_axioms: self.subclass_axioms,
            object_properties: self.object_properties,
            data_properties: self.data_properties,
            individuals,
            individual_index,
            class_assertions: self.class_assertions,
            role_assertions: self.role_assertions,
            data_assertions: self.data_assertions,
            closure,
        }
    }
}
