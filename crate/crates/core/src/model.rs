//! Mentions, entities and per-document entity sets.
//!
//! An entity is a coreference chain of regular mentions, optionally merged
//! with an accommodated set: the collection of other entities that a
//! split-antecedent anaphor (e.g. "they" for John and Mary) refers to.
//! Accommodated sets may nest in the input; [`flatten`] rewrites them so that
//! every set lists atomic entities only.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

/// A token span inside one document. Two spans are aligned iff they are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MentionSpan {
    pub doc_id: String,
    /// First token, inclusive.
    pub start: usize,
    /// Last token, exclusive.
    pub end: usize,
}

impl MentionSpan {
    pub fn new(doc_id: impl Into<String>, start: usize, end: usize) -> Self {
        Self {
            doc_id: doc_id.into(),
            start,
            end,
        }
    }
}

impl fmt::Display for MentionSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{})", self.doc_id, self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entity {
    pub id: String,
    pub mentions: Vec<MentionSpan>,
    /// Ids of the entities forming this entity's accommodated set, if any.
    pub set_elements: Option<Vec<String>>,
}

impl Entity {
    pub fn new(id: impl Into<String>, mentions: Vec<MentionSpan>) -> Self {
        Self {
            id: id.into(),
            mentions,
            set_elements: None,
        }
    }

    pub fn with_set<I, S>(mut self, elements: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.set_elements = Some(elements.into_iter().map(Into::into).collect());
        self
    }

    pub fn has_set(&self) -> bool {
        self.set_elements.is_some()
    }

    pub fn is_atomic(&self) -> bool {
        self.set_elements.is_none()
    }
}

/// Generalized entity size: an accommodated set counts as one extra element.
pub fn cardinality(entity: &Entity) -> usize {
    entity.mentions.len() + usize::from(entity.has_set())
}

/// All entities of one side (key or response) of one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentSet {
    pub doc_id: String,
    pub entities: Vec<Entity>,
}

impl DocumentSet {
    pub fn new(doc_id: impl Into<String>, entities: Vec<Entity>) -> Self {
        Self {
            doc_id: doc_id.into(),
            entities,
        }
    }

    pub fn empty(doc_id: impl Into<String>) -> Self {
        Self::new(doc_id, Vec::new())
    }

    pub fn entity(&self, id: &str) -> Option<&Entity> {
        self.entities.iter().find(|e| e.id == id)
    }

    pub fn has_sets(&self) -> bool {
        self.entities.iter().any(Entity::has_set)
    }

    pub fn mention_count(&self) -> usize {
        self.entities.iter().map(|e| e.mentions.len()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    EmptySpan,
    ForeignMention,
    DuplicateEntityId,
    RepeatedMention,
    SelfReferentialSet,
    TooFewSetElements,
    DuplicateSetElement,
    SetWithoutMentions,
    DanglingElementReference,
    CyclicSet,
}

impl Rule {
    pub fn describe(self) -> &'static str {
        match self {
            Rule::EmptySpan => "empty span",
            Rule::ForeignMention => "mention from another document",
            Rule::DuplicateEntityId => "duplicate entity id",
            Rule::RepeatedMention => "repeated mention",
            Rule::SelfReferentialSet => "self-referential set",
            Rule::TooFewSetElements => "set with fewer than two elements",
            Rule::DuplicateSetElement => "duplicate set element",
            Rule::SetWithoutMentions => "set without mentions",
            Rule::DanglingElementReference => "dangling element reference",
            Rule::CyclicSet => "cyclic set reference",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.describe())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub doc_id: String,
    pub entity_id: String,
    pub rule: Rule,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: entity {}: {}", self.doc_id, self.entity_id, self.rule)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("{doc_id}: cyclic set reference: {}", cycle.join(" -> "))]
    Cycle { doc_id: String, cycle: Vec<String> },
    #[error("{doc_id}: entity {entity_id} references unknown entity {missing}")]
    Dangling {
        doc_id: String,
        entity_id: String,
        missing: String,
    },
}

/// Checks every structural invariant of a document set. An empty result means
/// the set is well-formed and can be flattened and scored.
pub fn validate(docset: &DocumentSet) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |entity_id: &str, rule: Rule, detail: String| {
        out.push(Violation {
            doc_id: docset.doc_id.clone(),
            entity_id: entity_id.to_string(),
            rule,
            detail,
        })
    };

    let mut ids: HashSet<&str> = HashSet::new();
    for e in &docset.entities {
        if !ids.insert(e.id.as_str()) {
            push(&e.id, Rule::DuplicateEntityId, String::new());
        }
    }

    let mut owner: HashMap<&MentionSpan, &str> = HashMap::new();
    for e in &docset.entities {
        for m in &e.mentions {
            if m.start >= m.end {
                push(&e.id, Rule::EmptySpan, m.to_string());
            }
            if m.doc_id != docset.doc_id {
                push(&e.id, Rule::ForeignMention, m.to_string());
            }
            if let Some(prev) = owner.insert(m, &e.id) {
                let detail = if prev == e.id {
                    format!("{m} listed twice")
                } else {
                    format!("{m} also in {prev}")
                };
                push(&e.id, Rule::RepeatedMention, detail);
            }
        }
        let Some(elements) = &e.set_elements else {
            continue;
        };
        if e.mentions.is_empty() {
            push(&e.id, Rule::SetWithoutMentions, String::new());
        }
        let mut seen = HashSet::new();
        for el in elements {
            if el == &e.id {
                push(&e.id, Rule::SelfReferentialSet, String::new());
            } else if !ids.contains(el.as_str()) {
                push(&e.id, Rule::DanglingElementReference, el.clone());
            }
            if !seen.insert(el) {
                push(&e.id, Rule::DuplicateSetElement, el.clone());
            }
        }
        let distinct = seen.iter().filter(|el| **el != &e.id).count();
        if distinct < 2 {
            push(&e.id, Rule::TooFewSetElements, format!("{distinct} distinct"));
        }
    }

    if let Some(cycle) = find_cycle(docset) {
        // Self-references are already reported on their own.
        if cycle.len() > 2 {
            push(&cycle[0], Rule::CyclicSet, cycle.join(" -> "));
        }
    }
    out
}

/// Returns a cycle in the set-element graph as a closed walk
/// `[a, b, ..., a]`, if there is one.
fn find_cycle(docset: &DocumentSet) -> Option<Vec<String>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Fresh,
        Active,
        Done,
    }
    let index: HashMap<&str, usize> = docset
        .entities
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id.as_str(), i))
        .collect();
    let mut mark = vec![Mark::Fresh; docset.entities.len()];
    let mut path: Vec<usize> = Vec::new();

    fn visit(
        v: usize,
        docset: &DocumentSet,
        index: &HashMap<&str, usize>,
        mark: &mut [Mark],
        path: &mut Vec<usize>,
    ) -> Option<Vec<String>> {
        mark[v] = Mark::Active;
        path.push(v);
        for el in docset.entities[v].set_elements.iter().flatten() {
            let Some(&w) = index.get(el.as_str()) else {
                continue;
            };
            match mark[w] {
                Mark::Active => {
                    let from = path.iter().position(|&p| p == w).unwrap_or(0);
                    let mut cycle: Vec<String> = path[from..].iter().map(|&p| docset.entities[p].id.clone()).collect();
                    cycle.push(docset.entities[w].id.clone());
                    return Some(cycle);
                }
                Mark::Fresh => {
                    if let Some(c) = visit(w, docset, index, mark, path) {
                        return Some(c);
                    }
                }
                Mark::Done => {}
            }
        }
        path.pop();
        mark[v] = Mark::Done;
        None
    }

    (0..docset.entities.len()).find_map(|v| {
        if mark[v] == Mark::Fresh {
            visit(v, docset, &index, &mut mark, &mut path)
        } else {
            None
        }
    })
}

/// Replaces every set element that is itself an accommodated set with that
/// set's (recursively flattened) elements. Elements are deduplicated and
/// sorted by id; mentions are untouched.
pub fn flatten(docset: &DocumentSet) -> Result<DocumentSet, ModelError> {
    if let Some(cycle) = find_cycle(docset) {
        return Err(ModelError::Cycle {
            doc_id: docset.doc_id.clone(),
            cycle,
        });
    }
    let by_id: HashMap<&str, &Entity> = docset.entities.iter().map(|e| (e.id.as_str(), e)).collect();
    let mut memo: HashMap<String, BTreeSet<String>> = HashMap::new();

    fn atoms(
        id: &str,
        owner: &str,
        doc_id: &str,
        by_id: &HashMap<&str, &Entity>,
        memo: &mut HashMap<String, BTreeSet<String>>,
    ) -> Result<BTreeSet<String>, ModelError> {
        let entity = by_id.get(id).ok_or_else(|| ModelError::Dangling {
            doc_id: doc_id.to_string(),
            entity_id: owner.to_string(),
            missing: id.to_string(),
        })?;
        let Some(elements) = &entity.set_elements else {
            return Ok(BTreeSet::from([id.to_string()]));
        };
        if let Some(hit) = memo.get(id) {
            return Ok(hit.clone());
        }
        let mut acc = BTreeSet::new();
        for el in elements {
            acc.extend(atoms(el, id, doc_id, by_id, memo)?);
        }
        memo.insert(id.to_string(), acc.clone());
        Ok(acc)
    }

    let mut entities = Vec::with_capacity(docset.entities.len());
    for e in &docset.entities {
        let mut flat = e.clone();
        if e.has_set() {
            let set = atoms(&e.id, &e.id, &docset.doc_id, &by_id, &mut memo)?;
            flat.set_elements = Some(set.into_iter().collect());
        }
        entities.push(flat);
    }
    Ok(DocumentSet {
        doc_id: docset.doc_id.clone(),
        entities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(s: usize) -> MentionSpan {
        MentionSpan::new("d", s, s + 1)
    }

    fn nested() -> DocumentSet {
        DocumentSet::new(
            "d",
            vec![
                Entity::new("K1", vec![span(0)]),
                Entity::new("K2", vec![span(1)]),
                Entity::new("K3", vec![span(2)]).with_set(["K1", "K2"]),
                Entity::new("K4", vec![span(3)]),
                Entity::new("K5", vec![span(4)]),
                Entity::new("K6", vec![span(5)]).with_set(["K3", "K4"]),
                Entity::new("K7", vec![span(6)]).with_set(["K3", "K6", "K5"]),
            ],
        )
    }

    #[test]
    fn flatten_expands_recursively_and_dedupes() {
        let flat = flatten(&nested()).unwrap();
        let k6 = flat.entity("K6").unwrap();
        assert_eq!(k6.set_elements.as_deref().unwrap(), ["K1", "K2", "K4"]);
        let k7 = flat.entity("K7").unwrap();
        assert_eq!(k7.set_elements.as_deref().unwrap(), ["K1", "K2", "K4", "K5"]);
        assert_eq!(flatten(&flat).unwrap(), flat);
    }

    #[test]
    fn flatten_without_sets_is_identity() {
        let d = DocumentSet::new("d", vec![Entity::new("a", vec![span(0), span(1)])]);
        assert_eq!(flatten(&d).unwrap(), d);
    }

    #[test]
    fn cycle_is_an_error() {
        let d = DocumentSet::new(
            "d",
            vec![
                Entity::new("a", vec![span(0)]).with_set(["b", "c"]),
                Entity::new("b", vec![span(1)]).with_set(["a", "c"]),
                Entity::new("c", vec![span(2)]),
            ],
        );
        match flatten(&d) {
            Err(ModelError::Cycle { cycle, .. }) => assert_eq!(cycle, ["a", "b", "a"]),
            other => panic!("expected cycle, got {other:?}"),
        }
        assert!(validate(&d).iter().any(|v| v.rule == Rule::CyclicSet));
    }

    #[test]
    fn cardinality_counts_the_set_once() {
        let flat = flatten(&nested()).unwrap();
        assert_eq!(cardinality(flat.entity("K1").unwrap()), 1);
        assert_eq!(cardinality(flat.entity("K7").unwrap()), 2);
        let k = Entity::new("x", vec![span(0), span(1), span(2)]).with_set(["a", "b"]);
        assert_eq!(cardinality(&k), 4);
    }

    fn rules(d: &DocumentSet) -> Vec<Rule> {
        validate(d).into_iter().map(|v| v.rule).collect()
    }

    #[test]
    fn validation_catches_each_rule() {
        assert!(validate(&nested()).is_empty());

        let own = DocumentSet::new(
            "d",
            vec![
                Entity::new("a", vec![span(0)]).with_set(["a", "b", "c"]),
                Entity::new("b", vec![span(1)]),
                Entity::new("c", vec![span(2)]),
            ],
        );
        assert_eq!(rules(&own), [Rule::SelfReferentialSet]);

        let shared = DocumentSet::new(
            "d",
            vec![Entity::new("a", vec![span(0)]), Entity::new("b", vec![span(0)])],
        );
        assert_eq!(rules(&shared), [Rule::RepeatedMention]);

        let dangling = DocumentSet::new(
            "d",
            vec![
                Entity::new("a", vec![span(0)]).with_set(["b", "zz"]),
                Entity::new("b", vec![span(1)]),
            ],
        );
        assert_eq!(rules(&dangling), [Rule::DanglingElementReference]);

        let thin = DocumentSet::new(
            "d",
            vec![
                Entity::new("a", vec![]).with_set(["b", "b"]),
                Entity::new("b", vec![span(1)]),
                Entity::new("b", vec![MentionSpan::new("d", 4, 4)]),
            ],
        );
        assert_eq!(
            rules(&thin),
            [
                Rule::DuplicateEntityId,
                Rule::SetWithoutMentions,
                Rule::DuplicateSetElement,
                Rule::TooFewSetElements,
                Rule::EmptySpan,
            ]
        );
    }

    #[test]
    fn violation_names_entity_and_rule() {
        let d = DocumentSet::new(
            "d",
            vec![Entity::new("a", vec![span(0)]), Entity::new("b", vec![span(0)])],
        );
        let msg = validate(&d)[0].to_string();
        assert!(msg.contains("entity b"), "{msg}");
        assert!(msg.contains("repeated mention"), "{msg}");
    }
}
