use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::IndexSet;
use crate::graph::{EdgeId, FaceSelection, PlaneGraph, VertexId};
use crate::matching::BruteCounter;
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Lhs,
    Rhs,
}

/// One summand of an identity side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub side: Part,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<IndexSet>,
    pub factors: Vec<Weight>,
    pub product: Weight,
}

impl Term {
    pub fn new(side: Part, label: impl Into<String>, factors: Vec<Weight>) -> Self {
        let product = Weight::product(factors.iter());
        Term { side, label: label.into(), subset: None, factors, product }
    }

    pub fn with_subset(mut self, subset: IndexSet) -> Self {
        self.subset = Some(subset);
        self
    }

    /// Same term with its product negated, for subtracted summands.
    pub fn negated(mut self) -> Self {
        self.factors.insert(0, Weight::int(-1));
        self.product = -&self.product;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub graph_hash: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selection: Option<FaceSelection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

/// Both sides of one identity instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub instance: Instance,
    pub lhs: Weight,
    pub rhs: Weight,
    pub terms: Vec<Term>,
    pub pass: bool,
}

impl IdentityReport {
    /// Sums the terms of each side.
    pub fn from_terms(identity: &str, instance: Instance, terms: Vec<Term>) -> Self {
        let side = |p: Part| Weight::sum(terms.iter().filter(|t| t.side == p).map(|t| &t.product));
        let (lhs, rhs) = (side(Part::Lhs), side(Part::Rhs));
        Self::new(identity, instance, lhs, rhs, terms)
    }

    pub fn new(identity: &str, instance: Instance, lhs: Weight, rhs: Weight, terms: Vec<Term>) -> Self {
        let pass = lhs == rhs;
        IdentityReport { identity: identity.to_string(), instance, lhs, rhs, terms, pass }
    }

    pub fn terms_on(&self, side: Part) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(move |t| t.side == side)
    }

    /// Multi-line dump of both sides and every term.
    pub fn breakdown(&self) -> String {
        let mut s = String::new();
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{verdict} {} [{}]", self.identity, self.instance.graph_hash);
        let _ = writeln!(s, "  lhs = {}", self.lhs);
        let _ = writeln!(s, "  rhs = {}", self.rhs);
        for t in &self.terms {
            let factors: Vec<String> = t.factors.iter().map(|f| format!("({f})")).collect();
            let _ = writeln!(s, "  {:?} {}: {} = {}", t.side, t.label, factors.join("*"), t.product);
        }
        s
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.instance.seed = Some(seed);
        self
    }
}

/// Short content hash of a graph's JSON form.
pub fn graph_hash(g: &PlaneGraph) -> String {
    let digest = Sha256::digest(g.to_json().as_bytes());
    hex::encode(&digest[..8])
}

/// Memoized `M(G - X - E)` over subgraphs of one base graph.
pub struct Oracle {
    base: PlaneGraph,
    counters: HashMap<BTreeSet<EdgeId>, BruteCounter>,
}

impl Oracle {
    pub fn new(base: &PlaneGraph) -> Self {
        Oracle { base: base.clone(), counters: HashMap::new() }
    }

    pub fn base(&self) -> &PlaneGraph {
        &self.base
    }

    /// `M(G - vertices - edges)`.
    pub fn m(&mut self, vertices: &[VertexId], edges: &[EdgeId]) -> Weight {
        let key: BTreeSet<EdgeId> = edges.iter().copied().collect();
        let base = &self.base;
        let counter = self
            .counters
            .entry(key.clone())
            .or_insert_with(|| BruteCounter::new(&base.delete_edges(&key).expect("deleted edges belong to the graph")));
        counter.without(vertices)
    }

    pub fn weight(&self, e: EdgeId) -> Weight {
        self.base.edge(e).expect("marked edge exists").weight.clone()
    }
}
