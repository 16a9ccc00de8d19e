//! Randomized verification campaigns over the grid-subgraph corpus.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::condensation::{
    bipartite_edge_sides, bipartite_subset_sides, bipartite_two_edge_sides, bipartite_vertex_edge_sides,
    bipartite_vertex_sides, build_symmetric_double, edge_condensation_sides, edge_split_check, four_point_sides,
    reduced_subgraphs_check, symmetric_double_check, two_edge_sides, vertex_condensation_sides, vertex_edge_sides,
    IdentityReport,
};
use crate::error::{Error, Result};
use crate::generate::{
    grid_subgraph, rng, sample_instance, symmetric_grid, trial_seed, GridSpec, SelectionKind, WeightMode,
};
use crate::graph::{EdgeId, FaceSelection, PlaneGraph, Side, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    FourPoint,
    VertexCondensation,
    SymmetricDouble,
    ReducedSubgraphs,
    EdgeSplit,
    EdgeCondensation,
    TwoEdgeCondensation,
    BipartiteVertexCondensation,
    BipartiteSubsetCondensation,
    BipartiteEdgeCondensation,
    BipartiteTwoEdgeCondensation,
    VertexEdgeCondensation,
    BipartiteVertexEdgeCondensation,
}

impl Identity {
    pub const ALL: [Identity; 13] = [
        Identity::FourPoint,
        Identity::VertexCondensation,
        Identity::SymmetricDouble,
        Identity::ReducedSubgraphs,
        Identity::EdgeSplit,
        Identity::EdgeCondensation,
        Identity::TwoEdgeCondensation,
        Identity::BipartiteVertexCondensation,
        Identity::BipartiteSubsetCondensation,
        Identity::BipartiteEdgeCondensation,
        Identity::BipartiteTwoEdgeCondensation,
        Identity::VertexEdgeCondensation,
        Identity::BipartiteVertexEdgeCondensation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::FourPoint => "four-point",
            Identity::VertexCondensation => "vertex-condensation",
            Identity::SymmetricDouble => "symmetric-double",
            Identity::ReducedSubgraphs => "reduced-subgraphs",
            Identity::EdgeSplit => "edge-split",
            Identity::EdgeCondensation => "edge-condensation",
            Identity::TwoEdgeCondensation => "two-edge-condensation",
            Identity::BipartiteVertexCondensation => "bipartite-vertex-condensation",
            Identity::BipartiteSubsetCondensation => "bipartite-subset-condensation",
            Identity::BipartiteEdgeCondensation => "bipartite-edge-condensation",
            Identity::BipartiteTwoEdgeCondensation => "bipartite-two-edge-condensation",
            Identity::VertexEdgeCondensation => "vertex-edge-condensation",
            Identity::BipartiteVertexEdgeCondensation => "bipartite-vertex-edge-condensation",
        }
    }

    /// Whether the identity needs a bipartite graph.
    pub fn bipartite(self) -> bool {
        matches!(
            self,
            Identity::BipartiteVertexCondensation
                | Identity::BipartiteSubsetCondensation
                | Identity::BipartiteEdgeCondensation
                | Identity::BipartiteTwoEdgeCondensation
                | Identity::BipartiteVertexEdgeCondensation
        )
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Identity::ALL.into_iter().find(|i| i.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Identity::ALL.iter().map(|i| i.name()).collect();
            format!("unknown identity `{s}`; expected one of {}", names.join(", "))
        })
    }
}

/// Chord probability used when the campaign does not set one.
pub const DEFAULT_CHORDS: f64 = 0.3;

#[derive(Clone, Debug)]
pub struct Campaign {
    pub identity: Identity,
    pub trials: usize,
    pub seed: u64,
    pub rows: u32,
    pub cols: u32,
    pub keep: f64,
    pub weights: WeightMode,
    /// Face-diagonal probability; bipartite identities always use none.
    pub chords: Option<f64>,
}

impl Campaign {
    pub fn new(identity: Identity, trials: usize, seed: u64) -> Self {
        Campaign { identity, trials, seed, rows: 4, cols: 4, keep: 0.8, weights: WeightMode::Rational, chords: None }
    }

    pub fn with_grid(mut self, rows: u32, cols: u32, keep: f64) -> Self {
        self.rows = rows;
        self.cols = cols;
        self.keep = keep;
        self
    }

    pub fn with_weights(mut self, weights: WeightMode) -> Self {
        self.weights = weights;
        self
    }

    fn spec(&self) -> GridSpec {
        let chords = if self.identity.bipartite() { 0.0 } else { self.chords.unwrap_or(DEFAULT_CHORDS) };
        GridSpec::new(self.rows, self.cols, self.keep).with_weights(self.weights).with_chords(chords)
    }
}

/// A trial that produced no instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Skipped {
    pub trial: usize,
    pub seed: u64,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug)]
pub struct CampaignResult {
    pub reports: Vec<IdentityReport>,
    pub skipped: Vec<Skipped>,
}

impl CampaignResult {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    /// Pass and fail counts per report name.
    pub fn tally(&self) -> BTreeMap<String, Tally> {
        let mut out: BTreeMap<String, Tally> = BTreeMap::new();
        for r in &self.reports {
            let t = out.entry(r.identity.clone()).or_default();
            if r.pass {
                t.pass += 1;
            } else {
                t.fail += 1;
            }
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut lines: Vec<String> =
            self.tally().iter().map(|(name, t)| format!("{name}: {} passed, {} failed", t.pass, t.fail)).collect();
        if !self.skipped.is_empty() {
            lines.push(format!("{} trials skipped", self.skipped.len()));
        }
        lines.join("\n")
    }

    /// The reports as a JSON array.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.reports).expect("reports serialize")
    }
}

/// Runs every trial in parallel. Trials whose generator gives up are
/// skipped; any other error aborts the campaign.
pub fn run_campaign(c: &Campaign) -> Result<CampaignResult> {
    let outcomes: Vec<(usize, u64, Result<Vec<IdentityReport>>)> = (0..c.trials)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(c.seed, i as u64);
            (i, seed, run_trial(c, seed))
        })
        .collect();
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for (trial, seed, outcome) in outcomes {
        match outcome {
            Ok(rs) => reports.extend(rs.into_iter().map(|r| r.with_seed(seed))),
            Err(e @ Error::GenerationExhausted(_)) => skipped.push(Skipped { trial, seed, reason: e.to_string() }),
            Err(e) => return Err(e),
        }
    }
    Ok(CampaignResult { reports, skipped })
}

fn colours(g: &PlaneGraph) -> Option<BTreeMap<VertexId, Side>> {
    g.bipartition()
}

fn split_colours(g: &PlaneGraph, sel: &FaceSelection) -> bool {
    colours(g).is_some_and(|c| {
        let side = c[&sel.a(1)];
        sel.a_all().iter().all(|v| c[v] == side) && sel.b_all().iter().all(|v| c[v] != side)
    })
}

fn balanced_subsets(g: &PlaneGraph, sel: &FaceSelection) -> bool {
    colours(g).is_some_and(|c| {
        let p = sel.a_all().iter().filter(|v| c[v] == Side::U).count()
            + sel.b_all().iter().filter(|v| c[v] == Side::U).count();
        p == sel.k()
    })
}

fn face_edge(g: &PlaneGraph, sel: &FaceSelection) -> Option<EdgeId> {
    let e = g.edge_between(sel.a(2), sel.b(2))?;
    g.faces()[sel.face].contains_edge(e.id).then_some(e.id)
}

/// One trial: a fresh instance from `seed` and the reports it yields.
pub fn run_trial(c: &Campaign, seed: u64) -> Result<Vec<IdentityReport>> {
    let mut r = rng(seed);
    let spec = c.spec();
    let graph = |r: &mut ChaCha8Rng| grid_subgraph(&spec, r.gen());
    let vertices = SelectionKind::default();
    let edges = SelectionKind { edges: true, ..SelectionKind::default() };
    let any = |_: &PlaneGraph, _: &FaceSelection| true;
    let k23 = |r: &mut ChaCha8Rng| if r.gen_bool(0.5) { 2 } else { 3 };

    let all_j = |sel: &FaceSelection, f: &dyn Fn(usize) -> Result<IdentityReport>| -> Result<Vec<IdentityReport>> {
        (1..=sel.k()).map(f).collect()
    };

    match c.identity {
        Identity::FourPoint => {
            let (g, sel) = sample_instance(&mut r, graph, 2, vertices, any)?;
            Ok(vec![four_point_sides(&g, sel.face, [sel.a(1), sel.b(1), sel.a(2), sel.b(2)])?])
        }
        Identity::VertexCondensation => {
            let k = k23(&mut r);
            let (g, sel) = sample_instance(&mut r, graph, k, vertices, any)?;
            all_j(&sel, &|j| vertex_condensation_sides(&g, &sel, j))
        }
        Identity::SymmetricDouble => {
            let k = k23(&mut r);
            let kind = SelectionKind { outer_only: true, ..vertices };
            let even = |g: &PlaneGraph, _: &FaceSelection| g.vertex_count().is_multiple_of(2);
            let (g, sel) = sample_instance(&mut r, graph, k, kind, even)?;
            let mut out = Vec::new();
            for j in 1..=k {
                out.extend(symmetric_double_check(&g, &sel, j)?);
            }
            Ok(out)
        }
        Identity::ReducedSubgraphs => {
            if r.gen_bool(0.5) {
                let cols = c.cols.clamp(2, 6);
                let h = (c.rows / 2).clamp(1, 2);
                let sg = symmetric_grid(h, cols, c.keep, c.weights, r.gen())?;
                Ok(vec![reduced_subgraphs_check(&sg)])
            } else {
                let k = r.gen_range(1..=3);
                let kind = SelectionKind { outer_only: true, ..vertices };
                let (g, sel) = sample_instance(&mut r, graph, k, kind, any)?;
                let double = build_symmetric_double(&g, &sel)?;
                Ok(vec![reduced_subgraphs_check(&double.symmetric)])
            }
        }
        Identity::EdgeSplit => {
            for _ in 0..crate::generate::MAX_ATTEMPTS {
                let g = graph(&mut r);
                let ids: Vec<EdgeId> = g.edges().map(|e| e.id).collect();
                if let Some(&e) = ids.get(r.gen_range(0..ids.len().max(1))) {
                    return Ok(vec![edge_split_check(&g, e)?]);
                }
            }
            Err(Error::GenerationExhausted(crate::generate::MAX_ATTEMPTS))
        }
        Identity::EdgeCondensation => {
            let k = k23(&mut r);
            let (g, sel) = sample_instance(&mut r, graph, k, edges, any)?;
            let mut out = all_j(&sel, &|j| edge_condensation_sides(&g, &sel, j))?;
            if k == 2 {
                out.push(two_edge_sides(&g, &sel)?);
            }
            Ok(out)
        }
        Identity::TwoEdgeCondensation => {
            let (g, sel) = sample_instance(&mut r, graph, 2, edges, any)?;
            Ok(vec![two_edge_sides(&g, &sel)?])
        }
        Identity::BipartiteVertexCondensation => {
            let k = k23(&mut r);
            let (g, sel) = sample_instance(&mut r, graph, k, vertices, split_colours)?;
            all_j(&sel, &|j| bipartite_vertex_sides(&g, &sel, j))
        }
        Identity::BipartiteSubsetCondensation => {
            let k = k23(&mut r);
            let (g, sel) = sample_instance(&mut r, graph, k, vertices, balanced_subsets)?;
            Ok(vec![bipartite_subset_sides(&g, &sel)?])
        }
        Identity::BipartiteEdgeCondensation => {
            let k = k23(&mut r);
            let (g, sel) = sample_instance(&mut r, graph, k, edges, split_colours)?;
            all_j(&sel, &|j| bipartite_edge_sides(&g, &sel, j))
        }
        Identity::BipartiteTwoEdgeCondensation => {
            let same = r.gen_bool(0.5);
            let case = move |g: &PlaneGraph, sel: &FaceSelection| {
                colours(g).is_some_and(|c| (c[&sel.a(1)] == c[&sel.a(2)]) == same)
            };
            let (g, sel) = sample_instance(&mut r, graph, 2, edges, case)?;
            Ok(vec![bipartite_two_edge_sides(&g, &sel)?])
        }
        Identity::VertexEdgeCondensation => {
            let (g, sel) = sample_instance(&mut r, graph, 2, vertices, |g, sel| face_edge(g, sel).is_some())?;
            Ok(vec![vertex_edge_sides(&g, &sel)?])
        }
        Identity::BipartiteVertexEdgeCondensation => {
            let first = r.gen_bool(0.5);
            let case = move |g: &PlaneGraph, sel: &FaceSelection| {
                face_edge(g, sel).is_some()
                    && colours(g)
                        .is_some_and(|c| c[&sel.a(1)] != c[&sel.b(1)] && (c[&sel.a(1)] == c[&sel.b(2)]) == first)
            };
            let (g, sel) = sample_instance(&mut r, graph, 2, vertices, case)?;
            Ok(vec![bipartite_vertex_edge_sides(&g, &sel)?])
        }
    }
}
