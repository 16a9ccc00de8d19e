//! Weighted perfect-matching sums `M(G)`.
//!
//! [`matching_sum_brute`] works for any weights and is the reference
//! oracle. [`count_fkt`] is the polynomial-time path for nonnegative scalar
//! weights.

mod kasteleyn;
mod pfaffian;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, PlaneGraph, VertexId};
use crate::weight::{Scalar, Weight};

pub use kasteleyn::{kasteleyn_orient, Orientation};
pub use pfaffian::pfaffian;

pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// A perfect matching with its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub edges: BTreeSet<EdgeId>,
    pub weight: Weight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Brute,
    Fkt,
    /// FKT when every weight is a scalar, brute force otherwise.
    Auto,
}

/// `M(G)` by the requested method.
pub fn matching_sum(g: &PlaneGraph, method: Method) -> Result<Weight> {
    match method {
        Method::Brute => Ok(matching_sum_brute(g)),
        Method::Fkt => count_fkt(g).map(Weight::Scalar),
        Method::Auto => {
            if g.has_scalar_weights() && !g.edges().any(|e| e.weight.is_negative()) {
                count_fkt(g).map(Weight::Scalar)
            } else {
                Ok(matching_sum_brute(g))
            }
        }
    }
}

/// Sum over perfect matchings of the product of edge weights. Forced edges
/// are stripped first; the rest is a memoized search that splits into
/// components and branches on a minimum-degree vertex.
pub fn matching_sum_brute(g: &PlaneGraph) -> Weight {
    let forced = g.reduce_forced();
    if !forced.feasible {
        return Weight::zero();
    }
    let rest = BruteCounter::new(&forced.residual).total();
    &forced.factor * &rest
}

/// Memoized matching sums of the vertex-deleted subgraphs of one graph.
pub struct BruteCounter {
    index: BTreeMap<VertexId, usize>,
    adj: Vec<Vec<(usize, Weight)>>,
    memo: HashMap<Vec<u64>, Weight>,
}

impl BruteCounter {
    pub fn new(g: &PlaneGraph) -> Self {
        let index: BTreeMap<VertexId, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); index.len()];
        for e in g.edges() {
            let (a, b) = (index[&e.u], index[&e.v]);
            adj[a].push((b, e.weight.clone()));
            adj[b].push((a, e.weight.clone()));
        }
        BruteCounter { index, adj, memo: HashMap::new() }
    }

    pub fn total(&mut self) -> Weight {
        self.without(&[])
    }

    /// `M(G - gone)`. Vertices not in the graph are ignored.
    pub fn without(&mut self, gone: &[VertexId]) -> Weight {
        let mut set = vec![0u64; self.index.len().div_ceil(64)];
        for i in 0..self.index.len() {
            set[i / 64] |= 1 << (i % 64);
        }
        for v in gone {
            if let Some(&i) = self.index.get(v) {
                set[i / 64] &= !(1 << (i % 64));
            }
        }
        self.solve(set)
    }

    fn solve(&mut self, set: Vec<u64>) -> Weight {
        let size: u32 = set.iter().map(|w| w.count_ones()).sum();
        if size == 0 {
            return Weight::one();
        }
        if size % 2 == 1 {
            return Weight::zero();
        }
        if let Some(w) = self.memo.get(&set) {
            return w.clone();
        }
        let value = self.solve_uncached(&set);
        self.memo.insert(set, value.clone());
        value
    }

    fn members(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
        set.iter()
            .enumerate()
            .flat_map(|(k, &word)| (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| k * 64 + b))
    }

    fn contains(set: &[u64], i: usize) -> bool {
        set[i / 64] >> (i % 64) & 1 == 1
    }

    fn solve_uncached(&mut self, set: &[u64]) -> Weight {
        let first = Self::members(set).next().unwrap();
        let mut comp = vec![0u64; set.len()];
        comp[first / 64] |= 1 << (first % 64);
        let mut stack = vec![first];
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adj[v] {
                if Self::contains(set, w) && !Self::contains(&comp, w) {
                    comp[w / 64] |= 1 << (w % 64);
                    stack.push(w);
                }
            }
        }
        if comp != set {
            let rest: Vec<u64> = set.iter().zip(&comp).map(|(s, c)| s & !c).collect();
            let a = self.solve(comp);
            if a.is_zero() {
                return a;
            }
            let b = self.solve(rest);
            return &a * &b;
        }

        let pivot = Self::members(set)
            .min_by_key(|&v| self.adj[v].iter().filter(|(w, _)| Self::contains(set, *w)).count())
            .unwrap();
        let choices: Vec<(usize, Weight)> =
            self.adj[pivot].iter().filter(|(w, _)| Self::contains(set, *w)).cloned().collect();
        let mut total = Weight::zero();
        for (w, weight) in choices {
            let mut next = set.to_vec();
            next[pivot / 64] &= !(1 << (pivot % 64));
            next[w / 64] &= !(1 << (w % 64));
            let sub = self.solve(next);
            if !sub.is_zero() {
                total = &total + &(&weight * &sub);
            }
        }
        total
    }
}

/// All perfect matchings, failing once more than `cap` are found.
pub fn enumerate_matchings_capped(g: &PlaneGraph, cap: usize) -> Result<Vec<Matching>> {
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut free: BTreeSet<VertexId> = g.vertices().collect();
    if free.len().is_multiple_of(2) {
        enumerate_rec(g, &mut free, &mut chosen, &mut out, cap)?;
    }
    Ok(out)
}

pub fn enumerate_matchings(g: &PlaneGraph) -> Result<Vec<Matching>> {
    enumerate_matchings_capped(g, DEFAULT_ENUMERATION_CAP)
}

fn enumerate_rec(
    g: &PlaneGraph,
    free: &mut BTreeSet<VertexId>,
    chosen: &mut Vec<EdgeId>,
    out: &mut Vec<Matching>,
    cap: usize,
) -> Result<()> {
    let live = |v: VertexId, free: &BTreeSet<VertexId>| {
        g.rotation(v).iter().copied().filter(|e| free.contains(&g.edge(*e).unwrap().other(v))).collect::<Vec<_>>()
    };
    let Some(pivot) = free.iter().copied().min_by_key(|&v| live(v, free).len()) else {
        if out.len() == cap {
            return Err(Error::ResultTooLarge { cap });
        }
        let weight = Weight::product(chosen.iter().map(|e| &g.edge(*e).unwrap().weight));
        out.push(Matching { edges: chosen.iter().copied().collect(), weight });
        return Ok(());
    };
    for e in live(pivot, free) {
        let other = g.edge(e).unwrap().other(pivot);
        free.remove(&pivot);
        free.remove(&other);
        chosen.push(e);
        let r = enumerate_rec(g, free, chosen, out, cap);
        chosen.pop();
        free.insert(pivot);
        free.insert(other);
        r?;
    }
    Ok(())
}

/// `M(G)` as the absolute Pfaffian of the Kasteleyn-signed weight matrix,
/// taken component by component.
pub fn count_fkt(g: &PlaneGraph) -> Result<Scalar> {
    let mut weights = BTreeMap::new();
    for e in g.edges() {
        let w = e.weight.as_scalar().ok_or(Error::PolynomialWeights)?;
        if w.is_negative() {
            return Err(Error::NegativeWeight(e.id));
        }
        weights.insert(e.id, w);
    }
    if g.vertex_count() % 2 == 1 {
        return Ok(Scalar::zero());
    }
    let comps = g.components();
    if comps.len() > 1 {
        let mut total = Scalar::one();
        for comp in comps {
            if comp.len() % 2 == 1 {
                return Ok(Scalar::zero());
            }
            let outside: Vec<VertexId> = g.vertices().filter(|v| !comp.contains(v)).collect();
            total *= count_fkt(&g.delete_vertices(&outside)?)?;
            if total.is_zero() {
                break;
            }
        }
        return Ok(total);
    }

    let orientation = kasteleyn_orient(g)?;
    let index: BTreeMap<VertexId, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let n = index.len();
    let denom = weights.values().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for e in g.edges() {
        let w = &weights[&e.id];
        let entry = w.numer() * (&denom / w.denom());
        let (a, b) = if orientation.tail(e.id) == Some(e.u) { (e.u, e.v) } else { (e.v, e.u) };
        let (i, j) = (index[&a], index[&b]);
        m[j][i] = -&entry;
        m[i][j] = entry;
    }
    let pf = pfaffian(m).abs();
    Ok(Scalar::new(pf, num_traits::pow(denom, n / 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{cycle, grid, unit_cycle};
    use crate::graph::Edge;
    use proptest::prelude::*;

    fn weighted_square() -> PlaneGraph {
        cycle(&[Weight::int(2), Weight::int(3), Weight::int(5), Weight::int(7)])
    }

    #[test]
    fn empty_graph_sums_to_one() {
        assert_eq!(matching_sum_brute(&PlaneGraph::empty()), Weight::one());
        assert_eq!(count_fkt(&PlaneGraph::empty()).unwrap(), Scalar::one());
    }

    #[test]
    fn weighted_square_sum() {
        assert_eq!(matching_sum_brute(&weighted_square()), Weight::int(31));
        assert_eq!(count_fkt(&weighted_square()).unwrap(), Scalar::from_integer(31.into()));
    }

    #[test]
    fn square_and_path_enumeration() {
        assert_eq!(enumerate_matchings(&unit_cycle(4)).unwrap().len(), 2);
        let path = unit_cycle(4).delete_edges(&[EdgeId(3)]).unwrap();
        assert_eq!(enumerate_matchings(&path).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_cap() {
        let err = enumerate_matchings_capped(&grid(4, 4), 10).unwrap_err();
        assert_eq!(err, Error::ResultTooLarge { cap: 10 });
    }

    #[test]
    fn fkt_on_grids() {
        assert_eq!(count_fkt(&grid(2, 3)).unwrap(), Scalar::from_integer(3.into()));
        assert_eq!(Weight::Scalar(count_fkt(&grid(4, 4)).unwrap()), matching_sum_brute(&grid(4, 4)));
        assert_eq!(count_fkt(&grid(4, 4)).unwrap(), Scalar::from_integer(36.into()));
    }

    #[test]
    fn fkt_refuses_polynomials_and_negatives() {
        let poly = cycle(&[Weight::var("x1").unwrap(), Weight::one(), Weight::one(), Weight::one()]);
        assert_eq!(count_fkt(&poly).unwrap_err(), Error::PolynomialWeights);
        let neg = cycle(&[Weight::int(-1), Weight::one(), Weight::one(), Weight::one()]);
        assert_eq!(count_fkt(&neg).unwrap_err(), Error::NegativeWeight(EdgeId(0)));
        assert_eq!(matching_sum(&poly, Method::Auto).unwrap().to_string(), "1 + x1");
    }

    #[test]
    fn odd_order_is_zero() {
        let g = grid(3, 3);
        assert!(matching_sum_brute(&g).is_zero());
        assert!(count_fkt(&g).unwrap().is_zero());
    }

    #[test]
    fn counter_reuses_memo_across_deletions() {
        let g = grid(3, 4);
        let mut c = BruteCounter::new(&g);
        let full = c.total();
        let minus = c.without(&[VertexId(0), VertexId(1)]);
        assert_eq!(full, matching_sum_brute(&g));
        assert_eq!(minus, matching_sum_brute(&g.delete_vertices(&[VertexId(0), VertexId(1)]).unwrap()));
    }

    fn arb_weighted_grid() -> impl Strategy<Value = PlaneGraph> {
        (2u32..5, 2u32..5, 0.5f64..1.0, any::<u64>()).prop_map(|(r, c, keep, seed)| {
            let spec = crate::generate::GridSpec::new(r, c, keep).with_weights(crate::generate::WeightMode::Rational);
            crate::generate::grid_subgraph(&spec, seed)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn fkt_matches_brute(g in arb_weighted_grid()) {
            prop_assert_eq!(Weight::Scalar(count_fkt(&g).unwrap()), matching_sum_brute(&g));
        }

        #[test]
        fn enumeration_sums_to_brute(g in arb_weighted_grid()) {
            let all = enumerate_matchings(&g).unwrap();
            prop_assert_eq!(Weight::sum(all.iter().map(|m| &m.weight)), matching_sum_brute(&g));
            for m in &all {
                let covered: BTreeSet<VertexId> = m.edges.iter().flat_map(|e| { let e = g.edge(*e).unwrap(); [e.u, e.v] }).collect();
                prop_assert_eq!(covered.len(), g.vertex_count());
                prop_assert_eq!(m.edges.len() * 2, g.vertex_count());
            }
        }

        #[test]
        fn vertex_expansion(g in arb_weighted_grid(), pick in any::<prop::sample::Index>()) {
            let verts: Vec<VertexId> = g.vertices().collect();
            prop_assume!(!verts.is_empty());
            let v = *pick.get(&verts);
            let expanded = Weight::sum(g.rotation(v).iter().map(|e| {
                let e = g.edge(*e).unwrap();
                &e.weight * &matching_sum_brute(&g.delete_vertices(&[e.u, e.v]).unwrap())
            }).collect::<Vec<_>>().iter());
            prop_assert_eq!(expanded, matching_sum_brute(&g));
        }

        #[test]
        fn disjoint_union_multiplies(a in arb_weighted_grid(), b in arb_weighted_grid()) {
            let shift = a.max_vertex_id().map_or(0, |v| v.0 + 1);
            let eshift = a.max_edge_id().map_or(0, |e| e.0 + 1);
            let mut vertices: Vec<VertexId> = a.vertices().collect();
            vertices.extend(b.vertices().map(|v| VertexId(v.0 + shift)));
            let mut edges: Vec<Edge> = a.edges().cloned().collect();
            edges.extend(b.edges().map(|e| Edge::new(e.id.0 + eshift, e.u.0 + shift, e.v.0 + shift, e.weight.clone())));
            let mut rotation = a.rotations().clone();
            for (v, list) in b.rotations() {
                rotation.insert(VertexId(v.0 + shift), list.iter().map(|e| EdgeId(e.0 + eshift)).collect());
            }
            let union = PlaneGraph::new(vertices, edges, rotation).unwrap();
            prop_assert_eq!(matching_sum_brute(&union), &matching_sum_brute(&a) * &matching_sum_brute(&b));
            prop_assert_eq!(count_fkt(&union).unwrap(), count_fkt(&a).unwrap() * count_fkt(&b).unwrap());
        }
    }
}
