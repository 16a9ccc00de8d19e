//! Aztec diamonds with unit and column-indexed variable weights.
//!
//! Vertices are the cells `(r, c)` of a `(2n+1) x (2n+1)` board with `r + c`
//! odd; edges join diagonally adjacent cells. Each cell `(2p, 2q)` is the
//! centre of a 4-cycle face in column `q`, and every edge lies on exactly one
//! such face. Its edges W-N, N-E, E-S and S-W carry `x`, `y`, `w` and `z`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

use crate::condensation::{bipartite_two_edge_sides, IdentityReport, Instance, Part, Term};
use crate::error::{Error, Result};
use crate::generate::rng;
use crate::graph::{Edge, EdgeId, FaceSelection, GraphFile, PlaneGraph, Point, VertexId};
use crate::matching::{count_fkt, matching_sum_brute};
use crate::weight::{Poly, Scalar, Var, Weight};

/// Largest order counted by exhaustive search.
pub const BRUTE_LIMIT: usize = 5;
/// Largest order counted through the Pfaffian.
pub const FKT_LIMIT: usize = 12;
/// Largest order for symbolic matching sums.
pub const SYMBOLIC_LIMIT: usize = 3;
/// Largest order for the unit-weight recurrence.
pub const RECURRENCE_LIMIT: usize = 50;
/// Largest order for the random-point checks.
pub const EVALUATION_LIMIT: usize = 8;

/// Edge weighting of an Aztec diamond.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weighting {
    Unit,
    /// Column `i` carries variables with index `i + start - 1`.
    Stanley(usize),
}

/// The four corner vertices and the two corner edges `e1 = a1 b1` (north)
/// and `e2 = a2 b2` (south).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corners {
    pub a1: VertexId,
    pub b1: VertexId,
    pub a2: VertexId,
    pub b2: VertexId,
    pub e1: EdgeId,
    pub e2: EdgeId,
}

#[derive(Clone, Debug)]
pub struct AztecGraph {
    n: usize,
    graph: PlaneGraph,
    cells: BTreeMap<VertexId, (i64, i64)>,
    face_columns: BTreeMap<usize, usize>,
    corners: Corners,
}

fn cell_ids(n: usize) -> BTreeMap<(i64, i64), VertexId> {
    let side = 2 * n as i64 + 1;
    let mut ids = BTreeMap::new();
    for r in 1..=side {
        for c in 1..=side {
            if (r + c) % 2 == 1 {
                ids.insert((r, c), VertexId(ids.len() as u32));
            }
        }
    }
    ids
}

/// Edge of face `(2p, 2q)` in position `slot` (0 W-N, 1 N-E, 2 E-S, 3 S-W).
fn edge_id(n: usize, p: usize, q: usize, slot: usize) -> EdgeId {
    EdgeId((4 * ((p - 1) * n + (q - 1)) + slot) as u32)
}

fn face_corners(r: i64, c: i64) -> [(i64, i64); 4] {
    [(r, c - 1), (r - 1, c), (r, c + 1), (r + 1, c)]
}

pub fn build_aztec(n: usize) -> Result<AztecGraph> {
    if n < 1 {
        return Err(Error::InvalidOrder { n, min: 1 });
    }
    let ids = cell_ids(n);
    let mut edges = Vec::new();
    for p in 1..=n {
        for q in 1..=n {
            let [w, no, e, s] = face_corners(2 * p as i64, 2 * q as i64).map(|x| ids[&x]);
            for (slot, (u, v)) in [(w, no), (no, e), (e, s), (s, w)].into_iter().enumerate() {
                edges.push(Edge { id: edge_id(n, p, q, slot), u, v, weight: Weight::one() });
            }
        }
    }
    let points: Vec<(VertexId, Point)> = ids.iter().map(|(&(r, c), &v)| (v, Point::new(c, -r))).collect();
    let graph = PlaneGraph::from_drawing(&points, edges)?;

    let cells: BTreeMap<VertexId, (i64, i64)> = ids.iter().map(|(&rc, &v)| (v, rc)).collect();
    let outer = graph.outer_face_id();
    let mut face_columns = BTreeMap::new();
    for f in graph.faces().iter().filter(|f| Some(f.id) != outer) {
        let c_sum: i64 = f.vertices().map(|v| cells[&v].1).sum();
        let centre = c_sum / f.len() as i64;
        // board column c lies in diamond column ceil((c - 1) / 2)
        face_columns.insert(f.id, (centre / 2).clamp(1, n as i64) as usize);
    }

    let m = 2 * n as i64;
    let corners = Corners {
        a1: ids[&(2, 1)],
        b1: ids[&(1, 2)],
        a2: ids[&(m, m + 1)],
        b2: ids[&(m + 1, m)],
        e1: edge_id(n, 1, 1, 0),
        e2: edge_id(n, n, n, 2),
    };
    Ok(AztecGraph { n, graph, cells, face_columns, corners })
}

fn stanley_var(stem: &str, i: usize) -> Weight {
    Weight::Poly(Poly::var(Var::indexed(stem, i)))
}

impl AztecGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    pub fn cell(&self, v: VertexId) -> Option<(i64, i64)> {
        self.cells.get(&v).copied()
    }

    /// Column of each bounded face.
    pub fn face_columns(&self) -> &BTreeMap<usize, usize> {
        &self.face_columns
    }

    pub fn corners(&self) -> Corners {
        self.corners
    }

    /// The corner edges as a two-pair selection on the unbounded face.
    pub fn corner_selection(&self) -> FaceSelection {
        let c = self.corners;
        FaceSelection::with_edges(
            self.graph.outer_face_id().expect("diamond has an unbounded face"),
            vec![c.a1, c.b1, c.a2, c.b2],
            vec![c.e1, c.e2],
        )
    }

    pub fn weighted(&self, weighting: Weighting) -> Result<AztecGraph> {
        match weighting {
            Weighting::Unit => {
                let graph = self.graph.map_weights(|_| Ok(Weight::one()))?;
                Ok(AztecGraph { graph, ..self.clone() })
            }
            Weighting::Stanley(start) => self.apply_stanley_weights(start),
        }
    }

    /// Gives each face `(2p, 2q)` the variables `x, y, w, z` with index
    /// `q + start - 1`, clockwise from its north-western edge.
    pub fn apply_stanley_weights(&self, start: usize) -> Result<AztecGraph> {
        let n = self.n;
        let mut assigned: BTreeMap<EdgeId, Weight> = BTreeMap::new();
        for p in 1..=n {
            for q in 1..=n {
                let i = q + start - 1;
                for (slot, stem) in ["x", "y", "w", "z"].into_iter().enumerate() {
                    let e = edge_id(n, p, q, slot);
                    if assigned.insert(e, stanley_var(stem, i)).is_some() {
                        return Err(Error::ColumnAssignmentConflict(e));
                    }
                }
            }
        }
        let graph = self.graph.map_weights(|e| assigned.get(&e.id).cloned().ok_or(Error::UnknownEdge(e.id)))?;
        Ok(AztecGraph { graph, ..self.clone() })
    }

    /// Graph file with board coordinates and face columns attached.
    pub fn to_json(&self) -> String {
        let mut file = GraphFile::from_graph(&self.graph);
        file.coords = Some(self.cells.clone());
        file.face_columns = Some(self.face_columns.clone());
        file.to_json()
    }
}

/// Weighted diamond of order `n`; order 0 is the empty graph.
pub fn weighted_aztec(n: usize, weighting: Weighting) -> Result<PlaneGraph> {
    if n == 0 {
        return Ok(PlaneGraph::empty());
    }
    Ok(build_aztec(n)?.weighted(weighting)?.graph)
}

/// `Π_{1≤i≤j≤n} (x_i' w_j' + z_i' y_j')` with indices shifted by `start - 1`.
pub fn aztec_product(n: usize, start: usize) -> Weight {
    let mut acc = Weight::one();
    for i in 1..=n {
        for j in i..=n {
            let (i, j) = (i + start - 1, j + start - 1);
            let factor =
                &(&stanley_var("x", i) * &stanley_var("w", j)) + &(&stanley_var("z", i) * &stanley_var("y", j));
            acc = &acc * &factor;
        }
    }
    acc
}

/// Unit-weight count by `M_n = 2 M_{n-1}^2 / M_{n-2}` from `M_0 = 1`, `M_1 = 2`.
pub fn aztec_count_recurrence(n: usize) -> Scalar {
    let (mut prev, mut cur) = (BigInt::one(), BigInt::from(2));
    if n == 0 {
        return Scalar::from_integer(prev);
    }
    for _ in 1..n {
        let next = BigInt::from(2) * &cur * &cur / &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Scalar::from_integer(cur)
}

/// `2^{n(n+1)/2}`.
pub fn aztec_count_closed_form(n: usize) -> Scalar {
    Scalar::from_integer(BigInt::one() << (n * (n + 1) / 2))
}

/// Random point for every Stanley variable with index up to `max_index`,
/// numerators and denominators in `1..=100`.
pub fn random_point(max_index: usize, rng: &mut impl Rng) -> HashMap<Var, Scalar> {
    let mut point = HashMap::new();
    for i in 1..=max_index {
        for stem in ["x", "y", "w", "z"] {
            let value = Scalar::new(rng.gen_range(1..=100).into(), rng.gen_range(1..=100).into());
            point.insert(Var::indexed(stem, i), value);
        }
    }
    point
}

fn evaluated(g: &PlaneGraph, point: &HashMap<Var, Scalar>) -> Result<PlaneGraph> {
    g.map_weights(|e| Ok(Weight::Scalar(e.weight.eval(point)?)))
}

fn scalar_sum(g: &PlaneGraph) -> Result<Weight> {
    Ok(Weight::Scalar(count_fkt(g)?))
}

/// Both sides of
/// `M(AD_n;1..n) M(AD_{n-2};2..n-1) = (x1 wn + yn z1) M(AD_{n-1};1..n-1) M(AD_{n-1};2..n)`.
/// Orders up to [`SYMBOLIC_LIMIT`] give one symbolic report; larger orders
/// give one report per random point.
pub fn verify_diamond_recurrence(n: usize, points: usize, seed: u64) -> Result<Vec<IdentityReport>> {
    if n < 2 {
        return Err(Error::InvalidOrder { n, min: 2 });
    }
    if n > EVALUATION_LIMIT {
        return Err(Error::OrderTooLarge { n, limit: EVALUATION_LIMIT, action: "recurrence checks" });
    }
    let big = weighted_aztec(n, Weighting::Stanley(1))?;
    let small = weighted_aztec(n - 2, Weighting::Stanley(2))?;
    let left = weighted_aztec(n - 1, Weighting::Stanley(1))?;
    let right = weighted_aztec(n - 1, Weighting::Stanley(2))?;
    let corner = &(&stanley_var("x", 1) * &stanley_var("w", n)) + &(&stanley_var("y", n) * &stanley_var("z", 1));
    let labels = [
        format!("M(AD_{n};1..{n})"),
        format!("M(AD_{};2..{})", n - 2, n - 1),
        format!("x1*w{n} + y{n}*z1"),
        format!("M(AD_{};1..{})", n - 1, n - 1),
        format!("M(AD_{};2..{n})", n - 1),
    ];
    let report = |values: [Weight; 5], note: String| {
        let [mb, ms, c, ml, mr] = values;
        let terms = vec![
            Term::new(Part::Lhs, format!("{}*{}", labels[0], labels[1]), vec![mb, ms]),
            Term::new(Part::Rhs, format!("({})*{}*{}", labels[2], labels[3], labels[4]), vec![c, ml, mr]),
        ];
        let inst = Instance { note, ..Instance::default() };
        IdentityReport::from_terms("aztec-recurrence", inst, terms)
    };

    if n <= SYMBOLIC_LIMIT {
        let values = [&big, &small, &left, &right].map(matching_sum_brute);
        let [mb, ms, ml, mr] = values;
        return Ok(vec![report([mb, ms, corner, ml, mr], format!("order {n}, symbolic"))]);
    }
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(points);
    for idx in 0..points {
        let point = random_point(n + 1, &mut rng);
        let values = [&big, &small, &left, &right]
            .into_iter()
            .map(|g| scalar_sum(&evaluated(g, &point)?))
            .collect::<Result<Vec<_>>>()?;
        let c = Weight::Scalar(corner.eval(&point)?);
        let [mb, ms, ml, mr]: [Weight; 4] = values.try_into().expect("four sums");
        out.push(report([mb, ms, c, ml, mr], format!("order {n}, point {idx}")).with_seed(seed));
    }
    Ok(out)
}

fn product_of(stem: &str, range: std::ops::RangeInclusive<usize>) -> Weight {
    Weight::product(range.map(|i| stanley_var(stem, i)).collect::<Vec<_>>().iter())
}

/// A deletion from the corner-weighted diamond, the monomial stripped by
/// forced edges and the diamond that remains.
struct Reduction {
    name: &'static str,
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
    monomial: Weight,
    rest: (usize, usize),
}

fn reductions(n: usize, c: Corners) -> Vec<Reduction> {
    let (y, z) = (product_of("y", 1..=n), product_of("z", 1..=n));
    let (yn, z1) = (stanley_var("y", n), stanley_var("z", 1));
    let k = n as u32;
    vec![
        Reduction {
            name: "G-e1-e2",
            vertices: vec![],
            edges: vec![c.e1, c.e2],
            monomial: Weight::product([(&yn * &z1).pow(k - 1), y.clone(), z.clone()].iter()),
            rest: (n - 2, 2),
        },
        Reduction { name: "G-e1", vertices: vec![], edges: vec![c.e1], monomial: &z1.pow(k) * &y, rest: (n - 1, 2) },
        Reduction { name: "G-e2", vertices: vec![], edges: vec![c.e2], monomial: &yn.pow(k) * &z, rest: (n - 1, 1) },
        Reduction {
            name: "G-a1-b2",
            vertices: vec![c.a1, c.b2],
            edges: vec![],
            monomial: &yn.pow(k - 1) * &y,
            rest: (n - 1, 1),
        },
        Reduction {
            name: "G-a2-b1",
            vertices: vec![c.a2, c.b1],
            edges: vec![],
            monomial: &z1.pow(k - 1) * &z,
            rest: (n - 1, 2),
        },
    ]
}

/// The corner condensation on `(AD_n;1..n)` followed by the five forced-edge
/// reductions of its deleted subgraphs. Each reduction passes when the
/// stripped factor equals the expected monomial and the matching sum of the
/// deleted graph equals that monomial times the smaller diamond's sum.
pub fn verify_forced_reductions(n: usize) -> Result<Vec<IdentityReport>> {
    if n < 3 {
        return Err(Error::InvalidOrder { n, min: 3 });
    }
    if n > BRUTE_LIMIT {
        return Err(Error::OrderTooLarge { n, limit: BRUTE_LIMIT, action: "forced reductions" });
    }
    let az = build_aztec(n)?.apply_stanley_weights(1)?;
    let g = az.graph();
    let mut condensation = bipartite_two_edge_sides(g, &az.corner_selection())?;
    condensation.identity = "aztec-corner-condensation".into();
    let mut out = vec![condensation];

    for red in reductions(n, az.corners()) {
        let deleted = g.delete(&red.vertices, &red.edges)?;
        let forced = deleted.reduce_forced();
        let direct = matching_sum_brute(&deleted);
        let (order, start) = red.rest;
        let rest = matching_sum_brute(&weighted_aztec(order, Weighting::Stanley(start))?);
        let residual = if forced.feasible { matching_sum_brute(&forced.residual) } else { Weight::zero() };
        let terms = vec![
            Term::new(Part::Lhs, format!("M({})", red.name), vec![direct]),
            Term::new(
                Part::Rhs,
                format!("monomial*M(AD_{order};{start}..{})", order + start - 1),
                vec![red.monomial.clone(), rest.clone()],
            ),
        ];
        let factor_ok = forced.feasible && forced.factor == red.monomial && residual == rest;
        let inst = Instance {
            note: format!(
                "order {n}, {}; forced factor {} the monomial",
                red.name,
                if factor_ok { "matches" } else { "differs from" }
            ),
            ..Instance::default()
        };
        let mut report = IdentityReport::from_terms("aztec-forced", inst, terms);
        report.pass &= factor_ok;
        out.push(report);
    }
    Ok(out)
}

/// How a unit-weight diamond is counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    Brute,
    Fkt,
    Recurrence,
}

/// Unit-weight count of `AD_n` by the chosen method, within its order limit.
pub fn aztec_count(n: usize, method: CountMethod) -> Result<Scalar> {
    let (limit, action) = match method {
        CountMethod::Brute => (BRUTE_LIMIT, "brute-force counting"),
        CountMethod::Fkt => (FKT_LIMIT, "Pfaffian counting"),
        CountMethod::Recurrence => (RECURRENCE_LIMIT, "the recurrence"),
    };
    if n > limit {
        return Err(Error::OrderTooLarge { n, limit, action });
    }
    match method {
        CountMethod::Recurrence => Ok(aztec_count_recurrence(n)),
        CountMethod::Brute => {
            let g = weighted_aztec(n, Weighting::Unit)?;
            Ok(matching_sum_brute(&g).as_scalar().expect("unit weights are scalar"))
        }
        CountMethod::Fkt => count_fkt(&weighted_aztec(n, Weighting::Unit)?),
    }
}

/// Variables set to one in every Stanley weight.
pub fn unit_point(max_index: usize) -> HashMap<Var, Scalar> {
    let mut point = HashMap::new();
    for i in 1..=max_index {
        for stem in ["x", "y", "w", "z"] {
            point.insert(Var::indexed(stem, i), Scalar::one());
        }
    }
    point
}
