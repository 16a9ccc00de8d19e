//! Both sides of each condensation identity, term by term.

use std::collections::BTreeMap;

use super::construct::{build_symmetric_double, split_edge, SymmetricGraph};
use super::report::{graph_hash, IdentityReport, Instance, Oracle, Part, Term};
use super::IndexSet;
use crate::error::{Error, Result, SelectionError};
use crate::graph::{validate_selection, EdgeId, FaceSelection, PlaneGraph, Side, VertexId};
use crate::matching::matching_sum_brute;
use crate::weight::Weight;

/// A vertex or edge to delete, with its printed name.
#[derive(Clone)]
enum Mark {
    V(String, VertexId),
    E(String, EdgeId),
}

struct Ctx<'a> {
    sel: &'a FaceSelection,
    oracle: Oracle,
}

impl<'a> Ctx<'a> {
    fn new(g: &PlaneGraph, sel: &'a FaceSelection) -> Self {
        Ctx { sel, oracle: Oracle::new(g) }
    }

    fn a(&self, i: usize) -> Mark {
        Mark::V(format!("a{i}"), self.sel.a(i))
    }

    fn b(&self, i: usize) -> Mark {
        Mark::V(format!("b{i}"), self.sel.b(i))
    }

    fn e(&self, i: usize) -> Mark {
        Mark::E(format!("e{i}"), self.sel.e(i).expect("edge selection"))
    }

    fn a_set(&self, s: &IndexSet) -> Vec<Mark> {
        s.iter().map(|i| self.a(i)).collect()
    }

    fn b_set(&self, s: &IndexSet) -> Vec<Mark> {
        s.iter().map(|i| self.b(i)).collect()
    }

    fn e_set(&self, s: &IndexSet) -> Vec<Mark> {
        s.iter().map(|i| self.e(i)).collect()
    }

    fn omega(&self, s: &IndexSet) -> Weight {
        Weight::product(s.iter().map(|i| self.oracle.weight(self.sel.e(i).unwrap())).collect::<Vec<_>>().iter())
    }

    /// `M(G - marks)` and its label.
    fn m(&mut self, marks: &[Mark]) -> (String, Weight) {
        let mut vs = Vec::new();
        let mut es = Vec::new();
        let mut names = Vec::new();
        for m in marks {
            match m {
                Mark::V(n, v) => {
                    vs.push(*v);
                    names.push(n.clone());
                }
                Mark::E(n, e) => {
                    es.push(*e);
                    names.push(n.clone());
                }
            }
        }
        let label = if names.is_empty() { "M(G)".to_string() } else { format!("M(G-{})", names.join("-")) };
        (label, self.oracle.m(&vs, &es))
    }

    /// A term `coef * M(G - x) * M(G - y)`.
    fn pair(&mut self, side: Part, coef: Option<(String, Weight)>, x: &[Mark], y: &[Mark]) -> Term {
        let (lx, mx) = self.m(x);
        let (ly, my) = self.m(y);
        match coef {
            Some((lc, c)) => Term::new(side, format!("{lc}*{lx}*{ly}"), vec![c, mx, my]),
            None => Term::new(side, format!("{lx}*{ly}"), vec![mx, my]),
        }
    }
}

fn check(g: &PlaneGraph, sel: &FaceSelection) -> Result<()> {
    match validate_selection(g, sel) {
        Ok(_) => Ok(()),
        Err(SelectionError::EdgesNotIndependent) => Err(Error::EdgesNotIndependent),
        Err(e) => Err(Error::InvalidSelection(e)),
    }
}

fn check_j(sel: &FaceSelection, j: usize) -> Result<()> {
    if j == 0 || j > sel.k() {
        return Err(Error::IndexOutOfRange { index: j, k: sel.k() });
    }
    Ok(())
}

fn require_edges(sel: &FaceSelection) -> Result<()> {
    if sel.edges.is_none() {
        return Err(SelectionError::EdgeCountMismatch { vertices: sel.vertices.len(), edges: 0 }.into());
    }
    Ok(())
}

fn instance(g: &PlaneGraph, sel: &FaceSelection, j: Option<usize>) -> Instance {
    Instance { graph_hash: graph_hash(g), selection: Some(sel.clone()), j, ..Instance::default() }
}

fn colours(g: &PlaneGraph) -> Result<BTreeMap<VertexId, Side>> {
    g.bipartition().ok_or(Error::NotBipartite)
}

/// Requires all `a_i` in one colour class and all `b_i` in the other.
fn check_split_colours(g: &PlaneGraph, sel: &FaceSelection) -> Result<()> {
    let c = colours(g)?;
    let side = c[&sel.a(1)];
    if let Some(v) = sel.a_all().into_iter().find(|v| c[v] != side) {
        return Err(Error::ColorClassViolation(format!("a-vertex {v} is not in the class of a1")));
    }
    if let Some(v) = sel.b_all().into_iter().find(|v| c[v] == side) {
        return Err(Error::ColorClassViolation(format!("b-vertex {v} shares the class of a1")));
    }
    Ok(())
}

fn odd_subsets(k: usize) -> impl Iterator<Item = IndexSet> {
    IndexSet::all(k).filter(|s| s.len() % 2 == 1)
}

fn even_subsets(k: usize) -> impl Iterator<Item = IndexSet> {
    IndexSet::all(k).filter(|s| s.len() % 2 == 0)
}

/// `M(G)M(G-{a,b,c,d}) + M(G-{a,c})M(G-{b,d})` against
/// `M(G-{a,b})M(G-{c,d}) + M(G-{a,d})M(G-{b,c})` for `a, b, c, d` in
/// cyclic order on `face`.
pub fn four_point_sides(g: &PlaneGraph, face: usize, abcd: [VertexId; 4]) -> Result<IdentityReport> {
    let sel = FaceSelection::new(face, abcd.to_vec());
    check(g, &sel)?;
    let mut cx = Ctx::new(g, &sel);
    let [a, b, c, d] = ["a", "b", "c", "d"].map(|n| n.to_string());
    let [va, vb, vc, vd] = abcd;
    let (ma, mb, mc, md) = (Mark::V(a, va), Mark::V(b, vb), Mark::V(c, vc), Mark::V(d, vd));
    let terms = vec![
        cx.pair(Part::Lhs, None, &[], &[ma.clone(), mb.clone(), mc.clone(), md.clone()]),
        cx.pair(Part::Lhs, None, &[ma.clone(), mc.clone()], &[mb.clone(), md.clone()]),
        cx.pair(Part::Rhs, None, &[ma.clone(), mb.clone()], &[mc.clone(), md.clone()]),
        cx.pair(Part::Rhs, None, &[ma, md], &[mb, mc]),
    ];
    Ok(IdentityReport::from_terms("four-point", instance(g, &sel, None), terms))
}

/// Odd-subset sum against even-subset sum for `2k` vertices in cyclic
/// order on one face:
/// `Σ_{|Y| odd} M(G-a_j-Y) M(G-A\a_j-B\Y) = Σ_{|W| even} M(G-W) M(G-A-B\W)`.
pub fn vertex_condensation_sides(g: &PlaneGraph, sel: &FaceSelection, j: usize) -> Result<IdentityReport> {
    check(g, sel)?;
    check_j(sel, j)?;
    let k = sel.k();
    let mut cx = Ctx::new(g, sel);
    let jj = IndexSet::singleton(k, j)?;
    let all_a = IndexSet::full(k);
    let mut terms = Vec::new();
    for y in odd_subsets(k) {
        let x: Vec<Mark> = [cx.a(j)].into_iter().chain(cx.b_set(&y)).collect();
        let z: Vec<Mark> = cx.a_set(&all_a.minus(&jj)?).into_iter().chain(cx.b_set(&y.complement())).collect();
        terms.push(cx.pair(Part::Lhs, None, &x, &z).with_subset(y));
    }
    for w in even_subsets(k) {
        let x = cx.b_set(&w);
        let z: Vec<Mark> = cx.a_set(&all_a).into_iter().chain(cx.b_set(&w.complement())).collect();
        terms.push(cx.pair(Part::Rhs, None, &x, &z).with_subset(w));
    }
    Ok(IdentityReport::from_terms("vertex-condensation", instance(g, sel, Some(j)), terms))
}

/// Checks the doubled graph against the subset sums: `M(G^(0))` against
/// the even sum and `M(G^(j))` against the odd sum. `G` must have an even
/// number of vertices.
pub fn symmetric_double_check(g: &PlaneGraph, sel: &FaceSelection, j: usize) -> Result<[IdentityReport; 2]> {
    check(g, sel)?;
    check_j(sel, j)?;
    if !g.vertex_count().is_multiple_of(2) {
        return Err(Error::OddOrder(g.vertex_count()));
    }
    let rooted = g.with_outer_face(sel.face)?;
    let double = build_symmetric_double(&rooted, sel)?;
    let sums = vertex_condensation_sides(g, sel, j)?;
    let g0 = matching_sum_brute(&double.g0());
    let gj = matching_sum_brute(&double.gj(j));
    let inst = instance(g, sel, Some(j));

    let mut even = vec![Term::new(Part::Lhs, "M(G^(0))", vec![g0])];
    even.extend(sums.terms_on(Part::Rhs).cloned().map(|t| Term { side: Part::Rhs, ..t }));
    let mut odd = vec![Term::new(Part::Lhs, format!("M(G^({j}))"), vec![gj])];
    odd.extend(sums.terms_on(Part::Lhs).cloned().map(|t| Term { side: Part::Rhs, ..t }));
    Ok([
        IdentityReport::from_terms("symmetric-double-even", inst.clone(), even),
        IdentityReport::from_terms("symmetric-double-odd", inst, odd),
    ])
}

/// Matching sums of all `2^k` reduced subgraphs; passes when they agree.
pub fn reduced_subgraphs_check(sg: &SymmetricGraph) -> IdentityReport {
    let k = sg.width();
    let mut terms = Vec::new();
    for mask in 0..1u64 << k {
        let side = if mask == 0 { Part::Lhs } else { Part::Rhs };
        let m = matching_sum_brute(&sg.reduced_subgraph(mask));
        terms.push(
            Term::new(side, format!("M(reduced {mask:0w$b})", w = k.max(1)), vec![m])
                .with_subset(IndexSet::from_mask(k, mask)),
        );
    }
    let lhs = terms[0].product.clone();
    let rhs = terms.iter().map(|t| &t.product).find(|p| **p != lhs).cloned().unwrap_or_else(|| lhs.clone());
    let inst = Instance { graph_hash: graph_hash(sg.graph()), note: format!("width {k}"), ..Instance::default() };
    IdentityReport::new("reduced-subgraphs", inst, lhs, rhs, terms)
}

/// `M(G)` against `M(G')` after splitting `e`.
pub fn edge_split_check(g: &PlaneGraph, e: EdgeId) -> Result<IdentityReport> {
    let split = split_edge(g, e)?;
    let terms = vec![
        Term::new(Part::Lhs, "M(G)", vec![matching_sum_brute(g)]),
        Term::new(Part::Rhs, format!("M(G split at {e})"), vec![matching_sum_brute(&split)]),
    ];
    let inst = Instance { graph_hash: graph_hash(g), note: format!("edge {e}"), ..Instance::default() };
    Ok(IdentityReport::from_terms("edge-split", inst, terms))
}

/// Bipartite form with `A` and `B` in opposite classes:
/// `M(G)M(G-A-B) = Σ_{i=1..k} M(G-a_j-b_i) M(G-(A∪B)\{a_j,b_i})`.
pub fn bipartite_vertex_sides(g: &PlaneGraph, sel: &FaceSelection, j: usize) -> Result<IdentityReport> {
    check(g, sel)?;
    check_j(sel, j)?;
    check_split_colours(g, sel)?;
    let k = sel.k();
    let mut cx = Ctx::new(g, sel);
    let full = IndexSet::full(k);
    let all: Vec<Mark> = cx.a_set(&full).into_iter().chain(cx.b_set(&full)).collect();
    let mut terms = vec![cx.pair(Part::Lhs, None, &[], &all)];
    for i in 1..=k {
        let rest: Vec<Mark> = cx
            .a_set(&full.minus(&IndexSet::singleton(k, j)?)?)
            .into_iter()
            .chain(cx.b_set(&full.minus(&IndexSet::singleton(k, i)?)?))
            .collect();
        terms.push(cx.pair(Part::Rhs, None, &[cx.a(j), cx.b(i)], &rest));
    }
    let mut inst = instance(g, sel, Some(j));
    inst.note = "sum over i = 1..k".into();
    Ok(IdentityReport::from_terms("bipartite-vertex-condensation", inst, terms))
}

/// `2^k M(G-A1-B1) M(G-A2-B2) = Σ_{|X|=|Y|} M(G-X-Y) M(G-X̄-Ȳ)` with
/// `X ⊆ A1∪B2`, `Y ⊆ A2∪B1`, where the split is by colour class.
pub fn bipartite_subset_sides(g: &PlaneGraph, sel: &FaceSelection) -> Result<IdentityReport> {
    check(g, sel)?;
    let k = sel.k();
    if k < 2 {
        return Err(Error::PairCount { required: "at least 2", found: k });
    }
    let c = colours(g)?;
    let mut cx = Ctx::new(g, sel);
    let (mut a1, mut a2, mut b1, mut b2) = (vec![], vec![], vec![], vec![]);
    for i in 1..=k {
        if c[&sel.a(i)] == Side::U {
            a1.push(cx.a(i))
        } else {
            a2.push(cx.a(i))
        }
        if c[&sel.b(i)] == Side::V {
            b1.push(cx.b(i))
        } else {
            b2.push(cx.b(i))
        }
    }
    let p: Vec<Mark> = a1.iter().chain(&b2).cloned().collect();
    let q: Vec<Mark> = a2.iter().chain(&b1).cloned().collect();
    if p.len() != k || q.len() != k {
        return Err(Error::CardinalityMismatch(p.len(), q.len()));
    }
    let x1: Vec<Mark> = a1.iter().chain(&b1).cloned().collect();
    let x2: Vec<Mark> = a2.iter().chain(&b2).cloned().collect();
    let scale = Weight::int(1 << k);
    let mut terms = vec![cx.pair(Part::Lhs, Some((format!("{}", 1 << k), scale)), &x1, &x2)];
    let pick = |s: &[Mark], mask: u64, inside: bool| -> Vec<Mark> {
        s.iter().enumerate().filter(|(i, _)| (mask >> i & 1 == 1) == inside).map(|(_, m)| m.clone()).collect()
    };
    for mx in 0..1u64 << k {
        for my in 0..1u64 << k {
            if mx.count_ones() != my.count_ones() {
                continue;
            }
            let first: Vec<Mark> = pick(&p, mx, true).into_iter().chain(pick(&q, my, true)).collect();
            let second: Vec<Mark> = pick(&p, mx, false).into_iter().chain(pick(&q, my, false)).collect();
            terms.push(cx.pair(Part::Rhs, None, &first, &second));
        }
    }
    Ok(IdentityReport::from_terms("bipartite-subset-condensation", instance(g, sel, None), terms))
}

/// Edge form: the even sum
/// `Σ_W ω(E_{I_W}) M(G-A_{I_W}) M(G-E_{Ī_W}-B_{I_W})` against the odd sum
/// `Σ_Y ω(E_{{j}△I_Y}) M(G-E_{I_Y∩{j}}-B_{{j}-I_Y}-A_{I_Y-{j}})
/// M(G-E_{Ī_Y∩{j}̄}-B_{{j}̄-Ī_Y}-A_{Ī_Y-{j}̄})`.
pub fn edge_condensation_sides(g: &PlaneGraph, sel: &FaceSelection, j: usize) -> Result<IdentityReport> {
    require_edges(sel)?;
    check(g, sel)?;
    check_j(sel, j)?;
    let k = sel.k();
    let mut cx = Ctx::new(g, sel);
    let jj = IndexSet::singleton(k, j)?;
    let jc = jj.complement();
    let mut terms = Vec::new();
    for w in even_subsets(k) {
        let coef = (format!("w(E{w})"), cx.omega(&w));
        let x = cx.a_set(&w);
        let y: Vec<Mark> = cx.e_set(&w.complement()).into_iter().chain(cx.b_set(&w)).collect();
        terms.push(cx.pair(Part::Lhs, Some(coef), &x, &y).with_subset(w));
    }
    for y in odd_subsets(k) {
        let yc = y.complement();
        let sd = jj.symdiff(&y)?;
        let coef = (format!("w(E{sd})"), cx.omega(&sd));
        let first: Vec<Mark> = cx
            .e_set(&y.intersect(&jj)?)
            .into_iter()
            .chain(cx.b_set(&jj.minus(&y)?))
            .chain(cx.a_set(&y.minus(&jj)?))
            .collect();
        let second: Vec<Mark> = cx
            .e_set(&yc.intersect(&jc)?)
            .into_iter()
            .chain(cx.b_set(&jc.minus(&yc)?))
            .chain(cx.a_set(&yc.minus(&jc)?))
            .collect();
        terms.push(cx.pair(Part::Rhs, Some(coef), &first, &second).with_subset(y));
    }
    Ok(IdentityReport::from_terms("edge-condensation", instance(g, sel, Some(j)), terms))
}

/// Two marked edges:
/// `M(G)M(G-e1-e2) + w1 w2 M(G-a1-a2)M(G-b1-b2) = M(G-e1)M(G-e2) + w1 w2 M(G-a1-b2)M(G-a2-b1)`.
pub fn two_edge_sides(g: &PlaneGraph, sel: &FaceSelection) -> Result<IdentityReport> {
    require_edges(sel)?;
    check(g, sel)?;
    if sel.k() != 2 {
        return Err(Error::PairCount { required: "exactly 2", found: sel.k() });
    }
    let mut cx = Ctx::new(g, sel);
    let ww = || (String::from("w(e1)w(e2)"), &edge_weight(g, sel, 1) * &edge_weight(g, sel, 2));
    let terms = vec![
        cx.pair(Part::Lhs, None, &[], &[cx.e(1), cx.e(2)]),
        cx.pair(Part::Lhs, Some(ww()), &[cx.a(1), cx.a(2)], &[cx.b(1), cx.b(2)]),
        cx.pair(Part::Rhs, None, &[cx.e(1)], &[cx.e(2)]),
        cx.pair(Part::Rhs, Some(ww()), &[cx.a(1), cx.b(2)], &[cx.a(2), cx.b(1)]),
    ];
    Ok(IdentityReport::from_terms("two-edge-condensation", instance(g, sel, None), terms))
}

fn edge_weight(g: &PlaneGraph, sel: &FaceSelection, i: usize) -> Weight {
    g.edge(sel.e(i).unwrap()).unwrap().weight.clone()
}

/// Bipartite edge form with `A` and `B` in opposite classes:
/// `M(G)M(G-E) = M(G-e_j)M(G-E\e_j) + Σ_{i≠j} w_i w_j M(G-a_i-b_j) M(G-a_j-b_i-E_{[k]\{i,j}})`.
pub fn bipartite_edge_sides(g: &PlaneGraph, sel: &FaceSelection, j: usize) -> Result<IdentityReport> {
    require_edges(sel)?;
    check(g, sel)?;
    check_j(sel, j)?;
    check_split_colours(g, sel)?;
    let k = sel.k();
    let mut cx = Ctx::new(g, sel);
    let full = IndexSet::full(k);
    let jj = IndexSet::singleton(k, j)?;
    let mut terms = vec![
        cx.pair(Part::Lhs, None, &[], &cx.e_set(&full)),
        cx.pair(Part::Rhs, None, &[cx.e(j)], &cx.e_set(&full.minus(&jj)?)),
    ];
    for i in (1..=k).filter(|&i| i != j) {
        let ij = IndexSet::new(k, [i, j])?;
        let coef = (format!("w(e{i})w(e{j})"), cx.omega(&ij));
        let rest: Vec<Mark> = [cx.a(j), cx.b(i)].into_iter().chain(cx.e_set(&full.minus(&ij)?)).collect();
        terms.push(cx.pair(Part::Rhs, Some(coef), &[cx.a(i), cx.b(j)], &rest));
    }
    Ok(IdentityReport::from_terms("bipartite-edge-condensation", instance(g, sel, Some(j)), terms))
}

/// Two marked edges in a bipartite graph. With `a1, a2` in one class:
/// `M(G)M(G-e1-e2) = M(G-e1)M(G-e2) + w1 w2 M(G-a1-b2)M(G-a2-b1)`;
/// with `a1, a2` in different classes the last term is
/// `- w1 w2 M(G-a1-a2)M(G-b1-b2)`.
pub fn bipartite_two_edge_sides(g: &PlaneGraph, sel: &FaceSelection) -> Result<IdentityReport> {
    require_edges(sel)?;
    check(g, sel)?;
    if sel.k() != 2 {
        return Err(Error::PairCount { required: "exactly 2", found: sel.k() });
    }
    let c = colours(g)?;
    let same = c[&sel.a(1)] == c[&sel.a(2)];
    let mut cx = Ctx::new(g, sel);
    let ww = (String::from("w(e1)w(e2)"), &edge_weight(g, sel, 1) * &edge_weight(g, sel, 2));
    let mut terms =
        vec![cx.pair(Part::Lhs, None, &[], &[cx.e(1), cx.e(2)]), cx.pair(Part::Rhs, None, &[cx.e(1)], &[cx.e(2)])];
    if same {
        terms.push(cx.pair(Part::Rhs, Some(ww), &[cx.a(1), cx.b(2)], &[cx.a(2), cx.b(1)]));
    } else {
        terms.push(cx.pair(Part::Rhs, Some(ww), &[cx.a(1), cx.a(2)], &[cx.b(1), cx.b(2)]).negated());
    }
    let mut inst = instance(g, sel, None);
    inst.note = if same { "a1, a2 in one class".into() } else { "a1, a2 in different classes".into() };
    Ok(IdentityReport::from_terms("bipartite-two-edge-condensation", inst, terms))
}

/// The edge `a2 b2`, which must lie on the selected face.
fn vertex_edge_mark(g: &PlaneGraph, sel: &FaceSelection) -> Result<(Mark, Weight)> {
    check(g, sel)?;
    if sel.k() != 2 {
        return Err(Error::PairCount { required: "exactly 2", found: sel.k() });
    }
    let e =
        g.edge_between(sel.a(2), sel.b(2)).ok_or(Error::InvalidSelection(SelectionError::EdgeMismatch { index: 1 }))?;
    if !g.faces()[sel.face].contains_edge(e.id) {
        return Err(Error::InvalidSelection(SelectionError::EdgeNotOnFace(e.id)));
    }
    Ok((Mark::E("e".into(), e.id), e.weight.clone()))
}

/// Two vertices and an edge `e = a2 b2`:
/// `M(G)M(G-a1-b1-e) = M(G-a1-b1)M(G-e) + w M(G-a1-a2)M(G-b1-b2) - w M(G-a1-b2)M(G-a2-b1)`.
pub fn vertex_edge_sides(g: &PlaneGraph, sel: &FaceSelection) -> Result<IdentityReport> {
    let (e, w) = vertex_edge_mark(g, sel)?;
    let mut cx = Ctx::new(g, sel);
    let coef = || (String::from("w(e)"), w.clone());
    let terms = vec![
        cx.pair(Part::Lhs, None, &[], &[cx.a(1), cx.b(1), e.clone()]),
        cx.pair(Part::Rhs, None, &[cx.a(1), cx.b(1)], &[e]),
        cx.pair(Part::Rhs, Some(coef()), &[cx.a(1), cx.a(2)], &[cx.b(1), cx.b(2)]),
        cx.pair(Part::Rhs, Some(coef()), &[cx.a(1), cx.b(2)], &[cx.a(2), cx.b(1)]).negated(),
    ];
    Ok(IdentityReport::from_terms("vertex-edge-condensation", instance(g, sel, None), terms))
}

/// Bipartite form with `a1, b1` in different classes: when `a1, b2` share
/// a class only the positive `w` term remains, otherwise only the negative.
pub fn bipartite_vertex_edge_sides(g: &PlaneGraph, sel: &FaceSelection) -> Result<IdentityReport> {
    let (e, w) = vertex_edge_mark(g, sel)?;
    let c = colours(g)?;
    if c[&sel.a(1)] == c[&sel.b(1)] {
        return Err(Error::ColorClassViolation("a1 and b1 share a class".into()));
    }
    let case_i = c[&sel.a(1)] == c[&sel.b(2)];
    let mut cx = Ctx::new(g, sel);
    let coef = (String::from("w(e)"), w);
    let mut terms = vec![
        cx.pair(Part::Lhs, None, &[], &[cx.a(1), cx.b(1), e.clone()]),
        cx.pair(Part::Rhs, None, &[cx.a(1), cx.b(1)], &[e]),
    ];
    if case_i {
        terms.push(cx.pair(Part::Rhs, Some(coef), &[cx.a(1), cx.a(2)], &[cx.b(1), cx.b(2)]));
    } else {
        terms.push(cx.pair(Part::Rhs, Some(coef), &[cx.a(2), cx.b(1)], &[cx.a(1), cx.b(2)]).negated());
    }
    let mut inst = instance(g, sel, None);
    inst.note = if case_i { "a1, b2 in one class".into() } else { "a1, a2 in one class".into() };
    Ok(IdentityReport::from_terms("bipartite-vertex-edge-condensation", inst, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{grid_subgraph, sample_selection, GridSpec, SelectionKind, WeightMode};
    use crate::graph::fixtures::{cycle, grid, unit_cycle};
    use proptest::prelude::*;

    fn v(ids: &[u32]) -> Vec<VertexId> {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    fn e(ids: &[u32]) -> Vec<EdgeId> {
        ids.iter().map(|&i| EdgeId(i)).collect()
    }

    fn weighted_square() -> PlaneGraph {
        cycle(&[2, 3, 5, 7].map(Weight::int))
    }

    fn outer(g: &PlaneGraph) -> usize {
        g.outer_face_id().unwrap()
    }

    #[test]
    fn four_point_on_squares() {
        let g = unit_cycle(4);
        let r = four_point_sides(&g, outer(&g), v(&[0, 1, 2, 3]).try_into().unwrap()).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, Weight::int(2));
        let g = weighted_square();
        let r = four_point_sides(&g, outer(&g), v(&[0, 1, 2, 3]).try_into().unwrap()).unwrap();
        assert_eq!((r.lhs, r.rhs), (Weight::int(31), Weight::int(31)));
    }

    #[test]
    fn four_point_rejects_bad_order() {
        let g = unit_cycle(4);
        let err = four_point_sides(&g, outer(&g), v(&[0, 2, 1, 3]).try_into().unwrap()).unwrap_err();
        assert_eq!(err, Error::InvalidSelection(SelectionError::NotCyclicOrder));
    }

    #[test]
    fn vertex_condensation_weighted_square() {
        let g = weighted_square();
        let sel = FaceSelection::new(outer(&g), v(&[0, 1, 2, 3]));
        let r = vertex_condensation_sides(&g, &sel, 1).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (Weight::int(31), Weight::int(31)));
        assert_eq!(r.terms_on(Part::Lhs).count(), 2);
        assert_eq!(vertex_condensation_sides(&g, &sel, 3).unwrap_err(), Error::IndexOutOfRange { index: 3, k: 2 });
    }

    #[test]
    fn symmetric_double_matches_subset_sums() {
        let g = weighted_square();
        let sel = FaceSelection::new(outer(&g), v(&[0, 1, 2, 3]));
        for j in 1..=2 {
            let [even, odd] = symmetric_double_check(&g, &sel, j).unwrap();
            assert!(even.pass, "{}", even.breakdown());
            assert!(odd.pass, "{}", odd.breakdown());
            assert_eq!(even.lhs, Weight::int(31));
        }
    }

    #[test]
    fn symmetric_double_needs_even_order() {
        let g = grid(1, 5);
        let sel = FaceSelection::new(outer(&g), v(&[0, 1, 2, 3]));
        assert_eq!(symmetric_double_check(&g, &sel, 1).unwrap_err(), Error::OddOrder(5));
    }

    #[test]
    fn reduced_subgraphs_of_double_agree() {
        let g = grid(2, 3);
        let sel = FaceSelection::new(outer(&g), v(&[0, 1, 2, 5]));
        let double = build_symmetric_double(&g, &sel).unwrap();
        let r = reduced_subgraphs_check(&double.symmetric);
        assert!(r.pass, "{}", r.breakdown());
        assert_eq!(r.terms.len(), 4);
    }

    #[test]
    fn edge_split_keeps_sum() {
        let g = weighted_square();
        assert!(edge_split_check(&g, EdgeId(2)).unwrap().pass);
        assert_eq!(edge_split_check(&g, EdgeId(9)).unwrap_err(), Error::UnknownEdge(EdgeId(9)));
    }

    #[test]
    fn bipartite_vertex_on_hexagon() {
        // u1 v1 u2 v2 u3 v3 = 0..6
        let g = unit_cycle(6);
        let sel = FaceSelection::new(outer(&g), v(&[0, 1, 2, 3]));
        let r = bipartite_vertex_sides(&g, &sel, 1).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (Weight::int(2), Weight::int(2)));
        let bad = FaceSelection::new(outer(&g), v(&[0, 1, 3, 4]));
        assert!(matches!(bipartite_vertex_sides(&g, &bad, 1), Err(Error::ColorClassViolation(_))));
        assert_eq!(bipartite_vertex_sides(&unit_cycle(5), &sel, 1).unwrap_err(), Error::NotBipartite);
    }

    #[test]
    fn bipartite_subset_on_hexagon() {
        let g = unit_cycle(6);
        let sel = FaceSelection::new(outer(&g), v(&[0, 1, 2, 3]));
        let r = bipartite_subset_sides(&g, &sel).unwrap();
        assert!(r.pass, "{}", r.breakdown());
        assert_eq!(r.lhs, Weight::int(8));
        let one = FaceSelection::new(outer(&g), v(&[0, 1]));
        assert_eq!(
            bipartite_subset_sides(&g, &one).unwrap_err(),
            Error::PairCount { required: "at least 2", found: 1 }
        );
        let lopsided = FaceSelection::new(outer(&g), v(&[0, 2, 4, 5]));
        assert!(matches!(bipartite_subset_sides(&g, &lopsided), Err(Error::CardinalityMismatch(_, _))));
    }

    #[test]
    fn edge_condensation_on_hexagon() {
        // e1 = v1v2, e2 = v4v5 with v1..v6 = 0..5
        let g = unit_cycle(6);
        let sel = FaceSelection::with_edges(outer(&g), v(&[0, 1, 3, 4]), e(&[0, 3]));
        let r = edge_condensation_sides(&g, &sel, 1).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (Weight::int(1), Weight::int(1)));
        let four = two_edge_sides(&g, &sel).unwrap();
        assert_eq!((four.lhs, four.rhs), (r.lhs, r.rhs));
    }

    #[test]
    fn edge_condensation_on_twelve_cycle() {
        let g = unit_cycle(12);
        let sel = FaceSelection::with_edges(outer(&g), v(&[0, 1, 4, 5, 8, 9]), e(&[0, 4, 8]));
        for j in 1..=3 {
            let r = edge_condensation_sides(&g, &sel, j).unwrap();
            assert!(r.pass, "{}", r.breakdown());
            assert_eq!(r.terms_on(Part::Lhs).count(), 4);
            assert_eq!(r.terms_on(Part::Rhs).count(), 4);
        }
    }

    #[test]
    fn edge_condensation_requires_edges() {
        let g = unit_cycle(6);
        let sel = FaceSelection::new(outer(&g), v(&[0, 1, 3, 4]));
        assert!(matches!(edge_condensation_sides(&g, &sel, 1), Err(Error::InvalidSelection(_))));
        let touching = FaceSelection::with_edges(outer(&g), v(&[0, 1, 2, 3]), e(&[0, 2]));
        assert!(edge_condensation_sides(&g, &touching, 1).is_ok());
    }

    #[test]
    fn bipartite_edge_on_hexagon() {
        let g = unit_cycle(6);
        let sel = FaceSelection::with_edges(outer(&g), v(&[0, 1, 2, 3]), e(&[0, 2]));
        let r = bipartite_edge_sides(&g, &sel, 1).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (Weight::int(2), Weight::int(2)));
        let same = bipartite_two_edge_sides(&g, &sel).unwrap();
        assert!(same.pass);
        assert_eq!(same.instance.note, "a1, a2 in one class");
        let mixed = FaceSelection::with_edges(outer(&g), v(&[0, 1, 3, 4]), e(&[0, 3]));
        let r = bipartite_two_edge_sides(&g, &mixed).unwrap();
        assert!(r.pass, "{}", r.breakdown());
        assert_eq!(r.instance.note, "a1, a2 in different classes");
    }

    #[test]
    fn vertex_edge_on_square() {
        let g = unit_cycle(4);
        let sel = FaceSelection::new(outer(&g), v(&[0, 1, 2, 3]));
        let r = vertex_edge_sides(&g, &sel).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (Weight::zero(), Weight::zero()));
        assert_eq!(r.terms.len(), 4);
        let r = bipartite_vertex_edge_sides(&g, &sel).unwrap();
        assert!(r.pass, "{}", r.breakdown());
    }

    #[test]
    fn vertex_edge_needs_face_edge() {
        let g = unit_cycle(6);
        let sel = FaceSelection::new(outer(&g), v(&[0, 1, 2, 4]));
        assert!(matches!(vertex_edge_sides(&g, &sel), Err(Error::InvalidSelection(_))));
    }

    fn arb_instance(k: usize, edges: bool, chords: f64) -> impl Strategy<Value = Option<(PlaneGraph, FaceSelection)>> {
        (2u32..4, 2u32..5, any::<u64>()).prop_map(move |(r, c, seed)| {
            let spec = GridSpec::new(r, c, 0.85).with_weights(WeightMode::Rational).with_chords(chords);
            let g = grid_subgraph(&spec, seed);
            let kind = SelectionKind { edges, ..SelectionKind::default() };
            let sel = sample_selection(&g, k, kind, &mut crate::generate::rng(seed))?;
            Some((g, sel))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn vertex_condensation_holds(inst in arb_instance(2, false, 0.3), j in 1usize..3) {
            if let Some((g, sel)) = inst {
                let r = vertex_condensation_sides(&g, &sel, j).unwrap();
                prop_assert!(r.pass, "{}", r.breakdown());
            }
        }

        #[test]
        fn four_point_agrees_with_vertex_condensation(inst in arb_instance(2, false, 0.3)) {
            if let Some((g, sel)) = inst {
                let abcd = [sel.a(1), sel.b(1), sel.a(2), sel.b(2)];
                let four = four_point_sides(&g, sel.face, abcd).unwrap();
                let sums = vertex_condensation_sides(&g, &sel, 1).unwrap();
                prop_assert!(four.pass);
                prop_assert_eq!(&four.lhs - &four.rhs, &sums.rhs - &sums.lhs);
            }
        }

        #[test]
        fn edge_condensation_holds(inst in arb_instance(2, true, 0.3), j in 1usize..3) {
            if let Some((g, sel)) = inst {
                let r = edge_condensation_sides(&g, &sel, j).unwrap();
                prop_assert!(r.pass, "{}", r.breakdown());
                let four = two_edge_sides(&g, &sel).unwrap();
                prop_assert_eq!(four.lhs, r.lhs);
            }
        }

        #[test]
        fn bipartite_terms_vanish(inst in arb_instance(2, false, 0.0)) {
            if let Some((g, sel)) = inst {
                if check_split_colours(&g, &sel).is_ok() {
                    let r = vertex_condensation_sides(&g, &sel, 1).unwrap();
                    for t in &r.terms {
                        let size = t.subset.as_ref().unwrap().len();
                        if (t.side == Part::Lhs && size >= 3) || (t.side == Part::Rhs && size >= 2) {
                            prop_assert!(t.product.is_zero());
                        }
                    }
                }
            }
        }
    }
}
