//! Acceptance suite: one PASS or FAIL line per criterion.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use plane_condense::aztec::{
    aztec_count, aztec_count_closed_form, aztec_product, random_point, verify_diamond_recurrence,
    verify_forced_reductions, weighted_aztec, CountMethod, Weighting,
};
use plane_condense::condensation::{
    bipartite_edge_sides, bipartite_subset_sides, bipartite_two_edge_sides, bipartite_vertex_edge_sides,
    bipartite_vertex_sides, build_symmetric_double, edge_condensation_sides, edge_split_check, four_point_sides,
    reduced_subgraphs_check, symmetric_double_check, two_edge_sides, vertex_condensation_sides, vertex_edge_sides,
    IdentityReport,
};
use plane_condense::generate::{
    grid_subgraph, rng, sample_instance, symmetric_grid, trial_seed, GridSpec, SelectionKind, WeightMode,
};
use plane_condense::graph::{Edge, EdgeId, FaceSelection, PlaneGraph, Side, VertexId};
use plane_condense::matching::{count_fkt, matching_sum_brute};
use plane_condense::weight::{Scalar, Var, Weight};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const VERTICES: SelectionKind = SelectionKind { edges: false, outer_only: false };
const EDGES: SelectionKind = SelectionKind { edges: true, outer_only: false };

fn spec(chords: f64) -> GridSpec {
    GridSpec::new(4, 4, 0.8).with_weights(WeightMode::Rational).with_chords(chords)
}

fn instance(
    trial: u64,
    salt: u64,
    chords: f64,
    k: usize,
    kind: SelectionKind,
    accept: impl Fn(&PlaneGraph, &FaceSelection) -> bool,
) -> Result<(PlaneGraph, FaceSelection), String> {
    let mut r = rng(trial_seed(salt, trial));
    let s = spec(chords);
    sample_instance(&mut r, |r: &mut ChaCha8Rng| grid_subgraph(&s, r.gen()), k, kind, accept)
        .map_err(|e| format!("trial {trial}: {e}"))
}

fn k_of(trial: u64) -> usize {
    2 + (trial % 2) as usize
}

fn expect_pass(r: IdentityReport) -> Result<IdentityReport, String> {
    if r.pass {
        Ok(r)
    } else {
        Err(r.breakdown())
    }
}

fn check<T>(r: plane_condense::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn non_bipartite(g: &PlaneGraph, _: &FaceSelection) -> bool {
    !g.is_bipartite()
}

fn colour_split(g: &PlaneGraph, sel: &FaceSelection) -> bool {
    g.bipartition().is_some_and(|c| {
        let side = c[&sel.a(1)];
        sel.a_all().iter().all(|v| c[v] == side) && sel.b_all().iter().all(|v| c[v] != side)
    })
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    if took <= limit {
        Ok(())
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

fn pfaffian_matches_exhaustive() -> Outcome {
    let start = Instant::now();
    let mut largest = 0;
    for trial in 0..200 {
        let g = grid_subgraph(&spec(0.0), trial_seed(1, trial));
        if g.vertex_count() > 16 {
            return Err(format!("trial {trial} has {} vertices", g.vertex_count()));
        }
        largest = largest.max(g.vertex_count());
        let fkt = Weight::Scalar(check(count_fkt(&g))?);
        let brute = matching_sum_brute(&g);
        if fkt != brute {
            return Err(format!("trial {trial}: Pfaffian {fkt}, exhaustive {brute}"));
        }
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("200 graphs up to {largest} vertices in {:.2?}", start.elapsed()))
}

fn weighted_square() -> PlaneGraph {
    let edges: Vec<Edge> =
        (0..4u32).map(|i| Edge::new(i, i, (i + 1) % 4, Weight::int([2, 3, 5, 7][i as usize]))).collect();
    let rotation = (0..4u32).map(|i| (VertexId(i), vec![EdgeId(i), EdgeId((i + 3) % 4)])).collect();
    PlaneGraph::new((0..4).map(VertexId), edges, rotation).unwrap()
}

fn four_point() -> Outcome {
    let g = weighted_square();
    let abcd = [0, 1, 2, 3].map(VertexId);
    let hand = expect_pass(check(four_point_sides(&g, g.outer_face_id().unwrap(), abcd))?)?;
    if hand.lhs != Weight::int(31) {
        return Err(format!("weighted square gives {}", hand.lhs));
    }
    for trial in 0..100 {
        let (g, sel) = instance(trial, 2, 0.5, 2, VERTICES, non_bipartite)?;
        expect_pass(check(four_point_sides(&g, sel.face, [sel.a(1), sel.b(1), sel.a(2), sel.b(2)]))?)?;
    }
    Ok("100 non-bipartite instances and the weighted square (31 = 31)".into())
}

fn vertex_condensation() -> Outcome {
    let mut reports = 0;
    for trial in 0..100 {
        let (g, sel) = instance(trial, 3, 0.3, k_of(trial), VERTICES, |_, _| true)?;
        for j in 1..=sel.k() {
            expect_pass(check(vertex_condensation_sides(&g, &sel, j))?)?;
            reports += 1;
        }
    }
    let kind = SelectionKind { outer_only: true, ..VERTICES };
    for trial in 0..25 {
        let (g, sel) = instance(trial, 33, 0.3, k_of(trial), kind, |g, _| g.vertex_count().is_multiple_of(2))?;
        let j = 1 + trial as usize % sel.k();
        for r in check(symmetric_double_check(&g, &sel, j))? {
            expect_pass(r)?;
        }
    }
    Ok(format!("{reports} reports over 100 trials, 25 doubled-graph cross-checks"))
}

fn reduced_subgraphs() -> Outcome {
    let mut doubles = 0;
    for trial in 0..50u64 {
        let sg = if trial % 2 == 0 {
            check(symmetric_grid(
                1 + (trial / 2 % 2) as u32,
                2 + (trial / 2 % 5) as u32,
                0.8,
                WeightMode::Rational,
                trial,
            ))?
        } else {
            let kind = SelectionKind { outer_only: true, ..VERTICES };
            let (g, sel) = instance(trial, 4, 0.3, 1 + (trial / 2 % 3) as usize, kind, |_, _| true)?;
            doubles += 1;
            check(build_symmetric_double(&g, &sel))?.symmetric
        };
        if sg.width() > 3 {
            return Err(format!("trial {trial} has width {}", sg.width()));
        }
        expect_pass(reduced_subgraphs_check(&sg))?;
    }
    Ok(format!("50 symmetric graphs, {doubles} of them doubled constructions"))
}

fn edge_split() -> Outcome {
    let mut done = 0;
    let mut trial = 0;
    while done < 100 {
        let g = grid_subgraph(&spec(0.3), trial_seed(5, trial));
        trial += 1;
        let ids: Vec<_> = g.edges().map(|e| e.id).collect();
        if ids.is_empty() {
            continue;
        }
        let e = ids[trial as usize % ids.len()];
        expect_pass(check(edge_split_check(&g, e))?)?;
        done += 1;
    }
    Ok("100 splits".into())
}

fn edge_condensation() -> Outcome {
    let mut cross = 0;
    for trial in 0..100 {
        let (g, sel) = instance(trial, 6, 0.3, k_of(trial), EDGES, |_, _| true)?;
        let reports =
            (1..=sel.k()).map(|j| check(edge_condensation_sides(&g, &sel, j))).collect::<Result<Vec<_>, _>>()?;
        for r in &reports {
            expect_pass(r.clone())?;
        }
        if sel.k() == 2 {
            let four = expect_pass(check(two_edge_sides(&g, &sel))?)?;
            if four.lhs != reports[0].lhs || four.rhs != reports[0].rhs {
                return Err(format!("trial {trial}: two-edge form disagrees\n{}", four.breakdown()));
            }
            cross += 1;
        }
    }
    Ok(format!("100 trials, {cross} two-edge cross-checks"))
}

fn bipartite_corollaries() -> Outcome {
    let mut k3 = 0;
    for trial in 0..50 {
        let (g, sel) = instance(trial, 7, 0.0, k_of(trial), VERTICES, colour_split)?;
        k3 += usize::from(sel.k() == 3);
        for j in 1..=sel.k() {
            expect_pass(check(bipartite_vertex_sides(&g, &sel, j))?)?;
        }
    }
    let balanced = |g: &PlaneGraph, sel: &FaceSelection| {
        g.bipartition().is_some_and(|c| {
            sel.a_all().iter().chain(sel.b_all().iter()).filter(|v| c[*v] == Side::U).count() == sel.k()
        })
    };
    for trial in 0..50 {
        let (g, sel) = instance(trial, 8, 0.0, k_of(trial), VERTICES, balanced)?;
        expect_pass(check(bipartite_subset_sides(&g, &sel))?)?;
    }
    for trial in 0..50 {
        let (g, sel) = instance(trial, 9, 0.0, k_of(trial), EDGES, colour_split)?;
        for j in 1..=sel.k() {
            expect_pass(check(bipartite_edge_sides(&g, &sel, j))?)?;
        }
    }
    for same in [true, false] {
        let case = |g: &PlaneGraph, sel: &FaceSelection| {
            g.bipartition().is_some_and(|c| (c[&sel.a(1)] == c[&sel.a(2)]) == same)
        };
        for trial in 0..50 {
            let (g, sel) = instance(trial, 10 + same as u64, 0.0, 2, EDGES, case)?;
            expect_pass(check(bipartite_two_edge_sides(&g, &sel))?)?;
        }
    }
    let on_face = |g: &PlaneGraph, sel: &FaceSelection| {
        g.edge_between(sel.a(2), sel.b(2)).is_some_and(|e| g.faces()[sel.face].contains_edge(e.id))
    };
    for trial in 0..50 {
        let (g, sel) = instance(trial, 12, 0.3, 2, VERTICES, on_face)?;
        expect_pass(check(vertex_edge_sides(&g, &sel))?)?;
    }
    for first in [true, false] {
        let case = |g: &PlaneGraph, sel: &FaceSelection| {
            on_face(g, sel)
                && g.bipartition()
                    .is_some_and(|c| c[&sel.a(1)] != c[&sel.b(1)] && (c[&sel.a(1)] == c[&sel.b(2)]) == first)
        };
        for trial in 0..50 {
            let (g, sel) = instance(trial, 13 + first as u64, 0.0, 2, VERTICES, case)?;
            expect_pass(check(bipartite_vertex_edge_sides(&g, &sel))?)?;
        }
    }
    Ok(format!("50 trials for each of 9 forms ({k3} three-pair vertex trials)"))
}

fn aztec_counts() -> Outcome {
    let start = Instant::now();
    for n in 1..=50 {
        let expected = aztec_count_closed_form(n);
        let mut methods = vec![CountMethod::Recurrence];
        if n <= 8 {
            methods.push(CountMethod::Fkt);
        }
        if n <= 4 {
            methods.push(CountMethod::Brute);
        }
        for m in methods {
            let got = check(aztec_count(n, m))?;
            if got != expected {
                return Err(format!("order {n}, {m:?}: {got} instead of {expected}"));
            }
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("exhaustive to 4 (1024), Pfaffian to 8, recurrence to 50 in {:.2?}", start.elapsed()))
}

fn evaluate(g: &PlaneGraph, point: &HashMap<Var, Scalar>) -> Result<Weight, String> {
    let g = check(g.map_weights(|e| Ok(Weight::Scalar(e.weight.eval(point)?))))?;
    Ok(Weight::Scalar(check(count_fkt(&g))?))
}

fn product_formula() -> Outcome {
    for n in 1..=3 {
        let g = check(weighted_aztec(n, Weighting::Stanley(1)))?;
        let m = matching_sum_brute(&g);
        if m != aztec_product(n, 1) {
            return Err(format!("order {n}: matching sum {m}"));
        }
    }
    let g = check(weighted_aztec(4, Weighting::Stanley(1)))?;
    let mut r = rng(9);
    for p in 0..20 {
        let point = random_point(4, &mut r);
        let lhs = evaluate(&g, &point)?;
        let rhs = Weight::Scalar(check(aztec_product(4, 1).eval(&point))?);
        if lhs != rhs {
            return Err(format!("order 4, point {p}: {lhs} vs {rhs}"));
        }
    }
    Ok("symbolic for orders 1 to 3, 20 points at order 4".into())
}

fn weighted_recurrence() -> Outcome {
    let mut count = 0;
    for n in 2..=5 {
        for r in check(verify_diamond_recurrence(n, 20, 10 + n as u64))? {
            expect_pass(r)?;
            count += 1;
        }
    }
    for n in 3..=4 {
        for r in check(verify_forced_reductions(n))? {
            expect_pass(r)?;
            count += 1;
        }
    }
    Ok(format!("{count} reports: symbolic at orders 2 and 3, 20 points at 4 and 5, reductions at 3 and 4"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Pfaffian count equals exhaustive count", pfaffian_matches_exhaustive),
        ("four-point condensation", four_point),
        ("vertex condensation and doubled-graph cross-check", vertex_condensation),
        ("reduced subgraphs share one matching sum", reduced_subgraphs),
        ("edge splitting preserves matching sums", edge_split),
        ("edge condensation", edge_condensation),
        ("bipartite condensation forms", bipartite_corollaries),
        ("Aztec diamond counts", aztec_counts),
        ("Aztec product formula", product_formula),
        ("weighted Aztec recurrence and forced reductions", weighted_recurrence),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
