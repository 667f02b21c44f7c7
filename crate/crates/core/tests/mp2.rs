mod common;

use rand::seq::SliceRandom;

use dpcolor::cover::{random_assignment, ListAssignment, Matching, MatchingAssignment};
use dpcolor::graph::{is_mp2, Graph};
use dpcolor::mp2::cases::{run_case, Params};
use dpcolor::mp2::catalog::{self, smallest_params, NAMES};
use dpcolor::mp2::run::{Frame, Run};
use dpcolor::mp2::{color_mp2, identify_catalog, reduce_degree3, ColoringTrace, Rule, Step};
use dpcolor::Error;

use common::*;

/// `g` with its vertices listed in a random order under fresh labels.
fn shuffled(g: &Graph, seed: u64) -> Graph {
    let mut perm: Vec<usize> = g.vertices().collect();
    perm.shuffle(&mut rng(seed));
    let mut h = Graph::new();
    for i in 0..perm.len() {
        h.add_vertex(&format!("q{i}"));
    }
    for (u, v) in g.edges() {
        h.add_edge(perm[u], perm[v]).unwrap();
    }
    h
}

/// Every way of stacking one vertex onto a triangle of `g` that leaves an
/// MP2-graph.
fn stackings(g: &Graph) -> Vec<Graph> {
    let mut out = Vec::new();
    for a in g.vertices() {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b).iter().filter(|&&c| c > b && g.has_edge(a, c)) {
                let mut h = g.clone();
                let x = h.add_vertex("new");
                for t in [a, b, c] {
                    h.add_edge(x, t).unwrap();
                }
                if is_mp2(&h).unwrap() {
                    out.push(h);
                }
            }
        }
    }
    out
}

#[test]
fn colors_every_catalog_entry_under_relabeling() {
    for name in NAMES {
        for (i, p) in smallest_params(name, 2).into_iter().enumerate() {
            let e = catalog::catalog(name, &p).unwrap();
            let g = shuffled(&e.graph, i as u64);
            for seed in 0..30 {
                let m = random_assignment(&g, 4, seed);
                let (c, trace) = color_mp2(&m).unwrap();
                assert!(independent(&m, &c), "{}", e.title());
                assert_eq!(trace.replay(&m).unwrap(), c, "{}", e.title());
                assert!(matches!(trace.steps.first(), Some(Step::Case { .. })));
            }
        }
    }
}

#[test]
fn identifies_shuffled_entries() {
    for name in NAMES {
        let e = catalog::catalog(name, &catalog::min_params(name)).unwrap();
        let g = shuffled(&e.graph, 3);
        let (found, map) = identify_catalog(&g).unwrap().unwrap();
        assert!(g.edges().iter().all(|&(u, v)| found.graph.has_edge(map[u], map[v])));
        assert_eq!(found.graph.vertex_count(), g.vertex_count());
    }
}

#[test]
fn degree_three_vertices_are_reduced_first() {
    let mut exercised = 0;
    for name in ["H2", "G1", "H1", "G10"] {
        let e = catalog::catalog(name, &catalog::min_params(name)).unwrap();
        for h in stackings(&e.graph).into_iter().take(3) {
            let new = h.vertex("new").unwrap();
            assert_eq!(reduce_degree3(&h, new).unwrap(), e.graph);
            for seed in 0..20 {
                let m = random_assignment(&h, 4, seed);
                let (c, trace) = color_mp2(&m).unwrap();
                assert!(independent(&m, &c));
                assert_eq!(trace.steps[0], Step::Reduce { vertex: "new".into() });
                assert_eq!(
                    trace.steps.last(),
                    Some(&Step::Color { vertex: "new".into(), color: c.color(new), rule: Rule::Greedy })
                );
                assert_eq!(trace.replay(&m).unwrap(), c);
            }
            exercised += 1;
        }
    }
    assert!(exercised >= 4);
}

#[test]
fn nested_reductions_down_to_the_base_case() {
    let mut g = Graph::parse_edge_list("u w1\nu w2\nu w3\nv w1\nv w2\nv w3\nw1 w2\nw1 w3\nw2 w3\n").unwrap();
    let x = g.add_vertex("x");
    for t in ["u", "w1", "w2"] {
        g.add_edge(x, g.vertex(t).unwrap()).unwrap();
    }
    assert!(is_mp2(&g).unwrap());
    for seed in 0..50 {
        let m = random_assignment(&g, 4, seed);
        let (c, trace) = color_mp2(&m).unwrap();
        assert!(independent(&m, &c));
        assert!(trace.steps.iter().any(|s| matches!(s, Step::Reduce { .. })));
        assert!(trace.steps.contains(&Step::Case { entry: "K5-e".into() }));
    }
}

#[test]
fn small_triangulations_are_colored_greedily() {
    for n in 3..=4 {
        let g = Graph::complete(n);
        for seed in 0..20 {
            let m = random_assignment(&g, 4, seed);
            let (c, trace) = color_mp2(&m).unwrap();
            assert!(independent(&m, &c));
            assert_eq!(trace.steps.len(), n);
        }
    }
}

#[test]
fn rejects_bad_input() {
    let c4 = Graph::cycle(4);
    assert!(matches!(color_mp2(&random_assignment(&c4, 4, 0)), Err(Error::Precondition(_))));
    let k4 = Graph::complete(4);
    assert!(matches!(color_mp2(&random_assignment(&k4, 3, 0)), Err(Error::Precondition(_))));
    let mut partial = identity(&k4, 4);
    partial.set_matching(0, 1, Matching::new(vec![(1, 1)]));
    assert!(matches!(color_mp2(&partial), Err(Error::Precondition(_))));
    let lists = ListAssignment::new(vec![vec![1, 2, 3, 4]; 4]);
    let broken = MatchingAssignment::from_parts(k4.clone(), lists, [((0, 1), Matching::new(vec![(1, 1), (2, 1)]))]);
    assert!(matches!(color_mp2(&broken), Err(Error::InvalidAssignment(_))));
    let g1_3 = catalog::generate("G1", &[("n".to_string(), 3)].into()).unwrap();
    let v = g1_3.vertices().find(|&v| g1_3.degree(v) == 4).unwrap();
    assert!(matches!(reduce_degree3(&g1_3, v), Err(Error::Precondition(_))));
}

#[test]
fn case_procedures_need_their_labels() {
    let m = random_assignment(&Graph::complete(4), 4, 1);
    assert!(run_case("H1", &Params::new(), &m).is_err());
    assert!(matches!(run_case("G99", &Params::new(), &m), Err(Error::Precondition(_))));
    let e = catalog::catalog("G6", &catalog::min_params("G6")).unwrap();
    let m = random_assignment(&e.graph, 4, 1);
    assert!(matches!(run_case("G6", &Params::new(), &m), Err(Error::Precondition(_))));
}

#[test]
fn shared_colors_follow_straightenings() {
    for name in NAMES {
        for p in smallest_params(name, 2) {
            let e = catalog::catalog(name, &p).unwrap();
            for seed in 0..40 {
                let (_, trace) = run_case(name, &p, &random_assignment(&e.graph, 4, seed)).unwrap();
                let first_same = trace.steps.iter().position(|s| matches!(s, Step::Color { rule: Rule::Same, .. }));
                if let Some(i) = first_same {
                    assert!(
                        trace.steps[..i].iter().any(|s| matches!(s, Step::Straighten { .. })),
                        "{} seed {seed}: shared color before any straightening",
                        e.title()
                    );
                }
            }
        }
    }
}

#[test]
fn shared_color_on_a_twisted_edge_is_an_internal_error() {
    let g = Graph::path(3);
    let m = transposed(&identity(&g, 4), 0, 1);
    let mut r = Run::new(&m, Frame::from_labels(g.labels()), "test");
    let err = r.same(&["0", "2"], &[("0", "1")]).unwrap_err();
    match err {
        Error::CaseFailed { message, trace } => {
            assert!(message.contains("not straight"));
            assert!(trace.steps.is_empty() || matches!(trace.steps[0], Step::Case { .. }));
        }
        other => panic!("unexpected {other:?}"),
    }
    let mut r = Run::new(&m, Frame::from_labels(g.labels()), "test");
    r.straighten(&[("0", "1")]).unwrap();
    r.assert_straight(&[("0", "1")]).unwrap();
    let c = r.same(&["0", "2"], &[("0", "1")]).unwrap();
    r.greedy(&["1"]).unwrap();
    let (col, trace) = r.finish().unwrap();
    assert!(independent(&m, &col));
    assert_eq!(trace.replay(&m).unwrap(), col);
    assert!(c >= 1);
}

#[test]
fn failed_claims_carry_the_trace() {
    let g = Graph::complete(3);
    let m = identity(&g, 4);
    let mut r = Run::new(&m, Frame::from_labels(g.labels()), "test");
    r.color("0", 1, Rule::Forced).unwrap();
    r.color("1", 2, Rule::Forced).unwrap();
    let err = r.claim("2", 3).unwrap_err();
    let Error::CaseFailed { trace, .. } = err else { panic!("expected a case failure") };
    assert_eq!(trace.steps.last(), Some(&Step::Claim { vertex: "2".into(), at_least: 3, actual: 2 }));
    assert!(r.color("0", 3, Rule::Forced).is_err());
    assert!(r.color("2", 1, Rule::Forced).is_err());
    assert!(r.v("nobody").is_err());
}

#[test]
fn trace_serializes_and_replay_catches_tampering() {
    let e = catalog::catalog("H1", &Params::new()).unwrap();
    let m = random_assignment(&e.graph, 4, 9);
    let (c, trace) = run_case("H1", &Params::new(), &m).unwrap();
    let back = ColoringTrace::from_json(&trace.to_json()).unwrap();
    assert_eq!(back, trace);
    assert_eq!(back.replay(&m).unwrap(), c);

    let mut bad = trace.clone();
    let i = bad.steps.iter().rposition(|s| matches!(s, Step::Color { .. })).unwrap();
    let Step::Color { vertex, .. } = bad.steps[i].clone() else { unreachable!() };
    let v = e.graph.vertex(&vertex).unwrap();
    let blocked = e.graph.neighbors(v).iter().find_map(|&u| m.partner(u, c.color(u), v)).unwrap();
    bad.steps[i] = Step::Color { vertex, color: blocked, rule: Rule::Greedy };
    assert!(bad.replay(&m).is_err());

    let mut short = trace.clone();
    short.steps.truncate(i);
    assert!(short.replay(&m).is_err());
}

#[test]
fn every_step_kind_round_trips() {
    let steps = vec![
        Step::Case { entry: "G8".into() },
        Step::Branch { name: "Claim 4".into() },
        Step::Embed { host: "G8(2,1)".into(), added: vec!["x2".into()] },
        Step::Reduce { vertex: "a".into() },
        Step::PropertyP { tag: "C1".into(), triangle: ["a".into(), "b".into(), "c".into()], holds: false },
        Step::Straighten { edges: vec![["a".into(), "b".into()]] },
        Step::Claim { vertex: "c".into(), at_least: 3, actual: 3 },
        Step::Color { vertex: "a".into(), color: 2, rule: Rule::Exploit },
        Step::Uncolor { vertex: "a".into() },
    ];
    let t = ColoringTrace { steps };
    assert_eq!(ColoringTrace::from_json(&t.to_json()).unwrap(), t);
    assert_eq!(t.branches(), vec!["Claim 4"]);
    assert_eq!(t.property_p_outcomes(), vec![("C1", false)]);
    let r = t.relabeled(|l| l.to_uppercase());
    assert_eq!(r.steps[3], Step::Reduce { vertex: "A".into() });
    assert_eq!(r.steps[1], t.steps[1]);
}
