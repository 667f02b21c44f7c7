mod common;

use dpcolor::cover::{random_assignment, Matching};
use dpcolor::graph::{diameter, is_mp2, Graph};
use dpcolor::pipeline::{color_diam2, random_diam2_planar, triangulate_diam2, Certificate};
use dpcolor::Error;

use common::*;

fn petersen() -> Graph {
    let mut text = String::new();
    for i in 0..5 {
        text.push_str(&format!("o{i} o{}\n", (i + 1) % 5));
        text.push_str(&format!("i{i} i{}\n", (i + 2) % 5));
        text.push_str(&format!("o{i} i{i}\n"));
    }
    Graph::parse_edge_list(&text).unwrap()
}

#[test]
fn four_cycle_completes_to_k4() {
    let g = Graph::cycle(4);
    let c = triangulate_diam2(&g).unwrap();
    assert_eq!(c.added_edges.len(), 2);
    assert_eq!(c.completed.edge_count(), 6);
    for seed in 0..200 {
        let m = random_assignment(&g, 4, seed);
        let out = color_diam2(&m).unwrap();
        assert!(independent(&m, &out.coloring));
        assert!(out.certificate(&m).verified);
    }
}

#[test]
fn identity_on_k4_is_a_proper_coloring() {
    let g = Graph::complete(4);
    let m = identity(&g, 4);
    let out = color_diam2(&m).unwrap();
    let mut colors = out.coloring.colors().to_vec();
    colors.sort_unstable();
    assert_eq!(colors, [1, 2, 3, 4]);
    assert!(out.completion.unwrap().added_edges.is_empty());
}

#[test]
fn star_completes_to_an_mp2_graph() {
    let g = Graph::parse_edge_list("c a\nc b\nc d\nc e\n").unwrap();
    let c = triangulate_diam2(&g).unwrap();
    assert!(is_mp2(&c.completed).unwrap());
    assert_eq!(c.completed.edge_count(), 9);
    c.check().unwrap();
}

#[test]
fn triangulations_are_left_alone() {
    let g = Graph::parse_edge_list("u w1\nu w2\nu w3\nv w1\nv w2\nv w3\nw1 w2\nw1 w3\nw2 w3\n").unwrap();
    let c = triangulate_diam2(&g).unwrap();
    assert!(c.added_edges.is_empty());
    assert_eq!(c.completed, g);
}

#[test]
fn refusals() {
    for g in [petersen(), Graph::parse_edge_list("a b\nc d\n").unwrap(), Graph::path(4)] {
        let m = random_assignment(&g, 4, 0);
        assert!(matches!(color_diam2(&m), Err(Error::Refused(_))));
        assert!(matches!(triangulate_diam2(&g), Err(Error::Refused(_))));
    }
    let m = random_assignment(&Graph::cycle(4), 3, 0);
    assert!(matches!(color_diam2(&m), Err(Error::Precondition(_))));
    assert!(matches!(color_diam2(&random_assignment(&Graph::new(), 4, 0)), Err(Error::Precondition(_))));
}

#[test]
fn one_and_two_vertices() {
    for n in 1..=2 {
        let g = Graph::complete(n);
        for seed in 0..10 {
            let m = random_assignment(&g, 4, seed);
            let out = color_diam2(&m).unwrap();
            assert!(out.completion.is_none());
            assert!(independent(&m, &out.coloring));
            assert_eq!(out.trace.steps.len(), n);
        }
    }
}

#[test]
fn certificate_round_trips() {
    let g = Graph::cycle(5);
    let m = random_assignment(&g, 4, 3);
    let cert = color_diam2(&m).unwrap().certificate(&m);
    let text = serde_json::to_string(&cert).unwrap();
    let back: Certificate = serde_json::from_str(&text).unwrap();
    assert_eq!(back.coloring, cert.coloring);
    assert_eq!(back.added_edges, cert.added_edges);
    assert_eq!(back.trace, cert.trace);
    assert!(back.verified);
    assert_eq!(back.coloring.len(), 5);
}

#[test]
fn random_corpus() {
    for seed in 0..200 {
        let n = 1 + (seed as usize % 16);
        let g = random_diam2_planar(n, seed);
        assert!(diameter(&g).at_most(2), "seed {seed}");
        assert!(g.vertex_count() <= n);
        if g.vertex_count() >= 3 {
            let c = triangulate_diam2(&g).unwrap();
            c.check().unwrap();
            assert!(is_mp2(&c.completed).unwrap(), "seed {seed}");
        }
        for k in 0..3 {
            let m = random_assignment(&g, 4, seed * 7 + k);
            let out = color_diam2(&m).unwrap();
            assert!(independent(&m, &out.coloring), "seed {seed}");
        }
    }
}

#[test]
fn deterministic() {
    for seed in 0..20 {
        let g = random_diam2_planar(12, seed);
        assert_eq!(g, random_diam2_planar(12, seed));
        let m = random_assignment(&g, 4, seed);
        let a = color_diam2(&m).unwrap().certificate(&m);
        let b = color_diam2(&m).unwrap().certificate(&m);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn arbitrary_lists_and_partial_matchings() {
    let mut r = rng(5);
    for seed in 0..50 {
        let g = random_diam2_planar(10, seed);
        let mut m = random_lists_assignment(&g, 4, 9, &mut r);
        if let Some(&(u, v)) = g.edges().first() {
            let pairs = m.matching(u, v).pairs()[1..].to_vec();
            m.set_matching(u, v, Matching::new(pairs));
        }
        let out = color_diam2(&m).unwrap();
        assert!(independent(&m, &out.coloring), "seed {seed}");
        for v in g.vertices() {
            assert!(m.list(v).contains(&out.coloring.color(v)));
        }
    }
}
