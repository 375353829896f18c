use sclab_core::covers::{fiber_walls, properness_check, wall_metric, z2_cover, Monotone};
use sclab_core::graph::io::{parse_graph, write_graph};
use sclab_core::graph::{bfs_distances, metrics, random_regular, Graph, DEFAULT_RETRY_BUDGET};
use sclab_core::labeling::io::{parse_labeled, write_labeled};
use sclab_core::labeling::{Labeling, Letter, Word};
use sclab_core::lll::{label_intragraph, parse_trace, replay, write_trace, IntragraphParams, RunLimits};
use sclab_core::presentation::{cayley_patch, GraphicalPresentation};
use sclab_core::ratio::{int, rat};
use sclab_core::verify::{verify_family, CPrimeStatus, PieceOptions, Relator};

#[test]
fn text_formats_round_trip() {
    let g = random_regular(14, 3, 4, 5, DEFAULT_RETRY_BUDGET).unwrap();
    let back = parse_graph(&write_graph(&g)).unwrap();
    assert_eq!(write_graph(&back), write_graph(&g));
    let vals: Vec<i64> = (1..=g.edge_count() as i64).collect();
    let lab = Labeling::from_edge_values(&g, g.edge_count() as u64, &vals).unwrap();
    let text = write_labeled(&g, &lab);
    let (g2, lab2) = parse_labeled(&text).unwrap();
    assert_eq!(write_labeled(&g2, &lab2), text);
}

#[test]
fn labeled_cycle_replays_and_verifies() {
    let g = Graph::cycle(20).with_name("C20");
    let params = IntragraphParams::new(rat(1, 6), rat(1, 2), 20);
    let run = label_intragraph(&g, &params, 64, 3, RunLimits::new(100_000)).unwrap();
    let trace = parse_trace(&write_trace(&run.trace)).unwrap();
    assert_eq!(replay(&g, &trace).unwrap(), run.labeling);
    assert!(run.labeling.is_reduced(&g).is_ok());

    let report = verify_family(&[Relator::plain(&g, &run.labeling)], rat(1, 6), PieceOptions::default());
    assert!(report.repeats_below_lambda_girth);
}

#[test]
fn theta_cover_walls_give_path_metric() {
    let th = Graph::theta();
    let cm = z2_cover(&th, None).unwrap();
    let (_, sides) = fiber_walls(&cm).unwrap();
    for p in 0..8 {
        let d = bfs_distances(&cm.cover, p);
        for q in 0..8 {
            assert_eq!(wall_metric(&sides, p, q), d[q]);
        }
    }
    let pr = properness_check(
        &cm.cover,
        &sides,
        &Monotone::affine(rat(1, 3), int(0)),
        &Monotone::affine(int(1), int(0)),
        8,
    );
    assert!(pr.metric_ok);
    assert_eq!(pr.pairs, 64);
}

#[test]
fn distinct_letter_cycle_is_a_geodesic_relator() {
    let n = 8;
    let g = Graph::cycle(n);
    let vals: Vec<i64> = (1..=n as i64).collect();
    let lab = Labeling::from_edge_values(&g, n as u64, &vals).unwrap();
    let pres = GraphicalPresentation::new(n as u64, vec![(g.clone(), lab)]).unwrap();
    assert_eq!(pres.cprime.status, CPrimeStatus::Holds);

    let patch = cayley_patch(&pres, n / 2, 200_000);
    let dist = metrics(&g).unwrap().distances;
    for y in 1..n {
        let w = Word((0..y).map(|k| Letter::new(k as i64 + 1).unwrap()).collect());
        assert_eq!(patch.distance_of(&pres, &w), Some(dist[0][y]), "vertex {y}");
    }
}
