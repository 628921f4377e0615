//! The parallel execution path must be observationally identical to the
//! sequential one: same reports, same witnesses, byte for byte.

#![cfg(feature = "parallel")]

use stabkit::graph::{triangle_hendecagon_graph, triangle_square_graph};
use stabkit::replication::make_factor_critical;
use stabkit::stab::stab_report;
use stabkit::Limits;

fn single_threaded<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let limits = Limits::default();
    for g in [triangle_square_graph(), triangle_hendecagon_graph()] {
        let parallel = stab_report(&g, &limits).unwrap();
        let sequential = single_threaded(|| stab_report(&g, &limits).unwrap());
        assert_eq!(parallel, sequential);
        assert_eq!(
            serde_json::to_string(&parallel).unwrap(),
            serde_json::to_string(&sequential).unwrap()
        );
    }
}

#[test]
fn witnesses_do_not_depend_on_worker_count() {
    let limits = Limits::default();
    let g = triangle_square_graph();
    let a = make_factor_critical(&g, &limits).unwrap();
    let b = single_threaded(|| make_factor_critical(&g, &limits).unwrap());
    assert_eq!(a.a, b.a);
    assert_eq!(a.witness.ears, b.witness.ears);
}
