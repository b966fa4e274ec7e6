mod bench_grid {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bench_grid.rs"));
}

#[test]
fn bench_grid_runs() {
    bench_grid::run_example().expect("bench_grid example should run");
}

mod boolean_algebra {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/boolean_algebra.rs"));
}

#[test]
fn boolean_algebra_runs() {
    boolean_algebra::run_example().expect("boolean_algebra example should run");
}

mod dimacs_export {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/dimacs_export.rs"));
}

#[test]
fn dimacs_export_runs() {
    dimacs_export::run_example().expect("dimacs_export example should run");
}

mod exact_rank {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/exact_rank.rs"));
}

#[test]
fn exact_rank_runs() {
    exact_rank::run_example().expect("exact_rank example should run");
}

mod heuristics_zoo {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/heuristics_zoo.rs"));
}

#[test]
fn heuristics_zoo_runs() {
    heuristics_zoo::run_example().expect("heuristics_zoo example should run");
}

mod incompatibility_simplify {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/incompatibility_simplify.rs"));
}

#[test]
fn incompatibility_simplify_runs() {
    incompatibility_simplify::run_example().expect("incompatibility_simplify example should run");
}

mod maxsat_oll {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/maxsat_oll.rs"));
}

#[test]
fn maxsat_oll_runs() {
    maxsat_oll::run_example().expect("maxsat_oll example should run");
}

mod onehot_dataset {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/onehot_dataset.rs"));
}

#[test]
fn onehot_dataset_runs() {
    onehot_dataset::run_example().expect("onehot_dataset example should run");
}

mod planted_generator {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/planted_generator.rs"));
}

#[test]
fn planted_generator_runs() {
    planted_generator::run_example().expect("planted_generator example should run");
}

mod sat_assumptions {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sat_assumptions.rs"));
}

#[test]
fn sat_assumptions_runs() {
    sat_assumptions::run_example().expect("sat_assumptions example should run");
}

mod undercover_biclique {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/undercover_biclique.rs"));
}

#[test]
fn undercover_biclique_runs() {
    undercover_biclique::run_example().expect("undercover_biclique example should run");
}
