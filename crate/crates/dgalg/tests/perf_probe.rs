//! Timing probe for the window-8 computations; run with --nocapture.

use dgalg::dg::{DgAlgebra, DgTables, PresentationCandidate};
use dgalg::ncpoly::NcPoly;
use dgalg::word::GeneratorSet;
use dgalg::Presentation;
use std::time::Instant;

#[test]
#[ignore]
fn window8_probe() {
    let gens = GeneratorSet::degree_one(&["x1", "x2", "x3"]).unwrap();
    let images = ["x1*x1", "x2*x1", "x1*x3"]
        .iter()
        .map(|d| NcPoly::parse(&gens, d).unwrap())
        .collect();
    let dg = DgAlgebra::new(Presentation::free(gens), images).unwrap();

    let t0 = Instant::now();
    let tables = DgTables::new(dg, 8).unwrap();
    eprintln!("DgTables::new (window 8): {:?}", t0.elapsed());

    let t1 = Instant::now();
    let dims = tables.cohomology_dims().unwrap();
    eprintln!("dims {:?}: {:?}", dims, t1.elapsed());
    assert_eq!(dims, vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);

    let t2 = Instant::now();
    let g = tables.algebra().gens().clone();
    let cand = PresentationCandidate {
        pres: Presentation::new(
            GeneratorSet::new(vec![("w".into(), 2)]).unwrap(),
            vec![],
        )
        .unwrap(),
        reps: vec![NcPoly::parse(&g, "x2*x3").unwrap()],
    };
    tables.verify_presentation(&cand, 8).unwrap();
    eprintln!("verify_presentation (window 8): {:?}", t2.elapsed());

    let t3 = Instant::now();
    let h8 = tables.cohomology(8).unwrap();
    eprintln!("cohomology(8) reps: dim {} in {:?}", h8.dim, t3.elapsed());
}
