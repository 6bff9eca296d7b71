//! End-to-end pipeline check on the Kummer-type quartic family
//! y^2 = t (x-1)(x-t)(x-a)(ax-t) with section (x, y) = (1, 0).

use ellsurf::expr::{expect_poly, parse_tower3};
use ellsurf::places::Place;
use ellsurf::tate::{
    euler_number, fiber_configuration, shioda_tate_rank, FiberType, SplitClass,
};
use ellsurf::weierstrass::QuarticModel;
use ellsurf::{CoefficientField, ParamRat, Polynomial, RationalFunction};

type K = RationalFunction<ParamRat>;

fn kummer_quartic() -> QuarticModel<ParamRat> {
    let rf = parse_tower3("t*(x - 1)*(x - t)*(x - a)*(a*x - t)", ["a", "t", "x"]).unwrap();
    let q: Polynomial<K> = expect_poly(&rf, "quartic").unwrap();
    QuarticModel::new(q, Some((K::one(), K::zero()))).unwrap()
}

#[test]
fn kummer_generic_fiber_table() {
    let quartic = kummer_quartic();
    let w = quartic.to_weierstrass().unwrap();
    let cfg = fiber_configuration(&w).unwrap();
    assert!(cfg.unresolved.is_empty(), "unresolved: {:?}", cfg.unresolved);

    let a = ParamRat::gen();
    let a2 = CoefficientField::mul(&a, &a);
    let table: Vec<(String, String, SplitClass)> = cfg
        .fibers
        .iter()
        .map(|f| {
            (
                f.place.render(&["a", "t"]),
                f.fiber_type.label(),
                f.split,
            )
        })
        .collect();
    eprintln!("fiber table: {table:?}");

    // expected places: t, t-1, t-a, t-a^2, infinity
    let expected_places = [
        Place::at_root(&ParamRat::zero()),
        Place::at_root(&ParamRat::one()),
        Place::at_root(&a),
        Place::at_root(&a2),
        Place::Infinite,
    ];
    assert_eq!(cfg.fibers.len(), 5);
    for (place, ty) in expected_places.iter().zip([
        FiberType::IStar(2),
        FiberType::I(2),
        FiberType::I(4),
        FiberType::I(2),
        FiberType::IStar(2),
    ]) {
        let fiber = cfg.find_fiber(place).unwrap_or_else(|| {
            panic!("no fiber at {}", place.render(&["a", "t"]))
        });
        assert_eq!(fiber.fiber_type, ty, "at {}", place.render(&["a", "t"]));
    }
    let at_one = cfg.find_fiber(&Place::at_root(&ParamRat::one())).unwrap();
    assert_eq!(at_one.split, SplitClass::Yes);

    assert_eq!(euler_number(&cfg).unwrap(), 24);
    assert_eq!(shioda_tate_rank(&cfg, true).unwrap(), 19);
}
