use extconvex::calculus::{
    biconjugate, conjugate, dirderiv, infconv, infconv_conjugate_check, is_subgradient, subdiff_extended,
    young_fenchel_check,
};
use extconvex::extreal::{inf_up, sup_up, DownReal, UpReal};
use extconvex::geometry::{Cone2, ConvexPoly2, Halfspace3};
use extconvex::residuation::{
    check_condition, check_conlinear, check_equivalence, residual, three_point_conlinear, three_point_groupoid,
    Condition, Mode, ThreePoint,
};
use extconvex::scalar_fn::{affine_split_sup, dual_add, AffineDual, DualElem, Interval, Knot, Tail, UpFunction};
use extconvex::setvalued::{conaffine_eval, scalarize, sv_conjugate, DualTriple, SetValuedFn, UpSet};

fn up(x: f64) -> UpReal {
    UpReal::finite(x)
}

fn two_wells() -> UpFunction {
    // min(|x - 1|, |x + 1|)
    UpFunction::pl(
        vec![Knot::new(-1.0, 0.0), Knot::new(0.0, 1.0), Knot::new(1.0, 0.0)],
        Tail::Slope(-1.0),
        Tail::Slope(1.0),
    )
    .unwrap()
}

fn half_line() -> UpFunction {
    UpFunction::improper_split(Interval::at_least(0.0))
}

#[test]
fn residual_tables() {
    assert!(UpReal::TOP.idif(UpReal::TOP).is_bottom());
    assert!(UpReal::TOP.idif(UpReal::BOTTOM).is_top());
    assert!(UpReal::ZERO.idif(UpReal::TOP).is_bottom());
    assert_eq!(up(5.0).idif(up(3.0)), up(2.0));
    assert!(DownReal::TOP.sdif(DownReal::TOP).is_top());
    assert!(DownReal::BOTTOM.sdif(DownReal::TOP).is_bottom());
    assert!(UpReal::TOP.isum(UpReal::BOTTOM).is_top());
    assert!(DownReal::TOP.ssum(DownReal::BOTTOM).is_bottom());
    assert_eq!(UpReal::TOP.scale(0.0).unwrap(), UpReal::ZERO);
    assert!(inf_up([]).is_top());
    assert!(sup_up([]).is_bottom());
    assert!(inf_up([up(3.0), UpReal::BOTTOM, up(7.0)]).is_bottom());
}

#[test]
fn three_point_models() {
    let inf = three_point_groupoid(ThreePoint::InfAddition);
    let sup = three_point_groupoid(ThreePoint::SupAddition);
    assert!(check_condition(&inf, Condition::A, Mode::Inf).holds);
    let d = check_condition(&sup, Condition::D, Mode::Inf);
    assert!(!d.holds);
    assert!(d.witnesses.iter().any(|w| w.u == "inf" && w.v.as_deref() == Some("-inf")));
    assert_eq!(residual(&inf, 1, 1, Mode::Inf), Some(1));
    assert_eq!(residual(&inf, 2, 0, Mode::Inf), Some(2));
    assert_eq!(residual(&sup, 2, 0, Mode::Inf), None);
    let e = check_equivalence(&sup, Mode::Inf);
    assert!(e.agree && e.reports.iter().all(|r| !r.holds));

    let scalars = [0.0, 0.5, 1.0, 2.0];
    for kind in [ThreePoint::InfAddition, ThreePoint::SupAddition] {
        assert!(check_conlinear(&three_point_conlinear(kind, &scalars)).conlinear);
    }
}

#[test]
fn improper_affine_functions() {
    let hat = AffineDual::new(DualElem::Hat(1.0), 0.0);
    assert!(hat.eval(-1.0).is_bottom());
    assert!(hat.eval(1.0).is_top());
    assert_eq!(AffineDual::new(DualElem::Proper(2.0), 1.0).eval(3.0), up(5.0));
    assert!(affine_split_sup(DualElem::Hat(1.0), 0.0, 2.0, -3.0).is_bottom());
    assert!(affine_split_sup(DualElem::Hat(1.0), 0.0, 1.0, 1.0).is_top());

    assert_eq!(dual_add(DualElem::Hat(1.0), DualElem::Proper(5.0)), DualElem::Hat(1.0));
    assert_eq!(dual_add(DualElem::Proper(2.0), DualElem::Proper(3.0)), DualElem::Proper(5.0));
    assert_eq!(dual_add(DualElem::Hat(1.0), DualElem::Hat(1.0)).canonical(), DualElem::Hat(1.0));
}

#[test]
fn functions_and_hulls() {
    assert_eq!(UpFunction::abs().eval(-2.0), up(2.0));
    assert!(half_line().eval(-1.0).is_top());
    assert!(UpFunction::ConstBottom.eval(4.0).is_bottom());
    assert!(UpFunction::ConstTop.dom().is_empty());
    assert!(UpFunction::abs().epi_contains(1.0, 2.0));
    assert!(half_line().is_convex());

    let h = two_wells().closure_hull();
    for x in [-1.0, -0.3, 0.0, 0.9, 1.0] {
        assert_eq!(h.eval(x), UpReal::ZERO);
    }
    assert_eq!(h.eval(3.0), up(2.0));
    assert_eq!(UpFunction::ConstBottom.closure_hull(), UpFunction::ConstBottom);
}

#[test]
fn derivatives_and_subgradients() {
    let abs = UpFunction::abs();
    assert_eq!(dirderiv(&abs, 0.0, 1.0).unwrap(), up(1.0));
    assert!(dirderiv(&half_line(), -1.0, 3.0).unwrap().is_bottom());
    assert!(dirderiv(&half_line(), 0.0, -1.0).unwrap().is_top());

    let sd = subdiff_extended(&abs, 0.0);
    assert!(sd.proper_part.approx_eq(&Interval::new(-1.0, 1.0), 0.0));
    assert_eq!(sd.improper_part, vec![0.0]);
    assert!(subdiff_extended(&half_line(), 0.0).contains(DualElem::Hat(-1.0)));
    let top = subdiff_extended(&UpFunction::ConstTop, 2.0);
    assert!(top.proper_part.is_empty() && top.improper_part == vec![0.0]);

    assert!(is_subgradient(&abs, 0.0, DualElem::Proper(0.5)));
    assert!(!is_subgradient(&abs, 0.0, DualElem::Proper(2.0)));
    assert!(!is_subgradient(&abs, 0.0, DualElem::Hat(1.0)));
}

#[test]
fn conjugates() {
    let abs = UpFunction::abs();
    assert_eq!(conjugate(&abs, DualElem::Proper(0.5), 0.0), DownReal::ZERO);
    assert!(conjugate(&abs, DualElem::Proper(2.0), 0.0).is_top());
    assert!(conjugate(&half_line(), DualElem::Hat(-1.0), 0.0).is_bottom());
    assert!(conjugate(&UpFunction::ConstTop, DualElem::Proper(1.0), 4.0).is_bottom());
    assert_eq!(young_fenchel_check(&abs, DualElem::Proper(0.5), 0.0, 1.0), [true; 3]);

    assert!(biconjugate(&abs).approx_eq(&abs, 1e-12));
    assert_eq!(biconjugate(&half_line()), half_line());
    assert!(biconjugate(&two_wells()).approx_eq(&two_wells().closure_hull(), 1e-12));

    assert!(infconv(&abs, &abs).unwrap().approx_eq(&abs, 1e-12));
    assert_eq!(infconv(&abs, &UpFunction::ConstBottom).unwrap(), UpFunction::ConstBottom);
    assert_eq!(infconv(&abs, &UpFunction::ConstTop).unwrap(), UpFunction::ConstTop);
    let rep = infconv_conjugate_check(&abs, &abs, DualElem::Proper(0.5), 3.0, 1e-12).unwrap();
    assert!(rep.equal && rep.lhs == DownReal::finite(-3.0));
}

#[test]
fn set_lattice_examples() {
    let c = Cone2::orthant();
    let t = |v| UpSet::translate_cone(&c, v);
    assert!(t([1.0, 0.0]).oplus(&t([0.0, 1.0])).unwrap().approx_eq(&t([1.0, 1.0]), 1e-12));
    assert!(t([1.0, 0.0]).oplus(&UpSet::empty(&c)).unwrap().is_empty());
    assert!(t([3.0, -2.0]).scale(0.0).approx_eq(&t([0.0, 0.0]), 1e-12));

    let hull = UpSet::generated(&ConvexPoly2::from_vrep(&[[1.0, 0.0], [0.0, 1.0]], &[]), &c);
    assert!(UpSet::inf_family(&c, &[t([1.0, 0.0]), t([0.0, 1.0])]).unwrap().approx_eq(&hull, 1e-12));
    assert!(UpSet::sup_family(&c, &[t([1.0, 0.0]), t([0.0, 1.0])]).unwrap().approx_eq(&t([1.0, 1.0]), 1e-12));

    assert!(t([0.0, 0.0]).idif(&t([0.0, 0.0])).unwrap().approx_eq(&t([0.0, 0.0]), 1e-12));
    assert!(t([1.0, 1.0]).idif(&UpSet::empty(&c)).unwrap().is_whole());
    assert!(t([1.0, 1.0]).idif(&t([0.0, 0.0])).unwrap().approx_eq(&t([1.0, 1.0]), 1e-12));

    assert!(UpSet::empty(&c).support([-1.0, 0.0]).is_top());
    assert_eq!(t([0.0, 0.0]).support([-1.0, -2.0]), UpReal::ZERO);
}

#[test]
fn set_valued_examples() {
    let c = Cone2::orthant();
    // Z for x >= 0, empty otherwise
    let half = SetValuedFn::new(vec![Halfspace3::new([-1.0, 0.0, 0.0], 0.0)], &c).unwrap();
    assert_eq!(scalarize(&half, [-1.0, 0.0]).unwrap(), UpFunction::improper_split(Interval::at_least(0.0)));
    let ind = scalarize(&half, [0.0, 0.0]).unwrap();
    assert_eq!(ind.eval(2.0), UpReal::ZERO);
    assert!(ind.eval(-2.0).is_top());

    // z >= (x, -x)
    let g = SetValuedFn::new(vec![Halfspace3::new([1.0, -1.0, 0.0], 0.0), Halfspace3::new([-1.0, 0.0, -1.0], 0.0)], &c)
        .unwrap();
    let phi = scalarize(&g, [-1.0, 0.0]).unwrap();
    assert_eq!(phi.eval(3.0), up(3.0));
    assert_eq!(phi.eval(-2.0), up(-2.0));

    let d = DualTriple::new(DualElem::Proper(1.0), 0.0, [0.0, -1.0], &c).unwrap();
    let s = conaffine_eval(&c, &d, 2.0);
    assert!(s.contains([-50.0, 2.0]) && !s.contains([0.0, 1.9]));
    let hat = DualTriple::new(DualElem::Hat(1.0), 0.0, [-1.0, -1.0], &c).unwrap();
    assert!(conaffine_eval(&c, &hat, -1.0).is_whole());
    assert!(conaffine_eval(&c, &hat, 1.0).is_empty());

    assert!(sv_conjugate(&half, &hat).unwrap().is_empty());
    let hat_neg = DualTriple::new(DualElem::Hat(-1.0), 0.0, [-1.0, -1.0], &c).unwrap();
    assert!(sv_conjugate(&half, &hat_neg).unwrap().is_whole());
    assert!(DualTriple::new(DualElem::Proper(0.0), 0.0, [1.0, 0.0], &c).is_err());
}
