use dispersed_dyck::automaton::{builtin_spec, dp_run, CoeffTable, Layer};
use dispersed_dyck::closed_forms::{
    ascent, central_binomial_series, cf_closed, cf_level, cf_total_marks_closed,
    cf_total_marks_meander, descent, r2_series, uudd, valley, w_series, ClosedForms, Family,
};
use dispersed_dyck::path::{marked_count, EndClass, StatKind};
use dispersed_dyck::series::rational::int;
use dispersed_dyck::series::{TPoly, ZSeries};

const N: usize = 40;

fn table(family: Family, order: usize) -> CoeffTable {
    dp_run(&builtin_spec(family.stat()), order).unwrap()
}

fn ints(s: &ZSeries, upto: usize) -> Vec<i64> {
    s.coeffs()[..upto]
        .iter()
        .map(|c| {
            let r = c.as_constant().expect("t-free coefficient");
            assert!(r.is_integer(), "non-integer coefficient {r}");
            i64::try_from(r.to_integer()).unwrap()
        })
        .collect()
}

fn poly(c: &[i64]) -> TPoly {
    TPoly::from_ints(c)
}

#[test]
fn ascent_bivariate_expansion() {
    let f0 = cf_closed(Family::Ascent1, 7).unwrap();
    let expected = [
        poly(&[1]),
        poly(&[1]),
        poly(&[1, 1]),
        poly(&[1, 2]),
        poly(&[2, 3, 1]),
        poly(&[3, 4, 3]),
        poly(&[5, 8, 6, 1]),
    ];
    assert_eq!(f0.coeffs(), &expected);
}

#[test]
fn ascent_specializations() {
    let f0 = cf_closed(Family::Ascent1, 13).unwrap();
    assert_eq!(
        ints(&f0.eval_t(&int(0)), 13),
        [1, 1, 1, 1, 2, 3, 5, 7, 12, 18, 31, 47, 81]
    );
    assert_eq!(f0.eval_t(&int(1)), central_binomial_series(13));
}

#[test]
fn uudd_bivariate_expansion() {
    let f0 = cf_closed(Family::Uudd4, 8).unwrap();
    let expected = [
        poly(&[1]),
        poly(&[1]),
        poly(&[2]),
        poly(&[3]),
        poly(&[5, 1]),
        poly(&[8, 2]),
        poly(&[14, 6]),
        poly(&[23, 12]),
    ];
    assert_eq!(f0.coeffs(), &expected);
}

#[test]
fn descent_at_one_is_central_binomial() {
    let s = cf_closed(Family::Descent1, N).unwrap();
    assert_eq!(s.eval_t(&int(1)), central_binomial_series(N));
}

#[test]
fn radicals() {
    let plain = ZSeries::from_terms(N, &[(0, &[1]), (2, &[-4])])
        .sqrt()
        .unwrap();
    assert_eq!(w_series(Family::Ascent1, N).unwrap().eval_t(&int(1)), plain);
    assert_eq!(
        w_series(Family::Descent1, N).unwrap().eval_t(&int(1)),
        plain
    );
    let w = w_series(Family::Valley0, N).unwrap();
    assert_eq!(w, plain);
    assert_eq!(ints(&w, 9), [1, 0, -2, 0, -2, 0, -4, 0, -10]);
}

#[test]
fn valley_root_is_catalan() {
    let r2 = r2_series(Family::Valley0, 12).unwrap();
    assert_eq!(ints(&r2, 12), [0, 1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42]);
    let a1 = r2_series(Family::Ascent1, 12).unwrap().eval_t(&int(1));
    assert_eq!(a1, r2);
    // z r2^2 - r2 + z = 0
    let z = ZSeries::z(12);
    let residual = &(&(&z * &(&r2 * &r2)) - &r2) + &z;
    assert!(residual.truncate(11).is_zero());
}

#[test]
fn kernel_roots_annihilate_kernels() {
    for family in Family::ALL {
        let cf = ClosedForms::new(family, N).unwrap();
        assert!(cf.kernel_residual().is_zero(), "{family}");
        assert_eq!(cf.r2().unwrap().coeff(1).unwrap(), &TPoly::one());
    }
}

#[test]
fn closed_forms_match_dp() {
    for family in Family::ALL {
        let cf = cf_closed(family, N).unwrap();
        let dp = table(family, N).closed_series();
        assert_eq!(cf, dp, "{family}");
    }
}

#[test]
fn meanders_match_dp() {
    for family in [Family::Ascent1, Family::Valley0, Family::Uudd4] {
        let cf = ClosedForms::new(family, N).unwrap().meander().unwrap();
        let dp = table(family, N).meander_series();
        assert_eq!(cf, dp, "{family}");
    }
}

#[test]
fn marks_routes_agree() {
    for family in Family::ALL {
        let m = cf_total_marks_closed(family, N).unwrap();
        assert_eq!(m, table(family, N).closed_series().dt_at1(), "{family}");
    }
    let ascent = cf_total_marks_closed(Family::Ascent1, 6).unwrap();
    assert_eq!(ints(&ascent, 6), [0, 0, 1, 2, 5, 10]);
    let valley = cf_total_marks_closed(Family::Valley0, 13).unwrap();
    assert_eq!(
        ints(&valley, 13),
        [0, 0, 0, 0, 0, 1, 2, 7, 14, 37, 74, 176, 352]
    );
    let uudd = cf_total_marks_closed(Family::Uudd4, 13).unwrap();
    assert_eq!(
        ints(&uudd, 13),
        [0, 0, 0, 0, 1, 2, 6, 12, 30, 60, 140, 280, 630]
    );
}

#[test]
fn ascent_marks_closed_matches_brute_force() {
    let m = cf_total_marks_closed(Family::Ascent1, 13).unwrap();
    for n in 0..13 {
        let p = marked_count(n, StatKind::OneAscent, EndClass::Closed).unwrap();
        assert_eq!(
            m.coeff(n).unwrap().as_constant().unwrap(),
            p.derivative().eval(&int(1))
        );
    }
}

#[test]
fn meander_marks() {
    let a = cf_total_marks_meander(Family::Ascent1, N).unwrap();
    let mut expected = vec![0, 1];
    expected.extend((2..20).map(|n: u32| (n as i64 + 2) * 2i64.pow(n) / 8));
    assert_eq!(ints(&a, 20), expected);
    assert_eq!(a, table(Family::Ascent1, N).meander_series().dt_at1());

    let d = cf_total_marks_meander(Family::Descent1, N).unwrap();
    assert_eq!(ints(&d, 4)[2..], [1, 4]);
    assert_eq!(d, table(Family::Descent1, N).meander_series().dt_at1());
}

#[test]
fn descent_boundary_relations() {
    let cf = ClosedForms::new(Family::Descent1, N).unwrap();
    let b = descent::boundary(&cf).unwrap();
    assert_eq!(b.closed(), cf.closed().unwrap());
    let t = table(Family::Descent1, N);
    assert_eq!(b.f1, t.level_series(Layer::F, 1));
    assert_eq!(b.g1, t.level_series(Layer::G, 1));
    assert_eq!(b.h1, t.level_series(Layer::H, 1));
    assert_eq!(b.f0, t.level_series(Layer::F, 0));
    assert_eq!(b.g0, t.level_series(Layer::G, 0));
    assert_eq!(b.h0, t.level_series(Layer::H, 0));
}

#[test]
fn uudd_f1_routes() {
    let cf = ClosedForms::new(Family::Uudd4, N).unwrap();
    let (boundary, kernel) = uudd::f1_routes(&cf).unwrap();
    assert_eq!(boundary, kernel);
    assert_eq!(boundary, table(Family::Uudd4, N).level_series(Layer::F, 1));
}

#[test]
fn ascent_levels() {
    let cf = ClosedForms::new(Family::Ascent1, 32).unwrap();
    let t = table(Family::Ascent1, 32);
    for layer in [Layer::F, Layer::G, Layer::H] {
        for j in 1..=5 {
            assert_eq!(
                cf.level(layer, j).unwrap(),
                t.level_series(layer, j),
                "{layer} {j}"
            );
        }
    }
    assert_eq!(
        ascent::boundary_f1(&cf).unwrap(),
        t.level_series(Layer::F, 1)
    );
}

#[test]
fn valley_levels_follow_powers_of_root() {
    let cf = ClosedForms::new(Family::Valley0, 32).unwrap();
    let t = table(Family::Valley0, 32);
    let f1 = cf.level(Layer::F, 1).unwrap();
    let r2 = cf.r2().unwrap();
    for j in 1..=5 {
        let fj = cf_level(Family::Valley0, Layer::F, j, 32).unwrap();
        assert_eq!(fj, t.level_series(Layer::F, j), "j={j}");
        assert_eq!(fj, &f1 * &r2.pow(j - 1));
    }
    assert_eq!(
        valley::g0(&cf).unwrap().truncate(32),
        t.level_series(Layer::G, 0)
    );
}

#[test]
fn valley_first_level_without_valleys() {
    // brute force: prefixes ending on level 1 with no valley on level 0
    let f1 = cf_level(Family::Valley0, Layer::F, 1, 12)
        .unwrap()
        .eval_t(&int(0));
    let brute: Vec<i64> = (0..12)
        .map(|n| {
            let p = marked_count(n, StatKind::Valley0, EndClass::AtLevel(1)).unwrap();
            i64::try_from(p.coeff(0).to_integer()).unwrap()
        })
        .collect();
    assert_eq!(ints(&f1, 12), brute);
    assert_eq!(brute, [0, 1, 1, 2, 3, 6, 9, 18, 28, 56, 89, 179]);
    // the sequence 1,1,1,2,3,5,8,14,... belongs to f0 at t = 0
    let f0 = cf_closed(Family::Valley0, 12).unwrap().eval_t(&int(0));
    assert_eq!(ints(&f0, 12), [1, 1, 1, 2, 3, 5, 8, 14, 23, 41, 69, 125]);
}

#[test]
fn tampered_root_is_detected() {
    let mut coeffs = r2_series(Family::Ascent1, 8).unwrap().coeffs().to_vec();
    coeffs[3] = &coeffs[3] + &TPoly::one();
    let cf = ClosedForms::new(Family::Ascent1, 8)
        .unwrap()
        .with_r2(ZSeries::new(coeffs).truncate(8));
    assert!(!cf.kernel_residual().is_zero());
    let level = cf.level(Layer::F, 1);
    assert!(
        level.is_err() || level.unwrap() != table(Family::Ascent1, 8).level_series(Layer::F, 1)
    );
}

#[test]
fn order_monotonicity() {
    for family in Family::ALL {
        let low = cf_closed(family, 12).unwrap();
        let high = cf_closed(family, 24).unwrap();
        assert_eq!(high.truncate(12), low);
    }
}
