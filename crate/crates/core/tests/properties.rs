use mirrorci::cohomring::{DiffOp, TPoly};
use mirrorci::exactalg::{int, rat, BigRational, HPoly, RatFuncH, TruncSeries};
use mirrorci::hypergeom::{CISpec, EquivContext};
use mirrorci::locrec::{closed_form_z, lines_count, transform_abc, Direction};
use proptest::prelude::*;

type QSeries = TruncSeries<BigRational>;

fn coeff() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn hpoly(max_len: usize) -> impl Strategy<Value = HPoly> {
    prop::collection::vec(coeff(), 0..=max_len).prop_map(HPoly::new)
}

fn nonzero_hpoly(max_len: usize) -> impl Strategy<Value = HPoly> {
    hpoly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFuncH> {
    (hpoly(3), nonzero_hpoly(3)).prop_map(|(n, d)| RatFuncH::new(n, d))
}

fn qseries(order: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(coeff(), order + 1).prop_map(move |c| TruncSeries::new(c, order))
}

fn small_op() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((0usize..=2, 0usize..=2, -3i64..=3), 1..=3).prop_map(|terms| {
        terms.into_iter().fold(DiffOp::zero(), |acc, (qp, tp, c)| {
            acc.add(&DiffOp::term(RatFuncH::constant(int(c)), qp, tp))
        })
    })
}

fn tpoly(order: usize) -> impl Strategy<Value = TPoly> {
    prop::collection::vec(qseries(order), 1..=3).prop_map(TPoly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hpoly_ring_laws(a in hpoly(4), b in hpoly(4), c in hpoly(4)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn division_with_remainder(a in hpoly(6), b in nonzero_hpoly(3)) {
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_and_is_maximal(a in nonzero_hpoly(4), b in nonzero_hpoly(4), c in nonzero_hpoly(3)) {
        let g = a.gcd(&b);
        prop_assert!(a.div_exact(&g).is_some());
        prop_assert!(b.div_exact(&g).is_some());
        prop_assert!(g.leading().unwrap() == &int(1));
        let gc = a.mul(&c).gcd(&b.mul(&c));
        prop_assert!(gc.div_exact(&c.make_monic()).is_some());
    }

    #[test]
    fn ratfunc_canonical_form(n in hpoly(3), d in nonzero_hpoly(3), c in nonzero_hpoly(2)) {
        let x = RatFuncH::new(n.clone(), d.clone());
        prop_assert_eq!(RatFuncH::new(n.mul(&c), d.mul(&c)), x.clone());
        prop_assert!(x.den().leading().unwrap() == &int(1));
        prop_assert!(x.num().gcd(x.den()).is_one() || x.is_zero());
    }

    #[test]
    fn ratfunc_field_laws(x in ratfunc(), y in ratfunc(), z in ratfunc()) {
        prop_assert_eq!(x.add(&y).mul(&z), x.mul(&z).add(&y.mul(&z)));
        prop_assert_eq!(RatFuncH::sum([x.clone(), y.clone(), z.clone()]), x.add(&y).add(&z));
        if let Some(inv) = x.inv() {
            prop_assert_eq!(x.mul(&inv), RatFuncH::one());
        }
    }

    #[test]
    fn series_inverse(s in qseries(6), c0 in 1i64..5) {
        let mut c = s.coeffs().to_vec();
        c[0] = int(c0);
        let s = TruncSeries::new(c, 6);
        prop_assert_eq!(s.mul(&s.inv().unwrap()), TruncSeries::constant(int(1), 6));
    }

    #[test]
    fn exp_log_round_trip(s in qseries(6)) {
        let mut c = s.coeffs().to_vec();
        c[0] = int(0);
        let s = TruncSeries::new(c, 6);
        prop_assert_eq!(s.exp().unwrap().log().unwrap(), s);
    }

    #[test]
    fn reversion_inverts_composition(s in qseries(6), c1 in 1i64..5) {
        let mut c = s.coeffs().to_vec();
        c[0] = int(0);
        c[1] = int(c1);
        let u = TruncSeries::new(c, 6);
        let v = u.reversion().unwrap();
        prop_assert_eq!(u.compose(&v).unwrap(), TruncSeries::var(&int(1), 6));
        prop_assert_eq!(v.compose(&u).unwrap(), TruncSeries::var(&int(1), 6));
    }

    #[test]
    fn operator_composition(a in small_op(), b in small_op(), c in small_op(), s in tpoly(5)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        let lhs = a.compose(&b).apply_tpoly(&s).unwrap();
        let rhs = a.apply_tpoly(&b.apply_tpoly(&s).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_on_t_free_series(s in qseries(6)) {
        let out = DiffOp::theta().apply_tpoly(&TPoly::from_series(s.clone())).unwrap();
        prop_assert_eq!(out, TPoly::from_series(s.theta()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn transforms_are_mutually_inverse(seed in 0u64..1000) {
        let spec = CISpec::new(4, vec![5]).unwrap();
        let ctx = EquivContext::sample(&spec, 2, seed, 20).unwrap();
        let z = closed_form_z(&spec, &ctx, 2).unwrap();
        let back = transform_abc(&z, &spec, &ctx, 2, Direction::Inverse).unwrap();
        prop_assert_eq!(transform_abc(&back, &spec, &ctx, 2, Direction::Forward).unwrap(), z);
    }

    #[test]
    fn line_count_is_weight_independent(seed in 0u64..1000) {
        let spec = CISpec::new(3, vec![3]).unwrap();
        let ctx = EquivContext::sample(&spec, 1, seed, 20).unwrap();
        prop_assert_eq!(lines_count(&spec, &ctx).unwrap(), int(27));
    }
}
