use mirrorci::exactalg::{int, BigRational, TruncSeries};
use mirrorci::hypergeom::{build_i, CISpec, EquivContext};
use mirrorci::locrec::lines_count;
use mirrorci::mirror::{mirror_map, normalize, verify_theorem_form, MirrorFrame};

fn spec(n: usize, l: &[u32]) -> CISpec {
    CISpec::new(n, l.to_vec()).unwrap()
}

#[test]
fn quintic_instantons_and_theorem_form() {
    let s = spec(4, &[5]);
    let frame = MirrorFrame::build(&s, 4).unwrap();
    let table = frame.instantons(&s).unwrap();
    let want = [2875i64, 609250, 317206375, 242467530000];
    for (d, w) in want.iter().enumerate() {
        assert_eq!(table.get(d + 1), Some(&int(*w)));
    }
    let k = frame.k.as_ref().unwrap();
    assert!(verify_theorem_form(&table, &frame.normalized_j, k, &s, 4).unwrap().is_zero());
}

#[test]
fn complete_intersection_threefolds_have_integral_counts() {
    let cases: [(usize, &[u32], i64); 5] =
        [(4, &[5], 2875), (5, &[3, 3], 1053), (5, &[4, 2], 1280), (6, &[3, 2, 2], 720), (7, &[2, 2, 2, 2], 512)];
    for (n, l, n1) in cases {
        let s = spec(n, l);
        let table = MirrorFrame::build(&s, 10).unwrap().instantons(&s).unwrap();
        assert_eq!(table.len(), 10);
        assert!(table.all_integral(), "{s}");
        assert_eq!(table.get(1), Some(&int(n1)), "{s}");
        let ctx = EquivContext::sample(&s, 1, 0, 20).unwrap();
        assert_eq!(lines_count(&s, &ctx).unwrap(), int(n1), "{s}");
    }
}

#[test]
fn quintic_mirror_map() {
    let s = spec(4, &[5]);
    let j = normalize(&s, &build_i(&s, 5).unwrap()).unwrap();
    let (delta, q_of_q) = mirror_map(&j).unwrap();
    assert_eq!(delta.coeff(1), &int(770));
    assert_eq!(q_of_q.coeff(2), &int(-770));
    let id = TruncSeries::var(&BigRational::from_integer(1.into()), 5);
    let big_q = id.mul(&delta.exp().unwrap());
    assert_eq!(big_q.compose(&q_of_q).unwrap(), id);
    assert_eq!(q_of_q.compose(&big_q).unwrap(), id);
}

#[test]
fn non_threefolds_are_rejected() {
    assert!(MirrorFrame::build(&spec(5, &[2]), 3).is_err());
    let fourfold = spec(5, &[6]);
    assert!(MirrorFrame::build(&fourfold, 3).unwrap().instantons(&fourfold).is_err());
}
