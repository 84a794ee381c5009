use mirrorci::error::Error;
use mirrorci::hypergeom::{build_i, CISpec, Regime};
use mirrorci::pfcheck::{closed_form_relation, pf_operator, relation_extract, verify_annihilation};

fn spec(n: usize, l: &[u32]) -> CISpec {
    CISpec::new(n, l.to_vec()).unwrap()
}

const MATRIX: [(usize, &[u32], Regime); 10] = [
    (4, &[5], Regime::CalabiYau),
    (5, &[3, 3], Regime::CalabiYau),
    (5, &[4, 2], Regime::CalabiYau),
    (6, &[3, 2, 2], Regime::CalabiYau),
    (7, &[2, 2, 2, 2], Regime::CalabiYau),
    (5, &[2], Regime::Fano),
    (6, &[2, 2], Regime::Fano),
    (2, &[2], Regime::Boundary),
    (3, &[3], Regime::Boundary),
    (4, &[2, 2], Regime::Boundary),
];

#[test]
fn regime_classification() {
    for (n, l, regime) in MATRIX {
        assert_eq!(spec(n, l).regime(), regime, "({n};{l:?})");
    }
    assert!(matches!(CISpec::new(3, vec![5]), Err(Error::Unsupported(_))));
    assert!(matches!(CISpec::new(2, vec![2, 2, 2]), Err(Error::InvalidSpec(_))));
}

#[test]
fn operator_annihilates_class_in_every_regime() {
    for (n, l, _) in MATRIX {
        let s = spec(n, l);
        let res = verify_annihilation(&pf_operator(&s).unwrap(), &build_i(&s, 10).unwrap(), 10).unwrap();
        assert!(res.is_zero(), "({n};{l:?})");
    }
}

#[test]
fn relations_match_closed_forms() {
    for (n, l, regime) in MATRIX {
        let s = spec(n, l);
        if regime == Regime::CalabiYau {
            assert!(relation_extract(&s).is_err());
            continue;
        }
        assert_eq!(relation_extract(&s).unwrap(), closed_form_relation(&s).unwrap(), "({n};{l:?})");
    }
    assert_eq!(relation_extract(&spec(6, &[2, 2])).unwrap().display_relation(), "p^5 = 16*q*p^2");
}
