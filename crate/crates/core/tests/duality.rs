use ffiwa::algebra::FiniteField;
use ffiwa::drinfeld::DrinfeldModule;
use ffiwa::duality::{
    dual, finiteness_check, lambda_bound, torsion_vs_quotient, CofinModule, Dual, FiniteModule, H0Term, Module,
    Provenance,
};
use ffiwa::tower::Place;
use num_bigint::BigUint;
use proptest::prelude::*;

fn finite(residue: u64, factors: &[u32]) -> FiniteModule {
    FiniteModule::new(residue, factors.to_vec()).unwrap()
}

fn term(place: &str, dim: i64, provenance: Provenance) -> H0Term {
    H0Term {
        place: place.into(),
        dim,
        provenance,
    }
}

/// `min(e_i, n)` per finite summand plus `n` per divisible or free line.
fn truncated(factors: &[u32], lines: u32, n: u32) -> Vec<u32> {
    let mut out: Vec<u32> = factors.iter().map(|&e| e.min(n)).chain((0..lines).map(|_| n)).collect();
    out.sort_unstable();
    out
}

#[test]
fn dual_examples() {
    let m = finite(3, &[3, 1, 2]);
    assert_eq!(dual(&Module::Finite(m.clone())), Dual::Finite(m.clone()));
    assert_eq!(m.factors(), &[1, 2, 3]);
    assert_eq!(m.cardinality(), BigUint::from(3u32).pow(6));

    let divisible = CofinModule::new(2, FiniteModule::trivial(3).unwrap());
    assert_eq!(
        dual(&Module::Cofinite(divisible)),
        Dual::Compact {
            free_rank: 2,
            torsion: FiniteModule::trivial(3).unwrap()
        }
    );
    assert_eq!(FiniteModule::new(6, vec![1]).unwrap_err().kind(), "domain");
}

#[test]
fn torsion_quotient_examples() {
    let m = CofinModule::new(0, finite(2, &[1, 2, 3]));
    assert_eq!(torsion_vs_quotient(&m, 2).unwrap(), (vec![1, 2, 2], vec![1, 2, 2]));
    let line = CofinModule::new(1, FiniteModule::trivial(2).unwrap());
    assert_eq!(torsion_vs_quotient(&line, 3).unwrap(), (vec![3], vec![3]));
    assert_eq!(torsion_vs_quotient(&line, 0).unwrap_err().kind(), "domain");
}

#[test]
fn finiteness_examples() {
    for lambda in 0..4 {
        let m = CofinModule::new(lambda, FiniteModule::trivial(4).unwrap());
        let r = finiteness_check(&m);
        assert_eq!(r.dual_lambda, lambda);
        assert_eq!(r.p_torsion_dim, lambda as usize);
        assert!(r.equality && r.consistent);
    }
    let m = CofinModule::new(1, finite(4, &[2]));
    let r = finiteness_check(&m);
    assert_eq!((r.p_torsion_dim, r.dual_lambda), (2, 1));
    assert!(r.inequality_holds && !r.equality && r.consistent);
}

#[test]
fn lambda_bound_examples() {
    let r = lambda_bound(
        0,
        vec![
            term("T+1", 1, Provenance::Computed),
            term("T+2", 0, Provenance::Computed),
        ],
    )
    .unwrap();
    assert_eq!(r.bound, 1);
    assert_eq!(lambda_bound(-1, vec![]).unwrap_err().kind(), "domain");
    assert_eq!(
        lambda_bound(0, vec![term("inf", -2, Provenance::Input)])
            .unwrap_err()
            .kind(),
        "domain"
    );
}

#[test]
fn lambda_bound_from_carlitz_frobenius() {
    let k = FiniteField::with_order(3).unwrap();
    let c = DrinfeldModule::carlitz(3).unwrap();
    let pi = Place::parse("T", &k).unwrap();
    let terms: Vec<H0Term> = ["T+1", "T+2"]
        .iter()
        .map(|w| {
            let h0 = c.frobenius_data(&Place::parse(w, &k).unwrap(), &pi).unwrap().h0_dim;
            term(w, h0 as i64, Provenance::Computed)
        })
        .collect();
    assert_eq!(terms.iter().map(|t| t.dim).collect::<Vec<_>>(), vec![1, 0]);
    for sel in 0..4 {
        assert_eq!(lambda_bound(sel, terms.clone()).unwrap().bound, sel as u64 + 1);
    }
}

fn cofin() -> impl Strategy<Value = CofinModule> {
    (
        prop::sample::select(vec![2u64, 3, 4, 8, 9]),
        0u32..4,
        prop::collection::vec(0u32..6, 0..5),
    )
        .prop_map(|(residue, corank, factors)| CofinModule::new(corank, FiniteModule::new(residue, factors).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn double_dual_is_identity(m in cofin()) {
        let cof = Module::Cofinite(m.clone());
        prop_assert_eq!(dual(&cof).dual(), cof);
        let fin = Module::Finite(m.finite_part.clone());
        prop_assert_eq!(dual(&fin).dual(), fin);
    }

    #[test]
    fn torsion_dual_equals_quotient(m in cofin(), n in 1u32..=5) {
        let (left, right) = torsion_vs_quotient(&m, n).unwrap();
        let expected = truncated(m.finite_part.factors(), m.corank, n);
        prop_assert_eq!(&left, &expected);
        prop_assert_eq!(&right, &expected);
    }

    #[test]
    fn lambda_is_bounded_by_torsion_dimension(m in cofin()) {
        let r = finiteness_check(&m);
        prop_assert!(r.consistent);
        prop_assert!(r.dual_lambda as usize <= r.p_torsion_dim);
        prop_assert_eq!(r.p_torsion_dim, m.corank as usize + m.finite_part.factors().len());
        prop_assert_eq!(r.equality, m.finite_part.is_trivial());
    }

    #[test]
    fn dual_rank_depends_only_on_corank(m in cofin(), other in prop::collection::vec(1u32..6, 0..5)) {
        let changed = CofinModule::new(m.corank, FiniteModule::new(m.residue_size(), other).unwrap());
        let (a, b) = (dual(&Module::Cofinite(m)), dual(&Module::Cofinite(changed)));
        prop_assert_eq!(a.lambda(), b.lambda());
    }

    #[test]
    fn lambda_bound_is_a_monotone_sum(sel in 0i64..10, dims in prop::collection::vec(0i64..4, 0..6), bump in 0usize..7) {
        let terms: Vec<H0Term> = dims.iter().enumerate().map(|(i, &d)| term(&format!("w{i}"), d, Provenance::Input)).collect();
        let base = lambda_bound(sel, terms.clone()).unwrap();
        prop_assert_eq!(base.bound as i64, sel + dims.iter().sum::<i64>());
        prop_assert_eq!(lambda_bound(sel + 1, terms.clone()).unwrap().bound, base.bound + 1);
        if bump < terms.len() {
            let mut more = terms.clone();
            more[bump].dim += 1;
            prop_assert_eq!(lambda_bound(sel, more).unwrap().bound, base.bound + 1);
        }
    }
}
