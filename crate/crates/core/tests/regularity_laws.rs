//! Regularity searches against linear scans, and the laws relating the
//! three notions on random split sheaves.

use multireg_core::catalog::{line_grid, random_split, RandomSpec};
use multireg_core::regularity::{
    aligned_m, beilinson_terms, block_regular_aligned, block_regular_pn, block_regularity_aligned,
    block_regularity_pn, cm_regular, cm_regularity, direct_sum_check, hw_block_equivalence, hw_block_transfer,
    hw_min_diagonal, hw_regular, monotonicity_check, resolution_class, VerdictValue,
};
use multireg_core::{helix_block, K0Lattice, MultiDegree, SplitSheaf, Space};
use proptest::prelude::*;

/// Least value in `lo..hi` from which `pred` holds at every later point of
/// the range; scans the whole range so monotonicity is not assumed.
fn scan(lo: i64, hi: i64, mut pred: impl FnMut(i64) -> bool) -> i64 {
    let mut least = hi;
    for t in (lo..hi).rev() {
        if pred(t) {
            least = t;
        } else {
            break;
        }
    }
    least
}

fn sp(d: &[u32]) -> Space {
    Space::new(d.to_vec()).unwrap()
}

#[test]
fn searches_match_scans_on_projective_spaces() {
    for n in 1..=3 {
        let x = sp(&[n]);
        let spec = RandomSpec { min_terms: 1, max_terms: 4, max_multiplicity: 2, salt: 11, ..RandomSpec::new(40, 1, 6) };
        for f in random_split(&x, &spec).unwrap() {
            let cm = scan(-30, 30, |m| cm_regular(n, &f, m).unwrap().is_regular());
            let block = scan(-30, 30, |m| block_regular_pn(n, &f, m).unwrap().is_regular());
            assert_eq!(cm_regularity(n, &f).unwrap().value(), Some(cm));
            assert_eq!(block_regularity_pn(n, &f).unwrap().value(), Some(block));
            let lowest = f.line_terms().unwrap().iter().map(|(_, a)| a.0[0]).min().unwrap();
            assert_eq!(cm, -lowest, "{f}");
        }
    }
}

#[test]
fn searches_match_scans_on_products() {
    for dims in [&[1, 1][..], &[2, 1]] {
        let x = sp(dims);
        for f in line_grid(&x, 3) {
            let t = scan(-30, 30, |t| hw_regular(&x, &f, &x.diagonal(t)).unwrap().is_regular());
            assert_eq!(hw_min_diagonal(&x, &f).unwrap().value(), Some(t), "{f}");
            let k = scan(-15, 15, |k| block_regular_aligned(&x, &f, k).unwrap().is_regular());
            let v = block_regularity_aligned(&x, &f).unwrap();
            assert_eq!(v.value(), Some(aligned_m(&x, k)), "{f}");
        }
    }
}

#[test]
fn helix_members_have_regularity_minus_index() {
    for n in 1..=3 {
        let x = sp(&[n]);
        for i in -10..=10 {
            let f = SplitSheaf::line(&x, &MultiDegree(vec![i])).unwrap();
            assert_eq!(block_regularity_pn(n, &f).unwrap().value(), Some(-i));
        }
    }
    for dims in [&[1, 1][..], &[2, 1]] {
        let x = sp(dims);
        let period = x.d() as i64 + 1;
        for i in -7..=7 {
            for a in helix_block(&x, i).members() {
                let f = SplitSheaf::line(&x, a).unwrap();
                let VerdictValue::Aligned { m, lower_exclusive, .. } = block_regularity_aligned(&x, &f).unwrap().value
                else {
                    panic!("{f}");
                };
                assert!(lower_exclusive < -i && -i <= m, "{f} in block {i}: ({lower_exclusive}, {m}]");
                if (-i + x.d() as i64).rem_euclid(period) == 0 {
                    assert_eq!(m, -i);
                }
            }
        }
    }
}

#[test]
fn staircase_degenerates_to_cm() {
    for n in 1..=3 {
        let x = sp(&[n]);
        for f in random_split(&x, &RandomSpec { salt: 5, max_terms: 3, ..RandomSpec::new(30, 1, 6) }).unwrap() {
            for m in -8..=8 {
                assert_eq!(
                    cm_regular(n, &f, m).unwrap().is_regular(),
                    hw_regular(&x, &f, &MultiDegree(vec![m])).unwrap().is_regular()
                );
            }
        }
    }
}

#[test]
fn equivalence_and_transfer_on_grids() {
    for dims in [&[1, 1][..], &[2, 1]] {
        let x = sp(dims);
        let mut catalog = line_grid(&x, 4);
        catalog.extend(random_split(&x, &RandomSpec { salt: 21, ..RandomSpec::new(30, 3, 4) }).unwrap());
        for f in &catalog {
            assert!(hw_block_equivalence(&x, f).unwrap().agree(), "{f}");
            assert_eq!(hw_block_transfer(&x, f).unwrap().failure, None, "{f}");
        }
    }
}

#[test]
fn beilinson_resolutions_balance_in_k0() {
    let x = sp(&[1, 1]);
    let lattice = K0Lattice::new(&x).unwrap();
    let sheaves = random_split(&x, &RandomSpec { min_terms: 1, max_terms: 3, salt: 77, ..RandomSpec::new(30, 1, 4) }).unwrap();
    for (i, f) in sheaves.iter().enumerate() {
        let m = block_regularity_aligned(&x, f).unwrap().value().unwrap() + 3 * (i as i64 % 3);
        let terms = beilinson_terms(&x, f, m).unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(resolution_class(&lattice, &terms).unwrap(), lattice.class_of_sheaf(f).unwrap(), "{f} m={m}");
    }
    let p3 = sp(&[3]);
    let lattice = K0Lattice::new(&p3).unwrap();
    for f in random_split(&p3, &RandomSpec { max_terms: 3, salt: 78, ..RandomSpec::new(20, 1, 5) }).unwrap() {
        let m = block_regularity_pn(3, &f).unwrap().value().unwrap();
        for extra in 0..2 {
            let terms = beilinson_terms(&p3, &f, m + extra).unwrap();
            assert_eq!(resolution_class(&lattice, &terms).unwrap(), lattice.class_of_sheaf(&f).unwrap());
        }
    }
}

#[test]
fn zero_sheaf_is_regular_everywhere() {
    let x = sp(&[1, 1]);
    let z = SplitSheaf::zero();
    assert_eq!(block_regularity_aligned(&x, &z).unwrap().value, VerdictValue::NegInfinity);
    assert_eq!(hw_min_diagonal(&x, &z).unwrap().value, VerdictValue::NegInfinity);
    assert!(block_regular_aligned(&x, &z, -100).unwrap().is_regular());
    assert_eq!(direct_sum_check(&x, &z, &line_grid(&x, 0)[0]).unwrap(), None);
}

fn arb_sheaf(x: Space) -> impl Strategy<Value = SplitSheaf> {
    let r = x.r();
    prop::collection::vec((1u64..=2, prop::collection::vec(-5i64..=5, r)), 1..=3).prop_map(move |terms| {
        let mut f = SplitSheaf::zero();
        for (m, a) in terms {
            for _ in 0..m {
                f = f.direct_sum(&SplitSheaf::line(&x, &MultiDegree(a.clone())).unwrap());
            }
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twist_laws(f in arb_sheaf(sp(&[2, 1])), p in prop::collection::vec(-2i64..=2, 2), k in -2i64..=2) {
        let x = sp(&[2, 1]);
        let p = MultiDegree(p);
        prop_assert_eq!(
            hw_regular(&x, &f, &p).unwrap().is_regular(),
            hw_regular(&x, &f.twist(&p).unwrap(), &x.zero_degree()).unwrap().is_regular()
        );
        prop_assert_eq!(
            block_regular_aligned(&x, &f, k).unwrap().is_regular(),
            block_regular_aligned(&x, &f.twist(&x.anticanonical_power(k)).unwrap(), 0).unwrap().is_regular()
        );
    }

    #[test]
    fn monotone(f in arb_sheaf(sp(&[1, 1])), m in -8i64..=8) {
        prop_assert_eq!(monotonicity_check(&sp(&[1, 1]), &f, m).unwrap(), None);
    }

    #[test]
    fn monotone_on_p2(f in arb_sheaf(sp(&[2])), m in -8i64..=8) {
        prop_assert_eq!(monotonicity_check(&sp(&[2]), &f, m).unwrap(), None);
    }

    #[test]
    fn direct_sums_take_the_max(f in arb_sheaf(sp(&[1, 1])), g in arb_sheaf(sp(&[1, 1]))) {
        prop_assert_eq!(direct_sum_check(&sp(&[1, 1]), &f, &g).unwrap(), None);
    }

    #[test]
    fn block_agrees_with_cm(n in 1u32..=3, seed in 0u64..10_000) {
        let x = sp(&[n]);
        let f = &random_split(&x, &RandomSpec { salt: seed, max_terms: 4, ..RandomSpec::new(1, 1, 6) }).unwrap()[0];
        prop_assert_eq!(block_regularity_pn(n, f).unwrap().value(), cm_regularity(n, f).unwrap().value());
    }
}
