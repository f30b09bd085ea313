use std::sync::Arc;

use modlab_core::functor::{comparison_map, r_extension};
use modlab_core::module::{hom_module, is_flat, is_projective, tensor_over_r, ModulePres, Side};
use modlab_core::oracle::{brute_force_hom, computed_hom};
use modlab_core::ring::{FiniteRing, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn ring(k: usize) -> Ring {
    let f2 = FiniteRing::cyclic(2).unwrap();
    let r = match k {
        0 => FiniteRing::cyclic(4),
        1 => FiniteRing::cyclic(6),
        2 => FiniteRing::triangular_ring(&f2, 2),
        _ => FiniteRing::dual_numbers(&f2),
    };
    Arc::new(r.unwrap())
}

/// `R²` modulo the given vectors, reduced into the canonical coordinates.
fn quotient(r: &Ring, side: Side, raw: &[Vec<u64>]) -> ModulePres {
    let free = ModulePres::free(r.clone(), 2, side);
    let g = free.additive();
    let gens: Vec<_> = raw
        .iter()
        .map(|v| g.reduce(&v.iter().take(g.rank()).map(|&x| BigInt::from(x)).collect::<Vec<_>>()))
        .collect();
    free.quotient(&gens).0
}

fn relations() -> impl Strategy<Value = Vec<Vec<u64>>> {
    prop::collection::vec(prop::collection::vec(0u64..16, 8), 1..3)
}

fn side() -> impl Strategy<Value = Side> {
    prop_oneof![Just(Side::Left), Just(Side::Right)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hom_module_matches_brute_force(k in 0usize..4, s in side(), a in relations(), b in relations()) {
        let r = ring(k);
        let m = quotient(&r, s, &a);
        let n = quotient(&r, s, &b);
        prop_assume!(m.additive().order().unwrap() <= BigInt::from(64));
        prop_assume!(n.additive().order().unwrap() <= BigInt::from(64));
        let brute = brute_force_hom(&m, &n, 64).unwrap();
        prop_assert_eq!(&computed_hom(&m, &n).unwrap(), &brute);
        prop_assert_eq!(hom_module(&m, &n).unwrap().group().order(), Some(BigInt::from(brute.len())));
    }

    #[test]
    fn cyclic_tensor_over_zn_is_gcd(n in 2u64..=12, a in 0u64..12, b in 0u64..12) {
        let r: Ring = Arc::new(FiniteRing::cyclic(n).unwrap());
        let right = ModulePres::free(r.clone(), 1, Side::Right).quotient(&[vec![BigInt::from(a % n)]]).0;
        let left = ModulePres::free(r.clone(), 1, Side::Left).quotient(&[vec![BigInt::from(b % n)]]).0;
        let t = tensor_over_r(&right, &left).unwrap();
        let expected = n.gcd(&a).gcd(&b);
        prop_assert_eq!(t.group().order(), Some(BigInt::from(expected)));
    }

    #[test]
    fn comparison_is_iso_over_commutative_rings(n in prop::sample::select(vec![2u64, 3, 4, 6, 8]), a in relations(), b in relations()) {
        let r: Ring = Arc::new(FiniteRing::cyclic(n).unwrap());
        let right = quotient(&r, Side::Right, &a);
        let left = quotient(&r, Side::Left, &b);
        let ext = r_extension(&right, &left).unwrap();
        prop_assert!(comparison_map(&ext).unwrap().is_isomorphism);
        prop_assert_eq!(ext.kernel(), ext.tensor().group());
    }

    #[test]
    fn flat_iff_projective(k in 0usize..4, s in side(), a in relations()) {
        let m = quotient(&ring(k), s, &a);
        prop_assert_eq!(is_flat(&m).unwrap(), is_projective(&m).unwrap());
    }
}

#[test]
fn triangular_simple_modules() {
    // T2 over 𝔽₂ has two simple left modules; only one is projective. The
    // other kills a left ideal that is not principal, so quotient by pairs.
    let r = ring(2);
    let free = ModulePres::free(r.clone(), 1, Side::Left);
    let elems: Vec<_> = (0..r.additive().order_usize().unwrap()).filter_map(|i| r.additive().element_at(i)).collect();
    let smallest: Vec<ModulePres> = elems
        .iter()
        .flat_map(|x| elems.iter().map(move |y| (x, y)))
        .map(|(x, y)| free.quotient(&[x.clone(), y.clone()]).0)
        .filter(|m| m.additive().order() == Some(BigInt::from(2)))
        .collect();
    let projective: Vec<bool> = smallest.iter().map(|m| is_projective(m).unwrap()).collect();
    assert!(projective.contains(&true) && projective.contains(&false));
}
