use modlab_core::linalg::{smith_normal_form, subgroup_generated, AbelianGroup, Elem, IntMatrix, Presentation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(-bound..=bound, c), r))
}

fn det(m: &[Vec<i128>]) -> i128 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// gcd of all k×k minors, by cofactor expansion.
fn determinantal_divisor(a: &[Vec<i64>], k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in subsets(a.len(), k) {
        for cols in subsets(a[0].len(), k) {
            let sub: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j] as i128).collect()).collect();
            g = g.gcd(&BigInt::from(det(&sub)));
        }
    }
    g
}

/// Closure of `gens` under addition, by breadth-first search.
fn span_size(g: &AbelianGroup, gens: &[Elem]) -> usize {
    let mut seen = std::collections::BTreeSet::from([g.zero()]);
    let mut frontier = vec![g.zero()];
    while let Some(x) = frontier.pop() {
        for y in gens {
            let z = g.add(&x, y);
            if seen.insert(z.clone()) {
                frontier.push(z);
            }
        }
    }
    seen.len()
}

proptest! {
    #[test]
    fn smith_form_is_a_certified_factorization(rows in matrix(6, 50)) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let (u, d, v) = smith_normal_form(&a);
        prop_assert_eq!(u.mul(&a).unwrap().mul(&v).unwrap(), d.clone());
        prop_assert!(u.is_unimodular());
        prop_assert!(v.is_unimodular());
        prop_assert!(d.is_smith_form());
    }

    #[test]
    fn invariant_factors_match_determinantal_divisors(rows in matrix(4, 9)) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let (_, d, _) = smith_normal_form(&a);
        let mut product = BigInt::from(1);
        for k in 1..=rows.len().min(rows[0].len()) {
            product *= d[(k - 1, k - 1)].abs();
            prop_assert_eq!(&product, &determinantal_divisor(&rows, k));
        }
    }

    #[test]
    fn square_presentation_has_order_det(rows in (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-6i64..=6, n), n))) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let p = Presentation::from_relation_matrix(&a);
        let wide: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let d = det(&wide).abs();
        match p.group().order() {
            Some(o) => prop_assert_eq!(o, BigInt::from(d)),
            None => prop_assert_eq!(d, 0),
        }
    }

    #[test]
    fn generated_subgroup_matches_closure(
        a in 2u64..=6,
        k in 1u64..=3,
        coords in prop::collection::vec((0u64..36, 0u64..36), 1..4),
    ) {
        let g = AbelianGroup::new(vec![BigInt::from(a), BigInt::from(a * k)]).unwrap();
        let gens: Vec<Elem> = coords.iter().map(|&(x, y)| g.reduce(&[BigInt::from(x), BigInt::from(y)])).collect();
        let (sub, incl) = subgroup_generated(&g, &gens);
        prop_assert!(incl.is_injective());
        prop_assert_eq!(sub.order().unwrap(), BigInt::from(span_size(&g, &gens)));
    }
}
