use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{FiniteRing, RingError};
use crate::linalg::{AbelianGroup, GroupMorphism, IntMatrix};

/// Largest ring order the constructors will build.
pub const MAX_RING_ORDER: usize = 1 << 16;

/// Multiplication table of a finite group on `0..n`; element 0 must be the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, RingError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(RingError::Invalid("group table must be square with entries in range".into()));
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(RingError::Invalid("element 0 is not the identity".into()));
            }
            if !(0..n).any(|b| table[a][b] == 0) {
                return Err(RingError::Invalid(format!("element {} has no inverse", a)));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(RingError::Invalid(format!(
                            "group table is not associative on ({}, {}, {})",
                            a, b, c
                        )));
                    }
                }
            }
        }
        Ok(Self { table })
    }

    /// The cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self { table }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }
}

fn check_order(moduli: &[BigInt]) -> Result<(), RingError> {
    let order: BigInt = moduli.iter().product();
    if order > BigInt::from(MAX_RING_ORDER) {
        return Err(RingError::TooLarge {
            order,
            bound: MAX_RING_ORDER,
        });
    }
    Ok(())
}

fn basis_ring(
    moduli: Vec<BigInt>,
    mul: Vec<Vec<Vec<BigInt>>>,
    unit: Vec<BigInt>,
) -> Result<(FiniteRing, crate::linalg::Presentation), RingError> {
    check_order(&moduli)?;
    FiniteRing::from_basis(&moduli, &mul, &unit)
}

/// Lifts of the canonical generators of `r` into its own coordinates, i.e. each
/// ring element as a vector over the basis `g_k`, together with products.
fn flat(r: &FiniteRing) -> (Vec<BigInt>, Vec<Vec<Vec<BigInt>>>, Vec<BigInt>) {
    (
        r.additive().orders().to_vec(),
        r.structure_constants().to_vec(),
        r.unit().clone(),
    )
}

impl FiniteRing {
    /// `ℤ/n`.
    pub fn cyclic(n: u64) -> Result<FiniteRing, RingError> {
        if n < 2 {
            return Err(RingError::Invalid("cyclic ring needs n ≥ 2".into()));
        }
        check_order(&[BigInt::from(n)])?;
        FiniteRing::new(
            AbelianGroup::cyclic(n),
            vec![vec![vec![BigInt::one()]]],
            vec![BigInt::one()],
        )
    }

    /// `R₁ × R₂` with its two projections.
    pub fn product_with_projections(
        r1: &FiniteRing,
        r2: &FiniteRing,
    ) -> Result<(FiniteRing, GroupMorphism, GroupMorphism), RingError> {
        let (m1, c1, u1) = flat(r1);
        let (m2, c2, u2) = flat(r2);
        let (n1, n2) = (m1.len(), m2.len());
        let k = n1 + n2;
        let mut mul = vec![vec![vec![BigInt::zero(); k]; k]; k];
        for i in 0..n1 {
            for j in 0..n1 {
                mul[i][j][..n1].clone_from_slice(&c1[i][j]);
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                mul[n1 + i][n1 + j][n1..].clone_from_slice(&c2[i][j]);
            }
        }
        let moduli = [m1, m2].concat();
        let unit = [u1, u2].concat();
        let (ring, pres) = basis_ring(moduli, mul, unit)?;
        let lift = pres.lift_matrix();
        let p1 = lift.select_rows(&(0..n1).collect::<Vec<_>>());
        let p2 = lift.select_rows(&(n1..k).collect::<Vec<_>>());
        let p1 = GroupMorphism::new(ring.additive().clone(), r1.additive().clone(), p1)?;
        let p2 = GroupMorphism::new(ring.additive().clone(), r2.additive().clone(), p2)?;
        Ok((ring, p1, p2))
    }

    pub fn product(r1: &FiniteRing, r2: &FiniteRing) -> Result<FiniteRing, RingError> {
        Ok(Self::product_with_projections(r1, r2)?.0)
    }

    /// `d × d` matrices over `R₀`.
    pub fn matrix_ring(r0: &FiniteRing, d: usize) -> Result<FiniteRing, RingError> {
        Self::matrix_like(r0, d, |_, _| true)
    }

    /// Upper-triangular `d × d` matrices over `R₀`.
    pub fn triangular_ring(r0: &FiniteRing, d: usize) -> Result<FiniteRing, RingError> {
        Self::matrix_like(r0, d, |i, j| i <= j)
    }

    fn matrix_like(
        r0: &FiniteRing,
        d: usize,
        keep: impl Fn(usize, usize) -> bool,
    ) -> Result<FiniteRing, RingError> {
        if d == 0 {
            return Err(RingError::Invalid("matrix size must be at least 1".into()));
        }
        let (m0, c0, u0) = flat(r0);
        let n0 = m0.len();
        let cells: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .filter(|&(i, j)| keep(i, j))
            .collect();
        let pos = |i: usize, j: usize| cells.iter().position(|&c| c == (i, j));
        let k = cells.len() * n0;
        let moduli: Vec<BigInt> = cells.iter().flat_map(|_| m0.iter().cloned()).collect();
        check_order(&moduli)?;
        let mut mul = vec![vec![vec![BigInt::zero(); k]; k]; k];
        for (a, &(i, j)) in cells.iter().enumerate() {
            for (b, &(l, m)) in cells.iter().enumerate() {
                if j != l {
                    continue;
                }
                let c = pos(i, m).expect("products stay in the shape");
                for p in 0..n0 {
                    for q in 0..n0 {
                        mul[a * n0 + p][b * n0 + q][c * n0..(c + 1) * n0].clone_from_slice(&c0[p][q]);
                    }
                }
            }
        }
        let mut unit = vec![BigInt::zero(); k];
        for i in 0..d {
            let c = pos(i, i).expect("diagonal is kept");
            unit[c * n0..(c + 1) * n0].clone_from_slice(&u0);
        }
        Ok(basis_ring(moduli, mul, unit)?.0)
    }

    /// Group ring `R₀[G]`.
    pub fn group_ring(r0: &FiniteRing, g: &GroupTable) -> Result<FiniteRing, RingError> {
        let (m0, c0, u0) = flat(r0);
        let n0 = m0.len();
        let n = g.order();
        let k = n * n0;
        let moduli: Vec<BigInt> = (0..n).flat_map(|_| m0.iter().cloned()).collect();
        check_order(&moduli)?;
        let mut mul = vec![vec![vec![BigInt::zero(); k]; k]; k];
        for a in 0..n {
            for b in 0..n {
                let c = g.table[a][b];
                for p in 0..n0 {
                    for q in 0..n0 {
                        mul[a * n0 + p][b * n0 + q][c * n0..(c + 1) * n0].clone_from_slice(&c0[p][q]);
                    }
                }
            }
        }
        let mut unit = vec![BigInt::zero(); k];
        unit[..n0].clone_from_slice(&u0);
        Ok(basis_ring(moduli, mul, unit)?.0)
    }

    /// `R₀[ε]/(ε²)`, with ε central.
    pub fn dual_numbers(r0: &FiniteRing) -> Result<FiniteRing, RingError> {
        let (m0, c0, u0) = flat(r0);
        let n0 = m0.len();
        let k = 2 * n0;
        let moduli = [m0.clone(), m0].concat();
        check_order(&moduli)?;
        let mut mul = vec![vec![vec![BigInt::zero(); k]; k]; k];
        for (a, b, c) in [(0, 0, 0), (0, 1, 1), (1, 0, 1)] {
            for p in 0..n0 {
                for q in 0..n0 {
                    mul[a * n0 + p][b * n0 + q][c * n0..(c + 1) * n0].clone_from_slice(&c0[p][q]);
                }
            }
        }
        let mut unit = vec![BigInt::zero(); k];
        unit[..n0].clone_from_slice(&u0);
        Ok(basis_ring(moduli, mul, unit)?.0)
    }

    /// The ring `[[ℤ/a, ℤ/b], [0, ℤ/c]]` of upper-triangular matrices with
    /// entries of mixed characteristic; requires `b | a` and `b | c`.
    pub fn generalized_triangular(a: u64, b: u64, c: u64) -> Result<FiniteRing, RingError> {
        if a < 2 || b < 2 || c < 2 || !a.is_multiple_of(b) || !c.is_multiple_of(b) {
            return Err(RingError::Invalid(format!(
                "need a, b, c ≥ 2 with b | a and b | c, got ({}, {}, {})",
                a, b, c
            )));
        }
        let z = BigInt::zero;
        let o = BigInt::one;
        // basis e11, e12, e22
        let e = |i: usize| -> Vec<BigInt> { (0..3).map(|k| if k == i { o() } else { z() }).collect() };
        let zero = || vec![z(), z(), z()];
        let mul = vec![
            vec![e(0), e(1), zero()],
            vec![zero(), zero(), e(1)],
            vec![zero(), zero(), e(2)],
        ];
        let moduli = vec![BigInt::from(a), BigInt::from(b), BigInt::from(c)];
        let unit = vec![o(), z(), o()];
        Ok(basis_ring(moduli, mul, unit)?.0)
    }

    /// The canonical ring morphism from `ℤ/char` (the prime subring) as a matrix
    /// sending 1 to the unit.
    pub fn prime_subring_map(&self) -> IntMatrix {
        IntMatrix::from_columns(self.rank(), &[self.unit().clone()]).expect("one column")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn triangular_over_f2() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let t = FiniteRing::triangular_ring(&f2, 2).unwrap();
        assert_eq!(t.order(), b(8));
        assert!(!t.is_commutative());
    }

    #[test]
    fn matrix_rings() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let m = FiniteRing::matrix_ring(&f2, 2).unwrap();
        assert_eq!(m.order(), b(16));
        assert!(!m.is_commutative());
        let m1 = FiniteRing::matrix_ring(&f2, 1).unwrap();
        assert_eq!(m1, f2);
        let z4 = FiniteRing::cyclic(4).unwrap();
        assert!(matches!(FiniteRing::matrix_ring(&z4, 3), Err(RingError::TooLarge { .. })));
    }

    #[test]
    fn products_and_projections() {
        let z2 = FiniteRing::cyclic(2).unwrap();
        let z3 = FiniteRing::cyclic(3).unwrap();
        let (p, pr1, pr2) = FiniteRing::product_with_projections(&z2, &z3).unwrap();
        assert_eq!(p.additive().orders(), &[b(6)]);
        assert_eq!(pr1.apply(p.unit()), vec![b(1)]);
        assert_eq!(pr2.apply(p.unit()), vec![b(1)]);
        for x in p.elements() {
            for y in p.elements() {
                let xy = p.mul(&x, &y);
                assert_eq!(pr1.apply(&xy), z2.mul(&pr1.apply(&x), &pr1.apply(&y)));
                assert_eq!(pr2.apply(&xy), z3.mul(&pr2.apply(&x), &pr2.apply(&y)));
            }
        }
    }

    #[test]
    fn group_ring_and_dual_numbers() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let g = FiniteRing::group_ring(&f2, &GroupTable::cyclic(2)).unwrap();
        assert_eq!(g.order(), b(4));
        assert!(g.is_commutative());
        let d = FiniteRing::dual_numbers(&f2).unwrap();
        assert_eq!(d.order(), b(4));
        let s3 = GroupTable::new(vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 2, 0, 5, 3, 4],
            vec![2, 0, 1, 4, 5, 3],
            vec![3, 4, 5, 0, 1, 2],
            vec![4, 5, 3, 2, 0, 1],
            vec![5, 3, 4, 1, 2, 0],
        ])
        .unwrap();
        let gs = FiniteRing::group_ring(&f2, &s3).unwrap();
        assert!(!gs.is_commutative());
    }

    #[test]
    fn mixed_characteristic_triangular() {
        let t = FiniteRing::generalized_triangular(4, 2, 2).unwrap();
        assert_eq!(t.order(), b(16));
        assert!(!t.is_commutative());
        assert!(!t.is_free_over_prime_subring());
        assert!(FiniteRing::generalized_triangular(4, 3, 2).is_err());
    }
}
