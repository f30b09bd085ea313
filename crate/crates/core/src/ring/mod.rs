//! Finite rings given by structure constants, their morphisms and algebras.

mod algebra;
mod constructors;
mod ideal;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{AbelianGroup, Elem, IntMatrix, LinalgError, Presentation};

pub use algebra::{algebra_corpus, Algebra, AlgebraArrow, AlgebraMorphismCorpus, RingMorphism};
pub use constructors::{GroupTable, MAX_RING_ORDER};
pub use ideal::{Ideal, IdealSide, DEFAULT_ENUMERATION_BOUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("{0}")]
    Linalg(#[from] LinalgError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{law} fails on generators {generators:?}: {detail}")]
    Axiom {
        law: &'static str,
        generators: Vec<usize>,
        detail: String,
    },
    #[error("ring of order {order} exceeds the order bound {bound}")]
    TooLarge { order: BigInt, bound: usize },
    #[error("enumeration refused: order {order} exceeds the bound {bound}")]
    BoundExceeded { order: BigInt, bound: usize },
    #[error("invalid data: {0}")]
    Invalid(String),
}

/// Associative unital ring on a finite abelian group.
///
/// `mul[i][j]` holds the coordinates of `gᵢ·gⱼ` for the canonical generators of
/// the additive group; multiplication of arbitrary elements is biadditive
/// extension of these constants.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteRing {
    additive: AbelianGroup,
    mul: Vec<Vec<Elem>>,
    unit: Elem,
    commutative: bool,
}

impl FiniteRing {
    /// Checks all ring axioms on generators and builds the ring.
    pub fn new(additive: AbelianGroup, mul: Vec<Vec<Elem>>, unit: Elem) -> Result<Self, RingError> {
        let n = additive.rank();
        if !additive.is_finite() {
            return Err(RingError::Invalid("additive group must be finite".into()));
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(RingError::Shape(format!("expected {}x{} structure constants", n, n)));
        }
        if unit.len() != n {
            return Err(RingError::Shape("unit has the wrong length".into()));
        }
        for (i, row) in mul.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.len() != n {
                    return Err(RingError::Shape(format!("constant ({}, {}) has the wrong length", i, j)));
                }
            }
        }
        let mul: Vec<Vec<Elem>> = mul
            .into_iter()
            .map(|row| row.into_iter().map(|c| additive.reduce(&c)).collect())
            .collect();
        let unit = additive.reduce(&unit);
        let ring = Self {
            additive,
            mul,
            unit,
            commutative: false,
        };
        ring.check_axioms()?;
        let commutative = (0..n).all(|i| (0..i).all(|j| ring.mul[i][j] == ring.mul[j][i]));
        Ok(Self { commutative, ..ring })
    }

    /// Builds a ring from constants written against arbitrary cyclic moduli
    /// (not necessarily in invariant-factor form). Returns the canonical ring and
    /// the coordinate change from the given basis.
    pub fn from_basis(
        moduli: &[BigInt],
        mul: &[Vec<Vec<BigInt>>],
        unit: &[BigInt],
    ) -> Result<(Self, Presentation), RingError> {
        let k = moduli.len();
        if mul.len() != k || mul.iter().any(|r| r.len() != k || r.iter().any(|c| c.len() != k)) || unit.len() != k {
            return Err(RingError::Shape("basis data does not match the moduli".into()));
        }
        let red = |v: &[BigInt]| -> Vec<BigInt> {
            v.iter().zip(moduli).map(|(x, m)| crate::linalg::reduce_mod(x, m)).collect()
        };
        for i in 0..k {
            for j in 0..k {
                for (a, idx) in [(&moduli[i], i), (&moduli[j], j)] {
                    let scaled: Vec<BigInt> = mul[i][j].iter().map(|x| x * a).collect();
                    if red(&scaled).iter().any(|x| !x.is_zero()) {
                        return Err(RingError::Axiom {
                            law: "biadditivity",
                            generators: vec![i, j],
                            detail: format!("order of basis element {} does not annihilate the product", idx),
                        });
                    }
                }
            }
        }
        let pres = Presentation::from_moduli(moduli);
        let group = pres.group().clone();
        let lift = pres.lift_matrix();
        let r = group.rank();
        let lifts: Vec<Vec<BigInt>> = (0..r).map(|a| lift.column(a)).collect();
        let mut cmul = vec![vec![Vec::new(); r]; r];
        for a in 0..r {
            for b in 0..r {
                let mut acc = vec![BigInt::zero(); k];
                for (p, x) in lifts[a].iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (q, y) in lifts[b].iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let xy = x * y;
                        for (slot, c) in acc.iter_mut().zip(&mul[p][q]) {
                            *slot += &xy * c;
                        }
                    }
                }
                cmul[a][b] = pres.encode(&acc);
            }
        }
        let cunit = pres.encode(unit);
        Ok((Self::new(group, cmul, cunit)?, pres))
    }

    fn check_axioms(&self) -> Result<(), RingError> {
        let n = self.rank();
        let ord = self.additive.orders();
        for i in 0..n {
            for j in 0..n {
                let c = &self.mul[i][j];
                for idx in [i, j] {
                    if !self.additive.is_zero_elem(&self.additive.scale(&ord[idx], c)) {
                        return Err(RingError::Axiom {
                            law: "biadditivity",
                            generators: vec![i, j],
                            detail: format!("order of generator {} does not annihilate the product", idx),
                        });
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = &self.mul[i][j];
                for k in 0..n {
                    let left = self.mul_gen_right(ij, k);
                    let right = self.mul_gen_left(i, &self.mul[j][k]);
                    if left != right {
                        return Err(RingError::Axiom {
                            law: "associativity",
                            generators: vec![i, j, k],
                            detail: format!("(g{}g{})g{} = {:?} but g{}(g{}g{}) = {:?}", i, j, k, left, i, j, k, right),
                        });
                    }
                }
            }
        }
        for i in 0..n {
            let g = self.additive.generator(i);
            if self.mul(&self.unit, &g) != g || self.mul(&g, &self.unit) != g {
                return Err(RingError::Axiom {
                    law: "unit",
                    generators: vec![i],
                    detail: "unit does not act as identity".into(),
                });
            }
        }
        if n == 0 {
            return Err(RingError::Invalid("the zero ring is not allowed".into()));
        }
        Ok(())
    }

    /// `x · g_k`
    fn mul_gen_right(&self, x: &[BigInt], k: usize) -> Elem {
        let mut acc = self.additive.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (slot, c) in acc.iter_mut().zip(&self.mul[i][k]) {
                *slot += xi * c;
            }
        }
        self.additive.reduce(&acc)
    }

    /// `g_k · x`
    fn mul_gen_left(&self, k: usize, x: &[BigInt]) -> Elem {
        let mut acc = self.additive.zero();
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (slot, c) in acc.iter_mut().zip(&self.mul[k][j]) {
                *slot += xj * c;
            }
        }
        self.additive.reduce(&acc)
    }

    pub fn additive(&self) -> &AbelianGroup {
        &self.additive
    }

    pub fn rank(&self) -> usize {
        self.additive.rank()
    }

    pub fn order(&self) -> BigInt {
        self.additive.order().expect("finite")
    }

    pub fn order_usize(&self) -> usize {
        self.additive.order_usize().expect("ring orders are small")
    }

    pub fn structure_constants(&self) -> &[Vec<Elem>] {
        &self.mul
    }

    pub fn unit(&self) -> &Elem {
        &self.unit
    }

    pub fn zero(&self) -> Elem {
        self.additive.zero()
    }

    pub fn generator(&self, i: usize) -> Elem {
        self.additive.generator(i)
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Additive exponent, which is the characteristic.
    pub fn characteristic(&self) -> BigInt {
        self.additive.exponent().expect("finite")
    }

    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Elem {
        let mut acc = self.additive.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi * yj;
                for (slot, c) in acc.iter_mut().zip(&self.mul[i][j]) {
                    if !c.is_zero() {
                        *slot += &xy * c;
                    }
                }
            }
        }
        self.additive.reduce(&acc)
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Elem {
        self.additive.add(x, y)
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult_matrix(&self, x: &[BigInt]) -> IntMatrix {
        let cols: Vec<Elem> = (0..self.rank()).map(|j| self.mul(x, &self.generator(j))).collect();
        IntMatrix::from_columns(self.rank(), &cols).expect("square")
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mult_matrix(&self, x: &[BigInt]) -> IntMatrix {
        let cols: Vec<Elem> = (0..self.rank()).map(|j| self.mul(&self.generator(j), x)).collect();
        IntMatrix::from_columns(self.rank(), &cols).expect("square")
    }

    /// Whether `x` commutes with every element.
    pub fn is_central(&self, x: &[BigInt]) -> bool {
        (0..self.rank()).all(|j| {
            let g = self.generator(j);
            self.mul(x, &g) == self.mul(&g, x)
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        self.additive.elements().expect("finite")
    }

    /// The ring with reversed multiplication.
    pub fn opposite(&self) -> FiniteRing {
        let n = self.rank();
        let mul = (0..n)
            .map(|i| (0..n).map(|j| self.mul[j][i].clone()).collect())
            .collect();
        FiniteRing {
            additive: self.additive.clone(),
            mul,
            unit: self.unit.clone(),
            commutative: self.commutative,
        }
    }

    /// Whether the ring is a free module over its prime subring `ℤ/n·1`, i.e.
    /// every invariant factor of the additive group equals the characteristic.
    pub fn is_free_over_prime_subring(&self) -> bool {
        let ch = self.characteristic();
        self.additive.orders().iter().all(|d| *d == ch)
    }
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing(order {}, additive {})", self.order(), self.additive)
    }
}

/// Shared handle to a ring; modules and algebras refer to their ring this way.
pub type Ring = Arc<FiniteRing>;

/// Whether two ring handles denote the same ring.
pub fn same_ring(a: &FiniteRing, b: &FiniteRing) -> bool {
    std::ptr::eq(a, b) || a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn z4_is_valid() {
        let r = FiniteRing::new(AbelianGroup::cyclic(4), vec![vec![vec![b(1)]]], vec![b(1)]).unwrap();
        assert!(r.is_commutative());
        assert_eq!(r.mul(&[b(3)], &[b(3)]), vec![b(1)]);
    }

    #[test]
    fn bad_unit_is_rejected() {
        let err = FiniteRing::new(AbelianGroup::cyclic(4), vec![vec![vec![b(1)]]], vec![b(2)]).unwrap_err();
        assert!(matches!(err, RingError::Axiom { law: "unit", .. }), "{}", err);
    }

    #[test]
    fn non_associative_constants_name_a_triple() {
        // ℤ/2 ⊕ ℤ/2 with g1·g1 = g0 + g1, g1·g0 = g1, g0 unit, g0 g1 = g1: associative;
        // break it by making g1·g1 = g0 while g1 g0 = 0
        let g = AbelianGroup::new(vec![b(2), b(2)]).unwrap();
        let mul = vec![
            vec![vec![b(1), b(0)], vec![b(0), b(1)]],
            vec![vec![b(0), b(0)], vec![b(1), b(0)]],
        ];
        let err = FiniteRing::new(g, mul, vec![b(1), b(0)]).unwrap_err();
        match err {
            RingError::Axiom { generators, .. } => assert!(!generators.is_empty()),
            other => panic!("unexpected {}", other),
        }
    }

    #[test]
    fn crt_basis_change() {
        // ℤ/2 × ℤ/3 written on two idempotents
        let (r, _) = FiniteRing::from_basis(
            &[b(2), b(3)],
            &[
                vec![vec![b(1), b(0)], vec![b(0), b(0)]],
                vec![vec![b(0), b(0)], vec![b(0), b(1)]],
            ],
            &[b(1), b(1)],
        )
        .unwrap();
        assert_eq!(r.additive().orders(), &[b(6)]);
        // a cyclic ring whose unit generates the additive group is ℤ/6
        assert_eq!(r.additive().element_order(r.unit()), Some(b(6)));
        assert!(r.is_commutative());
    }
}
