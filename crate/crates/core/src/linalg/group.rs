use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{reduce_mod, IntMatrix, LinalgError};

/// An element of an [`AbelianGroup`]: one residue per invariant factor.
pub type Elem = Vec<BigInt>;

/// Finitely generated abelian group `ℤ/d₁ ⊕ … ⊕ ℤ/dₖ` in invariant-factor form.
///
/// Every nonzero order is at least 2 and divides the next nonzero order; zero
/// orders stand for copies of ℤ and come last.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<BigInt>) -> Result<Self, LinalgError> {
        let mut seen_free = false;
        for (i, d) in orders.iter().enumerate() {
            if d.is_negative() || d.is_one() {
                return Err(LinalgError::InvalidGroup(format!(
                    "order {} at position {} is not 0 or at least 2",
                    d, i
                )));
            }
            if d.is_zero() {
                seen_free = true;
            } else if seen_free {
                return Err(LinalgError::InvalidGroup("free part must come last".into()));
            }
        }
        for w in orders.windows(2) {
            if !w[1].is_zero() && !w[1].is_multiple_of(&w[0]) {
                return Err(LinalgError::InvalidGroup(format!(
                    "{} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { orders })
    }

    pub fn trivial() -> Self {
        Self { orders: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            1 => Self::trivial(),
            _ => Self {
                orders: vec![BigInt::from(n)],
            },
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            orders: vec![BigInt::zero(); rank],
        }
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// Number of cyclic summands (coordinates of an element).
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(|d| !d.is_zero())
    }

    /// Cardinality, or `None` for an infinite group.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.orders.iter().product())
    }

    /// Cardinality as a machine integer, if finite and small enough.
    pub fn order_usize(&self) -> Option<usize> {
        self.order().and_then(|o| o.to_usize())
    }

    /// Exponent of a finite group (the largest invariant factor).
    pub fn exponent(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.orders.last().cloned().unwrap_or_else(BigInt::one))
    }

    pub fn zero(&self) -> Elem {
        vec![BigInt::zero(); self.rank()]
    }

    /// Unit vector of the `i`-th canonical generator.
    pub fn generator(&self, i: usize) -> Elem {
        let mut e = self.zero();
        e[i] = BigInt::one();
        e
    }

    pub fn reduce(&self, x: &[BigInt]) -> Elem {
        debug_assert_eq!(x.len(), self.rank());
        x.iter()
            .zip(&self.orders)
            .map(|(v, d)| reduce_mod(v, d))
            .collect()
    }

    /// Whether `x` is a canonical residue vector of this group.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        x.len() == self.rank()
            && x
                .iter()
                .zip(&self.orders)
                .all(|(v, d)| d.is_zero() || (!v.is_negative() && v < d))
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Elem {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), d)| reduce_mod(&(a + b), d))
            .collect()
    }

    pub fn sub(&self, x: &[BigInt], y: &[BigInt]) -> Elem {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), d)| reduce_mod(&(a - b), d))
            .collect()
    }

    pub fn neg(&self, x: &[BigInt]) -> Elem {
        x.iter()
            .zip(&self.orders)
            .map(|(a, d)| reduce_mod(&-a, d))
            .collect()
    }

    pub fn scale(&self, k: &BigInt, x: &[BigInt]) -> Elem {
        x.iter()
            .zip(&self.orders)
            .map(|(a, d)| reduce_mod(&(k * a), d))
            .collect()
    }

    pub fn is_zero_elem(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    /// Order of an element, `None` if it has infinite order.
    pub fn element_order(&self, x: &[BigInt]) -> Option<BigInt> {
        let mut acc = BigInt::one();
        for (v, d) in self.reduce(x).iter().zip(&self.orders) {
            if v.is_zero() {
                continue;
            }
            if d.is_zero() {
                return None;
            }
            acc = acc.lcm(&(d / v.gcd(d)));
        }
        Some(acc)
    }

    /// Iterates over all elements in mixed-radix order, last coordinate fastest.
    pub fn elements(&self) -> Result<ElementIter, LinalgError> {
        if !self.is_finite() {
            return Err(LinalgError::Infinite);
        }
        Ok(ElementIter {
            orders: self.orders.clone(),
            next: Some(self.zero()),
        })
    }

    /// Position of `x` in the enumeration order of [`AbelianGroup::elements`].
    pub fn index_of(&self, x: &[BigInt]) -> Option<usize> {
        if !self.is_finite() {
            return None;
        }
        let mut idx = 0usize;
        for (v, d) in self.reduce(x).iter().zip(&self.orders) {
            idx = idx.checked_mul(d.to_usize()?)?.checked_add(v.to_usize()?)?;
        }
        Some(idx)
    }

    /// Inverse of [`AbelianGroup::index_of`].
    pub fn element_at(&self, mut idx: usize) -> Option<Elem> {
        if idx >= self.order_usize()? {
            return None;
        }
        let mut out = self.zero();
        for (slot, d) in out.iter_mut().zip(&self.orders).rev() {
            let d = d.to_usize()?;
            *slot = BigInt::from(idx % d);
            idx /= d;
        }
        Some(out)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        for (i, d) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊕ ")?;
            }
            if d.is_zero() {
                write!(f, "ℤ")?;
            } else {
                write!(f, "ℤ/{}", d)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({})", self)
    }
}

/// Mixed-radix enumeration of a finite group.
pub struct ElementIter {
    orders: Vec<BigInt>,
    next: Option<Elem>,
}

impl Iterator for ElementIter {
    type Item = Elem;

    fn next(&mut self) -> Option<Elem> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carry = true;
        for (v, d) in succ.iter_mut().zip(&self.orders).rev() {
            *v += 1;
            if *v < *d {
                carry = false;
                break;
            }
            *v = BigInt::zero();
        }
        if !carry {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// Homomorphism between abelian groups; column `i` of the matrix is the image
/// of the `i`-th source generator in target coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupMorphism {
    source: AbelianGroup,
    target: AbelianGroup,
    matrix: IntMatrix,
}

impl GroupMorphism {
    /// Builds a morphism, reducing entries modulo the target orders and checking
    /// that every source relation maps to zero.
    pub fn new(
        source: AbelianGroup,
        target: AbelianGroup,
        matrix: IntMatrix,
    ) -> Result<Self, LinalgError> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(LinalgError::Shape(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            )));
        }
        let mut matrix = matrix;
        for j in 0..matrix.rows() {
            let d = &target.orders[j];
            if d.is_zero() {
                continue;
            }
            for i in 0..matrix.cols() {
                let v = reduce_mod(&matrix[(j, i)], d);
                matrix[(j, i)] = v;
            }
        }
        for (i, a) in source.orders.iter().enumerate() {
            for (j, b) in target.orders.iter().enumerate() {
                let x = &matrix[(j, i)];
                if x.is_zero() {
                    continue;
                }
                let ok = if a.is_zero() {
                    true
                } else {
                    !b.is_zero() && (a * x).is_multiple_of(b)
                };
                if !ok {
                    return Err(LinalgError::IllDefined(format!(
                        "generator {} of order {} is sent to a vector with entry {} in coordinate of order {}",
                        i, a, x, b
                    )));
                }
            }
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    /// Builds the morphism sending source generator `i` to `images[i]`.
    pub fn from_images(
        source: AbelianGroup,
        target: AbelianGroup,
        images: &[Elem],
    ) -> Result<Self, LinalgError> {
        if images.len() != source.rank() {
            return Err(LinalgError::Shape("one image per source generator".into()));
        }
        let m = IntMatrix::from_columns(target.rank(), images)?;
        Self::new(source, target, m)
    }

    pub fn zero(source: AbelianGroup, target: AbelianGroup) -> Self {
        let matrix = IntMatrix::zeros(target.rank(), source.rank());
        Self {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(g: AbelianGroup) -> Self {
        let matrix = IntMatrix::identity(g.rank());
        Self {
            source: g.clone(),
            target: g,
            matrix,
        }
    }

    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Elem {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GroupMorphism) -> Result<GroupMorphism, LinalgError> {
        if first.target != self.source {
            return Err(LinalgError::Shape("composition of non-matching maps".into()));
        }
        let m = self.matrix.mul(&first.matrix)?;
        GroupMorphism::new(first.source.clone(), self.target.clone(), m)
    }

    fn same_shape(&self, other: &GroupMorphism) -> Result<(), LinalgError> {
        if self.source != other.source || self.target != other.target {
            return Err(LinalgError::Shape("maps between different groups".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupMorphism) -> Result<GroupMorphism, LinalgError> {
        self.same_shape(other)?;
        let data = self
            .matrix
            .entries()
            .iter()
            .zip(other.matrix.entries())
            .map(|(a, b)| a + b)
            .collect();
        let m = IntMatrix::new(self.matrix.rows(), self.matrix.cols(), data)?;
        GroupMorphism::new(self.source.clone(), self.target.clone(), m)
    }

    pub fn sub(&self, other: &GroupMorphism) -> Result<GroupMorphism, LinalgError> {
        self.same_shape(other)?;
        let data = self
            .matrix
            .entries()
            .iter()
            .zip(other.matrix.entries())
            .map(|(a, b)| a - b)
            .collect();
        let m = IntMatrix::new(self.matrix.rows(), self.matrix.cols(), data)?;
        GroupMorphism::new(self.source.clone(), self.target.clone(), m)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Images of the source generators.
    pub fn images(&self) -> Vec<Elem> {
        (0..self.matrix.cols()).map(|i| self.matrix.column(i)).collect()
    }
}

impl fmt::Debug for GroupMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} by {}", self.source, self.target, self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(orders: &[u64]) -> AbelianGroup {
        AbelianGroup::new(orders.iter().map(|&o| BigInt::from(o)).collect()).unwrap()
    }

    fn e(v: &[i64]) -> Elem {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn invalid_orders_rejected() {
        assert!(AbelianGroup::new(vec![BigInt::from(2), BigInt::from(3)]).is_err());
        assert!(AbelianGroup::new(vec![BigInt::from(1)]).is_err());
        assert!(AbelianGroup::new(vec![BigInt::from(0), BigInt::from(2)]).is_err());
    }

    #[test]
    fn enumeration_order_and_indexing() {
        let group = g(&[2, 4]);
        let all: Vec<Elem> = group.elements().unwrap().collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[1], e(&[0, 1]));
        assert_eq!(all[4], e(&[1, 0]));
        for (i, x) in all.iter().enumerate() {
            assert_eq!(group.index_of(x), Some(i));
            assert_eq!(group.element_at(i).as_ref(), Some(x));
        }
        assert_eq!(AbelianGroup::trivial().elements().unwrap().count(), 1);
    }

    #[test]
    fn display() {
        assert_eq!(g(&[2, 4]).to_string(), "ℤ/2 ⊕ ℤ/4");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
    }

    #[test]
    fn ill_defined_map_rejected() {
        let m = IntMatrix::from_rows(&[vec![1]]).unwrap();
        assert!(GroupMorphism::new(g(&[2]), g(&[4]), m.clone()).is_err());
        let two = IntMatrix::from_rows(&[vec![2]]).unwrap();
        assert!(GroupMorphism::new(g(&[2]), g(&[4]), two).is_ok());
        assert!(GroupMorphism::new(g(&[4]), g(&[2]), m).is_ok());
    }

    #[test]
    fn entries_are_normalized() {
        let m = IntMatrix::from_rows(&[vec![-3]]).unwrap();
        let f = GroupMorphism::new(g(&[4]), g(&[4]), m).unwrap();
        assert_eq!(f.matrix()[(0, 0)], BigInt::from(1));
        assert_eq!(f.apply(&e(&[3])), e(&[3]));
    }
}
