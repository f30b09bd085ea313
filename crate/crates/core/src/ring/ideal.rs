//! Exhaustive enumeration of one- and two-sided ideals of small rings.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::{FiniteRing, RingError};
use crate::linalg::Elem;

/// Rings above this order are refused by ideal enumeration unless a larger
/// bound is passed explicitly.
pub const DEFAULT_ENUMERATION_BOUND: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealSide {
    Left,
    Right,
    TwoSided,
}

/// An ideal as a set of ring elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    side: IdealSide,
    members: Vec<u64>,
    elements: Vec<Elem>,
}

impl Ideal {
    pub fn side(&self) -> IdealSide {
        self.side
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// All members, in the ring's enumeration order.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.members[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.members.iter().zip(&other.members).all(|(a, b)| a & !b == 0)
    }
}

struct Tables {
    elems: Vec<Elem>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl Tables {
    fn new(r: &FiniteRing) -> Self {
        let g = r.additive();
        let elems: Vec<Elem> = r.elements().collect();
        let idx = |x: &Elem| g.index_of(x).expect("element of the ring");
        let add = elems
            .iter()
            .map(|x| elems.iter().map(|y| idx(&g.add(x, y))).collect())
            .collect();
        let mul = elems
            .iter()
            .map(|x| elems.iter().map(|y| idx(&r.mul(x, y))).collect())
            .collect();
        Self { elems, add, mul }
    }

    fn words(&self) -> usize {
        self.elems.len().div_ceil(64)
    }

    /// Additive closure of a set of indices (finite, so closure under + suffices).
    fn additive_closure(&self, seeds: &[usize]) -> Vec<u64> {
        let mut bits = vec![0u64; self.words()];
        let mut stack = vec![0usize];
        stack.extend_from_slice(seeds);
        let set = |bits: &mut Vec<u64>, i: usize| {
            let was = bits[i / 64] >> (i % 64) & 1 == 1;
            bits[i / 64] |= 1 << (i % 64);
            !was
        };
        let mut members = Vec::new();
        while let Some(x) = stack.pop() {
            if set(&mut bits, x) {
                members.push(x);
                for &m in &members.clone() {
                    stack.push(self.add[x][m]);
                }
                for &s in seeds {
                    stack.push(self.add[x][s]);
                }
            }
        }
        bits
    }

    fn principal(&self, x: usize, side: IdealSide) -> Vec<u64> {
        let n = self.elems.len();
        let seeds: Vec<usize> = match side {
            IdealSide::Right => (0..n).map(|r| self.mul[x][r]).collect(),
            IdealSide::Left => (0..n).map(|r| self.mul[r][x]).collect(),
            IdealSide::TwoSided => (0..n)
                .flat_map(|r| (0..n).map(move |s| (r, s)))
                .map(|(r, s)| self.mul[self.mul[r][x]][s])
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        };
        self.additive_closure(&seeds)
    }

    fn sum(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.elems.len();
        let ia: Vec<usize> = (0..n).filter(|&i| a[i / 64] >> (i % 64) & 1 == 1).collect();
        let ib: Vec<usize> = (0..n).filter(|&i| b[i / 64] >> (i % 64) & 1 == 1).collect();
        let mut bits = vec![0u64; self.words()];
        for &x in &ia {
            for &y in &ib {
                let s = self.add[x][y];
                bits[s / 64] |= 1 << (s % 64);
            }
        }
        bits
    }
}

impl FiniteRing {
    /// Every ideal of the given side, sorted by (order, membership bitset).
    /// Refuses rings larger than `bound`.
    pub fn ideals(&self, side: IdealSide, bound: usize) -> Result<Vec<Ideal>, RingError> {
        if self.order() > BigInt::from(bound) {
            return Err(RingError::BoundExceeded {
                order: self.order(),
                bound,
            });
        }
        let t = Tables::new(self);
        let n = t.elems.len();
        // every ideal is a finite sum of principal ideals
        let principals: BTreeSet<Vec<u64>> = (0..n).map(|x| t.principal(x, side)).collect();
        let mut all: BTreeSet<Vec<u64>> = principals.clone();
        let mut frontier: Vec<Vec<u64>> = principals.iter().cloned().collect();
        while let Some(i) = frontier.pop() {
            for p in &principals {
                let s = t.sum(&i, p);
                if all.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
        let popcount = |b: &Vec<u64>| b.iter().map(|w| w.count_ones()).sum::<u32>();
        let mut sorted: Vec<Vec<u64>> = all.into_iter().collect();
        sorted.sort_by(|a, b| popcount(a).cmp(&popcount(b)).then_with(|| a.cmp(b)));
        Ok(sorted
            .into_iter()
            .map(|members| {
                let elements = (0..n)
                    .filter(|&i| members[i / 64] >> (i % 64) & 1 == 1)
                    .map(|i| t.elems[i].clone())
                    .collect();
                Ideal {
                    side,
                    members,
                    elements,
                }
            })
            .collect())
    }

    pub fn right_ideals(&self) -> Result<Vec<Ideal>, RingError> {
        self.ideals(IdealSide::Right, DEFAULT_ENUMERATION_BOUND)
    }

    pub fn left_ideals(&self) -> Result<Vec<Ideal>, RingError> {
        self.ideals(IdealSide::Left, DEFAULT_ENUMERATION_BOUND)
    }

    pub fn two_sided_ideals(&self, bound: usize) -> Result<Vec<Ideal>, RingError> {
        self.ideals(IdealSide::TwoSided, bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: all subsets closed under + and the side's multiplication.
    fn brute_force(r: &FiniteRing, side: IdealSide) -> usize {
        let t = Tables::new(r);
        let n = t.elems.len();
        assert!(n <= 16);
        let mut count = 0;
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let has = |i: usize| mask >> i & 1 == 1;
            let ok = (0..n).filter(|&i| has(i)).all(|x| {
                (0..n).filter(|&i| has(i)).all(|y| has(t.add[x][y]))
                    && (0..n).all(|s| match side {
                        IdealSide::Right => has(t.mul[x][s]),
                        IdealSide::Left => has(t.mul[s][x]),
                        IdealSide::TwoSided => has(t.mul[x][s]) && has(t.mul[s][x]),
                    })
            });
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn ideals_of_z4() {
        let z4 = FiniteRing::cyclic(4).unwrap();
        let ids = z4.right_ideals().unwrap();
        let orders: Vec<usize> = ids.iter().map(Ideal::order).collect();
        assert_eq!(orders, vec![1, 2, 4]);
    }

    #[test]
    fn field_has_two_ideals() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        assert_eq!(f2.right_ideals().unwrap().len(), 2);
    }

    #[test]
    fn triangular_counts_match_brute_force() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let t = FiniteRing::triangular_ring(&f2, 2).unwrap();
        for side in [IdealSide::Left, IdealSide::Right, IdealSide::TwoSided] {
            let got = t.ideals(side, 64).unwrap().len();
            assert_eq!(got, brute_force(&t, side), "{:?}", side);
        }
        // 0, ⟨e12⟩, ⟨e22⟩, ⟨e12+e22⟩, ⟨e12,e22⟩, ⟨e11,e12⟩, R
        assert_eq!(t.right_ideals().unwrap().len(), 7);
    }

    #[test]
    fn oversized_ring_is_refused() {
        let z4 = FiniteRing::cyclic(4).unwrap();
        let m = FiniteRing::matrix_ring(&z4, 2).unwrap();
        assert!(matches!(m.right_ideals(), Err(RingError::BoundExceeded { .. })));
    }
}
