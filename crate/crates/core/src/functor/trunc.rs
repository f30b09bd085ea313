use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::FunctorError;
use crate::linalg::{AbelianGroup, Elem, GroupMorphism, IntMatrix, Presentation, Sparse};
use crate::module::{ModulePres, Side};
use crate::ring::{Algebra, FiniteRing, Ring, RingMorphism, MAX_RING_ORDER};

/// `A₁ ⊗_ℤ ⋯ ⊗_ℤ A_k` on the basis of tuples of generator indices (first factor
/// most significant), each tuple of order the gcd of its factors' orders.
#[derive(Clone, Debug)]
pub struct WordSpace {
    factors: Vec<AbelianGroup>,
    pres: Presentation,
}

impl WordSpace {
    pub fn new(factors: Vec<AbelianGroup>) -> Self {
        let mut moduli = vec![BigInt::zero()];
        for f in &factors {
            moduli = moduli
                .iter()
                .flat_map(|m| f.orders().iter().map(move |o| m.gcd(o)))
                .collect();
        }
        Self {
            pres: Presentation::from_moduli(&moduli),
            factors,
        }
    }

    pub fn factors(&self) -> &[AbelianGroup] {
        &self.factors
    }

    pub fn group(&self) -> &AbelianGroup {
        self.pres.group()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn num_words(&self) -> usize {
        self.pres.num_generators()
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&t, f)| acc * f.rank() + t)
    }

    pub fn tuple(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.factors.len()];
        for (k, f) in self.factors.iter().enumerate().rev() {
            t[k] = idx % f.rank();
            idx /= f.rank();
        }
        t
    }

    /// Class of `x₁ ⊗ ⋯ ⊗ x_k`.
    pub fn pure(&self, xs: &[&[BigInt]]) -> Elem {
        let mut terms: Vec<(usize, BigInt)> = vec![(0, BigInt::from(1))];
        for (x, f) in xs.iter().zip(&self.factors) {
            let mut next = Vec::new();
            for (idx, c) in &terms {
                for (i, xi) in x.iter().enumerate() {
                    if !xi.is_zero() {
                        next.push((idx * f.rank() + i, c * xi));
                    }
                }
            }
            terms = next;
        }
        self.pres.encode_sparse(&terms)
    }

    /// Class of a sum of words given as sparse tuple-index coefficients.
    pub fn encode_words(&self, coeffs: &Sparse) -> Elem {
        self.pres.encode_sparse(coeffs)
    }

    /// `id ⊗ ⋯ ⊗ f ⊗ ⋯ ⊗ id` with `f` an endomorphism of factor `pos`.
    pub fn act_on_factor(&self, pos: usize, f: &GroupMorphism) -> Result<GroupMorphism, FunctorError> {
        let images: Vec<Elem> = (0..self.num_words())
            .map(|w| {
                let t = self.tuple(w);
                let col = f.matrix().column(t[pos]);
                let mut coeffs: Sparse = Vec::new();
                let mut u = t.clone();
                for (c, v) in col.iter().enumerate() {
                    if !v.is_zero() {
                        u[pos] = c;
                        coeffs.push((self.index(&u), v.clone()));
                    }
                }
                self.pres.encode_sparse(&coeffs)
            })
            .collect();
        Ok(self.pres.morphism_from_generators(self.group(), &images)?)
    }

    /// The left module structure from a left action on the first factor.
    pub fn left_module(&self, ring: &Ring, first: &[GroupMorphism]) -> Result<ModulePres, FunctorError> {
        let left = first.iter().map(|f| self.act_on_factor(0, f)).collect::<Result<Vec<_>, _>>()?;
        Ok(ModulePres::from_parts(ring.clone(), Side::Left, self.group().clone(), left, vec![]))
    }
}

/// `R⟨M⟩` truncated above degree `D`: degree `n` is `M^{⊗n} ⊗_ℤ R`, and
/// `(m₁⋯mₙ·r)(m′₁⋯m′ₖ·r′) = m₁⋯mₙ·(r m′₁)·m′₂⋯m′ₖ·r′`.
#[derive(Clone, Debug)]
pub struct TruncTensorAlgebra {
    base: ModulePres,
    degree_bound: usize,
    pieces: Vec<WordSpace>,
    offsets: Vec<usize>,
    sum: Presentation,
    bimodule: ModulePres,
}

impl TruncTensorAlgebra {
    pub fn new(base: &ModulePres, degree_bound: usize) -> Result<Self, FunctorError> {
        if degree_bound < 1 {
            return Err(FunctorError::Input("degree bound must be at least 1".into()));
        }
        let base = base.as_side(Side::Left)?;
        let ring = base.ring().clone();
        let pieces: Vec<WordSpace> = (0..=degree_bound)
            .map(|n| {
                let mut f = vec![base.additive().clone(); n];
                f.push(ring.additive().clone());
                WordSpace::new(f)
            })
            .collect();
        let mut offsets = Vec::new();
        let mut moduli = Vec::new();
        for p in &pieces {
            offsets.push(moduli.len());
            moduli.extend(p.group().orders().iter().cloned());
        }
        let sum = Presentation::from_moduli(&moduli);
        let reg_l = ModulePres::regular(ring.clone(), Side::Left);
        let reg_r = ModulePres::regular(ring.clone(), Side::Right);
        let g = sum.group().clone();
        let block = |maps: Vec<GroupMorphism>| -> Result<GroupMorphism, FunctorError> {
            let total = moduli.len();
            let mut big = IntMatrix::zeros(total, total);
            for (k, m) in maps.iter().enumerate() {
                let off = offsets[k];
                for i in 0..m.matrix().rows() {
                    for j in 0..m.matrix().cols() {
                        big[(off + i, off + j)] = m.matrix()[(i, j)].clone();
                    }
                }
            }
            let mat = sum.to_canonical_matrix().mul(&big)?.mul(sum.lift_matrix())?;
            Ok(GroupMorphism::new(g.clone(), g.clone(), mat)?)
        };
        let mut left = Vec::new();
        let mut right = Vec::new();
        for k in 0..ring.rank() {
            let l = pieces
                .iter()
                .enumerate()
                .map(|(n, p)| {
                    let f = if n == 0 { &reg_l.left_actions()[k] } else { &base.left_actions()[k] };
                    p.act_on_factor(0, f)
                })
                .collect::<Result<Vec<_>, _>>()?;
            left.push(block(l)?);
            let r = pieces
                .iter()
                .enumerate()
                .map(|(n, p)| p.act_on_factor(n, &reg_r.right_actions()[k]))
                .collect::<Result<Vec<_>, _>>()?;
            right.push(block(r)?);
        }
        let bimodule = ModulePres::from_parts(ring, Side::Bi, g, left, right);
        debug_assert!(bimodule.check().is_ok());
        Ok(Self {
            base,
            degree_bound,
            pieces,
            offsets,
            sum,
            bimodule,
        })
    }

    pub fn base(&self) -> &ModulePres {
        &self.base
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn piece(&self, n: usize) -> &WordSpace {
        &self.pieces[n]
    }

    /// The carrier as an `R`-bimodule: left action on the first factor, right
    /// action on the trailing ring factor.
    pub fn bimodule(&self) -> &ModulePres {
        &self.bimodule
    }

    pub fn group(&self) -> &AbelianGroup {
        self.sum.group()
    }

    /// Includes an element of the degree-`n` piece.
    pub fn embed(&self, n: usize, x: &[BigInt]) -> Elem {
        let off = self.offsets[n];
        let coeffs: Sparse = x
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (off + i, v.clone()))
            .collect();
        self.sum.encode_sparse(&coeffs)
    }

    /// Degree-`n` component of a carrier element.
    pub fn component(&self, n: usize, x: &[BigInt]) -> Elem {
        let lifted = self.sum.lift(x);
        let off = self.offsets[n];
        let len = self.pieces[n].group().rank();
        self.pieces[n].group().reduce(&lifted[off..off + len])
    }

    /// `m ↦ m ⊗ 1` into degree one.
    pub fn canonical_inclusion(&self) -> Result<GroupMorphism, FunctorError> {
        let unit = self.base.ring().unit().clone();
        let p = &self.pieces[1];
        let images: Vec<Elem> = (0..self.base.rank())
            .map(|b| self.embed(1, &p.pure(&[&self.base.additive().generator(b), &unit])))
            .collect();
        Ok(GroupMorphism::from_images(self.base.additive().clone(), self.group().clone(), &images)?)
    }

    /// Product of two words (M-indices then a ring generator index), in the carrier.
    fn word_product(&self, w: &[usize], l: usize, w2: &[usize], l2: usize) -> Elem {
        let ring = self.base.ring();
        let n = w.len() + w2.len();
        if n > self.degree_bound {
            return self.group().zero();
        }
        let p = &self.pieces[n];
        let mut coeffs: Sparse = Vec::new();
        if w2.is_empty() {
            let prod = ring.mul(&ring.generator(l), &ring.generator(l2));
            for (k, c) in prod.iter().enumerate() {
                if !c.is_zero() {
                    let mut t = w.to_vec();
                    t.push(k);
                    coeffs.push((p.index(&t), c.clone()));
                }
            }
        } else {
            let col = self.base.left_actions()[l].matrix().column(w2[0]);
            for (c, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    let mut t = w.to_vec();
                    t.push(c);
                    t.extend_from_slice(&w2[1..]);
                    t.push(l2);
                    coeffs.push((p.index(&t), v.clone()));
                }
            }
        }
        self.embed(n, &p.encode_words(&coeffs))
    }

    /// The carrier with its multiplication, as an algebra over the base ring.
    /// Intended for small instances; the structure constants are validated.
    pub fn to_algebra(&self) -> Result<Algebra, FunctorError> {
        let rank = self.group().rank();
        if self.group().order().map(|o| o > BigInt::from(MAX_RING_ORDER)).unwrap_or(true) {
            return Err(FunctorError::Input(format!("truncated tensor algebra of rank {} is too large to materialize", rank)));
        }
        // canonical generator → words with coefficients
        let words: Vec<Vec<(Vec<usize>, usize, BigInt)>> = (0..rank)
            .map(|c| {
                let lifted = self.sum.lift(&self.group().generator(c));
                let mut out = Vec::new();
                for (n, p) in self.pieces.iter().enumerate() {
                    let inner = p.presentation().lift(&lifted[self.offsets[n]..self.offsets[n] + p.group().rank()]);
                    for (idx, v) in inner.iter().enumerate() {
                        if !v.is_zero() {
                            let t = p.tuple(idx);
                            let (l, w) = t.split_last().expect("ring factor");
                            out.push((w.to_vec(), *l, v.clone()));
                        }
                    }
                }
                out
            })
            .collect();
        let mul: Vec<Vec<Elem>> = (0..rank)
            .map(|a| {
                (0..rank)
                    .map(|b| {
                        let g = self.group();
                        let mut acc = g.zero();
                        for (w, l, c) in &words[a] {
                            for (w2, l2, c2) in &words[b] {
                                let prod = self.word_product(w, *l, w2, *l2);
                                acc = g.add(&acc, &g.scale(&(c * c2), &prod));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let ring = self.base.ring().clone();
        let unit = self.embed(0, &self.pieces[0].pure(&[ring.unit()]));
        let carrier: Ring = std::sync::Arc::new(FiniteRing::new(self.group().clone(), mul, unit)?);
        let images: Vec<Elem> = (0..ring.rank())
            .map(|k| self.embed(0, &self.pieces[0].pure(&[&ring.generator(k)])))
            .collect();
        let sigma = GroupMorphism::from_images(ring.additive().clone(), carrier.additive().clone(), &images)?;
        let sigma = RingMorphism::new(ring, carrier, sigma)?;
        Ok(Algebra::new(format!("T({}, {})", self.base.additive(), self.degree_bound), sigma))
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn word_space_gcd_orders() {
        let w = WordSpace::new(vec![AbelianGroup::cyclic(2), AbelianGroup::cyclic(4), AbelianGroup::cyclic(4)]);
        assert_eq!(w.group().orders(), &[b(2)]);
        assert_eq!(w.tuple(w.index(&[0, 0, 0])), vec![0, 0, 0]);
    }

    #[test]
    fn truncated_algebra_is_a_ring() {
        let r: Ring = Arc::new(FiniteRing::cyclic(4).unwrap());
        let m = ModulePres::regular(r.clone(), Side::Left).quotient(&[vec![b(2)]]).0;
        let t = TruncTensorAlgebra::new(&m, 2).unwrap();
        // degree 0: ℤ/4, degree 1: ℤ/2, degree 2: ℤ/2
        assert_eq!(t.group().order().unwrap(), b(16));
        let alg = t.to_algebra().unwrap();
        assert_eq!(alg.ring().order(), b(16));
        t.bimodule().check().unwrap();
        assert!(t.canonical_inclusion().unwrap().is_injective());
    }

    #[test]
    fn truncated_algebra_over_triangular_ring() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let r: Ring = Arc::new(FiniteRing::triangular_ring(&f2, 2).unwrap());
        let m = r
            .left_ideals()
            .unwrap()
            .iter()
            .map(|i| ModulePres::cyclic(r.clone(), i))
            .filter(|m| !m.is_zero())
            .min_by_key(|m| m.additive().order())
            .unwrap();
        assert_eq!(m.additive().order(), Some(b(2)));
        let t = TruncTensorAlgebra::new(&m, 2).unwrap();
        t.bimodule().check().unwrap();
        let alg = t.to_algebra().unwrap();
        assert_eq!(alg.ring().order(), t.group().order().unwrap());
    }
}
