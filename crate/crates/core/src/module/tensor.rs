//! Tensor products over the ring and over the integers, and base change.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{ModuleError, ModulePres, Side};
use crate::linalg::{AbelianGroup, Elem, GroupMorphism, Presentation, Sparse};
use crate::ring::{same_ring, Algebra, Ring};

/// `N ⊗_R M` for a right module `N` and a left module `M`, presented on the
/// pure tensors of generators `nₐ ⊗ m_b`.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    right: ModulePres,
    left: ModulePres,
    pres: Presentation,
}

impl TensorProduct {
    pub fn new(n: &ModulePres, m: &ModulePres) -> Result<Self, ModuleError> {
        if !n.side().has_right() || !m.side().has_left() {
            return Err(ModuleError::Side("need a right module tensored with a left module".into()));
        }
        if !same_ring(n.ring(), m.ring()) {
            return Err(ModuleError::RingMismatch);
        }
        let (rn, rm) = (n.rank(), m.rank());
        let idx = |a: usize, b: usize| a * rm + b;
        let mut rels: Vec<Sparse> = Vec::new();
        for a in 0..rn {
            for b in 0..rm {
                let d = n.additive().orders()[a].gcd(&m.additive().orders()[b]);
                if !d.is_zero() {
                    rels.push(vec![(idx(a, b), d)]);
                }
            }
        }
        for (na, mb) in n.right_actions().iter().zip(m.left_actions()) {
            let (na, mb) = (na.matrix(), mb.matrix());
            for a in 0..rn {
                for b in 0..rm {
                    // (nₐ·g) ⊗ m_b − nₐ ⊗ (g·m_b)
                    let mut rel: Sparse = Vec::new();
                    for c in 0..rn {
                        let v = &na[(c, a)];
                        if !v.is_zero() {
                            rel.push((idx(c, b), v.clone()));
                        }
                    }
                    for d in 0..rm {
                        let v = &mb[(d, b)];
                        if !v.is_zero() {
                            rel.push((idx(a, d), -v));
                        }
                    }
                    rels.push(rel);
                }
            }
        }
        let pres = Presentation::new(rn * rm, rels)?;
        Ok(Self {
            right: n.clone(),
            left: m.clone(),
            pres,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        self.pres.group()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn right_factor(&self) -> &ModulePres {
        &self.right
    }

    pub fn left_factor(&self) -> &ModulePres {
        &self.left
    }

    /// Class of `nₐ ⊗ m_b`.
    pub fn generator(&self, a: usize, b: usize) -> Elem {
        self.pres.generator(a * self.left.rank() + b)
    }

    /// Class of `x ⊗ y`.
    pub fn pure(&self, x: &[BigInt], y: &[BigInt]) -> Elem {
        let rm = self.left.rank();
        let mut coeffs: Sparse = Vec::new();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if !yb.is_zero() {
                    coeffs.push((a * rm + b, xa * yb));
                }
            }
        }
        self.pres.encode_sparse(&coeffs)
    }

    /// `f ⊗ g` into another tensor product.
    pub fn induced(&self, f: &GroupMorphism, g: &GroupMorphism, target: &TensorProduct) -> Result<GroupMorphism, ModuleError> {
        let fi = f.images();
        let gi = g.images();
        let mut images = Vec::with_capacity(fi.len() * gi.len());
        for x in &fi {
            for y in &gi {
                images.push(target.pure(x, y));
            }
        }
        Ok(self.pres.morphism_from_generators(target.group(), &images)?)
    }

    /// `φ ⊗ id` for an additive endomorphism `φ` of `N` commuting with the right action.
    pub fn endo_on_right_factor(&self, phi: &GroupMorphism) -> Result<GroupMorphism, ModuleError> {
        let id = GroupMorphism::identity(self.left.additive().clone());
        self.induced(phi, &id, self)
    }

    /// `id ⊗ ψ` for an additive endomorphism `ψ` of `M` commuting with the left action.
    pub fn endo_on_left_factor(&self, psi: &GroupMorphism) -> Result<GroupMorphism, ModuleError> {
        let id = GroupMorphism::identity(self.right.additive().clone());
        self.induced(&id, psi, self)
    }

    /// The module structure inherited from a left action on `N` and/or a right
    /// action on `M`; `None` when neither factor is a bimodule.
    pub fn module(&self) -> Result<Option<ModulePres>, ModuleError> {
        let l = self.right.side() == Side::Bi;
        let r = self.left.side() == Side::Bi;
        let side = match (l, r) {
            (true, true) => Side::Bi,
            (true, false) => Side::Left,
            (false, true) => Side::Right,
            (false, false) => return Ok(None),
        };
        let left = if l {
            self.right.left_actions().iter().map(|f| self.endo_on_right_factor(f)).collect::<Result<Vec<_>, _>>()?
        } else {
            vec![]
        };
        let right = if r {
            self.left.right_actions().iter().map(|f| self.endo_on_left_factor(f)).collect::<Result<Vec<_>, _>>()?
        } else {
            vec![]
        };
        Ok(Some(ModulePres::from_parts(self.left.ring().clone(), side, self.group().clone(), left, right)))
    }
}

pub fn tensor_over_r(n: &ModulePres, m: &ModulePres) -> Result<TensorProduct, ModuleError> {
    TensorProduct::new(n, m)
}

/// `A ⊗_ℤ B` for abelian groups.
#[derive(Clone, Debug)]
pub struct ZTensor {
    a: AbelianGroup,
    b: AbelianGroup,
    pres: Presentation,
}

impl ZTensor {
    pub fn new(a: &AbelianGroup, b: &AbelianGroup) -> Self {
        let moduli: Vec<BigInt> = a
            .orders()
            .iter()
            .flat_map(|x| b.orders().iter().map(move |y| x.gcd(y)))
            .collect();
        Self {
            a: a.clone(),
            b: b.clone(),
            pres: Presentation::from_moduli(&moduli),
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        self.pres.group()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn left_group(&self) -> &AbelianGroup {
        &self.a
    }

    pub fn right_group(&self) -> &AbelianGroup {
        &self.b
    }

    pub fn generator(&self, i: usize, j: usize) -> Elem {
        self.pres.generator(i * self.b.rank() + j)
    }

    pub fn pure(&self, x: &[BigInt], y: &[BigInt]) -> Elem {
        let rb = self.b.rank();
        let mut coeffs: Sparse = Vec::new();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    coeffs.push((i * rb + j, xi * yj));
                }
            }
        }
        self.pres.encode_sparse(&coeffs)
    }

    /// `f ⊗ g` into another integral tensor product.
    pub fn induced(&self, f: &GroupMorphism, g: &GroupMorphism, target: &ZTensor) -> Result<GroupMorphism, ModuleError> {
        let fi = f.images();
        let gi = g.images();
        let mut images = Vec::with_capacity(self.a.rank() * self.b.rank());
        for x in &fi {
            for y in &gi {
                images.push(target.pure(x, y));
            }
        }
        Ok(self.pres.morphism_from_generators(target.group(), &images)?)
    }

    /// The map out of the tensor product sending `gᵢ ⊗ hⱼ` to `images[i·rank(B) + j]`.
    pub fn from_generator_images(&self, target: &AbelianGroup, images: &[Elem]) -> Result<GroupMorphism, ModuleError> {
        Ok(self.pres.morphism_from_generators(target, images)?)
    }
}

/// `A ⊗_ℤ B` for modules over the same ring, with the left action of `A` and the
/// right action of `B` carried over.
pub fn tensor_over_z(a: &ModulePres, b: &ModulePres) -> Result<(ModulePres, ZTensor), ModuleError> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(ModuleError::RingMismatch);
    }
    let t = ZTensor::new(a.additive(), b.additive());
    let l = a.side().has_left();
    let r = b.side().has_right();
    let side = match (l, r) {
        (true, true) => Side::Bi,
        (true, false) => Side::Left,
        (false, true) => Side::Right,
        (false, false) => return Err(ModuleError::Side("no outer action survives".into())),
    };
    let ida = GroupMorphism::identity(a.additive().clone());
    let idb = GroupMorphism::identity(b.additive().clone());
    let left = if l {
        a.left_actions().iter().map(|f| t.induced(f, &idb, &t)).collect::<Result<Vec<_>, _>>()?
    } else {
        vec![]
    };
    let right = if r {
        b.right_actions().iter().map(|g| t.induced(&ida, g, &t)).collect::<Result<Vec<_>, _>>()?
    } else {
        vec![]
    };
    let m = ModulePres::from_parts(a.ring().clone(), side, t.group().clone(), left, right);
    debug_assert!(m.check().is_ok());
    Ok((m, t))
}

/// `S ⊗_R M` as a left module over `S`.
#[derive(Clone, Debug)]
pub struct BaseChange {
    algebra: Algebra,
    s_right: ModulePres,
    tensor: TensorProduct,
    module: ModulePres,
}

impl BaseChange {
    pub fn module(&self) -> &ModulePres {
        &self.module
    }

    pub fn tensor(&self) -> &TensorProduct {
        &self.tensor
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// `S` as a right module over the base ring through the structure map.
    pub fn algebra_as_right_module(&self) -> &ModulePres {
        &self.s_right
    }

    /// Class of `s ⊗ m`.
    pub fn pure(&self, s: &[BigInt], m: &[BigInt]) -> Elem {
        self.tensor.pure(s, m)
    }
}

/// `S` as a right module over the base ring of `s` through its structure map.
pub fn algebra_as_right_module(s: &Algebra) -> ModulePres {
    let ring: &Ring = s.ring();
    let base = s.base_ring();
    let g = ring.additive().clone();
    let right = (0..base.rank())
        .map(|k| {
            let x = s.structure_image(&base.generator(k));
            GroupMorphism::new(g.clone(), g.clone(), ring.right_mult_matrix(&x)).expect("multiplication is additive")
        })
        .collect();
    ModulePres::from_parts(base.clone(), Side::Right, g, vec![], right)
}

/// `S` as a left module over the base ring of `s` through its structure map.
pub fn algebra_as_left_module(s: &Algebra) -> ModulePres {
    let ring: &Ring = s.ring();
    let base = s.base_ring();
    let g = ring.additive().clone();
    let left = (0..base.rank())
        .map(|k| {
            let x = s.structure_image(&base.generator(k));
            GroupMorphism::new(g.clone(), g.clone(), ring.left_mult_matrix(&x)).expect("multiplication is additive")
        })
        .collect();
    ModulePres::from_parts(base.clone(), Side::Left, g, left, vec![])
}

/// `S` as a bimodule over the base ring of `s` through its structure map.
pub fn algebra_as_bimodule(s: &Algebra) -> ModulePres {
    let l = algebra_as_left_module(s);
    let r = algebra_as_right_module(s);
    ModulePres::from_parts(l.ring().clone(), Side::Bi, l.additive().clone(), l.left_actions().to_vec(), r.right_actions().to_vec())
}

pub fn base_change(s: &Algebra, m: &ModulePres) -> Result<BaseChange, ModuleError> {
    if m.side() != Side::Left {
        return Err(ModuleError::Side("base change takes a left module".into()));
    }
    if !same_ring(s.base_ring(), m.ring()) {
        return Err(ModuleError::RingMismatch);
    }
    let s_right = algebra_as_right_module(s);
    let tensor = TensorProduct::new(&s_right, m)?;
    let ring = s.ring();
    let left = (0..ring.rank())
        .map(|k| {
            let phi = GroupMorphism::new(
                ring.additive().clone(),
                ring.additive().clone(),
                ring.left_mult_matrix(&ring.generator(k)),
            )?;
            tensor.endo_on_right_factor(&phi)
        })
        .collect::<Result<Vec<_>, ModuleError>>()?;
    let module = ModulePres::from_parts(ring.clone(), Side::Left, tensor.group().clone(), left, vec![]);
    debug_assert!(module.check().is_ok());
    Ok(BaseChange {
        algebra: s.clone(),
        s_right,
        tensor,
        module,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ring::FiniteRing;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn z2_over_z4(side: Side) -> ModulePres {
        let r = Arc::new(FiniteRing::cyclic(4).unwrap());
        ModulePres::regular(r, side).quotient(&[vec![b(2)]]).0
    }

    #[test]
    fn z2_tensor_z2_over_z4() {
        let t = tensor_over_r(&z2_over_z4(Side::Right), &z2_over_z4(Side::Left)).unwrap();
        assert_eq!(t.group().orders(), &[b(2)]);
    }

    #[test]
    fn ring_tensor_is_identity_and_zero_kills() {
        let r = Arc::new(FiniteRing::triangular_ring(&FiniteRing::cyclic(2).unwrap(), 2).unwrap());
        let m = ModulePres::free(r.clone(), 2, Side::Left);
        let t = tensor_over_r(&ModulePres::regular(r.clone(), Side::Right), &m).unwrap();
        assert_eq!(t.group(), m.additive());
        let z = ModulePres::zero(r.clone(), Side::Left);
        assert!(tensor_over_r(&ModulePres::regular(r, Side::Right), &z).unwrap().group().is_trivial());
    }

    #[test]
    fn integral_tensor_gcd_rule() {
        let z2 = AbelianGroup::cyclic(2);
        let z3 = AbelianGroup::cyclic(3);
        let z4 = AbelianGroup::cyclic(4);
        assert_eq!(ZTensor::new(&z2, &z4).group().orders(), &[b(2)]);
        assert!(ZTensor::new(&z2, &z3).group().is_trivial());
        assert_eq!(ZTensor::new(&z4, &AbelianGroup::free(1)).group(), &z4);
    }

    #[test]
    fn base_change_examples() {
        let r = Arc::new(FiniteRing::cyclic(4).unwrap());
        let m = z2_over_z4(Side::Left);
        let bc = base_change(&Algebra::base(r.clone()), &m).unwrap();
        assert_eq!(bc.module().additive(), m.additive());
        let (_, proj) = r.quotient_ring(&[vec![b(2)]]).unwrap();
        let s = Algebra::new("Z/2", proj);
        let bc = base_change(&s, &m).unwrap();
        assert_eq!(bc.module().additive().orders(), &[b(2)]);
        assert_eq!(bc.module().ring().order(), b(2));
    }
}
