use std::sync::Arc;

use num_bigint::BigInt;

use super::FunctorError;
use crate::linalg::{subgroups_equal, AbelianGroup, Elem, GroupMorphism};
use crate::module::{ModulePres, Side, TensorProduct, ZTensor};

/// `𝒩^r(M) = Ker(p₁ − p₂)` inside `A = N ⊗_R M ⊗_ℤ R`, where
/// `p₁(a) = a ⊗ 1` and `p₂(n⊗m⊗r) = n⊗m⊗1⊗r` land in `A ⊗_ℤ R`.
#[derive(Clone, Debug)]
pub struct RExtension {
    n: ModulePres,
    m: ModulePres,
    tensor: TensorProduct,
    ambient: ZTensor,
    ambient2: ZTensor,
    p1: GroupMorphism,
    p2: GroupMorphism,
    kernel: AbelianGroup,
    inclusion: GroupMorphism,
}

pub fn r_extension(n: &ModulePres, m: &ModulePres) -> Result<RExtension, FunctorError> {
    let n = n.as_side(Side::Right)?;
    let m = m.as_side(Side::Left)?;
    let ring = m.ring().clone();
    let tensor = TensorProduct::new(&n, &m)?;
    let p = tensor.group().clone();
    let radd = ring.additive().clone();
    let ambient = ZTensor::new(&p, &radd);
    let ambient2 = ZTensor::new(ambient.group(), &radd);
    let unit = ring.unit().clone();
    let (pr, rr) = (p.rank(), radd.rank());
    let mut im1 = Vec::with_capacity(pr * rr);
    let mut im2 = Vec::with_capacity(pr * rr);
    for c in 0..pr {
        let pc = p.generator(c);
        let pc1 = ambient.pure(&pc, &unit);
        for l in 0..rr {
            im1.push(ambient2.pure(&ambient.generator(c, l), &unit));
            im2.push(ambient2.pure(&pc1, &radd.generator(l)));
        }
    }
    let p1 = ambient.from_generator_images(ambient2.group(), &im1)?;
    let p2 = ambient.from_generator_images(ambient2.group(), &im2)?;
    let (kernel, inclusion) = p1.sub(&p2)?.kernel();
    Ok(RExtension {
        n,
        m,
        tensor,
        ambient,
        ambient2,
        p1,
        p2,
        kernel,
        inclusion,
    })
}

impl RExtension {
    pub fn right_module(&self) -> &ModulePres {
        &self.n
    }

    pub fn left_module(&self) -> &ModulePres {
        &self.m
    }

    /// `N ⊗_R M`.
    pub fn tensor(&self) -> &TensorProduct {
        &self.tensor
    }

    /// `N ⊗_R M ⊗_ℤ R`.
    pub fn ambient(&self) -> &ZTensor {
        &self.ambient
    }

    pub fn ambient2(&self) -> &ZTensor {
        &self.ambient2
    }

    pub fn p1(&self) -> &GroupMorphism {
        &self.p1
    }

    pub fn p2(&self) -> &GroupMorphism {
        &self.p2
    }

    pub fn kernel(&self) -> &AbelianGroup {
        &self.kernel
    }

    /// Inclusion of the kernel into the ambient group.
    pub fn inclusion(&self) -> &GroupMorphism {
        &self.inclusion
    }

    /// Images of the kernel generators in the ambient group.
    pub fn kernel_generators(&self) -> Vec<Elem> {
        self.inclusion.images()
    }

    /// Class of `n ⊗ m ⊗ r` in the ambient group.
    pub fn ambient_pure(&self, n: &[BigInt], m: &[BigInt], r: &[BigInt]) -> Elem {
        self.ambient.pure(&self.tensor.pure(n, m), r)
    }

    /// The kernel element with kernel coordinates `x`.
    pub fn element(&self, x: &[BigInt]) -> RKernelElement {
        let x = self.kernel.reduce(x);
        RKernelElement {
            ambient: self.inclusion.apply(&x),
            coords: x,
        }
    }

    /// Wraps an ambient element, checking `(p₁ − p₂)(a) = 0`.
    pub fn element_from_ambient(&self, a: &[BigInt]) -> Result<RKernelElement, FunctorError> {
        let a = self.ambient.group().reduce(a);
        let d = self.ambient2.group().sub(&self.p1.apply(&a), &self.p2.apply(&a));
        if !self.ambient2.group().is_zero_elem(&d) {
            return Err(FunctorError::Input("element is not in Ker(p₁ − p₂)".into()));
        }
        let coords = self
            .inclusion
            .solve(&a)
            .ok_or_else(|| FunctorError::Inconsistent("kernel element outside the computed kernel".into()))?;
        Ok(RKernelElement {
            coords: self.kernel.reduce(&coords),
            ambient: a,
        })
    }

    /// The map `i: N ⊗_R M → A`, `n⊗m ↦ n⊗m⊗1`.
    pub fn i_map(&self) -> Result<GroupMorphism, FunctorError> {
        let p = self.tensor.group();
        let unit = self.m.ring().unit().clone();
        let images: Vec<Elem> = (0..p.rank()).map(|c| self.ambient.pure(&p.generator(c), &unit)).collect();
        Ok(GroupMorphism::from_images(p.clone(), self.ambient.group().clone(), &images)?)
    }
}

/// An element of `𝒩^r(M)`, in kernel and ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RKernelElement {
    coords: Elem,
    ambient: Elem,
}

impl RKernelElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn ambient(&self) -> &[BigInt] {
        &self.ambient
    }
}

/// `N ⊗_R M → 𝒩^r(M)`, with the decision whether it is an isomorphism.
#[derive(Clone, Debug)]
pub struct ComparisonMap {
    pub map: GroupMorphism,
    pub is_isomorphism: bool,
}

pub fn comparison_map(ext: &RExtension) -> Result<ComparisonMap, FunctorError> {
    let i = ext.i_map()?;
    let map = i
        .factor_through(ext.inclusion())
        .ok_or_else(|| FunctorError::Inconsistent("image of i is not inside Ker(p₁ − p₂)".into()))?;
    let is_isomorphism = map.is_isomorphism();
    Ok(ComparisonMap { map, is_isomorphism })
}

/// Computes `𝓜^r(N)` over the opposite ring (where `M` is a right module and `N`
/// a left one), transports it into `N ⊗_R M ⊗_ℤ R` along `m⊗n ↦ n⊗m`, and tests
/// whether it is literally the subgroup `𝒩^r(M)`.
pub fn symmetric_kernel_agrees(ext: &RExtension) -> Result<bool, FunctorError> {
    let ring = ext.left_module().ring();
    let op = Arc::new(ring.opposite());
    let m_op = ext.left_module().flip(op.clone())?;
    let n_op = ext.right_module().flip(op)?;
    let flipped = r_extension(&m_op, &n_op)?;
    let (rn, rm) = (ext.right_module().rank(), ext.left_module().rank());
    // generator m_b ⊗ n_a of M ⊗ N sits at b·rank(N) + a
    let mut images = Vec::with_capacity(rn * rm);
    for b in 0..rm {
        for a in 0..rn {
            images.push(ext.tensor().generator(a, b));
        }
    }
    let swap = flipped
        .tensor()
        .presentation()
        .morphism_from_generators(ext.tensor().group(), &images)?;
    let id_r = GroupMorphism::identity(ring.additive().clone());
    let transport = flipped.ambient().induced(&swap, &id_r, ext.ambient())?;
    if !transport.is_isomorphism() {
        return Err(FunctorError::Inconsistent("swap of ambients is not an isomorphism".into()));
    }
    let moved: Vec<Elem> = flipped.kernel_generators().iter().map(|x| transport.apply(x)).collect();
    Ok(subgroups_equal(ext.ambient().group(), &ext.kernel_generators(), &moved))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FiniteRing, Ring};

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn z4() -> Ring {
        Arc::new(FiniteRing::cyclic(4).unwrap())
    }

    fn z2(r: &Ring, side: Side) -> ModulePres {
        ModulePres::regular(r.clone(), side).quotient(&[vec![b(2)]]).0
    }

    #[test]
    fn z2_z2_over_z4() {
        let r = z4();
        let ext = r_extension(&z2(&r, Side::Right), &z2(&r, Side::Left)).unwrap();
        assert_eq!(ext.kernel().orders(), &[b(2)]);
        let c = comparison_map(&ext).unwrap();
        assert!(c.is_isomorphism);
        assert!(symmetric_kernel_agrees(&ext).unwrap());
    }

    #[test]
    fn zero_and_free_cases() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let t: Ring = Arc::new(FiniteRing::triangular_ring(&f2, 2).unwrap());
        let z = ModulePres::zero(t.clone(), Side::Right);
        let reg = ModulePres::regular(t.clone(), Side::Left);
        assert!(r_extension(&z, &reg).unwrap().kernel().is_trivial());
        let n = ModulePres::regular(t.clone(), Side::Right).quotient(&[t.generator(0)]).0;
        let ext = r_extension(&n, &reg).unwrap();
        assert_eq!(ext.kernel(), n.additive());
        assert!(comparison_map(&ext).unwrap().is_isomorphism);
        assert!(symmetric_kernel_agrees(&ext).unwrap());
    }

    #[test]
    fn element_membership_is_checked() {
        let r = z4();
        let ext = r_extension(&z2(&r, Side::Right), &z2(&r, Side::Left)).unwrap();
        let phi = ext.ambient_pure(&[b(1)], &[b(1)], &[b(1)]);
        let e = ext.element_from_ambient(&phi).unwrap();
        assert_eq!(ext.element(e.coords()).ambient(), e.ambient());
    }
}
