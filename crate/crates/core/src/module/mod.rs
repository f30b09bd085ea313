//! Finitely generated modules over finite rings.
//!
//! A module is an abelian group in invariant-factor form together with one
//! additive endomorphism per canonical generator of the ring, for each side
//! that acts. Action by an arbitrary ring element is the corresponding integer
//! combination of these matrices.

mod classify;
mod hom;
mod tensor;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    subgroup_generated, AbelianGroup, Elem, GroupMorphism, IntMatrix, LinalgError, Presentation, Solver,
};
use crate::ring::{same_ring, FiniteRing, Ideal, Ring, RingError, RingMorphism};

pub use classify::{dual_module, enumerate_left_ideals, enumerate_right_ideals, is_flat, is_projective, tor1, tor1_with_generators, DualModule};
pub use hom::{equivariance_conditions, hom_module, ModuleHom};
pub use tensor::{algebra_as_bimodule, algebra_as_left_module, algebra_as_right_module, base_change, tensor_over_r, tensor_over_z, BaseChange, TensorProduct, ZTensor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("{0}")]
    Linalg(#[from] LinalgError),
    #[error("{0}")]
    Ring(#[from] RingError),
    #[error("module axiom violated: {0}")]
    Axiom(String),
    #[error("side mismatch: {0}")]
    Side(String),
    #[error("modules over different rings")]
    RingMismatch,
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("refused: {0}")]
    Refused(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Bi,
}

impl Side {
    pub fn has_left(self) -> bool {
        matches!(self, Side::Left | Side::Bi)
    }

    pub fn has_right(self) -> bool {
        matches!(self, Side::Right | Side::Bi)
    }
}

/// A module over a finite ring: additive group plus action matrices.
#[derive(Clone)]
pub struct ModulePres {
    ring: Ring,
    side: Side,
    additive: AbelianGroup,
    left: Vec<GroupMorphism>,
    right: Vec<GroupMorphism>,
}

fn combine(group: &AbelianGroup, maps: &[GroupMorphism], coeffs: &[BigInt]) -> GroupMorphism {
    let n = group.rank();
    let mut m = IntMatrix::zeros(n, n);
    for (f, c) in maps.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                let v = &f.matrix()[(i, j)];
                if !v.is_zero() {
                    m[(i, j)] += c * v;
                }
            }
        }
    }
    GroupMorphism::new(group.clone(), group.clone(), m).expect("combination of endomorphisms")
}

impl ModulePres {
    /// Builds a module and checks well-definedness, associativity, unitality and,
    /// for bimodules, that the two actions commute.
    pub fn new(
        ring: Ring,
        side: Side,
        additive: AbelianGroup,
        left: Vec<IntMatrix>,
        right: Vec<IntMatrix>,
    ) -> Result<Self, ModuleError> {
        let k = ring.rank();
        let want = |has: bool| if has { k } else { 0 };
        if left.len() != want(side.has_left()) || right.len() != want(side.has_right()) {
            return Err(ModuleError::Side(format!(
                "{:?} module needs {} left and {} right action matrices",
                side,
                want(side.has_left()),
                want(side.has_right())
            )));
        }
        let to_maps = |ms: Vec<IntMatrix>| -> Result<Vec<GroupMorphism>, ModuleError> {
            ms.into_iter()
                .map(|m| GroupMorphism::new(additive.clone(), additive.clone(), m).map_err(ModuleError::from))
                .collect()
        };
        let left = to_maps(left)?;
        let right = to_maps(right)?;
        let module = Self {
            ring,
            side,
            additive,
            left,
            right,
        };
        module.check()?;
        Ok(module)
    }

    pub(crate) fn check(&self) -> Result<(), ModuleError> {
        let r = &self.ring;
        let k = r.rank();
        let id = GroupMorphism::identity(self.additive.clone());
        for (maps, name, is_left) in [(&self.left, "left", true), (&self.right, "right", false)] {
            if maps.is_empty() {
                continue;
            }
            for i in 0..k {
                let ord = &r.additive().orders()[i];
                let scaled = combine(&self.additive, &maps[i..=i], std::slice::from_ref(ord));
                if !scaled.is_zero() {
                    return Err(ModuleError::Axiom(format!(
                        "{} action of generator {} is not annihilated by its order",
                        name, i
                    )));
                }
            }
            for i in 0..k {
                for j in 0..k {
                    let prod = combine(&self.additive, maps, &r.structure_constants()[i][j]);
                    let comp = if is_left {
                        maps[i].compose(&maps[j])?
                    } else {
                        maps[j].compose(&maps[i])?
                    };
                    if prod != comp {
                        return Err(ModuleError::Axiom(format!(
                            "{} action is not associative on ring generators ({}, {})",
                            name, i, j
                        )));
                    }
                }
            }
            if combine(&self.additive, maps, r.unit()) != id {
                return Err(ModuleError::Axiom(format!("{} action of 1 is not the identity", name)));
            }
        }
        if self.side == Side::Bi {
            for i in 0..k {
                for j in 0..k {
                    if self.left[i].compose(&self.right[j])? != self.right[j].compose(&self.left[i])? {
                        return Err(ModuleError::Axiom(format!(
                            "left generator {} and right generator {} do not commute",
                            i, j
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn from_parts(ring: Ring, side: Side, additive: AbelianGroup, left: Vec<GroupMorphism>, right: Vec<GroupMorphism>) -> Self {
        Self {
            ring,
            side,
            additive,
            left,
            right,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn additive(&self) -> &AbelianGroup {
        &self.additive
    }

    pub fn rank(&self) -> usize {
        self.additive.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.additive.is_trivial()
    }

    /// Left action matrices (empty for right modules).
    pub fn left_actions(&self) -> &[GroupMorphism] {
        &self.left
    }

    pub fn right_actions(&self) -> &[GroupMorphism] {
        &self.right
    }

    /// The endomorphism `m ↦ r·m`.
    pub fn left_action_by(&self, r: &[BigInt]) -> GroupMorphism {
        assert!(self.side.has_left(), "no left action");
        combine(&self.additive, &self.left, r)
    }

    /// The endomorphism `m ↦ m·r`.
    pub fn right_action_by(&self, r: &[BigInt]) -> GroupMorphism {
        assert!(self.side.has_right(), "no right action");
        combine(&self.additive, &self.right, r)
    }

    pub fn act_left(&self, r: &[BigInt], m: &[BigInt]) -> Elem {
        let mut acc = self.additive.zero();
        for (f, c) in self.left.iter().zip(r) {
            if c.is_zero() {
                continue;
            }
            let v = f.apply(m);
            for (s, x) in acc.iter_mut().zip(v) {
                *s += c * x;
            }
        }
        self.additive.reduce(&acc)
    }

    pub fn act_right(&self, m: &[BigInt], r: &[BigInt]) -> Elem {
        let mut acc = self.additive.zero();
        for (f, c) in self.right.iter().zip(r) {
            if c.is_zero() {
                continue;
            }
            let v = f.apply(m);
            for (s, x) in acc.iter_mut().zip(v) {
                *s += c * x;
            }
        }
        self.additive.reduce(&acc)
    }

    /// The zero module.
    pub fn zero(ring: Ring, side: Side) -> Self {
        let g = AbelianGroup::trivial();
        let k = ring.rank();
        let z = GroupMorphism::zero(g.clone(), g.clone());
        let left = if side.has_left() { vec![z.clone(); k] } else { vec![] };
        let right = if side.has_right() { vec![z; k] } else { vec![] };
        Self::from_parts(ring, side, g, left, right)
    }

    /// The ring acting on itself by multiplication.
    pub fn regular(ring: Ring, side: Side) -> Self {
        let g = ring.additive().clone();
        let k = ring.rank();
        let left = if side.has_left() {
            (0..k)
                .map(|i| GroupMorphism::new(g.clone(), g.clone(), ring.left_mult_matrix(&ring.generator(i))).expect("multiplication is additive"))
                .collect()
        } else {
            vec![]
        };
        let right = if side.has_right() {
            (0..k)
                .map(|i| GroupMorphism::new(g.clone(), g.clone(), ring.right_mult_matrix(&ring.generator(i))).expect("multiplication is additive"))
                .collect()
        } else {
            vec![]
        };
        Self::from_parts(ring, side, g, left, right)
    }

    /// `R^k`, with the coordinate change from block coordinates (k copies of the
    /// ring's coordinates) to canonical coordinates.
    pub fn free_with_basis(ring: Ring, k: usize, side: Side) -> (Self, Presentation) {
        let blocks: Vec<ModulePres> = vec![Self::regular(ring.clone(), side); k];
        Self::direct_sum_with_basis(ring, side, &blocks)
    }

    pub fn free(ring: Ring, k: usize, side: Side) -> Self {
        Self::free_with_basis(ring, k, side).0
    }

    /// Direct sum of modules of the same side with the block-coordinate change.
    pub fn direct_sum_with_basis(ring: Ring, side: Side, parts: &[ModulePres]) -> (Self, Presentation) {
        let moduli: Vec<BigInt> = parts.iter().flat_map(|p| p.additive.orders().iter().cloned()).collect();
        let pres = Presentation::from_moduli(&moduli);
        let g = pres.group().clone();
        let block_map = |pick: &dyn Fn(&ModulePres) -> &GroupMorphism| -> GroupMorphism {
            let total = moduli.len();
            let mut big = IntMatrix::zeros(total, total);
            let mut off = 0;
            for p in parts {
                let m = pick(p).matrix();
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        big[(off + i, off + j)] = m[(i, j)].clone();
                    }
                }
                off += p.rank();
            }
            let into = pres.to_canonical_matrix().mul(&big).expect("shapes").mul(pres.lift_matrix()).expect("shapes");
            GroupMorphism::new(g.clone(), g.clone(), into).expect("block action is well defined")
        };
        let k = ring.rank();
        let left = if side.has_left() {
            (0..k).map(|i| block_map(&|p: &ModulePres| &p.left[i])).collect()
        } else {
            vec![]
        };
        let right = if side.has_right() {
            (0..k).map(|i| block_map(&|p: &ModulePres| &p.right[i])).collect()
        } else {
            vec![]
        };
        (Self::from_parts(ring, side, g, left, right), pres)
    }

    pub fn direct_sum(&self, other: &ModulePres) -> Result<ModulePres, ModuleError> {
        if self.side != other.side {
            return Err(ModuleError::Side("direct sum of different sides".into()));
        }
        if !same_ring(&self.ring, &other.ring) {
            return Err(ModuleError::RingMismatch);
        }
        Ok(Self::direct_sum_with_basis(self.ring.clone(), self.side, &[self.clone(), other.clone()]).0)
    }

    /// The submodule closed under the acting side(s) spanned by `gens`, with its inclusion.
    pub fn submodule(&self, gens: &[Elem]) -> (ModulePres, ModuleMorphism) {
        let mut span: Vec<Elem> = gens.iter().map(|g| self.additive.reduce(g)).collect();
        loop {
            let (sub, incl) = subgroup_generated(&self.additive, &span);
            let basis = incl.images();
            let mut grown = basis.clone();
            for x in &basis {
                for f in self.left.iter().chain(&self.right) {
                    grown.push(f.apply(x));
                }
            }
            let (sub2, _) = subgroup_generated(&self.additive, &grown);
            if sub2.order() == sub.order() && sub.is_finite() {
                span = basis;
                break;
            }
            span = grown;
        }
        let (_, incl) = subgroup_generated(&self.additive, &span);
        let sub = self.restrict_to(&incl).expect("span is closed under the actions");
        let m = ModuleMorphism {
            source: sub.clone(),
            target: self.clone(),
            map: incl,
        };
        (sub, m)
    }

    /// The module structure on the source of an injective `incl` whose image is
    /// a submodule.
    pub fn restrict_to(&self, incl: &GroupMorphism) -> Result<ModulePres, ModuleError> {
        let solver = Solver::for_morphism(incl);
        let sub = incl.source().clone();
        let pull = |f: &GroupMorphism| -> Result<GroupMorphism, ModuleError> {
            let cols = (0..sub.rank())
                .map(|a| {
                    let y = f.apply(&incl.apply(&sub.generator(a)));
                    solver
                        .solve(&y)
                        .map(|x| sub.reduce(&x))
                        .ok_or_else(|| ModuleError::Axiom("image is not closed under the action".into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(GroupMorphism::from_images(sub.clone(), sub.clone(), &cols)?)
        };
        let left = self.left.iter().map(pull).collect::<Result<Vec<_>, _>>()?;
        let right = self.right.iter().map(pull).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_parts(self.ring.clone(), self.side, sub, left, right))
    }

    /// The module structure on the target of a surjection from this module whose
    /// kernel is a submodule.
    pub fn push_to(&self, proj: &GroupMorphism) -> Result<ModulePres, ModuleError> {
        let q = proj.target().clone();
        let solver = Solver::for_morphism(proj);
        let push = |f: &GroupMorphism| -> Result<GroupMorphism, ModuleError> {
            let cols = (0..q.rank())
                .map(|a| {
                    let l = solver.solve(&q.generator(a)).ok_or_else(|| ModuleError::Axiom("projection is not surjective".into()))?;
                    Ok(proj.apply(&f.apply(&self.additive.reduce(&l))))
                })
                .collect::<Result<Vec<_>, ModuleError>>()?;
            Ok(GroupMorphism::from_images(q.clone(), q.clone(), &cols)?)
        };
        let left = self.left.iter().map(push).collect::<Result<Vec<_>, _>>()?;
        let right = self.right.iter().map(push).collect::<Result<Vec<_>, _>>()?;
        let out = Self::from_parts(self.ring.clone(), self.side, q, left, right);
        // the kernel must be a submodule for the induced action to be well defined
        let check = ModuleMorphism::new(self.clone(), out.clone(), proj.clone());
        check.map(|m| m.target)
    }

    /// Quotient by the submodule generated by `gens`, with the projection.
    pub fn quotient(&self, gens: &[Elem]) -> (ModulePres, ModuleMorphism) {
        let (_, incl) = self.submodule(gens);
        let (_, proj) = incl.map.cokernel();
        let q = self.push_to(&proj).expect("quotient by a submodule");
        let m = ModuleMorphism {
            source: self.clone(),
            target: q.clone(),
            map: proj,
        };
        (q, m)
    }

    /// `R/I` for a one-sided ideal `I` (left module for left ideals, right for right).
    pub fn cyclic(ring: Ring, ideal: &Ideal) -> ModulePres {
        let side = match ideal.side() {
            crate::ring::IdealSide::Left => Side::Left,
            crate::ring::IdealSide::Right => Side::Right,
            crate::ring::IdealSide::TwoSided => Side::Bi,
        };
        Self::regular(ring, side).quotient(ideal.elements()).0
    }

    /// Forget one side of a bimodule.
    pub fn as_side(&self, side: Side) -> Result<ModulePres, ModuleError> {
        let ok = match side {
            Side::Left => self.side.has_left(),
            Side::Right => self.side.has_right(),
            Side::Bi => self.side == Side::Bi,
        };
        if !ok {
            return Err(ModuleError::Side(format!("{:?} module has no {:?} structure", self.side, side)));
        }
        let left = if side.has_left() { self.left.clone() } else { vec![] };
        let right = if side.has_right() { self.right.clone() } else { vec![] };
        Ok(Self::from_parts(self.ring.clone(), side, self.additive.clone(), left, right))
    }

    /// The same group seen over the opposite ring with the sides exchanged.
    pub fn flip(&self, opposite: Ring) -> Result<ModulePres, ModuleError> {
        if *opposite != self.ring.opposite() {
            return Err(ModuleError::RingMismatch);
        }
        let side = match self.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::Bi => Side::Bi,
        };
        Ok(Self::from_parts(opposite, side, self.additive.clone(), self.right.clone(), self.left.clone()))
    }

    /// Restriction of scalars along `phi: S → R`.
    pub fn restrict_scalars(&self, phi: &RingMorphism) -> Result<ModulePres, ModuleError> {
        if !same_ring(phi.target(), &self.ring) {
            return Err(ModuleError::RingMismatch);
        }
        let s = phi.source().clone();
        let conv = |maps: &[GroupMorphism]| -> Vec<GroupMorphism> {
            (0..s.rank())
                .map(|i| combine(&self.additive, maps, &phi.apply(&s.generator(i))))
                .collect()
        };
        let left = conv(&self.left);
        let right = conv(&self.right);
        Ok(Self::from_parts(s, self.side, self.additive.clone(), left, right))
    }

    /// Same module, with the ring handle replaced by an equal ring.
    pub fn with_ring(&self, ring: Ring) -> Result<ModulePres, ModuleError> {
        if *ring != *self.ring {
            return Err(ModuleError::RingMismatch);
        }
        Ok(Self::from_parts(ring, self.side, self.additive.clone(), self.left.clone(), self.right.clone()))
    }

    /// Equality of presentations (same ring, side, group and action matrices).
    pub fn same_as(&self, other: &ModulePres) -> bool {
        same_ring(&self.ring, &other.ring)
            && self.side == other.side
            && self.additive == other.additive
            && self.left == other.left
            && self.right == other.right
    }

    pub fn identity(&self) -> ModuleMorphism {
        ModuleMorphism {
            source: self.clone(),
            target: self.clone(),
            map: GroupMorphism::identity(self.additive.clone()),
        }
    }
}

impl fmt::Debug for ModulePres {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} module {} over ring of order {}", self.side, self.additive, self.ring.order())
    }
}

/// Equivariant map of modules on the same side over the same ring.
#[derive(Clone, Debug)]
pub struct ModuleMorphism {
    source: ModulePres,
    target: ModulePres,
    map: GroupMorphism,
}

impl ModuleMorphism {
    pub fn new(source: ModulePres, target: ModulePres, map: GroupMorphism) -> Result<Self, ModuleError> {
        if source.side != target.side {
            return Err(ModuleError::Side("morphism between different sides".into()));
        }
        if !same_ring(&source.ring, &target.ring) {
            return Err(ModuleError::RingMismatch);
        }
        if map.source() != source.additive() || map.target() != target.additive() {
            return Err(ModuleError::Linalg(LinalgError::Shape("map does not match the modules".into())));
        }
        for (a, b) in source.left.iter().zip(&target.left).chain(source.right.iter().zip(&target.right)) {
            if map.compose(a)? != b.compose(&map)? {
                return Err(ModuleError::NotEquivariant("fails on a ring generator".into()));
            }
        }
        Ok(Self { source, target, map })
    }

    pub fn source(&self) -> &ModulePres {
        &self.source
    }

    pub fn target(&self) -> &ModulePres {
        &self.target
    }

    pub fn map(&self) -> &GroupMorphism {
        &self.map
    }

    pub fn apply(&self, x: &[BigInt]) -> Elem {
        self.map.apply(x)
    }

    pub fn compose(&self, first: &ModuleMorphism) -> Result<ModuleMorphism, ModuleError> {
        let map = self.map.compose(&first.map)?;
        Ok(ModuleMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            map,
        })
    }

    /// Kernel as a submodule of the source.
    pub fn kernel(&self) -> (ModulePres, ModuleMorphism) {
        let (_, incl) = self.map.kernel();
        let k = self.source.restrict_to(&incl).expect("kernel of an equivariant map");
        let m = ModuleMorphism {
            source: k.clone(),
            target: self.source.clone(),
            map: incl,
        };
        (k, m)
    }
}

/// Shared handle type for rings, re-exported for convenience.
pub type RingRef = Arc<FiniteRing>;

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> Ring {
        Arc::new(FiniteRing::cyclic(n).unwrap())
    }

    #[test]
    fn regular_and_free_modules_validate() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let t = Arc::new(FiniteRing::triangular_ring(&f2, 2).unwrap());
        for side in [Side::Left, Side::Right, Side::Bi] {
            let m = ModulePres::regular(t.clone(), side);
            m.check().unwrap();
            let f = ModulePres::free(t.clone(), 2, side);
            f.check().unwrap();
            assert_eq!(f.additive().order().unwrap(), BigInt::from(64));
        }
    }

    #[test]
    fn bad_action_is_rejected() {
        // ℤ/2 with the generator of ℤ/4 acting as 1 is fine; acting as 0 breaks unitality
        let r = z(4);
        let g = AbelianGroup::cyclic(2);
        let zero = IntMatrix::from_rows(&[vec![0]]).unwrap();
        assert!(ModulePres::new(r.clone(), Side::Left, g.clone(), vec![zero], vec![]).is_err());
        let one = IntMatrix::from_rows(&[vec![1]]).unwrap();
        assert!(ModulePres::new(r, Side::Left, g, vec![one], vec![]).is_ok());
    }

    #[test]
    fn cyclic_quotients_of_z4() {
        let r = z(4);
        let ideals = r.left_ideals().unwrap();
        let orders: Vec<BigInt> = ideals
            .iter()
            .map(|i| ModulePres::cyclic(r.clone(), i).additive().order().unwrap())
            .collect();
        assert_eq!(orders, vec![BigInt::from(4), BigInt::from(2), BigInt::from(1)]);
    }

    #[test]
    fn module_morphism_equivariance() {
        let r = z(4);
        let m = ModulePres::regular(r.clone(), Side::Left);
        let (q, proj) = m.quotient(&[vec![BigInt::from(2)]]);
        assert_eq!(q.additive().orders(), &[BigInt::from(2)]);
        let (k, incl) = proj.kernel();
        assert_eq!(k.additive().orders(), &[BigInt::from(2)]);
        assert!(proj.compose(&incl).unwrap().map().is_zero());
    }
}
