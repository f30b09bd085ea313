//! Duals, Tor₁, and the projective/flat tests.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{equivariance_conditions, hom_module, ModuleError, ModuleHom, ModuleMorphism, ModulePres, Side, TensorProduct};
use crate::linalg::{constrained_hom_group, AbelianGroup, Elem, GroupMorphism, LinearCondition};
use crate::ring::{IdealSide, Ring, RingError, DEFAULT_ENUMERATION_BOUND};

/// `M* = Hom_R(M, R)` with the action coming from the other side of `R`.
#[derive(Clone, Debug)]
pub struct DualModule {
    hom: ModuleHom,
    module: ModulePres,
}

impl DualModule {
    pub fn module(&self) -> &ModulePres {
        &self.module
    }

    pub fn hom(&self) -> &ModuleHom {
        &self.hom
    }

    /// The functional with coordinates `f`.
    pub fn functional(&self, f: &[BigInt]) -> ModuleMorphism {
        self.hom.decode(f)
    }

    /// `f(m)` as a ring element.
    pub fn eval(&self, f: &[BigInt], m: &[BigInt]) -> Elem {
        self.hom.decode(f).apply(m)
    }
}

/// Dual of a one-sided module: a right module for a left `M`, and vice versa.
pub fn dual_module(m: &ModulePres) -> Result<DualModule, ModuleError> {
    let ring = m.ring().clone();
    let (side, dual_side) = match m.side() {
        Side::Left => (Side::Left, Side::Right),
        Side::Right => (Side::Right, Side::Left),
        Side::Bi => return Err(ModuleError::Side("dual of a bimodule; pick a side first".into())),
    };
    let reg = ModulePres::regular(ring.clone(), side);
    let hom = hom_module(m, &reg)?;
    let g = hom.group().clone();
    let gens = hom.space().generators();
    // (f·r)(m) = f(m)·r for left M, (r·f)(m) = r·f(m) for right M
    let acts = (0..ring.rank())
        .map(|k| {
            let x = ring.generator(k);
            let mult = match side {
                Side::Left => ring.right_mult_matrix(&x),
                _ => ring.left_mult_matrix(&x),
            };
            let mult = GroupMorphism::new(ring.additive().clone(), ring.additive().clone(), mult)?;
            let cols = gens
                .iter()
                .map(|f| {
                    let h = mult.compose(f)?;
                    hom.encode(&h).ok_or_else(|| ModuleError::Axiom("dual action leaves Hom".into()))
                })
                .collect::<Result<Vec<_>, ModuleError>>()?;
            Ok(GroupMorphism::from_images(g.clone(), g.clone(), &cols)?)
        })
        .collect::<Result<Vec<_>, ModuleError>>()?;
    let (left, right) = match dual_side {
        Side::Left => (acts, vec![]),
        _ => (vec![], acts),
    };
    let module = ModulePres::from_parts(ring, dual_side, g, left, right);
    debug_assert!(module.check().is_ok());
    Ok(DualModule { hom, module })
}

/// The surjection `R^k → M` sending the i-th basis vector to `gens[i]`.
fn free_cover(m: &ModulePres, gens: &[Elem]) -> Result<(ModulePres, ModuleMorphism), ModuleError> {
    let ring = m.ring().clone();
    let side = m.side();
    let (f, pres) = ModulePres::free_with_basis(ring.clone(), gens.len(), side);
    let rr = ring.rank();
    let images: Vec<Elem> = (0..f.rank())
        .map(|c| {
            let block = pres.lift(&f.additive().generator(c));
            let mut acc = m.additive().zero();
            for (i, g) in gens.iter().enumerate() {
                let r = &block[i * rr..(i + 1) * rr];
                let v = match side {
                    Side::Right => m.act_right(g, r),
                    _ => m.act_left(r, g),
                };
                acc = m.additive().add(&acc, &v);
            }
            acc
        })
        .collect();
    let pi = GroupMorphism::from_images(f.additive().clone(), m.additive().clone(), &images)?;
    if !pi.is_surjective() {
        return Err(ModuleError::Axiom("elements do not generate the module".into()));
    }
    let pi = ModuleMorphism::new(f.clone(), m.clone(), pi)?;
    Ok((f, pi))
}

/// `Tor₁(N, M)` computed from the cover `R^k → M` on the given generators of `M`:
/// the kernel of `N ⊗ K → N ⊗ R^k`.
pub fn tor1_with_generators(n: &ModulePres, m: &ModulePres, gens: &[Elem]) -> Result<AbelianGroup, ModuleError> {
    let m = m.as_side(Side::Left)?;
    let n = n.as_side(Side::Right)?;
    let (f, pi) = free_cover(&m, gens)?;
    let (k, incl) = pi.kernel();
    let nk = TensorProduct::new(&n, &k)?;
    let nf = TensorProduct::new(&n, &f)?;
    let id = GroupMorphism::identity(n.additive().clone());
    let map = nk.induced(&id, incl.map(), &nf)?;
    Ok(map.kernel().0)
}

/// `Tor₁(N, M)` using the additive generators of `M` as module generators.
pub fn tor1(n: &ModulePres, m: &ModulePres) -> Result<AbelianGroup, ModuleError> {
    let gens: Vec<Elem> = (0..m.rank()).map(|i| m.additive().generator(i)).collect();
    tor1_with_generators(n, m, &gens)
}

/// Whether the cover `R^k → M` on the additive generators has an equivariant section.
/// Bimodules are tested through their left structure.
pub fn is_projective(m: &ModulePres) -> Result<bool, ModuleError> {
    let m = if m.side() == Side::Bi { m.as_side(Side::Left)? } else { m.clone() };
    if m.is_zero() {
        return Ok(true);
    }
    let gens: Vec<Elem> = (0..m.rank()).map(|i| m.additive().generator(i)).collect();
    let (f, pi) = free_cover(&m, &gens)?;
    let mut conds = equivariance_conditions(&m, &f);
    let (rm, rf) = (m.rank(), f.rank());
    let p = pi.map().matrix();
    let mut coefficients = Vec::with_capacity(rm * rm);
    let mut moduli = Vec::with_capacity(rm * rm);
    let mut rhs = Vec::with_capacity(rm * rm);
    for a in 0..rm {
        for i in 0..rm {
            let mut row = vec![BigInt::zero(); rf * rm];
            for j in 0..rf {
                row[j * rm + i] = p[(a, j)].clone();
            }
            coefficients.push(row);
            moduli.push(m.additive().orders()[a].clone());
            rhs.push(if a == i { BigInt::one() } else { BigInt::zero() });
        }
    }
    conds.push(LinearCondition {
        moduli,
        coefficients,
        rhs: Some(rhs),
    });
    let space = constrained_hom_group(m.additive(), f.additive(), &conds)?;
    Ok(!space.is_empty())
}

fn refuse(e: RingError) -> ModuleError {
    match e {
        RingError::BoundExceeded { order, bound } => {
            ModuleError::Refused(format!("ideal enumeration over a ring of order {} exceeds bound {}", order, bound))
        }
        other => ModuleError::Ring(other),
    }
}

fn enumerate_ideals(ring: &Ring, side: IdealSide, bound: usize) -> Result<Vec<(ModulePres, ModuleMorphism)>, ModuleError> {
    let mside = if side == IdealSide::Left { Side::Left } else { Side::Right };
    let reg = ModulePres::regular(ring.clone(), mside);
    Ok(ring
        .ideals(side, bound)
        .map_err(refuse)?
        .iter()
        .map(|i| reg.submodule(i.elements()))
        .collect())
}

/// All right ideals of `R` as submodules of `R_R`, in the ring's ideal order.
pub fn enumerate_right_ideals(ring: &Ring, bound: usize) -> Result<Vec<(ModulePres, ModuleMorphism)>, ModuleError> {
    enumerate_ideals(ring, IdealSide::Right, bound)
}

pub fn enumerate_left_ideals(ring: &Ring, bound: usize) -> Result<Vec<(ModulePres, ModuleMorphism)>, ModuleError> {
    enumerate_ideals(ring, IdealSide::Left, bound)
}

/// Flatness by the ideal criterion: `Tor₁(R/I, M) = 0` for every right ideal `I`
/// (left ideals for a right module). Refused for rings above
/// `DEFAULT_ENUMERATION_BOUND`.
pub fn is_flat(m: &ModulePres) -> Result<bool, ModuleError> {
    let ring = m.ring().clone();
    let m = if m.side() == Side::Bi { m.as_side(Side::Left)? } else { m.clone() };
    let ideal_side = if m.side() == Side::Left { IdealSide::Right } else { IdealSide::Left };
    let ideals = ring.ideals(ideal_side, DEFAULT_ENUMERATION_BOUND).map_err(refuse)?;
    if m.side() == Side::Left {
        for i in &ideals {
            let q = ModulePres::cyclic(ring.clone(), i);
            if !tor1(&q, &m)?.is_trivial() {
                return Ok(false);
            }
        }
    } else {
        for i in &ideals {
            let q = ModulePres::cyclic(ring.clone(), i);
            let gens: Vec<Elem> = (0..q.rank()).map(|k| q.additive().generator(k)).collect();
            if !tor1_with_generators(&m, &q, &gens)?.is_trivial() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ring::FiniteRing;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn z4() -> Ring {
        Arc::new(FiniteRing::cyclic(4).unwrap())
    }

    #[test]
    fn tor_of_z2_over_z4() {
        let r = z4();
        let n = ModulePres::regular(r.clone(), Side::Right).quotient(&[vec![b(2)]]).0;
        let m = ModulePres::regular(r.clone(), Side::Left).quotient(&[vec![b(2)]]).0;
        assert_eq!(tor1(&n, &m).unwrap().orders(), &[b(2)]);
        let free = ModulePres::free(r, 2, Side::Left);
        assert!(tor1(&n, &free).unwrap().is_trivial());
    }

    #[test]
    fn tor_does_not_depend_on_generators() {
        let r = z4();
        let n = ModulePres::regular(r.clone(), Side::Right).quotient(&[vec![b(2)]]).0;
        let m = ModulePres::regular(r.clone(), Side::Left).quotient(&[vec![b(2)]]).0;
        let a = tor1_with_generators(&n, &m, &[vec![b(1)], vec![b(1)], vec![b(0)]]).unwrap();
        assert_eq!(a.orders(), &[b(2)]);
    }

    #[test]
    fn z2_over_z4_is_neither_flat_nor_projective() {
        let r = z4();
        let m = ModulePres::regular(r.clone(), Side::Left).quotient(&[vec![b(2)]]).0;
        assert!(!is_projective(&m).unwrap());
        assert!(!is_flat(&m).unwrap());
        let reg = ModulePres::regular(r, Side::Left);
        assert!(is_projective(&reg).unwrap());
        assert!(is_flat(&reg).unwrap());
    }

    #[test]
    fn column_module_over_matrix_ring() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let r: Ring = Arc::new(FiniteRing::matrix_ring(&f2, 2).unwrap());
        let reg = ModulePres::regular(r.clone(), Side::Left);
        // the left ideal of matrices with zero second column
        let ideals = r.left_ideals().unwrap();
        let col = ideals.iter().find(|i| i.order() == 4).unwrap();
        let (m, _) = reg.submodule(col.elements());
        assert_eq!(m.additive().order().unwrap(), b(4));
        assert!(is_projective(&m).unwrap());
        assert!(is_flat(&m).unwrap());
    }

    #[test]
    fn dual_of_regular_and_torsion() {
        let r = z4();
        let reg = ModulePres::regular(r.clone(), Side::Left);
        let d = dual_module(&reg).unwrap();
        assert_eq!(d.module().side(), Side::Right);
        assert_eq!(d.module().additive(), reg.additive());
        let m = reg.quotient(&[vec![b(2)]]).0;
        let d = dual_module(&m).unwrap();
        assert_eq!(d.module().additive().orders(), &[b(2)]);
        let dd = dual_module(d.module()).unwrap();
        assert_eq!(dd.module().additive().orders(), &[b(2)]);
    }

    #[test]
    fn triangular_ideals_as_submodules() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let r: Ring = Arc::new(FiniteRing::triangular_ring(&f2, 2).unwrap());
        assert_eq!(enumerate_right_ideals(&r, 64).unwrap().len(), 7);
        let z = FiniteRing::matrix_ring(&FiniteRing::cyclic(4).unwrap(), 2).unwrap();
        assert!(matches!(enumerate_left_ideals(&Arc::new(z), 64), Err(ModuleError::Refused(_))));
    }
}
