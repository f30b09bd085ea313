use num_bigint::BigInt;
use num_traits::Zero;

use super::{ModuleError, ModuleMorphism, ModulePres};
use crate::linalg::{constrained_hom_group, AbelianGroup, Elem, GroupMorphism, HomSpace, LinalgError, LinearCondition};
use crate::ring::same_ring;

/// Congruences on the matrix `X` of an additive map `M → N` expressing
/// `X·A_g = B_g·X` for every acting ring generator `g`.
pub fn equivariance_conditions(m: &ModulePres, n: &ModulePres) -> Vec<LinearCondition> {
    let (rows, cols) = (n.rank(), m.rank());
    let unknowns = rows * cols;
    let mut out = Vec::new();
    let pairs = m
        .left_actions()
        .iter()
        .zip(n.left_actions())
        .chain(m.right_actions().iter().zip(n.right_actions()));
    for (a, b) in pairs {
        let (a, b) = (a.matrix(), b.matrix());
        let mut coefficients = Vec::with_capacity(unknowns);
        let mut moduli = Vec::with_capacity(unknowns);
        for j in 0..rows {
            for i in 0..cols {
                let mut row = vec![BigInt::zero(); unknowns];
                // (X A)_{ji} = Σ_l X_{jl} A_{li}
                for l in 0..cols {
                    let v = &a[(l, i)];
                    if !v.is_zero() {
                        row[j * cols + l] += v;
                    }
                }
                // (B X)_{ji} = Σ_l B_{jl} X_{li}
                for l in 0..rows {
                    let v = &b[(j, l)];
                    if !v.is_zero() {
                        row[l * cols + i] -= v;
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    coefficients.push(row);
                    moduli.push(n.additive().orders()[j].clone());
                }
            }
        }
        if !coefficients.is_empty() {
            out.push(LinearCondition::homogeneous(moduli, coefficients));
        }
    }
    out
}

/// `Hom_R(M, N)` as a group of equivariant additive maps.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    source: ModulePres,
    target: ModulePres,
    space: HomSpace,
}

impl ModuleHom {
    pub fn group(&self) -> &AbelianGroup {
        self.space.group()
    }

    pub fn source(&self) -> &ModulePres {
        &self.source
    }

    pub fn target(&self) -> &ModulePres {
        &self.target
    }

    pub fn space(&self) -> &HomSpace {
        &self.space
    }

    pub fn decode(&self, x: &[BigInt]) -> ModuleMorphism {
        let map = self.space.decode(x).expect("homogeneous systems are consistent");
        ModuleMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            map,
        }
    }

    pub fn encode(&self, f: &GroupMorphism) -> Option<Elem> {
        self.space.encode(f)
    }

    /// All module maps, in the enumeration order of the Hom group.
    pub fn morphisms(&self) -> Result<impl Iterator<Item = ModuleMorphism> + '_, LinalgError> {
        Ok(self.group().elements()?.map(move |x| self.decode(&x)))
    }

    /// The maps corresponding to the canonical generators of the Hom group.
    pub fn generators(&self) -> Vec<ModuleMorphism> {
        self.space
            .generators()
            .into_iter()
            .map(|map| ModuleMorphism {
                source: self.source.clone(),
                target: self.target.clone(),
                map,
            })
            .collect()
    }
}

pub fn hom_module(m: &ModulePres, n: &ModulePres) -> Result<ModuleHom, ModuleError> {
    if m.side() != n.side() {
        return Err(ModuleError::Side(format!("Hom from a {:?} to a {:?} module", m.side(), n.side())));
    }
    if !same_ring(m.ring(), n.ring()) {
        return Err(ModuleError::RingMismatch);
    }
    let conds = equivariance_conditions(m, n);
    let space = constrained_hom_group(m.additive(), n.additive(), &conds)?;
    Ok(ModuleHom {
        source: m.clone(),
        target: n.clone(),
        space,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::module::Side;
    use crate::ring::FiniteRing;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn hom_from_free_is_the_module() {
        let r = Arc::new(FiniteRing::cyclic(4).unwrap());
        let reg = ModulePres::regular(r.clone(), Side::Left);
        let (m, _) = reg.quotient(&[vec![b(2)]]);
        let h = hom_module(&reg, &m).unwrap();
        assert_eq!(h.group(), m.additive());
    }

    #[test]
    fn hom_z2_into_z4_over_z4() {
        let r = Arc::new(FiniteRing::cyclic(4).unwrap());
        let reg = ModulePres::regular(r.clone(), Side::Left);
        let (m, _) = reg.quotient(&[vec![b(2)]]);
        let h = hom_module(&m, &reg).unwrap();
        assert_eq!(h.group().orders(), &[b(2)]);
        let nonzero: Vec<_> = h.morphisms().unwrap().filter(|f| !f.map().is_zero()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].apply(&[b(1)]), vec![b(2)]);
        let h2 = hom_module(&m, &m).unwrap();
        assert_eq!(h2.group().orders(), &[b(2)]);
    }

    #[test]
    fn side_mismatch_is_an_error() {
        let r = Arc::new(FiniteRing::cyclic(4).unwrap());
        let l = ModulePres::regular(r.clone(), Side::Left);
        let rr = ModulePres::regular(r, Side::Right);
        assert!(matches!(hom_module(&l, &rr), Err(ModuleError::Side(_))));
    }
}
