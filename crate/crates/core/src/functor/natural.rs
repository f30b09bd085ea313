//! The natural transformation `𝓜^∨ → 𝒩` attached to `φ = Σ nᵢ⊗mᵢ⊗rᵢ ∈ 𝒩^r(M)`:
//! at an algebra `S` it sends `f ∈ Hom_R(M, S)` to `Σ nᵢ ⊗ f(mᵢ)·σ(rᵢ) ∈ N ⊗_R S`.
//!
//! The formula is additive in `f` and, on `n⊗m⊗r`, balanced over `R`, so for a
//! fixed `f` it defines a map out of the whole ambient `N⊗_R M⊗_ℤ R`; restricting
//! along the kernel inclusion evaluates every `φ` at once. Because both sides of
//! each identity below are additive in `f` and in `s`, they are checked on
//! generators of `Hom_R(M, S)` and of `S`.

use num_traits::Zero;

use super::{FunctorError, RExtension, RKernelElement, TruncTensorAlgebra};
use crate::linalg::{Elem, GroupMorphism};
use crate::module::{algebra_as_bimodule, algebra_as_left_module, hom_module, ModuleMorphism, ModulePres, Side, TensorProduct};
use crate::ring::{Algebra, AlgebraMorphismCorpus};

/// `E_f: N⊗_R M⊗_ℤ R → N⊗_R S`, `n⊗m⊗r ↦ n⊗f(m)·r`, for an `R`-bimodule `S`
/// and a left-linear `f: M → S` (given by its additive map).
pub fn evaluation_map(ext: &RExtension, s: &ModulePres, f: &GroupMorphism, ns: &TensorProduct) -> Result<GroupMorphism, FunctorError> {
    if s.side() != Side::Bi {
        return Err(FunctorError::Input("evaluation needs the algebra as a bimodule".into()));
    }
    let p = ext.tensor();
    let ring = s.ring();
    let rm = ext.left_module().rank();
    let fm = f.images();
    let nadd = ext.right_module().additive();
    let mut images = Vec::new();
    for c in 0..p.group().rank() {
        let lam = p.presentation().lift(&p.group().generator(c));
        for l in 0..ring.rank() {
            let g = ring.generator(l);
            let mut acc = ns.group().zero();
            for (idx, v) in lam.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let (a, b) = (idx / rm, idx % rm);
                let y = s.act_right(&fm[b], &g);
                let t = ns.pure(&nadd.generator(a), &y);
                acc = ns.group().add(&acc, &ns.group().scale(v, &t));
            }
            images.push(acc);
        }
    }
    Ok(ext.ambient().from_generator_images(ns.group(), &images)?)
}

/// `φ` evaluated at `(S, f)`.
pub fn induced_transformation(
    ext: &RExtension,
    phi: &RKernelElement,
    s: &Algebra,
    f: &GroupMorphism,
) -> Result<Elem, FunctorError> {
    let sl = algebra_as_left_module(s);
    ModuleMorphism::new(ext.left_module().clone(), sl, f.clone())
        .map_err(|e| FunctorError::Input(format!("f is not a module map: {}", e)))?;
    let phi = ext.element_from_ambient(phi.ambient())?;
    let sb = algebra_as_bimodule(s);
    let ns = TensorProduct::new(ext.right_module(), &sb)?;
    let e = evaluation_map(ext, &sb, f, &ns)?;
    Ok(e.apply(phi.ambient()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NaturalityCertificate {
    /// (arrow, Hom generator) pairs checked.
    pub arrow_checks: usize,
    /// (object, Hom generator, algebra generator) triples checked for `S`-linearity.
    pub linearity_checks: usize,
    /// First violation found, if any.
    pub violation: Option<String>,
}

impl NaturalityCertificate {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

struct Object {
    bimodule: ModulePres,
    ns: TensorProduct,
    hom_gens: Vec<GroupMorphism>,
    evals: Vec<GroupMorphism>,
}

/// For every arrow `u: S → S′` and generator `f` of `Hom_R(M, S)`, checks
/// `(N⊗u)∘E_f = E_{u∘f}` on `𝒩^r(M)`; for every object, checks that
/// `f ↦ E_f(φ)` is right `S`-linear (`E_{f·s} = E_f·s`).
pub fn check_naturality(ext: &RExtension, corpus: &AlgebraMorphismCorpus) -> Result<NaturalityCertificate, FunctorError> {
    let incl = ext.inclusion();
    let mut cert = NaturalityCertificate::default();
    let objects = corpus
        .objects()
        .iter()
        .map(|s| {
            let bimodule = algebra_as_bimodule(s);
            let sl = algebra_as_left_module(s);
            let ns = TensorProduct::new(ext.right_module(), &bimodule)?;
            let hom = hom_module(ext.left_module(), &sl)?;
            let hom_gens: Vec<GroupMorphism> = hom.generators().into_iter().map(|f| f.map().clone()).collect();
            let evals = hom_gens
                .iter()
                .map(|f| Ok(evaluation_map(ext, &bimodule, f, &ns)?.compose(incl)?))
                .collect::<Result<Vec<_>, FunctorError>>()?;
            Ok(Object {
                bimodule,
                ns,
                hom_gens,
                evals,
            })
        })
        .collect::<Result<Vec<_>, FunctorError>>()?;

    let id_n = GroupMorphism::identity(ext.right_module().additive().clone());
    for arrow in corpus.arrows() {
        let (src, tgt) = (&objects[arrow.source], &objects[arrow.target]);
        let u = arrow.map.map();
        let nu = src.ns.induced(&id_n, u, &tgt.ns)?;
        for (f, ef) in src.hom_gens.iter().zip(&src.evals) {
            let uf = u.compose(f)?;
            let lhs = nu.compose(ef)?;
            let rhs = evaluation_map(ext, &tgt.bimodule, &uf, &tgt.ns)?.compose(incl)?;
            cert.arrow_checks += 1;
            if lhs != rhs {
                cert.violation = Some(format!("arrow {} breaks naturality", arrow.name));
                return Ok(cert);
            }
        }
    }

    for (obj, s) in objects.iter().zip(corpus.objects()) {
        let ring = s.ring();
        for k in 0..ring.rank() {
            let rho = GroupMorphism::new(ring.additive().clone(), ring.additive().clone(), ring.right_mult_matrix(&ring.generator(k)))?;
            let ns_rho = obj.ns.endo_on_left_factor(&rho)?;
            for (f, ef) in obj.hom_gens.iter().zip(&obj.evals) {
                let fs = rho.compose(f)?;
                let lhs = evaluation_map(ext, &obj.bimodule, &fs, &obj.ns)?.compose(incl)?;
                let rhs = ns_rho.compose(ef)?;
                cert.linearity_checks += 1;
                if lhs != rhs {
                    cert.violation = Some(format!("evaluation at {} is not linear over the algebra", s.name()));
                    return Ok(cert);
                }
            }
        }
    }
    Ok(cert)
}

/// Evaluates every `φ ∈ 𝒩^r(M)` at `S = T(M, 2)` and `f = (m ↦ m⊗1)` and tests
/// that `φ ↦ E_f(φ)` is injective.
pub fn certified_injectivity(ext: &RExtension) -> Result<bool, FunctorError> {
    if ext.kernel().is_trivial() {
        return Ok(true);
    }
    let t = TruncTensorAlgebra::new(ext.left_module(), 2)?;
    let f = t.canonical_inclusion()?;
    let ns = TensorProduct::new(ext.right_module(), t.bimodule())?;
    let e = evaluation_map(ext, t.bimodule(), &f, &ns)?;
    Ok(e.compose(ext.inclusion())?.is_injective())
}

/// For `G = N ⊗_R (−)` and an algebra `S`, checks that
/// `G(S) → G(T(S, 2)) → G(S)`, induced by `s ↦ s⊗1` and by the algebra map
/// `T(S, 2) → S` extending the identity, is the identity.
pub fn unit_counit_roundtrip(n: &ModulePres, s: &Algebra) -> Result<bool, FunctorError> {
    let n = n.as_side(Side::Right)?;
    let sl = algebra_as_left_module(s);
    let t = TruncTensorAlgebra::new(&sl, 2)?;
    let sring = s.ring();
    let base = s.base_ring();
    let i_s = t.canonical_inclusion()?;
    // π on block coordinates: s₁⋯sₙ·r ↦ s₁⋯sₙσ(r)
    let tl = t.bimodule().as_side(Side::Left)?;
    let images: Vec<Elem> = (0..t.group().rank())
        .map(|c| {
            let x = t.group().generator(c);
            let mut acc = sring.zero();
            for deg in 0..=2 {
                let piece = t.piece(deg);
                let comp = piece.presentation().lift(&t.component(deg, &x));
                for (idx, v) in comp.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let tup = piece.tuple(idx);
                    let (l, ws) = tup.split_last().expect("ring factor");
                    let mut prod = sring.unit().clone();
                    for &w in ws {
                        prod = sring.mul(&prod, &sring.additive().generator(w));
                    }
                    prod = sring.mul(&prod, &s.structure_image(&base.generator(*l)));
                    acc = sring.add(&acc, &sring.additive().scale(v, &prod));
                }
            }
            acc
        })
        .collect();
    let pi = GroupMorphism::from_images(t.group().clone(), sring.additive().clone(), &images)?;
    ModuleMorphism::new(tl.clone(), sl.clone(), pi.clone())
        .map_err(|e| FunctorError::Inconsistent(format!("π is not left linear: {}", e)))?;
    let ns = TensorProduct::new(&n, &sl)?;
    let nt = TensorProduct::new(&n, &tl)?;
    let id_n = GroupMorphism::identity(n.additive().clone());
    let gi = ns.induced(&id_n, &i_s, &nt)?;
    let gp = nt.induced(&id_n, &pi, &ns)?;
    Ok(gp.compose(&gi)? == GroupMorphism::identity(ns.group().clone()))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_bigint::BigInt;

    use super::*;
    use crate::functor::r_extension;
    use crate::ring::{algebra_corpus, FiniteRing, Ring};

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn z4() -> Ring {
        Arc::new(FiniteRing::cyclic(4).unwrap())
    }

    #[test]
    fn nonzero_phi_at_z4() {
        let r = z4();
        let n = ModulePres::regular(r.clone(), Side::Right).quotient(&[vec![b(2)]]).0;
        let m = ModulePres::regular(r.clone(), Side::Left).quotient(&[vec![b(2)]]).0;
        let ext = r_extension(&n, &m).unwrap();
        let phi = ext.element(&[b(1)]);
        let s = Algebra::base(r.clone());
        let f = GroupMorphism::from_images(m.additive().clone(), r.additive().clone(), &[vec![b(2)]]).unwrap();
        // 1⊗2 = (1·2)⊗1 = 0 in ℤ/2 ⊗ ℤ/4
        let v = induced_transformation(&ext, &phi, &s, &f).unwrap();
        assert_eq!(v, vec![b(0)]);
        // the identity of ℤ/4 is not a map out of ℤ/2
        let bad = GroupMorphism::from_images(r.additive().clone(), r.additive().clone(), &[vec![b(1)]]).unwrap();
        assert!(induced_transformation(&ext, &phi, &s, &bad).is_err());
        // at the truncated tensor algebra the same φ is detected
        assert!(certified_injectivity(&ext).unwrap());
    }

    #[test]
    fn naturality_over_z4_corpus() {
        let r = z4();
        let corpus = algebra_corpus(&r, 16).unwrap();
        let n = ModulePres::regular(r.clone(), Side::Right).quotient(&[vec![b(2)]]).0;
        for m in [
            ModulePres::regular(r.clone(), Side::Left),
            ModulePres::regular(r.clone(), Side::Left).quotient(&[vec![b(2)]]).0,
        ] {
            let ext = r_extension(&n, &m).unwrap();
            let cert = check_naturality(&ext, &corpus).unwrap();
            assert!(cert.holds(), "{:?}", cert);
            assert!(cert.arrow_checks > 0);
            assert!(certified_injectivity(&ext).unwrap());
        }
    }

    #[test]
    fn roundtrip_is_identity() {
        let r = z4();
        let n = ModulePres::regular(r.clone(), Side::Right).quotient(&[vec![b(2)]]).0;
        for s in algebra_corpus(&r, 16).unwrap().objects() {
            assert!(unit_counit_roundtrip(&n, s).unwrap(), "{}", s.name());
        }
    }

    #[test]
    fn naturality_over_triangular_ring() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let r: Ring = Arc::new(FiniteRing::triangular_ring(&f2, 2).unwrap());
        let corpus = algebra_corpus(&r, 16).unwrap();
        let n = ModulePres::regular(r.clone(), Side::Right);
        let m = ModulePres::regular(r.clone(), Side::Left);
        let ext = r_extension(&n, &m).unwrap();
        assert!(check_naturality(&ext, &corpus).unwrap().holds());
    }
}
