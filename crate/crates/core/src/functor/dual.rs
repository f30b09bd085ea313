use std::collections::{BTreeMap, BTreeSet};

use super::{comparison_map, evaluation_map, r_extension, ComparisonMap, FunctorError, RExtension};
use crate::linalg::{joint_kernel, AbelianGroup, Elem, GroupMorphism};
use crate::module::{
    algebra_as_bimodule, algebra_as_left_module, algebra_as_right_module, base_change, dual_module, hom_module, BaseChange,
    ModuleHom, ModulePres, Side, TensorProduct, ZTensor,
};
use crate::ring::Algebra;

/// `S ↦ S ⊗_R M`.
#[derive(Clone, Debug)]
pub struct QcFunctor {
    pub module: ModulePres,
}

impl QcFunctor {
    pub fn eval(&self, s: &Algebra) -> Result<BaseChange, FunctorError> {
        Ok(base_change(s, &self.module)?)
    }
}

/// `S ↦ Hom_R(M, S)`, for a left or right module `M`.
#[derive(Clone, Debug)]
pub struct SchemeFunctor {
    pub module: ModulePres,
}

impl SchemeFunctor {
    pub fn eval(&self, s: &Algebra) -> Result<ModuleHom, FunctorError> {
        let target = match self.module.side() {
            Side::Right => algebra_as_right_module(s),
            _ => algebra_as_left_module(s),
        };
        let m = if self.module.side() == Side::Bi { self.module.as_side(Side::Left)? } else { self.module.clone() };
        Ok(hom_module(&m, &target)?)
    }
}

/// A double-dual evaluation: `𝒩^r(M)` with `N = S`, and the comparison from `S ⊗ M`.
#[derive(Clone, Debug)]
pub struct DoubleDual {
    pub extension: RExtension,
    pub canonical: ComparisonMap,
}

impl DoubleDual {
    pub fn group(&self) -> &AbelianGroup {
        self.extension.kernel()
    }
}

/// `𝓜^{∨∨}(S) = 𝓜^r(S)`, computed as `r_extension(S_R, M)`.
pub fn double_dual_eval(m: &ModulePres, s: &Algebra) -> Result<DoubleDual, FunctorError> {
    let sr = algebra_as_right_module(s);
    let extension = r_extension(&sr, m)?;
    let canonical = comparison_map(&extension)?;
    Ok(DoubleDual { extension, canonical })
}

/// `𝓜^{**}(S)`: base change `M` to `S` and take `r_extension` over `S` with `N = S`.
/// Also checks that `S ⊗_S (S ⊗_R M)` has the invariants of `S ⊗_R M`.
pub fn star_double_dual_eval(m: &ModulePres, s: &Algebra) -> Result<DoubleDual, FunctorError> {
    let bc = base_change(s, m)?;
    let ms = bc.module();
    let n = ModulePres::regular(s.ring().clone(), Side::Right);
    let extension = r_extension(&n, ms)?;
    if extension.tensor().group() != ms.additive() {
        return Err(FunctorError::Inconsistent("S ⊗_S (S ⊗_R M) differs from S ⊗_R M".into()));
    }
    let canonical = comparison_map(&extension)?;
    Ok(DoubleDual { extension, canonical })
}

/// `Ψ: S ⊗_R M → Hom_R(M*, S)`, `s⊗m ↦ (f ↦ s·σ(f(m)))`.
pub fn scheme_comparison(m: &ModulePres, s: &Algebra) -> Result<GroupMorphism, FunctorError> {
    let m = m.as_side(Side::Left)?;
    let dual = dual_module(&m)?;
    let sr = algebra_as_right_module(s);
    let hom = hom_module(dual.module(), &sr)?;
    let bc = base_change(s, &m)?;
    let t = bc.tensor();
    let sring = s.ring();
    let dgroup = dual.module().additive();
    let mut images = Vec::with_capacity(sring.rank() * m.rank());
    for a in 0..sring.rank() {
        let sa = sring.additive().generator(a);
        for b in 0..m.rank() {
            let mb = m.additive().generator(b);
            let cols: Vec<Elem> = (0..dgroup.rank())
                .map(|j| {
                    let fm = dual.eval(&dgroup.generator(j), &mb);
                    sring.mul(&sa, &s.structure_image(&fm))
                })
                .collect();
            let g = GroupMorphism::from_images(dgroup.clone(), sring.additive().clone(), &cols)?;
            let coords = hom
                .encode(&g)
                .ok_or_else(|| FunctorError::Inconsistent("Ψ(s⊗m) is not right linear".into()))?;
            images.push(coords);
        }
    }
    Ok(t.presentation().morphism_from_generators(hom.group(), &images)?)
}

/// Maps `s⊗m ↦ s·σ(h(m))` for generators `h` of `Hom_R(M, R)`. Their joint kernel
/// is the kernel of `S ⊗_R M → ∏_{h ∈ Hom_R(M,R)} S`, since the components are
/// additive in `h`.
pub fn product_embedding(m: &ModulePres, s: &Algebra) -> Result<(AbelianGroup, Vec<GroupMorphism>), FunctorError> {
    let m = m.as_side(Side::Left)?;
    let ring = m.ring().clone();
    let hom = hom_module(&m, &ModulePres::regular(ring.clone(), Side::Left))?;
    let bc = base_change(s, &m)?;
    let t = bc.tensor();
    let sring = s.ring();
    let maps = hom
        .generators()
        .iter()
        .map(|h| {
            let mut images = Vec::new();
            for a in 0..sring.rank() {
                let sa = sring.additive().generator(a);
                for b in 0..m.rank() {
                    let hm = h.apply(&m.additive().generator(b));
                    images.push(sring.mul(&sa, &s.structure_image(&hm)));
                }
            }
            Ok(t.presentation().morphism_from_generators(sring.additive(), &images)?)
        })
        .collect::<Result<Vec<_>, FunctorError>>()?;
    if maps.is_empty() {
        return Ok((t.group().clone(), maps));
    }
    let refs: Vec<&GroupMorphism> = maps.iter().collect();
    Ok((joint_kernel(&refs)?.0, maps))
}

/// Checks `Hom_R(M, S) ≅ Hom_S(S ⊗_R M, S)` through `g ↦ (m ↦ g(1⊗m))`.
pub fn dual_coincidence(m: &ModulePres, s: &Algebra) -> Result<bool, FunctorError> {
    let m = m.as_side(Side::Left)?;
    let scheme = SchemeFunctor { module: m.clone() }.eval(s)?;
    let bc = base_change(s, &m)?;
    let star = hom_module(bc.module(), &ModulePres::regular(s.ring().clone(), Side::Left))?;
    let one = s.ring().unit().clone();
    let cols = star
        .generators()
        .iter()
        .map(|g| {
            let imgs: Vec<Elem> = (0..m.rank()).map(|b| g.apply(&bc.pure(&one, &m.additive().generator(b)))).collect();
            let f = GroupMorphism::from_images(m.additive().clone(), s.ring().additive().clone(), &imgs)?;
            scheme
                .encode(&f)
                .ok_or_else(|| FunctorError::Inconsistent("restriction of an S-linear map is not R-linear".into()))
        })
        .collect::<Result<Vec<_>, FunctorError>>()?;
    let map = GroupMorphism::from_images(star.group().clone(), scheme.group().clone(), &cols)?;
    Ok(map.is_isomorphism())
}

/// Result of the factorization test over all `φ ∈ 𝒩^r(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationOutcome {
    pub checked: usize,
    /// Ambient coordinates of the first `φ` that does not factor.
    pub violation: Option<Elem>,
}

/// For every `φ ∈ 𝒩^r(M)`: with `Q ⊆ N` the image of `h ↦ E_h(φ)` on
/// `Hom_R(M, R)` (evaluation at `S = R`), tests whether `φ` lies in the image of
/// `𝒬^r(M) → 𝒩^r(M)`.
pub fn factorization_search(n: &ModulePres, m: &ModulePres, limit: usize) -> Result<FactorizationOutcome, FunctorError> {
    let ext = r_extension(n, m)?;
    let n = ext.right_module().clone();
    let m = ext.left_module().clone();
    let ring = m.ring().clone();
    let count = ext.kernel().order_usize().filter(|&c| c <= limit);
    let Some(_) = count else {
        return Err(FunctorError::Input(format!("𝒩^r(M) of order {:?} exceeds the enumeration limit {}", ext.kernel().order(), limit)));
    };
    let base = Algebra::base(ring.clone());
    let rb = algebra_as_bimodule(&base);
    let nr = TensorProduct::new(&n, &rb)?;
    // N ⊗_R R → N, n⊗r ↦ n·r
    let mult_images: Vec<Elem> = (0..n.rank())
        .flat_map(|a| {
            let n = &n;
            let ring = &ring;
            (0..ring.rank()).map(move |b| n.act_right(&n.additive().generator(a), &ring.generator(b)))
        })
        .collect();
    let mult = nr.presentation().morphism_from_generators(n.additive(), &mult_images)?;
    let hom = hom_module(&m, &ModulePres::regular(ring.clone(), Side::Left))?;
    let evals = hom
        .generators()
        .iter()
        .map(|h| Ok(mult.compose(&evaluation_map(&ext, &rb, h.map(), &nr)?)?))
        .collect::<Result<Vec<_>, FunctorError>>()?;

    let id_m = GroupMorphism::identity(m.additive().clone());
    let id_r = GroupMorphism::identity(ring.additive().clone());
    let mut images_by_q: BTreeMap<BTreeSet<Elem>, Vec<Elem>> = BTreeMap::new();
    let mut checked = 0;
    for x in ext.kernel().elements()? {
        let phi = ext.inclusion().apply(&x);
        let gens: Vec<Elem> = evals.iter().map(|e| e.apply(&phi)).collect();
        let (q, qincl) = n.submodule(&gens);
        let key: BTreeSet<Elem> = q.additive().elements()?.map(|y| qincl.apply(&y)).collect();
        if !images_by_q.contains_key(&key) {
            let qext = r_extension(&q, &m)?;
            let pq = qext.tensor().induced(qincl.map(), &id_m, ext.tensor())?;
            let aq: &ZTensor = qext.ambient();
            let to_ambient = aq.induced(&pq, &id_r, ext.ambient())?;
            let imgs: Vec<Elem> = qext.kernel_generators().iter().map(|k| to_ambient.apply(k)).collect();
            images_by_q.insert(key.clone(), imgs);
        }
        let imgs = &images_by_q[&key];
        checked += 1;
        if !crate::linalg::span_contains(ext.ambient().group(), imgs, &phi) {
            return Ok(FactorizationOutcome {
                checked,
                violation: Some(phi),
            });
        }
    }
    Ok(FactorizationOutcome { checked, violation: None })
}
