use std::sync::Arc;

use num_bigint::BigInt;

use super::{same_ring, FiniteRing, IdealSide, Ring, RingError};
use crate::linalg::{subgroup_generated, Elem, GroupMorphism, IntMatrix};

/// Unital ring homomorphism.
#[derive(Clone, Debug)]
pub struct RingMorphism {
    source: Ring,
    target: Ring,
    map: GroupMorphism,
}

impl RingMorphism {
    pub fn new(source: Ring, target: Ring, map: GroupMorphism) -> Result<Self, RingError> {
        if map.source() != source.additive() || map.target() != target.additive() {
            return Err(RingError::Shape("map does not match the rings".into()));
        }
        if map.apply(source.unit()) != *target.unit() {
            return Err(RingError::Axiom {
                law: "unit preservation",
                generators: vec![],
                detail: "1 is not sent to 1".into(),
            });
        }
        for i in 0..source.rank() {
            let gi = map.apply(&source.generator(i));
            for j in 0..source.rank() {
                let gj = map.apply(&source.generator(j));
                let lhs = map.apply(&source.structure_constants()[i][j]);
                if lhs != target.mul(&gi, &gj) {
                    return Err(RingError::Axiom {
                        law: "multiplicativity",
                        generators: vec![i, j],
                        detail: "image of a product differs from the product of images".into(),
                    });
                }
            }
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(r: Ring) -> Self {
        let map = GroupMorphism::identity(r.additive().clone());
        Self {
            source: r.clone(),
            target: r,
            map,
        }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn map(&self) -> &GroupMorphism {
        &self.map
    }

    pub fn apply(&self, x: &[BigInt]) -> Elem {
        self.map.apply(x)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &RingMorphism) -> Result<RingMorphism, RingError> {
        if !same_ring(&first.target, &self.source) {
            return Err(RingError::Shape("composition of non-matching ring maps".into()));
        }
        let map = self.map.compose(&first.map)?;
        Ok(RingMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            map,
        })
    }

    /// Equality as functions.
    pub fn same_as(&self, other: &RingMorphism) -> bool {
        same_ring(&self.source, &other.source)
            && same_ring(&self.target, &other.target)
            && self.map.matrix() == other.map.matrix()
    }
}

/// A ring together with a structure map from the base ring.
#[derive(Clone, Debug)]
pub struct Algebra {
    name: String,
    ring: Ring,
    structure: RingMorphism,
}

impl Algebra {
    pub fn new(name: impl Into<String>, structure: RingMorphism) -> Self {
        Self {
            name: name.into(),
            ring: structure.target().clone(),
            structure,
        }
    }

    /// The base ring over itself.
    pub fn base(r: Ring) -> Self {
        Self::new("R", RingMorphism::identity(r))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn base_ring(&self) -> &Ring {
        self.structure.source()
    }

    pub fn structure_map(&self) -> &RingMorphism {
        &self.structure
    }

    /// `σ(r)` for a base ring element `r`.
    pub fn structure_image(&self, r: &[BigInt]) -> Elem {
        self.structure.apply(r)
    }
}

/// An arrow between two corpus algebras, commuting with structure maps.
#[derive(Clone, Debug)]
pub struct AlgebraArrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub map: RingMorphism,
}

/// A finite family of algebras over a base ring and arrows between them.
#[derive(Clone, Debug)]
pub struct AlgebraMorphismCorpus {
    base: Ring,
    objects: Vec<Algebra>,
    arrows: Vec<AlgebraArrow>,
}

impl AlgebraMorphismCorpus {
    pub fn new(base: Ring, objects: Vec<Algebra>, arrows: Vec<AlgebraArrow>) -> Result<Self, RingError> {
        for o in &objects {
            if !same_ring(o.base_ring(), &base) {
                return Err(RingError::Invalid(format!("algebra {} has a different base", o.name)));
            }
        }
        for a in &arrows {
            let (Some(s), Some(t)) = (objects.get(a.source), objects.get(a.target)) else {
                return Err(RingError::Invalid(format!("arrow {} refers to a missing object", a.name)));
            };
            if !same_ring(a.map.source(), s.ring()) || !same_ring(a.map.target(), t.ring()) {
                return Err(RingError::Invalid(format!("arrow {} has the wrong endpoints", a.name)));
            }
            let lhs = a.map.compose(s.structure_map())?;
            if !lhs.same_as(t.structure_map()) {
                return Err(RingError::Invalid(format!(
                    "arrow {} does not commute with structure maps",
                    a.name
                )));
            }
        }
        Ok(Self { base, objects, arrows })
    }

    /// Only the base ring with its identity.
    pub fn trivial(base: Ring) -> Self {
        let id = RingMorphism::identity(base.clone());
        Self {
            objects: vec![Algebra::base(base.clone())],
            arrows: vec![AlgebraArrow {
                name: "id".into(),
                source: 0,
                target: 0,
                map: id,
            }],
            base,
        }
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn objects(&self) -> &[Algebra] {
        &self.objects
    }

    pub fn arrows(&self) -> &[AlgebraArrow] {
        &self.arrows
    }
}

impl FiniteRing {
    /// Quotient by the two-sided ideal generated by `gens`, with the projection.
    pub fn quotient_ring(self: &Ring, gens: &[Elem]) -> Result<(Ring, RingMorphism), RingError> {
        let g = self.additive();
        // close the additive span under two-sided multiplication by generators
        let mut span: Vec<Elem> = gens.to_vec();
        loop {
            let (_, incl) = subgroup_generated(g, &span);
            let basis = incl.images();
            let mut grown = basis.clone();
            for x in &basis {
                for k in 0..self.rank() {
                    let gk = self.generator(k);
                    grown.push(self.mul(x, &gk));
                    grown.push(self.mul(&gk, x));
                }
            }
            let (sub2, _) = subgroup_generated(g, &grown);
            let (sub1, _) = subgroup_generated(g, &basis);
            if sub1.order() == sub2.order() {
                span = basis;
                break;
            }
            span = grown;
        }
        let inclusion = {
            let (sub, incl) = subgroup_generated(g, &span);
            let _ = sub;
            incl
        };
        let (q, proj) = inclusion.cokernel();
        if q.is_trivial() {
            return Err(RingError::Invalid("quotient by the whole ring".into()));
        }
        let lift = crate::linalg::Solver::for_morphism(&proj);
        let lifts: Vec<Elem> = (0..q.rank())
            .map(|a| lift.solve(&q.generator(a)).expect("projection is surjective"))
            .collect();
        let mul: Vec<Vec<Elem>> = (0..q.rank())
            .map(|a| {
                (0..q.rank())
                    .map(|b| proj.apply(&self.mul(&g.reduce(&lifts[a]), &g.reduce(&lifts[b]))))
                    .collect()
            })
            .collect();
        let unit = proj.apply(self.unit());
        let qr = Arc::new(FiniteRing::new(q, mul, unit)?);
        let pm = RingMorphism::new(self.clone(), qr.clone(), proj)?;
        Ok((qr, pm))
    }
}

fn product_algebra(
    a: &Algebra,
    b: &Algebra,
) -> Result<(Algebra, RingMorphism, RingMorphism), RingError> {
    let (p, p1, p2) = FiniteRing::product_with_projections(a.ring(), b.ring())?;
    let p = Arc::new(p);
    // structure map r ↦ (σ_a(r), σ_b(r)), determined by a lift through the projections
    let base = a.base_ring().clone();
    let stacked_target = {
        let rows: Vec<Vec<BigInt>> = p1
            .matrix()
            .to_rows()
            .into_iter()
            .chain(p2.matrix().to_rows())
            .collect();
        IntMatrix::from_rows(&rows)?
    };
    let orders: Vec<BigInt> = [a.ring().additive().orders(), b.ring().additive().orders()].concat();
    let solver = crate::linalg::Solver::new(&stacked_target, &orders);
    let images: Vec<Elem> = (0..base.rank())
        .map(|i| {
            let g = base.generator(i);
            let y = [a.structure_image(&g), b.structure_image(&g)].concat();
            solver.solve(&y).map(|x| p.additive().reduce(&x))
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| RingError::Invalid("structure maps cannot be paired".into()))?;
    let sigma = GroupMorphism::from_images(base.additive().clone(), p.additive().clone(), &images)?;
    let sigma = RingMorphism::new(base, p.clone(), sigma)?;
    let pr1 = RingMorphism::new(p.clone(), a.ring().clone(), p1)?;
    let pr2 = RingMorphism::new(p, b.ring().clone(), p2)?;
    Ok((
        Algebra::new(format!("{}x{}", a.name(), b.name()), sigma),
        pr1,
        pr2,
    ))
}

fn dual_numbers_algebra(a: &Algebra) -> Result<(Algebra, RingMorphism), RingError> {
    let d = Arc::new(FiniteRing::dual_numbers(a.ring())?);
    // a[ε] is built on the basis (a, aε); find the inclusion a → a[ε] and ε ↦ 0
    let ar = a.ring();
    let candidates = find_dual_maps(ar, &d)?;
    let (incl, eps0) = candidates;
    let sigma = incl.compose(a.structure_map())?;
    Ok((Algebra::new(format!("{}[e]", a.name()), sigma), eps0))
}

/// The inclusion `A → A[ε]` and the retraction `A[ε] → A` killing ε, recovered
/// from the basis presentation used by the constructor.
fn find_dual_maps(ar: &Ring, d: &Ring) -> Result<(RingMorphism, RingMorphism), RingError> {
    let (m0, c0, u0) = (
        ar.additive().orders().to_vec(),
        ar.structure_constants().to_vec(),
        ar.unit().clone(),
    );
    let n0 = m0.len();
    let k = 2 * n0;
    let moduli = [m0.clone(), m0].concat();
    let mut mul = vec![vec![vec![BigInt::from(0); k]; k]; k];
    for (x, y, z) in [(0, 0, 0), (0, 1, 1), (1, 0, 1)] {
        for p in 0..n0 {
            for q in 0..n0 {
                mul[x * n0 + p][y * n0 + q][z * n0..(z + 1) * n0].clone_from_slice(&c0[p][q]);
            }
        }
    }
    let mut unit = vec![BigInt::from(0); k];
    unit[..n0].clone_from_slice(&u0);
    let (ring, pres) = FiniteRing::from_basis(&moduli, &mul, &unit)?;
    debug_assert!(ring == **d);
    let incl_images: Vec<Elem> = (0..n0)
        .map(|i| {
            let mut v = vec![BigInt::from(0); k];
            v[i] = BigInt::from(1);
            pres.encode(&v)
        })
        .collect();
    let incl = GroupMorphism::from_images(ar.additive().clone(), d.additive().clone(), &incl_images)?;
    let lift = pres.lift_matrix();
    let retr = lift.select_rows(&(0..n0).collect::<Vec<_>>());
    let retr = GroupMorphism::new(d.additive().clone(), ar.additive().clone(), retr)?;
    Ok((
        RingMorphism::new(ar.clone(), d.clone(), incl)?,
        RingMorphism::new(d.clone(), ar.clone(), retr)?,
    ))
}

/// A deterministic finite family of algebras over `r` with order at most
/// `order_bound`: `r` itself, its proper quotients, pairwise products, and for
/// commutative `r` the dual numbers over those; arrows are the structure maps,
/// quotient maps between quotients, product projections and swaps, and `ε ↦ 0`.
pub fn algebra_corpus(r: &Ring, order_bound: usize) -> Result<AlgebraMorphismCorpus, RingError> {
    let bound = BigInt::from(order_bound);
    if r.order() > bound {
        return Err(RingError::Invalid("order bound below the ring order".into()));
    }
    let mut objects: Vec<Algebra> = vec![Algebra::base(r.clone())];
    let mut arrows: Vec<AlgebraArrow> = vec![AlgebraArrow {
        name: "id".into(),
        source: 0,
        target: 0,
        map: RingMorphism::identity(r.clone()),
    }];
    // quotients by nonzero proper two-sided ideals
    let ideals = r.ideals(IdealSide::TwoSided, super::DEFAULT_ENUMERATION_BOUND.max(r.order_usize()))?;
    let proper: Vec<&super::Ideal> = ideals
        .iter()
        .filter(|i| !i.is_zero() && i.order() < r.order_usize())
        .collect();
    let mut quotient_of: Vec<(usize, usize)> = Vec::new(); // (ideal position, object index)
    for (pos, ideal) in proper.iter().enumerate() {
        let (q, proj) = r.quotient_ring(ideal.elements())?;
        let _ = q;
        let idx = objects.len();
        objects.push(Algebra::new(format!("R/I{}", pos), proj.clone()));
        arrows.push(AlgebraArrow {
            name: format!("R->R/I{}", pos),
            source: 0,
            target: idx,
            map: proj,
        });
        quotient_of.push((pos, idx));
    }
    // quotient maps R/I → R/J for I ⊊ J
    for &(pi, oi) in &quotient_of {
        for &(pj, oj) in &quotient_of {
            if pi == pj || !proper[pi].is_subset_of(proper[pj]) {
                continue;
            }
            let src = objects[oi].structure_map().clone();
            let tgt = objects[oj].structure_map().clone();
            // R/I → R/J induced on canonical generators of R/I via lifts
            let solver = crate::linalg::Solver::for_morphism(src.map());
            let images: Vec<Elem> = (0..src.target().rank())
                .map(|a| {
                    let l = solver.solve(&src.target().generator(a)).expect("surjective");
                    tgt.apply(&r.additive().reduce(&l))
                })
                .collect();
            let m = GroupMorphism::from_images(
                src.target().additive().clone(),
                tgt.target().additive().clone(),
                &images,
            )?;
            let map = RingMorphism::new(src.target().clone(), tgt.target().clone(), m)?;
            arrows.push(AlgebraArrow {
                name: format!("R/I{}->R/I{}", pi, pj),
                source: oi,
                target: oj,
                map,
            });
        }
    }
    // pairwise products (with repetition) of the objects so far
    let singles = objects.len();
    for i in 0..singles {
        for j in i..singles {
            let order = objects[i].ring().order() * objects[j].ring().order();
            if order > bound {
                continue;
            }
            let (p, pr1, pr2) = product_algebra(&objects[i], &objects[j])?;
            let idx = objects.len();
            arrows.push(AlgebraArrow {
                name: format!("R->{}", p.name()),
                source: 0,
                target: idx,
                map: p.structure_map().clone(),
            });
            arrows.push(AlgebraArrow {
                name: format!("{}->{}", p.name(), objects[i].name()),
                source: idx,
                target: i,
                map: pr1.clone(),
            });
            arrows.push(AlgebraArrow {
                name: format!("{}->{}", p.name(), objects[j].name()),
                source: idx,
                target: j,
                map: pr2.clone(),
            });
            if i == j {
                // swap factors: the map with pr1∘swap = pr2 and pr2∘swap = pr1
                let rows: Vec<Vec<BigInt>> = pr1.map().matrix().to_rows().into_iter().chain(pr2.map().matrix().to_rows()).collect();
                let stacked = IntMatrix::from_rows(&rows)?;
                let orders: Vec<BigInt> = [objects[i].ring().additive().orders(), objects[j].ring().additive().orders()].concat();
                let solver = crate::linalg::Solver::new(&stacked, &orders);
                let pa = p.ring().clone();
                let images: Vec<Elem> = (0..pa.rank())
                    .map(|k| {
                        let g = pa.generator(k);
                        let y = [pr2.apply(&g), pr1.apply(&g)].concat();
                        pa.additive().reduce(&solver.solve(&y).expect("product is the pullback"))
                    })
                    .collect();
                let swap = GroupMorphism::from_images(pa.additive().clone(), pa.additive().clone(), &images)?;
                let swap = RingMorphism::new(pa.clone(), pa, swap)?;
                arrows.push(AlgebraArrow {
                    name: format!("swap({})", p.name()),
                    source: idx,
                    target: idx,
                    map: swap,
                });
            }
            objects.push(p);
        }
    }
    // dual numbers over commutative singles
    if r.is_commutative() {
        for i in 0..singles {
            if objects[i].ring().order() * objects[i].ring().order() > bound {
                continue;
            }
            let (d, eps0) = dual_numbers_algebra(&objects[i])?;
            let idx = objects.len();
            arrows.push(AlgebraArrow {
                name: format!("R->{}", d.name()),
                source: 0,
                target: idx,
                map: d.structure_map().clone(),
            });
            arrows.push(AlgebraArrow {
                name: format!("{}->{}", d.name(), objects[i].name()),
                source: idx,
                target: i,
                map: eps0,
            });
            objects.push(d);
        }
    }
    AlgebraMorphismCorpus::new(r.clone(), objects, arrows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_corpus_contents() {
        let z4 = Arc::new(FiniteRing::cyclic(4).unwrap());
        let c = algebra_corpus(&z4, 16).unwrap();
        let orders: Vec<BigInt> = c.objects().iter().map(|a| a.ring().order()).collect();
        for want in [4, 2, 8, 16] {
            assert!(orders.contains(&BigInt::from(want)), "missing order {}", want);
        }
        assert!(c.arrows().iter().any(|a| a.source == 0 && a.map.target().order() == BigInt::from(2)));
    }

    #[test]
    fn minimal_bound_gives_base_only() {
        let f2 = Arc::new(FiniteRing::cyclic(2).unwrap());
        let c = algebra_corpus(&f2, 2).unwrap();
        assert_eq!(c.objects().len(), 1);
    }

    #[test]
    fn triangular_quotients() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let t = Arc::new(FiniteRing::triangular_ring(&f2, 2).unwrap());
        let c = algebra_corpus(&t, 8).unwrap();
        let simple = c
            .objects()
            .iter()
            .filter(|a| a.ring().order() == BigInt::from(2))
            .count();
        assert_eq!(simple, 2);
    }

    #[test]
    fn quotient_of_z4() {
        let z4 = Arc::new(FiniteRing::cyclic(4).unwrap());
        let (q, p) = z4.quotient_ring(&[vec![BigInt::from(2)]]).unwrap();
        assert_eq!(q.order(), BigInt::from(2));
        assert_eq!(p.apply(&[BigInt::from(3)]), vec![BigInt::from(1)]);
    }
}
