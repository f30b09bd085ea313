//! Kernels, images, cokernels and linear solving for maps of abelian groups.
//!
//! Everything reduces to integer systems `F·x + diag(b)·z = y`, which are solved
//! through the Smith form of `[F | diag(b)]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{
    reduce_mod, smith_parts, AbelianGroup, Elem, GroupMorphism, IntMatrix, LinalgError,
    Presentation, Sparse, Track,
};

/// `[F | diag(b)]`, dropping columns for zero moduli.
fn augmented(f: &IntMatrix, moduli: &[BigInt]) -> IntMatrix {
    let nz: Vec<usize> = (0..moduli.len()).filter(|&j| !moduli[j].is_zero()).collect();
    let mut m = IntMatrix::zeros(f.rows(), f.cols() + nz.len());
    for i in 0..f.rows() {
        for j in 0..f.cols() {
            m[(i, j)] = f[(i, j)].clone();
        }
    }
    for (k, &j) in nz.iter().enumerate() {
        m[(j, f.cols() + k)] = moduli[j].clone();
    }
    m
}

/// Reusable solver for `F·x ≡ y (mod b)`.
#[derive(Clone, Debug)]
pub struct Solver {
    unknowns: usize,
    u: IntMatrix,
    v: IntMatrix,
    diag: Vec<BigInt>,
    rank: usize,
}

impl Solver {
    /// `f` has one row per target coordinate; `moduli` are the target moduli.
    pub fn new(f: &IntMatrix, moduli: &[BigInt]) -> Self {
        assert_eq!(f.rows(), moduli.len(), "one modulus per row");
        let m = augmented(f, moduli);
        let parts = smith_parts(
            &m,
            Track {
                left: true,
                left_inverse: false,
                right: true,
            },
        );
        Self {
            unknowns: f.cols(),
            u: parts.u.expect("tracked"),
            v: parts.v.expect("tracked"),
            diag: parts.d.diagonal_entries(),
            rank: parts.rank,
        }
    }

    pub fn for_morphism(f: &GroupMorphism) -> Self {
        Self::new(f.matrix(), f.target().orders())
    }

    /// Some integer solution `x`, or `None` when the system is inconsistent.
    pub fn solve(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let yy = self.u.mul_vec(y);
        let mut w = vec![BigInt::zero(); self.v.rows()];
        for (i, c) in yy.iter().enumerate() {
            if i < self.rank {
                let (q, r) = c.div_rem(&self.diag[i]);
                if !r.is_zero() {
                    return None;
                }
                w[i] = q;
            } else if !c.is_zero() {
                return None;
            }
        }
        let full = self.v.mul_vec(&w);
        Some(full[..self.unknowns].to_vec())
    }

    /// Integer vectors spanning all solutions of the homogeneous system, projected
    /// to the unknowns.
    fn homogeneous_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank..self.v.cols())
            .map(|j| {
                let col = self.v.column(j);
                col[..self.unknowns].to_vec()
            })
            .collect()
    }
}

fn clean(mut gens: Vec<Vec<BigInt>>, moduli: &[BigInt]) -> Vec<Vec<BigInt>> {
    for g in gens.iter_mut() {
        for (x, m) in g.iter_mut().zip(moduli) {
            *x = reduce_mod(x, m);
        }
    }
    gens.retain(|g| g.iter().any(|x| !x.is_zero()));
    gens.sort();
    gens.dedup();
    gens
}

/// Generators of `{x ∈ ⊕ℤ/a : F·x ≡ 0 (mod b)}`, reduced modulo `a`.
pub(crate) fn kernel_generators(a: &[BigInt], f: &IntMatrix, b: &[BigInt]) -> Vec<Vec<BigInt>> {
    clean(Solver::new(f, b).homogeneous_basis(), a)
}

/// Presentation of the subgroup of `⊕ℤ/a` generated by `gens`, on those generators.
pub(crate) fn subgroup_presentation(a: &[BigInt], gens: &[Vec<BigInt>]) -> Presentation {
    let n = a.len();
    let g = IntMatrix::from_columns(n, gens).expect("generators live in the ambient");
    let relations: Vec<Sparse> = clean(Solver::new(&g, a).homogeneous_basis(), &vec![BigInt::zero(); gens.len()])
        .into_iter()
        .map(|v| {
            v.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect()
        })
        .collect();
    Presentation::new(gens.len(), relations).expect("indices are in range")
}

/// The subgroup generated by `gens`, as a canonical group with its inclusion.
pub fn subgroup_generated(ambient: &AbelianGroup, gens: &[Elem]) -> (AbelianGroup, GroupMorphism) {
    let gens = clean(gens.to_vec(), ambient.orders());
    let pres = subgroup_presentation(ambient.orders(), &gens);
    let g = IntMatrix::from_columns(ambient.rank(), &gens).expect("generators live in the ambient");
    let incl = g.mul(pres.lift_matrix()).expect("shapes agree");
    let sub = pres.group().clone();
    let incl = GroupMorphism::new(sub.clone(), ambient.clone(), incl)
        .expect("inclusion of a subgroup is well defined");
    (sub, incl)
}

/// Common kernel of several maps out of the same group.
pub fn joint_kernel(maps: &[&GroupMorphism]) -> Result<(AbelianGroup, GroupMorphism), LinalgError> {
    let Some(first) = maps.first() else {
        return Err(LinalgError::Shape("joint kernel of no maps".into()));
    };
    let source = first.source().clone();
    let mut moduli = Vec::new();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for f in maps {
        if *f.source() != source {
            return Err(LinalgError::Shape("maps with different sources".into()));
        }
        moduli.extend_from_slice(f.target().orders());
        rows.extend(f.matrix().to_rows());
    }
    let stacked = if rows.is_empty() {
        IntMatrix::zeros(0, source.rank())
    } else {
        IntMatrix::from_rows(&rows)?
    };
    let gens = kernel_generators(source.orders(), &stacked, &moduli);
    Ok(subgroup_generated(&source, &gens))
}

/// Whether `v` lies in the span of `gens` inside `ambient`.
pub fn span_contains(ambient: &AbelianGroup, gens: &[Elem], v: &[BigInt]) -> bool {
    let g = IntMatrix::from_columns(ambient.rank(), gens).expect("generators live in the ambient");
    Solver::new(&g, ambient.orders()).solve(v).is_some()
}

/// Whether two generating sets span the same subgroup of `ambient`.
pub fn subgroups_equal(ambient: &AbelianGroup, a: &[Elem], b: &[Elem]) -> bool {
    let contains_all = |big: &[Elem], small: &[Elem]| {
        let g = IntMatrix::from_columns(ambient.rank(), big).expect("generators live in the ambient");
        let s = Solver::new(&g, ambient.orders());
        small.iter().all(|v| s.solve(v).is_some())
    };
    contains_all(a, b) && contains_all(b, a)
}

impl GroupMorphism {
    /// Kernel with its (injective) inclusion into the source.
    pub fn kernel(&self) -> (AbelianGroup, GroupMorphism) {
        let gens = kernel_generators(self.source().orders(), self.matrix(), self.target().orders());
        subgroup_generated(self.source(), &gens)
    }

    /// Image with its inclusion into the target.
    pub fn image(&self) -> (AbelianGroup, GroupMorphism) {
        subgroup_generated(self.target(), &self.images())
    }

    /// Cokernel with the projection from the target.
    pub fn cokernel(&self) -> (AbelianGroup, GroupMorphism) {
        let m = self.target().rank();
        let mut rels: Vec<Sparse> = Vec::new();
        for col in self.images() {
            rels.push(col.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
        }
        for (j, d) in self.target().orders().iter().enumerate() {
            if !d.is_zero() {
                rels.push(vec![(j, d.clone())]);
            }
        }
        let pres = Presentation::new(m, rels).expect("indices are in range");
        let proj = pres
            .quotient_morphism(self.target())
            .expect("projection onto a quotient is well defined");
        (pres.group().clone(), proj)
    }

    /// Some `x` with `self(x) = y`, if one exists.
    pub fn solve(&self, y: &[BigInt]) -> Option<Elem> {
        Solver::for_morphism(self)
            .solve(y)
            .map(|x| self.source().reduce(&x))
    }

    /// Given an injective `incl` whose image contains the image of `self`, the
    /// unique `g` with `incl ∘ g = self`.
    pub fn factor_through(&self, incl: &GroupMorphism) -> Option<GroupMorphism> {
        let solver = Solver::for_morphism(incl);
        let cols = self
            .images()
            .iter()
            .map(|c| solver.solve(c).map(|x| incl.source().reduce(&x)))
            .collect::<Option<Vec<_>>>()?;
        GroupMorphism::from_images(self.source().clone(), incl.source().clone(), &cols).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn times(k: i64, n: u64) -> GroupMorphism {
        let g = AbelianGroup::cyclic(n);
        GroupMorphism::new(g.clone(), g, IntMatrix::from_rows(&[vec![k]]).unwrap()).unwrap()
    }

    #[test]
    fn times_two_on_z4() {
        let f = times(2, 4);
        let (k, incl) = f.kernel();
        assert_eq!(k.orders(), &[b(2)]);
        assert_eq!(incl.apply(&[b(1)]), vec![b(2)]);
        let (c, proj) = f.cokernel();
        assert_eq!(c.orders(), &[b(2)]);
        assert!(proj.compose(&f).unwrap().is_zero());
        let (i, _) = f.image();
        assert_eq!(i.orders(), &[b(2)]);
        let x = f.solve(&[b(2)]).unwrap();
        assert!(x == vec![b(1)] || x == vec![b(3)]);
        assert!(f.solve(&[b(1)]).is_none());
    }

    #[test]
    fn zero_and_identity() {
        let z = times(0, 4);
        assert_eq!(z.kernel().0.orders(), &[b(4)]);
        let id = times(1, 4);
        assert!(id.kernel().0.is_trivial());
        assert!(id.cokernel().0.is_trivial());
        assert_eq!(id.solve(&[b(3)]), Some(vec![b(3)]));
        let zero = GroupMorphism::zero(AbelianGroup::cyclic(2), AbelianGroup::cyclic(6));
        assert_eq!(zero.cokernel().0.orders(), &[b(6)]);
        assert!(zero.image().0.is_trivial());
    }

    #[test]
    fn joint_kernel_intersects() {
        let g = AbelianGroup::cyclic(12);
        let f = GroupMorphism::new(g.clone(), AbelianGroup::cyclic(4), IntMatrix::from_rows(&[vec![1]]).unwrap()).unwrap();
        let h = GroupMorphism::new(g.clone(), AbelianGroup::cyclic(3), IntMatrix::from_rows(&[vec![1]]).unwrap()).unwrap();
        let (k, _) = joint_kernel(&[&f, &h]).unwrap();
        assert!(k.is_trivial());
        let (k, _) = joint_kernel(&[&f]).unwrap();
        assert_eq!(k.orders(), &[b(3)]);
    }

    #[test]
    fn subgroup_equality() {
        let g = AbelianGroup::new(vec![b(2), b(4)]).unwrap();
        let a = vec![vec![b(1), b(2)], vec![b(0), b(2)]];
        let c = vec![vec![b(1), b(0)], vec![b(1), b(2)]];
        assert!(subgroups_equal(&g, &a, &c));
        assert!(!subgroups_equal(&g, &a, &[vec![b(0), b(1)]]));
    }
}
