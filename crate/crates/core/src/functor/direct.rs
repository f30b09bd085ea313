//! `𝒩^r(M)` straight from its definition as the kernel of
//! `N⊗_R R⟨M⟩ → N⊗_R R⟨M ⊕ Rx⟩`, `n⊗p ↦ n⊗(h_x(p) − in(p)·x)`, with `h_x(m) = m·x`.
//!
//! The source is truncated at degree `D` and the target at `D + 1`. The target
//! splits into summands indexed by the pattern of `M`/`Rx` letters in a word;
//! degree `n` of the source only reaches the patterns `(M x)ⁿ` (through `h_x`) and
//! `Mⁿ x` (through `·x`), so only those summands are built. They are disjoint for
//! different `n`, except that both coincide at `n = 1`, which makes the map block
//! diagonal by source degree.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{r_extension, FunctorError, WordSpace};
use crate::linalg::{joint_kernel, subgroups_equal, AbelianGroup, Elem, GroupMorphism, Presentation};
use crate::module::{ModulePres, Side, TensorProduct};

#[derive(Clone, Debug)]
pub struct DirectExtension {
    /// The kernel of the whole map.
    pub group: AbelianGroup,
    /// Kernel orders by source degree.
    pub degree_orders: Vec<BigInt>,
    /// Every kernel element lives in degree one.
    pub confined_to_degree_one: bool,
    /// The degree-one kernel is the image of `Ker(p₁ − p₂)` under the canonical
    /// identification `N⊗_R M⊗_ℤ R = N⊗_R (M⊗_ℤ R)`.
    pub equals_r_extension: bool,
}

enum Letter {
    M,
    X,
}

pub fn r_extension_direct(n: &ModulePres, m: &ModulePres, degree_bound: usize) -> Result<DirectExtension, FunctorError> {
    if degree_bound < 2 {
        return Err(FunctorError::Input(format!("degree bound {} is below 2", degree_bound)));
    }
    let n = n.as_side(Side::Right)?;
    let m = m.as_side(Side::Left)?;
    let ring = m.ring().clone();
    let reg = ModulePres::regular(ring.clone(), Side::Left);
    let unit = ring.unit().clone();
    let radd = ring.additive().clone();
    let id_n = GroupMorphism::identity(n.additive().clone());

    let space = |letters: &[Letter]| -> WordSpace {
        let mut f: Vec<AbelianGroup> = letters
            .iter()
            .map(|l| match l {
                Letter::M => m.additive().clone(),
                Letter::X => radd.clone(),
            })
            .collect();
        f.push(radd.clone());
        WordSpace::new(f)
    };
    let module = |w: &WordSpace, first: Option<&Letter>| -> Result<ModulePres, FunctorError> {
        let acts = match first {
            Some(Letter::M) => m.left_actions(),
            _ => reg.left_actions(),
        };
        w.left_module(&ring, acts)
    };

    let mut degree_kernels: Vec<(AbelianGroup, GroupMorphism)> = Vec::new();
    let mut degree_one: Option<(TensorProduct, WordSpace, GroupMorphism)> = None;
    for deg in 0..=degree_bound {
        let src_letters: Vec<Letter> = (0..deg).map(|_| Letter::M).collect();
        let src = space(&src_letters);
        let src_mod = module(&src, src_letters.first())?;
        let t_src = TensorProduct::new(&n, &src_mod)?;

        // n⊗(m₁⋯mₙ·r) ↦ n⊗(m₁ x m₂ x ⋯ mₙ x · r)
        let h_letters: Vec<Letter> = (0..deg).flat_map(|_| [Letter::M, Letter::X]).collect();
        // n⊗(m₁⋯mₙ·r) ↦ n⊗(m₁⋯mₙ·(r x)·1)
        let mut x_letters: Vec<Letter> = (0..deg).map(|_| Letter::M).collect();
        x_letters.push(Letter::X);

        let x_space = space(&x_letters);
        let x_images: Vec<Elem> = (0..src.num_words())
            .map(|w| {
                let t = src.tuple(w);
                let (l, ms) = t.split_last().expect("ring factor");
                let mut vecs: Vec<Elem> = ms.iter().map(|&i| m.additive().generator(i)).collect();
                vecs.push(radd.generator(*l));
                vecs.push(unit.clone());
                let refs: Vec<&[BigInt]> = vecs.iter().map(|v| v.as_slice()).collect();
                x_space.pure(&refs)
            })
            .collect();
        let x_map = src.presentation().morphism_from_generators(x_space.group(), &x_images)?;

        let h_map = if h_letters.len() <= degree_bound + 1 {
            let h_space = space(&h_letters);
            let images: Vec<Elem> = (0..src.num_words())
                .map(|w| {
                    let t = src.tuple(w);
                    let (l, ms) = t.split_last().expect("ring factor");
                    let mut vecs: Vec<Elem> = Vec::new();
                    for &i in ms {
                        vecs.push(m.additive().generator(i));
                        vecs.push(unit.clone());
                    }
                    vecs.push(radd.generator(*l));
                    let refs: Vec<&[BigInt]> = vecs.iter().map(|v| v.as_slice()).collect();
                    h_space.pure(&refs)
                })
                .collect();
            let map = src.presentation().morphism_from_generators(h_space.group(), &images)?;
            Some((h_space, map))
        } else {
            None
        };

        let lift = |w: &WordSpace, letters: &[Letter], map: &GroupMorphism| -> Result<GroupMorphism, FunctorError> {
            let target = module(w, letters.first())?;
            let t_tgt = TensorProduct::new(&n, &target)?;
            Ok(t_src.induced(&id_n, map, &t_tgt)?)
        };

        let kernel = if deg == 1 {
            let (_, h) = h_map.as_ref().expect("degree one is never truncated");
            let diff = h.sub(&x_map)?;
            let f = lift(&x_space, &x_letters, &diff)?;
            f.kernel()
        } else {
            let fx = lift(&x_space, &x_letters, &x_map)?;
            match &h_map {
                Some((hs, h)) => {
                    let fh = lift(hs, &h_letters, h)?;
                    joint_kernel(&[&fh, &fx])?
                }
                None => fx.kernel(),
            }
        };
        if deg == 1 {
            degree_one = Some((t_src.clone(), src.clone(), kernel.1.clone()));
        }
        degree_kernels.push(kernel);
    }

    let degree_orders: Vec<BigInt> = degree_kernels
        .iter()
        .map(|(k, _)| k.order().ok_or(crate::linalg::LinalgError::Infinite))
        .collect::<Result<_, _>>()?;
    let confined_to_degree_one = degree_kernels
        .iter()
        .enumerate()
        .all(|(d, (k, _))| d == 1 || k.is_trivial());
    let moduli: Vec<BigInt> = degree_kernels.iter().flat_map(|(k, _)| k.orders().iter().cloned()).collect();
    let group = Presentation::from_moduli(&moduli).group().clone();

    let (t1, s1, incl1) = degree_one.expect("degree one is always present");
    let ext = r_extension(&n, &m)?;
    // (p_c, g_l) in the ambient ↦ Σ λ n_a ⊗ (m_b ⊗ g_l) in N ⊗_R (M ⊗_ℤ R)
    let p = ext.tensor();
    let images: Vec<Elem> = (0..p.group().rank())
        .flat_map(|c| {
            let lam = p.presentation().lift(&p.group().generator(c));
            let rm = m.rank();
            let t1 = &t1;
            let s1 = &s1;
            let n = &n;
            (0..radd.rank()).map(move |l| {
                let mut acc = t1.group().zero();
                for (idx, v) in lam.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let (a, bb) = (idx / rm, idx % rm);
                    let word = s1.presentation().generator(s1.index(&[bb, l]));
                    let g = t1.pure(&n.additive().generator(a), &word);
                    acc = t1.group().add(&acc, &t1.group().scale(v, &g));
                }
                acc
            })
        })
        .collect();
    let iota = ext.ambient().from_generator_images(t1.group(), &images)?;
    if !iota.is_isomorphism() {
        return Err(FunctorError::Inconsistent("degree-one identification is not an isomorphism".into()));
    }
    let moved: Vec<Elem> = ext.kernel_generators().iter().map(|x| iota.apply(x)).collect();
    let equals_r_extension = subgroups_equal(t1.group(), &incl1.images(), &moved);
    Ok(DirectExtension {
        group,
        degree_orders,
        confined_to_degree_one,
        equals_r_extension,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ring::{FiniteRing, Ring};

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn z2_z2_over_z4_at_degrees_two_and_three() {
        let r: Ring = Arc::new(FiniteRing::cyclic(4).unwrap());
        let n = ModulePres::regular(r.clone(), Side::Right).quotient(&[vec![b(2)]]).0;
        let m = ModulePres::regular(r.clone(), Side::Left).quotient(&[vec![b(2)]]).0;
        for d in [2, 3] {
            let e = r_extension_direct(&n, &m, d).unwrap();
            assert_eq!(e.group.orders(), &[b(2)]);
            assert!(e.confined_to_degree_one && e.equals_r_extension);
        }
        assert!(matches!(r_extension_direct(&n, &m, 1), Err(FunctorError::Input(_))));
    }

    #[test]
    fn zero_right_module_gives_zero() {
        let r: Ring = Arc::new(FiniteRing::cyclic(6).unwrap());
        let z = ModulePres::zero(r.clone(), Side::Right);
        let m = ModulePres::regular(r, Side::Left);
        let e = r_extension_direct(&z, &m, 2).unwrap();
        assert!(e.group.is_trivial() && e.equals_r_extension);
    }

    #[test]
    fn triangular_pair() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let r: Ring = Arc::new(FiniteRing::triangular_ring(&f2, 2).unwrap());
        let rid = r.right_ideals().unwrap();
        let lid = r.left_ideals().unwrap();
        let n = ModulePres::cyclic(r.clone(), &rid[2]);
        let m = ModulePres::cyclic(r.clone(), &lid[1]);
        let e = r_extension_direct(&n, &m, 2).unwrap();
        assert!(e.confined_to_degree_one && e.equals_r_extension);
    }
}
