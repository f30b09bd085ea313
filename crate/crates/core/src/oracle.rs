//! Brute-force reference computations on element tables.
//!
//! Nothing here goes through presentations or Smith forms: modules are turned
//! into addition and action tables on element indices, and maps are found by
//! trying every assignment of images to a generating set.

use std::collections::BTreeSet;

use crate::linalg::Elem;
use crate::module::{ModuleError, ModulePres, Side};

/// Addition and action tables of a finite module.
struct Tables {
    size: usize,
    add: Vec<usize>,
    /// `act[r][x]` for every ring element `r`, on the module's primary side.
    act: Vec<Vec<usize>>,
    /// Right action when the module is a bimodule.
    right: Vec<Vec<usize>>,
    elements: Vec<Elem>,
}

impl Tables {
    fn new(m: &ModulePres, limit: usize) -> Result<Self, ModuleError> {
        let g = m.additive();
        let size = g
            .order_usize()
            .filter(|&s| s <= limit)
            .ok_or_else(|| ModuleError::Refused(format!("module of order {:?} exceeds the oracle limit {}", g.order(), limit)))?;
        let elements: Vec<Elem> = g.elements()?.collect();
        let idx = |x: &Elem| g.index_of(x).expect("finite group");
        let mut add = vec![0; size * size];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                add[i * size + j] = idx(&g.add(a, b));
            }
        }
        let ring: Vec<Elem> = m.ring().elements().collect();
        let table = |f: &dyn Fn(&Elem, &Elem) -> Elem| -> Vec<Vec<usize>> {
            ring.iter()
                .map(|r| elements.iter().map(|x| idx(&f(r, x))).collect())
                .collect()
        };
        let (act, right) = match m.side() {
            Side::Left => (table(&|r, x| m.act_left(r, x)), Vec::new()),
            Side::Right => (table(&|r, x| m.act_right(x, r)), Vec::new()),
            Side::Bi => (table(&|r, x| m.act_left(r, x)), table(&|r, x| m.act_right(x, r))),
        };
        Ok(Self {
            size,
            add,
            act,
            right,
            elements,
        })
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    /// Greedy generating set on the primary side, with the chain of spans it builds.
    fn generators(&self) -> Vec<usize> {
        let mut span = vec![false; self.size];
        span[0] = true;
        let mut members = vec![0usize];
        let mut gens = Vec::new();
        while members.len() < self.size {
            // the element whose cyclic submodule adds the most
            let best = (0..self.size)
                .filter(|&x| !span[x])
                .max_by_key(|&x| {
                    let c: BTreeSet<usize> = self.act.iter().map(|row| row[x]).collect();
                    (c.len(), std::cmp::Reverse(x))
                })
                .expect("span is proper");
            let mut next = Vec::new();
            for &s in &members {
                for row in &self.act {
                    let e = self.add(s, row[best]);
                    if !span[e] {
                        span[e] = true;
                        next.push(e);
                    }
                }
            }
            members.extend(next);
            gens.push(best);
        }
        gens
    }
}

/// Every module map `M → N`, each given by the images of the canonical
/// generators of `M`'s additive group. Both modules must have order at most `limit`.
pub fn brute_force_hom(m: &ModulePres, n: &ModulePres, limit: usize) -> Result<BTreeSet<Vec<Elem>>, ModuleError> {
    if m.side() != n.side() {
        return Err(ModuleError::Side("oracle needs modules on the same side".into()));
    }
    if *m.ring() != *n.ring() {
        return Err(ModuleError::RingMismatch);
    }
    let tm = Tables::new(m, limit)?;
    let tn = Tables::new(n, limit)?;
    let gens = tm.generators();
    let gen_positions: Vec<usize> = (0..m.rank())
        .map(|i| m.additive().index_of(&m.additive().generator(i)).expect("finite group"))
        .collect();
    let mut out = BTreeSet::new();
    let total = tn.size.checked_pow(gens.len() as u32).unwrap_or(usize::MAX);
    let mut f = vec![usize::MAX; tm.size];
    for code in 0..total {
        let mut c = code;
        let images: Vec<usize> = gens
            .iter()
            .map(|_| {
                let y = c % tn.size;
                c /= tn.size;
                y
            })
            .collect();
        if let Some(f) = extend(&tm, &tn, &gens, &images, &mut f) {
            if is_module_map(&tm, &tn, f) {
                out.insert(gen_positions.iter().map(|&p| tn.elements[f[p]].clone()).collect());
            }
        }
    }
    Ok(out)
}

/// Extends `gᵢ ↦ yᵢ` along the span chain, or `None` if some element would get two values.
fn extend<'a>(tm: &Tables, tn: &Tables, gens: &[usize], images: &[usize], f: &'a mut [usize]) -> Option<&'a [usize]> {
    f.iter_mut().for_each(|v| *v = usize::MAX);
    f[0] = 0;
    let mut members = vec![0usize];
    for (&x, &y) in gens.iter().zip(images) {
        let mut next = Vec::new();
        for &s in &members {
            for (rx, ry) in tm.act.iter().zip(&tn.act) {
                let e = tm.add(s, rx[x]);
                let v = tn.add(f[s], ry[y]);
                if f[e] == usize::MAX {
                    f[e] = v;
                    next.push(e);
                } else if f[e] != v {
                    return None;
                }
            }
        }
        members.extend(next);
    }
    Some(f)
}

fn is_module_map(tm: &Tables, tn: &Tables, f: &[usize]) -> bool {
    let additive = (0..tm.size).all(|a| (0..tm.size).all(|b| f[tm.add(a, b)] == tn.add(f[a], f[b])));
    let equivariant = |am: &[Vec<usize>], an: &[Vec<usize>]| {
        am.iter().zip(an).all(|(rm, rn)| (0..tm.size).all(|x| f[rm[x]] == rn[f[x]]))
    };
    additive && equivariant(&tm.act, &tn.act) && equivariant(&tm.right, &tn.right)
}

/// The module maps found by [`crate::module::hom_module`], in the same form as
/// [`brute_force_hom`].
pub fn computed_hom(m: &ModulePres, n: &ModulePres) -> Result<BTreeSet<Vec<Elem>>, ModuleError> {
    let hom = crate::module::hom_module(m, n)?;
    let set = hom
        .morphisms()?
        .map(|f| (0..m.rank()).map(|i| f.apply(&m.additive().generator(i))).collect())
        .collect();
    Ok(set)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_bigint::BigInt;

    use super::*;
    use crate::ring::{FiniteRing, Ring};

    #[test]
    fn matches_hom_module_over_z4() {
        let r: Ring = Arc::new(FiniteRing::cyclic(4).unwrap());
        let z2 = ModulePres::regular(r.clone(), Side::Left).quotient(&[vec![BigInt::from(2)]]).0;
        let free = ModulePres::free(r, 2, Side::Left);
        for (a, b) in [(&z2, &free), (&free, &z2), (&free, &free), (&z2, &z2)] {
            let brute = brute_force_hom(a, b, 64).unwrap();
            assert_eq!(brute, computed_hom(a, b).unwrap());
        }
        assert_eq!(brute_force_hom(&z2, &free, 64).unwrap().len(), 4);
    }

    #[test]
    fn triangular_right_modules() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let r: Ring = Arc::new(FiniteRing::triangular_ring(&f2, 2).unwrap());
        let reg = ModulePres::regular(r.clone(), Side::Right);
        for i in r.right_ideals().unwrap() {
            let q = ModulePres::cyclic(r.clone(), &i);
            assert_eq!(brute_force_hom(&reg, &q, 64).unwrap(), computed_hom(&reg, &q).unwrap());
            assert_eq!(brute_force_hom(&q, &reg, 64).unwrap(), computed_hom(&q, &reg).unwrap());
        }
    }

    #[test]
    fn refuses_large_modules() {
        let r: Ring = Arc::new(FiniteRing::cyclic(4).unwrap());
        let m = ModulePres::free(r, 4, Side::Left);
        assert!(matches!(brute_force_hom(&m, &m, 64), Err(ModuleError::Refused(_))));
    }
}
