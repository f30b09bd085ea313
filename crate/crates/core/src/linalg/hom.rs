//! Groups of additive maps cut out by linear congruences on their matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::lattice::{kernel_generators, subgroup_generated};
use super::{reduce_mod, AbelianGroup, Elem, ElementIter, GroupMorphism, IntMatrix, LinalgError, Solver};

/// A family of congruences `Σₖ coefficients[c][k]·Xₖ ≡ rhs[c] (mod moduli[c])`.
///
/// Unknowns are the entries of the matrix of a map `source → target`, indexed
/// row-major: entry `(j, i)` is unknown `j·source.rank() + i`.
#[derive(Clone, Debug)]
pub struct LinearCondition {
    pub moduli: Vec<BigInt>,
    pub coefficients: Vec<Vec<BigInt>>,
    /// `None` for a homogeneous system.
    pub rhs: Option<Vec<BigInt>>,
}

impl LinearCondition {
    pub fn homogeneous(moduli: Vec<BigInt>, coefficients: Vec<Vec<BigInt>>) -> Self {
        Self {
            moduli,
            coefficients,
            rhs: None,
        }
    }
}

/// The set of maps satisfying a congruence system: a coset `particular + G`,
/// or empty when the system is inconsistent.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: AbelianGroup,
    target: AbelianGroup,
    group: AbelianGroup,
    /// unknowns × rank(group)
    basis: IntMatrix,
    particular: Option<Vec<BigInt>>,
}

impl HomSpace {
    /// Group of solutions of the homogeneous system.
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    /// Number of solutions, when finite.
    pub fn count(&self) -> Option<BigInt> {
        if self.is_empty() {
            Some(BigInt::zero())
        } else {
            self.group.order()
        }
    }

    fn unknown_modulus(&self, k: usize) -> &BigInt {
        &self.target.orders()[k / self.source.rank()]
    }

    /// The map with coordinates `x` in the solution group.
    pub fn decode(&self, x: &[BigInt]) -> Option<GroupMorphism> {
        let p = self.particular.as_ref()?;
        let v = self.basis.mul_vec(x);
        let (m, n) = (self.target.rank(), self.source.rank());
        let data: Vec<BigInt> = (0..m * n)
            .map(|k| reduce_mod(&(&v[k] + &p[k]), self.unknown_modulus(k)))
            .collect();
        let mat = IntMatrix::new(m, n, data).expect("shape from construction");
        Some(GroupMorphism::new(self.source.clone(), self.target.clone(), mat).expect("solutions are well defined"))
    }

    /// Coordinates of a solution map in the solution group.
    pub fn encode(&self, f: &GroupMorphism) -> Option<Elem> {
        let p = self.particular.as_ref()?;
        if f.source() != &self.source || f.target() != &self.target {
            return None;
        }
        let diff: Vec<BigInt> = f.matrix().entries().iter().zip(p).map(|(a, b)| a - b).collect();
        let moduli: Vec<BigInt> = (0..diff.len()).map(|k| self.unknown_modulus(k).clone()).collect();
        Solver::new(&self.basis, &moduli)
            .solve(&diff)
            .map(|x| self.group.reduce(&x))
    }

    /// Every solution exactly once, in the enumeration order of the solution group.
    pub fn maps(&self) -> Result<impl Iterator<Item = GroupMorphism> + '_, LinalgError> {
        let it: ElementIter = self.group.elements()?;
        let empty = self.is_empty();
        Ok(it.filter(move |_| !empty).map(move |x| self.decode(&x).expect("nonempty")))
    }

    /// Images of the generators of the solution group, as maps.
    pub fn generators(&self) -> Vec<GroupMorphism> {
        if self.is_empty() {
            return Vec::new();
        }
        (0..self.group.rank())
            .map(|i| {
                let x = self.group.generator(i);
                let v = self.basis.mul_vec(&x);
                let (m, n) = (self.target.rank(), self.source.rank());
                let mat = IntMatrix::new(m, n, v).expect("shape from construction");
                GroupMorphism::new(self.source.clone(), self.target.clone(), mat).expect("solutions are well defined")
            })
            .collect()
    }

    /// Matrix whose columns are the generator maps in unknown coordinates.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }
}

/// Solves a congruence system over the entries of a map `source → target`.
///
/// Well-definedness (`ord(sᵢ)·X_{ji} ≡ 0 mod ord(tⱼ)`) is imposed automatically.
pub fn constrained_hom_group(
    source: &AbelianGroup,
    target: &AbelianGroup,
    conditions: &[LinearCondition],
) -> Result<HomSpace, LinalgError> {
    let (m, n) = (target.rank(), source.rank());
    let unknowns = m * n;
    let unknown_moduli: Vec<BigInt> = (0..unknowns).map(|k| target.orders()[k / n.max(1)].clone()).collect();

    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut moduli: Vec<BigInt> = Vec::new();
    let mut rhs: Vec<BigInt> = Vec::new();
    let mut affine = false;
    for (ci, cond) in conditions.iter().enumerate() {
        if cond.coefficients.len() != cond.moduli.len() {
            return Err(LinalgError::Shape(format!(
                "condition {}: {} coefficient rows for {} moduli",
                ci,
                cond.coefficients.len(),
                cond.moduli.len()
            )));
        }
        if let Some(r) = &cond.rhs {
            if r.len() != cond.moduli.len() {
                return Err(LinalgError::Shape(format!("condition {}: right-hand side length", ci)));
            }
        }
        for (ri, row) in cond.coefficients.iter().enumerate() {
            if row.len() != unknowns {
                return Err(LinalgError::Shape(format!(
                    "condition {} row {}: {} coefficients for {} unknowns",
                    ci,
                    ri,
                    row.len(),
                    unknowns
                )));
            }
            let mu = &cond.moduli[ri];
            for (k, c) in row.iter().enumerate() {
                let b = &unknown_moduli[k];
                let ok = c.is_zero() || b.is_zero() || (!mu.is_zero() && (c * b).is_multiple_of(mu));
                if !ok {
                    return Err(LinalgError::IllDefined(format!(
                        "condition {} row {} depends on the representative of unknown {}",
                        ci, ri, k
                    )));
                }
            }
            rows.push(row.clone());
            moduli.push(mu.clone());
            match &cond.rhs {
                Some(r) => {
                    affine = true;
                    rhs.push(r[ri].clone());
                }
                None => rhs.push(BigInt::zero()),
            }
        }
    }
    for j in 0..m {
        for i in 0..n {
            let a = &source.orders()[i];
            let b = &target.orders()[j];
            if a.is_zero() || b.is_zero() || a.is_multiple_of(b) {
                continue;
            }
            let mut row = vec![BigInt::zero(); unknowns];
            row[j * n + i] = a.clone();
            rows.push(row);
            moduli.push(b.clone());
            rhs.push(BigInt::zero());
        }
    }
    // an ℤ coordinate in the target cannot receive a finite-order generator
    for j in 0..m {
        for i in 0..n {
            if target.orders()[j].is_zero() && !source.orders()[i].is_zero() {
                let mut row = vec![BigInt::zero(); unknowns];
                row[j * n + i] = BigInt::from(1);
                rows.push(row);
                moduli.push(BigInt::zero());
                rhs.push(BigInt::zero());
            }
        }
    }

    let ambient = {
        // the unknowns form ⊕ ℤ/ord(t_j), which need not be canonical
        let pres = super::Presentation::from_moduli(&unknown_moduli);
        (pres.group().clone(), pres)
    };
    let coeff = if rows.is_empty() {
        IntMatrix::zeros(0, unknowns)
    } else {
        IntMatrix::from_rows(&rows)?
    };
    let gens = kernel_generators(&unknown_moduli, &coeff, &moduli);
    // express the solution subgroup canonically, then pull back to unknown coordinates
    let (canon, pres) = ambient;
    let canon_gens: Vec<Elem> = gens.iter().map(|g| pres.encode(g)).collect();
    let (group, incl) = subgroup_generated(&canon, &canon_gens);
    let basis = pres.lift_matrix().mul(incl.matrix())?;
    let basis = reduce_columns(basis, &unknown_moduli);

    let particular = if affine {
        Solver::new(&coeff, &moduli).solve(&rhs).map(|x| {
            x.iter()
                .zip(&unknown_moduli)
                .map(|(v, b)| reduce_mod(v, b))
                .collect()
        })
    } else {
        Some(vec![BigInt::zero(); unknowns])
    };
    Ok(HomSpace {
        source: source.clone(),
        target: target.clone(),
        group,
        basis,
        particular,
    })
}

fn reduce_columns(mut m: IntMatrix, moduli: &[BigInt]) -> IntMatrix {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = reduce_mod(&m[(i, j)], &moduli[i]);
            m[(i, j)] = v;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn unconstrained_endomorphisms_of_z4() {
        let z4 = AbelianGroup::cyclic(4);
        let h = constrained_hom_group(&z4, &z4, &[]).unwrap();
        assert_eq!(h.group().orders(), &[b(4)]);
        assert_eq!(h.maps().unwrap().count(), 4);
    }

    #[test]
    fn congruence_cuts_down() {
        let z4 = AbelianGroup::cyclic(4);
        let c = LinearCondition::homogeneous(vec![b(4)], vec![vec![b(2)]]);
        let h = constrained_hom_group(&z4, &z4, &[c]).unwrap();
        assert_eq!(h.group().orders(), &[b(2)]);
        let mut vals: Vec<BigInt> = h.maps().unwrap().map(|f| f.matrix()[(0, 0)].clone()).collect();
        vals.sort();
        assert_eq!(vals, vec![b(0), b(2)]);
        for f in h.maps().unwrap() {
            let x = h.encode(&f).unwrap();
            assert_eq!(h.decode(&x).unwrap(), f);
        }
    }

    #[test]
    fn inconsistent_affine_system_is_empty() {
        let z4 = AbelianGroup::cyclic(4);
        let c = LinearCondition {
            moduli: vec![b(4)],
            coefficients: vec![vec![b(2)]],
            rhs: Some(vec![b(1)]),
        };
        let h = constrained_hom_group(&z4, &z4, &[c]).unwrap();
        assert!(h.is_empty());
        assert_eq!(h.maps().unwrap().count(), 0);
        assert_eq!(h.count(), Some(b(0)));
    }

    #[test]
    fn well_definedness_is_automatic() {
        let h = constrained_hom_group(&AbelianGroup::cyclic(2), &AbelianGroup::cyclic(4), &[]).unwrap();
        assert_eq!(h.group().orders(), &[b(2)]);
    }

    #[test]
    fn shape_errors() {
        let z4 = AbelianGroup::cyclic(4);
        let c = LinearCondition::homogeneous(vec![b(4)], vec![vec![b(2), b(1)]]);
        assert!(matches!(constrained_hom_group(&z4, &z4, &[c]), Err(LinalgError::Shape(_))));
    }
}
