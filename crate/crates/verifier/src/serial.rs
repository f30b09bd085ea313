//! JSON forms of rings, modules, algebras and maps. Integers are written as
//! decimal strings so that no reader loses precision.

use std::sync::Arc;

use modlab_core::linalg::{AbelianGroup, GroupMorphism, IntMatrix};
use modlab_core::module::{ModulePres, Side};
use modlab_core::ring::{Algebra, FiniteRing, Ring, RingMorphism};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::VerifyError;

pub type Ints = Vec<String>;

/// A matrix as a list of rows.
pub type MatrixData = Vec<Ints>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingData {
    pub orders: Ints,
    pub unit: Ints,
    /// `mul[i][j]` is the product of generators `i` and `j`.
    pub mul: Vec<Vec<Ints>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleData {
    pub side: Side,
    pub orders: Ints,
    /// One matrix per ring generator; the left action for bimodules.
    pub action: Vec<MatrixData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_action: Option<Vec<MatrixData>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraData {
    pub ring: RingData,
    /// Matrix of the structure map from the base ring.
    pub structure_map: MatrixData,
}

pub fn ints(v: &[BigInt]) -> Ints {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn parse_ints(v: &[String], what: &str) -> Result<Vec<BigInt>, VerifyError> {
    v.iter()
        .map(|s| {
            s.parse::<BigInt>()
                .map_err(|_| VerifyError::Parse(format!("{}: {:?} is not a decimal integer", what, s)))
        })
        .collect()
}

pub fn matrix_data(m: &IntMatrix) -> MatrixData {
    m.to_rows().iter().map(|r| ints(r)).collect()
}

pub fn parse_matrix(rows: &[Ints], cols: usize, what: &str) -> Result<IntMatrix, VerifyError> {
    let parsed: Vec<Vec<BigInt>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| parse_ints(r, &format!("{} row {}", what, i)))
        .collect::<Result<_, _>>()?;
    if parsed.iter().any(|r| r.len() != cols) {
        return Err(VerifyError::Parse(format!("{}: every row needs {} entries", what, cols)));
    }
    if parsed.is_empty() {
        return Ok(IntMatrix::zeros(0, cols));
    }
    Ok(IntMatrix::from_rows(&parsed)?)
}

pub fn ring_data(r: &FiniteRing) -> RingData {
    RingData {
        orders: ints(r.additive().orders()),
        unit: ints(r.unit()),
        mul: r.structure_constants().iter().map(|row| row.iter().map(|e| ints(e)).collect()).collect(),
    }
}

pub fn parse_ring(d: &RingData) -> Result<Ring, VerifyError> {
    let group = AbelianGroup::new(parse_ints(&d.orders, "ring orders")?)?;
    let k = group.rank();
    if d.mul.len() != k || d.mul.iter().any(|row| row.len() != k) {
        return Err(VerifyError::Parse(format!("ring mul must be {}x{}", k, k)));
    }
    let mul = d
        .mul
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, e)| parse_ints(e, &format!("mul[{}][{}]", i, j)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let unit = parse_ints(&d.unit, "ring unit")?;
    Ok(Arc::new(FiniteRing::new(group, mul, unit)?))
}

pub fn module_data(m: &ModulePres) -> ModuleData {
    let mats = |maps: &[GroupMorphism]| maps.iter().map(|f| matrix_data(f.matrix())).collect::<Vec<_>>();
    let (action, right_action) = match m.side() {
        Side::Left => (mats(m.left_actions()), None),
        Side::Right => (mats(m.right_actions()), None),
        Side::Bi => (mats(m.left_actions()), Some(mats(m.right_actions()))),
    };
    ModuleData {
        side: m.side(),
        orders: ints(m.additive().orders()),
        action,
        right_action,
    }
}

pub fn parse_module(ring: &Ring, d: &ModuleData) -> Result<ModulePres, VerifyError> {
    let group = AbelianGroup::new(parse_ints(&d.orders, "module orders")?)?;
    let k = group.rank();
    let mats = |list: &[MatrixData], what: &str| -> Result<Vec<IntMatrix>, VerifyError> {
        if list.len() != ring.rank() {
            return Err(VerifyError::Parse(format!("{}: need one matrix per ring generator ({})", what, ring.rank())));
        }
        list.iter()
            .enumerate()
            .map(|(i, m)| {
                if m.len() != k {
                    return Err(VerifyError::Parse(format!("{} {}: need {} rows", what, i, k)));
                }
                parse_matrix(m, k, &format!("{} {}", what, i))
            })
            .collect()
    };
    let (left, right) = match d.side {
        Side::Left => (mats(&d.action, "action")?, vec![]),
        Side::Right => (vec![], mats(&d.action, "action")?),
        Side::Bi => {
            let r = d
                .right_action
                .as_ref()
                .ok_or_else(|| VerifyError::Parse("bimodule needs right_action".into()))?;
            (mats(&d.action, "action")?, mats(r, "right_action")?)
        }
    };
    Ok(ModulePres::new(ring.clone(), d.side, group, left, right)?)
}

pub fn algebra_data(s: &Algebra) -> AlgebraData {
    AlgebraData {
        ring: ring_data(s.ring()),
        structure_map: matrix_data(s.structure_map().map().matrix()),
    }
}

pub fn parse_morphism(source: &Ring, target: &Ring, rows: &[Ints], what: &str) -> Result<RingMorphism, VerifyError> {
    if rows.len() != target.rank() {
        return Err(VerifyError::Parse(format!("{}: need {} rows", what, target.rank())));
    }
    let m = parse_matrix(rows, source.rank(), what)?;
    let map = GroupMorphism::new(source.additive().clone(), target.additive().clone(), m)?;
    Ok(RingMorphism::new(source.clone(), target.clone(), map)?)
}

pub fn parse_algebra(base: &Ring, name: &str, d: &AlgebraData) -> Result<Algebra, VerifyError> {
    let carrier = parse_ring(&d.ring)?;
    let sigma = parse_morphism(base, &carrier, &d.structure_map, &format!("structure map of {}", name))?;
    Ok(Algebra::new(name, sigma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use modlab_core::ring::algebra_corpus;

    #[test]
    fn round_trips() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let t: Ring = Arc::new(FiniteRing::triangular_ring(&f2, 2).unwrap());
        let back = parse_ring(&ring_data(&t)).unwrap();
        assert_eq!(*back, *t);
        for side in [Side::Left, Side::Right, Side::Bi] {
            let m = ModulePres::free(t.clone(), 2, side);
            let d = module_data(&m);
            let json = serde_json::to_string(&d).unwrap();
            let parsed: ModuleData = serde_json::from_str(&json).unwrap();
            assert!(parse_module(&t, &parsed).unwrap().same_as(&m));
        }
        for s in algebra_corpus(&t, 16).unwrap().objects() {
            let back = parse_algebra(&t, s.name(), &algebra_data(s)).unwrap();
            assert_eq!(back.ring(), s.ring());
            assert!(back.structure_map().map() == s.structure_map().map());
        }
    }

    #[test]
    fn rejects_bad_input() {
        let bad = RingData {
            orders: vec!["4".into()],
            unit: vec!["2".into()],
            mul: vec![vec![vec!["1".into()]]],
        };
        assert!(parse_ring(&bad).is_err());
        let junk = RingData {
            orders: vec!["x".into()],
            unit: vec![],
            mul: vec![],
        };
        assert!(matches!(parse_ring(&junk), Err(VerifyError::Parse(_))));
    }
}
