//! Corpus generation, the on-disk manifest, and loading it back into objects.

use std::path::Path;
use std::sync::Arc;

use modlab_core::module::{dual_module, ModulePres, Side};
use modlab_core::ring::{algebra_corpus, AlgebraArrow, AlgebraMorphismCorpus, FiniteRing, IdealSide, Ring};
use num_bigint::BigInt;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::serial::{
    algebra_data, matrix_data, module_data, parse_algebra, parse_module, parse_morphism, parse_ring, ring_data, AlgebraData,
    MatrixData, ModuleData, RingData,
};
use crate::VerifyError;

pub const CORPUS_FORMAT: &str = "modlab-corpus/1";
pub const MANIFEST_FILE: &str = "manifest.json";

/// Random quotients of `R²` tried per ring and side.
const RANDOM_QUOTIENTS: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub format: String,
    pub seed: String,
    pub max_ring_order: String,
    pub max_module_order: String,
    pub rings: Vec<RingEntry>,
    pub modules: Vec<ModuleEntry>,
    pub algebras: Vec<AlgebraEntry>,
    pub arrows: Vec<ArrowEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingEntry {
    pub id: String,
    pub name: String,
    pub ring: RingData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleEntry {
    pub id: String,
    pub ring: String,
    pub name: String,
    pub module: ModuleData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraEntry {
    pub id: String,
    pub base: String,
    pub name: String,
    pub algebra: AlgebraData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowEntry {
    pub id: String,
    pub base: String,
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: MatrixData,
}

/// A module of the corpus with its id.
#[derive(Clone, Debug)]
pub struct Entry {
    pub id: String,
    pub name: String,
    pub module: ModulePres,
}

/// Everything the corpus holds over one ring.
#[derive(Clone, Debug)]
pub struct CorpusRing {
    pub id: String,
    pub name: String,
    pub ring: Ring,
    pub left: Vec<Entry>,
    pub right: Vec<Entry>,
    pub algebras: AlgebraMorphismCorpus,
    pub algebra_ids: Vec<String>,
}

impl CorpusRing {
    pub fn algebra_id(&self, k: usize) -> &str {
        &self.algebra_ids[k]
    }
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub manifest: Manifest,
    pub sha256: String,
    pub rings: Vec<CorpusRing>,
}

fn mandatory_rings() -> Result<Vec<(&'static str, &'static str, FiniteRing)>, VerifyError> {
    let f2 = FiniteRing::cyclic(2)?;
    Ok(vec![
        ("Z2", "ℤ/2", f2.clone()),
        ("Z3", "ℤ/3", FiniteRing::cyclic(3)?),
        ("Z4", "ℤ/4", FiniteRing::cyclic(4)?),
        ("Z6", "ℤ/6", FiniteRing::cyclic(6)?),
        ("Z2xZ2", "ℤ/2×ℤ/2", FiniteRing::product(&f2, &f2)?),
        ("F2[e]", "𝔽₂[ε]/(ε²)", FiniteRing::dual_numbers(&f2)?),
        ("Z8", "ℤ/8", FiniteRing::cyclic(8)?),
        ("T2F2", "upper-triangular 2×2 over 𝔽₂", FiniteRing::triangular_ring(&f2, 2)?),
        ("M2F2", "2×2 matrices over 𝔽₂", FiniteRing::matrix_ring(&f2, 2)?),
    ])
}

/// The ids every corpus with ring bound at least 16 contains.
pub const REQUIRED_RING_IDS: [&str; 6] = ["Z2", "Z4", "Z6", "Z2xZ2", "T2F2", "M2F2"];

fn push_unique(list: &mut Vec<(String, ModulePres)>, name: String, m: ModulePres) {
    if !list.iter().any(|(_, x)| x.same_as(&m)) {
        list.push((name, m));
    }
}

fn fits(m: &ModulePres, bound: &BigInt) -> bool {
    m.additive().order().is_some_and(|o| o <= *bound)
}

/// Base modules on one side: 0, R, R², the cyclic modules R/I and a few seeded
/// quotients of R².
fn base_modules(ring: &Ring, side: Side, bound: &BigInt, rng: &mut ChaCha8Rng) -> Result<Vec<(String, ModulePres)>, VerifyError> {
    let mut out = Vec::new();
    push_unique(&mut out, "0".into(), ModulePres::zero(ring.clone(), side));
    let reg = ModulePres::regular(ring.clone(), side);
    if fits(&reg, bound) {
        push_unique(&mut out, "R".into(), reg);
    }
    let ideal_side = if side == Side::Left { IdealSide::Left } else { IdealSide::Right };
    for (k, ideal) in ring.ideals(ideal_side, ring.order_usize())?.iter().enumerate() {
        if ideal.is_zero() || ideal.order() == ring.order_usize() {
            continue;
        }
        let q = ModulePres::cyclic(ring.clone(), ideal);
        if fits(&q, bound) {
            push_unique(&mut out, format!("R/I{}", k), q);
        }
    }
    let free2 = ModulePres::free(ring.clone(), 2, side);
    if fits(&free2, bound) {
        push_unique(&mut out, "R^2".into(), free2.clone());
    }
    if free2.additive().order().is_some_and(|o| o <= bound * bound) {
        for t in 0..RANDOM_QUOTIENTS {
            let g = free2.additive();
            let x: Vec<BigInt> = g.orders().iter().map(|d| BigInt::from(rng.gen_range(0..=u64::try_from(d - 1).unwrap_or(0)))).collect();
            let q = free2.quotient(&[x]).0;
            if fits(&q, bound) && !q.is_zero() {
                push_unique(&mut out, format!("R^2/q{}", t), q);
            }
        }
    }
    Ok(out)
}

/// Builds the manifest for the given bounds; deterministic in its inputs.
pub fn generate(max_ring_order: u64, max_module_order: u64, seed: u64) -> Result<Manifest, VerifyError> {
    if max_ring_order < 2 || max_module_order < 2 {
        return Err(VerifyError::Input(format!(
            "bounds must be at least 2 so that ℤ/2 and its modules fit (got ring bound {}, module bound {})",
            max_ring_order, max_module_order
        )));
    }
    let ring_bound = BigInt::from(max_ring_order);
    let module_bound = BigInt::from(max_module_order);
    let mut manifest = Manifest {
        format: CORPUS_FORMAT.into(),
        seed: seed.to_string(),
        max_ring_order: max_ring_order.to_string(),
        max_module_order: max_module_order.to_string(),
        rings: vec![],
        modules: vec![],
        algebras: vec![],
        arrows: vec![],
    };
    for (index, (id, name, ring)) in mandatory_rings()?.into_iter().enumerate() {
        if ring.order() > ring_bound {
            continue;
        }
        let ring: Ring = Arc::new(ring);
        manifest.rings.push(RingEntry {
            id: id.into(),
            name: name.into(),
            ring: ring_data(&ring),
        });
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(index as u64));
        let mut left = base_modules(&ring, Side::Left, &module_bound, &mut rng)?;
        let mut right = base_modules(&ring, Side::Right, &module_bound, &mut rng)?;
        let (base_left, base_right) = (left.clone(), right.clone());
        for (src, dst) in [(&base_left, &mut right), (&base_right, &mut left)] {
            for (n, m) in src {
                let d = dual_module(m)?.module().clone();
                if fits(&d, &module_bound) {
                    push_unique(dst, format!("dual({})", n), d);
                }
            }
        }
        for (tag, list) in [("L", &left), ("R", &right)] {
            for (k, (n, m)) in list.iter().enumerate() {
                manifest.modules.push(ModuleEntry {
                    id: format!("{}/{}{}", id, tag, k),
                    ring: id.into(),
                    name: n.clone(),
                    module: module_data(m),
                });
            }
        }
        let algebras = algebra_corpus(&ring, max_ring_order as usize)?;
        for (k, s) in algebras.objects().iter().enumerate() {
            manifest.algebras.push(AlgebraEntry {
                id: format!("{}/S{}", id, k),
                base: id.into(),
                name: s.name().into(),
                algebra: algebra_data(s),
            });
        }
        for (k, a) in algebras.arrows().iter().enumerate() {
            manifest.arrows.push(ArrowEntry {
                id: format!("{}/A{}", id, k),
                base: id.into(),
                name: a.name.clone(),
                source: format!("{}/S{}", id, a.source),
                target: format!("{}/S{}", id, a.target),
                map: matrix_data(a.map.map().matrix()),
            });
        }
    }
    Ok(manifest)
}

pub fn manifest_bytes(m: &Manifest) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(m).expect("manifest serializes");
    s.push('\n');
    s.into_bytes()
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{:02x}", b)).collect()
}

pub fn write_manifest(dir: &Path, m: &Manifest) -> Result<(), VerifyError> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(MANIFEST_FILE), manifest_bytes(m))?;
    Ok(())
}

impl Corpus {
    /// Reads `manifest.json` from a corpus directory.
    pub fn load(dir: &Path) -> Result<Corpus, VerifyError> {
        let path = dir.join(MANIFEST_FILE);
        let bytes = std::fs::read(&path).map_err(|e| VerifyError::Input(format!("{}: {}", path.display(), e)))?;
        let manifest: Manifest = serde_json::from_slice(&bytes)
            .map_err(|e| VerifyError::Parse(format!("{}:{}:{}: {}", path.display(), e.line(), e.column(), e)))?;
        Self::from_manifest_with_digest(manifest, sha256_hex(&bytes))
    }

    pub fn from_manifest(manifest: Manifest) -> Result<Corpus, VerifyError> {
        let digest = sha256_hex(&manifest_bytes(&manifest));
        Self::from_manifest_with_digest(manifest, digest)
    }

    fn from_manifest_with_digest(manifest: Manifest, sha256: String) -> Result<Corpus, VerifyError> {
        if manifest.format != CORPUS_FORMAT {
            return Err(VerifyError::Parse(format!("unknown corpus format {:?}", manifest.format)));
        }
        let mut rings = Vec::new();
        for re in &manifest.rings {
            let ring = parse_ring(&re.ring).map_err(|e| e.context(&re.id))?;
            let mut left = Vec::new();
            let mut right = Vec::new();
            for me in manifest.modules.iter().filter(|m| m.ring == re.id) {
                let module = parse_module(&ring, &me.module).map_err(|e| e.context(&me.id))?;
                let entry = Entry {
                    id: me.id.clone(),
                    name: me.name.clone(),
                    module,
                };
                match me.module.side {
                    Side::Left => left.push(entry),
                    Side::Right => right.push(entry),
                    Side::Bi => {
                        left.push(Entry {
                            module: entry.module.as_side(Side::Left)?,
                            ..entry.clone()
                        });
                        right.push(Entry {
                            module: entry.module.as_side(Side::Right)?,
                            ..entry
                        });
                    }
                }
            }
            let mut objects = Vec::new();
            let mut algebra_ids = Vec::new();
            for ae in manifest.algebras.iter().filter(|a| a.base == re.id) {
                objects.push(parse_algebra(&ring, &ae.name, &ae.algebra).map_err(|e| e.context(&ae.id))?);
                algebra_ids.push(ae.id.clone());
            }
            let mut arrows = Vec::new();
            for ar in manifest.arrows.iter().filter(|a| a.base == re.id) {
                let find = |id: &str| {
                    algebra_ids
                        .iter()
                        .position(|x| x == id)
                        .ok_or_else(|| VerifyError::Parse(format!("{}: unknown algebra {}", ar.id, id)))
                };
                let (s, t) = (find(&ar.source)?, find(&ar.target)?);
                let map = parse_morphism(objects[s].ring(), objects[t].ring(), &ar.map, &ar.id)?;
                arrows.push(AlgebraArrow {
                    name: ar.name.clone(),
                    source: s,
                    target: t,
                    map,
                });
            }
            let algebras = AlgebraMorphismCorpus::new(ring.clone(), objects, arrows).map_err(|e| VerifyError::from(e).context(&re.id))?;
            rings.push(CorpusRing {
                id: re.id.clone(),
                name: re.name.clone(),
                ring,
                left,
                right,
                algebras,
                algebra_ids,
            });
        }
        for m in &manifest.modules {
            if !manifest.rings.iter().any(|r| r.id == m.ring) {
                return Err(VerifyError::Parse(format!("{}: unknown ring {}", m.id, m.ring)));
            }
        }
        for a in manifest.algebras.iter().map(|a| (&a.id, &a.base)).chain(manifest.arrows.iter().map(|a| (&a.id, &a.base))) {
            if !manifest.rings.iter().any(|r| &r.id == a.1) {
                return Err(VerifyError::Parse(format!("{}: unknown ring {}", a.0, a.1)));
            }
        }
        Ok(Corpus {
            manifest,
            sha256,
            rings,
        })
    }

    pub fn ring(&self, id: &str) -> Option<&CorpusRing> {
        self.rings.iter().find(|r| r.id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounds() {
        let m = generate(2, 4, 0).unwrap();
        assert_eq!(m.rings.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), ["Z2"]);
        assert!(generate(1, 4, 0).is_err());
        assert!(generate(4, 1, 0).is_err());
    }

    #[test]
    fn deterministic_and_round_trips() {
        let a = generate(8, 16, 7).unwrap();
        assert_eq!(manifest_bytes(&a), manifest_bytes(&generate(8, 16, 7).unwrap()));
        let parsed: Manifest = serde_json::from_slice(&manifest_bytes(&a)).unwrap();
        assert_eq!(parsed, a);
        let c = Corpus::from_manifest(parsed).unwrap();
        let z4 = c.ring("Z4").unwrap();
        assert!(z4.left.iter().any(|e| e.name == "R/I1"));
        assert!(z4.algebras.objects().len() >= 3);
    }
}
