//! When `N ⊗_R M → 𝒩^r(M)` is known to be an isomorphism.

use modlab_core::module::{is_flat, ModulePres, Side};
use modlab_core::ring::FiniteRing;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Every module is a bimodule.
    Commutative,
    /// `R` is free over `ℤ/char`, which is central, so `Q → Q ⊗ R` is injective.
    FreeOverPrimeSubring,
    /// One of the two modules is flat.
    FlatModule,
    /// One of the two modules carries a bimodule structure.
    Bimodule,
    Unknown,
}

impl Regime {
    pub fn guaranteed(self) -> bool {
        self != Regime::Unknown
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Commutative => "commutative",
            Regime::FreeOverPrimeSubring => "free-over-prime-subring",
            Regime::FlatModule => "flat-module",
            Regime::Bimodule => "bimodule",
            Regime::Unknown => "unknown",
        }
    }
}

/// The ring-level part of the check.
pub fn ring_regime(r: &FiniteRing) -> Regime {
    if r.is_commutative() {
        Regime::Commutative
    } else if r.is_free_over_prime_subring() {
        Regime::FreeOverPrimeSubring
    } else {
        Regime::Unknown
    }
}

/// The first applicable reason for the pair `(N, M)`. Flatness is only tested
/// when the ring alone decides nothing; an enumeration refusal counts as unknown.
pub fn pair_regime(n: &ModulePres, m: &ModulePres) -> Regime {
    let r = ring_regime(m.ring());
    if r.guaranteed() {
        return r;
    }
    if n.side() == Side::Bi || m.side() == Side::Bi {
        return Regime::Bimodule;
    }
    if is_flat(n).unwrap_or(false) || is_flat(m).unwrap_or(false) {
        return Regime::FlatModule;
    }
    Regime::Unknown
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use modlab_core::ring::Ring;

    #[test]
    fn regimes() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        assert_eq!(ring_regime(&FiniteRing::cyclic(4).unwrap()), Regime::Commutative);
        assert_eq!(ring_regime(&FiniteRing::triangular_ring(&f2, 2).unwrap()), Regime::FreeOverPrimeSubring);
        let g: Ring = Arc::new(FiniteRing::generalized_triangular(4, 2, 2).unwrap());
        assert_eq!(ring_regime(&g), Regime::Unknown);
        let reg = ModulePres::regular(g.clone(), Side::Left);
        let z = ModulePres::zero(g, Side::Right);
        assert_eq!(pair_regime(&z, &reg), Regime::FlatModule);
    }
}
