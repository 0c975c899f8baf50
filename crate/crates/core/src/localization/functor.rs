//! `Q(M ⊗_S N) ≅ Q(M) ⊗_{Q(S)} Q(N)` for composable invertible bimodules.

use std::sync::Arc;

use serde::Serialize;

use super::qring::{q_actions, QuotientRing};
use super::two_sided_localization;
use crate::error::Result;
use crate::iso::is_isomorphic;
use crate::module::Bimodule;
use crate::tensor::{tensor, Over};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctorialityReport {
    pub composite_order: usize,
    pub tensor_of_localizations_order: usize,
    pub isomorphic: bool,
}

/// `Q(M)` as a `Q(R)`-`Q(S)`-bimodule.
pub fn localized_bimodule(m: &Bimodule, qr: &QuotientRing, qs: &QuotientRing) -> Result<Bimodule> {
    let loc = two_sided_localization(m, &qr.triple.left, &qs.triple.right)?;
    Ok(Arc::new(q_actions(qr, qs, &loc)?))
}

/// `m` is an R-S-bimodule and `n` an S-U-bimodule.
pub fn functoriality_check(
    m: &Bimodule,
    n: &Bimodule,
    qr: &QuotientRing,
    qs: &QuotientRing,
    qu: &QuotientRing,
) -> Result<FunctorialityReport> {
    let mn: Bimodule = Arc::new(tensor(m, n, Over::Ring)?.module);
    let composite = localized_bimodule(&mn, qr, qu)?;
    let qm = localized_bimodule(m, qr, qs)?;
    let qn = localized_bimodule(n, qs, qu)?;
    let product: Bimodule = Arc::new(tensor(&qm, &qn, Over::Ring)?.module);
    Ok(FunctorialityReport {
        composite_order: composite.order(),
        tensor_of_localizations_order: product.order(),
        isomorphic: is_isomorphic(&composite, &product)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::localization::{q_ring, FilterTriple};
    use crate::module::FinBimodule;
    use crate::ring::{automorphism_group, RingMap};

    #[test]
    fn twists_of_f4_compose() {
        let r = corpus::ring("f4").unwrap();
        let q = q_ring(&FilterTriple::trivial(&r)).unwrap();
        let id = RingMap::identity(&r);
        let auts = automorphism_group(&r).unwrap();
        for a in &auts {
            for b in &auts {
                let m: Bimodule = Arc::new(FinBimodule::twisted(&r, a, &id).unwrap());
                let n: Bimodule = Arc::new(FinBimodule::twisted(&r, b, &id).unwrap());
                let rep = functoriality_check(&m, &n, &q, &q, &q).unwrap();
                assert!(rep.isomorphic);
                assert_eq!(rep.composite_order, 4);
            }
        }
    }

    #[test]
    fn dense_upper_triangular_regular() {
        let r = corpus::ring("t2f2").unwrap();
        let q = q_ring(&corpus::dense_triple(&r).unwrap()).unwrap();
        let reg: Bimodule = Arc::new(FinBimodule::regular(&r));
        let rep = functoriality_check(&reg, &reg, &q, &q, &q).unwrap();
        assert!(rep.isomorphic);
        assert_eq!(rep.composite_order, 16);
    }
}
