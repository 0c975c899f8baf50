//! Finite groups given by multiplication tables, and Picard groups built on them.

use serde::Serialize;

use crate::abelian::{invariant_label, AbGroup};
use crate::error::{Axiom, Error, Result};
use crate::module::Bimodule;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    pub fn new(order: usize, mul: Vec<usize>, identity: usize) -> Result<Self> {
        let g = FiniteGroup { order, mul, identity };
        g.check_axioms()?;
        Ok(g)
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            mul: vec![0],
            identity: 0,
        }
    }

    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        let bad = |axiom, witness| Err(Error::AxiomViolation { axiom, witness });
        if self.mul.len() != n * n || self.identity >= n {
            return bad(Axiom::Closure, vec![]);
        }
        if let Some(i) = self.mul.iter().position(|&x| x >= n) {
            return bad(Axiom::Closure, vec![i / n, i % n]);
        }
        for a in 0..n {
            if self.mul(a, self.identity) != a || self.mul(self.identity, a) != a {
                return bad(Axiom::Identity, vec![a]);
            }
            if (0..n).all(|b| self.mul(a, b) != self.identity) {
                return bad(Axiom::Inverse, vec![a]);
            }
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return bad(Axiom::Associativity, vec![a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.mul(a, b) == self.identity)
            .expect("group element has an inverse")
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Invariant factors for abelian groups, otherwise the order.
    pub fn structure(&self) -> String {
        if self.is_abelian() {
            let ab = AbGroup::from_table_unchecked(self.order, self.mul.clone(), self.identity);
            invariant_label(ab.invariant_factors())
        } else {
            format!("nonabelian of order {}", self.order)
        }
    }

    /// `map` is a homomorphism into `target`.
    pub fn is_hom(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.order
            && (0..self.order).all(|a| (0..self.order).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }

    pub fn kernel(&self, target: &FiniteGroup, map: &[usize]) -> Vec<usize> {
        (0..self.order).filter(|&a| map[a] == target.identity).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Subbimodule,
    TwistedRegular,
    ExplicitBimodule,
}

/// One isomorphism class with the representative it was found as.
#[derive(Debug, Clone)]
pub struct PicardElement {
    pub label: String,
    pub provenance: Provenance,
    pub module: Bimodule,
}

#[derive(Debug, Clone)]
pub struct PicardGroup {
    pub elements: Vec<PicardElement>,
    pub group: FiniteGroup,
}

impl PicardGroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn structure(&self) -> String {
        self.group.structure()
    }

    pub fn identity_label(&self) -> &str {
        &self.elements[self.group.identity()].label
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|e| e.label.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_four_structure() {
        let mul = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
        let g = FiniteGroup::new(4, mul, 0).unwrap();
        assert_eq!(g.structure(), "Z/2 x Z/2");
    }

    #[test]
    fn symmetric_group_is_nonabelian() {
        // S3 as permutations of 0..3, composed left to right
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let mul = (0..36)
            .map(|i| {
                let (a, b) = (perms[i / 6], perms[i % 6]);
                idx([b[a[0]], b[a[1]], b[a[2]]])
            })
            .collect();
        let g = FiniteGroup::new(6, mul, 0).unwrap();
        assert_eq!(g.structure(), "nonabelian of order 6");
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // a Latin square with identity 0 that is not associative
        let mul = vec![
            0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0,
        ];
        assert!(FiniteGroup::new(5, mul, 0).is_err());
    }
}
