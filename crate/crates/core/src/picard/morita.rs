//! Morita contexts `α: M ⊗_S M* -> R`, `β: M* ⊗_R M -> S` for a bimodule and
//! its dual `M* = Hom_R(M, R)`.

use crate::dual::{dual_module, Dual};
use crate::error::{Error, Result};
use crate::module::{is_linear, Bimodule, FinBimodule, Linearity};
use crate::ring::Ring;
use crate::subset::ElemSet;
use crate::tensor::{tensor, Over};

/// `α(m ⊗ n) = n(m)` and `β(n ⊗ m)` the unique `s` with `m' s = n(m') m`.
#[derive(Debug, Clone)]
pub struct MoritaContext {
    pub module: Bimodule,
    pub dual: Dual,
    alpha: Vec<usize>,
    beta: Vec<usize>,
    /// `(m̃_j, ñ_j)` with `Σ α(m̃_j ⊗ ñ_j) = 1`.
    pub unit: Vec<(usize, usize)>,
}

impl MoritaContext {
    pub fn alpha(&self, m: usize, n: usize) -> usize {
        self.alpha[m * self.dual.module.order() + n]
    }

    pub fn beta(&self, n: usize, m: usize) -> usize {
        self.beta[n * self.module.order() + m]
    }

    pub fn left_ring(&self) -> &Ring {
        self.module.left_ring().expect("bimodule")
    }

    pub fn right_ring(&self) -> &Ring {
        self.module.right_ring().expect("bimodule")
    }

    fn unit_decomposition(&self) -> Vec<(usize, usize)> {
        let r = self.left_ring();
        let k = self.dual.module.order();
        let values: Vec<(usize, (usize, usize))> = (0..self.module.order())
            .flat_map(|m| (0..k).map(move |n| (m, n)))
            .map(|(m, n)| (self.alpha(m, n), (m, n)))
            .collect();
        // breadth-first over sums, keeping the first expression of each element
        let mut how: Vec<Option<Vec<(usize, usize)>>> = vec![None; r.order()];
        how[r.zero()] = Some(vec![]);
        let mut frontier = vec![r.zero()];
        while !frontier.is_empty() && how[r.one()].is_none() {
            let mut next = Vec::new();
            for x in frontier {
                for &(v, pair) in &values {
                    let y = r.add(x, v);
                    if how[y].is_none() {
                        let mut path = how[x].clone().unwrap();
                        path.push(pair);
                        how[y] = Some(path);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        how[r.one()].clone().unwrap_or_default()
    }

    /// `α` and `β` induce bijective bimodule maps on the tensor products, and
    /// both associativity identities hold on all elements.
    pub fn verify(&self) -> Result<()> {
        let (m, n) = (&self.module, &self.dual.module);
        for (left, right, ring, f, what) in [
            (m, n, self.left_ring(), &self.alpha, "α"),
            (n, m, self.right_ring(), &self.beta, "β"),
        ] {
            let t = tensor(left, right, Over::Ring)?;
            let k = right.order();
            let map = t.induced_map(ring.additive(), &|a, b| f[a * k + b])?;
            let reg = FinBimodule::regular(ring);
            if ElemSet::from_iter(ring.order(), map.iter().copied()).count() != ring.order()
                || map.len() != ring.order()
            {
                return Err(Error::failure(
                    format!("{what} is bijective"),
                    format!("tensor order {}", t.module.order()),
                ));
            }
            if !is_linear(&t.module, &reg, &map, Linearity::Bi) {
                return Err(Error::failure(format!("{what} is a bimodule map"), "action mismatch"));
            }
        }
        for x in 0..m.order() {
            for y in 0..n.order() {
                for z in 0..m.order() {
                    if m.lact(self.alpha(x, y), z) != m.ract(x, self.beta(y, z)) {
                        return Err(Error::failure(
                            "α(m ⊗ n) m' = m β(n ⊗ m')",
                            format!("{}, {}, {}", m.label(x), n.label(y), m.label(z)),
                        ));
                    }
                }
            }
        }
        for y in 0..n.order() {
            for z in 0..m.order() {
                for w in 0..n.order() {
                    if n.ract(y, self.alpha(z, w)) != n.lact(self.beta(y, z), w) {
                        return Err(Error::failure(
                            "n α(m ⊗ n') = β(n ⊗ m) n'",
                            format!("{}, {}, {}", n.label(y), m.label(z), n.label(w)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The context of `M`, or `None` when `M` is not invertible (some `β` value
/// is missing or ambiguous, or a trace ideal is proper).
pub fn morita_context(m: &Bimodule) -> Result<Option<MoritaContext>> {
    let (Some(r), Some(s)) = (m.left_ring().cloned(), m.right_ring().cloned()) else {
        return Err(Error::mismatch("Morita context needs a bimodule"));
    };
    let dual = dual_module(m)?;
    let (n_m, n_d) = (m.order(), dual.module.order());
    let mut alpha = vec![0; n_m * n_d];
    for x in 0..n_m {
        for n in 0..n_d {
            alpha[x * n_d + n] = dual.eval(n, x);
        }
    }
    let mut beta = vec![0; n_d * n_m];
    for n in 0..n_d {
        for x in 0..n_m {
            let target: Vec<usize> = (0..n_m).map(|y| m.lact(dual.eval(n, y), x)).collect();
            let mut hits = (0..s.order()).filter(|&si| (0..n_m).all(|y| m.ract(y, si) == target[y]));
            match (hits.next(), hits.next()) {
                (Some(si), None) => beta[n * n_m + x] = si,
                _ => return Ok(None),
            }
        }
    }
    let full = |ring: &Ring, values: &[usize]| ring.additive().span(values.iter().copied()).contains(ring.one());
    if !full(&r, &alpha) || !full(&s, &beta) {
        return Ok(None);
    }
    let mut ctx = MoritaContext {
        module: m.clone(),
        dual,
        alpha,
        beta,
        unit: vec![],
    };
    ctx.unit = ctx.unit_decomposition();
    Ok(Some(ctx))
}

pub fn is_invertible(m: &Bimodule) -> Result<bool> {
    Ok(morita_context(m)?.is_some())
}
