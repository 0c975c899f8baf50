//! Tensor products of finite bimodules by generators and relations.
//!
//! With additive bases `b_i` of `M` (orders `d_i`) and `c_j` of `N` (orders
//! `e_j`), `M ⊗_Z N` is free on symbols `t_ij = b_i ⊗ c_j` of order
//! `gcd(d_i, e_j)`. Over a ring the balance relations `b_i s ⊗ c_j = b_i ⊗ s c_j`
//! for `s` in an additive basis of the ring are added. The quotient is read
//! off a Smith normal form, so the free Z-tensor is never materialized.

use crate::abelian::{smith_normal_form, AbGroup};
use crate::error::{Error, Result};
use crate::limits;
use crate::module::{Action, Bimodule, FinBimodule};
use crate::ring::same_ring;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A finite abelian group presented on `ngens` generators, with conversion
/// between coefficient vectors and indices of the materialized group.
#[derive(Debug, Clone)]
pub(crate) struct Presented {
    ngens: usize,
    right: Vec<Vec<i128>>,
    right_inverse: Vec<Vec<i128>>,
    kept: Vec<usize>,
    factors: Vec<u64>,
    pub group: AbGroup,
}

impl Presented {
    pub fn new(ngens: usize, relations: &[Vec<i64>], limit: usize) -> Result<Self> {
        let snf = smith_normal_form(relations);
        if snf.diagonal.len() < ngens || snf.diagonal.iter().take(ngens).any(|&d| d == 0) {
            return Err(Error::InvalidSpec("presented group is infinite".into()));
        }
        let mut kept = Vec::new();
        let mut factors = Vec::new();
        for (i, &d) in snf.diagonal.iter().enumerate().take(ngens) {
            if d.abs() > 1 {
                kept.push(i);
                factors.push(d.unsigned_abs() as u64);
            }
        }
        let order = factors.iter().map(|&d| d as f64).product::<f64>();
        if order > limit as f64 {
            return Err(Error::SizeLimit {
                what: "tensor product order",
                size: order as usize,
                limit,
            });
        }
        let group = AbGroup::cyclic_product_limited(&factors, limit)?;
        Ok(Presented {
            ngens,
            right: snf.right,
            right_inverse: snf.right_inverse,
            kept,
            factors,
            group,
        })
    }

    pub fn project(&self, x: &[i64]) -> usize {
        let mut idx = 0usize;
        for (&i, &d) in self.kept.iter().zip(&self.factors).rev() {
            let y: i128 = (0..self.ngens).map(|j| i128::from(x[j]) * self.right[j][i]).sum();
            idx = idx * d as usize + y.rem_euclid(i128::from(d)) as usize;
        }
        idx
    }

    pub fn lift(&self, mut idx: usize) -> Vec<i64> {
        let mut y = vec![0i128; self.ngens];
        for (&i, &d) in self.kept.iter().zip(&self.factors) {
            y[i] = (idx % d as usize) as i128;
            idx /= d as usize;
        }
        (0..self.ngens)
            .map(|j| (0..self.ngens).map(|i| y[i] * self.right_inverse[i][j]).sum::<i128>() as i64)
            .collect()
    }
}

/// Which tensor product to form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Over {
    Integers,
    /// The right ring of the first factor, which must be the left ring of the second.
    Ring,
}

/// `M ⊗ N` with the outer actions, plus the data needed to evaluate pure
/// tensors and maps out of it.
#[derive(Debug, Clone)]
pub struct TensorProduct {
    pub module: FinBimodule,
    left: Bimodule,
    right: Bimodule,
    gen_orders: Vec<u64>,
    pres: Presented,
    over_ring: bool,
}

impl TensorProduct {
    fn symbol_count(&self) -> usize {
        self.gen_orders.len()
    }

    fn pure_vec(&self, m: usize, n: usize) -> Vec<i64> {
        pure_vec(&self.left, &self.right, &self.gen_orders, m, n)
    }

    /// Index of `m ⊗ n`.
    pub fn pure(&self, m: usize, n: usize) -> usize {
        self.pres.project(&self.pure_vec(m, n))
    }

    /// Coefficients of a representative over the symbols `b_i ⊗ c_j`.
    pub(crate) fn coefficients(&self, q: usize) -> Vec<i64> {
        self.pres.lift(q)
    }

    pub(crate) fn pure_coefficients(&self, m: usize, n: usize) -> Vec<i64> {
        self.pure_vec(m, n)
    }

    /// The basis pairs `(b_i, c_j)` behind each symbol.
    pub(crate) fn symbols(&self) -> Vec<(usize, usize)> {
        let (bm, bn) = (self.left.group().basis(), self.right.group().basis());
        (0..self.symbol_count())
            .map(|ij| (bm[ij / bn.len()], bn[ij % bn.len()]))
            .collect()
    }

    pub(crate) fn symbol_orders(&self) -> &[u64] {
        &self.gen_orders
    }

    pub(crate) fn project(&self, coeffs: &[i64]) -> usize {
        self.pres.project(coeffs)
    }

    pub fn factors(&self) -> (&Bimodule, &Bimodule) {
        (&self.left, &self.right)
    }

    /// The additive map `M ⊗ N -> target` induced by `f(m, n)`. Fails if `f` is
    /// not biadditive or (over a ring) not balanced.
    pub fn induced_map(&self, target: &AbGroup, f: &dyn Fn(usize, usize) -> usize) -> Result<Vec<usize>> {
        let (m, n) = (&self.left, &self.right);
        let kn = n.group().basis().len();
        let on_symbols: Vec<usize> = (0..self.symbol_count())
            .map(|ij| f(m.group().basis()[ij / kn], n.group().basis()[ij % kn]))
            .collect();
        let eval = |x: &[i64]| -> usize {
            x.iter()
                .zip(&on_symbols)
                .fold(target.zero(), |acc, (&c, &v)| target.add(acc, target.times(v, c)))
        };
        for a in 0..m.order() {
            for b in 0..n.order() {
                if eval(&self.pure_vec(a, b)) != f(a, b) {
                    return Err(Error::NotWellDefined(format!(
                        "bilinear form is not biadditive at ({}, {})",
                        m.label(a),
                        n.label(b)
                    )));
                }
            }
        }
        for (ij, &g) in self.gen_orders.iter().enumerate() {
            if target.times(on_symbols[ij], g as i64) != target.zero() {
                return Err(Error::NotWellDefined("symbol order not respected".into()));
            }
        }
        if let (Some(ra), Some(la)) = (m.right(), n.left()) {
            if self.over_ring {
                for &s in ra.ring().additive_generators() {
                    for &bi in m.group().basis() {
                        for &cj in n.group().basis() {
                            if f(m.ract(bi, s), cj) != f(bi, n.lact(s, cj)) {
                                return Err(Error::NotWellDefined(format!(
                                    "bilinear form is not balanced at ({}, {}, {})",
                                    m.label(bi),
                                    la.ring().label(s),
                                    n.label(cj)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok((0..self.module.order()).map(|q| eval(&self.pres.lift(q))).collect())
    }
}

fn pure_vec(m: &FinBimodule, n: &FinBimodule, gen_orders: &[u64], a: usize, b: usize) -> Vec<i64> {
    let (ca, cb) = (m.group().coords(a), n.group().coords(b));
    let kn = cb.len();
    gen_orders
        .iter()
        .enumerate()
        .map(|(ij, &g)| ((ca[ij / kn] * cb[ij % kn]) % g) as i64)
        .collect()
}

/// `M ⊗_Z N` or `M ⊗_S N`, keeping the left action of `M` and the right
/// action of `N`.
pub fn tensor(m: &Bimodule, n: &Bimodule, over: Over) -> Result<TensorProduct> {
    tensor_with_limit(m, n, over, limits::max_order())
}

pub(crate) fn tensor_with_limit(m: &Bimodule, n: &Bimodule, over: Over, limit: usize) -> Result<TensorProduct> {
    let (bm, bn) = (m.group().basis(), n.group().basis());
    let (om, on) = (m.group().invariant_factors(), n.group().invariant_factors());
    let kn = bn.len();
    let gen_orders: Vec<u64> = (0..bm.len() * kn).map(|ij| gcd(om[ij / kn], on[ij % kn])).collect();
    let k = gen_orders.len();
    let mut relations: Vec<Vec<i64>> = (0..k)
        .map(|ij| {
            (0..k)
                .map(|c| if c == ij { gen_orders[ij] as i64 } else { 0 })
                .collect()
        })
        .collect();
    if over == Over::Ring {
        let (Some(ra), Some(la)) = (m.right(), n.left()) else {
            return Err(Error::mismatch("tensor over a ring needs M_S and _S N"));
        };
        if !same_ring(ra.ring(), la.ring()) {
            return Err(Error::mismatch("tensor factors are over different rings"));
        }
        for &s in ra.ring().additive_generators() {
            for &bi in bm {
                for &cj in bn {
                    let x = pure_vec(m, n, &gen_orders, m.ract(bi, s), cj);
                    let y = pure_vec(m, n, &gen_orders, bi, n.lact(s, cj));
                    let row: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a - b).collect();
                    if row.iter().any(|&c| c != 0) {
                        relations.push(row);
                    }
                }
            }
        }
    }
    if k == 0 {
        relations.clear();
    }
    let pres = Presented::new(k, &relations, limit)?;
    let order = pres.group.order();
    let act = |side_left: bool| -> Option<Action> {
        let ring = if side_left {
            m.left()?.ring().clone()
        } else {
            n.right()?.ring().clone()
        };
        let images: Vec<Vec<Vec<i64>>> = (0..ring.order())
            .map(|r| {
                (0..k)
                    .map(|ij| {
                        let (bi, cj) = (bm[ij / kn], bn[ij % kn]);
                        if side_left {
                            pure_vec(m, n, &gen_orders, m.lact(r, bi), cj)
                        } else {
                            pure_vec(m, n, &gen_orders, bi, n.ract(cj, r))
                        }
                    })
                    .collect()
            })
            .collect();
        let lifts: Vec<Vec<i64>> = (0..order).map(|q| pres.lift(q)).collect();
        let mut table = vec![0; ring.order() * order];
        for r in 0..ring.order() {
            for (q, x) in lifts.iter().enumerate() {
                let mut acc = vec![0i64; k];
                for (ij, &c) in x.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for ((slot, &v), &g) in acc.iter_mut().zip(&images[r][ij]).zip(&gen_orders) {
                        *slot = (*slot + c * v).rem_euclid(g as i64);
                    }
                }
                table[r * order + q] = pres.project(&acc);
            }
        }
        Some(Action::new(ring, table))
    };
    let left = act(true);
    let right = act(false);
    let labels = tensor_labels(m, n, &gen_orders, &pres);
    let module = FinBimodule::new_unchecked(pres.group.clone(), left, right, labels);
    Ok(TensorProduct {
        module,
        left: m.clone(),
        right: n.clone(),
        gen_orders,
        pres,
        over_ring: over == Over::Ring,
    })
}

fn tensor_labels(m: &FinBimodule, n: &FinBimodule, gen_orders: &[u64], pres: &Presented) -> Vec<String> {
    let order = pres.group.order();
    let mut labels: Vec<Option<String>> = vec![None; order];
    if m.order() * n.order() <= 1 << 16 {
        let mut remaining = order;
        'outer: for a in 0..m.order() {
            for b in 0..n.order() {
                let q = pres.project(&pure_vec(m, n, gen_orders, a, b));
                if labels[q].is_none() {
                    labels[q] = Some(format!("{}⊗{}", m.label(a), n.label(b)));
                    remaining -= 1;
                    if remaining == 0 {
                        break 'outer;
                    }
                }
            }
        }
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(q, l)| l.unwrap_or_else(|| format!("t{q}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::bimodule_iso;
    use crate::module::Linearity;
    use crate::ring::{automorphism_group, make_ring, MatrixShape, Ring, RingMap, RingSpec};
    use std::sync::Arc;

    fn zmod(n: usize) -> Ring {
        make_ring(&RingSpec::Zmod { n }).unwrap()
    }

    fn f2xf2() -> Ring {
        make_ring(&RingSpec::Product {
            factors: vec![RingSpec::Zmod { n: 2 }, RingSpec::Zmod { n: 2 }],
        })
        .unwrap()
    }

    fn abelian(n: usize) -> Bimodule {
        let g = AbGroup::from_table(n, (0..n * n).map(|i| (i / n + i % n) % n).collect(), 0).unwrap();
        Arc::new(FinBimodule::new(g, None, None, None).unwrap())
    }

    #[test]
    fn gcd_rule_over_integers() {
        let t = tensor(&abelian(4), &abelian(6), Over::Integers).unwrap();
        assert_eq!(t.module.order(), 2);
        let t = tensor(&abelian(3), &abelian(4), Over::Integers).unwrap();
        assert_eq!(t.module.order(), 1);
    }

    #[test]
    fn unit_law() {
        let r = make_ring(&RingSpec::Matrix {
            base: Box::new(RingSpec::Zmod { n: 2 }),
            size: 2,
            shape: MatrixShape::UpperTriangular,
        })
        .unwrap();
        let reg = Arc::new(FinBimodule::regular(&r));
        let t = tensor(&reg, &reg, Over::Ring).unwrap();
        t.module.validate().unwrap();
        assert_eq!(t.module.order(), 8);
        // m ⊗ r ↦ m r is the unit isomorphism
        let mult = t.induced_map(reg.group(), &|a, b| r.mul(a, b)).unwrap();
        let tm = Arc::new(t.module.clone());
        let h = crate::module::ModuleHom::new(tm, reg.clone(), mult, Linearity::Bi).unwrap();
        assert!(h.is_bijective());
    }

    #[test]
    fn twisted_square_is_regular() {
        let r = f2xf2();
        let swap = automorphism_group(&r)
            .unwrap()
            .into_iter()
            .find(|a| a.table != (0..4).collect::<Vec<_>>())
            .unwrap();
        let id = RingMap::identity(&r);
        let tw = Arc::new(FinBimodule::twisted(&r, &swap, &id).unwrap());
        let t = tensor(&tw, &tw, Over::Ring).unwrap();
        t.module.validate().unwrap();
        let reg = Arc::new(FinBimodule::regular(&r));
        assert!(bimodule_iso(&Arc::new(t.module.clone()), &reg).unwrap().is_some());
        assert!(bimodule_iso(&tw, &reg).unwrap().is_none());
    }

    #[test]
    fn tensor_over_zmod_kills_coprime_parts() {
        let r = zmod(6);
        let reg = Arc::new(FinBimodule::regular(&r));
        let (q, _, _) = reg.quotient(&crate::subset::ElemSet::from_iter(6, [0, 2, 4])).unwrap();
        let (p, _, _) = reg.quotient(&crate::subset::ElemSet::from_iter(6, [0, 3])).unwrap();
        let t = tensor(&Arc::new(q), &Arc::new(p), Over::Ring).unwrap();
        assert_eq!(t.module.order(), 1);
    }

    #[test]
    fn non_balanced_map_is_rejected() {
        let r = f2xf2();
        let reg = Arc::new(FinBimodule::regular(&r));
        let t = tensor(&reg, &reg, Over::Ring).unwrap();
        // (a, b) ↦ a is not biadditive
        assert!(t.induced_map(reg.group(), &|a, _| a).is_err());
    }
}
