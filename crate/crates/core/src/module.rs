//! Finite bimodules with explicit action tables, homomorphisms and torsion.

use std::fmt;
use std::sync::Arc;

use crate::abelian::{solve_hom_space, AbGroup, HomConstraint};
use crate::error::{Axiom, Error, Result};
use crate::filter::GabrielFilter;
use crate::ideal::Side;
use crate::ring::{same_ring, Ring, RingMap};
use crate::subset::ElemSet;

/// A ring acting on one side of a module; `table[r * n + m]` is `r·m` for a
/// left action and `m·r` for a right action.
#[derive(Clone, PartialEq, Eq)]
pub struct Action {
    ring: Ring,
    table: Vec<usize>,
}

impl Action {
    pub fn new(ring: Ring, table: Vec<usize>) -> Self {
        Action { ring, table }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// The endomorphism of the module given by `r`.
    pub fn row(&self, r: usize) -> &[usize] {
        let n = self.table.len() / self.ring.order();
        &self.table[r * n..(r + 1) * n]
    }
}

/// A finite R-S-bimodule. A missing action means the integers act on that side.
#[derive(Clone, PartialEq, Eq)]
pub struct FinBimodule {
    group: AbGroup,
    left: Option<Action>,
    right: Option<Action>,
    labels: Vec<String>,
}

pub type Bimodule = Arc<FinBimodule>;

impl fmt::Debug for FinBimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinBimodule")
            .field("order", &self.order())
            .field("additive", &self.group.invariant_factors())
            .field("left", &self.left.as_ref().map(|a| a.ring.order()))
            .field("right", &self.right.as_ref().map(|a| a.ring.order()))
            .finish()
    }
}

/// Which actions a homomorphism must respect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Linearity {
    Additive,
    Left,
    Right,
    Bi,
}

impl Linearity {
    fn left(self) -> bool {
        matches!(self, Linearity::Left | Linearity::Bi)
    }

    fn right(self) -> bool {
        matches!(self, Linearity::Right | Linearity::Bi)
    }
}

impl FinBimodule {
    /// Validating constructor: biadditivity, associativity, unitality of each
    /// action and compatibility `(r m) s = r (m s)`.
    pub fn new(
        group: AbGroup,
        left: Option<Action>,
        right: Option<Action>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let labels = labels.unwrap_or_else(|| (0..group.order()).map(|i| i.to_string()).collect());
        let m = FinBimodule {
            group,
            left,
            right,
            labels,
        };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        group: AbGroup,
        left: Option<Action>,
        right: Option<Action>,
        labels: Vec<String>,
    ) -> Self {
        FinBimodule {
            group,
            left,
            right,
            labels,
        }
    }

    /// `R` acting on itself on both sides.
    pub fn regular(ring: &Ring) -> Self {
        let table: Vec<usize> = ring.mul_table().to_vec();
        let n = ring.order();
        let right: Vec<usize> = (0..n * n).map(|i| ring.mul(i % n, i / n)).collect();
        FinBimodule {
            group: ring.additive().clone(),
            left: Some(Action::new(ring.clone(), table)),
            right: Some(Action::new(ring.clone(), right)),
            labels: ring.labels().to_vec(),
        }
    }

    /// `R` with left action through `phi` and right action through `psi`.
    pub fn twisted(ring: &Ring, phi: &RingMap, psi: &RingMap) -> Result<Self> {
        FinBimodule::regular(ring).restrict_scalars(Some(phi), Some(psi))
    }

    /// Pull actions back along ring maps into the acting rings.
    pub fn restrict_scalars(&self, left: Option<&RingMap>, right: Option<&RingMap>) -> Result<Self> {
        let n = self.order();
        let pull = |act: &Option<Action>, map: Option<&RingMap>| -> Result<Option<Action>> {
            match (act, map) {
                (a, None) => Ok(a.clone()),
                (None, Some(_)) => Err(Error::mismatch("no action to restrict")),
                (Some(a), Some(f)) => {
                    if !same_ring(&f.target, &a.ring) {
                        return Err(Error::mismatch("ring map target differs from the acting ring"));
                    }
                    let table = (0..f.source.order()).flat_map(|r| a.row(f.apply(r)).to_vec()).collect();
                    Ok(Some(Action::new(f.source.clone(), table)))
                }
            }
        };
        let out = FinBimodule {
            group: self.group.clone(),
            left: pull(&self.left, left)?,
            right: pull(&self.right, right)?,
            labels: self.labels.clone(),
        };
        debug_assert_eq!(out.order(), n);
        Ok(out)
    }

    /// Drop actions; `keep_left = false` lets the integers act on the left.
    pub fn forget(&self, keep_left: bool, keep_right: bool) -> Self {
        FinBimodule {
            group: self.group.clone(),
            left: if keep_left { self.left.clone() } else { None },
            right: if keep_right { self.right.clone() } else { None },
            labels: self.labels.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        let g = &self.group;
        if self.labels.len() != n {
            return Err(Error::mismatch("label count differs from module order"));
        }
        let bad = |axiom, witness: Vec<usize>| Err(Error::AxiomViolation { axiom, witness });
        for (act, is_left) in [(&self.left, true), (&self.right, false)] {
            let Some(a) = act else { continue };
            let r = &a.ring;
            if a.table.len() != r.order() * n || a.table.iter().any(|&x| x >= n) {
                return bad(Axiom::Closure, vec![]);
            }
            let op = |s: usize, m: usize| a.table[s * n + m];
            for m in 0..n {
                if op(r.one(), m) != m {
                    return bad(Axiom::Unital, vec![m]);
                }
            }
            for s in 0..r.order() {
                for m in 0..n {
                    for m2 in 0..n {
                        if op(s, g.add(m, m2)) != g.add(op(s, m), op(s, m2)) {
                            return bad(Axiom::LeftDistributivity, vec![s, m, m2]);
                        }
                    }
                    for t in 0..r.order() {
                        if op(r.add(s, t), m) != g.add(op(s, m), op(t, m)) {
                            return bad(Axiom::RightDistributivity, vec![s, t, m]);
                        }
                        // left: (st)m = s(tm); right: m(st) = (ms)t
                        let lhs = op(r.mul(s, t), m);
                        let rhs = if is_left { op(s, op(t, m)) } else { op(t, op(s, m)) };
                        if lhs != rhs {
                            return bad(Axiom::Associativity, vec![s, t, m]);
                        }
                    }
                }
            }
        }
        if let (Some(l), Some(rt)) = (&self.left, &self.right) {
            for r in 0..l.ring.order() {
                for s in 0..rt.ring.order() {
                    for m in 0..n {
                        if rt.table[s * n + l.table[r * n + m]] != l.table[r * n + rt.table[s * n + m]] {
                            return bad(Axiom::Compatibility, vec![r, m, s]);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn zero(&self) -> usize {
        self.group.zero()
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.group.add(a, b)
    }

    pub fn left(&self) -> Option<&Action> {
        self.left.as_ref()
    }

    pub fn right(&self) -> Option<&Action> {
        self.right.as_ref()
    }

    pub fn left_ring(&self) -> Option<&Ring> {
        self.left.as_ref().map(|a| &a.ring)
    }

    pub fn right_ring(&self) -> Option<&Ring> {
        self.right.as_ref().map(|a| &a.ring)
    }

    /// `r · m`.
    #[inline]
    pub fn lact(&self, r: usize, m: usize) -> usize {
        let a = self.left.as_ref().expect("module has a left action");
        a.table[r * self.order() + m]
    }

    /// `m · s`.
    #[inline]
    pub fn ract(&self, m: usize, s: usize) -> usize {
        let a = self.right.as_ref().expect("module has a right action");
        a.table[s * self.order() + m]
    }

    pub fn label(&self, m: usize) -> &str {
        &self.labels[m]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order());
        self.labels = labels;
        self
    }

    /// Smallest subset containing `gens` closed under addition and the
    /// actions selected by `linearity`.
    pub fn span(&self, gens: impl IntoIterator<Item = usize>, linearity: Linearity) -> ElemSet {
        let mut set = self.group.span(gens);
        loop {
            let mut extra = Vec::new();
            for m in set.iter() {
                if linearity.left() {
                    if let Some(a) = &self.left {
                        for r in 0..a.ring.order() {
                            let x = a.table[r * self.order() + m];
                            if !set.contains(x) {
                                extra.push(x);
                            }
                        }
                    }
                }
                if linearity.right() {
                    if let Some(a) = &self.right {
                        for s in 0..a.ring.order() {
                            let x = a.table[s * self.order() + m];
                            if !set.contains(x) {
                                extra.push(x);
                            }
                        }
                    }
                }
            }
            if extra.is_empty() {
                return set;
            }
            set = self.group.span(set.iter().chain(extra));
        }
    }

    pub fn is_submodule(&self, set: &ElemSet, linearity: Linearity) -> bool {
        self.span(set.iter(), linearity) == *set
    }

    /// The submodule on `set` keeping the selected actions, with inclusion.
    pub fn restrict(&self, set: &ElemSet, linearity: Linearity) -> Result<(FinBimodule, Vec<usize>)> {
        if !self.is_submodule(set, linearity) {
            return Err(Error::mismatch(format!("{set:?} is not a submodule")));
        }
        let (group, incl) = self.group.subgroup(set);
        let mut index = vec![usize::MAX; self.order()];
        for (i, &e) in incl.iter().enumerate() {
            index[e] = i;
        }
        let sub_action = |act: &Option<Action>, keep: bool| -> Option<Action> {
            let a = act.as_ref().filter(|_| keep)?;
            let table = (0..a.ring.order())
                .flat_map(|r| {
                    incl.iter()
                        .map(|&m| index[a.table[r * self.order() + m]])
                        .collect::<Vec<_>>()
                })
                .collect();
            Some(Action::new(a.ring.clone(), table))
        };
        let module = FinBimodule {
            group,
            left: sub_action(&self.left, linearity.left()),
            right: sub_action(&self.right, linearity.right()),
            labels: incl.iter().map(|&m| self.labels[m].clone()).collect(),
        };
        Ok((module, incl))
    }

    /// `M / sub`, with projection and coset representatives (least indices).
    pub fn quotient(&self, sub: &ElemSet) -> Result<(FinBimodule, Vec<usize>, Vec<usize>)> {
        if !self.is_submodule(sub, Linearity::Bi) {
            return Err(Error::mismatch(format!("{sub:?} is not a subbimodule")));
        }
        let (group, proj, reps) = self.group.quotient(sub);
        let q_action = |act: &Option<Action>| -> Option<Action> {
            let a = act.as_ref()?;
            let table = (0..a.ring.order())
                .flat_map(|r| {
                    reps.iter()
                        .map(|&m| proj[a.table[r * self.order() + m]])
                        .collect::<Vec<_>>()
                })
                .collect();
            Some(Action::new(a.ring.clone(), table))
        };
        let labels = reps
            .iter()
            .map(|&m| {
                if sub.count() == 1 {
                    self.labels[m].clone()
                } else {
                    format!("[{}]", self.labels[m])
                }
            })
            .collect();
        let module = FinBimodule {
            group,
            left: q_action(&self.left),
            right: q_action(&self.right),
            labels,
        };
        Ok((module, proj, reps))
    }

    /// `{r · m | r in set}` spanned, or `{m · s}` on the right.
    pub fn ideal_times(&self, side: Side, ideal: &ElemSet, sub: &ElemSet) -> ElemSet {
        let mut prods = Vec::new();
        for x in ideal.iter() {
            for m in sub.iter() {
                prods.push(match side {
                    Side::Left => self.lact(x, m),
                    _ => self.ract(m, x),
                });
            }
        }
        self.group.span(prods)
    }

    /// Elements annihilated by `ideal` on the given side.
    pub fn annihilated_by(&self, side: Side, ideal: &ElemSet) -> ElemSet {
        let z = self.zero();
        ElemSet::from_iter(
            self.order(),
            (0..self.order()).filter(|&m| {
                ideal.iter().all(|x| {
                    let p = match side {
                        Side::Left => self.lact(x, m),
                        _ => self.ract(m, x),
                    };
                    p == z
                })
            }),
        )
    }
}

/// A homomorphism given by its table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleHom {
    pub source: Bimodule,
    pub target: Bimodule,
    pub table: Vec<usize>,
    pub linearity: Linearity,
}

impl ModuleHom {
    pub fn new(source: Bimodule, target: Bimodule, table: Vec<usize>, linearity: Linearity) -> Result<Self> {
        let h = ModuleHom {
            source,
            target,
            table,
            linearity,
        };
        if !h.is_valid() {
            return Err(Error::NotWellDefined(format!(
                "table is not a {linearity:?}-linear map"
            )));
        }
        Ok(h)
    }

    pub fn apply(&self, m: usize) -> usize {
        self.table[m]
    }

    pub fn is_valid(&self) -> bool {
        is_linear(&self.source, &self.target, &self.table, self.linearity)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order()
            && ElemSet::from_iter(self.target.order(), self.table.iter().copied()).count() == self.table.len()
    }

    pub fn kernel(&self) -> ElemSet {
        let z = self.target.zero();
        ElemSet::from_iter(
            self.source.order(),
            (0..self.source.order()).filter(|&m| self.table[m] == z),
        )
    }

    pub fn image(&self) -> ElemSet {
        ElemSet::from_iter(self.target.order(), self.table.iter().copied())
    }
}

/// Exhaustive linearity test of a table.
pub fn is_linear(a: &FinBimodule, b: &FinBimodule, table: &[usize], linearity: Linearity) -> bool {
    if table.len() != a.order() || table.iter().any(|&x| x >= b.order()) {
        return false;
    }
    if !a.group.is_hom(&b.group, table) {
        return false;
    }
    let n = a.order();
    if linearity.left() {
        let (Some(la), Some(lb)) = (&a.left, &b.left) else {
            return false;
        };
        if !same_ring(&la.ring, &lb.ring) {
            return false;
        }
        for r in 0..la.ring.order() {
            if (0..n).any(|m| table[la.table[r * n + m]] != lb.table[r * b.order() + table[m]]) {
                return false;
            }
        }
    }
    if linearity.right() {
        let (Some(ra), Some(rb)) = (&a.right, &b.right) else {
            return false;
        };
        if !same_ring(&ra.ring, &rb.ring) {
            return false;
        }
        for s in 0..ra.ring.order() {
            if (0..n).any(|m| table[ra.table[s * n + m]] != rb.table[s * b.order() + table[m]]) {
                return false;
            }
        }
    }
    true
}

fn action_constraints(a: &FinBimodule, b: &FinBimodule, linearity: Linearity) -> Result<Vec<HomConstraint>> {
    let mut cons = Vec::new();
    for (wanted, sa, sb, what) in [
        (linearity.left(), &a.left, &b.left, "left"),
        (linearity.right(), &a.right, &b.right, "right"),
    ] {
        if !wanted {
            continue;
        }
        let (Some(x), Some(y)) = (sa, sb) else {
            return Err(Error::mismatch(format!("{what} action missing")));
        };
        if !same_ring(&x.ring, &y.ring) {
            return Err(Error::mismatch(format!("{what} acting rings differ")));
        }
        for &r in x.ring.additive_generators() {
            cons.push(HomConstraint::Commutes {
                source: x.row(r).to_vec(),
                target: y.row(r).to_vec(),
            });
        }
    }
    Ok(cons)
}

/// Every homomorphism `a -> b` respecting `linearity`, in lexicographic order
/// of tables.
pub fn enumerate_hom_tables(a: &FinBimodule, b: &FinBimodule, linearity: Linearity) -> Result<Vec<Vec<usize>>> {
    let cons = action_constraints(a, b, linearity)?;
    solve_hom_space(&a.group, &b.group, &cons)
}

pub fn enumerate_homs(a: &Bimodule, b: &Bimodule, linearity: Linearity) -> Result<Vec<ModuleHom>> {
    Ok(enumerate_hom_tables(a, b, linearity)?
        .into_iter()
        .map(|table| ModuleHom {
            source: a.clone(),
            target: b.clone(),
            table,
            linearity,
        })
        .collect())
}

/// A submodule together with the quotient by it.
#[derive(Debug, Clone)]
pub struct Torsion {
    pub submodule: ElemSet,
    pub quotient: FinBimodule,
    pub projection: Vec<usize>,
    pub representatives: Vec<usize>,
}

fn with_quotient(m: &FinBimodule, sub: ElemSet) -> Result<Torsion> {
    let (quotient, projection, representatives) = m.quotient(&sub)?;
    Ok(Torsion {
        submodule: sub,
        quotient,
        projection,
        representatives,
    })
}

fn check_filter_ring(m: &FinBimodule, f: &GabrielFilter) -> Result<()> {
    let ring = match f.side() {
        Side::Left => m.left_ring(),
        _ => m.right_ring(),
    };
    match ring {
        Some(r) if same_ring(r, f.ring()) => Ok(()),
        _ => Err(Error::mismatch(format!(
            "module has no {} action by the filter's ring",
            f.side()
        ))),
    }
}

/// `{m | m·I_min = 0}` for a right filter, `{m | I_min·m = 0}` for a left one.
pub fn torsion_submodule(m: &FinBimodule, f: &GabrielFilter) -> Result<Torsion> {
    check_filter_ring(m, f)?;
    with_quotient(m, m.annihilated_by(f.side(), f.min()))
}

/// `{m | D_min·m = 0 and m·H_min = 0}`.
pub fn two_sided_torsion(m: &FinBimodule, dl: &GabrielFilter, hr: &GabrielFilter) -> Result<Torsion> {
    if dl.side() != Side::Left || hr.side() != Side::Right {
        return Err(Error::mismatch("two-sided torsion needs a left and a right filter"));
    }
    check_filter_ring(m, dl)?;
    check_filter_ring(m, hr)?;
    let sub = m
        .annihilated_by(Side::Left, dl.min())
        .intersection(&m.annihilated_by(Side::Right, hr.min()));
    with_quotient(m, sub)
}

pub fn is_torsion(m: &FinBimodule, f: &GabrielFilter) -> Result<bool> {
    Ok(torsion_submodule(m, f)?.submodule.count() == m.order())
}

pub fn is_torsion_free(m: &FinBimodule, f: &GabrielFilter) -> Result<bool> {
    Ok(torsion_submodule(m, f)?.submodule.count() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::filter_closure;
    use crate::ring::{automorphism_group, make_ring, MatrixShape, RingSpec};

    fn zmod(n: usize) -> Ring {
        make_ring(&RingSpec::Zmod { n }).unwrap()
    }

    fn t2f2() -> Ring {
        make_ring(&RingSpec::Matrix {
            base: Box::new(RingSpec::Zmod { n: 2 }),
            size: 2,
            shape: MatrixShape::UpperTriangular,
        })
        .unwrap()
    }

    /// Left `Z/n`-module `Z/k` for `k | n`.
    fn cyclic_left(n: usize, k: usize) -> FinBimodule {
        let r = zmod(n);
        let group = AbGroup::from_table(k, (0..k * k).map(|i| (i / k + i % k) % k).collect(), 0).unwrap();
        let table = (0..n * k).map(|i| (i / k) * (i % k) % k).collect();
        FinBimodule::new(group, Some(Action::new(r, table)), None, None).unwrap()
    }

    /// Every additive map respecting the actions, by trying all set maps.
    fn brute_force_homs(a: &FinBimodule, b: &FinBimodule, lin: Linearity) -> Vec<Vec<usize>> {
        let (n, m) = (a.order(), b.order());
        let mut out = Vec::new();
        let total = (m as u64).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let table: Vec<usize> = (0..n)
                .map(|_| {
                    let d = (c % m as u64) as usize;
                    c /= m as u64;
                    d
                })
                .collect();
            if is_linear(a, b, &table, lin) {
                out.push(table);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn regular_and_twisted_modules_validate() {
        let r = t2f2();
        FinBimodule::regular(&r).validate().unwrap();
        for phi in automorphism_group(&r).unwrap() {
            FinBimodule::twisted(&r, &phi, &RingMap::identity(&r))
                .unwrap()
                .validate()
                .unwrap();
        }
    }

    #[test]
    fn homs_z4_to_z2() {
        let a = cyclic_left(4, 4);
        let b = cyclic_left(4, 2);
        assert_eq!(enumerate_hom_tables(&a, &b, Linearity::Left).unwrap().len(), 2);
    }

    #[test]
    fn homs_from_ideal_of_z6_to_z3() {
        let r = zmod(6);
        let reg = FinBimodule::regular(&r).forget(true, false);
        let (ideal, _) = reg
            .restrict(&ElemSet::from_iter(6, [0, 2, 4]), Linearity::Left)
            .unwrap();
        let z3 = cyclic_left(6, 3);
        let homs = enumerate_hom_tables(&ideal, &z3, Linearity::Left).unwrap();
        assert_eq!(homs.len(), 3);
        assert_eq!(homs, brute_force_homs(&ideal, &z3, Linearity::Left));
    }

    #[test]
    fn homs_from_principal_right_ideals_match_oracle() {
        let r = t2f2();
        let reg = FinBimodule::regular(&r).forget(false, true);
        for x in 0..8 {
            let set = crate::ideal::generate(&r, Side::Right, [x]);
            let (ideal, _) = reg.restrict(&set, Linearity::Right).unwrap();
            let homs = enumerate_hom_tables(&ideal, &reg, Linearity::Right).unwrap();
            assert_eq!(homs, brute_force_homs(&ideal, &reg, Linearity::Right), "x = {x}");
        }
    }

    #[test]
    fn bimodule_homs_match_oracle() {
        let r = make_ring(&RingSpec::Product {
            factors: vec![RingSpec::Zmod { n: 2 }, RingSpec::Zmod { n: 2 }],
        })
        .unwrap();
        let reg = FinBimodule::regular(&r);
        for phi in automorphism_group(&r).unwrap() {
            let tw = FinBimodule::twisted(&r, &phi, &RingMap::identity(&r)).unwrap();
            for lin in [Linearity::Additive, Linearity::Left, Linearity::Right, Linearity::Bi] {
                assert_eq!(
                    enumerate_hom_tables(&reg, &tw, lin).unwrap(),
                    brute_force_homs(&reg, &tw, lin)
                );
            }
        }
    }

    #[test]
    fn torsion_of_z6() {
        let r = zmod(6);
        let f = filter_closure(&r, Side::Right, &[ElemSet::from_iter(6, [0, 2, 4])]).unwrap();
        let m = FinBimodule::regular(&r);
        let t = torsion_submodule(&m, &f).unwrap();
        assert_eq!(t.submodule.to_vec(), vec![0, 3]);
        assert_eq!(t.quotient.order(), 3);
        let tq = torsion_submodule(&t.quotient, &f).unwrap();
        assert_eq!(tq.submodule.count(), 1);
    }

    #[test]
    fn trivial_and_total_filters() {
        let r = t2f2();
        let m = FinBimodule::regular(&r);
        for side in [Side::Left, Side::Right] {
            assert!(is_torsion_free(&m, &GabrielFilter::trivial(&r, side)).unwrap());
            assert!(is_torsion(&m, &GabrielFilter::all(&r, side)).unwrap());
        }
    }

    #[test]
    fn quotient_actions_are_induced() {
        let r = zmod(6);
        let m = FinBimodule::regular(&r);
        let (q, proj, _) = m.quotient(&ElemSet::from_iter(6, [0, 3])).unwrap();
        q.validate().unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(proj[m.lact(x, y)], q.lact(x, proj[y]));
            }
        }
    }
}
