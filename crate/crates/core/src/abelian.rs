//! Finite abelian groups.
//!
//! A concrete group is an addition table over `0..n`. On construction it is
//! decomposed into a direct sum of cyclic groups `Z/d_1 + ... + Z/d_k` with
//! `d_1 | d_2 | ... | d_k` via Smith normal form, so every element carries a
//! coordinate vector. Homomorphism spaces are then solved as linear systems
//! over those coordinates.

use std::collections::HashSet;

use crate::error::{Axiom, Error, Result};
use crate::limits;
use crate::subset::ElemSet;

/// Result of a Smith normal form computation `left * A * right = diag`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<i128>,
    pub left: Vec<Vec<i128>>,
    pub right: Vec<Vec<i128>>,
    pub right_inverse: Vec<Vec<i128>>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

/// Smith normal form over the integers, tracking both unimodular transforms
/// and the inverse of the column transform.
pub fn smith_normal_form(matrix: &[Vec<i64>]) -> SmithForm {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut vinv = identity(cols);

    let swap_cols = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, vinv: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        if i == j {
            return;
        }
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        vinv.swap(i, j);
    };
    // col_j += c * col_t
    let add_col =
        |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, vinv: &mut Vec<Vec<i128>>, j: usize, t: usize, c: i128| {
            for row in a.iter_mut() {
                row[j] += c * row[t];
            }
            for row in v.iter_mut() {
                row[j] += c * row[t];
            }
            let (rj, rt) = (vinv[j].clone(), &mut vinv[t]);
            for (x, y) in rt.iter_mut().zip(rj) {
                *x -= c * y;
            }
        };
    // row_i += c * row_t
    let add_row = |a: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, i: usize, t: usize, c: i128| {
        let rt = a[t].clone();
        for (x, y) in a[i].iter_mut().zip(rt) {
            *x += c * y;
        }
        let ut = u[t].clone();
        for (x, y) in u[i].iter_mut().zip(ut) {
            *x += c * y;
        }
    };

    let mut diagonal = Vec::new();
    'outer: for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, &mut v, &mut vinv, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    add_row(&mut a, &mut u, i, t, -q);
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    add_col(&mut a, &mut v, &mut vinv, j, t, -q);
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = a[t][t];
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % pivot != 0));
            match offender {
                Some(i) => add_row(&mut a, &mut u, t, i, 1),
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        diagonal.push(a[t][t]);
    }
    while diagonal.len() < rows.min(cols) {
        diagonal.push(0);
    }
    SmithForm {
        diagonal,
        left: u,
        right: v,
        right_inverse: vinv,
    }
}

/// A finitely presented abelian group: `generators` free generators modulo
/// the row space of `relations`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianPresentation {
    generators: usize,
    relations: Vec<Vec<i64>>,
    invariant_factors: Vec<u64>,
}

impl AbelianPresentation {
    /// Only finite groups are accepted.
    pub fn new(generators: usize, relations: Vec<Vec<i64>>) -> Result<Self> {
        if relations.iter().any(|r| r.len() != generators) {
            return Err(Error::InvalidSpec(format!(
                "relation rows must have {generators} entries"
            )));
        }
        let snf = smith_normal_form(&relations);
        let rank = snf.diagonal.iter().filter(|&&d| d != 0).count();
        if rank < generators {
            return Err(Error::InvalidSpec(format!(
                "presentation has free rank {}; only finite groups are supported",
                generators - rank
            )));
        }
        let invariant_factors = snf.diagonal.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect();
        Ok(AbelianPresentation {
            generators,
            relations,
            invariant_factors,
        })
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(1, vec![vec![n as i64]]).expect("cyclic presentation is finite")
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    /// Nontrivial invariant factors, each dividing the next.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// Materialize the group as an explicit table.
    pub fn to_group(&self) -> Result<AbGroup> {
        AbGroup::cyclic_product(&self.invariant_factors)
    }
}

/// Human-readable name of a group with the given invariant factors.
pub fn invariant_label(factors: &[u64]) -> String {
    if factors.is_empty() {
        "0".to_string()
    } else {
        factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
    }
}

/// A concrete finite abelian group with its cyclic decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbGroup {
    order: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    elem_orders: Vec<u64>,
    presentation: AbelianPresentation,
    basis: Vec<usize>,
    cyclic_orders: Vec<u64>,
    coords: Vec<Vec<u64>>,
    by_coords: Vec<usize>,
}

impl AbGroup {
    /// Validating constructor: closure, associativity, commutativity,
    /// identity and inverses are all checked exhaustively.
    pub fn from_table(order: usize, add: Vec<usize>, zero: usize) -> Result<Self> {
        limits::check_order("group order", order)?;
        check_abelian_axioms(order, &add, zero)?;
        Ok(Self::from_table_unchecked(order, add, zero))
    }

    pub(crate) fn from_table_unchecked(order: usize, add: Vec<usize>, zero: usize) -> Self {
        debug_assert_eq!(add.len(), order * order);
        let neg: Vec<usize> = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| add[a * order + b] == zero)
                    .expect("inverse exists")
            })
            .collect();
        let elem_orders: Vec<u64> = (0..order)
            .map(|a| {
                let mut k = 1;
                let mut x = a;
                while x != zero {
                    x = add[x * order + a];
                    k += 1;
                }
                k
            })
            .collect();
        let mut g = AbGroup {
            order,
            add,
            neg,
            zero,
            elem_orders,
            presentation: AbelianPresentation {
                generators: 0,
                relations: vec![],
                invariant_factors: vec![],
            },
            basis: vec![],
            cyclic_orders: vec![],
            coords: vec![],
            by_coords: vec![],
        };
        g.decompose();
        g
    }

    /// `Z/d_1 + ... + Z/d_k`, elements indexed in mixed radix with the first
    /// coordinate varying fastest.
    pub fn cyclic_product(orders: &[u64]) -> Result<Self> {
        Self::cyclic_product_limited(orders, limits::max_order())
    }

    pub(crate) fn cyclic_product_limited(orders: &[u64], limit: usize) -> Result<Self> {
        let order: u64 = orders.iter().product();
        limits::check("group order", order as usize, limit)?;
        let order = order as usize;
        let digits = |mut x: usize| -> Vec<u64> {
            orders
                .iter()
                .map(|&d| {
                    let r = (x as u64) % d;
                    x /= d as usize;
                    r
                })
                .collect()
        };
        let encode = |v: &[u64]| -> usize {
            let mut idx = 0usize;
            for (&x, &d) in v.iter().zip(orders).rev() {
                idx = idx * d as usize + x as usize;
            }
            idx
        };
        let all: Vec<Vec<u64>> = (0..order).map(digits).collect();
        let mut add = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                let s: Vec<u64> = all[a]
                    .iter()
                    .zip(&all[b])
                    .zip(orders)
                    .map(|((x, y), d)| (x + y) % d)
                    .collect();
                add[a * order + b] = encode(&s);
            }
        }
        Ok(Self::from_table_unchecked(order, add, 0))
    }

    fn decompose(&mut self) {
        let n = self.order;
        // Triangular generating set: g_j has relative order e_j over <g_1..g_{j-1}>.
        let mut in_h = ElemSet::empty(n);
        in_h.insert(self.zero);
        let mut tri: Vec<Option<Vec<i64>>> = vec![None; n];
        tri[self.zero] = Some(vec![]);
        let mut members = vec![self.zero];
        let mut gens: Vec<usize> = Vec::new();
        let mut rel_rows: Vec<Vec<i64>> = Vec::new();
        while members.len() < n {
            let g = (0..n)
                .filter(|&x| !in_h.contains(x))
                .max_by_key(|&x| (self.elem_orders[x], std::cmp::Reverse(x)))
                .expect("group not yet exhausted");
            let j = gens.len();
            let mut e = 1i64;
            let mut x = g;
            while !in_h.contains(x) {
                x = self.add(x, g);
                e += 1;
            }
            let mut row: Vec<i64> = tri[x].clone().unwrap().iter().map(|c| -c).collect();
            row.resize(j, 0);
            row.push(e);
            rel_rows.push(row);
            for r in rel_rows.iter_mut() {
                r.resize(j + 1, 0);
            }
            let old = members.clone();
            let mut shift = g;
            for k in 1..e {
                for &h in &old {
                    let y = self.add(h, shift);
                    let mut c = tri[h].clone().unwrap();
                    c.resize(j, 0);
                    c.push(k);
                    tri[y] = Some(c);
                    in_h.insert(y);
                    members.push(y);
                }
                shift = self.add(shift, g);
            }
            for &h in &old {
                if let Some(c) = tri[h].as_mut() {
                    c.resize(j + 1, 0);
                }
            }
            gens.push(g);
        }
        let k = gens.len();
        for c in tri.iter_mut().flatten() {
            c.resize(k, 0);
        }
        let snf = smith_normal_form(&rel_rows);
        let mut basis = Vec::new();
        let mut cyclic_orders = Vec::new();
        let mut kept = Vec::new();
        for (i, &d) in snf.diagonal.iter().enumerate() {
            if d > 1 {
                // h_i = sum_j Vinv[i][j] g_j
                let mut h = self.zero;
                for (j, &gj) in gens.iter().enumerate() {
                    h = self.add(h, self.times(gj, snf.right_inverse[i][j] as i64));
                }
                basis.push(h);
                cyclic_orders.push(d as u64);
                kept.push(i);
            }
        }
        let coords: Vec<Vec<u64>> = (0..n)
            .map(|a| {
                let x = tri[a].as_ref().unwrap();
                kept.iter()
                    .zip(&cyclic_orders)
                    .map(|(&i, &d)| {
                        let s: i128 = (0..k).map(|j| snf.right[j][i] * i128::from(x[j])).sum();
                        s.rem_euclid(i128::from(d)) as u64
                    })
                    .collect()
            })
            .collect();
        let mut by_coords = vec![usize::MAX; n];
        for (a, c) in coords.iter().enumerate() {
            let idx = mixed_radix(c, &cyclic_orders);
            debug_assert_eq!(by_coords[idx], usize::MAX, "decomposition must be bijective");
            by_coords[idx] = a;
        }
        self.presentation = AbelianPresentation {
            generators: k,
            relations: rel_rows,
            invariant_factors: cyclic_orders.clone(),
        };
        self.basis = basis;
        self.cyclic_orders = cyclic_orders;
        self.coords = coords;
        self.by_coords = by_coords;
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }

    pub fn add_table(&self) -> &[usize] {
        &self.add
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.elem_orders[a]
    }

    /// Exponent of the group (largest invariant factor).
    pub fn exponent(&self) -> u64 {
        self.cyclic_orders.last().copied().unwrap_or(1)
    }

    /// `k * a` for any integer `k`.
    pub fn times(&self, a: usize, k: i64) -> usize {
        let ord = self.elem_orders[a] as i64;
        let k = k.rem_euclid(ord);
        let mut x = self.zero;
        for _ in 0..k {
            x = self.add(x, a);
        }
        x
    }

    /// The triangular presentation the decomposition was derived from.
    pub fn presentation(&self) -> &AbelianPresentation {
        &self.presentation
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.cyclic_orders
    }

    /// Basis elements `h_i` with `ord(h_i) = invariant_factors()[i]`.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn coords(&self, a: usize) -> &[u64] {
        &self.coords[a]
    }

    /// Element with the given coordinates (reduced modulo the cyclic orders).
    pub fn from_coords(&self, c: &[i64]) -> usize {
        let reduced: Vec<u64> = c
            .iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &d)| x.rem_euclid(d as i64) as u64)
            .collect();
        self.by_coords[mixed_radix(&reduced, &self.cyclic_orders)]
    }

    /// Additive closure of `gens`.
    pub fn span(&self, gens: impl IntoIterator<Item = usize>) -> ElemSet {
        let mut set = ElemSet::empty(self.order);
        set.insert(self.zero);
        let mut elems = vec![self.zero];
        for g in gens {
            if set.contains(g) {
                continue;
            }
            let base = elems.clone();
            let mut shift = g;
            while !set.contains(shift) {
                for &e in &base {
                    let y = self.add(e, shift);
                    set.insert(y);
                    elems.push(y);
                }
                shift = self.add(shift, g);
            }
        }
        set
    }

    pub fn is_subgroup(&self, set: &ElemSet) -> bool {
        set.contains(self.zero)
            && set
                .iter()
                .all(|a| set.contains(self.neg[a]) && set.iter().all(|b| set.contains(self.add(a, b))))
    }

    /// The subgroup on `set` (sorted), with its inclusion map.
    pub fn subgroup(&self, set: &ElemSet) -> (AbGroup, Vec<usize>) {
        let elems = set.to_vec();
        let mut index = vec![usize::MAX; self.order];
        for (i, &e) in elems.iter().enumerate() {
            index[e] = i;
        }
        let m = elems.len();
        let mut add = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                add[i * m + j] = index[self.add(elems[i], elems[j])];
            }
        }
        let zero = index[self.zero];
        (AbGroup::from_table_unchecked(m, add, zero), elems)
    }

    /// Quotient by a subgroup. Cosets are indexed in order of their least
    /// element; returns the group, the projection and the coset representatives.
    pub fn quotient(&self, sub: &ElemSet) -> (AbGroup, Vec<usize>, Vec<usize>) {
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for a in 0..self.order {
            if proj[a] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(a);
            for s in sub.iter() {
                proj[self.add(a, s)] = c;
            }
        }
        let m = reps.len();
        let mut add = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                add[i * m + j] = proj[self.add(reps[i], reps[j])];
            }
        }
        let zero = proj[self.zero];
        (AbGroup::from_table_unchecked(m, add, zero), proj, reps)
    }

    /// True if `table` is an additive map from `self` into `target`.
    pub fn is_hom(&self, target: &AbGroup, table: &[usize]) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| table[self.add(a, b)] == target.add(table[a], table[b])))
    }
}

fn mixed_radix(c: &[u64], orders: &[u64]) -> usize {
    let mut idx = 0usize;
    for (&x, &d) in c.iter().zip(orders).rev() {
        idx = idx * d as usize + x as usize;
    }
    idx
}

pub(crate) fn check_abelian_axioms(n: usize, add: &[usize], zero: usize) -> Result<()> {
    let violation = |axiom, witness: Vec<usize>| Err(Error::AxiomViolation { axiom, witness });
    if add.len() != n * n || zero >= n {
        return Err(Error::InvalidSpec(format!("addition table must be {n}x{n}")));
    }
    if let Some(i) = add.iter().position(|&x| x >= n) {
        return violation(Axiom::Closure, vec![i / n, i % n]);
    }
    let at = |a: usize, b: usize| add[a * n + b];
    for a in 0..n {
        if at(a, zero) != a || at(zero, a) != a {
            return violation(Axiom::AddIdentity, vec![a]);
        }
        if !(0..n).any(|b| at(a, b) == zero) {
            return violation(Axiom::AddInverse, vec![a]);
        }
        for b in 0..n {
            if at(a, b) != at(b, a) {
                return violation(Axiom::AddCommutativity, vec![a, b]);
            }
            for c in 0..n {
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return violation(Axiom::AddAssociativity, vec![a, b, c]);
                }
            }
        }
    }
    Ok(())
}

/// A linear condition on a homomorphism `f: A -> B`.
#[derive(Debug, Clone)]
pub enum HomConstraint {
    /// `f(source[a]) = target[f(a)]` for all `a`, where `source` and `target`
    /// are additive endomorphism tables of `A` and `B`.
    Commutes { source: Vec<usize>, target: Vec<usize> },
    /// `f(at) = value`.
    Pin { at: usize, value: usize },
}

struct Equation {
    coeffs: Vec<i64>,
    modulus: i64,
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, s, t) = egcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    egcd(a, b).0
}

/// All homomorphisms `src -> tgt` satisfying `constraints`, as mapping tables
/// in lexicographic order.
///
/// Unknowns are the coordinates of the images of the basis of `src`. Each
/// constraint is a congruence on those coordinates; the solution set is a
/// subgroup cut out one congruence at a time by unimodular column
/// reduction of its generating set. Pins are handled by homogenizing with
/// one extra coordinate that is fixed to 1 at the end.
pub fn solve_hom_space(src: &AbGroup, tgt: &AbGroup, constraints: &[HomConstraint]) -> Result<Vec<Vec<usize>>> {
    let pins: Vec<(usize, usize)> = constraints
        .iter()
        .filter_map(|c| match c {
            HomConstraint::Pin { at, value } => Some((*at, *value)),
            _ => None,
        })
        .collect();
    if tgt.order() == 1 {
        let ok = pins.iter().all(|&(_, v)| v == tgt.zero());
        return Ok(if ok {
            vec![vec![tgt.zero(); src.order()]]
        } else {
            vec![]
        });
    }
    let k = src.basis().len();
    let t = tgt.basis().len();
    let homog = !pins.is_empty();
    let nvars = k * t + usize::from(homog);
    let var = |j: usize, i: usize| j * t + i;
    let d: Vec<i64> = tgt.invariant_factors().iter().map(|&x| x as i64).collect();
    let mut moduli: Vec<i64> = (0..k * t).map(|v| d[v % t]).collect();
    if homog {
        moduli.push(tgt.exponent() as i64);
    }
    let e: Vec<i64> = src.invariant_factors().iter().map(|&x| x as i64).collect();

    let mut eqs: Vec<Equation> = Vec::new();
    for j in 0..k {
        for i in 0..t {
            let mut coeffs = vec![0; nvars];
            coeffs[var(j, i)] = e[j];
            eqs.push(Equation { coeffs, modulus: d[i] });
        }
    }
    // image coordinates of f(a), as linear forms in the unknowns
    let image_forms = |a: usize| -> Vec<Vec<i64>> {
        let ca = src.coords(a);
        (0..t)
            .map(|l| {
                let mut coeffs = vec![0; nvars];
                for (j, &x) in ca.iter().enumerate() {
                    coeffs[var(j, l)] += x as i64;
                }
                coeffs
            })
            .collect()
    };
    for c in constraints {
        match c {
            HomConstraint::Commutes { source, target } => {
                for (j, &bj) in src.basis().iter().enumerate() {
                    let mut forms = image_forms(source[bj]);
                    for (i, &hi) in tgt.basis().iter().enumerate() {
                        let th = tgt.coords(target[hi]);
                        for (l, form) in forms.iter_mut().enumerate() {
                            form[var(j, i)] -= th[l] as i64;
                        }
                    }
                    for (l, coeffs) in forms.into_iter().enumerate() {
                        eqs.push(Equation { coeffs, modulus: d[l] });
                    }
                }
            }
            HomConstraint::Pin { at, value } => {
                let cv = tgt.coords(*value);
                for (l, mut coeffs) in image_forms(*at).into_iter().enumerate() {
                    coeffs[nvars - 1] -= cv[l] as i64;
                    eqs.push(Equation { coeffs, modulus: d[l] });
                }
            }
        }
    }

    let reduce = |v: &mut Vec<i64>| {
        for (x, &m) in v.iter_mut().zip(&moduli) {
            *x = x.rem_euclid(m);
        }
    };
    let mut gens: Vec<Vec<i64>> = (0..nvars)
        .map(|i| {
            let mut v = vec![0; nvars];
            v[i] = 1;
            reduce(&mut v);
            v
        })
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect();

    for eq in &eqs {
        let m = eq.modulus;
        let value = |v: &Vec<i64>| -> i64 { v.iter().zip(&eq.coeffs).map(|(x, c)| x * c).sum::<i64>().rem_euclid(m) };
        let mut c: Vec<i64> = gens.iter().map(value).collect();
        let Some(p) = c.iter().position(|&x| x != 0) else {
            continue;
        };
        for q in p + 1..gens.len() {
            if c[q] == 0 {
                continue;
            }
            let (g, s, tt) = egcd(c[p], c[q]);
            let (a, b) = (c[q] / g, c[p] / g);
            let vp: Vec<i64> = gens[p].iter().zip(&gens[q]).map(|(x, y)| s * x + tt * y).collect();
            let vq: Vec<i64> = gens[p].iter().zip(&gens[q]).map(|(x, y)| a * x - b * y).collect();
            gens[p] = vp;
            gens[q] = vq;
            reduce(&mut gens[p]);
            reduce(&mut gens[q]);
            c[p] = g;
            c[q] = 0;
        }
        let factor = m / gcd(c[p], m);
        for x in gens[p].iter_mut() {
            *x *= factor;
        }
        reduce(&mut gens[p]);
        gens.retain(|v| v.iter().any(|&x| x != 0));
    }

    // enumerate the solution subgroup
    let zero = vec![0i64; nvars];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([zero.clone()]);
    let mut elems = vec![zero];
    for g in &gens {
        let base = elems.clone();
        let mut shift = g.clone();
        while !seen.contains(&shift) {
            for b in &base {
                let mut y: Vec<i64> = b.iter().zip(&shift).map(|(x, s)| x + s).collect();
                reduce(&mut y);
                seen.insert(y.clone());
                elems.push(y);
            }
            limits::check_frontier("hom solution space", elems.len())?;
            shift = shift.iter().zip(g).map(|(x, s)| x + s).collect();
            reduce(&mut shift);
        }
    }

    let mut tables: Vec<Vec<usize>> = elems
        .iter()
        .filter(|y| !homog || y[nvars - 1] == 1)
        .map(|y| {
            (0..src.order())
                .map(|a| {
                    let ca = src.coords(a);
                    let c: Vec<i64> = (0..t)
                        .map(|l| ca.iter().enumerate().map(|(j, &x)| x as i64 * y[var(j, l)]).sum())
                        .collect();
                    tgt.from_coords(&c)
                })
                .collect()
        })
        .collect();
    tables.sort();
    tables.dedup();
    Ok(tables)
}

/// Hom-space solver on presented groups; tables index the materialized groups
/// returned by [`AbelianPresentation::to_group`].
pub fn solve_presented_hom_space(
    source: &AbelianPresentation,
    target: &AbelianPresentation,
    constraints: &[HomConstraint],
) -> Result<Vec<Vec<usize>>> {
    solve_hom_space(&source.to_group()?, &target.to_group()?, constraints)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(n: usize) -> AbGroup {
        let add = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        AbGroup::from_table(n, add, 0).unwrap()
    }

    /// All set maps filtered by the hom property and the constraints.
    fn brute_force(src: &AbGroup, tgt: &AbGroup, constraints: &[HomConstraint]) -> Vec<Vec<usize>> {
        let n = src.order();
        let m = tgt.order();
        let mut out = Vec::new();
        let total = m.pow(n as u32);
        for code in 0..total {
            let mut x = code;
            let table: Vec<usize> = (0..n)
                .map(|_| {
                    let r = x % m;
                    x /= m;
                    r
                })
                .collect();
            if !src.is_hom(tgt, &table) {
                continue;
            }
            let ok = constraints.iter().all(|c| match c {
                HomConstraint::Pin { at, value } => table[*at] == *value,
                HomConstraint::Commutes { source, target } => (0..n).all(|a| table[source[a]] == target[table[a]]),
            });
            if ok {
                out.push(table);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn snf_of_small_matrix() {
        let snf = smith_normal_form(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(snf.diagonal, vec![2, 6, 12]);
    }

    #[test]
    fn snf_transforms_are_consistent() {
        let a = vec![vec![4, 6], vec![6, 9], vec![2, 0]];
        let snf = smith_normal_form(&a);
        let n = 2;
        for i in 0..n {
            for j in 0..n {
                let p: i128 = (0..n).map(|k| snf.right[i][k] * snf.right_inverse[k][j]).sum();
                assert_eq!(p, i128::from(i == j));
            }
        }
        // left * a * right is diagonal
        for i in 0..3 {
            for j in 0..2 {
                let v: i128 = (0..3)
                    .flat_map(|k| (0..2).map(move |l| (k, l)))
                    .map(|(k, l)| snf.left[i][k] * i128::from(a[k][l]) * snf.right[l][j])
                    .sum();
                let want = if i == j { snf.diagonal[i] } else { 0 };
                assert_eq!(v, want);
            }
        }
    }

    #[test]
    fn presentation_rejects_infinite_groups() {
        assert!(AbelianPresentation::new(2, vec![vec![2, 0]]).is_err());
        let p = AbelianPresentation::new(2, vec![vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(p.invariant_factors(), &[6]);
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn decomposition_of_z2_z4() {
        let g = AbGroup::cyclic_product(&[2, 4]).unwrap();
        assert_eq!(g.invariant_factors(), &[2, 4]);
        let g = AbGroup::cyclic_product(&[2, 3]).unwrap();
        assert_eq!(g.invariant_factors(), &[6]);
        for a in 0..g.order() {
            let c: Vec<i64> = g.coords(a).iter().map(|&x| x as i64).collect();
            assert_eq!(g.from_coords(&c), a);
        }
    }

    #[test]
    fn hom_z4_to_z2() {
        let homs = solve_hom_space(&zmod(4), &zmod(2), &[]).unwrap();
        assert_eq!(homs.len(), 2);
    }

    #[test]
    fn hom_z3_to_z4_is_zero() {
        let homs = solve_hom_space(&zmod(3), &zmod(4), &[]).unwrap();
        assert_eq!(homs, vec![vec![0, 0, 0]]);
    }

    #[test]
    fn hom_z6_with_pin_matches_oracle() {
        let g = zmod(6);
        let cons = [HomConstraint::Pin { at: 2, value: 4 }];
        let homs = solve_hom_space(&g, &g, &cons).unwrap();
        assert_eq!(homs, brute_force(&g, &g, &cons));
        let images: Vec<usize> = homs.iter().map(|t| t[1]).collect();
        assert_eq!(images, vec![2, 5]);
    }

    #[test]
    fn hom_space_agrees_with_oracle_on_small_groups() {
        let groups = [
            zmod(1),
            zmod(2),
            zmod(4),
            zmod(6),
            AbGroup::cyclic_product(&[2, 2]).unwrap(),
            AbGroup::cyclic_product(&[2, 4]).unwrap(),
            AbGroup::cyclic_product(&[2, 2, 2]).unwrap(),
        ];
        for a in &groups {
            for b in &groups {
                if (b.order() as f64).powi(a.order() as i32) > 2e6 {
                    continue;
                }
                assert_eq!(
                    solve_hom_space(a, b, &[]).unwrap(),
                    brute_force(a, b, &[]),
                    "{:?} -> {:?}",
                    a.invariant_factors(),
                    b.invariant_factors()
                );
            }
        }
    }

    #[test]
    fn commuting_constraint_matches_oracle() {
        // f(2a) = 3 f(a) on Z/8 -> Z/8
        let g = zmod(8);
        let src: Vec<usize> = (0..8).map(|a| 2 * a % 8).collect();
        let tgt: Vec<usize> = (0..8).map(|a| 3 * a % 8).collect();
        let cons = [HomConstraint::Commutes {
            source: src,
            target: tgt,
        }];
        assert_eq!(solve_hom_space(&g, &g, &cons).unwrap(), brute_force(&g, &g, &cons));
    }

    #[test]
    fn quotient_and_subgroup() {
        let g = zmod(6);
        let sub = g.span([3]);
        assert_eq!(sub.to_vec(), vec![0, 3]);
        let (q, proj, reps) = g.quotient(&sub);
        assert_eq!(q.order(), 3);
        assert_eq!(reps, vec![0, 1, 2]);
        assert!(g.is_hom(&q, &proj));
        let (s, incl) = g.subgroup(&g.span([2]));
        assert_eq!(s.order(), 3);
        assert_eq!(incl, vec![0, 2, 4]);
    }
}
