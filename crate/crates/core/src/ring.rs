//! Finite unital rings given by full addition and multiplication tables.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::abelian::{check_abelian_axioms, AbGroup};
use crate::error::{Axiom, Error, Result};
use crate::limits;
use crate::search::{MapSearch, Signature};
use crate::subset::ElemSet;

pub type Ring = Arc<FiniteRing>;

/// A finite associative unital ring on the carrier `0..order`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRing {
    additive: AbGroup,
    mul: Vec<usize>,
    one: usize,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("order", &self.order())
            .field("additive", &self.additive.invariant_factors())
            .finish()
    }
}

/// Shape of a matrix ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixShape {
    #[default]
    Full,
    UpperTriangular,
}

/// Declarative description of a ring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RingSpec {
    Zmod {
        n: usize,
    },
    Matrix {
        base: Box<RingSpec>,
        size: usize,
        #[serde(default)]
        shape: MatrixShape,
    },
    Product {
        factors: Vec<RingSpec>,
    },
    /// `Z/p[x]` modulo the monic polynomial with lower coefficients `tail`.
    PolyQuotient {
        p: usize,
        tail: Vec<usize>,
    },
    Table {
        order: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
}

/// Build and validate a ring from its description.
pub fn make_ring(spec: &RingSpec) -> Result<Ring> {
    let ring = match spec {
        RingSpec::Zmod { n } => FiniteRing::zmod(*n)?,
        RingSpec::Matrix { base, size, shape } => FiniteRing::matrix(&*make_ring(base)?, *size, *shape)?,
        RingSpec::Product { factors } => {
            let rings = factors.iter().map(make_ring).collect::<Result<Vec<_>>>()?;
            FiniteRing::product(&rings)?
        }
        RingSpec::PolyQuotient { p, tail } => FiniteRing::poly_quotient(*p, tail)?,
        RingSpec::Table {
            order,
            add,
            mul,
            zero,
            one,
            labels,
        } => {
            let flat = |t: &Vec<Vec<usize>>, what: &str| -> Result<Vec<usize>> {
                if t.len() != *order || t.iter().any(|r| r.len() != *order) {
                    return Err(Error::InvalidSpec(format!("{what} table must be {order}x{order}")));
                }
                Ok(t.iter().flatten().copied().collect())
            };
            FiniteRing::from_tables(flat(add, "add")?, flat(mul, "mul")?, *zero, *one, labels.clone())?
        }
    };
    Ok(Arc::new(ring))
}

impl FiniteRing {
    /// Validating constructor. All ring axioms are checked exhaustively.
    pub fn from_tables(
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = (add.len() as f64).sqrt() as usize;
        if n == 0 || n * n != add.len() || mul.len() != add.len() {
            return Err(Error::InvalidSpec("tables must be square and of equal size".into()));
        }
        limits::check_order("ring order", n)?;
        check_abelian_axioms(n, &add, zero)?;
        check_ring_axioms(n, &add, &mul, one)?;
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(Error::InvalidSpec(format!("{} labels for {n} elements", l.len())));
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteRing {
            additive: AbGroup::from_table_unchecked(n, add, zero),
            mul,
            one,
            labels,
        })
    }

    /// Internal constructor for tables that are rings by construction; the
    /// axioms are still verified.
    pub(crate) fn from_parts(additive: AbGroup, mul: Vec<usize>, one: usize, labels: Vec<String>) -> Result<Self> {
        check_ring_axioms(additive.order(), additive.add_table(), &mul, one)?;
        Ok(FiniteRing {
            additive,
            mul,
            one,
            labels,
        })
    }

    /// Exhaustive associativity, distributivity and unit check on the tables.
    pub fn check_axioms(&self) -> Result<()> {
        check_ring_axioms(self.order(), self.additive.add_table(), &self.mul, self.one)
    }

    pub fn zmod(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("zmod needs n >= 1".into()));
        }
        limits::check_order("ring order", n)?;
        let add = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let mul = (0..n * n).map(|i| (i / n) * (i % n) % n).collect();
        Self::from_tables(add, mul, 0, 1 % n, None)
    }

    /// `k x k` matrices over `base`, flattened row-major with the first entry
    /// most significant. Upper-triangular matrices keep only entries `i <= j`.
    pub fn matrix(base: &FiniteRing, k: usize, shape: MatrixShape) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidSpec("matrix size must be positive".into()));
        }
        let positions: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .filter(|&(i, j)| shape == MatrixShape::Full || i <= j)
            .collect();
        let b = base.order();
        let order = (b as f64).powi(positions.len() as i32);
        if order > limits::max_order() as f64 {
            return Err(Error::SizeLimit {
                what: "ring order",
                size: order as usize,
                limit: limits::max_order(),
            });
        }
        let order = order as usize;
        let decode = |mut x: usize| -> Vec<Vec<usize>> {
            let mut m = vec![vec![base.zero(); k]; k];
            for &(i, j) in positions.iter().rev() {
                m[i][j] = x % b;
                x /= b;
            }
            m
        };
        let encode = |m: &Vec<Vec<usize>>| -> usize { positions.iter().fold(0, |acc, &(i, j)| acc * b + m[i][j]) };
        let mats: Vec<Vec<Vec<usize>>> = (0..order).map(decode).collect();
        let mut add = vec![0; order * order];
        let mut mul = vec![0; order * order];
        for x in 0..order {
            for y in 0..order {
                let (p, q) = (&mats[x], &mats[y]);
                let s: Vec<Vec<usize>> = (0..k)
                    .map(|i| (0..k).map(|j| base.add(p[i][j], q[i][j])).collect())
                    .collect();
                let t: Vec<Vec<usize>> = (0..k)
                    .map(|i| {
                        (0..k)
                            .map(|j| (0..k).fold(base.zero(), |acc, l| base.add(acc, base.mul(p[i][l], q[l][j]))))
                            .collect()
                    })
                    .collect();
                add[x * order + y] = encode(&s);
                mul[x * order + y] = encode(&t);
            }
        }
        let mut id = vec![vec![base.zero(); k]; k];
        for (i, row) in id.iter_mut().enumerate() {
            row[i] = base.one();
        }
        let labels = mats
            .iter()
            .map(|m| {
                let rows: Vec<String> = m
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|&e| base.label(e).to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                format!("[{}]", rows.join("; "))
            })
            .collect();
        Self::from_tables(
            add,
            mul,
            encode(&vec![vec![base.zero(); k]; k]),
            encode(&id),
            Some(labels),
        )
    }

    /// Direct product, tuples flattened with the first factor most significant.
    pub fn product(factors: &[Ring]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidSpec("product needs at least one factor".into()));
        }
        let order = factors.iter().map(|r| r.order() as f64).product::<f64>();
        if order > limits::max_order() as f64 {
            return Err(Error::SizeLimit {
                what: "ring order",
                size: order as usize,
                limit: limits::max_order(),
            });
        }
        let order = order as usize;
        let decode = |mut x: usize| -> Vec<usize> {
            let mut t = vec![0; factors.len()];
            for (slot, r) in t.iter_mut().zip(factors).rev() {
                *slot = x % r.order();
                x /= r.order();
            }
            t
        };
        let encode = |t: &[usize]| -> usize { t.iter().zip(factors).fold(0, |acc, (&e, r)| acc * r.order() + e) };
        let tuples: Vec<Vec<usize>> = (0..order).map(decode).collect();
        let mut add = vec![0; order * order];
        let mut mul = vec![0; order * order];
        for x in 0..order {
            for y in 0..order {
                let s: Vec<usize> = (0..factors.len())
                    .map(|i| factors[i].add(tuples[x][i], tuples[y][i]))
                    .collect();
                let p: Vec<usize> = (0..factors.len())
                    .map(|i| factors[i].mul(tuples[x][i], tuples[y][i]))
                    .collect();
                add[x * order + y] = encode(&s);
                mul[x * order + y] = encode(&p);
            }
        }
        let zero: Vec<usize> = factors.iter().map(|r| r.zero()).collect();
        let one: Vec<usize> = factors.iter().map(|r| r.one()).collect();
        let labels = tuples
            .iter()
            .map(|t| {
                let parts: Vec<&str> = t.iter().zip(factors).map(|(&e, r)| r.label(e)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        Self::from_tables(add, mul, encode(&zero), encode(&one), Some(labels))
    }

    /// `Z/p[x] / (x^d + c_{d-1} x^{d-1} + ... + c_0)` with `tail = [c_0, ..., c_{d-1}]`.
    /// Elements are coefficient vectors, constant term least significant.
    pub fn poly_quotient(p: usize, tail: &[usize]) -> Result<Self> {
        let d = tail.len();
        if p < 2 || d == 0 {
            return Err(Error::InvalidSpec(
                "polynomial quotient needs p >= 2 and degree >= 1".into(),
            ));
        }
        let order = (p as f64).powi(d as i32);
        if order > limits::max_order() as f64 {
            return Err(Error::SizeLimit {
                what: "ring order",
                size: order as usize,
                limit: limits::max_order(),
            });
        }
        let order = order as usize;
        let decode = |mut x: usize| -> Vec<usize> {
            (0..d)
                .map(|_| {
                    let c = x % p;
                    x /= p;
                    c
                })
                .collect()
        };
        let encode = |v: &[usize]| -> usize { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let polys: Vec<Vec<usize>> = (0..order).map(decode).collect();
        let mut add = vec![0; order * order];
        let mut mul = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                let s: Vec<usize> = (0..d).map(|i| (polys[a][i] + polys[b][i]) % p).collect();
                let mut prod = vec![0usize; 2 * d];
                for i in 0..d {
                    for j in 0..d {
                        prod[i + j] = (prod[i + j] + polys[a][i] * polys[b][j]) % p;
                    }
                }
                // x^d = -(c_0 + ... + c_{d-1} x^{d-1})
                for k in (d..2 * d).rev() {
                    let c = prod[k];
                    prod[k] = 0;
                    for (i, &t) in tail.iter().enumerate() {
                        prod[k - d + i] = (prod[k - d + i] + (p - t % p) * c) % p;
                    }
                }
                add[a * order + b] = encode(&s);
                mul[a * order + b] = encode(&prod[..d]);
            }
        }
        let labels = polys
            .iter()
            .map(|v| {
                let terms: Vec<String> = v
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|&(_, &c)| c != 0)
                    .map(|(i, &c)| match (i, c) {
                        (0, c) => c.to_string(),
                        (1, 1) => "x".to_string(),
                        (1, c) => format!("{c}x"),
                        (i, 1) => format!("x^{i}"),
                        (i, c) => format!("{c}x^{i}"),
                    })
                    .collect();
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join("+")
                }
            })
            .collect();
        let one: Vec<usize> = (0..d).map(|i| usize::from(i == 0)).collect();
        Self::from_tables(add, mul, 0, encode(&one), Some(labels))
    }

    pub fn order(&self) -> usize {
        self.additive.order()
    }

    pub fn zero(&self) -> usize {
        self.additive.zero()
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn additive(&self) -> &AbGroup {
        &self.additive
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.additive.add(a, b)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.additive.neg(a)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.additive.sub(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// A set of elements generating the additive group.
    pub fn additive_generators(&self) -> &[usize] {
        self.additive.basis()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn opposite(&self) -> FiniteRing {
        let n = self.order();
        let mul = (0..n * n).map(|i| self.mul(i % n, i / n)).collect();
        FiniteRing {
            additive: self.additive.clone(),
            mul,
            one: self.one,
            labels: self.labels.clone(),
        }
    }

    pub fn center(&self) -> ElemSet {
        let n = self.order();
        ElemSet::from_iter(n, (0..n).filter(|&z| (0..n).all(|r| self.mul(z, r) == self.mul(r, z))))
    }

    pub fn inverse(&self, u: usize) -> Option<usize> {
        (0..self.order()).find(|&v| self.mul(u, v) == self.one && self.mul(v, u) == self.one)
    }

    pub fn units(&self) -> ElemSet {
        let n = self.order();
        ElemSet::from_iter(n, (0..n).filter(|&u| self.inverse(u).is_some()))
    }

    /// `{x * y : x in a, y in b}` spanned additively.
    pub fn product_span(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let prods: Vec<usize> = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.mul(x, y))
            .collect();
        self.additive.span(prods)
    }

    fn signature(&self) -> Signature<'_> {
        Signature {
            size: self.order(),
            binary: vec![self.additive.add_table(), &self.mul],
            unary: vec![],
        }
    }
}

fn check_ring_axioms(n: usize, add: &[usize], mul: &[usize], one: usize) -> Result<()> {
    let violation = |axiom, witness: Vec<usize>| Err(Error::AxiomViolation { axiom, witness });
    if let Some(i) = mul.iter().position(|&x| x >= n) {
        return violation(Axiom::Closure, vec![i / n, i % n]);
    }
    if one >= n {
        return Err(Error::InvalidSpec("one is outside the carrier".into()));
    }
    let a_ = |x: usize, y: usize| add[x * n + y];
    let m_ = |x: usize, y: usize| mul[x * n + y];
    for a in 0..n {
        if m_(a, one) != a || m_(one, a) != a {
            return violation(Axiom::Identity, vec![a]);
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = m_(a, b);
            for c in 0..n {
                if m_(ab, c) != m_(a, m_(b, c)) {
                    return violation(Axiom::Associativity, vec![a, b, c]);
                }
                if m_(a, a_(b, c)) != a_(ab, m_(a, c)) {
                    return violation(Axiom::LeftDistributivity, vec![a, b, c]);
                }
                if m_(a_(a, b), c) != a_(m_(a, c), m_(b, c)) {
                    return violation(Axiom::RightDistributivity, vec![a, b, c]);
                }
            }
        }
    }
    Ok(())
}

/// Ring with multiplication reversed.
pub fn opposite_ring(ring: &FiniteRing) -> Ring {
    Arc::new(ring.opposite())
}

/// Center and unit group of a ring, as element subsets.
pub fn center_and_units(ring: &FiniteRing) -> (ElemSet, ElemSet) {
    (ring.center(), ring.units())
}

/// Compare two rings, allowing shared handles to short-circuit.
pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A unital ring homomorphism given by its table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMap {
    pub source: Ring,
    pub target: Ring,
    pub table: Vec<usize>,
}

impl RingMap {
    pub fn new(source: Ring, target: Ring, table: Vec<usize>) -> Result<Self> {
        let map = RingMap { source, target, table };
        map.validate()?;
        Ok(map)
    }

    pub fn identity(ring: &Ring) -> Self {
        RingMap {
            source: ring.clone(),
            target: ring.clone(),
            table: (0..ring.order()).collect(),
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        let f = &self.table;
        if f.len() != s.order() || f.iter().any(|&x| x >= t.order()) {
            return Err(Error::mismatch("ring map table has the wrong shape"));
        }
        if f[s.one()] != t.one() {
            return Err(Error::AxiomViolation {
                axiom: Axiom::Identity,
                witness: vec![s.one()],
            });
        }
        for a in 0..s.order() {
            for b in 0..s.order() {
                if f[s.add(a, b)] != t.add(f[a], f[b]) {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::LeftDistributivity,
                        witness: vec![a, b],
                    });
                }
                if f[s.mul(a, b)] != t.mul(f[a], f[b]) {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::Associativity,
                        witness: vec![a, b],
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        ElemSet::from_iter(self.target.order(), self.table.iter().copied()).count() == self.table.len()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &RingMap) -> RingMap {
        RingMap {
            source: self.source.clone(),
            target: next.target.clone(),
            table: self.table.iter().map(|&a| next.table[a]).collect(),
        }
    }

    pub fn inverse(&self) -> Option<RingMap> {
        let mut inv = vec![usize::MAX; self.target.order()];
        for (a, &b) in self.table.iter().enumerate() {
            inv[b] = a;
        }
        if inv.contains(&usize::MAX) {
            return None;
        }
        Some(RingMap {
            source: self.target.clone(),
            target: self.source.clone(),
            table: inv,
        })
    }

    pub fn kernel(&self) -> ElemSet {
        let z = self.target.zero();
        ElemSet::from_iter(
            self.source.order(),
            (0..self.source.order()).filter(|&a| self.table[a] == z),
        )
    }
}

fn ring_isos(source: &Ring, target: &Ring, first_only: bool) -> Result<Vec<Vec<usize>>> {
    if source.order() != target.order()
        || source.additive().invariant_factors() != target.additive().invariant_factors()
    {
        return Ok(vec![]);
    }
    let ssig = source.signature();
    let tsig = target.signature();
    let generators = ssig.greedy_generators(&[source.zero(), source.one()]);
    let search = MapSearch {
        source: &ssig,
        target: &tsig,
        fixed: vec![(source.zero(), target.zero()), (source.one(), target.one())],
        generators,
        injective: true,
    };
    let candidates = |g: usize| -> Vec<usize> {
        let ord = source.additive().element_order(g);
        (0..target.order())
            .filter(|&x| target.additive().element_order(x) == ord)
            .collect()
    };
    let mut found = Vec::new();
    search.run(&candidates, &mut |m| {
        found.push(m);
        !first_only
    })?;
    found.sort();
    Ok(found)
}

/// Every ring automorphism, sorted by table.
pub fn automorphism_group(ring: &Ring) -> Result<Vec<RingMap>> {
    Ok(ring_isos(ring, ring, false)?
        .into_iter()
        .map(|table| RingMap {
            source: ring.clone(),
            target: ring.clone(),
            table,
        })
        .collect())
}

/// Some ring isomorphism `source -> target`, if one exists.
pub fn ring_isomorphism(source: &Ring, target: &Ring) -> Result<Option<RingMap>> {
    Ok(ring_isos(source, target, true)?
        .into_iter()
        .next()
        .map(|table| RingMap {
            source: source.clone(),
            target: target.clone(),
            table,
        }))
}
