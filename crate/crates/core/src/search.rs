//! Backtracking search for structure-preserving maps between finite algebras.
//!
//! A structure is a carrier `0..size` with some binary operations (tables
//! `size * size`) and unary operations (tables of length `size`). A partial
//! map is extended by propagation: once `a` and `b` are mapped, so is
//! `op(a, b)`. The search assigns images to a small generating set and lets
//! propagation fill in the rest, pruning on the first conflict.

use crate::error::Result;
use crate::limits;
use crate::subset::ElemSet;

pub(crate) struct Signature<'a> {
    pub size: usize,
    pub binary: Vec<&'a [usize]>,
    pub unary: Vec<&'a [usize]>,
}

impl Signature<'_> {
    /// Smallest subset containing `seeds` and closed under all operations.
    pub fn closure(&self, seeds: impl IntoIterator<Item = usize>) -> ElemSet {
        let mut set = ElemSet::empty(self.size);
        let mut members = Vec::new();
        let mut queue: Vec<usize> = seeds.into_iter().collect();
        while let Some(a) = queue.pop() {
            if !set.insert(a) {
                continue;
            }
            members.push(a);
            for u in &self.unary {
                if !set.contains(u[a]) {
                    queue.push(u[a]);
                }
            }
            for op in &self.binary {
                for &b in &members {
                    for c in [op[a * self.size + b], op[b * self.size + a]] {
                        if !set.contains(c) {
                            queue.push(c);
                        }
                    }
                }
            }
        }
        set
    }

    /// Greedy generating set: repeatedly add the element whose closure grows
    /// the generated set the most (ties broken by lowest index).
    pub fn greedy_generators(&self, constants: &[usize]) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut current = self.closure(constants.iter().copied());
        while current.count() < self.size {
            let mut best: Option<(usize, usize)> = None;
            for x in (0..self.size).filter(|&x| !current.contains(x)) {
                let size = self
                    .closure(constants.iter().copied().chain(gens.iter().copied()).chain([x]))
                    .count();
                if best.is_none_or(|(_, s)| size > s) {
                    best = Some((x, size));
                }
            }
            let (x, _) = best.expect("some element lies outside the closure");
            gens.push(x);
            current = self.closure(constants.iter().copied().chain(gens.iter().copied()));
        }
        gens
    }
}

#[derive(Clone)]
struct Partial {
    map: Vec<Option<usize>>,
    inverse: Vec<Option<usize>>,
    mapped: Vec<usize>,
}

impl Partial {
    fn assign(&mut self, a: usize, b: usize, injective: bool, queue: &mut Vec<usize>) -> bool {
        match self.map[a] {
            Some(x) => x == b,
            None => {
                if injective {
                    if self.inverse[b].is_some() {
                        return false;
                    }
                    self.inverse[b] = Some(a);
                }
                self.map[a] = Some(b);
                self.mapped.push(a);
                queue.push(a);
                true
            }
        }
    }

    fn propagate(&mut self, src: &Signature, tgt: &Signature, mut queue: Vec<usize>, injective: bool) -> bool {
        let (n, m) = (src.size, tgt.size);
        while let Some(a) = queue.pop() {
            let fa = self.map[a].unwrap();
            for (us, ut) in src.unary.iter().zip(&tgt.unary) {
                if !self.assign(us[a], ut[fa], injective, &mut queue) {
                    return false;
                }
            }
            for (os, ot) in src.binary.iter().zip(&tgt.binary) {
                let count = self.mapped.len();
                for idx in 0..count {
                    let b = self.mapped[idx];
                    let fb = self.map[b].unwrap();
                    if !self.assign(os[a * n + b], ot[fa * m + fb], injective, &mut queue)
                        || !self.assign(os[b * n + a], ot[fb * m + fa], injective, &mut queue)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub(crate) struct MapSearch<'a, 'b> {
    pub source: &'a Signature<'b>,
    pub target: &'a Signature<'b>,
    /// Forced images (constants such as 0 and 1).
    pub fixed: Vec<(usize, usize)>,
    pub generators: Vec<usize>,
    pub injective: bool,
}

impl MapSearch<'_, '_> {
    /// Visit every total map extending the fixed images, in lexicographic
    /// order of generator images. `visit` returns `false` to stop early.
    pub fn run(
        &self,
        candidates: &dyn Fn(usize) -> Vec<usize>,
        visit: &mut dyn FnMut(Vec<usize>) -> bool,
    ) -> Result<()> {
        let mut start = Partial {
            map: vec![None; self.source.size],
            inverse: vec![None; self.target.size],
            mapped: Vec::new(),
        };
        let mut queue = Vec::new();
        for &(a, b) in &self.fixed {
            if !start.assign(a, b, self.injective, &mut queue) {
                return Ok(());
            }
        }
        if !start.propagate(self.source, self.target, queue, self.injective) {
            return Ok(());
        }
        let cands: Vec<Vec<usize>> = self.generators.iter().map(|&g| candidates(g)).collect();
        let mut nodes = 0usize;
        self.descend(start, 0, &cands, &mut nodes, visit)?;
        Ok(())
    }

    fn descend(
        &self,
        state: Partial,
        depth: usize,
        cands: &[Vec<usize>],
        nodes: &mut usize,
        visit: &mut dyn FnMut(Vec<usize>) -> bool,
    ) -> Result<bool> {
        *nodes += 1;
        limits::check_frontier("map search nodes", *nodes)?;
        if depth == self.generators.len() {
            let map: Option<Vec<usize>> = state.map.iter().copied().collect();
            return Ok(match map {
                Some(m) => visit(m),
                None => true,
            });
        }
        let g = self.generators[depth];
        if let Some(fg) = state.map[g] {
            if !cands[depth].contains(&fg) {
                return Ok(true);
            }
            return self.descend(state, depth + 1, cands, nodes, visit);
        }
        for &c in &cands[depth] {
            let mut next = state.clone();
            let mut queue = Vec::new();
            if !next.assign(g, c, self.injective, &mut queue) {
                continue;
            }
            if !next.propagate(self.source, self.target, queue, self.injective) {
                continue;
            }
            if !self.descend(next, depth + 1, cands, nodes, visit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
