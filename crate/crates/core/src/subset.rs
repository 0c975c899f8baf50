use std::cmp::Ordering;
use std::fmt;

/// A subset of a carrier `0..len`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    len: usize,
    words: Vec<u64>,
}

impl ElemSet {
    pub fn empty(len: usize) -> Self {
        ElemSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(len: usize, items: I) -> Self {
        let mut s = Self::empty(len);
        for i in items {
            s.insert(i);
        }
        s
    }

    /// Size of the ambient carrier.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.len, "element {i} outside carrier of size {}", self.len);
        let (w, b) = (i / 64, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        ElemSet {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        ElemSet {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }
}

/// Canonical order: by cardinality, then lexicographically by sorted elements.
impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.count()
            .cmp(&other.count())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
