//! Ground sets and bitmask subsets over them.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Index of an element of the ground set.
pub type ElementId = usize;

const WORD: usize = 64;

/// The universe a set function is defined over: dense indices `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidInstance("ground set must have at least one element".into()));
        }
        Ok(GroundSet { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut g = GroundSet::new(labels.len())?;
        g.labels = Some(labels);
        Ok(g)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: ElementId) -> Option<&str> {
        self.labels.as_ref().and_then(|l| l.get(x)).map(String::as_str)
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.size)
    }

    /// Checks that `s` only references indices below `size`.
    pub fn check(&self, s: &Subset) -> Result<()> {
        match s.max_element() {
            Some(i) if i >= self.size => Err(Error::InvalidSubset { index: i, size: self.size }),
            _ => Ok(()),
        }
    }

    pub fn check_element(&self, x: ElementId) -> Result<()> {
        if x >= self.size {
            Err(Error::InvalidSubset { index: x, size: self.size })
        } else {
            Ok(())
        }
    }
}

/// A subset of a ground set, stored as a bitmask.
///
/// The word vector never has trailing zero words, so derived equality and
/// hashing agree with set equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Subset {
    words: Vec<u64>,
}

impl Subset {
    pub fn empty() -> Self {
        Subset { words: Vec::new() }
    }

    pub fn full(size: usize) -> Self {
        let mut words = vec![u64::MAX; size / WORD];
        if !size.is_multiple_of(WORD) {
            words.push((1u64 << (size % WORD)) - 1);
        }
        Subset { words }
    }

    pub fn singleton(x: ElementId) -> Self {
        let mut s = Subset::empty();
        s.insert(x);
        s
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut s = Subset { words: vec![mask] };
        s.normalize();
        s
    }

    /// The subset as a single machine word, if every member is below 64.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn insert(&mut self, x: ElementId) {
        let (w, b) = (x / WORD, x % WORD);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, x: ElementId) {
        let (w, b) = (x / WORD, x % WORD);
        if let Some(word) = self.words.get_mut(w) {
            *word &= !(1 << b);
            self.normalize();
        }
    }

    /// A copy of `self` with `x` added.
    pub fn with(&self, x: ElementId) -> Self {
        let mut s = self.clone();
        s.insert(x);
        s
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.words.get(x / WORD).is_some_and(|w| w & (1 << (x % WORD)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_element(&self) -> Option<ElementId> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD + (WORD - 1 - last.leading_zeros() as usize))
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.words.iter().enumerate().all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let (long, short) = if self.words.len() >= other.words.len() { (self, other) } else { (other, self) };
        let mut words = long.words.clone();
        for (w, o) in words.iter_mut().zip(&short.words) {
            *w |= o;
        }
        Subset { words }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut s = Subset {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        };
        s.normalize();
        s
    }

    pub fn intersection_len(&self, other: &Subset) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, index: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<ElementId> {
        self.iter().collect()
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<ElementId> for Subset {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        let mut s = Subset::empty();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = ElementId;

    fn next(&mut self) -> Option<ElementId> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<ElementId>::deserialize(deserializer)?;
        Ok(members.into_iter().collect())
    }
}

/// Number of `k`-element subsets of an `n`-element set, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Lexicographic iterator over the `k`-element subsets of `pool`.
///
/// `pool` must be sorted ascending, which makes the emission order
/// lexicographic in element indices as well.
pub struct Combinations<'a> {
    pool: &'a [ElementId],
    idx: Vec<usize>,
    done: bool,
}

impl<'a> Combinations<'a> {
    pub fn new(pool: &'a [ElementId], k: usize) -> Self {
        Combinations { pool, idx: (0..k).collect(), done: k > pool.len() }
    }
}

impl Iterator for Combinations<'_> {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.done {
            return None;
        }
        let out: Subset = self.idx.iter().map(|&i| self.pool[i]).collect();
        let (n, k) = (self.pool.len(), self.idx.len());
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
