use std::fmt;

/// A subset of the elements `0..universe` of a finite monoid.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    universe: usize,
    bits: Vec<u64>,
}

impl ElementSet {
    pub fn new(universe: usize) -> Self {
        ElementSet {
            universe,
            bits: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = ElementSet::new(universe);
        for x in 0..universe {
            s.insert(x);
        }
        s
    }

    pub fn singleton(universe: usize, x: usize) -> Self {
        let mut s = ElementSet::new(universe);
        s.insert(x);
        s
    }

    pub fn from_elements(universe: usize, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut s = ElementSet::new(universe);
        for x in elements {
            s.insert(x);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, x: usize) -> bool {
        assert!(
            x < self.universe,
            "element {x} outside universe {}",
            self.universe
        );
        let (w, b) = (x / 64, x % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        self.bits[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && self.bits[x / 64] & (1 << (x % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a & b)
            .collect();
        ElementSet {
            universe: self.universe,
            bits,
        }
    }

    pub fn intersects(&self, other: &ElementSet) -> bool {
        self.bits.iter().zip(&other.bits).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
