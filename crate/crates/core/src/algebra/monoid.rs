use super::ElementSet;
use crate::{Error, Result};

/// Finite monoid presented by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    size: usize,
    table: Vec<usize>,
    identity: usize,
    names: Option<Vec<String>>,
}

impl FiniteMonoid {
    /// Validates the table exhaustively: closure, identity laws and associativity.
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let size = table.len();
        if size == 0 {
            return Err(Error::InvalidMonoid(
                "a monoid has at least one element".into(),
            ));
        }
        if identity >= size {
            return Err(Error::InvalidMonoid(format!(
                "identity {identity} out of range"
            )));
        }
        if table.iter().any(|row| row.len() != size) {
            return Err(Error::InvalidMonoid("table is not square".into()));
        }
        if table.iter().flatten().any(|&z| z >= size) {
            return Err(Error::InvalidMonoid("table entry out of range".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let m = FiniteMonoid {
            size,
            table: flat,
            identity,
            names: None,
        };
        for x in 0..size {
            if m.mul(identity, x) != x || m.mul(x, identity) != x {
                return Err(Error::InvalidMonoid(format!("identity law fails at {x}")));
            }
        }
        for x in 0..size {
            for y in 0..size {
                let xy = m.mul(x, y);
                for z in 0..size {
                    if m.mul(xy, z) != m.mul(x, m.mul(y, z)) {
                        return Err(Error::InvalidMonoid(format!(
                            "associativity fails at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Trusted constructor for tables built from composition of functions.
    pub(crate) fn from_flat_table(size: usize, table: Vec<usize>, identity: usize) -> Self {
        debug_assert_eq!(table.len(), size * size);
        FiniteMonoid {
            size,
            table,
            identity,
            names: None,
        }
    }

    /// The cyclic group `Z/n`, element `i` meaning `i mod n`.
    pub fn cyclic(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("cyclic group of order 0".into()));
        }
        let table = (0..order)
            .flat_map(|i| (0..order).map(move |j| (i + j) % order))
            .collect();
        Ok(FiniteMonoid::from_flat_table(order, table, 0))
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::InvalidArgument(format!(
                "{} names for {} elements",
                names.len(),
                self.size
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.size)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn power(&self, x: usize, n: usize) -> usize {
        (0..n).fold(self.identity, |acc, _| self.mul(acc, x))
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    /// Least `e ≥ 1` such that `x^e` is idempotent.
    pub fn idempotent_power_index(&self, x: usize) -> usize {
        idempotent_power(&x, |a, b| self.mul(*a, *b)).0
    }

    /// `{xy : x ∈ X, y ∈ Y}` in the powerset monoid.
    pub fn product_sets(&self, xs: &ElementSet, ys: &ElementSet) -> ElementSet {
        let mut out = ElementSet::new(self.size);
        let ys: Vec<usize> = ys.iter().collect();
        for x in xs.iter() {
            let row = &self.table[x * self.size..(x + 1) * self.size];
            for &y in &ys {
                out.insert(row[y]);
            }
        }
        out
    }

    pub fn is_closed(&self, set: &ElementSet) -> bool {
        self.product_sets(set, set).is_subset(set)
    }

    /// Whether every element of `within` (default: the whole monoid)
    /// satisfies `x^ω = x^(ω+1)`.
    pub fn is_aperiodic(&self, within: Option<&ElementSet>) -> Result<bool> {
        let all;
        let set = match within {
            Some(s) => {
                if !self.is_closed(s) {
                    return Err(Error::NotASubsemigroup);
                }
                s
            }
            None => {
                all = ElementSet::full(self.size);
                &all
            }
        };
        let aperiodic = set.iter().all(|x| {
            let (_, e) = idempotent_power(&x, |a, b| self.mul(*a, *b));
            self.mul(e, x) == e
        });
        Ok(aperiodic)
    }
}

/// Least `e ≥ 1` with `x^e` idempotent, together with `x^e`, for any
/// element of a finite semigroup given by its product.
pub fn idempotent_power<T: Clone + Eq>(x: &T, mul: impl Fn(&T, &T) -> T) -> (usize, T) {
    let mut p = x.clone();
    let mut e = 1;
    loop {
        if mul(&p, &p) == p {
            return (e, p);
        }
        p = mul(&p, x);
        e += 1;
    }
}
