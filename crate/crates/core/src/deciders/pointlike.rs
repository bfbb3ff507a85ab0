//! Pointlike sets for first-order logic.
//!
//! The family is the least one containing `{η(w)}` for every word, closed
//! under the powerset product and under `X ↦ ⋃_{n ≥ e} X^n` where `X^e` is
//! the idempotent power of `X` in `2^M`. Both operations are monotone, so
//! only the maximal sets need to be stored.

use std::collections::VecDeque;

use crate::algebra::{idempotent_power, ElementSet, FiniteMonoid, MonoidMorphism};
use crate::{Error, Limits, Result};

/// Maximal pointlike sets of a morphism; every subset of a member is
/// pointlike as well.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointlikeFamily {
    size: usize,
    sets: Vec<ElementSet>,
}

impl PointlikeFamily {
    pub fn maximal(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn monoid_size(&self) -> usize {
        self.size
    }

    /// Whether `x` lies in some pointlike set.
    pub fn contains(&self, x: &ElementSet) -> bool {
        self.sets.iter().any(|s| x.is_subset(s))
    }

    /// A maximal pointlike set meeting every given subset.
    pub fn meeting_all(&self, targets: &[&ElementSet]) -> Option<&ElementSet> {
        self.sets
            .iter()
            .find(|s| targets.iter().all(|t| s.intersects(t)))
    }
}

/// `⋃_{n ≥ e} X^n`, computed as `X^e · (X ∪ X² ∪ …)`.
pub fn omega_saturation(m: &FiniteMonoid, x: &ElementSet) -> ElementSet {
    let (_, idem) = idempotent_power(x, |a, b| m.product_sets(a, b));
    let mut powers: Vec<ElementSet> = vec![x.clone()];
    loop {
        let next = m.product_sets(powers.last().unwrap(), x);
        if powers.contains(&next) {
            break;
        }
        powers.push(next);
    }
    let mut union = ElementSet::new(m.size());
    for p in &powers {
        union.union_with(p);
    }
    m.product_sets(&idem, &union)
}

struct Antichain {
    sets: Vec<ElementSet>,
}

impl Antichain {
    /// Adds `x` unless it is dominated; drops the members it dominates.
    fn insert(&mut self, x: ElementSet) -> bool {
        if self.sets.iter().any(|s| x.is_subset(s)) {
            return false;
        }
        self.sets.retain(|s| !s.is_subset(&x));
        self.sets.push(x);
        true
    }

    fn contains(&self, x: &ElementSet) -> bool {
        self.sets.iter().any(|s| s == x)
    }
}

pub fn fo_pointlikes(eta: &MonoidMorphism, limits: &Limits) -> Result<PointlikeFamily> {
    let m = eta.monoid();
    if m.size() > limits.max_pointlike_monoid {
        return Err(Error::MonoidTooLarge {
            what: "pointlike saturation monoid",
            cap: limits.max_pointlike_monoid,
        });
    }
    let mut family = Antichain { sets: Vec::new() };
    let mut queue = VecDeque::new();
    for x in eta.reachable().iter() {
        let s = ElementSet::singleton(m.size(), x);
        if family.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        if !family.contains(&x) {
            continue;
        }
        let mut fresh = vec![omega_saturation(m, &x)];
        for y in &family.sets {
            fresh.push(m.product_sets(&x, y));
            fresh.push(m.product_sets(y, &x));
        }
        for s in fresh {
            if family.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    let mut sets = family.sets;
    sets.sort();
    Ok(PointlikeFamily {
        size: m.size(),
        sets,
    })
}
