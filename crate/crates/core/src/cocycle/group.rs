use std::collections::BTreeMap;

use serde::Serialize;

use crate::{Error, Result};

/// Product of cyclic groups. Elements are encoded as a single integer in mixed
/// radix, first factor most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::Structure("cyclic factor of order 0".into()));
        }
        orders
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .ok_or_else(|| Error::Structure("group too large".into()))?;
        Ok(FiniteAbelianGroup { orders })
    }

    pub fn cyclic(m: u64) -> Self {
        Self::new(vec![m]).expect("positive order")
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn size(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn encode(&self, parts: &[u64]) -> Result<u64> {
        if parts.len() != self.orders.len() {
            return Err(Error::Cocycle(format!("element {parts:?} has the wrong number of components")));
        }
        Ok(parts.iter().zip(&self.orders).fold(0, |acc, (&v, &m)| acc * m + v % m))
    }

    pub fn decode(&self, mut code: u64) -> Vec<u64> {
        let mut parts = vec![0; self.orders.len()];
        for (p, &m) in parts.iter_mut().zip(&self.orders).rev() {
            *p = code % m;
            code /= m;
        }
        parts
    }

    fn combine(&self, a: u64, b: u64, f: impl Fn(u64, u64, u64) -> u64) -> u64 {
        let (pa, pb) = (self.decode(a), self.decode(b));
        let parts: Vec<u64> = pa.iter().zip(&pb).zip(&self.orders).map(|((&x, &y), &m)| f(x, y, m)).collect();
        self.encode(&parts).unwrap()
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.combine(a, b, |x, y, m| (x + y) % m)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.combine(a, b, |x, y, m| (x + m - y) % m)
    }

    pub fn neg(&self, a: u64) -> u64 {
        self.sub(0, a)
    }

    pub fn signed(&self, sign: i64, a: u64) -> u64 {
        if sign >= 0 {
            a
        } else {
            self.neg(a)
        }
    }
}

/// Integer combination of group elements, as produced by a state sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupRingElement {
    pub group: FiniteAbelianGroup,
    pub terms: BTreeMap<u64, u64>,
}

impl GroupRingElement {
    pub fn new(group: FiniteAbelianGroup) -> Self {
        GroupRingElement { group, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, value: u64, mult: u64) {
        if mult > 0 {
            *self.terms.entry(value).or_insert(0) += mult;
        }
    }

    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    /// `n · [0]`.
    pub fn is_trivial_with(&self, n: u64) -> bool {
        (n == 0 && self.terms.is_empty()) || (self.terms.len() == 1 && self.terms.get(&0) == Some(&n))
    }

    /// `(value components, multiplicity)` sorted by value.
    pub fn decoded(&self) -> Vec<(Vec<u64>, u64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&k, &m)| (self.group.decode(k), m)).collect();
        v.sort();
        v
    }
}

impl std::ops::Add for GroupRingElement {
    type Output = GroupRingElement;
    fn add(mut self, rhs: GroupRingElement) -> GroupRingElement {
        assert_eq!(self.group, rhs.group, "group ring elements over different groups");
        for (k, m) in rhs.terms {
            self.add_term(k, m);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix() {
        let a = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        assert_eq!(a.size(), 6);
        assert_eq!(a.encode(&[1, 2]).unwrap(), 5);
        assert_eq!(a.decode(5), vec![1, 2]);
        assert_eq!(a.add(5, 5), a.encode(&[0, 1]).unwrap());
        assert_eq!(a.add(a.neg(4), 4), 0);
        assert!(FiniteAbelianGroup::new(vec![0]).is_err());
    }

    #[test]
    fn ring_sum() {
        let g = FiniteAbelianGroup::cyclic(3);
        let mut x = GroupRingElement::new(g.clone());
        x.add_term(0, 2);
        let mut y = GroupRingElement::new(g);
        y.add_term(0, 1);
        y.add_term(2, 1);
        let z = x + y;
        assert_eq!(z.total(), 4);
        assert_eq!(z.decoded(), vec![(vec![0], 3), (vec![2], 1)]);
        assert!(!z.is_trivial_with(4));
    }
}
