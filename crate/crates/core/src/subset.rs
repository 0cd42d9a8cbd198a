//! Subsets of a finite group and functions on it.

use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

/// A subset of a group, stored as an indicator vector.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupSubset {
    group: Arc<FiniteGroup>,
    members: Vec<bool>,
}

impl fmt::Debug for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.group.label(), self.elements())
    }
}

impl GroupSubset {
    pub fn empty(group: &Arc<FiniteGroup>) -> Self {
        GroupSubset { group: group.clone(), members: vec![false; group.order()] }
    }

    pub fn full(group: &Arc<FiniteGroup>) -> Self {
        GroupSubset { group: group.clone(), members: vec![true; group.order()] }
    }

    pub fn identity(group: &Arc<FiniteGroup>) -> Self {
        let mut s = Self::empty(group);
        s.members[group.identity()] = true;
        s
    }

    /// Builds a subset from element indices; duplicates are ignored.
    pub fn from_elements(group: &Arc<FiniteGroup>, elems: &[Elem]) -> Result<Self> {
        let mut s = Self::empty(group);
        for &x in elems {
            if x >= group.order() {
                return Err(Error::ElementOutOfRange { index: x, order: group.order() });
            }
            s.members[x] = true;
        }
        Ok(s)
    }

    pub fn from_indicator(group: &Arc<FiniteGroup>, members: Vec<bool>) -> Self {
        assert_eq!(members.len(), group.order(), "indicator length must equal group order");
        GroupSubset { group: group.clone(), members }
    }

    /// Elements `x` with `pred(x)`.
    pub fn from_predicate(group: &Arc<FiniteGroup>, pred: impl Fn(Elem) -> bool) -> Self {
        GroupSubset { group: group.clone(), members: group.elements().map(pred).collect() }
    }

    /// Uniformly random subset of the given size.
    pub fn random<R: Rng>(group: &Arc<FiniteGroup>, size: usize, rng: &mut R) -> Self {
        let mut all: Vec<Elem> = group.elements().collect();
        all.shuffle(rng);
        all.truncate(size.min(group.order()));
        Self::from_elements(group, &all).expect("indices in range")
    }

    /// `T ∪ T⁻¹` for a random `T` of the given size.
    pub fn random_symmetric<R: Rng>(group: &Arc<FiniteGroup>, size: usize, rng: &mut R) -> Self {
        let t = Self::random(group, size, rng);
        t.union(&t.inverse()).expect("same group")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members[x]
    }

    pub fn indicator(&self) -> &[bool] {
        &self.members
    }

    pub fn insert(&mut self, x: Elem) {
        self.members[x] = true;
    }

    pub fn remove(&mut self, x: Elem) {
        self.members[x] = false;
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }

    pub fn is_full(&self) -> bool {
        self.members.iter().all(|&b| b)
    }

    /// Sorted member indices.
    pub fn elements(&self) -> Vec<Elem> {
        self.members.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }

    fn check_same(&self, other: &GroupSubset) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn union(&self, other: &GroupSubset) -> Result<Self> {
        self.check_same(other)?;
        let members = self.members.iter().zip(&other.members).map(|(a, b)| *a || *b).collect();
        Ok(GroupSubset { group: self.group.clone(), members })
    }

    pub fn intersection(&self, other: &GroupSubset) -> Result<Self> {
        self.check_same(other)?;
        let members = self.members.iter().zip(&other.members).map(|(a, b)| *a && *b).collect();
        Ok(GroupSubset { group: self.group.clone(), members })
    }

    pub fn complement(&self) -> Self {
        GroupSubset { group: self.group.clone(), members: self.members.iter().map(|b| !b).collect() }
    }

    pub fn is_subset_of(&self, other: &GroupSubset) -> bool {
        self.members.iter().zip(&other.members).all(|(a, b)| !a || *b)
    }

    /// `{ab : a ∈ A, b ∈ B}`.
    pub fn product(&self, other: &GroupSubset) -> Result<Self> {
        self.check_same(other)?;
        let g = &self.group;
        let mut out = Self::empty(g);
        let right = other.elements();
        for a in self.elements() {
            for &b in &right {
                out.members[g.op(a, b)] = true;
            }
        }
        Ok(out)
    }

    /// `{a⁻¹ : a ∈ A}`.
    pub fn inverse(&self) -> Self {
        let g = &self.group;
        let mut out = Self::empty(g);
        for a in self.elements() {
            out.members[g.inv(a)] = true;
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.inverse() == *self
    }

    /// `{x : x^k ∈ A}`.
    pub fn kth_roots(&self, k: usize) -> Self {
        let g = &self.group;
        Self::from_predicate(g, |x| self.members[g.pow(x, k)])
    }

    /// `S^d` for `d >= 1`.
    pub fn power(&self, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::KZero);
        }
        let mut acc = self.clone();
        for _ in 1..d {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Smallest `d >= 1` with `S^d = Γ`.
    pub fn diameter(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        // |S^{d+1}| >= |S^d| always, and equality forces S^{d+1} = S^d·s for
        // any s ∈ S; the size then stays constant, so a stall without
        // covering means the group is never reached.
        let mut acc = self.clone();
        let mut size = acc.len();
        for d in 1..=self.group.order() {
            if size == self.group.order() {
                return Ok(d);
            }
            let next = acc.product(self)?;
            let next_size = next.len();
            if next_size == size {
                return Err(Error::NoFiniteDiameter { steps: d, size });
            }
            acc = next;
            size = next_size;
        }
        Err(Error::NoFiniteDiameter { steps: self.group.order(), size })
    }

    /// `x A x⁻¹`.
    pub fn conjugate_by(&self, x: Elem) -> Self {
        let g = &self.group;
        let mut out = Self::empty(g);
        for a in self.elements() {
            out.members[g.conjugate(a, x)] = true;
        }
        out
    }

    /// Indicator lifted to a function with values in `V`.
    pub fn to_function<V: Clone + Zero + From<u8>>(&self) -> GroupFunction<V> {
        GroupFunction {
            group: self.group.clone(),
            values: self.members.iter().map(|&b| V::from(b as u8)).collect(),
        }
    }
}

/// A function on group elements with values in `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupFunction<V> {
    group: Arc<FiniteGroup>,
    values: Vec<V>,
}

impl<V: Clone + Zero> GroupFunction<V> {
    pub fn new(group: &Arc<FiniteGroup>, values: Vec<V>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidDescriptor(format!(
                "function has {} values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        Ok(GroupFunction { group: group.clone(), values })
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        GroupFunction { group: group.clone(), values: vec![V::zero(); group.order()] }
    }

    /// Point mass at `x`.
    pub fn delta(group: &Arc<FiniteGroup>, x: Elem, one: V) -> Self {
        let mut f = Self::zero(group);
        f.values[x] = one;
        f
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn into_values(self) -> Vec<V> {
        self.values
    }

    pub fn get(&self, x: Elem) -> &V {
        &self.values[x]
    }

    /// `⟨f⟩ = Σ_x f(x)`.
    pub fn total(&self) -> V {
        self.values.iter().fold(V::zero(), |acc, v| acc + v.clone())
    }

    pub fn map<W, F: Fn(&V) -> W>(&self, f: F) -> GroupFunction<W> {
        GroupFunction { group: self.group.clone(), values: self.values.iter().map(f).collect() }
    }
}

impl<V: Clone + Zero + Mul<Output = V>> GroupFunction<V> {
    /// `(f∗g)(x) = Σ_y f(y) g(y⁻¹x)`.
    pub fn convolve(&self, other: &GroupFunction<V>) -> Result<Self> {
        if !(Arc::ptr_eq(&self.group, &other.group) || self.group == other.group) {
            return Err(Error::GroupMismatch);
        }
        let g = &self.group;
        let mut out = vec![V::zero(); g.order()];
        let right: Vec<(Elem, &V)> =
            other.values.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        for (y, fy) in self.values.iter().enumerate() {
            if fy.is_zero() {
                continue;
            }
            // y·z = x ranges over all x as z ranges over the support of g.
            for &(z, gz) in &right {
                let x = g.op(y, z);
                out[x] = out[x].clone() + fy.clone() * gz.clone();
            }
        }
        Ok(GroupFunction { group: g.clone(), values: out })
    }

    /// `f^{(k)}`, with `f^{(1)} = f`.
    pub fn iterated_convolution(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::KZero);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.convolve(self)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn z(n: usize) -> Arc<FiniteGroup> {
        FiniteGroup::cyclic(n).unwrap()
    }

    fn set(g: &Arc<FiniteGroup>, xs: &[usize]) -> GroupSubset {
        GroupSubset::from_elements(g, xs).unwrap()
    }

    #[test]
    fn product_examples() {
        let g = z(5);
        assert_eq!(set(&g, &[1, 2]).product(&set(&g, &[0, 1])).unwrap().elements(), vec![1, 2, 3]);
        let b = set(&g, &[3]);
        assert_eq!(GroupSubset::identity(&g).product(&b).unwrap(), b);
        assert!(GroupSubset::full(&g).product(&b).unwrap().is_full());
        let other = z(6);
        assert_eq!(b.product(&set(&other, &[1])), Err(Error::GroupMismatch));
    }

    #[test]
    fn inverse_and_roots() {
        let g = z(7);
        assert_eq!(set(&g, &[1, 2]).inverse().elements(), vec![5, 6]);
        assert_eq!(set(&z(5), &[0]).kth_roots(3).elements(), vec![0]);
        assert_eq!(set(&z(6), &[0]).kth_roots(3).elements(), vec![0, 2, 4]);
        let d = FiniteGroup::dihedral(5).unwrap();
        let roots = GroupSubset::identity(&d).kth_roots(2);
        assert!((5..10).all(|x| roots.contains(x)));
    }

    #[test]
    fn convolution_examples() {
        let g = z(4);
        let a: GroupFunction<i64> = set(&g, &[0, 1]).to_function();
        assert_eq!(a.convolve(&a).unwrap().values(), &[1, 2, 1, 0]);
        let full: GroupFunction<i64> = GroupSubset::full(&g).to_function();
        assert_eq!(full.convolve(&full).unwrap().values(), &[4, 4, 4, 4]);
        let delta = GroupFunction::delta(&g, 0, Complex64::new(1.0, 0.0));
        let h = GroupFunction::new(&g, (0..4).map(|i| Complex64::new(i as f64, 1.0)).collect()).unwrap();
        assert_eq!(delta.convolve(&h).unwrap(), h);
        assert_eq!(a.iterated_convolution(0), Err(Error::KZero));
        assert_eq!(a.iterated_convolution(1).unwrap(), a);
    }

    #[test]
    fn nonabelian_convolution_order() {
        // (δ_a ∗ δ_b) = δ_{ab}
        let d = FiniteGroup::dihedral(4).unwrap();
        let a = GroupFunction::delta(&d, 1, 1i64);
        let b = GroupFunction::delta(&d, 4, 1i64);
        let ab = a.convolve(&b).unwrap();
        assert_eq!(*ab.get(d.op(1, 4)), 1);
        assert_eq!(ab.total(), 1);
    }

    #[test]
    fn diameter_examples() {
        let g = z(5);
        assert_eq!(GroupSubset::full(&g).diameter().unwrap(), 1);
        assert_eq!(set(&g, &[0, 1]).diameter().unwrap(), 4);
        assert!(matches!(set(&g, &[1]).diameter(), Err(Error::NoFiniteDiameter { .. })));
        assert_eq!(GroupSubset::empty(&g).diameter(), Err(Error::EmptySet));
        // without the identity: {1,2}, {2,3,4}, {0,1,3,4}, Γ
        assert_eq!(set(&g, &[1, 2]).diameter().unwrap(), 4);
    }
}
