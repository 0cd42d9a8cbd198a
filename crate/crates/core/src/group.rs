//! Finite groups on dense element indices `0..order`.
//!
//! Cyclic, abelian-product and dihedral groups use closed-form laws.
//! Permutation closures and explicit tables are stored as a multiplication
//! table (or, above [`TABLE_LIMIT`] elements, as permutations looked up on
//! demand).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a group element.
pub type Elem = usize;

/// Default cap on the size of a permutation closure.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// Groups up to this order get a full multiplication table.
pub const TABLE_LIMIT: usize = 4096;

/// Largest order for which group axioms are checked exhaustively.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 256;

const SAMPLED_TRIPLES: usize = 10_000;

/// A permutation generator, either in 1-based cycle notation such as
/// `"(1 2 3)(4 5)"` or as a 0-based image list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Generator {
    Cycles(String),
    Images(Vec<usize>),
}

/// Describes how to build a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupDescriptor {
    Cyclic {
        n: usize,
    },
    AbelianProduct {
        factors: Vec<usize>,
    },
    Dihedral {
        n: usize,
    },
    PermutationClosure {
        points: usize,
        generators: Vec<Generator>,
        #[serde(default)]
        cap: Option<usize>,
    },
    MultiplicationTable {
        table: Vec<Vec<usize>>,
    },
}

impl GroupDescriptor {
    pub fn label(&self) -> String {
        match self {
            GroupDescriptor::Cyclic { n } => format!("Z/{n}"),
            GroupDescriptor::AbelianProduct { factors } => factors
                .iter()
                .map(|n| format!("Z/{n}"))
                .collect::<Vec<_>>()
                .join("x"),
            GroupDescriptor::Dihedral { n } => format!("D{n}"),
            GroupDescriptor::PermutationClosure { points, generators, .. } => {
                format!("Perm{points}<{}>", generators.len())
            }
            GroupDescriptor::MultiplicationTable { table } => format!("Table{}", table.len()),
        }
    }
}

enum Law {
    Cyclic(usize),
    Product { factors: Vec<usize>, strides: Vec<usize> },
    Dihedral(usize),
    Table(Vec<u32>),
    Permutations { perms: Vec<Vec<u8>>, index: HashMap<Vec<u8>, Elem> },
}

/// An enumerable finite group.
pub struct FiniteGroup {
    descriptor: GroupDescriptor,
    label: String,
    order: usize,
    law: Law,
    inverse: Vec<Elem>,
    identity: Elem,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.descriptor == other.descriptor
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds and validates a group from a descriptor.
    pub fn new(descriptor: GroupDescriptor) -> Result<Arc<Self>> {
        let group = match &descriptor {
            GroupDescriptor::Cyclic { n } => {
                if *n == 0 {
                    return Err(Error::InvalidDescriptor("cyclic order must be >= 1".into()));
                }
                let n = *n;
                Self::from_law(descriptor.clone(), n, Law::Cyclic(n), 0)
            }
            GroupDescriptor::AbelianProduct { factors } => {
                if factors.is_empty() || factors.contains(&0) {
                    return Err(Error::InvalidDescriptor(
                        "abelian product needs nonempty positive factors".into(),
                    ));
                }
                let mut strides = vec![1; factors.len()];
                for i in (0..factors.len().saturating_sub(1)).rev() {
                    strides[i] = strides[i + 1] * factors[i + 1];
                }
                let order = factors.iter().product();
                let law = Law::Product { factors: factors.clone(), strides };
                Self::from_law(descriptor.clone(), order, law, 0)
            }
            GroupDescriptor::Dihedral { n } => {
                if *n < 3 {
                    return Err(Error::InvalidDescriptor("dihedral needs n >= 3".into()));
                }
                Self::from_law(descriptor.clone(), 2 * n, Law::Dihedral(*n), 0)
            }
            GroupDescriptor::PermutationClosure { points, generators, cap } => {
                let cap = cap.unwrap_or(DEFAULT_CLOSURE_CAP);
                Self::permutation_closure(descriptor.clone(), *points, generators, cap)?
            }
            GroupDescriptor::MultiplicationTable { table } => {
                let g = Self::from_table(descriptor.clone(), table)?;
                g.validate()?;
                g
            }
        };
        Ok(Arc::new(group))
    }

    pub fn cyclic(n: usize) -> Result<Arc<Self>> {
        Self::new(GroupDescriptor::Cyclic { n })
    }

    pub fn dihedral(n: usize) -> Result<Arc<Self>> {
        Self::new(GroupDescriptor::Dihedral { n })
    }

    pub fn abelian_product(factors: &[usize]) -> Result<Arc<Self>> {
        Self::new(GroupDescriptor::AbelianProduct { factors: factors.to_vec() })
    }

    pub fn permutations(points: usize, generators: &[&str]) -> Result<Arc<Self>> {
        Self::new(GroupDescriptor::PermutationClosure {
            points,
            generators: generators.iter().map(|s| Generator::Cycles(s.to_string())).collect(),
            cap: None,
        })
    }

    /// The alternating group on five points, generated by a 5-cycle and a 3-cycle.
    pub fn alternating5() -> Arc<Self> {
        Self::permutations(5, &["(1 2 3 4 5)", "(1 2 3)"]).expect("A5 closure")
    }

    fn from_law(descriptor: GroupDescriptor, order: usize, law: Law, identity: Elem) -> Self {
        let label = descriptor.label();
        let mut g = FiniteGroup { descriptor, label, order, law, inverse: Vec::new(), identity };
        g.inverse = (0..order).map(|x| g.closed_form_inverse(x)).collect();
        g
    }

    fn closed_form_inverse(&self, x: Elem) -> Elem {
        match &self.law {
            Law::Cyclic(n) => (n - x) % n,
            Law::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(&n, &s)| ((n - (x / s) % n) % n) * s)
                .sum(),
            Law::Dihedral(n) => {
                if x < *n {
                    (n - x) % n
                } else {
                    x
                }
            }
            Law::Table(_) | Law::Permutations { .. } => {
                (0..self.order).find(|&y| self.op(x, y) == self.identity).unwrap_or(x)
            }
        }
    }

    fn from_table(descriptor: GroupDescriptor, table: &[Vec<usize>]) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::InvalidTable(format!("entry {v} out of range in row {i}")));
                }
                flat.push(v as u32);
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| flat[e * order + x] as usize == x && flat[x * order + e] as usize == x))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        let mut inverse = vec![usize::MAX; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| flat[x * order + y] as usize == identity && flat[y * order + x] as usize == identity)
                .ok_or_else(|| Error::InvalidTable(format!("element {x} has no inverse")))?;
            inverse[x] = y;
        }
        Ok(FiniteGroup {
            label: descriptor.label(),
            descriptor,
            order,
            law: Law::Table(flat),
            inverse,
            identity,
        })
    }

    fn permutation_closure(
        descriptor: GroupDescriptor,
        points: usize,
        generators: &[Generator],
        cap: usize,
    ) -> Result<Self> {
        if points == 0 || points > 8 {
            return Err(Error::InvalidDescriptor(format!(
                "permutation closure supports 1..=8 points, got {points}"
            )));
        }
        let gens: Vec<Vec<u8>> =
            generators.iter().map(|g| parse_generator(g, points)).collect::<Result<_>>()?;
        let id: Vec<u8> = (0..points as u8).collect();
        let mut perms = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in &gens {
                let p = compose(&perms[i], s);
                if !index.contains_key(&p) {
                    if perms.len() >= cap {
                        return Err(Error::ClosureTooLarge { cap });
                    }
                    index.insert(p.clone(), perms.len());
                    queue.push_back(perms.len());
                    perms.push(p);
                }
            }
        }
        let order = perms.len();
        let label = descriptor.label();
        let mut group = FiniteGroup {
            descriptor,
            label,
            order,
            law: Law::Permutations { perms, index },
            inverse: Vec::new(),
            identity: 0,
        };
        group.inverse = match &group.law {
            Law::Permutations { perms, index } => perms.iter().map(|p| index[&invert(p)]).collect(),
            _ => unreachable!(),
        };
        if order <= TABLE_LIMIT {
            let mut flat = Vec::with_capacity(order * order);
            for a in 0..order {
                for b in 0..order {
                    flat.push(group.op(a, b) as u32);
                }
            }
            group.law = Law::Table(flat);
        }
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// Group product `a·b`.
    #[inline]
    pub fn op(&self, a: Elem, b: Elem) -> Elem {
        match &self.law {
            Law::Cyclic(n) => (a + b) % n,
            Law::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(&n, &s)| (((a / s) % n + (b / s) % n) % n) * s)
                .sum(),
            Law::Dihedral(n) => {
                // index k + n·f encodes r^k s^f, and s r^k = r^{-k} s.
                let (ka, fa) = (a % n, a / n);
                let (kb, fb) = (b % n, b / n);
                let k = if fa == 0 { (ka + kb) % n } else { (ka + n - kb) % n };
                k + n * (fa ^ fb)
            }
            Law::Table(t) => t[a * self.order + b] as usize,
            Law::Permutations { perms, index } => index[&compose(&perms[a], &perms[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    /// `x^k` for `k >= 0`.
    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        let (mut acc, mut base, mut k) = (self.identity, x, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.op(acc, base);
            }
            base = self.op(base, base);
            k >>= 1;
        }
        acc
    }

    /// `x g x^{-1}`.
    pub fn conjugate(&self, g: Elem, x: Elem) -> Elem {
        self.op(self.op(x, g), self.inv(x))
    }

    pub fn is_abelian(&self) -> bool {
        match self.descriptor {
            GroupDescriptor::Cyclic { .. } | GroupDescriptor::AbelianProduct { .. } => true,
            GroupDescriptor::Dihedral { .. } => false,
            _ => self
                .elements()
                .all(|a| (0..a).all(|b| self.op(a, b) == self.op(b, a))),
        }
    }

    /// Checks identity, inverse and associativity laws: exhaustively up to
    /// [`EXHAUSTIVE_AXIOM_LIMIT`] elements, on sampled triples above.
    pub fn validate(&self) -> Result<()> {
        let e = self.identity;
        for x in self.elements() {
            if self.op(e, x) != x || self.op(x, e) != x {
                return Err(Error::InvalidTable(format!("identity law fails at {x}")));
            }
            if self.op(x, self.inv(x)) != e || self.op(self.inv(x), x) != e {
                return Err(Error::InvalidTable(format!("inverse law fails at {x}")));
            }
        }
        let assoc = |a, b, c| self.op(self.op(a, b), c) == self.op(a, self.op(b, c));
        if self.order <= EXHAUSTIVE_AXIOM_LIMIT {
            for a in self.elements() {
                for b in self.elements() {
                    for c in self.elements() {
                        if !assoc(a, b, c) {
                            return Err(Error::InvalidTable(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (
                    rng.gen_range(0..self.order),
                    rng.gen_range(0..self.order),
                    rng.gen_range(0..self.order),
                );
                if !assoc(a, b, c) {
                    return Err(Error::InvalidTable(format!("associativity fails at ({a}, {b}, {c})")));
                }
            }
        }
        Ok(())
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in self.elements() {
            if seen[g] {
                continue;
            }
            let mut class: Vec<Elem> = self.elements().map(|x| self.conjugate(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Element coordinates for an abelian product, in factor order.
    pub fn product_coordinates(&self, x: Elem) -> Option<Vec<usize>> {
        match &self.law {
            Law::Product { factors, strides } => {
                Some(factors.iter().zip(strides).map(|(&n, &s)| (x / s) % n).collect())
            }
            Law::Cyclic(_) => Some(vec![x]),
            _ => None,
        }
    }
}

/// `(p∘q)(i) = p(q(i))`.
fn compose(p: &[u8], q: &[u8]) -> Vec<u8> {
    q.iter().map(|&i| p[i as usize]).collect()
}

fn invert(p: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v as usize] = i as u8;
    }
    inv
}

fn parse_generator(g: &Generator, points: usize) -> Result<Vec<u8>> {
    let bad = |msg: String| Error::InvalidDescriptor(msg);
    match g {
        Generator::Images(images) => {
            if images.len() != points {
                return Err(bad(format!("image list {images:?} has wrong length")));
            }
            let mut seen = vec![false; points];
            for &v in images {
                if v >= points || seen[v] {
                    return Err(bad(format!("image list {images:?} is not a permutation")));
                }
                seen[v] = true;
            }
            Ok(images.iter().map(|&v| v as u8).collect())
        }
        Generator::Cycles(text) => {
            let mut perm: Vec<u8> = (0..points as u8).collect();
            let mut used = HashSet::new();
            for cycle in text.split(')').map(str::trim).filter(|c| !c.is_empty()) {
                let body = cycle
                    .strip_prefix('(')
                    .ok_or_else(|| bad(format!("malformed cycle notation {text:?}")))?;
                let pts: Vec<usize> = body
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>().map_err(|_| bad(format!("bad point {s:?}"))))
                    .collect::<Result<_>>()?;
                for &p in &pts {
                    if p == 0 || p > points || !used.insert(p) {
                        return Err(bad(format!("point {p} invalid or repeated in {text:?}")));
                    }
                }
                for (i, &p) in pts.iter().enumerate() {
                    perm[p - 1] = (pts[(i + 1) % pts.len()] - 1) as u8;
                }
            }
            Ok(perm)
        }
    }
}
