//! Finite groups given by permutation generators, stored as Cayley tables.
//!
//! Elements are numbered breadth-first from the identity (index 0), applying the
//! generators in the order they were declared, so the same generators always
//! produce the same table. Products of permutations act on the right: `x * y`
//! applies `x` first and then `y`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on group orders; Cayley tables are quadratic in the order.
pub const DEFAULT_MAX_ORDER: usize = 512;

/// A permutation of `{0, .., degree - 1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Builds a permutation from 1-based images, the form used in catalog files.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let invalid = |reason: String| Error::InvalidPermutation {
            images: images.to_vec(),
            reason,
        };
        if n == 0 {
            return Err(invalid("empty image list".into()));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n {
                return Err(invalid(format!("image {img} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(invalid(format!("image {img} repeated")));
            }
            out.push((img - 1) as u32);
        }
        Ok(Permutation(out))
    }

    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// 1-based images, inverse of [`Permutation::from_images`].
    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize + 1).collect()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images())
    }
}

/// A finite group as a multiplication table on element indices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<usize>,
    names: Vec<String>,
}

impl Group {
    /// Closes `generators` under composition.
    pub fn build(generators: &[Permutation], max_order: usize) -> Result<Group> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: bad.degree(),
            });
        }

        let identity = Permutation::identity(degree);
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        let mut elements = vec![identity.clone()];
        let mut names = vec!["1".to_string()];
        index.insert(identity, 0);

        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, gen) in generators.iter().enumerate() {
                let y = elements[x].then(gen);
                if !index.contains_key(&y) {
                    if elements.len() == max_order {
                        return Err(Error::OrderExceeded { max_order });
                    }
                    let name = if x == 0 {
                        format!("x{}", k + 1)
                    } else {
                        format!("{}*x{}", names[x], k + 1)
                    };
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                    names.push(name);
                }
            }
        }

        let order = elements.len();
        let mut mul = vec![0u32; order * order];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                mul[i * order + j] = index[&x.then(y)] as u32;
            }
        }
        let mut inv = vec![0u32; order];
        for i in 0..order {
            let j = (0..order).find(|&j| mul[i * order + j] == 0).expect("finite group");
            inv[i] = j as u32;
        }
        let gen_idx = generators.iter().map(|g| index[g]).collect();

        Ok(Group {
            order,
            mul,
            inv,
            generators: gen_idx,
            names,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub const fn identity(&self) -> usize {
        0
    }

    /// Element indices of the declared generators, in declaration order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Word in the generator symbols `x1, x2, ..` naming element `x`.
    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut n = 1;
        while y != 0 {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.identity(), |acc, &x| self.mul(acc, x))
    }

    /// The group commutator `(x, y) = x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.product(&[self.inv(x), self.inv(y), x, y])
    }

    /// Left-normed commutator `(x1, .., xn) = ((x1, .., x(n-1)), xn)`.
    pub fn commutator_seq(&self, xs: &[usize]) -> usize {
        match xs.split_first() {
            None => self.identity(),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &y| self.commutator(acc, y)),
        }
    }

    /// `x^y = y⁻¹ x y`.
    pub fn conjugate(&self, x: usize, y: usize) -> usize {
        self.product(&[self.inv(y), x, y])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order).collect(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { members: vec![0] }
    }

    /// Smallest subgroup containing `seed`.
    pub fn subgroup_generated(&self, seed: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut members = vec![0usize];
        let mut gens: Vec<usize> = Vec::new();
        for &s in seed {
            if s != 0 && !gens.contains(&s) {
                gens.push(s);
            }
        }
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &s in &gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup { members }
    }

    /// `[H, G]`: the subgroup generated by all `(x, g)` with `x ∈ H`, `g ∈ G`.
    pub fn commutator_with_whole(&self, h: &Subgroup) -> Subgroup {
        let mut seen = vec![false; self.order];
        let mut seed = Vec::new();
        for &x in h.members() {
            for g in 0..self.order {
                let c = self.commutator(x, g);
                if !seen[c] {
                    seen[c] = true;
                    seed.push(c);
                }
            }
        }
        self.subgroup_generated(&seed)
    }

    /// `[G, G]`.
    pub fn derived_subgroup(&self) -> Subgroup {
        self.commutator_with_whole(&self.whole())
    }

    /// `γ₁ = G, γ₂, ..`, stopping at the first term equal to its predecessor.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let next = self.commutator_with_whole(series.last().unwrap());
            if &next == series.last().unwrap() {
                return series;
            }
            series.push(next);
        }
    }

    /// Nilpotency class, or `None` when the lower central series stalls above `{1}`.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        series
            .last()
            .filter(|h| h.is_trivial())
            .map(|_| series.len() - 1)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class().is_some()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&x| self.generators.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        is_power_of(self.order as u64, p)
    }

    /// Cyclic invariants of an abelian subgroup as prime powers, largest first.
    ///
    /// For each prime `p` dividing `|H|` the counts `n_k = #{x : x^(p^k) = 1}`
    /// satisfy `log_p(n_k / n_(k-1)) = #{invariants p^e with e >= k}`.
    pub fn abelian_type(&self, h: &Subgroup) -> Result<Vec<u64>> {
        for (i, &x) in h.members().iter().enumerate() {
            for &y in &h.members()[i + 1..] {
                if self.mul(x, y) != self.mul(y, x) {
                    return Err(Error::NotAbelian(x, y));
                }
            }
        }
        let orders: Vec<u64> = h
            .members()
            .iter()
            .map(|&x| self.element_order(x) as u64)
            .collect();
        let mut invariants = Vec::new();
        for p in prime_factors(h.order() as u64) {
            // at_least[k - 1] = number of invariants with exponent >= k
            let mut at_least = Vec::new();
            let mut prev = 1u64;
            let mut pk = p;
            loop {
                let n_k = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
                if n_k == prev {
                    break;
                }
                at_least.push(log_exact(n_k / prev, p));
                prev = n_k;
                pk *= p;
            }
            for k in 0..at_least.len() {
                let next = at_least.get(k + 1).copied().unwrap_or(0);
                for _ in 0..(at_least[k] - next) {
                    invariants.push(p.pow(k as u32 + 1));
                }
            }
        }
        invariants.sort_unstable_by(|a, b| b.cmp(a));
        Ok(invariants)
    }
}

/// Structural invariants used by the classifier and the reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub order: usize,
    /// `None` for non-nilpotent groups.
    pub class: Option<usize>,
    /// Orders of `γ₁, γ₂, ..` up to the first repetition.
    pub gamma_orders: Vec<usize>,
    /// Abelian invariants of `G'`, `None` when `G'` is not abelian.
    pub derived_type: Option<Vec<u64>>,
    /// Abelian invariants of `γ₃`, `None` when it is not abelian.
    pub gamma3_type: Option<Vec<u64>>,
    pub derived_order: usize,
}

impl Group {
    pub fn summary(&self) -> GroupSummary {
        let series = self.lower_central_series();
        let class = series
            .last()
            .filter(|h| h.is_trivial())
            .map(|_| series.len() - 1);
        let term = |i: usize| series.get(i).cloned().unwrap_or_else(|| series.last().unwrap().clone());
        let derived = term(1);
        GroupSummary {
            order: self.order,
            class,
            gamma_orders: series.iter().map(Subgroup::order).collect(),
            derived_type: self.abelian_type(&derived).ok(),
            gamma3_type: self.abelian_type(&term(2)).ok(),
            derived_order: derived.order(),
        }
    }
}

/// A subgroup as the sorted list of its member indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `n == p^k` for some `k >= 0`.
pub fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 || p < 2 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn log_exact(mut n: u64, p: u64) -> u64 {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        k += 1;
    }
    k
}
