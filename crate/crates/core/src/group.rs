//! Finite groups stored as dense multiplication tables.
//!
//! Elements are the indices `0..order`. Every construction is
//! deterministic: generators are sorted, closures are enumerated
//! breadth-first, and cosets are labelled by their smallest member.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default bound on the order of a group materialized as a table.
pub const DEFAULT_MAX_ORDER: usize = 256;

/// Hard bound on the number of elements a permutation closure may enumerate.
pub const CLOSURE_LIMIT: usize = 100_000;

#[derive(Debug)]
struct GroupData {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// A validated finite group. Cloning is cheap; the table is shared.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.order == other.data.order
                && self.data.identity == other.data.identity
                && self.data.mul == other.data.mul)
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a multiplication table under the default order bound.
    pub fn from_table(
        mul: Vec<Vec<usize>>,
        identity: usize,
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        Self::from_table_with_cap(mul, identity, generators, labels, DEFAULT_MAX_ORDER)
    }

    pub fn from_table_with_cap(
        mul: Vec<Vec<usize>>,
        identity: usize,
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
        max_order: usize,
    ) -> Result<Self> {
        let order = mul.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if order > max_order {
            return Err(Error::OrderBound {
                order,
                limit: max_order,
            });
        }
        if mul.iter().any(|row| row.len() != order) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        let flat: Vec<usize> = mul.into_iter().flatten().collect();
        Self::from_flat(order, flat, identity, generators, labels)
    }

    fn from_flat(
        order: usize,
        mul: Vec<usize>,
        identity: usize,
        mut generators: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if mul.iter().any(|&v| v >= order) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        if identity >= order {
            return Err(Error::InvalidGroup("identity out of range".into()));
        }
        if generators.iter().any(|&g| g >= order) {
            return Err(Error::InvalidGroup("generator out of range".into()));
        }
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(Error::InvalidGroup("label count differs from order".into()));
            }
        }
        let at = |a: usize, b: usize| mul[a * order + b];
        for g in 0..order {
            if at(identity, g) != g || at(g, identity) != g {
                return Err(Error::InvalidGroup(format!(
                    "{identity} is not neutral for {g}"
                )));
            }
        }
        let mut inverse = vec![usize::MAX; order];
        for (g, slot) in inverse.iter_mut().enumerate() {
            let inv = (0..order).find(|&h| at(g, h) == identity && at(h, g) == identity);
            match inv {
                Some(h) => *slot = h,
                None => return Err(Error::InvalidGroup(format!("element {g} has no inverse"))),
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        generators.sort_unstable();
        generators.dedup();
        let group = Self {
            data: Arc::new(GroupData {
                order,
                mul,
                identity,
                inverse,
                generators,
                labels,
            }),
        };
        if group.subgroup_generated(&group.data.generators).len() != order {
            return Err(Error::InvalidGroup(
                "generators do not generate the group".into(),
            ));
        }
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.data.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.data.mul[a * self.data.order + b]
    }

    pub fn identity(&self) -> usize {
        self.data.identity
    }

    #[inline]
    pub fn inverse(&self, g: usize) -> usize {
        self.data.inverse[g]
    }

    pub fn generators(&self) -> &[usize] {
        &self.data.generators
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.data.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.data.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    /// Multiplication table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.data
            .mul
            .chunks(self.data.order)
            .map(|r| r.to_vec())
            .collect()
    }

    /// `g h g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inverse(g))
    }

    pub fn commutator(&self, g: usize, h: usize) -> usize {
        self.mul(self.conjugate(g, h), self.inverse(h))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity() {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, g| lcm(acc, self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Smallest subgroup containing `set`, as a sorted index list.
    pub fn subgroup_generated(&self, set: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        member[self.identity()] = true;
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for &s in set {
                let y = self.mul(x, s);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&g| member[g]).collect()
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        if set.iter().any(|&g| g >= self.order()) {
            return false;
        }
        let mut member = vec![false; self.order()];
        for &g in set {
            member[g] = true;
        }
        member[self.identity()]
            && set
                .iter()
                .all(|&a| member[self.inverse(a)] && set.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// Elements commuting with every element.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&z| (0..self.order()).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Subgroup generated by all commutators.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut comms: Vec<usize> = (0..self.order())
            .flat_map(|g| (0..self.order()).map(move |h| (g, h)))
            .map(|(g, h)| self.commutator(g, h))
            .collect();
        comms.sort_unstable();
        comms.dedup();
        self.subgroup_generated(&comms)
    }

    /// Conjugacy classes, each sorted, listed by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for x in 0..self.order() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order()).map(|g| self.conjugate(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                class_of[y] = classes.len();
            }
            classes.push(class);
        }
        classes
    }

    /// Quotient by a central subgroup together with the projection.
    ///
    /// Cosets are indexed in increasing order of their smallest member.
    pub fn quotient_by_central(&self, sub: &[usize]) -> Result<(FiniteGroup, GroupHomomorphism)> {
        if !self.is_subgroup(sub) {
            return Err(Error::NotSubgroup);
        }
        let center = self.center();
        if sub.iter().any(|g| center.binary_search(g).is_err()) {
            return Err(Error::NotCentral);
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &a in sub {
                coset_of[self.mul(g, a)] = reps.len();
            }
            reps.push(g);
        }
        let k = reps.len();
        let mut mul = vec![0; k * k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * k + j] = coset_of[self.mul(a, b)];
            }
        }
        let generators: Vec<usize> = self.generators().iter().map(|&g| coset_of[g]).collect();
        let labels = self
            .data
            .labels
            .as_ref()
            .map(|l| reps.iter().map(|&r| format!("[{}]", l[r])).collect());
        let quotient = Self::from_flat(k, mul, coset_of[self.identity()], generators, labels)?;
        let proj = GroupHomomorphism::new(self.clone(), quotient.clone(), coset_of)?;
        Ok((quotient, proj))
    }

    /// Breadth-first words in the stored generators: `words[g]` multiplies
    /// out (left to right) to `g`.
    pub fn word_map(&self) -> Vec<Vec<usize>> {
        let mut words: Vec<Option<Vec<usize>>> = vec![None; self.order()];
        words[self.identity()] = Some(Vec::new());
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for &s in self.generators() {
                let y = self.mul(x, s);
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap_or_default();
                    w.push(s);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words.into_iter().map(|w| w.unwrap_or_default()).collect()
    }

    /// Multiplies out a word of element indices.
    pub fn evaluate_word(&self, word: &[usize]) -> usize {
        word.iter()
            .fold(self.identity(), |acc, &s| self.mul(acc, s))
    }
}

/// A validated homomorphism between two finite groups.
#[derive(Debug, Clone)]
pub struct GroupHomomorphism {
    domain: FiniteGroup,
    codomain: FiniteGroup,
    image: Vec<usize>,
}

impl GroupHomomorphism {
    pub fn new(domain: FiniteGroup, codomain: FiniteGroup, image: Vec<usize>) -> Result<Self> {
        if image.len() != domain.order() {
            return Err(Error::InvalidHomomorphism(
                "image length differs from domain order".into(),
            ));
        }
        if image.iter().any(|&v| v >= codomain.order()) {
            return Err(Error::InvalidHomomorphism("image out of range".into()));
        }
        if image[domain.identity()] != codomain.identity() {
            return Err(Error::InvalidHomomorphism("identity not preserved".into()));
        }
        for g in 0..domain.order() {
            for h in 0..domain.order() {
                if image[domain.mul(g, h)] != codomain.mul(image[g], image[h]) {
                    return Err(Error::InvalidHomomorphism(format!(
                        "not multiplicative at ({g}, {h})"
                    )));
                }
            }
        }
        Ok(Self {
            domain,
            codomain,
            image,
        })
    }

    pub fn identity_map(group: &FiniteGroup) -> Self {
        Self {
            domain: group.clone(),
            codomain: group.clone(),
            image: (0..group.order()).collect(),
        }
    }

    pub fn domain(&self) -> &FiniteGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteGroup {
        &self.codomain
    }

    pub fn apply(&self, g: usize) -> usize {
        self.image[g]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.domain.order())
            .filter(|&g| self.image[g] == self.codomain.identity())
            .collect()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.order()];
        for &v in &self.image {
            hit[v] = true;
        }
        hit.into_iter().all(|b| b)
    }
}

/// Result of enumerating a permutation group.
#[derive(Debug, Clone)]
pub struct PermutationClosure {
    pub group: FiniteGroup,
    /// Element `g` of `group` acts as `elements[g]`.
    pub elements: Vec<Permutation>,
    /// The distinct generators, sorted by image sequence.
    pub generators: Vec<Permutation>,
    /// `words[g]` lists indices into `generators`; composing them left to
    /// right (`s1 ∘ s2 ∘ ...`) yields `elements[g]`.
    pub words: Vec<Vec<usize>>,
}

/// Closure of a set of permutations on `n` points, with the default order cap.
pub fn group_closure(n: usize, gens: &[Permutation]) -> Result<PermutationClosure> {
    group_closure_with_cap(n, gens, DEFAULT_MAX_ORDER)
}

/// Closure under composition, enumerated breadth-first from the identity.
///
/// Multiplication in the resulting group is composition `a ∘ b`.
pub fn group_closure_with_cap(
    n: usize,
    gens: &[Permutation],
    max_order: usize,
) -> Result<PermutationClosure> {
    let cap = max_order.min(CLOSURE_LIMIT);
    if gens.iter().any(|p| p.degree() != n) {
        return Err(Error::Shape(format!("generators must act on {n} points")));
    }
    let mut generators = gens.to_vec();
    generators.sort();
    generators.dedup();

    let mut elements = vec![Permutation::identity(n)];
    let mut words = vec![Vec::new()];
    let mut index: HashMap<Permutation, usize> = HashMap::from([(elements[0].clone(), 0)]);
    let mut head = 0;
    while head < elements.len() {
        for (si, s) in generators.iter().enumerate() {
            let p = elements[head].compose(s);
            if index.contains_key(&p) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::OrderBound {
                    order: elements.len() + 1,
                    limit: cap,
                });
            }
            let mut w = words[head].clone();
            w.push(si);
            index.insert(p.clone(), elements.len());
            elements.push(p);
            words.push(w);
        }
        head += 1;
    }

    let k = elements.len();
    let mut mul = vec![0; k * k];
    for a in 0..k {
        for b in 0..k {
            mul[a * k + b] = index[&elements[a].compose(&elements[b])];
        }
    }
    let gen_idx: Vec<usize> = generators.iter().map(|g| index[g]).collect();
    let labels = Some(elements.iter().map(|p| p.to_string()).collect());
    let group = FiniteGroup::from_flat(k, mul, 0, gen_idx, labels)?;
    Ok(PermutationClosure {
        group,
        elements,
        generators,
        words,
    })
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
