//! Finite groups given by multiplication tables, their subgroups, left cosets
//! and transversals.
//!
//! Elements are dense indices `0..order`. Products compose right-to-left:
//! for permutation groups `mul(a, b)` is the permutation "apply `b`, then
//! `a`". Every other module relies on this one convention.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{validation, Error, Result};

/// Default cap on the order of a group produced by closure.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Associativity is audited exhaustively up to this order when a table is
/// supplied from outside.
pub const ASSOCIATIVITY_AUDIT_LIMIT: usize = 64;

/// A permutation of `{0, .., n-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(validation!("{images:?} is not a permutation"));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of `degree` points from 1-based cycles.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(validation!("cycle point {p} outside 1..={degree}"));
                }
                if touched[p - 1] {
                    return Err(validation!("point {p} appears in more than one cycle"));
                }
                touched[p - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                if next == 0 || next > degree {
                    return Err(validation!("cycle point {next} outside 1..={degree}"));
                }
                images[p - 1] = next - 1;
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Same permutation acting on `degree >= self.degree()` points.
    pub fn extended(&self, degree: usize) -> Perm {
        let mut images = self.0.clone();
        images.extend(self.0.len()..degree);
        Perm(images)
    }

    /// Nontrivial cycles, 1-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Position in the lexicographic listing of all permutations of this degree.
    pub fn lex_rank(&self) -> usize {
        let n = self.0.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller = self.0[i + 1..].iter().filter(|&&x| x < self.0[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A finite group as a total multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
    perms: Option<Vec<Perm>>,
}

impl FiniteGroup {
    /// Validates a multiplication table: range, two-sided identity, inverses,
    /// and (up to [`ASSOCIATIVITY_AUDIT_LIMIT`]) associativity.
    pub fn from_table(rows: &[Vec<usize>], identity: usize) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(validation!("group table is empty"));
        }
        if identity >= order {
            return Err(validation!("identity {identity} out of range"));
        }
        let mut table = Vec::with_capacity(order * order);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(validation!("row {a} has {} entries, expected {order}", row.len()));
            }
            for &c in row {
                if c >= order {
                    return Err(validation!("entry {c} in row {a} out of range"));
                }
            }
            table.extend_from_slice(row);
        }
        let labels = (0..order).map(|i| format!("g{i}")).collect();
        let group = Self::assemble(order, table, identity, labels, None)?;
        if order <= ASSOCIATIVITY_AUDIT_LIMIT {
            if let Some((a, b, c)) = group.associativity_violation() {
                return Err(validation!("not associative at ({a}, {b}, {c})"));
            }
        }
        Ok(group)
    }

    fn assemble(
        order: usize,
        table: Vec<usize>,
        identity: usize,
        labels: Vec<String>,
        perms: Option<Vec<Perm>>,
    ) -> Result<Self> {
        for a in 0..order {
            if table[identity * order + a] != a || table[a * order + identity] != a {
                return Err(validation!("{identity} is not a two-sided identity (fails at {a})"));
            }
        }
        let mut inverses = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| table[a * order + b] == identity && table[b * order + a] == identity)
                .ok_or_else(|| validation!("element {a} has no two-sided inverse"))?;
            inverses.push(inv);
        }
        Ok(FiniteGroup { order, table, identity, inverses, labels, perms })
    }

    /// Closure of permutation generators under composition, with the
    /// default order cap.
    pub fn from_permutations(generators: &[Perm]) -> Result<Self> {
        Self::from_permutations_capped(generators, DEFAULT_ORDER_CAP)
    }

    /// Closure of permutation generators. Elements are listed in discovery
    /// order of a breadth-first search from the identity (index 0).
    pub fn from_permutations_capped(generators: &[Perm], cap: usize) -> Result<Self> {
        let degree = generators.iter().map(Perm::degree).max().unwrap_or(1).max(1);
        let gens: Vec<Perm> = generators.iter().map(|g| g.extended(degree)).collect();
        let mut elements = vec![Perm::identity(degree)];
        let mut index: BTreeMap<Perm, usize> = BTreeMap::new();
        index.insert(elements[0].clone(), 0);
        let mut cursor = 0;
        while cursor < elements.len() {
            let x = elements[cursor].clone();
            cursor += 1;
            for s in &gens {
                let y = s.compose(&x);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::Size { what: "group closure", limit: cap });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        let order = elements.len();
        let mut table = Vec::with_capacity(order * order);
        for a in &elements {
            for b in &elements {
                table.push(index[&a.compose(b)]);
            }
        }
        let labels = elements.iter().map(|p| format!("{p}")).collect();
        Self::assemble(order, table, 0, labels, Some(elements))
    }

    /// The full symmetric group on `n` points, elements in lexicographic
    /// order of their image lists (so `index == Perm::lex_rank`).
    pub fn symmetric(n: usize) -> Self {
        let perms = all_permutations(n);
        let order = perms.len();
        let mut table = Vec::with_capacity(order * order);
        for a in &perms {
            for b in &perms {
                table.push(a.compose(b).lex_rank());
            }
        }
        let labels = perms.iter().map(|p| format!("{p}")).collect();
        Self::assemble(order, table, 0, labels, Some(perms)).expect("symmetric group table")
    }

    pub fn trivial() -> Self {
        Self::assemble(1, vec![0], 0, vec![String::from("e")], None).expect("trivial group")
    }

    /// Group on `0..order` with elements renamed; `table[a*order+b]`.
    pub(crate) fn from_raw(
        order: usize,
        table: Vec<usize>,
        identity: usize,
        labels: Vec<String>,
        perms: Option<Vec<Perm>>,
    ) -> Result<Self> {
        Self::assemble(order, table, identity, labels, perms)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn perm(&self, a: usize) -> Option<&Perm> {
        self.perms.as_ref().map(|p| &p[a])
    }

    pub fn index_of_perm(&self, p: &Perm) -> Option<usize> {
        let perms = self.perms.as_ref()?;
        let degree = perms.first()?.degree();
        if p.degree() > degree {
            return None;
        }
        let p = p.extended(degree);
        perms.iter().position(|q| *q == p)
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// First triple with `(ab)c != a(bc)`, exhaustively.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        for a in self.elements() {
            for b in self.elements() {
                let ab = self.mul(a, b);
                for c in self.elements() {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

fn all_permutations(n: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(Perm(prefix.clone()));
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// A subgroup of a shared parent group.
///
/// `elements` is sorted; the position of an element in that list is its
/// *local* index, which is how the subgroup is numbered once it is viewed as
/// a group (or a one-object category) in its own right.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
    local: Vec<Option<usize>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent)
            && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn new(parent: Arc<FiniteGroup>, elements: &[usize]) -> Result<Self> {
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let mut local = vec![None; parent.order()];
        for (k, &x) in elems.iter().enumerate() {
            if x >= parent.order() {
                return Err(validation!("element {x} is not in the parent group"));
            }
            local[x] = Some(k);
        }
        if local[parent.identity()].is_none() {
            return Err(validation!("subgroup does not contain the identity"));
        }
        for &a in &elems {
            if local[parent.inv(a)].is_none() {
                return Err(validation!("not closed under inverse at {a}"));
            }
            for &b in &elems {
                if local[parent.mul(a, b)].is_none() {
                    return Err(validation!("not closed under multiplication at ({a}, {b})"));
                }
            }
        }
        Ok(Subgroup { parent, elements: elems, local })
    }

    /// Smallest subgroup containing `generators`.
    pub fn generated_by(parent: Arc<FiniteGroup>, generators: &[usize]) -> Result<Self> {
        let mut members = vec![false; parent.order()];
        let mut queue = vec![parent.identity()];
        members[parent.identity()] = true;
        while let Some(x) = queue.pop() {
            for &s in generators {
                if s >= parent.order() {
                    return Err(validation!("generator {s} is not in the parent group"));
                }
                let y = parent.mul(s, x);
                if !members[y] {
                    members[y] = true;
                    queue.push(y);
                }
            }
        }
        let elems: Vec<usize> = (0..parent.order()).filter(|&x| members[x]).collect();
        Self::new(parent, &elems)
    }

    pub fn trivial(parent: Arc<FiniteGroup>) -> Self {
        let e = parent.identity();
        Self::new(parent, &[e]).expect("trivial subgroup")
    }

    pub fn whole(parent: Arc<FiniteGroup>) -> Self {
        let all: Vec<usize> = parent.elements().collect();
        Self::new(parent, &all).expect("whole group")
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.local.get(x).is_some_and(Option::is_some)
    }

    /// Local index of a parent element lying in the subgroup.
    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.local.get(x).copied().flatten()
    }

    /// Parent element with the given local index.
    pub fn global(&self, local: usize) -> usize {
        self.elements[local]
    }

    /// The subgroup as a group in its own right, numbered by local index.
    pub fn to_group(&self) -> FiniteGroup {
        let k = self.order();
        let g = &self.parent;
        let mut table = Vec::with_capacity(k * k);
        for &a in &self.elements {
            for &b in &self.elements {
                table.push(self.local[g.mul(a, b)].expect("closed"));
            }
        }
        let labels = self.elements.iter().map(|&x| String::from(g.label(x))).collect();
        let perms = g.perms.as_ref().map(|ps| self.elements.iter().map(|&x| ps[x].clone()).collect());
        let identity = self.local[g.identity()].expect("identity");
        FiniteGroup::from_raw(k, table, identity, labels, perms).expect("subgroup table")
    }
}

/// Left cosets `xH`, each sorted, listed by their least element.
pub fn cosets(h: &Subgroup) -> Vec<Vec<usize>> {
    let g = h.parent();
    let mut assigned = vec![false; g.order()];
    let mut out = Vec::new();
    for x in g.elements() {
        if assigned[x] {
            continue;
        }
        let mut coset: Vec<usize> = h.elements().iter().map(|&k| g.mul(x, k)).collect();
        coset.sort_unstable();
        for &y in &coset {
            assigned[y] = true;
        }
        out.push(coset);
    }
    out
}

/// How representatives are picked when building a [`Transversal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransversalPolicy {
    /// Least element index in every coset, except `t_1 = e`.
    Minimal,
    /// Greatest element index in every coset, except `t_1 = e`.
    Maximal,
    /// Explicit representatives; must start with the identity.
    Explicit(Vec<usize>),
}

/// Ordered left-coset representatives `t_1 = e, t_2, .., t_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    subgroup: Subgroup,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
}

impl Transversal {
    pub fn new(h: &Subgroup, policy: TransversalPolicy) -> Result<Self> {
        let g = h.parent();
        let cs = cosets(h);
        let reps = match policy {
            TransversalPolicy::Minimal | TransversalPolicy::Maximal => {
                let pick_max = policy == TransversalPolicy::Maximal;
                let mut with_e = Vec::with_capacity(cs.len());
                let mut rest = Vec::with_capacity(cs.len());
                for c in &cs {
                    if c.contains(&g.identity()) {
                        with_e.push(g.identity());
                    } else if pick_max {
                        rest.push(*c.last().expect("nonempty coset"));
                    } else {
                        rest.push(c[0]);
                    }
                }
                with_e.extend(rest);
                with_e
            }
            TransversalPolicy::Explicit(list) => list,
        };
        Self::from_reps(h, reps)
    }

    /// Validates an explicit representative list.
    pub fn from_reps(h: &Subgroup, reps: Vec<usize>) -> Result<Self> {
        let g = h.parent();
        let n = h.index();
        if reps.len() != n {
            return Err(validation!("{} representatives given, index is {n}", reps.len()));
        }
        if reps[0] != g.identity() {
            return Err(validation!("first representative must be the identity"));
        }
        let mut coset_of = vec![usize::MAX; g.order()];
        for (i, &t) in reps.iter().enumerate() {
            if t >= g.order() {
                return Err(validation!("representative {t} is not a group element"));
            }
            for &k in h.elements() {
                let y = g.mul(t, k);
                if coset_of[y] != usize::MAX {
                    let j = coset_of[y];
                    return Err(validation!(
                        "representatives {} and {} lie in the same coset",
                        g.label(reps[j]),
                        g.label(t)
                    ));
                }
                coset_of[y] = i;
            }
        }
        Ok(Transversal { subgroup: h.clone(), reps, coset_of })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.subgroup.parent()
    }

    pub fn n(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// Which coset `t_i H` (0-based `i`) contains `x`.
    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    /// Solves `g t_i = t_j h`, returning `(j, h)` with `h` a parent element.
    pub fn solve(&self, g_elt: usize, i: usize) -> (usize, usize) {
        let g = self.group();
        let x = g.mul(g_elt, self.reps[i]);
        let j = self.coset_of[x];
        (j, g.mul(g.inv(self.reps[j]), x))
    }

    /// Same transversal with representative `i` replaced, skipping
    /// validation. Used to build deliberately inconsistent inputs.
    pub fn with_rep_unchecked(&self, i: usize, rep: usize) -> Self {
        let mut out = self.clone();
        let g = self.group().clone();
        let old = out.reps[i];
        out.reps[i] = rep;
        for &k in self.subgroup.elements() {
            if out.coset_of[g.mul(old, k)] == i {
                out.coset_of[g.mul(old, k)] = usize::MAX;
            }
        }
        for &k in self.subgroup.elements() {
            out.coset_of[g.mul(rep, k)] = i;
        }
        out
    }
}
