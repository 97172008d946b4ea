//! Indexing functors `P: J → (Iⁿ∖Δ)/Σn`, the data behind a general
//! indexed tensor product.
//!
//! Unordered sets are stored canonically: object sets ascending, morphism
//! sets ordered by ascending domain object.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::covering::CoveringCategory;
use crate::error::{shape, validation, Error, Result};
use crate::fincat::{one_object_category, same_category, CatFunctor, FiniteCategory};
use crate::group::Subgroup;
use crate::groupoid::SlotGroupoid;
use crate::wreath::WreathGroup;

/// Default cap on the number of morphisms enumerated by
/// [`fat_diagonal_quotient`].
pub const DEFAULT_QUOTIENT_CAP: usize = 100_000;

#[derive(Clone, Debug)]
pub struct IndexingFunctor {
    j: Arc<FiniteCategory>,
    i: Arc<FiniteCategory>,
    n: usize,
    on_objects: Vec<Vec<usize>>,
    on_morphisms: Vec<Vec<usize>>,
}

impl PartialEq for IndexingFunctor {
    fn eq(&self, other: &Self) -> bool {
        same_category(&self.j, &other.j)
            && same_category(&self.i, &other.i)
            && self.n == other.n
            && self.on_objects == other.on_objects
            && self.on_morphisms == other.on_morphisms
    }
}

impl Eq for IndexingFunctor {}

impl IndexingFunctor {
    /// Normalises the sets to canonical order and checks every condition:
    /// distinct objects, directed bijections, identities and composites.
    pub fn new(
        j: Arc<FiniteCategory>,
        i: Arc<FiniteCategory>,
        on_objects: Vec<Vec<usize>>,
        on_morphisms: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let p = Self::new_unchecked(j, i, on_objects, on_morphisms)?;
        p.validate()?;
        Ok(p)
    }

    /// Normalises the sets but only checks their sizes.
    pub fn new_unchecked(
        j: Arc<FiniteCategory>,
        i: Arc<FiniteCategory>,
        mut on_objects: Vec<Vec<usize>>,
        mut on_morphisms: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if on_objects.len() != j.objects() || on_morphisms.len() != j.morphisms() {
            return Err(shape!("indexing data does not match the shape of J"));
        }
        let n = on_objects.first().map_or(0, Vec::len);
        for set in &mut on_objects {
            if set.len() != n {
                return Err(validation!("object sets have different sizes"));
            }
            if set.iter().any(|&x| x >= i.objects()) {
                return Err(validation!("object set mentions an object outside I"));
            }
            set.sort_unstable();
        }
        for set in &mut on_morphisms {
            if set.len() != n {
                return Err(validation!("morphism set of size {} where n = {n}", set.len()));
            }
            if set.iter().any(|&f| f >= i.morphisms()) {
                return Err(validation!("morphism set mentions a morphism outside I"));
            }
            set.sort_unstable_by_key(|&f| (i.dom(f), f));
        }
        Ok(IndexingFunctor { j, i, n, on_objects, on_morphisms })
    }

    pub fn validate(&self) -> Result<()> {
        let (j, i) = (&*self.j, &*self.i);
        for (x, set) in self.on_objects.iter().enumerate() {
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(validation!("P_{x} repeats an object"));
            }
        }
        for f in 0..j.morphisms() {
            let set = &self.on_morphisms[f];
            let mut doms: Vec<usize> = set.iter().map(|&h| i.dom(h)).collect();
            let mut cods: Vec<usize> = set.iter().map(|&h| i.cod(h)).collect();
            doms.sort_unstable();
            cods.sort_unstable();
            if doms != self.on_objects[j.dom(f)] || cods != self.on_objects[j.cod(f)] {
                return Err(validation!("P_{f} is not a directed bijection between P_dom and P_cod"));
            }
        }
        for x in 0..j.objects() {
            let ids: Vec<usize> = self.on_objects[x].iter().map(|&y| i.identity(y)).collect();
            if self.on_morphisms[j.identity(x)] != ids {
                return Err(validation!("P does not preserve the identity of object {x}"));
            }
        }
        for (g, f) in j.composable_pairs() {
            let gf = j.compose(g, f).expect("composable");
            if self.composite(g, f)? != self.on_morphisms[gf] {
                return Err(validation!("P_({g} ∘ {f}) is not the set of composites of P_{g} and P_{f}"));
            }
        }
        Ok(())
    }

    /// The set of composites of `P_g` after `P_f`, in canonical order.
    pub fn composite(&self, g: usize, f: usize) -> Result<Vec<usize>> {
        let i = &*self.i;
        let mut out = Vec::with_capacity(self.n);
        for &a in &self.on_morphisms[f] {
            let b = self.on_morphisms[g]
                .iter()
                .copied()
                .find(|&b| i.dom(b) == i.cod(a))
                .ok_or_else(|| validation!("no arrow of P_{g} continues arrow {a} of P_{f}"))?;
            out.push(i.compose(b, a).expect("composable"));
        }
        out.sort_unstable_by_key(|&h| (i.dom(h), h));
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `J`.
    pub fn base(&self) -> &Arc<FiniteCategory> {
        &self.j
    }

    /// `I`.
    pub fn index(&self) -> &Arc<FiniteCategory> {
        &self.i
    }

    /// `P_j`, ascending.
    pub fn objects(&self, j: usize) -> &[usize] {
        &self.on_objects[j]
    }

    /// `P_f`, ordered by domain.
    pub fn morphisms(&self, f: usize) -> &[usize] {
        &self.on_morphisms[f]
    }

    pub fn on_objects(&self) -> &[Vec<usize>] {
        &self.on_objects
    }

    pub fn on_morphisms(&self) -> &[Vec<usize>] {
        &self.on_morphisms
    }

    /// `P` as a functor into an explicitly built quotient category.
    pub fn to_quotient_functor(&self, q: &FatDiagonalQuotient) -> Result<CatFunctor> {
        if !same_category(&self.i, &q.base) || q.n != self.n {
            return Err(shape!("quotient was built from a different category or n"));
        }
        let ob_map = self
            .on_objects
            .iter()
            .map(|s| q.object_index(s).ok_or_else(|| validation!("object set {s:?} is not in the quotient")))
            .collect::<Result<Vec<_>>>()?;
        let mor_map = self
            .on_morphisms
            .iter()
            .map(|s| q.morphism_index(s).ok_or_else(|| validation!("morphism set {s:?} is not in the quotient")))
            .collect::<Result<Vec<_>>>()?;
        CatFunctor::new(self.j.clone(), q.category.clone(), ob_map, mor_map)
    }
}

/// `(Iⁿ∖Δ)/Σn` with objects the `n`-sets of distinct objects of `I` and
/// morphisms the `n`-sets of morphisms with distinct domains and distinct
/// codomains.
#[derive(Clone, Debug)]
pub struct FatDiagonalQuotient {
    base: Arc<FiniteCategory>,
    n: usize,
    category: Arc<FiniteCategory>,
    objects: Vec<Vec<usize>>,
    morphisms: Vec<Vec<usize>>,
    object_lookup: BTreeMap<Vec<usize>, usize>,
    morphism_lookup: BTreeMap<Vec<usize>, usize>,
}

impl FatDiagonalQuotient {
    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    pub fn object_set(&self, x: usize) -> &[usize] {
        &self.objects[x]
    }

    /// Morphism set, ordered by domain.
    pub fn morphism_set(&self, f: usize) -> &[usize] {
        &self.morphisms[f]
    }

    pub fn object_index(&self, set: &[usize]) -> Option<usize> {
        let mut key = set.to_vec();
        key.sort_unstable();
        self.object_lookup.get(&key).copied()
    }

    pub fn morphism_index(&self, set: &[usize]) -> Option<usize> {
        let mut key = set.to_vec();
        key.sort_unstable_by_key(|&f| (self.base.dom(f), f));
        self.morphism_lookup.get(&key).copied()
    }
}

fn combinations(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in start..k {
            if k - x < n - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, k, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, n, &mut Vec::new(), &mut out);
    out
}

/// Builds `(Iⁿ∖Δ)/Σn` directly from unordered sets, refusing to enumerate
/// more than `cap` morphisms.
pub fn fat_diagonal_quotient(base: Arc<FiniteCategory>, n: usize, cap: usize) -> Result<FatDiagonalQuotient> {
    if base.objects() < n {
        return Err(Error::Precondition(format!("I has {} objects, fewer than n = {n}", base.objects())));
    }
    let objects = combinations(base.objects(), n);
    let object_lookup: BTreeMap<Vec<usize>, usize> =
        objects.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();

    let mut morphisms: Vec<Vec<usize>> = Vec::new();
    for src in &objects {
        let mut chosen = Vec::with_capacity(n);
        let mut used_cod = vec![false; base.objects()];
        enumerate_matchings(&base, src, &mut chosen, &mut used_cod, &mut morphisms, cap)?;
    }
    let morphism_lookup: BTreeMap<Vec<usize>, usize> =
        morphisms.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();

    let sorted_set = |xs: &mut Vec<usize>| xs.sort_unstable();
    let mut dom = Vec::with_capacity(morphisms.len());
    let mut cod = Vec::with_capacity(morphisms.len());
    for set in &morphisms {
        let mut d: Vec<usize> = set.iter().map(|&f| base.dom(f)).collect();
        let mut c: Vec<usize> = set.iter().map(|&f| base.cod(f)).collect();
        sorted_set(&mut d);
        sorted_set(&mut c);
        dom.push(object_lookup[&d]);
        cod.push(object_lookup[&c]);
    }
    let identities = objects
        .iter()
        .map(|s| {
            let ids: Vec<usize> = s.iter().map(|&x| base.identity(x)).collect();
            morphism_lookup[&ids]
        })
        .collect();
    let category = FiniteCategory::from_fn(objects.len(), dom, cod, identities, |g, f| {
        let mut composite: Vec<usize> = morphisms[f]
            .iter()
            .map(|&a| {
                let b = morphisms[g].iter().copied().find(|&b| base.dom(b) == base.cod(a)).expect("matching arrow");
                base.compose(b, a).expect("composable")
            })
            .collect();
        composite.sort_unstable_by_key(|&h| (base.dom(h), h));
        morphism_lookup[&composite]
    });
    Ok(FatDiagonalQuotient {
        base,
        n,
        category: Arc::new(category),
        objects,
        morphisms,
        object_lookup,
        morphism_lookup,
    })
}

fn enumerate_matchings(
    base: &FiniteCategory,
    src: &[usize],
    chosen: &mut Vec<usize>,
    used_cod: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    let k = chosen.len();
    if k == src.len() {
        if out.len() >= cap {
            return Err(Error::Size { what: "fat-diagonal quotient morphisms", limit: cap });
        }
        out.push(chosen.clone());
        return Ok(());
    }
    for f in 0..base.morphisms() {
        if base.dom(f) != src[k] || used_cod[base.cod(f)] {
            continue;
        }
        used_cod[base.cod(f)] = true;
        chosen.push(f);
        enumerate_matchings(base, src, chosen, used_cod, out, cap)?;
        chosen.pop();
        used_cod[base.cod(f)] = false;
    }
    Ok(())
}

/// `P_j` = fiber over `j`, `P_f` = lifts of `f`. `J` must be connected.
pub fn covering_to_p(c: &CoveringCategory) -> Result<IndexingFunctor> {
    let j = c.base();
    if !j.is_connected() {
        return Err(Error::Precondition(format!("base category with {} objects is not connected", j.objects())));
    }
    let on_objects = (0..j.objects()).map(|x| c.fiber(x).to_vec()).collect();
    let on_morphisms = (0..j.morphisms()).map(|f| c.lifts(f)).collect();
    IndexingFunctor::new(j.clone(), c.total().clone(), on_objects, on_morphisms)
}

/// `Σn ≀ H` as a one-object category together with the slot groupoid
/// `B_nΣn × H` and the indexing functor between them.
#[derive(Clone, Debug)]
pub struct WreathIndexing {
    wreath: WreathGroup,
    category: Arc<FiniteCategory>,
    slots: SlotGroupoid,
    p: IndexingFunctor,
}

impl WreathIndexing {
    pub fn wreath(&self) -> &WreathGroup {
        &self.wreath
    }

    /// One-object category of `Σn ≀ H`.
    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    pub fn slots(&self) -> &SlotGroupoid {
        &self.slots
    }

    pub fn p(&self) -> &IndexingFunctor {
        &self.p
    }
}

/// `P(∗) = {1, .., n}` and `P(σ; h_1, .., h_n) = {(σ_1, h_1), .., (σ_n, h_n)}`.
pub fn wreath_p(n: usize, h: &Subgroup) -> WreathIndexing {
    let wreath = WreathGroup::new(n, h);
    let slots = SlotGroupoid::new(n, h);
    let category = Arc::new(one_object_category(wreath.group()));
    let on_objects = vec![(0..n).collect::<Vec<_>>()];
    let on_morphisms = (0..wreath.order())
        .map(|w| {
            let x = wreath.element(w);
            let rank = x.sigma.lex_rank();
            (0..n).map(|i| slots.morphism(rank, i, h.local_index(x.hs[i]).expect("in H"))).collect()
        })
        .collect();
    let p = IndexingFunctor::new_unchecked(category.clone(), slots.category().clone(), on_objects, on_morphisms)
        .expect("wreath indexing shape");
    WreathIndexing { wreath, category, slots, p }
}

/// Two distinct wreath elements whose `P`-images share a morphism of
/// `B_nΣn × H`, so `P` is not injective on arrows and comes from no
/// covering category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonCoveringWitness {
    pub first: usize,
    pub second: usize,
    pub slot: usize,
    pub shared: usize,
}

/// Smallest witness in index order.
pub fn non_covering_witness(w: &WreathIndexing) -> Result<NonCoveringWitness> {
    let n = w.wreath.n();
    let k = w.wreath.base().order();
    if n < 2 || k < 2 {
        return Err(Error::Precondition(format!("need n >= 2 and |H| >= 2, got n = {n}, |H| = {k}")));
    }
    let p = &w.p;
    for a in 0..w.wreath.order() {
        for b in a + 1..w.wreath.order() {
            if let Some(slot) = (0..n).find(|&i| p.morphisms(a)[i] == p.morphisms(b)[i]) {
                return Ok(NonCoveringWitness { first: a, second: b, slot, shared: p.morphisms(a)[slot] });
            }
        }
    }
    Err(validation!("no two wreath elements share a covering morphism"))
}
