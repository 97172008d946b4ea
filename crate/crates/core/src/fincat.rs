//! Finite categories as explicit tables, functors between them, and a few
//! basic constructions (one-object categories of groups, products,
//! composition of functors).

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{shape, validation, Result};
use crate::group::FiniteGroup;

const NONE: usize = usize::MAX;

/// A finite category. Objects are `0..objects`, morphisms `0..morphisms`.
///
/// `compose(g, f)` is `g ∘ f` (`f` first) and is defined exactly when
/// `cod(f) == dom(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: usize,
    dom: Vec<usize>,
    cod: Vec<usize>,
    identities: Vec<usize>,
    table: Vec<usize>,
}

impl FiniteCategory {
    /// Builds and fully audits a category from raw data. `compose[g][f]`
    /// holds `g ∘ f` for composable pairs and `None` elsewhere.
    pub fn new(
        objects: usize,
        dom: Vec<usize>,
        cod: Vec<usize>,
        identities: Vec<usize>,
        compose: &[Vec<Option<usize>>],
    ) -> Result<Self> {
        let m = dom.len();
        if cod.len() != m {
            return Err(validation!("{} domains but {} codomains", m, cod.len()));
        }
        if identities.len() != objects {
            return Err(validation!("{} identities for {objects} objects", identities.len()));
        }
        if compose.len() != m {
            return Err(validation!("composition table has {} rows, expected {m}", compose.len()));
        }
        for f in 0..m {
            if dom[f] >= objects || cod[f] >= objects {
                return Err(validation!("morphism {f} has an endpoint out of range"));
            }
        }
        for (x, &id) in identities.iter().enumerate() {
            if id >= m || dom[id] != x || cod[id] != x {
                return Err(validation!("identity of object {x} is not an endomorphism of it"));
            }
        }
        let mut table = vec![NONE; m * m];
        for (g, row) in compose.iter().enumerate() {
            if row.len() != m {
                return Err(validation!("composition row {g} has {} entries, expected {m}", row.len()));
            }
            for (f, entry) in row.iter().enumerate() {
                let composable = cod[f] == dom[g];
                match (*entry, composable) {
                    (Some(h), true) => {
                        if h >= m || dom[h] != dom[f] || cod[h] != cod[g] {
                            return Err(validation!("{g} ∘ {f} = {h} has the wrong endpoints"));
                        }
                        table[g * m + f] = h;
                    }
                    (None, false) => {}
                    (Some(_), false) => return Err(validation!("{g} ∘ {f} given but not composable")),
                    (None, true) => return Err(validation!("{g} ∘ {f} missing")),
                }
            }
        }
        let cat = FiniteCategory { objects, dom, cod, identities, table };
        cat.audit()?;
        Ok(cat)
    }

    /// Builds a category whose composition is given by a function on
    /// composable pairs. The result is not audited.
    pub fn from_fn(
        objects: usize,
        dom: Vec<usize>,
        cod: Vec<usize>,
        identities: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> usize,
    ) -> Self {
        let m = dom.len();
        let mut table = vec![NONE; m * m];
        for g in 0..m {
            for f in 0..m {
                if cod[f] == dom[g] {
                    table[g * m + f] = compose(g, f);
                }
            }
        }
        FiniteCategory { objects, dom, cod, identities, table }
    }

    /// Identity laws, endpoint consistency and associativity on every
    /// composable triple.
    pub fn audit(&self) -> Result<()> {
        let m = self.morphisms();
        for f in 0..m {
            if self.dom[f] >= self.objects || self.cod[f] >= self.objects {
                return Err(validation!("morphism {f} has an endpoint out of range"));
            }
            if self.compose(self.identities[self.cod[f]], f) != Some(f)
                || self.compose(f, self.identities[self.dom[f]]) != Some(f)
            {
                return Err(validation!("identity law fails at morphism {f}"));
            }
        }
        for g in 0..m {
            for f in 0..m {
                let gf = self.table[g * m + f];
                if (gf != NONE) != (self.cod[f] == self.dom[g]) {
                    return Err(validation!("composition of {g} and {f} defined on the wrong pairs"));
                }
                if gf == NONE {
                    continue;
                }
                if gf >= m || self.dom[gf] != self.dom[f] || self.cod[gf] != self.cod[g] {
                    return Err(validation!("{g} ∘ {f} has the wrong endpoints"));
                }
                for k in 0..m {
                    if self.dom[k] != self.cod[g] {
                        continue;
                    }
                    let lhs = self.table[k * m + gf];
                    let rhs = self.table[self.table[k * m + g] * m + f];
                    if lhs != rhs {
                        return Err(validation!("associativity fails at ({k}, {g}, {f})"));
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn objects(&self) -> usize {
        self.objects
    }

    #[inline]
    pub fn morphisms(&self) -> usize {
        self.dom.len()
    }

    #[inline]
    pub fn dom(&self, f: usize) -> usize {
        self.dom[f]
    }

    #[inline]
    pub fn cod(&self, f: usize) -> usize {
        self.cod[f]
    }

    #[inline]
    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.dom[f]] == f
    }

    /// `g ∘ f` when `cod(f) == dom(g)`.
    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let h = self.table[g * self.morphisms() + f];
        (h != NONE).then_some(h)
    }

    /// All composable pairs `(g, f)`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.morphisms();
        (0..m).flat_map(move |g| (0..m).filter(move |&f| self.cod[f] == self.dom[g]).map(move |f| (g, f)))
    }

    pub fn hom(&self, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms()).filter(move |&f| self.dom[f] == x && self.cod[f] == y)
    }

    /// Some `g` with `g ∘ f` and `f ∘ g` identities.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.hom(self.cod[f], self.dom[f]).find(|&g| {
            self.compose(g, f) == Some(self.identities[self.dom[f]])
                && self.compose(f, g) == Some(self.identities[self.cod[f]])
        })
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.morphisms()).all(|f| self.inverse(f).is_some())
    }

    /// Connected components of the underlying undirected graph, as a label
    /// per object.
    pub fn components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.objects).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for f in 0..self.morphisms() {
            let (a, b) = (find(&mut parent, self.dom[f]), find(&mut parent, self.cod[f]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        (0..self.objects).map(|x| find(&mut parent, x)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.objects > 0 && self.components().iter().all(|&c| c == 0)
    }

    /// Composition as an optional table, the layout accepted by [`FiniteCategory::new`].
    pub fn compose_rows(&self) -> Vec<Vec<Option<usize>>> {
        let m = self.morphisms();
        (0..m).map(|g| (0..m).map(|f| self.compose(g, f)).collect()).collect()
    }

    /// The terminal category `∗`.
    pub fn terminal() -> Self {
        Self::from_fn(1, vec![0], vec![0], vec![0], |_, _| 0)
    }

    /// Discrete category on `k` objects.
    pub fn discrete(k: usize) -> Self {
        let ids: Vec<usize> = (0..k).collect();
        Self::from_fn(k, ids.clone(), ids.clone(), ids, |g, _| g)
    }

    /// The arrow category `0 → 1`.
    pub fn arrow() -> Self {
        // morphisms: id_0, id_1, 0 → 1
        Self::from_fn(2, vec![0, 1, 0], vec![0, 1, 1], vec![0, 1], |g, f| match (g, f) {
            (1, 2) | (2, 0) => 2,
            (g, _) if g == 0 || g == 1 => f,
            _ => g,
        })
    }
}

/// A group as a category with one object whose endomorphisms are the
/// group elements.
pub fn one_object_category(g: &FiniteGroup) -> FiniteCategory {
    let m = g.order();
    FiniteCategory::from_fn(1, vec![0; m], vec![0; m], vec![g.identity()], |a, b| g.mul(a, b))
}

/// `a × b`; object `(x, y)` has index `x·|ob b| + y`, morphism `(f, g)` has
/// index `f·|mor b| + g`.
pub fn product_category(a: &FiniteCategory, b: &FiniteCategory) -> FiniteCategory {
    let (ob, mb) = (b.objects(), b.morphisms());
    let m = a.morphisms() * mb;
    let mut dom = Vec::with_capacity(m);
    let mut cod = Vec::with_capacity(m);
    for f in 0..a.morphisms() {
        for g in 0..mb {
            dom.push(a.dom(f) * ob + b.dom(g));
            cod.push(a.cod(f) * ob + b.cod(g));
        }
    }
    let identities = (0..a.objects())
        .flat_map(|x| (0..ob).map(move |y| (x, y)))
        .map(|(x, y)| a.identity(x) * mb + b.identity(y))
        .collect();
    FiniteCategory::from_fn(a.objects() * ob, dom, cod, identities, |p, q| {
        let first = a.compose(p / mb, q / mb).expect("composable");
        let second = b.compose(p % mb, q % mb).expect("composable");
        first * mb + second
    })
}

/// A functor between finite categories.
#[derive(Clone, Debug)]
pub struct CatFunctor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    ob_map: Vec<usize>,
    mor_map: Vec<usize>,
}

impl PartialEq for CatFunctor {
    fn eq(&self, other: &Self) -> bool {
        same_category(&self.source, &other.source)
            && same_category(&self.target, &other.target)
            && self.ob_map == other.ob_map
            && self.mor_map == other.mor_map
    }
}

impl Eq for CatFunctor {}

pub(crate) fn same_category(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl CatFunctor {
    /// Builds a functor and audits it.
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        ob_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Result<Self> {
        let f = Self::new_unchecked(source, target, ob_map, mor_map);
        f.audit()?;
        Ok(f)
    }

    /// Builds a functor without checking the functor laws.
    pub fn new_unchecked(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        ob_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Self {
        CatFunctor { source, target, ob_map, mor_map }
    }

    pub fn identity(c: Arc<FiniteCategory>) -> Self {
        let ob_map = (0..c.objects()).collect();
        let mor_map = (0..c.morphisms()).collect();
        CatFunctor { source: c.clone(), target: c, ob_map, mor_map }
    }

    /// The unique functor to the terminal category.
    pub fn to_terminal(c: Arc<FiniteCategory>) -> Self {
        let ob_map = vec![0; c.objects()];
        let mor_map = vec![0; c.morphisms()];
        CatFunctor { source: c, target: Arc::new(FiniteCategory::terminal()), ob_map, mor_map }
    }

    /// Projection `a × b → a`.
    pub fn first_projection(product: Arc<FiniteCategory>, a: Arc<FiniteCategory>, b: &FiniteCategory) -> Self {
        let ob_map = (0..product.objects()).map(|x| x / b.objects()).collect();
        let mor_map = (0..product.morphisms()).map(|f| f / b.morphisms()).collect();
        CatFunctor { source: product, target: a, ob_map, mor_map }
    }

    /// Projection `a × b → b`.
    pub fn second_projection(product: Arc<FiniteCategory>, b: Arc<FiniteCategory>) -> Self {
        let ob_map = (0..product.objects()).map(|x| x % b.objects()).collect();
        let mor_map = (0..product.morphisms()).map(|f| f % b.morphisms()).collect();
        CatFunctor { source: product, target: b, ob_map, mor_map }
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    #[inline]
    pub fn ob(&self, x: usize) -> usize {
        self.ob_map[x]
    }

    #[inline]
    pub fn mor(&self, f: usize) -> usize {
        self.mor_map[f]
    }

    pub fn ob_map(&self) -> &[usize] {
        &self.ob_map
    }

    pub fn mor_map(&self) -> &[usize] {
        &self.mor_map
    }

    /// Copy with one morphism image replaced, without re-auditing.
    pub fn with_mor_image(&self, f: usize, image: usize) -> Self {
        let mut out = self.clone();
        out.mor_map[f] = image;
        out
    }

    /// Endpoints, identities and composition are preserved.
    pub fn audit(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        if self.ob_map.len() != s.objects() || self.mor_map.len() != s.morphisms() {
            return Err(shape!("functor maps do not match the source category"));
        }
        if self.ob_map.iter().any(|&y| y >= t.objects()) || self.mor_map.iter().any(|&g| g >= t.morphisms()) {
            return Err(validation!("functor image out of range"));
        }
        for f in 0..s.morphisms() {
            let g = self.mor_map[f];
            if t.dom(g) != self.ob_map[s.dom(f)] || t.cod(g) != self.ob_map[s.cod(f)] {
                return Err(validation!("morphism {f} is sent to {g} with the wrong endpoints"));
            }
        }
        for x in 0..s.objects() {
            if self.mor_map[s.identity(x)] != t.identity(self.ob_map[x]) {
                return Err(validation!("identity of object {x} is not preserved"));
            }
        }
        for (g, f) in s.composable_pairs() {
            let lhs = self.mor_map[s.compose(g, f).expect("composable")];
            let rhs = t.compose(self.mor_map[g], self.mor_map[f]);
            if Some(lhs) != rhs {
                return Err(validation!("composition {g} ∘ {f} is not preserved"));
            }
        }
        Ok(())
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &CatFunctor) -> Result<CatFunctor> {
        if !same_category(&other.target, &self.source) {
            return Err(shape!("functors are not composable"));
        }
        Ok(CatFunctor {
            source: other.source.clone(),
            target: self.target.clone(),
            ob_map: other.ob_map.iter().map(|&x| self.ob_map[x]).collect(),
            mor_map: other.mor_map.iter().map(|&f| self.mor_map[f]).collect(),
        })
    }

    /// Bijective on objects and morphisms.
    pub fn is_isomorphism(&self) -> bool {
        is_bijection(&self.ob_map, self.target.objects()) && is_bijection(&self.mor_map, self.target.morphisms())
    }

    /// First morphism on which two functors with the same source and target
    /// disagree (object disagreements are reported through the object's
    /// identity).
    pub fn first_difference(&self, other: &CatFunctor) -> Result<Option<usize>> {
        if !same_category(&self.source, &other.source) || !same_category(&self.target, &other.target) {
            return Err(shape!("functors have different sources or targets"));
        }
        for x in 0..self.source.objects() {
            if self.ob_map[x] != other.ob_map[x] {
                return Ok(Some(self.source.identity(x)));
            }
        }
        Ok((0..self.source.morphisms()).find(|&f| self.mor_map[f] != other.mor_map[f]))
    }
}

fn is_bijection(map: &[usize], codomain: usize) -> bool {
    if map.len() != codomain {
        return false;
    }
    let mut seen = vec![false; codomain];
    map.iter().all(|&y| y < codomain && !core::mem::replace(&mut seen[y], true))
}

/// Human-readable description of a morphism for reports.
pub fn describe_morphism(c: &FiniteCategory, f: usize) -> String {
    format!("#{f}: {} → {}", c.dom(f), c.cod(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Perm;

    fn s3() -> FiniteGroup {
        let a = Perm::from_cycles(&[vec![1, 2]], 3).unwrap();
        let b = Perm::from_cycles(&[vec![1, 2, 3]], 3).unwrap();
        FiniteGroup::from_permutations(&[a, b]).unwrap()
    }

    #[test]
    fn one_object_categories() {
        let t = one_object_category(&FiniteGroup::trivial());
        assert_eq!(t, FiniteCategory::terminal());
        let c2 = FiniteGroup::from_permutations(&[Perm::from_cycles(&[vec![1, 2]], 2).unwrap()]).unwrap();
        let c = one_object_category(&c2);
        assert_eq!((c.objects(), c.morphisms()), (1, 2));
        let s = one_object_category(&s3());
        assert_eq!((s.objects(), s.morphisms()), (1, 6));
        s.audit().unwrap();
        // Table transcription: composition is the group product.
        let g = s3();
        for (a, b) in s.composable_pairs() {
            assert_eq!(s.compose(a, b), Some(g.mul(a, b)));
        }
    }

    #[test]
    fn new_rejects_bad_tables() {
        // Arrow category with a composite filled in for a non-composable pair.
        let good = FiniteCategory::arrow();
        good.audit().unwrap();
        let mut rows = good.compose_rows();
        assert!(FiniteCategory::new(2, vec![0, 1, 0], vec![0, 1, 1], vec![0, 1], &rows).is_ok());
        rows[2][2] = Some(2);
        assert!(FiniteCategory::new(2, vec![0, 1, 0], vec![0, 1, 1], vec![0, 1], &rows).is_err());
        let mut rows = good.compose_rows();
        rows[1][2] = None;
        assert!(FiniteCategory::new(2, vec![0, 1, 0], vec![0, 1, 1], vec![0, 1], &rows).is_err());
        // Non-associative "monoid" on one object: a∘a = b, b∘a = a, a∘b = e, b∘b = a.
        let rows = vec![
            vec![Some(0), Some(1), Some(2)],
            vec![Some(1), Some(2), Some(0)],
            vec![Some(2), Some(1), Some(1)],
        ];
        assert!(FiniteCategory::new(1, vec![0; 3], vec![0; 3], vec![0], &rows).is_err());
    }

    #[test]
    fn products() {
        let a = FiniteCategory::arrow();
        let p = product_category(&a, &FiniteCategory::terminal());
        assert_eq!((p.objects(), p.morphisms()), (2, 3));
        let iso = CatFunctor::new(Arc::new(p), Arc::new(a.clone()), vec![0, 1], vec![0, 1, 2]).unwrap();
        assert!(iso.is_isomorphism());

        let b2 = FiniteCategory::from_fn(2, vec![0, 1, 0, 1], vec![0, 1, 1, 0], vec![0, 1], |g, f| {
            // morphisms: id0, id1, s0: 0→1, s1: 1→0
            match (g, f) {
                (0, f) | (1, f) => f,
                (g, 0) | (g, 1) => g,
                (3, 2) => 0,
                (2, 3) => 1,
                _ => unreachable!(),
            }
        });
        b2.audit().unwrap();
        let c2 = FiniteGroup::from_permutations(&[Perm::from_cycles(&[vec![1, 2]], 2).unwrap()]).unwrap();
        let pc = product_category(&b2, &one_object_category(&c2));
        assert_eq!((pc.objects(), pc.morphisms()), (2, 8));
        pc.audit().unwrap();

        let ab_c = product_category(&product_category(&a, &b2), &pc);
        let a_bc = product_category(&a, &product_category(&b2, &pc));
        assert_eq!(ab_c.objects(), a_bc.objects());
        assert_eq!(ab_c.morphisms(), a_bc.morphisms());
    }

    #[test]
    fn functor_audit_and_composition() {
        let a = Arc::new(FiniteCategory::arrow());
        let t = Arc::new(FiniteCategory::terminal());
        let to_t = CatFunctor::to_terminal(a.clone());
        to_t.audit().unwrap();
        let bad = CatFunctor::new(a.clone(), a.clone(), vec![0, 1], vec![1, 0, 2]);
        assert!(bad.is_err());
        let pick0 = CatFunctor::new(t.clone(), a.clone(), vec![0], vec![0]).unwrap();
        let round = to_t.compose(&pick0).unwrap();
        assert_eq!(round, CatFunctor::identity(t));
        assert!(pick0.compose(&pick0).is_err());
    }

    #[test]
    fn groupoid_and_components() {
        let a = FiniteCategory::arrow();
        assert!(!a.is_groupoid());
        assert!(a.is_connected());
        assert_eq!(FiniteCategory::discrete(3).components(), vec![0, 1, 2]);
        assert!(one_object_category(&s3()).is_groupoid());
    }
}
