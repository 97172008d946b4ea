//! Finite covering categories (functors with unique lifts of arrows at any
//! prescribed domain or codomain) and the set-based Grothendieck
//! construction that produces them from `J → FinSet_iso`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{validation, Error, Result};
use crate::fincat::{CatFunctor, FiniteCategory};
use crate::group::Perm;

const NONE: usize = usize::MAX;

/// First reason a functor fails to be a covering category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoveringViolation {
    NotAFunctor(alloc::string::String),
    /// A non-identity morphism of `I` lies over an identity of `J`.
    NonDiscreteFiber { morphism: usize },
    MissingLeftLift { morphism: usize, object: usize },
    MultipleLeftLifts { morphism: usize, object: usize, lifts: (usize, usize) },
    MissingRightLift { morphism: usize, object: usize },
    MultipleRightLifts { morphism: usize, object: usize, lifts: (usize, usize) },
    /// Two objects in one component of `J` with fibers of different size.
    UnequalFibers { first: (usize, usize), second: (usize, usize) },
}

impl fmt::Display for CoveringViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CoveringViolation::*;
        match self {
            NotAFunctor(msg) => write!(f, "not a functor: {msg}"),
            NonDiscreteFiber { morphism } => {
                write!(f, "fiber is not discrete: non-identity morphism {morphism} lies over an identity")
            }
            MissingLeftLift { morphism, object } => {
                write!(f, "morphism {morphism} has no lift with domain {object}")
            }
            MultipleLeftLifts { morphism, object, lifts } => write!(
                f,
                "morphism {morphism} has several lifts with domain {object} ({} and {})",
                lifts.0, lifts.1
            ),
            MissingRightLift { morphism, object } => {
                write!(f, "morphism {morphism} has no lift with codomain {object}")
            }
            MultipleRightLifts { morphism, object, lifts } => write!(
                f,
                "morphism {morphism} has several lifts with codomain {object} ({} and {})",
                lifts.0, lifts.1
            ),
            UnequalFibers { first, second } => write!(
                f,
                "fibers over objects {} and {} in the same component have sizes {} and {}",
                first.0, second.0, first.1, second.1
            ),
        }
    }
}

impl CoveringViolation {
    pub fn kind(&self) -> &'static str {
        use CoveringViolation::*;
        match self {
            NotAFunctor(_) => "not_a_functor",
            NonDiscreteFiber { .. } => "non_discrete_fiber",
            MissingLeftLift { .. } => "missing_left_lift",
            MultipleLeftLifts { .. } => "multiple_left_lifts",
            MissingRightLift { .. } => "missing_right_lift",
            MultipleRightLifts { .. } => "multiple_right_lifts",
            UnequalFibers { .. } => "unequal_fibers",
        }
    }
}

/// Outcome of [`is_covering_category`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringReport {
    pub violation: Option<CoveringViolation>,
    /// Common fiber size when `J` is connected and the check passed.
    pub fiber_size: Option<usize>,
}

impl CoveringReport {
    pub fn is_covering(&self) -> bool {
        self.violation.is_none()
    }
}

struct LiftTables {
    fibers: Vec<Vec<usize>>,
    left: Vec<usize>,
}

fn analyse(p: &CatFunctor) -> core::result::Result<LiftTables, CoveringViolation> {
    p.audit().map_err(|e| CoveringViolation::NotAFunctor(alloc::format!("{e}")))?;
    let (i_cat, j_cat) = (p.source(), p.target());
    let (oi, mj) = (i_cat.objects(), j_cat.morphisms());

    for m in 0..i_cat.morphisms() {
        if j_cat.is_identity(p.mor(m)) && !i_cat.is_identity(m) {
            return Err(CoveringViolation::NonDiscreteFiber { morphism: m });
        }
    }

    let mut left = vec![NONE; mj * oi];
    let mut right = vec![NONE; mj * oi];
    for m in 0..i_cat.morphisms() {
        let f = p.mor(m);
        let (d, c) = (i_cat.dom(m), i_cat.cod(m));
        let slot = &mut left[f * oi + d];
        if *slot != NONE {
            return Err(CoveringViolation::MultipleLeftLifts { morphism: f, object: d, lifts: (*slot, m) });
        }
        *slot = m;
        let slot = &mut right[f * oi + c];
        if *slot != NONE {
            return Err(CoveringViolation::MultipleRightLifts { morphism: f, object: c, lifts: (*slot, m) });
        }
        *slot = m;
    }

    let mut fibers = vec![Vec::new(); j_cat.objects()];
    for x in 0..oi {
        fibers[p.ob(x)].push(x);
    }
    for f in 0..mj {
        for &x in &fibers[j_cat.dom(f)] {
            if left[f * oi + x] == NONE {
                return Err(CoveringViolation::MissingLeftLift { morphism: f, object: x });
            }
        }
        for &x in &fibers[j_cat.cod(f)] {
            if right[f * oi + x] == NONE {
                return Err(CoveringViolation::MissingRightLift { morphism: f, object: x });
            }
        }
    }

    let comps = j_cat.components();
    for a in 0..j_cat.objects() {
        let rep = comps[a];
        if fibers[a].len() != fibers[rep].len() {
            return Err(CoveringViolation::UnequalFibers {
                first: (rep, fibers[rep].len()),
                second: (a, fibers[a].len()),
            });
        }
    }
    Ok(LiftTables { fibers, left })
}

/// Checks both unique-lifting conditions (and, first, discreteness of the
/// fibers over identities).
pub fn is_covering_category(p: &CatFunctor) -> CoveringReport {
    match analyse(p) {
        Ok(tables) => {
            let fiber_size = if p.target().is_connected() { Some(tables.fibers[0].len()) } else { None };
            CoveringReport { violation: None, fiber_size }
        }
        Err(v) => CoveringReport { violation: Some(v), fiber_size: None },
    }
}

/// A functor `p: I → J` known to be a covering category, with its fibers
/// and lifts cached.
#[derive(Clone, Debug)]
pub struct CoveringCategory {
    p: CatFunctor,
    fibers: Vec<Vec<usize>>,
    left: Vec<usize>,
}

impl CoveringCategory {
    pub fn new(p: CatFunctor) -> core::result::Result<Self, CoveringViolation> {
        let LiftTables { fibers, left } = analyse(&p)?;
        Ok(CoveringCategory { p, fibers, left })
    }

    pub fn functor(&self) -> &CatFunctor {
        &self.p
    }

    /// `I`.
    pub fn total(&self) -> &Arc<FiniteCategory> {
        self.p.source()
    }

    /// `J`.
    pub fn base(&self) -> &Arc<FiniteCategory> {
        self.p.target()
    }

    /// Objects of `I` over `j`, ascending.
    pub fn fiber(&self, j: usize) -> &[usize] {
        &self.fibers[j]
    }

    /// The unique lift of `f` with domain `x`.
    pub fn left_lift(&self, f: usize, x: usize) -> usize {
        let l = self.left[f * self.total().objects() + x];
        assert!(l != NONE, "object {x} does not lie over the domain of {f}");
        l
    }

    /// All lifts of `f`, ordered by domain.
    pub fn lifts(&self, f: usize) -> Vec<usize> {
        let d = self.base().dom(f);
        self.fibers[d].iter().map(|&x| self.left_lift(f, x)).collect()
    }

    /// Common fiber size, if all fibers agree.
    pub fn fiber_size(&self) -> Option<usize> {
        let n = self.fibers.first()?.len();
        self.fibers.iter().all(|f| f.len() == n).then_some(n)
    }
}

/// A functor `J → FinSet_iso`: object `j` goes to `{0, .., sizes[j]-1}` and
/// morphism `f` to the bijection `maps[f]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSetIsoDiagram {
    shape: Arc<FiniteCategory>,
    sizes: Vec<usize>,
    maps: Vec<Perm>,
}

impl FinSetIsoDiagram {
    pub fn new(shape: Arc<FiniteCategory>, sizes: Vec<usize>, maps: Vec<Perm>) -> Result<Self> {
        if sizes.len() != shape.objects() || maps.len() != shape.morphisms() {
            return Err(Error::Shape(alloc::format!(
                "{} sets and {} maps for a category with {} objects and {} morphisms",
                sizes.len(),
                maps.len(),
                shape.objects(),
                shape.morphisms()
            )));
        }
        for f in 0..shape.morphisms() {
            let (d, c) = (sizes[shape.dom(f)], sizes[shape.cod(f)]);
            if maps[f].degree() != d || d != c {
                return Err(validation!("map {f} is not a bijection between sets of sizes {d} and {c}"));
            }
        }
        for x in 0..shape.objects() {
            if !maps[shape.identity(x)].is_identity() {
                return Err(validation!("identity of object {x} is not sent to an identity"));
            }
        }
        for (g, f) in shape.composable_pairs() {
            let gf = shape.compose(g, f).expect("composable");
            if maps[gf] != maps[g].compose(&maps[f]) {
                return Err(validation!("P({g} ∘ {f}) != P({g}) ∘ P({f})"));
            }
        }
        Ok(FinSetIsoDiagram { shape, sizes, maps })
    }

    /// Constant functor at a set of size `k`.
    pub fn constant(shape: Arc<FiniteCategory>, k: usize) -> Self {
        let sizes = vec![k; shape.objects()];
        let maps = vec![Perm::identity(k); shape.morphisms()];
        FinSetIsoDiagram { shape, sizes, maps }
    }

    pub fn shape(&self) -> &Arc<FiniteCategory> {
        &self.shape
    }

    pub fn size(&self, j: usize) -> usize {
        self.sizes[j]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn map(&self, f: usize) -> &Perm {
        &self.maps[f]
    }
}

/// Set-based Grothendieck construction.
///
/// Objects of `I` are pairs `(j, a)` with `a ∈ Pj`, numbered `j`-major.
/// Morphisms are `(f, a): (j, a) → (j', Pf(a))`, numbered `f`-major, and
/// `(g, Pf(a)) ∘ (f, a) = (g ∘ f, a)`.
pub fn grothendieck_set(p: &FinSetIsoDiagram) -> CoveringCategory {
    let j = p.shape();
    let mut ob_offset = Vec::with_capacity(j.objects());
    let mut total = 0;
    for x in 0..j.objects() {
        ob_offset.push(total);
        total += p.size(x);
    }
    let mut mor_offset = Vec::with_capacity(j.morphisms());
    let mut dom = Vec::new();
    let mut cod = Vec::new();
    let mut over = Vec::new();
    let mut source_point = Vec::new();
    for f in 0..j.morphisms() {
        mor_offset.push(dom.len());
        let (d, c) = (j.dom(f), j.cod(f));
        for a in 0..p.size(d) {
            dom.push(ob_offset[d] + a);
            cod.push(ob_offset[c] + p.map(f).apply(a));
            over.push(f);
            source_point.push(a);
        }
    }
    let identities = (0..j.objects())
        .flat_map(|x| (0..p.size(x)).map(move |a| (x, a)))
        .map(|(x, a)| mor_offset[j.identity(x)] + a)
        .collect();
    let ob_map = (0..j.objects()).flat_map(|x| core::iter::repeat(x).take(p.size(x))).collect();
    let i_cat = FiniteCategory::from_fn(total, dom, cod, identities, |g, f| {
        let gf = j.compose(over[g], over[f]).expect("composable in J");
        mor_offset[gf] + source_point[f]
    });
    let functor = CatFunctor::new_unchecked(Arc::new(i_cat), j.clone(), ob_map, over);
    CoveringCategory::new(functor).expect("Grothendieck construction yields a covering category")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{one_object_category, product_category};
    use crate::group::{FiniteGroup, Subgroup, Transversal, TransversalPolicy};
    use crate::groupoid::{GSet, SlotGroupoid, TranslationGroupoid};

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::from_permutations(&[Perm::from_cycles(&[vec![1, 2]], 2).unwrap()]).unwrap())
    }

    fn s3() -> Arc<FiniteGroup> {
        let a = Perm::from_cycles(&[vec![1, 2]], 3).unwrap();
        let b = Perm::from_cycles(&[vec![1, 2, 3]], 3).unwrap();
        Arc::new(FiniteGroup::from_permutations(&[a, b]).unwrap())
    }

    #[test]
    fn translation_groupoid_projection_is_covering() {
        let g = s3();
        let h = Subgroup::generated_by(g.clone(), &[1]).unwrap();
        let t = Transversal::new(&h, TransversalPolicy::Minimal).unwrap();
        let bg = TranslationGroupoid::new(GSet::cosets(&t));
        let gcat = Arc::new(one_object_category(&g));
        let p = bg.projection(gcat).unwrap();
        let report = is_covering_category(&p);
        assert_eq!(report, CoveringReport { violation: None, fiber_size: Some(3) });
        let c = CoveringCategory::new(p).unwrap();
        // Oracle: the unique lift of g at x is (g, x).
        for x in g.elements() {
            for i in 0..3 {
                assert_eq!(c.left_lift(x, i), bg.morphism(x, i));
            }
        }
    }

    #[test]
    fn slot_projection_is_not_covering() {
        let g = c2();
        let slots = SlotGroupoid::new(2, &Subgroup::whole(g));
        let report = is_covering_category(slots.projection());
        assert!(matches!(report.violation, Some(CoveringViolation::NonDiscreteFiber { .. })));
    }

    #[test]
    fn identity_functor_is_covering() {
        let a = Arc::new(FiniteCategory::arrow());
        let report = is_covering_category(&CatFunctor::identity(a));
        assert_eq!(report.fiber_size, Some(1));
        assert!(report.is_covering());
    }

    #[test]
    fn missing_and_duplicate_lifts() {
        // Two copies of the arrow mapped onto one arrow: fine. Drop one arrow: missing lift.
        let a = FiniteCategory::arrow();
        let two = Arc::new(product_category(&FiniteCategory::discrete(2), &a));
        let p = CatFunctor::second_projection(two, Arc::new(a.clone()));
        assert_eq!(is_covering_category(&p).fiber_size, Some(2));
        // Discrete two objects over the arrow, one over each end: missing lift.
        let d = Arc::new(FiniteCategory::discrete(2));
        let q = CatFunctor::new(d, Arc::new(a.clone()), vec![0, 1], vec![0, 1]).unwrap();
        assert!(matches!(
            is_covering_category(&q).violation,
            Some(CoveringViolation::MissingLeftLift { morphism: 2, object: 0 })
        ));
        // Not a functor at all.
        let r = CatFunctor::new_unchecked(Arc::new(a.clone()), Arc::new(a), vec![0, 0], vec![0, 1, 2]);
        assert!(matches!(is_covering_category(&r).violation, Some(CoveringViolation::NotAFunctor(_))));
    }

    #[test]
    fn empty_category_over_terminal() {
        let empty = Arc::new(FiniteCategory::discrete(0));
        let p = CatFunctor::new(empty, Arc::new(FiniteCategory::terminal()), vec![], vec![]).unwrap();
        assert_eq!(is_covering_category(&p), CoveringReport { violation: None, fiber_size: Some(0) });
    }

    #[test]
    fn grothendieck_examples() {
        let j = Arc::new(one_object_category(&s3()));
        let c = grothendieck_set(&FinSetIsoDiagram::constant(j.clone(), 4));
        assert_eq!(c.total().objects(), 4 * j.objects());
        assert_eq!(c.total().morphisms(), 4 * j.morphisms());
        c.total().audit().unwrap();

        let star = Arc::new(FiniteCategory::terminal());
        let d = grothendieck_set(&FinSetIsoDiagram::constant(star, 3));
        assert_eq!(**d.total(), FiniteCategory::discrete(3));

        let g = c2();
        let jc = Arc::new(one_object_category(&g));
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let p = FinSetIsoDiagram::new(jc.clone(), vec![2], vec![Perm::identity(2), swap]).unwrap();
        let cov = grothendieck_set(&p);
        // Compare with B_{C2}C2 acting on itself.
        let t = Transversal::new(&Subgroup::trivial(g.clone()), TransversalPolicy::Minimal).unwrap();
        let bg = TranslationGroupoid::new(GSet::cosets(&t));
        let iso: Vec<usize> = (0..4)
            .map(|m| {
                let (f, a) = (m / 2, m % 2);
                bg.morphism(f, a)
            })
            .collect();
        let phi = CatFunctor::new(cov.total().clone(), bg.category().clone(), vec![0, 1], iso).unwrap();
        assert!(phi.is_isomorphism());
    }

    #[test]
    fn finset_diagram_validation() {
        let g = c2();
        let jc = Arc::new(one_object_category(&g));
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        assert!(FinSetIsoDiagram::new(jc.clone(), vec![2], vec![swap.clone(), swap.clone()]).is_err());
        let cyc = Perm::from_images(vec![1, 2, 0]).unwrap();
        // g ∘ g = e but cyc ∘ cyc != id.
        assert!(FinSetIsoDiagram::new(jc, vec![3], vec![Perm::identity(3), cyc]).is_err());
    }
}
