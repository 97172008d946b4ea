//! Categorified Grothendieck construction, functor categories and
//! categories of sections.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::covering::FinSetIsoDiagram;
use crate::error::{shape, validation, Error, Result};
use crate::fincat::{same_category, CatFunctor, FiniteCategory};

/// Default cap on candidate object assignments when enumerating functors.
pub const DEFAULT_SECTIONS_CAP: usize = 1_000_000;

/// A functor `J → Cat` with finite values.
#[derive(Clone, Debug)]
pub struct CatValuedDiagram {
    shape: Arc<FiniteCategory>,
    categories: Vec<Arc<FiniteCategory>>,
    functors: Vec<CatFunctor>,
}

impl CatValuedDiagram {
    pub fn new(shape: Arc<FiniteCategory>, categories: Vec<Arc<FiniteCategory>>, functors: Vec<CatFunctor>) -> Result<Self> {
        if categories.len() != shape.objects() || functors.len() != shape.morphisms() {
            return Err(shape!("diagram data does not match the shape"));
        }
        for (f, func) in functors.iter().enumerate() {
            if !same_category(func.source(), &categories[shape.dom(f)])
                || !same_category(func.target(), &categories[shape.cod(f)])
            {
                return Err(shape!("P({f}) does not run between P(dom) and P(cod)"));
            }
            func.audit()?;
        }
        for x in 0..shape.objects() {
            if functors[shape.identity(x)] != CatFunctor::identity(categories[x].clone()) {
                return Err(validation!("P does not preserve the identity of object {x}"));
            }
        }
        for (g, f) in shape.composable_pairs() {
            let gf = shape.compose(g, f).expect("composable");
            if functors[g].compose(&functors[f])? != functors[gf] {
                return Err(validation!("P({g} ∘ {f}) != P({g}) ∘ P({f})"));
            }
        }
        Ok(CatValuedDiagram { shape, categories, functors })
    }

    /// Sets viewed as discrete categories.
    pub fn from_sets(p: &FinSetIsoDiagram) -> Self {
        let shape = p.shape().clone();
        let categories: Vec<Arc<FiniteCategory>> =
            (0..shape.objects()).map(|x| Arc::new(FiniteCategory::discrete(p.size(x)))).collect();
        let functors = (0..shape.morphisms())
            .map(|f| {
                let images = p.map(f).images().to_vec();
                CatFunctor::new_unchecked(
                    categories[shape.dom(f)].clone(),
                    categories[shape.cod(f)].clone(),
                    images.clone(),
                    images,
                )
            })
            .collect();
        CatValuedDiagram { shape, categories, functors }
    }

    /// The constant functor at `c`.
    pub fn constant(shape: Arc<FiniteCategory>, c: Arc<FiniteCategory>) -> Self {
        let categories = vec![c.clone(); shape.objects()];
        let functors = vec![CatFunctor::identity(c); shape.morphisms()];
        CatValuedDiagram { shape, categories, functors }
    }

    pub fn shape(&self) -> &Arc<FiniteCategory> {
        &self.shape
    }

    pub fn category(&self, j: usize) -> &Arc<FiniteCategory> {
        &self.categories[j]
    }

    pub fn functor(&self, f: usize) -> &CatFunctor {
        &self.functors[f]
    }
}

/// The total category of a categorified Grothendieck construction with
/// its projection to `J`.
///
/// Objects `(j, i)` are numbered `j`-major. Morphisms `(f, i, h)` with
/// `h: (Pf)(i) → i'` are numbered by `f`, then `i`, then `h`.
#[derive(Clone, Debug)]
pub struct GrothendieckCat {
    projection: CatFunctor,
    objects: Vec<(usize, usize)>,
    morphisms: Vec<(usize, usize, usize)>,
    object_lookup: BTreeMap<(usize, usize), usize>,
    morphism_lookup: BTreeMap<(usize, usize, usize), usize>,
}

impl GrothendieckCat {
    pub fn projection(&self) -> &CatFunctor {
        &self.projection
    }

    pub fn total(&self) -> &Arc<FiniteCategory> {
        self.projection.source()
    }

    /// `(j, i)`.
    pub fn object(&self, x: usize) -> (usize, usize) {
        self.objects[x]
    }

    /// `(f, i, h)`.
    pub fn morphism(&self, m: usize) -> (usize, usize, usize) {
        self.morphisms[m]
    }

    pub fn object_index(&self, j: usize, i: usize) -> Option<usize> {
        self.object_lookup.get(&(j, i)).copied()
    }

    pub fn morphism_index(&self, f: usize, i: usize, h: usize) -> Option<usize> {
        self.morphism_lookup.get(&(f, i, h)).copied()
    }
}

/// Composition is `(g, i', k) ∘ (f, i, h) = (g ∘ f, i, k ∘ Pg(h))`.
pub fn grothendieck_cat(p: &CatValuedDiagram) -> Result<GrothendieckCat> {
    let j = &*p.shape;
    let mut objects = Vec::new();
    for x in 0..j.objects() {
        for i in 0..p.categories[x].objects() {
            objects.push((x, i));
        }
    }
    let object_lookup: BTreeMap<(usize, usize), usize> = objects.iter().enumerate().map(|(k, &o)| (o, k)).collect();
    let mut morphisms = Vec::new();
    let mut dom = Vec::new();
    let mut cod = Vec::new();
    for f in 0..j.morphisms() {
        let (a, b) = (j.dom(f), j.cod(f));
        let target = &p.categories[b];
        for i in 0..p.categories[a].objects() {
            let image = p.functors[f].ob(i);
            for h in 0..target.morphisms() {
                if target.dom(h) == image {
                    morphisms.push((f, i, h));
                    dom.push(object_lookup[&(a, i)]);
                    cod.push(object_lookup[&(b, target.cod(h))]);
                }
            }
        }
    }
    let morphism_lookup: BTreeMap<(usize, usize, usize), usize> =
        morphisms.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let identities = objects
        .iter()
        .map(|&(x, i)| morphism_lookup[&(j.identity(x), i, p.categories[x].identity(i))])
        .collect();
    let category = FiniteCategory::from_fn(objects.len(), dom, cod, identities, |later, first| {
        let (f, i, h) = morphisms[first];
        let (g, _, k) = morphisms[later];
        let c = &p.categories[j.cod(g)];
        let moved = p.functors[g].mor(h);
        morphism_lookup[&(j.compose(g, f).expect("composable"), i, c.compose(k, moved).expect("composable"))]
    });
    category.audit()?;
    let category = Arc::new(category);
    let projection = CatFunctor::new_unchecked(
        category,
        p.shape.clone(),
        objects.iter().map(|o| o.0).collect(),
        morphisms.iter().map(|m| m.0).collect(),
    );
    Ok(GrothendieckCat { projection, objects, morphisms, object_lookup, morphism_lookup })
}

/// A natural transformation, as the list of its components.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Transformation {
    pub source: usize,
    pub target: usize,
    pub components: Vec<usize>,
}

/// A category whose objects are functors `A → B` and whose morphisms are
/// natural transformations.
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    category: Arc<FiniteCategory>,
    functors: Vec<CatFunctor>,
    transformations: Vec<Transformation>,
    functor_lookup: BTreeMap<(Vec<usize>, Vec<usize>), usize>,
    transformation_lookup: BTreeMap<Transformation, usize>,
}

impl FunctorCategory {
    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    pub fn functor(&self, x: usize) -> &CatFunctor {
        &self.functors[x]
    }

    pub fn functors(&self) -> &[CatFunctor] {
        &self.functors
    }

    pub fn transformation(&self, m: usize) -> &Transformation {
        &self.transformations[m]
    }

    pub fn functor_index(&self, ob_map: &[usize], mor_map: &[usize]) -> Option<usize> {
        self.functor_lookup.get(&(ob_map.to_vec(), mor_map.to_vec())).copied()
    }

    pub fn transformation_index(&self, t: &Transformation) -> Option<usize> {
        self.transformation_lookup.get(t).copied()
    }

    pub fn hom_size(&self, x: usize, y: usize) -> usize {
        self.category.hom(x, y).count()
    }
}

/// Every functor `src → tgt` with `ob_ok(x, y)` for each object image and
/// `mor_ok(f, m)` for each morphism image.
pub fn enumerate_functors(
    src: &Arc<FiniteCategory>,
    tgt: &Arc<FiniteCategory>,
    ob_ok: &dyn Fn(usize, usize) -> bool,
    mor_ok: &dyn Fn(usize, usize) -> bool,
    cap: usize,
) -> Result<Vec<CatFunctor>> {
    let ob_candidates: Vec<Vec<usize>> =
        (0..src.objects()).map(|x| (0..tgt.objects()).filter(|&y| ob_ok(x, y)).collect()).collect();
    let mut count: usize = 1;
    for c in &ob_candidates {
        count = count.saturating_mul(c.len());
    }
    if count > cap {
        return Err(Error::Size { what: "candidate object assignments", limit: cap });
    }
    // Pairs (g, f) with g∘f, grouped by the largest index among g, f, g∘f.
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); src.morphisms()];
    for (g, f) in src.composable_pairs() {
        let gf = src.compose(g, f).expect("composable");
        checks[g.max(f).max(gf)].push((g, f, gf));
    }
    let mut out = Vec::new();
    let mut ob_map = vec![0; src.objects()];
    let mut mor_map = vec![0; src.morphisms()];
    let mut choice = vec![0; src.objects()];
    if ob_candidates.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        for x in 0..src.objects() {
            ob_map[x] = ob_candidates[x][choice[x]];
        }
        assign_morphisms(src, tgt, mor_ok, &checks, &ob_map, &mut mor_map, 0, &mut out);
        let mut k = src.objects();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < ob_candidates[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn assign_morphisms(
    src: &Arc<FiniteCategory>,
    tgt: &Arc<FiniteCategory>,
    mor_ok: &dyn Fn(usize, usize) -> bool,
    checks: &[Vec<(usize, usize, usize)>],
    ob_map: &[usize],
    mor_map: &mut Vec<usize>,
    f: usize,
    out: &mut Vec<CatFunctor>,
) {
    if f == src.morphisms() {
        out.push(CatFunctor::new_unchecked(src.clone(), tgt.clone(), ob_map.to_vec(), mor_map.clone()));
        return;
    }
    let (a, b) = (ob_map[src.dom(f)], ob_map[src.cod(f)]);
    let candidates: Vec<usize> = if src.is_identity(f) {
        vec![tgt.identity(a)]
    } else {
        tgt.hom(a, b).collect()
    };
    for m in candidates {
        if !mor_ok(f, m) {
            continue;
        }
        mor_map[f] = m;
        let consistent = checks[f]
            .iter()
            .all(|&(g, h, gh)| tgt.compose(mor_map[g], mor_map[h]) == Some(mor_map[gh]));
        if consistent {
            assign_morphisms(src, tgt, mor_ok, checks, ob_map, mor_map, f + 1, out);
        }
    }
}

/// Builds the category whose objects are `functors` and whose morphisms
/// are the natural transformations with every component passing `comp_ok`.
pub fn transformation_category(
    functors: Vec<CatFunctor>,
    comp_ok: &dyn Fn(usize, usize) -> bool,
    cap: usize,
) -> Result<FunctorCategory> {
    let (src, tgt) = match functors.first() {
        Some(f) => (f.source().clone(), f.target().clone()),
        None => {
            let category = Arc::new(FiniteCategory::discrete(0));
            return Ok(FunctorCategory {
                category,
                functors,
                transformations: Vec::new(),
                functor_lookup: BTreeMap::new(),
                transformation_lookup: BTreeMap::new(),
            });
        }
    };
    let mut transformations = Vec::new();
    for (s, fs) in functors.iter().enumerate() {
        for (t, ft) in functors.iter().enumerate() {
            let candidates: Vec<Vec<usize>> = (0..src.objects())
                .map(|x| tgt.hom(fs.ob(x), ft.ob(x)).filter(|&m| comp_ok(x, m)).collect())
                .collect();
            let mut components = vec![0; src.objects()];
            let mut found = Vec::new();
            natural_components(&src, &tgt, fs, ft, &candidates, &mut components, 0, &mut found);
            for components in found {
                if transformations.len() >= cap {
                    return Err(Error::Size { what: "natural transformations", limit: cap });
                }
                transformations.push(Transformation { source: s, target: t, components });
            }
        }
    }
    let transformation_lookup: BTreeMap<Transformation, usize> =
        transformations.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
    let dom = transformations.iter().map(|t| t.source).collect();
    let cod = transformations.iter().map(|t| t.target).collect();
    let identities = functors
        .iter()
        .enumerate()
        .map(|(s, f)| {
            let components = (0..src.objects()).map(|x| tgt.identity(f.ob(x))).collect();
            transformation_lookup
                .get(&Transformation { source: s, target: s, components })
                .copied()
                .ok_or_else(|| validation!("identity transformation of functor {s} is excluded"))
        })
        .collect::<Result<Vec<_>>>()?;
    let category = FiniteCategory::from_fn(functors.len(), dom, cod, identities, |later, first| {
        let (a, b) = (&transformations[later], &transformations[first]);
        let components =
            a.components.iter().zip(&b.components).map(|(&x, &y)| tgt.compose(x, y).expect("composable")).collect();
        transformation_lookup[&Transformation { source: b.source, target: a.target, components }]
    });
    category.audit()?;
    let functor_lookup =
        functors.iter().enumerate().map(|(k, f)| ((f.ob_map().to_vec(), f.mor_map().to_vec()), k)).collect();
    Ok(FunctorCategory { category: Arc::new(category), functors, transformations, functor_lookup, transformation_lookup })
}

#[allow(clippy::too_many_arguments)]
fn natural_components(
    src: &FiniteCategory,
    tgt: &FiniteCategory,
    fs: &CatFunctor,
    ft: &CatFunctor,
    candidates: &[Vec<usize>],
    components: &mut Vec<usize>,
    x: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if x == src.objects() {
        out.push(components.clone());
        return;
    }
    for &m in &candidates[x] {
        components[x] = m;
        let natural = (0..src.morphisms()).all(|f| {
            let (a, b) = (src.dom(f), src.cod(f));
            if a.max(b) != x {
                return true;
            }
            tgt.compose(components[b], fs.mor(f)) == tgt.compose(ft.mor(f), components[a])
        });
        if natural {
            natural_components(src, tgt, fs, ft, candidates, components, x + 1, out);
        }
    }
}

/// `B^A`.
pub fn functor_category(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>, cap: usize) -> Result<FunctorCategory> {
    let functors = enumerate_functors(a, b, &|_, _| true, &|_, _| true, cap)?;
    transformation_category(functors, &|_, _| true, cap)
}

/// Sections of `q: E → J`: functors `s` with `q ∘ s = id_J`, and natural
/// transformations whose components lie over identities.
pub fn sections(q: &CatFunctor, cap: usize) -> Result<FunctorCategory> {
    let (e, j) = (q.source(), q.target());
    let functors = enumerate_functors(j, e, &|x, y| q.ob(y) == x, &|f, m| q.mor(m) == f, cap)?;
    transformation_category(functors, &|x, m| q.mor(m) == j.identity(x), cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::grothendieck_set;
    use crate::fincat::{one_object_category, product_category};
    use crate::group::{FiniteGroup, Perm};

    fn c2_cat() -> Arc<FiniteCategory> {
        let g = FiniteGroup::from_permutations(&[Perm::from_cycles(&[vec![1, 2]], 2).unwrap()]).unwrap();
        Arc::new(one_object_category(&g))
    }

    #[test]
    fn agrees_with_set_construction_on_discrete_fibers() {
        let j = c2_cat();
        let swap = Perm::from_images(vec![1, 0, 2]).unwrap();
        let p = FinSetIsoDiagram::new(j, vec![3], vec![Perm::identity(3), swap]).unwrap();
        let cat = grothendieck_cat(&CatValuedDiagram::from_sets(&p)).unwrap();
        assert_eq!(cat.projection(), grothendieck_set(&p).functor());
    }

    #[test]
    fn constant_diagram_gives_product() {
        let j = Arc::new(FiniteCategory::arrow());
        let c = c2_cat();
        let g = grothendieck_cat(&CatValuedDiagram::constant(j.clone(), c.clone())).unwrap();
        let product = Arc::new(product_category(&c, &j));
        let ob_map = (0..g.total().objects())
            .map(|x| {
                let (b, i) = g.object(x);
                i * j.objects() + b
            })
            .collect();
        let mor_map = (0..g.total().morphisms())
            .map(|m| {
                let (f, _, h) = g.morphism(m);
                h * j.morphisms() + f
            })
            .collect();
        let iso = CatFunctor::new(g.total().clone(), product.clone(), ob_map, mor_map).unwrap();
        assert!(iso.is_isomorphism());
        let proj = CatFunctor::second_projection(product, j);
        assert_eq!(proj.compose(&iso).unwrap(), *g.projection());
    }

    #[test]
    fn terminal_fibers_give_base() {
        let j = Arc::new(FiniteCategory::arrow());
        let t = Arc::new(FiniteCategory::terminal());
        let g = grothendieck_cat(&CatValuedDiagram::constant(j.clone(), t)).unwrap();
        assert!(g.projection().is_isomorphism());
    }

    #[test]
    fn hand_enumerated_example() {
        // J = 0 → 1, P(0) = ∗, P(1) = C2.
        let j = Arc::new(FiniteCategory::arrow());
        let t = Arc::new(FiniteCategory::terminal());
        let c = c2_cat();
        let to_c2 = CatFunctor::new(t.clone(), c.clone(), vec![0], vec![0]).unwrap();
        let p = CatValuedDiagram::new(
            j,
            vec![t.clone(), c.clone()],
            vec![CatFunctor::identity(t), CatFunctor::identity(c), to_c2],
        )
        .unwrap();
        let g = grothendieck_cat(&p).unwrap();
        // id_0: 1, id_1 with h ∈ C2: 2, 0 → 1 with h ∈ C2: 2.
        assert_eq!((g.total().objects(), g.total().morphisms()), (2, 5));
    }

    #[test]
    fn functor_enumeration_counts() {
        // Functors C2 → C2: the two endomorphisms of C2.
        let c = c2_cat();
        assert_eq!(enumerate_functors(&c, &c, &|_, _| true, &|_, _| true, 10).unwrap().len(), 2);
        // Functors arrow → arrow: 3 (const 0, const 1, identity).
        let a = Arc::new(FiniteCategory::arrow());
        assert_eq!(enumerate_functors(&a, &a, &|_, _| true, &|_, _| true, 10).unwrap().len(), 3);
        assert!(matches!(
            enumerate_functors(&a, &a, &|_, _| true, &|_, _| true, 3),
            Err(Error::Size { .. })
        ));
    }

    #[test]
    fn functor_category_of_arrow() {
        // [2, 2] is the poset of monotone maps: 0 ≤ id ≤ 1, so 3 objects and 6 morphisms.
        let a = Arc::new(FiniteCategory::arrow());
        let fc = functor_category(&a, &a, 100).unwrap();
        assert_eq!((fc.category().objects(), fc.category().morphisms()), (3, 6));
    }

    #[test]
    fn sections_of_identity_is_a_point() {
        let a = Arc::new(FiniteCategory::arrow());
        let s = sections(&CatFunctor::identity(a), 10).unwrap();
        assert_eq!((s.category().objects(), s.category().morphisms()), (1, 1));
    }
}
