//! Seeded generation of random diagrams, natural transformations and
//! `FinSet_iso`-valued functors.
//!
//! Objects are drawn uniformly from a caller-supplied list, once per
//! isomorphism class of the shape. Morphism values are then assigned in
//! index order from uniformly shuffled hom sets (isomorphisms only for
//! invertible shape morphisms), backtracking on composition failures; the
//! first consistent assignment is returned.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::covering::FinSetIsoDiagram;
use crate::diagram::{Diagram, DiagramMorphism};
use crate::fincat::{one_object_category, FiniteCategory};
use crate::group::{FiniteGroup, Perm};
use crate::groupoid::{GSet, TranslationGroupoid};
use crate::monoidal::MonoidalInstance;

/// Search nodes allowed per attempt before reshuffling.
const NODE_BUDGET: usize = 200_000;
const ATTEMPTS: usize = 8;

/// Objects joined by an invertible morphism get the same label.
fn iso_classes(shape: &FiniteCategory) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..shape.objects()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for f in 0..shape.morphisms() {
        if shape.inverse(f).is_some() {
            let (a, b) = (find(&mut parent, shape.dom(f)), find(&mut parent, shape.cod(f)));
            parent[a.max(b)] = a.min(b);
        }
    }
    (0..shape.objects()).map(|x| find(&mut parent, x)).collect()
}

/// Composable triples `(g, f, g∘f)` grouped by the latest position among
/// the three in `order`.
fn checks_by_position(shape: &FiniteCategory, order: &[usize]) -> Vec<Vec<(usize, usize, usize)>> {
    let mut pos = vec![0; shape.morphisms()];
    for (k, &f) in order.iter().enumerate() {
        pos[f] = k;
    }
    let mut out = vec![Vec::new(); order.len()];
    for (g, f) in shape.composable_pairs() {
        let gf = shape.compose(g, f).expect("composable");
        out[pos[g].max(pos[f]).max(pos[gf])].push((g, f, gf));
    }
    out
}

struct Search<'a, T> {
    order: &'a [usize],
    candidates: &'a [Vec<T>],
    checks: &'a [Vec<(usize, usize, usize)>],
    compose: &'a dyn Fn(&T, &T) -> Option<T>,
    nodes: usize,
}

impl<T: Clone + PartialEq> Search<'_, T> {
    fn run(&mut self, k: usize, values: &mut Vec<Option<T>>) -> Option<bool> {
        if k == self.order.len() {
            return Some(true);
        }
        let f = self.order[k];
        for c in &self.candidates[f] {
            self.nodes += 1;
            if self.nodes > NODE_BUDGET {
                return None;
            }
            values[f] = Some(c.clone());
            let ok = self.checks[k].iter().all(|&(g, h, gh)| {
                let (a, b, ab) = (values[g].as_ref(), values[h].as_ref(), values[gh].as_ref());
                (self.compose)(a.expect("assigned"), b.expect("assigned")).as_ref() == ab
            });
            if ok && self.run(k + 1, values)? {
                return Some(true);
            }
        }
        values[f] = None;
        Some(false)
    }
}

/// A functor's morphism values: identities first, then the rest in
/// index order, each from its (already shuffled) candidate list.
fn search_values<T: Clone + PartialEq>(
    shape: &FiniteCategory,
    candidates: &[Vec<T>],
    compose: &dyn Fn(&T, &T) -> Option<T>,
) -> Option<Vec<T>> {
    let mut order: Vec<usize> = shape.identities().to_vec();
    order.extend((0..shape.morphisms()).filter(|&f| !shape.is_identity(f)));
    let checks = checks_by_position(shape, &order);
    let mut search = Search { order: &order, candidates, checks: &checks, compose, nodes: 0 };
    let mut values = vec![None; shape.morphisms()];
    match search.run(0, &mut values) {
        Some(true) => Some(values.into_iter().map(|v| v.expect("assigned")).collect()),
        _ => None,
    }
}

/// A random diagram with object values drawn from `objects`.
pub fn random_diagram<M: MonoidalInstance, R: Rng + ?Sized>(
    inst: &M,
    shape: &Arc<FiniteCategory>,
    objects: &[M::Object],
    rng: &mut R,
) -> Diagram<M> {
    let classes = iso_classes(shape);
    for _ in 0..ATTEMPTS {
        let picks: Vec<M::Object> = (0..shape.objects()).map(|_| objects.choose(rng).expect("objects").clone()).collect();
        let obs: Vec<M::Object> = (0..shape.objects()).map(|x| picks[classes[x]].clone()).collect();
        let candidates: Vec<Vec<M::Morphism>> = (0..shape.morphisms())
            .map(|f| {
                let (a, b) = (&obs[shape.dom(f)], &obs[shape.cod(f)]);
                if shape.is_identity(f) {
                    return vec![inst.identity(a)];
                }
                let mut c = inst.hom_set(a, b);
                if shape.inverse(f).is_some() {
                    c.retain(|m| inst.is_iso(m));
                }
                c.shuffle(rng);
                c
            })
            .collect();
        let compose = |g: &M::Morphism, f: &M::Morphism| inst.compose(g, f).ok();
        if let Some(morphisms) = search_values(shape, &candidates, &compose) {
            return Diagram::new_unchecked(shape.clone(), obs, morphisms).expect("shape");
        }
    }
    // Constant on each component with identity values.
    let comps = shape.components();
    let picks: Vec<M::Object> = (0..shape.objects()).map(|_| objects.choose(rng).expect("objects").clone()).collect();
    let obs: Vec<M::Object> = (0..shape.objects()).map(|x| picks[comps[x]].clone()).collect();
    let morphisms = (0..shape.morphisms()).map(|f| inst.identity(&obs[shape.dom(f)])).collect();
    Diagram::new_unchecked(shape.clone(), obs, morphisms).expect("shape")
}

fn inverse_of<M: MonoidalInstance>(inst: &M, f: &M::Morphism) -> M::Morphism {
    let (a, b) = (inst.dom(f), inst.cod(f));
    let id = inst.identity(&a);
    inst.hom_set(&b, &a)
        .into_iter()
        .find(|g| inst.compose(g, f).ok().as_ref() == Some(&id))
        .expect("isomorphism has an inverse")
}

/// A random natural transformation out of `x`: a random natural
/// endomorphism of `x` followed by a random family of isomorphisms, whose
/// conjugate of `x` is the target.
pub fn random_diagram_morphism<M: MonoidalInstance, R: Rng + ?Sized>(
    inst: &M,
    x: &Diagram<M>,
    rng: &mut R,
) -> DiagramMorphism<M> {
    let shape = x.shape().clone();
    let mut candidates: Vec<Vec<M::Morphism>> =
        x.objects().iter().map(|o| inst.hom_set(o, o)).collect();
    for c in &mut candidates {
        c.shuffle(rng);
    }
    let mut endo: Vec<Option<M::Morphism>> = vec![None; shape.objects()];
    if !natural_endo(inst, x, &candidates, 0, &mut endo, &mut 0) {
        endo = x.objects().iter().map(|o| Some(inst.identity(o))).collect();
    }
    let phi: Vec<M::Morphism> = x
        .objects()
        .iter()
        .map(|o| {
            let isos: Vec<M::Morphism> = inst.hom_set(o, o).into_iter().filter(|m| inst.is_iso(m)).collect();
            isos.choose(rng).expect("identity is an isomorphism").clone()
        })
        .collect();
    let morphisms = (0..shape.morphisms())
        .map(|f| {
            let inv = inverse_of(inst, &phi[shape.dom(f)]);
            let through = inst.compose(x.morphism(f), &inv).expect("composable");
            inst.compose(&phi[shape.cod(f)], &through).expect("composable")
        })
        .collect();
    let y = Diagram::new_unchecked(shape, x.objects().to_vec(), morphisms).expect("shape");
    let components = endo
        .into_iter()
        .zip(&phi)
        .map(|(e, p)| inst.compose(p, &e.expect("assigned")).expect("composable"))
        .collect();
    DiagramMorphism::new_unchecked(x.clone(), y, components).expect("shape")
}

fn natural_endo<M: MonoidalInstance>(
    inst: &M,
    x: &Diagram<M>,
    candidates: &[Vec<M::Morphism>],
    k: usize,
    chosen: &mut Vec<Option<M::Morphism>>,
    nodes: &mut usize,
) -> bool {
    let shape = x.shape();
    if k == shape.objects() {
        return true;
    }
    for c in &candidates[k] {
        *nodes += 1;
        if *nodes > NODE_BUDGET {
            return false;
        }
        chosen[k] = Some(c.clone());
        let natural = (0..shape.morphisms()).all(|f| {
            let (a, b) = (shape.dom(f), shape.cod(f));
            if a.max(b) != k {
                return true;
            }
            let (ca, cb) = (chosen[a].as_ref().expect("assigned"), chosen[b].as_ref().expect("assigned"));
            inst.compose(cb, x.morphism(f)).ok() == inst.compose(x.morphism(f), ca).ok()
        });
        if natural && natural_endo(inst, x, candidates, k + 1, chosen, nodes) {
            return true;
        }
    }
    chosen[k] = None;
    false
}

/// A random functor `shape → FinSet_iso` with set sizes drawn from
/// `1..=max_size`, one per connected component.
pub fn random_finset_diagram<R: Rng + ?Sized>(shape: &Arc<FiniteCategory>, max_size: usize, rng: &mut R) -> FinSetIsoDiagram {
    let comps = shape.components();
    for _ in 0..ATTEMPTS {
        let picks: Vec<usize> = (0..shape.objects()).map(|_| rng.gen_range(1..=max_size)).collect();
        let sizes: Vec<usize> = (0..shape.objects()).map(|x| picks[comps[x]]).collect();
        let candidates: Vec<Vec<Perm>> = (0..shape.morphisms())
            .map(|f| {
                let k = sizes[shape.dom(f)];
                if shape.is_identity(f) {
                    return vec![Perm::identity(k)];
                }
                let sym = FiniteGroup::symmetric(k);
                let mut c: Vec<Perm> = sym.elements().map(|p| sym.perm(p).expect("permutation").clone()).collect();
                c.shuffle(rng);
                c
            })
            .collect();
        let compose = |g: &Perm, f: &Perm| Some(g.compose(f));
        if let Some(maps) = search_values(shape, &candidates, &compose) {
            return FinSetIsoDiagram::new(shape.clone(), sizes, maps).expect("search enforces functoriality");
        }
    }
    FinSetIsoDiagram::constant(shape.clone(), 1)
}

/// `0 → 1 → 2`.
pub fn chain3() -> FiniteCategory {
    // morphisms: id0, id1, id2, a: 0 → 1, b: 1 → 2, ba: 0 → 2
    let dom = vec![0, 1, 2, 0, 1, 0];
    let cod = vec![0, 1, 2, 1, 2, 2];
    FiniteCategory::from_fn(3, dom, cod, vec![0, 1, 2], |g, f| match (g, f) {
        (g, f) if g < 3 => f,
        (g, f) if f < 3 => g,
        (4, 3) => 5,
        _ => usize::MAX,
    })
}

fn cyclic(k: usize) -> FiniteGroup {
    let cycle: Vec<usize> = (1..=k).collect();
    FiniteGroup::from_permutations(&[Perm::from_cycles(&[cycle], k).expect("cycle")]).expect("cyclic group")
}

/// Small connected shapes with at most 3 objects and 9 morphisms.
pub fn small_shapes() -> Vec<(&'static str, Arc<FiniteCategory>)> {
    let c3 = Arc::new(cyclic(3));
    vec![
        ("terminal", Arc::new(FiniteCategory::terminal())),
        ("arrow", Arc::new(FiniteCategory::arrow())),
        ("chain3", Arc::new(chain3())),
        ("C2", Arc::new(one_object_category(&cyclic(2)))),
        ("C3", Arc::new(one_object_category(&c3))),
        ("S3", Arc::new(one_object_category(&FiniteGroup::symmetric(3)))),
        ("B2S2", TranslationGroupoid::new(GSet::natural(Arc::new(FiniteGroup::symmetric(2))).expect("S2")).category().clone()),
        ("BC3", TranslationGroupoid::new(GSet::natural(c3).expect("C3")).category().clone()),
    ]
}
