//! Diagrams `X: I → C` in a monoidal instance, natural transformations
//! between them, pullback, and indexed tensor products.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::covering::CoveringCategory;
use crate::error::{shape, validation, Result};
use crate::fincat::{same_category, CatFunctor, FiniteCategory};
use crate::group::Perm;
use crate::indexing::{IndexingFunctor, WreathIndexing};
use crate::monoidal::{ordered_tensor, MonoidalInstance};

/// A functor from a finite category into a monoidal instance.
pub struct Diagram<M: MonoidalInstance> {
    shape: Arc<FiniteCategory>,
    objects: Vec<M::Object>,
    morphisms: Vec<M::Morphism>,
}

impl<M: MonoidalInstance> Clone for Diagram<M> {
    fn clone(&self) -> Self {
        Diagram { shape: self.shape.clone(), objects: self.objects.clone(), morphisms: self.morphisms.clone() }
    }
}

impl<M: MonoidalInstance> fmt::Debug for Diagram<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Diagram").field("objects", &self.objects).field("morphisms", &self.morphisms).finish()
    }
}

impl<M: MonoidalInstance> PartialEq for Diagram<M> {
    fn eq(&self, other: &Self) -> bool {
        same_category(&self.shape, &other.shape) && self.objects == other.objects && self.morphisms == other.morphisms
    }
}

impl<M: MonoidalInstance> Eq for Diagram<M> {}

/// Where two diagrams on the same shape first disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Difference {
    Object(usize),
    Morphism(usize),
}

impl<M: MonoidalInstance> Diagram<M> {
    /// Builds a diagram and audits it exhaustively.
    pub fn new(
        inst: &M,
        shape: Arc<FiniteCategory>,
        objects: Vec<M::Object>,
        morphisms: Vec<M::Morphism>,
    ) -> Result<Self> {
        let d = Self::new_unchecked(shape, objects, morphisms)?;
        d.audit(inst)?;
        Ok(d)
    }

    /// Checks only that the assignment has the right lengths.
    pub fn new_unchecked(shape: Arc<FiniteCategory>, objects: Vec<M::Object>, morphisms: Vec<M::Morphism>) -> Result<Self> {
        if objects.len() != shape.objects() || morphisms.len() != shape.morphisms() {
            return Err(shape!(
                "diagram has {} objects and {} morphisms, shape has {} and {}",
                objects.len(),
                morphisms.len(),
                shape.objects(),
                shape.morphisms()
            ));
        }
        Ok(Diagram { shape, objects, morphisms })
    }

    /// The diagram constant at the unit object.
    pub fn constant_unit(inst: &M, shape: Arc<FiniteCategory>) -> Self {
        let u = inst.unit();
        let id = inst.identity(&u);
        Diagram { objects: alloc::vec![u; shape.objects()], morphisms: alloc::vec![id; shape.morphisms()], shape }
    }

    pub fn shape(&self) -> &Arc<FiniteCategory> {
        &self.shape
    }

    pub fn object(&self, x: usize) -> &M::Object {
        &self.objects[x]
    }

    pub fn morphism(&self, f: usize) -> &M::Morphism {
        &self.morphisms[f]
    }

    pub fn objects(&self) -> &[M::Object] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[M::Morphism] {
        &self.morphisms
    }

    /// Well-formed values, endpoints, identities and all composites.
    pub fn audit(&self, inst: &M) -> Result<()> {
        let s = &*self.shape;
        for x in &self.objects {
            inst.check_object(x)?;
        }
        for (f, m) in self.morphisms.iter().enumerate() {
            inst.check_morphism(m)?;
            if inst.dom(m) != self.objects[s.dom(f)] || inst.cod(m) != self.objects[s.cod(f)] {
                return Err(validation!("morphism {f} has the wrong endpoints"));
            }
        }
        for x in 0..s.objects() {
            if self.morphisms[s.identity(x)] != inst.identity(&self.objects[x]) {
                return Err(validation!("identity of object {x} is not preserved"));
            }
        }
        for (g, f) in s.composable_pairs() {
            let gf = s.compose(g, f).expect("composable");
            if inst.compose(&self.morphisms[g], &self.morphisms[f])? != self.morphisms[gf] {
                return Err(validation!("composite {g} ∘ {f} is not preserved"));
            }
        }
        Ok(())
    }

    pub fn first_difference(&self, other: &Self) -> Result<Option<Difference>> {
        if !same_category(&self.shape, &other.shape) {
            return Err(shape!("diagrams have different shapes"));
        }
        if let Some(x) = (0..self.objects.len()).find(|&x| self.objects[x] != other.objects[x]) {
            return Ok(Some(Difference::Object(x)));
        }
        Ok((0..self.morphisms.len()).find(|&f| self.morphisms[f] != other.morphisms[f]).map(Difference::Morphism))
    }

    /// Same values on a different but equal shape.
    pub fn with_shape(&self, shape: Arc<FiniteCategory>) -> Result<Self> {
        if !same_category(&self.shape, &shape) {
            return Err(shape!("diagram cannot be moved to a different shape"));
        }
        Ok(Diagram { shape, objects: self.objects.clone(), morphisms: self.morphisms.clone() })
    }
}

/// A natural transformation between two diagrams of the same shape.
pub struct DiagramMorphism<M: MonoidalInstance> {
    source: Diagram<M>,
    target: Diagram<M>,
    components: Vec<M::Morphism>,
}

impl<M: MonoidalInstance> Clone for DiagramMorphism<M> {
    fn clone(&self) -> Self {
        DiagramMorphism { source: self.source.clone(), target: self.target.clone(), components: self.components.clone() }
    }
}

impl<M: MonoidalInstance> fmt::Debug for DiagramMorphism<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiagramMorphism").field("components", &self.components).finish()
    }
}

impl<M: MonoidalInstance> PartialEq for DiagramMorphism<M> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.components == other.components
    }
}

impl<M: MonoidalInstance> Eq for DiagramMorphism<M> {}

impl<M: MonoidalInstance> DiagramMorphism<M> {
    pub fn new(inst: &M, source: Diagram<M>, target: Diagram<M>, components: Vec<M::Morphism>) -> Result<Self> {
        let m = Self::new_unchecked(source, target, components)?;
        if let Some(f) = m.naturality_violation(inst)? {
            return Err(validation!("naturality square at morphism {f} does not commute"));
        }
        Ok(m)
    }

    pub fn new_unchecked(source: Diagram<M>, target: Diagram<M>, components: Vec<M::Morphism>) -> Result<Self> {
        if !same_category(&source.shape, &target.shape) {
            return Err(shape!("source and target diagrams have different shapes"));
        }
        if components.len() != source.shape.objects() {
            return Err(shape!("{} components for {} objects", components.len(), source.shape.objects()));
        }
        Ok(DiagramMorphism { source, target, components })
    }

    pub fn identity(inst: &M, x: &Diagram<M>) -> Self {
        let components = x.objects.iter().map(|o| inst.identity(o)).collect();
        DiagramMorphism { source: x.clone(), target: x.clone(), components }
    }

    pub fn source(&self) -> &Diagram<M> {
        &self.source
    }

    pub fn target(&self) -> &Diagram<M> {
        &self.target
    }

    pub fn component(&self, x: usize) -> &M::Morphism {
        &self.components[x]
    }

    pub fn components(&self) -> &[M::Morphism] {
        &self.components
    }

    /// First shape morphism whose naturality square fails, after checking
    /// component endpoints.
    pub fn naturality_violation(&self, inst: &M) -> Result<Option<usize>> {
        let s = &*self.source.shape;
        for (x, c) in self.components.iter().enumerate() {
            inst.check_morphism(c)?;
            if inst.dom(c) != self.source.objects[x] || inst.cod(c) != self.target.objects[x] {
                return Err(validation!("component {x} has the wrong endpoints"));
            }
        }
        for f in 0..s.morphisms() {
            let lhs = inst.compose(&self.components[s.cod(f)], &self.source.morphisms[f])?;
            let rhs = inst.compose(&self.target.morphisms[f], &self.components[s.dom(f)])?;
            if lhs != rhs {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }

    /// `self ∘ other`.
    pub fn compose(&self, inst: &M, other: &Self) -> Result<Self> {
        if other.target != self.source {
            return Err(shape!("natural transformations are not composable"));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| inst.compose(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(DiagramMorphism { source: other.source.clone(), target: self.target.clone(), components })
    }
}

/// `F*X = X ∘ F`.
pub fn pullback<M: MonoidalInstance>(f: &CatFunctor, x: &Diagram<M>) -> Result<Diagram<M>> {
    if !same_category(f.target(), &x.shape) {
        return Err(shape!("functor target is not the diagram's shape"));
    }
    Ok(Diagram {
        shape: f.source().clone(),
        objects: f.ob_map().iter().map(|&y| x.objects[y].clone()).collect(),
        morphisms: f.mor_map().iter().map(|&g| x.morphisms[g].clone()).collect(),
    })
}

/// `F*θ`, with components `θ_{F a}`.
pub fn pullback_morphism<M: MonoidalInstance>(f: &CatFunctor, theta: &DiagramMorphism<M>) -> Result<DiagramMorphism<M>> {
    Ok(DiagramMorphism {
        source: pullback(f, &theta.source)?,
        target: pullback(f, &theta.target)?,
        components: f.ob_map().iter().map(|&y| theta.components[y].clone()).collect(),
    })
}

fn positions(order: &[usize], set: &[usize]) -> Result<Perm> {
    let images = set
        .iter()
        .map(|x| order.iter().position(|y| y == x).ok_or_else(|| validation!("{x} is missing from the target ordering")))
        .collect::<Result<Vec<_>>>()?;
    Perm::from_images(images).map_err(|_| validation!("ordering is not a bijection"))
}

/// Tensor of `X` over each fiber of a covering category, in ascending
/// object order; morphisms are tensors of lifts followed by the shuffle to
/// the codomain fiber's order.
pub fn indexed_tensor_covering<M: MonoidalInstance>(
    inst: &M,
    c: &CoveringCategory,
    x: &Diagram<M>,
) -> Result<Diagram<M>> {
    if !same_category(c.total(), &x.shape) {
        return Err(shape!("diagram is not defined on the covering's total category"));
    }
    let j = c.base();
    let objects = (0..j.objects())
        .map(|b| {
            let factors: Vec<M::Object> = c.fiber(b).iter().map(|&i| x.objects[i].clone()).collect();
            inst.tensor_all_objects(&factors)
        })
        .collect();
    let total = c.total();
    let morphisms = (0..j.morphisms())
        .map(|f| {
            let lifts = c.lifts(f);
            let factors: Vec<M::Morphism> = lifts.iter().map(|&l| x.morphisms[l].clone()).collect();
            let cods: Vec<usize> = lifts.iter().map(|&l| total.cod(l)).collect();
            let order = positions(c.fiber(j.cod(f)), &cods)?;
            ordered_tensor(inst, &factors, &order)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Diagram { shape: j.clone(), objects, morphisms })
}

/// `P^⊗(X)`, with every index set taken in its canonical order.
pub fn general_indexed_tensor<M: MonoidalInstance>(
    inst: &M,
    p: &IndexingFunctor,
    x: &Diagram<M>,
) -> Result<Diagram<M>> {
    let orders: Vec<Vec<usize>> = p.on_objects().to_vec();
    indexed_tensor_ordered(inst, p, x, &orders)
}

/// `P^⊗(X)` with `orders[j]` a chosen listing of `P_j`.
pub fn indexed_tensor_ordered<M: MonoidalInstance>(
    inst: &M,
    p: &IndexingFunctor,
    x: &Diagram<M>,
    orders: &[Vec<usize>],
) -> Result<Diagram<M>> {
    if !same_category(p.index(), &x.shape) {
        return Err(shape!("diagram is not defined on the indexing category"));
    }
    let (j, i) = (p.base(), p.index());
    if orders.len() != j.objects() {
        return Err(shape!("one ordering per object of J is required"));
    }
    for (b, o) in orders.iter().enumerate() {
        let mut sorted = o.clone();
        sorted.sort_unstable();
        if sorted != p.objects(b) {
            return Err(validation!("ordering for object {b} is not a listing of P_{b}"));
        }
    }
    let objects = orders
        .iter()
        .map(|o| {
            let factors: Vec<M::Object> = o.iter().map(|&a| x.objects[a].clone()).collect();
            inst.tensor_all_objects(&factors)
        })
        .collect();
    let morphisms = (0..j.morphisms())
        .map(|f| {
            let set = p.morphisms(f);
            let listed: Vec<usize> = orders[j.dom(f)]
                .iter()
                .map(|&a| set.iter().copied().find(|&h| i.dom(h) == a).expect("directed bijection"))
                .collect();
            let factors: Vec<M::Morphism> = listed.iter().map(|&h| x.morphisms[h].clone()).collect();
            let cods: Vec<usize> = listed.iter().map(|&h| i.cod(h)).collect();
            let order = positions(&orders[j.cod(f)], &cods)?;
            ordered_tensor(inst, &factors, &order)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Diagram { shape: j.clone(), objects, morphisms })
}

/// The symmetry isomorphism `⊗_{a ∈ from} X(a) → ⊗_{a ∈ to} X(a)` between
/// two listings of the same index set.
pub fn reordering_iso<M: MonoidalInstance>(
    inst: &M,
    x: &Diagram<M>,
    from: &[usize],
    to: &[usize],
) -> Result<M::Morphism> {
    let objects: Vec<M::Object> = from.iter().map(|&a| x.objects[a].clone()).collect();
    inst.permute(&objects, &positions(to, from)?)
}

/// `n^∧X` evaluated from its defining formula: `X(i)` tensored over
/// `i = 1..n` at the object, `⋀ X(σ_i, h_i)` followed by the shuffle `σ`
/// at `(σ; h_1, .., h_n)`.
pub fn n_smash<M: MonoidalInstance>(inst: &M, w: &WreathIndexing, x: &Diagram<M>) -> Result<Diagram<M>> {
    let slots = w.slots();
    if !same_category(slots.category(), &x.shape) {
        return Err(shape!("diagram is not defined on the slot groupoid"));
    }
    let n = slots.n();
    let h = slots.subgroup();
    let object = inst.tensor_all_objects(&x.objects[..n]);
    let wreath = w.wreath();
    let morphisms = (0..wreath.order())
        .map(|idx| {
            let e = wreath.element(idx);
            let rank = e.sigma.lex_rank();
            let factors: Vec<M::Morphism> = (0..n)
                .map(|i| x.morphisms[slots.morphism(rank, i, h.local_index(e.hs[i]).expect("in H"))].clone())
                .collect();
            ordered_tensor(inst, &factors, &e.sigma)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Diagram { shape: w.category().clone(), objects: alloc::vec![object], morphisms })
}

/// `P^⊗(θ)`: the component at `j` is the tensor of `θ` over `P_j`.
pub fn map_indexed_tensor<M: MonoidalInstance>(
    inst: &M,
    p: &IndexingFunctor,
    theta: &DiagramMorphism<M>,
) -> Result<DiagramMorphism<M>> {
    let source = general_indexed_tensor(inst, p, &theta.source)?;
    let target = general_indexed_tensor(inst, p, &theta.target)?;
    let components = p
        .on_objects()
        .iter()
        .map(|set| inst.tensor_all(&set.iter().map(|&a| theta.components[a].clone()).collect::<Vec<_>>()))
        .collect();
    Ok(DiagramMorphism { source, target, components })
}

/// `p_*^⊗(θ)` through the fibers of a covering category.
pub fn map_indexed_tensor_covering<M: MonoidalInstance>(
    inst: &M,
    c: &CoveringCategory,
    theta: &DiagramMorphism<M>,
) -> Result<DiagramMorphism<M>> {
    let source = indexed_tensor_covering(inst, c, &theta.source)?;
    let target = indexed_tensor_covering(inst, c, &theta.target)?;
    let components = (0..c.base().objects())
        .map(|b| inst.tensor_all(&c.fiber(b).iter().map(|&a| theta.components[a].clone()).collect::<Vec<_>>()))
        .collect();
    Ok(DiagramMorphism { source, target, components })
}

/// Describes a value for reports.
pub fn describe<T: fmt::Debug>(value: &T) -> String {
    alloc::format!("{value:?}")
}
