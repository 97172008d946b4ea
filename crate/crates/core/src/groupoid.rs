//! Translation groupoids and the transversal-induced functors
//! `ι: H → B_{G/H}G`, `κ: B_{G/H}G → H` and `β: B_{G/H}G → B_nΣn × H`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{shape, validation, Result};
use crate::fincat::{one_object_category, product_category, CatFunctor, FiniteCategory};
use crate::group::{FiniteGroup, Subgroup, Transversal};
use crate::wreath::alpha;

/// A finite left `G`-set on `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    size: usize,
    action: Vec<usize>,
}

impl GSet {
    /// `table[g][x] = g·x`; checked to be a group action.
    pub fn new(group: Arc<FiniteGroup>, table: &[Vec<usize>]) -> Result<Self> {
        if table.len() != group.order() {
            return Err(validation!("action table has {} rows for a group of order {}", table.len(), group.order()));
        }
        let size = table.first().map_or(0, Vec::len);
        let mut action = Vec::with_capacity(group.order() * size);
        for row in table {
            if row.len() != size || row.iter().any(|&y| y >= size) {
                return Err(validation!("action table rows must be maps of a {size}-element set"));
            }
            action.extend_from_slice(row);
        }
        let set = GSet { group, size, action };
        let g = &set.group;
        for x in 0..size {
            if set.act(g.identity(), x) != x {
                return Err(validation!("identity moves point {x}"));
            }
            for a in g.elements() {
                for b in g.elements() {
                    if set.act(g.mul(a, b), x) != set.act(a, set.act(b, x)) {
                        return Err(validation!("(ab)·x != a·(b·x) at a={a}, b={b}, x={x}"));
                    }
                }
            }
        }
        Ok(set)
    }

    /// `G` acting on `G/H`, with point `i` the coset `t_i H`.
    pub fn cosets(t: &Transversal) -> Self {
        let group = t.group().clone();
        let n = t.n();
        let mut action = Vec::with_capacity(group.order() * n);
        for g in group.elements() {
            for i in 0..n {
                action.push(t.solve(g, i).0);
            }
        }
        GSet { group, size: n, action }
    }

    /// A permutation group acting on its points.
    pub fn natural(group: Arc<FiniteGroup>) -> Result<Self> {
        let degree = group.perm(0).ok_or_else(|| validation!("group is not given by permutations"))?.degree();
        let mut action = Vec::with_capacity(group.order() * degree);
        for g in group.elements() {
            action.extend_from_slice(group.perm(g).expect("permutation group").images());
        }
        Ok(GSet { group, size: degree, action })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.action.chunks(self.size.max(1)).map(<[usize]>::to_vec).take(self.group.order()).collect()
    }
}

/// `B_X G`: objects are the points of `X`, morphisms the pairs
/// `(g, x): x → g·x`, stored at index `x·|G| + g`.
#[derive(Clone, Debug)]
pub struct TranslationGroupoid {
    gset: GSet,
    category: Arc<FiniteCategory>,
}

impl TranslationGroupoid {
    pub fn new(gset: GSet) -> Self {
        let order = gset.group().order();
        let size = gset.size();
        let mut dom = Vec::with_capacity(order * size);
        let mut cod = Vec::with_capacity(order * size);
        for x in 0..size {
            for g in 0..order {
                dom.push(x);
                cod.push(gset.act(g, x));
            }
        }
        let e = gset.group().identity();
        let identities = (0..size).map(|x| x * order + e).collect();
        let group = gset.group().clone();
        // (γ, g·x) ∘ (g, x) = (γg, x)
        let category = FiniteCategory::from_fn(size, dom, cod, identities, |later, first| {
            let (x, g) = (first / order, first % order);
            x * order + group.mul(later % order, g)
        });
        TranslationGroupoid { gset, category: Arc::new(category) }
    }

    pub fn gset(&self) -> &GSet {
        &self.gset
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.gset.group()
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    #[inline]
    pub fn morphism(&self, g: usize, x: usize) -> usize {
        x * self.group().order() + g
    }

    /// `(g, x)` for a morphism index.
    #[inline]
    pub fn decode(&self, f: usize) -> (usize, usize) {
        let order = self.group().order();
        (f % order, f / order)
    }

    /// Projection `B_X G → G` forgetting the point.
    pub fn projection(&self, group_category: Arc<FiniteCategory>) -> Result<CatFunctor> {
        if group_category.objects() != 1 || group_category.morphisms() != self.group().order() {
            return Err(shape!("target is not the one-object category of the acting group"));
        }
        let ob_map = alloc::vec![0; self.gset.size()];
        let mor_map = (0..self.category.morphisms()).map(|f| self.decode(f).0).collect();
        Ok(CatFunctor::new_unchecked(self.category.clone(), group_category, ob_map, mor_map))
    }
}

pub fn translation_groupoid(group: Arc<FiniteGroup>, action: &[Vec<usize>]) -> Result<TranslationGroupoid> {
    Ok(TranslationGroupoid::new(GSet::new(group, action)?))
}

/// The one-object category of a subgroup, numbered by local index.
pub fn subgroup_category(h: &Subgroup) -> Arc<FiniteCategory> {
    Arc::new(one_object_category(&h.to_group()))
}

/// `B_nΣn × H` together with its projection to `H`.
///
/// The morphism `(σ_i, h)`, i.e. `σ: i → σ(i)` paired with `h ∈ H`, has index
/// `(i·n! + rank σ)·|H| + local(h)`; object `i` has index `i`.
#[derive(Clone, Debug)]
pub struct SlotGroupoid {
    n: usize,
    subgroup: Subgroup,
    symmetric: TranslationGroupoid,
    h_category: Arc<FiniteCategory>,
    product: Arc<FiniteCategory>,
    projection: CatFunctor,
}

impl SlotGroupoid {
    pub fn new(n: usize, h: &Subgroup) -> Self {
        let sym = Arc::new(FiniteGroup::symmetric(n));
        let symmetric = TranslationGroupoid::new(GSet::natural(sym).expect("symmetric group"));
        let h_category = subgroup_category(h);
        let product = Arc::new(product_category(symmetric.category(), &h_category));
        let projection = CatFunctor::second_projection(product.clone(), h_category.clone());
        SlotGroupoid { n, subgroup: h.clone(), symmetric, h_category, product, projection }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// `B_nΣn`.
    pub fn symmetric(&self) -> &TranslationGroupoid {
        &self.symmetric
    }

    pub fn h_category(&self) -> &Arc<FiniteCategory> {
        &self.h_category
    }

    /// `B_nΣn × H`.
    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.product
    }

    /// `B_nΣn × H → H`.
    pub fn projection(&self) -> &CatFunctor {
        &self.projection
    }

    /// Index of `(σ_i, h)` with `σ` given by lexicographic rank and `h` by
    /// local index.
    #[inline]
    pub fn morphism(&self, sigma_rank: usize, i: usize, h_local: usize) -> usize {
        self.symmetric.morphism(sigma_rank, i) * self.subgroup.order() + h_local
    }

    /// `(σ rank, i, local h)` of a morphism index.
    pub fn decode(&self, f: usize) -> (usize, usize, usize) {
        let k = self.subgroup.order();
        let (sigma, i) = self.symmetric.decode(f / k);
        (sigma, i, f % k)
    }
}

/// `ι: H → B_{G/H}G`, sending `∗_H` to the coset `eH` (object 0).
pub fn inclusion_iota(h: &Subgroup, bg: &TranslationGroupoid) -> Result<CatFunctor> {
    let g = bg.group();
    if !Arc::ptr_eq(g, h.parent()) && **g != **h.parent() {
        return Err(shape!("subgroup and groupoid use different groups"));
    }
    let stabilizer: Vec<usize> = g.elements().filter(|&x| bg.gset().act(x, 0) == 0).collect();
    if stabilizer != h.elements() {
        return Err(validation!("object 0 of the groupoid is not the coset eH"));
    }
    let mor_map = h.elements().iter().map(|&x| bg.morphism(x, 0)).collect();
    CatFunctor::new(subgroup_category(h), bg.category().clone(), alloc::vec![0], mor_map)
}

fn require_coset_groupoid(t: &Transversal, bg: &TranslationGroupoid) -> Result<()> {
    if *bg.gset() != GSet::cosets(t) {
        return Err(shape!("groupoid is not B_(G/H)G ordered by this transversal"));
    }
    Ok(())
}

/// `κ: B_{G/H}G → H`, sending `(g, t_iH)` to `h_i(g)`.
pub fn kappa(t: &Transversal, bg: &TranslationGroupoid) -> Result<CatFunctor> {
    require_coset_groupoid(t, bg)?;
    let h = t.subgroup();
    let mor_map = (0..bg.category().morphisms())
        .map(|f| {
            let (g, i) = bg.decode(f);
            h.local_index(t.solve(g, i).1).expect("h_i(g) lies in H")
        })
        .collect();
    Ok(CatFunctor::new_unchecked(bg.category().clone(), subgroup_category(h), alloc::vec![0; t.n()], mor_map))
}

/// `β: B_{G/H}G → B_nΣn × H`, with `β(t_iH) = i` and
/// `β(g, t_iH) = ((σ_g)_i, h_i(g))`.
pub fn beta(t: &Transversal, bg: &TranslationGroupoid, slots: &SlotGroupoid) -> Result<CatFunctor> {
    require_coset_groupoid(t, bg)?;
    if slots.n() != t.n() || slots.subgroup() != t.subgroup() {
        return Err(shape!("slot groupoid does not match the transversal"));
    }
    let h = t.subgroup();
    let mor_map = (0..bg.category().morphisms())
        .map(|f| {
            let (g, i) = bg.decode(f);
            let a = alpha(g, t);
            slots.morphism(a.sigma.lex_rank(), i, h.local_index(a.hs[i]).expect("in H"))
        })
        .collect();
    let ob_map = (0..t.n()).collect();
    Ok(CatFunctor::new_unchecked(bg.category().clone(), slots.category().clone(), ob_map, mor_map))
}

/// Whether `proj ∘ β = κ` strictly.
pub fn check_triangle(kappa: &CatFunctor, beta: &CatFunctor, proj: &CatFunctor) -> Result<bool> {
    let composite = proj.compose(beta)?;
    Ok(composite.first_difference(kappa)?.is_none())
}
