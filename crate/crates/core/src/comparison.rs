//! Sections of the Grothendieck construction of `j ↦ C^{Pj}` compared with
//! `C^I` and with the indexed tensor product.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::covering::{grothendieck_set, FinSetIsoDiagram};
use crate::diagram::{indexed_tensor_covering, Diagram};
use crate::error::{validation, Error, Result};
use crate::fincat::{CatFunctor, FiniteCategory};
use crate::grothendieck::{
    functor_category, grothendieck_cat, sections, CatValuedDiagram, FunctorCategory, GrothendieckCat, Transformation,
};
use crate::monoidal::MonoidalInstance;

/// The full subcategory of an instance on a list of objects, with every
/// hom set enumerated. Morphisms are numbered by (domain, codomain) pair,
/// then in the instance's hom-set order.
pub struct InstanceCategory<M: MonoidalInstance> {
    category: Arc<FiniteCategory>,
    objects: Vec<M::Object>,
    morphisms: Vec<M::Morphism>,
}

impl<M: MonoidalInstance> InstanceCategory<M> {
    pub fn new(inst: &M, objects: Vec<M::Object>, cap: usize) -> Result<Self> {
        let k = objects.len();
        let mut morphisms = Vec::new();
        let mut dom = Vec::new();
        let mut cod = Vec::new();
        for a in 0..k {
            for b in 0..k {
                let size = inst.hom_size(&objects[a], &objects[b]).unwrap_or(usize::MAX);
                if morphisms.len().saturating_add(size) > cap {
                    return Err(Error::Size { what: "instance subcategory morphisms", limit: cap });
                }
                for m in inst.hom_set(&objects[a], &objects[b]) {
                    morphisms.push(m);
                    dom.push(a);
                    cod.push(b);
                }
            }
        }
        let index_of = |m: &M::Morphism, a: usize, b: usize| -> usize {
            (0..morphisms.len()).find(|&x| dom[x] == a && cod[x] == b && morphisms[x] == *m).expect("closed under composition")
        };
        let identities = (0..k).map(|a| index_of(&inst.identity(&objects[a]), a, a)).collect();
        let mut table = Vec::with_capacity(morphisms.len());
        for g in 0..morphisms.len() {
            let mut row = Vec::with_capacity(morphisms.len());
            for f in 0..morphisms.len() {
                row.push((cod[f] == dom[g]).then(|| {
                    let gf = inst.compose(&morphisms[g], &morphisms[f]).expect("composable");
                    index_of(&gf, dom[f], cod[g])
                }));
            }
            table.push(row);
        }
        let category = FiniteCategory::new(k, dom, cod, identities, &table)?;
        Ok(InstanceCategory { category: Arc::new(category), objects, morphisms })
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    pub fn object(&self, x: usize) -> &M::Object {
        &self.objects[x]
    }

    pub fn morphism(&self, f: usize) -> &M::Morphism {
        &self.morphisms[f]
    }

    /// The instance diagram named by a functor into this category.
    pub fn diagram(&self, f: &CatFunctor) -> Result<Diagram<M>> {
        Diagram::new_unchecked(
            f.source().clone(),
            f.ob_map().iter().map(|&x| self.objects[x].clone()).collect(),
            f.mor_map().iter().map(|&m| self.morphisms[m].clone()).collect(),
        )
    }
}

/// Outcome of comparing sections with functor categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionsReport {
    pub section_objects: usize,
    pub section_morphisms: usize,
    pub functor_objects: usize,
    pub functor_morphisms: usize,
    /// `|hom(s, s')| = |hom(Φs, Φs')|` for all pairs of sections.
    pub hom_sizes_match: bool,
    /// `Φ: Γ(C_P → J) → C^I` is an isomorphism of categories.
    pub comparison_is_isomorphism: bool,
    /// Tensoring a section fiberwise gives `p_*^⊗` of its image under `Φ`.
    pub matches_pushforward: bool,
    /// `Γ(C × J → J) ≅ C^J`.
    pub constant_case_is_isomorphism: bool,
}

impl SectionsReport {
    pub fn passed(&self) -> bool {
        self.section_objects == self.functor_objects
            && self.hom_sizes_match
            && self.comparison_is_isomorphism
            && self.matches_pushforward
            && self.constant_case_is_isomorphism
    }
}

/// `j ↦ C^{Pj}`, with `Pf` acting by reindexing along `(Pf)⁻¹`.
struct PowerDiagram {
    diagram: CatValuedDiagram,
    powers: Vec<FunctorCategory>,
}

fn power_diagram(c: &Arc<FiniteCategory>, p: &FinSetIsoDiagram, cap: usize) -> Result<PowerDiagram> {
    let j = p.shape();
    let powers = (0..j.objects())
        .map(|x| functor_category(&Arc::new(FiniteCategory::discrete(p.size(x))), c, cap))
        .collect::<Result<Vec<_>>>()?;
    let functors = (0..j.morphisms())
        .map(|f| {
            let (a, b) = (&powers[j.dom(f)], &powers[j.cod(f)]);
            let inv = p.map(f).inverse();
            let reindex = |xs: &[usize]| -> Vec<usize> { (0..xs.len()).map(|k| xs[inv.apply(k)]).collect() };
            let ob_map = a
                .functors()
                .iter()
                .map(|x| discrete_functor_index(c, b, &reindex(x.ob_map())))
                .collect();
            let mor_map = (0..a.category().morphisms())
                .map(|m| {
                    let t = a.transformation(m);
                    let moved = Transformation {
                        source: discrete_functor_index(c, b, &reindex(a.functor(t.source).ob_map())),
                        target: discrete_functor_index(c, b, &reindex(a.functor(t.target).ob_map())),
                        components: reindex(&t.components),
                    };
                    b.transformation_index(&moved).expect("reindexed transformation")
                })
                .collect();
            Ok(CatFunctor::new_unchecked(a.category().clone(), b.category().clone(), ob_map, mor_map))
        })
        .collect::<Result<Vec<_>>>()?;
    let categories = powers.iter().map(|x| x.category().clone()).collect();
    let diagram = CatValuedDiagram::new(j.clone(), categories, functors)?;
    Ok(PowerDiagram { diagram, powers })
}

/// Index in `C^k` of the functor from the discrete category with the given
/// object images.
fn discrete_functor_index(c: &FiniteCategory, power: &FunctorCategory, images: &[usize]) -> usize {
    let ids: Vec<usize> = images.iter().map(|&y| c.identity(y)).collect();
    power.functor_index(images, &ids).expect("reindexed functor")
}

fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut total = 0;
    sizes
        .map(|s| {
            let o = total;
            total += s;
            o
        })
        .collect()
}

/// Builds `Φ: Γ(C_P → J) → C^I` and checks the claims about it.
///
/// `C` is the full subcategory of `inst` on `objects`, which must be closed
/// under the tensor product; `I → J` is the covering category of `p`.
pub fn verify_sections_claim<M: MonoidalInstance>(
    inst: &M,
    objects: Vec<M::Object>,
    p: &FinSetIsoDiagram,
    cap: usize,
) -> Result<SectionsReport> {
    let c = InstanceCategory::new(inst, objects, cap)?;
    let cov = grothendieck_set(p);
    let (i, j) = (cov.total().clone(), p.shape().clone());

    let power = power_diagram(c.category(), p, cap)?;
    let cp: GrothendieckCat = grothendieck_cat(&power.diagram)?;
    let gamma = sections(cp.projection(), cap)?;
    let ci = functor_category(&i, c.category(), cap)?;

    let ob_offset = offsets((0..j.objects()).map(|x| p.size(x)));
    let mor_offset = offsets((0..j.morphisms()).map(|f| p.size(j.dom(f))));
    // For a section: the functor Pj → C chosen at each j.
    let chosen = |s: &CatFunctor, x: usize| -> &CatFunctor {
        let (_, k) = cp.object(s.ob(x));
        power.powers[x].functor(k)
    };
    let phi_object = |s: &CatFunctor| -> Result<usize> {
        let mut ob_map = alloc::vec![0; i.objects()];
        for x in 0..j.objects() {
            for a in 0..p.size(x) {
                ob_map[ob_offset[x] + a] = chosen(s, x).ob(a);
            }
        }
        let mut mor_map = alloc::vec![0; i.morphisms()];
        for f in 0..j.morphisms() {
            let (_, _, h) = cp.morphism(s.mor(f));
            let t = power.powers[j.cod(f)].transformation(h);
            for a in 0..p.size(j.dom(f)) {
                mor_map[mor_offset[f] + a] = t.components[p.map(f).apply(a)];
            }
        }
        ci.functor_index(&ob_map, &mor_map).ok_or_else(|| validation!("section does not give a functor I → C"))
    };
    let phi_ob = gamma.functors().iter().map(phi_object).collect::<Result<Vec<_>>>()?;
    let phi_mor = (0..gamma.category().morphisms())
        .map(|m| {
            let t = gamma.transformation(m);
            let mut components = alloc::vec![0; i.objects()];
            for x in 0..j.objects() {
                let (_, _, h) = cp.morphism(t.components[x]);
                let inner = power.powers[x].transformation(h);
                for a in 0..p.size(x) {
                    components[ob_offset[x] + a] = inner.components[a];
                }
            }
            ci.transformation_index(&Transformation { source: phi_ob[t.source], target: phi_ob[t.target], components })
                .ok_or_else(|| validation!("transformation of sections is not natural on I"))
        })
        .collect::<Result<Vec<_>>>()?;
    let phi = CatFunctor::new_unchecked(gamma.category().clone(), ci.category().clone(), phi_ob.clone(), phi_mor);
    let comparison_is_isomorphism = phi.audit().is_ok() && phi.is_isomorphism();

    let n_sections = gamma.functors().len();
    let hom_sizes_match = (0..n_sections).all(|s| {
        (0..n_sections).all(|t| gamma.hom_size(s, t) == ci.hom_size(phi_ob[s], phi_ob[t]))
    });

    let mut matches_pushforward = true;
    for (k, s) in gamma.functors().iter().enumerate() {
        let x = c.diagram(ci.functor(phi_ob[k]))?.with_shape(i.clone())?;
        let pushed = indexed_tensor_covering(inst, &cov, &x)?;
        let via_sections = tensor_section(inst, &c, &power, &cp, p, s)?;
        if pushed != via_sections {
            matches_pushforward = false;
        }
    }

    let constant = grothendieck_cat(&CatValuedDiagram::constant(j.clone(), c.category().clone()))?;
    let gamma_const = sections(constant.projection(), cap)?;
    let cj = functor_category(&j, c.category(), cap)?;
    let constant_case_is_isomorphism = constant_comparison(&constant, &gamma_const, &cj)?;

    Ok(SectionsReport {
        section_objects: n_sections,
        section_morphisms: gamma.category().morphisms(),
        functor_objects: ci.functors().len(),
        functor_morphisms: ci.category().morphisms(),
        hom_sizes_match,
        comparison_is_isomorphism,
        matches_pushforward,
        constant_case_is_isomorphism,
    })
}

/// The image of a section under `⊗: C_P → C × J`: at `j` the tensor of the
/// chosen objects, at `f: j → j'` the shuffle along `Pf` followed by the
/// tensor of the components `(Pf)_*X_j → X_j'`.
fn tensor_section<M: MonoidalInstance>(
    inst: &M,
    c: &InstanceCategory<M>,
    power: &PowerDiagram,
    cp: &GrothendieckCat,
    p: &FinSetIsoDiagram,
    s: &CatFunctor,
) -> Result<Diagram<M>> {
    let j = p.shape();
    let listed = |x: usize| -> Vec<M::Object> {
        let (_, k) = cp.object(s.ob(x));
        let f = power.powers[x].functor(k);
        (0..p.size(x)).map(|a| c.object(f.ob(a)).clone()).collect()
    };
    let objects = (0..j.objects()).map(|x| inst.tensor_all_objects(&listed(x))).collect();
    let morphisms = (0..j.morphisms())
        .map(|f| {
            let (_, _, h) = cp.morphism(s.mor(f));
            let t = power.powers[j.cod(f)].transformation(h);
            let factors: Vec<M::Morphism> = t.components.iter().map(|&m| c.morphism(m).clone()).collect();
            let shuffle = inst.permute(&listed(j.dom(f)), p.map(f))?;
            inst.compose(&inst.tensor_all(&factors), &shuffle)
        })
        .collect::<Result<Vec<_>>>()?;
    Diagram::new_unchecked(j.clone(), objects, morphisms)
}

fn constant_comparison(constant: &GrothendieckCat, gamma: &FunctorCategory, cj: &FunctorCategory) -> Result<bool> {
    let ob_map = gamma
        .functors()
        .iter()
        .map(|s| {
            let ob: Vec<usize> = s.ob_map().iter().map(|&e| constant.object(e).1).collect();
            let mor: Vec<usize> = s.mor_map().iter().map(|&m| constant.morphism(m).2).collect();
            cj.functor_index(&ob, &mor).ok_or_else(|| validation!("section is not a functor J → C"))
        })
        .collect::<Result<Vec<_>>>()?;
    let mor_map = (0..gamma.category().morphisms())
        .map(|m| {
            let t = gamma.transformation(m);
            let components = t.components.iter().map(|&e| constant.morphism(e).2).collect();
            cj.transformation_index(&Transformation { source: ob_map[t.source], target: ob_map[t.target], components })
                .ok_or_else(|| validation!("transformation of sections is not natural on J"))
        })
        .collect::<Result<Vec<_>>>()?;
    let psi = CatFunctor::new_unchecked(gamma.category().clone(), cj.category().clone(), ob_map, mor_map);
    Ok(psi.audit().is_ok() && psi.is_isomorphism())
}
