//! The two norm constructions and the check that they agree.
//!
//! ```text
//!        C^H ──────── κ* ───────┐
//!         │ c                   ▼
//!  C^(B_nΣn × H) ── β* ──▶ C^(B_{G/H}G)
//!         │ n^∧                 │ p_*^∧
//!         ▼                     ▼
//!    C^(Σn ≀ H) ──── α* ────▶  C^G
//! ```

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

use crate::covering::CoveringCategory;
use crate::diagram::{
    indexed_tensor_covering, map_indexed_tensor, map_indexed_tensor_covering, n_smash, pullback, pullback_morphism,
    Diagram, DiagramMorphism, Difference,
};
use crate::error::{shape, Error, Result};
use crate::fincat::{one_object_category, CatFunctor, FiniteCategory};
use crate::group::{FiniteGroup, Subgroup, Transversal};
use crate::groupoid::{beta, check_triangle, inclusion_iota, kappa, GSet, TranslationGroupoid};
use crate::indexing::{wreath_p, WreathIndexing};
use crate::monoidal::MonoidalInstance;

/// Everything determined by a choice of transversal.
#[derive(Clone, Debug)]
pub struct NormContext {
    transversal: Transversal,
    bg: TranslationGroupoid,
    covering: CoveringCategory,
    iota: CatFunctor,
    kappa: CatFunctor,
    beta: CatFunctor,
    wreath: WreathIndexing,
    alpha: CatFunctor,
}

impl NormContext {
    pub fn new(t: &Transversal) -> Result<Self> {
        let h = t.subgroup();
        let g = t.group().clone();
        let bg = TranslationGroupoid::new(GSet::cosets(t));
        let gcat = Arc::new(one_object_category(&g));
        let covering = CoveringCategory::new(bg.projection(gcat.clone())?)
            .map_err(|v| Error::Validation(format!("coset groupoid is not a covering: {v}")))?;
        let wreath = wreath_p(t.n(), h);
        let iota = inclusion_iota(h, &bg)?;
        let kappa = kappa(t, &bg)?;
        let beta = beta(t, &bg, wreath.slots())?;
        let alpha = CatFunctor::new(gcat, wreath.category().clone(), alloc::vec![0], wreath.wreath().alpha_images(t)?)?;
        let ctx = NormContext { transversal: t.clone(), bg, covering, iota, kappa, beta, wreath, alpha };
        ctx.beta.audit()?;
        ctx.kappa.audit()?;
        if !check_triangle(&ctx.kappa, &ctx.beta, ctx.wreath.slots().projection())? {
            return Err(Error::Validation(String::from("κ and β do not form a commuting triangle")));
        }
        Ok(ctx)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.transversal.group()
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.transversal.subgroup()
    }

    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    pub fn n(&self) -> usize {
        self.transversal.n()
    }

    /// `B_{G/H}G`.
    pub fn coset_groupoid(&self) -> &TranslationGroupoid {
        &self.bg
    }

    /// `p: B_{G/H}G → G`.
    pub fn covering(&self) -> &CoveringCategory {
        &self.covering
    }

    /// The one-object category of `G`.
    pub fn group_category(&self) -> &Arc<FiniteCategory> {
        self.covering.base()
    }

    /// The one-object category of `H`, on which inputs live.
    pub fn subgroup_category(&self) -> &Arc<FiniteCategory> {
        self.wreath.slots().h_category()
    }

    pub fn iota(&self) -> &CatFunctor {
        &self.iota
    }

    pub fn kappa(&self) -> &CatFunctor {
        &self.kappa
    }

    pub fn beta(&self) -> &CatFunctor {
        &self.beta
    }

    pub fn alpha(&self) -> &CatFunctor {
        &self.alpha
    }

    pub fn wreath(&self) -> &WreathIndexing {
        &self.wreath
    }

    /// `B_nΣn × H → H`; pulling back along it is `c`.
    pub fn slot_projection(&self) -> &CatFunctor {
        self.wreath.slots().projection()
    }

    /// Copy with `α` replaced, unchecked.
    pub fn with_alpha(&self, alpha: CatFunctor) -> Self {
        NormContext { alpha, ..self.clone() }
    }

    /// Copy with `β` replaced, unchecked.
    pub fn with_beta(&self, beta: CatFunctor) -> Self {
        NormContext { beta, ..self.clone() }
    }

    /// Copy with `κ` replaced, unchecked.
    pub fn with_kappa(&self, kappa: CatFunctor) -> Self {
        NormContext { kappa, ..self.clone() }
    }

    /// Copy in which `κ` and `β` come from `t` while `α` is kept.
    pub fn with_transversal(&self, t: Transversal) -> Result<Self> {
        let kappa = kappa(&t, &self.bg)?;
        let beta = beta(&t, &self.bg, self.wreath.slots())?;
        Ok(NormContext { transversal: t, kappa, beta, ..self.clone() })
    }

    /// Human-readable name of a morphism `(g, t_iH)` of `B_{G/H}G`.
    pub fn coset_morphism_label(&self, f: usize) -> String {
        let (g, i) = self.bg.decode(f);
        format!("{} at t{}H", self.group().label(g), i + 1)
    }
}

/// `p_*^∧(κ* X)`.
pub fn hhr_norm<M: MonoidalInstance>(inst: &M, ctx: &NormContext, x: &Diagram<M>) -> Result<Diagram<M>> {
    indexed_tensor_covering(inst, &ctx.covering, &pullback(&ctx.kappa, x)?)
}

/// `α*(n^∧(c X))`.
pub fn gm_norm<M: MonoidalInstance>(inst: &M, ctx: &NormContext, x: &Diagram<M>) -> Result<Diagram<M>> {
    let y = pullback(ctx.slot_projection(), x)?;
    pullback(&ctx.alpha, &n_smash(inst, &ctx.wreath, &y)?)
}

/// The first route applied to a morphism of `H`-diagrams.
pub fn hhr_norm_map<M: MonoidalInstance>(
    inst: &M,
    ctx: &NormContext,
    theta: &DiagramMorphism<M>,
) -> Result<DiagramMorphism<M>> {
    map_indexed_tensor_covering(inst, &ctx.covering, &pullback_morphism(&ctx.kappa, theta)?)
}

/// The second route applied to a morphism of `H`-diagrams.
pub fn gm_norm_map<M: MonoidalInstance>(
    inst: &M,
    ctx: &NormContext,
    theta: &DiagramMorphism<M>,
) -> Result<DiagramMorphism<M>> {
    let y = pullback_morphism(ctx.slot_projection(), theta)?;
    pullback_morphism(&ctx.alpha, &map_indexed_tensor(inst, ctx.wreath.p(), &y)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    UpperTriangle,
    LowerSquare,
    Total,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::UpperTriangle => "upper_triangle",
            Stage::LowerSquare => "lower_square",
            Stage::Total => "total",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where and how a check failed. `morphism` indexes `B_{G/H}G` for the
/// upper triangle and `G` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub stage: Stage,
    pub morphism: usize,
    pub label: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub upper_triangle: bool,
    pub lower_square: bool,
    pub total: bool,
    pub counterexample: Option<Counterexample>,
}

/// First morphism at which a functor breaks a functor law.
fn functor_violation(f: &CatFunctor) -> Option<(usize, String, String)> {
    let (s, t) = (f.source(), f.target());
    for m in 0..s.morphisms() {
        let image = f.mor(m);
        if t.dom(image) != f.ob(s.dom(m)) || t.cod(image) != f.ob(s.cod(m)) {
            return Some((
                m,
                format!("{} → {}", t.dom(image), t.cod(image)),
                format!("{} → {}", f.ob(s.dom(m)), f.ob(s.cod(m))),
            ));
        }
    }
    for x in 0..s.objects() {
        let id = s.identity(x);
        if f.mor(id) != t.identity(f.ob(x)) {
            return Some((id, format!("#{}", f.mor(id)), format!("#{}", t.identity(f.ob(x)))));
        }
    }
    for (g, h) in s.composable_pairs() {
        let gh = s.compose(g, h).expect("composable");
        let rhs = t.compose(f.mor(g), f.mor(h));
        if rhs != Some(f.mor(gh)) {
            return Some((gh, format!("#{}", f.mor(gh)), format!("{rhs:?}")));
        }
    }
    None
}

fn diagram_counterexample<M: MonoidalInstance>(
    stage: Stage,
    lhs: &Diagram<M>,
    rhs: &Diagram<M>,
    label: &dyn Fn(usize) -> String,
) -> Result<Option<Counterexample>> {
    Ok(lhs.first_difference(rhs)?.map(|d| {
        let (morphism, l, r) = match d {
            Difference::Object(x) => {
                (lhs.shape().identity(x), format!("{:?}", lhs.object(x)), format!("{:?}", rhs.object(x)))
            }
            Difference::Morphism(f) => (f, format!("{:?}", lhs.morphism(f)), format!("{:?}", rhs.morphism(f))),
        };
        Counterexample { stage, morphism, label: label(morphism), lhs: l, rhs: r }
    }))
}

/// Checks the upper triangle (`proj ∘ β = κ`, functoriality of `κ` and
/// `β`, and `β*(c X) = κ* X`), the lower square
/// (`p_*^∧(β* Y) = α*(n^∧ Y)` for `Y = c X`) and `hhr = gm`, each strictly.
pub fn verify_theorem<M: MonoidalInstance>(inst: &M, ctx: &NormContext, x: &Diagram<M>) -> Result<TheoremReport> {
    if !crate::fincat::same_category(x.shape(), ctx.subgroup_category()) {
        return Err(shape!("input diagram is not defined on H"));
    }
    let bg_label = |f: usize| ctx.coset_morphism_label(f);
    let g_label = |f: usize| String::from(ctx.group().label(f));
    let h = ctx.subgroup();

    let mut upper = None;
    {
        let proj_beta = ctx.slot_projection().compose(&ctx.beta)?;
        if let Some(m) = proj_beta.first_difference(&ctx.kappa)? {
            upper = Some(Counterexample {
                stage: Stage::UpperTriangle,
                morphism: m,
                label: bg_label(m),
                lhs: String::from(h.parent().label(h.global(proj_beta.mor(m)))),
                rhs: String::from(h.parent().label(h.global(ctx.kappa.mor(m)))),
            });
        }
    }
    for (name, functor) in [("κ", &ctx.kappa), ("β", &ctx.beta)] {
        if upper.is_none() {
            if let Some((m, l, r)) = functor_violation(functor) {
                upper = Some(Counterexample {
                    stage: Stage::UpperTriangle,
                    morphism: m,
                    label: format!("{} ({name} is not a functor)", bg_label(m)),
                    lhs: l,
                    rhs: r,
                });
            }
        }
    }
    let y = pullback(ctx.slot_projection(), x)?;
    let beta_y = pullback(&ctx.beta, &y)?;
    if upper.is_none() {
        upper = diagram_counterexample(Stage::UpperTriangle, &beta_y, &pullback(&ctx.kappa, x)?, &bg_label)?;
    }

    let lhs = indexed_tensor_covering(inst, &ctx.covering, &beta_y)?;
    let rhs = pullback(&ctx.alpha, &n_smash(inst, &ctx.wreath, &y)?)?;
    let lower = diagram_counterexample(Stage::LowerSquare, &lhs, &rhs, &g_label)?;

    let hhr = hhr_norm(inst, ctx, x)?;
    let gm = gm_norm(inst, ctx, x)?;
    let total = diagram_counterexample(Stage::Total, &hhr, &gm, &g_label)?;

    let (upper_ok, lower_ok, total_ok) = (upper.is_none(), lower.is_none(), total.is_none());
    Ok(TheoremReport {
        upper_triangle: upper_ok,
        lower_square: lower_ok,
        total: upper_ok && lower_ok && total_ok,
        counterexample: upper.or(lower).or(total),
    })
}

/// Which artifact a negative control corrupts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Artifact {
    Alpha,
    Beta,
    Kappa,
    Transversal,
}

impl Artifact {
    pub const ALL: [Artifact; 4] = [Artifact::Alpha, Artifact::Beta, Artifact::Kappa, Artifact::Transversal];

    pub fn as_str(self) -> &'static str {
        match self {
            Artifact::Alpha => "alpha",
            Artifact::Beta => "beta",
            Artifact::Kappa => "kappa",
            Artifact::Transversal => "transversal",
        }
    }
}

/// A context with one artifact altered, and the morphism that was altered.
#[derive(Clone, Debug)]
pub struct Corruption {
    pub context: NormContext,
    pub artifact: Artifact,
    pub morphism: usize,
    pub description: String,
}

/// Alters one value of the chosen artifact. Returns `None` when the
/// artifact admits no other value: `κ` when `H` is trivial, and a
/// transversal representative when `H` is trivial (each coset has a single
/// representative) or `n = 1`.
pub fn corrupt(ctx: &NormContext, artifact: Artifact) -> Option<Corruption> {
    let g = ctx.group();
    let h = ctx.subgroup();
    let first_nontrivial = g.elements().find(|&x| x != g.identity())?;
    let bg = &ctx.bg;
    match artifact {
        Artifact::Alpha => {
            let wg = ctx.wreath.wreath().group();
            let z = wg.elements().find(|&x| x != wg.identity())?;
            let old = ctx.alpha.mor(first_nontrivial);
            let new = wg.mul(old, z);
            Some(Corruption {
                context: ctx.with_alpha(ctx.alpha.with_mor_image(first_nontrivial, new)),
                artifact,
                morphism: first_nontrivial,
                description: format!("α({}) changed from {} to {}", g.label(first_nontrivial), wg.label(old), wg.label(new)),
            })
        }
        Artifact::Beta => {
            let f = bg.morphism(first_nontrivial, 0);
            let slots = ctx.wreath.slots();
            let (rank, i, local) = slots.decode(ctx.beta.mor(f));
            let new = if h.order() > 1 {
                slots.morphism(rank, i, (local + 1) % h.order())
            } else {
                let count = slots.symmetric().group().order();
                if count < 2 {
                    return None;
                }
                slots.morphism((rank + 1) % count, i, local)
            };
            Some(Corruption {
                context: ctx.with_beta(ctx.beta.with_mor_image(f, new)),
                artifact,
                morphism: f,
                description: format!("β({}) changed", ctx.coset_morphism_label(f)),
            })
        }
        Artifact::Kappa => {
            if h.order() < 2 {
                return None;
            }
            let f = bg.morphism(first_nontrivial, 0);
            let new = (ctx.kappa.mor(f) + 1) % h.order();
            Some(Corruption {
                context: ctx.with_kappa(ctx.kappa.with_mor_image(f, new)),
                artifact,
                morphism: f,
                description: format!("κ({}) changed", ctx.coset_morphism_label(f)),
            })
        }
        Artifact::Transversal => {
            let n = ctx.n();
            if h.order() < 2 || n < 2 {
                return None;
            }
            let k = h.elements().iter().copied().find(|&x| x != g.identity())?;
            let i = n - 1;
            let old = ctx.transversal.reps()[i];
            let rep = g.mul(old, k);
            let t = ctx.transversal.with_rep_unchecked(i, rep);
            Some(Corruption {
                context: ctx.with_transversal(t).ok()?,
                artifact,
                morphism: i,
                description: format!("t{} changed from {} to {}", i + 1, g.label(old), g.label(rep)),
            })
        }
    }
}
