//! Wreath products `Σn ≀ H` and the transversal homomorphism `α: G → Σn ≀ H`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{shape, validation, Result};
use crate::group::{FiniteGroup, Perm, Subgroup, Transversal};

/// `(σ; h_1, .., h_n)`. The `hs` are elements of the parent group that lie
/// in the base subgroup.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WreathElement {
    pub sigma: Perm,
    pub hs: Vec<usize>,
}

impl WreathElement {
    pub fn identity(n: usize, h: &Subgroup) -> Self {
        WreathElement { sigma: Perm::identity(n), hs: alloc::vec![h.parent().identity(); n] }
    }

    pub fn n(&self) -> usize {
        self.hs.len()
    }

    pub fn validate(&self, h: &Subgroup) -> Result<()> {
        if self.sigma.degree() != self.hs.len() {
            return Err(shape!("permutation on {} points with {} H-entries", self.sigma.degree(), self.hs.len()));
        }
        Perm::from_images(self.sigma.images().to_vec())?;
        for &x in &self.hs {
            if !h.contains(x) {
                return Err(validation!("{x} is not in the base subgroup"));
            }
        }
        Ok(())
    }

    pub fn label(&self, g: &FiniteGroup) -> String {
        let mut s = format!("({};", self.sigma);
        for (k, &x) in self.hs.iter().enumerate() {
            let sep = if k == 0 { " " } else { ", " };
            let _ = write!(s, "{sep}{}", g.label(x));
        }
        s.push(')');
        s
    }
}

/// `(σ; h)·(τ; k) = (στ; h_{τ(1)}k_1, .., h_{τ(n)}k_n)`, with `στ` meaning
/// "`τ` first".
pub fn wreath_mul(h: &Subgroup, a: &WreathElement, b: &WreathElement) -> Result<WreathElement> {
    if a.n() != b.n() || a.sigma.degree() != b.sigma.degree() {
        return Err(shape!("wreath elements of lengths {} and {}", a.n(), b.n()));
    }
    Ok(wreath_mul_unchecked(h.parent(), a, b))
}

fn wreath_mul_unchecked(g: &FiniteGroup, a: &WreathElement, b: &WreathElement) -> WreathElement {
    let sigma = a.sigma.compose(&b.sigma);
    let hs = (0..b.n()).map(|i| g.mul(a.hs[b.sigma.apply(i)], b.hs[i])).collect();
    WreathElement { sigma, hs }
}

/// `α(g) = (σ_g; h_1(g), .., h_n(g))` where `g t_i = t_{σ_g(i)} h_i(g)`.
pub fn alpha(g_elt: usize, t: &Transversal) -> WreathElement {
    let n = t.n();
    let mut images = alloc::vec![0; n];
    let mut hs = alloc::vec![0; n];
    for i in 0..n {
        let (j, h) = t.solve(g_elt, i);
        images[i] = j;
        hs[i] = h;
    }
    WreathElement { sigma: Perm::from_images(images).expect("coset action is a bijection"), hs }
}

/// `Σn ≀ H` realised as a [`FiniteGroup`].
///
/// Element index is `rank(σ)·|H|^n + Σ local(h_i)·|H|^(n-1-i)`, where
/// `rank` is the lexicographic rank of the permutation.
#[derive(Clone, Debug)]
pub struct WreathGroup {
    n: usize,
    base: Subgroup,
    symmetric: Arc<FiniteGroup>,
    group: Arc<FiniteGroup>,
}

impl WreathGroup {
    pub fn new(n: usize, base: &Subgroup) -> Self {
        let symmetric = Arc::new(FiniteGroup::symmetric(n));
        let k = base.order();
        let block = k.pow(n as u32);
        let order = symmetric.order() * block;
        let parent = base.parent().clone();
        let decode = |idx: usize| -> WreathElement {
            let sigma = symmetric.perm(idx / block).expect("symmetric perms").clone();
            let mut rest = idx % block;
            let mut hs = alloc::vec![0; n];
            for slot in (0..n).rev() {
                hs[slot] = base.global(rest % k);
                rest /= k;
            }
            WreathElement { sigma, hs }
        };
        let elements: Vec<WreathElement> = (0..order).map(decode).collect();
        let encode = |w: &WreathElement| -> usize {
            let mut idx = w.sigma.lex_rank();
            for &x in &w.hs {
                idx = idx * k + base.local_index(x).expect("in base");
            }
            idx
        };
        let mut table = Vec::with_capacity(order * order);
        for a in &elements {
            for b in &elements {
                table.push(encode(&wreath_mul_unchecked(&parent, a, b)));
            }
        }
        let labels = elements.iter().map(|w| w.label(&parent)).collect();
        let identity = encode(&WreathElement::identity(n, base));
        let group = FiniteGroup::from_raw(order, table, identity, labels, None).expect("wreath product table");
        WreathGroup { n, base: base.clone(), symmetric, group: Arc::new(group) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &Subgroup {
        &self.base
    }

    pub fn symmetric(&self) -> &Arc<FiniteGroup> {
        &self.symmetric
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn index_of(&self, w: &WreathElement) -> Result<usize> {
        if w.n() != self.n {
            return Err(shape!("element has length {}, wreath product has n = {}", w.n(), self.n));
        }
        w.validate(&self.base)?;
        let k = self.base.order();
        let mut idx = w.sigma.lex_rank();
        for &x in &w.hs {
            idx = idx * k + self.base.local_index(x).expect("validated");
        }
        Ok(idx)
    }

    pub fn element(&self, idx: usize) -> WreathElement {
        let k = self.base.order();
        let block = k.pow(self.n as u32);
        let sigma = self.symmetric.perm(idx / block).expect("symmetric perms").clone();
        let mut rest = idx % block;
        let mut hs = alloc::vec![0; self.n];
        for slot in (0..self.n).rev() {
            hs[slot] = self.base.global(rest % k);
            rest /= k;
        }
        WreathElement { sigma, hs }
    }

    /// Index of `α(g)` for every element `g` of the transversal's group.
    pub fn alpha_images(&self, t: &Transversal) -> Result<Vec<usize>> {
        if t.n() != self.n {
            return Err(shape!("transversal has {} cosets, wreath product has n = {}", t.n(), self.n));
        }
        t.group().elements().map(|g| self.index_of(&alpha(g, t))).collect()
    }
}

/// A pair `(γ, g)` at which `α` fails to be a homomorphism or the coset
/// data fails the cocycle identities
/// `σ_{γg} = σ_γ σ_g` and `h_i(γg) = h_{σ_g(i)}(γ) h_i(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleViolation {
    pub gamma: usize,
    pub g: usize,
    pub what: &'static str,
}

/// Checks the identities for every pair of group elements.
pub fn cocycle_violations(t: &Transversal) -> Vec<CocycleViolation> {
    let group = t.group();
    let h = t.subgroup();
    let alphas: Vec<WreathElement> = group.elements().map(|g| alpha(g, t)).collect();
    let mut out = Vec::new();
    for gamma in group.elements() {
        for g in group.elements() {
            let (a, b, ab) = (&alphas[gamma], &alphas[g], &alphas[group.mul(gamma, g)]);
            if ab.sigma != a.sigma.compose(&b.sigma) {
                out.push(CocycleViolation { gamma, g, what: "permutation" });
            }
            if (0..t.n()).any(|i| ab.hs[i] != group.mul(a.hs[b.sigma.apply(i)], b.hs[i])) {
                out.push(CocycleViolation { gamma, g, what: "cocycle" });
            }
            if wreath_mul(h, a, b).ok().as_ref() != Some(ab) {
                out.push(CocycleViolation { gamma, g, what: "homomorphism" });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::TransversalPolicy;

    fn perm(cycles: &[&[usize]], degree: usize) -> Perm {
        let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Perm::from_cycles(&cs, degree).unwrap()
    }

    fn s3_setup() -> (Arc<FiniteGroup>, Subgroup, Transversal) {
        let g = Arc::new(FiniteGroup::from_permutations(&[perm(&[&[1, 2]], 3), perm(&[&[1, 2, 3]], 3)]).unwrap());
        let idx = |p: Perm| g.index_of_perm(&p).unwrap();
        let h = Subgroup::generated_by(g.clone(), &[idx(perm(&[&[1, 2]], 3))]).unwrap();
        let reps = vec![g.identity(), idx(perm(&[&[1, 2, 3]], 3)), idx(perm(&[&[1, 3, 2]], 3))];
        let t = Transversal::new(&h, TransversalPolicy::Explicit(reps)).unwrap();
        (g, h, t)
    }

    #[test]
    fn alpha_of_transposition_in_s3() {
        let (g, _h, t) = s3_setup();
        let x = g.index_of_perm(&perm(&[&[1, 2]], 3)).unwrap();
        let a = alpha(x, &t);
        // Oracle: solve g t_i = t_j h by exhaustive search over j and h.
        for i in 0..3 {
            let lhs = g.mul(x, t.reps()[i]);
            let sols: Vec<(usize, usize)> = (0..3)
                .flat_map(|j| t.subgroup().elements().iter().map(move |&h| (j, h)))
                .filter(|&(j, h)| g.mul(t.reps()[j], h) == lhs)
                .collect();
            assert_eq!(sols, vec![(a.sigma.apply(i), a.hs[i])]);
        }
        assert_eq!(a.sigma, perm(&[&[2, 3]], 3));
        assert!(a.hs.iter().all(|&h| h == x));
    }

    #[test]
    fn alpha_of_identity_and_subgroup_elements() {
        let (g, h, t) = s3_setup();
        assert_eq!(alpha(g.identity(), &t), WreathElement::identity(3, &h));
        for &k in h.elements() {
            let a = alpha(k, &t);
            assert_eq!(a.sigma.apply(0), 0);
            assert_eq!(a.hs[0], k);
        }
    }

    #[test]
    fn two_slot_product_formula() {
        let c2 = Arc::new(FiniteGroup::from_permutations(&[perm(&[&[1, 2]], 2)]).unwrap());
        let h = Subgroup::whole(c2.clone());
        let (e, g) = (0, 1);
        let swap = perm(&[&[1, 2]], 2);
        for (a, b, c, d) in [(e, g, g, e), (g, g, e, g), (g, e, e, e)] {
            let x = WreathElement { sigma: swap.clone(), hs: vec![a, b] };
            let y = WreathElement { sigma: swap.clone(), hs: vec![c, d] };
            let z = wreath_mul(&h, &x, &y).unwrap();
            assert_eq!(z.sigma, Perm::identity(2));
            assert_eq!(z.hs, vec![c2.mul(b, c), c2.mul(a, d)]);
        }
    }

    #[test]
    fn mismatched_lengths() {
        let (_g, h, _t) = s3_setup();
        let a = WreathElement::identity(2, &h);
        let b = WreathElement::identity(3, &h);
        assert!(wreath_mul(&h, &a, &b).is_err());
    }

    #[test]
    fn wreath_group_order_and_associativity() {
        let c2 = Arc::new(FiniteGroup::from_permutations(&[perm(&[&[1, 2]], 2)]).unwrap());
        let h = Subgroup::whole(c2);
        let w = WreathGroup::new(3, &h);
        assert_eq!(w.order(), 6 * 8);
        assert!(w.group().associativity_violation().is_none());
        for idx in 0..w.order() {
            assert_eq!(w.index_of(&w.element(idx)).unwrap(), idx);
        }
    }

    /// Oracle: `(σ; h)` acts on `n × H` by `(i, x) ↦ (σ(i), h_i x)`; products
    /// in the wreath group must match composition of these permutations.
    #[test]
    fn wreath_group_table_agrees_with_imprimitive_action() {
        let c2 = Arc::new(FiniteGroup::from_permutations(&[perm(&[&[1, 2]], 2)]).unwrap());
        let h = Subgroup::whole(c2.clone());
        let w = WreathGroup::new(3, &h);
        let k = h.order();
        let as_perm = |x: &WreathElement| -> Perm {
            let mut images = vec![0; 3 * k];
            for i in 0..3 {
                for y in 0..k {
                    let hy = h.local_index(c2.mul(x.hs[i], h.global(y))).unwrap();
                    images[i * k + y] = x.sigma.apply(i) * k + hy;
                }
            }
            Perm::from_images(images).unwrap()
        };
        for a in 0..w.order() {
            for b in 0..w.order() {
                let lhs = as_perm(&w.element(w.group().mul(a, b)));
                let rhs = as_perm(&w.element(a)).compose(&as_perm(&w.element(b)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn cocycle_identities_hold_for_every_transversal() {
        let (_, h, _) = s3_setup();
        let cosets = crate::group::cosets(&h);
        let e = h.parent().identity();
        for b in &cosets[1] {
            for c in &cosets[2] {
                let t = Transversal::from_reps(&h, vec![e, *b, *c]).unwrap();
                assert!(cocycle_violations(&t).is_empty());
            }
        }
    }
}
