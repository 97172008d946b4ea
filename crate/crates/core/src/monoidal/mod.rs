//! Finite symmetric monoidal categories used as targets for diagrams.
//!
//! Both shipped instances are strict monoidal on the nose: tensor products
//! of lists are formed left to right with the first factor most significant,
//! so only the symmetry needs explicit isomorphisms ([`MonoidalInstance::permute`]).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::error::Result;
use crate::group::Perm;

mod matrix;
mod pointed;

pub use matrix::{Matrix, MatrixInstance};
pub use pointed::{PointedMap, PointedSetInstance};

/// A symmetric monoidal category with exact equality of morphisms.
pub trait MonoidalInstance: Send + Sync {
    type Object: Clone + Eq + Debug + Send + Sync;
    type Morphism: Clone + Eq + Debug + Send + Sync;

    fn name(&self) -> String;

    fn dom(&self, f: &Self::Morphism) -> Self::Object;
    fn cod(&self, f: &Self::Morphism) -> Self::Object;
    fn identity(&self, x: &Self::Object) -> Self::Morphism;
    /// `g ∘ f`; fails unless `cod f == dom g`.
    fn compose(&self, g: &Self::Morphism, f: &Self::Morphism) -> Result<Self::Morphism>;

    fn unit(&self) -> Self::Object;
    fn tensor_objects(&self, a: &Self::Object, b: &Self::Object) -> Self::Object;
    fn tensor_morphisms(&self, f: &Self::Morphism, g: &Self::Morphism) -> Self::Morphism;

    /// The symmetry isomorphism `⊗_k objects[k] → ⊗_k objects[π⁻¹(k)]`
    /// that moves factor `k` to slot `π(k)`.
    fn permute(&self, objects: &[Self::Object], perm: &Perm) -> Result<Self::Morphism>;

    /// Every morphism `a → b`. Use [`MonoidalInstance::hom_size`] first to
    /// check the enumeration is affordable.
    fn hom_set(&self, a: &Self::Object, b: &Self::Object) -> Vec<Self::Morphism>;
    /// `|hom(a, b)|`, or `None` if it does not fit in a `usize`.
    fn hom_size(&self, a: &Self::Object, b: &Self::Object) -> Option<usize>;

    fn is_iso(&self, f: &Self::Morphism) -> bool;

    /// Every isomorphism `a → b`, or `None` if enumerating them would take
    /// more than `cap` candidates.
    fn isomorphisms(&self, a: &Self::Object, b: &Self::Object, cap: usize) -> Option<Vec<Self::Morphism>> {
        if self.hom_size(a, b)? > cap {
            return None;
        }
        Some(self.hom_set(a, b).into_iter().filter(|f| self.is_iso(f)).collect())
    }

    /// Checks that a value is a well-formed object of this instance.
    fn check_object(&self, x: &Self::Object) -> Result<()>;
    /// Checks that a value is a well-formed morphism of this instance.
    fn check_morphism(&self, f: &Self::Morphism) -> Result<()>;

    /// Left-to-right tensor of a list; the empty list gives the unit.
    fn tensor_all_objects(&self, objects: &[Self::Object]) -> Self::Object {
        objects.iter().fold(self.unit(), |acc, x| self.tensor_objects(&acc, x))
    }

    /// Left-to-right tensor of a list; the empty list gives the unit's identity.
    fn tensor_all(&self, morphisms: &[Self::Morphism]) -> Self::Morphism {
        morphisms.iter().fold(self.identity(&self.unit()), |acc, f| self.tensor_morphisms(&acc, f))
    }
}

/// Tensor of `morphisms` in the listed (domain) order, followed by the
/// symmetry that sorts the factors into `cod_order`.
///
/// `cod_order[k]` is the slot that factor `k`'s codomain occupies in the
/// target product.
pub fn ordered_tensor<M: MonoidalInstance>(
    inst: &M,
    morphisms: &[M::Morphism],
    cod_order: &Perm,
) -> Result<M::Morphism> {
    let product = inst.tensor_all(morphisms);
    if cod_order.is_identity() {
        return Ok(product);
    }
    let cods: Vec<M::Object> = morphisms.iter().map(|f| inst.cod(f)).collect();
    inst.compose(&inst.permute(&cods, cod_order)?, &product)
}

/// The reordering isomorphism from `objects` listed in one order to the
/// same objects listed in another: `to[k]` is the position of
/// `objects[k]` in the target listing.
pub fn reorder<M: MonoidalInstance>(inst: &M, objects: &[M::Object], to: &Perm) -> Result<M::Morphism> {
    inst.permute(objects, to)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_permute_laws<M: MonoidalInstance>(inst: &M, objects: &[M::Object]) {
        let n = objects.len();
        let id = Perm::identity(n);
        assert_eq!(inst.permute(objects, &id).unwrap(), inst.identity(&inst.tensor_all_objects(objects)));
        let perms = crate::group::FiniteGroup::symmetric(n);
        for s in perms.elements() {
            for t in perms.elements() {
                let sigma = perms.perm(s).unwrap();
                let tau = perms.perm(t).unwrap();
                let mut moved = objects.to_vec();
                for k in 0..n {
                    moved[sigma.apply(k)] = objects[k].clone();
                }
                let lhs = inst.permute(objects, &tau.compose(sigma)).unwrap();
                let rhs = inst
                    .compose(&inst.permute(&moved, tau).unwrap(), &inst.permute(objects, sigma).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
                let p = inst.permute(objects, sigma).unwrap();
                assert!(inst.is_iso(&p));
                assert_eq!(inst.cod(&p), inst.tensor_all_objects(&moved));
            }
        }
    }

    #[test]
    fn permute_composes_for_matrices() {
        let inst = MatrixInstance::new(3).unwrap();
        check_permute_laws(&inst, &[2, 1, 3]);
        check_permute_laws(&inst, &[2, 2, 2]);
        check_permute_laws(&inst, &[0, 2]);
    }

    #[test]
    fn permute_composes_for_pointed_sets() {
        let inst = PointedSetInstance;
        check_permute_laws(&inst, &[2, 1, 3]);
        check_permute_laws(&inst, &[2, 0, 2]);
    }

    #[test]
    fn ordered_tensor_with_identity_order_is_plain_tensor() {
        let inst = MatrixInstance::new(2).unwrap();
        let a = Matrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let t = ordered_tensor(&inst, &[a.clone(), b.clone()], &Perm::identity(2)).unwrap();
        assert_eq!(t, inst.tensor_morphisms(&a, &b));
        assert_eq!(inst.tensor_all(&[]), inst.identity(&1));
    }
}
