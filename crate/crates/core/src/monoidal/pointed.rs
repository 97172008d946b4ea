use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::MonoidalInstance;
use crate::error::{shape, validation, Result};
use crate::group::Perm;

/// A basepoint-preserving map. Objects are counts `m` of non-basepoint
/// elements, i.e. the set `{0, 1, .., m}` with basepoint `0`; `images[x]` is
/// the image of `x` and `images[0] == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointedMap {
    cod: usize,
    images: Vec<usize>,
}

impl PointedMap {
    pub fn new(cod: usize, images: Vec<usize>) -> Result<Self> {
        let m = PointedMap { cod, images };
        PointedSetInstance.check_morphism(&m)?;
        Ok(m)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn dom(&self) -> usize {
        self.images.len() - 1
    }

    pub fn cod(&self) -> usize {
        self.cod
    }
}

/// Pointed finite sets with the smash product. The unit is `S^0`, the
/// object `1`.
///
/// The smash of `{0..a}` and `{0..b}` is `{0..a·b}`; the pair `(x, y)` of
/// non-basepoints is `(x-1)·b + y`, everything else collapses to `0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PointedSetInstance;

impl MonoidalInstance for PointedSetInstance {
    type Object = usize;
    type Morphism = PointedMap;

    fn name(&self) -> String {
        String::from("pointed_set")
    }

    fn dom(&self, f: &PointedMap) -> usize {
        f.dom()
    }

    fn cod(&self, f: &PointedMap) -> usize {
        f.cod
    }

    fn identity(&self, x: &usize) -> PointedMap {
        PointedMap { cod: *x, images: (0..=*x).collect() }
    }

    fn compose(&self, g: &PointedMap, f: &PointedMap) -> Result<PointedMap> {
        if f.cod != g.dom() {
            return Err(shape!("cannot compose a map out of {} after a map into {}", g.dom(), f.cod));
        }
        Ok(PointedMap { cod: g.cod, images: f.images.iter().map(|&y| g.images[y]).collect() })
    }

    fn unit(&self) -> usize {
        1
    }

    fn tensor_objects(&self, a: &usize, b: &usize) -> usize {
        a * b
    }

    fn tensor_morphisms(&self, f: &PointedMap, g: &PointedMap) -> PointedMap {
        let (a, b) = (f.dom(), g.dom());
        let mut images = vec![0; a * b + 1];
        for x in 1..=a {
            for y in 1..=b {
                let (fx, gy) = (f.images[x], g.images[y]);
                if fx != 0 && gy != 0 {
                    images[(x - 1) * b + y] = (fx - 1) * g.cod + gy;
                }
            }
        }
        PointedMap { cod: f.cod * g.cod, images }
    }

    fn permute(&self, objects: &[usize], perm: &Perm) -> Result<PointedMap> {
        let n = objects.len();
        if perm.degree() != n {
            return Err(shape!("permutation of {} points for {n} factors", perm.degree()));
        }
        let total: usize = objects.iter().product();
        let mut target = vec![0; n];
        for k in 0..n {
            target[perm.apply(k)] = objects[k];
        }
        let mut images = vec![0; total + 1];
        let mut digits = vec![0; n];
        let mut moved = vec![0; n];
        for a in 0..total {
            let mut rest = a;
            for k in (0..n).rev() {
                digits[k] = rest % objects[k];
                rest /= objects[k];
            }
            for k in 0..n {
                moved[perm.apply(k)] = digits[k];
            }
            images[a + 1] = moved.iter().zip(&target).fold(0, |acc, (&d, &m)| acc * m + d) + 1;
        }
        Ok(PointedMap { cod: total, images })
    }

    fn hom_set(&self, a: &usize, b: &usize) -> Vec<PointedMap> {
        let count = self.hom_size(a, b).expect("hom set too large to enumerate");
        let mut out = Vec::with_capacity(count);
        let mut images = vec![0; a + 1];
        for _ in 0..count {
            out.push(PointedMap { cod: *b, images: images.clone() });
            for x in images[1..].iter_mut().rev() {
                *x += 1;
                if *x <= *b {
                    break;
                }
                *x = 0;
            }
        }
        out
    }

    fn hom_size(&self, a: &usize, b: &usize) -> Option<usize> {
        (b + 1).checked_pow(u32::try_from(*a).ok()?)
    }

    fn isomorphisms(&self, a: &usize, b: &usize, cap: usize) -> Option<Vec<PointedMap>> {
        if a != b {
            return Some(Vec::new());
        }
        let count = (1..=*a).try_fold(1usize, |acc, k| acc.checked_mul(k))?;
        if count > cap {
            return None;
        }
        let mut out = Vec::with_capacity(count);
        let mut images: Vec<usize> = (0..=*a).collect();
        loop {
            out.push(PointedMap { cod: *b, images: images.clone() });
            // next permutation of images[1..] in lex order
            let tail = &mut images[1..];
            let Some(k) = (0..tail.len().saturating_sub(1)).rev().find(|&k| tail[k] < tail[k + 1]) else {
                break;
            };
            let l = (k + 1..tail.len()).rev().find(|&l| tail[l] > tail[k]).expect("successor exists");
            tail.swap(k, l);
            tail[k + 1..].reverse();
        }
        Some(out)
    }

    fn is_iso(&self, f: &PointedMap) -> bool {
        let n = f.dom();
        if n != f.cod {
            return false;
        }
        let mut seen = vec![false; n + 1];
        f.images.iter().all(|&y| !core::mem::replace(&mut seen[y], true))
    }

    fn check_object(&self, _x: &usize) -> Result<()> {
        Ok(())
    }

    fn check_morphism(&self, f: &PointedMap) -> Result<()> {
        if f.images.first() != Some(&0) {
            return Err(validation!("pointed map does not fix the basepoint"));
        }
        if let Some(&y) = f.images.iter().find(|&&y| y > f.cod) {
            return Err(validation!("image {y} outside a pointed set of size {}", f.cod));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smash_of_swap() {
        let inst = PointedSetInstance;
        let swap = PointedMap::new(2, vec![0, 2, 1]).unwrap();
        let id = inst.identity(&2);
        let s = inst.tensor_morphisms(&swap, &id);
        // (x, y) ↦ (σx, y); (1,1)=1 → (2,1)=3.
        assert_eq!(s.images(), &[0, 3, 4, 1, 2]);
        let collapse = PointedMap::new(1, vec![0, 0]).unwrap();
        let c = inst.tensor_morphisms(&collapse, &swap);
        assert!(c.images().iter().all(|&y| y == 0));
    }

    #[test]
    fn unit_laws_and_associativity() {
        let inst = PointedSetInstance;
        let f = PointedMap::new(3, vec![0, 2, 0]).unwrap();
        let one = inst.identity(&inst.unit());
        assert_eq!(inst.tensor_morphisms(&one, &f), f);
        assert_eq!(inst.tensor_morphisms(&f, &one), f);
        let g = PointedMap::new(2, vec![0, 1, 2, 2]).unwrap();
        let h = PointedMap::new(1, vec![0, 1, 0]).unwrap();
        let l = inst.tensor_morphisms(&inst.tensor_morphisms(&f, &g), &h);
        let r = inst.tensor_morphisms(&f, &inst.tensor_morphisms(&g, &h));
        assert_eq!(l, r);
    }

    #[test]
    fn hom_set_sizes() {
        let inst = PointedSetInstance;
        assert_eq!(inst.hom_set(&2, &2).len(), 9);
        assert_eq!(inst.hom_set(&2, &2).iter().filter(|f| inst.is_iso(f)).count(), 2);
        assert_eq!(inst.hom_set(&0, &3).len(), 1);
        assert_eq!(inst.hom_set(&1, &0).len(), 1);
    }

    #[test]
    fn isomorphisms_are_basepointed_bijections() {
        let inst = PointedSetInstance;
        for m in 0..5 {
            let mut listed = inst.isomorphisms(&m, &m, 1000).unwrap();
            let mut filtered: Vec<PointedMap> = inst.hom_set(&m, &m).into_iter().filter(|f| inst.is_iso(f)).collect();
            listed.sort();
            filtered.sort();
            assert_eq!(listed, filtered);
        }
        assert_eq!(inst.isomorphisms(&8, &8, 1 << 20).unwrap().len(), 40320);
        assert_eq!(inst.isomorphisms(&8, &8, 10), None);
    }

    #[test]
    fn rejects_bad_maps() {
        assert!(PointedMap::new(2, vec![1, 0, 2]).is_err());
        assert!(PointedMap::new(1, vec![0, 2]).is_err());
    }
}
