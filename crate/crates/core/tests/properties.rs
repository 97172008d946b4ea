use std::sync::Arc;

use normmap_core::covering::{grothendieck_set, is_covering_category};
use normmap_core::diagram::{
    general_indexed_tensor, indexed_tensor_covering, indexed_tensor_ordered, map_indexed_tensor, pullback,
    reordering_iso, Diagram, DiagramMorphism,
};
use normmap_core::fincat::FiniteCategory;
use normmap_core::grothendieck::{grothendieck_cat, CatValuedDiagram};
use normmap_core::group::{cosets, FiniteGroup, Perm, Subgroup, Transversal};
use normmap_core::groupoid::check_triangle;
use normmap_core::indexing::{covering_to_p, wreath_p};
use normmap_core::monoidal::{MatrixInstance, MonoidalInstance, PointedSetInstance};
use normmap_core::norms::NormContext;
use normmap_core::random::{random_diagram, random_diagram_morphism, random_finset_diagram, small_shapes};
use normmap_core::suite::builtin_suite;
use normmap_core::wreath::{cocycle_violations, wreath_mul, WreathGroup};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_transversal(h: &Subgroup, rng: &mut ChaCha8Rng) -> Transversal {
    let g = h.parent();
    let mut others: Vec<Vec<usize>> = cosets(h).into_iter().filter(|c| !c.contains(&g.identity())).collect();
    others.shuffle(rng);
    let mut reps = vec![g.identity()];
    reps.extend(others.iter().map(|c| *c.choose(rng).unwrap()));
    Transversal::from_reps(h, reps).unwrap()
}

fn random_perm(degree: usize, rng: &mut ChaCha8Rng) -> Perm {
    let mut images: Vec<usize> = (0..degree).collect();
    images.shuffle(rng);
    Perm::from_images(images).unwrap()
}

fn shape(k: usize) -> Arc<FiniteCategory> {
    let shapes = small_shapes();
    shapes[k % shapes.len()].1.clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_groups_satisfy_the_axioms(seed in any::<u64>(), degree in 1usize..6, count in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<Perm> = (0..count).map(|_| random_perm(degree, &mut rng)).collect();
        let g = FiniteGroup::from_permutations(&gens).unwrap();
        prop_assert_eq!(g.associativity_violation(), None);
        for x in g.elements() {
            prop_assert_eq!(g.mul(x, g.identity()), x);
            prop_assert_eq!(g.mul(g.identity(), x), x);
            prop_assert_eq!(g.mul(x, g.inv(x)), g.identity());
            prop_assert_eq!(g.mul(g.inv(x), x), g.identity());
        }
    }

    #[test]
    fn cosets_partition_the_group(seed in any::<u64>(), k in 0usize..6) {
        let s = &builtin_suite()[k];
        let cs = cosets(&s.subgroup);
        let mut all: Vec<usize> = cs.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, s.group.elements().collect::<Vec<_>>());
        prop_assert!(cs.iter().all(|c| c.len() == s.subgroup.order()));
        let t = random_transversal(&s.subgroup, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(t.n(), cs.len());
    }

    #[test]
    fn cocycle_identities_hold_for_random_transversals(seed in any::<u64>(), k in 0usize..6) {
        let s = &builtin_suite()[k];
        let t = random_transversal(&s.subgroup, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(cocycle_violations(&t).is_empty());
    }

    #[test]
    fn triangle_commutes_for_random_transversals(seed in any::<u64>(), k in 0usize..6) {
        let s = &builtin_suite()[k];
        let t = random_transversal(&s.subgroup, &mut ChaCha8Rng::seed_from_u64(seed));
        let ctx = NormContext::new(&t).unwrap();
        prop_assert!(check_triangle(ctx.kappa(), ctx.beta(), ctx.slot_projection()).unwrap());
        ctx.beta().audit().unwrap();
        ctx.kappa().audit().unwrap();
        ctx.alpha().audit().unwrap();
    }

    #[test]
    fn wreath_multiplication_is_associative(seed in any::<u64>(), n in 1usize..4, k in 0usize..3) {
        let s = &builtin_suite()[[0, 2, 3][k]];
        let w = WreathGroup::new(n, &s.subgroup);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = || w.element(rng.gen_range(0..w.order()));
        let (a, b, c) = (pick(), pick(), pick());
        let h = &s.subgroup;
        let left = wreath_mul(h, &wreath_mul(h, &a, &b).unwrap(), &c).unwrap();
        let right = wreath_mul(h, &a, &wreath_mul(h, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn set_construction_gives_coverings(seed in any::<u64>(), k in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_finset_diagram(&shape(k), 3, &mut rng);
        let c = grothendieck_set(&p);
        prop_assert!(is_covering_category(c.functor()).is_covering());
        let sizes: Vec<usize> = (0..p.shape().objects()).map(|j| c.fiber(j).len()).collect();
        prop_assert_eq!(&sizes, p.sizes());
        prop_assert!(sizes.iter().all(|&s| s == sizes[0]));
        let cat = grothendieck_cat(&CatValuedDiagram::from_sets(&p)).unwrap();
        prop_assert_eq!(cat.projection(), c.functor());
    }

    #[test]
    fn covering_indexing_functors_are_functorial(seed in any::<u64>(), k in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = grothendieck_set(&random_finset_diagram(&shape(k), 3, &mut rng));
        covering_to_p(&c).unwrap().validate().unwrap();
    }

    #[test]
    fn general_tensor_specializes_to_the_covering_tensor(seed in any::<u64>(), k in 0usize..8, pointed in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = grothendieck_set(&random_finset_diagram(&shape(k), 3, &mut rng));
        let p = covering_to_p(&c).unwrap();
        if pointed {
            let x = random_diagram(&PointedSetInstance, c.total(), &[1, 2], &mut rng);
            let a = general_indexed_tensor(&PointedSetInstance, &p, &x).unwrap();
            prop_assert_eq!(&a, &indexed_tensor_covering(&PointedSetInstance, &c, &x).unwrap());
            a.audit(&PointedSetInstance).unwrap();
        } else {
            let inst = MatrixInstance::new(3).unwrap();
            let x = random_diagram(&inst, c.total(), &[1, 2], &mut rng);
            let a = general_indexed_tensor(&inst, &p, &x).unwrap();
            prop_assert_eq!(&a, &indexed_tensor_covering(&inst, &c, &x).unwrap());
            a.audit(&inst).unwrap();
        }
    }

    #[test]
    fn reorderings_conjugate_the_tensor(seed in any::<u64>(), k in 0usize..8, p in 2u32..4) {
        let inst = MatrixInstance::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = grothendieck_set(&random_finset_diagram(&shape(k), 3, &mut rng));
        let pf = covering_to_p(&c).unwrap();
        let x = random_diagram(&inst, c.total(), &[1, 2], &mut rng);
        let canonical: Vec<Vec<usize>> = pf.on_objects().to_vec();
        let orders: Vec<Vec<usize>> = canonical.iter().map(|o| { let mut o = o.clone(); o.shuffle(&mut rng); o }).collect();
        let a = general_indexed_tensor(&inst, &pf, &x).unwrap();
        let b = indexed_tensor_ordered(&inst, &pf, &x, &orders).unwrap();
        let j = pf.base();
        for f in 0..j.morphisms() {
            let r_dom = reordering_iso(&inst, &x, &canonical[j.dom(f)], &orders[j.dom(f)]).unwrap();
            let r_cod = reordering_iso(&inst, &x, &canonical[j.cod(f)], &orders[j.cod(f)]).unwrap();
            prop_assert_eq!(
                inst.compose(b.morphism(f), &r_dom).unwrap(),
                inst.compose(&r_cod, a.morphism(f)).unwrap()
            );
        }
    }

    #[test]
    fn pullback_is_contravariant(seed in any::<u64>(), k in 0usize..6) {
        let s = &builtin_suite()[k];
        let ctx = NormContext::new(&random_transversal(&s.subgroup, &mut ChaCha8Rng::seed_from_u64(seed))).unwrap();
        let inst = MatrixInstance::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let x = random_diagram(&inst, ctx.subgroup_category(), &[1, 2], &mut rng);
        let composite = ctx.slot_projection().compose(ctx.beta()).unwrap();
        prop_assert_eq!(
            pullback(&composite, &x).unwrap(),
            pullback(ctx.beta(), &pullback(ctx.slot_projection(), &x).unwrap()).unwrap()
        );
        prop_assert_eq!(pullback(&normmap_core::fincat::CatFunctor::identity(ctx.subgroup_category().clone()), &x).unwrap(), x);
    }

    #[test]
    fn wreath_tensor_maps_preserve_identities_and_composition(seed in any::<u64>(), n in 2usize..4, k in 0usize..2) {
        let s = &builtin_suite()[[2, 3][k]];
        let w = wreath_p(n, &s.subgroup);
        let inst = MatrixInstance::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_diagram(&inst, w.slots().category(), &[1, 2], &mut rng);
        let theta = random_diagram_morphism(&inst, &x, &mut rng);
        let phi = random_diagram_morphism(&inst, theta.target(), &mut rng);
        let a = map_indexed_tensor(&inst, w.p(), &theta).unwrap();
        let b = map_indexed_tensor(&inst, w.p(), &phi).unwrap();
        prop_assert_eq!(a.naturality_violation(&inst).unwrap(), None);
        prop_assert_eq!(map_indexed_tensor(&inst, w.p(), &phi.compose(&inst, &theta).unwrap()).unwrap(), b.compose(&inst, &a).unwrap());
        let id = map_indexed_tensor(&inst, w.p(), &DiagramMorphism::identity(&inst, &x)).unwrap();
        prop_assert_eq!(id.clone(), DiagramMorphism::identity(&inst, id.source()));
    }

    #[test]
    fn permute_composes(seed in any::<u64>(), len in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = MatrixInstance::new(3).unwrap();
        let objects: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=2)).collect();
        let (s, t) = (random_perm(len, &mut rng), random_perm(len, &mut rng));
        let moved: Vec<usize> = (0..len).map(|k| objects[s.inverse().apply(k)]).collect();
        prop_assert_eq!(
            inst.permute(&objects, &t.compose(&s)).unwrap(),
            inst.compose(&inst.permute(&moved, &t).unwrap(), &inst.permute(&objects, &s).unwrap()).unwrap()
        );
        prop_assert_eq!(inst.permute(&objects, &Perm::identity(len)).unwrap(), inst.identity(&inst.tensor_all_objects(&objects)));
    }

    #[test]
    fn random_diagrams_are_reproducible(seed in any::<u64>(), k in 0usize..8) {
        let a: Diagram<PointedSetInstance> = random_diagram(&PointedSetInstance, &shape(k), &[1, 2], &mut ChaCha8Rng::seed_from_u64(seed));
        let b = random_diagram(&PointedSetInstance, &shape(k), &[1, 2], &mut ChaCha8Rng::seed_from_u64(seed));
        a.audit(&PointedSetInstance).unwrap();
        prop_assert_eq!(a, b);
    }
}
