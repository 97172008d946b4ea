//! The builtin `(G, H)` pairs, given by permutation generators.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{validation, Result};
use crate::group::{FiniteGroup, Perm, Subgroup};

/// One builtin pair.
#[derive(Clone, Debug)]
pub struct SuiteInstance {
    pub name: &'static str,
    pub group_name: &'static str,
    pub subgroup_name: &'static str,
    pub group: Arc<FiniteGroup>,
    pub subgroup: Subgroup,
}

struct Spec {
    name: &'static str,
    group_name: &'static str,
    subgroup_name: &'static str,
    degree: usize,
    generators: &'static [&'static [&'static [usize]]],
    subgroup_generators: &'static [&'static [&'static [usize]]],
}

const SPECS: &[Spec] = &[
    Spec {
        name: "c2-e",
        group_name: "C2",
        subgroup_name: "e",
        degree: 2,
        generators: &[&[&[1, 2]]],
        subgroup_generators: &[],
    },
    Spec {
        name: "c4-c2",
        group_name: "C4",
        subgroup_name: "C2",
        degree: 4,
        generators: &[&[&[1, 2, 3, 4]]],
        subgroup_generators: &[&[&[1, 3], &[2, 4]]],
    },
    Spec {
        name: "s3-c2",
        group_name: "S3",
        subgroup_name: "C2",
        degree: 3,
        generators: &[&[&[1, 2, 3]], &[&[1, 2]]],
        subgroup_generators: &[&[&[1, 2]]],
    },
    Spec {
        name: "s3-c3",
        group_name: "S3",
        subgroup_name: "C3",
        degree: 3,
        generators: &[&[&[1, 2, 3]], &[&[1, 2]]],
        subgroup_generators: &[&[&[1, 2, 3]]],
    },
    Spec {
        name: "d4-center",
        group_name: "D4",
        subgroup_name: "Z(D4)",
        degree: 4,
        generators: &[&[&[1, 2, 3, 4]], &[&[1, 3]]],
        subgroup_generators: &[&[&[1, 3], &[2, 4]]],
    },
    Spec {
        name: "q8-c4",
        group_name: "Q8",
        subgroup_name: "C4",
        degree: 8,
        generators: &[&[&[1, 3, 2, 4], &[5, 7, 6, 8]], &[&[1, 5, 2, 6], &[3, 8, 4, 7]]],
        subgroup_generators: &[&[&[1, 3, 2, 4], &[5, 7, 6, 8]]],
    },
];

fn perm(cycles: &[&[usize]], degree: usize) -> Result<Perm> {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Perm::from_cycles(&cycles, degree)
}

fn build(spec: &Spec) -> Result<SuiteInstance> {
    let gens = spec.generators.iter().map(|c| perm(c, spec.degree)).collect::<Result<Vec<_>>>()?;
    let group = Arc::new(FiniteGroup::from_permutations(&gens)?);
    let mut sub = Vec::new();
    for c in spec.subgroup_generators {
        let p = perm(c, spec.degree)?;
        sub.push(group.index_of_perm(&p).ok_or_else(|| validation!("{}: subgroup generator {p} not in G", spec.name))?);
    }
    let subgroup = Subgroup::generated_by(group.clone(), &sub)?;
    Ok(SuiteInstance {
        name: spec.name,
        group_name: spec.group_name,
        subgroup_name: spec.subgroup_name,
        group,
        subgroup,
    })
}

/// Every builtin pair, in a fixed order.
pub fn builtin_suite() -> Vec<SuiteInstance> {
    SPECS.iter().map(|s| build(s).expect("builtin data is valid")).collect()
}

pub fn suite_names() -> Vec<&'static str> {
    SPECS.iter().map(|s| s.name).collect()
}

pub fn suite_instance(name: &str) -> Option<SuiteInstance> {
    SPECS.iter().find(|s| s.name == name).map(|s| build(s).expect("builtin data is valid"))
}
