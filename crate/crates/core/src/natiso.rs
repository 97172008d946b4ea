//! Backtracking search for natural isomorphisms between diagrams.

use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{Diagram, DiagramMorphism};
use crate::error::{shape, Result};
use crate::fincat::same_category;
use crate::monoidal::MonoidalInstance;

pub const DEFAULT_SEARCH_CAP: usize = 1_000_000;

/// Outcome of [`find_natural_isomorphism`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NatIsoSearch<M: MonoidalInstance> {
    Found(DiagramMorphism<M>),
    /// The search space was enumerated completely.
    NotFound,
    /// Some object had more than `cap` candidate isomorphisms, or the
    /// search visited more than `cap` partial assignments.
    CapExceeded,
}

impl<M: MonoidalInstance> NatIsoSearch<M> {
    pub fn found(&self) -> Option<&DiagramMorphism<M>> {
        match self {
            NatIsoSearch::Found(theta) => Some(theta),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            NatIsoSearch::Found(_) => "found",
            NatIsoSearch::NotFound => "not_found",
            NatIsoSearch::CapExceeded => "cap_exceeded",
        }
    }
}

/// Looks for an invertible natural transformation `x → y`.
pub fn find_natural_isomorphism<M: MonoidalInstance>(
    inst: &M,
    x: &Diagram<M>,
    y: &Diagram<M>,
    cap: usize,
) -> Result<NatIsoSearch<M>> {
    if !same_category(x.shape(), y.shape()) {
        return Err(shape!("diagrams live on different shapes"));
    }
    let shape = x.shape();
    let mut candidates = Vec::with_capacity(shape.objects());
    for (a, b) in x.objects().iter().zip(y.objects()) {
        match inst.isomorphisms(a, b, cap) {
            Some(c) if c.is_empty() => return Ok(NatIsoSearch::NotFound),
            Some(c) => candidates.push(c),
            None => return Ok(NatIsoSearch::CapExceeded),
        }
    }
    // Each shape morphism is checked once both ends are assigned.
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); shape.objects()];
    for f in 0..shape.morphisms() {
        if !shape.is_identity(f) {
            due[shape.dom(f).max(shape.cod(f))].push(f);
        }
    }
    let mut search = Search { inst, x, y, candidates: &candidates, due: &due, cap, nodes: 0 };
    let mut chosen = vec![None; shape.objects()];
    Ok(match search.run(0, &mut chosen) {
        None => NatIsoSearch::CapExceeded,
        Some(false) => NatIsoSearch::NotFound,
        Some(true) => {
            let components = chosen.into_iter().map(|c| c.expect("assigned")).collect();
            NatIsoSearch::Found(DiagramMorphism::new_unchecked(x.clone(), y.clone(), components)?)
        }
    })
}

struct Search<'a, M: MonoidalInstance> {
    inst: &'a M,
    x: &'a Diagram<M>,
    y: &'a Diagram<M>,
    candidates: &'a [Vec<M::Morphism>],
    due: &'a [Vec<usize>],
    cap: usize,
    nodes: usize,
}

impl<M: MonoidalInstance> Search<'_, M> {
    fn run(&mut self, k: usize, chosen: &mut Vec<Option<M::Morphism>>) -> Option<bool> {
        if k == chosen.len() {
            return Some(true);
        }
        let shape = self.x.shape();
        for c in &self.candidates[k] {
            self.nodes += 1;
            if self.nodes > self.cap {
                return None;
            }
            chosen[k] = Some(c.clone());
            let natural = self.due[k].iter().all(|&f| {
                let a = chosen[shape.dom(f)].as_ref().expect("assigned");
                let b = chosen[shape.cod(f)].as_ref().expect("assigned");
                self.inst.compose(b, self.x.morphism(f)).ok() == self.inst.compose(self.y.morphism(f), a).ok()
            });
            if natural && self.run(k + 1, chosen)? {
                return Some(true);
            }
        }
        chosen[k] = None;
        Some(false)
    }
}
