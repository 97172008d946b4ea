//! JSON file formats.
//!
//! Permutations are lists of 1-based cycles. Category composition tables
//! hold `compose[g][f] = g ∘ f`, or `null` when `f` and `g` are not
//! composable.

use std::sync::Arc;

use normmap_core::covering::FinSetIsoDiagram;
use normmap_core::diagram::Diagram;
use normmap_core::fincat::{CatFunctor, FiniteCategory};
use normmap_core::grothendieck::CatValuedDiagram;
use normmap_core::group::{FiniteGroup, Perm, Subgroup, Transversal};
use normmap_core::indexing::IndexingFunctor;
use normmap_core::monoidal::{Matrix, MatrixInstance, MonoidalInstance, PointedMap, PointedSetInstance};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

type Cycles = Vec<Vec<usize>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupFile {
    Generators {
        generators: Vec<Cycles>,
        #[serde(default)]
        degree: Option<usize>,
    },
    Table {
        table: Vec<Vec<usize>>,
        identity: usize,
    },
}

/// Subgroups are given by element indices or, for permutation groups, by
/// generating permutations.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubgroupFile {
    Elements { elements: Vec<usize> },
    Generators { generators: Vec<Cycles> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransversalFile {
    pub reps: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MorphismEnds {
    pub dom: usize,
    pub cod: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CategoryFile {
    pub objects: usize,
    pub morphisms: Vec<MorphismEnds>,
    pub compose: Vec<Vec<Option<usize>>>,
    pub identities: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FunctorFile {
    pub ob_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

/// A functor together with its source and target.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CategoryFunctorFile {
    pub source: CategoryFile,
    pub target: CategoryFile,
    pub ob_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

/// `P: J → FinSet_iso`; `maps[f]` lists the 0-based images of `Pf`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SetDiagramFile {
    pub shape: CategoryFile,
    pub sizes: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

/// `P: J → Cat`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatDiagramFile {
    pub shape: CategoryFile,
    pub categories: Vec<CategoryFile>,
    pub functors: Vec<FunctorFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct IndexingFile {
    pub on_objects: Vec<Vec<usize>>,
    pub on_morphisms: Vec<Vec<usize>>,
}

/// Matrices are row lists; pointed maps are image tables `[0, f(1), ..]`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DiagramFile {
    pub instance: String,
    pub on_objects: Vec<usize>,
    pub on_morphisms: Vec<Value>,
}

fn invalid(what: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{what}: {e}"))
}

fn perm_from_cycles(cycles: &Cycles, degree: usize) -> Result<Perm, CliError> {
    Perm::from_cycles(cycles, degree).map_err(|e| invalid("permutation", e))
}

fn cycles_degree(gens: &[Cycles]) -> usize {
    gens.iter().flatten().flatten().copied().max().unwrap_or(1)
}

impl GroupFile {
    pub fn build(&self, cap: usize) -> Result<FiniteGroup, CliError> {
        match self {
            GroupFile::Generators { generators, degree } => {
                let degree = degree.unwrap_or_else(|| cycles_degree(generators));
                let perms = generators.iter().map(|c| perm_from_cycles(c, degree)).collect::<Result<Vec<_>, _>>()?;
                FiniteGroup::from_permutations_capped(&perms, cap).map_err(|e| invalid("group", e))
            }
            GroupFile::Table { table, identity } => {
                FiniteGroup::from_table(table, *identity).map_err(|e| invalid("group", e))
            }
        }
    }
}

impl SubgroupFile {
    pub fn build(&self, g: &Arc<FiniteGroup>) -> Result<Subgroup, CliError> {
        match self {
            SubgroupFile::Elements { elements } => Subgroup::new(g.clone(), elements).map_err(|e| invalid("subgroup", e)),
            SubgroupFile::Generators { generators } => {
                let degree = g.perm(g.identity()).map(|p| p.degree()).ok_or_else(|| {
                    CliError::Input("subgroup generators need a permutation group".into())
                })?;
                let idx = generators
                    .iter()
                    .map(|c| {
                        let p = perm_from_cycles(c, degree)?;
                        g.index_of_perm(&p).ok_or_else(|| CliError::Input(format!("subgroup generator {p} is not in G")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Subgroup::generated_by(g.clone(), &idx).map_err(|e| invalid("subgroup", e))
            }
        }
    }
}

impl TransversalFile {
    pub fn build(&self, h: &Subgroup) -> Result<Transversal, CliError> {
        Transversal::from_reps(h, self.reps.clone()).map_err(|e| invalid("transversal", e))
    }

    pub fn from_transversal(t: &Transversal) -> Self {
        TransversalFile { reps: t.reps().to_vec() }
    }
}

impl CategoryFile {
    pub fn build(&self) -> Result<FiniteCategory, CliError> {
        let dom = self.morphisms.iter().map(|m| m.dom).collect();
        let cod = self.morphisms.iter().map(|m| m.cod).collect();
        FiniteCategory::new(self.objects, dom, cod, self.identities.clone(), &self.compose)
            .map_err(|e| invalid("category", e))
    }

    pub fn from_category(c: &FiniteCategory) -> Self {
        CategoryFile {
            objects: c.objects(),
            morphisms: (0..c.morphisms()).map(|f| MorphismEnds { dom: c.dom(f), cod: c.cod(f) }).collect(),
            compose: c.compose_rows(),
            identities: c.identities().to_vec(),
        }
    }
}

impl FunctorFile {
    pub fn build(&self, source: &Arc<FiniteCategory>, target: &Arc<FiniteCategory>) -> Result<CatFunctor, CliError> {
        if self.ob_map.len() != source.objects() || self.mor_map.len() != source.morphisms() {
            return Err(CliError::Input("functor maps do not match the source category".into()));
        }
        if self.ob_map.iter().any(|&x| x >= target.objects()) || self.mor_map.iter().any(|&f| f >= target.morphisms()) {
            return Err(CliError::Input("functor maps point outside the target category".into()));
        }
        Ok(CatFunctor::new_unchecked(source.clone(), target.clone(), self.ob_map.clone(), self.mor_map.clone()))
    }

    pub fn from_functor(f: &CatFunctor) -> Self {
        FunctorFile { ob_map: f.ob_map().to_vec(), mor_map: f.mor_map().to_vec() }
    }
}

impl CategoryFunctorFile {
    /// The functor is not audited here; the covering check reports
    /// functor-law failures itself.
    pub fn build(&self) -> Result<CatFunctor, CliError> {
        let source = Arc::new(self.source.build()?);
        let target = Arc::new(self.target.build()?);
        FunctorFile { ob_map: self.ob_map.clone(), mor_map: self.mor_map.clone() }.build(&source, &target)
    }

    pub fn from_functor(f: &CatFunctor) -> Self {
        CategoryFunctorFile {
            source: CategoryFile::from_category(f.source()),
            target: CategoryFile::from_category(f.target()),
            ob_map: f.ob_map().to_vec(),
            mor_map: f.mor_map().to_vec(),
        }
    }
}

impl SetDiagramFile {
    pub fn build(&self) -> Result<FinSetIsoDiagram, CliError> {
        let shape = Arc::new(self.shape.build()?);
        let maps = self
            .maps
            .iter()
            .map(|m| Perm::from_images(m.clone()).map_err(|e| invalid("set map", e)))
            .collect::<Result<Vec<_>, _>>()?;
        FinSetIsoDiagram::new(shape, self.sizes.clone(), maps).map_err(|e| invalid("set diagram", e))
    }

    pub fn from_diagram(p: &FinSetIsoDiagram) -> Self {
        SetDiagramFile {
            shape: CategoryFile::from_category(p.shape()),
            sizes: p.sizes().to_vec(),
            maps: (0..p.shape().morphisms()).map(|f| p.map(f).images().to_vec()).collect(),
        }
    }
}

impl CatDiagramFile {
    pub fn build(&self) -> Result<CatValuedDiagram, CliError> {
        let shape = Arc::new(self.shape.build()?);
        let cats = self.categories.iter().map(|c| c.build().map(Arc::new)).collect::<Result<Vec<_>, _>>()?;
        if cats.len() != shape.objects() || self.functors.len() != shape.morphisms() {
            return Err(CliError::Input("one category per object and one functor per morphism are required".into()));
        }
        let functors = self
            .functors
            .iter()
            .enumerate()
            .map(|(f, file)| file.build(&cats[shape.dom(f)], &cats[shape.cod(f)]))
            .collect::<Result<Vec<_>, _>>()?;
        CatValuedDiagram::new(shape, cats, functors).map_err(|e| invalid("category-valued diagram", e))
    }
}

impl IndexingFile {
    pub fn from_indexing(p: &IndexingFunctor) -> Self {
        IndexingFile { on_objects: p.on_objects().to_vec(), on_morphisms: p.on_morphisms().to_vec() }
    }

    pub fn build(&self, j: Arc<FiniteCategory>, i: Arc<FiniteCategory>) -> Result<IndexingFunctor, CliError> {
        IndexingFunctor::new(j, i, self.on_objects.clone(), self.on_morphisms.clone())
            .map_err(|e| invalid("indexing functor", e))
    }
}

/// Reading and writing objects and morphisms of an instance.
pub trait JsonInstance: MonoidalInstance<Object = usize> {
    fn instance_name(&self) -> String;
    fn morphism_to_json(&self, f: &Self::Morphism) -> Value;
    fn morphism_from_json(&self, v: &Value, dom: usize, cod: usize) -> Result<Self::Morphism, CliError>;
}

impl JsonInstance for MatrixInstance {
    fn instance_name(&self) -> String {
        format!("matrix_f{}", self.prime())
    }

    fn morphism_to_json(&self, f: &Matrix) -> Value {
        serde_json::to_value(f.to_rows()).expect("rows serialize")
    }

    fn morphism_from_json(&self, v: &Value, dom: usize, cod: usize) -> Result<Matrix, CliError> {
        let rows: Vec<Vec<u32>> = serde_json::from_value(v.clone()).map_err(|e| invalid("matrix", e))?;
        let m = if rows.is_empty() { Matrix::zeros(0, dom) } else { Matrix::from_rows(&rows).map_err(|e| invalid("matrix", e))? };
        if m.rows() != cod || m.cols() != dom {
            return Err(CliError::Input(format!("matrix is {}×{}, expected {cod}×{dom}", m.rows(), m.cols())));
        }
        self.check_morphism(&m).map_err(|e| invalid("matrix", e))?;
        Ok(m)
    }
}

impl JsonInstance for PointedSetInstance {
    fn instance_name(&self) -> String {
        "pointed_set".into()
    }

    fn morphism_to_json(&self, f: &PointedMap) -> Value {
        serde_json::to_value(f.images()).expect("images serialize")
    }

    fn morphism_from_json(&self, v: &Value, dom: usize, cod: usize) -> Result<PointedMap, CliError> {
        let images: Vec<usize> = serde_json::from_value(v.clone()).map_err(|e| invalid("pointed map", e))?;
        if images.len() != dom + 1 {
            return Err(CliError::Input(format!("pointed map has {} entries, expected {}", images.len(), dom + 1)));
        }
        PointedMap::new(cod, images).map_err(|e| invalid("pointed map", e))
    }
}

impl DiagramFile {
    pub fn from_diagram<M: JsonInstance>(inst: &M, x: &Diagram<M>) -> Self {
        DiagramFile {
            instance: inst.instance_name(),
            on_objects: x.objects().to_vec(),
            on_morphisms: x.morphisms().iter().map(|f| inst.morphism_to_json(f)).collect(),
        }
    }

    /// Reads the diagram as a functor on `shape`, auditing it.
    pub fn build<M: JsonInstance>(&self, inst: &M, shape: &Arc<FiniteCategory>) -> Result<Diagram<M>, CliError> {
        if self.instance != inst.instance_name() {
            return Err(CliError::Input(format!("diagram is for {}, not {}", self.instance, inst.instance_name())));
        }
        if self.on_objects.len() != shape.objects() || self.on_morphisms.len() != shape.morphisms() {
            return Err(CliError::Input(format!(
                "diagram has {} objects and {} morphisms, the shape has {} and {}",
                self.on_objects.len(),
                self.on_morphisms.len(),
                shape.objects(),
                shape.morphisms()
            )));
        }
        let morphisms = self
            .on_morphisms
            .iter()
            .enumerate()
            .map(|(f, v)| inst.morphism_from_json(v, self.on_objects[shape.dom(f)], self.on_objects[shape.cod(f)]))
            .collect::<Result<Vec<_>, _>>()?;
        Diagram::new(inst, shape.clone(), self.on_objects.clone(), morphisms).map_err(|e| invalid("diagram", e))
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| invalid(what, e))
}

pub fn read<T: for<'de> Deserialize<'de>>(path: &std::path::Path, what: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse(&text, what)
}
