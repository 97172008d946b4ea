//! The subcommands, as functions from configuration to serializable output.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use normmap_core::covering::{grothendieck_set, is_covering_category};
use normmap_core::diagram::Diagram;
use normmap_core::group::{FiniteGroup, Subgroup, Transversal, TransversalPolicy};
use normmap_core::monoidal::{MatrixInstance, PointedSetInstance};
use normmap_core::norms::{gm_norm, hhr_norm, verify_theorem, NormContext, TheoremReport};
use normmap_core::random::random_diagram;
use normmap_core::suite::{builtin_suite, suite_instance, suite_names};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CliError;
use crate::json::{self, CategoryFunctorFile, DiagramFile, GroupFile, JsonInstance, SubgroupFile, TransversalFile};

pub const DEFAULT_CAP: usize = 100_000;
pub const DEFAULT_SAMPLES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceName {
    MatrixF2,
    MatrixF3,
    PointedSet,
}

impl InstanceName {
    pub const DEFAULT: [InstanceName; 2] = [InstanceName::MatrixF2, InstanceName::PointedSet];

    pub fn parse(name: &str) -> Result<Self, CliError> {
        match name {
            "matrix_f2" => Ok(InstanceName::MatrixF2),
            "matrix_f3" => Ok(InstanceName::MatrixF3),
            "pointed_set" => Ok(InstanceName::PointedSet),
            other => Err(CliError::Input(format!("unknown instance {other:?} (expected matrix_f2, matrix_f3 or pointed_set)"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            InstanceName::MatrixF2 => "matrix_f2",
            InstanceName::MatrixF3 => "matrix_f3",
            InstanceName::PointedSet => "pointed_set",
        }
    }
}

/// Where the `(G, H, t)` triples come from.
#[derive(Clone, Debug)]
pub enum PairSource {
    /// A builtin pair by name, or every builtin pair.
    Suite(Option<String>),
    Files { group: PathBuf, subgroup: PathBuf, transversal: Option<PathBuf> },
}

#[derive(Clone, Debug)]
pub struct Pair {
    pub name: String,
    pub group_name: String,
    pub subgroup_name: String,
    pub transversal: Transversal,
}

fn minimal(h: &Subgroup) -> Result<Transversal, CliError> {
    Ok(Transversal::new(h, TransversalPolicy::Minimal)?)
}

fn file_stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

pub fn resolve_pairs(source: &PairSource, cap: usize) -> Result<Vec<Pair>, CliError> {
    match source {
        PairSource::Suite(None) => builtin_suite()
            .into_iter()
            .map(|s| {
                Ok(Pair {
                    name: s.name.into(),
                    group_name: s.group_name.into(),
                    subgroup_name: s.subgroup_name.into(),
                    transversal: minimal(&s.subgroup)?,
                })
            })
            .collect(),
        PairSource::Suite(Some(name)) => {
            let s = suite_instance(name).ok_or_else(|| {
                CliError::Input(format!("unknown suite entry {name:?} (expected one of {})", suite_names().join(", ")))
            })?;
            Ok(vec![Pair {
                name: s.name.into(),
                group_name: s.group_name.into(),
                subgroup_name: s.subgroup_name.into(),
                transversal: minimal(&s.subgroup)?,
            }])
        }
        PairSource::Files { group, subgroup, transversal } => {
            let g: GroupFile = json::read(group, "group")?;
            let g = Arc::new(g.build(cap)?);
            let h: SubgroupFile = json::read(subgroup, "subgroup")?;
            let h = h.build(&g)?;
            let t = match transversal {
                Some(path) => json::read::<TransversalFile>(path, "transversal")?.build(&h)?,
                None => minimal(&h)?,
            };
            Ok(vec![Pair {
                name: format!("{}/{}", file_stem(group), file_stem(subgroup)),
                group_name: group_label(&g, group),
                subgroup_name: file_stem(subgroup),
                transversal: t,
            }])
        }
    }
}

fn group_label(g: &FiniteGroup, path: &Path) -> String {
    format!("{} (order {})", file_stem(path), g.order())
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CounterexampleJson {
    pub stage: String,
    pub morphism: usize,
    pub label: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ReportJson {
    pub pair: String,
    #[serde(rename = "G")]
    pub g: String,
    #[serde(rename = "H")]
    pub h: String,
    pub transversal: Vec<usize>,
    pub instance: String,
    pub sample: usize,
    pub upper_triangle: bool,
    pub lower_square: bool,
    pub total: bool,
    pub counterexample: Option<CounterexampleJson>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerifyOutput {
    pub seed: u64,
    pub samples: usize,
    pub all_passed: bool,
    pub reports: Vec<ReportJson>,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub source: PairSource,
    pub instances: Vec<InstanceName>,
    pub seed: u64,
    pub samples: usize,
    pub cap: usize,
}

fn report_json(pair: &Pair, instance: &str, sample: usize, r: TheoremReport) -> ReportJson {
    ReportJson {
        pair: pair.name.clone(),
        g: pair.group_name.clone(),
        h: pair.subgroup_name.clone(),
        transversal: pair.transversal.reps().to_vec(),
        instance: instance.into(),
        sample,
        upper_triangle: r.upper_triangle,
        lower_square: r.lower_square,
        total: r.total,
        counterexample: r.counterexample.map(|c| CounterexampleJson {
            stage: c.stage.as_str().into(),
            morphism: c.morphism,
            label: c.label,
            lhs: c.lhs,
            rhs: c.rhs,
        }),
    }
}

/// The generator for one `(pair, instance)` cell: the seed picks the key,
/// the cell picks the stream.
pub fn cell_rng(seed: u64, pair: usize, instance: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((pair as u64) << 8 | instance as u64);
    rng
}

fn run_samples<M: JsonInstance>(
    inst: &M,
    pair: &Pair,
    ctx: &NormContext,
    rng: &mut ChaCha8Rng,
    samples: usize,
) -> Result<Vec<ReportJson>, CliError> {
    (0..samples)
        .map(|k| {
            let x = random_diagram(inst, ctx.subgroup_category(), &[1, 2], rng);
            Ok(report_json(pair, &inst.instance_name(), k, verify_theorem(inst, ctx, &x)?))
        })
        .collect()
}

pub fn cmd_verify_theorem(config: &VerifyConfig) -> Result<VerifyOutput, CliError> {
    let pairs = resolve_pairs(&config.source, config.cap)?;
    let mut reports = Vec::new();
    for (k, pair) in pairs.iter().enumerate() {
        let ctx = NormContext::new(&pair.transversal)?;
        for (m, name) in config.instances.iter().enumerate() {
            let mut rng = cell_rng(config.seed, k, m);
            let batch = match name {
                InstanceName::MatrixF2 => run_samples(&MatrixInstance::new(2)?, pair, &ctx, &mut rng, config.samples)?,
                InstanceName::MatrixF3 => run_samples(&MatrixInstance::new(3)?, pair, &ctx, &mut rng, config.samples)?,
                InstanceName::PointedSet => run_samples(&PointedSetInstance, pair, &ctx, &mut rng, config.samples)?,
            };
            reports.extend(batch);
        }
    }
    Ok(VerifyOutput {
        seed: config.seed,
        samples: config.samples,
        all_passed: reports.iter().all(|r| r.total),
        reports,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ViolationJson {
    pub kind: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CoveringOutput {
    pub covering: bool,
    pub fiber_size: Option<usize>,
    pub violation: Option<ViolationJson>,
    pub warnings: Vec<String>,
}

pub fn cmd_check_covering(path: &Path) -> Result<CoveringOutput, CliError> {
    let file: CategoryFunctorFile = json::read(path, "functor")?;
    let p = file.build()?;
    let report = is_covering_category(&p);
    let mut warnings = Vec::new();
    if report.fiber_size == Some(0) {
        warnings.push("fibers are empty (n = 0); the covering conditions hold vacuously".into());
    }
    Ok(CoveringOutput {
        covering: report.is_covering(),
        fiber_size: report.fiber_size,
        violation: report.violation.map(|v| ViolationJson { kind: v.kind().into(), detail: v.to_string() }),
        warnings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrothendieckMode {
    Set,
    Cat,
}

/// The projection `∫P → J`, with both categories spelled out.
pub fn cmd_grothendieck(path: &Path, mode: GrothendieckMode, cap: usize) -> Result<CategoryFunctorFile, CliError> {
    match mode {
        GrothendieckMode::Set => {
            let p = json::read::<json::SetDiagramFile>(path, "set-valued diagram")?.build()?;
            Ok(CategoryFunctorFile::from_functor(grothendieck_set(&p).functor()))
        }
        GrothendieckMode::Cat => {
            let p = json::read::<json::CatDiagramFile>(path, "category-valued diagram")?.build()?;
            let shape = p.shape();
            let bound: usize = (0..shape.morphisms())
                .map(|f| p.category(shape.dom(f)).objects() * p.category(shape.cod(f)).morphisms())
                .sum();
            if bound > cap {
                return Err(CliError::Input(format!("construction would exceed the cap of {cap} morphisms")));
            }
            let g = normmap_core::grothendieck::grothendieck_cat(&p)?;
            Ok(CategoryFunctorFile::from_functor(g.projection()))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Hhr,
    Gm,
    Both,
}

#[derive(Clone, Debug)]
pub struct NormConfig {
    pub source: PairSource,
    pub instance: InstanceName,
    pub input: PathBuf,
    pub construction: Construction,
    pub cap: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum NormOutput {
    Single(DiagramFile),
    Both(BothOutput),
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BothOutput {
    pub hhr: DiagramFile,
    pub gm: DiagramFile,
    pub verdict: String,
}

/// The serialized result and whether it passed (only `Both` can fail).
pub fn cmd_norm(config: &NormConfig) -> Result<(NormOutput, bool), CliError> {
    let pairs = resolve_pairs(&config.source, config.cap)?;
    let [pair] = pairs.as_slice() else {
        return Err(CliError::Input("norm needs exactly one (G, H) pair; pass --suite NAME or --group/--subgroup".into()));
    };
    let ctx = NormContext::new(&pair.transversal)?;
    let file: DiagramFile = json::read(&config.input, "diagram")?;
    match config.instance {
        InstanceName::MatrixF2 => norm_with(&MatrixInstance::new(2)?, &ctx, &file, config.construction),
        InstanceName::MatrixF3 => norm_with(&MatrixInstance::new(3)?, &ctx, &file, config.construction),
        InstanceName::PointedSet => norm_with(&PointedSetInstance, &ctx, &file, config.construction),
    }
}

fn norm_with<M: JsonInstance>(
    inst: &M,
    ctx: &NormContext,
    file: &DiagramFile,
    construction: Construction,
) -> Result<(NormOutput, bool), CliError> {
    let x: Diagram<M> = file.build(inst, ctx.subgroup_category())?;
    let single = |d: &Diagram<M>| NormOutput::Single(DiagramFile::from_diagram(inst, d));
    Ok(match construction {
        Construction::Hhr => (single(&hhr_norm(inst, ctx, &x)?), true),
        Construction::Gm => (single(&gm_norm(inst, ctx, &x)?), true),
        Construction::Both => {
            let (a, b) = (hhr_norm(inst, ctx, &x)?, gm_norm(inst, ctx, &x)?);
            let equal = a == b;
            let out = BothOutput {
                hhr: DiagramFile::from_diagram(inst, &a),
                gm: DiagramFile::from_diagram(inst, &b),
                verdict: if equal { "equal" } else { "different" }.into(),
            };
            (NormOutput::Both(out), equal)
        }
    })
}

/// Pretty JSON with a trailing newline, written through a temporary file
/// in the destination directory and renamed into place.
pub fn write_json_atomic<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("output serializes");
    text.push('\n');
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    std::io::Write::write_all(&mut tmp, text.as_bytes())?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}
