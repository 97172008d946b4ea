use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use normmap::json::{
    CatDiagramFile, CategoryFile, CategoryFunctorFile, DiagramFile, FunctorFile, SetDiagramFile, TransversalFile,
};
use normmap_core::covering::FinSetIsoDiagram;
use normmap_core::fincat::{one_object_category, FiniteCategory};
use normmap_core::group::{FiniteGroup, Transversal, TransversalPolicy};
use normmap_core::groupoid::{GSet, SlotGroupoid, TranslationGroupoid};
use normmap_core::suite::suite_instance;
use serde_json::Value;
use tempfile::TempDir;

fn normmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normmap")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn write_json<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> PathBuf {
    write(dir, name, &serde_json::to_string_pretty(value).unwrap())
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const S3: &str = r#"{"generators": [[[1, 2, 3]], [[1, 2]]]}"#;

#[test]
fn builtin_suite_passes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let o = normmap(&["verify-theorem", "--suite", "--seed", "0", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report = read_json(&out);
    assert_eq!(report["all_passed"], true);
    assert_eq!(report["reports"].as_array().unwrap().len(), 6 * 2 * 20);
}

#[test]
fn identical_seeds_give_identical_bytes() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for path in [&a, &b] {
        assert_eq!(normmap(&["verify-theorem", "--suite", "--seed", "7", "--out", s(path)]).status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let c = dir.path().join("c.json");
    normmap(&["verify-theorem", "--suite", "--seed", "8", "--out", s(&c)]);
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn single_pair_from_files() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "s3.json", S3);
    let h = write(dir.path(), "c2.json", r#"{"generators": [[[1, 2]]]}"#);
    let out = dir.path().join("report.json");
    let o = normmap(&[
        "verify-theorem", "--group", s(&g), "--subgroup", s(&h), "--instance", "matrix_f3", "--samples", "3", "--out", s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report = read_json(&out);
    let reports = report["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert!(reports.iter().all(|r| r["total"] == true && r["counterexample"].is_null()));
    assert_eq!(reports[0]["instance"], "matrix_f3");

    let sub = suite_instance("s3-c2").unwrap().subgroup;
    let alt = Transversal::new(&sub, TransversalPolicy::Maximal).unwrap();
    let t = write_json(dir.path(), "t.json", &TransversalFile::from_transversal(&alt));
    let o = normmap(&["verify-theorem", "--group", s(&g), "--subgroup", s(&h), "--transversal", s(&t), "--samples", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "s3.json", S3);
    let h = write(dir.path(), "c2.json", r#"{"generators": [[[1, 2]]]}"#);
    // two representatives of the same coset
    let bad = write(dir.path(), "t.json", r#"{"reps": [0, 1, 1]}"#);
    let o = normmap(&["verify-theorem", "--group", s(&g), "--subgroup", s(&h), "--transversal", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let not_first = write(dir.path(), "t2.json", r#"{"reps": [3, 2, 4]}"#);
    assert_eq!(normmap(&["verify-theorem", "--group", s(&g), "--subgroup", s(&h), "--transversal", s(&not_first)]).status.code(), Some(2));
    let garbage = write(dir.path(), "g.json", "{not json");
    assert_eq!(normmap(&["verify-theorem", "--group", s(&garbage), "--subgroup", s(&h)]).status.code(), Some(2));
    assert_eq!(normmap(&["verify-theorem", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(normmap(&["verify-theorem", "--suite", "--instance", "matrix_f7"]).status.code(), Some(2));
    assert_eq!(normmap(&["check-covering", s(&dir.path().join("missing.json"))]).status.code(), Some(2));
}

#[test]
fn coset_groupoid_projection_is_a_covering() {
    let dir = TempDir::new().unwrap();
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let bg = TranslationGroupoid::new(GSet::natural(s3.clone()).unwrap());
    let p = bg.projection(Arc::new(one_object_category(&s3))).unwrap();
    let file = write_json(dir.path(), "p.json", &CategoryFunctorFile::from_functor(&p));
    let out = dir.path().join("report.json");
    let o = normmap(&["check-covering", s(&file), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let report = read_json(&out);
    assert_eq!(report["covering"], true);
    assert_eq!(report["fiber_size"], 3);
}

#[test]
fn slot_projection_is_not_a_covering() {
    let dir = TempDir::new().unwrap();
    let h = suite_instance("s3-c3").unwrap().subgroup;
    let slots = SlotGroupoid::new(2, &h);
    let file = write_json(dir.path(), "p.json", &CategoryFunctorFile::from_functor(slots.projection()));
    let out = dir.path().join("report.json");
    assert_eq!(normmap(&["check-covering", s(&file), "--out", s(&out)]).status.code(), Some(1));
    let report = read_json(&out);
    assert_eq!(report["covering"], false);
    assert_eq!(report["violation"]["kind"], "non_discrete_fiber");
}

#[test]
fn empty_category_over_the_point_passes_with_a_warning() {
    let dir = TempDir::new().unwrap();
    let empty = FiniteCategory::discrete(0);
    let file = CategoryFunctorFile {
        source: CategoryFile::from_category(&empty),
        target: CategoryFile::from_category(&FiniteCategory::terminal()),
        ob_map: vec![],
        mor_map: vec![],
    };
    let path = write_json(dir.path(), "p.json", &file);
    let o = normmap(&["check-covering", s(&path)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n = 0"));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["fiber_size"], 0);
}

fn c2_category() -> FiniteCategory {
    one_object_category(&FiniteGroup::symmetric(2))
}

#[test]
fn grothendieck_of_constant_diagrams() {
    let dir = TempDir::new().unwrap();
    let j = FiniteCategory::arrow();
    let c = c2_category();
    let constant = CatDiagramFile {
        shape: CategoryFile::from_category(&j),
        categories: vec![CategoryFile::from_category(&c); 2],
        functors: (0..3).map(|_| FunctorFile { ob_map: vec![0], mor_map: vec![0, 1] }).collect(),
    };
    let input = write_json(dir.path(), "p.json", &constant);
    let out = dir.path().join("total.json");
    assert_eq!(normmap(&["grothendieck", "--mode", "cat", s(&input), "--out", s(&out)]).status.code(), Some(0));
    let total = read_json(&out);
    assert_eq!(total["source"]["objects"], 2);
    assert_eq!(total["source"]["morphisms"].as_array().unwrap().len(), 2 * 3);

    let sets = FinSetIsoDiagram::constant(Arc::new(j.clone()), 3);
    let input = write_json(dir.path(), "sets.json", &SetDiagramFile::from_diagram(&sets));
    let o = normmap(&["grothendieck", s(&input)]);
    assert_eq!(o.status.code(), Some(0));
    let total: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(total["source"]["objects"], 3 * 2);
}

#[test]
fn grothendieck_of_points_is_the_base() {
    let dir = TempDir::new().unwrap();
    let j = Arc::new(c2_category());
    let points = FinSetIsoDiagram::constant(j.clone(), 1);
    let input = write_json(dir.path(), "p.json", &SetDiagramFile::from_diagram(&points));
    let out = dir.path().join("total.json");
    assert_eq!(normmap(&["grothendieck", s(&input), "--out", s(&out)]).status.code(), Some(0));
    let total: CategoryFunctorFile = serde_json::from_value(read_json(&out)).unwrap();
    assert_eq!(total.source.build().unwrap(), *j);
    assert_eq!(total.mor_map, vec![0, 1]);
}

#[test]
fn grothendieck_output_round_trips_through_the_covering_check() {
    let dir = TempDir::new().unwrap();
    let j = Arc::new(c2_category());
    let swap = normmap_core::group::Perm::from_images(vec![1, 0, 2]).unwrap();
    let p = FinSetIsoDiagram::new(j, vec![3], vec![normmap_core::group::Perm::identity(3), swap]).unwrap();
    let input = write_json(dir.path(), "p.json", &SetDiagramFile::from_diagram(&p));
    let out = dir.path().join("total.json");
    assert_eq!(normmap(&["grothendieck", s(&input), "--out", s(&out)]).status.code(), Some(0));
    let o = normmap(&["check-covering", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["fiber_size"], 3);
}

fn matrix_x(dir: &Path, name: &str, rows: &[&str]) -> PathBuf {
    let morphisms: Vec<Value> = rows.iter().map(|r| serde_json::from_str(r).unwrap()).collect();
    let dim = morphisms[0].as_array().unwrap().len();
    write_json(dir, name, &DiagramFile { instance: "matrix_f2".into(), on_objects: vec![dim], on_morphisms: morphisms })
}

#[test]
fn both_constructions_agree() {
    let dir = TempDir::new().unwrap();
    // s3-c2: H = {e, (1 2)}
    let x = matrix_x(dir.path(), "x.json", &["[[1,0],[0,1]]", "[[1,1],[0,1]]"]);
    let out = dir.path().join("norm.json");
    let o = normmap(&["norm", "--suite", "s3-c2", "--x", s(&x), "--construction", "both", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let result = read_json(&out);
    assert_eq!(result["verdict"], "equal");
    assert_eq!(result["hhr"], result["gm"]);
    assert_eq!(result["hhr"]["on_objects"], serde_json::json!([8]));
}

#[test]
fn index_one_returns_the_input() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "c2.json", r#"{"generators": [[[1, 2]]]}"#);
    let h = write(dir.path(), "all.json", r#"{"elements": [0, 1]}"#);
    let x = matrix_x(dir.path(), "x.json", &["[[1,0],[0,1]]", "[[0,1],[1,0]]"]);
    for construction in ["hhr", "gm"] {
        let out = dir.path().join(format!("{construction}.json"));
        let o = normmap(&["norm", "--group", s(&g), "--subgroup", s(&h), "--x", s(&x), "--construction", construction, "--out", s(&out)]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(read_json(&out), read_json(&x));
        let mut expected = fs::read_to_string(&x).unwrap();
        expected.push('\n');
        assert_eq!(fs::read_to_string(&out).unwrap(), expected);
    }
}

#[test]
fn trivial_one_dimensional_input_gives_identities() {
    let dir = TempDir::new().unwrap();
    let x = matrix_x(dir.path(), "x.json", &["[[1]]", "[[1]]", "[[1]]", "[[1]]"]);
    let o = normmap(&["norm", "--suite", "q8-c4", "--x", s(&x), "--construction", "gm"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let result: Value = serde_json::from_slice(&o.stdout).unwrap();
    let ms = result["on_morphisms"].as_array().unwrap();
    assert_eq!(ms.len(), 8);
    assert!(ms.iter().all(|m| *m == serde_json::json!([[1]])));
}

#[test]
fn shape_mismatch_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let x = matrix_x(dir.path(), "x.json", &["[[1]]", "[[1]]", "[[1]]"]);
    assert_eq!(normmap(&["norm", "--suite", "s3-c2", "--x", s(&x)]).status.code(), Some(2));
    let not_functor = matrix_x(dir.path(), "y.json", &["[[1,0],[0,1]]", "[[1,1],[1,1]]"]);
    assert_eq!(normmap(&["norm", "--suite", "s3-c2", "--x", s(&not_functor)]).status.code(), Some(2));
    assert_eq!(normmap(&["norm", "--suite", "--x", s(&x)]).status.code(), Some(2));
}
