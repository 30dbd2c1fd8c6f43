//! Frozen outputs for every shipped example. Set `ZIPSECTIONS_BLESS=1` to
//! rewrite them after an intended change.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use zipsections_cli::emit::json;
use zipsections_cli::problem::ProblemSpec;
use zipsections_cli::run::{run, Settings};

fn examples() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples");
    let mut out: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|x| x == "json")).collect();
    out.sort();
    out
}

fn output(path: &Path) -> String {
    let spec = ProblemSpec::from_json(&fs::read_to_string(path).unwrap()).unwrap();
    json(&run(&spec, spec.task.expect("examples name their task"), Settings::default()).unwrap())
}

#[test]
fn examples_match_golden_files() {
    let bless = std::env::var_os("ZIPSECTIONS_BLESS").is_some();
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let list = examples();
    assert!(list.len() >= 5);
    for ex in list {
        let got = output(&ex);
        let file = golden.join(ex.file_name().unwrap());
        if bless {
            fs::write(&file, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&file).unwrap_or_else(|_| panic!("missing golden file {}", file.display()));
        assert_eq!(got, want, "{}", ex.display());
    }
}

#[test]
fn every_catalog_entry_has_an_example() {
    let names: Vec<String> = examples().iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect();
    for entry in zipsections::corpus::CATALOG_NAMES {
        assert!(names.iter().any(|n| n.starts_with(&format!("{entry}_"))), "{entry}");
    }
}

#[test]
fn golden_json_round_trips_byte_for_byte() {
    for ex in examples() {
        let text = output(&ex);
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(json(&back), text, "{}", ex.display());
    }
}
