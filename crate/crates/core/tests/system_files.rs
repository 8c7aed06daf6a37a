use std::path::PathBuf;

use nadyn::schedule::{bundled_example, BUNDLED_EXAMPLES};
use nadyn::system::{parse_system_file, resolve_system, schedule_to_json};
use nadyn::{parse_rational, IntervalSet, Rational};

fn systems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../systems")
}

#[test]
fn shipped_files_match_bundled_examples() {
    for name in BUNDLED_EXAMPLES {
        let path = systems_dir().join(format!("{name}.json"));
        let from_file = parse_system_file(&path).unwrap();
        let bundled = bundled_example(name).unwrap();
        assert_eq!(schedule_to_json(&from_file), schedule_to_json(&bundled), "{name}");
    }
}

#[test]
fn preamble_file_applies_preamble_first() {
    let sch = parse_system_file(systems_dir().join("skew_tent_preamble.json")).unwrap();
    assert_eq!(sch.preamble().len(), 1);
    // [0,1] -> [1/4,3/4] under the contraction, then the skew tent.
    let img = sch.prefix_image(&"[0,1]".parse::<IntervalSet>().unwrap(), 1).unwrap();
    assert_eq!(img.to_string(), "[1/4,3/4]");
    let x: Rational = parse_rational("0").unwrap();
    assert_eq!(sch.map_at(1).eval(&x).unwrap(), parse_rational("0").unwrap());
}

#[test]
fn quadratic_file_is_estimate_only() {
    let path = systems_dir().join("logistic.json");
    let desc = resolve_system(path.to_str().unwrap()).unwrap();
    assert!(!desc.is_exact());
    assert!(desc.to_float().estimate_only());
    assert!(desc.to_schedule().is_err());
}
