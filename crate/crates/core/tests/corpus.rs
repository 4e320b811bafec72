mod common;

use common::*;
use mj2ml::harness::{corpus_inputs, run_diff, Verdict};
use mj2ml::ml::{eval_ml, pretty_print, validate_core};
use mj2ml::pipeline::{run_mj, run_ml};
use mj2ml::{FaultKind, DEFAULT_FUEL};

#[test]
fn goldens_match_direct_arithmetic() {
    assert_eq!(golden("Factorial"), vec![(1..=10).product::<i64>()]);

    let input = [20, 7, 12, 18, 2, 11, 6, 9, 19, 5];
    let mut sorted = input.to_vec();
    sorted.sort();
    for name in ["BubbleSort", "QuickSort"] {
        let mut expected = input.to_vec();
        expected.push(if name == "BubbleSort" { 99999 } else { 9999 });
        expected.extend(&sorted);
        expected.push(0);
        assert_eq!(golden(name), expected, "{name}");
    }

    // number[j] = 2j + (sz + 1 - (j - 1)) - 3 for j in 1..sz, number[0] = 0.
    let number = |sz: i64| -> Vec<i64> { (0..sz).map(|j| if j == 0 { 0 } else { 2 * j + (sz + 2 - j) - 3 }).collect() };
    let bs = number(20);
    let mut expected: Vec<i64> = bs[1..].to_vec();
    expected.push(99999);
    expected.extend([8, 19, 20, 21, 37, 38, 39, 50].map(|k| bs.contains(&k) as i64));
    expected.push(999);
    assert_eq!(golden("BinarySearch"), expected);

    let ls = number(10);
    let mut expected: Vec<i64> = ls[1..].to_vec();
    expected.push(9999);
    expected.extend([8, 12, 17, 50].map(|k| ls[1..].contains(&k) as i64));
    expected.push(55);
    assert_eq!(golden("LinearSearch"), expected);
}

#[test]
fn source_interpreter_reproduces_goldens() {
    for name in CORPUS {
        let out = run_mj(&corpus_source(name), DEFAULT_FUEL).unwrap();
        assert!(out.is_clean(), "{name}: {:?}", out.termination);
        assert_eq!(out.output, golden(name), "{name}");
    }
}

#[test]
fn translation_reproduces_goldens() {
    for name in CORPUS {
        let out = run_ml(&corpus_source(name), DEFAULT_FUEL * 20).unwrap();
        assert!(out.is_clean(), "{name}: {:?}", out.termination);
        assert_eq!(out.output, golden(name), "{name}");
    }
}

#[test]
fn translated_corpus_is_core_ml() {
    for name in CORPUS {
        let ml = translated(&corpus_source(name));
        assert_eq!(validate_core(&ml), vec![], "{name}");
    }
}

#[test]
fn printed_sml_is_deterministic_and_reference_free() {
    for name in CORPUS {
        let ml = translated(&corpus_source(name));
        let text = pretty_print(&ml);
        assert_eq!(text, pretty_print(&translated(&corpus_source(name))));
        assert!(text.starts_with("(* Generated by mj2ml"), "{name}");
        for banned in [" ref ", ":=", "Array.", " while ", "!mj_"] {
            assert!(!text.contains(banned), "{name} contains {banned:?}");
        }
    }
}

#[test]
fn evaluation_is_deterministic() {
    let ml = translated(&corpus_source("LinkedList"));
    assert_eq!(eval_ml(&ml, DEFAULT_FUEL * 20), eval_ml(&ml, DEFAULT_FUEL * 20));
}

#[test]
fn diff_over_corpus_and_faulting_program() {
    let mut inputs = corpus_inputs(&corpus_dir()).unwrap();
    inputs.extend(corpus_inputs(&root().join("faulting")).unwrap());
    let report = run_diff(inputs, DEFAULT_FUEL);
    assert_eq!(report.count(Verdict::Match), 8, "{report}");
    let faulting = report.rows.iter().find(|r| r.name == "NullDeref").unwrap();
    assert_eq!(faulting.verdict, Verdict::SkippedFaulting);
    assert_eq!(faulting.mj.as_ref().unwrap().fault().unwrap().kind, FaultKind::NullDereference);
    assert!(report.all_ok());
    let names: Vec<_> = report.rows.iter().map(|r| r.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn corrupted_file_fails_its_row() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("Good.java"), corpus_source("Factorial")).unwrap();
    std::fs::write(dir.path().join("Broken.java"), &corpus_source("Factorial")[..40]).unwrap();
    let report = run_diff(corpus_inputs(dir.path()).unwrap(), DEFAULT_FUEL);
    assert_eq!(report.rows[0].name, "Broken");
    assert_eq!(report.rows[0].verdict, Verdict::Failed);
    assert_eq!(report.rows[1].verdict, Verdict::Match);
    assert!(!report.all_ok());
}
