use std::path::PathBuf;
use std::process::{Command, Output};

use deformed_cli::report::{Format, IsoOutcome, Payload, Report};

fn deform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deform"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> (Report, Output) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = deform(&full);
    let report: Report = serde_json::from_str(&stdout(&out)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out)));
    (report, out)
}

#[test]
fn idempotents_of_partial_injection() {
    let (report, out) = json(&["idempotents", "IS", "3", "[2,-,1]"]);
    assert!(out.status.success());
    assert!(report.passed);
    let Payload::Idempotents {
        idempotents,
        brute_force,
        formula,
    } = report.result
    else {
        panic!("wrong payload")
    };
    assert_eq!((brute_force, formula), (4, Some(4)));
    assert_eq!(idempotents.len(), 4);
    assert!(idempotents.contains(&"[-,-,-]".to_string()));
}

#[test]
fn bicyclic_chain_prefix() {
    let out = deform(&["idempotents", "B", "b^2 a^1", "--chain", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for e in ["ε_0 = b^1 a^2", "ε_1 = b^2 a^3", "ε_2 = b^3 a^4"] {
        assert!(text.contains(e), "{text}");
    }
}

#[test]
fn idempotents_of_transformation_by_table_scan() {
    let (report, _) = json(&["idempotents", "T", "2", "[1,1]"]);
    let Payload::Idempotents {
        idempotents, formula, ..
    } = report.result
    else {
        panic!("wrong payload")
    };
    assert_eq!(idempotents, vec!["[1,1]", "[2,2]"]);
    assert_eq!(formula, None);
}

#[test]
fn classify_counts() {
    let sizes = |report: Report| match report.result {
        Payload::Classes {
            classes,
            expected_classes,
        } => (classes.iter().map(|c| c.members).collect::<Vec<_>>(), expected_classes),
        _ => panic!("wrong payload"),
    };
    assert_eq!(sizes(json(&["classify", "IS", "3"]).0), (vec![1, 9, 18, 6], 4));
    assert_eq!(sizes(json(&["classify", "T", "3"]).0), (vec![6, 18, 3], 3));
    let (members, expected) = sizes(json(&["classify", "T", "4"]).0);
    assert_eq!((members.len(), expected), (5, 5));
}

#[test]
fn witnesses() {
    let out = deform(&["witness", "IS", "2", "[2,-]", "[-,2]", "--check"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("homomorphism check: PASS"));

    let (report, out) = json(&["witness", "T", "3", "[1,1,2]", "[3,2,2]", "--check"]);
    assert!(out.status.success());
    assert_eq!(
        report.result,
        Payload::Witness {
            alpha: "[1,1,2]".into(),
            beta: "[3,2,2]".into(),
            tau: "[3,1,2]".into(),
            pi: "[2,3,1]".into(),
            sandwich_identity: true,
            homomorphism: Some(true),
        }
    );
}

#[test]
fn witness_type_mismatch_is_a_criterion_failure() {
    let out = deform(&["witness", "T", "3", "[1,1,2]", "[1,2,3]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("type mismatch (1,1,0) vs (3,0,0)"),
        "{}",
        stderr(&out)
    );

    let out = deform(&["witness", "IS", "2", "[1,2]", "[1,-]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("rank mismatch 2 vs 1"));
}

fn checked(report: &Report) -> Vec<u64> {
    match &report.result {
        Payload::Checks { checks } => checks.iter().map(|c| c.checked).collect(),
        _ => panic!("wrong payload"),
    }
}

#[test]
fn verify_examples() {
    let (r, out) = json(&["verify", "lemma1", "--n", "4"]);
    assert!(out.status.success() && r.passed);
    assert_eq!(checked(&r), vec![209]);

    let (r, _) = json(&["verify", "thm3", "--grid", "5"]);
    assert!(r.passed);
    assert!(checked(&r).iter().all(|&c| c == 36));

    let (r, _) = json(&["verify", "type-recovery", "--n", "4"]);
    assert!(r.passed);
    assert_eq!(checked(&r), vec![256]);
}

#[test]
fn verify_every_suite_at_default_bounds() {
    for id in [
        "lemma1",
        "thm1",
        "lemma2-eq1",
        "prop1",
        "prop2",
        "thm4",
        "oracle-crosscheck",
    ] {
        let out = deform(&["verify", id]);
        assert!(out.status.success(), "{id}: {}", stdout(&out));
        assert!(stdout(&out).lines().filter(|l| l.starts_with("FAIL")).count() == 0);
    }
}

#[test]
fn counts() {
    let rows = |n: &str| {
        let (r, out) = json(&["count", n]);
        assert!(out.status.success());
        match r.result {
            Payload::Counts {
                rows,
                total,
                partition_count,
                ..
            } => (rows.iter().map(|r| r.count).collect::<Vec<_>>(), total, partition_count),
            _ => panic!("wrong payload"),
        }
    };
    assert_eq!(rows("3"), (vec![6, 18, 3], 27, 3));
    assert_eq!(rows("1"), (vec![1], 1, 1));
    let (_, total, p) = rows("4");
    assert_eq!((total, p), (256, 5));
    let (r, _, _) = rows("15");
    assert_eq!(r.len(), 176);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["count", "16"],
        vec!["idempotents", "IS", "3", "[2,x,1]"],
        vec!["idempotents", "IS", "2", "[1,2,3]"],
        vec!["classify", "T", "6"],
        vec!["verify", "thm9"],
        vec!["witness", "Q", "2", "[1,2]", "[2,1]"],
        vec!["iso", "/nonexistent/a", "/nonexistent/b"],
    ] {
        let out = deform(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn raised_cap_warns() {
    let out = deform(&["--cap", "5", "classify", "IS", "2"]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("warning"));
    assert!(deform(&["classify", "IS", "2"]).stderr.is_empty());
}

#[test]
fn json_and_text_come_from_the_same_report() {
    for args in [
        vec!["idempotents", "IS", "3", "[2,-,1]"],
        vec!["idempotents", "B", "b a^3", "--chain", "4"],
        vec!["classify", "T", "3"],
        vec!["witness", "T", "3", "[1,1,2]", "[3,2,2]"],
        vec!["verify", "thm3"],
        vec!["count", "5"],
    ] {
        let (report, out) = json(&args);
        let reserialized = serde_json::to_string_pretty(&report).unwrap() + "\n";
        assert_eq!(reserialized, stdout(&out), "{args:?}");
        let text = stdout(&deform(&args));
        assert_eq!(report.render(Format::Text).unwrap(), text, "{args:?}");
        let csv = stdout(&deform(&[&["--format", "csv"], &args[..]].concat()));
        assert_eq!(report.render(Format::Csv).unwrap(), csv, "{args:?}");
    }
}

#[test]
fn csv_classification_rows() {
    let out = deform(&["--format", "csv", "classify", "T", "3"]);
    assert_eq!(
        stdout(&out),
        "invariant,representative,members,formula\n\
         \"type (3,0,0)\",\"[1,2,3]\",6,6\n\
         \"type (1,1,0)\",\"[1,1,2]\",18,18\n\
         \"type (0,0,1)\",\"[1,1,1]\",3,3\n"
    );
}

#[test]
fn timing_is_opt_in() {
    let (r, _) = json(&["count", "3"]);
    assert_eq!(r.elapsed_ms, None);
    let (r, _) = json(&["--timing", "count", "3"]);
    assert!(r.elapsed_ms.is_some());
}

#[test]
fn deterministic_under_fixed_seed() {
    let args = ["verify", "thm4", "--seed", "99"];
    assert_eq!(stdout(&deform(&args)), stdout(&deform(&args)));
    let args = ["--jobs", "2", "verify", "oracle-crosscheck"];
    assert_eq!(stdout(&deform(&args)), stdout(&deform(&args[2..])));
}

fn write_table(name: &str, args: &[&str]) -> PathBuf {
    let out = deform(args);
    assert!(out.status.success(), "{}", stderr(&out));
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, &out.stdout).unwrap();
    path
}

#[test]
fn tables_and_oracle() {
    let a = write_table("t3_112.table", &["table", "T", "3", "[1,1,2]"]);
    let b = write_table("t3_322.table", &["table", "T", "3", "[3,2,2]"]);
    let c = write_table("t3_123.table", &["table", "T", "3", "[1,2,3]"]);
    let text = std::fs::read_to_string(&a).unwrap();
    assert!(text.starts_with("27\n[1,1,1] [1,1,2]"));

    let (r, out) = json(&["iso", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(out.status.success());
    let Payload::Isomorphism { outcome, pairs, .. } = r.result else {
        panic!("wrong payload")
    };
    assert_eq!(outcome, IsoOutcome::Isomorphic);
    let s: deformed::CayleyTable = text.parse().unwrap();
    let t: deformed::CayleyTable = std::fs::read_to_string(&b).unwrap().parse().unwrap();
    let mapping: Vec<usize> = pairs.iter().map(|&(_, j)| j).collect();
    assert!(deformed::oracle::is_isomorphism(&s, &t, &mapping));

    let (r, _) = json(&["iso", a.to_str().unwrap(), c.to_str().unwrap()]);
    assert!(matches!(
        r.result,
        Payload::Isomorphism {
            outcome: IsoOutcome::NotIsomorphic,
            ..
        }
    ));
    let (r, _) = json(&["iso", "--anti", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert!(r.passed);
}
