use std::path::{Path, PathBuf};
use std::process::Command as Process;
use std::sync::Arc;

use secohom_cli::error::{exit, CliError};
use secohom_cli::model::Model;
use secohom_cli::problem::ProblemFile;
use secohom_cli::report::{Report, Results, Verdict};
use secohom_cli::run::{execute, Command, Overrides};
use secohom_core::algebra::{regular_bimodule, truncated_polynomial_algebra, Triple};
use secohom_core::Field;

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples").join(name)
}

fn read(name: &str) -> String {
    std::fs::read_to_string(example(name)).unwrap()
}

fn secohom(args: &[&str]) -> (i32, String, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_secohom")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run(command: Command, text: &str) -> Result<secohom_cli::run::Outcome, CliError> {
    execute(command, text, "input.txt", &Overrides::default())
}

#[test]
fn dual_numbers_example_matches_programmatic_triple() {
    let p = ProblemFile::parse(&read("dual-numbers.txt")).unwrap();
    let m = Model::build(&p, Field::Rationals).unwrap();
    let a = Arc::new(truncated_polynomial_algebra(Field::Rationals, 2).unwrap());
    let entry = &m.triples["T"];
    assert_eq!(entry.triple, Triple::with_ground(a.clone()));
    assert_eq!(entry.module, regular_bimodule(a));
}

#[test]
fn every_example_validates() {
    for name in ["dual-numbers.txt", "z2-group-algebra.txt", "cyclic-dual.txt"] {
        let o = run(Command::Validate, &read(name)).unwrap();
        assert_eq!(o.exit_code, exit::PASS, "{name}");
    }
}

#[test]
fn first_cohomology_of_dual_numbers_is_one() {
    let o = execute(Command::Cohomology, &read("dual-numbers.txt"), "d", &Overrides { degree: Some(1), ..Default::default() })
        .unwrap();
    let Results::Cohomology { degrees, .. } = &o.report.deterministic.results else { panic!() };
    assert_eq!(degrees.iter().map(|d| d.dim).collect::<Vec<_>>(), vec![2, 1]);
    assert_eq!(degrees[1].outgoing.rank, 3);
}

#[test]
fn minimal_file_with_cohomology_task() {
    let o = run(Command::Cohomology, "algebra k ground\nmorphism i k -> k identity\ntriple T i\ntask degree=0\n").unwrap();
    let Results::Cohomology { degrees, .. } = &o.report.deterministic.results else { panic!() };
    assert_eq!(degrees.len(), 1);
    assert_eq!(degrees[0].dim, 1);
}

#[test]
fn dangling_reference_names_the_target() {
    let e = run(Command::Validate, "algebra k ground\nmorphism e k -> A unit\n").unwrap_err();
    assert_eq!(e.exit_code(), exit::PARSE);
    assert!(e.to_string().contains("`A`"), "{e}");
    assert!(e.to_string().contains("line 2"), "{e}");
}

#[test]
fn invalid_algebra_is_a_validation_failure() {
    let text = "algebra A\nbasis 1 x\nunit = 1\n(1, 1, 1) = 1\n(1, x, x) = 1\nend\nalgebra k ground\nmorphism e k -> A unit\ntriple T e\n";
    let e = run(Command::Cohomology, text).unwrap_err();
    let CliError::Validation(issues) = &e else { panic!("{e}") };
    assert_eq!(issues[0].object, "algebra A");
    assert_eq!(e.exit_code(), exit::VALIDATION);
    assert!(issues.iter().any(|i| i.object == "triple T" && i.message.contains("not checked")));

    let o = run(Command::Validate, text).unwrap();
    assert_eq!(o.exit_code, exit::VALIDATION);
    assert_eq!(o.report.deterministic.verdict, Verdict::Fail);
}

#[test]
fn non_unital_morphism_is_reported() {
    let text = "algebra k ground\nalgebra A truncated 2\nmorphism e k -> A\n1 -> x\nend\ntriple T e\n";
    let o = run(Command::Validate, text).unwrap();
    let Results::Validation { objects } = &o.report.deterministic.results else { panic!() };
    let bad: Vec<&str> = objects.iter().filter(|s| !s.valid).map(|s| s.object.as_str()).collect();
    assert_eq!(bad, vec!["morphism e", "triple T"]);
}

#[test]
fn non_associative_family_is_a_mathematical_failure() {
    // c(1, x) = 1 has δc(1, x, x) = −x.
    let text = "algebra k ground\nalgebra A truncated 2\nmorphism i k -> A unit\ntriple T i\n\
                cochain c on T degree 2\n(1, x ; 1) -> 1 = 1\nend\nfamily F on T terms c\n";
    let o = run(Command::DeformCheck, text).unwrap();
    assert_eq!(o.exit_code, exit::MATH_FAILURE);
    let Results::Associativity { witness, first_term_is_cocycle, .. } = &o.report.deterministic.results else { panic!() };
    assert_eq!(*first_term_is_cocycle, Some(false));
    assert_eq!(witness.as_ref().unwrap().power, 1);
    assert_eq!(run(Command::DeformExtend, text).unwrap_err().exit_code(), exit::MATH_FAILURE);
}

#[test]
fn field_override_and_decimal_rejection() {
    let o = execute(
        Command::Cohomology,
        &read("dual-numbers.txt"),
        "d",
        &Overrides { field: Some(Field::prime(7).unwrap()), degree: Some(1), ..Default::default() },
    )
    .unwrap();
    assert_eq!(o.report.deterministic.field, "fp:7");
    let e = run(Command::Validate, "algebra A\nbasis 1\nunit = 1\n(1, 1, 1) = 1.0\nend\n").unwrap_err();
    assert_eq!(e.exit_code(), exit::PARSE);
}

#[test]
fn ambiguous_task_is_a_usage_error() {
    let text = "algebra k ground\nmorphism i k -> k identity\ntriple S i\ntriple T i\n";
    assert_eq!(run(Command::Cohomology, text).unwrap_err().exit_code(), exit::PARSE);
    assert!(run(Command::Cohomology, &format!("{text}task triple=T\n")).is_ok());
}

#[test]
fn reports_round_trip() {
    for (command, file) in [
        (Command::Cohomology, "dual-numbers.txt"),
        (Command::Hochschild, "z2-group-algebra.txt"),
        (Command::DeformCheck, "dual-numbers.txt"),
        (Command::DeformExtend, "dual-numbers.txt"),
        (Command::DeformObstruction, "dual-numbers.txt"),
        (Command::DeformGauge, "dual-numbers.txt"),
        (Command::SimplicialVerify, "z2-group-algebra.txt"),
        (Command::Validate, "z2-group-algebra.txt"),
    ] {
        let r = run(command, &read(file)).unwrap().report;
        let json = r.to_json();
        assert_eq!(Report::from_json(&json).unwrap(), r, "{}", command.name());
        assert_eq!(Report::from_json(&json).unwrap().to_json(), json);
    }
    assert!(Report::from_json("{}").is_err());
}

#[test]
fn binary_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let file = example("dual-numbers.txt");
    let mut sections = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("r{i}.json"));
        let (code, stdout, _) =
            secohom(&["deform-extend", file.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(stdout.contains("PASS"));
        let r = Report::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
        sections.push(r.deterministic_json());
    }
    assert_eq!(sections[0], sections[1]);
}

#[test]
fn binary_exit_codes() {
    let dual = example("dual-numbers.txt");
    let dual = dual.to_str().unwrap();
    assert_eq!(secohom(&["cohomology", dual, "--degree", "1"]).0, 0);
    assert_eq!(secohom(&["frobnicate", dual]).0, 2);
    assert_eq!(secohom(&["cohomology", dual, "--field", "fp:8"]).0, 2);
    assert_eq!(secohom(&["cohomology", "/nonexistent/problem.txt"]).0, 1);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "algebra A\nbasis 1 x\nunit = x\nend\n").unwrap();
    let (code, _, stderr) = secohom(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 3, "{stderr}");
    std::fs::write(&bad, "algebra A truncated\n").unwrap();
    let (code, _, stderr) = secohom(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 1"), "{stderr}");
}

#[test]
fn cyclic_example_reports_its_failures() {
    let o = run(Command::CyclicVerify, &read("cyclic-dual.txt")).unwrap();
    let Results::Identities { families, failures, .. } = &o.report.deterministic.results else { panic!() };
    assert_eq!(o.exit_code, exit::MATH_FAILURE);
    assert!(families.iter().filter(|f| f.family != "face_degeneracy").all(|f| f.failed == 0));
    assert!(failures.iter().all(|f| f.family == "face_degeneracy" && f.indices[0] != f.indices[1] && f.indices[0] != f.indices[1] + 1));

    let ground = "algebra k ground\nmorphism e k -> k identity\ntask nmax=3\n";
    assert_eq!(run(Command::CyclicVerify, ground).unwrap().exit_code, exit::PASS);
}
