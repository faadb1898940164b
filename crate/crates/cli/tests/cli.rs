use std::process::{Command, Output};

fn cotor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cotor")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn both_methods_agree_on_gl2() {
    let o = cotor(&["cotor", "--model", "gl:2", "--method", "both", "--max-total", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("s,a,b,total,hodge_a,hodge_b,dim\n"));
    assert!(out.contains("\n0,1,1,2,1,1,1\n"));
}

#[test]
fn so6_has_the_z2_class() {
    let o = cotor(&["cotor", "--model", "so:6", "--max-total", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "1,1,0,2,1,1,1"));
}

#[test]
fn trivial_comodule_counts_monomials_of_r() {
    let o = cotor(&["cotor", "--model", "trivial:lambda1", "--max-total", "6", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut totals = [0u64; 7];
    for row in v["rows"].as_array().unwrap() {
        totals[row["total"].as_u64().unwrap() as usize] += row["dim"].as_u64().unwrap();
    }
    // F₂[z₃, z₅] with z₃ in total 3 and z₅ in total 5
    assert_eq!(totals, [1, 0, 0, 1, 0, 1, 1]);
}

#[test]
fn output_is_independent_of_thread_count() {
    let a = cotor(&["--threads", "1", "cotor", "--model", "gl:6", "--max-total", "12"]);
    let b = cotor(&["--threads", "4", "cotor", "--model", "gl:6", "--max-total", "12"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn bad_models_exit_with_two() {
    assert_eq!(cotor(&["cotor", "--model", "sp:5", "--max-total", "4"]).status.code(), Some(2));
    assert_eq!(cotor(&["cotor", "--model", "nope", "--max-total", "4"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("cotor-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // counit sends c2 to c2 + c1², so the counit axiom fails
    let path = dir.join("broken.json");
    std::fs::write(
        &path,
        r#"{"hopf":"lambda1","variables":[{"name":"c1","deg":[1,1]},{"name":"c2","deg":[2,2]}],
           "coaction":{"c1":[["1","c1"]],"c2":[["1","c2"],["1","c1^2"]]}}"#,
    )
    .unwrap();
    let o = cotor(&["cotor", "--model", path.to_str().unwrap(), "--max-total", "6"]);
    assert_eq!(o.status.code(), Some(2));
    let good = dir.join("gl2.json");
    std::fs::write(
        &good,
        r#"{"hopf":"lambda1","variables":[{"name":"c1","deg":[1,1]},{"name":"c2","deg":[2,2]}],
           "coaction":{"c1":[["1","c1"]],"c2":[["1","c2"],["x2","c1"],["x2^2","1"]]}}"#,
    )
    .unwrap();
    let from_file = cotor(&["cotor", "--model", good.to_str().unwrap(), "--max-total", "8"]);
    let builtin = cotor(&["cotor", "--model", "gl:2", "--max-total", "8"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, builtin.stdout);
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "theta"],
        vec!["verify", "toda", "--model", "gl:6"],
        vec!["verify", "relations", "--group", "pso", "--m", "1"],
        vec!["verify", "relations", "--group", "pgl", "--m", "1"],
        vec!["verify", "axioms"],
    ] {
        let o = cotor(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("PASS"), "{args:?}");
    }
}

#[test]
fn verify_json_lists_reports() {
    let o = cotor(&["--output", "json", "verify", "theta"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["failure_count"], 0);
}

#[test]
fn degeneracy_checks_pass() {
    for (g, m, t) in [("pgl", "0", "12"), ("pso", "1", "14"), ("psp", "1", "12")] {
        let o = cotor(&["degeneracy", g, m, t]);
        assert_eq!(o.status.code(), Some(0), "{g}");
        assert!(!stdout(&o).contains("DIFFERENT"));
    }
}

#[test]
fn rep_tables() {
    let o = cotor(&["rep-table", "pgl", "1", "6", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<Vec<usize>> = out.lines().skip(1).map(|l| l.split(',').skip(1).map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows[1][1], 1);
    for (i, row) in rows.iter().enumerate() {
        for (j, &d) in row.iter().enumerate().skip(1) {
            if i < j {
                assert_eq!(d, 0, "(i={i}, j={j})");
            }
        }
    }
    let o = cotor(&["rep-table", "pso", "1", "4", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let row2: Vec<usize> = stdout(&o).lines().nth(3).unwrap().split(',').skip(1).map(|x| x.parse().unwrap()).collect();
    assert!(row2[1] >= 1);
}

#[test]
fn toda_prints_generators() {
    let o = cotor(&["toda", "--model", "gl:6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("a♯ = c2 (q = 2"));
    assert!(out.contains("bar 3 = c3 + c1^3") || out.contains("bar 3 = c1^3 + c3"), "{out}");
}
