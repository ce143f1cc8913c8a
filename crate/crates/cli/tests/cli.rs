use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pachner::census;
use pachner::composite::{build_l41_stack, detour_rewrite};
use pachner::io::{write_move, write_path, write_table};
use pachner::moves::{apply, classify_degree_one_creation, pachner_moves, Creation, Move, MovePath};
use pachner::{Skeleton, Triangulation};

fn pachner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pachner")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

fn put(dir: &Path, name: &str, contents: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p.to_str().unwrap().to_string()
}

/// Degree-one-free triangulations a few safe 2-3 moves away from the census.
fn clean_states() -> Vec<Triangulation> {
    let mut out = Vec::new();
    for mut t in census::closed_one_vertex(2) {
        for _ in 0..3 {
            let s = Skeleton::new(&t);
            let Some(m) = pachner_moves(&t, &s)
                .into_iter()
                .find(|m| m.kind() == "23" && matches!(classify_degree_one_creation(&t, m), Ok(Creation::None)))
            else {
                break;
            };
            t = apply(&t, &m).unwrap().result;
            if Skeleton::new(&t).min_degree() >= 2 {
                out.push(t.clone());
            }
        }
    }
    out
}

/// A clean triangulation, a 2-3 into a degree-one state, and its undo,
/// chosen so the detour rewrite supports it.
fn degree_one_detour() -> (String, Move, Move) {
    for t in clean_states() {
        for m in pachner_moves(&t, &Skeleton::new(&t)) {
            if matches!(classify_degree_one_creation(&t, &m), Ok(Creation::Via23(_))) {
                let back = apply(&t, &m).unwrap().inverse.unwrap();
                let path = MovePath { initial: t.clone(), moves: vec![m, back] };
                if detour_rewrite(&path).is_ok() {
                    return (write_table(&t), m, back);
                }
            }
        }
    }
    unreachable!("no supported degree-one detour near the census");
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let clean = put(dir.path(), "clean.tri", &write_table(&clean_states()[0]));
    let o = pachner(&["validate", &clean]);
    assert_eq!(code(&o), 0, "{}", text(&o.stdout));
    assert!(text(&o.stdout).contains("valid=true"));

    let (table, m, _) = degree_one_detour();
    let t = pachner::io::parse_table(&table).unwrap();
    let bad = put(dir.path(), "bad.tri", &write_table(&apply(&t, &m).unwrap().result));
    assert_eq!(code(&pachner(&["validate", &bad])), 2);

    let broken = put(dir.path(), "broken.tri", "tets 1\n0:0123 0:0123 0:0132 0:0132\n");
    let o = pachner(&["validate", &broken]);
    assert_eq!(code(&o), 1);
    assert!(text(&o.stdout).contains("valid=false"));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(dir.path(), "t.tri", "# comment\ntets 2\n1:0123 1:0123 nonsense 1:0123\n");
    let o = pachner(&["validate", &f]);
    assert_eq!(code(&o), 1);
    assert!(text(&o.stdout).contains("line 3"), "{}", text(&o.stdout));
}

#[test]
fn replay_resolves_relative_paths_and_flags_degree_one_states() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("paths");
    fs::create_dir(&sub).unwrap();
    let (table, up, down) = degree_one_detour();
    put(dir.path(), "seed.tri", &table);
    let path = put(&sub, "p.path", &write_path("../seed.tri", &[up, down]));

    let o = pachner(&["replay", &path]);
    assert_eq!(code(&o), 0, "{}", text(&o.stderr));
    let end = pachner::io::parse_table(&text(&o.stdout)).unwrap();
    let start = pachner::io::parse_table(&table).unwrap();
    assert!(pachner::is_isomorphic(&end, &start));

    let o = pachner(&["replay", &path, "--check-degree-one"]);
    assert_eq!(code(&o), 2);
    assert!(text(&o.stderr).contains("state 1"), "{}", text(&o.stderr));
}

#[test]
fn rewrite_clears_degree_one_states() {
    let dir = tempfile::tempdir().unwrap();
    let (table, up, down) = degree_one_detour();
    put(dir.path(), "seed.tri", &table);
    let path = put(dir.path(), "p.path", &write_path("seed.tri", &[up, down]));
    let out = dir.path().join("clean.path");
    let o = pachner(&["rewrite", &path, "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", text(&o.stderr));
    assert!(dir.path().join("clean.path.cert").exists());
    let o = pachner(&["replay", out.to_str().unwrap(), "--check-degree-one"]);
    assert_eq!(code(&o), 0, "{}", text(&o.stderr));
}

#[test]
fn rewrite_keeps_clean_paths_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let t = clean_states().remove(0);
    put(dir.path(), "seed.tri", &write_table(&t));
    let s = Skeleton::new(&t);
    let m = pachner_moves(&t, &s)
        .into_iter()
        .find(|m| matches!(classify_degree_one_creation(&t, m), Ok(Creation::None)))
        .unwrap();
    let back = apply(&t, &m).unwrap().inverse.unwrap();
    let original = write_path("seed.tri", &[m, back]);
    let path = put(dir.path(), "p.path", &original);
    let out = dir.path().join("same.path");
    let cert = dir.path().join("report.txt");
    let o = pachner(&["rewrite", &path, "-o", out.to_str().unwrap(), "--certificate", cert.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", text(&o.stderr));
    assert_eq!(fs::read_to_string(&out).unwrap(), original);
    assert!(cert.exists());
}

#[test]
fn rewrite_refuses_l41_paths() {
    let dir = tempfile::tempdir().unwrap();
    let t = build_l41_stack(3).unwrap();
    put(dir.path(), "l41.tri", &write_table(&t));
    let m = pachner_moves(&t, &Skeleton::new(&t)).into_iter().find(|m| m.kind() == "23").unwrap();
    let path = put(dir.path(), "p.path", &format!("triangulation l41.tri\n{}\n", write_move(&m)));
    let out = dir.path().join("x.path");
    let o = pachner(&["rewrite", &path, "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(text(&o.stderr).contains("L(4,1)"), "{}", text(&o.stderr));
    assert!(!out.exists());
}

#[test]
fn explore_is_deterministic_across_thread_settings() {
    let dir = tempfile::tempdir().unwrap();
    let seed = put(dir.path(), "seed.tri", &write_table(&census::closed_one_vertex(2)[1]));
    let one = pachner(&["explore", &seed, "--max-tets", "4", "--threads", "1"]);
    let many = pachner(&["explore", &seed, "--max-tets", "4", "--threads", "4"]);
    let env = Command::new(env!("CARGO_BIN_EXE_pachner"))
        .args(["explore", &seed, "--max-tets", "4"])
        .env("PACHNER_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, env.stdout);
    assert!(text(&one.stdout).starts_with("# seed "));
}

#[test]
fn l41_stack_and_detection() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("l41.tri");
    assert_eq!(code(&pachner(&["l41", "--stack", "5", "-o", out.to_str().unwrap()])), 0);
    let o = pachner(&["l41", "--detect", out.to_str().unwrap()]);
    assert_eq!(text(&o.stdout).trim(), "true");
    let other = put(dir.path(), "s3.tri", &write_table(&census::closed_one_vertex(2)[1]));
    assert_eq!(text(&pachner(&["l41", "--detect", &other]).stdout).trim(), "false");
    assert_eq!(code(&pachner(&["l41", "--stack", "4"])), 2);
}
