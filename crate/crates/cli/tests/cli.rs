use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lud(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lud")).args(args).output().expect("binary runs")
}

fn corpus(file: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(file).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

const T1_BODY: &str = "index: (l1,h0)
lud_preds:
  l1-mood(decl,h0)
  l2-discrel(topic,h1,h2)
  l4-dm(i1)
  l5-predicate(getsuyoubi,i1)
  l7-dm(i2)
  l8-predicate(daijoubu,i2)
  l9-role(i2,arg1,i1)
lud_grouping:
  l3-inc([l4,l5])
  l6-inc([l7,l8,l9])
lud_meta:
lud_scoping:
  leq(l2,h0)
  leq(l3,h1)
  leq(l6,h2)
";

#[test]
fn parse_prints_canonical_form() {
    let dir = tempfile::tempdir().unwrap();
    let messy = T1_BODY.replace("  l2-discrel(topic,h1,h2)", "l2 - discrel( topic , h1 , h2 ) # wa");
    let f = write(dir.path(), "t1.lud", &messy);
    let o = lud(&["parse", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), T1_BODY);
}

#[test]
fn parse_error_exits_2_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.lud", "index: (l1,h0)\nlud_preds:\n  l1-mood(decl,h0\n");
    let o = lud(&["parse", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error[syntax] 3:18"), "{}", stderr(&o));
}

#[test]
fn missing_file_exits_2() {
    assert_eq!(lud(&["parse", "/nonexistent/x.lud"]).status.code(), Some(2));
    assert_eq!(lud(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn validate_reports_errors() {
    let o = lud(&["validate", &corpus("t1.lud")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "ok\n");

    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c.lud", &format!("{T1_BODY}  leq(l3,h2)\n"));
    let o = lud(&["validate", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("partition-conflict"), "{}", stdout(&o));
}

#[test]
fn enumerate_lists_readings() {
    let o = lud(&["enumerate", &corpus("f1.lud")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("# 6 readings\n"));
    assert_eq!(out.matches("plug_into(l5,h1)").count(), 6);

    let oracle = lud(&["enumerate", "--oracle", &corpus("f1.lud")]);
    assert_eq!(stdout(&oracle), out);

    let two = lud(&["enumerate", "--max", "2", &corpus("f1.lud")]);
    assert!(stdout(&two).starts_with("# 2 readings\n"));
    let body = |s: &str| s.split_once('\n').unwrap().1.to_string();
    assert!(body(&out).starts_with(&body(&stdout(&two))));
    assert_eq!(lud(&["enumerate", "--max", "0", &corpus("f1.lud")]).status.code(), Some(2));
}

#[test]
fn resolve_uses_entry_surface_by_default() {
    let o = lud(&["resolve", &corpus("f1.lud")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let rank1 = out.split("# rank 2").next().unwrap();
    assert!(rank1.contains("plug_into(l4,h0)\nplug_into(l5,h1)\nplug_into(l3,h2)"), "{out}");
    assert!(rank1.contains("# explanation-noda(topic(getsuyoubi"), "{out}");
}

#[test]
fn resolve_with_explicit_meta_and_lexicon() {
    let dir = tempfile::tempdir().unwrap();
    let meta = write(dir.path(), "m.txt", "# swapped\nl2=1 l3=0\n");
    let o = lud(&[
        "resolve",
        &corpus("f6a.lud"),
        "--meta",
        meta.to_str().unwrap(),
        "--lexicon",
        &corpus("lexicon.txt"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rank1 = stdout(&o).split("# rank 2").next().unwrap().to_string();
    assert!(rank1.contains("# conditional-nara(gogo, topic(getsuyoubi, daijoubu))"), "{rank1}");

    let lex = write(dir.path(), "lex.txt", "rel topic class=both-internal fixed=restriction\n");
    let o = lud(&["resolve", &corpus("f6a.lud"), "--lexicon", lex.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("conditional-nara"), "{}", stderr(&o));
}

#[test]
fn render_term_and_box() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.txt", "plug_into(l2,h0)\nplug_into(l3,h1)\nplug_into(l6,h2)\n");
    let t1 = corpus("t1.lud");
    let o = lud(&["render", &t1, "--plugging", p.to_str().unwrap(), "--term"]);
    assert_eq!(stdout(&o), "topic(getsuyoubi, daijoubu)\n");
    let o = lud(&["render", &t1, "--plugging", p.to_str().unwrap()]);
    assert_eq!(stdout(&o), fs::read_to_string(corpus("golden/t1.box.txt")).unwrap());

    let bad = write(dir.path(), "q.txt", "plug_into(l6,h0)\nplug_into(l3,h1)\nplug_into(l2,h2)\n");
    let o = lud(&["render", &t1, "--plugging", bad.to_str().unwrap(), "--term"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("inadmissible") || stderr(&o).contains("leq"), "{}", stderr(&o));
}

#[test]
fn corpus_passes_and_is_stable() {
    let dir = corpus("");
    let a = lud(&["corpus", &dir]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert!(stdout(&a).ends_with("8/8 entries passed\n"));
    assert_eq!(stdout(&lud(&["corpus", &dir])), stdout(&a));
}

#[test]
fn empty_corpus_warns() {
    let dir = tempfile::tempdir().unwrap();
    let o = lud(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("warning: no corpus entries"));
}

#[test]
fn corpus_failure_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let header = "id: X\nsurface: l2=0\nexpect-count: 2\nexpect-rank1: topic(getsuyoubi, daijoubu)\n";
    write(dir.path(), "x.lud", &format!("{header}{T1_BODY}"));
    let o = lud(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL X    expected 2 admissible, observed 1"), "{}", stdout(&o));
}

#[test]
fn corpus_golden_mismatch_fails() {
    let dir = tempfile::tempdir().unwrap();
    let header = "id: X\nsurface: l2=0\nexpect-count: 1\nexpect-rank1: topic(getsuyoubi, daijoubu)\n";
    write(dir.path(), "x.lud", &format!("{header}{T1_BODY}"));
    fs::create_dir(dir.path().join("golden")).unwrap();
    write(&dir.path().join("golden"), "x.term.txt", "topic(daijoubu, getsuyoubi)\n");
    let o = lud(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("golden x.term.txt differs"), "{}", stdout(&o));
}
