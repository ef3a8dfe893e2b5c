mod common;

use std::path::Path;
use std::process::{Command, Output};

use pglbox::image::{read_image, write_image};

fn pglbox(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pglbox"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn enumerate_degree_8_primitive() {
    let out = stdout(&pglbox(&[
        "enumerate-polys",
        "--degree",
        "8",
        "--primitive-only",
    ]));
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 16);
    assert_eq!(rows[0], "0x11D\tx^8+x^4+x^3+x^2+1\tyes\tyes\t255");
    assert!(out.contains(
        "# irreducible=30 primitive=16 closed_form_irreducible=30 closed_form_primitive=16"
    ));
}

#[test]
fn classify_accepts_both_notations() {
    let a = stdout(&pglbox(&["classify-poly", "0x19"]));
    let b = stdout(&pglbox(&["classify-poly", "x^4 + x^3 + 1"]));
    assert_eq!(a, b);
    assert_eq!(a.trim(), "0x19\tx^4+x^3+1\tyes\tyes\t15");
    let c = stdout(&pglbox(&["classify-poly", "x^4+x^2+1"]));
    assert!(c.contains("\tno\tno\t"), "{c}");
}

#[test]
fn gen_and_analyze_sbox() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("s.txt");
    let bin = dir.path().join("s.bin");
    stdout(&pglbox(&[
        "gen-sbox",
        "--poly-index",
        "1",
        "--lft",
        "32,22,11,8",
        "--out",
        p(&text),
    ]));
    stdout(&pglbox(&[
        "gen-sbox",
        "--poly",
        "x^8+x^4+x^3+x^2+1",
        "--out",
        p(&bin),
        "--format",
        "bin",
    ]));
    let raw = std::fs::read(&bin).unwrap();
    assert_eq!(raw.len(), 256);
    assert_eq!(raw[0], 203);
    let first_line = std::fs::read_to_string(&text).unwrap();
    assert!(first_line.starts_with("203 "));

    let a = stdout(&pglbox(&["analyze-sbox", "--in", p(&text)]));
    let b = stdout(&pglbox(&["analyze-sbox", "--in", p(&bin)]));
    assert_eq!(a, b);
    assert!(a.contains("N.L=112.00"), "{a}");
    assert!(a.contains("bijective=true"));
    assert!(a.contains("DP=0.0156"));
}

#[test]
fn published_table_is_flagged() {
    let out = stdout(&pglbox(&["analyze-sbox", "--published"]));
    assert!(out.contains("bijective=false"));
    assert!(out.contains("23"), "{out}");
}

#[test]
fn encrypt_decrypt_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("k.key");
    common::write_default_key(&key);
    let plain = common::natural_rgb(48, 1);
    let (input, ct, back) = (
        dir.path().join("p.ppm"),
        dir.path().join("c.ppm"),
        dir.path().join("b.ppm"),
    );
    write_image(&plain, &input).unwrap();
    stdout(&pglbox(&[
        "encrypt",
        "--key",
        p(&key),
        "--in",
        p(&input),
        "--out",
        p(&ct),
    ]));
    stdout(&pglbox(&[
        "decrypt",
        "--key",
        p(&key),
        "--in",
        p(&ct),
        "--out",
        p(&back),
    ]));
    let c = read_image(&ct).unwrap();
    assert_eq!(c, pglbox::encrypt(&plain, &common::default_key()).unwrap());
    assert_eq!(read_image(&back).unwrap(), plain);
}

#[test]
fn raw_input_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("k.key");
    common::write_default_key(&key);
    let data: Vec<u8> = (0..30 * 20).map(|i| (i * 7) as u8).collect();
    let (input, ct, back) = (
        dir.path().join("p.raw"),
        dir.path().join("c.raw"),
        dir.path().join("b.raw"),
    );
    std::fs::write(&input, &data).unwrap();
    stdout(&pglbox(&[
        "encrypt",
        "--key",
        p(&key),
        "--in",
        p(&input),
        "--out",
        p(&ct),
        "--raw",
        "30x20",
    ]));
    stdout(&pglbox(&[
        "decrypt",
        "--key",
        p(&key),
        "--in",
        p(&ct),
        "--out",
        p(&back),
        "--raw",
        "30x20",
    ]));
    assert_eq!(std::fs::read(&ct).unwrap().len(), 600);
    assert_eq!(std::fs::read(&back).unwrap(), data);
}

#[test]
fn errors_are_one_line_with_code() {
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("k.key");
    std::fs::write(&key, "x0 = 0.1\ny0 = 0.2\nw = 3\n").unwrap();
    let input = dir.path().join("p.pgm");
    std::fs::write(&input, b"P5\n2 2\n255\n\x01").unwrap();

    let o = pglbox(&[
        "encrypt",
        "--key",
        p(&key),
        "--in",
        p(&input),
        "--out",
        "/dev/null",
    ]);
    assert!(!o.status.success());
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(
        err.starts_with("error[E_KEY]:") && err.contains(":3: unknown key `w`"),
        "{err}"
    );

    common::write_default_key(&key);
    let o = pglbox(&[
        "encrypt",
        "--key",
        p(&key),
        "--in",
        p(&input),
        "--out",
        "/dev/null",
    ]);
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .starts_with("error[E_IMAGE]:"));

    let o = pglbox(&["gen-sbox", "--lft", "1,1,1,1"]);
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .starts_with("error[E_DEGENERATE]:"));
    let o = pglbox(&["gen-sbox", "--poly", "0x11B"]);
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .starts_with("error[E_DOMAIN]:"));
    let o = pglbox(&["encrypt", "--in", p(&input), "--out", "/dev/null"]);
    assert!(String::from_utf8(o.stderr).unwrap().contains("--key"));
}

#[test]
fn metrics_and_attack_sim() {
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("k.key");
    common::write_default_key(&key);
    let (input, ct, rec) = (
        dir.path().join("p.pgm"),
        dir.path().join("c.pgm"),
        dir.path().join("r.pgm"),
    );
    write_image(&common::natural_gray(128, 2), &input).unwrap();
    stdout(&pglbox(&[
        "encrypt",
        "--key",
        p(&key),
        "--in",
        p(&input),
        "--out",
        p(&ct),
    ]));

    let m = stdout(&pglbox(&[
        "metrics",
        "--in",
        p(&ct),
        "--against",
        p(&input),
        "--offset",
        "1,0",
    ]));
    for k in [
        "correlation_horizontal=",
        "entropy=7.9",
        "chi_square_q999=330.5",
        "contrast=",
        "npcr=99.",
    ] {
        assert!(m.contains(k), "{k} missing in {m}");
    }
    let s1 = stdout(&pglbox(&[
        "metrics",
        "--in",
        p(&input),
        "--sampled",
        "500",
        "--seed",
        "9",
    ]));
    let s2 = stdout(&pglbox(&[
        "--seed",
        "9",
        "metrics",
        "--in",
        p(&input),
        "--sampled",
        "500",
    ]));
    assert_eq!(s1, s2);

    let a = stdout(&pglbox(&[
        "attack-sim",
        "--key",
        p(&key),
        "--in",
        p(&input),
        "--corrupt",
        "2000",
        "--out",
        p(&rec),
        "--avalanche",
        "--key-delta",
        "1e-10",
        "--keyspace",
    ]));
    assert!(a.contains("corrupted_pixels=2000"));
    assert!(a.contains("avalanche Middle"));
    assert!(a.contains("key_sensitivity z0+"));
    assert!(a.contains("not a proven bound"));
    let recovered = read_image(&rec).unwrap();
    assert_eq!(recovered.pixels(), 128 * 128);
}

#[test]
fn keystream_dump() {
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("k.key");
    common::write_default_key(&key);
    let out = stdout(&pglbox(&["keystream", "--key", p(&key), "--length", "5"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "# index perm mask selector");
    assert_eq!(
        out,
        stdout(&pglbox(&["keystream", "--key", p(&key), "--length", "5"]))
    );
}
