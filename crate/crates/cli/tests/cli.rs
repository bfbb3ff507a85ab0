use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use regsep::automata::parse_pattern;
use regsep::{Alphabet, Dfa};
use serde_json::Value;

fn regsep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regsep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn golden(name: &str) -> String {
    fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

fn write_aut(dir: &Path, name: &str, pattern: &str, alphabet: &str) -> String {
    let dfa = parse_pattern(pattern, &Alphabet::from_chars(alphabet).unwrap()).unwrap();
    let path = dir.join(name);
    fs::write(&path, dfa.to_aut_json()).unwrap();
    path.to_str().unwrap().to_string()
}

const GOLDEN: &[(&str, &[&str])] = &[
    (
        "separate_mod_parity.json",
        &[
            "separate",
            "--class",
            "mod",
            "--pattern",
            "--alphabet",
            "a",
            "(aa)*",
            "a(aa)*",
        ],
    ),
    (
        "separate_fo_parity.json",
        &[
            "separate",
            "--class",
            "fo",
            "--pattern",
            "--alphabet",
            "a",
            "(aa)*",
            "a(aa)*",
        ],
    ),
    (
        "separate_fomod_even_a.json",
        &[
            "separate",
            "--class",
            "fo-mod",
            "--pattern",
            "--alphabet",
            "ab",
            "(b*ab*a)*b*",
            "(b*ab*a)*b*ab*",
        ],
    ),
    (
        "cover_su.json",
        &[
            "cover",
            "--class",
            "su",
            "--pattern",
            "--alphabet",
            "ab",
            ".*a",
            ".*b",
            "b*",
        ],
    ),
    (
        "info_parity.json",
        &["info", "--pattern", "--alphabet", "a", "(aa)*"],
    ),
];

#[test]
fn outputs_match_golden_files() {
    for (file, args) in GOLDEN {
        let first = regsep(args);
        let second = regsep(args);
        assert_eq!(
            first.stdout, second.stdout,
            "{file}: output is not deterministic"
        );
        assert_eq!(
            String::from_utf8(first.stdout).unwrap(),
            golden(file),
            "{file}"
        );
    }
}

#[test]
fn exit_codes_follow_the_outcome() {
    let sep = regsep(&[
        "separate",
        "--class",
        "mod",
        "--pattern",
        "--alphabet",
        "a",
        "(aa)*",
        "a(aa)*",
    ]);
    assert_eq!(sep.status.code(), Some(0));
    let v = stdout_json(&sep);
    assert_eq!(
        v["certificate"],
        serde_json::json!({ "d": 2, "residues": [0] })
    );

    let not = regsep(&[
        "separate",
        "--class",
        "fo",
        "--pattern",
        "--alphabet",
        "a",
        "(aa)*",
        "a(aa)*",
    ]);
    assert_eq!(not.status.code(), Some(1));
    assert_eq!(stdout_json(&not)["witness"]["kind"], "pointlike");

    for class in ["mod", "mod-brute", "su", "fo", "fo-mod"] {
        let out = regsep(&[
            "cover",
            "--class",
            class,
            "--pattern",
            "--alphabet",
            "ab",
            "a*",
            "b+",
            ".*ba.*",
        ]);
        let v = stdout_json(&out);
        assert_eq!(
            out.status.code(),
            Some(if v["outcome"] == "coverable" { 0 } else { 1 }),
            "{class}"
        );
        assert_eq!(v["problem"], "covering");
    }
}

#[test]
fn errors_are_json_with_exit_2() {
    let out = regsep(&[
        "separate",
        "--class",
        "fo",
        "missing-1.aut",
        "missing-2.aut",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout_json(&out)["error"]
        .as_str()
        .unwrap()
        .contains("missing-1.aut"));

    let capped = regsep(&[
        "info",
        "--max-monoid",
        "1",
        "--pattern",
        "--alphabet",
        "a",
        "(aa)*",
    ]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(stdout_json(&capped)["error"]
        .as_str()
        .unwrap()
        .contains("transition monoid has more than 1"));

    let bad = regsep(&[
        "separate",
        "--class",
        "fo",
        "--pattern",
        "--alphabet",
        "ab",
        "(a",
        "b",
    ]);
    assert_eq!(bad.status.code(), Some(2));

    let mixed = tempfile::tempdir().unwrap();
    let a = write_aut(mixed.path(), "a.aut", "a*", "a");
    let b = write_aut(mixed.path(), "b.aut", "b*", "ab");
    let out = regsep(&["separate", "--class", "su", &a, &b]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout_json(&out)["error"]
        .as_str()
        .unwrap()
        .contains("alphabet mismatch"));
}

#[test]
fn reads_aut_files() {
    let dir = tempfile::tempdir().unwrap();
    let even = write_aut(dir.path(), "even.aut", "(aa)*", "a");
    let odd = write_aut(dir.path(), "odd.aut", "a(aa)*", "a");
    let out = regsep(&["separate", "--class", "fo-mod", &even, &odd]);
    assert_eq!(out.status.code(), Some(0));
    let out = regsep(&["separate", "--class", "su", "--pretty", &even, &odd]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("\n  "));
}

#[test]
fn reduce_writes_a_round_tripping_instance() {
    let dir = tempfile::tempdir().unwrap();
    let even = write_aut(dir.path(), "even.aut", "(aa)*", "a");
    let odd = write_aut(dir.path(), "odd.aut", "a(aa)*", "a");
    let out_dir = dir.path().join("inst");
    let out = regsep(&["reduce", &even, &odd, "-o", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let manifest: Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("instance.json")).unwrap()).unwrap();
    assert_eq!(manifest, stdout_json(&out));
    assert_eq!(manifest["s"], 2);
    assert_eq!(manifest["stable"], serde_json::json!(["<aa>"]));
    assert_eq!(manifest["alphabet"], serde_json::json!(["<a>", "<aa>"]));

    let sf = Alphabet::new(["<a>", "<aa>"]).unwrap();
    let expected = [
        parse_pattern("\"<aa>\"*", &sf).unwrap(),
        parse_pattern("\"<aa>\"*\"<a>\"", &sf).unwrap(),
    ];
    for (entry, want) in manifest["images"].as_array().unwrap().iter().zip(&expected) {
        let text = fs::read_to_string(out_dir.join(entry["file"].as_str().unwrap())).unwrap();
        let dfa = Dfa::from_aut_json(&text).unwrap();
        assert_eq!(&dfa, want);
        assert_eq!(dfa.to_aut_json() + "\n", text);
    }

    let mon: Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("eta.mon")).unwrap()).unwrap();
    assert_eq!(mon["size"], 2);
    assert_eq!(mon["letter_image"]["a"], 1);
}

#[test]
fn info_writes_the_monoid() {
    let dir = tempfile::tempdir().unwrap();
    let mon = dir.path().join("l.mon");
    let out = regsep(&[
        "info",
        "--pattern",
        "--alphabet",
        "ab",
        ".*ab.*",
        "-o",
        mon.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(
        (v["aperiodic"].as_bool(), v["quasi_aperiodic"].as_bool()),
        (Some(true), Some(true))
    );
    let dump: Value = serde_json::from_str(&fs::read_to_string(mon).unwrap()).unwrap();
    assert_eq!(dump["size"], v["monoid_size"]);
    assert_eq!(
        dump["table"].as_array().unwrap().len(),
        dump["size"].as_u64().unwrap() as usize
    );
}

#[test]
fn separator_certificates_round_trip() {
    let out = regsep(&[
        "separate",
        "--class",
        "su",
        "--pattern",
        "--alphabet",
        "ab",
        "(ab)*",
        ".*a",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let sep = Dfa::from_aut_json(&v["certificate"]["separator"].to_string()).unwrap();
    assert_eq!(sep.to_aut_value(), v["certificate"]["separator"]);
    let ab = Alphabet::from_chars("ab").unwrap();
    assert!(sep.accepts(&ab.word("abab").unwrap()) && !sep.accepts(&ab.word("ba").unwrap()));
}

#[test]
fn tag_prints_one_word_per_line() {
    let out = regsep(&[
        "tag",
        "--mod",
        "3",
        "--names",
        "P0,P1,P2",
        "--alphabet",
        "ab",
        "babbbaaa",
        "ab",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "(P0,b)(P1,a)(P2,b)(P0,b)(P1,b)(P2,a)(P0,a)(P1,a)\n(P0,a)(P1,b)\n"
    );
    let json = regsep(&["tag", "--mod", "2", "--alphabet", "a", "--json", "aaa"]);
    assert_eq!(
        stdout_json(&json),
        serde_json::json!(["(M0,a)(M1,a)(M0,a)"])
    );
}

#[test]
fn oracle_modes() {
    let out = regsep(&[
        "oracle",
        "--stratum",
        "su:1",
        "--pattern",
        "--alphabet",
        "ab",
        "a.*",
        "b.*",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert!(v["separator"].is_null());
    assert_eq!(v["refuter"]["kind"], "related-pair");

    let out = regsep(&[
        "oracle",
        "--stratum",
        "mod:2",
        "--pattern",
        "--alphabet",
        "a",
        "(aa)*",
        "a(aa)*",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_json(&out)["separator"],
        serde_json::json!({ "d": 2, "residues": [0] })
    );

    for stratum in ["su:2", "mod:3"] {
        let first = regsep(&[
            "oracle",
            "--stratum",
            stratum,
            "--random",
            "40",
            "--seed",
            "5",
        ]);
        let second = regsep(&[
            "oracle",
            "--stratum",
            stratum,
            "--random",
            "40",
            "--seed",
            "5",
        ]);
        assert_eq!(first.status.code(), Some(0), "{stratum}");
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(stdout_json(&first)["disagreements"], serde_json::json!([]));
    }

    let bad = regsep(&["oracle", "--stratum", "fo:1", "x", "y"]);
    assert_eq!(bad.status.code(), Some(2));
}
