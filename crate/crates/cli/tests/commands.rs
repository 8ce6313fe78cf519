use dilator_cli::{run, Outcome};

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("dilator").chain(args.iter().copied()))
}

#[test]
fn golden_json_is_stable() {
    let cases: [(&[&str], &str); 3] = [
        (&["--json", "eval", "w^w + w*2 + 3"], include_str!("golden/eval.json")),
        (&["--json", "dil-check", "F", "--size", "3"], include_str!("golden/dil_check.json")),
        (&["--json", "embed-j", "--order", "fin:3", "--seq", "2,0"], include_str!("golden/embed_j.json")),
    ];
    for (args, golden) in cases {
        let out = cli(args);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        assert_eq!(out.stdout.trim_end(), golden.trim_end(), "{args:?}");
    }
}

#[test]
fn json_documents_have_the_four_fields() {
    for args in [
        &["--json", "wf-search", "--order", "ints", "--budget", "5"][..],
        &["--json", "fix", "--fn", "g", "--below", "w^w", "--count", "3"],
        &["--json", "export-T0", "F", "--size", "1"],
    ] {
        let out = cli(args);
        let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        let obj = doc.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(keys, ["command", "inputs", "result", "witnesses"]);
    }
}

#[test]
fn arithmetic_commands() {
    assert_eq!(cli(&["f", "w^w"]).stdout, "w^w");
    assert_eq!(cli(&["f", "w+1"]).stdout, "w*2");
    assert_eq!(cli(&["g", "w+1"]).stdout, "w*2+1");
    assert_eq!(cli(&["fprime", "1"]).stdout, "w^w");
    assert_eq!(cli(&["gprime", "w"]).stdout, "w^w");
    assert_eq!(cli(&["eval", "2^(w+3)"]).stdout, "w*8");
    assert_eq!(cli(&["cmp", "w*2", "w^2"]).stdout, "<");
    assert_eq!(cli(&["fix", "--fn", "f", "--below", "w^w^2", "--count", "2"]).stdout, "w, w^w");
    assert_eq!(cli(&["fix", "--fn", "g", "--below", "w^3", "--count", "9"]).stdout, "w, w^2");
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["dil-check", "F", "--size", "4"]).code, 0);
    assert_eq!(cli(&["dil-check", "successor", "--size", "3"]).code, 0);
    assert_eq!(cli(&["dil-check", "nonsense"]).code, 2);
    assert_eq!(cli(&["eval", "3^w"]).code, 2);
    assert_eq!(cli(&["eval", "w +"]).code, 2);
    assert_eq!(cli(&["bogus"]).code, 2);
    let bad = cli(&["embed-j", "--order", "fin:4", "--seq", "1,3"]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("not strictly descending"), "{}", bad.stderr);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn extension_and_search_commands() {
    let out = cli(&["dil-extend", "F", "--order", "fin:2", "--count", "10"]);
    assert_eq!(out.stdout.lines().count(), 4);
    let out = cli(&["dil-extend", "F.E", "--order", "fin:1", "--count", "3"]);
    assert_eq!(out.code, 0);
    let out = cli(&["wf-search", "--order", "ord:w^2", "--budget", "20"]);
    assert!(out.stdout.starts_with("none"));
    let out = cli(&["wf-search", "--order", "ints", "--budget", "20", "--strategy", "random", "--seed", "5"]);
    assert!(out.stdout.starts_with("chain of length 20"));
    let out = cli(&["embed-j", "--order", "ord:w^2", "--seq", "w+1,5"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

#[test]
fn export_t0_records() {
    let out = cli(&["export-T0", "F", "--size", "2", "--count", "10"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 1 + 2 + 4);
    assert_eq!(lines[0], "(0, ⊥)");
    assert_eq!(lines[6], "(2, <1,0>)");
}
