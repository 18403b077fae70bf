//! Black-box tests of the `wreath` binary: output formats, exit codes, and
//! grammar round-trips.

use std::process::{Command, Output};

use proptest::prelude::*;

fn wreath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wreath"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = wreath(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn avg_matches_documented_format() {
    assert_eq!(stdout_of(&["avg", "S3"]), "13/6 ≈ 2.16666667\n");
    assert_eq!(stdout_of(&["avg", "C2", "--digits", "3"]), "3/2 ≈ 1.500\n");
}

#[test]
fn maxorder_and_spectrum() {
    assert_eq!(stdout_of(&["maxorder", "W(C4, C2)"]), "8\n");
    assert_eq!(
        stdout_of(&["spectrum", "W(C2, C3)"]),
        "1: 1\n2: 7\n3: 8\n6: 8\n"
    );
}

#[test]
fn spectrum_json_uses_string_keyed_counts() {
    let doc: serde_json::Value =
        serde_json::from_str(&stdout_of(&["spectrum", "S3", "--json"])).unwrap();
    assert_eq!(doc["spectrum"]["2"], "3");
    assert_eq!(doc["group_size"], "6");
}

#[test]
fn tower_emits_csv() {
    let out = stdout_of(&["tower", "--a", "C2", "--b", "C2", "--steps", "2"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,value_num,value_den,decimal");
    assert_eq!(lines[1], "0,19,24,0.79166667");
    assert_eq!(lines[2], "1,487,768,0.63411458");
    assert_eq!(lines.len(), 4);
}

#[test]
fn tower_float_leaves_exact_columns_empty() {
    let out = stdout_of(&[
        "tower", "--a", "C2", "--b", "C2", "--steps", "3", "--mode", "float",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[1].starts_with("0,,,0.791666"));
}

#[test]
fn limits_emits_csv_rows_from_one() {
    let out = stdout_of(&["limits", "--b", "C2", "--p", "2", "--nmax", "3"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[1], "1,19,8,2.37500000");
    assert_eq!(lines[2], "2,87,32,2.71875000");
    assert_eq!(lines[3], "3,367,128,2.86718750");
}

#[test]
fn exit_codes_follow_the_contract() {
    // 1: grammar error
    assert_eq!(wreath(&["avg", "C2 x"]).status.code(), Some(1));
    // 1: usage error
    assert_eq!(wreath(&["no-such-command"]).status.code(), Some(1));
    // 2: semantic / precondition
    assert_eq!(wreath(&["avg", "D2"]).status.code(), Some(2));
    assert_eq!(
        wreath(&["wreath-avg", "--a", "S3", "--b", "C2", "--method", "theorem2"]).status.code(),
        Some(2)
    );
    assert_eq!(wreath(&["psi", "--a", "C6", "--b", "C2"]).status.code(), Some(2));
    // 3: resource cap
    assert_eq!(
        wreath(&["wreath-avg", "--a", "C8", "--b", "C8", "--method", "oracle"]).status.code(),
        Some(3)
    );
    assert_eq!(
        wreath(&["tower", "--a", "C2", "--b", "C2", "--steps", "40", "--bit-budget", "10"])
            .status
            .code(),
        Some(3)
    );
    // 0: help
    assert_eq!(wreath(&["--help"]).status.code(), Some(0));
}

#[test]
fn errors_are_json_when_requested() {
    let out = wreath(&["avg", "D2", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["error"]["code"], 2);
    assert_eq!(doc["error"]["kind"], "precondition");
}

#[test]
fn golden_wreath_avg_outputs() {
    let cases = [
        ("C2", "C2", include_str!("golden/wreath_avg_c2_c2.json")),
        ("C2", "C3", include_str!("golden/wreath_avg_c2_c3.json")),
        ("C4", "C2", include_str!("golden/wreath_avg_c4_c2.json")),
        ("S3", "C2", include_str!("golden/wreath_avg_s3_c2.json")),
        ("C4", "C2 x C2", include_str!("golden/wreath_avg_c4_k4.json")),
    ];
    for (a, b, golden) in cases {
        let out = wreath(&["wreath-avg", "--a", a, "--b", b, "--method", "all", "--json"]);
        assert_eq!(out.status.code(), Some(0), "{a} wr {b}");
        assert_eq!(String::from_utf8(out.stdout).unwrap(), golden, "{a} wr {b}");
    }
}

#[test]
fn json_is_stable_across_runs_and_workers() {
    let args = ["wreath-avg", "--a", "C4", "--b", "C2", "--method", "all", "--json"];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second);
    for workers in ["2", "3", "7"] {
        let mut with_workers: Vec<&str> = args.to_vec();
        with_workers.extend(["--workers", workers]);
        assert_eq!(stdout_of(&with_workers), first, "workers = {workers}");
    }
}

#[test]
fn dist_check_oracle_agrees() {
    let out = wreath(&["dist", "--a", "C4", "--b", "C2", "--check-oracle", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["oracle_match"], true);
    assert_eq!(doc["max_order_exponent"], 3);
    assert_eq!(doc["r"][3]["num"], "1");
    assert_eq!(doc["r"][3]["den"], "32");
}

#[test]
fn abelian_check_reports_bounds() {
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "abelian-check", "--a", "A(2; 1, 1)", "--b", "E(2, 2)", "--json",
    ]))
    .unwrap();
    assert_eq!(doc["t"], 2);
    assert_eq!(doc["bounds_hold"], true);
    assert_eq!(doc["psi"]["num"], "3487");
    assert_eq!(doc["psi"]["den"], "3584");
    // prime mismatch between A and B
    assert_eq!(
        wreath(&["abelian-check", "--a", "C4", "--b", "C3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        wreath(&["abelian-check", "--a", "D4", "--b", "C2"]).status.code(),
        Some(2)
    );
}

// random ASTs rendered and re-parsed: Display and parse_spec are inverse
mod round_trip {
    use super::*;

    #[derive(Debug, Clone)]
    enum Ast {
        Atom(String),
        Product(Vec<Ast>),
        Wreath(Box<Ast>, Box<Ast>),
    }

    impl Ast {
        fn render(&self) -> String {
            match self {
                Ast::Atom(s) => s.clone(),
                Ast::Product(terms) => terms
                    .iter()
                    .map(|t| match t {
                        Ast::Product(_) => format!("({})", t.render()),
                        _ => t.render(),
                    })
                    .collect::<Vec<_>>()
                    .join(" x "),
                Ast::Wreath(a, b) => format!("W({}, {})", a.render(), b.render()),
            }
        }
    }

    fn arb_ast() -> impl Strategy<Value = Ast> {
        let atom = prop_oneof![
            (2u64..64).prop_map(|n| Ast::Atom(format!("C{n}"))),
            (3u64..12).prop_map(|n| Ast::Atom(format!("D{n}"))),
            Just(Ast::Atom("Q8".into())),
            (2u64..=6).prop_map(|n| Ast::Atom(format!("S{n}"))),
            (0usize..3).prop_map(|i| Ast::Atom(format!("E({}, 2)", [2u64, 3, 5][i]))),
            proptest::collection::vec(1u32..4, 1..4)
                .prop_map(|es| {
                    let list: Vec<String> = es.iter().map(|e| e.to_string()).collect();
                    Ast::Atom(format!("A(2; {})", list.join(", ")))
                }),
        ];
        atom.prop_recursive(3, 24, 4, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 2..4).prop_map(Ast::Product),
                (inner.clone(), inner).prop_map(|(a, b)| Ast::Wreath(Box::new(a), Box::new(b))),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn display_then_parse_is_identity(ast in arb_ast()) {
            let text = ast.render();
            let parsed = wreath_cli::spec::parse_spec(&text).unwrap();
            prop_assert_eq!(parsed.to_string(), text);
        }
    }
}
