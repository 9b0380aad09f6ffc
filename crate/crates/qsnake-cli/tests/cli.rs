use std::process::{Command, Output};

fn qsnake(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsnake")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qsnake(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn documented_examples() {
    let cases: &[(&[&str], &str)] = &[
        (&["qrat", "7/2"], "(q^4+q^3+2q^2+2q+1)/(q+1)"),
        (&["qrat", "1/1"], "1/1"),
        (&["qrat", "2/7"], "(q^4+q^3)/(q^4+2q^3+2q^2+q+1)"),
        (&["rep", "3", "--cf", "[2;2,2]"], "2,2,1"),
        (&["val", "0,0,0", "--cf", "[2;2,2]"], "0"),
        (&["rep", "-8", "--cf", "[1;1,1,1,1,1]"], "1,1,1,1,1,1"),
        (&["enum", "matchings", "2/7", "--count"], "perp=2 par=7 total=9"),
        (&["markoff", "--word", "00101"], "194"),
        (&["tree", "sb", "--depth", "1"], "1/2 2"),
    ];
    for (args, want) in cases {
        assert_eq!(stdout(args), *want, "{args:?}");
    }
}

#[test]
fn counts_agree_across_models() {
    for x in ["2/7", "84/37", "5"] {
        let m = stdout(&["enum", "matchings", x, "--count"]);
        let tail = |s: &str| s.split_once(' ').unwrap().1.to_string();
        let i = stdout(&["enum", "ideals", x, "--count"]);
        let a = stdout(&["enum", "admissible", x, "--count"]);
        assert_eq!(i, a);
        assert_eq!(tail(&m).split_once(' ').unwrap().1, tail(&i).split_once(' ').unwrap().1);
    }
}

#[test]
fn rep_val_round_trip() {
    for n in -24..17 {
        let n = n.to_string();
        let digits = stdout(&["rep", &n, "--cf", "[2;2,2,2]"]);
        assert_eq!(stdout(&["val", &digits, "--cf", "[2;2,2,2]"]), n);
    }
}

#[test]
fn json_round_trips() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["qrat", "7/2", "--format", "json"])).unwrap();
    let num: qsnake::LaurentPoly = serde_json::from_value(v["numerator"].clone()).unwrap();
    let den: qsnake::LaurentPoly = serde_json::from_value(v["denominator"].clone()).unwrap();
    assert_eq!(format!("({num})/({den})"), v["text"].as_str().unwrap());
    assert_eq!(v["cf"], "[3;2]");

    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["enum", "matchings", "2/7", "--format", "json"])).unwrap();
    let ms = v["matchings"].as_array().unwrap();
    assert_eq!(ms.len(), 9);
    assert_eq!(ms.iter().filter(|m| m["class"] == "perp").count(), 2);
    let word: qsnake::BinaryWord = serde_json::from_value(v["word"].clone()).unwrap();
    let g = qsnake::snake::snake_of_word(&word);
    for m in ms {
        let edges: Vec<[[i64; 2]; 2]> = serde_json::from_value(m["edges"].clone()).unwrap();
        let matching = qsnake::snake::Matching::new(
            edges.iter().map(|[a, b]| qsnake::snake::Edge::new((a[0], a[1]), (b[0], b[1]))).collect(),
        );
        assert!(g.is_perfect_matching(&matching));
        assert_eq!(m["area"], g.area(&matching));
    }

    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["rep", "-8", "--cf", "[1;1,1,1,1,1]", "--format", "json"])).unwrap();
    assert_eq!(v["digits"], serde_json::json!([1, 1, 1, 1, 1, 1]));
    let v: serde_json::Value = serde_json::from_str(&stdout(&["table", "84/37", "--format", "json"])).unwrap();
    assert_eq!(v["prefixes"].as_array().unwrap().last().unwrap()["value"], "84/37");
}

#[test]
fn svg_is_well_formed() {
    for args in [
        vec!["render", "snake", "84/37", "--svg"],
        vec!["render", "snake", "4/5", "--select", "3"],
        vec!["render", "fence", "4/5", "--format", "svg", "--select", "2"],
        vec!["render", "fence", "1"],
    ] {
        let svg = stdout(&args);
        let doc = roxmltree::Document::parse(&svg).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(doc.root_element().tag_name().name(), "svg");
    }
    let dot = stdout(&["render", "snake", "2/7", "--format", "dot"]);
    assert!(dot.starts_with("graph snake {") && dot.ends_with('}'));
}

#[test]
fn exit_codes() {
    assert_eq!(qsnake(&["qrat", "abc"]).status.code(), Some(2));
    assert_eq!(qsnake(&["qrat", "0"]).status.code(), Some(2));
    assert_eq!(qsnake(&["rep", "17", "--cf", "[2;2,2]"]).status.code(), Some(2));
    assert_eq!(qsnake(&["val", "2,2,0", "--cf", "[2;2,2]"]).status.code(), Some(2));
    assert_eq!(qsnake(&["markoff", "--word", "0110"]).status.code(), Some(2));
    assert_eq!(stdout(&["markoff", "--word", "0110", "--any-word"]), "99");
    assert_eq!(qsnake(&["qrat", "7/2", "--format", "svg"]).status.code(), Some(2));
    assert_eq!(qsnake(&["render", "snake", "2/7", "--select", "9"]).status.code(), Some(2));
    assert_eq!(qsnake(&["verify", "--criterion", "1"]).status.code(), Some(0));
}

#[test]
fn fault_injection_names_the_failure() {
    let out = qsnake(&["verify", "--criterion", "4", "--inject-fault", "lq"]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL three-statistics identity"), "{text}");
    assert!(text.contains("matrix product"), "{text}");

    let out = qsnake(&["verify", "--criterion", "1", "--inject-fault", "rq", "--format", "json"]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"][0]["passed"], false);
    assert_eq!(v["results"][0]["name"], "q-rational goldens");
}

#[test]
fn markoff_and_trees() {
    assert_eq!(stdout(&["markoff", "--upto", "200"]), "1 2 5 13 29 34 89 169 194");
    let cw = stdout(&["tree", "cw", "--depth", "2"]);
    assert_eq!(cw, "1/2 2\n1/3 3/2 2/3 3");
    let sb = stdout(&["tree", "sb", "--depth", "2"]);
    assert_eq!(sb, "1/2 2\n1/3 2/3 3/2 3");
    let rows = stdout(&["markoff", "--christoffel", "5"]);
    assert!(rows.lines().any(|l| l.starts_with("00101 194 ")));
}
