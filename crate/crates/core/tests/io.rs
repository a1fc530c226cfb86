use civar_core::io::*;
use civar_core::Error;
use proptest::prelude::*;

const SUITE: [&str; 8] = ["x^2", "x^3", "x^2, y^2", "x^2, y^3", "x^2, x*y", "x^2, x*y, y^2", "x*y", "x^2-y^2, x*y"];

fn ring_job(rels: &str) -> String {
    let vars = if rels.contains('y') { "x, y" } else { "x" };
    format!("[ring]\nvars = {vars}\nrelations = {rels}\n")
}

#[test]
fn parses_a_ring_block() {
    let job = parse_input("[ring]\np = 101\nvars = x, y\nrelations = x^2, x*y\n").unwrap();
    assert_eq!(job.ring.p, 101);
    assert_eq!(job.ring.vars, ["x", "y"]);
    assert_eq!(job.ring.degs, [1, 1]);
    assert_eq!(job.ring.relations, ["x^2", "x*y"]);
    assert!(job.module.is_none());
    let r = job.ring().unwrap();
    assert_eq!(r.relations().len(), 2);
}

#[test]
fn empty_relations_give_the_polynomial_ring() {
    let job = parse_input("[ring]\nvars = x, y\nrelations =\n").unwrap();
    assert!(job.ring.relations.is_empty());
    assert!(job.ring().unwrap().is_polynomial());
    let job = parse_input("[ring]\nvars = x\n").unwrap();
    assert!(job.ring().unwrap().is_polynomial());
}

#[test]
fn unknown_variable_is_located() {
    let err = parse_input("[ring]\nvars = x, y\nrelations = x^2, z*y\n").unwrap_err();
    assert_eq!(err, Error::UnknownVariable { name: "z".into(), line: 3, col: 18 });
}

#[test]
fn inhomogeneous_entries_are_rejected() {
    let err = parse_input("[ring]\nvars = x, y\nrelations = x^2 + y\n").unwrap_err();
    assert!(matches!(err, Error::InhomogeneousEntry { line: 3, col: 13, .. }), "{err:?}");
    let text = "[ring]\nvars = x, y\n[module]\nmatrix = x, y^2\ncol_twists = 1, 1\n";
    assert!(matches!(parse_input(text), Err(Error::InhomogeneousEntry { line: 4, col: 13, .. })));
}

#[test]
fn structural_errors() {
    for (text, line) in [
        ("vars = x\n", 1),
        ("[ring]\nvars = x\n[rings]\n", 3),
        ("[ring]\nvars = x\nvars = y\n", 3),
        ("[ring]\nvars = x\nfoo = 1\n", 3),
        ("[ring]\nvars = x, x\n", 2),
        ("[ring]\nvars = x\ndegs = 0\n", 3),
        ("[ring]\nvars = x\ndegs = 1, 1\n", 3),
        ("[ring]\nvars = x\np = seven\n", 3),
        ("[ring]\nvars = x\nrelations = x^\n", 3),
        ("[ring]\nvars = x\njust text\n", 3),
        ("[ring]\nvars = x, y\n[module]\nmatrix = x, y; x\n", 4),
    ] {
        match parse_input(text) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
    assert!(matches!(parse_input("[ring]\nvars = x\np = 12\n"), Err(Error::NonPrimeModulus(12))));
}

#[test]
fn module_twists_are_inferred() {
    let job = parse_input("[ring]\nvars = x, y\ndegs = 1, 2\n[module]\nmatrix = x, y; 0, x\nrow_twists = 0, 1\n").unwrap();
    let m = job.module.unwrap();
    assert_eq!(m.col_twists, [1, 2]);
    assert_eq!(m.matrix, [["x", "y"], ["0", "x"]]);
}

#[test]
fn g_lives_in_the_operator_ring() {
    let job = parse_input("[ring]\nvars = x, y\nrelations = x^2, y^2\n[params]\nN = 6\nsmax = 9\ng = chi1, chi1 + chi2\n").unwrap();
    assert_eq!(job.params, Params { n: Some(6), smax: Some(9), g: vec!["chi1".into(), "chi1+chi2".into()] });
    assert!(matches!(
        parse_input("[ring]\nvars = x\nrelations = x^2\n[params]\ng = chi2\n"),
        Err(Error::UnknownVariable { .. })
    ));
}

#[test]
fn comments_and_blank_lines() {
    let text = "# a job\n\n[ring]\n  # indented comment\nvars = x\n\nrelations = x^2\n";
    assert_eq!(parse_input(text).unwrap().ring.relations, ["x^2"]);
}

#[test]
fn print_parse_round_trip_on_suite() {
    for rels in SUITE {
        let job = parse_input(&ring_job(rels)).unwrap();
        assert_eq!(parse_input(&print_job(&job)).unwrap(), job);
    }
    let text = "[ring]\np = 7\nvars = a, b\ndegs = 2, 3\nrelations = a^3-b^2\n[module]\nmatrix = a, b; b, a^2\nrow_twists = 0, -1\n[params]\nN = 5\ng = 2*chi1\n";
    let job = parse_input(text).unwrap();
    let printed = print_job(&job);
    assert_eq!(parse_input(&printed).unwrap(), job);
    assert_eq!(print_job(&parse_input(&printed).unwrap()), printed);
}

#[test]
fn unknown_command_is_reported() {
    let mut job = parse_input(&ring_job("x^2")).unwrap();
    job.command = Some("frobnicate".into());
    assert_eq!(run_command(&job).unwrap_err(), Error::UnknownCommand("frobnicate".into()));
}

#[test]
fn reports_are_deterministic_and_sorted() {
    let mut job = parse_input(&ring_job("x^2, y^2")).unwrap();
    job.command = Some("ci-check".into());
    let a = run_command(&job).unwrap().to_json();
    let b = run_command(&job).unwrap().to_json();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["result"]["verdict"], "CI");
    assert_eq!(v["result"]["agreement"], true);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "input_echo", "provenance", "result"]);
    let prov: Vec<&String> = v["provenance"].as_object().unwrap().keys().collect();
    assert_eq!(prov, ["N", "order", "smax", "stable", "version"]);
}

#[test]
fn ext_kk_report_shape() {
    let mut job = parse_input(&ring_job("x^2, y^2")).unwrap();
    job.command = Some("ext-kk".into());
    let v = run_command(&job).unwrap().to_value();
    assert_eq!(v["result"]["rank"], 4);
    assert_eq!(v["result"]["generator_degrees"], serde_json::json!([0, 1, 1, 2]));
}

#[test]
fn c_tilde_report_names_the_ideal() {
    let mut job = parse_input(&(ring_job("x^2, y^2") + "[params]\ng = chi1\n")).unwrap();
    job.command = Some("c-tilde-variety".into());
    let v = run_command(&job).unwrap().to_value();
    assert_eq!(v["result"]["elements"][0]["variety_ideal"], "(chi1)");
    assert_eq!(v["result"]["elements"][0]["equal"], true);
}

fn poly_strategy() -> impl Strategy<Value = String> {
    let mono = (0u32..4, 0u32..4, 1i64..6).prop_map(|(a, b, c)| format!("{c}*x^{a}*y^{b}"));
    prop::collection::vec(mono, 1..4).prop_map(|ms| ms.join(" + "))
}

const VALID: &str = "[ring]\np = 7\nvars = a, b\ndegs = 2, 3\nrelations = a^3-b^2\n[module]\nmatrix = a, b; b, a^2\nrow_twists = 0, -1\n[params]\nN = 5\ng = 2*chi1\n";

fn mutated() -> impl Strategy<Value = String> {
    let edit = (0usize..VALID.len(), 0usize..3, prop::sample::select(&b"ab0123456789^*+-(),;=[]# \nxchi"[..]));
    prop::collection::vec(edit, 1..6).prop_map(|edits| {
        let mut bytes = VALID.as_bytes().to_vec();
        for (pos, kind, c) in edits {
            let pos = pos.min(bytes.len().saturating_sub(1));
            match kind {
                0 => bytes.insert(pos, c),
                1 if !bytes.is_empty() => {
                    bytes.remove(pos);
                }
                _ => bytes[pos] = c,
            }
        }
        String::from_utf8(bytes).unwrap()
    })
}

proptest! {
    #[test]
    fn mutated_jobs_parse_or_fail_cleanly(text in mutated()) {
        if let Ok(job) = parse_input(&text) {
            prop_assert_eq!(parse_input(&print_job(&job)).unwrap(), job);
        }
    }

    #[test]
    fn parser_never_panics(s in "\\PC{0,80}") {
        let _ = parse_input(&s);
    }

    #[test]
    fn printed_relations_reparse(p in poly_strategy()) {
        let text = format!("[ring]\nvars = x, y\n[params]\nN = 3\n[module]\nmatrix = {p}\n");
        if let Ok(job) = parse_input(&text) {
            prop_assert_eq!(parse_input(&print_job(&job)).unwrap(), job);
        }
    }
}
