use serde_json::Value;
use sra_trace::cli::{run, Outcome};
use sra_trace::exactnum::rational::int;
use sra_trace::ideal::{build_moment_table, MomentTable};
use sra_trace::trace::{degenerate_values, DegenerateFamily, FamilyKind};
use sra_trace::Error;

fn cli(args: &str) -> Outcome {
    run(std::iter::once("sra-trace").chain(args.split_whitespace()))
}

fn json(args: &str) -> Value {
    let out = cli(&format!("{args} --format json"));
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn supertrace_space_dimension_example() {
    let out = cli("trace-dim --n 5 --kappa -1 --degree 6");
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("dimension 3 (expected 3)"), "{}", out.stdout);
    let v = json("trace-dim --n 5 --kappa -1 --degree 6");
    assert_eq!(v["spaces"][0]["dimension"], 3);
}

#[test]
fn coincide_example() {
    let out = cli("coincide --n 3 --z 1 --J 6");
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json("coincide --n 3 --z 1 --J 6");
    assert_eq!(v["verdict"], "equal");
    assert_eq!(v["J"], 6);
    assert_eq!(v["per_p"].as_array().unwrap().len(), 3);
    for row in v["per_p"].as_array().unwrap() {
        assert_eq!(row["equal"], true);
        assert_eq!(row["phi_plus"], row["phi_minus"]);
    }
}

#[test]
fn moments_example_rows_vanish() {
    let v = json("moments --n 3 --z 1 --kappa 1 --smax 6");
    let t: MomentTable = serde_json::from_value(v["tables"][0].clone()).unwrap();
    assert_eq!(t.s_max, 6);
    for p in 1..3 {
        for s in 0..=6 {
            assert!(t.get(p, s).is_zero(), "m[{p}][{s}] = {}", t.get(p, s));
        }
    }
    assert!(!t.get(0, 0).is_zero());
}

#[test]
fn moment_json_round_trips() {
    let v = json("moments --n 3 --z 2 --kappa -1 --smax 4 --bf-degree 6");
    let t: MomentTable = serde_json::from_value(v["tables"][0].clone()).unwrap();
    assert_eq!(serde_json::to_value(&t).unwrap(), v["tables"][0]);
    let text = serde_json::to_string(&t).unwrap();
    let back: MomentTable = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), text);

    let sp = degenerate_values(3, &DegenerateFamily::new(FamilyKind::SuperTraceZ, 2, int(1))).unwrap();
    assert_eq!(t, build_moment_table(&sp, 4, 6).unwrap());
}

#[test]
fn classify_examples() {
    let v = json("classify --n 3 --nu 1/3");
    assert_eq!(v["classification"]["kind"], "degenerate");
    assert_eq!(v["classification"]["z"], 1);
    let fams = v["families"].as_array().unwrap();
    assert_eq!(fams.len(), 2);
    let text = cli("classify --n 3 --nu 1/3").stdout;
    let values: Vec<&str> = text.lines().filter(|l| l.contains("sp(S")).collect();
    assert_eq!(values.len(), 3);
    assert!(values.iter().all(|l| l.ends_with("= 2/3")), "{text}");

    let v = json("classify --n 3 --nu 7/2");
    assert_eq!(v["families"][0]["family"], "str_1/2");
    let v = json("classify --n 3 --nu 2");
    assert_eq!(v["classification"]["kind"], "none_known");
    assert!(v["families"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        "classify --n 3 --nu x/2",
        "classify --n 4 --nu 1/3",
        "moments --n 3 --smax 2",
        "moments --n 3 --z 1 --nu 1/3",
        "eval --n 3 --nu 1/3 --params 1 --expr S0",
        "coincide --n 3 --z 3",
        "gram --n 3 --z 1 --family half --kappa 1",
        "eval --n 3 --nu 1/3 --kappa 1 --expr q0",
        "moments --n 3 --z 1 --format csv --kappa 7",
        "frobnicate",
    ] {
        let out = cli(args);
        assert_eq!(out.code, 2, "{args}: {}{}", out.stdout, out.stderr);
        assert!(!out.stderr.is_empty(), "{args}");
    }
}

#[test]
fn resource_errors_exit_3() {
    for args in [
        "trace-dim --n 3 --degree 40",
        "moments --n 3 --nu 1/4 --kappa 1 --smax 12",
        "moments --n 3 --z 1 --smax 40",
    ] {
        let out = cli(args);
        assert_eq!(out.code, 3, "{args}: {}", out.stderr);
        assert!(out.stderr.contains("raise limits"), "{}", out.stderr);
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(cli("--help").code, 0);
    assert_eq!(cli("coincide --help").code, 0);
    assert_eq!(cli("--version").code, 0);
}

#[test]
fn exit_code_contract() {
    assert_eq!(Error::mismatch("x").exit_code(), 1);
    assert_eq!(Error::usage("x").exit_code(), 2);
    assert_eq!(Error::Resource("x".into()).exit_code(), 3);
}

#[test]
fn output_file_and_csv() {
    let dir = std::env::temp_dir().join(format!("sra-trace-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gram.csv");
    let out = cli(&format!(
        "gram --n 3 --z 1 --kappa 1 --J 1 --format csv --output {}",
        path.display()
    ));
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("row,col,value"));
    assert!(csv.contains("Q0,Q0,2/3"));
    std::fs::remove_dir_all(&dir).unwrap();

    let out = cli("moments --n 3 --z 1 --smax 1 --format csv --approx");
    assert_eq!(out.code, 0);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("kappa,p,s,value,provenance,approx"));
    // 2 kappas x 3 p x 2 s
    assert_eq!(lines.count(), 12);

    assert_eq!(cli("coincide --n 3 --z 1 --format csv").code, 2);
}

#[test]
fn subcommands_verify() {
    for args in [
        "genfun-verify --n 3 --z 2",
        "genfun-verify --n 5 --z 1 --smax 4",
        "annihilators --n 3 --z 4 --kappa 1 --bf-degree 8",
        "gram --n 3 --nu 2/7 --J 2",
        "glc-check --n 3 --nu 2/7 --kappa -1 --params 1,2",
        "glc-check --n 5 --nu -3/8 --kappa 1 --params 1/2,3 --degree 2",
        "eval --n 3 --z 1 --expr S0",
    ] {
        let out = cli(args);
        assert_eq!(out.code, 0, "{args}: {}{}", out.stdout, out.stderr);
        assert!(!out.stdout.contains("FAIL"), "{args}: {}", out.stdout);
    }
}

#[test]
fn eval_matches_family_values() {
    let v = json("eval --n 3 --z 1 --expr S0");
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    // tr_1(S_0) = 2ν²nX with X = 1 at τ = 1 gives 2/3; str_1(S_0) = 2/3
    let text = cli("eval --n 3 --z 1 --expr S0").stdout;
    assert_eq!(text.matches("= 2/3").count(), 2, "{text}");
}

#[test]
fn gram_kernel_at_degenerate_point_only() {
    let v = json("gram --n 3 --z 1 --kappa 1 --J 3");
    assert!(v["grams"][0]["kernel_dimension"].as_u64().unwrap() > 0);
    let v = json("gram --n 3 --nu 1/4 --kappa 1 --J 3");
    assert_eq!(v["grams"][0]["kernel_dimension"], 0);
}
