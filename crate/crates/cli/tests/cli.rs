use std::io::Write;
use std::process::{Command, Output};

use luroth_core::algebra::compose_univariate;
use luroth_core::exprparse::{parse_ratfunc, ExprSource};
use luroth_core::luroth::SubfieldPresentation;
use luroth_core::FieldSpec;
use serde_json::Value;

fn luroth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_luroth"))
        .args(args)
        .env_remove("LUROTH_MAX_TERMS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

#[test]
fn powers_report() {
    let o = luroth(&["solve", "--field", "Q", "--vars", "x", "--gens", "x^2,x^3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for line in ["classification: trdeg 1", "v = x", "c = 1", "R1(s) = s^2", "R2(s) = s^3"] {
        assert!(text.contains(line), "missing `{line}` in\n{text}");
    }
}

#[test]
fn independent_generators_show_witness() {
    let o = luroth(&["solve", "--field", "Q", "--vars", "x1,x2", "--gens", "x1+x2,x1*x2", "--json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["classification"], "trdeg >= 2");
    assert_eq!(r["basis"].as_array().unwrap().len(), 2);
    assert_eq!(r["v"], Value::Null);
    assert_eq!(r["checks"]["jacobian_agreement"], true);
    assert_eq!(r["checks"]["vanishing"], true);
}

#[test]
fn composite_field_order_is_input_error() {
    let o = luroth(&["solve", "--field", "GF(4)", "--vars", "x", "--gens", "x"]);
    assert_eq!(code(&o), 1);
    assert!(o.stdout.is_empty());
}

#[test]
fn malformed_input_is_exit_one() {
    let cases: [&[&str]; 5] = [
        &["solve", "--field", "Q", "--vars", "x", "--gens", "x^2+"],
        &["solve", "--field", "Q", "--vars", "x", "--gens", "y"],
        &["solve", "--field", "Q", "--vars", "x,x", "--gens", "x"],
        &["solve", "--field", "Q", "--vars", "x", "--gens", "1/(x-x)"],
        &["solve", "--field", "Q", "--vars", "x"],
    ];
    for args in cases {
        assert_eq!(code(&luroth(args)), 1, "{args:?}");
    }
    assert_eq!(code(&luroth(&["frobnicate"])), 1);
}

#[test]
fn json_is_deterministic_and_round_trips() {
    let args = ["solve", "--field", "Q", "--vars", "x1,x2", "--gens", "(x1^2+x2^2)/(x1*x2),x1^3/x2^3 + 1", "--json"];
    let (a, b) = (luroth(&args), luroth(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    let r = json(&a);
    let vars: Vec<String> = r["vars"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    let parse = |text: &str, vars: &[String]| {
        parse_ratfunc(&ExprSource {
            text,
            vars,
            field: FieldSpec::Rationals,
        })
        .unwrap()
    };
    let v = parse(r["v"].as_str().unwrap(), &vars);
    let s = ["s".to_string()];
    for (g, rep) in r["gens"].as_array().unwrap().iter().zip(r["reps"].as_array().unwrap()) {
        let f = parse(g.as_str().unwrap(), &vars);
        let rep = parse(rep.as_str().unwrap(), &s);
        assert_eq!(compose_univariate(&rep, &v).unwrap(), f);
    }
    assert_eq!(r["checks"]["d_eq_cf"], true);
    assert_eq!(r["limits_hit"], false);
}

#[test]
fn prime_field_skips_jacobian() {
    let o = luroth(&["solve", "--field", "GF(5)", "--vars", "x1,x2", "--gens", "x1/x2,x2^2/x1^2", "--json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["field"], "GF(5)");
    assert_eq!(r["classification"], "trdeg 1");
    assert_eq!(r["checks"]["jacobian_agreement"], Value::Null);
}

#[test]
fn generators_from_file() {
    let path = std::env::temp_dir().join(format!("luroth-gens-{}.txt", std::process::id()));
    let mut file = std::fs::File::create(&path).unwrap();
    writeln!(file, "x1/x2\n\n(x1^2 + x2^2)/(x1*x2)").unwrap();
    drop(file);
    let o = luroth(&["solve", "--field", "Q", "--vars", "x1,x2", "--gens-file", path.to_str().unwrap(), "--json"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["gens"].as_array().unwrap().len(), 2);
    assert_eq!(r["classification"], "trdeg 1");
}

#[test]
fn resource_limit_is_exit_three() {
    let args = ["solve", "--field", "Q", "--vars", "x1,x2", "--gens", "x1^5+x2^3,x1^3*x2^4+x2", "--json"];
    let mut capped = args.to_vec();
    capped.extend(["--max-degree", "3"]);
    let o = luroth(&capped);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["limits_hit"], true);

    let o = Command::new(env!("CARGO_BIN_EXE_luroth"))
        .args(args)
        .env("LUROTH_MAX_TERMS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn selftest_tally() {
    let o = luroth(&["selftest", "--seed", "42", "--count", "10"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "10/10 pass");
}

#[test]
fn selftest_rejects_zero_count() {
    assert_eq!(code(&luroth(&["selftest", "--seed", "1", "--count", "0"])), 1);
}

#[test]
fn selftest_json_is_in_instance_order() {
    let args = ["selftest", "--seed", "3", "--count", "12", "--json"];
    let a = luroth(&args);
    assert_eq!(a.stdout, luroth(&args).stdout);
    let r = json(&a);
    let indices: Vec<u64> = r["instances"].as_array().unwrap().iter().map(|i| i["index"].as_u64().unwrap()).collect();
    assert_eq!(indices, (0..12).collect::<Vec<_>>());
    assert_eq!(r["passed"], 12);
}

#[test]
fn reproduction_string_reruns() {
    // the selftest's reproduction command line is itself a valid solve invocation
    let inst = luroth_core::selftest::planted_instance(1, 4);
    let line = inst.reproduction();
    let cmd = line.split_once(": ").unwrap().1;
    let gens = cmd.split('"').nth(1).unwrap();
    let vars = inst.presentation.x_vars().join(",");
    let o = luroth(&["solve", "--field", "Q", "--vars", &vars, "--gens", gens, "--json"]);
    assert_eq!(code(&o), 0);
    let pres = SubfieldPresentation::parse(FieldSpec::Rationals, &vars.split(',').collect::<Vec<_>>(), &gens.split(',').collect::<Vec<_>>()).unwrap();
    assert_eq!(pres, inst.presentation);
}
