use grothendieck_cli::run;
use grothendieck_core::format::from_json;
use grothendieck_core::grothendieck::{big_g_jt, small_g_jt};
use grothendieck_core::shapes::Partition;
use grothendieck_core::Context;
use std::process::Command;

fn groth(args: &str) -> grothendieck_cli::Output {
    run(std::iter::once("groth").chain(args.split_whitespace()))
}

#[test]
fn compute_g_of_one_box() {
    let out = groth("compute G --shape 1 --n 2 --deg 2");
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "(x1+x2) + a1*(x1^2+x1*x2+x2^2) - b1*x1*x2\n");
}

#[test]
fn empty_shape_is_one() {
    let out = groth("compute s --shape 0 --n 1");
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.trim(), "1");
}

#[test]
fn verify_duality_passes() {
    let out = groth("verify duality --max-size 3");
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.starts_with("ok verify duality"));
}

#[test]
fn json_output_round_trips() {
    let ctx = Context::new(2, 4);
    let lambda = Partition::new(vec![2, 1]).unwrap();
    for (kind, want) in [("G", big_g_jt(&lambda, ctx).unwrap()), ("g", small_g_jt(&lambda, ctx).unwrap())] {
        let out = groth(&format!("compute {} --shape 2,1 --n 2 --deg 4 --format json-like", kind));
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(from_json(out.stdout.trim()).unwrap(), want);
    }
}

#[test]
fn output_is_byte_stable() {
    for args in ["compute G --shape 2,1 --n 3 --format json-like", "expand G --shape 2 --n 2 --budget 3", "enumerate g --shape 2,1 --n 2"] {
        assert_eq!(groth(args).stdout, groth(args).stdout, "{}", args);
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in ["bogus", "compute G --shape 2,x --n 2", "compute G --shape 1,2 --n 2", "compute G --shape 2,1,1 --n 2", "verify nothing"] {
        assert_eq!(groth(args).code, 2, "{}", args);
    }
}

#[test]
fn low_degree_bound_warns() {
    let out = groth("compute G --shape 2,1 --n 2 --deg 1");
    assert_eq!(out.code, 0);
    assert!(out.stderr.contains("warning"), "{}", out.stderr);
}

#[test]
fn unsatisfied_flag_hypothesis_warns() {
    let out = groth("compute G --shape 1,1 --inner 0 --flags-r 2,1 --flags-s 2,2");
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stderr.contains("warning"), "{}", out.stderr);
}

#[test]
fn coefficients_and_specialization() {
    assert_eq!(groth("coeff C --shape 1 --inner 2,1").stdout.trim(), "-a1*b1");
    assert_eq!(groth("coeff hall --shape 1 --inner 1").stdout.trim(), "1");
    assert_eq!(
        groth("compute g --shape 2,1 --n 2 --spec a=0").stdout.trim(),
        "(x1^2*x2+x1*x2^2) + b1*(x1^2+x1*x2+x2^2)"
    );
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_groth");
    let ok = Command::new(bin).args(["compute", "s", "--shape", "1", "--n", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "(x1+x2)\n");
    let bad = Command::new(bin).args(["compute"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
