//! Acceptance suite, criterion 8: the command-line round trip
//! make -> check -> entangle -> apply -> report reproduces the plan's
//! predicted negativity within 1e-6 on 50 seeded draws, with conforming
//! exit codes throughout.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use std::process::{Command, Output};

fn passent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_passent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

fn parse_stdout(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is valid JSON")
}

#[test]
fn acceptance_8_cli_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0008);
    let mut entanglable = 0usize;
    let mut worst_gap = 0.0f64;

    for i in 0..50 {
        let state = dir.path().join(format!("state_{i}.json"));
        let state_path = state.to_str().unwrap();

        // Half the draws are two-mode squeezed states, half are random
        // physical two-mode normal forms (rejection-sampled through the
        // factory's own validation).
        if i % 2 == 0 {
            let r = format!("{}", 0.05 + 1.15 * rng.random::<f64>());
            let out = passent(&["make", "tms", "--r", &r, "--out", state_path]);
            assert_eq!(exit_code(&out), 0, "draw {i}: make tms failed");
        } else {
            loop {
                let a = format!("{}", 1.05 + 1.2 * rng.random::<f64>());
                let b = format!("{}", 1.05 + 1.2 * rng.random::<f64>());
                let c = format!("{}", (2.0 * rng.random::<f64>() - 1.0) * 0.9);
                let d = format!("{}", (2.0 * rng.random::<f64>() - 1.0) * 0.9);
                let out = passent(&[
                    "make", "simon", "--a", &a, "--b", &b, "--c", &c, "--d", &d, "--out",
                    state_path,
                ]);
                match exit_code(&out) {
                    0 => break,
                    2 => continue,
                    other => panic!("draw {i}: make simon exited with {other}"),
                }
            }
        }

        // check: the exit code must match the reported verdict.
        let check = passent(&["check", state_path, "--json"]);
        let can = parse_stdout(&check)["verdict"]["can_entangle"].as_bool().unwrap();
        assert_eq!(exit_code(&check), i32::from(!can), "draw {i}: check exit code");

        // entangle: same exit contract, plus a transform file.
        let kfile = dir.path().join(format!("k_{i}.json"));
        let ent = passent(&[
            "entangle",
            state_path,
            "--json",
            "--out",
            kfile.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&ent), i32::from(!can), "draw {i}: entangle exit code");
        let predicted =
            parse_stdout(&ent)["plan"]["predicted_negativity_bits"].as_f64().unwrap();

        // apply: plain success.
        let outfile = dir.path().join(format!("out_{i}.json"));
        let apply = passent(&[
            "apply",
            state_path,
            kfile.to_str().unwrap(),
            "--out",
            outfile.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&apply), 0, "draw {i}: apply exit code");

        // report: the transformed state carries the predicted negativity.
        let rep = passent(&["report", outfile.to_str().unwrap(), "--json"]);
        let report = parse_stdout(&rep);
        let achieved = report["achieved"]["log_negativity"].as_f64().unwrap();
        let gap = (achieved - predicted).abs();
        assert!(gap < 1e-6, "draw {i}: predicted {predicted}, achieved {achieved}");
        worst_gap = worst_gap.max(gap);
        let entangled = report["achieved"]["is_nppt"].as_bool().unwrap();
        assert_eq!(exit_code(&rep), i32::from(!entangled), "draw {i}: report exit code");
        if can {
            assert!(entangled, "draw {i}: plan failed to entangle an entanglable state");
            entanglable += 1;
        }
    }

    assert!(entanglable >= 25, "only {entanglable}/50 draws were entanglable");
    println!(
        "ACCEPTANCE 8: PASS - 50 CLI round trips reproduce the prediction \
         ({entanglable} entanglable, worst gap {worst_gap:.2e})"
    );
}
