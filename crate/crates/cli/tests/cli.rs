//! End-to-end tests of the `freqkal` binary: formats, determinism,
//! refinement behavior observable through files, and the exit-code
//! contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use freqkal::spectral::{idct, ChannelSpectrum};
use freqkal::{Axis, MotionSequence};
use freqkal_cli::formats;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_freqkal"))
}

fn run_ok(dir: &Path, args: &[&str]) -> String {
    let out = bin().current_dir(dir).args(args).output().expect("spawn");
    assert!(
        out.status.success(),
        "freqkal {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 stdout")
}

fn run_err(dir: &Path, args: &[&str]) -> Output {
    let out = bin().current_dir(dir).args(args).output().expect("spawn");
    assert!(!out.status.success(), "freqkal {args:?} unexpectedly succeeded");
    out
}

fn bytes(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

fn max_abs_diff(a: &MotionSequence, b: &MotionSequence) -> f64 {
    a.data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// joint 0: exact dyadic quadratic (zero jerk); joint 1: a single DCT bin
/// above the default cutoff, i.e. pure high-band motion.
fn quad_plus_high_band(frames: usize) -> MotionSequence {
    let mut coeffs = vec![0.0; frames];
    coeffs[15] = 4.0;
    let hb = idct(&ChannelSpectrum::from_coeffs(coeffs).unwrap()).unwrap();
    MotionSequence::from_fn(frames, 2, 30.0, |t, j, _axis| {
        if j == 0 {
            let t = t as f64;
            0.5 + 0.25 * t + 0.125 * t * t
        } else {
            hb[t]
        }
    })
    .unwrap()
}

#[test]
fn motion_formats_interconvert_losslessly() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("m.json");
    run_ok(dir.path(), &["synth", "--kind", "walk-like", "--frames", "50", "--joints", "4", "--seed", "11", "--out", "m.json"]);

    let original = formats::read_motion(&json).unwrap();
    let csv = dir.path().join("m.csv");
    formats::write_motion(&csv, &original).unwrap();
    let via_csv = formats::read_motion(&csv).unwrap();
    assert_eq!(original.data(), via_csv.data(), "values must survive bit-for-bit");
    assert_eq!(original.fps(), via_csv.fps());
    assert_eq!(original.joint_names(), via_csv.joint_names());

    let json2 = dir.path().join("m2.json");
    formats::write_motion(&json2, &via_csv).unwrap();
    let back = formats::read_motion(&json2).unwrap();
    assert_eq!(original.data(), back.data());
    // same format + same values -> same bytes
    let (a, b) = (bytes(&json), bytes(&json2));
    if a != b {
        let i = a.iter().zip(&b).position(|(x, y)| x != y).unwrap_or(a.len().min(b.len()));
        let lo = i.saturating_sub(40);
        panic!(
            "byte diff at {i}:\n A: {}\n B: {}",
            String::from_utf8_lossy(&a[lo..(i + 40).min(a.len())]),
            String::from_utf8_lossy(&b[lo..(i + 40).min(b.len())])
        );
    }
}

#[test]
fn csv_preamble_is_optional() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bare.csv");
    std::fs::write(&path, "frame,joint,x,y,z\n0,0,1.5,2.5,3.5\n1,0,4.5,5.5,6.5\n").unwrap();
    let m = formats::read_motion(&path).unwrap();
    assert_eq!((m.frames(), m.joints()), (2, 1));
    assert_eq!(m.fps(), 1.0, "fps defaults to 1 when the preamble is absent");
    assert_eq!(m.get(1, 0, Axis::Z), 6.5);
}

#[test]
fn synth_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["synth", "--kind", "sinusoid-mix", "--frames", "60", "--joints", "15", "--seed", "7", "--noise-ratio", "0.5"];
    run_ok(dir.path(), &[&args[..], &["--out", "a.json"]].concat());
    run_ok(dir.path(), &[&args[..], &["--out", "b.json"]].concat());
    for (x, y) in [("a.json", "b.json"), ("a.noisy.json", "b.noisy.json")] {
        assert_eq!(bytes(&dir.path().join(x)), bytes(&dir.path().join(y)), "{x} vs {y}");
    }
    // sidecars differ only in the echoed spec? no — they carry no paths, so
    // they are identical too
    assert_eq!(bytes(&dir.path().join("a.rho.json")), bytes(&dir.path().join("b.rho.json")));
}

#[test]
fn refine_is_thread_count_independent() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["synth", "--frames", "80", "--joints", "6", "--seed", "3", "--noise-ratio", "0.4", "--out", "m.json"]);
    run_ok(dir.path(), &["refine", "--input", "m.noisy.json", "--output", "r1.json", "--report", "rep1.json", "--threads", "1"]);
    run_ok(dir.path(), &["refine", "--input", "m.noisy.json", "--output", "r8.json", "--report", "rep8.json", "--threads", "8"]);
    run_ok(dir.path(), &["refine", "--input", "m.noisy.json", "--output", "rd.json", "--report", "repd.json"]);
    let r1 = bytes(&dir.path().join("r1.json"));
    assert_eq!(r1, bytes(&dir.path().join("r8.json")));
    assert_eq!(r1, bytes(&dir.path().join("rd.json")));
    // reports echo their own output path, so compare the computed content
    let subtree = |name: &str| -> serde_json::Value {
        let mut v: serde_json::Value =
            serde_json::from_slice(&bytes(&dir.path().join(name))).unwrap();
        let obj = v.as_object_mut().unwrap();
        obj.remove("output");
        v
    };
    let rep1 = subtree("rep1.json");
    assert_eq!(rep1, subtree("rep8.json"));
    assert_eq!(rep1, subtree("repd.json"));
}

#[test]
fn clean_bandlimited_input_passes_through() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["synth", "--kind", "sinusoid-mix", "--frames", "100", "--joints", "5", "--seed", "21", "--out", "clean.json"]);
    run_ok(dir.path(), &["refine", "--input", "clean.json", "--output", "out.json"]);
    let clean = formats::read_motion(&dir.path().join("clean.json")).unwrap();
    let out = formats::read_motion(&dir.path().join("out.json")).unwrap();
    assert!(max_abs_diff(&clean, &out) < 1e-9);
}

#[test]
fn suppress_gamma_one_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["synth", "--frames", "64", "--joints", "3", "--seed", "9", "--noise-ratio", "0.6", "--out", "m.json"]);
    run_ok(dir.path(), &["refine", "--input", "m.noisy.json", "--output", "same.json", "--mode", "fixed-suppress", "--gamma", "1.0"]);
    let a = formats::read_motion(&dir.path().join("m.noisy.json")).unwrap();
    let b = formats::read_motion(&dir.path().join("same.json")).unwrap();
    assert!(max_abs_diff(&a, &b) < 1e-12, "gamma=1 must be an identity up to transform round-trip");
}

#[test]
fn report_reflects_spectral_estimates() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["synth", "--frames", "100", "--joints", "4", "--seed", "5", "--noise-ratio", "0.5", "--out", "m.json"]);
    run_ok(dir.path(), &["refine", "--input", "m.noisy.json", "--output", "r.json", "--report", "rep.json"]);
    let rep: serde_json::Value =
        serde_json::from_slice(&bytes(&dir.path().join("rep.json"))).unwrap();
    assert!(rep.get("timing_ms").is_none(), "timing only appears with --timing");
    let channels = rep["channels"].as_array().unwrap();
    assert_eq!(channels.len(), 12);
    for ch in channels {
        let rho = ch["rho"].as_f64().unwrap();
        let snr = ch["snr_est"].as_f64().unwrap();
        let r = ch["r"].as_f64().unwrap();
        assert!((rho - 0.5).abs() < 1e-6, "rho = {rho}");
        assert!((snr - 1.0).abs() < 1e-3, "snr = {snr}");
        assert!((r - 6.666666666666667e-3).abs() / r < 1e-3, "r = {r}");
    }

    run_ok(dir.path(), &["refine", "--input", "m.noisy.json", "--output", "r2.json", "--report", "rep2.json", "--timing"]);
    let rep2: serde_json::Value =
        serde_json::from_slice(&bytes(&dir.path().join("rep2.json"))).unwrap();
    assert!(rep2["timing_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn config_echo_replay_reproduces_bytes() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["synth", "--frames", "72", "--joints", "3", "--seed", "13", "--noise-ratio", "0.3", "--out", "m.json"]);
    run_ok(dir.path(), &["refine", "--input", "m.noisy.json", "--output", "r1.json", "--report", "rep.json", "--mode", "fixed-kalman", "--q0", "2e-6", "--k0", "12"]);
    run_ok(dir.path(), &["refine", "--input", "m.noisy.json", "--output", "r2.json", "--config", "rep.json"]);
    assert_eq!(bytes(&dir.path().join("r1.json")), bytes(&dir.path().join("r2.json")));

    // synth sidecar is an equally valid replay config
    run_ok(dir.path(), &["synth", "--config", "m.rho.json", "--out", "m2.json"]);
    assert_eq!(bytes(&dir.path().join("m.json")), bytes(&dir.path().join("m2.json")));
    assert_eq!(bytes(&dir.path().join("m.noisy.json")), bytes(&dir.path().join("m2.noisy.json")));
}

#[test]
fn white_noise_sidecar_has_no_rho() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["synth", "--frames", "40", "--joints", "2", "--seed", "2", "--noise-sigma", "0.1", "--out", "w.json"]);
    let sidecar: serde_json::Value =
        serde_json::from_slice(&bytes(&dir.path().join("w.rho.json"))).unwrap();
    let ch = &sidecar["channels"][0];
    assert!(ch.get("rho").is_none(), "white noise has no band ratio to report");
    assert!(ch["noise_energy"].as_f64().unwrap() > 0.0);
}

#[test]
fn evaluate_reports_exact_identities() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["synth", "--frames", "30", "--joints", "3", "--seed", "1", "--out", "gt.json"]);
    std::fs::create_dir(dir.path().join("same")).unwrap();
    std::fs::copy(dir.path().join("gt.json"), dir.path().join("same/p1.json")).unwrap();
    std::fs::copy(dir.path().join("gt.json"), dir.path().join("same/p2.json")).unwrap();
    let out = run_ok(dir.path(), &["evaluate", "--pred-dir", "same", "--gt", "gt.json"]);
    assert!(out.contains("apd = 0\n"), "identical samples have zero diversity: {out}");
    assert!(out.contains("ade = 0\n"), "{out}");
    assert!(out.contains("fde = 0\n"), "{out}");

    // a multimodal ground-truth set holding only the ground truth itself
    std::fs::create_dir(dir.path().join("mm")).unwrap();
    std::fs::copy(dir.path().join("gt.json"), dir.path().join("mm/gt.json")).unwrap();
    std::fs::create_dir(dir.path().join("preds")).unwrap();
    run_ok(dir.path(), &["synth", "--frames", "30", "--joints", "3", "--seed", "8", "--out", "preds/a.json"]);
    run_ok(dir.path(), &["synth", "--frames", "30", "--joints", "3", "--seed", "9", "--out", "preds/b.json"]);
    let out = run_ok(dir.path(), &["evaluate", "--pred-dir", "preds", "--gt", "gt.json", "--mm-gt-dir", "mm", "--out", "e.json"]);
    let ade = grab(&out, "ade");
    let mmade = grab(&out, "mmade");
    assert!(ade > 0.0);
    assert_eq!(ade, mmade, "a singleton gt set reduces mmade to ade");
    let fde = grab(&out, "fde");
    assert_eq!(fde, grab(&out, "mmfde"));
    let doc: serde_json::Value = serde_json::from_slice(&bytes(&dir.path().join("e.json"))).unwrap();
    assert_eq!(doc["metrics"]["k"].as_u64(), Some(2));
    assert_eq!(doc["metrics"]["m"].as_u64(), Some(1));
}

fn grab(stdout: &str, name: &str) -> f64 {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{name} = ")))
        .unwrap_or_else(|| panic!("no `{name}` line in {stdout}"))
        .parse()
        .unwrap()
}

#[test]
fn evaluate_multimodal_filter_selects_neighbors() {
    let dir = tempfile::tempdir().unwrap();
    for (name, seed) in [("pasts/a.json", 31), ("pasts/b.json", 32)] {
        std::fs::create_dir_all(dir.path().join("pasts")).ok();
        run_ok(dir.path(), &["synth", "--frames", "20", "--joints", "2", "--seed", &seed.to_string(), "--out", name]);
    }
    std::fs::create_dir_all(dir.path().join("futs")).unwrap();
    for (name, seed) in [("futs/a.json", 41), ("futs/b.json", 42)] {
        run_ok(dir.path(), &["synth", "--frames", "30", "--joints", "2", "--seed", &seed.to_string(), "--out", name]);
    }
    std::fs::create_dir_all(dir.path().join("preds")).unwrap();
    for (name, seed) in [("preds/p.json", 51), ("preds/q.json", 52)] {
        run_ok(dir.path(), &["synth", "--frames", "30", "--joints", "2", "--seed", &seed.to_string(), "--out", name]);
    }
    // query equals pasts/a exactly, eps 0 keeps only futs/a
    let filtered = run_ok(dir.path(), &[
        "evaluate", "--pred-dir", "preds", "--gt", "futs/a.json",
        "--mm-gt-dir", "futs", "--mm-past-dir", "pasts",
        "--query-past", "pasts/a.json", "--mm-eps", "0", "--metrics", "mmade",
    ]);
    let direct = run_ok(dir.path(), &[
        "evaluate", "--pred-dir", "preds", "--gt", "futs/a.json", "--metrics", "ade",
    ]);
    assert_eq!(grab(&filtered, "mmade"), grab(&direct, "ade"));
}

#[test]
fn jitter_gamma_zero_flattens_pure_high_band() {
    let dir = tempfile::tempdir().unwrap();
    let base = quad_plus_high_band(64);
    formats::write_motion(&dir.path().join("base.json"), &base).unwrap();
    run_ok(dir.path(), &["refine", "--input", "base.json", "--output", "flat.json", "--mode", "fixed-suppress", "--gamma", "0.0"]);
    let out = run_ok(dir.path(), &["jitter", "--base", "base.json", "--refined", "flat.json", "--out", "j.json"]);
    assert!(out.contains("n/a"), "quadratic joint has zero base jerk: {out}");
    let doc: serde_json::Value = serde_json::from_slice(&bytes(&dir.path().join("j.json"))).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0]["reduction_pct"].is_null());
    // the low band of a pure high-band signal is zero up to transform
    // roundoff (~1e-17 residue), so the reduction is 100% up to ~1e-14
    let red = rows[1]["reduction_pct"].as_f64().unwrap();
    assert!((red - 100.0).abs() < 1e-9, "reduction = {red}");
    let avg = doc["average"]["reduction_pct"].as_f64().unwrap();
    assert!((avg - 100.0).abs() < 1e-9, "average = {avg}");
}

#[test]
fn jitter_parts_map_groups_joints() {
    let dir = tempfile::tempdir().unwrap();
    let mut base = quad_plus_high_band(64);
    base.set_joint_names(Some(vec!["hip".into(), "wrist".into()])).unwrap();
    formats::write_motion(&dir.path().join("base.json"), &base).unwrap();
    run_ok(dir.path(), &["refine", "--input", "base.json", "--output", "flat.json", "--mode", "fixed-suppress", "--gamma", "0.0"]);
    std::fs::write(
        dir.path().join("parts.json"),
        r#"{"format_version":1,"parts":{"hip":"torso","wrist":"left arm"}}"#,
    )
    .unwrap();
    let out = run_ok(dir.path(), &["jitter", "--base", "base.json", "--refined", "flat.json", "--parts-map", "parts.json"]);
    assert!(out.contains("torso"), "{out}");
    assert!(out.contains("left arm"), "{out}");
    assert!(!out.contains("joint_0"), "{out}");
}

#[test]
fn steady_state_fixtures_and_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_ok(dir.path(), &["steady-state", "--q", "1", "--r", "1"]);
    let p = grab(&out, "p_star");
    let k = grab(&out, "k_star");
    assert!((p - 0.618_033_988_749_894_9).abs() < 1e-10);
    assert!((k - 0.618_033_988_749_894_9).abs() < 1e-10);

    let out = run_ok(dir.path(), &["steady-state", "--q", "1e-12", "--r", "1"]);
    let p = grab(&out, "p_star");
    assert!((p - 1e-6).abs() / 1e-6 < 1e-4, "P* ~ sqrt(QR), got {p}");

    run_ok(dir.path(), &["steady-state", "--sweep-snr", "0.1:1000:100", "--out", "sweep.csv", "--svg", "sweep.svg"]);
    let table = String::from_utf8(bytes(&dir.path().join("sweep.csv"))).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("snr,q,r,k_star"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 100);
    for w in rows.windows(2) {
        assert!(w[1][0] > w[0][0], "snr grid increases");
        assert!(w[1][1] < w[0][1], "q strictly decreasing");
        assert!(w[1][2] < w[0][2], "r strictly decreasing");
    }
    let svg = bytes(&dir.path().join("sweep.svg"));
    assert!(svg.starts_with(b"<svg"));
    run_ok(dir.path(), &["steady-state", "--sweep-snr", "0.1:1000:100", "--out", "sweep2.csv", "--svg", "sweep2.svg"]);
    assert_eq!(svg, bytes(&dir.path().join("sweep2.svg")), "charts are deterministic");
}

#[test]
fn compare_lists_all_modes_and_prefers_adaptive_on_clean_input() {
    let dir = tempfile::tempdir().unwrap();
    // band-limited clean input: rho ~ 0, so the adaptive filter passes it
    // through and any distortion anywhere is transform roundoff
    run_ok(dir.path(), &["synth", "--kind", "sinusoid-mix", "--frames", "90", "--joints", "4", "--seed", "17", "--out", "clean.json"]);
    run_ok(dir.path(), &["compare", "--input", "clean.json", "--clean", "clean.json", "--out", "cmp.json", "--svg", "cmp.svg"]);
    let doc: serde_json::Value = serde_json::from_slice(&bytes(&dir.path().join("cmp.json"))).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 12, "raw + 9 gammas + fixed-kalman + adaptive");
    assert_eq!(rows[0]["label"], "raw");
    assert_eq!(rows[0]["mse_vs_clean"].as_f64(), Some(0.0));
    assert_eq!(rows[1]["label"], "fixed-suppress(gamma=0.1)");
    assert_eq!(rows[10]["label"], "fixed-kalman");
    assert_eq!(rows[11]["label"], "adaptive");
    let adaptive_mse = rows[11]["mse_vs_clean"].as_f64().unwrap();
    assert!(adaptive_mse < 1e-20, "adaptive must be near-identity, got {adaptive_mse}");
    for row in &rows[1..10] {
        let mse = row["mse_vs_clean"].as_f64().unwrap();
        assert!(mse < 1e-20, "{}: suppressing an empty band must not distort, got {mse}", row["label"]);
        assert!(
            adaptive_mse <= mse + 1e-20,
            "adaptive ({adaptive_mse}) must not lose to {} ({mse}) on clean input",
            row["label"]
        );
    }
    assert!(bytes(&dir.path().join("cmp.svg")).starts_with(b"<svg"));
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["synth", "--frames", "30", "--joints", "2", "--seed", "1", "--out", "m.json"]);
    run_ok(dir.path(), &["synth", "--frames", "40", "--joints", "3", "--seed", "1", "--out", "other.json"]);

    // 2: usage
    for args in [
        &["refine", "--input", "m.json", "--output", "o.json", "--mode", "sideways"][..],
        &["steady-state"][..],
        &["evaluate", "--pred-dir", ".", "--gt", "m.json", "--metrics", "mmade"][..],
        &["refine", "--input", "m.json", "--output", "o.json", "--config", "nope.json", "--q0", "1e-5"][..],
        &["synth", "--kind", "spline", "--out", "x.json"][..],
        &["refine", "--input", "m.json", "--output", "o.json", "--k0", "999"][..],
    ] {
        let out = run_err(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }

    // 3: I/O and parse
    std::fs::write(dir.path().join("trunc.json"), "{\"format_version\":1,").unwrap();
    std::fs::write(dir.path().join("v9.json"), "{\"format_version\":9,\"fps\":1.0,\"frames\":[[[0,0,0]]]}").unwrap();
    std::fs::write(dir.path().join("gap.csv"), "frame,joint,x,y,z\n0,0,1,2,3\n2,0,1,2,3\n").unwrap();
    std::fs::write(dir.path().join("nan.csv"), "frame,joint,x,y,z\n0,0,NaN,0,0\n").unwrap();
    for input in ["missing.json", "trunc.json", "v9.json", "gap.csv", "nan.csv"] {
        let out = run_err(dir.path(), &["refine", "--input", input, "--output", "o.json"]);
        assert_eq!(out.status.code(), Some(3), "{input}: {}", String::from_utf8_lossy(&out.stderr));
    }

    // 4: computation produced non-finite values from a finite file
    let huge = MotionSequence::from_fn(40, 1, 30.0, |_, _, _| 1e308).unwrap();
    formats::write_motion(&dir.path().join("huge.json"), &huge).unwrap();
    let out = run_err(dir.path(), &["refine", "--input", "huge.json", "--output", "o.json"]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));

    // 5: shape mismatches between readable inputs
    for args in [
        &["jitter", "--base", "m.json", "--refined", "other.json"][..],
        &["compare", "--input", "m.json", "--clean", "other.json"][..],
    ] {
        let out = run_err(dir.path(), args);
        assert_eq!(out.status.code(), Some(5), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    std::fs::create_dir(dir.path().join("p5")).unwrap();
    std::fs::copy(dir.path().join("other.json"), dir.path().join("p5/a.json")).unwrap();
    let out = run_err(dir.path(), &["evaluate", "--pred-dir", "p5", "--gt", "m.json", "--metrics", "ade"]);
    assert_eq!(out.status.code(), Some(5), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn constraint_demo_file_loads_and_scores() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/constraints_demo.json");
    let skeleton = formats::read_constraints(&path).unwrap();
    assert_eq!(skeleton.joint_count, 8);
    assert_eq!(skeleton.constraints.len(), 3);

    let motion = MotionSequence::from_fn(12, 8, 30.0, |t, j, axis| {
        // arbitrary smooth, non-degenerate poses
        ((t as f64) * 0.1 + (j as f64) * 1.3 + axis.index() as f64 * 0.7).sin()
    })
    .unwrap();
    let loss = freqkal::physics::angle_loss(&motion, &skeleton).unwrap();
    assert!(loss.value.is_finite() && loss.value >= 0.0);
    assert_eq!(loss.gradient.unwrap().len(), motion.data().len());
}
