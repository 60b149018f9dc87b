//! End-to-end tests driving the `starrep` binary.

use serde_json::Value;
use std::f64::consts::{FRAC_PI_2, PI};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starrep"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command failed: {:?}\nstderr: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout is UTF-8")
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&run_ok(args)).expect("stdout is valid JSON")
}

fn stars_of(record: &Value) -> Vec<(f64, f64, u64)> {
    record["stars"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            (
                s["theta"].as_f64().unwrap(),
                s["phi"].as_f64().unwrap(),
                s["multiplicity"].as_u64().unwrap(),
            )
        })
        .collect()
}

#[test]
fn identical_argv_gives_byte_identical_output() {
    let args = [
        "stars", "--symmetry", "hw", "--cutoff", "20", "--state", "squeezed", "--xi", "0.9",
    ];
    let first = run_ok(&args);
    let second = run_ok(&args);
    assert_eq!(first, second);

    let evolve_args = [
        "evolve", "--symmetry", "hw", "--cutoff", "12", "--state", "coherent", "--alpha",
        "1.5+0.5i", "--omega-nl", "1", "--times", "0,0.5,1.0",
    ];
    assert_eq!(run_ok(&evolve_args), run_ok(&evolve_args));
}

#[test]
fn squeezed_sweep_toward_the_north_pole() {
    let record = json(&[
        "stars", "--symmetry", "hw", "--cutoff", "20", "--state", "squeezed", "--xi", "0.9",
    ]);
    let stars = stars_of(&record);
    assert_eq!(stars.len(), 20);
    assert_eq!(record["south_pole_count"].as_u64(), Some(0));
    for (theta, phi, mult) in &stars {
        assert_eq!(*mult, 1);
        let on_circle =
            (phi - FRAC_PI_2).abs() < 1e-9 || (phi - 3.0 * FRAC_PI_2).abs() < 1e-9;
        assert!(on_circle, "phi = {phi}");
        assert!(*theta < 2.6, "stars should sit away from the south pole");
    }
    let min_theta = stars.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    assert!(min_theta < 0.3, "strong squeezing pulls stars toward the north pole");
}

#[test]
fn vacuum_coherent_state_is_all_south_pole() {
    let record = json(&[
        "stars", "--symmetry", "hw", "--cutoff", "20", "--state", "coherent", "--alpha", "0+0i",
    ]);
    assert_eq!(record["south_pole_count"].as_u64(), Some(20));
    assert!(record["stars"].as_array().unwrap().is_empty());
    assert_eq!(record["version"].as_str(), Some(env!("CARGO_PKG_VERSION")));
}

#[test]
fn amplitude_file_states() {
    let dir = tempfile::tempdir().unwrap();
    // Occupation-ordered amplitudes: index n = 0 is the lowest-weight state.
    let up = dir.path().join("up.json");
    std::fs::write(&up, "[[0.0, 0.0], [1.0, 0.0]]").unwrap();
    let record = json(&[
        "stars", "--symmetry", "su2", "--spin", "0.5", "--state",
        &format!("file:{}", up.display()),
    ]);
    let stars = stars_of(&record);
    assert_eq!(stars.len(), 1);
    assert_eq!(record["south_pole_count"].as_u64(), Some(0));
    assert!(stars[0].0.abs() < 1e-12, "highest-weight state sits on the north pole");

    let down = dir.path().join("down.json");
    std::fs::write(&down, "[[1.0, 0.0], [0.0, 0.0]]").unwrap();
    let record = json(&[
        "stars", "--symmetry", "su2", "--spin", "0.5", "--state",
        &format!("file:{}", down.display()),
    ]);
    assert!(stars_of(&record).is_empty());
    assert_eq!(record["south_pole_count"].as_u64(), Some(1));
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let base = [
        "stars", "--symmetry", "hw", "--cutoff", "8", "--state", "cat2", "--alpha", "1.2+0.3i",
    ];
    let record = json(&base);
    let mut csv_args = base.to_vec();
    csv_args.extend_from_slice(&["--out", "csv"]);
    let csv = run_ok(&csv_args);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("star_index,theta,phi,multiplicity,residual_max")
    );
    let stars = stars_of(&record);
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), stars.len());
    for (row, (theta, phi, mult)) in rows.iter().zip(&stars) {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 5);
        assert_eq!(cols[1].parse::<f64>().unwrap(), *theta);
        assert_eq!(cols[2].parse::<f64>().unwrap(), *phi);
        assert_eq!(cols[3].parse::<u64>().unwrap(), *mult);
    }
}

#[test]
fn singleton_sweep_equals_single_run() {
    let single = json(&[
        "stars", "--symmetry", "hw", "--cutoff", "10", "--state", "squeezed", "--xi", "0.5",
    ]);
    let swept = json(&[
        "sweep", "--param", "xi", "--values", "0.5", "--symmetry", "hw", "--cutoff", "10",
        "--state", "squeezed",
    ]);
    let arr = swept.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    assert_eq!(arr[0], single);
}

#[test]
fn xi_sweep_produces_one_record_per_value() {
    let swept = json(&[
        "sweep", "--param", "xi", "--values", "0,0.001,0.01,0.9", "--symmetry", "hw",
        "--cutoff", "20", "--state", "squeezed",
    ]);
    let arr = swept.as_array().unwrap();
    assert_eq!(arr.len(), 4);
    // xi = 0 is the vacuum: everything on the south pole.
    assert_eq!(arr[0]["south_pole_count"].as_u64(), Some(20));
    // Large squeezing: all 20 stars finite.
    assert_eq!(arr[3]["south_pole_count"].as_u64(), Some(0));
    assert_eq!(arr[3]["stars"].as_array().unwrap().len(), 20);
    for (i, xi) in ["0", "0.001", "0.01", "0.9"].iter().enumerate() {
        let echoed = arr[i]["spec"]["state"]["xi"][0].as_f64().unwrap();
        assert_eq!(echoed, xi.parse::<f64>().unwrap());
    }
}

#[test]
fn cutoff_sweep_produces_one_record_per_value() {
    let swept = json(&[
        "sweep", "--param", "cutoff", "--values", "10,20,30,50", "--symmetry", "hw",
        "--state", "squeezed", "--xi", "0.2",
    ]);
    let arr = swept.as_array().unwrap();
    assert_eq!(arr.len(), 4);
    for (record, cutoff) in arr.iter().zip([10u64, 20, 30, 50]) {
        assert_eq!(record["spec"]["symmetry"]["cutoff"].as_u64(), Some(cutoff));
        let total: u64 = record["stars"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s["multiplicity"].as_u64().unwrap())
            .sum::<u64>()
            + record["south_pole_count"].as_u64().unwrap();
        assert_eq!(total, cutoff);
    }
}

#[test]
fn evolve_single_time_matches_stars() {
    let evolved = json(&[
        "evolve", "--symmetry", "hw", "--cutoff", "10", "--state", "coherent", "--alpha",
        "1+0i", "--omega-nl", "1", "--times", "0",
    ]);
    let records = evolved["records"].as_array().unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0]["t"].as_f64(), Some(0.0));
    let direct = json(&[
        "stars", "--symmetry", "hw", "--cutoff", "10", "--state", "coherent", "--alpha", "1+0i",
    ]);
    assert_eq!(records[0]["stars"], direct["stars"]);
    assert_eq!(records[0]["south_pole_count"], direct["south_pole_count"]);
}

#[test]
fn evolve_is_periodic_over_a_full_period() {
    let evolved = json(&[
        "evolve", "--symmetry", "hw", "--cutoff", "14", "--state", "coherent", "--alpha",
        "2+0i", "--omega-nl", "1", "--times", "0.37,6.6531853071795865",
    ]);
    let records = evolved["records"].as_array().unwrap();
    assert_eq!(records.len(), 2);
    let first = stars_of(&records[0]);
    let second = stars_of(&records[1]);
    assert_eq!(first.len(), second.len());
    for (a, b) in first.iter().zip(&second) {
        assert!((a.0 - b.0).abs() <= 1e-9, "theta {} vs {}", a.0, b.0);
        let dphi = (a.1 - b.1).abs();
        assert!(dphi <= 1e-9 || (2.0 * PI - dphi) <= 1e-9, "phi {} vs {}", a.1, b.1);
    }
}

#[test]
fn evolve_csv_has_the_documented_columns() {
    let out = run_ok(&[
        "evolve", "--symmetry", "hw", "--cutoff", "6", "--state", "coherent", "--alpha",
        "1+0i", "--omega-nl", "1", "--times", "0,1", "--out", "csv",
    ]);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("t,star_index,theta,phi,multiplicity,residual_max")
    );
    for line in lines {
        assert_eq!(line.split(',').count(), 6);
    }
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let stdout = run_ok(&[
        "stars", "--symmetry", "hw", "--cutoff", "5", "--state", "coherent", "--alpha",
        "1+0i", "--output", &path.display().to_string(),
    ]);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed: Value = serde_json::from_str(&text).unwrap();
    assert!(parsed["stars"].is_array());
}

#[test]
fn usage_errors_exit_with_code_2() {
    let cases: Vec<Vec<&str>> = vec![
        // missing required state parameter
        vec!["stars", "--symmetry", "hw", "--cutoff", "5", "--state", "coherent"],
        // malformed complex literal
        vec![
            "stars", "--symmetry", "hw", "--cutoff", "5", "--state", "coherent", "--alpha",
            "2 + 3i",
        ],
        // su2 does not take a cutoff
        vec![
            "stars", "--symmetry", "su2", "--spin", "1", "--cutoff", "4", "--state",
            "coherent", "--alpha", "1+0i",
        ],
        // unknown state kind
        vec!["stars", "--symmetry", "hw", "--cutoff", "5", "--state", "thermal"],
        // squeezing outside the unit disk
        vec!["stars", "--symmetry", "hw", "--cutoff", "5", "--state", "squeezed", "--xi", "1.0"],
        // su11 coherent parameter outside the unit disk
        vec![
            "stars", "--symmetry", "su11", "--bargmann", "0.5", "--cutoff", "5", "--state",
            "coherent", "--alpha", "2+0i",
        ],
        // sweeping xi while also fixing it
        vec![
            "sweep", "--param", "xi", "--values", "0.5", "--xi", "0.2", "--symmetry", "hw",
            "--cutoff", "5", "--state", "squeezed",
        ],
        // clap-level: missing subcommand arguments entirely
        vec!["stars"],
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "args {:?}", args);
    }
}

#[test]
fn bad_amplitude_files_exit_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let wrong_len = dir.path().join("short.json");
    std::fs::write(&wrong_len, "[[1.0, 0.0]]").unwrap();
    let out = run(&[
        "stars", "--symmetry", "hw", "--cutoff", "5", "--state",
        &format!("file:{}", wrong_len.display()),
    ]);
    assert_eq!(out.status.code(), Some(2));

    let malformed = dir.path().join("bad.json");
    std::fs::write(&malformed, "{not json").unwrap();
    let out = run(&[
        "stars", "--symmetry", "hw", "--cutoff", "5", "--state",
        &format!("file:{}", malformed.display()),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solver_failure_exits_with_code_3() {
    let out = run(&[
        "stars", "--symmetry", "hw", "--cutoff", "12", "--state", "cat2", "--alpha", "2+0i",
        "--max-iter", "1", "--residual-tol", "1e-300",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("did not converge"), "stderr: {stderr}");
}

#[test]
fn landmark_evolution_reproduces_the_cat_constellations() {
    // Quarter, eighth and half period of the alpha = 2 coherent state.
    let evolved = json(&[
        "evolve", "--symmetry", "hw", "--cutoff", "50", "--state", "coherent", "--alpha",
        "2+0i", "--omega-nl", "1", "--times",
        "0,0.7853981633974483,1.5707963267948966,3.141592653589793",
    ]);
    let records = evolved["records"].as_array().unwrap();
    assert_eq!(records.len(), 4);

    // t = 0: single fully degenerate star at z = 1/2.
    let start = stars_of(&records[0]);
    assert_eq!(start.len(), 1);
    assert_eq!(start[0].2, 50);

    // t = pi/2: all stars on the phi in {pi/2, 3pi/2} great circle.
    let half_cat = stars_of(&records[2]);
    assert!(half_cat.len() >= 49);
    for (_, phi, _) in &half_cat {
        let on_circle =
            (phi - FRAC_PI_2).abs() < 1e-6 || (phi - 3.0 * FRAC_PI_2).abs() < 1e-6;
        assert!(on_circle, "phi = {phi}");
    }

    // t = pi: single degenerate star at z = -1/2 (phi = pi).
    let flipped = stars_of(&records[3]);
    assert_eq!(flipped.len(), 1);
    assert_eq!(flipped[0].2, 50);
    assert!((flipped[0].1 - PI).abs() < 1e-9);
}
