use std::fs;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_casimir");

fn casimir(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("CASIMIR_CONFIG")
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("record is JSON")
}

const AU_PERFECT: [&str; 4] = ["--sphere", "Au", "--substrate", "perfect"];

#[test]
fn eval_writes_a_reproducible_record() {
    let args = [
        &["eval"][..],
        &AU_PERFECT[..],
        &["--radius-nm", "10", "--z-over-r", "1"][..],
    ]
    .concat();
    let a = casimir(&args);
    let b = casimir(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let record = json(&a);
    assert_eq!(record["timestamp"], 1_700_000_000u64);
    assert_eq!(record["inputs"]["z_nm"], 10.0);
    assert_eq!(record["outputs"]["valid"], true);
    assert_eq!(record["outputs"]["d_over_R"], 2.0);
    let u = record["outputs"]["energy_eV"].as_f64().unwrap();
    assert!((u + 0.649_489_454_741_35).abs() < 1e-7);
    let f = record["outputs"]["force_eV_per_nm"].as_f64().unwrap();
    let f_pn = record["outputs"]["force_pN"].as_f64().unwrap();
    assert!((f_pn / f - 160.217_663_4).abs() < 1e-9);
}

#[test]
fn vacuum_substrate_gives_exact_zeros() {
    let o = casimir(&[
        "eval",
        "--sphere",
        "K",
        "--substrate",
        "vacuum",
        "--radius-nm",
        "5",
        "--z-nm",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let record = json(&o);
    assert_eq!(record["outputs"]["energy_eV"], 0.0);
    assert_eq!(record["outputs"]["force_eV_per_nm"], 0.0);
}

#[test]
fn exit_codes() {
    let breakdown = casimir(
        &[
            &["eval"][..],
            &AU_PERFECT[..],
            &["--radius-nm", "10", "--z-nm", "0"][..],
        ]
        .concat(),
    );
    assert_eq!(breakdown.status.code(), Some(3));
    assert_eq!(json(&breakdown)["outputs"]["valid"], false);

    let cases: [&[&str]; 7] = [
        &[
            "eval",
            "--sphere",
            "Ag",
            "--substrate",
            "perfect",
            "--radius-nm",
            "10",
            "--z-nm",
            "1",
        ],
        &[
            "eval",
            "--sphere",
            "Au",
            "--substrate",
            "perfect",
            "--radius-nm",
            "-1",
            "--z-nm",
            "1",
        ],
        &[
            "eval",
            "--sphere",
            "Au",
            "--substrate",
            "perfect",
            "--radius-nm",
            "10",
        ],
        &[
            "eval",
            "--sphere",
            "Au",
            "--substrate",
            "perfect",
            "--radius-nm",
            "10",
            "--z-nm",
            "1",
            "--quad-tol",
            "0",
        ],
        &[
            "dos",
            "--sphere",
            "Au",
            "--substrate",
            "perfect",
            "--z-over-r",
            "1",
            "--omega-max-eV",
            "0",
        ],
        &["figure", "5"],
        &["frobnicate"],
    ];
    for args in cases {
        assert_eq!(casimir(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(casimir(&["--help"]).status.code(), Some(0));
    assert_eq!(casimir(&["--version"]).status.code(), Some(0));
}

#[test]
fn sweep_rows_reproduce_single_evaluations() {
    let args = [
        &["sweep"][..],
        &AU_PERFECT[..],
        &[
            "--radius-nm",
            "7",
            "--variable",
            "z_over_R",
            "--from",
            "0.1",
            "--to",
            "3",
            "--points",
            "7",
            "--spacing",
            "log",
        ][..],
    ]
    .concat();
    let o = casimir(&args);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,U_eV,F_eV_per_nm,F_pN,valid"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0][1..], ["", "", "", "false"]);

    for row in rows.iter().filter(|r| r[4] == "true") {
        let record = json(&casimir(
            &[
                &["eval"][..],
                &AU_PERFECT[..],
                &["--radius-nm", "7", "--z-over-r", row[0]][..],
            ]
            .concat(),
        ));
        let u = record["outputs"]["energy_eV"].as_f64().unwrap();
        let swept: f64 = row[1].parse().unwrap();
        assert!((u - swept).abs() <= 1e-8 * u.abs(), "{} vs {}", u, swept);
    }
}

#[test]
fn radius_sweep_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("radius.csv");
    let o = casimir(&[
        "sweep",
        "--sphere",
        "K",
        "--substrate",
        "sapphire",
        "--z-nm",
        "5",
        "--variable",
        "R",
        "--from",
        "5",
        "--to",
        "50",
        "--points",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    let energies: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(energies.len(), 4);
    // fixed gap, growing radius: d/R falls towards contact
    assert!(energies.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    fs::write(
        &config,
        "# shared\nsphere = Au\nsubstrate = perfect\nradius-nm = 10\nz-over-r = 3\n",
    )
    .unwrap();
    let from_env = Command::new(BIN)
        .args(["eval", "--z-over-r", "1"])
        .env("CASIMIR_CONFIG", &config)
        .output()
        .unwrap();
    assert_eq!(from_env.status.code(), Some(0));
    assert_eq!(json(&from_env)["inputs"]["z_over_R"], 1.0);

    let flag = casimir(&["eval", "--config", config.to_str().unwrap()]);
    assert_eq!(json(&flag)["inputs"]["z_over_R"], 3.0);

    fs::write(&config, "colour = blue\n").unwrap();
    assert_eq!(
        casimir(&["eval", "--config", config.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn dos_profile_csv() {
    let o = casimir(&[
        "dos",
        "--sphere",
        "Au",
        "--substrate",
        "perfect",
        "--z-over-r",
        "1",
        "--omega-min-eV",
        "3",
        "--omega-max-eV",
        "6",
        "--omega-points",
        "301",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("omega_eV,rho_sp,rho_s,diff"));
    assert_eq!(text.lines().count(), 302);
    assert_eq!(
        text.lines().nth(1).unwrap().split(',').next(),
        Some("3.00000000e0")
    );
}

#[test]
fn far_gap_warns_about_retardation() {
    let o = casimir(&[
        "eval",
        "--sphere",
        "Au",
        "--substrate",
        "sapphire",
        "--radius-nm",
        "10",
        "--z-nm",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("retardation"));
    assert_eq!(json(&o)["outputs"]["retardation_warning"], true);
}

#[test]
fn figure_two_has_radius_column() {
    let dir = tempfile::tempdir().unwrap();
    let o = casimir(&["figure", "2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("fig2_Au_perfect.csv")).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("radius_nm,x,U_eV,F_eV_per_nm,F_pN,valid")
    );
    assert_eq!(text.lines().count(), 1 + 3 * 41);
}
