use std::process::{Command, Output};

fn iqsieve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iqsieve")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn unit_moduli_row_is_rank_one() {
    let o = iqsieve(&["sieve", "--d", "-1", "--family", "power", "--k", "2", "--q", "1", "--n", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("d,family,k,Q,N,F,M,lambda_max,rhs,ratio,iterations,seed"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..7], &["-1", "power", "2", "1", "4", "4", "13"]);
    assert_eq!(row[7], "52");
    assert!(lines.next().is_none());
}

#[test]
fn square_bound_formula() {
    let o = iqsieve(&["bounds", "--theorem", "square", "--q", "4", "--n", "16", "--epsilon", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "theorem,k,Q,N,epsilon,delta,rhs\nsquare,2,4,16,0,0,144\n");
}

#[test]
fn verify_poisson_passes() {
    let o = iqsieve(&["verify", "poisson", "--d", "-7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "poisson");
    assert_eq!(row[3], "0");
    assert!(row[4].parse::<f64>().unwrap() < 1e-8);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["sieve", "--d", "-5"],
        vec!["sieve", "--family", "cube"],
        vec!["bounds", "--q", "4"],
        vec!["bounds", "--theorem", "prime", "--q", "8"],
        vec!["theorem2", "--n", "4"],
        vec!["frobnicate"],
    ] {
        let o = iqsieve(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn config_file_errors_name_the_key() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("cli_bad.cfg");
    std::fs::write(&path, "d = -1\ncolour = blue\n").unwrap();
    let o = iqsieve(&["sieve", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
}

#[test]
fn general_moduli_commands_share_a_schema() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("cli_squares.txt");
    std::fs::write(&path, "1 0\n-1 0\n0 2\n0 -2\n4 0\n-4 0\n").unwrap();
    for cmd in ["theorem2", "theorem3"] {
        let o = iqsieve(&[cmd, "--s-file", path.to_str().unwrap(), "--n", "16"]);
        assert!(o.status.success(), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
        let text = stdout(&o);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("theorem,d,S,Q,N,F,M,lambda_max,rhs,ratio,X,iterations,seed"));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(&row[..7], &[cmd, "-1", "6", "16", "16", "22", "49"]);
    }
}

#[test]
fn json_output_parses() {
    let o = iqsieve(&["sieve", "--d", "-3", "--family", "all", "--q", "2,3", "--n", "4", "--format", "json"]);
    assert!(o.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["Q"], 2);
    assert!(rows[1]["lambda_max"].as_f64().unwrap() > 0.0);
}
