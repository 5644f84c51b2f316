use std::process::{Command, Output};

fn niho(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_niho")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_exit_codes() {
    assert_eq!(niho(&["verify", "--m", "4", "--pair", "-1/3,4/3"]).status.code(), Some(0));
    assert_eq!(niho(&["verify", "--m", "4", "--pair", "0,0"]).status.code(), Some(0));
    // condition fails at m = 3; the engine verdict is still reported
    let o = niho(&["verify", "--m", "3", "--pair", "3,-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert!(stdout(&o).contains("not a permutation"));
    let o = niho(&["verify", "--m", "6", "--pair", "1/5,4/5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not invertible"));
    let o = niho(&["verify", "--m", "4", "--pair", "1/x,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("\"x\""));
    assert_eq!(niho(&["verify", "--n", "7", "--pair", "1,2"]).status.code(), Some(2));
    assert_eq!(niho(&["verify", "--m", "4"]).status.code(), Some(2));
    assert_eq!(niho(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_json_round_trips() {
    let o = niho(&["verify", "--m", "4", "--pair", "3,-1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<niho::PermReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r.is_permutation));
    assert_eq!(reports[0].pair, Some(niho::NihoPair::new(4, 3, 16)));
}

#[test]
fn verify_family_and_modulus() {
    let o = niho(&["verify", "--m", "4", "--family", "F8", "--modulus", "0x11d"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("0x11d"));
    assert_eq!(niho(&["verify", "--m", "4", "--modulus", "0x101", "--pair", "1,2"]).status.code(), Some(2));
    assert_eq!(niho(&["verify", "--m", "3", "--family", "F1", "--param", "a=1"]).status.code(), Some(2));
    assert_eq!(niho(&["verify", "--m", "3", "--family", "F1", "--param", "a=1", "--unchecked"]).status.code(), Some(1));
    let o = niho(&["family", "--m", "3", "--family", "C4", "--param", "k=1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["conditions_met"], true);
}

#[test]
fn table1_and_lemmas() {
    let o = niho(&["table1", "--m", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<niho::survey::VerifiedTableRow> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(rows.iter().filter(|r| r.condition_ok).all(|r| r.is_pp == Some(true)));
    let o = niho(&["table1", "--m", "3"]);
    assert!(stdout(&o).contains("condition false"));
    assert_eq!(niho(&["table1", "--all", "--m-max", "5", "--format", "csv"]).status.code(), Some(0));

    assert_eq!(niho(&["lemmas", "--which", "eq4", "--m", "4"]).status.code(), Some(0));
    assert_eq!(niho(&["lemmas", "--which", "eq4", "--m", "3"]).status.code(), Some(2));
    let o = niho(&["lemmas", "--which", "lemma1", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("8 values"));
    let o = niho(&["lemmas", "--which", "lemma2", "--n", "8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["disagreements"], 0);
}

#[test]
fn search_and_scans() {
    let o = niho(&["search", "--m", "4", "--format", "csv"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("m,s,t,orbit_size,is_pp,covered_by,flagged_new,degenerate"));
    assert_eq!(text.lines().count(), 154);
    let o = niho(&["open1", "--m", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let hits: Vec<u64> = v["hits"].as_array().unwrap().iter().map(|h| h["param"].as_u64().unwrap()).collect();
    assert!(hits.contains(&11) && hits.contains(&7));
    let o = niho(&["open2", "--m", "2", "--format", "csv"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("2,1,")));
    assert_eq!(niho(&["search", "--m", "13"]).status.code(), Some(2));
}

#[test]
fn output_independent_of_threads() {
    let dir = std::env::temp_dir().join(format!("niho-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "4", "8"] {
        let path = dir.join(format!("search-{threads}.csv"));
        let o = niho(&["search", "--m", "5", "--format", "csv", "--threads", threads, "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        let table = niho(&["table1", "--all", "--format", "json", "--threads", threads]);
        outputs.push((std::fs::read(&path).unwrap(), table.stdout));
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    std::fs::remove_dir_all(&dir).unwrap();
}
