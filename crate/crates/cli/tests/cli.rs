use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn hamdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamdisc")).args(args).output().expect("binary runs")
}

fn run_to(dir: &TempDir, name: &str, args: &[&str]) -> (Output, String) {
    let path = dir.path().join(name);
    let mut full = args.to_vec();
    full.extend(["--output", path.to_str().unwrap()]);
    let out = hamdisc(&full);
    let csv = std::fs::read_to_string(&path).unwrap_or_default();
    (out, csv)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn rows(csv: &str) -> Vec<Vec<&str>> {
    csv.lines().skip(1).map(|l| l.split(',').collect()).collect()
}

#[test]
fn zero_trials_write_only_the_header() {
    let dir = TempDir::new().unwrap();
    let cases: [(&[&str], &str); 4] = [
        (&["dirac-cycle"], "n,k,delta,forward,bound,ok"),
        (&["gnp-cycle", "--n", "100"], "n,p,delta,success,forward,backward,stage"),
        (&["tournament-count", "--n", "5"], "n,threshold,count"),
        (&["expander-path", "--delta", "0.5", "--gnp", "50", "10"], "n,delta,beta,ell,m,t,length,backward,ok"),
    ];
    for (i, (args, header)) in cases.iter().enumerate() {
        let mut full = args.to_vec();
        full.extend(["--trials", "0"]);
        let (out, csv) = run_to(&dir, &format!("{i}.csv"), &full);
        assert!(out.status.success(), "{args:?}: {}", stderr(&out));
        assert_eq!(csv, format!("{header}\n"));
    }
}

#[test]
fn dirac_on_k30_with_k2_always_succeeds() {
    let dir = TempDir::new().unwrap();
    let (out, csv) = run_to(&dir, "d.csv", &["dirac-cycle", "--k", "2", "--trials", "100", "--seed", "7"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rows = rows(&csv);
    assert_eq!(rows.len(), 100);
    for r in &rows {
        assert_eq!(&r[..3], ["30", "2", "29"]);
        assert_eq!(r[4], "16");
        assert!(r[3].parse::<usize>().unwrap() >= 16);
        assert_eq!(r[5], "true");
    }
    assert!(stderr(&out).contains("success rate 1.0000"), "{}", stderr(&out));
}

#[test]
fn reruns_are_byte_identical_regardless_of_jobs() {
    let dir = TempDir::new().unwrap();
    let args = ["gnp-cycle", "--n", "400", "--trials", "6", "--seed", "3"];
    let (a, first) = run_to(&dir, "a.csv", &[&args[..], &["--jobs", "1"]].concat());
    let (b, second) = run_to(&dir, "b.csv", &[&args[..], &["--jobs", "4"]].concat());
    assert!(a.status.success() && b.status.success());
    assert_eq!(rows(&first).len(), 6);
    assert_eq!(first, second);

    let args = ["dirac-cycle", "--n", "24", "--min-degree", "16", "--k", "1", "--trials", "20"];
    let (_, first) = run_to(&dir, "c.csv", &args);
    let (_, second) = run_to(&dir, "d.csv", &args);
    assert_eq!(first, second);
}

#[test]
fn trial_i_runs_on_seed_base_plus_i() {
    let dir = TempDir::new().unwrap();
    let common = ["dirac-cycle", "--n", "20", "--min-degree", "14", "--k", "1"];
    let (_, long) = run_to(&dir, "a.csv", &[&common[..], &["--seed", "10", "--trials", "4"]].concat());
    let (_, tail) = run_to(&dir, "b.csv", &[&common[..], &["--seed", "12", "--trials", "2"]].concat());
    assert_eq!(rows(&long)[2..], rows(&tail)[..]);
}

#[test]
fn gnp_rows_are_consistent() {
    let dir = TempDir::new().unwrap();
    let (out, csv) = run_to(&dir, "g.csv", &["gnp-cycle", "--n", "1000", "--trials", "3", "--delta", "0.3"]);
    assert!(out.status.success(), "{}", stderr(&out));
    for r in rows(&csv) {
        assert_eq!(r.len(), 7);
        if r[3] == "true" {
            let (f, b): (usize, usize) = (r[4].parse().unwrap(), r[5].parse().unwrap());
            assert_eq!(f + b, 1000);
            assert!(b as f64 <= 0.9 * 1000.0);
            assert_eq!(r[6], "");
        } else {
            assert!(!r[6].is_empty());
        }
    }
}

#[test]
fn tournament_counts_respect_the_path_certificate() {
    let dir = TempDir::new().unwrap();
    let (out, csv) = run_to(&dir, "t.csv", &["tournament-count", "--n", "7", "--trials", "5"]);
    assert!(out.status.success());
    for r in rows(&csv) {
        assert_eq!(r[..2], ["7", "6"]);
        assert!(r[2].parse::<u64>().unwrap() >= 1);
    }
    // every Hamilton cycle of K_7 qualifies at threshold ceil(7/2)
    let (_, csv) = run_to(&dir, "u.csv", &["tournament-count", "--n", "7", "--threshold", "4"]);
    assert_eq!(rows(&csv)[0][2], "360");
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.txt");
    let cases: Vec<Vec<&str>> = vec![
        vec!["tournament-count", "--n", "20"],
        vec!["expander-path", "--delta", "0.2", "--gnp", "100", "5"],
        vec!["expander-path", "--delta", "0.5"],
        vec!["gnp-cycle", "--n", "100", "--delta", "1.5"],
        vec!["orient", "--input", missing.to_str().unwrap()],
        vec!["oracle", "--max-forward"],
        vec!["no-such-command"],
    ];
    for args in cases {
        assert_eq!(hamdisc(&args).status.code(), Some(2), "{args:?}");
    }
}

fn write(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_str().unwrap().to_string();
    let mut full = args.to_vec();
    full.extend(["--output", &path]);
    let out = hamdisc(&full);
    assert!(out.status.success(), "{args:?}: {}", stderr(&out));
    path
}

#[test]
fn graph_tools_compose() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let g = write(d, "g.txt", &["gen", "min-degree", "--n", "10", "--degree", "7", "--seed", "4"]);
    let o = write(d, "o.txt", &["orient", "--input", &g, "--seed", "1"]);
    let report = write(
        d,
        "r.csv",
        &["oracle", "--input", &o, "--max-forward", "--count-cycles", "--min-forward-threshold", "10"],
    );
    let report = std::fs::read_to_string(report).unwrap();
    let lines: Vec<&str> = report.lines().collect();
    assert_eq!(lines[0], "query,value,witness");
    assert!(lines[1].starts_with("max_forward,"));
    let best: usize = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    // a Hamilton cycle with all 10 edges forward exists iff the best is 10
    let all_forward: u64 = lines[3].split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(best == 10, all_forward > 0);

    // an oriented input drives dirac-cycle with its own directions
    let dirac = write(d, "d.csv", &["dirac-cycle", "--input", &o, "--trials", "3"]);
    let dirac = std::fs::read_to_string(dirac).unwrap();
    let first = rows(&dirac)[0].join(",");
    assert!(rows(&dirac).iter().all(|r| r.join(",") == first));
    let forward: usize = rows(&dirac)[0][3].parse().unwrap();
    assert!(forward >= 5 && forward <= best);

    let k = write(d, "k.txt", &["gen", "complete", "--n", "12"]);
    let f = write(d, "f.txt", &["gen", "forest", "--input", &k, "--size", "4", "--seed", "2"]);
    let c = write(d, "c.txt", &["posa", "--input", &k, "--forest", &f]);
    let cycle: Vec<usize> =
        std::fs::read_to_string(c).unwrap().split_whitespace().map(|x| x.parse().unwrap()).collect();
    let mut sorted = cycle.clone();
    sorted.sort();
    assert_eq!(sorted, (0..12).collect::<Vec<_>>());

    let t = write(d, "t.txt", &["gen", "tournament", "--n", "12", "--seed", "9"]);
    let dia = write(d, "dia.csv", &["diamonds", "--input", &t, "--find", "2"]);
    assert_eq!(std::fs::read_to_string(dia).unwrap().lines().count(), 3);
}

#[test]
fn unoriented_input_is_rejected_where_directions_matter() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "g.txt", &["gen", "cycle", "--n", "6"]);
    let out = hamdisc(&["diamonds", "--input", &g]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no direction bits"));
}

#[test]
fn props_reports_every_property() {
    let dir = TempDir::new().unwrap();
    let (out, csv) = run_to(&dir, "p.csv", &["props", "--gnp", "1000", "5", "--seed", "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let names: Vec<&str> = rows(&csv).iter().map(|r| r[0]).collect();
    assert_eq!(names, ["P1", "P2", "P3", "P4", "P5"]);
}
