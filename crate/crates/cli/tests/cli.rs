use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

fn domtool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domtool"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = domtool(args);
    assert_eq!(
        code(&out),
        0,
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn field(text: &str, key: &str) -> Option<usize> {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("s {key} ")))
        .map(|v| v.trim().parse().unwrap())
}

fn vertices(text: &str) -> Vec<usize> {
    text.lines()
        .filter_map(|l| l.strip_prefix("v "))
        .map(|v| v.trim().parse().unwrap())
        .collect()
}

const C6: &str = "p tw 6 6\n1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n";
const P5: &str = "p tw 5 4\n1 2\n2 3\n3 4\n4 5\n";

#[test]
fn c6_rdom_and_crdom() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c6.gr", C6);
    let sol = ok(&["rdom", "-g", s(&g), "--default-r", "1"]);
    assert_eq!(field(&sol, "size"), Some(2));
    assert_eq!(field(&sol, "slack"), Some(2));
    let sp = write(&dir, "c6.sol", &sol);
    assert_eq!(ok(&["verify", "-g", s(&g), "--default-r", "1", "--solution", s(&sp)]), "OK\n");

    let sol = ok(&["crdom", "-g", s(&g), "--default-r", "1"]);
    assert_eq!(vertices(&sol), vec![2, 3]);
    assert_eq!(field(&sol, "slack"), Some(4));
    let sp = write(&dir, "c6c.sol", &sol);
    let args = ["verify", "-g", s(&g), "--default-r", "1", "--solution", s(&sp), "--connected"];
    assert_eq!(ok(&args), "OK\n");
}

#[test]
fn verify_reports_worst_vertex() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p5.gr", P5);
    let sp = write(&dir, "bad.sol", "s algo manual\ns size 1\nv 1\n");
    let out = domtool(&["verify", "-g", s(&g), "--default-r", "1", "--solution", s(&sp)]);
    assert_eq!(code(&out), 5);
    assert_eq!(stdout(&out), "FAIL coverage: vertex 5 at distance 4 > 1 + 0\n");

    // an explicit slack overrides the declared one
    let out = domtool(&["verify", "-g", s(&g), "--default-r", "1", "--slack", "3", "--solution", s(&sp)]);
    assert_eq!(code(&out), 0);

    let sp = write(&dir, "split.sol", "s algo manual\ns size 2\nv 2\nv 4\n");
    let out = domtool(&["verify", "-g", s(&g), "--default-r", "1", "--solution", s(&sp), "--connected"]);
    assert_eq!(code(&out), 5);
    assert!(stdout(&out).contains("FAIL connectivity"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p5.gr", P5);
    assert_eq!(code(&domtool(&["frobnicate"])), 2);
    assert_eq!(code(&domtool(&["rdom"])), 2);
    // no radii given
    assert_eq!(code(&domtool(&["rdom", "-g", s(&g)])), 3);
    let missing = dir.path().join("nope.gr");
    assert_eq!(code(&domtool(&["rdom", "-g", s(&missing), "--default-r", "1"])), 3);
    let bad = write(&dir, "bad.gr", "p 3 1\n1 7\n");
    assert_eq!(code(&domtool(&["rdom", "-g", s(&bad), "--default-r", "1"])), 3);
    let split = write(&dir, "split.gr", "p 4 2\n1 2\n3 4\n");
    assert_eq!(code(&domtool(&["rdom", "-g", s(&split), "--default-r", "1"])), 3);
    let args = ["oracle", "rdom", "-g", s(&g), "--default-r", "0", "--max-n", "3"];
    assert_eq!(code(&domtool(&args)), 4);
    let sp = write(&dir, "x.sol", "s algo manual\ns size 1\nv 3\ns checksum 0000000000000000\n");
    assert_eq!(code(&domtool(&["verify", "-g", s(&g), "--default-r", "2", "--solution", s(&sp)])), 3);
    let sp = write(&dir, "y.sol", "s algo manual\ns size 1\nv 9\n");
    assert_eq!(code(&domtool(&["verify", "-g", s(&g), "--default-r", "2", "--solution", s(&sp)])), 3);
}

#[test]
fn gen_is_reproducible_and_parses() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for prefix in [&a, &b] {
        ok(&["-o", s(prefix), "gen", "--kind", "interval", "-n", "9", "--seed", "7", "--r-max", "2"]);
    }
    for ext in ["gr", "td", "r"] {
        let x = fs::read(a.with_extension(ext)).unwrap();
        let y = fs::read(b.with_extension(ext)).unwrap();
        assert_eq!(x, y, ".{ext} differs between identical runs");
    }
    let gr = a.with_extension("gr");
    let td = a.with_extension("td");
    let r = a.with_extension("r");
    let sol = ok(&["rdom", "-g", s(&gr), "-r", s(&r), "--method", "td", "--td", s(&td)]);
    let sp = write(&dir, "a.sol", &sol);
    assert_eq!(ok(&["verify", "-g", s(&gr), "-r", s(&r), "--solution", s(&sp)]), "OK\n");
}

#[test]
fn every_solver_passes_verify() {
    let dir = TempDir::new().unwrap();
    let kinds: [&[&str]; 4] = [
        &["--kind", "interval", "-n", "10"],
        &["--kind", "tree", "-n", "10"],
        &["--kind", "spider", "--legs", "3", "--len", "3"],
        &["--kind", "gnp", "-n", "9", "--p-edge", "0.35"],
    ];
    for (k, kind) in kinds.iter().enumerate() {
        for seed in 0..4 {
            let prefix = dir.path().join(format!("i{k}_{seed}"));
            let seed = seed.to_string();
            let mut args = vec!["-o", s(&prefix), "gen", "--seed", &seed, "--r-max", "2"];
            args.extend_from_slice(kind);
            ok(&args);
            let gr = prefix.with_extension("gr");
            let r = prefix.with_extension("r");
            let td = prefix.with_extension("td");
            let has_td = td.exists();
            let inst = ["-g", s(&gr), "-r", s(&r)];

            let mut runs: Vec<(bool, Vec<&str>)> = vec![
                (false, vec!["rdom"]),
                (true, vec!["crdom"]),
                (false, vec!["rdom", "--delta", "upper"]),
                (true, vec!["crdom", "--start", "3"]),
            ];
            if has_td {
                for variant in ["heart", "diamond", "best"] {
                    runs.push((true, vec!["crdom", "--method", "td", "--td", s(&td), "--variant", variant]));
                }
                runs.push((false, vec!["rdom", "--method", "td", "--td", s(&td)]));
            }
            let oracle = ok(&[&["oracle", "crdom", "--search"][..], &inst].concat());
            let oracle_path = write(&dir, "oracle.sol", &oracle);
            for (connected, cmd) in runs {
                let sol = ok(&[&cmd[..], &inst].concat());
                assert!(field(&sol, "slack").is_some(), "{cmd:?} declared no slack");
                let sp = write(&dir, "run.sol", &sol);
                let mut v = vec!["verify", "-g", s(&gr), "-r", s(&r), "--solution", s(&sp)];
                if connected {
                    v.push("--connected");
                    v.extend(["--oracle", s(&oracle_path)]);
                }
                let out = domtool(&v);
                assert_eq!(code(&out), 0, "{cmd:?} on {}: {}", gr.display(), stdout(&out));
            }

            for p in ["1", "2", "3"] {
                let mut runs: Vec<(bool, Vec<&str>)> = vec![
                    (false, vec!["pcenter", "-p", p]),
                    (true, vec!["pcenter", "-p", p, "--connected"]),
                ];
                if has_td {
                    runs.push((false, vec!["pcenter", "-p", p, "--method", "td", "--td", s(&td)]));
                    runs.push((true, vec!["pcenter", "-p", p, "--method", "td", "--td", s(&td), "--connected"]));
                }
                for (connected, cmd) in runs {
                    let sol = ok(&[&cmd[..], &["-g", s(&gr)][..]].concat());
                    let size = field(&sol, "size").unwrap();
                    assert!(size <= p.parse().unwrap());
                    let ecc = sol
                        .lines()
                        .find_map(|l| l.strip_prefix("e ecc "))
                        .expect("p-center solutions report ecc")
                        .trim()
                        .to_string();
                    let sp = write(&dir, "pc.sol", &sol);
                    let mut v = vec!["verify", "-g", s(&gr), "--default-r", &ecc, "--slack", "0", "--solution", s(&sp)];
                    if connected {
                        v.push("--connected");
                    }
                    let out = domtool(&v);
                    assert_eq!(code(&out), 0, "{cmd:?} on {}: {}", gr.display(), stdout(&out));
                }
            }
        }
    }
}

#[test]
fn bench_reports_c6_and_empty_suite() {
    let dir = TempDir::new().unwrap();
    let header = "instance,n,m,seconds,size,t_r,delta,delta_final,iterations";
    assert_eq!(ok(&["bench"]).trim_end(), header);

    let g = write(&dir, "c6.gr", C6);
    let csv = ok(&["bench", s(&g), "--delta", "exact"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], header);
    assert_eq!(lines.len(), 2);
    let cols: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(cols[1], "6");
    assert_eq!(cols[2], "6");
    assert_eq!(cols[7], "0", "final δ");
    assert!(cols[8].parse::<usize>().unwrap() <= 2, "iterations");

    let out = dir.path().join("bench.csv");
    ok(&["-o", s(&out), "bench", "--sparse", "200:500:1"]);
    let text = fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.contains("sparse-200-500-1,200,500,"));
}

#[test]
fn json_mirrors_text() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c6.gr", C6);
    let text = ok(&["crdom", "-g", s(&g), "--default-r", "1"]);
    let json: serde_json::Value = serde_json::from_str(&ok(&["--json", "crdom", "-g", s(&g), "--default-r", "1"])).unwrap();
    assert_eq!(json["size"].as_u64().unwrap() as usize, field(&text, "size").unwrap());
    assert_eq!(json["slack"].as_u64().map(|x| x as usize), field(&text, "slack"));
    let vs: Vec<usize> = json["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap() as usize)
        .collect();
    assert_eq!(vs, vertices(&text));
    assert!(text.contains(json["checksum"].as_str().unwrap()));

    let sp = write(&dir, "c6.sol", &text);
    let report: serde_json::Value = serde_json::from_str(&ok(&[
        "--json", "verify", "-g", s(&g), "--default-r", "1", "--solution", s(&sp),
    ]))
    .unwrap();
    assert_eq!(report["ok"], serde_json::Value::Bool(true));
}

#[test]
fn lp_build_prints_delta() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c6.gr", C6);
    let out = ok(&["lp-build", "-g", s(&g)]);
    assert_eq!(out, "C 1 0 1\nC 2 1 2 6\nC 3 2 3 5\nC 4 3 4\nT 1 2\nT 2 3\nT 3 4\nD 2\n");
}
