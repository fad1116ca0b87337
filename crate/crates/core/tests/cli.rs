use std::path::Path;
use std::process::{Command, Output};

fn hfactor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hfactor"))
        .args(args)
        .env_remove("HFACTOR_NMAX")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_verdicts() {
    let o = hfactor(&["check", "--h", "1", "2,2,1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "{\"accepted\":false,\"failure\":\"Inequality\",\"k\":1,\"lhs\":2,\"rhs\":1}\n"
    );

    let o = hfactor(&["check", "--h", "1", "3,3,3,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"accepted\":true,\"failure\":null,\"k\":null,\"lhs\":null,\"rhs\":null}\n"
    );

    let o = hfactor(&["check", "--h", "1", "3 3 1 4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"failure\":\"NotSorted\",\"k\":4"));
}

#[test]
fn parse_errors_exit_2() {
    let o = hfactor(&["check", "--h", "1", "3,x,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("token 2"));
    assert_eq!(
        hfactor(&["check", "--h", "1", "@/no/such/file"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hfactor(&["realize", "3,3,3,3"]).status.code(), Some(2));
    assert_eq!(
        hfactor(&["gen", "--h", "2", "--n", "1000", "--seed", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn realize_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let seq_file = dir.path().join("seq.txt");
    let graph_file = dir.path().join("g.txt");
    let trace_file = dir.path().join("trace.txt");

    let o = hfactor(&["gen", "--h", "2", "--n", "30", "--seed", "4"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&seq_file, stdout(&o)).unwrap();
    let seq_arg = format!("@{}", path(&seq_file));

    let o = hfactor(&[
        "realize",
        "--h",
        "2",
        &seq_arg,
        "--trace",
        path(&trace_file),
        "--audit",
    ]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&graph_file, &o.stdout).unwrap();
    let trace = std::fs::read_to_string(&trace_file).unwrap();
    assert!(trace
        .lines()
        .all(|l| l.contains(" r=") && l.contains(" deg(v_r)=")));

    let o = hfactor(&["verify", "--h", "2", &seq_arg, "--graph", path(&graph_file)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"degrees_match\":true,\"first_mismatch\":null,\"spanning\":true,\"simple\":true}\n"
    );

    // Drop one non-H edge: degrees no longer match.
    let text = std::fs::read_to_string(&graph_file).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let head: Vec<usize> = lines[0].split(' ').map(|x| x.parse().unwrap()).collect();
    let header = format!("{} {} {}", head[0], head[1] - 1, head[2]);
    lines[0] = &header;
    lines.pop();
    std::fs::write(&graph_file, lines.join("\n")).unwrap();
    let o = hfactor(&["verify", "--h", "2", &seq_arg, "--graph", path(&graph_file)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"degrees_match\":false"));
}

#[test]
fn verify_rejects_mismatched_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    std::fs::write(&g, "4 2 1\n1 2\n3 4\n").unwrap();
    let o = hfactor(&["verify", "--h", "1", "1,1,1,1,1,1", "--graph", path(&g)]);
    assert_eq!(o.status.code(), Some(2));
    let o = hfactor(&["verify", "--h", "1", "1,1,1,1", "--graph", path(&g)]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&g, "4 1 1\n1 2\n").unwrap();
    let o = hfactor(&["verify", "--h", "1", "1,1,1,1", "--graph", path(&g)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"spanning\":false"));
}

#[test]
fn realize_formats() {
    let o = hfactor(&["realize", "--h", "1", "3,3,3,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4 6 1\n1 2\n3 4\n1 3\n1 4\n2 3\n2 4\n");

    let o = hfactor(&["realize", "--h", "1", "3,3,3,3", "--format", "dot"]);
    assert!(stdout(&o).contains("1 -- 2 [style=bold];"));

    let o = hfactor(&["realize", "--h", "1", "2,2,1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("{\"accepted\":false"));
}

#[test]
fn oracle_commands() {
    assert_eq!(
        stdout(&hfactor(&["oracle", "--h", "1", "3,3,3,3"])),
        "{\"exists\":true}\n"
    );
    let o = hfactor(&["oracle", "--h", "1", "2,2,1,1"]);
    assert_eq!(
        (o.status.code(), stdout(&o)),
        (Some(1), "{\"exists\":false}\n".to_string())
    );

    let o = hfactor(&[
        "oracle", "--h", "1", "--sweep", "--nmax", "4", "--jobs", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "h=1 n=2 total=1 accepted=1 disagreements=0\nh=1 n=4 total=15 accepted=3 disagreements=0\n"
    );

    let o = Command::new(env!("CARGO_BIN_EXE_hfactor"))
        .args(["oracle", "--h", "1", "1,1,1,1,1,1"])
        .env("HFACTOR_NMAX", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn matchings_output() {
    let o = hfactor(&["matchings", "--h", "1", "1,1,1,1"]);
    assert_eq!(stdout(&o), "M1: 1-2 3-4\n");
    let o = hfactor(&["matchings", "--h", "3", "3,3,3,3,3,3,3,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "M1: 1-4 2-3 5-8 6-7\nM2: 1-3 2-4 5-7 6-8\nM3: 1-2 3-4 5-6 7-8\n"
    );
    assert_eq!(
        hfactor(&["matchings", "--h", "2", "2,2,2"]).status.code(),
        Some(2)
    );
}

#[test]
fn gen_is_deterministic() {
    let a = hfactor(&["gen", "--h", "2", "--n", "6", "--seed", "7"]);
    let b = hfactor(&["gen", "--h", "2", "--n", "6", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        stdout(&hfactor(&["gen", "--h", "3", "--n", "4", "--seed", "0"])),
        "3,3,3,3\n"
    );
}
