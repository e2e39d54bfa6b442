use std::path::Path;
use std::process::{Command, Output};

fn ptasep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptasep"))
        .args(args)
        .env_remove("PTASEP_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn header(out: &Output) -> String {
    stdout(out).lines().next().unwrap_or_default().to_string()
}

#[test]
fn every_subcommand_writes_its_header() {
    let roots = ptasep(&["roots", "--big-l", "6", "--big-n", "2", "--zhat-re", "0.4"]);
    assert_eq!(roots.status.code(), Some(0));
    assert_eq!(header(&roots), "side,re,im,residual");
    assert_eq!(stdout(&roots).lines().count(), 7);

    let finite = ptasep(&[
        "finite-cdf",
        "--ic",
        "flat",
        "--big-l",
        "6",
        "--big-n",
        "3",
        "--k",
        "2",
        "--t",
        "1.5",
        "--a-min",
        "3",
        "--a-max",
        "8",
    ]);
    assert_eq!(finite.status.code(), Some(0));
    assert_eq!(header(&finite), "a,prob,imag_residue");

    let limit = ptasep(&[
        "limit-cdf",
        "--family",
        "f2",
        "--tau",
        "1",
        "--gamma",
        "0.2",
        "--x-min",
        "-1",
        "--x-max",
        "1",
        "--x-step",
        "0.5",
    ]);
    assert_eq!(limit.status.code(), Some(0));
    assert_eq!(header(&limit), "x,value,imag_residue,m_used,M_used");
    assert_eq!(stdout(&limit).lines().count(), 6);

    let sim = ptasep(&[
        "simulate",
        "--ic",
        "step",
        "--big-l",
        "8",
        "--big-n",
        "4",
        "--t",
        "2",
        "--observable",
        "current:1",
        "--a-min",
        "0",
        "--a-max",
        "4",
        "--samples",
        "200",
    ]);
    assert_eq!(sim.status.code(), Some(0));
    assert_eq!(
        header(&sim),
        "threshold,empirical_prob,ci_low,ci_high,samples"
    );

    let sweep = ptasep(&[
        "sweep",
        "--ic",
        "flat",
        "--sizes",
        "8,16",
        "--x-min",
        "-1",
        "--x-max",
        "1",
        "--finite-nodes",
        "64",
    ]);
    assert!(matches!(sweep.status.code(), Some(0 | 1)));
    assert_eq!(
        header(&sweep),
        "big_l,big_n,t,sup_distance,points,decreasing"
    );
}

#[test]
fn general_and_fredholm_methods_agree() {
    let args = [
        "finite-cdf",
        "--ic",
        "step",
        "--big-l",
        "5",
        "--big-n",
        "2",
        "--k",
        "1",
        "--t",
        "2",
        "--a-min=-1",
        "--a-max",
        "6",
    ];
    let fredholm = ptasep(&args);
    let general = ptasep(&[&args[..], &["--method", "general"]].concat());
    let probs = |o: &Output| -> Vec<f64> {
        stdout(o)
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect()
    };
    for (a, b) in probs(&fredholm).iter().zip(probs(&general)) {
        assert!((a - b).abs() < 1e-8);
    }
}

#[test]
fn compare_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    };
    let a = write("a.csv", "x,value\n0,0.10\n1,0.60\n");
    let b = write("b.csv", "x,value\n0,0.11\n1,0.61\n");
    let far = write("c.csv", "x,value\n0,0.50\n1,0.61\n");
    let shifted = write("d.csv", "x,value\n0,0.10\n2,0.60\n");
    let run = |x: &Path, y: &Path| ptasep(&["compare", x.to_str().unwrap(), y.to_str().unwrap()]);

    let close = run(&a, &b);
    assert_eq!(close.status.code(), Some(0));
    assert_eq!(
        header(&close),
        "ks_statistic,sup_pointwise,n_points,threshold,pass"
    );
    assert!(stdout(&close).lines().nth(1).unwrap().ends_with(",true"));
    assert_eq!(run(&a, &far).status.code(), Some(1));
    assert_eq!(run(&a, &shifted).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(
        ptasep(&["finite-cdf", "--ic", "diagonal"]).status.code(),
        Some(2)
    );
    assert_eq!(ptasep(&["roots", "--big-l", "4"]).status.code(), Some(2));
    assert_eq!(
        ptasep(&["roots", "--big-l", "4", "--big-n", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ptasep(&["limit-cdf", "--family", "f1", "--x-step", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ptasep(&["compare", "/nonexistent/a.csv", "/nonexistent/b.csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn config_file_supplies_missing_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# six-site flat ring\nic = flat\nbig_l = 6\nbig_n = 3\nt = 1.5\na_min = 3\na_max = 5\nk = 1\n").unwrap();
    let out = ptasep(&[
        "--config",
        cfg.to_str().unwrap(),
        "finite-cdf",
        "--a-max",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 3);
}

#[test]
fn simulation_csv_is_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str| {
        let path = dir.path().join(format!("sim{threads}.csv"));
        let out = ptasep(&[
            "--threads",
            threads,
            "simulate",
            "--ic",
            "flat",
            "--big-l",
            "12",
            "--big-n",
            "6",
            "--t",
            "3",
            "--observable",
            "tagged:3",
            "--a-min",
            "4",
            "--a-max",
            "12",
            "--samples",
            "3000",
            "--seed",
            "99",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        std::fs::read(path).unwrap()
    };
    let one = run("1");
    assert_eq!(one, run("3"));
    assert_eq!(one, run("8"));
}
