use std::fs;
use std::process::Command;

fn bandlim() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bandlim"))
}

#[test]
fn unknown_override_exits_with_config_status() {
    let dir = tempfile::tempdir().unwrap();
    let out = bandlim()
        .args(["kernel-scan", "--set", "bogus=1", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(bandlim_cli::EXIT_CONFIG));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
}

#[test]
fn config_file_errors_report_their_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scan.txt");
    fs::write(&cfg, "# scan\nt=1\nt=2\n").unwrap();
    let out = bandlim().arg("kernel-scan").arg("--config").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(bandlim_cli::EXIT_CONFIG));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn mismatched_subcommand_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("pswf.txt");
    fs::write(&cfg, "subcommand=pswf\n").unwrap();
    let out = bandlim().arg("kernel-scan").arg("--config").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(bandlim_cli::EXIT_CONFIG));
}

#[test]
fn bad_thread_count_is_a_config_error() {
    let out = bandlim().arg("pswf").env("BANDLIM_THREADS", "many").output().unwrap();
    assert_eq!(out.status.code(), Some(bandlim_cli::EXIT_CONFIG));
}

#[test]
fn under_resolved_spectrum_exits_as_not_certified() {
    let dir = tempfile::tempdir().unwrap();
    let out = bandlim()
        .args(["pswf", "--set", "c=10", "--set", "orders=8", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(bandlim_cli::EXIT_NOT_CERTIFIED));
}

#[test]
fn successful_run_lists_its_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = bandlim()
        .args(["kernel-scan", "--set", "orders=6", "--set", "grid_m=12", "--out"])
        .arg(dir.path())
        .env("BANDLIM_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let listed: Vec<String> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect();
    assert_eq!(listed.len(), 3);
    for f in listed {
        assert!(fs::metadata(f).unwrap().len() > 0);
    }
}
