//! Compile a C program against the generated header and link it to the
//! static library built alongside this test.

use std::path::{Path, PathBuf};
use std::process::Command;

/// `target/<profile>`, found from the test executable in `target/<profile>/deps`.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok()
}

#[test]
fn c_program_links_against_static_library() {
    if !have_cc() {
        eprintln!("no C compiler on PATH; skipping the C link check");
        return;
    }
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let profile = profile_dir();
    let archive = [profile.join("libffiwa_ffi.a"), profile.join("deps/libffiwa_ffi.a")]
        .into_iter()
        .find(|p| p.exists())
        .expect("static library libffiwa_ffi.a was built");
    let out_dir = std::env::temp_dir().join(format!("ffiwa-c-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&out_dir).unwrap();
    let binary = out_dir.join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&binary)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&binary).output().unwrap();
    std::fs::remove_dir_all(&out_dir).ok();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
