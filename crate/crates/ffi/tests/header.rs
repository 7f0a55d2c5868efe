//! Compiles and runs a small C program against the generated header and the
//! static library. Skipped when no C compiler is on the PATH.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "schroeder_lab.h"

int main(void) {
    SlInteger *s = NULL;
    if (sl_schroeder(10, &s) != SL_STATUS_OK) return 10;
    char *text = sl_integer_to_string(s);
    int bad = strcmp(text, "1037718") != 0;
    sl_string_free(text);
    sl_integer_free(s);
    if (bad) return 11;

    uint64_t r = 0;
    if (sl_schroeder_mod_2m(9, 5, &r) != SL_STATUS_OK || r != 18) return 12;

    SlScanParams p;
    memset(&p, 0, sizeof p);
    p.n.present = true; p.n.lo = 1; p.n.hi = 32;
    p.alpha.present = true; p.alpha.lo = 1; p.alpha.hi = 4;
    p.engine = SL_ENGINE_FASTMOD;
    p.jobs = 2;
    SlReport *rep = NULL;
    if (sl_scan("theorem1", &p, &rep) != SL_STATUS_OK) return 13;
    if (sl_report_total(rep) != 32 * 4 || sl_report_failed(rep) != 0) return 14;
    sl_report_free(rep);

    if (sl_little_schroeder(0, &s) != SL_STATUS_DOMAIN) return 15;
    if (sl_last_error() == NULL) return 16;
    printf("ok %s\n", sl_version());
    return 0;
}
"#;

fn compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok().filter(|o| o.status.success()).map(|_| cc)
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// target/<profile> directory holding the library artifacts.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler, skipping");
        return;
    };
    let header = crate_dir().join("include/schroeder_lab.h");
    assert!(header.exists(), "header not generated");
    for lang in ["c", "c++"] {
        let status = Command::new(&cc)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(&header)
            .status()
            .unwrap();
        assert!(status.success(), "header does not compile as {lang}");
    }
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler, skipping");
        return;
    };
    let lib = artifact_dir().join("libschroeder_lab_ffi.a");
    if !lib.exists() {
        eprintln!("static library not found at {}, skipping", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "link failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
