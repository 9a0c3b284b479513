use std::path::{Path, PathBuf};
use std::process::Command;

const C_PROGRAM: &str = r#"
#include "pgs.h"
#include <stdio.h>

static void count(size_t pos, void *user) {
    size_t *sum = user;
    *sum += pos + 1;
}

int main(void) {
    PgsAlphabet *a = NULL;
    PgsMatcher *m = NULL;
    if (pgs_alphabet_new_bytes((const uint8_t *)"AB", 2, &a) != PGS_STATUS_OK) return 10;
    if (pgs_matcher_new_bytes(a, (const uint8_t *)"ABAB", 4, &m) != PGS_STATUS_OK) return 11;
    pgs_alphabet_free(a);
    const char *text = "ABABBABAABABBABAABBA";
    size_t sum = 0;
    PgsMetrics metrics;
    if (pgs_matcher_find_bytes(m, (const uint8_t *)text, 20, count, &sum, &metrics) != PGS_STATUS_OK) return 12;
    pgs_matcher_free(m);
    if (pgs_matcher_new_bytes(NULL, (const uint8_t *)"A", 1, &m) != PGS_STATUS_NULL_POINTER) return 13;
    printf("%zu %s\n", sum, pgs_last_error());
    return sum == 1 + 5 + 9 + 13 ? 0 : 14;
}
"#;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn cc() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok().filter(|o| o.status.success()).map(|_| cc)
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(crate_dir().join("include/pgs.h")).unwrap();
    for name in [
        "typedef struct PgsAlphabet PgsAlphabet;",
        "typedef struct PgsMatcher PgsMatcher;",
        "PGS_STATUS_OK = 0",
        "pgs_alphabet_new(",
        "pgs_alphabet_new_bytes(",
        "pgs_alphabet_free(",
        "pgs_matcher_new(",
        "pgs_matcher_find(",
        "pgs_matcher_find_bytes(",
        "pgs_matcher_prefix_periods(",
        "pgs_matcher_free(",
        "pgs_pmatch(",
        "pgs_last_error(",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

fn compile(cc: &str, args: &[&std::ffi::OsStr]) -> std::process::Output {
    Command::new(cc).args(args).output().expect("run C compiler")
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("t.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let include = crate_dir().join("include");
    let out = compile(
        &cc,
        &[
            "-std=c99".as_ref(),
            "-Wall".as_ref(),
            "-Werror".as_ref(),
            "-fsyntax-only".as_ref(),
            "-I".as_ref(),
            include.as_os_str(),
            src.as_os_str(),
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let cpp = dir.path().join("t.cpp");
    std::fs::write(&cpp, "#include \"pgs.h\"\nint main() { return pgs_status_str(PGS_STATUS_OK) ? 0 : 1; }\n").unwrap();
    let out = compile(
        &cc,
        &["-x".as_ref(), "c++".as_ref(), "-fsyntax-only".as_ref(), "-I".as_ref(), include.as_os_str(), cpp.as_os_str()],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

fn static_lib() -> Option<PathBuf> {
    // target/<profile>/deps/<this test> -> target/<profile>/libpgs.a
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libpgs.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let (Some(cc), Some(lib)) = (cc(), static_lib()) else {
        eprintln!("no C compiler or static library; skipping");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("t.c");
    let exe = dir.path().join("t");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let include = crate_dir().join("include");
    let out = Command::new(&cc)
        .args(["-std=c99", "-I"])
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "exit {:?}: {stdout}", run.status.code());
    assert!(stdout.starts_with("28 "), "{stdout}");
    assert!(Path::new(&exe).exists());
}
