use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use nodalseq::cli::SequenceFile;
use nodalseq::spectra::{generate_separable, strip};
use nodalseq::{ManifoldClass, Rational};
use tempfile::TempDir;

fn nodalseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nodalseq")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn generate(dir: &TempDir, name: &str, extra: &[&str]) -> String {
    let out = path(dir, name);
    let mut args = vec!["generate", "--out", &out];
    args.extend_from_slice(extra);
    let o = nodalseq(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn generated_file_matches_library() {
    let dir = TempDir::new().unwrap();
    let f = generate(&dir, "t.jsonl", &["--class", "torus", "--alpha2", "3/7", "--cutoff", "300"]);
    let parsed = SequenceFile::read_from(fs::File::open(&f).map(std::io::BufReader::new).unwrap()).unwrap();
    let direct = generate_separable(ManifoldClass::SeparableTorus, &"3/7".parse().unwrap(), &Rational::from(300)).unwrap();
    assert_eq!(parsed.nodal_sequence().unwrap(), strip(&direct));
    assert_eq!(parsed, SequenceFile::from_spectrum(&direct, false));
}

#[test]
fn undisclosed_files_hide_parameters() {
    let dir = TempDir::new().unwrap();
    let f = generate(&dir, "r.jsonl", &["--class", "rectangle", "--alpha2", "5/11", "--cutoff", "200"]);
    let text = fs::read_to_string(&f).unwrap();
    assert!(!text.contains("5/11") && !text.contains("value") && !text.contains("witness") && !text.contains("alpha2"));
    let f = generate(&dir, "d.jsonl", &["--class", "rectangle", "--alpha2", "5/11", "--cutoff", "200", "--disclose"]);
    let text = fs::read_to_string(&f).unwrap();
    assert!(text.contains(r#""alpha2":"5/11""#) && text.contains("witnesses"));
}

#[test]
fn reconstruct_reports_bracket() {
    let dir = TempDir::new().unwrap();
    let f = generate(&dir, "r.jsonl", &["--class", "rectangle", "--alpha2", "1/2", "--cutoff", "10"]);
    let o = nodalseq(&["reconstruct", &f]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("bracket: [3/8, 1]"), "{}", stdout(&o));
    let f = generate(&dir, "k.jsonl", &["--class", "klein", "--alpha2", "4", "--cutoff", "200"]);
    assert!(stdout(&nodalseq(&["reconstruct", &f])).contains("bracket: Exact 4"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = generate(&dir, "r.jsonl", &["--class", "rectangle", "--alpha2", "1/2", "--cutoff", "3"]);
    assert_eq!(fs::read_to_string(&f).unwrap().lines().count(), 3);
    assert_eq!(code(&nodalseq(&["reconstruct", &f])), 2);

    let bad = path(&dir, "bad.jsonl");
    fs::write(
        &bad,
        "{\"format\":\"nodalseq/1\",\"class\":\"rectangle\",\"cutoff\":\"9\",\"disclosed\":false}\n\
         {\"index\":0,\"counts\":[1]}\n{\"index\":1,\"counts\":[2]}\n{\"index\":2,\"counts\":[2]}\n\
         {\"index\":3,\"counts\":[2]}\n",
    )
    .unwrap();
    assert_eq!(code(&nodalseq(&["reconstruct", &bad])), 3);

    let garbled = path(&dir, "garbled.jsonl");
    fs::write(&garbled, "{\"format\":\"nodalseq/1\"}\n").unwrap();
    let o = nodalseq(&["reconstruct", &garbled]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));

    assert_eq!(code(&nodalseq(&["reconstruct", &path(&dir, "missing.jsonl")])), 4);
    assert_eq!(code(&nodalseq(&["generate", "--class", "torus", "--alpha2", "3/2", "--cutoff", "9"])), 4);
    assert_eq!(code(&nodalseq(&["frobnicate"])), 4);
    assert_eq!(code(&nodalseq(&["count", "--class", "klein", "--m", "1", "--n", "0"])), 4);
    assert_eq!(code(&nodalseq(&["--help"])), 0);
}

#[test]
fn count_command() {
    let cases: [(&[&str], &str); 5] = [
        (&["--class", "rectangle", "--m", "3", "--n", "4"], "12"),
        (&["--class", "torus", "--m", "0", "--n", "3"], "6"),
        (&["--class", "klein", "--m", "0", "--n", "2"], "3"),
        (&["--class", "klein", "--m", "3", "--n", "-2"], "12"),
        (&["--class", "flat-torus-3d", "--q", "4,-6,10"], "4"),
    ];
    for (args, want) in cases {
        let mut full = vec!["count"];
        full.extend_from_slice(args);
        let o = nodalseq(&full);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o).trim(), want, "{args:?}");
    }
}

#[test]
fn roundtrip_and_compare() {
    for args in [
        &["--class", "rectangle", "--alpha2", "2/9", "--cutoff", "2000"][..],
        &["--class", "klein", "--alpha2", "13/4", "--cutoff", "4000"],
        &["--class", "flat-torus-2d", "--gram", "1,1/2;1/2,1", "--cutoff", "800"],
    ] {
        let mut full = vec!["roundtrip"];
        full.extend_from_slice(args);
        let o = nodalseq(&full);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).contains("result: pass"));
    }

    let dir = TempDir::new().unwrap();
    let a = generate(&dir, "a.jsonl", &["--class", "flat-torus-3d", "--gram", "1,0,0;0,1,0;0,0,1", "--cutoff", "200"]);
    let b = generate(&dir, "b.jsonl", &["--class", "flat-torus-3d", "--gram", "1,0,0;0,1,0;0,0,2", "--cutoff", "200"]);
    let o = nodalseq(&["compare", &a, &b]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&nodalseq(&["compare", &a, &a])), 0);
    let t = generate(&dir, "t.jsonl", &["--class", "torus", "--alpha2", "1/2", "--cutoff", "20"]);
    assert_eq!(code(&nodalseq(&["compare", &a, &t])), 4);
}

#[test]
fn convergence_csv() {
    let dir = TempDir::new().unwrap();
    let csv = path(&dir, "c.csv");
    let o = nodalseq(&["convergence", "--class", "torus", "--alpha2", "3/7", "--landmarks", "5,7", "--csv", &csv]);
    assert_eq!(code(&o), 0);
    let mut rdr = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["h", "lo", "hi", "width", "lo_dec", "hi_dec", "width_dec"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows[0].iter().take(3).collect::<Vec<_>>(), ["5", "9/25", "1"]);
    assert_eq!(rows.len(), 2);
}

#[test]
fn outputs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let args = ["--class", "flat-torus-2d", "--gram", "2/3,1/4;1/4,5/4", "--cutoff", "400", "--disclose"];
    let a = generate(&dir, "a.jsonl", &args);
    let b = generate(&dir, "b.jsonl", &args);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let run = |f: &str| stdout(&nodalseq(&["reconstruct", f]));
    assert_eq!(run(&a), run(&b));
    assert!(Path::new(&a).exists());
}
