use std::path::Path;
use std::process::Command;

use arthur_calc::props::{self, integral_lattice, pool, Config, Scale, GROUPS};
use arthur_calc::{parse, render_all, render_exms, run, RunOptions, Status};
use arthur_core::exms::{ExtMultiSegment, ExtSegment};
use proptest::prelude::*;

fn exms_strategy() -> impl Strategy<Value = ExtMultiSegment> {
    let part = prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 0..5);
    (0..2usize, part.clone(), part).prop_map(|(g, pr, pq)| {
        let group = GROUPS[g];
        let mut s = ExtMultiSegment::new(group);
        for (rho, picks) in [(props::orth(), pr), (props::symp(), pq)] {
            let p = pool(integral_lattice(group, &rho), 9, false);
            let segs: Vec<ExtSegment> = picks
                .iter()
                .map(|(i, m)| {
                    let (a, b) = p[i.index(p.len())];
                    let len = (a - b).twice() / 2 + 1;
                    ExtSegment::new(a, b, -len + 2 * m.index(len as usize + 1) as i64).unwrap()
                })
                .collect();
            if !segs.is_empty() {
                s.set_part(rho, segs);
            }
        }
        s
    })
}

proptest! {
    #[test]
    fn rendered_exms_parse_back(s in exms_strategy()) {
        let src = format!(
            "group {}\nrho r d=1 type=orth\nrho q d=2 type=symp\n{}\n",
            s.group,
            render_exms("S", &s)
        );
        let script = parse(&src);
        prop_assert_eq!(script.diagnostics().count(), 0, "{}", src);
        prop_assert_eq!(script.exms.get("S"), Some(&s));
    }
}

fn fixture_sources() -> Vec<(String, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut out = Vec::new();
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|x| x == "arc") {
            let expected = std::fs::read_to_string(p.with_extension("json")).unwrap();
            out.push((std::fs::read_to_string(&p).unwrap(), expected));
        }
    }
    out
}

#[test]
fn fixtures_match_in_process() {
    let all = fixture_sources();
    assert!(all.len() >= 5);
    for (src, expected) in all {
        assert_eq!(render_all(&run(&parse(&src), &RunOptions::default())), expected);
    }
}

#[test]
fn rendering_is_deterministic() {
    for (src, _) in fixture_sources() {
        let a = render_all(&run(&parse(&src), &RunOptions::default()));
        let b = render_all(&run(&parse(&src), &RunOptions::default()));
        assert_eq!(a, b);
    }
}

#[test]
fn property_reports_depend_only_on_the_seed() {
    let cfg = Config { seed: 7, scale: Scale::Quick, max_states: 10_000 };
    for id in [3, 5, 12] {
        let a = props::run_criterion(id, &cfg);
        let b = props::run_criterion(id, &cfg);
        assert_eq!((a.instances, a.failures, &a.detail), (b.instances, b.failures, &b.detail));
    }
}

#[test]
fn state_bound_is_reported_as_a_diagnostic() {
    let src = "group Sp\nrho r d=1 type=orth\nbruteforce { r: ([2,0]; mu=1), ([1,1]; mu=1) }\n";
    let docs = run(&parse(src), &RunOptions { max_states: 1 });
    assert_eq!(docs[0].status, Status::Error);
    assert!(docs[0].diagnostics[0].message.contains("1"));
}

fn calc(args: &[&str], stdin: Option<&str>) -> (i32, String) {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_arthur-calc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn exit_status_reflects_errors() {
    let good = "group Sp\nrho r d=1 type=orth\nrep { r: ([1,0]; mu=2), ([2,1]; mu=2) }\n";
    let (code, out) = calc(&["--json", "run", "-"], Some(good));
    assert_eq!(code, 0);
    let docs: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(docs[0]["payload"]["inRep"], true);

    let (code, out) = calc(&["run", "-"], Some("group Sp\nfrobnicate\n"));
    assert_eq!(code, 1);
    assert!(out.contains("unknown command"));

    let (code, _) = calc(&["run", "/nonexistent/script.arc"], None);
    assert_eq!(code, 2);
}

#[test]
fn quick_props_run_from_the_binary() {
    let (code, out) = calc(&["props", "--only", "2,10"], None);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.contains("PASS")).count(), 2);
}
