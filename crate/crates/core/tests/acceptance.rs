//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. All comparisons are exact.

use std::collections::HashMap;
use std::process::{Command, Output};
use std::time::Instant;

use crossmap::arcs::{arcs_classical, arcs_enhanced, distance_multiset, Mode};
use crossmap::counting::{count_c, count_e, CountOptions, IdentityReport};
use crossmap::crossing::{count_k_witnesses, find_witness, oracle_count, oracle_find, Kind};
use crossmap::oeis::bundled;
use crossmap::partition::{enumerate_full, enumerate_partial};
use crossmap::{forward, reverse};

fn crossmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crossmap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

type Check = Result<String, String>;
type Counter = fn(usize, usize, &CountOptions) -> crossmap::Result<u64>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn identity_exhaustive() -> Check {
    let start = Instant::now();
    let mut rows = 0;
    for k in 1..=5 {
        let k = k.to_string();
        let o = crossmap(&["verify-identity", "--k", &k, "--n-max", "9", "--json"]);
        ensure(o.status.code() == Some(0), || {
            format!("k={k}: exit {:?}", o.status.code())
        })?;
        let reports: Vec<IdentityReport> =
            serde_json::from_slice(&o.stdout).map_err(|e| format!("k={k}: bad json: {e}"))?;
        ensure(reports.len() == 10, || {
            format!("k={k}: {} reports", reports.len())
        })?;
        for r in &reports {
            ensure(r.holds && r.lhs == r.rhs, || {
                format!("k={k} n={}: {} != {}", r.n, r.lhs, r.rhs)
            })?;
            ensure(r.routes.iter().all(|x| x.value == r.rhs), || {
                format!("k={k} n={}: routes disagree", r.n)
            })?;
            rows += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 300.0, || format!("took {secs:.1}s"))?;
    Ok(format!(
        "{rows} (k, n) pairs hold, both right-hand sides agree, {secs:.1}s"
    ))
}

fn worked_example() -> Check {
    let o = crossmap(&["map", "--input", "9:1,4,7,9/2,5/3/6"]);
    ensure(stdout(&o) == "10:1,5/2,6,7,10/3,4,8/9\n", || {
        format!("forward gave {:?}", stdout(&o))
    })?;
    let o = crossmap(&["map", "--input", "10:1,5/2,6,7,10/3,4,8/9", "--reverse"]);
    ensure(stdout(&o) == "9:1,4,7,9/2,5/3/6\n", || {
        format!("reverse gave {:?}", stdout(&o))
    })?;
    Ok("9:1,4,7,9/2,5/3/6 <-> 10:1,5/2,6,7,10/3,4,8/9".into())
}

fn bijectivity() -> Check {
    let mut cases = 0;
    for n in 0..=7 {
        for p in enumerate_partial(n).unwrap() {
            let q = forward(&p).map_err(|e| e.to_string())?;
            ensure(q.is_full() && reverse(&q).as_ref() == Ok(&p), || {
                format!("reverse(forward({p})) != {p}")
            })?;
            cases += 1;
        }
        for q in enumerate_full(n + 1).unwrap() {
            let p = reverse(&q).map_err(|e| e.to_string())?;
            ensure(forward(&p).as_ref() == Ok(&q), || {
                format!("forward(reverse({q})) != {q}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} round trips, 0 failures"))
}

fn statistic_transport() -> Check {
    let mut checks = 0u64;
    for n in 0..=7 {
        for p in enumerate_partial(n).unwrap() {
            let e = arcs_enhanced(&p);
            let c = arcs_classical(&forward(&p).unwrap());
            for kind in [Kind::Crossing, Kind::Nesting] {
                for k in 1..=4 {
                    let a = count_k_witnesses(&e, k, kind, Mode::Enhanced).unwrap();
                    let b = count_k_witnesses(&c, k, kind, Mode::Classical).unwrap();
                    ensure(a == b, || format!("{p}: {kind} k={k}: {a} vs {b}"))?;
                    checks += 1;
                }
            }
            let shifted: Vec<usize> = distance_multiset(&e).iter().map(|d| d + 1).collect();
            ensure(shifted == distance_multiset(&c), || {
                format!("{p}: distances not shifted by one")
            })?;
            ensure(e.len() == c.len(), || format!("{p}: arc counts differ"))?;
            checks += 2;
        }
    }
    Ok(format!("{checks} checks, 0 failures"))
}

fn oracle_equivalence() -> Check {
    let mut checks = 0u64;
    for n in 0..=7 {
        for p in enumerate_full(n).unwrap() {
            for mode in [Mode::Classical, Mode::Enhanced] {
                let arcs = match mode {
                    Mode::Classical => arcs_classical(&p),
                    Mode::Enhanced => arcs_enhanced(&p),
                };
                for kind in [Kind::Crossing, Kind::Nesting] {
                    for k in 1..=4 {
                        let fast = find_witness(&arcs, k, kind, mode).unwrap();
                        let slow = oracle_find(&arcs, k, kind, mode).unwrap();
                        ensure(fast == slow, || {
                            format!("{p} {mode} {kind} k={k}: {fast:?} vs {slow:?}")
                        })?;
                        let fc = count_k_witnesses(&arcs, k, kind, mode).unwrap();
                        let sc = oracle_count(&arcs, k, kind, mode).unwrap();
                        ensure(fc == sc, || {
                            format!("{p} {mode} {kind} k={k}: count {fc} vs {sc}")
                        })?;
                        checks += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checks} comparisons, 0 disagreements"))
}

fn sequence_regressions() -> Check {
    let opts = CountOptions::default();
    let cases: [(&str, Counter, usize, usize); 4] = [
        ("A000108", count_c, 2, 10),
        ("A001006", count_e, 2, 10),
        ("A108304", count_c, 3, 9),
        ("A108307", count_e, 3, 9),
    ];
    let mut terms = 0;
    for (id, count, k, n_max) in cases {
        let reference = bundled(id).map_err(|e| e.to_string())?;
        for n in 0..=n_max {
            let got = count(k, n, &opts).map_err(|e| e.to_string())?;
            let want = reference
                .at(n as i64)
                .ok_or_else(|| format!("{id} lacks n={n}"))?;
            ensure(got == want, || {
                format!("{id} n={n}: computed {got}, reference {want}")
            })?;
            terms += 1;
        }
    }
    Ok(format!(
        "{terms} terms match A000108, A001006, A108304, A108307"
    ))
}

fn bell_eigensequence() -> Check {
    let o = crossmap(&["bell-check", "--n-max", "10", "--json"]);
    ensure(o.status.code() == Some(0), || {
        format!("exit {:?}", o.status.code())
    })?;
    let reports: Vec<IdentityReport> =
        serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())?;
    ensure(reports.len() == 11, || format!("{} reports", reports.len()))?;
    for r in &reports {
        let routes: HashMap<&str, u64> = r
            .routes
            .iter()
            .map(|x| (x.name.as_str(), x.value))
            .collect();
        for name in ["enumeration", "bijection"] {
            ensure(routes.get(name) == Some(&r.lhs), || {
                format!("n={}: route {name} disagrees", r.n)
            })?;
        }
        ensure(r.holds, || {
            format!("n={}: B_(n+1)={} sum={}", r.n, r.lhs, r.rhs)
        })?;
    }
    Ok(format!(
        "n=0..10 hold by triangle, enumeration and bijection; B_11={}",
        reports[10].lhs
    ))
}

fn parallel_determinism() -> Check {
    let mut values = Vec::new();
    for parts in ["1", "2", "4", "8"] {
        let o = crossmap(&[
            "count", "--k", "3", "--n", "9", "--family", "C", "--parts", parts,
        ]);
        ensure(o.status.code() == Some(0), || {
            format!("parts={parts}: exit {:?}", o.status.code())
        })?;
        values.push(stdout(&o).trim().to_string());
    }
    ensure(values.iter().all(|v| v == &values[0]), || {
        format!("values differ: {values:?}")
    })?;
    Ok(format!("C_3(9) = {} for parts 1, 2, 4, 8", values[0]))
}

fn rendering() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut docs = Vec::new();
    for name in ["a.svg", "b.svg"] {
        let path = dir.path().join(name);
        let o = crossmap(&[
            "render",
            "--input",
            "9:1,4,7,9/2,5/3/6",
            "--out",
            path.to_str().unwrap(),
        ]);
        ensure(o.status.code() == Some(0), || {
            format!("exit {:?}", o.status.code())
        })?;
        docs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure(docs[0] == docs[1], || "output differs between runs".into())?;
    let text = String::from_utf8(docs.remove(0)).map_err(|e| e.to_string())?;
    let doc = roxmltree::Document::parse(&text).map_err(|e| format!("invalid XML: {e}"))?;
    let with_class = |c: &str| {
        doc.descendants()
            .filter(move |n| n.attribute("class") == Some(c))
            .collect::<Vec<_>>()
    };
    let (pi, pihat, base) = (
        with_class("pi-arc"),
        with_class("pihat-arc"),
        with_class("pihat-vertex"),
    );
    ensure(
        pi.len() == 6 && pihat.len() == 6 && base.len() == 10,
        || {
            format!(
                "{} pi arcs, {} pihat arcs, {} baseline vertices",
                pi.len(),
                pihat.len(),
                base.len()
            )
        },
    )?;
    let apex = |node: &roxmltree::Node| -> Option<String> {
        node.attribute("d")?
            .split(" L")
            .nth(1)
            .map(|s| s.trim().to_string())
    };
    let arc = |node: &roxmltree::Node| -> (usize, usize) {
        let (l, r) = node.attribute("data-arc").unwrap().split_once(',').unwrap();
        (l.parse().unwrap(), r.parse().unwrap())
    };
    let mut shared = 0;
    for a in &pi {
        let (l, r) = arc(a);
        if l == r {
            continue;
        }
        let image = pihat
            .iter()
            .find(|b| arc(b) == (l, r + 1))
            .ok_or(format!("no image arc for ({l},{r})"))?;
        ensure(apex(a).is_some() && apex(a) == apex(image), || {
            format!("({l},{r}) apex differs from image")
        })?;
        shared += 1;
    }
    Ok(format!(
        "6 + 6 arcs, 10 baseline vertices, {shared} shared apexes, byte-stable"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "1 identity exhaustive check (k=1..5, n=0..9)",
            identity_exhaustive,
        ),
        ("2 worked example", worked_example),
        ("3 bijectivity (n<=7)", bijectivity),
        ("4 statistic transport (n<=7, k<=4)", statistic_transport),
        ("5 oracle equivalence (n<=7, k<=4)", oracle_equivalence),
        ("6 sequence regressions", sequence_regressions),
        ("7 Bell eigensequence (n<=10)", bell_eigensequence),
        ("8 parallel determinism", parallel_determinism),
        ("9 rendering", rendering),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
