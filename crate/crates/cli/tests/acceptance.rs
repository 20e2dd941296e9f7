//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;
use strongpoly_core::factor::{self, Mode};
use strongpoly_core::families::{build_family_poly, enumerate_family, Family};
use strongpoly_core::groebner::{buchberger, radical_member, IdealBasis};
use strongpoly_core::parse::{parse_polynomial, ParseOptions};
use strongpoly_core::ring::{canonical_associate, div_exact, VarStyle};
use strongpoly_core::LaurentPoly;

type Check = Result<String, String>;

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_strongpoly")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn cli_json(args: &[&str]) -> (i32, Value) {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let (code, out) = cli(&a);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: bad JSON ({e}): {out}"));
    (code, v)
}

fn laurent(text: &str, nvars: usize) -> LaurentPoly {
    parse_polynomial(text, &ParseOptions { nvars: Some(nvars), ..ParseOptions::laurent() })
        .unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn same_up_to_units(a: &LaurentPoly, b: &LaurentPoly) -> bool {
    let n = a.nvars().max(b.nvars());
    let (a, b) = (a.with_nvars(n).unwrap(), b.with_nvars(n).unwrap());
    let ring = a.ring().join(b.ring());
    canonical_associate(&a.to_ring(ring).unwrap()) == canonical_associate(&b.to_ring(ring).unwrap())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus() -> Vec<LaurentPoly> {
    [(Family::F1, 1), (Family::F2, 1), (Family::F1, 2), (Family::F2, 2), (Family::F1, 3)]
        .into_iter()
        .flat_map(|(f, n)| enumerate_family(f, n, 2, usize::MAX).unwrap())
        .map(|s| build_family_poly(&s).unwrap())
        .collect()
}

/// Two members from each family group.
fn sample_members() -> Vec<LaurentPoly> {
    [(Family::F1, 1), (Family::F2, 1), (Family::F1, 2), (Family::F2, 2), (Family::F1, 3)]
        .into_iter()
        .flat_map(|(f, n)| enumerate_family(f, n, 2, 2).unwrap())
        .map(|s| build_family_poly(&s).unwrap())
        .collect()
}

fn family_soundness() -> Check {
    let start = Instant::now();
    let members = corpus();
    ensure(members.len() >= 50, || format!("corpus has only {} members", members.len()))?;
    let failures: Vec<String> = members
        .par_iter()
        .filter_map(|p| {
            let text = p.to_string();
            let (code, v) = cli_json(&["check-strong-irred", &text]);
            let rule = v["result"]["verdict"]["rule"].as_str().unwrap_or("none").to_string();
            (code != 0 || rule != "criterion").then(|| format!("{text}: exit {code}, rule {rule}"))
        })
        .collect();
    let elapsed = start.elapsed();
    ensure(failures.is_empty(), || format!("{} failures, first: {}", failures.len(), failures[0]))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} members proved by the criterion in {:.1}s", members.len(), elapsed.as_secs_f64()))
}

fn substitutions(n: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t| (1..=3).map(move |k| [t.clone(), vec![k]].concat())).collect();
    }
    out.extend((4..=5).map(|k| vec![k; n]));
    out
}

fn criterion_cross_check() -> Check {
    let members = corpus();
    let results: Vec<(usize, Vec<String>)> = members
        .par_iter()
        .map(|p| {
            let mut bad = Vec::new();
            let subs = substitutions(p.nvars());
            for t in &subs {
                let image = p.power_substitute(t).unwrap();
                let v = factor::is_irreducible(&image, Mode::Laurent).unwrap();
                if !v.is_proved() {
                    bad.push(format!("{p} at {t:?}: {:?} ({})", v.status, v.reason));
                }
            }
            (subs.len(), bad)
        })
        .collect();
    let total: usize = results.iter().map(|r| r.0).sum();
    let bad: Vec<&String> = results.iter().flat_map(|r| &r.1).collect();
    ensure(bad.is_empty(), || format!("{} substitutions not certified irreducible, first: {}", bad.len(), bad[0]))?;
    Ok(format!("{total} substitutions over {} members, zero reducible", members.len()))
}

/// Rebuilds `unit * monomial * prod f^m` from a JSON witness.
fn reassemble(w: &Value, nvars: usize) -> LaurentPoly {
    let f = &w["factorization"];
    let unit = laurent(f["unit"].as_str().unwrap(), nvars).to_rational();
    let exps: Vec<i32> = f["monomial"].as_array().unwrap().iter().map(|e| e.as_i64().unwrap() as i32).collect();
    let mono = LaurentPoly::from_int_terms(unit.ring(), &[(1, &exps)]).unwrap();
    f["factors"].as_array().unwrap().iter().fold(&unit * &mono, |acc, e| {
        let g = laurent(e["factor"].as_str().unwrap(), nvars).to_rational();
        &acc * &g.pow(e["multiplicity"].as_u64().unwrap() as u32)
    })
}

fn refutation_completeness() -> Check {
    let data = include_str!("data/negatives.txt");
    let mut n = 0;
    for line in data.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let (text, k) = line.split_once(';').unwrap();
        let (text, k): (&str, i64) = (text.trim(), k.trim().parse().unwrap());
        let p = laurent(text, 1);
        let nv = p.nvars();
        let known = factor::factor(&p.power_substitute(&vec![k; nv]).unwrap(), Mode::Laurent).unwrap();
        ensure(known.count() > 1, || format!("{text} is not reducible at the listed k={k}"))?;

        let (code, v) = cli_json(&["check-strong-irred", text]);
        ensure(code == 1, || format!("{text}: exit {code}"))?;
        let w = &v["result"]["verdict"]["witness"];
        let t: Vec<i64> = w["substitution"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
        let image = p.power_substitute(&t).unwrap().to_rational();
        ensure(laurent(w["polynomial"].as_str().unwrap(), nv).to_rational() == image, || {
            format!("{text}: witness polynomial is not p at {t:?}")
        })?;
        ensure(reassemble(w, nv) == image, || format!("{text}: factors do not reassemble"))?;
        let nontrivial = w["factorization"]["factors"].as_array().unwrap().iter().filter(|e| {
            let g = laurent(e["factor"].as_str().unwrap(), nv);
            !g.is_unit()
        });
        ensure(nontrivial.map(|e| e["multiplicity"].as_u64().unwrap()).sum::<u64>() > 1, || {
            format!("{text}: witness has a single factor")
        })?;
        n += 1;
    }
    ensure(n == 10, || format!("expected 10 negatives, found {n}"))?;
    Ok(format!("{n} negatives refuted with reassembling witnesses"))
}

fn genericity() -> Check {
    let start = Instant::now();
    let mut rates = Vec::new();
    for degree in ["2", "3"] {
        let (code, v) =
            cli_json(&["genericity", "--vars", "3", "--degree", degree, "--trials", "500", "--seed", "1"]);
        let rate = v["result"]["pass_rate"].as_f64().unwrap_or(0.0);
        ensure(code == 0 && rate >= 0.95, || format!("degree {degree}: exit {code}, pass rate {rate}"))?;
        rates.push(format!("degree {degree}: {rate:.3}"));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("{} in {:.1}s", rates.join(", "), elapsed.as_secs_f64()))
}

fn torsion_goldens() -> Check {
    let knots = [("s1 s1 s1", "2", "t^2 - t + 1"), ("s1 s2^-1 s1 s2^-1", "3", "t^2 - 3*t + 1"), ("s1", "2", "1")];
    for (braid, strands, want) in knots {
        let (code, v) = cli_json(&["torsion-alex", "--braid", braid, "--strands", strands]);
        ensure(code == 0, || format!("{braid}: exit {code}"))?;
        let got = laurent(v["result"]["delta"].as_str().unwrap(), 1);
        ensure(same_up_to_units(&got, &laurent(want, 1)), || format!("{braid}: got {got}, want {want}"))?;
        let at_one = got.eval_at_ones();
        ensure(["1", "-1"].contains(&at_one.to_string().as_str()), || format!("{braid}: Δ(1) = {at_one}"))?;
        ensure(same_up_to_units(&got, &got.bar()), || format!("{braid}: Δ is not symmetric"))?;
    }
    let (code, v) = cli_json(&["braid-alex", "--braid", "", "--strands", "2"]);
    let r = &v["result"];
    ensure(code == 0 && r["delta"] == "1" && r["components"] == 2 && r["free_rank"] == 1, || {
        format!("unlink: exit {code}, {r}")
    })?;
    Ok("trefoil, figure-eight, unknot and 2-component unlink match".into())
}

fn ribbon() -> Check {
    let members = sample_members();
    let dir = std::env::temp_dir();
    for (i, p) in members.iter().enumerate() {
        let text = p.to_string();
        let (code, v) = cli_json(&["verify-ribbon", &text]);
        ensure(code == 0 && v["result"]["certified"] == true, || format!("{text}: not certified (exit {code})"))?;
        let path = dir.join(format!("strongpoly-ribbon-{}-{i}.json", std::process::id()));
        std::fs::write(&path, v["result"]["presentation"].to_string()).unwrap();
        let (code, t) = cli_json(&["torsion-alex", "--matrix", path.to_str().unwrap()]);
        let _ = std::fs::remove_file(&path);
        ensure(code == 0, || format!("{text}: torsion-alex exit {code}"))?;
        let delta = laurent(t["result"]["delta"].as_str().unwrap(), p.nvars());
        ensure(same_up_to_units(&delta, &(p * &p.bar())), || format!("{text}: Δ = {delta}"))?;
    }
    Ok(format!("{} members certified, Δ = p·p̄ on the emitted presentation", members.len()))
}

fn blanchfield() -> Check {
    let members = sample_members();
    let mut certified = 0;
    for p in &members {
        let text = p.to_string();
        for f in ["1", "x1", "1 + x1"] {
            let fp = laurent(f, p.nvars());
            let p_divides = div_exact(&fp, p).unwrap().is_some();
            let (code, v) = cli_json(&["blanchfield-witness", "--p", &text, "--f", f]);
            if p_divides {
                ensure(code == 3, || format!("{text}, f = {f}: p | f but exit {code}"))?;
            } else {
                ensure(code == 0 && v["result"]["nonzero"] == true, || format!("{text}, f = {f}: exit {code}"))?;
                certified += 1;
            }
        }
        let g = format!("({text})*(x1 + 3)");
        let (code, v) = cli_json(&["blanchfield-witness", "--p", &text, "--f", &g]);
        ensure(code == 3 && v["result"]["error"]["kind"] == "precondition", || {
            format!("{text}: gate did not reject f = p·g (exit {code})")
        })?;
    }
    Ok(format!("{certified} nonzero certificates, {} gate rejections", members.len()))
}

fn localized_reduction() -> Check {
    let start = Instant::now();
    let primes: Vec<LaurentPoly> = [(Family::F1, 1), (Family::F2, 1), (Family::F1, 2)]
        .into_iter()
        .flat_map(|(f, n)| enumerate_family(f, n, 2, usize::MAX).unwrap())
        .map(|s| build_family_poly(&s).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let instances: Vec<(usize, usize, Vec<(u32, u32)>)> = (0..100)
        .map(|_| {
            let i = rng.random_range(0..primes.len());
            let j = (i + rng.random_range(1..primes.len())) % primes.len();
            let m = rng.random_range(2..=4);
            (i, j, (0..m).map(|_| (rng.random_range(0..=5), rng.random_range(0..=5))).collect())
        })
        .collect();
    let failures: Vec<String> = instances
        .par_iter()
        .filter_map(|(i, j, gens)| {
            let (p, q) = (&primes[*i], &primes[*j]);
            let spec = gens.iter().map(|(s, t)| format!("{s},{t}")).collect::<Vec<_>>().join(";");
            let (code, v) = cli_json(&["reduce-ideal", "--p", &p.to_string(), "--q", &q.to_string(), "--gens", &spec]);
            let r = &v["result"];
            if code != 0 || r["verified"] != true {
                return Some(format!("{p} | {q} | {spec}: exit {code}"));
            }
            let want = [gens.iter().map(|g| g.0).min().unwrap(), gens.iter().map(|g| g.1).min().unwrap()];
            if r["generator"] != serde_json::json!(want) {
                return Some(format!("{spec}: generator {}", r["generator"]));
            }
            let n = p.nvars().max(q.nvars());
            let pq = &p.with_nvars(n).unwrap() * &q.with_nvars(n).unwrap();
            for step in r["steps"].as_array().unwrap() {
                if let Some(w) = step["witness"].as_str() {
                    if !factor::coprime(&laurent(w, n), &pq).unwrap() {
                        return Some(format!("{spec}: witness {w} shares a factor with pq"));
                    }
                }
            }
            None
        })
        .collect();
    let elapsed = start.elapsed();
    ensure(failures.is_empty(), || format!("{} failures, first: {}", failures.len(), failures[0]))?;
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("100 instances verified in {:.1}s", elapsed.as_secs_f64()))
}

fn strip_timing(mut v: Value) -> String {
    v.as_object_mut().unwrap().remove("timing");
    v.to_string()
}

fn determinism() -> Check {
    let cmds: Vec<Vec<&str>> = vec![
        vec!["check-irred", "x1^4 + 4"],
        vec!["check-strong-irred", "x1 - x2 + x3 - x4 + 1"],
        vec!["check-strong-irred", "x1^2 + 2*x1*x2 + x2^2 - x3"],
        vec!["check-coprime", "x1*x2 - 1", "x1*x2^2 - 1"],
        vec!["check-vector-coprime", "--p", "1 + x1 - x2; x1 + 3", "--q", "x1 - 5; x2 + 2"],
        vec!["gen-family", "--family", "F1", "--n", "2", "--limit", "8"],
        vec!["slice-poly", "1 - x1 + 2*x2 - x3"],
        vec!["divisorial-hull", "--gens", "x1^2*x2 - x2; x1*x2 - x2"],
        vec!["torsion-alex", "--braid", "s1 s2^-1 s1 s2^-1", "--strands", "3"],
        vec!["braid-alex", "--braid", "s1 s1 s1 s1", "--strands", "2", "--multivariable"],
        vec!["verify-ribbon", "1 + x1 - x2 + x3 - x4"],
        vec!["blanchfield-witness", "--p", "1 + x1 - x2", "--f", "1 + x1"],
        vec!["reduce-ideal", "--p", "1 + x1 - x2", "--q", "1 - x1 + 2*x2", "--gens", "1,3;2,1;0,4"],
        vec!["genericity", "--vars", "3", "--degree", "3", "--trials", "100", "--seed", "5"],
        vec!["check-irred", "1 + + x1"],
    ];
    for c in &cmds {
        ensure(cli(c) == cli(c), || format!("{c:?}: text output differs between runs"))?;
        let runs: Vec<(i32, String)> = ["1", "1", "4"]
            .iter()
            .map(|t| {
                let mut a = vec!["--threads", t];
                a.extend_from_slice(c);
                let (code, v) = cli_json(&a);
                (code, strip_timing(v))
            })
            .collect();
        ensure(runs.windows(2).all(|w| w[0] == w[1]), || format!("{c:?}: JSON output differs"))?;
    }
    Ok(format!("{} commands byte-identical across runs and thread counts", cmds.len()))
}

fn groebner_regression() -> Check {
    let opts = ParseOptions { nvars: Some(3), ..Default::default() };
    let gens = ["x1^2 - x2", "x1^3 - x3"].iter().map(|g| parse_polynomial(g, &opts).unwrap()).collect();
    let gb = buchberger(&IdealBasis::new(3, gens).unwrap()).map_err(|e| e.to_string())?;
    let mut got = gb.render(&VarStyle::X);
    got.sort();
    let mut want: Vec<String> = include_str!("data/twisted_cubic.golden").lines().map(String::from).collect();
    want.sort();
    ensure(got == want, || format!("basis {got:?}"))?;
    let radical = |f: &str, gens: &[&str], n: usize| {
        let o = ParseOptions { nvars: Some(n), ..Default::default() };
        let ideal = IdealBasis::new(n, gens.iter().map(|g| parse_polynomial(g, &o).unwrap()).collect()).unwrap();
        radical_member(&parse_polynomial(f, &o).unwrap(), &ideal).unwrap()
    };
    ensure(radical("x1", &["x1^2"], 2), || "x1 not in rad<x1^2>".into())?;
    ensure(!radical("x1", &["x2"], 2), || "x1 in rad<x2>".into())?;
    ensure(radical("x1 + x2", &["x1^2", "x2^2"], 2), || "x1 + x2 not in rad<x1^2, x2^2>".into())?;
    Ok("twisted cubic basis matches the golden file, radical triple holds".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("family soundness", family_soundness),
        ("criterion cross-check", criterion_cross_check),
        ("refutation completeness", refutation_completeness),
        ("genericity", genericity),
        ("torsion Alexander goldens", torsion_goldens),
        ("ribbon presentations", ribbon),
        ("Blanchfield witnesses", blanchfield),
        ("localized PID reduction", localized_reduction),
        ("determinism", determinism),
        ("Groebner regression", groebner_regression),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
