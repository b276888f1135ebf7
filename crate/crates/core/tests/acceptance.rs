//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line with
//! its wall time and budget; the test fails if any criterion fails.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use fpp_workbench::cli::{run, Outcome};
use fpp_workbench::sympow::euler_sym_square;
use serde_json::{json, Value};

fn fpp(args: &[&str]) -> Outcome {
    run(std::iter::once("fpp").chain(args.iter().copied()))
}

fn fpp_json(args: &[&str]) -> (i32, Value, String) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = fpp(&full);
    let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", out.stderr));
    (out.code, v, out.stdout)
}

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ring_structure() -> Check {
    let (code, v, _) = fpp_json(&["ring", "describe", "--ring", "rpsum:n=3,k=2"]);
    let r = &v["results"];
    ensure(code == 0, format!("exit {code}"))?;
    ensure(r["graded_dims"] == json!([1, 3, 3, 3, 1]), format!("dims {}", r["graded_dims"]))?;
    ensure(r["euler"] == -1, format!("χ {}", r["euler"]))?;
    Ok("dims (1,3,3,3,1), χ = -1".into())
}

fn ring_axioms() -> Check {
    let specs = ["rpsum:n=1,k=2", "rpsum:n=2,k=2", "rpsum:n=3,k=2", "rpsum:n=4,k=2", "cp2pow:n=1", "cp2pow:n=2", "cp2pow:n=3"];
    for spec in specs {
        let (code, v, _) = fpp_json(&["ring", "describe", "--ring", spec]);
        let a = &v["results"]["axioms"];
        let len = v["results"]["basis"].as_array().unwrap().iter().map(|d| d.as_array().unwrap().len() as u64).sum::<u64>();
        ensure(code == 0, format!("{spec}: exit {code}"))?;
        for key in ["unit", "commutative", "graded", "associative"] {
            ensure(a[key] == true, format!("{spec}: {key} fails"))?;
        }
        ensure(a["triples_checked"] == len.pow(3), format!("{spec}: not every triple checked"))?;
        ensure(v["results"]["poincare"]["nondegenerate"] == true, format!("{spec}: degenerate pairing"))?;
    }
    Ok(format!("{} rings", specs.len()))
}

fn trace_claims() -> Check {
    let mut parts = Vec::new();
    for n in 1..=4u32 {
        let (code, v, _) = fpp_json(&["theorem3", "--n", &n.to_string()]);
        let r = &v["results"];
        let expected = 1u64 << (n * n);
        ensure(code == 0, format!("n={n}: exit {code}"))?;
        ensure(r["matrices"] == expected && r["passing"] == expected, format!("n={n}: {}", r["passing"]))?;
        for claim in ["unit_trace", "symmetric", "diagonal_vanishes", "total_is_one"] {
            ensure(r["claim_counts"][claim] == expected, format!("n={n}: {claim}"))?;
        }
        parts.push(format!("{expected}"));
    }
    Ok(format!("{} matrices", parts.join("+")))
}

fn crosscheck() -> Check {
    for n in 2..=3u32 {
        let (code, v, _) = fpp_json(&["crosscheck", "--n", &n.to_string()]);
        let r = &v["results"];
        let expected = 1u64 << (n * n);
        ensure(code == 0, format!("n={n}: exit {code}"))?;
        ensure(r["matrices"] == expected, "matrix count")?;
        ensure(r["monomials_checked"] == expected * 3u64.pow(n), "monomials")?;
        ensure(r["coefficient_deviations"] == 0 && r["degree_trace_deviations"] == 0, format!("n={n}: deviations"))?;
        ensure(r["lefschetz_histogram"]["one"] == expected, format!("n={n}: some L = 0"))?;
    }
    Ok("0 deviations, L = 1 for all".into())
}

fn connected_sum_sweep() -> Check {
    let args = ["verify-fpp", "--ring", "rpsum:n=3,k=2", "--mode", "valid-only"];
    let (code, v, raw) = fpp_json(&args);
    let (_, _, again) = fpp_json(&args);
    ensure(raw == again, "rerun differs")?;
    ensure(code == 0 || code == 1, format!("exit {code}"))?;
    let c = &v["results"];
    let total = c["total_matrices"].as_u64().unwrap();
    let valid = c["valid_homs"].as_u64().unwrap();
    ensure(total == 512, "total")?;
    ensure(valid + c["invalid"].as_u64().unwrap() == total, "valid + invalid")?;
    let hist = &c["lefschetz_histogram"];
    let (zero, one) = (hist["zero"].as_u64().unwrap(), hist["one"].as_u64().unwrap());
    ensure(zero + one == valid, "histogram")?;
    ensure(c["claim"].is_string(), "claim echoed")?;
    let listed = c["exceptional"].as_array().unwrap();
    ensure(c["exceptional_overflow"] == 0, "overflow")?;
    let listed_zero = listed.iter().filter(|e| e["lefschetz"] == 0).count() as u64;
    ensure(listed_zero == zero, "every L = 0 hom listed")?;
    let mismatches = listed.iter().filter(|e| e["reasons"].as_array().unwrap().contains(&json!("table1_mismatch"))).count();
    ensure(mismatches as u64 == c["table1_mismatches"].as_u64().unwrap(), "every table mismatch listed")?;
    // Every listed matrix must agree with a single-matrix engine run.
    let dir = std::env::temp_dir().join(format!("fpp-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for e in listed {
        let rows: Vec<&str> = e["matrix"].as_array().unwrap().iter().map(|r| r.as_str().unwrap()).collect();
        let path = dir.join(format!("m{}.txt", e["index"]));
        std::fs::write(&path, rows.join("\n") + "\n").unwrap();
        let (_, single, _) = fpp_json(&["lefschetz", "--ring", "rpsum:n=3,k=2", "--matrix", path.to_str().unwrap(), "--table1"]);
        let s = &single["results"];
        ensure(
            s["traces"] == e["traces"] && s["lefschetz"] == e["lefschetz"] && s["is_ring_hom"] == e["is_ring_hom"] && s["table1"] == e["table1"],
            format!("matrix #{} disagrees with the engine", e["index"]),
        )?;
    }
    std::fs::remove_dir_all(&dir).unwrap();
    let probe = listed.iter().find(|e| e["matrix"] == json!(["010", "001", "100"])).ok_or("cyclic probe not listed")?;
    ensure(probe["traces"] == json!([1, 0, 0, 0, 1]), format!("probe traces {}", probe["traces"]))?;
    Ok(format!(
        "{valid} valid homs, L=0 for {zero}, L=1 for {one}, {} table mismatches; probe traces (1,0,0,0,1)",
        c["table1_mismatches"]
    ))
}

fn sym_square_formula() -> Check {
    for (chi, want) in [(-1, 0), (2, 3), (1, 1), (0, 0)] {
        ensure(euler_sym_square(chi) == Ok(want), format!("{chi} ↦ {:?}", euler_sym_square(chi)))?;
    }
    let out = fpp(&["sympow", "--chi", "-1"]);
    ensure(out.code == 0 && out.stdout.contains("χ(X(2)) = 0"), "sympow --chi -1")?;
    Ok("-1↦0, 2↦3, 1↦1, 0↦0".into())
}

fn sym_square_oracle() -> Check {
    let root = env!("CARGO_MANIFEST_DIR");
    for (file, chi, q, surface) in [("circle.txt", 0, 0, false), ("sphere.txt", 2, 3, true), ("rp2.txt", 1, 1, true)] {
        let (code, v, _) = fpp_json(&["sympow", "--complex", &format!("{root}/data/{file}")]);
        let r = &v["results"];
        ensure(code == 0, format!("{file}: exit {code}"))?;
        ensure(r["chi_x"] == chi && r["chi_quotient"] == q, format!("{file}: χ {} q {}", r["chi_x"], r["chi_quotient"]))?;
        ensure(2 * q == chi + chi * chi && r["identity_holds"] == true, format!("{file}: identity"))?;
        let total = r["total"].as_array().unwrap();
        let fixed = r["fixed"].as_array().unwrap();
        for (d, t) in total.iter().enumerate() {
            let f = fixed.get(d).and_then(Value::as_u64).unwrap_or(0);
            ensure((t.as_u64().unwrap() - f) % 2 == 0, format!("{file}: odd free part in dimension {d}"))?;
        }
        if surface {
            let s = &r["surface"];
            ensure(
                s["pure_2d"] == true && s["edges_in_two_triangles"] == true && s["vertex_links_are_cycles"] == true,
                format!("{file}: not a closed surface"),
            )?;
        }
    }
    Ok("χ(X(2)) = 0, 3, 1".into())
}

fn determinism() -> Check {
    let (c1, _, serial) = fpp_json(&["verify-all", "--jobs", "1"]);
    let (c8, v, parallel) = fpp_json(&["verify-all", "--jobs", "8"]);
    let (_, _, repeat) = fpp_json(&["verify-all", "--jobs", "8"]);
    ensure(serial == parallel, "jobs 1 vs 8 differ")?;
    ensure(parallel == repeat, "consecutive runs differ")?;
    ensure(c1 == 0 && c8 == 0, format!("verify-all exit {c1}/{c8}"))?;
    let ids: Vec<u64> = v["results"]["criteria"].as_array().unwrap().iter().map(|c| c["id"].as_u64().unwrap()).collect();
    ensure(ids == (1..=8).collect::<Vec<_>>(), "criteria order")?;
    Ok("verify-all byte-identical for jobs 1, 8 and a rerun".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("1 ring structure", ring_structure, Duration::from_secs(1)),
        ("2 ring axioms", ring_axioms, Duration::from_secs(10)),
        ("3 minor trace claims", trace_claims, Duration::from_secs(30)),
        ("4 oracle equivalence", crosscheck, Duration::from_secs(60)),
        ("5 connected-sum sweep", connected_sum_sweep, Duration::from_secs(5)),
        ("6 symmetric-square formula", sym_square_formula, Duration::from_millis(100)),
        ("7 simplicial oracle", sym_square_oracle, Duration::from_secs(120)),
        ("8 determinism", determinism, Duration::from_secs(300)),
    ];
    let mut failures = Vec::new();
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match &result {
            Ok(_) if elapsed <= budget => "PASS",
            _ => "FAIL",
        };
        let detail = match &result {
            Ok(s) => s.clone(),
            Err(e) => e.clone(),
        };
        println!("{verdict} {name}: {detail} ({} ms, budget {} ms)", elapsed.as_millis(), budget.as_millis());
        if verdict == "FAIL" {
            failures.push(name);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
