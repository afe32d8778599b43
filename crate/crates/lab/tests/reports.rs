use charsum_core::arith::is_prime;
use charsum_lab::report::render;
use charsum_lab::{emit, read_report, run_experiment, Config, Format, EXPERIMENTS};

fn config(pairs: &[(&str, &str)]) -> Config {
    let mut c = Config::new();
    for (k, v) in pairs {
        c.set(k, v);
    }
    c
}

fn small(name: &str) -> Config {
    match name {
        "verify-identities" => config(&[("q_max", "40")]),
        "pv-scan" | "sigma2-scan" => config(&[("q_max", "400")]),
        "burgess-scan" => config(&[("p_max", "5000"), ("samples", "10")]),
        "integral-bound" => config(&[("ln_q", "600,1e4")]),
        "halasz-scan" => config(&[("p_max", "200")]),
        "diff-scan" => config(&[("p_max", "300")]),
        "delta-scan" => config(&[("p_max", "5000"), ("samples", "20")]),
        _ => unreachable!(),
    }
}

#[test]
fn verify_identities_clean() {
    let r = run_experiment("verify-identities", &config(&[("q_max", "200")])).unwrap();
    assert_eq!(r.summary["violations"], 0);
    assert!(r.summary["cases"].as_u64().unwrap() > 100_000);
    assert!(r.summary.contains_key("twist_decomposition.max_ratio"));
}

#[test]
fn delta_scan_example() {
    let r = run_experiment("delta-scan", &config(&[("p_max", "1e4"), ("eps", "0.5")])).unwrap();
    assert_eq!(r.rows.len() as u64, r.summary["primes"].as_u64().unwrap());
    assert!(r.summary.contains_key("fit_slope") || r.summary["fit_count"] == 0);
    assert_eq!(r.summary["monotonicity_violations"], 0);
    let p = r.column("p").unwrap();
    assert!(r.rows.iter().all(|row| is_prime(row[p].as_u64().unwrap())));
}

#[test]
fn empty_window_gives_skip_rows() {
    let r = run_experiment("pv-scan", &config(&[("q_max", "13"), ("moduli", "all")])).unwrap();
    let status = r.column("status").unwrap();
    assert!(!r.rows.is_empty());
    assert!(r.rows.iter().all(|row| row[status] == "skipped"));
    assert_eq!(r.summary["measured"], 0);
}

#[test]
fn pv_scan_rows_sorted_and_bounded() {
    let r = run_experiment("pv-scan", &config(&[("q_max", "1500"), ("moduli", "odd")])).unwrap();
    let q = r.column("q").unwrap();
    let qs: Vec<u64> = r.rows.iter().map(|row| row[q].as_u64().unwrap()).collect();
    assert!(qs.windows(2).all(|w| w[0] <= w[1]));
    let max = r.summary["max_ratio"].as_f64().unwrap();
    assert!(max.is_finite() && max > 0.0);
}

#[test]
fn sigma2_scan_example() {
    let r = run_experiment("sigma2-scan", &config(&[("q_max", "600")])).unwrap();
    let (a, s2) = (r.column("a_q").unwrap(), r.column("sigma2_abs").unwrap());
    let qc = r.column("q").unwrap();
    let mut zero_rows = 0;
    for row in &r.rows {
        if let (Some(a), Some(v)) = (row[a].as_f64(), row[s2].as_f64()) {
            if 2.0 * a >= row[qc].as_f64().unwrap() {
                assert_eq!(v, 0.0);
                zero_rows += 1;
            }
        }
    }
    assert!(zero_rows > 0);
    assert!(r.summary["max_ratio"].as_f64().unwrap().is_finite());
}

#[test]
fn every_experiment_is_deterministic() {
    for name in EXPERIMENTS {
        let c = small(name);
        let mut c1 = c.clone();
        c1.set("workers", "1");
        let mut c2 = c.clone();
        c2.set("workers", "3");
        let a = run_experiment(name, &c1).unwrap();
        let b = run_experiment(name, &c2).unwrap();
        assert_eq!(render(&a, Format::Json), render(&b, Format::Json), "{name}");
        assert_eq!(render(&a, Format::Csv), render(&b, Format::Csv), "{name}");
    }
}

#[test]
fn emit_twice_and_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_experiment("diff-scan", &small("diff-scan")).unwrap();
    let (p1, p2) = (dir.path().join("a.json"), dir.path().join("b.json"));
    emit(&r, Format::Json, &p1).unwrap();
    emit(&r, Format::Json, &p2).unwrap();
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert_eq!(read_report(&p1).unwrap(), r);
    assert!(read_report(&dir.path().join("missing.json")).is_err());
}

#[test]
fn timing_only_on_request() {
    let c = small("integral-bound");
    assert_eq!(run_experiment("integral-bound", &c).unwrap().timing, None);
    let mut t = c.clone();
    t.set("timing", "true");
    assert!(run_experiment("integral-bound", &t).unwrap().timing.is_some());
}

#[test]
fn table_function_source() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("minus.csv");
    let mut text = String::from("p,k,value\n");
    for p in (2..=1000u64).filter(|&p| is_prime(p)) {
        text.push_str(&format!("{p},1,-1\n"));
    }
    std::fs::write(&path, text).unwrap();
    let spec = format!("table:{}", path.display());
    let c = config(&[("function", &spec), ("x", "100,1000"), ("t", "1")]);
    let r = run_experiment("halasz-scan", &c).unwrap();
    assert_eq!(r.rows.len(), 2);
    let s = r.column("S").unwrap();
    assert!(r.rows.iter().all(|row| row[s].as_f64().unwrap() > 0.0));
    // missing prime powers default to f(p)^k, which makes this table Liouville
    let l = run_experiment(
        "halasz-scan",
        &config(&[("function", "liouville"), ("x", "100,1000"), ("t", "1")]),
    )
    .unwrap();
    let m = r.column("M_abs").unwrap();
    assert_eq!(r.rows[1][m], l.rows[1][m]);
    let bad = config(&[("function", "table:/no/such/file.csv")]);
    assert!(run_experiment("halasz-scan", &bad).is_err());
}

#[test]
fn integral_bound_skips_bad_points() {
    let r = run_experiment("integral-bound", &config(&[("ln_q", "50,600")])).unwrap();
    let status = r.column("status").unwrap();
    assert_eq!(r.rows[0][status], "skipped");
    assert_eq!(r.rows[1][status], "ok");
}
