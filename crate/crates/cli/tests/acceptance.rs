//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use boxjenkins::model::constrain;
use boxjenkins::{
    accuracy, fit, fitted_values, forecast, io::parse_csv, jarque_bera, ljung_box, log_likelihood,
    mae, mape, pacf, rmse, simulate, ArimaOrder, ArimaParams, FitOptions, TimeSeries,
};
use common::{arma_autocovariance, dense_gaussian_loglik, pacf_ols, uniform_series};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde_json::Value;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn order(p: usize, d: usize, q: usize) -> ArimaOrder {
    ArimaOrder::new(p, d, q).unwrap()
}

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/kzt_yearly.csv")
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxjenkins"))
        .args(args)
        .output()
        .expect("spawn cli")
}

fn json_stdout(out: &Output) -> Result<Value, String> {
    if !out.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| format!("invalid json: {e}"))
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn metrics_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in 0..1000 {
        let n = rng.random_range(1..=100);
        let actual: Vec<f64> = (0..n)
            .map(|_| {
                let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                sign * rng.random_range(0.5..200.0)
            })
            .collect();
        let predicted: Vec<f64> = actual
            .iter()
            .map(|a| a + rng.random_range(-20.0..20.0))
            .collect();
        let mut abs_sum = 0.0;
        let mut pct_sum = 0.0;
        let mut sq_sum = 0.0;
        for i in 0..n {
            let e = actual[i] - predicted[i];
            abs_sum += e.abs();
            pct_sum += (e / actual[i]).abs();
            sq_sum += e * e;
        }
        let k = n as f64;
        let want = [abs_sum / k, 100.0 * pct_sum / k, (sq_sum / k).sqrt()];
        let got = [
            mae(&actual, &predicted).map_err(|e| e.to_string())?,
            mape(&actual, &predicted).map_err(|e| e.to_string())?,
            rmse(&actual, &predicted).map_err(|e| e.to_string())?,
        ];
        for (g, w) in got.iter().zip(&want) {
            ensure(rel_close(*g, *w, 1e-12), || {
                format!("case {case}: {g} vs {w}")
            })?;
        }
    }
    Ok("1000 pairs within 1e-12 relative".into())
}

fn likelihood_exactness() -> Outcome {
    let mut worst = 0.0f64;
    for (p, q) in [(1, 0), (0, 1), (1, 1), (2, 1)] {
        let ord = order(p, 0, q);
        for draw in 0..50u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(10_000 + 100 * (10 * p + q) as u64 + draw);
            let ar: Vec<f64> = (0..p).map(|_| rng.random_range(-1.5..1.5)).collect();
            let ma: Vec<f64> = (0..q).map(|_| rng.random_range(-1.5..1.5)).collect();
            let params = ArimaParams::new(
                rng.random_range(-2.0..2.0),
                constrain(&ar),
                constrain(&ma),
                rng.random_range(0.2..3.0),
            )
            .unwrap();
            let y: Vec<f64> = (0..8)
                .map(|_| params.mu + rng.random_range(-3.0..3.0))
                .collect();
            let gamma = arma_autocovariance(&params.beta, &params.theta(), params.sigma2, 8);
            let want = dense_gaussian_loglik(&y, params.mu, &gamma);
            let got = log_likelihood(&params, ord, &y).map_err(|e| e.to_string())?;
            worst = worst.max((got - want).abs());
            ensure((got - want).abs() <= 1e-8, || {
                format!("({p},{q}) draw {draw}: {got} vs {want}")
            })?;
        }
    }
    Ok(format!("200 draws, max abs error {worst:.2e}"))
}

fn pacf_oracle() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..100 {
        let y = uniform_series(5_000 + seed, 100);
        for pt in pacf(&y, 10).map_err(|e| e.to_string())? {
            let err = (pt.value - pacf_ols(&y, pt.lag)).abs();
            worst = worst.max(err);
            ensure(err <= 1e-8, || {
                format!("seed {seed} lag {}: error {err}", pt.lag)
            })?;
        }
    }
    Ok(format!("100 series x 10 lags, max abs error {worst:.2e}"))
}

fn parameter_recovery() -> Outcome {
    let opts = FitOptions::default();
    let ar = ArimaParams::new(0.0, vec![0.7], vec![], 1.0).unwrap();
    let y = simulate(&ar, order(1, 0, 0), 1000, 2024).map_err(|e| e.to_string())?;
    let b = fit(&y, order(1, 0, 0), &opts)
        .map_err(|e| e.to_string())?
        .params
        .beta[0];
    ensure((0.6..=0.8).contains(&b), || format!("AR(1) beta {b}"))?;

    let arma = ArimaParams::new(0.0, vec![0.5], vec![-0.3], 1.0).unwrap();
    let y = simulate(&arma, order(1, 0, 1), 500, 1).map_err(|e| e.to_string())?;
    let m = fit(&y, order(1, 0, 1), &opts).map_err(|e| e.to_string())?;
    let (b1, a1) = (m.params.beta[0], m.params.alpha[0]);
    ensure((b1 - 0.5).abs() <= 0.15 && (a1 + 0.3).abs() <= 0.15, || {
        format!("ARMA(1,1) beta {b1} alpha {a1}")
    })?;
    Ok(format!(
        "AR(1) beta {b:.4}; ARMA(1,1) beta {b1:.4} alpha {a1:.4}"
    ))
}

fn random_walk_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for case in 0..100 {
        let n = rng.random_range(4..60);
        let scale = 10f64.powi(rng.random_range(-3..5));
        let values: Vec<f64> = (0..n)
            .map(|_| scale * rng.random_range(-5.0..5.0))
            .collect();
        let series = TimeSeries::from_values(values.clone()).unwrap();
        let m = fit(&series, order(0, 1, 0), &FitOptions::default()).map_err(|e| e.to_string())?;
        let f = forecast(&m, 50, 0.95).map_err(|e| e.to_string())?;
        let last = values[n - 1];
        ensure(f.points.iter().all(|&p| p == last), || {
            format!("case {case}: points {:?} vs last {last}", &f.points[..3])
        })?;
    }
    Ok("100 arbitrary series, horizons 1-50 bit-exact".into())
}

fn diagnostic_calibration() -> Outcome {
    let mut lb = 0;
    let mut jb = 0;
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e: Vec<f64> = (0..200).map(|_| StandardNormal.sample(&mut rng)).collect();
        lb += usize::from(ljung_box(&e, 10, 0).map_err(|e| e.to_string())?.p < 0.05);
        jb += usize::from(jarque_bera(&e).map_err(|e| e.to_string())?.p < 0.05);
    }
    let (lb_rate, jb_rate) = (lb as f64 / 1000.0, jb as f64 / 1000.0);
    ensure((0.02..=0.08).contains(&lb_rate), || {
        format!("Ljung-Box rate {lb_rate}")
    })?;
    ensure((0.02..=0.09).contains(&jb_rate), || {
        format!("Jarque-Bera rate {jb_rate}")
    })?;
    Ok(format!(
        "Ljung-Box {:.1}%, Jarque-Bera {:.1}%",
        100.0 * lb_rate,
        100.0 * jb_rate
    ))
}

fn fixture_backtest() -> Outcome {
    let input = fixture();
    let mut lines = Vec::new();
    for column in ["usd_kzt", "eur_kzt", "sgd_kzt"] {
        let out = cli(&[
            "backtest",
            "--auto",
            "--input",
            input.to_str().unwrap(),
            "--column",
            column,
        ]);
        let report = json_stdout(&out)?;
        let m = &report["metrics"];
        let (mae_v, mape_v, rmse_v) = (
            m["mae"].as_f64().unwrap(),
            m["mape_percent"].as_f64().unwrap(),
            m["rmse"].as_f64().unwrap(),
        );
        let o = &report["order"];
        lines.push(format!(
            "{column} ({},{},{}) MAE {mae_v:.4} MAPE {mape_v:.4}% RMSE {rmse_v:.4}",
            o["p"], o["d"], o["q"]
        ));
        ensure((1.0..=12.0).contains(&mape_v), || {
            format!("{column}: MAPE {mape_v}")
        })?;
        ensure(rmse_v >= mae_v, || {
            format!("{column}: rmse {rmse_v} < mae {mae_v}")
        })?;
    }
    Ok(lines.join("; "))
}

fn number_array(v: &Value, len: usize) -> Result<Vec<f64>, String> {
    let arr = v.as_array().ok_or("expected array")?;
    ensure(arr.len() == len, || {
        format!("array length {} != {len}", arr.len())
    })?;
    arr.iter()
        .map(|x| x.as_f64().ok_or_else(|| "non-number".to_string()))
        .collect()
}

/// Independent structural check of the report layout.
fn check_schema(
    report: &Value,
    sections: &[&str],
    p_q: Option<(usize, usize)>,
) -> Result<(), String> {
    let obj = report.as_object().ok_or("report is not an object")?;
    ensure(obj["command"].is_string(), || "command".into())?;
    for s in sections {
        ensure(obj.contains_key(*s), || format!("missing section {s}"))?;
    }
    if let Some(o) = obj.get("order") {
        for k in ["p", "d", "q"] {
            ensure(o[k].is_u64(), || format!("order.{k}"))?;
        }
    }
    if let Some(p) = obj.get("params") {
        let (np, nq) = p_q.unwrap_or((
            obj["order"]["p"].as_u64().unwrap() as usize,
            obj["order"]["q"].as_u64().unwrap() as usize,
        ));
        ensure(
            p["mu"].is_f64() && p["sigma2"].as_f64().is_some_and(|s| s > 0.0),
            || "params.mu/sigma2".into(),
        )?;
        number_array(&p["beta"], np)?;
        number_array(&p["alpha_paper_sign"], nq)?;
    }
    if let Some(c) = obj.get("criterion") {
        ensure(matches!(c["name"].as_str(), Some("AIC" | "BIC")), || {
            "criterion.name".into()
        })?;
        ensure(c["value"].is_f64(), || "criterion.value".into())?;
    }
    if obj.contains_key("loglik") {
        ensure(obj["loglik"].is_f64(), || "loglik".into())?;
    }
    if let Some(d) = obj.get("diagnostics") {
        let lb = &d["ljung_box"];
        ensure(lb["stat"].is_f64() && lb["df"].is_u64(), || {
            "ljung_box".into()
        })?;
        for p in [&lb["p"], &d["jarque_bera"]["p"]] {
            ensure(p.as_f64().is_some_and(|v| (0.0..=1.0).contains(&v)), || {
                "p-value".into()
            })?;
        }
        ensure(d["jarque_bera"]["stat"].is_f64(), || {
            "jarque_bera.stat".into()
        })?;
    }
    if let Some(f) = obj.get("forecast") {
        let h = f["points"].as_array().ok_or("forecast.points")?.len();
        let pts = number_array(&f["points"], h)?;
        let se = number_array(&f["se"], h)?;
        let lo = number_array(&f["lower"], h)?;
        let hi = number_array(&f["upper"], h)?;
        ensure(f["level"].is_f64(), || "forecast.level".into())?;
        for t in 0..h {
            ensure(lo[t] <= pts[t] && pts[t] <= hi[t] && se[t] >= 0.0, || {
                format!("forecast interval at {t}")
            })?;
        }
    }
    if let Some(m) = obj.get("metrics") {
        for k in ["mae", "mape_percent", "rmse"] {
            ensure(m[k].is_number(), || format!("metrics.{k}"))?;
        }
        ensure(m["k"].is_u64(), || "metrics.k".into())?;
    }
    Ok(())
}

fn parse_cell(cell: &str) -> Result<Option<f64>, String> {
    if cell.is_empty() {
        Ok(None)
    } else {
        cell.parse()
            .map(Some)
            .map_err(|e| format!("cell '{cell}': {e}"))
    }
}

fn cli_round_trip() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = fixture();
    let input = input.to_str().unwrap();
    let text = std::fs::read_to_string(input).map_err(|e| e.to_string())?;
    let dataset = parse_csv(&text, "usd_kzt").map_err(|e| e.to_string())?;
    let n = dataset.series.len();

    let fitted_report = json_stdout(&cli(&[
        "fit", "--auto", "--input", input, "--column", "usd_kzt",
    ]))?;
    check_schema(
        &fitted_report,
        &["order", "params", "loglik", "criterion"],
        None,
    )?;

    let plot_path = dir.path().join("plot.csv");
    let fc_report = json_stdout(&cli(&[
        "forecast",
        "--auto",
        "--input",
        input,
        "--column",
        "usd_kzt",
        "--horizon",
        "3",
        "--level",
        "0.95",
        "--plot-data",
        plot_path.to_str().unwrap(),
    ]))?;
    check_schema(
        &fc_report,
        &["order", "params", "loglik", "criterion", "forecast"],
        None,
    )?;
    ensure(fc_report["order"] == fitted_report["order"], || {
        "fit and forecast orders differ".into()
    })?;
    ensure(fc_report["params"] == fitted_report["params"], || {
        "fit and forecast params differ".into()
    })?;

    // plot-data fidelity against the library's own computations
    let o = &fc_report["order"];
    let ord = order(
        o["p"].as_u64().unwrap() as usize,
        o["d"].as_u64().unwrap() as usize,
        o["q"].as_u64().unwrap() as usize,
    );
    let model = fit(&dataset.series, ord, &FitOptions::default()).map_err(|e| e.to_string())?;
    let fitted = fitted_values(&model).map_err(|e| e.to_string())?;
    let fc = forecast(&model, 3, 0.95).map_err(|e| e.to_string())?;
    let plot = std::fs::read_to_string(&plot_path).map_err(|e| e.to_string())?;
    let mut rows = plot.lines();
    ensure(
        rows.next() == Some("date,actual,fitted,forecast,lower,upper"),
        || "plot header".into(),
    )?;
    let rows: Vec<Vec<&str>> = rows.map(|r| r.split(',').collect()).collect();
    ensure(rows.len() == n + 3, || {
        format!("{} plot rows, expected {}", rows.len(), n + 3)
    })?;
    let json_points = number_array(&fc_report["forecast"]["points"], 3)?;
    for (i, row) in rows.iter().enumerate() {
        ensure(row.len() == 6, || {
            format!("row {i} has {} cells", row.len())
        })?;
        let cells: Vec<Option<f64>> = row[1..]
            .iter()
            .map(|c| parse_cell(c))
            .collect::<Result<_, _>>()?;
        let expected = if i < n {
            [
                Some(dataset.series.values()[i]),
                Some(fitted.values[i]),
                None,
                None,
                None,
            ]
        } else {
            let t = i - n;
            ensure(fc.points[t] == json_points[t], || {
                "json/plot forecast mismatch".into()
            })?;
            [
                None,
                None,
                Some(fc.points[t]),
                Some(fc.lower[t]),
                Some(fc.upper[t]),
            ]
        };
        ensure(cells == expected, || {
            format!("row {i}: {cells:?} vs {expected:?}")
        })?;
    }
    ensure(rows[n][0] == "2015", || {
        format!("first forecast date {}", rows[n][0])
    })?;

    // evaluate the in-sample part of the plot-data
    let mut eval_csv = String::from("date,actual,fitted\n");
    for row in &rows[..n] {
        eval_csv.push_str(&format!("{},{},{}\n", row[0], row[1], row[2]));
    }
    let eval_path = dir.path().join("eval.csv");
    std::fs::write(&eval_path, eval_csv).map_err(|e| e.to_string())?;
    let eval_report = json_stdout(&cli(&[
        "evaluate",
        "--input",
        eval_path.to_str().unwrap(),
        "--column",
        "actual",
        "--forecast-column",
        "fitted",
    ]))?;
    check_schema(&eval_report, &["metrics"], None)?;
    let want = accuracy(dataset.series.values(), &fitted.values).map_err(|e| e.to_string())?;
    let m = &eval_report["metrics"];
    ensure(
        m["mae"].as_f64() == Some(want.mae)
            && m["mape_percent"].as_f64() == Some(want.mape)
            && m["rmse"].as_f64() == Some(want.rmse)
            && m["k"].as_u64() == Some(n as u64),
        || format!("evaluate metrics {m} vs {want:?}"),
    )?;
    Ok(format!(
        "order ({},{},{}), {} plot rows, bit-exact cells",
        ord.p,
        ord.d,
        ord.q,
        rows.len()
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = fixture();
    let input = input.to_str().unwrap();
    let eval_path = dir.path().join("eval.csv");
    std::fs::write(
        &eval_path,
        "date,a,b\n2001,1.5,1.25\n2002,2.5,2.75\n2003,3,2.5\n",
    )
    .map_err(|e| e.to_string())?;
    let eval = eval_path.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["identify", "--input", input, "--column", "eur_kzt"],
        vec!["fit", "--auto", "--input", input, "--column", "sgd_kzt"],
        vec![
            "fit",
            "--order",
            "1,1,0",
            "--criterion",
            "aic",
            "--input",
            input,
            "--column",
            "usd_kzt",
        ],
        vec![
            "forecast",
            "--auto",
            "--horizon",
            "5",
            "--level",
            "0.8",
            "--input",
            input,
            "--column",
            "usd_kzt",
        ],
        vec![
            "backtest", "--auto", "--input", input, "--column", "eur_kzt",
        ],
        vec![
            "backtest", "--format", "csv", "--input", input, "--column", "usd_kzt",
        ],
        vec![
            "evaluate",
            "--input",
            eval,
            "--column",
            "a",
            "--forecast-column",
            "b",
        ],
        vec!["fit", "--input", eval, "--column", "missing"],
    ];
    for (i, args) in commands.iter().enumerate() {
        let runs: Vec<(Output, Vec<u8>)> = (0..2)
            .map(|r| {
                let plot = dir.path().join(format!("plot-{i}-{r}.csv"));
                let mut full = args.clone();
                let plot_str = plot.to_str().unwrap().to_string();
                if matches!(args[0], "fit" | "forecast" | "backtest") {
                    full.extend(["--plot-data", plot_str.as_str()]);
                }
                let out = cli(&full);
                (out, std::fs::read(&plot).unwrap_or_default())
            })
            .collect();
        let (a, b) = (&runs[0], &runs[1]);
        ensure(
            a.0.stdout == b.0.stdout
                && a.0.stderr == b.0.stderr
                && a.0.status.code() == b.0.status.code()
                && a.1 == b.1,
            || format!("command {args:?} differs between runs"),
        )?;
    }
    Ok(format!(
        "{} command lines byte-identical across runs",
        commands.len()
    ))
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "metric oracle equivalence",
            limit: Some(Duration::from_secs(1)),
            run: metrics_oracle,
        },
        Criterion {
            id: 2,
            name: "likelihood exactness",
            limit: Some(Duration::from_secs(5)),
            run: likelihood_exactness,
        },
        Criterion {
            id: 3,
            name: "PACF oracle",
            limit: Some(Duration::from_secs(5)),
            run: pacf_oracle,
        },
        Criterion {
            id: 4,
            name: "parameter recovery",
            limit: Some(Duration::from_secs(30)),
            run: parameter_recovery,
        },
        Criterion {
            id: 5,
            name: "random-walk forecast identity",
            limit: None,
            run: random_walk_identity,
        },
        Criterion {
            id: 6,
            name: "diagnostic calibration",
            limit: Some(Duration::from_secs(60)),
            run: diagnostic_calibration,
        },
        Criterion {
            id: 7,
            name: "fixture backtest (loose reproduction)",
            limit: Some(Duration::from_secs(10)),
            run: fixture_backtest,
        },
        Criterion {
            id: 8,
            name: "CLI round-trip",
            limit: None,
            run: cli_round_trip,
        },
        Criterion {
            id: 9,
            name: "determinism",
            limit: None,
            run: determinism,
        },
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!(
                "criterion {} PASS {} [{elapsed:.2?}]: {detail}",
                c.id, c.name
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {} FAIL {} [{elapsed:.2?}]: {detail}",
                    c.id, c.name
                );
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
