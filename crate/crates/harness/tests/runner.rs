use jpda_core::{generate_pair, Algorithm, ShiftSpec};
use jpda_harness::config::{parse_kv_text, ExperimentConfig};
use jpda_harness::dataset::load_pair;
use jpda_harness::report::{read_csv, read_json, AccuracyRow, EmbeddingRow, SweepRow, TraceRow};
use jpda_harness::runner;
use jpda_harness::RunReport;

fn config(pairs: &[(&str, &str)]) -> ExperimentConfig {
    let pairs: Vec<(String, String)> = pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    ExperimentConfig::from_pairs(&pairs).unwrap()
}

#[test]
fn zero_shift_run_keeps_raw_accuracy() {
    let c = config(&[
        ("shift", "rotation"),
        ("magnitude", "0"),
        ("p", "2"),
        ("seed", "4"),
    ]);
    let report = runner::run(&c).unwrap();
    let raw = report.raw_nn_accuracy.unwrap();
    assert_eq!(report.results.len(), 4);
    for r in &report.results {
        let acc = r.final_accuracy.unwrap();
        assert!((0.0..=1.0).contains(&acc));
        assert!(acc >= raw - 0.02, "{} {acc} vs raw {raw}", r.algorithm);
    }
}

#[test]
fn replaying_the_echoed_config_reproduces_the_run() {
    let c = config(&[
        ("shift", "mean_offset"),
        ("magnitude", "2"),
        ("p", "3"),
        ("algorithm", "jda,jpda"),
        ("kernel", "rbf:median"),
        ("seed", "9"),
    ]);
    let first = runner::run(&c).unwrap();
    let replay = ExperimentConfig::from_pairs(&parse_kv_text(&first.config).unwrap()).unwrap();
    let second = runner::run(&replay).unwrap();
    assert_eq!(second.config, first.config);
    for (a, b) in first.results.iter().zip(&second.results) {
        assert_eq!(a.final_accuracy, b.final_accuracy);
        assert_eq!(a.predictions, b.predictions);
        assert_eq!(a.fit.records, b.fit.records);
    }
}

#[test]
fn outputs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let c = config(&[
        ("shift", "rotation"),
        ("magnitude", "15"),
        ("p", "2"),
        ("T", "3"),
        ("out", out),
    ]);
    let report = runner::run(&c).unwrap();
    runner::write_run(&report, &c.out).unwrap();
    let back: RunReport = read_json(&c.out.join(runner::REPORT_FILE)).unwrap();
    assert_eq!(back, report);
    let rows: Vec<AccuracyRow> = read_csv(&c.out.join(runner::ACCURACY_FILE)).unwrap();
    assert_eq!(rows, report.accuracy_rows());

    runner::write_trace(&report, &c.out).unwrap();
    let trace: Vec<TraceRow> = read_csv(&c.out.join(runner::TRACE_FILE)).unwrap();
    assert_eq!(trace, report.trace_rows());
    assert_eq!(trace.len(), 1 + 3 * 3);
}

#[test]
fn single_cell_sweep_matches_run() {
    let c = config(&[
        ("shift", "rotation"),
        ("magnitude", "15"),
        ("p", "2"),
        ("algorithm", "jpda"),
        ("seed", "3"),
    ]);
    let run = runner::run(&c).unwrap();
    let sweep = runner::sweep(&c).unwrap();
    assert_eq!(sweep.cells.len(), 1);
    assert_eq!(sweep.rows.len(), 1);
    assert_eq!(Some(sweep.cells[0].accuracy), run.results[0].final_accuracy);
    assert_eq!(sweep.rows[0].std_accuracy, 0.0);
}

#[test]
fn sweep_is_independent_of_thread_count() {
    let base = [
        ("shift", "rotation"),
        ("magnitude", "15"),
        ("p", "2"),
        ("algorithm", "jp,jpda"),
        ("lambda_grid", "0.01,0.1,1,10"),
        ("seeds", "1,2"),
    ];
    let one = runner::sweep(&config(&[&base[..], &[("jobs", "1")]].concat())).unwrap();
    let four = runner::sweep(&config(&[&base[..], &[("jobs", "4")]].concat())).unwrap();
    assert_eq!(one.rows.len(), 8);
    let lambdas: Vec<f64> = one.rows.iter().take(4).map(|r| r.lambda).collect();
    assert_eq!(lambdas, vec![0.01, 0.1, 1.0, 10.0]);
    for (a, b) in one.cells.iter().zip(&four.cells) {
        assert_eq!(
            (a.algorithm, a.lambda, a.seed, a.accuracy),
            (b.algorithm, b.lambda, b.seed, b.accuracy)
        );
    }

    let dir = tempfile::tempdir().unwrap();
    runner::write_sweep(&one, dir.path()).unwrap();
    let rows: Vec<SweepRow> = read_csv(&dir.path().join(runner::SWEEP_FILE)).unwrap();
    assert_eq!(rows, one.rows);
}

#[test]
fn trace_shapes() {
    let c = config(&[
        ("shift", "rotation"),
        ("magnitude", "0"),
        ("p", "2"),
        ("algorithm", "jpda"),
        ("T", "1"),
    ]);
    assert_eq!(runner::run(&c).unwrap().trace_rows().len(), 1);

    let c = config(&[
        ("shift", "rotation"),
        ("magnitude", "0"),
        ("p", "2"),
        ("algorithm", "jpda"),
        ("T", "5"),
    ]);
    let rows = runner::run(&c).unwrap().trace_rows();
    assert_eq!(
        rows.iter().map(|r| r.iteration).collect::<Vec<_>>(),
        vec![1, 2, 3, 4, 5]
    );
    for r in &rows {
        assert!(r.mmd < 1e-3, "{}", r.mmd);
    }
}

#[test]
fn tca_is_fastest_when_others_iterate() {
    let c = config(&[
        ("shift", "rotation"),
        ("magnitude", "15"),
        ("p", "2"),
        ("n_per_class", "150"),
    ]);
    let report = runner::run(&c).unwrap();
    let tca = report.result(Algorithm::Tca).unwrap().seconds;
    for r in &report.results {
        if r.algorithm != Algorithm::Tca {
            assert!(
                tca < r.seconds,
                "TCA {tca}s vs {} {}s",
                r.algorithm,
                r.seconds
            );
        }
    }
}

#[test]
fn embedding_has_one_row_per_sample() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(&[("shift", "rotation"), ("magnitude", "15"), ("p", "3")]);
    let (rows, report) = runner::embed2d(&c).unwrap();
    assert_eq!(rows.len(), 402);
    assert_eq!(report.results[0].algorithm, Algorithm::Jpda);
    assert_eq!(rows.iter().filter(|r| r.domain == "source").count(), 201);
    assert!(rows.iter().all(|r| (1..=3).contains(&r.class)));
    runner::write_embedding(&rows, &report, dir.path()).unwrap();
    let back: Vec<EmbeddingRow> = read_csv(&dir.path().join(runner::EMBEDDING_FILE)).unwrap();
    assert_eq!(back, rows);

    let c = config(&[("shift", "rotation"), ("magnitude", "15"), ("p", "1")]);
    assert!(runner::embed2d(&c).is_err());
}

#[test]
fn datagen_files_load_back_identically() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let c = config(&[
        ("shift", "class_swap_noise"),
        ("magnitude", "0.2"),
        ("seed", "5"),
        ("out", out),
    ]);
    let (s, t) = runner::datagen(&c).unwrap();
    let loaded = load_pair(&s, &t).unwrap();
    let spec = ShiftSpec {
        kind: jpda_core::ShiftKind::ClassSwapNoise,
        magnitude: 0.2,
        ..ShiftSpec::rotation(0.0, 5)
    };
    let g = generate_pair(&spec).unwrap();
    assert_eq!(loaded.pair, g.pair);
    assert_eq!(loaded.target_truth, Some(g.target_labels));

    let first = std::fs::read(&s).unwrap();
    runner::datagen(&c).unwrap();
    assert_eq!(std::fs::read(&s).unwrap(), first);
}
