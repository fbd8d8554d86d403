use std::path::Path;

use outlier_extremes::baselines::Baseline;
use outlier_extremes::cli::scenario_file::{parse_scenario, scenario_to_toml};
use outlier_extremes::cli::*;
use outlier_extremes::copula::Generator;
use outlier_extremes::error::Error;
use outlier_extremes::extremes::Extreme;
use outlier_extremes::theorems::builtin::BUILTIN_IDS;
use outlier_extremes::theorems::{builtin_scenario, scenario};
use proptest::prelude::*;

fn cli(args: &[&str]) -> i32 {
    run(std::iter::once("outlier-extremes").chain(args.iter().copied()))
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn compare_exit_codes_follow_the_verdicts() {
    for (id, relation, code) in [
        ("ex_3_1", "st", EXIT_OK),
        ("ce_3_1", "st", EXIT_FAILS),
        ("ex_3_2", "rh", EXIT_OK),
        ("ex_3_4", "st", EXIT_OK),
        ("ce_3_2", "st", EXIT_FAILS),
        ("ex_3_5", "hr", EXIT_OK),
    ] {
        assert_eq!(cli(&["compare", id, relation]), code, "{id} {relation}");
    }
}

#[test]
fn swapping_a_strict_comparison_makes_it_fail() {
    assert_eq!(cli(&["compare", "ex_3_1", "st", "--swap"]), EXIT_FAILS);
}

#[test]
fn infinite_mean_leaves_lorenz_inconclusive() {
    assert_eq!(cli(&["compare", "ce_3_1", "lorenz"]), EXIT_INCONCLUSIVE);
}

#[test]
fn bad_input_exits_with_parse_code() {
    assert_eq!(cli(&["compare", "no_such_scenario", "st"]), EXIT_PARSE);
    assert_eq!(cli(&["compare", "ex_3_1", "bogus"]), EXIT_PARSE);
    assert_eq!(cli(&["theorem", "NOPE", "ex_3_1"]), EXIT_PARSE);
    assert_eq!(cli(&["reproduce", "ex_0_0"]), EXIT_PARSE);
    assert_eq!(cli(&["frobnicate"]), EXIT_PARSE);
    assert_eq!(cli(&["compare", "ex_3_1", "st", "--grid-lo", "5", "--grid-hi", "1"]), EXIT_PARSE);
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(cli(&["--help"]), EXIT_OK);
    assert_eq!(cli(&["--version"]), EXIT_OK);
}

#[test]
fn theorem_reports_exit_cleanly() {
    for id in BUILTIN_IDS {
        let b = builtin_scenario(id).unwrap();
        assert_eq!(cli(&["theorem", b.theorem, id]), EXIT_OK, "{id}");
    }
    assert_eq!(cli(&["theorem", "MAX_ST_SAME_N", "ex_3_1"]), EXIT_OK);
}

#[test]
fn audit_subcommand_passes() {
    assert_eq!(cli(&["audit", "--count", "10", "--seed", "5"]), EXIT_OK);
}

#[test]
fn eval_writes_csv_on_the_requested_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cdf.csv");
    let out_s = out.to_str().unwrap();
    let code = cli(&[
        "eval", "ex_3_1", "cdf", "--side", "y", "--grid-lo", "0.5", "--grid-hi", "4", "--grid-n", "8",
        "--spacing", "linear", "--out", out_s,
    ]);
    assert_eq!(code, EXIT_OK);
    let (header, rows) = read_csv(&out);
    assert_eq!(header, ["x", "value"]);
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0][0], 0.5);
    assert_eq!(rows[7][0], 4.0);
    assert!((rows[1][0] - 1.0).abs() < 1e-15);
    let y = builtin_scenario("ex_3_1").unwrap().scenario.model_y.distribution();
    for r in &rows {
        use outlier_extremes::distribution::LifetimeDistribution;
        assert_eq!(r[1], y.cdf(r[0]));
    }
    assert!(rows.windows(2).all(|w| w[0][1] <= w[1][1]));
}

#[test]
fn eval_density_integrates_to_one() {
    let dir = tempfile::tempdir().unwrap();
    for id in BUILTIN_IDS {
        let out = dir.path().join(format!("{id}.csv"));
        assert_eq!(cli(&["eval", id, "pdf", "--out", out.to_str().unwrap()]), EXIT_OK);
        let (_, rows) = read_csv(&out);
        let mass: f64 = rows
            .windows(2)
            .map(|w| 0.5 * (w[1][0] - w[0][0]) * (w[0][1] + w[1][1]))
            .sum();
        assert!((mass - 1.0).abs() <= 1e-3, "{id}: {mass}");
    }
}

#[test]
fn csv_text_has_full_precision() {
    let text = csv_text(&["a", "b"], &[1.0, 2.0], &[&[0.1, 0.2], &[1.0 / 3.0, f64::NAN]]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,a,b");
    let cells: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(cells[0], "1.0000000000000000e0");
    assert_eq!(cells[2].parse::<f64>().unwrap(), 1.0 / 3.0);
    assert!(lines[2].ends_with("NaN"));
}

#[test]
fn reproduce_writes_every_figure_and_observes_its_behaviour() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(cli(&["reproduce", "all", "--out", out]), EXIT_OK);
    for (name, columns) in [
        ("fig1a", 3),
        ("fig1b", 2),
        ("fig2a", 2),
        ("fig2b", 2),
        ("fig3a", 2),
        ("fig3b", 3),
    ] {
        let (header, rows) = read_csv(&dir.path().join(format!("{name}.csv")));
        assert_eq!(header.len(), columns, "{name}");
        assert_eq!(rows.len(), 2000, "{name}");
    }
}

#[test]
fn scaffold_round_trips_every_builtin() {
    let dir = tempfile::tempdir().unwrap();
    for id in BUILTIN_IDS {
        let path = dir.path().join(format!("{id}.toml"));
        let p = path.to_str().unwrap();
        assert_eq!(cli(&["scaffold", id, "--out", p]), EXIT_OK);
        let parsed = load(p).unwrap();
        assert_eq!(parsed.scenario.model_x, builtin_scenario(id).unwrap().scenario.model_x);
        assert_eq!(parsed.scenario.model_y, builtin_scenario(id).unwrap().scenario.model_y);
        let rel = builtin_scenario(id).unwrap().relation.to_string();
        assert_eq!(cli(&["compare", p, &rel]), cli(&["compare", id, &rel]));
    }
}

#[test]
fn grid_section_of_a_file_is_used() {
    let b = builtin_scenario("ex_3_1").unwrap();
    let text = format!(
        "{}\n[grid]\nlo = 1.0\nhi = 2.0\ncount = 5\nspacing = \"linear\"\n",
        scenario_to_toml(&b.scenario, None).unwrap()
    );
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.toml");
    std::fs::write(&path, text).unwrap();
    let out = dir.path().join("o.csv");
    assert_eq!(
        cli(&["eval", path.to_str().unwrap(), "sf", "--out", out.to_str().unwrap()]),
        EXIT_OK
    );
    let (_, rows) = read_csv(&out);
    let xs: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(xs, [1.0, 1.25, 1.5, 1.75, 2.0]);
}

#[test]
fn parse_errors_name_the_line_and_field() {
    let b = builtin_scenario("ex_3_4").unwrap();
    let good = scenario_to_toml(&b.scenario, None).unwrap();
    let theta_line = good.lines().position(|l| l.starts_with("theta")).unwrap() + 1;
    let bad = good.replacen("theta = ", "theta = -", 1);
    match parse_scenario(&bad).unwrap_err() {
        Error::Parse { line, field, .. } => {
            assert_eq!(line, Some(theta_line));
            assert!(field.contains("theta"), "{field}");
        }
        e => panic!("unexpected {e}"),
    }
    let unknown = format!("{good}\ncolour = \"red\"\n");
    match parse_scenario(&unknown).unwrap_err() {
        Error::Parse { field, .. } => assert!(field.contains("colour"), "{field}"),
        e => panic!("unexpected {e}"),
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, bad).unwrap();
    assert_eq!(cli(&["compare", path.to_str().unwrap(), "st"]), EXIT_PARSE);
}

#[test]
fn comparison_pair_direction_depends_on_the_extreme() {
    let max = builtin_scenario("ex_3_1").unwrap().scenario;
    let (a, b) = comparison_pair(&max, false);
    assert_eq!(a.model(), &max.model_y);
    assert_eq!(b.model(), &max.model_x);
    let min = builtin_scenario("ex_3_4").unwrap().scenario;
    let (a, _) = comparison_pair(&min, false);
    assert_eq!(a.model(), &min.model_x);
    let (a, _) = comparison_pair(&min, true);
    assert_eq!(a.model(), &min.model_y);
}

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        Just(Generator::independence()),
        (1.0f64..12.0).prop_map(|t| Generator::gumbel_exp(t).unwrap()),
        (0.05f64..1.0).prop_map(|t| Generator::log_exp(t).unwrap()),
    ]
}

fn baseline() -> impl Strategy<Value = Baseline> {
    prop_oneof![
        Just(Baseline::exponential()),
        Just(Baseline::kummer()),
        Just(Baseline::lomax_half()),
        (0.5f64..500.0, 0.2f64..5.0).prop_map(|(a, l)| Baseline::power(a, l).unwrap()),
        (0.5f64..8.0, 0.1f64..3.0).prop_map(|(a, b)| Baseline::pareto(a, b).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scenario_files_round_trip(
        e in prop_oneof![Just(Extreme::Max), Just(Extreme::Min)],
        gx in generator(), gy in generator(), f1 in baseline(), f2 in baseline(),
        l in [0.01f64..100.0, 0.01f64..100.0], m in [0.01f64..100.0, 0.01f64..100.0],
        n in [1usize..40, 1usize..40], ns in [1usize..40, 1usize..40],
    ) {
        let s = scenario(e, gx, gy, f1, f2, l, m, n, ns).unwrap();
        let parsed = parse_scenario(&scenario_to_toml(&s, None).unwrap()).unwrap();
        prop_assert_eq!(parsed.scenario.model_x, s.model_x);
        prop_assert_eq!(parsed.scenario.model_y, s.model_y);
        prop_assert!(parsed.grid.is_none());
    }
}
