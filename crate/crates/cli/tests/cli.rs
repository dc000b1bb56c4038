use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cpsphere"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Csv {
    meta: Vec<String>,
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Csv {
    fn read(path: &Path) -> Csv {
        let text = std::fs::read_to_string(path).unwrap();
        let mut meta = Vec::new();
        let mut lines = text.lines().peekable();
        while let Some(l) = lines.peek() {
            if let Some(m) = l.strip_prefix('#') {
                meta.push(m.trim().to_string());
                lines.next();
            } else {
                break;
            }
        }
        let header = lines.next().unwrap().split(',').map(String::from).collect();
        let rows = lines
            .map(|l| l.split(',').map(|x| x.parse::<f64>().unwrap()).collect())
            .collect();
        Csv { meta, header, rows }
    }

    fn col(&self, name: &str) -> Vec<f64> {
        let i = self.header.iter().position(|h| h == name).unwrap();
        self.rows.iter().map(|r| r[i]).collect()
    }
}

const FIG_HOST: &str = r#"
[host.eps]
model = "lorentz"
oscillators = [{ omega_t = 1.03, omega_p = 0.1, gamma = 0.001 }]
[host.mu]
model = "vacuum"
"#;

const FIG_SPHERE_EPS: &str = r#"{ model = "lorentz", oscillators = [{ omega_t = 1.0, omega_p = 6.0, gamma = 0.001 }] }"#;

fn q_sweep_config(r: f64, from: f64) -> String {
    format!(
        r#"separation = {r}
{FIG_HOST}
[target]
kind = "sphere"
cavity_radius = 0.02
q = 0.5
eps = {FIG_SPHERE_EPS}
mu = {{ model = "vacuum" }}

[sweep]
parameter = "q"
from = {from}
to = 1.0
steps = 50
spacing = "log"
"#
    )
}

#[test]
fn print_config_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["print-config"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    for key in ["rel_tol", "max_subdivisions", "[sweep]", "magnetic_route", "omega_ref"] {
        assert!(text.contains(key), "missing {key}");
    }
    let p = write(dir.path(), "c.toml", &text);
    let again = run(&["print-config", "--config", p.to_str().unwrap()]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
}

#[test]
fn index_matched_sphere_gives_zero() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "c.toml",
        r#"
[host]
eps = { model = "constant", value = 2.5 }
mu = { model = "vacuum" }
[target]
kind = "sphere"
radius = 0.01
eps = { model = "constant", value = 2.5 }
mu = { model = "vacuum" }
"#,
    );
    let csv = dir.path().join("u.csv");
    let out = run(&["potential", "--config", p.to_str().unwrap(), "--output", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(Csv::read(&csv).col("U_total"), vec![0.0]);
}

#[test]
fn negative_radius_is_config_error_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "c.toml",
        r#"
[target]
kind = "sphere"
radius = -0.01
eps = { model = "constant", value = 2.0 }
mu = { model = "vacuum" }
"#,
    );
    let out = run(&["potential", "--config", p.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("target.radius"), "{}", stderr(&out));
}

#[test]
fn unknown_key_is_rejected_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "c.toml", "[quadrature]\nrel_toll = 1e-8\n");
    let out = run(&["potential", "--config", p.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("quadrature") && err.contains("rel_toll"), "{err}");
}

#[test]
fn separation_inside_exclusion_is_validity_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "c.toml", "separation = 0.03\n");
    let out = run(&["potential", "--config", p.to_str().unwrap()]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
}

#[test]
fn unreachable_tolerance_is_quadrature_failure() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "c.toml",
        "[quadrature]\nrel_tol = 1e-16\nabs_tol = 0.0\nmax_subdivisions = 1\n",
    );
    let out = run(&["potential", "--config", p.to_str().unwrap()]);
    assert_eq!(code(&out), 4, "{}", stderr(&out));
}

#[test]
fn figure_point_is_attractive_and_well_resolved() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = q_sweep_config(1.0, 0.2).replace("q = 0.5", "q = 1.0");
    let p = write(dir.path(), "c.toml", &cfg);
    let csv = dir.path().join("u.csv");
    let out = run(&["potential", "--config", p.to_str().unwrap(), "--output", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let t = Csv::read(&csv);
    let u = t.col("U_total")[0];
    assert!(u < 0.0);
    assert!(t.col("quad_error_max")[0] < 1e-10 * u.abs());
    assert_eq!(t.col("q"), vec![1.0]);
}

#[test]
fn q_sweeps_are_ordered() {
    let dir = tempfile::tempdir().unwrap();
    let mut curves = Vec::new();
    for r in [1.0, 3.0, 10.0] {
        let p = write(dir.path(), &format!("c{r}.toml"), &q_sweep_config(r, 0.2));
        let csv = dir.path().join(format!("q{r}.csv"));
        let out = run(&["sweep", "--config", p.to_str().unwrap(), "--output", csv.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let t = Csv::read(&csv);
        assert_eq!(
            t.header,
            ["r_AS", "q", "R_C", "U_ee", "U_em", "U_me", "U_mm", "U_total", "quad_error_max"]
        );
        assert_eq!(t.rows.len(), 50);
        let q = t.col("q");
        assert!(q.windows(2).all(|w| w[1] > w[0]));
        let u = t.col("U_total");
        assert!(u.iter().all(|x| *x < 0.0));
        assert!(u.windows(2).all(|w| w[1].abs() >= w[0].abs()));
        curves.push(u);
    }
    // Larger separation, weaker potential at every q.
    for i in 0..50 {
        assert!(curves[0][i].abs() > curves[1][i].abs());
        assert!(curves[1][i].abs() > curves[2][i].abs());
    }
}

#[test]
fn small_q_sphere_is_dominated_by_the_cavity() {
    // A small sphere in a vacuum cavity leaves a net bubble in the host,
    // whose negative excess polarisability makes the potential repulsive.
    let dir = tempfile::tempdir().unwrap();
    let cfg = q_sweep_config(1.0, 0.05).replace("q = 0.5", "q = 0.05");
    let p = write(dir.path(), "c.toml", &cfg);
    let csv = dir.path().join("u.csv");
    let out = run(&["potential", "--config", p.to_str().unwrap(), "--output", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(Csv::read(&csv).col("U_total")[0] > 0.0);
}

#[test]
fn separation_sweep_crosses_from_minus_six_to_minus_seven() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "c.toml",
        &format!(
            r#"
[target]
kind = "sphere"
radius = 1e-6
eps = {FIG_SPHERE_EPS}
mu = {{ model = "vacuum" }}
[sweep]
parameter = "r_AS"
from = 1e-3
to = 1e2
steps = 31
spacing = "log"
"#
        ),
    );
    let csv = dir.path().join("r.csv");
    let out = run(&["sweep", "--config", p.to_str().unwrap(), "--output", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let t = Csv::read(&csv);
    let (r, u) = (t.col("r_AS"), t.col("U_total"));
    let slope = |i: usize, j: usize| (u[j].abs() / u[i].abs()).ln() / (r[j] / r[i]).ln();
    assert!((slope(0, 3) + 6.0).abs() < 0.05, "{}", slope(0, 3));
    assert!((slope(27, 30) + 7.0).abs() < 0.05, "{}", slope(27, 30));
    let mid = slope(12, 18);
    assert!(mid < -6.0 && mid > -7.0);
}

#[test]
fn zero_step_sweep_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "c.toml",
        "[sweep]\nparameter = \"r_AS\"\nfrom = 1.0\nto = 10.0\nsteps = 0\n",
    );
    let csv = dir.path().join("r.csv");
    let out = run(&["sweep", "--config", p.to_str().unwrap(), "--output", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("sweep.steps"));
    assert!(!csv.exists());
}

#[test]
fn failed_sweep_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    // The first points fall inside the exclusion radius.
    let p = write(
        dir.path(),
        "c.toml",
        "[sweep]\nparameter = \"r_AS\"\nfrom = 0.01\nto = 10.0\nsteps = 20\nspacing = \"log\"\n",
    );
    let csv = dir.path().join("r.csv");
    let out = run(&["sweep", "--config", p.to_str().unwrap(), "--output", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(!csv.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn sweeps_are_byte_identical_across_runs_and_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "c.toml", &q_sweep_config(3.0, 0.2));
    let mut outputs = Vec::new();
    for (i, jobs) in ["1", "4", "4"].iter().enumerate() {
        let csv = dir.path().join(format!("s{i}.csv"));
        let out = run(&[
            "sweep",
            "--config",
            p.to_str().unwrap(),
            "--jobs",
            jobs,
            "--output",
            csv.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        outputs.push(std::fs::read(&csv).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[1], outputs[2]);
    let meta = Csv::read(&dir.path().join("s0.csv")).meta;
    assert!(meta.iter().any(|m| m.starts_with("generator = cpsphere")));
    assert!(meta.iter().any(|m| m.starts_with("config_sha256 = ")));
    assert!(meta.iter().any(|m| m == "units = reduced"));
}

fn polarizability_csv(dir: &Path, name: &str, config: &str, extra: &[&str]) -> Csv {
    let p = write(dir, &format!("{name}.toml"), config);
    let csv = dir.join(format!("{name}.csv"));
    let mut args = vec!["polarizability", "--config", p.to_str().unwrap(), "--output", csv.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run(&args);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    Csv::read(&csv)
}

#[test]
fn polarizability_in_vacuum_equals_free_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = format!(
        "[host]\neps = {{ model = \"vacuum\" }}\nmu = {{ model = \"vacuum\" }}\n[target]\nkind = \"sphere\"\nradius = 0.01\neps = {FIG_SPHERE_EPS}\nmu = {{ model = \"vacuum\" }}\n"
    );
    let t = polarizability_csv(dir.path(), "p", &cfg, &[]);
    assert_eq!(
        t.header,
        ["xi", "alpha_star", "beta_star", "alpha_free", "alpha_cavity"]
    );
    assert_eq!(t.col("alpha_star"), t.col("alpha_free"));
    assert!(t.col("alpha_cavity").iter().all(|x| x.is_nan()));
    // Static value: (37 - 1)/(37 + 2) R^3.
    let a0 = t.col("alpha_free")[0] / 1e-6;
    assert!((a0 - 36.0 / 39.0).abs() < 1e-14, "{a0}");
}

#[test]
fn polarizability_q_one_equals_full_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let sphere = |cavity: &str| {
        format!(
            "{FIG_HOST}\n[target]\nkind = \"sphere\"\nradius = 0.02\n{cavity}eps = {FIG_SPHERE_EPS}\nmu = {{ model = \"constant\", value = 3.0 }}\n"
        )
    };
    let args = ["--xi-from", "0.01", "--xi-to", "100", "--xi-steps", "25", "--xi-spacing", "log"];
    let a = polarizability_csv(dir.path(), "a", &sphere("cavity_radius = 0.02\n"), &args);
    let b = polarizability_csv(dir.path(), "b", &sphere(""), &args);
    for col in ["alpha_star", "beta_star"] {
        for (x, y) in a.col(col).iter().zip(b.col(col)) {
            assert!((x - y).abs() <= 1e-14 * y.abs(), "{col}: {x} vs {y}");
        }
    }
}

#[test]
fn si_output_is_scaled_reduced_output() {
    let dir = tempfile::tempdir().unwrap();
    let omega_ref: f64 = 2.0e15;
    let c: f64 = 299_792_458.0;
    let hbar = 1.054_571_817e-34;
    let reduced = write(dir.path(), "r.toml", "separation = 1.0\n");
    let si = write(
        dir.path(),
        "s.toml",
        &format!(
            r#"units = "SI"
omega_ref = {omega_ref:e}
separation = {sep:e}
[atom]
electric = [{{ omega = {omega_ref:e}, static_response = {alpha:e} }}]
[host.eps]
model = "lorentz"
oscillators = [{{ omega_t = {wt:e}, omega_p = {wp:e}, gamma = {g:e} }}]
[host.mu]
model = "vacuum"
[target]
kind = "sphere"
radius = {r:e}
cavity_radius = {rc:e}
eps = {{ model = "lorentz", oscillators = [{{ omega_t = {omega_ref:e}, omega_p = {ws:e}, gamma = {g:e} }}] }}
mu = {{ model = "vacuum" }}
"#,
            sep = c / omega_ref,
            alpha = 4.0 * std::f64::consts::PI * 8.854_187_812_8e-12 * (c / omega_ref).powi(3),
            wt = 1.03 * omega_ref,
            wp = 0.1 * omega_ref,
            g = 1e-3 * omega_ref,
            ws = 6.0 * omega_ref,
            r = 0.01 * c / omega_ref,
            rc = 0.02 * c / omega_ref,
        ),
    );
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    assert_eq!(code(&run(&["potential", "--config", reduced.to_str().unwrap(), "--output", a.to_str().unwrap()])), 0);
    let out = run(&["potential", "--config", si.to_str().unwrap(), "--output", b.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (ua, ub) = (Csv::read(&a).col("U_total")[0], Csv::read(&b).col("U_total")[0]);
    assert!((ub / (ua * hbar * omega_ref) - 1.0).abs() < 1e-9, "{ua} {ub}");
    assert!(Csv::read(&b).meta.iter().any(|m| m == "units = SI"));
}

#[test]
fn verify_default_passes() {
    let out = run(&["verify"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    let summary = text.lines().last().unwrap();
    assert!(summary.starts_with('{') && summary.contains("\"passed\":true"));
}

#[test]
fn verify_with_impossible_tolerance_fails() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("v.json");
    let out = run(&["verify", "--tolerance", "1e-30", "--output", json.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let text = std::fs::read_to_string(&json).unwrap();
    assert!(text.contains("\"passed\":false"));
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL"));
}

#[test]
fn verify_only_filters() {
    let out = run(&["verify", "--only", "duality"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<_> = text.lines().filter(|l| l.ends_with("PASS")).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|l| l.starts_with("duality")));
    assert_eq!(code(&run(&["verify", "--only", "nonsense"])), 2);
}
