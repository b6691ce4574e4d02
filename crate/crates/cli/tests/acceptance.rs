//! Acceptance suite: one test per criterion. Each test prints a PASS
//! line with the measured values (run with `-- --nocapture` to see
//! them); a failed assertion marks the criterion red.

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use entnet::critical::{self, CriticalConstants};
use entnet::graph::{self, ErGraphSample, GeometryFilter, Regime, SeedRecord, UNREACHABLE};
use entnet::mc::{self, Estimator, McConfig};
use entnet::numeric;
use entnet::protocol::{self, Segment, SegmentPlan};
use entnet::spp;
use entnet::werner::{purify_bbpssw, NoiseModel, WernerState};

const SEED: u64 = 20260810;

#[test]
fn criterion_01_spp_extremals() {
    let start = Instant::now();
    let e = spp::extremals();

    // closed forms restated independently of the library constants
    let y_lo_cf = (5f64.sqrt() - 1.0) / 4.0;
    let a_lo_cf = 1.0 + 2f64.ln() / y_lo_cf.ln();
    let a_gain_cf = (1.5f64).ln() / 3f64.ln();
    let b_max_cf = (7.0f64 / 6.0).ln() / 3f64.ln();
    assert!((e.y_lo_min - y_lo_cf).abs() < 1e-15);
    assert!((e.a_at_y_lo_min - a_lo_cf).abs() < 1e-14);
    assert!((e.a_at_max_gain - a_gain_cf).abs() < 1e-14);
    assert!((e.b_max - b_max_cf).abs() < 1e-14);

    // numeric maximum of the gain over (y, a) at b = 0
    let inner_max =
        |y: f64| numeric::golden_max(|a| spp::delta_c_spp(y, a, 0.0), 0.01, 0.99, 1e-12);
    let (y_star, gain) = numeric::golden_max(|y| inner_max(y).1, 0.31, 0.49, 1e-12);
    let a_star = inner_max(y_star).0;
    assert!((gain - 1.0 / 36.0).abs() < 1e-10, "max gain {gain}");
    assert!((y_star - 1.0 / 3.0).abs() < 1e-5);
    assert!((a_star - a_gain_cf).abs() < 1e-5);

    // numeric lowest lower bound: root in y at the closed-form a, plus
    // a golden-section scan showing it is the minimum over a. The
    // clamped gain is identically zero below the window, so the root is
    // taken on the unclamped low-branch expression.
    let low_branch = |y: f64, a: f64| {
        let d = y.powf(a) - 2.0 * y;
        4.0 * y * y + y - d * d - (1.0 - y)
    };
    let root_at = |a: f64| numeric::bisect(|y| low_branch(y, a), 0.26, 1.0 / 3.0, 1e-13).unwrap();
    let y_lo_num = root_at(a_lo_cf);
    assert!((y_lo_num - y_lo_cf).abs() < 1e-10, "y_lo {y_lo_num}");
    let (a_min_num, neg_y) = numeric::golden_max(|a| -root_at(a), 0.25, 0.55, 1e-12);
    assert!((-neg_y - y_lo_cf).abs() < 1e-10);
    assert!((a_min_num - a_lo_cf).abs() < 1e-4, "flat minimum location");

    // numeric highest upper bound via the deflated root equation
    // (the gain itself flattens as a -> 0)
    let y_hi_num =
        numeric::bisect(|y: f64| y.powf(1e-12) - (4.0 * y - 1.0), 0.4, 0.6, 1e-14).unwrap();
    assert!((y_hi_num - 0.5).abs() < 1e-10, "y_hi {y_hi_num}");

    // numeric largest usable excess fraction
    let inner_b = |y: f64| {
        numeric::golden_max(
            |a| spp::spp_boundary_b(y, a).unwrap_or(0.0),
            0.01,
            0.99,
            1e-12,
        )
        .1
    };
    let (_, b_max_num) = numeric::golden_max(inner_b, 0.31, 0.49, 1e-12);
    assert!((b_max_num - b_max_cf).abs() < 1e-10, "b_max {b_max_num}");

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 1.0, "took {elapsed} s");
    println!(
        "criterion 01 PASS: extremals 1/36 @ (1/3, {a_gain_cf:.6}), y_lo {y_lo_cf:.9}, \
         y_hi 0.5, b_max {b_max_cf:.9} all confirmed numerically to 1e-10 in {elapsed:.2} s"
    );
}

#[test]
fn criterion_02_pipeline_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut max_diff = 0f64;
    for _ in 0..10_000 {
        let y: f64 = rng.gen_range(0.001..0.999);
        let a: f64 = rng.gen_range(0.001..0.999);
        let b: f64 = a * rng.gen_range(0.0..1.0);
        let plan = SegmentPlan::new(y, vec![Segment::new(a, b)]).unwrap();
        let diff = (protocol::delta_concurrence(&plan) - spp::delta_c_spp(y, a, b)).abs();
        max_diff = max_diff.max(diff);
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(max_diff < 1e-12, "max diff {max_diff}");
    assert!(elapsed < 1.0, "took {elapsed} s");
    println!(
        "criterion 02 PASS: closed form vs pipeline on 10^4 random (y,a,b), \
         max |diff| = {max_diff:.3e} in {elapsed:.2} s"
    );
}

#[test]
fn criterion_03_multiple_purifications() {
    let (y1, _) = spp::multipur_bounds(1, 1.0).unwrap();
    assert!((y1 - 1.0 / 3.0).abs() < 1e-12, "y_lo(1,1) = {y1}");

    let (y_inf, y_hi_inf) = spp::multipur_bounds_inf(1.0).unwrap();
    assert!((y_inf - (1.0f64 / 3.0).powf(1.5)).abs() < 1e-10);

    let mut prev = f64::INFINITY;
    let mut lows = Vec::new();
    for n in [1u32, 3, 10, 30] {
        let (lo, _) = spp::multipur_bounds(n, 1.0).unwrap();
        assert!(lo < prev, "y_lo must decrease with n, n={n}");
        assert!(lo > y_inf, "finite n stays above the limit");
        lows.push(lo);
        prev = lo;
    }

    // y_hi(inf, alpha) residuals of the limit equation
    for alpha in [0.25, 0.5, 0.75, 1.0] {
        let (_, y_hi) = spp::multipur_bounds_inf(alpha).unwrap();
        let residual =
            3.0 * y_hi.powf(2.0 * alpha / 3.0 + 1.0) - y_hi.powf(alpha) - 3.0 * y_hi + 1.0;
        assert!(residual.abs() < 1e-10, "alpha={alpha}: residual {residual}");
    }
    println!(
        "criterion 03 PASS: y_lo(1,1)=1/3, y_lo(inf,1)={y_inf:.9}, monotone {lows:?}, \
         y_hi(inf,1)={y_hi_inf:.6} with residuals < 1e-10"
    );
}

#[test]
fn criterion_04_purification_facts() {
    let delta_p = |x: f64| {
        let s = WernerState::new(x).unwrap();
        let (out, _) = purify_bbpssw(s, s);
        out.x() - x
    };
    // gain region is exactly (1/3, 1)
    for i in 1..=50 {
        let x = 1.0 / 3.0 + (1.0 - 1.0 / 3.0) * i as f64 / 51.0;
        assert!(delta_p(x) > 0.0, "no gain at {x}");
    }
    for x in [0.05, 0.2, 0.33, 1.0 / 3.0] {
        assert!(delta_p(x) <= 1e-15, "gain below threshold at {x}");
    }
    assert_eq!(delta_p(1.0), 0.0);
    let lower_root = numeric::bisect(delta_p, 0.25, 0.4, 1e-13).unwrap();
    assert!((lower_root - 1.0 / 3.0).abs() < 1e-10);

    let (z_star, gain) = spp::delta_p_max();
    let residual = 3.0 * z_star.powi(4) + 8.0 * z_star * z_star - 8.0 * z_star + 1.0;
    assert!(residual.abs() < 1e-10, "polynomial residual {residual}");
    assert!((z_star - 0.69).abs() < 0.01, "z* = {z_star}");
    assert!((gain - 0.05).abs() < 0.005, "gain = {gain}");
    // golden-section oracle agrees with the polynomial root
    let (z_golden, _) = numeric::golden_max(delta_p, 0.4, 0.95, 1e-12);
    assert!((z_golden - z_star).abs() < 1e-5);
    println!(
        "criterion 04 PASS: gain region (1/3, 1); max gain {gain:.6} at z = {z_star:.6}, \
         polynomial residual {residual:.2e}"
    );
}

#[test]
fn criterion_05_noisy_reduction_and_maximum() {
    let perfect = NoiseModel::perfect();
    // perfect-noise surfaces equal the ideal ones
    let mut max_diff = 0f64;
    for iy in 1..40 {
        let y = iy as f64 / 40.0;
        for ia in 1..20 {
            let a = ia as f64 / 20.0;
            let noisy = spp::noisy_delta_c_spp(y, a, &perfect).unwrap();
            max_diff = max_diff.max((noisy - spp::delta_c_spp(y, a, 0.0)).abs());
        }
    }
    assert!(
        max_diff < 1e-12,
        "perfect-noise reduction off by {max_diff}"
    );

    let ideal_max = spp::noisy_delta_c_max(&perfect);
    assert!((ideal_max - 1.0 / 36.0).abs() < 1e-12);

    // independence of the one-qubit reliability
    let reference = spp::noisy_delta_c_max(&NoiseModel::new(1.0, 0.99, 0.99).unwrap());
    let mut max_dev = 0f64;
    for i in 1..=20 {
        let p1 = i as f64 / 20.0;
        let v = spp::noisy_delta_c_max(&NoiseModel::new(p1, 0.99, 0.99).unwrap());
        max_dev = max_dev.max((v - reference).abs());
    }
    assert!(max_dev < 1e-14, "p1 dependence {max_dev}");
    println!(
        "criterion 05 PASS: perfect reduction max |diff| {max_diff:.2e}; \
         dC_max(perfect) = 1/36; p1 deviation {max_dev:.2e}"
    );
}

#[test]
fn criterion_06_er_analytics_vs_mc() {
    let start = Instant::now();
    let n = 200usize;
    let trials = 10_000u64;
    let mut report = Vec::new();

    // sigma_2 against the exact closed form
    for &p in &[0.01, 0.02, 0.05, 0.1, 0.2] {
        let est = mc::run(&McConfig {
            n_trials: trials,
            seed: SEED,
            n_nodes: n,
            p,
            estimator: Estimator::Sigma { path_len: 2 },
        })
        .unwrap();
        let exact = graph::sigma_analytic(2, n, p, Regime::Exact).unwrap();
        let z = (est.mean - exact) / est.stderr;
        assert!(z.abs() <= 3.0, "sigma_2 at p={p}: z = {z:.2}");
        report.push(format!("sigma2(p={p}) z={z:+.2}"));
    }

    // eta(3,2,2) against the low-density expansion, below the crossover
    for &p in &[0.004, 0.0045] {
        let est = mc::run(&McConfig {
            n_trials: trials,
            seed: SEED,
            n_nodes: n,
            p,
            estimator: Estimator::EtaExists {
                path_len: 3,
                subpath_len: 2,
                alt_len: 2,
            },
        })
        .unwrap();
        let low = graph::eta_analytic(3, 2, 2, n, p, Regime::LowP).unwrap();
        let z = (est.mean - low) / est.stderr;
        assert!(z.abs() <= 3.0, "eta low at p={p}: z = {z:.2}");
        report.push(format!("eta_low(p={p}) z={z:+.2}"));
    }

    // eta(3,2,2) against the high-density asymptote
    for &p in &[0.15, 0.2] {
        let est = mc::run(&McConfig {
            n_trials: trials,
            seed: SEED,
            n_nodes: n,
            p,
            estimator: Estimator::EtaExists {
                path_len: 3,
                subpath_len: 2,
                alt_len: 2,
            },
        })
        .unwrap();
        let high = graph::eta_analytic(3, 2, 2, n, p, Regime::HighP).unwrap();
        let z = (est.mean - high) / est.stderr;
        assert!(z.abs() <= 3.0, "eta high at p={p}: z = {z:.2}");
        report.push(format!("eta_high(p={p}) z={z:+.2}"));
    }

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "took {elapsed} s");
    println!(
        "criterion 06 PASS: N=200, 10^4 trials, all within 3 stderr [{}] in {elapsed:.0} s",
        report.join(", ")
    );
}

#[test]
fn criterion_07_critical_collapse() {
    // The figure this criterion encodes collapses eta/g for many
    // geometries onto the single N^-2 line; the gate below fits the
    // pooled collapse. Per-geometry slopes are printed as well: the
    // longer geometries carry visible pre-asymptotic suppression at
    // N = 100 (shortcut conditioning on top of the falling-factorial
    // correction), which the pooled fit averages the way the figure
    // does.
    let start = Instant::now();
    let sizes = [100usize, 200, 400, 800];
    let trials = 20_000u64;
    let mut lx_all = Vec::new();
    let mut ly_all = Vec::new();
    let mut per_geometry = Vec::new();
    for &(l, sub) in &[(3u32, 2u32), (4, 2), (4, 3), (5, 3)] {
        let g = graph::g_degeneracy(l, sub, sub);
        let mut lx = Vec::new();
        let mut ly = Vec::new();
        for &n in &sizes {
            let est = mc::run(&McConfig {
                n_trials: trials,
                seed: SEED,
                n_nodes: n,
                p: 1.0 / n as f64,
                estimator: Estimator::EtaConfigs {
                    path_len: l,
                    subpath_len: sub,
                    alt_len: sub,
                },
            })
            .unwrap();
            assert!(est.mean > 0.0, "no events at N={n} for ({l},{sub})");
            lx.push((n as f64).ln());
            ly.push((est.mean / g).ln());
        }
        let (slope, _) = numeric::linear_fit(&lx, &ly);
        per_geometry.push(format!("({l},{sub}): {slope:.3}"));
        lx_all.extend_from_slice(&lx);
        ly_all.extend_from_slice(&ly);
    }
    let (pooled, _) = numeric::linear_fit(&lx_all, &ly_all);
    assert!(
        (pooled + 2.0).abs() <= 0.15,
        "pooled collapse slope is {pooled:.3}"
    );
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 600.0, "took {elapsed} s");
    println!(
        "criterion 07 PASS: pooled eta/g collapse slope {pooled:.3} within -2 +/- 0.15 \
         (per geometry: [{}]) in {elapsed:.0} s",
        per_geometry.join(", ")
    );
}

#[test]
fn criterion_08_constant_a() {
    let start = Instant::now();
    let constants = CriticalConstants::compute().unwrap();
    assert!(
        constants.big_a > 6.0e-5 && constants.big_a < 7.0e-5,
        "A = {}",
        constants.big_a
    );
    let coarse = critical::big_a_fixed_steps(64);
    let fine = critical::big_a_fixed_steps(128);
    let rel = (fine - coarse).abs() / fine;
    assert!(rel < 0.005, "step halving moved A by {rel:.4}");
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "took {elapsed} s");
    println!(
        "criterion 08 PASS: A = {:.6e} in [6e-5, 7e-5], step-halving change {rel:.2e} in {elapsed:.1} s",
        constants.big_a
    );
}

#[test]
fn criterion_09_asymptotic_law() {
    let start = Instant::now();
    let eps: Vec<f64> = (0..9).map(|i| 0.01 + 0.005 * i as f64).collect();
    let slope = critical::gain_sum_loglog_slope(&eps, 300);
    assert!((slope + 4.0).abs() <= 0.2, "slope {slope:.3}");

    let constants = CriticalConstants::compute().unwrap();
    let n2 = critical::n2_gain_sum(0.99, 300);
    let asymptote = constants.big_a / 0.01f64.powi(4);
    let rel = (n2 / asymptote - 1.0).abs();
    assert!(rel < 0.25, "asymptote mismatch {rel:.3}");
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 120.0, "took {elapsed} s");
    println!(
        "criterion 09 PASS: log-log slope {slope:.3}, match to A/eps^4 at eps=0.01 \
         within {rel:.4} in {elapsed:.1} s"
    );
}

/// Floyd–Warshall oracle with saturating addition.
fn floyd_warshall(g: &ErGraphSample) -> Vec<Vec<u64>> {
    const INF: u64 = u64::MAX / 4;
    let n = g.n_nodes();
    let mut d = vec![vec![INF; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for &w in g.neighbors(u as u32) {
            d[u][w as usize] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Every simple path from `from` to `to` (no length cap).
fn all_simple_paths(
    g: &ErGraphSample,
    from: u32,
    to: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    let here = *current.last().unwrap();
    if here == to && current.len() > 1 {
        out.push(current.clone());
        return;
    }
    for &w in g.neighbors(here) {
        if current.contains(&w) {
            continue;
        }
        current.push(w);
        all_simple_paths(g, from, to, current, out);
        current.pop();
    }
}

#[test]
fn criterion_10_small_instance_oracles() {
    let start = Instant::now();

    // shortest paths against Floyd-Warshall on 100 random graphs
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for trial in 0..100u64 {
        let n = rng.gen_range(5..=50usize);
        let p = rng.gen_range(0.02..0.3);
        let g = ErGraphSample::generate_seeded(
            n,
            p,
            SeedRecord {
                seed: SEED ^ 0xa5a5,
                stream: trial,
            },
        );
        let bfs = g.shortest_path_lengths();
        let fw = floyd_warshall(&g);
        for u in 0..n {
            for v in 0..n {
                let expected = if fw[u][v] >= u64::MAX / 4 {
                    UNREACHABLE
                } else {
                    fw[u][v] as u32
                };
                assert_eq!(bfs[u][v], expected, "distance ({u},{v}) trial {trial}");
            }
        }
    }

    // SPP enumeration against exhaustive simple-path search on 100
    // random graphs with N <= 12
    for trial in 0..100u64 {
        let n = rng.gen_range(5..=12usize);
        let p = rng.gen_range(0.1..0.45);
        let g = ErGraphSample::generate_seeded(
            n,
            p,
            SeedRecord {
                seed: SEED ^ 0x5a5a,
                stream: trial,
            },
        );
        let fw = floyd_warshall(&g);
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                let got = graph::enumerate_spp(&g, u, v, &GeometryFilter::default());
                let l = fw[u as usize][v as usize];
                if l >= u64::MAX / 4 || l < 3 {
                    assert!(got.is_empty(), "unexpected configs for ({u},{v})");
                    continue;
                }
                let l = l as usize;
                // chosen path re-derived from the oracle distances
                let mut sp = vec![v];
                let mut cur = v;
                let mut d = l;
                while d > 0 {
                    let parent = g
                        .neighbors(cur)
                        .iter()
                        .copied()
                        .find(|&w| fw[u as usize][w as usize] as usize == d - 1)
                        .unwrap();
                    sp.push(parent);
                    cur = parent;
                    d -= 1;
                }
                sp.reverse();
                let sp_edges: Vec<(u32, u32)> = sp
                    .windows(2)
                    .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
                    .collect();
                // exhaustive configurations
                let mut expected = Vec::new();
                for n_sub in 2..=l {
                    for pos in 0..=(l - n_sub) {
                        let mut paths = Vec::new();
                        all_simple_paths(
                            &g,
                            sp[pos],
                            sp[pos + n_sub],
                            &mut vec![sp[pos]],
                            &mut paths,
                        );
                        for path in paths {
                            let m_prime = path.len() - 1;
                            if m_prime < n_sub || m_prime > 2 * n_sub - 1 {
                                continue;
                            }
                            let disjoint = path
                                .windows(2)
                                .all(|w| !sp_edges.contains(&(w[0].min(w[1]), w[0].max(w[1]))));
                            if disjoint {
                                expected.push((n_sub, pos, m_prime, path));
                            }
                        }
                    }
                }
                let mut got_tuples: Vec<(usize, usize, usize, Vec<u32>)> = got
                    .iter()
                    .map(|c| (c.subpath_len, c.position, c.alt_len, c.alternate.clone()))
                    .collect();
                got_tuples.sort();
                expected.sort();
                assert_eq!(got_tuples, expected, "configs for ({u},{v}) trial {trial}");
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "criterion 10 PASS: BFS distances match Floyd-Warshall (100 graphs, N <= 50); \
         SPP enumeration matches exhaustive search (100 graphs, N <= 12) in {elapsed:.1} s"
    );
}

#[test]
fn criterion_11_manifest_determinism() {
    let bin = env!("CARGO_BIN_EXE_entnet");
    let base = std::env::temp_dir().join(format!("entnet-acc-{}", std::process::id()));
    let dir_a = base.join("a");
    let dir_b = base.join("b");
    let dir_c = base.join("c");
    let args = [
        "simulate",
        "--fig",
        "eta322",
        "--N",
        "60",
        "--p",
        "0.02:0.06:0.02",
        "--trials",
        "200",
        "--seed",
        "99",
    ];

    for (dir, threads) in [(&dir_a, "1"), (&dir_b, "3")] {
        let status = Command::new(bin)
            .args(args)
            .args(["--threads", threads, "--out", dir.to_str().unwrap()])
            .status()
            .unwrap();
        assert!(status.success());
    }
    let csv_a = std::fs::read(dir_a.join("eta322.csv")).unwrap();
    let csv_b = std::fs::read(dir_b.join("eta322.csv")).unwrap();
    assert_eq!(
        csv_a, csv_b,
        "rerun with different thread caps must be byte-identical"
    );

    // re-execute from the recorded manifest
    let status = Command::new(bin)
        .args([
            "rerun",
            dir_a.join("manifest.json").to_str().unwrap(),
            "--out",
            dir_c.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let csv_c = std::fs::read(dir_c.join("eta322.csv")).unwrap();
    assert_eq!(csv_a, csv_c, "manifest rerun must be byte-identical");

    let manifest_a: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir_a.join("manifest.json")).unwrap())
            .unwrap();
    let manifest_c: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir_c.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(
        manifest_a["outputs"], manifest_c["outputs"],
        "checksums must match"
    );

    std::fs::remove_dir_all(&base).ok();
    println!(
        "criterion 11 PASS: identical CSV bytes across reruns, thread caps, and manifest replay"
    );
}

#[test]
fn criterion_note_gain_surface_properties() {
    let start = Instant::now();
    // zero below x = y_lo_min^(1/3) (no length can reach the window),
    // zero at x so high that even L = 7 overshoots it, nonnegative and
    // somewhere positive in between
    let threshold = spp::y_lo_min().powf(1.0 / 3.0);
    let mut any_positive = false;
    for &p in &[0.02, 0.05, 0.1, 0.2] {
        for &x in &[0.5, 0.6, threshold, 0.72, 0.8, 0.98] {
            let est = mc::run(&McConfig {
                n_trials: 30,
                seed: SEED,
                n_nodes: 200,
                p,
                estimator: Estimator::NetworkGain { x, l_max: 7 },
            })
            .unwrap();
            assert!(est.mean >= 0.0, "negative surface at p={p} x={x}");
            if x <= threshold || x >= 0.98 {
                assert_eq!(est.mean, 0.0, "expected zero at p={p} x={x}");
            }
            if est.mean > 0.0 {
                any_positive = true;
            }
        }
    }
    assert!(any_positive, "surface must show gain concentrations");
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "criterion note PASS: gain surface nonnegative, zero outside the 3 <= L <= 7 window, \
         positive inside in {elapsed:.0} s"
    );
}
