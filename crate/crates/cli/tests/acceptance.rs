//! End-to-end acceptance checks for the toolkit, one test per criterion.
//!
//! Each test asserts its criterion at a pinned tolerance and prints a single
//! PASS line when it holds. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines; a failed
//! assertion is the FAIL, with the offending numbers in the panic message.

use gatescope::analysis::{
    build_report, one_vs_two_qubit, pearson, positional_correlation, qubit_coverage, tvd,
    CircuitSummary, ImpactRecord, ImpactReport,
};
use gatescope::bench::{ghz_circuit, qft_circuit, tfim_circuit};
use gatescope::density::exact_probabilities;
use gatescope::mitigation::{evaluate_mitigation, select_target_layers, serialize_layers};
use gatescope::noise::{Durations, PerQubit};
use gatescope::qasm::{emit_qasm, parse_qasm, EmitOptions};
use gatescope::reversal::{generate_suite, insert_group_reversal};
use gatescope::sim::{execute_suite, ideal_probabilities, run_noisy, shot_noise_bound};
use gatescope::{compute_layers, Circuit, Distribution, GateKind, GateOp, NoiseModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::time::{Duration, Instant};

const SHOTS: u64 = 32_000;

fn benchmarks() -> Vec<(String, Circuit)> {
    let mut out = vec![("qft_3".into(), qft_circuit(3, "000").unwrap())];
    for n in 2..=4 {
        out.push((format!("ghz_{n}"), ghz_circuit(n).unwrap()));
    }
    out.push(("tfim_4_2".into(), tfim_circuit(4, 2, 0.4, 0.3).unwrap()));
    out
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Distinct outcomes across two distributions, for the shot-noise bound.
fn joint_support(p: &Distribution, q: &Distribution) -> usize {
    p.probs.keys().chain(q.probs.keys()).collect::<BTreeSet<_>>().len()
}

#[test]
fn criterion_01_functional_preservation() {
    let start = Instant::now();
    let mut singles = 0usize;
    let mut groups = 0usize;
    for (name, circuit) in benchmarks() {
        let base = ideal_probabilities(&circuit).unwrap();
        for r in [1usize, 3, 5] {
            let suite = generate_suite(&circuit, r, true).unwrap();
            for variant in &suite.variants {
                let dist = ideal_probabilities(&variant.circuit).unwrap();
                let t = tvd(&base, &dist).unwrap();
                assert!(
                    t <= 1e-10,
                    "{name} r={r} gate {}: ideal tvd {t:e}",
                    variant.gate_index
                );
                singles += 1;
            }
            // Group variants: every index pair and every contiguous index
            // range that the contiguity rule admits.
            let n_ops = circuit.ops.len();
            for i in 0..n_ops {
                for j in (i + 1)..n_ops {
                    let pair: BTreeSet<usize> = [i, j].into();
                    let range: BTreeSet<usize> = (i..=j).collect();
                    for group in [pair, range] {
                        let Ok(variant) = insert_group_reversal(&circuit, &group, r) else {
                            continue;
                        };
                        let dist = ideal_probabilities(&variant).unwrap();
                        let t = tvd(&base, &dist).unwrap();
                        assert!(t <= 1e-10, "{name} r={r} group {group:?}: ideal tvd {t:e}");
                        groups += 1;
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(groups > 0);
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!(
        "criterion 1 PASS: {singles} single-gate and {groups} group variants \
         preserve the ideal distribution (tvd <= 1e-10) in {elapsed:?}"
    );
}

#[test]
fn criterion_02_rz_negligibility() {
    let start = Instant::now();
    let circuit = qft_circuit(3, "000").unwrap();
    let model = NoiseModel::default();
    let suite = generate_suite(&circuit, 5, true).unwrap();
    let execution = execute_suite(&suite, &model, SHOTS, 7).unwrap();
    let schedule = compute_layers(&circuit, Some(&model));
    let report = build_report(&execution, &suite, &circuit, &schedule).unwrap();

    let variant_dists: BTreeMap<usize, &Distribution> =
        execution.variants.iter().map(|(i, d)| (*i, d)).collect();
    let mut rz_records = 0usize;
    let mut worst = (0.0f64, 0.0f64);
    for record in &report.records {
        if !matches!(record.kind, GateKind::Rz(_)) {
            continue;
        }
        rz_records += 1;
        let k = joint_support(&execution.original, variant_dists[&record.gate_index]);
        let bound = shot_noise_bound(k, SHOTS);
        assert!(
            record.tvd <= bound,
            "rz gate {} tvd {} exceeds eps({SHOTS}) = {bound}",
            record.gate_index,
            record.tvd
        );
        if record.tvd > worst.0 {
            worst = (record.tvd, bound);
        }
    }
    let elapsed = start.elapsed();
    assert!(rz_records > 0, "qft(3) produced no rz records");
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!(
        "criterion 2 PASS: all {rz_records} rz records within shot noise \
         (worst tvd {:.5} vs bound {:.5}) in {elapsed:?}",
        worst.0, worst.1
    );
}

#[test]
fn criterion_03_run_count_reduction() {
    for (name, circuit) in benchmarks() {
        let gates = circuit.ops.iter().filter(|op| op.is_gate()).count();
        let rz = circuit
            .ops
            .iter()
            .filter(|op| matches!(op.kind, GateKind::Rz(_)))
            .count();
        let without = generate_suite(&circuit, 5, false).unwrap();
        let with = generate_suite(&circuit, 5, true).unwrap();
        assert_eq!(without.variants.len(), gates - rz, "{name}: non-rz variant count");
        assert_eq!(with.variants.len(), gates, "{name}: full variant count");
        assert_eq!(with.variants.len() - without.variants.len(), rz, "{name}: reduction");
        println!(
            "criterion 3 PASS: {name} runs {} -> {} (reduction {:.1}% = rz fraction)",
            gates,
            gates - rz,
            100.0 * rz as f64 / gates as f64
        );
    }
}

#[test]
fn criterion_04_amplification_trend() {
    let start = Instant::now();
    let circuit = qft_circuit(3, "000").unwrap();
    let model = NoiseModel::default();
    let ideal = ideal_probabilities(&circuit).unwrap();
    let seeds: Vec<u64> = (0..10).map(|i| 1_000 + 77 * i).collect();

    let mut mean_tvd = BTreeMap::new();
    let mut mean_corr = BTreeMap::new();
    for r in [1usize, 3, 5] {
        let suite = generate_suite(&circuit, r, false).unwrap();
        let mut tvd_sum = 0.0;
        let mut tvd_n = 0usize;
        let mut corr_sum = 0.0;
        for &seed in &seeds {
            let execution = execute_suite(&suite, &model, SHOTS, seed).unwrap();
            let mut vs_ideal = Vec::with_capacity(execution.variants.len());
            let mut vs_orig = Vec::with_capacity(execution.variants.len());
            for (_, dist) in &execution.variants {
                vs_ideal.push(tvd(&ideal, dist).unwrap());
                vs_orig.push(tvd(&execution.original, dist).unwrap());
            }
            tvd_sum += vs_orig.iter().sum::<f64>();
            tvd_n += vs_orig.len();
            let (corr, _) = pearson(&vs_ideal, &vs_orig).unwrap();
            corr_sum += corr;
        }
        mean_tvd.insert(r, tvd_sum / tvd_n as f64);
        mean_corr.insert(r, corr_sum / seeds.len() as f64);
    }

    assert!(
        mean_tvd[&1] <= mean_tvd[&3] && mean_tvd[&3] <= mean_tvd[&5],
        "mean tvd not non-decreasing: {mean_tvd:?}"
    );
    assert!(
        mean_corr[&5] >= mean_corr[&1],
        "correlation at r=5 ({}) below r=1 ({})",
        mean_corr[&5],
        mean_corr[&1]
    );
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(900), "took {elapsed:?}");
    println!(
        "criterion 4 PASS: mean tvd {:.4} -> {:.4} -> {:.4} across r=1,3,5; \
         mean corr r=1 {:.3} vs r=5 {:.3} in {elapsed:?}",
        mean_tvd[&1], mean_tvd[&3], mean_tvd[&5], mean_corr[&1], mean_corr[&5]
    );
}

/// Two-sided Student-t p-value by direct numerical integration.
///
/// Substituting x = sqrt(nu)·tan(theta) turns the t density into
/// cos(theta)^(nu-1) on [0, pi/2], so the two-sided p-value is the ratio of
/// that integrand's mass above atan(|t|/sqrt(nu)) to its total mass. Plain
/// Simpson on the smooth, bounded integrand is accurate far beyond 1e-6.
fn t_p_value_oracle(t: f64, nu: usize) -> f64 {
    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
        let h = (b - a) / intervals as f64;
        let mut acc = f(a) + f(b);
        for i in 1..intervals {
            let w = if i % 2 == 0 { 2.0 } else { 4.0 };
            acc += w * f(a + i as f64 * h);
        }
        acc * h / 3.0
    }
    let nu_f = nu as f64;
    let theta0 = (t.abs() / nu_f.sqrt()).atan();
    let f = |theta: f64| theta.cos().powi(nu as i32 - 1);
    let upper = simpson(&f, theta0, PI / 2.0, 20_000);
    let total = simpson(&f, 0.0, PI / 2.0, 20_000);
    upper / total
}

fn dist_of(pairs: &[(&str, f64)]) -> Distribution {
    Distribution {
        probs: pairs.iter().map(|(k, p)| (k.to_string(), *p)).collect(),
        shots: 0,
    }
}

#[test]
fn criterion_05_tvd_and_pearson_unit_correctness() {
    // Fixed tvd examples.
    let p = dist_of(&[("00", 0.25), ("01", 0.25), ("10", 0.25), ("11", 0.25)]);
    assert!(tvd(&p, &p).unwrap().abs() <= 1e-12);
    let a = dist_of(&[("00", 1.0)]);
    let b = dist_of(&[("11", 1.0)]);
    assert!((tvd(&a, &b).unwrap() - 1.0).abs() <= 1e-12);
    let c = dist_of(&[("0", 0.6), ("1", 0.4)]);
    let d = dist_of(&[("0", 0.5), ("1", 0.5)]);
    assert!((tvd(&c, &d).unwrap() - 0.1).abs() <= 1e-12);

    // Fixed pearson examples.
    let (r, p_val) = pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap();
    assert!((r - 1.0).abs() <= 1e-12 && p_val.abs() <= 1e-12);
    let (r, _) = pearson(&[1.0, 2.0, 3.0, 4.0], &[4.0, 3.0, 2.0, 1.0]).unwrap();
    assert!((r + 1.0).abs() <= 1e-12);

    // Randomized fixtures against the integration oracle.
    let mut rng = ChaCha8Rng::seed_from_u64(9_0210);
    for case in 0..20 {
        let n = rng.gen_range(5..=30usize);
        let slope: f64 = rng.gen_range(-2.0..2.0);
        let noise: f64 = rng.gen_range(0.1..2.0);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let y: Vec<f64> = x
            .iter()
            .map(|&v| slope * v + noise * rng.gen_range(-1.0..1.0f64))
            .collect();

        // Direct textbook formula, written out independently of the library.
        let mx = mean(&x);
        let my = mean(&y);
        let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
        let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
        let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
        let r_direct = sxy / (sxx * syy).sqrt();
        let t = r_direct * ((n - 2) as f64 / (1.0 - r_direct * r_direct)).sqrt();
        let p_oracle = t_p_value_oracle(t, n - 2);

        let (r, p_val) = pearson(&x, &y).unwrap();
        assert!(
            (r - r_direct).abs() <= 1e-12,
            "case {case}: r {r} vs direct {r_direct}"
        );
        assert!(
            (p_val - p_oracle).abs() <= 1e-6,
            "case {case}: p {p_val} vs oracle {p_oracle} (n {n}, r {r_direct})"
        );
    }
    println!(
        "criterion 5 PASS: tvd examples exact to 1e-12; 20 pearson fixtures \
         match the t-integration oracle within 1e-6"
    );
}

#[test]
fn criterion_06_trajectory_matches_density_oracle() {
    let start = Instant::now();

    fn quiet_model() -> NoiseModel {
        let mut m = NoiseModel::ideal();
        m.durations_ns = Durations { rz: 0.0, sx: 35.0, x: 35.0, cx: 300.0, measure: 1_000.0 };
        m
    }

    fn check(name: &str, circuit: &Circuit, model: &NoiseModel) -> f64 {
        let exact = exact_probabilities(circuit, model).unwrap();
        let sampled = run_noisy(circuit, model, SHOTS, 123).unwrap();
        let keys: BTreeSet<&String> = exact.probs.keys().chain(sampled.probs.keys()).collect();
        let mut worst_z = 0.0f64;
        for key in keys {
            let p = exact.prob(key);
            let p_hat = sampled.prob(key);
            let sigma = (p * (1.0 - p) / SHOTS as f64).sqrt();
            let dev = (p_hat - p).abs();
            assert!(
                dev <= 5.0 * sigma + 1e-9,
                "{name} outcome {key}: sampled {p_hat} vs exact {p} (sigma {sigma:e})"
            );
            if sigma > 0.0 {
                worst_z = worst_z.max(dev / sigma);
            }
        }
        worst_z
    }

    let mut worst = 0.0f64;

    // One-qubit depolarizing.
    let mut m = quiet_model();
    m.p1 = 0.05;
    let mut c = Circuit::new(1);
    c.push(GateOp::x(0));
    c.push(GateOp::measure(0));
    worst = worst.max(check("depolarizing-1q", &c, &m));

    // Two-qubit depolarizing.
    let mut m = quiet_model();
    m.p2 = 0.08;
    let mut c = Circuit::new(2);
    c.push(GateOp::x(0));
    c.push(GateOp::cx(0, 1));
    c.push(GateOp::measure(0));
    c.push(GateOp::measure(1));
    worst = worst.max(check("depolarizing-2q", &c, &m));

    // Amplitude damping: qubit 0 idles twice while qubit 1 works;
    // t2 = 2*t1 keeps the idle window free of extra dephasing.
    let mut m = quiet_model();
    m.t1_ns = PerQubit::Uniform(1_000.0);
    m.t2_ns = PerQubit::Uniform(2_000.0);
    let mut c = Circuit::new(2);
    c.push(GateOp::x(0));
    c.push(GateOp::x(1));
    c.push(GateOp::x(1));
    c.push(GateOp::x(1));
    c.push(GateOp::measure(0));
    c.push(GateOp::measure(1));
    worst = worst.max(check("amplitude-damping", &c, &m));

    // Pure dephasing: qubit 0 sits in |+> while qubit 1 works between the
    // barriers, then the closing Hadamard (rz sx rz) maps the phase noise
    // onto the measured bit.
    let mut m = quiet_model();
    m.t2_ns = PerQubit::Uniform(500.0);
    let mut c = Circuit::new(2);
    c.push(GateOp::rz(PI / 2.0, 0));
    c.push(GateOp::sx(0));
    c.push(GateOp::rz(PI / 2.0, 0));
    c.push(GateOp::barrier(vec![0, 1]));
    c.push(GateOp::x(1));
    c.push(GateOp::x(1));
    c.push(GateOp::barrier(vec![0, 1]));
    c.push(GateOp::rz(PI / 2.0, 0));
    c.push(GateOp::sx(0));
    c.push(GateOp::rz(PI / 2.0, 0));
    c.push(GateOp::measure(0));
    worst = worst.max(check("dephasing", &c, &m));

    // Readout flips only.
    let mut m = quiet_model();
    m.readout_flip = PerQubit::Uniform(0.07);
    let mut c = Circuit::new(1);
    c.push(GateOp::x(0));
    c.push(GateOp::measure(0));
    worst = worst.max(check("readout", &c, &m));

    // Crosstalk: two co-scheduled X gates on coupled qubits.
    let mut m = quiet_model();
    m.p1 = 0.01;
    m.crosstalk_factor = 4.0;
    let mut c = Circuit::new(2);
    c.push(GateOp::x(0));
    c.push(GateOp::x(1));
    c.push(GateOp::measure(0));
    c.push(GateOp::measure(1));
    worst = worst.max(check("crosstalk", &c, &m));

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!(
        "criterion 6 PASS: six isolated channels within 5 sigma of the \
         density-matrix oracle (worst z = {worst:.2}) in {elapsed:?}"
    );
}

#[test]
fn criterion_07_mitigation_direction() {
    let start = Instant::now();

    // Ten layers of co-scheduled X pairs on line-coupled qubits; everything
    // except the single-qubit depolarizing error is switched off, so the
    // only before/after difference is the crosstalk amplification.
    let mut circuit = Circuit::new(2);
    for _ in 0..10 {
        circuit.push(GateOp::x(0));
        circuit.push(GateOp::x(1));
        circuit.push(GateOp::barrier(vec![0, 1]));
    }
    circuit.push(GateOp::measure(0));
    circuit.push(GateOp::measure(1));

    let model_at = |factor: f64| {
        let mut m = NoiseModel::ideal();
        m.p1 = 0.02;
        m.crosstalk_factor = factor;
        m
    };
    let hot = model_at(3.0);
    let cold = model_at(1.0);

    let suite = generate_suite(&circuit, 5, false).unwrap();
    let execution = execute_suite(&suite, &hot, SHOTS, 11).unwrap();
    let schedule = compute_layers(&circuit, Some(&hot));
    let report = build_report(&execution, &suite, &circuit, &schedule).unwrap();
    let layers = select_target_layers(&report, report.records.len()).unwrap();
    let (mitigated, plan) = serialize_layers(&circuit, &layers).unwrap();
    assert!(plan.inserted_barriers > 0, "serialization was a no-op");

    let reference = ideal_probabilities(&circuit).unwrap();
    let seeds: Vec<u64> = (0..10).map(|i| 500 + 13 * i).collect();

    let run = |model: &NoiseModel| {
        let mut before = Vec::new();
        let mut after = Vec::new();
        for &seed in &seeds {
            let (b, a) =
                evaluate_mitigation(&circuit, &mitigated, model, SHOTS, seed, &reference)
                    .unwrap();
            before.push(b);
            after.push(a);
        }
        (mean(&before), mean(&after))
    };

    let (hot_before, hot_after) = run(&hot);
    assert!(
        hot_after < hot_before,
        "factor 3: mean tvd went {hot_before} -> {hot_after}"
    );

    let (cold_before, cold_after) = run(&cold);
    let eps = shot_noise_bound(4, SHOTS);
    assert!(
        (cold_before - cold_after).abs() <= eps,
        "factor 1: |{cold_before} - {cold_after}| exceeds paired shot noise {eps}"
    );

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!(
        "criterion 7 PASS: factor 3 mean tvd {hot_before:.4} -> {hot_after:.4}; \
         factor 1 difference {:.4} within {eps:.4} in {elapsed:?}",
        (cold_before - cold_after).abs()
    );
}

fn synthetic_report(records: Vec<ImpactRecord>, active_qubits: usize) -> ImpactReport {
    ImpactReport {
        summary: CircuitSummary {
            num_qubits: active_qubits,
            active_qubits,
            depth: 8,
            gate_counts: BTreeMap::new(),
        },
        reversals: 5,
        shots: SHOTS,
        include_rz: false,
        records,
        skipped: Vec::new(),
        positional: None,
        coverage: Vec::new(),
        one_vs_two: None,
    }
}

fn record(gate_index: usize, kind: GateKind, qubits: Vec<usize>, layer: usize, tvd: f64) -> ImpactRecord {
    ImpactRecord { gate_index, kind, qubits, layer, tvd }
}

#[test]
fn criterion_08_analyses_reproduce_worked_examples() {
    // Positional correlation over T = [0.1, 0.2, 0.3, 0.32, 0.4] placed in
    // layers L = [1, 2, 3, 3, 4].
    let t = [0.1, 0.2, 0.3, 0.32, 0.4];
    let l = [1usize, 2, 3, 3, 4];
    let records: Vec<ImpactRecord> = t
        .iter()
        .zip(&l)
        .enumerate()
        .map(|(i, (&tvd, &layer))| record(i, GateKind::Sx, vec![0], layer, tvd))
        .collect();
    let report = synthetic_report(records, 3);
    let (r, p) = positional_correlation(&report).unwrap();
    assert!(r > 0.9, "synthetic positional correlation r = {r}");
    assert!(p < 0.05, "synthetic positional correlation p = {p}");

    // Coverage: 4 records on 2 qubits whose top half touches both.
    let report = synthetic_report(
        vec![
            record(0, GateKind::Cx, vec![0, 1], 0, 0.40),
            record(1, GateKind::Sx, vec![0], 1, 0.30),
            record(2, GateKind::Sx, vec![0], 2, 0.20),
            record(3, GateKind::X, vec![0], 3, 0.10),
        ],
        2,
    );
    let rows = qubit_coverage(&report, &[0.5, 1.0]).unwrap();
    assert_eq!(rows[0].fraction, 1.0);
    assert_eq!(rows[1].fraction, 1.0);

    // Coverage: every top gate on qubit 0 of a 3-qubit circuit.
    let report = synthetic_report(
        vec![
            record(0, GateKind::Sx, vec![0], 0, 0.4),
            record(1, GateKind::X, vec![0], 1, 0.3),
            record(2, GateKind::Sx, vec![0], 2, 0.2),
        ],
        3,
    );
    for row in qubit_coverage(&report, &[0.05, 0.10, 0.25, 0.50, 1.0]).unwrap() {
        assert_eq!(row.fraction, 1.0 / 3.0, "threshold {}", row.threshold);
    }

    // One- vs two-qubit: SX tvds [0.3, 0.1] against CX tvds [0.5, 0.2].
    let report = synthetic_report(
        vec![
            record(0, GateKind::Cx, vec![0, 1], 0, 0.5),
            record(1, GateKind::Sx, vec![0], 1, 0.3),
            record(2, GateKind::Cx, vec![1, 2], 2, 0.2),
            record(3, GateKind::Sx, vec![2], 3, 0.1),
        ],
        3,
    );
    let cmp = one_vs_two_qubit(&report).unwrap();
    assert_eq!(cmp.count, 1);
    assert_eq!(cmp.fraction, 0.5);

    println!(
        "criterion 8 PASS: positional correlation r = {r:.3} (> 0.9); coverage \
         and one-vs-two fixtures match hand counts exactly"
    );
}

fn random_circuit(rng: &mut ChaCha8Rng) -> Circuit {
    let n = rng.gen_range(1..=5usize);
    let mut c = Circuit::new(n);
    for _ in 0..rng.gen_range(1..=40usize) {
        match rng.gen_range(0..12u8) {
            0..=2 => {
                let theta = match rng.gen_range(0..4u8) {
                    0 => rng.gen_range(-7.0..7.0),
                    1 => PI / rng.gen_range(1..9) as f64,
                    2 => rng.gen_range(-1.0e-3..1.0e-3),
                    _ => rng.gen_range(-3.0e3..3.0e3),
                };
                c.push(GateOp::rz(theta, rng.gen_range(0..n)));
            }
            3..=4 => c.push(GateOp::sx(rng.gen_range(0..n))),
            5 => c.push(GateOp::sx_adj(rng.gen_range(0..n))),
            6..=8 => c.push(GateOp::x(rng.gen_range(0..n))),
            9..=10 if n >= 2 => {
                let a = rng.gen_range(0..n);
                let mut b = rng.gen_range(0..n - 1);
                if b >= a {
                    b += 1;
                }
                c.push(GateOp::cx(a, b));
            }
            _ => {
                let mut qs: BTreeSet<usize> =
                    (0..rng.gen_range(1..=n)).map(|_| rng.gen_range(0..n)).collect();
                qs.insert(rng.gen_range(0..n));
                c.push(GateOp::barrier(qs.into_iter().collect()));
            }
        }
    }
    for q in 0..n {
        if rng.gen_bool(0.5) {
            c.push(GateOp::measure(q));
        }
    }
    c
}

fn same_ops(a: &Circuit, b: &Circuit) -> bool {
    a.num_qubits == b.num_qubits
        && a.ops.len() == b.ops.len()
        && a.ops.iter().zip(&b.ops).all(|(x, y)| {
            let kind_eq = match (x.kind, y.kind) {
                (GateKind::Rz(s), GateKind::Rz(t)) => s.to_bits() == t.to_bits(),
                (s, t) => s == t,
            };
            kind_eq && x.qubits == y.qubits && x.adjoint == y.adjoint
        })
}

#[test]
fn criterion_09_round_trip_and_diagnostics() {
    let mut rng = ChaCha8Rng::seed_from_u64(7_771);
    for case in 0..100 {
        let circuit = random_circuit(&mut rng);
        for extended in [false, true] {
            let text = emit_qasm(&circuit, EmitOptions { extended_gates: extended });
            let parsed = parse_qasm(&text)
                .unwrap_or_else(|d| panic!("case {case} extended={extended}: {d:?}"));
            assert!(
                same_ops(&circuit, &parsed),
                "case {case} extended={extended}: round trip drifted\n{text}"
            );
        }
    }

    let malformed = [
        String::new(),
        "x q[0];".into(),
        "OPENQASM 3.0;\nqreg q[2];\n".into(),
        "OPENQASM 2.0;\nqreg q[2];\nx q[5];\n".into(),
        "OPENQASM 2.0;\nqreg q[2];\nx q[".into(),
        "OPENQASM 2.0;\nqreg q[2];\nrz(0.1 q[0];\n".into(),
        "OPENQASM 2.0;\nqreg q[2];\nbogus q[0];\nx q[9];\n".into(),
        "OPENQASM 2.0;\nqreg q[0];\n".into(),
        "OPENQASM 2.0;\nqreg q[2];\nmeasure q[0] -> c[0];\nx q[0];\n".into(),
        "OPENQASM 2.0;\nqreg q[2];\ncx q[1], q[1];\n".into(),
        format!(
            "OPENQASM 2.0;\nqreg q[1];\nrz({}0.1{}) q[0];\n",
            "(".repeat(120),
            ")".repeat(120)
        ),
        "\u{0}\u{1}\u{2} garbage \u{fffd}".into(),
    ];
    for (i, text) in malformed.iter().enumerate() {
        let diags = parse_qasm(text).expect_err(&format!("malformed case {i} parsed"));
        assert!(!diags.is_empty());
        for d in &diags {
            assert!(d.line >= 1 && d.col >= 1, "case {i}: unpositioned diagnostic {d:?}");
        }
    }
    println!(
        "criterion 9 PASS: 100 random circuits round-trip op-for-op in both \
         emit modes; {} malformed inputs all yield positioned diagnostics",
        malformed.len()
    );
}

#[test]
fn criterion_10_determinism() {
    let bin = env!("CARGO_BIN_EXE_gatescope");
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();

    let bench = std::process::Command::new(bin)
        .args(["bench", "qft", "3", "--out"])
        .arg(root)
        .output()
        .unwrap();
    assert!(bench.status.success(), "bench failed: {bench:?}");
    let input = root.join("qft_3.qasm");

    let run = |out: &str| {
        let out_dir = root.join(out);
        let status = std::process::Command::new(bin)
            .arg("analyze")
            .arg(&input)
            .args(["--shots", "4000", "--seed", "42", "--out"])
            .arg(&out_dir)
            .output()
            .unwrap();
        assert!(status.status.success(), "analyze failed: {status:?}");
        out_dir
    };
    let first = run("first");
    let second = run("second");

    let strip_timestamp = |path: &std::path::Path| -> String {
        std::fs::read_to_string(path)
            .unwrap()
            .lines()
            .filter(|line| !line.contains("generated_at"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let a = strip_timestamp(&first.join("report.json"));
    let b = strip_timestamp(&second.join("report.json"));
    assert!(!a.is_empty());
    assert_eq!(a, b, "report.json differs between identical runs");

    let csv_a = std::fs::read(first.join("report.csv")).unwrap();
    let csv_b = std::fs::read(second.join("report.csv")).unwrap();
    assert_eq!(csv_a, csv_b, "report.csv differs between identical runs");

    println!(
        "criterion 10 PASS: repeated analyze runs are byte-identical once the \
         timestamp line is excluded"
    );
}
