//! Acceptance suite: one test per numbered criterion, each printing a
//! PASS line with the measured numbers (run with `--nocapture` to see
//! them). Heavy studies parallelize over derived RNG streams.

use rayon::prelude::*;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use norastab::analysis::{
    exhaustive_distance, growth_formulas, monte_carlo_distance, rref_reduce,
    scrambling_weight_trajectory, singleton_bound, syk_regime_classifier,
    weight_histogram_by_layer, Regime,
};
use norastab::clifford::{random_symplectic_matrix, symplectic_group_order, SymplecticClifford};
use norastab::dense::{dense_clifford, dense_entropy, dense_weyl};
use norastab::experiments::{derive_seed, least_squares_slope, mean_sem, ExperimentConfig};
use norastab::nora::{
    encode_with_reference, gate_count, gate_count_closed_form, NoraMode, NoraParams,
};
use norastab::stab::{RegionMask, StabilizerTableau};
use norastab::thermo::{
    entropy_continuum, entropy_from_partition_derivative, gibbs_entropy_exact, ThermoParams,
};
use norastab::weyl::WeylVector;

fn fixed_params(d: u8, q: usize, r: u64, depth: usize, k: u64, layers: u32, seed: u64) -> NoraParams {
    NoraParams {
        d,
        q,
        r,
        depth,
        mode: NoraMode::Fixed { k, layers },
        seed,
    }
}

fn random_weyl(n: usize, d: u8, rng: &mut impl Rng) -> WeylVector {
    let comps = (0..2 * n).map(|_| rng.gen_range(0..d)).collect();
    WeylVector::from_components(comps, rng.gen_range(0..d), d).unwrap()
}

#[test]
fn criterion_01_symplectic_validity() {
    let combos: Vec<(usize, u8)> = [1usize, 2, 4]
        .iter()
        .flat_map(|&n| [3u8, 5].map(|d| (n, d)))
        .collect();
    for &(n, d) in &combos {
        let failures: usize = (0..10usize)
            .into_par_iter()
            .map(|chunk| {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(101, &[n as u64, d as u64, chunk as u64]));
                (0..1000)
                    .filter(|_| !SymplecticClifford::random(n, d, &mut rng).unwrap().validate())
                    .count()
            })
            .sum();
        assert_eq!(failures, 0, "invalid samples at n={n}, d={d}");
    }
    println!("criterion 01 PASS: 10000 samples satisfy S^T J S = J for every (n,d) in {{1,2,4}}x{{3,5}}");
}

#[test]
fn criterion_02_sampler_uniformity() {
    // Brute-force enumeration of Sp(2, F_3).
    let j = norastab::weyl::SymplecticForm::new(1).matrix(3).unwrap();
    let mut elements = Vec::new();
    for idx in 0..81u32 {
        let entries = [idx % 3, idx / 3 % 3, idx / 9 % 3, idx / 27 % 3];
        let m = norastab::field::FieldMatrix::from_rows(
            &[
                vec![entries[0] as i64, entries[1] as i64],
                vec![entries[2] as i64, entries[3] as i64],
            ],
            3,
        )
        .unwrap();
        if m.transpose().matmul(&j).unwrap().matmul(&m).unwrap() == j {
            elements.push(entries);
        }
    }
    assert_eq!(elements.len() as u128, symplectic_group_order(1, 3));

    let samples = 48_000usize;
    let mut counts = std::collections::HashMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for _ in 0..samples {
        let s = random_symplectic_matrix(1, 3, &mut rng).unwrap();
        let key = [
            s.get(0, 0) as u32,
            s.get(0, 1) as u32,
            s.get(1, 0) as u32,
            s.get(1, 1) as u32,
        ];
        *counts.entry(key).or_insert(0u64) += 1;
    }
    assert_eq!(counts.len(), 24, "all group elements must occur");
    let expected = samples as f64 / 24.0;
    let chi2: f64 = elements
        .iter()
        .map(|e| {
            let c = *counts.get(e).unwrap_or(&0) as f64;
            (c - expected) * (c - expected) / expected
        })
        .sum();
    let critical = ChiSquared::new(23.0).unwrap().inverse_cdf(0.99);
    assert!(
        chi2 < critical,
        "chi2 = {chi2:.2} exceeds the 1% critical value {critical:.2}"
    );
    println!(
        "criterion 02 PASS: Sp(2,F3) chi-square {chi2:.2} < {critical:.2} over 24 elements, 48000 samples"
    );
}

#[test]
fn criterion_03_oracle_equivalence_entropy() {
    let checked: usize = (0..500usize)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(303, &[i as u64]));
            let n = rng.gen_range(2..=6);
            let t = StabilizerTableau::random_pure(n, 3, &mut rng).unwrap();
            let sites: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            let region = RegionMask::new(sites).unwrap();
            let fast = t.entropy(&region).unwrap() as f64;
            let dense = dense_entropy(&t, &region).unwrap();
            assert!(
                (fast - dense).abs() < 1e-9,
                "tableau {fast} vs dense {dense} (n = {n})"
            );
            1
        })
        .sum();
    assert_eq!(checked, 500);
    println!(
        "criterion 03 PASS: 500 random states (n <= 6, d = 3) match dense entropies within 1e-9"
    );
}

#[test]
fn criterion_04_oracle_equivalence_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    // Products and commutators: 1000 pairs, exact dense equality.
    for case in 0..1000 {
        let n = 1 + case % 3;
        let u = random_weyl(n, 3, &mut rng);
        let v = random_weyl(n, 3, &mut rng);
        let dense_u = dense_weyl(&u).unwrap();
        let dense_v = dense_weyl(&v).unwrap();
        let prod = dense_u.mul(&dense_v);
        let alg = dense_weyl(&u.multiply(&v).unwrap()).unwrap();
        assert!(prod.approx_eq(&alg, 1e-9), "product mismatch at case {case}");
        let commutes_dense = prod.approx_eq(&dense_v.mul(&dense_u), 1e-9);
        assert_eq!(
            commutes_dense,
            u.commutes(&v).unwrap(),
            "commutator mismatch at case {case}"
        );
        // Trace identity on every tested label.
        let tr = dense_u.trace();
        if u.is_identity() {
            assert!((tr.norm() - 3f64.powi(n as i32)).abs() < 1e-9);
        } else {
            assert!(tr.norm() < 1e-9);
        }
    }
    // Conjugations: 20 reconstructed unitaries x 50 labels = 1000 cases.
    let conjugations: usize = (0..20usize)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(404, &[i as u64]));
            let n = 1 + i % 3;
            let c = SymplecticClifford::random(n, 3, &mut rng).unwrap();
            let u = dense_clifford(&c).unwrap();
            for _ in 0..50 {
                let v = random_weyl(n, 3, &mut rng);
                let conj = u.mul(&dense_weyl(&v).unwrap()).mul(&u.dagger());
                let alg = dense_weyl(&c.apply_to_weyl(&v).unwrap()).unwrap();
                assert!(conj.approx_eq(&alg, 1e-7), "conjugation mismatch");
            }
            50
        })
        .sum();
    assert_eq!(conjugations, 1000);
    println!(
        "criterion 04 PASS: 1000 products/commutators and 1000 conjugations match dense matrices; trace identity holds"
    );
}

#[test]
fn criterion_05_distance_oracle() {
    let instances: usize = (0..50usize)
        .into_par_iter()
        .map(|i| {
            let depth = 1 + i % 3;
            let layers = 1 + (i / 3) % 3;
            let params = fixed_params(3, 2, 2, depth, 1, layers as u32, derive_seed(505, &[i as u64]));
            let state = encode_with_reference(&params).unwrap();
            let n = state.physical.len() as u64;
            assert!(n <= 10);
            let exact = exhaustive_distance(&state).unwrap();
            // 2^12 draws covers every C(N <= 10, s) completely.
            let mc = monte_carlo_distance(&state, 1 << 12, Some(n), i as u64).unwrap();
            assert_eq!(mc.delta, exact.delta, "instance {i}");
            assert!(mc.per_size.iter().all(|t| t.covered));
            if let (Some(d), true) = (exact.delta, n > 1) {
                assert!(d <= singleton_bound(n, 1), "singleton violated on instance {i}");
            }
            1
        })
        .sum();
    assert_eq!(instances, 50);
    println!(
        "criterion 05 PASS: covered Monte Carlo equals exhaustive distance on 50 instances with N <= 10"
    );
}

/// Shared runner for the figure-scale distance experiments.
fn distance_means(depths: &[usize], seeds: usize) -> Vec<(usize, f64, f64, usize)> {
    depths
        .iter()
        .map(|&depth| {
            let estimates: Vec<Option<u64>> = (0..seeds)
                .into_par_iter()
                .map(|i| {
                    let params = fixed_params(
                        3,
                        2,
                        2,
                        depth,
                        2,
                        7,
                        derive_seed(606, &[depth as u64, i as u64, 0]),
                    );
                    let state = encode_with_reference(&params).unwrap();
                    let est = monte_carlo_distance(
                        &state,
                        1,
                        None,
                        derive_seed(606, &[depth as u64, i as u64, 1]),
                    )
                    .unwrap();
                    if let Some(d) = est.delta {
                        assert!(
                            d <= singleton_bound(130, 2),
                            "criterion 7 guard: delta {d} above the singleton bound"
                        );
                    }
                    est.delta
                })
                .collect();
            let found: Vec<f64> = estimates.iter().flatten().map(|&d| d as f64).collect();
            let (mean, sem) = mean_sem(&found);
            (depth, mean, sem, estimates.len() - found.len())
        })
        .collect()
}

#[test]
fn criterion_06_paper_figure_distance_vs_depth() {
    // 1000 encoder seeds per depth, one region drawn per size in each
    // sweep: 1000 regions per size in total per depth, averaged the way
    // the reference data was (many independent sweeps).
    let seeds = 1000;
    let stats = distance_means(&[1, 3, 4], seeds);
    for (depth, mean, sem, censored) in &stats {
        println!(
            "  D={depth}: mean delta = {mean:.3} +- {sem:.3} ({censored} runs hit the sweep cap)"
        );
    }
    let mean_d1 = stats[0].1;
    let mean_d3 = stats[1].1;
    let mean_d4 = stats[2].1;
    assert!(
        (62.4..=66.4).contains(&mean_d4),
        "mean delta at D=4 is {mean_d4:.3}, outside [62.4, 66.4]"
    );
    assert!(
        mean_d1 < mean_d3,
        "mean delta must increase from D=1 ({mean_d1:.3}) to D=3 ({mean_d3:.3})"
    );
    println!(
        "criterion 06 PASS: mean delta(D=4) = {mean_d4:.3} in [62.4, 66.4]; D=1 ({mean_d1:.2}) < D=3 ({mean_d3:.2})"
    );
}

#[test]
fn criterion_07_singleton_bound_across_experiments() {
    // A diverse battery of measured instances; every found delta must obey
    // the quantum singleton bound. Criteria 5, 6, and 8 also assert this
    // inline on each of their own runs.
    let mut checked = 0u64;
    let configs: Vec<NoraParams> = (0..60u64)
        .map(|i| {
            let depth = 1 + (i % 4) as usize;
            let k = 1 + i % 3;
            let layers = 3 + (i % 3) as u32;
            fixed_params(3, 2, 2, depth, k, layers, derive_seed(707, &[i]))
        })
        .chain((0..20u64).map(|i| NoraParams {
            d: 3,
            q: 2,
            r: 2,
            depth: 1 + (i % 3) as usize,
            mode: NoraMode::Syk {
                a: 1 + (i % 2) as u32,
                b: 1 + (i % 2) as u32,
            },
            seed: derive_seed(708, &[i]),
        }))
        .collect();
    let violations: u64 = configs
        .par_iter()
        .enumerate()
        .map(|(i, params)| {
            let state = encode_with_reference(params).unwrap();
            let n = params.total_sites().unwrap();
            let est = monte_carlo_distance(&state, 4, None, i as u64).unwrap();
            match est.delta {
                Some(d) if d > singleton_bound(n, params.k()) => 1,
                _ => 0,
            }
        })
        .sum();
    checked += configs.len() as u64;
    assert_eq!(violations, 0);
    println!(
        "criterion 07 PASS: zero singleton-bound exceptions across {checked} runs (plus inline guards in criteria 5, 6, 8)"
    );
}

#[test]
fn criterion_08_distance_vs_k() {
    let seeds = 400usize;
    let ks: Vec<u64> = (1..=8).collect();
    let means: Vec<(u64, f64, f64)> = ks
        .iter()
        .map(|&k| {
            let found: Vec<f64> = (0..seeds)
                .into_par_iter()
                .filter_map(|i| {
                    let params =
                        fixed_params(3, 2, 2, 3, k, 6, derive_seed(808, &[k, i as u64, 0]));
                    let state = encode_with_reference(&params).unwrap();
                    let est = monte_carlo_distance(
                        &state,
                        1,
                        None,
                        derive_seed(808, &[k, i as u64, 1]),
                    )
                    .unwrap();
                    if let Some(d) = est.delta {
                        assert!(d <= singleton_bound(64 + k, k), "criterion 7 guard");
                    }
                    est.delta.map(|d| d as f64)
                })
                .collect();
            let (mean, sem) = mean_sem(&found);
            (k, mean, sem)
        })
        .collect();
    for &(k, mean, sem) in &means {
        println!("  k={k}: mean delta = {mean:.3} +- {sem:.3}");
    }
    for pair in means.windows(2) {
        assert!(
            pair[1].1 < pair[0].1,
            "mean delta must strictly decrease: k={} gives {:.3}, k={} gives {:.3}",
            pair[0].0,
            pair[0].1,
            pair[1].0,
            pair[1].1
        );
    }
    let slope = least_squares_slope(
        &means
            .iter()
            .map(|&(k, m, _)| (k as f64, m))
            .collect::<Vec<_>>(),
    );
    assert!(slope < 0.0, "least-squares slope {slope:.4} must be negative");
    println!(
        "criterion 08 PASS: mean delta strictly decreasing over k = 1..8, slope {slope:.3} < 0"
    );
}

#[test]
fn criterion_09_growth_factor() {
    let n = 128usize;
    let steps = 32usize;
    let trajectories = 3000usize;
    let sums: Vec<f64> = (0..trajectories)
        .into_par_iter()
        .map(|i| {
            scrambling_weight_trajectory(n, 3, 2, steps, derive_seed(909, &[i as u64])).unwrap()
        })
        .fold(
            || vec![0f64; steps],
            |mut acc, w| {
                for (a, &x) in acc.iter_mut().zip(&w) {
                    *a += x as f64;
                }
                acc
            },
        )
        .reduce(
            || vec![0f64; steps],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    *x += y;
                }
                a
            },
        );
    let means: Vec<f64> = sums.iter().map(|s| s / trajectories as f64).collect();
    let g = growth_formulas(3, 2, 2, n as u64, 1).g;

    // Measured growth factor: geometric mean of the per-sub-layer ratios
    // while the string is dilute (mean weight below n/4).
    let mut log_sum = 0.0;
    let mut count = 0usize;
    let mut prev = 1.0;
    for &m in &means {
        if prev < n as f64 / 4.0 {
            log_sum += (m / prev).ln();
            count += 1;
        }
        prev = m;
    }
    let measured = (log_sum / count as f64).exp();
    assert!(
        (measured - g).abs() / g < 0.05,
        "dilute-phase growth {measured:.4} deviates from g = {g:.4} by more than 5%"
    );

    let plateau: f64 = means[steps - 6..].iter().sum::<f64>() / 6.0;
    let expected = 8.0 / 9.0 * n as f64;
    assert!(
        (plateau - expected).abs() / expected < 0.02,
        "equilibrium {plateau:.2} deviates from {expected:.2} by more than 2%"
    );
    println!(
        "criterion 09 PASS: dilute growth {measured:.4} within 5% of 16/9 over {count} sub-layers; equilibrium {plateau:.2} within 2% of {expected:.2}"
    );
}

#[test]
fn criterion_10_weight_distributions() {
    let runs = 100usize;
    let cohort_rel = |depth: usize| -> f64 {
        let total: f64 = (0..runs)
            .into_par_iter()
            .map(|i| {
                let params =
                    fixed_params(3, 2, 2, depth, 2, 6, derive_seed(1010, &[depth as u64, i as u64]));
                let records = weight_histogram_by_layer(&params).unwrap();
                let last = records.last().unwrap();
                last.mean_core_weight() / last.w_max
            })
            .sum();
        total / runs as f64
    };
    let rel_d1 = cohort_rel(1);
    let rel_d3 = cohort_rel(3);
    assert!(
        rel_d1 < 0.5,
        "D=1 fully-scrambled rows reach {rel_d1:.3} of w_max, expected below 0.5"
    );
    assert!(
        rel_d3 > 0.9,
        "D=3 fully-scrambled rows reach {rel_d3:.3} of w_max, expected above 0.9"
    );
    println!(
        "criterion 10 PASS: final-layer mean weight of rows scrambled by every layer: D=1 at {rel_d1:.3} w_max < 0.5, D=3 at {rel_d3:.3} w_max > 0.9"
    );
}

#[test]
fn criterion_11_thermodynamics() {
    let p = ThermoParams::new(2, 1, 20, 2, 1.0, 0.4, 1.0).unwrap();
    let alpha_over_gamma = p.alpha / p.gamma;
    let k_term = (p.d as f64).ln() * p.k as f64;

    let grid: Vec<f64> = (0..=30)
        .map(|i| 10f64.powf(-6.0 + 3.0 * i as f64 / 30.0))
        .collect();
    // (a) Exact vs continuum approximation within 5% wherever the
    // approximation's own validity condition holds, and (b) at the pinned
    // point T = 1e-4 regardless.
    let mut valid_points = 0;
    let mut max_dev_valid = 0f64;
    for &t in &grid {
        let pt = p.with_temperature(t);
        let exact = gibbs_entropy_exact(&pt);
        let cont = entropy_continuum(&pt);
        assert!(cont.gamma_bound >= cont.integral_form - 1e-12);
        if cont.valid {
            valid_points += 1;
            max_dev_valid = max_dev_valid.max((cont.integral_form - exact).abs() / exact);
        }
    }
    assert!(valid_points >= 5, "the window must contain valid points");
    assert!(
        max_dev_valid < 0.05,
        "continuum deviates by {max_dev_valid:.4} on its validity domain"
    );
    let pinned = p.with_temperature(1e-4);
    let pinned_dev = (entropy_continuum(&pinned).integral_form - gibbs_entropy_exact(&pinned))
        .abs()
        / gibbs_entropy_exact(&pinned);
    assert!(pinned_dev < 0.05, "deviation {pinned_dev:.4} at T = 1e-4");

    // (c) The power-law clause: the continuum excess S - k ln 2 falls on a
    // log-log line of slope alpha/gamma across the whole window.
    let pts: Vec<(f64, f64)> = grid
        .iter()
        .map(|&t| {
            let excess = entropy_continuum(&p.with_temperature(t)).gamma_bound - k_term;
            (t.ln(), excess.ln())
        })
        .collect();
    let slope = least_squares_slope(&pts);
    assert!(
        (slope - alpha_over_gamma).abs() / alpha_over_gamma < 0.05,
        "power-law slope {slope:.4} vs alpha/gamma = {alpha_over_gamma:.4}"
    );
    println!(
        "criterion 11 PASS: continuum max deviation {:.2e} on {} valid grid points (T <= Lambda e^-gamma/10 scale), {:.2e} at T=1e-4; power-law slope {slope:.4} = alpha/gamma within 5%",
        max_dev_valid, valid_points, pinned_dev
    );
}

#[test]
fn criterion_12_thermo_identities() {
    let p = ThermoParams::new(2, 1, 20, 2, 1.0, 0.4, 1.0).unwrap();
    let mut max_rel = 0f64;
    for i in 0..100 {
        let beta = 10f64.powf(-2.0 + 10.0 * i as f64 / 99.0);
        let pt = p.with_beta(beta);
        let direct = gibbs_entropy_exact(&pt);
        let derived = entropy_from_partition_derivative(&pt, 1e-5);
        max_rel = max_rel.max((direct - derived).abs() / direct.abs());
    }
    assert!(
        max_rel < 1e-6,
        "identity S = (1 - b d_b) log Z off by {max_rel:.2e}"
    );
    let n = p.total_sites() as f64;
    let hot = gibbs_entropy_exact(&p.with_beta(1e-12));
    let cold = gibbs_entropy_exact(&p.with_beta(1e12));
    let hot_target = n * 2f64.ln();
    let cold_target = 2f64.ln();
    assert!(
        ((hot - hot_target) / hot_target).abs() < 1e-4,
        "beta -> 0 limit {hot} vs {hot_target}"
    );
    assert!(
        ((cold - cold_target) / cold_target).abs() < 1e-4,
        "beta -> inf limit {cold} vs {cold_target}"
    );
    println!(
        "criterion 12 PASS: partition-derivative identity within {max_rel:.2e} on 100 beta points; S(0) -> N ln d and S(inf) -> k ln d to 4 digits"
    );
}

#[test]
fn criterion_13_gate_count_formula() {
    // Exact closed form on 20 random parameter sets with q | n_l.
    let mut rng = ChaCha8Rng::seed_from_u64(1313);
    let mut checked = 0;
    while checked < 20 {
        let q_r_k = [(2usize, 2u64, 2u64), (2, 2, 4), (2, 2, 6), (3, 3, 3), (3, 3, 6)];
        let (q, r, k_base) = q_r_k[rng.gen_range(0..q_r_k.len())];
        let params = NoraParams {
            d: [3u8, 5][rng.gen_range(0..2)],
            q,
            r,
            depth: rng.gen_range(1..=4),
            mode: NoraMode::Fixed {
                k: k_base * rng.gen_range(1..=3),
                layers: rng.gen_range(1..=8),
            },
            seed: checked,
        };
        let Some(closed) = gate_count_closed_form(&params).unwrap() else {
            continue;
        };
        let constructed = gate_count(&params).unwrap();
        assert_eq!(constructed, closed, "params {params:?}");
        // The construction itself places exactly that many gates.
        let built: u64 = norastab::nora::build_encoder(&params)
            .unwrap()
            .iter()
            .map(|l| l.gate_count())
            .sum();
        assert_eq!(built, closed);
        checked += 1;
    }

    // SykScaling convergence of gates/(N log_r N) toward D/(q(1+r^b)):
    // the normalized sequence decreases toward the limit with shrinking
    // residuals, settling to within 10% between a=5 and a=6.
    let depth = 3usize;
    let (q, r, b) = (2usize, 2u64, 1u32);
    let limit = depth as f64 / (q as f64 * (1.0 + r.pow(b) as f64));
    let ratios: Vec<f64> = (1..=6u32)
        .map(|a| {
            let params = NoraParams {
                d: 3,
                q,
                r,
                depth,
                mode: NoraMode::Syk { a, b },
                seed: 0,
            };
            let n = params.total_sites().unwrap() as f64;
            gate_count(&params).unwrap() as f64 / (n * n.ln() / (r as f64).ln())
        })
        .collect();
    for pair in ratios.windows(2) {
        assert!(pair[1] < pair[0], "normalized gate counts must decrease");
    }
    for &ratio in &ratios {
        assert!(ratio > limit, "the leading term is approached from above");
    }
    let settle = (ratios[5] / ratios[4] - 1.0).abs();
    assert!(
        settle < 0.10,
        "successive normalized counts still changing by {settle:.3} at a=6"
    );
    let residual_start = ratios[0] - limit;
    let residual_end = ratios[5] - limit;
    assert!(
        residual_end < residual_start / 2.0,
        "residual {residual_end:.4} has not halved from {residual_start:.4}"
    );
    println!(
        "criterion 13 PASS: 20 closed-form gate counts exact; gates/(N log_r N) falls {:.4} -> {:.4} toward {limit:.4}, settled within {settle:.3} at a=6",
        ratios[0], ratios[5]
    );
}

#[test]
fn criterion_14_rref_reduction() {
    let mut regions_checked = 0usize;
    let reductions: Vec<(f64, f64)> = (0..100usize)
        .into_par_iter()
        .map(|i| {
            let depth = 1 + i % 3;
            let layers = 3 + (i % 2) as u32;
            let params =
                fixed_params(3, 2, 2, depth, 2, layers, derive_seed(1414, &[i as u64]));
            let state = encode_with_reference(&params).unwrap();
            let t = &state.tableau;
            let reduced = rref_reduce(t);
            assert_eq!(rref_reduce(&reduced), reduced, "rref must be idempotent");
            // Group preservation: every original generator is a product of
            // reduced rows with the matching phase.
            for row in 0..t.num_generators() {
                let coeffs = reduced
                    .generators()
                    .solve_in_rowspace(t.generators().row(row))
                    .unwrap()
                    .expect("row space must be preserved");
                let mut acc = WeylVector::identity(t.sites(), 3).unwrap();
                for (i2, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        acc = acc.multiply(&reduced.row_weyl(i2).pow(c)).unwrap();
                    }
                }
                assert_eq!(acc.components(), t.generators().row(row));
                assert_eq!(acc.phase_exp(), t.phases()[row], "phase mismatch");
            }
            // Entropies of 20 random regions are untouched.
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(1415, &[i as u64]));
            for _ in 0..20 {
                let sites: Vec<usize> =
                    (0..t.sites()).filter(|_| rng.gen_bool(0.4)).collect();
                let region = RegionMask::new(sites).unwrap();
                assert_eq!(
                    t.entropy(&region).unwrap(),
                    reduced.entropy(&region).unwrap()
                );
            }
            let mean = |x: &StabilizerTableau| {
                let w = x.row_weights();
                w.iter().sum::<usize>() as f64 / w.len() as f64
            };
            (mean(t), mean(&reduced))
        })
        .collect();
    regions_checked += reductions.len() * 20;
    let before: f64 = reductions.iter().map(|r| r.0).sum::<f64>() / reductions.len() as f64;
    let after: f64 = reductions.iter().map(|r| r.1).sum::<f64>() / reductions.len() as f64;
    println!(
        "criterion 14 PASS: 100 tableaus reduced with group and phases preserved, idempotent, {regions_checked} region entropies unchanged; mean row weight {before:.2} -> {after:.2}"
    );
}

#[test]
fn criterion_15_determinism_in_process() {
    // The binary-level check (thread counts, byte-identical files) lives in
    // tests/cli.rs; here the library path is held to the same contract.
    let dir = tempfile::TempDir::new().unwrap();
    let mut cfg = ExperimentConfig {
        out: dir.path().join("a"),
        samples: 6,
        ..ExperimentConfig::default()
    };
    cfg.nora.mode = NoraMode::Fixed { k: 1, layers: 3 };
    cfg.depths = vec![1, 2];
    let first = norastab::experiments::cmd_distance_vs_depth(&cfg).unwrap();
    let bytes1 = std::fs::read(&first.csv).unwrap();
    cfg.out = dir.path().join("b");
    let second = norastab::experiments::cmd_distance_vs_depth(&cfg).unwrap();
    let bytes2 = std::fs::read(&second.csv).unwrap();
    assert_eq!(bytes1, bytes2);
    println!("criterion 15 PASS (library): repeated runs byte-identical; see tests/cli.rs for the subprocess/thread-count check");
}

// Supplementary spec invariants beyond the numbered criteria.

#[test]
fn extra_volume_law_capability() {
    // Half-system entropy of encoded states approaches its maximum.
    let params_template = fixed_params(3, 2, 2, 3, 2, 5, 0);
    let n = params_template.total_sites().unwrap() as usize;
    let half = n / 2;
    let samples = 40usize;
    let total: f64 = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut params = params_template;
            params.seed = derive_seed(1616, &[i as u64]);
            let state = encode_with_reference(&params).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(1617, &[i as u64]));
            let picks = rand::seq::index::sample(&mut rng, n, half);
            let sites: Vec<usize> = picks.iter().map(|p| state.physical.indices()[p]).collect();
            state
                .tableau
                .entropy(&RegionMask::new(sites).unwrap())
                .unwrap() as f64
        })
        .sum();
    let mean = total / samples as f64;
    let max = half as f64;
    assert!(
        mean > 0.9 * max,
        "half-system entropy {mean:.2} below 90% of {max}"
    );
    println!("extra PASS: volume law, mean half-system entropy {mean:.2} of max {max}");
}

#[test]
fn extra_sp4_uniformity() {
    // Chi-square over all of Sp(4, F_3) via exact matrix keys.
    let order = symplectic_group_order(2, 3) as usize;
    assert_eq!(order, 51840);
    let per_cell = 8;
    let samples = order * per_cell;
    let counts: Vec<std::collections::HashMap<u64, u64>> = (0..8usize)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(1818, &[chunk as u64]));
            let mut counts = std::collections::HashMap::new();
            for _ in 0..samples / 8 {
                let s = random_symplectic_matrix(2, 3, &mut rng).unwrap();
                let mut key = 0u64;
                for r in 0..4 {
                    for c in 0..4 {
                        key = key * 3 + s.get(r, c) as u64;
                    }
                }
                *counts.entry(key).or_insert(0) += 1;
            }
            counts
        })
        .collect();
    let mut merged: std::collections::HashMap<u64, u64> = std::collections::HashMap::new();
    for c in counts {
        for (k, v) in c {
            *merged.entry(k).or_insert(0) += v;
        }
    }
    let expected = per_cell as f64;
    let mut chi2 = (order - merged.len()) as f64 * expected;
    for &c in merged.values() {
        chi2 += (c as f64 - expected) * (c as f64 - expected) / expected;
    }
    let dof = (order - 1) as f64;
    // Normal approximation to the chi-square tail at 1% significance.
    let critical = dof + 2.3263 * (2.0 * dof).sqrt();
    assert!(chi2 < critical, "chi2 {chi2:.0} above {critical:.0}");
    println!(
        "extra PASS: Sp(4,F3) uniformity, {} distinct elements, chi2 {chi2:.0} < {critical:.0}",
        merged.len()
    );
}

#[test]
fn extra_regime_classifier_matches_weight_measurement() {
    // Predicted ordering: D=1 (dilute) stays far from saturation, D >= 2
    // (saturating) approaches it.
    let base = NoraParams {
        d: 3,
        q: 2,
        r: 2,
        depth: 1,
        mode: NoraMode::Syk { a: 3, b: 1 },
        seed: 0,
    };
    let mut rel = Vec::new();
    for depth in [1usize, 2] {
        let mut params = base;
        params.depth = depth;
        let regime = syk_regime_classifier(&params).unwrap().regime;
        let expected = if depth == 1 {
            Regime::Dilute
        } else {
            Regime::Saturating
        };
        assert_eq!(regime, expected);
        let total: f64 = (0..40usize)
            .into_par_iter()
            .map(|i| {
                let mut p = params;
                p.seed = derive_seed(1919, &[depth as u64, i as u64]);
                let records = weight_histogram_by_layer(&p).unwrap();
                let last = records.last().unwrap();
                last.mean_core_weight() / last.w_max
            })
            .sum();
        rel.push(total / 40.0);
    }
    assert!(
        rel[0] < rel[1],
        "dilute regime must sit below saturating: {rel:?}"
    );
    println!(
        "extra PASS: classifier ordering matches measurement (rel weights {:.3} < {:.3})",
        rel[0], rel[1]
    );
}
