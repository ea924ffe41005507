//! Scratch margin probe: runs the checks at acceptance scale and prints
//! every component's value so thresholds and runtimes can be calibrated.

use std::time::Instant;

use gw_sampling::OffspringLaw;
use limit_theorems::*;

fn show(tag: &str, started: Instant, report: &CheckReport) {
    let secs = started.elapsed().as_secs_f64();
    println!("[{tag}] {:.1}s {}", secs, report.summary_line());
    for c in &report.components {
        println!("    {} = {:.5} (thr {:.3}) pass={}", c.label, c.value, c.threshold, c.pass);
    }
}

/// Signed empirical-vs-target CDF gaps (D+, D−) of a sorted copy.
fn gaps<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> (f64, f64) {
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let (mut dp, mut dm) = (0.0f64, 0.0f64);
    for (i, x) in xs.iter().enumerate() {
        let f = cdf(*x);
        dp = dp.max((i as f64 + 1.0) / n - f);
        dm = dm.max(f - i as f64 / n);
    }
    (dp, dm)
}

fn describe<F: Fn(f64) -> f64>(tag: &str, sample: &[f64], cdf: F, target_mean: f64) {
    let n = sample.len() as f64;
    let mean = sample.iter().sum::<f64>() / n;
    let sd = (sample.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    let (dp, dm) = gaps(sample, cdf);
    let d = dp.max(dm);
    println!(
        "    {tag}: mean-off {:+.5} (se {:.5})  D+ {:.5}  D- {:.5}  sqrt(n)D {:.3}",
        mean - target_mean,
        sd / n.sqrt(),
        dp,
        dm,
        n.sqrt() * d
    );
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let want = |s: &str| args.is_empty() || args.iter().any(|a| a == s);
    let laws = [
        OffspringLaw::Geometric,
        OffspringLaw::Poisson,
        OffspringLaw::Binary,
    ];

    if want("drift") {
        use excursion_lab::replicate_rng;
        use gw_sampling::forest_height_process;
        let p = 10_000usize;
        let reps = 30_000usize;
        let scale = (p as f64).sqrt();
        for law in &laws {
            let sigma = law.sigma2().sqrt();
            let t = Instant::now();
            let mut h = Vec::with_capacity(reps);
            let mut c_even = Vec::with_capacity(reps);
            let mut c_mix = Vec::with_capacity(reps);
            let mut lam = Vec::with_capacity(reps);
            for k in 0..reps {
                let mut rng = replicate_rng(971, k as u64);
                let f = forest_height_process(law, 2 * p + 2, &mut rng).unwrap();
                h.push(f.heights[p] as f64 / scale);
                let ce = contour_value_at(&f.heights, 2 * p) as f64;
                let co = contour_value_at(&f.heights, 2 * p + 1) as f64;
                c_even.push(ce / scale);
                c_mix.push(if k % 2 == 0 { ce } else { co } / scale);
                lam.push(f.tree_index[p - 1] as f64 / scale);
            }
            println!("[drift {law}] sampled in {:.1}s", t.elapsed().as_secs_f64());
            let hn = |s: f64| {
                move |x: f64| {
                    if x <= 0.0 {
                        0.0
                    } else {
                        2.0 * excursion_lab::standard_normal_cdf(x * s) - 1.0
                    }
                }
            };
            let m_half = (2.0 / sigma) * (2.0 / std::f64::consts::PI).sqrt();
            describe("height raw   ", &h, hn(sigma / 2.0), m_half);
            let shifted: Vec<f64> = h.iter().map(|x| x + 0.5 / scale).collect();
            describe("height +1/2  ", &shifted, hn(sigma / 2.0), m_half);
            describe("contour even ", &c_even, hn(sigma / 2.0), m_half);
            let shifted: Vec<f64> = c_even.iter().map(|x| x + 1.0 / scale).collect();
            describe("contour ev+1 ", &shifted, hn(sigma / 2.0), m_half);
            describe("contour mix  ", &c_mix, hn(sigma / 2.0), m_half);
            let shifted: Vec<f64> = c_mix.iter().map(|x| x + 0.5 / scale).collect();
            describe("contour mx+.5", &shifted, hn(sigma / 2.0), m_half);
            let m_lam = sigma * (2.0 / std::f64::consts::PI).sqrt();
            describe("ltime raw    ", &lam, hn(1.0 / sigma), m_lam);
            let shifted: Vec<f64> = lam.iter().map(|x| x + 0.5 / scale).collect();
            describe("ltime +1/2   ", &shifted, hn(1.0 / sigma), m_lam);
        }
    }

    if want("ltdrift") {
        use excursion_lab::{reflected_bm_with_local_time, replicate_rng, two_sample_ks};
        use gw_sampling::forest_height_process;
        let p = 10_000usize;
        let reps = 20_000usize;
        let scale = (p as f64).sqrt();
        let dt = 1e-4f64;
        let over = 0.5825971579390107 * dt.sqrt();
        for law in &laws {
            let sigma = law.sigma2().sqrt();
            let mut lam = Vec::with_capacity(reps);
            for k in 0..reps {
                let mut rng = replicate_rng(972, k as u64);
                let f = forest_height_process(law, p, &mut rng).unwrap();
                lam.push(f.tree_index[p - 1] as f64 / scale);
            }
            let lam_c: Vec<f64> = lam.iter().map(|x| x - 0.5 / scale).collect();
            let mut bro = Vec::with_capacity(reps);
            let mut bro_c = Vec::with_capacity(reps);
            for k in 0..reps {
                let mut rng = replicate_rng(973, k as u64);
                let sim = reflected_bm_with_local_time(dt, 1.0, &mut rng);
                let l = *sim.ltime.last().unwrap();
                bro.push(sigma * l);
                bro_c.push(sigma * (l + over));
            }
            let (d_raw, p_raw) = two_sample_ks(&lam, &bro).unwrap();
            let (d_cc, p_cc) = two_sample_ks(&lam_c, &bro_c).unwrap();
            println!(
                "[ltdrift {law}] raw D {:.5} p {:.4} | corrected D {:.5} p {:.4}",
                d_raw, p_raw, d_cc, p_cc
            );
        }
    }

    if want("csdrift") {
        use excursion_lab::{replicate_rng, two_sample_ks, vervaat_excursion};
        use gw_sampling::sample_conditioned_size;
        let reps = 8000usize;
        let dt = 1.0 / 4096.0f64;
        let over = 0.5825971579390107 * dt.sqrt();
        for (law, n) in [
            (OffspringLaw::Geometric, 2000usize),
            (OffspringLaw::Poisson, 2000),
            (OffspringLaw::Binary, 2001),
        ] {
            let sigma = law.sigma2().sqrt();
            let scale = (n as f64).sqrt();
            let t = Instant::now();
            let mut disc = Vec::with_capacity(reps);
            for k in 0..reps {
                let mut rng = replicate_rng(981, k as u64);
                let tree = sample_conditioned_size(&law, n, &mut rng).unwrap();
                disc.push(*tree.depths().iter().max().unwrap() as f64 / scale);
            }
            let disc_c: Vec<f64> = disc.iter().map(|x| x + 0.5 / scale).collect();
            let mut bro = Vec::with_capacity(reps);
            let mut bro_c = Vec::with_capacity(reps);
            for k in 0..reps {
                let mut rng = replicate_rng(982, k as u64);
                let m = vervaat_excursion(dt, &mut rng).max_value();
                bro.push(2.0 / sigma * m);
                bro_c.push(2.0 / sigma * (m + over));
            }
            let (d0, p0) = two_sample_ks(&disc, &bro).unwrap();
            let (d1, p1) = two_sample_ks(&disc, &bro_c).unwrap();
            let (d2, p2) = two_sample_ks(&disc_c, &bro_c).unwrap();
            let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
            println!(
                "[csdrift {law}] {:.0}s means d {:.4} b {:.4} bc {:.4} | raw D {:.4} p {:.3} | bcorr D {:.4} p {:.3} | both D {:.4} p {:.3}",
                t.elapsed().as_secs_f64(), mean(&disc), mean(&bro), mean(&bro_c), d0, p0, d1, p1, d2, p2
            );
        }
    }

    if want("maxdrift") {
        use excursion_lab::{replicate_rng, vervaat_excursion};
        use rand_distr::StandardNormal;
        for (dt, reps) in [(1.0f64 / 4096.0, 30_000usize), (1.0 / 16384.0, 12_000)] {
            let steps = (1.0 / dt).round() as usize;
            let sd = dt.sqrt();
            let mut bm_max = 0.0f64;
            for k in 0..reps {
                let mut rng = replicate_rng(975, k as u64);
                let (mut b, mut mx) = (0.0f64, 0.0f64);
                for _ in 0..steps {
                    let z: f64 = rand::Rng::sample(&mut rng, StandardNormal);
                    b += sd * z;
                    mx = mx.max(b);
                }
                bm_max += mx;
            }
            bm_max /= reps as f64;
            let mut vv_max = 0.0f64;
            for k in 0..reps {
                let mut rng = replicate_rng(976, k as u64);
                vv_max += vervaat_excursion(dt, &mut rng).max_value();
            }
            vv_max /= reps as f64;
            let em = (2.0 / std::f64::consts::PI).sqrt();
            let ev = (std::f64::consts::PI / 2.0).sqrt();
            println!(
                "[maxdrift dt=2^-{}] bm deficit {:.5} (c={:.3})  vervaat deficit {:.5} (c={:.3})",
                (1.0 / dt).log2().round() as i32,
                em - bm_max,
                (em - bm_max) / sd,
                ev - vv_max,
                (ev - vv_max) / sd
            );
        }
    }

    if want("csmatrix") {
        use excursion_lab::{replicate_rng, two_sample_ks, vervaat_excursion};
        use gw_sampling::sample_conditioned_size;
        let reps = 5000usize;
        for (law, n) in [
            (OffspringLaw::Geometric, 2000usize),
            (OffspringLaw::Poisson, 2000),
            (OffspringLaw::Binary, 2001),
        ] {
            let sigma = law.sigma2().sqrt();
            let scale = (n as f64).sqrt();
            let mut disc = Vec::with_capacity(reps);
            for k in 0..reps {
                let mut rng = replicate_rng(983, k as u64);
                let tree = sample_conditioned_size(&law, n, &mut rng).unwrap();
                disc.push((*tree.depths().iter().max().unwrap() as f64 + 0.5) / scale);
            }
            for (tag, dt) in [("2^-14", 1.0f64 / 16384.0), ("2^-16", 1.0 / 65536.0)] {
                let t = Instant::now();
                let corr = 0.5825971579390107 * dt.sqrt();
                let mut bro = Vec::with_capacity(reps);
                let mut bro_c = Vec::with_capacity(reps);
                for k in 0..reps {
                    let mut rng = replicate_rng(984, k as u64);
                    let m = vervaat_excursion(dt, &mut rng).max_value();
                    bro.push(2.0 / sigma * m);
                    bro_c.push(2.0 / sigma * (m + corr));
                }
                let (d0, p0) = two_sample_ks(&disc, &bro).unwrap();
                let (d1, p1) = two_sample_ks(&disc, &bro_c).unwrap();
                println!(
                    "[csmatrix {law} dt={tag}] {:.0}s  d+1/2 raw-b D {:.4} p {:.3} | corr-b D {:.4} p {:.3}",
                    t.elapsed().as_secs_f64(),
                    d0,
                    p0,
                    d1,
                    p1
                );
            }
        }
    }

    if want("csexact") {
        use excursion_lab::{ks_test, replicate_rng, vervaat_excursion};
        use gw_sampling::sample_conditioned_size;
        // P(max e <= x), Chung's series.
        fn maxe_cdf(x: f64) -> f64 {
            if x <= 0.2 {
                return 0.0;
            }
            let mut s = 0.0f64;
            for k in 1..=64u32 {
                let kk = (k * k) as f64;
                let e = (-2.0 * kk * x * x).exp();
                let t = (4.0 * kk * x * x - 1.0) * e;
                s += t;
                if e < 1e-18 {
                    break;
                }
            }
            (1.0 - 2.0 * s).clamp(0.0, 1.0)
        }
        // sanity: mean from CDF
        let mut mean = 0.0;
        let h = 1e-4;
        let mut x = h / 2.0;
        while x < 12.0 {
            mean += (1.0 - maxe_cdf(x)) * h;
            x += h;
        }
        println!("[csexact] integral of survival = {:.7} (target {:.7})", mean, (std::f64::consts::PI / 2.0).sqrt());
        // vervaat grid samples vs exact CDF (expected small positive D from grid deficit)
        let mut vv: Vec<f64> = Vec::new();
        for k in 0..4000u64 {
            let mut rng = replicate_rng(976, k);
            vv.push(vervaat_excursion(1.0f64 / 16384.0, &mut rng).max_value());
        }
        let rec = ks_test("vervaat vs exact", &vv, maxe_cdf, 0).unwrap();
        println!("[csexact] vervaat(2^-14) one-sample vs exact: D {:.5} p {:.4}", rec.statistic, rec.pvalue);
        let corr2 = 2.0 * 0.5825971579390107 * (1.0f64 / 16384.0).sqrt();
        let vvc: Vec<f64> = vv.iter().map(|m| m + corr2).collect();
        let rec = ks_test("vervaat corr vs exact", &vvc, maxe_cdf, 0).unwrap();
        println!("[csexact] vervaat + 2b1*sqrt(dt) vs exact: D {:.5} p {:.4}", rec.statistic, rec.pvalue);
        for (law, n, reps) in [
            (OffspringLaw::Geometric, 2000usize, 20_000usize),
            (OffspringLaw::Poisson, 2000, 8000),
            (OffspringLaw::Binary, 2001, 8000),
        ] {
            let sigma = law.sigma2().sqrt();
            let scale = (n as f64).sqrt();
            let t = Instant::now();
            let mut raw = Vec::with_capacity(reps);
            for k in 0..reps {
                let mut rng = replicate_rng(983, k as u64);
                let tree = sample_conditioned_size(&law, n, &mut rng).unwrap();
                raw.push(*tree.depths().iter().max().unwrap() as f64 / scale);
            }
            let half: Vec<f64> = raw.iter().map(|x| x + 0.5 / scale).collect();
            let cdf = |x: f64| maxe_cdf(x * sigma / 2.0);
            let m_target = (2.0 / sigma) * (std::f64::consts::PI / 2.0).sqrt();
            println!("[csexact {law} n={n}] sampled in {:.0}s", t.elapsed().as_secs_f64());
            describe("cs raw ", &raw, cdf, m_target);
            describe("cs +1/2", &half, cdf, m_target);
        }
    }

    if want("csseeds") {
        use excursion_lab::{replicate_rng, two_sample_ks, vervaat_excursion};
        use gw_sampling::sample_conditioned_size;
        let law = OffspringLaw::Geometric;
        let n = 2000usize;
        let reps = 5000usize;
        let sigma = law.sigma2().sqrt();
        let scale = (n as f64).sqrt();
        for seed in [1u64, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12] {
            let t = Instant::now();
            let mut d_raw = Vec::with_capacity(reps);
            let mut d_half = Vec::with_capacity(reps);
            for k in 0..reps {
                let mut rng = replicate_rng(seed, (5u64 << 48) | k as u64);
                let tree = sample_conditioned_size(&law, n, &mut rng).unwrap();
                let h = *tree.depths().iter().max().unwrap() as f64;
                d_raw.push(h / scale);
                d_half.push((h + 0.5) / scale);
            }
            let mut b12 = Vec::with_capacity(reps);
            let mut b14 = Vec::with_capacity(reps);
            for k in 0..reps {
                let mut rng = replicate_rng(seed, (6u64 << 48) | k as u64);
                b12.push(2.0 / sigma * vervaat_excursion(1.0f64 / 4096.0, &mut rng).max_value());
                let mut rng = replicate_rng(seed, (7u64 << 48) | k as u64);
                b14.push(2.0 / sigma * vervaat_excursion(1.0f64 / 16384.0, &mut rng).max_value());
            }
            let (_, p_rr) = two_sample_ks(&d_raw, &b12).unwrap();
            let (_, p_h12) = two_sample_ks(&d_half, &b12).unwrap();
            let (_, p_h14) = two_sample_ks(&d_half, &b14).unwrap();
            println!(
                "[csseeds seed={seed}] {:.0}s  raw/2^-12 p {:.4} | +1/2 / 2^-12 p {:.4} | +1/2 / 2^-14 p {:.4}",
                t.elapsed().as_secs_f64(),
                p_rr,
                p_h12,
                p_h14
            );
        }
    }

    if want("chdrift") {
        use excursion_lab::{excursion_height_gt_capped, replicate_rng, two_sample_ks};
        use gw_sampling::sample_conditioned_height_with_budget;
        let m = 50u64;
        let m2 = (m * m) as f64;
        let cap = (100.0 * m2) as usize;
        let reps = 8000usize;
        let dt = 1e-3f64;
        let over = 0.5825971579390107 * dt.sqrt();
        let budget = (110.0 / dt) as usize;
        for law in &laws {
            let sigma = law.sigma2().sqrt();
            let t = Instant::now();
            let mut disc = Vec::new();
            for k in 0..reps {
                let mut rng = replicate_rng(991, k as u64);
                match sample_conditioned_height_with_budget(law, m, 1_000_001, cap, &mut rng) {
                    Ok(tree) => {
                        let h = *tree.depths().iter().max().unwrap();
                        disc.push(h as f64 / m as f64);
                    }
                    Err(_) => {}
                }
            }
            let mut bro = Vec::new();
            let mut bro_c = Vec::new();
            for k in 0..reps {
                let mut rng = replicate_rng(992, k as u64);
                if let Ok(path) = excursion_height_gt_capped(sigma / 2.0, dt, budget, &mut rng) {
                    if path.duration() <= 100.0 {
                        let mx = path.max_value();
                        bro.push(2.0 / sigma * mx);
                        bro_c.push(2.0 / sigma * (mx + over));
                    }
                }
            }
            let (d0, p0) = two_sample_ks(&disc, &bro).unwrap();
            let (d1, p1) = two_sample_ks(&disc, &bro_c).unwrap();
            let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
            println!(
                "[chdrift {law}] {:.0}s n_d {} n_b {} means d {:.4} b {:.4} bc {:.4} | raw D {:.4} p {:.3} | corr D {:.4} p {:.3}",
                t.elapsed().as_secs_f64(), disc.len(), bro.len(), mean(&disc), mean(&bro), mean(&bro_c), d0, p0, d1, p1
            );
        }
    }

    if want("marginals") {
        for seed in [903u64, 904] {
            for law in &laws {
                let t = Instant::now();
                let r = check_height_marginal(law, 10_000, 10_000, seed).unwrap();
                show(&format!("height {law} s{seed}"), t, &r);
                let t = Instant::now();
                let r = check_contour_marginal(law, 10_000, 10_000, seed).unwrap();
                show(&format!("contour {law} s{seed}"), t, &r);
                let t = Instant::now();
                let r = check_local_time_joint(law, 10_000, 10_000, seed).unwrap();
                show(&format!("ltime {law} s{seed}"), t, &r);
            }
        }
    }

    if want("condsize") {
        for (law, n, reps, seed) in [
            (OffspringLaw::Geometric, 2000usize, 5000usize, 12u64),
            (OffspringLaw::Poisson, 4000, 1000, 911),
            (OffspringLaw::Binary, 9999, 1000, 911),
        ] {
            let t = Instant::now();
            let r = check_conditioned_size(&law, n, reps, seed).unwrap();
            show(&format!("condsize {law} n={n} reps={reps} s={seed}"), t, &r);
        }
    }

    if want("condheight") {
        for (law, x, reps) in [
            (OffspringLaw::Geometric, 0.5f64, 6000usize),
            (OffspringLaw::Geometric, 1.0, 3000),
            (OffspringLaw::Poisson, 2.0, 1500),
            (OffspringLaw::Binary, 2.0, 1500),
        ] {
            let t = Instant::now();
            let r = check_conditioned_height(&law, x, 10_000, reps, 921).unwrap();
            show(&format!("condheight {law} m={}", (x * 100.0) as u64), t, &r);
        }
    }

    if want("rayknight") {
        let t = Instant::now();
        let r = check_ray_knight(1500, 931).unwrap();
        show("rayknight", t, &r);
    }

    if want("feller") {
        for p in [100usize, 200] {
            for law in &laws {
                let t = Instant::now();
                let r = check_feller_limit(law, p, 2500, 941).unwrap();
                show(&format!("feller {law} p={p}"), t, &r);
            }
        }
    }

    if want("identities") {
        for law in &laws {
            let t = Instant::now();
            let r = check_pathwise_identities(law, 10_000, 1000, 951).unwrap();
            show(&format!("identities {law}"), t, &r);
        }
    }

    if want("universality") {
        let t = Instant::now();
        let r = check_height_universality(
            &OffspringLaw::Geometric,
            &OffspringLaw::Binary,
            2500,
            4000,
            961,
        )
        .unwrap();
        show("universality geo|bin", t, &r);
    }
}
