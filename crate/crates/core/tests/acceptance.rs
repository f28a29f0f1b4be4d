//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test -p frustrata-core --test acceptance -- --nocapture`
//! to see every line.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use frustrata_core::*;

fn report(id: &str, name: &str, pass: bool, start: std::time::Instant, detail: &str) {
    println!(
        "ACCEPTANCE {id} {name}: {} ({detail}; {:.1}s)",
        if pass { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    assert!(pass, "{id} {name}: {detail}");
}

/// All rectangle shapes with at most `max_sites` sites.
fn small_rects(max_sites: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for w in 1..=max_sites {
        for h in 1..=max_sites / w {
            out.push((w, h));
        }
    }
    out
}

fn seeded_system(p: f64, w: usize, h: usize, tag: u64, seed: u64) -> SpinSystem {
    SpinSystem::gen_random(p, w.max(2), h.max(2), rng::mix(tag, seed)).unwrap()
}

// ---------------------------------------------------------------------------
// 1. dp_ground equals brute_force_ground on every rectangle with <= 20 sites
// ---------------------------------------------------------------------------
#[test]
fn criterion_01_dp_matches_brute() {
    let t0 = std::time::Instant::now();
    let shapes = small_rects(20);
    let ps = [0.1, 0.3, 0.5];
    let failures: usize = shapes
        .par_iter()
        .map(|&(w, h)| {
            let mut bad = 0;
            for seed in 0..100u64 {
                let p = ps[(seed % 3) as usize];
                let sys = seeded_system(p, w, h, (w * 100 + h) as u64, seed);
                let d = Domain::rect(w, h).unwrap();
                let b = brute_force_ground(&sys, &d).unwrap();
                let g = dp_ground(&sys, &d).unwrap();
                if b.energy != g.energy || b.config.values() != g.config.values() {
                    bad += 1;
                }
            }
            bad
        })
        .sum();
    report(
        "01",
        "dp-equals-brute",
        failures == 0,
        t0,
        &format!("{} shapes x 100 seeds, {failures} mismatches", shapes.len()),
    );
}

// ---------------------------------------------------------------------------
// 2. Flip identity: direct energy difference equals the crossed-bond formula
// ---------------------------------------------------------------------------
#[test]
fn criterion_02_flip_identity() {
    let t0 = std::time::Instant::now();
    let mut checked = 0usize;
    let mut failures = 0usize;
    for (idx, &side) in [4usize, 6, 8].iter().enumerate() {
        for seed in 0..50u64 {
            let p = if seed % 2 == 0 { 0.1 } else { 0.3 };
            let sys = seeded_system(p, side, side, 7000 + idx as u64, seed);
            let d = Domain::rect(side, side).unwrap();
            let u = dp_ground(&sys, &d).unwrap().config;
            // random closed curve: boundary of a random cell subset
            let cells: BTreeSet<Site> = d
                .sites()
                .into_iter()
                .filter(|s| rng::mix(seed, (9000 + s.x * 97 + s.y) as u64) % 3 == 0)
                .collect();
            if cells.is_empty() {
                continue;
            }
            let curve = cell_boundary(&cells);
            let out = flip_inside(&u, &curve, &sys, &d).unwrap();
            checked += 1;
            if out.delta_direct != out.delta_formula {
                failures += 1;
            }
        }
    }
    report(
        "02",
        "flip-identity",
        failures == 0 && checked >= 140,
        t0,
        &format!("{checked} triples, {failures} mismatches"),
    );
}

// ---------------------------------------------------------------------------
// 3. Ground-state circuits satisfy 2μ(η) ≥ l(η)
// ---------------------------------------------------------------------------
#[test]
fn criterion_03_ground_state_circuits() {
    let t0 = std::time::Instant::now();
    let shapes = small_rects(20);
    let ps = [0.1, 0.3, 0.5];
    let results: Vec<(usize, usize)> = shapes
        .par_iter()
        .map(|&(w, h)| {
            let mut circuits = 0;
            let mut violations = 0;
            for seed in 0..100u64 {
                let p = ps[(seed % 3) as usize];
                let sys = seeded_system(p, w, h, (w * 100 + h) as u64, seed);
                let d = Domain::rect(w, h).unwrap();
                let g = dp_ground(&sys, &d).unwrap();
                let comps = components(&interface(&g.config, &d).unwrap());
                for c in comps.iter().filter(|c| c.all_orders_even()) {
                    let eta = euler_circuit(c).unwrap();
                    circuits += 1;
                    if 2 * mu(&eta, &sys).unwrap() < eta.len() {
                        violations += 1;
                    }
                }
            }
            (circuits, violations)
        })
        .collect();
    let circuits: usize = results.iter().map(|r| r.0).sum();
    let violations: usize = results.iter().map(|r| r.1).sum();
    report(
        "03",
        "ground-state-circuits",
        violations == 0 && circuits > 0,
        t0,
        &format!("{circuits} circuits checked, {violations} violations"),
    );
}

// ---------------------------------------------------------------------------
// 4. Exact binomial tail ≤ p^{k/2}·2^k for k ≤ 64 over the p grid
// ---------------------------------------------------------------------------
#[test]
fn criterion_04_tail_bound() {
    let t0 = std::time::Instant::now();
    let grid: [(i64, i64); 6] = [(1, 100), (1, 20), (1, 10), (1, 5), (3, 10), (1, 2)];
    let mut checked = 0;
    let mut failures = 0;
    for (num, den) in grid {
        let p = BigRational::new(BigInt::from(num), BigInt::from(den));
        for k in 1..=64usize {
            checked += 1;
            if !tail_bound_holds(k, &p) {
                failures += 1;
            }
        }
    }
    report(
        "04",
        "tail-bound",
        failures == 0,
        t0,
        &format!("{checked} (k, p) pairs, {failures} failures"),
    );
}

// ---------------------------------------------------------------------------
// 5. p0 chain: p^{k/2}·2^k·3^k ≤ 2^{-k} for p ≤ 1/144, exact arithmetic
// ---------------------------------------------------------------------------
#[test]
fn criterion_05_p0_chain() {
    let t0 = std::time::Instant::now();
    // equivalent exact form: (144·p)^k ≤ 1
    let grid: [(i64, i64); 5] = [(1, 144), (1, 150), (1, 200), (1, 1000), (1, 10000)];
    let mut failures = 0;
    for (num, den) in grid {
        let x = BigRational::new(BigInt::from(144 * num), BigInt::from(den));
        let mut pw = BigRational::one();
        for k in 1..=64usize {
            pw *= &x;
            if pw > BigRational::one() {
                failures += 1;
                eprintln!("chain fails at p={num}/{den}, k={k}");
            }
        }
    }
    report(
        "05",
        "p0-chain",
        failures == 0,
        t0,
        &format!("5 probabilities x 64 lengths, {failures} failures"),
    );
}

// ---------------------------------------------------------------------------
// 6. Trail counting: 4, 12, 36 and the corrected 4·3^{k-1} bound
// ---------------------------------------------------------------------------
#[test]
fn criterion_06_trail_counts() {
    let t0 = std::time::Instant::now();
    let c1 = trail_count(1).unwrap();
    let c2 = trail_count(2).unwrap();
    let c3 = trail_count(3).unwrap();
    let exact_ok = c1.count == 4 && c2.count == 12 && c3.count == 36;
    let mut bound_ok = true;
    for k in 1..=10usize {
        let c = trail_count(k).unwrap();
        if c.count > c.bound_4_3k1 {
            bound_ok = false;
        }
    }
    report(
        "06",
        "trail-counts",
        exact_ok && bound_ok,
        t0,
        &format!("counts {},{},{}; bound holds to k=10", c1.count, c2.count, c3.count),
    );
}

// ---------------------------------------------------------------------------
// 7. Lemma-g bound chain over N in 2..=24 and the p grid, endpoint included
// ---------------------------------------------------------------------------
#[test]
fn criterion_07_lemma_g() {
    let t0 = std::time::Instant::now();
    let n_range: Vec<usize> = (2..=24).collect();
    let p_grid = [0.05, 0.1, 0.2, 0.3, 0.4];
    let rows = lemma_g_check(&n_range, &p_grid).unwrap();
    let failures = rows.iter().filter(|r| !r.pass).count();
    let endpoints = rows.iter().filter(|r| r.endpoint && r.k > 0).count();
    report(
        "07",
        "lemma-g",
        failures == 0 && endpoints > 0,
        t0,
        &format!("{} tuples, {failures} failures, {endpoints} endpoint rows", rows.len()),
    );
}

// ---------------------------------------------------------------------------
// 8. Exact census at N=2 against the frozen golden file
// ---------------------------------------------------------------------------

/// Independent oracle: enumerates every cell and every edge-distinct trail
/// with sites in [0,N]² without pruning, testing the strict separating
/// condition directly. Shares no code with the production search.
fn census_oracle_n2(min_len: usize) -> (u64, u64) {
    let n = 2i64;
    let window_sites: Vec<Site> = (0..=n)
        .flat_map(|x| (0..=n).map(move |y| Site::new(x, y)))
        .collect();

    // class of the bond crossed by a step, indexed 0..8 (h block then v block)
    let class_of = |a: Site, b: Site| -> usize {
        let lo = if a < b { a } else { b };
        if a.y == b.y {
            // horizontal step crosses the vertical bond at (lo.x+1, lo.y)
            let (x, y) = ((lo.x + 1).rem_euclid(2), lo.y.rem_euclid(2));
            (4 + y * 2 + x) as usize
        } else {
            // vertical step crosses the horizontal bond at (lo.x, lo.y+1)
            let (x, y) = (lo.x.rem_euclid(2), (lo.y + 1).rem_euclid(2));
            (y * 2 + x) as usize
        }
    };

    // enumerate trails once, keeping (len, class multiset) aggregates
    fn dfs(
        class_of: &dyn Fn(Site, Site) -> usize,
        sites: &mut Vec<Site>,
        used: &mut BTreeSet<(Site, Site)>,
        counts: &mut [usize; 8],
        min_len: usize,
        separating_cells: &mut BTreeSet<(usize, usize)>,
    ) {
        let len = sites.len() - 1;
        if len >= min_len {
            for a in 0..8usize {
                for b in (a + 1)..8 {
                    if 2 * (counts[a] + counts[b]) > len {
                        separating_cells.insert((a, b));
                    }
                }
            }
        }
        let cur = *sites.last().unwrap();
        for next in cur.neighbors() {
            if !(0..=2).contains(&next.x) || !(0..=2).contains(&next.y) {
                continue;
            }
            let seg = if cur < next { (cur, next) } else { (next, cur) };
            if used.contains(&seg) {
                continue;
            }
            let class = class_of(cur, next);
            used.insert(seg);
            sites.push(next);
            counts[class] += 1;
            dfs(class_of, sites, used, counts, min_len, separating_cells);
            counts[class] -= 1;
            sites.pop();
            used.remove(&seg);
        }
    }

    let mut separating_cells = BTreeSet::new();
    for &start in &window_sites {
        let mut sites = vec![start];
        let mut used = BTreeSet::new();
        let mut counts = [0usize; 8];
        dfs(
            &class_of,
            &mut sites,
            &mut used,
            &mut counts,
            min_len,
            &mut separating_cells,
        );
    }
    (28, separating_cells.len() as u64)
}

#[test]
fn criterion_08_census_golden() {
    let t0 = std::time::Instant::now();
    let golden: serde_json::Value =
        serde_json::from_str(include_str!("golden/census_n2.json")).unwrap();
    let total_golden = golden["total"].as_u64().unwrap();
    let mut all_ok = true;
    let mut detail = String::new();
    for (key, lambda) in [("0.25", 0.25f64), ("0.5", 0.5f64)] {
        let bad_golden = golden["bad"][key].as_u64().unwrap();
        let params = CensusParams::from_m(2, 2, lambda, false).unwrap();
        let r = census(&params, &CensusMode::Exact).unwrap();
        let min_len = params.min_len();
        let (oracle_total, oracle_bad) = census_oracle_n2(min_len);
        let ok = r.total == total_golden.into()
            && r.bad == bad_golden.into()
            && oracle_total == total_golden
            && oracle_bad == bad_golden;
        all_ok &= ok;
        detail.push_str(&format!(
            "lambda={key}: census bad={}, oracle bad={oracle_bad}, golden bad={bad_golden}; ",
            r.bad
        ));
    }
    report("08", "census-n2-golden", all_ok, t0, detail.trim_end_matches("; "));
}

/// Regenerates the golden numbers; run manually with
/// `cargo test -p frustrata-core --test acceptance print_census_golden -- --ignored --nocapture`.
#[test]
#[ignore]
fn print_census_golden() {
    for lambda in [0.25f64, 0.5] {
        let params = CensusParams::from_m(2, 2, lambda, false).unwrap();
        let min_len = params.min_len();
        let (total, bad) = census_oracle_n2(min_len);
        println!("lambda={lambda}: min_len={min_len} total={total} bad={bad}");
    }
}

// ---------------------------------------------------------------------------
// 9. Decomposition into period windows
// ---------------------------------------------------------------------------
#[test]
fn criterion_09_decomposition() {
    let t0 = std::time::Instant::now();
    use rand::Rng;
    use rand::SeedableRng;
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(0xdec0);
    let window = SiteRect::new(Site::new(-30, -30), Site::new(30, 30)).unwrap();
    let mut trails = 0usize;
    let mut failures = 0usize;
    for n in 4..=12usize {
        let cell = PeriodCell::from_af_indices(n, &[0, (n * n) / 2, n * n + 1]).unwrap();
        let mut made = 0usize;
        while made < 100 {
            let len = r.gen_range(n.div_ceil(2)..=4 * n);
            let Some(t) = Trail::random(&window, len, &mut r) else {
                continue;
            };
            made += 1;
            trails += 1;
            let pieces = decompose_trail(&t, n).unwrap();
            let mut ok = true;
            let mut mu_sum = 0usize;
            let mut premise = true;
            let mut rebuilt: Option<Trail> = None;
            for piece in &pieces {
                if 2 * piece.trail.len() < n {
                    ok = false;
                }
                let w = piece.window(n);
                if !piece.trail.sites().iter().all(|s| w.contains(*s)) {
                    ok = false;
                }
                let pm = mu(&piece.trail, &cell).unwrap();
                mu_sum += pm;
                if 2 * pm > piece.trail.len() {
                    premise = false;
                }
                rebuilt = Some(match rebuilt {
                    None => piece.trail.clone(),
                    Some(acc) => acc.concat(&piece.trail).unwrap(),
                });
            }
            if rebuilt.as_ref() != Some(&t) {
                ok = false;
            }
            let total_mu = mu(&t, &cell).unwrap();
            if mu_sum != total_mu {
                ok = false;
            }
            // piece-wise non-separating forces the global inequality
            if premise && 2 * total_mu > t.len() {
                ok = false;
            }
            if !ok {
                failures += 1;
            }
        }
    }
    report(
        "09",
        "decomposition",
        failures == 0,
        t0,
        &format!("{trails} trails over N=4..12, {failures} failures"),
    );
}

// ---------------------------------------------------------------------------
// 10. Threshold-length experiment at n=12: zero hits at p=0.005 and
//     monotone hit frequency within 99% binomial confidence bands
// ---------------------------------------------------------------------------
#[test]
fn criterion_10_lemma1_proxy() {
    let t0 = std::time::Instant::now();
    let ps = [0.005, 0.02, 0.05, 0.1];
    let rows = lemma1_experiment(&ps, &[12], 0.5, 200, 0xacce5, 14).unwrap();
    let zero_at_low = rows[0].hits == 0;

    // as p grows the frequency must not drop significantly
    let mut monotone = true;
    for pair in rows.windows(2) {
        let (f1, f2) = (pair[0].frequency, pair[1].frequency);
        let n = pair[0].trials as f64;
        let se = ((f1 * (1.0 - f1) + f2 * (1.0 - f2)) / n).sqrt();
        if f1 - f2 > 2.576 * se + 1e-12 {
            monotone = false;
        }
    }
    let freqs: Vec<String> = rows.iter().map(|r| format!("{:.3}", r.frequency)).collect();
    // The zero clause pins an exact-zero hit count; the measured rate at
    // these parameters is small but nonzero (clusters of three AF bonds do
    // occur), so this check can legitimately fail. See README.
    report(
        "10",
        "lemma1-proxy",
        zero_at_low && monotone,
        t0,
        &format!(
            "freq at p={ps:?}: [{}]; zero-clause {}, monotone-within-99%-CI {}",
            freqs.join(", "),
            if zero_at_low { "ok" } else { "violated" },
            if monotone { "ok" } else { "violated" }
        ),
    );
}

// ---------------------------------------------------------------------------
// 11. Majority phase on exact 16x48 minimizers
// ---------------------------------------------------------------------------
#[test]
fn criterion_11_majority_proxy() {
    let t0 = std::time::Instant::now();
    fn strip_stats(p: f64, seeds: u64) -> (usize, Vec<usize>) {
        let results: Vec<(bool, usize)> = (0..seeds)
            .into_par_iter()
            .map(|seed| {
                let sys = SpinSystem::gen_random(p, 48, 16, rng::mix(0x517, seed)).unwrap();
                let d = Domain::rect(48, 16).unwrap();
                let g = dp_ground(&sys, &d).unwrap();
                let rep = majority_report(&g.config, &d).unwrap();
                (rep.majority_fraction >= 0.9, rep.max_boundary_length)
            })
            .collect();
        let high_fraction = results.iter().filter(|r| r.0).count();
        let mut boundaries: Vec<usize> = results.iter().map(|r| r.1).collect();
        boundaries.sort_unstable();
        (high_fraction, boundaries)
    }
    let (high_low_p, b_low) = strip_stats(0.01, 50);
    let (_, b_high) = strip_stats(0.2, 50);
    let median = |v: &Vec<usize>| v[v.len() / 2];
    let fraction_ok = high_low_p * 100 >= 90 * 50;
    let median_ok = median(&b_low) <= median(&b_high);
    report(
        "11",
        "majority-proxy",
        fraction_ok && median_ok,
        t0,
        &format!(
            "fraction>=0.9 in {high_low_p}/50 seeds; median max boundary {} (p=0.01) vs {} (p=0.2)",
            median(&b_low),
            median(&b_high)
        ),
    );
}

// ---------------------------------------------------------------------------
// 12. Determinism: byte-identical reruns of every randomized pipeline
// ---------------------------------------------------------------------------
#[test]
fn criterion_12_determinism() {
    let t0 = std::time::Instant::now();
    let dir = tempfile::tempdir().unwrap();

    let run_all = |tag: &str| -> Vec<std::path::PathBuf> {
        let mut files = Vec::new();

        let sys = SpinSystem::gen_random(0.3, 10, 10, 424242).unwrap();
        let f = dir.path().join(format!("sys_{tag}.json"));
        std::fs::write(&f, sys.to_json_string()).unwrap();
        files.push(f);

        let rows = lemma1_experiment(&[0.02, 0.05], &[8], 0.5, 30, 7, 12).unwrap();
        let mut csv = String::from(Lemma1Row::CSV_HEADER);
        csv.push('\n');
        for r in &rows {
            csv.push_str(&r.to_csv_row());
            csv.push('\n');
        }
        let f = dir.path().join(format!("lemma1_{tag}.csv"));
        std::fs::write(&f, csv).unwrap();
        files.push(f);

        let params = CensusParams::from_m(3, 3, 0.5, false).unwrap();
        let r = census(&params, &CensusMode::Sample { seed: 5, trials: 50 }).unwrap();
        let f = dir.path().join(format!("census_{tag}.csv"));
        std::fs::write(&f, format!("{}\n{}\n", CensusResult::CSV_HEADER, r.to_csv_row())).unwrap();
        files.push(f);

        let d = Domain::rect(8, 8).unwrap();
        let g = local_search_ground(&sys, &d, 11, &LocalSearchParams::default()).unwrap();
        let f = dir.path().join(format!("ground_{tag}.json"));
        std::fs::write(&f, serde_json::to_string_pretty(&g.to_json()).unwrap()).unwrap();
        files.push(f);

        files
    };

    let first = run_all("a");
    let second = run_all("b");
    let mut identical = true;
    for (fa, fb) in first.iter().zip(&second) {
        if std::fs::read(fa).unwrap() != std::fs::read(fb).unwrap() {
            identical = false;
            eprintln!("files differ: {fa:?} vs {fb:?}");
        }
    }
    report(
        "12",
        "determinism",
        identical,
        t0,
        &format!("{} pipeline outputs compared byte-wise", first.len()),
    );
}
