//! Separating-trail detection and search, the exact tail probability against
//! its closed-form bound, trail counting, and the threshold-length
//! Monte-Carlo experiment.
//!
//! A trail γ of length k is separating when μ(γ) > k/2 (strict). Thresholds
//! use the natural logarithm.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{crossed_bond, mu, Bond, CouplingSource, Site, SiteRect, SpinSystem, Trail};
use crate::rng;

/// Default cap on exhaustive trail length.
pub const DEFAULT_SEARCH_CAP: usize = 14;
/// Exhaustive trail counting cap.
pub const TRAIL_COUNT_CAP: usize = 12;

/// Strict separating test: 2μ(γ) > l(γ).
pub fn is_separating<S: CouplingSource>(trail: &Trail, source: &S) -> Result<bool> {
    Ok(2 * mu(trail, source)? > trail.len())
}

#[derive(Clone, Debug)]
pub enum SearchMode {
    /// Complete branch-and-bound over edge-distinct trails with lengths in
    /// [min_len, cap]: found=false proves nonexistence up to the cap.
    Exhaustive,
    /// Greedy growth with random restarts; sound but incomplete.
    Heuristic { restarts: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub min_len: usize,
    pub cap: usize,
    pub mode: SearchMode,
}

impl SearchOptions {
    pub fn exhaustive(min_len: usize) -> SearchOptions {
        SearchOptions {
            min_len,
            cap: DEFAULT_SEARCH_CAP,
            mode: SearchMode::Exhaustive,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SeparatingSearchResult {
    pub found: bool,
    pub witness: Option<Trail>,
    /// DFS nodes visited (exhaustive) or growth steps (heuristic)
    pub explored: u64,
    /// "exhaustive" or "heuristic"
    pub mode: &'static str,
}

struct SegmentIndex {
    window: SiteRect,
    width: i64,
    height: i64,
}

// Trail segments joining window sites get dense indices so the DFS can use a
// plain bitmask vector instead of a hash set.
impl SegmentIndex {
    fn new(window: SiteRect) -> SegmentIndex {
        SegmentIndex {
            window,
            width: window.max.x - window.min.x + 1,
            height: window.max.y - window.min.y + 1,
        }
    }

    fn len(&self) -> usize {
        (((self.width - 1) * self.height) + (self.width * (self.height - 1))).max(0) as usize
    }

    fn index(&self, seg: &Bond) -> usize {
        let x = seg.origin.x - self.window.min.x;
        let y = seg.origin.y - self.window.min.y;
        match seg.axis {
            crate::lattice::Axis::Horizontal => (y * (self.width - 1) + x) as usize,
            crate::lattice::Axis::Vertical => {
                (((self.width - 1) * self.height) + y * self.width + x) as usize
            }
        }
    }
}

/// Searches for a separating trail whose sites all lie in `window`, of
/// length at least `min_len` and at most `cap`.
pub fn search_separating<S: CouplingSource + Sync>(
    source: &S,
    window: &SiteRect,
    opts: &SearchOptions,
) -> Result<SeparatingSearchResult> {
    if opts.min_len < 1 {
        return Err(Error::InvalidParameter("min_len must be >= 1".into()));
    }
    if opts.min_len > opts.cap {
        return Err(Error::Capacity(format!(
            "min_len {} exceeds the search cap {}",
            opts.min_len, opts.cap
        )));
    }
    match &opts.mode {
        SearchMode::Exhaustive => exhaustive_search(source, window, opts.min_len, opts.cap),
        SearchMode::Heuristic { restarts, seed } => {
            heuristic_search(source, window, opts.min_len, opts.cap, *restarts, *seed)
        }
    }
}

fn exhaustive_search<S: CouplingSource>(
    source: &S,
    window: &SiteRect,
    min_len: usize,
    cap: usize,
) -> Result<SeparatingSearchResult> {
    let idx = SegmentIndex::new(*window);
    let mut used = vec![false; idx.len()];
    let mut explored: u64 = 0;

    struct Dfs<'a, S: CouplingSource> {
        source: &'a S,
        window: SiteRect,
        idx: &'a SegmentIndex,
        min_len: usize,
        cap: usize,
        stack: Vec<Site>,
    }

    impl<'a, S: CouplingSource> Dfs<'a, S> {
        // returns Some(witness sites) when a separating trail is found
        fn go(
            &mut self,
            cur: Site,
            len: usize,
            af: usize,
            used: &mut [bool],
            explored: &mut u64,
        ) -> Result<Option<Vec<Site>>> {
            *explored += 1;
            if len >= self.min_len && 2 * af > len {
                return Ok(Some(self.stack.clone()));
            }
            if len == self.cap {
                return Ok(None);
            }
            // best continuation crosses AF bonds only: 2(af + r) > len + r
            // needs some final length l' > 2(len − af); prune when even the
            // cap cannot reach that
            if 2 * (len - af) >= self.cap {
                return Ok(None);
            }
            for next in cur.neighbors() {
                if !self.window.contains(next) {
                    continue;
                }
                let seg = Bond::new(cur, next).unwrap();
                let si = self.idx.index(&seg);
                if used[si] {
                    continue;
                }
                let crossed = crossed_bond(cur, next).unwrap();
                let af_step = if self.source.coupling(&crossed)? == -1 {
                    1
                } else {
                    0
                };
                used[si] = true;
                self.stack.push(next);
                let hit = self.go(next, len + 1, af + af_step, used, explored)?;
                self.stack.pop();
                used[si] = false;
                if hit.is_some() {
                    return Ok(hit);
                }
            }
            Ok(None)
        }
    }

    let mut dfs = Dfs {
        source,
        window: *window,
        idx: &idx,
        min_len,
        cap,
        stack: Vec::with_capacity(cap + 1),
    };
    for start in window.sites() {
        dfs.stack.clear();
        dfs.stack.push(start);
        if let Some(sites) = dfs.go(start, 0, 0, &mut used, &mut explored)? {
            let witness = Trail::new(sites)?;
            debug_assert!(is_separating(&witness, source)?);
            return Ok(SeparatingSearchResult {
                found: true,
                witness: Some(witness),
                explored,
                mode: "exhaustive",
            });
        }
    }
    Ok(SeparatingSearchResult {
        found: false,
        witness: None,
        explored,
        mode: "exhaustive",
    })
}

fn heuristic_search<S: CouplingSource>(
    source: &S,
    window: &SiteRect,
    min_len: usize,
    cap: usize,
    restarts: usize,
    seed: u64,
) -> Result<SeparatingSearchResult> {
    let mut r = ChaCha8Rng::seed_from_u64(rng::mix(seed, 0x5e47));
    let mut explored = 0u64;
    for _ in 0..restarts.max(1) {
        let x = r.gen_range(window.min.x..=window.max.x);
        let y = r.gen_range(window.min.y..=window.max.y);
        let mut sites = vec![Site::new(x, y)];
        let mut used = std::collections::BTreeSet::new();
        let mut af = 0usize;
        for len in 1..=cap {
            let cur = *sites.last().unwrap();
            // prefer AF-crossing steps, random tie-break
            let mut best: Vec<(i8, Site)> = Vec::new();
            for next in cur.neighbors() {
                if !window.contains(next) {
                    continue;
                }
                let seg = Bond::new(cur, next).unwrap();
                if used.contains(&seg) {
                    continue;
                }
                let c = source.coupling(&crossed_bond(cur, next).unwrap())?;
                best.push((c, next));
            }
            if best.is_empty() {
                break;
            }
            let min_c = best.iter().map(|(c, _)| *c).min().unwrap();
            let choices: Vec<Site> = best
                .iter()
                .filter(|(c, _)| *c == min_c)
                .map(|(_, s)| *s)
                .collect();
            let next = choices[r.gen_range(0..choices.len())];
            used.insert(Bond::new(cur, next).unwrap());
            if min_c == -1 {
                af += 1;
            }
            sites.push(next);
            explored += 1;
            if len >= min_len && 2 * af > len {
                let witness = Trail::new(sites)?;
                debug_assert!(is_separating(&witness, source)?);
                return Ok(SeparatingSearchResult {
                    found: true,
                    witness: Some(witness),
                    explored,
                    mode: "heuristic",
                });
            }
        }
    }
    Ok(SeparatingSearchResult {
        found: false,
        witness: None,
        explored,
        mode: "heuristic",
    })
}

use crate::combin::binomial;

/// Exact binomial tail P{μ > k/2} = Σ_{j=⌊k/2⌋+1}^{k} C(k,j) p^j (1−p)^{k−j}
/// in rational arithmetic.
pub fn tail_probability_exact(k: usize, p: &BigRational) -> BigRational {
    let one = BigRational::one();
    let q = &one - p;
    let mut total = BigRational::zero();
    for j in (k / 2 + 1)..=k {
        let c = BigRational::from_integer(binomial(k as u64, j as u64).into());
        total += c * pow_rational(p, j) * pow_rational(&q, k - j);
    }
    total
}

fn pow_rational(x: &BigRational, e: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Exact comparison of the tail against the bound p^{k/2}·2^k. For odd k the
/// bound is irrational, so both sides are squared: tail² ≤ p^k·4^k.
pub fn tail_bound_holds(k: usize, p: &BigRational) -> bool {
    let tail = tail_probability_exact(k, p);
    let rhs = pow_rational(p, k) * pow_rational(&BigRational::from_integer(4.into()), k);
    &tail * &tail <= rhs
}

/// Exact tail probability and the bound p^{k/2}·2^k (as f64), for a
/// probability given as f64 (converted to its exact binary rational).
pub fn separating_tail_probability(k: usize, p: f64) -> Result<(BigRational, f64)> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p={p} outside [0,1]")));
    }
    if k < 1 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let pr = BigRational::from_float(p)
        .ok_or_else(|| Error::InvalidParameter("p is not finite".into()))?;
    let exact = tail_probability_exact(k, &pr);
    let bound = p.powf(k as f64 / 2.0) * 2f64.powi(k as i32);
    Ok((exact, bound))
}

/// Exact count of edge-distinct walks of length k starting at the origin,
/// with the comparison bounds 3^k and 4·3^{k−1}.
#[derive(Clone, Copy, Debug)]
pub struct TrailCount {
    pub k: usize,
    pub count: u64,
    pub bound_3k: u64,
    pub bound_4_3k1: u64,
}

pub fn trail_count(k: usize) -> Result<TrailCount> {
    if k > TRAIL_COUNT_CAP {
        return Err(Error::Capacity(format!(
            "trail counting capped at k={TRAIL_COUNT_CAP}"
        )));
    }
    fn dfs(cur: Site, depth: usize, used: &mut std::collections::BTreeSet<Bond>) -> u64 {
        if depth == 0 {
            return 1;
        }
        let mut total = 0;
        for next in cur.neighbors() {
            let seg = Bond::new(cur, next).unwrap();
            if used.contains(&seg) {
                continue;
            }
            used.insert(seg);
            total += dfs(next, depth - 1, used);
            used.remove(&seg);
        }
        total
    }
    let mut used = std::collections::BTreeSet::new();
    let count = dfs(Site::new(0, 0), k, &mut used);
    Ok(TrailCount {
        k,
        count,
        bound_3k: 3u64.pow(k as u32),
        bound_4_3k1: if k == 0 { 1 } else { 4 * 3u64.pow(k as u32 - 1) },
    })
}

/// Threshold L = ⌈(ln n)^{1+κ}⌉.
pub fn threshold(n: f64, kappa: f64) -> Result<usize> {
    if !(n >= 2.0) {
        return Err(Error::InvalidParameter(format!("n={n} must be >= 2")));
    }
    if !(kappa >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "kappa={kappa} must be >= 0"
        )));
    }
    Ok(n.ln().powf(1.0 + kappa).ceil() as usize)
}

/// Union bound n²·Σ_{k≥L} (12√p)^k implied by the path-counting argument;
/// infinite (vacuous) when 12√p ≥ 1, i.e. when p exceeds p₀ = (1/12)².
pub fn lemma1_union_bound(p: f64, n: usize, threshold_len: usize) -> f64 {
    let r = 12.0 * p.sqrt();
    if r >= 1.0 {
        return f64::INFINITY;
    }
    (n as f64).powi(2) * r.powi(threshold_len as i32) / (1.0 - r)
}

/// One aggregated row of the threshold-length experiment.
#[derive(Clone, Debug)]
pub struct Lemma1Row {
    pub p: f64,
    pub n: usize,
    pub kappa: f64,
    pub threshold_len: usize,
    pub trials: usize,
    pub hits: usize,
    pub frequency: f64,
    pub union_bound: f64,
    pub mode: String,
}

impl Lemma1Row {
    pub const CSV_HEADER: &'static str = "p,n,kappa,L,trials,hits,frequency,union_bound,mode";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.p,
            self.n,
            self.kappa,
            self.threshold_len,
            self.trials,
            self.hits,
            self.frequency,
            self.union_bound,
            self.mode
        )
    }
}

/// For each (p, n) cell: draws `trials` random systems on Q_n = [0,n]² and
/// records how often a separating trail of length ≥ threshold(n, κ) exists
/// (exhaustive search within `cap`). Per-trial substreams are derived from
/// the seed and the cell values, so results do not depend on grid order or
/// parallel scheduling.
pub fn lemma1_experiment(
    ps: &[f64],
    ns: &[usize],
    kappa: f64,
    trials: usize,
    seed: u64,
    cap: usize,
) -> Result<Vec<Lemma1Row>> {
    let mut rows = Vec::new();
    for &p in ps {
        for &n in ns {
            let threshold_len = threshold(n as f64, kappa)?;
            if threshold_len > cap {
                return Err(Error::Capacity(format!(
                    "threshold {threshold_len} exceeds search cap {cap}"
                )));
            }
            let cell_seed = rng::mix(rng::mix(seed, p.to_bits()), n as u64);
            let hits: usize = (0..trials)
                .into_par_iter()
                .map(|t| -> Result<usize> {
                    // the window [0,n]² needs an (n+2)² system so every
                    // crossed bond stays inside
                    let sys =
                        SpinSystem::gen_random(p, n + 2, n + 2, rng::mix(cell_seed, t as u64))?;
                    let window = SiteRect::square(Site::new(0, 0), n as i64);
                    let r = search_separating(
                        &sys,
                        &window,
                        &SearchOptions {
                            min_len: threshold_len,
                            cap,
                            mode: SearchMode::Exhaustive,
                        },
                    )?;
                    Ok(r.found as usize)
                })
                .try_reduce(|| 0, |a, b| Ok(a + b))?;
            rows.push(Lemma1Row {
                p,
                n,
                kappa,
                threshold_len,
                trials,
                hits,
                frequency: hits as f64 / trials.max(1) as f64,
                union_bound: lemma1_union_bound(p, n, threshold_len),
                mode: format!("exhaustive(cap={cap})"),
            });
        }
    }
    Ok(rows)
}
