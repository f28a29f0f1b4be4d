//! Periodic spin systems: exact enumeration of cells with a fixed
//! antiferromagnetic count, the separating-trail census, the f/g/θ bound
//! chain, and the trail decomposition into period-sized windows.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::combin::{binomial, ln_biguint, FactorialTable};
use crate::error::{Error, Result};
use crate::lattice::{mu, Axis, Bond, CouplingSource, Provenance, Site, SiteRect, SpinSystem, Trail};
use crate::rng;
use crate::seppath::{search_separating, SearchMode, SearchOptions};

/// Exact enumeration cap on C(2N², m).
pub const CENSUS_EXACT_CAP: u64 = 10_000_000;

/// One period of an N-periodic coupling assignment: N² horizontal and N²
/// vertical couplings with periodic wrap. Canonical index order is the
/// horizontal block (row-major) then the vertical block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodCell {
    n: usize,
    h: Vec<i8>,
    v: Vec<i8>,
}

impl PeriodCell {
    pub fn new(n: usize, h: Vec<i8>, v: Vec<i8>) -> Result<PeriodCell> {
        if n == 0 {
            return Err(Error::InvalidParameter("period must be >= 1".into()));
        }
        if h.len() != n * n || v.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "period cell needs {}+{} couplings",
                n * n,
                n * n
            )));
        }
        if h.iter().chain(v.iter()).any(|&c| c != 1 && c != -1) {
            return Err(Error::InvalidParameter("couplings must be ±1".into()));
        }
        Ok(PeriodCell { n, h, v })
    }

    pub fn all_ferro(n: usize) -> PeriodCell {
        PeriodCell {
            n,
            h: vec![1; n * n],
            v: vec![1; n * n],
        }
    }

    /// Cell with −1 exactly at the given canonical bond indices (0..2N²).
    pub fn from_af_indices(n: usize, indices: &[usize]) -> Result<PeriodCell> {
        let mut cell = PeriodCell::all_ferro(n);
        for &i in indices {
            if i >= 2 * n * n {
                return Err(Error::InvalidParameter(format!(
                    "bond index {i} out of range"
                )));
            }
            if i < n * n {
                cell.h[i] = -1;
            } else {
                cell.v[i - n * n] = -1;
            }
        }
        Ok(cell)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bond_slots(&self) -> usize {
        2 * self.n * self.n
    }

    pub fn af_count(&self) -> usize {
        self.h.iter().chain(self.v.iter()).filter(|&&c| c == -1).count()
    }

    fn class_index(&self, bond: &Bond) -> usize {
        let n = self.n as i64;
        let x = bond.origin.x.rem_euclid(n) as usize;
        let y = bond.origin.y.rem_euclid(n) as usize;
        match bond.axis {
            Axis::Horizontal => y * self.n + x,
            Axis::Vertical => self.n * self.n + y * self.n + x,
        }
    }

    /// Short content id used in provenance records.
    pub fn cell_id(&self) -> String {
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |b: u8| {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
        };
        eat(self.n as u8);
        for &c in self.h.iter().chain(self.v.iter()) {
            eat(c as u8);
        }
        format!("{hash:016x}")
    }

    /// JSON form `{"N": int, "h": [...], "v": [...]}` in canonical bond order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "N": self.n, "h": self.h, "v": self.v })
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(value: &serde_json::Value) -> Result<PeriodCell> {
        #[derive(serde::Deserialize)]
        struct Raw {
            #[serde(rename = "N")]
            n: usize,
            h: Vec<i8>,
            v: Vec<i8>,
        }
        let raw: Raw = serde_json::from_value(value.clone())?;
        PeriodCell::new(raw.n, raw.h, raw.v)
    }

    pub fn from_json_str(s: &str) -> Result<PeriodCell> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}

impl CouplingSource for PeriodCell {
    fn coupling(&self, bond: &Bond) -> Result<i8> {
        let i = self.class_index(bond);
        Ok(if i < self.n * self.n {
            self.h[i]
        } else {
            self.v[i - self.n * self.n]
        })
    }
}

/// Tiles a period cell over a finite window.
pub fn gen_periodic(cell: &PeriodCell, width: usize, height: usize) -> Result<SpinSystem> {
    let n = cell.n();
    if width < n || height < n {
        return Err(Error::InvalidParameter(format!(
            "window {width}x{height} smaller than the {n}-periodic cell"
        )));
    }
    let mut h = Vec::with_capacity((width - 1) * height);
    for y in 0..height as i64 {
        for x in 0..width as i64 - 1 {
            h.push(cell.coupling(&Bond::horizontal(x, y))?);
        }
    }
    let mut v = Vec::with_capacity(width * (height - 1));
    for y in 0..height as i64 - 1 {
        for x in 0..width as i64 {
            v.push(cell.coupling(&Bond::vertical(x, y))?);
        }
    }
    SpinSystem::with_provenance(
        width,
        height,
        h,
        v,
        Provenance::Periodic {
            n,
            cell_id: cell.cell_id(),
        },
    )
}

/// Search cap giving complete enumeration over the (N+1)² period square:
/// no edge-distinct trail in it is longer than its segment count.
pub fn full_period_cap(n: usize) -> usize {
    2 * n * (n + 1)
}

/// Whether the cell admits a separating trail of length ≥ ⌈λN⌉ with all
/// sites in [0,N]² (or in some translate z+[0,N)², z ∈ [0,N)², when
/// `translate` is set; larger z are equivalent by periodicity).
pub fn is_bad_cell(cell: &PeriodCell, lambda: f64, translate: bool, cap: usize) -> Result<bool> {
    let n = cell.n();
    let min_len = min_trail_len(lambda, n);
    let opts = SearchOptions {
        min_len,
        cap,
        mode: SearchMode::Exhaustive,
    };
    if translate {
        for zx in 0..n as i64 {
            for zy in 0..n as i64 {
                let window = SiteRect::square(Site::new(zx, zy), n as i64);
                if search_separating(cell, &window, &opts)?.found {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    } else {
        let window = SiteRect::square(Site::new(0, 0), n as i64);
        Ok(search_separating(cell, &window, &opts)?.found)
    }
}

/// Smallest integer trail length admitted by the census: k ≥ λN.
pub fn min_trail_len(lambda: f64, n: usize) -> usize {
    ((lambda * n as f64).ceil() as usize).max(1)
}

/// ⌊2pN²⌋ with a guard against float dust just below integers.
pub fn af_count_for(p: f64, n: usize) -> usize {
    let x = 2.0 * p * (n * n) as f64;
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.floor() as usize
    }
}

#[derive(Clone, Debug)]
pub struct CensusParams {
    pub n: usize,
    /// AF bond count per period
    pub m: usize,
    /// target proportion (reported; p_n is the realized one)
    pub p: f64,
    pub p_n: f64,
    pub lambda: f64,
    pub translate: bool,
    pub search_cap: usize,
}

impl CensusParams {
    pub fn from_p(n: usize, p: f64, lambda: f64, translate: bool) -> Result<CensusParams> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("p={p} outside [0,1]")));
        }
        Self::from_m(n, af_count_for(p, n), lambda, translate).map(|mut c| {
            c.p = p;
            c
        })
    }

    pub fn from_m(n: usize, m: usize, lambda: f64, translate: bool) -> Result<CensusParams> {
        if n == 0 {
            return Err(Error::InvalidParameter("period must be >= 1".into()));
        }
        if m > 2 * n * n {
            return Err(Error::InvalidParameter(format!(
                "m={m} exceeds the {} bonds of one period",
                2 * n * n
            )));
        }
        if !(0.0 < lambda && lambda < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda={lambda} outside (0,1)"
            )));
        }
        let p_n = m as f64 / (2 * n * n) as f64;
        Ok(CensusParams {
            n,
            m,
            p: p_n,
            p_n,
            lambda,
            translate,
            search_cap: full_period_cap(n).min(crate::seppath::DEFAULT_SEARCH_CAP),
        })
    }

    pub fn min_len(&self) -> usize {
        min_trail_len(self.lambda, self.n)
    }
}

#[derive(Clone, Debug)]
pub enum CensusMode {
    Exact,
    Sample { seed: u64, trials: usize },
}

#[derive(Clone, Debug)]
pub struct CensusResult {
    pub params: CensusParams,
    /// |C_p(N)| = C(2N², m), exact
    pub total: BigUint,
    /// exact |B| in exact mode; rounded estimate ratio·total when sampled
    pub bad: BigUint,
    /// (hits, trials) in sampled mode
    pub sample: Option<(usize, usize)>,
    pub ratio: f64,
    /// 95% normal-approximation half width of the sampled ratio
    pub ci95_half_width: Option<f64>,
    /// evaluation of the closing estimate; infinite when 3θ(p) ≥ 1
    pub bound_value: f64,
    pub mode: String,
}

impl CensusResult {
    pub const CSV_HEADER: &'static str =
        "N,m,p,lambda,strict,translate,total,bad,ratio,bound,mode,trials";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},true,{},{},{},{},{},{},{}",
            self.params.n,
            self.params.m,
            self.params.p,
            self.params.lambda,
            self.params.translate,
            self.total,
            self.bad,
            self.ratio,
            self.bound_value,
            self.mode,
            self.sample.map(|(_, t)| t).unwrap_or(0),
        )
    }
}

fn bound_for(params: &CensusParams) -> f64 {
    if params.p <= 0.0 {
        0.0
    } else if params.p >= 0.5 {
        f64::INFINITY
    } else {
        stima_bound(params.n, params.p, params.lambda).unwrap_or(f64::INFINITY)
    }
}

/// Lexicographic unranking of the rank-th m-subset of {0..n_items}.
/// Only valid when C(n_items, m) fits the exact cap, so u64 suffices.
fn unrank_combination(mut rank: u64, n_items: usize, m: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(m);
    let mut a = 0usize;
    let mut left = m;
    while left > 0 {
        let c = binomial((n_items - 1 - a) as u64, (left - 1) as u64)
            .to_u64()
            .expect("within exact cap");
        if rank < c {
            out.push(a);
            left -= 1;
        } else {
            rank -= c;
        }
        a += 1;
    }
    out
}

/// Counts (exactly or by sampling) the N-periodic cells with m AF bonds that
/// admit a separating trail of length ≥ ⌈λN⌉ in the period square.
pub fn census(params: &CensusParams, mode: &CensusMode) -> Result<CensusResult> {
    let slots = 2 * params.n * params.n;
    let total = binomial(slots as u64, params.m as u64);
    let bound_value = bound_for(params);
    match mode {
        CensusMode::Exact => {
            let count = total.to_u64().filter(|&c| c <= CENSUS_EXACT_CAP).ok_or_else(|| {
                Error::Capacity(format!(
                    "exact census needs C({slots},{}) <= {CENSUS_EXACT_CAP}",
                    params.m
                ))
            })?;
            let bad: u64 = (0..count)
                .into_par_iter()
                .map(|rank| -> Result<u64> {
                    let subset = unrank_combination(rank, slots, params.m);
                    let cell = PeriodCell::from_af_indices(params.n, &subset)?;
                    Ok(is_bad_cell(&cell, params.lambda, params.translate, params.search_cap)?
                        as u64)
                })
                .try_reduce(|| 0, |a, b| Ok(a + b))?;
            let ratio = if count == 0 { 0.0 } else { bad as f64 / count as f64 };
            Ok(CensusResult {
                params: params.clone(),
                total,
                bad: BigUint::from(bad),
                sample: None,
                ratio,
                ci95_half_width: None,
                bound_value,
                mode: format!("exact(cap={})", params.search_cap),
            })
        }
        CensusMode::Sample { seed, trials } => {
            let hits: usize = (0..*trials)
                .into_par_iter()
                .map(|t| -> Result<usize> {
                    let mut r = ChaCha8Rng::seed_from_u64(rng::mix(*seed, t as u64));
                    // partial Fisher–Yates draw of a uniform m-subset
                    let mut items: Vec<usize> = (0..slots).collect();
                    for i in 0..params.m {
                        let j = r.gen_range(i..slots);
                        items.swap(i, j);
                    }
                    let cell = PeriodCell::from_af_indices(params.n, &items[..params.m])?;
                    Ok(is_bad_cell(&cell, params.lambda, params.translate, params.search_cap)?
                        as usize)
                })
                .try_reduce(|| 0, |a, b| Ok(a + b))?;
            let ratio = hits as f64 / (*trials).max(1) as f64;
            let ci = 1.96 * (ratio * (1.0 - ratio) / (*trials).max(1) as f64).sqrt();
            // rounded point estimate of |B|
            let bad = if total.bits() <= 52 {
                let t = total.to_f64().unwrap();
                BigUint::from((ratio * t).round() as u64)
            } else {
                // ratio scaled through integer arithmetic for huge totals
                let scaled = (&total * BigUint::from((ratio * 1e9).round() as u64))
                    / BigUint::from(1_000_000_000u64);
                scaled
            };
            Ok(CensusResult {
                params: params.clone(),
                total,
                bad,
                sample: Some((hits, *trials)),
                ratio,
                ci95_half_width: Some(ci),
                bound_value,
                mode: format!("sample(cap={})", params.search_cap),
            })
        }
    }
}

/// Number of cells in C_p(N) for which a fixed trail of length k crossing k
/// distinct bond classes is separating:
/// Σ_{j=j₀}^{min(k,m)} C(k,j)·C(2N²−k, m−j), with j₀ = ⌈k/2⌉ in the
/// paper-literal variant (`strict = false`) and ⌊k/2⌋+1 in the strict one.
pub fn f_p(k: usize, n: usize, m: usize, strict: bool) -> BigUint {
    let slots = 2 * n * n;
    if k > slots {
        return BigUint::zero();
    }
    let j0 = if strict { k / 2 + 1 } else { k.div_ceil(2) };
    let hi = k.min(m);
    let mut total = BigUint::zero();
    for j in j0..=hi {
        if m - j > slots - k {
            continue;
        }
        total += binomial(k as u64, j as u64) * binomial((slots - k) as u64, (m - j) as u64);
    }
    total
}

/// g_p(k,N) = C(m, k/2)·C(2N²−m, k/2)·C(2N², k)^{-1}, exact rational.
/// Defined for even k only (the paper's binomials take k/2 entries).
pub fn g_p(k: usize, n: usize, m: usize) -> Result<BigRational> {
    if k % 2 != 0 {
        return Err(Error::Domain(format!(
            "g_p is defined for even k only (got {k})"
        )));
    }
    let slots = 2 * n * n;
    if k > slots {
        return Err(Error::InvalidParameter(format!(
            "k={k} exceeds the {slots} bonds of one period"
        )));
    }
    let num = binomial(m as u64, (k / 2) as u64) * binomial((slots - m) as u64, (k / 2) as u64);
    let den = binomial(slots as u64, k as u64);
    Ok(BigRational::new(num.into(), den.into()))
}

#[derive(Clone, Copy, Debug)]
pub struct ThetaBounds {
    /// θ(p) = 2e√(p(1−p))
    pub theta: f64,
    /// C(p) = 32p²(1−p)/e
    pub c_of_p: f64,
    pub three_theta: f64,
}

pub fn theta_and_bounds(p: f64) -> Result<ThetaBounds> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::Domain(format!("theta requires 0 < p < 1/2, got {p}")));
    }
    let e = std::f64::consts::E;
    let theta = 2.0 * e * (p * (1.0 - p)).sqrt();
    let c_of_p = 32.0 * p * p * (1.0 - p) / e;
    Ok(ThetaBounds {
        theta,
        c_of_p,
        three_theta: 3.0 * theta,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct LemmaGRow {
    pub n: usize,
    pub p: f64,
    pub m: usize,
    pub k: usize,
    pub ln_g: f64,
    pub ln_bound: f64,
    /// ln_bound − ln_g
    pub slack: f64,
    pub pass: bool,
    /// k = 4 p_N N² (= 2m), the separately-proved branch
    pub endpoint: bool,
}

/// Checks g_p(k,N) ≤ C(p)·N⁸·θ(p)^k for every even k ≤ 2m over the grid.
/// g is evaluated from exact binomials; the comparison runs in log space
/// (the only rounding is the final ln, ~1e-13 relative).
pub fn lemma_g_check(n_range: &[usize], p_grid: &[f64]) -> Result<Vec<LemmaGRow>> {
    let max_slots = n_range.iter().map(|&n| 2 * n * n).max().unwrap_or(0);
    let table = FactorialTable::up_to(max_slots);
    let mut rows = Vec::new();
    for &p in p_grid {
        let tb = theta_and_bounds(p)?;
        let ln_c = tb.c_of_p.ln();
        let ln_theta = tb.theta.ln();
        for &n in n_range {
            let slots = 2 * n * n;
            let m = af_count_for(p, n);
            for k in (0..=2 * m).step_by(2) {
                let num =
                    table.binomial(m, k / 2) * table.binomial(slots - m, k / 2);
                let den = table.binomial(slots, k);
                let ln_g = ln_biguint(&num) - ln_biguint(&den);
                let ln_bound = ln_c + 8.0 * (n as f64).ln() + k as f64 * ln_theta;
                let tol = 1e-9 * ln_bound.abs().max(1.0);
                let slack = ln_bound - ln_g;
                rows.push(LemmaGRow {
                    n,
                    p,
                    m,
                    k,
                    ln_g,
                    ln_bound,
                    slack,
                    pass: ln_g <= ln_bound + tol,
                    endpoint: k == 2 * m,
                });
            }
        }
    }
    Ok(rows)
}

/// The closing estimate 2·C(p)·N¹²·((3θ(p))^{2^{m(λ)}})^N with
/// m(λ) = ⌊log₂λ⌋ − 1. Returns +∞ when 3θ(p) ≥ 1 (vacuous bound).
pub fn stima_bound(n: usize, p: f64, lambda: f64) -> Result<f64> {
    if !(0.0 < lambda && lambda < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda={lambda} outside (0,1)"
        )));
    }
    let tb = theta_and_bounds(p)?;
    if tb.three_theta >= 1.0 {
        return Ok(f64::INFINITY);
    }
    let m_lambda = lambda.log2().floor() as i32 - 1;
    let exponent = 2f64.powi(m_lambda);
    Ok(2.0 * tb.c_of_p * (n as f64).powi(12) * tb.three_theta.powf(exponent * n as f64))
}

/// A decomposition piece with the origin of the period window that contains
/// all its sites.
#[derive(Clone, Debug)]
pub struct TrailPiece {
    pub trail: Trail,
    pub window_origin: Site,
}

impl TrailPiece {
    pub fn window(&self, n: usize) -> SiteRect {
        SiteRect::square(self.window_origin, n as i64)
    }
}

/// Splits a trail of length k ≥ N/2 into consecutive pieces of length
/// ≥ N/2, each contained in a period window z_t+[0,N]². Cut indices follow
/// the even/odd construction (s_t = tN/2 resp. t(N+1)/2); each declared
/// origin starts from the construction's anchor and is clamped per axis onto
/// the piece's bounding box, which always fits because a piece spans at most
/// N+1 sites per axis.
pub fn decompose_trail(trail: &Trail, n: usize) -> Result<Vec<TrailPiece>> {
    if n == 0 {
        return Err(Error::InvalidParameter("period must be >= 1".into()));
    }
    let k = trail.len();
    if 2 * k < n {
        return Err(Error::InvalidParameter(format!(
            "trail length {k} is below N/2 = {n}/2"
        )));
    }
    let even = n % 2 == 0;
    let half = if even { n / 2 } else { (n + 1) / 2 };
    let q = if even { 2 * k / n } else { 2 * k / (n + 1) };
    let offset = if even { (n / 2) as i64 } else { ((n - 1) / 2) as i64 };

    let mut pieces = Vec::with_capacity(q);
    for t in 1..=q {
        let from = (t - 1) * half;
        let to = if t == q { k } else { t * half };
        let sub = trail.slice(from, to)?;
        let anchor = if t < q {
            trail.sites()[from]
        } else if even {
            trail.sites()[q * half]
        } else {
            trail.sites()[q * half - 1]
        };
        let mut z = Site::new(anchor.x - offset, anchor.y - offset);
        let min_x = sub.sites().iter().map(|s| s.x).min().unwrap();
        let max_x = sub.sites().iter().map(|s| s.x).max().unwrap();
        let min_y = sub.sites().iter().map(|s| s.y).min().unwrap();
        let max_y = sub.sites().iter().map(|s| s.y).max().unwrap();
        z.x = z.x.clamp(max_x - n as i64, min_x);
        z.y = z.y.clamp(max_y - n as i64, min_y);
        pieces.push(TrailPiece {
            trail: sub,
            window_origin: z,
        });
    }
    Ok(pieces)
}

/// Verdict of the no-long-separating-path check for a cell outside
/// B̃^{1/2}(N).
#[derive(Clone, Debug)]
pub struct GlobaleVerdict {
    /// no separating trail of length > N/2 found up to the cap
    pub none_found: bool,
    pub searched_cap: usize,
    pub explored: u64,
    /// random trails whose decomposition was cross-checked
    pub trails_checked: usize,
    /// every piece satisfied 2μ ≤ l and the pieces reassembled the whole
    pub decomposition_ok: bool,
}

/// Verifies on a tiled window that a cell outside B̃^{1/2}(N) admits no
/// separating trail of length greater than N/2 (exhaustive within `cap`),
/// and cross-checks the decomposition argument on seeded random trails:
/// piece-wise 2μ ≤ l forces the global inequality.
pub fn globale_check(
    cell: &PeriodCell,
    window_sites: usize,
    cap: usize,
    seed: u64,
) -> Result<GlobaleVerdict> {
    let n = cell.n();
    if window_sites < n + 1 {
        return Err(Error::InvalidParameter(
            "window must cover at least one period square".into(),
        ));
    }
    if is_bad_cell(cell, 0.5, true, full_period_cap(n))? {
        return Err(Error::Precondition(
            "cell belongs to B̃^{1/2}(N); the premise excludes it".into(),
        ));
    }
    let min_len = n / 2 + 1; // strictly greater than N/2
    let window = SiteRect::new(
        Site::new(0, 0),
        Site::new(window_sites as i64 - 1, window_sites as i64 - 1),
    )?;
    let search = search_separating(
        cell,
        &window,
        &SearchOptions {
            min_len,
            cap,
            mode: SearchMode::Exhaustive,
        },
    )?;

    let mut r = ChaCha8Rng::seed_from_u64(rng::mix(seed, 0x91a7));
    let mut trails_checked = 0usize;
    let mut decomposition_ok = true;
    for _ in 0..50 {
        let len = r.gen_range(min_len..=cap.max(min_len));
        if let Some(t) = Trail::random(&window, len, &mut r) {
            let total_mu = mu(&t, cell)?;
            let pieces = decompose_trail(&t, n)?;
            let mut mu_sum = 0usize;
            for piece in &pieces {
                let w = piece.window(n);
                if !piece.trail.sites().iter().all(|s| w.contains(*s)) {
                    decomposition_ok = false;
                }
                let pm = mu(&piece.trail, cell)?;
                mu_sum += pm;
                // outside B̃^{1/2}(N) no piece may be separating
                if 2 * pm > piece.trail.len() {
                    decomposition_ok = false;
                }
            }
            if mu_sum != total_mu || 2 * total_mu > t.len() {
                decomposition_ok = false;
            }
            trails_checked += 1;
        }
    }

    Ok(GlobaleVerdict {
        none_found: !search.found,
        searched_cap: cap,
        explored: search.explored,
        trails_checked,
        decomposition_ok,
    })
}
