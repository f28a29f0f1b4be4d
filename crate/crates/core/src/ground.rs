//! Exact and heuristic minimization of the spin energy.
//!
//! `brute_force_ground` and `dp_ground` are exact and return the canonical
//! minimizer: among all minimizers whose value at the lexicographically
//! smallest site is +1, the one whose value string (canonical site order,
//! −1 < +1) is lexicographically smallest. `local_search_ground` is a
//! seeded annealer over single-site and minority-component flips; its
//! results are always marked non-optimal.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{energy, Bond, CouplingSource, Domain, Site, SpinConfig, SpinSystem};
use crate::rng;

/// Site cap for exhaustive enumeration.
pub const DEFAULT_BRUTE_SITE_CAP: usize = 26;
/// Cap on the shorter side of the rectangle for the column-sweep DP.
pub const DEFAULT_DP_STRIP_CAP: usize = 20;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Dp,
    Local,
}

/// A minimizer (or best-found configuration) together with its energy.
#[derive(Clone, Debug)]
pub struct GroundStateResult {
    pub config: SpinConfig,
    pub energy: i64,
    pub method: Method,
    /// true for brute/dp: no configuration has strictly lower energy
    pub optimal: bool,
}

impl GroundStateResult {
    /// JSON form: `{"energy", "optimal", "method", "spins"}` with a row-major
    /// spin grid for rectangular domains, or a site list for masks.
    pub fn to_json(&self) -> serde_json::Value {
        let spins = match self.config.to_grid() {
            Ok(grid) => serde_json::json!(grid),
            Err(_) => {
                let sites: Vec<serde_json::Value> = self
                    .config
                    .sites()
                    .iter()
                    .zip(self.config.values())
                    .map(|(s, v)| serde_json::json!([s.x, s.y, v]))
                    .collect();
                serde_json::json!({ "sites": sites })
            }
        };
        serde_json::json!({
            "energy": self.energy,
            "optimal": self.optimal,
            "method": self.method,
            "spins": spins,
        })
    }
}

/// Per-site adjacency restricted to the domain: (site index, coupling).
fn domain_adjacency(system: &SpinSystem, domain: &Domain) -> Result<Vec<Vec<(usize, i64)>>> {
    if !domain.fits_window(system.width(), system.height()) {
        return Err(Error::Domain("domain exceeds the system window".into()));
    }
    let sites = domain.sites();
    let index_of = |s: Site| sites.binary_search(&s).ok();
    let mut adj = vec![Vec::new(); sites.len()];
    for (i, s) in sites.iter().enumerate() {
        for n in s.neighbors() {
            if let Some(j) = index_of(n) {
                let c = system.coupling(&Bond::new(*s, n).unwrap())? as i64;
                adj[i].push((j, c));
            }
        }
    }
    Ok(adj)
}

pub fn brute_force_ground(system: &SpinSystem, domain: &Domain) -> Result<GroundStateResult> {
    brute_force_ground_capped(system, domain, DEFAULT_BRUTE_SITE_CAP)
}

/// Exhaustive scan over all configurations with the first spin pinned to +1
/// (energy is invariant under global flip), enumerated in Gray-code order
/// with incremental energy updates.
pub fn brute_force_ground_capped(
    system: &SpinSystem,
    domain: &Domain,
    cap: usize,
) -> Result<GroundStateResult> {
    let n = domain.site_count();
    if n > cap {
        return Err(Error::Capacity(format!(
            "brute force limited to {cap} sites, domain has {n}"
        )));
    }
    let adj = domain_adjacency(system, domain)?;

    let mut values = vec![1i8; n];
    let mut e: i64 = {
        let u = SpinConfig::new(domain.clone(), values.clone())?;
        energy(&u, system, domain)?
    };
    let mut best_e = e;
    let mut best_values = values.clone();

    if n > 1 {
        let steps: u64 = 1u64 << (n - 1);
        for t in 1..steps {
            // Gray code over sites 1..n; site 0 stays pinned at +1.
            let flip = t.trailing_zeros() as usize + 1;
            let mut delta = 0i64;
            for &(j, c) in &adj[flip] {
                delta += c * values[flip] as i64 * values[j] as i64;
            }
            e += 2 * delta;
            values[flip] = -values[flip];
            if e < best_e || (e == best_e && values < best_values) {
                best_e = e;
                best_values.clone_from(&values);
            }
        }
    }

    let config = SpinConfig::new(domain.clone(), best_values)?;
    debug_assert_eq!(energy(&config, system, domain)?, best_e);
    Ok(GroundStateResult {
        config,
        energy: best_e,
        method: Method::Brute,
        optimal: true,
    })
}

pub fn dp_ground(system: &SpinSystem, domain: &Domain) -> Result<GroundStateResult> {
    dp_ground_capped(system, domain, DEFAULT_DP_STRIP_CAP)
}

/// Column-sweep dynamic program over 2^m states, m = column height. Exact on
/// rectangles whose shorter side is at most `cap`; reconstructs the same
/// canonical minimizer as brute force.
pub fn dp_ground_capped(
    system: &SpinSystem,
    domain: &Domain,
    cap: usize,
) -> Result<GroundStateResult> {
    let (w, h) = match domain {
        Domain::Rect { width, height } => (*width, *height),
        Domain::Mask(_) => {
            return Err(Error::Domain("dp solver requires a rectangular domain".into()))
        }
    };
    if !domain.fits_window(system.width(), system.height()) {
        return Err(Error::Domain("domain exceeds the system window".into()));
    }
    if w.min(h) > cap {
        return Err(Error::Capacity(format!(
            "dp strip cap is {cap}, shorter side is {}",
            w.min(h)
        )));
    }

    // The sweep runs column-major, which matches the canonical site order and
    // makes the lexicographic reconstruction exact. Transpose only when the
    // height alone exceeds the cap; the overlap with brute-force-solvable
    // domains is then width 1, where both orders coincide.
    if h > cap {
        let (th, tv) = transpose_couplings(system, w, h)?;
        let tsys = SpinSystem::explicit(h, w, th, tv)?;
        let tdomain = Domain::rect(h, w)?;
        let solved = dp_solve(&tsys, &tdomain, h, w)?;
        let grid = solved.config.to_grid()?;
        let mut back = vec![vec![0i8; w]; h];
        for (y, row) in grid.iter().enumerate() {
            for (x, &s) in row.iter().enumerate() {
                back[x][y] = s;
            }
        }
        let config = SpinConfig::from_grid(&back)?;
        let e = energy(&config, system, domain)?;
        debug_assert_eq!(e, solved.energy);
        return Ok(GroundStateResult {
            config,
            energy: solved.energy,
            method: Method::Dp,
            optimal: true,
        });
    }
    dp_solve(system, domain, w, h)
}

/// Couplings of the transposed system (width h, height w): site (x,y) maps
/// to (y,x), so horizontal and vertical bonds swap roles.
fn transpose_couplings(system: &SpinSystem, w: usize, h: usize) -> Result<(Vec<i8>, Vec<i8>)> {
    let mut th = vec![1i8; (h - 1) * w];
    let mut tv = vec![1i8; h * (w - 1)];
    for ty in 0..w as i64 {
        for tx in 0..h as i64 - 1 {
            // transposed (tx,ty)-(tx+1,ty) = original vertical (ty,tx)-(ty,tx+1)
            th[ty as usize * (h - 1) + tx as usize] = system.coupling(&Bond::vertical(ty, tx))?;
        }
    }
    for ty in 0..w as i64 - 1 {
        for tx in 0..h as i64 {
            // transposed (tx,ty)-(tx,ty+1) = original horizontal (ty,tx)-(ty+1,tx)
            tv[ty as usize * h + tx as usize] = system.coupling(&Bond::horizontal(ty, tx))?;
        }
    }
    Ok((th, tv))
}

const INF: i64 = i64::MAX / 4;

/// spin encoded as bit: 0 → +1, 1 → −1
fn spin_of_bit(bit: u32) -> i64 {
    1 - 2 * bit as i64
}

fn dp_solve(system: &SpinSystem, domain: &Domain, w: usize, h: usize) -> Result<GroundStateResult> {
    let m = h;
    let states: usize = 1usize << m;
    if states
        .checked_mul((w + 1) * 8)
        .map(|bytes| bytes > 6 << 30)
        .unwrap_or(true)
    {
        return Err(Error::Capacity(format!(
            "dp table for {w}x{h} would exceed the memory budget"
        )));
    }

    let ch = |x: usize, y: usize| -> i64 {
        system
            .coupling(&Bond::horizontal(x as i64, y as i64))
            .expect("bond in window") as i64
    };
    let cv = |x: usize, y: usize| -> i64 {
        system
            .coupling(&Bond::vertical(x as i64, y as i64))
            .expect("bond in window") as i64
    };

    // Window state during the sweep: bit y holds, for rows below the cursor,
    // the spin already chosen in the current column, and for rows at or above
    // it, the spin of the previous column. Placing site (x,y) with bit b
    // pays the horizontal bond to (x-1,y) (old bit y) and the vertical bond
    // to (x,y-1) (new bit y-1).
    let step_cost = |x: usize, y: usize, window: usize, b: u32| -> i64 {
        let mut cost = 0i64;
        if x > 0 {
            let prev = ((window >> y) & 1) as u32;
            cost -= ch(x - 1, y) * spin_of_bit(prev) * spin_of_bit(b);
        }
        if y > 0 {
            let below = ((window >> (y - 1)) & 1) as u32;
            cost -= cv(x, y - 1) * spin_of_bit(below) * spin_of_bit(b);
        }
        cost
    };

    // Backward pass: col_to_go[x][s] = minimal cost of all bonds paid while
    // placing columns x.. , given the window equals s when column x starts.
    let mut col_to_go: Vec<Vec<i64>> = vec![vec![0; states]; w + 1];
    for x in (0..w).rev() {
        let mut next = col_to_go[x + 1].clone();
        for y in (0..m).rev() {
            let mut cur = vec![INF; states];
            for (s, slot) in cur.iter_mut().enumerate() {
                let mut best = INF;
                for b in 0..2u32 {
                    let s2 = (s & !(1 << y)) | ((b as usize) << y);
                    let c = step_cost(x, y, s, b) + next[s2];
                    if c < best {
                        best = c;
                    }
                }
                *slot = best;
            }
            next = cur;
        }
        col_to_go[x] = next;
    }

    let total = col_to_go[0][0];

    // Greedy reconstruction in canonical order: pick −1 whenever it still
    // completes to the optimum; the smallest site is pinned to +1.
    let mut values = vec![0i8; w * m];
    let mut window: usize = 0;
    let mut prefix: i64 = 0;
    for x in 0..w {
        // rebuild the within-column cost-to-go tables from col_to_go[x+1]
        let mut tables: Vec<Vec<i64>> = vec![Vec::new(); m + 1];
        tables[m] = col_to_go[x + 1].clone();
        for y in (0..m).rev() {
            let mut cur = vec![INF; states];
            for (s, slot) in cur.iter_mut().enumerate() {
                let mut best = INF;
                for b in 0..2u32 {
                    let s2 = (s & !(1 << y)) | ((b as usize) << y);
                    let c = step_cost(x, y, s, b) + tables[y + 1][s2];
                    if c < best {
                        best = c;
                    }
                }
                *slot = best;
            }
            tables[y] = cur;
        }
        for y in 0..m {
            let choose = |b: u32, window: usize, prefix: i64| -> bool {
                let s2 = (window & !(1 << y)) | ((b as usize) << y);
                prefix + step_cost(x, y, window, b) + tables[y + 1][s2] == total
            };
            let b = if x == 0 && y == 0 {
                debug_assert!(choose(0, window, prefix), "pinned spin must stay optimal");
                0
            } else if choose(1, window, prefix) {
                1
            } else {
                debug_assert!(choose(0, window, prefix));
                0
            };
            prefix += step_cost(x, y, window, b);
            window = (window & !(1 << y)) | ((b as usize) << y);
            values[x * m + y] = if b == 0 { 1 } else { -1 };
        }
    }
    debug_assert_eq!(prefix, total);

    let config = SpinConfig::new(domain.clone(), values)?;
    debug_assert_eq!(energy(&config, system, domain)?, total);
    Ok(GroundStateResult {
        config,
        energy: total,
        method: Method::Dp,
        optimal: true,
    })
}

/// Annealing schedule. `steps: None` uses the default budget of 10^5
/// proposals per 256 sites.
#[derive(Clone, Debug)]
pub struct LocalSearchParams {
    pub steps: Option<u64>,
    pub t_start: f64,
    pub t_end: f64,
    /// probability of proposing a connected-component flip instead of a
    /// single-site flip
    pub component_move_prob: f64,
}

impl Default for LocalSearchParams {
    fn default() -> Self {
        LocalSearchParams {
            steps: None,
            t_start: 2.5,
            t_end: 0.05,
            component_move_prob: 0.1,
        }
    }
}

fn default_steps(sites: usize) -> u64 {
    let blocks = sites.div_ceil(256).max(1) as u64;
    blocks * 100_000
}

/// Simulated annealing over single-site flips plus connected same-spin
/// component flips, starting from the constant +1 configuration. The result
/// never exceeds the starting energy and is marked non-optimal.
pub fn local_search_ground(
    system: &SpinSystem,
    domain: &Domain,
    seed: u64,
    params: &LocalSearchParams,
) -> Result<GroundStateResult> {
    let adj = domain_adjacency(system, domain)?;
    let sites = domain.sites();
    let n = sites.len();
    let mut r = ChaCha8Rng::seed_from_u64(rng::mix(seed, 0x10ca1));

    let mut values = vec![1i8; n];
    let mut e = energy(
        &SpinConfig::new(domain.clone(), values.clone())?,
        system,
        domain,
    )?;
    let mut best = values.clone();
    let mut best_e = e;

    let flip_delta = |values: &[i8], i: usize| -> i64 {
        let mut d = 0i64;
        for &(j, c) in &adj[i] {
            d += c * values[i] as i64 * values[j] as i64;
        }
        2 * d
    };

    let steps = params.steps.unwrap_or_else(|| default_steps(n));
    let ratio = if params.t_start > 0.0 {
        (params.t_end / params.t_start).max(1e-12)
    } else {
        1.0
    };
    for t in 0..steps {
        let frac = if steps > 1 {
            t as f64 / (steps - 1) as f64
        } else {
            1.0
        };
        let temp = params.t_start * ratio.powf(frac);

        if r.gen::<f64>() < params.component_move_prob {
            // flip a whole connected same-spin component (bounded flood)
            let start = r.gen_range(0..n);
            let target = values[start];
            let mut comp = vec![start];
            let mut seen = BTreeSet::new();
            seen.insert(start);
            let mut head = 0;
            while head < comp.len() && comp.len() < 64 {
                let i = comp[head];
                head += 1;
                for &(j, _) in &adj[i] {
                    if values[j] == target && seen.insert(j) {
                        comp.push(j);
                    }
                }
            }
            // delta of flipping the whole set: only boundary bonds change
            let inset: BTreeSet<usize> = comp.iter().copied().collect();
            let mut d = 0i64;
            for &i in &comp {
                for &(j, c) in &adj[i] {
                    if !inset.contains(&j) {
                        d += c * values[i] as i64 * values[j] as i64;
                    }
                }
            }
            let delta = 2 * d;
            if delta <= 0 || r.gen::<f64>() < (-(delta as f64) / temp.max(1e-9)).exp() {
                for &i in &comp {
                    values[i] = -values[i];
                }
                e += delta;
            }
        } else {
            let i = r.gen_range(0..n);
            let delta = flip_delta(&values, i);
            if delta <= 0 || r.gen::<f64>() < (-(delta as f64) / temp.max(1e-9)).exp() {
                values[i] = -values[i];
                e += delta;
            }
        }
        if e < best_e {
            best_e = e;
            best.clone_from(&values);
        }
    }

    // finish with a deterministic greedy descent from the best state
    values = best.clone();
    e = best_e;
    loop {
        let mut improved = false;
        for i in 0..n {
            let delta = flip_delta(&values, i);
            if delta < 0 {
                values[i] = -values[i];
                e += delta;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    if e < best_e {
        best_e = e;
        best = values;
    }

    let config = SpinConfig::new(domain.clone(), best)?;
    debug_assert_eq!(energy(&config, system, domain)?, best_e);
    Ok(GroundStateResult {
        config,
        energy: best_e,
        method: Method::Local,
        optimal: false,
    })
}
