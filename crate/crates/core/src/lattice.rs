//! Lattice geometry: sites, bonds, trails, coupling systems, domains and the
//! energy functional.
//!
//! Coordinates are window-local with origin (0,0). Dual-lattice objects
//! (interface segments, dual curves) are stored in the same integer frame,
//! shifted by (1/2, 1/2): the dual point stored as `(a, b)` is the real point
//! `(a + 1/2, b + 1/2)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

/// Integer lattice site. Ordering is lexicographic on (x, y); this is the
/// canonical site order used for tie-breaking ground states.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Site {
    pub x: i64,
    pub y: i64,
}

impl Site {
    pub fn new(x: i64, y: i64) -> Self {
        Site { x, y }
    }

    /// L1 distance.
    pub fn dist1(&self, other: &Site) -> u64 {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y)
    }

    pub fn is_neighbor(&self, other: &Site) -> bool {
        self.dist1(other) == 1
    }

    /// The four nearest neighbors, in a fixed order (E, W, N, S).
    pub fn neighbors(&self) -> [Site; 4] {
        [
            Site::new(self.x + 1, self.y),
            Site::new(self.x - 1, self.y),
            Site::new(self.x, self.y + 1),
            Site::new(self.x, self.y - 1),
        ]
    }
}

/// Bond orientation. `Horizontal` joins (x,y)-(x+1,y); `Vertical` joins
/// (x,y)-(x,y+1).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// Unordered nearest-neighbor pair in canonical form: the lexicographically
/// smaller endpoint plus an axis flag.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Bond {
    pub origin: Site,
    pub axis: Axis,
}

impl Bond {
    /// Canonicalizes an unordered pair of neighboring sites.
    pub fn new(a: Site, b: Site) -> Result<Bond> {
        if !a.is_neighbor(&b) {
            return Err(Error::InvalidParameter(format!(
                "sites {a:?} and {b:?} are not nearest neighbors"
            )));
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let axis = if hi.x == lo.x + 1 {
            Axis::Horizontal
        } else {
            Axis::Vertical
        };
        Ok(Bond { origin: lo, axis })
    }

    pub fn horizontal(x: i64, y: i64) -> Bond {
        Bond {
            origin: Site::new(x, y),
            axis: Axis::Horizontal,
        }
    }

    pub fn vertical(x: i64, y: i64) -> Bond {
        Bond {
            origin: Site::new(x, y),
            axis: Axis::Vertical,
        }
    }

    pub fn endpoints(&self) -> (Site, Site) {
        let o = self.origin;
        match self.axis {
            Axis::Horizontal => (o, Site::new(o.x + 1, o.y)),
            Axis::Vertical => (o, Site::new(o.x, o.y + 1)),
        }
    }

    /// The dual unit segment separating the two closed unit cells centered at
    /// the endpoints, in dual coordinates (point − (1/2,1/2)).
    pub fn dual_segment(&self) -> Bond {
        let o = self.origin;
        match self.axis {
            // cells (x,y),(x+1,y) share {x+1/2} × [y-1/2, y+1/2]
            Axis::Horizontal => Bond::vertical(o.x, o.y - 1),
            // cells (x,y),(x,y+1) share [x-1/2, x+1/2] × {y+1/2}
            Axis::Vertical => Bond::horizontal(o.x - 1, o.y),
        }
    }

    /// Inverse of [`Bond::dual_segment`]: the primal bond whose cells this
    /// dual segment separates.
    pub fn primal_bond(&self) -> Bond {
        let o = self.origin;
        match self.axis {
            Axis::Vertical => Bond::horizontal(o.x, o.y + 1),
            Axis::Horizontal => Bond::vertical(o.x + 1, o.y),
        }
    }
}

/// The primal bond crossed by one unit step of a trail: the shared edge of
/// the two unit squares `from + [0,1]^2` and `to + [0,1]^2`.
pub fn crossed_bond(from: Site, to: Site) -> Result<Bond> {
    if !from.is_neighbor(&to) {
        return Err(Error::InvalidParameter(format!(
            "step {from:?} -> {to:?} is not a unit step"
        )));
    }
    let lo = if from < to { from } else { to };
    if from.y == to.y {
        // horizontal step: squares share {lo.x+1} × [lo.y, lo.y+1]
        Ok(Bond::vertical(lo.x + 1, lo.y))
    } else {
        // vertical step: squares share [lo.x, lo.x+1] × {lo.y+1}
        Ok(Bond::horizontal(lo.x, lo.y + 1))
    }
}

/// Inclusive rectangle of sites.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SiteRect {
    pub min: Site,
    pub max: Site,
}

impl SiteRect {
    pub fn new(min: Site, max: Site) -> Result<SiteRect> {
        if min.x > max.x || min.y > max.y {
            return Err(Error::InvalidParameter(format!(
                "empty site rectangle {min:?}..{max:?}"
            )));
        }
        Ok(SiteRect { min, max })
    }

    /// The square of sites `origin + [0, n]^2`.
    pub fn square(origin: Site, n: i64) -> SiteRect {
        SiteRect {
            min: origin,
            max: Site::new(origin.x + n, origin.y + n),
        }
    }

    pub fn contains(&self, s: Site) -> bool {
        s.x >= self.min.x && s.x <= self.max.x && s.y >= self.min.y && s.y <= self.max.y
    }

    pub fn site_count(&self) -> u64 {
        ((self.max.x - self.min.x + 1) * (self.max.y - self.min.y + 1)) as u64
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        let r = *self;
        (r.min.x..=r.max.x).flat_map(move |x| (r.min.y..=r.max.y).map(move |y| Site::new(x, y)))
    }
}

/// Anything that assigns a ±1 coupling to bonds.
pub trait CouplingSource {
    /// Returns the coupling of a bond, or an error if the bond is not covered.
    fn coupling(&self, bond: &Bond) -> Result<i8>;
}

/// How a spin system was produced. Recorded in the JSON format so files are
/// self-describing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Random { p: f64, seed: u64 },
    Periodic { n: usize, cell_id: String },
    Explicit,
}

/// ±1 couplings on every nearest-neighbor bond of a finite lattice window of
/// `width × height` sites.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinSystem {
    width: usize,
    height: usize,
    /// horizontal bonds, row-major: index y*(width-1)+x for bond (x,y)-(x+1,y)
    h: Vec<i8>,
    /// vertical bonds, row-major: index y*width+x for bond (x,y)-(x,y+1)
    v: Vec<i8>,
    provenance: Provenance,
}

fn check_pm1(values: &[i8], what: &str) -> Result<()> {
    if values.iter().any(|&c| c != 1 && c != -1) {
        return Err(Error::InvalidParameter(format!(
            "{what} couplings must be +1 or -1"
        )));
    }
    Ok(())
}

impl SpinSystem {
    /// Builds a system from explicit coupling arrays (row-major, see field docs).
    pub fn explicit(width: usize, height: usize, h: Vec<i8>, v: Vec<i8>) -> Result<SpinSystem> {
        Self::with_provenance(width, height, h, v, Provenance::Explicit)
    }

    pub fn with_provenance(
        width: usize,
        height: usize,
        h: Vec<i8>,
        v: Vec<i8>,
        provenance: Provenance,
    ) -> Result<SpinSystem> {
        if width < 1 || height < 1 {
            return Err(Error::InvalidParameter(
                "window must contain at least one site".into(),
            ));
        }
        if h.len() != width.saturating_sub(1) * height || v.len() != width * height.saturating_sub(1)
        {
            return Err(Error::InvalidParameter(format!(
                "coupling array sizes must be {}x{} and {}x{}",
                width - 1,
                height,
                width,
                height - 1
            )));
        }
        check_pm1(&h, "horizontal")?;
        check_pm1(&v, "vertical")?;
        Ok(SpinSystem {
            width,
            height,
            h,
            v,
            provenance,
        })
    }

    /// Bernoulli couplings: each bond independently −1 with probability `p`,
    /// derived counter-based from `(seed, bond index)` so generation is
    /// order-independent.
    pub fn gen_random(p: f64, width: usize, height: usize, seed: u64) -> Result<SpinSystem> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "probability p={p} outside [0,1]"
            )));
        }
        if width < 2 || height < 2 {
            return Err(Error::InvalidParameter(
                "random window needs width, height >= 2".into(),
            ));
        }
        let n_h = (width - 1) * height;
        let n_v = width * (height - 1);
        let draw = |idx: usize| -> i8 {
            if rng::unit_f64(rng::mix(seed, idx as u64)) < p {
                -1
            } else {
                1
            }
        };
        let h: Vec<i8> = (0..n_h).map(draw).collect();
        let v: Vec<i8> = (n_h..n_h + n_v).map(draw).collect();
        Ok(SpinSystem {
            width,
            height,
            h,
            v,
            provenance: Provenance::Random { p, seed },
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// All sites of the window as an inclusive rectangle.
    pub fn window(&self) -> SiteRect {
        SiteRect {
            min: Site::new(0, 0),
            max: Site::new(self.width as i64 - 1, self.height as i64 - 1),
        }
    }

    /// Largest site rectangle on which every incident trail step crosses a
    /// bond inside this window (crossed bonds poke one unit up/right).
    pub fn trail_window(&self) -> Result<SiteRect> {
        if self.width < 2 || self.height < 2 {
            return Err(Error::InvalidParameter(
                "window too small to host trails".into(),
            ));
        }
        SiteRect::new(
            Site::new(0, 0),
            Site::new(self.width as i64 - 2, self.height as i64 - 2),
        )
    }

    pub fn contains_bond(&self, bond: &Bond) -> bool {
        let (w, h) = (self.width as i64, self.height as i64);
        let o = bond.origin;
        match bond.axis {
            Axis::Horizontal => o.x >= 0 && o.x + 1 < w && o.y >= 0 && o.y < h,
            Axis::Vertical => o.x >= 0 && o.x < w && o.y >= 0 && o.y + 1 < h,
        }
    }

    pub fn bond_count(&self) -> usize {
        self.h.len() + self.v.len()
    }

    /// Number of antiferromagnetic (−1) bonds in the window.
    pub fn af_count(&self) -> usize {
        self.h.iter().chain(self.v.iter()).filter(|&&c| c == -1).count()
    }

    /// All bonds of the window in index order (horizontal block then vertical).
    pub fn bonds(&self) -> impl Iterator<Item = Bond> + '_ {
        let (w, h) = (self.width as i64, self.height as i64);
        let hs = (0..h).flat_map(move |y| (0..w - 1).map(move |x| Bond::horizontal(x, y)));
        let vs = (0..h - 1).flat_map(move |y| (0..w).map(move |x| Bond::vertical(x, y)));
        hs.chain(vs)
    }

    pub fn h_couplings(&self) -> &[i8] {
        &self.h
    }

    pub fn v_couplings(&self) -> &[i8] {
        &self.v
    }

    /// JSON form: nested row-major arrays, `h[y][x]` = bond (x,y)-(x+1,y),
    /// `v[y][x]` = bond (x,y)-(x,y+1). Round-trips bit-exactly.
    pub fn to_json(&self) -> serde_json::Value {
        let h: Vec<Vec<i8>> = (0..self.height)
            .map(|y| self.h[y * (self.width - 1)..(y + 1) * (self.width - 1)].to_vec())
            .collect();
        let v: Vec<Vec<i8>> = (0..self.height.saturating_sub(1))
            .map(|y| self.v[y * self.width..(y + 1) * self.width].to_vec())
            .collect();
        serde_json::json!({
            "width": self.width,
            "height": self.height,
            "h": h,
            "v": v,
            "provenance": self.provenance,
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(value: &serde_json::Value) -> Result<SpinSystem> {
        #[derive(Deserialize)]
        struct Raw {
            width: usize,
            height: usize,
            h: Vec<Vec<i8>>,
            v: Vec<Vec<i8>>,
            provenance: Provenance,
        }
        let raw: Raw = serde_json::from_value(value.clone())?;
        let expect_rows = |rows: &[Vec<i8>], n_rows: usize, n_cols: usize, what: &str| {
            if rows.len() != n_rows || rows.iter().any(|r| r.len() != n_cols) {
                Err(Error::InvalidParameter(format!(
                    "{what} array must be {n_rows} rows of {n_cols}"
                )))
            } else {
                Ok(())
            }
        };
        expect_rows(&raw.h, raw.height, raw.width.saturating_sub(1), "h")?;
        expect_rows(&raw.v, raw.height.saturating_sub(1), raw.width, "v")?;
        SpinSystem::with_provenance(
            raw.width,
            raw.height,
            raw.h.concat(),
            raw.v.concat(),
            raw.provenance,
        )
    }

    pub fn from_json_str(s: &str) -> Result<SpinSystem> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}

impl CouplingSource for SpinSystem {
    fn coupling(&self, bond: &Bond) -> Result<i8> {
        if !self.contains_bond(bond) {
            return Err(Error::OutOfWindow(format!(
                "bond {bond:?} outside {}x{} window",
                self.width, self.height
            )));
        }
        let o = bond.origin;
        Ok(match bond.axis {
            Axis::Horizontal => self.h[o.y as usize * (self.width - 1) + o.x as usize],
            Axis::Vertical => self.v[o.y as usize * self.width + o.x as usize],
        })
    }
}

/// Edge-distinct lattice walk: vertices may repeat, segments may not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trail {
    sites: Vec<Site>,
    segments: BTreeSet<Bond>,
}

impl Trail {
    /// Validates unit steps and pairwise-distinct segments.
    pub fn new(sites: Vec<Site>) -> Result<Trail> {
        if sites.is_empty() {
            return Err(Error::InvalidParameter("trail needs at least one site".into()));
        }
        let mut segments = BTreeSet::new();
        for w in sites.windows(2) {
            let seg = Bond::new(w[0], w[1])?;
            if !segments.insert(seg) {
                return Err(Error::InvalidParameter(format!(
                    "segment {seg:?} used twice"
                )));
            }
        }
        Ok(Trail { sites, segments })
    }

    pub fn single(site: Site) -> Trail {
        Trail {
            sites: vec![site],
            segments: BTreeSet::new(),
        }
    }

    /// Number of steps k (= number of sites − 1).
    pub fn len(&self) -> usize {
        self.sites.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_closed(&self) -> bool {
        self.len() > 0 && self.sites.first() == self.sites.last()
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn first(&self) -> Site {
        self.sites[0]
    }

    pub fn last(&self) -> Site {
        *self.sites.last().unwrap()
    }

    pub fn steps(&self) -> impl Iterator<Item = (Site, Site)> + '_ {
        self.sites.windows(2).map(|w| (w[0], w[1]))
    }

    /// Primal bonds crossed by the dual curve, one per step.
    pub fn crossed_bonds(&self) -> impl Iterator<Item = Bond> + '_ {
        self.steps().map(|(a, b)| crossed_bond(a, b).expect("validated step"))
    }

    /// Concatenation g∗d. Fails if the endpoints do not meet or a segment
    /// would be reused.
    pub fn concat(&self, other: &Trail) -> Result<Trail> {
        if self.last() != other.first() {
            return Err(Error::Concat(format!(
                "endpoint mismatch: {:?} vs {:?}",
                self.last(),
                other.first()
            )));
        }
        if self.segments.intersection(&other.segments).next().is_some() {
            return Err(Error::Concat("segment reused across concatenation".into()));
        }
        let mut sites = self.sites.clone();
        sites.extend_from_slice(&other.sites[1..]);
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().copied());
        Ok(Trail { sites, segments })
    }

    /// Sub-trail over the inclusive site-index range.
    pub fn slice(&self, from: usize, to: usize) -> Result<Trail> {
        if from > to || to >= self.sites.len() {
            return Err(Error::InvalidParameter(format!(
                "invalid trail slice {from}..={to}"
            )));
        }
        Trail::new(self.sites[from..=to].to_vec())
    }

    /// Uniform-ish random edge-distinct walk of exactly `len` steps inside
    /// `window`. Dead ends restart; returns None if no walk is found within
    /// the attempt budget.
    pub fn random<R: rand::Rng>(window: &SiteRect, len: usize, rng: &mut R) -> Option<Trail> {
        use rand::seq::SliceRandom;
        'attempt: for _ in 0..1000 {
            let x = rng.gen_range(window.min.x..=window.max.x);
            let y = rng.gen_range(window.min.y..=window.max.y);
            let mut sites = vec![Site::new(x, y)];
            let mut used: BTreeSet<Bond> = BTreeSet::new();
            while sites.len() <= len {
                let cur = *sites.last().unwrap();
                let mut options: Vec<Site> = cur
                    .neighbors()
                    .into_iter()
                    .filter(|n| window.contains(*n))
                    .filter(|n| !used.contains(&Bond::new(cur, *n).unwrap()))
                    .collect();
                if options.is_empty() {
                    continue 'attempt;
                }
                options.shuffle(rng);
                let next = options[0];
                used.insert(Bond::new(cur, next).unwrap());
                sites.push(next);
            }
            return Some(Trail { sites, segments: used });
        }
        None
    }
}

/// Counts antiferromagnetic bonds crossed by the trail's dual curve.
pub fn mu<S: CouplingSource>(trail: &Trail, source: &S) -> Result<usize> {
    let mut count = 0;
    for bond in trail.crossed_bonds() {
        if source.coupling(&bond)? == -1 {
            count += 1;
        }
    }
    Ok(count)
}

/// Finite set of sites the energy is evaluated on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    /// All sites (x, y) with 0 <= x < width, 0 <= y < height.
    Rect { width: usize, height: usize },
    Mask(BTreeSet<Site>),
}

impl Domain {
    pub fn rect(width: usize, height: usize) -> Result<Domain> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter("empty rectangular domain".into()));
        }
        Ok(Domain::Rect { width, height })
    }

    pub fn mask(sites: BTreeSet<Site>) -> Result<Domain> {
        if sites.is_empty() {
            return Err(Error::InvalidParameter("empty mask domain".into()));
        }
        Ok(Domain::Mask(sites))
    }

    pub fn contains(&self, s: Site) -> bool {
        match self {
            Domain::Rect { width, height } => {
                s.x >= 0 && s.x < *width as i64 && s.y >= 0 && s.y < *height as i64
            }
            Domain::Mask(set) => set.contains(&s),
        }
    }

    pub fn site_count(&self) -> usize {
        match self {
            Domain::Rect { width, height } => width * height,
            Domain::Mask(set) => set.len(),
        }
    }

    /// Sites in canonical (lexicographic) order.
    pub fn sites(&self) -> Vec<Site> {
        match self {
            Domain::Rect { width, height } => {
                let (w, h) = (*width as i64, *height as i64);
                (0..w)
                    .flat_map(|x| (0..h).map(move |y| Site::new(x, y)))
                    .collect()
            }
            Domain::Mask(set) => set.iter().copied().collect(),
        }
    }

    /// Nearest-neighbor bonds with both endpoints in the domain (the set the
    /// energy sums over).
    pub fn bonds(&self) -> Vec<Bond> {
        let mut out = Vec::new();
        for s in self.sites() {
            for other in [Site::new(s.x + 1, s.y), Site::new(s.x, s.y + 1)] {
                if self.contains(other) {
                    out.push(Bond::new(s, other).unwrap());
                }
            }
        }
        out
    }

    /// Whether all domain sites fall inside a width×height window at the origin.
    pub fn fits_window(&self, width: usize, height: usize) -> bool {
        match self {
            Domain::Rect { width: w, height: h } => *w <= width && *h <= height,
            Domain::Mask(set) => set.iter().all(|s| {
                s.x >= 0 && s.x < width as i64 && s.y >= 0 && s.y < height as i64
            }),
        }
    }
}

/// ±1 spin assignment on the sites of a domain. Immutable; modified copies
/// are produced with [`SpinConfig::flipped`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinConfig {
    domain: Domain,
    /// canonical-order sites, parallel to `values`
    sites: Vec<Site>,
    values: Vec<i8>,
}

impl SpinConfig {
    /// Values given in canonical site order.
    pub fn new(domain: Domain, values: Vec<i8>) -> Result<SpinConfig> {
        let sites = domain.sites();
        if values.len() != sites.len() {
            return Err(Error::Domain(format!(
                "{} values for {} domain sites",
                values.len(),
                sites.len()
            )));
        }
        check_pm1(&values, "spin")?;
        Ok(SpinConfig {
            domain,
            sites,
            values,
        })
    }

    pub fn constant(domain: Domain, value: i8) -> Result<SpinConfig> {
        let n = domain.site_count();
        SpinConfig::new(domain, vec![value; n])
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    /// Values in canonical site order.
    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn get(&self, s: Site) -> Option<i8> {
        match &self.domain {
            Domain::Rect { height, .. } => {
                if !self.domain.contains(s) {
                    return None;
                }
                Some(self.values[s.x as usize * height + s.y as usize])
            }
            Domain::Mask(_) => self
                .sites
                .binary_search(&s)
                .ok()
                .map(|i| self.values[i]),
        }
    }

    /// Copy with the given sites' spins negated. Sites outside the domain are
    /// ignored.
    pub fn flipped(&self, flip: &BTreeSet<Site>) -> SpinConfig {
        let mut out = self.clone();
        for (i, s) in out.sites.iter().enumerate() {
            if flip.contains(s) {
                out.values[i] = -out.values[i];
            }
        }
        out
    }

    /// Globally negated copy.
    pub fn negated(&self) -> SpinConfig {
        let mut out = self.clone();
        for v in &mut out.values {
            *v = -*v;
        }
        out
    }

    /// Row-major grid (`grid[y][x]`) for rectangular domains.
    pub fn to_grid(&self) -> Result<Vec<Vec<i8>>> {
        match &self.domain {
            Domain::Rect { width, height } => Ok((0..*height)
                .map(|y| {
                    (0..*width)
                        .map(|x| self.values[x * height + y])
                        .collect()
                })
                .collect()),
            Domain::Mask(_) => Err(Error::Domain(
                "grid form is only defined for rectangular domains".into(),
            )),
        }
    }

    /// Builds a rect config from a row-major grid.
    pub fn from_grid(grid: &[Vec<i8>]) -> Result<SpinConfig> {
        let height = grid.len();
        if height == 0 || grid[0].is_empty() {
            return Err(Error::Domain("empty spin grid".into()));
        }
        let width = grid[0].len();
        if grid.iter().any(|row| row.len() != width) {
            return Err(Error::Domain("ragged spin grid".into()));
        }
        let mut values = vec![0i8; width * height];
        for (y, row) in grid.iter().enumerate() {
            for (x, &s) in row.iter().enumerate() {
                values[x * height + y] = s;
            }
        }
        SpinConfig::new(Domain::rect(width, height)?, values)
    }
}

/// Energy F(u, D) = −Σ over nearest-neighbor pairs in D of c_ij·u_i·u_j
/// (free boundary: only bonds with both endpoints in D count).
pub fn energy(u: &SpinConfig, system: &SpinSystem, domain: &Domain) -> Result<i64> {
    if !domain.fits_window(system.width(), system.height()) {
        return Err(Error::Domain("domain exceeds the system window".into()));
    }
    let mut total = 0i64;
    for bond in domain.bonds() {
        let (a, b) = bond.endpoints();
        let ua = u
            .get(a)
            .ok_or_else(|| Error::Domain(format!("spin undefined at {a:?}")))?;
        let ub = u
            .get(b)
            .ok_or_else(|| Error::Domain(format!("spin undefined at {b:?}")))?;
        let c = system.coupling(&bond)?;
        total -= (c as i64) * (ua as i64) * (ub as i64);
    }
    Ok(total)
}
