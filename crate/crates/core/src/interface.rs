//! Interface extraction, Eulerian decomposition, two-coloring, the flip
//! construction with its energy identity, and majority-phase reporting.
//!
//! Interface segments live on the shifted lattice and are stored in dual
//! coordinates (see `lattice`): the dual segment of a primal bond separates
//! the two unit cells centered at its endpoints.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{energy, Bond, CouplingSource, Domain, Site, SpinConfig, SpinSystem, Trail};

/// The interface S(u): bonds with opposite endpoint spins, plus their dual
/// segments.
#[derive(Clone, Debug)]
pub struct InterfaceSet {
    domain: Domain,
    /// bonds {i,j} ⊂ D with u_i·u_j = −1, sorted
    pub bonds: Vec<Bond>,
    /// dual segments s_ij, parallel to `bonds`
    pub segments: Vec<Bond>,
}

impl InterfaceSet {
    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.bonds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bonds.is_empty()
    }

    /// CSV of segment endpoints in real (half-integer) coordinates:
    /// `x1,y1,x2,y2`, one segment per row, header included.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x1,y1,x2,y2\n");
        for seg in &self.segments {
            let (a, b) = seg.endpoints();
            out.push_str(&format!(
                "{},{},{},{}\n",
                a.x as f64 + 0.5,
                a.y as f64 + 0.5,
                b.x as f64 + 0.5,
                b.y as f64 + 0.5
            ));
        }
        out
    }
}

/// Extracts S(u) and Σ(u) for u on D.
pub fn interface(u: &SpinConfig, domain: &Domain) -> Result<InterfaceSet> {
    let mut bonds = Vec::new();
    for bond in domain.bonds() {
        let (a, b) = bond.endpoints();
        let ua = u
            .get(a)
            .ok_or_else(|| Error::Domain(format!("spin undefined at {a:?}")))?;
        let ub = u
            .get(b)
            .ok_or_else(|| Error::Domain(format!("spin undefined at {b:?}")))?;
        if ua != ub {
            bonds.push(bond);
        }
    }
    bonds.sort();
    let segments = bonds.iter().map(|b| b.dual_segment()).collect();
    Ok(InterfaceSet {
        domain: domain.clone(),
        bonds,
        segments,
    })
}

/// The union of closed unit cells over the domain, with its boundary
/// segments (in dual coordinates).
#[derive(Clone, Debug)]
pub struct CellRegion {
    pub cells: BTreeSet<Site>,
    pub boundary: Vec<Bond>,
}

impl CellRegion {
    pub fn boundary_length(&self) -> usize {
        self.boundary.len()
    }
}

/// q(D): the cell region covered by the domain.
pub fn q_of(domain: &Domain) -> CellRegion {
    let cells: BTreeSet<Site> = domain.sites().into_iter().collect();
    let mut boundary = Vec::new();
    for &c in &cells {
        for n in c.neighbors() {
            if !cells.contains(&n) {
                boundary.push(Bond::new(c, n).unwrap().dual_segment());
            }
        }
    }
    boundary.sort();
    boundary.dedup();
    CellRegion { cells, boundary }
}

/// Whether a dual vertex lies on ∂q(D): it touches q(D) but not all four
/// cells around it belong to the domain.
fn vertex_on_boundary(v: Site, domain: &Domain) -> bool {
    let cells = [
        Site::new(v.x, v.y),
        Site::new(v.x + 1, v.y),
        Site::new(v.x, v.y + 1),
        Site::new(v.x + 1, v.y + 1),
    ];
    let inside = cells.iter().filter(|c| domain.contains(**c)).count();
    inside > 0 && inside < 4
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ComponentKind {
    /// all vertex orders even and no contact with ∂q(D)
    Closed,
    /// touches ∂q(D)
    BoundaryAnchored,
}

/// One connected component of the interface, as an embedded multigraph on
/// dual vertices.
#[derive(Clone, Debug)]
pub struct InterfaceGraph {
    pub segments: Vec<Bond>,
    pub kind: ComponentKind,
}

impl InterfaceGraph {
    pub fn vertices(&self) -> BTreeSet<Site> {
        let mut vs = BTreeSet::new();
        for seg in &self.segments {
            let (a, b) = seg.endpoints();
            vs.insert(a);
            vs.insert(b);
        }
        vs
    }

    /// Vertex orders (loops would count twice; unit segments have distinct
    /// endpoints, so plain incidence counting applies).
    pub fn vertex_orders(&self) -> BTreeMap<Site, usize> {
        let mut orders = BTreeMap::new();
        for seg in &self.segments {
            let (a, b) = seg.endpoints();
            *orders.entry(a).or_insert(0) += 1;
            *orders.entry(b).or_insert(0) += 1;
        }
        orders
    }

    pub fn all_orders_even(&self) -> bool {
        self.vertex_orders().values().all(|&d| d % 2 == 0)
    }
}

/// Splits Σ(u) into connected components and classifies each as closed or
/// boundary-anchored.
pub fn components(interface: &InterfaceSet) -> Vec<InterfaceGraph> {
    // union-find over segment indices keyed by shared endpoints
    let n = interface.segments.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut by_vertex: BTreeMap<Site, usize> = BTreeMap::new();
    for (i, seg) in interface.segments.iter().enumerate() {
        let (a, b) = seg.endpoints();
        for v in [a, b] {
            match by_vertex.get(&v) {
                Some(&j) => {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri] = rj;
                    }
                }
                None => {
                    by_vertex.insert(v, i);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Bond>> = BTreeMap::new();
    for (i, seg) in interface.segments.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(*seg);
    }
    groups
        .into_values()
        .map(|mut segments| {
            segments.sort();
            let graph = InterfaceGraph {
                segments,
                kind: ComponentKind::Closed,
            };
            let touches_boundary = graph
                .vertices()
                .into_iter()
                .any(|v| vertex_on_boundary(v, &interface.domain));
            let kind = if graph.all_orders_even() && !touches_boundary {
                ComponentKind::Closed
            } else {
                ComponentKind::BoundaryAnchored
            };
            InterfaceGraph { kind, ..graph }
        })
        .collect()
}

/// Hierholzer construction of a closed walk traversing each segment exactly
/// once. The returned trail is on the dual lattice (its dual curve is the
/// component itself).
pub fn euler_circuit(component: &InterfaceGraph) -> Result<Trail> {
    if component.segments.is_empty() {
        return Err(Error::NotEulerian("empty component".into()));
    }
    if !component.all_orders_even() {
        return Err(Error::NotEulerian("odd-order vertex present".into()));
    }
    // adjacency with used flags
    let mut adj: BTreeMap<Site, Vec<(usize, Site)>> = BTreeMap::new();
    for (i, seg) in component.segments.iter().enumerate() {
        let (a, b) = seg.endpoints();
        adj.entry(a).or_default().push((i, b));
        adj.entry(b).or_default().push((i, a));
    }
    let mut used = vec![false; component.segments.len()];
    let start = component.segments[0].origin;
    let mut stack = vec![start];
    let mut circuit = Vec::new();
    while let Some(&v) = stack.last() {
        let next = adj
            .get_mut(&v)
            .and_then(|edges| {
                while let Some(&(i, to)) = edges.last() {
                    if used[i] {
                        edges.pop();
                    } else {
                        return Some((i, to));
                    }
                }
                None
            });
        match next {
            Some((i, to)) => {
                used[i] = true;
                stack.push(to);
            }
            None => {
                circuit.push(stack.pop().unwrap());
            }
        }
    }
    if circuit.len() != component.segments.len() + 1 {
        return Err(Error::NotEulerian(
            "component is not connected".into(),
        ));
    }
    circuit.reverse();
    Trail::new(circuit)
}

/// Two-colors the plane complement of a closed curve (a set of dual
/// segments, every vertex order even) and returns the inside sites: cells
/// whose rightward ray crosses the curve an odd number of times.
///
/// Rays run at integer height while segment corners sit at half-integers,
/// so a corner touch can never count as a single crossing.
pub fn two_color(curve: &[Bond]) -> Result<BTreeSet<Site>> {
    let mut orders: BTreeMap<Site, usize> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for seg in curve {
        if !seen.insert(*seg) {
            return Err(Error::Coloring("duplicate segment in curve".into()));
        }
        let (a, b) = seg.endpoints();
        *orders.entry(a).or_insert(0) += 1;
        *orders.entry(b).or_insert(0) += 1;
    }
    if orders.values().any(|&d| d % 2 != 0) {
        return Err(Error::Coloring("curve is not closed".into()));
    }
    if curve.is_empty() {
        return Ok(BTreeSet::new());
    }

    // vertical dual segment at (a,b) blocks the row y=b+1 at real x=a+1/2;
    // collect blocked columns per row
    let mut rows: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for seg in curve {
        if matches!(seg.axis, crate::lattice::Axis::Vertical) {
            rows.entry(seg.origin.y + 1).or_default().push(seg.origin.x);
        }
    }
    for xs in rows.values_mut() {
        xs.sort_unstable();
    }

    let min_x = curve.iter().map(|s| s.origin.x).min().unwrap();
    let mut inside = BTreeSet::new();
    for (&y, xs) in &rows {
        // walking right from x, parity = number of blocked columns a >= x
        for (idx, &a) in xs.iter().enumerate() {
            let crossings_right = xs.len() - idx;
            if crossings_right % 2 == 1 {
                // sites x in (previous blocked column, a] have this parity;
                // previous blocked column is xs[idx-1] (exclusive)
                let lo = if idx == 0 { min_x } else { xs[idx - 1] + 1 };
                for x in lo..=a {
                    inside.insert(Site::new(x, y));
                }
            }
        }
    }
    Ok(inside)
}

/// Result of flipping the inside of a closed curve.
#[derive(Clone, Debug)]
pub struct FlipOutcome {
    pub flipped: SpinConfig,
    /// F(u, D) − F(ũ, D) computed via the energy functional
    pub delta_direct: i64,
    /// the same difference from the crossed-bond identity:
    /// −2·Σ over crossed bonds {i,j} ⊂ D of c_ij·u_i·u_j
    pub delta_formula: i64,
}

/// Flips u on the inside of `curve` and evaluates the energy difference both
/// directly and via the crossed-bond identity; the two agree exactly.
pub fn flip_inside(
    u: &SpinConfig,
    curve: &[Bond],
    system: &SpinSystem,
    domain: &Domain,
) -> Result<FlipOutcome> {
    let inside = two_color(curve)?;
    let flipped = u.flipped(&inside);
    let e_u = energy(u, system, domain)?;
    let e_flipped = energy(&flipped, system, domain)?;
    let delta_direct = e_u - e_flipped;

    let mut delta_formula = 0i64;
    for seg in curve {
        let bond = seg.primal_bond();
        let (a, b) = bond.endpoints();
        if domain.contains(a) && domain.contains(b) {
            let c = system.coupling(&bond)? as i64;
            let ua = u.get(a).ok_or_else(|| Error::Domain(format!("spin undefined at {a:?}")))?;
            let ub = u.get(b).ok_or_else(|| Error::Domain(format!("spin undefined at {b:?}")))?;
            delta_formula -= 2 * c * ua as i64 * ub as i64;
        }
    }
    Ok(FlipOutcome {
        flipped,
        delta_direct,
        delta_formula,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorityComponent {
    pub site_count: usize,
    /// number of unit segments in the boundary of the component's cell union
    pub boundary_length: usize,
}

/// Majority phase of a configuration: the dominant spin value, the minority
/// components (4-connectivity) and their boundary lengths.
#[derive(Clone, Debug, Serialize)]
pub struct MajorityReport {
    pub majority_value: i8,
    pub majority_fraction: f64,
    pub minority_components: Vec<MinorityComponent>,
    pub max_boundary_length: usize,
}

impl MajorityReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

pub fn majority_report(u: &SpinConfig, domain: &Domain) -> Result<MajorityReport> {
    let sites = domain.sites();
    let mut plus = 0usize;
    for s in &sites {
        let v = u
            .get(*s)
            .ok_or_else(|| Error::Domain(format!("spin undefined at {s:?}")))?;
        if v == 1 {
            plus += 1;
        }
    }
    let total = sites.len();
    let minus = total - plus;
    // ties break toward +1
    let majority_value: i8 = if plus >= minus { 1 } else { -1 };
    let majority_count = plus.max(minus);

    let minority: BTreeSet<Site> = sites
        .iter()
        .copied()
        .filter(|s| u.get(*s) != Some(majority_value))
        .collect();

    let mut seen: BTreeSet<Site> = BTreeSet::new();
    let mut comps = Vec::new();
    for &start in &minority {
        if seen.contains(&start) {
            continue;
        }
        let mut queue = vec![start];
        let mut cells = BTreeSet::new();
        cells.insert(start);
        seen.insert(start);
        while let Some(s) = queue.pop() {
            for n in s.neighbors() {
                if minority.contains(&n) && seen.insert(n) {
                    cells.insert(n);
                    queue.push(n);
                }
            }
        }
        // perimeter of the cell union
        let boundary_length: usize = cells
            .iter()
            .map(|c| c.neighbors().iter().filter(|n| !cells.contains(n)).count())
            .sum();
        comps.push(MinorityComponent {
            site_count: cells.len(),
            boundary_length,
        });
    }
    comps.sort_by(|a, b| b.site_count.cmp(&a.site_count));
    let max_boundary_length = comps.iter().map(|c| c.boundary_length).max().unwrap_or(0);
    Ok(MajorityReport {
        majority_value,
        majority_fraction: majority_count as f64 / total as f64,
        minority_components: comps,
        max_boundary_length,
    })
}

/// Boundary curve (dual segments) of a set of cells. Useful for building
/// closed test curves: the boundary of any finite cell set is closed.
pub fn cell_boundary(cells: &BTreeSet<Site>) -> Vec<Bond> {
    let mut out = Vec::new();
    for &c in cells {
        for n in c.neighbors() {
            if !cells.contains(&n) {
                out.push(Bond::new(c, n).unwrap().dual_segment());
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::brute_force_ground;
    use crate::lattice::{mu, SpinSystem};

    fn ferro(w: usize, h: usize) -> SpinSystem {
        SpinSystem::explicit(w, h, vec![1; (w - 1) * h], vec![1; w * (h - 1)]).unwrap()
    }

    fn rect_config(w: usize, h: usize, f: impl Fn(i64, i64) -> i8) -> (SpinConfig, Domain) {
        let d = Domain::rect(w, h).unwrap();
        let values: Vec<i8> = d.sites().iter().map(|s| f(s.x, s.y)).collect();
        (SpinConfig::new(d.clone(), values).unwrap(), d)
    }

    #[test]
    fn interface_examples() {
        let (ones, d) = rect_config(3, 3, |_, _| 1);
        assert!(interface(&ones, &d).unwrap().is_empty());

        let (checker, d) = rect_config(3, 3, |x, y| if (x + y) % 2 == 0 { 1 } else { -1 });
        assert_eq!(interface(&checker, &d).unwrap().len(), 12);

        let (one_flip, d) = rect_config(3, 3, |x, y| if (x, y) == (1, 1) { -1 } else { 1 });
        let s = interface(&one_flip, &d).unwrap();
        assert_eq!(s.len(), 4);
        // the four segments form the unit square around (1,1):
        // dual corners (0,0),(1,0),(0,1),(1,1)
        let comps = components(&s);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentKind::Closed);
    }

    #[test]
    fn q_of_examples() {
        let d = Domain::rect(1, 1).unwrap();
        assert_eq!(q_of(&d).boundary_length(), 4);

        let d = Domain::rect(2, 1).unwrap();
        assert_eq!(q_of(&d).boundary_length(), 6);

        let mut l_shape = BTreeSet::new();
        l_shape.insert(Site::new(0, 0));
        l_shape.insert(Site::new(1, 0));
        l_shape.insert(Site::new(0, 1));
        let d = Domain::mask(l_shape).unwrap();
        assert_eq!(q_of(&d).boundary_length(), 8);
    }

    #[test]
    fn components_examples() {
        // two far-apart flipped sites -> two closed components of 4 segments
        let (u, d) = rect_config(7, 7, |x, y| {
            if (x, y) == (1, 1) || (x, y) == (5, 5) {
                -1
            } else {
                1
            }
        });
        let comps = components(&interface(&u, &d).unwrap());
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.segments.len() == 4));
        assert!(comps.iter().all(|c| c.kind == ComponentKind::Closed));

        // empty interface -> no components
        let (ones, d) = rect_config(3, 3, |_, _| 1);
        assert!(components(&interface(&ones, &d).unwrap()).is_empty());

        // flipped 2x2 block -> one closed component of 8 segments
        let (u, d) = rect_config(6, 6, |x, y| {
            if (2..4).contains(&x) && (2..4).contains(&y) {
                -1
            } else {
                1
            }
        });
        let comps = components(&interface(&u, &d).unwrap());
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].segments.len(), 8);
    }

    #[test]
    fn euler_circuit_examples() {
        // unit square
        let (u, d) = rect_config(3, 3, |x, y| if (x, y) == (1, 1) { -1 } else { 1 });
        let comps = components(&interface(&u, &d).unwrap());
        let t = euler_circuit(&comps[0]).unwrap();
        assert!(t.is_closed());
        assert_eq!(t.len(), 4);

        // 2x2 block boundary: circuit of length 8
        let (u, d) = rect_config(6, 6, |x, y| {
            if (2..4).contains(&x) && (2..4).contains(&y) {
                -1
            } else {
                1
            }
        });
        let comps = components(&interface(&u, &d).unwrap());
        let t = euler_circuit(&comps[0]).unwrap();
        assert_eq!(t.len(), 8);
        // every edge exactly once
        let mut covered: Vec<Bond> = t
            .steps()
            .map(|(a, b)| Bond::new(a, b).unwrap())
            .collect();
        covered.sort();
        assert_eq!(covered, comps[0].segments);
    }

    #[test]
    fn euler_circuit_figure_eight() {
        // two unit squares sharing the corner vertex (1,1) in dual coords:
        // squares around cells (1,1) and (2,2)
        let (u, d) = rect_config(5, 5, |x, y| {
            if (x, y) == (1, 1) || (x, y) == (2, 2) {
                -1
            } else {
                1
            }
        });
        let comps = components(&interface(&u, &d).unwrap());
        assert_eq!(comps.len(), 1, "corner-sharing squares are one component");
        let t = euler_circuit(&comps[0]).unwrap();
        assert_eq!(t.len(), 8);
        let mut covered: Vec<Bond> = t.steps().map(|(a, b)| Bond::new(a, b).unwrap()).collect();
        covered.sort();
        covered.dedup();
        assert_eq!(covered.len(), 8, "each edge exactly once");
    }

    #[test]
    fn euler_circuit_rejects_odd_vertices() {
        let open = vec![Bond::horizontal(0, 0)];
        let g = InterfaceGraph {
            segments: open,
            kind: ComponentKind::BoundaryAnchored,
        };
        assert!(matches!(euler_circuit(&g), Err(Error::NotEulerian(_))));
    }

    #[test]
    fn two_color_examples() {
        // unit square around cell (1,1)
        let mut cells = BTreeSet::new();
        cells.insert(Site::new(1, 1));
        let curve = cell_boundary(&cells);
        let inside = two_color(&curve).unwrap();
        assert_eq!(inside, cells);

        // 2x2 block
        let mut cells = BTreeSet::new();
        for x in 2..4 {
            for y in 2..4 {
                cells.insert(Site::new(x, y));
            }
        }
        let curve = cell_boundary(&cells);
        assert_eq!(two_color(&curve).unwrap(), cells);

        // nested squares: outer boundary of 3x3 block plus boundary of its
        // center cell; ray parity puts the ring inside and the core with the
        // unbounded outside
        let mut block = BTreeSet::new();
        for x in 1..4 {
            for y in 1..4 {
                block.insert(Site::new(x, y));
            }
        }
        let mut core = BTreeSet::new();
        core.insert(Site::new(2, 2));
        let mut curve = cell_boundary(&block);
        curve.extend(cell_boundary(&core));
        curve.sort();
        curve.dedup();
        let inside = two_color(&curve).unwrap();
        let ring: BTreeSet<Site> = block.difference(&core).copied().collect();
        assert_eq!(inside, ring);

        // open curve errors
        let open = vec![Bond::horizontal(0, 0)];
        assert!(matches!(two_color(&open), Err(Error::Coloring(_))));
    }

    #[test]
    fn flip_inside_examples() {
        let sys = ferro(5, 5);
        let d = Domain::rect(5, 5).unwrap();
        let ones = SpinConfig::constant(d.clone(), 1).unwrap();
        let mut cells = BTreeSet::new();
        cells.insert(Site::new(2, 2));
        let curve = cell_boundary(&cells);
        let out = flip_inside(&ones, &curve, &sys, &d).unwrap();
        assert_eq!(out.delta_direct, -8);
        assert_eq!(out.delta_formula, -8);

        // curve entirely in the interface of the flipped config: removing it
        // gains 2 per segment
        let flipped = out.flipped;
        let out2 = flip_inside(&flipped, &curve, &sys, &d).unwrap();
        assert_eq!(out2.delta_direct, 2 * curve.len() as i64);
        assert_eq!(out2.delta_formula, out2.delta_direct);
        // flip involution
        assert_eq!(out2.flipped, ones);
    }

    #[test]
    fn flip_identity_on_random_inputs() {
        for seed in 0..50u64 {
            let sys = SpinSystem::gen_random(0.4, 6, 6, seed).unwrap();
            let d = Domain::rect(6, 6).unwrap();
            let values: Vec<i8> = (0..36)
                .map(|i| if crate::rng::mix(seed, 500 + i) % 2 == 0 { 1 } else { -1 })
                .collect();
            let u = SpinConfig::new(d.clone(), values).unwrap();
            let cells: BTreeSet<Site> = d
                .sites()
                .into_iter()
                .filter(|s| crate::rng::mix(seed, (1000 + s.x * 64 + s.y) as u64) % 3 == 0)
                .collect();
            if cells.is_empty() {
                continue;
            }
            let curve = cell_boundary(&cells);
            let out = flip_inside(&u, &curve, &sys, &d).unwrap();
            assert_eq!(out.delta_direct, out.delta_formula, "seed {seed}");
            // involution
            let back = flip_inside(&out.flipped, &curve, &sys, &d).unwrap();
            assert_eq!(back.flipped, u);
        }
    }

    #[test]
    fn majority_examples() {
        let (ones, d) = rect_config(4, 4, |_, _| 1);
        let r = majority_report(&ones, &d).unwrap();
        assert_eq!(r.majority_value, 1);
        assert_eq!(r.majority_fraction, 1.0);
        assert!(r.minority_components.is_empty());
        assert_eq!(r.max_boundary_length, 0);

        let (one_flip, d) = rect_config(5, 5, |x, y| if (x, y) == (2, 2) { -1 } else { 1 });
        let r = majority_report(&one_flip, &d).unwrap();
        assert_eq!(r.max_boundary_length, 4);

        // flipped 2x3 block: one minority component, boundary length 10
        let (u, d) = rect_config(6, 6, |x, y| {
            if (1..3).contains(&x) && (1..4).contains(&y) {
                -1
            } else {
                1
            }
        });
        let r = majority_report(&u, &d).unwrap();
        assert_eq!(r.minority_components.len(), 1);
        assert_eq!(r.minority_components[0].site_count, 6);
        assert_eq!(r.minority_components[0].boundary_length, 10);
        assert!(r.majority_fraction >= 0.5);
    }

    #[test]
    fn interface_count_matches_bond_scan() {
        for seed in 0..20u64 {
            let d = Domain::rect(5, 5).unwrap();
            let values: Vec<i8> = (0..25)
                .map(|i| if crate::rng::mix(seed, i) % 2 == 0 { 1 } else { -1 })
                .collect();
            let u = SpinConfig::new(d.clone(), values).unwrap();
            let s = interface(&u, &d).unwrap();
            let direct = d
                .bonds()
                .iter()
                .filter(|b| {
                    let (i, j) = b.endpoints();
                    u.get(i).unwrap() != u.get(j).unwrap()
                })
                .count();
            assert_eq!(s.len(), direct);
        }
    }

    #[test]
    fn ground_state_circuits_are_not_separating() {
        // for exact ground states, every even component's circuit satisfies
        // 2μ ≥ l, otherwise flipping its inside would lower the energy
        for seed in 0..20u64 {
            let sys = SpinSystem::gen_random(0.35, 4, 4, seed).unwrap();
            let d = Domain::rect(4, 4).unwrap();
            let g = brute_force_ground(&sys, &d).unwrap();
            let comps = components(&interface(&g.config, &d).unwrap());
            for c in comps.iter().filter(|c| c.all_orders_even()) {
                let t = euler_circuit(c).unwrap();
                let m = mu(&t, &sys).unwrap();
                assert!(2 * m >= t.len(), "seed {seed}: 2μ={} < l={}", 2 * m, t.len());
            }
        }
    }
}
