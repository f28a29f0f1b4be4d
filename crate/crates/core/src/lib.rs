//! Ferromagnetic/antiferromagnetic spin systems on the 2-D square lattice:
//! coupling generation, exact ground states at desk scale, interface
//! geometry with its Eulerian machinery, separating-trail estimates, and the
//! exact census of periodic systems.

pub mod census;
mod combin;
pub mod error;
pub mod ground;
pub mod interface;
pub mod lattice;
pub mod rng;
pub mod seppath;

pub use census::{
    census, decompose_trail, f_p, g_p, gen_periodic, globale_check, is_bad_cell, lemma_g_check,
    stima_bound, theta_and_bounds, CensusMode, CensusParams, CensusResult, GlobaleVerdict,
    LemmaGRow, PeriodCell, ThetaBounds, TrailPiece,
};
pub use error::{Error, Result};
pub use ground::{
    brute_force_ground, brute_force_ground_capped, dp_ground, dp_ground_capped,
    local_search_ground, GroundStateResult, LocalSearchParams, Method, DEFAULT_BRUTE_SITE_CAP,
    DEFAULT_DP_STRIP_CAP,
};
pub use interface::{
    cell_boundary, components, euler_circuit, flip_inside, interface, majority_report, q_of,
    two_color, CellRegion, ComponentKind, FlipOutcome, InterfaceGraph, InterfaceSet,
    MajorityReport, MinorityComponent,
};
pub use lattice::{
    crossed_bond, energy, mu, Axis, Bond, CouplingSource, Domain, Provenance, Site, SiteRect,
    SpinConfig, SpinSystem, Trail,
};
pub use seppath::{
    is_separating, lemma1_experiment, lemma1_union_bound, search_separating,
    separating_tail_probability, tail_bound_holds, tail_probability_exact, threshold, trail_count,
    Lemma1Row, SearchMode, SearchOptions, SeparatingSearchResult, TrailCount, DEFAULT_SEARCH_CAP,
};
