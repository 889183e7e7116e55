//! Entropic formulas for coding tasks built on state merging.

mod assistance;
mod purification;
mod region;

pub use assistance::{eoa, CutValue, EoAResult, MAX_HELPERS};
pub use purification::{
    entanglement_of_purification, side_info_rates, EpEstimate, EpParams, SideInfoRates,
};
pub use region::{
    compression_region, mac_region, Membership, RateConstraint, RateRegion, RegionKind,
    MEMBERSHIP_TOL,
};
