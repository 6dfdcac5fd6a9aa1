//! Build-plate batch planning for additive manufacturing.
//!
//! A batch is chosen in two stages. [`packer`] builds candidate layouts by
//! repeatedly running a first-fit guillotine placement over reordered part
//! lists. [`wdp`] then values each candidate by the material it would print
//! and picks the heaviest one. [`oracle`] enumerates every ordering for small
//! instances so the search can be checked against the true optimum.

pub mod bench;
pub mod error;
pub mod io;
pub mod model;
pub mod oracle;
pub mod packer;
pub mod wdp;

pub use error::{Error, Result};
pub use model::{
    part_mass, part_volume, search_space_size, EconomicParams, Footprint, FreeArea, Instance,
    Layout, Part, Placement, Platform,
};
