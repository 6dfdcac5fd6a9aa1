//! Instance documents, result reports and SVG rendering.

mod instance;
mod report;
mod svg;

pub use instance::{
    import_parts_table, instance_to_canonical_json, instance_to_json, load_instance,
    parse_instance, EconomicsDoc, InstanceFile, PartDoc, PlatformDoc,
};
pub use report::{format_pct, LayoutReport, Metrics, PackReport, PlacementDoc, Provenance};
pub use svg::render_svg;
