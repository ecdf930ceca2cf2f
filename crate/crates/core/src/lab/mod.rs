//! Instance generators, the dominating-set reduction and the embedding of
//! doubling metrics into graphs with hub hierarchies.

mod embed;
mod generators;

pub use embed::{
    certify_hub_hierarchy, embed_doubling, EmbedError, Embedding, HubReport, LevelReport,
    NetHierarchy, Norm, PointMetric, METRIC_UNIT,
};
pub use generators::{
    gen_cubic_instance, gen_grid, gen_random_connected, reduce_dominating_set, GenError,
};
