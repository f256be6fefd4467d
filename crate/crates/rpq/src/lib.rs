//! Exact arithmetic for two-parameter deformed combinatorics.

pub mod audit;
pub mod deformation;
pub mod graph;
pub mod identities;
pub mod moments;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod stirling;

pub use audit::{run_audit, AuditOptions};
pub use deformation::{Deformation, DeformationError, DeformationKind};
pub use graph::{
    dual_path_closed_form, dual_path_graph, graph_bell, graph_stirling_second,
    independent_partition_count, independent_partitions, partition_weight, Graph, GraphError,
    IndependentPartition,
};
pub use identities::{
    check_all, check_identity, check_identity_with_mode, default_grid, list_identities,
    CheckMode, Grid, IdentityId,
};
pub use moments::{
    binomial_moment_vector, classical_moments_from_deformed, decomposed_variance,
    deformed_binomial_moment, deformed_factorial_moment, deformed_mean_variance,
    distribution_from_binomial_moments, factorial_moment_vector, inversion_series_mass,
    DiscreteDistribution, MomentKind, MomentVector, MomentsError,
};
pub use poly::{product_linear_factors, NonInvertibleSeries, Polynomial, PowerSeries};
pub use report::{AuditSummary, CheckError, CheckReport, CheckStatus, Counterexample};
pub use scalar::{c2, classical_binomial, Scalar};
pub use stirling::{StirlingConfig, StirlingKind, StirlingTable};

// Every fenced Rust block in the guide compiles and runs as a doc-test, so
// the book cannot drift from the crate.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            #[allow(dead_code)]
            struct $name;
        };
    }

    chapter!(Overview, "../../../book/src/overview.md");
    chapter!(Deformations, "../../../book/src/deformations.md");
    chapter!(Series, "../../../book/src/series.md");
    chapter!(Identities, "../../../book/src/identities.md");
    chapter!(Stirling, "../../../book/src/stirling.md");
    chapter!(Graphs, "../../../book/src/graphs.md");
    chapter!(Moments, "../../../book/src/moments.md");
    chapter!(Audit, "../../../book/src/audit.md");
    chapter!(Cli, "../../../book/src/cli.md");
}
