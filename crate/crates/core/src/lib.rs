//! Homology and cohomology of finite graphs over exact rationals, finite
//! flat graph morphisms with constructive cycle lifting, and the dual-graph
//! bookkeeping of semi-stable coverings of wide open curves: the dual graph
//! triple, weight-graded dimension reports, and functoriality of transfer
//! maps under degree-`n` morphisms.

pub mod covering;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod morphism;

pub use covering::{
    CoveringDescription, CoveringError, CoveringGraphMorphisms, CoveringMorphism,
    DimensionReport, FunctorialReport, GraphTriple,
};
pub use graph::{
    gram_matrix, pairing, Chain0, Chain1, Cycle, DartId, EdgeId, EdgeSpec, Graph, GraphError,
    GraphId, H1Basis, H1CohomClasses, Orientation, VertexId,
};
pub use linalg::{integer, is_scaled_identity, rational, LinalgError, Matrix, Rational};
pub use morphism::{
    EdgeImage, FiniteFlatMorphism, MorphismError, TieBreak, ValidationReport, Violation,
};

#[cfg(test)]
mod concurrency_contract {
    // all values are immutable after construction and usable from any thread
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_and_sync() {
        assert_send_sync::<crate::Graph>();
        assert_send_sync::<crate::Chain0>();
        assert_send_sync::<crate::Chain1>();
        assert_send_sync::<crate::Cycle>();
        assert_send_sync::<crate::Orientation>();
        assert_send_sync::<crate::H1Basis>();
        assert_send_sync::<crate::H1CohomClasses>();
        assert_send_sync::<crate::Matrix>();
        assert_send_sync::<crate::FiniteFlatMorphism>();
        assert_send_sync::<crate::CoveringDescription>();
        assert_send_sync::<crate::CoveringMorphism>();
        assert_send_sync::<crate::GraphTriple>();
        assert_send_sync::<crate::DimensionReport>();
    }
}
