//! Graceful and near graceful labellings of cyclic snakes: constructions,
//! verification, and brute-force search oracles.
//!
//! A cyclic snake kC_n is a connected graph whose blocks are all n-cycles
//! and whose block-cutpoint graph is a path. The crate builds (near)
//! graceful labellings for the kC_{4n} family (n <= 6, any string), for
//! strings over {2,3,4} at any n, for variable snakes, and for the kC_6,
//! kC_10 and kC_14 families; verifies and classifies arbitrary labellings;
//! and independently reproduces the constructions by exhaustive search.
//!
//! The `parallel` feature (on by default) runs the search oracles over
//! disjoint top-level branches with rayon; results are merged in branch
//! order, so output is identical either way.
//!
//! ```
//! use snakegrace::{build_kc6, Classification};
//!
//! let built = build_kc6(5, &[3, 1, 2], None).unwrap();
//! assert_eq!(built.report.classification, Classification::NearGracefulOmitM);
//! assert_eq!(built.report.m, 30);
//! ```

pub mod builder;
pub mod cycles;
pub mod error;
pub mod output;
pub mod search;
pub mod topology;
pub mod transforms;
pub mod verifier;

pub use builder::{
    attach_graceful, build_d234, build_kc10, build_kc14, build_kc4n, build_kc6, build_linear,
    build_variable, BuiltSnake, ZeroPlacement,
};
pub use cycles::{
    complete_set_check, eq2_cycle, is_useful_cycle, odd_from_even, rosa_cycle, table1, table2_c6,
    table3_c10, table4_c14, Parity, SymbolicCycleLabelling, SymbolicLabel, UsefulCycleSpec,
};
pub use topology::{
    build_snake, emit_tuple_form, parse_tuple_form, recover_string, LabelledGraph, SnakeShape,
    TupleForm,
};
pub use transforms::{complement, near_complement, shift};
pub use verifier::{
    alpha_boundary, classify, induced_edge_labels, Classification, VerificationReport,
};
