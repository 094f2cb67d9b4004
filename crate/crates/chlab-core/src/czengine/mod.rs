//! Numerical Conley-Zehnder engine: crossing forms of sampled symplectic
//! paths, rotation numbers in `Sp(2)`, spectral flow of asymptotic
//! operators and the local model near fibre orbits.

pub mod axioms;
pub mod building;
pub mod crossing;
pub mod linalg;
pub mod local;
pub mod path;
pub mod rotation;
pub mod spectral;

pub use axioms::{check_axiom, cz_axiom_suite, random_instance, RandomLoop, AXIOMS};
pub use building::building_index;
pub use crossing::{analyze_crossings, cz_crossing_form, CrossingAnalysis, CrossingRecord};
pub use linalg::Mat;
pub use local::{
    expected_local_cz, local_model_path, local_model_path_turns, morse_hessian, orbit_local_model,
};
pub use path::{solve_path, SymmetricPath, SymplecticPath};
pub use rotation::{maslov_loop, rotation_cz_sp2, RotationIndex};
pub use spectral::{
    spectral_flow, spectral_flow_report, verify_crossing_sign_lemma,
    verify_crossing_sign_lemma_with, AsymptoticFamily, SignLemmaCrossing, SignLemmaReport,
    SpectralEvent, SpectralFlowReport,
};
