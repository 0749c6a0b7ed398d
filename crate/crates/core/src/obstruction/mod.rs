//! Verification of the concrete computations behind the obstruction
//! argument, and the assembled report.

mod eigen;
mod morita;
mod report;

pub use eigen::{eigenvalue_check, EigenFailure};
pub use morita::{
    derive_contradiction, verify_corner_commutation, verify_corner_commutation_with, verify_fixed_point_free,
    ContradictionChain, CornerCheck, FixedPointCheck, Matrix, MoritaScenario,
};
pub use report::{build_report, render_text, Claim, ClaimStatus, ObstructionReport, ReportTargets, UNSAT_REPLAYS};
