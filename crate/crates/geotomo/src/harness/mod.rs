//! Inequality checkers and the verification suite.

mod applications;
mod lemmas;
mod nets;
mod proj;
mod quotient;
mod suite;

pub use applications::{
    check_containment_sections, check_isotropy, check_mean_value, check_min_projection,
    check_ovr_convex_hull, check_slicing,
};
pub use lemmas::{check_barany_furedi, check_dpp, check_grinberg};
pub use nets::{DirectionNet, SubspaceNet};
pub use proj::{check_main_proj, check_proj_dominance, check_proj_section_mixed};
pub use quotient::{check_arb_ovr, check_quotient_holder, check_quotient_main};
pub use suite::{
    list_checkers, paper_suite, parse_density, run_one, run_suite, CheckSpec, OutputFormat,
    RunConfig, SuiteConfig, Timing,
};
