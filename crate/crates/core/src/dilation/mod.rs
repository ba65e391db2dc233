mod naimark;
mod shift;
mod variety;

pub use naimark::{check_naimark, naimark, NaimarkCheck, NaimarkDilation, NaimarkInput, RANK_ONE_TOL, SUM_TOL};
pub use shift::{
    cc_dilation_verify, example_pair, example_subspace, no_t_obstruction, truncated_shift, word_exponents,
    DilationReport, ObstructionReport,
};
pub use variety::{
    circle_point, nilpotent_example, spectral_radius, variety_check, variety_extend, variety_verdict, VarietyPair,
    VarietyProfile, VarietyVerdict, DEFAULT_ANGLE_SAMPLES, RELATION_TOL, SPECTRAL_BOUND,
};
