pub mod compare;
pub mod evaluate;
pub mod jitter;
pub mod refine;
pub mod steady_state;
pub mod synth;
