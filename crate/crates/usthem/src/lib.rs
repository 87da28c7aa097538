//! Measurement and mitigation toolkit for `us versus them' bias in
//! LLM-generated text.
//!
//! The pipeline: generate cue-prefixed sentences ("We are ..." / "They
//! are ...") per persona through any chat-completions endpoint, score them
//! 0-100 with a judge model, then compare corpora with rank-turbulence
//! divergence, sentiment word shifts, regression models, and contextual
//! embedding regression. The `ion` module builds neutralization datasets
//! (SFT and DPO formats) and evaluates bias deltas before/after mitigation.
//!
//! Every capability has a runnable demo under `examples/`; all demos run
//! offline against the deterministic endpoints in [`stub`].

pub mod allotax;
pub mod cli;
pub mod config;
pub mod corpus;
pub mod embedreg;
pub mod gateway;
pub mod generation;
pub mod inference;
pub mod ion;
pub mod report;
pub mod scoring;
pub mod stub;
pub mod svg;
pub mod wordshift;

pub use corpus::{Corpus, Cue, Persona, SentenceRecord, TargetGroup};
