pub mod belief;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod features;
pub mod lexicon;
pub mod model;
pub mod pipeline;
pub mod stats;
pub mod synth;
pub mod textproc;

pub use error::{Error, Result};
