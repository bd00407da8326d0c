pub mod certificate;
pub mod cli;
pub mod coclique;
pub mod error;
pub mod gf2;
pub mod golay;
pub mod graph;
pub mod kissing;
pub mod lift;
pub mod pipeline;
pub mod quotient;
pub mod word;
