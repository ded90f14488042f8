pub mod analyzer;
pub mod bench;
pub mod codec;
pub mod config;
pub mod decompressor;
pub mod encoder;
pub mod error;
pub mod fpgrowth;
pub mod manifest;
pub mod model;
pub mod packer;
pub mod pipeline;
pub mod processor;
pub mod synth;
pub mod text;

pub use config::{default_config, Backend, Config, TokenStrategy};
pub use decompressor::{decompress, decompress_profile, DecompressionProfile};
pub use error::{Error, Result};
pub use pipeline::compress;
