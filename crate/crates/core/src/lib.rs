#![allow(clippy::needless_range_loop)]

pub mod exact;
pub mod tangle;
pub mod zoo;
pub mod template;
pub mod tl;
pub mod present;
pub mod cli;
