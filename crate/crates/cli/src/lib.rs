//! Std companion to the core library: run configuration, structured
//! reports, command runners, and the acceptance suite.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod report;
