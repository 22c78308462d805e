//! Command-line front end for the indirank library: profile ingestion (JSON
//! or CSV), method dispatch, monotonicity audits, counterexample search, and
//! canned reproductions, all with machine-readable reports and a fixed
//! exit-code contract.

pub mod commands;
pub mod document;
pub mod report;
