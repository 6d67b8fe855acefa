//! Acquaintance time of graphs.
//!
//! Every vertex of a graph holds one agent. A round picks a matching and the
//! agents on each matched edge swap places; two agents are acquainted once
//! they sit on adjacent vertices. The crate simulates and verifies such
//! strategies, computes lower bounds, builds strategies for many graph
//! families, solves tiny instances exactly, and implements the algorithms for
//! graphs whose acquaintance time is one.

pub mod ac_one;
pub mod bounds;
pub mod dynamics;
pub mod exact;
pub mod graph;
pub mod hardness;
pub mod strategies;
