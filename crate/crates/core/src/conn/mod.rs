// SPDX-License-Identifier: Apache-2.0

//! Undirected dynamic connectivity: the primal-graph component structure and
//! its brute-force twin.

mod ett;
mod hdt;
mod naive;

pub use hdt::DynConnectivity;
pub use naive::NaiveConnectivity;
