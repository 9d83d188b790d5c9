//! Executable extensional-equality checking for functor and monad laws,
//! monadic dynamical systems and backward-induction policy evaluation.
//!
//! Every domain is finite and every function is a table, so each law is a
//! decision procedure: it either passes over the whole quantified space (or
//! a reproducible sample of it) or reports the least counterexample.

pub mod carrier;
pub mod dp;
pub mod dynsys;
pub mod eqcheck;
pub mod error;
pub mod laws;
pub mod monads;
pub mod quant;
pub mod report;
pub mod table;
pub mod value;

pub use carrier::{enumerate_carrier, enumerate_carrier_with, enumerate_domain, Caps, CarrierDesc, FiniteType};
pub use dp::{check_measure_shift, check_val_equiv, val, val_spec, Measure, Policy, Sdp};
pub use dynsys::{flow, flow_det_left, flow_det_right, flow_right, trj, DetSys, MonSys};
pub use eqcheck::{check_comp_pres_ee, compose_tables, ext_eq, extify_eq, EqReport};
pub use error::{Error, Result};
pub use laws::{check_law, law_catalog, run_suite, Domains, Law, SuiteProfile};
pub use monads::{instance_by_name, monad_by_name, Functor, Instance, InstanceConfig, Monad};
pub use quant::{Mode, Quantifier};
pub use report::{LawReport, Witness};
pub use table::{enumerate_functions, FnTable};
pub use value::{canonical_compare, parse_value, Rational, Value};
