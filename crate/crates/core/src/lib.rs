#![no_std]
#![doc = include_str!("../README.md")]
// `!(x > 0.0)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod cf_core;
pub mod identity_catalog;
pub mod quadrature;
pub mod rational;
pub mod riccati;
pub mod series_transform;
