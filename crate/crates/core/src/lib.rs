//! Finiteness testing, order computation and recognition for finitely
//! generated matrix groups over infinite fields.

pub mod algfun;
pub mod decide;
pub mod descriptor;
pub mod error;
pub mod extension;
pub mod field;
pub mod finite;
pub mod fingrp;
pub mod fqfactor;
pub mod group;
pub mod intfactor;
pub mod intpoly;
pub mod matrix;
pub mod mpoly;
pub mod numfield;
pub mod order;
pub mod parse;
pub mod ratfun;
pub mod rational;
pub mod recognize;
pub mod sw;
pub mod upoly;

pub use error::{Error, Result};
pub use field::{Budget, ElemSize, Field};
