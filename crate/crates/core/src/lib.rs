#![no_std]
extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod arith;
pub mod catalog;
pub mod cyclo;
pub mod explorer;
pub mod ideals;
pub mod matrix;
pub mod mdata;
pub mod verify;
