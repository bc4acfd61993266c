//! Exact construction and verification of polynomial BKP, DKP and MDKP
//! tau-functions.

pub mod bench;
pub mod fock;
pub mod hirota;
pub mod io;
mod linalg;
pub mod pfaffian;
pub mod polycore;
pub mod sample;
pub mod tau_bkp;
pub mod tau_dkp;
pub mod verify;
