//! Test-only references that share no numerics with the library.

#![allow(dead_code)]

pub mod tsr_oracle;
