//! IO, file formats, parallel counting, and batch reporting on top of the
//! exact-arithmetic core.

pub mod driver;
pub mod formats;
pub mod report;
