pub mod bracket;
pub mod diagram;
pub mod evolution;
pub mod fitter;
pub mod harness;
pub mod khovanov;
pub mod laurent;
pub mod lee;
