pub mod cli;
pub mod laurent;
pub mod lp;
pub mod quiver;
pub mod surface;
