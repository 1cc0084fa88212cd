pub mod numring;
pub mod polyalg;
pub mod teich;
pub mod families;
pub mod picardfuchs;
pub mod series;
pub mod charp;
pub mod cli;
