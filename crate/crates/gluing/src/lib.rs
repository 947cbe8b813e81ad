pub mod error;
pub mod homalg;
pub mod group;
pub mod sections;
pub mod functor;
pub mod oliver;
pub mod obstruction;
pub mod verify;
