//! Small cancellation labellings of graph families, their verification,
//! homology covers with walls, and bounded exploration of graphical presentations.

pub mod graph;
pub mod labeling;
pub mod lll;
pub mod ratio;
pub mod covers;
pub mod verify;
pub mod presentation;
