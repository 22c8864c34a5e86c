pub mod appendix;
pub mod atlas;
pub mod axioms;
pub mod cli;
pub mod model;
pub mod retraction;
pub mod roots;
pub mod scalars;
