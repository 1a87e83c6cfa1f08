pub mod blh;
pub mod cli;
pub mod dilation;
pub mod error;
pub mod hardy;
pub mod matrixcore;
pub mod model;
pub mod tuples;
