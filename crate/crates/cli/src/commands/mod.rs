pub mod bench;
pub mod corr;
pub mod limit;
pub mod moments;
pub mod sample;
pub mod writhe;
