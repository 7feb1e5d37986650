pub mod diffop;
pub mod quantize;
pub mod series;
pub mod thetaz;
pub mod virasoro;
