pub mod packet;
pub mod persistent;
pub mod spectrum;
pub mod sweep;
pub mod verify;
