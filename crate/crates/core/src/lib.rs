pub mod binmap;
pub mod bits;
pub mod code;
pub mod distance;
pub mod dual;
pub mod factor;
pub mod gf2poly;
pub mod gf4;
pub mod linalg;
pub mod quantum;
pub mod ring;
pub mod search;
pub mod tables;
