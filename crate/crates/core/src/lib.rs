pub mod cyclo;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod modp;
pub mod par;
pub mod chars;
pub mod polysolve;
pub mod localdeg;
pub mod eulerchar;
pub mod pipeline;
