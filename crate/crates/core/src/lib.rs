pub mod certificate;
pub mod cocycle;
pub mod dyadic;
pub mod element;
pub mod error;
pub mod labelling;
pub mod plmap;
pub mod structure;
pub mod witness;
