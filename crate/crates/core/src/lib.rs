pub mod algebra;
pub mod newton;
pub mod rootfind;
pub mod tuples;
pub mod zolotarev;
pub mod preimage;
