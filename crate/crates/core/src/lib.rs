pub mod family;
pub mod polyring;
pub mod resultants;
pub mod strata;
pub mod theorem;
