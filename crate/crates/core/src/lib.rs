pub mod census;
pub mod classify;
pub mod closedform;
pub mod diagram;
pub mod girth;
pub mod laurent;
pub mod oracle;
pub mod repr;
pub mod selftest;
