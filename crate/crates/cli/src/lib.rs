//! Command-line front end for `gaussian-partners`: JSON documents, command
//! dispatch and the reference-example table.

pub mod documents;
pub mod output;
pub mod reference;
pub mod run;
