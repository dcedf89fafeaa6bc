pub mod oracle;
pub mod traces;
