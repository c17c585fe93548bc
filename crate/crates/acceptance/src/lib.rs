//! End-to-end acceptance checks for `epr-auth`. Everything lives in the
//! `acceptance` test target, which prints one line per criterion:
//!
//! ```text
//! cargo test -p epr-auth-acceptance
//! ```
