use std::path::PathBuf;

use chargeplace::Error;
use serde::Serialize;

/// Process exit codes. Each failure class has its own code.
pub mod exit {
    pub const USAGE: i32 = 2;
    pub const VERIFY_FAILED: i32 = 3;
    pub const IO: i32 = 4;
    pub const PARSE: i32 = 5;
    pub const INVALID_ARGUMENT: i32 = 6;
    pub const OUTLIERS: i32 = 7;
    pub const FINGERPRINT: i32 = 8;
    pub const EXACT_LIMIT: i32 = 9;
    pub const NOT_DOMINATING: i32 = 10;
}

#[derive(Debug)]
pub enum Failure {
    Lib(Error),
    File { path: PathBuf, source: std::io::Error },
    Usage(String),
    /// Verification ran and the set did not pass.
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

pub fn file_error(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> Failure + '_ {
    move |source| Failure::File { path: path.to_path_buf(), source }
}

#[derive(Serialize)]
struct Line<'a> {
    error: &'a str,
    exit_code: i32,
    message: String,
}

impl Failure {
    /// Short kebab-case class name and exit code.
    pub fn kind(&self) -> (&'static str, i32) {
        use exit::*;
        match self {
            Failure::File { .. } => ("io", IO),
            Failure::Usage(_) => ("usage", USAGE),
            Failure::Verify(_) => ("verify-failed", VERIFY_FAILED),
            Failure::Lib(e) => match e {
                Error::Io(_) => ("io", IO),
                Error::MalformedRow { .. }
                | Error::UnknownEndpoint { .. }
                | Error::NonPositiveLength { .. }
                | Error::SelfLoop { .. }
                | Error::ConflictingDuplicateEdge { .. }
                | Error::DuplicateVertex { .. }
                | Error::Cache(_)
                | Error::Json(_) => ("parse", PARSE),
                Error::Outliers { .. }
                | Error::DegreeBelowK { .. }
                | Error::IsolatedVertices(_)
                | Error::ZeroDegree
                | Error::EmptyDegreeSequence
                | Error::NoNonStationVertices => ("degree", OUTLIERS),
                Error::FingerprintMismatch { .. } => ("fingerprint-mismatch", FINGERPRINT),
                Error::GraphTooLarge { .. } | Error::NoSetWithinLimit { .. } => ("exact-limit", EXACT_LIMIT),
                Error::NotDominating { .. } => ("not-dominating", NOT_DOMINATING),
                _ => ("invalid-argument", INVALID_ARGUMENT),
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(Error::Outliers { k, outliers }) => format!(
                "{} vertices have fewer than {k} neighbours (first: {}); choose --outlier-policy force-include or ignore",
                outliers.len(),
                outliers.first().map_or(String::new(), |v| v.to_string())
            ),
            Failure::Lib(e) => e.to_string(),
            Failure::File { path, source } => format!("{}: {source}", path.display()),
            Failure::Usage(m) | Failure::Verify(m) => m.clone(),
        }
    }

    /// One JSON object on one line.
    pub fn to_line(&self) -> String {
        let (error, exit_code) = self.kind();
        let message = self.message().replace('\n', " ");
        serde_json::to_string(&Line { error, exit_code, message }).expect("plain strings serialize")
    }
}
