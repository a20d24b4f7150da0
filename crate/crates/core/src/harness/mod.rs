//! Verification harness: named checks, reports and the run driver.

pub mod cache;
pub mod checks;
pub mod construction;
pub mod report;
pub mod table;

pub use cache::{Cache, CacheStatus};
pub use checks::{resolve_ids, run, RunConfig, RunOutcome, CHECK_IDS};
pub use construction::{verify_construction, verify_howlett, verify_s0_centralizer};
pub use report::{Verdict, VerificationReport};
pub use table::{check_row, d4_representative, table1_rows, verify_table1, Table1Check, Table1Computed, Table1Row};
