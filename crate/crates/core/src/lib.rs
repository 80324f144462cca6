//! Exact decision, certification and cross-verification of stable range one,
//! clean and exchange properties for 2×2 matrices over ℤ and ℤ/n.

pub mod clean;
pub mod conic;
pub mod error;
pub mod int;
pub mod mat2;
pub mod matn;
pub mod ring;
pub mod scan;
pub mod smith;
pub mod sr1;
pub mod unitizer;
pub mod verify;

pub use clean::{
    is_clean, is_exchange_bounded, is_nontrivially_clean, CleanReport, CleanVerdict, Completeness,
    ExchangeReport,
};
pub use conic::{solve_conic, Conic, ConicSolutionSet};
pub use error::{Error, Result};
pub use int::Int;
pub use mat2::Mat2;
pub use matn::MatN;
pub use ring::{Ring, Scalar, Zmod};
pub use scan::{density_scan, ScanSummary};
pub use smith::{conjugating_pair_check, smith_form, SmithForm};
pub use sr1::{is_sr1_integer, lsr1_finite, rsr1_finite, unit_condition_value, Sr1Verdict};
pub use unitizer::{find_unitizer, search_unitizer_bounded, UnitizerCertificate, UnitizerOracle};
