//! Census of stable-range-one, clean and exchange matrices over a box of
//! integer entries.
//!
//! The grid `[−B, B]⁴` is processed in row blocks keyed by the `(1,1)` entry;
//! each block yields a [`ChunkRecord`] and blocks merge in any order.

use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clean::{is_clean, is_exchange_bounded, CleanVerdict};
use crate::int::Int;
use crate::mat2::Mat2;

/// Published reference totals the scan is compared against.
pub const REFERENCE_SR1_COUNT: u64 = 1988;
pub const REFERENCE_NOT_CLEAN_COUNT: u64 = 80;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanParams {
    pub entry_bound: i64,
    /// Bound for the "small entries" reading of the not-clean count: both the
    /// sub-grid of matrices and the entries of candidate idempotents.
    pub clean_bound: i64,
    pub exchange_bound: u64,
}

/// Counts for one value of the `(1,1)` entry.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkRecord {
    pub a11: i64,
    pub total: u64,
    pub units: u64,
    pub singular: u64,
    pub exchange_found: u64,
    pub clean: u64,
    pub unknown_clean: u64,
    /// Stable-range-one matrices without an exchange witness within the bound.
    pub exchange_not_found: Vec<[i64; 4]>,
    /// Stable-range-one matrices that are provably not clean.
    pub not_clean: Vec<[i64; 4]>,
    /// Clean matrices whose exchange search came back empty.
    pub clean_not_exchange: Vec<[i64; 4]>,
    /// Stable-range-one matrices with no `A = E + U` using an idempotent with
    /// entries in `[−clean_bound, clean_bound]`.
    pub no_small_clean_witness: u64,
    /// Tallies restricted to `|entries| ≤ clean_bound`.
    pub sub_units: u64,
    pub sub_singular: u64,
    pub sub_not_clean: u64,
    /// Not clean although an exchange witness was found.
    pub exchange_not_clean: u64,
    pub sub_exchange_not_clean: u64,
}

/// Every idempotent 2×2 integer matrix with entries in `[−k, k]`.
pub fn idempotents_within(k: i64) -> Vec<Mat2<Int>> {
    let mut out = vec![Mat2::zero(), Mat2::identity()];
    for x in -k..=k {
        if (x + 1).abs() > k {
            continue;
        }
        for y in -k..=k {
            for z in -k..=k {
                if x * x + x + y * z == 0 {
                    out.push(Mat2::int(x + 1, y, z, -x));
                }
            }
        }
    }
    out
}

struct Outcome {
    entries: [i64; 4],
    unit: bool,
    exchange: bool,
    clean: CleanVerdict,
    small_witness: bool,
    in_subgrid: bool,
}

fn classify(entries: [i64; 4], p: &ScanParams, small: &[Mat2<Int>]) -> Option<Outcome> {
    let [a, b, c, d] = entries;
    let det = a * d - b * c;
    if det.abs() > 1 {
        return None;
    }
    let m = Mat2::int(a, b, c, d);
    let clean = is_clean(&m, p.clean_bound.unsigned_abs()).verdict;
    Some(Outcome {
        entries,
        unit: det != 0,
        exchange: is_exchange_bounded(&m, p.exchange_bound)
            .witness()
            .is_some(),
        clean,
        small_witness: small.iter().any(|e| (&m - e).det().is_unit()),
        in_subgrid: entries.iter().all(|v| v.abs() <= p.clean_bound),
    })
}

/// All matrices of the grid with first entry `a11`.
pub fn scan_chunk(p: &ScanParams, a11: i64) -> ChunkRecord {
    let bound = p.entry_bound;
    let small = idempotents_within(p.clean_bound);
    let span = (2 * bound + 1) as usize;
    let mut outcomes: Vec<Outcome> = (0..span * span * span)
        .into_par_iter()
        .filter_map(|i| {
            let b = (i / (span * span)) as i64 - bound;
            let c = ((i / span) % span) as i64 - bound;
            let d = (i % span) as i64 - bound;
            classify([a11, b, c, d], p, &small)
        })
        .collect();
    outcomes.sort_by_key(|o| o.entries);

    let mut rec = ChunkRecord {
        a11,
        total: (span * span * span) as u64,
        ..ChunkRecord::default()
    };
    for o in outcomes {
        if o.unit {
            rec.units += 1;
        } else {
            rec.singular += 1;
        }
        if o.exchange {
            rec.exchange_found += 1;
        } else {
            rec.exchange_not_found.push(o.entries);
        }
        match o.clean {
            CleanVerdict::Clean => {
                rec.clean += 1;
                if !o.exchange {
                    rec.clean_not_exchange.push(o.entries);
                }
            }
            CleanVerdict::NotClean => {
                rec.not_clean.push(o.entries);
                if o.exchange {
                    rec.exchange_not_clean += 1;
                }
            }
            CleanVerdict::Unknown => rec.unknown_clean += 1,
        }
        if !o.small_witness {
            rec.no_small_clean_witness += 1;
        }
        if o.in_subgrid {
            if o.unit {
                rec.sub_units += 1;
            } else {
                rec.sub_singular += 1;
            }
            if o.clean == CleanVerdict::NotClean {
                rec.sub_not_clean += 1;
                if o.exchange {
                    rec.sub_exchange_not_clean += 1;
                }
            }
        }
    }
    rec
}

/// One reading of an ambiguous reference count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountVariant {
    pub name: String,
    pub count: u64,
    pub reference: u64,
    pub matches_reference: bool,
}

impl CountVariant {
    fn new(name: &str, count: u64, reference: u64) -> CountVariant {
        CountVariant {
            name: name.to_string(),
            count,
            reference,
            matches_reference: count == reference,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub entry_bound: i64,
    pub clean_bound: i64,
    pub exchange_bound: u64,
    pub total_matrices: u64,
    /// `det ∈ {−1, 0, 1}`.
    pub sr1_count: u64,
    pub sr1_units: u64,
    /// `det = 0`, i.e. stable range one without the units.
    pub sr1_singular: u64,
    pub exchange_found_count: u64,
    pub clean_count: u64,
    pub not_clean_count: u64,
    pub unknown_clean_count: u64,
    pub sr1_variants: Vec<CountVariant>,
    pub not_clean_variants: Vec<CountVariant>,
    pub not_clean: Vec<[i64; 4]>,
    pub exchange_not_found: Vec<[i64; 4]>,
    pub clean_not_exchange: Vec<[i64; 4]>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ScanSummary {
    /// Combines the blocks `a11 ∈ [−B, B]`; panics if one is missing or repeated.
    pub fn from_chunks(p: &ScanParams, chunks: &[ChunkRecord], elapsed: Duration) -> ScanSummary {
        let mut chunks: Vec<&ChunkRecord> = chunks.iter().collect();
        chunks.sort_by_key(|c| c.a11);
        let keys: Vec<i64> = chunks.iter().map(|c| c.a11).collect();
        let expected: Vec<i64> = (-p.entry_bound..=p.entry_bound).collect();
        assert_eq!(keys, expected, "one chunk per first entry");

        let sum = |f: fn(&ChunkRecord) -> u64| chunks.iter().map(|c| f(c)).sum::<u64>();
        let cat = |f: fn(&ChunkRecord) -> &Vec<[i64; 4]>| {
            chunks
                .iter()
                .flat_map(|c| f(c).iter().copied())
                .collect::<Vec<_>>()
        };
        let units = sum(|c| c.units);
        let singular = sum(|c| c.singular);
        let not_clean = cat(|c| &c.not_clean);
        let sub_units = sum(|c| c.sub_units);
        let sub_singular = sum(|c| c.sub_singular);

        let sr1_variants = vec![
            CountVariant::new("with_units", units + singular, REFERENCE_SR1_COUNT),
            CountVariant::new("without_units", singular, REFERENCE_SR1_COUNT),
            CountVariant::new(
                "without_units_or_zero",
                singular.saturating_sub(1),
                REFERENCE_SR1_COUNT,
            ),
            CountVariant::new("units_only", units, REFERENCE_SR1_COUNT),
            CountVariant::new(
                "subgrid_with_units",
                sub_units + sub_singular,
                REFERENCE_SR1_COUNT,
            ),
            CountVariant::new("subgrid_without_units", sub_singular, REFERENCE_SR1_COUNT),
        ];
        let not_clean_variants = vec![
            CountVariant::new(
                "full_grid_exact",
                not_clean.len() as u64,
                REFERENCE_NOT_CLEAN_COUNT,
            ),
            CountVariant::new(
                "subgrid_exact",
                sum(|c| c.sub_not_clean),
                REFERENCE_NOT_CLEAN_COUNT,
            ),
            CountVariant::new(
                "full_grid_small_idempotents",
                sum(|c| c.no_small_clean_witness),
                REFERENCE_NOT_CLEAN_COUNT,
            ),
            CountVariant::new(
                "full_grid_exchange_not_clean",
                sum(|c| c.exchange_not_clean),
                REFERENCE_NOT_CLEAN_COUNT,
            ),
            CountVariant::new(
                "subgrid_exchange_not_clean",
                sum(|c| c.sub_exchange_not_clean),
                REFERENCE_NOT_CLEAN_COUNT,
            ),
        ];

        ScanSummary {
            entry_bound: p.entry_bound,
            clean_bound: p.clean_bound,
            exchange_bound: p.exchange_bound,
            total_matrices: sum(|c| c.total),
            sr1_count: units + singular,
            sr1_units: units,
            sr1_singular: singular,
            exchange_found_count: sum(|c| c.exchange_found),
            clean_count: sum(|c| c.clean),
            not_clean_count: not_clean.len() as u64,
            unknown_clean_count: sum(|c| c.unknown_clean),
            sr1_variants,
            not_clean_variants,
            not_clean,
            exchange_not_found: cat(|c| &c.exchange_not_found),
            clean_not_exchange: cat(|c| &c.clean_not_exchange),
            elapsed,
        }
    }
}

/// Scans `[−entry_bound, entry_bound]⁴` in full.
pub fn density_scan(entry_bound: i64, clean_bound: i64, exchange_bound: u64) -> ScanSummary {
    assert!(entry_bound >= 1, "entry bound must be at least 1");
    let start = std::time::Instant::now();
    let p = ScanParams {
        entry_bound,
        clean_bound,
        exchange_bound,
    };
    let chunks: Vec<ChunkRecord> = (-entry_bound..=entry_bound)
        .map(|a11| scan_chunk(&p, a11))
        .collect();
    ScanSummary::from_chunks(&p, &chunks, start.elapsed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_box() {
        let s = density_scan(1, 1, 2);
        assert_eq!(s.total_matrices, 81);
        let mut units = 0;
        let mut singular = 0;
        for a in -1i64..=1 {
            for b in -1i64..=1 {
                for c in -1i64..=1 {
                    for d in -1i64..=1 {
                        match (a * d - b * c).abs() {
                            0 => singular += 1,
                            1 => units += 1,
                            _ => {}
                        }
                    }
                }
            }
        }
        assert_eq!((s.sr1_units, s.sr1_singular), (units, singular));
        assert_eq!(
            s.clean_count + s.not_clean_count + s.unknown_clean_count,
            s.sr1_count
        );
        assert!(s.clean_not_exchange.is_empty());
    }

    #[test]
    fn idempotent_enumeration() {
        let list = idempotents_within(2);
        assert!(list.iter().all(|e| e.is_idempotent()));
        let mut brute = 0;
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                for c in -2i64..=2 {
                    for d in -2i64..=2 {
                        if Mat2::int(a, b, c, d).is_idempotent() {
                            brute += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(list.len(), brute);
    }

    #[test]
    fn chunks_merge_in_any_order() {
        let p = ScanParams {
            entry_bound: 2,
            clean_bound: 2,
            exchange_bound: 1,
        };
        let mut chunks: Vec<_> = (-2..=2).map(|a| scan_chunk(&p, a)).collect();
        let forward = ScanSummary::from_chunks(&p, &chunks, Duration::ZERO);
        chunks.reverse();
        assert_eq!(
            forward,
            ScanSummary::from_chunks(&p, &chunks, Duration::ZERO)
        );
    }
}
