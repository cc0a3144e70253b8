//! Additive bookkeeping for the spin bordism groups through degree 127 via
//! the Anderson-Brown-Peterson splitting: connective real K-theory covers
//! indexed by partitions with parts >= 2, plus mod-2 Eilenberg-MacLane
//! summands whose ranks form the `Z_i` column of the embedded table.

use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exec;
use crate::partition::{partitions_min2, Partition};

/// Number of partitions of `n`, by the pentagonal-number recurrence.
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc: i128 = 0;
        let mut k: usize = 1;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            let g2 = k * (3 * k + 1) / 2;
            if g1 > m && g2 > m {
                break;
            }
            let sign: i128 = if k.is_multiple_of(2) { -1 } else { 1 };
            if g1 <= m {
                acc += sign * p[m - g1] as i128;
            }
            if g2 <= m {
                acc += sign * p[m - g2] as i128;
            }
            k += 1;
        }
        p[m] = u64::try_from(acc).expect("partition counts are positive");
    }
    p[n]
}

/// Number of partitions of `n` into parts `>= 2`: deleting the ones from a
/// partition of `m <= n` gives the bijection `p_{>=2}(n) = p(n) - p(n-1)`.
pub fn count_partitions_min2(n: u32) -> u64 {
    if n == 0 {
        return 1;
    }
    partition_count(n) - partition_count(n - 1)
}

/// One summand of the splitting: a connective cover of real K-theory indexed
/// by a partition with parts `>= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbpSummand {
    j_partition: Partition,
    n: u32,
    cover_level: u32,
}

impl AbpSummand {
    /// The cover level is `4 n(J)` for even weight and `4 n(J) - 2` for odd
    /// weight; below it the summand contributes nothing.
    pub fn new(j_partition: Partition) -> Self {
        assert!(
            j_partition.parts().iter().all(|&p| p >= 2),
            "splitting partitions have parts >= 2"
        );
        let n = j_partition.weight();
        let cover_level = if n.is_multiple_of(2) {
            4 * n
        } else {
            4 * n - 2
        };
        AbpSummand {
            j_partition,
            n,
            cover_level,
        }
    }

    pub fn j_partition(&self) -> &Partition {
        &self.j_partition
    }

    pub fn weight(&self) -> u32 {
        self.n
    }

    pub fn cover_level(&self) -> u32 {
        self.cover_level
    }

    /// Z/2 contribution at degree `i`: one copy when the degree clears the
    /// cover level and sits in the torsion pattern of real K-theory.
    pub fn torsion_at(&self, i: u32) -> bool {
        i >= self.cover_level && (i % 8 == 1 || i % 8 == 2)
    }

    /// Z contribution at degree `i`.
    pub fn free_at(&self, i: u32) -> bool {
        i >= self.cover_level && i.is_multiple_of(4)
    }
}

/// All summands whose cover level is at most `degree`.
pub fn abp_summands_through(degree: u32) -> Vec<AbpSummand> {
    let mut out = Vec::new();
    let mut n = 0;
    loop {
        let level = if n % 2 == 0 { 4 * n } else { 4 * n - 2 };
        if level > degree {
            break;
        }
        for p in partitions_min2(n) {
            out.push(AbpSummand::new(p));
        }
        n += 1;
    }
    out
}

/// Rational rank of the spin bordism group in degree `i`: zero off the
/// multiples of 4, the unrestricted partition number `p(i/4)` on them.
pub fn mspin_rational_rank(i: u32) -> u64 {
    if !i.is_multiple_of(4) {
        return 0;
    }
    partition_count(i / 4)
}

/// Number of Z/2 summands contributed at degree `i` by all covers: only
/// degrees `1, 2 mod 8` receive torsion, one copy per summand whose cover
/// level is cleared.
pub fn ko_cover_torsion(i: u32) -> u64 {
    if i % 8 != 1 && i % 8 != 2 {
        return 0;
    }
    let mut total = 0u64;
    let mut n = 0;
    loop {
        let level = if n % 2 == 0 { 4 * n } else { 4 * n - 2 };
        if level > i {
            break;
        }
        total += count_partitions_min2(n);
        n += 1;
    }
    total
}

/// Number of Z summands contributed at degree `i` by all covers.
pub fn abp_free_rank(i: u32) -> u64 {
    if !i.is_multiple_of(4) {
        return 0;
    }
    abp_summands_through(i)
        .iter()
        .filter(|s| s.free_at(i))
        .count() as u64
}

/// One row of the bordism table: degree, rational rank, F2-dimension of the
/// torsion, and the `Z_i` column separating off the Eilenberg-MacLane part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MSpinRow {
    pub degree: u32,
    pub rank: u64,
    pub torsion: u64,
    pub dim_z: u64,
}

/// A failed consistency identity at one row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub degree: u32,
    pub kind: DiscrepancyKind,
    pub expected: u64,
    pub actual: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscrepancyKind {
    /// Row order: degree must equal the row index.
    Degree,
    /// Rational rank must equal the partition number.
    Rank,
    /// Torsion must equal cover torsion plus the `Z_i` column.
    Torsion,
    /// In degrees `3 mod 4` all torsion is Eilenberg-MacLane.
    Mod4Torsion,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            DiscrepancyKind::Degree => "degree",
            DiscrepancyKind::Rank => "rank",
            DiscrepancyKind::Torsion => "torsion",
            DiscrepancyKind::Mod4Torsion => "torsion in degree 3 mod 4",
        };
        write!(
            f,
            "degree {}: {} is {}, expected {}",
            self.degree, what, self.actual, self.expected
        )
    }
}

/// Checks every row against the splitting: the rank column must reproduce
/// partition numbers, the torsion column must close as cover torsion plus
/// `Z_i`, and in degrees `3 mod 4` the torsion is pure `Z_i`. Rows are
/// independent and validated in parallel; discrepancies are data, not errors.
pub fn validate_table(rows: &[MSpinRow]) -> Vec<Discrepancy> {
    let per_row = exec::map_indexed(rows.len(), exec::ROWS_PAR_MIN, |idx| {
        let row = &rows[idx];
        let mut out = Vec::new();
        if row.degree != idx as u32 {
            out.push(Discrepancy {
                degree: row.degree,
                kind: DiscrepancyKind::Degree,
                expected: idx as u64,
                actual: row.degree as u64,
            });
            return out;
        }
        let i = row.degree;
        let rank = mspin_rational_rank(i);
        if row.rank != rank {
            out.push(Discrepancy {
                degree: i,
                kind: DiscrepancyKind::Rank,
                expected: rank,
                actual: row.rank,
            });
        }
        let torsion = ko_cover_torsion(i) + row.dim_z;
        if row.torsion != torsion {
            out.push(Discrepancy {
                degree: i,
                kind: DiscrepancyKind::Torsion,
                expected: torsion,
                actual: row.torsion,
            });
        }
        if i % 4 == 3 && row.torsion != row.dim_z {
            out.push(Discrepancy {
                degree: i,
                kind: DiscrepancyKind::Mod4Torsion,
                expected: row.dim_z,
                actual: row.torsion,
            });
        }
        out
    });
    per_row.into_iter().flatten().collect()
}

/// Parses the table format: one row per line, `i rank torsion dimz` in ASCII
/// decimal; blank lines ignored.
pub fn parse_table(text: &str) -> Result<Vec<MSpinRow>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::InvalidSeries("table row must have four fields"));
        }
        let parse = |s: &str| -> Result<u64> {
            s.parse::<u64>()
                .map_err(|_| Error::Internal(format!("bad integer in table line {}", lineno + 1)))
        };
        rows.push(MSpinRow {
            degree: parse(fields[0])? as u32,
            rank: parse(fields[1])?,
            torsion: parse(fields[2])?,
            dim_z: parse(fields[3])?,
        });
    }
    Ok(rows)
}

const TABLE_TEXT: &str = include_str!("../data/mspin_table.txt");
const TABLE_SHA256: &str = "2f1c100497772c0f9f5f79388eaba458e692fd74718e4df4785f0aca6b210c5b";

/// The embedded 128-row ground-truth table, checksummed on every load.
pub fn embedded_table() -> Result<Vec<MSpinRow>> {
    let digest = Sha256::digest(TABLE_TEXT.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{:02x}", b)).collect();
    if hex != TABLE_SHA256 {
        return Err(Error::Internal(format!(
            "embedded table checksum mismatch: {}",
            hex
        )));
    }
    parse_table(TABLE_TEXT)
}
