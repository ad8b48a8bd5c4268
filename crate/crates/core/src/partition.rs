//! Canonical partition-function tables.
//!
//! `Z_{l,n}` satisfies the convolution `Z_{l,n} = sum_m Z_{k,m} Z_{l-k,n-m}`
//! for any split `k`; the builder uses `k = floor(l/2)` so a row only ever
//! combines two earlier rows of roughly half the length. The same recursion
//! holds verbatim for the truncated functions `Z^(M)` obtained by capping
//! single-site occupations at `M`, which is what turns these tables into
//! exact maximum-occupation numerics.
//!
//! All entries are stored as natural logs; impossible mass (negative `n`,
//! or `n > l * M` in a truncated table) carries `-inf`.

use crate::logspace::{log_convolve, LOG_ZERO};
use crate::weights::log_weight;
use crate::{Error, Result};
use std::io::{BufRead, BufWriter, Read, Write};
use std::path::Path;

/// Default memory budget for table construction (2 GiB).
pub const DEFAULT_BUDGET_BYTES: u64 = 2 << 30;

/// Dense table of `log Z_{l,n}` for `1 <= l <= max_l`, `0 <= n <= max_n`,
/// optionally truncated at a maximum single-site occupation.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionTable {
    d: f64,
    max_l: u32,
    max_n: u32,
    truncation: Option<u32>,
    /// Row-major, `max_l` rows of width `max_n + 1`; row `l` starts at
    /// `(l - 1) * (max_n + 1)`.
    log_z: Vec<f64>,
}

impl PartitionTable {
    /// Build a table with the default memory budget.
    pub fn build(d: f64, max_l: u32, max_n: u32, truncation: Option<u32>) -> Result<Self> {
        Self::build_with_budget(d, max_l, max_n, truncation, DEFAULT_BUDGET_BYTES)
    }

    pub fn build_with_budget(
        d: f64,
        max_l: u32,
        max_n: u32,
        truncation: Option<u32>,
        budget_bytes: u64,
    ) -> Result<Self> {
        if max_l == 0 {
            return Err(Error::InvalidParams("table needs at least one row".into()));
        }
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::InvalidParams(format!(
                "diffusion parameter must be positive, got {d}"
            )));
        }
        if let Some(m) = truncation {
            if m == 0 {
                return Err(Error::InvalidParams(
                    "occupation truncation must be positive".into(),
                ));
            }
        }
        let width = u64::from(max_n) + 1;
        let required = u64::from(max_l) * width * 8;
        if required > budget_bytes {
            return Err(Error::BudgetExceeded {
                required,
                budget: budget_bytes,
            });
        }

        let width = width as usize;
        let mut log_z = vec![LOG_ZERO; max_l as usize * width];

        // Row 1: single-site weights, truncated if requested.
        let cap1 = row_cap(1, max_n, truncation) as usize;
        for n in 0..=cap1 {
            log_z[n] = log_weight(n as u64, d);
        }

        // Row l from rows floor(l/2) and ceil(l/2).
        for l in 2..=max_l {
            let k = l / 2;
            let cap = row_cap(l, max_n, truncation) as usize;
            let cap_a = row_cap(k, max_n, truncation) as usize;
            let cap_b = row_cap(l - k, max_n, truncation) as usize;
            let (head, tail) = log_z.split_at_mut((l as usize - 1) * width);
            let row_a = &head[(k as usize - 1) * width..][..cap_a + 1];
            let row_b = &head[((l - k) as usize - 1) * width..][..cap_b + 1];
            let out = log_convolve(row_a, row_b, cap + 1);
            tail[..cap + 1].copy_from_slice(&out);
        }

        Ok(Self {
            d,
            max_l,
            max_n,
            truncation,
            log_z,
        })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn max_l(&self) -> u32 {
        self.max_l
    }

    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    fn width(&self) -> usize {
        self.max_n as usize + 1
    }

    /// Row of `log Z_{l, .}` for `1 <= l <= max_l`.
    pub fn row(&self, l: u32) -> &[f64] {
        assert!(l >= 1 && l <= self.max_l, "row {l} out of range");
        &self.log_z[(l as usize - 1) * self.width()..][..self.width()]
    }

    /// `log Z_{l,n}` with the conventions `Z_{0,0} = 1`, `Z_{0,n>0} = 0`
    /// and `Z_{l,n} = 0` for `n < 0`.
    pub fn log_z(&self, l: u32, n: i64) -> f64 {
        if n < 0 {
            return LOG_ZERO;
        }
        if l == 0 {
            return if n == 0 { 0.0 } else { LOG_ZERO };
        }
        let n = n as u64;
        if n > u64::from(self.max_n) {
            panic!(
                "log_z({l}, {n}) outside table (maxL={}, maxN={})",
                self.max_l, self.max_n
            );
        }
        self.log_z[(l as usize - 1) * self.width() + n as usize]
    }

    /// Binary serialization: header `d: f64, maxL: u64, maxN: u64,
    /// truncation: u64 (0 = none)`, then row-major f64 entries, all
    /// little-endian.
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(&self.d.to_le_bytes())?;
        w.write_all(&u64::from(self.max_l).to_le_bytes())?;
        w.write_all(&u64::from(self.max_n).to_le_bytes())?;
        w.write_all(&u64::from(self.truncation.unwrap_or(0)).to_le_bytes())?;
        for v in &self.log_z {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn write_binary_file<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let f = std::fs::File::create(path)?;
        self.write_binary(BufWriter::new(f))
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<Self> {
        let mut b8 = [0u8; 8];
        r.read_exact(&mut b8)?;
        let d = f64::from_le_bytes(b8);
        r.read_exact(&mut b8)?;
        let max_l = u64::from_le_bytes(b8);
        r.read_exact(&mut b8)?;
        let max_n = u64::from_le_bytes(b8);
        r.read_exact(&mut b8)?;
        let truncation = u64::from_le_bytes(b8);
        if max_l == 0 || max_l > u64::from(u32::MAX) || max_n > u64::from(u32::MAX) {
            return Err(Error::Format(format!(
                "implausible table dimensions {max_l} x {max_n}"
            )));
        }
        let entries = (max_l * (max_n + 1)) as usize;
        let mut log_z = Vec::with_capacity(entries);
        for _ in 0..entries {
            r.read_exact(&mut b8)?;
            log_z.push(f64::from_le_bytes(b8));
        }
        Ok(Self {
            d,
            max_l: max_l as u32,
            max_n: max_n as u32,
            truncation: if truncation == 0 {
                None
            } else {
                Some(truncation as u32)
            },
        log_z,
        })
    }

    pub fn read_binary_file<P: AsRef<Path>>(path: P) -> Result<Self> {
        let f = std::fs::File::open(path)?;
        Self::read_binary(std::io::BufReader::new(f))
    }

    /// CSV export for inspection: `l,n,log_z` rows, `-inf` spelled out.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "l,n,log_z")?;
        for l in 1..=self.max_l {
            for (n, v) in self.row(l).iter().enumerate() {
                writeln!(w, "{l},{n},{v}")?;
            }
        }
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        // Round-trip parser for the inspection format; mostly for tests.
        let reader = std::io::BufReader::new(r);
        let mut rows: Vec<(u32, u32, f64)> = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            if idx == 0 {
                continue;
            }
            let mut parts = line.split(',');
            let bad = || Error::Format(format!("bad csv line: {line}"));
            let l: u32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let n: u32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let v: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            rows.push((l, n, v));
        }
        let max_l = rows.iter().map(|r| r.0).max().unwrap_or(0);
        let max_n = rows.iter().map(|r| r.1).max().unwrap_or(0);
        if max_l == 0 {
            return Err(Error::Format("empty table".into()));
        }
        let width = max_n as usize + 1;
        let mut log_z = vec![LOG_ZERO; max_l as usize * width];
        for (l, n, v) in rows {
            log_z[(l as usize - 1) * width + n as usize] = v;
        }
        Ok(Self {
            d: f64::NAN,
            max_l,
            max_n,
            truncation: None,
            log_z,
        })
    }
}

/// Largest reachable total on `l` sites given the truncation.
fn row_cap(l: u32, max_n: u32, truncation: Option<u32>) -> u32 {
    match truncation {
        Some(m) => (u64::from(l) * u64::from(m)).min(u64::from(max_n)) as u32,
        None => max_n,
    }
}
