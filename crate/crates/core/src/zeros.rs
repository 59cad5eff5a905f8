//! Zeros of `Z(t)`: Gram points, isolation by sign changes with Gram-block
//! bookkeeping, refinement, zero lists, blocks, and the zero file format.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::height::{DecimalBase, HeightValue, OFFSET_LIMIT};
use crate::specfun::{theta, theta_dd, theta_prime};
use crate::zeta::z_with_target;

/// Accuracy demanded of `Z` while locating zeros.
const Z_TARGET: f64 = 1e-11;

/// Maximum subdivision of a Gram interval when hunting for missing zeros.
pub const MAX_SUBDIVISION: usize = 64;

/// Mean zero spacing `2π / log(t/2π)`.
pub fn mean_spacing(t: f64) -> f64 {
    2.0 * PI / (t / (2.0 * PI)).ln()
}

/// Absolute refinement tolerance at height `t`.
pub fn refinement_tolerance(t: f64) -> f64 {
    1e-9 * (t / 1e6).max(1.0)
}

fn theta_any(t: Dd) -> Dd {
    if t.hi >= 10.0 {
        theta_dd(t)
    } else {
        Dd::from_f64(theta(t.hi).unwrap_or(f64::NAN))
    }
}

/// Inverse of the leading asymptotic `u (ln u − 1) = n + 1/8`, `u = t/2π`.
fn gram_seed(n: i64) -> f64 {
    if n < 1 {
        return [9.666_908_056, 17.845_599_540][(n + 1) as usize];
    }
    let y = n as f64 + 0.125;
    // Newton on u ln u - u - y
    let mut u = (y / (y / std::f64::consts::E).ln().max(1.0)).max(3.0);
    for _ in 0..50 {
        let f = u * (u.ln() - 1.0) - y;
        let du = f / u.ln();
        u -= du;
        if du.abs() < 1e-14 * u {
            break;
        }
    }
    2.0 * PI * u
}

/// Gram point `g_n` as a double-double, `θ(g_n) = nπ`.
pub fn gram_point_dd(n: i64) -> Result<Dd> {
    if n < -1 {
        return Err(Error::domain(format!("Gram index must be >= -1, got {n}")));
    }
    let target = Dd::PI.mul_f64(n as f64);
    let mut t = Dd::from_f64(gram_seed(n));
    for _ in 0..64 {
        let r = theta_any(t) - target;
        let step = r.to_f64() / theta_prime(t.to_f64());
        t = t - Dd::from_f64(step);
        if step.abs() <= 1e-22 * t.hi.max(1.0) || r.to_f64() == 0.0 {
            let res = (theta_any(t) - target).to_f64().abs();
            if res < 1e-10 {
                return Ok(t);
            }
        }
    }
    let res = (theta_any(t) - target).to_f64().abs();
    if res < 1e-10 {
        Ok(t)
    } else {
        Err(Error::NonConvergence {
            what: "Gram point Newton iteration",
            iterations: 64,
        })
    }
}

/// Gram point `g_n`.
pub fn gram_point(n: i64) -> Result<HeightValue> {
    HeightValue::from_dd(gram_point_dd(n)?)
}

fn z_at(t: Dd) -> Result<f64> {
    Ok(z_with_target(t, Z_TARGET)?.0)
}

fn is_good(n: i64, z: f64) -> bool {
    if n.rem_euclid(2) == 0 {
        z > 0.0
    } else {
        z < 0.0
    }
}

/// A refined zero bracket search result.
#[derive(Clone, Copy, Debug)]
struct Bracket {
    lo: f64,
    hi: f64,
    zlo: f64,
    zhi: f64,
}

/// Illinois-safeguarded regula falsi on `f` over a sign-change bracket,
/// stopping once the bracket is narrower than `tol`.
fn refine<F: FnMut(f64) -> Result<f64>>(mut f: F, br: Bracket, tol: f64) -> Result<(f64, usize)> {
    let (mut a, mut b, mut fa, mut fb) = (br.lo, br.hi, br.zlo, br.zhi);
    let mut evals = 0;
    let mut side = 0i32;
    let mut last_width = b - a;
    for it in 0..200 {
        if b - a < tol {
            return Ok((0.5 * (a + b), evals));
        }
        let mut c = (a * fb - b * fa) / (fb - fa);
        // force a bisection when the bracket stalls
        if it % 4 == 3 {
            if b - a > 0.5 * last_width {
                c = 0.5 * (a + b);
            }
            last_width = b - a;
        }
        if !(c > a && c < b) {
            c = 0.5 * (a + b);
        }
        let fc = f(c)?;
        evals += 1;
        if fc == 0.0 {
            return Ok((c, evals));
        }
        if (fc > 0.0) == (fa > 0.0) {
            a = c;
            fa = fc;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        } else {
            b = c;
            fb = fc;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
    }
    Err(Error::NonConvergence {
        what: "zero refinement",
        iterations: 200,
    })
}

/// A gap in a zero list: more than 10 mean spacings between neighbours,
/// as in externally supplied data with missing blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroGap {
    /// Position of the zero just below the gap.
    pub after: usize,
    /// Zeros presumed missing, estimated from `θ`.
    pub estimated_missing: u64,
}

/// Ordered zero ordinates `base + offsets[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroList {
    base: DecimalBase,
    offsets: Vec<f64>,
    first_index: Option<u64>,
    gaps: Vec<ZeroGap>,
}

impl ZeroList {
    /// Validates ordering and offset range and records gaps.
    pub fn new(base: DecimalBase, offsets: Vec<f64>, first_index: Option<u64>) -> Result<Self> {
        for (i, &x) in offsets.iter().enumerate() {
            if !(0.0..OFFSET_LIMIT).contains(&x) {
                return Err(Error::Height(format!("offset {x} at position {i} outside [0, 2^20)")));
            }
            if i > 0 && x <= offsets[i - 1] {
                return Err(Error::domain(format!("zero ordinates not strictly increasing at position {i}")));
            }
        }
        let mut list = Self {
            base,
            offsets,
            first_index,
            gaps: Vec::new(),
        };
        list.gaps = list.find_gaps();
        Ok(list)
    }

    fn find_gaps(&self) -> Vec<ZeroGap> {
        let b = self.base.value();
        let mut gaps = Vec::new();
        for i in 1..self.offsets.len() {
            let t = b.add_f64(self.offsets[i - 1]);
            let gap = self.offsets[i] - self.offsets[i - 1];
            if t.hi > 20.0 && gap > 10.0 * mean_spacing(t.hi) {
                let dth = theta_any(b.add_f64(self.offsets[i])) - theta_any(t);
                let missing = (dth.to_f64() / PI).round().max(1.0) as u64 - 1;
                gaps.push(ZeroGap {
                    after: i - 1,
                    estimated_missing: missing,
                });
            }
        }
        gaps
    }

    pub fn base(&self) -> &DecimalBase {
        &self.base
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn first_index(&self) -> Option<u64> {
        self.first_index
    }

    pub fn gaps(&self) -> &[ZeroGap] {
        &self.gaps
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn height(&self, i: usize) -> HeightValue {
        HeightValue::new(self.base.clone(), self.offsets[i]).expect("offsets validated on construction")
    }

    pub fn height_dd(&self, i: usize) -> Dd {
        self.base.value().add_f64(self.offsets[i])
    }

    pub fn height_f64(&self, i: usize) -> f64 {
        self.height_dd(i).to_f64()
    }

    /// Global index of the zero at position `i`, accounting for gaps.
    pub fn index_of(&self, i: usize) -> Option<u64> {
        let first = self.first_index?;
        let skipped: u64 = self
            .gaps
            .iter()
            .filter(|g| g.after < i)
            .map(|g| g.estimated_missing)
            .sum();
        Some(first + i as u64 + skipped)
    }

    /// Position of the zero with global index `n`, if present.
    pub fn position_of(&self, n: u64) -> Option<usize> {
        let first = self.first_index?;
        if n < first {
            return None;
        }
        let mut pos = (n - first) as usize;
        for g in &self.gaps {
            if g.after < pos {
                pos = pos.checked_sub(g.estimated_missing as usize)?;
            }
        }
        (pos < self.len() && self.index_of(pos) == Some(n)).then_some(pos)
    }

    /// Sub-list of positions `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> ZeroList {
        let first_index = self.index_of(range.start);
        ZeroList::new(self.base.clone(), self.offsets[range].to_vec(), first_index)
            .expect("sub-list of a valid list is valid")
    }

    /// Same zeros relative to another base.
    pub fn rebase(&self, base: &DecimalBase) -> Result<ZeroList> {
        let offsets = self
            .offsets
            .iter()
            .map(|&x| HeightValue::new(self.base.clone(), x).and_then(|h| h.rebase(base)).map(|h| h.offset()))
            .collect::<Result<Vec<_>>>()?;
        ZeroList::new(base.clone(), offsets, self.first_index)
    }
}

/// A run of consecutive zeros sharing its endpoints with its neighbours.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroBlock {
    /// Position of the first zero in the list.
    pub start: usize,
    /// Position of the last zero (inclusive).
    pub end: usize,
    /// Global index of the first zero, when known.
    pub first_index: Option<u64>,
    /// α, the first ordinate.
    pub alpha: HeightValue,
    /// β, the last ordinate.
    pub beta: HeightValue,
}

impl ZeroBlock {
    /// Number of zero-to-zero intervals.
    pub fn intervals(&self) -> usize {
        self.end - self.start
    }

    /// Number of zeros, counting both endpoints.
    pub fn zero_count(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn length(&self) -> f64 {
        self.beta.diff(&self.alpha)
    }
}

/// Result of [`build_blocks`].
#[derive(Clone, Debug, PartialEq)]
pub struct BlockTiling {
    pub blocks: Vec<ZeroBlock>,
    /// Intervals left over at the end of each gap-free segment.
    pub dropped_intervals: usize,
}

/// Tiles the list with blocks of `block_size` intervals; the last zero of
/// one block is the first zero of the next. Blocks never cross a gap.
pub fn build_blocks(zeros: &ZeroList, block_size: usize) -> Result<BlockTiling> {
    if block_size < 1 {
        return Err(Error::domain("block_size must be positive"));
    }
    if zeros.len() < block_size + 1 {
        return Err(Error::domain(format!(
            "{} zeros cannot fill a block of {block_size} intervals",
            zeros.len()
        )));
    }
    let mut segments = Vec::new();
    let mut start = 0;
    for g in zeros.gaps() {
        segments.push((start, g.after));
        start = g.after + 1;
    }
    segments.push((start, zeros.len() - 1));
    let mut blocks = Vec::new();
    let mut dropped = 0;
    for (s, e) in segments {
        let mut a = s;
        while a + block_size <= e {
            let b = a + block_size;
            blocks.push(ZeroBlock {
                start: a,
                end: b,
                first_index: zeros.index_of(a),
                alpha: zeros.height(a),
                beta: zeros.height(b),
            });
            a = b;
        }
        dropped += e - a;
    }
    Ok(BlockTiling {
        blocks,
        dropped_intervals: dropped,
    })
}

/// Isolation statistics.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IsolationReport {
    pub gram_first: i64,
    pub gram_last: i64,
    pub bad_gram_points: usize,
    pub subdivided_blocks: usize,
    pub z_evaluations: usize,
}

fn find_good_gram(mut n: i64, step: i64) -> Result<(i64, Dd)> {
    for _ in 0..1000 {
        let g = gram_point_dd(n)?;
        if is_good(n, z_at(g)?) {
            return Ok((n, g));
        }
        if n + step < -1 {
            break;
        }
        n += step;
    }
    Err(Error::domain("no good Gram point found near the requested range"))
}

struct BlockZeros {
    offsets: Vec<f64>,
    evals: usize,
    subdivided: bool,
}

fn isolate_block(
    base: Dd,
    first_gram: i64,
    xs: &[f64],
    zs: &[f64],
) -> Result<BlockZeros> {
    let expected = xs.len() - 1;
    let f = |x: f64| z_at(base.add_f64(x));
    let mut evals = 0;
    let mut pts: Vec<(f64, f64)> = xs.iter().copied().zip(zs.iter().copied()).collect();
    let count = |pts: &[(f64, f64)]| pts.windows(2).filter(|w| (w[0].1 > 0.0) != (w[1].1 > 0.0)).count();
    let mut found = count(&pts);
    let mut level = 1;
    let mut subdivided = false;
    while found < expected && level < MAX_SUBDIVISION {
        subdivided = true;
        let mut next = Vec::with_capacity(2 * pts.len());
        for w in pts.windows(2) {
            next.push(w[0]);
            let m = 0.5 * (w[0].0 + w[1].0);
            next.push((m, f(m)?));
            evals += 1;
        }
        next.push(*pts.last().expect("non-empty"));
        pts = next;
        level *= 2;
        found = count(&pts);
    }
    if found != expected {
        return Err(Error::MissingZero {
            first_gram: first_gram,
            last_gram: first_gram + expected as i64,
            expected,
            found,
        });
    }
    let mut offsets = Vec::with_capacity(expected);
    for w in pts.windows(2) {
        if (w[0].1 > 0.0) != (w[1].1 > 0.0) {
            let br = Bracket {
                lo: w[0].0,
                hi: w[1].0,
                zlo: w[0].1,
                zhi: w[1].1,
            };
            let tol = refinement_tolerance(base.add_f64(w[0].0).hi);
            let (x, e) = refine(f, br, tol)?;
            evals += e;
            offsets.push(x);
        }
    }
    Ok(BlockZeros {
        offsets,
        evals,
        subdivided,
    })
}

/// Zeros between the good Gram points `g_a` and `g_b` (`a < b`), indexed
/// on the assumption `N(g_a) = a + 1`.
fn isolate_gram_range(a: i64, b: i64, base: &DecimalBase) -> Result<(Vec<f64>, IsolationReport)> {
    let bv = base.value();
    let grams: Vec<(i64, f64, f64)> = (a..=b)
        .into_par_iter()
        .map(|n| -> Result<(i64, f64, f64)> {
            let g = gram_point_dd(n)?;
            Ok((n, (g - bv).to_f64(), z_at(g)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let good: Vec<usize> = grams
        .iter()
        .enumerate()
        .filter(|(_, &(n, _, z))| is_good(n, z))
        .map(|(i, _)| i)
        .collect();
    debug_assert!(good.first() == Some(&0) && good.last() == Some(&(grams.len() - 1)));
    let blocks: Vec<(usize, usize)> = good.windows(2).map(|w| (w[0], w[1])).collect();
    let results: Vec<BlockZeros> = blocks
        .par_iter()
        .map(|&(i, j)| {
            let xs: Vec<f64> = grams[i..=j].iter().map(|g| g.1).collect();
            let zs: Vec<f64> = grams[i..=j].iter().map(|g| g.2).collect();
            isolate_block(bv, grams[i].0, &xs, &zs)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = IsolationReport {
        gram_first: a,
        gram_last: b,
        bad_gram_points: grams.len() - good.len(),
        subdivided_blocks: 0,
        z_evaluations: grams.len(),
    };
    let mut offsets = Vec::with_capacity((b - a) as usize);
    for r in results {
        report.z_evaluations += r.evals;
        report.subdivided_blocks += usize::from(r.subdivided);
        offsets.extend(r.offsets);
    }
    let expected = (b - a) as usize;
    if offsets.len() != expected {
        return Err(Error::CountMismatch {
            expected,
            found: offsets.len(),
        });
    }
    Ok((offsets, report))
}

/// All zeros of `Z` in `[t_lo, t_hi]`, with global indices.
///
/// The range is widened to good Gram points on both sides; every Gram
/// block must show as many sign changes as Gram points it spans, after
/// subdividing up to [`MAX_SUBDIVISION`] times, or the call fails naming
/// the block. Below `t = 30` `Z` is evaluated by Euler-Maclaurin.
pub fn isolate_zeros(t_lo: f64, t_hi: f64, expected_count: Option<usize>) -> Result<ZeroList> {
    isolate_zeros_with_report(t_lo, t_hi, expected_count).map(|(z, _)| z)
}

pub fn isolate_zeros_with_report(t_lo: f64, t_hi: f64, expected_count: Option<usize>) -> Result<(ZeroList, IsolationReport)> {
    if !(t_lo >= 10.0 && t_hi > t_lo && t_hi.is_finite()) {
        return Err(Error::domain(format!("need 10 <= t_lo < t_hi, got [{t_lo}, {t_hi}]")));
    }
    if t_hi - t_lo >= OFFSET_LIMIT - 1.0 {
        return Err(Error::domain("range must span less than 2^20"));
    }
    let n_lo = ((theta(t_lo)? / PI).floor() as i64).max(-1);
    let n_hi = (theta(t_hi)? / PI).ceil() as i64;
    let (a, ga) = find_good_gram(n_lo, -1)?;
    let (b, _) = find_good_gram(n_hi.max(a + 1), 1)?;
    let base = DecimalBase::floor_of(t_lo);
    let base_dd = base.value();
    // offsets relative to floor(t_lo) may be negative near g_a; use floor(g_a)
    let work_base = DecimalBase::floor_of_dd(ga);
    let (offsets, report) = isolate_gram_range(a, b, &work_base)?;
    let shift = (work_base.value() - base_dd).to_f64();
    let mut skipped = 0u64;
    let mut kept = Vec::new();
    for x in offsets {
        let t = x + shift;
        if t < t_lo - base_dd.to_f64() {
            skipped += 1;
        } else if t <= t_hi - base_dd.to_f64() {
            kept.push(t);
        }
    }
    if let Some(c) = expected_count {
        if c != kept.len() {
            return Err(Error::CountMismatch {
                expected: c,
                found: kept.len(),
            });
        }
    }
    let first_index = (a + 2) as u64 + skipped;
    Ok((ZeroList::new(base, kept, Some(first_index))?, report))
}

/// Zeros with global indices `n_lo..=n_hi` (1-based).
pub fn isolate_zeros_by_index(n_lo: u64, n_hi: u64) -> Result<(ZeroList, IsolationReport)> {
    if n_lo < 1 || n_hi < n_lo {
        return Err(Error::domain(format!("invalid zero index range {n_lo}..={n_hi}")));
    }
    let (a, ga) = find_good_gram(n_lo as i64 - 2, -1)?;
    let (b, _) = find_good_gram((n_hi as i64 - 1).max(a + 1), 1)?;
    let base = DecimalBase::floor_of_dd(ga);
    let (offsets, report) = isolate_gram_range(a, b, &base)?;
    let first = (a + 2) as u64;
    let lo = (n_lo - first) as usize;
    let hi = (n_hi - first) as usize;
    let offsets = offsets[lo..=hi].to_vec();
    let base2 = DecimalBase::floor_of(base.value().to_f64() + offsets[0]);
    let shift = (base.value() - base2.value()).to_f64();
    let offsets = offsets.into_iter().map(|x| x + shift).collect();
    Ok((ZeroList::new(base2, offsets, Some(n_lo))?, report))
}

// ---- zero files ----

const ZERO_MAGIC: &str = "ZETAZEROS v1";

fn format_offset(x: f64) -> String {
    format!("{x:.17e}")
}

/// Serializes a zero list; the checksum covers the offset lines including
/// their newlines.
pub fn zero_file_contents(zeros: &ZeroList) -> String {
    let mut payload = String::with_capacity(zeros.len() * 26);
    for &x in zeros.offsets() {
        payload.push_str(&format_offset(x));
        payload.push('\n');
    }
    let digest = hex::encode(Sha256::digest(payload.as_bytes()));
    let mut out = String::with_capacity(payload.len() + 200);
    let _ = writeln!(out, "{ZERO_MAGIC}");
    let _ = writeln!(out, "base={}", zeros.base());
    match zeros.first_index() {
        Some(i) => {
            let _ = writeln!(out, "first_index={i}");
        }
        None => out.push_str("first_index=unknown\n"),
    }
    let _ = writeln!(out, "count={}", zeros.len());
    out.push_str(&payload);
    let _ = writeln!(out, "sha256={digest}");
    out
}

pub fn write_zero_file(zeros: &ZeroList, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, zero_file_contents(zeros))?;
    Ok(())
}

fn header_value<'a>(path: &Path, line_no: usize, line: Option<&'a str>, key: &str) -> Result<&'a str> {
    let line = line.ok_or_else(|| Error::format(path, line_no, format!("missing `{key}=` line")))?;
    line.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::format(path, line_no, format!("expected `{key}=...`, found {line:?}")))
}

pub fn parse_zero_file(text: &str, path: &Path) -> Result<ZeroList> {
    let mut lines = text.lines();
    if lines.next() != Some(ZERO_MAGIC) {
        return Err(Error::format(path, 1, format!("expected `{ZERO_MAGIC}` header")));
    }
    let base = DecimalBase::parse(header_value(path, 2, lines.next(), "base")?)
        .map_err(|e| Error::format(path, 2, e.to_string()))?;
    let fi = header_value(path, 3, lines.next(), "first_index")?;
    let first_index = if fi == "unknown" {
        None
    } else {
        Some(fi.parse::<u64>().map_err(|e| Error::format(path, 3, e.to_string()))?)
    };
    let count: usize = header_value(path, 4, lines.next(), "count")?
        .parse()
        .map_err(|e: std::num::ParseIntError| Error::format(path, 4, e.to_string()))?;
    let mut offsets = Vec::with_capacity(count);
    let mut hasher = Sha256::new();
    for i in 0..count {
        let line_no = 5 + i;
        let line = lines
            .next()
            .ok_or_else(|| Error::format(path, line_no, "file ends before `count` offsets"))?;
        let x: f64 = line
            .trim()
            .parse()
            .map_err(|_| Error::format(path, line_no, format!("bad offset {line:?}")))?;
        if let Some(&prev) = offsets.last() {
            if x <= prev {
                return Err(Error::format(path, line_no, "ordinates are not strictly increasing"));
            }
        }
        hasher.update(line.as_bytes());
        hasher.update(b"\n");
        offsets.push(x);
    }
    let sum = header_value(path, 5 + count, lines.next(), "sha256")?;
    if sum != hex::encode(hasher.finalize()) {
        return Err(Error::Checksum(path.to_path_buf()));
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(Error::format(path, 6 + count, "trailing content after checksum"));
    }
    ZeroList::new(base, offsets, first_index).map_err(|e| Error::format(path, 5, e.to_string()))
}

pub fn read_zero_file(path: impl AsRef<Path>) -> Result<ZeroList> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse_zero_file(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_point_references() {
        let g0 = gram_point_dd(0).unwrap().to_f64();
        assert!((g0 - 17.845_599_540_410_86).abs() < 1e-12);
        let gm1 = gram_point_dd(-1).unwrap().to_f64();
        assert!((gm1 - 9.666_908_056_130_192).abs() < 1e-12);
        let g = gram_point_dd(1_000_000).unwrap().to_f64();
        assert!((g - 600_270.459_834_343_7).abs() < 1e-8);
        assert!(gram_point_dd(-2).is_err());
    }

    #[test]
    fn gram_points_satisfy_definition() {
        for n in [0i64, 1, 7, 100, 1_000_000] {
            let g = gram_point_dd(n).unwrap();
            let r = (theta_any(g) - Dd::PI.mul_f64(n as f64)).to_f64();
            assert!(r.abs() < 1e-10, "n = {n}: {r}");
        }
    }

    #[test]
    fn first_ten_zeros() {
        let z = isolate_zeros(10.0, 50.0, Some(10)).unwrap();
        assert_eq!(z.first_index(), Some(1));
        assert!((z.height_f64(0) - 14.134_725_141_734_7).abs() < 1e-11);
        assert!((z.height_f64(9) - 49.773_832_477_672_3).abs() < 1e-9);
    }

    #[test]
    fn zero_list_rejects_disorder() {
        assert!(ZeroList::new(DecimalBase::zero(), vec![1.0, 1.0], None).is_err());
        assert!(ZeroList::new(DecimalBase::zero(), vec![-1.0], None).is_err());
    }

    #[test]
    fn blocks_share_endpoints() {
        let offsets: Vec<f64> = (0..=25).map(|i| i as f64 * 0.5).collect();
        let z = ZeroList::new(DecimalBase::parse("1000").unwrap(), offsets, Some(1)).unwrap();
        let t = build_blocks(&z, 5).unwrap();
        assert_eq!(t.blocks.len(), 5);
        assert_eq!(t.dropped_intervals, 0);
        for w in t.blocks.windows(2) {
            assert_eq!(w[0].end, w[1].start);
        }
        assert_eq!(t.blocks[1].first_index, Some(6));
        let t = build_blocks(&z, 7).unwrap();
        assert_eq!(t.blocks.len(), 3);
        assert_eq!(t.dropped_intervals, 4);
    }

    #[test]
    fn zero_file_round_trip_and_tamper() {
        let z = isolate_zeros(10.0, 100.0, None).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("z.txt");
        write_zero_file(&z, &p).unwrap();
        let back = read_zero_file(&p).unwrap();
        assert_eq!(back, z);
        let text = fs::read_to_string(&p).unwrap();
        let bad = text.replacen("e1\n", "e2\n", 1);
        assert!(parse_zero_file(&bad, &p).is_err());
    }
}
