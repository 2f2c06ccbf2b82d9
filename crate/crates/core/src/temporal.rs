//! Temporal geometry: intervals, IoU, clip grids and the 2D candidate set.
//!
//! A video of `duration_s` seconds is partitioned into `n_clips` equal clips;
//! a moment candidate is a pair `(i, j)` of start/end clip indices with
//! `i <= j`, covering `[i * clip_len, (j + 1) * clip_len]`.

use ndarray::Array2;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TemporalError {
    #[error("invalid interval [{start_s}, {end_s}]: end must be > start and both finite, start >= 0")]
    InvalidInterval { start_s: f64, end_s: f64 },
    #[error("invalid clip grid: duration_s = {duration_s}, n_clips = {n_clips}")]
    InvalidGrid { duration_s: f64, n_clips: usize },
    #[error("clip index {index} out of range for grid with {n_clips} clips")]
    ClipOutOfRange { index: usize, n_clips: usize },
    #[error("invalid candidate ({i}, {j}) for grid with {n_clips} clips")]
    InvalidCandidate { i: usize, j: usize, n_clips: usize },
    #[error("candidate mask must contain at least one valid entry")]
    EmptyMask,
    #[error("candidate mask marks ({i}, {j}) valid but i > j")]
    LowerTriangleMask { i: usize, j: usize },
}

/// A moment in time, `[start_s, end_s]` with `end_s > start_s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    start_s: f64,
    end_s: f64,
}

impl Interval {
    pub fn new(start_s: f64, end_s: f64) -> Result<Self, TemporalError> {
        if !start_s.is_finite() || !end_s.is_finite() || start_s < 0.0 || end_s <= start_s {
            return Err(TemporalError::InvalidInterval { start_s, end_s });
        }
        Ok(Self { start_s, end_s })
    }

    pub fn start_s(&self) -> f64 {
        self.start_s
    }

    pub fn end_s(&self) -> f64 {
        self.end_s
    }

    pub fn duration_s(&self) -> f64 {
        self.end_s - self.start_s
    }

    /// True when `t` lies strictly inside the interval.
    pub fn contains_interior(&self, t: f64) -> bool {
        t > self.start_s && t < self.end_s
    }

    /// True when `other` is fully contained in `self` (boundaries allowed to touch).
    pub fn contains(&self, other: &Interval) -> bool {
        other.start_s >= self.start_s && other.end_s <= self.end_s
    }

    /// Shift both endpoints by `offset_s` (must stay valid).
    pub fn shifted(&self, offset_s: f64) -> Result<Self, TemporalError> {
        Interval::new(self.start_s + offset_s, self.end_s + offset_s)
    }
}

/// Intersection-over-union of two intervals. Zero when disjoint; symmetric;
/// exactly 1 for identical intervals.
pub fn temporal_iou(a: &Interval, b: &Interval) -> f64 {
    let inter = (a.end_s.min(b.end_s) - a.start_s.max(b.start_s)).max(0.0);
    if inter == 0.0 {
        return 0.0;
    }
    let union = (a.end_s - a.start_s) + (b.end_s - b.start_s) - inter;
    inter / union
}

/// Fixed partition of a video into `n_clips` equal-length clips.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClipGrid {
    duration_s: f64,
    n_clips: usize,
}

impl ClipGrid {
    pub const DEFAULT_N_CLIPS: usize = 128;

    pub fn new(duration_s: f64, n_clips: usize) -> Result<Self, TemporalError> {
        if !duration_s.is_finite() || duration_s <= 0.0 || n_clips == 0 {
            return Err(TemporalError::InvalidGrid { duration_s, n_clips });
        }
        Ok(Self { duration_s, n_clips })
    }

    pub fn duration_s(&self) -> f64 {
        self.duration_s
    }

    pub fn n_clips(&self) -> usize {
        self.n_clips
    }

    /// Temporal resolution: the length of one clip in seconds.
    pub fn clip_len_s(&self) -> f64 {
        self.duration_s / self.n_clips as f64
    }
}

/// Time span of one clip: `[p * clip_len, (p + 1) * clip_len]`.
pub fn clip_interval(grid: &ClipGrid, p: usize) -> Result<Interval, TemporalError> {
    if p >= grid.n_clips {
        return Err(TemporalError::ClipOutOfRange {
            index: p,
            n_clips: grid.n_clips,
        });
    }
    let len = grid.clip_len_s();
    Interval::new(p as f64 * len, (p + 1) as f64 * len)
}

/// Time span of the candidate spanning clips `i..=j`.
pub fn candidate_interval(grid: &ClipGrid, i: usize, j: usize) -> Result<Interval, TemporalError> {
    if i > j || j >= grid.n_clips {
        return Err(TemporalError::InvalidCandidate {
            i,
            j,
            n_clips: grid.n_clips,
        });
    }
    let len = grid.clip_len_s();
    Interval::new(i as f64 * len, (j + 1) as f64 * len)
}

/// Which `(i, j)` cells of the N x N map are moment candidates.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateMask {
    n_clips: usize,
    valid: Array2<bool>,
}

impl CandidateMask {
    /// Dense upper triangle: every `i <= j` pair is a candidate.
    pub fn dense(n_clips: usize) -> Result<Self, TemporalError> {
        Self::strided(n_clips, 1)
    }

    /// Coarser candidate set aligned to `stride`: keeps `(i, j)` with
    /// `i % stride == 0` and `(j + 1) % stride == 0`. Stride 1 is dense.
    pub fn strided(n_clips: usize, stride: usize) -> Result<Self, TemporalError> {
        if n_clips == 0 || stride == 0 || stride > n_clips {
            return Err(TemporalError::EmptyMask);
        }
        let valid = Array2::from_shape_fn((n_clips, n_clips), |(i, j)| {
            i <= j && i % stride == 0 && (j + 1) % stride == 0
        });
        Ok(Self { n_clips, valid })
    }

    /// Validate and wrap an explicit validity matrix.
    pub fn from_matrix(valid: Array2<bool>) -> Result<Self, TemporalError> {
        let n_clips = valid.nrows();
        if valid.ncols() != n_clips {
            return Err(TemporalError::EmptyMask);
        }
        let mut any = false;
        for ((i, j), &v) in valid.indexed_iter() {
            if v {
                if i > j {
                    return Err(TemporalError::LowerTriangleMask { i, j });
                }
                any = true;
            }
        }
        if !any {
            return Err(TemporalError::EmptyMask);
        }
        Ok(Self { n_clips, valid })
    }

    pub fn n_clips(&self) -> usize {
        self.n_clips
    }

    pub fn is_valid(&self, i: usize, j: usize) -> bool {
        i < self.n_clips && j < self.n_clips && self.valid[(i, j)]
    }

    pub fn matrix(&self) -> &Array2<bool> {
        &self.valid
    }

    pub fn count_valid(&self) -> usize {
        self.valid.iter().filter(|v| **v).count()
    }

    /// Valid cells in row-major order: ascending `i`, then ascending `j`.
    pub fn iter_valid(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.valid
            .indexed_iter()
            .filter(|(_, &v)| v)
            .map(|((i, j), _)| (i, j))
    }
}
