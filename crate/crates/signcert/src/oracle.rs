//! Grid-sampling oracle: signs of `f` at the cell centres of a uniform grid
//! in log coordinates, grouped into connected components with union-find.
//!
//! The counts are evidence for the certificates, not certificates: a
//! component can leave the box and come back, and two components can be
//! joined through a channel thinner than a cell.

use std::io::{self, Write};

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use signcert_core::descartes::Sign;
use signcert_core::Signomial;

/// Largest dimension the oracle accepts.
pub const MAX_DIM: usize = 3;

/// Environment variable capping the number of evaluation threads.
pub const THREADS_ENV: &str = "SIGNCERT_THREADS";

/// Relative dead-band: `|f| <= SIGN_EPS * max |term|` counts as zero.
pub const SIGN_EPS: f64 = 1e-12;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum OracleError {
    #[error("the oracle supports dimension 1 to {MAX_DIM}, got {0}")]
    Dimension(usize),
    #[error("box axis {axis}: need lo < hi, got [{lo}, {hi}]")]
    EmptyAxis { axis: usize, lo: f64, hi: f64 },
    #[error("box axis {axis}: resolution {res} is below 2")]
    Resolution { axis: usize, res: usize },
    #[error("box has {found} axes, signomial has {expected}")]
    Mismatch { expected: usize, found: usize },
    #[error("need at least two resolutions")]
    Resolutions,
}

/// Axis-aligned box in log coordinates with a cell count per axis.
#[derive(Clone, Debug, PartialEq)]
pub struct LogBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub resolution: Vec<usize>,
}

impl LogBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, resolution: Vec<usize>) -> Result<Self, OracleError> {
        if lo.len() != hi.len() || lo.len() != resolution.len() {
            return Err(OracleError::Mismatch {
                expected: lo.len(),
                found: hi.len().min(resolution.len()),
            });
        }
        for axis in 0..lo.len() {
            if !(lo[axis] < hi[axis]) {
                return Err(OracleError::EmptyAxis {
                    axis,
                    lo: lo[axis],
                    hi: hi[axis],
                });
            }
            if resolution[axis] < 2 {
                return Err(OracleError::Resolution {
                    axis,
                    res: resolution[axis],
                });
            }
        }
        Ok(Self { lo, hi, resolution })
    }

    /// The same `[lo, hi]` and resolution on every axis.
    pub fn cube(n: usize, lo: f64, hi: f64, res: usize) -> Result<Self, OracleError> {
        Self::new(vec![lo; n], vec![hi; n], vec![res; n])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn with_resolution(&self, res: usize) -> Result<Self, OracleError> {
        Self::new(self.lo.clone(), self.hi.clone(), vec![res; self.dim()])
    }

    pub fn cell_count(&self) -> usize {
        self.resolution.iter().product()
    }

    /// Log coordinates of the centre of the cell with multi-index `idx`.
    pub fn centre(&self, idx: &[usize]) -> Vec<f64> {
        (0..self.dim())
            .map(|a| {
                let step = (self.hi[a] - self.lo[a]) / self.resolution[a] as f64;
                self.lo[a] + (idx[a] as f64 + 0.5) * step
            })
            .collect()
    }

    fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim()];
        for a in (0..self.dim()).rev() {
            idx[a] = flat % self.resolution[a];
            flat /= self.resolution[a];
        }
        idx
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellSign {
    Negative,
    /// Inside the dead-band around zero.
    Zero,
    Positive,
    /// Evaluation overflowed.
    Invalid,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub sign: Sign,
    pub cells: usize,
    pub touches_boundary: bool,
}

/// Cell signs (row-major, last axis fastest) and component labels.
#[derive(Clone, Debug)]
pub struct GridLabeling {
    pub grid: LogBox,
    pub signs: Vec<CellSign>,
    /// Index into `components` for cells of a definite sign.
    pub labels: Vec<Option<usize>>,
    pub components: Vec<Component>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentCount {
    pub count: usize,
    pub touching_boundary: usize,
}

/// Rayon pool sized by `SIGNCERT_THREADS` when set, else rayon's default.
pub fn thread_pool() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

fn cell_sign(f: &Signomial, xi: &[f64]) -> CellSign {
    match f.evaluate_log_with_scale(xi) {
        Ok((value, scale)) if value.is_finite() => {
            if value.abs() <= SIGN_EPS * scale {
                CellSign::Zero
            } else if value < 0.0 {
                CellSign::Negative
            } else {
                CellSign::Positive
            }
        }
        _ => CellSign::Invalid,
    }
}

pub fn grid_labeling(f: &Signomial, grid: &LogBox) -> Result<GridLabeling, OracleError> {
    let n = f.dim();
    if n == 0 || n > MAX_DIM {
        return Err(OracleError::Dimension(n));
    }
    if grid.dim() != n {
        return Err(OracleError::Mismatch {
            expected: n,
            found: grid.dim(),
        });
    }
    let total = grid.cell_count();
    let signs: Vec<CellSign> = thread_pool().install(|| {
        (0..total)
            .into_par_iter()
            .map(|i| cell_sign(f, &grid.centre(&grid.unflatten(i))))
            .collect()
    });

    let mut strides = vec![1usize; n];
    for a in (0..n - 1).rev() {
        strides[a] = strides[a + 1] * grid.resolution[a + 1];
    }
    let mut uf = UnionFind::<usize>::new(total);
    for i in 0..total {
        let s = signs[i];
        if !matches!(s, CellSign::Negative | CellSign::Positive) {
            continue;
        }
        let idx = grid.unflatten(i);
        for a in 0..n {
            if idx[a] + 1 < grid.resolution[a] && signs[i + strides[a]] == s {
                uf.union(i, i + strides[a]);
            }
        }
    }

    let mut root_to_label = std::collections::HashMap::new();
    let mut labels = vec![None; total];
    let mut components: Vec<Component> = Vec::new();
    for i in 0..total {
        let sign = match signs[i] {
            CellSign::Negative => Sign::Negative,
            CellSign::Positive => Sign::Positive,
            _ => continue,
        };
        let root = uf.find(i);
        let label = *root_to_label.entry(root).or_insert_with(|| {
            components.push(Component {
                sign,
                cells: 0,
                touches_boundary: false,
            });
            components.len() - 1
        });
        labels[i] = Some(label);
        let c = &mut components[label];
        c.cells += 1;
        if !c.touches_boundary {
            let idx = grid.unflatten(i);
            c.touches_boundary = idx
                .iter()
                .zip(&grid.resolution)
                .any(|(&k, &r)| k == 0 || k + 1 == r);
        }
    }
    Ok(GridLabeling {
        grid: grid.clone(),
        signs,
        labels,
        components,
    })
}

pub fn count_components(g: &GridLabeling, sign: Sign) -> ComponentCount {
    let of_sign = g.components.iter().filter(|c| c.sign == sign);
    ComponentCount {
        count: of_sign.clone().count(),
        touching_boundary: of_sign.filter(|c| c.touches_boundary).count(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stability {
    /// The last two resolutions agree on both the count and the number of
    /// boundary-touching components.
    Stable(ComponentCount),
    Unstable(Vec<ComponentCount>),
}

impl Stability {
    pub fn count(&self) -> Option<usize> {
        match self {
            Stability::Stable(c) => Some(c.count),
            Stability::Unstable(_) => None,
        }
    }
}

/// Counts at each resolution (same on every axis), in the order given.
pub fn stability_check(
    f: &Signomial,
    grid: &LogBox,
    resolutions: &[usize],
    sign: Sign,
) -> Result<Stability, OracleError> {
    if resolutions.len() < 2 {
        return Err(OracleError::Resolutions);
    }
    let mut counts = Vec::with_capacity(resolutions.len());
    for &res in resolutions {
        let g = grid_labeling(f, &grid.with_resolution(res)?)?;
        counts.push(count_components(&g, sign));
    }
    let k = counts.len();
    Ok(if counts[k - 1] == counts[k - 2] {
        Stability::Stable(counts[k - 1])
    } else {
        Stability::Unstable(counts)
    })
}

fn colour(s: CellSign) -> [u8; 3] {
    match s {
        CellSign::Negative => [0, 0, 255],
        CellSign::Positive => [255, 0, 0],
        CellSign::Zero => [255, 255, 255],
        CellSign::Invalid => [0, 0, 0],
    }
}

/// Binary PPM of a 1-D or 2-D labeling, first axis horizontal and second
/// axis increasing upwards. 3-D grids are written as their middle slice
/// along the last axis.
pub fn write_ppm<W: Write>(g: &GridLabeling, out: &mut W) -> io::Result<()> {
    let r = &g.grid.resolution;
    let (w, h) = (r[0], if r.len() > 1 { r[1] } else { 1 });
    let slice = if r.len() == 3 { r[2] / 2 } else { 0 };
    write!(out, "P6\n{w} {h}\n255\n")?;
    for row in (0..h).rev() {
        for col in 0..w {
            let flat = match r.len() {
                1 => col,
                2 => col * r[1] + row,
                _ => (col * r[1] + row) * r[2] + slice,
            };
            out.write_all(&colour(g.signs[flat]))?;
        }
    }
    Ok(())
}

/// CSV with the log coordinates of each cell centre, its sign (-1, 0, 1,
/// or `nan` for invalid) and its component label.
pub fn write_csv<W: Write>(g: &GridLabeling, out: &mut W) -> io::Result<()> {
    let n = g.grid.dim();
    let header: Vec<String> = (1..=n).map(|i| format!("log_x{i}")).collect();
    writeln!(out, "{},sign,component", header.join(","))?;
    for (i, s) in g.signs.iter().enumerate() {
        let c = g.grid.centre(&g.grid.unflatten(i));
        let coords: Vec<String> = c.iter().map(|v| format!("{v}")).collect();
        let sign = match s {
            CellSign::Negative => "-1",
            CellSign::Zero => "0",
            CellSign::Positive => "1",
            CellSign::Invalid => "nan",
        };
        let label = g.labels[i].map_or(String::new(), |l| l.to_string());
        writeln!(out, "{},{sign},{label}", coords.join(","))?;
    }
    Ok(())
}
