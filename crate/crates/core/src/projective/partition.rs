//! Tagged, ordered partitions of projective space.
//!
//! For `d = 2` the cells are half-open angle intervals `[lo, hi)` that tile
//! `[0, pi)`; the diameter of each cell is known in closed form. For `d >= 3`
//! the cells are nested Voronoi regions: a point is first assigned to the
//! nearest top-level site, then to the nearest child of that site, and so on.
//! Refinement adds one level of children under every leaf, the first child
//! being the leaf's own tag, so refinements are nested and keep the old tags.
//!
//! Cells are subsets of the canonical half `X`, and distances inside them are
//! Euclidean distances between canonical representatives. This is the
//! diameter the rearrangement bounds need; it is never smaller than the
//! projective diameter.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{canonical_lift, ProjectivePoint};
use crate::error::{Error, Result};
use crate::vector;

/// Accepted samples per cell when estimating cell diameters for `d >= 3`.
pub const NORM_SAMPLES_PER_CELL: usize = 10_000;

const SEED_BASE: u64 = 0x005e_ed0f_ce11;

/// Angles closer than this to an arc boundary are snapped onto it.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub lo: f64,
    pub hi: f64,
}

impl Arc {
    pub fn contains(&self, theta: f64) -> bool {
        self.lo <= theta && theta < self.hi
    }

    /// Largest distance between the canonical representatives of two points
    /// of the arc.
    pub fn diameter(&self) -> f64 {
        2.0 * ((self.hi - self.lo) / 2.0).sin()
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Site {
    point: ProjectivePoint,
    parent: Option<usize>,
}

/// Hierarchy of Voronoi sites; the cells are the leaves of the last level.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteTree {
    levels: Vec<Vec<Site>>,
    children: Vec<Vec<Vec<usize>>>,
}

impl SiteTree {
    fn new(levels: Vec<Vec<Site>>) -> Self {
        let children = levels
            .windows(2)
            .map(|w| {
                let mut ch = vec![Vec::new(); w[0].len()];
                for (j, s) in w[1].iter().enumerate() {
                    ch[s.parent.expect("non-root site has a parent")].push(j);
                }
                ch
            })
            .collect();
        SiteTree { levels, children }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    fn leaves(&self) -> &[Site] {
        self.levels.last().expect("tree has at least one level")
    }

    fn nearest(&self, level: usize, candidates: impl Iterator<Item = usize>, x: &[f64]) -> usize {
        let mut best = (usize::MAX, f64::INFINITY);
        for j in candidates {
            let d = vector::distance(self.levels[level][j].point.rep(), x);
            if d < best.1 {
                best = (j, d);
            }
        }
        best.0
    }

    /// Leaf index of the cell containing `x` (lowest index wins ties).
    pub fn locate(&self, x: &[f64]) -> usize {
        let mut idx = self.nearest(0, 0..self.levels[0].len(), x);
        for l in 1..self.levels.len() {
            idx = self.nearest(l, self.children[l - 1][idx].iter().copied(), x);
        }
        idx
    }

    /// Sites from the root down to `leaf`.
    pub fn chain(&self, leaf: usize) -> Vec<&ProjectivePoint> {
        let mut out = Vec::with_capacity(self.depth());
        let mut idx = leaf;
        for l in (0..self.depth()).rev() {
            let s = &self.levels[l][idx];
            out.push(&s.point);
            if let Some(p) = s.parent {
                idx = p;
            }
        }
        out.reverse();
        out
    }

    fn from_chains(chains: &[Vec<ProjectivePoint>]) -> Result<Self> {
        let depth = chains.first().map(Vec::len).unwrap_or(0);
        if depth == 0 || chains.iter().any(|c| c.len() != depth) {
            return Err(Error::InvalidPartition("site chains must be nonempty and of equal length".into()));
        }
        let mut levels: Vec<Vec<Site>> = vec![Vec::new(); depth];
        let mut prev: Vec<usize> = vec![usize::MAX; depth];
        for chain in chains {
            let mut parent = None;
            for l in 0..depth {
                let same_prefix = prev[l] != usize::MAX
                    && levels[l][prev[l]].point == chain[l]
                    && levels[l][prev[l]].parent == parent;
                if !same_prefix {
                    levels[l].push(Site { point: chain[l].clone(), parent });
                    prev[l] = levels[l].len() - 1;
                    for p in prev.iter_mut().skip(l + 1) {
                        *p = usize::MAX;
                    }
                }
                parent = Some(prev[l]);
            }
        }
        Ok(SiteTree::new(levels))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cells {
    Arcs(Vec<Arc>),
    Voronoi(SiteTree),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PartitionJson", into = "PartitionJson")]
pub struct TaggedPartition {
    dim: usize,
    cells: Cells,
    tags: Vec<ProjectivePoint>,
    norm_bound: f64,
}

impl TaggedPartition {
    /// `n` cells of comparable size. For `d = 2` these are the arcs
    /// `[k pi/n, (k+1) pi/n)` tagged at their midpoints; for `d >= 3` they are
    /// Voronoi cells of `n` well-spread canonical points.
    pub fn uniform(d: usize, n: usize) -> Result<Self> {
        Self::uniform_with_samples(d, n, NORM_SAMPLES_PER_CELL)
    }

    /// Like [`uniform`](Self::uniform) with an explicit sample budget per cell
    /// for the diameter estimate (ignored for `d = 2`).
    pub fn uniform_with_samples(d: usize, n: usize, samples_per_cell: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Precondition(format!("dimension must be at least 2, got {d}")));
        }
        if n < 1 {
            return Err(Error::Precondition("partition needs at least one cell".into()));
        }
        if d == 2 {
            let arcs: Vec<Arc> = (0..n)
                .map(|k| Arc {
                    lo: if k == 0 { 0.0 } else { k as f64 * PI / n as f64 },
                    hi: if k + 1 == n { PI } else { (k + 1) as f64 * PI / n as f64 },
                })
                .collect();
            let tags = arcs.iter().map(|a| ProjectivePoint::from_angle(0.5 * (a.lo + a.hi))).collect();
            return Ok(Self::from_arcs(arcs, tags));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(SEED_BASE ^ ((d as u64) << 32) ^ n as u64);
        let pool_size = (64 * n).max(4096);
        let pool: Vec<Vec<f64>> = (0..pool_size).map(|_| random_canonical(&mut rng, d)).collect();
        let mut north = vec![0.0; d];
        north[d - 1] = 1.0;
        let sites = farthest_points(&north, &pool, n - 1);
        let level: Vec<Site> = std::iter::once(north)
            .chain(sites)
            .map(|p| Site { point: canonical_lift(&p).expect("unit vector"), parent: None })
            .collect();
        let tree = SiteTree::new(vec![level]);

        let norm_bound = estimate_norm_bound(&tree, samples_per_cell, rng.gen());
        Ok(Self::from_tree(d, tree, norm_bound))
    }

    fn from_arcs(arcs: Vec<Arc>, tags: Vec<ProjectivePoint>) -> Self {
        let norm_bound = arcs.iter().map(Arc::diameter).fold(0.0, f64::max);
        TaggedPartition { dim: 2, cells: Cells::Arcs(arcs), tags, norm_bound }
    }

    fn from_tree(dim: usize, tree: SiteTree, norm_bound: f64) -> Self {
        let tags = tree.leaves().iter().map(|s| s.point.clone()).collect();
        TaggedPartition { dim, cells: Cells::Voronoi(tree), tags, norm_bound }
    }

    /// Ordered refinement splitting every cell into `factor` pieces. Children
    /// follow the order of their parents and every old tag stays a tag.
    pub fn refine(&self, factor: usize) -> Result<Self> {
        self.refine_with_samples(factor, NORM_SAMPLES_PER_CELL)
    }

    pub fn refine_with_samples(&self, factor: usize, samples_per_cell: usize) -> Result<Self> {
        if factor < 2 {
            return Err(Error::Precondition(format!("refinement factor must be at least 2, got {factor}")));
        }
        match &self.cells {
            Cells::Arcs(arcs) => {
                let mut new_arcs = Vec::with_capacity(arcs.len() * factor);
                let mut new_tags = Vec::with_capacity(arcs.len() * factor);
                for (arc, tag) in arcs.iter().zip(&self.tags) {
                    let bounds: Vec<f64> = (0..=factor)
                        .map(|j| match j {
                            0 => arc.lo,
                            j if j == factor => arc.hi,
                            j => arc.lo + (arc.hi - arc.lo) * j as f64 / factor as f64,
                        })
                        .collect();
                    let theta = tag.angle()?;
                    for w in bounds.windows(2) {
                        let sub = Arc { lo: w[0], hi: w[1] };
                        new_tags.push(if sub.contains(theta) {
                            tag.clone()
                        } else {
                            ProjectivePoint::from_angle(0.5 * (sub.lo + sub.hi))
                        });
                        new_arcs.push(sub);
                    }
                }
                Ok(Self::from_arcs(new_arcs, new_tags))
            }
            Cells::Voronoi(tree) => {
                let d = self.dim;
                let n = self.len();
                let mut rng = ChaCha8Rng::seed_from_u64(
                    SEED_BASE ^ ((d as u64) << 32) ^ ((tree.depth() as u64) << 48) ^ (n * factor) as u64,
                );
                let want = (32 * factor).max(128);
                let pools = sample_cells(tree, want, rng.gen());
                let mut next = Vec::with_capacity(n * factor);
                for (i, (leaf, pool)) in tree.leaves().iter().zip(pools).enumerate() {
                    let tag = leaf.point.rep().to_vec();
                    let pool = if pool.len() >= factor { pool } else { rejection_pool(tree, i, want, &mut rng) };
                    next.push(Site { point: leaf.point.clone(), parent: Some(i) });
                    for p in farthest_points(&tag, &pool, factor - 1) {
                        next.push(Site { point: canonical_lift(&p)?, parent: Some(i) });
                    }
                }
                let mut levels = tree.levels.clone();
                levels.push(next);
                let refined = SiteTree::new(levels);
                let norm_bound = estimate_norm_bound(&refined, samples_per_cell, rng.gen());
                Ok(Self::from_tree(d, refined, norm_bound))
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn tags(&self) -> &[ProjectivePoint] {
        &self.tags
    }

    pub fn cells(&self) -> &Cells {
        &self.cells
    }

    /// Upper bound on the largest cell diameter. Diameters are measured
    /// between canonical representatives in `R^d`, which dominates the
    /// projective metric.
    pub fn norm_bound(&self) -> f64 {
        self.norm_bound
    }

    /// Index of the cell containing `x`.
    pub fn cell_of(&self, x: &ProjectivePoint) -> Result<usize> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        match &self.cells {
            Cells::Arcs(arcs) => {
                // Angles within BOUNDARY_TOL below a boundary count as on it, so
                // tags stored at a boundary survive a roundtrip through (cos, sin).
                let mut theta = x.angle()?;
                if theta >= PI - BOUNDARY_TOL {
                    theta = 0.0;
                }
                let i = arcs.partition_point(|a| a.lo <= theta + BOUNDARY_TOL);
                if i == 0 || theta >= arcs[i - 1].hi {
                    return Err(Error::Uncovered(x.rep().to_vec()));
                }
                Ok(i - 1)
            }
            Cells::Voronoi(tree) => Ok(tree.locate(x.rep())),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.tags.is_empty() {
            return Err(Error::InvalidPartition("no cells".into()));
        }
        if !(self.norm_bound.is_finite() && self.norm_bound >= 0.0) {
            return Err(Error::InvalidPartition("norm_bound must be finite and nonnegative".into()));
        }
        if let Cells::Arcs(arcs) = &self.cells {
            if arcs.len() != self.tags.len() {
                return Err(Error::InvalidPartition("cell and tag counts differ".into()));
            }
            if arcs[0].lo != 0.0 || arcs[arcs.len() - 1].hi != PI {
                return Err(Error::InvalidPartition("arcs must cover [0, pi)".into()));
            }
            if arcs.windows(2).any(|w| w[0].hi != w[1].lo) || arcs.iter().any(|a| a.lo >= a.hi) {
                return Err(Error::InvalidPartition("arcs must be contiguous and nonempty".into()));
            }
            let diam = arcs.iter().map(Arc::diameter).fold(0.0, f64::max);
            if self.norm_bound < diam - 1e-15 {
                return Err(Error::InvalidPartition(format!("norm_bound {} below cell diameter {diam}", self.norm_bound)));
            }
        }
        for (i, t) in self.tags.iter().enumerate() {
            if t.dim() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: t.dim() });
            }
            if self.cell_of(t)? != i {
                return Err(Error::InvalidPartition(format!("tag {i} does not lie in its own cell")));
            }
        }
        Ok(())
    }
}

fn random_unit(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = vector::norm(&v);
        if n > 1e-3 && n <= 1.0 {
            return vector::scaled(&v, 1.0 / n);
        }
    }
}

pub(crate) fn random_canonical(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    canonical_lift(&random_unit(rng, d)).expect("unit vector").rep().to_vec()
}

/// Up to `cap` points of a cell found by rejection over the whole sphere,
/// for cells too small to be hit by [`sample_cells`].
fn rejection_pool(tree: &SiteTree, cell: usize, cap: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    let d = tree.leaves()[cell].point.dim();
    let mut pool = Vec::new();
    for _ in 0..1000 * cap {
        let x = random_canonical(rng, d);
        if tree.locate(&x) == cell {
            pool.push(x);
            if pool.len() == cap {
                break;
            }
        }
    }
    pool
}

const CHUNK: usize = 4096;

/// Runs `per_cell * cells` uniform points through `visit` in parallel chunks,
/// each with its own generator so the result depends only on `seed`.
fn fold_uniform<T: Send>(
    tree: &SiteTree,
    per_cell: usize,
    seed: u64,
    init: impl Fn() -> T + Sync,
    visit: impl Fn(&mut T, usize, Vec<f64>) + Sync,
) -> Vec<T> {
    let d = tree.leaves()[0].point.dim();
    let total = per_cell * tree.leaves().len();
    (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (c as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let mut acc = init();
            for _ in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let x = random_canonical(&mut rng, d);
                visit(&mut acc, tree.locate(&x), x);
            }
            acc
        })
        .collect()
}

/// Uniform points bucketed by cell, at most `cap` per cell.
fn sample_cells(tree: &SiteTree, cap: usize, seed: u64) -> Vec<Vec<Vec<f64>>> {
    let n = tree.leaves().len();
    let chunks = fold_uniform(tree, cap, seed, || vec![Vec::new(); n], |acc, i, x| acc[i].push(x));
    let mut out = vec![Vec::new(); n];
    for chunk in chunks {
        for (o, pts) in out.iter_mut().zip(chunk) {
            o.extend(pts.into_iter().take(cap - o.len().min(cap)));
        }
    }
    out
}

/// Twice the largest sampled distance from a tag to a point of its cell.
fn estimate_norm_bound(tree: &SiteTree, per_cell: usize, seed: u64) -> f64 {
    let n = tree.leaves().len();
    let radii = fold_uniform(tree, per_cell, seed, || vec![0.0_f64; n], |acc, i, x| {
        acc[i] = acc[i].max(vector::distance(&x, tree.leaves()[i].point.rep()));
    });
    let r = radii.iter().flatten().fold(0.0_f64, |a, b| a.max(*b));
    (2.0 * r).min(2.0)
}

pub(crate) fn farthest_points(seed: &[f64], pool: &[Vec<f64>], count: usize) -> Vec<Vec<f64>> {
    let mut dist: Vec<f64> = pool.iter().map(|p| vector::distance(p, seed)).collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let (j, &dj) = match dist.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)) {
            Some(best) => best,
            None => break,
        };
        if dj <= 0.0 {
            break;
        }
        let chosen = pool[j].clone();
        for (dk, p) in dist.iter_mut().zip(pool) {
            *dk = dk.min(vector::distance(p, &chosen));
        }
        out.push(chosen);
    }
    out
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CellJson {
    Arc([f64; 2]),
    Sites { sites: Vec<Vec<f64>> },
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    d: usize,
    cells: Vec<CellJson>,
    tags: Vec<Vec<f64>>,
    norm_bound: f64,
}

impl From<TaggedPartition> for PartitionJson {
    fn from(p: TaggedPartition) -> Self {
        let cells = match &p.cells {
            Cells::Arcs(arcs) => arcs.iter().map(|a| CellJson::Arc([a.lo, a.hi])).collect(),
            Cells::Voronoi(tree) => (0..p.len())
                .map(|i| CellJson::Sites { sites: tree.chain(i).iter().map(|s| s.rep().to_vec()).collect() })
                .collect(),
        };
        PartitionJson {
            d: p.dim,
            cells,
            tags: p.tags.iter().map(|t| t.rep().to_vec()).collect(),
            norm_bound: p.norm_bound,
        }
    }
}

impl TryFrom<PartitionJson> for TaggedPartition {
    type Error = Error;

    fn try_from(j: PartitionJson) -> Result<Self> {
        let tags = j.tags.iter().map(|t| canonical_lift(t)).collect::<Result<Vec<_>>>()?;
        let cells = if j.d == 2 {
            let arcs = j
                .cells
                .iter()
                .map(|c| match c {
                    CellJson::Arc([lo, hi]) => Ok(Arc { lo: *lo, hi: *hi }),
                    CellJson::Sites { .. } => Err(Error::InvalidPartition("d = 2 cells must be [lo, hi] pairs".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            Cells::Arcs(arcs)
        } else {
            let chains = j
                .cells
                .iter()
                .map(|c| match c {
                    CellJson::Sites { sites } => sites.iter().map(|s| canonical_lift(s)).collect(),
                    CellJson::Arc(_) => Err(Error::InvalidPartition("d >= 3 cells must list their sites".into())),
                })
                .collect::<Result<Vec<Vec<_>>>>()?;
            let tree = SiteTree::from_chains(&chains)?;
            if tree.leaves().len() != tags.len() {
                return Err(Error::InvalidPartition("cell and tag counts differ".into()));
            }
            Cells::Voronoi(tree)
        };
        let p = TaggedPartition { dim: j.d, cells, tags, norm_bound: j.norm_bound };
        p.validate()?;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn angles(p: &TaggedPartition) -> Vec<f64> {
        p.tags().iter().map(|t| t.angle().unwrap()).collect()
    }

    #[test]
    fn single_arc() {
        let p = TaggedPartition::uniform(2, 1).unwrap();
        assert_eq!(p.len(), 1);
        assert!((angles(&p)[0] - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(p.norm_bound(), 2.0);
    }

    #[test]
    fn uniform_norm_bounds() {
        let p4 = TaggedPartition::uniform(2, 4).unwrap();
        assert!((p4.norm_bound() - 2.0 * (PI / 8.0).sin()).abs() < 1e-15);
        assert!((p4.norm_bound() - 0.76537).abs() < 1e-5);
        let p180 = TaggedPartition::uniform(2, 180).unwrap();
        assert!(p180.norm_bound() <= 0.0175);
        assert!((p180.norm_bound() - 2.0 * (PI / 360.0).sin()).abs() < 1e-15);
    }

    #[test]
    fn bisection_keeps_old_tags() {
        let p2 = TaggedPartition::uniform(2, 2).unwrap();
        let p4 = p2.refine(2).unwrap();
        let u4 = TaggedPartition::uniform(2, 4).unwrap();
        match (p4.cells(), u4.cells()) {
            (Cells::Arcs(a), Cells::Arcs(b)) => {
                for (x, y) in a.iter().zip(b) {
                    assert!((x.lo - y.lo).abs() < 1e-15 && (x.hi - y.hi).abs() < 1e-15);
                }
            }
            _ => unreachable!(),
        }
        let got = angles(&p4);
        let want = [PI / 8.0, PI / 4.0, 5.0 * PI / 8.0, 3.0 * PI / 4.0];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-15, "{got:?}");
        }
        assert!(p4.norm_bound() < p2.norm_bound());
        assert_eq!(p4.len(), 2 * p2.len());
        assert_eq!(p2.refine(3).unwrap().len(), 6);
    }

    #[test]
    fn refine_rejects_small_factor() {
        assert!(TaggedPartition::uniform(2, 3).unwrap().refine(1).is_err());
        assert!(TaggedPartition::uniform(2, 0).is_err());
    }

    #[test]
    fn boundary_points_use_half_open_convention() {
        let p = TaggedPartition::uniform(2, 4).unwrap();
        assert_eq!(p.cell_of(&ProjectivePoint::from_angle(0.0)).unwrap(), 0);
        assert_eq!(p.cell_of(&ProjectivePoint::from_angle(FRAC_PI_2)).unwrap(), 2);
    }

    #[test]
    fn voronoi_partition_invariants() {
        let p = TaggedPartition::uniform_with_samples(3, 12, 2000).unwrap();
        for (i, t) in p.tags().iter().enumerate() {
            assert_eq!(p.cell_of(t).unwrap(), i);
            assert!(t.rep()[2] >= 0.0);
        }
        // Every sampled point is within norm_bound of its cell's tag.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5000 {
            let x = ProjectivePoint::new(&random_unit(&mut rng, 3)).unwrap();
            let i = p.cell_of(&x).unwrap();
            assert!(x.distance(&p.tags()[i]).unwrap() <= p.norm_bound());
            assert!(2.0 * vector::distance(x.rep(), p.tags()[i].rep()) <= p.norm_bound() + 1e-12);
        }
    }

    #[test]
    fn voronoi_refinement_is_nested() {
        let p = TaggedPartition::uniform_with_samples(3, 6, 2000).unwrap();
        let q = p.refine_with_samples(3, 2000).unwrap();
        assert_eq!(q.len(), 18);
        // Old tags survive, as the first child of each parent.
        for (i, t) in p.tags().iter().enumerate() {
            assert_eq!(&q.tags()[3 * i], t);
        }
        let parent_of: Vec<usize> = q.tags().iter().map(|t| p.cell_of(t).unwrap()).collect();
        assert!(parent_of.windows(2).all(|w| w[0] <= w[1]));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20_000 {
            let x = ProjectivePoint::new(&random_unit(&mut rng, 3)).unwrap();
            assert_eq!(parent_of[q.cell_of(&x).unwrap()], p.cell_of(&x).unwrap());
        }
    }

    #[test]
    fn json_roundtrip() {
        let p = TaggedPartition::uniform(2, 5).unwrap().refine(2).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.starts_with("{\"d\":2,\"cells\":[[0.0,"));
        let back: TaggedPartition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);

        let v = TaggedPartition::uniform_with_samples(3, 5, 500).unwrap().refine_with_samples(2, 500).unwrap();
        let back: TaggedPartition = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn json_rejects_gaps() {
        let bad = r#"{"d":2,"cells":[[0.0,1.0],[1.5,3.141592653589793]],"tags":[[1,1],[-1,1]],"norm_bound":2.0}"#;
        assert!(serde_json::from_str::<TaggedPartition>(bad).is_err());
    }
}
