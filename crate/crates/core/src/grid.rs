//! Discrete free perimeter on a grid of square cells.
//!
//! A shape is a 4-connected set of cells; its free perimeter counts the
//! cell edges separating it from the rest of the domain. Edges on the
//! domain border never count. Two minimisers are provided: exhaustive
//! enumeration of connected subsets for small domains and simulated
//! annealing for large ones.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{domain, FenceError, Result};
use crate::isoperimetrics::{Contacts, Rect, TouchClass};
use crate::scalar::Scalar;

/// `(col, row)`; `col` runs along the side of length `cols * cell`.
pub type Cell = (usize, usize);

/// Default enumeration cap, in cells.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridDomain<T> {
    cols: usize,
    rows: usize,
    cell: T,
}

impl<T: Scalar> GridDomain<T> {
    pub fn new(cols: usize, rows: usize, cell: T) -> Result<Self> {
        if cols == 0 || rows == 0 {
            return domain(format!(
                "grid needs at least one column and row, got {cols}x{rows}"
            ));
        }
        if !(cell.is_finite() && cell > T::zero()) {
            return domain(format!("cell size must be positive, got {cell}"));
        }
        Ok(GridDomain { cols, rows, cell })
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cell(&self) -> T {
        self.cell
    }

    pub fn len(&self) -> usize {
        self.cols * self.rows
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rect(&self) -> Rect<T> {
        let cols = T::from(self.cols).unwrap_or_else(T::infinity);
        let rows = T::from(self.rows).unwrap_or_else(T::infinity);
        Rect::new(cols * self.cell, rows * self.cell).expect("positive sides")
    }

    /// Area of `k` cells.
    pub fn area_of(&self, k: usize) -> T {
        T::from(k).unwrap_or_else(T::infinity) * self.cell * self.cell
    }

    pub(crate) fn contains(&self, (c, r): Cell) -> bool {
        c < self.cols && r < self.rows
    }

    /// Dense index ordered like `(col, row)` tuples.
    #[inline]
    pub(crate) fn index(&self, (c, r): Cell) -> usize {
        c * self.rows + r
    }

    #[inline]
    pub(crate) fn cell_at(&self, idx: usize) -> Cell {
        (idx / self.rows, idx % self.rows)
    }

    fn neighbours(&self, (c, r): Cell) -> impl Iterator<Item = Cell> + '_ {
        let cand = [
            (c.wrapping_sub(1), r),
            (c + 1, r),
            (c, r.wrapping_sub(1)),
            (c, r + 1),
        ];
        cand.into_iter().filter(move |&n| self.contains(n))
    }

    fn length_of(&self, edges: usize) -> T {
        T::from(edges).unwrap_or_else(T::infinity) * self.cell
    }
}

/// A 4-connected cell set, kept sorted; or the empty shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GridShape {
    cells: Vec<Cell>,
}

impl GridShape {
    pub fn empty() -> Self {
        GridShape { cells: Vec::new() }
    }

    /// Fails if the cells are not 4-connected. Duplicates are removed.
    pub fn connected(cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let shape = Self::from_cells_unchecked(cells);
        if !shape.is_connected() {
            return Err(FenceError::Domain("grid shape is not 4-connected".into()));
        }
        Ok(shape)
    }

    fn from_cells_unchecked(cells: impl IntoIterator<Item = Cell>) -> Self {
        let mut cells: Vec<Cell> = cells.into_iter().collect();
        cells.sort_unstable();
        cells.dedup();
        GridShape { cells }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.binary_search(&c).is_ok()
    }

    fn is_connected(&self) -> bool {
        let Some(&start) = self.cells.first() else {
            return true;
        };
        let mut seen = vec![false; self.cells.len()];
        let mut queue = VecDeque::from([start]);
        seen[0] = true;
        let mut count = 1;
        while let Some((c, r)) = queue.pop_front() {
            let cand = [
                (c.wrapping_sub(1), r),
                (c + 1, r),
                (c, r.wrapping_sub(1)),
                (c, r + 1),
            ];
            for n in cand {
                if let Ok(i) = self.cells.binary_search(&n) {
                    if !seen[i] {
                        seen[i] = true;
                        count += 1;
                        queue.push_back(n);
                    }
                }
            }
        }
        count == self.cells.len()
    }

    fn membership<T: Scalar>(&self, d: &GridDomain<T>) -> Result<Vec<bool>> {
        let mut inside = vec![false; d.len()];
        for &c in &self.cells {
            if !d.contains(c) {
                return domain(format!(
                    "cell {c:?} outside {}x{} domain",
                    d.cols(),
                    d.rows()
                ));
            }
            inside[d.index(c)] = true;
        }
        Ok(inside)
    }
}

fn boundary_edges<T: Scalar>(inside: &[bool], cells: &[Cell], d: &GridDomain<T>) -> usize {
    cells
        .iter()
        .map(|&c| d.neighbours(c).filter(|&n| !inside[d.index(n)]).count())
        .sum()
}

/// `cell` times the number of cell edges between `g` and the rest of the domain.
pub fn grid_free_perimeter<T: Scalar>(g: &GridShape, d: &GridDomain<T>) -> Result<T> {
    let inside = g.membership(d)?;
    Ok(d.length_of(boundary_edges(&inside, g.cells(), d)))
}

/// Touch class from the domain sides that carry at least one cell edge of `g`.
pub fn grid_touch_class<T: Scalar>(g: &GridShape, d: &GridDomain<T>) -> Result<TouchClass> {
    g.membership(d)?;
    let mut contacts = Contacts::default();
    for &(c, r) in g.cells() {
        contacts.bottom |= r == 0;
        contacts.top |= r + 1 == d.rows();
        contacts.left |= c == 0;
        contacts.right |= c + 1 == d.cols();
    }
    Ok(TouchClass::from_contacts(contacts))
}

/// The 4-connected components of the complement of `g`, ordered by their
/// least cell.
pub fn complement_components<T: Scalar>(
    g: &GridShape,
    d: &GridDomain<T>,
) -> Result<Vec<GridShape>> {
    let mut taken = g.membership(d)?;
    let mut out = Vec::new();
    for idx in 0..d.len() {
        if taken[idx] {
            continue;
        }
        taken[idx] = true;
        let mut comp = vec![d.cell_at(idx)];
        let mut queue = VecDeque::from([d.cell_at(idx)]);
        while let Some(c) = queue.pop_front() {
            for n in d.neighbours(c) {
                let j = d.index(n);
                if !taken[j] {
                    taken[j] = true;
                    comp.push(n);
                    queue.push_back(n);
                }
            }
        }
        out.push(GridShape::from_cells_unchecked(comp));
    }
    Ok(out)
}

/// Random connected `k`-cell shape grown from a uniform seed cell by
/// repeatedly adding a uniformly chosen cell of the outer boundary.
pub fn random_connected_shape<T: Scalar, R: Rng + ?Sized>(
    d: &GridDomain<T>,
    k: usize,
    rng: &mut R,
) -> Result<GridShape> {
    let n = d.len();
    if k > n {
        return domain(format!("k = {k} exceeds the {n} cells of the domain"));
    }
    if k == 0 {
        return Ok(GridShape::empty());
    }
    let mut member = vec![false; n];
    let mut on_frontier = vec![false; n];
    let mut frontier: Vec<usize> = Vec::new();
    let mut cells = Vec::with_capacity(k);
    let mut next = rng.gen_range(0..n);
    loop {
        member[next] = true;
        let c = d.cell_at(next);
        cells.push(c);
        if cells.len() == k {
            break;
        }
        for nb in d.neighbours(c) {
            let j = d.index(nb);
            if !member[j] && !on_frontier[j] {
                on_frontier[j] = true;
                frontier.push(j);
            }
        }
        next = frontier.swap_remove(rng.gen_range(0..frontier.len()));
    }
    Ok(GridShape::from_cells_unchecked(cells))
}

/// Exact minimum over connected `k`-cell shapes, using [`DEFAULT_ENUMERATION_CAP`].
pub fn oracle_min_free_perimeter<T: Scalar>(d: &GridDomain<T>, k: usize) -> Result<(T, GridShape)> {
    oracle_min_free_perimeter_with_cap(d, k, DEFAULT_ENUMERATION_CAP)
}

/// Exact minimum over connected `k`-cell shapes. Ties go to the
/// lexicographically least cell list. `cap` may not exceed 64.
pub fn oracle_min_free_perimeter_with_cap<T: Scalar>(
    d: &GridDomain<T>,
    k: usize,
    cap: usize,
) -> Result<(T, GridShape)> {
    let n = d.len();
    if n > cap.min(64) {
        return Err(FenceError::Capacity {
            cells: n,
            cap: cap.min(64),
        });
    }
    if k > n {
        return domain(format!("k = {k} exceeds the {n} cells of the domain"));
    }
    if k == 0 {
        return Ok((T::zero(), GridShape::empty()));
    }
    let search = Enumerator::new(d, k);
    let best = (0..n)
        .into_par_iter()
        .filter_map(|anchor| search.best_with_anchor(anchor))
        .reduce_with(Best::better)
        .expect("a connected shape of every size up to n exists");
    let cells = (0..n)
        .filter(|&i| best.mask >> i & 1 == 1)
        .map(|i| d.cell_at(i));
    Ok((
        d.length_of(best.edges),
        GridShape::from_cells_unchecked(cells),
    ))
}

#[derive(Clone, Copy, Debug)]
struct Best {
    edges: usize,
    mask: u64,
}

impl Best {
    /// Fewer edges wins; on a tie the set whose least differing cell is
    /// smaller wins, which is lexicographic order on sorted cell lists.
    fn better(a: Best, b: Best) -> Best {
        if a.edges != b.edges {
            return if a.edges < b.edges { a } else { b };
        }
        let diff = a.mask ^ b.mask;
        if diff == 0 || a.mask & (diff & diff.wrapping_neg()) != 0 {
            a
        } else {
            b
        }
    }
}

/// Connected-subset enumeration rooted at the least member ("anchor"):
/// each connected set is generated exactly once, from its least cell,
/// by only ever adding cells from the exclusive neighbourhood of the
/// most recent addition.
struct Enumerator {
    k: usize,
    nbr: Vec<u64>,
    degree: Vec<usize>,
}

impl Enumerator {
    fn new<T: Scalar>(d: &GridDomain<T>, k: usize) -> Self {
        let nbr: Vec<u64> = (0..d.len())
            .map(|i| {
                d.neighbours(d.cell_at(i))
                    .fold(0u64, |m, c| m | 1 << d.index(c))
            })
            .collect();
        let degree = nbr.iter().map(|m| m.count_ones() as usize).collect();
        Enumerator { k, nbr, degree }
    }

    fn best_with_anchor(&self, anchor: usize) -> Option<Best> {
        let above = !((1u64 << anchor) - 1) & !(1u64 << anchor);
        let set = 1u64 << anchor;
        let mut best = None;
        self.extend(
            set,
            self.nbr[anchor] & above,
            self.nbr[anchor] | set,
            above,
            self.degree[anchor],
            1,
            &mut best,
        );
        best
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        set: u64,
        mut ext: u64,
        closed_nbhd: u64,
        above: u64,
        edges: usize,
        size: usize,
        best: &mut Option<Best>,
    ) {
        if size == self.k {
            let cand = Best { edges, mask: set };
            *best = Some(match *best {
                Some(b) => Best::better(b, cand),
                None => cand,
            });
            return;
        }
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            let wbit = 1u64 << w;
            let inner = (self.nbr[w] & set).count_ones() as usize;
            let new_edges = edges + self.degree[w] - 2 * inner;
            let fresh = self.nbr[w] & !closed_nbhd & above;
            self.extend(
                set | wbit,
                ext | fresh,
                closed_nbhd | self.nbr[w],
                above,
                new_edges,
                size + 1,
                best,
            );
        }
    }
}

/// Geometric cooling schedule for [`anneal_min_free_perimeter`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealSchedule<T> {
    /// Starting temperature, in length units.
    pub t0: T,
    /// Temperature multiplier applied after each sweep.
    pub ratio: T,
    pub sweeps: usize,
}

impl<T: Scalar> AnnealSchedule<T> {
    /// `T0 = 2·cell`, ratio 0.995, 200 sweeps.
    pub fn for_domain(d: &GridDomain<T>) -> Self {
        AnnealSchedule {
            t0: T::lit(2.0) * d.cell(),
            ratio: T::lit(0.995),
            sweeps: 200,
        }
    }
}

/// Simulated annealing over connected `k`-cell shapes. Each sweep proposes
/// one move per domain cell: drop a cell of the shape and add a cell
/// adjacent to it, keeping the shape connected. Returns the best shape
/// seen; deterministic for a given seed.
pub fn anneal_min_free_perimeter<T: Scalar>(
    d: &GridDomain<T>,
    k: usize,
    seed: u64,
    schedule: &AnnealSchedule<T>,
) -> Result<(T, GridShape)> {
    let n = d.len();
    if k > n {
        return domain(format!("k = {k} exceeds the {n} cells of the domain"));
    }
    if !(schedule.t0.is_finite() && schedule.t0 >= T::zero())
        || !(schedule.ratio > T::zero() && schedule.ratio <= T::one())
    {
        return domain("annealing needs t0 >= 0 and ratio in (0, 1]");
    }
    if k == 0 {
        return Ok((T::zero(), GridShape::empty()));
    }
    if k == n {
        let all = GridShape::from_cells_unchecked((0..n).map(|i| d.cell_at(i)));
        return Ok((T::zero(), all));
    }

    let mut state = AnnealState::new(d, compact_start(d, k));
    let mut best_edges = state.edges;
    let mut best_cells = state.sorted_cells();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut temp = schedule.t0 / d.cell();

    for _ in 0..schedule.sweeps {
        for _ in 0..n {
            let Some((out, inn, delta)) = state.propose(&mut rng) else {
                continue;
            };
            let accept = delta <= 0 || {
                let u: f64 = rng.gen();
                let t = temp.to_f64_lossy();
                t > 0.0 && u < (-(delta as f64) / t).exp()
            };
            if accept {
                state.apply(out, inn);
                if state.edges < best_edges {
                    best_edges = state.edges;
                    best_cells = state.sorted_cells();
                }
            }
        }
        temp = temp * schedule.ratio;
    }
    Ok((d.length_of(best_edges), GridShape { cells: best_cells }))
}

/// Deterministic compact start: the better of filling strips across the
/// short side from the origin and filling by distance from the origin corner.
fn compact_start<T: Scalar>(d: &GridDomain<T>, k: usize) -> Vec<usize> {
    let mut strips: Vec<usize> = (0..d.len()).collect();
    if d.cols() <= d.rows() {
        strips.sort_by_key(|&i| {
            let (c, r) = d.cell_at(i);
            (r, c)
        });
    }
    let mut radial: Vec<usize> = (0..d.len()).collect();
    radial.sort_by_key(|&i| {
        let (c, r) = d.cell_at(i);
        ((2 * c + 1).pow(2) + (2 * r + 1).pow(2), i)
    });

    let mut best: Option<(usize, Vec<usize>)> = None;
    for order in [strips, radial] {
        let pick: Vec<usize> = order.into_iter().take(k).collect();
        let shape = GridShape::from_cells_unchecked(pick.iter().map(|&i| d.cell_at(i)));
        if !shape.is_connected() {
            continue;
        }
        let inside = shape.membership(d).expect("cells drawn from the domain");
        let edges = boundary_edges(&inside, shape.cells(), d);
        if best.as_ref().is_none_or(|(e, _)| edges < *e) {
            best = Some((edges, pick));
        }
    }
    best.expect("strip fill is always connected").1
}

struct AnnealState<'d, T> {
    d: &'d GridDomain<T>,
    inside: Vec<bool>,
    /// Members in arbitrary order; `slot[i]` is the position of cell `i`.
    members: Vec<usize>,
    slot: Vec<usize>,
    edges: usize,
}

impl<'d, T: Scalar> AnnealState<'d, T> {
    fn new(d: &'d GridDomain<T>, members: Vec<usize>) -> Self {
        let mut inside = vec![false; d.len()];
        let mut slot = vec![usize::MAX; d.len()];
        for (pos, &i) in members.iter().enumerate() {
            inside[i] = true;
            slot[i] = pos;
        }
        let cells: Vec<Cell> = members.iter().map(|&i| d.cell_at(i)).collect();
        let edges = boundary_edges(&inside, &cells, d);
        AnnealState {
            d,
            inside,
            members,
            slot,
            edges,
        }
    }

    fn sorted_cells(&self) -> Vec<Cell> {
        let mut cells: Vec<Cell> = self.members.iter().map(|&i| self.d.cell_at(i)).collect();
        cells.sort_unstable();
        cells
    }

    fn nbr_indices(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.d
            .neighbours(self.d.cell_at(i))
            .map(|c| self.d.index(c))
    }

    /// Change in boundary edges if cell `i` flips membership.
    fn flip_delta(&self, i: usize) -> isize {
        let (mut same, mut other) = (0isize, 0isize);
        for j in self.nbr_indices(i) {
            if self.inside[j] == self.inside[i] {
                same += 1;
            } else {
                other += 1;
            }
        }
        same - other
    }

    fn propose(&mut self, rng: &mut ChaCha8Rng) -> Option<(usize, usize, isize)> {
        let out = self.members[rng.gen_range(0..self.members.len())];
        let anchor = self.members[rng.gen_range(0..self.members.len())];
        let nbrs: Vec<usize> = self.nbr_indices(anchor).collect();
        let inn = nbrs[rng.gen_range(0..nbrs.len())];
        if self.inside[inn] || anchor == out {
            return None;
        }
        // Removing `out` must not split the shape, and `inn` must stay attached.
        if !self.removal_keeps_connected(out) {
            return None;
        }
        let d_out = self.flip_delta(out);
        self.inside[out] = false;
        let attached = self.nbr_indices(inn).any(|j| self.inside[j]);
        let d_in = self.flip_delta(inn);
        self.inside[out] = true;
        if !attached {
            return None;
        }
        Some((out, inn, d_out + d_in))
    }

    fn apply(&mut self, out: usize, inn: usize) {
        let d_out = self.flip_delta(out);
        self.inside[out] = false;
        let d_in = self.flip_delta(inn);
        self.inside[inn] = true;
        self.edges = (self.edges as isize + d_out + d_in) as usize;
        let pos = self.slot[out];
        self.members[pos] = inn;
        self.slot[inn] = pos;
        self.slot[out] = usize::MAX;
    }

    /// Local articulation test on the 8-ring around `i`, falling back to a
    /// full search when the ring is inconclusive.
    fn removal_keeps_connected(&mut self, i: usize) -> bool {
        let (c, r) = self.d.cell_at(i);
        let at = |dc: isize, dr: isize| -> bool {
            let cc = c as isize + dc;
            let rr = r as isize + dr;
            cc >= 0
                && rr >= 0
                && (cc as usize) < self.d.cols()
                && (rr as usize) < self.d.rows()
                && self.inside[self.d.index((cc as usize, rr as usize))]
        };
        // Ring in cyclic order; even positions are edge neighbours.
        const RING: [(isize, isize); 8] = [
            (1, 0),
            (1, 1),
            (0, 1),
            (-1, 1),
            (-1, 0),
            (-1, -1),
            (0, -1),
            (1, -1),
        ];
        let occ: Vec<bool> = RING.iter().map(|&(dc, dr)| at(dc, dr)).collect();
        let edge_nbrs = (0..8).step_by(2).filter(|&p| occ[p]).count();
        if edge_nbrs <= 1 {
            return true;
        }
        // Count runs of occupied ring cells that contain an edge neighbour;
        // a corner cell links two edge neighbours only through 4-adjacency.
        let mut runs = 0;
        for p in (0..8).step_by(2) {
            if !occ[p] {
                continue;
            }
            // Start of a run: the previous edge neighbour is not linked via the corner.
            let prev_edge = (p + 6) % 8;
            let corner = (p + 7) % 8;
            if !(occ[prev_edge] && occ[corner]) {
                runs += 1;
            }
        }
        // Zero runs means every occupied edge neighbour links to the previous one.
        if runs <= 1 {
            return true;
        }
        self.connected_without(i)
    }

    fn connected_without(&mut self, i: usize) -> bool {
        self.inside[i] = false;
        let start = *self.members.iter().find(|&&m| m != i).expect("k >= 2 here");
        let mut seen = vec![false; self.d.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for j in self.d.neighbours(self.d.cell_at(v)) {
                let j = self.d.index(j);
                if self.inside[j] && !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        self.inside[i] = true;
        count == self.members.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dom(c: usize, r: usize) -> GridDomain<f64> {
        GridDomain::new(c, r, 1.0).unwrap()
    }

    fn shape(cells: &[Cell]) -> GridShape {
        GridShape::connected(cells.iter().copied()).unwrap()
    }

    /// Plain scan over every cell edge of the domain.
    fn edge_scan(g: &GridShape, d: &GridDomain<f64>) -> usize {
        let mut count = 0;
        for c in 0..d.cols() {
            for r in 0..d.rows() {
                if c + 1 < d.cols() && g.contains((c, r)) != g.contains((c + 1, r)) {
                    count += 1;
                }
                if r + 1 < d.rows() && g.contains((c, r)) != g.contains((c, r + 1)) {
                    count += 1;
                }
            }
        }
        count
    }

    /// All connected subsets of size `k`, by scanning every bitmask.
    fn brute_min(d: &GridDomain<f64>, k: usize) -> (usize, Vec<Cell>) {
        let n = d.len();
        let mut best: Option<(usize, Vec<Cell>)> = None;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let cells: Vec<Cell> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| d.cell_at(i))
                .collect();
            let Ok(g) = GridShape::connected(cells) else {
                continue;
            };
            let e = edge_scan(&g, d);
            let cand = (e, g.cells().to_vec());
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        best.unwrap()
    }

    #[test]
    fn free_perimeter_examples() {
        let d = dom(2, 2);
        assert_eq!(grid_free_perimeter(&shape(&[(0, 0)]), &d).unwrap(), 2.0);
        let full = shape(&[(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(grid_free_perimeter(&full, &d).unwrap(), 0.0);

        let d34 = dom(3, 4);
        let strip = shape(&[(0, 0), (1, 0), (2, 0)]);
        assert_eq!(edge_scan(&strip, &d34), 3);
        assert_eq!(grid_free_perimeter(&strip, &d34).unwrap(), 3.0);

        let scaled = GridDomain::new(3, 4, 0.5).unwrap();
        assert_eq!(grid_free_perimeter(&strip, &scaled).unwrap(), 1.5);

        assert!(matches!(
            grid_free_perimeter(&shape(&[(3, 0)]), &d34),
            Err(FenceError::Domain(_))
        ));
    }

    #[test]
    fn shape_must_be_connected() {
        assert!(GridShape::connected([(0, 0), (1, 1)]).is_err());
        assert!(GridShape::connected([(0, 0), (0, 1), (1, 1)]).is_ok());
        assert!(GridShape::connected(Vec::<Cell>::new()).unwrap().is_empty());
    }

    #[test]
    fn touch_classes() {
        let d = dom(3, 4);
        assert_eq!(
            grid_touch_class(&shape(&[(0, 0)]), &d).unwrap(),
            TouchClass::TwoAdjacent
        );
        assert_eq!(
            grid_touch_class(&shape(&[(0, 1), (1, 1), (2, 1)]), &d).unwrap(),
            TouchClass::TwoOpposite
        );
        assert_eq!(
            grid_touch_class(&shape(&[(0, 0), (1, 0), (2, 0)]), &d).unwrap(),
            TouchClass::Three
        );
        assert_eq!(
            grid_touch_class(&shape(&[(1, 1)]), &d).unwrap(),
            TouchClass::Zero
        );
        assert_eq!(
            grid_touch_class(&shape(&[(1, 0)]), &d).unwrap(),
            TouchClass::One
        );
        assert_eq!(
            grid_touch_class(&GridShape::empty(), &d).unwrap(),
            TouchClass::Zero
        );
    }

    #[test]
    fn complement_examples() {
        let d = dom(3, 3);
        let plus = shape(&[(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]);
        let comps = complement_components(&plus, &d).unwrap();
        assert_eq!(comps.len(), 4);
        assert!(comps.iter().all(|c| c.len() == 1));
        let sum: f64 = comps
            .iter()
            .map(|c| grid_free_perimeter(c, &d).unwrap())
            .sum();
        assert_eq!(sum, grid_free_perimeter(&plus, &d).unwrap());

        let d34 = dom(3, 4);
        let strip = shape(&[(0, 0), (1, 0), (2, 0)]);
        assert_eq!(complement_components(&strip, &d34).unwrap().len(), 1);

        let all: Vec<Cell> = (0..3).flat_map(|c| (0..4).map(move |r| (c, r))).collect();
        assert!(complement_components(&shape(&all), &d34)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn oracle_examples() {
        let d = dom(3, 4);
        let (len, w) = oracle_min_free_perimeter(&d, 3).unwrap();
        assert_eq!(len, 3.0);
        assert_eq!(w.cells(), &[(0, 0), (1, 0), (2, 0)]);

        let (len, w) = oracle_min_free_perimeter(&d, 0).unwrap();
        assert_eq!(len, 0.0);
        assert!(w.is_empty());

        let (len, w) = oracle_min_free_perimeter(&dom(2, 2), 2).unwrap();
        assert_eq!(len, 2.0);
        assert_eq!(w.cells(), &[(0, 0), (0, 1)]);

        assert!(matches!(
            oracle_min_free_perimeter(&dom(5, 5), 3),
            Err(FenceError::Capacity { cells: 25, cap: 24 })
        ));
        assert!(oracle_min_free_perimeter(&d, 13).is_err());
    }

    #[test]
    fn oracle_matches_bitmask_scan() {
        for (c, r) in [(1, 1), (1, 5), (2, 3), (3, 3), (3, 4), (2, 6)] {
            let d = dom(c, r);
            for k in 1..=d.len() {
                let (len, w) = oracle_min_free_perimeter(&d, k).unwrap();
                let (edges, cells) = brute_min(&d, k);
                assert_eq!(len, edges as f64, "{c}x{r} k={k}");
                assert_eq!(w.cells(), cells.as_slice(), "{c}x{r} k={k}");
                assert_eq!(edge_scan(&w, &d), edges);
            }
        }
    }

    #[test]
    fn anneal_examples() {
        let d = dom(3, 4);
        let sched = AnnealSchedule::for_domain(&d);
        for seed in 0..5 {
            let (len, w) = anneal_min_free_perimeter(&d, 3, seed, &sched).unwrap();
            assert_eq!(len, 3.0);
            assert_eq!(w.len(), 3);
        }
        let (len, w) = anneal_min_free_perimeter(&d, 12, 1, &sched).unwrap();
        assert_eq!((len, w.len()), (0.0, 12));
        let (len, _) = anneal_min_free_perimeter(&d, 0, 1, &sched).unwrap();
        assert_eq!(len, 0.0);
    }

    #[test]
    fn anneal_is_deterministic_and_connected() {
        let d = dom(7, 9);
        let sched = AnnealSchedule {
            t0: 2.0,
            ratio: 0.97,
            sweeps: 40,
        };
        let a = anneal_min_free_perimeter(&d, 17, 42, &sched).unwrap();
        let b = anneal_min_free_perimeter(&d, 17, 42, &sched).unwrap();
        assert_eq!(a, b);
        assert!(GridShape::connected(a.1.cells().iter().copied()).is_ok());
        assert_eq!(grid_free_perimeter(&a.1, &d).unwrap(), a.0);
    }

    #[test]
    fn local_articulation_test_agrees_with_search() {
        let d = dom(4, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let mask: u32 = rng.gen::<u32>() & 0xffff;
            let cells: Vec<Cell> = (0..16)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| d.cell_at(i))
                .collect();
            let Ok(g) = GridShape::connected(cells) else {
                continue;
            };
            if g.len() < 2 {
                continue;
            }
            let members: Vec<usize> = g.cells().iter().map(|&c| d.index(c)).collect();
            let mut st = AnnealState::new(&d, members.clone());
            for &m in &members {
                let fast = st.removal_keeps_connected(m);
                let rest: Vec<Cell> = g
                    .cells()
                    .iter()
                    .copied()
                    .filter(|&c| c != d.cell_at(m))
                    .collect();
                assert_eq!(fast, GridShape::connected(rest).is_ok());
            }
        }
    }
}
