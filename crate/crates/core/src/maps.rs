//! Semilinear maps and sesquilinear forms, the transformations they induce
//! on Grassmannians, regularity and distance checks, and automorphism
//! counts of Grassmann graphs.

use std::collections::{HashSet, VecDeque};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::{Counterexample, Params, Report};
use crate::rset::{compatible_frames, is_rset, CoordinateSystem};
use crate::subspace::{GrassmannianIndex, Space, Subspace};

/// `v -> matrix * frob^aut_power(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemilinearMap {
    matrix: Matrix,
    aut_power: u32,
}

impl SemilinearMap {
    pub fn new(space: &Space, matrix: Matrix, aut_power: u32) -> Result<SemilinearMap> {
        let n = space.n();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch(n, matrix.rows()));
        }
        if aut_power >= space.field().e() {
            return Err(Error::OutOfRange(format!("automorphism power {aut_power}")));
        }
        if !matrix.is_invertible(space.field()) {
            return Err(Error::Singular);
        }
        Ok(SemilinearMap { matrix, aut_power })
    }

    pub fn linear(space: &Space, matrix: Matrix) -> Result<SemilinearMap> {
        SemilinearMap::new(space, matrix, 0)
    }

    pub fn identity(space: &Space) -> SemilinearMap {
        SemilinearMap { matrix: Matrix::identity(space.n()), aut_power: 0 }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn aut_power(&self) -> u32 {
        self.aut_power
    }

    pub fn apply(&self, space: &Space, v: &[u8]) -> Vec<u8> {
        let f = space.field();
        let w: Vec<u8> = v.iter().map(|&x| f.frobenius(x, self.aut_power)).collect();
        self.matrix.apply(f, &w)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, space: &Space, inner: &SemilinearMap) -> SemilinearMap {
        let f = space.field();
        let m = self.matrix.mul(f, &inner.matrix.frobenius(f, self.aut_power));
        SemilinearMap { matrix: m, aut_power: (self.aut_power + inner.aut_power) % f.e() }
    }

    pub fn inverse(&self, space: &Space) -> SemilinearMap {
        let f = space.field();
        let back = (f.e() - self.aut_power) % f.e();
        let inv = self.matrix.inverse(f).expect("invertible by construction");
        SemilinearMap { matrix: inv.frobenius(f, back), aut_power: back }
    }

    pub fn image(&self, space: &Space, s: &Subspace) -> Subspace {
        space.image(&self.matrix, self.aut_power, s)
    }
}

/// `Ω(u, v) = uᵀ · gram · frob^aut_power(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SesquilinearForm {
    gram: Matrix,
    aut_power: u32,
}

impl SesquilinearForm {
    /// Rejects degenerate forms.
    pub fn new(space: &Space, gram: Matrix, aut_power: u32) -> Result<SesquilinearForm> {
        let n = space.n();
        if gram.rows() != n || gram.cols() != n {
            return Err(Error::DimensionMismatch(n, gram.rows()));
        }
        if aut_power >= space.field().e() {
            return Err(Error::OutOfRange(format!("automorphism power {aut_power}")));
        }
        if !gram.is_invertible(space.field()) {
            return Err(Error::Degenerate);
        }
        Ok(SesquilinearForm { gram, aut_power })
    }

    /// The standard symmetric bilinear form.
    pub fn identity(space: &Space) -> SesquilinearForm {
        SesquilinearForm { gram: Matrix::identity(space.n()), aut_power: 0 }
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn aut_power(&self) -> u32 {
        self.aut_power
    }

    pub fn eval(&self, space: &Space, u: &[u8], v: &[u8]) -> u8 {
        let f = space.field();
        let w: Vec<u8> = v.iter().map(|&x| f.frobenius(x, self.aut_power)).collect();
        let gw = self.gram.apply(f, &w);
        u.iter().zip(&gw).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    /// `{v : Ω(u, v) = 0 for all u ∈ s}`.
    pub fn orthocomplement(&self, space: &Space, s: &Subspace) -> Subspace {
        let f = space.field();
        if s.is_zero() {
            return space.full();
        }
        // rows u·G; their kernel holds frob^j(v)
        let ug = s.basis_matrix().mul(f, &self.gram);
        let ker = ug.kernel(f);
        let back = (f.e() - self.aut_power) % f.e();
        space.from_matrix(ker.frobenius(f, back))
    }

    /// The form whose right orthocomplement inverts this form's one:
    /// gram `frob^{-j}(Gᵀ)` with automorphism power `-j`.
    pub fn transposed_conjugate(&self, space: &Space) -> SesquilinearForm {
        let f = space.field();
        let back = (f.e() - self.aut_power) % f.e();
        SesquilinearForm { gram: self.gram.transpose().frobenius(f, back), aut_power: back }
    }
}

/// A total map between two enumerated Grassmannians, stored as a table of
/// indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrassmannianMap {
    pub n: usize,
    pub source_k: usize,
    pub target_k: usize,
    table: Vec<u32>,
}

impl GrassmannianMap {
    pub fn from_table(n: usize, source_k: usize, target_k: usize, table: Vec<u32>) -> Self {
        GrassmannianMap { n, source_k, target_k, table }
    }

    pub fn identity(index: &GrassmannianIndex) -> GrassmannianMap {
        let table = (0..index.len() as u32).collect();
        GrassmannianMap { n: index.n(), source_k: index.k(), target_k: index.k(), table }
    }

    /// Identity except that vertices `a` and `b` are exchanged.
    pub fn transposition(index: &GrassmannianIndex, a: usize, b: usize) -> GrassmannianMap {
        let mut m = GrassmannianMap::identity(index);
        m.table.swap(a, b);
        m
    }

    /// Tabulate `f` over `source`, looking images up in `target`.
    pub fn tabulate(
        source: &GrassmannianIndex,
        target: &GrassmannianIndex,
        f: impl Fn(&Subspace) -> Subspace + Sync,
    ) -> Result<GrassmannianMap> {
        let table: Option<Vec<u32>> = source
            .planes()
            .par_iter()
            .map(|s| target.index_of(&f(s)).map(|i| i as u32))
            .collect();
        let table = table
            .ok_or_else(|| Error::Precondition("image lies outside the target Grassmannian".into()))?;
        Ok(GrassmannianMap { n: source.n(), source_k: source.k(), target_k: target.k(), table })
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.table[i] as usize
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        self.table.iter().all(|&t| {
            let t = t as usize;
            t < seen.len() && !std::mem::replace(&mut seen[t], true)
        })
    }

    pub fn inverse(&self) -> Result<GrassmannianMap> {
        if !self.is_bijective() {
            return Err(Error::Precondition("map is not bijective".into()));
        }
        let mut inv = vec![0u32; self.table.len()];
        for (i, &t) in self.table.iter().enumerate() {
            inv[t as usize] = i as u32;
        }
        Ok(GrassmannianMap { n: self.n, source_k: self.target_k, target_k: self.source_k, table: inv })
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &GrassmannianMap) -> Result<GrassmannianMap> {
        if self.target_k != then.source_k || self.n != then.n {
            return Err(Error::Precondition("maps are not composable".into()));
        }
        let table = self.table.iter().map(|&i| then.table[i as usize]).collect();
        Ok(GrassmannianMap { n: self.n, source_k: self.source_k, target_k: then.target_k, table })
    }

    pub fn is_identity(&self) -> bool {
        self.source_k == self.target_k && self.table.iter().enumerate().all(|(i, &t)| i == t as usize)
    }
}

pub fn induced_map(
    space: &Space,
    map: &SemilinearMap,
    index: &GrassmannianIndex,
) -> Result<GrassmannianMap> {
    GrassmannianMap::tabulate(index, index, |s| map.image(space, s))
}

/// `U -> U^⊥` from G_k onto G_{n-k}.
pub fn ortho_complement_map(
    space: &Space,
    form: &SesquilinearForm,
    source: &GrassmannianIndex,
    target: &GrassmannianIndex,
) -> Result<GrassmannianMap> {
    if target.k() + source.k() != space.n() {
        return Err(Error::DimensionMismatch(space.n() - source.k(), target.k()));
    }
    GrassmannianMap::tabulate(source, target, |s| form.orthocomplement(space, s))
}

/// `k - dim(U ∩ U')` for every pair of an enumerated Grassmannian.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    size: usize,
    dist: Vec<u8>,
}

impl DistanceTable {
    pub fn new(space: &Space, index: &GrassmannianIndex) -> DistanceTable {
        let size = index.len();
        let k = index.k();
        let rows: Vec<Vec<u8>> = (0..size)
            .into_par_iter()
            .map(|i| {
                (0..size)
                    .map(|j| (k - space.meet(index.get(i), index.get(j)).dim()) as u8)
                    .collect()
            })
            .collect();
        DistanceTable { size, dist: rows.concat() }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.dist[i * self.size + j] as usize
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }
}

/// `dist(f(U), f(U')) = dist(U, U')` for every pair.
pub fn preserves_distance(map: &GrassmannianMap, source: &DistanceTable, target: &DistanceTable) -> bool {
    let n = source.len();
    (0..n).into_par_iter().all(|i| {
        (i + 1..n).all(|j| source.get(i, j) == target.get(map.apply(i), map.apply(j)))
    })
}

/// A pair `(i, j)` whose distance the map changes, if any.
pub fn distance_violation(
    map: &GrassmannianMap,
    source: &DistanceTable,
    target: &DistanceTable,
) -> Option<(usize, usize)> {
    let n = source.len();
    (0..n).find_map(|i| {
        (i + 1..n)
            .find(|&j| source.get(i, j) != target.get(map.apply(i), map.apply(j)))
            .map(|j| (i, j))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sampled { .. } => "sampled",
        }
    }
}

/// Uniformly random invertible matrix (rejection sampling).
pub fn random_invertible<R: Rng>(space: &Space, rng: &mut R) -> Matrix {
    let n = space.n();
    let q = space.field().q();
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..q) as u8).collect();
        let m = Matrix::from_flat(n, n, data);
        if m.is_invertible(space.field()) {
            return m;
        }
    }
}

type IndexLists = HashSet<Vec<u32>>;

/// Maximal R-sets of G_k and G_m (one per frame), as index lists, for
/// regularity checks of maps G_k -> G_m.
pub struct FramePlanes {
    source: Vec<Vec<u32>>,
    target: Vec<Vec<u32>>,
    /// Sorted index lists of every maximal R-set, present when all frames
    /// were enumerated.
    known: Option<(IndexLists, IndexLists)>,
}

impl FramePlanes {
    pub fn new(
        space: &Space,
        source: &GrassmannianIndex,
        target: &GrassmannianIndex,
        mode: Mode,
        budget: &Budget,
    ) -> Result<FramePlanes> {
        let frames = match mode {
            Mode::Exhaustive => compatible_frames(space, &[], budget)?,
            Mode::Sampled { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..samples)
                    .map(|_| CoordinateSystem::from_matrix(space, &random_invertible(space, &mut rng)))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        let lookup = |index: &GrassmannianIndex| -> Vec<Vec<u32>> {
            frames
                .par_iter()
                .map(|f| {
                    let mut v: Vec<u32> = f
                        .planes(space, index.k())
                        .iter()
                        .map(|p| index.index_of(p).expect("coordinate plane is enumerated") as u32)
                        .collect();
                    v.sort_unstable();
                    v
                })
                .collect()
        };
        let (source, target) = (lookup(source), lookup(target));
        let known = (mode == Mode::Exhaustive)
            .then(|| (source.iter().cloned().collect(), target.iter().cloned().collect()));
        Ok(FramePlanes { source, target, known })
    }

    pub fn frame_count(&self) -> usize {
        self.source.len()
    }

    /// Images of the source maximal R-sets and preimages of the target
    /// ones are all R-sets. Subsets of R-sets are R-sets, so the maximal
    /// ones cover the whole class. With every frame enumerated, the image
    /// of a maximal R-set under a bijection is an R-set exactly when it is
    /// itself one of the maximal R-sets.
    pub fn is_regular(
        &self,
        space: &Space,
        map: &GrassmannianMap,
        source: &GrassmannianIndex,
        target: &GrassmannianIndex,
    ) -> Result<bool> {
        let inv = map.inverse()?;
        let check = |sets: &[Vec<u32>], m: &GrassmannianMap, image_index: &GrassmannianIndex, known: Option<&HashSet<Vec<u32>>>| {
            sets.par_iter().all(|planes| match known {
                Some(known) => {
                    let mut img: Vec<u32> = planes.iter().map(|&i| m.apply(i as usize) as u32).collect();
                    img.sort_unstable();
                    known.contains(&img)
                }
                None => {
                    let img: Vec<Subspace> =
                        planes.iter().map(|&i| image_index.get(m.apply(i as usize)).clone()).collect();
                    is_rset(space, &img)
                }
            })
        };
        let (known_source, known_target) = match &self.known {
            Some((a, b)) => (Some(a), Some(b)),
            None => (None, None),
        };
        Ok(check(&self.source, map, target, known_target) && check(&self.target, &inv, source, known_source))
    }
}

pub fn is_regular(
    space: &Space,
    map: &GrassmannianMap,
    source: &GrassmannianIndex,
    target: &GrassmannianIndex,
    mode: Mode,
    budget: &Budget,
) -> Result<bool> {
    FramePlanes::new(space, source, target, mode, budget)?.is_regular(space, map, source, target)
}

/// Recover a semilinear map inducing `table` on G_k, if one exists. Images
/// of the standard lines and of `e_1 + ... + e_n` are read off as meets of
/// image planes, the matrix is fixed up to scalar by them, and each
/// automorphism power is then confirmed against the whole table.
pub fn find_collineation_witness(
    space: &Space,
    index: &GrassmannianIndex,
    map: &GrassmannianMap,
) -> Result<Option<SemilinearMap>> {
    let n = space.n();
    let k = index.k();
    if k == 0 || k >= n || map.source_k != k || map.target_k != k {
        return Ok(None);
    }
    let f = space.field();
    let unit: Vec<u8> = vec![1; n];
    let image_line = |frame: &CoordinateSystem, line: usize| -> Option<Vec<u8>> {
        let through: Vec<Subspace> = crate::subspace::combinations(n, k)
            .into_iter()
            .filter(|c| c.contains(&line))
            .map(|c| {
                let p = frame.plane(space, &c);
                index.get(map.apply(index.index_of(&p).expect("enumerated"))).clone()
            })
            .collect();
        let meet = through.iter().skip(1).fold(through[0].clone(), |acc, p| space.meet(&acc, p));
        (meet.dim() == 1).then(|| space.line_vector(&meet).to_vec())
    };
    let std_frame = CoordinateSystem::standard(space);
    let mut columns = Vec::with_capacity(n);
    for i in 0..n {
        match image_line(&std_frame, i) {
            Some(v) => columns.push(v),
            None => return Ok(None),
        }
    }
    let mut unit_frame_lines = vec![space.span(std::slice::from_ref(&unit))];
    unit_frame_lines.extend((1..n).map(|i| space.coordinate([i])));
    let unit_frame = CoordinateSystem::new(space, unit_frame_lines)?;
    let unit_pos = unit_frame
        .lines()
        .iter()
        .position(|l| space.line_vector(l) == unit.as_slice())
        .expect("unit line is in its frame");
    let Some(w_unit) = image_line(&unit_frame, unit_pos) else {
        return Ok(None);
    };
    let w = Matrix::from_columns(n, &columns);
    let Ok(w_inv) = w.inverse(f) else {
        return Ok(None);
    };
    let lambda = w_inv.apply(f, &w_unit);
    if lambda.contains(&0) {
        return Ok(None);
    }
    let candidate = w.mul(f, &Matrix::diagonal(&lambda));
    for j in 0..f.e() {
        let g = SemilinearMap::new(space, candidate.clone(), j)?;
        if induced_map(space, &g, index)? == *map {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// For form maps `f1 : G_k -> G_{n-k}` and `f2 : G_{n-k} -> G_k`: the
/// composite is induced by a collineation (witness reported), and the
/// inverse of `f1` is the map of the transposed-conjugate form.
pub fn classify_compositions(
    space: &Space,
    k: usize,
    form1: &SesquilinearForm,
    form2: &SesquilinearForm,
    budget: &Budget,
) -> Result<Report> {
    let started = Instant::now();
    let n = space.n();
    let gk = GrassmannianIndex::new(space, k, budget)?;
    let gm = GrassmannianIndex::new(space, n - k, budget)?;
    let f1 = ortho_complement_map(space, form1, &gk, &gm)?;
    let f2 = ortho_complement_map(space, form2, &gm, &gk)?;
    let composite = f1.then(&f2)?;
    let mut report = Report::new("composition_classification", Params::new(space.field(), n, k));
    match find_collineation_witness(space, &gk, &composite)? {
        Some(w) => {
            report.detail("composite_witness_matrix", serde_json::json!(w.matrix().to_rows()));
            report.detail("composite_witness_aut_power", w.aut_power());
            report.detail("composite_is_identity", composite.is_identity());
        }
        None => report.fail(Counterexample::new(
            "composite_not_collineation",
            "no semilinear map induces the composite",
        )),
    }
    let back = ortho_complement_map(space, &form1.transposed_conjugate(space), &gm, &gk)?;
    if f1.inverse()? != back {
        report.fail(Counterexample::new(
            "inverse_not_form_map",
            "inverse of the first form map differs from the transposed-conjugate form map",
        ));
    } else {
        report.detail("inverse_form_gram", serde_json::json!(form1.transposed_conjugate(space).gram().to_rows()));
    }
    Ok(report.finish(started))
}

/// Simple undirected graph on `0..n` with adjacency bitsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<u32>>,
    matrix: Vec<bool>,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut matrix = vec![false; n * n];
        for &(a, b) in edges {
            if a != b {
                matrix[a * n + b] = true;
                matrix[b * n + a] = true;
            }
        }
        Graph::from_matrix(n, matrix)
    }

    fn from_matrix(n: usize, matrix: Vec<bool>) -> Graph {
        let adj = (0..n)
            .map(|i| (0..n).filter(|&j| matrix[i * n + j]).map(|j| j as u32).collect())
            .collect();
        Graph { n, adj, matrix }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.matrix[a * self.n + b]
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_regular(&self) -> bool {
        self.adj.iter().all(|a| a.len() == self.adj.first().map_or(0, Vec::len))
    }

    /// One `u v` line per edge with `u < v`.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if (u as u32) < v {
                    out.push_str(&format!("{u} {v}\n"));
                }
            }
        }
        out
    }

    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        (0..self.n).all(|u| {
            self.adj[u].len() == self.adj[perm[u]].len()
                && self.adj[u].iter().all(|&v| self.adjacent(perm[u], perm[v as usize]))
        })
    }
}

/// Vertices are the k-subspaces, edges join subspaces at distance one.
pub fn grassmann_graph(space: &Space, k: usize, budget: &Budget) -> Result<(GrassmannianIndex, Graph)> {
    let index = GrassmannianIndex::new(space, k, budget)?;
    let d = DistanceTable::new(space, &index);
    let n = index.len();
    let matrix = (0..n * n).map(|t| d.get(t / n, t % n) == 1).collect();
    Ok((index, Graph::from_matrix(n, matrix)))
}

type Trace = Vec<(usize, Vec<u32>)>;

/// Ordered partition refinement by neighbour counts per cell. Returns the
/// refined cells and a trace that agrees for equivalent colourings.
fn refine(g: &Graph, cells: Vec<Vec<usize>>) -> (Vec<Vec<usize>>, Trace) {
    let mut cells = cells;
    let mut trace = Vec::new();
    loop {
        let mut cell_of = vec![0usize; g.n];
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        for (c, cell) in cells.iter().enumerate() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut counts = vec![0u32; cells.len()];
                    for &w in g.neighbors(v) {
                        counts[cell_of[w as usize]] += 1;
                    }
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            while start < keyed.len() {
                let mut end = start + 1;
                while end < keyed.len() && keyed[end].0 == keyed[start].0 {
                    end += 1;
                }
                trace.push((c, keyed[start].0.clone()));
                next.push(keyed[start..end].iter().map(|(_, v)| *v).collect());
                start = end;
            }
        }
        let stable = next.len() == cells.len();
        cells = next;
        if stable {
            return (cells, trace);
        }
    }
}

fn individualize(g: &Graph, seq: &[usize]) -> Vec<Vec<usize>> {
    let mut cells: Vec<Vec<usize>> = seq.iter().map(|&v| vec![v]).collect();
    let rest: Vec<usize> = (0..g.n).filter(|v| !seq.contains(v)).collect();
    if !rest.is_empty() {
        cells.push(rest);
    }
    cells
}

/// An automorphism sending `left[i]` to `right[i]` for all `i`, if any.
fn extend_isomorphism(g: &Graph, left: &mut Vec<usize>, right: &mut Vec<usize>) -> Option<Vec<usize>> {
    let (lc, lt) = refine(g, individualize(g, left));
    let (rc, rt) = refine(g, individualize(g, right));
    if lt != rt || lc.len() != rc.len() || lc.iter().zip(&rc).any(|(a, b)| a.len() != b.len()) {
        return None;
    }
    let Some(c) = lc.iter().position(|cell| cell.len() > 1) else {
        let mut perm = vec![0usize; g.n];
        for (a, b) in lc.iter().zip(&rc) {
            perm[a[0]] = b[0];
        }
        return g.is_automorphism(&perm).then_some(perm);
    };
    let x = lc[c][0];
    for &y in &rc[c] {
        left.push(x);
        right.push(y);
        let found = extend_isomorphism(g, left, right);
        left.pop();
        right.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Order of the automorphism group by a stabilizer chain: at each level the
/// orbit of the first vertex of the first non-singleton refined cell is
/// measured by searching for automorphisms that fix the earlier base points.
pub fn automorphism_group_order(g: &Graph, budget: &Budget) -> Result<u128> {
    if g.n > budget.max_vertices {
        return Err(Error::Budget(format!(
            "{} vertices exceed the automorphism search cap of {}",
            g.n, budget.max_vertices
        )));
    }
    let mut order: u128 = 1;
    let mut base: Vec<usize> = Vec::new();
    loop {
        let (cells, _) = refine(g, individualize(g, &base));
        let Some(cell) = cells.into_iter().find(|c| c.len() > 1) else {
            return Ok(order);
        };
        let v = cell[0];
        let mut gens: Vec<Vec<usize>> = Vec::new();
        let mut orbit: HashSet<usize> = HashSet::from([v]);
        for &w in &cell[1..] {
            if orbit.contains(&w) {
                continue;
            }
            let mut left = base.clone();
            let mut right = base.clone();
            left.push(v);
            right.push(w);
            if let Some(perm) = extend_isomorphism(g, &mut left, &mut right) {
                gens.push(perm);
                orbit = orbit_of(v, &gens);
            }
        }
        order *= orbit.len() as u128;
        base.push(v);
    }
}

fn orbit_of(v: usize, gens: &[Vec<usize>]) -> HashSet<usize> {
    let mut seen = HashSet::from([v]);
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            if seen.insert(g[x]) {
                queue.push_back(g[x]);
            }
        }
    }
    seen
}

/// Generators of the collineation group acting on G_k: elementary
/// transvections over an additive basis of the field, one diagonal matrix
/// with a primitive entry, the Frobenius map, and, when `n = 2k`, the
/// orthocomplement map of the standard form.
pub fn collineation_generators(
    space: &Space,
    index: &GrassmannianIndex,
) -> Result<Vec<GrassmannianMap>> {
    let f = space.field();
    let n = space.n();
    let a = f.primitive_element();
    let scalars: Vec<u8> = (0..f.e()).map(|t| f.pow(a, t as u64)).collect();
    let mut maps: Vec<SemilinearMap> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for &c in &scalars {
                let mut m = Matrix::identity(n);
                m.set(i, j, c);
                maps.push(SemilinearMap::linear(space, m)?);
            }
        }
    }
    let mut d = Matrix::identity(n);
    d.set(0, 0, a);
    maps.push(SemilinearMap::linear(space, d)?);
    if f.e() > 1 {
        maps.push(SemilinearMap::new(space, Matrix::identity(n), 1)?);
    }
    let mut out: Vec<GrassmannianMap> =
        maps.iter().map(|m| induced_map(space, m, index)).collect::<Result<_>>()?;
    if 2 * index.k() == n {
        out.push(ortho_complement_map(space, &SesquilinearForm::identity(space), index, index)?);
    }
    out.retain(|m| !m.is_identity());
    out.sort_by(|x, y| x.table().cmp(y.table()));
    out.dedup();
    Ok(out)
}

/// Breadth-first closure of a permutation group given by generators.
pub fn permutation_group_order(gens: &[GrassmannianMap], size: usize, cap: usize) -> Result<usize> {
    let id: Vec<u32> = (0..size as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let prod: Vec<u32> = g.iter().map(|&x| h.table()[x as usize]).collect();
            if !seen.contains(&prod) {
                if seen.len() >= cap {
                    return Err(Error::Budget(format!("group closure exceeds {cap} elements")));
                }
                seen.insert(prod.clone());
                queue.push_back(prod);
            }
        }
    }
    Ok(seen.len())
}

pub fn collineation_and_duality_subgroup_order(space: &Space, k: usize, budget: &Budget) -> Result<usize> {
    let index = GrassmannianIndex::new(space, k, budget)?;
    if index.len() > budget.max_vertices {
        return Err(Error::Budget(format!("{} vertices exceed the cap", index.len())));
    }
    let gens = collineation_generators(space, &index)?;
    permutation_group_order(&gens, index.len(), budget.max_group_order)
}

/// Random products of `length` generators.
pub fn random_group_elements(
    gens: &[GrassmannianMap],
    count: usize,
    length: usize,
    seed: u64,
) -> Vec<GrassmannianMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut acc = gens[0].clone();
            for _ in 0..length {
                acc = acc.then(gens.choose(&mut rng).expect("nonempty")).expect("same Grassmannian");
            }
            acc
        })
        .collect()
}
