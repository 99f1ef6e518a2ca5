//! R-sets: families of subspaces that are simultaneously coordinate planes of
//! one coordinate system, together with exactness, the degree of
//! inexactness, line profiles, and exhaustive sweeps over one fixed frame.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::{Counterexample, Params, Report};
use crate::subspace::{binomial, combinations, Space, Subspace};

/// An unordered set of `n` independent lines.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordinateSystem {
    lines: Vec<Subspace>,
}

impl CoordinateSystem {
    pub fn new(space: &Space, mut lines: Vec<Subspace>) -> Result<CoordinateSystem> {
        if lines.len() != space.n() {
            return Err(Error::DimensionMismatch(space.n(), lines.len()));
        }
        if lines.iter().any(|l| l.dim() != 1 || l.ambient() != space.n()) {
            return Err(Error::Precondition("coordinate systems consist of lines".into()));
        }
        if space.join_all(&lines).dim() != space.n() {
            return Err(Error::Precondition("lines are not independent".into()));
        }
        lines.sort_by(|a, b| b.cmp(a));
        Ok(CoordinateSystem { lines })
    }

    /// Lines are kept in descending canonical order, which lists the
    /// standard frame as `e_1, ..., e_n`.
    fn from_sorted(mut lines: Vec<Subspace>) -> CoordinateSystem {
        lines.sort_by(|a, b| b.cmp(a));
        CoordinateSystem { lines }
    }

    /// Lines through the standard basis vectors, in basis order.
    pub fn standard(space: &Space) -> CoordinateSystem {
        CoordinateSystem::from_sorted((0..space.n()).map(|i| space.coordinate([i])).collect())
    }

    /// The frame spanned by the columns of an invertible matrix.
    pub fn from_matrix(space: &Space, m: &Matrix) -> Result<CoordinateSystem> {
        let cols = m.transpose();
        let lines = (0..cols.rows()).map(|c| space.span(&[cols.row(c)])).collect();
        CoordinateSystem::new(space, lines)
    }

    pub fn lines(&self) -> &[Subspace] {
        &self.lines
    }

    pub fn n(&self) -> usize {
        self.lines.len()
    }

    pub fn plane(&self, space: &Space, indices: &[usize]) -> Subspace {
        space.join_all(indices.iter().map(|&i| &self.lines[i]))
    }

    /// All k-dimensional coordinate planes, in lexicographic order of line
    /// index sets.
    pub fn planes(&self, space: &Space, k: usize) -> Vec<Subspace> {
        combinations(self.n(), k).iter().map(|c| self.plane(space, c)).collect()
    }

    /// Indices of the lines lying in `s`, when `s` is a coordinate plane.
    pub fn coordinate_indices(&self, space: &Space, s: &Subspace) -> Option<Vec<usize>> {
        let inside: Vec<usize> = (0..self.n())
            .filter(|&i| space.contains(s, &self.lines[i]))
            .collect();
        (inside.len() == s.dim()).then_some(inside)
    }

    pub fn is_coordinate(&self, space: &Space, s: &Subspace) -> bool {
        self.coordinate_indices(space, s).is_some()
    }

    pub fn transform(&self, space: &Space, m: &Matrix, aut_power: u32) -> CoordinateSystem {
        CoordinateSystem::from_sorted(
            self.lines.iter().map(|l| space.image(m, aut_power, l)).collect(),
        )
    }
}

/// An equidimensional family of subspaces, stored sorted without repeats.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RSet {
    k: usize,
    members: Vec<Subspace>,
}

impl RSet {
    pub fn new(k: usize, members: impl IntoIterator<Item = Subspace>) -> Result<RSet> {
        let members: BTreeSet<Subspace> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|s| s.dim() != k) {
            return Err(Error::DimensionMismatch(k, bad.dim()));
        }
        Ok(RSet { k, members: members.into_iter().collect() })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.members.binary_search(s).is_ok()
    }

    pub fn is_subset(&self, other: &RSet) -> bool {
        self.members.iter().all(|s| other.contains(s))
    }

    pub fn union(&self, extra: impl IntoIterator<Item = Subspace>) -> RSet {
        RSet::new(self.k, self.members.iter().cloned().chain(extra)).expect("same dimension")
    }
}

/// Members together with the whole space, closed under pairwise
/// intersection, zero excluded. Sorted by dimension, then canonical form.
pub fn meet_closure(space: &Space, members: &[Subspace]) -> Vec<Subspace> {
    bounded_meet_closure(space, members, usize::MAX).expect("unbounded")
}

/// As [`meet_closure`], giving up once the closure exceeds `cap` elements.
fn bounded_meet_closure(space: &Space, members: &[Subspace], cap: usize) -> Option<Vec<Subspace>> {
    let mut seen: HashSet<Subspace> = HashSet::new();
    let mut items: Vec<Subspace> = Vec::new();
    for s in members.iter().filter(|s| !s.is_zero()).chain(std::iter::once(&space.full())) {
        if seen.insert(s.clone()) {
            items.push(s.clone());
        }
    }
    // each unordered pair is met once: item i against every earlier item
    let mut i = 1;
    while i < items.len() {
        for j in 0..i {
            let m = space.meet(&items[i], &items[j]);
            if !m.is_zero() && seen.insert(m.clone()) {
                items.push(m);
                if items.len() > cap {
                    return None;
                }
            }
        }
        i += 1;
    }
    items.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
    Some(items)
}

/// Certificate recognizer. Each closure element `X` receives a piece that
/// complements the sum of the pieces below it; the family is coordinatizable
/// iff the piece dimensions add up to `n`. Returns a system assembled from
/// line decompositions of the pieces.
pub fn find_associated_basis(space: &Space, members: &[Subspace]) -> Option<CoordinateSystem> {
    // coordinate subspaces of one frame number 2^n - 1 without zero
    let cap = 1usize.checked_shl(space.n() as u32).map_or(usize::MAX, |c| c - 1);
    let closure = bounded_meet_closure(space, members, cap)?;
    let mut pieces: Vec<Subspace> = Vec::with_capacity(closure.len());
    let mut total = 0;
    for (i, x) in closure.iter().enumerate() {
        let below: Vec<&Subspace> = (0..i)
            .filter(|&j| closure[j].dim() < x.dim() && space.contains(x, &closure[j]))
            .map(|j| &pieces[j])
            .collect();
        let under = space.join_all(below);
        let piece = space
            .complement_within(&under, x)
            .expect("pieces of subelements lie inside the element");
        total += piece.dim();
        if total > space.n() {
            return None;
        }
        pieces.push(piece);
    }
    if total != space.n() {
        return None;
    }
    let lines: Vec<Subspace> = pieces
        .iter()
        .flat_map(|p| p.basis_rows().map(|r| space.span(&[r])).collect::<Vec<_>>())
        .collect();
    let system = CoordinateSystem::new(space, lines).ok()?;
    members
        .iter()
        .filter(|m| !m.is_zero())
        .all(|m| system.is_coordinate(space, m))
        .then_some(system)
}

pub fn is_rset(space: &Space, members: &[Subspace]) -> bool {
    find_associated_basis(space, members).is_some()
}

/// Every coordinate system for which all `members` are coordinate planes,
/// each exactly once. For an equidimensional family of k-planes with
/// `0 < k < n` these are the maximal R-sets containing it.
pub fn compatible_frames(
    space: &Space,
    members: &[Subspace],
    budget: &Budget,
) -> Result<Vec<CoordinateSystem>> {
    let q = space.field().q();
    if !Budget::fits(budget.frame_bits, q, space.n()) {
        return Err(Error::Budget(format!(
            "frame enumeration over F_{q}^{} exceeds 2^{} vectors",
            space.n(),
            budget.frame_bits
        )));
    }
    let closure = meet_closure(space, members);
    let candidates: Vec<Vec<Subspace>> = closure.iter().map(|x| space.lines_in(x)).collect();
    let mut search = FrameSearch {
        space,
        closure: &closure,
        candidates: &candidates,
        chosen: Vec::new(),
        out: Vec::new(),
        cap: budget.max_frames,
    };
    search.element(0, space.zero())?;
    let mut out = search.out;
    out.sort();
    Ok(out)
}

struct FrameSearch<'a> {
    space: &'a Space,
    closure: &'a [Subspace],
    candidates: &'a [Vec<Subspace>],
    chosen: Vec<Subspace>,
    out: Vec<CoordinateSystem>,
    cap: usize,
}

impl FrameSearch<'_> {
    fn element(&mut self, t: usize, span: Subspace) -> Result<()> {
        if t == self.closure.len() {
            if self.out.len() >= self.cap {
                return Err(Error::Budget(format!("more than {} compatible frames", self.cap)));
            }
            self.out.push(CoordinateSystem::from_sorted(self.chosen.clone()));
            return Ok(());
        }
        let x = &self.closure[t];
        let present = self.chosen.iter().filter(|l| self.space.contains(x, l)).count();
        if present > x.dim() {
            return Ok(());
        }
        self.extend(t, x.dim() - present, 0, span)
    }

    /// Choose `need` further lines of element `t`, in increasing candidate
    /// order, each independent of everything chosen so far.
    fn extend(&mut self, t: usize, need: usize, from: usize, span: Subspace) -> Result<()> {
        if need == 0 {
            return self.element(t + 1, span);
        }
        let cands = &self.candidates[t];
        for i in from..cands.len() {
            if cands.len() - i < need {
                break;
            }
            let line = &cands[i];
            if span.contains_vector(self.space.field(), self.space.line_vector(line)) {
                continue;
            }
            let grown = self.space.join(&span, line);
            self.chosen.push(line.clone());
            let r = self.extend(t, need - 1, i + 1, grown);
            self.chosen.pop();
            r?;
        }
        Ok(())
    }
}

/// Maximal R-sets of G_k containing `r`, each given by its coordinate system.
pub fn maximal_rsets_containing(
    space: &Space,
    r: &RSet,
    budget: &Budget,
) -> Result<Vec<CoordinateSystem>> {
    check_k(space, r.k())?;
    compatible_frames(space, r.members(), budget)
}

fn check_k(space: &Space, k: usize) -> Result<()> {
    if k == 0 || k >= space.n() {
        return Err(Error::OutOfRange(format!("need 0 < k < n, got k = {k}, n = {}", space.n())));
    }
    Ok(())
}

pub fn is_exact(space: &Space, r: &RSet, budget: &Budget) -> Result<bool> {
    let frames = maximal_rsets_containing(space, r, budget)?;
    if frames.is_empty() {
        return Err(Error::Precondition("not an R-set".into()));
    }
    Ok(frames.len() == 1)
}

/// An exact superset of minimal size found by [`degree_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalSuperset {
    pub added: Vec<Subspace>,
    pub system: CoordinateSystem,
}

#[derive(Debug, Clone)]
pub struct DegreeSearch {
    pub degree: usize,
    pub frames: Vec<CoordinateSystem>,
    /// Every exact superset with `degree` added planes.
    pub minimal_supersets: Vec<MinimalSuperset>,
}

/// Breadth-first search for the smallest exact supersets of `r`. Additions
/// are drawn from the coordinate planes of frames compatible with `r`: an
/// exact superset has a unique frame, and that frame also contains `r`.
pub fn degree_search(space: &Space, r: &RSet, budget: &Budget) -> Result<DegreeSearch> {
    let k = r.k();
    let frames = maximal_rsets_containing(space, r, budget)?;
    if frames.is_empty() {
        return Err(Error::Precondition("not an R-set".into()));
    }
    let mut ids: HashMap<Subspace, u32> = HashMap::new();
    let mut planes_by_id: Vec<Subspace> = Vec::new();
    let mut frame_planes: Vec<Vec<u32>> = Vec::with_capacity(frames.len());
    for f in &frames {
        let mut v: Vec<u32> = f
            .planes(space, k)
            .into_iter()
            .map(|p| {
                *ids.entry(p.clone()).or_insert_with(|| {
                    planes_by_id.push(p);
                    (planes_by_id.len() - 1) as u32
                })
            })
            .collect();
        v.sort_unstable();
        frame_planes.push(v);
    }
    let base: HashSet<u32> = r.members().iter().filter_map(|m| ids.get(m).copied()).collect();
    let extra: Vec<Vec<u32>> = frame_planes
        .iter()
        .map(|ps| ps.iter().copied().filter(|p| !base.contains(p)).collect())
        .collect();

    for d in 0..=budget.max_added {
        let mut found = Vec::new();
        for (fi, cands) in extra.iter().enumerate() {
            if cands.len() < d {
                continue;
            }
            for combo in combinations(cands.len(), d) {
                let added: Vec<u32> = combo.iter().map(|&i| cands[i]).collect();
                let unique = frame_planes.iter().enumerate().all(|(gi, ps)| {
                    gi == fi || !added.iter().all(|a| ps.binary_search(a).is_ok())
                });
                if unique {
                    found.push(MinimalSuperset {
                        added: added.iter().map(|&a| planes_by_id[a as usize].clone()).collect(),
                        system: frames[fi].clone(),
                    });
                }
            }
        }
        if !found.is_empty() {
            return Ok(DegreeSearch { degree: d, frames, minimal_supersets: found });
        }
    }
    Err(Error::Budget(format!(
        "no exact superset within {} added planes",
        budget.max_added
    )))
}

pub fn degree_of_inexactness(space: &Space, r: &RSet, budget: &Budget) -> Result<usize> {
    degree_search(space, r, budget).map(|d| d.degree)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileEntry {
    pub line: Subspace,
    /// Intersection of the members containing the line.
    pub s: Option<Subspace>,
    pub n_i: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RSetProfile {
    pub system: CoordinateSystem,
    pub entries: Vec<ProfileEntry>,
    pub n_count: usize,
}

/// Line profile of `r` relative to a fixed coordinate system.
pub fn profile_against(space: &Space, system: &CoordinateSystem, r: &RSet) -> RSetProfile {
    let entries: Vec<ProfileEntry> = system
        .lines()
        .iter()
        .map(|line| {
            let mut s: Option<Subspace> = None;
            for m in r.members().iter().filter(|m| space.contains(m, line)) {
                s = Some(match s {
                    None => m.clone(),
                    Some(acc) => space.meet(&acc, m),
                });
            }
            let n_i = s.as_ref().map_or(0, |s| s.dim());
            ProfileEntry { line: line.clone(), s, n_i }
        })
        .collect();
    let n_count = entries.iter().filter(|e| e.n_i == 1).count();
    RSetProfile { system: system.clone(), entries, n_count }
}

/// Profile of `r` relative to the unique frame above a minimal exact
/// superset `rdd`.
pub fn rset_profile(space: &Space, r: &RSet, rdd: &RSet, budget: &Budget) -> Result<RSetProfile> {
    if !r.is_subset(rdd) {
        return Err(Error::Precondition("R is not contained in R''".into()));
    }
    let frames = maximal_rsets_containing(space, rdd, budget)?;
    if frames.len() != 1 {
        return Err(Error::Precondition(format!(
            "R'' must be exact, found {} maximal R-sets above it",
            frames.len()
        )));
    }
    let deg = degree_of_inexactness(space, r, budget)?;
    if rdd.len() - r.len() != deg {
        return Err(Error::Precondition(format!(
            "|R''| - |R| = {} but deg(R) = {deg}",
            rdd.len() - r.len()
        )));
    }
    Ok(profile_against(space, &frames[0], r))
}

/// k-dimensional coordinate planes incident to the coordinate plane `s`:
/// containing it when `dim s < k`, inside it when `dim s > k`, and `{s}`
/// itself when the dimensions agree.
pub fn incidence_set(
    space: &Space,
    system: &CoordinateSystem,
    k: usize,
    s: &Subspace,
) -> Result<RSet> {
    let idx = system
        .coordinate_indices(space, s)
        .ok_or_else(|| Error::Precondition("S is not a coordinate plane of the system".into()))?;
    let planes = combinations(system.n(), k)
        .into_iter()
        .filter(|c| {
            if idx.len() <= k {
                idx.iter().all(|i| c.contains(i))
            } else {
                c.iter().all(|i| idx.contains(i))
            }
        })
        .map(|c| system.plane(space, &c));
    RSet::new(k, planes)
}

/// `R(L_j)`: the planes through line `j`. Requires `k >= n - k`.
pub fn example_2_1(space: &Space, system: &CoordinateSystem, k: usize, j: usize) -> Result<RSet> {
    check_k(space, k)?;
    let n = space.n();
    if k < n - k {
        return Err(Error::Precondition(format!("needs k >= n - k, got n = {n}, k = {k}")));
    }
    let line = system.lines().get(j).ok_or_else(|| Error::OutOfRange(format!("line {j}")))?;
    incidence_set(space, system, k, line)
}

/// `R(S)` for a coordinate hyperplane `S`. Requires `k <= n - k`.
pub fn example_2_2(
    space: &Space,
    system: &CoordinateSystem,
    k: usize,
    s: &Subspace,
) -> Result<RSet> {
    check_k(space, k)?;
    let n = space.n();
    if k > n - k {
        return Err(Error::Precondition(format!("needs k <= n - k, got n = {n}, k = {k}")));
    }
    if s.dim() != n - 1 {
        return Err(Error::DimensionMismatch(n - 1, s.dim()));
    }
    incidence_set(space, system, k, s)
}

/// `R(S) ∪ R(S')` with `S` a coordinate hyperplane and `S'` a coordinate
/// 2-plane not inside `S`. Requires `1 < k < n - 1`.
pub fn example_2_3(
    space: &Space,
    system: &CoordinateSystem,
    k: usize,
    s: &Subspace,
    s2: &Subspace,
) -> Result<RSet> {
    let n = space.n();
    if !(1 < k && k + 1 < n) {
        return Err(Error::Precondition(format!("needs 1 < k < n - 1, got n = {n}, k = {k}")));
    }
    if s.dim() != n - 1 {
        return Err(Error::DimensionMismatch(n - 1, s.dim()));
    }
    if s2.dim() != 2 {
        return Err(Error::DimensionMismatch(2, s2.dim()));
    }
    if space.contains(s, s2) {
        return Err(Error::Precondition("S' must not lie in S".into()));
    }
    let a = incidence_set(space, system, k, s)?;
    let b = incidence_set(space, system, k, s2)?;
    Ok(a.union(b.members().iter().cloned()))
}

/// `C(n-1, k) + C(n-2, k-2)` for `1 < k < n - 1`.
pub fn s_n_k(n: usize, k: usize) -> Result<u64> {
    if !(1 < k && k + 1 < n) {
        return Err(Error::OutOfRange(format!("needs 1 < k < n - 1, got n = {n}, k = {k}")));
    }
    Ok(binomial(n - 1, k) + binomial(n - 2, k - 2))
}

/// Shapes inside the standard frame, as bitmasks over its k-planes.
struct FrameShapes {
    /// Line set of each k-plane of the frame.
    plane_lines: Vec<u32>,
}

impl FrameShapes {
    fn new(n: usize, k: usize) -> FrameShapes {
        let plane_lines = combinations(n, k)
            .iter()
            .map(|c| c.iter().fold(0u32, |m, &i| m | (1 << i)))
            .collect();
        FrameShapes { plane_lines }
    }

    fn select(&self, pred: impl Fn(u32) -> bool) -> u64 {
        self.plane_lines
            .iter()
            .enumerate()
            .filter(|(_, &l)| pred(l))
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }

    /// All `R(L_j)`.
    fn example_2_1(&self, n: usize) -> Vec<u64> {
        (0..n).map(|j| self.select(|l| l & (1 << j) != 0)).collect()
    }

    /// All `R(S)` with `S` the hyperplane missing line `i`.
    fn example_2_2(&self, n: usize) -> Vec<u64> {
        (0..n).map(|i| self.select(|l| l & (1 << i) == 0)).collect()
    }

    fn example_2_3(&self, n: usize) -> Vec<u64> {
        let mut out = Vec::new();
        for i in 0..n {
            let hyper = self.select(|l| l & (1 << i) == 0);
            for j in (0..n).filter(|&j| j != i) {
                let pair = (1u32 << i) | (1 << j);
                out.push(hyper | self.select(|l| l & pair == pair));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

struct SweepItem {
    mask: u64,
    size: usize,
    search: DegreeSearch,
    n_counts: BTreeSet<usize>,
    exact_profile_ok: bool,
}

/// Degree searches for every subset of the standard frame's k-planes with at
/// least `min_size` members, in subset-rank order.
fn sweep(space: &Space, k: usize, min_size: usize, budget: &Budget) -> Result<Vec<SweepItem>> {
    let frame = CoordinateSystem::standard(space);
    let planes = frame.planes(space, k);
    if planes.len() > 24 {
        return Err(Error::Budget(format!("2^{} subsets is too many to sweep", planes.len())));
    }
    let n = space.n();
    let masks: Vec<u64> = (0u64..(1 << planes.len()))
        .filter(|m| m.count_ones() as usize >= min_size)
        .collect();
    masks
        .par_iter()
        .map(|&mask| {
            let members = (0..planes.len()).filter(|i| mask & (1 << i) != 0).map(|i| planes[i].clone());
            let r = RSet::new(k, members)?;
            let search = degree_search(space, &r, budget)?;
            let mut n_counts = BTreeSet::new();
            let mut exact_profile_ok = true;
            for sup in &search.minimal_supersets {
                let prof = profile_against(space, &sup.system, &r);
                n_counts.insert(prof.n_count);
                if (search.degree == 0) != (prof.n_count == n) {
                    exact_profile_ok = false;
                }
            }
            Ok(SweepItem { mask, size: r.len(), search, n_counts, exact_profile_ok })
        })
        .collect()
}

fn mask_planes(space: &Space, k: usize, mask: u64) -> Vec<Vec<Vec<u8>>> {
    let planes = CoordinateSystem::standard(space).planes(space, k);
    (0..planes.len())
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| planes[i].to_rows())
        .collect()
}

fn check_middle(space: &Space, k: usize) -> Result<()> {
    let n = space.n();
    if !(1 < k && k + 1 < n) {
        return Err(Error::OutOfRange(format!("needs 1 < k < n - 1, got n = {n}, k = {k}")));
    }
    Ok(())
}

fn profile_checks(report: &mut Report, space: &Space, k: usize, item: &SweepItem) {
    if item.n_counts.len() > 1 {
        report.fail(
            Counterexample::new(
                "n_count_not_well_defined",
                format!("n(R') takes values {:?} across minimal exact supersets", item.n_counts),
            )
            .with_subspaces(mask_planes(space, k, item.mask)),
        );
    }
    if !item.exact_profile_ok {
        report.fail(
            Counterexample::new("exact_iff_n_count", "exactness disagrees with n(R') = n")
                .with_subspaces(mask_planes(space, k, item.mask)),
        );
    }
}

/// Sweep every R' inside the standard frame with at least the case
/// threshold of members, checking `deg <= 2` and that `deg = 2` happens
/// exactly on the matching Example 2.1 / 2.2 classes.
pub fn verify_theorem_2_1(space: &Space, k: usize, budget: &Budget) -> Result<Report> {
    let started = Instant::now();
    check_middle(space, k)?;
    let n = space.n();
    let shapes = FrameShapes::new(n, k);
    let (case, threshold, extremal): (&str, u64, Vec<u64>) = if n - k < k {
        ("i", binomial(n - 1, k - 1), shapes.example_2_1(n))
    } else if k < n - k {
        ("ii", binomial(n - 1, k), shapes.example_2_2(n))
    } else {
        let mut both = shapes.example_2_1(n);
        both.extend(shapes.example_2_2(n));
        ("iii", binomial(n - 1, k), both)
    };
    let items = sweep(space, k, threshold as usize, budget)?;
    let mut report = Report::new("theorem_2_1", Params::new(space.field(), n, k));
    report.detail("case", case);
    report.detail("threshold", threshold);
    report.detail("subsets_checked", items.len() as u64);
    let mut n_count_checked = 0u64;
    for item in &items {
        let deg = item.search.degree;
        report.count_degree(deg);
        n_count_checked += item.search.minimal_supersets.len() as u64;
        let expected_two = extremal.contains(&item.mask);
        if deg > 2 {
            report.fail(
                Counterexample::new("degree_above_bound", format!("|R'| = {}, deg = {deg}", item.size))
                    .with_subspaces(mask_planes(space, k, item.mask)),
            );
        } else if (deg == 2) != expected_two {
            report.fail(
                Counterexample::new(
                    "equality_case_mismatch",
                    format!("|R'| = {}, deg = {deg}, example shape = {expected_two}", item.size),
                )
                .with_subspaces(mask_planes(space, k, item.mask)),
            );
        }
        profile_checks(&mut report, space, k, item);
    }
    report.detail("minimal_supersets_profiled", n_count_checked);
    Ok(report.finish(started))
}

/// Sweep every R' inside the standard frame with at least `s^n_k` members:
/// more than `s^n_k` forces exactness, and at `s^n_k` the degree is at most
/// one with equality exactly on the Example 2.3 shapes.
pub fn verify_theorem_2_3(space: &Space, k: usize, budget: &Budget) -> Result<Report> {
    let started = Instant::now();
    check_middle(space, k)?;
    let n = space.n();
    let s = s_n_k(n, k)?;
    let shapes = FrameShapes::new(n, k).example_2_3(n);
    let items = sweep(space, k, s as usize, budget)?;
    let mut report = Report::new("theorem_2_3", Params::new(space.field(), n, k));
    report.detail("threshold", s);
    report.detail("subsets_checked", items.len() as u64);
    report.detail("example_2_3_shapes", shapes.len() as u64);
    for item in &items {
        let deg = item.search.degree;
        report.count_degree(deg);
        let shape = shapes.contains(&item.mask);
        if item.size as u64 > s && deg != 0 {
            report.fail(
                Counterexample::new("not_exact_above_threshold", format!("|R'| = {}, deg = {deg}", item.size))
                    .with_subspaces(mask_planes(space, k, item.mask)),
            );
        } else if deg > 1 {
            report.fail(
                Counterexample::new("degree_above_bound", format!("|R'| = {}, deg = {deg}", item.size))
                    .with_subspaces(mask_planes(space, k, item.mask)),
            );
        } else if (deg == 1) != shape {
            report.fail(
                Counterexample::new(
                    "equality_case_mismatch",
                    format!("|R'| = {}, deg = {deg}, example 2.3 shape = {shape}", item.size),
                )
                .with_subspaces(mask_planes(space, k, item.mask)),
            );
        }
        profile_checks(&mut report, space, k, item);
    }
    Ok(report.finish(started))
}
