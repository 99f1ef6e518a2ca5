//! Involutions of odd-characteristic spaces, their eigensplits as
//! complementary pairs, commutativity versus R-sets, transvection
//! adjacency, and the group generated by involutions of one signature.

use std::collections::{HashSet, VecDeque};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::maps::{random_invertible, Mode, SemilinearMap, SesquilinearForm};
use crate::matrix::Matrix;
use crate::report::{Counterexample, Params, Report};
use crate::rset::{compatible_frames, is_rset, CoordinateSystem};
use crate::subspace::{combinations, GrassmannianIndex, Space, Subspace};

/// `(U, S)` with `U + S = V`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplementaryPair {
    u: Subspace,
    s: Subspace,
}

impl ComplementaryPair {
    pub fn new(space: &Space, u: Subspace, s: Subspace) -> Result<ComplementaryPair> {
        for x in [&u, &s] {
            if x.ambient() != space.n() {
                return Err(Error::AmbientMismatch(space.n(), x.ambient()));
            }
        }
        if u.dim() + s.dim() != space.n() || space.join(&u, &s).dim() != space.n() {
            return Err(Error::NotComplementary);
        }
        Ok(ComplementaryPair { u, s })
    }

    pub fn u(&self) -> &Subspace {
        &self.u
    }

    pub fn s(&self) -> &Subspace {
        &self.s
    }

    pub fn k(&self) -> usize {
        self.u.dim()
    }

    pub fn swapped(&self) -> ComplementaryPair {
        ComplementaryPair { u: self.s.clone(), s: self.u.clone() }
    }
}

/// Square matrix with `σ² = 1`, with its `+1` and `-1` eigenspaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Involution {
    matrix: Matrix,
    pair: ComplementaryPair,
}

impl Involution {
    pub fn new(space: &Space, matrix: Matrix) -> Result<Involution> {
        let f = space.field();
        if f.p() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        let n = space.n();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch(n, matrix.rows()));
        }
        if !matrix.mul(f, &matrix).is_identity() {
            return Err(Error::NotInvolution("square is not the identity".into()));
        }
        let id = Matrix::identity(n);
        let plus = space.from_matrix(matrix.sub(f, &id).kernel(f));
        let minus = space.from_matrix(matrix.add(f, &id).kernel(f));
        let pair = ComplementaryPair::new(space, plus, minus)?;
        Ok(Involution { matrix, pair })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn plus(&self) -> &Subspace {
        &self.pair.u
    }

    pub fn minus(&self) -> &Subspace {
        &self.pair.s
    }

    /// Dimension of the `+1` eigenspace.
    pub fn k(&self) -> usize {
        self.pair.k()
    }

    pub fn eigensplit(&self) -> &ComplementaryPair {
        &self.pair
    }
}

pub fn eigensplit(sigma: &Involution) -> ComplementaryPair {
    sigma.pair.clone()
}

/// The involution acting as `+1` on `U` and `-1` on `S`.
pub fn involution_from_pair(space: &Space, pair: &ComplementaryPair) -> Result<Involution> {
    let f = space.field();
    if f.p() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let cols: Vec<Vec<u8>> = pair.u.basis_rows().chain(pair.s.basis_rows()).map(<[u8]>::to_vec).collect();
    let p = Matrix::from_columns(space.n(), &cols);
    let p_inv = p.inverse(f).map_err(|_| Error::NotComplementary)?;
    let minus_one = f.neg(1);
    let diag: Vec<u8> = (0..space.n()).map(|i| if i < pair.k() { 1 } else { minus_one }).collect();
    let matrix = p.mul(f, &Matrix::diagonal(&diag)).mul(f, &p_inv);
    Ok(Involution { matrix, pair: pair.clone() })
}

pub fn commutes(space: &Space, a: &Involution, b: &Involution) -> bool {
    let f = space.field();
    a.matrix.mul(f, &b.matrix) == b.matrix.mul(f, &a.matrix)
}

/// All complementary pairs `(U, S)` with `dim U = k`, ordered by `U` then `S`.
pub fn all_pairs(space: &Space, k: usize, budget: &Budget) -> Result<Vec<ComplementaryPair>> {
    let gu = GrassmannianIndex::new(space, k, budget)?;
    let gs = GrassmannianIndex::new(space, space.n() - k, budget)?;
    Ok(gu
        .planes()
        .par_iter()
        .flat_map_iter(|u| {
            gs.planes()
                .iter()
                .filter(|s| space.join(u, s).dim() == space.n())
                .map(|s| ComplementaryPair { u: u.clone(), s: s.clone() })
                .collect::<Vec<_>>()
        })
        .collect())
}

pub fn all_involutions(space: &Space, k: usize, budget: &Budget) -> Result<Vec<Involution>> {
    all_pairs(space, k, budget)?.iter().map(|p| involution_from_pair(space, p)).collect()
}

/// Uniform random pair: the span of the first `k` and of the remaining
/// columns of a random invertible matrix.
pub fn random_pair<R: Rng>(space: &Space, k: usize, rng: &mut R) -> ComplementaryPair {
    let m = random_invertible(space, rng).transpose();
    let rows = m.to_rows();
    ComplementaryPair { u: space.span(&rows[..k]), s: space.span(&rows[k..]) }
}

/// The pairs `(U, S)` whose members are complementary coordinate planes of
/// one frame.
pub fn frame_pairs(space: &Space, frame: &CoordinateSystem, k: usize) -> Vec<ComplementaryPair> {
    let n = space.n();
    combinations(n, k)
        .into_iter()
        .map(|c| {
            let rest: Vec<usize> = (0..n).filter(|i| !c.contains(i)).collect();
            ComplementaryPair { u: frame.plane(space, &c), s: frame.plane(space, &rest) }
        })
        .collect()
}

/// The family `{U_i} ∪ {S_i}` is an R-set.
pub fn pairs_is_rset(space: &Space, pairs: &[ComplementaryPair]) -> bool {
    let family: Vec<Subspace> = pairs.iter().flat_map(|p| [p.u.clone(), p.s.clone()]).collect();
    is_rset(space, &family)
}

fn require_odd(space: &Space) -> Result<()> {
    if space.field().p() == 2 {
        Err(Error::CharacteristicTwo)
    } else {
        Ok(())
    }
}

fn check_signature(space: &Space, k: usize) -> Result<()> {
    require_odd(space)?;
    if k == 0 || k >= space.n() {
        return Err(Error::OutOfRange(format!("k = {k} for n = {}", space.n())));
    }
    Ok(())
}

fn exhaustive_pairs(space: &Space, k: usize, budget: &Budget) -> Result<Vec<ComplementaryPair>> {
    let pairs = all_pairs(space, k, budget)?;
    if pairs.len() > budget.max_pairs {
        return Err(Error::Budget(format!(
            "{} pairs exceed the exhaustive cap of {}; use sampled mode",
            pairs.len(),
            budget.max_pairs
        )));
    }
    Ok(pairs)
}

fn pair_rows(p: &ComplementaryPair) -> Vec<Vec<Vec<u8>>> {
    vec![p.u.to_rows(), p.s.to_rows()]
}

/// Every invertible `f` commutes with every involution of signature `k`
/// exactly when it preserves both eigenspaces.
pub fn verify_lemma_3_1(space: &Space, k: usize, budget: &Budget) -> Result<Report> {
    let started = Instant::now();
    check_signature(space, k)?;
    let f = space.field();
    let n = space.n();
    let bits = (n * n) as u32;
    if !Budget::fits(budget.enumeration_bits, f.q(), n * n) {
        return Err(Error::Budget(format!("q^{bits} matrices exceed the enumeration budget")));
    }
    let group = Matrix::general_linear(f, n);
    let involutions = all_involutions(space, k, budget)?;
    let results: Vec<(usize, Option<Counterexample>)> = involutions
        .par_iter()
        .map(|sigma| {
            let mut commuting = 0;
            for g in &group {
                let c = sigma.matrix.mul(f, g) == g.mul(f, &sigma.matrix);
                let keeps = space.image(g, 0, sigma.plus()) == *sigma.plus()
                    && space.image(g, 0, sigma.minus()) == *sigma.minus();
                if c != keeps {
                    let ce = Counterexample::new(
                        "lemma_violation",
                        format!("commutes = {c}, preserves eigenspaces = {keeps}, f = {:?}", g.to_rows()),
                    )
                    .with_subspaces(pair_rows(&sigma.pair));
                    return (commuting, Some(ce));
                }
                commuting += c as usize;
            }
            (commuting, None)
        })
        .collect();
    let mut report = Report::new("lemma_3_1", Params::new(f, n, k).with_mode("exhaustive"));
    report.detail("involutions", involutions.len());
    report.detail("invertible_matrices", group.len());
    report.detail("commuting_pairs", results.iter().map(|r| r.0).sum::<usize>());
    for (_, ce) in results {
        if let Some(ce) = ce {
            report.fail(ce);
        }
    }
    Ok(report.finish(started))
}

fn check_family(
    space: &Space,
    pairs: &[ComplementaryPair],
    invs: &[&Involution],
) -> std::result::Result<bool, Counterexample> {
    let commuting = invs
        .iter()
        .enumerate()
        .all(|(i, a)| invs[i + 1..].iter().all(|b| commutes(space, a, b)));
    let rset = pairs_is_rset(space, pairs);
    if commuting == rset {
        Ok(rset)
    } else {
        Err(Counterexample::new(
            "commuting_rset_mismatch",
            format!("pairwise commuting = {commuting}, R-set = {rset}"),
        )
        .with_subspaces(pairs.iter().flat_map(pair_rows).collect()))
    }
}

/// Pairwise commuting ⟺ R-set, for families of complementary pairs.
///
/// Exhaustive mode checks every single pair and every two-element family,
/// then every clique of the commuting graph. A family that is not a clique
/// has a non-commuting couple, which is not an R-set, so no larger family
/// containing it is either.
pub fn verify_prop_3_1(space: &Space, k: usize, mode: Mode, budget: &Budget) -> Result<Report> {
    let started = Instant::now();
    check_signature(space, k)?;
    let n = space.n();
    let mut params = Params::new(space.field(), n, k).with_mode(mode.name());
    if let Mode::Sampled { seed, .. } = mode {
        params = params.with_seed(seed);
    }
    let mut report = Report::new("proposition_3_1", params);
    match mode {
        Mode::Exhaustive => {
            let pairs = exhaustive_pairs(space, k, budget)?;
            let invs: Vec<Involution> =
                pairs.iter().map(|p| involution_from_pair(space, p)).collect::<Result<_>>()?;
            let m = pairs.len();
            let adjacency: Vec<Vec<bool>> = (0..m)
                .into_par_iter()
                .map(|i| (0..m).map(|j| i != j && commutes(space, &invs[i], &invs[j])).collect())
                .collect();
            let pair_results: Vec<std::result::Result<bool, Counterexample>> = (0..m)
                .into_par_iter()
                .flat_map_iter(|i| {
                    let (pairs, invs, adjacency) = (&pairs, &invs, &adjacency);
                    (i..m).map(move |j| {
                        if i == j {
                            check_family(space, &pairs[i..=i], &[&invs[i]])
                        } else {
                            let r = pairs_is_rset(space, &[pairs[i].clone(), pairs[j].clone()]);
                            if r == adjacency[i][j] {
                                Ok(r)
                            } else {
                                check_family(space, &[pairs[i].clone(), pairs[j].clone()], &[&invs[i], &invs[j]])
                            }
                        }
                    })
                })
                .collect();
            let mut rset_pairs = 0u64;
            for r in pair_results {
                match r {
                    Ok(true) => rset_pairs += 1,
                    Ok(false) => {}
                    Err(ce) => report.fail(ce),
                }
            }
            let cliques: Vec<(u64, Vec<Counterexample>)> = (0..m)
                .into_par_iter()
                .map(|i| {
                    let mut count = 0;
                    let mut failures = Vec::new();
                    let mut clique = vec![i];
                    let cand: Vec<usize> = (i + 1..m).filter(|&j| adjacency[i][j]).collect();
                    extend_cliques(space, &pairs, &adjacency, &mut clique, &cand, &mut count, &mut failures);
                    (count, failures)
                })
                .collect();
            let mut clique_count = 0;
            for (c, failures) in cliques {
                clique_count += c;
                for ce in failures {
                    report.fail(ce);
                }
            }
            report.detail("pairs", m);
            report.detail("rset_families_of_size_at_most_two", rset_pairs);
            report.detail("cliques_of_size_at_least_three", clique_count);
        }
        Mode::Sampled { samples, seed } => {
            let frames_needed = samples;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let families: Vec<Vec<ComplementaryPair>> = (0..frames_needed)
                .map(|t| sample_family(space, k, t % 3, &mut rng))
                .collect::<Result<_>>()?;
            let outcomes: Vec<std::result::Result<bool, Counterexample>> = families
                .par_iter()
                .map(|fam| {
                    let invs: Vec<Involution> =
                        fam.iter().map(|p| involution_from_pair(space, p).expect("complementary")).collect();
                    let refs: Vec<&Involution> = invs.iter().collect();
                    check_family(space, fam, &refs)
                })
                .collect();
            let mut positive = 0u64;
            for r in outcomes {
                match r {
                    Ok(true) => positive += 1,
                    Ok(false) => {}
                    Err(ce) => report.fail(ce),
                }
            }
            report.detail("samples", samples);
            report.detail("rset_samples", positive);
            report.detail("non_rset_samples", samples as u64 - positive);
        }
    }
    Ok(report.finish(started))
}

fn extend_cliques(
    space: &Space,
    pairs: &[ComplementaryPair],
    adjacency: &[Vec<bool>],
    clique: &mut Vec<usize>,
    cand: &[usize],
    count: &mut u64,
    failures: &mut Vec<Counterexample>,
) {
    for (t, &j) in cand.iter().enumerate() {
        clique.push(j);
        let members: Vec<ComplementaryPair> = clique.iter().map(|&i| pairs[i].clone()).collect();
        let mut ok = true;
        if clique.len() >= 3 {
            *count += 1;
            if !pairs_is_rset(space, &members) {
                ok = false;
                failures.push(
                    Counterexample::new("commuting_rset_mismatch", "pairwise commuting family is not an R-set")
                        .with_subspaces(members.iter().flat_map(pair_rows).collect()),
                );
            }
        }
        if ok {
            let next: Vec<usize> = cand[t + 1..].iter().copied().filter(|&x| adjacency[j][x]).collect();
            extend_cliques(space, pairs, adjacency, clique, &next, count, failures);
        }
        clique.pop();
    }
}

/// Families of one to five pairs: uniform (`kind` 0), drawn from one random
/// frame (`kind` 1), or drawn from a frame with one member's `S` replaced
/// by another complement of its `U` (`kind` 2).
fn sample_family<R: Rng>(space: &Space, k: usize, kind: usize, rng: &mut R) -> Result<Vec<ComplementaryPair>> {
    let size = rng.gen_range(1..=5);
    if kind == 0 {
        return Ok((0..size).map(|_| random_pair(space, k, rng)).collect());
    }
    let frame = CoordinateSystem::from_matrix(space, &random_invertible(space, rng))?;
    let all = frame_pairs(space, &frame, k);
    let mut fam: Vec<ComplementaryPair> = all.choose_multiple(rng, size.min(all.len())).cloned().collect();
    if kind == 2 {
        let u = fam[0].u.clone();
        loop {
            let cand = random_pair(space, k, rng);
            let p = ComplementaryPair { u: u.clone(), s: cand.s };
            if space.join(&p.u, &p.s).dim() == space.n() {
                fam[0] = p;
                break;
            }
        }
    }
    Ok(fam)
}

/// `det g = 1` and `dim ker(1 - g) = n - 1`.
pub fn is_transvection(space: &Space, g: &Matrix) -> bool {
    let f = space.field();
    g.is_square()
        && g.determinant(f) == 1
        && Matrix::identity(g.rows()).sub(f, g).nullity(f) + 1 == g.rows()
}

/// Eigensplits share one member and differ by distance one in the other.
pub fn involutions_adjacent(space: &Space, a: &Involution, b: &Involution) -> bool {
    pairs_adjacent(space, &a.pair, &b.pair)
}

pub fn pairs_adjacent(space: &Space, a: &ComplementaryPair, b: &ComplementaryPair) -> bool {
    let adjacent = |x: &Subspace, y: &Subspace| x.dim() == y.dim() && space.meet(x, y).dim() + 1 == x.dim();
    (a.u == b.u && adjacent(&a.s, &b.s)) || (a.s == b.s && adjacent(&a.u, &b.u))
}

fn adjacency_outcome(space: &Space, a: &Involution, b: &Involution) -> std::result::Result<bool, Counterexample> {
    let adj = involutions_adjacent(space, a, b);
    let tv = is_transvection(space, &a.matrix.mul(space.field(), &b.matrix));
    if adj == tv {
        Ok(adj)
    } else {
        Err(Counterexample::new(
            "adjacency_transvection_mismatch",
            format!("adjacent = {adj}, product is a transvection = {tv}"),
        )
        .with_subspaces([pair_rows(&a.pair), pair_rows(&b.pair)].concat()))
    }
}

/// A random complement of `u` at distance one from `s`.
fn adjacent_complement<R: Rng>(space: &Space, u: &Subspace, s: &Subspace, rng: &mut R) -> Subspace {
    let f = space.field();
    let rows = s.to_rows();
    let n = space.n();
    loop {
        // a random hyperplane of s plus a random vector
        let coeffs: Vec<Vec<u8>> = (0..rows.len().saturating_sub(1))
            .map(|_| (0..rows.len()).map(|_| rng.gen_range(0..f.q()) as u8).collect())
            .collect();
        let hyper: Vec<Vec<u8>> = coeffs
            .iter()
            .map(|c| {
                (0..n)
                    .map(|col| c.iter().zip(&rows).fold(0, |acc, (&a, r)| f.add(acc, f.mul(a, r[col]))))
                    .collect()
            })
            .collect();
        let w = space.span(&hyper);
        if w.dim() + 1 != s.dim() {
            continue;
        }
        let v: Vec<u8> = (0..n).map(|_| rng.gen_range(0..f.q()) as u8).collect();
        let mut gens = hyper;
        gens.push(v);
        let cand = space.span(&gens);
        if cand.dim() == s.dim() && cand != *s && space.join(u, &cand).dim() == n {
            return cand;
        }
    }
}

/// Adjacency of involutions ⟺ their product is a transvection. Sampled mode
/// mixes uniform pairs with pairs built to be adjacent.
pub fn verify_adjacency_transvection(space: &Space, k: usize, mode: Mode, budget: &Budget) -> Result<Report> {
    let started = Instant::now();
    check_signature(space, k)?;
    let n = space.n();
    let mut params = Params::new(space.field(), n, k).with_mode(mode.name());
    if let Mode::Sampled { seed, .. } = mode {
        params = params.with_seed(seed);
    }
    let mut report = Report::new("adjacency_transvection", params);
    let outcomes: Vec<std::result::Result<bool, Counterexample>> = match mode {
        Mode::Exhaustive => {
            let invs: Vec<Involution> = exhaustive_pairs(space, k, budget)?
                .iter()
                .map(|p| involution_from_pair(space, p))
                .collect::<Result<_>>()?;
            report.detail("involutions", invs.len());
            (0..invs.len())
                .into_par_iter()
                .flat_map_iter(|i| {
                    let invs = &invs;
                    (i..invs.len()).map(move |j| adjacency_outcome(space, &invs[i], &invs[j]))
                })
                .collect()
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let couples: Vec<(ComplementaryPair, ComplementaryPair)> = (0..samples)
                .map(|t| {
                    let a = random_pair(space, k, &mut rng);
                    let b = match t % 3 {
                        0 => random_pair(space, k, &mut rng),
                        1 => ComplementaryPair {
                            u: a.u.clone(),
                            s: adjacent_complement(space, &a.u, &a.s, &mut rng),
                        },
                        _ => ComplementaryPair {
                            u: adjacent_complement(space, &a.s, &a.u, &mut rng),
                            s: a.s.clone(),
                        },
                    };
                    (a, b)
                })
                .collect();
            couples
                .par_iter()
                .map(|(a, b)| {
                    let a = involution_from_pair(space, a).expect("complementary");
                    let b = involution_from_pair(space, b).expect("complementary");
                    adjacency_outcome(space, &a, &b)
                })
                .collect()
        }
    };
    let mut adjacent = 0u64;
    let total = outcomes.len();
    for r in outcomes {
        match r {
            Ok(true) => adjacent += 1,
            Ok(false) => {}
            Err(ce) => report.fail(ce),
        }
    }
    report.detail("checked", total);
    report.detail("adjacent", adjacent);
    Ok(report.finish(started))
}

/// `σ ↦ g σ g⁻¹`.
pub fn transform_collineation(space: &Space, g: &SemilinearMap, sigma: &Involution) -> Result<Involution> {
    let f = space.field();
    let inv = g.matrix().inverse(f)?;
    let m = g.matrix().mul(f, &sigma.matrix.frobenius(f, g.aut_power())).mul(f, &inv);
    Involution::new(space, m)
}

/// The involution with eigensplit `(S^⊥, U^⊥)` for `σ` with eigensplit `(U, S)`.
pub fn transform_correlation(space: &Space, form: &SesquilinearForm, sigma: &Involution) -> Result<Involution> {
    let pair = ComplementaryPair::new(
        space,
        form.orthocomplement(space, sigma.minus()),
        form.orthocomplement(space, sigma.plus()),
    )?;
    involution_from_pair(space, &pair)
}

pub fn negate(space: &Space, sigma: &Involution) -> Involution {
    Involution { matrix: sigma.matrix.neg(space.field()), pair: sigma.pair.swapped() }
}

/// The transformation of `G_{k,k}` swapping the members of pairs in `g`
/// and fixing all other pairs.
#[derive(Debug, Clone)]
pub struct SwapOn {
    g: HashSet<ComplementaryPair>,
}

impl SwapOn {
    pub fn new(space: &Space, g: impl IntoIterator<Item = ComplementaryPair>) -> Result<SwapOn> {
        let g: HashSet<ComplementaryPair> = g.into_iter().collect();
        for p in &g {
            if 2 * p.k() != space.n() {
                return Err(Error::Precondition("swaps need dim U = dim S".into()));
            }
            if !g.contains(&p.swapped()) {
                return Err(Error::Precondition("set is not closed under swapping".into()));
            }
        }
        Ok(SwapOn { g })
    }

    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    pub fn apply(&self, p: &ComplementaryPair) -> ComplementaryPair {
        if self.g.contains(p) {
            p.swapped()
        } else {
            p.clone()
        }
    }
}

pub fn i_g(swap: &SwapOn, pair: &ComplementaryPair) -> ComplementaryPair {
    swap.apply(pair)
}

/// Image of every maximal pair R-set (the coordinate pairs of one frame)
/// is a pair R-set. `map` must be a bijection of pairs that is its own
/// inverse, so preimages are covered and an image of a maximal R-set is an
/// R-set exactly when it is again the pair set of some frame.
pub fn pair_map_is_regular(
    space: &Space,
    k: usize,
    map: impl Fn(&ComplementaryPair) -> ComplementaryPair + Sync,
    budget: &Budget,
) -> Result<(bool, usize)> {
    let frames = compatible_frames(space, &[], budget)?;
    let key = |pairs: Vec<ComplementaryPair>| {
        let mut pairs = pairs;
        pairs.sort();
        pairs
    };
    let known: HashSet<Vec<ComplementaryPair>> =
        frames.par_iter().map(|f| key(frame_pairs(space, f, k))).collect();
    let ok = frames
        .par_iter()
        .all(|frame| known.contains(&key(frame_pairs(space, frame, k).iter().map(&map).collect())));
    Ok((ok, frames.len()))
}

/// Adjacent pairs whose images under `swap` are not adjacent.
pub fn adjacency_violation(
    space: &Space,
    swap: &SwapOn,
    pairs: &[ComplementaryPair],
) -> Option<(ComplementaryPair, ComplementaryPair)> {
    let mut sources: Vec<&ComplementaryPair> = swap.g.iter().collect();
    sources.sort();
    sources.into_iter().find_map(|a| {
        pairs
            .iter()
            .find(|b| pairs_adjacent(space, a, b) && !pairs_adjacent(space, &swap.apply(a), &swap.apply(b)))
            .map(|b| (a.clone(), b.clone()))
    })
}

/// For `n = 2k`: swap on `{(U, S), (S, U)}` for two complementary coordinate
/// planes is regular, and an adjacency-violating couple is exhibited.
pub fn verify_swap_example(space: &Space, k: usize, budget: &Budget) -> Result<Report> {
    let started = Instant::now();
    check_signature(space, k)?;
    let n = space.n();
    if 2 * k != n {
        return Err(Error::Precondition("swap example needs n = 2k".into()));
    }
    let p = ComplementaryPair::new(space, space.coordinate(0..k), space.coordinate(k..n))?;
    let swap = SwapOn::new(space, [p.clone(), p.swapped()])?;
    let mut report = Report::new("swap_example", Params::new(space.field(), n, k).with_mode("exhaustive"));
    let (regular, frames) = pair_map_is_regular(space, k, |q| swap.apply(q), budget)?;
    report.detail("frames", frames);
    report.detail("regular", regular);
    report.detail("swap_set", serde_json::json!([pair_rows(&p), pair_rows(&p.swapped())]));
    if !regular {
        report.fail(Counterexample::new("not_regular", "swap image of a maximal pair R-set is not an R-set"));
    }
    let pairs = all_pairs(space, k, budget)?;
    match adjacency_violation(space, &swap, &pairs) {
        Some((a, b)) => {
            report.detail("adjacency_witness", serde_json::json!([pair_rows(&a), pair_rows(&b)]));
        }
        None => report.fail(Counterexample::new("no_witness", "swap preserves adjacency")),
    }
    Ok(report.finish(started))
}

/// Order of the group generated by all involutions with `dim U₊ = k`.
pub fn generated_group_order(space: &Space, k: usize, budget: &Budget) -> Result<usize> {
    check_signature(space, k)?;
    let f = space.field();
    let gens: Vec<Matrix> = all_involutions(space, k, budget)?.into_iter().map(|s| s.matrix).collect();
    let id = Matrix::identity(space.n());
    let mut seen: HashSet<Vec<u8>> = HashSet::from([id.data().to_vec()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in &gens {
            let prod = h.mul(f, &g);
            if !seen.contains(prod.data()) {
                if seen.len() >= budget.max_group_order {
                    return Err(Error::Budget(format!("group exceeds {} elements", budget.max_group_order)));
                }
                seen.insert(prod.data().to_vec());
                queue.push_back(prod);
            }
        }
    }
    Ok(seen.len())
}

/// `{"field": …, "matrix": [[…]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvolutionDocument {
    pub field: crate::field::FieldSpec,
    pub matrix: Vec<Vec<u64>>,
}

/// `{"U": matrix, "S": matrix}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairDocument {
    #[serde(rename = "U")]
    pub u: Vec<Vec<u64>>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<u64>>,
}

impl PairDocument {
    pub fn from_pair(p: &ComplementaryPair) -> PairDocument {
        let rows = |s: &Subspace| s.to_rows().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect();
        PairDocument { u: rows(&p.u), s: rows(&p.s) }
    }

    pub fn to_pair(&self, space: &Space) -> Result<ComplementaryPair> {
        let f = space.field();
        let u = space.from_matrix(Matrix::from_rows_checked(f, space.n(), &self.u)?);
        let s = space.from_matrix(Matrix::from_rows_checked(f, space.n(), &self.s)?);
        ComplementaryPair::new(space, u, s)
    }
}

impl InvolutionDocument {
    pub fn to_involution(&self) -> Result<(Space, Involution)> {
        let field = self.field.build()?;
        let n = self.matrix.len();
        let m = Matrix::from_rows_checked(&field, n, &self.matrix)?;
        let space = Space::new(field, n);
        let sigma = Involution::new(&space, m)?;
        Ok((space, sigma))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn f3(n: usize) -> Space {
        Space::new(Field::new(3, 1).unwrap(), n)
    }

    #[test]
    fn pair_to_diagonal() {
        let s = f3(2);
        let p = ComplementaryPair::new(&s, s.coordinate([0]), s.coordinate([1])).unwrap();
        let sigma = involution_from_pair(&s, &p).unwrap();
        assert_eq!(sigma.matrix(), &Matrix::diagonal(&[1, 2]));
        assert_eq!(Involution::new(&s, sigma.matrix().clone()).unwrap().eigensplit(), &p);
    }

    #[test]
    fn rejects_bad_inputs() {
        let s2 = Space::new(Field::new(2, 1).unwrap(), 2);
        assert_eq!(Involution::new(&s2, Matrix::identity(2)), Err(Error::CharacteristicTwo));
        let s = f3(2);
        assert!(matches!(Involution::new(&s, Matrix::diagonal(&[1, 2]).scale(s.field(), 2).add(s.field(), &Matrix::identity(2))), Err(Error::NotInvolution(_))));
        assert_eq!(
            ComplementaryPair::new(&s, s.coordinate([0]), s.coordinate([0])),
            Err(Error::NotComplementary)
        );
    }

    #[test]
    fn pi_is_bijective_small() {
        for (n, k) in [(2, 1), (3, 1)] {
            let s = f3(n);
            let pairs = all_pairs(&s, k, &Budget::default()).unwrap();
            let invs = all_involutions(&s, k, &Budget::default()).unwrap();
            let mats: HashSet<&Matrix> = invs.iter().map(Involution::matrix).collect();
            assert_eq!(mats.len(), pairs.len());
            for (p, sigma) in pairs.iter().zip(&invs) {
                assert!(sigma.matrix().mul(s.field(), sigma.matrix()).is_identity());
                assert_eq!(&Involution::new(&s, sigma.matrix().clone()).unwrap().pair, p);
            }
        }
        assert_eq!(all_pairs(&f3(4), 2, &Budget::default()).unwrap().len(), 10530);
    }

    #[test]
    fn explicit_commutation() {
        let s = f3(2);
        let p = ComplementaryPair::new(&s, s.span(&[vec![1u8, 1]]), s.coordinate([1])).unwrap();
        let a = involution_from_pair(&s, &p).unwrap();
        let b = involution_from_pair(&s, &ComplementaryPair::new(&s, s.coordinate([0]), s.coordinate([1])).unwrap()).unwrap();
        let f = s.field();
        let ab = a.matrix().mul(f, b.matrix());
        let ba = b.matrix().mul(f, a.matrix());
        assert_eq!(commutes(&s, &a, &b), ab == ba);
        assert!(!commutes(&s, &a, &b));
        assert!(!pairs_is_rset(&s, &[a.pair.clone(), b.pair.clone()]));
    }

    #[test]
    fn transvections() {
        let s = f3(3);
        assert!(!is_transvection(&s, &Matrix::identity(3)));
        let mut shear = Matrix::identity(3);
        shear.set(0, 1, 1);
        assert!(is_transvection(&s, &shear));
        assert!(!is_transvection(&f3(2), &Matrix::diagonal(&[1, 2])));
    }

    #[test]
    fn adjacent_example_in_four_space() {
        let s = f3(4);
        let u = s.coordinate([0, 1]);
        let a = ComplementaryPair::new(&s, u.clone(), s.coordinate([2, 3])).unwrap();
        let b = ComplementaryPair::new(&s, u, s.span(&[vec![1u8, 0, 1, 0], vec![0, 0, 0, 1]])).unwrap();
        let (x, y) = (involution_from_pair(&s, &a).unwrap(), involution_from_pair(&s, &b).unwrap());
        assert!(involutions_adjacent(&s, &x, &y));
        assert!(is_transvection(&s, &x.matrix().mul(s.field(), y.matrix())));
        assert!(!involutions_adjacent(&s, &x, &x));
    }

    #[test]
    fn small_verifiers_pass() {
        let b = Budget::default();
        let s = f3(2);
        assert!(verify_lemma_3_1(&s, 1, &b).unwrap().passed);
        let s3 = f3(3);
        let r = verify_prop_3_1(&s3, 1, Mode::Exhaustive, &b).unwrap();
        assert!(r.passed, "{:?}", r.counterexamples);
        let r = verify_adjacency_transvection(&s3, 1, Mode::Exhaustive, &b).unwrap();
        assert!(r.passed, "{:?}", r.counterexamples);
        let r = verify_prop_3_1(&f3(4), 2, Mode::Sampled { samples: 300, seed: 1 }, &b).unwrap();
        assert!(r.passed);
        assert!(r.details["rset_samples"].as_u64().unwrap() > 0);
        assert!(r.details["non_rset_samples"].as_u64().unwrap() > 0);
    }

    #[test]
    fn transforms() {
        let s = f3(2);
        let sigma = involution_from_pair(&s, &ComplementaryPair::new(&s, s.coordinate([0]), s.coordinate([1])).unwrap()).unwrap();
        assert_eq!(transform_collineation(&s, &SemilinearMap::identity(&s), &sigma).unwrap(), sigma);
        let neg = negate(&s, &sigma);
        assert_eq!(neg.matrix(), &Matrix::diagonal(&[2, 1]));
        assert_eq!(Involution::new(&s, neg.matrix().clone()).unwrap(), neg);
        let c = transform_correlation(&s, &SesquilinearForm::identity(&s), &sigma).unwrap();
        assert_eq!(c.plus(), &s.coordinate([0]));
    }

    #[test]
    fn swap_map_regular_and_witness() {
        let s = f3(2);
        let pairs = all_pairs(&s, 1, &Budget::default()).unwrap();
        let empty = SwapOn::new(&s, []).unwrap();
        assert!(pair_map_is_regular(&s, 1, |p| empty.apply(p), &Budget::default()).unwrap().0);
        let full = SwapOn::new(&s, pairs.clone()).unwrap();
        assert!(pair_map_is_regular(&s, 1, |p| full.apply(p), &Budget::default()).unwrap().0);
        assert!(adjacency_violation(&s, &full, &pairs).is_none());
        let p = pairs[0].clone();
        assert!(SwapOn::new(&s, [p.clone()]).is_err());
        let partial = SwapOn::new(&s, [p.clone(), p.swapped()]).unwrap();
        assert!(adjacency_violation(&s, &partial, &pairs).is_some());
    }

    #[test]
    fn group_orders_small() {
        let b = Budget::default();
        assert_eq!(generated_group_order(&f3(2), 1, &b).unwrap(), 48);
    }
}
