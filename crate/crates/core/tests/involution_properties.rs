use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use grassmann::involutions::{
    all_involutions, all_pairs, commutes, frame_pairs, involution_from_pair, negate, random_pair, transform_collineation,
    transform_correlation, ComplementaryPair, Involution,
};
use grassmann::maps::{random_invertible, SemilinearMap, SesquilinearForm};
use grassmann::rset::{compatible_frames, CoordinateSystem};
use grassmann::{Budget, Field, Matrix, Space};

fn space(p: u32, e: u32, n: usize) -> Space {
    Space::new(Field::new(p, e).unwrap(), n)
}

#[test]
fn pairs_and_involutions_correspond() {
    let b = Budget::default();
    for (n, k) in [(2, 1), (3, 1), (3, 2), (4, 2)] {
        let s = space(3, 1, n);
        let invs = all_involutions(&s, k, &b).unwrap();
        let matrices: HashSet<&Matrix> = invs.iter().map(Involution::matrix).collect();
        assert_eq!(matrices.len(), invs.len(), "n={n} k={k}");
        for sigma in &invs {
            assert!(sigma.matrix().mul(s.field(), sigma.matrix()).is_identity());
            let again = Involution::new(&s, sigma.matrix().clone()).unwrap();
            assert_eq!(again.eigensplit(), sigma.eigensplit());
            assert_eq!(again.plus().dim(), k);
        }
    }
}

#[test]
fn conjugation_moves_eigenspaces() {
    let s = space(3, 2, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for t in 0..200 {
        let pair = random_pair(&s, 1, &mut rng);
        let sigma = involution_from_pair(&s, &pair).unwrap();
        let g = SemilinearMap::new(&s, random_invertible(&s, &mut rng), t % 2).unwrap();
        let moved = transform_collineation(&s, &g, &sigma).unwrap();
        assert_eq!(moved.plus(), &g.image(&s, pair.u()));
        assert_eq!(moved.minus(), &g.image(&s, pair.s()));
    }
}

#[test]
fn transformations_preserve_commutativity() {
    let s = space(3, 1, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut commuting = 0;
    for t in 0..10_000 {
        let (a, b) = if t % 2 == 0 {
            (random_pair(&s, 2, &mut rng), random_pair(&s, 2, &mut rng))
        } else {
            let f = CoordinateSystem::from_matrix(&s, &random_invertible(&s, &mut rng)).unwrap();
            let ps = frame_pairs(&s, &f, 2);
            let a = ps[rng.gen_range(0..ps.len())].clone();
            let b = if t % 4 == 1 { ps[rng.gen_range(0..ps.len())].clone() } else { random_pair(&s, 2, &mut rng) };
            (a, b)
        };
        let (x, y) = (involution_from_pair(&s, &a).unwrap(), involution_from_pair(&s, &b).unwrap());
        let c = commutes(&s, &x, &y);
        commuting += c as usize;
        let g = SemilinearMap::linear(&s, random_invertible(&s, &mut rng)).unwrap();
        let (gx, gy) = (transform_collineation(&s, &g, &x).unwrap(), transform_collineation(&s, &g, &y).unwrap());
        assert_eq!(commutes(&s, &gx, &gy), c);
        let form = SesquilinearForm::new(&s, random_invertible(&s, &mut rng), 0).unwrap();
        let (hx, hy) = (transform_correlation(&s, &form, &x).unwrap(), transform_correlation(&s, &form, &y).unwrap());
        assert_eq!(commutes(&s, &hx, &hy), c);
        assert_eq!(hx.plus().dim(), 2);
    }
    assert!(commuting > 1_000 && commuting < 9_000);
}

#[test]
fn negation_swaps_signatures_bijectively() {
    let b = Budget::default();
    let s = space(3, 1, 3);
    let ones = all_involutions(&s, 1, &b).unwrap();
    let twos: HashSet<Involution> = all_involutions(&s, 2, &b).unwrap().into_iter().collect();
    let images: HashSet<Involution> = ones.iter().map(|x| negate(&s, x)).collect();
    assert_eq!(images, twos);
    for x in &ones {
        let n = negate(&s, x);
        assert_eq!(n.eigensplit(), &x.eigensplit().swapped());
        assert_eq!(negate(&s, &n), *x);
    }
}

#[test]
fn maximal_pair_rsets_are_swap_closed() {
    let s = space(3, 1, 4);
    let frames = compatible_frames(&s, &[], &Budget::default()).unwrap();
    assert_eq!(frames.len(), 63180);
    for f in &frames {
        let pairs: HashSet<ComplementaryPair> = frame_pairs(&s, f, 2).into_iter().collect();
        assert_eq!(pairs.len(), 6);
        assert!(pairs.iter().all(|p| pairs.contains(&p.swapped())));
    }
}

#[test]
fn fibers_by_first_and_second_member() {
    let s = space(3, 1, 4);
    let pairs = all_pairs(&s, 2, &Budget::default()).unwrap();
    assert_eq!(pairs.len(), 10530);
    let mut by_u: HashMap<_, Vec<usize>> = HashMap::new();
    let mut by_s: HashMap<_, Vec<usize>> = HashMap::new();
    for (i, p) in pairs.iter().enumerate() {
        by_u.entry(p.u().clone()).or_default().push(i);
        by_s.entry(p.s().clone()).or_default().push(i);
    }
    // every 2-plane has q^4 = 81 complements
    assert!(by_u.values().chain(by_s.values()).all(|v| v.len() == 81));
    let total: usize = by_u.values().map(Vec::len).sum();
    assert_eq!(total, pairs.len());
    for (u, xu) in &by_u {
        let xu: HashSet<usize> = xu.iter().copied().collect();
        for (t, xs) in &by_s {
            let common = xs.iter().filter(|i| xu.contains(i)).count();
            assert!(common <= 1);
            assert_eq!(common == 1, s.join(u, t).dim() == 4);
        }
    }
}
