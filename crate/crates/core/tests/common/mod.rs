//! Brute-force reference implementations over prime fields. Subspaces are
//! represented by the sorted list of all their vectors, so nothing here
//! shares code with the library's echelon-form arithmetic.

#![allow(dead_code)]

use std::collections::BTreeSet;

use grassmann::{Space, Subspace};

pub type VecSet = Vec<u32>;

pub struct Oracle {
    pub p: u32,
    pub n: usize,
    pub size: u32,
    sum: Vec<u32>,
    lines: Vec<VecSet>,
    frames: Vec<Vec<usize>>,
    coords: Vec<Vec<VecSet>>,
}

impl Oracle {
    pub fn new(p: u32, n: usize) -> Oracle {
        let size = p.pow(n as u32);
        let mut o = Oracle { p, n, size, sum: Vec::new(), lines: Vec::new(), frames: Vec::new(), coords: Vec::new() };
        o.sum = (0..size * size).map(|t| o.add_digits(t / size, t % size)).collect();
        let mut seen = BTreeSet::new();
        for v in 1..size {
            let l = o.span(&[v]);
            if seen.insert(l.clone()) {
                o.lines.push(l);
            }
        }
        o.lines.sort();
        let m = o.lines.len();
        let mut frames = Vec::new();
        let mut pick = Vec::new();
        o.collect_frames(0, m, &mut pick, &mut frames);
        o.coords = frames.iter().map(|f| o.coordinate_subspaces(f)).collect();
        o.frames = frames;
        o
    }

    fn collect_frames(&self, start: usize, m: usize, pick: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pick.len() == self.n {
            out.push(pick.clone());
            return;
        }
        for i in start..m {
            pick.push(i);
            let gens: Vec<u32> = pick.iter().map(|&j| self.lines[j][1]).collect();
            if self.span(&gens).len() == (self.p as usize).pow(pick.len() as u32) {
                self.collect_frames(i + 1, m, pick, out);
            }
            pick.pop();
        }
    }

    pub fn encode(&self, v: &[u8]) -> u32 {
        v.iter().rev().fold(0, |acc, &x| acc * self.p + x as u32)
    }

    pub fn decode(&self, mut x: u32) -> Vec<u32> {
        (0..self.n)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        self.sum[(a * self.size + b) as usize]
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let (va, vb) = (self.decode(a), self.decode(b));
        va.iter().zip(&vb).rev().fold(0, |acc, (x, y)| acc * self.p + (x + y) % self.p)
    }

    /// All vectors in the span, by closing under addition (scalar multiples
    /// of a vector over a prime field are repeated sums).
    pub fn span(&self, gens: &[u32]) -> VecSet {
        let mut set: BTreeSet<u32> = BTreeSet::from([0]);
        for &g in gens {
            let current: Vec<u32> = set.iter().copied().collect();
            let mut mult = g;
            for _ in 1..self.p {
                for &c in &current {
                    set.insert(self.add(c, mult));
                }
                mult = self.add(mult, g);
            }
        }
        set.into_iter().collect()
    }

    pub fn dim(&self, s: &VecSet) -> usize {
        let mut d = 0;
        let mut size = 1;
        while size < s.len() {
            size *= self.p as usize;
            d += 1;
        }
        d
    }

    pub fn vectors_of(&self, s: &Subspace) -> VecSet {
        let gens: Vec<u32> = s.basis_rows().map(|r| self.encode(r)).collect();
        self.span(&gens)
    }

    pub fn lines(&self) -> &[VecSet] {
        &self.lines
    }

    pub fn frames(&self) -> &[Vec<usize>] {
        &self.frames
    }

    /// Every coordinate subspace of the frame, of every dimension, sorted.
    pub fn coordinate_subspaces(&self, frame: &[usize]) -> Vec<VecSet> {
        let reps: Vec<u32> = frame.iter().map(|&i| self.lines[i][1]).collect();
        let mut out: Vec<VecSet> = (0u32..1 << self.n)
            .map(|mask| {
                let gens: Vec<u32> = (0..self.n).filter(|b| mask >> b & 1 == 1).map(|b| reps[b]).collect();
                self.span(&gens)
            })
            .collect();
        out.sort();
        out
    }

    /// Frames in which every member is a coordinate subspace.
    pub fn compatible(&self, members: &[VecSet]) -> Vec<usize> {
        (0..self.frames.len())
            .filter(|&i| members.iter().all(|m| self.coords[i].binary_search(m).is_ok()))
            .collect()
    }

    pub fn is_rset(&self, members: &[VecSet]) -> bool {
        self.coords.iter().any(|c| members.iter().all(|m| c.binary_search(m).is_ok()))
    }

    pub fn k_planes(&self, frame_idx: usize, k: usize) -> Vec<VecSet> {
        self.coords[frame_idx].iter().filter(|s| self.dim(s) == k).cloned().collect()
    }

    /// Smallest number of k-planes whose addition leaves a single
    /// compatible frame, by exhaustive search.
    pub fn degree(&self, members: &[VecSet], k: usize, cap: usize) -> Option<usize> {
        let frames = self.compatible(members);
        if frames.is_empty() {
            return None;
        }
        let plane_sets: Vec<BTreeSet<VecSet>> =
            frames.iter().map(|&f| self.k_planes(f, k).into_iter().collect()).collect();
        for d in 0..=cap {
            for (fi, planes) in plane_sets.iter().enumerate() {
                let extra: Vec<&VecSet> = planes.iter().filter(|p| !members.contains(p)).collect();
                let mut found = false;
                for_each_subset(extra.len(), d, &mut |idx| {
                    if found {
                        return;
                    }
                    let added: Vec<&VecSet> = idx.iter().map(|&i| extra[i]).collect();
                    let others = plane_sets
                        .iter()
                        .enumerate()
                        .any(|(gi, g)| gi != fi && added.iter().all(|a| g.contains(*a)));
                    if !others {
                        found = true;
                    }
                });
                if found {
                    return Some(d);
                }
            }
        }
        None
    }
}

pub fn for_each_subset(m: usize, d: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, m: usize, d: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == d {
            f(cur);
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, d, cur, f);
            cur.pop();
        }
    }
    go(0, m, d, &mut Vec::new(), f)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `|GL(n, q)|`.
pub fn gl_order(n: u32, q: u64) -> u64 {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

/// `|SL(n, q)| = q^{n(n-1)/2} ∏_{i=2}^{n} (q^i - 1)`.
pub fn sl_order(n: u32, q: u64) -> u64 {
    q.pow(n * (n - 1) / 2) * (2..=n).map(|i| q.pow(i) - 1).product::<u64>()
}

/// Number of unordered bases of lines: `|GL(n, q)| / ((q - 1)^n n!)`.
pub fn frame_count(n: u32, q: u64) -> u64 {
    gl_order(n, q) / ((q - 1).pow(n) * (1..=n as u64).product::<u64>())
}

pub fn to_sets(o: &Oracle, members: &[Subspace]) -> Vec<VecSet> {
    members.iter().map(|m| o.vectors_of(m)).collect()
}

/// All k-subspaces of the space, via the library enumeration.
pub fn planes(space: &Space, k: usize) -> Vec<Subspace> {
    space.enumerate_grassmannian(k, &grassmann::Budget::default()).unwrap().planes().to_vec()
}
