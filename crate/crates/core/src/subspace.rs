//! Subspaces of F_q^n in canonical reduced row echelon form, the subspace
//! lattice operations, and Grassmannian enumeration.

use std::collections::HashMap;
use std::fmt;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// A subspace stored by its RREF basis. Equal subspaces have identical
/// representations, so `Eq`/`Hash` are subspace equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: u8,
    dim: u8,
    rows: Vec<u8>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.basis_rows().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            for x in r {
                write!(f, "{x}")?;
            }
        }
        write!(f, ">")
    }
}

impl Subspace {
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.n as usize
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[u8]> {
        self.rows.chunks(self.n.max(1) as usize).take(self.dim as usize)
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.basis_rows().map(|r| r.to_vec()).collect()
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_flat(self.dim(), self.ambient(), self.rows.clone())
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis_rows().map(|r| r.iter().position(|&x| x != 0).expect("RREF rows are nonzero"))
    }

    /// Reduce `v` against this basis; the result is zero iff `v` lies in the span.
    fn reduce(&self, field: &Field, v: &mut [u8]) {
        for row in self.basis_rows() {
            let pc = row.iter().position(|&x| x != 0).unwrap();
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let nc = field.neg(c);
            for (x, &r) in v.iter_mut().zip(row) {
                *x = field.add(*x, field.mul(nc, r));
            }
        }
    }

    pub fn contains_vector(&self, field: &Field, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|&x| x == 0)
    }
}

/// The ambient space F_q^n; lattice operations live here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    field: Field,
    n: usize,
}

impl Space {
    pub fn new(field: Field, n: usize) -> Space {
        assert!(n <= u8::MAX as usize);
        Space { field, n }
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> Subspace {
        Subspace { n: self.n as u8, dim: 0, rows: Vec::new() }
    }

    pub fn full(&self) -> Subspace {
        self.from_matrix(Matrix::identity(self.n))
    }

    /// `span{e_i : i in indices}`.
    pub fn coordinate(&self, indices: impl IntoIterator<Item = usize>) -> Subspace {
        let rows: Vec<Vec<u8>> = indices.into_iter().map(|i| self.unit_vector(i)).collect();
        self.span(&rows)
    }

    pub fn unit_vector(&self, i: usize) -> Vec<u8> {
        let mut v = vec![0; self.n];
        v[i] = 1;
        v
    }

    /// Canonical form of the span of `rows`, validating shape and entries.
    pub fn canonicalize(&self, rows: &[Vec<u8>]) -> Result<Subspace> {
        for r in rows {
            if r.len() != self.n {
                return Err(Error::Ragged { expected: self.n, found: r.len() });
            }
            if let Some(&bad) = r.iter().find(|&&x| x as usize >= self.field.q()) {
                return Err(Error::ElementOutOfRange { value: bad as u64, q: self.field.q() as u64 });
            }
        }
        Ok(self.span(rows))
    }

    /// Span of well-formed rows.
    pub fn span<R: AsRef<[u8]>>(&self, rows: &[R]) -> Subspace {
        let mut data = Vec::with_capacity(rows.len() * self.n);
        for r in rows {
            data.extend_from_slice(r.as_ref());
        }
        self.from_matrix(Matrix::from_flat(rows.len(), self.n, data))
    }

    pub fn from_matrix(&self, mut m: Matrix) -> Subspace {
        debug_assert_eq!(m.cols(), self.n);
        let rank = m.rref_in_place(&self.field).len();
        let rows = m.data()[..rank * self.n].to_vec();
        Subspace { n: self.n as u8, dim: rank as u8, rows }
    }

    fn check(&self, s: &Subspace) -> Result<()> {
        if s.ambient() != self.n {
            return Err(Error::AmbientMismatch(self.n, s.ambient()));
        }
        Ok(())
    }

    /// `small ⊆ big`.
    pub fn contains(&self, big: &Subspace, small: &Subspace) -> bool {
        small.dim <= big.dim && small.basis_rows().all(|r| big.contains_vector(&self.field, r))
    }

    pub fn try_contains(&self, big: &Subspace, small: &Subspace) -> Result<bool> {
        self.check(big)?;
        self.check(small)?;
        Ok(self.contains(big, small))
    }

    pub fn join(&self, a: &Subspace, b: &Subspace) -> Subspace {
        if a.dim == 0 {
            return b.clone();
        }
        if b.dim == 0 {
            return a.clone();
        }
        let mut data = a.rows.clone();
        data.extend_from_slice(&b.rows);
        self.from_matrix(Matrix::from_flat(a.dim() + b.dim(), self.n, data))
    }

    pub fn join_all<'a>(&self, items: impl IntoIterator<Item = &'a Subspace>) -> Subspace {
        let mut data = Vec::new();
        let mut count = 0;
        for s in items {
            data.extend_from_slice(&s.rows);
            count += s.dim();
        }
        self.from_matrix(Matrix::from_flat(count, self.n, data))
    }

    /// Intersection by the Zassenhaus sum-intersection construction.
    pub fn meet(&self, a: &Subspace, b: &Subspace) -> Subspace {
        if a.dim == 0 || b.dim == 0 {
            return self.zero();
        }
        if self.contains(b, a) {
            return a.clone();
        }
        if self.contains(a, b) {
            return b.clone();
        }
        let n = self.n;
        let mut m = Matrix::zeros(a.dim() + b.dim(), 2 * n);
        for (i, r) in a.basis_rows().enumerate() {
            for (c, &x) in r.iter().enumerate() {
                m.set(i, c, x);
                m.set(i, n + c, x);
            }
        }
        for (i, r) in b.basis_rows().enumerate() {
            for (c, &x) in r.iter().enumerate() {
                m.set(a.dim() + i, c, x);
            }
        }
        let pivots = m.rref_in_place(&self.field);
        let rows: Vec<Vec<u8>> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &pc)| pc >= n)
            .map(|(r, _)| m.row(r)[n..].to_vec())
            .collect();
        self.span(&rows)
    }

    pub fn try_meet(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.meet(a, b))
    }

    pub fn try_join(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.join(a, b))
    }

    /// `k - dim(S ∩ S')` for two k-dimensional subspaces.
    pub fn distance(&self, a: &Subspace, b: &Subspace) -> Result<usize> {
        self.check(a)?;
        self.check(b)?;
        if a.dim != b.dim {
            return Err(Error::DimensionMismatch(a.dim(), b.dim()));
        }
        Ok(a.dim() - self.meet(a, b).dim())
    }

    pub fn is_adjacent(&self, a: &Subspace, b: &Subspace) -> Result<bool> {
        Ok(self.distance(a, b)? == 1)
    }

    /// Deterministic `C` with `A ⊕ C = X`: the RREF rows of `X` are scanned in
    /// order and each one independent of the span so far is kept.
    pub fn complement_within(&self, a: &Subspace, x: &Subspace) -> Result<Subspace> {
        self.check(a)?;
        self.check(x)?;
        if !self.contains(x, a) {
            return Err(Error::NotContained);
        }
        let mut acc = a.clone();
        let mut chosen: Vec<Vec<u8>> = Vec::new();
        for row in x.basis_rows() {
            if acc.dim() == x.dim() {
                break;
            }
            if !acc.contains_vector(&self.field, row) {
                chosen.push(row.to_vec());
                acc = self.join(&acc, &self.span(&[row]));
            }
        }
        Ok(self.span(&chosen))
    }

    /// Image of `s` under `v -> matrix * frob^j(v)`.
    pub fn image(&self, matrix: &Matrix, aut_power: u32, s: &Subspace) -> Subspace {
        let rows: Vec<Vec<u8>> = s
            .basis_rows()
            .map(|r| {
                let v: Vec<u8> = r.iter().map(|&x| self.field.frobenius(x, aut_power)).collect();
                matrix.apply(&self.field, &v)
            })
            .collect();
        self.span(&rows)
    }

    /// Every line of `x`, in the order of normalized coefficient vectors over
    /// the RREF basis of `x`.
    pub fn lines_in(&self, x: &Subspace) -> Vec<Subspace> {
        let d = x.dim();
        let q = self.field.q();
        let mut out = Vec::new();
        for lead in 0..d {
            let free = d - lead - 1;
            for mut idx in 0..q.pow(free as u32) {
                let mut coeffs = vec![0u8; d];
                coeffs[lead] = 1;
                for c in coeffs.iter_mut().skip(lead + 1) {
                    *c = (idx % q) as u8;
                    idx /= q;
                }
                let mut v = vec![0u8; self.n];
                for (row, &c) in x.basis_rows().zip(&coeffs) {
                    if c == 0 {
                        continue;
                    }
                    for (t, &r) in v.iter_mut().zip(row) {
                        *t = self.field.add(*t, self.field.mul(c, r));
                    }
                }
                out.push(self.span(&[v]));
            }
        }
        out
    }

    /// A nonzero vector of a line, normalized by its RREF row.
    pub fn line_vector<'a>(&self, line: &'a Subspace) -> &'a [u8] {
        debug_assert_eq!(line.dim(), 1);
        line.basis_rows().next().expect("line has one row")
    }

    pub fn enumerate_grassmannian(&self, k: usize, budget: &Budget) -> Result<GrassmannianIndex> {
        GrassmannianIndex::new(self, k, budget)
    }
}

/// All k-subspaces of F_q^n in a fixed order, with reverse lookup.
#[derive(Clone)]
pub struct GrassmannianIndex {
    n: usize,
    k: usize,
    planes: Vec<Subspace>,
    lookup: HashMap<Subspace, u32>,
}

impl fmt::Debug for GrassmannianIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G_{}(n={}; {} planes)", self.k, self.n, self.planes.len())
    }
}

impl GrassmannianIndex {
    /// Pivot sets in lexicographic order; within a pivot set the free
    /// entries run through `0..q` with the first free entry fastest.
    pub fn new(space: &Space, k: usize, budget: &Budget) -> Result<GrassmannianIndex> {
        let n = space.n();
        if k > n {
            return Err(Error::OutOfRange(format!("k = {k} > n = {n}")));
        }
        let q = space.field().q();
        if !Budget::fits(budget.enumeration_bits, q, n) {
            return Err(Error::Budget(format!(
                "enumerating G_{k}(F_{q}^{n}) exceeds 2^{} vectors",
                budget.enumeration_bits
            )));
        }
        let mut planes = Vec::new();
        for pivots in combinations(n, k) {
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let pivots = &pivots;
                    (pivots[r] + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
                })
                .collect();
            for mut idx in 0..q.pow(free.len() as u32) {
                let mut data = vec![0u8; k * n];
                for (r, &pc) in pivots.iter().enumerate() {
                    data[r * n + pc] = 1;
                }
                for &(r, c) in &free {
                    data[r * n + c] = (idx % q) as u8;
                    idx /= q;
                }
                planes.push(Subspace { n: n as u8, dim: k as u8, rows: data });
            }
        }
        let lookup = planes.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        Ok(GrassmannianIndex { n, k, planes, lookup })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subspace {
        &self.planes[i]
    }

    pub fn planes(&self) -> &[Subspace] {
        &self.planes
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.lookup.get(s).map(|&i| i as usize)
    }
}

/// k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Number of k-subspaces of F_q^n.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// `C(n-k1, k-k1) >= C(n-k2, k-k2)` for `0 <= k1 <= k2 <= k <= n`.
pub fn remark_2_1_holds(n: usize, k: usize, k1: usize, k2: usize) -> Result<bool> {
    if !(k1 <= k2 && k2 <= k && k <= n) {
        return Err(Error::OutOfRange(format!("need k1 <= k2 <= k <= n, got ({n},{k},{k1},{k2})")));
    }
    Ok(binomial(n - k1, k - k1) >= binomial(n - k2, k - k2))
}
