//! Exact linear algebra: a small field abstraction, sparse row echelon forms,
//! and a certified kernel computation for integer systems.
//!
//! Large systems are first eliminated modulo the Mersenne prime `2^61 - 1`,
//! skipping rows that random kernel probes show to be redundant. Kernel
//! vectors are lifted to rationals and then checked exactly against every row.
//! The rank over `Q` is never below the rank modulo `p`, so `n - rank_p`
//! exactly verified, independent kernel vectors pin the dimension down.
//! If a lift fails the check, the rows that were independent modulo `p` are
//! eliminated again over `Q`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{Rat, Scalar};

pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
}

pub const MODULUS: u64 = (1 << 61) - 1;

/// Residue modulo the Mersenne prime `2^61 - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % MODULUS)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn reduce(x: u128) -> u64 {
        let lo = (x as u64) & MODULUS;
        let hi = (x >> 61) as u64;
        let s = lo + hi;
        let s = (s & MODULUS) + (s >> 61);
        if s >= MODULUS {
            s - MODULUS
        } else {
            s
        }
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn from_rat(r: &Rat) -> Option<Fp> {
        let m = BigInt::from(MODULUS);
        let n = r.numer().mod_floor(&m).to_u64()?;
        let d = r.denom().mod_floor(&m).to_u64()?;
        if d == 0 {
            return None;
        }
        Some(Field::mul(&Fp(n), &Fp(d).inv()))
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(n: i64) -> Self {
        if n >= 0 {
            Fp::new(n as u64)
        } else {
            Fp::new(n.unsigned_abs()).neg()
        }
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= MODULUS { s - MODULUS } else { s })
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + MODULUS - o.0 })
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(Fp::reduce(self.0 as u128 * o.0 as u128))
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { MODULUS - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(MODULUS - 2)
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn from_i64(n: i64) -> Self {
        Rat::from_int(n)
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn from_i64(n: i64) -> Self {
        Scalar::int(n)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// A sparse row: `(column, coefficient)` pairs.
pub type SparseRow<F> = Vec<(u32, F)>;

/// Incremental row echelon form. Each stored row starts with coefficient 1 at
/// its pivot column; pivots are the lowest column index of each row.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    n: usize,
    pivot_rows: Vec<Option<SparseRow<F>>>,
    rank: usize,
    scratch: Vec<F>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<u32>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(n: usize) -> Self {
        Echelon {
            n,
            pivot_rows: vec![None; n],
            rank: 0,
            scratch: vec![F::zero(); n],
            queued: vec![false; n],
            heap: BinaryHeap::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_full(&self) -> bool {
        self.rank == self.n
    }

    fn push(&mut self, col: u32, coef: &F) {
        let c = col as usize;
        self.scratch[c] = self.scratch[c].add(coef);
        if !self.queued[c] {
            self.queued[c] = true;
            self.heap.push(Reverse(col));
        }
    }

    /// Reduces `row` against the stored rows. Returns true if it was
    /// independent, in which case it is added.
    pub fn insert<I: IntoIterator<Item = (u32, F)>>(&mut self, row: I) -> bool {
        for (c, a) in row {
            if !a.is_zero() {
                self.push(c, &a);
            }
        }
        while let Some(Reverse(col)) = self.heap.pop() {
            let c = col as usize;
            self.queued[c] = false;
            let a = std::mem::replace(&mut self.scratch[c], F::zero());
            if a.is_zero() {
                continue;
            }
            if let Some(prow) = self.pivot_rows[c].take() {
                let factor = a.neg();
                for (j, b) in &prow[1..] {
                    self.push(*j, &factor.mul(b));
                }
                self.pivot_rows[c] = Some(prow);
                continue;
            }
            // New pivot: gather what is left, normalize, store.
            let inv = a.inv();
            let mut rest: Vec<u32> = Vec::with_capacity(self.heap.len());
            while let Some(Reverse(j)) = self.heap.pop() {
                rest.push(j);
            }
            let mut new_row = Vec::with_capacity(rest.len() + 1);
            new_row.push((col, F::one()));
            for j in rest {
                let ju = j as usize;
                self.queued[ju] = false;
                let v = std::mem::replace(&mut self.scratch[ju], F::zero());
                if !v.is_zero() {
                    new_row.push((j, v.mul(&inv)));
                }
            }
            self.pivot_rows[c] = Some(new_row);
            self.rank += 1;
            return true;
        }
        false
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.n).filter(|&c| self.pivot_rows[c].is_none()).collect()
    }

    /// Kernel vector with value 1 at `free`, 0 at the other free columns, and
    /// pivot values obtained by back substitution.
    pub fn kernel_vector(&self, free: usize) -> Vec<F> {
        assert!(self.pivot_rows[free].is_none(), "column {free} is a pivot column");
        let mut x = vec![F::zero(); self.n];
        x[free] = F::one();
        for p in (0..free).rev() {
            if let Some(row) = &self.pivot_rows[p] {
                let mut acc = F::zero();
                for (j, a) in &row[1..] {
                    let xj = &x[*j as usize];
                    if !xj.is_zero() {
                        acc = acc.add(&a.mul(xj));
                    }
                }
                x[p] = acc.neg();
            }
        }
        x
    }

    /// The kernel vector taking value `coeffs[k]` at the `k`-th free column.
    pub fn kernel_combination(&self, coeffs: &[F]) -> Vec<F> {
        let mut x = vec![F::zero(); self.n];
        let mut next = coeffs.iter();
        for (c, row) in self.pivot_rows.iter().enumerate() {
            if row.is_none() {
                x[c] = next.next().expect("one coefficient per free column").clone();
            }
        }
        for p in (0..self.n).rev() {
            if let Some(row) = &self.pivot_rows[p] {
                let mut acc = F::zero();
                for (j, a) in &row[1..] {
                    let xj = &x[*j as usize];
                    if !xj.is_zero() {
                        acc = acc.add(&a.mul(xj));
                    }
                }
                x[p] = acc.neg();
            }
        }
        x
    }
}

/// Solves a square system by Gauss-Jordan elimination; `None` if singular.
pub fn solve_square<F: Field>(mut a: Vec<Vec<F>>, mut b: Vec<F>) -> Option<Vec<F>> {
    let n = a.len();
    assert!(b.len() == n && a.iter().all(|r| r.len() == n), "system must be square");
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].inv();
        for j in col..n {
            a[col][j] = a[col][j].mul(&inv);
        }
        b[col] = b[col].mul(&inv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in col..n {
                    let t = factor.mul(&a[col][j]);
                    a[r][j] = a[r][j].sub(&t);
                }
                let t = factor.mul(&b[col]);
                b[r] = b[r].sub(&t);
            }
        }
    }
    Some(b)
}

/// A source of integer-coefficient homogeneous rows that can be replayed.
pub trait RowSource {
    fn num_vars(&self) -> usize;
    fn for_each_row(&self, visit: &mut dyn FnMut(&[(u32, i64)]));
}

/// Kernel of an integer row system, with exactly verified basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub dimension: usize,
    /// Basis vectors, each with a 1 at its own free column.
    pub vectors: Vec<Vec<Rat>>,
}

fn rational_reconstruct(a: Fp) -> Option<Rat> {
    // Find r/s = a mod p with |r|, s <= sqrt(p/2).
    let p = MODULUS as i128;
    let bound: i128 = 1_073_741_823;
    let (mut r0, mut r1) = (p, a.value() as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if s1 == 0 || s1.abs() > bound {
        return None;
    }
    Some(Rat::new(r1 as i64, s1 as i64))
}

/// Integer-scaled copy of a rational vector: `(scaled entries, common denominator)`.
fn scale_to_integers(x: &[Rat]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for v in x {
        den = den.lcm(&v.denom());
    }
    x.iter().map(|v| v.numer() * (&den / v.denom())).collect()
}

enum Scaled {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl Scaled {
    fn new(x: &[Rat]) -> Self {
        let big = scale_to_integers(x);
        match big.iter().map(|v| v.to_i64()).collect::<Option<Vec<_>>>() {
            Some(v) => Scaled::Small(v),
            None => Scaled::Big(big),
        }
    }

    fn annihilates(&self, row: &[(u32, i64)]) -> bool {
        match self {
            Scaled::Small(x) => {
                let mut acc: i128 = 0;
                for (c, a) in row {
                    match (*a as i128).checked_mul(x[*c as usize] as i128).and_then(|t| acc.checked_add(t)) {
                        Some(v) => acc = v,
                        None => {
                            return row
                                .iter()
                                .map(|(c, a)| BigInt::from(*a) * BigInt::from(x[*c as usize]))
                                .sum::<BigInt>()
                                .is_zero()
                        }
                    }
                }
                acc == 0
            }
            Scaled::Big(x) => {
                row.iter().map(|(c, a)| BigInt::from(*a) * &x[*c as usize]).sum::<BigInt>().is_zero()
            }
        }
    }
}

fn is_zero_vector(x: &[Rat]) -> bool {
    x.iter().all(Rat::is_zero)
}

/// Rows between samples in the first elimination pass.
/// Smallest number of eliminated rows between probe refreshes.
const REFRESH_MIN: usize = 8;

fn dot(row: &[(u32, i64)], x: &[Fp]) -> Fp {
    row.iter().fold(Fp::zero(), |acc, &(c, a)| acc.add(&Fp::from_i64(a).mul(&x[c as usize])))
}

/// Echelon form modulo p whose row space contains every row of `source`,
/// together with the rows it was built from.
///
/// Most rows of a large system are redundant, and reducing a redundant row to
/// zero is the expensive part of elimination. So each row is first tested
/// against two random vectors of the current kernel and is only eliminated if
/// it fails. The probes are refreshed whenever a row slips through without
/// raising the rank, and after a batch of insertions. A full sweep with no
/// failures means every row lies in the row space, up to a chance of order
/// `1/p` that the exact verification catches.
fn modular_echelon(source: &dyn RowSource) -> (Echelon<Fp>, Vec<Vec<(u32, i64)>>) {
    let n = source.num_vars();
    let mut modular: Echelon<Fp> = Echelon::new(n);
    let mut independent: Vec<Vec<(u32, i64)>> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut probe = |m: &Echelon<Fp>| -> Vec<Vec<Fp>> {
        let free = n - m.rank();
        (0..2)
            .map(|_| {
                let coeffs: Vec<Fp> = (0..free).map(|_| Fp::new(rng.gen_range(1..MODULUS))).collect();
                m.kernel_combination(&coeffs)
            })
            .collect()
    };
    loop {
        if modular.is_full() {
            return (modular, independent);
        }
        let mut probes = probe(&modular);
        let mut budget = REFRESH_MIN.max((n - modular.rank()) / 4);
        let mut changed = false;
        source.for_each_row(&mut |row| {
            if modular.is_full() || probes.iter().all(|x| dot(row, x).is_zero()) {
                return;
            }
            let fresh = modular.insert(row.iter().map(|&(c, a)| (c, Fp::from_i64(a))));
            if fresh {
                independent.push(row.to_vec());
                changed = true;
            }
            budget = budget.saturating_sub(1);
            if !fresh || budget == 0 {
                probes = probe(&modular);
                budget = REFRESH_MIN.max((n - modular.rank()) / 4);
            }
        });
        if !changed {
            return (modular, independent);
        }
    }
}

/// Exact kernel of an integer system. See the module docs for the method.
pub fn integer_kernel(source: &dyn RowSource) -> Kernel {
    let n = source.num_vars();
    let (modular, independent) = modular_echelon(source);
    let free = modular.free_columns();
    if free.is_empty() {
        return Kernel { dimension: 0, vectors: Vec::new() };
    }

    let lifted: Option<Vec<Vec<Rat>>> = free
        .iter()
        .map(|&c| modular.kernel_vector(c).into_iter().map(rational_reconstruct).collect())
        .collect();
    if let Some(vectors) = lifted {
        if verify_all(source, &vectors) {
            return Kernel { dimension: vectors.len(), vectors };
        }
    }

    // Exact fallback: start from the rows independent modulo p and add any row
    // the exact kernel fails on until it annihilates everything.
    let mut rows = independent;
    loop {
        let mut exact: Echelon<Rat> = Echelon::new(n);
        for row in &rows {
            exact.insert(row.iter().map(|&(c, a)| (c, Rat::from_int(a))));
        }
        let vectors: Vec<Vec<Rat>> = exact.free_columns().into_iter().map(|c| exact.kernel_vector(c)).collect();
        let mut failing: Option<Vec<(u32, i64)>> = None;
        let scaled: Vec<Scaled> = vectors.iter().map(|v| Scaled::new(v)).collect();
        source.for_each_row(&mut |row| {
            if failing.is_none() && scaled.iter().any(|x| !x.annihilates(row)) {
                failing = Some(row.to_vec());
            }
        });
        match failing {
            None => return Kernel { dimension: vectors.len(), vectors },
            Some(row) => rows.push(row),
        }
    }
}

fn verify_all(source: &dyn RowSource, vectors: &[Vec<Rat>]) -> bool {
    if vectors.iter().any(|v| is_zero_vector(v)) {
        return false;
    }
    let scaled: Vec<Scaled> = vectors.iter().map(|v| Scaled::new(v)).collect();
    let mut ok = true;
    source.for_each_row(&mut |row| {
        if ok && !scaled.iter().all(|x| x.annihilates(row)) {
            ok = false;
        }
    });
    ok
}

/// Rows held in memory, for small systems and tests.
#[derive(Clone, Debug, Default)]
pub struct RowList {
    pub num_vars: usize,
    pub rows: Vec<Vec<(u32, i64)>>,
}

impl RowSource for RowList {
    fn num_vars(&self) -> usize {
        self.num_vars
    }
    fn for_each_row(&self, visit: &mut dyn FnMut(&[(u32, i64)])) {
        for r in &self.rows {
            visit(r);
        }
    }
}
