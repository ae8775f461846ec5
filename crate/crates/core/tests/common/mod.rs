//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use infgroup::library::{three_slope, ThreeSlopeInput, ThreeSlopeParams};
use infgroup::{FiniteGroupFunction, PwlPeriodic, Rat, Scalar};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn s(t: &str) -> Scalar {
    t.parse().unwrap()
}

pub fn three_slope_with(delta2: &str) -> (PwlPeriodic, ThreeSlopeParams) {
    three_slope(ThreeSlopeInput {
        f: s("4/5"),
        up_total: s("3/5"),
        down_total: s("1/10"),
        head: s("3/20"),
        shifts: [s("1/100"), s(delta2)],
    })
    .unwrap()
}

pub fn rational_variant() -> (PwlPeriodic, ThreeSlopeParams) {
    three_slope_with("1/200")
}

pub fn irrational_variant() -> (PwlPeriodic, ThreeSlopeParams) {
    three_slope(ThreeSlopeInput {
        f: s("4/5"),
        up_total: s("3/5"),
        down_total: s("1/10"),
        head: s("3/20"),
        shifts: [s("1/200"), s("1/200*sqrt(2)")],
    })
    .unwrap()
}

/// Values `a_k + b_k sqrt(d)` scaled to integers by a common denominator.
struct IntegerValues {
    a: Vec<i128>,
    b: Vec<i128>,
    den: i128,
    d: i128,
}

fn lcm(x: i128, y: i128) -> i128 {
    let (mut p, mut q) = (x, y);
    while q != 0 {
        (p, q) = (q, p % q);
    }
    x / p * y
}

impl IntegerValues {
    fn new(values: &[Scalar]) -> Self {
        let d = values.iter().map(|v| v.root()).max().unwrap_or(0) as i128;
        let den_of = |r: &Rat| r.denom().to_i128().unwrap();
        let den = values.iter().fold(1i128, |acc, v| lcm(lcm(acc, den_of(v.rat_part())), den_of(v.quad_part())));
        let scale = |r: &Rat| {
            let x: BigInt = r.numer() * (BigInt::from(den) / r.denom());
            x.to_i128().unwrap()
        };
        IntegerValues {
            a: values.iter().map(|v| scale(v.rat_part())).collect(),
            b: values.iter().map(|v| scale(v.quad_part())).collect(),
            den,
            d,
        }
    }

    /// Exact sign of `a + b sqrt(d)`.
    fn sign(&self, a: i128, b: i128) -> i32 {
        let (sa, sb) = (a.signum() as i32, b.signum() as i32);
        if sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        if sa == 0 {
            return sb;
        }
        let lhs = BigInt::from(a) * BigInt::from(a);
        let rhs = BigInt::from(self.d) * BigInt::from(b) * BigInt::from(b);
        let mag = lhs - rhs;
        if mag.is_zero() {
            0
        } else if mag.is_positive() {
            sa
        } else {
            sb
        }
    }
}

/// Brute-force minimality oracle: samples `pi` at every point of `(1/m)Z` and
/// checks `pi(0) = 0`, `pi(f) = 1`, subadditivity and symmetry on all pairs.
/// `f` must lie on the grid.
pub fn grid_oracle_minimal(pi: &PwlPeriodic, m: u64) -> bool {
    let mi = m as i64;
    let values: Vec<Scalar> = (0..mi).map(|k| pi.eval(&Scalar::ratio(k, mi))).collect();
    let fk = (pi.f().as_rat().expect("rational f") * &Rat::from_int(mi)).as_small().expect("f on grid").0 as usize;
    let t = IntegerValues::new(&values);
    let m = m as usize;
    if t.a[0] != 0 || t.b[0] != 0 || t.a[fk] != t.den || t.b[fk] != 0 {
        return false;
    }
    for x in 0..m {
        let y = (fk + m - x) % m;
        if t.a[x] + t.a[y] != t.den || t.b[x] + t.b[y] != 0 {
            return false;
        }
        for y in x..m {
            let z = (x + y) % m;
            if t.sign(t.a[x] + t.a[y] - t.a[z], t.b[x] + t.b[y] - t.b[z]) < 0 {
                return false;
            }
        }
    }
    true
}

fn subadditive_and_symmetric(n: usize, f: usize, v: &[i64]) -> bool {
    let one = v[f];
    (0..n).all(|x| v[x] + v[(f + n - x) % n] == one && (0..n).all(|y| v[x] + v[y] >= v[(x + y) % n]))
}

/// Every minimal function on `(1/n)Z` with `f = f_index/n` whose values lie in
/// `{0, 1/den, ..., 1}`, found by exhaustive search over the symmetric pairs.
pub fn minimal_finite_functions(n: usize, f_index: usize, den: i64) -> Vec<FiniteGroupFunction> {
    symmetric_finite_functions(n, f_index, den, true)
}

/// Functions with `phi(0) = 0`, `phi(f) = 1`, symmetry and values in
/// `{0, 1/den, ..., 1}` whose subadditivity is `subadditive`.
pub fn symmetric_finite_functions(n: usize, f_index: usize, den: i64, subadditive: bool) -> Vec<FiniteGroupFunction> {
    // Representatives x of the pairs {x, f - x}, excluding 0 and f.
    let reps: Vec<usize> = (1..n).filter(|&x| x != f_index && x <= (f_index + n - x) % n).collect();
    let mut out = Vec::new();
    let choices = (den + 1) as usize;
    let total = choices.pow(reps.len() as u32);
    for code in 0..total {
        let mut v = vec![-1i64; n];
        v[0] = 0;
        v[f_index] = den;
        let mut c = code;
        let mut ok = true;
        for &x in &reps {
            let val = (c % choices) as i64;
            c /= choices;
            let y = (f_index + n - x) % n;
            if x == y && 2 * val != den {
                ok = false;
            }
            v[x] = val;
            v[y] = den - val;
        }
        if !ok || v.iter().any(|&t| t < 0) || subadditive_and_symmetric(n, f_index, &v) != subadditive {
            continue;
        }
        let values = v.iter().map(|&t| Scalar::ratio(t, den)).collect();
        out.push(FiniteGroupFunction::new(n as u64, values, Scalar::ratio(f_index as i64, n as i64)).unwrap());
    }
    out
}

/// A deterministic sample of `count` interpolated minimal finite functions on
/// `(1/q)Z` with `2 <= q <= 8`.
pub fn random_minimal_interpolations(count: usize, seed: u64) -> Vec<PwlPeriodic> {
    let mut pool = Vec::new();
    for n in 2..=8usize {
        for f in 1..n {
            pool.extend(minimal_finite_functions(n, f, 4));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| pool[rng.gen_range(0..pool.len())].interpolate()).collect()
}

/// Random rationals `a/b` in `(0,1)` with `b <= max_den`.
pub fn random_fractions(count: usize, max_den: i64, seed: u64) -> Vec<Scalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let b = rng.gen_range(2..=max_den);
            Scalar::ratio(rng.gen_range(1..b), b)
        })
        .collect()
}

/// Random rational in `[-3, 3]` with denominator at most 1000.
pub fn random_point(rng: &mut ChaCha8Rng) -> Scalar {
    let b = rng.gen_range(1..=1000);
    Scalar::ratio(rng.gen_range(-3 * b..=3 * b), b)
}
