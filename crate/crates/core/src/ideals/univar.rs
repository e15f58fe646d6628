//! Univariate polynomial helpers over Q: coefficient extraction, Euclidean
//! gcd, and exact rational-root search by primitive-integer rescaling and
//! the rational-root theorem.

use crate::polyalg::{MultiPoly, Rat};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Ascending coefficient vector of `p` in variable `var`. Panics if any
/// other variable occurs.
pub(crate) fn coeffs_in(p: &MultiPoly, var: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); p.total_degree() as usize + 1];
    for (m, c) in p.terms() {
        assert!(
            m.exps().iter().enumerate().all(|(j, &e)| j == var || e == 0),
            "polynomial is not univariate in the requested variable"
        );
        out[m.exp(var) as usize] = c.clone();
    }
    trim(&mut out);
    out
}

fn trim(c: &mut Vec<Rat>) {
    while c.last().is_some_and(|v| v.is_zero()) {
        c.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub(crate) fn degree(c: &[Rat]) -> Option<usize> {
    c.iter().rposition(|v| !v.is_zero())
}

fn monic(mut c: Vec<Rat>) -> Vec<Rat> {
    trim(&mut c);
    if let Some(d) = degree(&c) {
        let lead = c[d].clone();
        for v in &mut c {
            *v = &*v / &lead;
        }
    }
    c
}

/// Remainder of `a` modulo `b` (`b` nonzero).
fn rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: Vec<Rat> = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let factor = &r[dr] / &b[db];
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            let v = &r[i + shift] - &(&factor * bc);
            r[i + shift] = v;
        }
        trim(&mut r);
    }
    r
}

/// Monic Euclidean gcd; `gcd(a, 0)` is monic `a`.
pub(crate) fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x: Vec<Rat> = a.to_vec();
    let mut y: Vec<Rat> = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

fn eval(c: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for coeff in c.iter().rev() {
        acc = acc * x + coeff;
    }
    acc
}

/// Divide by `(t - r)`, assuming `r` is a root.
fn deflate(c: &[Rat], r: &Rat) -> Vec<Rat> {
    let d = degree(c).expect("nonzero");
    assert!(d >= 1);
    let mut q = vec![Rat::zero(); d];
    let mut carry = Rat::zero();
    for k in (1..=d).rev() {
        let v = &c[k] + &(&carry * r);
        carry = v.clone();
        q[k - 1] = v;
    }
    debug_assert!((&c[0] + &(&carry * r)).is_zero(), "not a root");
    q
}

/// All rational roots of a nonzero polynomial, with multiplicities, in
/// ascending order. The flag is true iff the polynomial splits into linear
/// factors over Q, i.e. deflating every rational root leaves a constant.
pub fn rational_roots(c: &[Rat]) -> (Vec<(Rat, usize)>, bool) {
    let mut cur: Vec<Rat> = c.to_vec();
    trim(&mut cur);
    let Some(d) = degree(&cur) else {
        return (Vec::new(), false);
    };
    if d == 0 {
        return (Vec::new(), true);
    }

    let mut roots: Vec<(Rat, usize)> = Vec::new();

    // Roots at zero.
    let zero_mult = cur.iter().take_while(|v| v.is_zero()).count();
    if zero_mult > 0 {
        roots.push((Rat::zero(), zero_mult));
        cur.drain(..zero_mult);
    }
    if degree(&cur) == Some(0) {
        return (roots, true);
    }

    // Rescale to a primitive integer polynomial.
    let denom_lcm = cur
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = cur
        .iter()
        .map(|v| {
            let scaled = v * Rat::from_integer(denom_lcm.clone());
            debug_assert!(scaled.denom().is_one());
            scaled.numer().clone()
        })
        .collect();

    // Rational-root theorem: numerator divides the constant term,
    // denominator divides the leading coefficient.
    let c0 = ints.first().expect("nonzero").magnitude().clone();
    let cn = ints.last().expect("nonzero").magnitude().clone();
    let mut candidates: BTreeSet<Rat> = BTreeSet::new();
    for p in divisors(&c0) {
        for q in divisors(&cn) {
            let r = Rat::new(BigInt::from(p.clone()), BigInt::from(q.clone()));
            candidates.insert(-r.clone());
            candidates.insert(r);
        }
    }

    for cand in candidates {
        let mut mult = 0usize;
        while degree(&cur).is_some_and(|d| d >= 1) && eval(&cur, &cand).is_zero() {
            cur = deflate(&cur, &cand);
            mult += 1;
        }
        if mult > 0 {
            roots.push((cand, mult));
        }
    }

    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let split = degree(&cur) == Some(0);
    (roots, split)
}

/// All positive divisors of `n >= 1`, ascending.
fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    for (p, e) in factorize(n.clone()) {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

fn factorize(mut n: BigUint) -> Vec<(BigUint, u32)> {
    let mut factors: BTreeMap<BigUint, u32> = BTreeMap::new();
    if n <= BigUint::one() {
        return Vec::new();
    }
    // Trial division by small numbers first.
    let mut d = 2u64;
    while d < 10_000 {
        let bd = BigUint::from(d);
        if &bd * &bd > n {
            break;
        }
        while (&n % &bd).is_zero() {
            *factors.entry(bd.clone()).or_insert(0) += 1;
            n /= &bd;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigUint::one() {
        let mut stack = vec![n];
        while let Some(m) = stack.pop() {
            if is_prime(&m) {
                *factors.entry(m).or_insert(0) += 1;
            } else {
                let f = pollard_rho(&m);
                stack.push(&m / &f);
                stack.push(f);
            }
        }
    }
    factors.into_iter().collect()
}

/// Miller-Rabin with a fixed witness set (deterministic far past any input
/// this crate produces).
fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigUint::from(small);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - BigUint::one();
    let s = n_minus_1.trailing_zeros().expect("n > 1 is odd here");
    let d = &n_minus_1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of an odd composite, by Pollard's rho.
fn pollard_rho(n: &BigUint) -> BigUint {
    if (n % 2u32).is_zero() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = BigUint::from(2u32);
        let mut d = BigUint::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && d != *n {
            return d;
        }
        c += BigUint::one();
    }
}
