//! Irreducibility certificate for the multinacci polynomials.
//!
//! Exact zero-testing in `Z[β]` relies on `x^m - x^{m-1} - ⋯ - 1` being the
//! minimal polynomial of `β`. We certify that per degree by factoring the
//! polynomial modulo small primes (distinct-degree factorisation) and
//! intersecting the sets of degrees a rational factor could have. When the
//! intersection shrinks to `{0, m}` no proper factor over `Z` can exist.

/// Polynomials over `F_p`, ascending coefficients, no trailing zeros.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn deg(a: &Poly) -> Option<usize> {
    a.len().checked_sub(1)
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn mul(a: &Poly, b: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulm(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder of `a / b`; `b` must be non-zero.
fn divrem(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly) {
    let db = deg(b).expect("division by zero polynomial");
    let lead_inv = inv(b[db], p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len().saturating_sub(db)];
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let c = mulm(r[dr], lead_inv, p);
        let shift = dr - db;
        q[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[i + shift] = (r[i + shift] + p - mulm(c, bc, p)) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn rem(a: &Poly, b: &Poly, p: u64) -> Poly {
    divrem(a, b, p).1
}

fn monic(a: Poly, p: u64) -> Poly {
    match a.last() {
        None => a,
        Some(&l) => {
            let li = inv(l, p);
            a.into_iter().map(|c| mulm(c, li, p)).collect()
        }
    }
}

fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(x, p)
}

fn derivative(a: &Poly, p: u64) -> Poly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulm(c, i as u64 % p, p))
            .collect(),
    )
}

fn powmod(base: &Poly, mut e: u64, modulus: &Poly, p: u64) -> Poly {
    let mut result: Poly = vec![1];
    let mut b = rem(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &b, p), modulus, p);
        }
        b = rem(&mul(&b, &b, p), modulus, p);
        e >>= 1;
    }
    result
}

/// Degrees of the irreducible factors of a monic `f` over `F_p`, or `None`
/// when `f` is not square-free modulo `p` (such primes carry no information).
fn factor_degrees(f: &Poly, p: u64) -> Option<Vec<usize>> {
    if deg(&gcd(f, &derivative(f, p), p)) != Some(0) {
        return None;
    }
    let x: Poly = vec![0, 1];
    let mut degrees = Vec::new();
    let mut g = f.clone();
    let mut h = rem(&x, &g, p);
    let mut d = 1;
    while deg(&g).is_some_and(|dg| 2 * d <= dg) {
        h = powmod(&h, p, &g, p);
        let t = gcd(&g, &sub(&h, &x, p), p);
        let dt = deg(&t).unwrap_or(0);
        if dt > 0 {
            degrees.extend(std::iter::repeat_n(d, dt / d));
            g = divrem(&g, &t, p).0;
            h = rem(&h, &g, p);
        }
        d += 1;
    }
    if let Some(dg) = deg(&g) {
        if dg > 0 {
            degrees.push(dg);
        }
    }
    Some(degrees)
}

fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

fn small_primes(limit: u64) -> impl Iterator<Item = u64> {
    (3..limit).filter(|&n| (2..).take_while(|k| k * k <= n).all(|k| n % k != 0))
}

/// Certifies that the degree-`m` multinacci polynomial is irreducible over
/// `Q`. Returns the primes whose factorisation patterns were combined, or
/// `None` if the prime budget ran out first.
pub fn certify_multinacci(m: usize) -> Option<Vec<u64>> {
    assert!(m >= 1);
    if m == 1 {
        return Some(Vec::new());
    }
    let mut possible = vec![true; m + 1];
    let mut used = Vec::new();
    for p in small_primes(5000) {
        let mut f: Poly = vec![p - 1; m];
        f.push(1);
        let Some(degrees) = factor_degrees(&f, p) else {
            continue;
        };
        let reach = subset_sums(&degrees, m);
        let before = possible.iter().filter(|&&b| b).count();
        for (slot, r) in possible.iter_mut().zip(reach) {
            *slot &= r;
        }
        if possible.iter().filter(|&&b| b).count() < before {
            used.push(p);
        }
        if possible[1..m].iter().all(|&b| !b) {
            return Some(used);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_degrees_of_known_polynomials() {
        // x^2 - 1 = (x - 1)(x + 1) over F_7
        assert_eq!(factor_degrees(&vec![6, 0, 1], 7), Some(vec![1, 1]));
        // x^2 + 1 is irreducible over F_7 (7 ≡ 3 mod 4)
        assert_eq!(factor_degrees(&vec![1, 0, 1], 7), Some(vec![2]));
        // (x - 1)^2 is not square-free
        assert_eq!(factor_degrees(&vec![1, 5, 1], 7), None);
    }

    #[test]
    fn multinacci_certified_up_to_twelve() {
        for m in 2..=12 {
            assert!(certify_multinacci(m).is_some(), "m = {m}");
        }
    }

    #[test]
    fn reducible_polynomial_is_not_certified() {
        // x^4 - 1 = (x^2 - 1)(x^2 + 1): every prime exposes a factor of degree 2.
        let mut possible = [true; 5];
        for p in small_primes(200) {
            let f: Poly = vec![p - 1, 0, 0, 0, 1];
            if let Some(d) = factor_degrees(&f, p) {
                for (s, r) in possible.iter_mut().zip(subset_sums(&d, 4)) {
                    *s &= r;
                }
            }
        }
        assert!(possible[2]);
    }
}
