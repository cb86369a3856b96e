//! Small integer number theory used across the crate: gcds, modular powers,
//! multiplicative orders and factorisations of word-sized integers.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn mod_mul(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn mod_pow(base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % n;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mod_mul(result, b, n);
        }
        b = mod_mul(b, b, n);
        exp >>= 1;
    }
    result
}

pub fn mod_inv(a: u64, n: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128, n as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(n as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let current = divs.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            divs.extend(current.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

/// Order of `a` in the unit group of Z/n, or `None` if `a` is not a unit.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if gcd(a % n, n) != 1 {
        return None;
    }
    let mut order = euler_phi(n);
    for (p, _) in factorize(order) {
        while order.is_multiple_of(p) && mod_pow(a, order / p, n) == 1 {
            order /= p;
        }
    }
    Some(order)
}

/// Primes below `bound`, by a plain sieve.
pub fn primes_below(bound: usize) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let mut sieve = vec![true; bound];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < bound {
        if sieve[i] {
            let mut j = i * i;
            while j < bound {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|&(_, &p)| p)
        .map(|(i, _)| i as u64)
        .collect()
}

/// The least `n >= 1` with `p | 2^n + 1`, if any. Such an `n` exists exactly
/// when the order of 2 modulo `p` is even, and then it is half that order.
pub fn exists_n_dividing(p: u64) -> Option<u64> {
    let order = multiplicative_order(2, p)?;
    (order % 2 == 0).then_some(order / 2)
}

/// `Some((p, k))` when `n = p^k` for a prime `p`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_by_brute_force() {
        for n in 2..200u64 {
            for a in 1..n {
                let brute = if gcd(a, n) != 1 {
                    None
                } else {
                    let mut k = 1;
                    let mut x = a % n;
                    while x != 1 % n {
                        x = x * a % n;
                        k += 1;
                    }
                    Some(k)
                };
                assert_eq!(multiplicative_order(a, n), brute, "a={a} n={n}");
            }
        }
    }

    #[test]
    fn exists_n_dividing_matches_direct_search() {
        for p in primes_below(500).into_iter().filter(|&p| p > 2) {
            let direct = (1..p).find(|&n| (mod_pow(2, n, p) + 1).is_multiple_of(p));
            assert_eq!(exists_n_dividing(p), direct, "p={p}");
        }
        assert_eq!(exists_n_dividing(3), Some(1));
        assert_eq!(exists_n_dividing(5), Some(2));
        assert_eq!(exists_n_dividing(7), None);
    }

    #[test]
    fn phi_and_divisors() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(7), 6);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inv(2, 9), Some(5));
        assert_eq!(mod_inv(3, 9), None);
        assert_eq!(mod_inv(2, 5), Some(3));
    }

    #[test]
    fn sieve_matches_trial_division() {
        let sieve = primes_below(1000);
        let trial: Vec<u64> = (0..1000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, trial);
    }
}
