//! Factorization of group moduli.
//!
//! Moduli are `u64`, so a deterministic Miller-Rabin test plus Pollard's rho
//! is enough to factor any input quickly, including adversarial primes near
//! the word size.

/// Returns the prime factorization of `n >= 1` as `(prime, exponent)` pairs
/// sorted by prime. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut stack = vec![n];
    let mut found: Vec<u64> = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            found.push(m);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    found.sort_unstable();
    for p in found {
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some((_, e)) => *e += 1,
            None => out.push((p, 1)),
        }
    }
    out.sort_unstable();
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for `u64`; the fixed base set below decides
/// primality correctly for every 64 bit integer.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime(n));
    if n % 2 == 0 {
        return 2;
    }
    // Brent's cycle variant with a deterministic sequence of offsets, so the
    // factorization of a given modulus is reproducible.
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!("rho failed on composite {n}");
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_small_numbers() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(2), vec![(2, 1)]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(759), vec![(3, 1), (11, 1), (23, 1)]);
        assert_eq!(factorize(897), vec![(3, 1), (13, 1), (23, 1)]);
    }

    #[test]
    fn factors_large_semiprime() {
        let p = 4_294_967_291u64; // prime just below 2^32
        let q = 2_147_483_647u64; // Mersenne prime 2^31 - 1
        assert_eq!(factorize(p * q), vec![(q, 1), (p, 1)]);
    }

    #[test]
    fn recognizes_primes() {
        assert!(is_prime(2));
        assert!(is_prime(23));
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(1));
        assert!(!is_prime(561)); // Carmichael number
        assert!(!is_prime(25326001)); // strong pseudoprime to bases 2, 3, 5
    }

    #[test]
    fn reconstructs_input() {
        for n in 1..5000u64 {
            let prod: u64 = factorize(n).iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(prod, n);
        }
    }
}
