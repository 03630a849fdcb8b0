//! Deterministic primality and prime selection over `u64`.

/// Miller-Rabin with the witness set {2, 3, 5, 7, 11, 13, 17}, exact for
/// every n < 3.4 * 10^14.
const WITNESSES: [u64; 7] = [2, 3, 5, 7, 11, 13, 17];

/// Largest input for which the fixed witness set is a proof of primality.
pub const MR_EXACT_LIMIT: u64 = 341_550_071_728_321;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Primality test. Exact below [`MR_EXACT_LIMIT`]; above it the answer is
/// "probable prime" for the same witness set.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Largest prime in `[lo, hi]`, if any.
pub fn largest_prime_in(lo: u64, hi: u64) -> Option<u64> {
    (lo.max(2)..=hi).rev().find(|&c| is_prime(c))
}

/// Primes in `[lo, hi]` in increasing order.
pub fn primes_in(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..=hi).filter(|&c| is_prime(c))
}

/// `ceil(sqrt(n))` computed exactly on integers.
pub fn ceil_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while r * r < n {
        r += 1;
    }
    r
}

/// Smallest prime `q` with `4n <= q^2 <= 16n`.
///
/// Bertrand's postulate puts a prime in `[ceil(2 sqrt n), 2 ceil(2 sqrt n)]`,
/// and the upper end squares to at most `16n` once rounding is accounted
/// for, so the search below always terminates inside the window.
pub fn bertrand_prime(n: u64) -> u64 {
    assert!(n >= 1, "bertrand_prime needs n >= 1");
    let q = next_prime(ceil_sqrt(4 * n));
    debug_assert!(q * q >= 4 * n && q * q <= 16 * n);
    q
}
