//! Prime tables, prime counting and small arithmetic functions.
//!
//! Primes come from a segmented sieve of Eratosthenes over odd numbers, so
//! memory during sieving is bounded by the segment plus the base primes up to
//! the square root of the limit. Arithmetic functions (Möbius, squarefree
//! divisors) factor by trial division; their arguments stay small.

use std::io::{BufRead, Write};

use num_integer::Roots;

use crate::{Error, Result};

/// Largest sieve limit accepted by [`sieve`]; roughly 400 MB of output.
pub const DEFAULT_MAX_SIEVE_LIMIT: u64 = 1_000_000_000;

/// Odd numbers per sieve segment.
const SEGMENT_ODDS: usize = 1 << 16;

const CACHE_MAGIC: &str = "ZFPRIMES1";

/// Sorted list of every prime not exceeding `limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// The `n`-th prime, 1-indexed (`nth_prime(1) == 2`).
    pub fn nth_prime(&self, n: usize) -> Result<u64> {
        if n == 0 || n > self.primes.len() {
            return Err(Error::Range(format!(
                "prime index {n} outside 1..={} (limit {})",
                self.primes.len(),
                self.limit
            )));
        }
        Ok(self.primes[n - 1])
    }

    /// π(x) for x up to the table limit.
    pub fn prime_count(&self, x: u64) -> Result<usize> {
        if x > self.limit {
            return Err(Error::Range(format!(
                "π({x}) requested beyond table limit {}",
                self.limit
            )));
        }
        Ok(self.primes.partition_point(|&p| p <= x))
    }

    /// Primes strictly below `x`.
    pub fn primes_below(&self, x: u64) -> &[u64] {
        &self.primes[..self.primes.partition_point(|&p| p < x)]
    }

    /// The first `n` primes.
    pub fn first(&self, n: usize) -> Result<&[u64]> {
        if n > self.primes.len() {
            return Err(Error::Range(format!(
                "{n} primes requested, table holds {} (limit {})",
                self.primes.len(),
                self.limit
            )));
        }
        Ok(&self.primes[..n])
    }

    /// Writes the table in the text cache format: a `ZFPRIMES1` line, the limit,
    /// then one prime per line.
    pub fn write_cache<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{CACHE_MAGIC}")?;
        writeln!(out, "{}", self.limit)?;
        for p in &self.primes {
            writeln!(out, "{p}")?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn read_cache<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines().enumerate();
        let mut next_line = |what: &str| -> Result<(usize, String)> {
            match lines.next() {
                Some((i, line)) => Ok((i + 1, line?)),
                None => Err(Error::Parse {
                    line: 0,
                    msg: format!("missing {what}"),
                }),
            }
        };
        let (ln, magic) = next_line("header")?;
        if magic.trim_end() != CACHE_MAGIC {
            return Err(Error::Parse {
                line: ln,
                msg: format!("expected `{CACHE_MAGIC}`"),
            });
        }
        let (ln, limit) = next_line("limit")?;
        let limit: u64 = limit.trim().parse().map_err(|e| Error::Parse {
            line: ln,
            msg: format!("bad limit: {e}"),
        })?;
        let mut primes = Vec::new();
        for (i, line) in lines {
            let line = line?;
            let p: u64 = line.trim().parse().map_err(|e| Error::Parse {
                line: i + 1,
                msg: format!("bad prime: {e}"),
            })?;
            if p > limit || primes.last().is_some_and(|&q| p <= q) {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("prime {p} out of order or above limit"),
                });
            }
            primes.push(p);
        }
        Ok(PrimeTable { limit, primes })
    }
}

/// Sieves all primes up to `limit` under the default budget.
pub fn sieve(limit: u64) -> Result<PrimeTable> {
    sieve_with_budget(limit, DEFAULT_MAX_SIEVE_LIMIT)
}

pub fn sieve_with_budget(limit: u64, max_limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::Domain(format!(
            "sieve limit must be at least 2, got {limit}"
        )));
    }
    if limit > max_limit {
        return Err(Error::Resource(format!(
            "sieve limit {limit} exceeds budget {max_limit}"
        )));
    }

    let mut primes = Vec::with_capacity(estimate_prime_count(limit));
    primes.push(2);
    if limit < 3 {
        return Ok(PrimeTable { limit, primes });
    }

    let base = small_odd_primes(limit.sqrt());
    let mut next_multiple: Vec<u64> = base.iter().map(|&p| p * p).collect();
    let mut marks = vec![true; SEGMENT_ODDS];

    // Segment covers the odd numbers low, low + 2, ..., low + 2 * (len - 1).
    let mut low = 3u64;
    while low <= limit {
        let len = (((limit - low) / 2 + 1) as usize).min(SEGMENT_ODDS);
        let last = low + 2 * (len as u64 - 1);
        let seg = &mut marks[..len];
        seg.fill(true);
        for (j, &p) in base.iter().enumerate() {
            if p * p > last {
                break;
            }
            let mut m = next_multiple[j];
            while m <= last {
                seg[((m - low) / 2) as usize] = false;
                m += 2 * p;
            }
            next_multiple[j] = m;
        }
        primes.extend(
            seg.iter()
                .enumerate()
                .filter(|(_, &is_prime)| is_prime)
                .map(|(i, _)| low + 2 * i as u64),
        );
        low = last + 2;
    }
    Ok(PrimeTable { limit, primes })
}

/// Odd primes up to `n` by a plain sieve; used for the base of the segmented sieve.
fn small_odd_primes(n: u64) -> Vec<u64> {
    if n < 3 {
        return Vec::new();
    }
    let n = n as usize;
    let mut is_prime = vec![true; n + 1];
    let mut i = 3;
    while i * i <= n {
        if is_prime[i] {
            let mut m = i * i;
            while m <= n {
                is_prime[m] = false;
                m += 2 * i;
            }
        }
        i += 2;
    }
    (3..=n)
        .step_by(2)
        .filter(|&k| is_prime[k])
        .map(|k| k as u64)
        .collect()
}

/// Upper bound on π(x) (Rosser–Schoenfeld), used for preallocation.
fn estimate_prime_count(x: u64) -> usize {
    if x < 17 {
        return 8;
    }
    let xf = x as f64;
    (1.25506 * xf / xf.ln()) as usize + 1
}

/// Upper bound for the `n`-th prime, valid for all `n >= 1`.
pub fn nth_prime_upper_bound(n: u64) -> u64 {
    if n < 6 {
        return 13;
    }
    let nf = n as f64;
    (nf * (nf.ln() + nf.ln().ln())).ceil() as u64 + 1
}

/// Sieves enough primes to hold at least `n` of them.
pub fn sieve_first(n: u64) -> Result<PrimeTable> {
    sieve(nth_prime_upper_bound(n))
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    let mut n = n;
    let mut out = Vec::new();
    let mut take = |n: &mut u64, d: u64| {
        if (*n).is_multiple_of(d) {
            let mut e = 0;
            while (*n).is_multiple_of(d) {
                *n /= d;
                e += 1;
            }
            out.push((d, e));
        }
    };
    take(&mut n, 2);
    take(&mut n, 3);
    let mut d = 5u64;
    while d <= n / d {
        take(&mut n, d);
        take(&mut n, d + 2);
        d += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

/// Möbius function μ(n).
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::Domain("μ(n) requires n >= 1".into()));
    }
    let factors = factorize(n)?;
    if factors.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if factors.len() % 2 == 0 { 1 } else { -1 })
}

/// Squarefree divisors `q` of `m` with sign (−1)^ω(q), sorted by `q`.
pub fn squarefree_divisor_signs(m: u64) -> Result<Vec<(u64, i8)>> {
    if m == 0 {
        return Err(Error::Domain("squarefree divisors require m >= 1".into()));
    }
    let mut divisors = vec![(1u64, 1i8)];
    for (p, _) in factorize(m)? {
        let extended: Vec<(u64, i8)> = divisors.iter().map(|&(q, s)| (q * p, -s)).collect();
        divisors.extend(extended);
    }
    divisors.sort_unstable_by_key(|&(q, _)| q);
    Ok(divisors)
}
