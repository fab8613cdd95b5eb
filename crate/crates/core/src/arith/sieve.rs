//! Linear sieve of smallest prime factors.

/// Smallest-prime-factor table for `1..=n`, built in linear time.
#[derive(Clone, Debug)]
pub struct Sieve {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl Sieve {
    pub fn new(n: usize) -> Self {
        assert!(n < u32::MAX as usize, "sieve limit exceeds u32 range");
        let mut spf = vec![0u32; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            for &p in &primes {
                let m = i * p as usize;
                if p > spf[i] || m > n {
                    break;
                }
                spf[m] = p;
            }
        }
        Self { spf, primes }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf[n as usize] as u64 == n
    }

    /// Prime factorization `[(p, e)]` with increasing `p`; empty for `n = 1`.
    pub fn factorize(&self, n: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut m = n as usize;
        while m > 1 {
            let p = self.spf[m] as usize;
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        out
    }

    /// Divisors of `n` in increasing order.
    pub fn divisors(&self, n: u64) -> Vec<u64> {
        let mut divs = vec![1u64];
        for (p, e) in self.factorize(n) {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorizations() {
        let s = Sieve::new(100);
        assert!(s.factorize(1).is_empty());
        assert_eq!(s.factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(s.factorize(97), vec![(97, 1)]);
        assert_eq!(s.divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(s.primes().len(), 25);
    }
}
