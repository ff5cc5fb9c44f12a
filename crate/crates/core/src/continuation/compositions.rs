use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

/// Weak composition `k_2 + ... + k_l = k` of a non-negative integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
    total: u32,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        let total = parts.iter().sum();
        Composition { parts, total }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    /// `k! / (k_2! ... k_l!)`, exact.
    pub fn multinomial(&self) -> BigUint {
        multinomial(&self.parts)
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }
}

pub fn multinomial(parts: &[u32]) -> BigUint {
    let mut acc = BigUint::one();
    let mut filled = 0u32;
    for &part in parts {
        for j in 1..=part {
            filled += 1;
            acc *= filled;
            acc /= j;
        }
    }
    acc
}

/// All weak compositions of `total` into `parts_count` parts, lexicographic.
#[derive(Clone, Debug)]
pub struct Compositions {
    current: Option<Vec<u32>>,
    total: u32,
}

pub fn compositions(total: u32, parts_count: usize) -> Compositions {
    assert!(parts_count >= 1, "at least one part");
    let mut first = alloc::vec![0u32; parts_count];
    first[parts_count - 1] = total;
    Compositions {
        current: Some(first),
        total,
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.current.take()?;
        let out = Composition {
            parts: cur.clone(),
            total: self.total,
        };
        let mut next = cur;
        let last = next.len() - 1;
        let mut suffix = next[last];
        let mut j = last;
        while j > 0 {
            j -= 1;
            if suffix > 0 {
                next[j] += 1;
                for v in &mut next[j + 1..] {
                    *v = 0;
                }
                next[last] = suffix - 1;
                self.current = Some(next);
                break;
            }
            suffix += next[j];
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn collect(total: u32, parts: usize) -> Vec<Vec<u32>> {
        compositions(total, parts).map(Composition::into_parts).collect()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1u64, |acc, j| acc * (n - j) / (j + 1))
    }

    #[test]
    fn small_cases() {
        assert_eq!(collect(0, 3), vec![vec![0, 0, 0]]);
        assert_eq!(collect(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(collect(4, 1), vec![vec![4]]);
    }

    #[test]
    fn counts_match_stars_and_bars() {
        // Brute force: every vector in [0, k]^parts with the right sum.
        for parts in 1..=4usize {
            for k in 0..=5u32 {
                let mut brute = Vec::new();
                let mut v = vec![0u32; parts];
                loop {
                    if v.iter().sum::<u32>() == k {
                        brute.push(v.clone());
                    }
                    let mut i = parts;
                    loop {
                        if i == 0 {
                            break;
                        }
                        i -= 1;
                        if v[i] < k {
                            v[i] += 1;
                            break;
                        }
                        v[i] = 0;
                    }
                    if v.iter().all(|&x| x == 0) {
                        break;
                    }
                }
                brute.sort();
                let got = collect(k, parts);
                assert_eq!(got, brute, "k={k} parts={parts}");
                assert_eq!(got.len() as u64, binomial(k as u64 + parts as u64 - 1, parts as u64 - 1));
            }
        }
        assert_eq!(collect(3, 4).len(), 20);
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[1, 1]), BigUint::from(2u32));
        assert_eq!(multinomial(&[2, 1, 1]), BigUint::from(12u32));
        assert_eq!(multinomial(&[0, 0]), BigUint::from(1u32));
        // sum over compositions of k into p parts equals p^k
        let total: BigUint = compositions(6, 3).map(|c| c.multinomial()).sum();
        assert_eq!(total, BigUint::from(729u32));
    }
}
