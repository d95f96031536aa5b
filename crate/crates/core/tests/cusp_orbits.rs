//! Cusps of X0(N) recounted by brute force: the cosets of Gamma0(N) in
//! SL2(Z) are the points (c : d) of P1(Z/N), and the cusps are the orbits
//! of `(c : d) -> (c : c + d)`. An orbit's size is the width of its cusp,
//! and its level is `gcd(c, N)`.

use std::collections::BTreeMap;

use modunits_core::arith::{euler_phi, gcd};
use modunits_core::cusps;

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (big, small) = if self.size[a] >= self.size[b] { (a, b) } else { (b, a) };
            self.parent[small] = big;
            self.size[big] += self.size[small];
        }
    }
}

/// A generating set of `(Z/n)^x`.
fn unit_generators(n: u64) -> Vec<u64> {
    let mut gens = Vec::new();
    let mut subgroup = vec![false; n as usize];
    subgroup[(1 % n) as usize] = true;
    for u in 1..n {
        if gcd(u, n) != 1 || subgroup[u as usize] {
            continue;
        }
        gens.push(u);
        let mut stack: Vec<u64> = (0..n).filter(|&x| subgroup[x as usize]).collect();
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = x * g % n;
                if !subgroup[y as usize] {
                    subgroup[y as usize] = true;
                    stack.push(y);
                }
            }
        }
    }
    gens
}

/// `level -> widths of the orbits of that level`.
fn orbits(n: u64) -> BTreeMap<u64, Vec<u64>> {
    let idx = |c: u64, d: u64| (c * n + d) as usize;
    let valid = |c: u64, d: u64| gcd(gcd(c, d), n) == 1;
    let mut uf = UnionFind::new((n * n) as usize);
    let gens = unit_generators(n);
    for c in 0..n {
        for d in 0..n {
            if !valid(c, d) {
                continue;
            }
            uf.union(idx(c, d), idx(c, (c + d) % n));
            for &u in &gens {
                uf.union(idx(c, d), idx(u * c % n, u * d % n));
            }
        }
    }
    let scalars = euler_phi(n) as usize;
    let mut out: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for c in 0..n {
        for d in 0..n {
            if valid(c, d) && uf.find(idx(c, d)) == idx(c, d) {
                let width = uf.size[idx(c, d)] / scalars;
                out.entry(gcd(c, n)).or_default().push(width as u64);
            }
        }
    }
    out
}

fn index(n: u64) -> u64 {
    let mut out = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out = out / p * (p + 1);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out = out / m * (m + 1);
    }
    out
}

#[test]
fn cusp_data_matches_orbit_count() {
    for n in 1..=200u64 {
        let brute = orbits(n);
        let cs = cusps(n);
        assert_eq!(brute.len(), cs.len(), "N={n}: levels");
        for c in &cs {
            let widths = &brute[&c.level];
            assert_eq!(widths.len() as u64, c.degree, "N={n} level {}", c.level);
            assert!(widths.iter().all(|&w| w == c.width), "N={n} level {}: {widths:?} vs {}", c.level, c.width);
        }
        let total: u64 = cs.iter().map(|c| c.degree * c.width).sum();
        assert_eq!(total, index(n), "N={n}");
    }
}
