//! Brute-force oracle over boolean membership tables. Shares no code with
//! the library beyond the input types.
//!
//! Degree-`n` slices of `E* = (E - E1) ∩ (E - E2)` are computed as
//! `{β ≤ nd : β ∈ S, nd - β ∈ S'}`, where `S` and `S'` are the numerical
//! semigroups generated by `G_M \ {0}` and `(d - G_M) \ {0}`.

#![allow(dead_code)]

pub type Bits = Vec<bool>;

pub fn bits(d: u64, members: impl IntoIterator<Item = u64>) -> Bits {
    let mut b = vec![false; d as usize + 1];
    for x in members {
        b[x as usize] = true;
    }
    b
}

pub fn members(b: &[bool]) -> Vec<u64> {
    b.iter()
        .enumerate()
        .filter(|(_, &x)| x)
        .map(|(i, _)| i as u64)
        .collect()
}

pub fn sum(a: &[bool], b: &[bool]) -> Bits {
    let mut out = vec![false; a.len() + b.len() - 1];
    let bm = members(b);
    for (i, _) in a.iter().enumerate().filter(|(_, &x)| x) {
        for &j in &bm {
            out[i + j as usize] = true;
        }
    }
    out
}

pub fn nfold(g: &[bool], n: usize) -> Bits {
    let mut acc = vec![true];
    for _ in 0..n {
        acc = sum(&acc, g);
    }
    acc
}

/// Membership table of the numerical semigroup generated by the positive
/// members of `g`, on `[0, limit]`.
fn semigroup(g: &[bool], limit: usize) -> Bits {
    let gens: Vec<usize> = members(g)
        .into_iter()
        .filter(|&x| x > 0)
        .map(|x| x as usize)
        .collect();
    let mut s = vec![false; limit + 1];
    s[0] = true;
    for x in 1..=limit {
        s[x] = gens.iter().any(|&v| v <= x && s[x - v]);
    }
    s
}

pub struct Oracle {
    pub d: usize,
    pub g: Bits,
    s: Bits,
    s_dual: Bits,
    multiples: Vec<Bits>,
    stars: Vec<Bits>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub cm: bool,
    pub buchsbaum: bool,
    pub reg: usize,
    pub r_q: usize,
    pub r_q_star: usize,
    pub a_star: Option<usize>,
    pub length_h1: usize,
    pub g_n: Vec<u64>,
}

impl Oracle {
    pub fn new(d: u64, members: &[u64]) -> Self {
        let g = bits(d, members.iter().copied());
        assert!(g[0] && g[d as usize], "exponent set must contain 0 and d");
        let dual = bits(d, members.iter().map(|&x| d - x));
        let limit = 4 * (d as usize + 1);
        Oracle {
            d: d as usize,
            s: semigroup(&g, limit),
            s_dual: semigroup(&dual, limit),
            g,
            multiples: vec![vec![true]],
            stars: Vec::new(),
        }
    }

    fn ensure(&mut self, n: usize) {
        let need = n * self.d + 1;
        if need > self.s.len() {
            let limit = 2 * need;
            let dual: Bits = (0..=self.d).map(|x| self.g[self.d - x]).collect();
            self.s = semigroup(&self.g, limit);
            self.s_dual = semigroup(&dual, limit);
        }
        while self.multiples.len() <= n {
            let next = sum(self.multiples.last().unwrap(), &self.g);
            self.multiples.push(next);
        }
        while self.stars.len() <= n {
            let k = self.stars.len();
            let top = k * self.d;
            let slice = (0..=top)
                .map(|b| self.s[b] && self.s_dual[top - b])
                .collect();
            self.stars.push(slice);
        }
    }

    pub fn multiple(&mut self, n: usize) -> &Bits {
        self.ensure(n);
        &self.multiples[n]
    }

    pub fn star(&mut self, n: usize) -> &Bits {
        self.ensure(n);
        &self.stars[n]
    }

    /// `{0,d} + X`, as a table of length `len(X) + d`.
    fn q_span(&self, x: &[bool]) -> Bits {
        let mut out = vec![false; x.len() + self.d];
        for (i, _) in x.iter().enumerate().filter(|(_, &v)| v) {
            out[i] = true;
            out[i + self.d] = true;
        }
        out
    }

    /// Least `n` with `X_{n+1} = {0,d} + X_n` for `X = multiple` or `star`.
    fn reduction(&mut self, star: bool) -> usize {
        for n in 0.. {
            self.ensure(n + 1);
            let (lo, hi) = if star {
                (&self.stars[n], &self.stars[n + 1])
            } else {
                (&self.multiples[n], &self.multiples[n + 1])
            };
            if self.q_span(lo) == *hi {
                return n;
            }
        }
        unreachable!()
    }

    pub fn verdict(&mut self) -> OracleVerdict {
        let r_q = self.reduction(false);
        let r_q_star = self.reduction(true);
        // Equal slices at a degree past r_Q(R*) stay equal in every later degree.
        let mut a_star = None;
        let mut length_h1 = 0;
        let mut n = 0;
        loop {
            self.ensure(n);
            let excess = self.stars[n]
                .iter()
                .zip(&self.multiples[n])
                .filter(|(s, m)| **s && !**m)
                .count();
            assert!(
                self.multiples[n]
                    .iter()
                    .zip(&self.stars[n])
                    .all(|(m, s)| !*m || *s),
                "nG_M must lie inside the saturated slice"
            );
            if excess > 0 {
                a_star = Some(n);
                length_h1 += excess;
            } else if n >= r_q_star {
                break;
            }
            n += 1;
        }
        let mut buchsbaum = true;
        for k in 0..=a_star.unwrap_or(0) {
            let lifted = sum(&self.stars[k].clone(), &self.g);
            let target = self.multiple(k + 1).clone();
            if lifted.iter().zip(&target).any(|(l, t)| *l && !*t) {
                buchsbaum = false;
            }
        }
        let reg = match a_star {
            Some(a) => (a + 1).max(r_q_star),
            None => r_q_star,
        };
        let g_n = members(self.star(1));
        OracleVerdict {
            cm: a_star.is_none(),
            buchsbaum,
            reg,
            r_q,
            r_q_star,
            a_star,
            length_h1,
            g_n,
        }
    }
}

pub fn verdict(d: u64, members: &[u64]) -> OracleVerdict {
    Oracle::new(d, members).verdict()
}

/// `G_M` as members from an a-sequence `a_0 ≤ … ≤ a_{2r+1}`.
pub fn from_a_seq(a: &[u64]) -> Vec<u64> {
    a.chunks(2).flat_map(|p| p[0]..=p[1]).collect()
}

/// Prefix counts of a table, so `[u,v] ⊆ X` is a constant-time query.
pub struct Prefix(Vec<u32>);

impl Prefix {
    pub fn new(x: &[bool]) -> Self {
        let mut p = vec![0u32; x.len() + 1];
        for (i, &v) in x.iter().enumerate() {
            p[i + 1] = p[i] + v as u32;
        }
        Prefix(p)
    }

    pub fn covers(&self, u: usize, v: usize) -> bool {
        u > v || (v + 1 < self.0.len() && self.0[v + 1] - self.0[u] == (v - u + 1) as u32)
    }
}

/// Every subset of `[0,r]²` that is downward closed and transpose invariant.
pub fn brute_symmetric_ideals(r: usize) -> Vec<Vec<(usize, usize)>> {
    let side = r + 1;
    let mut out = Vec::new();
    for mask in 0u64..1 << (side * side) {
        let has = |i: usize, j: usize| mask >> (i * side + j) & 1 == 1;
        let ok = (0..side).all(|i| {
            (0..side).all(|j| {
                !has(i, j) || (has(j, i) && (i == 0 || has(i - 1, j)) && (j == 0 || has(i, j - 1)))
            })
        });
        if ok {
            let mut m: Vec<(usize, usize)> = (0..side)
                .flat_map(|i| (0..side).map(move |j| (i, j)))
                .filter(|&(i, j)| has(i, j))
                .collect();
            m.sort();
            out.push(m);
        }
    }
    out
}
