//! Exact dense linear algebra over prime fields: rank, row echelon form,
//! and membership reduction.  Plain fraction-free Gaussian elimination; for
//! p = 2 rows are packed into machine words.

/// Row echelon basis of a subspace of `F_p^n`: rows are reduced, each with a
/// leading pivot column, pivots strictly increasing.
#[derive(Debug, Clone)]
pub struct Echelon {
    p: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

impl Echelon {
    pub fn new(p: u64, cols: usize) -> Self {
        Echelon {
            p,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `v` in place against the echelon rows; afterwards `v` has
    /// zeros in all pivot columns.
    pub fn reduce(&self, v: &mut [u64]) {
        debug_assert_eq!(v.len(), self.cols);
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv] % self.p;
            if c != 0 {
                let f = self.p - c;
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = (*vi + f * ri) % self.p;
                }
            }
        }
    }

    /// Inserts `v` if independent of the current rows.  Returns true when
    /// the rank grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        for x in v.iter_mut() {
            *x %= self.p;
        }
        self.reduce(&mut v);
        let piv = match v.iter().position(|&x| x != 0) {
            Some(i) => i,
            None => return false,
        };
        let inv = inv_mod(v[piv], self.p);
        for x in v.iter_mut() {
            *x = *x * inv % self.p;
        }
        // Back-substitute into existing rows to keep the form reduced.
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                let f = self.p - c;
                for (ri, vi) in row.iter_mut().zip(&v) {
                    *ri = (*ri + f * vi) % self.p;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < piv);
        self.pivots.insert(at, piv);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        for x in w.iter_mut() {
            *x %= self.p;
        }
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the echelon rows, or None when not a member.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        let mut w = v.to_vec();
        for x in w.iter_mut() {
            *x %= self.p;
        }
        let mut coords = vec![0u64; self.rows.len()];
        for (i, (row, &piv)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = w[piv] % self.p;
            if c != 0 {
                coords[i] = c;
                let f = self.p - c;
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi = (*wi + f * ri) % self.p;
                }
            }
        }
        if w.iter().all(|&x| x == 0) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }
}

/// Rank of a list of vectors over `F_p`.  Uses word-packed elimination for
/// p = 2 and plain elimination otherwise.
pub fn rank(p: u64, cols: usize, vectors: &[Vec<u64>]) -> usize {
    if vectors.is_empty() || cols == 0 {
        return 0;
    }
    if p == 2 {
        return rank_mod2(cols, vectors);
    }
    let mut ech = Echelon::new(p, cols);
    for v in vectors {
        ech.insert(v.clone());
    }
    ech.rank()
}

fn rank_mod2(cols: usize, vectors: &[Vec<u64>]) -> usize {
    let words = cols.div_ceil(64);
    let mut pivots: Vec<Vec<u64>> = Vec::new(); // packed rows, pivot column recorded separately
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for v in vectors {
        let mut row = vec![0u64; words];
        for (j, &x) in v.iter().enumerate() {
            if x % 2 == 1 {
                row[j / 64] |= 1 << (j % 64);
            }
        }
        for (pr, &pc) in pivots.iter().zip(&pivot_cols) {
            if row[pc / 64] >> (pc % 64) & 1 == 1 {
                for (a, b) in row.iter_mut().zip(pr) {
                    *a ^= b;
                }
            }
        }
        if let Some(w) = row.iter().position(|&x| x != 0) {
            let bit = row[w].trailing_zeros() as usize;
            pivot_cols.push(w * 64 + bit);
            pivots.push(row);
            r += 1;
        }
    }
    r
}
