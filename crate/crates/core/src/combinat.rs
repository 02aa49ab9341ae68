//! Enumeration helpers: permutations, multiset permutations and set
//! partitions as restricted-growth strings.

/// All permutations of `0..n` in Heap's-algorithm order.
pub fn heap_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Steps `v` to its lexicographic successor; returns `false` (leaving `v`
/// sorted ascending) after the last arrangement. Repeated values are visited
/// once per distinct arrangement.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Restricted-growth strings of length `n` using exactly `blocks` block labels:
/// `a[0] = 0` and `a[i] <= 1 + max(a[..i])`. Each corresponds to one set
/// partition of `{0, .., n-1}` into `blocks` nonempty blocks, in lexicographic
/// order.
#[derive(Clone, Debug)]
pub struct RestrictedGrowth {
    n: usize,
    blocks: usize,
    a: Vec<usize>,
    started: bool,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize, blocks: usize) -> Self {
        let done = blocks > n || (blocks == 0 && n > 0);
        let mut a = vec![0usize; n];
        // lexicographically first string with `blocks` labels: 0..0,1,2,..
        if !done && blocks > 0 {
            for (slot, label) in a[n - blocks + 1..].iter_mut().zip(1..) {
                *slot = label;
            }
        }
        RestrictedGrowth {
            n,
            blocks,
            a,
            started: false,
            done,
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.n;
        if n == 0 {
            return false;
        }
        // prefix maxima
        let mut maxes = vec![0usize; n];
        for i in 1..n {
            maxes[i] = maxes[i - 1].max(self.a[i - 1]);
        }
        for i in (1..n).rev() {
            let cap = (maxes[i] + 1).min(self.blocks - 1);
            if self.a[i] < cap {
                self.a[i] += 1;
                // the prefix was feasible before the increment, so it still is;
                // fill the tail minimally while still reaching `blocks` labels
                let mut m = maxes[i].max(self.a[i]);
                for j in i + 1..n {
                    let remaining = n - j;
                    if self.blocks - 1 - m >= remaining {
                        m += 1;
                        self.a[j] = m;
                    } else {
                        self.a[j] = 0;
                    }
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.a.clone());
        }
        if self.advance() {
            Some(self.a.clone())
        } else {
            self.done = true;
            None
        }
    }
}

/// Stirling number of the second kind, saturating.
pub fn stirling2(n: usize, k: usize) -> u128 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = row[j].saturating_mul(j as u128).saturating_add(row[j - 1]);
        }
        row[0] = 0;
    }
    row[k]
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, x| acc.saturating_mul(x))
}
