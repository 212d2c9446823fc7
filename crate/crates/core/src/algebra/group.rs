use super::AlgebraError;

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Checks closure, associativity, identity and inverses.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        let n = labels.len();
        let bad = |msg: String| Err(AlgebraError::NotAGroup(msg));
        if n == 0 {
            return bad("empty group".into());
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return bad(format!("table must be {n}×{n}"));
        }
        if let Some((g, h)) = (0..n).flat_map(|g| (0..n).map(move |h| (g, h))).find(|&(g, h)| table[g][h] >= n) {
            return bad(format!("product {}·{} is outside the group", labels[g], labels[h]));
        }
        for g in 0..n {
            for h in 0..n {
                for l in 0..n {
                    if table[table[g][h]][l] != table[g][table[h][l]] {
                        return bad(format!("associativity fails on ({}, {}, {})", labels[g], labels[h], labels[l]));
                    }
                }
            }
        }
        let identity = match (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g)) {
            Some(e) => e,
            None => return bad("no identity element".into()),
        };
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity) {
                Some(h) => inverse.push(h),
                None => return bad(format!("{} has no inverse", labels[g])),
            }
        }
        Ok(FiniteGroup { labels, table, identity, inverse })
    }

    /// `ℤ/n` written additively with labels `0, 1, …`.
    pub fn cyclic(n: usize) -> Result<Self, AlgebraError> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table(labels, table)
    }

    /// The symmetric group on `n` letters, permutations in lexicographic order.
    pub fn symmetric(n: usize) -> Result<Self, AlgebraError> {
        let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &perms {
                for x in (0..n).filter(|x| !p.contains(x)) {
                    let mut q = p.clone();
                    q.push(x);
                    next.push(q);
                }
            }
            perms = next;
        }
        perms.sort();
        let pos = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("permutation");
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| pos(&(0..n).map(|i| p[q[i]]).collect())).collect())
            .collect();
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(""))
            .collect();
        Self::from_table(labels, table)
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self, AlgebraError> {
        let (m, n) = (a.order(), b.order());
        let labels = (0..m * n).map(|k| format!("({},{})", a.labels[k / n], b.labels[k % n])).collect();
        let table = (0..m * n)
            .map(|x| (0..m * n).map(|y| a.op(x / n, y / n) * n + b.op(x % n, y % n)).collect())
            .collect();
        Self::from_table(labels, table)
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn op(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|g| (0..g).all(|h| self.table[g][h] == self.table[h][g]))
    }
}
