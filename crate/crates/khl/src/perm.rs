//! Small symmetric-group utilities: signs, cycles, powers, and adjacent-
//! transposition words for permutations of {0, .., n-1}.

use itertools::Itertools;

/// A permutation stored by images: `self.0[i]` is σ(i).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Perm {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i, j);
        Perm(v)
    }

    /// The adjacent transposition s_i = (i, i+1).
    pub fn adjacent(n: usize, i: usize) -> Perm {
        Perm::transposition(n, i, i + 1)
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Perm {
        let mut v: Vec<usize> = (0..n).collect();
        for c in cycles {
            for w in c.windows(2) {
                v[w[0]] = w[1];
            }
            if c.len() > 1 {
                v[c[c.len() - 1]] = c[0];
            }
        }
        Perm(v)
    }

    /// (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x] = i;
        }
        Perm(v)
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut out = Perm::identity(self.n());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn sign(&self) -> i32 {
        let mut seen = vec![false; self.n()];
        let mut sign = 1;
        for i in 0..self.n() {
            if seen[i] {
                continue;
            }
            let mut j = i;
            let mut len = 0;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for i in 0..self.n() {
            if seen[i] {
                continue;
            }
            let mut c = Vec::new();
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                c.push(j);
                j = self.0[j];
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Cycle lengths, descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &x)| *i == x).count()
    }

    /// All n! permutations, ordered lexicographically by image word.
    pub fn all(n: usize) -> Vec<Perm> {
        (0..n).permutations(n).map(Perm).collect()
    }

    /// A word w so that σ = s_{w[0]} ∘ s_{w[1]} ∘ … (adjacent
    /// transpositions, leftmost applied last).
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut a = self.0.clone();
        let mut rec = Vec::new();
        loop {
            let Some(i) = (0..a.len().saturating_sub(1)).find(|&i| a[i] > a[i + 1]) else {
                break;
            };
            a.swap(i, i + 1);
            rec.push(i);
        }
        rec.reverse();
        rec
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let s = Perm::adjacent(3, 0); // (0 1)
        let t = Perm::adjacent(3, 1); // (1 2)
        let st = s.compose(&t); // first t, then s: 0->1, 1->2->... check below
        assert_eq!(st.0, vec![1, 2, 0]);
        assert_eq!(st.compose(&st.inverse()), Perm::identity(3));
        assert_eq!(st.sign(), 1);
        assert_eq!(s.sign(), -1);
    }

    #[test]
    fn cycle_structure() {
        let p = Perm::from_cycles(5, &[vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(p.cycle_count(), 2);
        assert_eq!(p.cycle_type(), vec![3, 2]);
        assert_eq!(p.fixed_points(), 0);
        assert_eq!(p.pow(6), Perm::identity(5));
        assert_eq!(p.pow(3).fixed_points(), 3);
    }

    #[test]
    fn all_permutations() {
        let ps = Perm::all(3);
        assert_eq!(ps.len(), 6);
        assert_eq!(ps[0], Perm::identity(3));
        assert_eq!(ps.iter().filter(|p| p.sign() == 1).count(), 3);
    }

    #[test]
    fn adjacent_words_recompose() {
        for p in Perm::all(4) {
            let w = p.adjacent_word();
            let mut q = Perm::identity(4);
            for &i in &w {
                q = q.compose(&Perm::adjacent(4, i));
            }
            assert_eq!(q, p, "word {:?}", w);
            assert_eq!(p.sign(), if w.len() % 2 == 0 { 1 } else { -1 });
        }
    }
}
