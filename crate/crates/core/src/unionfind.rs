pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller root so every root is its class minimum.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Class index of every element, classes numbered in order of their smallest
    /// member, together with that member for each class.
    pub(crate) fn canonical_classes(&mut self) -> (Vec<usize>, Vec<usize>) {
        let n = self.parent.len();
        let mut number = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let mut classes = Vec::with_capacity(n);
        for x in 0..n {
            let r = self.find(x);
            if number[r] == usize::MAX {
                number[r] = reps.len();
                reps.push(r);
            }
            classes.push(number[r]);
        }
        (classes, reps)
    }
}
