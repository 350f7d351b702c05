/// A permutation of `0..n`, stored by images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images
                .iter()
                .all(|&i| i < seen.len() && !std::mem::replace(&mut seen[i], true))
        });
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Disjoint cycles, each starting at its smallest point, ordered by
    /// that point. Fixed points are length-1 cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.images.len()];
        let mut count = 0;
        for start in 0..self.images.len() {
            if !seen[start] {
                count += 1;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    i = self.images[i];
                }
            }
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_of_small_permutation() {
        let p = Permutation::from_images(vec![1, 2, 0, 4, 3, 5]);
        assert_eq!(p.cycles(), vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
        assert_eq!(p.cycle_count(), 3);
        assert_eq!(p.apply(2), 0);
    }
}
