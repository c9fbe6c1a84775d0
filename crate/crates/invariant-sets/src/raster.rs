//! Connected components of boolean rasters (4-adjacency, union-find).

#[derive(Clone, Debug)]
struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut k: usize) -> usize {
        while self.parent[k] != k {
            self.parent[k] = self.parent[self.parent[k]];
            k = self.parent[k];
        }
        k
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub pixels: usize,
    /// Mean pixel position `(column, row)`.
    pub centroid: (f64, f64),
    /// Inclusive `(min column, min row, max column, max row)`.
    pub bbox: (usize, usize, usize, usize),
}

#[derive(Clone, Debug)]
pub struct Labels {
    pub width: usize,
    pub height: usize,
    /// Component index per pixel, numbered in raster scan order of first pixel.
    pub labels: Vec<Option<u32>>,
    pub components: Vec<Component>,
}

impl Labels {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn at(&self, i: usize, j: usize) -> Option<u32> {
        self.labels[j * self.width + i]
    }
}

/// Labels the 4-connected components of `mask` (row-major, `width` columns).
pub fn label_components(mask: &[bool], width: usize, height: usize) -> Labels {
    assert_eq!(mask.len(), width * height);
    let mut uf = UnionFind::new(mask.len());
    for j in 0..height {
        for i in 0..width {
            let k = j * width + i;
            if !mask[k] {
                continue;
            }
            if i + 1 < width && mask[k + 1] {
                uf.union(k, k + 1);
            }
            if j + 1 < height && mask[k + width] {
                uf.union(k, k + width);
            }
        }
    }
    let mut root_label = vec![u32::MAX; mask.len()];
    let mut labels = vec![None; mask.len()];
    let mut acc: Vec<(usize, f64, f64, (usize, usize, usize, usize))> = Vec::new();
    for j in 0..height {
        for i in 0..width {
            let k = j * width + i;
            if !mask[k] {
                continue;
            }
            let r = uf.find(k);
            if root_label[r] == u32::MAX {
                root_label[r] = acc.len() as u32;
                acc.push((0, 0.0, 0.0, (i, j, i, j)));
            }
            let l = root_label[r];
            labels[k] = Some(l);
            let a = &mut acc[l as usize];
            a.0 += 1;
            a.1 += i as f64;
            a.2 += j as f64;
            a.3 = (a.3 .0.min(i), a.3 .1.min(j), a.3 .2.max(i), a.3 .3.max(j));
        }
    }
    let components = acc
        .into_iter()
        .map(|(n, si, sj, bbox)| Component { pixels: n, centroid: (si / n as f64, sj / n as f64), bbox })
        .collect();
    Labels { width, height, labels, components }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_pixels_are_separate() {
        let m = [true, false, false, true];
        assert_eq!(label_components(&m, 2, 2).count(), 2);
    }

    #[test]
    fn u_shape_is_one_component() {
        #[rustfmt::skip]
        let m = [
            true, false, true,
            true, false, true,
            true, true,  true,
        ];
        let l = label_components(&m, 3, 3);
        assert_eq!(l.count(), 1);
        assert_eq!(l.components[0].pixels, 7);
        assert_eq!(l.components[0].bbox, (0, 0, 2, 2));
    }
}
