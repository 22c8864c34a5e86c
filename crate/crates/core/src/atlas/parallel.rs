//! Parallelism classes of Weyl chambers (chambers at infinity).
//!
//! All chambers of one direction inside one chart are parallel, so a class
//! is a set of `(chart, direction)` nodes. Two nodes are joined when a gluing
//! region contains a sub-chamber of that direction.

use super::{AtlasSpace, ChartId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChamberNode {
    pub chart: ChartId,
    pub direction: usize,
}

#[derive(Debug, Clone)]
pub struct ParallelismClasses {
    order: usize,
    class_of: Vec<usize>,
    members: Vec<Vec<ChamberNode>>,
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

impl ParallelismClasses {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn class(&self, node: ChamberNode) -> usize {
        self.class_of[node.chart.0 * self.order + node.direction]
    }

    pub fn members(&self, class: usize) -> &[ChamberNode] {
        &self.members[class]
    }

    /// Charts holding a chamber of the class.
    pub fn charts(&self, class: usize) -> Vec<ChartId> {
        let mut c: Vec<ChartId> = self.members[class].iter().map(|n| n.chart).collect();
        c.dedup();
        c
    }

    /// Whether some single chart contains chambers of both classes.
    pub fn covered(&self, a: usize, b: usize) -> bool {
        let ca = self.charts(a);
        self.charts(b).iter().any(|c| ca.contains(c))
    }

    /// Number of unordered pairs of distinct classes sharing a chart.
    pub fn covered_pair_count(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        for here in self.class_of.chunks(self.order) {
            let mut here = here.to_vec();
            here.sort_unstable();
            here.dedup();
            for (i, &a) in here.iter().enumerate() {
                for &b in &here[i + 1..] {
                    seen.insert((a, b));
                }
            }
        }
        seen.len()
    }
}

impl AtlasSpace {
    pub fn parallelism_classes(&self) -> ParallelismClasses {
        let rs = self.root_system();
        let order = rs.order();
        let total = self.chart_count() * order;
        let mut parent: Vec<usize> = (0..total).collect();
        for g in self.gluings() {
            for w in 0..order {
                if !g.region.recession_contains(rs, w) {
                    continue;
                }
                let a = g.from.0 * order + w;
                let b = g.to.0 * order + rs.compose(g.map.weyl, w);
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut class_of = vec![usize::MAX; total];
        let mut members: Vec<Vec<ChamberNode>> = Vec::new();
        let mut root_class = vec![usize::MAX; total];
        for i in 0..total {
            let r = find(&mut parent, i);
            if root_class[r] == usize::MAX {
                root_class[r] = members.len();
                members.push(Vec::new());
            }
            class_of[i] = root_class[r];
            members[root_class[r]].push(ChamberNode {
                chart: ChartId(i / order),
                direction: i % order,
            });
        }
        ParallelismClasses {
            order,
            class_of,
            members,
        }
    }
}
