use num_complex::Complex64;

use super::{ConeProblem, DiscreteMeasure};
use crate::error::Result;
use crate::kernels::ExtendedPoint;
use crate::linalg::{herm_eig, ComplexMatrix, HermitianMatrix};

/// Grid points within this distance of a cluster seed join the cluster.
pub const CLUSTER_RADIUS: f64 = 0.05;
/// Clusters lighter than this total trace are dropped.
pub const DUST_TRACE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct Cluster {
    /// Trace-weighted centroid; infinity for the cluster at infinity.
    pub center: ExtendedPoint,
    pub weight: HermitianMatrix,
    pub trace: f64,
    pub members: usize,
    /// Block of `weight` at the sample point 0, when 0 is sampled.
    pub origin_block: Option<ComplexMatrix>,
    pub origin_eigenvalues: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    /// Clusters by decreasing trace.
    pub clusters: Vec<Cluster>,
    /// With exactly two clusters and 0 sampled: largest of `||B_k^2 - B_k||`,
    /// `|tr B_k - 1|` and `||B_1 + B_2 - I||` over the origin blocks `B_k`.
    pub two_projection_deviation: Option<f64>,
}

/// Groups the measure's mass into clusters and compares with the two-projection form.
pub fn recover_structure(m: &DiscreteMeasure, problem: &ConeProblem) -> Result<StructureReport> {
    let mut order: Vec<usize> = (0..m.len()).filter(|&g| m.blocks()[g].trace() > 0.0).collect();
    order.sort_by(|&a, &b| m.blocks()[b].trace().total_cmp(&m.blocks()[a].trace()).then(a.cmp(&b)));

    let radius = CLUSTER_RADIUS * (1.0 + 1e-9);
    let mut seeds: Vec<ExtendedPoint> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for g in order {
        let p = m.grid()[g];
        match seeds.iter().position(|s| s.distance(&p) <= radius) {
            Some(k) => groups[k].push(g),
            None => {
                seeds.push(p);
                groups.push(vec![g]);
            }
        }
    }

    let n = problem.dim();
    let d = problem.block_dim();
    let origin = problem.sample_set().index_of(Complex64::new(0.0, 0.0));
    let mut clusters = Vec::new();
    for (seed, members) in seeds.iter().zip(&groups) {
        let mut weight = HermitianMatrix::zeros(n);
        let mut centroid = Complex64::new(0.0, 0.0);
        let mut trace = 0.0;
        for &g in members {
            let b = &m.blocks()[g];
            weight = &weight + b;
            trace += b.trace();
            if let Some(z) = m.grid()[g].as_disk() {
                centroid += z * b.trace();
            }
        }
        if trace < DUST_TRACE {
            continue;
        }
        let center = if seed.is_infinity() { ExtendedPoint::Infinity } else { ExtendedPoint::Disk(centroid / trace) };
        let origin_block = origin.map(|i| weight.block(i, i, d));
        let origin_eigenvalues = match &origin_block {
            Some(b) => Some(herm_eig(&HermitianMatrix::symmetrize(b)?)?.values),
            None => None,
        };
        clusters.push(Cluster { center, weight, trace, members: members.len(), origin_block, origin_eigenvalues });
    }

    let two_projection_deviation = match (clusters.as_slice(), origin) {
        ([a, b], Some(_)) => {
            let ba = a.origin_block.as_ref().expect("origin sampled");
            let bb = b.origin_block.as_ref().expect("origin sampled");
            let mut dev = (ba + bb).distance(&ComplexMatrix::identity(d));
            for blk in [ba, bb] {
                dev = dev.max(blk.matmul(blk).distance(blk));
                dev = dev.max((blk.trace().re - 1.0).abs());
            }
            Some(dev)
        }
        _ => None,
    };
    Ok(StructureReport { clusters, two_projection_deviation })
}
