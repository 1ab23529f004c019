//! Independent discretization of the NP operator on a spheroid.
//!
//! Product quadrature: Gauss–Legendre in the meridian angle `t` times the
//! trapezoid rule in the azimuth. The kernel
//! `<y - x, nu(y)> / (4 pi |x - y|^3)` is weakly singular; the diagonal is
//! replaced using Gauss's identity `K[1] = 1/2`, which removes the
//! leading singular error and keeps the constant eigenvector exact.
//! Rotational symmetry makes the matrix block circulant in the azimuth, so
//! its spectrum is the union of the spectra of one real block per Fourier
//! mode.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Schur};
use serde::Serialize;

use super::shape::SpheroidShape;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::specfun::gauss_legendre;

pub const NYSTROM_NODE_BUDGET: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NystromMesh {
    pub meridian: usize,
    pub azimuthal: usize,
}

impl NystromMesh {
    pub fn nodes(&self) -> usize {
        self.meridian * self.azimuthal
    }

    /// Mesh with about `nodes` points and twice as many azimuthal as
    /// meridian nodes.
    pub fn with_nodes(nodes: usize) -> Self {
        let meridian = ((nodes as f64 / 2.0).sqrt().floor() as usize).max(2);
        NystromMesh { meridian, azimuthal: (nodes / meridian).max(3) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NystromSpectrum {
    pub mesh: NystromMesh,
    /// Largest eigenvalues in decreasing order, with multiplicity.
    pub eigenvalues: Vec<f64>,
}

struct Node {
    r: f64,
    z: f64,
    // nu(y) dA(y) / (d phi) split into radial and axial parts
    flux_r: f64,
    flux_z: f64,
}

fn meridian_nodes(shape: &SpheroidShape, count: usize) -> Vec<Node> {
    let (a, c) = shape.semi_axes();
    let (x, w) = gauss_legendre(count);
    x.iter()
        .zip(&w)
        .map(|(&xi, &wi)| {
            let t = 0.5 * PI * (xi + 1.0);
            let dt = 0.5 * PI * wi;
            let (s, co) = t.sin_cos();
            // nu dA = (c sin t, a cos t) * a sin t dt dphi
            Node { r: a * s, z: c * co, flux_r: c * s * a * s * dt, flux_z: a * co * a * s * dt }
        })
        .collect()
}

/// Top `k` eigenvalues of the discretized NP operator.
pub fn nystrom_oracle(shape: &SpheroidShape, mesh: NystromMesh, k: usize, exec: Execution) -> Result<NystromSpectrum> {
    if mesh.nodes() > NYSTROM_NODE_BUDGET {
        return Err(Error::BudgetExceeded { nodes: mesh.nodes(), budget: NYSTROM_NODE_BUDGET });
    }
    if mesh.meridian < 2 || mesh.azimuthal < 3 {
        return Err(Error::InvalidArgument("mesh needs at least 2 x 3 nodes".into()));
    }
    let nodes = meridian_nodes(shape, mesh.meridian);
    let na = mesh.azimuthal;
    let dphi = 2.0 * PI / na as f64;
    let angles: Vec<(f64, f64)> = (0..na).map(|l| (l as f64 * dphi).sin_cos()).collect();

    // kernel[p][p' * na + l]: target (p, 0), source (p', l)
    let kernel: Vec<Vec<f64>> = exec.map_indices(nodes.len(), |p| {
        let x = &nodes[p];
        let mut row = vec![0.0; nodes.len() * na];
        for (q, y) in nodes.iter().enumerate() {
            for (l, &(sn, cs)) in angles.iter().enumerate() {
                if q == p && l == 0 {
                    continue;
                }
                let d = [y.r * cs - x.r, y.r * sn, y.z - x.z];
                let dist2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
                let flux = d[0] * y.flux_r * cs + d[1] * y.flux_r * sn + d[2] * y.flux_z;
                row[q * na + l] = flux * dphi / (4.0 * PI * dist2 * dist2.sqrt());
            }
        }
        let off: f64 = row.iter().sum();
        row[p * na] = 0.5 - off;
        row
    });

    let modes = na / 2 + 1;
    let size = nodes.len();
    let blocks = exec.try_map_indices(modes, |mode| {
        let phase: Vec<f64> = (0..na).map(|l| (2.0 * PI * (mode * l) as f64 / na as f64).cos()).collect();
        let block = DMatrix::from_fn(size, size, |p, q| {
            (0..na).map(|l| kernel[p][q * na + l] * phase[l]).sum::<f64>()
        });
        let schur = Schur::try_new(block, 1e-14, 10_000)
            .ok_or_else(|| Error::EigenSolveFailure(format!("Schur iteration failed for mode {mode}")))?;
        let multiplicity = if mode == 0 || 2 * mode == na { 1 } else { 2 };
        Ok(schur
            .complex_eigenvalues()
            .iter()
            .flat_map(|z| std::iter::repeat_n(z.re, multiplicity))
            .collect::<Vec<f64>>())
    })?;
    let mut all: Vec<f64> = blocks.into_iter().flatten().collect();
    all.sort_by(|a, b| b.total_cmp(a));
    all.truncate(k);
    Ok(NystromSpectrum { mesh, eigenvalues: all })
}
