use crate::equilibrium::Layer;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Uniform-per-layer mesh of `[-b, ell]` with a node at the interface.
///
/// Unknowns are nodal values of continuous piecewise-linear functions that
/// vanish at `x3 = -b`. Degrees of freedom are interleaved per node, so for
/// `fields` unknown functions node `i >= 1` owns indices
/// `fields * (i - 1) .. fields * i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh1D<T> {
    nodes: Vec<T>,
    n_minus: usize,
    n_plus: usize,
}

/// One element of a [`Mesh1D`].
#[derive(Clone, Copy, Debug)]
pub struct Element<T> {
    pub left: usize,
    pub x0: T,
    pub x1: T,
    pub layer: Layer,
}

impl<T: Real> Element<T> {
    pub fn h(&self) -> T {
        self.x1 - self.x0
    }
}

/// Builds a mesh with `n_minus` elements on `[-b, 0]` and `n_plus` on `[0, ell]`.
pub fn build_mesh<T: Real>(b: T, ell: T, n_minus: usize, n_plus: usize) -> Result<Mesh1D<T>> {
    if n_minus < 2 || n_plus < 2 {
        return Err(Error::InvalidInput(format!(
            "element counts must be at least 2 per layer, got ({n_minus}, {n_plus})"
        )));
    }
    if !(b > T::zero()) || !(ell > T::zero()) {
        return Err(Error::InvalidInput("layer depths must be positive".into()));
    }
    let mut nodes = Vec::with_capacity(n_minus + n_plus + 1);
    for i in 0..n_minus {
        nodes.push(-b + b * T::of_usize(i) / T::of_usize(n_minus));
    }
    nodes.push(T::zero());
    for i in 1..=n_plus {
        nodes.push(ell * T::of_usize(i) / T::of_usize(n_plus));
    }
    nodes[n_minus + n_plus] = ell;
    Ok(Mesh1D {
        nodes,
        n_minus,
        n_plus,
    })
}

impl<T: Real> Mesh1D<T> {
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn counts(&self) -> (usize, usize) {
        (self.n_minus, self.n_plus)
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_elements(&self) -> usize {
        self.n_minus + self.n_plus
    }

    /// Index of the node at `x3 = 0`.
    pub fn interface_node(&self) -> usize {
        self.n_minus
    }

    pub fn top_node(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn element(&self, e: usize) -> Element<T> {
        Element {
            left: e,
            x0: self.nodes[e],
            x1: self.nodes[e + 1],
            layer: if e < self.n_minus {
                Layer::Lower
            } else {
                Layer::Upper
            },
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element<T>> + '_ {
        (0..self.n_elements()).map(|e| self.element(e))
    }

    /// Number of free unknowns for the `(phi, psi)` pair.
    pub fn dof_count(&self) -> usize {
        self.dof_count_for(2)
    }

    pub fn dof_count_for(&self, fields: usize) -> usize {
        fields * (self.nodes.len() - 1)
    }

    /// Index of `field` at `node` in a system with `fields` unknowns per
    /// node; `None` at the clamped bottom node.
    pub fn dof(&self, node: usize, field: usize, fields: usize) -> Option<usize> {
        (node > 0).then(|| fields * (node - 1) + field)
    }

    /// Nodal values of `field` (including the zero at `-b`).
    pub fn nodal(&self, v: &[T], field: usize, fields: usize) -> Vec<T> {
        assert_eq!(v.len(), self.dof_count_for(fields));
        (0..self.nodes.len())
            .map(|i| self.dof(i, field, fields).map_or(T::zero(), |d| v[d]))
            .collect()
    }

    /// Inverse of [`nodal`](Self::nodal) for several fields; values at `-b`
    /// are dropped.
    pub fn pack(&self, fields: &[&[T]]) -> Vec<T> {
        let nf = fields.len();
        let mut v = vec![T::zero(); self.dof_count_for(nf)];
        for (f, vals) in fields.iter().enumerate() {
            assert_eq!(vals.len(), self.nodes.len());
            for (i, &x) in vals.iter().enumerate().skip(1) {
                v[nf * (i - 1) + f] = x;
            }
        }
        v
    }

    pub fn phi(&self, v: &[T]) -> Vec<T> {
        self.nodal(v, 0, 2)
    }

    pub fn psi(&self, v: &[T]) -> Vec<T> {
        self.nodal(v, 1, 2)
    }
}
