"""Linear relations on C^n stored as graph subspaces of C^2n.

A relation generalizes an operator: its graph may be non-densely defined
or multivalued.  A graph element is written ``(x, x')`` with both halves
in C^n; the top n coordinates of the graph subspace hold ``x`` and the
bottom n hold ``x'``.  Adjoints, deficiency spaces and the skew-symmetry
and dissipativity predicates all reduce to subspace arithmetic on the
graph.

The inner product convention is fixed globally: conjugate-linear in the
SECOND argument, ``<a, b> = b^H a``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import subspace as sub
from .errors import AmbientMismatch, BadDimension, NotSkewSymmetric, NotSubgraph
from .sampling import random_unitary
from .subspace import Subspace

_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class Relation:
    """A linear relation on C^n, held as its graph subspace of C^2n."""

    space_dim: int
    graph: Subspace

    def __post_init__(self):
        if self.space_dim < 1:
            raise BadDimension("space dimension must be positive")
        if self.graph.ambient_dim != 2 * self.space_dim:
            raise AmbientMismatch(
                f"graph ambient dimension {self.graph.ambient_dim} is not "
                f"2 * {self.space_dim}"
            )

    @property
    def graph_dim(self) -> int:
        return self.graph.dim

    def blocks(self):
        """Top and bottom n-row blocks of the graph basis (X, X')."""
        n = self.space_dim
        return self.graph.basis[:n, :], self.graph.basis[n:, :]

    def __repr__(self):
        return f"Relation(space_dim={self.space_dim}, graph_dim={self.graph_dim})"


@dataclass(frozen=True)
class DeficiencyData:
    """The kernels g1 = ker(1 - T*) and g2 = ker(1 + T*) with their dimensions."""

    g1: Subspace
    g2: Subspace
    indices: tuple

    def __repr__(self):
        return f"DeficiencyData(indices={self.indices})"


def zero_relation(n: int) -> Relation:
    """The zero relation on C^n: graph {0} (empty domain, not the zero map)."""
    return Relation(n, sub.zero(2 * n))


def full_relation(n: int) -> Relation:
    """The relation whose graph is all of C^2n."""
    return Relation(n, sub.full(2 * n))


def from_graph(n: int, generators, tol: float = sub.RANK_TOL) -> Relation:
    """Relation with graph spanned by the given 2n-vectors."""
    return Relation(n, sub.span(generators, m=2 * n, tol=tol))


def from_operator(a, domain: Subspace) -> Relation:
    """The relation {(x, Ax) : x in domain} for a matrix A.

    ``domain`` is a subspace of C^n with n the matrix size.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise AmbientMismatch(f"matrix must be square, got {a.shape}")
    if domain.ambient_dim != n:
        raise AmbientMismatch(
            f"domain ambient dimension {domain.ambient_dim} does not match "
            f"matrix size {n}"
        )
    b = domain.basis
    return Relation(n, sub.span_matrix(np.vstack([b, a @ b])))


def domain(t: Relation) -> Subspace:
    """First-component projection of the graph."""
    x, _ = t.blocks()
    return sub.span_matrix(x) if t.graph_dim else sub.zero(t.space_dim)


def range_(t: Relation) -> Subspace:
    """Second-component projection of the graph."""
    _, xp = t.blocks()
    return sub.span_matrix(xp) if t.graph_dim else sub.zero(t.space_dim)


def kernel(t: Relation) -> Subspace:
    """{x : (x, 0) in graph}."""
    n = t.space_dim
    top = Subspace(2 * n, np.vstack([np.eye(n), np.zeros((n, n))]).astype(complex))
    inter = sub.intersect(t.graph, top)
    if inter.dim == 0:
        return sub.zero(n)
    return sub.span_matrix(inter.basis[:n, :])


def mul_part(t: Relation) -> Subspace:
    """{x' : (0, x') in graph}; trivial exactly when the relation is an operator."""
    n = t.space_dim
    bottom = Subspace(2 * n, np.vstack([np.zeros((n, n)), np.eye(n)]).astype(complex))
    inter = sub.intersect(t.graph, bottom)
    if inter.dim == 0:
        return sub.zero(n)
    return sub.span_matrix(inter.basis[n:, :])


def adjoint(t: Relation) -> Relation:
    """The adjoint relation T*.

    Graph(T*) is the orthogonal complement of J Graph(T) where
    J(x, x') = (-x', x); equivalently (y, y') belongs to Graph(T*) iff
    <x', y> = <x, y'> for every (x, x') in Graph(T).
    """
    x, xp = t.blocks()
    j_graph = sub.span_matrix(np.vstack([-xp, x])) if t.graph_dim else sub.zero(
        2 * t.space_dim
    )
    return Relation(t.space_dim, sub.orthocomplement(j_graph))


def negate(t: Relation) -> Relation:
    """The relation -T: second components of the graph flipped in sign."""
    x, xp = t.blocks()
    basis = np.vstack([x, -xp])
    return Relation(t.space_dim, Subspace(2 * t.space_dim, basis))


def _swap(s: Subspace, n: int) -> Subspace:
    basis = np.vstack([s.basis[n:, :], s.basis[:n, :]])
    return Subspace(2 * n, basis)


def neg_adjoint(t: Relation) -> Relation:
    """The relation -T*, computed as Swap(Graph(T)^perp).

    Swap exchanges the two component blocks; the identity
    Graph(-T*) = Swap(Graph(T)^perp) is the graph-level form of the
    adjoint and is verified in the tests against ``negate(adjoint(t))``.
    """
    return Relation(t.space_dim, _swap(sub.orthocomplement(t.graph), t.space_dim))


def omega_matrix(u_basis: np.ndarray, v_basis: np.ndarray, n: int) -> np.ndarray:
    """Matrix of the standard symmetric form over two graph bases.

    Entry (i, j) is Omega(u_i, v_j) = <x_i, y'_j> + <x'_i, y_j> for graph
    columns u_i = (x_i, x'_i) and v_j = (y_j, y'_j).
    """
    x, xp = u_basis[:n, :], u_basis[n:, :]
    y, yp = v_basis[:n, :], v_basis[n:, :]
    return (yp.conj().T @ x + y.conj().T @ xp).T


def is_skew_symmetric(t: Relation, tol: float = sub.ORTH_TOL) -> bool:
    """Whether the standard symmetric form vanishes on the graph.

    Equivalent to Graph(T) being contained in Graph(-T*).
    """
    if t.graph_dim == 0:
        return True
    m = omega_matrix(t.graph.basis, t.graph.basis, t.space_dim)
    return float(np.max(np.abs(m))) <= tol


def is_skew_self_adjoint(t: Relation, tol: float = sub.ORTH_TOL) -> bool:
    """Whether T = -T* as graphs."""
    return sub.equal(t.graph, neg_adjoint(t).graph, tol)


def is_dissipative(t: Relation, tol: float = sub.ORTH_TOL) -> bool:
    """Whether Re <x', x> <= tol for every (x, x') in the graph.

    The supremum over the graph is one Hermitian eigenproblem: with X, X'
    the graph basis blocks, the condition is that the largest eigenvalue
    of X'^H X + X^H X' is at most 2 tol.
    """
    if t.graph_dim == 0:
        return True
    x, xp = t.blocks()
    herm = xp.conj().T @ x + x.conj().T @ xp
    return float(np.max(np.linalg.eigvalsh(herm))) <= 2.0 * tol


def deficiency(t: Relation, tol: float = sub.ORTH_TOL) -> DeficiencyData:
    """Deficiency spaces g1 = ker(1 - T*), g2 = ker(1 + T*) of a
    skew-symmetric relation.

    g1 collects the x with (x, x) in Graph(T*), g2 those with (x, -x);
    both are first-component projections of intersections of Graph(T*)
    with the two diagonal subspaces.
    """
    if not is_skew_symmetric(t, tol):
        raise NotSkewSymmetric("deficiency spaces need a skew-symmetric relation")
    return _deficiency_of_adjoint(adjoint(t))


def _deficiency_of_adjoint(t_star: Relation) -> DeficiencyData:
    n = t_star.space_dim
    eye = np.eye(n, dtype=complex)
    diag_plus = Subspace(2 * n, np.vstack([eye, eye]) / _SQRT2)
    diag_minus = Subspace(2 * n, np.vstack([eye, -eye]) / _SQRT2)

    def first_components(s: Subspace) -> Subspace:
        if s.dim == 0:
            return sub.zero(n)
        return sub.span_matrix(s.basis[:n, :])

    g1 = first_components(sub.intersect(t_star.graph, diag_plus))
    g2 = first_components(sub.intersect(t_star.graph, diag_minus))
    return DeficiencyData(g1=g1, g2=g2, indices=(g1.dim, g2.dim))


def extends(t: Relation, s: Relation, tol: float = sub.ORTH_TOL) -> bool:
    """Whether T extends S, i.e. Graph(S) is contained in Graph(T)."""
    if t.space_dim != s.space_dim:
        raise AmbientMismatch("relations live on spaces of different dimensions")
    return sub.contains_subspace(t.graph, s.graph, tol)


def restrict_graph(t: Relation, g: Subspace, tol: float = sub.ORTH_TOL) -> Relation:
    """The relation with graph ``g``, required to sit inside Graph(T)."""
    if not sub.contains_subspace(t.graph, g, tol):
        raise NotSubgraph("subspace is not contained in the graph")
    return Relation(t.space_dim, g)


def random_skew_symmetric(n: int, k: int, seed: int) -> Relation:
    """Deterministic random skew-symmetric relation with graph dimension k.

    In the rotated coordinates a = (x + x')/sqrt(2), b = (x - x')/sqrt(2)
    the symmetric form becomes <a, c> - <b, d>, so its neutral subspaces
    are exactly graphs of isometries from a part of the a-coordinates into
    the b-coordinates.  The generator draws a random k-dimensional source
    frame and a random isometric image frame, then rotates back.
    """
    if n < 1:
        raise BadDimension("space dimension must be positive")
    if not 0 <= k <= n:
        raise BadDimension(f"graph dimension must satisfy 0 <= k <= n, got {k}")
    if k == 0:
        return zero_relation(n)
    rng = np.random.default_rng(seed)
    a_frame = random_unitary(n, rng)[:, :k]
    b_frame = random_unitary(n, rng)[:, :k]
    # columns (a_i, b_i)/sqrt(2) are orthonormal and neutral for the form
    x = (a_frame + b_frame) / _SQRT2
    xp = (a_frame - b_frame) / _SQRT2
    basis = np.vstack([x, xp]) / _SQRT2
    return Relation(n, Subspace(2 * n, basis))
