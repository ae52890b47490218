"""Numerically robust subspace arithmetic over the complex field.

A subspace of C^m is stored as an m-by-k matrix with orthonormal columns
(``k`` may be 0; the zero subspace is a first-class value).  All rank
decisions use singular values with a relative threshold, well conditioned
at the small ambient dimensions this package works at.  Values are
immutable and every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AmbientMismatch, EmptyAmbient, NotDirect, NotInSum

#: Default relative threshold for rank decisions (singular values below
#: RANK_TOL times the largest one are treated as zero).
RANK_TOL = 1e-10

#: Default tolerance for orthonormality/equality checks.
ORTH_TOL = 1e-9


def _as_matrix(vectors, m=None):
    """Stack a sequence of vectors into an m-by-N complex matrix."""
    cols = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
    if cols:
        lengths = {c.shape[0] for c in cols}
        if len(lengths) > 1:
            raise AmbientMismatch(f"vectors of unequal lengths {sorted(lengths)}")
        m = cols[0].shape[0] if m is None else m
        if cols[0].shape[0] != m:
            raise AmbientMismatch(
                f"vectors of length {cols[0].shape[0]} in ambient dimension {m}"
            )
        return np.column_stack(cols)
    if m is None:
        raise EmptyAmbient("empty span needs an explicit ambient dimension")
    return np.zeros((m, 0), dtype=complex)


@dataclass(frozen=True)
class Subspace:
    """A subspace of C^m, held as an orthonormal column basis.

    Attributes
    ----------
    ambient_dim : int
        The ambient dimension m (positive).
    basis : ndarray
        Complex m-by-k matrix with orthonormal columns; k is the dimension.
    """

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise EmptyAmbient("ambient dimension must be positive")
        b = np.asarray(self.basis, dtype=complex)
        if b.ndim != 2 or b.shape[0] != self.ambient_dim:
            raise AmbientMismatch(
                f"basis shape {b.shape} does not match ambient dimension "
                f"{self.ambient_dim}"
            )
        object.__setattr__(self, "basis", b)
        b.setflags(write=False)
        gram = b.conj().T @ b
        if gram.size and np.max(np.abs(gram - np.eye(b.shape[1]))) > ORTH_TOL:
            raise ValueError("basis columns are not orthonormal")

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def zero(m: int) -> Subspace:
    """The zero subspace {0} of C^m."""
    if m < 1:
        raise EmptyAmbient("ambient dimension must be positive")
    return Subspace(m, np.zeros((m, 0), dtype=complex))


def full(m: int) -> Subspace:
    """All of C^m."""
    if m < 1:
        raise EmptyAmbient("ambient dimension must be positive")
    return Subspace(m, np.eye(m, dtype=complex))


def span(vectors, m=None, tol: float = RANK_TOL) -> Subspace:
    """Closed span of a sequence of complex m-vectors.

    The dimension of the result is the numerical rank at relative
    tolerance ``tol``: singular values at or below ``tol`` times the
    largest singular value are discarded.

    Parameters
    ----------
    vectors : sequence of array_like
        Spanning vectors, all of equal length m >= 1.
    m : int, optional
        Ambient dimension; mandatory when ``vectors`` is empty.
    tol : float
        Relative rank threshold.
    """
    a = _as_matrix(vectors, m)
    if a.shape[0] == 0:
        raise EmptyAmbient("ambient dimension must be positive")
    return span_matrix(a, tol)


def _canonical_phases(b: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real positive.

    Kills the phase freedom SVD leaves per basis vector, which keeps
    one-dimensional results (and CLI output) in a predictable orientation.
    """
    if b.shape[1] == 0:
        return b
    idx = np.argmax(np.abs(b), axis=0)
    pivots = b[idx, np.arange(b.shape[1])]
    return b * (pivots.conj() / np.abs(pivots))


def span_matrix(a: np.ndarray, tol: float = RANK_TOL) -> Subspace:
    """Column span of a complex matrix (columns are the spanning vectors)."""
    a = np.asarray(a, dtype=complex)
    m = a.shape[0]
    if m == 0:
        raise EmptyAmbient("ambient dimension must be positive")
    if a.shape[1] == 0 or not np.any(a):
        return zero(m)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    rank = int(np.sum(s > tol * s[0]))
    return Subspace(m, _canonical_phases(u[:, :rank]))


def orthocomplement(s: Subspace) -> Subspace:
    """The orthogonal complement of a subspace.

    Always satisfies ``dim(s) + dim(result) == ambient_dim``.
    """
    m, k = s.ambient_dim, s.dim
    if k == 0:
        return full(m)
    u, _, _ = np.linalg.svd(s.basis, full_matrices=True)
    return Subspace(m, _canonical_phases(u[:, k:]))


def sum_of(s: Subspace, t: Subspace, tol: float = RANK_TOL) -> Subspace:
    """The subspace sum S + T."""
    _check_same_ambient(s, t)
    return span_matrix(np.hstack([s.basis, t.basis]), tol)


def intersect(s: Subspace, t: Subspace, tol: float = RANK_TOL) -> Subspace:
    """The intersection S `intersect` T, computed as the complement of
    the sum of the complements."""
    _check_same_ambient(s, t)
    return orthocomplement(sum_of(orthocomplement(s), orthocomplement(t), tol))


def project(s: Subspace, v) -> np.ndarray:
    """Orthogonal projection of a vector onto the subspace."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.shape[0] != s.ambient_dim:
        raise AmbientMismatch(
            f"vector of length {v.shape[0]} in ambient dimension {s.ambient_dim}"
        )
    return s.basis @ (s.basis.conj().T @ v)


def contains(s: Subspace, v, tol: float = ORTH_TOL) -> bool:
    """Whether a vector lies in the subspace.

    True iff the distance from ``v`` to its orthogonal projection onto
    ``s`` is at most ``tol * norm(v)``.
    """
    v = np.asarray(v, dtype=complex).reshape(-1)
    return float(np.linalg.norm(v - project(s, v))) <= tol * float(np.linalg.norm(v))


def contains_subspace(s: Subspace, t: Subspace, tol: float = ORTH_TOL) -> bool:
    """Whether every basis vector of ``t`` lies in ``s``."""
    _check_same_ambient(s, t)
    return all(contains(s, t.basis[:, j], tol) for j in range(t.dim))


def equal(s: Subspace, t: Subspace, tol: float = ORTH_TOL) -> bool:
    """Subspace equality by mutual containment of bases."""
    _check_same_ambient(s, t)
    if s.dim != t.dim:
        return False
    return contains_subspace(s, t, tol) and contains_subspace(t, s, tol)


def distance(s: Subspace, t: Subspace) -> float:
    """Gap metric between subspaces: the 2-norm of the difference of the
    orthogonal projectors (the sine of the largest principal angle when
    dimensions agree; 1.0 when they differ)."""
    _check_same_ambient(s, t)
    ps = s.basis @ s.basis.conj().T
    pt = t.basis @ t.basis.conj().T
    d = ps - pt
    if d.size == 0:
        return 0.0
    return float(np.linalg.norm(d, 2))


def oblique_project(parts, v, tol: float = ORTH_TOL):
    """Decompose a vector along a direct sum of subspaces.

    Given independent ``parts`` (their dimensions sum to the dimension of
    their subspace sum) and a vector ``v`` in that sum, returns the unique
    components ``v_j`` with ``v = sum v_j`` and ``v_j`` in part j.  The
    components are found by one least-squares solve against the
    concatenated bases.

    Raises
    ------
    NotDirect
        If the parts overlap (dimension count fails).
    NotInSum
        If the least-squares residual exceeds ``tol * norm(v)``.
    """
    parts = list(parts)
    if not parts:
        raise NotDirect("need at least one part")
    m = parts[0].ambient_dim
    for p in parts:
        if p.ambient_dim != m:
            raise AmbientMismatch("parts live in different ambient dimensions")
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.shape[0] != m:
        raise AmbientMismatch(f"vector of length {v.shape[0]} in ambient dimension {m}")

    dims = [p.dim for p in parts]
    total = sum(dims)
    stacked = np.hstack([p.basis for p in parts])
    if span_matrix(stacked).dim != total:
        raise NotDirect(f"parts overlap: dimensions {dims} do not sum directly")

    if total == 0:
        if float(np.linalg.norm(v)) > tol * max(1.0, float(np.linalg.norm(v))):
            raise NotInSum("nonzero vector in the zero sum")
        return [np.zeros(m, dtype=complex) for _ in parts]

    coeffs, _, _, _ = np.linalg.lstsq(stacked, v, rcond=None)
    residual = float(np.linalg.norm(stacked @ coeffs - v))
    if residual > tol * float(np.linalg.norm(v)):
        raise NotInSum(
            f"vector is not in the sum of the parts (residual {residual:.3e})"
        )
    out = []
    offset = 0
    for p, k in zip(parts, dims):
        out.append(p.basis @ coeffs[offset : offset + k])
        offset += k
    return out


def _check_same_ambient(s: Subspace, t: Subspace):
    if s.ambient_dim != t.ambient_dim:
        raise AmbientMismatch(
            f"ambient dimensions differ: {s.ambient_dim} != {t.ambient_dim}"
        )
