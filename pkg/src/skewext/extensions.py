"""Extension parametrizations for skew-symmetric relations.

Two classical bijections are implemented side by side and bridged:

* ``system_unitary_extension`` builds the skew-self-adjoint restrictions of H0*
  from unitaries L: G1 -> G2 using a boundary system (the extensions live
  INSIDE Graph(H0*)).
* ``triplet_unitary_extension`` builds the skew-self-adjoint extensions of H0
  from unitaries on G using a boundary triplet (the extensions are
  restrictions of -H0*, so their graphs are sign-flipped portions of
  Graph(H0*)).

The two families sit on opposite sides of the sign involution H -> -H;
``bridge_check`` verifies the identity connecting them through a reference
unitary L0.  Maximal dissipative extensions are parametrized by
contractions on G via the boundary-value quotient map
(``boundary_contraction_of`` / ``extension_from_contraction``), with
unitarity of the contraction equivalent to skew-self-adjointness of the
extension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import relation as rel
from . import subspace as sub
from .boundary import (
    BoundarySystem,
    BoundaryTriplet,
    canonical_decomposition,
    canonical_system,
    system_to_triplet,
    verify_system,
    verify_triplet,
)
from .errors import (
    IllDefined,
    InvalidSystem,
    InvalidTriplet,
    NotContraction,
    NotDissipative,
    NotMaximal,
    NotRestriction,
    NotSkewSelfAdjoint,
    NotSkewSymmetric,
    NotUnitary,
    ReadoffSingular,
)
from .linalg import UNITARY_TOL, is_contraction, is_unitary, matrix_2norm, null_space
from .relation import Relation

PARAM_KINDS = ("unitary_A", "unitary_B", "contraction")


@dataclass(frozen=True)
class ExtensionParam:
    """A parametrizing matrix in orthonormal boundary-space coordinates.

    ``unitary_A`` maps G1 to G2 coordinates, ``unitary_B`` acts on G, and
    ``contraction`` acts on G with spectral norm at most 1.
    """

    kind: str
    matrix: np.ndarray

    def __post_init__(self):
        if self.kind not in PARAM_KINDS:
            raise ValueError(f"kind must be one of {PARAM_KINDS}, got {self.kind!r}")
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2:
            raise ValueError("parameter matrix must be two-dimensional")
        object.__setattr__(self, "matrix", m)
        if self.kind in ("unitary_A", "unitary_B") and not is_unitary(m):
            raise NotUnitary(f"{self.kind} parameter is not unitary within tolerance")
        if self.kind == "contraction" and not is_contraction(m):
            raise NotContraction("contraction parameter has norm above 1")


@dataclass(frozen=True)
class ExistenceReport:
    """The four equivalent existence conditions, evaluated independently."""

    indices: tuple
    equal_indices: bool
    has_sksa_extension: bool
    triplet_constructible: bool
    system_equal_dims: bool

    @property
    def booleans(self):
        return (
            self.equal_indices,
            self.has_sksa_extension,
            self.triplet_constructible,
            self.system_equal_dims,
        )

    @property
    def agree(self) -> bool:
        return len(set(self.booleans)) == 1


def _require_valid_system(s: BoundarySystem, tol: float):
    report = verify_system(s, tol)
    if not report.ok:
        raise InvalidSystem(
            f"boundary system fails verification (residual {report.residual:.3e})"
        )


def _require_valid_triplet(t: BoundaryTriplet, tol: float):
    report = verify_triplet(t, tol)
    if not report.ok:
        raise InvalidTriplet(
            f"boundary triplet fails verification (residual {report.residual:.3e})"
        )


def _require_unitary(m: np.ndarray, rows: int, cols: int, name: str):
    if m.shape != (rows, cols) or not is_unitary(m, UNITARY_TOL):
        raise NotUnitary(
            f"{name} must be a unitary {rows}x{cols} matrix in boundary coordinates"
        )


def system_unitary_extension(
    s: BoundarySystem, l, tol: float = sub.ORTH_TOL
) -> Relation:
    """Skew-self-adjoint restriction of H0* selected by a unitary L: G1 -> G2.

    The graph is the portion of Graph(H0*) on which L F1 = F2 holds,
    computed as the kernel of L F1 - F2 in graph coordinates.
    """
    _require_valid_system(s, tol)
    l = np.asarray(l, dtype=complex)
    _require_unitary(l, s.g2.dim, s.g1.dim, "L")
    coords = null_space(l @ s.f1 - s.f2)
    graph = sub.span_matrix(s.adjoint_graph.basis @ coords)
    return Relation(s.base.space_dim, graph)


def system_unitary_readoff(s: BoundarySystem, h: Relation, tol: float = sub.ORTH_TOL):
    """Recover the unitary L: G1 -> G2 with L F1 = F2 on Graph(H).

    Inverts ``system_unitary_extension``: H must be a skew-self-adjoint
    restriction of H0*.  The solve is a least-squares fit over the graph
    basis; a rank-deficient image F1[Graph(H)] signals a violated
    bijection premise and raises ReadoffSingular.
    """
    _require_valid_system(s, tol)
    if not rel.is_skew_self_adjoint(h, tol):
        raise NotSkewSelfAdjoint("read-off needs a skew-self-adjoint relation")
    if not sub.contains_subspace(s.adjoint_graph, h.graph, tol):
        raise NotRestriction("relation is not a restriction of the adjoint")
    coords = s.adjoint_graph.basis.conj().T @ h.graph.basis
    image1 = s.f1 @ coords
    image2 = s.f2 @ coords
    k1 = s.g1.dim
    if k1:
        sv = np.linalg.svd(image1, compute_uv=False)
        if sv.size == 0 or sv[0] == 0.0 or int(np.sum(sv > sub.RANK_TOL * sv[0])) < k1:
            raise ReadoffSingular(
                "F1 image of the graph is rank-deficient; input violates the "
                "bijection premise"
            )
    return image2 @ np.linalg.pinv(image1)


def triplet_unitary_extension(
    t: BoundaryTriplet, l, tol: float = sub.ORTH_TOL
) -> Relation:
    """Skew-self-adjoint extension of H0 selected by a unitary L on G.

    The defining boundary condition (L - 1) Gamma1 + (L + 1) Gamma2 = 0 is
    solved inside Graph(H0*) and the selected portion is sign-flipped,
    since the extension acts as -H0* on its domain.
    """
    _require_valid_triplet(t, tol)
    l = np.asarray(l, dtype=complex)
    k = t.g.dim
    _require_unitary(l, k, k, "L")
    eye = np.eye(k, dtype=complex)
    coords = null_space((l - eye) @ t.gamma1 + (l + eye) @ t.gamma2)
    portion = sub.span_matrix(t.adjoint_graph.basis @ coords)
    return rel.negate(Relation(t.base.space_dim, portion))


def bridge_check(s: BoundarySystem, l0, l, tol: float = sub.ORTH_TOL) -> bool:
    """Whether the system-side extension of L equals the negated
    triplet-side extension of L0^{-1} L.

    Builds both sides of the bridge identity explicitly and compares the
    graphs within ``tol``.
    """
    l0 = np.asarray(l0, dtype=complex)
    l = np.asarray(l, dtype=complex)
    lhs = system_unitary_extension(s, l, tol)
    triplet = system_to_triplet(s, l0, tol)
    rhs = rel.negate(triplet_unitary_extension(triplet, l0.conj().T @ l, tol))
    return sub.distance(lhs.graph, rhs.graph) <= tol


def _portion_coords(t: BoundaryTriplet, h: Relation, tol: float) -> np.ndarray:
    """Coordinates, in the adjoint-graph basis, of the sign-flipped graph of H."""
    flipped = rel.negate(h)
    if not sub.contains_subspace(t.adjoint_graph, flipped.graph, tol):
        raise NotRestriction(
            "negated relation is not a restriction of the adjoint"
        )
    return t.adjoint_graph.basis.conj().T @ flipped.graph.basis


def _range_of_one_minus(h: Relation) -> int:
    x, xp = h.blocks()
    if h.graph_dim == 0:
        return 0
    return sub.span_matrix(x - xp).dim


def is_maximal_dissipative(h: Relation, tol: float = sub.ORTH_TOL) -> bool:
    """Dissipative with ran(1 - H) = C^n (the range condition for maximality)."""
    return rel.is_dissipative(h, tol) and _range_of_one_minus(h) == h.space_dim


def boundary_contraction_of(
    t: BoundaryTriplet, h: Relation, tol: float = sub.ORTH_TOL
) -> np.ndarray:
    """The contraction K on G with K(Gamma1 + Gamma2) = Gamma1 - Gamma2 on H.

    H must be a maximal dissipative extension of the base whose negation
    restricts H0*.  Maximality makes the sums Gamma1 + Gamma2 of boundary
    values cover all of G; if they do not, IllDefined is raised.
    """
    _require_valid_triplet(t, tol)
    if not rel.is_dissipative(h, tol):
        raise NotDissipative("relation is not dissipative")
    if _range_of_one_minus(h) != h.space_dim:
        raise NotMaximal("range condition fails: ran(1 - H) is a proper subspace")
    coords = _portion_coords(t, h, tol)
    plus = (t.gamma1 + t.gamma2) @ coords
    minus = (t.gamma1 - t.gamma2) @ coords
    k = t.g.dim
    if k:
        sv = np.linalg.svd(plus, compute_uv=False)
        if sv.size == 0 or sv[0] == 0.0 or int(np.sum(sv > sub.RANK_TOL * sv[0])) < k:
            raise IllDefined(
                "boundary sums do not span G; maximality premise violated"
            )
    kmat = minus @ np.linalg.pinv(plus)
    if matrix_2norm(kmat @ plus - minus) > tol * max(1.0, matrix_2norm(minus)):
        raise IllDefined("boundary map is not single-valued on G")
    return kmat


def extension_from_contraction(
    t: BoundaryTriplet, k, tol: float = sub.ORTH_TOL
) -> Relation:
    """Maximal dissipative extension selected by a contraction K on G.

    The graph is the sign-flipped portion of Graph(H0*) on which
    K(Gamma1 + Gamma2) = Gamma1 - Gamma2 holds.
    """
    _require_valid_triplet(t, tol)
    k = np.asarray(k, dtype=complex)
    dim = t.g.dim
    if k.shape != (dim, dim) or not is_contraction(k, UNITARY_TOL):
        raise NotContraction("parameter is not a contraction on G")
    coords = null_space(k @ (t.gamma1 + t.gamma2) - (t.gamma1 - t.gamma2))
    portion = sub.span_matrix(t.adjoint_graph.basis @ coords)
    return rel.negate(Relation(t.base.space_dim, portion))


def unitarity_equivalence_check(
    t: BoundaryTriplet, h: Relation, tol: float = sub.ORTH_TOL
) -> bool:
    """Whether skew-self-adjointness of H, unitarity of its boundary
    contraction, and the vanishing of <Gamma1 u, Gamma2 v> + <Gamma2 u, Gamma1 v>
    on the H-portion all hold or all fail together."""
    kmat = boundary_contraction_of(t, h, tol)
    sksa = rel.is_skew_self_adjoint(h, tol)
    unitary = is_unitary(kmat, UNITARY_TOL)
    coords = _portion_coords(t, h, tol)
    g1c = t.gamma1 @ coords
    g2c = t.gamma2 @ coords
    pairing = g2c.conj().T @ g1c + g1c.conj().T @ g2c
    vanishes = pairing.size == 0 or float(np.max(np.abs(pairing))) <= tol * max(
        1.0, float(np.max(np.abs(g1c))) if g1c.size else 1.0
    )
    return (sksa == unitary) and (sksa == vanishes)


def existence_report(h0: Relation, tol: float = sub.ORTH_TOL) -> ExistenceReport:
    """Evaluate the four equivalent existence conditions for skew-self-adjoint
    extensions, each by its own computation path.

    Equality of the deficiency indices is read off the deficiency spaces;
    the extension condition is checked constructively by building one
    extension from a basis-matching unitary on the canonical system; the
    triplet condition by attempting the system-to-triplet conversion; and
    the equal-dimension system condition from the canonical system itself.
    """
    if not rel.is_skew_symmetric(h0, tol):
        raise NotSkewSymmetric("existence report needs a skew-symmetric relation")
    s = canonical_system(h0, tol)
    k1, k2 = s.g1.dim, s.g2.dim
    equal_indices = k1 == k2

    has_sksa = False
    triplet_ok = False
    if equal_indices:
        eye = np.eye(k2, k1, dtype=complex)
        has_sksa = rel.is_skew_self_adjoint(system_unitary_extension(s, eye, tol), tol)
        try:
            triplet_ok = verify_triplet(system_to_triplet(s, eye, tol), tol).ok
        except (NotUnitary, InvalidSystem):
            triplet_ok = False

    return ExistenceReport(
        indices=(k1, k2),
        equal_indices=equal_indices,
        has_sksa_extension=has_sksa,
        triplet_constructible=triplet_ok,
        system_equal_dims=k1 == k2,
    )


def canonical_max_dissipative(h0: Relation, tol: float = sub.ORTH_TOL) -> Relation:
    """The canonical maximal dissipative extension of a skew-symmetric relation.

    Its graph is the orthogonal sum of Graph(-H0) and the g2 deficiency
    piece {(x, -x)}; it always exists, also when no skew-self-adjoint
    extension does.
    """
    g_neg, _, ghat2 = canonical_decomposition(h0, tol)
    graph = sub.sum_of(g_neg, ghat2)
    return Relation(h0.space_dim, graph)


def adjoint_formula_check(h0: Relation, tol: float = sub.ORTH_TOL) -> bool:
    """Whether the adjoint of the canonical extension equals the sign-flipped
    sum of Graph(-H0) and the g1 deficiency piece."""
    g_neg, ghat1, _ = canonical_decomposition(h0, tol)
    lhs = rel.adjoint(canonical_max_dissipative(h0, tol))
    rhs = rel.negate(Relation(h0.space_dim, sub.sum_of(g_neg, ghat1)))
    return sub.distance(lhs.graph, rhs.graph) <= tol
