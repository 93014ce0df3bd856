"""Walk and transition operators of a search instance.

Vertex space: the discriminant matrix T (order n+1, entries tau(uv)/n off
the diagonal) carries the spectral analysis of the quantum walk, and Q is
its companion built from the incidence structure of the unmarked remainder.
Edge space: P is the isotropic transition kernel on the line graph of the
unmarked remainder, with entry 1/(2(n-1)) between distinct edges sharing an
endpoint.  Arc space: the unitary evolution U = S(2 d* d - I) is applied
matrix-free in O(n^2) per step; a dense U exists only as a small-instance
test oracle.

In K_{n+1} every vertex has degree n, so the general normalizations
1/sqrt(deg u * deg v) specialize to 1/n throughout this module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse.linalg import LinearOperator

from .errors import DimensionMismatch, EmptyComplement, TooLarge
from .signed_graph import ComplementGraph, SignedCompleteGraph, build_complement

__all__ = [
    "DiscriminantMatrix",
    "LineTransitionMatrix",
    "build_T",
    "build_P",
    "apply_U",
    "build_U_dense",
    "build_d_dense",
    "DENSE_U_LIMIT",
    "DENSE_LINE_LIMIT",
]

# Dense U has (n(n+1))^2 entries; 40 keeps that under ~3M.  Dense P is
# capped separately since it only backs small-instance spectra and solves.
DENSE_U_LIMIT = 40
DENSE_LINE_LIMIT = 3000


@dataclass(frozen=True)
class DiscriminantMatrix:
    """Dense symmetric vertex matrix of order n+1 with block sizes (s, t).

    Off-diagonal entries are +1/n on unmarked pairs and -1/n on marked
    pairs; the diagonal is zero.  In canonical order this equals
    (J - I - 2*A)/n with A the zero-padded adjacency of the marked subgraph.
    """

    matrix: np.ndarray
    s: int
    t: int

    @property
    def order(self) -> int:
        return self.matrix.shape[0]


def build_T(g: SignedCompleteGraph) -> DiscriminantMatrix:
    """Construct the discriminant matrix of an instance."""
    order = g.n + 1
    m = np.asarray(g.marked_matrix, dtype=np.float64)
    matrix = (np.ones((order, order)) - np.eye(order) - 2.0 * m) / g.n
    matrix.setflags(write=False)
    return DiscriminantMatrix(matrix=matrix, s=g.s, t=g.t)


@dataclass(frozen=True)
class LineTransitionMatrix:
    """Transition kernel on the unmarked edges, plus its vertex companion.

    The kernel acts on vectors indexed by the unmarked edges (the vertices
    of the line graph of the complement): distinct edges sharing an endpoint
    get weight 1/(2(n-1)).  Rows of edges adjacent to a marked edge sum to
    less than one, which makes I - P invertible and the absorption time
    finite.  ``q_matrix`` is the (n+1)-dimensional companion with the same
    spectrum apart from the value -1/(n-1).

    Application is matrix-free through per-vertex accumulators: for x over
    unmarked edges, (P x)_{uv} = (C_u + C_v - 2 x_{uv}) / (2(n-1)) where
    C_w sums x over unmarked edges at w.  ``dense()`` materializes the
    kernel for small instances only.
    """

    n: int
    complement: ComplementGraph
    q_matrix: np.ndarray

    @property
    def num_edges(self) -> int:
        return self.complement.num_edges

    @property
    def rate(self) -> float:
        return 1.0 / (2.0 * (self.n - 1))

    def matvec(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.shape[0] != self.num_edges:
            raise DimensionMismatch(
                f"vector of length {x.shape[0]} against {self.num_edges} edges"
            )
        sums = self.complement.incidence() @ x
        eu = self.complement.edges[:, 0]
        ev = self.complement.edges[:, 1]
        return self.rate * (sums[eu] + sums[ev] - 2.0 * x)

    def as_linear_operator(self) -> LinearOperator:
        return LinearOperator(
            (self.num_edges, self.num_edges),
            matvec=self.matvec,
            matmat=self.matvec,
            dtype=np.float64,
        )

    def dense(self) -> np.ndarray:
        """Dense kernel; guarded because it is quadratic in the edge count."""
        if self.num_edges > DENSE_LINE_LIMIT:
            raise TooLarge(
                f"{self.num_edges} unmarked edges exceed the dense limit "
                f"{DENSE_LINE_LIMIT}"
            )
        inc = self.complement.incidence()
        gram = (inc.T @ inc).toarray()
        return self.rate * (gram - 2.0 * np.eye(self.num_edges))


def build_P(g: SignedCompleteGraph) -> LineTransitionMatrix:
    """Construct the line-graph kernel and its vertex companion.

    The companion is assembled from the canonical block closed form and
    cross-checked, exactly in integer arithmetic, against the incidence
    identity 2(n-1) Q + 2I = N N^T.
    """
    delta = build_complement(g)
    if delta.num_edges == 0:
        raise EmptyComplement("every edge of the host graph is marked")
    n = g.n
    order = n + 1
    q_num = (
        np.ones((order, order), dtype=np.int64)
        + (n - 3) * np.eye(order, dtype=np.int64)
        - g.marked_matrix.astype(np.int64)
        - np.diag(g.gamma_degrees)
    )
    inc = delta.incidence()
    gram_num = (inc @ inc.T).toarray().astype(np.int64) - 2 * np.eye(
        order, dtype=np.int64
    )
    if not np.array_equal(q_num, gram_num):
        raise AssertionError("vertex companion disagrees with incidence identity")
    q = q_num / (2.0 * (n - 1))
    q.setflags(write=False)
    return LineTransitionMatrix(n=n, complement=delta, q_matrix=q)


def apply_U(g: SignedCompleteGraph, psi: np.ndarray) -> np.ndarray:
    """Apply the walk operator to an arc-indexed state, matrix-free.

    Accumulates m_v = (1/sqrt(n)) * sum over arcs a into v of sigma(a) psi_a,
    then returns (2/sqrt(n)) * sigma(a^{-1}) * m_{o(a)} - psi_{a^{-1}} per
    arc.  O(n^2) time; norm-preserving; accepts real or complex states.
    """
    arcs = g.arcs
    psi = np.asarray(psi)
    if psi.shape != (arcs.num_arcs,):
        raise DimensionMismatch(
            f"state of shape {psi.shape} against {arcs.num_arcs} arcs"
        )
    sqrt_n = np.sqrt(g.n)
    signed = g.sigma_arcs * psi
    if np.iscomplexobj(psi):
        m = np.bincount(
            arcs.termini, weights=signed.real, minlength=g.n + 1
        ) + 1j * np.bincount(arcs.termini, weights=signed.imag, minlength=g.n + 1)
    else:
        m = np.bincount(arcs.termini, weights=signed, minlength=g.n + 1)
    m /= sqrt_n
    return (2.0 / sqrt_n) * g.sigma_inverse_arcs * m[arcs.origins] - psi[
        arcs.inverse_index
    ]


def build_d_dense(g: SignedCompleteGraph) -> np.ndarray:
    """Dense signed coin isometry: entry sigma(a)/sqrt(n) at (t(a), a).

    Rows are vertices, columns arcs; d d* = I.  Small instances only.
    """
    if g.n > DENSE_U_LIMIT:
        raise TooLarge(f"n = {g.n} exceeds the dense limit {DENSE_U_LIMIT}")
    arcs = g.arcs
    d = np.zeros((g.n + 1, arcs.num_arcs))
    d[arcs.termini, np.arange(arcs.num_arcs)] = g.sigma_arcs / np.sqrt(g.n)
    return d


def build_U_dense(g: SignedCompleteGraph) -> np.ndarray:
    """Dense walk operator S(2 d* d - I); exists as a test oracle.

    Entries satisfy (U)_{a,b} = 2 sigma(a^{-1}) sigma(b) / n - [a^{-1} = b]
    when t(b) = o(a) and vanish otherwise; U U^T = I.
    """
    if g.n > DENSE_U_LIMIT:
        raise TooLarge(f"n = {g.n} exceeds the dense limit {DENSE_U_LIMIT}")
    d = build_d_dense(g)
    reflect = 2.0 * d.T @ d - np.eye(g.arcs.num_arcs)
    return reflect[g.arcs.inverse_index, :]
