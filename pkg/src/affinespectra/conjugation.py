"""Normal forms for an integer matrix paired with a digit direction.

Two conjugations are provided.  When the iterates v, Mv, M^2 v, ... span
the whole space, M is conjugated to the companion matrix of its
characteristic polynomial by the basis of those iterates.  When they span
a proper subspace, a unimodular change of basis exhibits M as a block
upper-triangular matrix whose leading block acts on that subspace; the
classification problem then reduces to the leading block in lower
dimension.

Frequency sets transport through a conjugation by the transpose of the
basis matrix, never the matrix itself; ``map_spectrum`` is the single
place that convention lives.
"""

from __future__ import annotations

from .errors import FullRank, InternalRankError, NotFullRank, Singular
from .linalg import (
    IntMatrix,
    IntVector,
    RatMatrix,
    RatVector,
    char_poly,
    det,
    hnf_unimodular,
    inverse,
    inverse_unimodular,
    krylov,
)


class CompanionConjugation:
    """Exact conjugation b_inv * M * b = m_tilde with m_tilde in companion
    form and b_inv * v the last standard basis vector.

    b is the integer matrix [M^{n-1}v, ..., Mv, v]; its inverse is rational
    in general, so frequency arithmetic downstream stays in Fractions.
    """

    __slots__ = ("b", "b_inv", "m_tilde", "v_tilde")

    def __init__(self, b: IntMatrix, b_inv: RatMatrix, m_tilde: IntMatrix, v_tilde: IntVector):
        self.b = b
        self.b_inv = b_inv
        self.m_tilde = m_tilde
        self.v_tilde = v_tilde

    def __repr__(self):
        return f"CompanionConjugation(m_tilde={self.m_tilde!r})"


class BlockDecomposition:
    """Unimodular b with b*M*b_inv = [[m1, c], [0, m2]] and b*v = (x, 0)."""

    __slots__ = ("b", "b_inv", "r", "m1", "c", "m2", "x")

    def __init__(self, b, b_inv, r, m1, c, m2, x):
        self.b = b
        self.b_inv = b_inv
        self.r = r
        self.m1 = m1
        self.c = c
        self.m2 = m2
        self.x = x

    def __repr__(self):
        return f"BlockDecomposition(r={self.r}, m1={self.m1!r}, m2={self.m2!r})"


class ReducedInstance:
    """Lower-dimensional instance (m1, v_prime, q) produced by a block
    decomposition.  Its defining property, checked at construction time by
    reduce_dimension, is that v_prime generates a full iterate basis for
    m1, so the companion branch applies to it directly."""

    __slots__ = ("m1", "v_prime", "q")

    def __init__(self, m1: IntMatrix, v_prime: IntVector, q: int):
        self.m1 = m1
        self.v_prime = v_prime
        self.q = q

    def __repr__(self):
        return f"ReducedInstance(m1={self.m1!r}, v_prime={self.v_prime!r}, q={self.q})"


def companion_matrix(f) -> IntMatrix:
    """Companion matrix of a monic integer polynomial: negated non-leading
    coefficients down the first column (highest degree first), ones on the
    superdiagonal."""
    if not f.is_monic:
        raise ValueError("companion form requires a monic polynomial")
    n = f.degree
    if n == 0:
        raise ValueError("constant polynomial has no companion matrix")
    rows = []
    for i in range(n):
        row = [0] * n
        row[0] = -f.coeffs[n - 1 - i]
        if i + 1 < n:
            row[i + 1] = 1
        rows.append(row)
    return IntMatrix(rows)


def companion_conjugate(m: IntMatrix, v: IntVector) -> CompanionConjugation:
    """Conjugate (m, v) to companion form via b = [M^{n-1}v, ..., Mv, v].

    Requires the iterates of v to span the whole space; raises NotFullRank
    otherwise.  The returned m_tilde is integer even though b_inv is not.
    """
    n = m.n
    vecs, r = krylov(m, v)
    if r < n:
        raise NotFullRank(
            f"iterates of v span a {r}-dimensional subspace of dimension {n}"
        )
    b = IntMatrix.from_columns(list(reversed(vecs)))
    b_inv = inverse(b)
    m_tilde = companion_matrix(char_poly(m))
    # both defining identities are cheap; check them rather than trust them
    assert b_inv * (m.to_rat() * b.to_rat()) == m_tilde.to_rat()
    v_tilde = IntVector([0] * (n - 1) + [1]) if n > 1 else IntVector([1])
    assert (b_inv * v).to_int() == v_tilde
    return CompanionConjugation(b, b_inv, m_tilde, v_tilde)


def block_decompose(m: IntMatrix, v: IntVector) -> BlockDecomposition:
    """Unimodular block triangularization for the rank-deficient case.

    With r the dimension of the span of v, Mv, M^2 v, ..., a unimodular b
    is built by integer row reduction of [M^{r-1}v, ..., Mv, v] so that
    b*M*b_inv is block upper triangular with an r x r leading block and
    b*v has only its first r entries nonzero.  Raises FullRank when r = n,
    where the companion conjugation is the right tool.
    """
    n = m.n
    vecs, r = krylov(m, v)
    if r == n:
        raise FullRank(f"iterates of v already span dimension {n}")
    a = IntMatrix.from_columns(list(reversed(vecs[:r])))
    b, h = hnf_unimodular(a)
    b_inv = inverse_unimodular(b)
    block = b * m * b_inv
    lower_left_zero = all(
        block.rows[i][j] == 0 for i in range(r, n) for j in range(r)
    )
    if not lower_left_zero:
        raise InternalRankError("block triangularization failed to zero the lower-left block")
    m1 = block.submatrix(range(r), range(r))
    c = block.submatrix(range(r), range(r, n))
    m2 = block.submatrix(range(r, n), range(r, n))
    bv = b * v
    assert all(bv[i] == 0 for i in range(r, n))
    x = IntVector(bv[i] for i in range(r))
    assert det(m) == det(m1) * det(m2)
    return BlockDecomposition(b, b_inv, r, m1, c, m2, x)


def reduce_dimension(d: BlockDecomposition, q: int) -> ReducedInstance:
    """Project a block decomposition onto its leading block.

    The instance (m1, x, q) carries all spectral information of the
    original pair because the measure is supported on the subspace the
    leading block acts on.  The projected vector must generate a full
    iterate basis for m1; a failure would mean the decomposition upstream
    is wrong, hence InternalRankError rather than a precondition error.
    """
    _, r = krylov(d.m1, d.x)
    if r != d.r:
        raise InternalRankError(
            f"reduced vector generates rank {r}, expected {d.r}"
        )
    return ReducedInstance(d.m1, d.x, q)


def map_spectrum(b: IntMatrix, lambda_set, direction: str) -> list[RatVector]:
    """Transport frequencies through the conjugation with basis matrix b.

    direction "forward" applies the transpose of b, "inverse" its inverse
    transpose.  Exponentials pair with points through the inner product,
    so a change of basis on points acts on frequencies by the adjoint;
    callers choose the direction that matches which side of the
    conjugation their frequencies live on.
    """
    if det(b) == 0:
        raise Singular("spectrum transport needs an invertible basis matrix")
    if direction == "forward":
        op = b.transpose().to_rat()
    elif direction == "inverse":
        op = inverse(b).transpose()
    else:
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    out = []
    for lam in lambda_set:
        if isinstance(lam, IntVector):
            lam = lam.to_rat()
        out.append(op * lam)
    return out


__all__ = [
    "BlockDecomposition",
    "CompanionConjugation",
    "ReducedInstance",
    "block_decompose",
    "companion_conjugate",
    "companion_matrix",
    "map_spectrum",
    "reduce_dimension",
]
