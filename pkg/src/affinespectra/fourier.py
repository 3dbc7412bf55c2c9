"""Mask polynomial and Fourier transform of the invariant measure.

The measure attached to (M, D) with D = {0, ..., q-1} v has
mu_hat(xi) = prod_{j >= 1} mask((M*)^{-j} xi), where the mask is the
normalized exponential sum over the digits.  Because the digits are
consecutive multiples of one vector, the mask is a geometric sum and its
zero set has an exact rational description: the phase <v, xi> must be a
non-integer multiple of 1/q.  Everything decision-grade here runs on
Fractions; floats appear only in reported numeric values and error
bounds.

Orthogonality of two exponentials is certified by exhibiting a factor
index j with an exactly vanishing mask; absence of a certificate proves
nothing, and no function here claims otherwise.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .conjugation import block_decompose
from .errors import GcdOne, InternalError, NonConvergent
from .linalg import (
    IntMatrix,
    IntVector,
    RatVector,
    det,
    inverse,
    krylov,
    xgcd,
)

_WITNESS_DEPTH_CAP = 500
_MU_HAT_FACTOR_CAP = 100000


class Witness:
    """A frequency alpha with vanishing mask whose image under (M*)^ell is
    an integer vector; the seed of an infinite orthogonal family."""

    __slots__ = ("alpha", "ell", "phase", "image")

    def __init__(self, alpha: RatVector, ell: int, phase: Fraction, image: IntVector):
        self.alpha = alpha
        self.ell = ell
        self.phase = phase
        self.image = image

    def __repr__(self):
        return f"Witness(alpha={self.alpha!r}, ell={self.ell})"


class OrthogonalityCertificate:
    """Exact proof that two exponentials are orthogonal: factor j of the
    transform product vanishes at the difference frequency."""

    __slots__ = ("lambda1", "lambda2", "j", "phase")

    def __init__(self, lambda1: RatVector, lambda2: RatVector, j: int, phase: Fraction):
        self.lambda1 = lambda1
        self.lambda2 = lambda2
        self.j = j
        self.phase = phase

    def __repr__(self):
        return f"OrthogonalityCertificate(j={self.j}, phase={self.phase})"


class MuHatValue:
    """Truncated transform value with a certified absolute error bound."""

    __slots__ = ("value", "error", "factors")

    def __init__(self, value: complex, error: float, factors: int):
        self.value = value
        self.error = error
        self.factors = factors

    def __repr__(self):
        return f"MuHatValue({self.value:.6g}, error={self.error:.3g})"


def _as_rat_vector(xi) -> RatVector:
    if isinstance(xi, RatVector):
        return xi
    if isinstance(xi, IntVector):
        return xi.to_rat()
    return RatVector(xi)


def _phase(inst, xi: RatVector) -> Fraction:
    if len(xi) != len(inst.v):
        raise ValueError("frequency dimension does not match the instance")
    return xi.dot(inst.v)


def _mask_from_phase(q: int, t: Fraction) -> complex:
    if t.denominator == 1:
        return complex(1.0)
    if (q * t).denominator == 1:
        return complex(0.0)  # exact zero of the geometric sum
    tf = float(t)
    # (1/q) sum_k e^{2 pi i k t} in closed Dirichlet-kernel form
    return (
        cmath.exp(1j * math.pi * (q - 1) * tf)
        * math.sin(math.pi * q * tf)
        / (q * math.sin(math.pi * tf))
    )


def mask(inst, xi) -> complex:
    """Normalized digit exponential sum (1/q) sum_k e^{2 pi i k <v, xi>}."""
    return _mask_from_phase(inst.q, _phase(inst, _as_rat_vector(xi)))


def mask_is_zero_exact(inst, xi) -> bool:
    """Exact zero test for the mask at a rational frequency.

    The geometric sum vanishes iff t = <v, xi> is a non-integer whose
    reduced denominator divides q, i.e. t is congruent mod 1 to j/q for
    some j in {1, ..., q-1}.
    """
    t = _phase(inst, _as_rat_vector(xi)) % 1
    return t != 0 and (inst.q * t).denominator == 1


@lru_cache(maxsize=None)
def _contraction_data(m: IntMatrix):
    """Smallest k with ||(M*)^{-k}||_inf < 1, plus that norm and the sum
    of the first k power norms.  Exact; raises NonConvergent if no power
    up to 10 n contracts, which means the matrix is not expanding."""
    p = inverse(m).transpose()
    power = p
    norm_sum = Fraction(0)
    for k in range(1, 10 * m.n + 1):
        rho = power.inf_norm()
        norm_sum += rho
        if rho < 1:
            return p, k, rho, norm_sum
        power = power * p
    raise NonConvergent(
        f"no power of the inverse transpose up to {10 * m.n} contracts"
    )


def mu_hat(inst, xi, tail_eps: float = 1e-9) -> MuHatValue:
    """Fourier transform of the invariant measure, numerically.

    Multiplies mask factors at (M*)^{-j} xi until the remaining tail is
    provably below tail_eps, using |mask(eta) - 1| <= pi (q-1) |<v, eta>|
    and geometric decay of the exact power norms.  If any factor is an
    exact rational zero the product short-circuits to exactly 0.  The
    returned error field bounds |true - value| absolutely.
    """
    xi = _as_rat_vector(xi)
    if len(xi) != len(inst.v):
        raise ValueError("frequency dimension does not match the instance")
    if xi.is_zero():
        return MuHatValue(complex(1.0), 0.0, 0)
    p, kstar, rho, norm_sum = _contraction_data(inst.m)
    v_l1 = sum(abs(e) for e in inst.v)
    coeff = Fraction(norm_sum, 1) / (1 - rho) * v_l1 * (inst.q - 1)
    cur = xi
    product = complex(1.0)
    j = 0
    while True:
        cur = p * cur
        j += 1
        t = cur.dot(inst.v)
        tm = t % 1
        if tm != 0 and (inst.q * tm).denominator == 1:
            return MuHatValue(complex(0.0), 0.0, j)
        product *= _mask_from_phase(inst.q, tm)
        cur_norm = max(abs(e) for e in cur)
        tail = math.pi * float(coeff * cur_norm)
        if tail < tail_eps:
            return MuHatValue(product, math.expm1(tail), j)
        if j > _MU_HAT_FACTOR_CAP:
            raise InternalError("transform truncation failed to converge")


@lru_cache(maxsize=None)
def _probe_vector(m: IntMatrix, v: IntVector, j: int) -> RatVector:
    # <(M*)^{-j} delta, v> = <delta, M^{-j} v>, so the matrix powers are
    # shared across every pair ever certified against this instance
    if j == 0:
        return v.to_rat()
    return inverse(m) * _probe_vector(m, v, j - 1)


def certify_orthogonal(inst, lambda1, lambda2, j_max: int | None = None):
    """Search for an exactly vanishing factor separating two frequencies.

    Returns an OrthogonalityCertificate for the first j <= j_max with
    mask((M*)^{-j}(lambda1 - lambda2)) = 0, or None when the search is
    exhausted.  None means NOT CERTIFIED; it never means "not orthogonal".
    """
    lambda1 = _as_rat_vector(lambda1)
    lambda2 = _as_rat_vector(lambda2)
    delta = lambda1 - lambda2
    if delta.is_zero():
        raise ValueError("frequencies must differ")
    if j_max is None:
        max_den = max(e.denominator for e in delta)
        max_num = max(abs(e.numerator) for e in delta)
        j_max = 3 * inst.m.n + (max_den * max_num).bit_length()
    for j in range(1, j_max + 1):
        t = delta.dot(_probe_vector(inst.m, inst.v, j)) % 1
        if t != 0 and (inst.q * t).denominator == 1:
            return OrthogonalityCertificate(lambda1, lambda2, j, t)
    return None


# ---------------------------------------------------------------------------
# witnesses of infinite orthogonal families
# ---------------------------------------------------------------------------


def _bezout_vector(w: IntVector) -> tuple[int, IntVector]:
    """gcd g of the entries of w plus an integer c with <w, c> = g."""
    g = w[0]
    coefs = [1] + [0] * (len(w) - 1)
    for i in range(1, len(w)):
        g, s, t = xgcd(g, w[i])
        coefs = [s * x for x in coefs]
        coefs[i] = t
    if g < 0:
        g, coefs = -g, [-x for x in coefs]
    return g, IntVector(coefs)


def _solve_phase_congruence(w: IntVector, m: int, target: int) -> IntVector:
    """Integer z with <w, z> congruent to target mod m, of small size.

    Requires gcd of the entries of w to be invertible mod m, which the
    caller guarantees; the solution is a Bezout combination scaled by the
    modular quotient, reduced to the minimal absolute residue (preferring
    the positive one on ties)."""
    g, c = _bezout_vector(w)
    gg, ginv, _ = xgcd(g % m, m)
    assert gg == 1, "gcd of numerators must be a unit modulo the denominator"
    t = (target * ginv) % m
    if 2 * t > m:
        t -= m
    z = c.scaled(t)
    assert (w.dot(z) - target) % m == 0
    return z


def construct_witness(inst) -> Witness:
    """Build a witness frequency proving an infinite orthogonal family.

    Works on the leading block (m1, v1) of the instance: m1 = M and
    v1 = v when the iterates of v span everything, otherwise the reduced
    pair from the block decomposition.  Inverse iterates m1^{-l} v1 are
    computed until their common denominator shares a factor d > 1 with q
    (this must happen: a prime dividing both q and det(m1) cannot leave
    all inverse iterates p-integral).  A lattice congruence then produces
    alpha with <v, alpha> = 1/d mod 1, killing the mask, while (M*)^l
    alpha is integral.  In the reduced case the trailing coordinates of
    alpha are chosen to cancel the coupling block, which preserves both
    properties through the change of basis.

    Raises GcdOne when gcd(q, |det m1|) = 1, where no witness of this
    kind exists.
    """
    n = inst.m.n
    _, r = krylov(inst.m, inst.v)
    decomp = None
    if r == n:
        m1, v1 = inst.m, inst.v
    else:
        decomp = block_decompose(inst.m, inst.v)
        m1, v1 = decomp.m1, decomp.x
    d1 = det(m1)
    if gcd(inst.q, abs(d1)) == 1:
        raise GcdOne(
            f"gcd(q={inst.q}, |det m1|={abs(d1)}) = 1: no vanishing-denominator witness"
        )
    m1_inv = inverse(m1)
    cur = v1.to_rat()
    for ell in range(1, _WITNESS_DEPTH_CAP + 1):
        cur = m1_inv * cur
        den = cur.denominator_lcm()
        dstar = gcd(den, inst.q)
        if dstar > 1:
            break
    else:
        raise InternalError("witness depth cap reached; should be unreachable")
    w = cur.scaled(den).to_int()
    z = _solve_phase_congruence(w, den, den // dstar)
    alpha1 = (m1_inv.transpose() ** ell) * z
    if decomp is None:
        alpha = alpha1
        image = z
    else:
        block_t = (decomp.b * inst.m * decomp.b_inv).transpose()
        pow_t = block_t ** ell
        coupling = pow_t.submatrix(range(r, n), range(r))
        m2t_pow = pow_t.submatrix(range(r, n), range(r, n))
        tail = (inverse(m2t_pow) * (coupling * alpha1)).scaled(-1)
        alpha_block = RatVector(list(alpha1) + list(tail))
        alpha = decomp.b.transpose().to_rat() * alpha_block
        image = decomp.b.transpose() * IntVector(list(z) + [0] * (n - r))
    phase = alpha.dot(inst.v) % 1
    witness = Witness(alpha, ell, phase, image)
    assert verify_witness(inst, witness), "constructed witness failed verification"
    return witness


def verify_witness(inst, w: Witness) -> bool:
    """Exact re-check of both witness properties against the instance."""
    if len(w.alpha) != inst.m.n or w.ell < 1:
        return False
    if not mask_is_zero_exact(inst, w.alpha):
        return False
    image = (inst.m.transpose().to_rat() ** w.ell) * w.alpha
    return image.is_integral()


def witness_orthogonal_family(inst, w: Witness, count: int) -> list[RatVector]:
    """Mutually orthogonal integer frequencies grown from a witness.

    Returns the partial sums lambda_k = sum_{i=1}^{k} (M*)^{i ell} alpha
    for k = 0, ..., count-1.  Any two of them differ by (M*)^{j} applied
    to (alpha + integer vector), so the mask kills factor j and every
    pair is certifiable; the family realizes, at finite scale, the
    infinite orthogonal set the witness promises.
    """
    step = inst.m.transpose().to_rat() ** w.ell
    out = [RatVector([0] * inst.m.n)]
    term = w.alpha
    acc = RatVector([0] * inst.m.n)
    for _ in range(count - 1):
        term = step * term
        acc = acc + term
        assert acc.is_integral()
        out.append(acc)
    return out


__all__ = [
    "MuHatValue",
    "OrthogonalityCertificate",
    "Witness",
    "certify_orthogonal",
    "construct_witness",
    "mask",
    "mask_is_zero_exact",
    "mu_hat",
    "verify_witness",
    "witness_orthogonal_family",
]
