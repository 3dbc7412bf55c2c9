"""Dual digit sets, exact unitarity checking, and candidate spectra.

For a companion-form pair whose determinant is divisible by q, the dual
set {0, ..., q-1} u with u = (-a_n/q, 0, ..., 0) makes the digit/dual
phase matrix a scaled discrete Fourier matrix, hence unitary.  Unitarity
is decided exactly: each column-pair sum of roots of unity is written as
an integer polynomial and reduced modulo the appropriate cyclotomic
polynomial, so a True from verify_hadamard is a proof, not a numerical
observation.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .conjugation import CompanionConjugation, map_spectrum
from .errors import DuplicateFrequency, NotDivisible, UnverifiedTriple
from .linalg import IntMatrix, IntVector, RatVector, char_poly, inverse


class HadamardTriple:
    """Matrix, digit set, and dual set, with a verification flag that only
    verify_hadamard sets."""

    __slots__ = ("m", "digits", "duals", "coordinate_frame", "verified")

    def __init__(self, m: IntMatrix, digits, duals, coordinate_frame=None):
        self.m = m
        self.digits = list(digits)
        self.duals = list(duals)
        self.coordinate_frame = coordinate_frame
        self.verified = False

    @property
    def q(self) -> int:
        return len(self.digits)

    def verify(self) -> bool:
        ok = verify_hadamard(self.m, self.digits, self.duals)
        self.verified = ok
        return ok

    def __repr__(self):
        return f"HadamardTriple(q={self.q}, verified={self.verified})"


class PhaseMatrix:
    """Exact phases theta with H = (1/sqrt(q)) [e^{2 pi i theta_kl}]."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(Fraction(x) % 1 for x in row) for row in rows)

    def __getitem__(self, k):
        return self.rows[k]

    def __eq__(self, other):
        return isinstance(other, PhaseMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"PhaseMatrix({[[str(x) for x in row] for row in self.rows]})"


class CandidateSpectrum:
    """Finite truncation of the canonical spectrum attached to a verified
    triple, expressed in the coordinates the instance was given in."""

    __slots__ = ("depth", "frequencies", "frame")

    def __init__(self, depth: int, frequencies, frame):
        self.depth = depth
        self.frequencies = list(frequencies)
        self.frame = frame

    def __repr__(self):
        return f"CandidateSpectrum(depth={self.depth}, size={len(self.frequencies)})"


def construct_dual_digits(conj: CompanionConjugation, q: int) -> HadamardTriple:
    """Dual set {0,...,q-1} u with u = (-a_n/q) e_1 for the companion pair.

    a_n is the constant coefficient of the characteristic polynomial, so
    |a_n| = |det M|; q must divide it (NotDivisible otherwise).  The
    resulting phases are k*l/q and the triple verifies unitarily.
    """
    f = char_poly(conj.m_tilde)
    a_n = f.constant_term()
    if a_n % q != 0:
        raise NotDivisible(f"q={q} does not divide |det| = {abs(a_n)}")
    n = conj.m_tilde.n
    u = IntVector([-a_n // q] + [0] * (n - 1))
    digits = [conj.v_tilde.scaled(k) for k in range(q)]
    duals = [u.scaled(k) for k in range(q)]
    return HadamardTriple(conj.m_tilde, digits, duals, coordinate_frame=conj)


def phase_matrix(m: IntMatrix, digits, duals) -> PhaseMatrix:
    """theta_kl = <m^{-1} d_k, s_l> mod 1, exact."""
    m_inv = inverse(m)
    pre = [m_inv * d for d in digits]
    return PhaseMatrix([[x.dot(s) for s in duals] for x in pre])


# -- exact vanishing of root-of-unity sums ----------------------------------


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_div_exact(num, den):
    """Quotient of integer polynomials known to divide exactly (den monic)."""
    num = list(num)
    d = len(den) - 1
    assert den[-1] == 1
    quo = [0] * (len(num) - d)
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        if c:
            quo[i - d] = c
            for j, y in enumerate(den):
                num[i - d + j] -= c * y
    assert all(x == 0 for x in num), "division was not exact"
    return quo


@lru_cache(maxsize=None)
def _cyclotomic(order: int):
    """Coefficients (ascending) of the cyclotomic polynomial, by the sieve
    Phi_L = (x^L - 1) / prod of Phi_d over proper divisors d of L."""
    poly = [-1] + [0] * (order - 1) + [1]
    for d in range(1, order):
        if order % d == 0:
            poly = _poly_div_exact(poly, _cyclotomic(d))
    return tuple(poly)


def _root_of_unity_sum_is_zero(exponents) -> bool:
    """Exact test of sum_i e^{2 pi i e_i} = 0 for rational exponents."""
    exps = [Fraction(e) % 1 for e in exponents]
    order = lcm(*(e.denominator for e in exps))
    coeffs = [0] * order
    for e in exps:
        coeffs[int(e * order)] += 1
    phi = _cyclotomic(order)
    d = len(phi) - 1
    # reduce mod Phi_order; zero remainder iff the sum vanishes
    for i in range(order - 1, d - 1, -1):
        c = coeffs[i]
        if c:
            for j, y in enumerate(phi):
                coeffs[i - d + j] -= c * y
    return all(x == 0 for x in coeffs)


def verify_hadamard(m: IntMatrix, digits, duals) -> bool:
    """Exact unitarity of the phase matrix: H*H = qI.

    Diagonal entries are q automatically; each off-diagonal entry is a
    sum of q roots of unity, tested for exact vanishing cyclotomically.
    """
    if len(digits) != len(duals):
        raise ValueError("digit and dual sets must have equal size")
    q = len(digits)
    theta = phase_matrix(m, digits, duals)
    for j in range(q):
        for k in range(j + 1, q):
            exps = [theta[d][k] - theta[d][j] for d in range(q)]
            if not _root_of_unity_sum_is_zero(exps):
                return False
    return True


def candidate_spectrum(triple: HadamardTriple, depth: int) -> CandidateSpectrum:
    """All depth-length dual expansions sum_{j<k} (M*)^j s_j.

    Requires a verified triple; the q^depth sums must be pairwise distinct
    (a collision would contradict unitarity and raises
    DuplicateFrequency).  Frequencies are returned mapped out of the
    companion frame when one is recorded, so they live in the same
    coordinates as the instance the triple came from; 0 is always first.
    """
    if not triple.verified:
        raise UnverifiedTriple("run verify() before expanding a spectrum")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    q = triple.q
    mt = triple.m.transpose()
    layers = []
    power = IntMatrix.identity(mt.n)
    for _ in range(depth):
        layers.append([power * s for s in triple.duals])
        power = power * mt
    sums = []
    seen = set()
    for choice in itertools.product(range(q), repeat=depth):
        acc = layers[0][choice[0]]
        for j in range(1, depth):
            acc = acc + layers[j][choice[j]]
        key = acc.entries
        if key in seen:
            raise DuplicateFrequency(f"expansion collision at digits {choice}")
        seen.add(key)
        sums.append(acc)
    if triple.coordinate_frame is not None:
        freqs = map_spectrum(triple.coordinate_frame.b, sums, "inverse")
    else:
        freqs = [s.to_rat() for s in sums]
    assert freqs[0].is_zero()
    return CandidateSpectrum(depth, freqs, triple.coordinate_frame)


__all__ = [
    "CandidateSpectrum",
    "HadamardTriple",
    "PhaseMatrix",
    "candidate_spectrum",
    "construct_dual_digits",
    "phase_matrix",
    "verify_hadamard",
]
