"""Brute-force and sampling evidence.

Nothing in this module proves a theorem.  The clique search is exact over
the finite lattice box it is given, the completeness defect is a numeric
Parseval diagnostic, and the chaos game samples the invariant measure.
Reports state their scope (lattice, box, truncation) so they can be read
as evidence and nothing more.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

from .errors import TooLarge
from .fourier import certify_orthogonal, mu_hat
from .linalg import RatVector, inverse

_CANDIDATE_CAP = 5000


class CliqueReport:
    """Exact maximum certified-orthogonal clique through 0 on a lattice box."""

    __slots__ = (
        "lattice_denominator",
        "box_radius",
        "max_clique_size",
        "witness_set",
        "certified",
    )

    def __init__(self, lattice_denominator, box_radius, max_clique_size, witness_set, certified):
        self.lattice_denominator = lattice_denominator
        self.box_radius = box_radius
        self.max_clique_size = max_clique_size
        self.witness_set = witness_set
        self.certified = certified

    def __repr__(self):
        return (
            f"CliqueReport(L={self.lattice_denominator}, N={self.box_radius}, "
            f"size={self.max_clique_size})"
        )


class CompletenessReport:
    __slots__ = ("depth", "tail_eps", "probes", "defects")

    def __init__(self, depth, tail_eps, probes, defects):
        self.depth = depth
        self.tail_eps = tail_eps
        self.probes = probes
        self.defects = defects

    def __repr__(self):
        return f"CompletenessReport(depth={self.depth}, defects={self.defects})"


class AttractorSample:
    __slots__ = ("points", "iterations", "seed", "radius")

    def __init__(self, points, iterations, seed, radius):
        self.points = points
        self.iterations = iterations
        self.seed = seed
        self.radius = radius

    def __repr__(self):
        return f"AttractorSample(iterations={self.iterations}, seed={self.seed})"


# ---------------------------------------------------------------------------
# maximum orthogonal clique
# ---------------------------------------------------------------------------


def _max_clique(n_vertices: int, adj_bits: list[int]) -> list[int]:
    """Exact maximum clique, branch and bound with a greedy coloring bound.

    Vertex sets are bitmasks over the caller's fixed vertex order, which
    keeps the search deterministic and the set operations cheap."""
    # greedy warm start: a decent lower bound prunes most of the tree
    best_size = 0
    best_bits = 0
    for seed in range(n_vertices):
        size, bits, cand = 1, 1 << seed, adj_bits[seed]
        while cand:
            bit = cand & -cand
            size += 1
            bits |= bit
            cand &= adj_bits[bit.bit_length() - 1]
        if size > best_size:
            best_size, best_bits = size, bits

    def expand(rsize: int, rbits: int, cand: int):
        nonlocal best_size, best_bits
        if cand == 0:
            if rsize > best_size:
                best_size, best_bits = rsize, rbits
            return
        # color classes are independent sets: a clique meets each at most
        # once, so the class index bounds any clique inside the remainder
        order = []
        colors = []
        uncolored = cand
        color = 0
        while uncolored:
            color += 1
            avail = uncolored
            while avail:
                bit = avail & -avail
                v = bit.bit_length() - 1
                order.append(v)
                colors.append(color)
                uncolored ^= bit
                avail &= ~adj_bits[v] & ~bit
        for idx in range(len(order) - 1, -1, -1):
            if rsize + colors[idx] <= best_size:
                return
            v = order[idx]
            bit = 1 << v
            expand(rsize + 1, rbits | bit, cand & adj_bits[v])
            cand ^= bit

    expand(0, 0, (1 << n_vertices) - 1)
    return [v for v in range(n_vertices) if best_bits >> v & 1]


def max_orthogonal_clique(inst, lattice_denominator: int, box_radius: int, j_max=None) -> CliqueReport:
    """Largest certified-orthogonal set through 0 in (1/L) Z^n cap [-N, N]^n.

    Exhaustive and exact for the stated lattice box; frequencies outside
    the lattice are invisible to it, so the result is evidence about the
    box, not a bound on orthogonal sets in general.  Raises TooLarge when
    the box has more than 5000 lattice points.

    Exact maximum clique is exponential in the worst case.  One- and
    two-dimensional boxes stay fast at any permitted radius; dense
    three-dimensional instances (hundreds of mutually orthogonal lattice
    points) are only practical up to radius about 3.
    """
    ell = lattice_denominator
    n = inst.m.n
    if ell < 1 or box_radius < 0:
        raise ValueError("lattice denominator must be >= 1 and box radius >= 0")
    per_axis = 2 * box_radius * ell + 1
    if per_axis ** n > _CANDIDATE_CAP:
        raise TooLarge(
            f"{per_axis ** n} lattice points exceed the cap of {_CANDIDATE_CAP}"
        )
    span = range(-box_radius * ell, box_radius * ell + 1)
    zero = RatVector([0] * n)
    points = [
        RatVector([Fraction(g, ell) for g in coords])
        for coords in itertools.product(span, repeat=n)
    ]
    # orthogonality depends only on the difference, and negating it flips
    # every phase mod 1 without changing the verdict, so one certification
    # per sign class of lattice difference covers all pairs
    cache: dict[tuple, bool] = {}

    def connected(a: RatVector, b: RatVector) -> bool:
        key = tuple(int((x - y) * ell) for x, y in zip(a, b))
        lead = next((c for c in key if c != 0), 0)
        if lead < 0:
            key = tuple(-c for c in key)
        hit = cache.get(key)
        if hit is None:
            hit = certify_orthogonal(inst, a, b, j_max) is not None
            cache[key] = hit
        return hit

    neighbors_of_zero = [p for p in points if not p.is_zero() and connected(zero, p)]
    neighbors_of_zero.sort(key=lambda p: p.entries)
    count = len(neighbors_of_zero)
    adj_bits = [0] * count
    for i in range(count):
        for j in range(i + 1, count):
            if connected(neighbors_of_zero[i], neighbors_of_zero[j]):
                adj_bits[i] |= 1 << j
                adj_bits[j] |= 1 << i
    clique = _max_clique(count, adj_bits)
    witness = [zero] + [neighbors_of_zero[i] for i in sorted(clique)]
    certified = all(
        certify_orthogonal(inst, a, b, j_max) is not None
        for a, b in itertools.combinations(witness, 2)
    )
    return CliqueReport(
        lattice_denominator=ell,
        box_radius=box_radius,
        max_clique_size=len(witness),
        witness_set=witness,
        certified=certified,
    )


# ---------------------------------------------------------------------------
# Parseval completeness defect
# ---------------------------------------------------------------------------


def completeness_defect(inst, spectrum, probes, tail_eps: float = 1e-9) -> CompletenessReport:
    """1 - sum over the spectrum of |mu_hat(xi - lambda)|^2 at each probe.

    A spectrum makes the defect tend to 0 from above as the truncation
    depth grows; values far from 0 (or clearly negative) witness that the
    frequency set is not behaving like an orthonormal system.  Accepts a
    CandidateSpectrum or any list of frequencies, since comparing good
    and bad frequency sets is the point of the diagnostic.
    """
    freqs = getattr(spectrum, "frequencies", spectrum)
    depth = getattr(spectrum, "depth", None)
    defects = []
    for xi in probes:
        xi = xi if isinstance(xi, RatVector) else RatVector(xi)
        q_sum = 0.0
        for lam in freqs:
            val = mu_hat(inst, xi - lam, tail_eps)
            q_sum += abs(val.value) ** 2
        defects.append(1.0 - q_sum)
    return CompletenessReport(depth=depth, tail_eps=tail_eps, probes=list(probes), defects=defects)


# ---------------------------------------------------------------------------
# chaos game sampling
# ---------------------------------------------------------------------------

_BURN_IN = 100


def attractor_radius(inst) -> float:
    """Sup-norm bound on the invariant set: max digit norm times the
    summed norms of inverse powers, via exact geometric tail bounding."""
    m_inv = inverse(inst.m)
    dmax = (inst.q - 1) * max(abs(e) for e in inst.v)
    power = m_inv
    partial = Fraction(0)
    for _ in range(10 * inst.m.n):
        rho = power.inf_norm()
        partial += rho
        if rho < 1:
            return float(dmax * partial / (1 - rho))
        power = power * m_inv
    raise AssertionError("expanding instance must contract eventually")


def chaos_game(inst, iterations: int, seed: int) -> AttractorSample:
    """Sample the invariant measure by random digit-driven iteration.

    x <- M^{-1}(x + k v) with k uniform on {0, ..., q-1}; the first 100
    iterates are discarded.  Deterministic for a fixed seed."""
    rng = random.Random(seed)
    n = inst.m.n
    m_inv = np.array([[float(x) for x in row] for row in inverse(inst.m).rows])
    v = np.array([float(x) for x in inst.v])
    x = np.zeros(n)
    for _ in range(_BURN_IN):
        x = m_inv @ (x + rng.randrange(inst.q) * v)
    points = np.empty((iterations, n))
    for i in range(iterations):
        x = m_inv @ (x + rng.randrange(inst.q) * v)
        points[i] = x
    return AttractorSample(
        points=points, iterations=iterations, seed=seed, radius=attractor_radius(inst)
    )


__all__ = [
    "AttractorSample",
    "CliqueReport",
    "CompletenessReport",
    "attractor_radius",
    "chaos_game",
    "completeness_defect",
    "max_orthogonal_clique",
]
