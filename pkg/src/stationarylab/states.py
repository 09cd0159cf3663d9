"""Certified tests and constructions on stationary states: Cesaro decay
brackets, Powers averaging searches, the staged construction of laws whose
convolution drives every test element to its trace, finite-dimensional
stationary-state solvers, and crossed-product state evaluation.

Every test is bracket-based: a claim "passes" only on a certified upper bound
and "fails" only on a certified lower bound; anything else is inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .algebra import (
    AlgebraElement,
    certify_norm,
    canonical_trace,
    norm_upper_bound,
    DEFAULT_SUPPORT_CAP,
)
from .boundary import CylinderMeasure
from .errors import (
    ConstructionError,
    ContextMismatchError,
    MalformedInputError,
    PreconditionError,
    ResourceLimitError,
)
from .freegroup import FiniteQuotient, FreeGroupContext, Word, ball, conjugate
from .walks import (
    GroupMeasure,
    cesaro_measure,
    convolve_measures,
    decay_schedule,
    measure_convolve_element,
    rng_from_seed,
)


# ---------------------------------------------------------------------------
# Cesaro decay test
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CesaroRow:
    n: int
    lower: float
    upper: float
    upper_method: str


@dataclass(frozen=True)
class CesaroReport:
    """Certified brackets on ||mu_n * a - tau0(a) 1|| for n = 1..n_max."""

    element_id: str
    rows: tuple[CesaroRow, ...]
    generating: bool | None
    partial: bool
    verdict: str

    def uppers(self) -> list[float]:
        return [r.upper for r in self.rows]


def cesaro_test(
    a: AlgebraElement,
    mu: GroupMeasure,
    n_max: int,
    moments: int = 1,
    support_cap: int = DEFAULT_SUPPORT_CAP,
) -> CesaroReport:
    """Bracket the Cesaro-averaged convolution distance to the trace.

    For each n the element b_n = mu_n * a - tau0(a) lambda_e is formed with
    mu_n the n-th Cesaro average, and its norm is bracketed.  Decay of the
    certified upper bounds to 0 for every a is the unique-stationarity
    criterion; a finite family can only ever provide supporting evidence, so
    the verdict reads "decaying"/"not decaying", never "unique".
    """
    if mu.rank != a.rank:
        raise ContextMismatchError(f"rank mismatch: {mu.rank} vs {a.rank}")
    try:
        generating = mu.is_generating()
    except ResourceLimitError:
        generating = None
    e = Word((), a.rank, _reduced=True)
    trace_term = AlgebraElement.delta(e, canonical_trace(a))
    rows: list[CesaroRow] = []
    partial = False
    for n in range(1, n_max + 1):
        try:
            mu_n = cesaro_measure(mu, n, support_cap)
            b_n = measure_convolve_element(mu_n, a) - trace_term
            bracket = certify_norm(b_n, moments, support_cap)
        except ResourceLimitError:
            partial = True
            break
        rows.append(
            CesaroRow(n=n, lower=bracket.lower, upper=bracket.upper,
                      upper_method=bracket.upper_method)
        )
    ups = [r.upper for r in rows[-3:]]
    decaying = len(ups) == 3 and ups[0] > ups[1] > ups[2]
    if decaying:
        verdict = "decaying"
        if generating:
            verdict += "; consistent with unique stationarity"
    else:
        verdict = "not decaying over the last three checkpoints"
    return CesaroReport(
        element_id=repr(a),
        rows=tuple(rows),
        generating=generating,
        partial=partial,
        verdict=verdict,
    )


# ---------------------------------------------------------------------------
# Powers averaging search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowersCertificate:
    """Conjugators h_1..h_n and a certified upper bound on the averaged element."""

    target: str
    conjugators: tuple[Word, ...]
    upper_bound: float
    epsilon: float
    success: bool
    strategy: str
    n: int


def _averaged_element(x: AlgebraElement, conjugators: Sequence[Word]) -> AlgebraElement:
    """(1/n) sum_k Ad_{h_k^-1}(x)  (for x = lambda_g this is the Powers average)."""
    n = len(conjugators)
    out = AlgebraElement.zero(x.rank)
    for h in conjugators:
        out = out + AlgebraElement(
            {conjugate(w, h): c / n for w, c in x.coeffs.items()}, x.rank
        )
    return out


def _commutes(u: Word, v: Word) -> bool:
    return u * v == v * u


def _geometric_base_candidates(rank: int, max_len: int = 3):
    ctx = FreeGroupContext(rank)
    for w in ball(ctx, max_len):
        if not w.is_identity():
            yield w


def powers_search(
    g: Word,
    epsilon: float,
    strategy: str = "geometric",
    budget: int = 64,
    seed: int = 0,
) -> PowersCertificate:
    """Search conjugator tuples driving the averaged translate below epsilon.

    geometric: h_k = w^k for base words w scanned in length-lex order (bases
    commuting with g are skipped); smallest n wins, ties broken by the
    lexicographically least base.  random: seeded tuples drawn from a ball.
    The certificate stores the first tuple whose certified upper bound is
    below epsilon, or the best tuple found within the budget, marked failed.
    """
    if g.is_identity():
        raise PreconditionError("the identity cannot be averaged away")
    if epsilon <= 0:
        raise PreconditionError(f"epsilon must be positive, got {epsilon}")
    x = AlgebraElement.delta(g)
    rank = x.rank
    best: tuple[float, tuple[Word, ...], int] | None = None
    if strategy == "geometric":
        bases = [w for w in _geometric_base_candidates(rank) if not _commutes(w, g)]
        for n in range(1, budget + 1):
            for w in bases:
                hs = tuple(w**k for k in range(1, n + 1))
                u = norm_upper_bound(_averaged_element(x, hs))
                if best is None or u < best[0]:
                    best = (u, hs, n)
                if u < epsilon:
                    return PowersCertificate(
                        target=str(g), conjugators=hs, upper_bound=u,
                        epsilon=epsilon, success=True, strategy=strategy, n=n,
                    )
    elif strategy == "random":
        ctx = FreeGroupContext(rank)
        pool = [w for w in ball(ctx, 4) if not w.is_identity()]
        rng = rng_from_seed(seed)
        for trial in range(budget):
            n = 2 ** min(trial // 4 + 1, 6)
            picks = rng.integers(0, len(pool), size=n)
            hs = tuple(pool[int(i)] for i in picks)
            u = norm_upper_bound(_averaged_element(x, hs))
            if best is None or u < best[0]:
                best = (u, hs, n)
            if u < epsilon:
                return PowersCertificate(
                    target=str(g), conjugators=hs, upper_bound=u,
                    epsilon=epsilon, success=True, strategy=strategy, n=n,
                )
    else:
        raise MalformedInputError(f"unknown strategy {strategy!r}")
    u, hs, n = best if best is not None else (float("inf"), (), 0)
    return PowersCertificate(
        target=str(g), conjugators=hs, upper_bound=u,
        epsilon=epsilon, success=False, strategy=strategy, n=n,
    )


def verify_powers_certificate(cert: PowersCertificate, g: Word) -> float:
    """Recompute the certified bound from the raw inputs; deterministic."""
    x = AlgebraElement.delta(g)
    return norm_upper_bound(_averaged_element(x, cert.conjugators))


# ---------------------------------------------------------------------------
# staged construction of a law with certified trace-convergence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LevelCertificate:
    level: int
    constraint_id: str
    upper_bound: float
    epsilon: float


@dataclass(frozen=True)
class FinalCheck:
    j: int
    n_j: int
    element_id: str
    upper_bound: float
    threshold: float


@dataclass(frozen=True)
class CStarSimpleMeasure:
    """A truncated staged mixture mu = sum_{l<=L} 2^-l mu_l (tail folded into
    level L) with per-level Powers certificates and final convolution checks."""

    measure: GroupMeasure
    levels: tuple[GroupMeasure, ...]
    level_certificates: tuple[LevelCertificate, ...]
    schedule: tuple[int, ...]
    final_checks: tuple[FinalCheck, ...]
    tail_bound: float
    family_ids: tuple[str, ...]

    @property
    def all_verified(self) -> bool:
        level_ok = all(c.upper_bound < c.epsilon for c in self.level_certificates)
        final_ok = all(c.upper_bound < c.threshold for c in self.final_checks)
        return level_ok and final_ok


def _multi_element_powers(
    constraints: Sequence[tuple[str, AlgebraElement]],
    epsilon: float,
    budget: int,
) -> tuple[tuple[Word, ...], list[LevelCertificate], float]:
    """One conjugator tuple certifying every constraint element below epsilon.

    Scans geometric families h_k = w^k with the tuple size n doubling up to
    the budget and base words in length-lex order (bases commuting with any
    constraint support word are skipped); the shared exponent lattice keeps
    supports of later convolution powers thin.
    """
    rank = constraints[0][1].rank
    e = Word((), rank, _reduced=True)
    supports = {w for _, x in constraints for w in x.support() if not w.is_identity()}
    bases = [
        w
        for w in _geometric_base_candidates(rank)
        if all(not _commutes(w, s) for s in supports)
    ]
    centered = [
        (cid, x - AlgebraElement.delta(e, canonical_trace(x))) for cid, x in constraints
    ]
    best_u, best = float("inf"), None
    sizes = []
    n = 1
    while n <= budget:
        sizes.append(n)
        n *= 2
    for n in sizes:
        for w in bases:
            hs = tuple(w**k for k in range(1, n + 1))
            certs = []
            worst = 0.0
            for cid, x in centered:
                u = norm_upper_bound(_averaged_element(x, hs))
                certs.append((cid, u))
                worst = max(worst, u)
                if worst >= epsilon:
                    break
            if worst < best_u:
                best_u, best = worst, (hs, certs)
            if worst < epsilon:
                return (
                    hs,
                    [
                        LevelCertificate(level=0, constraint_id=cid,
                                         upper_bound=u, epsilon=epsilon)
                        for cid, u in certs
                    ],
                    worst,
                )
    return (), [], best_u


def build_c_star_simple_measure(
    test_family: Sequence[AlgebraElement],
    levels: int,
    eps_schedule: Sequence[float] | None = None,
    budget: int = 128,
    max_constraints: int = 512,
    support_cap: int = DEFAULT_SUPPORT_CAP,
) -> CStarSimpleMeasure:
    """Run the staged averaging induction at truncation level `levels`.

    At level l a single conjugator tuple must drive every required element
    below eps_l = 2^-l: the centered family members themselves, plus every
    product mu_{k_r} * ... * mu_{k_1} * a_s with s, k_i < l and r < n_l (the
    exponents n_l come from decay_schedule; the product set is truncated to a
    deterministic prefix of max_constraints entries per level).  The assembled
    law is sum_l 2^-l (uniform on the tuple), with the 2^-L tail folded into
    the top level, and the final certified bounds
    ||mu^{n_j} * a - tau0(a) 1|| are rechecked for every family member at the
    scheduled exponents.
    """
    if not test_family:
        raise PreconditionError("the test family must be nonempty")
    rank = test_family[0].rank
    family = []
    for a in test_family:
        l1 = a.l1()
        family.append(a if l1 <= 1 else (1.0 / l1) * a)
    e = Word((), rank, _reduced=True)
    schedule = decay_schedule(levels)
    level_measures: list[GroupMeasure] = []
    level_certs: list[LevelCertificate] = []
    for l in range(1, levels + 1):
        eps_l = 0.5**l if eps_schedule is None else float(eps_schedule[l - 1])
        constraints: list[tuple[str, AlgebraElement]] = [
            (f"a[{s}]", a) for s, a in enumerate(family)
        ]
        # products mu_{k_r} * ... * mu_{k_1} * a_s, s < l, k_i < l, r < n_l
        n_l = schedule[l - 1]
        frontier: list[tuple[str, AlgebraElement]] = [
            (f"a[{s}]", family[s]) for s in range(min(l - 1, len(family)))
        ]
        for r in range(1, n_l):
            if len(constraints) >= max_constraints:
                break
            nxt = []
            for cid, x in frontier:
                for k in range(1, l):
                    y = measure_convolve_element(level_measures[k - 1], x)
                    nxt.append((f"mu[{k}]*{cid}", y))
            constraints.extend(nxt[: max_constraints - len(constraints)])
            frontier = nxt
        hs, certs, best = _multi_element_powers(constraints, eps_l, budget)
        if not hs:
            raise ConstructionError(level=l, best_bound=best)
        level_certs.extend(
            LevelCertificate(level=l, constraint_id=c.constraint_id,
                             upper_bound=c.upper_bound, epsilon=eps_l)
            for c in certs
        )
        level_measures.append(GroupMeasure.uniform_on(list(hs)))

    weights = [Fraction(1, 2**l) for l in range(1, levels + 1)]
    weights[-1] = weights[-1] + Fraction(1, 2**levels)  # fold the tail
    mixture: dict[Word, Fraction] = {}
    for wgt, m in zip(weights, level_measures):
        for w, p in m.masses.items():
            mixture[w] = mixture.get(w, Fraction(0)) + wgt * p
    mu = GroupMeasure(mixture, rank)

    final_checks: list[FinalCheck] = []
    power = GroupMeasure.dirac(e)
    reached = 0
    for j, n_j in enumerate(schedule, start=1):
        for _ in range(n_j - reached):
            power = convolve_measures(power, mu, support_cap)
        reached = n_j
        for s, a in enumerate(family):
            b = measure_convolve_element(power, a) - AlgebraElement.delta(
                e, canonical_trace(a)
            )
            u = norm_upper_bound(b)
            final_checks.append(
                FinalCheck(j=j, n_j=n_j, element_id=f"a[{s}]",
                           upper_bound=u, threshold=5 * 0.5**j)
            )
    return CStarSimpleMeasure(
        measure=mu,
        levels=tuple(level_measures),
        level_certificates=tuple(level_certs),
        schedule=tuple(schedule),
        final_checks=tuple(final_checks),
        tail_bound=0.5**levels,
        family_ids=tuple(f"a[{s}]" for s in range(len(family))),
    )


# ---------------------------------------------------------------------------
# finite-dimensional stationary states
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityState:
    """A positive unit-trace matrix representing a state on a matrix algebra."""

    rep: FiniteQuotient
    matrix: np.ndarray
    psd_adjustment: float = 0.0

    def __post_init__(self):
        m = self.matrix
        if np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise MalformedInputError("density is not Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-12:
            raise MalformedInputError(f"trace {np.trace(m)} is not 1")
        if np.min(np.linalg.eigvalsh(m)) < -1e-10:
            raise MalformedInputError("density has a negative eigenvalue")

    def value(self, x: np.ndarray) -> complex:
        return complex(np.trace(self.matrix @ x))


def _convolution_channel(rep: FiniteQuotient, mu: GroupMeasure):
    """rho -> sum_g mu(g) U_g rho U_g^*, as a matrix on vec(rho)."""
    m = rep.dim
    out = np.zeros((m * m, m * m), dtype=complex)
    for g, p in sorted(mu.masses.items(), key=lambda x: x[0].sort_key()):
        U = rep.evaluate(g)
        out += float(p) * np.kron(U, U.conj())
    return out


def _herm_to_real(H: np.ndarray) -> np.ndarray:
    return np.concatenate([H.real.reshape(-1), H.imag.reshape(-1)])


def _real_to_herm(v: np.ndarray, m: int) -> np.ndarray:
    H = v[: m * m].reshape(m, m) + 1j * v[m * m :].reshape(m, m)
    return (H + H.conj().T) / 2


def stationary_hermitian_basis(
    rep: FiniteQuotient, mu: GroupMeasure, tol: float = 1e-10
) -> np.ndarray:
    """Orthonormal Hermitian basis of the fixed space of the convolution channel.

    Returned as an array of shape (d, m, m).  The identity direction is
    always present (unitary conjugation fixes 1/m).  Hermitian matrices are
    handled through a real parametrization so the basis stays Hermitian.
    """
    m = rep.dim
    Phi = _convolution_channel(rep, mu)
    # fixed vectors of Phi: null space of Phi - I via SVD
    _, s, Vh = np.linalg.svd(Phi - np.eye(m * m))
    null = Vh[s < tol].conj()
    fixed = [v.reshape(m, m) for v in null]
    # Hermitianize (the fixed space is *-closed) and re-orthonormalize over R
    reals = []
    for H in fixed:
        reals.append(_herm_to_real((H + H.conj().T) / 2))
        reals.append(_herm_to_real((H - H.conj().T) / 2j))
    flat = np.array(reals).T  # (2 m^2, 2 d)
    u, sv, _ = np.linalg.svd(flat, full_matrices=False)
    keep = [i for i in range(len(sv)) if sv[i] > tol * max(1.0, sv[0])]
    return np.array([_real_to_herm(u[:, i], m) for i in keep])


def finite_dim_stationary_states(
    rep: FiniteQuotient, mu: GroupMeasure, tol: float = 1e-10
) -> list[DensityState]:
    """Density matrices spanning the stationary states of the convolution channel.

    Returns the maximally mixed state followed by one perturbed state per
    traceless fixed direction, so the affine span of the returned densities is
    the whole fixed-state set.  Each state satisfies the stationarity residual
    bound; PSD flooring, if it fires, is recorded in psd_adjustment.
    """
    if rep.dim > 64:
        raise PreconditionError(f"dimension {rep.dim} exceeds the supported 64")
    if mu.rank != rep.rank:
        raise ContextMismatchError(f"rank mismatch: {mu.rank} vs {rep.rank}")
    m = rep.dim
    basis = stationary_hermitian_basis(rep, mu, tol)
    Phi = _convolution_channel(rep, mu)

    def is_stationary(rho: np.ndarray) -> float:
        return float(
            np.max(np.abs((Phi @ rho.reshape(-1)).reshape(m, m) - rho))
        )

    # orthonormal basis of the traceless fixed directions
    traceless = [H - (np.trace(H) / m) * np.eye(m) for H in basis]
    flat = np.array([_herm_to_real(T) for T in traceless]).T
    u, sv, _ = np.linalg.svd(flat, full_matrices=False)
    directions = [
        _real_to_herm(u[:, i], m)
        for i in range(len(sv))
        if sv[i] > tol * max(1.0, float(sv[0]))
    ]

    states = [DensityState(rep=rep, matrix=np.eye(m, dtype=complex) / m)]
    for T in directions:
        spread = np.max(np.abs(np.linalg.eigvalsh(T)))
        rho = np.eye(m, dtype=complex) / m + T / (2 * m * spread)
        adjustment = 0.0
        evals, evecs = np.linalg.eigh(rho)
        if np.min(evals) < 0:
            floored = np.maximum(evals, 0.0)
            adjustment = float(np.sum(floored - evals))
            rho = (evecs * floored) @ evecs.conj().T
            rho = rho / np.trace(rho).real
        if is_stationary(rho) > max(tol, 1e-9):
            continue
        states.append(DensityState(rep=rep, matrix=rho, psd_adjustment=adjustment))
    return states


# ---------------------------------------------------------------------------
# crossed-product state
# ---------------------------------------------------------------------------


def crossed_product_state(
    f_terms: Mapping[Word, Mapping[Word, complex]],
    nu: CylinderMeasure,
) -> complex:
    """Evaluate the boundary-integral state on sum_g f_g lambda_g.

    Each f_g is a cylinder function (cylinder base word -> coefficient, the
    identity key meaning the constant 1); the state integrates the identity
    coefficient against nu and kills every other term.
    """
    e = None
    for g in f_terms:
        if g.is_identity():
            e = g
            break
    if e is None:
        return 0j
    acc = 0j
    for w, c in sorted(f_terms[e].items(), key=lambda p: p[0].sort_key()):
        acc += complex(c) * float(nu.mass(w))
    return acc
