"""
Closed-form dark states.

The n-excitation families for two, three and four modes all have the same product
structure. With the photons outside mode 1 split into groups m_l (l = 2..N, sum n), the
vector labelled by (m_2, ..., m_N) has coefficient

    (-1)^k1 * sqrt(k1! * prod_l A_{m_l}^{k_l}) / prod_l k_l!  *  g1^(n - k1) * prod_l g_l^k_l

on |g, k1, m_2 - k_2, ..., m_N - k_N>, summed over 0 <= k_l <= m_l with k1 = sum k_l. For
three modes the groups are (n - s3, s3), for four modes (n - s3, s3 - s4, s4), and the
family position is the canonical rank of the group tuple (p = s3 + 1 and
p = s3 (s3 + 1) / 2 + s4 + 1 respectively, 1-based).

Integer factors are exact; the square root is taken once per coefficient. The k1 = 0
term has empty products equal to 1.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from darklattice._base._basis import SubspaceSpec, canonical_occupations
from darklattice._base._combinatorics import binomial, permutation_number
from darklattice._base._exceptions import ClosedFormIndexError, DimensionMismatch, ZeroCoupling
from darklattice._base._linalg import VectorSet, gram_schmidt
from darklattice.darkstates._set import DarkLabel, DarkStateSet, Provenance


@dataclass(frozen=True)
class CoefficientTerm:
    """One basis-state coefficient of a product-form dark state, kept in exact integers."""

    occupations: tuple[int, ...]
    k: tuple[int, ...]
    sign: int
    radicand: int
    denominator: int

    @property
    def k1(self) -> int:
        return sum(self.k)

    @property
    def prefactor(self) -> float:
        """(-1)^k1 * sqrt(k1! prod A) / prod k!."""
        return self.sign * math.sqrt(self.radicand) / self.denominator


@dataclass(frozen=True)
class ClosedFormCoefficients:
    """
    Exact coefficient table of one product-form dark state.

    Attributes:
        n (int): Excitation number.
        groups (tuple[int, ...]): Photons per group m_2..m_N, summing to n.
        terms (tuple[CoefficientTerm, ...]): One entry per basis state with a nonzero
            coefficient.
    """

    n: int
    groups: tuple[int, ...]
    terms: tuple[CoefficientTerm, ...]

    @classmethod
    def build(cls, groups: Sequence[int]) -> "ClosedFormCoefficients":
        groups = tuple(int(m) for m in groups)
        if any(m < 0 for m in groups):
            raise ClosedFormIndexError("product family", f"negative group size in {groups}")
        terms = []
        for k in itertools.product(*(range(m + 1) for m in groups)):
            k1 = sum(k)
            radicand = math.factorial(k1)
            denominator = 1
            for m, kl in zip(groups, k):
                radicand *= permutation_number(m, kl)
                denominator *= math.factorial(kl)
            occupations = (k1,) + tuple(m - kl for m, kl in zip(groups, k))
            terms.append(
                CoefficientTerm(
                    occupations=occupations,
                    k=tuple(k),
                    sign=-1 if k1 % 2 else 1,
                    radicand=radicand,
                    denominator=denominator,
                )
            )
        return cls(n=sum(groups), groups=groups, terms=tuple(terms))

    @property
    def N(self) -> int:
        return len(self.groups) + 1

    def evaluate(self, g: Sequence[float]) -> dict[tuple[int, ...], float]:
        """Coefficients for couplings ``g`` keyed by lower-state occupations."""
        g = [float(x) for x in g]
        if len(g) != self.N:
            raise DimensionMismatch("closed-form couplings", self.N, len(g))
        values = {}
        for term in self.terms:
            value = term.prefactor * g[0] ** (self.n - term.k1)
            for gl, kl in zip(g[1:], term.k):
                value *= gl**kl
            values[term.occupations] = value
        return values

    def evaluate_angles(self, thetas: Sequence[float]) -> dict[tuple[int, ...], float]:
        """Coefficients with g_l^k_l g1^(m_l - k_l) replaced by sin^k_l cos^(m_l - k_l)."""
        thetas = [float(t) for t in thetas]
        if len(thetas) != self.N - 1:
            raise DimensionMismatch("mixing angles", self.N - 1, len(thetas))
        values = {}
        for term in self.terms:
            value = term.prefactor
            for theta, m, kl in zip(thetas, self.groups, term.k):
                value *= math.sin(theta) ** kl * math.cos(theta) ** (m - kl)
            values[term.occupations] = value
        return values


@dataclass(frozen=True)
class ClosedFormVector:
    """
    A single unnormalized dark vector over the lower basis.

    Attributes:
        spec (SubspaceSpec): The subspace the vector lives in.
        coefficients (np.ndarray): Coefficients in canonical lower-state order.
        p (int): 1-based family position.
        norm (float): Euclidean norm of ``coefficients``.
    """

    spec: SubspaceSpec
    coefficients: np.ndarray
    p: int

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coefficients))

    def normalized(self) -> np.ndarray:
        return self.coefficients / self.norm


def _lower_index(N: int, n: int) -> dict[tuple[int, ...], int]:
    return {occ: i for i, occ in enumerate(canonical_occupations(N, n))}


def _as_vector(N: int, n: int, values: dict[tuple[int, ...], float]) -> np.ndarray:
    index = _lower_index(N, n)
    vector = np.zeros(len(index))
    for occupations, value in values.items():
        vector[index[occupations]] = value
    return vector


def _couplings(g: Sequence[float], N: int, family: str) -> list[float]:
    g = [float(x) for x in np.asarray(g, dtype=float).ravel()]
    if len(g) != N:
        raise DimensionMismatch(f"{family} couplings", N, len(g))
    return g


def family_position(groups: Sequence[int]) -> int:
    """1-based canonical rank of a group tuple among all tuples with the same sum."""
    groups = tuple(groups)
    for p, candidate in enumerate(canonical_occupations(len(groups), sum(groups)), start=1):
        if candidate == groups:
            return p
    raise ClosedFormIndexError("product family", f"groups {groups} not found")


def two_mode_closed_form(n: int, g: Sequence[float]) -> DarkStateSet:
    """
    The normalized two-mode dark state.

    The coefficient on |g, k2, n - k2> is sqrt(C(n, k2)) (-g1)^(n - k2) g2^k2 / (g1^2 + g2^2)^(n/2).

    Raises:
        ZeroCoupling: If both couplings vanish
    """
    g1, g2 = _couplings(g, 2, "two-mode")
    if g1 == 0.0 and g2 == 0.0:
        raise ZeroCoupling([1, 2])
    spec = SubspaceSpec(N=2, n=n)
    norm = math.hypot(g1, g2) ** n
    values = {
        (k2, n - k2): math.sqrt(binomial(n, k2)) * (-g1) ** (n - k2) * g2**k2 / norm
        for k2 in range(n + 1)
    }
    vector = _as_vector(2, n, values)
    return DarkStateSet(
        spec=spec,
        vectors=VectorSet(vector[:, None]),
        labels=[DarkLabel(Provenance.CLOSED_FORM, p=1, norm=1.0)],
        normalized=True,
    )


def two_mode_mixing_angle_form(n: int, theta: float) -> np.ndarray:
    """
    Two-mode dark state at mixing angle theta (tan theta = g2 / g1).

    The coefficient on |g, k2, n - k2> is sqrt(C(n, k2)) (-cos theta)^(n - k2) sin^k2 theta.
    At theta = 0 this is (-1)^n |g, 0, n>; at theta = pi/2 it is |g, n, 0>.
    """
    values = {
        (k2, n - k2): math.sqrt(binomial(n, k2))
        * (-math.cos(theta)) ** (n - k2)
        * math.sin(theta) ** k2
        for k2 in range(n + 1)
    }
    return _as_vector(2, n, values)


def _check_three_mode_index(n: int, s3: int):
    if not 0 <= s3 <= n:
        raise ClosedFormIndexError("three-mode family", f"need 0 <= s3 <= n, got s3={s3}, n={n}")


def _check_four_mode_index(n: int, s3: int, s4: int):
    if not 0 <= s4 <= s3 <= n:
        raise ClosedFormIndexError(
            "four-mode family", f"need 0 <= s4 <= s3 <= n, got s3={s3}, s4={s4}, n={n}"
        )


def three_mode_closed_form(n: int, s3: int, g: Sequence[float]) -> ClosedFormVector:
    """
    Unnormalized three-mode dark state with groups (n - s3, s3), position p = s3 + 1.

    Raises:
        ClosedFormIndexError: If s3 is outside 0..n
    """
    _check_three_mode_index(n, s3)
    g = _couplings(g, 3, "three-mode")
    table = ClosedFormCoefficients.build((n - s3, s3))
    return ClosedFormVector(SubspaceSpec(N=3, n=n), _as_vector(3, n, table.evaluate(g)), s3 + 1)


def four_mode_closed_form(n: int, s3: int, s4: int, g: Sequence[float]) -> ClosedFormVector:
    """
    Unnormalized four-mode dark state with groups (n - s3, s3 - s4, s4).

    Its position is p = s3 (s3 + 1) / 2 + s4 + 1.

    Raises:
        ClosedFormIndexError: If the indices violate 0 <= s4 <= s3 <= n
    """
    _check_four_mode_index(n, s3, s4)
    g = _couplings(g, 4, "four-mode")
    table = ClosedFormCoefficients.build((n - s3, s3 - s4, s4))
    p = s3 * (s3 + 1) // 2 + s4 + 1
    return ClosedFormVector(SubspaceSpec(N=4, n=n), _as_vector(4, n, table.evaluate(g)), p)


def three_mode_mixing_angle_form(n: int, s3: int, theta2: float, theta3: float) -> np.ndarray:
    """Three-mode family member in mixing angles tan theta_l = g_l / g1."""
    _check_three_mode_index(n, s3)
    table = ClosedFormCoefficients.build((n - s3, s3))
    return _as_vector(3, n, table.evaluate_angles((theta2, theta3)))


def four_mode_mixing_angle_form(
    n: int, s3: int, s4: int, theta2: float, theta3: float, theta4: float
) -> np.ndarray:
    """Four-mode family member in mixing angles tan theta_l = g_l / g1."""
    _check_four_mode_index(n, s3, s4)
    table = ClosedFormCoefficients.build((n - s3, s3 - s4, s4))
    return _as_vector(4, n, table.evaluate_angles((theta2, theta3, theta4)))


def closed_form_family(N: int, n: int, g: Sequence[float]) -> DarkStateSet:
    """
    Every product-form dark state of the subspace, raw and in family order.

    Available for N in {2, 3, 4} at any n, and for any N at n = 1.

    Raises:
        ClosedFormIndexError: For N >= 5 with n >= 2, where no closed form is provided
    """
    if N < 2:
        raise ClosedFormIndexError("closed-form family", "needs at least two modes")
    if N > 4 and n > 1:
        raise ClosedFormIndexError(
            "closed-form family",
            f"no closed form for N={N}, n={n}; use solve_dark_states",
        )
    g = _couplings(g, N, "closed-form family")
    vectors, labels = [], []
    for p, groups in enumerate(canonical_occupations(N - 1, n), start=1):
        vector = _as_vector(N, n, ClosedFormCoefficients.build(groups).evaluate(g))
        vectors.append(vector)
        labels.append(DarkLabel(Provenance.CLOSED_FORM, p=p, norm=float(np.linalg.norm(vector))))
    spec = SubspaceSpec(N=N, n=n)
    return DarkStateSet(spec, VectorSet(np.column_stack(vectors)), labels, normalized=False)


def pair_difference_states(N: int, g: Sequence[float]) -> DarkStateSet:
    """
    Raw single-excitation dark states (g_l |1, 0, ..> - g1 |.., 1_l, ..>) / sqrt(g_l^2 + g1^2).

    The vectors are normalized but not mutually orthogonal.
    """
    g = _couplings(g, N, "pair-difference")
    vectors, labels = [], []
    for l in range(1, N):
        vector = np.zeros(N)
        vector[0], vector[l] = g[l], -g[0]
        norm = math.hypot(g[l], g[0])
        if norm == 0.0:
            raise ZeroCoupling([1, l + 1])
        vectors.append(vector / norm)
        labels.append(DarkLabel(Provenance.CLOSED_FORM, p=l, norm=1.0))
    spec = SubspaceSpec(N=N, n=1)
    return DarkStateSet(spec, VectorSet.from_vectors(vectors, N), labels, normalized=True)


def n_mode_single_excitation_closed_form(N: int, g: Sequence[float]) -> DarkStateSet:
    """
    Orthonormal single-excitation dark states of the N-mode model.

    The first vector is (g2, -g1) / N_[2]; for l' >= 2 the l'-th vector is supported on
    the first l' + 1 lower states with coefficients

        (g_{l'+1} g_1, ..., g_{l'+1} g_{l'}, -N_[l']^2) / (N_[l'] N_[l'+1])

    where N_[l] = sqrt(g_1^2 + ... + g_l^2).

    Raises:
        ZeroCoupling: If any g_j is zero
    """
    g = np.asarray(_couplings(g, N, "N-mode single-excitation"))
    zeros = [j + 1 for j in range(N) if g[j] == 0.0]
    if zeros:
        raise ZeroCoupling(zeros)
    prefix = np.sqrt(np.cumsum(g**2))
    vectors = []
    for lp in range(1, N):
        vector = np.zeros(N)
        if lp == 1:
            vector[0], vector[1] = g[1], -g[0]
            vector /= prefix[1]
        else:
            vector[:lp] = g[lp] * g[:lp]
            vector[lp] = -(prefix[lp - 1] ** 2)
            vector /= prefix[lp - 1] * prefix[lp]
        vectors.append(vector)
    labels = [DarkLabel(Provenance.CLOSED_FORM, p=lp, norm=1.0) for lp in range(1, N)]
    spec = SubspaceSpec(N=N, n=1)
    return DarkStateSet(
        spec, VectorSet.from_vectors(vectors, N, orthonormal=True), labels, normalized=True
    )


def orthonormalize(ds: DarkStateSet) -> DarkStateSet:
    """Gram-Schmidt of a family in its stored order; position labels are kept."""
    q = gram_schmidt(ds.vectors)
    labels = [DarkLabel(Provenance.GRAM_SCHMIDT, p=label.p) for label in ds.labels]
    return DarkStateSet(ds.spec, q, labels, normalized=True)
