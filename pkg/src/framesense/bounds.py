"""Near-optimality certificates for frame-potential selections.

The quantities here bracket how far a greedy selection can sit from the
exhaustive optimum. ``gamma`` bounds the frame-potential ratio, the MSE
envelope converts a selection's frame potential and extreme eigenvalues into
a bracket on its reconstruction error, ``delta`` measures how tightly the
subset spectra concentrate, and ``eta`` combines the pieces into an MSE
approximation factor. A helper covers the asymptotic random-matrix scenario
where those factors have closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import RANK_RTOL, as_sensing_matrix, frame_potential, gram, sym_eigenvalues

__all__ = [
    "BOUNDS_CSV_HEADER",
    "BoundsReport",
    "DELTA_SUBSET_LIMIT",
    "MPScenario",
    "compute_bounds_report",
    "delta_bound",
    "fp_approx_factor",
    "l_min_max",
    "mse_approx_factor",
    "mse_envelope",
    "mp_scenario",
    "sharma_interval",
    "untf_reference",
]

# Spectrum-concentration search refuses to enumerate more subsets than this.
DELTA_SUBSET_LIMIT = 1_000_000

BOUNDS_CSV_HEADER = (
    "N,K,L,gamma,eta,l_min,l_max,l_mean,d,delta,mse_bound_lower,mse_bound_upper"
)


def l_min_max(psi, num_sensors: int):
    """Extremal and mean selected energies at a given selection size.

    Returns ``(l_min, l_max, l_mean)`` where ``l_min``/``l_max`` are the sums
    of the ``num_sensors`` smallest/largest squared row norms and ``l_mean``
    is ``num_sensors / N`` times the total energy.
    """
    m = as_sensing_matrix(psi)
    if not 1 <= num_sensors <= m.n:
        raise ValueError(f"selection size must lie in [1, {m.n}], got {num_sensors}")
    sq = np.sort(m.row_norms**2)
    l_min = float(np.sum(sq[:num_sensors]))
    l_max = float(np.sum(sq[m.n - num_sensors :]))
    l_mean = num_sensors / m.n * float(np.sum(sq))
    return l_min, l_max, l_mean


def fp_approx_factor(psi, num_sensors: int) -> float:
    """Multiplicative factor bounding greedy frame potential against the optimum.

    Computed as ``1 + (FP(psi) * K / l_min**2 - 1) / e`` on the original,
    un-normalized matrix. Always at least 1.
    """
    m = as_sensing_matrix(psi)
    if not m.k <= num_sensors <= m.n:
        raise ValueError(
            f"selection size must lie in [{m.k}, {m.n}] for a {m.n} x {m.k} matrix, "
            f"got {num_sensors}"
        )
    l_min, _, _ = l_min_max(m, num_sensors)
    if l_min <= 0.0:
        raise ValueError("zero rows make the approximation factor undefined")
    fp = frame_potential(m)
    return 1.0 + (fp * m.k / l_min**2 - 1.0) / math.e


def mse_approx_factor(gamma: float, d: float, delta: float, l_min: float, l_max: float) -> float:
    """MSE approximation factor from its ingredients.

    ``gamma * ((d + delta) / (d - delta))**2 * l_max / l_min``. The bound is
    vacuous when the spectrum half-width ``delta`` reaches the center ``d``,
    and that case raises.
    """
    if not (math.isfinite(gamma) and gamma >= 1.0):
        raise ValueError(f"gamma must be finite and at least 1, got {gamma}")
    if not (math.isfinite(delta) and delta >= 0.0):
        raise ValueError(f"delta must be finite and nonnegative, got {delta}")
    if l_min <= 0.0 or l_max < l_min:
        raise ValueError(f"need 0 < l_min <= l_max, got l_min={l_min}, l_max={l_max}")
    if not d > delta:
        raise ValueError(f"bound is vacuous: spectrum center d={d} does not exceed delta={delta}")
    return gamma * ((d + delta) / (d - delta)) ** 2 * (l_max / l_min)


def mse_envelope(psi, sel, l_min: float, l_max: float):
    """Bracket on unit-variance MSE from a selection's frame potential.

    Returns ``(lower, upper)`` with
    ``lower = (K / l_max) * FP(sel) / lambda_max**2`` and
    ``upper = (K / l_min) * FP(sel) / lambda_min**2`` where the lambdas are
    the extreme eigenvalues of the selection's Gram matrix. A rank-deficient
    selection yields an infinite upper bound; a fully degenerate one yields
    an infinite bracket.
    """
    m = as_sensing_matrix(psi)
    if l_min <= 0.0 or l_max < l_min:
        raise ValueError(f"need 0 < l_min <= l_max, got l_min={l_min}, l_max={l_max}")
    fp_sel = frame_potential(m, sel)
    lam = sym_eigenvalues(gram(m, sel)).eigenvalues
    largest = float(lam[0])
    smallest = float(lam[-1])
    if largest <= 0.0:
        return math.inf, math.inf
    lower = (m.k / l_max) * fp_sel / largest**2
    if smallest < RANK_RTOL * largest:
        return lower, math.inf
    upper = (m.k / l_min) * fp_sel / smallest**2
    return lower, upper


def delta_bound(psi, num_sensors: int) -> float:
    """Tightest half-width of subset spectra around the mean-energy center.

    Enumerates every size-``num_sensors`` subset, takes the eigenvalues of
    each subset's Gram matrix, and returns the largest absolute deviation
    from ``l_mean / K``. Minimal by construction. Instances with more than
    :data:`DELTA_SUBSET_LIMIT` subsets are refused.
    """
    from itertools import combinations

    m = as_sensing_matrix(psi)
    if not 1 <= num_sensors <= m.n:
        raise ValueError(f"selection size must lie in [1, {m.n}], got {num_sensors}")
    count = math.comb(m.n, num_sensors)
    if count > DELTA_SUBSET_LIMIT:
        raise ValueError(
            f"C({m.n}, {num_sensors}) = {count} subsets exceeds the enumeration "
            f"guard of {DELTA_SUBSET_LIMIT}"
        )
    _, _, l_mean = l_min_max(m, num_sensors)
    center = l_mean / m.k
    worst = 0.0
    for sub in combinations(range(m.n), num_sensors):
        lam = sym_eigenvalues(gram(m, sub)).eigenvalues
        dev = float(np.max(np.abs(lam - center)))
        if dev > worst:
            worst = dev
    return worst


def sharma_interval(values):
    """Bracket on the arithmetic-to-harmonic mean ratio of positive values.

    With m, M the extreme values and S the population standard deviation,
    the ratio A/H lies in
    ``[(M - S)**2 / (M (M - 2 S)), (m + S)**2 / (m (m + 2 S))]``.
    When ``M <= 2 S`` the printed lower form is undefined, and since A/H is
    never below 1 the lower bound is clamped to 1 in that case.
    """
    v = np.asarray(list(values), dtype=np.float64)
    if v.size < 2:
        raise ValueError("need at least two values")
    if not np.isfinite(v).all() or np.any(v <= 0.0):
        raise ValueError("values must be positive and finite")
    mean = float(v.mean())
    std = float(np.sqrt(np.mean((v - mean) ** 2)))
    small = float(v.min())
    big = float(v.max())
    upper = (small + std) ** 2 / (small * (small + 2.0 * std))
    if big > 2.0 * std:
        lower = (big - std) ** 2 / (big * (big - 2.0 * std))
    else:
        lower = 1.0
    return lower, upper


def untf_reference(num_sensors: int, k: int):
    """Frame potential, unit-variance MSE, and eigenvalue of a unit-norm tight frame.

    Returns ``(L**2 / K, K**2 / L, L / K)`` for L rows in K dimensions.
    """
    if k < 1 or num_sensors < k:
        raise ValueError(f"need num_sensors >= k >= 1, got num_sensors={num_sensors}, k={k}")
    return (
        num_sensors**2 / k,
        k**2 / num_sensors,
        num_sensors / k,
    )


@dataclass(frozen=True)
class MPScenario:
    """Asymptotic scenario: K/L -> c1 and N/L -> c2 with Gaussian entries.

    ``k`` is informational; the closed forms below depend only on the two
    ratios.
    """

    c1: float
    c2: float
    k: int | None = None

    def __post_init__(self):
        if not (0.0 < self.c1 < 1.0 < self.c2):
            raise ValueError(f"need 0 < c1 < 1 < c2, got c1={self.c1}, c2={self.c2}")


def mp_scenario(scenario, c2: float | None = None):
    """Closed-form factors for the asymptotic Gaussian scenario.

    Accepts an :class:`MPScenario` or the two ratios directly. Returns
    ``(gamma, eta, spectrum_low, spectrum_high)`` where the spectrum of the scaled
    selected Gram matrix concentrates on
    ``sqrt(1 / c1) * (1 -+ sqrt(c1))**2`` and

    - ``gamma = 1 + (c2**2 - 1) / e``
    - ``eta = gamma * ((1 + sqrt(c1)) / (1 - sqrt(c1)))**4``

    Note: at (c1, c2) = (0.25, 6) the eta product evaluates to about 1124.
    Summaries of this construction sometimes quote a value near 50 for the
    same inputs; that figure does not follow from the expression above, so
    the computed product is reported as is. See :func:`mp_scenario_report`.
    """
    if not isinstance(scenario, MPScenario):
        scenario = MPScenario(float(scenario), float(c2))
    c1 = scenario.c1
    c2 = scenario.c2
    gamma = 1.0 + (c2**2 - 1.0) / math.e
    root = math.sqrt(c1)
    base = math.sqrt(1.0 / c1)
    spectrum_low = base * (1.0 - root) ** 2
    spectrum_high = base * (1.0 + root) ** 2
    eta = gamma * ((1.0 + root) / (1.0 - root)) ** 4
    return gamma, eta, spectrum_low, spectrum_high


def mp_scenario_report(scenario, c2: float | None = None) -> str:
    """Flat key=value report for the asymptotic scenario factors.

    Includes a note line flagging that the eta value is the literal product
    of its factors, since quoted shorthand values for this construction do
    not always match it.
    """
    if not isinstance(scenario, MPScenario):
        scenario = MPScenario(float(scenario), float(c2))
    gamma, eta, spectrum_low, spectrum_high = mp_scenario(scenario)
    lines = [
        f"c1={scenario.c1:.17g}",
        f"c2={scenario.c2:.17g}",
        f"gamma={gamma:.17g}",
        f"eta={eta:.17g}",
        f"spectrum_low={spectrum_low:.17g}",
        f"spectrum_high={spectrum_high:.17g}",
        "note=eta is the literal product gamma*((1+sqrt(c1))/(1-sqrt(c1)))^4; "
        "at c1=0.25, c2=6 it evaluates to about 1124, not the figure of about 50 "
        "sometimes quoted for this configuration",
    ]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class BoundsReport:
    """All certificate quantities for one (matrix, selection size) instance.

    ``eta`` and ``delta`` are NaN when unavailable (subset enumeration too
    large, or the eta bound vacuous because ``d <= delta``). Serializes to a
    flat key=value text block and to a CSV row whose column order matches
    :data:`BOUNDS_CSV_HEADER`.
    """

    n: int
    k: int
    l: int
    gamma: float
    eta: float
    l_min: float
    l_max: float
    l_mean: float
    d: float
    delta: float
    mse_bound_lower: float
    mse_bound_upper: float

    def _fields(self):
        return (
            ("N", self.n),
            ("K", self.k),
            ("L", self.l),
            ("gamma", self.gamma),
            ("eta", self.eta),
            ("l_min", self.l_min),
            ("l_max", self.l_max),
            ("l_mean", self.l_mean),
            ("d", self.d),
            ("delta", self.delta),
            ("mse_bound_lower", self.mse_bound_lower),
            ("mse_bound_upper", self.mse_bound_upper),
        )

    def to_text(self) -> str:
        lines = []
        for name, value in self._fields():
            if isinstance(value, int):
                lines.append(f"{name}={value}")
            else:
                lines.append(f"{name}={value:.17g}")
        return "\n".join(lines) + "\n"

    def to_csv_row(self) -> str:
        parts = []
        for _, value in self._fields():
            if isinstance(value, int):
                parts.append(str(value))
            else:
                parts.append("%.17g" % value)
        return ",".join(parts)


def compute_bounds_report(psi, num_sensors: int, sel, compute_delta: bool = True) -> BoundsReport:
    """Assemble a :class:`BoundsReport` for one instance.

    ``sel`` is the selection whose MSE envelope is reported, normally the
    greedy output at size ``num_sensors``. ``delta`` is enumerated only when
    requested and within the subset guard, otherwise NaN; ``eta`` is NaN
    whenever its bound would be vacuous or ``delta`` is unavailable.
    """
    m = as_sensing_matrix(psi)
    l_min, l_max, l_mean = l_min_max(m, num_sensors)
    gamma = fp_approx_factor(m, num_sensors)
    d = l_mean / m.k
    delta = math.nan
    if compute_delta and math.comb(m.n, num_sensors) <= DELTA_SUBSET_LIMIT:
        delta = delta_bound(m, num_sensors)
    if math.isfinite(delta) and d > delta and l_min > 0.0:
        eta = mse_approx_factor(gamma, d, delta, l_min, l_max)
    else:
        eta = math.nan
    lower, upper = mse_envelope(m, sel, l_min, l_max)
    return BoundsReport(
        n=m.n,
        k=m.k,
        l=num_sensors,
        gamma=gamma,
        eta=eta,
        l_min=l_min,
        l_max=l_max,
        l_mean=l_mean,
        d=d,
        delta=delta,
        mse_bound_lower=lower,
        mse_bound_upper=upper,
    )
