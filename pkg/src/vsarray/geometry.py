"""Sparse linear portions, V-shaped assembly, and difference co-arrays.

A V-shaped array consists of two identical sparse linear portions sharing the
corner sensor at the origin and opened by the uncoupling angle omega.  Sensor
positions are integer lags in units of d = lambda/2.  Two portion families are
supported:

* coprime(M, N): {N*m : 0 <= m <= 2M-1} union {M*n : 0 <= n <= N-1},
  2M+N-1 sensors per portion, contiguous co-array segment of half-length
  L = MN+1.
* nested(N1, N2): two-level construction {1..N1} union {m*(N1+1) : 1 <= m <= N2}
  shifted to start at 0, N1+N2 sensors per portion, hole-free segment of
  half-length L = N2*(N1+1).
"""

import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .errors import GeometryError, LagError


def _validate_positions(p):
    p = np.asarray(p, dtype=np.int64)
    if p.ndim != 1 or p.size == 0:
        raise GeometryError("positions must be a non-empty 1-D integer array")
    if np.any(p < 0):
        raise GeometryError("positions must be non-negative lags")
    if np.any(np.diff(p) <= 0):
        raise GeometryError("positions must be strictly increasing")
    if p[0] != 0:
        raise GeometryError("positions must contain the corner sensor at 0")
    nonzero = p[p > 0]
    if nonzero.size and math.gcd(*nonzero.tolist()) != 1:
        # gcd > 1 would alias the physical-portion MUSIC search
        raise GeometryError("gcd of nonzero positions must be 1")
    return p


def coprime_portion(m: int, n: int) -> np.ndarray:
    """Positions of one coprime portion: {N*m} for 2M terms and {M*n} for N terms."""
    if m < 2 or n < 3 or m >= n:
        raise GeometryError(f"need 2 <= M < N with N >= 3, got M={m}, N={n}")
    if math.gcd(m, n) != 1:
        raise GeometryError(f"M={m} and N={n} are not coprime")
    s = {n * i for i in range(2 * m)} | {m * j for j in range(n)}
    return _validate_positions(sorted(s))


def nested_portion(n1: int, n2: int) -> np.ndarray:
    """Positions of one two-level nested portion, shifted to start at lag 0."""
    if n1 < 1 or n2 < 1:
        raise GeometryError(f"need N1 >= 1 and N2 >= 1, got N1={n1}, N2={n2}")
    s = sorted({i for i in range(1, n1 + 1)} | {m * (n1 + 1) for m in range(1, n2 + 1)})
    p = np.asarray(s, dtype=np.int64)
    return _validate_positions(p - p[0])


def v_angle(m_bar: int) -> float:
    """Uncoupling V-angle in radians for a virtual array of m_bar sensors.

    omega = 2 * atan(sqrt((m_bar^2 + 3) / (4 m_bar^2))); decreases toward
    2*atan(1/2) ~ 53.13 degrees as m_bar grows.
    """
    if m_bar < 1:
        raise GeometryError(f"m_bar must be >= 1, got {m_bar}")
    return 2.0 * math.atan(math.sqrt((m_bar**2 + 3.0) / (4.0 * m_bar**2)))


@dataclass(frozen=True)
class CoarrayInfo:
    """Difference co-array summary for one portion."""

    difference_set: np.ndarray
    contiguous_segment: np.ndarray  # [-(L-1) ... L-1]
    half_length: int


def difference_coarray(p, half_length: int = None) -> CoarrayInfo:
    """Brute-force difference set and contiguous segment of a position set.

    The contiguous segment is the maximal run of consecutive lags centered at
    zero, optionally truncated at ``half_length`` (the portion families
    guarantee L = MN+1 / N2*(N1+1); smoothing uses the guaranteed segment even
    when a longer accidental run exists, e.g. lag 11 for coprime(2,5)).
    """
    p = _validate_positions(p)
    diffs = np.unique(p[:, None] - p[None, :])
    present = set(diffs.tolist())
    run = 0
    while run + 1 in present:
        run += 1
    length = run + 1
    if half_length is not None:
        if half_length > length:
            raise GeometryError(
                f"requested half-length {half_length} exceeds contiguous run {length}"
            )
        length = half_length
    return CoarrayInfo(
        difference_set=diffs,
        contiguous_segment=np.arange(-(length - 1), length),
        half_length=length,
    )


@dataclass(frozen=True)
class VShapedGeometry:
    """Two mirror portions plus the V-angle and virtual-array size."""

    kind: str  # 'coprime' or 'nested'
    params: Tuple[int, int]
    portion_u: np.ndarray
    portion_v: np.ndarray
    omega: float
    m_bar: int
    total_sensors: int
    coarray: CoarrayInfo = field(repr=False)

    @property
    def half_length(self) -> int:
        return self.coarray.half_length

    @property
    def portion_size(self) -> int:
        return int(self.portion_u.size)

    @property
    def max_sources(self) -> int:
        return self.half_length - 1


def nested_split(n_total: int) -> Tuple[int, int]:
    """Split a total sensor-per-portion count into the (N1, N2) nested levels."""
    if n_total < 2:
        raise GeometryError(f"nested portion needs at least 2 sensors, got {n_total}")
    return n_total // 2, n_total - n_total // 2


def _nested_params(params) -> Tuple[int, int]:
    params = tuple(int(x) for x in np.atleast_1d(params))
    if len(params) == 1:
        return nested_split(params[0])
    if len(params) == 2:
        return params
    raise GeometryError(f"nested parameters must be N or (N1, N2), got {params}")


def build_vshaped(kind: str, params) -> VShapedGeometry:
    """Assemble a V-shaped geometry from portion parameters.

    kind 'coprime' takes (M, N); kind 'nested' takes (N1, N2) or a total
    per-portion count N (split evenly).  Both portions are identical; the
    V-angle comes from the virtual-array size m_bar = 2MN+1 or 2N+1.
    """
    if kind == "coprime":
        m, n = (int(x) for x in params)
        portion = coprime_portion(m, n)
        half_length = m * n + 1
        m_bar = 2 * m * n + 1
        total = 4 * m + 2 * n - 3
        params = (m, n)
    elif kind == "nested":
        n1, n2 = _nested_params(params)
        portion = nested_portion(n1, n2)
        half_length = n2 * (n1 + 1)
        m_bar = 2 * (n1 + n2) + 1
        total = 2 * (n1 + n2)
        params = (n1, n2)
    else:
        raise GeometryError(f"unknown geometry kind {kind!r}")
    info = difference_coarray(portion, half_length=half_length)
    return VShapedGeometry(
        kind=kind,
        params=params,
        portion_u=portion,
        portion_v=portion.copy(),
        omega=v_angle(m_bar),
        m_bar=m_bar,
        total_sensors=total,
        coarray=info,
    )


def lag_pairs(p, lag: int):
    """All (p[i], p[j]) position pairs with p[i] - p[j] == lag.

    Raises LagError when the lag has no contributing pair (absent from the
    difference set).  Lags beyond the guaranteed contiguous run still return
    their pairs when they exist.
    """
    p = _validate_positions(p)
    ii, jj = np.nonzero(p[:, None] - p[None, :] == int(lag))
    if ii.size == 0:
        raise LagError(f"lag {lag} is not in the difference co-array")
    return [(int(p[i]), int(p[j])) for i, j in zip(ii, jj)]


def max_resolvable(kind: str, params) -> int:
    """Largest source count with a non-empty noise subspace: L - 1."""
    if kind == "coprime":
        m, n = (int(x) for x in params)
        if math.gcd(m, n) != 1 or m >= n:
            raise GeometryError(f"invalid coprime parameters ({m}, {n})")
        return m * n
    if kind == "nested":
        n1, n2 = _nested_params(params)
        return n2 * (n1 + 1) - 1
    raise GeometryError(f"unknown geometry kind {kind!r}")


def sensor_count(kind: str, params) -> int:
    """Total physical sensors: 4M+2N-3 for coprime, 2N for nested."""
    if kind == "coprime":
        m, n = (int(x) for x in params)
        if math.gcd(m, n) != 1 or m >= n:
            raise GeometryError(f"invalid coprime parameters ({m}, {n})")
        return 4 * m + 2 * n - 3
    if kind == "nested":
        n1, n2 = _nested_params(params)
        return 2 * (n1 + n2)
    raise GeometryError(f"unknown geometry kind {kind!r}")
