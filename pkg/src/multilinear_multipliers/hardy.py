"""Real-variable machinery on the periodic grid.

Dyadic cubes, L^infinity atoms with vanishing moments, the grid H^p
quasi-norm, the maximal operator M_q, zeta_j convolutions, weak L^q norms,
the Calderon-Zygmund decomposition and the exponent algebra of the
weak-type interpolation lemma.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import ConfigError, GuardError
from .fourier import GridFunction, GridSpec
from .geometry import as_fraction


@dataclass(frozen=True, order=True)
class DyadicCube:
    """Cube prod_d [c_d, c_d + 1) * L / 2^level inside the fundamental period."""

    level: int
    coords: tuple[int, ...]
    L: float = 1.0

    def __post_init__(self):
        if self.level < 0:
            raise ConfigError(f"cube level must be >= 0, got {self.level}")
        coords = tuple(int(c) for c in self.coords)
        if any(not 0 <= c < 2 ** self.level for c in coords):
            raise ConfigError(f"cube coords {coords} outside [0, 2^{self.level})")
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def side(self) -> float:
        return self.L / 2 ** self.level

    @property
    def measure(self) -> float:
        return self.side ** self.n

    @property
    def corner(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float) * self.side

    @property
    def center(self) -> np.ndarray:
        return self.corner + self.side / 2

    def parent(self) -> "DyadicCube":
        if self.level == 0:
            raise ConfigError("the root cube has no parent")
        return DyadicCube(self.level - 1, tuple(c // 2 for c in self.coords), self.L)

    def children(self) -> list["DyadicCube"]:
        return [
            DyadicCube(self.level + 1, tuple(2 * c + b for c, b in zip(self.coords, bits)), self.L)
            for bits in itertools.product((0, 1), repeat=self.n)
        ]

    def contains(self, other: "DyadicCube") -> bool:
        if other.level < self.level:
            return False
        shift = other.level - self.level
        return tuple(c >> shift for c in other.coords) == self.coords

    def cells_per_axis(self, spec: GridSpec) -> int:
        self._check_grid(spec)
        return spec.N >> self.level

    def slices(self, spec: GridSpec) -> tuple[slice, ...]:
        c = self.cells_per_axis(spec)
        return tuple(slice(k * c, (k + 1) * c) for k in self.coords)

    def mask(self, spec: GridSpec) -> np.ndarray:
        out = np.zeros(spec.shape, dtype=bool)
        out[self.slices(spec)] = True
        return out

    def _check_grid(self, spec: GridSpec) -> None:
        if spec.n != self.n or spec.L != self.L:
            raise ConfigError(f"cube (n={self.n}, L={self.L}) does not match grid {spec}")
        if self.level > spec.log2N:
            raise ConfigError(f"cube level {self.level} finer than the grid (N={spec.N})")

    @classmethod
    def root(cls, n: int, L: float = 1.0) -> "DyadicCube":
        return cls(0, (0,) * n, L)


def _wrapped_offsets(spec: GridSpec) -> list[np.ndarray]:
    return np.meshgrid(*([spec.offsets()] * spec.n), indexing="ij")


def _offset_radius(spec: GridSpec) -> np.ndarray:
    return np.sqrt(sum(o ** 2 for o in _wrapped_offsets(spec)))


def dyadic_radii(spec: GridSpec) -> list[float]:
    """L * 2^-k for k = 0 .. log2 N."""
    return [spec.L * 2.0 ** (-k) for k in range(spec.log2N + 1)]


def maximal_mq(f: GridFunction, q: float, radii=None) -> GridFunction:
    """M_q f(x) = sup_r (r^-n sum_{|x-y| < r} |f(y)|^q cell)^(1/q) over dyadic radii.

    Distances are periodic. The restriction to dyadic radii changes the true
    supremum by at most a factor 2^(n/q).
    """
    if not q > 0:
        raise ConfigError(f"q must be positive, got {q}")
    spec = f.spec
    radii = dyadic_radii(spec) if radii is None else list(radii)
    power = np.abs(f.samples) ** q
    dist = _offset_radius(spec)
    k = np.fft.fftfreq(spec.N, d=1.0 / spec.N).astype(int)
    shifts = np.meshgrid(*([k] * spec.n), indexing="ij")
    best = np.zeros(spec.shape)
    for r in radii:
        inside = np.argwhere(dist < r)
        acc = np.zeros(spec.shape)
        for idx in inside:
            shift = tuple(int(s[tuple(idx)]) for s in shifts)
            acc += np.roll(power, shift, axis=tuple(range(spec.n)))
        best = np.maximum(best, acc * spec.cell / r ** spec.n)
    return GridFunction(spec, best ** (1.0 / q))


def zeta_kernel(spec: GridSpec, j: int, s: float, q: float) -> np.ndarray:
    """zeta_j(x) = 2^(jn) (1 + |2^j x|)^(-s q) at the wrapped offsets, FFT order."""
    return 2.0 ** (j * spec.n) * (1.0 + 2.0 ** j * _offset_radius(spec)) ** (-s * q)


def zeta_convolve(f: GridFunction, j: int, s: float, q: float) -> GridFunction:
    """(zeta_j * |f|^q)(x) by periodic convolution; the 1/q power is left to the caller."""
    n = f.spec.n
    if not s * q > n:
        raise ConfigError(f"zeta_j is not integrable: s*q = {s * q} <= n = {n}")
    spec = f.spec
    zeta = zeta_kernel(spec, j, s, q)
    power = np.abs(f.samples) ** q
    conv = np.fft.ifftn(np.fft.fftn(zeta) * np.fft.fftn(power)).real * spec.cell
    return GridFunction(spec, conv)


# --- atoms ------------------------------------------------------------------------


def default_moment_order(n: int, p) -> int:
    """ceil(n (1/p - 1)) + 2."""
    p = as_fraction(p)
    return math.ceil(n * (1 / p - 1)) + 2


def _monomials(n: int, order: int) -> list[tuple[int, ...]]:
    return [g for deg in range(order) for g in itertools.product(range(deg + 1), repeat=n) if sum(g) == deg]


@dataclass(frozen=True, eq=False)
class Atom:
    cube: DyadicCube
    p: Fraction
    order: int
    function: GridFunction

    @property
    def samples(self) -> np.ndarray:
        return self.function.samples

    @property
    def size_bound(self) -> float:
        return self.cube.measure ** (-1.0 / float(self.p))

    def support_ok(self) -> bool:
        return bool(np.all(self.samples[~self.cube.mask(self.function.spec)] == 0))

    def size_ok(self) -> bool:
        return float(np.abs(self.samples).max()) <= self.size_bound * (1 + 1e-12)

    def moment_residual(self) -> float:
        """max over |gamma| < order of |sum x^gamma a(x) cell| / (||a||_1 max_Q |x^gamma|)."""
        spec = self.function.spec
        mass = self.function.l1()
        if self.order == 0 or mass == 0:
            return 0.0
        x = np.meshgrid(*([spec.positions()] * spec.n), indexing="ij")
        mask = self.cube.mask(spec)
        worst = 0.0
        for gamma in _monomials(spec.n, self.order):
            mono = np.ones(spec.shape)
            for xd, g in zip(x, gamma):
                mono = mono * xd ** g
            scale = float(np.abs(mono[mask]).max()) or 1.0
            mom = abs(np.sum(mono * self.samples) * spec.cell)
            worst = max(worst, mom / (mass * scale))
        return worst

    def is_valid(self, tol: float = 1e-10) -> bool:
        return self.support_ok() and self.size_ok() and self.moment_residual() <= tol


def make_atom(spec: GridSpec, cube: DyadicCube, p, order: int | None = None, seed=None) -> Atom:
    """L^infinity atom for H^p on ``cube`` with vanishing moments below ``order``.

    Random samples (or, with ``seed=None``, a fixed profile: a constant for
    order 0, a two-level Haar function for order 1) are projected off the
    monomials of degree < order using the cube's discrete inner product, then
    rescaled so that max |a| = |Q|^(-1/p).
    """
    p = as_fraction(p)
    if not 0 < p <= 1:
        raise ConfigError(f"atoms need 0 < p <= 1, got {p}")
    order = default_moment_order(spec.n, p) if order is None else int(order)
    if order < 0:
        raise ConfigError(f"moment order must be >= 0, got {order}")
    cells = cube.cells_per_axis(spec)
    need = max(4, order + 1) if order > 0 else 1
    if cells < need:
        raise ConfigError(f"cube has {cells} cells per axis; moment order {order} needs at least {need}")

    local = (np.arange(cells) + 0.5) / cells - 0.5
    t = np.meshgrid(*([local] * spec.n), indexing="ij")
    if seed is None:
        if order == 0:
            w = np.ones(t[0].shape)
        elif order == 1:
            w = np.sign(t[0])
        else:
            w = t[0] ** order
    else:
        w = np.random.default_rng(seed).standard_normal(t[0].shape)
    w = w.ravel()
    if order > 0:
        V = np.stack([np.prod([td.ravel() ** g for td, g in zip(t, gamma)], axis=0)
                      for gamma in _monomials(spec.n, order)], axis=1)
        Q, _ = np.linalg.qr(V)
        w = w - Q @ (Q.T @ w)
        w = w - Q @ (Q.T @ w)  # second pass removes the residual left by the first
    peak = np.abs(w).max()
    if peak == 0:
        raise GuardError("projection annihilated the atom; try another seed")
    samples = np.zeros(spec.shape)
    samples[cube.slices(spec)] = (w * (cube.measure ** (-1.0 / float(p)) / peak)).reshape((cells,) * spec.n)
    return Atom(cube, p, order, GridFunction(spec, samples))


# --- H^p quasi-norm ------------------------------------------------------------------


def hp_maximal(f: GridFunction, t_levels: int | None = None) -> GridFunction:
    """sup_t |Phi_t * f| for a Gaussian Phi over t in {L 2^-k} and the limit t -> 0."""
    spec = f.spec
    levels = spec.log2N + 1 if t_levels is None else int(t_levels)
    coeffs = f.coefficients()
    xi2 = np.sum(spec.frequency_vectors() ** 2, axis=0)
    best = np.abs(f.samples)
    for k in range(levels):
        t = spec.L * 2.0 ** (-k)
        smoothed = np.fft.ifftn(coeffs * np.exp(-np.pi * t * t * xi2)) * spec.size
        best = np.maximum(best, np.abs(smoothed))
    return GridFunction(spec, best)


def hp_quasinorm(f: GridFunction, p, t_levels: int | None = None) -> float:
    """|| sup_t |Phi_t * f| ||_{L^p} by discrete sum, Phi(x) = exp(-pi |x|^2)."""
    p = float(as_fraction(p)) if not isinstance(p, float) else p
    if not p > 0:
        raise ConfigError(f"p must be positive, got {p}")
    return hp_maximal(f, t_levels).norm(p)


# --- weak norms -----------------------------------------------------------------------


def weak_norm(f: GridFunction, q: float) -> float:
    """sup_lambda lambda |{|f| > lambda}|^(1/q).

    The supremum is approached as lambda rises to each sample magnitude v, so
    it equals max_v v * |{|f| >= v}|^(1/q).
    """
    if not q > 0:
        raise ConfigError(f"q must be positive, got {q}")
    a = np.sort(np.abs(f.samples).ravel())[::-1]
    measure = np.arange(1, a.size + 1) * f.spec.cell
    return float(np.max(a * measure ** (1.0 / q)))


# --- Calderon-Zygmund decomposition ---------------------------------------------------


def _block_means(values: np.ndarray, level: int, n: int) -> np.ndarray:
    N = values.shape[0]
    c = N >> level
    shape = []
    for _ in range(n):
        shape += [2 ** level, c]
    return values.reshape(shape).mean(axis=tuple(range(1, 2 * n, 2)))


def _upsample(mask: np.ndarray, n: int) -> np.ndarray:
    out = mask
    for d in range(n):
        out = np.repeat(out, 2, axis=d)
    return out


@dataclass(eq=False)
class CZDecomposition:
    f: GridFunction
    height: float
    good: GridFunction
    bad: list[tuple[DyadicCube, GridFunction]] = field(default_factory=list)

    @property
    def cubes(self) -> list[DyadicCube]:
        return [c for c, _ in self.bad]

    def reconstruct(self) -> np.ndarray:
        out = np.array(self.good.samples)
        for _, b in self.bad:
            out = out + b.samples
        return out

    def check(self) -> dict[str, bool]:
        """The five decomposition invariants, by name."""
        spec = self.f.spec
        absf = np.abs(self.f.samples)
        cover = np.zeros(spec.shape, dtype=int)
        for c in self.cubes:
            cover[c.slices(spec)] += 1
        disjoint = bool(np.all(cover <= 1))
        reconstruction = bool(np.array_equal(self.reconstruct(), self.f.samples))
        mean_zero, sandwich = True, True
        for c, b in self.bad:
            local = b.samples
            mass = np.sum(np.abs(local)) * spec.cell
            if np.any(local[~c.mask(spec)] != 0):
                mean_zero = False
            if abs(np.sum(local) * spec.cell) > 1e-12 * max(mass, np.finfo(float).tiny):
                mean_zero = False
            avg = absf[c.slices(spec)].mean()
            if not self.height < avg <= 2 ** spec.n * self.height:
                sandwich = False
        off = bool(np.all(absf[cover == 0] <= self.height))
        total = sum(c.measure for c in self.cubes)
        measure = total <= self.f.l1() / self.height * (1 + 1e-12)
        return {
            "disjoint": disjoint,
            "reconstruction": reconstruction,
            "mean_zero": mean_zero,
            "average_sandwich": sandwich,
            "off_cube_bound": off,
            "measure_bound": bool(measure),
        }


def cz_decompose(f: GridFunction, height: float) -> CZDecomposition:
    """Dyadic stopping-time decomposition f = g + sum_j b_j at ``height``.

    The height must be at least the mean of |f| over the period, as on the
    torus the root cube has no parent to bound its average. Cubes are scanned
    coarse to fine; a cube is selected the first time its
    average of |f| strictly exceeds the height, and its descendants are pruned.
    On a selected cube g is the average of f and b_j = (f - average) on the cube.

    g + sum b_j reproduces f bit for bit whenever the cube averages and the
    differences f - average are exact in floating point (dyadic-rational data,
    for instance). For general floats each sample is off by at most one rounding.
    """
    height = float(height)
    if not height > 0:
        raise ConfigError(f"height must be positive, got {height}")
    spec = f.spec
    n = spec.n
    absf = np.abs(f.samples)
    if absf.mean() > height:
        # the whole period would be selected with no parent to cap its average
        raise ConfigError(f"height {height} is below the mean of |f| over the period ({absf.mean()})")
    covered = np.zeros((1,) * n, dtype=bool)
    selected: list[DyadicCube] = []
    for level in range(spec.log2N + 1):
        means = _block_means(absf, level, n)
        pick = (means > height) & ~covered
        for idx in np.argwhere(pick):
            selected.append(DyadicCube(level, tuple(int(i) for i in idx), spec.L))
        covered = covered | pick
        if level < spec.log2N:
            covered = _upsample(covered, n)

    good = np.array(f.samples)
    bad = []
    for cube in selected:
        sl = cube.slices(spec)
        block = f.samples[sl]
        avg = block.mean()
        b = np.zeros(spec.shape, dtype=np.complex128)
        b[sl] = block - avg
        good[sl] = block - b[sl]
        bad.append((cube, GridFunction(spec, b)))
    return CZDecomposition(f, height, GridFunction(spec, good), bad)


# --- weak-type interpolation exponents -------------------------------------------------


@dataclass(frozen=True)
class SteinParams:
    """Exponents with n/(n+1) < p0 < 1 < p1, 0 < q0 < r < q1 and
    1/p0 - 1/q0 = 1/p1 - 1/q1 = 1 - 1/r, plus the two operator bounds."""

    p0: Fraction
    p1: Fraction
    q0: Fraction
    q1: Fraction
    r: Fraction
    n: int = 1
    M0: float = 1.0
    M1: float = 1.0

    def __post_init__(self):
        for name in ("p0", "p1", "q0", "q1", "r"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        p0, p1, q0, q1, r, n = self.p0, self.p1, self.q0, self.q1, self.r, self.n
        if p0 == p1:
            raise ConfigError("p0 and p1 coincide; theta is undefined")
        if not Fraction(n, n + 1) < p0 < 1 < p1:
            raise ConfigError(f"need n/(n+1) < p0 < 1 < p1, got p0={p0}, p1={p1}, n={n}")
        if not 0 < q0 < r < q1:
            raise ConfigError(f"need 0 < q0 < r < q1, got q0={q0}, r={r}, q1={q1}")
        target = 1 - 1 / r
        if 1 / p0 - 1 / q0 != target or 1 / p1 - 1 / q1 != target:
            raise ConfigError(
                f"1/p0 - 1/q0 = {1 / p0 - 1 / q0}, 1/p1 - 1/q1 = {1 / p1 - 1 / q1}, 1 - 1/r = {target}: must agree"
            )
        if not (self.M0 > 0 and self.M1 > 0):
            raise ConfigError("operator bounds M0, M1 must be positive")

    @classmethod
    def from_exponents(cls, p0, p1, r, n: int = 1, M0: float = 1.0, M1: float = 1.0) -> "SteinParams":
        """Solve q0, q1 from the exponent identity."""
        p0, p1, r = as_fraction(p0), as_fraction(p1), as_fraction(r)
        inv_q0 = 1 / p0 - 1 + 1 / r
        inv_q1 = 1 / p1 - 1 + 1 / r
        if inv_q0 <= 0 or inv_q1 <= 0:
            raise ConfigError(f"r = {r} gives non-positive 1/q0 = {inv_q0} or 1/q1 = {inv_q1}")
        return cls(p0, p1, 1 / inv_q0, 1 / inv_q1, r, n, M0, M1)


def stein_theta(p0, p1) -> Fraction:
    """theta solving 1 = (1 - theta)/p0 + theta/p1."""
    p0, p1 = as_fraction(p0), as_fraction(p1)
    if p0 == p1:
        raise ConfigError("p0 and p1 coincide; theta is undefined")
    return (1 - 1 / p0) / (1 / p1 - 1 / p0)


def stein_combine(params: SteinParams) -> tuple[Fraction, float]:
    """(theta, M0^(1-theta) M1^theta)."""
    theta = stein_theta(params.p0, params.p1)
    t = float(theta)
    return theta, params.M0 ** (1 - t) * params.M1 ** t


def iter_cubes(n: int, level: int, L: float = 1.0) -> Iterator[DyadicCube]:
    for coords in itertools.product(range(2 ** level), repeat=n):
        yield DyadicCube(level, coords, L)
