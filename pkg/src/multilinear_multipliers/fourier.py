"""Periodic-grid discretization of multilinear Fourier multipliers.

Conventions
-----------
A `GridSpec` (n, N, L) describes the torus [0, L)^n sampled at x = j L / N.
Functions on it have Fourier coefficients at the frequencies k / L,
k in [-N/2, N/2)^n, stored in numpy FFT order.

A `SymbolGrid` is a function sigma(xi_1, ..., xi_m) of m frequency variables,
sampled at the same frequencies k / L in every block, so its lattice has
m * n axes. Block i occupies axes i*n .. i*n + n - 1.

For Sobolev norms the symbol is treated as a function on R^{mn} sampled with
spacing 1/L; its Fourier transform then lives on the reciprocal lattice
y = k' L / N, k' in [-N/2, N/2), which coincides with the (centered) spatial
lattice of the same grid.

The torus replaces R^n throughout. Frequency addition in `apply_multiplier`
wraps modulo N (aliasing), which is the periodization of the convolution
structure of the operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigError, DimensionMismatch, GuardError, MemoryGuardError
from .geometry import SmoothnessProfile

DENSE_LOG2_LIMIT = 24


@dataclass(frozen=True)
class GridSpec:
    n: int
    N: int
    L: float = 1.0

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ConfigError(f"grid dimension must be a positive integer, got {self.n!r}")
        if not isinstance(self.N, (int, np.integer)) or self.N < 4 or self.N & (self.N - 1):
            raise ConfigError(f"points per axis must be a power of two >= 4, got {self.N!r}")
        if not self.L > 0:
            raise ConfigError(f"period must be positive, got {self.L!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "L", float(self.L))

    @property
    def log2N(self) -> int:
        return self.N.bit_length() - 1

    @property
    def h(self) -> float:
        return self.L / self.N

    @property
    def cell(self) -> float:
        return self.h ** self.n

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.N,) * self.n

    @property
    def size(self) -> int:
        return self.N ** self.n

    def positions(self) -> np.ndarray:
        return np.arange(self.N) * self.h

    def offsets(self) -> np.ndarray:
        """Periodic positions wrapped to [-L/2, L/2), FFT order."""
        return np.fft.fftfreq(self.N) * self.L

    def frequencies(self) -> np.ndarray:
        """k / L in FFT order."""
        return np.fft.fftfreq(self.N, d=self.h)

    def frequency_vectors(self) -> np.ndarray:
        """Array of shape (n, N, ..., N) holding the frequency vector at each index."""
        return np.stack(np.meshgrid(*([self.frequencies()] * self.n), indexing="ij"))

    def radius(self) -> np.ndarray:
        return np.sqrt(np.sum(self.frequency_vectors() ** 2, axis=0))


class GridFunction:
    """Complex samples on the N^n lattice of a torus. Immutable."""

    __slots__ = ("spec", "samples")

    def __init__(self, spec: GridSpec, samples):
        arr = np.array(samples, dtype=np.complex128)
        if arr.shape != spec.shape:
            raise ConfigError(f"samples have shape {arr.shape}, grid expects {spec.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "samples", arr)

    def __setattr__(self, name, value):
        raise AttributeError("GridFunction is immutable")

    @classmethod
    def from_callable(cls, spec: GridSpec, func: Callable[..., np.ndarray]) -> "GridFunction":
        coords = np.meshgrid(*([spec.positions()] * spec.n), indexing="ij")
        return cls(spec, np.broadcast_to(func(*coords), spec.shape))

    @classmethod
    def from_coefficients(cls, spec: GridSpec, coefficients) -> "GridFunction":
        return cls(spec, np.fft.ifftn(coefficients) * spec.size)

    @classmethod
    def zeros(cls, spec: GridSpec) -> "GridFunction":
        return cls(spec, np.zeros(spec.shape))

    def fourier(self) -> np.ndarray:
        """Unitary DFT of the samples."""
        return np.fft.fftn(self.samples, norm="ortho")

    def coefficients(self) -> np.ndarray:
        """Torus Fourier coefficients: f(x) = sum_k c_k exp(2 pi i k.x / L)."""
        return np.fft.fftn(self.samples) / self.spec.size

    def norm(self, p: float = 2.0) -> float:
        """L^p(torus) norm by the discrete sum; p = inf gives the sup norm."""
        a = np.abs(self.samples)
        if np.isinf(p):
            return float(a.max())
        return float((np.sum(a ** p) * self.spec.cell) ** (1.0 / p))

    def l1(self) -> float:
        return self.norm(1.0)

    def l2(self) -> float:
        return self.norm(2.0)

    def mean(self) -> complex:
        return complex(self.samples.mean())

    def _combine(self, other, op):
        if isinstance(other, GridFunction):
            if other.spec != self.spec:
                raise ConfigError("grid functions live on different grids")
            return GridFunction(self.spec, op(self.samples, other.samples))
        return GridFunction(self.spec, op(self.samples, other))

    def __add__(self, other):
        return self._combine(other, np.add)

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __mul__(self, other):
        return self._combine(other, np.multiply)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return GridFunction(self.spec, -self.samples)

    def __repr__(self) -> str:
        return f"GridFunction({self.spec}, l2={self.l2():.6g})"


def random_bandlimited_function(
    spec: GridSpec, seed, band: int = 8, normalize: str | None = "l2", real: bool = False
) -> GridFunction:
    """Random trigonometric polynomial with |k_d| <= band on every axis.

    ``normalize`` is "l2" (unit L^2 norm), "sup" (unit sup norm) or None.
    """
    rng = np.random.default_rng(seed)
    k = np.fft.fftfreq(spec.N, d=1.0 / spec.N)
    mask1 = np.abs(k) <= band
    mask = np.ones(spec.shape, dtype=bool)
    for d in range(spec.n):
        shape = [1] * spec.n
        shape[d] = spec.N
        mask = mask & mask1.reshape(shape)
    coeffs = (rng.standard_normal(spec.shape) + 1j * rng.standard_normal(spec.shape)) * mask
    f = np.fft.ifftn(coeffs) * spec.size
    if real:
        f = f.real
    out = GridFunction(spec, f)
    if normalize == "l2":
        out = out * (1.0 / out.l2())
    elif normalize == "sup":
        out = out * (1.0 / out.norm(np.inf))
    elif normalize is not None:
        raise ConfigError(f"unknown normalization {normalize!r}")
    return out


# --- partition of unity -------------------------------------------------------


def _h(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def smooth_step(t) -> np.ndarray:
    """C-infinity transition: 0 for t <= 0, 1 for t >= 1."""
    a, b = _h(t), _h(1.0 - np.asarray(t, dtype=float))
    return a / (a + b)


def radial_cutoff(r) -> np.ndarray:
    """1 on r <= 1, 0 on r >= 2, smooth in between."""
    return smooth_step(2.0 - np.asarray(r, dtype=float))


@dataclass(frozen=True)
class Partition:
    """Dyadic pieces psi_hat(2^-j xi), j_min <= j <= j_max, of a radial partition of unity.

    psi_hat(xi) = cutoff(|xi|) - cutoff(2|xi|) is supported in 1/2 <= |xi| <= 2 and
    the pieces telescope to exactly 1 on 2^j_min <= |xi| <= 2^j_max.
    """

    j_min: int = -4
    j_max: int = 4

    def __post_init__(self):
        if not self.j_min < self.j_max:
            raise ConfigError(f"need j_min < j_max, got {self.j_min}, {self.j_max}")

    @property
    def scales(self) -> range:
        return range(self.j_min, self.j_max + 1)

    @staticmethod
    def psi_hat(r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return radial_cutoff(r) - radial_cutoff(2.0 * r)

    def piece(self, j: int, r) -> np.ndarray:
        if j not in self.scales:
            raise ConfigError(f"scale j={j} outside partition range [{self.j_min}, {self.j_max}]")
        return self.psi_hat(np.asarray(r, dtype=float) * 2.0 ** (-j))

    def total(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for j in self.scales:
            out = out + self.piece(j, r)
        return out

    def covers(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return (r >= 2.0 ** self.j_min) & (r <= 2.0 ** self.j_max)


def make_partition(j_min: int = -4, j_max: int = 4) -> Partition:
    return Partition(j_min, j_max)


# --- symbols --------------------------------------------------------------------


def check_dense_size(m: int, n: int, N: int) -> None:
    if m * n * (N.bit_length() - 1) > DENSE_LOG2_LIMIT:
        raise MemoryGuardError(m, n, N, DENSE_LOG2_LIMIT)


def _radius(axes: Sequence[np.ndarray]) -> np.ndarray:
    grids = np.ix_(*axes)
    total = 0.0
    for g in grids:
        total = total + g.astype(float) ** 2
    return np.sqrt(total)


LatticeFunc = Callable[[Sequence[np.ndarray]], np.ndarray]


class SymbolGrid:
    """A symbol sigma(xi_1, ..., xi_m) attached to a grid.

    Either dense samples over the (N^n)^m frequency lattice (FFT order on every
    axis) or a lazy function evaluated on Cartesian lattices. Lazy functions take
    a list of m*n coordinate arrays and return the values on their product.
    """

    def __init__(self, spec: GridSpec, m: int, *, samples=None, func: LatticeFunc | None = None,
                 descriptor: dict | None = None):
        if m < 1:
            raise ConfigError(f"linearity m must be >= 1, got {m}")
        if (samples is None) == (func is None):
            raise ConfigError("give exactly one of samples or func")
        self.spec = spec
        self.m = int(m)
        self.descriptor = dict(descriptor or {"name": "dense" if samples is not None else "lazy"})
        if samples is not None:
            check_dense_size(self.m, spec.n, spec.N)
            arr = np.array(samples, dtype=np.complex128)
            if arr.shape != self.lattice_shape:
                raise ConfigError(f"symbol samples have shape {arr.shape}, expected {self.lattice_shape}")
            arr.setflags(write=False)
            self._samples = arr
            self._func = None
        else:
            self._samples = None
            self._func = func

    @classmethod
    def from_samples(cls, spec: GridSpec, m: int, samples) -> "SymbolGrid":
        return cls(spec, m, samples=samples)

    @property
    def naxes(self) -> int:
        return self.m * self.spec.n

    @property
    def lattice_shape(self) -> tuple[int, ...]:
        return (self.spec.N,) * self.naxes

    @property
    def is_dense(self) -> bool:
        return self._samples is not None

    @property
    def name(self) -> str:
        return self.descriptor.get("name", "lazy")

    def frequency_axes(self) -> list[np.ndarray]:
        return [self.spec.frequencies()] * self.naxes

    def evaluate(self, axes: Sequence[np.ndarray]) -> np.ndarray:
        axes = [np.atleast_1d(np.asarray(a, dtype=float)) for a in axes]
        if len(axes) != self.naxes:
            raise DimensionMismatch("symbol coordinate axes", self.naxes, len(axes))
        if self._func is not None:
            out = np.asarray(self._func(axes), dtype=np.complex128)
            return np.broadcast_to(out, tuple(len(a) for a in axes))
        return self._lookup(axes)

    def at(self, *xi: float) -> complex:
        """Value at a single frequency tuple given as m*n scalars."""
        return complex(self.evaluate([[x] for x in xi]).reshape(-1)[0])

    def _lookup(self, axes: Sequence[np.ndarray]) -> np.ndarray:
        N, L = self.spec.N, self.spec.L
        index, valid = [], []
        for a in axes:
            k = a * L
            kr = np.rint(k)
            if np.any(np.abs(k - kr) > 1e-9 * np.maximum(1.0, np.abs(k))):
                raise ConfigError("dense symbols can only be evaluated on their own frequency lattice")
            kr = kr.astype(np.int64)
            valid.append((kr >= -N // 2) & (kr < N // 2))
            index.append(np.mod(kr, N))
        vals = self._samples[np.ix_(*index)]
        mask = np.ones(vals.shape, dtype=bool)
        for d, v in enumerate(valid):
            shape = [1] * len(axes)
            shape[d] = len(v)
            mask = mask & v.reshape(shape)
        return np.where(mask, vals, 0.0)

    def dense(self) -> np.ndarray:
        check_dense_size(self.m, self.spec.n, self.spec.N)
        if self._samples is not None:
            return self._samples
        return np.ascontiguousarray(self.evaluate(self.frequency_axes()))

    def densified(self) -> "SymbolGrid":
        if self.is_dense:
            return self
        return SymbolGrid(self.spec, self.m, samples=self.dense(), descriptor={"name": "dense"})

    def l2(self) -> float:
        """L^2 norm over R^{mn} by Riemann sum with frequency cell (1/L)^{mn}."""
        S = self.dense()
        return float(np.sqrt(np.sum(np.abs(S) ** 2) / self.spec.L ** self.naxes))

    def rescaled(self, factor: float) -> "SymbolGrid":
        """xi -> sigma(factor * xi)."""
        base = self
        desc = {"name": "rescaled", "factor": float(factor), "base": self.descriptor}
        return SymbolGrid(self.spec, self.m, func=lambda axes: base.evaluate([a * factor for a in axes]),
                          descriptor=desc)

    def times(self, func: LatticeFunc, descriptor: dict) -> "SymbolGrid":
        base = self
        return SymbolGrid(self.spec, self.m, func=lambda axes: base.evaluate(axes) * func(axes),
                          descriptor=descriptor)

    def scaled(self, c: complex) -> "SymbolGrid":
        desc = {"name": "scaled", "c": [complex(c).real, complex(c).imag], "base": self.descriptor}
        if self.is_dense:
            return SymbolGrid(self.spec, self.m, samples=self._samples * c, descriptor=desc)
        base = self
        return SymbolGrid(self.spec, self.m, func=lambda axes: c * base.evaluate(axes), descriptor=desc)

    def on_grid(self, spec: GridSpec) -> "SymbolGrid":
        """Same lazy symbol attached to another grid (dense symbols cannot move)."""
        if spec == self.spec:
            return self
        if self.is_dense:
            raise ConfigError("a dense symbol is tied to its own grid")
        return SymbolGrid(spec, self.m, func=self._func, descriptor=self.descriptor)

    def __repr__(self) -> str:
        kind = "dense" if self.is_dense else "lazy"
        return f"SymbolGrid({self.name}, m={self.m}, {kind}, {self.spec})"


def _preset_constant(spec, m, value=1.0):
    value = complex(value)
    return lambda axes: np.full(tuple(len(a) for a in axes), value, dtype=np.complex128)


def _block_vector(values, m: int, n: int, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float).reshape(-1)
    if arr.size != m * n:
        raise DimensionMismatch(what, m * n, arr.size)
    return arr


def _preset_modulation(spec, m, shifts):
    a = _block_vector(shifts, m, spec.n, "modulation shifts")

    def f(axes):
        out = 1.0 + 0j
        for g, ad in zip(np.ix_(*axes), a):
            out = out * np.exp(2j * np.pi * ad * g)
        return out
    return f


def _preset_homogeneous(spec, m, exponents):
    alpha = np.asarray(exponents, dtype=int).reshape(-1)
    if alpha.size != m * spec.n or np.any(alpha < 0):
        raise ConfigError(f"need {m * spec.n} nonnegative integer exponents, got {list(alpha)}")
    order = int(alpha.sum())

    def f(axes):
        num = 1.0
        for g, k in zip(np.ix_(*axes), alpha):
            if k:
                num = num * g ** int(k)
        r = _radius(axes)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = num / r ** order
        return np.where(r > 0, out, 0.0)
    return f


def _preset_mikhlin(spec, m, i=0, k=0):
    alpha = np.zeros(m * spec.n, dtype=int)
    if not (0 <= i < m and 0 <= k < spec.n):
        raise ConfigError(f"component ({i}, {k}) out of range for m={m}, n={spec.n}")
    alpha[i * spec.n + k] = 1
    return _preset_homogeneous(spec, m, alpha)


def _preset_random(spec, m, seed=0, band=8):
    naxes = m * spec.n
    width = 2 * int(band) + 1
    if width ** naxes > 2 ** DENSE_LOG2_LIMIT:
        raise MemoryGuardError(m, spec.n, spec.N, DENSE_LOG2_LIMIT)
    rng = np.random.default_rng(seed)
    shape = (width,) * naxes
    c = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0 * width ** naxes)
    # transform-side frequencies on the reciprocal lattice of the grid
    y = np.arange(-int(band), int(band) + 1) * (spec.L / spec.N)

    def f(axes):
        out = c
        for d, a in enumerate(axes):
            E = np.exp(2j * np.pi * np.outer(a, y))
            out = np.moveaxis(np.tensordot(E, out, axes=([1], [d])), 0, d)
        return out
    return f


def _preset_indicator_zero(spec, m):
    def f(axes):
        out = 1.0
        for g in np.ix_(*axes):
            out = out * (g == 0)
        return np.asarray(out, dtype=np.complex128)
    return f


PRESETS = {
    "constant": _preset_constant,
    "modulation": _preset_modulation,
    "coifman_meyer_homogeneous": _preset_homogeneous,
    "mikhlin_component": _preset_mikhlin,
    "random_bandlimited": _preset_random,
    "indicator_zero": _preset_indicator_zero,
}


def make_symbol(preset: str, spec: GridSpec, m: int, **params) -> SymbolGrid:
    """Lazily evaluated preset symbol.

    Presets: constant(value), modulation(shifts), coifman_meyer_homogeneous(exponents),
    mikhlin_component(i, k), random_bandlimited(seed, band), indicator_zero.
    Homogeneous presets are xi^alpha / |xi|^|alpha| and vanish at the origin.
    """
    try:
        factory = PRESETS[preset]
    except KeyError:
        raise ConfigError(f"unknown symbol preset {preset!r}; choose from {sorted(PRESETS)}") from None
    func = factory(spec, m, **params)
    desc = {"name": preset, **{k: _jsonable(v) for k, v in params.items()}}
    return SymbolGrid(spec, m, func=func, descriptor=desc)


def _jsonable(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, np.generic):
        return v.item()
    return v


def symbol_from_descriptor(desc: dict, spec: GridSpec, m: int) -> SymbolGrid:
    params = {k: v for k, v in desc.items() if k != "name"}
    if desc.get("name") == "constant" and isinstance(params.get("value"), list):
        params["value"] = complex(*params["value"])
    return make_symbol(desc["name"], spec, m, **params)


def dyadic_piece(sigma: SymbolGrid, j: int, partition: Partition) -> SymbolGrid:
    """sigma(xi) * psi_hat(2^-j xi), supported in 2^(j-1) <= |xi| <= 2^(j+1)."""
    if j not in partition.scales:
        raise ConfigError(f"scale j={j} outside partition range [{partition.j_min}, {partition.j_max}]")
    desc = {"name": "dyadic_piece", "j": j, "j_min": partition.j_min, "j_max": partition.j_max,
            "base": sigma.descriptor}
    return sigma.times(lambda axes: partition.piece(j, _radius(axes)), desc)


# --- norms and the regularity constant --------------------------------------------


def _check_profile(sigma: SymbolGrid, profile: SmoothnessProfile) -> None:
    if profile.m != sigma.m:
        raise DimensionMismatch("smoothness profile vs symbol linearity", sigma.m, profile.m)
    if profile.n != sigma.spec.n:
        raise DimensionMismatch("smoothness profile dimension vs grid dimension", sigma.spec.n, profile.n)


def sobolev_weight(spec: GridSpec, s: Sequence[float]) -> np.ndarray:
    """prod_i <y_i>^(2 s_i) on the reciprocal lattice, FFT order, one block per s_i."""
    n = spec.n
    y2 = spec.offsets() ** 2
    naxes = len(s) * n
    W = np.ones((1,) * naxes)
    for i, si in enumerate(s):
        block = np.zeros((1,) * naxes)
        for d in range(n):
            shape = [1] * naxes
            shape[i * n + d] = spec.N
            block = block + y2.reshape(shape)
        W = W * (1.0 + block) ** float(si)
    return W


def symbol_transform(sigma: SymbolGrid) -> np.ndarray:
    """Riemann-sum Fourier transform of the symbol on the reciprocal lattice."""
    S = sigma.dense()
    return np.fft.fftn(S) / sigma.spec.L ** sigma.naxes


def product_sobolev_norm(sigma: SymbolGrid, profile: SmoothnessProfile) -> float:
    """(sum_y |sigma_hat(y)|^2 prod_i <y_i>^(2 s_i) * cell_y)^(1/2), cell_y = (L/N)^{mn}."""
    _check_profile(sigma, profile)
    spec = sigma.spec
    hat = symbol_transform(sigma)
    W = sobolev_weight(spec, profile.s)
    cell = spec.h ** sigma.naxes
    return float(np.sqrt(np.sum(np.abs(hat) ** 2 * W) * cell))


def _check_annulus_covered(spec: GridSpec) -> None:
    if spec.N / (2.0 * spec.L) < 2.0:
        raise ConfigError(
            f"symbol grid (N={spec.N}, L={spec.L}) reaches |xi| = {spec.N / (2 * spec.L)} per axis; "
            "the annulus |xi| <= 2 needs N / (2 L) >= 2"
        )


def localized_symbol(sigma: SymbolGrid, j: int) -> SymbolGrid:
    """sigma(2^j xi) * psi_hat(xi)."""
    desc = {"name": "localized", "j": j, "base": sigma.descriptor}
    return sigma.rescaled(2.0 ** j).times(lambda axes: Partition.psi_hat(_radius(axes)), desc)


def regularity_profile(sigma: SymbolGrid, profile: SmoothnessProfile, partition: Partition,
                       grid: GridSpec | None = None) -> dict[int, float]:
    """W^(s) norm of sigma(2^j .) psi_hat for each j in the partition range."""
    if grid is not None:
        sigma = sigma.on_grid(grid)
    _check_profile(sigma, profile)
    _check_annulus_covered(sigma.spec)
    return {j: product_sobolev_norm(localized_symbol(sigma, j), profile) for j in partition.scales}


def regularity_constant_A(sigma: SymbolGrid, profile: SmoothnessProfile, partition: Partition,
                          grid: GridSpec | None = None) -> float:
    """Max over the partition's scales of ||sigma(2^j .) psi_hat||_{W^(s_1..s_m)}.

    The supremum over all integers j is truncated to [j_min, j_max]; ``grid``
    chooses the lattice on which the localized symbol is sampled (it must reach
    |xi| = 2 on every axis).
    """
    return max(regularity_profile(sigma, profile, partition, grid).values())


# --- operators ------------------------------------------------------------------


def _check_inputs(sigma: SymbolGrid, inputs: Sequence[GridFunction]) -> None:
    if len(inputs) != sigma.m:
        raise DimensionMismatch("number of inputs vs symbol linearity", sigma.m, len(inputs))
    for i, f in enumerate(inputs):
        if f.spec != sigma.spec:
            raise ConfigError(f"input {i} lives on {f.spec}, symbol on {sigma.spec}")


def _aliased_index(m: int, n: int, N: int) -> np.ndarray:
    """Flat output index of (sum_i k_i mod N) for every point of the m*n lattice."""
    naxes = m * n
    flat = np.zeros((1,) * naxes, dtype=np.int64)
    for d in range(n):
        total = np.zeros((1,) * naxes, dtype=np.int64)
        for i in range(m):
            shape = [1] * naxes
            shape[i * n + d] = N
            total = total + np.arange(N, dtype=np.int64).reshape(shape)
        flat = flat * N + np.mod(total, N)
    return np.broadcast_to(flat, (N,) * naxes)


def apply_multiplier(sigma: SymbolGrid, inputs: Sequence[GridFunction]) -> GridFunction:
    """T_sigma(f_1, ..., f_m) on the torus.

    g(eta) = sum_{k_1 + ... + k_m = eta mod N} sigma(k_1/L, ..., k_m/L) prod_i c_i(k_i),
    then the output is sum_eta g(eta) exp(2 pi i eta.x / L).
    """
    _check_inputs(sigma, inputs)
    spec = sigma.spec
    n, N, m = spec.n, spec.N, sigma.m
    name = sigma.name

    # separable presets need no dense lattice
    if name == "constant":
        value = sigma.at(*([0.0] * sigma.naxes))
        out = np.full(spec.shape, value, dtype=np.complex128)
        for f in inputs:
            out = out * f.samples
        return GridFunction(spec, out)
    if name == "modulation":
        a = np.asarray(sigma.descriptor["shifts"], dtype=float).reshape(m, n)
        xi = spec.frequency_vectors()
        out = np.ones(spec.shape, dtype=np.complex128)
        for i, f in enumerate(inputs):
            phase = np.exp(2j * np.pi * np.tensordot(a[i], xi, axes=(0, 0)))
            out = out * (np.fft.ifftn(f.coefficients() * phase) * spec.size)
        return GridFunction(spec, out)
    if name == "indicator_zero":
        return GridFunction(spec, np.full(spec.shape, np.prod([f.mean() for f in inputs])))

    S = sigma.dense()
    naxes = m * n
    prod = S
    for i, f in enumerate(inputs):
        shape = [1] * naxes
        shape[i * n:(i + 1) * n] = [N] * n
        prod = prod * f.coefficients().reshape(shape)
    idx = _aliased_index(m, n, N).ravel()
    prod = prod.ravel()
    g = np.bincount(idx, weights=prod.real, minlength=N ** n) + 1j * np.bincount(
        idx, weights=prod.imag, minlength=N ** n)
    return GridFunction(spec, np.fft.ifftn(g.reshape(spec.shape)) * spec.size)


def delta_j(f: GridFunction, j: int, phi: Callable[[np.ndarray], np.ndarray] | None = None) -> GridFunction:
    """Inverse transform of phi(2^-j xi) c_f(xi); phi acts on stacked frequency vectors (n, ...).

    The default phi is the partition function psi_hat(|xi|).
    """
    spec = f.spec
    if phi is None:
        phi = lambda xi: Partition.psi_hat(np.sqrt(np.sum(xi ** 2, axis=0)))
    at_zero = np.asarray(phi(np.zeros((spec.n, 1))))
    if np.any(at_zero != 0):
        raise ConfigError("phi must vanish at the origin")
    mult = phi(spec.frequency_vectors() * 2.0 ** (-j))
    return GridFunction.from_coefficients(spec, f.coefficients() * mult)


def kernel_of(sigma_j: SymbolGrid) -> GridFunction:
    """K(y) = sum_xi sigma(xi) exp(2 pi i y.xi) (1/L)^{mn} on the m*n-dimensional torus.

    The returned function lives on GridSpec(m*n, N, L), so its scaled L^2 norm
    equals `SymbolGrid.l2` of the input.
    """
    spec = sigma_j.spec
    S = sigma_j.dense()
    K = np.fft.ifftn(S) * (spec.N / spec.L) ** sigma_j.naxes
    return GridFunction(GridSpec(sigma_j.naxes, spec.N, spec.L), K)


__all__ = [
    "GridSpec", "GridFunction", "SymbolGrid", "Partition", "make_partition", "make_symbol",
    "dyadic_piece", "product_sobolev_norm", "regularity_constant_A", "regularity_profile",
    "apply_multiplier", "delta_j", "kernel_of", "random_bandlimited_function", "GuardError",
]
