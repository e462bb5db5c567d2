"""Empirical probes: operator-norm ratios, pointwise domination, boundary sweeps.

Probes report empirical constants and trends only. The constants hidden in
the boundedness estimates are not computable, so nothing here turns a ratio
into a pass/fail verdict.

Config files are flat ``key = value`` text under a ``[probe]`` header, read
with `configparser`. Exact rationals are written "num/den", lists are comma
separated, and symbol parameters use the ``symbol.`` prefix::

    [probe]
    m = 2
    s = 1, 1
    reciprocals = 1/2, 0
    symbol = mikhlin_component
    symbol.i = 0
    symbol.k = 0
"""

from __future__ import annotations

import configparser
import dataclasses
import hashlib
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import reports
from .errors import ConfigError, GuardError
from .fourier import (GridFunction, GridSpec, Partition, SymbolGrid, apply_multiplier, dyadic_piece,
                      make_symbol, product_sobolev_norm, random_bandlimited_function, regularity_constant_A)
from .geometry import (ReciprocalExponents, SmoothnessProfile, as_fraction, check_admissible, format_fraction,
                       reciprocal_sum, subset_slack)
from .hardy import DyadicCube, default_moment_order, hp_quasinorm, make_atom, weak_norm, zeta_convolve

FAMILIES = ("auto", "random_bandlimited", "constants")
TARGETS = ("strong", "weak")


def _fractions(value) -> tuple[Fraction, ...]:
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    return tuple(as_fraction(v) for v in value)


def _ints(value) -> tuple[int, ...]:
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    return tuple(int(v) for v in value)


def _param(text: str):
    parts = [p.strip() for p in text.split(",")]
    values = []
    for p in parts:
        try:
            values.append(int(p))
        except ValueError:
            try:
                values.append(float(p))
            except ValueError:
                values.append(p)
    return values[0] if len(values) == 1 else values


@dataclass(frozen=True)
class ProbeConfig:
    m: int = 2
    n: int = 1
    N: int = 32
    L: float = 1.0
    symbol: str = "mikhlin_component"
    symbol_params: tuple[tuple[str, object], ...] = ()
    s: tuple[Fraction, ...] = (Fraction(1), Fraction(1))
    reciprocals: tuple[Fraction, ...] = (Fraction(1, 2), Fraction(0))
    family: str = "auto"
    band: int = 8
    atom_order: int | None = None
    trials: int = 32
    seed: int = 0
    j_min: int = -4
    j_max: int = 4
    symbol_N: int = 32
    symbol_L: float = 8.0
    target: str = "strong"
    hp_levels: int | None = None
    sweep_facet: tuple[int, ...] = ()
    sweep_direction: tuple[Fraction, ...] = ()
    sweep_t: tuple[Fraction, ...] = ()

    def __post_init__(self):
        set_ = lambda k, v: object.__setattr__(self, k, v)
        set_("s", _fractions(self.s))
        set_("reciprocals", _fractions(self.reciprocals))
        set_("sweep_direction", _fractions(self.sweep_direction))
        set_("sweep_t", _fractions(self.sweep_t))
        set_("sweep_facet", _ints(self.sweep_facet))
        params = self.symbol_params
        if isinstance(params, dict):
            params = tuple(sorted(params.items()))
        set_("symbol_params", tuple((k, tuple(v) if isinstance(v, list) else v) for k, v in params))
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.family not in FAMILIES:
            raise ConfigError(f"input family must be one of {FAMILIES}, got {self.family!r}")
        if self.target not in TARGETS:
            raise ConfigError(f"target must be one of {TARGETS}, got {self.target!r}")
        if len(self.s) != self.m or len(self.reciprocals) != self.m:
            raise ConfigError(f"s and reciprocals need m = {self.m} entries each")
        self.grid, self.symbol_grid, self.profile, self.exponents, self.partition  # validate eagerly

    @property
    def grid(self) -> GridSpec:
        return GridSpec(self.n, self.N, self.L)

    @property
    def symbol_grid(self) -> GridSpec:
        return GridSpec(self.n, self.symbol_N, self.symbol_L)

    @property
    def profile(self) -> SmoothnessProfile:
        return SmoothnessProfile(self.n, self.s)

    @property
    def exponents(self) -> ReciprocalExponents:
        return ReciprocalExponents(self.reciprocals)

    @property
    def partition(self) -> Partition:
        return Partition(self.j_min, self.j_max)

    def make_symbol(self) -> SymbolGrid:
        params = {k: list(v) if isinstance(v, tuple) else v for k, v in self.symbol_params}
        return make_symbol(self.symbol, self.grid, self.m, **params)

    def with_s(self, s) -> "ProbeConfig":
        return dataclasses.replace(self, s=_fractions(s))

    def to_text(self) -> str:
        """Canonical config text; its SHA-256 is the config hash."""
        lines = ["[probe]"]
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if f.name == "symbol_params":
                for k, v in value:
                    lines.append(f"symbol.{k} = {_format_value(v)}")
                continue
            if value is None or value == ():
                continue
            lines.append(f"{f.name} = {_format_value(value)}")
        return "\n".join(lines) + "\n"

    def hash(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()


def _format_value(v) -> str:
    if isinstance(v, Fraction):
        return format_fraction(v)
    if isinstance(v, (tuple, list)):
        return ", ".join(_format_value(x) for x in v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


_INT_FIELDS = {"m", "n", "N", "band", "atom_order", "trials", "seed", "j_min", "j_max", "symbol_N", "hp_levels"}
_FLOAT_FIELDS = {"L", "symbol_L"}
_STR_FIELDS = {"symbol", "family", "target"}
_LIST_FIELDS = {"s", "reciprocals", "sweep_facet", "sweep_direction", "sweep_t"}


def parse_config(text: str) -> ProbeConfig:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from exc
    if not parser.has_section("probe"):
        raise ConfigError("config needs a [probe] section")
    kwargs: dict = {}
    params: dict = {}
    for key, raw in parser.items("probe"):
        raw = raw.strip()
        if key.startswith("symbol."):
            params[key[len("symbol."):]] = _param(raw)
        elif key in _INT_FIELDS:
            try:
                kwargs[key] = int(raw)
            except ValueError:
                raise ConfigError(f"{key} must be an integer, got {raw!r}") from None
        elif key in _FLOAT_FIELDS:
            try:
                kwargs[key] = float(raw)
            except ValueError:
                raise ConfigError(f"{key} must be a number, got {raw!r}") from None
        elif key in _STR_FIELDS:
            kwargs[key] = raw
        elif key in _LIST_FIELDS:
            kwargs[key] = raw
        elif key == "p":
            kwargs["reciprocals"] = ReciprocalExponents.from_p(v for v in raw.split(",")).r
        else:
            raise ConfigError(f"unknown config key {key!r}")
    if params:
        kwargs["symbol_params"] = params
    try:
        return ProbeConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def load_config(path) -> ProbeConfig:
    return parse_config(Path(path).read_text())


# --- inputs and norms ----------------------------------------------------------------


def trial_seed(master: int, trial: int) -> int:
    """Per-trial seed depending only on (master seed, trial index)."""
    return int(np.random.SeedSequence([int(master), int(trial)]).generate_state(1)[0])


def draw_inputs(config: ProbeConfig, seed: int) -> list[GridFunction]:
    """One input per slot: atoms for p_i <= 1, L^2-normalized random functions
    for 1 < p_i < infinity, sup-normalized random functions for p_i = infinity."""
    grid = config.grid
    rng = np.random.default_rng(seed)
    out = []
    for r in config.reciprocals:
        sub = int(rng.integers(2 ** 32))
        if config.family == "constants":
            out.append(GridFunction(grid, np.ones(grid.shape)))
        elif config.family == "auto" and r >= 1:
            order = config.atom_order if config.atom_order is not None else default_moment_order(grid.n, 1 / r)
            need = max(4, order + 1) if order > 0 else 1
            max_level = grid.log2N - (need - 1).bit_length()
            level = int(rng.integers(0, max_level + 1))
            coords = tuple(int(c) for c in rng.integers(0, 2 ** level, size=grid.n))
            out.append(make_atom(grid, DyadicCube(level, coords, grid.L), 1 / r, order, seed=sub).function)
        elif config.family == "auto" and r == 0:
            out.append(random_bandlimited_function(grid, sub, config.band, normalize="sup"))
        else:
            out.append(random_bandlimited_function(grid, sub, config.band, normalize="l2"))
    return out


def input_norm(f: GridFunction, r: Fraction, hp_levels: int | None = None) -> float:
    """H^p quasi-norm for p <= 1, L^p norm for 1 < p < infinity, sup norm for p = infinity."""
    if r == 0:
        return f.norm(np.inf)
    if r >= 1:
        return hp_quasinorm(f, 1 / r, hp_levels)
    return f.norm(1 / float(r))


def output_norm(F: GridFunction, r_total: Fraction, target: str = "strong") -> float:
    if r_total == 0:
        return F.norm(np.inf)
    p = 1 / float(r_total)
    return weak_norm(F, p) if target == "weak" else F.norm(p)


def _trial_norms(config: ProbeConfig, sigma: SymbolGrid) -> list[tuple[int, float, float]]:
    r_total = reciprocal_sum(config.exponents)
    rows = []
    for t in range(config.trials):
        seed = trial_seed(config.seed, t)
        inputs = draw_inputs(config, seed)
        out = apply_multiplier(sigma, inputs)
        num = output_norm(out, r_total, config.target)
        den = float(np.prod([input_norm(f, r, config.hp_levels) for f, r in zip(inputs, config.reciprocals)]))
        rows.append((seed, num, den))
    return rows


def _ratio(num: float, A: float, den: float) -> float:
    if num == 0:
        return 0.0
    if den == 0:
        return float("inf")
    return num / (A * den)


# --- reports ---------------------------------------------------------------------------


@dataclass
class ProbeReport:
    config: ProbeConfig
    A: float
    rows: list[dict] = field(default_factory=list)

    @property
    def ratios(self) -> list[float]:
        return [row["ratio"] for row in self.rows]

    @property
    def summary(self) -> dict:
        return {"max_ratio": max(self.ratios), "median_ratio": statistics.median(self.ratios),
                "trials": len(self.rows)}

    def to_doc(self) -> dict:
        cfg = self.config
        return {
            "kind": "ratio_probe",
            "config": cfg.to_text(),
            "seed": cfg.seed,
            "hash": cfg.hash(),
            "A": self.A,
            "admissible": {"closed": check_admissible(cfg.profile, cfg.exponents),
                           "strict": check_admissible(cfg.profile, cfg.exponents, strict=True)},
            "rows": self.rows,
            "summary": self.summary,
        }

    def to_json(self) -> str:
        return reports.dumps(self.to_doc())

    def to_csv(self) -> str:
        header = ["trial", "seed", "output_norm", "input_norm", "A", "ratio"]
        return reports.csv_table(header, ([r[k] for k in header] for r in self.rows))


def ratio_probe(config: ProbeConfig) -> ProbeReport:
    """||T_sigma(f_1..f_m)|| / (A prod ||f_i||) over seeded trials."""
    sigma = config.make_symbol()
    A = regularity_constant_A(sigma.on_grid(config.symbol_grid), config.profile, config.partition)
    if not A > 0:
        raise GuardError("regularity constant A is zero; the ratio is undefined")
    report = ProbeReport(config, A)
    for t, (seed, num, den) in enumerate(_trial_norms(config, sigma)):
        report.rows.append({"trial": t, "seed": seed, "output_norm": num, "input_norm": den, "A": A,
                            "ratio": _ratio(num, A, den)})
    return report


def dilated_inputs(spec: GridSpec, m: int, j: int, seed: int) -> list[GridFunction]:
    """Modulated Gaussians g_i(2^j x) with seeded widths and modulations.

    For a 0-homogeneous symbol both sides of the domination inequality are
    covariant under x -> 2^j x with these inputs, so the ratio should not
    drift with j beyond discretization error.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(m):
        a = rng.uniform(-1, 1, size=spec.n)
        w = rng.uniform(0.5, 1.0)

        def g(*x, a=a, w=w):
            u = [2.0 ** j * ((xd + spec.L / 2) % spec.L - spec.L / 2) for xd in x]
            r2 = sum(ud * ud for ud in u)
            return np.exp(-np.pi * r2 / w ** 2) * np.exp(2j * np.pi * sum(ad * ud for ad, ud in zip(a, u)))

        out.append(GridFunction.from_callable(spec, g))
    return out


def tomita_sides(sigma: SymbolGrid, j: int, inputs: Sequence[GridFunction], q: float, s,
                 partition: Partition | None = None, sobolev_grid: GridSpec | None = None):
    """Pointwise |T_{sigma_j}(f)| and the majorant
    ||sigma_j(2^j .)||_{W^(s..s)} prod_i (zeta_j * |f_i|^q)^(1/q), sigma_j = sigma psi_hat(2^-j .)."""
    n, m = sigma.spec.n, sigma.m
    s_val = float(s)
    if not max(1.0, n / s_val) < q < 2:
        raise ConfigError(f"need max(1, n/s) = {max(1.0, n / s_val)} < q < 2, got q = {q}")
    partition = partition or Partition(min(-4, j), max(4, j + 1))
    sobolev_grid = sobolev_grid or GridSpec(n, 32, 8.0)
    s_exact = s if not isinstance(s, float) else Fraction(s)
    profile = SmoothnessProfile(n, [s_exact] * m)
    piece = dyadic_piece(sigma, j, partition)
    W = product_sobolev_norm(piece.rescaled(2.0 ** j).on_grid(sobolev_grid), profile)
    value = np.abs(apply_multiplier(piece, inputs).samples)
    majorant = np.full(sigma.spec.shape, W)
    for f in inputs:
        majorant = majorant * zeta_convolve(f, j, s_val, q).samples.real ** (1.0 / q)
    return value, majorant


def tomita_check(sigma: SymbolGrid, j: int, inputs: Sequence[GridFunction], q: float, s,
                 partition: Partition | None = None, sobolev_grid: GridSpec | None = None) -> float:
    """max_x |T_{sigma_j}(f)(x)| / majorant(x): the empirical pointwise-domination constant."""
    value, majorant = tomita_sides(sigma, j, inputs, q, s, partition, sobolev_grid)
    if not np.any(value > 0):
        return 0.0
    with np.errstate(divide="ignore"):
        ratio = np.where(majorant > 0, value / majorant, np.inf)
    return float(ratio.max())


@dataclass
class SweepReport:
    config: ProbeConfig
    crossing_t: Fraction
    rows: list[dict] = field(default_factory=list)

    def to_doc(self) -> dict:
        cfg = self.config
        return {
            "kind": "sharpness_sweep",
            "config": cfg.to_text(),
            "seed": cfg.seed,
            "hash": cfg.hash(),
            "facet": list(cfg.sweep_facet),
            "crossing_t": self.crossing_t,
            "rows": self.rows,
            "summary": {"points": len(self.rows), "inside": sum(r["inside"] for r in self.rows)},
        }

    def to_json(self) -> str:
        return reports.dumps(self.to_doc())

    def to_csv(self) -> str:
        header = ["t", "s", "inside", "strict_inside", "slack", "A", "max_ratio"]
        rows = ([r["t"], " ".join(format_fraction(v) for v in r["s"])] + [r[k] for k in header[2:]]
                for r in self.rows)
        return reports.csv_table(header, rows)


def facet_crossing(config: ProbeConfig) -> Fraction:
    """Exact t at which sum_{k in J}(s_k(t)/n - r_k) = -1/2 along s(t) = s + t d."""
    J = config.sweep_facet
    d = config.sweep_direction
    if not J or len(d) != config.m:
        raise ConfigError("a sweep needs sweep_facet and an m-entry sweep_direction")
    if any(not 0 <= k < config.m for k in J):
        raise ConfigError(f"facet indices {J} out of range for m = {config.m}")
    rate = sum((d[k] for k in J), Fraction(0)) / config.n
    if rate == 0:
        raise ConfigError(f"the sweep line is parallel to facet {J} and never crosses it")
    return -subset_slack(config.profile, config.exponents, J) / rate


def sharpness_sweep(config: ProbeConfig) -> SweepReport:
    """Recompute A and the max probe ratio along a line in s-space crossing a facet.

    Inputs and the symbol stay fixed along the line, so only A changes; the
    rows are trend data with exact inside/outside flags.
    """
    t_star = facet_crossing(config)
    if not config.sweep_t:
        raise ConfigError("a sweep needs sweep_t values")
    sigma = config.make_symbol()
    norms = _trial_norms(config, sigma)
    sym = sigma.on_grid(config.symbol_grid)
    report = SweepReport(config, t_star)
    for t in config.sweep_t:
        s_t = tuple(si + t * di for si, di in zip(config.s, config.sweep_direction))
        profile = SmoothnessProfile(config.n, s_t)
        r = config.exponents
        A = regularity_constant_A(sym, profile, config.partition)
        report.rows.append({
            "t": t,
            "s": list(s_t),
            "inside": check_admissible(profile, r),
            "strict_inside": check_admissible(profile, r, strict=True),
            "slack": subset_slack(profile, r, config.sweep_facet),
            "A": A,
            "max_ratio": max(_ratio(num, A, den) for _, num, den in norms),
        })
    return report


def default_corpus(seed: int = 0, trials: int = 32) -> list[ProbeConfig]:
    """Probe configs for m in {1, 2, 3}, n = 1, N in {32, 64}.

    Each (m, N) gets two exponent patterns: (1/2, 0, ..., 0) and a mixed
    pattern (1, 1/2, 0) truncated to m slots, so atoms are exercised too.
    """
    configs = []
    for m in (1, 2, 3):
        l2 = ("1/2",) + ("0",) * (m - 1)
        mixed = ("1", "1/2", "0")[:m]
        for N in (32, 64):
            for r in (l2, mixed):
                configs.append(ProbeConfig(m=m, N=N, s=(1,) * m, reciprocals=r, trials=trials, seed=seed,
                                           symbol="mikhlin_component"))
    return configs
