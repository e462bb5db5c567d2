"""Acceptance criteria, each at its stated tolerance and time budget.

Every criterion prints one PASS/FAIL line. Run directly for the summary only:

    python tests/test_acceptance.py
"""

import json
import random
import sys
import time
from fractions import Fraction as F
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from _corpus import extreme_examples, piecewise_constant  # noqa: E402
from _oracles import brute_apply_1d, quadrature_sobolev  # noqa: E402
from multilinear_multipliers.fourier import (  # noqa: E402
    GridFunction, GridSpec, Partition, SymbolGrid, apply_multiplier, dyadic_piece, make_symbol,
    product_sobolev_norm, random_bandlimited_function,
)
from multilinear_multipliers.geometry import (  # noqa: E402
    ReciprocalExponents, SmoothnessProfile, check_admissible, ell_count, enumerate_vertices, expected_vertex_count,
    hull_membership, interpolation_split,
)
from multilinear_multipliers.hardy import (  # noqa: E402
    DyadicCube, SteinParams, cz_decompose, make_atom, stein_combine, weak_norm,
)
from multilinear_multipliers.probes import (  # noqa: E402
    default_corpus, load_config, ratio_probe, sharpness_sweep,
)

DATA = Path(__file__).parent / "data"


def rand_profile(rng, m, n):
    return SmoothnessProfile(n, [F(n, 2) + F(rng.randint(0, 12), rng.randint(1, 6)) for _ in range(m)])


# --- criteria -----------------------------------------------------------------------------


def ac01_vertex_count():
    rng = random.Random(1)
    for m, n in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (4, 1)]:
        for _ in range(5):
            prof = rand_profile(rng, m, n)
            got = len(enumerate_vertices(prof))
            if got != m * 2 ** (m - 1) + 1 or got != expected_vertex_count(m):
                return False, f"m={m} n={n} s={prof.s}: {got} vertices"
    return True, "30 profiles, counts exact"


def ac02_base_case():
    vs = {tuple(v) for v in enumerate_vertices(SmoothnessProfile(1, [1, 1]))}
    expected = {(F(0), F(0)), (F(3, 2), F(0)), (F(3, 2), F(1)), (F(0), F(3, 2)), (F(1), F(3, 2))}
    return vs == expected, f"{len(vs)} vertices"


def ac03_region_equivalence():
    rng = random.Random(3)
    checked = 0
    for m in (2, 3, 4):
        prof = rand_profile(rng, m, 1)
        vs = enumerate_vertices(prof)
        hi = [q + F(3, 4) for q in prof.ratios]
        for _ in range(1000):
            r = ReciprocalExponents([F(rng.randint(0, 12 * int(h * 4)), 48) for h in hi])
            cert = hull_membership(vs, r)
            if cert.inside != check_admissible(prof, r):
                return False, f"m={m} r={r} disagree"
            if cert.inside and (cert.reconstruct() != tuple(r) or sum(cert.weights) != 1
                                or min(cert.weights) < 0):
                return False, f"m={m} r={r} weights do not reconstruct"
            checked += 1
    return True, f"{checked} points, zero disagreements"


def ac04_interpolation_paths():
    for n, r, s in extreme_examples(100, seed=4):
        root = interpolation_split(ReciprocalExponents(r), SmoothnessProfile(n, s))
        if not root.reconstructs() or any(ell_count(leaf.r) for leaf in root.leaves()):
            return False, f"r={r} s={s}"
        if root.depth() > ell_count(ReciprocalExponents(r)):
            return False, f"depth exceeds ell at r={r}"
    return True, "100 trees reconstruct exactly"


def ac05_operator_oracle():
    N, L = 64, 1.0
    spec = GridSpec(1, N, L)
    worst = 0.0
    for seed in range(10):
        rng = np.random.default_rng(seed)
        S = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
        fs = [random_bandlimited_function(spec, 1000 + 2 * seed + i, band=31) for i in range(2)]
        got = apply_multiplier(SymbolGrid.from_samples(spec, 2, S), fs).samples
        ref = brute_apply_1d(S, [f.coefficients() for f in fs], N, L)
        worst = max(worst, np.max(np.abs(got - ref)) / np.max(np.abs(ref)))
    return worst <= 1e-10, f"max relative error {worst:.2e}"


def ac06_product_identity():
    worst = 0.0
    for m in (1, 2, 3):
        spec = GridSpec(1, 32, 1.0)
        fs = [random_bandlimited_function(spec, 60 + i, band=5) for i in range(m)]
        expected = np.prod([f.samples for f in fs], axis=0)
        for sigma in (make_symbol("constant", spec, m), make_symbol("constant", spec, m).densified()):
            got = apply_multiplier(sigma, fs).samples
            worst = max(worst, np.max(np.abs(got - expected)) / np.max(np.abs(expected)))
    return worst <= 1e-10, f"max relative error {worst:.2e}"


def ac07_sobolev_oracle():
    N, L = 32, 4.0
    spec = GridSpec(1, N, L)
    worst = 0.0
    for seed in range(10):
        sigma = make_symbol("random_bandlimited", spec, 2, seed=seed, band=6)
        s = (F(1, 2) + F(seed, 4), F(1))
        got = product_sobolev_norm(sigma, SmoothnessProfile(1, s))
        ref = quadrature_sobolev(sigma.dense(), N, L, s)
        worst = max(worst, abs(got - ref) / ref)
    return worst <= 1e-8, f"max relative error {worst:.2e}"


def ac08_partition():
    part = Partition(-4, 4)
    r = np.linspace(2.0 ** -4, 2.0 ** 4, 20001)
    tele = float(np.max(np.abs(part.total(r) - 1)))
    spec = GridSpec(1, 64, 8.0)
    sigma = make_symbol("random_bandlimited", spec, 2, seed=8, band=10)
    total = sum(dyadic_piece(sigma, j, part).dense() for j in part.scales)
    xi = spec.frequencies()
    covered = part.covers(np.hypot(xi[:, None], xi[None, :]))
    reassembly = float(np.max(np.abs(total - sigma.dense())[covered]))
    ok = tele <= 1e-12 and reassembly <= 1e-12
    return ok, f"telescope {tele:.1e}, reassembly {reassembly:.1e}"


def ac09_cz_suite():
    spec = GridSpec(1, 64, 1.0)
    spike = GridFunction.from_callable(spec, lambda x: np.where(x < 1 / 8, 8.0, 0.0))
    cz = cz_decompose(spike, 2.0)
    g = np.where(spec.positions() < 1 / 4, 4.0, 0.0)
    if cz.cubes != [DyadicCube(2, (0,))] or not np.array_equal(cz.good.samples, g) or not all(cz.check().values()):
        return False, "hand example"
    specs = [GridSpec(1, 64, 1.0), GridSpec(2, 16, 1.0)]
    count = 0
    for seed in range(1000):
        sp = specs[seed % 2]
        f = piecewise_constant(sp, seed, pieces=sp.N // 2)
        base = float(np.mean(np.abs(f.samples)))
        for factor in (1.0, 1.5, 2.0, 4.0, 8.0):
            checks = cz_decompose(f, base * factor).check()
            if not all(checks.values()):
                return False, f"seed {seed} height x{factor}: {checks}"
            count += 1
    return True, f"hand example + {count} decompositions"


def ac10_atoms():
    worst = 0.0
    for seed in range(200):
        rng = np.random.default_rng(seed)
        n = 1 + seed % 2
        spec = GridSpec(n, 32, 1.0)
        order = int(rng.integers(0, 5))
        level = int(rng.integers(0, 3))
        coords = tuple(int(c) for c in rng.integers(0, 2 ** level, size=n))
        p = [F(1), F(3, 4), F(1, 2)][seed % 3]
        atom = make_atom(spec, DyadicCube(level, coords), p, order=order, seed=seed)
        if not (atom.support_ok() and atom.size_ok()):
            return False, f"seed {seed}: support/size"
        worst = max(worst, atom.moment_residual())
    return worst <= 1e-10, f"200 atoms, max moment residual {worst:.1e}"


def ac11_stein():
    params = SteinParams.from_exponents(F(9, 10), 2, F(11, 10))
    theta, _ = stein_combine(params)
    identity = 1 / params.p0 - 1 / params.q0 == 1 - 1 / params.r == 1 / params.p1 - 1 / params.q1
    try:
        SteinParams(F(9, 10), 2, F(1), F(3), F(11, 10))
        enforced = False
    except ValueError:
        enforced = True
    return theta == F(2, 11) and identity and enforced, f"theta = {theta}"


def ac12_weak_norm():
    spec = GridSpec(1, 64, 1.0)
    worst = 0.0
    for size in (1, 7, 20, 64):
        chi = np.roll((np.arange(64) < size).astype(float), 3)
        for q in (0.5, 1.0, 1.5, 3.0):
            expected = (size / 64) ** (1 / q)
            worst = max(worst, abs(weak_norm(GridFunction(spec, chi), q) - expected) / expected)
    chebyshev = all(
        weak_norm(f, q) <= f.norm(q) * (1 + 1e-12)
        for f in (random_bandlimited_function(spec, s) for s in range(50)) for q in (0.5, 1.0, 2.0, 4.0)
    )
    return worst <= 1e-12 and chebyshev, f"indicator error {worst:.1e}, weak <= strong on 200 cases"


def ac13_probe_harness():
    corpus = default_corpus(seed=0)
    first = [ratio_probe(c).to_json() for c in corpus]
    again = ratio_probe(corpus[5]).to_json()
    if again != first[5]:
        return False, "rerun not byte-identical"
    for text, cfg in zip(first, corpus):
        doc = json.loads(text)
        if doc["admissible"]["closed"] != check_admissible(cfg.profile, cfg.exponents):
            return False, "admissibility flag mismatch"
    for name in ("probe_l2", "probe_atoms", "sweep_facet"):
        cfg = load_config(DATA / f"{name}.ini")
        report = sharpness_sweep(cfg) if cfg.sweep_facet else ratio_probe(cfg)
        if report.to_json() != (DATA / f"{name}.json").read_text():
            return False, f"archived {name} does not replay"
        if cfg.sweep_facet:
            for row in report.rows:
                prof = SmoothnessProfile(cfg.n, row["s"])
                if row["inside"] != check_admissible(prof, cfg.exponents):
                    return False, "sweep flag mismatch"
    return True, f"{len(corpus)} corpus probes, 3 archived replays byte-identical"


CRITERIA = [
    (1, "vertex-count law", ac01_vertex_count, 1),
    (2, "m=2 base case", ac02_base_case, 1),
    (3, "region equivalence", ac03_region_equivalence, 30),
    (4, "interpolation paths", ac04_interpolation_paths, 5),
    (5, "operator oracle", ac05_operator_oracle, 30),
    (6, "product identity", ac06_product_identity, 5),
    (7, "Sobolev-norm oracle", ac07_sobolev_oracle, 10),
    (8, "partition exactness", ac08_partition, 1),
    (9, "CZ suite", ac09_cz_suite, 30),
    (10, "atom suite", ac10_atoms, 10),
    (11, "Stein algebra", ac11_stein, 1),
    (12, "weak norm", ac12_weak_norm, 5),
    (13, "probe determinism, flags, replay", ac13_probe_harness, 300),
]


def evaluate(func, budget):
    t0 = time.perf_counter()
    ok, detail = func()
    elapsed = time.perf_counter() - t0
    within = elapsed < budget
    return ok and within, elapsed, detail if within else f"{detail}; took {elapsed:.1f}s > {budget}s"


def line(num, name, ok, elapsed, detail):
    return f"AC{num:02d} {'PASS' if ok else 'FAIL'} {name} ({elapsed:.2f}s): {detail}"


@pytest.fixture(scope="module")
def report_lines(request):
    lines = []
    yield lines
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None:
        reporter.write_sep("-", "acceptance criteria")
        for text in lines:
            reporter.write_line(text)


@pytest.mark.parametrize("num, name, func, budget", CRITERIA, ids=[f"AC{c[0]:02d}" for c in CRITERIA])
def test_criterion(num, name, func, budget, report_lines):
    ok, elapsed, detail = evaluate(func, budget)
    text = line(num, name, ok, elapsed, detail)
    print(text)
    report_lines.append(text)
    assert ok, text


if __name__ == "__main__":
    failed = 0
    for num, name, func, budget in CRITERIA:
        ok, elapsed, detail = evaluate(func, budget)
        failed += not ok
        print(line(num, name, ok, elapsed, detail), flush=True)
    raise SystemExit(1 if failed else 0)
