"""Acceptance suite: one test per release criterion.

Each test prints a single PASS line on success (run with -s or -v to see
them); any assertion failure marks the corresponding criterion as FAILED.
Tolerances are pinned here and must not be loosened without a recorded
decision.
"""

import json
import math

import numpy as np
import pytest

from hypgas.bounds import (
    diluteness_Y,
    i_bound,
    k_bound,
    quad_integrals,
    simplified_upper_bound,
    y0_threshold,
)
from hypgas.cli import EXIT_FAILED, EXIT_OK, EXIT_PARSE, main
from hypgas.manifolds import (
    MIRZAKHANI,
    MIRZAKHANI_GAP,
    SELBERG_3_16,
    CongruenceQuotient3,
    CustomManifold,
    ManifoldModel,
    ModularSurface,
    RandomSurface,
    certify_bec,
    congruence_index,
    spectral_gap,
    volume,
)
from hypgas.oracles import discrete_minimizer
from hypgas.scattering import (
    Potential,
    f_infinity,
    ScatteringParams,
    minimizer_profile,
    scattering_energy,
    scattering_length,
    solve_zero_energy,
)

ORACLE_GRID = [
    (d, a, R) for d in (2, 3) for a in (0.25, 0.5, 1.0) for R in (a + 1, a + 2)
]


def _report(n, text):
    print(f"CRITERION {n}: PASS — {text}")


def test_criterion_1_hardcore_scattering_length():
    worst = 0.0
    for d in (2, 3):
        for r0 in (0.1, 0.5, 1.0, 2.0):
            sol = scattering_length(Potential.hardcore(r0), ScatteringParams(mu=1.0, d=d))
            worst = max(worst, abs(sol.a - r0))
    assert worst <= 1e-8
    _report(1, f"hardcore |a - R0| <= 1e-8 on 8 cases (worst {worst:.2e})")


def test_criterion_2_energy_oracle_equivalence():
    worst_rel, min_order = 0.0, math.inf
    for d, a, R in ORACLE_GRID:
        res = discrete_minimizer(
            Potential.hardcore(a), ScatteringParams(mu=1.0, d=d), R, h=(R - a) / 400
        )
        closed = scattering_energy(d, a, 1.0, R)
        worst_rel = max(worst_rel, abs(res.energy - closed) / closed)
        min_order = min(min_order, res.order)
    assert worst_rel <= 1e-4
    # order estimated from three grids; 1e-2 covers extrapolation noise
    assert min_order >= 2.0 - 1e-2
    _report(
        2,
        f"oracle energy matches closed form on 12 cases "
        f"(worst rel {worst_rel:.2e}, min order {min_order:.3f})",
    )


def test_criterion_3_exterior_closed_form():
    worst = 0.0
    for d, a, R in ORACLE_GRID:
        V4 = Potential.piecewise([(a, 4.0)])
        params = ScatteringParams(mu=1.0, d=d)
        sol = scattering_length(V4, params)
        prof = solve_zero_energy(V4, params, R)
        norm = f_infinity(d, sol.a, R)
        ext = prof.grid > a
        dev = max(
            abs(f - f_infinity(d, sol.a, r) / norm)
            for r, f in zip(prof.grid[ext], prof.values[ext])
        )
        worst = max(worst, dev)
    assert worst <= 1e-6
    _report(3, f"exterior profile matches f_inf/f_inf(R), sup-dev {worst:.2e}")


def test_criterion_4_integral_inequality_suite():
    rng = np.random.default_rng(20240817)
    min_i, min_k, min_env = math.inf, math.inf, math.inf
    for _ in range(100):
        d = int(rng.integers(2, 4))
        a = float(rng.uniform(0.1, 1.5))
        R = a + float(rng.uniform(0.3, 2.5))
        V = Potential.hardcore(a)
        params = ScatteringParams(mu=1.0, d=d)
        prof = minimizer_profile(V, params, R)
        triple = quad_integrals(prof, V, 1.0, d)
        min_i = min(min_i, i_bound(d, a, R) - triple.I)
        min_k = min(min_k, k_bound(d, a, R) - triple.K)
        norm = f_infinity(d, a, R)
        sel = prof.grid > a
        env = min(
            f - f_infinity(d, a, r) / norm
            for r, f in zip(prof.grid[sel], prof.values[sel])
        )
        min_env = min(min_env, env)
    assert min_i >= -1e-10
    assert min_k >= -1e-10
    assert min_env >= -1e-8
    _report(
        4,
        f"100 randomized cases: I/K quadrature below bounds "
        f"(slacks {min_i:.3g}, {min_k:.3g}), envelope holds ({min_env:.2e})",
    )


def test_criterion_5_y0_soundness():
    worst_excess = -math.inf
    for d in (2, 3):
        for eps in (0.01, 0.1, 1.0):
            for mu in (0.5, 1.0, 2.0):
                for R0 in (0.5, 1.0):
                    y0 = y0_threshold(d, eps, mu, R0)
                    for Y in np.linspace(0.0, y0, 100):
                        worst_excess = max(
                            worst_excess, simplified_upper_bound(d, Y, mu, R0) - eps
                        )
    assert worst_excess <= 1e-12
    _report(5, f"energy <= eps for all Y <= Y0(eps); worst excess {worst_excess:.2e}")


def test_criterion_6_constants_reproduction():
    assert volume(ManifoldModel(ModularSurface(1))) == pytest.approx(math.pi / 3, rel=1e-15)
    assert volume(ManifoldModel(ModularSurface(2))) == pytest.approx(2 * math.pi, rel=1e-15)
    assert volume(ManifoldModel(ModularSurface(6))) == pytest.approx(48 * math.pi, rel=1e-15)
    for L in range(1, 101):
        assert isinstance(congruence_index(L), int)
    assert spectral_gap(ManifoldModel(ModularSurface(11))) == 975 / 4096
    assert spectral_gap(ManifoldModel(ModularSurface(11), SELBERG_3_16)) == 3 / 16
    assert (
        spectral_gap(ManifoldModel(CongruenceQuotient3(L=2, vol_X1=1.0))) == 3 / 4
    )
    assert spectral_gap(
        ManifoldModel(RandomSurface(g=2, alpha=0.05))
    ) == pytest.approx(3 / 16 - 0.05, rel=1e-15)
    assert spectral_gap(
        ManifoldModel(RandomSurface(g=2, alpha=0.05), MIRZAKHANI)
    ) == MIRZAKHANI_GAP
    assert MIRZAKHANI_GAP == 0.25 * (math.log(2) / (2 * math.pi + math.log(2))) ** 2
    _report(6, "volumes pi/3, 2pi, 48pi; index integrality L<=100; all gap constants")


def test_criterion_7_end_to_end_certificate():
    model = ManifoldModel(ModularSurface(50))
    V = Potential.hardcore(0.01)
    golden = certify_bec(model, 100, V, 1.0, 0.1)
    assert golden.certified and golden.fraction_lower >= 0.9

    # raising N eventually flips the verdict, exactly once, and no certified
    # point ever reports a fraction below the target
    flips = 0
    prev = True
    for N in (100, 150, 200, 235, 240, 300, 1000, 10000):
        cert = certify_bec(model, N, V, 1.0, 0.1)
        if cert.certified:
            assert cert.fraction_lower >= 0.9
        if cert.certified != prev:
            flips += 1
            prev = cert.certified
    assert flips == 1 and prev is False

    # doubling (N, volume) at fixed density changes nothing derived
    c1 = certify_bec(
        ManifoldModel(CustomManifold(volume=5000.0, gap=975 / 4096)), 10, V, 1.0, 0.1
    )
    c2 = certify_bec(
        ManifoldModel(CustomManifold(volume=10000.0, gap=975 / 4096)), 20, V, 1.0, 0.1
    )
    assert c1.rho == pytest.approx(c2.rho, rel=1e-15)
    for field in ("a", "Y", "gap", "energy_upper", "fraction_lower", "certified"):
        assert getattr(c1, field) == getattr(c2, field)
    _report(
        7,
        f"golden certificate fraction {golden.fraction_lower:.4f} >= 0.9; "
        "single flip in N; scale invariant",
    )


def test_criterion_8_cli_contract(tmp_path, capsys):
    pot = tmp_path / "hc.json"
    pot.write_text(json.dumps({"kind": "hardcore", "r0": 0.01, "pieces": []}))

    # golden-file JSON round-trip
    argv = ["certify", "--potential", str(pot), "--model", "modular", "--L", "50",
            "--N", "100", "--eps", "0.1"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    doc = json.loads(first)
    assert doc["certified"] is True and doc["fraction_lower"] >= 0.9

    # deterministic byte-identical rerun
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == first

    # sweep CSV row count equals the grid size
    assert main(
        ["sweep", "--potential", str(pot), "--gap", "0.238", "--format", "csv",
         "--axis", "rho:1e-5:1e-3:4:log", "--axis", "mu:1:2:3:linear"]
    ) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 1 + 4 * 3

    # exit-code table
    crowded = ["certify", "--potential", str(pot), "--model", "modular", "--L", "50",
               "--N", "1000000", "--eps", "0.1"]
    assert main(crowded) == EXIT_FAILED
    capsys.readouterr()
    assert main(["certify", "--potential", str(pot), "--model", "modular", "--N", "5"]) == EXIT_PARSE
    capsys.readouterr()
    assert main(["scatter", "--potential", str(tmp_path / "missing.json")]) == EXIT_PARSE
    capsys.readouterr()
    _report(8, "JSON round-trip, byte-identical reruns, CSV row counts, exit codes")
