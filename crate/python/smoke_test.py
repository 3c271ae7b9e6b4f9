#!/usr/bin/env python3
"""Smoke test for the dephase_py extension module.

Build the module first:

    cargo build --release -p dephase-py

then run this script with the repository's Python 3:

    python3 python/smoke_test.py
"""
import math
import sys
from importlib.machinery import ExtensionFileLoader
from importlib.util import module_from_spec, spec_from_loader
from pathlib import Path


def load_module():
    root = Path(__file__).resolve().parents[1]
    candidates = [
        root / "target" / "release" / "libdephase_py.so",
        root / "target" / "debug" / "libdephase_py.so",
        root / "target" / "release" / "libdephase_py.dylib",
        root / "target" / "debug" / "libdephase_py.dylib",
    ]
    for path in candidates:
        if path.exists():
            loader = ExtensionFileLoader("dephase_py", str(path))
            spec = spec_from_loader("dephase_py", loader)
            module = module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("dephase_py not built; run `cargo build --release -p dephase-py` first")


def approx(got, want, tol=1e-12):
    assert abs(got - want) <= tol, f"got {got}, wanted {want} (tol {tol})"


def main():
    m = load_module()

    # correlation stack of the initial Bell mixture
    state = m.XState.bell_mixture(0.8)
    approx(state.classical_correlation(), 1.0)
    approx(state.quantum_discord(), 0.2780719051126377)
    approx(state.joint_entropy(), 0.7219280948873623)
    approx(state.mutual_information(), 2.0 - 0.7219280948873623)
    assert state.basis_label() == "X"

    # the fully dephased state keeps only population correlations
    dephased = m.XState(0.8, 0.0, 0.0)
    approx(dephased.classical_correlation(), 1.0 - 0.7219280948873623)
    approx(dephased.quantum_discord(), 0.0)
    assert dephased.basis_label() == "Z"

    # mutual information identity on a few states
    for p, fb, fc in [(0.3, 0.5, 0.5), (0.8, 0.9, 0.1), (0.62, 0.2, 0.77)]:
        s = m.XState(p, fb * p, fc * (1.0 - p))
        gap = s.mutual_information() - (s.classical_correlation() + s.quantum_discord())
        assert abs(gap) <= 1e-12

    # geometry and the rate
    geometry = m.QubitGeometry.default()
    distances = geometry.distance_set()
    assert len(distances) == 6 and distances[0] == 0.0
    approx(distances[1], 10.0, 1e-9)
    assert m.gamma_point(0.0, 10.0, 0.05) == 0.0
    assert m.gamma_point(2.0, 0.0, 0.05) > 0.0
    approx(m.k_function(0.0), 1.0)

    # short evolution: starts fully coherent, identity holds on every row
    rows = m.evolve(geometry, 0.05, 0.8, t_max=40.0, points=400)
    assert len(rows) == 400
    t0 = rows[0]
    approx(t0[3], 1.0)  # C(0) = 1
    for row in rows:
        assert abs(row[5] - (row[3] + row[4])) <= 1e-12
        assert row[7] in ("Z", "X", "DEG")

    # regime scan at the high-temperature point settles into sigma_z
    report = m.scan_regimes(geometry, 0.05, 0.8, t_max=400.0, points=2000)
    assert report["asymptotic_basis"] == "Z"
    assert len(report["crossings"]) % 2 == 1
    assert report["metastable_count"] == 0

    # pointer temperatures
    approx(m.pointer_temperature_estimate(0.8), -math.log(0.6) / (16 * math.pi))
    tau_star = m.crossover_temperature(geometry, 0.8)
    assert 0.033 <= tau_star <= 0.043, tau_star

    # the measurement oracle agrees with the analytic maximum
    probe = m.XState(0.8, 0.3, 0.1)  # |a| = 0.6 > b + c = 0.4
    value, theta, phi = probe.maximize_classical(n_theta=61, n_phi=121)
    approx(value, probe.classical_correlation(), 1e-6)
    assert min(theta, math.pi - theta) < 1e-3

    print("smoke test passed")


if __name__ == "__main__":
    main()
