"""Property suites behind ``thetanull verify``.

Each suite returns a report ``{"suite", "tolerance", "passed", "max_residual",
"cases": [...]}``. Sampling is driven by a seeded ``numpy`` generator, so a
report is a deterministic function of ``(samples, seed, cfg)``.
"""
from __future__ import annotations

import math

import numpy as np

from .characteristics import Characteristic, enumerate_all, enumerate_even, enumerate_odd, half_period
from .engine import EvalConfig, eval_jet, heat_factor, shift_identity_residual
from .gauss import assemble_bordered, boundary_rank, eta_form
from .sampling import (
    divisor_point,
    gamma48_generators,
    random_gamma48_word,
    random_period,
    random_symmetric,
    random_z,
)
from .siegel import direct_sum, validate_period
from .strata import modular_weight_check_squared

SUITES = ("heat", "shift", "factorization", "jacobi", "modular", "eta-identity", "parity", "boundary")

FD_STEP = 1e-5
_FD_CFG = EvalConfig(target_abs_error=1e-15)


def _report(name, tol, cases, key="residual", passed=None):
    worst = max((c[key] for c in cases), default=0.0)
    if passed is None:
        passed = all(c[key] < tol for c in cases)
    return {"suite": name, "tolerance": tol, "passed": bool(passed),
            "max_residual": worst, "cases": cases}


def heat_case(tau, z, ch, cfg: EvalConfig = _FD_CFG, h: float = FD_STEP) -> float:
    """Worst relative residual of ``Hess_jk - c_jk * FD_tau_jk`` over all ``j <= k``."""
    g = tau.g
    H = eval_jet(tau, z, ch, 2, cfg).hessian()
    scale = max(float(np.max(np.abs(H))), 1e-3)
    worst = 0.0
    for j in range(g):
        for k in range(j, g):
            E = np.zeros((g, g), dtype=complex)
            E[j, k] = E[k, j] = 1
            fp = eval_jet(validate_period(tau.tau + h * E), z, ch, 0, cfg).value
            fm = eval_jet(validate_period(tau.tau - h * E), z, ch, 0, cfg).value
            fd = (fp - fm) / (2 * h)
            worst = max(worst, abs(H[j, k] - heat_factor(j, k) * fd) / scale)
    return worst


def suite_heat(samples, rng, cfg):
    cases = []
    for i in range(samples):
        g = (1, 2, 3)[i % 3]
        tau, z = random_period(rng, g), random_z(rng, g)
        chars = enumerate_even(g) if g <= 2 else [enumerate_even(g)[int(rng.integers(36))]]
        res = max(heat_case(tau, z, ch) for ch in chars)
        cases.append({"index": i, "g": g, "n_characteristics": len(chars), "residual": res})
    return _report("heat", 1e-7, cases)


def suite_shift(samples, rng, cfg):
    cases = []
    for i in range(samples):
        g = 1 + i % 2
        tau, z = random_period(rng, g), random_z(rng, g)
        res = max(shift_identity_residual(tau, z, ch, cfg) for ch in enumerate_all(g))
        cases.append({"index": i, "g": g, "residual": res})
    return _report("shift", 1e-10, cases)


def suite_factorization(samples, rng, cfg):
    cases = []
    for i in range(samples):
        t1, t2 = random_period(rng, 1), random_period(rng, 1)
        z1, z2 = random_z(rng, 1), random_z(rng, 1)
        c1, c2 = (enumerate_all(1)[int(rng.integers(4))] for _ in range(2))
        joint = eval_jet(direct_sum(t1, t2), np.concatenate([z1, z2]), c1 + c2, 0, cfg).value
        prod = eval_jet(t1, z1, c1, 0, cfg).value * eval_jet(t2, z2, c2, 0, cfg).value
        cases.append({"index": i, "residual": abs(joint - prod)})
    return _report("factorization", 1e-11, cases)


def jacobi_residual(tau, cfg) -> float:
    v = {str(ch): eval_jet(tau, None, ch, 0, cfg).value for ch in enumerate_even(1)}
    return abs(v["0:0"] ** 4 - v["0:1"] ** 4 - v["1:0"] ** 4)


def suite_jacobi(samples, rng, cfg):
    cases = [{"index": i, "residual": jacobi_residual(random_period(rng, 1), cfg)}
             for i in range(samples)]
    return _report("jacobi", 1e-10, cases)


def suite_modular(samples, rng, cfg):
    cases = []
    for g in (1, 2):
        tau = random_period(rng, g)
        for s in gamma48_generators(g):
            ch = enumerate_even(g)[int(rng.integers(len(enumerate_even(g))))]
            cases.append({"g": g, "kind": "generator",
                          "residual": modular_weight_check_squared(s, tau, ch, cfg)})
    for i in range(samples):
        g = 1 + i % 2
        tau = random_period(rng, g)
        s = random_gamma48_word(rng, g, 3)
        ch = enumerate_even(g)[int(rng.integers(len(enumerate_even(g))))]
        cases.append({"g": g, "kind": "word", "index": i,
                      "residual": modular_weight_check_squared(s, tau, ch, cfg)})
    return _report("modular", 1e-9, cases)


def suite_eta_identity(samples, rng, cfg):
    cases = []
    H, dF = np.eye(2), np.array([1.0, 2.0])
    cases.append({"n": 2, "det_B": complex(np.linalg.det(assemble_bordered(H, dF))),
                  "eta": eta_form(H, dF),
                  "residual": abs(np.linalg.det(assemble_bordered(H, dF)) + eta_form(H, dF)) / 5})
    for i in range(samples):
        n = 1 + i % 5
        H = random_symmetric(rng, n)
        dF = rng.normal(size=n) + 1j * rng.normal(size=n)
        det_b = np.linalg.det(assemble_bordered(H, dF))
        e = eta_form(H, dF)
        cases.append({"n": n, "index": i, "residual": abs(det_b + e) / max(abs(e), 1e-300)})
    return _report("eta-identity", 1e-10, cases)


def suite_parity(samples, rng, cfg):
    cases = []
    for i in range(max(samples, 1)):
        g = 1 + i % 2
        tau, z = random_period(rng, g), random_z(rng, g)
        for ch in enumerate_all(g):
            sign = 1 if ch.is_even else -1
            plus = eval_jet(tau, z, ch, 0, cfg).value
            minus = eval_jet(tau, -z, ch, 0, cfg).value
            cases.append({"g": g, "characteristic": str(ch), "kind": "reflection",
                          "residual": abs(minus - sign * plus)})
        for ch in enumerate_odd(g):
            cases.append({"g": g, "characteristic": str(ch), "kind": "odd-constant",
                          "residual": abs(eval_jet(tau, None, ch, 0, cfg).value)})
    return _report("parity", 1e-11, cases)


BOUNDARY_TAU = [[0.1 + 1.0j, 0.3 + 0.2j], [0.3 + 0.2j, -0.1 + 1.2j]]


def suite_boundary(samples, rng, cfg):
    """Boundary matrix for ``g - 1 = 2``: full rank at generic divisor points, deficient at odd half-periods."""
    tau = validate_period(BOUNDARY_TAU)
    cases = []
    generic_full = 0
    for i in range(samples):
        x0 = random_z(rng, 2, 0.5, 0.4)
        x = divisor_point(tau, x0, cfg=cfg)
        rep = boundary_rank(tau, 2 * x, cfg)
        generic_full += rep.numerical_rank == 3
        cases.append({"kind": "generic", "index": i, "rank": rep.numerical_rank,
                      "residual": 0.0 if rep.numerical_rank == 3 else 1.0})
    half_ok = True
    for ch in enumerate_odd(2):
        rep = boundary_rank(tau, 2 * half_period(tau.tau, ch), cfg)
        half_ok &= rep.numerical_rank <= 2
        cases.append({"kind": "odd-half-period", "characteristic": str(ch), "rank": rep.numerical_rank,
                      "residual": 0.0 if rep.numerical_rank <= 2 else 1.0})
    need = math.ceil(0.975 * samples)
    return _report("boundary", 0.5, cases, passed=half_ok and generic_full >= need)


_SUITES = {
    "heat": suite_heat,
    "shift": suite_shift,
    "factorization": suite_factorization,
    "jacobi": suite_jacobi,
    "modular": suite_modular,
    "eta-identity": suite_eta_identity,
    "parity": suite_parity,
    "boundary": suite_boundary,
}


def run_suite(name: str, samples: int = 20, seed: int = 0, cfg: EvalConfig | None = None) -> dict:
    if name not in _SUITES:
        raise KeyError(name)
    rng = np.random.default_rng(seed)
    report = _SUITES[name](samples, rng, cfg or EvalConfig())
    report["samples"] = samples
    report["seed"] = seed
    return report
