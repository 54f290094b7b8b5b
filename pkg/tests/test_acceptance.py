"""Acceptance suite: one test per criterion, each printing a pass line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion.  Expected values come from closed forms (ln 1/(1-p), the
(1/2, 1/4, 1/4) spectrum, four landscape maxima) or from independent
oracles (numpy eigendecompositions, central finite differences, brute-force
subset enumeration); tolerances are fixed here, not tuned.
"""

import itertools
import math
import time

import numpy as np
import pytest

import spectral_cone as sc
from spectral_cone import divergence as dv
from spectral_cone import geometries as geo
from spectral_cone import jordan
from spectral_cone.spectral import Ordering, majorizes

LN2 = math.log(2.0)
RINGS = ("real", "complex", "quaternion")


def _report(num, text):
    print(f"\ncriterion {num:>2}: PASS - {text}")


def _random_orthogonal_simplex_pair(space, rng):
    n = space.n
    k = int(rng.integers(1, n))
    left = rng.choice(n, size=k, replace=False)
    right = np.setdiff1d(np.arange(n), left)
    p = np.zeros(n)
    p[left] = rng.dirichlet(np.ones(k)) if k > 1 else 1.0
    q = np.zeros(n)
    q[right] = rng.dirichlet(np.ones(len(right))) if len(right) > 1 else 1.0
    return sc.State(space, p), sc.State(space, q)


def _random_orthogonal_density_pair(space, rng):
    n = space.n
    q, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    k = int(rng.integers(1, n))
    left = q[:, :k]
    right = q[:, k:]

    def block_state(basis):
        m = basis.shape[1]
        w = rng.dirichlet(np.ones(m)) if m > 1 else np.array([1.0])
        mat = (basis * w) @ basis.conj().T
        return space.state_from_matrix(jordan.hermitian_part("complex", mat))

    return block_state(left), block_state(right)


def test_criterion_01_orthogonal_mixture_regret():
    start = time.monotonic()
    ps = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
    rng = np.random.default_rng(101)
    worst = 0.0
    for n in (3, 4, 5, 6):
        space = geo.Simplex(n)
        kl = dv.kl_divergence()
        for _ in range(10):
            s0, s1 = _random_orthogonal_simplex_pair(space, rng)
            assert geo.orthogonal(s0, s1)
            for p in ps:
                m = sc.mix([1 - p, p], [s0, s1])
                worst = max(worst, abs(kl(s0, m) - math.log(1 / (1 - p))))
    for n in (2, 3):
        space = geo.DensityMatrices("complex", n)
        div = dv.matrix_negentropy_divergence(space)
        for _ in range(5):
            s0, s1 = _random_orthogonal_density_pair(space, rng)
            assert geo.orthogonal(s0, s1)
            for p in ps:
                m = sc.mix([1 - p, p], [s0, s1])
                worst = max(worst, abs(div(s0, m) - math.log(1 / (1 - p))))
    elapsed = time.monotonic() - start
    assert worst <= 1e-9, worst
    assert elapsed < 1.0, elapsed
    _report(1, f"D_H(s0, (1-p)s0 + p*s1) = ln 1/(1-p), max err {worst:.2e}, {elapsed:.2f}s")


def _brute_force_square_entropy(x, y):
    verts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    target = np.array([x, y, 1.0])
    best = math.inf
    for size in range(1, 5):
        for idx in itertools.combinations(range(4), size):
            a = np.vstack([verts[list(idx)].T, np.ones(size)])
            if np.linalg.matrix_rank(a) < size:
                continue
            w, *_ = np.linalg.lstsq(a, target, rcond=None)
            if np.min(w) < -1e-12 or np.max(np.abs(a @ w - target)) > 1e-9:
                continue
            w = w[w > 1e-12]
            best = min(best, float(-np.sum(w * np.log(w))))
    return best


def test_criterion_02_square_example():
    square = geo.unit_square()
    point = sc.State(square, [0.5, 0.25])
    dec = geo.decompose(square, point)
    np.testing.assert_allclose(dec.spectrum().weights, [0.5, 0.25, 0.25], atol=1e-12)

    # the maximal spectrum majorizes the spectrum of every other enumerated
    # decomposition; decompositions within the dimension bound realize it
    # exactly
    top = dec.spectrum()
    decs = geo.enumerate_orthogonal_decompositions(square, point)
    assert len(decs) >= 3
    for d in decs:
        assert majorizes(top, d.spectrum()) in (Ordering.DOMINATES, Ordering.EQUAL)
        if d.size <= square.dim + 1:
            np.testing.assert_allclose(d.spectrum().weights, [0.5, 0.25, 0.25], atol=1e-9)

    oracle = _brute_force_square_entropy(0.5, 0.25)
    ours = sc.entropy(square, point)
    assert abs(ours - 1.5 * LN2) <= 1e-9
    assert abs(ours - oracle) <= 1e-9

    land = sc.entropy_landscape(square, 101)
    assert len(land.maxima) == 4
    points = sorted((round(x, 6), round(y, 6)) for x, y, _ in land.maxima)
    assert points == [(0.25, 0.5), (0.5, 0.25), (0.5, 0.75), (0.75, 0.5)]
    _report(2, "spectrum (1/2,1/4,1/4); majorizes all enumerated spectra; "
               f"entropy {ours:.6f} = 1.5 ln 2; 4 strict landscape maxima")


def test_criterion_03_spectrality_verdicts():
    start = time.monotonic()
    for n in (2, 3, 4, 5):
        assert sc.is_spectral(geo.Simplex(n)).spectral
    for d in (2, 3, 4):
        assert sc.is_spectral(geo.Ball(d)).spectral
    report = sc.is_spectral(geo.unit_square(), samples=40, seed=0)
    assert not report.spectral
    np.testing.assert_allclose(report.witness_coords, [0.5, 0.5], atol=1e-12)
    a, b = report.witness_spectra
    assert len(a) != len(b)
    assert tuple(np.round(a, 9)) != tuple(np.round(b, 9))[: len(a)]
    elapsed = time.monotonic() - start
    assert elapsed < 5.0, elapsed
    _report(3, f"simplices and balls spectral, square refuted at the center "
               f"with spectra of lengths {len(a)} and {len(b)}, {elapsed:.2f}s")


def test_criterion_04_caratheodory_bound():
    rng = np.random.default_rng(104)
    pentagon = geo.Polytope(tuple(
        (float(np.cos(np.pi / 2 + 2 * np.pi * k / 5)), float(np.sin(np.pi / 2 + 2 * np.pi * k / 5)))
        for k in range(5)
    ))
    plan = (
        [(geo.Simplex(n), 60) for n in (2, 3, 4, 5)]
        + [(geo.unit_square(), 80), (geo.Polytope(((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))), 80),
           (pentagon, 80)]
        + [(geo.Ball(d), 40) for d in (2, 3, 4)]
        + [(geo.DensityMatrices(ring, n), 40) for ring in RINGS for n in (2, 3)]
        + [(geo.SpinFactor(3), 80), (geo.SpinFactor(8), 80)]
    )
    total = 0
    worst = 0.0
    for space, count in plan:
        for _ in range(count):
            x = geo.random_cone_element(space, rng)
            dec = geo.decompose(space, x)
            assert dec.size <= space.dim + 1
            worst = max(worst, dec.reconstruction_error(x))
            total += 1
    assert total == 1000
    assert worst <= 1e-9
    _report(4, f"1000 elements decompose with n <= d+1, worst reconstruction {worst:.2e}")


def test_criterion_05_locality_contrast():
    # passing side: entropy-generated divergences
    for n in (3, 4, 5, 6):
        report = dv.check_locality(dv.kl_divergence(), geo.Simplex(n), trials=250, tol=1e-8, seed=105)
        assert report["pass"] and report["max_gap"] <= 1e-7, report
        assert report["reversed_max_gap"] <= 1e-7
    for n, trials in ((2, 500), (3, 500)):
        space = geo.DensityMatrices("complex", n)
        report = dv.check_locality(
            dv.matrix_negentropy_divergence(space), space, trials=trials, tol=1e-7, seed=105
        )
        assert report["pass"] and report["max_gap"] <= 1e-7, report
        assert report["reversed_max_gap"] <= 1e-7
    # failing side: witnesses recorded by the checker
    gaps = {}
    for div in (dv.squared_euclidean_divergence(), dv.itakura_saito_divergence()):
        report = dv.check_locality(div, geo.Simplex(3), trials=250, seed=105)
        assert not report["pass"]
        assert report["witness"] is not None
        assert report["max_gap"] >= 1e-3
        gaps[div.name] = report["max_gap"]
    _report(5, f"KL and matrix negentropy local at 1e-7; witness gaps "
               f"squared_euclidean {gaps['squared_euclidean']:.3f}, "
               f"itakura_saito {gaps['itakura_saito']:.3f}")


def test_criterion_06_sufficiency():
    simplex = geo.Simplex(3)
    report = dv.check_sufficiency(dv.kl_divergence(), simplex, trials=300, tol=1e-9, seed=106)
    assert report["pass"] and report["max_gap"] <= 1e-9, report
    assert report["precondition_violations"] == 0
    # sufficiency implies locality across the builtin zoo
    implications = []
    for space in (simplex, geo.DensityMatrices("complex", 2), geo.DensityMatrices("complex", 3)):
        for div in dv.divergence_zoo(space):
            suff = dv.check_sufficiency(div, space, trials=120, seed=106)
            if suff["pass"]:
                loc = dv.check_locality(div, space, trials=120, seed=106)
                assert loc["pass"], (div.name, loc)
                implications.append(div.name)
    assert "kl" in implications and "matrix_negentropy" in implications
    _report(6, f"KL invariant under permutations and reversible merges (gap <= 1e-9); "
               f"sufficiency implies locality for {sorted(set(implications))}")


def test_criterion_07_entropy_constant_recovery():
    worst_c = 0.0
    worst_r = 0.0
    for c in (0.5, 1.0, 3.0):
        div = dv.scaled_divergence(c, dv.kl_divergence())
        fit = dv.fit_entropy_constant(div, geo.Simplex(3), tol=1e-10, samples=250, seed=107)
        worst_c = max(worst_c, abs(fit.constant - c))
        worst_r = max(worst_r, fit.residual)
        assert abs(fit.constant - c) <= 1e-8
        assert fit.residual <= 1e-10
    _report(7, f"c in (0.5, 1, 3) recovered, max error {worst_c:.2e}, max residual {worst_r:.2e}")


def _derivative_sweep_cases(rng):
    for fn in (jordan.SQUARE, jordan.CUBE, jordan.EXP, jordan.NEG_XLOGX):
        for ring in RINGS:
            for n in (2, 3, 4, 5):
                for repeated in (False, True):
                    a = jordan.random_positive_definite(ring, n, rng, floor=0.3)
                    if repeated:
                        dec = jordan.eigen_hermitian(a)
                        vals = [0.5, 1.5] * n
                        a = jordan.HermitianMatrix.zeros(ring, n)
                        for k, e in enumerate(dec.idempotents):
                            a = a + e.scale(vals[k % len(vals)])
                    b = jordan.random_hermitian(ring, n, rng)
                    b = b.scale(1.0 / b.frobenius_norm())
                    yield fn, ring, n, repeated, a, b


def test_criterion_08_divided_difference_lemma():
    start = time.monotonic()
    rng = np.random.default_rng(108)
    worst = 0.0
    count = 0
    h = 1e-5
    for fn, ring, n, repeated, a, b in _derivative_sweep_cases(rng):
        ours = jordan.directional_derivative(fn, a, b).to_complex()
        za, zb = a.to_complex(), b.to_complex()

        def f_np(z):
            w, v = np.linalg.eigh(z)
            return (v * fn.f(w)) @ v.conj().T

        fd = (f_np(za + h * zb) - f_np(za - h * zb)) / (2 * h)
        rel = float(np.max(np.abs(ours - fd))) / max(1e-12, float(np.max(np.abs(ours))))
        worst = max(worst, rel)
        count += 1
        assert rel <= 1e-6, (fn.name, ring, n, repeated, rel)
    elapsed = time.monotonic() - start
    assert elapsed < 10.0, elapsed
    _report(8, f"{count} cases (4 functions x 3 rings x n=2..5 x repeated-eigenvalue flag), "
               f"max relative fd error {worst:.2e}, {elapsed:.2f}s")


def test_criterion_09_trace_lemma():
    rng = np.random.default_rng(109)
    worst = 0.0
    h = 1e-5
    for fn, ring, n, repeated, a, b in _derivative_sweep_cases(rng):
        ours = jordan.trace_derivative(fn, a, b)
        za, zb = a.to_complex(), b.to_complex()
        half = 2.0 if ring == "quaternion" else 1.0

        def tr_f(z):
            return float(np.sum(fn.f(np.linalg.eigvalsh(z)))) / half

        fd = (tr_f(za + h * zb) - tr_f(za - h * zb)) / (2 * h)
        worst = max(worst, abs(fd - ours))
        assert abs(fd - ours) <= 1e-8, (fn.name, ring, n, repeated)
    _report(9, f"d/dt Tr f(A + tB) = Tr(f'(A) B) on the same sweep, max error {worst:.2e}")


def test_criterion_10_strict_concavity():
    rng = np.random.default_rng(110)
    algebras = [(ring, n) for ring in RINGS for n in (2, 3, 4)]
    algebras += [("spin", d) for d in range(2, 9)]
    worst_second = -math.inf
    worst_fd = 0.0
    worst_slack = math.inf
    for algebra in algebras:
        report = jordan.check_concavity(algebra, trials=1000, seed=110)
        assert report["pass"], report
        worst_second = max(worst_second, report["max_second_derivative"])
        worst_fd = max(worst_fd, report["fd_max_rel_err"])
        worst_slack = min(worst_slack, report["min_midpoint_slack"])
    assert worst_second < 0.0
    assert worst_fd <= 1e-5
    assert worst_slack >= -1e-10
    # independent spot check against numpy on each matrix ring
    h = 1e-4
    for ring in RINGS:
        for _ in range(50):
            a = jordan.random_positive_definite(ring, 3, rng)
            b = jordan.random_hermitian(ring, 3, rng)
            b = b.scale(1.0 / b.frobenius_norm())
            d2 = jordan.second_trace_derivative(jordan.NEG_XLOGX, a, b)
            half = 2.0 if ring == "quaternion" else 1.0
            za, zb = a.to_complex(), b.to_complex()

            def tr_f(z):
                w = np.linalg.eigvalsh(z)
                return float(np.sum(-w * np.log(w))) / half

            fd = (tr_f(za + h * zb) - 2 * tr_f(za) + tr_f(za - h * zb)) / h ** 2
            assert d2 < 0.0
            assert abs(fd - d2) / abs(d2) <= 1e-5
    _report(10, f"16 algebras x 1000 trials: max second derivative {worst_second:.3e} < 0, "
                f"fd agreement {worst_fd:.2e}, midpoint slack {worst_slack:.2e}")


def test_criterion_11_entropy_definition_consistency():
    rng = np.random.default_rng(111)
    worst = 0.0
    count = 0
    for ring in RINGS:
        for n in (2, 3):
            space = geo.DensityMatrices(ring, n)
            for _ in range(34):
                if count >= 200:
                    break
                s = geo.random_state(space, rng)
                m = space.state_matrix(s)
                via_matrix = jordan.von_neumann_entropy(m)
                via_decomposition = sc.entropy(space, s)
                worst = max(worst, abs(via_matrix - via_decomposition))
                # numpy oracle
                w = np.linalg.eigvalsh(m.to_complex())
                w = w[w > 1e-12]
                oracle = float(-np.sum(w * np.log(w))) / (2.0 if ring == "quaternion" else 1.0)
                worst = max(worst, abs(via_matrix - oracle))
                count += 1
    assert count >= 200
    assert worst <= 1e-8
    _report(11, f"{count} density matrices: eigenvalue entropy = decomposition entropy, "
                f"max gap {worst:.2e}")
