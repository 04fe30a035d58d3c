"""Compare the numba Jacobi kernel against the plain-numpy fallback.

Times the raw eigensolver kernel on random Hermitian matrices, then a full
boundary spectral pass per algebra under each backend (the backend switch is
read per call, so flipping MASLOV_KIT_BACKEND inside the process works).

    python3 benchmarks/bench_jacobi.py [--reps 200] [--seed 0]
"""

import argparse
import os
import time

import numpy as np

from maslov_kit import algebra as al
from maslov_kit import boundary as bd
from maslov_kit import jacobi

SIZES = (3, 6, 9, 16)

ALGEBRAS = (
    al.algebra(al.SYM_R, 2),
    al.algebra(al.SYM_R, 3),
    al.algebra(al.HERM_C, 2),
    al.algebra(al.SPIN, 5),
)


def random_hermitian(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (a + a.conj().T)


def time_kernel(kernel, mats, reps):
    # one untimed pass absorbs numba compilation
    work = mats[0].copy()
    kernel(work, np.eye(work.shape[0], dtype=np.complex128),
           jacobi.MAX_SWEEPS, jacobi.OFF_DIAGONAL_TOL)
    start = time.perf_counter()
    for i in range(reps):
        work = mats[i % len(mats)].copy()
        vecs = np.eye(work.shape[0], dtype=np.complex128)
        kernel(work, vecs, jacobi.MAX_SWEEPS, jacobi.OFF_DIAGONAL_TOL)
    return (time.perf_counter() - start) / reps


def check_agreement(rng, n):
    mat = random_hermitian(rng, n)
    work_a, work_b = mat.copy(), mat.copy()
    va = np.eye(n, dtype=np.complex128)
    vb = np.eye(n, dtype=np.complex128)
    jacobi.jacobi_kernel_numba(work_a, va, jacobi.MAX_SWEEPS,
                               jacobi.OFF_DIAGONAL_TOL)
    jacobi.jacobi_kernel_python(work_b, vb, jacobi.MAX_SWEEPS,
                                jacobi.OFF_DIAGONAL_TOL)
    return float(np.max(np.abs(np.sort(np.diag(work_a).real)
                               - np.sort(np.diag(work_b).real))))


def bench_kernels(rng, reps):
    print(f"{'n':>4} {'numba us':>10} {'numpy us':>10} {'speedup':>8} "
          f"{'max |dval|':>11}")
    for n in SIZES:
        mats = [random_hermitian(rng, n) for _ in range(16)]
        t_numba = time_kernel(jacobi.jacobi_kernel_numba, mats, reps)
        t_python = time_kernel(jacobi.jacobi_kernel_python, mats, reps)
        gap = check_agreement(rng, n)
        print(f"{n:>4} {t_numba * 1e6:>10.1f} {t_python * 1e6:>10.1f} "
              f"{t_python / t_numba:>8.1f} {gap:>11.2e}")


def _timed(fn, inputs, reps):
    fn(inputs[0])  # warm
    start = time.perf_counter()
    for i in range(reps):
        fn(inputs[i % len(inputs)])
    return (time.perf_counter() - start) / reps


def bench_spectral(rng, reps):
    """Whole passes: real eigendecomposition and the boundary spectral map.

    The boundary pass spends most of its time reconstructing Peirce frames
    in Python, so its backend gap is far smaller than the raw kernel's."""
    print(f"\n{'pass':>28} {'numba us':>10} {'numpy us':>10} {'speedup':>8}")
    for alg in ALGEBRAS:
        label = f"{alg.kind}-{alg.param}"
        points = [bd.random_shilov(alg, rng) for _ in range(8)]
        elements = [al.random_element(alg, rng, 1.0) for _ in range(8)]
        for name, fn, inputs in (
                ("decompose", al.spectral_decompose_real, elements),
                ("boundary", bd.shilov_spectral, points)):
            times = {}
            for backend in ("numba", "numpy"):
                os.environ["MASLOV_KIT_BACKEND"] = backend
                times[backend] = _timed(fn, inputs, reps)
            os.environ.pop("MASLOV_KIT_BACKEND", None)
            print(f"{label + ' ' + name:>28} {times['numba'] * 1e6:>10.1f} "
                  f"{times['numpy'] * 1e6:>10.1f} "
                  f"{times['numpy'] / times['numba']:>8.1f}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--reps", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = np.random.default_rng(args.seed)
    if jacobi.jacobi_kernel_numba is None:
        raise SystemExit("numba kernel unavailable; nothing to compare")
    print(f"active backend outside this script: {jacobi.active_backend()}")
    bench_kernels(rng, args.reps)
    bench_spectral(rng, args.reps)


if __name__ == "__main__":
    main()
