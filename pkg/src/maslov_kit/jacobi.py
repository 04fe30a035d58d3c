"""Dense Hermitian eigensolver: cyclic Jacobi with unitary plane rotations.

One kernel covers both real-symmetric and complex-Hermitian input (a real
matrix never acquires imaginary parts because every rotation phase is then
+-1).  The kernel is compiled with numba when available; setting
MASLOV_KIT_BACKEND=numpy forces the plain-Python fallback.  Both variants are
kept importable so benchmarks can compare them directly.
"""

import os

import numpy as np

from .errors import AmbiguityError

OFF_DIAGONAL_TOL = 1e-13   # relative to the Frobenius norm
MAX_SWEEPS = 100


def _jacobi_cyclic(a, v, max_sweeps, rel_tol):
    """In-place cyclic Jacobi on Hermitian a, accumulating rotations into v.

    Returns the number of sweeps used, or -1 if the off-diagonal mass never
    dropped below rel_tol * ||a||_F.
    """
    n = a.shape[0]
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += abs(a[i, j]) ** 2
    fro = np.sqrt(fro)
    if fro == 0.0:
        return 0
    thresh = rel_tol * fro
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += 2.0 * abs(a[i, j]) ** 2
        if np.sqrt(off) <= thresh:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                mag = abs(a[p, q])
                if mag == 0.0:
                    continue
                phase = a[p, q] / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                sp = t * c * phase
                spc = np.conj(sp)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - spc * akq
                    a[k, q] = sp * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - sp * aqk
                    a[q, k] = spc * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - spc * vkq
                    v[k, q] = sp * vkp + c * vkq
    return -1


jacobi_kernel_python = _jacobi_cyclic

try:
    import numba

    jacobi_kernel_numba = numba.njit(cache=True, nogil=True)(_jacobi_cyclic)
except ImportError:              # pragma: no cover - numba is a hard dep
    jacobi_kernel_numba = None


def active_backend():
    if jacobi_kernel_numba is None:
        return "numpy"
    if os.environ.get("MASLOV_KIT_BACKEND", "numba").lower() == "numpy":
        return "numpy"
    return "numba"


def _kernel():
    if active_backend() == "numba":
        return jacobi_kernel_numba
    return jacobi_kernel_python


def eigh(a):
    """Eigenvalues (descending) and unitary eigenvectors of a Hermitian matrix."""
    a = np.asarray(a, dtype=np.complex128)
    work = 0.5 * (a + a.conj().T)        # enforce exact Hermiticity
    n = work.shape[0]
    vecs = np.eye(n, dtype=np.complex128)
    sweeps = _kernel()(work, vecs, MAX_SWEEPS, OFF_DIAGONAL_TOL)
    if sweeps < 0:
        raise AmbiguityError("Jacobi eigensolver did not converge "
                             f"within {MAX_SWEEPS} sweeps (n={n})")
    vals = np.diag(work).real.copy()
    order = np.argsort(-vals, kind="stable")
    return vals[order], vecs[:, order]


def eigh_real(a):
    """eigh for a real symmetric matrix; eigenvectors come back real."""
    vals, vecs = eigh(np.asarray(a, dtype=float))
    return vals, vecs.real.copy()


def singular_values(a):
    """Singular values (descending) via the Gram matrix and the Jacobi kernel."""
    a = np.asarray(a, dtype=np.complex128)
    gram = a.conj().T @ a
    vals, _ = eigh(gram)
    return np.sqrt(np.clip(vals, 0.0, None))


def expm_i_symmetric(s):
    """exp(i*S) for real symmetric S, as a unitary complex matrix."""
    vals, vecs = eigh_real(s)
    return (vecs * np.exp(1j * vals)) @ vecs.T


def expm_symmetric(s):
    """exp(S) for real symmetric S (positive definite result)."""
    vals, vecs = eigh_real(s)
    return (vecs * np.exp(vals)) @ vecs.T


def expm_antisymmetric(k):
    """exp(K) for real antisymmetric K, as a real orthogonal matrix.

    i*K is Hermitian, so exp(K) = exp(-i*(iK)) comes from one Hermitian
    eigendecomposition.
    """
    k = np.asarray(k, dtype=float)
    vals, vecs = eigh(1j * k)
    out = (vecs * np.exp(-1j * vals)) @ vecs.conj().T
    drift = np.max(np.abs(out.imag)) if out.size else 0.0
    if drift > 1e-10 * (1.0 + np.max(np.abs(out.real))):
        raise AmbiguityError("exp of antisymmetric matrix drifted off the reals")
    return out.real.copy()
