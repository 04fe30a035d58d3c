"""Euclidean Jordan algebras: real symmetric matrices, complex Hermitian
matrices, and spin factors.

Every algebra is handled through a fixed real coordinate basis so that
elements are plain float vectors:

* ``sym-r`` (param m): diagonal units E_ii first, then (E_ij + E_ji)/sqrt(2)
  for i < j in row-major order.
* ``herm-c`` (param m): diagonal units, then (E_ij + E_ji)/sqrt(2), then
  i(E_ij - E_ji)/sqrt(2), each block row-major.
* ``spin`` (param q >= 3): coordinates (x0, xvec) with product
  (x0*y0 + xvec.yvec, x0*yvec + y0*xvec).

The trace form makes the matrix-kind bases orthonormal; for the spin factor
the Gram matrix of this basis is 2*I, which the inner product accounts for.

The same coordinate formulas applied to complex vectors realize the
complexification; the private ``_mul``/``_lmul``/``_det`` helpers are dtype
generic for that reason and the boundary module reuses them.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import jacobi
from .config import DEFAULT, Tolerances
from .errors import DomainError

SYM_R = "sym-r"
HERM_C = "herm-c"
SPIN = "spin"
KINDS = (SYM_R, HERM_C, SPIN)

_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class AlgebraDescriptor:
    """A simple Euclidean Jordan algebra, identified by kind and size."""

    kind: str
    param: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown algebra kind {self.kind!r}")
        if self.kind == SPIN:
            if self.param < 3:
                raise DomainError("spin factor needs param >= 3")
        elif self.param < 1:
            raise DomainError(f"{self.kind} needs param >= 1")

    @property
    def rank(self):
        return 2 if self.kind == SPIN else self.param

    @property
    def dim(self):
        if self.kind == SYM_R:
            return self.param * (self.param + 1) // 2
        if self.kind == HERM_C:
            return self.param * self.param
        return self.param

    @property
    def mult(self):
        """Dimension of each off-diagonal Peirce space J_ij."""
        if self.kind == SYM_R:
            return 1
        if self.kind == HERM_C:
            return 2
        return self.param - 2

    @property
    def gram_weight(self):
        """Squared norm of each coordinate basis vector under the trace form."""
        return 2.0 if self.kind == SPIN else 1.0

    def __repr__(self):
        return f"AlgebraDescriptor({self.kind!r}, {self.param})"


def algebra(kind, param):
    return AlgebraDescriptor(kind, int(param))


@lru_cache(maxsize=None)
def _matrix_index(alg):
    """(diag, upper-row, upper-col) index arrays for the matrix kinds."""
    m = alg.param
    oi, oj = np.triu_indices(m, 1)
    return np.arange(m), oi, oj


@lru_cache(maxsize=None)
def _basis_tensor(alg):
    """Stack of basis matrices, shape (dim, m, m)."""
    m = alg.param
    eye = np.eye(alg.dim)
    return np.stack([_to_matrix(alg, eye[k]) for k in range(alg.dim)])


def _to_matrix(alg, coords):
    """Coordinates -> matrix for the matrix kinds; supports batches."""
    m = alg.param
    di, oi, oj = _matrix_index(alg)
    lead = coords.shape[:-1]
    if alg.kind == SYM_R:
        out = np.zeros(lead + (m, m), dtype=coords.dtype)
        out[..., di, di] = coords[..., :m]
        off = coords[..., m:] / _SQRT2
        out[..., oi, oj] = off
        out[..., oj, oi] = off
        return out
    if alg.kind == HERM_C:
        out = np.zeros(lead + (m, m), dtype=np.complex128)
        out[..., di, di] = coords[..., :m]
        noff = oi.size
        re = coords[..., m:m + noff]
        im = coords[..., m + noff:]
        out[..., oi, oj] = (re + 1j * im) / _SQRT2
        out[..., oj, oi] = (re - 1j * im) / _SQRT2
        return out
    raise DomainError("spin factor has no matrix realization")


def _from_matrix(alg, mat):
    """Matrix -> coordinates, the inverse of _to_matrix; supports batches.

    For herm-c the map is complex linear on all of M(m, C); real Hermitian
    callers take the real part themselves.
    """
    di, oi, oj = _matrix_index(alg)
    if alg.kind == SYM_R:
        diag = mat[..., di, di]
        off = (mat[..., oi, oj] + mat[..., oj, oi]) / _SQRT2
        return np.concatenate([diag, off], axis=-1)
    if alg.kind == HERM_C:
        diag = mat[..., di, di]
        re = (mat[..., oi, oj] + mat[..., oj, oi]) / _SQRT2
        im = (mat[..., oi, oj] - mat[..., oj, oi]) * (-1j / _SQRT2)
        return np.concatenate([diag, re, im], axis=-1)
    raise DomainError("spin factor has no matrix realization")


def _mul(alg, a, b):
    """Jordan product on raw coordinate vectors, dtype generic."""
    if alg.kind == SPIN:
        out = np.empty_like(a + b)
        out[..., 0] = a[..., 0] * b[..., 0] + np.sum(a[..., 1:] * b[..., 1:], axis=-1)
        out[..., 1:] = a[..., :1] * b[..., 1:] + b[..., :1] * a[..., 1:]
        return out
    x = _to_matrix(alg, a)
    y = _to_matrix(alg, b)
    prod = 0.5 * (x @ y + y @ x)
    out = _from_matrix(alg, prod)
    if alg.kind == HERM_C and not np.iscomplexobj(a) and not np.iscomplexobj(b):
        return out.real.copy()
    return out


def _lmul(alg, coords):
    """Matrix of left multiplication on raw coordinates, dtype generic."""
    if alg.kind == SPIN:
        n = alg.dim
        out = np.zeros((n, n), dtype=coords.dtype)
        out[0, 0] = coords[0]
        out[0, 1:] = coords[1:]
        out[1:, 0] = coords[1:]
        out[1:, 1:] = coords[0] * np.eye(n - 1)
        return out
    x = _to_matrix(alg, coords)
    basis = _basis_tensor(alg)
    prod = 0.5 * (x @ basis + basis @ x)
    return _from_matrix(alg, prod).T


def _det(alg, coords):
    """Determinant polynomial on raw coordinates, dtype generic.

    On the spin factor this is the bilinear form x0^2 - xvec.xvec (no
    conjugation), which is what the complexification needs.
    """
    if alg.kind == SPIN:
        return coords[0] ** 2 - np.sum(coords[1:] * coords[1:])
    return np.linalg.det(_to_matrix(alg, coords))


def _trace(alg, coords):
    if alg.kind == SPIN:
        return 2.0 * coords[0]
    return np.sum(coords[:alg.param], axis=-1)


class ElementJ:
    """Element of a Euclidean Jordan algebra: an algebra tag plus real coords.

    Immutable; the coordinate array is marked read-only.
    """

    __slots__ = ("alg", "coords")

    def __init__(self, alg, coords):
        arr = np.asarray(coords)
        if np.iscomplexobj(arr):
            raise DomainError("ElementJ coordinates must be real")
        arr = np.array(arr, dtype=float)
        if arr.shape != (alg.dim,):
            raise DomainError(
                f"expected {alg.dim} coordinates for {alg.kind} "
                f"param={alg.param}, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DomainError("coordinates must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "alg", alg)
        object.__setattr__(self, "coords", arr)

    def __setattr__(self, name, value):
        raise AttributeError("ElementJ is immutable")

    def __add__(self, other):
        _same_algebra(self, other)
        return ElementJ(self.alg, self.coords + other.coords)

    def __sub__(self, other):
        _same_algebra(self, other)
        return ElementJ(self.alg, self.coords - other.coords)

    def __neg__(self):
        return ElementJ(self.alg, -self.coords)

    def __mul__(self, scalar):
        return ElementJ(self.alg, self.coords * float(scalar))

    __rmul__ = __mul__

    def __repr__(self):
        return f"ElementJ({self.alg.kind}:{self.alg.param}, {np.array2string(self.coords, precision=6)})"


def _same_algebra(x, y):
    if x.alg != y.alg:
        raise DomainError(f"algebra mismatch: {x.alg} vs {y.alg}")


def element(alg, coords):
    return ElementJ(alg, coords)


def zero(alg):
    return ElementJ(alg, np.zeros(alg.dim))


def unit(alg):
    """The Jordan unit e."""
    c = np.zeros(alg.dim)
    if alg.kind == SPIN:
        c[0] = 1.0
    else:
        c[:alg.param] = 1.0
    return ElementJ(alg, c)


def jmul(x, y):
    """Jordan product x o y."""
    _same_algebra(x, y)
    return ElementJ(x.alg, _mul(x.alg, x.coords, y.coords))


def inner(x, y):
    """Trace form <x|y> = trace(x o y)."""
    _same_algebra(x, y)
    return x.alg.gram_weight * float(np.dot(x.coords, y.coords))


def norm(x):
    return np.sqrt(inner(x, x))


def trace(x):
    return float(_trace(x.alg, x.coords))


def det_real(x):
    d = _det(x.alg, x.coords)
    return float(np.real(d))


def lmul_operator(x):
    """L(x) as a real symmetric matrix acting on coordinates."""
    out = _lmul(x.alg, x.coords)
    if np.iscomplexobj(out):
        out = out.real.copy()
    return out


def quad_rep_apply(x, y):
    """Quadratic representation P(x)y = 2 x o (x o y) - (x o x) o y."""
    _same_algebra(x, y)
    a, b = x.coords, y.coords
    alg = x.alg
    out = 2.0 * _mul(alg, a, _mul(alg, a, b)) - _mul(alg, _mul(alg, a, a), b)
    return ElementJ(alg, out)


def quad_rep_operator(x):
    """P(x) = 2 L(x)^2 - L(x o x) as a matrix on coordinates."""
    lx = lmul_operator(x)
    lxx = lmul_operator(jmul(x, x))
    return 2.0 * (lx @ lx) - lxx


@dataclass(frozen=True)
class Spectrum:
    """Spectral decomposition x = sum_j values[j] * frame[j].

    values are descending; frame is a complete orthogonal system of
    primitive idempotents (a Jordan frame).
    """

    values: np.ndarray
    frame: tuple


def _spin_spectral(alg, coords):
    x0 = coords[0]
    vec = coords[1:]
    nv = float(np.linalg.norm(vec))
    if nv > 0.0:
        u = vec / nv
    else:
        u = np.zeros(alg.dim - 1)
        u[0] = 1.0
    cplus = np.concatenate([[0.5], 0.5 * u])
    cminus = np.concatenate([[0.5], -0.5 * u])
    vals = np.array([x0 + nv, x0 - nv])
    return vals, (ElementJ(alg, cplus), ElementJ(alg, cminus))


def spectral_decompose_real(x, tol: Tolerances = DEFAULT):
    """Eigenvalues (descending) and a Jordan frame diagonalizing x."""
    alg = x.alg
    if alg.kind == SPIN:
        vals, frame = _spin_spectral(alg, x.coords)
        return Spectrum(vals, frame)
    mat = _to_matrix(alg, x.coords)
    if alg.kind == SYM_R:
        vals, vecs = jacobi.eigh_real(mat)
        outers = vecs.T[:, :, None] * vecs.T[:, None, :]
        frame_coords = _from_matrix(alg, outers)
    else:
        vals, vecs = jacobi.eigh(mat)
        cols = vecs.T
        outers = cols[:, :, None] * np.conj(cols[:, None, :])
        frame_coords = _from_matrix(alg, outers).real
    frame = tuple(ElementJ(alg, frame_coords[j]) for j in range(alg.rank))
    recon = frame_coords.T @ vals
    if np.linalg.norm(recon - x.coords) > tol.spectral * (1.0 + np.linalg.norm(x.coords)):
        raise DomainError("spectral decomposition failed to reconstruct input")
    return Spectrum(vals, frame)


def rank_real(x, tol: Tolerances = DEFAULT):
    """Number of eigenvalues that are nonzero at the relative rank cutoff."""
    vals = spectral_decompose_real(x, tol).values
    top = np.max(np.abs(vals)) if vals.size else 0.0
    if top == 0.0:
        return 0
    return int(np.sum(np.abs(vals) > tol.rank * top))


def in_cone(x, tol: Tolerances = DEFAULT):
    """True when x lies in the open symmetric cone (all eigenvalues positive)."""
    vals = spectral_decompose_real(x, tol).values
    top = np.max(np.abs(vals)) if vals.size else 0.0
    return bool(np.all(vals > tol.rank * top))


def inverse_real(x, tol: Tolerances = DEFAULT):
    """Jordan inverse of an invertible element."""
    spec = spectral_decompose_real(x, tol)
    top = np.max(np.abs(spec.values)) if spec.values.size else 0.0
    if top == 0.0 or np.min(np.abs(spec.values)) <= tol.rank * top:
        raise DomainError("element is singular, cannot invert")
    out = np.zeros(x.alg.dim)
    for lam, c in zip(spec.values, spec.frame):
        out += c.coords / lam
    return ElementJ(x.alg, out)


@dataclass(frozen=True)
class PeirceSplit:
    """Decomposition x = x1 + xhalf + x0 along an idempotent's eigenspaces."""

    x1: ElementJ
    xhalf: ElementJ
    x0: ElementJ


def _check_idempotent(c, tol):
    resid = norm(jmul(c, c) - c)
    if resid > tol.spectral * (1.0 + norm(c)) ** 2:
        raise DomainError(f"not an idempotent (residual {resid:.2e})")


def peirce_decompose(c, x, tol: Tolerances = DEFAULT):
    """Split x along the 1, 1/2, 0 eigenspaces of L(c).

    The three projections are the exact polynomials 2L^2 - L, 4L - 4L^2 and
    2L^2 - 3L + I in L = L(c); they sum to the identity for any c, and are
    the Peirce projections exactly when c is idempotent.
    """
    _same_algebra(c, x)
    _check_idempotent(c, tol)
    lmat = lmul_operator(c)
    v = x.coords
    lv = lmat @ v
    llv = lmat @ lv
    x1 = 2.0 * llv - lv
    xhalf = 4.0 * lv - 4.0 * llv
    x0 = v - x1 - xhalf
    return PeirceSplit(ElementJ(x.alg, x1), ElementJ(x.alg, xhalf),
                       ElementJ(x.alg, x0))


def frobenius_apply(c, z, x, tol: Tolerances = DEFAULT):
    """Frobenius transformation exp(2 z box c) applied to x.

    Requires z in the half-eigenspace J(c, 1/2); the exponential series then
    terminates and the closed form below is exact.
    """
    _same_algebra(c, z)
    _same_algebra(c, x)
    _check_idempotent(c, tol)
    zsplit = peirce_decompose(c, z, tol)
    stray = norm(zsplit.x1) + norm(zsplit.x0)
    if stray > tol.spectral * (1.0 + norm(z)):
        raise DomainError("z is not in the half-eigenspace of c")
    xs = peirce_decompose(c, x, tol)
    y1 = xs.x1
    yhalf = 2.0 * jmul(z, xs.x1) + xs.xhalf
    inner_part = jmul(z, jmul(z, xs.x1)) + jmul(z, xs.xhalf)
    y0 = 2.0 * jmul(unit(c.alg) - c, inner_part) + xs.x0
    return y1 + yhalf + y0


def standard_frame(alg):
    """The coordinate Jordan frame (diagonal units / spin pair)."""
    if alg.kind == SPIN:
        vals, frame = _spin_spectral(alg, unit(alg).coords)
        return list(frame)
    out = []
    for j in range(alg.param):
        c = np.zeros(alg.dim)
        c[j] = 1.0
        out.append(ElementJ(alg, c))
    return out


def epq(alg, p, q, frame=None):
    """Signature element e_{p,q}: +1 on the first p frame idempotents, -1 on
    the next q, and 0 on the rest."""
    r = alg.rank
    if p < 0 or q < 0 or p + q > r:
        raise DomainError(f"need p, q >= 0 and p + q <= rank ({r})")
    if frame is None:
        frame = standard_frame(alg)
    out = zero(alg)
    for j in range(p):
        out = out + frame[j]
    for j in range(p, p + q):
        out = out - frame[j]
    return out


def _rng(seed_or_rng):
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def random_element(alg, rng, scale=1.0):
    """Gaussian element: iid normal coordinates times scale."""
    rng = _rng(rng)
    return ElementJ(alg, scale * rng.standard_normal(alg.dim))


def random_frame(alg, rng):
    """Uniformly random Jordan frame.

    Matrix kinds: conjugate the diagonal frame by a Haar-ish orthogonal or
    unitary matrix (QR of a Gaussian).  Spin: random unit vector.
    """
    rng = _rng(rng)
    if alg.kind == SPIN:
        vec = rng.standard_normal(alg.dim - 1)
        vec /= np.linalg.norm(vec)
        up = np.concatenate([[0.5], 0.5 * vec])
        dn = np.concatenate([[0.5], -0.5 * vec])
        return [ElementJ(alg, up), ElementJ(alg, dn)]
    m = alg.param
    if alg.kind == SYM_R:
        g = rng.standard_normal((m, m))
    else:
        g = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    qmat, _ = np.linalg.qr(g)
    out = []
    for j in range(m):
        col = qmat[:, j]
        outer = col[:, None] * np.conj(col[None, :])
        coords = _from_matrix(alg, outer)
        out.append(ElementJ(alg, coords.real if np.iscomplexobj(coords) else coords))
    return out


def to_matrix(x):
    """Matrix realization of a matrix-kind element (test and oracle helper)."""
    return _to_matrix(x.alg, x.coords)


def from_matrix(alg, mat):
    """Inverse of to_matrix for the matrix kinds."""
    coords = _from_matrix(alg, np.asarray(mat))
    if np.iscomplexobj(coords):
        resid = float(np.max(np.abs(coords.imag)))
        if resid > 1e-9 * (1.0 + float(np.max(np.abs(coords.real)))):
            raise DomainError("matrix is not Hermitian")
        coords = coords.real
    return ElementJ(alg, coords)
