"""Pointwise indices on the Shilov boundary and its universal cover.

Central object: the relative element w(sigma, tau) = -P(tau^{-1/2}) sigma,
which carries a pair to the model pair (w, -e).  Its eigenangles drive
everything: coincidences (angles at pi) give the transversality index mu,
the sum over the other angles gives the angle functional, and combined with
lift data it yields the Souriau index m, the triple Maslov index, and the
derived inertia / Arnold indices.

All discrete outputs pass an integrality guard and a parity guard
(m = r - mu mod 2, a determinant identity), and the extended (non-transverse)
Souriau index is re-derived through a transverse witness as a runtime
cross-check.
"""

import math
from dataclasses import dataclass

import numpy as np

from .boundary import (ElementC, LiftedPoint, ShilovPoint, as_shilov,
                       cquad_rep_apply, cquad_rep_operator, lift,
                       random_shilov, shilov_spectral, wrap_angle)
from .config import DEFAULT, STRICT, Tolerances, check_mode
from .errors import AmbiguityError, DomainError, IntegralityError

_WITNESS_SEED = 0x6D6B5731
_WITNESS_TRIES = 48


@dataclass(frozen=True)
class IndexReport:
    """An integer index with its pre-rounding value and guard residual."""

    value: int
    raw: float
    residual: float
    witnesses: tuple = ()

    def __int__(self):
        return self.value


def _round_guarded(raw, tol, what):
    value = int(round(raw))
    residual = abs(raw - value)
    if residual > tol.integer:
        raise IntegralityError(
            f"{what} is not an integer: raw={raw!r}, residual={residual:.3e}")
    return value, residual


def relative_element(sigma, tau, tol: Tolerances = DEFAULT, branch=0):
    """w = -P(tau^{-1/2}) sigma, mapping (sigma, tau) to the pair (w, -e).

    With a shared frame the angles of w are theta_j - phi_j + pi (mod 2 pi).
    The square-root branch does not matter: flipping branch members
    multiplies the root by a square root of e sharing tau's frame, and P of
    that factor fixes sigma's frame elements.
    """
    sigma = as_shilov(sigma, tol)
    tau = as_shilov(tau, tol)
    if sigma.alg != tau.alg:
        raise DomainError(f"algebra mismatch: {sigma.alg} vs {tau.alg}")
    us = shilov_spectral(tau, tol)
    alg = tau.alg
    coords = np.zeros(alg.dim, dtype=np.complex128)
    for j, (a, c) in enumerate(zip(us.angles, us.frame)):
        half = -0.5 * a + (math.pi if (branch >> j) & 1 else 0.0)
        coords += np.exp(1j * half) * c.coords
    root_inv = ElementC(alg, coords)
    w = -1.0 * cquad_rep_apply(root_inv, sigma.value)
    return ShilovPoint(w, tol)


def _coincidence_split(angles, tol, mode, what="pair"):
    """Distances to pi decide coincidence vs transverse, with a gray zone.

    Returns a boolean mask of coincidence directions.
    """
    dist = math.pi - np.abs(np.asarray(angles))
    coincident = dist < tol.transverse
    gray = (~coincident) & (dist < tol.gray_factor * tol.transverse)
    if np.any(gray):
        if mode == STRICT:
            raise AmbiguityError(
                f"{what}: eigenangle at distance {float(np.min(dist[gray])):.3e} "
                f"from pi lies in the gray zone "
                f"[{tol.transverse:.1e}, {tol.gray_factor * tol.transverse:.1e}); "
                "refusing to decide transversality in strict mode")
        # permissive: gray angles count as transverse, i.e. keep them
    return coincident


def _pair_angles(sigma, tau, tol, mode):
    """One spectral pass over w(sigma, tau): (angles, coincidence mask)."""
    w = relative_element(sigma, tau, tol)
    us = shilov_spectral(w, tol)
    mask = _coincidence_split(us.angles, tol, mode)
    return us.angles, mask


def transversal(sigma, tau, tol: Tolerances = DEFAULT, mode=STRICT):
    check_mode(mode)
    _, mask = _pair_angles(sigma, tau, tol, mode)
    return not bool(np.any(mask))


def mu(sigma, tau, tol: Tolerances = DEFAULT, mode=STRICT):
    """Transversality index: rank of sigma - tau deficiency, counted as the
    number of relative eigenangles at pi."""
    check_mode(mode)
    _, mask = _pair_angles(sigma, tau, tol, mode)
    return int(np.sum(mask))


def _admissible_coranks(alg):
    """Map corank P(sigma - tau) -> mu.

    On the joint Peirce blocks J_ij the operator P(sum lambda_j c_j) acts
    by lambda_i lambda_j, so with k vanishing eigenvalues the kernel is
    every block touching a vanishing index:
    corank = k + d (k(k-1)/2 + k(r-k)), strictly increasing in k.
    """
    d = alg.mult
    r = alg.rank
    return {k + d * (k * (k - 1) // 2 + k * (r - k)): k for k in range(r + 1)}


def mu_via_corank(sigma, tau, tol: Tolerances = DEFAULT):
    """mu recomputed from the corank of P(sigma - tau) on the
    complexification; errors if the corank fits no admissible k."""
    sigma = as_shilov(sigma, tol)
    tau = as_shilov(tau, tol)
    if sigma.alg != tau.alg:
        raise DomainError(f"algebra mismatch: {sigma.alg} vs {tau.alg}")
    alg = sigma.alg
    diff = ElementC(alg, sigma.value.coords - tau.value.coords)
    op = cquad_rep_operator(diff)
    svals = np.linalg.svd(op, compute_uv=False)
    if svals[0] < 1e-12:
        corank = alg.dim
    else:
        corank = int(np.sum(svals < tol.rank * svals[0]))
    table = _admissible_coranks(alg)
    if corank not in table:
        raise AmbiguityError(
            f"corank {corank} of P(sigma - tau) matches no admissible "
            f"transversality profile for {alg.kind} param={alg.param}")
    return table[corank]


def psi(sigma, tau, tol: Tolerances = DEFAULT, mode=STRICT):
    """Angle functional on transverse pairs: sum of relative eigenangles."""
    check_mode(mode)
    angles, mask = _pair_angles(sigma, tau, tol, mode)
    if np.any(mask):
        raise DomainError("angle functional needs a transverse pair "
                          f"(mu = {int(np.sum(mask))})")
    return float(np.sum(angles))


def psi_hat(sigma, tau, tol: Tolerances = DEFAULT, mode=STRICT):
    """Extension of the angle functional: coincidence directions dropped."""
    check_mode(mode)
    angles, mask = _pair_angles(sigma, tau, tol, mode)
    return float(np.sum(angles[~mask]))


def _souriau_raw(lift1, lift2, tol, mode):
    """Core extended Souriau index; no witness cross-check at this level."""
    if not isinstance(lift1, LiftedPoint) or not isinstance(lift2, LiftedPoint):
        raise DomainError("souriau_m needs LiftedPoint arguments")
    if lift1.alg != lift2.alg:
        raise DomainError(f"algebra mismatch: {lift1.alg} vs {lift2.alg}")
    r = lift1.alg.rank
    angles, mask = _pair_angles(lift1.point, lift2.point, tol, mode)
    m_count = int(np.sum(mask))
    raw = (float(np.sum(angles[~mask])) - r * (lift1.theta - lift2.theta)) / math.pi
    value, residual = _round_guarded(raw, tol, "Souriau index")
    if (value - (r - m_count)) % 2 != 0:
        raise IntegralityError(
            f"Souriau index parity violated: m={value}, r={r}, mu={m_count}")
    return value, raw, residual, m_count


def _witness_stream(alg, skip=0):
    rng = np.random.default_rng(_WITNESS_SEED)
    for _ in range(skip):
        random_shilov(alg, rng)
    for _ in range(_WITNESS_TRIES - skip):
        yield random_shilov(alg, rng)


def _find_witness(p1, p2, tol, mode, skip=0):
    for cand in _witness_stream(p1.alg, skip):
        try:
            if transversal(cand, p1, tol, STRICT) and transversal(cand, p2, tol, STRICT):
                return cand
        except AmbiguityError:
            continue
    raise AmbiguityError("no transverse witness found for the pair")


def souriau_m(lift1, lift2, tol: Tolerances = DEFAULT, mode=STRICT,
              cross_check=True):
    """Souriau index of two lifted boundary points.

    Transverse pairs use the defining formula directly.  Non-transverse
    pairs use the coincidence-dropping extension and, when cross_check is
    on, are re-derived through a random transverse witness; disagreement is
    an error, never silently resolved.
    """
    check_mode(mode)
    value, raw, residual, m_count = _souriau_raw(lift1, lift2, tol, mode)
    witnesses = ()
    if cross_check and m_count > 0:
        wit = _find_witness(lift1.point, lift2.point, tol, mode)
        wit_lift = lift(wit, 0, tol)
        check = _witness_value(lift1, lift2, wit_lift, tol, mode)
        if check != value:
            raise IntegralityError(
                "extended Souriau index failed its witness cross-check: "
                f"direct={value}, witness route={check}")
        witnesses = (wit,)
    return IndexReport(value, raw, residual, witnesses)


def _witness_value(lift1, lift2, wlift, tol, mode):
    iota = _iota_value(lift1.point, lift2.point, wlift.point, tol, mode)
    m1t, _, _, _ = _souriau_raw(lift1, wlift, tol, mode)
    mt2, _, _, _ = _souriau_raw(wlift, lift2, tol, mode)
    return iota + m1t + mt2


def souriau_m_witness(lift1, lift2, wlift, tol: Tolerances = DEFAULT,
                      mode=STRICT):
    """Souriau index through an explicit transverse witness:
    iota(sigma1, sigma2, tau) + m(lift1, tau~) + m(tau~, lift2)."""
    check_mode(mode)
    for side in (lift1, lift2):
        if not transversal(wlift.point, side.point, tol, mode):
            raise DomainError("witness must be transverse to both points")
    value = _witness_value(lift1, lift2, wlift, tol, mode)
    return IndexReport(value, float(value), 0.0, (wlift.point,))


def _iota_value(s1, s2, s3, tol, mode):
    """Integer triple index; fast path when all pairs are transverse."""
    pairs = [(s1, s2), (s2, s3), (s3, s1)]
    data = [_pair_angles(a, b, tol, mode) for a, b in pairs]
    if not any(np.any(mask) for _, mask in data):
        raw = sum(float(np.sum(angles)) for angles, _ in data) / math.pi
        value, _ = _round_guarded(raw, tol, "Maslov index")
        return value
    lifts = [lift(p, 0, tol) for p in (s1, s2, s3)]
    total = 0
    for la, lb in ((lifts[0], lifts[1]), (lifts[1], lifts[2]), (lifts[2], lifts[0])):
        v, _, _, _ = _souriau_raw(la, lb, tol, mode)
        total += v
    return total


def maslov_iota(s1, s2, s3, tol: Tolerances = DEFAULT, mode=STRICT):
    """Triple Maslov index of three boundary points.

    Depends only on the points; computed via the transverse angle-sum
    formula when possible, otherwise as a cyclic sum of extended Souriau
    indices over canonical lifts (the lift choice cancels).
    """
    check_mode(mode)
    s1 = as_shilov(s1, tol)
    s2 = as_shilov(s2, tol)
    s3 = as_shilov(s3, tol)
    value = _iota_value(s1, s2, s3, tol, mode)
    r = s1.alg.rank
    if abs(value) > r:
        raise IntegralityError(f"Maslov index {value} outside [-{r}, {r}]")
    return IndexReport(value, float(value), 0.0)


def ord_triple(alpha, beta, gamma, eps=1e-12):
    """Cyclic order of three unit-circle points given by angles.

    0 when any two coincide; +1 when e^{i beta} lies on the open
    counterclockwise arc from e^{i alpha} to e^{i gamma}; else -1.
    """
    tb = math.fmod(beta - alpha, 2.0 * math.pi) % (2.0 * math.pi)
    tg = math.fmod(gamma - alpha, 2.0 * math.pi) % (2.0 * math.pi)
    if min(tb, 2.0 * math.pi - tb) < eps or min(tg, 2.0 * math.pi - tg) < eps \
            or abs(tb - tg) < eps:
        return 0
    return 1 if tb < tg else -1


def iota_shared_frame(angles1, angles2, angles3, eps=1e-12):
    """Closed-form triple index for three points sharing one frame."""
    return sum(ord_triple(a, b, c, eps)
               for a, b, c in zip(angles1, angles2, angles3))


def m_shared_frame(angles1, theta1, angles2, theta2, eps=1e-9):
    """Closed-form Souriau index for shared-frame lifts.

    Pure angle arithmetic (no spectral pass): sum of theta_j - phi_j + pi
    wrapped to (-pi, pi), dropping coincidence directions.
    """
    a1 = np.asarray(angles1, dtype=float)
    a2 = np.asarray(angles2, dtype=float)
    r = a1.size
    rel = wrap_angle(a1 - a2 + math.pi)
    keep = (math.pi - np.abs(rel)) >= eps
    raw = (float(np.sum(rel[keep])) - r * (theta1 - theta2)) / math.pi
    value = int(round(raw))
    if abs(raw - value) > 1e-6:
        raise IntegralityError(f"shared-frame Souriau oracle non-integer: {raw!r}")
    return value


def inertia_j(s1, s2, s3, tol: Tolerances = DEFAULT, mode=STRICT):
    """Inertia index of a triple:
    (iota + mu(1,2) - mu(1,3) + mu(2,3) + r) / 2."""
    check_mode(mode)
    s1 = as_shilov(s1, tol)
    s2 = as_shilov(s2, tol)
    s3 = as_shilov(s3, tol)
    iota = maslov_iota(s1, s2, s3, tol, mode)
    total = (iota.value + mu(s1, s2, tol, mode) - mu(s1, s3, tol, mode)
             + mu(s2, s3, tol, mode) + s1.alg.rank)
    if total % 2 != 0:
        raise IntegralityError(f"inertia index came out half-integer: {total}/2")
    raw = 0.5 * (iota.raw + total - iota.value)
    return IndexReport(total // 2, raw, abs(raw - total // 2))


def arnold_nu(lift1, lift2, tol: Tolerances = DEFAULT, mode=STRICT):
    """Arnold index (m - mu - r) / 2 of a lifted pair."""
    check_mode(mode)
    m_rep = souriau_m(lift1, lift2, tol, mode)
    mu_val = mu(lift1.point, lift2.point, tol, mode)
    r = lift1.alg.rank
    total = m_rep.value - mu_val - r
    if total % 2 != 0:
        raise IntegralityError(f"Arnold index came out half-integer: {total}/2")
    raw = 0.5 * (m_rep.raw - mu_val - r)
    return IndexReport(total // 2, raw, abs(raw - total // 2), m_rep.witnesses)


def alm_n(lift1, lift2, tol: Tolerances = DEFAULT, mode=STRICT):
    """Arnold-Leray-Maslov index n = nu + mu + r = (m + mu + r) / 2."""
    check_mode(mode)
    m_rep = souriau_m(lift1, lift2, tol, mode)
    mu_val = mu(lift1.point, lift2.point, tol, mode)
    r = lift1.alg.rank
    total = m_rep.value + mu_val + r
    if total % 2 != 0:
        raise IntegralityError(f"ALM index came out half-integer: {total}/2")
    raw = 0.5 * (m_rep.raw + mu_val + r)
    return IndexReport(total // 2, raw, abs(raw - total // 2), m_rep.witnesses)
