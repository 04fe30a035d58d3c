"""Path indices and the generalized rotation number.

Paths on the Shilov boundary are sampled; the eigenangle strands of the
relative element against a reference are matched between samples (minimal
total angular displacement) and unwrapped, so crossings of the Maslov cycle
become passages of a strand through pi + 2 pi Z.  The Arnold number and the
pair-path index are signed crossing counts; the translation number and the
rotation number come from iterating a group word on the universal cover.
"""

import csv
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import boundary as bd
from .algebra import standard_frame
from .config import DEFAULT, STRICT, Tolerances, check_mode
from .errors import AmbiguityError, DomainError
from .indices import relative_element, souriau_m

TWO_PI = 2.0 * math.pi
STRAND_STEP_LIMIT = math.pi / 4
REFINE_DEPTH = 12


@dataclass(frozen=True)
class CrossingRecord:
    """A strand passing the counting level: +1 increasing, -1 decreasing."""

    t: float
    strand: int
    sign: int


class BoundaryPath:
    """Sampled path on S over t in [0, 1].

    `samples` is a list of (t, ShilovPoint) with t strictly increasing from
    0 to 1.  A `sampler` callback t -> ShilovPoint allows adaptive
    refinement when strands move too fast between stored samples.
    """

    __slots__ = ("samples", "sampler")

    def __init__(self, samples, sampler=None):
        samples = [(float(t), bd.as_shilov(p)) for t, p in samples]
        if len(samples) < 2:
            raise DomainError("a path needs at least two samples")
        ts = np.array([t for t, _ in samples])
        if not (abs(ts[0]) < 1e-12 and abs(ts[-1] - 1.0) < 1e-12):
            raise DomainError("path parameter must run from 0 to 1")
        if np.any(np.diff(ts) <= 0):
            raise DomainError("path sample times must be strictly increasing")
        alg = samples[0][1].alg
        for _, p in samples:
            if p.alg != alg:
                raise DomainError("all path samples must share one algebra")
        object.__setattr__(self, "samples", tuple(samples))
        object.__setattr__(self, "sampler", sampler)

    def __setattr__(self, name, value):
        raise AttributeError("BoundaryPath is immutable")

    @property
    def alg(self):
        return self.samples[0][1].alg

    @property
    def times(self):
        return np.array([t for t, _ in self.samples])

    @classmethod
    def from_function(cls, fn, n=65):
        ts = np.linspace(0.0, 1.0, n)
        return cls([(t, fn(t)) for t in ts], sampler=fn)


def constant_path(sigma, n=2):
    sigma = bd.as_shilov(sigma)
    return BoundaryPath.from_function(lambda t: sigma, n=n)


@dataclass(frozen=True)
class AngleFlow:
    """Continuous eigenangle strands: strands[i, j] at time t[i]."""

    t: np.ndarray
    strands: np.ndarray


def _point_source(obj):
    """(grid dict or None, sampler or None) for a path or fixed point."""
    if isinstance(obj, BoundaryPath):
        return dict(obj.samples), obj.sampler, obj.alg
    sigma = bd.as_shilov(obj)
    return None, (lambda t: sigma), sigma.alg


def _match_step(prev, raw):
    """Continue `prev` by the permutation of `raw` of minimal total motion.

    Returns (continued angles, max single-strand motion).
    """
    r = prev.size
    best = None
    for perm in itertools.permutations(range(r)):
        moves = bd.wrap_angle(raw[list(perm)] - bd.wrap_angle(prev))
        cost = float(np.sum(np.abs(moves)))
        if best is None or cost < best[0]:
            best = (cost, prev + moves, float(np.max(np.abs(moves))))
    return best[1], best[2]


def eigenangle_flow(path, reference, tol: Tolerances = DEFAULT, mode=STRICT):
    """Angle strands of w(t) = relative_element(path(t), reference(t)).

    reference may be a fixed ShilovPoint or a second BoundaryPath; grids
    are merged, resampling through the paths' samplers where needed.
    """
    check_mode(mode)
    main_grid, main_fn, alg = _point_source(path)
    ref_grid, ref_fn, ref_alg = _point_source(reference)
    if alg != ref_alg:
        raise DomainError(f"algebra mismatch: {alg} vs {ref_alg}")
    if main_grid is None:
        raise DomainError("first argument must be a BoundaryPath")

    ts = sorted(main_grid)
    if ref_grid is not None:
        ts = sorted(set(ts) | set(ref_grid))

    def value_at(grid, fn, t):
        if grid is not None and t in grid:
            return grid[t]
        if fn is None:
            raise DomainError(
                "paths have different sample grids and no sampler to merge them")
        return bd.as_shilov(fn(t))

    def raw_at(t):
        w = relative_element(value_at(main_grid, main_fn, t),
                             value_at(ref_grid, ref_fn, t), tol)
        return bd.shilov_spectral(w, tol).angles

    out_t = [ts[0]]
    out_a = [np.array(raw_at(ts[0]))]

    def advance(t0, a0, t1, raw1, depth):
        cand, move = _match_step(a0, raw1)
        if move < STRAND_STEP_LIMIT:
            out_t.append(t1)
            out_a.append(cand)
            return cand
        if depth == 0:
            raise AmbiguityError(
                f"strand matching ambiguous near t={t1:.6g} even at maximum "
                "refinement")
        if (main_fn is None) or (ref_grid is not None and ref_fn is None):
            raise AmbiguityError(
                f"strands move {move:.3f} rad between t={t0:.6g} and "
                f"t={t1:.6g} (limit pi/4) and no sampler is available to refine")
        tm = 0.5 * (t0 + t1)
        am = advance(t0, a0, tm, raw_at(tm), depth - 1)
        return advance(tm, am, t1, raw1, depth - 1)

    cur = out_a[0]
    for t0, t1 in zip(ts, ts[1:]):
        cur = advance(t0, cur, t1, raw_at(t1), REFINE_DEPTH)
    return AngleFlow(np.array(out_t), np.vstack(out_a))


def crossing_records(flow, level=math.pi):
    """Signed passages of each strand through level + 2 pi Z."""
    records = []
    t = flow.t
    for j in range(flow.strands.shape[1]):
        a = flow.strands[:, j]
        floors = np.floor((a - level) / TWO_PI)
        for i in range(len(t) - 1):
            jump = int(floors[i + 1] - floors[i])
            if jump == 0:
                continue
            sign = 1 if jump > 0 else -1
            lo, hi = sorted((floors[i], floors[i + 1]))
            for step in range(abs(jump)):
                line = level + TWO_PI * (lo + 1 + step)
                frac = (line - a[i]) / (a[i + 1] - a[i])
                records.append(CrossingRecord(
                    float(t[i] + frac * (t[i + 1] - t[i])), j, sign))
    records.sort(key=lambda rec: (rec.t, rec.strand))
    return records


def _circle_dist(a, level):
    return np.abs(bd.wrap_angle(a - level))


def _tangency_times(flow, level, tol):
    """Samples sitting on the counting level with a vanishing slope."""
    t, a = flow.t, flow.strands
    hits = []
    for j in range(a.shape[1]):
        near = _circle_dist(a[:, j], level) < tol.transverse
        for i in np.nonzero(near)[0]:
            lo = max(i - 1, 0)
            hi = min(i + 1, len(t) - 1)
            slope = abs(a[hi, j] - a[lo, j]) / (t[hi] - t[lo])
            if slope < tol.slope:
                hits.append((float(t[i]), j))
    return hits


def _counted_level(flow, level, tol, mode, margin, what):
    """Pick a counting level, handling tangencies per the mode policy."""
    for attempt, lv in enumerate((level, level - margin / 2,
                                  level - margin / 6, level - margin / 18)):
        tangent = _tangency_times(flow, lv, tol)
        if not tangent:
            return lv
        if mode == STRICT or attempt == 3:
            t0, strand = tangent[0]
            raise AmbiguityError(
                f"{what}: strand {strand} is tangent to the counting level "
                f"near t={t0:.6g}; rerun in permissive mode or refine the path")
    raise AmbiguityError(f"{what}: tangency persists under perturbation")


def arnold_number(path, sigma0, tol: Tolerances = DEFAULT, mode=STRICT):
    """Signed count of eigenangle strands crossing pi along the path,
    relative to the vertex sigma0.  Endpoints must be transverse."""
    check_mode(mode)
    flow = eigenangle_flow(path, sigma0, tol, mode)
    end_dist = min(float(np.min(_circle_dist(flow.strands[0], math.pi))),
                   float(np.min(_circle_dist(flow.strands[-1], math.pi))))
    if end_dist < tol.transverse:
        raise DomainError(
            "path endpoint lies on the Maslov cycle of the reference point "
            f"(strand distance {end_dist:.3e} to pi)")
    level = _counted_level(flow, math.pi, tol, mode, end_dist, "arnold_number")
    return sum(rec.sign for rec in crossing_records(flow, level))


def pair_path_index(path1, path2, tol: Tolerances = DEFAULT, mode=STRICT):
    """Signed crossing count for the pair (sigma1(t), sigma2(t)).

    Proper pairs (endpoints transverse) are counted at level pi; otherwise
    the second component is rotated by e^{i theta}, theta half the smallest
    nonvanishing endpoint angle distance, per the perturbation step.
    """
    check_mode(mode)
    flow = eigenangle_flow(path2, path1, tol, mode)
    end_angles = np.concatenate([flow.strands[0], flow.strands[-1]])
    dists = _circle_dist(end_angles, math.pi)
    if float(np.min(dists)) >= tol.transverse:
        level = _counted_level(flow, math.pi, tol, mode,
                               float(np.min(dists)), "pair_path_index")
    else:
        admissible = dists[dists >= tol.transverse]
        if admissible.size == 0:
            raise DomainError(
                "pair path is fully degenerate at an endpoint "
                "(sigma1 = sigma2); no admissible perturbation")
        theta = 0.5 * float(np.min(admissible))
        level = _counted_level(flow, math.pi - theta, tol, mode,
                               theta, "pair_path_index")
    return sum(rec.sign for rec in crossing_records(flow, level))


def write_strand_csv(flow, records, fileobj):
    """Table of strands and crossings: t, strand_id, angle, crossing_flag,
    sign.  Sample rows carry flag 0; crossing rows carry the interpolated t
    and the crossed level as angle."""
    writer = csv.writer(fileobj)
    writer.writerow(["t", "strand_id", "angle", "crossing_flag", "sign"])
    rows = []
    for j in range(flow.strands.shape[1]):
        for t, a in zip(flow.t, flow.strands[:, j]):
            rows.append((float(t), j, float(a), 0, 0))
    for rec in records:
        rows.append((rec.t, rec.strand, math.pi, 1, rec.sign))
    rows.sort(key=lambda row: (row[1], row[0], row[3]))
    for row in rows:
        writer.writerow([f"{row[0]:.12g}", row[1], f"{row[2]:.12g}",
                         row[3], row[4]])


# ------------------------------------------------------------ quasimorphism

def quasimorphism_c(word, lifted, tol: Tolerances = DEFAULT, mode=STRICT):
    """c(g) = m(g . o~, o~) for a base point o~ on the universal cover."""
    check_mode(mode)
    image = bd.act_lift(word, lifted, tol=tol)
    return souriau_m(image, lifted, tol, mode).value


# golden-angle spectrum: a base with no eigenangle symmetries, so generic
# words stay clear of the Cayley chart's singular locus (unlike -e, whose
# tube image 0 every linear generator fixes)
_BASE_STEP = 2.399963229728653


def standard_base_lift(alg, tol: Tolerances = DEFAULT):
    """The fixed base lift used by default for c(g) and rotation numbers."""
    angles = bd.wrap_angle(0.7 + _BASE_STEP * np.arange(1, alg.rank + 1))
    sigma = bd.from_unit_spectrum(alg, angles, standard_frame(alg), tol)
    return bd.lift(sigma, 0, tol)


def _power_lift(word, lifted, power, tol):
    out = lifted
    for _ in range(power):
        out = bd.act_lift(word, out, tol=tol)
    return out


def translation_tau(word, power, base=None, tol: Tolerances = DEFAULT,
                    mode=STRICT):
    """Translation number estimate (c(g^K)/K, error bound r/K).

    The bound comes from the quasimorphism defect |c(gh) - c(g) - c(h)| <= r.
    """
    check_mode(mode)
    if power < 1:
        raise DomainError("power must be >= 1")
    if base is None:
        base = standard_base_lift(word.alg, tol)
    iterated = _power_lift(word, base, power, tol)
    c_val = souriau_m(iterated, base, tol, mode).value
    r = word.alg.rank
    return c_val / power, r / power


def rotation_rho(word, power, base=None, tol: Tolerances = DEFAULT,
                 mode=STRICT):
    """Generalized rotation number: -tau/2 mod 1, with bound r/(2K)."""
    est, bound = translation_tau(word, power, base, tol, mode)
    return (-0.5 * est) % 1.0, 0.5 * bound
