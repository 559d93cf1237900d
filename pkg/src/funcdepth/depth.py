"""Band depth, generalized band depth and their corrected and run-length variants.

Every depth here is an average over the bands delimited by subsets of a
reference sample, so each value is an integer count divided by a known
denominator. The kernels accumulate integer counts and divide once at the
end, which makes results independent of chunking and summation order.

Method labels
-------------
``BD2``, ``BD3`` (or ``BD`` with any ``J``)
    Cumulative band depth: the fraction of j-curve bands that contain the
    whole curve, summed over ``j = 2..J``.
``GBD`` (``GBD2``, ``GBD3``, ...)
    Cumulative generalized band depth: the average fraction of the grid on
    which the curve lies inside each band.
``cBD``, ``cGBD``
    Corrected versions built on two-curve bands restricted to the larger
    dominance set, see :func:`funcdepth.bands.corrected_band`.
``GBD_I``, ``GBD_O``
    Longest run inside the band, and one minus the longest run outside it.
"""

import re
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .bands import longest_runs
from .exceptions import BadJError, BadMethodError, MismatchedLengthError
from .sample import check_curve, check_curves

__all__ = [
    "DepthMethod",
    "STANDARD_METHODS",
    "parse_method",
    "depth_values",
    "depth_all",
    "band_depth",
    "generalized_band_depth",
    "corrected_band_depth",
    "corrected_generalized_band_depth",
    "gbd_inside",
    "gbd_outside",
    "rank_order",
    "ranks_from_order",
    "deepest",
]

_FAMILIES = ("BD", "GBD", "cBD", "cGBD", "GBD_I", "GBD_O")
_PAIR_ONLY = ("cBD", "cGBD", "GBD_I", "GBD_O")

# Element budget for one (points x bands x curves) boolean block.
_CHUNK_ELEMENTS = 1 << 22


@dataclass(frozen=True)
class DepthMethod:
    family: str
    J: int = 2

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise BadMethodError(f"unknown depth family {self.family!r}")
        if int(self.J) != self.J or self.J < 2:
            raise BadJError(f"J must be an integer >= 2, got {self.J}")
        if self.family in _PAIR_ONLY and self.J != 2:
            raise BadJError(f"{self.family} is defined for J = 2 only")

    @property
    def label(self):
        if self.family == "BD":
            return f"BD{self.J}"
        if self.family == "GBD" and self.J > 2:
            return f"GBD{self.J}"
        return self.family

    @property
    def upper_bound(self):
        return float(self.J - 1) if self.family in ("BD", "GBD") else 1.0

    def __str__(self):
        return self.label


STANDARD_METHODS = ("BD2", "BD3", "cBD", "GBD", "cGBD", "GBD_I", "GBD_O")

_LABEL_RE = re.compile(r"^(BD|GBD)(\d+)?$")
_CASEFOLD = {f.lower(): f for f in _FAMILIES}


def parse_method(method, J=None):
    """Turn a label such as ``"BD3"`` or ``"cGBD"`` into a :class:`DepthMethod`.

    ``J`` overrides the number embedded in the label. A bare ``"BD"`` or
    ``"GBD"`` means ``J = 2``.
    """
    if isinstance(method, DepthMethod):
        return method if J is None else DepthMethod(method.family, J)
    text = str(method).strip()
    family = _CASEFOLD.get(text.lower())
    embedded = None
    if family is None:
        m = _LABEL_RE.match(text.upper())
        if m is None:
            raise BadMethodError(
                f"unknown depth method {method!r}; expected one of "
                + ", ".join(STANDARD_METHODS)
            )
        family = m.group(1)
        embedded = int(m.group(2)) if m.group(2) else None
    if J is None:
        J = embedded if embedded is not None else 2
    return DepthMethod(family, int(J))


def _pair_counts(ref, X, wanted):
    """Integer sums over all pairs ``i1 < i2`` of ``ref`` for each row of ``X``.

    ``wanted`` is a subset of {"bd", "gbd", "ci", "co", "cbd", "cgbd"}:

    - bd: pairs whose band contains the whole curve
    - gbd: grid points inside, summed over pairs
    - ci: longest inside run per pair, summed
    - co: ``V`` minus the longest outside run per pair, summed
    - cbd: domain size of each corrected band that contains the curve
    - cgbd: grid points inside the corrected band, summed over pairs
    """
    m, V = ref.shape
    k = X.shape[0]
    out = {w: np.zeros(k, dtype=np.int64) for w in wanted}
    plain = bool(wanted & {"bd", "gbd", "ci", "co"})
    corrected = bool(wanted & {"cbd", "cgbd"})
    i1, i2 = np.triu_indices(m, 1)
    RT = ref.T
    XT = X.T[:, None, :]
    step = max(1, _CHUNK_ELEMENTS // (V * k))
    for s in range(0, i1.size, step):
        a = RT[:, i1[s:s + step]]
        b = RT[:, i2[s:s + step]]
        if plain:
            lo = np.minimum(a, b)[:, :, None]
            hi = np.maximum(a, b)[:, :, None]
            inside = (lo <= XT) & (XT <= hi)
            cnt = inside.sum(axis=0)
            if "bd" in out:
                out["bd"] += (cnt == V).sum(axis=0)
            if "gbd" in out:
                out["gbd"] += cnt.sum(axis=0)
            if "ci" in out or "co" in out:
                best_in, best_out = longest_runs(inside, axis=0)
                if "ci" in out:
                    out["ci"] += best_in.sum(axis=0)
                if "co" in out:
                    out["co"] += (V - best_out).sum(axis=0)
        if corrected:
            dom_ab = b >= a
            first = 2 * dom_ab.sum(axis=0) >= V
            lower = np.where(first, a, b)
            upper = np.where(first, b, a)
            # lower <= x <= upper already implies lower <= upper, i.e. the
            # point lies in the chosen dominance set
            cin = (lower[:, :, None] <= XT) & (XT <= upper[:, :, None])
            ccount = cin.sum(axis=0)
            if "cbd" in out:
                dcount = (upper >= lower).sum(axis=0)[:, None]
                out["cbd"] += (dcount * (ccount == dcount)).sum(axis=0)
            if "cgbd" in out:
                out["cgbd"] += ccount.sum(axis=0)
    return out


def _tuple_counts(ref, X, j, want_bd, want_gbd):
    """Containment counts over all j-subsets of ``ref`` (used for j >= 3)."""
    m, V = ref.shape
    k = X.shape[0]
    bd = np.zeros(k, dtype=np.int64)
    gbd = np.zeros(k, dtype=np.int64)
    RT = ref.T
    XT = X.T[:, None, :]
    step = max(1, _CHUNK_ELEMENTS // (V * k))
    combos = combinations(range(m), j)
    while True:
        block = np.fromiter(
            (i for c in _take(combos, step) for i in c), dtype=np.intp
        ).reshape(-1, j)
        if block.size == 0:
            break
        bands = RT[:, block]
        lo = bands.min(axis=2)[:, :, None]
        hi = bands.max(axis=2)[:, :, None]
        cnt = ((lo <= XT) & (XT <= hi)).sum(axis=0)
        if want_bd:
            bd += (cnt == V).sum(axis=0)
        if want_gbd:
            gbd += cnt.sum(axis=0)
    return bd, gbd


def _take(iterator, n):
    for _, item in zip(range(n), iterator):
        yield item


def depth_values(reference, X=None, methods=("GBD",)):
    """Depths of the curves ``X`` with respect to the sample ``reference``.

    Parameters
    ----------
    reference : FunctionalSample or array of shape (m, V)
        Curves delimiting the bands.
    X : array of shape (k, V), optional
        Curves to evaluate. Defaults to ``reference`` itself, in which case
        bands delimited by a curve count toward that curve's own depth.
    methods : sequence of str or DepthMethod

    Returns
    -------
    dict
        Maps each method label to a float array of shape (k,).
    """
    ref = check_curves(getattr(reference, "values", reference))
    m, V = ref.shape
    X = ref if X is None else check_curves(X, n_points=V, min_curves=1)
    parsed = [parse_method(meth) for meth in methods]
    for meth in parsed:
        if meth.J > m:
            raise BadJError(f"{meth.label} needs J <= n = {m}")

    pair_wanted = set()
    max_j = {"BD": 0, "GBD": 0}
    tag = {"cBD": "cbd", "cGBD": "cgbd", "GBD_I": "ci", "GBD_O": "co"}
    for meth in parsed:
        if meth.family in max_j:
            max_j[meth.family] = max(max_j[meth.family], meth.J)
            pair_wanted.add(meth.family.lower())
        else:
            pair_wanted.add(tag[meth.family])

    pairs = comb(m, 2)
    counts = _pair_counts(ref, X, pair_wanted)
    # per-j terms S^(j) and GS^(j) as float arrays
    terms = {"BD": [counts["bd"] / pairs] if "bd" in counts else [],
             "GBD": [counts["gbd"] / (V * pairs)] if "gbd" in counts else []}
    for j in range(3, max(max_j.values()) + 1):
        want_bd = max_j["BD"] >= j
        want_gbd = max_j["GBD"] >= j
        bd, gbd = _tuple_counts(ref, X, j, want_bd, want_gbd)
        total = comb(m, j)
        if want_bd:
            terms["BD"].append(bd / total)
        if want_gbd:
            terms["GBD"].append(gbd / (V * total))

    result = {}
    for meth in parsed:
        if meth.family in terms:
            vals = terms[meth.family][0].copy()
            for extra in terms[meth.family][1:meth.J - 1]:
                vals = vals + extra
        else:
            vals = counts[tag[meth.family]] / (V * pairs)
        result[meth.label] = vals
    return result


def depth_all(sample, method="GBD"):
    """Depth of every sample curve against the whole sample."""
    meth = parse_method(method)
    return depth_values(sample, None, [meth])[meth.label]


def _single(x, sample, method):
    ref = getattr(sample, "values", sample)
    ref = check_curves(ref)
    x = check_curve(x, ref.shape[1])
    meth = parse_method(method)
    return float(depth_values(ref, x[None, :], [meth])[meth.label][0])


def band_depth(x, sample, J=2):
    return _single(x, sample, DepthMethod("BD", J))


def generalized_band_depth(x, sample, J=2):
    return _single(x, sample, DepthMethod("GBD", J))


def corrected_band_depth(x, sample):
    return _single(x, sample, DepthMethod("cBD"))


def corrected_generalized_band_depth(x, sample):
    return _single(x, sample, DepthMethod("cGBD"))


def gbd_inside(x, sample):
    return _single(x, sample, DepthMethod("GBD_I"))


def gbd_outside(x, sample):
    return _single(x, sample, DepthMethod("GBD_O"))


def rank_order(depths):
    """Curve indices from deepest to least deep.

    Equal depths keep ascending index order.
    """
    depths = np.asarray(depths, dtype=float)
    if depths.ndim != 1:
        raise MismatchedLengthError("depths must be a 1-D array")
    return np.argsort(-depths, kind="stable")


def ranks_from_order(order):
    """Inverse of a rank order: 1-based rank of each curve (1 = deepest)."""
    order = np.asarray(order)
    ranks = np.empty(order.size, dtype=np.int64)
    ranks[order] = np.arange(1, order.size + 1)
    return ranks


def deepest(sample, method="GBD"):
    """Index of the median (deepest) curve."""
    return int(rank_order(depth_all(sample, method))[0])
