"""Bunch machinery: the non-extension falsifier on the line, and the
contrasting extension facts for small explicit structures.

The falsifier takes a near family of pairwise-disjoint infinite exact
sets and produces a self-contained certificate that no bunch of the
induced near collection can contain the family: it splits the first
member into two mutually divergent halves, splits the line into a side
far from each half, and certifies, scale by scale, that neither side
contains a subset uniformly close to the whole member.

Scale-check soundness: any subset of a side within Hausdorff distance k
of the member is contained in the canonical candidate (the side's
points within k of the member), and would force every member point to
lie within k of that candidate; a single member point farther than k
from the candidate therefore refutes every such subset at once.  The
window guard keeps this exact: candidate points within k of a member
point below ``window - k`` cannot hide beyond the window.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import lineset as ls
from .lineset import _cushion, _distances_to
from .setcore import Family
from .structures import ExplicitNearness, ExplicitProximity, enumerate_clusters, is_bunch
from .verdict import TriVerdict


class ObstructionRejected(ValueError):
    """Precondition failure: the family is not a valid falsifier input."""


@dataclass(frozen=True)
class ScaleCheck:
    scale: int
    side: int  # 0: far-from-first-half, 1: far-from-second-half
    member_point: int
    distance_to_candidate: int | None  # None: candidate empty below the window

    def to_json(self) -> dict:
        return {
            "scale": self.scale,
            "side": self.side,
            "member_point": self.member_point,
            "distance_to_candidate": self.distance_to_candidate,
        }


@dataclass(frozen=True)
class BunchObstruction:
    family: tuple[ls.LineSet, ...]
    refiner_scale: int  # pairwise distance bound of the family itself
    pivot: ls.LineSet  # the member that gets split
    half1: ls.LineSet
    half2: ls.LineSet
    side1: ls.LineSet
    side2: ls.LineSet
    coverage: TriVerdict
    scale_checks: tuple[ScaleCheck, ...]
    scale_budget: int
    window: int

    @property
    def complete(self) -> bool:
        if not self.coverage.is_yes:
            return False
        seen = {(c.scale, c.side) for c in self.scale_checks}
        want = {(k, s) for k in range(self.scale_budget + 1) for s in (0, 1)}
        return seen == want

    def to_json(self) -> dict:
        return {
            "family": [s.to_json() for s in self.family],
            "refiner_scale": self.refiner_scale,
            "pivot": self.pivot.to_json(),
            "half1": self.half1.to_json(),
            "half2": self.half2.to_json(),
            "side1": self.side1.to_json(),
            "side2": self.side2.to_json(),
            "coverage": self.coverage.to_json(),
            "scale_checks": [c.to_json() for c in self.scale_checks],
            "scale_budget": self.scale_budget,
            "window": self.window,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "BunchObstruction":
        cov = doc["coverage"]
        return cls(
            family=tuple(ls.lineset_from_json(s) for s in doc["family"]),
            refiner_scale=doc["refiner_scale"],
            pivot=ls.lineset_from_json(doc["pivot"]),
            half1=ls.lineset_from_json(doc["half1"]),
            half2=ls.lineset_from_json(doc["half2"]),
            side1=ls.lineset_from_json(doc["side1"]),
            side2=ls.lineset_from_json(doc["side2"]),
            coverage=TriVerdict(cov["outcome"], cov["witness"]),
            scale_checks=tuple(
                ScaleCheck(
                    c["scale"], c["side"], c["member_point"], c["distance_to_candidate"]
                )
                for c in doc["scale_checks"]
            ),
            scale_budget=doc["scale_budget"],
            window=doc["window"],
        )

    def revalidate(self) -> bool:
        """Re-check every certified component from the stored data."""
        if not self.complete:
            return False
        for half in (self.half1, self.half2):
            probe = half.window(4096)
            if any(not self.pivot.contains(x) for x in probe):
                return False
            if len(probe) < 8:
                return False
        pts = np.arange(self.window + 1, dtype=np.int64)
        w1 = self.side1.window_array(self.window)
        w2 = self.side2.window_array(self.window)
        if np.union1d(w1, w2).size != pts.size:
            return False
        lw = self.pivot.window_array(self.window + _cushion(self.pivot, self.window))
        for check in self.scale_checks:
            side = self.side1 if check.side == 0 else self.side2
            k = check.scale
            sw = side.window_array(self.window)
            if sw.size:
                near = sw[_distances_to(sw, lw) <= k]
            else:
                near = sw
            l = check.member_point
            if not self.pivot.contains(l) or l > self.window - k:
                return False
            if check.distance_to_candidate is None:
                if near.size:
                    return False
                continue
            d = int(_distances_to(np.asarray([l]), near)[0])
            if d != check.distance_to_candidate or d <= k:
                return False
        return True


def bunch_obstruction(
    family: Sequence[ls.LineSet], scale_budget: int = 32, window: int = 10**5
) -> BunchObstruction:
    """Build the non-extension certificate for a near family of pairwise
    disjoint infinite exact-tier sets."""
    members = list(family)
    if len(members) < 2:
        raise ObstructionRejected("need at least two members")
    if any(not s.is_exact() for s in members):
        raise ObstructionRejected("falsifier needs exact-tier members")
    if any(s.is_empty() for s in members):
        raise ObstructionRejected("members must be nonempty")
    finite = [s for s in members if s.is_finite()]
    if finite:
        raise ObstructionRejected(
            "family is not near: it mixes finite and infinite members "
            "with empty common intersection"
            if len(finite) < len(members)
            else "family is not near at large scale: all members finite"
        )
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            inter = ls.intersection(members[i], members[j])
            if not inter.is_empty():
                raise ObstructionRejected(
                    f"members {i} and {j} share the point {inter.min_element()}"
                )
    worst = 0
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            worst = max(worst, ls.hausdorff_distance(members[i], members[j]).value)

    pivot = members[0]
    half1, half2 = ls.sparsify_split(pivot)
    side1, side2, coverage = ls.normality_split(half1, half2, window)

    lw_pad = pivot.window_array(window + _cushion(pivot, window))
    lw = pivot.window_array(window)
    checks: list[ScaleCheck] = []
    for side_idx, side in enumerate((side1, side2)):
        sw = side.window_array(window)
        d_side = _distances_to(sw, lw_pad) if sw.size else np.empty(0, np.int64)
        for k in range(scale_budget + 1):
            candidate = sw[d_side <= k] if sw.size else sw
            witnesses = lw[lw <= window - k]
            if candidate.size == 0:
                if witnesses.size == 0:
                    raise ObstructionRejected("window too small for the pivot member")
                checks.append(ScaleCheck(k, side_idx, int(witnesses[0]), None))
                continue
            dists = _distances_to(witnesses, candidate)
            far = np.nonzero(dists > k)[0]
            if far.size == 0:
                raise ObstructionRejected(
                    f"scale check failed: side {side_idx} holds a candidate within "
                    f"{k} of every member point up to the window"
                )
            pos = int(far[0])
            checks.append(ScaleCheck(k, side_idx, int(witnesses[pos]), int(dists[pos])))

    return BunchObstruction(
        family=tuple(members),
        refiner_scale=worst,
        pivot=pivot,
        half1=half1,
        half2=half2,
        side1=side1,
        side2=side2,
        coverage=coverage,
        scale_checks=tuple(checks),
        scale_budget=scale_budget,
        window=window,
    )


# ---------------------------------------------------------------------------
# Explicit contrast: extension succeeds in small proximity-induced spaces
# ---------------------------------------------------------------------------


def bunch_exists_explicit(a: Family, n: ExplicitNearness) -> TriVerdict:
    """Exhaustive search for a bunch containing the family."""
    if not n.is_near(a):
        raise ValueError("family is not near; extension is ill-posed")
    want = a.mask_key()
    searched = 0
    for key in range(1 << n.slots):
        if key & want != want:
            continue
        searched += 1
        if is_bunch(key, n):
            return TriVerdict.yes(bunch=str(Family.from_mask_key(a.universe, key)), key=key)
    return TriVerdict.no(searched=searched)


@dataclass(frozen=True)
class ClusterContrast:
    pairs_checked: int
    all_extended: bool
    failures: tuple[tuple[str, str], ...]


def cluster_extension_contrast(p: ExplicitProximity) -> ClusterContrast:
    """Every near pair of a small proximity extends to a cluster."""
    clusters = enumerate_clusters(p)
    failures = []
    checked = 0
    for a in range(p.slots):
        for b in range(a, p.slots):
            if not p.near(a, b):
                continue
            checked += 1
            if not any(c >> a & 1 and c >> b & 1 for c in clusters):
                failures.append(
                    (str(Family.from_mask_key(p.universe, 1 << a)), str(Family.from_mask_key(p.universe, 1 << b)))
                )
    return ClusterContrast(checked, not failures, tuple(failures))
