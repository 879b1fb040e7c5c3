"""Bounded census: enumerate surfaces, partition them into homotopy classes, report."""

from __future__ import annotations

import csv
import io
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .equivalence import (DEFAULT_CONJUGATOR_BOUND, DEFAULT_ETA_BOUND, DEFAULT_S0_BOUND, Status,
                          decide_homotopy, enumerate_representatives)
from .exact_linalg.intmat import charpoly2, charpoly3, inverse_unimodular
from .surfaces import S0, SMINUS, SPLUS, SurfaceDescriptor, is_valid

SCHEMA_VERSION = 1
REP_CAPS = {SPLUS: 16, SMINUS: 8, S0: 2}
DEFAULT_KINDS = (SPLUS, SMINUS)


@dataclass(frozen=True)
class CensusConfig:
    nmax: int
    pmax: int
    rmax: int
    kinds: tuple[str, ...] = DEFAULT_KINDS
    conjugator_bound: int = DEFAULT_CONJUGATOR_BOUND
    eta_bound: int = DEFAULT_ETA_BOUND
    s0_bound: int = DEFAULT_S0_BOUND
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.nmax < 1 or self.pmax < 0 or self.rmax < 1:
            raise ValueError("need nmax >= 1, pmax >= 0 and rmax >= 1")
        if min(self.conjugator_bound, self.eta_bound, self.s0_bound, self.jobs) < 1:
            raise ValueError("search bounds and jobs must be >= 1")
        bad = set(self.kinds) - {S0, SPLUS, SMINUS}
        if bad:
            raise ValueError(f"unknown kinds {sorted(bad)}")
        object.__setattr__(self, "kinds", tuple(k for k in (S0, SPLUS, SMINUS) if k in self.kinds))

    def to_json(self) -> dict:
        out = asdict(self)
        out["kinds"] = list(self.kinds)
        del out["jobs"]  # parallelism never changes the report
        return out


@dataclass
class HomotopyClass:
    representative: SurfaceDescriptor
    members: list[tuple[SurfaceDescriptor, dict | None]] = field(default_factory=list)
    unknown_verdicts: int = 0
    deformation_representatives: list[SurfaceDescriptor] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "representative": self.representative.to_json(),
            "member_count": len(self.members),
            "deformation_representative_count": len(self.deformation_representatives),
            "unknown_verdicts": self.unknown_verdicts,
            "deformation_representatives": [s.to_json() for s in self.deformation_representatives],
            "members": [{"surface": s.to_json(), "witness": w} for s, w in self.members],
        }


@dataclass
class CensusReport:
    config: CensusConfig
    classes: dict[str, list[HomotopyClass]]

    def to_json(self) -> dict:
        kinds = {}
        for kind in self.config.kinds:
            cls = self.classes.get(kind, [])
            kinds[kind] = {
                "surfaces": sum(len(c.members) for c in cls),
                "classes": [c.to_json() for c in cls],
            }
        return {"schema": SCHEMA_VERSION, "config": self.config.to_json(), "kinds": kinds}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["kind", "class", "representative", "member_count",
                         "deformation_representative_count", "unknown_verdicts"])
        for kind in self.config.kinds:
            for i, c in enumerate(self.classes.get(kind, [])):
                writer.writerow([kind, i, json.dumps(c.representative.to_json(), separators=(",", ":")),
                                 len(c.members), len(c.deformation_representatives),
                                 c.unknown_verdicts])
        return buf.getvalue()


# -- enumeration --------------------------------------------------------------------

def _matrices(size: int, nmax: int):
    rng = range(-nmax, nmax + 1)
    for flat in itertools.product(rng, repeat=size * size):
        yield tuple(tuple(flat[i * size:(i + 1) * size]) for i in range(size))


def enumerate_surfaces(config: CensusConfig, kind: str) -> list[SurfaceDescriptor]:
    """All valid surfaces of ``kind`` within the bounds, canonical (t = 0, sign = +1)."""
    out = []
    if kind == S0:
        for m in _matrices(3, config.nmax):
            desc = SurfaceDescriptor(S0, M=m)
            if is_valid(desc):
                out.append(desc)
        return out
    pr = range(-config.pmax, config.pmax + 1)
    rs = [r for r in range(-config.rmax, config.rmax + 1) if r]
    for n in _matrices(2, config.nmax):
        if not is_valid(SurfaceDescriptor(kind, N=n, p=0, q=0, r=1)):
            continue
        for p, q, r in itertools.product(pr, pr, rs):
            out.append(SurfaceDescriptor(kind, N=n, p=p, q=q, r=r))
    return sorted(out, key=SurfaceDescriptor.sort_key)


def bucket_key(s: SurfaceDescriptor) -> tuple:
    """Surfaces in different buckets are never homotopy equivalent."""
    if s.kind == S0:
        polys = sorted((charpoly3(s.M), charpoly3(inverse_unimodular(s.M))))
        return (s.kind, tuple(polys))
    return (s.kind, abs(s.r), charpoly2(s.N))


def _bound_for(kind: str, config: CensusConfig) -> int:
    return config.s0_bound if kind == S0 else config.conjugator_bound


def partition_bucket(surfaces: list[SurfaceDescriptor], config: CensusConfig) -> list[HomotopyClass]:
    """Assign each surface to the first class whose representative it is proven equivalent to.

    Only verified witnesses merge; an Unknown verdict never does, so the
    partition can only be finer than the true one.
    """
    classes: list[HomotopyClass] = []
    for s in surfaces:
        home = None
        unknown_hits = []
        for cls in classes:
            verdict = decide_homotopy(cls.representative, s, _bound_for(s.kind, config))
            if verdict.status is Status.EQUIVALENT:
                home = cls
                cls.members.append((s, verdict.witness.to_json()))
                break
            if verdict.status is Status.UNKNOWN:
                unknown_hits.append(cls)
        for cls in unknown_hits:
            cls.unknown_verdicts += 1
        if home is None:
            new = HomotopyClass(s, [(s, None)], unknown_verdicts=len(unknown_hits))
            classes.append(new)
    for cls in classes:
        reps = enumerate_representatives(cls.representative, check=True)
        cls.deformation_representatives = [r.surface for r in reps]
        if len(reps) > REP_CAPS[cls.representative.kind]:
            raise AssertionError("representative count exceeds its cap")
    return classes


def _partition_task(args):
    surfaces, config = args
    return partition_bucket(surfaces, config)


def run_census(config: CensusConfig) -> CensusReport:
    buckets: dict[tuple, list[SurfaceDescriptor]] = {}
    for kind in config.kinds:
        for s in enumerate_surfaces(config, kind):
            buckets.setdefault(bucket_key(s), []).append(s)
    keys = sorted(buckets, key=repr)
    tasks = [(buckets[k], config) for k in keys]
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_partition_task, tasks))
    else:
        results = [_partition_task(t) for t in tasks]
    classes: dict[str, list[HomotopyClass]] = {k: [] for k in config.kinds}
    for key, found in zip(keys, results):
        classes[key[0]].extend(found)
    for kind in classes:
        classes[kind].sort(key=lambda c: c.representative.sort_key())
    return CensusReport(config, classes)
