"""Level-ordered fitting pipeline and its persistent JSON store.

For every stable ``(g, n)`` up to a level cap, in increasing level and then
increasing genus, the pipeline samples ``Nbar`` with the recursion, fits it,
and inverts the state sum to get ``N``.  Genus order inside a level matters
for the inversion: a one-vertex graph with a self-node has a vertex of type
``(g-1, n+2)``, which sits on the same level.
"""
from __future__ import annotations

import json
import logging
import os
import random
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .dualgraph import invert_state_sum, state_sum_value
from .euler import ChiTable, chi_open
from .exact import QuasiPolynomial, fraction_str
from .interpolation import fit_level_with_samples
from .recursion import EvaluationContext, level, levels_upto, nbar_base, nbar_value

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
CACHE_ENV = "LATTICE_MGN_CACHE"
DEFAULT_MAX_LEVEL = 5
REVALIDATION_SAMPLES = 3
N_SAMPLES_PER_LEVEL = 5


class PipelineError(RuntimeError):
    pass


class StoreRejected(ValueError):
    pass


def default_cache_path() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "lattice_mgn" / "store.json"


def _key(kind: str, g: int, n: int) -> str:
    return f"{kind}:{g},{n}"


def _parse_key(text: str) -> tuple[str, int, int]:
    kind, gn = text.split(":")
    g, n = gn.split(",")
    return kind, int(g), int(n)


def _point_key(b) -> str:
    return ",".join(map(str, b))


@dataclass
class ValueStore:
    nbar: dict[tuple[int, int], QuasiPolynomial] = field(default_factory=dict)
    n: dict[tuple[int, int], QuasiPolynomial] = field(default_factory=dict)
    samples: dict[tuple[str, int, int], dict[tuple[int, ...], Fraction]] = field(default_factory=dict)
    max_level: int = 0

    def polynomials(self, kind: str) -> dict[tuple[int, int], QuasiPolynomial]:
        if kind == "Nbar":
            return self.nbar
        if kind == "N":
            return self.n
        raise ValueError(f"unknown kind {kind!r}")

    def chi_table(self) -> ChiTable:
        seeds = {g: qp.constant_term() for (g, n), qp in self.nbar.items() if n == 1}
        return ChiTable(seeds)

    def to_json(self) -> dict:
        polys = {}
        for kind in ("Nbar", "N"):
            for (g, n), qp in sorted(self.polynomials(kind).items()):
                polys[_key(kind, g, n)] = qp.to_json()
        samples = {_key(*key): {_point_key(b): fraction_str(v) for b, v in sorted(vals.items())}
                   for key, vals in sorted(self.samples.items())}
        table = self.chi_table()
        chi = {"open": {f"{g},{n}": fraction_str(chi_open(g, n)) for g, n in sorted(self.nbar)},
               "closed": {f"{g},{n}": fraction_str(table.chi_closed(g, n)) for g, n in sorted(self.nbar)}}
        return {"schemaVersion": SCHEMA_VERSION, "maxLevel": self.max_level,
                "polynomials": polys, "samples": samples, "chi": chi}

    @classmethod
    def from_json(cls, doc: dict) -> "ValueStore":
        if doc.get("schemaVersion") != SCHEMA_VERSION:
            raise StoreRejected(f"schema version {doc.get('schemaVersion')!r} != {SCHEMA_VERSION}")
        store = cls(max_level=int(doc["maxLevel"]))
        for text, items in doc["polynomials"].items():
            kind, g, n = _parse_key(text)
            store.polynomials(kind)[(g, n)] = QuasiPolynomial.from_json(items)
        for text, vals in doc["samples"].items():
            kind, g, n = _parse_key(text)
            store.samples[(kind, g, n)] = {tuple(int(x) for x in b.split(",")): Fraction(v)
                                           for b, v in vals.items()}
        store.validate()
        return store

    def validate(self) -> None:
        """Prerequisite closure plus spot checks of every polynomial against stored samples."""
        expected = set(levels_upto(self.max_level))
        for kind in ("Nbar", "N"):
            have = set(self.polynomials(kind))
            if have != expected:
                raise StoreRejected(f"{kind} levels {sorted(have ^ expected)} break the level-{self.max_level} closure")
        for kind in ("Nbar", "N"):
            for (g, n), qp in sorted(self.polynomials(kind).items()):
                vals = self.samples.get((kind, g, n))
                if not vals:
                    raise StoreRejected(f"no samples stored for {kind}({g},{n})")
                rng = random.Random(_key(kind, g, n))
                points = sorted(vals)
                for b in rng.sample(points, min(REVALIDATION_SAMPLES, len(points))):
                    if qp.evaluate(b) != vals[b]:
                        raise StoreRejected(f"{kind}({g},{n}) disagrees with its stored sample at {b}")

    def save(self, path: Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        text = json.dumps(self.to_json(), sort_keys=True, indent=1)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(text + "\n")
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: Path) -> "ValueStore | None":
        """Load a store, or return ``None`` if it is absent, stale or fails revalidation."""
        path = Path(path)
        if not path.exists():
            return None
        try:
            return cls.from_json(json.loads(path.read_text()))
        except StoreRejected as exc:
            log.warning("discarding cache %s: %s", path, exc)
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("discarding unreadable cache %s: %s", path, exc)
        return None


def _fit_one(store: ValueStore, g: int, n: int) -> None:
    lower = {key: qp for key, qp in store.nbar.items() if level(*key) < level(g, n)}
    if (g, n) in ((0, 3), (1, 1)):
        def evaluator(b):
            return nbar_base(g, n, b)
    else:
        ctx = EvaluationContext(lower)

        def evaluator(b):
            return nbar_value(g, n, b, ctx)
    nbar, values = fit_level_with_samples(g, n, evaluator)
    store.nbar[(g, n)] = nbar
    store.samples[("Nbar", g, n)] = values

    N = invert_state_sum(g, n, nbar, store.n)
    # pointwise N = Nbar - boundary strata, independent of the symbolic assembly
    n_values = {}
    for b in sorted(values)[:N_SAMPLES_PER_LEVEL]:
        value = values[b] - state_sum_value(g, n, b, store.n, include_smooth=False)
        if N.evaluate(b) != value:
            raise PipelineError(f"N({g},{n}) inversion disagrees with the pointwise state sum at {b}")
        n_values[b] = value
    store.samples[("N", g, n)] = n_values


def pipeline_run(max_level: int = DEFAULT_MAX_LEVEL, store: ValueStore | None = None) -> ValueStore:
    """Fit every stable level up to ``max_level``, reusing whatever ``store`` already holds."""
    if max_level < 1:
        raise ValueError("max_level must be at least 1")
    store = store if store is not None else ValueStore()
    for g, n in levels_upto(max_level):
        if (g, n) in store.nbar and (g, n) in store.n:
            continue
        log.info("fitting level %d: (g, n) = (%d, %d)", level(g, n), g, n)
        try:
            _fit_one(store, g, n)
        except PipelineError:
            raise
        except Exception as exc:
            raise PipelineError(f"level {level(g, n)}, (g, n) = ({g}, {n}): {exc}") from exc
    store.max_level = max(store.max_level, max_level)
    return store


def ensure_store(max_level: int, path: Path | None = None) -> ValueStore:
    """Read-only access: load the cache if usable and compute any missing levels in memory."""
    store = ValueStore.load(path or default_cache_path())
    if store is not None and store.max_level >= max_level:
        return store
    return pipeline_run(max_level, store)
