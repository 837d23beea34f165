"""Reference catalog, compact/JSON serialization, and catalog diffing.

The reference data lives in golden_catalog.txt (compact format, one line per
repeat count) and is validated on load: per-repeat entry counts must match
the expected table below, and every entry must construct a valid profile
(density exactly 1 is enforced by the ModuliProfile type), so transcription
errors fail loudly rather than silently skewing comparisons.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources

from .search import Catalog, SearchConfig
from .systems import ModuliProfile

#: Expected number of catalog entries per repeat count.
GOLDEN_COUNTS = {
    2: 0, 3: 0, 4: 1, 5: 0, 6: 3, 7: 2, 8: 2, 9: 4, 10: 5, 11: 2,
    12: 7, 13: 7, 14: 6, 15: 10, 16: 9, 17: 4, 18: 16, 19: 13, 20: 12,
    21: 18, 22: 19, 23: 12, 24: 24, 25: 23, 26: 19, 27: 27, 28: 26,
    29: 21, 30: 39, 31: 35, 32: 29,
}

#: Bound below which the reference catalog is known to be complete.
GOLDEN_BOUND = 600


@dataclass(frozen=True)
class GoldenEntry:
    """One parsed compact-format line: all profiles for one repeat count."""

    repeats: int
    profiles: tuple[ModuliProfile, ...]


@dataclass
class DiffReport:
    """Set difference between two catalogs, per repeat count."""

    missing: list[ModuliProfile] = field(default_factory=list)
    extra: list[ModuliProfile] = field(default_factory=list)
    count_deltas: dict[int, int] = field(default_factory=dict)

    @property
    def empty(self) -> bool:
        return not self.missing and not self.extra


_LINE_RE = re.compile(r"^(\d+)\((\d+)\):\s*(.*)$")


def parse_compact_line(line: str) -> GoldenEntry:
    """Parse one `r(count): d1,...,dj,TOP; ...` line.

    Whitespace around commas and separators is tolerated; the declared count
    must match the number of groups.
    """
    m = _LINE_RE.match(line.strip())
    if not m:
        raise ValueError(f"cannot parse catalog line {line!r}")
    repeats, declared, body = int(m.group(1)), int(m.group(2)), m.group(3).strip()
    profiles = []
    if body:
        for group in body.split(";"):
            mods = [int(tok) for tok in group.replace(",", " ").split()]
            if len(mods) < 1:
                raise ValueError(f"empty group in {line!r}")
            profiles.append(
                ModuliProfile(base=tuple(mods[:-1]), top=mods[-1], repeats=repeats)
            )
    if len(profiles) != declared:
        raise ValueError(
            f"line for r={repeats} declares {declared} systems, found {len(profiles)}"
        )
    profiles.sort(key=ModuliProfile.sort_key)
    return GoldenEntry(repeats=repeats, profiles=tuple(profiles))


def parse_compact(text: str) -> list[GoldenEntry]:
    """Parse the compact format; `#` lines are comments."""
    entries = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        entries.append(parse_compact_line(line))
    return entries


def format_compact(cat: Catalog) -> str:
    """One line per repeat count: `r(count): d1,...,dj,TOP; ...`.

    The repeated modulus is the last number of each group; repeat counts with
    no systems emit `r(0):`.
    """
    lines = []
    for r in sorted(cat.results):
        profiles = cat.results[r]
        groups = "; ".join(
            ",".join(str(d) for d in p.base + (p.top,)) for p in profiles
        )
        lines.append(f"{r}({len(profiles)}): {groups}".rstrip())
    return "\n".join(lines) + "\n"


_golden_cache: Catalog | None = None


def golden() -> Catalog:
    """The embedded reference catalog for repeat counts 2..32.

    Validated against GOLDEN_COUNTS at load; profile density is checked by
    construction.  The catalog metadata records the completeness bound (top
    modulus <= 600) the reference data is known for.
    """
    global _golden_cache
    if _golden_cache is None:
        text = (
            resources.files("excover").joinpath("golden_catalog.txt").read_text("utf-8")
        )
        entries = parse_compact(text)
        results = {e.repeats: list(e.profiles) for e in entries}
        if set(results) != set(GOLDEN_COUNTS):
            raise ValueError("reference catalog repeat range mismatch")
        for r, expected in GOLDEN_COUNTS.items():
            if len(results[r]) != expected:
                raise ValueError(
                    f"reference catalog r={r}: {len(results[r])} entries, "
                    f"expected {expected}"
                )
        cfg = SearchConfig(r_min=2, r_max=32, max_modulus=GOLDEN_BOUND)
        _golden_cache = Catalog(results=results, config=cfg, undecided=[])
    return _golden_cache


def diff(run: Catalog, gold: Catalog) -> DiffReport:
    """Per-repeat set differences: golden-only entries are missing, run-only
    entries are extra.  Ordering in the report is canonical."""
    report = DiffReport()
    repeats = sorted(set(run.results) | set(gold.results))
    for r in repeats:
        run_set = set(run.results.get(r, []))
        gold_set = set(gold.results.get(r, []))
        missing = sorted(gold_set - run_set, key=ModuliProfile.sort_key)
        extra = sorted(run_set - gold_set, key=ModuliProfile.sort_key)
        report.missing.extend(missing)
        report.extra.extend(extra)
        delta = len(run_set) - len(gold_set)
        if delta:
            report.count_deltas[r] = delta
    return report


def _profile_obj(p: ModuliProfile) -> dict:
    return {"base": list(p.base), "top": p.top, "repeats": p.repeats}


def format_json(cat: Catalog) -> str:
    """Deterministic JSON: sorted keys, integers only, stable separators."""
    obj = {
        "bound": cat.config.max_modulus,
        "min_modulus": cat.config.min_modulus,
        "results": {
            str(r): [_profile_obj(p) for p in cat.results[r]]
            for r in sorted(cat.results)
        },
        "undecided": [_profile_obj(p) for p in cat.undecided],
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def parse_json(text: str) -> Catalog:
    """Inverse of format_json; validates the schema and profile invariants."""
    obj = json.loads(text)
    for key in ("bound", "min_modulus", "results", "undecided"):
        if key not in obj:
            raise ValueError(f"catalog JSON missing key {key!r}")
    results: dict[int, list[ModuliProfile]] = {}
    for r_str, items in obj["results"].items():
        r = int(r_str)
        results[r] = sorted(
            (
                ModuliProfile(
                    base=tuple(item["base"]), top=item["top"], repeats=item["repeats"]
                )
                for item in items
            ),
            key=ModuliProfile.sort_key,
        )
        for p in results[r]:
            if p.repeats != r:
                raise ValueError(f"profile {p} filed under r={r}")
    undecided = [
        ModuliProfile(base=tuple(i["base"]), top=i["top"], repeats=i["repeats"])
        for i in obj["undecided"]
    ]
    if results:
        cfg = SearchConfig(
            r_min=min(results),
            r_max=max(results),
            max_modulus=max(obj["bound"], obj["min_modulus"]),
            min_modulus=obj["min_modulus"],
        )
    else:
        cfg = SearchConfig(r_min=2, r_max=2, max_modulus=obj["bound"])
    return Catalog(results=results, config=cfg, undecided=undecided)
