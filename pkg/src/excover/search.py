"""Search pipeline: enumerate candidate moduli profiles per (repeats, top)
cell, decide residue feasibility by backtracking, and assemble catalogs with
deterministic, checkpointable, optionally parallel execution.

Two enumeration paths exist:

* enumerate_profiles: the plain unit-fraction decomposition with only the
  arithmetic prunes (deficit underflow, harmonic tail, dead gap).  It is the
  reference semantics, but its tree grows explosively with the bound, so it
  is only usable on small cells.

* the production path used by run_search: the same decompositions filtered
  during the search by necessary conditions every exact cover provably
  satisfies (pairwise shared factors, prime-power quotas and mass floors,
  two-sided subset-sum bounds).  run_search output equals the reference
  composition wherever the reference is tractable; the equivalence is pinned
  by tests.

The provable conditions rest on two facts about an exact cover of Z:
(1) two classes with coprime moduli always intersect, so any two moduli share
a prime; (2) for any prime power q dividing some modulus, the classes whose
modulus q divides have residues (mod q) spread over groups of p = spf(q)
columns with exactly equal density in each column -- projecting the cover
onto each residue class mod q forces the balance.  Consequence used here: if
any modulus m divisible by q is present, the total density of q-divisible
moduli is at least p/m, and at least p moduli are divisible by q.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .arith import CapExceeded, Fraction, frac_sub_unit, smallest_prime_factor
from .systems import (
    CongruenceClass,
    CoveringSystem,
    ModuliProfile,
    classes_disjoint,
    profile_of,
    verify,
)

DEFAULT_LCM_CAP = 10**7

# Tolerance for float-based pruning bounds.  Bounds only ever prune when the
# violation exceeds this margin, so rounding (~1e-13 here) can never cut a
# feasible branch; exact integer arithmetic decides all equalities.
_EPS = 1e-9

_BRUTE_NODE_BUDGET = 5_000_000


class _Sentinel:
    __slots__ = ("_name",)

    def __init__(self, name):
        self._name = name

    def __repr__(self):
        return self._name


#: residue_witness result when the moduli multiset admits no exact cover.
INFEASIBLE = _Sentinel("INFEASIBLE")
#: residue_witness result when the lcm cap stopped the gap scan.
UNDECIDED = _Sentinel("UNDECIDED")


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of a catalog search.

    `jobs` and `checkpoint_path` control execution only; the resulting
    catalog is a pure function of the remaining fields.
    """

    r_min: int
    r_max: int
    max_modulus: int
    min_modulus: int = 3
    lcm_cap: int = DEFAULT_LCM_CAP
    enable_nz_prune: bool = False
    jobs: int = 1
    checkpoint_path: str | None = None

    def __post_init__(self):
        if self.r_min < 2:
            raise ValueError("r_min must be >= 2")
        if self.r_min > self.r_max:
            raise ValueError("r_min must not exceed r_max")
        if self.min_modulus < 2:
            raise ValueError("min_modulus must be >= 2")
        if self.max_modulus < self.min_modulus:
            raise ValueError("max_modulus must be >= min_modulus")
        if self.lcm_cap < 1 or self.jobs < 1:
            raise ValueError("lcm_cap and jobs must be positive")

    def result_fields(self) -> dict:
        """The fields that determine the catalog (used by checkpoints)."""
        return {
            "r_min": self.r_min,
            "r_max": self.r_max,
            "max_modulus": self.max_modulus,
            "min_modulus": self.min_modulus,
            "lcm_cap": self.lcm_cap,
            "enable_nz_prune": self.enable_nz_prune,
        }


@dataclass(frozen=True)
class WorkCell:
    """One unit of search work: top modulus `top` repeated `repeats` times."""

    repeats: int
    top: int

    def __post_init__(self):
        if self.repeats < 2:
            raise ValueError("repeats must be >= 2")
        if self.top <= self.repeats:
            raise ValueError("top must exceed repeats (one-modulus systems excluded)")


@dataclass
class Catalog:
    """Per-repeat sorted profile lists plus the config that produced them.

    `undecided` holds profiles whose residue feasibility could not be decided
    under the lcm cap; they are reported, never silently dropped.
    """

    results: dict[int, list[ModuliProfile]]
    config: SearchConfig
    undecided: list[ModuliProfile] = field(default_factory=list)

    def counts(self) -> dict[int, int]:
        return {r: len(v) for r, v in self.results.items()}

    def all_profiles(self) -> list[ModuliProfile]:
        return [p for r in sorted(self.results) for p in self.results[r]]

    def __eq__(self, other):
        if not isinstance(other, Catalog):
            return NotImplemented
        return self.results == other.results and self.undecided == other.undecided


def cells_for(cfg: SearchConfig) -> list[WorkCell]:
    """All (repeats, top) cells of the search grid, in deterministic order."""
    cells = []
    for r in range(cfg.r_min, cfg.r_max + 1):
        for m in range(max(cfg.min_modulus, r + 1), cfg.max_modulus + 1):
            cells.append(WorkCell(repeats=r, top=m))
    return cells


def partition_cells(cfg: SearchConfig, n: int) -> list[list[WorkCell]]:
    """Partition the cell grid into n lists, round-robin by estimated cost.

    Cost is the crude count of admissible base values below the top; balance
    only affects speed, never results, so crude is fine.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    cells = sorted(
        cells_for(cfg),
        key=lambda c: (-(c.top - cfg.min_modulus), c.repeats, c.top),
    )
    buckets: list[list[WorkCell]] = [[] for _ in range(n)]
    for i, cell in enumerate(cells):
        buckets[i % n].append(cell)
    return buckets


# ---------------------------------------------------------------------------
# reference enumeration (arithmetic prunes only)
# ---------------------------------------------------------------------------


def enumerate_profiles(cell: WorkCell, cfg: SearchConfig) -> list[ModuliProfile]:
    """All strictly increasing base sequences with exact unit-fraction sum.

    Finds every min_modulus <= d1 < ... < dj < top, j >= 1, with
    sum(1/di) = 1 - repeats/top, by depth-first search with the deficit
    underflow, harmonic tail and dead-gap prunes.  With enable_nz_prune the
    whole cell is skipped when spf(top) exceeds the repeat count.

    Warning: tree size grows explosively with the top modulus; this is the
    reference semantics, not the production search path.
    """
    r, m = cell.repeats, cell.top
    if cfg.enable_nz_prune and smallest_prime_factor(m) > r:
        return []
    target = Fraction(m - r, m)
    lo = cfg.min_modulus
    # exact harmonic suffix sums: tail[t] = sum of 1/d for d in [t, m)
    tail: list[Fraction] = [Fraction(0)] * (m + 1)
    for t in range(m - 1, lo - 1, -1):
        tail[t] = tail[t + 1] + Fraction(1, t)
    out: list[ModuliProfile] = []
    chosen: list[int] = []
    gap_limit = Fraction(1, m - 1) if m > 1 else Fraction(1)

    def dfs(deficit: Fraction, start: int) -> None:
        if not deficit:
            if chosen:
                out.append(ModuliProfile(base=tuple(chosen), top=m, repeats=r))
            return
        if deficit < gap_limit:
            return
        for d in range(start, m):
            if deficit > tail[d]:
                break
            try:
                rest = frac_sub_unit(deficit, d)
            except ArithmeticError:
                continue
            chosen.append(d)
            dfs(rest, d + 1)
            chosen.pop()

    dfs(target, lo)
    out.sort(key=ModuliProfile.sort_key)
    return out


# ---------------------------------------------------------------------------
# residue feasibility
# ---------------------------------------------------------------------------


def _density_of(moduli) -> Fraction:
    dens = Fraction(0)
    for m in moduli:
        dens = dens + Fraction(1, m)
    return dens


def residue_witness(moduli, lcm_cap: int = DEFAULT_LCM_CAP):
    """Find residues turning a density-1 moduli multiset into an exact cover.

    Backtracking on the smallest uncovered integer x: any exact cover must
    cover x by some class, and that class's residue is forced to x mod m, so
    branching over unused modulus values (ascending) is exhaustive.  Success
    needs no final scan: pairwise disjoint classes with density 1 cover
    everything.

    Returns the first witness in deterministic branch order, INFEASIBLE when
    the tree is exhausted, or UNDECIDED when a gap scan would have to run
    past lcm_cap (a gap below the lcm of the assigned moduli is guaranteed
    while density is short of 1, but scanning that far is not affordable).
    """
    mods = sorted(moduli)
    if not mods:
        raise ValueError("empty moduli multiset")
    dens = _density_of(mods)
    if dens != Fraction(1):
        raise ValueError(f"density {dens} != 1")
    values = sorted(set(mods))
    remaining = {v: mods.count(v) for v in values}
    total = len(mods)
    res: list[int] = []
    mod: list[int] = []
    undecided = [False]
    # Free-slot pruning: every unused copy of value v still needs a residue
    # mod v compatible with all assigned classes, and copies need distinct
    # residues, so v minus the blocked count must stay >= remaining[v].
    # Cutting such witness-free subtrees cannot change the first witness.
    blocked = {v: 0 for v in values}
    full = {v: (1 << v) - 1 for v in values}
    stride_cache: dict[tuple[int, int, int], int] = {}

    def stride_mask(v: int, g: int, a: int) -> int:
        key = (v, g, a)
        mask = stride_cache.get(key)
        if mask is None:
            mask = 0
            for c in range(a, v, g):
                mask |= 1 << c
            stride_cache[key] = mask
        return mask

    def smallest_uncovered(start: int, cur_lcm: int) -> int | None:
        scan_to = min(cur_lcm, lcm_cap)
        x = start
        while x < scan_to:
            for a, m in zip(res, mod):
                if (x - a) % m == 0:
                    break
            else:
                return x
            x += 1
        # a gap below cur_lcm is guaranteed, so reaching here means the cap
        # cut the scan short
        undecided[0] = True
        return None

    def dfs(start: int, cur_lcm: int) -> bool:
        if len(res) == total:
            return True
        x = smallest_uncovered(start, cur_lcm)
        if x is None:
            return False
        for m in values:
            if remaining[m] == 0:
                continue
            a = x % m
            ok = True
            for ra, rm in zip(res, mod):
                if (x - ra) % math.gcd(m, rm) == 0:
                    ok = False
                    break
            if not ok:
                continue
            remaining[m] -= 1
            res.append(a)
            mod.append(m)
            saved = []
            feasible = True
            for v in values:
                if remaining[v] == 0:
                    continue
                g = math.gcd(m, v)
                new = blocked[v] | stride_mask(v, g, a % g)
                saved.append((v, blocked[v]))
                blocked[v] = new
                if v - (full[v] & new).bit_count() < remaining[v]:
                    feasible = False
                    break
            if feasible and dfs(x + 1, cur_lcm // math.gcd(cur_lcm, m) * m):
                return True
            for v, old in saved:
                blocked[v] = old
            res.pop()
            mod.pop()
            remaining[m] += 1
        return False

    if dfs(0, 1):
        return CoveringSystem(
            CongruenceClass(a, m) for a, m in zip(res, mod)
        )
    return UNDECIDED if undecided[0] else INFEASIBLE


def witness_bruteforce(moduli, lcm_cap: int = DEFAULT_LCM_CAP):
    """Exhaustive oracle: try residue tuples, checking coverage counts on Z/L.

    Enumerates residue choices class by class in fixed order (identical
    moduli get strictly increasing residues, removing their symmetry),
    maintaining a hit-count table over one period and abandoning a branch as
    soon as any point is covered twice.  Counting over Z/L is the acceptance
    criterion, keeping this oracle mechanically independent of the gcd-based
    disjointness reasoning.

    Raises CapExceeded when the lcm or the exploration budget is exceeded.
    """
    mods = sorted(moduli)
    if not mods:
        raise ValueError("empty moduli multiset")
    if _density_of(mods) != Fraction(1):
        return INFEASIBLE
    l = 1
    for m in mods:
        l = l // math.gcd(l, m) * m
        if l > lcm_cap:
            raise CapExceeded(f"lcm {l} exceeds cap {lcm_cap}")
    counts = bytearray(l)
    chosen: list[int] = []
    nodes = [0]

    def place(m: int, a: int) -> bool:
        for x in range(a, l, m):
            if counts[x]:
                for y in range(a, x, m):
                    counts[y] -= 1
                return False
            counts[x] = 1
        return True

    def unplace(m: int, a: int) -> None:
        for x in range(a, l, m):
            counts[x] -= 1

    def dfs(i: int) -> bool:
        nodes[0] += 1
        if nodes[0] > _BRUTE_NODE_BUDGET:
            raise CapExceeded(f"residue search budget {_BRUTE_NODE_BUDGET} exceeded")
        if i == len(mods):
            return True
        m = mods[i]
        start = chosen[i - 1] + 1 if i > 0 and mods[i - 1] == m else 0
        for a in range(start, m):
            if place(m, a):
                chosen.append(a)
                if dfs(i + 1):
                    return True
                chosen.pop()
                unplace(m, a)
        return False

    if dfs(0):
        return CoveringSystem(
            CongruenceClass(a, m) for a, m in zip(chosen, mods)
        )
    return INFEASIBLE


# ---------------------------------------------------------------------------
# production enumeration
# ---------------------------------------------------------------------------


def _prime_factors(n: int) -> list[tuple[int, int]]:
    out = []
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def _prime_power_divisors(n: int) -> list[tuple[int, int]]:
    """All (p^j, p) with p^j dividing n, j >= 1."""
    return [(p**j, p) for p, e in _prime_factors(n) for j in range(1, e + 1)]


def _candidate_pool(repeats: int, top: int, min_mod: int) -> list[int]:
    """Base values not excluded by provable necessary conditions.

    Iterates to a fixpoint: every value must share a factor with the top
    modulus, every prime power q dividing a value needs at least spf(q)
    multiples available among the remaining values plus the top copies, and
    the achievable mass of q-multiples must reach spf(q)/value.
    """
    pool = [d for d in range(min_mod, top) if math.gcd(d, top) > 1]
    ppd = {d: _prime_power_divisors(d) for d in pool}
    # a prime power dividing top whose prime does not divide the repeat count
    # must recruit at least one base multiple: the top copies alone have equal
    # masses, so their residue columns balance only in groups of spf(q)
    required = [q for q, p in _prime_power_divisors(top) if repeats % p != 0]
    while True:
        cnt: dict[int, int] = {}
        mass: dict[int, float] = {}
        for d in pool:
            for q, p in ppd[d]:
                cnt[q] = cnt.get(q, 0) + 1
                mass[q] = mass.get(q, 0.0) + 1.0 / d
        for q in required:
            if cnt.get(q, 0) == 0:
                return []
        keep = []
        for d in pool:
            ok = True
            for q, p in ppd[d]:
                top_divisible = top % q == 0
                if cnt.get(q, 0) + (repeats if top_divisible else 0) < p:
                    ok = False
                    break
                have = mass.get(q, 0.0) + (repeats / top if top_divisible else 0.0)
                if have < p / d - _EPS:
                    ok = False
                    break
            if ok:
                keep.append(d)
        if len(keep) == len(pool):
            return pool
        pool = keep
        ppd = {d: ppd[d] for d in pool}


def _cell_candidates(cell: WorkCell, cfg: SearchConfig) -> list[tuple[int, ...]]:
    """Base multisets with exact density that pass every provable filter.

    Include/exclude depth-first scan in ascending order over a shrinking
    "view" of the pool: including a value drops every future value that
    shares no prime with it (two moduli of an exact cover always share one),
    and the dropped mass is charged against the skip budget immediately.
    The kept-side deficit is tracked exactly in integers and bounded from
    both sides: kept values must still be able to reach the target, and the
    total skipped mass can never exceed the pool's slack.
    """
    r, top = cell.repeats, cell.top
    if cfg.enable_nz_prune and smallest_prime_factor(top) > r:
        return []
    tnum, tden = top - r, top
    g = math.gcd(tnum, tden)
    tnum //= g
    tden //= g
    pool = _candidate_pool(r, top, cfg.min_modulus)
    n = len(pool)
    if n == 0:
        return []
    inv = [1.0 / d for d in pool]
    ppd = [_prime_power_divisors(d) for d in pool]
    top_ppd = _prime_power_divisors(top)
    tracked = sorted({q for l in ppd for q, _ in l} | {q for q, _ in top_ppd})
    qidx = {q: k for k, q in enumerate(tracked)}
    nq = len(tracked)
    spf = [0] * nq
    for l in ppd + [top_ppd]:
        for q, p in l:
            spf[qidx[q]] = p
    top_div = [top % q == 0 for q in tracked]
    vq = [[(qidx[q], q, p) for q, p in l] for l in ppd]
    multiple = [[pool[i] % q == 0 for i in range(n)] for q in tracked]
    primes = [frozenset(p for p, _ in _prime_factors(d)) for d in pool]
    all_primes = sorted({p for s in primes for p in s})
    target = tnum / tden
    w = [0.0] * nq
    count = [0] * nq
    req = [0.0] * nq
    for k in range(nq):
        if top_div[k]:
            w[k] = r / top
            count[k] = r
            req[k] = spf[k] / top
    need_mult = [k for k in range(nq) if top_div[k] and r % spf[k] != 0]
    have_mult = [0] * nq
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []
    gap_den = top - 1

    def view_tables(view: list[int]):
        """Suffix mass/count tables over a view, per tracked prime power."""
        vn = len(view)
        total = [0.0] * (vn + 1)
        qmass = [[0.0] * (vn + 1) for _ in range(nq)]
        qcnt = [[0] * (vn + 1) for _ in range(nq)]
        for pos in range(vn - 1, -1, -1):
            i = view[pos]
            total[pos] = total[pos + 1] + inv[i]
            for k in range(nq):
                hit = multiple[k][i]
                qmass[k][pos] = qmass[k][pos + 1] + (inv[i] if hit else 0.0)
                qcnt[k][pos] = qcnt[k][pos + 1] + (1 if hit else 0)
        return total, qmass, qcnt

    def prunes_ok(view, pos, tables, dn, dd) -> bool:
        total, qmass, qcnt = tables
        delta = dn / dd
        if delta > total[pos] + _EPS:
            return False
        for k in range(nq):
            need = req[k] - w[k]
            if need > _EPS:
                if min(delta, qmass[k][pos]) < need - _EPS:
                    return False
                short = spf[k] - count[k]
                if short > 0 and qcnt[k][pos] < short:
                    return False
        for k in need_mult:
            if have_mult[k] == 0 and qcnt[k][pos] == 0:
                return False
        # every prime power in the reduced deficit denominator must divide a
        # future kept value; the top copies are already outside the deficit
        dd_left = dd
        for p in all_primes:
            if dd_left % p == 0:
                e = 0
                while dd_left % p == 0:
                    dd_left //= p
                    e += 1
                q = p**e
                k = qidx.get(q)
                if k is not None:
                    if qcnt[k][pos] == 0:
                        return False
                else:
                    if not any(pool[view[j]] % q == 0 for j in range(pos, len(view))):
                        return False
        if dd_left > 1 and not any(
            pool[view[j]] % dd_left == 0 for j in range(pos, len(view))
        ):
            return False
        return True

    def dfs(view, pos, tables, dn, dd, skipped) -> None:
        if dn == 0:
            for k in need_mult:
                if have_mult[k] == 0:
                    return
            out.append(tuple(chosen))
            return
        if pos == len(view) or skipped > slack + _EPS:
            return
        if dn * gap_den < dd:
            return
        if not prunes_ok(view, pos, tables, dn, dd):
            return
        i = view[pos]
        d = pool[i]
        if dn * d >= dd:
            ndn, ndd = dn * d - dd, dd * d
            g2 = math.gcd(ndn, ndd)
            ndn //= g2
            ndd //= g2
            if ndn == 0 or ndn * gap_den >= ndd:
                ps = primes[i]
                nview = [j for j in view[pos + 1 :] if primes[j] & ps]
                ntables = view_tables(nview)
                # values dropped for sharing no prime with d count as skipped
                nskipped = skipped + (tables[0][pos + 1] - ntables[0][0])
                if nskipped <= slack + _EPS:
                    saved = []
                    for k, q, p in vq[i]:
                        w[k] += inv[i]
                        count[k] += 1
                        have_mult[k] += 1
                        saved.append((k, req[k]))
                        if p / d > req[k]:
                            req[k] = p / d
                    chosen.append(d)
                    dfs(nview, 0, ntables, ndn, ndd, nskipped)
                    chosen.pop()
                    for k, old in saved:
                        req[k] = old
                    for k, q, p in vq[i]:
                        w[k] -= inv[i]
                        count[k] -= 1
                        have_mult[k] -= 1
        dfs(view, pos + 1, tables, dn, dd, skipped + inv[i])

    root_view = list(range(n))
    root_tables = view_tables(root_view)
    slack = root_tables[0][0] - target
    if slack < -_EPS:
        return []
    dfs(root_view, 0, root_tables, tnum, tden, 0.0)
    out.sort(key=lambda c: (len(c), c))
    return out


# ---------------------------------------------------------------------------
# catalog assembly
# ---------------------------------------------------------------------------


def _solve_cell(
    cell: WorkCell, cfg: SearchConfig
) -> tuple[int, int, list[list[int]], list[list[int]]]:
    """Profiles with verified witnesses, plus undecided profiles, for one cell."""
    found: list[list[int]] = []
    undecided: list[list[int]] = []
    for base in _cell_candidates(cell, cfg):
        mods = list(base) + [cell.top] * cell.repeats
        witness = residue_witness(mods, lcm_cap=cfg.lcm_cap)
        if witness is INFEASIBLE:
            continue
        if witness is UNDECIDED:
            undecided.append(list(base))
            continue
        report = verify(witness)
        profile = profile_of(witness)
        if not report.valid or profile != ModuliProfile(
            base=tuple(base), top=cell.top, repeats=cell.repeats
        ):
            raise AssertionError(f"unsound witness for cell {cell}: {witness}")
        found.append(list(base))
    return cell.repeats, cell.top, found, undecided


def _checkpoint_header(cfg: SearchConfig) -> str:
    return json.dumps({"config": cfg.result_fields()}, sort_keys=True)


def _load_checkpoint(path: str, cfg: SearchConfig) -> dict:
    """Completed cells from an append-only checkpoint file.

    The header must match the active config's result-determining fields;
    a truncated final line (killed mid-write) is ignored.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        return {}
    head = json.loads(lines[0])
    if head.get("config") != cfg.result_fields():
        raise ValueError(
            "checkpoint was written by a different search configuration; "
            "refusing to resume"
        )
    done = {}
    for idx, line in enumerate(lines[1:]):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError:
            if idx == len(lines) - 2:
                break  # interrupted mid-write
            raise
        done[(rec["r"], rec["M"])] = (
            [list(b) for b in rec["profiles"]],
            [list(b) for b in rec.get("undecided", [])],
        )
    return done


def _checkpoint_line(r: int, m: int, profiles, undecided) -> str:
    rec = {"r": r, "M": m, "profiles": [list(b) for b in profiles]}
    if undecided:
        rec["undecided"] = [list(b) for b in undecided]
    return json.dumps(rec, sort_keys=True)


def run_search(cfg: SearchConfig) -> Catalog:
    """Search the full (repeats, top) grid and assemble the catalog.

    Every emitted profile carries a witness that was verified before
    inclusion; undecided profiles are recorded in the catalog metadata.  The
    result depends only on the result-determining config fields, not on jobs
    or checkpoint history; work cells are independent and merged in canonical
    order.
    """
    cells = cells_for(cfg)
    done: dict = {}
    ckpt = cfg.checkpoint_path
    ckpt_file = None
    if ckpt:
        if os.path.exists(ckpt) and os.path.getsize(ckpt) > 0:
            done = _load_checkpoint(ckpt, cfg)
            ckpt_file = open(ckpt, "a", encoding="utf-8", buffering=1)
        else:
            ckpt_file = open(ckpt, "w", encoding="utf-8", buffering=1)
            ckpt_file.write(_checkpoint_header(cfg) + "\n")
    try:
        pending = [c for c in cells if (c.repeats, c.top) not in done]
        if cfg.jobs > 1 and len(pending) > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                for r, m, profiles, undecided in pool.map(
                    _solve_cell, pending, [cfg] * len(pending), chunksize=16
                ):
                    done[(r, m)] = (profiles, undecided)
                    if ckpt_file:
                        ckpt_file.write(_checkpoint_line(r, m, profiles, undecided) + "\n")
        else:
            for cell in pending:
                r, m, profiles, undecided = _solve_cell(cell, cfg)
                done[(r, m)] = (profiles, undecided)
                if ckpt_file:
                    ckpt_file.write(_checkpoint_line(r, m, profiles, undecided) + "\n")
    finally:
        if ckpt_file:
            ckpt_file.close()

    results: dict[int, list[ModuliProfile]] = {
        r: [] for r in range(cfg.r_min, cfg.r_max + 1)
    }
    undecided_profiles: list[ModuliProfile] = []
    for cell in cells:
        profiles, undecided = done[(cell.repeats, cell.top)]
        for base in profiles:
            results[cell.repeats].append(
                ModuliProfile(base=tuple(base), top=cell.top, repeats=cell.repeats)
            )
        for base in undecided:
            undecided_profiles.append(
                ModuliProfile(base=tuple(base), top=cell.top, repeats=cell.repeats)
            )
    for r in results:
        results[r].sort(key=ModuliProfile.sort_key)
    undecided_profiles.sort(key=lambda p: (p.repeats,) + p.sort_key())
    return Catalog(results=results, config=cfg, undecided=undecided_profiles)
