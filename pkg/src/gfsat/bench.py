"""Deterministic benchmark instance generators and a suite runner.

Two instance families, both conjunctions of unit equality clauses:

* rand: each polynomial has 2-8 distinct monomials, exponent vectors drawn
  uniformly among those of total degree at most 4, coefficients uniform
  nonzero; at least one polynomial per system keeps a nonzero constant term
  (the last one is redrawn until the system complies).

* craft: a hidden assignment is drawn first and every constraint is built
  to vanish on it: the constraint picks up to 5 distinct variables, each
  contributing a product of 1-3 distinct linear factors (x - z), and the
  hidden value of the first picked variable is forced into its factor list
  when no picked variable has it.  Crafted systems are satisfiable by
  construction.

Randomness comes from one seeded Mersenne Twister stream per generator
call, consumed only through getrandbits-based rejection sampling, so a
(spec, seed) pair yields byte-identical instance files everywhere.

The suite runner solves every ``.ff`` file in a directory under a
per-instance timeout and reports per-instance results plus solved counts
grouped by the family/q/n/c encoded in the file names.
"""

from __future__ import annotations

import json
import math
import random
import re
import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .engine import Config, SAT, UNSAT, solve
from .explain import clear_caches
from .field import Field, FieldElement
from .formula import Clause, Constraint, Formula, Rel
from .parser import parse_file, render
from .poly import Polynomial

RAND = "rand"
CRAFT = "craft"


@dataclass(frozen=True)
class BenchSpec:
    family: str
    q: int
    n: int
    c: int
    count: int
    seed: int

    def __post_init__(self):
        if self.family not in (RAND, CRAFT):
            raise ValueError(f"unknown family {self.family!r}")
        if min(self.q, self.n, self.c, self.count) <= 0:
            raise ValueError("q, n, c and count must be positive")
        Field.of_order(self.q)  # raises on invalid orders

    def instance_name(self, idx: int) -> str:
        return (f"{self.family}_q{self.q}_n{self.n}_c{self.c}"
                f"_{idx:03d}.ff")


# -- seeded sampling helpers -------------------------------------------------

def _below(rng: random.Random, n: int) -> int:
    """Uniform integer in [0, n) by rejection on getrandbits."""
    if n <= 0:
        raise ValueError("empty range")
    bits = (n - 1).bit_length() or 1
    while True:
        r = rng.getrandbits(bits)
        if r < n:
            return r


def _between(rng: random.Random, lo: int, hi: int) -> int:
    return lo + _below(rng, hi - lo + 1)


def _distinct(rng: random.Random, n: int, count: int) -> List[int]:
    """``count`` distinct integers from [0, n), in draw order."""
    out: List[int] = []
    seen = set()
    while len(out) < count:
        v = _below(rng, n)
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _unrank_expvec(n: int, dmax: int, idx: int) -> List[int]:
    """idx-th exponent vector among those over n variables with total degree
    at most dmax (colex-style unranking; the count is comb(n+dmax, n))."""
    vec: List[int] = []
    budget = dmax
    for pos in range(n):
        rest = n - pos - 1
        e = 0
        while True:
            block = math.comb(rest + budget - e, rest)
            if idx < block:
                break
            idx -= block
            e += 1
        vec.append(e)
        budget -= e
    return vec


# -- generators --------------------------------------------------------------

_MAX_TOTAL_DEGREE = 4
_MIN_MONOMIALS, _MAX_MONOMIALS = 2, 8


def _rand_poly(rng: random.Random, fld: Field, n: int) -> Polynomial:
    want = _between(rng, _MIN_MONOMIALS, _MAX_MONOMIALS)
    space = math.comb(n + _MAX_TOTAL_DEGREE, n)
    want = min(want, space)
    elements = fld.elements()
    terms: Dict[tuple, FieldElement] = {}
    while len(terms) < want:
        vec = _unrank_expvec(n, _MAX_TOTAL_DEGREE, _below(rng, space))
        mono = tuple((i + 1, e) for i, e in enumerate(vec) if e)
        if mono in terms:
            continue
        terms[mono] = elements[1 + _below(rng, fld.q - 1)]
    return Polynomial(fld, terms)


def gen_rand(spec: BenchSpec) -> List[Formula]:
    """Fully random systems of unit equality clauses (see module docstring)."""
    if spec.family != RAND:
        raise ValueError("spec is not a rand spec")
    rng = random.Random(spec.seed)
    fld = Field.of_order(spec.q)
    out: List[Formula] = []
    for _ in range(spec.count):
        polys = [_rand_poly(rng, fld, spec.n) for _ in range(spec.c)]
        while not any(() in p.terms for p in polys):
            polys[-1] = _rand_poly(rng, fld, spec.n)
        clauses = [Clause([Constraint(p, Rel.EQ)]) for p in polys]
        out.append(Formula(fld, spec.n, clauses))
    return out


def _craft_poly(rng: random.Random, fld: Field, n: int,
                hidden: Sequence[FieldElement]) -> Polynomial:
    elements = fld.elements()
    nvars = _between(rng, 1, min(5, n))
    picked = [v + 1 for v in _distinct(rng, n, nvars)]
    zero_lists: List[List[FieldElement]] = []
    for _ in picked:
        nz = _between(rng, 1, min(3, fld.q))
        zero_lists.append([elements[i] for i in _distinct(rng, fld.q, nz)])
    if not any(hidden[v - 1] in zs for v, zs in zip(picked, zero_lists)):
        want = hidden[picked[0] - 1]
        zs = zero_lists[0]
        zs[0] = want
        zero_lists[0] = [z for i, z in enumerate(zs)
                         if z not in zs[:i]]  # keep the list duplicate-free
    poly = Polynomial.one(fld)
    for v, zs in zip(picked, zero_lists):
        for z in zs:
            poly = poly * (Polynomial.variable(fld, v)
                           - Polynomial.constant(z))
    return poly


def gen_craft(spec: BenchSpec) -> List[Formula]:
    """Crafted satisfiable systems with a hidden planted assignment."""
    if spec.family != CRAFT:
        raise ValueError("spec is not a craft spec")
    rng = random.Random(spec.seed)
    fld = Field.of_order(spec.q)
    elements = fld.elements()
    out: List[Formula] = []
    for _ in range(spec.count):
        hidden = [elements[_below(rng, fld.q)] for _ in range(spec.n)]
        clauses = []
        for _ in range(spec.c):
            poly = _craft_poly(rng, fld, spec.n, hidden)
            clauses.append(Clause([Constraint(poly, Rel.EQ)]))
        out.append(Formula(fld, spec.n, clauses))
    return out


def generate(spec: BenchSpec) -> List[Formula]:
    return gen_rand(spec) if spec.family == RAND else gen_craft(spec)


def write_instances(spec: BenchSpec, out_dir) -> List[Path]:
    """Generate and write instance files; returns the paths written."""
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, formula in enumerate(generate(spec)):
        path = directory / spec.instance_name(i)
        path.write_text(render(formula), encoding="utf-8")
        paths.append(path)
    return paths


# -- suite runner ------------------------------------------------------------

@dataclass
class InstanceResult:
    name: str
    verdict: str
    time_ms: int
    stats: Dict[str, int]
    reason: Optional[str] = None

    @property
    def solved(self) -> bool:
        return self.verdict in (SAT, UNSAT)


@dataclass
class GroupRow:
    family: str
    q: int
    n: int
    c: int
    solved: int
    total: int
    mean_ms: Optional[int]  # mean solve time over solved instances


@dataclass
class BenchReport:
    results: List[InstanceResult]
    groups: List[GroupRow]


_NAME_RE = re.compile(r"^([a-z]+)_q(\d+)_n(\d+)_c(\d+)_(\d+)\.ff$")


def run_suite(directory, timeout_s: float,
              cfg: Optional[Config] = None) -> BenchReport:
    """Solve every .ff file under the directory with a per-instance timeout.

    A timeout or resource limit records the instance as unsolved; a parse or
    solver error records verdict "error" with the message; the suite always
    runs to completion.  Results are ordered by file name.

    Every instance starts from cold memo tables so its result and timing do
    not depend on what ran before it; repeated runs of the same directory
    are then directly comparable.
    """
    base = cfg or Config()
    results: List[InstanceResult] = []
    for path in sorted(Path(directory).glob("*.ff")):
        clear_caches()
        t0 = time.monotonic()
        try:
            formula = parse_file(path)
            verdict = solve(formula, replace(base, timeout_s=timeout_s))
            results.append(InstanceResult(
                name=path.name,
                verdict=verdict.status,
                time_ms=verdict.stats.time_ms,
                stats=verdict.stats.as_dict(),
                reason=verdict.reason,
            ))
        except Exception as exc:  # never abort the suite
            elapsed = int((time.monotonic() - t0) * 1000)
            results.append(InstanceResult(
                name=path.name, verdict="error", time_ms=elapsed,
                stats={}, reason=str(exc)))
    return BenchReport(results, _group(results))


def _group(results: Sequence[InstanceResult]) -> List[GroupRow]:
    buckets: Dict[Tuple[str, int, int, int], List[InstanceResult]] = {}
    order: List[Tuple[str, int, int, int]] = []
    for r in results:
        m = _NAME_RE.match(r.name)
        key = (m.group(1), int(m.group(2)), int(m.group(3)), int(m.group(4))) \
            if m else ("misc", 0, 0, 0)
        if key not in buckets:
            buckets[key] = []
            order.append(key)
        buckets[key].append(r)
    rows = []
    for key in order:
        group = buckets[key]
        solved = [r for r in group if r.solved]
        mean = int(sum(r.time_ms for r in solved) / len(solved)) if solved else None
        rows.append(GroupRow(family=key[0], q=key[1], n=key[2], c=key[3],
                             solved=len(solved), total=len(group), mean_ms=mean))
    return rows


def render_report(report: BenchReport) -> str:
    """Aligned per-instance table followed by grouped solved counts."""
    lines: List[str] = []
    if not report.results:
        return "no instances\n"
    name_w = max(len(r.name) for r in report.results)
    lines.append(f"{'instance':<{name_w}}  {'verdict':<8} {'time_ms':>8}  "
                 f"{'decisions':>9}  {'conflicts':>9}  {'learned':>7}")
    for r in report.results:
        st = r.stats
        lines.append(
            f"{r.name:<{name_w}}  {r.verdict:<8} {r.time_ms:>8}  "
            f"{st.get('decisions', 0):>9}  {st.get('conflicts', 0):>9}  "
            f"{st.get('learned', 0):>7}")
    lines.append("")
    lines.append(f"{'family':<8} {'q':>4} {'n':>4} {'c':>4}  "
                 f"{'solved':>6} {'total':>5}  {'mean_ms':>8}")
    for g in report.groups:
        mean = str(g.mean_ms) if g.mean_ms is not None else "-"
        lines.append(f"{g.family:<8} {g.q:>4} {g.n:>4} {g.c:>4}  "
                     f"{g.solved:>6} {g.total:>5}  {mean:>8}")
    return "\n".join(lines) + "\n"


def write_jsonl(report: BenchReport, path) -> None:
    """One JSON record per instance: name, verdict, time_ms, stats."""
    with open(path, "w", encoding="utf-8") as fh:
        for r in report.results:
            record = {"name": r.name, "verdict": r.verdict,
                      "time_ms": r.time_ms, "stats": r.stats}
            if r.reason:
                record["reason"] = r.reason
            fh.write(json.dumps(record) + "\n")
