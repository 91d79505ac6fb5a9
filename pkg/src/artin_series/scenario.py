"""Scenario files: parsing and task execution.

A scenario is TOML::

    seed = 0

    [family]                 # or [ring] / [ring.product] / [ring.tower]
    stream = "example-ring"
    window = [0, 1, 2, 3]

    [family.chain]
    generators = ["z0", "z1", "z2"]

    [series]
    vars = ["X"]
    trunc = 6

    [ideal]
    gens = ["X1*X2"]

    [[task]]
    kind = "flat"

Every task may override ``family``, ``window``, ``vars``, ``trunc`` and
``gens``.  ``expect = "<ErrorName>"`` marks a task whose correct outcome is
that error being raised.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from . import errors
from .artinian import present, present_product, present_tower
from .errors import ArtinError, InternalSelfCheck, ParseError
from .examples import non_sft_scan, wb_failure_check
from .exactpoly.fields import field_from_tag
from .family import (
    BUILTIN_FAMILIES,
    DirectedFamily,
    SubringHandle,
    builtin_family,
    constant_family,
    non_noetherian_chain,
)
from .flatcert import random_relation, solve, survival_check, verify_certificate
from .idealkit import (
    FgIdeal,
    associated_primes_monomial,
    cgrade_report,
    height_of_slice,
    is_regular_sequence,
    monomial_family,
    prime_chain,
    replace_with_regular,
    slice_components,
    verify_unmixed,
)
from .series import (
    SeriesContext,
    ext_membership,
    minimal_primes,
    quotient_presentation,
    residue_map,
)

TASK_TAGS = {
    "flat": "faithful-flatness",
    "survival": "lying-over",
    "dimension": "dimension-n",
    "minimal-primes": "minimal-primes",
    "chain": "catenary-chain",
    "krull": "krull-bound",
    "unmixed": "unmixedness",
    "grade": "grade-equals-height",
    "replace": "regular-generation",
    "sft": "non-sft-witness",
    "wb": "wb-failure",
    "non-noetherian": "non-noetherian-chain",
}

# which summary row a task supports
ROW_OF = {
    "flat": "Flatness",
    "survival": "Flatness",
    "dimension": "Dimension",
    "minimal-primes": "Dimension",
    "chain": "Dimension",
    "non-noetherian": "Dimension",
    "sft": "Dimension",
    "krull": "CM",
    "unmixed": "CM",
    "grade": "CM",
    "replace": "CM",
    "wb": "CM",
}


@dataclass
class Scenario:
    name: str
    data: Dict[str, Any]
    seed: int = 0
    trunc: Optional[int] = None
    tasks: List[Dict[str, Any]] = field(default_factory=list)


@dataclass
class TaskOutcome:
    kind: str
    tag: str
    verdict: str            # pass | fail | skip | error
    reason: str
    instances: int
    certificate: Dict[str, Any]
    seconds: float
    internal: bool = False

    def to_json(self):
        return {
            "kind": self.kind,
            "tag": self.tag,
            "verdict": self.verdict,
            "reason": self.reason,
            "instances": self.instances,
            "certificate": self.certificate,
        }


# ---------------------------------------------------------------------------
# loading


def load_scenario(source: str, name: str = "scenario") -> Scenario:
    """Parse TOML text into a scenario (ParseError on malformed input)."""
    try:
        data = tomllib.loads(source)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"{name}: {exc}") from None
    tasks = data.get("task", [])
    if isinstance(tasks, dict):
        tasks = [tasks]
    if not isinstance(tasks, list) or not all(isinstance(t, dict) for t in tasks):
        raise ParseError(f"{name}: [[task]] entries must be tables")
    for t in tasks:
        kind = t.get("kind")
        if kind not in TASK_TAGS:
            raise ParseError(f"{name}: unknown task kind {kind!r}; known: {sorted(TASK_TAGS)}")
    names = [t["family"] for t in tasks if "family" in t]
    stream = data.get("family", {}).get("stream")
    if stream is not None:
        names.append(stream)
    for fam in names:
        if fam not in BUILTIN_FAMILIES:
            raise ParseError(f"{name}: unknown family {fam!r}; known: {sorted(BUILTIN_FAMILIES)}")
    if "family" in data and "ring" in data and "stream" in data.get("family", {}):
        raise ParseError(f"{name}: give either [ring] or a [family] stream, not both")
    seed = data.get("seed", 0)
    if not isinstance(seed, int):
        raise ParseError(f"{name}: seed must be an integer")
    return Scenario(name, data, seed, data.get("series", {}).get("trunc"), tasks)


def load_scenario_file(path: str) -> Scenario:
    if path in BUILTIN_SCENARIOS:
        return load_scenario(BUILTIN_SCENARIOS[path], path)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read scenario {path!r}: {exc}") from None
    return load_scenario(text, path)


def _algebra_from_table(tbl: Dict[str, Any]):
    base = field_from_tag(str(tbl.get("base", "Q")))
    if "product" in tbl:
        sub = tbl["product"]
        if not isinstance(sub, dict) or not sub:
            raise ParseError("[ring.product] needs one sub-table per factor")
        return present_product([_algebra_from_table(sub[k]) for k in sub])
    if "tower" in tbl:
        t = tbl["tower"]
        return present_tower(field_from_tag(str(t.get("base", tbl.get("base", "Q")))),
                             t.get("vars", []), t.get("minpolys", []))
    return present(base, tbl.get("vars", []), tbl.get("relations", []))


class Workspace:
    """Families built for one run, shared across its tasks."""

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self._families: Dict[str, DirectedFamily] = {}

    def family(self, name: Optional[str]) -> DirectedFamily:
        key = name or "__default__"
        if key not in self._families:
            self._families[key] = self._build(name)
        return self._families[key]

    def _build(self, name: Optional[str]) -> DirectedFamily:
        data = self.scenario.data
        if name is not None:
            return builtin_family(name)
        fam = data.get("family", {})
        if "stream" in fam:
            base = field_from_tag(str(fam.get("base", "Q")))
            return builtin_family(fam["stream"], base)
        if "ring" in data:
            return constant_family(_algebra_from_table(data["ring"]), "ring")
        return builtin_family("rationals")

    def window(self, F: DirectedFamily, task: Dict[str, Any]) -> SubringHandle:
        fam = self.scenario.data.get("family", {})
        idx = task.get("window", fam.get("window", []) if "family" not in task else [])
        return F.handle(idx)


# ---------------------------------------------------------------------------
# task runners


@dataclass
class TaskContext:
    ws: Workspace
    task: Dict[str, Any]
    seed: int
    trunc: Optional[int]

    def get(self, key, default=None):
        if key in self.task:
            return self.task[key]
        for section in ("series", "ideal", "flat"):
            sec = self.ws.scenario.data.get(section, {})
            if key in sec:
                return sec[key]
        return default

    @property
    def family(self) -> DirectedFamily:
        return self.ws.family(self.task.get("family"))

    @property
    def window(self) -> SubringHandle:
        return self.ws.window(self.family, self.task)

    def trunc_or(self, default: int) -> int:
        # a command-line override beats the file
        if self.trunc is not None:
            return self.trunc
        return self.get("trunc", default)

    def context(self, default_trunc: int = 6, n: Optional[int] = None) -> SeriesContext:
        """Series context from ``vars``; ``n`` forces ``X1..Xn`` when it disagrees."""
        vars = self.get("vars")
        if n is not None and (vars is None or len(vars) != n):
            vars = [f"X{i + 1}" for i in range(n)]
        return SeriesContext(self.family, vars or ["X"], self.trunc_or(default_trunc))


Runner = Callable[[TaskContext], tuple]


def run_flat(tc: TaskContext):
    seeds = tc.get("seeds", 100)
    n_max = tc.get("n", 3)
    D = tc.trunc_or(4)
    h = tc.window
    shown = []
    for i in range(seeds):
        inst = random_relation(tc.seed * 100003 + i, h, 1 + i % n_max, D)
        cert = solve(inst)
        if not verify_certificate(inst, cert):
            return False, f"certificate {i} fails re-verification", i + 1, {}
        if len(shown) < 2:
            shown.append({"instance": inst.to_json(), "certificate": cert.to_json()})
    ctx = SeriesContext(tc.family, ["X"], D)
    surv = [survival_check(E) for E in minimal_primes(ctx, h)]
    ok = all(surv)
    return ok, "" if ok else "a maximal ideal does not survive", seeds, {
        "window": list(h.idx), "solved": seeds, "survival": surv, "examples": shown,
    }


def run_survival(tc: TaskContext):
    ctx = tc.context(4)
    surv = [survival_check(E) for E in minimal_primes(ctx, tc.window)]
    return all(surv), "" if all(surv) else "a maximal ideal does not survive", len(surv), {"survival": surv}


def run_dimension(tc: TaskContext):
    n_max = tc.get("n", 3)
    D = tc.trunc_or(4)
    rows = []
    ok = True
    for n in range(1, n_max + 1):
        ctx = tc.context(D, n)
        for E in minimal_primes(ctx, tc.window):
            chain = prime_chain(E, n)
            qp = quotient_presentation(ctx, E)
            good = chain.certified and chain.length == n and qp.holds
            ok = ok and good
            rows.append({"n": n, "chain": chain.to_json(), "quotient": qp.to_json()})
    return ok, "" if ok else "a chain or tensor identity failed", len(rows), {"trunc": D, "rows": rows}


def run_minimal_primes(tc: TaskContext):
    ctx = tc.context(4)
    h = tc.window
    comps = minimal_primes(ctx, h)
    Ms = h.algebra.maximal_ideals()
    matched = len(comps) == len(Ms) and all(
        any(E.restriction(h).same_as(M) for E in comps) for M in Ms
    )
    samples = tc.get("samples", 200)
    rng = random.Random(tc.seed)
    agree = 0
    for _ in range(samples):
        f = ctx.random_element(rng, h, density=0.4)
        if rng.random() < 0.5:
            # push some coefficients into a maximal ideal so both verdicts occur
            E = comps[rng.randrange(len(comps))]
            M = E.restriction(h)
            if M.generators:
                f = f * ctx.const(M.generators[rng.randrange(len(M.generators))])
            else:
                f = ctx.zero(h) if rng.random() < 0.3 else f
        for E in comps:
            if residue_map(f, E).is_zero() == ext_membership(f, E):
                agree += 1
    total = samples * len(comps)
    ok = matched and agree == total
    return ok, "" if ok else "kernel identity or prime count mismatch", total, {
        "minimal_primes": [E.to_json() for E in comps],
        "maximal_ideals": len(Ms),
        "matched": matched,
        "kernel_identity_agreements": agree,
    }


def _ideal(tc: TaskContext, ctx: SeriesContext) -> FgIdeal:
    gens = tc.get("gens", [])
    return FgIdeal.parse(ctx, gens)


def _exhaustive(tc: TaskContext):
    n_max = tc.get("n", 2)
    for n in range(1, n_max + 1):
        ctx = tc.context(6, n)
        for exps in monomial_family(n, tc.get("max_gens", 3), tc.get("max_degree", 3)):
            yield ctx, FgIdeal(ctx, [ctx.monomial(m, handle=tc.window) for m in exps])


def run_krull(tc: TaskContext):
    count = regular = 0
    for ctx, I in _ideals_for(tc):
        comps = slice_components(I)
        if any(c.height > len(I.gens) for c in comps):
            return False, f"height exceeds generator count for {I!r}", count, {}
        if is_regular_sequence(I.gens).regular:
            regular += 1
            if any(c.height != len(I.gens) for c in comps):
                return False, f"regular sequence {I!r} is not height-generated", count, {}
        count += 1
    return True, "", count, {"ideals": count, "regular_sequences": regular}


def _ideals_for(tc: TaskContext):
    if tc.get("exhaustive", False):
        yield from _exhaustive(tc)
    else:
        ctx = tc.context(6)
        yield ctx, _ideal(tc, ctx)


def _height_generated(I: FgIdeal) -> bool:
    return all(c.mu == c.height for c in slice_components(I))


def run_unmixed(tc: TaskContext):
    count = 0
    shown = []
    for ctx, I in _ideals_for(tc):
        if tc.get("exhaustive", False) and not _height_generated(I):
            continue
        rep = verify_unmixed(I)
        for comp in slice_components(I):
            direct = {p.Z for p in associated_primes_monomial(list(comp.exponents), comp.component, ctx.n)} \
                if comp.exponents else {frozenset()}
            listed = {p.Z for p in rep.components[comp.index].primes}
            if direct != listed:
                return False, f"associated primes disagree for {I!r}", count, {}
        if not rep.unmixed:
            return False, f"{I!r} has prime divisors of different heights", count, rep.to_json()
        if len(shown) < 3:
            shown.append({"ideal": I.to_json(), "report": rep.to_json()})
        count += 1
    return True, "", count, {"checked": count, "examples": shown}


def run_grade(tc: TaskContext):
    count = 0
    shown = []
    for ctx, I in _ideals_for(tc):
        if tc.get("exhaustive", False) and not _height_generated(I):
            continue
        g = cgrade_report(I)
        ht = g.height if g.height is not None else height_of_slice(I)
        if g.grade != ht or not g.report.regular:
            return False, f"cgrade {g.grade} != height {ht} for {I!r}", count, g.to_json()
        if len(shown) < 3:
            shown.append({"ideal": I.to_json(), "grade": g.to_json()})
        count += 1
    return True, "", count, {"checked": count, "examples": shown}


def run_replace(tc: TaskContext):
    ctx = tc.context(6)
    I = _ideal(tc, ctx)
    r = replace_with_regular(I)
    ok = r.report.regular and r.generated_same
    return ok, "" if ok else "replacement not certified", 1, {
        "input": I.to_json(), "output": r.ideal.to_json(), "report": r.report.to_json(), "searched": r.searched,
    }


def run_chain(tc: TaskContext):
    ctx = tc.context(6, tc.task.get("n"))
    out = []
    ok = True
    for E in minimal_primes(ctx, tc.window):
        c = prime_chain(E)
        ok = ok and c.certified and c.length == ctx.n
        out.append(c.to_json())
    return ok, "" if ok else "chain not certified", len(out), {"chains": out}


def run_sft(tc: TaskContext):
    k_max = tc.get("k_max", 6)
    ideals = tc.get("ideals") or [tc.get("ideal", "z0")]
    rows = []
    ok = True
    for J in ideals:
        for w in non_sft_scan(k_max, J):
            ok = ok and w.ok
            rows.append(dict(w.to_json(), J=J if isinstance(J, str) else ", ".join(J)))
    return ok, "" if ok else "a witness power lies in J", len(rows), {"witnesses": rows}


def run_wb(tc: TaskContext):
    rep = wb_failure_check(tc.get("s", 4), tc.trunc_or(6), tc.get("samples", 50), tc.seed)
    return rep.ok, "" if rep.ok else "annihilator of y differs from P[[X]] on the sample", rep.samples, rep.to_json()


def run_non_noetherian(tc: TaskContext):
    t = tc.get("t", 6)
    chain_tbl = tc.ws.scenario.data.get("family", {}).get("chain", {})
    gens = tc.task.get("generators", chain_tbl.get("generators"))
    steps = non_noetherian_chain(tc.family, t, gens)
    ok = all(s.strict_in_ring and s.strict_in_series for s in steps)
    return ok, "" if ok else "chain stabilises", len(steps), {"steps": [s.to_json() for s in steps]}


RUNNERS: Dict[str, Runner] = {
    "flat": run_flat,
    "survival": run_survival,
    "dimension": run_dimension,
    "minimal-primes": run_minimal_primes,
    "chain": run_chain,
    "krull": run_krull,
    "unmixed": run_unmixed,
    "grade": run_grade,
    "replace": run_replace,
    "sft": run_sft,
    "wb": run_wb,
    "non-noetherian": run_non_noetherian,
}


def run_task(ws: Workspace, task: Dict[str, Any], seed: int, trunc: Optional[int]) -> TaskOutcome:
    kind = task["kind"]
    tag = TASK_TAGS[kind]
    expect = task.get("expect")
    start = time.perf_counter()
    tc = TaskContext(ws, task, seed, trunc)
    try:
        ok, reason, count, cert = RUNNERS[kind](tc)
    except ParseError:
        raise
    except InternalSelfCheck as exc:
        return TaskOutcome(kind, tag, "error", f"[{tag}] internal self-check: {exc}", 0, {},
                           time.perf_counter() - start, internal=True)
    except ArtinError as exc:
        name = type(exc).__name__
        if expect == name:
            return TaskOutcome(kind, tag, "pass", f"expected {name}: {exc}", 1, {"raised": name, "message": str(exc)},
                               time.perf_counter() - start)
        return TaskOutcome(kind, tag, "fail", f"[{tag}] {name}: {exc}", 0, {"raised": name},
                           time.perf_counter() - start)
    if expect is not None:
        return TaskOutcome(kind, tag, "fail", f"[{tag}] expected {expect} but the task completed", count, cert,
                           time.perf_counter() - start)
    verdict = "pass" if ok else "fail"
    msg = reason if ok else f"[{tag}] {reason}"
    return TaskOutcome(kind, tag, verdict, msg, count, cert, time.perf_counter() - start)


def run_scenario(sc: Scenario, seed: Optional[int] = None, trunc: Optional[int] = None) -> List[TaskOutcome]:
    seed = sc.seed if seed is None else seed
    ws = Workspace(sc)
    out = []
    for i, task in enumerate(sc.tasks):
        out.append(run_task(ws, task, seed + i, trunc))
    return out


def known_error(name: str) -> bool:
    return isinstance(getattr(errors, name, None), type)


# ---------------------------------------------------------------------------
# built-in scenarios


PAPER_SUITE = """
seed = 0

[family]
stream = "example-ring"
window = [0, 1, 2, 3]

[family.chain]
generators = ["z0", "z1", "z2", "z3", "z4", "z5", "z6"]

[[task]]
kind = "flat"
seeds = 100
trunc = 4

[[task]]
kind = "flat"
family = "qxq"
seeds = 100
trunc = 4

[[task]]
kind = "flat"
family = "quadratic-tower"
window = [0, 1, 2]
seeds = 100
trunc = 4

[[task]]
kind = "dimension"
n = 3
trunc = 4

[[task]]
kind = "dimension"
family = "qxq"
n = 3
trunc = 4

[[task]]
kind = "dimension"
family = "quadratic-tower"
window = [0]
n = 3
trunc = 4

[[task]]
kind = "minimal-primes"
samples = 100

[[task]]
kind = "minimal-primes"
family = "qxq"
samples = 100

[[task]]
kind = "minimal-primes"
family = "quadratic-tower"
window = [0, 1]
samples = 100

[[task]]
kind = "krull"
family = "qxq"
exhaustive = true
n = 2

[[task]]
kind = "unmixed"
family = "qxq"
exhaustive = true
n = 2

[[task]]
kind = "unmixed"
family = "qxq"
vars = ["X1", "X2", "X3"]
gens = ["X1", "X2"]

[[task]]
kind = "unmixed"
family = "qxq"
vars = ["X1", "X2"]
gens = ["X1^2", "X1*X2"]
expect = "NotHeightGenerated"

[[task]]
kind = "grade"
family = "qxq"
exhaustive = true
n = 2

[[task]]
kind = "grade"
family = "qxq"
vars = ["X1", "X2", "X3"]
gens = ["X1*X2", "X1*X3", "X2*X3"]

[[task]]
kind = "replace"
family = "qxq"
vars = ["X1", "X2"]
gens = ["e0*X1", "e1*X1"]

[[task]]
kind = "chain"
vars = ["X1", "X2"]

[[task]]
kind = "sft"
ideals = [["z0"], ["z0", "z1", "z2", "z3", "z4"], ["z0*z1"]]
k_max = 6

[[task]]
kind = "wb"
s = 4
trunc = 6
samples = 50

[[task]]
kind = "non-noetherian"
t = 6
"""

BUILTIN_SCENARIOS = {"paper-suite": PAPER_SUITE}


def list_builtins() -> Dict[str, List[str]]:
    return {
        "families": sorted(BUILTIN_FAMILIES),
        "scenarios": sorted(BUILTIN_SCENARIOS),
    }
