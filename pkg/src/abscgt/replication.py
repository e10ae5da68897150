"""Named verification checks and their JSON reports.

Each check builds concrete instances of a published claim, solves them
exactly and records one detail row per solved position.  A row stores the
position in the text notation together with the quantity that was computed,
so :func:`replay_row` can re-derive the ``computed`` column from the text
alone.

Quantities are written ``name[arg]=value``:

* ``o[conv]`` -- outcome class, ``o_L[conv]`` / ``o_R[conv]`` -- winner when
  Left / Right starts;
* ``equal[universe;other]`` -- bounded equality verdict against ``other``;
* ``kernel_missing[b]`` / ``kernel_extra[b]`` -- dicots of birthday ``b``
  missing from the closure of ``{0}``, and non-dicots present in it.
"""

from __future__ import annotations

import json
import random
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .errors import GameError, ResourceError
from .forms import Arena, FormId, powerset
from .notation import parse, render
from .order import adjoint_cap, equal_bounded
from .sampling import random_form, sample_members
from .solvers import Outcome, PartialOutcome, Side, outcome, outcome_partial
from .universes import Budget, classify_form, closure_enumerate, left_ends, parse_universe


@dataclass(frozen=True)
class DetailRow:
    input: str
    expected: str
    computed: str
    provenance: str

    @property
    def ok(self) -> bool:
        return self.expected == self.computed

    def as_dict(self) -> dict[str, str]:
        return {
            "input": self.input,
            "expected": self.expected,
            "computed": self.computed,
            "provenance": self.provenance,
        }


@dataclass
class CheckReport:
    check_id: str
    params: dict
    status: str
    details: list[DetailRow]
    elapsed_ms: int
    error: str | None = field(default=None, compare=False)

    def as_dict(self, timing: bool = True) -> dict:
        return {
            "check_id": self.check_id,
            "params": self.params,
            "status": self.status,
            "details": [row.as_dict() for row in self.details],
            "elapsed_ms": self.elapsed_ms if timing else 0,
        }

    def to_json(self, timing: bool = True, indent: int | None = 2) -> str:
        return json.dumps(self.as_dict(timing), indent=indent, sort_keys=True, ensure_ascii=False)

    @property
    def failures(self) -> list[DetailRow]:
        return [row for row in self.details if not row.ok]


# ---------------------------------------------------------------------------
# quantities


def _budget(params: dict) -> Budget:
    return Budget(
        params.get("max_birthday", 3),
        params.get("max_summands", 3),
        params.get("max_forms", 100_000),
    )


def _value(arena: Arena, name: str, arg: str, g: FormId, params: dict) -> str:
    if name == "o":
        return outcome(arena, g, arg).value
    if name == "o_L":
        return outcome_partial(arena, g, Side.LEFT, arg).name
    if name == "o_R":
        return outcome_partial(arena, g, Side.RIGHT, arg).name
    if name == "equal":
        token, _, other = arg.partition(";")
        verdict = equal_bounded(arena, parse_universe(token), g, parse(other, arena), _budget(params))
        return verdict.kind.value
    if name in ("kernel_missing", "kernel_extra"):
        missing, extra = _kernel_counts(arena, params)
        counts = missing if name == "kernel_missing" else extra
        return str(counts.get(int(arg), 0))
    raise ValueError(f"unknown quantity {name!r}")


def evaluate(arena: Arena, quantity: str, g: FormId, params: dict) -> str:
    name, _, arg = quantity.partition("[")
    return f"{quantity}={_value(arena, name, arg.rstrip(']'), g, params)}"


def replay_row(row: DetailRow, params: dict, arena: Arena | None = None) -> str:
    """Recompute the ``computed`` column of ``row`` from its text alone."""
    arena = arena or Arena()
    quantity = row.expected.rpartition("=")[0]
    return evaluate(arena, quantity, parse(row.input, arena), params)


class _Context:
    def __init__(self, arena: Arena, params: dict):
        self.arena = arena
        self.params = params
        self.rows: list[DetailRow] = []
        self.status_if_ok = "pass"

    def text(self, g: FormId) -> str:
        return render(g, self.arena)

    def add(self, g: FormId, text: str, quantity: str, expected: str, provenance: str = "claim") -> bool:
        computed = evaluate(self.arena, quantity, g, self.params)
        row = DetailRow(text, f"{quantity}={expected}", computed, provenance)
        self.rows.append(row)
        return row.ok

    def p(self, text: str) -> FormId:
        return parse(text, self.arena)

    def rng(self) -> random.Random:
        return random.Random(self.params.get("seed", 0))


def _join(*parts: str) -> str:
    return "+".join(parts)


# ---------------------------------------------------------------------------
# checks


def _thm8_outcomes(ctx: _Context) -> None:
    """Outcomes separating {0,1|} from the sums of 1."""
    cases = [("0", "N"), ("{0,1|}", "R"), ("{0,1|}+{0|*}", "L"), ("1+{0|*}", "P"), ("1+1+{0|*}", "N")]
    for m in range(3, ctx.params["max_summands"] + 1):
        cases.append((_join(*["1"] * m, "{0|*}"), "R"))
    for text, expected in cases:
        ctx.add(ctx.p(text), text, "o[misere]", expected)


def _lemma15(ctx: _Context) -> None:
    """Left wins n + ostar(k) moving second exactly when n == k."""
    for n in range(1, ctx.params["N"] + 1):
        for k in range(0, ctx.params["K"] + 1):
            text = f"{n}+ostar({k})"
            ctx.add(ctx.p(text), text, "o_R[misere]", "L" if n == k else "R")


def _ostar_cap(n: int) -> str:
    return "{*|%s}" % ",".join(f"ostar({k})" for k in range(n + 2))


def _thm16(ctx: _Context) -> None:
    """A tower witness separates hat(n+2) from the Right-atomic members of Sbar:n."""
    arena = ctx.arena
    rng = ctx.rng()
    for n in ctx.params["ns"]:
        x_text = _ostar_cap(n)
        x = ctx.p(x_text)
        target = arena.hat(n + 2)
        ctx.add(arena.sum(target, x), _join(f"hat({n + 2})", x_text), "o_R[misere]", "L")
        for size in range(1, ctx.params["max_summands"] + 1):
            for ks in combinations_with_replacement(range(1, n + 2), size):
                text = _join(*(f"hat({k})" for k in ks), x_text)
                ctx.add(ctx.p(text), text, "o_R[misere]", "R")
        spec = parse_universe(f"Sbar:{n}")

        def right_outcome_non_atomic(g: FormId) -> bool:
            return not arena.is_right_atomic(g) and outcome(arena, g) is Outcome.R

        for g in sample_members(arena, spec, rng, ctx.params["samples"], right_outcome_non_atomic):
            x = arena.intern([adjoint_cap(arena, g)], [arena.ostar(k) for k in range(n + 2)])
            x_text = ctx.text(x)
            ctx.add(arena.sum(g, x), _join(ctx.text(g), x_text), "o_R[misere]", "R", "sampled")
            ctx.add(arena.sum(target, x), _join(f"hat({n + 2})", x_text), "o_R[misere]", "L", "sampled")


def _copies(arena: Arena, g: FormId, j: int) -> FormId:
    return arena.sum_all([g] * j)


def _auto_copies(arena: Arena, g: FormId, hook: FormId, cap: int) -> int:
    """Smallest j with Left losing g + j*hook moving first (cap if none)."""
    for j in range(1, cap + 1):
        if outcome_partial(arena, arena.sum(g, _copies(arena, hook, j)), Side.LEFT) is PartialOutcome.R:
            return j
    return cap


def _hook_copies_rows(ctx: _Context, target_text: str, forms: list[FormId]) -> None:
    arena = ctx.arena
    hook = arena.zeta(2)
    target = ctx.p(target_text)
    for g in forms:
        j = _auto_copies(arena, g, hook, ctx.params["max_copies"])
        copies = ["zeta(2)"] * j
        ctx.add(arena.sum(g, _copies(arena, hook, j)), _join(ctx.text(g), *copies), "o_L[misere]", "R", "derived")
        ctx.add(arena.sum(target, _copies(arena, hook, j)), _join(target_text, *copies), "o_L[misere]", "L", "derived")


def _thm18(ctx: _Context) -> None:
    """{|2} against Left-ends, sampled N-positions of E, and {|3} against Zbar:2."""
    arena = ctx.arena
    rng = ctx.rng()
    x_text = "{-1|0}"
    x = ctx.p(x_text)
    ctx.add(arena.sum(ctx.p("{|2}"), x), _join("{|2}", x_text), "o_L[misere]", "R")
    for end in left_ends(arena, ctx.params["max_birthday"]):
        ctx.add(arena.sum(end, x), _join(ctx.text(end), x_text), "o_L[misere]", "L")

    e = parse_universe("E")

    def next_player_non_left_atomic(g: FormId) -> bool:
        return not arena.is_left_atomic(g) and outcome(arena, g) is Outcome.N

    _hook_copies_rows(ctx, "{|2}", sample_members(arena, e, rng, ctx.params["samples"], next_player_non_left_atomic))

    z2 = parse_universe("Zbar:2")
    three = ctx.p("{|3}")
    for g in sample_members(arena, z2, rng, ctx.params["third_samples"], lambda f: outcome(arena, f) is Outcome.N):
        tail = arena.intern([arena.adjoint(f) for f in arena.followers(g)], [0])
        for n in range(2, ctx.params["max_n"] + 1):
            hook = arena.intern([arena.intern([arena.moves(-n)], [])], [])
            x = arena.intern([arena.moves(-2), hook], [tail])
            if outcome_partial(arena, arena.sum(g, x), Side.LEFT) is PartialOutcome.L:
                break
        x_text = ctx.text(x)
        ctx.add(arena.sum(g, x), _join(ctx.text(g), x_text), "o_L[misere]", "L", "derived")
        ctx.add(arena.sum(three, x), _join("{|3}", x_text), "o_L[misere]", "R", "derived")


def _lemma20(ctx: _Context) -> None:
    """Right's first-player win on G - n carries over to two perturbations."""
    held = 0
    for k in ctx.params["ks"]:
        for orders in combinations_with_replacement(ctx.params["orders"], k):
            hooks = [f"zeta({m})" for m in orders]
            for n in range(1, ctx.params["N"] + 1):
                premise = _join(*hooks, f"-{n}")
                g = ctx.p(premise)
                if outcome_partial(ctx.arena, g, Side.RIGHT) is not PartialOutcome.R:
                    continue
                held += 1
                ctx.add(g, premise, "o_R[misere]", "R", "derived")
                first = _join(*hooks, f"-{n + 1}", "*")
                ctx.add(ctx.p(first), first, "o_R[misere]", "R")
                second = _join(*hooks, "{-%d+*|0}" % (n + 1))
                ctx.add(ctx.p(second), second, "o_R[misere]", "R")
    ctx.params["premise_held"] = held


def _thm23(ctx: _Context) -> None:
    """zeta(n+1) against sums of smaller hooks and sampled members of Zbar:n."""
    arena = ctx.arena
    rng = ctx.rng()
    for n in ctx.params["ns"]:
        target = f"zeta({n + 1})"
        minus = f"-{n}"
        alt = "{-%d+*|0}" % (n + 1)
        for size in range(1, ctx.params["max_summands"] + 1):
            for orders in combinations_with_replacement(range(2, n + 1), size):
                hooks = [f"zeta({m})" for m in orders]
                z_minus = _join(*hooks, minus)
                right_loses = outcome_partial(arena, ctx.p(z_minus), Side.RIGHT) is PartialOutcome.L
                if size == 1 or right_loses:
                    provenance = "claim" if size == 1 else "derived"
                    ctx.add(ctx.p(z_minus), z_minus, "o_R[misere]", "L", provenance)
                    ctx.add(ctx.p(_join(target, minus)), _join(target, minus), "o_R[misere]", "R")
                else:
                    text = _join(*hooks, alt)
                    ctx.add(ctx.p(text), text, "o_R[misere]", "R")
                    ctx.add(ctx.p(_join(target, alt)), _join(target, alt), "o_R[misere]", "L")
        spec = parse_universe(f"Zbar:{n}")

        def next_player_with_left_option(g: FormId) -> bool:
            return bool(arena.left(g)) and outcome(arena, g) is Outcome.N

        _hook_copies_rows(ctx, target, sample_members(arena, spec, rng, ctx.params["samples"], next_player_with_left_option))


def _np_simplicity(ctx: _Context) -> None:
    """{0|k} equals 1 in normal play."""
    for k in ctx.params["ks"]:
        form = "{0|%d}" % k
        ge = _join(form, "-1")
        le = _join("1", f"conj({form})")
        ctx.add(ctx.p(ge), ge, "o_R[normal]", "L")
        ctx.add(ctx.p(le), le, "o_R[normal]", "L")


def _adjoint_p(ctx: _Context) -> None:
    """g + adjoint(g) is a previous-player win."""
    arena = ctx.arena
    rng = ctx.rng()
    forms = arena.all_forms(ctx.params["exhaustive_birthday"])
    provenance = ["claim"] * len(forms)
    for _ in range(ctx.params["samples"]):
        forms.append(random_form(arena, rng, ctx.params["sample_birthday"]))
        provenance.append("sampled")
    for g, tag in zip(forms, provenance):
        text = ctx.text(g)
        ctx.add(arena.sum(g, arena.adjoint(g)), f"{text}+adj({text})", "o[misere]", "P", tag)


def _observation_e1(ctx: _Context) -> None:
    """{|1} is indistinguishable from 0 once {|1} is adjoined to E."""
    ctx.add(ctx.p("{|1}"), "{|1}", "equal[Hook:1;0]", "HoldsAtBound")
    ctx.status_if_ok = "unknown"


def dicots_up_to(arena: Arena, max_birthday: int) -> list[FormId]:
    """Every dicot of birthday at most ``max_birthday``, by direct construction."""
    level = [0]
    for _ in range(max_birthday):
        subsets = [s for s in powerset(level) if s]
        level = [0] + [arena.intern(a, b) for a in subsets for b in subsets]
    return sorted(set(level))


def _kernel_counts(arena: Arena, params: dict) -> tuple[dict[int, int], dict[int, int]]:
    key = (params["days"], params["max_birthday"], params["max_forms"])
    table = arena.cache("kernel_counts")
    if key not in table:
        budget = Budget(params["max_birthday"], 1, params["max_forms"])
        closure = closure_enumerate(arena, [0], params["days"], budget, max_option_set=None)
        missing: dict[int, int] = {}
        for g in dicots_up_to(arena, params["max_birthday"]):
            if g not in closure.forms:
                missing[arena.birthday(g)] = missing.get(arena.birthday(g), 0) + 1
        extra: dict[int, int] = {}
        for g in closure.forms:
            if not classify_form(arena, g).dicot:
                extra[arena.birthday(g)] = extra.get(arena.birthday(g), 0) + 1
        table[key] = (missing, extra)
    return table[key]


def _dicot_kernel(ctx: _Context) -> None:
    """The closure of {0} is exactly the dicots, day by day."""
    zero = 0
    for b in range(ctx.params["max_birthday"] + 1):
        ctx.add(zero, "0", f"kernel_missing[{b}]", "0")
        ctx.add(zero, "0", f"kernel_extra[{b}]", "0")


CHECKS: dict[str, tuple[Callable[[_Context], None], dict]] = {
    "thm8_outcomes": (_thm8_outcomes, {"max_summands": 3}),
    "lemma15": (_lemma15, {"N": 6, "K": 6}),
    "thm16": (_thm16, {"ns": [0, 1, 2], "max_summands": 3, "samples": 5, "seed": 0}),
    "thm18": (
        _thm18,
        {"max_birthday": 3, "samples": 10, "third_samples": 5, "max_copies": 24, "max_n": 16, "seed": 0},
    ),
    "lemma20": (_lemma20, {"ks": [2, 3], "orders": [2, 3], "N": 5}),
    "thm23": (_thm23, {"ns": [2, 3], "max_summands": 2, "samples": 5, "max_copies": 24, "seed": 0}),
    "np_simplicity": (_np_simplicity, {"ks": [2, 3, 4, 5]}),
    "adjoint_P": (_adjoint_p, {"exhaustive_birthday": 2, "samples": 500, "sample_birthday": 4, "seed": 0}),
    "observation_e1": (_observation_e1, {"max_birthday": 3, "max_summands": 3, "max_forms": 100_000}),
    "dicot_kernel": (_dicot_kernel, {"days": 3, "max_birthday": 3, "max_forms": 2_000_000}),
}


def verify(check_id: str, params: dict | None = None, arena: Arena | None = None) -> CheckReport:
    """Run the named check; resource exhaustion is reported, never raised."""
    if check_id not in CHECKS:
        raise KeyError(f"unknown check {check_id!r}; known: {', '.join(sorted(CHECKS))}")
    func, defaults = CHECKS[check_id]
    unknown = set(params or ()) - set(defaults)
    if unknown:
        raise KeyError(f"unknown parameters for {check_id}: {', '.join(sorted(unknown))}")
    merged = {**defaults, **(params or {})}
    ctx = _Context(arena or Arena(), merged)
    start = time.perf_counter()
    error = None
    try:
        func(ctx)
    except (ResourceError, GameError) as exc:
        error = f"{type(exc).__name__}: {exc}"
    elapsed = int((time.perf_counter() - start) * 1000)
    if error is not None:
        ctx.rows.append(DetailRow("", "completed", error, "budget"))
        status = "unknown"
    elif all(row.ok for row in ctx.rows):
        status = ctx.status_if_ok
    else:
        status = "fail"
    return CheckReport(check_id, merged, status, ctx.rows, elapsed, error)
