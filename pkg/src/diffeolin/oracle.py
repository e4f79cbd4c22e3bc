"""Floating-point smoothness classifier based on central divided differences.

Independent of the symbolic side: a function R -> R is probed at dyadic
nodes around 0 with a geometric sweep of half-widths.  If the order-k
divided differences grow steadily without bound as the scale shrinks, the
function is declared non-smooth with failing order k (the smallest such k).

A kink |x|*x^d first shows up at order d + 2, where the divided differences
grow like 1/h (ratio 2 per halving).  Plain double precision cannot follow
that growth at high orders: the k-th difference amplifies input rounding by
2^k / h^k.  Two defences are used, both deterministic:

* values below a worst-case rounding floor are ignored (the floor uses the
  largest stencil value, the binomial weight sum and the machine epsilon);
* for orders above ``exact_order_threshold`` the stencil is accumulated in
  exact rational arithmetic whenever the probed object supports exact
  evaluation (the nodes are dyadic rationals), so the growth ratios carry
  no rounding noise at all.  Plain callables always take the float path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from .atoms import FunctionExpr

Probe = Union[FunctionExpr, Callable[[float], float]]

_EPS = 2.0**-52


@dataclass(frozen=True)
class OracleConfig:
    max_order: int = 8
    half_widths: tuple[float, ...] = tuple(2.0**-i for i in range(2, 21))
    growth_threshold: float = 10.0
    agreement_policy: int = 3
    # Calibrated on the atom basis: a diverging order grows by at least x2
    # per halving, a converging one settles to ratio 1.
    step_growth: float = 1.5
    noise_guard: float = 64.0
    exact_order_threshold: int = 5

    def __post_init__(self) -> None:
        if self.max_order < 2:
            raise ValueError("max_order must be >= 2")
        if self.growth_threshold <= 0 or self.step_growth <= 1:
            raise ValueError("growth thresholds must be positive")
        if self.agreement_policy < 1:
            raise ValueError("agreement_policy must be >= 1")


DEFAULT_CONFIG = OracleConfig()


@dataclass(frozen=True)
class Classification:
    """Outcome of a smoothness probe.

    ``failing_order`` is None for a function that looks C-infinity up to
    ``checked_order``; otherwise it is the smallest diverging order, with
    the scale/value pair where divergence was confirmed.
    """

    failing_order: int | None
    checked_order: int
    scale: float | None = None
    value: float | None = None

    @property
    def smooth(self) -> bool:
        return self.failing_order is None

    def label(self) -> str:
        if self.smooth:
            return "CInfinityLikely"
        return f"NonSmoothAt0(order {self.failing_order})"


def _stencil(order: int, h: float) -> list[tuple[int, float]]:
    # Central nodes (order/2 - j) * h, exact dyadics for dyadic h.
    return [
        ((-1) ** j * math.comb(order, j), (order / 2 - j) * h)
        for j in range(order + 1)
    ]


class _Overflow(Exception):
    pass


def _float_difference(f: Callable[[float], float], order: int, h: float) -> tuple[float, float]:
    """(|divided difference|, rounding floor) for a float-only probe."""
    terms = []
    fmax = 0.0
    for w, x in _stencil(order, h):
        try:
            value = f(x)
        except OverflowError as exc:
            raise _Overflow from exc
        if math.isinf(value) or math.isnan(value):
            raise _Overflow
        fmax = max(fmax, abs(value))
        terms.append(w * value)
    quotient = math.fsum(terms) / h**order
    if math.isinf(quotient) or math.isnan(quotient):
        raise _Overflow
    floor = _EPS * fmax * (2.0**order) / h**order
    return abs(quotient), floor


def _exact_difference(f: FunctionExpr, order: int, h: float) -> float:
    acc = Fraction(0)
    step = Fraction(h)
    for w, x in _stencil(order, 1.0):
        acc += w * f.evaluate(Fraction(x) * step)
    return abs(float(acc / step**order))


def _diverges(values: Sequence[tuple[float, bool]], cfg: OracleConfig) -> int | None:
    """Index where a sustained divergent run is confirmed, else None.

    A run is ``agreement_policy`` or more consecutive usable scale steps each
    growing by ``step_growth``, with total growth at least
    ``growth_threshold`` across the maximal run.
    """
    run_start = None
    for i in range(1, len(values)):
        v_prev, ok_prev = values[i - 1]
        v_cur, ok_cur = values[i]
        growing = ok_prev and ok_cur and v_cur >= cfg.step_growth * v_prev
        if growing:
            if run_start is None:
                run_start = i - 1
            run_len = i - run_start
            total = v_cur / values[run_start][0]
            if run_len >= cfg.agreement_policy and total >= cfg.growth_threshold:
                return i
        else:
            run_start = None
    return None


def classify(f: Probe, cfg: OracleConfig = DEFAULT_CONFIG) -> Classification:
    """Probe ``f`` for non-smooth behaviour at 0.

    Returns the smallest order whose divided differences diverge under the
    sweep of half-widths; numerical overflow at some order counts as
    divergence at that order.
    """
    exact = isinstance(f, FunctionExpr)
    evaluator = f.evaluate_float if exact else f
    for order in range(1, cfg.max_order + 1):
        use_exact = exact and order > cfg.exact_order_threshold
        values: list[tuple[float, bool]] = []
        overflow_at = None
        for h in cfg.half_widths:
            if use_exact:
                v = _exact_difference(f, order, h)  # type: ignore[arg-type]
                values.append((v, v != 0.0))
                continue
            try:
                v, floor = _float_difference(evaluator, order, h)
            except _Overflow:
                overflow_at = h
                break
            values.append((v, v > cfg.noise_guard * floor))
        if overflow_at is not None:
            return Classification(order, order, overflow_at, math.inf)
        hit = _diverges(values, cfg)
        if hit is not None:
            return Classification(order, order, cfg.half_widths[hit], values[hit][0])
    return Classification(None, cfg.max_order)


# --- cross validation against the symbolic side ---------------------------

@dataclass(frozen=True)
class TrialRecord:
    expression: str
    classification: Classification
    symbolic_smooth: bool

    @property
    def agree(self) -> bool:
        return self.classification.smooth == self.symbolic_smooth


@dataclass(frozen=True)
class AgreementReport:
    space: str
    functional: tuple[Fraction, ...]
    map_verdict: str
    records: tuple[TrialRecord, ...]
    skipped: bool = False

    @property
    def trials(self) -> int:
        return len(self.records)

    @property
    def disagreements(self) -> tuple[TrialRecord, ...]:
        return tuple(r for r in self.records if not r.agree)

    @property
    def agreement_rate(self) -> float:
        if not self.records:
            return 1.0
        return 1.0 - len(self.disagreements) / len(self.records)

    @property
    def consistent(self) -> bool:
        """The map-level verdict matches the sampled evidence: a Smooth map
        never produces a symbolically non-smooth composition, a NotSmooth map
        produces at least one."""
        if self.skipped:
            return True
        nonsmooth_seen = any(not r.symbolic_smooth for r in self.records)
        if self.map_verdict == "Smooth":
            return not nonsmooth_seen
        if self.map_verdict == "NotSmooth":
            return nonsmooth_seen
        return True


def cross_validate(
    space,
    functional: Sequence,
    trials: int = 20,
    cfg: OracleConfig = DEFAULT_CONFIG,
    seed: int = 0,
):
    """Sample plots of the space, compose with the functional and compare the
    numeric classification with the symbolic answer.

    Generated spaces sample vector-space combinations lambda(x) * p(c * x) + s(x)
    of the generators (polynomial lambda, rational c, smooth s), always
    starting with the bare generators.  Fine spaces sample smooth plots.
    Coarse spaces are skipped: there is no faithful sampled representation.
    """
    import random

    from .exprparse import format_expr
    from .hom import LinearMap, is_smooth_linear
    from .linalg import vector
    from .spaces import Coarse, Fine, Generated, make_fine

    phi = vector(functional)
    if len(phi) != space.dim:
        raise ValueError("functional length must equal the space dimension")
    desc = space.diffeology
    functional_map = LinearMap(space, make_fine(1), (phi,))
    verdict = is_smooth_linear(functional_map).value

    if isinstance(desc, Coarse):
        return AgreementReport(space.describe(), phi, verdict, (), skipped=True)
    if not isinstance(desc, (Fine, Generated)):
        raise ValueError("cross validation supports fine, coarse and generated spaces")

    rng = random.Random(seed)

    def random_poly(max_degree: int = 3) -> FunctionExpr:
        out = FunctionExpr.zero()
        for d in range(max_degree + 1):
            c = rng.randint(-3, 3)
            if c:
                out = out + FunctionExpr.monomial(d, c)
        return out

    generators = desc.generators if isinstance(desc, Generated) else ()
    scales = [Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
              Fraction(1, 2), Fraction(-1, 2), Fraction(3)]

    samples: list[list[FunctionExpr]] = []
    for g in generators:
        samples.append(list(g.components))
    while len(samples) < trials:
        comps = [FunctionExpr.zero()] * space.dim
        for g in generators:
            if generators and rng.random() < 0.75:
                lam = random_poly()
                c = rng.choice(scales)
                for k, comp in enumerate(g.components):
                    comps[k] = comps[k] + lam * comp.compose_scale(c)
        smooth_part = [random_poly(2) for _ in range(space.dim)]
        comps = [a + b for a, b in zip(comps, smooth_part)]
        samples.append(comps)

    records = []
    for comps in samples[:trials]:
        composed = FunctionExpr.zero()
        for coeff, comp in zip(phi, comps):
            if coeff:
                composed = composed + comp.scale(coeff)
        records.append(
            TrialRecord(
                format_expr(composed),
                classify(composed, cfg),
                composed.is_smooth(),
            )
        )
    return AgreementReport(space.describe(), phi, verdict, tuple(records))
