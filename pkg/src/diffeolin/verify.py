"""One-shot verification suite.

Each check replays one headline identity or counterexample of the theory at
desk scale and returns a pass/fail result.  The suite is deterministic: all
randomised checks run from a fixed seed, and every expected value is either
exact or pinned.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .atoms import FunctionExpr, abs_mono, mono
from .bilinear import (
    curried_is_smooth,
    curry,
    form_from_flat,
    is_smooth_bilinear,
    smooth_bilinear_basis,
    uncurry,
)
from .hom import (
    LinearMap,
    check_smooth_linear,
    diffeological_dual,
    dual_map,
    hat_dual,
    hat_dual_wellposed,
    identity_map,
    is_smooth_linear,
)
from .linalg import (
    Matrix,
    identity,
    invert,
    matmul,
    nullspace,
    transpose,
    zero_vector,
)
from .oracle import classify
from .spaces import (
    DiffSpace,
    DiffeolinError,
    Plot,
    Verdict,
    is_plot,
    kink_plot,
    make_coarse,
    make_fine,
    make_generated,
    singular_span,
)
from .spacefile import SpaceFile
from .tensor import (
    distribute,
    endo_remark_check,
    hat_f,
    hat_g,
    inverse_map,
    tensor_dual_iso,
    tensor_product,
)

VERIFY_SEED = 74207281


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


def _timed(name, fn) -> CheckResult:
    start = time.perf_counter()
    try:
        passed, detail = fn()
    except DiffeolinError as exc:
        passed, detail = False, f"error: {exc}"
    return CheckResult(name, passed, detail, time.perf_counter() - start)


# --- sampling helpers ------------------------------------------------------

def _random_rational(rng: random.Random, lo: int = -5, hi: int = 5) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 3))


def _random_matrix(rng: random.Random, rows: int, cols: int) -> Matrix:
    return tuple(
        tuple(_random_rational(rng) for _ in range(cols)) for _ in range(rows)
    )


def _random_invertible(rng: random.Random, n: int) -> Matrix:
    while True:
        m = _random_matrix(rng, n, n)
        if invert(m) is not None:
            return m


def _kink_space(n: int, k: int) -> DiffSpace:
    """Generated space on R^n with kink generators on the first k basis vectors."""
    return make_generated(n, [kink_plot(n, i) for i in range(k)])


def _random_space(rng: random.Random, max_dim: int, kinds=("fine", "coarse", "generated")):
    kind = rng.choice(kinds)
    n = rng.randint(1, max_dim)
    if kind == "fine":
        return make_fine(n)
    if kind == "coarse":
        return make_coarse(n)
    return _kink_space(n, rng.randint(1, n))


def _random_smooth_plot(rng: random.Random, n: int) -> Plot:
    comps = []
    for _ in range(n):
        expr = FunctionExpr.zero()
        for d in range(3):
            c = rng.randint(-2, 2)
            if c:
                expr = expr + FunctionExpr.monomial(d, c)
        comps.append(expr)
    return Plot(comps)


def _random_smooth_map(rng: random.Random, domain: DiffSpace, codomain: DiffSpace) -> LinearMap:
    """A map guaranteed Smooth: coarse codomains take anything, otherwise
    every matrix row annihilates the singular span of the domain."""
    from .spaces import Coarse

    if isinstance(codomain.diffeology, Coarse):
        return LinearMap(domain, codomain, _random_matrix(rng, codomain.dim, domain.dim))
    ann = singular_span(domain).annihilator()
    rows = []
    for _ in range(codomain.dim):
        row = zero_vector(domain.dim)
        for basis_row in ann.basis:
            c = _random_rational(rng)
            row = tuple(x + c * y for x, y in zip(row, basis_row))
        rows.append(row)
    return LinearMap(domain, codomain, tuple(rows))


# --- criterion 1: dual dimensions -----------------------------------------

def check_dual_dimensions() -> tuple[bool, str]:
    failures = []
    for n in range(1, 6):
        if diffeological_dual(make_coarse(n)).dim != 0:
            failures.append(f"coarse R^{n}")
        if diffeological_dual(make_fine(n)).dim != n:
            failures.append(f"fine R^{n}")
        for k in range(1, n):
            if diffeological_dual(_kink_space(n, k)).dim != n - k:
                failures.append(f"{k}-kink R^{n}")
    # Fine self-duality: the coordinate pairing is a smooth bijection with a
    # smooth inverse whenever every linear functional is smooth.
    for n in range(1, 5):
        v = make_fine(n)
        dual = diffeological_dual(v)
        pairing = LinearMap(v, dual, identity(n))
        inverse = LinearMap(dual, v, identity(n))
        if is_smooth_linear(pairing) is not Verdict.SMOOTH:
            failures.append(f"pairing fine R^{n}")
        if is_smooth_linear(inverse) is not Verdict.SMOOTH:
            failures.append(f"pairing inverse fine R^{n}")
    if failures:
        return False, "wrong dual dimensions: " + ", ".join(failures)
    return True, "coarse duals 0, fine duals n (self-dual), k kinks drop dim by k, n <= 5"


# --- criterion 2: bilinear vanishing ---------------------------------------

def check_bilinear_vanishing() -> tuple[bool, str]:
    line = make_fine(1)
    dims = [smooth_bilinear_basis(make_coarse(n), line).dim for n in (2, 3, 4)]
    if dims != [0, 0, 0]:
        return False, f"expected all zero, got {dims}"
    return True, "no nonzero smooth bilinear map from a coarse space to the line"


# --- criterion 3: curry correspondence --------------------------------------

def _uncurried_smooth_dim(v: DiffSpace, w: DiffSpace) -> int:
    """dim {G : V -> L(V, W) linear, uncurry(G) smooth}, counted through the
    linear constraints imposed by the singular span (independent of the
    smooth_bilinear_basis computation)."""
    n, q = v.dim, w.dim
    total = n * q * n  # blocks[i][k][j] flattened
    span = singular_span(v).basis
    constraints = []
    for s in span:
        for k in range(q):
            for j in range(n):
                row = [Fraction(0)] * total
                for i, si in enumerate(s):
                    row[(i * q + k) * n + j] = si
                constraints.append(tuple(row))
        for i in range(n):
            for k in range(q):
                row = [Fraction(0)] * total
                for j, sj in enumerate(s):
                    row[(i * q + k) * n + j] = sj
                constraints.append(tuple(row))
    if not constraints:
        return total
    return len(nullspace(tuple(constraints), total))


def check_curry_correspondence() -> tuple[bool, str]:
    rng = random.Random(VERIFY_SEED + 3)
    spaces = []
    for n in (1, 2, 3):
        for k in range(0, min(n, 2) + 1):
            for indices in itertools.combinations(range(n), k):
                spaces.append(make_generated(n, [kink_plot(n, i) for i in indices]))
    targets = [make_fine(1), make_fine(2)]
    checked = 0
    for v in spaces:
        for w in targets:
            basis = smooth_bilinear_basis(v, w)
            if basis.dim != _uncurried_smooth_dim(v, w):
                return False, f"dimension mismatch on {v.describe()} -> {w.describe()}"
            n, q = v.dim, w.dim
            for _ in range(100):
                flat = [_random_rational(rng) for _ in range(n * n * q)]
                b = form_from_flat(v, v, w, flat)
                verdict = is_smooth_bilinear(b)
                if verdict is Verdict.SMOOTH:
                    g = curry(b)
                    if uncurry(g) != b:
                        return False, "uncurry(curry(b)) != b"
                    if curried_is_smooth(g) is not Verdict.SMOOTH:
                        return False, "curried side lost the Smooth verdict"
                    if curry(uncurry(g)).blocks != g.blocks:
                        return False, "curry(uncurry(G)) != G"
                else:
                    try:
                        curry(b)
                        return False, "curry accepted a NotSmooth form"
                    except DiffeolinError:
                        pass
                    g = curry(form_from_flat(v, v, w, [Fraction(0)] * (n * n * q)))
                    if curried_is_smooth(g) is not Verdict.SMOOTH:
                        return False, "zero form not smooth"
                checked += 1
    return True, f"{checked} forms over {len(spaces)} spaces round-trip with verdicts preserved"


# --- criterion 4: dual map smoothness ---------------------------------------

def check_dual_map_smoothness() -> tuple[bool, str]:
    rng = random.Random(VERIFY_SEED + 4)
    for trial in range(200):
        v = _random_space(rng, 4)
        w = _random_space(rng, 4)
        f = identity_map(v) if rng.random() < 0.1 else _random_smooth_map(rng, v, w)
        if is_smooth_linear(f) is not Verdict.SMOOTH:
            return False, f"sampled map not Smooth at trial {trial}"
        try:
            star = dual_map(f)
        except DiffeolinError as exc:
            return False, f"dual map failed at trial {trial}: {exc}"
        if star.domain.dim != diffeological_dual(f.codomain).dim:
            return False, "dual map domain dimension wrong"
    # Counterexample: with the pushforward ("hat") dual the transpose of a
    # smooth map need not be smooth.
    for n in (2, 3):
        fine_n, coarse_n = make_fine(n), make_coarse(n)
        f = LinearMap(fine_n, coarse_n, identity(n))
        if is_smooth_linear(f) is not Verdict.SMOOTH:
            return False, "map into coarse space must be smooth"
        hat_w = hat_dual(coarse_n, identity(n))
        hat_v = hat_dual(fine_n, identity(n))
        star = LinearMap(hat_w, hat_v, transpose(f.matrix))
        report = check_smooth_linear(star)
        if report.verdict is not Verdict.NOT_SMOOTH:
            return False, f"hat-dual transpose not flagged for n={n}"
        witness = report.witness
        if witness is None:
            return False, "missing witness plot"
        if is_plot(hat_w, witness) is not Verdict.SMOOTH:
            return False, "witness is not a plot of the domain"
        if is_plot(hat_v, witness.transform(star.matrix)) is not Verdict.NOT_SMOOTH:
            return False, "witness image is unexpectedly a plot"
    return True, "200 smooth maps dualise with containment; hat-dual transpose flagged with witness"


# --- criterion 5: tensor dual multiplicativity ------------------------------

def _grid_spaces() -> list[DiffSpace]:
    spaces = []
    for n in (1, 2, 3):
        spaces.append(make_fine(n))
        spaces.append(make_coarse(n))
        if n >= 1:
            spaces.append(_kink_space(n, 1))
        if n >= 2:
            spaces.append(_kink_space(n, 2))
    return spaces


def check_tensor_dual_multiplicativity() -> tuple[bool, str]:
    cells = 0
    for v, w in itertools.product(_grid_spaces(), repeat=2):
        expected = diffeological_dual(v).dim * diffeological_dual(w).dim
        actual = diffeological_dual(tensor_product(v, w)).dim
        if actual != expected:
            return False, (
                f"dim (V (x) W)* = {actual} != {expected} for "
                f"{v.describe()} (x) {w.describe()}"
            )
        iso = tensor_dual_iso(v, w)
        if not iso.isomorphism:
            return False, f"dual map not an isomorphism on {v.describe()} (x) {w.describe()}"
        cells += 1
    return True, f"dim (V (x) W)* = dim V* * dim W* with an isomorphism on {cells} grid cells"


# --- criterion 6: non-isomorphism reproductions -----------------------------

def check_non_isomorphisms() -> tuple[bool, str]:
    v, w = make_coarse(2), make_fine(1)
    f_cmp = hat_f(v, w)
    if (f_cmp.tensor_dim, f_cmp.hom_dim) != (2, 0) or f_cmp.isomorphic is not False:
        return False, f"hat_f comparison got {f_cmp.tensor_dim} vs {f_cmp.hom_dim}"
    g_cmp = hat_g(v, w)
    if (g_cmp.tensor_dim, g_cmp.hom_dim) != (2, 2) or g_cmp.isomorphic is not True:
        return False, f"hat_g comparison got {g_cmp.tensor_dim} vs {g_cmp.hom_dim}"
    endo = endo_remark_check(v)
    if (endo.dual_tensor_dim, endo.endo_hom_dim) != (0, 4) or endo.equal is not False:
        return False, f"endo comparison got {endo.dual_tensor_dim} vs {endo.endo_hom_dim}"
    fine3 = endo_remark_check(make_fine(3))
    if (fine3.dual_tensor_dim, fine3.endo_hom_dim) != (9, 9) or fine3.equal is not True:
        return False, "fine endo comparison broken"
    return True, "coarse plane: V (x) W is 2 vs 0 smooth maps; V* (x) V is 0 vs 4 endomorphisms"


# --- criterion 7: distributivity --------------------------------------------

def check_distributivity() -> tuple[bool, str]:
    rng = random.Random(VERIFY_SEED + 7)
    for trial in range(50):
        v1, v2, v3 = (_random_space(rng, 3) for _ in range(3))
        t = distribute(v1, v2, v3)
        if is_smooth_linear(t) is not Verdict.SMOOTH:
            return False, f"forward map not Smooth at trial {trial}"
        if is_smooth_linear(inverse_map(t)) is not Verdict.SMOOTH:
            return False, f"inverse map not Smooth at trial {trial}"
        if singular_span(t.domain).dim != singular_span(t.codomain).dim:
            return False, f"singular span dimensions differ at trial {trial}"
    return True, "50 random triples: both directions Smooth, singular spans match"


# --- criterion 8: oracle agreement ------------------------------------------

def _random_expression(rng: random.Random) -> FunctionExpr:
    terms = []
    for _ in range(rng.randint(1, 6)):
        kind = abs_mono if rng.random() < 0.5 else mono
        coeff = Fraction(rng.randint(-10, 10), rng.randint(1, 4))
        terms.append((kind(rng.randint(0, 6)), coeff))
    return FunctionExpr(terms)


def check_oracle_agreement() -> tuple[bool, str]:
    for d in range(7):
        if not classify(FunctionExpr.monomial(d)).smooth:
            return False, f"x^{d} misclassified"
        result = classify(FunctionExpr.abs_monomial(d))
        if result.failing_order != d + 2:
            return False, f"|x|*x^{d} failing order {result.failing_order}, expected {d + 2}"
    rng = random.Random(VERIFY_SEED + 8)
    disagreements = []
    for trial in range(1000):
        expr = _random_expression(rng)
        if classify(expr).smooth != expr.is_smooth():
            disagreements.append(trial)
    rate = 1.0 - len(disagreements) / 1000
    if rate < 0.99:
        return False, f"agreement rate {rate:.3f} below 0.99; trials {disagreements[:5]}"
    return True, (
        f"atom basis exact (fails at degree + 2); {rate:.1%} agreement on 1000 random expressions"
    )


# --- criterion 9: hat-dual well-posedness -----------------------------------

def _kink_automorphism(rng: random.Random, n: int, k: int) -> Matrix:
    """An automorphism of the k-kink space: block upper triangular over the
    split (kink directions | rest), hence preserving plots both ways."""
    a = _random_invertible(rng, k) if k else ()
    d = _random_invertible(rng, n - k) if n - k else ()
    rows = []
    for i in range(k):
        rows.append(a[i] + tuple(_random_rational(rng) for _ in range(n - k)))
    for i in range(n - k):
        rows.append(zero_vector(k) + d[i])
    return tuple(rows)


def check_hat_dual_wellposedness() -> tuple[bool, str]:
    rng = random.Random(VERIFY_SEED + 9)
    total_samples = 0
    for trial in range(20):
        kind = rng.choice(["fine", "coarse", "generated"])
        n = rng.randint(1, 3)
        iso1 = _random_invertible(rng, n)
        if kind == "fine":
            space, iso2 = make_fine(n), _random_invertible(rng, n)
        elif kind == "coarse":
            space, iso2 = make_coarse(n), _random_invertible(rng, n)
        else:
            k = rng.randint(1, n)
            space = _kink_space(n, k)
            iso2 = matmul(iso1, _kink_automorphism(rng, n, k))
        samples = [_random_smooth_plot(rng, n)]
        samples.append(kink_plot(n, rng.randrange(n)))
        samples.append(Plot([
            FunctionExpr.abs_monomial(rng.randint(0, 2), rng.randint(1, 3))
            for _ in range(n)
        ]))
        report = hat_dual_wellposed(space, iso1, iso2, samples)
        if not report.consistent:
            return False, f"verdict mismatch at trial {trial} ({space.describe()})"
        total_samples += len(samples)
    return True, f"verdicts agree across isomorphism choices on {total_samples} sample plots"


# --- suite -----------------------------------------------------------------

CHECKS = (
    ("dual-dimensions", check_dual_dimensions),
    ("bilinear-vanishing", check_bilinear_vanishing),
    ("curry-correspondence", check_curry_correspondence),
    ("dual-map-smoothness", check_dual_map_smoothness),
    ("tensor-dual-multiplicativity", check_tensor_dual_multiplicativity),
    ("non-isomorphism-reproductions", check_non_isomorphisms),
    ("distributivity", check_distributivity),
    ("oracle-agreement", check_oracle_agreement),
    ("hat-dual-wellposedness", check_hat_dual_wellposedness),
)


def run_checks(space_file: SpaceFile | None = None) -> list[CheckResult]:
    """Run the whole suite; ``space_file`` supplies the named anchor spaces
    (sanity-checked first when given)."""
    results = []
    if space_file is not None:
        results.append(_timed("space-file-anchors", lambda: _check_anchors(space_file)))
    for name, fn in CHECKS:
        results.append(_timed(name, fn))
    return results


def _check_anchors(space_file: SpaceFile) -> tuple[bool, str]:
    """The bundled example spaces reproduce their expected dual dimensions
    and map verdicts."""
    expectations = {
        "fine1": 1, "fine2": 2, "fine3": 3,
        "coarse2": 0, "coarse3": 0,
        "kink2_1": 1, "kink3_1": 2, "kink4_2": 2,
        "mixed2": 1,
    }
    for name, expected in expectations.items():
        space = space_file.space(name)
        actual = diffeological_dual(space).dim
        if actual != expected:
            return False, f"space {name}: dual dim {actual}, expected {expected}"
    verdicts = {
        "example_functional": Verdict.NOT_SMOOTH,
        "fine_to_coarse2": Verdict.SMOOTH,
        "second_coordinate": Verdict.SMOOTH,
        "first_coordinate": Verdict.NOT_SMOOTH,
    }
    for name, expected in verdicts.items():
        if is_smooth_linear(space_file.map(name)) is not expected:
            return False, f"map {name}: expected {expected.value}"
    return True, f"{len(expectations)} spaces and {len(verdicts)} maps match their pinned verdicts"
