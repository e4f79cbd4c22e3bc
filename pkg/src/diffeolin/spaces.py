"""Diffeological vector spaces at desk scale.

A space is a dimension plus a diffeology descriptor.  Plots are generator
curves R -> R^n with coordinates in the atom algebra, so the only possible
non-smooth behaviour is |x|*x^k kinks at the origin.  Two derived objects
drive every decision procedure:

* the *singular span* S(V): the subspace of R^n spanned by the |x|-residue
  directions reachable by plots of V.  A linear functional is smooth on V
  exactly when it annihilates S(V).

* the *presentation* of V: the singular directions together with the least
  atom degree at which each becomes reachable, plus the "coarse part" of V
  (directions along which arbitrary set maps are plots).  Degrees matter
  because smooth multipliers and reparametrisations x -> c*x can only move
  residue content to higher degrees, never lower.

Plot membership is three-valued and conservative: Plot and NotPlot answers
carry exact certificates, everything else is Unknown.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .atoms import FunctionExpr
from .linalg import (
    Matrix,
    Subspace,
    Vector,
    in_row_span,
    invert,
    matvec,
    vector,
    zero_vector,
)


class DiffeolinError(Exception):
    """Base class for library errors."""


class DimensionMismatchError(DiffeolinError):
    pass


class UnsupportedDescriptorError(DiffeolinError):
    pass


class Verdict(enum.Enum):
    """Three-valued answer of the conservative decision procedures.

    SMOOTH doubles as "is a plot" and NOT_SMOOTH as "is not a plot" in
    membership contexts; UNKNOWN is never silently coerced to either.
    """

    SMOOTH = "Smooth"
    NOT_SMOOTH = "NotSmooth"
    UNKNOWN = "Unknown"

    def plot_label(self) -> str:
        return {"Smooth": "Plot", "NotSmooth": "NotPlot", "Unknown": "Unknown"}[self.value]


def combine_verdicts(verdicts) -> Verdict:
    """Conservative conjunction: any NotSmooth wins, then any Unknown."""
    result = Verdict.SMOOTH
    for v in verdicts:
        if v is Verdict.NOT_SMOOTH:
            return Verdict.NOT_SMOOTH
        if v is Verdict.UNKNOWN:
            result = Verdict.UNKNOWN
    return result


@dataclass(frozen=True)
class Plot:
    """A generator curve R -> R^n, one FunctionExpr per coordinate."""

    components: tuple[FunctionExpr, ...]

    def __init__(self, components: Sequence[FunctionExpr]):
        object.__setattr__(self, "components", tuple(components))

    @property
    def target_dim(self) -> int:
        return len(self.components)

    def residue_rows(self) -> dict[int, Vector]:
        """Map degree d -> row of |x|*x^d coefficients across coordinates."""
        degrees: set[int] = set()
        residues = [c.singular_residue() for c in self.components]
        for r in residues:
            degrees.update(r)
        return {
            d: tuple(r.get(d, Fraction(0)) for r in residues)
            for d in sorted(degrees)
        }

    def is_classically_smooth(self) -> bool:
        return all(c.is_smooth() for c in self.components)

    def slice(self, start: int, stop: int) -> "Plot":
        return Plot(self.components[start:stop])

    def transform(self, m: Matrix) -> "Plot":
        """Compose with the linear map given by m (rows of m = output coords)."""
        out = []
        for row in m:
            acc = FunctionExpr.zero()
            for coeff, comp in zip(row, self.components):
                if coeff:
                    acc = acc + comp.scale(coeff)
            out.append(acc)
        return Plot(out)

    def max_degree(self) -> int:
        return max((c.max_degree() for c in self.components), default=0)


def kink_plot(n: int, index: int, degree: int = 0, coeff=1) -> Plot:
    """The plot |x|*x^degree * e_index in R^n."""
    comps = [FunctionExpr.zero()] * n
    comps[index] = FunctionExpr.abs_monomial(degree, coeff)
    return Plot(comps)


def row_plot(row: Sequence, degree: int = 0) -> Plot:
    """The plot |x|*x^degree * row."""
    return Plot([FunctionExpr.abs_monomial(degree, c) if c else FunctionExpr.zero()
                 for c in vector(row)])


# --- diffeology descriptors ---------------------------------------------

@dataclass(frozen=True)
class Fine:
    pass


@dataclass(frozen=True)
class Coarse:
    pass


@dataclass(frozen=True)
class Generated:
    generators: tuple[Plot, ...]

    def __init__(self, generators: Sequence[Plot]):
        object.__setattr__(self, "generators", tuple(generators))


@dataclass(frozen=True)
class SumOf:
    left: "DiffSpace"
    right: "DiffSpace"


@dataclass(frozen=True)
class TensorOf:
    left: "DiffSpace"
    right: "DiffSpace"


@dataclass(frozen=True)
class Pushforward:
    base: "DiffSpace"
    matrix: Matrix


Descriptor = Union[Fine, Coarse, Generated, SumOf, TensorOf, Pushforward]


@dataclass(frozen=True)
class DiffSpace:
    dim: int
    diffeology: Descriptor

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError("dimension must be >= 0")

    def describe(self) -> str:
        d = self.diffeology
        if isinstance(d, Fine):
            return f"fine R^{self.dim}"
        if isinstance(d, Coarse):
            return f"coarse R^{self.dim}"
        if isinstance(d, Generated):
            return f"generated R^{self.dim} ({len(d.generators)} generators)"
        if isinstance(d, SumOf):
            return f"({d.left.describe()}) (+) ({d.right.describe()})"
        if isinstance(d, TensorOf):
            return f"({d.left.describe()}) (x) ({d.right.describe()})"
        if isinstance(d, Pushforward):
            return f"pushforward of {d.base.describe()}"
        return repr(d)


def make_fine(n: int) -> DiffSpace:
    return DiffSpace(n, Fine())


def make_coarse(n: int) -> DiffSpace:
    return DiffSpace(n, Coarse())


def make_generated(n: int, plots: Sequence[Plot]) -> DiffSpace:
    for p in plots:
        if p.target_dim != n:
            raise DimensionMismatchError(
                f"generator has {p.target_dim} coordinates, space has dimension {n}"
            )
    return DiffSpace(n, Generated(tuple(plots)))


def direct_sum(v: DiffSpace, w: DiffSpace) -> DiffSpace:
    return DiffSpace(v.dim + w.dim, SumOf(v, w))


# --- presentations -------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    """Reachable singular content of a space.

    ``coarse`` collects the directions along which every set map is a plot;
    ``rows`` holds (degree, direction) pairs: the direction is reachable as
    an |x|*x^d residue for every d >= degree, but at no smaller degree.
    """

    ambient_dim: int
    coarse: Subspace
    rows: tuple[tuple[int, Vector], ...]

    def singular_span(self) -> Subspace:
        return Subspace.from_rows(
            self.ambient_dim, list(self.coarse.basis) + [r for _, r in self.rows]
        )

    def rows_up_to(self, degree: int, slack: int) -> list[Vector]:
        """Directions reachable at exactly ``degree`` with multiplier degree <= slack."""
        out = list(self.coarse.basis)
        out.extend(r for d, r in self.rows if d <= degree and degree - d <= slack)
        return out


def _embed_row(row: Vector, offset: int, total: int) -> Vector:
    return zero_vector(offset) + row + zero_vector(total - offset - len(row))


def presentation(space: DiffSpace) -> Presentation:
    n = space.dim
    d = space.diffeology
    if isinstance(d, Fine):
        return Presentation(n, Subspace.zero(n), ())
    if isinstance(d, Coarse):
        return Presentation(n, Subspace.full(n), ())
    if isinstance(d, Generated):
        rows = []
        for g in d.generators:
            if g.target_dim != n:
                raise DimensionMismatchError("generator dimension mismatch")
            rows.extend(g.residue_rows().items())
        return Presentation(n, Subspace.zero(n), tuple(rows))
    if isinstance(d, SumOf):
        pl, pr = presentation(d.left), presentation(d.right)
        nl = d.left.dim
        coarse = Subspace.from_rows(
            n,
            [_embed_row(r, 0, n) for r in pl.coarse.basis]
            + [_embed_row(r, nl, n) for r in pr.coarse.basis],
        )
        rows = tuple(
            [(deg, _embed_row(r, 0, n)) for deg, r in pl.rows]
            + [(deg, _embed_row(r, nl, n)) for deg, r in pr.rows]
        )
        return Presentation(n, coarse, rows)
    if isinstance(d, TensorOf):
        return _tensor_presentation(d.left, d.right)
    if isinstance(d, Pushforward):
        base = presentation(d.base)
        m = d.matrix
        coarse = base.coarse.map_by(m)
        rows = tuple((deg, matvec(m, r)) for deg, r in base.rows)
        return Presentation(n, coarse, rows)
    raise UnsupportedDescriptorError(f"no presentation for descriptor {type(d).__name__}")


def _tensor_presentation(left: DiffSpace, right: DiffSpace) -> Presentation:
    """Block presentation of a tensor product.

    A singular direction s of the left factor pairs with every constant plot
    of the right factor, contributing s (x) e_j at the degree where s became
    reachable; symmetrically on the other side.  Coarse directions absorb
    everything they touch: arbitrary maps into C (x) R^m and R^n (x) C are
    plots (split the arbitrary coefficient onto the coarse leg).
    """
    n, m = left.dim, right.dim
    total = n * m
    pl, pr = presentation(left), presentation(right)

    def left_tensor(row: Vector, other_dim: int, jth: int) -> Vector:
        out = [Fraction(0)] * total
        for i, c in enumerate(row):
            out[i * other_dim + jth] = c
        return tuple(out)

    def right_tensor(ith: int, row: Vector) -> Vector:
        out = [Fraction(0)] * total
        for j, c in enumerate(row):
            out[ith * m + j] = c
        return tuple(out)

    coarse_rows = []
    for r in pl.coarse.basis:
        for j in range(m):
            coarse_rows.append(left_tensor(r, m, j))
    for r in pr.coarse.basis:
        for i in range(n):
            coarse_rows.append(right_tensor(i, r))
    coarse = Subspace.from_rows(total, coarse_rows)

    rows: list[tuple[int, Vector]] = []
    for deg, r in pl.rows:
        for j in range(m):
            row = left_tensor(r, m, j)
            if not coarse.contains(row):
                rows.append((deg, row))
    for deg, r in pr.rows:
        for i in range(n):
            row = right_tensor(i, r)
            if not coarse.contains(row):
                rows.append((deg, row))
    return Presentation(total, coarse, tuple(rows))


def singular_span(space: DiffSpace) -> Subspace:
    """The obstruction subspace S(V): linear functionals smooth on V are
    exactly the annihilator of S(V)."""
    return presentation(space).singular_span()


# --- plot membership -----------------------------------------------------

DEFAULT_SLACK_MARGIN = 8


def default_slack_degree(pres: Presentation, plot: Plot) -> int:
    degrees = [deg for deg, _ in pres.rows]
    degrees.extend(plot.residue_rows().keys())
    return max(degrees, default=0) + DEFAULT_SLACK_MARGIN


def is_plot(space: DiffSpace, candidate: Plot, slack_degree: int | None = None) -> Verdict:
    """Decide membership of ``candidate`` in the diffeology of ``space``.

    For generated-style spaces the residue of the candidate is tested degree
    by degree: the degree-e residue direction must lie in the rational span
    of the singular directions reachable at degree e (reachable = presented
    at degree d <= e with multiplier degree e - d at most ``slack_degree``).
    If some residue direction falls outside the full singular span, a linear
    functional separating it certifies NotPlot.  Anything in between is
    Unknown: the conservative fragment only searches polynomial multipliers
    and linear reparametrisations.
    """
    if candidate.target_dim != space.dim:
        raise DimensionMismatchError(
            f"plot has {candidate.target_dim} coordinates, space has dimension {space.dim}"
        )
    d = space.diffeology
    if isinstance(d, Coarse):
        return Verdict.SMOOTH
    if isinstance(d, Fine):
        return Verdict.SMOOTH if candidate.is_classically_smooth() else Verdict.NOT_SMOOTH
    if isinstance(d, Pushforward):
        inv = invert(d.matrix)
        if inv is None:
            raise DiffeolinError("pushforward matrix is singular")
        return is_plot(d.base, candidate.transform(inv), slack_degree)
    if isinstance(d, SumOf):
        nl = d.left.dim
        return combine_verdicts([
            is_plot(d.left, candidate.slice(0, nl), slack_degree),
            is_plot(d.right, candidate.slice(nl, space.dim), slack_degree),
        ])
    if isinstance(d, (Generated, TensorOf)):
        pres = presentation(space)
        return _membership_verdict(pres, candidate, slack_degree)
    raise UnsupportedDescriptorError(f"membership unsupported for {type(d).__name__}")


def _membership_verdict(pres: Presentation, candidate: Plot, slack_degree: int | None) -> Verdict:
    if pres.coarse.dim == pres.ambient_dim:
        return Verdict.SMOOTH
    slack = default_slack_degree(pres, candidate) if slack_degree is None else slack_degree
    full = pres.singular_span()
    unknown = False
    for degree, rho in candidate.residue_rows().items():
        if in_row_span(tuple(pres.rows_up_to(degree, slack)), rho):
            continue
        if not full.contains(rho):
            return Verdict.NOT_SMOOTH
        unknown = True
    return Verdict.UNKNOWN if unknown else Verdict.SMOOTH


def separating_functional(space: DiffSpace, candidate: Plot) -> Vector | None:
    """A functional annihilating all singular directions of the space but not
    some residue direction of the candidate.  Exists iff membership is
    certifiably NotPlot for generated-style spaces."""
    pres = presentation(space)
    ann = pres.singular_span().annihilator()
    for _, rho in candidate.residue_rows().items():
        for phi in ann.basis:
            if sum((a * b for a, b in zip(phi, rho)), Fraction(0)):
                return phi
    return None
