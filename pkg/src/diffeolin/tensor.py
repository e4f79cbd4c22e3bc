"""Tensor product diffeology and the canonical maps around it.

Basis convention: v_i (x) w_j sits at flat index i*m + j (row-major).  The
singular span of a tensor product is the block span

    S(V) (x) R^m  +  R^n (x) S(W),

which is exactly what mixed generator/constant plot pairs reach; pairs of
singular generators only add |x|*|x| = x^2 terms, which are smooth.  The
dual-dimension multiplicativity of the computed spans is asserted wherever
a tensor dual is produced, so a wrong block formula fails loudly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .hom import (
    DualSpace,
    LinearMap,
    diffeological_dual,
    is_smooth_linear,
    smooth_hom_basis,
)
from .linalg import (
    Matrix,
    kron,
    kron_vector,
    matrix as make_matrix,
    rank,
    solve,
    transpose,
    unit_vector,
)
from .spaces import (
    Coarse,
    DiffSpace,
    DiffeolinError,
    Fine,
    Generated,
    Plot,
    SumOf,
    TensorOf,
    UnsupportedDescriptorError,
    Verdict,
    direct_sum,
    singular_span,
)

_SUPPORTED_FACTORS = (Fine, Coarse, Generated, SumOf, TensorOf)


def _check_factor(space: DiffSpace) -> None:
    if not isinstance(space.diffeology, _SUPPORTED_FACTORS):
        raise UnsupportedDescriptorError(
            f"tensor factors must be fine, coarse, generated, sums or tensors; "
            f"got {type(space.diffeology).__name__}"
        )


def tensor_product(v: DiffSpace, w: DiffSpace) -> DiffSpace:
    """The tensor product space with the block singular span.

    Product plots of generator pairs are validated to stay inside the block
    span; a violation would falsify the block formula and raises.
    """
    _check_factor(v)
    _check_factor(w)
    space = DiffSpace(v.dim * w.dim, TensorOf(v, w))
    _validate_generator_pairs(space, v, w)
    return space


def _generator_plots(space: DiffSpace) -> tuple[Plot, ...]:
    d = space.diffeology
    if isinstance(d, Generated):
        return d.generators
    return ()


def product_plot(p: Plot, q: Plot) -> Plot:
    """The image x -> p(x) (x) q(x) of a plot pair under the universal map."""
    return Plot([pi * qj for pi in p.components for qj in q.components])


def _validate_generator_pairs(space: DiffSpace, v: DiffSpace, w: DiffSpace) -> None:
    span = singular_span(space)
    for p, q in itertools.product(_generator_plots(v), _generator_plots(w)):
        for _, row in product_plot(p, q).residue_rows().items():
            if not span.contains(row):
                raise DiffeolinError(
                    "generator pair product leaves the block singular span; "
                    "block formula violated"
                )


def tensor_of_maps(f: LinearMap, g: LinearMap) -> LinearMap:
    """Kronecker product of two smooth maps between supported spaces."""
    for m in (f, g):
        if not isinstance(m.domain, DiffSpace) or not isinstance(m.codomain, DiffSpace):
            raise UnsupportedDescriptorError("tensor of maps needs concrete spaces")
        if is_smooth_linear(m) is not Verdict.SMOOTH:
            raise DiffeolinError("tensor of maps requires Smooth factors")
    domain = tensor_product(f.domain, g.domain)
    codomain = tensor_product(f.codomain, g.codomain)
    return LinearMap(domain, codomain, kron(f.matrix, g.matrix))


def distribute(v1: DiffSpace, v2: DiffSpace, v3: DiffSpace) -> LinearMap:
    """The canonical map V1 (x) (V2 (+) V3) -> (V1 (x) V2) (+) (V1 (x) V3).

    In the chosen bases it is a permutation matrix; both it and its inverse
    receive Smooth verdicts, and the singular spans on the two sides have
    equal dimension.
    """
    n1, n2, n3 = v1.dim, v2.dim, v3.dim
    domain = tensor_product(v1, direct_sum(v2, v3))
    codomain = direct_sum(tensor_product(v1, v2), tensor_product(v1, v3))
    total = n1 * (n2 + n3)
    rows = []
    # Codomain slot (i, j) of the first block reads domain slot i*(n2+n3) + j;
    # the second block reads i*(n2+n3) + n2 + k.
    for i in range(n1):
        for j in range(n2):
            rows.append(unit_vector(total, i * (n2 + n3) + j))
    for i in range(n1):
        for k in range(n3):
            rows.append(unit_vector(total, i * (n2 + n3) + n2 + k))
    return LinearMap(domain, codomain, tuple(rows))


def inverse_map(f: LinearMap) -> LinearMap:
    from .linalg import invert

    inv = invert(f.matrix)
    if inv is None:
        raise DiffeolinError("map is not invertible")
    return LinearMap(f.codomain, f.domain, inv)


@dataclass(frozen=True)
class TensorDualIso:
    """The canonical map V* (x) W* -> (V (x) W)* on annihilator bases.

    matrix maps the kron basis (phi_a (x) psi_b, row-major) to coordinates
    over the annihilator basis of the tensor dual.
    """

    left_dual: DualSpace
    right_dual: DualSpace
    tensor_dual: DualSpace
    matrix: Matrix

    @property
    def domain_dim(self) -> int:
        return self.left_dual.dim * self.right_dual.dim

    @property
    def codomain_dim(self) -> int:
        return self.tensor_dual.dim

    @property
    def injective(self) -> bool:
        return rank(transpose(self.matrix)) == self.domain_dim

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.domain_dim == self.codomain_dim


def tensor_dual_iso(v: DiffSpace, w: DiffSpace) -> TensorDualIso:
    """Build the canonical map and assert that it is a linear isomorphism.

    Each product functional phi (x) psi must annihilate the block singular
    span (it is a smooth functional on the tensor product), injectivity is
    exact, and the dimensions multiply.  Any failure signals a bug in the
    block singular-span formula.
    """
    dual_v = diffeological_dual(v)
    dual_w = diffeological_dual(w)
    t = tensor_product(v, w)
    dual_t = diffeological_dual(t)
    bt = dual_t.annihilator_basis.basis
    bt_t = transpose(make_matrix(bt)) if bt else tuple(() for _ in range(t.dim))
    columns = []
    span_t = singular_span(t)
    for phi in dual_v.annihilator_basis.basis:
        for psi in dual_w.annihilator_basis.basis:
            functional = kron_vector(phi, psi)
            if any(
                sum((a * b for a, b in zip(functional, s)), Fraction(0))
                for s in span_t.basis
            ):
                raise DiffeolinError(
                    "product functional fails to annihilate the tensor singular span"
                )
            coords = solve(bt_t, functional) if bt else (None if any(functional) else ())
            if coords is None:
                raise DiffeolinError("product functional not expressible in the tensor dual")
            columns.append(coords)
    rows = tuple(tuple(col[i] for col in columns) for i in range(len(bt)))
    iso = TensorDualIso(dual_v, dual_w, dual_t, rows)
    if not iso.injective:
        raise DiffeolinError("tensor dual map is not injective")
    if iso.domain_dim != iso.codomain_dim:
        raise DiffeolinError(
            f"tensor dual dimensions differ: {iso.domain_dim} vs {iso.codomain_dim}"
        )
    return iso


@dataclass(frozen=True)
class FunctionSpaceComparison:
    """Dimension comparison between a tensor product and a smooth hom space.

    ``hom_dim`` is None when the smooth hom side is not computable in the
    conservative fragment (then ``isomorphic`` is None as well: Unknown).
    """

    tensor_dim: int
    hom_dim: int | None
    matrix: Matrix | None

    @property
    def isomorphic(self) -> bool | None:
        if self.hom_dim is None:
            return None
        return self.tensor_dim == self.hom_dim


def _dual_hom_dim(dual: DualSpace, target: DiffSpace) -> int | None:
    """dim L^inf(dual, target) for a fine or coarse target.

    Every plot of a functional dual is classically smooth in annihilator
    coordinates, so into a fine target all linear maps are smooth; into a
    coarse target everything is smooth anyway.
    """
    desc = target.diffeology
    if isinstance(desc, (Fine, Coarse)):
        return dual.dim * target.dim
    return None


def hat_f(v: DiffSpace, w: DiffSpace) -> FunctionSpaceComparison:
    """The map V (x) W -> L(V*, W), v (x) w -> [f -> f(v) w], on annihilator
    coordinates; reports dimensions but never asserts an isomorphism."""
    desc = w.diffeology
    if not isinstance(desc, (Fine, Coarse)):
        raise UnsupportedDescriptorError("hat_f requires a fine or coarse second factor")
    dual_v = diffeological_dual(v)
    n, m, a = v.dim, w.dim, dual_v.dim
    t = tensor_product(v, w)
    # Row-major target coordinates: image matrix entry (r, col) at r*a + col.
    rows = []
    basis = dual_v.annihilator_basis.basis
    for r in range(m):
        for col in range(a):
            row = []
            for i in range(n):
                for j in range(m):
                    row.append(basis[col][i] if j == r else Fraction(0))
            rows.append(tuple(row))
    return FunctionSpaceComparison(t.dim, _dual_hom_dim(dual_v, w), tuple(rows))


def hat_g(v: DiffSpace, w: DiffSpace) -> FunctionSpaceComparison:
    """Symmetric companion of hat_f: V (x) W -> L(W*, V)."""
    desc = v.diffeology
    if not isinstance(desc, (Fine, Coarse)):
        raise UnsupportedDescriptorError("hat_g requires a fine or coarse first factor")
    dual_w = diffeological_dual(w)
    n, m, a = v.dim, w.dim, dual_w.dim
    t = tensor_product(v, w)
    rows = []
    basis = dual_w.annihilator_basis.basis
    for r in range(n):
        for col in range(a):
            row = []
            for i in range(n):
                for j in range(m):
                    row.append(basis[col][j] if i == r else Fraction(0))
            rows.append(tuple(row))
    return FunctionSpaceComparison(t.dim, _dual_hom_dim(dual_w, v), tuple(rows))


@dataclass(frozen=True)
class EndoComparison:
    """dim(V* (x) V) against dim L^inf(V, V), where computable."""

    dual_tensor_dim: int
    endo_hom_dim: int | None

    @property
    def equal(self) -> bool | None:
        if self.endo_hom_dim is None:
            return None
        return self.dual_tensor_dim == self.endo_hom_dim


def endo_remark_check(v: DiffSpace) -> EndoComparison:
    left = diffeological_dual(v).dim * v.dim
    try:
        right: int | None = smooth_hom_basis(v, v).dim
    except UnsupportedDescriptorError:
        right = None
    return EndoComparison(left, right)
