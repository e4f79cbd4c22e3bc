"""Space-definition files.

JSON schema::

    {
      "spaces": {
        "name": {"dim": n, "diffeology": "fine" | "coarse"
                                        | {"generated": [[expr, ...], ...]}}
      },
      "maps": {
        "name": {"from": "space", "to": "space", "matrix": [["p/q", ...], ...]}
      }
    }

Each generator is a list of expression strings, one per coordinate.
Rationals are integers or "p/q" strings; float literals are rejected so
that every loaded object is exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exprparse import ParseError, parse_expr
from .hom import LinearMap
from .spaces import DiffSpace, Plot, make_coarse, make_fine, make_generated


class SpaceFileError(ValueError):
    pass


@dataclass
class SpaceFile:
    spaces: dict[str, DiffSpace] = field(default_factory=dict)
    maps: dict[str, LinearMap] = field(default_factory=dict)

    def space(self, name: str) -> DiffSpace:
        if name not in self.spaces:
            raise SpaceFileError(f"unknown space {name!r}")
        return self.spaces[name]

    def map(self, name: str) -> LinearMap:
        if name not in self.maps:
            raise SpaceFileError(f"unknown map {name!r}")
        return self.maps[name]


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise SpaceFileError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise SpaceFileError("float literals are not allowed; use \"p/q\" strings")
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpaceFileError(f"not a rational: {value!r}") from exc
    raise SpaceFileError(f"not a rational: {value!r}")


def _load_space(name: str, body) -> DiffSpace:
    if not isinstance(body, dict):
        raise SpaceFileError(f"space {name!r} must be an object")
    dim = body.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise SpaceFileError(f"space {name!r} needs a positive integer dim")
    diffeology = body.get("diffeology")
    if diffeology == "fine":
        return make_fine(dim)
    if diffeology == "coarse":
        return make_coarse(dim)
    if isinstance(diffeology, dict) and set(diffeology) == {"generated"}:
        plots = []
        for k, coords in enumerate(diffeology["generated"]):
            if not isinstance(coords, list) or len(coords) != dim:
                raise SpaceFileError(
                    f"generator {k} of space {name!r} needs {dim} coordinate expressions"
                )
            components = []
            for expr_text in coords:
                if not isinstance(expr_text, str):
                    raise SpaceFileError(
                        f"generator {k} of space {name!r}: expressions must be strings"
                    )
                try:
                    components.append(parse_expr(expr_text))
                except ParseError as exc:
                    raise SpaceFileError(
                        f"generator {k} of space {name!r}: {exc}"
                    ) from exc
            plots.append(Plot(components))
        return make_generated(dim, plots)
    raise SpaceFileError(
        f"space {name!r}: diffeology must be \"fine\", \"coarse\" or {{\"generated\": ...}}"
    )


def load_space_file(path: str) -> SpaceFile:
    with open(path) as fh:
        try:
            document = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpaceFileError(f"invalid JSON: {exc}") from exc
    return load_space_document(document)


def load_space_document(document) -> SpaceFile:
    if not isinstance(document, dict):
        raise SpaceFileError("top level must be an object")
    out = SpaceFile()
    for name, body in (document.get("spaces") or {}).items():
        out.spaces[name] = _load_space(name, body)
    for name, body in (document.get("maps") or {}).items():
        if not isinstance(body, dict):
            raise SpaceFileError(f"map {name!r} must be an object")
        try:
            domain = out.space(body["from"])
            codomain = out.space(body["to"])
        except KeyError as exc:
            raise SpaceFileError(f"map {name!r} is missing {exc}") from exc
        rows = body.get("matrix")
        if not isinstance(rows, list) or len(rows) != codomain.dim:
            raise SpaceFileError(
                f"map {name!r}: matrix needs {codomain.dim} rows"
            )
        parsed = []
        for row in rows:
            if not isinstance(row, list) or len(row) != domain.dim:
                raise SpaceFileError(
                    f"map {name!r}: each matrix row needs {domain.dim} entries"
                )
            parsed.append(tuple(parse_rational(x) for x in row))
        out.maps[name] = LinearMap(domain, codomain, tuple(parsed))
    return out
