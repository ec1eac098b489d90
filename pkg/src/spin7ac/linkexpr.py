"""Formal operator calculus for differential forms on the 7-dimensional link.

A LinkExpr is an exact linear combination of words in the operators

    d  (exterior derivative, degree +1)
    s  (Hodge star of the link, degree k -> 7-k)
    t  (codifferential d*, degree -1)

applied to named abstract forms of declared degree.  No link geometry is
ever discretized; the calculus consists of the operator identities

    d d = 0,   t t = 0,   s s = Id,   t = (-1)^k s d s   on degree k,

plus optional declared relations per atom (closed, co-closed, Laplace
eigenform, duality d a = c * b).  The codifferential is eliminated via
the bridge identity wherever the star is defined (degrees 1..7); it
survives as a primitive letter only on formal degree-8 atoms, which the
rate-classification engine carries through the recursion exactly as the
source analysis does.

Words are stored outermost-first: ('d', 's') applied to a means d(s(a)).
Atoms of degree 8 are formal bookkeeping slots (a 7-manifold has no
8-forms); expressions of degree up to 9 may appear transiently inside the
classification engine, where they are only ever equated to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InputError
from .scalars import ONE, ZERO, Scalar

Word = tuple[str, ...]

_MAX_REWRITE_DEPTH = 60


@dataclass(frozen=True, order=True)
class Atom:
    """A named abstract link form with a declared degree."""

    name: str
    degree: int

    def __post_init__(self) -> None:
        if not 0 <= self.degree <= 8:
            raise InputError(f"atom degree {self.degree} out of range 0..8")

    def to_json(self) -> dict:
        return {"name": self.name, "degree": self.degree}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Atom":
        return cls(str(obj["name"]), int(obj["degree"]))


@dataclass(frozen=True)
class Duality:
    """Declared relation d a = coeff * other."""

    coeff: Scalar
    other: Atom


@dataclass
class Relations:
    """Declared relations for the named atoms of a computation.

    ``monomial_zeros`` holds dynamically derived rules: an entry
    (applied_prefix, atom) kills every word whose innermost operators
    start with that prefix on that atom.  ``zero`` marks atoms proved to
    vanish, ``harmonic`` atoms proved closed and co-closed (compact link:
    a harmonic form is closed and co-closed).
    """

    closed: set[str] = field(default_factory=set)
    coclosed: set[str] = field(default_factory=set)
    eigen: dict[str, Scalar] = field(default_factory=dict)
    duality: dict[str, Duality] = field(default_factory=dict)
    zero: set[str] = field(default_factory=set)
    harmonic: set[str] = field(default_factory=set)
    monomial_zeros: set[tuple[Word, Atom]] = field(default_factory=set)

    def copy(self) -> "Relations":
        return Relations(
            closed=set(self.closed),
            coclosed=set(self.coclosed),
            eigen=dict(self.eigen),
            duality=dict(self.duality),
            zero=set(self.zero),
            harmonic=set(self.harmonic),
            monomial_zeros=set(self.monomial_zeros),
        )

    def declare_nearly_parallel(self, phi: Atom, torsion: Scalar | int = 4) -> None:
        """Declare d phi = torsion * (star phi), the nearly parallel relation."""
        self.duality[phi.name] = Duality(Scalar.coerce(torsion), phi)

    def is_closed(self, name: str) -> bool:
        return name in self.closed or name in self.harmonic

    def is_coclosed(self, name: str) -> bool:
        return name in self.coclosed or name in self.harmonic


EMPTY_RELATIONS = Relations()


def _word_degree(applied: Iterable[str], start: int) -> int:
    degree = start
    for op in applied:
        if op == "d":
            degree += 1
        elif op == "t":
            degree -= 1
        else:
            degree = 7 - degree
    return degree


class LinkExpr:
    """Exact linear combination of operator words applied to atoms."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[tuple[Word, Atom], Scalar]):
        clean = {
            key: value for key, value in terms.items() if not value.is_zero()
        }
        for (word, atom) in clean:
            if _word_degree(reversed(word), atom.degree) != degree:
                raise InputError(
                    f"term {word} {atom} has degree "
                    f"{_word_degree(reversed(word), atom.degree)}, expected {degree}"
                )
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("LinkExpr is immutable")

    @classmethod
    def zero(cls, degree: int) -> "LinkExpr":
        return cls(degree, {})

    @classmethod
    def atom(cls, atom: Atom) -> "LinkExpr":
        return cls(atom.degree, {((), atom): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def atoms(self) -> set[Atom]:
        return {atom for (_, atom) in self.terms}

    def __add__(self, other: "LinkExpr") -> "LinkExpr":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise InputError(
                f"degree mismatch in sum: {self.degree} vs {other.degree}"
            )
        terms = dict(self.terms)
        for key, value in other.terms.items():
            new = terms.get(key, ZERO) + value
            if new.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = new
        return LinkExpr(self.degree, terms)

    def __neg__(self) -> "LinkExpr":
        return LinkExpr(self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "LinkExpr") -> "LinkExpr":
        return self + (-other)

    def scale(self, factor: Scalar | int) -> "LinkExpr":
        f = Scalar.coerce(factor)
        if f.is_zero():
            return LinkExpr.zero(self.degree)
        return LinkExpr(self.degree, {k: v * f for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinkExpr):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.degree, tuple(sorted(self.terms.items()))))

    def __repr__(self) -> str:
        if self.is_zero():
            return f"LinkExpr({self.degree}, 0)"
        bits = []
        for (word, atom), coeff in sorted(self.terms.items()):
            ops = " ".join(word) + " " if word else ""
            bits.append(f"({coeff}) {ops}{atom.name}")
        return " + ".join(bits)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [
                {
                    "coeff": coeff.to_json(),
                    "ops": list(word),
                    "atom": atom.to_json(),
                }
                for (word, atom), coeff in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "LinkExpr":
        degree = int(obj["degree"])
        terms: dict[tuple[Word, Atom], Scalar] = {}
        for item in obj.get("terms", []):
            key = (tuple(item.get("ops", [])), Atom.from_json(item["atom"]))
            coeff = Scalar.from_json(item["coeff"])
            terms[key] = terms.get(key, ZERO) + coeff
        # incoming words may be unreduced; canonicalize them
        return normalize(cls(degree, terms))


# -- normalization --------------------------------------------------------


def _normalize_applied(
    applied: list[str],
    atom: Atom,
    coeff: Scalar,
    rules: Relations,
    depth: int,
) -> dict[tuple[Word, Atom], Scalar]:
    """Rule rewriting on a structurally reduced word (innermost-first list)."""
    if depth > _MAX_REWRITE_DEPTH:  # pragma: no cover
        raise InputError("rewrite depth exceeded; relations do not terminate")
    if atom.name in rules.zero:
        return {}
    for prefix, rule_atom in rules.monomial_zeros:
        if atom == rule_atom and tuple(applied[: len(prefix)]) == prefix:
            return {}
    if applied:
        if applied[0] == "d":
            if rules.is_closed(atom.name):
                return {}
            dual = rules.duality.get(atom.name)
            if dual is not None:
                # d a -> c * (s other); re-run the remaining operators on top.
                rest = list(reversed(applied[1:]))  # back to outermost-first
                return _apply_ops(
                    rest, ["s"], dual.other, coeff * dual.coeff, rules, depth + 1
                )
        if applied[0] == "t" and rules.is_coclosed(atom.name):
            return {}
        if len(applied) >= 2 and applied[0] == "s" and applied[1] == "d":
            # d(s a) = 0 when a is co-closed (s injective) or when a is the
            # star side of a declared duality (d s a = (1/c) d d a' = 0).
            if rules.is_coclosed(atom.name):
                return {}
            for dual in rules.duality.values():
                if dual.other == atom and not dual.coeff.is_zero():
                    return {}
        if len(applied) >= 4 and applied[:4] == ["d", "s", "d", "s"]:
            mu = rules.eigen.get(atom.name)
            if mu is not None:
                if atom.degree > 6:
                    raise InputError(
                        "eigenform relations are supported for degrees 0..6"
                    )
                # Laplace eigenform: (-1)^k (d s d s - s d s d) a = mu a,
                # oriented to rewrite the word with innermost letter d:
                # [d,s,d,s] prefix (= s d s d outermost) ->
                #     [s,d,s,d] prefix - (-1)^k mu * (no ops).
                # For a 0-form the first summand is d(d* a) = 0.
                sign = -1 if atom.degree % 2 else 1
                rest = list(reversed(applied[4:]))  # back to outermost-first
                if atom.degree == 0:
                    out = {}
                else:
                    out = _apply_ops(
                        rest, ["s", "d", "s", "d"], atom, coeff, rules, depth + 1
                    )
                tail = _apply_ops(rest, [], atom, coeff * (-sign) * mu, rules, depth + 1)
                for key, value in tail.items():
                    new = out.get(key, ZERO) + value
                    if new.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = new
                return out
    word = tuple(reversed(applied))
    return {(word, atom): coeff}


def _apply_ops(
    pending_outer: list[str],
    applied: list[str],
    atom: Atom,
    coeff: Scalar,
    rules: Relations,
    depth: int,
) -> dict[tuple[Word, Atom], Scalar]:
    """Structurally reduce, innermost-first; then fire relation rules.

    ``pending_outer`` holds operators still to apply (outermost-first
    order, consumed from the end), ``applied`` the already-reduced inner
    part (innermost-first).
    """
    if depth > _MAX_REWRITE_DEPTH:  # pragma: no cover
        raise InputError("rewrite depth exceeded; relations do not terminate")
    pending = list(pending_outer)
    applied = list(applied)
    degree = _word_degree(applied, atom.degree)
    while pending:
        op = pending.pop()
        if op == "s":
            if not 0 <= degree <= 7:
                raise InputError(f"star undefined on degree {degree}")
            if applied and applied[-1] == "s":
                applied.pop()
            else:
                applied.append("s")
            degree = 7 - degree
        elif op == "d":
            if applied and applied[-1] == "d":
                return {}
            if degree >= 9:
                raise InputError(f"d applied to degree {degree}")
            applied.append("d")
            degree += 1
        elif op == "t":
            if applied and applied[-1] == "t":
                # (d*)^2 = 0 also when the inner d* stayed primitive
                return {}
            if degree == 0:
                return {}
            if 1 <= degree <= 7:
                # bridge t = (-1)^k s d s
                if degree % 2:
                    coeff = -coeff
                pending.extend(("s", "d", "s"))
            elif degree == 8:
                applied.append("t")
                degree = 7
            else:
                raise InputError(f"codifferential undefined on degree {degree}")
        else:
            raise InputError(f"unknown operator {op!r}")
    return _normalize_applied(applied, atom, coeff, rules, depth)


def apply_operator(expr: LinkExpr, op: str, rules: Relations = EMPTY_RELATIONS) -> LinkExpr:
    """Apply d, s or t to an expression and normalize."""
    out: dict[tuple[Word, Atom], Scalar] = {}
    new_degree: int | None = None
    for (word, atom), coeff in expr.terms.items():
        pieces = _apply_ops([op] + list(word), [], atom, coeff, rules, 0)
        for key, value in pieces.items():
            new = out.get(key, ZERO) + value
            if new.is_zero():
                out.pop(key, None)
            else:
                out[key] = new
    if op == "d":
        new_degree = expr.degree + 1
    elif op == "t":
        new_degree = expr.degree - 1
    else:
        new_degree = 7 - expr.degree
    return LinkExpr(new_degree, out)


def normalize(expr: LinkExpr, rules: Relations = EMPTY_RELATIONS) -> LinkExpr:
    """Re-normalize an expression under (possibly new) relations."""
    out: dict[tuple[Word, Atom], Scalar] = {}
    for (word, atom), coeff in expr.terms.items():
        pieces = _apply_ops(list(word), [], atom, coeff, rules, 0)
        for key, value in pieces.items():
            new = out.get(key, ZERO) + value
            if new.is_zero():
                out.pop(key, None)
            else:
                out[key] = new
    return LinkExpr(expr.degree, out)


def d_link(expr: LinkExpr, rules: Relations = EMPTY_RELATIONS) -> LinkExpr:
    return apply_operator(expr, "d", rules)


def star_link(expr: LinkExpr, rules: Relations = EMPTY_RELATIONS) -> LinkExpr:
    return apply_operator(expr, "s", rules)


def dstar_link(expr: LinkExpr, rules: Relations = EMPTY_RELATIONS) -> LinkExpr:
    return apply_operator(expr, "t", rules)


def laplacian_link(expr: LinkExpr, rules: Relations = EMPTY_RELATIONS) -> LinkExpr:
    """Delta = d t + t d, expanded into canonical words."""
    return d_link(dstar_link(expr, rules), rules) + dstar_link(d_link(expr, rules), rules)
