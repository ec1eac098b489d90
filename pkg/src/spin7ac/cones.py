"""Symbolic calculus of homogeneous forms on the 8-dimensional cone C(Sigma).

A homogeneous k-form of rate lambda is gamma = r^lambda (r^(k-1) dr ^ alpha
+ r^k beta) with alpha, beta formal link forms of degrees k-1 and k.  The
four first-order operators act per degree-k component as

    d gamma      : dr-slot (lambda+k) beta - d alpha,   tangential d beta
                   (output rate lambda - 1, degree k+1)
    star gamma   : tangential *alpha, dr-slot (-1)^k *beta
                   (output rate lambda, degree 8-k)
    d* gamma     : tangential -(lambda+8-k) alpha + d* beta,
                   dr-slot -d* alpha        (output rate lambda-1, degree k-1)
    Delta gamma  : dr-slot Delta alpha - (lambda+k-2)(lambda-k+8) alpha - 2 d* beta,
                   tangential Delta beta - (lambda+k)(lambda-k+6) beta - 2 d alpha
                   (output rate lambda-2, degree k)

Everything is exact rewriting over LinkExpr; no link geometry is ever
discretized.  The rate-classification engine mechanizes the vanishing
recursion: impose (d + d*) gamma = 0, derive per-slot Laplace relations
Delta x = c x + coupling by applying d and d* to the first-order system,
and propagate using only two semantic facts about a compact link --
Delta >= 0 (so Delta x = c x with c < 0 forces x = 0) and harmonic
implies closed and co-closed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InputError
from .linkexpr import (
    EMPTY_RELATIONS,
    Atom,
    LinkExpr,
    Relations,
    Word,
    d_link,
    dstar_link,
    laplacian_link,
    normalize,
    star_link,
)
from .scalars import ONE, ZERO, Scalar, sqrt_rational


@dataclass(frozen=True)
class HomogeneousConeForm:
    """Mixed-degree homogeneous form on the cone: one (alpha, beta) per degree.

    ``components[k] = (alpha, beta)`` with alpha of link degree k-1 (the dr
    slot, None when absent) and beta of link degree k.  Degrees up to 9 are
    tolerated so that the classification engine can carry formal top slots.
    """

    rate: Scalar
    components: dict[int, tuple[LinkExpr | None, LinkExpr | None]]

    def __post_init__(self) -> None:
        for k, (alpha, beta) in self.components.items():
            if not 0 <= k <= 9:
                raise InputError(f"cone degree {k} out of range")
            if alpha is not None and not alpha.is_zero() and alpha.degree != k - 1:
                raise InputError(
                    f"dr-slot of degree-{k} component must have link degree {k-1}"
                )
            if beta is not None and not beta.is_zero() and beta.degree != k:
                raise InputError(
                    f"tangential slot of degree-{k} component must have link degree {k}"
                )

    @classmethod
    def build(
        cls,
        rate: Scalar | int,
        components: Mapping[int, tuple[LinkExpr | None, LinkExpr | None]],
    ) -> "HomogeneousConeForm":
        clean: dict[int, tuple[LinkExpr | None, LinkExpr | None]] = {}
        for k, (alpha, beta) in components.items():
            a = None if alpha is None or alpha.is_zero() else alpha
            b = None if beta is None or beta.is_zero() else beta
            if a is not None or b is not None:
                clean[k] = (a, b)
        return cls(Scalar.coerce(rate), clean)

    def is_zero(self) -> bool:
        return not self.components

    def slot(self, k: int, which: str) -> LinkExpr | None:
        alpha, beta = self.components.get(k, (None, None))
        return alpha if which == "alpha" else beta

    def __add__(self, other: "HomogeneousConeForm") -> "HomogeneousConeForm":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.rate != other.rate:
            raise InputError("cannot add homogeneous forms of different rates")
        keys = set(self.components) | set(other.components)
        out: dict[int, tuple[LinkExpr | None, LinkExpr | None]] = {}
        for k in keys:
            a1, b1 = self.components.get(k, (None, None))
            a2, b2 = other.components.get(k, (None, None))
            out[k] = (_add_opt(a1, a2), _add_opt(b1, b2))
        return HomogeneousConeForm.build(self.rate, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomogeneousConeForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.rate == other.rate and self.components == other.components

    def renormalized(self, rules: Relations) -> "HomogeneousConeForm":
        out = {}
        for k, (alpha, beta) in self.components.items():
            out[k] = (
                None if alpha is None else normalize(alpha, rules),
                None if beta is None else normalize(beta, rules),
            )
        return HomogeneousConeForm.build(self.rate, out)

    def to_json(self) -> dict:
        comps = []
        for k in sorted(self.components):
            alpha, beta = self.components[k]
            comps.append(
                {
                    "degree": k,
                    "alpha": None if alpha is None else alpha.to_json(),
                    "beta": None if beta is None else beta.to_json(),
                }
            )
        return {"rate": self.rate.to_json(), "components": comps}

    @classmethod
    def from_json(cls, obj: Mapping) -> "HomogeneousConeForm":
        rate = Scalar.from_json(obj["rate"])
        comps: dict[int, tuple[LinkExpr | None, LinkExpr | None]] = {}
        for item in obj.get("components", []):
            k = int(item["degree"])
            alpha = item.get("alpha")
            beta = item.get("beta")
            comps[k] = (
                None if alpha is None else LinkExpr.from_json(alpha),
                None if beta is None else LinkExpr.from_json(beta),
            )
        return cls.build(rate, comps)


def _add_opt(x: LinkExpr | None, y: LinkExpr | None) -> LinkExpr | None:
    if x is None:
        return y
    if y is None:
        return x
    s = x + y
    return None if s.is_zero() else s


# -- the four cone operators ----------------------------------------------


def cone_d(g: HomogeneousConeForm, rules: Relations = EMPTY_RELATIONS) -> HomogeneousConeForm:
    out: dict[int, list[LinkExpr | None]] = {}
    lam = g.rate
    for k, (alpha, beta) in g.components.items():
        dr_part: LinkExpr | None = None
        if beta is not None:
            dr_part = beta.scale(lam + Scalar(k))
        if alpha is not None:
            dr_part = _add_opt(dr_part, -d_link(alpha, rules))
        tan_part = None if beta is None else d_link(beta, rules)
        _accumulate(out, k + 1, dr_part, tan_part)
    return _collect(lam - ONE, out)


def cone_star(g: HomogeneousConeForm, rules: Relations = EMPTY_RELATIONS) -> HomogeneousConeForm:
    out: dict[int, list[LinkExpr | None]] = {}
    for k, (alpha, beta) in g.components.items():
        if k > 8:
            raise InputError("star undefined on formal degree-9 components")
        dr_part = None
        if beta is not None:
            dr_part = star_link(beta, rules)
            if k % 2:
                dr_part = -dr_part
        tan_part = None if alpha is None else star_link(alpha, rules)
        _accumulate(out, 8 - k, dr_part, tan_part)
    return _collect(g.rate, out)


def cone_dstar(g: HomogeneousConeForm, rules: Relations = EMPTY_RELATIONS) -> HomogeneousConeForm:
    out: dict[int, list[LinkExpr | None]] = {}
    lam = g.rate
    for k, (alpha, beta) in g.components.items():
        tan_part: LinkExpr | None = None
        if alpha is not None:
            tan_part = alpha.scale(-(lam + Scalar(8 - k)))
        if beta is not None:
            tan_part = _add_opt(tan_part, dstar_link(beta, rules))
        dr_part = None if alpha is None else -dstar_link(alpha, rules)
        _accumulate(out, k - 1, dr_part, tan_part)
    return _collect(lam - ONE, out)


def cone_laplacian(g: HomogeneousConeForm, rules: Relations = EMPTY_RELATIONS) -> HomogeneousConeForm:
    out: dict[int, list[LinkExpr | None]] = {}
    lam = g.rate
    for k, (alpha, beta) in g.components.items():
        dr_part: LinkExpr | None = None
        if alpha is not None:
            factor = (lam + Scalar(k - 2)) * (lam - Scalar(k) + Scalar(8))
            dr_part = laplacian_link(alpha, rules) + alpha.scale(-factor)
        if beta is not None:
            dr_part = _add_opt(dr_part, dstar_link(beta, rules).scale(-2))
        tan_part: LinkExpr | None = None
        if beta is not None:
            factor = (lam + Scalar(k)) * (lam - Scalar(k) + Scalar(6))
            tan_part = laplacian_link(beta, rules) + beta.scale(-factor)
        if alpha is not None:
            tan_part = _add_opt(tan_part, d_link(alpha, rules).scale(-2))
        _accumulate(out, k, dr_part, tan_part)
    return _collect(lam - Scalar(2), out)


def _accumulate(
    out: dict[int, list[LinkExpr | None]],
    k: int,
    dr_part: LinkExpr | None,
    tan_part: LinkExpr | None,
) -> None:
    slot = out.setdefault(k, [None, None])
    slot[0] = _add_opt(slot[0], dr_part)
    slot[1] = _add_opt(slot[1], tan_part)


def _collect(rate: Scalar, out: dict[int, list[LinkExpr | None]]) -> HomogeneousConeForm:
    return HomogeneousConeForm.build(rate, {k: (v[0], v[1]) for k, v in out.items()})


# -- nearly parallel structure and ASD characterization -------------------


def nearly_parallel_phi() -> tuple[Atom, Relations]:
    """The abstract G2 3-form with its nearly parallel relation d phi = 4 *phi."""
    phi = Atom("phi", 3)
    rules = Relations()
    rules.declare_nearly_parallel(phi, 4)
    return phi, rules


def psi_cone(declare_nearly_parallel: bool = True) -> tuple[HomogeneousConeForm, Relations]:
    """psi_C = r^3 dr ^ phi + r^4 *phi as a rate-0 homogeneous 4-form."""
    phi = Atom("phi", 3)
    rules = Relations()
    if declare_nearly_parallel:
        rules.declare_nearly_parallel(phi, 4)
    expr = LinkExpr.atom(phi)
    gamma = HomogeneousConeForm.build(
        0, {4: (expr, star_link(expr, rules))}
    )
    return gamma, rules


@dataclass(frozen=True)
class AsdClosedCondition:
    """Link equation characterizing closed homogeneous ASD 4-forms of rate lambda.

    For lambda != -4 the condition is d alpha = coefficient * (star alpha);
    at lambda = -4 it degenerates to: alpha harmonic.
    """

    rate: Scalar
    harmonic: bool
    coefficient: Scalar | None

    def equation_text(self) -> str:
        if self.harmonic:
            return "alpha harmonic"
        return f"d_Sigma alpha = ({self.coefficient}) *_Sigma alpha"

    def relations_for(self, alpha: Atom) -> Relations:
        rules = Relations()
        if self.harmonic:
            rules.harmonic.add(alpha.name)
        else:
            assert self.coefficient is not None
            rules.duality[alpha.name] = _duality(self.coefficient, alpha)
        return rules

    def to_json(self) -> dict:
        return {
            "rate": self.rate.to_json(),
            "harmonic": self.harmonic,
            "coefficient": None if self.coefficient is None else self.coefficient.to_json(),
            "equation": self.equation_text(),
        }


def _duality(coeff: Scalar, atom: Atom):
    from .linkexpr import Duality

    return Duality(coeff, atom)


def asd_closed_condition(lam: Scalar | int) -> AsdClosedCondition:
    lam = Scalar.coerce(lam)
    if lam == Scalar(-4):
        return AsdClosedCondition(rate=lam, harmonic=True, coefficient=None)
    return AsdClosedCondition(rate=lam, harmonic=False, coefficient=-(lam + Scalar(4)))


def asd_form(alpha: Atom, lam: Scalar | int, rules: Relations = EMPTY_RELATIONS) -> HomogeneousConeForm:
    """gamma = r^(lambda+3) dr ^ alpha - r^(lambda+4) * alpha (anti-self-dual)."""
    if alpha.degree != 3:
        raise InputError("ASD 4-forms need a degree-3 link form")
    expr = LinkExpr.atom(alpha)
    return HomogeneousConeForm.build(
        Scalar.coerce(lam), {4: (expr, -star_link(expr, rules))}
    )


# -- rate classification ---------------------------------------------------

SlotKey = tuple[int, str]  # (link degree, "alpha" | "beta")


@dataclass(frozen=True)
class SlotVerdict:
    status: str  # "forced-zero" | "harmonic" | "coupled"
    mechanism: str | None = None  # "eigenvalue" | "back-substitution" for forced-zero
    coefficient: Scalar | None = None  # the c in Delta x = c x, when derived
    detail: str | None = None

    def to_json(self) -> dict:
        out: dict = {"status": self.status}
        if self.mechanism:
            out["mechanism"] = self.mechanism
        if self.coefficient is not None:
            out["coefficient"] = self.coefficient.to_json()
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class RateClassification:
    parity: str
    rate: Scalar
    verdicts: dict[SlotKey, SlotVerdict]

    def survivors(self) -> list[SlotKey]:
        return sorted(k for k, v in self.verdicts.items() if v.status == "harmonic")

    def forced_zero(self) -> list[SlotKey]:
        return sorted(k for k, v in self.verdicts.items() if v.status == "forced-zero")

    def to_json(self) -> dict:
        return {
            "parity": self.parity,
            "rate": self.rate.to_json(),
            "verdicts": {
                f"{degree}:{slot}": verdict.to_json()
                for (degree, slot), verdict in sorted(self.verdicts.items())
            },
        }


Monomial = tuple[Word, Atom]


def _deriv_count(word: Word) -> int:
    return sum(1 for op in word if op in ("d", "t"))


def _monomial_rank(m: Monomial):
    word, atom = m
    # Elimination priority: second-order words, then codifferential words,
    # then derivative words, then bare atoms; deterministic tie-breaks.
    return (-_deriv_count(word), -len(word), word, atom.name)


class _LinearSystem:
    """Gaussian elimination over the (word, atom) monomial basis."""

    def __init__(self) -> None:
        self.rows: list[dict[Monomial, Scalar]] = []
        self.pivots: list[Monomial] = []

    def add(self, expr: LinkExpr) -> None:
        vec = dict(expr.terms)
        vec = self._reduce(vec)
        if not vec:
            return
        pivot = min(vec, key=_monomial_rank)
        inv = vec[pivot].inverse()
        vec = {m: c * inv for m, c in vec.items()}
        for i, row in enumerate(self.rows):
            coeff = row.get(pivot)
            if coeff is not None:
                self.rows[i] = _row_sub(row, vec, coeff)
        self.rows.append(vec)
        self.pivots.append(pivot)

    def _reduce(self, vec: dict[Monomial, Scalar]) -> dict[Monomial, Scalar]:
        for pivot, row in zip(self.pivots, self.rows):
            coeff = vec.get(pivot)
            if coeff is not None:
                vec = _row_sub(vec, row, coeff)
        return vec

    def reduce_expr(self, expr: LinkExpr) -> dict[Monomial, Scalar]:
        return self._reduce(dict(expr.terms))


def _row_sub(
    vec: dict[Monomial, Scalar], row: dict[Monomial, Scalar], factor: Scalar
) -> dict[Monomial, Scalar]:
    out = dict(vec)
    for m, c in row.items():
        new = out.get(m, ZERO) - factor * c
        if new.is_zero():
            out.pop(m, None)
        else:
            out[m] = new
    return out


def _parity_atoms(parity: str) -> dict[SlotKey, Atom]:
    if parity == "even":
        degrees = (0, 2, 4, 6, 8)
    elif parity == "odd":
        degrees = (1, 3, 5, 7)
    else:
        raise InputError("parity must be 'even' or 'odd'")
    atoms: dict[SlotKey, Atom] = {}
    for k in degrees:
        if k >= 1:
            atoms[(k - 1, "alpha")] = Atom(f"alpha{k-1}", k - 1)
        atoms[(k, "beta")] = Atom(f"beta{k}", k)
    return atoms


def _first_order_equations(
    parity: str, lam: Scalar, atoms: dict[SlotKey, Atom], rules: Relations
) -> list[LinkExpr]:
    """Per-slot components of (d + d*)gamma = 0 for the generic form."""
    components: dict[int, tuple[LinkExpr | None, LinkExpr | None]] = {}
    degrees = (0, 2, 4, 6, 8) if parity == "even" else (1, 3, 5, 7)
    for k in degrees:
        alpha = LinkExpr.atom(atoms[(k - 1, "alpha")]) if k >= 1 else None
        beta = LinkExpr.atom(atoms[(k, "beta")])
        components[k] = (alpha, beta)
    gamma = HomogeneousConeForm.build(lam, components)
    total = cone_d(gamma, rules) + cone_dstar(gamma, rules)
    equations = []
    for k, (alpha, beta) in total.components.items():
        for expr in (alpha, beta):
            if expr is not None and not expr.is_zero():
                equations.append(expr)
    return equations


def _promote_single_monomials(
    equations: list[LinkExpr], rules: Relations
) -> tuple[list[LinkExpr], bool]:
    """Turn single-monomial equations into kill rules; renormalize the rest."""
    changed = False
    remaining: list[LinkExpr] = []
    for eq in equations:
        eq = normalize(eq, rules)
        if eq.is_zero():
            continue
        if len(eq.terms) == 1:
            ((word, atom),) = eq.terms.keys()
            if word:
                key = (tuple(reversed(word)), atom)
                if key not in rules.monomial_zeros:
                    rules.monomial_zeros.add(key)
                    changed = True
            else:
                if atom.name not in rules.zero:
                    rules.zero.add(atom.name)
                    changed = True
            continue
        remaining.append(eq)
    return remaining, changed


def _second_order_relation(
    atom: Atom,
    equations: list[LinkExpr],
    rules: Relations,
) -> dict[Monomial, Scalar]:
    """Delta(atom) reduced modulo the prepended first-order system."""
    system = _LinearSystem()
    for eq in equations:
        system.add(eq)
    for eq in equations:
        if eq.degree <= 8:
            system.add(d_link(eq, rules))
        if 1 <= eq.degree <= 8:
            system.add(dstar_link(eq, rules))
    delta = laplacian_link(LinkExpr.atom(atom), rules)
    return system.reduce_expr(delta)


def classify_rate(parity: str, lam: Scalar | int) -> RateClassification:
    """Run the vanishing recursion for closed-and-coclosed homogeneous forms.

    Stage 1 derives, once and for all, the per-slot Laplace relations
    Delta x = c x + coupling from the first-order system (the analogues
    of the generic recursion patterns).  Stage 2 propagates: coupling
    terms die as their atoms are forced to zero or become harmonic
    (hence closed and co-closed), a coupling-free relation with c < 0
    forces the slot to zero, with c = 0 makes it harmonic; first-order
    equations that collapse onto a single slot force it to zero by
    back-substitution.  Certifies the (even, -4) and (odd, -3) tables;
    at other rates stalled slots are reported as coupled, not guessed.
    """
    lam = Scalar.coerce(lam)
    if not lam.is_rational():
        raise InputError("classification rates must be rational")
    atoms = _parity_atoms(parity)
    rules = Relations()
    states: dict[SlotKey, str] = {key: "unknown" for key in atoms}
    mechanisms: dict[SlotKey, str] = {}
    coefficients: dict[SlotKey, Scalar] = {}
    details: dict[SlotKey, str] = {}

    raw_equations = _first_order_equations(parity, lam, atoms, rules)
    equations, _ = _promote_single_monomials(list(raw_equations), rules)

    # Stage 1: frozen second-order relations.
    frozen: dict[SlotKey, tuple[Scalar, LinkExpr]] = {}
    for key, atom in atoms.items():
        reduced = _second_order_relation(atom, equations, rules)
        c = reduced.pop(((), atom), ZERO)
        frozen[key] = (c, LinkExpr(atom.degree, reduced))

    # Stage 2: propagation to a fixed point.
    for _ in range(2 * len(atoms) + 2):
        changed = False
        for key, atom in atoms.items():
            if states[key] != "unknown":
                continue
            c, coupling = frozen[key]
            live = normalize(coupling, rules)
            if not live.is_zero():
                details[key] = _render(dict(live.terms), c, atom)
                continue
            sign = c.sign()
            if sign < 0:
                states[key] = "zero"
                mechanisms[key] = "eigenvalue"
                coefficients[key] = c
                rules.zero.add(atom.name)
                changed = True
            elif sign == 0:
                states[key] = "harmonic"
                coefficients[key] = c
                rules.harmonic.add(atom.name)
                changed = True
            else:
                details[key] = f"Delta {atom.name} = ({c}) {atom.name}, c > 0"

        # Back-substitution: a first-order equation collapsing to c*x = 0.
        equations, promoted = _promote_single_monomials(equations, rules)
        changed |= promoted
        for key, atom in atoms.items():
            if atom.name in rules.zero and states[key] != "zero":
                states[key] = "zero"
                mechanisms[key] = "back-substitution"
                changed = True
        if not changed:
            break

    verdicts: dict[SlotKey, SlotVerdict] = {}
    for key, atom in atoms.items():
        state = states[key]
        if state == "zero":
            mechanism = mechanisms.get(key, "eigenvalue")
            verdicts[key] = SlotVerdict(
                status="forced-zero",
                mechanism=mechanism,
                coefficient=coefficients.get(key) if mechanism == "eigenvalue" else None,
            )
        elif state == "harmonic":
            verdicts[key] = SlotVerdict(status="harmonic", coefficient=coefficients.get(key))
        else:
            verdicts[key] = SlotVerdict(status="coupled", detail=details.get(key, "unresolved"))
    return RateClassification(parity=parity, rate=lam, verdicts=verdicts)


def _render(reduced: dict[Monomial, Scalar], c: Scalar, atom: Atom) -> str:
    bits = [f"({c}) {atom.name}"] if not c.is_zero() else []
    for (word, a), coeff in sorted(reduced.items()):
        ops = " ".join(word) + " " if word else ""
        bits.append(f"({coeff}) {ops}{a.name}")
    rhs = " + ".join(bits) if bits else "0"
    return f"Delta {atom.name} = {rhs}"


# -- critical rates of the Laplacian on 1-forms ----------------------------


@dataclass(frozen=True)
class CriticalRate:
    rate: Scalar | None
    rate_float: float
    exact: bool
    source: str

    def to_json(self) -> dict:
        return {
            "rate": None if self.rate is None else self.rate.to_json(),
            "rate_float": self.rate_float,
            "exact": self.exact,
            "source": self.source,
        }


COCLOSED_ONE_FORM_FLOOR = 12  # smallest link eigenvalue on co-closed 1-forms


def one_form_rate_notes() -> list[str]:
    """Preconditions under which the 1-form critical-rate scan is complete."""
    return [
        "no critical rates exist in (-6, 0]: admissible scalar eigenvalues are "
        "0 or >= 7 (Lichnerowicz-Obata at scalar curvature 42), so the roots "
        "-4 +- sqrt(9 + mu) avoid (-6, 0]",
        f"co-closed 1-forms have link eigenvalue >= {COCLOSED_ONE_FORM_FLOOR}, "
        "which excludes the co-closed (type iv) branch below rate 1",
    ]


def one_form_critical_rates(
    scalar_eigenvalues: Iterable[Scalar | int | Fraction],
) -> list[CriticalRate]:
    """Critical rates in (0,1) of the cone Laplacian on 1-forms.

    Input: link scalar-Laplacian eigenvalues at the normalization where
    the scalar curvature is 42.  Each must be 0 or >= 7 (Lichnerowicz-
    Obata); the quadratic (lambda+1)(lambda+7) = mu then contributes a
    critical rate for each root with lambda in (0,1), and no rates exist
    in (-6, 0].
    """
    out: list[CriticalRate] = []
    for raw in scalar_eigenvalues:
        mu = Scalar.coerce(raw)
        if mu < Scalar(0) or (Scalar(0) < mu < Scalar(7)):
            raise InputError(
                f"scalar eigenvalue {mu} violates the Lichnerowicz-Obata bound "
                "(must be 0 or >= 7 at scalar curvature 42)"
            )
        # lambda = -4 +- sqrt(9 + mu); only the + root can land in (0, 1).
        if not (Scalar(7) < mu < Scalar(16)):
            continue
        disc = mu + Scalar(9)
        root = sqrt_rational(disc.as_fraction()) if disc.is_rational() else None
        source = f"type (ii): (lambda+1)(lambda+7) = {mu}"
        if root is not None:
            lam = root - Scalar(4)
            out.append(CriticalRate(rate=lam, rate_float=float(lam), exact=True, source=source))
        else:
            lam_float = float(disc) ** 0.5 - 4.0
            out.append(
                CriticalRate(rate=None, rate_float=lam_float, exact=False, source=source)
            )
    return out
