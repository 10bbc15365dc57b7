"""Symbolic Wick algebra: parsing, normal ordering, star, Fock evaluation.

Expressions are finite complex-linear combinations of words in the generators
``c(i)`` (creation) and ``a(i)`` (annihilation); the empty word is the unit.
Juxtaposition is operator composition with the leftmost factor acting last.
Normal ordering rewrites the leftmost annihilator-creator pair with

    a(i) c(j)  ->  delta_ij 1 + sum_{k,l} T^{ij}_{kl} c(k) a(l)

until every term has all creators in front.  Words are never canonicalized
modulo the braid operator here; that quotient lives in :mod:`wickforge.fock`.

Grammar (whitespace separates factors)::

    expr    := sign? term (sign term)*
    term    := coeff? factor+
    coeff   := number | '(' number ',' number ')'
    factor  := 'c(' int ')' | 'a(' int ')' | '1'
"""

from __future__ import annotations

import re
from itertools import product as iter_product
from typing import NamedTuple

import numpy as np

from .errors import ExpressionSyntaxError, SpeciesOutOfRange
from .fock import annihilation_matrix, creation_matrix
from .linalg import DEFAULT_EPS, eye, max_abs, resolve_eps
from .operators import CheckResult, StatisticsSystem, ValidationReport


class Generator(NamedTuple):
    kind: str  # "c" or "a"
    species: int


GenWord = tuple[Generator, ...]

#: Kind order used for deterministic printing: creators before annihilators.
_KIND_RANK = {"c": 0, "a": 1}


def _word_sort_key(word: GenWord):
    return tuple((_KIND_RANK[g.kind], g.species) for g in word)


class OperatorExpression:
    """A formal complex combination of generator words; zero terms are pruned."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[GenWord, complex] | None = None):
        pruned: dict[GenWord, complex] = {}
        for word, coeff in (terms or {}).items():
            coeff = complex(coeff)
            if abs(coeff) > DEFAULT_EPS:
                pruned[tuple(word)] = coeff
        self._terms = pruned

    @property
    def terms(self) -> dict[GenWord, complex]:
        return dict(self._terms)

    @classmethod
    def unit(cls, coeff: complex = 1.0) -> "OperatorExpression":
        return cls({(): coeff})

    @classmethod
    def from_word(cls, word, coeff: complex = 1.0) -> "OperatorExpression":
        return cls({tuple(word): coeff})

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperatorExpression):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "OperatorExpression") -> "OperatorExpression":
        merged = dict(self._terms)
        for word, coeff in other._terms.items():
            merged[word] = merged.get(word, 0.0) + coeff
        return OperatorExpression(merged)

    def __sub__(self, other: "OperatorExpression") -> "OperatorExpression":
        return self + other.scale(-1.0)

    def scale(self, factor: complex) -> "OperatorExpression":
        return OperatorExpression(
            {w: factor * c for w, c in self._terms.items()}
        )

    def concat(self, other: "OperatorExpression") -> "OperatorExpression":
        """Free (unordered) product: concatenate words, multiply coefficients."""
        merged: dict[GenWord, complex] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                word = w1 + w2
                merged[word] = merged.get(word, 0.0) + c1 * c2
        return OperatorExpression(merged)

    def is_normal_ordered(self) -> bool:
        return all(_first_inversion(w) is None for w in self._terms)

    def __str__(self) -> str:
        return format_expression(self)

    def __repr__(self) -> str:
        return f"OperatorExpression({format_expression(self)!r})"


class NormalForm(OperatorExpression):
    """An expression verified to have creators before annihilators in every term."""

    def __init__(self, terms: dict[GenWord, complex] | None = None):
        super().__init__(terms)
        bad = [w for w in self._terms if _first_inversion(w) is not None]
        if bad:
            raise ValueError(f"term is not normal-ordered: {bad[0]}")


def _first_inversion(word: GenWord) -> int | None:
    for pos in range(len(word) - 1):
        if word[pos].kind == "a" and word[pos + 1].kind == "c":
            return pos
    return None


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def _fmt_number(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _fmt_coeff(c: complex) -> str:
    if c.imag == 0:
        return _fmt_number(c.real)
    return f"({_fmt_number(c.real)},{_fmt_number(c.imag)})"


def format_expression(expr: OperatorExpression) -> str:
    """Deterministic text form; terms sorted by word, parseable back exactly."""
    if not expr._terms:
        return "0 1"
    pieces = []
    for word in sorted(expr._terms, key=_word_sort_key):
        coeff = expr._terms[word]
        sign = "+"
        if coeff.imag == 0 and coeff.real < 0:
            sign, coeff = "-", -coeff
        factors = " ".join(f"{g.kind}({g.species})" for g in word)
        if not word:
            body = "1" if coeff == 1 else f"{_fmt_coeff(coeff)} 1"
        elif coeff == 1:
            body = factors
        else:
            body = f"{_fmt_coeff(coeff)} {factors}"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<gen>[ca])\((?P<species>\d+)\)"
    r"|(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<lparen>\()"
    r"|(?P<rparen>\))"
    r"|(?P<comma>,)"
    r"|(?P<plus>\+)"
    r"|(?P<minus>-)"
)


class _Token(NamedTuple):
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if match.group("gen") is not None:
            tokens.append(_Token("gen", match.group(0), pos))
        else:
            tokens.append(_Token(match.lastgroup, match.group(0), pos))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], n_species: int, length: int):
        self.tokens = tokens
        self.n_species = n_species
        self.length = length
        self.idx = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.idx] if self.idx < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ExpressionSyntaxError("unexpected end of expression", self.length)
        self.idx += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ExpressionSyntaxError(
                f"expected {kind}, got {tok.text!r}", tok.pos
            )
        return tok

    def parse(self) -> OperatorExpression:
        terms: dict[GenWord, complex] = {}
        sign = 1.0
        tok = self.peek()
        if tok is not None and tok.kind in ("plus", "minus"):
            self.next()
            sign = -1.0 if tok.kind == "minus" else 1.0
        if self.peek() is None:
            raise ExpressionSyntaxError("empty expression", self.length)
        while True:
            word, coeff = self.parse_term()
            coeff *= sign
            terms[word] = terms.get(word, 0.0) + coeff
            tok = self.peek()
            if tok is None:
                break
            if tok.kind == "plus":
                sign = 1.0
            elif tok.kind == "minus":
                sign = -1.0
            else:
                raise ExpressionSyntaxError(
                    f"expected '+' or '-', got {tok.text!r}", tok.pos
                )
            self.next()
        return OperatorExpression(terms)

    def parse_term(self) -> tuple[GenWord, complex]:
        coeff = self.parse_coeff()
        word: list[Generator] = []
        saw_factor = False
        while True:
            tok = self.peek()
            if tok is None or tok.kind in ("plus", "minus"):
                break
            if tok.kind == "gen":
                self.next()
                word.append(self.make_generator(tok))
                saw_factor = True
            elif tok.kind == "num":
                if tok.text != "1":
                    raise ExpressionSyntaxError(
                        f"expected factor, got number {tok.text!r}", tok.pos
                    )
                self.next()
                saw_factor = True  # the unit factor contributes no letters
            else:
                raise ExpressionSyntaxError(
                    f"expected factor, got {tok.text!r}", tok.pos
                )
        if not saw_factor:
            tok = self.peek()
            pos = tok.pos if tok else self.length
            raise ExpressionSyntaxError("term has no factors", pos)
        return tuple(word), coeff

    def parse_coeff(self) -> complex:
        tok = self.peek()
        if tok is None:
            raise ExpressionSyntaxError("unexpected end of expression", self.length)
        if tok.kind == "lparen":
            self.next()
            re_part = self.parse_signed_number()
            self.expect("comma")
            im_part = self.parse_signed_number()
            self.expect("rparen")
            return complex(re_part, im_part)
        if tok.kind == "num":
            nxt = (
                self.tokens[self.idx + 1]
                if self.idx + 1 < len(self.tokens)
                else None
            )
            if nxt is not None and nxt.kind in ("gen", "num"):
                self.next()
                return complex(float(tok.text), 0.0)
            # a lone number is only valid as the unit factor "1"
            return 1.0
        return 1.0

    def parse_signed_number(self) -> float:
        sign = 1.0
        tok = self.next()
        if tok.kind in ("plus", "minus"):
            sign = -1.0 if tok.kind == "minus" else 1.0
            tok = self.next()
        if tok.kind != "num":
            raise ExpressionSyntaxError(f"expected number, got {tok.text!r}", tok.pos)
        return sign * float(tok.text)

    def make_generator(self, tok: _Token) -> Generator:
        match = _TOKEN_RE.match(tok.text)
        species = int(match.group("species"))
        if not 1 <= species <= self.n_species:
            raise SpeciesOutOfRange(
                f"species {species} out of range 1..{self.n_species}"
            )
        return Generator(tok.text[0], species)


def parse_expression(text: str, n_species: int) -> OperatorExpression:
    """Parse expression text; round-trips exactly with :func:`format_expression`."""
    if n_species < 1:
        raise ValueError(f"need at least one species, got {n_species}")
    return _Parser(_tokenize(text), n_species, len(text)).parse()


# ---------------------------------------------------------------------------
# Normal ordering and the Wick product
# ---------------------------------------------------------------------------

def _check_word_species(word: GenWord, n_species: int) -> None:
    for gen in word:
        if not 1 <= gen.species <= n_species:
            raise SpeciesOutOfRange(
                f"species {gen.species} out of range 1..{n_species}"
            )


def normal_order(expr: OperatorExpression, system: StatisticsSystem) -> NormalForm:
    """Rewrite to creators-first form, preserving the operator on every sector.

    Leftmost-innermost strategy; each rewrite chain is bounded by the squared
    word length (the annihilator-creator inversion count strictly drops).
    """
    t4 = system.cross.tensor()
    n_sp = system.dim
    out: dict[GenWord, complex] = {}
    for word, coeff in expr._terms.items():
        _check_word_species(word, n_sp)
        bound = max(1, len(word)) ** 2
        pending: list[tuple[GenWord, complex, int]] = [(word, coeff, 0)]
        while pending:
            w, c, depth = pending.pop()
            pos = _first_inversion(w)
            if pos is None:
                out[w] = out.get(w, 0.0) + c
                continue
            if depth >= bound:
                raise RuntimeError(
                    f"normal ordering exceeded {bound} steps on {w}"
                )
            i, j = w[pos].species, w[pos + 1].species
            head, tail = w[:pos], w[pos + 2:]
            if i == j:
                pending.append((head + tail, c, depth + 1))
            for k0 in range(n_sp):
                for l0 in range(n_sp):
                    tcoeff = t4[k0, l0, i - 1, j - 1]
                    if tcoeff != 0:
                        mid = (Generator("c", k0 + 1), Generator("a", l0 + 1))
                        pending.append((head + mid + tail, c * tcoeff, depth + 1))
    return NormalForm(out)


def wick_product(
    e1: OperatorExpression, e2: OperatorExpression, system: StatisticsSystem
) -> NormalForm:
    """Product in the Wick algebra: concatenate, then normal-order."""
    return normal_order(e1.concat(e2), system)


def star(expr: OperatorExpression) -> OperatorExpression:
    """The involution: reverse words, swap c <-> a, conjugate coefficients."""
    flipped = {"c": "a", "a": "c"}
    return OperatorExpression(
        {
            tuple(Generator(flipped[g.kind], g.species) for g in reversed(word)):
            coeff.conjugate()
            for word, coeff in expr._terms.items()
        }
    )


# ---------------------------------------------------------------------------
# Fock evaluation
# ---------------------------------------------------------------------------

def evaluation_blocks(
    expr: OperatorExpression,
    system: StatisticsSystem,
    n: int,
    cap: int | None = None,
) -> dict[int, np.ndarray]:
    """Blockwise Fock matrices of the expression on sector n, keyed by target degree.

    Factors compose right to left.  Terms that push an intermediate degree
    below zero annihilate and contribute zeros; terms whose final degree is
    negative are dropped entirely.
    """
    n_sp = system.dim
    dim_in = n_sp**n
    blocks: dict[int, np.ndarray] = {}
    for word, coeff in expr._terms.items():
        _check_word_species(word, n_sp)
        shift = sum(1 if g.kind == "c" else -1 for g in word)
        target = n + shift
        if target < 0:
            continue
        mat = eye(dim_in)
        degree = n
        dead = False
        for gen in reversed(word):
            if gen.kind == "c":
                mat = creation_matrix(system, gen.species, degree, cap) @ mat
                degree += 1
            else:
                if degree == 0:
                    dead = True
                    break
                mat = annihilation_matrix(system, gen.species, degree, cap) @ mat
                degree -= 1
        if target not in blocks:
            blocks[target] = np.zeros((n_sp**target, dim_in), dtype=complex)
        if not dead:
            blocks[target] = blocks[target] + coeff * mat
    return blocks


def evaluate_on_sector(
    expr: OperatorExpression,
    system: StatisticsSystem,
    n: int,
    cap: int | None = None,
) -> np.ndarray | dict[int, np.ndarray]:
    """Matrix of the expression on sector n.

    When every term shifts the degree by the same amount the single matrix
    (target sector x sector n) is returned; otherwise the blockwise dict from
    :func:`evaluation_blocks`.
    """
    blocks = evaluation_blocks(expr, system, n, cap)
    if len(blocks) == 1:
        return next(iter(blocks.values()))
    return blocks


# ---------------------------------------------------------------------------
# Cross-symmetry axiom checks
# ---------------------------------------------------------------------------

def _psi_action_residual(
    rewrite_system: StatisticsSystem,
    fock_system: StatisticsSystem,
    max_degree: int,
    cap: int | None = None,
) -> float:
    """Worst gap between symbolic normal ordering and the sector recursion.

    Normal-orders ``a(i) c(j1) ... c(jm)`` letter by letter with
    ``rewrite_system``, applies the result to the vacuum, and compares with
    the annihilation matrix column of ``fock_system`` (the whole-product
    action).  Separating the two systems lets tests break one route.
    """
    n_sp = fock_system.dim
    worst = 0.0
    for m in range(1, max_degree + 1):
        for i in range(1, n_sp + 1):
            direct = annihilation_matrix(fock_system, i, m, cap)
            for col, letters in enumerate(
                iter_product(range(1, n_sp + 1), repeat=m)
            ):
                word = (Generator("a", i),) + tuple(
                    Generator("c", j) for j in letters
                )
                nf = normal_order(OperatorExpression({word: 1.0}), rewrite_system)
                blocks = evaluation_blocks(nf, fock_system, 0, cap)
                got = blocks.get(
                    m - 1, np.zeros((n_sp ** (m - 1), 1), dtype=complex)
                )[:, 0]
                worst = max(worst, max_abs(got - direct[:, col]))
    return worst


def _star_axiom_residual(system: StatisticsSystem, max_degree: int) -> float:
    """Worst coefficient gap between star-then-order and order-then-star."""
    n_sp = system.dim
    worst = 0.0
    for m in range(1, max_degree + 1):
        for i in range(1, n_sp + 1):
            for letters in iter_product(range(1, n_sp + 1), repeat=m):
                word = (Generator("a", i),) + tuple(
                    Generator("c", j) for j in letters
                )
                expr = OperatorExpression({word: 1.0})
                lhs = star(normal_order(expr, system))
                rhs = normal_order(star(expr), system)
                diff = lhs - rhs
                worst = max(
                    worst, max((abs(c) for c in diff._terms.values()), default=0.0)
                )
    return worst


def check_cross_symmetry_axioms(
    system: StatisticsSystem,
    max_degree: int = 2,
    eps: float | None = None,
    cap: int | None = None,
) -> ValidationReport:
    """Degreewise verification of the twist axioms behind the rewrite rule."""
    eps = resolve_eps(eps)
    if max_degree > 3:
        raise ValueError("max_degree above 3 is not supported")
    psi_res = _psi_action_residual(system, system, max_degree, cap)
    star_res = _star_axiom_residual(system, max_degree)
    checks = (
        CheckResult(
            "psi_action", "pass" if psi_res <= eps else "fail", psi_res,
            "symbolic normal ordering matches the sector recursion",
        ),
        CheckResult(
            "star_axiom", "pass" if star_res <= eps else "fail", star_res,
            "star of a normal form equals the normal form of the star",
        ),
    )
    return ValidationReport(label=system.label, checks=checks)
