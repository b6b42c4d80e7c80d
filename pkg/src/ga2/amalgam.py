"""Words over the generators, the unique normal form, and cyclic reduction.

A normal form is ``b o c_k o ... o c_1`` where ``b`` is basic and the
``c_i`` alternate between :class:`CosetRepA` and :class:`CosetRepE`.
``NormalForm.letters`` holds ``(c_k, ..., c_1)`` in written order, so the
last letter is applied first.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .algebra import BiPoly, FieldCtx, Scalar, UniPoly, leading_form, total_degree
from .errors import InvalidLetters, NoElementaryPart, NotAnAutomorphism, ParseError
from .generators import (AffineMap, BasicMap, CosetRepA, CosetRepE, ElementaryMap,
                         Matrix2, PolyMap, classify_letter, jacobian_det)


def _ctx_of(letters):
    return letters[0].ctx if letters else None


@dataclass(frozen=True)
class Word:
    """Letters in written order; the rightmost is applied first."""

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __matmul__(self, other: "Word") -> "Word":
        return Word(self.letters + tuple(_as_word(other).letters))

    def inverse(self) -> "Word":
        return Word(tuple(g.inverse() for g in reversed(self.letters)))

    def to_polymap(self, ctx: FieldCtx | None = None) -> PolyMap:
        return word_to_polymap(self, ctx)

    def __str__(self):
        return " o ".join(str(g) for g in self.letters) or "identity"


def _as_word(w):
    if isinstance(w, Word):
        return w
    if isinstance(w, NormalForm):
        return w.word()
    return Word((w,))


@dataclass(frozen=True)
class NormalForm:
    b: BasicMap
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for k, (c1, c2) in enumerate(zip(self.letters, self.letters[1:])):
            if c1.factor == c2.factor:
                raise InvalidLetters(f"letters {k} and {k + 1} lie in the same factor")
        for c in self.letters:
            if not isinstance(c, (CosetRepA, CosetRepE)):
                raise InvalidLetters(f"{c} is not a coset representative")

    @classmethod
    def identity(cls, ctx):
        return cls(BasicMap.identity(ctx))

    @property
    def ctx(self) -> FieldCtx:
        return self.b.ctx

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def leading_a_present(self) -> bool:
        return bool(self.letters) and self.letters[0].factor == "A"

    @property
    def trailing_e_present(self) -> bool:
        return bool(self.letters) and self.letters[-1].factor == "E"

    @property
    def pairs(self):
        """``[(a_m or None, e_m), ..., (a_1, e_1 or None)]``."""
        seq = list(self.letters)
        if seq and seq[0].factor == "E":
            seq.insert(0, None)
        if len(seq) % 2:
            seq.append(None)
        return [(seq[i], seq[i + 1]) for i in range(0, len(seq), 2)]

    def is_cyclically_reduced(self) -> bool:
        return self.length > 0 and self.length % 2 == 0

    def word(self) -> Word:
        return Word((self.b,) + self.letters)

    def to_polymap(self) -> PolyMap:
        return word_to_polymap(self)

    def poly_degree(self):
        return poly_degree(self)

    def degree(self) -> int:
        return nf_degree(self)

    def det(self) -> Scalar:
        """The (constant) Jacobian determinant."""
        d = self.b.det()
        for c in self.letters:
            d = d * c.det()
        return d

    def inverse(self) -> "NormalForm":
        return invert_nf(self)

    def __matmul__(self, other) -> "NormalForm":
        return normalize(self.word() @ _as_word(other))

    def __pow__(self, n: int) -> "NormalForm":
        base = self if n >= 0 else self.inverse()
        out = NormalForm.identity(self.ctx)
        for _ in range(abs(n)):
            out = out @ base
        return out

    def is_identity(self):
        return not self.letters and self.b.is_identity()

    def to_text(self) -> str:
        return "\n".join(nf_lines(self))

    @classmethod
    def from_text(cls, text: str, ctx: FieldCtx) -> "NormalForm":
        return parse_nf(text, ctx)

    def __str__(self):
        return self.to_text()


# --- letter plumbing -------------------------------------------------------

def _factor_element(g):
    """('B'|'A'|'E', element) with element Basic/Affine/Elementary."""
    if isinstance(g, PolyMap):
        cl = classify_letter(g)
        if cl is None:
            raise InvalidLetters(f"{g} is not a single generator")
        g = cl.letter
    if isinstance(g, BasicMap):
        return "B", g
    if isinstance(g, CosetRepA):
        return "A", g.as_affine()
    if isinstance(g, CosetRepE):
        return "E", g.as_elementary()
    if isinstance(g, AffineMap):
        return ("B", g.as_basic()) if g.is_basic() else ("A", g)
    if isinstance(g, ElementaryMap):
        return ("B", g.as_basic()) if g.is_basic() else ("E", g)
    raise InvalidLetters(f"cannot use {g!r} as a letter")


def _lift(kind, g):
    if kind == "A":
        return g.as_affine()
    return g.as_elementary()


def split_affine(x: AffineMap):
    """x = b o rep with rep in the A-representatives (or None if x is basic)."""
    if x.M.c.is_zero():
        return x.as_basic(), None
    rep = CosetRepA(x.M.d / x.M.c)
    return x.compose(rep.inverse()).as_basic(), rep


def split_elementary(x: ElementaryMap):
    """x = b o rep with rep in the E-representatives (or None if x is basic)."""
    if x.P.degree() <= 1:
        return x.as_basic(), None
    rep = CosetRepE(x.P.shift_down(2) * x.alpha.inverse())
    return BasicMap(x.alpha, x.beta, x.P.coeff(1), x.P.coeff(0), x.v), rep


def _split(kind, x):
    return split_affine(x) if kind == "A" else split_elementary(x)


def normalize(w, ctx: FieldCtx | None = None) -> NormalForm:
    """The unique normal form of a word (right-to-left single pass)."""
    letters = _as_word(w).letters
    ctx = ctx or _ctx_of(letters)
    if ctx is None:
        raise InvalidLetters("cannot infer the field of an empty word")
    b = BasicMap.identity(ctx)
    reps = []  # reps[-1] is the leftmost coset letter so far
    for g in reversed(letters):
        if g.ctx != ctx:
            raise InvalidLetters("letters over different fields")
        kind, el = _factor_element(g)
        if kind == "B":
            b = el.compose(b)
            continue
        x = el.compose(_lift(kind, b))
        if reps and reps[-1].factor == kind:
            x = x.compose(_lift(kind, reps.pop()))
        b, rep = _split(kind, x)
        if rep is not None:
            reps.append(rep)
    return NormalForm(b, tuple(reversed(reps)))


def length(nf: NormalForm) -> int:
    return nf.length


def poly_degree(nf: NormalForm) -> tuple:
    degs = tuple(c.degree() for c in nf.letters if c.factor == "E")
    if not degs:
        raise NoElementaryPart("element lies in the affine subgroup")
    return degs


def nf_degree(nf: NormalForm) -> int:
    return prod(c.degree() for c in nf.letters if c.factor == "E")


def invert_nf(nf: NormalForm) -> NormalForm:
    return normalize(nf.word().inverse())


# --- expansion ---------------------------------------------------------------

def _after(g, R: PolyMap) -> PolyMap:
    """g o R for a single letter g, using its shape."""
    ctx = R.ctx
    if isinstance(g, PolyMap):
        return g @ R
    kind, el = _factor_element(g)
    if kind in ("A", "B"):
        a = el.as_affine() if kind == "B" else el
        M, (u, v) = a.M, a.a
        return PolyMap(R.P * M.a + R.Q * M.b + u, R.P * M.c + R.Q * M.d + v)
    e = el
    return PolyMap(R.P * e.alpha + e.P.of_bipoly(R.Q), R.Q * e.beta + BiPoly.constant(ctx, e.v))


def word_to_polymap(w, ctx: FieldCtx | None = None) -> PolyMap:
    w = _as_word(w)
    ctx = ctx or _ctx_of(w.letters)
    if ctx is None:
        raise InvalidLetters("empty word needs an explicit field")
    out = PolyMap.identity(ctx)
    for g in reversed(w.letters):
        out = _after(g, out)
    return out


# --- decomposition ----------------------------------------------------------

def _scalar_multiple(big: BiPoly, small: BiPoly):
    """c with big == c*small, or None."""
    key, s = next(iter(small.terms.items()))
    if key not in big.terms:
        return None
    ctx = big.ctx
    c = ctx.norm(big.terms[key] * ctx.inv_raw(s))
    return Scalar(c, ctx) if big == small * Scalar(c, ctx) else None


def _merge_adjacent(letters):
    out = []
    for g in letters:
        if out:
            k1, e1 = _factor_element(out[-1])
            k2, e2 = _factor_element(g)
            if k1 == k2 or "B" in (k1, k2):
                kind = k1 if k1 != "B" else k2
                if kind == "B":
                    out[-1] = e1.compose(e2)
                else:
                    out[-1] = _lift(kind, e1).compose(_lift(kind, e2))
                continue
        out.append(g)
    return out


def decompose(f: PolyMap) -> Word:
    """Write an automorphism as a word of affine and elementary letters.

    Degree reduction on leading forms; the measure deg P + deg Q drops at every
    step. Raises NotAnAutomorphism when the Jacobian is not a nonzero constant
    or a leading-form match fails.
    """
    ctx = f.ctx
    J = jacobian_det(f)
    if not J.is_constant() or J.is_zero():
        raise NotAnAutomorphism(f"Jacobian determinant {J} is not a nonzero constant")
    P, Q = f.P, f.Q
    steps = []
    swap = AffineMap.of(ctx, (0, 0), ((0, 1), (1, 0)))
    while True:
        dP, dQ = total_degree(P), total_degree(Q)
        if max(dP, dQ) <= 1:
            break
        if min(dP, dQ) == 0:
            raise NotAnAutomorphism("a component became constant")
        if dP >= dQ:
            k, r = divmod(dP, dQ)
            c = None if r else _scalar_multiple(leading_form(P), leading_form(Q) ** k)
            if c is None:
                raise NotAnAutomorphism("leading forms of the components do not match")
            P = P - Q ** k * c
            steps.append(ElementaryMap(ctx.one, ctx.one, ctx.zero, UniPoly.monomial(ctx, k, c)))
        else:
            k, r = divmod(dQ, dP)
            c = None if r else _scalar_multiple(leading_form(Q), leading_form(P) ** k)
            if c is None:
                raise NotAnAutomorphism("leading forms of the components do not match")
            Q = Q - P ** k * c
            steps += [swap, ElementaryMap(ctx.one, ctx.one, ctx.zero, UniPoly.monomial(ctx, k, c)), swap]
    M = Matrix2(P.coeff(1, 0), P.coeff(0, 1), Q.coeff(1, 0), Q.coeff(0, 1))
    if M.det().is_zero():
        raise NotAnAutomorphism("linear part is singular")
    steps.append(AffineMap((P.constant_term(), Q.constant_term()), M))
    merged = _merge_adjacent(steps)
    if len(merged) == 1 and merged[0].to_polymap().is_identity():
        return Word(())
    return Word(tuple(merged))


def to_normal_form(x) -> NormalForm:
    """Accept a PolyMap, Word, letter or NormalForm."""
    if isinstance(x, NormalForm):
        return x
    if isinstance(x, PolyMap):
        return normalize(decompose(x), x.ctx)
    return normalize(_as_word(x))


# --- cyclic reduction --------------------------------------------------------

@dataclass(frozen=True)
class CRStatus:
    """``tag`` is 'Basic', 'InFactorConjugate' or 'CR'.

    ``conjugator o nf o conjugator^-1`` equals the input element.
    """

    tag: str
    conjugator: Word
    nf: NormalForm

    @property
    def crnf(self):
        return self.nf if self.tag == "CR" else None

    @property
    def letter(self):
        """For a factor conjugate: the single affine or elementary element."""
        if self.tag == "Basic":
            return self.nf.b
        if self.tag != "InFactorConjugate":
            return None
        c = self.nf.letters[0]
        kind, el = _factor_element(c)
        return _lift(kind, self.nf.b).compose(el)


def cyclically_reduce(nf: NormalForm) -> CRStatus:
    conj = []
    g = nf
    while True:
        n = g.length
        if n == 0:
            return CRStatus("Basic", Word(tuple(conj)), g)
        if n % 2 == 0:
            return CRStatus("CR", Word(tuple(conj)), g)
        if n == 1:
            return CRStatus("InFactorConjugate", Word(tuple(conj)), g)
        c1 = g.letters[-1]
        # g = c1^-1 o (c1 g c1^-1) o c1
        g = normalize(Word((c1,)) @ g.word() @ Word((c1.inverse(),)))
        conj.append(c1.inverse())


# --- text form -----------------------------------------------------------------

def nf_lines(nf: NormalForm):
    b = nf.b
    yield "B " + " ".join(str(s) for s in b.params())
    for c in nf.letters:
        if isinstance(c, CosetRepA):
            yield f"A {c.beta}"
        else:
            yield f"E {c.P}"


def parse_letter_line(line: str, ctx: FieldCtx):
    from .parsing import parse_scalar, parse_unipoly

    head, _, rest = line.strip().partition(" ")
    rest = rest.strip()
    if head == "B":
        vals = rest.split()
        if len(vals) != 5:
            raise ParseError(f"B line needs 5 scalars: {line!r}", 0)
        return BasicMap(*(parse_scalar(v, ctx) for v in vals))
    if head == "A":
        return CosetRepA(parse_scalar(rest, ctx))
    if head == "E":
        return CosetRepE(parse_unipoly(rest, ctx))
    if head == "AFF":
        v = [parse_scalar(t, ctx) for t in rest.split()]
        if len(v) != 6:
            raise ParseError(f"AFF line needs 6 scalars: {line!r}", 0)
        return AffineMap((v[0], v[1]), Matrix2(*v[2:]))
    if head == "ELEM":
        parts = rest.split(None, 3)
        if len(parts) != 4:
            raise ParseError(f"ELEM line needs alpha beta v poly: {line!r}", 0)
        a, bt, v = (parse_scalar(t, ctx) for t in parts[:3])
        return ElementaryMap(a, bt, v, parse_unipoly(parts[3], ctx))
    raise ParseError(f"unknown letter kind {head!r}", 0)


def letter_line(g) -> str:
    """Text for any letter (extends the normal-form line syntax)."""
    if isinstance(g, BasicMap):
        return "B " + " ".join(str(s) for s in g.params())
    if isinstance(g, CosetRepA):
        return f"A {g.beta}"
    if isinstance(g, CosetRepE):
        return f"E {g.P}"
    if isinstance(g, AffineMap):
        return "AFF " + " ".join(str(s) for s in (*g.a, g.M.a, g.M.b, g.M.c, g.M.d))
    if isinstance(g, ElementaryMap):
        return f"ELEM {g.alpha} {g.beta} {g.v} {g.P}"
    raise InvalidLetters(f"no text form for {g!r}")


def _split_lines(text):
    return [ln for ln in (s.strip() for s in text.replace(";", "\n").splitlines()) if ln and not ln.startswith("#")]


def parse_word(text: str, ctx: FieldCtx) -> Word:
    return Word(tuple(parse_letter_line(ln, ctx) for ln in _split_lines(text)))


def parse_nf(text: str, ctx: FieldCtx) -> NormalForm:
    lines = _split_lines(text)
    if not lines or not lines[0].startswith("B "):
        raise ParseError("normal form must start with a B line", 0)
    b = parse_letter_line(lines[0], ctx)
    letters = [parse_letter_line(ln, ctx) for ln in lines[1:]]
    return NormalForm(b, tuple(letters))
