"""Surface syntax: a small expression language for algebra elements.

The grammar has ^ binding tightest, then unary minus, then products (written
with *, /, or juxtaposition), then sums.  Fractional exponents exist only as
q^(n/2) with integer n and are lowered to integral powers of t at parse
time, so the scalar ring never sees a half exponent.  K^-1 may be written
Kinv (or Ki); G takes a bracketed integer index.

The printer is the inverse: it emits deterministic normal-form strings the
parser maps back to the same element, with even t-powers shown as integral
q-powers and odd ones as q^(odd/2).
"""

from __future__ import annotations

from .errors import AlgebraError, ParseError
from .freealg import (
    ISO2,
    M2HAT,
    FreeElement,
    Iso2Element,
    M2Element,
    g_letter,
    nf_iso2,
    nf_m2hat,
)
from .scalars import (
    IUNIT,
    QHALF,
    QVAR,
    RVAR,
    SVAR,
    GaussianRational,
    Scalar,
    integer,
    lp_from_tp,
    tp_is_one,
)

_ISO2_GENS = {"I": "I", "T1": "T1", "T2": "T2"}
_M2_GENS = {"K": "K", "Ki": "Ki", "Kinv": "Ki", "E": "E", "F": "F"}
_VARS = {"t", "q", "s", "r", "i"}


def _algebra_tag(algebra: str) -> str:
    if algebra in (ISO2, "iso2"):
        return ISO2
    if algebra in (M2HAT, "m2", "m2hat"):
        return M2HAT
    raise AlgebraError("unknown algebra %r" % (algebra,))


# ---------------------------------------------------------------------------
# tokenizer

_SYMBOLS = "+-*/^()[]"


def _tokenize(text: str):
    toks = []
    n = len(text)
    pos = 0
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        col = pos + 1
        if ch in _SYMBOLS:
            toks.append((ch, ch, col))
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            toks.append(("int", int(text[start:pos]), col))
            continue
        if ch.isalpha():
            start = pos
            while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            toks.append(("name", text[start:pos], col))
            continue
        raise ParseError("unexpected character %r" % (ch,), col)
    toks.append(("end", None, n + 1))
    return toks


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str, algebra: str):
        self.toks = _tokenize(text)
        self.k = 0
        self.algebra = algebra

    def peek(self):
        return self.toks[self.k]

    def next(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError("expected %r" % (kind,), tok[2])
        return tok

    # sums -------------------------------------------------------------
    def parse_sum(self):
        node = self.parse_product()
        while True:
            kind, _, _ = self.peek()
            if kind == "+":
                self.next()
                node = ("add", node, self.parse_product())
            elif kind == "-":
                self.next()
                node = ("sub", node, self.parse_product())
            else:
                return node

    # products: *, /, and juxtaposition --------------------------------
    def parse_product(self):
        node = self.parse_unary()
        while True:
            kind, _, _ = self.peek()
            if kind == "*":
                self.next()
                node = ("mul", node, self.parse_unary())
            elif kind == "/":
                self.next()
                node = ("div", node, self.parse_unary())
            elif kind in ("int", "name", "("):
                node = ("mul", node, self.parse_unary())
            else:
                return node

    def parse_unary(self):
        kind, _, col = self.peek()
        if kind == "-":
            self.next()
            return ("neg", self.parse_unary())
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.peek()[0] != "^":
            return base
        self.next()
        num, den, col = self._parse_exponent()
        if den == 1:
            return ("pow", base, num)
        # the only legal fractional power is a half-integer power of q,
        # which is an integral power of t
        if den == 2 and base == ("var", "q"):
            return ("pow", ("var", "t"), num)
        raise ParseError("fractional exponents only as q^(n/2)", col)

    def _parse_exponent(self):
        kind, val, col = self.next()
        sign = 1
        if kind == "-":
            sign = -1
            kind, val, col = self.next()
        if kind == "int":
            return sign * val, 1, col
        if kind != "(":
            raise ParseError("expected an exponent", col)
        kind, val, col2 = self.next()
        if kind == "-":
            sign = -sign
            kind, val, col2 = self.next()
        if kind != "int":
            raise ParseError("expected an integer exponent", col2)
        num = sign * val
        kind, _, col3 = self.next()
        if kind == ")":
            return num, 1, col2
        if kind != "/":
            raise ParseError("expected / or ) in exponent", col3)
        kind, den, col4 = self.next()
        if kind != "int":
            raise ParseError("expected an integer denominator", col4)
        self.expect(")")
        return num, den, col2

    def parse_atom(self):
        kind, val, col = self.next()
        if kind == "int":
            return ("int", val)
        if kind == "(":
            node = self.parse_sum()
            tok = self.next()
            if tok[0] != ")":
                raise ParseError("expected )", tok[2])
            return node
        if kind == "name":
            return self._resolve_name(val, col)
        raise ParseError("expected a value", col)

    def _resolve_name(self, name: str, col: int):
        if name in _VARS:
            return ("var", name)
        if name == "G":
            if self.algebra != M2HAT:
                raise ParseError("G[k] belongs to the localized algebra", col)
            tok = self.next()
            if tok[0] != "[":
                raise ParseError("G needs a bracketed integer index", tok[2])
            sign = 1
            tok = self.next()
            if tok[0] == "-":
                sign = -1
                tok = self.next()
            if tok[0] != "int":
                raise ParseError("G index must be an integer", tok[2])
            k = sign * tok[1]
            self.expect("]")
            return ("gen", g_letter(k))
        if name in _ISO2_GENS:
            if self.algebra != ISO2:
                raise ParseError("generator %s belongs to the euclidean algebra" % name, col)
            return ("gen", _ISO2_GENS[name])
        if name in _M2_GENS:
            if self.algebra != M2HAT:
                raise ParseError("generator %s belongs to the localized algebra" % name, col)
            return ("gen", _M2_GENS[name])
        raise ParseError("unknown symbol %r" % (name,), col)


def parse_expression(text: str, algebra: str):
    """Parse into a small tuple AST; errors carry the 1-based column."""
    p = _Parser(text, _algebra_tag(algebra))
    node = p.parse_sum()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError("unexpected trailing input", tok[2])
    return node


# ---------------------------------------------------------------------------
# evaluation

_VAR_VALUES = {"t": QHALF, "q": QVAR, "s": SVAR, "r": RVAR, "i": IUNIT}


def _const(algebra: str, c: Scalar) -> FreeElement:
    return FreeElement(algebra, {(): c})


def to_element(node, algebra: str) -> FreeElement:
    """Evaluate an AST into a free-algebra element (scalars live on the
    empty word)."""
    algebra = _algebra_tag(algebra)

    def ev(n) -> FreeElement:
        tag = n[0]
        if tag == "int":
            return _const(algebra, integer(n[1]))
        if tag == "var":
            return _const(algebra, _VAR_VALUES[n[1]])
        if tag == "gen":
            return FreeElement.from_word(algebra, (n[1],))
        if tag == "neg":
            return -ev(n[1])
        if tag == "add":
            return ev(n[1]) + ev(n[2])
        if tag == "sub":
            return ev(n[1]) - ev(n[2])
        if tag == "mul":
            return ev(n[1]) * ev(n[2])
        if tag == "div":
            num, den = ev(n[1]), ev(n[2])
            return num * _const(algebra, _as_scalar(den) ** -1)
        if tag == "pow":
            base, e = ev(n[1]), n[2]
            if e >= 0:
                return base ** e
            sc = _maybe_scalar(base)
            if sc is not None:
                return _const(algebra, sc ** e)
            inv = _invert_letter(base)
            if inv is not None:
                return FreeElement.from_word(algebra, inv * (-e))
            raise AlgebraError("cannot take a negative power of %s" % (base,))
        raise AlgebraError("bad expression node %r" % (tag,))

    return ev(node)


def _maybe_scalar(x: FreeElement):
    if not x.terms:
        return integer(0)
    if set(x.terms) == {()}:
        return x.terms[()]
    return None


def _as_scalar(x: FreeElement) -> Scalar:
    sc = _maybe_scalar(x)
    if sc is None:
        raise AlgebraError("can only divide by scalar expressions")
    return sc


def _invert_letter(x: FreeElement):
    """(letter,) tuple inverting a bare K or Ki word, else None."""
    if len(x.terms) != 1:
        return None
    ((word, c),) = x.terms.items()
    if not c.is_one() or len(word) != 1:
        return None
    if word[0] == "K":
        return ("Ki",)
    if word[0] == "Ki":
        return ("K",)
    return None


def parse_element(text: str, algebra: str) -> FreeElement:
    return to_element(parse_expression(text, algebra), algebra)


def normal_form(text: str, algebra: str):
    """Parse and reduce to the quotient normal form."""
    x = parse_element(text, algebra)
    if _algebra_tag(algebra) == ISO2:
        return nf_iso2(x)
    return nf_m2hat(x)


def scalar_from_text(text: str) -> Scalar:
    """Parse a generator-free expression into a Scalar."""
    x = to_element(parse_expression(text, ISO2), ISO2)
    sc = _maybe_scalar(x)
    if sc is None:
        raise AlgebraError("expected a scalar expression, found generators")
    return sc


# ---------------------------------------------------------------------------
# printing


def _gr_is_negative(c: GaussianRational) -> bool:
    return c.re < 0 or (c.re == 0 and c.im < 0)


def _gr_str(c: GaussianRational) -> str:
    """Parseable coefficient; mixed re/im parts come back parenthesized."""
    re, im = c.re, c.im
    if im == 0:
        return str(re)
    if re == 0:
        if im == 1:
            return "i"
        if im == -1:
            return "-i"
        return "%s i" % (im,)
    body = "%s %s %s i" % (re, "+" if im > 0 else "-", abs(im))
    if im in (1, -1):
        body = "%s %s i" % (re, "+" if im > 0 else "-")
    return "(" + body + ")"


def _tpow_str(e: int) -> str:
    """t^e rendered through q: even exponents as q^k, odd as q^(e/2)."""
    if e % 2 == 0:
        k = e // 2
        return "q" if k == 1 else "q^%d" % (k,)
    return "q^(%d/2)" % (e,)


def _mono_pieces(key) -> list:
    et, es, er = key
    out = []
    if et:
        out.append(_tpow_str(et))
    if es:
        out.append("s" if es == 1 else "s^%d" % (es,))
    if er:
        out.append("r" if er == 1 else "r^%d" % (er,))
    return out


def _poly_str(lp: dict) -> str:
    """Deterministic sum over monomials, largest exponent key first."""
    bits = []
    for key in sorted(lp, reverse=True):
        c = lp[key]
        neg = _gr_is_negative(c)
        cc = -c if neg else c
        pieces = _mono_pieces(key)
        cs = _gr_str(cc)
        if pieces and cs == "1":
            body = " ".join(pieces)
        else:
            body = " ".join([cs] + pieces)
        if not bits:
            bits.append(("-" if neg else "") + body)
        else:
            bits.append(("- " if neg else "+ ") + body)
    return " ".join(bits) if bits else "0"


def format_scalar(sc: Scalar) -> str:
    if sc.is_zero():
        return "0"
    num = _poly_str(sc.num)
    dens = []
    if not tp_is_one(sc.den_t):
        dens.append("(%s)" % (_poly_str(lp_from_tp(sc.den_t)),))
    for atom, mult in sc.atoms:
        base = "(%s)" % (_poly_str(atom),)
        dens.append(base if mult == 1 else base + "^%d" % (mult,))
    if not dens:
        return num
    den = " ".join(dens)
    if len(dens) > 1:
        den = "(" + den + ")"
    return "(%s) / %s" % (num, den)


def _scalar_is_simple(sc: Scalar) -> bool:
    """Simple enough to print without parentheses next to a word."""
    mono = sc.as_monomial()
    if mono is None:
        return False
    c, _ = mono
    return not (c.re != 0 and c.im != 0)


def _coeff_prefix(sc: Scalar, word: str, first: bool) -> str:
    """One summand: coefficient times a (possibly empty) word string."""
    if _scalar_is_simple(sc):
        mono = sc.as_monomial()
        c, key = mono
        neg = _gr_is_negative(c)
        if neg:
            c = -c
        pieces = _mono_pieces(key)
        cs = _gr_str(c)
        if cs == "1" and (pieces or word):
            bits = pieces
        else:
            bits = [cs] + pieces
        if word:
            bits = bits + [word]
        body = " ".join(bits)
        sign = "-" if neg else "+"
    else:
        body = "(%s)" % (format_scalar(sc),)
        if word:
            body += " " + word
        sign = "+"
    if first:
        return ("-" + body) if sign == "-" else body
    return ("- " if sign == "-" else "+ ") + body


def _iso2_word_str(key) -> str:
    j, k, l = key
    bits = []
    for name, e in (("T1", j), ("T2", k), ("I", l)):
        if e == 1:
            bits.append(name)
        elif e > 1:
            bits.append("%s^%d" % (name, e))
    return " ".join(bits)


def _kpow_str(e: int) -> str:
    if e > 0:
        return "K" if e == 1 else "K^%d" % (e,)
    return "Kinv" if e == -1 else "Kinv^%d" % (-e,)


def format_element(x) -> str:
    """Deterministic, re-parseable rendering of a normal-form element."""
    if isinstance(x, Iso2Element):
        if not x.terms:
            return "0"
        bits = []
        for key in sorted(x.terms):
            bits.append(_coeff_prefix(x.terms[key], _iso2_word_str(key), not bits))
        return " ".join(bits)
    if isinstance(x, M2Element):
        if not x.terms:
            return "0"
        bits = []
        for (a, b) in sorted(x.terms):
            frac = x.terms[(a, b)]
            words = []
            if a:
                words.append("F" if a == 1 else "F^%d" % (a,))
            if b:
                words.append("E" if b == 1 else "E^%d" % (b,))
            num_bits = []
            for e in sorted(frac.num, reverse=True):
                num_bits.append(_coeff_prefix(frac.num[e], _kpow_str(e) if e else "", not num_bits))
            num_str = " ".join(num_bits)
            gpart = []
            for k in sorted(frac.den):
                m = frac.den[k]
                gpart.append("G[%d]" % (k,) if m == 1 else "G[%d]^%d" % (k, m))
            if len(frac.num) == 1 and not num_str.startswith("-") and "(" not in num_str:
                mid = num_str
            else:
                mid = "(" + num_str + ")"
            pieces = words + ([mid] if mid != "1" or not (words or gpart) else []) + gpart
            term = " ".join(pieces)
            bits.append(term if not bits else "+ " + term)
        return " ".join(bits)
    raise AlgebraError("cannot format %r" % (type(x),))
