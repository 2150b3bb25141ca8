"""Weight representations on a finite index window.

All families act on formal basis vectors labelled by integers.  A window is
an inclusive index range; operators store their matrix column by column and
track which columns are trustworthy.  Composition keeps a column only when
every index it reaches is itself a valid column of the left factor, so
products of banded operators are exact on the columns they retain instead of
silently truncated.

Every entry formula is written once against a small field adapter and runs
either exactly (Scalar coefficients, symbolic s and r allowed) or in complex
floating point.  Exact division by a vanishing denominator and numeric
division by a near-zero one both surface as PoleOnWindowError with the
offending index.
"""

from __future__ import annotations

import cmath

from .errors import (
    AlgebraError,
    DegenerateSeedError,
    NonExtendableError,
    PoleOnWindowError,
    ScalarDivisionError,
    WindowError,
)
from .freealg import (
    FreeElement,
    Iso2Element,
    M2Element,
    casimir_element,
    g_letter,
    iso2_defining_relations,
    letter_name,
)
from .scalars import IUNIT, ONE, QHALF, RVAR, SVAR, Scalar

# ---------------------------------------------------------------------------
# field adapter


class Field:
    """Arithmetic adapter shared by the exact and numeric entry formulas."""

    __slots__ = ("kind", "one", "i", "qh", "tol", "qval")

    def __init__(self, kind, one, i, qh, tol=None, qval=None):
        self.kind = kind
        self.one = one
        self.i = i
        self.qh = qh
        self.tol = tol
        self.qval = qval

    @classmethod
    def exact(cls):
        return cls("exact", ONE, IUNIT, QHALF)

    @classmethod
    def numeric(cls, q, tol: float = 1e-9):
        q = complex(q)
        if abs(q) < tol:
            raise ValueError("q must be nonzero")
        return cls("numeric", 1 + 0j, 1j, cmath.sqrt(q), tol=tol, qval=q)

    def qp(self, n: int):
        """q^n."""
        return self.qh ** (2 * n)

    def qhp(self, n: int):
        """q^(n/2)."""
        return self.qh ** n

    def div(self, num, den, index=None):
        if self.kind == "exact":
            if den.is_zero():
                raise PoleOnWindowError(index)
            return num / den
        if abs(den) < self.tol:
            raise PoleOnWindowError(index)
        return num / den

    def iszero(self, x) -> bool:
        if self.kind == "exact":
            return x.is_zero()
        return abs(x) <= self.tol

    def eq(self, x, y) -> bool:
        if self.kind == "exact":
            return x == y
        return abs(x - y) <= self.tol

    def scalar(self, c: Scalar, s=None, r=None):
        """Map a Scalar coefficient into this field."""
        if self.kind == "exact":
            return c
        return c.eval_numeric(self.qval, s=s, r=r, tol=self.tol)


EXACT = Field.exact()


# ---------------------------------------------------------------------------
# windows and windowed operators


class Window:
    __slots__ = ("lo", "hi")

    def __init__(self, lo: int, hi: int):
        if lo > hi:
            raise WindowError("empty window %d:%d" % (lo, hi))
        self.lo = lo
        self.hi = hi

    @classmethod
    def from_string(cls, text: str):
        try:
            lo, hi = text.split(":")
            return cls(int(lo), int(hi))
        except (ValueError, TypeError):
            raise WindowError("window must look like lo:hi, got %r" % (text,))

    def indices(self):
        return range(self.lo, self.hi + 1)

    def expand(self, pad: int):
        return Window(self.lo - pad, self.hi + pad)

    def shrink(self, pad: int):
        return Window(self.lo + pad, self.hi - pad)

    def __contains__(self, m):
        return self.lo <= m <= self.hi

    def __len__(self):
        return self.hi - self.lo + 1

    def __eq__(self, other):
        return isinstance(other, Window) and (self.lo, self.hi) == (other.lo, other.hi)

    __hash__ = None

    def __repr__(self):
        return "Window(%d, %d)" % (self.lo, self.hi)


class WindowedOperator:
    """Column-stored linear map on the windowed weight basis.

    cols maps a column index to {row index: coefficient}; the keys of cols
    are exactly the valid columns.  Row indices are unrestricted, which is
    what lets composition decide validity honestly.
    """

    __slots__ = ("cols", "field")

    def __init__(self, cols: dict, field: Field):
        self.cols = cols
        self.field = field

    @classmethod
    def from_action(cls, action, window: Window, field: Field):
        """action(m) -> {row: coefficient} for every m in the window."""
        cols = {}
        for m in window.indices():
            col = action(m)
            cols[m] = {k: v for k, v in col.items() if not field.iszero(v)} if field.kind == "exact" else dict(col)
        return cls(cols, field)

    @classmethod
    def identity(cls, window: Window, field: Field):
        return cls({m: {m: field.one} for m in window.indices()}, field)

    @classmethod
    def zero(cls, window: Window, field: Field):
        return cls({m: {} for m in window.indices()}, field)

    def valid_cols(self):
        return sorted(self.cols)

    def column(self, m: int) -> dict:
        return self.cols[m]

    def entry(self, row: int, col: int):
        c = self.cols[col].get(row)
        if c is None:
            return self.field.one - self.field.one
        return c

    def apply(self, vec: dict) -> dict:
        out = {}
        for m, c in vec.items():
            col = self.cols.get(m)
            if col is None:
                raise WindowError("index %r is not a valid column" % (m,))
            for row, v in col.items():
                w = out.get(row)
                nv = v * c if w is None else w + v * c
                out[row] = nv
        if self.field.kind == "exact":
            return {k: v for k, v in out.items() if not v.is_zero()}
        return {k: v for k, v in out.items() if v != 0}

    def __matmul__(self, other):
        if not isinstance(other, WindowedOperator):
            return NotImplemented
        if self.field is not other.field and self.field.kind != other.field.kind:
            raise AlgebraError("cannot compose operators over different fields")
        cols = {}
        for m, col in other.cols.items():
            if any(row not in self.cols for row in col):
                continue
            acc = {}
            for row, c in col.items():
                for row2, c2 in self.cols[row].items():
                    w = acc.get(row2)
                    nv = c2 * c if w is None else w + c2 * c
                    acc[row2] = nv
            if self.field.kind == "exact":
                acc = {k: v for k, v in acc.items() if not v.is_zero()}
            cols[m] = acc
        return WindowedOperator(cols, self.field)

    def _merge(self, other, sign: int):
        cols = {}
        for m in self.cols:
            if m not in other.cols:
                continue
            acc = dict(self.cols[m])
            for row, c in other.cols[m].items():
                w = acc.get(row)
                nv = (c if sign > 0 else -c) if w is None else (w + c if sign > 0 else w - c)
                acc[row] = nv
            if self.field.kind == "exact":
                acc = {k: v for k, v in acc.items() if not v.is_zero()}
            cols[m] = acc
        return WindowedOperator(cols, self.field)

    def __add__(self, other):
        if not isinstance(other, WindowedOperator):
            return NotImplemented
        return self._merge(other, +1)

    def __sub__(self, other):
        if not isinstance(other, WindowedOperator):
            return NotImplemented
        return self._merge(other, -1)

    def scale(self, c):
        if self.field.kind == "exact" and c.is_zero():
            return WindowedOperator({m: {} for m in self.cols}, self.field)
        return WindowedOperator(
            {m: {row: v * c for row, v in col.items()} for m, col in self.cols.items()},
            self.field,
        )

    def restrict(self, cols_iter):
        keep = set(cols_iter)
        missing = keep - set(self.cols)
        if missing:
            raise WindowError("columns %r are not valid" % (sorted(missing),))
        return WindowedOperator({m: self.cols[m] for m in self.cols if m in keep}, self.field)

    def diagonal(self) -> dict:
        out = {}
        for m, col in self.cols.items():
            v = col.get(m)
            if v is not None:
                out[m] = v
        return out

    def is_zero(self) -> bool:
        f = self.field
        for col in self.cols.values():
            for v in col.values():
                if not f.iszero(v):
                    return False
        return True

    def max_abs(self) -> float:
        if self.field.kind != "numeric":
            raise AlgebraError("max_abs needs a numeric operator")
        best = 0.0
        for col in self.cols.values():
            for v in col.values():
                a = abs(v)
                if a > best:
                    best = a
        return best

    def first_nonzero(self):
        """(row, col, value) of some entry that is not zero, or None."""
        f = self.field
        for m in sorted(self.cols):
            for row in sorted(self.cols[m]):
                v = self.cols[m][row]
                if not f.iszero(v):
                    return (row, m, v)
        return None

    def __repr__(self):
        cols = self.valid_cols()
        if not cols:
            return "WindowedOperator(empty)"
        return "WindowedOperator(cols %d..%d, %s)" % (cols[0], cols[-1], self.field.kind)


def compare_ops(a: WindowedOperator, b: WindowedOperator, cols=None, tol=None):
    """(ok, witness): compare entries on the given columns (default: the
    common valid columns).  witness is (row, col, left, right) on failure."""
    field = a.field
    if cols is None:
        cols = sorted(set(a.cols) & set(b.cols))
    for m in cols:
        ca = a.cols.get(m)
        cb = b.cols.get(m)
        if ca is None or cb is None:
            return False, ("missing-column", m, ca is not None, cb is not None)
        rows = set(ca) | set(cb)
        for row in sorted(rows):
            va = ca.get(row)
            vb = cb.get(row)
            if va is None:
                va = field.one - field.one
            if vb is None:
                vb = field.one - field.one
            if tol is not None and field.kind == "numeric":
                ok = abs(va - vb) <= tol
            else:
                ok = field.eq(va, vb)
            if not ok:
                return False, (row, m, va, vb)
    return True, None


# ---------------------------------------------------------------------------
# parameter ladders


def ladder_point(s_val, field: Field, search=24):
    """Detect whether the weight parameter sits on one of the two ladders
    where the Cartan combinations degenerate.

    Returns ("half-odd", m, sign), ("integer", n, sign) or None.  Exactly:
    s = sign * i * q^(m + 1/2) for the first, s = sign * i * q^n for the
    second.  In exact mode this inspects the monomial form; in numeric mode
    all exponents with |exponent| <= search are probed.
    """
    if field.kind == "exact":
        mono = s_val.as_monomial() if isinstance(s_val, Scalar) else None
        if mono is None:
            return None
        c, (et, es, er) = mono
        if es or er:
            return None
        return _ladder_from_unit(c, et)
    s = complex(s_val)
    for x in range(-2 * search, 2 * search + 1):
        target = field.qhp(x)
        for sign in (1, -1):
            if abs(s - sign * 1j * target) <= field.tol * max(1.0, abs(target)):
                if x % 2:
                    return ("half-odd", (x - 1) // 2, sign)
                return ("integer", x // 2, sign)
    return None


def _ladder_from_unit(c, et):
    from .scalars import GaussianRational

    if c == GaussianRational(0, 1):
        sign = 1
    elif c == GaussianRational(0, -1):
        sign = -1
    else:
        return None
    if et % 2:
        return ("half-odd", (et - 1) // 2, sign)
    return ("integer", et // 2, sign)


# ---------------------------------------------------------------------------
# the weight families


def _p_comb(field: Field, s, m: int):
    """s q^m + s^-1 q^-m."""
    return s * field.qp(m) + s ** -1 * field.qp(-m)


def _weight_bracket(field: Field, s, m: int):
    """(s q^m - s^-1 q^-m) / (q - q^-1)."""
    num = s * field.qp(m) - s ** -1 * field.qp(-m)
    return field.div(num, field.qp(1) - field.qp(-1), m)


def m2hat_weight_action(field: Field, s, r):
    """Single-column actions of the localized generators on the weight
    basis: K is diagonal s q^m, E and F shift by one step with amplitude r,
    G_k is diagonal 1 / (s q^(m+k) + s^-1 q^-(m+k))."""

    def act(gen, m: int) -> dict:
        if gen == "K":
            return {m: s * field.qp(m)}
        if gen == "Ki":
            return {m: s ** -1 * field.qp(-m)}
        if gen == "E":
            return {m + 1: r}
        if gen == "F":
            return {m - 1: r}
        if isinstance(gen, tuple) and gen[0] == "G":
            k = gen[1]
            return {m: field.div(field.one, _p_comb(field, s, m + k), m)}
        raise AlgebraError("unknown generator %r" % (gen,))

    return act


def iso2_weight_action(field: Field, s, r):
    """Single-column actions of the euclidean generators on the weight
    basis (the irreducible two-parameter family)."""

    def act(gen, m: int) -> dict:
        if gen == "I":
            return {m: field.i * _weight_bracket(field, s, m)}
        pm = _p_comb(field, s, m)
        if gen == "T2":
            c = field.div(r, pm, m)
            return {m + 1: c, m - 1: c}
        if gen == "T1":
            c = field.i * field.qhp(1) * field.div(r, pm, m)
            return {m + 1: c * s * field.qp(m), m - 1: -(c * s ** -1 * field.qp(-m))}
        raise AlgebraError("unknown generator %r" % (gen,))

    return act


def build_rep(action, gens, window: Window, field: Field) -> dict:
    return {
        g: WindowedOperator.from_action(lambda m, g=g: action(g, m), window, field)
        for g in gens
    }


def weight_rep_m2hat(window: Window, s, r, field: Field = EXACT, g_indices=range(-2, 3)) -> dict:
    lp = ladder_point(s, field)
    if lp is not None and lp[0] == "integer":
        raise NonExtendableError(n=lp[1], sign=lp[2])
    act = m2hat_weight_action(field, s, r)
    gens = ["K", "Ki", "E", "F"] + [g_letter(k) for k in g_indices]
    return build_rep(act, gens, window, field)


def weight_rep_iso2(window: Window, s, r, field: Field = EXACT) -> dict:
    lp = ladder_point(s, field)
    if lp is not None and lp[0] == "integer":
        raise NonExtendableError(n=lp[1], sign=lp[2])
    act = iso2_weight_action(field, s, r)
    return build_rep(act, ["I", "T1", "T2"], window, field)


def one_dim_iso2(c_val, field: Field = EXACT) -> dict:
    """The one dimensional family: I acts by a constant, T1 = T2 = 0."""
    w = Window(0, 0)
    return {
        "I": WindowedOperator({0: {0: c_val}}, field),
        "T1": WindowedOperator.zero(w, field),
        "T2": WindowedOperator.zero(w, field),
    }


def one_dim_m2hat(sigma, field: Field = EXACT, g_indices=range(-2, 3)) -> dict:
    """One dimensional family of the localized algebra: K acts by sigma,
    E = F = 0, G_k by the inverse Cartan combination."""
    w = Window(0, 0)
    out = {
        "K": WindowedOperator({0: {0: sigma}}, field),
        "Ki": WindowedOperator({0: {0: sigma ** -1}}, field),
        "E": WindowedOperator.zero(w, field),
        "F": WindowedOperator.zero(w, field),
    }
    for k in g_indices:
        den = sigma * field.qp(k) + sigma ** -1 * field.qp(-k)
        out[g_letter(k)] = WindowedOperator({0: {0: field.div(field.one, den, 0)}}, field)
    return out


# ---------------------------------------------------------------------------
# evaluating algebra elements on a representation


def evaluate_on_rep(x, ops: dict, window: Window, field: Field, s=None, r=None) -> WindowedOperator:
    """Evaluate a free or ordered-basis element as a windowed operator.

    Scalar coefficients are mapped through the field (numeric mode
    evaluates them at the field's q and the given s, r)."""
    if isinstance(x, Iso2Element):
        x = x.to_free()
    if not isinstance(x, FreeElement):
        raise AlgebraError("cannot evaluate %r on a representation" % (type(x),))
    total = None
    for word, coeff in x.terms.items():
        op = None
        for let in word:
            if let not in ops:
                raise AlgebraError("representation lacks generator %s" % letter_name(let))
            op = ops[let] if op is None else op @ ops[let]
        if op is None:
            op = WindowedOperator.identity(window, field)
        term = op.scale(field.scalar(coeff, s=s, r=r))
        total = term if total is None else total + term
    if total is None:
        total = WindowedOperator.zero(window, field)
    return total


def check_relations_on_rep(relations, ops: dict, window: Window, field: Field, s=None, r=None):
    """Evaluate each (name, element) pair; report per-relation defects.

    Returns a list of dicts with keys name, ok, witness; witness is None on
    success, (row, col, value) in exact mode or the max |entry| in numeric
    mode on failure."""
    out = []
    for name, rel in relations:
        op = evaluate_on_rep(rel, ops, window, field, s=s, r=r)
        if field.kind == "exact":
            w = op.first_nonzero()
            out.append({"name": name, "ok": w is None, "witness": w})
        else:
            dev = op.max_abs()
            out.append({"name": name, "ok": dev <= (field.tol or 1e-9), "witness": dev})
    return out


def casimir_of(ops: dict, window: Window, field: Field, s=None, r=None):
    """Evaluate the central element and test that it acts as a constant.

    Returns (value, ok, operator); value is the diagonal constant (None when
    no valid columns survive), ok says whether the operator is value * Id on
    its valid columns."""
    op = evaluate_on_rep(casimir_element(), ops, window, field, s=s, r=r)
    cols = op.valid_cols()
    if not cols:
        return None, False, op
    value = op.cols[cols[0]].get(cols[0])
    if value is None:
        value = field.one - field.one
    ok = True
    for m in cols:
        col = op.cols[m]
        for row, v in col.items():
            want = value if row == m else None
            if want is None:
                if not field.iszero(v):
                    ok = False
            else:
                if not field.eq(v, want):
                    ok = False
    return value, ok, op


def casimir_single_vector(field: Field, s, r, m0: int):
    """Independent route to the Casimir constant: push one basis vector
    through the ordered-monomial expression using the single-column actions
    only (no windowed matrices, no composition bookkeeping)."""
    act = iso2_weight_action(field, s, r)

    def apply_gen(gen, vec):
        out = {}
        for m, c in vec.items():
            for row, v in act(gen, m).items():
                w = out.get(row)
                nv = v * c if w is None else w + v * c
                out[row] = nv
        return out

    total = {}
    for (j, k, l), coeff in casimir_element().terms.items():
        vec = {m0: field.one}
        for _ in range(l):
            vec = apply_gen("I", vec)
        for _ in range(k):
            vec = apply_gen("T2", vec)
        for _ in range(j):
            vec = apply_gen("T1", vec)
        sc = field.scalar(coeff, s=s, r=r)
        for m, c in vec.items():
            w = total.get(m)
            nv = c * sc if w is None else w + c * sc
            total[m] = nv
    value = total.pop(m0, field.one - field.one)
    for m, c in total.items():
        if not field.iszero(c):
            raise AlgebraError("single-vector route leaked to index %r" % (m,))
    return value


def apply_m2_to_weight(elem: M2Element, m: int, field: Field, s, r) -> dict:
    """Apply a localized-algebra element to the weight vector at index m.

    Returns {target index: coefficient}.  The Cartan fraction is evaluated
    at the K-eigenvalue s q^m; E and F contribute one amplitude r per
    step."""
    out = {}
    kval = s * field.qp(m)
    conv = None if field.kind == "exact" else field.scalar
    for (a, b), frac in elem.terms.items():
        nv, dv = frac.evaluate_parts(kval, field.qp, conv=conv)
        if nv is None:
            continue
        val = nv if dv is None else field.div(nv, dv, m)
        val = val * r ** (a + b)
        target = m + b - a
        w = out.get(target)
        nv2 = val if w is None else w + val
        out[target] = nv2
    if field.kind == "exact":
        return {k: v for k, v in out.items() if not v.is_zero()}
    return out


# ---------------------------------------------------------------------------
# the degenerate points and their blocks


def nonclassical_action(field: Field, r, eps: int, eps_tilde: int):
    """Single-column actions of the two blocks living at the degenerate
    weight parameters; the index j runs over 0, 1, 2, ...

    Derived directly from the pairing of mirrored weight vectors; note the
    whole j = 0 column of T2 carries the sign eps."""
    if eps not in (1, -1) or eps_tilde not in (1, -1):
        raise AlgebraError("eps and eps_tilde must be +1 or -1")

    def kappa(j):
        return field.qhp(2 * j + 1) - field.qhp(-2 * j - 1)

    def act(gen, j: int) -> dict:
        if j < 0:
            raise WindowError("block indices start at 0, got %d" % (j,))
        if gen == "I":
            num = field.qhp(2 * j + 1) + field.qhp(-2 * j - 1)
            val = field.div(num, field.qp(1) - field.qp(-1), j)
            return {j: -(val if eps == 1 else -val)}
        if gen == "T2":
            if j == 0:
                c = field.div(r, kappa(0), 0)
                base = {0: c * (field.one if eps_tilde == 1 else -field.one), 1: c * field.i}
                if eps == 1:
                    return {k: -v for k, v in base.items()}
                return base
            c = field.i * field.div(r, kappa(j), j)
            c = -c if eps == 1 else c
            return {j + 1: c, j - 1: c}
        if gen == "T1":
            if j == 0:
                c = field.div(r, kappa(0), 0)
                return {
                    0: c * (field.one if eps_tilde == 1 else -field.one),
                    1: c * field.i * field.qp(1),
                }
            c = field.i * field.div(r, kappa(j), j)
            return {j + 1: c * field.qp(j + 1), j - 1: c * field.qp(-j)}
        raise AlgebraError("unknown generator %r" % (gen,))

    return act


def nonclassical_rep(j_max: int, r, eps: int, eps_tilde: int, field: Field = EXACT) -> dict:
    act = nonclassical_action(field, r, eps, eps_tilde)
    return build_rep(act, ["I", "T1", "T2"], Window(0, j_max), field)


def pairing_vector(m: int, eps_tilde: int, j: int, field: Field) -> dict:
    """The paired combination of mirrored weight vectors for the degenerate
    parameter s = eps i q^(m + 1/2): the vector at block index j."""
    sign = field.i if eps_tilde == 1 else -field.i
    if j % 2:
        sign = -sign
    return {-m + j: field.one, -m - j - 1: sign}


def decompose_degenerate(m: int, eps: int, r=None, j_max: int = 8, field: Field = EXACT):
    """Split the weight family at s = eps i q^(m+1/2) into its two blocks.

    Builds the reducible family on a window covering both legs of the
    pairing, pushes each paired vector through the generators, checks that
    the result stays inside the paired span, and returns the two block
    operators together with the change-of-basis data.

    Returns a dict with keys 'blocks' ({eps_tilde: {gen: op}}), 'window',
    'block_cols', 'pairing_consistent'.
    """
    if eps not in (1, -1):
        raise AlgebraError("eps must be +1 or -1")
    if r is None:
        if field.kind != "exact":
            raise AlgebraError("numeric mode needs an explicit r")
        r = RVAR
    s_val = (IUNIT if eps == 1 else -IUNIT) * QHALF ** (2 * m + 1) if field.kind == "exact" else (
        (1j if eps == 1 else -1j) * field.qhp(2 * m + 1)
    )
    big = Window(-m - j_max - 2, -m + j_max + 1)
    act = iso2_weight_action(field, s_val, r)
    ops = build_rep(act, ["I", "T1", "T2"], big, field)

    block_cols = range(0, j_max)
    blocks = {}
    consistent = True
    for eps_tilde in (1, -1):
        basis = {j: pairing_vector(m, eps_tilde, j, field) for j in range(j_max + 1)}
        cols = {g: {} for g in ("I", "T1", "T2")}
        for g in ("I", "T1", "T2"):
            for j in block_cols:
                v = ops[g].apply(basis[j])
                coeffs = {}
                for jp in range(j_max + 1):
                    c = v.get(-m + jp)
                    if c is None:
                        continue
                    if field.kind == "exact" or not field.iszero(c):
                        coeffs[jp] = c
                recon = {}
                for jp, c in coeffs.items():
                    for idx, amp in basis[jp].items():
                        w = recon.get(idx)
                        nv = amp * c if w is None else w + amp * c
                        recon[idx] = nv
                keys = set(v) | set(recon)
                zero = field.one - field.one
                for idx in keys:
                    if not field.eq(v.get(idx, zero), recon.get(idx, zero)):
                        consistent = False
                cols[g][j] = coeffs
        blocks[eps_tilde] = {
            g: WindowedOperator(cols[g], field) for g in ("I", "T1", "T2")
        }
    return {
        "blocks": blocks,
        "window": big,
        "block_cols": block_cols,
        "pairing_consistent": consistent,
        "s_value": s_val,
    }


# ---------------------------------------------------------------------------
# reconstruction from the Casimir constant and the weight parameter


def _sqrt_in_field(field: Field, value):
    if field.kind == "numeric":
        return cmath.sqrt(value)
    mono = value.as_monomial()
    if mono is None:
        return None
    from .scalars import monomial

    c, (et, es, er) = mono
    if et % 2 or es % 2 or er % 2:
        return None
    root = c.sqrt()
    if root is None:
        return None
    return monomial(root, et // 2, es // 2, er // 2)


def reconstruct_from_seed(
    c_val,
    s_val,
    steps_up: int = 8,
    steps_down: int = 8,
    r_val=None,
    field: Field = EXACT,
    check_mirrored_variant: bool = True,
):
    """Rebuild the weight family from its Casimir constant and weight
    parameter alone, then verify the result.

    The ladder is grown both ways from the seed vector: the raising
    combination defines b_{j+1} from b_j, the lowering combination defines
    b_{j-1}, and the cross identities fix the generator actions on the b
    basis with the Casimir constant C as the only free input.  The derived
    action is then (a) checked against the defining relations and the
    Casimir, and (b) rescaled onto the standard two-parameter family, which
    is possible exactly when C has a square root r.

    Returns a dict with keys: window, ops, relations, casimir_value,
    casimir_matches_seed, r_value, rescaled_matches, rescale_witness,
    mirrored_lowering_breaks_relations.
    """
    lp = ladder_point(s_val, field)
    if lp is not None:
        if lp[0] == "half-odd":
            raise DegenerateSeedError(lp[1], lp[2])
        raise NonExtendableError(n=lp[1], sign=lp[2])
    if steps_up < 4 or steps_down < 4:
        raise WindowError("need at least 4 steps on both sides")

    window = Window(-steps_down, steps_up)
    C = c_val
    qh = field.qh
    q = field.qp(1)

    def P(j):
        return _p_comb(field, s_val, j)

    def t2_col(j: int) -> dict:
        inv = field.div(field.one, qh * P(j), j)
        if j >= 1:
            return {j + 1: -inv, j - 1: -(inv * C * q)}
        if j == 0:
            return {-1: inv, 1: -inv}
        return {j - 1: inv, j + 1: inv * C * q}

    def t1_col(j: int, mirrored: bool = False) -> dict:
        pj = P(j)
        if j >= 1:
            up = field.div(s_val * field.qp(j), pj, j)
            lowfac = s_val * field.qp(j) if mirrored else s_val ** -1 * field.qp(-j)
            down = -field.div(C * q * lowfac, pj, j)
            col = {j + 1: up, j - 1: down}
        elif j == 0:
            col = {
                1: field.div(s_val, pj, j),
                -1: field.div(s_val ** -1, pj, j),
            }
        else:
            down = field.div(s_val ** -1 * field.qp(-j), pj, j)
            up = -field.div(C * q * s_val * field.qp(j), pj, j)
            col = {j - 1: down, j + 1: up}
        # T1 = -i (i T1)
        return {k: -(field.i * v) for k, v in col.items()}

    def i_col(j: int) -> dict:
        return {j: field.i * _weight_bracket(field, s_val, j)}

    def act(gen, j):
        if gen == "I":
            return i_col(j)
        if gen == "T2":
            return t2_col(j)
        if gen == "T1":
            return t1_col(j)
        raise AlgebraError("unknown generator %r" % (gen,))

    ops = build_rep(act, ["I", "T1", "T2"], window, field)
    relations = check_relations_on_rep(
        iso2_defining_relations(), ops, window, field,
        s=_param_for_scalar(field, s_val), r=None,
    )
    cas_value, cas_ok, _ = casimir_of(
        ops, window, field, s=_param_for_scalar(field, s_val), r=None
    )
    casimir_matches = cas_ok and (cas_value is not None) and field.eq(cas_value, C)

    r = r_val if r_val is not None else _sqrt_in_field(field, C)
    rescaled_matches = None
    witness = None
    if r is not None:
        target = build_rep(iso2_weight_action(field, s_val, r), ["I", "T1", "T2"], window, field)
        rho = {0: field.one}
        for j in range(0, window.hi):
            num = target["T2"].cols[j].get(j + 1) if j in target["T2"].cols else None
            den = ops["T2"].cols[j].get(j + 1)
            rho[j + 1] = rho[j] * field.div(num, den, j)
        for j in range(0, window.lo, -1):
            num = target["T2"].cols[j].get(j - 1)
            den = ops["T2"].cols[j].get(j - 1)
            rho[j - 1] = rho[j] * field.div(num, den, j)
        rescaled_matches = True
        zero = field.one - field.one
        for g in ("I", "T1", "T2"):
            for j in window.indices():
                rows = set(ops[g].cols[j]) | set(target[g].cols[j])
                for row in rows:
                    if row not in rho:
                        continue
                    v = ops[g].cols[j].get(row, zero)
                    got = v * rho[row] * rho[j] ** -1
                    want = target[g].cols[j].get(row, zero)
                    if not field.eq(got, want):
                        rescaled_matches = False
                        if witness is None:
                            witness = (g, row, j, got, want)
    mirrored_breaks = None
    if check_mirrored_variant:
        def act_var(gen, j):
            if gen == "T1":
                return t1_col(j, mirrored=True)
            return act(gen, j)

        ops_var = build_rep(act_var, ["I", "T1", "T2"], window, field)
        rel_var = check_relations_on_rep(
            iso2_defining_relations(), ops_var, window, field,
            s=_param_for_scalar(field, s_val), r=None,
        )
        mirrored_breaks = any(not row["ok"] for row in rel_var)

    return {
        "window": window,
        "ops": ops,
        "relations": relations,
        "casimir_value": cas_value,
        "casimir_matches_seed": casimir_matches,
        "r_value": r,
        "rescaled_matches": rescaled_matches,
        "rescale_witness": witness,
        "mirrored_lowering_breaks_relations": mirrored_breaks,
    }


def _param_for_scalar(field: Field, s_val):
    """The numeric s to use when mapping Scalar coefficients through the
    field; exact mode keeps coefficients symbolic."""
    if field.kind == "exact":
        return None
    return s_val
