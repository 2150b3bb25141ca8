"""The embedding of the euclidean algebra into its localized partner.

The generator assignment sends I to the balanced Cartan difference and the
translations to ladder combinations damped by G_0.  Two genuinely different
sign conventions satisfy the defining relations (flipping F is an algebra
automorphism downstairs), so satisfying the relations alone does not pin the
map.  build_psi therefore also requires the assignment to factor the
standard weight family through the localized one, column by column with
symbolic parameters, and keeps the first candidate passing both checks.
"""

from __future__ import annotations

import random

from .errors import MorphismError
from .freealg import (
    ISO2,
    FreeElement,
    Iso2Element,
    M2Element,
    iso2_defining_relations,
    m2_gen,
)
from .repmod import EXACT, apply_m2_to_weight, iso2_weight_action
from .scalars import IUNIT, ONE, QHALF, RVAR, SVAR, integer, qpow


class Morphism:
    """Algebra map fixed by its values on the three generators.

    Powers of the generator images are memoized, so mapping ordered-basis
    elements of modest degree stays cheap across many calls."""

    __slots__ = ("images", "meta", "_powers")

    def __init__(self, images: dict, meta=None):
        self.images = images
        self.meta = dict(meta or {})
        self._powers = {g: [M2Element.one(), img] for g, img in images.items()}

    def _pow(self, g: str, n: int) -> M2Element:
        cache = self._powers[g]
        while len(cache) <= n:
            cache.append(cache[-1] * cache[1])
        return cache[n]

    def apply(self, x) -> M2Element:
        if isinstance(x, Iso2Element):
            total = M2Element.zero()
            for (j, k, l), c in x.terms.items():
                term = self._pow("T1", j) * self._pow("T2", k) * self._pow("I", l)
                total = total + term.scalar_mul(c)
            return total
        if isinstance(x, FreeElement):
            if x.algebra != ISO2:
                raise MorphismError("can only map euclidean-algebra elements")
            total = M2Element.zero()
            for word, c in x.terms.items():
                term = M2Element.one()
                for let in word:
                    term = term * self.images[let]
                total = total + term.scalar_mul(c)
            return total
        raise MorphismError("cannot map %r" % (type(x),))

    __call__ = apply

    def __repr__(self):
        return "Morphism(binding=%r, ladder_sign=%r)" % (
            self.meta.get("binding"),
            self.meta.get("ladder_sign"),
        )


def _candidate_images(f_sign: int, binding: str) -> dict:
    e, f, k, ki = m2_gen("E"), m2_gen("F"), m2_gen("K"), m2_gen("Ki")
    g0 = m2_gen("G", 0)
    img_i = (k - ki).scalar_mul(IUNIT / (qpow(1) - qpow(-1)))
    plane = (e - f.scalar_mul(integer(f_sign))) * g0
    mixed = ((k * e) + (ki * f).scalar_mul(integer(f_sign))) * g0
    mixed = mixed.scalar_mul(IUNIT * QHALF ** -1)
    if binding == "natural":
        return {"I": img_i, "T2": plane, "T1": mixed}
    return {"I": img_i, "T2": mixed, "T1": plane}


def _factors_weight_family(morph: Morphism, window) -> bool:
    act = iso2_weight_action(EXACT, SVAR, RVAR)
    lo, hi = window
    for g in ("I", "T1", "T2"):
        img = morph.images[g]
        for m in range(lo, hi + 1):
            got = apply_m2_to_weight(img, m, EXACT, SVAR, RVAR)
            want = {key: v for key, v in act(g, m).items() if not v.is_zero()}
            if set(got) != set(want):
                return False
            if any(got[key] != want[key] for key in got):
                return False
    return True


def build_psi(window=(-3, 3)) -> Morphism:
    """Construct the embedding, trying the sign and binding variants and
    keeping the first that satisfies the defining relations and factors the
    weight family through the localized weight family."""
    rels = iso2_defining_relations()
    trials = [("natural", -1), ("natural", 1), ("swapped", -1), ("swapped", 1)]
    rejected = []
    for binding, f_sign in trials:
        cand = Morphism(
            _candidate_images(f_sign, binding),
            meta={"binding": binding, "ladder_sign": f_sign},
        )
        bad = [name for name, rel in rels if not cand.apply(rel).is_zero()]
        if bad:
            rejected.append((binding, f_sign, "relations", bad))
            continue
        if not _factors_weight_family(cand, window):
            rejected.append((binding, f_sign, "factorization", None))
            continue
        cand.meta["relations_checked"] = [name for name, _ in rels]
        cand.meta["factorization_window"] = tuple(window)
        cand.meta["rejected"] = rejected
        return cand
    raise MorphismError("no generator assignment passes both checks: %r" % (rejected,))


def verify_relations(morph: Morphism):
    """Map each defining relation and report whether it vanishes."""
    out = []
    for name, rel in iso2_defining_relations():
        img = morph.apply(rel)
        out.append({"name": name, "ok": img.is_zero(), "witness": None if img.is_zero() else str(img)})
    return out


_COEFF_POOL = (
    ONE,
    -ONE,
    IUNIT,
    integer(2),
    qpow(1),
    qpow(-1),
    QHALF,
    ONE + IUNIT,
)


def _random_coeff(rng: random.Random):
    return _COEFF_POOL[rng.randrange(len(_COEFF_POOL))]


def _random_iso2(rng: random.Random, max_degree: int = 3) -> Iso2Element:
    terms = {}
    for _ in range(rng.randrange(1, 3)):
        while True:
            j = rng.randrange(0, max_degree + 1)
            k = rng.randrange(0, max_degree + 1)
            l = rng.randrange(0, max_degree + 1)
            if j + k + l <= max_degree:
                break
        terms[(j, k, l)] = _random_coeff(rng)
    return Iso2Element(terms)


def check_homomorphism_samples(morph: Morphism, n: int = 100, seed: int = 11, max_degree: int = 3):
    """Multiplicativity through the ordered basis on random pairs.

    Returns the list of failing (x, y) pairs; empty means every sampled
    pair satisfied psi(x y) = psi(x) psi(y)."""
    rng = random.Random(seed)
    failures = []
    for _ in range(n):
        x = _random_iso2(rng, max_degree)
        y = _random_iso2(rng, max_degree)
        lhs = morph.apply(x * y)
        rhs = morph.apply(x) * morph.apply(y)
        if lhs != rhs:
            failures.append((x, y))
    return failures
