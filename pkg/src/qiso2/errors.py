"""Shared exception types.

Everything raised on purpose by this package derives from QError so callers
can catch one base class.  Errors carry structured attributes where a caller
might want to act on them (offending factor, window index, rule name) rather
than just a message string.
"""

from __future__ import annotations


class QError(Exception):
    """Base class for all errors raised by this package."""


class ScalarError(QError):
    pass


class ScalarDivisionError(ScalarError):
    """Division by the zero scalar."""


class EvaluationPoleError(ScalarError):
    """Numeric evaluation hit a denominator factor below tolerance.

    Attributes:
        factor: string form of the offending denominator factor
        value:  the (tiny) complex value it evaluated to
    """

    def __init__(self, factor, value):
        self.factor = factor
        self.value = value
        super().__init__(
            "denominator factor %s evaluates to %r, inside pole tolerance"
            % (factor, value)
        )


class AlgebraError(QError):
    pass


class MixedAlgebraError(AlgebraError):
    """Tried to combine elements of the two different algebras."""


class WordLengthError(AlgebraError):
    """A word exceeded the configured maximum length before normalization."""

    def __init__(self, word_len, limit):
        self.word_len = word_len
        self.limit = limit
        super().__init__(
            "word of length %d exceeds the configured limit %d" % (word_len, limit)
        )


class RewriteNonTerminationError(AlgebraError):
    """A rewrite step failed to decrease the termination measure.

    Attributes:
        rule: name of the offending rule
    """

    def __init__(self, rule, word=None):
        self.rule = rule
        self.word = word
        msg = "rule %s does not decrease the termination measure" % (rule,)
        if word is not None:
            msg += " on word %r" % (word,)
        super().__init__(msg)


class MorphismError(QError):
    """No candidate generator assignment passes relation verification."""


class RepresentationError(QError):
    pass


class NonExtendableError(RepresentationError):
    """The weight parameter sits on the integer ladder where the Cartan
    denominators vanish, so the localized action does not exist.

    Attributes:
        n: ladder index with s = (+/-) i q^n
    """

    def __init__(self, n=None, sign=None):
        self.n = n
        self.sign = sign
        super().__init__(
            "weight parameter hits an integer ladder point (n=%r); the inverse "
            "Cartan elements are undefined there" % (n,)
        )


class PoleOnWindowError(RepresentationError):
    """A matrix entry denominator vanishes at some index inside the window."""

    def __init__(self, index, factor=None):
        self.index = index
        self.factor = factor
        msg = "denominator vanishes at basis index %r" % (index,)
        if factor is not None:
            msg += " (factor %s)" % (factor,)
        super().__init__(msg)


class WindowError(RepresentationError):
    """Bad window bounds, or a window that does not fit the requested task."""


class DegenerateSeedError(RepresentationError):
    """Reconstruction was started at a reducible parameter point.

    Attributes:
        m:   pairing index with s = (+/-) i q^(m + 1/2)
        sign: the sign in that ladder value
    """

    def __init__(self, m, sign):
        self.m = m
        self.sign = sign
        super().__init__(
            "seed weight sits on the half-odd ladder (m=%r, sign=%r); the module "
            "is reducible there, run the degenerate decomposition instead" % (m, sign)
        )


class ReducibleParametersError(RepresentationError):
    """Equivalence queried for parameters that do not give an irreducible
    family; decompose first."""


class ParseError(QError):
    """Syntax or validation error in an input expression.

    Attributes:
        pos: 1-based column of the offending token
    """

    def __init__(self, message, pos):
        self.pos = pos
        super().__init__("%s (column %d)" % (message, pos))
