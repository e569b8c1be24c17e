"""Sparse Laurent polynomials with integer coefficients in one variable."""

from collections import defaultdict


class LaurentPolynomial:
    """
    An immutable Laurent polynomial stored as ``{exponent: coefficient}``.

    Zero coefficients are never stored, so the zero polynomial is the empty
    map and two polynomials are equal iff their maps are equal.

    Parameters
    ----------
    terms : mapping or iterable of (int, int), optional
        Exponent/coefficient pairs.  Repeated exponents are summed.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        acc = defaultdict(int)
        items = terms.items() if hasattr(terms, "items") else terms
        for exp, coeff in items:
            acc[int(exp)] += int(coeff)
        self._terms = {e: c for e, c in sorted(acc.items()) if c}

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls({exponent: coefficient})

    @classmethod
    def one(cls):
        return cls({0: 1})

    @property
    def terms(self):
        """Copy of the ``{exponent: coefficient}`` map, ascending exponents."""
        return dict(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self):
        return f"LaurentPolynomial({self._terms!r})"

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        acc = defaultdict(int, self._terms)
        for e, c in other._terms.items():
            acc[e] += c
        return LaurentPolynomial(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial({e: c * other for e, c in self._terms.items()})
        acc = defaultdict(int)
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] += c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be inverted")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials can be inverted")
            return LaurentPolynomial({e * n: c ** (-n)})
        result = LaurentPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute(self, scale):
        """Return the polynomial with every exponent multiplied by *scale*."""
        return LaurentPolynomial({e * scale: c for e, c in self._terms.items()})

    def rescale(self, divisor):
        """
        Divide every exponent by *divisor*.

        Raises
        ------
        ValueError
            If some exponent is not divisible.
        """
        if any(e % divisor for e in self._terms):
            raise ValueError(f"exponents of {self!r} are not multiples of {divisor}")
        return LaurentPolynomial({e // divisor: c for e, c in self._terms.items()})

    def evaluate(self, value):
        """Evaluate at a (possibly complex) number; exponents may be negative."""
        total = 0
        for e, c in self._terms.items():
            total += c * value**e
        return total

    def evaluate_at_i(self):
        """Exact value at the imaginary unit, as a Gaussian integer (re, im)."""
        re = im = 0
        for e, c in self._terms.items():
            r = e % 4
            if r == 0:
                re += c
            elif r == 1:
                im += c
            elif r == 2:
                re -= c
            else:
                im -= c
        return re, im

    def min_degree(self):
        return min(self._terms, default=0)

    def max_degree(self):
        return max(self._terms, default=0)

    def format(self, var="t", denominator=2):
        """
        Render as ``c*var^(k/denominator)`` terms in ascending exponent.

        With ``denominator=1`` the exponents are printed as plain integers.
        The zero polynomial renders as ``0``.
        """
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            if e == 0:
                body = f"{c}"
            elif denominator == 1:
                body = f"{c}*{var}^{e}"
            else:
                body = f"{c}*{var}^({e}/{denominator})"
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.format(var="x", denominator=1)
