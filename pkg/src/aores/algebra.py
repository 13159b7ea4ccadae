"""Exact arithmetic in the free associative algebra over the rationals,
plus the Hopf structure maps of the free orthogonal quantum group A_o(n).

Conventions:

* A generator symbol is an integer id into an :class:`Alphabet`; the
  numeric order of the ids *is* the monomial precedence.  The default
  square alphabet names the generators ``u11, u12, ..., unn`` in
  row-major order, so ``u11 < u12 < ... < unn``.
* A word is a tuple of symbol ids; the empty tuple is the unit 1.
* A :class:`Polynomial` maps words to nonzero ``fractions.Fraction``
  coefficients.  There is no floating point anywhere.
* The monomial order is degree-lexicographic (compare length first, then
  the id sequence), which is compatible with concatenation and
  well-founded.

All values are immutable after construction and safe to share between
threads; every operation is a pure function.
"""

from fractions import Fraction

Word = tuple[int, ...]

ONE_WORD: Word = ()


def deglex_key(word: Word) -> tuple[int, Word]:
    return (len(word), word)


def compare_words(w1: Word, w2: Word) -> int:
    """Degree-lexicographic comparison: -1, 0 or 1.

    Precedence between symbols is their numeric id order, so the
    comparison needs no alphabet.
    """
    k1, k2 = deglex_key(w1), deglex_key(w2)
    if k1 < k2:
        return -1
    if k1 > k2:
        return 1
    return 0


class Alphabet:
    """Interned generator symbols with a total precedence order.

    ``names`` lists the symbols in increasing precedence.  A *square*
    alphabet additionally knows that its symbols are the n*n matrix
    generators u_ij (row-major by default), which is what the counit,
    antipode and coproduct need.
    """

    __slots__ = ("names", "n", "base", "_index", "_rowcol")

    def __init__(self, names, n: int | None = None, base: str = "u"):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")
        self.n = n
        self.base = base
        self._index = {name: s for s, name in enumerate(self.names)}
        self._rowcol = None
        if n is not None:
            if len(self.names) != n * n:
                raise ValueError("square alphabet needs n*n names")
            self._rowcol = {}
            for s, name in enumerate(self.names):
                i, j = _parse_square_name(name, base, n)
                self._rowcol[s] = (i, j)

    @classmethod
    def square(cls, n: int, base: str = "u") -> "Alphabet":
        """The n*n generators u_ij, row-major: u11 < u12 < ... < unn."""
        if n < 1:
            raise ValueError("n must be >= 1")
        names = [square_name(i, j, base, n) for i in range(1, n + 1) for j in range(1, n + 1)]
        return cls(names, n=n, base=base)

    @property
    def is_square(self) -> bool:
        return self.n is not None

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.names == other.names and self.n == other.n

    def __hash__(self) -> int:
        return hash((self.names, self.n))

    def __repr__(self) -> str:
        if self.is_square:
            return f"Alphabet.square({self.n}, base={self.base!r})"
        return f"Alphabet({list(self.names)!r})"

    def name(self, sym: int) -> str:
        return self.names[sym]

    def index(self, name: str) -> int:
        return self._index[name]

    def symbol(self, i: int, j: int) -> int:
        """Id of u_ij (1-based indices) in a square alphabet."""
        n = self._require_square()
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"indices ({i},{j}) out of range for n={n}")
        return (i - 1) * n + (j - 1)

    def row_col(self, sym: int) -> tuple[int, int]:
        self._require_square()
        return self._rowcol[sym]

    def _require_square(self) -> int:
        if self.n is None:
            raise ValueError("operation requires a square (u_ij) alphabet")
        return self.n


def square_name(i: int, j: int, base: str = "u", n: int = 1) -> str:
    # single-digit indices concatenate unambiguously; larger n needs a separator
    if n <= 9:
        return f"{base}{i}{j}"
    return f"{base}{i}_{j}"


def _parse_square_name(name: str, base: str, n: int) -> tuple[int, int]:
    body = name[len(base):]
    if "_" in body:
        i, j = body.split("_")
        return int(i), int(j)
    return int(body[0]), int(body[1])


class MonomialOrder:
    """Degree-lexicographic order over a fixed alphabet.

    The precedence is the alphabet's declaration order; any admissible
    precedence is therefore obtained by constructing the alphabet with
    the desired name order.
    """

    __slots__ = ("alphabet",)

    kind = "deglex"

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet

    def key(self, word: Word) -> tuple[int, Word]:
        return deglex_key(word)

    def compare(self, w1: Word, w2: Word) -> int:
        return compare_words(w1, w2)

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialOrder) and self.alphabet == other.alphabet

    def __hash__(self) -> int:
        return hash(("deglex", self.alphabet))

    def __repr__(self) -> str:
        return f"MonomialOrder({self.alphabet!r})"


def _clean(terms: dict) -> dict:
    out = {}
    for w, c in terms.items():
        if not isinstance(c, Fraction):
            c = Fraction(c)
        if c != 0:
            out[w] = c
    return out


class Polynomial:
    """Finitely supported rational combination of words.

    Internally a dict ``word -> Fraction`` with no zero values stored.
    Canonical serialization emits terms in decreasing monomial order.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict[Word, Fraction] = _clean(terms) if terms else {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def one(cls) -> "Polynomial":
        return cls({ONE_WORD: Fraction(1)})

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls({ONE_WORD: Fraction(c)})

    @classmethod
    def from_word(cls, word: Word, coeff=1) -> "Polynomial":
        return cls({tuple(word): Fraction(coeff)})

    @classmethod
    def generator(cls, sym: int) -> "Polynomial":
        return cls({(sym,): Fraction(1)})

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Maximum word length; the zero polynomial has degree -1."""
        if not self.terms:
            return -1
        return max(len(w) for w in self.terms)

    def lead_word(self) -> Word:
        if not self.terms:
            raise ValueError("zero polynomial has no leading word")
        return max(self.terms, key=deglex_key)

    def lead_coeff(self) -> Fraction:
        return self.terms[self.lead_word()]

    def monic(self) -> "Polynomial":
        c = self.lead_coeff()
        if c == 1:
            return self
        return self * Fraction(1, 1) / c

    def coeff(self, word: Word) -> Fraction:
        return self.terms.get(tuple(word), Fraction(0))

    def sorted_terms(self) -> list[tuple[Word, Fraction]]:
        """Terms in decreasing monomial order (canonical iteration)."""
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0]), reverse=True)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, 0) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        p = Polynomial.__new__(Polynomial)
        p.terms = terms
        return p

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, 0) - c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        p = Polynomial.__new__(Polynomial)
        p.terms = terms
        return p

    def __neg__(self) -> "Polynomial":
        p = Polynomial.__new__(Polynomial)
        p.terms = {w: -c for w, c in self.terms.items()}
        return p

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return multiply(self, other)
        return self._scale(Fraction(other))

    def __rmul__(self, other):
        # scalars commute with everything; word products use __mul__
        return self._scale(Fraction(other))

    def __truediv__(self, other) -> "Polynomial":
        return self._scale(1 / Fraction(other))

    def _scale(self, c: Fraction) -> "Polynomial":
        if c == 0:
            return Polynomial.zero()
        p = Polynomial.__new__(Polynomial)
        p.terms = {w: cc * c for w, cc in self.terms.items()}
        return p

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "Polynomial(0)"
        inner = ", ".join(f"{w}: {c}" for w, c in self.sorted_terms())
        return f"Polynomial({{{inner}}})"


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    """Bilinear extension of word concatenation (noncommutative)."""
    terms: dict[Word, Fraction] = {}
    for w1, c1 in p.terms.items():
        for w2, c2 in q.terms.items():
            w = w1 + w2
            s = terms.get(w, 0) + c1 * c2
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
    out = Polynomial.__new__(Polynomial)
    out.terms = terms
    return out


def counit(p: Polynomial, alphabet: Alphabet) -> Fraction:
    """The algebra morphism with u_ij -> delta_ij, extended linearly."""
    total = Fraction(0)
    for w, c in p.terms.items():
        if all(_is_diagonal(alphabet, s) for s in w):
            total += c
    return total


def counit_word(word: Word, alphabet: Alphabet) -> Fraction:
    return Fraction(1) if all(_is_diagonal(alphabet, s) for s in word) else Fraction(0)


def _is_diagonal(alphabet: Alphabet, sym: int) -> bool:
    i, j = alphabet.row_col(sym)
    return i == j


def antipode(p: Polynomial, alphabet: Alphabet) -> Polynomial:
    """Anti-homomorphism with u_ij -> u_ji: reverse each word, transpose
    each letter's indices."""
    terms = {}
    for w, c in p.terms.items():
        out = []
        for s in reversed(w):
            i, j = alphabet.row_col(s)
            out.append(alphabet.symbol(j, i))
        terms[tuple(out)] = terms.get(tuple(out), 0) + c
    return Polynomial(terms)


class TensorPolynomial:
    """Element of a tensor power of the free algebra.

    Terms map leg-tuples of words to rational coefficients.  Two legs
    model F (x) F (the codomain of the coproduct); three legs appear in
    the coassociativity checks.
    """

    __slots__ = ("legs", "terms")

    def __init__(self, legs: int, terms: dict | None = None):
        self.legs = legs
        self.terms: dict[tuple[Word, ...], Fraction] = _clean(terms) if terms else {}

    @classmethod
    def unit(cls, legs: int = 2) -> "TensorPolynomial":
        return cls(legs, {(ONE_WORD,) * legs: Fraction(1)})

    @classmethod
    def of(cls, *polys: Polynomial) -> "TensorPolynomial":
        """Tensor product p1 (x) p2 (x) ... of plain polynomials."""
        terms: dict[tuple[Word, ...], Fraction] = {(): Fraction(1)}
        for p in polys:
            nxt: dict[tuple[Word, ...], Fraction] = {}
            for key, c in terms.items():
                for w, cc in p.terms.items():
                    k = key + (w,)
                    s = nxt.get(k, 0) + c * cc
                    if s:
                        nxt[k] = s
                    else:
                        nxt.pop(k, None)
            terms = nxt
        return cls(len(polys), terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TensorPolynomial") -> "TensorPolynomial":
        assert self.legs == other.legs
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k, 0) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        out = TensorPolynomial(self.legs)
        out.terms = terms
        return out

    def __sub__(self, other: "TensorPolynomial") -> "TensorPolynomial":
        return self + (-1) * other

    def __rmul__(self, c) -> "TensorPolynomial":
        c = Fraction(c)
        out = TensorPolynomial(self.legs)
        if c != 0:
            out.terms = {k: cc * c for k, cc in self.terms.items()}
        return out

    def __mul__(self, other: "TensorPolynomial") -> "TensorPolynomial":
        """Legwise concatenation product."""
        assert self.legs == other.legs
        terms: dict[tuple[Word, ...], Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                s = terms.get(k, 0) + c1 * c2
                if s:
                    terms[k] = s
                else:
                    terms.pop(k, None)
        out = TensorPolynomial(self.legs)
        out.terms = terms
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorPolynomial)
            and self.legs == other.legs
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        return f"TensorPolynomial(legs={self.legs}, {len(self.terms)} terms)"


def coproduct(p: Polynomial, alphabet: Alphabet) -> TensorPolynomial:
    """Algebra morphism F -> F (x) F with u_ij -> sum_k u_ik (x) u_kj."""
    n = alphabet._require_square()
    total = TensorPolynomial(2)
    for w, c in p.terms.items():
        # multiply out the letter coproducts legwise
        partial: dict[tuple[Word, Word], Fraction] = {(ONE_WORD, ONE_WORD): c}
        for s in w:
            i, j = alphabet.row_col(s)
            nxt: dict[tuple[Word, Word], Fraction] = {}
            for (w1, w2), cc in partial.items():
                for k in range(1, n + 1):
                    key = (w1 + (alphabet.symbol(i, k),), w2 + (alphabet.symbol(k, j),))
                    nxt[key] = nxt.get(key, 0) + cc
            partial = nxt
        tp = TensorPolynomial(2)
        tp.terms = _clean(partial)
        total = total + tp
    return total


def tensor_counit_leg(tp: TensorPolynomial, leg: int, alphabet: Alphabet):
    """Collapse one leg through the counit.

    Returns a Polynomial when one leg remains, otherwise a thinner
    TensorPolynomial.
    """
    collapsed: dict = {}
    for key, c in tp.terms.items():
        e = counit_word(key[leg], alphabet)
        if e == 0:
            continue
        rest = key[:leg] + key[leg + 1:]
        k = rest[0] if tp.legs == 2 else rest
        collapsed[k] = collapsed.get(k, 0) + c * e
    if tp.legs == 2:
        return Polynomial(collapsed)
    out = TensorPolynomial(tp.legs - 1)
    out.terms = _clean(collapsed)
    return out


def tensor_coproduct_leg(tp: TensorPolynomial, leg: int, alphabet: Alphabet) -> TensorPolynomial:
    """Apply the coproduct to one leg, splicing the two new legs in place."""
    out = TensorPolynomial(tp.legs + 1)
    terms: dict[tuple[Word, ...], Fraction] = {}
    for key, c in tp.terms.items():
        inner = coproduct(Polynomial.from_word(key[leg]), alphabet)
        for (a, b), cc in inner.terms.items():
            k = key[:leg] + (a, b) + key[leg + 1:]
            s = terms.get(k, 0) + c * cc
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
    out.terms = terms
    return out


# -- canonical text form ----------------------------------------------------


def word_to_str(word: Word, alphabet: Alphabet) -> str:
    if not word:
        return "1"
    return "*".join(alphabet.name(s) for s in word)


def poly_to_str(p: Polynomial, alphabet: Alphabet) -> str:
    """Canonical syntax: terms in decreasing monomial order, coefficients
    as ``p/q`` strings, e.g. ``u11*u11 + u12*u12 - 1``."""
    if p.is_zero:
        return "0"
    pieces = []
    for k, (w, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        mag = -c if neg else c
        if not w:
            body = str(mag)
        elif mag == 1:
            body = word_to_str(w, alphabet)
        else:
            body = f"{mag}*{word_to_str(w, alphabet)}"
        if k == 0:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces)
