"""The relation ideal of A_o(n) as a rewriting system: reduction to
normal form with cofactor certificates, overlap analysis, and
degree-truncated Groebner completion.

Degree-lexicographic orientation gives every defining relation a
degree-2 leading word, so rewriting never raises the degree and a
degree bound D on processed ambiguities is sound: the published basis
certifies unique normal forms for all polynomials of degree up to
``complete_to``.

Every rewrite rule carries *cofactors*: an exact expression of its
oriented relation as a two-sided combination of the generating
relations.  Reductions therefore yield membership certificates that can
be replayed, and flattened down to the original R/L relations.
"""

import heapq
import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    Alphabet,
    MonomialOrder,
    Polynomial,
    Word,
    TensorPolynomial,
    deglex_key,
    poly_to_str,
    word_to_str,
)
from .errors import CertificationError, check_word_budget

# a cofactor table maps (left word, relation index, right word) -> coefficient
Cofactors = dict[tuple[Word, int, Word], Fraction]


@dataclass(frozen=True)
class Relation:
    """A generating relation with its provenance tag.

    Tags are ``("R", i, k)`` / ``("L", i, k)`` for the row/column
    orthogonality families and ``("derived", m)`` otherwise.
    """

    poly: Polynomial
    tag: tuple

    def tag_str(self) -> str:
        if self.tag[0] in ("R", "L"):
            return f"{self.tag[0]}({self.tag[1]},{self.tag[2]})"
        return f"{self.tag[0]}({self.tag[1]})"


def ao_relations(n: int) -> list[Relation]:
    """The 2 n^2 defining relations of A_o(n).

    R(i,k) = sum_j u_ij u_kj - delta_ik and L(i,k) = sum_j u_ji u_jk -
    delta_ik, listed R-family first, row-major in (i, k).  Every
    relation has counit zero.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    ab = Alphabet.square(n)
    out = []
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            terms = {}
            for j in range(1, n + 1):
                w = (ab.symbol(i, j), ab.symbol(k, j))
                terms[w] = terms.get(w, 0) + 1
            if i == k:
                terms[()] = -1
            out.append(Relation(Polynomial(terms), ("R", i, k)))
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            terms = {}
            for j in range(1, n + 1):
                w = (ab.symbol(j, i), ab.symbol(j, k))
                terms[w] = terms.get(w, 0) + 1
            if i == k:
                terms[()] = -1
            out.append(Relation(Polynomial(terms), ("L", i, k)))
    return out


class RewriteRule:
    """Oriented monic relation ``lead -> rhs`` (so ``poly = lead - rhs``).

    Every word of ``rhs`` is strictly smaller than ``lead``.  The
    ``cofactors`` table expresses ``poly`` exactly as
    ``sum c * a * relations[idx].poly * b`` over the generating
    relations; it is ``None`` for bases loaded from the exchange format.
    """

    __slots__ = ("rule_id", "lead", "rhs", "tag", "cofactors")

    def __init__(self, rule_id: int, lead: Word, rhs: Polynomial, tag: tuple,
                 cofactors: Cofactors | None):
        if lead == ():
            raise ValueError("relation reduces to a nonzero constant: unit ideal")
        self.rule_id = rule_id
        self.lead = lead
        self.rhs = rhs
        self.tag = tag
        self.cofactors = cofactors

    @property
    def poly(self) -> Polynomial:
        return Polynomial({self.lead: 1}) - self.rhs

    @property
    def degree(self) -> int:
        return len(self.lead)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RewriteRule)
            and self.lead == other.lead
            and self.rhs == other.rhs
        )

    def __repr__(self) -> str:
        return f"RewriteRule(#{self.rule_id}, lead={self.lead}, rhs={self.rhs!r})"


def initial_rules(relations) -> list[RewriteRule]:
    """Monic oriented rules, one per relation, without interreduction."""
    rules = []
    for idx, rel in enumerate(relations):
        lc = rel.poly.lead_coeff()
        p = rel.poly / lc
        lead = p.lead_word()
        rhs = Polynomial({lead: 1}) - p
        rules.append(RewriteRule(idx, lead, rhs, rel.tag, {((), idx, ()): Fraction(1, 1) / lc}))
    return rules


class _RuleIndex:
    """Leftmost-match lookup over a fixed rule list.

    Candidate rules at a position are tried in (deglex lead, rule id)
    order, which pins the reduction down deterministically.
    """

    __slots__ = ("rules", "by_first")

    def __init__(self, rules):
        self.rules = list(rules)
        self.by_first: dict[int, list[RewriteRule]] = {}
        for rule in sorted(self.rules, key=lambda r: (deglex_key(r.lead), r.rule_id)):
            self.by_first.setdefault(rule.lead[0], []).append(rule)

    def leftmost_match(self, w: Word):
        for pos in range(len(w)):
            bucket = self.by_first.get(w[pos])
            if not bucket:
                continue
            for rule in bucket:
                end = pos + len(rule.lead)
                if end <= len(w) and w[pos:end] == rule.lead:
                    return pos, rule
        return None

    def all_matches(self, w: Word):
        out = []
        for pos in range(len(w)):
            bucket = self.by_first.get(w[pos])
            if not bucket:
                continue
            for rule in bucket:
                end = pos + len(rule.lead)
                if end <= len(w) and w[pos:end] == rule.lead:
                    out.append((pos, rule))
        return out


class CofactorCertificate:
    """Trace of a reduction: f = sum(left * rule.poly * right) + normal form.

    Summands appear in rewrite order; each left factor is a single
    scaled word and each right factor a single word.
    """

    __slots__ = ("summands",)

    def __init__(self, summands):
        self.summands = tuple(summands)

    def __len__(self) -> int:
        return len(self.summands)

    @property
    def is_empty(self) -> bool:
        return not self.summands

    def replay(self) -> Polynomial:
        """The exact element sum(left * relation * right) the trace encodes."""
        total = Polynomial.zero()
        for left, rule, right in self.summands:
            total = total + left * rule.poly * right
        return total

    def relation_cofactors(self) -> Cofactors:
        """Flatten to monomial granularity over the generating relations."""
        out: Cofactors = {}
        for left, rule, right in self.summands:
            if rule.cofactors is None:
                raise ValueError("certificate references a rule without cofactors")
            for a, ca in left.terms.items():
                for b, cb in right.terms.items():
                    c = ca * cb
                    for (x, idx, y), cr in rule.cofactors.items():
                        key = (a + x, idx, y + b)
                        s = out.get(key, 0) + c * cr
                        if s:
                            out[key] = s
                        else:
                            out.pop(key, None)
        return out

    def to_relation_summands(self, relations):
        """Canonical list of (left, relation tag, right) over the generators."""
        flat = self.relation_cofactors()
        order = sorted(flat, key=lambda k: (k[1], deglex_key(k[0]), deglex_key(k[2])))
        return [
            (Polynomial({a: flat[(a, idx, b)]}), relations[idx].tag, Polynomial.from_word(b))
            for (a, idx, b) in order
        ]

    def replay_relations(self, relations) -> Polynomial:
        total = Polynomial.zero()
        for (a, idx, b), c in self.relation_cofactors().items():
            total = total + Polynomial({a: c}) * relations[idx].poly * Polynomial.from_word(b)
        return total


def _reduce_terms(terms: dict, index: _RuleIndex):
    work = dict(terms)
    nf: dict[Word, Fraction] = {}
    summands = []
    while work:
        w = max(work, key=deglex_key)
        c = work.pop(w)
        hit = index.leftmost_match(w)
        if hit is None:
            nf[w] = c
            continue
        pos, rule = hit
        a, b = w[:pos], w[pos + len(rule.lead):]
        for rw, rc in rule.rhs.terms.items():
            key = a + rw + b
            s = work.get(key, 0) + c * rc
            if s:
                work[key] = s
            else:
                work.pop(key, None)
        summands.append((Polynomial({a: c}), rule, Polynomial.from_word(b)))
    return nf, summands


def reduce_poly(f: Polynomial, rules) -> tuple[Polynomial, CofactorCertificate]:
    """Reduce f to normal form, rewriting the largest reducible word at
    its leftmost reducible position until none remains.

    Returns ``(normal_form, certificate)`` with the exact identity
    ``f == certificate.replay() + normal_form``.  Terminates because the
    order is well-founded and every rewrite strictly lowers the word it
    touches.
    """
    index = rules if isinstance(rules, _RuleIndex) else _RuleIndex(rules)
    nf, summands = _reduce_terms(f.terms, index)
    return Polynomial(nf), CofactorCertificate(summands)


def _reduce_random(f: Polynomial, rules, rng) -> Polynomial:
    # reduction under a randomized strategy; used to check confluence
    index = _RuleIndex(rules)
    work = dict(f.terms)
    while True:
        reducible = []
        for w in sorted(work, key=deglex_key):
            matches = index.all_matches(w)
            if matches:
                reducible.append((w, matches))
        if not reducible:
            return Polynomial(work)
        w, matches = reducible[rng.randrange(len(reducible))]
        pos, rule = matches[rng.randrange(len(matches))]
        c = work.pop(w)
        a, b = w[:pos], w[pos + len(rule.lead):]
        for rw, rc in rule.rhs.terms.items():
            key = a + rw + b
            s = work.get(key, 0) + c * rc
            if s:
                work[key] = s
            else:
                work.pop(key, None)


def contains_subword(w: Word, sub: Word) -> bool:
    ls = len(sub)
    return any(w[p:p + ls] == sub for p in range(len(w) - ls + 1))


@dataclass(frozen=True, order=True)
class Ambiguity:
    """Superposition of two leading words inside one word.

    ``word[off_i:]`` starts with rule i's lead and ``word[off_j:]`` with
    rule j's lead; together they cover ``word``.
    """

    word: Word
    i: int
    j: int
    off_i: int
    off_j: int
    kind: str  # "overlap" or "inclusion"

    @property
    def degree(self) -> int:
        return len(self.word)


def _pair_ambiguities(ri: RewriteRule, rj: RewriteRule, i: int, j: int) -> list[Ambiguity]:
    v, w = ri.lead, rj.lead
    out = []
    # proper overlaps: a suffix of v equals a prefix of w
    for k in range(1, min(len(v), len(w))):
        if v[len(v) - k:] == w[:k]:
            out.append(Ambiguity(v + w[k:], i, j, 0, len(v) - k, "overlap"))
    # inclusions: w occurs inside v (equal leads counted once, for i < j)
    if i != j and len(w) <= len(v):
        for t in range(len(v) - len(w) + 1):
            if v[t:t + len(w)] == w:
                if len(w) == len(v) and i > j:
                    continue
                out.append(Ambiguity(v, i, j, 0, t, "inclusion"))
    return out


def _obstruction(rules, amb: Ambiguity) -> tuple[Polynomial, Cofactors | None]:
    """Difference of the two one-step reductions of the ambiguous word,
    together with its cofactor table (when the rules carry cofactors)."""
    ri, rj = rules[amb.i], rules[amb.j]
    ai = amb.word[:amb.off_i]
    bi = amb.word[amb.off_i + len(ri.lead):]
    aj = amb.word[:amb.off_j]
    bj = amb.word[amb.off_j + len(rj.lead):]
    one_i = Polynomial.from_word(ai) * ri.rhs * Polynomial.from_word(bi)
    one_j = Polynomial.from_word(aj) * rj.rhs * Polynomial.from_word(bj)
    obstruction = one_i - one_j
    if ri.cofactors is None or rj.cofactors is None:
        return obstruction, None
    # one_i - one_j == aj * pj * bj - ai * pi * bi  exactly
    cofs: Cofactors = {}
    for (x, idx, y), c in rj.cofactors.items():
        key = (aj + x, idx, y + bj)
        cofs[key] = cofs.get(key, 0) + c
    for (x, idx, y), c in ri.cofactors.items():
        key = (ai + x, idx, y + bi)
        s = cofs.get(key, 0) - c
        if s:
            cofs[key] = s
        else:
            cofs.pop(key, None)
    return obstruction, cofs


@dataclass(frozen=True)
class Obstruction:
    ambiguity: Ambiguity
    poly: Polynomial


def overlap_ambiguities(rules) -> list[Obstruction]:
    """One obstruction per overlap/inclusion ambiguity of the rules'
    leading words, in (degree, i, j, kind, offset) order."""
    rules = list(rules)
    ambs = []
    for i in range(len(rules)):
        for j in range(len(rules)):
            ambs.extend(_pair_ambiguities(rules[i], rules[j], i, j))
    ambs.sort(key=_amb_sort_key)
    return [Obstruction(a, _obstruction(rules, a)[0]) for a in ambs]


def _amb_sort_key(a: Ambiguity):
    return (a.degree, a.i, a.j, 0 if a.kind == "overlap" else 1, a.off_j)


class TruncatedGroebnerBasis:
    """Interreduced rewrite rules certified confluent up to a degree bound.

    ``complete_to`` is the largest degree c <= degree_bound such that
    every overlap ambiguity of total degree <= c reduces to zero; normal
    forms are canonical for polynomials of degree <= complete_to.
    """

    __slots__ = ("order", "relations", "rules", "degree_bound", "complete_to",
                 "discarded", "_index")

    def __init__(self, order: MonomialOrder, relations, rules, degree_bound: int,
                 complete_to: int, discarded=()):
        self.order = order
        self.relations = tuple(relations)
        self.rules = tuple(rules)
        self.degree_bound = degree_bound
        self.complete_to = complete_to
        self.discarded = tuple(discarded)
        self._index = _RuleIndex(self.rules)

    @property
    def alphabet(self) -> Alphabet:
        return self.order.alphabet

    @property
    def has_cofactors(self) -> bool:
        return all(r.cofactors is not None for r in self.rules)

    def reduce(self, f: Polynomial) -> tuple[Polynomial, CofactorCertificate]:
        return reduce_poly(f, self._index)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.reduce(f)[0]

    def is_normal_word(self, w: Word) -> bool:
        return self._index.leftmost_match(w) is None

    def normal_words(self, d: int) -> list[Word]:
        """All normal words of degree <= d, in increasing monomial order.

        They form a basis of the filtration space F_d of the quotient,
        which is only certified for d <= complete_to.
        """
        if d > self.complete_to:
            raise CertificationError(
                f"normal words of degree {d} exceed the certified degree "
                f"{self.complete_to}"
            )
        leads_by_len: dict[int, set[Word]] = {}
        for rule in self.rules:
            leads_by_len.setdefault(len(rule.lead), set()).add(rule.lead)
        out: list[Word] = [()]
        current: list[Word] = [()]
        m = len(self.alphabet)
        for _ in range(d):
            nxt = []
            for w in current:
                for s in range(m):
                    cand = w + (s,)
                    # the prefix is normal, so only suffix hits are possible
                    bad = any(
                        len(cand) >= length and cand[-length:] in leads
                        for length, leads in leads_by_len.items()
                    )
                    if not bad:
                        nxt.append(cand)
            current = nxt
            out.extend(nxt)
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedGroebnerBasis)
            and self.order == other.order
            and self.degree_bound == other.degree_bound
            and self.complete_to == other.complete_to
            and list(self.rules) == list(other.rules)
        )

    def __repr__(self) -> str:
        return (
            f"TruncatedGroebnerBasis({len(self.rules)} rules, "
            f"D={self.degree_bound}, complete_to={self.complete_to})"
        )

    # -- exchange format -----------------------------------------------------

    def to_json_dict(self) -> dict:
        ab = self.alphabet
        return {
            "schema_version": 1,
            "kind": "truncated-groebner-basis",
            "order": {
                "kind": "deglex",
                "precedence": list(ab.names),
                "square": ab.n,
                "base": ab.base,
            },
            "degree_bound": self.degree_bound,
            "complete_to": self.complete_to,
            "rules": [
                {
                    "lead": word_to_str(r.lead, ab),
                    "rhs": poly_to_str(r.rhs, ab),
                }
                for r in self.rules
            ],
            "discarded_ambiguities": [
                {
                    "degree": a.degree,
                    "word": word_to_str(a.word, ab),
                    "rules": [a.i, a.j],
                    "kind": a.kind,
                }
                for a in self.discarded
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, text_or_dict) -> "TruncatedGroebnerBasis":
        """Rebuild a basis from the exchange format.

        Loaded rules have no cofactor tables, so certificates against a
        loaded basis cannot be flattened to the generating relations.
        """
        from .presentation import parse_polynomial, parse_word

        doc = json.loads(text_or_dict) if isinstance(text_or_dict, str) else text_or_dict
        spec = doc["order"]
        ab = Alphabet(spec["precedence"], n=spec.get("square"), base=spec.get("base", "u"))
        rules = []
        for pos, entry in enumerate(doc["rules"]):
            lead = parse_word(entry["lead"], ab)
            rhs = parse_polynomial(entry["rhs"], ab)
            rules.append(RewriteRule(pos, lead, rhs, ("derived", pos), None))
        discarded = []
        for entry in doc.get("discarded_ambiguities", []):
            word = parse_word(entry["word"], ab)
            i, j = entry["rules"]
            ri, rj = rules[i], rules[j]
            off_i = _find_offset(word, ri.lead)
            off_j = entry.get("off_j")
            if off_j is None:
                off_j = _find_offset(word, rj.lead, skip=(off_i if i == j else -1))
            discarded.append(Ambiguity(word, i, j, off_i, off_j, entry["kind"]))
        return cls(
            MonomialOrder(ab),
            (),
            rules,
            doc["degree_bound"],
            doc["complete_to"],
            discarded,
        )


def _find_offset(word: Word, lead: Word, skip: int = -1) -> int:
    for p in range(len(word) - len(lead) + 1):
        if word[p:p + len(lead)] == lead and p != skip:
            return p
    return 0


def complete(relations, order: MonomialOrder, degree_bound: int) -> TruncatedGroebnerBasis:
    """Degree-truncated completion of the two-sided ideal.

    Processes overlap/inclusion ambiguities in (degree, rule pair,
    offset) order, absorbing every nonzero reduced obstruction as a new
    rule; ambiguities of total degree > degree_bound are skipped and
    logged.  The run ends with a certification pass that re-reduces
    every ambiguity of the final interreduced rule set, so the returned
    ``complete_to`` is verified rather than assumed.  Output is a pure
    function of (relations, order, degree_bound).
    """
    if degree_bound < 2:
        raise ValueError("degree bound must be at least 2")
    relations = tuple(relations)
    for rel in relations:
        if rel.poly.degree > degree_bound:
            raise ValueError("all relations must have degree <= the bound")

    rules: list[RewriteRule] = []
    active: set[int] = set()
    heap: list = []
    index: list[_RuleIndex | None] = [None]  # rebuilt lazily after changes

    def current_index() -> _RuleIndex:
        if index[0] is None:
            index[0] = _RuleIndex([rules[r] for r in sorted(active)])
        return index[0]

    def push_ambiguities(new_id: int) -> None:
        items = []
        for other in sorted(active):
            if other == new_id:
                pairs = [(new_id, new_id)]
            else:
                pairs = [(other, new_id), (new_id, other)]
            for (a, b) in pairs:
                items.extend(_pair_ambiguities(rules[a], rules[b], a, b))
        for amb in items:
            if amb.degree <= degree_bound:
                heapq.heappush(heap, (_amb_sort_key(amb), amb))

    def absorb(poly: Polynomial, cofs: Cofactors) -> None:
        queue = deque([(poly, cofs)])
        while queue:
            p, cf = queue.popleft()
            if p.is_zero:
                continue
            nf, cert = reduce_poly(p, current_index())
            if nf.is_zero:
                continue
            nf_cofs = dict(cf)
            for key, c in cert.relation_cofactors().items():
                s = nf_cofs.get(key, 0) - c
                if s:
                    nf_cofs[key] = s
                else:
                    nf_cofs.pop(key, None)
            lc = nf.lead_coeff()
            p_monic = nf / lc
            cof_monic = {k: c / lc for k, c in nf_cofs.items()}
            lead = p_monic.lead_word()
            rid = len(rules)
            rule = RewriteRule(rid, lead, Polynomial({lead: 1}) - p_monic,
                               ("derived", rid), cof_monic)
            rules.append(rule)
            active.add(rid)
            index[0] = None
            # retire rules whose lead the new lead divides; re-absorb them
            for other in sorted(active - {rid}):
                if contains_subword(rules[other].lead, lead):
                    active.discard(other)
                    index[0] = None
                    queue.append((rules[other].poly, dict(rules[other].cofactors)))
            push_ambiguities(rid)

    for idx, rel in enumerate(relations):
        absorb(rel.poly, {((), idx, ()): Fraction(1)})

    while True:
        while heap:
            _, amb = heapq.heappop(heap)
            if amb.i not in active or amb.j not in active:
                continue
            obstruction, cofs = _obstruction(rules, amb)
            absorb(obstruction, cofs)

        _tail_interreduce(rules, active, current_index, index)

        # certification pass over the final rule set
        leftover = None
        discarded: list[Ambiguity] = []
        final_ids = sorted(active)
        renumber = {rid: pos for pos, rid in enumerate(final_ids)}
        for a in final_ids:
            for b in final_ids:
                for amb in _pair_ambiguities(rules[a], rules[b], a, b):
                    if amb.degree > degree_bound:
                        discarded.append(
                            Ambiguity(amb.word, renumber[a], renumber[b],
                                      amb.off_i, amb.off_j, amb.kind)
                        )
                        continue
                    obstruction, cofs = _obstruction(rules, amb)
                    nf, _ = reduce_poly(obstruction, current_index())
                    if not nf.is_zero:
                        leftover = (obstruction, cofs)
                        break
                if leftover:
                    break
            if leftover:
                break
        if leftover is None:
            break
        absorb(*leftover)

    final_rules = []
    for pos, rid in enumerate(sorted(active, key=lambda r: deglex_key(rules[r].lead))):
        r = rules[rid]
        final_rules.append(RewriteRule(pos, r.lead, r.rhs, r.tag, r.cofactors))
    discarded.sort(key=_amb_sort_key)
    return TruncatedGroebnerBasis(order, relations, final_rules, degree_bound,
                                  degree_bound, discarded)


def _tail_interreduce(rules, active, current_index, index) -> None:
    """Fully reduce each rule's rhs against the other active rules.

    Leads already form an antichain at this point, so only tails change;
    cofactor tables are updated alongside.
    """
    changed = True
    while changed:
        changed = False
        for rid in sorted(active):
            rule = rules[rid]
            others = _RuleIndex([rules[r] for r in sorted(active) if r != rid])
            nf, cert = reduce_poly(rule.poly, others)
            if len(cert) == 0:
                continue
            cofs = dict(rule.cofactors)
            for key, c in cert.relation_cofactors().items():
                s = cofs.get(key, 0) - c
                if s:
                    cofs[key] = s
                else:
                    cofs.pop(key, None)
            lead = nf.lead_word()
            assert lead == rule.lead, "tail reduction must preserve the lead"
            rules[rid] = RewriteRule(rid, lead, Polynomial({lead: 1}) - nf,
                                     rule.tag, cofs)
            index[0] = None
            changed = True


def ao_basis(n: int, degree_bound: int) -> TruncatedGroebnerBasis:
    """Completed truncated basis for A_o(n) under the default order."""
    return complete(ao_relations(n), MonomialOrder(Alphabet.square(n)), degree_bound)


def filtration_dim_oracle(n: int, d: int) -> int:
    """dim F_d(A_o(n)) computed without Groebner bases.

    Counts all words of degree <= d, subtracts the exact rank of the
    span of the two-sided relation multiples x*rel*y of degree <= d.
    Cost grows like (n^2)^d; guarded by the elimination word budget.
    """
    from .linalg import _rref_pivots

    if d < 0:
        raise ValueError("degree must be nonnegative")
    ab = Alphabet.square(n)
    m = n * n
    words: list[Word] = [()]
    frontier: list[Word] = [()]
    for _ in range(d):
        frontier = [w + (s,) for w in frontier for s in range(m)]
        words.extend(frontier)
    check_word_budget(len(words), "filtration_dim_oracle")
    col = {w: i for i, w in enumerate(words)}

    by_degree: dict[int, list[Word]] = {}
    for w in words:
        by_degree.setdefault(len(w), []).append(w)

    rows = []
    for rel in ao_relations(n):
        deg = rel.poly.degree
        for la in range(0, d - deg + 1):
            for lb in range(0, d - deg - la + 1):
                for a in by_degree[la]:
                    for b in by_degree[lb]:
                        row: dict[int, Fraction] = {}
                        for w, c in rel.poly.terms.items():
                            j = col[a + w + b]
                            s = row.get(j, 0) + c
                            if s:
                                row[j] = s
                            else:
                                row.pop(j, None)
                        if row:
                            rows.append(row)
    return len(words) - len(_rref_pivots(rows))


def reduce_tensor(tp: TensorPolynomial, basis: TruncatedGroebnerBasis) -> TensorPolynomial:
    """Legwise normal form of a two-leg tensor (the canonical
    representative of its class in the quotient tensor square)."""
    assert tp.legs == 2
    total = TensorPolynomial(2)
    cache: dict[Word, Polynomial] = {}

    def nf(w: Word) -> Polynomial:
        if w not in cache:
            cache[w] = basis.normal_form(Polynomial.from_word(w))
        return cache[w]

    for (w1, w2), c in tp.terms.items():
        total = total + c * TensorPolynomial.of(nf(w1), nf(w2))
    return total
