"""Finitely presented groups: presentations, coset enumeration, subgroup
presentations, and abelianization.

Words are tuples of (generator index, exponent) syllables, kept freely
reduced. A presentation is a tuple of generator names plus relator words;
`a^m = b^n` style relations normalize to the relator `a^m b^-n`.

Coset enumeration is Felsch-style: a deduction stack is processed after
every definition, and new cosets are defined at the lowest live coset and
lowest column first, so enumeration is deterministic. Closed tables are
compressed (no dead cosets) and standardized: cosets are numbered in first
appearance order, reading the table row by row with columns interleaved as
g, g^-1, next generator, and so on. That numbering is a convention of this
module, chosen so that tables, spanning trees, and Schreier generators are
reproducible across runs.

Tables validate their own invariants on construction: every column is a
bijection, every relator traces to the identity at every coset, and the
subgroup words fix coset 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import BudgetExhausted, CapExceeded, PresentationSyntaxError
from .homalg import AbelianStructure, IntMatrix, cokernel_structure
from .perm import Perm

DEFAULT_MAX_COSETS = 1_000_000

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _reduce(syllables):
    stack = []
    for g, e in syllables:
        e = int(e)
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            merged = stack[-1][1] + e
            stack.pop()
            if merged:
                stack.append((g, merged))
        else:
            stack.append((g, e))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word in abstract generators."""

    syllables: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", _reduce(self.syllables))

    @property
    def is_empty(self):
        return not self.syllables

    def __mul__(self, other):
        return Word(self.syllables + other.syllables)

    def inverse(self):
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Word()
        for _ in range(k):
            out = out * self
        return out

    def letters(self):
        """The word as a flat list of (generator, +1 or -1) steps."""
        out = []
        for g, e in self.syllables:
            step = 1 if e > 0 else -1
            out.extend((g, step) for _ in range(abs(e)))
        return out

    def letter_count(self):
        return sum(abs(e) for _, e in self.syllables)

    def exponent_vector(self, ngens):
        vec = [0] * ngens
        for g, e in self.syllables:
            vec[g] += e
        return vec

    def substitute(self, images):
        """Replace generator g by images[g] throughout (an endomorphism)."""
        out = Word()
        for g, e in self.syllables:
            out = out * (images[g] ** e)
        return out

    def render(self, names):
        if not self.syllables:
            return "1"
        parts = []
        for g, e in self.syllables:
            parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
        return " ".join(parts)


@dataclass(frozen=True)
class FpPresentation:
    """Generator names plus relator words."""

    generators: tuple
    relators: tuple

    def __post_init__(self):
        names = tuple(self.generators)
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for name in names:
            if not _NAME_RE.fullmatch(name):
                raise ValueError(f"bad generator name {name!r}")
        object.__setattr__(self, "generators", names)
        rels = tuple(self.relators)
        for w in rels:
            for g, _ in w.syllables:
                if not 0 <= g < len(names):
                    raise ValueError(f"relator uses unknown generator index {g}")
        object.__setattr__(self, "relators", rels)

    @property
    def ngens(self):
        return len(self.generators)

    def word(self, text):
        return parse_word(self.generators, text)

    def __str__(self):
        names = ", ".join(self.generators)
        rels = ", ".join(w.render(self.generators) for w in self.relators)
        return f"< {names} | {rels} >".replace("|  >", "| >")


def parse_word(names, text, base_pos=0):
    """Parse a word: juxtaposed `name ('^' integer)?` factors, '1' allowed."""
    syllables = []
    i = 0
    n = len(text)
    by_length = sorted(set(names), key=len, reverse=True)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        if text[i] == "1" and (i + 1 == n or not text[i + 1].isalnum()) \
                and (i == 0 or not (text[i - 1].isalnum() or text[i - 1] == "_")):
            i += 1
            continue
        matched = None
        for name in by_length:
            if text.startswith(name, i):
                matched = name
                break
        if matched is None:
            raise PresentationSyntaxError(
                f"expected a generator name in {text!r}", base_pos + i)
        g = names.index(matched)
        i += len(matched)
        while i < n and text[i].isspace():
            i += 1
        exp = 1
        if i < n and text[i] == "^":
            i += 1
            while i < n and text[i].isspace():
                i += 1
            sign = 1
            if i < n and text[i] == "-":
                sign = -1
                i += 1
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i == start:
                raise PresentationSyntaxError("expected an integer exponent",
                                              base_pos + i)
            exp = sign * int(text[start:i])
        syllables.append((g, exp))
    return Word(tuple(syllables))


def parse_presentation(text):
    """Parse `< names | relations >`.

    Names are comma-separated identifiers. Relations are comma-separated,
    each a word or `word = word` (normalized to left * right^-1). An empty
    relation list is allowed.
    """
    stripped = text.strip()
    if not stripped:
        raise PresentationSyntaxError("empty presentation", 0)
    if not stripped.startswith("<"):
        raise PresentationSyntaxError("presentation must start with '<'",
                                      text.find(stripped[0]))
    if not stripped.endswith(">"):
        raise PresentationSyntaxError("presentation must end with '>'",
                                      len(text) - 1)
    open_pos = text.index("<")
    bar = text.find("|", open_pos)
    close = text.rfind(">")
    if bar < 0 or bar > close:
        raise PresentationSyntaxError("missing '|' separator", open_pos)
    names_part = text[open_pos + 1:bar]
    names = []
    pos = open_pos + 1
    for piece in names_part.split(","):
        name = piece.strip()
        if name:
            if not _NAME_RE.fullmatch(name):
                raise PresentationSyntaxError(f"bad generator name {name!r}",
                                              pos + piece.index(name.strip()[0]))
            if name in names:
                raise PresentationSyntaxError(f"duplicate generator {name!r}", pos)
            names.append(name)
        elif names_part.strip():
            raise PresentationSyntaxError("empty generator name", pos)
        pos += len(piece) + 1
    names = tuple(names)

    relators = []
    rel_part = text[bar + 1:close]
    pos = bar + 1
    for piece in rel_part.split(","):
        if piece.strip():
            sides = piece.split("=")
            if len(sides) == 1:
                relators.append(parse_word(names, sides[0], pos))
            elif len(sides) == 2:
                left = parse_word(names, sides[0], pos)
                right = parse_word(names, sides[1], pos + len(sides[0]) + 1)
                relators.append(left * right.inverse())
            else:
                raise PresentationSyntaxError("more than one '=' in a relation",
                                              pos + piece.index("=", piece.index("=") + 1))
        elif rel_part.strip():
            raise PresentationSyntaxError("empty relation", pos)
        pos += len(piece) + 1
    return FpPresentation(names, tuple(relators))


class CosetTable:
    """The action of a presented group on the cosets of a subgroup.

    Rows are cosets (0 is the subgroup itself); columns are interleaved
    g0, g0^-1, g1, g1^-1, ... The table is closed, compressed, and numbered
    in first appearance order. All invariants are checked on construction.
    """

    def __init__(self, presentation, subgroup_words, rows):
        self.presentation = presentation
        self.subgroup_words = tuple(subgroup_words)
        self.rows = tuple(tuple(r) for r in rows)
        self._validate()

    @property
    def index(self):
        return len(self.rows)

    def _validate(self):
        n = len(self.rows)
        cols = 2 * self.presentation.ngens
        if n == 0:
            raise ValueError("a coset table has at least one coset")
        seen_max = 0
        for a, row in enumerate(self.rows):
            if len(row) != cols:
                raise ValueError("row width disagrees with the generator count")
            for c, t in enumerate(row):
                if not 0 <= t < n:
                    raise ValueError(f"entry {t} out of range at ({a}, {c})")
                if self.rows[t][c ^ 1] != a:
                    raise ValueError(f"column {c} is not a bijection at coset {a}")
                if t > seen_max:
                    if t != seen_max + 1:
                        raise ValueError("table is not in first-appearance order")
                    seen_max = t
        for rel in self.presentation.relators:
            for a in range(n):
                if self.trace(a, rel) != a:
                    raise ValueError(f"relator does not close at coset {a}")
        for w in self.subgroup_words:
            if self.trace(0, w) != 0:
                raise ValueError("subgroup word does not fix coset 0")

    def apply(self, coset, gen, sign=1):
        return self.rows[coset][2 * gen + (0 if sign > 0 else 1)]

    def trace(self, coset, word):
        for g, s in word.letters():
            coset = self.rows[coset][2 * g + (0 if s > 0 else 1)]
        return coset

    def generator_perms(self):
        """The coset action of each generator, as a permutation of cosets."""
        n = len(self.rows)
        return [Perm(tuple(self.rows[a][2 * g] for a in range(n)))
                for g in range(self.presentation.ngens)]

    def _spanning_tree(self):
        # parent edges by first appearance; standardization guarantees that
        # scanning rows in order meets every coset > 0 exactly once as "new"
        parent = {0: None}
        for a, row in enumerate(self.rows):
            for c, t in enumerate(row):
                if t not in parent:
                    parent[t] = (a, c)
        return parent

    def coset_representative_words(self):
        """Word reaching each coset from coset 0 along the spanning tree."""
        parent = self._spanning_tree()
        reps = [None] * len(self.rows)
        reps[0] = Word()
        for coset in range(1, len(self.rows)):
            a, c = parent[coset]
            step = Word(((c // 2, 1 if c % 2 == 0 else -1),))
            reps[coset] = reps[a] * step
        return reps

    def schreier_generators(self):
        """Subgroup generators from the non-tree edges of the coset graph.

        Returns (coset, generator, word) triples in scan order; `word` is the
        Schreier element u_coset * g * u_{coset.g}^-1 written in the original
        generators. For an index-n subgroup of a rank-r free group there are
        n*r - n + 1 of them.
        """
        parent = self._spanning_tree()
        reps = self.coset_representative_words()
        out = []
        for a in range(len(self.rows)):
            for g in range(self.presentation.ngens):
                b = self.rows[a][2 * g]
                if parent.get(b) == (a, 2 * g) or parent.get(a) == (b, 2 * g + 1):
                    continue
                word = reps[a] * Word(((g, 1),)) * reps[b].inverse()
                out.append((a, g, word))
        return out

    def __str__(self):
        names = self.presentation.generators
        header = []
        for name in names:
            header.extend([name, name + "'"])
        lines = ["coset  " + "  ".join(header)]
        for a, row in enumerate(self.rows):
            lines.append(f"{a:>5}  " + "  ".join(str(t) for t in row))
        return "\n".join(lines)


class _Enumerator:
    """Felsch-style coset enumeration state."""

    def __init__(self, presentation, subgroup_words, max_cosets):
        self.ngens = presentation.ngens
        self.cols = 2 * self.ngens
        self.max_cosets = max_cosets
        self.table = [[None] * self.cols]
        self.p = [0]
        self.total = 1
        self.deductions = []
        self.rot_by_first = {}
        for rel in presentation.relators:
            letters = tuple(2 * g + (0 if s > 0 else 1) for g, s in rel.letters())
            for k in range(len(letters)):
                rot = letters[k:] + letters[:k]
                bucket = self.rot_by_first.setdefault(rot[0], [])
                if rot not in bucket:
                    bucket.append(rot)
        self.subgroup_letters = [
            tuple(2 * g + (0 if s > 0 else 1) for g, s in w.letters())
            for w in subgroup_words]

    def find(self, i):
        r = i
        p = self.p
        while p[r] != r:
            r = p[r]
        while p[i] != r:
            p[i], i = r, p[i]
        return r

    def define(self, a, c):
        if self.total >= self.max_cosets:
            raise BudgetExhausted(
                f"coset budget {self.max_cosets} exhausted; "
                "index unknown (possibly infinite)")
        b = len(self.table)
        self.table.append([None] * self.cols)
        self.p.append(b)
        self.total += 1
        self.table[a][c] = b
        self.table[b][c ^ 1] = a
        self.deductions.append((a, c))

    def _merge(self, a, b, queue):
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.p[b] = a
        queue.append(b)

    def coincide(self, a, b):
        queue = []
        self._merge(a, b, queue)
        qi = 0
        while qi < len(queue):
            dead = queue[qi]
            qi += 1
            row = self.table[dead]
            for c in range(self.cols):
                d = row[c]
                if d is None:
                    continue
                row[c] = None
                if self.table[d][c ^ 1] == dead:
                    self.table[d][c ^ 1] = None
                mu = self.find(dead)
                nu = self.find(d)
                if self.table[mu][c] is not None:
                    self._merge(self.find(self.table[mu][c]), nu, queue)
                elif self.table[nu][c ^ 1] is not None:
                    self._merge(self.find(self.table[nu][c ^ 1]), mu, queue)
                else:
                    self.table[mu][c] = nu
                    self.table[nu][c ^ 1] = mu
                    self.deductions.append((mu, c))

    def scan(self, alpha, letters, fill=False):
        """Trace `letters` from alpha back to alpha, deducing or coinciding.

        Returns True once the scan is complete or produced a deduction;
        False if a gap of length >= 2 remains (never with fill=True).
        """
        f = self.find(alpha)
        b = f
        i, j = 0, len(letters) - 1
        while True:
            while i <= j:
                t = self.table[f][letters[i]]
                if t is None:
                    break
                f = self.find(t)
                i += 1
            if i > j:
                if f != b:
                    self.coincide(f, b)
                return True
            while j >= i:
                t = self.table[b][letters[j] ^ 1]
                if t is None:
                    break
                b = self.find(t)
                j -= 1
            if j < i:
                if f != b:
                    self.coincide(f, b)
                return True
            if j == i:
                self.table[f][letters[i]] = b
                self.table[b][letters[i] ^ 1] = f
                self.deductions.append((f, letters[i]))
                return True
            if not fill:
                return False
            self.define(f, letters[i])

    def process_deductions(self):
        while self.deductions:
            a, c = self.deductions.pop()
            a = self.find(a)
            for rot in self.rot_by_first.get(c, ()):
                self.scan(a, rot)
            t = self.table[a][c]
            if t is not None:
                b = self.find(t)
                for rot in self.rot_by_first.get(c ^ 1, ()):
                    self.scan(b, rot)

    def first_undefined(self):
        for a in range(len(self.table)):
            if self.p[a] != a:
                continue
            row = self.table[a]
            for c in range(self.cols):
                if row[c] is None:
                    return a, c
        return None

    def run(self):
        for letters in self.subgroup_letters:
            if letters:
                self.scan(0, letters, fill=True)
                self.process_deductions()
        while True:
            self.process_deductions()
            pos = self.first_undefined()
            if pos is None:
                break
            self.define(*pos)
        live = [i for i in range(len(self.table)) if self.p[i] == i]
        renum = {old: new for new, old in enumerate(live)}
        return [[renum[self.find(t)] for t in self.table[old]] for old in live]


def _standardize(rows):
    new = {0: 0}
    order = [0]
    qi = 0
    while qi < len(order):
        a = order[qi]
        qi += 1
        for t in rows[a]:
            if t not in new:
                new[t] = len(new)
                order.append(t)
    out = [None] * len(rows)
    for a, row in enumerate(rows):
        out[new[a]] = tuple(new[t] for t in row)
    return out


def todd_coxeter(presentation, subgroup_words=(), max_cosets=DEFAULT_MAX_COSETS):
    """Enumerate the cosets of the subgroup generated by `subgroup_words`.

    If the enumeration closes within `max_cosets` total definitions, the
    returned table's index is the true subgroup index. Exhausting the budget
    raises BudgetExhausted: the index is then unknown (and possibly
    infinite), never silently wrong.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    subgroup_words = tuple(subgroup_words)
    enum = _Enumerator(presentation, subgroup_words, max_cosets)
    rows = enum.run()
    return CosetTable(presentation, subgroup_words, _standardize(rows))


def evaluate_word(word, images):
    """Evaluate a word at permutation images of the generators."""
    if not images:
        raise ValueError("no images to evaluate at")
    out = Perm.identity(images[0].degree)
    for g, s in word.letters():
        out = out * (images[g] if s > 0 else images[g].inverse())
    return out


def verify_hom(presentation, images):
    """True iff sending the generators to `images` kills every relator."""
    if len(images) != len(presentation.generators):
        raise ValueError(
            f"{len(presentation.generators)} generators but {len(images)} images")
    degrees = {g.degree for g in images}
    if len(degrees) > 1:
        raise ValueError("images have mixed degrees")
    if not images:
        return True
    for rel in presentation.relators:
        if not evaluate_word(rel, images).is_identity():
            return False
    return True


def coset_table_from_action(presentation, initial, act, max_states):
    """Coset table of a stabilizer, from an explicit transitive action.

    `act(state, gen, sign)` must implement a well-defined action of the
    presented group (relators must act trivially; this is re-checked by the
    CosetTable invariants). States are discovered breadth-first in column
    order, which yields the standardized numbering directly.
    """
    labels = {initial: 0}
    order = [initial]
    rows = []
    qi = 0
    while qi < len(order):
        state = order[qi]
        qi += 1
        row = []
        for g in range(presentation.ngens):
            for sign in (1, -1):
                target = act(state, g, sign)
                if target not in labels:
                    if len(order) >= max_states:
                        raise CapExceeded(
                            f"coset action exceeds {max_states} states")
                    labels[target] = len(order)
                    order.append(target)
                row.append(labels[target])
        rows.append(row)
    return CosetTable(presentation, (), rows)


def kernel_coset_table(presentation, images, order_cap=DEFAULT_MAX_COSETS):
    """Coset table of the kernel of the homomorphism given by `images`.

    Cosets of the kernel correspond to elements of the image group, acted on
    by right translation; the index is the image group's order.
    """
    if not verify_hom(presentation, images):
        raise ValueError("the images do not satisfy the relators")
    if not images:
        return todd_coxeter(presentation, ())
    inverses = [g.inverse() for g in images]

    def act(state, gen, sign):
        return state * (images[gen] if sign > 0 else inverses[gen])

    return coset_table_from_action(
        presentation, Perm.identity(images[0].degree), act, order_cap)


def reidemeister_schreier(presentation, table):
    """Presentation of the subgroup a closed coset table describes.

    Generators are the Schreier generators (one per non-tree edge); relators
    are every original relator rewritten at every coset (index x relator
    count of them before reduction). Simplification is deliberately minimal:
    free reduction plus removal of relators of length <= 1 and of the
    generators such relators trivialize. No Tietze search is attempted, so
    the output is deterministic.
    """
    sgens = table.schreier_generators()
    edge_index = {(a, g): k for k, (a, g, _) in enumerate(sgens)}
    rewritten = []
    for alpha in range(table.index):
        for rel in presentation.relators:
            cur = alpha
            syls = []
            for g, s in rel.letters():
                if s > 0:
                    k = edge_index.get((cur, g))
                    if k is not None:
                        syls.append((k, 1))
                    cur = table.rows[cur][2 * g]
                else:
                    prev = table.rows[cur][2 * g + 1]
                    k = edge_index.get((prev, g))
                    if k is not None:
                        syls.append((k, -1))
                    cur = prev
            if cur != alpha:
                raise RuntimeError("relator trace did not close")  # unreachable
            rewritten.append(Word(tuple(syls)))

    killed = set()
    rels = rewritten
    while True:
        rels = [w for w in rels if w.syllables]
        victim = None
        for w in rels:
            g, e = w.syllables[0]
            if len(w.syllables) == 1 and abs(e) == 1:
                victim = g
                break
        if victim is None:
            break
        killed.add(victim)
        rels = [Word(tuple(s for s in w.syllables if s[0] != victim)) for w in rels]

    alive = [k for k in range(len(sgens)) if k not in killed]
    remap = {old: new for new, old in enumerate(alive)}
    names = tuple(f"x{k}" for k in alive)
    relators = tuple(Word(tuple((remap[g], e) for g, e in w.syllables))
                     for w in rels)
    return FpPresentation(names, relators)


def abelianization(presentation):
    """Structure of the presented group made abelian."""
    if not presentation.relators:
        return AbelianStructure(free_rank=presentation.ngens)
    rows = [w.exponent_vector(presentation.ngens) for w in presentation.relators]
    return cokernel_structure(IntMatrix(rows))
