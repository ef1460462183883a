"""Finite permutation groups: orders, membership, canonical subgroups,
quotients, and automorphism group search.

Points are 0-based internally; all text (cycle notation) is 1-based.
Products read left to right: (p * q) means "apply p, then q", so words
evaluate in the order they are written, matching how words act on coset
tables in the fp module.

Orders and membership come from a stabilizer chain built by a deterministic
Schreier-Sims procedure: no randomized strong-generator filling, Schreier
generators are processed in sorted orbit order, so rebuilding a group from
the same generator list reproduces the same chain. A PermGroup lazily builds
its chain behind a lock; once built, every query is read-only, so sharing a
group between threads is safe.

The automorphism search backtracks over generator images, pruning by the
(element order, centralizer order) fingerprint, and certifies its output:
every reported map is verified against the full multiplication action of
the group, the set is closed as a permutation group on the element set, and
it contains all inner automorphisms.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import lcm

from .errors import BudgetExhausted, CapExceeded

DEFAULT_DEGREE_CAP = 64
DEFAULT_INDEX_CAP = 10_000
DEFAULT_AUT_ORDER_CAP = 1000
DEFAULT_AUT_NODE_BUDGET = 1_000_000


class Perm:
    """A permutation of {0, ..., degree-1}, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        n = len(images)
        seen = [False] * n
        for x in images:
            if not 0 <= x < n or seen[x]:
                raise ValueError(f"not a permutation of 0..{n - 1}: {images}")
            seen[x] = True
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @classmethod
    def _raw(cls, images):
        # internal fast path: images already known to be a valid tuple
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    @staticmethod
    def identity(degree):
        return Perm._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree, cycles):
        """Product of cycles over 0-based points, applied left to right."""
        images = list(range(degree))
        for cycle in cycles:
            cur = [0] * degree
            for i in range(degree):
                cur[i] = i
            for a, b in zip(cycle, cycle[1:]):
                cur[a] = b
            if cycle:
                cur[cycle[-1]] = cycle[0]
            images = [cur[x] for x in images]
        return cls(images)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def __mul__(self, other):
        if len(self.images) != len(other.images):
            raise ValueError("degree mismatch")
        o = other.images
        return Perm._raw(tuple(o[x] for x in self.images))

    def inverse(self):
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Perm._raw(tuple(inv))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(len(self.images))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self):
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self):
        """Nontrivial cycles (0-based), each starting at its minimum."""
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i] or self.images[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self):
        return lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def extended(self, degree):
        """The same permutation acting on a larger point set."""
        if degree < len(self.images):
            raise ValueError("cannot shrink a permutation")
        return Perm._raw(self.images + tuple(range(len(self.images), degree)))

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __str__(self):
        return format_cycles(self)

    def __repr__(self):
        return f"Perm({format_cycles(self)!r}, degree={self.degree})"


def commutator(a, b):
    """[a, b] = a b a^-1 b^-1."""
    return a * b * a.inverse() * b.inverse()


def format_cycles(perm):
    """Cycle notation with 1-based points; the identity prints as ()."""
    cycles = perm.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in cyc) + ")" for cyc in cycles)


def parse_cycles(text, degree=None):
    """Parse 1-based cycle notation like "(1 2 3)(4 5)".

    Whitespace-insensitive; commas between points are tolerated. Non-disjoint
    cycles compose left to right. The degree defaults to the largest point
    mentioned; an explicit degree may only enlarge it.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty permutation text")
    cycles = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise ValueError(f"expected '(' at position {i} in {text!r}")
        j = s.index(")", i + 1) if ")" in s[i + 1:] else -1
        if j < 0:
            raise ValueError(f"unclosed cycle in {text!r}")
        body = s[i + 1:j].replace(",", " ").split()
        points = []
        for tok in body:
            if not tok.isdigit():
                raise ValueError(f"bad point {tok!r} in {text!r}")
            p = int(tok)
            if p < 1:
                raise ValueError(f"points are 1-based, got {p}")
            points.append(p - 1)
        if len(set(points)) != len(points):
            raise ValueError(f"repeated point in cycle {s[i:j + 1]!r}")
        if len(points) >= 2:
            cycles.append(points)
        i = j + 1
    needed = 1 + max((max(c) for c in cycles), default=-1)
    if degree is None:
        degree = max(needed, 1)
    elif degree < needed:
        raise ValueError(f"degree {degree} too small for {text!r}")
    return Perm.from_cycles(degree, cycles)


class _StabilizerChain:
    """Deterministic Schreier-Sims stabilizer chain.

    base[i] is fixed by every strong generator assigned to deeper levels;
    transversals[i] maps each orbit point d to a permutation u with
    u(base[i]) = d.
    """

    def __init__(self, degree, generators):
        self.degree = degree
        self.base = []
        self.strong = []
        self.transversals = []
        for g in generators:
            residue, level = self._strip(g)
            if not residue.is_identity():
                self._place(residue, level)
        i = len(self.base) - 1
        while i >= 0:
            placed = self._check_level(i)
            if placed is None:
                i -= 1
            else:
                i = placed

    def _gens_at(self, i):
        prefix = self.base[:i]
        out = []
        for s in self.strong:
            img = s.images
            if all(img[b] == b for b in prefix):
                out.append(s)
        return out

    def _rebuild_orbit(self, i):
        b = self.base[i]
        gens = self._gens_at(i)
        tr = {b: Perm.identity(self.degree)}
        queue = [b]
        qi = 0
        while qi < len(queue):
            d = queue[qi]
            qi += 1
            ud = tr[d]
            for g in gens:
                e = g.images[d]
                if e not in tr:
                    tr[e] = ud * g
                    queue.append(e)
        self.transversals[i] = tr

    def _strip(self, g, start=0):
        i = start
        while i < len(self.base):
            d = g.images[self.base[i]]
            tr = self.transversals[i]
            if d not in tr:
                return g, i
            g = g * tr[d].inverse()
            i += 1
        return g, len(self.base)

    def _place(self, g, level):
        # g fixes base[:level]; push it as deep as it goes
        while level < len(self.base) and g.images[self.base[level]] == self.base[level]:
            level += 1
        if level == len(self.base):
            moved = next(p for p in range(self.degree) if g.images[p] != p)
            self.base.append(moved)
            self.transversals.append({})
        self.strong.append(g)
        for k in range(level + 1):
            self._rebuild_orbit(k)
        return level

    def _check_level(self, i):
        tr = self.transversals[i]
        gens = self._gens_at(i)
        for d in sorted(tr):
            ud = tr[d]
            for s in gens:
                schreier = ud * s * tr[s.images[d]].inverse()
                if schreier.is_identity():
                    continue
                residue, level = self._strip(schreier, i + 1)
                if residue.is_identity():
                    continue
                return self._place(residue, level)
        return None

    def order(self):
        n = 1
        for tr in self.transversals:
            n *= len(tr)
        return n

    def contains(self, g):
        residue, _ = self._strip(g)
        return residue.is_identity()

    def elements(self):
        result = [Perm.identity(self.degree)]
        for i in reversed(range(len(self.base))):
            tr = self.transversals[i]
            us = [tr[d] for d in sorted(tr)]
            result = [h * u for u in us for h in result]
        return result


class PermGroup:
    """A finite permutation group given by generators.

    Treat instances as immutable: the stabilizer chain and a few derived
    results (elements, center, automorphism set) are cached on the instance,
    and the named-group constructors below share instances process-wide.
    """

    def __init__(self, degree, generators=(), *, degree_cap=DEFAULT_DEGREE_CAP):
        gens = []
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"generator degree {g.degree} != group degree {degree}")
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self.degree_cap = degree_cap
        self._lock = threading.Lock()
        self._chain = None
        self._elements = None
        self._center = None
        self._aut = None

    def _make_subgroup(self, generators):
        return PermGroup(self.degree, generators, degree_cap=self.degree_cap)

    @property
    def chain(self):
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    if self.degree_cap is not None and self.degree > self.degree_cap:
                        raise CapExceeded(
                            f"degree {self.degree} exceeds cap {self.degree_cap}")
                    self._chain = _StabilizerChain(self.degree, self.generators)
        return self._chain

    def order(self):
        return self.chain.order()

    def contains(self, g):
        if g.degree != self.degree:
            raise ValueError(f"degree mismatch: {g.degree} vs {self.degree}")
        return self.chain.contains(g)

    def __contains__(self, g):
        return self.contains(g)

    def elements(self):
        """All elements, in the chain's deterministic enumeration order."""
        if self._elements is None:
            self._elements = tuple(self.chain.elements())
        return self._elements

    def is_trivial(self):
        return not self.generators

    def is_abelian(self):
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def is_subgroup_of(self, other):
        return self.degree == other.degree and all(g in other for g in self.generators)

    def equals_subgroup(self, other):
        """Same subgroup of Sym(degree): equal orders plus mutual membership."""
        return (self.degree == other.degree
                and self.order() == other.order()
                and self.is_subgroup_of(other))

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators) or "()"
        return f"PermGroup(degree={self.degree}, gens=[{gens}])"


def group_order(group):
    """Exact order via the stabilizer chain."""
    return group.order()


def membership(group, g):
    """True iff g lies in the group; degrees must match."""
    return group.contains(g)


def normal_closure(group, seeds):
    """Smallest normal subgroup of `group` containing every seed element."""
    gens = []
    for s in seeds:
        if not group.contains(s):
            raise ValueError(f"element {s} is not in the group")
        if not s.is_identity() and s not in gens:
            gens.append(s)
    closure = group._make_subgroup(gens)
    while True:
        new = []
        for h in closure.generators:
            for g in group.generators:
                c = g.inverse() * h * g
                if c not in closure and c not in new:
                    new.append(c)
        if not new:
            return closure
        closure = group._make_subgroup(closure.generators + tuple(new))


def derived_subgroup(group):
    """Commutator subgroup: normal closure of the generator commutators."""
    gens = group.generators
    seeds = [commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(group, seeds)


def _reduce_generators(group, elements):
    kept = []
    sub = group._make_subgroup(())
    for x in elements:
        if not x.is_identity() and x not in sub:
            kept.append(x)
            sub = group._make_subgroup(kept)
    return sub


def centralizer(group, subgroup):
    """Centralizer of `subgroup` (must lie inside `group`) in `group`."""
    for h in subgroup.generators:
        if not group.contains(h):
            raise ValueError("subgroup is not contained in the ambient group")
    hgens = subgroup.generators
    central = [x for x in group.elements()
               if all(x * h == h * x for h in hgens)]
    return _reduce_generators(group, central)


def center(group):
    """Center of the group (cached on the instance)."""
    if group._center is None:
        group._center = centralizer(group, group)
    return group._center


class QuotientAction:
    """A finite quotient G/N realized on the right cosets of N.

    `group` is the quotient as a permutation group of degree [G:N];
    `images` are the images of G's generators (aligned with them, identity
    entries included). `image_of` extends the quotient map to any element.
    """

    def __init__(self, group, images, reps, labels, n_elements):
        self.group = group
        self.images = images
        self._reps = reps
        self._labels = labels
        self._n_elements = n_elements

    def _canon(self, x):
        return min((h * x).images for h in self._n_elements)

    def image_of(self, x):
        labels = self._labels
        return Perm._raw(tuple(labels[self._canon(rep * x)] for rep in self._reps))


def quotient_regular_action(group, normal, index_cap=DEFAULT_INDEX_CAP):
    """G/N as a permutation group on the cosets of N (N must be normal).

    Normality is always checked, never assumed. Returns a QuotientAction so
    callers get both the quotient group and the quotient map on generators.
    """
    for h in normal.generators:
        if not group.contains(h):
            raise ValueError("N is not contained in G")
    for g in group.generators:
        for h in normal.generators:
            if (g * h * g.inverse()) not in normal:
                raise ValueError(
                    f"subgroup is not normal: conjugate of {h} by {g} falls outside")
    index = group.order() // normal.order()
    if index > index_cap:
        raise CapExceeded(f"index {index} exceeds cap {index_cap}")
    n_elements = normal.elements()
    identity = Perm.identity(group.degree)

    def canon(x):
        return min((h * x).images for h in n_elements)

    reps = [identity]
    labels = {canon(identity): 0}
    qi = 0
    while qi < len(reps):
        rep = reps[qi]
        qi += 1
        for g in group.generators:
            t = rep * g
            key = canon(t)
            if key not in labels:
                labels[key] = len(reps)
                reps.append(t)
    if len(reps) != index:
        raise RuntimeError("coset count disagrees with the index")  # unreachable
    images = tuple(
        Perm._raw(tuple(labels[canon(rep * g)] for rep in reps))
        for g in group.generators)
    quotient = PermGroup(index, images, degree_cap=None)
    return QuotientAction(quotient, images, reps, labels, n_elements)


def direct_product(g, h):
    """G x H acting on the disjoint union of the two point sets."""
    dg, dh = g.degree, h.degree
    gens = [p.extended(dg + dh) for p in g.generators]
    shift = tuple(range(dg))
    for q in h.generators:
        gens.append(Perm._raw(shift + tuple(x + dg for x in q.images)))
    if g.degree_cap is None or h.degree_cap is None:
        cap = None
    else:
        cap = max(g.degree_cap, h.degree_cap, dg + dh)
    return PermGroup(dg + dh, gens, degree_cap=cap)


@dataclass(frozen=True)
class GroupAutomorphism:
    """An automorphism, as generator images plus its action on element indices."""

    images: tuple
    element_perm: Perm


class AutomorphismSet:
    """Result of an automorphism group search.

    `maps` are the verified automorphisms (images aligned with the base
    group's generator list). When `complete` is true the set is the whole
    automorphism group and has been certified: closed under composition as a
    permutation group on the element list, and containing all inner
    automorphisms. When the node budget ran out, `complete` is false and
    `maps` holds only the automorphisms found so far, each still verified.
    """

    def __init__(self, base_group, maps, complete, elements, nodes_used):
        self.base_group = base_group
        self.maps = tuple(maps)
        self.complete = complete
        self.elements = tuple(elements)
        self.nodes_used = nodes_used
        self._index = {p: i for i, p in enumerate(self.elements)}
        self._perm_group = None

    def __len__(self):
        return len(self.maps)

    def order(self):
        if not self.complete:
            raise BudgetExhausted("automorphism search was truncated; order unknown")
        return len(self.maps)

    def inner_order(self):
        return self.base_group.order() // center(self.base_group).order()

    def is_all_inner(self):
        return self.order() == self.inner_order()

    def index_of(self, x):
        return self._index[x]

    def apply(self, automorphism, x):
        """Image of an arbitrary group element under one of the maps."""
        return self.elements[automorphism.element_perm.images[self._index[x]]]

    def conjugation_map(self, g):
        """The inner automorphism x -> g x g^-1 as an element permutation."""
        ginv = g.inverse()
        return Perm._raw(tuple(self._index[g * x * ginv] for x in self.elements))

    def as_perm_group(self):
        """The automorphism group acting on the element set of the base group.

        Generated by a small (greedily chosen) subset of the maps; its order
        certifies closure of `maps` under composition.
        """
        if self._perm_group is None:
            n = len(self.elements)
            sel = []
            grp = PermGroup(n, (), degree_cap=None)
            for m in self.maps:
                if m.element_perm not in grp:
                    sel.append(m.element_perm)
                    grp = PermGroup(n, sel, degree_cap=None)
            if self.complete and grp.order() != len(self.maps):
                raise RuntimeError("automorphism set is not closed under composition")
            self._perm_group = grp
        return self._perm_group


def aut_group_search(group, budget=DEFAULT_AUT_NODE_BUDGET,
                     order_cap=DEFAULT_AUT_ORDER_CAP):
    """Search for the full automorphism group by backtracking over images.

    Candidate images are pruned by the (element order, centralizer order)
    fingerprint and by fingerprints of generator products; every surviving
    assignment is extended to the whole group and verified against the
    multiplication action, so nothing unverified is ever reported. If the
    node budget runs out, the partial set is returned flagged incomplete.
    """
    if group._aut is not None:
        return group._aut
    n = group.order()
    if n > order_cap:
        raise CapExceeded(f"group order {n} exceeds automorphism search cap {order_cap}")

    kept = []
    sub = group._make_subgroup(())
    for g in group.generators:
        if not g.is_identity() and g not in sub:
            kept.append(g)
            sub = group._make_subgroup(kept)
    if len(kept) > 3:
        raise CapExceeded(
            f"{len(kept)} independent generators; the search requires at most 3")

    # breadth-first element list; parent/pgen record one word per element
    identity = Perm.identity(group.degree)
    elems = [identity]
    index = {identity: 0}
    parent = [0]
    pgen = [-1]
    qi = 0
    while qi < len(elems):
        x = elems[qi]
        for k, g in enumerate(kept):
            y = x * g
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                parent.append(qi)
                pgen.append(k)
        qi += 1
    if len(elems) != n:
        raise RuntimeError("element enumeration disagrees with the group order")

    table = []
    for x in elems:
        xi = x.images
        row = [index[Perm._raw(tuple(y.images[v] for v in xi))] for y in elems]
        table.append(row)

    orders = [x.order() for x in elems]
    cent = [0] * n
    for i in range(n):
        ti = table[i]
        c = 0
        for j in range(n):
            if ti[j] == table[j][i]:
                c += 1
        cent[i] = c
    fingerprint = [(orders[i], cent[i]) for i in range(n)]

    gidx = [index[g] for g in kept]
    m = len(gidx)
    candidates = [[i for i in range(n) if fingerprint[i] == fingerprint[gi]]
                  for gi in gidx]

    found = []
    nodes = 0
    truncated = False

    def verify(img):
        phi = [0] * n
        for x in range(1, n):
            phi[x] = table[phi[parent[x]]][img[pgen[x]]]
        seen = bytearray(n)
        for v in phi:
            if seen[v]:
                return None
            seen[v] = 1
        for x in range(n):
            px = phi[x]
            tx = table[x]
            for k in range(m):
                if phi[tx[gidx[k]]] != table[px][img[k]]:
                    return None
        return phi

    def search(img):
        nonlocal nodes, truncated
        k = len(img)
        for c in candidates[k]:
            if truncated:
                return
            nodes += 1
            if nodes > budget:
                truncated = True
                return
            ok = True
            for l in range(k):
                if (fingerprint[table[img[l]][c]] != fingerprint[table[gidx[l]][gidx[k]]]
                        or fingerprint[table[c][img[l]]]
                        != fingerprint[table[gidx[k]][gidx[l]]]):
                    ok = False
                    break
            if not ok:
                continue
            if k + 1 == m:
                phi = verify(img + [c])
                if phi is not None:
                    element_perm = Perm._raw(tuple(phi))
                    images = tuple(elems[phi[index[g]]] for g in group.generators)
                    found.append(GroupAutomorphism(images, element_perm))
            else:
                search(img + [c])

    if m == 0:
        found.append(GroupAutomorphism((), Perm.identity(n)))
    else:
        search([])

    result = AutomorphismSet(group, found, not truncated, elems, nodes)
    if result.complete:
        phis = {a.element_perm for a in result.maps}
        for g in group.generators:
            if result.conjugation_map(g) not in phis:
                raise RuntimeError("search missed an inner automorphism")
        result.as_perm_group()  # certifies closure
        group._aut = result
    return result


def is_complete(group, budget=DEFAULT_AUT_NODE_BUDGET):
    """True iff the center is trivial and every automorphism is inner."""
    if center(group).order() > 1:
        return False
    aset = aut_group_search(group, budget)
    if aset.complete:
        return len(aset.maps) == group.order()
    if len(aset.maps) > group.order():
        return False
    raise BudgetExhausted("automorphism search budget exhausted before a verdict")


@lru_cache(maxsize=None)
def trivial_group(degree=1):
    return PermGroup(degree, ())


@lru_cache(maxsize=None)
def symmetric_group(n):
    """S_n on n points, generated by (1 2) and (1 2 ... n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return PermGroup(1, ())
    swap = Perm.from_cycles(n, [[0, 1]])
    if n == 2:
        return PermGroup(2, [swap])
    cycle = Perm.from_cycles(n, [list(range(n))])
    return PermGroup(n, [swap, cycle])


@lru_cache(maxsize=None)
def alternating_group(n):
    """A_n, generated by (1 2 3) and an n- or (n-1)-cycle by parity."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n <= 2:
        return PermGroup(max(n, 1), ())
    three = Perm.from_cycles(n, [[0, 1, 2]])
    if n == 3:
        return PermGroup(3, [three])
    if n % 2 == 1:
        big = Perm.from_cycles(n, [list(range(n))])
    else:
        big = Perm.from_cycles(n, [list(range(1, n))])
    return PermGroup(n, [three, big])


@lru_cache(maxsize=None)
def cyclic_group(n):
    """Z_n in its regular action on n points."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return PermGroup(1, ())
    return PermGroup(n, [Perm.from_cycles(n, [list(range(n))])])


@lru_cache(maxsize=None)
def dihedral_group(n):
    """D_n of order 2n acting on the n vertices of a regular n-gon."""
    if n < 3:
        raise ValueError("dihedral groups need n >= 3 here")
    rot = Perm.from_cycles(n, [list(range(n))])
    ref = Perm([(n - i) % n for i in range(n)])
    return PermGroup(n, [rot, ref])


@lru_cache(maxsize=None)
def klein_four_group():
    """V_4 inside A_4: the two double transpositions generate it."""
    a = Perm.from_cycles(4, [[0, 1], [2, 3]])
    b = Perm.from_cycles(4, [[0, 2], [1, 3]])
    return PermGroup(4, [a, b])
