"""Small finite groups: concrete closure, fingerprints, and a named catalogue.

A group is closed from generators under a caller-supplied multiplication and
stored as a dense Cayley table.  Groups are told apart by a fingerprint
(order, element-order histogram, |Z|, |G'|, abelianization), which is enough
for the few dozen groups that show up as automorphism groups of surfaces.
"""

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import gcd
from pathlib import Path

from .arith import factorize, lcm

MAX_ORDER = 2000


class GroupTooLarge(ValueError):
    pass


# ------------------------------------------------------------------ concrete


@dataclass
class ConcreteGroup:
    elements: list
    table: list  # table[i][j] = index of elements[i] * elements[j]
    identity: int
    generators: tuple  # indices

    @property
    def order(self):
        return len(self.elements)

    def index(self, x):
        return self._index[x]

    def __contains__(self, x):
        return x in self._index

    def __post_init__(self):
        self._index = {x: i for i, x in enumerate(self.elements)}

    def mul(self, i, j):
        return self.table[i][j]

    def inverse(self, i):
        row = self.table[i]
        for j in range(self.order):
            if row[j] == self.identity:
                return j
        raise AssertionError("missing inverse")

    def element_order(self, i):
        k, x = 1, i
        while x != self.identity:
            x = self.table[x][i]
            k += 1
        return k

    def subgroup_closure(self, seeds):
        """Indices of the subgroup generated by ``seeds``."""
        seen = {self.identity}
        frontier = [self.identity]
        seeds = list(seeds)
        while frontier:
            nxt = []
            for x in frontier:
                for s in seeds:
                    y = self.table[x][s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen


def close_generators(gens, mul, identity, bound=MAX_ORDER):
    """Close ``gens`` under ``mul`` (finite groups: the monoid they generate is the group)."""
    if bound > MAX_ORDER:
        raise ValueError(f"bound {bound} exceeds {MAX_ORDER}")
    gens = [g for g in gens if g != identity]
    gens = list(dict.fromkeys(gens))
    elements = [identity]
    index = {identity: 0}
    parent = [None]  # (parent index, generator number) per element
    right = [[None] for _ in gens]  # right[k][i] = index(elements[i] * gens[k])
    i = 0
    while i < len(elements):
        x = elements[i]
        for k, g in enumerate(gens):
            y = mul(x, g)
            j = index.get(y)
            if j is None:
                if len(elements) >= bound:
                    raise GroupTooLarge(f"closure exceeds {bound} elements")
                j = len(elements)
                index[y] = j
                elements.append(y)
                parent.append((i, k))
                for r in right:
                    r.append(None)
            right[k][i] = j
        i += 1
    n = len(elements)
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        row = table[a]
        row[0] = a
        for j in range(1, n):
            pj, k = parent[j]
            row[j] = right[k][row[pj]]
    gen_idx = tuple(index[g] for g in gens)
    return ConcreteGroup(elements, table, 0, gen_idx)


# --------------------------------------------------------------- fingerprint


@dataclass(frozen=True, order=True)
class GroupFingerprint:
    order: int
    histogram: tuple  # ((element order, count), ...)
    center: int
    derived: int
    abelianization: tuple  # invariant factors d1 | d2 | ..., all > 1

    def __post_init__(self):
        if sum(c for _, c in self.histogram) != self.order:
            raise ValueError("histogram does not sum to the order")
        if self.order % self.center or self.order % self.derived:
            raise ValueError("center and derived orders must divide the order")

    def render(self):
        hist = ",".join(f"{o}:{c}" for o, c in self.histogram)
        ab = ",".join(map(str, self.abelianization)) or "-"
        return f"{self.order} {hist} {self.center} {self.derived} {ab}"

    @classmethod
    def parse(cls, text):
        order, hist, center, derived, ab = text.split()
        histogram = tuple(tuple(int(x) for x in kv.split(":")) for kv in hist.split(","))
        abel = () if ab == "-" else tuple(int(x) for x in ab.split(","))
        return cls(int(order), histogram, int(center), int(derived), abel)

    @property
    def is_cyclic(self):
        return any(o == self.order for o, _ in self.histogram)

    @property
    def is_abelian(self):
        return self.center == self.order


def derived_subgroup(G):
    gens = G.generators
    inv = {g: G.inverse(g) for g in gens}
    comms = set()
    for a in gens:
        for b in gens:
            c = G.mul(G.mul(a, b), G.mul(inv[a], inv[b]))
            comms.add(c)
    # normal closure: keep adding conjugates by generators until stable
    H = G.subgroup_closure(comms)
    while True:
        new = set()
        for h in H:
            for g in gens:
                c = G.mul(G.mul(g, h), inv[g])
                if c not in H:
                    new.add(c)
        if not new:
            return H
        H = G.subgroup_closure(H | new)


def _abelian_invariants(orders_by_rep, n):
    """Invariant factors of an abelian group from its element orders (one per element)."""
    if n == 1:
        return ()
    parts = {}
    for p, e in factorize(n).factors:
        # count_k = #{x : x^(p^k) = 1} = p^(sum_i min(k, e_i))
        sums = []
        for k in range(e + 1):
            c = sum(1 for o in orders_by_rep if (p ** k) % _p_part(o, p) == 0)
            s = 0
            while c % p == 0 and c > 1:
                c //= p
                s += 1
            sums.append(s)
        # number of cyclic factors of exponent >= k is sums[k] - sums[k-1]
        ge = [sums[k] - sums[k - 1] for k in range(1, e + 1)] + [0]
        exps = []
        for k in range(1, e + 1):
            exps.extend([k] * (ge[k - 1] - ge[k]))
        parts[p] = sorted(exps, reverse=True)
    width = max(len(v) for v in parts.values())
    factors = []
    for i in range(width):
        d = 1
        for p, exps in parts.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    return tuple(sorted(factors))


def _p_part(x, p):
    out = 1
    while x % p == 0:
        x //= p
        out *= p
    return out


def fingerprint(G):
    n = G.order
    orders = [G.element_order(i) for i in range(n)]
    hist = {}
    for o in orders:
        hist[o] = hist.get(o, 0) + 1
    center = sum(1 for z in range(n) if all(G.mul(z, g) == G.mul(g, z) for g in G.generators))
    D = derived_subgroup(G)
    # abelianization: order of each coset xD in G/D
    seen = set()
    coset_orders = []
    for x in range(n):
        if x in seen:
            continue
        coset = {G.mul(x, h) for h in D}
        seen |= coset
        k, y = 1, x
        while y not in D:
            y = G.mul(y, x)
            k += 1
        coset_orders.append(k)
    ab = _abelian_invariants(coset_orders, n // len(D))
    return GroupFingerprint(n, tuple(sorted(hist.items())), center, len(D), ab)


def product_fingerprint(a, b):
    """Fingerprint of a direct product, computed from the factors' fingerprints."""
    hist = {}
    for o1, c1 in a.histogram:
        for o2, c2 in b.histogram:
            o = lcm(o1, o2)
            hist[o] = hist.get(o, 0) + c1 * c2
    ab = _merge_invariants(a.abelianization + b.abelianization)
    return GroupFingerprint(
        a.order * b.order, tuple(sorted(hist.items())), a.center * b.center, a.derived * b.derived, ab
    )


def _merge_invariants(factors):
    parts = {}
    for d in factors:
        for p, e in factorize(d).factors:
            parts.setdefault(p, []).append(e)
    width = max((len(v) for v in parts.values()), default=0)
    for v in parts.values():
        v.sort(reverse=True)
    out = []
    for i in range(width):
        d = 1
        for p, exps in parts.items():
            if i < len(exps):
                d *= p ** exps[i]
        out.append(d)
    return tuple(sorted(out))


# ---------------------------------------------------------------- identities


@dataclass(frozen=True, order=True)
class FiniteGroupId:
    tag: str
    args: tuple = ()

    def name(self):
        if self.tag == "Cyclic":
            return f"Cyclic({self.args[0]})"
        if self.tag == "Product":
            return "Product(" + ", ".join(x.name() for x in self.args) + ")"
        if self.tag == "Unknown":
            return f"Unknown({self.args[0]})"
        return self.tag

    def pretty(self):
        if self.tag == "Cyclic":
            return f"Z/{self.args[0]}Z"
        if self.tag == "Product":
            return " x ".join(x.pretty() for x in self.args)
        return _PRETTY.get(self.tag, self.name())

    @property
    def order(self):
        if self.tag == "Cyclic":
            return self.args[0]
        if self.tag == "Product":
            out = 1
            for x in self.args:
                out *= x.order
            return out
        if self.tag == "Unknown":
            fp = self.args[0]
            return fp.order if isinstance(fp, GroupFingerprint) else None
        return CATALOGUE_ORDERS[self.tag]

    def __str__(self):
        return self.name()


_PRETTY = {
    "Klein": "Z/2Z x Z/2Z",
    "Tstar": "T*",
    "Ostar": "O*",
    "Istar": "I*",
    "DihedralOrder8": "D4",
    "DihedralOrder12": "D6",
    "GL2F3": "GL2(F3)",
    "SL2F9": "SL2(F9)",
    "SL2F3xSym3": "SL2(F3) x Sym3",
    "TwoMinus1Plus4Alt5": "2_-^{1+4}.Alt5",
    "Z3SL2F3dot2": "Z/3Z : (SL2(F3).2)",
    "SL2F5dot2": "SL2(F5).2",
    "SL2F5colon2": "SL2(F5):2",
    "WreathSL2F3": "SL2(F3) wr Sym2",
    "WreathDic12": "Dic12 wr Sym2",
    "Z4xSym3": "Z/4Z x Sym3",
    "TstarXZ3": "T* x Z/3Z",
    "Dic12SemiZ6": "Dic12 : Z/6Z",
    "TstarSemiZ4": "T* : Z/4Z",
}

CATALOGUE_ORDERS = {
    "Klein": 4,
    "Q8": 8,
    "Dic12": 12,
    "Dic16": 16,
    "Dic20": 20,
    "Dic24": 24,
    "Tstar": 24,
    "Ostar": 48,
    "Istar": 120,
    "DihedralOrder8": 8,
    "DihedralOrder12": 12,
    "GL2F3": 48,
    "SL2F3xSym3": 144,
    "TwoMinus1Plus4Alt5": 1920,
    "SL2F9": 720,
    "Z3SL2F3dot2": 144,
    "SL2F5dot2": 240,
    "SL2F5colon2": 240,
    "WreathSL2F3": 1152,
    "WreathDic12": 288,
    "Z4xSym3": 24,
    "TstarXZ3": 72,
    "Dic12SemiZ6": 72,
    "TstarSemiZ4": 96,
}


def cyclic_id(k):
    if k < 1:
        raise ValueError("cyclic group order must be positive")
    return FiniteGroupId("Cyclic", (k,))


def named_id(tag):
    if tag not in CATALOGUE_ORDERS:
        raise ValueError(f"unknown catalogue group {tag!r}")
    return FiniteGroupId(tag)


def product_id(a, b):
    """Direct product, with the factors in a fixed order; Z/2 x Z/2 is Klein."""
    if a == cyclic_id(2) and b == cyclic_id(2):
        return named_id("Klein")
    if a.tag == "Cyclic" and b.tag == "Cyclic" and gcd(a.args[0], b.args[0]) == 1:
        return cyclic_id(a.args[0] * b.args[0])
    x, y = sorted((a, b), key=lambda g: (g.order, g.name()))
    return FiniteGroupId("Product", (x, y))


def parse_id(text):
    t = text.strip()
    if t.startswith("Cyclic(") and t.endswith(")"):
        return cyclic_id(int(t[7:-1]))
    if t.startswith("Z") and t[1:].isdigit():
        return cyclic_id(int(t[1:]))
    if t.startswith("Product(") and t.endswith(")"):
        inner = t[8:-1]
        depth = 0
        for i, ch in enumerate(inner):
            depth += ch == "("
            depth -= ch == ")"
            if ch == "," and depth == 0:
                return product_id(parse_id(inner[:i]), parse_id(inner[i + 1 :]))
        raise ValueError(f"cannot parse {text!r}")
    return named_id(t)


# -------------------------------------------------------------- constructions


def _cyclic(k):
    return close_generators([1 % k], lambda x, y: (x + y) % k, 0)


def _dicyclic(m):
    """Order 2m, m even: a^m = 1, b^2 = a^(m/2), b a b^-1 = a^-1."""
    k = m // 2

    def mul(x, y):
        (i1, j1), (i2, j2) = x, y
        if j1 == 0:
            return ((i1 + i2) % m, j2)
        i, j = i1 - i2, 1 + j2
        if j == 2:
            i, j = i + k, 0
        return (i % m, j)

    return close_generators([(1, 0), (0, 1)], mul, (0, 0))


def _dihedral(n):
    """Order 2n: rotations a, reflection b."""

    def mul(x, y):
        (i1, j1), (i2, j2) = x, y
        if j1 == 0:
            return ((i1 + i2) % n, j2)
        return ((i1 - i2) % n, (1 + j2) % 2)

    return close_generators([(1, 0), (0, 1)], mul, (0, 0))


class _FiniteField:
    """F_p or F_9 = F_3[x]/(x^2 + 1); elements are ints (prime field) or pairs."""

    def __init__(self, p, deg=1):
        self.p, self.deg = p, deg
        if deg == 1:
            self.elements = list(range(p))
        else:
            self.elements = [(a, b) for a in range(p) for b in range(p)]
        self.zero = 0 if deg == 1 else (0, 0)
        self.one = 1 if deg == 1 else (1, 0)

    def add(self, x, y):
        if self.deg == 1:
            return (x + y) % self.p
        return ((x[0] + y[0]) % self.p, (x[1] + y[1]) % self.p)

    def sub(self, x, y):
        if self.deg == 1:
            return (x - y) % self.p
        return ((x[0] - y[0]) % self.p, (x[1] - y[1]) % self.p)

    def mul(self, x, y):
        if self.deg == 1:
            return x * y % self.p
        # (a + b i)(c + d i) with i^2 = -1
        a, b = x
        c, d = y
        return ((a * c - b * d) % self.p, (a * d + b * c) % self.p)


def _matrix_group(Fq, special):
    def mmul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        A, M = Fq.add, Fq.mul
        return (A(M(a, e), M(b, g)), A(M(a, f), M(b, h)), A(M(c, e), M(d, g)), A(M(c, f), M(d, h)))

    mats = []
    for a, b, c, d in iproduct(Fq.elements, repeat=4):
        det = Fq.sub(Fq.mul(a, d), Fq.mul(b, c))
        if det == Fq.zero:
            continue
        if special and det != Fq.one:
            continue
        mats.append((a, b, c, d))
    ident = (Fq.one, Fq.zero, Fq.zero, Fq.one)
    # greedy generating set: keep a matrix only if the current closure misses it
    gens = []
    have = {ident}
    for x in mats:
        if x not in have:
            gens.append(x)
            have = set(close_generators(gens, mmul, ident).elements)
    return close_generators(gens, mmul, ident)


def _sym(n):
    gens = [tuple(range(1, n)) + (0,), (1, 0) + tuple(range(2, n))]

    def mul(x, y):  # apply y then x
        return tuple(x[y[i]] for i in range(n))

    return close_generators(gens, mul, tuple(range(n)))


def direct_product(G, H):
    gens = [(g, H.identity) for g in G.generators] + [(G.identity, h) for h in H.generators]

    def mul(x, y):
        return (G.mul(x[0], y[0]), H.mul(x[1], y[1]))

    return close_generators(gens, mul, (G.identity, H.identity))


def wreath_two(G):
    """G wr Sym2 = (G x G) : <swap>."""

    def mul(x, y):
        a1, b1, s1 = x
        a2, b2, s2 = y
        if s1:
            a2, b2 = b2, a2
        return (G.mul(a1, a2), G.mul(b1, b2), s1 ^ s2)

    e = G.identity
    gens = [(g, e, 0) for g in G.generators] + [(e, e, 1)]
    return close_generators(gens, mul, (e, e, 0))


# Clifford algebra with e_k^2 = eps; blades are bitmasks.  Pin lifts of
# transpositions give the two double covers of a symmetric group.


def _blade_sign(a, b, eps, n):
    s = 0
    x = a >> 1
    while x:
        s += bin(x & b).count("1")
        x >>= 1
    sign = -1 if s % 2 else 1
    common = a & b
    if eps == -1 and bin(common).count("1") % 2:
        sign = -sign
    return sign


def _pin_group(n, eps):
    """Double cover of Sym(n) inside Pin(n): the lift of (i i+1) is (e_i - e_{i+1})/sqrt 2.

    Elements are (k, coeffs) meaning coeffs / sqrt(2)^k with k in {0, 1}.
    """

    def cmul(x, y):
        kx, cx = x
        ky, cy = y
        out = {}
        for a, u in cx:
            for b, v in cy:
                m = a ^ b
                out[m] = out.get(m, 0) + _blade_sign(a, b, eps, n) * u * v
        k = kx + ky
        scale = Fraction(1)
        if k >= 2:
            k -= 2
            scale = Fraction(1, 2)
        return (k, tuple(sorted((m, c * scale) for m, c in out.items() if c)))

    gens = []
    for i in range(n - 1):
        gens.append((1, tuple(sorted(((1 << i, Fraction(1)), (1 << (i + 1), Fraction(-1)))))))
    return close_generators(gens, cmul, (0, ((0, Fraction(1)),)))


class _Gauss:
    """2x2 matrices over Q(i), entries stored as (re, im) Fractions."""

    @staticmethod
    def mul(x, y):
        def cm(p, q):
            return (p[0] * q[0] - p[1] * q[1], p[0] * q[1] + p[1] * q[0])

        def ca(p, q):
            return (p[0] + q[0], p[1] + q[1])

        a, b, c, d = x
        e, f, g, h = y
        return (ca(cm(a, e), cm(b, g)), ca(cm(a, f), cm(b, h)), ca(cm(c, e), cm(d, g)), ca(cm(c, f), cm(d, h)))


def _tstar_semi_z4():
    h = Fraction(1, 2)
    z, o = Fraction(0), Fraction(1)

    def c(re, im=0):
        return (Fraction(re), Fraction(im))

    # quaternions i -> diag(i, -i), j -> [[0, 1], [-1, 0]]
    qi = (c(0, 1), c(0), c(0), c(0, -1))
    qj = (c(0), c(1), c(-1), c(0))
    # (1 + i + j + ij)/2
    w = ((h, h), (h, h), (-h, h), (h, -h))
    scal = (c(0, 1), c(0), c(0), c(0, 1))
    # (1 + sqrt(-1)) (1 + i)/2 normalizes T* and squares into T* x <sqrt(-1)>
    x = ((z, o), c(0), c(0), (o, z))
    ident = (c(1), c(0), c(0), c(1))
    return close_generators([qi, qj, w, scal, x], _Gauss.mul, ident)


def _construct(tag):
    if tag == "Klein":
        return direct_product(_cyclic(2), _cyclic(2))
    if tag == "Q8":
        return _dicyclic(4)
    if tag in ("Dic12", "Dic16", "Dic20", "Dic24"):
        return _dicyclic(int(tag[3:]) // 2)
    if tag in ("Tstar",):
        return _matrix_group(_FiniteField(3), True)
    if tag == "Istar":
        return _matrix_group(_FiniteField(5), True)
    if tag == "Ostar":
        return _pin_group(4, -1)
    if tag == "GL2F3":
        return _matrix_group(_FiniteField(3), False)
    if tag == "SL2F9":
        return _matrix_group(_FiniteField(3, 2), True)
    if tag == "DihedralOrder8":
        return _dihedral(4)
    if tag == "DihedralOrder12":
        return _dihedral(6)
    if tag == "Z4xSym3":
        return direct_product(_cyclic(4), _sym(3))
    if tag == "TstarXZ3":
        return direct_product(_construct("Tstar"), _cyclic(3))
    if tag == "SL2F3xSym3":
        return direct_product(_construct("Tstar"), _sym(3))
    if tag == "Dic12SemiZ6":
        return wreath_two(_cyclic(6))
    if tag == "TstarSemiZ4":
        return _tstar_semi_z4()
    if tag == "WreathSL2F3":
        return wreath_two(_construct("Tstar"))
    if tag == "WreathDic12":
        return wreath_two(_dicyclic(6))
    if tag in ("SL2F5dot2", "SL2F5colon2"):
        return _sl2f5_extension(split=(tag == "SL2F5colon2"))
    raise KeyError(tag)


def _sl2f5_extension(split):
    for eps in (1, -1):
        G = _pin_group(5, eps)
        if _has_involution_outside_derived(G) == split:
            return G
    raise AssertionError("neither double cover of Sym5 matched")


def _has_involution_outside_derived(G):
    D = derived_subgroup(G)
    return any(G.element_order(i) == 2 and i not in D for i in range(G.order))


# groups that take part in rule-based tables only: no construction is attempted
RULE_ONLY = ("TwoMinus1Plus4Alt5", "Z3SL2F3dot2")

CONSTRUCTIBLE = tuple(t for t in CATALOGUE_ORDERS if t not in RULE_ONLY)


def construct(tag):
    """Concrete model of a catalogue group (cyclic groups via ``Cyclic(k)``)."""
    gid = parse_id(tag) if isinstance(tag, str) else tag
    if gid.tag == "Cyclic":
        return _cyclic(gid.args[0])
    if gid.tag == "Product":
        return direct_product(construct(gid.args[0]), construct(gid.args[1]))
    if gid.tag in RULE_ONLY:
        raise KeyError(f"{gid.tag} has no concrete construction")
    return _construct(gid.tag)


# ------------------------------------------------------------ golden catalogue


GOLDEN_FINGERPRINTS = "golden_fingerprints.txt"


def golden_dir():
    # an override directory without its own fingerprints falls back to the packaged ones
    env = os.environ.get("WEILSURF_GOLDEN_DIR")
    if env and (Path(env) / GOLDEN_FINGERPRINTS).exists():
        return Path(env)
    return Path(__file__).with_name("data")


def load_golden_fingerprints(path=None):
    path = Path(path) if path else golden_dir() / GOLDEN_FINGERPRINTS
    out = {}
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tag, rest = line.split(None, 1)
        out[tag] = GroupFingerprint.parse(rest)
    return out


def render_golden_fingerprints(fps):
    lines = ["# tag order histogram center derived abelianization"]
    for tag in sorted(fps):
        lines.append(f"{tag} {fps[tag].render()}")
    return "\n".join(lines) + "\n"


def compute_catalogue_fingerprints():
    fps = {tag: fingerprint(construct(tag)) for tag in CONSTRUCTIBLE}
    seen = {}
    for tag, fp in fps.items():
        if fp in seen:
            raise AssertionError(f"fingerprint collision: {tag} and {seen[fp]}")
        seen[fp] = tag
    return fps


_GOLDEN_CACHE = {}


def _golden():
    key = str(golden_dir())
    if key not in _GOLDEN_CACHE:
        _GOLDEN_CACHE[key] = load_golden_fingerprints()
    return _GOLDEN_CACHE[key]


def reference_fingerprint(gid):
    if gid.tag == "Cyclic":
        return fingerprint(_cyclic(gid.args[0]))
    if gid.tag == "Product":
        return product_fingerprint(reference_fingerprint(gid.args[0]), reference_fingerprint(gid.args[1]))
    if gid.tag == "Unknown":
        return gid.args[0]
    return _golden()[gid.tag]


def identify(fp, products_of=()):
    """Catalogue name for a fingerprint; ``products_of`` lists extra direct products to try."""
    if isinstance(fp, ConcreteGroup):
        fp = fingerprint(fp)
    if fp.is_cyclic:
        return cyclic_id(fp.order)
    for tag, ref in _golden().items():
        if ref == fp:
            return named_id(tag)
    for a, b in products_of:
        if product_fingerprint(reference_fingerprint(a), reference_fingerprint(b)) == fp:
            return product_id(a, b)
    return FiniteGroupId("Unknown", (fp,))


def subgroup_ids(G, candidates):
    """Which candidate catalogue groups occur as subgroups generated by at most two elements."""
    found = set()
    want = {c: reference_fingerprint(c) for c in candidates}
    orders = {c.order for c in candidates}
    seen = set()
    n = G.order
    for x in range(n):
        for y in range(x, n):
            H = frozenset(G.subgroup_closure([x, y]))
            if len(H) not in orders or H in seen:
                continue
            seen.add(H)
            sub = restrict(G, H)
            fp = fingerprint(sub)
            for c, ref in want.items():
                if ref == fp:
                    found.add(c)
    return found


def restrict(G, H):
    """Subgroup on the index set H as a ConcreteGroup of its own."""
    idx = sorted(H)
    pos = {x: i for i, x in enumerate(idx)}
    table = [[pos[G.mul(a, b)] for b in idx] for a in idx]
    return ConcreteGroup([G.elements[i] for i in idx], table, pos[G.identity], tuple(range(len(idx))))
