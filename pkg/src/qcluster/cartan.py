"""Dynkin data, Cartan matrices, multipliers, reduced words of w0, Coxeter moves."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)

_TYPES = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")


def parse_type(spec: str):
    """Parse 'A3', 'G2', 'E8' into (family letter, rank)."""
    spec = spec.strip()
    fam = spec[0].upper()
    if fam not in "ABCDEFG":
        raise ValueError(f"unknown type {spec!r}")
    n = int(spec[1:])
    return fam, n


@dataclass(frozen=True)
class CartanData:
    family: str
    n: int
    nodes: tuple            # node index set, in the paper's numbering
    edges: tuple            # Dynkin diagram adjacency (unordered pairs)
    d: dict = field(compare=False)       # multiplier per node, in {1, 1/2, 1/3}
    a: dict = field(compare=False)       # Cartan matrix entries a[i][j]
    N: int = 0              # length of w0

    @property
    def name(self):
        return f"{self.family}{self.n}"

    def multiplier(self, i) -> Fraction:
        return self.d[i]

    def adjacent(self, i, j) -> bool:
        return (i, j) in self.edges or (j, i) in self.edges

    def braid_order(self, i, j) -> int:
        """Order m of s_i s_j: 1 (i = j), 2, 3, 4 or 6."""
        if i == j:
            return 1
        m = self.a[i][j] * self.a[j][i]
        return {0: 2, 1: 3, 2: 4, 3: 6}[m]

    def involution(self, i):
        return dynkin_involution(self.family, self.n)[i]

    def simple_reflection_matrix(self, i):
        """s_i acting on the root lattice in the simple-root basis (column convention)."""
        n = len(self.nodes)
        idx = {v: t for t, v in enumerate(self.nodes)}
        m = [[Fraction(1) if r == c else Fraction(0) for c in range(n)] for r in range(n)]
        for j in self.nodes:
            # s_i(alpha_j) = alpha_j - a_ij alpha_i
            m[idx[i]][idx[j]] -= self.a[i][j]
        return tuple(tuple(row) for row in m)


def cartan_data(family: str, n: int) -> CartanData:
    family = family.upper()
    if family == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        nodes = tuple(range(1, n + 1))
        edges = tuple((i, i + 1) for i in range(1, n))
        d = {i: Fraction(1) for i in nodes}
        N = n * (n + 1) // 2
    elif family in ("B", "C"):
        if n < 2:
            raise ValueError(f"{family}_n needs n >= 2")
        nodes = tuple(range(1, n + 1))
        edges = tuple((i, i + 1) for i in range(1, n))
        if family == "B":
            d = {i: Fraction(1) for i in nodes}
            d[1] = HALF
        else:
            d = {i: HALF for i in nodes}
            d[1] = Fraction(1)
        N = n * n
    elif family == "D":
        if n < 3:
            raise ValueError("D_n needs n >= 3")
        nodes = (0,) + tuple(range(1, n))
        edges = tuple([(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, n - 1)])
        d = {i: Fraction(1) for i in nodes}
        N = n * (n - 1)
    elif family == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_n only for n in {6,7,8}")
        nodes = (0,) + tuple(range(1, n))
        edges = tuple([(0, 3)] + [(i, i + 1) for i in range(1, n - 1)])
        d = {i: Fraction(1) for i in nodes}
        N = {6: 36, 7: 63, 8: 120}[n]
    elif family == "F":
        if n != 4:
            raise ValueError("F_n only for n = 4")
        nodes = (1, 2, 3, 4)
        edges = ((1, 2), (2, 3), (3, 4))
        d = {1: Fraction(1), 2: Fraction(1), 3: HALF, 4: HALF}
        N = 24
    elif family == "G":
        if n != 2:
            raise ValueError("G_n only for n = 2")
        nodes = (1, 2)
        edges = ((1, 2),)
        d = {1: Fraction(1), 2: THIRD}
        N = 6
    else:
        raise ValueError(f"unknown family {family!r}")

    adj = set(edges) | {(j, i) for i, j in edges}
    a = {i: {} for i in nodes}
    for i in nodes:
        for j in nodes:
            if i == j:
                a[i][j] = 2
            elif (i, j) in adj:
                # single bond -1; pointing from a long root to a shorter one, -d_j/d_i
                v = -max(Fraction(1), d[j] / d[i])
                assert v.denominator == 1
                a[i][j] = int(v)
            else:
                a[i][j] = 0
    cd = CartanData(family, n, nodes, edges, d, a, N)
    for i in nodes:
        for j in nodes:
            assert cd.d[i] * cd.a[i][j] == cd.d[j] * cd.a[j][i]
    return cd


def cartan_from_name(name: str) -> CartanData:
    fam, n = parse_type(name)
    return cartan_data(fam, n)


def dynkin_involution(family: str, n: int) -> dict:
    cd = cartan_data(family, n)
    eta = {i: i for i in cd.nodes}
    if family == "A":
        eta = {i: n + 1 - i for i in cd.nodes}
    elif family == "D" and n % 2 == 1:
        eta[0], eta[1] = 1, 0
    elif family == "E" and n == 6:
        eta = {0: 0, 1: 5, 2: 4, 3: 3, 4: 2, 5: 1}
    for i in cd.nodes:
        assert eta[eta[i]] == i
    return eta


# --- canonical reduced words ------------------------------------------------


def canonical_word_letters(family: str, n: int):
    if family == "A":
        word = []
        for k in range(1, n + 1):
            word.extend(range(k, 0, -1))
        return word
    if family in ("B", "C"):
        word = [1, 2, 1, 2]
        for k in range(3, n + 1):
            word.extend(list(range(k, 0, -1)) + list(range(2, k + 1)))
        return word
    if family == "D":
        word = [0, 1, 2, 0, 1, 2]
        for k in range(3, n):
            word.extend(list(range(k, 1, -1)) + [0] + list(range(1, k + 1)))
        return word
    if family == "E":
        e6 = "3 43 034 230432 12340321 5432103243054321"
        e7 = e6 + " 654320345612345034230123456"
        e8 = e7 + " 765432103243546503423012345676543203456123450342301234567"
        text = {6: e6, 7: e7, 8: e8}[n]
        return [int(c) for c in text.replace(" ", "")]
    if family == "F":
        return [int(c) for c in "323212321432312343213234"]
    if family == "G":
        return [2, 1, 2, 1, 2, 1]
    raise ValueError(family)


@dataclass(frozen=True)
class ReducedWord:
    cartan: CartanData
    word: tuple

    def __post_init__(self):
        if len(self.word) != self.cartan.N:
            raise ValueError(f"word length {len(self.word)} != N = {self.cartan.N}")

    @property
    def letters(self):
        return self.word

    def counts(self) -> dict:
        c = {i: 0 for i in self.cartan.nodes}
        for x in self.word:
            c[x] += 1
        return c

    def n_i(self, i) -> int:
        return self.counts()[i]

    def position(self, i, k) -> int:
        """v(i,k): 1-based position of the k-th occurrence (from the left) of letter i."""
        seen = 0
        for p, x in enumerate(self.word, start=1):
            if x == i:
                seen += 1
                if seen == k:
                    return p
        raise ValueError(f"no {k}-th occurrence of {i}")

    def occurrence(self, pos: int):
        """(i, k) for 1-based position pos: the letter and which occurrence it is."""
        i = self.word[pos - 1]
        k = sum(1 for x in self.word[:pos] if x == i)
        return i, k

    def reversed_word(self) -> "ReducedWord":
        return ReducedWord(self.cartan, tuple(reversed(self.word)))

    def apply_involution(self) -> "ReducedWord":
        eta = dynkin_involution(self.cartan.family, self.cartan.n)
        return ReducedWord(self.cartan, tuple(eta[x] for x in self.word))


def canonical_word(family: str, n: int) -> ReducedWord:
    cd = cartan_data(family, n)
    return ReducedWord(cd, tuple(canonical_word_letters(family, n)))


# --- reduced-word verification via the root system ---------------------------


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n)) for r in range(n)
    )


def _mat_vec(a, v):
    return tuple(sum(a[r][k] * v[k] for k in range(len(v))) for r in range(len(v)))


def is_reduced_word_of_w0(w: ReducedWord) -> bool:
    """Check the word is reduced and multiplies to w0, via the positive-root criterion.

    beta_k = s_{i_1}...s_{i_{k-1}}(alpha_{i_k}) must be N distinct positive roots,
    and the full product must send alpha_i to -alpha_{eta(i)}.
    """
    cd = w.cartan
    idx = {v: t for t, v in enumerate(cd.nodes)}
    refl = {i: cd.simple_reflection_matrix(i) for i in cd.nodes}
    n = len(cd.nodes)
    ident = tuple(tuple(Fraction(1) if r == c else Fraction(0) for c in range(n)) for r in range(n))
    acc = ident
    betas = set()
    for letter in w.word:
        alpha = tuple(Fraction(1) if t == idx[letter] else Fraction(0) for t in range(n))
        beta = _mat_vec(acc, alpha)
        if any(x < 0 for x in beta):
            return False
        if beta in betas:
            return False
        betas.add(beta)
        acc = _mat_mul(acc, refl[letter])
    eta = dynkin_involution(cd.family, cd.n)
    for i in cd.nodes:
        alpha = tuple(Fraction(1) if t == idx[i] else Fraction(0) for t in range(n))
        img = _mat_vec(acc, alpha)
        want = tuple(Fraction(-1) if t == idx[eta[i]] else Fraction(0) for t in range(n))
        if img != want:
            return False
    return True


# --- Coxeter moves -----------------------------------------------------------


@dataclass(frozen=True)
class Move:
    """An elementary rewrite of a reduced word at 0-based position pos.

    kind 'swap' exchanges commuting letters (i, j); kind 'braid' replaces the
    alternating run (i, j, i, ...) of length m by (j, i, j, ...).
    """
    kind: str   # 'swap' | 'braid'
    pos: int
    length: int = 2

    def apply(self, letters):
        letters = list(letters)
        seg = letters[self.pos:self.pos + self.length]
        if self.kind == "swap":
            if len(seg) != 2:
                raise ValueError("swap needs length 2")
            letters[self.pos:self.pos + 2] = [seg[1], seg[0]]
        else:
            i, j = seg[0], seg[1]
            if seg != [i, j] * (self.length // 2) + ([i] if self.length % 2 else []):
                raise ValueError(f"not an alternating run at {self.pos}")
            new = [j, i] * (self.length // 2) + ([j] if self.length % 2 else [])
            letters[self.pos:self.pos + self.length] = new
        return tuple(letters)


def available_moves(cd: CartanData, letters):
    for p in range(len(letters) - 1):
        i, j = letters[p], letters[p + 1]
        if i == j:
            continue
        m = cd.braid_order(i, j)
        if m == 2:
            yield Move("swap", p)
        elif p + m <= len(letters):
            ok = all(letters[p + t] == (i if t % 2 == 0 else j) for t in range(m))
            if ok:
                yield Move("braid", p, m)


def replay_moves(cd: CartanData, letters, moves):
    cur = tuple(letters)
    for mv in moves:
        cur = mv.apply(cur)
    return cur


def _cf_normal(cd: CartanData, letters):
    """Cartier-Foata style lex-least representative of the commutation class."""
    remaining = list(letters)
    out = []
    while remaining:
        best = None
        for p, x in enumerate(remaining):
            if all(cd.braid_order(remaining[t], x) == 2 and remaining[t] != x
                   for t in range(p)):
                if best is None or x < remaining[best]:
                    best = p
        out.append(remaining.pop(best))
    return tuple(out)


def _swap_path(cd: CartanData, src, dst):
    """Swap moves turning src into dst (same commutation class), by bubbling.

    Occurrences are matched by (letter, count); non-commuting letters keep
    their relative order inside a class, so bubbling never blocks.
    """
    src = list(src)
    moves = []
    for t in range(len(dst)):
        letter = dst[t]
        k = sum(1 for x in dst[:t + 1] if x == letter)
        seen = 0
        pos = None
        for p in range(t, len(src)):
            if src[p] == letter:
                seen += 1
                if seen + sum(1 for x in src[:t] if x == letter) == k:
                    pos = p
                    break
        if pos is None:
            raise ValueError("words not swap-equivalent")
        for p in range(pos, t, -1):
            other = src[p - 1]
            if other == letter or cd.braid_order(other, letter) != 2:
                raise ValueError("words not swap-equivalent")
            src[p - 1], src[p] = src[p], src[p - 1]
            moves.append(Move("swap", p - 1))
    if tuple(src) != tuple(dst):
        raise ValueError("words not swap-equivalent")
    return moves


def _dependency_order(cd: CartanData, letters):
    """Reachability bitmasks of the trace partial order (positions 0..N-1)."""
    n = len(letters)
    reach = [0] * n
    for p in range(n - 1, -1, -1):
        mask = 0
        for q in range(p + 1, n):
            if not (mask >> q) & 1:
                if letters[p] == letters[q] or cd.braid_order(letters[p], letters[q]) != 2:
                    mask |= (1 << q) | reach[q]
        reach[p] = mask
    return reach


def _class_braid_moves(cd: CartanData, letters):
    """Braid moves available somewhere in the commutation class.

    Yields (representative word, Move) pairs; the representative realizes the
    alternating run consecutively at the position recorded in the Move.
    """
    n = len(letters)
    reach = _dependency_order(cd, letters)
    pairs = {}
    for p, x in enumerate(letters):
        pairs.setdefault(x, []).append(p)
    letterset = sorted(pairs)
    for ti, ii in enumerate(letterset):
        for jj in letterset:
            if jj <= ii:
                continue
            m = cd.braid_order(ii, jj)
            if m == 2:
                continue
            merged = sorted(pairs[ii] + pairs[jj])
            for t in range(len(merged) - m + 1):
                chain = merged[t:t + m]
                seq = [letters[p] for p in chain]
                alt_i = [ii if r % 2 == 0 else jj for r in range(m)]
                alt_j = [jj if r % 2 == 0 else ii for r in range(m)]
                if seq != alt_i and seq != alt_j:
                    continue
                lo, hi = chain[0], chain[-1]
                between = reach[lo]
                chain_set = set(chain)
                blocked = False
                for z in range(n):
                    if z in chain_set or not (between >> z) & 1:
                        continue
                    if (reach[z] >> hi) & 1:
                        blocked = True
                        break
                if blocked:
                    continue
                before = [p for p in range(n)
                          if p not in chain_set and any((reach[p] >> c) & 1 for c in chain)]
                after = [p for p in range(n) if p not in chain_set and p not in before]
                rep = tuple(letters[p] for p in before) + tuple(seq)                     + tuple(letters[p] for p in after)
                yield rep, Move("braid", len(before), m)


def coxeter_moves(w: ReducedWord, w2: ReducedWord, cap=200000, minimal=True):
    """A sequence of Moves transforming w into w2.

    With minimal=True, BFS over commutation classes finds a braid-minimal
    path (swap moves are free); the constructive left-descent recursion is
    the fallback when the class graph exceeds cap.
    """
    cd = w.cartan
    if w.cartan.name != w2.cartan.name:
        raise ValueError("words over different Cartan data")
    if len(w.word) != len(w2.word):
        raise ValueError("words of different lengths")

    start, goal = w.word, w2.word
    key_start = _cf_normal(cd, start)
    key_goal = _cf_normal(cd, goal)
    if key_start == key_goal:
        return _swap_path(cd, start, goal)
    if not minimal:
        return _constructive_moves(cd, start, goal)

    seen = {key_start: (start, None, None)}
    queue = deque([key_start])
    explored = 0
    while queue:
        key = queue.popleft()
        concrete = seen[key][0]
        for rep, mv in _class_braid_moves(cd, concrete):
            explored += 1
            if explored > cap:
                return _constructive_moves(cd, start, goal)
            nxt = mv.apply(rep)
            nkey = _cf_normal(cd, nxt)
            if nkey in seen:
                continue
            seen[nkey] = (nxt, key, (rep, mv))
            if nkey == key_goal:
                chain = []
                node = nkey
                while seen[node][1] is not None:
                    _, parent, (inst, mv2) = seen[node]
                    chain.append((inst, mv2))
                    node = parent
                chain.reverse()
                moves = []
                cur_word = start
                for inst, mv2 in chain:
                    moves.extend(_swap_path(cd, cur_word, inst))
                    moves.append(mv2)
                    cur_word = mv2.apply(inst)
                moves.extend(_swap_path(cd, cur_word, goal))
                return moves
            queue.append(nkey)
    raise ValueError("words not connected by Coxeter moves")


def _constructive_moves(cd: CartanData, start, goal):
    """Non-minimal move path via the classical left-descent recursion."""
    moves = []
    cur = list(start)

    def make_first(offset, t):
        if cur[offset] == t:
            return
        a = cur[offset]
        m = cd.braid_order(a, t)
        if m == 2:
            make_first(offset + 1, t)
            cur[offset:offset + 2] = [cur[offset + 1], cur[offset]]
            moves.append(Move("swap", offset))
            return
        make_first(offset + 1, t)
        for r in range(2, m):
            c = a if r % 2 == 0 else t
            make_first(offset + r, c)
        seg = cur[offset:offset + m]
        assert seg == [a if r % 2 == 0 else t for r in range(m)], seg
        cur[offset:offset + m] = [t if r % 2 == 0 else a for r in range(m)]
        moves.append(Move("braid", offset, m))

    for p, target in enumerate(goal):
        make_first(p, target)
    assert tuple(cur) == tuple(goal)
    return moves


def random_word(cd: CartanData, rng, steps=40):
    """Random reduced word of w0 obtained by random moves from the canonical word."""
    cur = tuple(canonical_word_letters(cd.family, cd.n))
    for _ in range(steps):
        moves = list(available_moves(cd, cur))
        if not moves:
            break
        cur = rng.choice(moves).apply(cur)
    return ReducedWord(cd, cur)
