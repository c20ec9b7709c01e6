"""Independent oracle for the abelian invariants of the lattice subgroups.

Plain-Python coset enumeration (HLT, no lookahead), Reidemeister-Schreier
rewriting and Smith normal form, sharing no code with the C++ library.
Prints the invariants that tests/test_fpgroup.cpp freezes.
"""

import re

GENS = "zb"
RELS = [
    "z^7", "(b^-2z)^3", "(b^2z^-2b^2z^2)^3", "(b^2z^-2b^2z^4)^3",
    "b^3z^-2b^-1z^2b^-2z", "b^3zb^3z^3bz^2b^-1z^-1",
    "b^3z^2b^2z^-2b^-1z^-1b^-3zb^-1z^-1",
]
SUB_X = ["b^3", "zb^3z", "bz^2b^-1z"]


def parse(text):
    """Word as a list of +-(g+1)."""
    out, stack = [], [[]]
    i = 0
    while i < len(text):
        c = text[i]
        if c == "(":
            stack.append([])
            i += 1
            continue
        if c == ")":
            group = stack.pop()
            i += 1
            m = re.match(r"\^(-?\d+)", text[i:])
            e = 1
            if m:
                e = int(m.group(1))
                i += len(m.group(0))
            stack[-1].extend(power(group, e))
            continue
        g = GENS.index(c) + 1
        i += 1
        m = re.match(r"\^(-?\d+)", text[i:])
        e = 1
        if m:
            e = int(m.group(1))
            i += len(m.group(0))
        stack[-1].extend(power([g], e))
    return reduce_word(stack[0])


def inverse(w):
    return [-x for x in reversed(w)]


def power(w, e):
    base = w if e > 0 else inverse(w)
    return base * abs(e)


def reduce_word(w):
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def col(x):
    return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1


def enumerate_cosets(ngens, rels, subgens):
    """Textbook HLT. Returns table[c][col]."""
    ncol = 2 * ngens
    table = [[None] * ncol]
    parent = [0]

    def rep(k):
        while parent[k] != k:
            k = parent[k]
        return k

    def coincidence(a, b):
        queue = []

        def merge(k, l):
            k, l = rep(k), rep(l)
            if k != l:
                lo, hi = min(k, l), max(k, l)
                parent[hi] = lo
                queue.append(hi)

        merge(a, b)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(ncol):
                d = table[g][x]
                if d is None:
                    continue
                table[d][x ^ 1] = None
                mu, nu = rep(g), rep(d)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x])
                elif table[nu][x ^ 1] is not None:
                    merge(mu, table[nu][x ^ 1])
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def define(c, x):
        d = len(table)
        table.append([None] * ncol)
        parent.append(d)
        table[c][x] = d
        table[d][x ^ 1] = c

    def scan_fill(a, w):
        cols = [col(x) for x in w]
        f, b, i, j = a, a, 0, len(cols) - 1
        while True:
            while i <= j and table[f][cols[i]] is not None:
                f = table[f][cols[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][cols[j] ^ 1] is not None:
                b = table[b][cols[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][cols[i]] = b
                table[b][cols[i] ^ 1] = f
                return
            define(f, cols[i])

    for w in subgens:
        scan_fill(0, w)
    a = 0
    while a < len(table):
        if parent[a] == a:
            for r in rels:
                if parent[a] != a:
                    break
                scan_fill(a, r)
            if parent[a] == a:
                for x in range(ncol):
                    if table[a][x] is None:
                        define(a, x)
        a += 1
    live = [c for c in range(len(table)) if parent[c] == c]
    index = {c: i for i, c in enumerate(live)}
    return [[index[rep(table[c][x])] for x in range(ncol)] for c in live]


def schreier(table, ngens, rels):
    n = len(table)
    reps = {0: []}
    tree = set()
    queue = [0]
    for c in queue:
        for x in range(2 * ngens):
            d = table[c][x]
            if d in reps:
                continue
            g = x // 2
            if x % 2 == 0:
                reps[d] = reps[c] + [g + 1]
                tree.add((c, g))
            else:
                reps[d] = reps[c] + [-(g + 1)]
                tree.add((d, g))
            queue.append(d)
    gen_id = {}
    words = []
    for c in range(n):
        for g in range(ngens):
            if (c, g) not in tree:
                gen_id[(c, g)] = len(words)
                d = table[c][2 * g]
                words.append(reduce_word(reps[c] + [g + 1] + inverse(reps[d])))

    def rewrite(c, w):
        out = []
        for x in w:
            if x > 0:
                g = x - 1
                if (c, g) in gen_id:
                    out.append(gen_id[(c, g)] + 1)
                c = table[c][2 * g]
            else:
                g = -x - 1
                d = table[c][2 * g + 1]
                if (d, g) in gen_id:
                    out.append(-(gen_id[(d, g)] + 1))
                c = d
        return out, c

    relators = [rewrite(c, r)[0] for c in range(n) for r in rels]
    return words, relators


def smith_diagonal(rows, ncols):
    a = [r[:] for r in rows if any(r)]
    diag = []
    t = 0
    while a:
        best = None
        for i, r in enumerate(a):
            for j, v in enumerate(r):
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[0], a[i] = a[i], a[0]
        for r in a:
            r[0], r[j] = r[j], r[0]
        while True:
            p = a[0][0]
            done = True
            for r in a[1:]:
                q = r[0] // p
                if q:
                    for k in range(len(r)):
                        r[k] -= q * a[0][k]
                if r[0]:
                    done = False
            for k in range(1, len(a[0])):
                q = a[0][k] // p
                if q:
                    for r in a:
                        r[k] -= q * r[0]
                if a[0][k]:
                    done = False
            if done:
                bad = [r for r in a[1:] if any(v % p for v in r[1:])]
                if not bad:
                    break
                for k in range(len(a[0])):
                    a[0][k] += bad[0][k]
                continue
            # move smallest nonzero entry of row/col 0 to the corner
            cands = [(abs(r[0]), i, 0) for i, r in enumerate(a) if r[0]]
            cands += [(abs(v), 0, k) for k, v in enumerate(a[0]) if v]
            _, i, k = min(cands)
            a[0], a[i] = a[i], a[0]
            for r in a:
                r[0], r[k] = r[k], r[0]
        diag.append(abs(a[0][0]))
        a = [r[1:] for r in a[1:]]
        a = [r for r in a if any(r)]
        t += 1
    return diag


def invariants(ngens, relators):
    rows = []
    for r in relators:
        v = [0] * ngens
        for x in r:
            v[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(v)
    d = smith_diagonal(rows, ngens)
    torsion = sorted(x for x in d if x > 1)
    return torsion, ngens - len(d)


def commutator(a, b):
    return reduce_word(inverse(a) + inverse(b) + a + b)


def main():
    rels = [parse(r) for r in RELS]
    tx = enumerate_cosets(2, rels, [parse(w) for w in SUB_X])
    words, rx = schreier(tx, 2, rels)
    print("index X:", len(tx), "X^ab:", invariants(len(words), rx))
    comms = [commutator(words[i], words[j]) for i in range(len(words)) for j in range(i + 1, len(words))]
    # Normal closure via extra relators: enumerate the trivial subgroup.
    tz = enumerate_cosets(2, rels + comms, [])
    zwords, rz = schreier(tz, 2, rels)
    print("index Z:", len(tz), "schreier gens:", len(zwords), "relators:", len(rz))
    print("Z^ab:", invariants(len(zwords), rz))


if __name__ == "__main__":
    main()
