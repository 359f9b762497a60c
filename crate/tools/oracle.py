#!/usr/bin/env python3
"""Brute-force reference values for the test suite.

Writes crates/core/tests/data/oracle.json. Everything here is computed
from definitions with plain enumeration and a small generic constraint
solver; nothing is shared with the Rust implementation.
"""

import itertools
import json
import os
import sys

# ---------------------------------------------------------------- algebras
# An algebra is (n, [(arity, table)]) with tables in lexicographic
# argument order.


def idx(n, tup):
    i = 0
    for a in tup:
        i = i * n + a
    return i


def tuples(n, k):
    return list(itertools.product(range(n), repeat=k))


def apply(alg, op, args):
    n, ops = alg
    return ops[op][1][idx(n, args)]


def op_on_points(alg, k):
    n, ops = alg
    pts = tuples(n, k)
    index = {p: i for i, p in enumerate(pts)}
    apps = []
    for oi, (ar, _) in enumerate(ops):
        t = {}
        for args in itertools.product(range(len(pts)), repeat=ar):
            val = tuple(apply(alg, oi, [pts[a][c] for a in args]) for c in range(k))
            t[args] = index[val]
        apps.append((ar, t))
    return pts, apps


def subuniverses(alg, k):
    pts, apps = op_on_points(alg, k)
    m = len(pts)
    out = []
    for mask in range(1 << m):
        s = [i for i in range(m) if mask >> i & 1]
        ok = True
        for ar, t in apps:
            for args in itertools.product(s, repeat=ar):
                if not mask >> t[args] & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(mask)
    return pts, apps, out


def solve(alg, k, fixed, limit=None):
    """Homomorphisms A^k -> A extending `fixed` (dict point -> value).
    Yields value lists; stops after `limit` solutions."""
    n, ops = alg
    pts, apps = op_on_points(alg, k)
    m = len(pts)
    cons = []  # (op index, args, result point)
    watch = [[] for _ in range(m)]
    for oi, (ar, t) in enumerate(apps):
        for args, res in t.items():
            c = (oi, args, res)
            cons.append(c)
            for a in set(args) | {res}:
                watch[a].append(c)
    val = [None] * m
    for p, v in fixed.items():
        val[p] = v
    found = []

    def consistent_and_propagate(trail, start):
        queue = list(start)
        while queue:
            p = queue.pop()
            for oi, args, res in watch[p]:
                if all(val[a] is not None for a in args):
                    want = apply(alg, oi, [val[a] for a in args])
                    if val[res] is None:
                        val[res] = want
                        trail.append(res)
                        queue.append(res)
                    elif val[res] != want:
                        return False
        return True

    trail0 = []
    if not consistent_and_propagate(trail0, list(fixed)):
        return found
    # nullary operations
    for oi, args, res in cons:
        if not args:
            want = apply(alg, oi, [])
            if val[res] is None:
                val[res] = want
                trail0.append(res)
                if not consistent_and_propagate(trail0, [res]):
                    return found
            elif val[res] != want:
                return found

    def rec():
        if limit is not None and len(found) >= limit:
            return
        try:
            p = val.index(None)
        except ValueError:
            found.append(list(val))
            return
        for v in range(n):
            val[p] = v
            trail = [p]
            if consistent_and_propagate(trail, [p]):
                rec()
            for q in trail:
                val[q] = None
            if limit is not None and len(found) >= limit:
                return

    rec()
    return found


def homs_from(alg, apps, mask, m):
    """All homomorphisms from the subuniverse `mask` of A^k into A."""
    n, ops = alg
    dom = [i for i in range(m) if mask >> i & 1]
    res = []
    for vals in itertools.product(range(n), repeat=len(dom)):
        h = dict(zip(dom, vals))
        ok = True
        for oi, (ar, t) in enumerate(apps):
            for args in itertools.product(dom, repeat=ar):
                if h[t[args]] != apply(alg, oi, [h[a] for a in args]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            res.append(h)
    return res


def pol_hom_at(alg, k):
    """True iff every hom from a subuniverse of A^k extends to A^k."""
    pts, apps, subs = subuniverses(alg, k)
    m = len(pts)
    for mask in subs:
        if mask == (1 << m) - 1:
            continue
        for h in homs_from(alg, apps, mask, m):
            if not solve(alg, k, h, limit=1):
                return False
    return True


def cent_closed(alg, n_ar, s):
    """Whether the set `s` of n-tuples is closed under every hom A^m -> A,
    m = |s|."""
    n, _ = alg
    s = sorted(s)
    m = len(s)
    if m == 0:
        # closed iff no constant homomorphism A^0 -> A, i.e. no element
        # forming a one-element subuniverse
        for a in range(n):
            if all(apply(alg, oi, [a] * ar) == a for oi, (ar, _) in enumerate(alg[1])):
                return False
        return True
    pts = tuples(n, m)
    index = {p: i for i, p in enumerate(pts)}
    cols = [tuple(s[j][c] for j in range(m)) for c in range(n_ar)]
    for t in tuples(n, n_ar):
        if t in s:
            continue
        fixed = {}
        ok = True
        for c in range(n_ar):
            p = index[cols[c]]
            if fixed.get(p, t[c]) != t[c]:
                ok = False
                break
            fixed[p] = t[c]
        if ok and solve(alg, m, fixed, limit=1):
            return False
    return True


def clone_fragment(alg, k):
    n, ops = alg
    pts = tuples(n, k)
    tabs = {tuple(p[i] for p in pts) for i in range(k)}
    for oi, (ar, _) in enumerate(ops):
        if ar == 0:
            tabs.add(tuple(apply(alg, oi, []) for _ in pts))
    while True:
        new = set(tabs)
        lst = list(tabs)
        for oi, (ar, _) in enumerate(ops):
            if ar == 0:
                continue
            for args in itertools.product(lst, repeat=ar):
                new.add(tuple(apply(alg, oi, [a[c] for a in args]) for c in range(len(pts))))
        if new == tabs:
            return sorted(tabs)
        tabs = new


def algebraic_closure(alg, n_ar, s):
    frag = clone_fragment(alg, n_ar)
    pts = tuples(alg[0], n_ar)
    index = {p: i for i, p in enumerate(pts)}
    out = set(pts)
    for f in frag:
        for g in frag:
            if all(f[index[x]] == g[index[x]] for x in s):
                out = {x for x in out if f[index[x]] == g[index[x]]}
    return out


def sdc_witness(alg, n_ar):
    """Least (by size, then lexicographic point list) C*-closed set of
    n-tuples that is not algebraic."""
    pts = tuples(alg[0], n_ar)
    for r in range(len(pts) + 1):
        for s in itertools.combinations(pts, r):
            s = set(s)
            if algebraic_closure(alg, n_ar, s) != s and cent_closed(alg, n_ar, s):
                return sorted(s)
    return None


# ------------------------------------------------------------- relations


def qfpp_hull_member(gens, arity, n, target):
    """`target` (set of tuples) is an intersection of substitution
    instances of the generator relations."""
    pts = tuples(n, arity)
    tmask = sum(1 << i for i, p in enumerate(pts) if p in target)
    hull = (1 << len(pts)) - 1
    for rel, r in gens:
        for sigma in itertools.product(range(arity), repeat=r):
            m = 0
            for i, p in enumerate(pts):
                if tuple(p[j] for j in sigma) in rel:
                    m |= 1 << i
            if m & tmask == tmask:
                hull &= m
    return hull == tmask


def graphs(alg, arity):
    n = alg[0]
    pts = tuples(n, arity - 1)
    return [({p + (f[i],) for i, p in enumerate(pts)}, arity) for f in clone_fragment(alg, arity - 1)]


def sols(alg, arity):
    n = alg[0]
    pts = tuples(n, arity)
    frag = clone_fragment(alg, arity)
    out = []
    for f in frag:
        for g in frag:
            out.append(({p for i, p in enumerate(pts) if f[i] == g[i]}, arity))
    return out


def gap_relations(alg, arity):
    """Sol sets of arity `arity` outside qfpp(C•)."""
    gs = graphs(alg, arity + 1)
    seen = []
    for rel, _ in sols(alg, arity):
        if rel in seen:
            continue
        seen.append(rel)
    return [sorted(r) for r in seen if not qfpp_hull_member(gs, arity, alg[0], r)]


# ---------------------------------------------------------------- builders


def mono(f):
    return (len(f), [(1, list(f))])


def cyclic(n):
    return [(a + b) % n for a in range(n) for b in range(n)], n


def group(factors):
    els = list(itertools.product(*[range(q) for q in factors]))
    index = {e: i for i, e in enumerate(els)}
    table = [index[tuple((x + y) % q for x, y, q in zip(a, b, factors))] for a in els for b in els]
    return (len(els), [(2, table)])


def hom_hom(alg):
    return pol_hom_at(alg, 1)


def homocyclic_sylows(factors):
    primes = {}
    for q in factors:
        m = q
        p = 2
        while m > 1:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                primes.setdefault(p, []).append(e)
            p += 1
    return all(len(set(es)) == 1 for es in primes.values())


def profile(f):
    n = len(f)
    image = set(f)
    sources = [a for a in range(n) if a not in image]
    cyc = {a for a in range(n) if any(_iter(f, a, j) == a for j in range(1, n + 1))}

    def height(a):
        h = 0
        while a not in cyc:
            a = f[a]
            h += 1
        return h

    cond_v = len({height(s) for s in sources}) <= 1
    bij = len(image) == n
    const = len(image) == 1
    fixed = any(f[a] == a for a in range(n))
    return cond_v, bij or const, fixed


def _iter(f, a, j):
    for _ in range(j):
        a = f[a]
    return a


def main():
    out = {}

    print("monounary", file=sys.stderr)
    mono_rows = []
    for n in range(1, 5):
        for f in itertools.product(range(n), repeat=n):
            alg = mono(f)
            cond_v, cb, fixed = profile(f)
            row = {
                "map": list(f),
                "condition_v": cond_v,
                "bijective_or_constant": cb,
                "fixed_point": fixed,
                "hom_hom": hom_hom(alg),
                "sdc_witness_arity1": sdc_witness(alg, 1),
            }
            if n <= 3:
                row["pol_hom_k2"] = pol_hom_at(alg, 2)
            mono_rows.append(row)
    out["monounary"] = mono_rows

    print("abelian", file=sys.stderr)
    ab = []
    for spec, factors in [
        ("cyclic:2", [2]),
        ("cyclic:3", [3]),
        ("product:cyclic:2,cyclic:2", [2, 2]),
        ("cyclic:4", [4]),
        ("cyclic:5", [5]),
        ("cyclic:6", [6]),
        ("cyclic:7", [7]),
        ("cyclic:8", [8]),
        ("product:cyclic:2,cyclic:4", [2, 4]),
        ("product:cyclic:2,product:cyclic:2,cyclic:2", [2, 2, 2]),
    ]:
        alg = group(factors)
        ab.append({"spec": spec, "hom_hom": hom_hom(alg), "homocyclic_sylows": homocyclic_sylows(factors)})
    out["abelian"] = ab

    print("two-element binary", file=sys.stderr)
    two = []
    for table in itertools.product(range(2), repeat=4):
        alg = (2, [(2, list(table))])
        wit = None
        for n_ar in (1, 2, 3):
            w = sdc_witness(alg, n_ar)
            if w is not None:
                wit = n_ar
                break
        two.append({"table": list(table), "sdc_witness_arity": wit})
    out["two_element_binary"] = two

    print("qfpp gaps", file=sys.stderr)
    meet = (2, [(2, [0, 0, 0, 1])])
    lat = (2, [(2, [0, 0, 0, 1]), (2, [0, 1, 1, 1])])
    out["semilattice_gaps"] = {
        str(a): [["".join(map(str, t)) for t in r] for r in gap_relations(meet, a)] for a in (1, 2, 3)
    }
    known4 = set(tuples(2, 4)) - {(0, 0, 1, 1)}
    out["lattice_known_gap4"] = not qfpp_hull_member(graphs(lat, 5), 4, 2, known4) and any(
        r == known4 for r, _ in sols(lat, 4)
    )
    out["lattice_gap_counts"] = {str(a): len(gap_relations(lat, a)) for a in (1, 2, 3)}

    print("chain lattice", file=sys.stderr)
    mn = [min(a, b) for a in range(3) for b in range(3)]
    mx = [max(a, b) for a in range(3) for b in range(3)]
    chain3 = (3, [(2, mn), (2, mx)])
    out["chain_lattice_3"] = {
        "pol_hom_k1": pol_hom_at(chain3, 1),
        "pol_hom_k2": pol_hom_at(chain3, 2),
        "sdc_witness_arity1": sdc_witness(chain3, 1),
    }
    fork = (3, [(2, [0, 0, 0, 0, 1, 0, 0, 0, 2])])
    out["fork_semilattice"] = {"pol_hom_k2": pol_hom_at(fork, 2)}

    path = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "tests", "data", "oracle.json")
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(out, fh, indent=1, sort_keys=True)
        fh.write("\n")


if __name__ == "__main__":
    main()
