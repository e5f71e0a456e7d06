"""Brute-force reference computations, written without the library's helpers.

Everything here works on raw tables with plain loops so that agreement with
the library is evidence, not tautology.
"""

from itertools import product


def mul(G, *xs):
    r = 0
    for x in xs:
        r = G.mul[r][x]
    return r


def inv(G, x):
    return next(y for y in range(G.order) if G.mul[x][y] == 0)


def is_group(mul_table):
    n = len(mul_table)
    e = next((i for i in range(n) if all(mul_table[i][j] == j and mul_table[j][i] == j for j in range(n))), None)
    if e is None:
        return False
    for a, b, c in product(range(n), repeat=3):
        if mul_table[mul_table[a][b]][c] != mul_table[a][mul_table[b][c]]:
            return False
    return all(any(mul_table[a][b] == e for b in range(n)) for a in range(n))


def cm1_holds(X):
    M, P, act, d = X.M, X.P, X.act.act, X.boundary.map
    return all(d[act[p][m]] == mul(P, p, d[m], inv(P, p)) for p in range(P.order) for m in range(M.order))


def cm2_holds(X):
    M, act, d = X.M, X.act.act, X.boundary.map
    return all(act[d[m]][n] == mul(M, m, n, inv(M, m)) for m in range(M.order) for n in range(M.order))


def action_ok(actor, space, act):
    for p in range(actor.order):
        row = act[p]
        if sorted(row) != list(range(space.order)):
            return False
        for a in range(space.order):
            for b in range(space.order):
                if row[space.mul[a][b]] != space.mul[row[a]][row[b]]:
                    return False
    for p in range(actor.order):
        for q in range(actor.order):
            for m in range(space.order):
                if act[actor.mul[p][q]][m] != act[p][act[q][m]]:
                    return False
    return all(act[0][m] == m for m in range(space.order))


def two_crossed_holds(X):
    """All 2-crossed axioms by direct loops; returns the name of the first failing one or None."""
    L, M, P = X.L, X.M, X.P
    d2, d1 = X.d2.map, X.d1.map
    aL, aM, lift = X.actL.act, X.actM.act, X.lifting
    nL, nM, nP = L.order, M.order, P.order
    if not action_ok(P, L, aL) or not action_ok(P, M, aM):
        return "action"
    for l in range(nL):
        if d1[d2[l]] != 0:
            return "normal complex"
    for p in range(nP):
        for l in range(nL):
            if d2[aL[p][l]] != aM[p][d2[l]]:
                return "equivariance"
        for m in range(nM):
            if d1[aM[p][m]] != mul(P, p, d1[m], inv(P, p)):
                return "equivariance"

    def mact(m, l):  # m.l = l {d2 l^-1, m}
        return mul(L, l, lift[d2[inv(L, l)]][m])

    for m0 in range(nM):
        for m1 in range(nM):
            if d2[lift[m0][m1]] != mul(M, m0, m1, inv(M, m0), aM[d1[m0]][inv(M, m1)]):
                return "PL1"
    for a in range(nL):
        for b in range(nL):
            if lift[d2[a]][d2[b]] != mul(L, a, b, inv(L, a), inv(L, b)):
                return "PL2"
    for m0, m1, m2 in product(range(nM), repeat=3):
        lhs = lift[m0][mul(M, m1, m2)]
        rhs = mul(L, mact(mul(M, m0, m1, inv(M, m0)), lift[m0][m2]), lift[m0][m1])
        if lhs != rhs:
            return "PL3"
        lhs = lift[mul(M, m0, m1)][m2]
        rhs = mul(L, lift[m0][mul(M, m1, m2, inv(M, m1))], aL[d1[m0]][lift[m1][m2]])
        if lhs != rhs:
            return "PL3"
    for l in range(nL):
        for m in range(nM):
            if lift[d2[l]][m] != mul(L, l, mact(m, inv(L, l))):
                return "PL4"
            if lift[m][d2[l]] != mul(L, mact(m, l), aL[d1[m]][inv(L, l)]):
                return "PL4"
    for p in range(nP):
        for m0 in range(nM):
            for m1 in range(nM):
                if aL[p][lift[m0][m1]] != lift[aM[p][m0]][aM[p][m1]]:
                    return "PL5"
    return None


def pullback_pairs(n_boundary, phi):
    """``{(n, p) : v(n) = phi(p)}`` by double loop."""
    return [(n, p) for n in range(len(n_boundary)) for p in range(len(phi)) if n_boundary[n] == phi[p]]


def generated(G, gens):
    """Subgroup generated by ``gens`` as a frozenset, by naive fixpoint."""
    S = {0}
    while True:
        new = {G.mul[a][b] for a in S | set(gens) for b in S | set(gens)} | S
        if new == S:
            return frozenset(S)
        S = new


def action_commutator_order(K_elems, act, M):
    gens = {M.mul[act[k][m]][inv(M, m)] for k in K_elems for m in range(M.order)}
    return len(generated(M, gens))


def count_homs(G, H):
    """Number of homomorphisms by trying every map on a generating set."""
    from itertools import product as prod

    gens = []
    S = {0}
    for g in range(G.order):
        if g not in S:
            gens.append(g)
            S = set(generated(G, gens))
    count = 0
    for images in prod(range(H.order), repeat=len(gens)):
        f = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for g, h in zip(gens, images):
                y, v = G.mul[x][g], H.mul[f[x]][h]
                if y in f:
                    if f[y] != v:
                        ok = False
                        break
                else:
                    f[y] = v
                    frontier.append(y)
        if ok and all(f[G.mul[a][b]] == H.mul[f[a]][f[b]] for a in range(G.order) for b in range(G.order)):
            count += 1
    return count


def is_hom(G, H, f):
    return all(f[G.mul[a][b]] == H.mul[f[a]][f[b]] for a in range(G.order) for b in range(G.order))
